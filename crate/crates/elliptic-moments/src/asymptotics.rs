//! Saddle-point asymptotics of the rescaled block moments along rays
//! `n = 2qv`, `m = 2v`.
//!
//! The rescaled moment `P_n^m / sqrt(P_n^n P_m^m)` behaves like
//! `psi_q(rho) * exp(-v * phi_q(rho))` as `v` grows at fixed `q = n/m >= 1`
//! and `0 < rho < 1`. The rate comes from a Laplace approximation of the
//! coefficient sum: with `y = k/v` the summand concentrates at the saddle
//! `y*_q(x)` of the large-deviation function
//!
//! ```text
//! F_q(x, y) = y ln x^2 - (1+y) ln(1+y) - (1-y) ln(1-y)
//!             - q (1+y/q) ln(1+y/q) - q (1-y/q) ln(1-y/q)
//! ```
//!
//! Note the weight `q` on the last two terms: they arise from the
//! `binom(2qv, qv+k)` factor whose exponential scale is `qv`, not `v`. The
//! stationarity condition then reproduces the closed-form saddle used here
//! (both the radical expression and the Catalan-generating-function form
//! with leading factor `q/(q+1)`), and the Gaussian prefactor reduces to the
//! closed form of [`saddle_prefactor_simplified`]. Dropping the `q` weights
//! breaks stationarity for every `q != 1`; the unit tests pin all of this
//! numerically.
//!
//! The prefactor `psi` carries a factor `y*_q(rho)^2` from the second-order
//! derivative operator that maps the auxiliary sum back to the moment. With
//! it, `psi_1 == 1` exactly, matching the fact that the rescaled moment is
//! identically 1 on the diagonal; the `q = 1` normalization is the anchor
//! test for the constant.
//!
//! Everything here is plain `f64`; exact arithmetic stays in the moment
//! modules. Exact-vs-estimate comparisons at large `v` evaluate the closed
//! form coefficients in log space to dodge overflow.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moments::block_moment;

/// Generating function of the Catalan numbers, `(1 - sqrt(1-4z)) / (2z)`,
/// evaluated in the cancellation-free form `2 / (1 + sqrt(1-4z))` so the
/// removable singularity at `z = 0` needs no special case. Defined for
/// `z <= 1/4`.
pub fn catalan_gf(z: f64) -> Result<f64> {
    if z > 0.25 {
        return Err(Error::OutOfDomain(format!(
            "catalan_gf wants z <= 1/4, got {z}"
        )));
    }
    Ok(2.0 / (1.0 + (1.0 - 4.0 * z).sqrt()))
}

fn check_ray(q: f64) -> Result<()> {
    if q.is_nan() || !q.is_finite() || q < 1.0 {
        return Err(Error::OutOfDomain(format!("q must satisfy q >= 1, got {q}")));
    }
    Ok(())
}

/// Saddle location `y*_q(x)` in the generating-function form
/// `(q/(q+1)) t g(q t^2 / (q+1)^2)` with `t = (x^2-1)/(x^2+1)`, which is
/// regular through `x = 1` (where it vanishes with slope `q/(q+1)`).
///
/// For `x >= 1` the value lies in `[0, 1)`; for `0 < x < 1` it mirrors to
/// `-y*_q(1/x)`, which is how the `rho < 1` evaluations below use it.
pub fn saddle_point(q: f64, x: f64) -> Result<f64> {
    check_ray(q)?;
    check_positive_x(x)?;
    let t = (x * x - 1.0) / (x * x + 1.0);
    let z = q / ((q + 1.0) * (q + 1.0)) * t * t;
    Ok(q / (q + 1.0) * t * catalan_gf(z)?)
}

/// Saddle location as the explicit root of the stationarity quadratic,
/// `((q+1)(x^2+1) - sqrt((q+1)^2 (x^2+1)^2 - 4q (x^2-1)^2)) / (2(x^2-1))`,
/// evaluated through its conjugate rearrangement
/// `2q (x^2-1) / ((q+1)(x^2+1) + sqrt(...))` so the `x -> 1` cancellation
/// never loses digits. Kept as an independent algebraic route and checked
/// against [`saddle_point`] to 1e-12 relative.
pub fn saddle_point_radical(q: f64, x: f64) -> Result<f64> {
    check_ray(q)?;
    check_positive_x(x)?;
    let s = x * x + 1.0;
    let d = x * x - 1.0;
    let disc = (q + 1.0) * (q + 1.0) * s * s - 4.0 * q * d * d;
    Ok(2.0 * q * d / ((q + 1.0) * s + disc.sqrt()))
}

/// Large-deviation rate `F_q(x, y)` (see the module docs for the formula and
/// for why the `(1 +- y/q)` terms carry weight `q`). Requires `x > 0` and
/// `|y| < min(1, q)`; vanishes identically at `y = 0`.
pub fn rate_function(q: f64, x: f64, y: f64) -> Result<f64> {
    check_ray(q)?;
    check_positive_x(x)?;
    if y.is_nan() || y.abs() >= 1.0 || y.abs() >= q {
        return Err(Error::OutOfDomain(format!(
            "y must satisfy |y| < min(1, q), got {y}"
        )));
    }
    Ok(y * (x * x).ln()
        - (1.0 + y) * (1.0 + y).ln()
        - (1.0 - y) * (1.0 - y).ln()
        - q * (1.0 + y / q) * (1.0 + y / q).ln()
        - q * (1.0 - y / q) * (1.0 - y / q).ln())
}

/// `-d2F/dy2`, positive on the domain.
fn neg_rate_second_derivative(q: f64, y: f64) -> f64 {
    2.0 / (1.0 - y * y) + 2.0 * q / (q * q - y * y)
}

/// Riemann-sum weight in front of the exponential.
fn summand_weight(q: f64, y: f64) -> f64 {
    1.0 / ((1.0 + y) * (1.0 + y / q) * ((1.0 - y * y) * (1.0 - y * y / (q * q))).sqrt())
}

/// Gaussian-corrected prefactor at the saddle, from its definition
/// `H_q(y) = g_q(y) * (-d2F_q/dy2)^(-1/2)`.
pub fn saddle_prefactor(q: f64, y: f64) -> f64 {
    summand_weight(q, y) / neg_rate_second_derivative(q, y).sqrt()
}

/// Closed-form simplification of [`saddle_prefactor`]:
/// `sqrt(q / (2(q+1))) / ((1+y)(1+y/q) sqrt(1 - y^2/q))`.
/// The definitional form is authoritative; the two are asserted equal in
/// tests (they do agree — a discrepancy would indicate the rate function
/// lost its `q` weights).
pub fn saddle_prefactor_simplified(q: f64, y: f64) -> f64 {
    (q / (2.0 * (q + 1.0))).sqrt() / ((1.0 + y) * (1.0 + y / q) * (1.0 - y * y / q).sqrt())
}

fn check_positive_x(x: f64) -> Result<()> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::OutOfDomain(format!("x must be positive, got {x}")));
    }
    Ok(())
}

fn check_open_rho(rho: f64) -> Result<()> {
    if rho.is_nan() || rho <= 0.0 || rho >= 1.0 {
        return Err(Error::OutOfDomain(format!(
            "rho must lie in the open interval (0, 1), got {rho}; the endpoints \
             have dedicated limit values"
        )));
    }
    Ok(())
}

/// Amplitude `psi_q(rho)` of the rescaled-moment asymptotics:
/// `16 q^(-5/4) sqrt(rho) y*_q(rho)^2 H_q(-y*_q(rho)) / ((1-rho)^2 (1+rho))`.
///
/// `psi_1 == 1` identically, anchoring the overall constant (the diagonal
/// rescaled moment is exactly 1).
pub fn psi_prefactor(q: f64, rho: f64) -> Result<f64> {
    check_open_rho(rho)?;
    let ys = saddle_point(q, rho)?; // negative for rho < 1
    Ok(16.0 * q.powf(-1.25) * rho.sqrt() * ys * ys * saddle_prefactor(q, -ys)
        / ((1.0 - rho) * (1.0 - rho) * (1.0 + rho)))
}

/// Decay rate `phi_q(rho) = -F_q(rho, y*_q(rho)) + (q+1)/2 F_1(rho, y*_1(rho))`
/// per unit `v` along the ray `n = 2qv, m = 2v`. Non-negative, identically
/// zero at `q = 1`, and vanishing as `rho -> 1`.
pub fn phi_rate(q: f64, rho: f64) -> Result<f64> {
    check_open_rho(rho)?;
    let y_q = saddle_point(q, rho)?;
    let y_1 = saddle_point(1.0, rho)?;
    Ok(-rate_function(q, rho, y_q)? + 0.5 * (q + 1.0) * rate_function(1.0, rho, y_1)?)
}

/// Self-similar rate `phi_q / (q+1)`, the decay per unit `u + v`.
pub fn phi_rate_normalized(q: f64, rho: f64) -> Result<f64> {
    Ok(phi_rate(q, rho)? / (q + 1.0))
}

/// Which saddle-point regime a `(q, rho, v)` triple falls in, by comparing
/// the saddle location against the Gaussian width `1/sqrt(v * (-F''))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SaddleRegime {
    /// Saddle well inside the summation range; the generic estimate applies.
    Interior,
    /// Saddle within a few Gaussian widths of `y = 0` (`rho` near 1); the
    /// Laplace integral degenerates to a half-Gaussian and the generic
    /// estimate loses accuracy.
    HalfGaussian,
}

/// Diagnostic regime report: the ratio `y* / gaussian width` and its
/// classification (cutoff at 3 widths).
pub fn saddle_regime(q: f64, rho: f64, v: u64) -> Result<(SaddleRegime, f64)> {
    check_open_rho(rho)?;
    if v == 0 {
        return Err(Error::OutOfDomain("v must be positive".into()));
    }
    let s = saddle_point(q, rho)?.abs();
    let ratio = s * (v as f64 * neg_rate_second_derivative(q, s)).sqrt();
    let regime = if ratio >= 3.0 {
        SaddleRegime::Interior
    } else {
        SaddleRegime::HalfGaussian
    };
    Ok((regime, ratio))
}

/// Exact rescaled moment `P_n^m(rho) / sqrt(P_n^n(rho) P_m^m(rho))` for a
/// same-parity pair, evaluated from the closed-form coefficients in log
/// space (so `n, m` in the thousands are fine). Always in `[-1, 1]`.
///
/// `rho < 0` is reduced to `|rho|` with the sign `(-1)^(u+v)` carried by the
/// numerator's exponent parity; `rho = 0` gives the Kronecker delta.
pub fn rescaled_exact(n: usize, m: usize, rho: f64) -> Result<f64> {
    if n % 2 != m % 2 {
        return Err(Error::OutOfDomain(format!(
            "rescaled moment wants n, m of the same parity, got ({n}, {m})"
        )));
    }
    if rho.is_nan() || rho.abs() > 1.0 {
        return Err(Error::OutOfDomain(format!("|rho| <= 1 required, got {rho}")));
    }
    if n == m {
        return Ok(1.0);
    }
    if rho == 0.0 {
        return Ok(0.0); // delta_{nm}, and n != m here
    }
    let sign = if rho < 0.0 && (n / 2 + m / 2) % 2 == 1 {
        -1.0
    } else {
        1.0
    };
    let r = rho.abs();
    let ln_num = ln_block_moment(n, m, r);
    let ln_den = 0.5 * (ln_block_moment(n, n, r) + ln_block_moment(m, m, r));
    Ok(sign * (ln_num - ln_den).exp())
}

/// Saddle-point estimate of the rescaled moment for the pair
/// `(n, m) = (2u, 2v)`: `psi_(u/v)(rho) * exp(-(u+v) * phihat_(u/v)(rho))`.
/// Wants `u >= v >= 1` and `rho` in the open unit interval.
pub fn rescaled_estimate(u: u64, v: u64, rho: f64) -> Result<f64> {
    if v == 0 || u < v {
        return Err(Error::OutOfDomain(format!(
            "estimate wants u >= v >= 1, got ({u}, {v})"
        )));
    }
    let q = u as f64 / v as f64;
    Ok(psi_prefactor(q, rho)? * (-(v as f64) * phi_rate(q, rho)?).exp())
}

/// Natural log of the block moment `P_n^m(rho)` for `rho` in `(0, 1]`,
/// summed in log space with ln-factorial prefix tables.
fn ln_block_moment(n: usize, m: usize, rho: f64) -> f64 {
    debug_assert!(n % 2 == m % 2 && rho > 0.0 && rho <= 1.0);
    let lnrho = rho.ln();
    let lf = ln_factorials(2 * n.max(m) + 2);
    let lnbin = |a: usize, b: usize| lf[a] - lf[b] - lf[a - b];
    let (u, v) = (n / 2, m / 2);
    let terms: Vec<f64> = (0..=u.min(v))
        .map(|k| {
            let weight = if n.is_multiple_of(2) {
                2.0 * ((2 * k + 1) as f64).ln() - ((u + k + 1) as f64).ln()
                    - ((v + k + 1) as f64).ln()
                    + lnbin(2 * u, u + k)
                    + lnbin(2 * v, v + k)
            } else {
                (4.0f64).ln() + 2.0 * ((k + 1) as f64).ln()
                    - ((u + k + 2) as f64).ln()
                    - ((v + k + 2) as f64).ln()
                    + lnbin(2 * u + 1, u + k + 1)
                    + lnbin(2 * v + 1, v + k + 1)
            };
            ((u + v - 2 * k) as f64) * lnrho + weight
        })
        .collect();
    log_sum_exp(&terms)
}

fn ln_factorials(max: usize) -> Vec<f64> {
    let mut lf = vec![0.0; max + 1];
    for i in 1..=max {
        lf[i] = lf[i - 1] + (i as f64).ln();
    }
    lf
}

fn log_sum_exp(terms: &[f64]) -> f64 {
    let mx = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    mx + terms.iter().map(|t| (t - mx).exp()).sum::<f64>().ln()
}

/// A `(q, v, rho)` point on a ray, validated once; the methods expose the
/// derived saddle quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticParams {
    q: f64,
    rho: f64,
    v: u64,
}

impl AsymptoticParams {
    pub fn new(q: f64, rho: f64, v: u64) -> Result<Self> {
        check_ray(q)?;
        check_open_rho(rho)?;
        if v == 0 {
            return Err(Error::OutOfDomain("v must be positive".into()));
        }
        Ok(AsymptoticParams { q, rho, v })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn v(&self) -> u64 {
        self.v
    }

    /// Signed saddle `y*_q(rho)` (negative on `0 < rho < 1`).
    pub fn y_star(&self) -> f64 {
        saddle_point(self.q, self.rho).expect("validated at construction")
    }

    /// Rate value `F_q(rho, y*)`.
    pub fn rate_at_saddle(&self) -> f64 {
        rate_function(self.q, self.rho, self.y_star()).expect("validated at construction")
    }

    /// `H_q(-y*)`.
    pub fn prefactor_at_saddle(&self) -> f64 {
        saddle_prefactor(self.q, -self.y_star())
    }

    pub fn psi(&self) -> f64 {
        psi_prefactor(self.q, self.rho).expect("validated at construction")
    }

    pub fn phi(&self) -> f64 {
        phi_rate(self.q, self.rho).expect("validated at construction")
    }

    pub fn phi_hat(&self) -> f64 {
        self.phi() / (self.q + 1.0)
    }

    /// `psi * exp(-v * phi)`.
    pub fn estimate(&self) -> f64 {
        self.psi() * (-(self.v as f64) * self.phi()).exp()
    }

    pub fn regime(&self) -> (SaddleRegime, f64) {
        saddle_regime(self.q, self.rho, self.v).expect("validated at construction")
    }
}

/// Exact rescaled moment through the big-integer polynomials (no log-space
/// shortcut); intended for modest `n, m` where the coefficients stay
/// printable. Used to cross-check [`rescaled_exact`].
pub fn rescaled_exact_bigint(n: usize, m: usize, rho: f64) -> Result<f64> {
    use num_rational::BigRational;
    if n % 2 != m % 2 {
        return Err(Error::OutOfDomain(format!(
            "rescaled moment wants n, m of the same parity, got ({n}, {m})"
        )));
    }
    let r = BigRational::from_float(rho)
        .ok_or_else(|| Error::OutOfDomain(format!("rho must be finite, got {rho}")))?;
    let num = block_moment(n, m).eval_rational(&r);
    let den = block_moment(n, n).eval_rational(&r) * block_moment(m, m).eval_rational(&r);
    let num = num.to_f64().ok_or_else(|| {
        Error::OutOfDomain("numerator exceeds f64 range; use rescaled_exact".into())
    })?;
    let den = den.to_f64().ok_or_else(|| {
        Error::OutOfDomain("denominator exceeds f64 range; use rescaled_exact".into())
    })?;
    Ok(num / den.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, rel: f64, what: &str) {
        let scale = 1.0f64.max(a.abs()).max(b.abs());
        assert!(
            (a - b).abs() <= rel * scale,
            "{what}: {a} vs {b} (rel {rel})"
        );
    }

    #[test]
    fn catalan_gf_values() {
        assert_eq!(catalan_gf(0.0).unwrap(), 1.0);
        assert_eq!(catalan_gf(0.25).unwrap(), 2.0);
        assert_close(catalan_gf(3.0 / 16.0).unwrap(), 4.0 / 3.0, 1e-15, "g(3/16)");
        assert!(catalan_gf(0.26).is_err());
        // z g^2 - g + 1 = 0 on a grid, including negative z
        for z in [-2.0, -0.3, 0.01, 0.2, 0.24999] {
            let g = catalan_gf(z).unwrap();
            assert_close(z * g * g - g + 1.0, 0.0, 1e-12, "gf equation");
        }
    }

    #[test]
    fn saddle_point_values() {
        assert_eq!(saddle_point(2.0, 1.0).unwrap(), 0.0);
        // q = 1, x = 2: (1/2)(3/5) g(9/100) = 1/3
        assert_close(saddle_point(1.0, 2.0).unwrap(), 1.0 / 3.0, 1e-14, "q=1 x=2");
        // slope q/(q+1) at x -> 1+
        for q in [1.0, 2.0, 5.0] {
            let h = 1e-7;
            let slope = saddle_point(q, 1.0 + h).unwrap() / h;
            assert_close(slope, q / (q + 1.0), 1e-5, "slope");
        }
        // mirror symmetry y*(1/x) = -y*(x)
        for (q, x) in [(1.5, 2.0), (3.0, 4.0)] {
            assert_close(
                saddle_point(q, 1.0 / x).unwrap(),
                -saddle_point(q, x).unwrap(),
                1e-13,
                "mirror",
            );
        }
        assert!(saddle_point(0.5, 2.0).is_err());
        assert!(saddle_point(2.0, 0.0).is_err());
    }

    #[test]
    fn saddle_two_forms_agree() {
        let mut x = 1.0001;
        while x <= 10.0 {
            let mut q = 1.0;
            while q <= 8.0 {
                let a = saddle_point(q, x).unwrap();
                let b = saddle_point_radical(q, x).unwrap();
                assert!(
                    (a - b).abs() <= 1e-12 * a.abs(),
                    "forms disagree at q={q} x={x}: {a} vs {b}"
                );
                assert!((0.0..1.0).contains(&a));
                q += 0.25;
            }
            x *= 1.17;
        }
    }

    #[test]
    fn rate_function_properties() {
        // vanishes at y = 0
        for (q, x) in [(1.0, 3.0), (2.5, 0.4), (7.0, 1.0)] {
            assert_eq!(rate_function(q, x, 0.0).unwrap(), 0.0);
        }
        // stationarity at the saddle (central finite differences)
        for q in [1.0, 1.5, 2.0, 4.0, 8.0] {
            for x in [1.05, 1.5, 2.0, 5.0] {
                let ys = saddle_point(q, x).unwrap();
                let h = 1e-6;
                let d = (rate_function(q, x, ys + h).unwrap()
                    - rate_function(q, x, ys - h).unwrap())
                    / (2.0 * h);
                let f = rate_function(q, x, ys).unwrap();
                assert!(
                    d.abs() <= 1e-8 * (1.0 + f.abs()),
                    "not stationary at q={q} x={x}: dF={d}"
                );
            }
        }
        // F(1/rho, y*(1/rho)) = F(rho, y*(rho))
        for q in [1.0, 2.0, 3.5] {
            for rho in [0.2, 0.5, 0.9] {
                let a = rate_function(q, rho, saddle_point(q, rho).unwrap()).unwrap();
                let b = rate_function(q, 1.0 / rho, saddle_point(q, 1.0 / rho).unwrap()).unwrap();
                assert_close(a, b, 1e-12, "rho <-> 1/rho symmetry");
            }
        }
        assert!(rate_function(2.0, 1.0, 0.9999999).is_ok());
        assert!(rate_function(2.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn prefactor_simplification_matches_definition() {
        for q in [1.0, 1.5, 2.0, 3.0, 8.0] {
            for y in [0.0, 0.1, 0.45, 0.8, 0.95] {
                assert_close(
                    saddle_prefactor(q, y),
                    saddle_prefactor_simplified(q, y),
                    1e-12,
                    "H forms",
                );
            }
        }
    }

    #[test]
    fn phi_vanishes_at_unit_ray_and_is_nonnegative() {
        let mut rho = 0.02;
        while rho < 1.0 {
            assert!(phi_rate(1.0, rho).unwrap().abs() <= 1e-12, "phi_1({rho})");
            rho += 0.02;
        }
        for q in [1.0, 1.5, 2.0, 3.0, 6.0] {
            for rho in [0.05, 0.2, 0.5, 0.8, 0.95, 0.999] {
                assert!(phi_rate(q, rho).unwrap() >= -1e-13, "phi({q},{rho}) < 0");
            }
        }
        // rate dies off as rho -> 1-
        assert!(phi_rate(2.0, 0.999).unwrap() < 1e-3);
        assert!(phi_rate(2.0, 0.999).unwrap() < phi_rate(2.0, 0.9).unwrap());
    }

    #[test]
    fn psi_normalization_at_unit_ray() {
        for rho in [0.1, 0.3, 0.5, 0.8, 0.95] {
            assert_close(psi_prefactor(1.0, rho).unwrap(), 1.0, 1e-12, "psi_1");
        }
    }

    #[test]
    fn rescaled_exact_basics() {
        for rho in [-0.9, -0.5, 0.0, 0.3, 1.0] {
            assert_eq!(rescaled_exact(6, 6, rho).unwrap(), 1.0);
        }
        assert_eq!(rescaled_exact(4, 8, 0.0).unwrap(), 0.0);
        assert!(rescaled_exact(3, 4, 0.5).is_err());
        assert!(rescaled_exact(4, 8, 1.5).is_err());

        // log-space route against the exact big-integer route
        for (n, m) in [(4usize, 8usize), (6, 2), (2, 4), (5, 3), (12, 20)] {
            for rho in [0.25, 0.5, 0.9, 1.0, -0.5, -0.9] {
                let fast = rescaled_exact(n, m, rho).unwrap();
                let slow = rescaled_exact_bigint(n, m, rho).unwrap();
                assert_close(fast, slow, 1e-11, &format!("rescaled ({n},{m},{rho})"));
            }
        }

        // magnitude never exceeds 1
        for (n, m) in [(4usize, 8usize), (10, 2), (40, 12), (7, 3)] {
            for rho in [-1.0, -0.7, -0.2, 0.1, 0.6, 1.0] {
                let val = rescaled_exact(n, m, rho).unwrap();
                assert!(val.abs() <= 1.0 + 1e-12, "({n},{m},{rho}) -> {val}");
            }
        }
    }

    #[test]
    fn rescaled_exact_sign_reduction() {
        // u + v odd flips the sign, even keeps it
        let plus = rescaled_exact(2, 4, 0.6).unwrap();
        assert_close(rescaled_exact(2, 4, -0.6).unwrap(), -plus, 1e-13, "odd u+v");
        let plus = rescaled_exact(4, 8, 0.6).unwrap();
        assert_close(rescaled_exact(4, 8, -0.6).unwrap(), plus, 1e-13, "even u+v");
    }

    #[test]
    fn rescaled_goe_limit() {
        // at rho = 1 the ratio is C_{u+v} / sqrt(C_{2u} C_{2v})
        let val = rescaled_exact(4, 8, 1.0).unwrap();
        let expect = 132.0 / (1430.0f64 * 14.0).sqrt();
        assert_close(val, expect, 1e-12, "rho = 1");
    }

    #[test]
    fn estimate_matches_exact_along_rays() {
        // ratio exact/estimate walks monotonically toward 1 as v doubles
        for q in [1.5f64, 2.0, 3.0] {
            for rho in [0.3, 0.5, 0.8] {
                let mut prev_err = f64::INFINITY;
                for v in [50u64, 100, 200, 400] {
                    let u = (q * v as f64).round() as u64;
                    let exact = rescaled_exact(2 * u as usize, 2 * v as usize, rho).unwrap();
                    let est = rescaled_estimate(u, v, rho).unwrap();
                    let err = (exact / est - 1.0).abs();
                    assert!(
                        err < prev_err,
                        "no monotone convergence at q={q} rho={rho} v={v}: {err} !< {prev_err}"
                    );
                    prev_err = err;
                }
                assert!(prev_err < 0.01, "q={q} rho={rho}: residual {prev_err}");
            }
        }
    }

    #[test]
    fn estimate_at_unit_ray_is_exact() {
        for rho in [0.2, 0.5, 0.9] {
            for v in [5u64, 50] {
                assert_close(rescaled_estimate(v, v, rho).unwrap(), 1.0, 1e-12, "q=1");
            }
        }
        assert!(rescaled_estimate(3, 5, 0.5).is_err());
        assert!(rescaled_estimate(5, 0, 0.5).is_err());
    }

    #[test]
    fn regime_classification() {
        let (generic, ratio) = saddle_regime(2.0, 0.5, 200).unwrap();
        assert_eq!(generic, SaddleRegime::Interior);
        assert!(ratio > 3.0);
        let (boundary, ratio) = saddle_regime(2.0, 0.999, 10).unwrap();
        assert_eq!(boundary, SaddleRegime::HalfGaussian);
        assert!(ratio < 3.0);
    }

    #[test]
    fn params_bundle() {
        assert!(AsymptoticParams::new(0.9, 0.5, 10).is_err());
        assert!(AsymptoticParams::new(2.0, 1.0, 10).is_err());
        assert!(AsymptoticParams::new(2.0, 0.5, 0).is_err());
        let p = AsymptoticParams::new(2.0, 0.5, 100).unwrap();
        assert!(p.y_star() < 0.0);
        assert_close(
            p.estimate(),
            rescaled_estimate(200, 100, 0.5).unwrap(),
            1e-14,
            "bundle estimate",
        );
        assert_close(p.phi_hat() * 3.0, p.phi(), 1e-14, "phi_hat");
        assert_eq!(p.regime().0, SaddleRegime::Interior);
    }
}
