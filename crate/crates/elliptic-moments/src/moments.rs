//! Exact mixed-moment polynomials in the elliptic parameter `rho`.
//!
//! The moment of a word is `sum over non-crossing pairings of rho^(number of
//! same-letter pairs)`. Two independent routes compute it:
//!
//! * [`word_moment_oracle`] exhausts all pairings of an arbitrary word
//!   (exponential in the length, gated by a ceiling) — the brute-force
//!   reference;
//! * [`block_moment`] evaluates the ballot-number closed form for block
//!   words `x^n d^m` without enumerating anything.
//!
//! Keeping the two routes separate is deliberate: every closed form in this
//! crate is cross-checked against the oracle in tests.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::combinatorics::{
    catalan, census_counts, rank_cardinality_closed, RankParity, Word, ENUMERATION_CEILING,
};
use crate::error::{Error, Result};

/// A sparse polynomial in `rho` with exact big-integer coefficients, keyed by
/// exponent. Zero coefficients are never stored; the zero polynomial is the
/// empty map. For any moment all stored exponents share one parity.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MomentPolynomial {
    coeffs: BTreeMap<u32, BigInt>,
}

impl MomentPolynomial {
    /// The zero polynomial (empty coefficient map).
    pub fn zero() -> Self {
        MomentPolynomial::default()
    }

    /// The constant polynomial `c`.
    pub fn constant(c: BigInt) -> Self {
        Self::from_coefficients([(0, c)])
    }

    /// Builds a polynomial from `(exponent, coefficient)` terms, summing
    /// duplicates and dropping zeros.
    pub fn from_coefficients<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, BigInt)>,
    {
        let mut coeffs: BTreeMap<u32, BigInt> = BTreeMap::new();
        for (exp, c) in terms {
            if c.is_zero() {
                continue;
            }
            let entry = coeffs.entry(exp).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                coeffs.remove(&exp);
            }
        }
        MomentPolynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient map, ascending in the exponent.
    pub fn coefficients(&self) -> &BTreeMap<u32, BigInt> {
        &self.coeffs
    }

    /// Coefficient of `rho^exp` (zero when absent).
    pub fn coefficient(&self, exp: u32) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> BigInt {
        self.coefficient(0)
    }

    /// Largest exponent, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Sum of all coefficients — the value at `rho = 1`, which for a moment
    /// of a length-`L` word equals `C_{L/2}`.
    pub fn coefficient_sum(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Floating-point evaluation by Horner's scheme over the sparse support.
    ///
    /// The moment polynomials are meaningful for `|rho| <= 1`; larger inputs
    /// are evaluated as-is (callers that care should warn).
    pub fn eval_f64(&self, rho: f64) -> f64 {
        let mut acc = 0.0;
        let mut prev: Option<u32> = None;
        for (&exp, coeff) in self.coeffs.iter().rev() {
            if let Some(p) = prev {
                acc *= rho.powi((p - exp) as i32);
            }
            acc += coeff.to_f64().unwrap_or(f64::NAN);
            prev = Some(exp);
        }
        match prev {
            Some(last) => acc * rho.powi(last as i32),
            None => 0.0,
        }
    }

    /// Exact rational evaluation; no rounding anywhere.
    pub fn eval_rational(&self, rho: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        let mut prev: Option<u32> = None;
        for (&exp, coeff) in self.coeffs.iter().rev() {
            if let Some(p) = prev {
                acc *= pow_rational(rho, p - exp);
            }
            acc += BigRational::from_integer(coeff.clone());
            prev = Some(exp);
        }
        match prev {
            Some(last) => acc * pow_rational(rho, last),
            None => BigRational::zero(),
        }
    }
}

fn pow_rational(base: &BigRational, exp: u32) -> BigRational {
    let mut acc = BigRational::one();
    let mut base = base.clone();
    let mut exp = exp;
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= &base;
        }
        exp >>= 1;
        if exp > 0 {
            let sq = &base * &base;
            base = sq;
        }
    }
    acc
}

impl fmt::Display for MomentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&exp, coeff)) in self.coeffs.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(if coeff.is_negative() { " - " } else { " + " })?;
            } else if coeff.is_negative() {
                f.write_str("-")?;
            }
            let mag = coeff.abs();
            match exp {
                0 => write!(f, "{mag}")?,
                1 if mag.is_one() => write!(f, "rho")?,
                1 => write!(f, "{mag}*rho")?,
                _ if mag.is_one() => write!(f, "rho^{exp}")?,
                _ => write!(f, "{mag}*rho^{exp}")?,
            }
        }
        Ok(())
    }
}

/// Brute-force moment of an arbitrary word: exhausts every non-crossing
/// pairing and tallies `rho^(same-letter pairs)`. Returns the zero
/// polynomial for odd lengths. Fails when the length exceeds
/// [`ENUMERATION_CEILING`].
pub fn word_moment_oracle(word: &Word) -> Result<MomentPolynomial> {
    word_moment_oracle_with_ceiling(word, ENUMERATION_CEILING)
}

/// [`word_moment_oracle`] with an explicit enumeration ceiling.
pub fn word_moment_oracle_with_ceiling(word: &Word, ceiling: usize) -> Result<MomentPolynomial> {
    if word.len() > ceiling {
        return Err(Error::EnumerationCapacity {
            len: word.len(),
            ceiling,
        });
    }
    if word.len() % 2 == 1 {
        return Ok(MomentPolynomial::zero());
    }
    let pairs = word.len() / 2;
    // census index is the mixed-pair count; same-letter count = pairs - rank
    let counts = census_counts(word);
    Ok(MomentPolynomial::from_coefficients(
        counts
            .into_iter()
            .enumerate()
            .map(|(rank, count)| ((pairs - rank) as u32, BigInt::from(count))),
    ))
}

/// Closed-form moment of the block word `x^n d^m`: a polynomial whose
/// coefficient at `rho^(u+v-2k)` is [`rank_cardinality_closed`] of rank
/// index `k`, where `(u, v)` are the half-exponents. Zero when `n` and `m`
/// have different parity. Never enumerates pairings.
pub fn block_moment(n: usize, m: usize) -> MomentPolynomial {
    if n % 2 != m % 2 {
        return MomentPolynomial::zero();
    }
    let parity = if n.is_multiple_of(2) {
        RankParity::Even
    } else {
        RankParity::Odd
    };
    let (u, v) = (n / 2, m / 2);
    MomentPolynomial::from_coefficients((0..=u.min(v)).map(|k| {
        (
            (u + v - 2 * k) as u32,
            rank_cardinality_closed(u, v, k, parity),
        )
    }))
}

/// Limit ensembles with closed-form moment values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialPoint {
    /// `rho = 1`: real symmetric Gaussian matrices.
    Goe,
    /// `rho = -1`: anti-hermitian case, signed Catalan numbers.
    AntiGoe,
    /// `rho = 0`: uncorrelated complex Gaussian (Ginibre) matrices.
    Ginibre,
}

/// Shortcut values of the block moment at `rho ∈ {1, -1, 0}`:
/// `C_{(n+m)/2}` at 1, `(-1)^{u+v}`-signed Catalan numbers at -1, and the
/// Kronecker delta at 0. Consistent with exact evaluation of
/// [`block_moment`] there.
pub fn special_value(n: usize, m: usize, point: SpecialPoint) -> BigInt {
    match point {
        SpecialPoint::Goe => {
            if (n + m) % 2 == 1 {
                BigInt::zero()
            } else {
                catalan((n + m) / 2)
            }
        }
        SpecialPoint::AntiGoe => {
            if n % 2 != m % 2 {
                return BigInt::zero();
            }
            let (u, v) = (n / 2, m / 2);
            let magnitude = if n.is_multiple_of(2) {
                catalan(u + v)
            } else {
                catalan(u + v + 1)
            };
            if (u + v) % 2 == 0 {
                magnitude
            } else {
                -magnitude
            }
        }
        SpecialPoint::Ginibre => {
            if n == m {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn poly(terms: &[(u32, i64)]) -> MomentPolynomial {
        MomentPolynomial::from_coefficients(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn oracle_worked_example() {
        let w: Word = "xxdxdxdd".parse().unwrap();
        assert_eq!(word_moment_oracle(&w).unwrap(), poly(&[(0, 5), (2, 9)]));
    }

    #[test]
    fn oracle_trivial_words() {
        assert_eq!(
            word_moment_oracle(&"xd".parse().unwrap()).unwrap(),
            poly(&[(0, 1)])
        );
        assert_eq!(
            word_moment_oracle(&"xx".parse().unwrap()).unwrap(),
            poly(&[(1, 1)])
        );
        assert!(word_moment_oracle(&"xxx".parse().unwrap())
            .unwrap()
            .is_zero());
        assert_eq!(
            word_moment_oracle(&Word::new(vec![])).unwrap(),
            poly(&[(0, 1)])
        );
    }

    #[test]
    fn oracle_rejects_beyond_ceiling() {
        let w = Word::block(13, 13);
        assert!(matches!(
            word_moment_oracle(&w),
            Err(Error::EnumerationCapacity { len: 26, .. })
        ));
        assert!(word_moment_oracle_with_ceiling(&w, 26).is_ok());
    }

    #[test]
    fn block_moment_worked_examples() {
        assert_eq!(block_moment(6, 2), poly(&[(4, 5), (2, 9)]));
        assert_eq!(block_moment(5, 3), poly(&[(3, 10), (1, 4)]));
        assert_eq!(block_moment(4, 8), poly(&[(6, 28), (4, 84), (2, 20)]));
        assert_eq!(block_moment(3, 3), poly(&[(2, 4), (0, 1)]));
        assert!(block_moment(3, 2).is_zero());
        assert_eq!(block_moment(0, 0), poly(&[(0, 1)]));
    }

    #[test]
    fn block_moment_equals_oracle_up_to_16() {
        for n in 0..=16usize {
            for m in 0..=(16 - n) {
                if n % 2 != m % 2 {
                    assert!(block_moment(n, m).is_zero());
                    continue;
                }
                let oracle = word_moment_oracle(&Word::block(n, m)).unwrap();
                assert_eq!(block_moment(n, m), oracle, "block ({n},{m})");
            }
        }
    }

    #[test]
    fn block_moment_symmetry_and_sum() {
        for n in 0..=10usize {
            for m in 0..=10usize {
                let p = block_moment(n, m);
                assert_eq!(p, block_moment(m, n));
                if n % 2 == m % 2 {
                    assert_eq!(p.coefficient_sum(), catalan((n + m) / 2));
                }
            }
        }
    }

    #[test]
    fn oracle_trace_invariances() {
        // cyclic rotation, trans-conjugation, letter swap
        let words = ["xxdxdd", "xdxddx", "xxddxd", "xxxddd", "xdxdxdxd", "xxdddxdx"];
        for s in words {
            let w: Word = s.parse().unwrap();
            let base = word_moment_oracle(&w).unwrap();
            for t in 0..w.len() {
                assert_eq!(base, word_moment_oracle(&w.rotated(t)).unwrap(), "{s} rot {t}");
            }
            assert_eq!(base, word_moment_oracle(&w.conjugated()).unwrap(), "{s} conj");
            assert_eq!(
                base,
                word_moment_oracle(&w.letters_swapped()).unwrap(),
                "{s} swap"
            );
        }
    }

    #[test]
    fn fuss_catalan_anchor() {
        for half in 1..=8usize {
            let mut letters = Vec::new();
            for _ in 0..half {
                letters.push(crate::combinatorics::Letter::Plain);
                letters.push(crate::combinatorics::Letter::Dagger);
            }
            let p = word_moment_oracle(&Word::new(letters)).unwrap();
            assert_eq!(p, MomentPolynomial::constant(catalan(half)), "(xd)^{half}");
        }
    }

    #[test]
    fn evaluation_paths() {
        let p = block_moment(6, 2); // 5 rho^4 + 9 rho^2
        assert_eq!(p.eval_f64(1.0), 14.0);
        assert_eq!(p.eval_f64(0.0), 0.0);
        assert!((p.eval_f64(0.5) - (5.0 / 16.0 + 9.0 / 4.0)).abs() < 1e-14);

        assert_eq!(p.eval_rational(&rat(1, 1)), rat(14, 1));
        assert_eq!(p.eval_rational(&rat(1, 2)), rat(41, 16));

        let q = block_moment(5, 3); // 10 rho^3 + 4 rho
        assert_eq!(q.eval_rational(&rat(-1, 1)), rat(-14, 1));
        assert_eq!(q.eval_f64(-1.0), -14.0);

        assert!(MomentPolynomial::zero().eval_f64(0.7) == 0.0);
        assert_eq!(MomentPolynomial::zero().eval_rational(&rat(2, 3)), rat(0, 1));
    }

    #[test]
    fn eval_f64_handles_huge_coefficients() {
        let p = block_moment(40, 40);
        let direct: f64 = p
            .coefficients()
            .iter()
            .map(|(&e, c)| c.to_f64().unwrap() * 0.5f64.powi(e as i32))
            .sum();
        let horner = p.eval_f64(0.5);
        assert!((horner / direct - 1.0).abs() < 1e-12);
        assert_eq!(
            BigRational::from_f64(horner).map(|_| ()),
            Some(()),
            "finite"
        );
    }

    #[test]
    fn special_values_match_evaluation() {
        for n in 0..=9usize {
            for m in 0..=9usize {
                let p = block_moment(n, m);
                assert_eq!(
                    p.eval_rational(&rat(1, 1)),
                    BigRational::from_integer(special_value(n, m, SpecialPoint::Goe)),
                    "GOE ({n},{m})"
                );
                assert_eq!(
                    p.eval_rational(&rat(-1, 1)),
                    BigRational::from_integer(special_value(n, m, SpecialPoint::AntiGoe)),
                    "anti-GOE ({n},{m})"
                );
                if n % 2 == m % 2 {
                    assert_eq!(
                        p.eval_rational(&rat(0, 1)),
                        BigRational::from_integer(special_value(n, m, SpecialPoint::Ginibre)),
                        "Ginibre ({n},{m})"
                    );
                }
            }
        }
        assert_eq!(special_value(6, 2, SpecialPoint::Goe), BigInt::from(14));
        assert_eq!(special_value(4, 4, SpecialPoint::Ginibre), BigInt::one());
        assert_eq!(special_value(5, 3, SpecialPoint::AntiGoe), BigInt::from(-14));
    }

    #[test]
    fn display_format() {
        assert_eq!(block_moment(6, 2).to_string(), "5*rho^4 + 9*rho^2");
        assert_eq!(block_moment(5, 3).to_string(), "10*rho^3 + 4*rho");
        assert_eq!(block_moment(1, 1).to_string(), "1");
        assert_eq!(block_moment(2, 2).to_string(), "rho^2 + 1");
        assert_eq!(MomentPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn polynomial_parity_invariant() {
        for n in 0..=12usize {
            for m in 0..=12usize {
                let p = block_moment(n, m);
                let parities: std::collections::HashSet<u32> =
                    p.coefficients().keys().map(|e| e % 2).collect();
                assert!(parities.len() <= 1, "mixed parity in block ({n},{m})");
            }
        }
    }
}
