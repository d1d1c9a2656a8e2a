//! Finite-size sampling of GOE and elliptic matrices and empirical
//! normalized traces of word products, for statistical validation of the
//! exact polynomials.
//!
//! Reproducibility contract: all randomness flows from a single `u64` seed
//! through ChaCha8 (`rand_chacha`), one independent stream per sample
//! (`set_stream(sample_index)`), with Gaussians produced by the Box-Muller
//! transform — a fixed-draw-count transform, so a given (seed, dim, word)
//! always consumes the generators identically. Samples are evaluated in
//! parallel but reduced in index order, making every estimate bit-stable
//! on a given platform.
//!
//! The exact formulas are `N -> infinity` limits; at finite `N` the traces
//! carry an `O(1/N)` bias (e.g. `E tr(X X†)/N = (N+1)/N`). Validation
//! tolerances must absorb that bias on top of the Monte Carlo error.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{Letter, Word};

/// A symmetric Gaussian matrix with `E W_ij^2 = 1/N` off the diagonal and
/// `E W_ii^2 = 2/N` on it.
#[derive(Debug, Clone, PartialEq)]
pub struct GoeMatrix {
    dim: usize,
    entries: Vec<f64>, // row-major, symmetric
}

impl GoeMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }
}

/// A complex elliptic matrix `X = sqrt((1+rho)/2) W1 + i sqrt((1-rho)/2) W2`
/// built from two independent GOE samples. `X` is complex symmetric, real
/// symmetric at `rho = 1` and purely imaginary (anti-hermitian) at
/// `rho = -1`; off the diagonal `N E[X_ij X_ji] = rho`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeeMatrix {
    dim: usize,
    rho: f64,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl GeeMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn re(&self) -> &[f64] {
        &self.re
    }

    pub fn im(&self) -> &[f64] {
        &self.im
    }

    /// `(Re, Im)` of entry `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> (f64, f64) {
        (self.re[i * self.dim + j], self.im[i * self.dim + j])
    }
}

/// Box-Muller standard normals: two uniforms per pair, no rejection.
struct Gaussians<'r, R: Rng + ?Sized> {
    rng: &'r mut R,
    spare: Option<f64>,
}

impl<'r, R: Rng + ?Sized> Gaussians<'r, R> {
    fn new(rng: &'r mut R) -> Self {
        Gaussians { rng, spare: None }
    }

    fn next(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1: f64 = 1.0 - self.rng.gen::<f64>(); // (0, 1]: ln is finite
        let u2: f64 = self.rng.gen();
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (std::f64::consts::TAU * u2).sin_cos();
        self.spare = Some(r * s);
        r * c
    }
}

/// Draws a GOE matrix of size `dim` (variance profile in [`GoeMatrix`]).
pub fn sample_goe<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> GoeMatrix {
    assert!(dim >= 1, "dimension must be positive");
    let mut gauss = Gaussians::new(rng);
    let off = 1.0 / (dim as f64).sqrt();
    let diag = std::f64::consts::SQRT_2 * off;
    let mut entries = vec![0.0; dim * dim];
    for i in 0..dim {
        entries[i * dim + i] = diag * gauss.next();
        for j in i + 1..dim {
            let w = off * gauss.next();
            entries[i * dim + j] = w;
            entries[j * dim + i] = w;
        }
    }
    GoeMatrix { dim, entries }
}

/// Draws an elliptic matrix of size `dim` and parameter `rho` from two
/// independent GOE samples.
pub fn sample_gee<R: Rng + ?Sized>(dim: usize, rho: f64, rng: &mut R) -> GeeMatrix {
    assert!(rho.abs() <= 1.0, "|rho| <= 1 required, got {rho}");
    let w1 = sample_goe(dim, rng);
    let w2 = sample_goe(dim, rng);
    let a = ((1.0 + rho) / 2.0).sqrt();
    let b = ((1.0 - rho) / 2.0).sqrt();
    GeeMatrix {
        dim,
        rho,
        re: w1.entries.iter().map(|&w| a * w).collect(),
        im: w2.entries.iter().map(|&w| b * w).collect(),
    }
}

/// Mean and error of an empirical normalized trace; fully determined by
/// `(seed, word, rho, dim, samples)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateResult {
    /// Mean of `Re tr(product) / N` over the samples.
    pub mean: f64,
    /// Sample standard deviation of the real part divided by `sqrt(samples)`.
    pub stderr: f64,
    /// Mean of the imaginary part — statistically zero, kept as a diagnostic.
    pub imag_mean: f64,
    /// Standard error of the imaginary part.
    pub imag_stderr: f64,
    pub samples: u32,
    pub seed: u64,
}

/// Empirical moment of a word: draws `samples` independent elliptic
/// matrices and averages the normalized trace of the word product.
///
/// Word products are evaluated by iterated full matrix multiplication,
/// `O(L N^3)` per sample. Requires a non-empty word and `samples >= 2`.
pub fn estimate_word_moment(
    word: &Word,
    rho: f64,
    dim: usize,
    samples: u32,
    seed: u64,
) -> EstimateResult {
    assert!(!word.is_empty(), "word must be non-empty");
    assert!(samples >= 2, "need at least two samples for a standard error");
    let traces: Vec<(f64, f64)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(u64::from(i));
            let x = sample_gee(dim, rho, &mut rng);
            normalized_word_trace(&x, word)
        })
        .collect();
    let (mean, stderr) = mean_and_stderr(traces.iter().map(|t| t.0));
    let (imag_mean, imag_stderr) = mean_and_stderr(traces.iter().map(|t| t.1));
    EstimateResult {
        mean,
        stderr,
        imag_mean,
        imag_stderr,
        samples,
        seed,
    }
}

fn mean_and_stderr(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = values.clone().count() as f64;
    let mean = values.clone().sum::<f64>() / n;
    let ss = values.map(|x| (x - mean) * (x - mean)).sum::<f64>();
    (mean, (ss / (n - 1.0)).sqrt() / n.sqrt())
}

/// `(Re, Im)` of `tr(X^e1 … X^eL) / N` for one sampled matrix.
pub fn normalized_word_trace(x: &GeeMatrix, word: &Word) -> (f64, f64) {
    assert!(!word.is_empty(), "word must be non-empty");
    let n = x.dim;
    let plain = CMat {
        re: x.re.clone(),
        im: x.im.clone(),
    };
    let dagger = plain.dagger(n);
    let mat = |l: Letter| match l {
        Letter::Plain => &plain,
        Letter::Dagger => &dagger,
    };
    let letters = word.letters();
    let (tr_re, tr_im) = if letters.len() == 1 {
        mat(letters[0]).trace(n)
    } else {
        let mut acc = mat(letters[0]).clone();
        for &l in &letters[1..letters.len() - 1] {
            acc = acc.mul(mat(l), n);
        }
        acc.trace_with(mat(letters[letters.len() - 1]), n)
    };
    (tr_re / n as f64, tr_im / n as f64)
}

/// Dense complex matrix as two real row-major blocks.
#[derive(Clone)]
struct CMat {
    re: Vec<f64>,
    im: Vec<f64>,
}

impl CMat {
    fn dagger(&self, n: usize) -> CMat {
        let mut re = vec![0.0; n * n];
        let mut im = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                re[j * n + i] = self.re[i * n + j];
                im[j * n + i] = -self.im[i * n + j];
            }
        }
        CMat { re, im }
    }

    /// `self * other` through four real GEMMs.
    fn mul(&self, other: &CMat, n: usize) -> CMat {
        let mut re = vec![0.0; n * n];
        let mut im = vec![0.0; n * n];
        dgemm(n, 1.0, &self.re, &other.re, 0.0, &mut re);
        dgemm(n, -1.0, &self.im, &other.im, 1.0, &mut re);
        dgemm(n, 1.0, &self.re, &other.im, 0.0, &mut im);
        dgemm(n, 1.0, &self.im, &other.re, 1.0, &mut im);
        CMat { re, im }
    }

    fn trace(&self, n: usize) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for i in 0..n {
            re += self.re[i * n + i];
            im += self.im[i * n + i];
        }
        (re, im)
    }

    /// `tr(self * other)` without forming the product.
    fn trace_with(&self, other: &CMat, n: usize) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for i in 0..n {
            for j in 0..n {
                let (ar, ai) = (self.re[i * n + j], self.im[i * n + j]);
                let (br, bi) = (other.re[j * n + i], other.im[j * n + i]);
                re += ar * br - ai * bi;
                im += ar * bi + ai * br;
            }
        }
        (re, im)
    }
}

fn dgemm(n: usize, alpha: f64, a: &[f64], b: &[f64], beta: f64, c: &mut [f64]) {
    debug_assert!(a.len() == n * n && b.len() == n * n && c.len() == n * n);
    unsafe {
        matrixmultiply::dgemm(
            n,
            n,
            n,
            alpha,
            a.as_ptr(),
            n as isize,
            1,
            b.as_ptr(),
            n as isize,
            1,
            beta,
            c.as_mut_ptr(),
            n as isize,
            1,
        );
    }
}
