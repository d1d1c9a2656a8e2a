//! Exact mixed-moments of Gaussian elliptic random matrices.
//!
//! A Gaussian elliptic matrix `X` interpolates, through a parameter
//! `rho ∈ [-1, 1]`, between real symmetric Gaussian matrices (`rho = 1`),
//! complex Ginibre matrices (`rho = 0`) and anti-hermitian Gaussian
//! matrices (`rho = -1`). The large-`N` mixed moment of any word in `X` and
//! `X†` is a polynomial in `rho` whose coefficients count non-crossing
//! pairings with a fixed number of mixed pairs; this crate computes those
//! polynomials exactly and cross-validates them four independent ways:
//!
//! * [`combinatorics`] — exact Catalan/ballot arithmetic and exhaustive
//!   enumeration of non-crossing pairings with rank statistics;
//! * [`moments`] — the brute-force pairing-sum oracle for arbitrary words
//!   and the ballot-number closed form for block words `x^n d^m`;
//! * [`positional`] — closed forms indexed by the positions of `x` inside a
//!   word of length `2M` (up to two even positions), including the Ginibre
//!   constant-term values;
//! * [`asymptotics`] — saddle-point behavior of the rescaled moments along
//!   rays `n = q m`;
//! * [`montecarlo`] — seeded finite-`N` matrix sampling that checks the
//!   exact values statistically.
//!
//! The `elliptic-moments` binary (see [`cli`]) exposes all of it with JSON
//! and CSV output; the crate's `examples/` directory has one runnable
//! example per capability.
//!
//! ```
//! use elliptic_moments::{block_moment, word_moment_oracle, Word};
//!
//! let closed = block_moment(6, 2);
//! assert_eq!(closed.to_string(), "5*rho^4 + 9*rho^2");
//!
//! let brute: Word = "xxxxxxdd".parse()?;
//! assert_eq!(word_moment_oracle(&brute)?, closed);
//! # Ok::<(), elliptic_moments::Error>(())
//! ```

pub mod asymptotics;
pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod moments;
pub mod montecarlo;
pub mod output;
pub mod positional;

pub use asymptotics::{
    catalan_gf, phi_rate, psi_prefactor, rate_function, rescaled_estimate, rescaled_exact,
    saddle_point, AsymptoticParams, SaddleRegime,
};
pub use combinatorics::{
    ballot_b, ballot_b_recursive, catalan, catalan_triangle, enumerate_nc_pairings,
    enumerate_nc_pairings_split, rank_cardinality_closed, rank_census, sigma_mixed, sigma_same,
    Letter, Pairing, RankParity, Word, ENUMERATION_CEILING,
};
pub use error::{Error, Result};
pub use moments::{
    block_moment, special_value, word_moment_oracle, word_moment_oracle_with_ceiling,
    MomentPolynomial, SpecialPoint,
};
pub use montecarlo::{estimate_word_moment, sample_gee, sample_goe, EstimateResult, GeeMatrix, GoeMatrix};
pub use positional::{
    canonicalize, ginibre_moment, pair_block_cardinality, pair_intersection_cardinality,
    positional_moment, positional_moment_with_ceiling, word_from_positions, CanonicalTransform,
    EvenOddSplit, PositionTuple,
};
