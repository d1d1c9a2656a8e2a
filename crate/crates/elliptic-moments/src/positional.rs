//! Mixed-moments indexed by the positions of `x` letters inside a word of
//! length `2M`.
//!
//! A tuple `i = (i_1 < … < i_k)` in `{1..2M}` marks where the un-daggered
//! factors sit; every other slot is a dagger. Because every pair of a
//! non-crossing pairing joins an odd index to an even index, the moment is
//! governed by `r`, the number of *even* entries of the tuple:
//!
//! * `r = 0`: the moment is the single term `C_M · rho^(M-k)`;
//! * `r = 1`: a two-term polynomial built from [`pair_block_cardinality`];
//! * `r = 2`: a three-term polynomial built from pairwise intersection
//!   counts, with a six-way dispatch on how the two even entries interleave
//!   with the two relevant missing-odd entries;
//! * `r >= 3`: no closed form is known; the computation falls back to the
//!   brute-force oracle (subject to the enumeration ceiling).
//!
//! Tuples are canonicalized first (cyclic rotation and letter swap preserve
//! the moment), so only odd-majority tuples with `k <= M` are dispatched.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{catalan, Letter, Word, ENUMERATION_CEILING};
use crate::error::{Error, Result};
use crate::moments::{word_moment_oracle_with_ceiling, MomentPolynomial};

/// Positions of the `x` letters inside a word of length `2M`, strictly
/// increasing. Not necessarily canonical; see [`canonicalize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionTuple {
    half_length: usize,
    positions: Vec<usize>,
}

impl PositionTuple {
    /// Validates `M >= 1` and `1 <= i_1 < … < i_k <= 2M`.
    pub fn new(half_length: usize, positions: Vec<usize>) -> Result<Self> {
        if half_length == 0 {
            return Err(Error::InvalidPositions("M must be positive".into()));
        }
        for (idx, &p) in positions.iter().enumerate() {
            if p < 1 || p > 2 * half_length {
                return Err(Error::InvalidPositions(format!(
                    "position {p} outside 1..={}",
                    2 * half_length
                )));
            }
            if idx > 0 && positions[idx - 1] >= p {
                return Err(Error::InvalidPositions(format!(
                    "positions must be strictly increasing, got {} before {p}",
                    positions[idx - 1]
                )));
            }
        }
        Ok(PositionTuple {
            half_length,
            positions,
        })
    }

    /// `M`, half the word length.
    pub fn half_length(&self) -> usize {
        self.half_length
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    /// Number of `x` letters `k`.
    pub fn k(&self) -> usize {
        self.positions.len()
    }

    fn odd_count(&self) -> usize {
        self.positions.iter().filter(|&&p| p % 2 == 1).count()
    }

    /// Canonical means: at least as many odd positions as even ones, and at
    /// most `M` positions in total.
    pub fn is_canonical(&self) -> bool {
        let odd = self.odd_count();
        self.k() <= self.half_length && odd >= self.k() - odd
    }

    /// Splits the tuple into even entries (as `e` with `2e` in the tuple),
    /// present odd entries (`o` with `2o-1` in the tuple) and missing odd
    /// entries.
    pub fn even_odd_split(&self) -> EvenOddSplit {
        let mut evens = Vec::new();
        let mut odds_present = Vec::new();
        for &p in &self.positions {
            if p % 2 == 0 {
                evens.push(p / 2);
            } else {
                odds_present.push(p.div_ceil(2));
            }
        }
        let odds_missing = (1..=self.half_length)
            .filter(|o| odds_present.binary_search(o).is_err())
            .collect();
        EvenOddSplit {
            evens,
            odds_present,
            odds_missing,
        }
    }
}

/// Even/odd decomposition of a [`PositionTuple`]; all entries live in
/// `{1..M}` and are sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenOddSplit {
    /// `e` values such that position `2e` is in the tuple (count = `r`).
    pub evens: Vec<usize>,
    /// `o` values such that position `2o-1` is in the tuple.
    pub odds_present: Vec<usize>,
    /// `o` values such that position `2o-1` is not in the tuple.
    pub odds_missing: Vec<usize>,
}

/// Moment-preserving transforms applied by [`canonicalize`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CanonicalTransform {
    /// Exchange `x` and `d` everywhere (complement the position set).
    LetterSwap,
    /// Cyclic shift sending every position `p` to `p + 1` (with `2M -> 1`).
    RotateByOne,
}

/// Brings a tuple to canonical form (odd-majority, `k <= M`) by a letter
/// swap and/or a single rotation, returning the applied transforms.
/// Idempotent on canonical inputs.
pub fn canonicalize(
    half_length: usize,
    positions: &[usize],
) -> Result<(PositionTuple, Vec<CanonicalTransform>)> {
    let tuple = PositionTuple::new(half_length, positions.to_vec())?;
    let mut transforms = Vec::new();
    let mut tuple = tuple;
    if tuple.k() > half_length {
        let complement: Vec<usize> = (1..=2 * half_length)
            .filter(|p| tuple.positions.binary_search(p).is_err())
            .collect();
        tuple = PositionTuple::new(half_length, complement)?;
        transforms.push(CanonicalTransform::LetterSwap);
    }
    if tuple.odd_count() * 2 < tuple.k() {
        let mut rotated: Vec<usize> = tuple
            .positions
            .iter()
            .map(|&p| if p == 2 * half_length { 1 } else { p + 1 })
            .collect();
        rotated.sort_unstable();
        tuple = PositionTuple::new(half_length, rotated)?;
        transforms.push(CanonicalTransform::RotateByOne);
    }
    debug_assert!(tuple.is_canonical());
    Ok((tuple, transforms))
}

/// The word of length `2M` with `x` at the tuple's positions and `d`
/// elsewhere.
pub fn word_from_positions(tuple: &PositionTuple) -> Word {
    let mut letters = vec![Letter::Dagger; 2 * tuple.half_length()];
    for &p in tuple.positions() {
        letters[p - 1] = Letter::Plain;
    }
    Word::new(letters)
}

/// Number of non-crossing pairings of `{1..2M}` containing the pair
/// `(2e, 2l-1)`: the forced pair splits the circle into two independent
/// regions, giving `C_{e-l} C_{M-e+l-1}` for `l <= e` and
/// `C_{l-e-1} C_{M-l+e}` otherwise. Summing over `l = 1..M` recovers `C_M`.
pub fn pair_block_cardinality(e: usize, l: usize, half_length: usize) -> BigInt {
    assert!(
        (1..=half_length).contains(&e) && (1..=half_length).contains(&l),
        "pair_block_cardinality wants 1 <= e, l <= M"
    );
    if l <= e {
        catalan(e - l) * catalan(half_length - e + l - 1)
    } else {
        catalan(l - e - 1) * catalan(half_length - l + e)
    }
}

/// How two even entries `e1 < e2` interleave with two odd entries
/// `o1 < o2`, all in `{1..M}`. Ties between an odd and an even value bind
/// the odd entry to the left (the `<=` side).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InterleavingCase {
    /// `o1 < o2 <= e1 < e2`
    Ooee,
    /// `o1 <= e1 < o2 <= e2`
    Oeoe,
    /// `o1 <= e1 < e2 < o2`
    Oeeo,
    /// `e1 < o1 < o2 <= e2`
    Eooe,
    /// `e1 < o1 <= e2 < o2`
    Eoeo,
    /// `e1 < e2 < o1 < o2`
    Eeoo,
}

/// Classifies the relative order of `{o1, o2}` and `{e1, e2}`.
pub fn interleaving_case(e1: usize, e2: usize, o1: usize, o2: usize) -> InterleavingCase {
    debug_assert!(e1 < e2 && o1 < o2);
    if o2 <= e1 {
        InterleavingCase::Ooee
    } else if o1 <= e1 && o2 <= e2 {
        InterleavingCase::Oeoe
    } else if o1 <= e1 {
        InterleavingCase::Oeeo
    } else if o2 <= e2 {
        InterleavingCase::Eooe
    } else if o1 <= e2 {
        InterleavingCase::Eoeo
    } else {
        InterleavingCase::Eeoo
    }
}

fn cat3(a: i64, b: i64, c: i64) -> BigInt {
    assert!(a >= 0 && b >= 0 && c >= 0, "negative Catalan index");
    catalan(a as usize) * catalan(b as usize) * catalan(c as usize)
}

/// Number of non-crossing pairings of `{1..2M}` containing both forced
/// pairs `(2·e1, 2·o_a - 1)` and `(2·e2, 2·o_b - 1)`.
///
/// Zero when the two chords cross; otherwise a product of three Catalan
/// numbers, one per region the chords cut out, dispatched on
/// [`interleaving_case`].
pub fn pair_intersection_cardinality(
    e1: usize,
    o_a: usize,
    e2: usize,
    o_b: usize,
    half_length: usize,
) -> Result<BigInt> {
    let m = half_length as i64;
    if e1 >= e2 {
        return Err(Error::InvalidArgument(format!(
            "even entries must satisfy e1 < e2, got {e1} >= {e2}"
        )));
    }
    if o_a == o_b {
        return Err(Error::InvalidArgument(format!(
            "odd entries must differ, got o_a = o_b = {o_a}"
        )));
    }
    for x in [e1, o_a, e2, o_b] {
        if !(1..=half_length).contains(&x) {
            return Err(Error::InvalidArgument(format!(
                "entry {x} outside 1..={half_length}"
            )));
        }
    }
    // `parallel` pairs (e1,o1) with (e2,o2); otherwise (e1,o2)/(e2,o1).
    let parallel = o_a < o_b;
    let (o1, o2) = (o_a.min(o_b) as i64, o_a.max(o_b) as i64);
    let (e1, e2) = (e1 as i64, e2 as i64);
    let count = match interleaving_case(e1 as usize, e2 as usize, o1 as usize, o2 as usize) {
        InterleavingCase::Ooee => {
            if parallel {
                BigInt::zero()
            } else {
                cat3(e1 - o2, e2 - e1 + o2 - o1 - 1, m - e2 + o1 - 1)
            }
        }
        InterleavingCase::Oeoe => {
            if parallel {
                cat3(e1 - o1, e2 - o2, m - e1 - e2 + o1 + o2 - 2)
            } else {
                cat3(o2 - e1 - 1, e2 - o2 + e1 - o1, m - e2 + o1 - 1)
            }
        }
        InterleavingCase::Oeeo => {
            if parallel {
                cat3(e1 - o1, o2 - e2 - 1, m - o2 + e2 - e1 + o1 - 1)
            } else {
                BigInt::zero()
            }
        }
        InterleavingCase::Eooe => {
            if parallel {
                cat3(o1 - e1 - 1, e2 - o2, m - e2 + o2 + e1 - o1 - 1)
            } else {
                BigInt::zero()
            }
        }
        InterleavingCase::Eoeo => {
            if parallel {
                cat3(o1 - e1 - 1, o2 - e2 - 1, m - o2 - o1 + e1 + e2)
            } else {
                cat3(e2 - o1, o2 + o1 - e2 - e1 - 2, m - o2 + e1)
            }
        }
        InterleavingCase::Eeoo => {
            if parallel {
                BigInt::zero()
            } else {
                cat3(o1 - e2 - 1, o2 - o1 + e2 - e1 - 1, m - o2 + e1)
            }
        }
    };
    Ok(count)
}

/// Exact moment polynomial of the word encoded by a position tuple.
///
/// Canonicalizes first, then dispatches on the number of even entries `r` as
/// described in the module docs. For `r >= 3` the brute-force oracle is used
/// and words longer than [`ENUMERATION_CEILING`] are rejected.
pub fn positional_moment(tuple: &PositionTuple) -> Result<MomentPolynomial> {
    positional_moment_with_ceiling(tuple, ENUMERATION_CEILING)
}

/// [`positional_moment`] with an explicit enumeration ceiling for the
/// `r >= 3` fallback.
pub fn positional_moment_with_ceiling(
    tuple: &PositionTuple,
    ceiling: usize,
) -> Result<MomentPolynomial> {
    let canon;
    let tuple = if tuple.is_canonical() {
        tuple
    } else {
        canon = canonicalize(tuple.half_length(), tuple.positions())?.0;
        &canon
    };
    let m = tuple.half_length();
    let k = tuple.k();
    let shift = (m - k) as u32;
    let split = tuple.even_odd_split();
    match split.evens.as_slice() {
        [] => Ok(MomentPolynomial::from_coefficients([(shift, catalan(m))])),
        [e] => {
            // N_0 = number of pairings whose forced edge at 2e lands on a
            // missing odd slot; every other pairing contributes one x-x pair.
            let paired_out: BigInt = split
                .odds_missing
                .iter()
                .map(|&o| pair_block_cardinality(*e, o, m))
                .sum();
            let with_xx_pair = catalan(m) - &paired_out;
            Ok(MomentPolynomial::from_coefficients([
                (shift, paired_out),
                (shift + 2, with_xx_pair),
            ]))
        }
        [e1, e2] => {
            let singles: BigInt = split
                .odds_missing
                .iter()
                .map(|&o| pair_block_cardinality(*e1, o, m) + pair_block_cardinality(*e2, o, m))
                .sum();
            let mut both = BigInt::zero();
            for (idx, &o_r) in split.odds_missing.iter().enumerate() {
                for &o_l in &split.odds_missing[idx + 1..] {
                    both += pair_intersection_cardinality(*e1, o_r, *e2, o_l, m)?;
                    both += pair_intersection_cardinality(*e1, o_l, *e2, o_r, m)?;
                }
            }
            let n0 = both.clone();
            let n1 = &singles - BigInt::from(2) * &both;
            let n2 = catalan(m) - singles + both;
            Ok(MomentPolynomial::from_coefficients([
                (shift, n0),
                (shift + 2, n1),
                (shift + 4, n2),
            ]))
        }
        evens => {
            let word = word_from_positions(tuple);
            word_moment_oracle_with_ceiling(&word, ceiling).map_err(|e| match e {
                Error::EnumerationCapacity { len, ceiling } => Error::PositionalCapacity {
                    even_count: evens.len(),
                    len,
                    ceiling,
                },
                other => other,
            })
        }
    }
}

/// Constant term of the positional moment: the Ginibre (`rho = 0`) value.
/// Zero whenever the canonical tuple is unbalanced (`k < M`), since the
/// `rho^(M-k)` prefactor kills the constant.
pub fn ginibre_moment(tuple: &PositionTuple) -> Result<BigInt> {
    let (canon, _) = canonicalize(tuple.half_length(), tuple.positions())?;
    if canon.k() < canon.half_length() {
        return Ok(BigInt::zero());
    }
    Ok(positional_moment(&canon)?.constant_term())
}
