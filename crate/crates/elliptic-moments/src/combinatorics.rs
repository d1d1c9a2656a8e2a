//! Exact integer combinatorics: Catalan numbers, Catalan triangular (ballot)
//! numbers, the `B(k,t)` sequence, and exhaustive enumeration of non-crossing
//! pairings with rank statistics.
//!
//! A *non-crossing pairing* of `{1..L}` is a perfect matching with no two
//! pairs `(a,b)`, `(c,d)` satisfying `a < c < b < d`; there are `C_{L/2}` of
//! them. When the ground set carries a two-letter word, each pairing splits
//! into *same-letter* and *mixed* pairs; the number of mixed pairs (the rank)
//! drives everything else in this crate.
//!
//! All counts are exact [`BigInt`] values. Binomial coefficients are built by
//! a multiplicative running product, never through factorials.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Words longer than this are rejected by operations that must exhaust all
/// non-crossing pairings (`C_12 = 208_012` pairings at length 24). The CLI
/// can override it via `ELLIPTIC_MOMENTS_MAX_L`.
pub const ENUMERATION_CEILING: usize = 24;

/// One letter of a word: the matrix itself or its conjugate transpose.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    /// `X` (written `x`, drawn as an open dot).
    Plain,
    /// `X†` (written `d`, drawn as a filled dot).
    Dagger,
}

impl Letter {
    /// The other letter.
    pub fn flipped(self) -> Letter {
        match self {
            Letter::Plain => Letter::Dagger,
            Letter::Dagger => Letter::Plain,
        }
    }
}

/// A finite sequence of letters encoding the product `X^e1 … X^eL`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    /// The block word `x^n d^m`.
    pub fn block(n: usize, m: usize) -> Self {
        let mut letters = vec![Letter::Plain; n];
        letters.resize(n + m, Letter::Dagger);
        Word { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Number of `x` letters.
    pub fn plain_count(&self) -> usize {
        self.letters.iter().filter(|&&l| l == Letter::Plain).count()
    }

    /// Number of `d` letters.
    pub fn dagger_count(&self) -> usize {
        self.len() - self.plain_count()
    }

    /// Cyclic left rotation by `t` letters.
    pub fn rotated(&self, t: usize) -> Word {
        if self.is_empty() {
            return self.clone();
        }
        let t = t % self.len();
        let mut letters = self.letters[t..].to_vec();
        letters.extend_from_slice(&self.letters[..t]);
        Word { letters }
    }

    /// Reverse the word and flip every letter: the word of the conjugate
    /// transpose of the product. Traces are invariant under it.
    pub fn conjugated(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.flipped()).collect(),
        }
    }

    /// Flip every letter in place (exchange `X` and `X†`).
    pub fn letters_swapped(&self) -> Word {
        Word {
            letters: self.letters.iter().map(|l| l.flipped()).collect(),
        }
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'x' => Ok(Letter::Plain),
                'd' => Ok(Letter::Dagger),
                other => Err(Error::InvalidLetter(other)),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word::new)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            f.write_str(match l {
                Letter::Plain => "x",
                Letter::Dagger => "d",
            })?;
        }
        Ok(())
    }
}

/// A perfect matching of `{1..L}` as a set of `(lo, hi)` pairs with
/// `lo < hi`, kept sorted by `lo`. Indices are 1-based as on the circle.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pairing {
    pairs: Vec<(usize, usize)>,
}

impl Pairing {
    /// Builds a pairing, validating that the pairs form a perfect matching of
    /// `{1..2·pairs.len()}`.
    pub fn new(mut pairs: Vec<(usize, usize)>) -> Result<Self> {
        let ground = 2 * pairs.len();
        let mut seen = vec![false; ground + 1];
        for p in pairs.iter_mut() {
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
            let (lo, hi) = *p;
            if lo == 0 || hi > ground || lo == hi {
                return Err(Error::InvalidArgument(format!(
                    "pair ({lo},{hi}) is not inside {{1..{ground}}}"
                )));
            }
            for i in [lo, hi] {
                if seen[i] {
                    return Err(Error::InvalidArgument(format!("index {i} paired twice")));
                }
                seen[i] = true;
            }
        }
        pairs.sort_unstable();
        Ok(Pairing { pairs })
    }

    fn from_sorted_unchecked(pairs: Vec<(usize, usize)>) -> Self {
        Pairing { pairs }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Size of the ground set `{1..L}`.
    pub fn ground_size(&self) -> usize {
        2 * self.pairs.len()
    }

    /// True when no two pairs cross (`a < c < b < d`).
    pub fn is_noncrossing(&self) -> bool {
        for (i, &(_, b)) in self.pairs.iter().enumerate() {
            for &(c, d) in &self.pairs[i + 1..] {
                if c > b {
                    break; // sorted by lo, no later pair can straddle b
                }
                // lo < c < b is guaranteed here; crossing iff d escapes
                if d > b {
                    return false;
                }
            }
        }
        true
    }
}

/// `n`-th Catalan number `C_n = binom(2n, n) / (n + 1)`.
pub fn catalan(n: usize) -> BigInt {
    exact_div(binomial(2 * n, n), &BigInt::from(n + 1))
}

/// Binomial coefficient `binom(n, k)` by a multiplicative running product;
/// each intermediate division is exact.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1u8);
    for i in 1..=k {
        acc = exact_div(acc * BigInt::from(n - k + i), &BigInt::from(i));
    }
    acc
}

fn exact_div(num: BigInt, den: &BigInt) -> BigInt {
    debug_assert!((&num % den).is_zero(), "inexact division {num} / {den}");
    num / den
}

/// Catalan triangular (ballot) number `C(n, k)`: `C(n, 1) = 1`,
/// `C(n, k) = C(n, k-1) + C(n-1, k)`, and `C(n, k) = 0` for `k > n`.
///
/// Computed through the ballot closed form
/// `(n - k + 1)/n · binom(n + k - 2, n - 1)`. A widely circulated misprint
/// negates the correction term (`(n - k - 1)/n`), which contradicts the
/// recursion as soon as `k` approaches `n`; the recursion is the source of
/// truth here and the unit tests pin the closed form against it.
pub fn catalan_triangle(n: usize, k: usize) -> BigInt {
    assert!(n >= 1 && k >= 1, "catalan_triangle requires n, k >= 1");
    if k > n {
        return BigInt::zero();
    }
    let b = binomial(n + k - 2, n - 1);
    exact_div(b * BigInt::from(n - k + 1), &BigInt::from(n))
}

/// `B(k, t) = (2k+1)/(t+k+1) · binom(2t, t+k)` for `k <= t`, else 0.
///
/// Equals `catalan_triangle(t + k + 1, t - k + 1)`; `B(0, t) = C_t`.
pub fn ballot_b(k: usize, t: usize) -> BigInt {
    if k > t {
        return BigInt::zero();
    }
    let b = binomial(2 * t, t + k);
    exact_div(b * BigInt::from(2 * k + 1), &BigInt::from(t + k + 1))
}

/// Odd-case sibling of [`ballot_b`]: `2(k+1)/(t+k+2) · binom(2t+1, t+k+1)`
/// for `k <= t`, else 0. Equals `catalan_triangle(t + k + 2, t - k + 1)`.
pub(crate) fn ballot_b_odd(k: usize, t: usize) -> BigInt {
    if k > t {
        return BigInt::zero();
    }
    let b = binomial(2 * t + 1, t + k + 1);
    exact_div(b * BigInt::from(2 * (k + 1)), &BigInt::from(t + k + 2))
}

/// Evaluates `B(k, t)` through the Catalan-convolution recursion
/// `B(k, t) = sum_{r=k..t} C_{t-r} sum_{s=k..r} C_{r-s} B(k-1, s-1)` with
/// `B(0, t) = C_t`. Agrees with [`ballot_b`] everywhere; kept as an
/// independent route for cross-checking.
pub fn ballot_b_recursive(k: usize, t: usize) -> BigInt {
    // cats[i] = C_i; row holds B(j-1, .) entering pass j, starting from
    // B(0, s) = C_s. The sums nominally start at r = s = j, but the extra
    // low terms vanish because row[s-1] is zero below its level.
    let cats: Vec<BigInt> = (0..=t).map(catalan).collect();
    let mut row: Vec<BigInt> = cats.clone();
    for _j in 1..=k {
        let mut next = vec![BigInt::zero(); t + 1];
        for (tt, slot) in next.iter_mut().enumerate() {
            let mut outer = BigInt::zero();
            for r in 1..=tt {
                let mut inner = BigInt::zero();
                for s in 1..=r {
                    inner += &cats[r - s] * &row[s - 1];
                }
                outer += &cats[tt - r] * inner;
            }
            *slot = outer;
        }
        row = next;
    }
    row[t].clone()
}

/// Rank parity selector for [`rank_cardinality_closed`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankParity {
    /// Block word `x^{2u} d^{2v}`, rank `2k`.
    Even,
    /// Block word `x^{2u+1} d^{2v+1}`, rank `2k+1`.
    Odd,
}

/// Number of non-crossing pairings of the block word with exactly the given
/// rank, in closed form:
///
/// * `Even`: pairings of `x^{2u} d^{2v}` with `2k` mixed pairs, equal to
///   `B(k,u)·B(k,v) = (2k+1)^2/((u+k+1)(v+k+1)) · binom(2u,u+k) · binom(2v,v+k)`;
/// * `Odd`: pairings of `x^{2u+1} d^{2v+1}` with `2k+1` mixed pairs, equal to
///   `4(k+1)^2/((u+k+2)(v+k+2)) · binom(2u+1,u+k+1) · binom(2v+1,v+k+1)`.
pub fn rank_cardinality_closed(u: usize, v: usize, k: usize, parity: RankParity) -> BigInt {
    match parity {
        RankParity::Even => ballot_b(k, u) * ballot_b(k, v),
        RankParity::Odd => ballot_b_odd(k, u) * ballot_b_odd(k, v),
    }
}

/// Streams every non-crossing perfect matching of `{1..len}` exactly once.
///
/// Yields nothing when `len` is odd (no pairings exist) and a single empty
/// pairing when `len == 0`. The total count is `C_{len/2}`, so lengths much
/// beyond [`ENUMERATION_CEILING`] are impractical to exhaust.
pub fn enumerate_nc_pairings(len: usize) -> NcPairings {
    let root = Frame {
        pairs: Vec::new(),
        segments: if len == 0 { Vec::new() } else { vec![(1, len)] },
    };
    NcPairings { stack: vec![root] }
}

/// Partitions the stream of [`enumerate_nc_pairings`] by the choice of
/// partner for index 1 (index 1 pairs with an even index `2j`, enclosing an
/// even-length segment). The returned iterators cover disjoint subsets whose
/// union is the full stream, so they can be consumed in parallel.
pub fn enumerate_nc_pairings_split(len: usize) -> Vec<NcPairings> {
    if len == 0 {
        return vec![enumerate_nc_pairings(0)];
    }
    if len % 2 == 1 {
        return Vec::new();
    }
    (1..=len / 2)
        .map(|j| {
            let partner = 2 * j;
            let mut segments = Vec::new();
            if partner < len {
                segments.push((partner + 1, len));
            }
            if partner > 2 {
                segments.push((2, partner - 1));
            }
            NcPairings {
                stack: vec![Frame {
                    pairs: vec![(1, partner)],
                    segments,
                }],
            }
        })
        .collect()
}

struct Frame {
    pairs: Vec<(usize, usize)>,
    segments: Vec<(usize, usize)>, // disjoint inclusive intervals, processed LIFO
}

/// Iterator over non-crossing pairings; see [`enumerate_nc_pairings`].
pub struct NcPairings {
    stack: Vec<Frame>,
}

impl Iterator for NcPairings {
    type Item = Pairing;

    fn next(&mut self) -> Option<Pairing> {
        while let Some(frame) = self.stack.pop() {
            let Some(&(lo, hi)) = frame.segments.last() else {
                let mut pairs = frame.pairs;
                pairs.sort_unstable();
                return Some(Pairing::from_sorted_unchecked(pairs));
            };
            // Pair `lo` with each odd-offset partner; push children in
            // reverse so partners come out in increasing order.
            let partners: Vec<usize> = (lo + 1..=hi).step_by(2).collect();
            for partner in partners.into_iter().rev() {
                let mut segments = frame.segments[..frame.segments.len() - 1].to_vec();
                if partner < hi {
                    segments.push((partner + 1, hi));
                }
                if partner > lo + 1 {
                    segments.push((lo + 1, partner - 1));
                }
                let mut pairs = frame.pairs.clone();
                pairs.push((lo, partner));
                self.stack.push(Frame { pairs, segments });
            }
        }
        None
    }
}

/// Number of pairs whose endpoints carry the same letter.
pub fn sigma_same(word: &Word, pairing: &Pairing) -> Result<usize> {
    check_ground(word, pairing)?;
    let letters = word.letters();
    Ok(pairing
        .pairs()
        .iter()
        .filter(|&&(lo, hi)| letters[lo - 1] == letters[hi - 1])
        .count())
}

/// Number of pairs whose endpoints carry different letters; complements
/// [`sigma_same`] so the two always sum to `L/2`.
pub fn sigma_mixed(word: &Word, pairing: &Pairing) -> Result<usize> {
    check_ground(word, pairing)?;
    let letters = word.letters();
    Ok(pairing
        .pairs()
        .iter()
        .filter(|&&(lo, hi)| letters[lo - 1] != letters[hi - 1])
        .count())
}

fn check_ground(word: &Word, pairing: &Pairing) -> Result<()> {
    if word.len() != pairing.ground_size() {
        return Err(Error::WordPairingMismatch {
            word_len: word.len(),
            ground_size: pairing.ground_size(),
        });
    }
    Ok(())
}

/// Exhaustive census of non-crossing pairings of `word` by mixed-pair count.
///
/// The returned map has one entry for every admissible rank: `0 <= rank <=
/// min(#x, #d)` with the parity of `#x` (all other ranks are impossible).
/// Zero counts are kept, the values sum to `C_{L/2}`, and the map is empty
/// for odd-length words.
pub fn rank_census(word: &Word) -> BTreeMap<usize, BigInt> {
    let len = word.len();
    let mut census = BTreeMap::new();
    if len % 2 == 1 {
        return census;
    }
    let plain = word.plain_count();
    let max_rank = plain.min(word.dagger_count());
    let counts = census_counts(word);
    for rank in (plain % 2..=max_rank).step_by(2) {
        census.insert(rank, BigInt::from(counts[rank]));
    }
    census
}

/// Raw per-rank counts (index = number of mixed pairs), length `L/2 + 1`.
pub(crate) fn census_counts(word: &Word) -> Vec<u64> {
    let len = word.len();
    let mut counts = vec![0u64; len / 2 + 1];
    if len == 0 {
        counts[0] = 1;
        return counts;
    }
    if len % 2 == 1 {
        return counts;
    }
    if len >= 18 {
        // Partition on the partner of index 1 and walk branches in parallel;
        // the merge is a plain integer sum, so the result is deterministic.
        let branches: Vec<Vec<u64>> = (1..=len / 2)
            .into_par_iter()
            .map(|j| {
                let partner = 2 * j;
                let mut branch = vec![0u64; len / 2 + 1];
                let mut segments = Vec::with_capacity(len / 2);
                if partner < len {
                    segments.push((partner + 1, len));
                }
                if partner > 2 {
                    segments.push((2, partner - 1));
                }
                let first = usize::from(word.letters()[0] != word.letters()[partner - 1]);
                census_recurse(word.letters(), &mut segments, first, &mut branch);
                branch
            })
            .collect();
        for branch in branches {
            for (slot, b) in counts.iter_mut().zip(branch) {
                *slot += b;
            }
        }
    } else {
        let mut segments = vec![(1, len)];
        census_recurse(word.letters(), &mut segments, 0, &mut counts);
    }
    counts
}

fn census_recurse(
    letters: &[Letter],
    segments: &mut Vec<(usize, usize)>,
    mixed: usize,
    counts: &mut [u64],
) {
    let Some((lo, hi)) = segments.pop() else {
        counts[mixed] += 1;
        return;
    };
    for partner in (lo + 1..=hi).step_by(2) {
        let depth = segments.len();
        if partner < hi {
            segments.push((partner + 1, hi));
        }
        if partner > lo + 1 {
            segments.push((lo + 1, partner - 1));
        }
        let add = usize::from(letters[lo - 1] != letters[partner - 1]);
        census_recurse(letters, segments, mixed + add, counts);
        segments.truncate(depth);
    }
    segments.push((lo, hi));
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn catalan_small_values() {
        let expected = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012];
        for (n, &c) in expected.iter().enumerate() {
            assert_eq!(catalan(n), bi(c), "C_{n}");
        }
    }

    #[test]
    fn catalan_triangle_matches_printed_table() {
        // rows n = 1..=7 of the triangle
        let table: [[i64; 7]; 7] = [
            [1, 0, 0, 0, 0, 0, 0],
            [1, 1, 0, 0, 0, 0, 0],
            [1, 2, 2, 0, 0, 0, 0],
            [1, 3, 5, 5, 0, 0, 0],
            [1, 4, 9, 14, 14, 0, 0],
            [1, 5, 14, 28, 42, 42, 0],
            [1, 6, 20, 48, 90, 132, 132],
        ];
        for (n, row) in table.iter().enumerate() {
            for (k, &val) in row.iter().enumerate() {
                assert_eq!(catalan_triangle(n + 1, k + 1), bi(val), "C({},{})", n + 1, k + 1);
            }
        }
    }

    #[test]
    fn catalan_triangle_recursion_is_source_of_truth() {
        for n in 2..=25usize {
            for k in 2..=n {
                let rec = catalan_triangle(n, k - 1) + catalan_triangle(n - 1, k);
                assert_eq!(catalan_triangle(n, k), rec, "recursion at ({n},{k})");
            }
            assert_eq!(catalan_triangle(n, 1), bi(1));
        }
        // diagonal reproduces the Catalan numbers
        for n in 0..=12usize {
            assert_eq!(catalan_triangle(n + 1, n + 1), catalan(n));
        }
    }

    #[test]
    fn ballot_b_examples() {
        assert_eq!(ballot_b(0, 3), bi(5));
        assert_eq!(ballot_b(1, 2), bi(3));
        assert_eq!(ballot_b(2, 2), bi(1));
        assert_eq!(ballot_b(3, 2), bi(0));
    }

    #[test]
    fn ballot_b_three_routes_agree() {
        for t in 0..=20usize {
            for k in 0..=t {
                let closed = ballot_b(k, t);
                assert_eq!(closed, ballot_b_recursive(k, t), "recursion at ({k},{t})");
                assert_eq!(
                    closed,
                    catalan_triangle(t + k + 1, t - k + 1),
                    "triangle lookup at ({k},{t})"
                );
            }
            assert_eq!(ballot_b_recursive(0, t), catalan(t));
        }
    }

    #[test]
    fn ballot_b_recursive_examples() {
        assert_eq!(ballot_b_recursive(1, 2), bi(3));
        assert_eq!(ballot_b_recursive(3, 3), bi(1)); // C(7,1)
    }

    #[test]
    fn rank_cardinality_examples() {
        assert_eq!(rank_cardinality_closed(3, 1, 1, RankParity::Even), bi(9));
        assert_eq!(rank_cardinality_closed(2, 1, 0, RankParity::Odd), bi(10));
        // derived by brute force below in `closed_rank_matches_census`
        assert_eq!(rank_cardinality_closed(2, 4, 2, RankParity::Even), bi(20));
    }

    #[test]
    fn rank_cardinality_symmetry_and_sums() {
        for u in 0..=7usize {
            for v in 0..=7usize {
                let mut even_sum = BigInt::zero();
                let mut odd_sum = BigInt::zero();
                for k in 0..=u.min(v) {
                    let e = rank_cardinality_closed(u, v, k, RankParity::Even);
                    let o = rank_cardinality_closed(u, v, k, RankParity::Odd);
                    assert_eq!(e, rank_cardinality_closed(v, u, k, RankParity::Even));
                    assert_eq!(o, rank_cardinality_closed(v, u, k, RankParity::Odd));
                    even_sum += e;
                    odd_sum += o;
                }
                assert_eq!(even_sum, catalan(u + v), "even sum ({u},{v})");
                assert_eq!(odd_sum, catalan(u + v + 1), "odd sum ({u},{v})");
            }
        }
    }

    #[test]
    fn enumeration_counts_match_catalan() {
        for half in 0..=8usize {
            let len = 2 * half;
            let count = enumerate_nc_pairings(len).count();
            assert_eq!(BigInt::from(count), catalan(half), "len {len}");
        }
    }

    #[test]
    fn enumeration_yields_valid_noncrossing_pairings() {
        for len in (2..=12usize).step_by(2) {
            let mut seen = std::collections::HashSet::new();
            for p in enumerate_nc_pairings(len) {
                assert_eq!(p.ground_size(), len);
                assert!(p.is_noncrossing(), "{p:?}");
                assert!(seen.insert(p.pairs().to_vec()), "duplicate pairing");
            }
        }
    }

    #[test]
    fn enumeration_odd_length_is_empty() {
        assert_eq!(enumerate_nc_pairings(5).count(), 0);
        assert_eq!(enumerate_nc_pairings(1).count(), 0);
    }

    #[test]
    fn enumeration_len_two() {
        let all: Vec<_> = enumerate_nc_pairings(2).collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].pairs(), &[(1, 2)]);
    }

    #[test]
    fn split_enumeration_partitions_the_stream() {
        for len in [0usize, 2, 6, 10, 12] {
            let whole: std::collections::HashSet<_> = enumerate_nc_pairings(len)
                .map(|p| p.pairs().to_vec())
                .collect();
            let mut from_parts = std::collections::HashSet::new();
            for part in enumerate_nc_pairings_split(len) {
                for p in part {
                    assert!(from_parts.insert(p.pairs().to_vec()), "overlap between parts");
                }
            }
            assert_eq!(whole, from_parts, "len {len}");
        }
        assert!(enumerate_nc_pairings_split(7).is_empty());
    }

    #[test]
    fn sigma_counts() {
        let w: Word = "xd".parse().unwrap();
        let p = Pairing::new(vec![(1, 2)]).unwrap();
        assert_eq!(sigma_same(&w, &p).unwrap(), 0);
        assert_eq!(sigma_mixed(&w, &p).unwrap(), 1);

        let w: Word = "xx".parse().unwrap();
        assert_eq!(sigma_same(&w, &p).unwrap(), 1);
        assert_eq!(sigma_mixed(&w, &p).unwrap(), 0);

        // fully nested all-mixed pairing of x^4 d^4
        let w: Word = "xxxxdddd".parse().unwrap();
        let p = Pairing::new(vec![(1, 8), (2, 7), (3, 6), (4, 5)]).unwrap();
        assert_eq!(sigma_same(&w, &p).unwrap(), 0);
        assert_eq!(sigma_mixed(&w, &p).unwrap(), 4);
    }

    #[test]
    fn sigma_rejects_mismatched_ground_set() {
        let w: Word = "xd".parse().unwrap();
        let p = Pairing::new(vec![(1, 2), (3, 4)]).unwrap();
        assert!(matches!(
            sigma_same(&w, &p),
            Err(Error::WordPairingMismatch { .. })
        ));
    }

    #[test]
    fn sigma_split_sums_to_pair_count() {
        for len in (2..=10usize).step_by(2) {
            let word = Word::block(len / 2 + 1, len - len / 2 - 1);
            for p in enumerate_nc_pairings(len) {
                let s = sigma_same(&word, &p).unwrap();
                let c = sigma_mixed(&word, &p).unwrap();
                assert_eq!(s + c, len / 2);
            }
        }
    }

    #[test]
    fn census_worked_examples() {
        // x^2 d x d x d^2: no all-same pairing exists (the lone d at index 3
        // can never pair off inside an x-x chord), while the five pairings
        // behind the constant moment term are the all-mixed ones.
        let census = rank_census(&"xxdxdxdd".parse().unwrap());
        let expect: BTreeMap<usize, BigInt> =
            [(0, bi(0)), (2, bi(9)), (4, bi(5))].into_iter().collect();
        assert_eq!(census, expect);

        // permuting one x changes the census to 1 / 9 / 4
        let census = rank_census(&"xdxxdxdd".parse().unwrap());
        let expect: BTreeMap<usize, BigInt> =
            [(0, bi(1)), (2, bi(9)), (4, bi(4))].into_iter().collect();
        assert_eq!(census, expect);

        let census = rank_census(&Word::block(6, 2));
        let expect: BTreeMap<usize, BigInt> = [(0, bi(5)), (2, bi(9))].into_iter().collect();
        assert_eq!(census, expect);
    }

    #[test]
    fn census_degenerate_words() {
        let empty = rank_census(&Word::new(vec![]));
        assert_eq!(empty, [(0, bi(1))].into_iter().collect());
        assert!(rank_census(&"xxx".parse().unwrap()).is_empty());
    }

    #[test]
    fn census_parity_and_bound() {
        // every admissible rank present, everything else structurally absent
        for len in (2..=14usize).step_by(2) {
            for plain in 0..=len {
                let word = Word::block(plain, len - plain);
                let census = rank_census(&word);
                let bound = plain.min(len - plain);
                let mut total = BigInt::zero();
                for (&rank, count) in &census {
                    assert!(rank <= bound);
                    assert_eq!(rank % 2, plain % 2);
                    total += count;
                }
                assert_eq!(total, catalan(len / 2));
            }
        }
    }

    #[test]
    fn closed_rank_matches_census() {
        for u in 0..=5usize {
            for v in 0..=5usize {
                let word = Word::block(2 * u, 2 * v);
                let census = rank_census(&word);
                for k in 0..=u.min(v) {
                    assert_eq!(
                        census[&(2 * k)],
                        rank_cardinality_closed(u, v, k, RankParity::Even),
                        "even block ({u},{v}), rank {}",
                        2 * k
                    );
                }
                let word = Word::block(2 * u + 1, 2 * v + 1);
                let census = rank_census(&word);
                for k in 0..=u.min(v) {
                    assert_eq!(
                        census[&(2 * k + 1)],
                        rank_cardinality_closed(u, v, k, RankParity::Odd),
                        "odd block ({u},{v}), rank {}",
                        2 * k + 1
                    );
                }
            }
        }
    }

    #[test]
    fn parallel_census_agrees_with_sequential() {
        // length 18 takes the parallel branch
        let word = Word::block(9, 9);
        let counts = census_counts(&word);
        let mut segments = vec![(1, word.len())];
        let mut seq = vec![0u64; word.len() / 2 + 1];
        census_recurse(word.letters(), &mut segments, 0, &mut seq);
        assert_eq!(counts, seq);
        assert_eq!(
            BigInt::from(counts.iter().sum::<u64>()),
            catalan(word.len() / 2)
        );
    }

    #[test]
    fn word_parsing_and_transforms() {
        let w: Word = "xxdxdxdd".parse().unwrap();
        assert_eq!(w.to_string(), "xxdxdxdd");
        assert_eq!(w.plain_count(), 4);
        assert_eq!(w.rotated(2).to_string(), "dxdxddxx");
        assert_eq!(w.rotated(w.len()), w);
        assert_eq!(w.conjugated().to_string(), "xxdxdxdd".chars().rev().map(|c| if c == 'x' { 'd' } else { 'x' }).collect::<String>());
        assert_eq!(w.letters_swapped().to_string(), "ddxdxdxx");
        assert!(matches!("xyz".parse::<Word>(), Err(Error::InvalidLetter('y'))));
    }
}
