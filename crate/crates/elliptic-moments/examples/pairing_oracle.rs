//! The brute-force route: enumerate every non-crossing pairing of a word,
//! tally mixed pairs, and rebuild the moment polynomial from the census.
//!
//! Run with: `cargo run --example pairing_oracle`

use elliptic_moments::{
    block_moment, catalan, enumerate_nc_pairings, enumerate_nc_pairings_split, rank_census,
    sigma_mixed, sigma_same, word_moment_oracle, Word,
};

fn main() {
    println!("All non-crossing pairings of {{1..6}} (C_3 = 5 of them):");
    for p in enumerate_nc_pairings(6) {
        println!("  {:?}", p.pairs());
    }
    println!("Odd ground sets admit none: {}", enumerate_nc_pairings(5).count());

    let word: Word = "xxdxdxdd".parse().unwrap();
    println!("\nWord {word}: every pairing splits into same-letter and mixed pairs.");
    for p in enumerate_nc_pairings(word.len()).take(4) {
        let s = sigma_same(&word, &p).unwrap();
        let c = sigma_mixed(&word, &p).unwrap();
        println!("  {:?}: same = {s}, mixed = {c}", p.pairs());
        assert_eq!(s + c, word.len() / 2);
    }

    println!("\nCensus of {word} by mixed-pair count:");
    for (rank, count) in rank_census(&word) {
        println!("  {count} pairings with {rank} mixed pairs");
    }
    println!("Moment via the oracle: tau({word}) = {}", word_moment_oracle(&word).unwrap());

    println!("\nDual routes agree: the ballot-number closed form never");
    println!("enumerates, the oracle always does.");
    for (n, m) in [(6usize, 2usize), (5, 3), (8, 4)] {
        let closed = block_moment(n, m);
        let brute = word_moment_oracle(&Word::block(n, m)).unwrap();
        assert_eq!(closed, brute);
        println!("  x^{n} d^{m}: {closed}");
    }

    println!("\nThe stream partitions by the partner of index 1, so branches");
    println!("can be consumed in parallel:");
    let total: usize = enumerate_nc_pairings_split(12)
        .into_iter()
        .map(|part| part.count())
        .sum();
    println!("  12 points -> {} branches, {total} pairings = C_6 = {}", 6, catalan(6));
}
