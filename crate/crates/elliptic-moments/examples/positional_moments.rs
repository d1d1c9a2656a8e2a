//! Moments indexed by the positions of `x` inside a word of length 2M:
//! canonicalization, the closed forms for up to two even positions, and the
//! Ginibre constant terms.
//!
//! Run with: `cargo run --example positional_moments`

use elliptic_moments::{
    canonicalize, ginibre_moment, pair_block_cardinality, positional_moment, word_from_positions,
    PositionTuple,
};

fn main() {
    println!("A position tuple fixes where the x letters sit; the rest are d:");
    for (m, positions) in [
        (4usize, vec![1usize, 2, 3, 7]),
        (6, vec![1, 2, 7, 9]),
        (8, vec![2, 3, 9, 10]),
    ] {
        let t = PositionTuple::new(m, positions.clone()).unwrap();
        println!("  M={m}, i={positions:?}  ->  {}", word_from_positions(&t));
    }

    println!("\nClosed-form moments (zero, one, and two even positions):");
    for (m, positions) in [
        (4usize, vec![1usize, 3, 7]),             // r = 0: a single term
        (6, vec![1, 2, 7, 9]),                    // r = 1
        (8, vec![1, 5, 7, 8, 9, 13]),             // r = 1
        (8, vec![2, 3, 9, 10]),                   // r = 2
        (9, vec![1, 5, 7, 8, 9, 13, 14, 15]),     // r = 2, unbalanced
        (8, vec![1, 2, 3, 9, 11, 12, 13, 15]),    // r = 2, balanced
    ] {
        let t = PositionTuple::new(m, positions.clone()).unwrap();
        println!("  M={m}, i={positions:?}: {}", positional_moment(&t).unwrap());
    }

    println!("\nRotation and letter swap preserve the moment; canonicalization");
    println!("applies them to reach an odd-majority tuple with k <= M:");
    for (m, positions) in [(3usize, vec![2usize, 4, 6]), (2, vec![1, 2, 3])] {
        let (canon, transforms) = canonicalize(m, &positions).unwrap();
        println!(
            "  M={m}, i={positions:?} -> i={:?} via {transforms:?}",
            canon.positions()
        );
    }

    println!("\nForcing the pair (2e, 2l-1) splits the circle in two; the");
    println!("counts sum back to C_M over l:");
    let m = 5;
    for e in [1usize, 3] {
        let row: Vec<String> = (1..=m)
            .map(|l| pair_block_cardinality(e, l, m).to_string())
            .collect();
        println!("  M={m}, e={e}: [{}]", row.join(", "));
    }

    println!("\nConstant terms at rho = 0 (Ginibre moments, Fuss-Catalan values):");
    for m in 1..=6usize {
        let alternating: Vec<usize> = (1..=m).map(|o| 2 * o - 1).collect();
        let t = PositionTuple::new(m, alternating).unwrap();
        println!("  tr (X X†)^{m} -> {}", ginibre_moment(&t).unwrap());
    }
    let t = PositionTuple::new(6, vec![1, 2, 3, 7, 8, 9]).unwrap();
    println!("  tr (X^3 (X†)^3)^2 -> {}", ginibre_moment(&t).unwrap());
}
