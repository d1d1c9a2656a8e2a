//! Closed-form moment polynomials for block words `x^n d^m` and their
//! special values at `rho = 1, 0, -1`.
//!
//! Run with: `cargo run --example block_moments`

use num_rational::BigRational;

use elliptic_moments::{block_moment, catalan, special_value, SpecialPoint};

fn main() {
    println!("Mixed-moment polynomials of x^n d^m (coefficients count");
    println!("non-crossing pairings with a fixed number of mixed pairs):\n");
    for (n, m) in [(6usize, 2usize), (5, 3), (4, 8), (3, 3), (3, 2)] {
        let p = block_moment(n, m);
        println!("  P[n={n}, m={m}](rho) = {p}");
    }

    println!("\nThe coefficients always sum to a Catalan number (rho = 1 is");
    println!("the symmetric-Gaussian point):");
    for (n, m) in [(6usize, 2usize), (4, 8), (7, 7)] {
        let p = block_moment(n, m);
        println!(
            "  n={n}, m={m}: sum = {} = C_{}",
            p.coefficient_sum(),
            (n + m) / 2
        );
        assert_eq!(p.coefficient_sum(), catalan((n + m) / 2));
    }

    println!("\nCorner values through the exact rational path:");
    let corners = [
        (1i64, SpecialPoint::Goe, "rho = +1 (GOE)"),
        (0, SpecialPoint::Ginibre, "rho =  0 (Ginibre)"),
        (-1, SpecialPoint::AntiGoe, "rho = -1 (anti-GOE)"),
    ];
    for (n, m) in [(6usize, 2usize), (5, 3), (4, 4)] {
        let p = block_moment(n, m);
        for (r, point, label) in &corners {
            let via_poly = p.eval_rational(&BigRational::from_integer((*r).into()));
            let via_shortcut = special_value(n, m, *point);
            assert_eq!(via_poly, BigRational::from_integer(via_shortcut.clone()));
            println!("  P[{n},{m}] at {label:<20} = {via_shortcut}");
        }
    }

    println!("\nFloating-point evaluation inside the ellipse:");
    let p = block_moment(6, 2);
    for rho in [-0.8, -0.3, 0.0, 0.3, 0.8] {
        println!("  P[6,2]({rho:>4}) = {}", p.eval_f64(rho));
    }
}
