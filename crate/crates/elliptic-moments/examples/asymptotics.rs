//! Saddle-point asymptotics of the rescaled moments along rays n = q m:
//! saddle location, amplitude and rate functions, and convergence of the
//! estimate toward the exact values.
//!
//! Run with: `cargo run --example asymptotics`

use elliptic_moments::asymptotics::{
    phi_rate, psi_prefactor, rescaled_estimate, rescaled_exact, saddle_point, saddle_regime,
};

fn main() {
    println!("Saddle location y*_q(x) for the coefficient sum (x = 1/rho):");
    for q in [1.0, 2.0, 4.0] {
        let row: Vec<String> = [1.0, 1.25, 2.0, 5.0]
            .iter()
            .map(|&x| format!("y*({x}) = {:.6}", saddle_point(q, x).unwrap()))
            .collect();
        println!("  q={q}: {}", row.join(", "));
    }

    println!("\nAmplitude psi and decay rate phi of");
    println!("  P(2qv, 2v) / sqrt(P(2qv,2qv) P(2v,2v)) ~ psi * exp(-v phi):");
    for q in [1.0, 1.5, 2.0, 3.0] {
        for rho in [0.3, 0.8] {
            println!(
                "  q={q}, rho={rho}: psi = {:.6}, phi = {:.6}",
                psi_prefactor(q, rho).unwrap(),
                phi_rate(q, rho).unwrap()
            );
        }
    }
    println!("(q = 1 is the anchor: psi = 1, phi = 0, the ratio is exactly 1.)");

    println!("\nExact vs estimate along the ray q = 2:");
    println!("  {:>5} {:>6} {:>14} {:>14} {:>10}", "rho", "v", "exact", "estimate", "ratio");
    for rho in [0.5, 0.8] {
        for v in [25u64, 50, 100, 200, 400] {
            let exact = rescaled_exact(4 * v as usize, 2 * v as usize, rho).unwrap();
            let est = rescaled_estimate(2 * v, v, rho).unwrap();
            println!(
                "  {rho:>5} {v:>6} {exact:>14.6e} {est:>14.6e} {:>10.6}",
                exact / est
            );
        }
    }

    println!("\nRegime diagnostic (saddle vs Gaussian width): near rho = 1 the");
    println!("saddle collapses into the half-Gaussian boundary regime:");
    for rho in [0.5, 0.99, 0.999] {
        let (regime, ratio) = saddle_regime(2.0, rho, 100).unwrap();
        println!("  rho={rho}, v=100: {regime:?} (ratio {ratio:.2})");
    }
}
