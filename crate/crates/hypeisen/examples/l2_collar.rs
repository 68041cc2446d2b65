//! Geometry estimates behind the convergence theory: the truncated L² mass
//! of Ω on the quotient cylinder against its closed form l·k(2s)/k(s)², the
//! collar half-width with its self-collar fixed point 2·arcsinh(1), and the
//! separation bound cosh d(axis, γ·axis) ≥ coth(l/2) for conjugate axes.
//!
//! Run with `cargo run --release --example l2_collar`.

use hypeisen::analysis::{collar_fixed_point, conjugate_axis_separation, l2_norm_estimate};
use hypeisen::group::FuchsianGroup;
use hypeisen::Result;

fn main() -> Result<()> {
    // --- Truncated L² mass of Ω(s) on the cylinder. ---
    let cyl = FuchsianGroup::cyclic_hyperbolic(1.0)?;
    for s in [1.0, 2.0] {
        let report = l2_norm_estimate(&cyl, s, &[2.0, 6.0, 14.0])?;
        println!("‖Ω({s})‖²_L² on the cylinder of length 1, truncated at funnel cuts:");
        for ((cut, mass), closed) in report.cuts.iter().zip(&report.masses)
            .zip(&report.closed_form_masses)
        {
            println!("   cut r = {cut:>4}: quadrature mass {mass:.10}   closed form {closed:.10}");
        }
        println!("   total closed form l·k(2s)/k(s)² = {:.10}", report.total_mass_closed_form);
        println!("   a-priori bound {:.6}, tiling multiplicity {:.1}",
            report.a_priori_bound, report.coverage_factor);
        println!();
    }
    println!("note: π/8 ≈ 0.3927 at s = 1 and 3/(2π) ≈ 0.4775 at s = 2 — the mass is");
    println!("not monotone in s; only the increments decay (cosh^(−2s) in the funnel).");
    println!();

    // --- Collar geometry. ---
    let (solved, closed) = collar_fixed_point()?;
    println!("self-collar scale: solve collar_halfwidth(l) = l/2");
    println!("   bisection: l* = {solved:.15}");
    println!("   closed form 2·arcsinh(1) = {closed:.15}   (dev {:.1e})", (solved - closed).abs());
    println!();

    // --- Conjugate-axis separation on the Schottky torus. ---
    let torus = FuchsianGroup::schottky_torus(4.0, 4.0)?;
    let words: Vec<Vec<i8>> = vec![vec![2], vec![-2], vec![2, 2], vec![1, 2], vec![-2, 1]];
    println!("separation of axis(A) from its conjugates γ·axis(A), A of length 4:");
    for row in conjugate_axis_separation(&torus, 0, &words)? {
        println!("   γ = {:?}: cosh d = {:>10.4}   (collar bound coth(l/2) = {:.4})",
            row.word, row.cosh_distance, row.bound);
    }
    println!("every conjugate stays outside the collar — the discreteness margin");
    println!("that makes the shell sums geometric off the cusp directions.");
    Ok(())
}
