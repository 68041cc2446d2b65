//! Duality between the hyperbolic form Ω_c(s) and closed cycles: the loop
//! integral ∮_c' Ω_c equals (in magnitude) the intersection number c'·c,
//! independently of s. On the Schottky torus the B-loop crosses the A-axis
//! exactly once and the A-loop not at all, so the integrals pin 1 and 0 at
//! machine precision. Each coset term of Ω is an exact differential off its
//! lift geodesic, so the pairing is exact at every truncation cap, not just
//! asymptotically.
//!
//! Run with `cargo run --release --example duality`.

use hypeisen::analysis::{deck_closure_cycle, duality_check, geodesic_loop_cycle};
use hypeisen::group::FuchsianGroup;
use hypeisen::series::Truncation;
use hypeisen::{Result, C};

fn main() -> Result<()> {
    let torus = FuchsianGroup::schottky_torus(4.0, 4.0)?;

    println!("∮ Ω_A along the B-loop (intersection number ±1, s-independent):");
    for &s in &[0.5, 1.0, 2.0] {
        let cycle = geodesic_loop_cycle(&torus, 1, 9)?;
        let row = duality_check(&torus, 0, &cycle, C::new(s, 0.0), &Truncation::fixed_shells(10), 16)?;
        println!(
            "   s = {s}: ∮Ω = {:+.12e} {:+.12e}i   crossings {:+}, | |∮Ω| − 1 | = {:.2e}",
            row.integral.re, row.integral.im, row.expected, row.deviation.abs()
        );
    }
    println!();

    println!("∮ Ω_A along the A-loop itself (intersection number 0):");
    let a_loop = geodesic_loop_cycle(&torus, 0, 9)?;
    let row = duality_check(&torus, 0, &a_loop, C::new(1.0, 0.0), &Truncation::fixed_shells(10), 16)?;
    println!("   s = 1: ∮Ω = {:+.2e} {:+.2e}i   |∮Ω| = {:.2e}",
        row.integral.re, row.integral.im, row.deviation.abs());
    println!();

    println!("truncation independence (only crossing lifts contribute, exactly):");
    let cycle = geodesic_loop_cycle(&torus, 1, 9)?;
    for cap in [2u32, 4, 8] {
        let row = duality_check(&torus, 0, &cycle, C::new(1.0, 0.0), &Truncation::fixed_shells(cap), 16)?;
        println!("   word cap {cap:>2}: | |∮Ω| − 1 | = {:.2e}", row.deviation.abs());
    }
    println!();

    // A deck-closure cycle (straight chord z₀ → γz₀) is homotopic to the
    // geodesic loop, so it must integrate to the same pairing.
    println!("same pairing along a deck-closure chord homotopic to the B-loop:");
    let chord = deck_closure_cycle(&torus, &[2], C::new(0.1, 1.3), 9)?;
    let row = duality_check(&torus, 0, &chord, C::new(1.0, 0.0), &Truncation::fixed_shells(10), 16)?;
    println!("   s = 1: |∮Ω| = {:.12}   deviation {:.2e}", row.integral.norm(),
        row.deviation.abs());
    Ok(())
}
