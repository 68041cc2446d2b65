//! Patterson's boundary-point Eisenstein series E_b(z, s, k): evaluation at
//! ordinary boundary points (outside the limit set), its automorphy weight
//! in k, the small-s window on a thin cyclic group (δ = 0), and the honest
//! non-convergence error when b sits inside the limit set.
//!
//! Run with `cargo run --release --example patterson_series`.

use hypeisen::group::FuchsianGroup;
use hypeisen::hypgeom::Boundary;
use hypeisen::series::{patterson_eisenstein, Truncation};
use hypeisen::{Error, Result, C};

fn main() -> Result<()> {
    // --- Ordinary points of the Schottky torus. ---
    let torus = FuchsianGroup::schottky_torus(4.0, 4.0)?;
    let z = C::new(0.25, 1.0);
    let s = C::new(1.2, 0.0);
    let t = Truncation { max_len: 18, ..Default::default() };
    println!("E_b on schottky_torus(4,4) at z = 0.25+i, s = 1.2, weight k = 1:");
    for b in [0.3, 3.0, -8.0] {
        let e = patterson_eisenstein(&torus, Boundary::Real(b), 1, s, z, &t)?;
        println!(
            "   b = {b:>4}: value = {:+.10e} {:+.10e}i  ({} terms, tail {:.1e})",
            e.form.dz_coeff.re, e.form.dz_coeff.im, e.eval.terms, e.eval.tail_estimate
        );
    }
    println!();

    // --- Thin group: δ = 0, so any s > 0 converges. ---
    let cyl = FuchsianGroup::cyclic_hyperbolic(2.0)?;
    let e = patterson_eisenstein(&cyl, Boundary::Real(0.5), 0, C::new(0.7, 0.0), C::new(0.0, 1.0),
        &Truncation::default())?;
    println!("cyclic_hyperbolic(2), b = 0.5, s = 0.7 (δ = 0 allows small s):");
    println!("   value = {:+.10e} {:+.10e}i, {} terms", e.form.dz_coeff.re, e.form.dz_coeff.im,
        e.eval.terms);
    println!();

    // --- b inside the limit set: the series must refuse, not lie. ---
    let pp = FuchsianGroup::parabolic_pair(3.0)?;
    println!("E_b at the cusp b = ∞ of parabolic_pair(3), s = 0.8 (inside the limit set):");
    match patterson_eisenstein(&pp, Boundary::Infinity, 0, C::new(0.8, 0.0), C::new(0.0, 1.0),
        &Truncation::default())
    {
        Ok(_) => println!("   unexpected: series converged"),
        Err(Error::NonConvergence { context, tail_estimate }) => {
            println!("   refused as expected: non-convergence in {context}, tail ≈ {tail_estimate:.2e}");
        }
        Err(e) => println!("   refused: {e}"),
    }
    Ok(())
}
