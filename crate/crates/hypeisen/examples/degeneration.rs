//! Degeneration of the weight-q hyperbolic family into the parabolic one:
//! as the geodesic length l → 0, the rescaled pullback (1/l^s)·ã_{l,q}
//! through the collar chart w ↦ e^(l·w) converges to the cusp series
//! Ẽ_{∞,q} of the limit group, uniformly on compacts, at rate O(l²).
//!
//! Run with `cargo run --release --example degeneration`.

use hypeisen::analysis::{degeneration_diagnostic, GridSpec};
use hypeisen::group::FuchsianGroup;
use hypeisen::{Result, C};

fn main() -> Result<()> {
    let limit = FuchsianGroup::cyclic_parabolic()?;
    let grid = GridSpec { x0: 0.0, y0: 0.4, h: 0.1, nx: 11, ny: 7 };
    let l_grid = [0.4, 0.2, 0.1, 0.05];

    for &(q, s) in &[(1u32, 2.0f64), (1, 3.0), (2, 3.0)] {
        let report = degeneration_diagnostic(q, C::new(s, 0.0), &l_grid, &limit, grid)?;
        println!("q = {q}, s = {s}: sup over the grid of |(1/l^s)·ã − Ẽ_∞,q|");
        for row in &report.rows {
            println!(
                "   l = {:>4}: series sup error {:.3e}   closed-form sup error {:.3e}",
                row.l, row.sup_error, row.closed_form_sup_error
            );
        }
        println!("   strictly decreasing along l: {}", report.monotone);
        println!("   prefactor identity |Γ(1+s/2)/(Γ(1/2)Γ(1/2+s/2)) − 1/k(s)| = {:.1e}",
            report.prefactor_deviation);
        println!("   Ω ↔ A_(l,1) normalization spot-check deviation: {:.1e}",
            report.omega_alpha_deviation);
        println!();
    }
    println!("ratio between successive sup errors ≈ 4 = (l/2 halving)² — the");
    println!("O(l²) collar-chart rate, visible already at l = 0.4.");
    Ok(())
}
