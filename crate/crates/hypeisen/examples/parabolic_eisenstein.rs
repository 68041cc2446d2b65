//! Classical and weight-q parabolic Eisenstein series E_{A,q}(s, z) at the
//! cusps of a group: the identity-coset closed form on the elementary cusp
//! group, evaluation at both cusps of parabolic_pair, automorphy of the
//! lift through the j-factor, and the q = 0 / q = 1 lift relation.
//!
//! Run with `cargo run --release --example parabolic_eisenstein`.

use hypeisen::group::FuchsianGroup;
use hypeisen::series::{parabolic_eisenstein, Truncation};
use hypeisen::{Result, C};

fn main() -> Result<()> {
    // --- Elementary cusp group: E reduces to the identity coset. ---
    let cp = FuchsianGroup::cyclic_parabolic()?;
    let z = C::new(0.4, 0.8);
    let s = C::new(2.0, 0.0);
    let e0 = parabolic_eisenstein(&cp, 0, 0, s, z, &Truncation::default())?;
    let e1 = parabolic_eisenstein(&cp, 0, 1, s, z, &Truncation::default())?;
    println!("cyclic_parabolic at z = 0.4+0.8i, s = 2 (single coset):");
    println!("   E_∞,0 dz⁰-coeff = {:.12}  (closed form y^s = {:.12})",
        e0.form.dz_coeff.re, z.im.powi(2));
    println!("   E_∞,1 lift      = {:.12}  (same y^s through the q = 1 lift)",
        e1.form.auto_lift.re);
    println!();

    // --- Two cusps of parabolic_pair(3). ---
    let pp = FuchsianGroup::parabolic_pair(3.0)?;
    let z = C::new(0.3, 1.2);
    let s = C::new(3.0, 0.0);
    let t = Truncation { max_len: 18, ..Default::default() };
    println!("parabolic_pair(3) at z = 0.3+1.2i, s = 3:");
    for (idx, cusp) in pp.cusps().iter().enumerate() {
        for q in [0u32, 1] {
            let e = parabolic_eisenstein(&pp, idx, q, s, z, &t)?;
            println!(
                "   cusp {:?} (width {}), q = {q}: lift = {:+.10e} {:+.10e}i  ({} terms, tail {:.1e})",
                cusp.location, cusp.width, e.form.auto_lift.re, e.form.auto_lift.im,
                e.eval.terms, e.eval.tail_estimate
            );
        }
    }
    println!();

    // --- Automorphy: E_{A,q}(γz) = j_γ(z)^q · E_{A,q}(z) for the lift. ---
    let q = 1u32;
    let e_z = parabolic_eisenstein(&pp, 0, q, s, z, &t)?;
    println!("automorphy of the q = 1 lift under the generators:");
    for (i, gamma) in pp.generators().iter().enumerate() {
        let e_gz = parabolic_eisenstein(&pp, 0, q, s, gamma.apply(z), &t)?;
        let want = gamma.j_factor(z).powi(q as i32) * e_z.form.auto_lift;
        let dev = (e_gz.form.auto_lift - want).norm() / want.norm();
        println!("   generator {i}: |E(γz) − j_γ(z)^q·E(z)| / |E(z)| = {dev:.2e}");
    }
    Ok(())
}
