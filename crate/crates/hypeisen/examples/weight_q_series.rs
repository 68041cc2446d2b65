//! The weight-q families A_{l,q}(s, z) and their normalized versions
//! Ξ_{l,q} = A_{l,q} / b_q(s): single-term closed form on the cyclic group,
//! automorphy of the dz^q coefficient under the group, and the b_q(s)
//! normalizing constants with their recurrence.
//!
//! Run with `cargo run --release --example weight_q_series`.

use hypeisen::group::FuchsianGroup;
use hypeisen::series::{weight_q_series, Truncation};
use hypeisen::specfun::{b_factor, b_factor_quadrature, k_factor};
use hypeisen::{Result, C};

fn main() -> Result<()> {
    // --- b_q(s): closed form vs direct quadrature, plus the recurrence. ---
    println!("normalizers b_q(s) = π·2^(2−s)·Γ(s−1)/(Γ((s+q)/2)Γ((s−q)/2))");
    for q in 0..=3 {
        let s = C::new(3.5, 0.0);
        let closed = b_factor(q, s)?;
        let quad = b_factor_quadrature(q, s)?;
        println!(
            "   q = {q}: b_q(3.5) = {:.12}, quadrature {:.12}, rel dev {:.1e}",
            closed.re,
            quad.re,
            (closed - quad).norm() / closed.norm()
        );
    }
    let s = C::new(2.25, 0.0);
    let lhs = b_factor(1, s + 2.0)?;
    let rhs = b_factor(1, s)? * (s * (s - 1.0)) / (s * s - 1.0);
    println!("   recurrence b_q(s+2) = s(s−1)/(s²−q²)·b_q(s) at q=1, s=2.25: dev {:.1e}",
        (lhs - rhs).norm() / lhs.norm());
    println!("   b_1(s) = k(s−1) at s = 2.25: dev {:.1e}",
        (b_factor(1, s)? - k_factor(s - 1.0)?).norm());
    println!();

    // --- Single-term closed form on the cylinder. ---
    let cyl = FuchsianGroup::cyclic_hyperbolic(0.7)?;
    let z = C::new(0.3, 1.1);
    let (q, s) = (2u32, C::new(3.0, 0.0));
    let a = weight_q_series(&cyl, 0, q, s, z, &Truncation::default(), false)?;
    let sin_theta = z.im / z.norm();
    let want = (1.0 / z).powi(q as i32) * C::new(sin_theta, 0.0).powc(s - q as f64);
    println!("A_(l,2)(3, z) on cyclic_hyperbolic(0.7) at z = 0.3+1.1i (single coset):");
    println!("   series: {:+.12e} {:+.12e}i", a.form.dz_coeff.re, a.form.dz_coeff.im);
    println!("   closed: {:+.12e} {:+.12e}i  (dev {:.1e})", want.re, want.im,
        (a.form.dz_coeff - want).norm());
    println!();

    // --- Automorphy on the Schottky torus: A(γz)·γ'(z)^q = A(z). ---
    let torus = FuchsianGroup::schottky_torus(4.0, 4.0)?;
    let z = C::new(0.2, 0.9);
    let s = C::new(4.0, 0.0);
    let q = 2u32;
    let t = Truncation { max_len: 18, ..Default::default() };
    let a_z = weight_q_series(&torus, 0, q, s, z, &t, false)?;
    println!("automorphy of A_(c,2)(4, ·) on schottky_torus(4,4):");
    for (i, gamma) in torus.generators().iter().enumerate() {
        let a_gz = weight_q_series(&torus, 0, q, s, gamma.apply(z), &t, false)?;
        let dev = (a_gz.form.dz_coeff * gamma.deriv(z).powi(q as i32) - a_z.form.dz_coeff).norm()
            / a_z.form.dz_coeff.norm();
        println!("   generator {i}: |A(γz)·γ'(z)^q − A(z)| / |A(z)| = {dev:.2e}");
    }
    println!();

    // --- Normalized family. ---
    let xi = weight_q_series(&torus, 0, q, s, z, &t, true)?;
    let b = b_factor(q as i32, s)?;
    println!("Ξ_(c,2) = A_(c,2)/b_2(s): |Ξ·b − A| = {:.2e}",
        (xi.form.dz_coeff * b - a_z.form.dz_coeff).norm());
    Ok(())
}
