//! Resolvent kernels for the weight-2 Laplacian: the free (elementary)
//! kernel `g_s` on H and its automorphization `G_s` over a Fuchsian group,
//! together with the boundary limits that tie `G_s` back to the Eisenstein
//! families.
//!
//! Conventions (all fixed by the closed-form limits below and locked by
//! [`kernel_convention_scan`]):
//!
//! ```text
//!   σ(z, w)  = |z - w̄|² / (4 Im z · Im w)   ( = cosh²(d(z,w)/2) ≥ 1 )
//!   g_s(z,w) = conj(z - w̄)/(z - w̄) · Γ(s+1)Γ(s-1)/(4π Γ(2s))
//!                · σ^{-s} · F(s+1, s-1; 2s; 1/σ)
//!   G_s(z,w) = Σ_{γ∈Γ} j_γ(w) g_s(z, γw),   j_γ(w) = (cw+d)/(cw̄+d)
//! ```
//!
//! `g_s` is an eigenfunction of the weight-2 Laplacian in z away from the
//! diagonal: `(Δ₂ + s(1-s)) g_s(·, w) = 0` with
//! `Δ₂ = y²(∂²_x + ∂²_y) - 2iy∂_x`. It inherits the weight-2 automorphy
//! `G_s(γz, w) = j_γ(z) G_s(z, w)` and `G_s(z, γw) = j_γ(w)^{-1} G_s(z, w)`.
//!
//! Boundary limits (verified numerically by the reports in this module):
//!
//! ```text
//!   cusp A of width λ, w = x' + iy', ρ'(w) = λ/y':
//!     lim_{y'→∞} ρ'^{1-s} G_s(z, w) = E_{A,1}(s, z) / (1 - 2s)
//!
//!   funnel boundary point b (not in the limit set), w = b + iε:
//!     lim_{ε→0} ε^{-s} G_s(z, w) = 4^s Γ(s+1)Γ(s-1)/(4πΓ(2s)) · E_b(z, s, 1)
//! ```
//!
//! The cusp limit requires the width-covariant scale ρ' = λ/y'; the raw
//! scale y'^{s-1} differs from it by λ^{s-1}, and the reports tabulate both.

use crate::error::{Error, Result};
use crate::group::{FuchsianGroup, WordFilter};
use crate::hypgeom::Boundary;
use crate::series::{
    cusp_accelerated_sum, infinity_cusp, parabolic_eisenstein, patterson_eisenstein,
    sum_vector_series, SeriesEvaluation, Truncation,
};
use crate::specfun::{complex_gamma, gauss_2f1, recip_gamma, C};
use serde::{Deserialize, Serialize};

/// Third parameter of the Gauss function in the kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThirdParamChoice {
    /// `F(s+1, s-1; 2s; 1/σ)` — the correct kernel.
    TwoS,
    /// `F(s+1, s-1; s+1; 1/σ)` — a plausible-looking wrong reading, kept so
    /// the convention scan can demonstrate it fails the eigen equation.
    SPlusOne,
}

/// Sign of the spectral parameter in the eigen equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EigenSign {
    /// `(Δ₂ + s(1-s)) g = 0` — the correct sign.
    Plus,
    /// `(Δ₂ - s(1-s)) g = 0`.
    Minus,
}

/// A kernel convention: both discrete choices together.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelConvention {
    pub third_param: ThirdParamChoice,
    pub eigen_sign: EigenSign,
}

impl KernelConvention {
    /// The convention every public evaluator uses, fixed by the eigen
    /// equation and the closed-form cusp limit.
    pub const FROZEN: KernelConvention =
        KernelConvention { third_param: ThirdParamChoice::TwoS, eigen_sign: EigenSign::Plus };
}

/// A group-kernel evaluation with its truncation record.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KernelValue {
    /// The summed kernel value.
    pub value: C,
    /// Truncation record (`eval.value == value`).
    pub eval: SeriesEvaluation,
    /// Per-shell magnitude sums.
    pub shell_mags: Vec<f64>,
}

/// `σ(z,w) = |z-w̄|²/(4yy') = cosh²(d(z,w)/2)`.
pub fn point_pair_sigma(z: C, w: C) -> f64 {
    let d = z - w.conj();
    d.norm_sqr() / (4.0 * z.im * w.im)
}

fn check_kernel_args(s: C, z: C, w: C) -> Result<()> {
    if !(z.im > 0.0) || !(w.im > 0.0) || !z.is_finite() || !w.is_finite() {
        return Err(Error::domain("resolvent kernel: both points must lie in H"));
    }
    if (s - 1.0).norm() < 1e-8 || s.norm() < 1e-8 {
        return Err(Error::domain("resolvent kernel has Γ-factor poles at s = 0 and s = 1"));
    }
    Ok(())
}

/// `Γ(s+1)Γ(s-1)/(4πΓ(2s))`.
fn kernel_prefactor(s: C) -> Result<C> {
    Ok(complex_gamma(s + 1.0)? * complex_gamma(s - 1.0)? * recip_gamma(2.0 * s)
        / C::new(4.0 * std::f64::consts::PI, 0.0))
}

/// Elementary (free-space) weight-2 resolvent kernel `g_s(z, w)` in the
/// frozen convention.
pub fn free_resolvent_w2(s: C, z: C, w: C) -> Result<C> {
    free_resolvent_w2_with(KernelConvention::FROZEN, s, z, w)
}

/// Elementary kernel under an explicit convention (the eigen-sign member is
/// not used by the evaluation itself, only by [`eigen_residual`]).
pub fn free_resolvent_w2_with(conv: KernelConvention, s: C, z: C, w: C) -> Result<C> {
    check_kernel_args(s, z, w)?;
    let sigma = point_pair_sigma(z, w);
    if sigma - 1.0 < 1e-14 {
        return Err(Error::domain("resolvent kernel is singular on the diagonal z = w"));
    }
    let pref = kernel_prefactor(s)?;
    let zeta = z - w.conj();
    let phase = zeta.conj() / zeta;
    let third = match conv.third_param {
        ThirdParamChoice::TwoS => 2.0 * s,
        ThirdParamChoice::SPlusOne => s + 1.0,
    };
    let f = gauss_2f1(s + 1.0, s - 1.0, third, 1.0 / sigma)?;
    Ok(phase * pref * C::new(sigma, 0.0).powc(-s) * f)
}

/// Relative residual of the eigen equation `(Δ₂ ± s(1-s)) g_s(·,w) = 0` at
/// `z`, using 5-point second-order stencils of step `h`. For the frozen
/// convention this is O(h²)·(fourth-derivative scale); for any other
/// convention it is O(1).
pub fn eigen_residual(conv: KernelConvention, s: C, z: C, w: C, h: f64) -> Result<f64> {
    if !(h > 0.0) || h >= z.im / 4.0 {
        return Err(Error::domain(format!("stencil step {h} unusable at height {}", z.im)));
    }
    let g = |p: C| free_resolvent_w2_with(conv, s, p, w);
    let f0 = g(z)?;
    let fpx = g(z + C::new(h, 0.0))?;
    let fmx = g(z - C::new(h, 0.0))?;
    let fpy = g(z + C::new(0.0, h))?;
    let fmy = g(z - C::new(0.0, h))?;
    let lap = (fpx + fmx + fpy + fmy - 4.0 * f0) / (h * h);
    let dx = (fpx - fmx) / (2.0 * h);
    let y = z.im;
    let delta2 = y * y * lap - C::new(0.0, 2.0 * y) * dx;
    let lambda = s * (1.0 - s);
    let resid = match conv.eigen_sign {
        EigenSign::Plus => delta2 + lambda * f0,
        EigenSign::Minus => delta2 - lambda * f0,
    };
    Ok(resid.norm() / f0.norm().max(f64::MIN_POSITIVE))
}

/// Eigen-equation residuals of all four conventions at one configuration,
/// frozen convention first. The frozen one lands at the stencil floor
/// (~h²·|g⁗|); every other combination is O(1).
pub fn kernel_convention_scan(
    s: C,
    z: C,
    w: C,
    h: f64,
) -> Result<Vec<(KernelConvention, f64)>> {
    let mut out = Vec::with_capacity(4);
    for third_param in [ThirdParamChoice::TwoS, ThirdParamChoice::SPlusOne] {
        for eigen_sign in [EigenSign::Plus, EigenSign::Minus] {
            let conv = KernelConvention { third_param, eigen_sign };
            let r = eigen_residual(conv, s, z, w, h)?;
            out.push((conv, r));
        }
    }
    Ok(out)
}

/// Automorphic weight-2 resolvent kernel
/// `G_s(z, w) = Σ_{γ∈Γ} j_γ(w) g_s(z, γw)`, by plain word-length shells.
///
/// Converges for `Re s > δ`; errors if `z` lies on the Γ-orbit of `w` (the
/// kernel's logarithmic diagonal singularity).
pub fn group_resolvent(
    group: &FuchsianGroup,
    s: C,
    z: C,
    w: C,
    trunc: &Truncation,
) -> Result<KernelValue> {
    check_kernel_args(s, z, w)?;
    let pref = kernel_prefactor(s)?;
    let mut collision = false;
    let v = sum_vector_series(
        group.generators(),
        WordFilter::default(),
        trunc,
        "group resolvent kernel",
        |g| {
            let u = g.apply(w);
            let sigma = point_pair_sigma(z, u);
            if sigma - 1.0 < 1e-14 {
                collision = true;
                return [C::new(0.0, 0.0)];
            }
            let zeta = z - u.conj();
            let phase = zeta.conj() / zeta;
            let f = gauss_2f1(s + 1.0, s - 1.0, 2.0 * s, 1.0 / sigma)
                .expect("2F1 argument is in (0,1)");
            [g.j_factor(w) * phase * pref * C::new(sigma, 0.0).powc(-s) * f]
        },
    )?;
    if collision {
        return Err(Error::domain("z lies on the Γ-orbit of w: G_s is singular there"));
    }
    Ok(KernelValue {
        value: v.values[0],
        eval: SeriesEvaluation {
            value: v.values[0],
            word_len: v.word_len,
            terms: v.terms,
            tail_estimate: v.tail_estimate,
        },
        shell_mags: v.shell_mags,
    })
}

/// `G_s(z, w)` with `w` near the ∞ cusp, summed in accelerated form: the
/// factorization `γ = γ_r T^m` turns the cusp-direction tail into inner
/// ℤ-sums over `γ_r(w + λm)` (translations have `j ≡ 1`, so
/// `j_γ(w) = j_{γ_r}(w + λm)`). Use this for the cusp-limit report, where
/// plain shells would need word lengths ~ Im w / λ.
pub fn group_resolvent_at_height(
    group: &FuchsianGroup,
    s: C,
    z: C,
    w: C,
    trunc: &Truncation,
) -> Result<KernelValue> {
    check_kernel_args(s, z, w)?;
    let cusp = infinity_cusp(group, "group_resolvent_at_height")?;
    let lambda = cusp.width;
    let pref = kernel_prefactor(s)?;
    let m0 = ((z.re - w.re) / lambda).round() as i64;
    let mut collision = false;
    let acc = cusp_accelerated_sum(
        group.generators(),
        cusp.generator_index,
        m0,
        trunc,
        "group_resolvent_at_height",
        |g, m| {
            let ww = w + C::new(lambda * m as f64, 0.0);
            let u = g.apply(ww);
            let sigma = point_pair_sigma(z, u);
            if sigma - 1.0 < 1e-14 {
                collision = true;
                return C::new(0.0, 0.0);
            }
            let zeta = z - u.conj();
            let phase = zeta.conj() / zeta;
            let f = gauss_2f1(s + 1.0, s - 1.0, 2.0 * s, 1.0 / sigma)
                .expect("2F1 argument is in (0,1)");
            g.j_factor(ww) * phase * pref * C::new(sigma, 0.0).powc(-s) * f
        },
    )?;
    if collision {
        return Err(Error::domain("z lies on the Γ-orbit of w: G_s is singular there"));
    }
    Ok(KernelValue {
        value: acc.value,
        eval: SeriesEvaluation {
            value: acc.value,
            word_len: acc.word_len,
            terms: acc.terms,
            tail_estimate: acc.tail_estimate,
        },
        shell_mags: acc.shell_mags,
    })
}

/// One height of the cusp-limit table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CuspLimitRow {
    /// `Im w` of the probe point.
    pub height: f64,
    /// `ρ'^{1-s} G_s(z, w)` with the width-covariant `ρ' = λ / Im w`.
    pub scaled: C,
    /// `(Im w)^{s-1} G_s(z, w)` — the raw scale, off the target by
    /// `λ^{s-1}`.
    pub raw_scaled: C,
    /// `|scaled - target|`.
    pub abs_err: f64,
    /// `|raw_scaled - target|`.
    pub raw_err: f64,
}

/// Cusp-limit diagnostic: `ρ'^{1-s} G_s(z, x' + iy') → E_{A,1}(s,z)/(1-2s)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CuspLimitReport {
    /// The limit value `E_{A,1}(s, z)/(1-2s)`.
    pub target: C,
    /// Cusp width λ.
    pub lambda: f64,
    /// One row per probe height, in the given order.
    pub rows: Vec<CuspLimitRow>,
}

/// Tabulate the cusp limit of `G_s` at the ∞ cusp over the given heights.
/// `x_probe` fixes `Re w` (the limit is uniform in it).
pub fn cusp_limit_report(
    group: &FuchsianGroup,
    s: C,
    z: C,
    x_probe: f64,
    heights: &[f64],
    trunc: &Truncation,
) -> Result<CuspLimitReport> {
    let cusp = infinity_cusp(group, "cusp_limit_report")?;
    let lambda = cusp.width;
    let cusp_index = group
        .cusps()
        .iter()
        .position(|c| matches!(c.location, Boundary::Infinity))
        .expect("infinity cusp exists");
    let e1 = parabolic_eisenstein(group, cusp_index, 1, s, z, trunc)?;
    let target = e1.form.auto_lift / (1.0 - 2.0 * s);
    let mut rows = Vec::with_capacity(heights.len());
    for &height in heights {
        if !(height > z.im) {
            return Err(Error::domain(format!(
                "probe height {height} must exceed Im z = {}",
                z.im
            )));
        }
        let w = C::new(x_probe, height);
        let kernel = group_resolvent_at_height(group, s, z, w, trunc)?;
        let rho = lambda / height;
        let scaled = C::new(rho, 0.0).powc(1.0 - s) * kernel.value;
        let raw_scaled = C::new(height, 0.0).powc(s - 1.0) * kernel.value;
        rows.push(CuspLimitRow {
            height,
            scaled,
            raw_scaled,
            abs_err: (scaled - target).norm(),
            raw_err: (raw_scaled - target).norm(),
        });
    }
    Ok(CuspLimitReport { target, lambda, rows })
}

/// One approach step of the funnel-limit table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FunnelLimitRow {
    /// Distance ε of the probe from the boundary.
    pub epsilon: f64,
    /// `ε^{-s} G_s(z, b + iε) / E_b(z, s, 1)`.
    pub ratio: C,
    /// `|ratio|`.
    pub abs_ratio: f64,
}

/// Funnel-limit diagnostic: as `ε → 0`,
/// `|ε^{-s} G_s(z, b+iε)| → 4^s |Γ(s+1)Γ(s-1)/(4πΓ(2s))| · |E_b(z, s, 1)|`.
/// The tabulated ratio divides out the boundary series, so `|ratio|` must
/// approach `|4^s Γ(s+1)Γ(s-1)/(4πΓ(2s))|` (at s = 2: `4/(3π)`).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FunnelLimitReport {
    /// `|4^s Γ(s+1)Γ(s-1)/(4πΓ(2s))|`.
    pub target_magnitude: f64,
    /// One row per ε, in the given order.
    pub rows: Vec<FunnelLimitRow>,
}

/// Tabulate the funnel boundary limit of `G_s` at the ordinary point `b`.
pub fn funnel_limit_report(
    group: &FuchsianGroup,
    s: C,
    z: C,
    b: f64,
    epsilons: &[f64],
    trunc: &Truncation,
) -> Result<FunnelLimitReport> {
    let eb = patterson_eisenstein(group, Boundary::Real(b), 1, s, z, trunc)?;
    if eb.form.dz_coeff.norm() < 1e-300 {
        return Err(Error::domain("boundary series vanishes at this configuration"));
    }
    let pref = kernel_prefactor(s)?;
    let target_magnitude = (C::new(4.0, 0.0).powc(s) * pref).norm();
    let mut rows = Vec::with_capacity(epsilons.len());
    for &epsilon in epsilons {
        if !(epsilon > 0.0) {
            return Err(Error::domain(format!("approach distance {epsilon} must be positive")));
        }
        let w = C::new(b, epsilon);
        let kernel = group_resolvent(group, s, z, w, trunc)?;
        let ratio = C::new(epsilon, 0.0).powc(-s) * kernel.value / eb.form.dz_coeff;
        rows.push(FunnelLimitRow { epsilon, ratio, abs_ratio: ratio.norm() });
    }
    Ok(FunnelLimitReport { target_magnitude, rows })
}
