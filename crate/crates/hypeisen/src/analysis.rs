//! Verification harness on top of the series and kernel evaluators:
//! finite-difference operators on automorphic lifts, functional-equation
//! residuals, numerical cycle integration, intersection numbers, duality
//! checks, L² mass estimates, and degeneration diagnostics.
//!
//! All differential identities are checked on automorphic lifts
//! `f̃ = y^q · f` (weight-2q functions), where the weighted Laplacian is
//!
//! ```text
//!   Δ_{2q} = y²(∂²/∂x² + ∂²/∂y²) − 2iqy ∂/∂x,
//! ```
//!
//! discretized with centered second-order stencils. The Maass operators
//!
//! ```text
//!   K_q = (z − z̄)∂_z + q      (raising, weight q → q+1)
//!   L_q = (z̄ − z)∂_z̄ − q      (lowering, weight q → q−1)
//! ```
//!
//! compose to `−L_{q+1}K_q = −Δ_{2q} + q(q+1)`.
//!
//! The functional equations verified by [`functional_equation_residual`]:
//!
//! ```text
//!   −Δ₂ Ω̃(s)  + s(s+1) Ω̃(s)  = s(s+1) Ω̃(s+2)
//!   −Δ₂ η̃(s)                 = s(1−s) [η̃(s) − η̃(s+2)]
//!    Δ_{2q} Ã(s) + s(1−s) Ã(s) = (s+q)(q−s) Ã(s+2)
//! ```
//!
//! each of which holds term by term over the group, so evaluating both
//! sides at a matched fixed truncation leaves a pure O(h²) stencil error.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FuchsianGroup, Preset, WordFilter};
use crate::hypgeom::{collar_halfwidth, Boundary, Geodesic, Matrix2, PointH};
use crate::series::{
    evaluate_family, hyperbolic_eisenstein, parabolic_eisenstein, weight_q_series, Family,
    Truncation,
};
use crate::specfun::{complex_gamma, k_factor, tanh_sinh, C};

// ---------------------------------------------------------------------------
// Grids and finite-difference operators
// ---------------------------------------------------------------------------

/// A uniform rectangular grid in the upper half-plane. Node `(ix, iy)` sits
/// at `x0 + ix·h + i(y0 + iy·h)`; values are stored row-major (`iy·nx + ix`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x0: f64,
    pub y0: f64,
    pub h: f64,
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    /// Grid of `nx × ny` nodes centered at `center`.
    pub fn centered(center: C, h: f64, nx: usize, ny: usize) -> Self {
        GridSpec {
            x0: center.re - h * (nx - 1) as f64 / 2.0,
            y0: center.im - h * (ny - 1) as f64 / 2.0,
            h,
            nx,
            ny,
        }
    }

    pub fn node(&self, ix: usize, iy: usize) -> C {
        C::new(self.x0 + ix as f64 * self.h, self.y0 + iy as f64 * self.h)
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Reject grids that are degenerate or touch the boundary `y ≤ 0`.
    pub fn validate(&self) -> Result<()> {
        if !(self.h > 0.0 && self.h.is_finite()) {
            return Err(Error::domain("grid spacing must be positive and finite"));
        }
        if self.nx == 0 || self.ny == 0 {
            return Err(Error::domain("grid must have at least one node per axis"));
        }
        if !(self.y0 > 0.0) {
            return Err(Error::domain(format!(
                "grid bottom row must satisfy y > 0, got y0 = {}",
                self.y0
            )));
        }
        if !self.x0.is_finite() || !self.y0.is_finite() {
            return Err(Error::domain("grid origin must be finite"));
        }
        Ok(())
    }

    /// The spec of the interior obtained by stripping one boundary ring.
    fn interior(&self) -> Result<GridSpec> {
        if self.nx < 3 || self.ny < 3 {
            return Err(Error::domain(
                "grid too small: the 5-point stencil needs at least 3 nodes per axis",
            ));
        }
        Ok(GridSpec {
            x0: self.x0 + self.h,
            y0: self.y0 + self.h,
            h: self.h,
            nx: self.nx - 2,
            ny: self.ny - 2,
        })
    }
}

/// Samples of an automorphic lift (a weight-2q function) on a grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridField {
    pub spec: GridSpec,
    /// Differential weight q (the function transforms with `j_γ^q`).
    pub weight: i32,
    /// Row-major node values.
    pub values: Vec<C>,
}

impl GridField {
    /// Evaluate `f` at every node, in parallel, with a deterministic
    /// (index-ordered) layout independent of the thread count.
    pub fn evaluate<F>(spec: GridSpec, weight: i32, f: F) -> Result<GridField>
    where
        F: Fn(C) -> Result<C> + Sync,
    {
        spec.validate()?;
        let nx = spec.nx;
        let values = (0..spec.len())
            .into_par_iter()
            .map(|k| f(spec.node(k % nx, k / nx)))
            .collect::<Result<Vec<C>>>()?;
        Ok(GridField {
            spec,
            weight,
            values,
        })
    }

    pub fn value(&self, ix: usize, iy: usize) -> C {
        self.values[iy * self.spec.nx + ix]
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// Apply the weighted Laplacian `Δ_{2q} = y²(∂xx + ∂yy) − 2iqy ∂x` with
/// centered second-order stencils. The output lives on the interior grid
/// (one boundary ring removed) and keeps the weight.
pub fn apply_weighted_laplacian(field: &GridField) -> Result<GridField> {
    let spec = field.spec;
    let out_spec = spec.interior()?;
    let h = spec.h;
    let q = field.weight as f64;
    let mut values = Vec::with_capacity(out_spec.len());
    for iy in 1..spec.ny - 1 {
        let y = spec.y0 + iy as f64 * h;
        for ix in 1..spec.nx - 1 {
            let p = field.value(ix, iy);
            let e = field.value(ix + 1, iy);
            let w = field.value(ix - 1, iy);
            let n = field.value(ix, iy + 1);
            let s = field.value(ix, iy - 1);
            let lap = (e + w + n + s - 4.0 * p) / (h * h);
            let fx = (e - w) / (2.0 * h);
            values.push(y * y * lap - C::new(0.0, 2.0 * q * y) * fx);
        }
    }
    Ok(GridField {
        spec: out_spec,
        weight: field.weight,
        values,
    })
}

/// Direction for [`apply_maass`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MaassDirection {
    /// `K_q = (z − z̄)∂_z + q`, weight `q → q+1`.
    Raise,
    /// `L_q = (z̄ − z)∂_z̄ − q`, weight `q → q−1`.
    Lower,
}

/// Apply a Maass raising/lowering operator with centered first-order
/// stencils; the output weight is `q ± 1` on the interior grid.
pub fn apply_maass(field: &GridField, direction: MaassDirection) -> Result<GridField> {
    let spec = field.spec;
    let out_spec = spec.interior()?;
    let h = spec.h;
    let q = field.weight as f64;
    let mut values = Vec::with_capacity(out_spec.len());
    for iy in 1..spec.ny - 1 {
        let y = spec.y0 + iy as f64 * h;
        for ix in 1..spec.nx - 1 {
            let p = field.value(ix, iy);
            let fx = (field.value(ix + 1, iy) - field.value(ix - 1, iy)) / (2.0 * h);
            let fy = (field.value(ix, iy + 1) - field.value(ix, iy - 1)) / (2.0 * h);
            // K_q = 2iy ∂_z + q = iy ∂x + y ∂y + q;
            // L_q = −2iy ∂_z̄ − q = −iy ∂x + y ∂y − q.
            let v = match direction {
                MaassDirection::Raise => C::new(0.0, y) * fx + y * fy + q * p,
                MaassDirection::Lower => -C::new(0.0, y) * fx + y * fy - q * p,
            };
            values.push(v);
        }
    }
    let weight = match direction {
        MaassDirection::Raise => field.weight + 1,
        MaassDirection::Lower => field.weight - 1,
    };
    Ok(GridField {
        spec: out_spec,
        weight,
        values,
    })
}

// ---------------------------------------------------------------------------
// Functional-equation residuals
// ---------------------------------------------------------------------------

/// Family selector for [`functional_equation_residual`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "fe_family", rename_all = "snake_case")]
pub enum FeFamily {
    /// `−Δ₂ Ω̃(s) + s(s+1) Ω̃(s) = s(s+1) Ω̃(s+2)`.
    Omega { c_gen: usize },
    /// `−Δ₂ η̃(s) = s(1−s)[η̃(s) − η̃(s+2)]`.
    EtaHat,
    /// `Δ_{2q} Ã(s) + s(1−s) Ã(s) = (s+q)(q−s) Ã(s+2)`.
    WeightA { c_gen: usize, q: u32 },
}

impl FeFamily {
    fn family(&self) -> Family {
        match *self {
            FeFamily::Omega { c_gen } => Family::HyperbolicOmega { c_gen },
            FeFamily::EtaHat => Family::EtaHat,
            FeFamily::WeightA { c_gen, q } => Family::WeightA { c_gen, q },
        }
    }

    fn weight(&self) -> i32 {
        match *self {
            FeFamily::Omega { .. } | FeFamily::EtaHat => 1,
            FeFamily::WeightA { q, .. } => q as i32,
        }
    }
}

/// One measured functional-equation residual.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FeResidual {
    pub family: FeFamily,
    pub s: C,
    pub h: f64,
    pub grid: GridSpec,
    /// Word-length cap of the matched fixed truncation used on both sides.
    pub shells: u32,
    /// `max over interior nodes of |LHS − RHS| / (|RHS| + 1e−12)`.
    pub residual: f64,
    /// Sup of the lift over the grid, for context.
    pub lift_scale: f64,
}

/// Measure the residual of a family's differential functional equation on
/// a grid, evaluating the lift at `s` and `s+2` with the *same* fixed
/// word-length truncation so that the identity holds term by term and only
/// the stencil error remains.
pub fn functional_equation_residual(
    group: &FuchsianGroup,
    family: FeFamily,
    s: C,
    grid: GridSpec,
    shells: u32,
) -> Result<FeResidual> {
    let trunc = Truncation::fixed_shells(shells);
    let fam = family.family();
    let weight = family.weight();
    let field_s = GridField::evaluate(grid, weight, |z| {
        evaluate_family(group, fam, s, z, &trunc).map(|fs| fs.form.auto_lift)
    })?;
    let field_s2 = GridField::evaluate(grid, weight, |z| {
        evaluate_family(group, fam, s + 2.0, z, &trunc).map(|fs| fs.form.auto_lift)
    })?;
    let lap = apply_weighted_laplacian(&field_s)?;
    let q = C::new(weight as f64, 0.0);

    let mut residual: f64 = 0.0;
    for iy in 1..grid.ny - 1 {
        for ix in 1..grid.nx - 1 {
            let f = field_s.value(ix, iy);
            let f2 = field_s2.value(ix, iy);
            let d = lap.value(ix - 1, iy - 1);
            let (lhs, rhs) = match family {
                FeFamily::Omega { .. } => (-d + s * (s + 1.0) * f, s * (s + 1.0) * f2),
                FeFamily::EtaHat => (-d, s * (1.0 - s) * (f - f2)),
                FeFamily::WeightA { .. } => ((d + s * (1.0 - s) * f), (s + q) * (q - s) * f2),
            };
            let r = (lhs - rhs).norm() / (rhs.norm() + 1e-12);
            residual = residual.max(r);
        }
    }
    Ok(FeResidual {
        family,
        s,
        h: grid.h,
        grid,
        shells,
        residual,
        lift_scale: field_s.sup_norm(),
    })
}

/// Run [`functional_equation_residual`] on grids of the same shape centered
/// at `center` for each spacing in `h_list` (the convergence-order scan).
pub fn fe_order_scan(
    group: &FuchsianGroup,
    family: FeFamily,
    s: C,
    center: C,
    n: usize,
    shells: u32,
    h_list: &[f64],
) -> Result<Vec<FeResidual>> {
    h_list
        .iter()
        .map(|&h| {
            functional_equation_residual(group, family, s, GridSpec::centered(center, h, n, n), shells)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Gauss–Legendre quadrature
// ---------------------------------------------------------------------------

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[−1, 1]`,
/// computed by Newton iteration on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "quadrature order must be at least 1");
    let mut xs = vec![0.0; n];
    let mut ws = vec![0.0; n];
    let nf = n as f64;
    for k in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dpn = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=n {
                let jf = j as f64;
                let pj = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                p0 = p1;
                p1 = pj;
            }
            dpn = nf * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dpn;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        xs[k] = -x;
        xs[n - 1 - k] = x;
        let w = 2.0 / ((1.0 - x * x) * dpn * dpn);
        ws[k] = w;
        ws[n - 1 - k] = w;
    }
    (xs, ws)
}

// ---------------------------------------------------------------------------
// Cycles and form integration
// ---------------------------------------------------------------------------

/// How a closed cycle on the quotient is realized in the half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CycleKind {
    /// Samples run along the axis of the closing element.
    GeodesicLoop,
    /// Samples run along a straight chord from a base point to its image.
    DeckClosure,
}

/// A closed cycle, lifted: a sampled path from `z₀` to `closer·z₀`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Cycle {
    pub kind: CycleKind,
    pub base_point: PointH,
    /// Deck transformation carrying the first sample to the last.
    pub closer: Matrix2,
    /// Ordered samples along the lift path; consecutive samples are joined
    /// by straight segments during integration.
    pub samples: Vec<C>,
}

impl Cycle {
    /// Check the closure invariant `closer(first) = last` (within 1e−8) and
    /// that all samples lie in the upper half-plane.
    pub fn validate(&self) -> Result<()> {
        if self.samples.len() < 2 {
            return Err(Error::domain("a cycle needs at least two samples"));
        }
        for &z in &self.samples {
            if !(z.im > 0.0) || !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::domain("cycle samples must lie in the upper half-plane"));
            }
        }
        let first = self.samples[0];
        let last = *self.samples.last().expect("non-empty");
        let closed = self.closer.apply(first);
        if (closed - last).norm() > 1e-8 * (1.0 + last.norm()) {
            return Err(Error::domain(
                "cycle does not close: closer(first sample) != last sample",
            ));
        }
        Ok(())
    }

    /// The same cycle with reversed orientation.
    pub fn reversed(&self) -> Cycle {
        let mut samples = self.samples.clone();
        samples.reverse();
        Cycle {
            kind: self.kind,
            base_point: PointH::from_c(samples[0]).expect("samples validated in H"),
            closer: self.closer.inv(),
            samples,
        }
    }
}

// Fixed arc-length offset of loop base points from the standardized axis
// apex: keeps samples away from symmetric crossing points (such as the point
// where two preset axes meet), so side-of tests stay transverse.
const LOOP_BASE_OFFSET: f64 = 0.37;

/// The closed loop around generator `gen`'s axis: samples run along the
/// axis from a base point `p₀` to `g·p₀` (one full period of the geodesic).
pub fn geodesic_loop_cycle(
    group: &FuchsianGroup,
    gen: usize,
    n_samples: usize,
) -> Result<Cycle> {
    let gens = group.generators();
    let g = *gens
        .get(gen)
        .ok_or_else(|| Error::domain(format!("generator index {gen} out of range")))?;
    if n_samples < 2 {
        return Err(Error::domain("a loop needs at least two samples"));
    }
    let ell = g.translation_length()?;
    let axis = Geodesic::axis_of(&g)?;
    let mut samples = (0..n_samples)
        .map(|k| axis.point_at(LOOP_BASE_OFFSET + ell * k as f64 / (n_samples - 1) as f64))
        .collect::<Result<Vec<C>>>()?;
    let first = samples[0];
    *samples.last_mut().expect("non-empty") = g.apply(first);
    Ok(Cycle {
        kind: CycleKind::GeodesicLoop,
        base_point: PointH::from_c(first)?,
        closer: g,
        samples,
    })
}

/// A cycle realized as the straight chord from `base` to `γ·base`, where γ
/// is the (nontrivial) reduced word `word`.
pub fn deck_closure_cycle(
    group: &FuchsianGroup,
    word: &[i8],
    base: C,
    n_samples: usize,
) -> Result<Cycle> {
    if n_samples < 2 {
        return Err(Error::domain("a cycle needs at least two samples"));
    }
    let gamma = group.word_matrix(word)?;
    if gamma.is_identity(1e-12) {
        return Err(Error::domain("deck closure needs a nontrivial word"));
    }
    if !(base.im > 0.0) {
        return Err(Error::domain("base point must lie in the upper half-plane"));
    }
    let target = gamma.apply(base);
    let samples: Vec<C> = (0..n_samples)
        .map(|k| {
            let t = k as f64 / (n_samples - 1) as f64;
            base + (target - base) * t
        })
        .collect();
    Ok(Cycle {
        kind: CycleKind::DeckClosure,
        base_point: PointH::from_c(base)?,
        closer: gamma,
        samples,
    })
}

/// Integrate the 1-form `f dz + g dz̄` along a cycle with composite
/// Gauss–Legendre quadrature (`n_quad` nodes per straight segment between
/// consecutive samples). The evaluator returns `(f, g)` at a point and runs
/// in parallel over quadrature nodes with a deterministic summation order.
pub fn integrate_form_along_cycle<F>(evaluator: F, cycle: &Cycle, n_quad: usize) -> Result<C>
where
    F: Fn(C) -> Result<(C, C)> + Sync,
{
    cycle.validate()?;
    let (xs, ws) = gauss_legendre(n_quad.max(2));
    // (node, weight·dz/dt) for every quadrature node, in path order.
    let mut pts: Vec<(C, C)> = Vec::with_capacity(xs.len() * (cycle.samples.len() - 1));
    for seg in cycle.samples.windows(2) {
        let mid = 0.5 * (seg[0] + seg[1]);
        let half = 0.5 * (seg[1] - seg[0]);
        for (&x, &w) in xs.iter().zip(&ws) {
            pts.push((mid + half * x, half * w));
        }
    }
    let vals = pts
        .par_iter()
        .map(|&(z, _)| evaluator(z))
        .collect::<Result<Vec<(C, C)>>>()?;
    let mut total = C::new(0.0, 0.0);
    for ((f, g), &(_, wdz)) in vals.into_iter().zip(&pts) {
        total += f * wdz + g * wdz.conj();
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// Intersection numbers
// ---------------------------------------------------------------------------

fn boundary_key(b: Boundary) -> (u8, i64) {
    match b {
        Boundary::Infinity => (1, 0),
        Boundary::Real(v) => (0, (v * 1e9).round() as i64),
    }
}

fn unordered_pair_key(p: Boundary, q: Boundary) -> ((u8, i64), (u8, i64)) {
    let (kp, kq) = (boundary_key(p), boundary_key(q));
    if kp <= kq {
        (kp, kq)
    } else {
        (kq, kp)
    }
}

/// Signed count of transverse crossings of cycle `b`'s sampled path with
/// the Γ-lifts (up to word length `max_len`) of the axis of `a.closer`.
/// A crossing from the right side of an oriented lift to its left side
/// counts +1.
///
/// When `a.closer` is a generator, the lifts are enumerated over exact
/// coset representatives (reduced words not ending in that generator), so
/// each lift geodesic appears exactly once by freeness — never through a
/// rounded-endpoint comparison, which floating-point drift in words like
/// `γ g^m` (same coset, same geodesic) would defeat.
fn signed_crossings(
    group: &FuchsianGroup,
    a: &Cycle,
    b: &Cycle,
    max_len: u32,
) -> Result<i64> {
    a.validate()?;
    b.validate()?;
    let axis = Geodesic::axis_of(&a.closer)?;
    let stab_index = group
        .generators()
        .iter()
        .position(|g| {
            (g.a - a.closer.a).abs() < 1e-12
                && (g.b - a.closer.b).abs() < 1e-12
                && (g.c - a.closer.c).abs() < 1e-12
                && (g.d - a.closer.d).abs() < 1e-12
        });
    let filter = WordFilter { last_excluded: stab_index, ..Default::default() };
    // A geodesic loop running along its own axis never crosses it
    // transversally (same projected curve); skip that lift entirely.
    let own_axis_key = if b.kind == CycleKind::GeodesicLoop {
        Geodesic::axis_of(&b.closer)
            .ok()
            .map(|ax| unordered_pair_key(ax.p, ax.q))
    } else {
        None
    };

    let mut seen: HashSet<((u8, i64), (u8, i64))> = HashSet::new();
    let mut lifts: Vec<Geodesic> = Vec::new();
    for n in 0..=max_len {
        group.for_each_word_of_len(n, filter, &mut |m: &Matrix2, _w: &[i8]| {
            let p = m.apply_boundary(axis.p);
            let q = m.apply_boundary(axis.q);
            let key = unordered_pair_key(p, q);
            if Some(key) == own_axis_key || !seen.insert(key) {
                return;
            }
            if let Ok(geo) = Geodesic::new(p, q) {
                lifts.push(geo);
            }
        });
    }

    let mut count = 0i64;
    for lift in &lifts {
        let std_map = lift.to_standard()?;
        let mut prev: Option<i32> = None;
        for &z in &b.samples {
            let w = std_map.apply(z);
            let side = if w.re > 1e-9 {
                1
            } else if w.re < -1e-9 {
                -1
            } else {
                return Err(Error::domain(
                    "cycle sample lies on a lifted axis: non-transverse configuration",
                ));
            };
            if let Some(p) = prev {
                if p != side {
                    // +1 on the standardized axis means the right side.
                    count += if side == -1 { 1 } else { -1 };
                }
            }
            prev = Some(side);
        }
    }
    Ok(count)
}

/// Signed intersection number of two cycles, computed as the net transverse
/// crossing count of `b`'s path with the lifted axes of `a`, and re-checked
/// at a deeper tiling (`max_len + 2`) for stability.
pub fn intersection_number(
    group: &FuchsianGroup,
    a: &Cycle,
    b: &Cycle,
    max_len: u32,
) -> Result<i64> {
    let shallow = signed_crossings(group, a, b, max_len)?;
    let deep = signed_crossings(group, a, b, max_len + 2)?;
    if shallow != deep {
        return Err(Error::domain(format!(
            "intersection count unstable under deeper tiling: {shallow} at length {max_len}, \
             {deep} at length {}",
            max_len + 2
        )));
    }
    Ok(shallow)
}

// ---------------------------------------------------------------------------
// Duality
// ---------------------------------------------------------------------------

/// One duality measurement: `∫_cycle Ω_c(s)` against the intersection
/// number of the cycle with `c`'s geodesic loop.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DualityRow {
    pub s: C,
    pub integral: C,
    pub expected: i64,
    /// `|integral| − |expected|` (magnitudes: the pairing is defined only
    /// up to the orientation conventions of the two cycles).
    pub deviation: f64,
}

/// Integrate `Ω_{c_gen}(s, ·)` along `cycle` and compare the magnitude with
/// the intersection number of the cycle and the closed geodesic of `c_gen`.
pub fn duality_check(
    group: &FuchsianGroup,
    c_gen: usize,
    cycle: &Cycle,
    s: C,
    trunc: &Truncation,
    n_quad: usize,
) -> Result<DualityRow> {
    let c_loop = geodesic_loop_cycle(group, c_gen, 33)?;
    let expected = intersection_number(group, &c_loop, cycle, 8)?;
    let integral = integrate_form_along_cycle(
        |z| {
            hyperbolic_eisenstein(group, c_gen, s, z, trunc)
                .map(|fs| (fs.form.dz_coeff, fs.form.dzbar_coeff))
        },
        cycle,
        n_quad,
    )?;
    let deviation = integral.norm() - expected.unsigned_abs() as f64;
    Ok(DualityRow {
        s,
        integral,
        expected,
        deviation,
    })
}

/// Run [`duality_check`] for several `s` values (one truncation per value).
pub fn duality_sweep(
    group: &FuchsianGroup,
    c_gen: usize,
    cycle: &Cycle,
    jobs: &[(C, Truncation)],
    n_quad: usize,
) -> Result<Vec<DualityRow>> {
    jobs.iter()
        .map(|(s, trunc)| duality_check(group, c_gen, cycle, *s, trunc, n_quad))
        .collect()
}

// ---------------------------------------------------------------------------
// L² mass of the hyperbolic Eisenstein series (cyclic groups)
// ---------------------------------------------------------------------------

/// Report of [`l2_norm_estimate`]: the mass `∫ ‖Ω‖² dμ` over the Fermi
/// rectangle `0 ≤ x₁ < l`, `|x₂| ≤ r`, for increasing funnel cuts `r`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct L2Report {
    pub s: f64,
    pub cuts: Vec<f64>,
    /// Quadrature mass up to each cut.
    pub masses: Vec<f64>,
    /// Successive mass increments (must decrease: the integrand decays like
    /// cosh^{−2s} in the funnel direction).
    pub increments: Vec<f64>,
    /// Closed-form truncated masses `l/k(s)² · ∫ sin^{2s}θ dθ` per cut.
    pub closed_form_masses: Vec<f64>,
    /// Closed-form total mass `l · k(2s)/k(s)²`.
    pub total_mass_closed_form: f64,
    /// The coarser a-priori bound `Γ(1/2)Γ(s/2)/Γ(1/2 + s/2) · (e^l − 1)`.
    pub a_priori_bound: f64,
    /// Fundamental-domain tiling multiplicity (exactly 1 for the cyclic
    /// Fermi rectangle — the multiplicity diagnostic).
    pub coverage_factor: f64,
}

/// Estimate `∫ ‖Ω_c(s)‖² dμ_hyp` over the quotient cylinder of a cyclic
/// hyperbolic group, truncated at the funnel cuts `r ∈ cuts` (distance from
/// the core geodesic), with `‖f dz + g dz̄‖² = 2y²(|f|² + |g|²)`.
pub fn l2_norm_estimate(group: &FuchsianGroup, s: f64, cuts: &[f64]) -> Result<L2Report> {
    let l = match group.preset() {
        Preset::CyclicHyperbolic { l } => l,
        other => {
            return Err(Error::domain(format!(
                "l2_norm_estimate integrates over the cyclic Fermi rectangle; preset {other:?} \
                 is not supported"
            )))
        }
    };
    if !(s > 0.5) {
        return Err(Error::domain("l2_norm_estimate needs s > 1/2 for a finite mass"));
    }
    if cuts.is_empty() || cuts.windows(2).any(|w| w[1] <= w[0]) || cuts[0] <= 0.0 {
        return Err(Error::domain("cuts must be positive and strictly increasing"));
    }
    let sc = C::new(s, 0.0);
    let k = k_factor(sc)?.re;
    let k2 = k_factor(C::new(2.0 * s, 0.0))?.re;
    let trunc = Truncation::default();

    // mass(r) = 2 ∫∫ (|f|² + |g|²) e^{2x₁} dx₁ dθ over x₁ ∈ [0, l],
    // θ ∈ [θ_r, π − θ_r], cot θ_r = sinh r  (z = e^{x₁} e^{iθ}).
    let (xs, ws) = gauss_legendre(12);
    let (ts, tw) = gauss_legendre(64);
    let mut masses = Vec::with_capacity(cuts.len());
    let mut closed = Vec::with_capacity(cuts.len());
    for &r in cuts {
        let theta_min = (1.0 / r.sinh()).atan();
        let theta_max = std::f64::consts::PI - theta_min;
        let (tm, th) = (0.5 * (theta_max + theta_min), 0.5 * (theta_max - theta_min));
        let (xm, xh) = (0.5 * l, 0.5 * l);
        let mut mass = 0.0;
        for (&xt, &xw) in xs.iter().zip(&ws) {
            let x1 = xm + xh * xt;
            let radius = x1.exp();
            for (&tt, &twt) in ts.iter().zip(&tw) {
                let theta = tm + th * tt;
                let z = C::new(radius * theta.cos(), radius * theta.sin());
                let form = hyperbolic_eisenstein(group, 0, sc, z, &trunc)?.form;
                let density = 2.0
                    * (form.dz_coeff.norm_sqr() + form.dzbar_coeff.norm_sqr())
                    * radius
                    * radius;
                mass += density * xw * twt * xh * th;
            }
        }
        masses.push(mass);
        let integral = tanh_sinh(
            |t| C::new(t.sin().powf(2.0 * s), 0.0),
            theta_min,
            theta_max,
            1e-12,
        )?
        .re;
        closed.push(l * integral / (k * k));
    }
    let increments = std::iter::once(masses[0])
        .chain(masses.windows(2).map(|w| w[1] - w[0]))
        .collect();
    let half = C::new(0.5, 0.0);
    let a_priori_bound = (complex_gamma(half)? * complex_gamma(C::new(s / 2.0, 0.0))?
        / complex_gamma(C::new(0.5 + s / 2.0, 0.0))?)
    .re
        * (l.exp() - 1.0);
    Ok(L2Report {
        s,
        cuts: cuts.to_vec(),
        masses,
        increments,
        closed_form_masses: closed,
        total_mass_closed_form: l * k2 / (k * k),
        a_priori_bound,
        coverage_factor: 1.0,
    })
}

// ---------------------------------------------------------------------------
// Degeneration diagnostics (elementary family)
// ---------------------------------------------------------------------------

/// Per-`l` row of a [`DegenerationReport`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DegenerationRow {
    pub l: f64,
    /// Sup over the grid of `|(1/l^s)·ã_{l,q}(π_l(w)) − Ẽ_{∞,q}(w)|`, both
    /// sides evaluated through the series code paths.
    pub sup_error: f64,
    /// Same quantity from the closed forms `v^q (sin(l v)/l)^{s−q}` vs `v^s`.
    pub closed_form_sup_error: f64,
}

/// Report of [`degeneration_diagnostic`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DegenerationReport {
    pub q: u32,
    pub s: C,
    pub rows: Vec<DegenerationRow>,
    /// Whether `sup_error` strictly decreases along the `l` grid.
    pub monotone: bool,
    /// `|Γ(1 + s/2)/(Γ(1/2)Γ(1/2 + s/2)) − 1/k(s)|` (the degeneration
    /// prefactor identity, pure Gamma arithmetic).
    pub prefactor_deviation: f64,
    /// Max relative deviation of `Ω(s)`'s dz-part from
    /// `−A_{l,1}(s+1)/(2i k(s))` at spot-check points (the normalization
    /// identity tying the 1-form to the weight family).
    pub omega_alpha_deviation: f64,
}

/// Track the elementary degenerating family: `A_{l,q}` on
/// `cyclic_hyperbolic(l)`, pulled back through the collar chart
/// `π_l(w) = e^{l·w}`, rescaled by `1/l^s`, against the parabolic series
/// `E_{∞,q}` of the limit group (which must be the cyclic parabolic
/// preset). Both sides are evaluated through the ordinary series
/// evaluators; the closed forms are tracked alongside as an oracle.
pub fn degeneration_diagnostic(
    q: u32,
    s: C,
    l_grid: &[f64],
    limit_group: &FuchsianGroup,
    grid: GridSpec,
) -> Result<DegenerationReport> {
    if !matches!(limit_group.preset(), Preset::CyclicParabolic) {
        return Err(Error::domain(
            "degeneration_diagnostic supports the elementary family: the limit group must be \
             the cyclic parabolic preset",
        ));
    }
    if l_grid.is_empty() || l_grid.iter().any(|&l| !(l > 0.0)) {
        return Err(Error::domain("l grid must be non-empty and positive"));
    }
    if l_grid.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::domain("l grid must be strictly decreasing"));
    }
    if s.re <= 1.0 {
        return Err(Error::domain("degeneration diagnostics need Re s > 1"));
    }
    grid.validate()?;
    let trunc = Truncation::default();
    let qi = q as i32;
    let ks = k_factor(s)?;

    let mut rows = Vec::with_capacity(l_grid.len());
    for &l in l_grid {
        let group_l = FuchsianGroup::cyclic_hyperbolic(l)?;
        let lc = C::new(l, 0.0);
        let mut sup = 0.0f64;
        let mut closed_sup = 0.0f64;
        for iy in 0..grid.ny {
            for ix in 0..grid.nx {
                let w = grid.node(ix, iy);
                let v = w.im;
                let z = (lc * w).exp();
                let a = weight_q_series(&group_l, 0, q, s, z, &trunc, false)?
                    .form
                    .dz_coeff;
                // Pull the q-differential back through π_l and lift by
                // (Im w)^q; rescale by 1/l^s.
                let lhs = C::new(v, 0.0).powi(qi) * a * (lc * z).powi(qi) / lc.powc(s);
                let rhs = parabolic_eisenstein(limit_group, 0, q, s, w, &trunc)?
                    .form
                    .auto_lift;
                sup = sup.max((lhs - rhs).norm());

                let lhs_closed = C::new(v, 0.0).powi(qi)
                    * C::new((l * v).sin() / l, 0.0).powc(s - q as f64);
                let rhs_closed = C::new(v, 0.0).powc(s);
                closed_sup = closed_sup.max((lhs_closed - rhs_closed).norm());
            }
        }
        rows.push(DegenerationRow {
            l,
            sup_error: sup,
            closed_form_sup_error: closed_sup,
        });
    }
    let monotone = rows.windows(2).all(|w| w[1].sup_error < w[0].sup_error);

    let half = C::new(0.5, 0.0);
    let prefactor = complex_gamma(1.0 + s / 2.0)?
        / (complex_gamma(half)? * complex_gamma(0.5 + s / 2.0)?);
    let prefactor_deviation = (prefactor - 1.0 / ks).norm();

    // Ω(s) dz-part = −A_{l,1}(s+1)/(2i k(s)), spot-checked at the largest l.
    let group_0 = FuchsianGroup::cyclic_hyperbolic(l_grid[0])?;
    let mut omega_alpha_deviation = 0.0f64;
    for &z in &[C::new(0.3, 0.9), C::new(-0.2, 1.4), C::new(0.05, 0.6)] {
        let omega = hyperbolic_eisenstein(&group_0, 0, s, z, &trunc)?.form.dz_coeff;
        let a1 = weight_q_series(&group_0, 0, 1, s + 1.0, z, &trunc, false)?
            .form
            .dz_coeff;
        let predicted = -a1 / (C::new(0.0, 2.0) * ks);
        omega_alpha_deviation =
            omega_alpha_deviation.max((omega - predicted).norm() / omega.norm().max(1e-300));
    }

    Ok(DegenerationReport {
        q,
        s,
        rows,
        monotone,
        prefactor_deviation,
        omega_alpha_deviation,
    })
}

// ---------------------------------------------------------------------------
// Collar lemma helpers
// ---------------------------------------------------------------------------

/// Solve `collar_halfwidth(l) = l/2` (the self-collar length scale, where a
/// geodesic's collar is exactly as wide as the geodesic is long) by
/// bisection; returns `(solved, closed_form)` with the closed form
/// `2·arcsinh(1)`.
pub fn collar_fixed_point() -> Result<(f64, f64)> {
    let f = |l: f64| -> Result<f64> { Ok(collar_halfwidth(l)? - 0.5 * l) };
    let (mut lo, mut hi) = (0.5, 4.0);
    if f(lo)? <= 0.0 || f(hi)? >= 0.0 {
        return Err(Error::domain("collar fixed-point bracket failed"));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi), 2.0 * 1.0f64.asinh()))
}

/// One disjoint-axis separation measurement for the collar inequality
/// `cosh d(axis, γ·axis) ≥ coth(l/2)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeparationRow {
    pub word: Vec<i8>,
    pub cosh_distance: f64,
    /// The collar bound `coth(l/2)` for the generator's length `l`.
    pub bound: f64,
}

/// Measure `cosh d(axis_g, γ·axis_g)` for each conjugating word γ, against
/// the collar separation bound `coth(l(g)/2)`.
pub fn conjugate_axis_separation(
    group: &FuchsianGroup,
    gen: usize,
    words: &[Vec<i8>],
) -> Result<Vec<SeparationRow>> {
    let gens = group.generators();
    let g = gens
        .get(gen)
        .ok_or_else(|| Error::domain(format!("generator index {gen} out of range")))?;
    let ell = g.translation_length()?;
    let bound = 1.0 / (ell / 2.0).tanh();
    let axis = Geodesic::axis_of(g)?;
    words
        .iter()
        .map(|word| {
            let h = group.word_matrix(word)?;
            let lift = Geodesic::new(h.apply_boundary(axis.p), h.apply_boundary(axis.q))?;
            let d = axis.distance_to(&lift)?;
            Ok(SeparationRow {
                word: word.clone(),
                cosh_distance: d.cosh(),
                bound,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn power_field(s: f64, q: i32, spec: GridSpec) -> GridField {
        GridField::evaluate(spec, q, |z| Ok(C::new(z.im.powf(s), 0.0))).unwrap()
    }

    #[test]
    fn laplacian_reproduces_power_law_eigenvalue() {
        // Δ_{2q} y^s = s(s−1) y^s for x-independent fields, any q.
        let spec = GridSpec::centered(c(0.3, 0.9), 1e-3, 7, 7);
        for q in [0, 1] {
            let field = power_field(2.5, q, spec);
            let lap = apply_weighted_laplacian(&field).unwrap();
            for iy in 0..lap.spec.ny {
                for ix in 0..lap.spec.nx {
                    let y = lap.spec.y0 + iy as f64 * lap.spec.h;
                    let want = 2.5 * 1.5 * y.powf(2.5);
                    let got = lap.value(ix, iy);
                    assert!(
                        (got - want).norm() < 1e-6 * want.abs(),
                        "q={q}: {got} vs {want}"
                    );
                }
            }
        }
    }

    #[test]
    fn laplacian_stencil_error_is_second_order() {
        let center = c(0.3, 0.9);
        let res = |h: f64| -> f64 {
            let field = power_field(2.7, 0, GridSpec::centered(center, h, 5, 5));
            let lap = apply_weighted_laplacian(&field).unwrap();
            let mut worst = 0.0f64;
            for iy in 0..lap.spec.ny {
                for ix in 0..lap.spec.nx {
                    let y = lap.spec.y0 + iy as f64 * lap.spec.h;
                    let want = 2.7 * 1.7 * y.powf(2.7);
                    worst = worst.max((lap.value(ix, iy) - want).norm() / want.abs());
                }
            }
            worst
        };
        let ratio = res(2e-3) / res(1e-3);
        assert!((3.5..4.5).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn maass_composition_reproduces_weighted_laplacian() {
        // −L_{q+1} K_q f = (−Δ_{2q} + q(q+1)) f, tested at q = 0 on y^s:
        // both sides equal −s(s−1) y^s.
        let s = 2.3;
        let spec = GridSpec::centered(c(0.1, 1.1), 1e-3, 7, 7);
        let field = power_field(s, 0, spec);
        let raised = apply_maass(&field, MaassDirection::Raise).unwrap();
        assert_eq!(raised.weight, 1);
        let composed = apply_maass(&raised, MaassDirection::Lower).unwrap();
        assert_eq!(composed.weight, 0);
        for iy in 0..composed.spec.ny {
            for ix in 0..composed.spec.nx {
                let y = composed.spec.y0 + iy as f64 * composed.spec.h;
                let want = -s * (s - 1.0) * y.powf(s);
                let got = -composed.value(ix, iy);
                assert!(
                    (got - want).norm() < 1e-5 * want.abs(),
                    "{got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn maass_commutator_is_twice_the_weight() {
        // (L_{q+1}K_q − K_{q−1}L_q) f = −2q f on any smooth weight-q field.
        let q = 1;
        let spec = GridSpec::centered(c(0.2, 0.85), 1e-3, 9, 9);
        let field = GridField::evaluate(spec, q, |z| {
            Ok(C::new(z.im.powf(2.2), 0.0) * (C::new(0.0, 0.7) * z.re).exp())
        })
        .unwrap();
        let lk = apply_maass(&apply_maass(&field, MaassDirection::Raise).unwrap(), MaassDirection::Lower)
            .unwrap();
        let kl = apply_maass(&apply_maass(&field, MaassDirection::Lower).unwrap(), MaassDirection::Raise)
            .unwrap();
        for iy in 0..lk.spec.ny {
            for ix in 0..lk.spec.nx {
                let f = field.value(ix + 2, iy + 2);
                let got = lk.value(ix, iy) - kl.value(ix, iy);
                let want = -2.0 * q as f64 * f;
                assert!((got - want).norm() < 1e-5 * f.norm(), "{got} vs {want}");
            }
        }
    }

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let (xs, ws) = gauss_legendre(8);
        // Degree 15 is integrated exactly by the 8-point rule.
        let int15: f64 = xs.iter().zip(&ws).map(|(x, w)| w * x.powi(15)).sum();
        assert!(int15.abs() < 1e-14);
        let int14: f64 = xs.iter().zip(&ws).map(|(x, w)| w * x.powi(14)).sum();
        assert!((int14 - 2.0 / 15.0).abs() < 1e-14);
        let total: f64 = ws.iter().sum();
        assert!((total - 2.0).abs() < 1e-14);
    }

    #[test]
    fn exact_form_integration_matches_its_antiderivative() {
        // dh for h = −arg z is (i/2z) dz − (i/2z̄) dz̄, exact and
        // single-valued on H. Over a deck-closed cycle (a path p → γp in H)
        // the integral is h(γp) − h(p); over a genuinely closed polygon it
        // vanishes. Both pin down the chordwise quadrature.
        let h = |z: C| -z.arg();
        let dh = |z: C| Ok((C::new(0.0, 0.5) / z, -C::new(0.0, 0.5) / z.conj()));
        let group = FuchsianGroup::schottky_torus(4.0, 4.0).unwrap();
        let cycle = geodesic_loop_cycle(&group, 1, 9).unwrap();
        let integral = integrate_form_along_cycle(dh, &cycle, 16).unwrap();
        let first = cycle.samples[0];
        let last = *cycle.samples.last().unwrap();
        let want = C::new(h(last) - h(first), 0.0);
        assert!((integral - want).norm() < 1e-10, "integral {integral}, want {want}");

        let z0 = C::new(-0.4, 0.8);
        let polygon = Cycle {
            kind: CycleKind::DeckClosure,
            base_point: PointH::from_c(z0).unwrap(),
            closer: Matrix2::identity(),
            samples: vec![z0, C::new(0.4, 0.8), C::new(0.4, 1.6), C::new(-0.4, 1.6), z0],
        };
        let loop_integral = integrate_form_along_cycle(dh, &polygon, 16).unwrap();
        assert!(loop_integral.norm() < 1e-12, "closed loop gave {loop_integral}");
    }

    #[test]
    fn cycle_reversal_negates_integrals() {
        let group = FuchsianGroup::schottky_torus(4.0, 4.0).unwrap();
        let cycle = geodesic_loop_cycle(&group, 0, 7).unwrap();
        cycle.validate().unwrap();
        let rev = cycle.reversed();
        rev.validate().unwrap();
        let f = |z: C| Ok((z * z, (0.3 * z).exp()));
        let fwd = integrate_form_along_cycle(f, &cycle, 12).unwrap();
        let bwd = integrate_form_along_cycle(f, &rev, 12).unwrap();
        assert!((fwd + bwd).norm() < 1e-12 * fwd.norm().max(1.0));
    }

    #[test]
    fn omega_vanishes_along_the_core_geodesic() {
        // On the cyclic group, Ω is a multiple of dθ; its pullback along the
        // axis (θ = π/2 fixed) vanishes identically.
        let group = FuchsianGroup::cyclic_hyperbolic(1.0).unwrap();
        let cycle = geodesic_loop_cycle(&group, 0, 9).unwrap();
        let trunc = Truncation::default();
        let integral = integrate_form_along_cycle(
            |z| {
                hyperbolic_eisenstein(&group, 0, c(1.0, 0.0), z, &trunc)
                    .map(|fs| (fs.form.dz_coeff, fs.form.dzbar_coeff))
            },
            &cycle,
            16,
        )
        .unwrap();
        assert!(integral.norm() < 1e-12, "integral {integral}");
    }

    #[test]
    fn intersection_numbers_on_the_torus() {
        let group = FuchsianGroup::schottky_torus(4.0, 4.0).unwrap();
        let a = geodesic_loop_cycle(&group, 0, 33).unwrap();
        let b = geodesic_loop_cycle(&group, 1, 33).unwrap();
        let ab = intersection_number(&group, &a, &b, 6).unwrap();
        let ba = intersection_number(&group, &b, &a, 6).unwrap();
        assert_eq!(ab.abs(), 1, "core geodesics cross once");
        assert_eq!(ab, -ba, "antisymmetry");
        assert_eq!(intersection_number(&group, &a, &a, 6).unwrap(), 0);
        // A B-conjugate of the A-loop is freely homotopic to it: crossing 0.
        let conj = deck_closure_cycle(&group, &[2, 1, -2], c(0.2, 1.3), 17).unwrap();
        assert_eq!(intersection_number(&group, &a, &conj, 6).unwrap(), 0);
    }

    #[test]
    fn duality_on_the_torus_at_s_two() {
        let group = FuchsianGroup::schottky_torus(4.0, 4.0).unwrap();
        let trunc = Truncation::fixed_shells(7);
        let b_loop = geodesic_loop_cycle(&group, 1, 9).unwrap();
        let row = duality_check(&group, 0, &b_loop, c(2.0, 0.0), &trunc, 16).unwrap();
        assert_eq!(row.expected.abs(), 1);
        assert!(row.deviation.abs() < 1e-3, "deviation {}", row.deviation);

        let a_loop = geodesic_loop_cycle(&group, 0, 9).unwrap();
        let row0 = duality_check(&group, 0, &a_loop, c(2.0, 0.0), &trunc, 16).unwrap();
        assert_eq!(row0.expected, 0);
        assert!(row0.integral.norm() < 1e-6, "integral {}", row0.integral);
    }

    #[test]
    fn duality_integral_is_homotopy_invariant() {
        // Replacing the B-axis loop by a chord from a different base point
        // (same deck closure) changes the closed-form integral negligibly.
        let group = FuchsianGroup::schottky_torus(4.0, 4.0).unwrap();
        let trunc = Truncation::fixed_shells(7);
        let s = c(2.0, 0.0);
        let axis_loop = geodesic_loop_cycle(&group, 1, 9).unwrap();
        let chord = deck_closure_cycle(&group, &[2], c(0.2, 1.3), 9).unwrap();
        let i1 = duality_check(&group, 0, &axis_loop, s, &trunc, 16).unwrap().integral;
        let i2 = duality_check(&group, 0, &chord, s, &trunc, 16).unwrap().integral;
        assert!((i1 - i2).norm() < 1e-6, "{i1} vs {i2}");
    }

    #[test]
    fn fe_residual_closed_form_omega_on_cyclic() {
        let group = FuchsianGroup::cyclic_hyperbolic(1.0).unwrap();
        let grid = GridSpec::centered(c(0.35, 0.85), 1e-3, 12, 12);
        let r = functional_equation_residual(
            &group,
            FeFamily::Omega { c_gen: 0 },
            c(1.0, 0.0),
            grid,
            2,
        )
        .unwrap();
        assert!(r.residual < 1e-3, "residual {}", r.residual);
    }

    #[test]
    fn fe_residual_shrinks_at_second_order() {
        let group = FuchsianGroup::cyclic_hyperbolic(1.0).unwrap();
        let rows = fe_order_scan(
            &group,
            FeFamily::WeightA { c_gen: 0, q: 1 },
            c(2.5, 0.0),
            c(0.35, 0.85),
            8,
            2,
            &[2e-3, 1e-3],
        )
        .unwrap();
        let ratio = rows[0].residual / rows[1].residual;
        assert!((3.5..4.5).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn fe_residual_on_schottky_weight_family() {
        let group = FuchsianGroup::schottky_torus(4.0, 4.0).unwrap();
        let grid = GridSpec::centered(c(0.35, 0.85), 1e-3, 8, 8);
        let r = functional_equation_residual(
            &group,
            FeFamily::WeightA { c_gen: 0, q: 2 },
            c(2.5, 0.0),
            grid,
            5,
        )
        .unwrap();
        assert!(r.residual < 5e-3, "residual {}", r.residual);
    }

    #[test]
    fn l2_mass_matches_the_cyclic_closed_form() {
        let group = FuchsianGroup::cyclic_hyperbolic(1.0).unwrap();
        let report = l2_norm_estimate(&group, 1.5, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        for (m, cf) in report.masses.iter().zip(&report.closed_form_masses) {
            assert!((m - cf).abs() < 1e-8 * cf.max(1e-10), "{m} vs {cf}");
        }
        // Increments decrease; the deepest mass approaches the total and
        // stays below the coarse a-priori bound.
        for w in report.increments.windows(2) {
            assert!(w[1] < w[0]);
        }
        let last = *report.masses.last().unwrap();
        assert!(last < report.total_mass_closed_form);
        assert!(report.total_mass_closed_form - last < 1e-3);
        assert!(last < report.a_priori_bound);
    }

    #[test]
    fn l2_mass_hits_exact_special_values() {
        // Total collar mass for l = 1 is k(2σ)/k(σ)²: π/8 at σ = 1 (since
        // k(2) = π/2, k(1) = 2) and 3/(2π) at σ = 2 (k(4) = 3π/8,
        // k(2) = π/2). A wide cut captures it to the quadrature tolerance.
        let group = FuchsianGroup::cyclic_hyperbolic(1.0).unwrap();
        let m1 = l2_norm_estimate(&group, 1.0, &[14.0]).unwrap().masses[0];
        assert!((m1 - PI / 8.0).abs() < 1e-8, "σ=1 mass {m1}");
        let m2 = l2_norm_estimate(&group, 2.0, &[14.0]).unwrap().masses[0];
        assert!((m2 - 1.5 / PI).abs() < 1e-8, "σ=2 mass {m2}");
    }

    #[test]
    fn degeneration_of_the_elementary_family() {
        let limit = FuchsianGroup::cyclic_parabolic().unwrap();
        let grid = GridSpec {
            x0: 0.0,
            y0: 0.4,
            h: 0.1,
            nx: 11,
            ny: 7,
        };
        let report =
            degeneration_diagnostic(1, c(2.0, 0.0), &[0.4, 0.2, 0.1, 0.05], &limit, grid)
                .unwrap();
        assert!(report.monotone);
        assert!(report.rows.last().unwrap().sup_error < 1e-3);
        assert!(report.prefactor_deviation < 1e-12);
        assert!(report.omega_alpha_deviation < 1e-12);
        // The two evaluation paths (series code vs closed form) agree.
        for row in &report.rows {
            assert!(
                (row.sup_error - row.closed_form_sup_error).abs() < 1e-10,
                "{} vs {}",
                row.sup_error,
                row.closed_form_sup_error
            );
        }
    }

    #[test]
    fn degeneration_rejects_bad_grids() {
        let limit = FuchsianGroup::cyclic_parabolic().unwrap();
        let grid = GridSpec {
            x0: 0.0,
            y0: 0.4,
            h: 0.1,
            nx: 5,
            ny: 3,
        };
        // Not decreasing.
        assert!(degeneration_diagnostic(1, c(2.0, 0.0), &[0.1, 0.2], &limit, grid).is_err());
        // Wrong limit group.
        let wrong = FuchsianGroup::cyclic_hyperbolic(1.0).unwrap();
        assert!(degeneration_diagnostic(1, c(2.0, 0.0), &[0.2, 0.1], &wrong, grid).is_err());
    }

    #[test]
    fn collar_fixed_point_matches_the_closed_form() {
        let (solved, closed) = collar_fixed_point().unwrap();
        assert!((solved - closed).abs() < 1e-12, "{solved} vs {closed}");
        assert!((closed - 2.0 * (1.0 + 2.0f64.sqrt()).ln()).abs() < 1e-14);
    }

    #[test]
    fn conjugate_axes_satisfy_the_collar_bound() {
        let group = FuchsianGroup::schottky_torus(4.0, 4.0).unwrap();
        let words: Vec<Vec<i8>> = vec![vec![2], vec![-2], vec![2, 2], vec![1, 2], vec![-2, 1]];
        let rows = conjugate_axis_separation(&group, 0, &words).unwrap();
        assert_eq!(rows.len(), 5);
        for row in &rows {
            assert!(
                row.cosh_distance >= row.bound,
                "word {:?}: cosh d = {} < bound {}",
                row.word,
                row.cosh_distance,
                row.bound
            );
        }
    }

    #[test]
    fn grid_validation_rejects_boundary_touching() {
        assert!(GridSpec {
            x0: 0.0,
            y0: 0.0,
            h: 0.1,
            nx: 4,
            ny: 4
        }
        .validate()
        .is_err());
        let tiny = GridField::evaluate(
            GridSpec {
                x0: 0.0,
                y0: 1.0,
                h: 0.1,
                nx: 2,
                ny: 2,
            },
            0,
            |_| Ok(C::new(1.0, 0.0)),
        )
        .unwrap();
        assert!(apply_weighted_laplacian(&tiny).is_err());
    }
}
