//! Fuchsian groups of the second kind: presets with ping-pong certificates,
//! reduced-word enumeration by word-length shells, coset representatives,
//! orbital counting, and the exponent-of-convergence estimate.
//!
//! All presets are free groups in Schottky position, so every element has a
//! unique reduced word in the generators and enumeration is a walk over the
//! reduced-word tree:
//!
//! ```text
//!   cyclic_hyperbolic(l):  ⟨ diag(e^{l/2}, e^{-l/2}) ⟩            (axis iℝ₊)
//!   cyclic_parabolic:      ⟨ (1 1; 0 1) ⟩                         (cusp ∞)
//!   schottky_torus(t, m):  ⟨ A = diag(e^{t/2}, e^{-t/2}),
//!                            B = (cosh m/2  sinh m/2;
//!                                 sinh m/2  cosh m/2) ⟩           (axes cross at i)
//!   parabolic_pair(λ):     ⟨ T = (1 λ; 0 1), S = (1 0; λ 1) ⟩,   λ > 2
//! ```
//!
//! Letters of a word are signed 1-based generator indices (`+1` = first
//! generator, `-1` = its inverse, `+2` = second generator, …); a word is the
//! left-to-right product of its letters. Enumeration is deterministic: shells
//! by word length, lexicographic letter order `+1, -1, +2, -2, …` within a
//! shell.

use crate::error::{Error, Result};
use crate::hypgeom::{hyperbolic_distance, Boundary, Matrix2};
use crate::specfun::C;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

// ---------------------------------------------------------------------------
// Elements and words
// ---------------------------------------------------------------------------

/// A group element together with its reduced word.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupElement {
    /// The matrix (product of the word's letters, left to right).
    pub matrix: Matrix2,
    /// Reduced word: signed 1-based generator indices.
    pub word: Vec<i8>,
}

/// Generator index (0-based) and inversion flag of a letter.
pub fn letter_parts(letter: i8) -> (usize, bool) {
    debug_assert!(letter != 0);
    ((letter.unsigned_abs() as usize) - 1, letter < 0)
}

// ---------------------------------------------------------------------------
// Ping-pong certificate
// ---------------------------------------------------------------------------

/// A closed region of H bounded by a geodesic, used in ping-pong
/// certificates. All regions are stored via their boundary circle/line on ℝ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Region {
    /// `{ |z - center| ≤ radius }` when `inside`, else `{ |z - center| ≥ radius }`.
    Disc { center: f64, radius: f64, inside: bool },
    /// `{ Re z ≥ x }` when `right`, else `{ Re z ≤ x }`.
    HalfPlane { x: f64, right: bool },
}

impl Region {
    /// Disjointness of the two regions' interiors (for the region shapes
    /// emitted by the presets). Tangency is allowed — the isometric discs
    /// of a parabolic generator meet in exactly its fixed point, and the
    /// Klein combination argument only needs interior-disjointness.
    fn disjoint_from(&self, other: &Region) -> bool {
        use Region::*;
        const TANGENT_TOL: f64 = 1e-12;
        match (*self, *other) {
            (Disc { center: c1, radius: r1, inside: true }, Disc { center: c2, radius: r2, inside: true }) => {
                (c1 - c2).abs() >= (r1 + r2) * (1.0 - TANGENT_TOL)
            }
            (Disc { center: c1, radius: r1, inside: true }, Disc { center: c2, radius: r2, inside: false })
            | (Disc { center: c2, radius: r2, inside: false }, Disc { center: c1, radius: r1, inside: true }) => {
                (c1 - c2).abs() + r1 <= r2 * (1.0 + TANGENT_TOL)
            }
            (Disc { inside: false, .. }, Disc { inside: false, .. }) => false,
            (Disc { center, radius, inside: true }, HalfPlane { x, right })
            | (HalfPlane { x, right }, Disc { center, radius, inside: true }) => {
                let slack = TANGENT_TOL * radius.max(1.0);
                if right {
                    center + radius <= x + slack
                } else {
                    center - radius >= x - slack
                }
            }
            (Disc { inside: false, .. }, HalfPlane { .. })
            | (HalfPlane { .. }, Disc { inside: false, .. }) => false,
            (HalfPlane { x: x1, right: r1 }, HalfPlane { x: x2, right: r2 }) => {
                match (r1, r2) {
                    (true, false) => x2 <= x1 + TANGENT_TOL,
                    (false, true) => x1 <= x2 + TANGENT_TOL,
                    _ => false,
                }
            }
        }
    }

    /// Two sample points on the region's boundary circle within ℝ ∪ {∞}
    /// (finite ones), used for the mapping spot-check.
    fn boundary_samples(&self) -> Vec<f64> {
        match *self {
            Region::Disc { center, radius, .. } => vec![center - radius, center + radius],
            Region::HalfPlane { x, .. } => vec![x],
        }
    }

    /// Whether a real point lies on the boundary circle/line within `tol`.
    fn on_boundary(&self, p: Boundary, tol: f64) -> bool {
        match (*self, p) {
            (Region::Disc { center, radius, .. }, Boundary::Real(x)) => {
                ((x - center).abs() - radius).abs() <= tol * radius.max(1.0)
            }
            (Region::Disc { .. }, Boundary::Infinity) => false,
            (Region::HalfPlane { x: hx, .. }, Boundary::Real(x)) => (x - hx).abs() <= tol,
            // A half-plane's boundary line passes through ∞.
            (Region::HalfPlane { .. }, Boundary::Infinity) => true,
        }
    }
}

/// Ping-pong certificate: for each generator `g`, a pair of regions
/// `(D⁻, D⁺)` with `g(H ∖ D⁻) = interior D⁺` (hence `g⁻¹(H ∖ D⁺) = interior
/// D⁻`). Pairwise interior-disjointness of all `2r` regions certifies that
/// the group is free and discrete (Klein combination / ping-pong); tangency
/// occurs exactly at parabolic fixed points.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certificate {
    /// `(D⁻, D⁺)` per generator.
    pub pairs: Vec<(Region, Region)>,
}

impl Certificate {
    /// Verify pairwise disjointness and the boundary mapping property
    /// (`g(∂D⁻) ⊂ ∂D⁺`, sampled at the real boundary points).
    pub fn verify(&self, generators: &[Matrix2]) -> Result<()> {
        let mut all: Vec<&Region> = Vec::new();
        for (dm, dp) in &self.pairs {
            all.push(dm);
            all.push(dp);
        }
        for i in 0..all.len() {
            for j in (i + 1)..all.len() {
                if !all[i].disjoint_from(all[j]) {
                    return Err(Error::domain(format!(
                        "ping-pong regions {i} and {j} are not disjoint: {:?} vs {:?}",
                        all[i], all[j]
                    )));
                }
            }
        }
        for (g, (dm, dp)) in generators.iter().zip(&self.pairs) {
            for x in dm.boundary_samples() {
                let image = g.apply_boundary(Boundary::Real(x));
                if !dp.on_boundary(image, 1e-9) {
                    return Err(Error::domain(format!(
                        "generator does not map ∂D⁻ into ∂D⁺: {x} ↦ {image:?}, target {dp:?}"
                    )));
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Cusp data
// ---------------------------------------------------------------------------

/// A cusp of the quotient surface, with the data needed to normalize series
/// at it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Cusp {
    /// Fixed point on the boundary.
    pub location: Boundary,
    /// Cusp width λ: the stabilizer is conjugate to `z ↦ z + λ` by a
    /// parabolic-fixing rotation, equivalently `σ⁻¹ Γ_A σ = ⟨z ↦ z+1⟩` with
    /// the scaling below.
    pub width: f64,
    /// Scaling matrix σ_A with `σ_A(∞) = location` and
    /// `σ_A⁻¹ γ_A σ_A = (1 1; 0 1)`.
    pub scaling: Matrix2,
    /// Index of the generator stabilizing the cusp.
    pub generator_index: usize,
}

// ---------------------------------------------------------------------------
// The group
// ---------------------------------------------------------------------------

/// Which preset a group was built from (with its parameters).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Preset {
    /// `⟨ diag(e^{l/2}, e^{-l/2}) ⟩` — one funnel around a closed geodesic of
    /// length `l` on the axis iℝ₊.
    CyclicHyperbolic { l: f64 },
    /// `⟨ z ↦ z+1 ⟩` — a single width-1 cusp at ∞.
    CyclicParabolic,
    /// Rank-2 purely loxodromic Schottky group; quotient is a one-holed
    /// torus with a funnel. Axes of the generators cross at `i`.
    SchottkyTorus { t: f64, m: f64 },
    /// `⟨ z ↦ z+λ, z ↦ z/(λz+1) ⟩`, λ > 2 — two cusps (∞ and 0) and one
    /// funnel.
    ParabolicPair { lambda: f64 },
    /// Explicit generator matrices certified via isometric circles
    /// (classical Schottky position).
    Custom,
}

/// A finitely generated free Fuchsian group of the second kind with a
/// verified ping-pong certificate.
#[derive(Debug, Clone)]
pub struct FuchsianGroup {
    generators: Vec<Matrix2>,
    inverses: Vec<Matrix2>,
    preset: Preset,
    certificate: Certificate,
}

/// Filters for word enumeration.
#[derive(Debug, Clone, Copy, Default)]
pub struct WordFilter {
    /// Exclude words whose first letter uses this generator index (both
    /// signs): enumerates representatives of `⟨g⟩ \ Γ`.
    pub first_excluded: Option<usize>,
    /// Exclude words whose last letter uses this generator index: enumerates
    /// representatives of `Γ / ⟨g⟩`.
    pub last_excluded: Option<usize>,
}

impl FuchsianGroup {
    /// Build a preset group by name. Parameter counts and ranges are
    /// validated, and the ping-pong certificate is checked numerically.
    ///
    /// Names and parameters:
    /// * `"cyclic_hyperbolic"`, params `[l]`, `l > 0`;
    /// * `"cyclic_parabolic"`, no params;
    /// * `"schottky_torus"`, params `[t, m]` with `tanh(m/4) > e^{-t/2}`
    ///   (ping-pong position);
    /// * `"parabolic_pair"`, params `[λ]`, `λ > 2`.
    pub fn build_preset(name: &str, params: &[f64]) -> Result<FuchsianGroup> {
        match name {
            "cyclic_hyperbolic" => {
                let [l] = expect_params::<1>(name, params)?;
                Self::cyclic_hyperbolic(l)
            }
            "cyclic_parabolic" => {
                expect_params::<0>(name, params)?;
                Self::cyclic_parabolic()
            }
            "schottky_torus" => {
                let [t, m] = expect_params::<2>(name, params)?;
                Self::schottky_torus(t, m)
            }
            "parabolic_pair" => {
                let [lambda] = expect_params::<1>(name, params)?;
                Self::parabolic_pair(lambda)
            }
            other => Err(Error::config(format!("unknown preset '{other}'"))),
        }
    }

    /// Cyclic group generated by the dilation with translation length `l`.
    pub fn cyclic_hyperbolic(l: f64) -> Result<FuchsianGroup> {
        if !(l > 0.0) {
            return Err(Error::domain("cyclic_hyperbolic requires l > 0"));
        }
        let g = Matrix2::dilation(l);
        let cert = Certificate {
            pairs: vec![(
                Region::Disc { center: 0.0, radius: (-l / 2.0).exp(), inside: true },
                Region::Disc { center: 0.0, radius: (l / 2.0).exp(), inside: false },
            )],
        };
        Self::assemble(vec![g], Preset::CyclicHyperbolic { l }, cert)
    }

    /// Cyclic group generated by `z ↦ z + 1`.
    pub fn cyclic_parabolic() -> Result<FuchsianGroup> {
        let g = Matrix2::translation(1.0);
        let cert = Certificate {
            pairs: vec![(
                Region::HalfPlane { x: -0.5, right: false },
                Region::HalfPlane { x: 0.5, right: true },
            )],
        };
        Self::assemble(vec![g], Preset::CyclicParabolic, cert)
    }

    /// Rank-2 Schottky group uniformizing a one-holed torus: `A` translates
    /// by `t` along iℝ₊, `B` translates by `m` along the geodesic from -1 to
    /// +1; the two axes cross orthogonally at `i`.
    pub fn schottky_torus(t: f64, m: f64) -> Result<FuchsianGroup> {
        if !(t > 0.0) || !(m > 0.0) {
            return Err(Error::domain("schottky_torus requires t, m > 0"));
        }
        if (m / 4.0).tanh() <= (-t / 2.0).exp() {
            return Err(Error::domain(format!(
                "schottky_torus({t}, {m}) is not in ping-pong position: needs tanh(m/4) > e^(-t/2)"
            )));
        }
        let a = Matrix2::dilation(t);
        let (ch, sh) = ((m / 2.0).cosh(), (m / 2.0).sinh());
        let b = Matrix2::new(ch, sh, sh, ch)?;
        let cert = Certificate {
            pairs: vec![
                (
                    Region::Disc { center: 0.0, radius: (-t / 2.0).exp(), inside: true },
                    Region::Disc { center: 0.0, radius: (t / 2.0).exp(), inside: false },
                ),
                (
                    Region::Disc { center: -ch / sh, radius: 1.0 / sh, inside: true },
                    Region::Disc { center: ch / sh, radius: 1.0 / sh, inside: true },
                ),
            ],
        };
        Self::assemble(vec![a, b], Preset::SchottkyTorus { t, m }, cert)
    }

    /// Free group on two parabolics `T: z ↦ z+λ` and `S: z ↦ z/(λz+1)`,
    /// λ > 2, with cusps at ∞ (width λ) and 0.
    pub fn parabolic_pair(lambda: f64) -> Result<FuchsianGroup> {
        if !(lambda > 2.0) {
            return Err(Error::domain("parabolic_pair requires λ > 2"));
        }
        let t = Matrix2::translation(lambda);
        let s = Matrix2::new(1.0, 0.0, lambda, 1.0)?;
        let cert = Certificate {
            pairs: vec![
                (
                    Region::HalfPlane { x: -lambda / 2.0, right: false },
                    Region::HalfPlane { x: lambda / 2.0, right: true },
                ),
                (
                    Region::Disc { center: -1.0 / lambda, radius: 1.0 / lambda, inside: true },
                    Region::Disc { center: 1.0 / lambda, radius: 1.0 / lambda, inside: true },
                ),
            ],
        };
        Self::assemble(vec![t, s], Preset::ParabolicPair { lambda }, cert)
    }

    /// Build a group from explicit generator matrices, certifying
    /// discreteness via isometric circles: for `g = (a b; c d)` with
    /// `c ≠ 0`, `g` maps the exterior of `|cz + d| = 1` onto the interior
    /// of `|cz - a| = 1`, so pairwise-disjoint isometric circles put the
    /// generators in classical Schottky position. Generators fixing ∞
    /// (`c = 0`) are rejected; conjugate the group first.
    pub fn from_generators(generators: Vec<Matrix2>) -> Result<FuchsianGroup> {
        if generators.is_empty() {
            return Err(Error::domain("at least one generator is required"));
        }
        let mut pairs = Vec::with_capacity(generators.len());
        for g in &generators {
            let g = g.renormalize()?;
            if g.c.abs() < 1e-12 {
                return Err(Error::domain(
                    "explicit generators must not fix ∞ (c = 0); conjugate the group so every \
                     generator has c ≠ 0",
                ));
            }
            let radius = 1.0 / g.c.abs();
            pairs.push((
                Region::Disc { center: -g.d / g.c, radius, inside: true },
                Region::Disc { center: g.a / g.c, radius, inside: true },
            ));
        }
        let generators: Vec<Matrix2> = generators
            .iter()
            .map(Matrix2::renormalize)
            .collect::<Result<_>>()?;
        Self::assemble(generators, Preset::Custom, Certificate { pairs })
    }

    fn assemble(generators: Vec<Matrix2>, preset: Preset, certificate: Certificate) -> Result<FuchsianGroup> {
        certificate.verify(&generators)?;
        let inverses = generators.iter().map(Matrix2::inv).collect();
        Ok(FuchsianGroup { generators, inverses, preset, certificate })
    }

    /// Number of free generators.
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// The generators.
    pub fn generators(&self) -> &[Matrix2] {
        &self.generators
    }

    /// The preset tag the group was built from.
    pub fn preset(&self) -> Preset {
        self.preset
    }

    /// The verified ping-pong certificate.
    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    /// Matrix of a single letter.
    pub fn letter_matrix(&self, letter: i8) -> &Matrix2 {
        let (idx, inv) = letter_parts(letter);
        if inv {
            &self.inverses[idx]
        } else {
            &self.generators[idx]
        }
    }

    /// Left-to-right product of a word's letters. Errors on out-of-range
    /// letters or a non-reduced word.
    pub fn word_matrix(&self, word: &[i8]) -> Result<Matrix2> {
        let mut m = Matrix2::identity();
        let mut last: i8 = 0;
        for &letter in word {
            if letter == 0 || letter.unsigned_abs() as usize > self.rank() {
                return Err(Error::domain(format!("letter {letter} out of range")));
            }
            if letter == -last {
                return Err(Error::domain("word is not reduced"));
            }
            m = m.mul(self.letter_matrix(letter));
            last = letter;
        }
        Ok(m)
    }

    /// Cusps of the quotient surface, with widths and scaling matrices.
    pub fn cusps(&self) -> Vec<Cusp> {
        match self.preset {
            Preset::CyclicParabolic => vec![Cusp {
                location: Boundary::Infinity,
                width: 1.0,
                scaling: Matrix2::identity(),
                generator_index: 0,
            }],
            Preset::ParabolicPair { lambda } => {
                let r = lambda.sqrt();
                vec![
                    Cusp {
                        location: Boundary::Infinity,
                        width: lambda,
                        // σ_∞ = diag(√λ, 1/√λ): σ⁻¹ T σ = (1 1; 0 1).
                        scaling: Matrix2 { a: r, b: 0.0, c: 0.0, d: 1.0 / r },
                        generator_index: 0,
                    },
                    Cusp {
                        location: Boundary::Real(0.0),
                        width: lambda,
                        // σ₀ = (0, -1/√λ; √λ, 0): σ₀(∞) = 0, σ₀⁻¹ S σ₀ = (1 -1; 0 1).
                        scaling: Matrix2 { a: 0.0, b: -1.0 / r, c: r, d: 0.0 },
                        generator_index: 1,
                    },
                ]
            }
            _ => Vec::new(),
        }
    }

    // -- enumeration --------------------------------------------------------

    /// Visit every reduced word of length exactly `n` passing `filter`, in
    /// lexicographic letter order (`+1, -1, +2, -2, …`). The callback
    /// receives the product matrix and the word. `n = 0` visits the identity
    /// (the empty word) unless a `first_excluded`/`last_excluded` filter is
    /// set — the identity is a valid coset representative, so filters do not
    /// remove it.
    pub fn for_each_word_of_len<F: FnMut(&Matrix2, &[i8])>(
        &self,
        n: u32,
        filter: WordFilter,
        f: &mut F,
    ) {
        walk_words(&self.generators, &self.inverses, n, filter, f);
    }

    /// All reduced words of length ≤ `max_len` (shell order, lexicographic
    /// within a shell), including the identity.
    pub fn enumerate_elements(&self, max_len: u32) -> Vec<GroupElement> {
        let mut out = Vec::new();
        for n in 0..=max_len {
            self.for_each_word_of_len(n, WordFilter::default(), &mut |m, w| {
                out.push(GroupElement { matrix: *m, word: w.to_vec() });
            });
        }
        out
    }

    /// Representatives of the left cosets `⟨g_stab⟩ \ Γ` up to word length
    /// `max_len`: the reduced words that do not start with `g_stab^{±1}`
    /// (including the identity).
    pub fn coset_representatives(&self, stab: usize, max_len: u32) -> Result<Vec<GroupElement>> {
        if stab >= self.rank() {
            return Err(Error::domain(format!("generator index {stab} out of range")));
        }
        let mut out = Vec::new();
        let filter = WordFilter { first_excluded: Some(stab), ..Default::default() };
        for n in 0..=max_len {
            self.for_each_word_of_len(n, filter, &mut |m, w| {
                out.push(GroupElement { matrix: *m, word: w.to_vec() });
            });
        }
        Ok(out)
    }

    /// Canonical form of a word in the coset `⟨g_stab⟩ w`: strips the leading
    /// run of `g_stab^{±1}` letters and returns the stripped word together
    /// with the signed power removed.
    pub fn canonical_coset_form(&self, word: &[i8], stab: usize) -> (Vec<i8>, i64) {
        let stab_letter = (stab as i8) + 1;
        let mut power: i64 = 0;
        let mut start = 0;
        for &letter in word {
            if letter == stab_letter {
                power += 1;
                start += 1;
            } else if letter == -stab_letter {
                power -= 1;
                start += 1;
            } else {
                break;
            }
        }
        (word[start..].to_vec(), power)
    }

    // -- orbital counting ---------------------------------------------------

    /// Orbit points `γ·base` within hyperbolic distance `r` of `base`,
    /// returned with their distances (identity included).
    ///
    /// Implemented as a distance-ordered search over the reduced-word tree
    /// (each element visited exactly once — the group is free), pruning
    /// subtrees once the distance exceeds `r + margin` with a safety margin
    /// of twice the largest generator displacement plus 4. This reaches
    /// radii far beyond what full word-length enumeration can, which matters
    /// for groups with parabolic elements where `d(i, T^n i) ~ 2 log n`.
    pub fn orbit_ball(&self, base: C, r: f64) -> Result<Vec<(Matrix2, f64)>> {
        if !(base.im > 0.0) {
            return Err(Error::domain("orbit_ball requires a base point in H"));
        }
        let mut max_step: f64 = 0.0;
        for g in &self.generators {
            max_step = max_step.max(hyperbolic_distance(base, g.apply(base))?);
        }
        let margin = 2.0 * max_step + 4.0;
        let budget = r + margin;

        #[derive(Clone)]
        struct Node {
            matrix: Matrix2,
            last_letter: i8,
        }
        struct Entry(f64, usize);
        impl PartialEq for Entry {
            fn eq(&self, other: &Self) -> bool {
                self.0 == other.0 && self.1 == other.1
            }
        }
        impl Eq for Entry {}
        impl PartialOrd for Entry {
            fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
                Some(self.cmp(other))
            }
        }
        impl Ord for Entry {
            fn cmp(&self, other: &Self) -> Ordering {
                // Min-heap on distance (BinaryHeap is a max-heap).
                other.0.total_cmp(&self.0).then_with(|| other.1.cmp(&self.1))
            }
        }

        const NODE_CAP: usize = 5_000_000;
        let mut nodes: Vec<Node> = vec![Node { matrix: Matrix2::identity(), last_letter: 0 }];
        let mut heap: BinaryHeap<Entry> = BinaryHeap::new();
        heap.push(Entry(0.0, 0));
        let mut out: Vec<(Matrix2, f64)> = Vec::new();

        while let Some(Entry(dist, id)) = heap.pop() {
            if dist > budget {
                break;
            }
            let node = nodes[id].clone();
            if dist <= r {
                out.push((node.matrix, dist));
            }
            for idx in 0..self.rank() {
                for letter in [(idx as i8) + 1, -((idx as i8) + 1)] {
                    if letter == -node.last_letter {
                        continue;
                    }
                    let m = node.matrix.mul(self.letter_matrix(letter));
                    let d = hyperbolic_distance(base, m.apply(base))?;
                    if d <= budget {
                        if nodes.len() >= NODE_CAP {
                            return Err(Error::NonConvergence {
                                context: format!("orbit_ball node budget exhausted at r = {r}"),
                                tail_estimate: f64::NAN,
                            });
                        }
                        nodes.push(Node { matrix: m, last_letter: letter });
                        heap.push(Entry(d, nodes.len() - 1));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Number of orbit points within distance `r` of `base` (identity
    /// included): `N(r) = #{ γ : d(base, γ·base) ≤ r }`.
    pub fn orbital_count(&self, base: C, r: f64) -> Result<u64> {
        Ok(self.orbit_ball(base, r)?.len() as u64)
    }

    /// Least-squares estimate of the exponent of convergence δ from the
    /// growth of the orbital counting function: fits `log N(R)` against `R`
    /// over the last half of `r_grid` (which must be increasing, ≥ 4 points).
    pub fn estimate_delta(&self, base: C, r_grid: &[f64]) -> Result<DeltaEstimate> {
        if r_grid.len() < 4 || r_grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::domain("estimate_delta needs an increasing grid of ≥ 4 radii"));
        }
        let ball = self.orbit_ball(base, *r_grid.last().unwrap())?;
        let mut dists: Vec<f64> = ball.iter().map(|&(_, d)| d).collect();
        dists.sort_by(f64::total_cmp);
        let counts: Vec<(f64, u64)> = r_grid
            .iter()
            .map(|&r| (r, dists.partition_point(|&d| d <= r) as u64))
            .collect();
        let tail = &counts[counts.len() / 2..];
        if tail.iter().any(|&(_, n)| n == 0) {
            return Err(Error::domain("estimate_delta: empty orbit ball on fit range"));
        }
        // Least squares slope of ln N vs R.
        let n = tail.len() as f64;
        let sx: f64 = tail.iter().map(|&(r, _)| r).sum();
        let sy: f64 = tail.iter().map(|&(_, c)| (c as f64).ln()).sum();
        let sxx: f64 = tail.iter().map(|&(r, _)| r * r).sum();
        let sxy: f64 = tail.iter().map(|&(r, c)| r * (c as f64).ln()).sum();
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        Ok(DeltaEstimate { delta: slope, counts })
    }

    /// Partial sums, by word-length shell, of the counting series
    /// `Σ_γ u(γz)^q` with `u(w) = Im w / (1 + |w|²)` (a bounded height
    /// function). Returns `partials[n] = Σ_{|γ| ≤ n} u(γz)^q`.
    pub fn counting_bound_partials(&self, q: f64, z: C, max_len: u32) -> Result<Vec<f64>> {
        if !(z.im > 0.0) {
            return Err(Error::domain("counting_bound_partials requires z in H"));
        }
        let mut partials = Vec::with_capacity(max_len as usize + 1);
        let mut acc = 0.0;
        for n in 0..=max_len {
            self.for_each_word_of_len(n, WordFilter::default(), &mut |m, _| {
                let w = m.apply(z);
                let u = w.im / (1.0 + w.norm_sqr());
                acc += u.powf(q);
            });
            partials.push(acc);
        }
        Ok(partials)
    }

    /// Freeness spot check: enumerate all reduced words up to `max_len`,
    /// renormalize to the canonical PSL(2, ℝ) sign, and verify that they are
    /// pairwise distinct matrices separated by more than `min_sep` in the
    /// max-entry norm. Returns the number of words checked.
    pub fn freeness_spot_check(&self, max_len: u32, min_sep: f64) -> Result<u64> {
        let mut mats: Vec<Matrix2> = Vec::new();
        for n in 0..=max_len {
            self.for_each_word_of_len(n, WordFilter::default(), &mut |m, _| {
                mats.push(m.renormalize().expect("group products stay unimodular"));
            });
        }
        for i in 0..mats.len() {
            for j in (i + 1)..mats.len() {
                let (p, q) = (&mats[i], &mats[j]);
                // Early exit on the first entry for speed.
                if (p.a - q.a).abs() > min_sep {
                    continue;
                }
                let sep = (p.b - q.b)
                    .abs()
                    .max((p.c - q.c).abs())
                    .max((p.d - q.d).abs())
                    .max((p.a - q.a).abs());
                if sep <= min_sep {
                    return Err(Error::domain(format!(
                        "freeness check failed: words #{i} and #{j} coincide within {min_sep:e}"
                    )));
                }
            }
        }
        Ok(mats.len() as u64)
    }

    /// The conjugated generator list `h g h⁻¹` (used to re-normalize a
    /// geodesic's axis onto iℝ₊ before series evaluation).
    pub fn conjugated_generators(&self, h: &Matrix2) -> Vec<Matrix2> {
        let hi = h.inv();
        self.generators.iter().map(|g| h.mul(g).mul(&hi)).collect()
    }
}

/// Estimate of the exponent of convergence, with the counts it was fit to.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DeltaEstimate {
    /// Fitted slope of `log N(R)` on the last half of the radius grid.
    pub delta: f64,
    /// `(R, N(R))` pairs over the full grid.
    pub counts: Vec<(f64, u64)>,
}

/// Visit every reduced word of length exactly `n` over an arbitrary
/// generator list (not necessarily certificate-checked — used internally for
/// conjugated generator systems), in the same deterministic order as
/// [`FuchsianGroup::for_each_word_of_len`].
pub fn walk_words<F: FnMut(&Matrix2, &[i8])>(
    gens: &[Matrix2],
    invs: &[Matrix2],
    n: u32,
    filter: WordFilter,
    f: &mut F,
) {
    if n == 0 {
        f(&Matrix2::identity(), &[]);
        return;
    }
    let mut word: Vec<i8> = Vec::with_capacity(n as usize);
    let mut mats: Vec<Matrix2> = Vec::with_capacity(n as usize + 1);
    mats.push(Matrix2::identity());
    walk_dfs(gens, invs, n, filter, &mut word, &mut mats, f);
}

fn walk_dfs<F: FnMut(&Matrix2, &[i8])>(
    gens: &[Matrix2],
    invs: &[Matrix2],
    target: u32,
    filter: WordFilter,
    word: &mut Vec<i8>,
    mats: &mut Vec<Matrix2>,
    f: &mut F,
) {
    let depth = word.len() as u32;
    if depth == target {
        f(mats.last().unwrap(), word);
        return;
    }
    let last = *word.last().unwrap_or(&0);
    for idx in 0..gens.len() {
        if depth == 0 && filter.first_excluded == Some(idx) {
            continue;
        }
        if depth + 1 == target && filter.last_excluded == Some(idx) {
            continue;
        }
        for letter in [(idx as i8) + 1, -((idx as i8) + 1)] {
            if letter == -last {
                continue; // keep the word reduced
            }
            word.push(letter);
            let m = if letter > 0 {
                mats.last().unwrap().mul(&gens[idx])
            } else {
                mats.last().unwrap().mul(&invs[idx])
            };
            mats.push(m);
            walk_dfs(gens, invs, target, filter, word, mats, f);
            mats.pop();
            word.pop();
        }
    }
}

fn expect_params<const N: usize>(name: &str, params: &[f64]) -> Result<[f64; N]> {
    if params.len() != N {
        return Err(Error::config(format!(
            "preset '{name}' takes {N} parameter(s), got {}",
            params.len()
        )));
    }
    let mut out = [0.0; N];
    out.copy_from_slice(params);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_validation() {
        assert!(FuchsianGroup::cyclic_hyperbolic(1.0).is_ok());
        assert!(FuchsianGroup::cyclic_hyperbolic(-1.0).is_err());
        assert!(FuchsianGroup::parabolic_pair(3.0).is_ok());
        assert!(FuchsianGroup::parabolic_pair(2.0).is_err());
        assert!(FuchsianGroup::schottky_torus(4.0, 4.0).is_ok());
        // tanh(m/4) ≤ e^{-t/2}: not in ping-pong position.
        assert!(FuchsianGroup::schottky_torus(0.5, 0.5).is_err());
        assert!(FuchsianGroup::build_preset("no_such", &[]).is_err());
        assert!(FuchsianGroup::build_preset("schottky_torus", &[4.0]).is_err());
    }

    #[test]
    fn word_counts_are_exact() {
        // Rank 2: shell n has 4·3^{n-1} reduced words.
        let g = FuchsianGroup::schottky_torus(4.0, 4.0).unwrap();
        for n in 1..=6u32 {
            let mut count = 0u64;
            g.for_each_word_of_len(n, WordFilter::default(), &mut |_, _| count += 1);
            assert_eq!(count, 4 * 3u64.pow(n - 1), "shell {n}");
        }
        // Rank 1: two words per shell.
        let c = FuchsianGroup::cyclic_hyperbolic(1.0).unwrap();
        for n in 1..=5u32 {
            let mut count = 0u64;
            c.for_each_word_of_len(n, WordFilter::default(), &mut |_, _| count += 1);
            assert_eq!(count, 2);
        }
    }

    #[test]
    fn filtered_counts() {
        let g = FuchsianGroup::parabolic_pair(3.0).unwrap();
        // First letter excluded: shells have 2·3^{n-1} words.
        let reps = g.coset_representatives(0, 4).unwrap();
        let expect: u64 = 1 + (1..=4).map(|n| 2 * 3u64.pow(n - 1)).sum::<u64>();
        assert_eq!(reps.len() as u64, expect);
        assert!(reps.iter().all(|e| e.word.first().map_or(true, |&l| l.abs() != 1)));
        // Last letter excluded symmetric count.
        let mut count = 0u64;
        let filter = WordFilter { last_excluded: Some(0), ..Default::default() };
        for n in 1..=4 {
            g.for_each_word_of_len(n, filter, &mut |_, w| {
                assert!(w.last().unwrap().abs() != 1);
                count += 1;
            });
        }
        assert_eq!(count, (1..=4).map(|n| 2 * 3u64.pow(n - 1)).sum::<u64>());
    }

    #[test]
    fn words_multiply_correctly() {
        let g = FuchsianGroup::schottky_torus(4.0, 4.0).unwrap();
        g.for_each_word_of_len(3, WordFilter::default(), &mut |m, w| {
            let direct = g.word_matrix(w).unwrap();
            assert!((m.a - direct.a).abs() < 1e-12);
            assert!((m.d - direct.d).abs() < 1e-12);
        });
    }

    #[test]
    fn canonical_coset_form_strips_leading_powers() {
        let g = FuchsianGroup::parabolic_pair(3.0).unwrap();
        let (w, p) = g.canonical_coset_form(&[1, 1, 2, -1], 0);
        assert_eq!(w, vec![2, -1]);
        assert_eq!(p, 2);
        let (w, p) = g.canonical_coset_form(&[-1, -1, -1, 2], 0);
        assert_eq!(w, vec![2]);
        assert_eq!(p, -3);
        let (w, p) = g.canonical_coset_form(&[2, 1], 0);
        assert_eq!(w, vec![2, 1]);
        assert_eq!(p, 0);
    }

    #[test]
    fn cusp_scalings_standardize_the_stabilizer() {
        let g = FuchsianGroup::parabolic_pair(3.0).unwrap();
        for cusp in g.cusps() {
            let sigma = cusp.scaling;
            assert!((sigma.det() - 1.0).abs() < 1e-12);
            let gen = g.generators()[cusp.generator_index];
            let std = sigma.inv().mul(&gen).mul(&sigma);
            // σ⁻¹ γ_A σ = (1 ±1; 0 1).
            assert!((std.a - 1.0).abs() < 1e-12, "std = {std:?}");
            assert!((std.d - 1.0).abs() < 1e-12);
            assert!(std.c.abs() < 1e-12);
            assert!((std.b.abs() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn orbit_ball_matches_enumeration_on_cyclic() {
        // cyclic_hyperbolic(1): orbit of i is { i e^n }, N(R) = 2⌊R⌋ + 1.
        let g = FuchsianGroup::cyclic_hyperbolic(1.0).unwrap();
        let base = C::new(0.0, 1.0);
        for r in [0.5, 1.5, 5.5, 20.5] {
            let n = g.orbital_count(base, r).unwrap();
            assert_eq!(n, 2 * (r.floor() as u64) + 1, "R = {r}");
        }
    }

    #[test]
    fn orbit_ball_matches_enumeration_on_parabolic_pair() {
        let g = FuchsianGroup::parabolic_pair(3.0).unwrap();
        let base = C::new(0.0, 1.0);
        let r = 5.0;
        let ball = g.orbit_ball(base, r).unwrap();
        // Brute force over word length 12 (enough: d(i, γi) ≤ 5 needs the
        // matrix entries ≤ e^{2.5} ~ 12, so words stay short or parabolic).
        let mut brute = 0u64;
        for n in 0..=12 {
            g.for_each_word_of_len(n, WordFilter::default(), &mut |m, _| {
                if hyperbolic_distance(base, m.apply(base)).unwrap() <= r {
                    brute += 1;
                }
            });
        }
        assert_eq!(ball.len() as u64, brute);
    }

    #[test]
    fn delta_estimate_cyclic_groups() {
        let g = FuchsianGroup::cyclic_hyperbolic(1.0).unwrap();
        let grid: Vec<f64> = (1..=20).map(|k| k as f64).collect();
        let est = g.estimate_delta(C::new(0.0, 1.0), &grid).unwrap();
        assert!(est.delta.abs() <= 0.1, "cyclic hyperbolic δ̂ = {}", est.delta);
        // cyclic parabolic: N(R) ~ 4 sinh(R/2), slope → 1/2.
        let p = FuchsianGroup::cyclic_parabolic().unwrap();
        let grid: Vec<f64> = (4..=22).map(|k| k as f64).collect();
        let est = p.estimate_delta(C::new(0.0, 1.0), &grid).unwrap();
        assert!((est.delta - 0.5).abs() <= 0.1, "cyclic parabolic δ̂ = {}", est.delta);
    }

    #[test]
    fn freeness_spot_check_small() {
        let g = FuchsianGroup::parabolic_pair(3.0).unwrap();
        let n = g.freeness_spot_check(5, 1e-6).unwrap();
        // 1 + Σ_{n=1}^{5} 4·3^{n-1} = 1 + 4·121 = 485 words checked.
        assert_eq!(n, 485);
    }

    #[test]
    fn counting_partials_monotone() {
        let g = FuchsianGroup::parabolic_pair(3.0).unwrap();
        let p = g.counting_bound_partials(3.0, C::new(0.0, 1.0), 6).unwrap();
        assert_eq!(p.len(), 7);
        assert!(p.windows(2).all(|w| w[1] >= w[0]));
        assert!(p[6] < 1.0, "partials stay small: {}", p[6]);
    }
}
