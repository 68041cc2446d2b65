//! Property-based tests: randomized algebraic identities for the Möbius
//! layer, the word engine, the special functions, and the series families.
//!
//! Each property states an exact identity of the underlying objects; the
//! tolerances only absorb floating-point roundoff and (where a series is
//! truncated) a documented truncation margin.

use hypeisen::group::FuchsianGroup;
use hypeisen::hypgeom::{
    fermi_coordinates, fermi_to_point, hyperbolic_distance, Matrix2,
};
use hypeisen::series::{
    hyperbolic_eisenstein, parabolic_eisenstein, weight_q_series, Truncation,
};
use hypeisen::specfun::{b_factor, complex_gamma, k_factor};
use hypeisen::C;
use proptest::prelude::*;

// ---------------------------------------------------------------------------
// Strategies
// ---------------------------------------------------------------------------

/// A point of the upper half-plane in a well-conditioned box.
fn z_in_h() -> impl Strategy<Value = C> {
    (-4.0f64..4.0, 0.05f64..8.0).prop_map(|(x, y)| C::new(x, y))
}

/// A Möbius transformation with determinant bounded away from zero, so
/// `from_unnormalized` is well-conditioned.
fn moebius() -> impl Strategy<Value = Matrix2> {
    (-3.0f64..3.0, -3.0f64..3.0, -3.0f64..3.0, -3.0f64..3.0)
        .prop_filter_map("determinant too small", |(a, b, c, d)| {
            if (a * d - b * c).abs() < 0.2 {
                return None;
            }
            // Orientation-preserving: flip a row if the determinant is
            // negative (Möbius maps of H need det > 0).
            let m = if a * d - b * c > 0.0 {
                Matrix2::from_unnormalized(a, b, c, d)
            } else {
                Matrix2::from_unnormalized(-a, -b, c, d)
            };
            m.ok()
        })
}

/// A reduced word over the rank-2 alphabet {±1, ±2}.
fn reduced_word() -> impl Strategy<Value = Vec<i8>> {
    proptest::collection::vec(
        prop_oneof![Just(1i8), Just(-1i8), Just(2i8), Just(-2i8)],
        0..8,
    )
    .prop_map(|raw| {
        let mut out: Vec<i8> = Vec::with_capacity(raw.len());
        for l in raw {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        out
    })
}

fn rel_err(got: C, want: C) -> f64 {
    (got - want).norm() / (1.0 + want.norm())
}

// ---------------------------------------------------------------------------
// Möbius layer
// ---------------------------------------------------------------------------

proptest! {
    /// (AB)·z = A·(B·z): the action is a homomorphism.
    #[test]
    fn moebius_action_is_a_homomorphism(a in moebius(), b in moebius(), z in z_in_h()) {
        let lhs = a.mul(&b).apply(z);
        let rhs = a.apply(b.apply(z));
        prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()),
            "composite action differs: {lhs} vs {rhs}");
    }

    /// `from_unnormalized` lands in SL(2,R) and `inv` is a two-sided inverse.
    #[test]
    fn moebius_inverse_and_determinant(m in moebius()) {
        prop_assert!((m.det() - 1.0).abs() <= 1e-12);
        let e = m.mul(&m.inv());
        prop_assert!(e.is_identity(1e-10), "m·m⁻¹ = {e:?} is not the identity");
    }

    /// The chain rule: (AB)'(z) = A'(Bz)·B'(z).
    #[test]
    fn moebius_derivative_chain_rule(a in moebius(), b in moebius(), z in z_in_h()) {
        let lhs = a.mul(&b).deriv(z);
        let rhs = a.deriv(b.apply(z)) * b.deriv(z);
        prop_assert!(rel_err(lhs, rhs) <= 1e-10);
    }

    /// Hyperbolic distance is Möbius-invariant.
    #[test]
    fn hyperbolic_distance_is_invariant(m in moebius(), z in z_in_h(), w in z_in_h()) {
        let d = hyperbolic_distance(z, w).unwrap();
        let dm = hyperbolic_distance(m.apply(z), m.apply(w)).unwrap();
        prop_assert!((d - dm).abs() <= 1e-9 * (1.0 + d),
            "d(z,w) = {d} but d(mz,mw) = {dm}");
    }

    /// Fermi coordinates round-trip through their inverse chart.
    #[test]
    fn fermi_coordinates_round_trip(z in z_in_h()) {
        let back = fermi_to_point(fermi_coordinates(z).unwrap());
        prop_assert!((back - z).norm() <= 1e-10 * (1.0 + z.norm()));
    }
}

// ---------------------------------------------------------------------------
// Word engine
// ---------------------------------------------------------------------------

proptest! {
    /// Coset canonicalization: idempotent, never stabilizer-led, and the
    /// extracted power recombines to the original element.
    #[test]
    fn coset_canonical_form_is_consistent(word in reduced_word(), extra in -3i64..=3) {
        let group = FuchsianGroup::schottky_torus(4.0, 4.0).unwrap();
        let (rep, power) = group.canonical_coset_form(&word, 0);

        // Idempotence: a representative canonicalizes to itself with power 0.
        let (rep2, p2) = group.canonical_coset_form(&rep, 0);
        prop_assert_eq!(&rep2, &rep);
        prop_assert_eq!(p2, 0);
        prop_assert!(rep.first().map_or(true, |&l| l.abs() != 1),
            "representative starts with a stabilizer letter: {:?}", rep);

        // stab^power · rep is the original element, as matrices (up to the
        // PSL sign, which `apply` quotients out).
        let mut recombined = Matrix2::identity();
        let stab_letter: i8 = if power >= 0 { 1 } else { -1 };
        for _ in 0..power.unsigned_abs() {
            recombined = recombined.mul(group.letter_matrix(stab_letter));
        }
        recombined = recombined.mul(&group.word_matrix(&rep).unwrap());
        let original = group.word_matrix(&word).unwrap();
        let z = C::new(0.3, 1.1);
        prop_assert!((recombined.apply(z) - original.apply(z)).norm() <= 1e-9);

        // Left-multiplying by a stabilizer power shifts the power and
        // nothing else.
        let mut shifted: Vec<i8> = Vec::new();
        let extra_letter: i8 = if extra >= 0 { 1 } else { -1 };
        for _ in 0..extra.unsigned_abs() {
            shifted.push(extra_letter);
        }
        for &l in &word {
            if shifted.last() == Some(&-l) {
                shifted.pop();
            } else {
                shifted.push(l);
            }
        }
        let (rep3, p3) = group.canonical_coset_form(&shifted, 0);
        prop_assert_eq!(&rep3, &rep);
        prop_assert_eq!(p3, power + extra);
    }
}

// ---------------------------------------------------------------------------
// Special functions
// ---------------------------------------------------------------------------

proptest! {
    /// Γ(z+1) = z·Γ(z) on a strip where the implementation is well away
    /// from poles.
    #[test]
    fn gamma_recurrence(re in 0.3f64..4.0, im in -4.0f64..4.0) {
        let z = C::new(re, im);
        let lhs = complex_gamma(z + 1.0).unwrap();
        let rhs = z * complex_gamma(z).unwrap();
        prop_assert!(rel_err(lhs, rhs) <= 1e-10, "Γ(z+1) vs zΓ(z) at z = {z}");
    }

    /// b_q(s+2) = s(s−1)/(s²−q²)·b_q(s) and b_1(s) = k(s−1).
    #[test]
    fn b_factor_recurrence_and_k_link(sre in 2.6f64..6.0, sim in -2.0f64..2.0, q in 0u32..4) {
        let s = C::new(sre, sim);
        let qi = q as i32;
        let lhs = b_factor(qi, s + 2.0).unwrap();
        let rhs = b_factor(qi, s).unwrap() * s * (s - 1.0)
            / (s * s - C::new((q * q) as f64, 0.0));
        prop_assert!(rel_err(lhs, rhs) <= 1e-10, "b_{q} recurrence at s = {s}");

        let b1 = b_factor(1, s).unwrap();
        let k = k_factor(s - 1.0).unwrap();
        prop_assert!(rel_err(b1, k) <= 1e-10, "b_1(s) vs k(s-1) at s = {s}");
    }
}

// ---------------------------------------------------------------------------
// Series families
// ---------------------------------------------------------------------------

/// On the cyclic hyperbolic group every series reduces to its identity
/// coset, so the identities below hold to roundoff, with no truncation
/// margin; the Schottky automorphy test then exercises the full orbit sum.
fn cyclic() -> FuchsianGroup {
    FuchsianGroup::cyclic_hyperbolic(1.0).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    /// Ω(s) = −A_{c,1}(s+1) / (2i·k(s)): the two families are one object in
    /// two normalizations.
    #[test]
    fn omega_matches_weight_one_series(
        x in -2.0f64..2.0, y in 0.3f64..3.0, sre in 0.7f64..2.5,
    ) {
        let g = cyclic();
        let z = C::new(x, y);
        let s = C::new(sre, 0.0);
        let t = Truncation::default();
        let omega = hyperbolic_eisenstein(&g, 0, s, z, &t).unwrap();
        let a1 = weight_q_series(&g, 0, 1, s + 1.0, z, &t, false).unwrap();
        let want = -a1.form.dz_coeff / (C::new(0.0, 2.0) * k_factor(s).unwrap());
        prop_assert!(rel_err(omega.form.dz_coeff, want) <= 1e-10);
        // Ω is a real form: the dz̄-coefficient is the conjugate.
        prop_assert!(rel_err(omega.form.dzbar_coeff, omega.form.dz_coeff.conj()) <= 1e-12);
    }

    /// Ξ_{c,q} = A_{c,q} / b_q(s) and the lift is y^q times the coefficient.
    #[test]
    fn xi_normalization_and_lift(
        x in -2.0f64..2.0, y in 0.3f64..3.0, sre in 3.0f64..5.0, q in 1u32..3,
    ) {
        let g = cyclic();
        let z = C::new(x, y);
        let s = C::new(sre, 0.0);
        let t = Truncation::default();
        let a = weight_q_series(&g, 0, q, s, z, &t, false).unwrap();
        let xi = weight_q_series(&g, 0, q, s, z, &t, true).unwrap();
        let b = b_factor(q as i32, s).unwrap();
        prop_assert!(rel_err(xi.form.dz_coeff * b, a.form.dz_coeff) <= 1e-11);
        let lift = C::new(z.im, 0.0).powi(q as i32) * a.form.dz_coeff;
        prop_assert!(rel_err(a.form.auto_lift, lift) <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    /// Full-group automorphy of Ω on the Schottky torus: pulling the form
    /// back through a generator reproduces it. The series is truncated at a
    /// fixed word length; at s ≥ 1 the missing boundary shells contribute
    /// below 1e−9, so the 1e−7 gate is pure truncation margin.
    #[test]
    fn omega_is_group_invariant_on_schottky(
        x in -0.4f64..0.4, y in 0.6f64..1.4, sre in 1.0f64..2.5,
        letter in prop_oneof![Just(1i8), Just(-1i8), Just(2i8), Just(-2i8)],
    ) {
        let g = FuchsianGroup::schottky_torus(4.0, 4.0).unwrap();
        let z = C::new(x, y);
        let s = C::new(sre, 0.0);
        let t = Truncation::fixed_shells(8);
        let gamma = g.letter_matrix(letter);
        let at_z = hyperbolic_eisenstein(&g, 0, s, z, &t).unwrap().form;
        let at_gz = hyperbolic_eisenstein(&g, 0, s, gamma.apply(z), &t).unwrap().form;
        let dz_pullback = at_gz.dz_coeff * gamma.deriv(z);
        let dzbar_pullback = at_gz.dzbar_coeff * gamma.deriv(z).conj();
        prop_assert!(rel_err(dz_pullback, at_z.dz_coeff) <= 1e-7,
            "dz-part not invariant under letter {letter} at z = {z}, s = {s}");
        prop_assert!(rel_err(dzbar_pullback, at_z.dzbar_coeff) <= 1e-7,
            "dz̄-part not invariant under letter {letter} at z = {z}, s = {s}");
    }

    /// Automorphy of the parabolic lift through the j-factor on the
    /// elementary cusp group (single coset: exact up to roundoff).
    #[test]
    fn parabolic_lift_automorphy_on_cusp_group(
        x in -2.0f64..2.0, y in 0.4f64..3.0, sre in 1.5f64..3.5, q in 0u32..3,
    ) {
        let g = FuchsianGroup::cyclic_parabolic().unwrap();
        let z = C::new(x, y);
        let s = C::new(sre, 0.0);
        let t = Truncation::default();
        let gamma = g.generators()[0].clone();
        let e_z = parabolic_eisenstein(&g, 0, q, s, z, &t).unwrap();
        let e_gz = parabolic_eisenstein(&g, 0, q, s, gamma.apply(z), &t).unwrap();
        let want = gamma.j_factor(z).powi(q as i32) * e_z.form.auto_lift;
        prop_assert!(rel_err(e_gz.form.auto_lift, want) <= 1e-10,
            "lift automorphy fails at z = {z}, s = {s}, q = {q}");
    }
}
