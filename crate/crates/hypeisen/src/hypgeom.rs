//! Upper half-plane geometry: points, unimodular matrices and their Möbius
//! action, hyperbolic distance, Fermi coordinates across the imaginary-axis
//! geodesic, geodesics with boundary endpoints, and small closed-form
//! geometric quantities (collar half-width, Poisson kernel).
//!
//! Conventions:
//!
//! ```text
//!   z = x + iy,  y > 0;        γ = (a b; c d),  det γ = 1,
//!   γz = (az+b)/(cz+d),        γ'(z) = (cz+d)^{-2},
//!   j_γ(z) = (cz+d)/(c z̄+d)    (weight-2 unitary cocycle),
//!   cosh d(z,w) = 1 + |z-w|² / (2 Im z Im w),
//!   Fermi across iℝ₊:  x₁ = log|z|,  sinh x₂ = x/y   (x₂ > 0 for x > 0),
//!   so sin θ(z) = y/|z| = sech x₂ and cos θ = tanh x₂.
//! ```

use crate::error::{Error, Result};
use crate::specfun::C;
use serde::{Deserialize, Serialize};

/// Tolerance for the det-1 validation of [`Matrix2::new`].
const DET_TOL: f64 = 1e-12;

// ---------------------------------------------------------------------------
// Points
// ---------------------------------------------------------------------------

/// A point of the upper half-plane, stored as `(x, y)` with `y > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointH {
    /// Real part.
    pub x: f64,
    /// Imaginary part, strictly positive.
    pub y: f64,
}

impl PointH {
    /// Validated constructor; `y` must be strictly positive and finite.
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(y > 0.0) || !y.is_finite() || !x.is_finite() {
            return Err(Error::domain(format!(
                "point ({x}, {y}) is not in the upper half-plane"
            )));
        }
        Ok(PointH { x, y })
    }

    /// View as a complex number.
    pub fn to_c(self) -> C {
        C::new(self.x, self.y)
    }

    /// Validated conversion from a complex number.
    pub fn from_c(z: C) -> Result<Self> {
        PointH::new(z.re, z.im)
    }
}

/// A point of the boundary circle ∂H = ℝ ∪ {∞}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Boundary {
    /// A real boundary point.
    Real(f64),
    /// The point at infinity.
    Infinity,
}

impl Boundary {
    /// Euclidean-comparison equality with a small tolerance (∞ only equals ∞).
    pub fn approx_eq(self, other: Boundary, tol: f64) -> bool {
        match (self, other) {
            (Boundary::Infinity, Boundary::Infinity) => true,
            (Boundary::Real(a), Boundary::Real(b)) => (a - b).abs() <= tol,
            _ => false,
        }
    }
}

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

/// A real 2×2 matrix of determinant 1 (an element of SL(2, ℝ)).
///
/// The group action on H factors through PSL(2, ℝ); where a concrete matrix
/// is needed, [`Matrix2::renormalize`] fixes the sign so that the first
/// nonzero entry of the pair `(a, c)` is positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Matrix2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Matrix2 {
    /// Validated constructor: requires `|ad - bc - 1| ≤ 1e-12`.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if (det - 1.0).abs() > DET_TOL {
            return Err(Error::domain(format!(
                "matrix ({a}, {b}; {c}, {d}) has det {det}, not 1"
            )));
        }
        Ok(Matrix2 { a, b, c, d })
    }

    /// Constructor that rescales an arbitrary positive-determinant matrix to
    /// determinant 1.
    pub fn from_unnormalized(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !(det > 0.0) || !det.is_finite() {
            return Err(Error::domain(format!(
                "matrix ({a}, {b}; {c}, {d}) has non-positive det {det}"
            )));
        }
        let r = det.sqrt();
        Ok(Matrix2 { a: a / r, b: b / r, c: c / r, d: d / r })
    }

    /// The identity.
    pub fn identity() -> Self {
        Matrix2 { a: 1.0, b: 0.0, c: 0.0, d: 1.0 }
    }

    /// Parabolic translation `z ↦ z + t`.
    pub fn translation(t: f64) -> Self {
        Matrix2 { a: 1.0, b: t, c: 0.0, d: 1.0 }
    }

    /// Hyperbolic element `diag(e^{l/2}, e^{-l/2})`, translating by `l` along
    /// the imaginary-axis geodesic (`z ↦ e^l z`).
    pub fn dilation(l: f64) -> Self {
        let e = (l / 2.0).exp();
        Matrix2 { a: e, b: 0.0, c: 0.0, d: 1.0 / e }
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &Matrix2) -> Matrix2 {
        Matrix2 {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }

    /// Inverse (uses det = 1: `(d, -b; -c, a)`).
    pub fn inv(&self) -> Matrix2 {
        Matrix2 { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// Trace `a + d`.
    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    /// Determinant (exactly as stored; 1 up to accumulated rounding).
    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    /// Rescale to determinant exactly 1 (correcting drift from long products)
    /// and fix the PSL(2, ℝ) sign so the first nonzero of `(a, c)` is
    /// positive. Errors if the determinant has degenerated to ≤ 0.
    pub fn renormalize(&self) -> Result<Matrix2> {
        let det = self.det();
        if !(det > 0.0) || !det.is_finite() {
            return Err(Error::domain(format!("matrix determinant degenerated to {det}")));
        }
        let r = det.sqrt();
        let mut m = Matrix2 { a: self.a / r, b: self.b / r, c: self.c / r, d: self.d / r };
        let lead = if m.a.abs() > 1e-14 { m.a } else { m.c };
        if lead < 0.0 {
            m = Matrix2 { a: -m.a, b: -m.b, c: -m.c, d: -m.d };
        }
        Ok(m)
    }

    /// Möbius action `γz = (az+b)/(cz+d)` on an interior point.
    pub fn apply(&self, z: C) -> C {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    /// Action on the boundary circle.
    pub fn apply_boundary(&self, b: Boundary) -> Boundary {
        match b {
            Boundary::Infinity => {
                if self.c.abs() < 1e-300 {
                    Boundary::Infinity
                } else {
                    Boundary::Real(self.a / self.c)
                }
            }
            Boundary::Real(x) => {
                let den = self.c * x + self.d;
                if den.abs() < 1e-300 {
                    Boundary::Infinity
                } else {
                    Boundary::Real((self.a * x + self.b) / den)
                }
            }
        }
    }

    /// Complex derivative `γ'(z) = (cz+d)^{-2}`.
    pub fn deriv(&self, z: C) -> C {
        let den = self.c * z + self.d;
        1.0 / (den * den)
    }

    /// Weight-2 unitary cocycle `j_γ(z) = (cz+d)/(c z̄+d)`, of modulus 1.
    pub fn j_factor(&self, z: C) -> C {
        let den = self.c * z + self.d;
        let den_bar = self.c * z.conj() + self.d;
        den / den_bar
    }

    /// `|γ'| = 1`-normalized derivative `γ'(z)/|γ'(z)| = j_γ(z)^{-1}`.
    pub fn unit_deriv(&self, z: C) -> C {
        self.j_factor(z).conj()
    }

    /// Translation length `2 arccosh(|tr|/2)` of a hyperbolic element.
    /// Errors unless `|tr| > 2` (by more than 1e-12).
    pub fn translation_length(&self) -> Result<f64> {
        let t = self.trace().abs();
        if t <= 2.0 + 1e-12 {
            return Err(Error::domain(format!(
                "translation length needs |trace| > 2, got {t}"
            )));
        }
        Ok(2.0 * (t / 2.0).acosh())
    }

    /// True when `|trace| > 2 + 1e-9` (hyperbolic/loxodromic type).
    pub fn is_hyperbolic(&self) -> bool {
        self.trace().abs() > 2.0 + 1e-9
    }

    /// True when `|trace| = 2` to within 1e-9 and the element is not the
    /// identity (parabolic type).
    pub fn is_parabolic(&self) -> bool {
        (self.trace().abs() - 2.0).abs() <= 1e-9 && !self.is_identity(1e-9)
    }

    /// True when the matrix equals ±identity entrywise to within `tol`.
    pub fn is_identity(&self, tol: f64) -> bool {
        let close = |m: &Matrix2| {
            (m.a - 1.0).abs() <= tol
                && m.b.abs() <= tol
                && m.c.abs() <= tol
                && (m.d - 1.0).abs() <= tol
        };
        close(self) || close(&Matrix2 { a: -self.a, b: -self.b, c: -self.c, d: -self.d })
    }

    /// Attracting and repelling fixed points of a hyperbolic element,
    /// returned as `(repelling, attracting)`.
    pub fn fixed_points(&self) -> Result<(Boundary, Boundary)> {
        if !self.is_hyperbolic() {
            return Err(Error::domain("fixed_points requires a hyperbolic element"));
        }
        if self.c.abs() < 1e-14 {
            // Fixed points ∞ and b/(d-a).
            let finite = Boundary::Real(self.b / (self.d - self.a));
            // ∞ attracting iff |a| > |d| (derivative at ∞ is (a/d)²... > 1).
            if self.a.abs() > self.d.abs() {
                return Ok((finite, Boundary::Infinity));
            }
            return Ok((Boundary::Infinity, finite));
        }
        let tr = self.trace();
        let disc = (tr * tr - 4.0).sqrt();
        let r1 = (self.a - self.d + disc) / (2.0 * self.c);
        let r2 = (self.a - self.d - disc) / (2.0 * self.c);
        // Attracting fixed point x has |c x + d| > 1.
        let m1 = (self.c * r1 + self.d).abs();
        if m1 > 1.0 {
            Ok((Boundary::Real(r2), Boundary::Real(r1)))
        } else {
            Ok((Boundary::Real(r1), Boundary::Real(r2)))
        }
    }
}

// ---------------------------------------------------------------------------
// Distance and Fermi coordinates
// ---------------------------------------------------------------------------

/// Hyperbolic distance `d(z, w)` with `cosh d = 1 + |z-w|²/(2 y y')`.
///
/// For nearly coincident points (`d < 1e-6`) the arccosh form loses half the
/// significant digits, so the expansion
/// `d = u (1 - u²/24 + O(u⁴))`, `u = |z-w|/√(y y')`, is used instead.
pub fn hyperbolic_distance(z: C, w: C) -> Result<f64> {
    let (y1, y2) = (z.im, w.im);
    if !(y1 > 0.0) || !(y2 > 0.0) {
        return Err(Error::domain("hyperbolic_distance requires points in H"));
    }
    let n2 = (z - w).norm_sqr();
    let u2 = n2 / (y1 * y2);
    if u2 < 1e-12 {
        let u = u2.sqrt();
        return Ok(u * (1.0 - u2 / 24.0));
    }
    Ok((1.0 + u2 / 2.0).acosh())
}

/// Fermi coordinates of `z` across the imaginary-axis geodesic:
/// `x₁ = log|z|` (arc length along the axis), `x₂ = arcsinh(x/y)` (signed
/// distance from the axis, positive on the right half-plane).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FermiCoords {
    /// Arc-length coordinate along the axis.
    pub x1: f64,
    /// Signed distance from the axis (positive for `Re z > 0`).
    pub x2: f64,
}

/// Fermi coordinates of an interior point (see [`FermiCoords`]).
///
/// `sinh x₂ = x/y` is exact and stable for all positions, including points on
/// the axis and points near the boundary.
pub fn fermi_coordinates(z: C) -> Result<FermiCoords> {
    if !(z.im > 0.0) {
        return Err(Error::domain("fermi_coordinates requires Im z > 0"));
    }
    Ok(FermiCoords {
        x1: z.norm().ln(),
        x2: (z.re / z.im).asinh(),
    })
}

/// Inverse of [`fermi_coordinates`]:
/// `z = e^{x₁} (tanh x₂ + i sech x₂)`.
pub fn fermi_to_point(f: FermiCoords) -> C {
    let r = f.x1.exp();
    let t = f.x2.tanh();
    let s = 1.0 / f.x2.cosh();
    C::new(r * t, r * s)
}

/// Half-width of the standard collar around a closed geodesic of length `l`:
/// `sinh(w) = 1/sinh(l/2)`.
pub fn collar_halfwidth(l: f64) -> Result<f64> {
    if !(l > 0.0) {
        return Err(Error::domain("collar_halfwidth requires l > 0"));
    }
    Ok((1.0 / (l / 2.0).sinh()).asinh())
}

/// Poisson kernel `P(z, b) = Im z / |z - b|²` for real `b`, `P(z, ∞) = Im z`.
pub fn poisson_kernel(z: C, b: Boundary) -> Result<f64> {
    if !(z.im > 0.0) {
        return Err(Error::domain("poisson_kernel requires Im z > 0"));
    }
    match b {
        Boundary::Infinity => Ok(z.im),
        Boundary::Real(x) => {
            let d2 = (z - C::new(x, 0.0)).norm_sqr();
            if d2 == 0.0 {
                return Err(Error::domain("poisson_kernel singular: z = b"));
            }
            Ok(z.im / d2)
        }
    }
}

/// Boundary pairing `(z, b) = (z̄ - b)/(z - b)` for real `b`; `(z, ∞) = 1`.
///
/// Of modulus 1; transforms by `(γz, γb) = (z, b) · j_γ(z)` under the group
/// action.
pub fn boundary_pairing(z: C, b: Boundary) -> C {
    match b {
        Boundary::Infinity => C::new(1.0, 0.0),
        Boundary::Real(x) => (z.conj() - x) / (z - x),
    }
}

// ---------------------------------------------------------------------------
// Geodesics
// ---------------------------------------------------------------------------

/// An oriented complete geodesic, specified by its boundary endpoints
/// (from `p` to `q`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Geodesic {
    /// Starting endpoint (repelling, for the axis of a hyperbolic element).
    pub p: Boundary,
    /// Ending endpoint (attracting).
    pub q: Boundary,
}

impl Geodesic {
    /// Geodesic from `p` to `q`; the endpoints must be distinct.
    pub fn new(p: Boundary, q: Boundary) -> Result<Self> {
        if p.approx_eq(q, 0.0) {
            return Err(Error::domain("geodesic endpoints must be distinct"));
        }
        Ok(Geodesic { p, q })
    }

    /// The oriented axis of a hyperbolic element, repelling → attracting
    /// fixed point (so the element translates along its axis in the positive
    /// direction).
    pub fn axis_of(m: &Matrix2) -> Result<Self> {
        let (rep, att) = m.fixed_points()?;
        Geodesic::new(rep, att)
    }

    /// A matrix in SL(2, ℝ) carrying this geodesic to the standard one
    /// (imaginary axis oriented 0 → ∞): `p ↦ 0`, `q ↦ ∞`.
    pub fn to_standard(&self) -> Result<Matrix2> {
        match (self.p, self.q) {
            (Boundary::Infinity, Boundary::Infinity) => unreachable!("distinct endpoints"),
            (Boundary::Infinity, Boundary::Real(q)) => {
                // z ↦ -1/(z - q)
                Matrix2::from_unnormalized(0.0, -1.0, 1.0, -q)
            }
            (Boundary::Real(p), Boundary::Infinity) => {
                // z ↦ z - p
                Matrix2::from_unnormalized(1.0, -p, 0.0, 1.0)
            }
            (Boundary::Real(p), Boundary::Real(q)) => {
                if p > q {
                    // z ↦ (z-p)/(z-q), det = p - q > 0
                    Matrix2::from_unnormalized(1.0, -p, 1.0, -q)
                } else {
                    // z ↦ (p-z)/(z-q), det = q - p > 0
                    Matrix2::from_unnormalized(-1.0, p, 1.0, -q)
                }
            }
        }
    }

    /// Signed side of an interior point relative to the oriented geodesic:
    /// `+1` to the right, `-1` to the left, `0` on it (within `tol` of the
    /// standardized real part).
    pub fn side_of(&self, z: C, tol: f64) -> Result<i32> {
        let m = self.to_standard()?;
        let w = m.apply(z);
        if w.re > tol {
            Ok(1)
        } else if w.re < -tol {
            Ok(-1)
        } else {
            Ok(0)
        }
    }

    /// Distance between two complete geodesics: 0 if they intersect (in H or
    /// on the boundary), otherwise the length of the common perpendicular.
    ///
    /// After standardizing `self` to the imaginary axis, the other geodesic
    /// has endpoints `u, v` on ℝ ∪ {∞}; disjointness means `u, v` finite with
    /// the same sign, and then `cosh d = |u + v| / |v - u|`.
    pub fn distance_to(&self, other: &Geodesic) -> Result<f64> {
        let m = self.to_standard()?;
        let u = m.apply_boundary(other.p);
        let v = m.apply_boundary(other.q);
        match (u, v) {
            (Boundary::Real(u), Boundary::Real(v)) => {
                if u == 0.0 || v == 0.0 || u.signum() != v.signum() {
                    return Ok(0.0);
                }
                let c = (u + v).abs() / (v - u).abs();
                if c <= 1.0 {
                    Ok(0.0)
                } else {
                    Ok(c.acosh())
                }
            }
            // Sharing the endpoint ∞ (or crossing through it): distance 0.
            _ => Ok(0.0),
        }
    }

    /// Point at arc-length parameter `t` along the geodesic, measured from
    /// the point closest to `i` in standardized coordinates (`i e^t` pulled
    /// back).
    pub fn point_at(&self, t: f64) -> Result<C> {
        let m = self.to_standard()?;
        Ok(m.inv().apply(C::new(0.0, t.exp())))
    }
}
