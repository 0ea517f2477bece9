use crate::error::{GeoError, Result};
use crate::hyp::{acosh_1p, UhpPoint};

const DET_TOL: f64 = 1e-12;
const SIGN_TOL: f64 = 1e-12;

/// An orientation-preserving isometry of the upper half-plane: a real 2×2
/// matrix of determinant 1 acting by z ↦ (az+b)/(cz+d).
///
/// Entries are stored sign-normalized (the first entry of (a, b, c, d) with
/// absolute value above 1e−12 is positive), which gives one canonical matrix
/// per group element; this form is what equality, hashing and serialization
/// use. `exact` is true when all entries are integers held exactly.
#[derive(Debug, Clone, Copy)]
pub struct Isometry {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    exact: bool,
}

impl Isometry {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if (det - 1.0).abs() > DET_TOL || !det.is_finite() {
            return Err(GeoError::InvalidIsometry { a, b, c, d, det });
        }
        let exact = [a, b, c, d]
            .iter()
            .all(|e| e.fract() == 0.0 && e.abs() < 9e15);
        Ok(Self::normalized(a, b, c, d, exact))
    }

    pub fn from_integers(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let det = a as i128 * d as i128 - b as i128 * c as i128;
        if det != 1 {
            return Err(GeoError::InvalidIsometry {
                a: a as f64,
                b: b as f64,
                c: c as f64,
                d: d as f64,
                det: det as f64,
            });
        }
        Ok(Self::normalized(
            a as f64, b as f64, c as f64, d as f64, true,
        ))
    }

    pub fn identity() -> Self {
        Self {
            a: 1.0,
            b: 0.0,
            c: 0.0,
            d: 1.0,
            exact: true,
        }
    }

    fn normalized(a: f64, b: f64, c: f64, d: f64, exact: bool) -> Self {
        let lead = [a, b, c, d]
            .into_iter()
            .find(|e| e.abs() > SIGN_TOL)
            .unwrap_or(1.0);
        if lead < 0.0 {
            Self {
                a: -a,
                b: -b,
                c: -c,
                d: -d,
                exact,
            }
        } else {
            Self { a, b, c, d, exact }
        }
    }

    pub fn entries(&self) -> (f64, f64, f64, f64) {
        (self.a, self.b, self.c, self.d)
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Integer entries when the element is exact.
    pub fn as_integers(&self) -> Option<[i64; 4]> {
        if self.exact {
            Some([self.a as i64, self.b as i64, self.c as i64, self.d as i64])
        } else {
            None
        }
    }

    /// Möbius action. The image stays in the upper half-plane because the
    /// determinant is 1; a nonpositive image y signals NaN corruption and is
    /// treated as fatal.
    pub fn apply(&self, p: &UhpPoint) -> UhpPoint {
        let (x, y) = (p.x(), p.y());
        let re_num = self.a * x + self.b;
        let re_den = self.c * x + self.d;
        let den = re_den * re_den + self.c * self.c * y * y;
        let nx = (re_num * re_den + self.a * self.c * y * y) / den;
        let ny = y / den;
        assert!(ny > 0.0, "Mobius image left the upper half-plane");
        UhpPoint::new(nx, ny).expect("checked above")
    }

    /// Matrix product; exact arithmetic is preserved when both factors are
    /// exact (checked 64-bit; overflow is fatal at this level, enumeration
    /// code uses its own fallible integer path).
    pub fn compose(&self, other: &Isometry) -> Isometry {
        if self.exact && other.exact {
            let x = self.as_integers().unwrap();
            let y = other.as_integers().unwrap();
            let prod = int_mul(&x, &y).expect("integer overflow composing exact isometries");
            return Self::normalized(
                prod[0] as f64,
                prod[1] as f64,
                prod[2] as f64,
                prod[3] as f64,
                prod.iter().all(|e| e.abs() < 9_007_199_254_740_992),
            );
        }
        Self::normalized(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            false,
        )
    }

    /// Adjugate inverse [[d, −b], [−c, a]].
    pub fn inverse(&self) -> Isometry {
        Self::normalized(self.d, -self.b, -self.c, self.a, self.exact)
    }

    /// Squared Frobenius norm a² + b² + c² + d²; equals 2cosh d((0,1), γ(0,1)).
    pub fn norm_sq(&self) -> f64 {
        self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
    }

    /// Upper-triangular element sending the base point (0, 1) to `p`:
    /// [[√y, x/√y], [0, 1/√y]].
    pub fn from_base_point(p: &UhpPoint) -> Isometry {
        let s = p.y().sqrt();
        Self::normalized(s, p.x() / s, 0.0, 1.0 / s, false)
    }

    /// Rotation by angle `theta` about the base point (0, 1).
    pub fn rotation_about_base(theta: f64) -> Isometry {
        let (s, c) = (theta / 2.0).sin_cos();
        Self::normalized(c, s, -s, c, false)
    }

    /// The unique orientation-preserving isometry with a ↦ c and b ↦ d,
    /// defined when the segments are congruent (lengths within 1e−9).
    pub fn mapping_segment(
        a: &UhpPoint,
        b: &UhpPoint,
        c: &UhpPoint,
        d: &UhpPoint,
    ) -> Result<Isometry> {
        let len_ab = a.distance(b);
        let len_cd = c.distance(d);
        if (len_ab - len_cd).abs() > 1e-9 {
            return Err(GeoError::Precondition(format!(
                "segments not congruent: lengths {len_ab} vs {len_cd}"
            )));
        }
        let to_a = Isometry::from_base_point(a);
        let to_c = Isometry::from_base_point(c);
        if len_ab < 1e-15 {
            return Ok(to_c.compose(&to_a.inverse()));
        }
        let wb = to_a.inverse().apply(b).to_disk();
        let wd = to_c.inverse().apply(d).to_disk();
        let theta = wd.v().atan2(wd.u()) - wb.v().atan2(wb.u());
        Ok(to_c
            .compose(&Isometry::rotation_about_base(theta))
            .compose(&to_a.inverse()))
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        (self.a - 1.0).abs() <= tol
            && self.b.abs() <= tol
            && self.c.abs() <= tol
            && (self.d - 1.0).abs() <= tol
    }

    /// Entrywise comparison of the canonical forms.
    pub fn approx_eq(&self, other: &Isometry, tol: f64) -> bool {
        (self.a - other.a).abs() <= tol
            && (self.b - other.b).abs() <= tol
            && (self.c - other.c).abs() <= tol
            && (self.d - other.d).abs() <= tol
    }

    /// Frobenius distance between canonical forms.
    pub fn frobenius_dist(&self, other: &Isometry) -> f64 {
        let (da, db, dc, dd) = (
            self.a - other.a,
            self.b - other.b,
            self.c - other.c,
            self.d - other.d,
        );
        (da * da + db * db + dc * dc + dd * dd).sqrt()
    }

    /// Deterministic ordering: by norm, then canonical entries.
    pub fn sort_key(&self) -> (f64, f64, f64, f64, f64) {
        (self.norm_sq(), self.a, self.b, self.c, self.d)
    }
}

pub(crate) fn int_mul(x: &[i64; 4], y: &[i64; 4]) -> Result<[i64; 4]> {
    let m = |p: i64, q: i64| p.checked_mul(q).ok_or(GeoError::IntegerOverflow);
    let s = |p: i64, q: i64| p.checked_add(q).ok_or(GeoError::IntegerOverflow);
    Ok([
        s(m(x[0], y[0])?, m(x[1], y[2])?)?,
        s(m(x[0], y[1])?, m(x[1], y[3])?)?,
        s(m(x[2], y[0])?, m(x[3], y[2])?)?,
        s(m(x[2], y[1])?, m(x[3], y[3])?)?,
    ])
}

/// Distance between γ₁(0,1) and γγ₂(0,1) read off the Frobenius norm:
/// acosh(‖γ₁⁻¹ γ γ₂‖² / 2).
pub fn distance_via_norms(g1: &Isometry, g: &Isometry, g2: &Isometry) -> f64 {
    let m = g1.inverse().compose(g).compose(g2);
    acosh_1p((m.norm_sq() - 2.0) / 2.0)
}
