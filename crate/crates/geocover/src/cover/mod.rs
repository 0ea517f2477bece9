//! Geodesic covers: finite sets Γ₀ of group elements through which every
//! surface distance d_Y(p, q) = min_γ d(p, γq) is realized, together with
//! the brute-force oracles and the sampling-based verifier used to certify
//! them.

mod oracle;
mod verify;

pub use oracle::{brute_force_ball, brute_force_modular, unpruned_modular_min, OracleBall};
pub use verify::{verify_cover, VerifyReport};

use crate::error::{GeoError, Result};
use crate::fuchsian::{FuchsianGroup, GroupKind, Membership, BOUNDARY_TOL};
use crate::hyp::{Isometry, UhpPoint};

/// How a cover was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverMethod {
    /// The explicit ten-element modular cover.
    ModularTen,
    /// Norm-ball cover of a regular surface group from the radius bound.
    BallRadiusBound,
    /// Arbitrary user-supplied element list.
    Explicit,
}

impl CoverMethod {
    pub fn label(&self) -> &'static str {
        match self {
            CoverMethod::ModularTen => "modular-ten",
            CoverMethod::BallRadiusBound => "ball-radius-bound",
            CoverMethod::Explicit => "explicit",
        }
    }
}

/// The norm bound that produced a ball cover, and (for modular pairs) the
/// c = 0 threshold that the case analysis compares against.
#[derive(Debug, Clone, Copy)]
pub struct CoverSearchBounds {
    /// Cap on ‖γ‖²: 2·cosh(2·vertex_radius + diam_bound).
    pub normsq_cap: f64,
    /// Pair-dependent c = 0 threshold, when one was recorded.
    pub u0: Option<f64>,
}

/// The c = 0 threshold for a reduced modular pair:
/// U(0) = y₂/y₁ + 1/(4y₁y₂) + y₁/y₂. Always at least 2.
pub fn modular_pair_threshold(p: &UhpPoint, q: &UhpPoint) -> f64 {
    let (y1, y2) = (p.y(), q.y());
    y2 / y1 + 1.0 / (4.0 * y1 * y2) + y1 / y2
}

/// A finite list Γ₀ of group elements realizing all surface distances, with
/// provenance. Immutable after construction.
#[derive(Debug, Clone)]
pub struct GeodesicCover {
    surface: FuchsianGroup,
    gamma0: Vec<Isometry>,
    method: CoverMethod,
    bound_used: Option<CoverSearchBounds>,
    radical: Option<Vec<Isometry>>,
}

impl GeodesicCover {
    pub fn surface(&self) -> &FuchsianGroup {
        &self.surface
    }

    pub fn gamma0(&self) -> &[Isometry] {
        &self.gamma0
    }

    pub fn method(&self) -> CoverMethod {
        self.method
    }

    pub fn bound_used(&self) -> Option<&CoverSearchBounds> {
        self.bound_used.as_ref()
    }

    pub fn radical(&self) -> Option<&[Isometry]> {
        self.radical.as_deref()
    }

    pub fn len(&self) -> usize {
        self.gamma0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma0.is_empty()
    }

    /// Cover from an arbitrary element list (deduplicated, identity added if
    /// missing). Used for negative controls and for files read back in.
    pub fn explicit(surface: FuchsianGroup, elements: Vec<Isometry>) -> Result<Self> {
        let mut gamma0: Vec<Isometry> = Vec::new();
        if !elements.iter().any(|e| e.is_identity(1e-9)) {
            gamma0.push(Isometry::identity());
        }
        for e in elements {
            if !gamma0.iter().any(|g| g.approx_eq(&e, 1e-6)) {
                gamma0.push(e);
            }
        }
        let cover = GeodesicCover {
            surface,
            gamma0,
            method: CoverMethod::Explicit,
            bound_used: None,
            radical: None,
        };
        cover.validate()?;
        Ok(cover)
    }

    pub(crate) fn from_parts(
        surface: FuchsianGroup,
        gamma0: Vec<Isometry>,
        method: CoverMethod,
        bound_used: Option<CoverSearchBounds>,
        radical: Option<Vec<Isometry>>,
    ) -> Result<Self> {
        let cover = GeodesicCover {
            surface,
            gamma0,
            method,
            bound_used,
            radical,
        };
        cover.validate()?;
        Ok(cover)
    }

    fn validate(&self) -> Result<()> {
        if !self.gamma0.iter().any(|e| e.is_identity(1e-9)) {
            return Err(GeoError::ConstructionCheck(
                "cover must contain the identity".into(),
            ));
        }
        for i in 0..self.gamma0.len() {
            for j in (i + 1)..self.gamma0.len() {
                if self.gamma0[i].approx_eq(&self.gamma0[j], 1e-6) {
                    return Err(GeoError::ConstructionCheck(format!(
                        "duplicate cover elements at {i} and {j}"
                    )));
                }
            }
        }
        if self.radical.is_some() && !self.radical_covers_gamma0() {
            return Err(GeoError::ConstructionCheck(
                "radical products do not cover gamma0".into(),
            ));
        }
        Ok(())
    }

    /// Whether every γ ∈ Γ₀ factors as γ₁⁻¹γ₂ with γ₁, γ₂ in the radical.
    /// Exact over the integers when all elements are exact.
    pub fn radical_covers_gamma0(&self) -> bool {
        let Some(radical) = &self.radical else {
            return false;
        };
        let tol =
            if self.gamma0.iter().all(|e| e.is_exact()) && radical.iter().all(|e| e.is_exact()) {
                0.0
            } else {
                1e-9
            };
        self.gamma0.iter().all(|g| {
            radical.iter().any(|x| {
                radical
                    .iter()
                    .any(|y| x.inverse().compose(y).approx_eq(g, tol))
            })
        })
    }
}

/// The explicit ten-element modular cover and its four-element radical.
///
/// Γ₀ is exactly the integer ball ‖γ‖² ≤ 3 mod sign: the identity, both
/// unit translations, both unit shears, the quarter-turn, and the four
/// corner turns. The radical is {1, T, L⁻¹, S}, whose sixteen products
/// γ₁⁻¹γ₂ contain all of Γ₀; the sign of the shear matters (with L instead
/// of L⁻¹ two corner turns are missed) and the product property is verified
/// exactly at construction.
pub fn modular_cover_ten() -> GeodesicCover {
    let raw: [[i64; 4]; 10] = [
        [1, 0, 0, 1],
        [1, 1, 0, 1],
        [1, -1, 0, 1],
        [1, 0, 1, 1],
        [1, 0, -1, 1],
        [0, -1, 1, 1],
        [0, -1, 1, -1],
        [1, -1, 1, 0],
        [-1, -1, 1, 0],
        [0, -1, 1, 0],
    ];
    let mut gamma0: Vec<Isometry> = raw
        .iter()
        .map(|m| Isometry::from_integers(m[0], m[1], m[2], m[3]).expect("det 1"))
        .collect();
    gamma0.sort_by(|x, y| {
        let (kx, ky) = (x.sort_key(), y.sort_key());
        kx.0.total_cmp(&ky.0)
            .then(kx.1.total_cmp(&ky.1))
            .then(kx.2.total_cmp(&ky.2))
            .then(kx.3.total_cmp(&ky.3))
            .then(kx.4.total_cmp(&ky.4))
    });
    let radical = vec![
        Isometry::identity(),
        Isometry::from_integers(1, 1, 0, 1).unwrap(),
        Isometry::from_integers(1, 0, -1, 1).unwrap(),
        Isometry::from_integers(0, -1, 1, 0).unwrap(),
    ];
    GeodesicCover::from_parts(
        FuchsianGroup::modular(),
        gamma0,
        CoverMethod::ModularTen,
        None,
        Some(radical),
    )
    .expect("fixed construction verifies")
}

/// Ball cover of the standard regular genus-g surface: all group elements
/// with ‖γ‖² ≤ 2·cosh(2·vertex_radius + diam_bound). Verification of the
/// cover property is a separate step (`verify_cover`).
pub fn build_cover_genus(g: u32) -> Result<GeodesicCover> {
    if !(2..=5).contains(&g) {
        return Err(GeoError::GenusOutOfRange {
            got: g,
            min: 2,
            max: 5,
        });
    }
    let surface = FuchsianGroup::regular_genus(g)?;
    let normsq_cap = genus_normsq_cap(surface.polygon().expect("genus group"));
    let ball = surface.enumerate_ball(normsq_cap.sqrt())?;
    GeodesicCover::from_parts(
        surface,
        ball.elements().to_vec(),
        CoverMethod::BallRadiusBound,
        Some(CoverSearchBounds {
            normsq_cap,
            u0: None,
        }),
        None,
    )
}

/// The norm² cap 2·cosh(2·vertex_radius + diam_bound).
pub fn genus_normsq_cap(poly: &crate::fuchsian::PolygonData) -> f64 {
    2.0 * (2.0 * poly.vertex_radius() + poly.diam_bound()).cosh()
}

/// Surface distance through a cover: min over Γ₀ of d(p, γ(q)).
///
/// Inputs must already be reduced representatives (Interior or Boundary of
/// the fundamental domain); anything else is a precondition error.
pub fn surface_distance(p: &UhpPoint, q: &UhpPoint, cover: &GeodesicCover) -> Result<f64> {
    check_reduced(p, cover)?;
    check_reduced(q, cover)?;
    Ok(cover_min(p, q, cover.gamma0()))
}

/// Surface distance together with every argmin index within 1e−9 of the
/// minimum (boundary pairs legitimately tie across several elements).
pub fn surface_distance_detailed(
    p: &UhpPoint,
    q: &UhpPoint,
    cover: &GeodesicCover,
) -> Result<(f64, Vec<usize>)> {
    check_reduced(p, cover)?;
    check_reduced(q, cover)?;
    let min = cover_min(p, q, cover.gamma0());
    let argmins = cover
        .gamma0()
        .iter()
        .enumerate()
        .filter(|(_, g)| p.distance(&g.apply(q)) <= min + 1e-9)
        .map(|(i, _)| i)
        .collect();
    Ok((min, argmins))
}

pub(crate) fn check_reduced(p: &UhpPoint, cover: &GeodesicCover) -> Result<()> {
    if cover.surface().membership(p, BOUNDARY_TOL) == Membership::Outside {
        return Err(GeoError::Precondition(format!(
            "point ({}, {}) is not reduced to the fundamental domain of {}",
            p.x(),
            p.y(),
            cover.surface().kind().label()
        )));
    }
    Ok(())
}

/// Unchecked minimum over a cover's elements; the fast path for statistics
/// on point sets validated up front.
pub(crate) fn cover_min(p: &UhpPoint, q: &UhpPoint, gamma0: &[Isometry]) -> f64 {
    let mut best = f64::INFINITY;
    for g in gamma0 {
        let d = p.distance(&g.apply(q));
        if d < best {
            best = d;
        }
    }
    best
}

/// Which group a cover belongs to, for file headers and mismatch checks.
pub fn cover_surface_kind(cover: &GeodesicCover) -> GroupKind {
    cover.surface().kind()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn uhp(x: f64, y: f64) -> UhpPoint {
        UhpPoint::new(x, y).unwrap()
    }

    #[test]
    fn ten_element_cover_shape() {
        let cover = modular_cover_ten();
        assert_eq!(cover.len(), 10);
        assert_eq!(cover.radical().unwrap().len(), 4);
        assert!(cover.radical_covers_gamma0());
        assert!(cover.gamma0().iter().all(|g| g.is_exact()));
        // every element has determinant exactly 1
        for g in cover.gamma0() {
            let m = g.as_integers().unwrap();
            assert_eq!(m[0] * m[3] - m[1] * m[2], 1);
        }
        // the ten elements are exactly the norm² <= 3 integer ball
        let ball = FuchsianGroup::modular()
            .enumerate_ball(3f64.sqrt())
            .unwrap();
        assert_eq!(ball.len(), 10);
        for e in ball.elements() {
            assert!(cover.gamma0().iter().any(|g| g.approx_eq(e, 0.0)));
        }
    }

    #[test]
    fn shear_signed_radical_misses_two_corner_turns() {
        // the same product check with L instead of L⁻¹ covers only 8 of 10
        let t = Isometry::from_integers(1, 1, 0, 1).unwrap();
        let l = Isometry::from_integers(1, 0, 1, 1).unwrap();
        let s = Isometry::from_integers(0, -1, 1, 0).unwrap();
        let literal = [Isometry::identity(), t, l, s];
        let covered = modular_cover_ten()
            .gamma0()
            .iter()
            .filter(|g| {
                literal.iter().any(|x| {
                    literal
                        .iter()
                        .any(|y| x.inverse().compose(y).approx_eq(g, 0.0))
                })
            })
            .count();
        assert_eq!(covered, 8);
    }

    #[test]
    fn genus_cover_bound_and_contents() {
        let cover = build_cover_genus(2).unwrap();
        let cap = cover.bound_used().unwrap().normsq_cap;
        assert!((cap - 2847.0734).abs() < 1e-3, "cap = {cap}");
        // closed-form expansion of cosh(2v + diam)
        let cot2 = 3.0 + 2.0 * 2f64.sqrt();
        let closed = (2.0 * cot2 * cot2 - 1.0) * (2.0 * cot2 - 1.0)
            + 2.0
                * cot2
                * (cot2 * cot2 - 1.0).sqrt()
                * ((2.0 * cot2 - 1.0) * (2.0 * cot2 - 1.0) - 1.0).sqrt();
        assert!((cap - 2.0 * closed).abs() <= 1e-10 * cap.abs());
        assert!(cover.gamma0()[0].is_identity(1e-12));
        assert!(
            cover.len() >= 100 && cover.len() <= 10_000,
            "|gamma0| = {}",
            cover.len()
        );
        assert_eq!(
            cover.len(),
            761,
            "regression: ball size under the fixed cap"
        );
        assert!(build_cover_genus(6).is_err());
    }

    #[test]
    fn surface_distance_examples() {
        let cover = modular_cover_ten();
        let p = uhp(0.0, 2.0);
        assert_eq!(surface_distance(&p, &p, &cover).unwrap(), 0.0);

        let d = surface_distance(&uhp(0.0, 1.0), &uhp(0.0, 2.0), &cover).unwrap();
        assert!((d - LN_2).abs() < 1e-12);

        // exhaustive enumeration gives 0.126844... via the quarter-turn,
        // beating both the direct distance and the unit translation
        let (d, argmins) =
            surface_distance_detailed(&uhp(-0.4, 1.0), &uhp(0.45, 0.9), &cover).unwrap();
        assert!((d - 0.12684449849545687).abs() < 1e-12, "d = {d}");
        let s = Isometry::from_integers(0, -1, 1, 0).unwrap();
        assert!(argmins
            .iter()
            .any(|&i| cover.gamma0()[i].approx_eq(&s, 0.0)));
        let t_inv = Isometry::from_integers(1, -1, 0, 1).unwrap();
        assert!(d < uhp(-0.4, 1.0).distance(&t_inv.apply(&uhp(0.45, 0.9))));
        assert!((uhp(-0.4, 1.0).distance(&uhp(0.45, 0.9)) - 0.874060).abs() < 5e-4);
    }

    #[test]
    fn surface_distance_rejects_unreduced_points() {
        let cover = modular_cover_ten();
        assert!(surface_distance(&uhp(3.0, 1.0), &uhp(0.0, 2.0), &cover).is_err());
    }

    #[test]
    fn surface_distance_symmetric_and_monotone() {
        let cover = modular_cover_ten();
        let small =
            GeodesicCover::explicit(FuchsianGroup::modular(), vec![Isometry::identity()]).unwrap();
        let pairs = [
            (uhp(-0.4, 1.0), uhp(0.45, 0.9)),
            (uhp(0.0, 1.2), uhp(0.3, 5.0)),
            (uhp(-0.49, 0.9), uhp(0.49, 0.88)),
        ];
        for (p, q) in pairs {
            let d1 = surface_distance(&p, &q, &cover).unwrap();
            let d2 = surface_distance(&q, &p, &cover).unwrap();
            assert!((d1 - d2).abs() <= 1e-10);
            // enlarging the cover never increases the distance
            assert!(d1 <= surface_distance(&p, &q, &small).unwrap() + 1e-15);
        }
    }

    #[test]
    fn surface_distance_symmetry_sweep() {
        use rand::SeedableRng;
        let cover = modular_cover_ten();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let p = crate::sample::area_uniform_modular(&mut rng);
            let q = crate::sample::area_uniform_modular(&mut rng);
            let d1 = surface_distance(&p, &q, &cover).unwrap();
            let d2 = surface_distance(&q, &p, &cover).unwrap();
            assert!((d1 - d2).abs() <= 1e-10);
        }
    }

    #[test]
    fn modular_threshold_bounds_c0_minimum() {
        let p = uhp(-0.3, 1.4);
        let q = uhp(0.15, 3.0);
        let u0 = modular_pair_threshold(&p, &q);
        assert!(u0 >= 2.0);
        // the c = 0, |b| <= 1 minimum stays under U(0)
        let best_c0 = (-1..=1)
            .map(|b| {
                let g = Isometry::from_integers(1, b, 0, 1).unwrap();
                2.0 * p.distance(&g.apply(&q)).cosh()
            })
            .fold(f64::INFINITY, f64::min);
        assert!(best_c0 < u0);
    }
}
