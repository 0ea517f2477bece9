//! Fuchsian-group machinery: the modular group, regular genus-g surface
//! groups, fundamental-domain membership and reduction, and enumeration of
//! group elements in Frobenius-norm balls.

mod ball;
mod polygon;

pub use ball::{lattice_count_table, orbit_near, BallEnumeration, LatticeCountRow};
pub use polygon::PolygonData;

use crate::error::{GeoError, Result};
use crate::hyp::{Isometry, UhpPoint};

/// Width of the band classified as Boundary by membership tests.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Iteration cap for fundamental-domain reduction.
pub const REDUCE_MAX_STEPS: usize = 100_000;

/// Which group a surface carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    /// The modular group of integer matrices mod sign.
    Modular,
    /// Surface group of the standard regular 4g-gon, genus g ≥ 2.
    RegularGenus(u32),
}

impl GroupKind {
    pub fn label(&self) -> String {
        match self {
            GroupKind::Modular => "modular".to_string(),
            GroupKind::RegularGenus(g) => format!("genus:{g}"),
        }
    }
}

/// Classification of a point against a fundamental domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Interior,
    Boundary,
    Outside,
}

/// A Fuchsian group together with the data needed to reduce points into its
/// fundamental domain.
///
/// Generators are listed together with their inverses. Construction is
/// deterministic; the value is immutable afterwards and safe to share across
/// threads.
#[derive(Debug, Clone)]
pub struct FuchsianGroup {
    kind: GroupKind,
    generators: Vec<Isometry>,
    polygon: Option<PolygonData>,
}

impl FuchsianGroup {
    /// The modular group with generators {T, T⁻¹, S}, all exact-integer.
    pub fn modular() -> Self {
        let t = Isometry::from_integers(1, 1, 0, 1).unwrap();
        let s = Isometry::from_integers(0, -1, 1, 0).unwrap();
        FuchsianGroup {
            kind: GroupKind::Modular,
            generators: vec![t, t.inverse(), s],
            polygon: None,
        }
    }

    /// Surface group of the standard regular 4g-gon of inner angle π/(2g),
    /// 2 ≤ g ≤ 16. The polygon data is fully verified at construction
    /// (commutator relator, vertex angles, vertex orbit, pairing geometry);
    /// any failed check is an error.
    pub fn regular_genus(g: u32) -> Result<Self> {
        if !(2..=16).contains(&g) {
            return Err(GeoError::GenusOutOfRange {
                got: g,
                min: 2,
                max: 16,
            });
        }
        let polygon = PolygonData::build(g)?;
        let mut generators = Vec::with_capacity(4 * g as usize);
        for m in polygon.pair_maps() {
            generators.push(*m);
            generators.push(m.inverse());
        }
        Ok(FuchsianGroup {
            kind: GroupKind::RegularGenus(g),
            generators,
            polygon: Some(polygon),
        })
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn generators(&self) -> &[Isometry] {
        &self.generators
    }

    pub fn polygon(&self) -> Option<&PolygonData> {
        self.polygon.as_ref()
    }

    /// Classify `p` against this group's fundamental domain.
    pub fn membership(&self, p: &UhpPoint, tol: f64) -> Membership {
        match &self.polygon {
            None => membership_modular(p, tol),
            Some(poly) => poly.membership(p, tol),
        }
    }

    /// Move `p` into the fundamental domain: returns (p', γ) with
    /// p' = γ(p) classified Interior or Boundary.
    ///
    /// Boundary points are tie-broken toward the representative with the
    /// lexicographically smallest (x, y), so every orbit has one canonical
    /// representative and analytics never double-counts.
    pub fn reduce(&self, p: &UhpPoint) -> Result<(UhpPoint, Isometry)> {
        match &self.polygon {
            None => reduce_modular(p),
            Some(poly) => reduce_polygon(p, poly, &self.generators),
        }
    }
}

/// Classify against the modular fundamental domain
/// {−1/2 < Re z < 1/2, |z| > 1} with a boundary band of width `tol`.
pub fn membership_modular(p: &UhpPoint, tol: f64) -> Membership {
    let x = p.x();
    let r = (p.x() * p.x() + p.y() * p.y()).sqrt();
    if x.abs() > 0.5 + tol || r < 1.0 - tol {
        return Membership::Outside;
    }
    if x.abs() >= 0.5 - tol || r <= 1.0 + tol {
        return Membership::Boundary;
    }
    Membership::Interior
}

fn reduce_modular(p: &UhpPoint) -> Result<(UhpPoint, Isometry)> {
    let s = Isometry::from_integers(0, -1, 1, 0).unwrap();
    let mut z = *p;
    let mut gamma = Isometry::identity();
    for _ in 0..REDUCE_MAX_STEPS {
        let n = z.x().round();
        if n != 0.0 {
            let shift = Isometry::from_integers(1, -(n as i64), 0, 1).unwrap();
            z = shift.apply(&z);
            gamma = shift.compose(&gamma);
        }
        if z.x() * z.x() + z.y() * z.y() < 1.0 - BOUNDARY_TOL {
            z = s.apply(&z);
            gamma = s.compose(&gamma);
        } else {
            // boundary ties: |z| = 1 reflects to -x under S, the x = 1/2
            // edge translates to x = -1/2; pick the lexicographically
            // smaller x in both cases.
            let r = (z.x() * z.x() + z.y() * z.y()).sqrt();
            if (r - 1.0).abs() <= BOUNDARY_TOL && z.x() > BOUNDARY_TOL {
                z = s.apply(&z);
                gamma = s.compose(&gamma);
            }
            if (z.x() - 0.5).abs() <= BOUNDARY_TOL {
                let shift = Isometry::from_integers(1, -1, 0, 1).unwrap();
                z = shift.apply(&z);
                gamma = shift.compose(&gamma);
            }
            debug_assert!(membership_modular(&z, BOUNDARY_TOL) != Membership::Outside);
            return Ok((z, gamma));
        }
    }
    Err(GeoError::ReductionStalled(REDUCE_MAX_STEPS))
}

fn reduce_polygon(
    p: &UhpPoint,
    poly: &PolygonData,
    generators: &[Isometry],
) -> Result<(UhpPoint, Isometry)> {
    let base = UhpPoint::base();
    let mut z = *p;
    let mut gamma = Isometry::identity();
    let mut steps = 0usize;
    while poly.membership(&z, BOUNDARY_TOL) == Membership::Outside {
        steps += 1;
        if steps > REDUCE_MAX_STEPS {
            return Err(GeoError::ReductionStalled(REDUCE_MAX_STEPS));
        }
        let current = z.distance(&base);
        let mut best: Option<(f64, UhpPoint, &Isometry)> = None;
        for h in generators {
            let w = h.apply(&z);
            let d = w.distance(&base);
            if best.as_ref().map_or(true, |(bd, _, _)| d < *bd) {
                best = Some((d, w, h));
            }
        }
        let (d, w, h) = best.expect("generator list is nonempty");
        if d >= current {
            // no generator makes progress: numeric stall on a boundary
            return Err(GeoError::ReductionStalled(steps));
        }
        z = w;
        gamma = h.compose(&gamma);
    }
    // canonical representative among boundary-equivalent images
    if poly.membership(&z, BOUNDARY_TOL) == Membership::Boundary {
        let (bz, bg) = boundary_tiebreak(&z, poly, generators);
        z = bz;
        gamma = bg.compose(&gamma);
    }
    Ok((z, gamma))
}

/// Walk the (small) set of boundary-equivalent images reachable through
/// generators and return the lexicographically smallest one.
fn boundary_tiebreak(
    z: &UhpPoint,
    poly: &PolygonData,
    generators: &[Isometry],
) -> (UhpPoint, Isometry) {
    let lex_less = |a: &UhpPoint, b: &UhpPoint| {
        (a.x() - b.x()) < -1e-12 || ((a.x() - b.x()).abs() <= 1e-12 && a.y() < b.y() - 1e-12)
    };
    let mut seen: Vec<(UhpPoint, Isometry)> = vec![(*z, Isometry::identity())];
    let mut frontier = vec![(*z, Isometry::identity())];
    let cap = 8 * generators.len() + 8;
    while let Some((w, g)) = frontier.pop() {
        for h in generators {
            let img = h.apply(&w);
            if poly.membership(&img, BOUNDARY_TOL) != Membership::Boundary {
                continue;
            }
            if seen.iter().any(|(s, _)| s.distance(&img) < 1e-9) {
                continue;
            }
            let hg = h.compose(&g);
            seen.push((img, hg));
            if seen.len() < cap {
                frontier.push((img, hg));
            }
        }
    }
    let mut best = seen[0];
    for cand in &seen[1..] {
        if lex_less(&cand.0, &best.0) {
            best = *cand;
        }
    }
    best
}
