use crate::error::{GeoError, Result};
use crate::fuchsian::{orbit_near, FuchsianGroup, Membership, BOUNDARY_TOL};
use crate::hyp::{Isometry, UhpPoint};
use crate::sample::area_uniform_polygon;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

/// Result of a greedy search for points with pairwise surface distance at
/// least r on a regular genus-g surface.
#[derive(Debug, Clone, Copy)]
pub struct EquilateralReport {
    pub g: u32,
    /// Target pairwise distance.
    pub r: f64,
    /// Points achieved (best over restarts).
    pub found: usize,
    /// How many of them came from the on-circle phase (excluding the seed).
    pub found_on_circle: usize,
    /// Minimal angle subtended at the seed by two circle points at distance
    /// ≥ r: 2·arcsin(1/(2cosh(r/2))).
    pub alpha_min: f64,
    /// ⌊2π/alpha_min⌋, the cap on any on-circle packing.
    pub circle_cap: usize,
}

const CIRCLE_CANDIDATES: usize = 150;
const AREA_CANDIDATES: usize = 150;

/// Greedy maximal packing: a seed point, then circle candidates at distance
/// r around it, then area-uniform candidates, each kept iff its surface
/// distance to every kept point is at least r − 1e−9; best over `attempts`
/// restarts.
///
/// Surface distances are decided exactly through localized orbit
/// enumeration: a kept point q stores the images γ(q) with
/// d(γ(q), base) ≤ r + vertex_radius, and any group element outside the
/// enumerated band keeps d(p, γq) > r for every p in the fundamental
/// domain, so the pruned test equals the full minimum test.
pub fn equilateral_greedy(g: u32, r: f64, attempts: usize, seed: u64) -> Result<EquilateralReport> {
    if !(r > 0.0) {
        return Err(GeoError::Domain(format!(
            "target distance must be positive, got {r}"
        )));
    }
    if attempts == 0 {
        return Err(GeoError::Domain("need at least one attempt".into()));
    }
    let grp = FuchsianGroup::regular_genus(g)?;
    let poly = grp.polygon().expect("genus group").clone();

    let alpha_min = 2.0 * (1.0 / (2.0 * (r / 2.0).cosh())).asin();
    let circle_cap = (TAU / alpha_min + 1e-9).floor() as usize;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best_found = 0usize;
    let mut best_on_circle = 0usize;

    for attempt in 0..attempts {
        let seed_point = if attempt == 0 {
            UhpPoint::base()
        } else {
            area_uniform_polygon(&poly, &mut rng)
        };
        let mut kept: Vec<KeptPoint> = vec![KeptPoint::new(seed_point, &grp, r)?];
        let mut on_circle = 0usize;

        let seed_mover = Isometry::from_base_point(&seed_point);
        let ring_point = UhpPoint::new(0.0, r.exp()).expect("exp > 0");
        for _ in 0..CIRCLE_CANDIDATES {
            let theta = rng.gen_range(0.0..TAU);
            let raw = seed_mover.apply(&Isometry::rotation_about_base(theta).apply(&ring_point));
            let (cand, _) = grp.reduce(&raw)?;
            if admits(&kept, &cand, r) {
                kept.push(KeptPoint::new(cand, &grp, r)?);
                on_circle += 1;
            }
        }
        for _ in 0..AREA_CANDIDATES {
            let cand = area_uniform_polygon(&poly, &mut rng);
            if admits(&kept, &cand, r) {
                kept.push(KeptPoint::new(cand, &grp, r)?);
            }
        }

        if kept.len() > best_found {
            best_found = kept.len();
            best_on_circle = on_circle;
        }
    }

    Ok(EquilateralReport {
        g,
        r,
        found: best_found,
        found_on_circle: best_on_circle,
        alpha_min,
        circle_cap,
    })
}

struct KeptPoint {
    /// Images γ(q) close enough to the domain to ever realize a distance
    /// below r against a reduced point; always includes q itself.
    images: Vec<UhpPoint>,
}

impl KeptPoint {
    fn new(q: UhpPoint, grp: &FuchsianGroup, r: f64) -> Result<Self> {
        let poly = grp.polygon().expect("genus group");
        debug_assert!(poly.membership(&q, BOUNDARY_TOL) != Membership::Outside);
        let reach = r + poly.vertex_radius();
        let base = UhpPoint::base();
        // gamma with d(gamma(q), base) <= reach are the inverses of orbit
        // points of the base near q
        let mut images = Vec::new();
        for h in orbit_near(grp, &q, reach)? {
            let image = h.inverse().apply(&q);
            if image.distance(&base) <= reach + 0.01 {
                images.push(image);
            }
        }
        Ok(KeptPoint { images })
    }

    fn min_distance_below(&self, p: &UhpPoint, threshold: f64) -> bool {
        self.images.iter().any(|img| p.distance(img) < threshold)
    }
}

fn admits(kept: &[KeptPoint], cand: &UhpPoint, r: f64) -> bool {
    !kept.iter().any(|k| k.min_distance_below(cand, r - 1e-9))
}
