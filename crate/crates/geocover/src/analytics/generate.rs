use crate::analytics::{PointSet, SurfaceKind};
use crate::cover::GeodesicCover;
use crate::error::{GeoError, Result};
use crate::fuchsian::{FuchsianGroup, GroupKind};
use crate::hyp::UhpPoint;
use crate::sample::{area_uniform_disk, area_uniform_modular, area_uniform_polygon};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Recipes for deterministic point-set generation.
#[derive(Debug, Clone, Copy)]
pub enum PointKind {
    /// Area-uniform on the fundamental domain (1/y² density on the modular
    /// strip truncated to y ≤ 20; hyperbolic-polar rejection in polygons;
    /// a fixed disk of radius 3 about the base point on the plane).
    AreaUniform,
    /// Points at equal spacing along the imaginary axis, reduced when the
    /// surface is a quotient.
    GeodesicProgression { step: f64 },
    /// The cover orbit of one point, reduced and deduplicated.
    OrbitSample { base: UhpPoint },
}

impl PointKind {
    fn label(&self, surface: SurfaceKind, count: usize, seed: u64) -> String {
        match self {
            PointKind::AreaUniform => {
                format!("area-uniform {} n={count} seed={seed}", surface.label())
            }
            PointKind::GeodesicProgression { step } => {
                format!("progression {} n={count} step={step}", surface.label())
            }
            PointKind::OrbitSample { base } => {
                format!("orbit {} of ({}, {})", surface.label(), base.x(), base.y())
            }
        }
    }
}

const PLANE_SAMPLE_RADIUS: f64 = 3.0;
const DEDUP_RETRY_CAP: usize = 1000;

/// Deterministic point sets: identical (kind, surface, count, seed) always
/// produce identical points. Quotient surfaces need the matching cover
/// (which carries the group); plane progressions and plane area sampling
/// need none.
pub fn generate_points(
    kind: PointKind,
    surface: SurfaceKind,
    cover: Option<&GeodesicCover>,
    count: usize,
    seed: u64,
) -> Result<PointSet> {
    if let (Some(kind), Some(c)) = (surface.group_kind(), cover) {
        if c.surface().kind() != kind {
            return Err(GeoError::SurfaceMismatch(
                surface.label(),
                c.surface().kind().label(),
            ));
        }
    }
    let label = kind.label(surface, count, seed);
    let points = match kind {
        PointKind::AreaUniform => area_uniform_points(surface, cover, count, seed)?,
        PointKind::GeodesicProgression { step } => {
            if !(step > 0.0) {
                return Err(GeoError::Domain(format!(
                    "progression step must be positive, got {step}"
                )));
            }
            let group = group_for(surface, cover)?;
            let mut points = Vec::with_capacity(count);
            for k in 0..count {
                let raw =
                    UhpPoint::new(0.0, (k as f64 * step).exp()).expect("exponential is positive");
                let p = match &group {
                    Some(g) => g.reduce(&raw)?.0,
                    None => raw,
                };
                if points.iter().any(|q: &UhpPoint| q.distance(&p) <= 1e-9) {
                    return Err(GeoError::CapExceeded(format!(
                        "progression points collide after reduction at k = {k}"
                    )));
                }
                points.push(p);
            }
            points
        }
        PointKind::OrbitSample { base } => {
            let c = cover
                .ok_or_else(|| GeoError::Precondition("orbit sampling needs a cover".into()))?;
            if surface.group_kind().is_none() {
                return Err(GeoError::Precondition(
                    "orbit sampling needs a quotient surface".into(),
                ));
            }
            let mut points: Vec<UhpPoint> = Vec::new();
            for g in c.gamma0() {
                let (p, _) = c.surface().reduce(&g.apply(&base))?;
                if !points.iter().any(|q| q.distance(&p) <= 1e-9) {
                    points.push(p);
                }
                if points.len() == count {
                    break;
                }
            }
            points
        }
    };
    PointSet::new(surface, points, label)
}

fn group_for(surface: SurfaceKind, cover: Option<&GeodesicCover>) -> Result<Option<FuchsianGroup>> {
    match surface.group_kind() {
        None => Ok(None),
        Some(GroupKind::Modular) => Ok(Some(
            cover
                .map(|c| c.surface().clone())
                .unwrap_or_else(FuchsianGroup::modular),
        )),
        Some(GroupKind::RegularGenus(_)) => match cover {
            Some(c) => Ok(Some(c.surface().clone())),
            None => Err(GeoError::Precondition(
                "surface-group generation needs a cover".into(),
            )),
        },
    }
}

fn area_uniform_points(
    surface: SurfaceKind,
    cover: Option<&GeodesicCover>,
    count: usize,
    seed: u64,
) -> Result<Vec<UhpPoint>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<UhpPoint> = Vec::with_capacity(count);
    let mut retries = 0usize;
    while points.len() < count {
        let p = match surface {
            SurfaceKind::Plane => area_uniform_disk(PLANE_SAMPLE_RADIUS, &mut rng),
            SurfaceKind::Modular => area_uniform_modular(&mut rng),
            SurfaceKind::RegularGenus(_) => {
                let poly = cover.and_then(|c| c.surface().polygon()).ok_or_else(|| {
                    GeoError::Precondition("surface-group sampling needs a cover".into())
                })?;
                area_uniform_polygon(poly, &mut rng)
            }
        };
        if points.iter().any(|q| q.distance(&p) <= 1e-9) {
            retries += 1;
            if retries > DEDUP_RETRY_CAP {
                return Err(GeoError::CapExceeded(
                    "sampling cannot place more distinct points".into(),
                ));
            }
            continue;
        }
        retries = 0;
        points.push(p);
    }
    Ok(points)
}
