//! Distinct-distance statistics: the distance multiset of a point set, the
//! quadruple count, the Cauchy–Schwarz lower bound, cross-set statistics,
//! and the packing and scaling experiments built on them.

mod equilateral;
mod experiment;
mod generate;

pub use equilateral::{equilateral_greedy, EquilateralReport};
pub use experiment::{qp_scaling_experiment, QpRow};
pub use generate::{generate_points, PointKind};

use crate::cover::{cover_min, GeodesicCover};
use crate::error::{GeoError, Result};
use crate::fuchsian::{GroupKind, Membership, BOUNDARY_TOL};
use crate::hyp::UhpPoint;
use rayon::prelude::*;

/// Default width for clustering almost-equal distances.
pub const DEFAULT_EPS_EQ: f64 = 1e-9;

/// Which metric a point set lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceKind {
    /// The hyperbolic plane itself (no quotient).
    Plane,
    Modular,
    RegularGenus(u32),
}

impl SurfaceKind {
    pub fn label(&self) -> String {
        match self {
            SurfaceKind::Plane => "plane".to_string(),
            SurfaceKind::Modular => "modular".to_string(),
            SurfaceKind::RegularGenus(g) => format!("genus:{g}"),
        }
    }

    pub fn group_kind(&self) -> Option<GroupKind> {
        match self {
            SurfaceKind::Plane => None,
            SurfaceKind::Modular => Some(GroupKind::Modular),
            SurfaceKind::RegularGenus(g) => Some(GroupKind::RegularGenus(*g)),
        }
    }
}

/// A labeled list of points; reduced representatives when the surface is a
/// quotient, pairwise distinct.
#[derive(Debug, Clone)]
pub struct PointSet {
    surface: SurfaceKind,
    points: Vec<UhpPoint>,
    label: String,
}

impl PointSet {
    /// Validates distinctness (plane distance between representatives above
    /// 1e−9). Membership in the fundamental domain is validated where the
    /// stats are computed, which is where a cover (and thus the group) is
    /// at hand.
    pub fn new(
        surface: SurfaceKind,
        points: Vec<UhpPoint>,
        label: impl Into<String>,
    ) -> Result<Self> {
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                if points[i].distance(&points[j]) <= 1e-9 {
                    return Err(GeoError::ConstructionCheck(format!(
                        "points {i} and {j} coincide after reduction"
                    )));
                }
            }
        }
        Ok(PointSet {
            surface,
            points,
            label: label.into(),
        })
    }

    pub fn surface(&self) -> SurfaceKind {
        self.surface
    }

    pub fn points(&self) -> &[UhpPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

/// Summary of the distance multiset of a point set.
///
/// `multiplicities[i]` counts ordered pairs at the clustered distance
/// `values[i]`, so they sum to N² − N; `quadruples` is Σ nᵢ², the number of
/// ordered distance quadruples.
#[derive(Debug, Clone)]
pub struct DistanceStats {
    pub n_points: usize,
    /// Number of distinct distance clusters m.
    pub m: usize,
    /// One representative (cluster mean) per distinct distance.
    pub values: Vec<f64>,
    /// Ordered-pair multiplicities n_i.
    pub multiplicities: Vec<u64>,
    /// |Q(P)| = Σ n_i².
    pub quadruples: u64,
    /// (N⁴ − 2N³)/|Q(P)|.
    pub cs_lower_bound: f64,
    /// N/(K³·ln(K·N)) for a K-element cover; shape-only (no absolute
    /// constant), absent for plane sets.
    pub thm_bound: Option<f64>,
}

/// Pairwise distances of a validated point set (parallel over the first
/// index; deterministic).
fn pairwise_distances(points: &[UhpPoint], cover: Option<&GeodesicCover>) -> Vec<f64> {
    let n = points.len();
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut row = Vec::with_capacity(n - i - 1);
            for j in (i + 1)..n {
                let d = match cover {
                    Some(c) => cover_min(&points[i], &points[j], c.gamma0()),
                    None => points[i].distance(&points[j]),
                };
                row.push(d);
            }
            row
        })
        .collect();
    rows.into_iter().flatten().collect()
}

/// Sort distances and cluster by adjacent gaps below `eps_eq`; returns the
/// cluster means and unordered-pair counts.
fn cluster_sorted(mut dists: Vec<f64>, eps_eq: f64) -> (Vec<f64>, Vec<u64>) {
    dists.sort_by(f64::total_cmp);
    let mut values = Vec::new();
    let mut counts: Vec<u64> = Vec::new();
    let mut start = 0usize;
    for i in 0..dists.len() {
        if i + 1 == dists.len() || dists[i + 1] - dists[i] >= eps_eq {
            let cluster = &dists[start..=i];
            values.push(cluster.iter().sum::<f64>() / cluster.len() as f64);
            counts.push(cluster.len() as u64);
            start = i + 1;
        }
    }
    (values, counts)
}

fn check_set_reduced(set: &PointSet, cover: Option<&GeodesicCover>) -> Result<()> {
    match (set.surface().group_kind(), cover) {
        (None, _) => Ok(()),
        (Some(_), None) => Err(GeoError::Precondition(format!(
            "surface {} needs a cover",
            set.surface().label()
        ))),
        (Some(kind), Some(c)) => {
            if c.surface().kind() != kind {
                return Err(GeoError::SurfaceMismatch(
                    set.surface().label(),
                    c.surface().kind().label(),
                ));
            }
            for (i, p) in set.points().iter().enumerate() {
                if c.surface().membership(p, BOUNDARY_TOL) == Membership::Outside {
                    return Err(GeoError::Precondition(format!(
                        "point {i} is not reduced to the fundamental domain"
                    )));
                }
            }
            Ok(())
        }
    }
}

/// Distance multiset statistics of a point set. The multiplicity sums and
/// the quadruple count are exact integer identities; only the distance
/// values themselves are floating.
pub fn distance_stats(
    set: &PointSet,
    cover: Option<&GeodesicCover>,
    eps_eq: f64,
) -> Result<DistanceStats> {
    if set.len() < 2 {
        return Err(GeoError::TooFewPoints {
            need: 2,
            got: set.len(),
        });
    }
    if !(eps_eq > 0.0) {
        return Err(GeoError::Domain(format!(
            "clustering width must be positive, got {eps_eq}"
        )));
    }
    check_set_reduced(set, cover)?;
    let dists = pairwise_distances(set.points(), cover);
    let (values, unordered) = cluster_sorted(dists, eps_eq);
    let multiplicities: Vec<u64> = unordered.iter().map(|c| 2 * c).collect();
    let n = set.len() as u64;
    debug_assert_eq!(multiplicities.iter().sum::<u64>(), n * n - n);
    let quadruples: u64 = multiplicities.iter().map(|&m| m * m).sum();
    let nf = set.len() as f64;
    let cs_lower_bound = (nf.powi(4) - 2.0 * nf.powi(3)) / quadruples as f64;
    let thm_bound = cover.map(|c| {
        let k = c.len() as f64;
        nf / (k.powi(3) * (k * nf).ln())
    });
    Ok(DistanceStats {
        n_points: set.len(),
        m: values.len(),
        values,
        multiplicities,
        quadruples,
        cs_lower_bound,
        thm_bound,
    })
}

/// Cross-set distance statistics between two point sets on one surface.
#[derive(Debug, Clone)]
pub struct CrossStats {
    pub n1: usize,
    pub n2: usize,
    /// Number of common points (zero-distance cross pairs).
    pub intersection: usize,
    pub m_cross: usize,
    pub values: Vec<f64>,
    /// Ordered cross-pair multiplicities n_k; they sum to n1·n2 − |P₁∩P₂|.
    pub multiplicities: Vec<u64>,
    /// Σ n_k².
    pub quadruples_cross: u64,
    /// |P₁|²|P₂|²/(|P₁∪P₂|³·ln|P₁∪P₂|), shape-only (no absolute constant).
    pub bound: f64,
}

pub fn cross_stats(
    p1: &PointSet,
    p2: &PointSet,
    cover: Option<&GeodesicCover>,
    eps_eq: f64,
) -> Result<CrossStats> {
    if p1.surface() != p2.surface() {
        return Err(GeoError::SurfaceMismatch(
            p1.surface().label(),
            p2.surface().label(),
        ));
    }
    if p1.is_empty() || p2.is_empty() {
        return Err(GeoError::TooFewPoints { need: 1, got: 0 });
    }
    if !(eps_eq > 0.0) {
        return Err(GeoError::Domain(format!(
            "clustering width must be positive, got {eps_eq}"
        )));
    }
    check_set_reduced(p1, cover)?;
    check_set_reduced(p2, cover)?;

    let pts2 = p2.points();
    let all: Vec<f64> = p1
        .points()
        .par_iter()
        .map(|a| {
            let mut row = Vec::with_capacity(pts2.len());
            for b in pts2 {
                let d = match cover {
                    Some(c) => cover_min(a, b, c.gamma0()),
                    None => a.distance(b),
                };
                row.push(d);
            }
            row
        })
        .flatten()
        .collect();
    // zero-distance pairs are common points, excluded from the multiset
    let intersection = all.iter().filter(|&&d| d <= 1e-9).count();
    let nonzero: Vec<f64> = all.into_iter().filter(|&d| d > 1e-9).collect();
    let (values, counts) = cluster_sorted(nonzero, eps_eq);
    let quadruples_cross: u64 = counts.iter().map(|&c| c * c).sum();
    debug_assert_eq!(
        counts.iter().sum::<u64>() as usize,
        p1.len() * p2.len() - intersection
    );
    let union = (p1.len() + p2.len() - intersection) as f64;
    let bound =
        (p1.len() as f64).powi(2) * (p2.len() as f64).powi(2) / (union.powi(3) * union.ln());
    Ok(CrossStats {
        n1: p1.len(),
        n2: p2.len(),
        intersection,
        m_cross: values.len(),
        values,
        multiplicities: counts,
        quadruples_cross,
        bound,
    })
}
