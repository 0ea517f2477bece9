use crate::cover::{brute_force_modular, cover_min, GeodesicCover, OracleBall};
use crate::error::Result;
use crate::fuchsian::GroupKind;
use crate::hyp::UhpPoint;
use crate::sample::sample_point;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeSet;

/// Outcome of sampling-based cover verification. The gap is data: a failing
/// cover produces a large `max_abs_gap`, not an error.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub samples: usize,
    pub seed: u64,
    /// Largest |cover distance − oracle distance| over all sampled pairs.
    pub max_abs_gap: f64,
    /// The pair attaining the worst gap.
    pub worst_pair: Option<(UhpPoint, UhpPoint)>,
    /// Indices into Γ₀ that were an argmin (within 1e−9) for some pair:
    /// a data-driven probe toward a smaller sufficient subset, not a proof.
    pub used_indices: Vec<usize>,
}

/// Compare a cover's surface distance against the matching brute-force
/// oracle on `n_samples` seeded area-uniform pairs (every tenth point is
/// pushed within ~1e−3 of the fundamental-domain boundary, where covers
/// fail first).
///
/// Sampling is a fixed seeded sequence and the reduction over pairs is
/// order-independent, so the report does not depend on the worker count.
pub fn verify_cover(cover: &GeodesicCover, n_samples: usize, seed: u64) -> Result<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let grp = cover.surface();
    let points: Vec<UhpPoint> = (0..2 * n_samples)
        .map(|i| sample_point(grp, &mut rng, i % 10 == 9))
        .collect();
    let pairs: Vec<(UhpPoint, UhpPoint)> = points.chunks_exact(2).map(|w| (w[0], w[1])).collect();

    let oracle_ball = match grp.kind() {
        GroupKind::Modular => None,
        GroupKind::RegularGenus(_) => Some(OracleBall::new(grp, 1.5)?),
    };

    let gamma0 = cover.gamma0();
    let results: Vec<(f64, usize, BTreeSet<usize>)> = pairs
        .par_iter()
        .enumerate()
        .map(|(idx, (p, q))| {
            let via_cover = cover_min(p, q, gamma0);
            let oracle = match &oracle_ball {
                Some(ball) => ball.min_distance(p, q).expect("samples are reduced"),
                None => brute_force_modular(p, q).expect("samples are reduced").0,
            };
            let gap = (via_cover - oracle).abs();
            let mut used = BTreeSet::new();
            for (i, g) in gamma0.iter().enumerate() {
                if p.distance(&g.apply(q)) <= via_cover + 1e-9 {
                    used.insert(i);
                }
            }
            (gap, idx, used)
        })
        .collect();

    let mut max_abs_gap = 0.0f64;
    let mut worst_idx = None;
    let mut used_all = BTreeSet::new();
    for (gap, idx, used) in results {
        used_all.extend(used);
        if worst_idx.is_none() || gap > max_abs_gap {
            max_abs_gap = gap;
            worst_idx = Some(idx);
        }
    }

    Ok(VerifyReport {
        samples: n_samples,
        seed,
        max_abs_gap,
        worst_pair: worst_idx.map(|i| pairs[i]),
        used_indices: used_all.into_iter().collect(),
    })
}
