use crate::cover::genus_normsq_cap;
use crate::error::{GeoError, Result};
use crate::fuchsian::{membership_modular, FuchsianGroup, Membership, BOUNDARY_TOL};
use crate::hyp::{Isometry, UhpPoint};

/// Exact minimizer of d(p, γq) over the whole modular group, independent of
/// any cover.
///
/// The enumeration first takes the best of the direct distance and the
/// c = 0 family (a = d = 1, b scanned over its full range under the cap),
/// then walks every c ≠ 0 candidate whose four norm terms fit under
/// 1.5 × the best value seen so far; each quadratic term of the norm
/// expansion is a lower bound for the whole norm, so no candidate that
/// could win escapes the scan. Returns the minimum distance and one
/// achieving element.
pub fn brute_force_modular(p: &UhpPoint, q: &UhpPoint) -> Result<(f64, Isometry)> {
    for z in [p, q] {
        if membership_modular(z, BOUNDARY_TOL) == Membership::Outside {
            return Err(GeoError::Precondition(format!(
                "oracle needs reduced inputs, got ({}, {})",
                z.x(),
                z.y()
            )));
        }
    }
    let (x1, y1) = (p.x(), p.y());
    let (x2, y2) = (q.x(), q.y());

    let mut best = p.distance(q);
    let mut best_gamma = Isometry::identity();
    let consider = |a: i64, b: i64, c: i64, d: i64, best: &mut f64, best_gamma: &mut Isometry| {
        if a * d - b * c != 1 {
            return;
        }
        let g = Isometry::from_integers(a, b, c, d).expect("det checked");
        let dist = p.distance(&g.apply(q));
        if dist < *best {
            *best = dist;
            *best_gamma = g;
        }
    };

    // preliminary c = 0 scan at |b| <= 1 (the minimum lands there for
    // reduced points) to tighten the cap
    for b in -1..=1 {
        consider(1, b, 0, 1, &mut best, &mut best_gamma);
    }

    // margin factor 1.5 on the norm² cap
    let cap = 1.5 * 2.0 * best.cosh();

    // full c = 0 family under the cap
    let spread = (cap * y1 * y2).sqrt();
    let b_lo = (x1 - x2 - spread).floor() as i64;
    let b_hi = (x1 - x2 + spread).ceil() as i64;
    for b in b_lo..=b_hi {
        consider(1, b, 0, 1, &mut best, &mut best_gamma);
    }

    // c != 0: one sign of c suffices mod ±1
    let c_max = (cap / (y1 * y2)).sqrt().floor() as i64;
    for c in 1..=c_max {
        let a_spread = (cap * y1 / y2).sqrt();
        let a_center = x1 * c as f64;
        let a_lo = (a_center - a_spread).floor() as i64;
        let a_hi = (a_center + a_spread).ceil() as i64;
        let d_spread = (cap * y2 / y1).sqrt();
        let d_center = -x2 * c as f64;
        let d_lo = (d_center - d_spread).floor() as i64;
        let d_hi = (d_center + d_spread).ceil() as i64;
        for a in a_lo..=a_hi {
            for d in d_lo..=d_hi {
                let num = a
                    .checked_mul(d)
                    .and_then(|ad| ad.checked_sub(1))
                    .ok_or(GeoError::IntegerOverflow)?;
                if num % c != 0 {
                    continue;
                }
                consider(a, num / c, c, d, &mut best, &mut best_gamma);
            }
        }
    }
    Ok((best, best_gamma))
}

/// Inflated norm-ball oracle for a surface group: the candidate cover's own
/// cap times `inflate` on the norm, enumerated once and reused per pair.
#[derive(Debug)]
pub struct OracleBall {
    surface: FuchsianGroup,
    elements: Vec<Isometry>,
    norm_cap: f64,
}

impl OracleBall {
    /// `inflate` multiplies the radius-bound norm cap; at least 1.5 so the
    /// oracle ball strictly contains any candidate ball cover.
    pub fn new(grp: &FuchsianGroup, inflate: f64) -> Result<Self> {
        let poly = grp
            .polygon()
            .ok_or_else(|| GeoError::Precondition("ball oracle needs a surface group".into()))?;
        if inflate < 1.5 {
            return Err(GeoError::Precondition(format!(
                "oracle inflation {inflate} must be at least 1.5"
            )));
        }
        let norm_cap = inflate * genus_normsq_cap(poly).sqrt();
        let ball = grp.enumerate_ball(norm_cap)?;
        Ok(OracleBall {
            surface: grp.clone(),
            elements: ball.elements().to_vec(),
            norm_cap,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn norm_cap(&self) -> f64 {
        self.norm_cap
    }

    /// Minimum of d(p, γq) over the inflated ball.
    pub fn min_distance(&self, p: &UhpPoint, q: &UhpPoint) -> Result<f64> {
        for z in [p, q] {
            if self.surface.membership(z, BOUNDARY_TOL) == Membership::Outside {
                return Err(GeoError::Precondition(format!(
                    "oracle needs reduced inputs, got ({}, {})",
                    z.x(),
                    z.y()
                )));
            }
        }
        Ok(crate::cover::cover_min(p, q, &self.elements))
    }
}

/// One-shot convenience around [`OracleBall`].
pub fn brute_force_ball(
    p: &UhpPoint,
    q: &UhpPoint,
    grp: &FuchsianGroup,
    inflate: f64,
) -> Result<f64> {
    OracleBall::new(grp, inflate)?.min_distance(p, q)
}

/// Test oracle used to cross-check the pruned modular enumeration: minimum
/// over all integer matrices with entries bounded by `entry_bound`.
#[doc(hidden)]
pub fn unpruned_modular_min(p: &UhpPoint, q: &UhpPoint, entry_bound: i64) -> (f64, Isometry) {
    let mut best = f64::INFINITY;
    let mut best_gamma = Isometry::identity();
    for a in -entry_bound..=entry_bound {
        for c in -entry_bound..=entry_bound {
            for d in -entry_bound..=entry_bound {
                let bs: Vec<i64> = if c == 0 {
                    if a * d != 1 {
                        continue;
                    }
                    (-entry_bound..=entry_bound).collect()
                } else {
                    let num = a * d - 1;
                    if num % c != 0 || (num / c).abs() > entry_bound {
                        continue;
                    }
                    vec![num / c]
                };
                for b in bs {
                    let g = Isometry::from_integers(a, b, c, d).expect("det 1");
                    let dist = p.distance(&g.apply(q));
                    if dist < best {
                        best = dist;
                        best_gamma = g;
                    }
                }
            }
        }
    }
    (best, best_gamma)
}
