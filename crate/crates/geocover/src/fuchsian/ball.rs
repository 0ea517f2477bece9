use crate::error::{GeoError, Result};
use crate::fuchsian::{FuchsianGroup, GroupKind};
use crate::hyp::{acosh_1p, Isometry, UhpPoint};
use std::collections::{HashMap, HashSet};

/// Desk-scale cap on R² for surface-group balls.
pub const GENUS_NORMSQ_CAP: f64 = 1.0e7;
/// Desk-scale cap on R² for modular balls.
pub const MODULAR_NORMSQ_CAP: f64 = 1.0e8;
/// Hard cap on elements visited during breadth-first closure.
const VISIT_CAP: usize = 20_000_000;

/// Entrywise tolerance identifying two floating canonical forms.
const DEDUP_EQ_TOL: f64 = 1e-6;
/// Discreteness guard: distinct elements this close flag the tolerance.
const DEDUP_GAP_GUARD: f64 = 1e-3;
/// Spatial-hash cell size for float dedup.
const DEDUP_CELL: f64 = 1e-4;

/// All group elements with Frobenius norm at most `radius`, sorted by
/// (norm², canonical entries).
#[derive(Debug, Clone)]
pub struct BallEnumeration {
    radius: f64,
    depth: f64,
    elements: Vec<Isometry>,
    exact: bool,
}

impl BallEnumeration {
    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Hyperbolic radius Q = acosh(R²/2) of the corresponding orbit ball.
    pub fn depth(&self) -> f64 {
        self.depth
    }

    pub fn elements(&self) -> &[Isometry] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn contains(&self, iso: &Isometry, tol: f64) -> bool {
        self.elements.iter().any(|e| e.approx_eq(iso, tol))
    }

    /// Smallest entrywise gap between distinct elements; validation runs use
    /// this to confirm the dedup tolerance sits inside the discreteness gap.
    pub fn min_distinct_gap(&self) -> f64 {
        let mut best = f64::INFINITY;
        for i in 0..self.elements.len() {
            for j in (i + 1)..self.elements.len() {
                let (a1, b1, c1, d1) = self.elements[i].entries();
                let (a2, b2, c2, d2) = self.elements[j].entries();
                let gap = (a1 - a2)
                    .abs()
                    .max((b1 - b2).abs())
                    .max((c1 - c2).abs())
                    .max((d1 - d2).abs());
                best = best.min(gap);
            }
        }
        best
    }
}

impl FuchsianGroup {
    /// Enumerate the complete ball {γ : ‖γ‖ ≤ R} by breadth-first closure
    /// under generator multiplication with canonical-form dedup.
    ///
    /// Modular balls use exact 64-bit integer arithmetic with overflow
    /// checks and a frontier kept up to R·max‖generator‖·1.01; every element
    /// within R is reached because a norm can shrink by at most the
    /// generator norm per multiplication. Surface-group balls keep the
    /// frontier up to displacement Q + vertex_radius: the fundamental
    /// domains crossed by the geodesic from the base point to γ(base) all
    /// have centers within that distance, so the closure cannot miss an
    /// element. Output order is deterministic.
    pub fn enumerate_ball(&self, radius: f64) -> Result<BallEnumeration> {
        let rsq = radius * radius;
        if !(rsq >= 2.0 - 1e-9) {
            return Err(GeoError::RadiusTooSmall(radius));
        }
        let depth = acosh_1p((rsq / 2.0 - 1.0).max(0.0));
        let elements = match self.kind() {
            GroupKind::Modular => {
                if rsq > MODULAR_NORMSQ_CAP {
                    return Err(GeoError::CapExceeded(format!(
                        "modular ball R^2 = {rsq} exceeds {MODULAR_NORMSQ_CAP}"
                    )));
                }
                modular_ball(rsq)?
            }
            GroupKind::RegularGenus(_) => {
                if rsq > GENUS_NORMSQ_CAP {
                    return Err(GeoError::CapExceeded(format!(
                        "surface-group ball R^2 = {rsq} exceeds {GENUS_NORMSQ_CAP}"
                    )));
                }
                let vertex_radius = self.polygon().expect("genus group").vertex_radius();
                let keep_cosh = (depth + vertex_radius + 0.05).cosh();
                let base = UhpPoint::base();
                let mut elements = genus_bfs(self.generators(), &base, keep_cosh)?;
                elements.retain(|e| e.norm_sq() <= rsq + 1e-9);
                elements
            }
        };
        let mut elements = elements;
        elements.sort_by(|x, y| {
            let kx = x.sort_key();
            let ky = y.sort_key();
            kx.0.total_cmp(&ky.0)
                .then(kx.1.total_cmp(&ky.1))
                .then(kx.2.total_cmp(&ky.2))
                .then(kx.3.total_cmp(&ky.3))
                .then(kx.4.total_cmp(&ky.4))
        });
        Ok(BallEnumeration {
            radius,
            depth,
            elements,
            exact: matches!(self.kind(), GroupKind::Modular),
        })
    }
}

/// Group elements whose orbit point γ(base) lies within `radius` of
/// `center`, for surface groups; the result is a superset containing every
/// such element (the keep band extends by the polygon vertex radius, which
/// is what makes the breadth-first walk complete) and is deduplicated and
/// deterministically ordered.
pub fn orbit_near(grp: &FuchsianGroup, center: &UhpPoint, radius: f64) -> Result<Vec<Isometry>> {
    let poly = grp.polygon().ok_or_else(|| {
        GeoError::Precondition("orbit_near needs a surface group with polygon data".into())
    })?;
    let keep_cosh = (radius + poly.vertex_radius() + 0.05).cosh();
    let mut elements = genus_bfs(grp.generators(), center, keep_cosh)?;
    elements.sort_by(|x, y| {
        let kx = x.sort_key();
        let ky = y.sort_key();
        kx.0.total_cmp(&ky.0)
            .then(kx.1.total_cmp(&ky.1))
            .then(kx.2.total_cmp(&ky.2))
            .then(kx.3.total_cmp(&ky.3))
            .then(kx.4.total_cmp(&ky.4))
    });
    Ok(elements)
}

/// Breadth-first closure keeping elements with cosh d(γ(base), center)
/// within `keep_cosh`.
fn genus_bfs(generators: &[Isometry], center: &UhpPoint, keep_cosh: f64) -> Result<Vec<Isometry>> {
    let base = UhpPoint::base();
    let keep = |e: &Isometry| -> bool {
        let p = e.apply(&base);
        let dx = p.x() - center.x();
        let dy = p.y() - center.y();
        1.0 + (dx * dx + dy * dy) / (2.0 * p.y() * center.y()) <= keep_cosh
    };
    let mut dedup = FloatDedup::new();
    let id = Isometry::identity();
    if !keep(&id) {
        return Ok(Vec::new());
    }
    dedup.try_insert(id)?;
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for e in &frontier {
            for h in generators {
                let w = e.compose(h);
                if !keep(&w) {
                    continue;
                }
                if dedup.try_insert(w)?.is_some() {
                    next.push(w);
                }
            }
        }
        if dedup.items.len() > VISIT_CAP {
            return Err(GeoError::CapExceeded(format!(
                "breadth-first closure visited more than {VISIT_CAP} elements"
            )));
        }
        frontier = next;
    }
    Ok(dedup.items)
}

/// Spatial-hash dedup on canonical entries. Insert returns the new index or
/// None for a duplicate; an element in the forbidden band between the
/// equality tolerance and the discreteness guard is an error.
struct FloatDedup {
    cells: HashMap<[i64; 4], Vec<u32>>,
    items: Vec<Isometry>,
}

impl FloatDedup {
    fn new() -> Self {
        FloatDedup {
            cells: HashMap::new(),
            items: Vec::new(),
        }
    }

    fn cell_of(iso: &Isometry) -> [i64; 4] {
        let (a, b, c, d) = iso.entries();
        [
            (a / DEDUP_CELL).floor() as i64,
            (b / DEDUP_CELL).floor() as i64,
            (c / DEDUP_CELL).floor() as i64,
            (d / DEDUP_CELL).floor() as i64,
        ]
    }

    fn try_insert(&mut self, iso: Isometry) -> Result<Option<usize>> {
        let center = Self::cell_of(&iso);
        let (a, b, c, d) = iso.entries();
        let mut probe = [0i64; 4];
        for da in -1..=1 {
            probe[0] = center[0] + da;
            for db in -1..=1 {
                probe[1] = center[1] + db;
                for dc in -1..=1 {
                    probe[2] = center[2] + dc;
                    for dd in -1..=1 {
                        probe[3] = center[3] + dd;
                        if let Some(list) = self.cells.get(&probe) {
                            for &idx in list {
                                let (ea, eb, ec, ed) = self.items[idx as usize].entries();
                                let gap = (a - ea)
                                    .abs()
                                    .max((b - eb).abs())
                                    .max((c - ec).abs())
                                    .max((d - ed).abs());
                                if gap <= DEDUP_EQ_TOL {
                                    return Ok(None);
                                }
                                if gap < DEDUP_GAP_GUARD {
                                    return Err(GeoError::DedupGap(gap));
                                }
                            }
                        }
                    }
                }
            }
        }
        let idx = self.items.len();
        self.items.push(iso);
        self.cells.entry(center).or_default().push(idx as u32);
        Ok(Some(idx))
    }
}

/// Exact integer breadth-first ball for the modular group.
fn modular_ball(rsq: f64) -> Result<Vec<Isometry>> {
    // generators T, T^-1, S; max generator norm is sqrt(3)
    let gens: [[i64; 4]; 3] = [[1, 1, 0, 1], [1, -1, 0, 1], [0, -1, 1, 0]];
    let frontier_cap = rsq * 3.0 * 1.0201;
    let norm_cap = (rsq + 1e-9).floor() as i64;
    let mut seen: HashSet<[i64; 4]> = HashSet::new();
    let id = [1i64, 0, 0, 1];
    seen.insert(id);
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for e in &frontier {
            for h in &gens {
                let w = canonical_int(crate::hyp::int_mul(e, h)?);
                let nsq = int_norm_sq(&w)?;
                if nsq as f64 > frontier_cap {
                    continue;
                }
                if seen.insert(w) {
                    next.push(w);
                }
            }
        }
        if seen.len() > VISIT_CAP {
            return Err(GeoError::CapExceeded(format!(
                "modular closure visited more than {VISIT_CAP} elements"
            )));
        }
        frontier = next;
    }
    let mut out = Vec::new();
    for m in seen {
        if int_norm_sq(&m)? <= norm_cap {
            out.push(Isometry::from_integers(m[0], m[1], m[2], m[3])?);
        }
    }
    Ok(out)
}

pub(crate) fn canonical_int(m: [i64; 4]) -> [i64; 4] {
    let lead = m.iter().find(|&&e| e != 0).copied().unwrap_or(1);
    if lead < 0 {
        [-m[0], -m[1], -m[2], -m[3]]
    } else {
        m
    }
}

fn int_norm_sq(m: &[i64; 4]) -> Result<i64> {
    let mut total = 0i64;
    for &x in m {
        let sq = x.checked_mul(x).ok_or(GeoError::IntegerOverflow)?;
        total = total.checked_add(sq).ok_or(GeoError::IntegerOverflow)?;
    }
    Ok(total)
}

/// One row of the lattice-count table: (R, N(R), N(R)/R²).
#[derive(Debug, Clone, Copy)]
pub struct LatticeCountRow {
    pub radius: f64,
    pub count: usize,
    pub ratio: f64,
}

/// Count ball sizes on an ascending radius grid; a single enumeration at the
/// largest radius serves every row.
pub fn lattice_count_table(grp: &FuchsianGroup, r_values: &[f64]) -> Result<Vec<LatticeCountRow>> {
    if r_values.is_empty() {
        return Ok(Vec::new());
    }
    if r_values.windows(2).any(|w| w[0] > w[1]) {
        return Err(GeoError::Precondition(
            "radius grid must be ascending".into(),
        ));
    }
    let ball = grp.enumerate_ball(*r_values.last().unwrap())?;
    let mut rows = Vec::with_capacity(r_values.len());
    for &r in r_values {
        let cap = r * r + 1e-9;
        let count = ball
            .elements()
            .iter()
            .filter(|e| e.norm_sq() <= cap)
            .count();
        rows.push(LatticeCountRow {
            radius: r,
            count,
            ratio: count as f64 / (r * r),
        });
    }
    Ok(rows)
}
