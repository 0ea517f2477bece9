use crate::error::{GeoError, Result};
use crate::fuchsian::Membership;
use crate::hyp::{right_triangle_hyp, right_triangle_leg, DiskPoint, Isometry, UhpPoint};
use std::f64::consts::PI;

/// Derived constants and gluing data of the standard regular 4g-gon surface.
///
/// The polygon is centered at the disk origin with vertices at angles
/// 2πk/4g and hyperbolic radius acosh(cot²β), β = π/4g. Side k runs from
/// vertex k to vertex k+1. Sides are paired in blocks of four
/// (4m ↔ 4m+2, 4m+1 ↔ 4m+3) with orientation reversed, and `pair_maps[2m]`,
/// `pair_maps[2m+1]` carry side 4m and side 4m+1 onto their partners.
///
/// Every geometric claim the rest of the crate relies on is checked at
/// construction time: the commutator relator closes, interior angles equal
/// π/(2g), the vertices form one orbit, and each pairing map matches side
/// endpoints to 1e−9. A failed check is a construction error, not a warning.
#[derive(Debug, Clone)]
pub struct PolygonData {
    g: u32,
    beta: f64,
    vertex_radius: f64,
    edge_radius: f64,
    diam_bound: f64,
    vertices: Vec<DiskPoint>,
    vertices_uhp: Vec<UhpPoint>,
    pairing: Vec<usize>,
    pair_maps: Vec<Isometry>,
    side_circles: Vec<SideCircle>,
}

/// Euclidean circle carrying the geodesic through one polygon side; the
/// polygon interior is the side where |w − center| > radius.
#[derive(Debug, Clone, Copy)]
struct SideCircle {
    cx: f64,
    cy: f64,
    radius: f64,
}

impl PolygonData {
    pub(crate) fn build(g: u32) -> Result<Self> {
        let n = 4 * g as usize;
        let beta = PI / (4.0 * g as f64);
        let vertex_radius = right_triangle_hyp(beta)?;
        let edge_radius = right_triangle_leg(beta)?;
        let diam_bound = 2.0 * edge_radius;

        let euclid_r = (vertex_radius / 2.0).tanh();
        let mut vertices = Vec::with_capacity(n);
        let mut vertices_uhp = Vec::with_capacity(n);
        for k in 0..n {
            let theta = 2.0 * PI * k as f64 / n as f64;
            let v = DiskPoint::new(euclid_r * theta.cos(), euclid_r * theta.sin())?;
            vertices.push(v);
            vertices_uhp.push(v.to_uhp());
        }

        let mut pairing = vec![0usize; n];
        for m in 0..g as usize {
            pairing[4 * m] = 4 * m + 2;
            pairing[4 * m + 2] = 4 * m;
            pairing[4 * m + 1] = 4 * m + 3;
            pairing[4 * m + 3] = 4 * m + 1;
        }

        // side k = (v_k, v_{k+1}) maps onto side sigma(k) reversed:
        // v_k -> v_{sigma(k)+1}, v_{k+1} -> v_{sigma(k)}
        let mut pair_maps = Vec::with_capacity(2 * g as usize);
        for m in 0..g as usize {
            for src in [4 * m, 4 * m + 1] {
                let dst = pairing[src];
                pair_maps.push(Isometry::mapping_segment(
                    &vertices_uhp[src],
                    &vertices_uhp[(src + 1) % n],
                    &vertices_uhp[(dst + 1) % n],
                    &vertices_uhp[dst],
                )?);
            }
        }

        let side_circles = (0..n)
            .map(|k| side_circle(&vertices[k], &vertices[(k + 1) % n]))
            .collect::<Result<Vec<_>>>()?;

        let poly = PolygonData {
            g,
            beta,
            vertex_radius,
            edge_radius,
            diam_bound,
            vertices,
            vertices_uhp,
            pairing,
            pair_maps,
            side_circles,
        };
        poly.verify()?;
        Ok(poly)
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Distance from the center to any vertex: acosh(cot² β).
    pub fn vertex_radius(&self) -> f64 {
        self.vertex_radius
    }

    /// Distance from the center to any side: acosh(cot β).
    pub fn edge_radius(&self) -> f64 {
        self.edge_radius
    }

    /// Upper bound for the surface diameter: 2 · edge_radius.
    pub fn diam_bound(&self) -> f64 {
        self.diam_bound
    }

    pub fn vertices(&self) -> &[DiskPoint] {
        &self.vertices
    }

    pub fn vertices_uhp(&self) -> &[UhpPoint] {
        &self.vertices_uhp
    }

    /// The side-pairing involution on side indices.
    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    /// 2g side-pairing isometries; entry 2m+j carries side 4m+j, j ∈ {0, 1}.
    pub fn pair_maps(&self) -> &[Isometry] {
        &self.pair_maps
    }

    /// The side index carried by `pair_maps[j]`.
    pub fn pair_map_source(&self, j: usize) -> usize {
        4 * (j / 2) + (j % 2)
    }

    /// Generator pairs (a_m, b_m) satisfying [a_1,b_1]···[a_g,b_g] = 1.
    ///
    /// With this block-of-four pairing the closing combination is
    /// a_m = pair_maps[2m]⁻¹, b_m = pair_maps[2m+1]; the constructor checks
    /// the product numerically, so the convention is verified rather than
    /// assumed.
    pub fn relator_generators(&self) -> Vec<(Isometry, Isometry)> {
        (0..self.g as usize)
            .map(|m| (self.pair_maps[2 * m].inverse(), self.pair_maps[2 * m + 1]))
            .collect()
    }

    /// Frobenius distance of [a_1,b_1]···[a_g,b_g] from the identity.
    pub fn relator_defect(&self) -> f64 {
        let mut w = Isometry::identity();
        for (a, b) in self.relator_generators() {
            w = w.compose(&commutator(&a, &b));
        }
        w.frobenius_dist(&Isometry::identity())
    }

    /// Interior angle at vertex k, from the hyperbolic law of cosines.
    pub fn interior_angle(&self, k: usize) -> f64 {
        let n = self.vertices_uhp.len();
        let prev = &self.vertices_uhp[(k + n - 1) % n];
        let here = &self.vertices_uhp[k];
        let next = &self.vertices_uhp[(k + 1) % n];
        let a = here.distance(next);
        let b = prev.distance(here);
        let c = prev.distance(next);
        let cos_angle = (a.cosh() * b.cosh() - c.cosh()) / (a.sinh() * b.sinh());
        cos_angle.clamp(-1.0, 1.0).acos()
    }

    /// Classify `p` against the polygon with a hyperbolic boundary band of
    /// width `tol`.
    pub fn membership(&self, p: &UhpPoint, tol: f64) -> Membership {
        let w = p.to_disk();
        let scale = (1.0 - w.norm_sq()) / 2.0; // euclidean width of the band at w
        let band = tol * scale;
        let mut on_boundary = false;
        for side in &self.side_circles {
            let du = w.u() - side.cx;
            let dv = w.v() - side.cy;
            let f = (du * du + dv * dv).sqrt() - side.radius;
            if f < -band {
                return Membership::Outside;
            }
            if f <= band {
                on_boundary = true;
            }
        }
        if on_boundary {
            Membership::Boundary
        } else {
            Membership::Interior
        }
    }

    fn verify(&self) -> Result<()> {
        let n = self.vertices.len();
        let check = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(GeoError::ConstructionCheck(format!(
                    "genus {}: {}",
                    self.g, what
                )))
            }
        };

        check(
            (self.diam_bound - 2.0 * self.edge_radius).abs() <= 1e-12,
            "diameter bound is twice the edge radius",
        )?;
        let cot = 1.0 / self.beta.tan();
        check(
            (self.vertex_radius.cosh() - cot * cot).abs() <= 1e-12
                && (self.edge_radius.cosh() - cot).abs() <= 1e-12,
            "vertex/edge radii match the polygon trigonometry",
        )?;

        // pairing is a fixed-point-free involution and the maps carry side
        // endpoints onto the partner side reversed
        for k in 0..n {
            check(
                self.pairing[self.pairing[k]] == k && self.pairing[k] != k,
                "pairing is a fixed-point-free involution",
            )?;
        }
        for (j, map) in self.pair_maps.iter().enumerate() {
            let src = self.pair_map_source(j);
            let dst = self.pairing[src];
            let img_a = map.apply(&self.vertices_uhp[src]);
            let img_b = map.apply(&self.vertices_uhp[(src + 1) % n]);
            check(
                img_a.distance(&self.vertices_uhp[(dst + 1) % n]) <= 1e-9
                    && img_b.distance(&self.vertices_uhp[dst]) <= 1e-9,
                "pairing map matches side endpoints",
            )?;
        }

        for k in 0..n {
            check(
                (self.interior_angle(k) - PI / (2.0 * self.g as f64)).abs() <= 1e-9,
                "interior angles equal pi/2g",
            )?;
        }

        check(
            self.relator_defect() <= 1e-8,
            "commutator relator closes to the identity",
        )?;

        // all vertices belong to one orbit of the pairing maps
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, i: usize) -> usize {
            if parent[i] != i {
                let r = find(parent, parent[i]);
                parent[i] = r;
            }
            parent[i]
        }
        for j in 0..self.pair_maps.len() {
            let src = self.pair_map_source(j);
            let dst = self.pairing[src];
            let (ra, rb) = (find(&mut parent, src), find(&mut parent, (dst + 1) % n));
            parent[ra] = rb;
            let (rc, rd) = (find(&mut parent, (src + 1) % n), find(&mut parent, dst));
            parent[rc] = rd;
        }
        let root = find(&mut parent, 0);
        for k in 1..n {
            check(find(&mut parent, k) == root, "vertices form a single orbit")?;
        }
        Ok(())
    }
}

fn commutator(a: &Isometry, b: &Isometry) -> Isometry {
    a.compose(b).compose(&a.inverse()).compose(&b.inverse())
}

/// Circle through two disk points orthogonal to the unit circle. The center
/// solves 2c·v = 1 + |v|² for both endpoints.
fn side_circle(v: &DiskPoint, w: &DiskPoint) -> Result<SideCircle> {
    let det = v.u() * w.v() - v.v() * w.u();
    if det.abs() < 1e-14 {
        return Err(GeoError::ConstructionCheck(
            "polygon side passes through the disk center".into(),
        ));
    }
    let rv = (1.0 + v.norm_sq()) / 2.0;
    let rw = (1.0 + w.norm_sq()) / 2.0;
    let cx = (rv * w.v() - rw * v.v()) / det;
    let cy = (rw * v.u() - rv * w.u()) / det;
    let radius = (cx * cx + cy * cy - 1.0).sqrt();
    Ok(SideCircle { cx, cy, radius })
}
