//! Seeded point samplers shared by cover verification and point-set
//! generation. Area-uniform sampling uses the density 1/y² on the modular
//! strip truncated to y ≤ 20 and hyperbolic-polar rejection inside regular
//! polygons; boundary-biased variants land within ~1e−3 of a fundamental
//! domain side.

use crate::fuchsian::{
    membership_modular, FuchsianGroup, GroupKind, Membership, PolygonData, BOUNDARY_TOL,
};
use crate::hyp::{acosh_1p, geodesic_point, DiskPoint, UhpPoint};
use rand::Rng;
use std::f64::consts::TAU;

/// Height cap for modular-strip sampling.
pub(crate) const MODULAR_Y_CAP: f64 = 20.0;
/// Hyperbolic width of the boundary-biased band.
pub(crate) const BOUNDARY_BAND: f64 = 1e-3;

/// One reduced point of the group's fundamental domain.
pub(crate) fn sample_point<R: Rng>(grp: &FuchsianGroup, rng: &mut R, biased: bool) -> UhpPoint {
    match grp.kind() {
        GroupKind::Modular => {
            if biased {
                boundary_biased_modular(rng)
            } else {
                area_uniform_modular(rng)
            }
        }
        GroupKind::RegularGenus(_) => {
            let poly = grp.polygon().expect("genus group has polygon data");
            if biased {
                boundary_biased_polygon(poly, rng)
            } else {
                area_uniform_polygon(poly, rng)
            }
        }
    }
}

/// Inverse-transform sample of the y marginal with density 1/y² on [a, b].
fn sample_y<R: Rng>(rng: &mut R, a: f64, b: f64) -> f64 {
    let u: f64 = rng.gen();
    1.0 / (1.0 / a - u * (1.0 / a - 1.0 / b))
}

pub(crate) fn area_uniform_modular<R: Rng>(rng: &mut R) -> UhpPoint {
    let floor = 3f64.sqrt() / 2.0;
    loop {
        let x: f64 = rng.gen_range(-0.5..0.5);
        let y = sample_y(rng, floor, MODULAR_Y_CAP);
        if x * x + y * y > 1.0 {
            return UhpPoint::new(x, y).expect("y > 0");
        }
    }
}

fn boundary_biased_modular<R: Rng>(rng: &mut R) -> UhpPoint {
    loop {
        let delta = BOUNDARY_BAND * rng.gen::<f64>();
        let p = match rng.gen_range(0..3u32) {
            0 | 1 => {
                // vertical edges; the band has euclidean width delta*y
                let y = sample_y(rng, 3f64.sqrt() / 2.0, MODULAR_Y_CAP);
                let x = (0.5 - delta * y).max(0.0);
                let sign = if rng.gen_range(0..3u32) == 0 {
                    1.0
                } else {
                    -1.0
                };
                UhpPoint::new(sign * x, y)
            }
            _ => {
                // bottom arc |z| = 1, pushed inward radially
                let phi = rng.gen_range(TAU / 6.0..TAU / 3.0);
                let r = 1.0 + delta * phi.sin();
                UhpPoint::new(r * phi.cos(), r * phi.sin())
            }
        };
        if let Ok(p) = p {
            if membership_modular(&p, BOUNDARY_TOL) == Membership::Interior {
                return p;
            }
        }
    }
}

pub(crate) fn area_uniform_polygon<R: Rng>(poly: &PolygonData, rng: &mut R) -> UhpPoint {
    let span = poly.vertex_radius().cosh() - 1.0;
    loop {
        let rho = acosh_1p(rng.gen::<f64>() * span);
        let theta = rng.gen_range(0.0..TAU);
        let e = (rho / 2.0).tanh();
        let w = DiskPoint::new(e * theta.cos(), e * theta.sin()).expect("tanh < 1");
        let p = w.to_uhp();
        if poly.membership(&p, BOUNDARY_TOL) == Membership::Interior {
            return p;
        }
    }
}

fn boundary_biased_polygon<R: Rng>(poly: &PolygonData, rng: &mut R) -> UhpPoint {
    let n = poly.vertices_uhp().len();
    let base = UhpPoint::base();
    loop {
        let k = rng.gen_range(0..n);
        let t = rng.gen_range(0.02..0.98);
        let on_side = geodesic_point(
            &poly.vertices_uhp()[k],
            &poly.vertices_uhp()[(k + 1) % n],
            t,
        );
        let delta = BOUNDARY_BAND * rng.gen::<f64>();
        let d = on_side.distance(&base);
        let p = geodesic_point(&on_side, &base, (delta / d).min(1.0));
        if poly.membership(&p, BOUNDARY_TOL) == Membership::Interior {
            return p;
        }
    }
}

/// Area-uniform point in the hyperbolic disk of radius `radius` about the
/// base point; plane sampling without a fundamental domain.
pub(crate) fn area_uniform_disk<R: Rng>(radius: f64, rng: &mut R) -> UhpPoint {
    let span = radius.cosh() - 1.0;
    let rho = acosh_1p(rng.gen::<f64>() * span);
    let theta = rng.gen_range(0.0..TAU);
    let e = (rho / 2.0).tanh();
    DiskPoint::new(e * theta.cos(), e * theta.sin())
        .expect("tanh < 1")
        .to_uhp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn modular_samples_are_reduced_and_capped() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for i in 0..2000 {
            let p = if i % 10 == 9 {
                boundary_biased_modular(&mut rng)
            } else {
                area_uniform_modular(&mut rng)
            };
            assert_ne!(membership_modular(&p, BOUNDARY_TOL), Membership::Outside);
            assert!(p.y() <= MODULAR_Y_CAP + BOUNDARY_BAND);
        }
    }

    #[test]
    fn polygon_samples_land_inside() {
        let grp = FuchsianGroup::regular_genus(2).unwrap();
        let poly = grp.polygon().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for i in 0..500 {
            let p = sample_point(&grp, &mut rng, i % 10 == 9);
            assert_eq!(poly.membership(&p, BOUNDARY_TOL), Membership::Interior);
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let grp = FuchsianGroup::modular();
        let run = || {
            let mut rng = ChaCha8Rng::seed_from_u64(42);
            (0..50)
                .map(|i| sample_point(&grp, &mut rng, i % 10 == 9))
                .collect::<Vec<_>>()
        };
        let (a, b) = (run(), run());
        for (p, q) in a.iter().zip(&b) {
            assert_eq!((p.x(), p.y()), (q.x(), q.y()));
        }
    }
}
