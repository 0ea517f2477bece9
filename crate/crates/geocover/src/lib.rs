//! Distances on hyperbolic surfaces through geodesic covers of Fuchsian
//! groups.
//!
//! A surface distance d_Y(p, q) is the minimum of plane distances d(p, γq)
//! over the covering group. For the modular surface and for the standard
//! regular genus-g surfaces this minimum is realized within an explicit
//! finite set Γ₀ of group elements (a geodesic cover); this crate constructs
//! such covers, verifies them against brute-force oracles, counts group
//! elements in Frobenius-norm balls, and computes distinct-distance
//! statistics of point sets on the quotient surfaces.
//!
//! Modules:
//! - [`hyp`]: upper half-plane kernel (points, isometries, distances, trig)
//! - [`fuchsian`]: groups, fundamental domains, reduction, ball enumeration
//! - [`cover`]: geodesic covers, surface distances, oracles, verification
//! - [`analytics`]: distance multisets, quadruple counts, packing searches
//! - [`io`]: the JSON/CSV formats used by the command-line front end

pub mod analytics;
pub mod cover;
pub mod error;
pub mod fuchsian;
pub mod hyp;
pub mod io;
pub(crate) mod sample;

pub use error::{GeoError, Result};
pub use hyp::{DiskPoint, Isometry, UhpPoint};
