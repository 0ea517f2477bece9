use crate::analytics::{distance_stats, generate_points, PointKind, SurfaceKind, DEFAULT_EPS_EQ};
use crate::cover::modular_cover_ten;
use crate::error::{GeoError, Result};

/// One row of the quadruple-count scaling table.
#[derive(Debug, Clone, Copy)]
pub struct QpRow {
    pub n: usize,
    /// |Q(P)|, exact.
    pub quadruples: u64,
    /// |Q(P)| / (N³·ln N), the trend quantity; no absolute constant is
    /// asserted.
    pub ratio: f64,
    pub m: usize,
    pub cs_lower_bound: f64,
}

/// Measure |Q(P)| over seeded area-uniform sets on the modular surface for
/// an ascending list of sizes. Each size draws its own deterministic stream
/// (seed offset by the size), so rows are independent and reproducible.
pub fn qp_scaling_experiment(n_values: &[usize], seed: u64) -> Result<Vec<QpRow>> {
    if n_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(GeoError::Precondition(
            "sizes must be strictly ascending".into(),
        ));
    }
    let cover = modular_cover_ten();
    let mut rows = Vec::with_capacity(n_values.len());
    for &n in n_values {
        let set = generate_points(
            PointKind::AreaUniform,
            SurfaceKind::Modular,
            Some(&cover),
            n,
            seed.wrapping_add(n as u64),
        )?;
        let stats = distance_stats(&set, Some(&cover), DEFAULT_EPS_EQ)?;
        let nf = n as f64;
        rows.push(QpRow {
            n,
            quadruples: stats.quadruples,
            ratio: stats.quadruples as f64 / (nf.powi(3) * nf.ln()),
            m: stats.m,
            cs_lower_bound: stats.cs_lower_bound,
        });
    }
    Ok(rows)
}
