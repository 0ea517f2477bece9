//! The file formats used by the command-line front end: cover files,
//! point-set files and verification reports as JSON; statistics, lattice
//! counts and scaling tables as CSV.
//!
//! Floats are written with 17 significant digits (full f64 round-trip),
//! exact-integer matrix entries as plain integers. CSV uses '.' decimals,
//! ',' separators and LF line endings, so outputs are byte-stable and fit
//! golden-file testing. Effective configuration is echoed into a header
//! line of every table for provenance.

use crate::analytics::{CrossStats, DistanceStats, PointSet, QpRow, SurfaceKind};
use crate::cover::{CoverMethod, CoverSearchBounds, GeodesicCover, VerifyReport};
use crate::error::{GeoError, Result};
use crate::fuchsian::{FuchsianGroup, LatticeCountRow};
use crate::hyp::{Isometry, UhpPoint};
use serde_json::Value;
use std::fmt::Write as _;

/// 17-significant-digit decimal form, stable across runs.
pub fn fmt_f64_17(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_entry(x: f64, exact: bool) -> String {
    if exact {
        format!("{}", x as i64)
    } else {
        fmt_f64_17(x)
    }
}

fn fmt_matrix(iso: &Isometry) -> String {
    let (a, b, c, d) = iso.entries();
    let e = iso.is_exact();
    format!(
        "[[{}, {}], [{}, {}]]",
        fmt_entry(a, e),
        fmt_entry(b, e),
        fmt_entry(c, e),
        fmt_entry(d, e)
    )
}

fn fmt_point(p: &UhpPoint) -> String {
    format!(
        "{{\"x\": {}, \"y\": {}}}",
        fmt_f64_17(p.x()),
        fmt_f64_17(p.y())
    )
}

fn fmt_matrix_list(list: &[Isometry], indent: &str) -> String {
    let mut out = String::from("[\n");
    for (i, iso) in list.iter().enumerate() {
        let sep = if i + 1 == list.len() { "" } else { "," };
        let _ = writeln!(out, "{indent}  {}{sep}", fmt_matrix(iso));
    }
    let _ = write!(out, "{indent}]");
    out
}

/// Cover file: surface, method, bound and the element lists.
pub fn write_cover(cover: &GeodesicCover) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(
        out,
        "  \"surface\": \"{}\",",
        cover.surface().kind().label()
    );
    let _ = writeln!(out, "  \"method\": \"{}\",", cover.method().label());
    match cover.bound_used() {
        Some(b) => {
            let u0 = match b.u0 {
                Some(u) => format!(", \"u0\": {}", fmt_f64_17(u)),
                None => String::new(),
            };
            let _ = writeln!(
                out,
                "  \"bound_used\": {{\"normsq_cap\": {}{u0}}},",
                fmt_f64_17(b.normsq_cap)
            );
        }
        None => {
            let _ = writeln!(out, "  \"bound_used\": null,");
        }
    }
    let _ = writeln!(
        out,
        "  \"gamma0\": {},",
        fmt_matrix_list(cover.gamma0(), "  ")
    );
    match cover.radical() {
        Some(r) => {
            let _ = writeln!(out, "  \"radical\": {}", fmt_matrix_list(r, "  "));
        }
        None => {
            let _ = writeln!(out, "  \"radical\": null");
        }
    }
    out.push_str("}\n");
    out
}

/// Point-set file.
pub fn write_points(set: &PointSet) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"surface\": \"{}\",", set.surface().label());
    let _ = writeln!(out, "  \"label\": {},", Value::from(set.label()));
    out.push_str("  \"points\": [\n");
    for (i, p) in set.points().iter().enumerate() {
        let sep = if i + 1 == set.len() { "" } else { "," };
        let _ = writeln!(out, "    {}{sep}", fmt_point(p));
    }
    out.push_str("  ]\n}\n");
    out
}

/// Verification report, including the matrices that were ever an argmin.
pub fn write_verify_report(report: &VerifyReport, cover: &GeodesicCover) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"samples\": {},", report.samples);
    let _ = writeln!(out, "  \"seed\": {},", report.seed);
    let _ = writeln!(
        out,
        "  \"max_abs_gap\": {},",
        fmt_f64_17(report.max_abs_gap)
    );
    match &report.worst_pair {
        Some((p, q)) => {
            let _ = writeln!(
                out,
                "  \"worst_pair\": {{\"p\": {}, \"q\": {}}},",
                fmt_point(p),
                fmt_point(q)
            );
        }
        None => {
            let _ = writeln!(out, "  \"worst_pair\": null,");
        }
    }
    let _ = writeln!(out, "  \"used_indices\": {:?},", report.used_indices);
    let used: Vec<Isometry> = report
        .used_indices
        .iter()
        .map(|&i| cover.gamma0()[i])
        .collect();
    let _ = writeln!(out, "  \"used_elements\": {}", fmt_matrix_list(&used, "  "));
    out.push_str("}\n");
    out
}

/// Distance statistics as CSV: a config-echo comment, a header row naming
/// the summary quantities, one summary row, then the per-cluster table.
pub fn write_stats_csv(stats: &DistanceStats, config_echo: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {config_echo}");
    let _ = writeln!(out, "n_points,m,quadruples,cs_lower_bound,thm_bound");
    let thm = stats.thm_bound.map(fmt_f64_17).unwrap_or_default();
    let _ = writeln!(
        out,
        "{},{},{},{},{}",
        stats.n_points,
        stats.m,
        stats.quadruples,
        fmt_f64_17(stats.cs_lower_bound),
        thm
    );
    let _ = writeln!(out, "value,multiplicity");
    for (v, n) in stats.values.iter().zip(&stats.multiplicities) {
        let _ = writeln!(out, "{},{}", fmt_f64_17(*v), n);
    }
    out
}

/// Distance statistics as JSON.
pub fn write_stats_json(stats: &DistanceStats, config_echo: &str) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"config\": {},", Value::from(config_echo));
    let _ = writeln!(out, "  \"n_points\": {},", stats.n_points);
    let _ = writeln!(out, "  \"m\": {},", stats.m);
    let _ = writeln!(out, "  \"quadruples\": {},", stats.quadruples);
    let _ = writeln!(
        out,
        "  \"cs_lower_bound\": {},",
        fmt_f64_17(stats.cs_lower_bound)
    );
    match stats.thm_bound {
        Some(t) => {
            let _ = writeln!(out, "  \"thm_bound\": {},", fmt_f64_17(t));
            let _ = writeln!(out, "  \"thm_bound_note\": \"shape-only\",");
        }
        None => {
            let _ = writeln!(out, "  \"thm_bound\": null,");
        }
    }
    out.push_str("  \"values\": [");
    for (i, v) in stats.values.iter().enumerate() {
        let sep = if i + 1 == stats.values.len() {
            ""
        } else {
            ", "
        };
        let _ = write!(out, "{}{sep}", fmt_f64_17(*v));
    }
    out.push_str("],\n  \"multiplicities\": [");
    for (i, n) in stats.multiplicities.iter().enumerate() {
        let sep = if i + 1 == stats.multiplicities.len() {
            ""
        } else {
            ", "
        };
        let _ = write!(out, "{n}{sep}");
    }
    out.push_str("]\n}\n");
    out
}

/// Cross-set statistics as CSV.
pub fn write_cross_csv(stats: &CrossStats, config_echo: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {config_echo}");
    let _ = writeln!(out, "n1,n2,intersection,m_cross,quadruples_cross,bound");
    let _ = writeln!(
        out,
        "{},{},{},{},{},{}",
        stats.n1,
        stats.n2,
        stats.intersection,
        stats.m_cross,
        stats.quadruples_cross,
        fmt_f64_17(stats.bound)
    );
    out
}

/// Ball enumeration as a JSON element list with its norm bound.
pub fn write_ball(ball: &crate::fuchsian::BallEnumeration) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"radius\": {},", fmt_f64_17(ball.radius()));
    let _ = writeln!(out, "  \"depth\": {},", fmt_f64_17(ball.depth()));
    let _ = writeln!(out, "  \"exact\": {},", ball.is_exact());
    let _ = writeln!(out, "  \"count\": {},", ball.len());
    let _ = writeln!(
        out,
        "  \"elements\": {}",
        fmt_matrix_list(ball.elements(), "  ")
    );
    out.push_str("}\n");
    out
}

/// Lattice-count table as CSV.
pub fn write_latcount_csv(rows: &[LatticeCountRow], config_echo: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {config_echo}");
    let _ = writeln!(out, "R,N,ratio");
    for row in rows {
        let _ = writeln!(
            out,
            "{},{},{}",
            fmt_f64_17(row.radius),
            row.count,
            fmt_f64_17(row.ratio)
        );
    }
    out
}

/// Quadruple-count scaling table as CSV.
pub fn write_qp_csv(rows: &[QpRow], config_echo: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {config_echo}");
    let _ = writeln!(out, "N,quadruples,ratio_n3logn,m,cs_lower_bound");
    for row in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            row.n,
            row.quadruples,
            fmt_f64_17(row.ratio),
            row.m,
            fmt_f64_17(row.cs_lower_bound)
        );
    }
    out
}

/// Equilateral packing report as JSON.
pub fn write_equilateral_json(report: &crate::analytics::EquilateralReport) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"g\": {},", report.g);
    let _ = writeln!(out, "  \"r\": {},", fmt_f64_17(report.r));
    let _ = writeln!(out, "  \"found\": {},", report.found);
    let _ = writeln!(out, "  \"found_on_circle\": {},", report.found_on_circle);
    let _ = writeln!(out, "  \"alpha_min\": {},", fmt_f64_17(report.alpha_min));
    let _ = writeln!(out, "  \"circle_cap\": {}", report.circle_cap);
    out.push_str("}\n");
    out
}

/// Parse "plane" | "modular" | "genus:G".
pub fn parse_surface(s: &str) -> Result<SurfaceKind> {
    match s {
        "plane" => Ok(SurfaceKind::Plane),
        "modular" => Ok(SurfaceKind::Modular),
        other => {
            if let Some(g) = other.strip_prefix("genus:") {
                let g: u32 = g
                    .parse()
                    .map_err(|_| GeoError::Parse(format!("bad genus in '{other}'")))?;
                Ok(SurfaceKind::RegularGenus(g))
            } else {
                Err(GeoError::Parse(format!(
                    "unknown surface '{other}' (want plane, modular or genus:G)"
                )))
            }
        }
    }
}

fn parse_entry(v: &Value) -> Result<(f64, bool)> {
    let n = v
        .as_f64()
        .ok_or_else(|| GeoError::Parse("matrix entry is not a number".into()))?;
    Ok((n, v.is_i64() || v.is_u64()))
}

fn parse_matrix(v: &Value) -> Result<Isometry> {
    let rows = v
        .as_array()
        .filter(|r| r.len() == 2)
        .ok_or_else(|| GeoError::Parse("matrix must be [[a,b],[c,d]]".into()))?;
    let mut entries = Vec::with_capacity(4);
    let mut all_int = true;
    for row in rows {
        let cols = row
            .as_array()
            .filter(|c| c.len() == 2)
            .ok_or_else(|| GeoError::Parse("matrix must be [[a,b],[c,d]]".into()))?;
        for c in cols {
            let (x, is_int) = parse_entry(c)?;
            all_int &= is_int;
            entries.push(x);
        }
    }
    if all_int {
        Isometry::from_integers(
            entries[0] as i64,
            entries[1] as i64,
            entries[2] as i64,
            entries[3] as i64,
        )
    } else {
        Isometry::new(entries[0], entries[1], entries[2], entries[3])
    }
}

fn parse_matrix_list(v: &Value) -> Result<Vec<Isometry>> {
    v.as_array()
        .ok_or_else(|| GeoError::Parse("expected a matrix list".into()))?
        .iter()
        .map(parse_matrix)
        .collect()
}

fn group_for_surface(kind: SurfaceKind) -> Result<FuchsianGroup> {
    match kind {
        SurfaceKind::Plane => Err(GeoError::Parse(
            "a cover needs a quotient surface, not the plane".into(),
        )),
        SurfaceKind::Modular => Ok(FuchsianGroup::modular()),
        SurfaceKind::RegularGenus(g) => FuchsianGroup::regular_genus(g),
    }
}

/// Read a cover file back; the surface group is rebuilt (and re-verified)
/// from its label.
pub fn read_cover(text: &str) -> Result<GeodesicCover> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| GeoError::Parse(format!("bad JSON: {e}")))?;
    let surface_str = v["surface"]
        .as_str()
        .ok_or_else(|| GeoError::Parse("missing surface".into()))?;
    let surface = group_for_surface(parse_surface(surface_str)?)?;
    let method = match v["method"].as_str() {
        Some("modular-ten") => CoverMethod::ModularTen,
        Some("ball-radius-bound") => CoverMethod::BallRadiusBound,
        Some("explicit") | None => CoverMethod::Explicit,
        Some(other) => {
            return Err(GeoError::Parse(format!("unknown method '{other}'")));
        }
    };
    let bound_used = match &v["bound_used"] {
        Value::Null => None,
        b => Some(CoverSearchBounds {
            normsq_cap: b["normsq_cap"]
                .as_f64()
                .ok_or_else(|| GeoError::Parse("bound_used needs normsq_cap".into()))?,
            u0: b["u0"].as_f64(),
        }),
    };
    let gamma0 = parse_matrix_list(&v["gamma0"])?;
    let radical = match &v["radical"] {
        Value::Null => None,
        r => Some(parse_matrix_list(r)?),
    };
    GeodesicCover::from_parts(surface, gamma0, method, bound_used, radical)
}

/// Read a point-set file.
pub fn read_points(text: &str) -> Result<PointSet> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| GeoError::Parse(format!("bad JSON: {e}")))?;
    let surface = parse_surface(
        v["surface"]
            .as_str()
            .ok_or_else(|| GeoError::Parse("missing surface".into()))?,
    )?;
    let label = v["label"].as_str().unwrap_or("").to_string();
    let points = v["points"]
        .as_array()
        .ok_or_else(|| GeoError::Parse("missing points".into()))?
        .iter()
        .map(|p| {
            let x = p["x"]
                .as_f64()
                .ok_or_else(|| GeoError::Parse("point needs x".into()))?;
            let y = p["y"]
                .as_f64()
                .ok_or_else(|| GeoError::Parse("point needs y".into()))?;
            UhpPoint::new(x, y)
        })
        .collect::<Result<Vec<_>>>()?;
    PointSet::new(surface, points, label)
}
