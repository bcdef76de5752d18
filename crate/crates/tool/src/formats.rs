//! Text renderings of curves, Følner rows, edge lists and the prime tree.
//! Integers are always written in full decimal.

use std::fmt::Write as _;

use num_bigint::BigInt;
use omega_core::{FolnerRow, GrowthCurve};
use serde_json::{json, Value};

/// `j,volume` rows.
pub fn growth_csv(curve: &GrowthCurve) -> String {
    let mut out = String::from("j,volume\n");
    for (j, v) in curve.radii.iter().zip(&curve.volumes) {
        writeln!(out, "{j},{v}").unwrap();
    }
    out
}

pub fn growth_json(curve: &GrowthCurve) -> Value {
    json!({
        "spec": curve.spec_name,
        "truncation": curve.truncation,
        "center": curve.center.to_string(),
        "rows": curve
            .radii
            .iter()
            .zip(&curve.volumes)
            .zip(&curve.extents)
            .map(|((j, v), (lo, hi))| json!({
                "j": j,
                "volume": v,
                "min": lo.to_string(),
                "max": hi.to_string(),
            }))
            .collect::<Vec<_>>(),
    })
}

/// `n,interval,boundary,ratio_num,ratio_den` rows; the ratio is reduced.
pub fn folner_csv(rows: &[FolnerRow]) -> String {
    let mut out = String::from("n,interval,boundary,ratio_num,ratio_den\n");
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.n,
            r.interval_size,
            r.boundary_count,
            r.ratio.numer(),
            r.ratio.denom()
        )
        .unwrap();
    }
    out
}

pub fn folner_json(spec_name: &str, rows: &[FolnerRow]) -> Value {
    json!({
        "spec": spec_name,
        "boundary": "outer-vertex: vertices of [-n, n] with a neighbour outside",
        "rows": rows.iter().map(|r| json!({
            "n": r.n,
            "interval": r.interval_size,
            "boundary": r.boundary_count,
            "ratio_num": r.ratio.numer(),
            "ratio_den": r.ratio.denom(),
        })).collect::<Vec<_>>(),
    })
}

/// `u,v` rows.
pub fn edges_csv(edges: &[(BigInt, BigInt)]) -> String {
    let mut out = String::from("u,v\n");
    for (u, v) in edges {
        writeln!(out, "{u},{v}").unwrap();
    }
    out
}

pub fn edges_dot(name: &str, edges: &[(BigInt, BigInt)]) -> String {
    let mut out = format!("graph {name:?} {{\n");
    for (u, v) in edges {
        writeln!(out, "  \"{u}\" -- \"{v}\";").unwrap();
    }
    out.push_str("}\n");
    out
}

/// `{root, edges: [[parent, child], ...]}` with decimal-string labels.
pub fn tree_json(root: &BigInt, edges: &[(BigInt, BigInt)]) -> Value {
    json!({
        "root": root.to_string(),
        "edges": edges
            .iter()
            .map(|(p, c)| json!([p.to_string(), c.to_string()]))
            .collect::<Vec<_>>(),
    })
}
