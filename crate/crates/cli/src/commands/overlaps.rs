use anyhow::Result;
use pbt_core::figures::{resource_overlap, OverlapPair};

use super::{describe, Output, RunConfig, Status};
use crate::table::{Cell, Table};

pub const TOLERANCES: &[(&str, f64)] = &[("overlap", 1e-8)];

pub fn run(cfg: &mut RunConfig, pairs: &[OverlapPair], simulate: bool) -> Result<Output> {
    let pairs = if pairs.is_empty() {
        OverlapPair::ALL.to_vec()
    } else {
        pairs.to_vec()
    };
    let tol = cfg.tolerances.get("overlap");
    let mut table = Table::new(vec![
        "pair",
        "N",
        "d",
        "analytic",
        "simulated",
        "residual",
        "status",
        "note",
    ]);
    let mut status = Status::Ok;
    for &pair in &pairs {
        for &n in &cfg.ports {
            let mut notes = Vec::new();
            let analytic = resource_overlap(pair, n, cfg.dim, cfg.vector(n))
                .map_err(|e| notes.push(e.to_string()))
                .ok();
            let simulated = if simulate {
                cfg.simulator(n)
                    .and_then(|s| s.state_overlap(pair, cfg.vector(n)))
                    .map_err(|e| notes.push(describe(&e).0))
                    .ok()
            } else {
                None
            };
            let (residual, verdict) = match (analytic, simulated) {
                (Some(a), Some(s)) if (a - s).abs() <= tol => (Some((a - s).abs()), "ok"),
                (Some(a), Some(s)) => {
                    status = Status::Breach;
                    (Some((a - s).abs()), "breach")
                }
                _ => (None, if simulate { "n/a" } else { "" }),
            };
            table.push(vec![
                pair.name().into(),
                n.into(),
                cfg.dim.into(),
                analytic.into(),
                simulated.into(),
                residual.into(),
                if verdict.is_empty() {
                    Cell::Empty
                } else {
                    verdict.into()
                },
                if notes.is_empty() {
                    Cell::Empty
                } else {
                    notes.join("; ").into()
                },
            ]);
        }
    }
    Ok(Output {
        table,
        status,
        warnings: Vec::new(),
    })
}
