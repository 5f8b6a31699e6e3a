use anyhow::Result;
use pbt_core::figures::merit_report;
use pbt_core::{MeritReport, ProtocolVariant};

use super::{describe, Output, RunConfig};
use crate::table::{merit_cells, Cell, Table};

const COLUMNS: [&str; 11] = [
    "variant",
    "N",
    "d",
    "p_succ",
    "p_succ_exact",
    "F",
    "F_exact",
    "F_det",
    "F_det_exact",
    "provenance",
    "note",
];

fn report_row(r: &MeritReport) -> Vec<Cell> {
    let mut row = vec![r.variant.name().into(), r.ports.into(), r.dim.into()];
    row.extend(merit_cells(Some(&r.p_succ)));
    row.extend(merit_cells(r.fidelity.as_ref()));
    row.extend(merit_cells(r.det_fidelity.as_ref()));
    row.push(r.provenance.to_string().into());
    row.push(Cell::Empty);
    row
}

fn failed_row(variant: ProtocolVariant, ports: usize, dim: usize, provenance: &str, note: String) -> Vec<Cell> {
    let mut row = vec![variant.name().into(), ports.into(), dim.into()];
    row.extend(std::iter::repeat_n(Cell::Empty, 6));
    row.push(provenance.into());
    row.push(note.into());
    row
}

pub fn run(cfg: &mut RunConfig, simulate: bool) -> Result<Output> {
    let mut table = Table::new(COLUMNS.to_vec());
    let cells: Vec<(usize, ProtocolVariant)> = cfg
        .variants
        .iter()
        .flat_map(|&v| cfg.ports.iter().map(move |&n| (n, v)))
        .collect();
    let analytic = cfg
        .exec
        .map(&cells, |&(n, v)| merit_report(v, n, cfg.dim, cfg.vector(n)));
    for (&(n, v), res) in cells.iter().zip(analytic) {
        table.push(match res {
            Ok(r) => report_row(&r),
            Err(e) => failed_row(v, n, cfg.dim, "analytic", e.to_string()),
        });
        if !simulate {
            continue;
        }
        let sim = cfg.simulator(n).and_then(|s| {
            let r = s.simulate(v, cfg.vector(n))?;
            let dumps = if cfg.wants_dumps() {
                let p = s.build_povms(v, cfg.vector(n))?;
                p.labels
                    .iter()
                    .zip(&p.elements)
                    .map(|(l, e)| e.dump(&format!("{} N={n} E{l}", v.name())))
                    .collect()
            } else {
                Vec::new()
            };
            Ok((r, dumps))
        });
        match sim {
            Ok((r, dumps)) => {
                table.push(report_row(&r));
                cfg.record_dumps(dumps);
            }
            Err(e) => table.push(failed_row(v, n, cfg.dim, "simulated", describe(&e).0)),
        }
    }
    Ok(Output::ok(table))
}
