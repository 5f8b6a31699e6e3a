use anyhow::Result;
use pbt_core::figures::{self, merit_report};
use pbt_core::simulator::{OperatorDump, SimError};
use pbt_core::{Merit, MeritReport, ProtocolVariant};

use super::{describe, Output, RunConfig, Status};
use crate::table::{merit_cells, Cell, Table};

pub const TOLERANCES: &[(&str, f64)] = &[
    ("p_succ", 1e-8),
    ("fidelity", 1e-8),
    ("det_fidelity", 1e-8),
    ("failure_overlap", 1e-9),
    ("completeness", 1e-10),
    ("positivity", 1e-10),
    ("covariance", 1e-10),
];

const COLUMNS: [&str; 11] = [
    "variant",
    "N",
    "d",
    "quantity",
    "analytic",
    "analytic_exact",
    "simulated",
    "residual",
    "tolerance",
    "status",
    "note",
];

struct Simulated {
    report: MeritReport,
    failure_overlap: Option<f64>,
    completeness: f64,
    min_eigenvalue: f64,
    covariance: f64,
    dumps: Vec<OperatorDump>,
}

fn simulate(cfg: &RunConfig, v: ProtocolVariant, n: usize) -> Result<Simulated, SimError> {
    let sim = cfg.simulator(n)?;
    let vec = cfg.vector(n);
    let povm = sim.build_povms(v, vec)?;
    let o = sim.optimizer_for(v, vec)?;
    let dumps = if cfg.wants_dumps() {
        povm.labels
            .iter()
            .zip(&povm.elements)
            .map(|(l, e)| e.dump(&format!("{} N={n} E{l}", v.name())))
            .collect()
    } else {
        Vec::new()
    };
    Ok(Simulated {
        report: sim.channel_merits(&povm, o.as_ref())?,
        failure_overlap: sim.failure_overlap(&povm, o.as_ref())?,
        completeness: povm.completeness_residual(),
        min_eigenvalue: povm.min_eigenvalue(),
        covariance: sim.covariance_residual(&povm)?,
        dumps,
    })
}

struct Rows<'a> {
    table: Table,
    status: Status,
    cfg: &'a RunConfig,
}

impl Rows<'_> {
    fn head(&self, v: ProtocolVariant, n: usize, quantity: &str) -> Vec<Cell> {
        vec![v.name().into(), n.into(), self.cfg.dim.into(), quantity.into()]
    }

    /// A row comparing an analytic value against a simulated one.
    fn check(
        &mut self,
        v: ProtocolVariant,
        n: usize,
        key: &'static str,
        analytic: Option<&Merit>,
        simulated: Option<f64>,
        note: Option<String>,
    ) {
        let tol = self.cfg.tolerances.get(key);
        let mut row = self.head(v, n, key);
        row.extend(merit_cells(analytic));
        row.push(simulated.into());
        let (residual, status) = match (analytic, simulated) {
            (Some(a), Some(s)) => {
                let r = (a.value() - s).abs();
                let ok = r <= tol;
                if !ok {
                    self.status = self.status.max(Status::Breach);
                }
                (Some(r), if ok { "ok" } else { "breach" })
            }
            _ => (None, "n/a"),
        };
        row.extend([residual.into(), tol.into(), status.into(), note.into()]);
        self.table.push(row);
    }

    /// A row for a quantity whose ideal value is zero.
    fn residual(&mut self, v: ProtocolVariant, n: usize, key: &'static str, value: f64) {
        self.check(v, n, key, Some(&Merit::Real(0.0)), Some(value), None);
    }

    fn skip(&mut self, v: ProtocolVariant, n: usize, status: &str, note: String) {
        let mut row = self.head(v, n, "all");
        row.extend([Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty]);
        row.extend([status.into(), note.into()]);
        self.table.push(row);
    }
}

pub fn run(cfg: &mut RunConfig) -> Result<Output> {
    let cells: Vec<(ProtocolVariant, usize)> = cfg
        .variants
        .iter()
        .flat_map(|&v| cfg.ports.iter().map(move |&n| (v, n)))
        .collect();
    // each simulation already parallelises internally
    let results: Vec<_> = cells.iter().map(|&(v, n)| simulate(cfg, v, n)).collect();
    let mut rows = Rows {
        table: Table::new(COLUMNS.to_vec()),
        status: Status::Ok,
        cfg,
    };
    let mut dumps = Vec::new();
    let (mut compared, mut capped) = (0usize, 0usize);
    for (&(v, n), res) in cells.iter().zip(results) {
        let sim = match res {
            Ok(s) => s,
            Err(e) => {
                let (note, cap) = describe(&e);
                capped += cap as usize;
                rows.skip(v, n, if cap { "skipped" } else { "unsupported" }, note);
                continue;
            }
        };
        compared += 1;
        let analytic = merit_report(v, n, rows.cfg.dim, rows.cfg.vector(n));
        let note = analytic.as_ref().err().map(|e| e.to_string());
        let a = analytic.as_ref().ok();
        let s = &sim.report;
        rows.check(
            v,
            n,
            "p_succ",
            a.map(|r| &r.p_succ),
            Some(s.p_succ.value()),
            note.clone(),
        );
        rows.check(
            v,
            n,
            "fidelity",
            a.and_then(|r| r.fidelity.as_ref()),
            s.fidelity.as_ref().map(Merit::value),
            note.clone(),
        );
        rows.check(
            v,
            n,
            "det_fidelity",
            a.and_then(|r| r.det_fidelity.as_ref()),
            s.det_fidelity.as_ref().map(Merit::value),
            note,
        );
        if v.is_probabilistic() {
            let exact = figures::failure_overlap(v, n, rows.cfg.dim).map(Merit::Exact);
            rows.check(
                v,
                n,
                "failure_overlap",
                exact.as_ref().ok(),
                sim.failure_overlap,
                exact.as_ref().err().map(|e| e.to_string()),
            );
        }
        rows.residual(v, n, "completeness", sim.completeness);
        rows.residual(v, n, "positivity", (-sim.min_eigenvalue).max(0.0));
        rows.residual(v, n, "covariance", sim.covariance);
        dumps.extend(sim.dumps);
    }
    let mut status = rows.status;
    if compared == 0 && capped > 0 {
        status = status.max(Status::ResourceCap);
    }
    let table = rows.table;
    cfg.record_dumps(dumps);
    Ok(Output {
        table,
        status,
        warnings: Vec::new(),
    })
}
