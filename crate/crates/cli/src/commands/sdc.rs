use anyhow::Result;
use pbt_core::figures::fidelity;
use pbt_core::sdc::{
    mutual_information, mutual_information_from, optimal_port_count, sdc_report, simulated_fidelity_matrix,
    FStarSource, SdcError,
};
use pbt_core::ProtocolVariant;

use super::{describe, usage, Output, RunConfig, Status};
use crate::table::{Cell, Table};

pub const TOLERANCES: &[(&str, f64)] = &[("row_sum", 1e-9), ("fidelity", 1e-8)];

const COLUMNS: [&str; 16] = [
    "variant",
    "N",
    "d",
    "F",
    "F_off",
    "q_diag",
    "q_off",
    "I_F",
    "I_nonopt_bound",
    "I_beigi_koenig",
    "I_opt_asymptotic",
    "opt_caveat",
    "sim_F",
    "sim_F_off",
    "sim_row_sum_dev",
    "note",
];

struct SimRow {
    f_diag: f64,
    f_off: f64,
    row_sum_dev: f64,
}

fn simulate(cfg: &RunConfig, v: ProtocolVariant, n: usize) -> Result<SimRow, SdcError> {
    if n < 2 {
        return Err(SdcError::Domain("the off-diagonal fidelity needs N ≥ 2".into()));
    }
    let sim = cfg.simulator(n)?;
    let povm = sim.build_povms(v, cfg.vector(n))?;
    let o = sim.optimizer_for(v, cfg.vector(n))?;
    let effective = povm.effective(o.as_ref(), cfg.exec)?;
    let f = simulated_fidelity_matrix(&sim, &effective)?;
    let w = (cfg.dim * cfg.dim) as f64 / n as f64;
    let row_sum_dev = f
        .iter()
        .map(|row| (w * row.iter().sum::<f64>() - 1.0).abs())
        .fold(0.0, f64::max);
    Ok(SimRow {
        f_diag: f[0][0],
        f_off: f[1][0],
        row_sum_dev,
    })
}

fn bound(source: FStarSource, n: usize, d: usize) -> Cell {
    mutual_information_from(source, n, d).ok().into()
}

pub fn run(cfg: &mut RunConfig, simulate_states: bool, default_variants: bool) -> Result<Output> {
    if default_variants {
        cfg.variants = vec![ProtocolVariant::DeterministicNonOpt];
    }
    if let Some(v) = cfg.variants.iter().find(|v| !v.is_deterministic()) {
        return usage(format!("superdense coding needs a deterministic scheme, {v} is not"));
    }
    let (d, row_tol, f_tol) = (cfg.dim, cfg.tolerances.get("row_sum"), cfg.tolerances.get("fidelity"));
    let mut table = Table::new(COLUMNS.to_vec());
    let mut status = Status::Ok;
    for &v in &cfg.variants {
        for &n in &cfg.ports {
            let mut notes = Vec::new();
            let f = fidelity(v, n, d, cfg.vector(n))
                .map_err(|e| notes.push(e.to_string()))
                .ok();
            let report = f.and_then(|f| sdc_report(n, d, f).map_err(|e| notes.push(e.to_string())).ok());
            let sim = if simulate_states {
                simulate(cfg, v, n)
                    .map_err(|e| {
                        notes.push(match &e {
                            SdcError::Sim(s) => describe(s).0,
                            other => other.to_string(),
                        })
                    })
                    .ok()
            } else {
                None
            };
            if let Some(s) = &sim {
                if s.row_sum_dev > row_tol {
                    status = Status::Breach;
                    notes.push(format!("row sum off by {:e}", s.row_sum_dev));
                }
                if let Some(r) = &report {
                    let worst = (s.f_diag - r.f_diag).abs().max((s.f_off - r.f_off).abs());
                    if worst > f_tol {
                        status = Status::Breach;
                        notes.push(format!("simulated fidelities off by {worst:e}"));
                    }
                }
            }
            let i_f = f.and_then(|f| mutual_information(f, n, d).ok());
            table.push(vec![
                v.name().into(),
                n.into(),
                d.into(),
                f.into(),
                report.as_ref().map(|r| r.f_off).into(),
                report.as_ref().map(|r| r.q_diag).into(),
                report.as_ref().map(|r| r.q_off).into(),
                i_f.into(),
                bound(FStarSource::NonOptimized, n, d),
                bound(FStarSource::BeigiKoenig, n, d),
                bound(FStarSource::OptimizedAsymptotic, n, d),
                FStarSource::OptimizedAsymptotic.caveat().into(),
                sim.as_ref().map(|s| s.f_diag).into(),
                sim.as_ref().map(|s| s.f_off).into(),
                sim.as_ref().map(|s| s.row_sum_dev).into(),
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

pub fn optimal(cfg: &RunConfig) -> Result<Output> {
    let o = optimal_port_count(cfg.dim)?;
    let mut table = Table::new(vec!["d", "continuous_N", "integer_N", "consistent"]);
    table.push(vec![
        cfg.dim.into(),
        o.continuous.into(),
        o.integer.into(),
        o.consistent.into(),
    ]);
    let mut warnings = Vec::new();
    if !o.consistent {
        warnings.push(format!(
            "continuous optimum {:.4} and grid argmax {} differ by 1.5 or more",
            o.continuous, o.integer
        ));
    }
    Ok(Output {
        table,
        status: Status::Ok,
        warnings,
    })
}
