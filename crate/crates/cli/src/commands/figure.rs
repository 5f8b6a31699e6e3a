use anyhow::Result;
use pbt_core::figures::{
    det_fidelity_nonopt, fidelity, nonopt_vs_opt_p_as_printed, resource_overlap, success_probability, OverlapPair,
};
use pbt_core::ProtocolVariant;

use super::{usage, RunConfig};
use crate::args::{FigureId, PortRange};
use crate::table::{Cell, Table};

pub fn default_range(id: FigureId) -> PortRange {
    let (start, end) = match id {
        FigureId::Fig2Left | FigureId::Fig2Right => (2, 30),
        FigureId::Fig4Left => (2, 200),
        FigureId::Fig4Right => (2, 40),
        FigureId::Fig5 => (2, 20),
    };
    PortRange { start, end }
}

type Series<'a> = (&'static str, Box<dyn Fn(usize) -> Result<f64> + 'a>);

/// Series for a figure, laid out as `(series, N, value)` records, series-major.
pub fn figure_table(id: FigureId, cfg: &RunConfig) -> Result<Table> {
    let d = cfg.dim;
    let overlap = |pair: OverlapPair| -> Box<dyn Fn(usize) -> Result<f64> + '_> {
        Box::new(move |n| Ok(resource_overlap(pair, n, d, cfg.vector(n))?))
    };
    let series: Vec<Series> = match id {
        FigureId::Fig2Left => vec![
            ("dPBT_nonopt_F", Box::new(move |n| Ok(det_fidelity_nonopt(n, d)))),
            (
                "mPBT_F",
                Box::new(move |n| Ok(fidelity(ProtocolVariant::Minimal, n, d, None)?)),
            ),
        ],
        FigureId::Fig2Right => vec![
            (
                "mPBT_p_succ",
                Box::new(move |n| Ok(success_probability(ProtocolVariant::Minimal, n, d, None)?.value())),
            ),
            (
                "pPBT_opt_p_succ",
                Box::new(move |n| Ok(success_probability(ProtocolVariant::ProbabilisticOpt, n, d, None)?.value())),
            ),
        ],
        FigureId::Fig4Left | FigureId::Fig4Right | FigureId::Fig5 if d != 2 && cfg.vectors.is_empty() => {
            return usage("overlap figures are qubit figures; pass --d 2 or supply --opt-vector");
        }
        FigureId::Fig4Left => vec![("optP_vs_optD", overlap(OverlapPair::OptPVsOptD))],
        FigureId::Fig4Right => vec![("nonopt_vs_optD", overlap(OverlapPair::NonOptVsOptD))],
        FigureId::Fig5 if d != 2 => vec![("nonopt_vs_optP", overlap(OverlapPair::NonOptVsOptP))],
        FigureId::Fig5 => vec![
            ("nonopt_vs_optP", overlap(OverlapPair::NonOptVsOptP)),
            (
                "nonopt_vs_optP_as_printed",
                Box::new(|n| Ok(nonopt_vs_opt_p_as_printed(n))),
            ),
        ],
    };
    let mut table = Table::new(vec!["series", "N", "value"]);
    for (name, f) in &series {
        for &n in &cfg.ports {
            table.push(vec![(*name).into(), n.into(), Cell::Num(f(n)?)]);
        }
    }
    Ok(table)
}
