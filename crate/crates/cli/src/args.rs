use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pbt_core::figures::OverlapPair;
use pbt_core::ProtocolVariant;

#[derive(Debug, Parser)]
#[command(name = "pbt", version, about = "Port-based teleportation figures of merit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Success probability and fidelities per protocol variant.
    Merits {
        #[command(flatten)]
        common: Common,
        /// Add rows from the operator-level simulator.
        #[arg(long)]
        simulate: bool,
    },
    /// Plot data for one of the reference figures.
    Figure {
        #[arg(value_enum)]
        id: FigureId,
        #[command(flatten)]
        common: Common,
    },
    /// Analytic against simulated values, with residuals checked against tolerances.
    Compare {
        #[command(flatten)]
        common: Common,
    },
    /// Overlaps between non-optimal and optimal resource states.
    Overlaps {
        #[command(flatten)]
        common: Common,
        /// Restrict to these pairs (repeatable).
        #[arg(long = "pair", value_parser = parse_pair)]
        pairs: Vec<OverlapPair>,
        /// Add the overlap computed from explicit operators.
        #[arg(long)]
        simulate: bool,
    },
    /// Superdense-coding quantities for deterministic schemes.
    Sdc {
        #[command(flatten)]
        common: Common,
        /// Cross-check against post-measurement states from the simulator.
        #[arg(long)]
        simulate: bool,
        /// Report the mutual-information maximising port count instead.
        #[arg(long)]
        optimal: bool,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    /// Local dimension of each port.
    #[arg(long, default_value_t = 2, value_parser = parse_dim)]
    pub d: usize,
    /// Port count, either `n` or an inclusive range `a..b`.
    #[arg(long = "N", value_parser = parse_ports)]
    pub ports: Option<PortRange>,
    /// Protocol variant (repeatable); all of them when omitted.
    #[arg(long = "variant", value_parser = parse_variant)]
    pub variants: Vec<ProtocolVariant>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON file with one optimal-resource vector or an array of them.
    #[arg(long = "opt-vector")]
    pub opt_vector: Option<PathBuf>,
    /// Tolerance override, e.g. `fidelity=1e-6` (repeatable).
    #[arg(long = "tol", value_parser = parse_tol)]
    pub tol: Vec<(String, f64)>,
    /// Write every simulated measurement operator to this JSON file.
    #[arg(long = "dump-operators")]
    pub dump_operators: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FigureId {
    #[value(name = "fig2_left")]
    Fig2Left,
    #[value(name = "fig2_right")]
    Fig2Right,
    #[value(name = "fig4_left")]
    Fig4Left,
    #[value(name = "fig4_right")]
    Fig4Right,
    #[value(name = "fig5")]
    Fig5,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PortRange {
    pub start: usize,
    pub end: usize,
}

impl PortRange {
    pub fn iter(&self) -> RangeInclusive<usize> {
        self.start..=self.end
    }
}

fn parse_ports(s: &str) -> Result<PortRange, String> {
    let one = |t: &str| -> Result<usize, String> {
        let n: usize = t.trim().parse().map_err(|_| format!("{t:?} is not a port count"))?;
        if n == 0 {
            return Err("port counts start at 1".into());
        }
        Ok(n)
    };
    let (start, end) = match s.split_once("..") {
        Some((a, b)) => (one(a)?, one(b)?),
        None => {
            let n = one(s)?;
            (n, n)
        }
    };
    if start > end {
        return Err(format!("range {s} is empty"));
    }
    Ok(PortRange { start, end })
}

fn parse_dim(s: &str) -> Result<usize, String> {
    match s.trim().parse::<usize>() {
        Ok(d) if d >= 2 => Ok(d),
        _ => Err(format!("{s:?} is not a dimension ≥ 2")),
    }
}

fn parse_variant(s: &str) -> Result<ProtocolVariant, String> {
    s.parse().map_err(|e: pbt_core::figures::FiguresError| e.to_string())
}

fn parse_pair(s: &str) -> Result<OverlapPair, String> {
    s.parse().map_err(|e: pbt_core::figures::FiguresError| e.to_string())
}

fn parse_tol(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("{s:?} is not KEY=VAL"))?;
    let v: f64 = v.trim().parse().map_err(|_| format!("{v:?} is not a number"))?;
    if v.is_nan() || v < 0.0 {
        return Err(format!("tolerance {v} must be non-negative"));
    }
    Ok((k.trim().to_string(), v))
}
