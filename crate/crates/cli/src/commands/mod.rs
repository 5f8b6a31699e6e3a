mod compare;
mod figure;
mod merits;
mod overlaps;
mod sdc;

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use anyhow::{Context as _, Result};
use pbt_core::figures::OptVector;
use pbt_core::simulator::{Limits, OperatorDump, SimError, Simulator};
use pbt_core::{Execution, ProtocolVariant};
use serde_json::Value;

use crate::args::{Command, Common, PortRange};
use crate::table::Table;

pub use figure::figure_table;

/// Bad input detected after argument parsing; exits with status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(UsageError(msg.into()).into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok,
    ResourceCap,
    Breach,
}

pub struct Output {
    pub table: Table,
    pub status: Status,
    pub warnings: Vec<String>,
}

impl Output {
    fn ok(table: Table) -> Self {
        Output {
            table,
            status: Status::Ok,
            warnings: Vec::new(),
        }
    }
}

/// Resolved configuration shared by every subcommand.
pub struct RunConfig {
    pub dim: usize,
    pub ports: Vec<usize>,
    pub variants: Vec<ProtocolVariant>,
    pub vectors: Vec<OptVector>,
    pub tolerances: Tolerances,
    pub limits: Limits,
    pub exec: Execution,
    dumps: Option<Vec<OperatorDump>>,
}

impl RunConfig {
    fn new(common: &Common, default_ports: PortRange, tol_keys: &[(&'static str, f64)]) -> Result<Self> {
        let range = common.ports.clone().unwrap_or(default_ports);
        let mut variants = common.variants.clone();
        if variants.is_empty() {
            variants = ProtocolVariant::ALL.to_vec();
        }
        let mut seen = Vec::new();
        variants.retain(|v| {
            let fresh = !seen.contains(v);
            seen.push(*v);
            fresh
        });
        let vectors = match &common.opt_vector {
            Some(p) => load_vectors(p, common.d)?,
            None => Vec::new(),
        };
        Ok(RunConfig {
            dim: common.d,
            ports: range.iter().collect(),
            variants,
            vectors,
            tolerances: Tolerances::new(tol_keys, &common.tol)?,
            limits: Limits::from_env(),
            exec: Execution::default(),
            dumps: common.dump_operators.as_ref().map(|_| Vec::new()),
        })
    }

    pub fn vector(&self, ports: usize) -> Option<&OptVector> {
        self.vectors.iter().find(|v| v.ports() == ports)
    }

    pub fn simulator(&self, ports: usize) -> Result<Simulator, SimError> {
        Simulator::with_config(ports, self.dim, self.exec, self.limits)
    }

    pub fn wants_dumps(&self) -> bool {
        self.dumps.is_some()
    }

    pub fn record_dumps(&mut self, dumps: impl IntoIterator<Item = OperatorDump>) {
        if let Some(d) = &mut self.dumps {
            d.extend(dumps);
        }
    }
}

fn load_vectors(path: &Path, dim: usize) -> Result<Vec<OptVector>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => return usage(format!("{}: {e}", path.display())),
    };
    let items = match value {
        Value::Array(items) => items,
        other => vec![other],
    };
    let mut out = Vec::with_capacity(items.len());
    for item in items {
        match OptVector::from_json_str(&item.to_string()) {
            Ok(v) if v.dim() == dim => out.push(v),
            Ok(v) => return usage(format!("{}: vector is for d = {}, not {dim}", path.display(), v.dim())),
            Err(e) => return usage(format!("{}: {e}", path.display())),
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct Tolerances(BTreeMap<&'static str, f64>);

impl Tolerances {
    fn new(defaults: &[(&'static str, f64)], overrides: &[(String, f64)]) -> Result<Self> {
        let mut map: BTreeMap<&'static str, f64> = defaults.iter().copied().collect();
        for (k, v) in overrides {
            match defaults.iter().find(|(name, _)| name == k) {
                Some((name, _)) => {
                    map.insert(name, *v);
                }
                None => {
                    let known: Vec<_> = defaults.iter().map(|(n, _)| *n).collect();
                    let known = if known.is_empty() {
                        "none".to_string()
                    } else {
                        known.join(", ")
                    };
                    return usage(format!("unknown tolerance key {k:?} (known: {known})"));
                }
            }
        }
        Ok(Tolerances(map))
    }

    pub fn get(&self, key: &str) -> f64 {
        self.0[key]
    }
}

/// Runs a parsed command and writes its table.
pub fn run(command: Command) -> Result<Status> {
    let (common, out, dumps) = match &command {
        Command::Merits { common, simulate } => {
            let mut cfg = RunConfig::new(common, PortRange { start: 2, end: 8 }, &[])?;
            let out = merits::run(&mut cfg, *simulate)?;
            (common, out, cfg.dumps)
        }
        Command::Figure { id, common } => {
            let cfg = RunConfig::new(common, figure::default_range(*id), &[])?;
            let out = Output::ok(figure_table(*id, &cfg)?);
            (common, out, cfg.dumps)
        }
        Command::Compare { common } => {
            let mut cfg = RunConfig::new(common, PortRange { start: 2, end: 3 }, compare::TOLERANCES)?;
            let out = compare::run(&mut cfg)?;
            (common, out, cfg.dumps)
        }
        Command::Overlaps {
            common,
            pairs,
            simulate,
        } => {
            let mut cfg = RunConfig::new(common, PortRange { start: 2, end: 8 }, overlaps::TOLERANCES)?;
            let out = overlaps::run(&mut cfg, pairs, *simulate)?;
            (common, out, cfg.dumps)
        }
        Command::Sdc {
            common,
            simulate,
            optimal,
        } => {
            let mut cfg = RunConfig::new(common, PortRange { start: 2, end: 20 }, sdc::TOLERANCES)?;
            let out = if *optimal {
                sdc::optimal(&cfg)?
            } else {
                sdc::run(&mut cfg, *simulate, common.variants.is_empty())?
            };
            (common, out, cfg.dumps)
        }
    };
    if let (Some(path), Some(dumps)) = (&common.dump_operators, &dumps) {
        let text = serde_json::to_string(dumps)?;
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    let text = out.table.render(common.format)?;
    match &common.out {
        Some(p) => std::fs::write(p, &text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    for w in &out.warnings {
        eprintln!("warning: {w}");
    }
    Ok(out.status)
}

/// One-line description of a simulator failure, and whether it was a cap.
pub(crate) fn describe(err: &SimError) -> (String, bool) {
    (err.to_string(), matches!(err, SimError::ResourceCap { .. }))
}
