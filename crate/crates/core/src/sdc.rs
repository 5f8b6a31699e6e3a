//! Superdense coding induced by deterministic PBT measurements.
//!
//! The receiver holds `B_1 … B_N` and `D`; post-measurement states are laid
//! out on the same factor order as the teleportation operators, `B_i` in the
//! place of `A_i` and `D` in the place of `C`.

use std::fmt;

use thiserror::Error;

use crate::simulator::{DenseOperator, PovmSet, SimError, Simulator};

#[derive(Debug, Error)]
pub enum SdcError {
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Sim(#[from] SimError),
}

/// Where the fidelity lower bound `F*` comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FStarSource {
    /// `1 - (d²-1)/(4N)`, the leading asymptotics of non-optimised dPBT.
    NonOptimized,
    /// `N/(N + d² - 1)`.
    BeigiKoenig,
    /// `1 - d⁵/(4√2 N²)`, optimised dPBT with the `O(d^{9/2})` and `O(N^{-3})`
    /// terms dropped.
    OptimizedAsymptotic,
}

impl FStarSource {
    pub const ALL: [FStarSource; 3] = [
        FStarSource::NonOptimized,
        FStarSource::BeigiKoenig,
        FStarSource::OptimizedAsymptotic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FStarSource::NonOptimized => "nonopt_asymptotic",
            FStarSource::BeigiKoenig => "beigi_koenig",
            FStarSource::OptimizedAsymptotic => "opt_asymptotic",
        }
    }

    pub fn f_star(self, ports: usize, dim: usize) -> f64 {
        let n = ports as f64;
        let d2 = (dim * dim) as f64;
        match self {
            FStarSource::NonOptimized => 1.0 - (d2 - 1.0) / (4.0 * n),
            FStarSource::BeigiKoenig => n / (n + d2 - 1.0),
            FStarSource::OptimizedAsymptotic => 1.0 - (dim as f64).powi(5) / (4.0 * 2f64.sqrt() * n * n),
        }
    }

    /// Present when the bound is only asymptotic with remainders dropped.
    pub fn caveat(self) -> Option<&'static str> {
        match self {
            FStarSource::OptimizedAsymptotic => Some("asymptotic, d-dependent remainder dropped"),
            _ => None,
        }
    }
}

impl fmt::Display for FStarSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Normalised post-measurement states `χ_i = (N/d^{N+1}) Π̃_i`.
pub fn post_measurement_states(p: &PovmSet, ports: usize, dim: usize) -> Result<Vec<DenseOperator>, SdcError> {
    if p.includes_failure {
        return Err(SdcError::Domain(
            "post-measurement states need a deterministic measurement".into(),
        ));
    }
    if p.ports() != ports
        || p.elements
            .iter()
            .any(|e| e.parties() != ports + 1 || e.local_dim() != dim)
    {
        return Err(SimError::DimensionMismatch(format!(
            "measurement does not act on {} factors of dimension {dim}",
            ports + 1
        ))
        .into());
    }
    let scale = ports as f64 / (dim as f64).powi(ports as i32 + 1);
    Ok(p.successes().map(|(_, e)| e.scale(scale)).collect())
}

/// `(F_{k|k}, F̃)` with `F + (N-1) F̃ = N/d²`.
pub fn conditional_fidelities(ports: usize, dim: usize, fidelity: f64) -> Result<(f64, f64), SdcError> {
    if ports < 2 {
        return Err(SdcError::Domain("the off-diagonal fidelity needs N ≥ 2".into()));
    }
    if !(0.0..=1.0).contains(&fidelity) {
        return Err(SdcError::Domain(format!("fidelity {fidelity} is outside [0, 1]")));
    }
    let n = ports as f64;
    let d2 = (dim * dim) as f64;
    Ok((fidelity, n / (d2 * (n - 1.0)) - fidelity / (n - 1.0)))
}

/// `I(A:B) = log₂ F* + (d² F*/N) log₂ d²`, in bits.
pub fn mutual_information(f_star: f64, ports: usize, dim: usize) -> Result<f64, SdcError> {
    if f_star.is_nan() || f_star <= 0.0 || f_star > 1.0 || ports == 0 {
        return Err(SdcError::Domain(format!(
            "need F* in (0, 1] and N ≥ 1, got F* = {f_star}, N = {ports}"
        )));
    }
    let d2 = (dim * dim) as f64;
    Ok(f_star.log2() + d2 * f_star / ports as f64 * d2.log2())
}

pub fn mutual_information_from(source: FStarSource, ports: usize, dim: usize) -> Result<f64, SdcError> {
    mutual_information(source.f_star(ports, dim), ports, dim)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptimalPorts {
    /// Stationary point of the continuous relaxation.
    pub continuous: f64,
    /// Grid argmax over integer port counts.
    pub integer: usize,
    /// `|continuous - integer| < 1.5`.
    pub consistent: bool,
}

/// Closed-form stationary point of the non-optimised mutual information.
pub fn optimal_port_count_continuous(dim: usize) -> f64 {
    let d = dim as f64;
    let d2 = d * d;
    let l = d2.ln();
    let num = 3.0 * d2 * (d2 - 1.0) * l + ((d - d * d2).powi(2) * (2.0 * d2 + d2 * l - 2.0)).sqrt();
    num / (2.0 * (1.0 - d2 + 4.0 * d2 * l))
}

/// Integer port count maximising the non-optimised mutual information over
/// `N ∈ [1, max(100, 20 d²)]`, next to the continuous optimum.
pub fn optimal_port_count(dim: usize) -> Result<OptimalPorts, SdcError> {
    if dim < 2 {
        return Err(SdcError::Domain("need d ≥ 2".into()));
    }
    let upper = 100.max(20 * dim * dim);
    let mut best: Option<(usize, f64)> = None;
    for n in 1..=upper {
        if FStarSource::NonOptimized.f_star(n, dim) <= 0.0 {
            continue;
        }
        let i = mutual_information_from(FStarSource::NonOptimized, n, dim)?;
        if best.is_none_or(|(_, b)| i > b) {
            best = Some((n, i));
        }
    }
    let (integer, _) = best.ok_or_else(|| SdcError::Domain("no admissible port count".into()))?;
    let continuous = optimal_port_count_continuous(dim);
    Ok(OptimalPorts {
        continuous,
        integer,
        consistent: (continuous - integer as f64).abs() < 1.5,
    })
}

/// Superdense-coding summary for one `(N, d)` and a dPBT fidelity.
#[derive(Clone, Debug, PartialEq)]
pub struct SdcReport {
    pub ports: usize,
    pub dim: usize,
    pub f_diag: f64,
    pub f_off: f64,
    pub q_diag: f64,
    pub q_off: f64,
    /// With the supplied fidelity used as `F*`.
    pub mutual_information: f64,
    /// With the asymptotic non-optimised bound as `F*`, where it is positive.
    pub mutual_information_bound: Option<f64>,
}

pub fn sdc_report(ports: usize, dim: usize, fidelity: f64) -> Result<SdcReport, SdcError> {
    let (f_diag, f_off) = conditional_fidelities(ports, dim, fidelity)?;
    let w = (dim * dim) as f64 / ports as f64;
    let bound = FStarSource::NonOptimized.f_star(ports, dim);
    Ok(SdcReport {
        ports,
        dim,
        f_diag,
        f_off,
        q_diag: w * f_diag,
        q_off: w * f_off,
        mutual_information: mutual_information(fidelity, ports, dim)?,
        mutual_information_bound: if bound > 0.0 {
            Some(mutual_information(bound, ports, dim)?)
        } else {
            None
        },
    })
}

/// `F_{i|k} = tr[χ_i P⁺_{D B_k}]` from simulated states; row `k`, column `i`.
pub fn simulated_fidelity_matrix(sim: &Simulator, p: &PovmSet) -> Result<Vec<Vec<f64>>, SdcError> {
    let states = post_measurement_states(p, sim.ports(), sim.dim())?;
    (1..=sim.ports())
        .map(|k| {
            let target = sim.port_projector(k)?;
            Ok(states.iter().map(|chi| chi.trace_product(&target).re).collect())
        })
        .collect()
}

/// `q_{i|k} = (d²/N) F_{i|k}`; each row sums to one for a complete measurement.
pub fn simulated_q_matrix(sim: &Simulator, p: &PovmSet) -> Result<Vec<Vec<f64>>, SdcError> {
    let w = (sim.dim() * sim.dim()) as f64 / sim.ports() as f64;
    let mut f = simulated_fidelity_matrix(sim, p)?;
    f.iter_mut().flatten().for_each(|x| *x *= w);
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::figures::ProtocolVariant;

    #[test]
    fn identity_at_unit_fidelity() {
        for d in 2..=4 {
            let i = mutual_information(1.0, d * d, d).unwrap();
            assert!((i - 2.0 * (d as f64).log2()).abs() < 1e-12);
        }
        assert!(mutual_information(0.0, 2, 2).is_err());
    }

    #[test]
    fn off_diagonal_identity() {
        for (n, f) in [(2usize, 0.3), (5, 0.9), (40, 0.99)] {
            let (diag, off) = conditional_fidelities(n, 2, f).unwrap();
            assert!((diag + (n as f64 - 1.0) * off - n as f64 / 4.0).abs() < 1e-12);
        }
        assert!(conditional_fidelities(1, 2, 0.5).is_err());
    }

    #[test]
    fn bounds_at_two_ports() {
        let ours = mutual_information_from(FStarSource::NonOptimized, 2, 2).unwrap();
        let bk = mutual_information_from(FStarSource::BeigiKoenig, 2, 2).unwrap();
        assert!((FStarSource::BeigiKoenig.f_star(2, 2) - 0.4).abs() < 1e-15);
        assert!(ours > bk);
    }

    #[test]
    fn optimal_ports_bracket() {
        for d in 2..=3 {
            let o = optimal_port_count(d).unwrap();
            assert!(o.consistent, "{o:?}");
        }
        assert_eq!(optimal_port_count(2).unwrap().integer, 2);
    }

    #[test]
    fn simulated_rows_normalised() {
        let sim = Simulator::new(2, 2).unwrap();
        let p = sim.build_povms(ProtocolVariant::DeterministicNonOpt, None).unwrap();
        for row in simulated_q_matrix(&sim, &p).unwrap() {
            assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        }
        let minimal = sim.build_povms(ProtocolVariant::Minimal, None).unwrap();
        assert!(post_measurement_states(&minimal, 2, 2).is_err());
    }

    #[test]
    fn simulated_states_match_closed_forms() {
        let sim = Simulator::new(2, 2).unwrap();
        let p = sim.build_povms(ProtocolVariant::DeterministicNonOpt, None).unwrap();
        let states = post_measurement_states(&p, 2, 2).unwrap();
        for chi in &states {
            assert!((chi.trace().re - 1.0).abs() < 1e-9);
        }
        let swap = sim.port_transposition(1, 2).unwrap();
        let moved = crate::simulator::conjugate_by_permutation(&states[0], &swap).unwrap();
        assert!(moved.max_abs_diff(&states[1]) < 1e-10);

        let f = simulated_fidelity_matrix(&sim, &p).unwrap();
        let merits = sim.channel_merits(&p, None).unwrap();
        let fid = merits.det_fidelity.unwrap().value();
        let (diag, off) = conditional_fidelities(2, 2, fid).unwrap();
        assert!((f[0][0] - diag).abs() < 1e-9 && (f[1][1] - diag).abs() < 1e-9);
        assert!((f[1][0] - off).abs() < 1e-9 && (f[0][1] - off).abs() < 1e-9);
    }

    #[test]
    fn report_rows_sum_to_one() {
        for (n, f) in [(2usize, 0.45), (3, 0.6), (10, 0.95)] {
            let r = sdc_report(n, 2, f).unwrap();
            assert!((r.q_diag + (n as f64 - 1.0) * r.q_off - 1.0).abs() < 1e-9);
            assert!(r.f_off >= 0.0 && r.f_off <= 0.25 + (1.0 - f));
        }
    }

    #[test]
    fn tail_decreases() {
        let n0 = optimal_port_count(2).unwrap().integer;
        let mut prev = f64::INFINITY;
        for n in (4 * n0..=200).step_by(7) {
            let i = mutual_information_from(FStarSource::NonOptimized, n, 2).unwrap();
            assert!(i < prev);
            prev = i;
        }
    }
}
