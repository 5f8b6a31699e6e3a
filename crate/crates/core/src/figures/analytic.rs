use std::borrow::Cow;
use std::f64::consts::PI;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::readings::{self, nonopt_success_probability};
use super::{check_args, check_vector, qubit_optimal_eigenvector, FiguresError, OptVector, ProtocolVariant};
use crate::repcore::{binomial, enumerate_partitions, gamma, gamma_star, gl_multiplicity, sym_dimension};
use crate::report::{rational_to_f64, Merit, MeritReport, Provenance};

fn big(n: usize) -> BigInt {
    BigInt::from(n)
}

fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

fn dim_pow(dim: usize, k: usize) -> BigUint {
    BigUint::from(dim).pow(k as u32)
}

/// `√(d_μ m_μ / d^N)` without materialising the possibly huge integers as floats.
pub(crate) fn scaled_root(mu_dim: &BigUint, mu_mult: &BigUint, ports: usize, dim: usize) -> f64 {
    rational_to_f64(&ratio(mu_dim * mu_mult, dim_pow(dim, ports))).sqrt()
}

/// Uses `v` if given, the closed-form qubit vector for `d = 2`, or fails.
pub(crate) fn resolve_vector<'a>(
    v: Option<&'a OptVector>,
    ports: usize,
    dim: usize,
    what: &str,
) -> Result<Cow<'a, OptVector>, FiguresError> {
    match v {
        Some(v) => {
            check_vector(v, ports, dim)?;
            Ok(Cow::Borrowed(v))
        }
        None if dim == 2 => Ok(Cow::Owned(qubit_optimal_eigenvector(ports))),
        None => Err(FiguresError::MissingOptVector(what.to_string())),
    }
}

fn minimal_success(ports: usize, dim: usize) -> BigRational {
    let mut total = BigInt::zero();
    for alpha in enumerate_partitions(ports - 1, Some(dim)) {
        let m_alpha = BigInt::from(gl_multiplicity(&alpha, dim));
        for mu in alpha.add_box().into_iter().filter(|m| m.admissible(dim)) {
            total += BigInt::from(sym_dimension(&mu)) * &m_alpha;
        }
    }
    ratio(total, dim_pow(dim, ports + 1))
}

fn minimal_optimized_success(ports: usize, dim: usize, v: &OptVector) -> f64 {
    let mut total = 0.0;
    for alpha in enumerate_partitions(ports - 1, Some(dim)) {
        let m_alpha = gl_multiplicity(&alpha, dim);
        for mu in alpha.add_box().into_iter().filter(|m| m.admissible(dim)) {
            let w = rational_to_f64(&ratio(m_alpha.clone(), gl_multiplicity(&mu, dim)));
            let x = v.get(&mu);
            total += w * x * x;
        }
    }
    total / dim as f64
}

fn optimal_probabilistic(ports: usize, dim: usize) -> BigRational {
    let d2 = big(dim * dim);
    BigRational::one() - ratio(&d2 - 1, big(ports) + &d2 - 1)
}

/// Success probability of a variant. Deterministic variants give exactly 1.
pub fn success_probability(
    variant: ProtocolVariant,
    ports: usize,
    dim: usize,
    v: Option<&OptVector>,
) -> Result<Merit, FiguresError> {
    check_args(ports, dim)?;
    Ok(match variant {
        ProtocolVariant::Minimal => Merit::Exact(minimal_success(ports, dim)),
        ProtocolVariant::MinimalOptimized => {
            let v = resolve_vector(v, ports, dim, "optimised minimal scheme")?;
            Merit::Real(minimal_optimized_success(ports, dim, &v))
        }
        ProtocolVariant::ProbabilisticNonOpt => {
            Merit::Exact(nonopt_success_probability(readings::VALIDATED, ports, dim)?)
        }
        ProtocolVariant::ProbabilisticOpt => Merit::Exact(optimal_probabilistic(ports, dim)),
        ProtocolVariant::DeterministicNonOpt
        | ProtocolVariant::DeterministicOpt
        | ProtocolVariant::ConvertedFromProbNonOpt
        | ProtocolVariant::ConvertedFromProbOpt => Merit::Exact(BigRational::one()),
    })
}

/// Deterministic fidelity with a maximally entangled resource,
/// `(1/d^{N+2}) Σ_α (Σ_{μ∈α} √(d_μ m_μ))²`.
pub fn det_fidelity_nonopt(ports: usize, dim: usize) -> f64 {
    let mut total = 0.0;
    for alpha in enumerate_partitions(ports - 1, Some(dim)) {
        let inner: f64 = alpha
            .add_box()
            .into_iter()
            .filter(|m| m.admissible(dim))
            .map(|mu| scaled_root(&sym_dimension(&mu), &gl_multiplicity(&mu, dim), ports, dim))
            .sum();
        total += inner * inner;
    }
    total / (dim * dim) as f64
}

/// Qubit closed form of [`det_fidelity_nonopt`], a single sum over `k`.
pub fn det_fidelity_nonopt_qubit(ports: usize) -> f64 {
    let n = ports as f64;
    let scale = BigUint::from(2u8).pow(ports as u32);
    let mut total = 0.0;
    for k in 0..=ports {
        let kf = k as f64;
        let a = (n - 2.0 * kf - 1.0) / (kf + 1.0).sqrt();
        let b = (n - 2.0 * kf + 1.0) / (n - kf + 1.0).sqrt();
        let w = rational_to_f64(&ratio(binomial(ports, k), scale.clone()));
        total += (a + b) * (a + b) * w;
    }
    total / 8.0
}

/// Qubit fidelity of the minimal scheme, `F_det / (1 - (N+2)/2^{N+1})`.
pub fn min_fidelity_qubit(ports: usize) -> f64 {
    let p = BigRational::one() - ratio(big(ports + 2), BigUint::from(2u8).pow(ports as u32 + 1));
    det_fidelity_nonopt_qubit(ports) / rational_to_f64(&p)
}

/// Entanglement fidelity conditioned on success. The vector argument is
/// accepted for symmetry with the other entry points; no closed form uses it.
pub fn fidelity(
    variant: ProtocolVariant,
    ports: usize,
    dim: usize,
    _v: Option<&OptVector>,
) -> Result<f64, FiguresError> {
    check_args(ports, dim)?;
    match variant {
        ProtocolVariant::DeterministicNonOpt => Ok(det_fidelity_nonopt(ports, dim)),
        ProtocolVariant::DeterministicOpt if dim == 2 => {
            let c = (PI / (ports + 2) as f64).cos();
            Ok(c * c)
        }
        ProtocolVariant::DeterministicOpt => Err(FiguresError::Unsupported(format!(
            "optimal deterministic fidelity at d = {dim} needs the teleportation matrix"
        ))),
        ProtocolVariant::Minimal => Ok(det_fidelity_nonopt(ports, dim) / rational_to_f64(&minimal_success(ports, dim))),
        ProtocolVariant::ProbabilisticNonOpt | ProtocolVariant::ProbabilisticOpt => Ok(1.0),
        ProtocolVariant::ConvertedFromProbNonOpt | ProtocolVariant::ConvertedFromProbOpt => {
            converted_fidelity(variant, ports, dim).map(|m| m.value())
        }
        ProtocolVariant::MinimalOptimized => Err(FiguresError::UnsupportedVariant {
            variant,
            op: "analytic fidelity",
        }),
    }
}

/// Fidelity of the deterministic scheme built from a probabilistic one:
/// `p + tr(M_0 ρ)/(d² N)`.
pub fn conversion_fidelity(p_succ: f64, m0_rho_overlap: f64, ports: usize, dim: usize) -> Result<f64, FiguresError> {
    check_args(ports, dim)?;
    // simulated inputs carry rounding noise of either sign
    if !(-1e-9..=1.0 + 1e-9).contains(&p_succ) || m0_rho_overlap < -1e-9 {
        return Err(FiguresError::Consistency(format!(
            "need p in [0, 1] and a non-negative overlap, got p = {p_succ}, overlap = {m0_rho_overlap}"
        )));
    }
    let f = p_succ + m0_rho_overlap / ((dim * dim * ports) as f64);
    if !(-1e-9..=1.0 + 1e-9).contains(&f) {
        return Err(FiguresError::Consistency(format!(
            "converted fidelity {f} lies outside [0, 1]"
        )));
    }
    Ok(f)
}

/// `tr(M_0 ρ)` for the failure element of a probabilistic scheme.
///
/// For the non-optimal scheme each success element overlaps `ρ` in
/// `(1/d^N) Σ_α Σ_{ν∈α} m_ν d_α γ_ν(α)/γ*(α)`.
pub fn failure_overlap(source: ProtocolVariant, ports: usize, dim: usize) -> Result<BigRational, FiguresError> {
    check_args(ports, dim)?;
    match source {
        ProtocolVariant::ProbabilisticOpt => Ok(BigRational::zero()),
        ProtocolVariant::ProbabilisticNonOpt => {
            let mut per_element = BigRational::zero();
            for alpha in enumerate_partitions(ports - 1, Some(dim)) {
                let (g_star, _) = gamma_star(&alpha, ports, dim)?;
                let d_alpha = BigInt::from(sym_dimension(&alpha));
                for nu in alpha.add_box().into_iter().filter(|m| m.admissible(dim)) {
                    let g = gamma(&alpha, &nu, ports, dim)?;
                    let w = BigInt::from(gl_multiplicity(&nu, dim)) * &d_alpha;
                    per_element += BigRational::from_integer(w) * g / &g_star;
                }
            }
            per_element /= BigRational::from_integer(BigInt::from(dim_pow(dim, ports)));
            Ok(BigRational::from_integer(big(ports)) * (BigRational::one() - per_element))
        }
        _ => Err(FiguresError::UnsupportedVariant {
            variant: source,
            op: "failure overlap",
        }),
    }
}

/// Exact fidelity of the deterministic protocol obtained by spreading the
/// failure element of `source` evenly over the ports.
pub fn converted_fidelity(source: ProtocolVariant, ports: usize, dim: usize) -> Result<Merit, FiguresError> {
    check_args(ports, dim)?;
    let source = match source {
        ProtocolVariant::ConvertedFromProbNonOpt => ProtocolVariant::ProbabilisticNonOpt,
        ProtocolVariant::ConvertedFromProbOpt => ProtocolVariant::ProbabilisticOpt,
        other => other,
    };
    let p = match source {
        ProtocolVariant::ProbabilisticNonOpt => nonopt_success_probability(readings::VALIDATED, ports, dim)?,
        ProtocolVariant::ProbabilisticOpt => optimal_probabilistic(ports, dim),
        _ => {
            return Err(FiguresError::UnsupportedVariant {
                variant: source,
                op: "conversion",
            })
        }
    };
    let overlap = failure_overlap(source, ports, dim)?;
    Ok(Merit::Exact(
        p + overlap / BigRational::from_integer(big(dim * dim * ports)),
    ))
}

/// Everything the analytic side knows about one variant at `(N, d)`.
pub fn merit_report(
    variant: ProtocolVariant,
    ports: usize,
    dim: usize,
    v: Option<&OptVector>,
) -> Result<MeritReport, FiguresError> {
    check_args(ports, dim)?;
    let (p_succ, fidelity, det_fidelity) = match variant {
        ProtocolVariant::Minimal => {
            let p = minimal_success(ports, dim);
            let fd = det_fidelity_nonopt(ports, dim);
            let f = fd / rational_to_f64(&p);
            (Merit::Exact(p), Some(Merit::Real(f)), Some(Merit::Real(fd)))
        }
        ProtocolVariant::MinimalOptimized => (success_probability(variant, ports, dim, v)?, None, None),
        ProtocolVariant::DeterministicNonOpt | ProtocolVariant::DeterministicOpt => {
            let f = fidelity(variant, ports, dim, v)?;
            (
                Merit::Exact(BigRational::one()),
                Some(Merit::Real(f)),
                Some(Merit::Real(f)),
            )
        }
        ProtocolVariant::ProbabilisticNonOpt | ProtocolVariant::ProbabilisticOpt => {
            let p = success_probability(variant, ports, dim, v)?;
            let fd = p.clone();
            (p, Some(Merit::Exact(BigRational::one())), Some(fd))
        }
        ProtocolVariant::ConvertedFromProbNonOpt | ProtocolVariant::ConvertedFromProbOpt => {
            let f = converted_fidelity(variant, ports, dim)?;
            (Merit::Exact(BigRational::one()), Some(f.clone()), Some(f))
        }
    };
    Ok(MeritReport {
        variant,
        ports,
        dim,
        p_succ,
        fidelity,
        det_fidelity,
        provenance: Provenance::Analytic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(m: Merit) -> BigRational {
        m.exact().cloned().expect("exact merit")
    }

    #[test]
    fn minimal_qubit_small() {
        let p = exact(success_probability(ProtocolVariant::Minimal, 2, 2, None).unwrap());
        assert_eq!(p, ratio(1, 2));
        let p = exact(success_probability(ProtocolVariant::Minimal, 3, 2, None).unwrap());
        assert_eq!(p, ratio(11, 16));
    }

    #[test]
    fn probabilistic_values() {
        let p = exact(success_probability(ProtocolVariant::ProbabilisticOpt, 2, 2, None).unwrap());
        assert_eq!(p, ratio(2, 5));
        let p = exact(success_probability(ProtocolVariant::ProbabilisticOpt, 5, 3, None).unwrap());
        assert_eq!(p, ratio(5, 13));
        let p = exact(success_probability(ProtocolVariant::ProbabilisticNonOpt, 4, 2, None).unwrap());
        assert_eq!(p, ratio(9, 20));
        let p = exact(success_probability(ProtocolVariant::DeterministicNonOpt, 7, 3, None).unwrap());
        assert!(p.is_one());
    }

    #[test]
    fn deterministic_qubit_forms_agree() {
        for n in 1..=16 {
            let a = det_fidelity_nonopt(n, 2);
            let b = det_fidelity_nonopt_qubit(n);
            assert!((a - b).abs() < 1e-12, "N = {n}: {a} vs {b}");
        }
        assert!((det_fidelity_nonopt(2, 2) - 0.466_506_350_946_109_7).abs() < 1e-12);
    }

    #[test]
    fn single_port_is_depolarising() {
        for d in 2..=4 {
            let f = det_fidelity_nonopt(1, d);
            assert!((f - 1.0 / (d * d) as f64).abs() < 1e-15);
        }
    }

    #[test]
    fn optimal_deterministic_qubit() {
        let f = fidelity(ProtocolVariant::DeterministicOpt, 2, 2, None).unwrap();
        assert!((f - 0.5).abs() < 1e-15);
        assert!(matches!(
            fidelity(ProtocolVariant::DeterministicOpt, 2, 3, None),
            Err(FiguresError::Unsupported(_))
        ));
    }

    #[test]
    fn optimized_minimal_needs_vector_above_qubits() {
        let p = success_probability(ProtocolVariant::MinimalOptimized, 2, 2, None).unwrap();
        assert!((p.value() - 2.0 / 3.0).abs() < 1e-12);
        assert!(matches!(
            success_probability(ProtocolVariant::MinimalOptimized, 2, 3, None),
            Err(FiguresError::MissingOptVector(_))
        ));
    }

    #[test]
    fn converted_values() {
        let f = exact(converted_fidelity(ProtocolVariant::ProbabilisticNonOpt, 2, 2).unwrap());
        assert_eq!(f, ratio(3, 8));
        let f = exact(converted_fidelity(ProtocolVariant::ProbabilisticOpt, 2, 2).unwrap());
        assert_eq!(f, ratio(2, 5));
        let f = exact(converted_fidelity(ProtocolVariant::ProbabilisticOpt, 97, 2).unwrap());
        assert_eq!(f, ratio(97, 100));
        assert!(converted_fidelity(ProtocolVariant::Minimal, 2, 2).is_err());
    }

    #[test]
    fn conversion_formula() {
        assert_eq!(conversion_fidelity(1.0, 0.0, 5, 2).unwrap(), 1.0);
        let p = 1.0 - 3.0 / 8.0;
        assert_eq!(conversion_fidelity(p, 0.0, 5, 2).unwrap(), p);
        assert!(matches!(
            conversion_fidelity(0.9, 10.0, 2, 2),
            Err(FiguresError::Consistency(_))
        ));
    }

    #[test]
    fn minimal_report_is_coherent() {
        for d in 2..=3 {
            for n in 1..=8 {
                let r = merit_report(ProtocolVariant::Minimal, n, d, None).unwrap();
                let lhs = r.fidelity.unwrap().value() * r.p_succ.value();
                assert!((lhs - r.det_fidelity.unwrap().value()).abs() < 1e-12);
            }
        }
    }
}
