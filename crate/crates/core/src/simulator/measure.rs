use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use super::operator::{matmul, CMatrix, DenseOperator};
use super::perm::conjugate_by_permutation;
use super::povm::{convert_to_deterministic, PovmSet};
use super::{SimError, Simulator};
use crate::figures::{qubit_optimal_eigenvector, OptVector, OverlapPair, ProtocolVariant};
use crate::repcore::{enumerate_partitions, gamma_star, gl_multiplicity, sym_dimension, Partition, SpinSector};
use crate::report::{rational_to_f64, Merit, MeritReport, Provenance};

impl Simulator {
    fn resolve_vector(&self, v: Option<&OptVector>, what: &str) -> Result<OptVector, SimError> {
        match v {
            Some(v) if v.ports() == self.ports && v.dim() == self.dim => Ok(v.clone()),
            Some(v) => Err(SimError::DimensionMismatch(format!(
                "vector is for N = {}, d = {}",
                v.ports(),
                v.dim()
            ))),
            None if self.dim == 2 => Ok(qubit_optimal_eigenvector(self.ports)),
            None => Err(SimError::Unsupported(format!(
                "{what} at d = {} needs a vector",
                self.dim
            ))),
        }
    }

    /// `Σ_μ c_μ P_μ` on the `N` port systems. Qubit ports beyond the Young
    /// projector cap use the total-spin eigenspaces instead.
    fn block_operator(&self, coeff: impl Fn(&Partition) -> f64) -> Result<DenseOperator, SimError> {
        let mut total = DenseOperator::zeros(self.ports, self.dim);
        if self.dim == 2 && self.limits.check_projector(self.ports).is_err() {
            for (sector, proj) in self.qubit_spin_projectors()? {
                total = &total + &proj.scale(coeff(&sector.partition()));
            }
            return Ok(total);
        }
        let frames = enumerate_partitions(self.ports, Some(self.dim));
        for mu in &frames {
            total = &total + &self.young_projector(mu)?.scale(coeff(mu));
        }
        Ok(total)
    }

    fn inverse_square_sum(&self) -> f64 {
        let s: BigInt = enumerate_partitions(self.ports, Some(self.dim))
            .iter()
            .map(|nu| BigInt::from(gl_multiplicity(nu, self.dim).pow(2)))
            .sum();
        rational_to_f64(&BigRational::new(1.into(), s))
    }

    fn ratio(&self, num: impl Into<BigInt>, den: impl Into<BigInt>) -> f64 {
        rational_to_f64(&BigRational::new(num.into(), den.into()))
    }

    /// Resource pre-processing on the port systems: `O_A` for the optimal
    /// probabilistic scheme, `Õ_A` for the optimal deterministic and
    /// optimised minimal schemes.
    pub fn optimizer_operator(
        &self,
        variant: ProtocolVariant,
        v: Option<&OptVector>,
    ) -> Result<DenseOperator, SimError> {
        let root = (self.dim as f64).powf(self.ports as f64 / 2.0);
        match variant {
            ProtocolVariant::ProbabilisticOpt | ProtocolVariant::ConvertedFromProbOpt => {
                let g = self.inverse_square_sum();
                self.block_operator(|mu| {
                    let r = self.ratio(gl_multiplicity(mu, self.dim), sym_dimension(mu));
                    root * (g * r).sqrt()
                })
            }
            ProtocolVariant::DeterministicOpt | ProtocolVariant::MinimalOptimized => {
                let v = self.resolve_vector(v, "optimal deterministic resource")?;
                self.block_operator(|mu| {
                    let dm = self.ratio(sym_dimension(mu) * gl_multiplicity(mu, self.dim), 1);
                    root * v.get(mu) / dm.sqrt()
                })
            }
            other => Err(SimError::Unsupported(format!(
                "{other} uses a maximally entangled resource"
            ))),
        }
    }

    /// The pre-processing a variant applies, `None` for the identity.
    pub fn optimizer_for(
        &self,
        variant: ProtocolVariant,
        v: Option<&OptVector>,
    ) -> Result<Option<DenseOperator>, SimError> {
        if variant.is_optimized() {
            self.optimizer_operator(variant, v).map(Some)
        } else {
            Ok(None)
        }
    }

    /// Elements `M_i = V(i N) M_N V(i N)†` generated from the last port.
    fn covariant_orbit(&self, last: DenseOperator) -> Result<Vec<DenseOperator>, SimError> {
        let mut orbit = self
            .exec
            .map_range(self.ports - 1, |k| {
                conjugate_by_permutation(&last, &self.port_transposition(k + 1, self.ports)?)
            })
            .into_iter()
            .collect::<Result<Vec<_>, _>>()?;
        orbit.push(last);
        Ok(orbit)
    }

    fn with_failure(&self, variant: ProtocolVariant, success: Vec<DenseOperator>) -> PovmSet {
        let id = DenseOperator::identity(self.parties(), self.dim);
        let m0 = success.iter().fold(id, |acc, e| &acc - e).hermitian_part();
        let mut elements = vec![m0];
        elements.extend(success);
        PovmSet {
            elements,
            labels: (0..=self.ports).collect(),
            variant,
            includes_failure: true,
        }
    }

    /// `Σ_α c_α P_α ⊗ P⁺_{A_N C}`.
    fn last_port_element(
        &self,
        coeff: impl Fn(&Partition) -> Result<f64, SimError>,
    ) -> Result<DenseOperator, SimError> {
        let mut inner = DenseOperator::zeros(self.ports - 1, self.dim);
        for alpha in enumerate_partitions(self.ports - 1, Some(self.dim)) {
            let c = coeff(&alpha)?;
            inner = &inner + &self.young_projector(&alpha)?.scale(c);
        }
        inner.kron(&self.max_entangled_pair())
    }

    /// Physical measurement for a variant.
    pub fn build_povms(&self, variant: ProtocolVariant, v: Option<&OptVector>) -> Result<PovmSet, SimError> {
        match variant {
            ProtocolVariant::Minimal | ProtocolVariant::MinimalOptimized => {
                if variant == ProtocolVariant::MinimalOptimized {
                    self.resolve_vector(v, "optimised minimal scheme")?;
                }
                Ok(self.with_failure(variant, self.srm_elements()?.to_vec()))
            }
            ProtocolVariant::DeterministicNonOpt | ProtocolVariant::DeterministicOpt => {
                if variant == ProtocolVariant::DeterministicOpt {
                    self.resolve_vector(v, "optimal deterministic scheme")?;
                }
                let minimal = self.with_failure(variant, self.srm_elements()?.to_vec());
                let mut out = convert_to_deterministic(&minimal)?;
                out.variant = variant;
                Ok(out)
            }
            ProtocolVariant::ProbabilisticNonOpt => {
                let d = self.dim as f64;
                let last = self.last_port_element(|alpha| {
                    let (g, _) = gamma_star(alpha, self.ports, self.dim)?;
                    Ok(d / rational_to_f64(&g))
                })?;
                Ok(self.with_failure(variant, self.covariant_orbit(last)?))
            }
            ProtocolVariant::ProbabilisticOpt => {
                let g = self.inverse_square_sum();
                let scale = (self.dim as f64).powi(self.ports as i32 + 1) / self.ports as f64 * g;
                let effective = self.last_port_element(|alpha| {
                    Ok(scale * self.ratio(gl_multiplicity(alpha, self.dim), sym_dimension(alpha)))
                })?;
                let root = (self.dim as f64).powf(self.ports as f64 / 2.0);
                let inverse = self
                    .block_operator(|mu| {
                        let r = self.ratio(sym_dimension(mu), gl_multiplicity(mu, self.dim));
                        (r / g).sqrt() / root
                    })?
                    .extend(1);
                let last = inverse.sandwich(&effective, self.exec).hermitian_part();
                Ok(self.with_failure(variant, self.covariant_orbit(last)?))
            }
            ProtocolVariant::ConvertedFromProbNonOpt | ProtocolVariant::ConvertedFromProbOpt => {
                let source = if variant == ProtocolVariant::ConvertedFromProbNonOpt {
                    ProtocolVariant::ProbabilisticNonOpt
                } else {
                    ProtocolVariant::ProbabilisticOpt
                };
                convert_to_deterministic(&self.build_povms(source, v)?)
            }
        }
    }

    /// `F_det`, `p_succ` and `F = F_det/p_succ` evaluated directly.
    pub fn channel_merits(&self, povm: &PovmSet, optimizer: Option<&DenseOperator>) -> Result<MeritReport, SimError> {
        let parties = self.parties();
        if let Some(bad) = povm
            .elements
            .iter()
            .find(|e| e.parties() != parties || e.local_dim() != self.dim)
        {
            return Err(SimError::DimensionMismatch(format!(
                "element on {} factors of dimension {}, simulator has {parties} of dimension {}",
                bad.parties(),
                bad.local_dim(),
                self.dim
            )));
        }
        if let Some(o) = optimizer {
            if o.parties() != self.ports || o.local_dim() != self.dim {
                return Err(SimError::DimensionMismatch(
                    "optimizer must act on the port systems".into(),
                ));
            }
        }
        let effective = povm.effective(optimizer, self.exec)?;
        let mut det = 0.0;
        let mut trace = 0.0;
        for (i, e) in effective.successes() {
            det += e.trace_product(&self.signal_state(i)?).re;
            trace += e.trace().re;
        }
        let d = self.dim as f64;
        let det_fidelity = det / (d * d);
        let p_succ = trace / d.powi(parties as i32);
        Ok(MeritReport {
            variant: povm.variant,
            ports: self.ports,
            dim: self.dim,
            p_succ: Merit::Real(p_succ),
            fidelity: Some(Merit::Real(det_fidelity / p_succ)),
            det_fidelity: Some(Merit::Real(det_fidelity)),
            provenance: Provenance::Simulated,
        })
    }

    /// Builds the measurement and the pre-processing for `variant` and evaluates it.
    pub fn simulate(&self, variant: ProtocolVariant, v: Option<&OptVector>) -> Result<MeritReport, SimError> {
        let povm = self.build_povms(variant, v)?;
        let o = self.optimizer_for(variant, v)?;
        self.channel_merits(&povm, o.as_ref())
    }

    /// `tr(M_0 ρ)` with the failure element seen through the optimizer.
    pub fn failure_overlap(&self, povm: &PovmSet, optimizer: Option<&DenseOperator>) -> Result<Option<f64>, SimError> {
        let effective = povm.effective(optimizer, self.exec)?;
        match effective.failure() {
            Some(m0) => Ok(Some(m0.trace_product(self.rho()?).re)),
            None => Ok(None),
        }
    }

    /// `max ‖V(π) E_i V(π)† - E_{π(i)}‖` over port transpositions `π`.
    pub fn covariance_residual(&self, povm: &PovmSet) -> Result<f64, SimError> {
        let mut worst: f64 = 0.0;
        for a in 1..=self.ports {
            for b in a + 1..=self.ports {
                let pi = self.port_transposition(a, b)?;
                for (label, e) in povm.labels.iter().zip(&povm.elements) {
                    let moved = conjugate_by_permutation(e, &pi)?;
                    let target = if *label == 0 { 0 } else { pi.apply(label - 1) + 1 };
                    let expected = povm
                        .element(target)
                        .ok_or_else(|| SimError::Domain(format!("no element for outcome {target}")))?;
                    worst = worst.max(moved.max_abs_diff(expected));
                }
            }
        }
        Ok(worst)
    }

    /// `max_i tr(Δ σ_i)` for the failure element of the minimal scheme.
    pub fn excess_overlap(&self) -> Result<f64, SimError> {
        let povm = self.build_povms(ProtocolVariant::Minimal, None)?;
        let delta = povm.failure().expect("minimal scheme has a failure element");
        let mut worst: f64 = 0.0;
        for s in self.signal_states()? {
            worst = worst.max(delta.trace_product(&s).re.abs());
        }
        Ok(worst)
    }

    /// `(1/d^N) tr(O₁ O₂)` on the port systems.
    pub fn state_overlap(&self, pair: OverlapPair, v: Option<&OptVector>) -> Result<f64, SimError> {
        let opt_p = || self.optimizer_operator(ProtocolVariant::ProbabilisticOpt, None);
        let opt_d = || self.optimizer_operator(ProtocolVariant::DeterministicOpt, v);
        let (a, b) = match pair {
            OverlapPair::OptPVsOptD => (opt_p()?, opt_d()?),
            OverlapPair::NonOptVsOptP => (DenseOperator::identity(self.ports, self.dim), opt_p()?),
            OverlapPair::NonOptVsOptD => (DenseOperator::identity(self.ports, self.dim), opt_d()?),
        };
        Ok(a.trace_product(&b).re / (self.dim as f64).powi(self.ports as i32))
    }

    /// Projectors onto the total-spin sectors of `N` qubits, from the
    /// eigenspaces of `S²`. Computed once per simulator.
    pub fn qubit_spin_projectors(&self) -> Result<&[(SpinSector, DenseOperator)], SimError> {
        if self.dim != 2 {
            return Err(SimError::Unsupported("spin sectors need d = 2".into()));
        }
        if let Some(p) = self.spin.get() {
            return Ok(p);
        }
        let n = self.ports;
        let half = 0.5;
        let paulis = [
            CMatrix::from_row_slice(2, 2, &[0.0.into(), half.into(), half.into(), 0.0.into()]),
            CMatrix::from_row_slice(
                2,
                2,
                &[
                    0.0.into(),
                    Complex64::new(0.0, -half),
                    Complex64::new(0.0, half),
                    0.0.into(),
                ],
            ),
            CMatrix::from_row_slice(2, 2, &[half.into(), 0.0.into(), 0.0.into(), (-half).into()]),
        ];
        let dim = 1usize << n;
        let mut s2 = DenseOperator::zeros(n, 2);
        for p in &paulis {
            let mut total = CMatrix::zeros(dim, dim);
            for k in 0..n {
                let left = CMatrix::identity(1 << k, 1 << k);
                let right = CMatrix::identity(1 << (n - k - 1), 1 << (n - k - 1));
                total += left.kronecker(p).kronecker(&right);
            }
            let total = DenseOperator::from_parts(n, 2, total);
            s2 = &s2 + &total.mul_with(&total, self.exec);
        }
        let eig = s2.eigh();
        let sectors = SpinSector::all(n)
            .into_iter()
            .map(|sector| {
                let j = sector.j();
                let target = j * (j + 1.0);
                let cols: Vec<usize> = (0..dim).filter(|&k| (eig.values[k] - target).abs() < 1e-6).collect();
                let v = eig.vectors.select_columns(&cols);
                (
                    sector,
                    DenseOperator::from_parts(n, 2, matmul(&v, &v.adjoint(), self.exec)),
                )
            })
            .collect::<Vec<_>>();
        Ok(self.spin.get_or_init(|| sectors))
    }

    /// Qubit optimizers written as `Σ_j √c(j) 𝟙(j)` on the spin sectors, with
    /// the published sector coefficients.
    pub fn qubit_spin_optimizer(&self, variant: ProtocolVariant) -> Result<DenseOperator, SimError> {
        let n = self.ports;
        let two_n = 2f64.powi(n as i32);
        let coeff = |s: &SpinSector| -> Result<f64, SimError> {
            let m = s.multiplicity() as f64;
            let d_j = rational_to_f64(&BigRational::from_integer(s.dimension().into()));
            match variant {
                ProtocolVariant::DeterministicOpt | ProtocolVariant::MinimalOptimized => {
                    let sin = (std::f64::consts::PI * m / (n + 2) as f64).sin();
                    Ok(4.0 * two_n * sin * sin / ((n + 2) as f64 * m * d_j))
                }
                ProtocolVariant::ProbabilisticOpt | ProtocolVariant::ConvertedFromProbOpt => {
                    let h = 6.0 / ((n + 1) * (n + 2) * (n + 3)) as f64;
                    Ok(two_n * h * m / d_j)
                }
                other => Err(SimError::Unsupported(format!("{other} has no spin-sector optimizer"))),
            }
        };
        let mut total = DenseOperator::zeros(n, 2);
        for (sector, proj) in self.qubit_spin_projectors()? {
            total = &total + &proj.scale(coeff(sector)?.sqrt());
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_qubit_success() {
        for n in 2..=5 {
            let sim = Simulator::new(n, 2).unwrap();
            let r = sim.simulate(ProtocolVariant::Minimal, None).unwrap();
            let expected = 1.0 - (n + 2) as f64 / 2f64.powi(n as i32 + 1);
            assert!((r.p_succ.value() - expected).abs() < 1e-10, "N = {n}");
        }
    }

    #[test]
    fn srm_trace_per_port() {
        let sim = Simulator::new(2, 2).unwrap();
        let minimal = sim.build_povms(ProtocolVariant::Minimal, None).unwrap();
        let det = sim.build_povms(ProtocolVariant::DeterministicNonOpt, None).unwrap();
        for i in 1..=2 {
            assert!((minimal.element(i).unwrap().trace().re - 2.0).abs() < 1e-10);
            assert!((det.element(i).unwrap().trace().re - 4.0).abs() < 1e-10);
        }
    }

    #[test]
    fn deterministic_completeness() {
        let sim = Simulator::new(3, 2).unwrap();
        let p = sim.build_povms(ProtocolVariant::DeterministicNonOpt, None).unwrap();
        assert!(p.completeness_residual() < 1e-10);
        assert!(!p.includes_failure);
    }

    #[test]
    fn optimal_probabilistic_two_qubits() {
        let sim = Simulator::new(2, 2).unwrap();
        let o = sim.optimizer_operator(ProtocolVariant::ProbabilisticOpt, None).unwrap();
        assert!(((&o.adjoint() * &o).trace().re - 4.0).abs() < 1e-8);
        let r = sim.simulate(ProtocolVariant::ProbabilisticOpt, None).unwrap();
        assert!((r.p_succ.value() - 0.4).abs() < 1e-10);
        assert!((r.fidelity.unwrap().value() - 1.0).abs() < 1e-10);
        let conv = sim.simulate(ProtocolVariant::ConvertedFromProbOpt, None).unwrap();
        assert!((conv.det_fidelity.unwrap().value() - 0.4).abs() < 1e-10);
    }

    #[test]
    fn optimizer_constructions_coincide() {
        for n in 2..=4 {
            let sim = Simulator::new(n, 2).unwrap();
            for variant in [ProtocolVariant::DeterministicOpt, ProtocolVariant::ProbabilisticOpt] {
                let a = sim.optimizer_operator(variant, None).unwrap();
                let b = sim.qubit_spin_optimizer(variant).unwrap();
                assert!(a.max_abs_diff(&b) < 1e-10, "{variant} N = {n}");
            }
        }
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let sim = Simulator::new(2, 2).unwrap();
        let other = Simulator::new(3, 2).unwrap();
        let p = other.build_povms(ProtocolVariant::Minimal, None).unwrap();
        assert!(matches!(
            sim.channel_merits(&p, None),
            Err(SimError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn spin_sectors_are_isotypic_projectors() {
        let sim = Simulator::new(4, 2).unwrap();
        for (sector, proj) in sim.qubit_spin_projectors().unwrap() {
            let young = sim.young_projector(&sector.partition()).unwrap();
            assert!(proj.max_abs_diff(&young) < 1e-10, "{:?}", sector);
        }
    }

    #[test]
    fn qubit_overlap_beyond_projector_cap() {
        let sim = Simulator::new(8, 2).unwrap();
        let x = sim.state_overlap(OverlapPair::NonOptVsOptD, None).unwrap();
        let y = crate::figures::resource_overlap_qubit(OverlapPair::NonOptVsOptD, 8);
        assert!((x - y).abs() < 1e-8);
    }
}
