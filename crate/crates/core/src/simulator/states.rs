use num_complex::Complex64;

use super::linalg::{inv_sqrt_on_support, DEFAULT_NULL_TOL};
use super::operator::{CMatrix, DenseOperator};
use super::perm::conjugate_by_permutation;
use super::{SimError, Simulator};

impl Simulator {
    /// `P⁺` on two factors: `(1/d) Σ_{xy} |xx⟩⟨yy|`.
    pub fn max_entangled_pair(&self) -> DenseOperator {
        let d = self.dim;
        let mut m = CMatrix::zeros(d * d, d * d);
        for x in 0..d {
            for y in 0..d {
                m[(x * d + x, y * d + y)] = Complex64::new(1.0 / d as f64, 0.0);
            }
        }
        DenseOperator::from_parts(2, d, m)
    }

    /// `𝟙 ⊗ P⁺` with the projector on port `i` (1-based) and `C`, unnormalised.
    pub(crate) fn port_projector(&self, i: usize) -> Result<DenseOperator, SimError> {
        self.check_port(i)?;
        let last = DenseOperator::identity(self.ports - 1, self.dim).kron(&self.max_entangled_pair())?;
        if i == self.ports {
            return Ok(last);
        }
        conjugate_by_permutation(&last, &self.port_transposition(i, self.ports)?)
    }

    /// `σ_i = (1/d^{N-1}) 𝟙 ⊗ P⁺_{A_i C}`.
    pub fn signal_state(&self, i: usize) -> Result<DenseOperator, SimError> {
        let p = self.port_projector(i)?;
        Ok(p.scale(1.0 / (self.dim as f64).powi(self.ports as i32 - 1)))
    }

    pub fn signal_states(&self) -> Result<Vec<DenseOperator>, SimError> {
        let states = self.exec.map_range(self.ports, |k| self.signal_state(k + 1));
        states.into_iter().collect()
    }

    /// `ρ = Σ_i σ_i`.
    pub fn rho(&self) -> Result<&DenseOperator, SimError> {
        if let Some(r) = self.rho.get() {
            return Ok(r);
        }
        let total = self
            .signal_states()?
            .iter()
            .fold(DenseOperator::zeros(self.parties(), self.dim), |acc, s| &acc + s);
        Ok(self.rho.get_or_init(|| total))
    }

    /// `ρ^{-1/2}` on the support of `ρ`.
    pub fn rho_inv_sqrt(&self) -> Result<&DenseOperator, SimError> {
        if let Some(r) = self.rho_inv_sqrt.get() {
            return Ok(r);
        }
        let r = inv_sqrt_on_support(self.rho()?, DEFAULT_NULL_TOL)?;
        Ok(self.rho_inv_sqrt.get_or_init(|| r))
    }

    /// Square-root measurement `Π_i = ρ^{-1/2} σ_i ρ^{-1/2}`, `i = 1..N`.
    pub fn srm_elements(&self) -> Result<&[DenseOperator], SimError> {
        if let Some(e) = self.srm.get() {
            return Ok(e);
        }
        let r = self.rho_inv_sqrt()?;
        let signals = self.signal_states()?;
        let elems = signals.iter().map(|s| r.sandwich(s, self.exec)).collect::<Vec<_>>();
        Ok(self.srm.get_or_init(|| elems))
    }
}
