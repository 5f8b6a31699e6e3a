use super::operator::DenseOperator;
use super::SimError;
use crate::exec::Execution;
use crate::figures::ProtocolVariant;

/// Labelled measurement. Label 0 is the failure outcome when present; labels
/// `1..=N` select ports.
#[derive(Clone, Debug)]
pub struct PovmSet {
    pub elements: Vec<DenseOperator>,
    pub labels: Vec<usize>,
    pub variant: ProtocolVariant,
    pub includes_failure: bool,
}

impl PovmSet {
    pub fn element(&self, label: usize) -> Option<&DenseOperator> {
        self.labels.iter().position(|&l| l == label).map(|k| &self.elements[k])
    }

    pub fn failure(&self) -> Option<&DenseOperator> {
        if self.includes_failure {
            self.element(0)
        } else {
            None
        }
    }

    /// `(port, element)` pairs in port order.
    pub fn successes(&self) -> impl Iterator<Item = (usize, &DenseOperator)> {
        self.labels
            .iter()
            .copied()
            .zip(self.elements.iter())
            .filter(|(l, _)| *l != 0)
    }

    pub fn ports(&self) -> usize {
        self.successes().count()
    }

    pub fn total(&self) -> DenseOperator {
        let first = &self.elements[0];
        self.elements
            .iter()
            .fold(DenseOperator::zeros(first.parties(), first.local_dim()), |acc, e| {
                &acc + e
            })
    }

    /// `max |Σ E - 𝟙|`.
    pub fn completeness_residual(&self) -> f64 {
        let total = self.total();
        total.max_abs_diff(&DenseOperator::identity(total.parties(), total.local_dim()))
    }

    /// Smallest eigenvalue over all elements.
    pub fn min_eigenvalue(&self) -> f64 {
        self.elements
            .iter()
            .map(DenseOperator::min_eigenvalue)
            .fold(f64::INFINITY, f64::min)
    }

    /// Elements seen through the resource pre-processing:
    /// `(O ⊗ 𝟙)† E (O ⊗ 𝟙)`.
    pub fn effective(&self, optimizer: Option<&DenseOperator>, exec: Execution) -> Result<PovmSet, SimError> {
        let Some(o) = optimizer else {
            return Ok(self.clone());
        };
        let lifted = o.extend(1);
        lifted.check_shape(&self.elements[0])?;
        let adj = lifted.adjoint();
        let elements = exec.map(&self.elements, |e| adj.sandwich(e, exec));
        Ok(PovmSet {
            elements,
            labels: self.labels.clone(),
            variant: self.variant,
            includes_failure: self.includes_failure,
        })
    }
}

/// Spreads the failure element evenly over the ports: `Π_i = M_i + M_0/N`.
pub fn convert_to_deterministic(p: &PovmSet) -> Result<PovmSet, SimError> {
    let m0 = p
        .failure()
        .ok_or_else(|| SimError::Domain("measurement has no failure element to redistribute".into()))?;
    let n = p.ports();
    let share = m0.scale(1.0 / n as f64);
    let (labels, elements): (Vec<usize>, Vec<DenseOperator>) = p.successes().map(|(l, e)| (l, e + &share)).unzip();
    let variant = match p.variant {
        ProtocolVariant::ProbabilisticNonOpt => ProtocolVariant::ConvertedFromProbNonOpt,
        ProtocolVariant::ProbabilisticOpt => ProtocolVariant::ConvertedFromProbOpt,
        ProtocolVariant::Minimal => ProtocolVariant::DeterministicNonOpt,
        ProtocolVariant::MinimalOptimized => ProtocolVariant::DeterministicOpt,
        other => other,
    };
    Ok(PovmSet {
        elements,
        labels,
        variant,
        includes_failure: false,
    })
}
