use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::FiguresError;
use crate::repcore::{enumerate_partitions, Partition, SpinSector};

/// Normalisation tolerance enforced when reading a vector from disk.
pub const LOAD_NORM_TOL: f64 = 1e-9;

/// Non-negative unit vector indexed by the admissible frames `μ ⊢ N`; the
/// weights that define the optimised deterministic resource state.
#[derive(Clone, Debug, PartialEq)]
pub struct OptVector {
    ports: usize,
    dim: usize,
    entries: Vec<(Partition, f64)>,
}

#[derive(Serialize, Deserialize)]
struct OptVectorFile {
    #[serde(rename = "N")]
    ports: usize,
    d: usize,
    entries: Vec<OptVectorEntry>,
}

#[derive(Serialize, Deserialize)]
struct OptVectorEntry {
    partition: Vec<usize>,
    v: f64,
}

impl OptVector {
    /// Validates keys (exactly the admissible `μ ⊢ N`), signs and normalisation.
    pub fn new(ports: usize, dim: usize, entries: Vec<(Partition, f64)>, norm_tol: f64) -> Result<Self, FiguresError> {
        let expected = enumerate_partitions(ports, Some(dim));
        let mut sorted = entries;
        sorted.sort_by(|a, b| b.0.cmp(&a.0));
        let keys: Vec<&Partition> = sorted.iter().map(|(p, _)| p).collect();
        if keys != expected.iter().collect::<Vec<_>>() {
            return Err(FiguresError::InvalidOptVector(format!(
                "keys must be exactly the {} frames of {ports} boxes with at most {dim} rows",
                expected.len()
            )));
        }
        if let Some((p, v)) = sorted.iter().find(|(_, v)| !(v.is_finite() && *v >= 0.0)) {
            return Err(FiguresError::InvalidOptVector(format!(
                "entry {p} = {v} is not a non-negative number"
            )));
        }
        let norm: f64 = sorted.iter().map(|(_, v)| v * v).sum();
        if (norm - 1.0).abs() > norm_tol {
            return Err(FiguresError::InvalidOptVector(format!(
                "squared norm {norm} differs from 1 by more than {norm_tol:e}"
            )));
        }
        Ok(OptVector {
            ports,
            dim,
            entries: sorted,
        })
    }

    pub fn ports(&self) -> usize {
        self.ports
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entries in decreasing lexicographic order of the frame.
    pub fn entries(&self) -> &[(Partition, f64)] {
        &self.entries
    }

    /// `v_μ`, zero for frames outside the admissible set.
    pub fn get(&self, mu: &Partition) -> f64 {
        self.entries.iter().find(|(p, _)| p == mu).map_or(0.0, |(_, v)| *v)
    }

    pub fn from_json_str(text: &str) -> Result<Self, FiguresError> {
        let file: OptVectorFile =
            serde_json::from_str(text).map_err(|e| FiguresError::InvalidOptVector(e.to_string()))?;
        let entries = file
            .entries
            .into_iter()
            .map(|e| {
                Partition::new(e.partition)
                    .map(|p| (p, e.v))
                    .map_err(|err| FiguresError::InvalidOptVector(err.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        OptVector::new(file.ports, file.d, entries, LOAD_NORM_TOL)
    }

    pub fn to_json_string(&self) -> String {
        let file = OptVectorFile {
            ports: self.ports,
            d: self.dim,
            entries: self
                .entries
                .iter()
                .map(|(p, v)| OptVectorEntry {
                    partition: p.rows().to_vec(),
                    v: *v,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("plain data serialises")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, FiguresError> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| FiguresError::Io(format!("{}: {e}", path.as_ref().display())))?;
        Self::from_json_str(&text)
    }
}

/// Closed-form qubit weights `v_j = 2 sin(π(2j+1)/(N+2)) / √(N+2)`, one per spin
/// sector, keyed by the two-row frame `(N/2+j, N/2-j)`.
pub fn qubit_optimal_eigenvector(ports: usize) -> OptVector {
    let scale = 2.0 / ((ports + 2) as f64).sqrt();
    let entries = SpinSector::all(ports)
        .into_iter()
        .map(|s| {
            let angle = PI * s.multiplicity() as f64 / (ports + 2) as f64;
            (s.partition(), scale * angle.sin())
        })
        .collect();
    OptVector::new(ports, 2, entries, 1e-12).expect("qubit eigenvector is normalised")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qubit_vector_small_cases() {
        let v2 = qubit_optimal_eigenvector(2);
        let half = std::f64::consts::FRAC_1_SQRT_2;
        assert!((v2.get(&Partition::row(2)) - half).abs() < 1e-12);
        assert!((v2.get(&"1,1".parse().unwrap()) - half).abs() < 1e-12);

        let v1 = qubit_optimal_eigenvector(1);
        assert!((v1.get(&Partition::row(1)) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn qubit_vector_is_normalised() {
        for n in 1..=60 {
            let v = qubit_optimal_eigenvector(n);
            let norm: f64 = v.entries().iter().map(|(_, x)| x * x).sum();
            assert!((norm - 1.0).abs() < 1e-12, "N = {n}");
            assert!(v.entries().iter().all(|(_, x)| *x >= 0.0));
        }
    }

    #[test]
    fn json_round_trip_and_validation() {
        let v = qubit_optimal_eigenvector(4);
        let back = OptVector::from_json_str(&v.to_json_string()).unwrap();
        assert_eq!(back, v);

        let missing = r#"{"N": 2, "d": 2, "entries": [{"partition": [2], "v": 1.0}]}"#;
        assert!(OptVector::from_json_str(missing).is_err());
        let unnormalised =
            r#"{"N": 2, "d": 2, "entries": [{"partition": [2], "v": 0.5}, {"partition": [1,1], "v": 0.5}]}"#;
        assert!(OptVector::from_json_str(unnormalised).is_err());
        let negative =
            r#"{"N": 2, "d": 2, "entries": [{"partition": [2], "v": -0.6}, {"partition": [1,1], "v": 0.8}]}"#;
        assert!(OptVector::from_json_str(negative).is_err());
        let ok = r#"{"N": 2, "d": 3, "entries": [{"partition": [1,1], "v": 0.8}, {"partition": [2], "v": 0.6}]}"#;
        let v = OptVector::from_json_str(ok).unwrap();
        assert_eq!(v.entries()[0].0, Partition::row(2));
    }
}
