use std::fmt;
use std::str::FromStr;

use super::FiguresError;

/// The eight protocol variants the toolkit knows about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProtocolVariant {
    /// Square-root measurement without the excess term; failure on `Δ`.
    Minimal,
    /// Minimal scheme with the resource pre-processed by `Õ_A`.
    MinimalOptimized,
    /// Deterministic, maximally entangled resource, SRM plus `Δ/N`.
    DeterministicNonOpt,
    /// Deterministic with optimised resource.
    DeterministicOpt,
    /// Probabilistic, maximally entangled resource.
    ProbabilisticNonOpt,
    /// Probabilistic with optimised resource `O_A`.
    ProbabilisticOpt,
    /// Deterministic scheme obtained by spreading the non-optimal pPBT failure element.
    ConvertedFromProbNonOpt,
    /// Deterministic scheme obtained by spreading the optimal pPBT failure element.
    ConvertedFromProbOpt,
}

impl ProtocolVariant {
    pub const ALL: [ProtocolVariant; 8] = [
        ProtocolVariant::Minimal,
        ProtocolVariant::MinimalOptimized,
        ProtocolVariant::DeterministicNonOpt,
        ProtocolVariant::DeterministicOpt,
        ProtocolVariant::ProbabilisticNonOpt,
        ProtocolVariant::ProbabilisticOpt,
        ProtocolVariant::ConvertedFromProbNonOpt,
        ProtocolVariant::ConvertedFromProbOpt,
    ];

    /// Short command-line name.
    pub fn name(self) -> &'static str {
        match self {
            ProtocolVariant::Minimal => "mpbt",
            ProtocolVariant::MinimalOptimized => "mpbt-opt",
            ProtocolVariant::DeterministicNonOpt => "dpbt",
            ProtocolVariant::DeterministicOpt => "dpbt-opt",
            ProtocolVariant::ProbabilisticNonOpt => "ppbt",
            ProtocolVariant::ProbabilisticOpt => "ppbt-opt",
            ProtocolVariant::ConvertedFromProbNonOpt => "conv-ppbt",
            ProtocolVariant::ConvertedFromProbOpt => "conv-ppbt-opt",
        }
    }

    /// Deterministic protocols never fail.
    pub fn is_deterministic(self) -> bool {
        matches!(
            self,
            ProtocolVariant::DeterministicNonOpt
                | ProtocolVariant::DeterministicOpt
                | ProtocolVariant::ConvertedFromProbNonOpt
                | ProtocolVariant::ConvertedFromProbOpt
        )
    }

    pub fn is_probabilistic(self) -> bool {
        matches!(
            self,
            ProtocolVariant::ProbabilisticNonOpt | ProtocolVariant::ProbabilisticOpt
        )
    }

    /// Whether the resource state is pre-processed by a non-trivial operator.
    pub fn is_optimized(self) -> bool {
        matches!(
            self,
            ProtocolVariant::MinimalOptimized
                | ProtocolVariant::DeterministicOpt
                | ProtocolVariant::ProbabilisticOpt
                | ProtocolVariant::ConvertedFromProbOpt
        )
    }
}

impl fmt::Display for ProtocolVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProtocolVariant {
    type Err = FiguresError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        let v = match key.as_str() {
            "mpbt" => ProtocolVariant::Minimal,
            "mpbt-opt" | "mpbt-optimized" => ProtocolVariant::MinimalOptimized,
            "dpbt" | "dpbt-nonopt" => ProtocolVariant::DeterministicNonOpt,
            "dpbt-opt" => ProtocolVariant::DeterministicOpt,
            "ppbt" | "ppbt-nonopt" => ProtocolVariant::ProbabilisticNonOpt,
            "ppbt-opt" => ProtocolVariant::ProbabilisticOpt,
            "conv-ppbt" | "converted-from-ppbt-nonopt" => ProtocolVariant::ConvertedFromProbNonOpt,
            "conv-ppbt-opt" | "converted-from-ppbt-opt" => ProtocolVariant::ConvertedFromProbOpt,
            _ => return Err(FiguresError::UnknownVariant(s.to_string())),
        };
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for v in ProtocolVariant::ALL {
            assert_eq!(v.name().parse::<ProtocolVariant>().unwrap(), v);
        }
        assert_eq!(
            "dPBT_nonopt".parse::<ProtocolVariant>().unwrap(),
            ProtocolVariant::DeterministicNonOpt
        );
        assert_eq!(
            "converted_from_pPBT_opt".parse::<ProtocolVariant>().unwrap(),
            ProtocolVariant::ConvertedFromProbOpt
        );
        assert!("qpbt".parse::<ProtocolVariant>().is_err());
    }
}
