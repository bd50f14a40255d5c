use serde::Serialize;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Backtracking scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Non-chronological backjumping to the second highest level.
    Ncb,
    /// Chronological backtracking without repairing missed implications.
    Wcb,
    /// Chronological backtracking that rewinds the propagation head.
    Rscb,
    /// Chronological backtracking with lazy reimplication.
    Lscb,
}

impl Mode {
    pub const ALL: [Mode; 4] = [Mode::Ncb, Mode::Wcb, Mode::Rscb, Mode::Lscb];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Ncb => "ncb",
            Mode::Wcb => "wcb",
            Mode::Rscb => "rscb",
            Mode::Lscb => "lscb",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown {kind} {value:?}")]
pub struct UnknownName {
    kind: &'static str,
    value: String,
}

impl FromStr for Mode {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Mode, UnknownName> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownName {
                kind: "mode",
                value: s.to_string(),
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum AnalyzeStrategy {
    /// Classical first UIP; re-analyze when the clause conflicts again
    /// after backtracking.
    Analyze1,
    /// First UIP that also resolves through lazy reasons.
    Analyze2,
}

impl FromStr for AnalyzeStrategy {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<AnalyzeStrategy, UnknownName> {
        match s {
            "1" | "analyze1" => Ok(AnalyzeStrategy::Analyze1),
            "2" | "analyze2" => Ok(AnalyzeStrategy::Analyze2),
            _ => Err(UnknownName {
                kind: "analyze strategy",
                value: s.to_string(),
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RestartPolicy {
    Off,
    Agility,
}

impl FromStr for RestartPolicy {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<RestartPolicy, UnknownName> {
        match s {
            "off" => Ok(RestartPolicy::Off),
            "agility" => Ok(RestartPolicy::Agility),
            _ => Err(UnknownName {
                kind: "restart policy",
                value: s.to_string(),
            }),
        }
    }
}

/// When the invariant checker runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckLevel {
    Off,
    /// After every BCP return, backtrack and decision.
    Coarse,
    /// Additionally after every propagated literal.
    Fine,
}

impl FromStr for CheckLevel {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<CheckLevel, UnknownName> {
        match s {
            "off" => Ok(CheckLevel::Off),
            "coarse" => Ok(CheckLevel::Coarse),
            "fine" => Ok(CheckLevel::Fine),
            _ => Err(UnknownName {
                kind: "check level",
                value: s.to_string(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolverConfig {
    pub mode: Mode,
    pub analyze: AnalyzeStrategy,
    /// Chronological modes backtrack one level instead of backjumping when
    /// the jump `δ(D) - second_level(D)` exceeds this many levels.
    pub cb_threshold: u32,
    pub minimize: bool,
    pub blockers: bool,
    pub restarts: RestartPolicy,
    pub vsids_decay: f64,
    pub agility_decay: f64,
    pub agility_limit: f64,
    /// Seed recorded with runs; the solver itself makes no random choices.
    pub seed: u64,
    pub check_level: CheckLevel,
    /// Keep every learned clause (before and after minimization) for
    /// offline inspection.
    pub record_learned: bool,
    /// Buffer trace events.
    pub trace: bool,
}

impl Default for SolverConfig {
    fn default() -> SolverConfig {
        SolverConfig {
            mode: Mode::Lscb,
            analyze: AnalyzeStrategy::Analyze2,
            cb_threshold: 100,
            minimize: false,
            blockers: false,
            restarts: RestartPolicy::Off,
            vsids_decay: 0.95,
            agility_decay: 0.9999,
            agility_limit: 0.20,
            seed: 0,
            check_level: CheckLevel::Off,
            record_learned: false,
            trace: false,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("cb_threshold must be at least 1")]
    CbThreshold,
    #[error("{name} must lie strictly between 0 and 1, got {value}")]
    Fraction { name: &'static str, value: f64 },
}

impl SolverConfig {
    pub fn with_mode(mode: Mode) -> SolverConfig {
        SolverConfig {
            mode,
            ..SolverConfig::default()
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.cb_threshold < 1 {
            return Err(ConfigError::CbThreshold);
        }
        for (name, value) in [
            ("vsids_decay", self.vsids_decay),
            ("agility_decay", self.agility_decay),
            ("agility_limit", self.agility_limit),
        ] {
            if !(value > 0.0 && value < 1.0) {
                return Err(ConfigError::Fraction { name, value });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for m in Mode::ALL {
            assert_eq!(m.name().parse::<Mode>().unwrap(), m);
        }
        assert!("bogus".parse::<Mode>().is_err());
        assert_eq!("1".parse::<AnalyzeStrategy>().unwrap(), AnalyzeStrategy::Analyze1);
    }

    #[test]
    fn validation() {
        assert!(SolverConfig::default().validate().is_ok());
        let bad = SolverConfig {
            cb_threshold: 0,
            ..SolverConfig::default()
        };
        assert_eq!(bad.validate(), Err(ConfigError::CbThreshold));
        let bad = SolverConfig {
            vsids_decay: 1.0,
            ..SolverConfig::default()
        };
        assert!(bad.validate().is_err());
    }
}
