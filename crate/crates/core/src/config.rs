use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::DEFAULT_BRUTE_FORCE_CAP;
use crate::poly::{GbConfig, ScreeningField};

/// Coefficients for the oracle. Results are always exact over the
/// rationals; a prime field only adds a screening pass that must agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldChoice {
    Rationals,
    Prime(u64),
}

impl std::str::FromStr for FieldChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q" | "Q" | "rationals" => Ok(FieldChoice::Rationals),
            _ => s
                .strip_prefix("prime:")
                .or(Some(s))
                .and_then(|p| p.parse().ok())
                .map(FieldChoice::Prime)
                .ok_or_else(|| Error::Config(format!("unknown field {s:?}; use \"rationals\" or \"prime:<p>\""))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    /// Degree bound for Hilbert-function comparisons.
    pub degree_bound: u32,
    /// Largest power in the initial-powers check.
    pub smax: u32,
    pub gb_step_budget: u64,
    pub field: FieldChoice,
    /// Worker threads for catalog runs; 0 means one per core.
    pub workers: usize,
    pub output: Option<PathBuf>,
    /// Vertex cap for exhaustive subset searches.
    pub brute_force_cap: usize,
    /// Vertex cap for Gröbner-basis verification.
    pub oracle_max_vertices: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            degree_bound: 4,
            smax: 3,
            gb_step_budget: GbConfig::default().step_budget,
            field: FieldChoice::Rationals,
            workers: 0,
            output: None,
            brute_force_cap: DEFAULT_BRUTE_FORCE_CAP,
            oracle_max_vertices: 7,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.degree_bound < 2 {
            return Err(Error::Config(format!("degree bound must be at least 2, got {}", self.degree_bound)));
        }
        if self.smax < 1 {
            return Err(Error::Config("smax must be at least 1".into()));
        }
        if let FieldChoice::Prime(p) = self.field {
            if p <= 2 {
                return Err(Error::Config(format!("prime must exceed 2, got {p}")));
            }
            if p != ScreeningField::MODULUS {
                return Err(Error::Config(format!(
                    "only the screening prime {} is compiled in, got {p}",
                    ScreeningField::MODULUS
                )));
            }
        }
        if self.brute_force_cap > 63 {
            return Err(Error::Config("brute-force cap is at most 63".into()));
        }
        Ok(())
    }

    pub fn gb(&self) -> GbConfig {
        GbConfig { step_budget: self.gb_step_budget, ..GbConfig::default() }
    }
}
