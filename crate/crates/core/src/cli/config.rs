//! Scenario files: two PT qubits, an initial state, a time grid and options.

use std::f64::consts::FRAC_PI_6;

use serde::{Deserialize, Serialize};

use crate::entanglement::{state_from_eigen_amplitudes, Theory};
use crate::error::{Error, Result};
use crate::linalg::{c64, CVector};
use crate::ptqubit::{PTParams, PTQubitSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Basis {
    /// Amplitudes of |00>, |01>, |10>, |11>.
    Computational,
    /// Amplitudes of ψ+ψ+, ψ+ψ-, ψ-ψ+, ψ-ψ-.
    CptEigen,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateConfig {
    pub basis: Basis,
    /// Complex amplitudes as `[re, im]` pairs.
    pub amplitudes: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl TimeGrid {
    /// `steps` equally spaced samples from `start` to `stop` inclusive.
    pub fn samples(&self) -> Vec<f64> {
        match self.steps {
            0 => Vec::new(),
            1 => vec![self.start],
            n => {
                let dt = (self.stop - self.start) / (n - 1) as f64;
                (0..n).map(|k| self.start + dt * k as f64).collect()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub theory: Theory,
    pub log_base: String,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScenarioConfig {
    pub system1: PTParams,
    pub system2: PTParams,
    pub state: StateConfig,
    pub times: TimeGrid,
    pub options: Options,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        let params = PTParams::symmetric(1.0, 1.0, FRAC_PI_6);
        Self {
            system1: params,
            system2: params,
            state: StateConfig {
                basis: Basis::Computational,
                amplitudes: vec![[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
            },
            times: TimeGrid {
                start: 0.0,
                stop: 3.0,
                steps: 31,
            },
            options: Options {
                theory: Theory::Cpt,
                log_base: "2".into(),
                seed: 0,
            },
        }
    }
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidParams(format!("scenario: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario config always serializes")
    }

    /// Checks everything that does not require building the systems.
    pub fn validate(&self) -> Result<()> {
        if self.options.log_base != "2" {
            return Err(Error::InvalidParams(format!(
                "log_base must be \"2\", got {:?}",
                self.options.log_base
            )));
        }
        if self.state.amplitudes.len() != 4 {
            return Err(Error::InvalidParams(format!(
                "two-qubit scenarios need 4 amplitudes, got {}",
                self.state.amplitudes.len()
            )));
        }
        if self.times.steps == 0 {
            return Err(Error::InvalidParams(
                "times.steps must be at least 1".into(),
            ));
        }
        let all = [
            self.times.start,
            self.times.stop,
            self.system1.r,
            self.system1.s,
            self.system1.t,
            self.system1.theta,
            self.system2.r,
            self.system2.s,
            self.system2.t,
            self.system2.theta,
        ];
        if all
            .iter()
            .chain(self.state.amplitudes.iter().flatten())
            .any(|v| !v.is_finite())
        {
            return Err(Error::InvalidParams("non-finite number in scenario".into()));
        }
        if self.times.stop < self.times.start {
            return Err(Error::InvalidParams(
                "times.stop precedes times.start".into(),
            ));
        }
        Ok(())
    }

    pub fn systems(&self) -> Result<(PTQubitSystem, PTQubitSystem)> {
        Ok((
            PTQubitSystem::build(self.system1)?,
            PTQubitSystem::build(self.system2)?,
        ))
    }

    /// Initial state in the computational basis (not normalized).
    pub fn initial_state(&self, sys1: &PTQubitSystem, sys2: &PTQubitSystem) -> Result<CVector> {
        let amps: Vec<_> = self
            .state
            .amplitudes
            .iter()
            .map(|&[re, im]| c64(re, im))
            .collect();
        match self.state.basis {
            Basis::Computational => Ok(CVector::from_vec(amps)),
            Basis::CptEigen => {
                let quad = [amps[0], amps[1], amps[2], amps[3]];
                Ok(state_from_eigen_amplitudes(sys1, sys2, quad))
            }
        }
    }
}
