//! JSON state files.
//!
//! ```json
//! {"dims": [2, 2, 2], "kind": "pure",  "data": [[re, im], ...]}
//! {"dims": [2, 2, 2], "kind": "mixed", "data": [[[re, im], ...], ...]}
//! ```
//!
//! Pure data holds `d` amplitudes, mixed data a `d x d` row-major matrix.
//! Numbers are written with shortest round-trip formatting, so a write/read
//! cycle is exact.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{ComplexMatrix, PureState, SystemDims, TripartiteState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateKind {
    Pure,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateData {
    Pure(Vec<[f64; 2]>),
    Mixed(Vec<Vec<[f64; 2]>>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub dims: [usize; 3],
    pub kind: StateKind,
    pub data: StateData,
}

/// A validated state read from a file.
#[derive(Debug, Clone, PartialEq)]
pub enum LoadedState {
    Pure(PureState),
    Mixed(TripartiteState),
}

impl LoadedState {
    pub fn dims(&self) -> SystemDims {
        match self {
            LoadedState::Pure(v) => v.dims(),
            LoadedState::Mixed(s) => s.dims(),
        }
    }

    pub fn density(&self) -> TripartiteState {
        match self {
            LoadedState::Pure(v) => v.density(),
            LoadedState::Mixed(s) => s.clone(),
        }
    }
}

fn pair(z: &Complex64) -> [f64; 2] {
    [z.re, z.im]
}

impl StateFile {
    pub fn from_pure(v: &PureState) -> Self {
        Self {
            dims: v.dims().as_array(),
            kind: StateKind::Pure,
            data: StateData::Pure(v.amplitudes().iter().map(pair).collect()),
        }
    }

    pub fn from_mixed(s: &TripartiteState) -> Self {
        let rho = s.rho();
        let rows = (0..rho.rows())
            .map(|i| (0..rho.cols()).map(|j| pair(&rho[(i, j)])).collect())
            .collect();
        Self {
            dims: s.dims().as_array(),
            kind: StateKind::Mixed,
            data: StateData::Mixed(rows),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::StateFile(e.to_string()))
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::StateFile(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("state file serializes")
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_json() + "\n").map_err(|e| Error::StateFile(format!("{}: {e}", path.display())))
    }

    /// Checks the schema and the state invariants.
    pub fn load(&self) -> Result<LoadedState> {
        let [m, n, p] = self.dims;
        let dims = SystemDims::new(m, n, p)?;
        let d = dims.total();
        let to_c = |v: &[f64; 2]| Complex64::new(v[0], v[1]);
        match (&self.kind, &self.data) {
            (StateKind::Pure, StateData::Pure(amps)) => {
                if amps.len() != d {
                    return Err(Error::StateFile(format!("pure state needs {d} amplitudes, found {}", amps.len())));
                }
                Ok(LoadedState::Pure(PureState::new(dims, amps.iter().map(to_c).collect())?))
            }
            (StateKind::Mixed, StateData::Mixed(rows)) => {
                if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                    return Err(Error::StateFile(format!("mixed state needs a {d}x{d} matrix")));
                }
                let data = rows.iter().flat_map(|r| r.iter().map(to_c)).collect();
                Ok(LoadedState::Mixed(TripartiteState::new(dims, ComplexMatrix::new(d, d, data)?)?))
            }
            // an empty array parses as pure data
            (StateKind::Mixed, StateData::Pure(v)) if v.is_empty() => {
                Err(Error::StateFile(format!("mixed state needs a {d}x{d} matrix")))
            }
            (kind, _) => Err(Error::StateFile(format!("data layout does not match kind {kind:?}"))),
        }
    }
}
