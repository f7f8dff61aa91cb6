use serde::{Deserialize, Serialize};

use crate::{DenseOperator, Error, Result, StateVector, C64};

/// Serialized operator: row-major `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorJson {
    pub dim: usize,
    pub factor_dims: Vec<usize>,
    pub entries: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorJson {
    pub dim: usize,
    pub factor_dims: Vec<usize>,
    pub amplitudes: Vec<[f64; 2]>,
}

impl From<&DenseOperator> for OperatorJson {
    fn from(op: &DenseOperator) -> Self {
        Self {
            dim: op.dim(),
            factor_dims: op.factor_dims().to_vec(),
            entries: op.entries().iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl TryFrom<&OperatorJson> for DenseOperator {
    type Error = Error;
    fn try_from(j: &OperatorJson) -> Result<Self> {
        let op = DenseOperator::from_entries(
            j.factor_dims.clone(),
            &j.entries.iter().map(|e| C64::new(e[0], e[1])).collect::<Vec<_>>(),
        )?;
        if op.dim() != j.dim {
            return Err(Error::Dimension("declared dim disagrees with factor dims".into()));
        }
        Ok(op)
    }
}

impl From<&StateVector> for VectorJson {
    fn from(v: &StateVector) -> Self {
        Self {
            dim: v.dim(),
            factor_dims: v.factor_dims().to_vec(),
            amplitudes: v.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl TryFrom<&VectorJson> for StateVector {
    type Error = Error;
    fn try_from(j: &VectorJson) -> Result<Self> {
        let v = StateVector::from_vec(
            j.factor_dims.clone(),
            j.amplitudes.iter().map(|e| C64::new(e[0], e[1])).collect(),
        )?;
        if v.dim() != j.dim {
            return Err(Error::Dimension("declared dim disagrees with factor dims".into()));
        }
        Ok(v)
    }
}

impl DenseOperator {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&OperatorJson::from(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: OperatorJson =
            serde_json::from_str(s).map_err(|e| Error::Domain(format!("bad operator JSON: {e}")))?;
        Self::try_from(&j)
    }
}

impl StateVector {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&VectorJson::from(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: VectorJson =
            serde_json::from_str(s).map_err(|e| Error::Domain(format!("bad vector JSON: {e}")))?;
        Self::try_from(&j)
    }
}
