use serde::{Deserialize, Serialize};

use super::matrix::ComplexMatrix;
use crate::error::Error;

/// Wire format `{"rows", "cols", "re", "im"}` with row-major entries.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl TryFrom<MatrixJson> for ComplexMatrix {
    type Error = Error;
    fn try_from(m: MatrixJson) -> Result<Self, Error> {
        if m.re.len() != m.rows * m.cols || m.im.len() != m.rows * m.cols {
            return Err(Error::Parse(format!(
                "matrix declares {}x{} but has {} real and {} imaginary entries",
                m.rows,
                m.cols,
                m.re.len(),
                m.im.len()
            )));
        }
        ComplexMatrix::from_parts(m.rows, m.cols, &m.re, &m.im).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl From<ComplexMatrix> for MatrixJson {
    fn from(m: ComplexMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            re: m.data().iter().map(|z| z.re).collect(),
            im: m.data().iter().map(|z| z.im).collect(),
        }
    }
}

impl Serialize for ComplexMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixJson::from(self.clone()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(d)?;
        ComplexMatrix::try_from(raw).map_err(serde::de::Error::custom)
    }
}
