//! Tensor-product structure: Kronecker products, partial traces and partial
//! transposes. Bipartite indices follow |a_i⟩⊗|b_j⟩ ↦ i·d_B + j.

use serde::{Deserialize, Serialize};

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Local dimensions of a bipartite Hilbert space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[usize; 2]", into = "[usize; 2]")]
pub struct BipartiteDims {
    d_a: usize,
    d_b: usize,
}

impl BipartiteDims {
    pub fn new(d_a: usize, d_b: usize) -> Result<Self> {
        if d_a == 0 || d_b == 0 {
            return Err(Error::DimensionMismatch(format!(
                "local dimensions must be positive, got {d_a}x{d_b}"
            )));
        }
        Ok(Self { d_a, d_b })
    }

    pub fn d_a(&self) -> usize {
        self.d_a
    }

    pub fn d_b(&self) -> usize {
        self.d_b
    }

    pub fn total(&self) -> usize {
        self.d_a * self.d_b
    }

    pub fn min(&self) -> usize {
        self.d_a.min(self.d_b)
    }

    pub(crate) fn check_square(&self, o: &ComplexMatrix) -> Result<()> {
        if o.rows() != self.total() || o.cols() != self.total() {
            return Err(Error::DimensionMismatch(format!(
                "operator is {}x{} but dims {}x{} need side {}",
                o.rows(),
                o.cols(),
                self.d_a,
                self.d_b,
                self.total()
            )));
        }
        Ok(())
    }
}

impl TryFrom<[usize; 2]> for BipartiteDims {
    type Error = Error;
    fn try_from(d: [usize; 2]) -> Result<Self> {
        Self::new(d[0], d[1])
    }
}

impl From<BipartiteDims> for [usize; 2] {
    fn from(d: BipartiteDims) -> Self {
        [d.d_a, d.d_b]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Kronecker product, A-major.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (br, bc) = (b.rows(), b.cols());
    ComplexMatrix::from_fn(a.rows() * br, a.cols() * bc, |i, j| {
        a[(i / br, j / bc)] * b[(i % br, j % bc)]
    })
}

/// Trace out the subsystem that is not `keep`.
pub fn partial_trace(o: &ComplexMatrix, dims: BipartiteDims, keep: Subsystem) -> Result<ComplexMatrix> {
    dims.check_square(o)?;
    let (da, db) = (dims.d_a, dims.d_b);
    Ok(match keep {
        Subsystem::A => ComplexMatrix::from_fn(da, da, |i, j| (0..db).map(|k| o[(i * db + k, j * db + k)]).sum()),
        Subsystem::B => ComplexMatrix::from_fn(db, db, |k, l| (0..da).map(|i| o[(i * db + k, i * db + l)]).sum()),
    })
}

/// Transpose on one tensor factor.
pub fn partial_transpose(o: &ComplexMatrix, dims: BipartiteDims, side: Subsystem) -> Result<ComplexMatrix> {
    dims.check_square(o)?;
    let flip = match side {
        Subsystem::A => [true, false],
        Subsystem::B => [false, true],
    };
    partial_transpose_factors(o, &[dims.d_a, dims.d_b], &flip)
}

/// Transpose on an arbitrary subset of tensor factors of a square operator.
///
/// `factors` lists the local dimensions in index order (most significant
/// first); `flip[k]` selects whether factor k is transposed.
pub fn partial_transpose_factors(o: &ComplexMatrix, factors: &[usize], flip: &[bool]) -> Result<ComplexMatrix> {
    let total: usize = factors.iter().product();
    if factors.len() != flip.len() || o.rows() != total || o.cols() != total {
        return Err(Error::DimensionMismatch(format!(
            "operator {}x{} does not match factor dims {factors:?}",
            o.rows(),
            o.cols()
        )));
    }
    let mut strides = vec![1usize; factors.len()];
    for k in (0..factors.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * factors[k + 1];
    }
    let mut out = ComplexMatrix::zeros(total, total);
    for r in 0..total {
        for c in 0..total {
            let (mut r2, mut c2) = (r, c);
            for k in 0..factors.len() {
                if flip[k] {
                    let dr = (r / strides[k]) % factors[k];
                    let dc = (c / strides[k]) % factors[k];
                    r2 = r2 - dr * strides[k] + dc * strides[k];
                    c2 = c2 - dc * strides[k] + dr * strides[k];
                }
            }
            out[(r2, c2)] = o[(r, c)];
        }
    }
    Ok(out)
}
