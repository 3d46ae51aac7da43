//! JSON wire formats.
//!
//! Complex scalars serialize as plain numbers when the imaginary part
//! is zero and as `{"re": r, "im": i}` otherwise; both shapes are
//! accepted on input. A space is `{"dim": n, "gram": [[...], ...]}`,
//! vectors are scalar arrays, matrices are arrays of row arrays.

use num_complex::Complex64;
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::decomposition::FundamentalDecomposition;
use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;
use crate::space::{KVector, KreinSpace};

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
enum WireScalar {
    Real(f64),
    Pair {
        re: f64,
        #[serde(default)]
        im: f64,
    },
}

impl From<WireScalar> for Complex64 {
    fn from(w: WireScalar) -> Self {
        match w {
            WireScalar::Real(re) => Complex64::new(re, 0.0),
            WireScalar::Pair { re, im } => Complex64::new(re, im),
        }
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum WireOut {
    Real(f64),
    Pair { re: f64, im: f64 },
}

fn wire(z: Complex64) -> WireOut {
    if z.im == 0.0 {
        WireOut::Real(z.re)
    } else {
        WireOut::Pair { re: z.re, im: z.im }
    }
}

impl Serialize for KVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.dim()))?;
        for &z in self.coords() {
            seq.serialize_element(&wire(z))?;
        }
        seq.end()
    }
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows()))?;
        for i in 0..self.rows() {
            let row: Vec<WireOut> = self.row_slice(i).iter().map(|&z| wire(z)).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

#[derive(Deserialize)]
struct SpaceWire {
    dim: usize,
    gram: Vec<Vec<WireScalar>>,
}

#[derive(Serialize)]
struct SpaceWireOut<'a> {
    dim: usize,
    gram: &'a ComplexMatrix,
}

fn malformed(e: impl std::fmt::Display) -> Error {
    Error::Malformed(e.to_string())
}

fn matrix_from_nested(rows: Vec<Vec<WireScalar>>) -> Result<ComplexMatrix> {
    ComplexMatrix::from_rows(
        rows.into_iter()
            .map(|row| row.into_iter().map(Complex64::from).collect())
            .collect(),
    )
}

pub fn space_from_json(text: &str) -> Result<KreinSpace> {
    let wire: SpaceWire = serde_json::from_str(text).map_err(malformed)?;
    let gram = matrix_from_nested(wire.gram)?;
    if gram.rows() != wire.dim || gram.cols() != wire.dim {
        return Err(Error::Malformed(format!(
            "declared dim {} does not match a {}x{} gram matrix",
            wire.dim,
            gram.rows(),
            gram.cols()
        )));
    }
    KreinSpace::new(gram)
}

pub fn space_to_json(space: &KreinSpace) -> String {
    serde_json::to_string(&SpaceWireOut {
        dim: space.dim(),
        gram: space.gram(),
    })
    .expect("serialization of plain data cannot fail")
}

pub fn vector_from_json(text: &str) -> Result<KVector> {
    let wire: Vec<WireScalar> = serde_json::from_str(text).map_err(malformed)?;
    Ok(KVector::new(
        wire.into_iter().map(Complex64::from).collect(),
    ))
}

pub fn vector_to_json(v: &KVector) -> String {
    serde_json::to_string(v).expect("serialization of plain data cannot fail")
}

pub fn matrix_from_json(text: &str) -> Result<ComplexMatrix> {
    let wire: Vec<Vec<WireScalar>> = serde_json::from_str(text).map_err(malformed)?;
    matrix_from_nested(wire)
}

pub fn matrix_to_json(m: &ComplexMatrix) -> String {
    serde_json::to_string(m).expect("serialization of plain data cannot fail")
}

#[derive(Serialize)]
struct DecompositionWire<'a> {
    basis_plus: Vec<KVector>,
    basis_minus: Vec<KVector>,
    #[serde(skip)]
    _marker: std::marker::PhantomData<&'a ()>,
}

pub fn decomposition_to_json(d: &FundamentalDecomposition) -> String {
    let cols = |m: &ComplexMatrix| (0..m.cols()).map(|j| KVector::new(m.column(j))).collect();
    serde_json::to_string(&DecompositionWire {
        basis_plus: cols(d.basis_plus()),
        basis_minus: cols(d.basis_minus()),
        _marker: std::marker::PhantomData,
    })
    .expect("serialization of plain data cannot fail")
}
