//! JSON formats for matrices, pencils, polynomials and block Kronecker views.
//!
//! Complex entries are written as `[re, im]`; plain numbers are accepted as real entries.

use std::path::Path;

use fiedlerkron_core::kronecker::EbkView;
use fiedlerkron_core::matrix::grid;
use fiedlerkron_core::{BlockPencil, Mat, MatrixPolynomial, C64};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A matrix entry as read from JSON.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    /// `[re, im]`.
    Complex([f64; 2]),
    /// A real number.
    Real(f64),
}

impl Entry {
    fn value(self) -> C64 {
        match self {
            Entry::Complex([re, im]) => C64::new(re, im),
            Entry::Real(re) => C64::new(re, 0.0),
        }
    }
}

/// Row-major matrix of entries.
pub type MatrixJson = Vec<Vec<Entry>>;

/// Serializes a matrix as rows of `[re, im]` pairs; negative zeros are written as `0.0`.
pub fn matrix_to_json(m: &Mat) -> MatrixJson {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| Entry::Complex([m[(i, j)].re + 0.0, m[(i, j)].im + 0.0])).collect())
        .collect()
}

/// Reads a matrix with `cols` columns, checking that rows are rectangular and entries finite.
pub fn matrix_from_json(rows: &MatrixJson, cols: usize) -> Result<Mat> {
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::Input(format!("every row must have {cols} entries")));
    }
    let m = Mat::from_fn(rows.len(), cols, |i, j| rows[i][j].value());
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Input("matrix entries must be finite".into()));
    }
    Ok(m)
}

/// `{"n", "gridRows", "gridCols", "B1", "B0"}` for the pencil `lambda B1 + B0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PencilJson {
    /// Block size.
    pub n: usize,
    /// Number of block rows.
    pub grid_rows: usize,
    /// Number of block columns.
    pub grid_cols: usize,
    /// Coefficient of `lambda`.
    #[serde(rename = "B1")]
    pub b1: MatrixJson,
    /// Constant coefficient.
    #[serde(rename = "B0")]
    pub b0: MatrixJson,
}

impl PencilJson {
    /// Serializable form of a pencil.
    pub fn from_pencil(l: &BlockPencil) -> Self {
        Self {
            n: l.n,
            grid_rows: l.grid_rows(),
            grid_cols: l.grid_cols(),
            b1: matrix_to_json(&l.b1),
            b0: matrix_to_json(&l.b0),
        }
    }

    /// Validates the declared grid and rebuilds the pencil.
    pub fn to_pencil(&self) -> Result<BlockPencil> {
        let cols = self.grid_cols * self.n;
        let b1 = matrix_from_json(&self.b1, cols)?;
        let b0 = matrix_from_json(&self.b0, cols)?;
        if b1.nrows() != self.grid_rows * self.n {
            return Err(Error::Input(format!("expected {} rows, got {}", self.grid_rows * self.n, b1.nrows())));
        }
        Ok(BlockPencil::new(b1, b0, self.n)?)
    }
}

/// `{"n", "m", "grade", "coeffs"}` for `sum_i lambda^i A_i` with `n x m` coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolynomialJson {
    /// Rows of each coefficient.
    pub n: usize,
    /// Columns of each coefficient.
    pub m: usize,
    /// Grade `k`.
    pub grade: usize,
    /// `A_0, ..., A_k`.
    pub coeffs: Vec<MatrixJson>,
}

impl PolynomialJson {
    /// Serializable form of a polynomial.
    pub fn from_polynomial(p: &MatrixPolynomial) -> Self {
        Self {
            n: p.rows(),
            m: p.cols(),
            grade: p.grade(),
            coeffs: p.coeffs().iter().map(matrix_to_json).collect(),
        }
    }

    /// Validates the declared shape and rebuilds the polynomial.
    pub fn to_polynomial(&self) -> Result<MatrixPolynomial> {
        if self.coeffs.len() != self.grade + 1 {
            return Err(Error::Input(format!("grade {} needs {} coefficients", self.grade, self.grade + 1)));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let a = matrix_from_json(c, self.m)?;
                if a.nrows() != self.n {
                    return Err(Error::Input(format!("coefficients must have {} rows", self.n)));
                }
                Ok(a)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MatrixPolynomial::new(coeffs)?)
    }
}

/// JSON export of an extended block Kronecker view.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EbkJson {
    /// Number of block rows of `K1`.
    pub p: usize,
    /// Number of block rows of `K2`.
    pub q: usize,
    /// Block size.
    pub n: usize,
    /// 1-based block-row permutation.
    pub perm_l: Vec<usize>,
    /// 1-based block-column permutation.
    pub perm_r: Vec<usize>,
    /// Body pencil.
    #[serde(rename = "M")]
    pub m: PencilJson,
    /// Bottom-left wing pencil.
    #[serde(rename = "K1")]
    pub k1: PencilJson,
    /// Wing pencil whose block transpose is the top-right block.
    #[serde(rename = "K2")]
    pub k2: PencilJson,
    /// Factor of `K1 = B1 (L_p (x) I_n)`.
    #[serde(rename = "factorB1")]
    pub factor_b1: Option<MatrixJson>,
    /// Block transpose of the factor of `K2`.
    #[serde(rename = "factorB2")]
    pub factor_b2: Option<MatrixJson>,
    /// Whether the body satisfies the AS condition for the supplied polynomial.
    pub as_verified: bool,
    /// Whether the wing factors are nonsingular.
    pub minimal_basis_flags: [bool; 2],
}

impl EbkJson {
    /// Serializable form of a view; `as_verified` is false when no polynomial is given.
    pub fn from_view(v: &EbkView, poly: Option<&MatrixPolynomial>, tol: f64) -> Self {
        Self {
            p: v.p,
            q: v.q,
            n: v.n(),
            perm_l: v.perm_l.as_slice().to_vec(),
            perm_r: v.perm_r.as_slice().to_vec(),
            m: PencilJson::from_pencil(&v.body()),
            k1: PencilJson::from_pencil(&v.k1()),
            k2: PencilJson::from_pencil(&v.k2()),
            factor_b1: v.factor_b1(tol).ok().map(|b| matrix_to_json(&b)),
            factor_b2: v.factor_b2(tol).ok().map(|b| matrix_to_json(&b)),
            as_verified: poly.is_some_and(|p| v.check_as(p, tol)),
            minimal_basis_flags: v.minimal_basis_flags(tol),
        }
    }
}

/// A JSON input file: either a pencil or a polynomial.
#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    /// A pencil file.
    Pencil(BlockPencil),
    /// A polynomial file.
    Polynomial(MatrixPolynomial),
}

/// Parses a pencil or polynomial document, telling them apart by their keys.
pub fn parse_document(text: &str) -> Result<Document> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("B1").is_some() {
        let p: PencilJson = serde_json::from_value(value)?;
        Ok(Document::Pencil(p.to_pencil()?))
    } else if value.get("coeffs").is_some() {
        let p: PolynomialJson = serde_json::from_value(value)?;
        Ok(Document::Polynomial(p.to_polynomial()?))
    } else {
        Err(Error::Input("JSON is neither a pencil nor a polynomial".into()))
    }
}

/// Reads a pencil or polynomial document from a file.
pub fn read_document(path: &Path) -> Result<Document> {
    parse_document(&std::fs::read_to_string(path)?)
}

/// Pretty-printed JSON.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

/// Writes pretty-printed JSON followed by a newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    std::fs::write(path, to_json_string(value)? + "\n")?;
    Ok(())
}

/// Block size check used when pairing a pencil with a polynomial.
pub fn check_compatible(l: &BlockPencil, p: &MatrixPolynomial) -> Result<()> {
    let (r, c) = grid(&l.b1, l.n)?;
    if l.n != p.rows() || !p.is_square() || r != p.grade() || c != p.grade() {
        return Err(Error::Input(format!(
            "a {r} x {c} grid of {}x{} blocks does not fit a grade-{} polynomial of size {}x{}",
            l.n,
            l.n,
            p.grade(),
            p.rows(),
            p.cols()
        )));
    }
    Ok(())
}
