//! Dense square complex matrices and the vector helpers used throughout
//! the crate.
//!
//! Storage is row-major `Vec<Complex64>`. Matrices are always square; the
//! toolkit targets small dimensions (1 through 12), so all products are
//! plain cubic loops. Serialization uses an explicit document shape,
//!
//! ```json
//! {"n": 2, "rows": [[[re, im], [re, im]], [[re, im], [re, im]]]}
//! ```
//!
//! which round-trips every finite `f64` exactly.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Square complex matrix.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixDoc", into = "MatrixDoc")]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    /// Zero matrix of side `n`.
    pub fn zeros(n: usize) -> Self {
        CMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    /// Identity matrix of side `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds from nested rows, validating shape and finiteness.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidParameter("matrix side must be >= 1".into()));
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for (j, &z) in row.iter().enumerate() {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite {
                        context: "matrix entry",
                        row: i,
                        col: j,
                    });
                }
                data.push(z);
            }
        }
        Ok(CMatrix { n, data })
    }

    /// Builds entry-wise from a closure over `(row, col)`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Diagonal matrix from real entries.
    pub fn from_real_diag(diag: &[f64]) -> Self {
        let mut m = CMatrix::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Diagonal matrix from complex entries.
    pub fn from_diag(diag: &[Complex64]) -> Self {
        let mut m = CMatrix::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// Side length.
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    /// Entry-wise complex conjugate (no transpose).
    pub fn conj(&self) -> CMatrix {
        CMatrix::from_fn(self.n, |i, j| self[(i, j)].conj())
    }

    /// Matrix-vector product.
    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.n, "matvec dimension mismatch");
        let mut out = vec![Complex64::new(0.0, 0.0); self.n];
        for i in 0..self.n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..self.n {
                acc += self[(i, j)] * x[j];
            }
            out[i] = acc;
        }
        out
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }

    /// Assembles a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Complex64>]) -> Result<Self> {
        let n = cols.len();
        if n == 0 {
            return Err(Error::InvalidParameter("matrix side must be >= 1".into()));
        }
        for col in cols {
            if col.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: col.len(),
                });
            }
        }
        Ok(CMatrix::from_fn(n, |i, j| cols[j][i]))
    }

    /// Trace.
    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// True when every entry is finite.
    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Errors with `NonFinite` if any entry is NaN or infinite.
    pub fn ensure_finite(&self, context: &'static str) -> Result<()> {
        for i in 0..self.n {
            for j in 0..self.n {
                let z = self[(i, j)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite {
                        context,
                        row: i,
                        col: j,
                    });
                }
            }
        }
        Ok(())
    }

    /// ‖A − A*‖_F, the distance from being Hermitian.
    pub fn hermitian_defect(&self) -> f64 {
        (self - &self.adjoint()).frobenius_norm()
    }

    /// Hermitian part (A + A*)/2.
    pub fn hermitian_part(&self) -> CMatrix {
        let adj = self.adjoint();
        CMatrix::from_fn(self.n, |i, j| (self[(i, j)] + adj[(i, j)]) * 0.5)
    }

    /// Scales by a complex factor.
    pub fn scale(&self, factor: Complex64) -> CMatrix {
        CMatrix::from_fn(self.n, |i, j| self[(i, j)] * factor)
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "matrix addition dimension mismatch");
        CMatrix::from_fn(self.n, |i, j| self[(i, j)] + rhs[(i, j)])
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "matrix subtraction dimension mismatch");
        CMatrix::from_fn(self.n, |i, j| self[(i, j)] - rhs[(i, j)])
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "matrix product dimension mismatch");
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;

    fn neg(self) -> CMatrix {
        CMatrix::from_fn(self.n, |i, j| -self[(i, j)])
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for j in 0..self.n {
                let z = self[(i, j)];
                write!(f, "{:>12.5e}{:+.5e}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Serialized form of [`CMatrix`]: side length plus nested `[re, im]` pairs.
#[derive(Serialize, Deserialize)]
pub struct MatrixDoc {
    pub n: usize,
    pub rows: Vec<Vec<(f64, f64)>>,
}

impl TryFrom<MatrixDoc> for CMatrix {
    type Error = Error;

    fn try_from(doc: MatrixDoc) -> Result<CMatrix> {
        if doc.n == 0 {
            return Err(Error::InvalidDocument("matrix side must be >= 1".into()));
        }
        if doc.rows.len() != doc.n {
            return Err(Error::InvalidDocument(format!(
                "expected {} rows, found {}",
                doc.n,
                doc.rows.len()
            )));
        }
        let rows: Vec<Vec<Complex64>> = doc
            .rows
            .iter()
            .map(|row| row.iter().map(|&(re, im)| Complex64::new(re, im)).collect())
            .collect();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != doc.n {
                return Err(Error::InvalidDocument(format!(
                    "row {} has {} entries, expected {}",
                    i,
                    row.len(),
                    doc.n
                )));
            }
        }
        CMatrix::from_rows(&rows)
    }
}

impl From<CMatrix> for MatrixDoc {
    fn from(m: CMatrix) -> MatrixDoc {
        MatrixDoc {
            n: m.n,
            rows: (0..m.n)
                .map(|i| (0..m.n).map(|j| (m[(i, j)].re, m[(i, j)].im)).collect())
                .collect(),
        }
    }
}

/// Inner product ⟨x, y⟩ = Σ xᵢ ȳᵢ, linear in the first argument.
pub fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    assert_eq!(x.len(), y.len(), "inner product dimension mismatch");
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

/// Euclidean norm of a vector.
pub fn vec_norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Rank-one operator x ⊗ y acting as z ↦ ⟨z, y⟩ x; entries xᵢ ȳⱼ.
pub fn outer(x: &[Complex64], y: &[Complex64]) -> Result<CMatrix> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    if x.is_empty() {
        return Err(Error::InvalidParameter("vectors must be nonempty".into()));
    }
    Ok(CMatrix::from_fn(x.len(), |i, j| x[i] * y[j].conj()))
}
