use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;

use super::sample_rational;
use crate::error::{OmegaError, Result};
use crate::group::{OmegaGroup, OperationDescriptor, SampleRng};
use crate::scalar::Scalar;

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Square matrix with rational entries, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    dim: usize,
    entries: Vec<BigRational>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(OmegaError::Parse("matrix must be square and nonempty".into()));
        }
        Ok(Matrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            entries: vec![BigRational::zero(); dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &BigRational {
        &self.entries[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[BigRational] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Matrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        Matrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigRational::zero();
                for l in 0..n {
                    acc += self.get(i, l) * other.get(l, j);
                }
                out.entries[i * n + j] = acc;
            }
        }
        out
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        assert_eq!(self.dim, v.0.len(), "dimension mismatch");
        Vector(
            (0..self.dim)
                .map(|i| self.row(i).iter().zip(&v.0).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    /// Maximum absolute row sum.
    pub fn max_row_sum(&self) -> BigRational {
        (0..self.dim)
            .map(|i| self.row(i).iter().map(|x| x.abs()).sum::<BigRational>())
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.dim).map(|i| format!("[{}]", join(self.row(i)))).collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// `n×n` rational matrices with the max-row-sum norm and the matrix product.
#[derive(Debug, Clone)]
pub struct MatrixRing {
    dim: usize,
    ops: Vec<OperationDescriptor<Matrix>>,
}

impl MatrixRing {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(OmegaError::InvalidParameter(
                "matrix dimension must be at least 1".into(),
            ));
        }
        let ops = vec![OperationDescriptor::new("mul", 2, Scalar::one(), |a: &[Matrix]| {
            a[0].mul(&a[1])
        })];
        Ok(MatrixRing { dim, ops })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

impl OmegaGroup for MatrixRing {
    type Elem = Matrix;

    fn name(&self) -> String {
        format!("matrix:{}", self.dim)
    }

    fn zero(&self) -> Matrix {
        Matrix::zeros(self.dim)
    }

    fn add(&self, a: &Matrix, b: &Matrix) -> Matrix {
        a.zip_with(b, |x, y| x + y)
    }

    fn neg(&self, a: &Matrix) -> Matrix {
        Matrix {
            dim: a.dim,
            entries: a.entries.iter().map(|x| -x).collect(),
        }
    }

    fn ops(&self) -> &[OperationDescriptor<Matrix>] {
        &self.ops
    }

    fn norm_value(&self, a: &Matrix) -> BigRational {
        a.max_row_sum()
    }

    fn sample(&self, rng: &mut SampleRng) -> Matrix {
        if rng.random_ratio(1, 20) {
            return self.zero();
        }
        Matrix {
            dim: self.dim,
            entries: (0..self.dim * self.dim).map(|_| sample_rational(rng)).collect(),
        }
    }
}

/// Column vector with rational entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector(pub Vec<BigRational>);

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", join(&self.0))
    }
}

/// `ℚⁿ` with the max-abs norm and no operations besides addition.
#[derive(Debug, Clone)]
pub struct ColumnVectors {
    dim: usize,
    ops: Vec<OperationDescriptor<Vector>>,
}

impl ColumnVectors {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(OmegaError::InvalidParameter(
                "vector dimension must be at least 1".into(),
            ));
        }
        Ok(ColumnVectors { dim, ops: Vec::new() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

impl OmegaGroup for ColumnVectors {
    type Elem = Vector;

    fn name(&self) -> String {
        format!("vector:{}", self.dim)
    }

    fn zero(&self) -> Vector {
        Vector(vec![BigRational::zero(); self.dim])
    }

    fn add(&self, a: &Vector, b: &Vector) -> Vector {
        Vector(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    fn neg(&self, a: &Vector) -> Vector {
        Vector(a.0.iter().map(|x| -x).collect())
    }

    fn ops(&self) -> &[OperationDescriptor<Vector>] {
        &self.ops
    }

    fn norm_value(&self, a: &Vector) -> BigRational {
        a.0.iter().map(|x| x.abs()).max().unwrap_or_else(BigRational::zero)
    }

    fn sample(&self, rng: &mut SampleRng) -> Vector {
        if rng.random_ratio(1, 20) {
            return self.zero();
        }
        Vector((0..self.dim).map(|_| sample_rational(rng)).collect())
    }
}
