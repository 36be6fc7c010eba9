//! Dense square bicomplex matrices.
//!
//! Every matrix splits exactly as `A = e1 A₁ + e2 A₂` with complex `A₁, A₂`.
//! Determinant and inverse are computed on the two components and
//! recombined; products use plain ring arithmetic.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use crate::error::{Error, Result, SingularComponent};
use crate::linalg::CMatrix;
use crate::scalar::{Bicomplex, Classification, Tolerance};

#[derive(Debug, Clone, PartialEq)]
pub struct BicomplexMatrix {
    n: usize,
    entries: Vec<Bicomplex>,
}

/// Inverse together with the 1-norm condition numbers of the two components.
#[derive(Debug, Clone)]
pub struct MatrixInverse {
    pub matrix: BicomplexMatrix,
    pub condition: [f64; 2],
}

impl BicomplexMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![Bicomplex::ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| {
            if i == j {
                Bicomplex::ONE
            } else {
                Bicomplex::ZERO
            }
        })
    }

    pub fn diag(d: &[Bicomplex]) -> Self {
        Self::from_fn(d.len(), |i, j| if i == j { d[i] } else { Bicomplex::ZERO })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Bicomplex) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Self { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Bicomplex>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Self { n, entries })
    }

    /// Matrix whose `l`-th column is `cols[l]`.
    pub fn from_columns(cols: &[Vec<Bicomplex>]) -> Result<Self> {
        let n = cols.len();
        if let Some(bad) = cols.iter().find(|c| c.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        Ok(Self::from_fn(n, |i, j| cols[j][i]))
    }

    pub fn from_components(a1: &CMatrix, a2: &CMatrix) -> Self {
        assert_eq!(a1.dim(), a2.dim(), "component orders differ");
        Self::from_fn(a1.dim(), |i, j| {
            Bicomplex::from_components(a1[(i, j)], a2[(i, j)])
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Bicomplex] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Bicomplex]> {
        self.entries.chunks(self.n)
    }

    pub fn column(&self, j: usize) -> Vec<Bicomplex> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }

    /// The complex matrix `A_k = P_k(A)`, `k ∈ {1, 2}`.
    pub fn component(&self, k: usize) -> CMatrix {
        CMatrix::from_fn(self.n, |i, j| self[(i, j)].project(k))
    }

    pub fn components(&self) -> (CMatrix, CMatrix) {
        (self.component(1), self.component(2))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: Bicomplex) -> Self {
        Self {
            n: self.n,
            entries: self.entries.iter().map(|w| *w * s).collect(),
        }
    }

    /// Ring product. Fails when the orders differ.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: rhs.n,
            });
        }
        Ok(self * rhs)
    }

    pub fn mul_vec(&self, x: &[Bicomplex]) -> Result<Vec<Bicomplex>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        Ok(self
            .rows()
            .map(|row| row.iter().zip(x).map(|(a, b)| *a * *b).sum())
            .collect())
    }

    /// Largest Euclidean norm of `self_ij - other_ij`.
    pub fn max_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (*a - *b).euclid_norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .map(Bicomplex::euclid_norm)
            .fold(0.0, f64::max)
    }

    /// `e1 det(A₁) + e2 det(A₂)` with component determinants from LU.
    pub fn det(&self) -> Bicomplex {
        let (a1, a2) = self.components();
        Bicomplex::from_components(a1.det(), a2.det())
    }

    pub fn is_singular(&self, tol: &Tolerance) -> bool {
        self.det().classify(tol) != Classification::Invertible
    }

    fn singular_component(&self, tol: &Tolerance) -> Option<SingularComponent> {
        match self.det().classify(tol) {
            Classification::Invertible => None,
            Classification::NullCone1 => Some(SingularComponent::First),
            Classification::NullCone2 => Some(SingularComponent::Second),
            Classification::Zero => Some(SingularComponent::Both),
        }
    }

    /// `e1 A₁⁻¹ + e2 A₂⁻¹`, defined exactly when `A` is not singular.
    pub fn inverse(&self, tol: &Tolerance) -> Result<MatrixInverse> {
        if let Some(which) = self.singular_component(tol) {
            return Err(Error::SingularMatrix(which));
        }
        let (a1, a2) = self.components();
        let (i1, i2) = match (a1.inverse(), a2.inverse()) {
            (Some(i1), Some(i2)) => (i1, i2),
            (None, Some(_)) => return Err(Error::SingularMatrix(SingularComponent::First)),
            (Some(_), None) => return Err(Error::SingularMatrix(SingularComponent::Second)),
            (None, None) => return Err(Error::SingularMatrix(SingularComponent::Both)),
        };
        let condition = [a1.norm_1() * i1.norm_1(), a2.norm_1() * i2.norm_1()];
        Ok(MatrixInverse {
            matrix: Self::from_components(&i1, &i2),
            condition,
        })
    }
}

impl Index<(usize, usize)> for BicomplexMatrix {
    type Output = Bicomplex;
    fn index(&self, (i, j): (usize, usize)) -> &Bicomplex {
        &self.entries[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for BicomplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Bicomplex {
        &mut self.entries[i * self.n + j]
    }
}

impl Mul for &BicomplexMatrix {
    type Output = BicomplexMatrix;
    fn mul(self, rhs: &BicomplexMatrix) -> BicomplexMatrix {
        assert_eq!(self.n, rhs.n, "matrix orders differ");
        let n = self.n;
        BicomplexMatrix::from_fn(n, |i, j| (0..n).map(|k| self[(i, k)] * rhs[(k, j)]).sum())
    }
}

impl Add for &BicomplexMatrix {
    type Output = BicomplexMatrix;
    fn add(self, rhs: &BicomplexMatrix) -> BicomplexMatrix {
        assert_eq!(self.n, rhs.n, "matrix orders differ");
        BicomplexMatrix::from_fn(self.n, |i, j| self[(i, j)] + rhs[(i, j)])
    }
}

impl Sub for &BicomplexMatrix {
    type Output = BicomplexMatrix;
    fn sub(self, rhs: &BicomplexMatrix) -> BicomplexMatrix {
        assert_eq!(self.n, rhs.n, "matrix orders differ");
        BicomplexMatrix::from_fn(self.n, |i, j| self[(i, j)] - rhs[(i, j)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn two_plus_j() -> Bicomplex {
        Bicomplex::real(2.0) + Bicomplex::j()
    }

    #[test]
    fn det_examples() {
        let tol = Tolerance::default();
        assert_eq!(BicomplexMatrix::identity(4).det(), Bicomplex::ONE);
        let a = BicomplexMatrix::diag(&[Bicomplex::e1(), Bicomplex::ONE]);
        assert!(a.det().approx_eq(&Bicomplex::e1(), 1e-15));
        assert_eq!(a.det().classify(&tol), Classification::NullCone2);
    }

    #[test]
    fn singularity_examples() {
        let tol = Tolerance::default();
        assert!(!BicomplexMatrix::identity(3).is_singular(&tol));
        assert!(BicomplexMatrix::diag(&[Bicomplex::e1(), Bicomplex::ONE]).is_singular(&tol));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut z = sample::bicomplex_matrix(&mut rng, 4);
        for j in 0..4 {
            z[(2, j)] = Bicomplex::ZERO;
        }
        assert!(z.is_singular(&tol));
        assert_eq!(z.det(), Bicomplex::ZERO);
    }

    #[test]
    fn inverse_examples() {
        let tol = Tolerance::default();
        let id = BicomplexMatrix::identity(3);
        assert_eq!(id.inverse(&tol).unwrap().matrix, id);

        let inv = BicomplexMatrix::diag(&[two_plus_j()])
            .inverse(&tol)
            .unwrap();
        let expect = Bicomplex::real(2.0 / 3.0) - Bicomplex::j().scale(1.0 / 3.0);
        assert!(inv.matrix[(0, 0)].approx_eq(&expect, 1e-15));

        let err = BicomplexMatrix::diag(&[Bicomplex::e1(), Bicomplex::ONE])
            .inverse(&tol)
            .unwrap_err();
        assert_eq!(err, Error::SingularMatrix(SingularComponent::Second));
    }

    #[test]
    fn product_and_transpose() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = sample::bicomplex_matrix(&mut rng, 4);
        let b = sample::bicomplex_matrix(&mut rng, 4);
        assert_eq!(&a * &BicomplexMatrix::identity(4), a);
        assert!(a.transpose().det().approx_eq(&a.det(), 1e-12));
        let ab = &a * &b;
        for k in 1..=2 {
            let lhs = ab.component(k);
            let rhs = &a.component(k) * &b.component(k);
            assert!(lhs.max_diff(&rhs) < 1e-13);
        }
        assert!(ab.det().approx_eq(&(a.det() * b.det()), 1e-12));
        assert!(a.matmul(&BicomplexMatrix::identity(3)).is_err());
    }

    #[test]
    fn component_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = sample::bicomplex_matrix(&mut rng, 5);
        let (a1, a2) = a.components();
        let back = BicomplexMatrix::from_components(&a1, &a2);
        assert!(back.max_diff(&a) < 1e-15);
    }

    #[test]
    fn ragged_rows_rejected() {
        let rows = vec![vec![Bicomplex::ONE, Bicomplex::ZERO], vec![Bicomplex::ONE]];
        assert!(BicomplexMatrix::from_rows(rows).is_err());
    }
}
