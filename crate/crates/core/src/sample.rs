//! Random instances for property checks.
//!
//! All generators take the caller's RNG so runs stay reproducible under a
//! fixed seed.

use rand::Rng;

use crate::linalg::CMatrix;
use crate::matrix::BicomplexMatrix;
use crate::scalar::{Bicomplex, Complex};

pub fn complex<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> Complex {
    Complex::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
}

/// Uniform in `[-1, 1)^4`.
pub fn bicomplex<R: Rng + ?Sized>(rng: &mut R) -> Bicomplex {
    Bicomplex::new(complex(rng, 1.0), complex(rng, 1.0))
}

/// Hyperbolic number with both idempotent components in `[lo, hi)`.
pub fn hyperbolic<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> Bicomplex {
    Bicomplex::from_components(
        Complex::new(rng.gen_range(lo..hi), 0.0),
        Complex::new(rng.gen_range(lo..hi), 0.0),
    )
}

pub fn complex_vec<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex> {
    (0..n).map(|_| complex(rng, 1.0)).collect()
}

pub fn bicomplex_vec<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Bicomplex> {
    (0..n).map(|_| bicomplex(rng)).collect()
}

pub fn complex_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64) -> CMatrix {
    CMatrix::from_fn(n, |_, _| complex(rng, scale))
}

/// Random Hermitian matrix with entries of order one.
pub fn hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    let a = complex_matrix(rng, n, 1.0);
    CMatrix::from_fn(n, |i, j| (a[(i, j)] + a[(j, i)].conj()) * 0.5)
}

/// `B^H B + I`: Hermitian positive definite with condition number of order ten.
pub fn positive_definite<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    let b = complex_matrix(rng, n, 1.0).scale(Complex::new(1.0 / (n as f64).sqrt(), 0.0));
    &(&b.adjoint() * &b) + &CMatrix::identity(n)
}

/// Random complex matrix shifted by `shift * I`; a shift of order `n` keeps
/// it well conditioned.
pub fn shifted_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize, shift: f64) -> CMatrix {
    let mut a = complex_matrix(rng, n, 1.0);
    for i in 0..n {
        a[(i, i)] += Complex::new(shift, 0.0);
    }
    a
}

pub fn bicomplex_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> BicomplexMatrix {
    BicomplexMatrix::from_fn(n, |_, _| bicomplex(rng))
}

/// Bicomplex matrix whose two idempotent components are well conditioned.
pub fn well_conditioned<R: Rng + ?Sized>(rng: &mut R, n: usize) -> BicomplexMatrix {
    let a1 = shifted_matrix(rng, n, n as f64);
    let a2 = shifted_matrix(rng, n, n as f64);
    BicomplexMatrix::from_components(&a1, &a2)
}

/// Uniformly random permutation of `0..n`.
pub fn permutation<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        p.swap(i, j);
    }
    p
}
