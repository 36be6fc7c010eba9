//! Finite-dimensional free modules over the bicomplex ring.
//!
//! A [`Ket`] is a coefficient vector in a named reference basis. Every ket
//! splits as `e1 |ψ⟩₁ + e2 |ψ⟩₂` with complex component vectors, and a
//! bicomplex scalar product is fixed by one complex Gram matrix per
//! component ([`ScalarProductSpec`]).

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{gram_inner, vec_norm, CMatrix};
use crate::matrix::BicomplexMatrix;
use crate::scalar::{Bicomplex, Classification, Complex, Hyperbolic, Tolerance};

/// Label of the reference basis a ket or operator is expressed in.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisLabel(String);

impl BasisLabel {
    pub fn new(label: impl Into<String>) -> Self {
        Self(label.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl Default for BasisLabel {
    fn default() -> Self {
        Self::new("std")
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for BasisLabel {
    fn from(s: &str) -> Self {
        Self::new(s)
    }
}

pub(crate) fn check_same_basis(a: &BasisLabel, b: &BasisLabel) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::BasisMismatch {
            left: a.to_string(),
            right: b.to_string(),
        })
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Null-cone classification of a ket.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KetClass {
    Zero,
    NullCone1,
    NullCone2,
    Regular,
}

impl KetClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            KetClass::Zero => "zero",
            KetClass::NullCone1 => "null_cone_1",
            KetClass::NullCone2 => "null_cone_2",
            KetClass::Regular => "regular",
        }
    }
}

impl fmt::Display for KetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl From<Classification> for KetClass {
    fn from(c: Classification) -> Self {
        match c {
            Classification::Zero => KetClass::Zero,
            Classification::NullCone1 => KetClass::NullCone1,
            Classification::NullCone2 => KetClass::NullCone2,
            Classification::Invertible => KetClass::Regular,
        }
    }
}

/// An element of the module, given by its coefficients in a reference basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    coeffs: Vec<Bicomplex>,
    basis: BasisLabel,
}

impl Ket {
    pub fn new(coeffs: Vec<Bicomplex>, basis: BasisLabel) -> Self {
        assert!(!coeffs.is_empty(), "a ket needs at least one coefficient");
        Self { coeffs, basis }
    }

    pub fn zero(n: usize, basis: BasisLabel) -> Self {
        Self::new(vec![Bicomplex::ZERO; n], basis)
    }

    /// The `l`-th reference basis ket.
    pub fn unit(n: usize, l: usize, basis: BasisLabel) -> Self {
        let mut coeffs = vec![Bicomplex::ZERO; n];
        coeffs[l] = Bicomplex::ONE;
        Self::new(coeffs, basis)
    }

    /// `e1 |v1⟩ + e2 |v2⟩`.
    pub fn from_components(v1: &[Complex], v2: &[Complex], basis: BasisLabel) -> Self {
        assert_eq!(v1.len(), v2.len());
        Self::new(
            v1.iter()
                .zip(v2)
                .map(|(a, b)| Bicomplex::from_components(*a, *b))
                .collect(),
            basis,
        )
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Bicomplex] {
        &self.coeffs
    }

    pub fn basis(&self) -> &BasisLabel {
        &self.basis
    }

    /// `P_k(|ψ⟩)`: the complex vector of `k`-th idempotent components.
    pub fn component(&self, k: usize) -> Vec<Complex> {
        self.coeffs.iter().map(|w| w.project(k)).collect()
    }

    pub fn scale(&self, s: Bicomplex) -> Self {
        Self::new(
            self.coeffs.iter().map(|w| s * *w).collect(),
            self.basis.clone(),
        )
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        check_same_basis(&self.basis, &other.basis)?;
        check_dim(self.dim(), other.dim())?;
        Ok(Self::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| *a + *b)
                .collect(),
            self.basis.clone(),
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(Bicomplex::real(-1.0)))
    }

    /// `self - s·other`, the update step of orthogonalization.
    fn axpy_neg(&self, s: Bicomplex, other: &Self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| *a - s * *b)
                .collect(),
            self.basis.clone(),
        )
    }

    pub fn relabel(self, basis: BasisLabel) -> Self {
        Self { basis, ..self }
    }

    pub fn max_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (*a - *b).euclid_norm())
            .fold(0.0, f64::max)
    }

    pub fn classify(&self, tol: &Tolerance) -> KetClass {
        ket_classify(self, tol)
    }
}

/// The bicomplex scalar product, stored as the Gram matrices `G₁, G₂` of its
/// two component products on `V`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarProductSpec {
    g1: CMatrix,
    g2: CMatrix,
    chol1: CMatrix,
    chol2: CMatrix,
}

impl ScalarProductSpec {
    /// Validates Hermiticity (to `eps_eq`) and positive definiteness.
    pub fn new(g1: CMatrix, g2: CMatrix, tol: &Tolerance) -> Result<Self> {
        check_dim(g1.dim(), g2.dim())?;
        let mut chol = Vec::with_capacity(2);
        for (k, g) in [(1, &g1), (2, &g2)] {
            let residual = g.hermitian_residual();
            if residual > tol.eps_eq * g.max_abs().max(1.0) {
                return Err(Error::NotHermitian {
                    component: k,
                    residual,
                });
            }
            chol.push(
                g.cholesky()
                    .ok_or(Error::NotPositiveDefinite { component: k })?,
            );
        }
        let chol2 = chol.pop().unwrap();
        let chol1 = chol.pop().unwrap();
        Ok(Self {
            g1,
            g2,
            chol1,
            chol2,
        })
    }

    /// The standard product: `G₁ = G₂ = I`.
    pub fn identity(n: usize) -> Self {
        Self {
            g1: CMatrix::identity(n),
            g2: CMatrix::identity(n),
            chol1: CMatrix::identity(n),
            chol2: CMatrix::identity(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.g1.dim()
    }

    pub fn gram(&self, k: usize) -> &CMatrix {
        match k {
            1 => &self.g1,
            2 => &self.g2,
            _ => panic!("component index must be 1 or 2, got {k}"),
        }
    }

    /// Lower Cholesky factor of `G_k`.
    pub fn cholesky(&self, k: usize) -> &CMatrix {
        match k {
            1 => &self.chol1,
            2 => &self.chol2,
            _ => panic!("component index must be 1 or 2, got {k}"),
        }
    }

    /// `G_k⁻¹ b` via the stored Cholesky factor.
    pub fn solve_gram(&self, k: usize, b: &[Complex]) -> Vec<Complex> {
        let l = self.cholesky(k);
        l.solve_lower_adjoint(&l.solve_lower(b))
    }

    pub fn gram_inverse(&self, k: usize) -> CMatrix {
        let n = self.dim();
        let cols: Vec<Vec<Complex>> = (0..n)
            .map(|j| {
                let mut e = vec![Complex::new(0.0, 0.0); n];
                e[j] = Complex::new(1.0, 0.0);
                self.solve_gram(k, &e)
            })
            .collect();
        CMatrix::from_columns(&cols)
    }

    /// Whether the product stays in `C(i1)` on `V` of the reference basis,
    /// which for this representation means `G₁ = G₂`.
    pub fn is_closed_under_v(&self, tol: &Tolerance) -> bool {
        self.g1.max_diff(&self.g2) <= tol.eps_eq * self.g1.max_abs().max(1.0)
    }

    /// `e1 G₁ + e2 G₂` as one bicomplex matrix.
    pub fn bicomplex_gram(&self) -> BicomplexMatrix {
        BicomplexMatrix::from_components(&self.g1, &self.g2)
    }

    /// The same product expressed in coordinates of a new basis whose
    /// vectors are the columns of `l` (old coordinates = `l` · new ones).
    pub fn transformed(&self, l: &BicomplexMatrix, tol: &Tolerance) -> Result<Self> {
        check_dim(self.dim(), l.dim())?;
        let (l1, l2) = l.components();
        let g1 = &(&l1.adjoint() * &self.g1) * &l1;
        let g2 = &(&l2.adjoint() * &self.g2) * &l2;
        // re-Hermitize to absorb rounding in the triple product
        let h =
            |g: &CMatrix| CMatrix::from_fn(g.dim(), |i, j| (g[(i, j)] + g[(j, i)].conj()) * 0.5);
        Self::new(h(&g1), h(&g2), tol)
    }
}

/// `(ψ, ψ)` as a hyperbolic number, plus the real norm on `M' = V₁ ⊕ V₂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperbolicNorm {
    pub value: Hyperbolic,
    /// `(1/√2) √(a₁ + a₂)`
    pub flat: f64,
}

fn check_spec_ket(spec: &ScalarProductSpec, ket: &Ket) -> Result<()> {
    check_dim(spec.dim(), ket.dim())
}

/// `(ψ, φ) = e1 ψ₁^H G₁ φ₁ + e2 ψ₂^H G₂ φ₂`: linear in `φ`,
/// `†3`-antilinear in `ψ`.
pub fn scalar_product(spec: &ScalarProductSpec, psi: &Ket, phi: &Ket) -> Result<Bicomplex> {
    check_dim(psi.dim(), phi.dim())?;
    check_same_basis(psi.basis(), phi.basis())?;
    check_spec_ket(spec, psi)?;
    let c1 = gram_inner(spec.gram(1), &psi.component(1), &phi.component(1));
    let c2 = gram_inner(spec.gram(2), &psi.component(2), &phi.component(2));
    Ok(Bicomplex::from_components(c1, c2))
}

pub fn ket_classify(psi: &Ket, tol: &Tolerance) -> KetClass {
    let n1 = vec_norm(&psi.component(1));
    let n2 = vec_norm(&psi.component(2));
    Classification::from_magnitudes(n1, n2, tol.eps_null).into()
}

pub fn hyperbolic_norm(spec: &ScalarProductSpec, psi: &Ket) -> Result<HyperbolicNorm> {
    let value = Hyperbolic::from_bicomplex(&scalar_product(spec, psi, psi)?);
    let flat = ((value.x1 + value.x2).max(0.0) / 2.0).sqrt();
    Ok(HyperbolicNorm { value, flat })
}

/// Scales `ψ` by `a^{-1/2} e1 + b^{-1/2} e2` where `(ψ, ψ) = a e1 + b e2`.
pub fn normalize(spec: &ScalarProductSpec, psi: &Ket, tol: &Tolerance) -> Result<Ket> {
    match ket_classify(psi, tol) {
        KetClass::Regular => {}
        other => return Err(Error::NullConeKet(other)),
    }
    let h = Hyperbolic::from_bicomplex(&scalar_product(spec, psi, psi)?);
    if !(h.x1 > 0.0 && h.x2 > 0.0) {
        return Err(Error::NonPositiveNorm { a: h.x1, b: h.x2 });
    }
    let factor = Bicomplex::from_components(
        Complex::new(1.0 / h.x1.sqrt(), 0.0),
        Complex::new(1.0 / h.x2.sqrt(), 0.0),
    );
    Ok(psi.scale(factor))
}

/// Matrix whose columns are the coefficient vectors of `kets`.
pub fn kets_to_matrix(kets: &[Ket]) -> Result<BicomplexMatrix> {
    let cols: Vec<Vec<Bicomplex>> = kets.iter().map(|k| k.coeffs().to_vec()).collect();
    BicomplexMatrix::from_columns(&cols)
}

fn check_ket_family(spec: &ScalarProductSpec, kets: &[Ket]) -> Result<()> {
    let n = spec.dim();
    check_dim(n, kets.len())?;
    for k in kets {
        check_dim(n, k.dim())?;
        check_same_basis(kets[0].basis(), k.basis())?;
    }
    Ok(())
}

/// Orthogonalizes a basis in bicomplex arithmetic, dividing by the
/// self-product of each previously built ket. Projections are subtracted one
/// at a time and the sweep is repeated once to keep orthogonality at
/// rounding level. The result is orthogonal but not normalized.
pub fn orthogonalize(spec: &ScalarProductSpec, kets: &[Ket], tol: &Tolerance) -> Result<Vec<Ket>> {
    check_ket_family(spec, kets)?;
    if kets_to_matrix(kets)?.is_singular(tol) {
        return Err(Error::NotABasis);
    }
    let mut done: Vec<(Ket, Bicomplex)> = Vec::with_capacity(kets.len());
    for (index, m) in kets.iter().enumerate() {
        let mut v = m.clone();
        for _pass in 0..2 {
            for (u, inv_norm) in &done {
                let coef = scalar_product(spec, u, &v)? * *inv_norm;
                v = v.axpy_neg(coef, u);
            }
        }
        let pivot = scalar_product(spec, &v, &v)?;
        let inv = pivot
            .inverse(tol)
            .map_err(|_| Error::NullConePivot { index })?;
        done.push((v, inv));
    }
    Ok(done.into_iter().map(|(k, _)| k).collect())
}

/// Gram-Schmidt followed by normalization: returns an orthonormal basis
/// whose kets are bicomplex combinations of the inputs.
pub fn gram_schmidt(spec: &ScalarProductSpec, kets: &[Ket], tol: &Tolerance) -> Result<Vec<Ket>> {
    orthogonalize(spec, kets, tol)?
        .iter()
        .map(|k| normalize(spec, k, tol))
        .collect()
}

/// Largest off-diagonal `|(u_l, u_p)|` and largest `|(u_l, u_l) - 1|`.
pub fn orthonormality_residuals(spec: &ScalarProductSpec, kets: &[Ket]) -> Result<(f64, f64)> {
    let mut cross: f64 = 0.0;
    let mut unit: f64 = 0.0;
    for (l, a) in kets.iter().enumerate() {
        for (p, b) in kets.iter().enumerate() {
            let s = scalar_product(spec, a, b)?;
            if l == p {
                unit = unit.max((s - Bicomplex::ONE).euclid_norm());
            } else {
                cross = cross.max(s.euclid_norm());
            }
        }
    }
    Ok((cross, unit))
}

/// Builds `{ e1 |s_l⟩₁ + e2 |s_σ(l)⟩₂ }` from an orthogonal basis and a
/// permutation `σ` of `0..n`, then verifies the result is orthogonal.
pub fn mix_orthogonal_bases(
    spec: &ScalarProductSpec,
    kets: &[Ket],
    perm: &[usize],
    tol: &Tolerance,
) -> Result<Vec<Ket>> {
    check_ket_family(spec, kets)?;
    let n = kets.len();
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(Error::InvalidPermutation(format!(
            "length {} for {n} kets",
            perm.len()
        )));
    }
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::InvalidPermutation(format!("{perm:?}")));
        }
        seen[p] = true;
    }
    let mixed: Vec<Ket> = (0..n)
        .map(|l| {
            Ket::from_components(
                &kets[l].component(1),
                &kets[perm[l]].component(2),
                kets[l].basis().clone(),
            )
        })
        .collect();

    let scale = kets
        .iter()
        .map(|k| scalar_product(spec, k, k).map(|s| s.euclid_norm()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(1.0, f64::max);
    let (cross, _) = orthonormality_residuals(spec, &mixed)?;
    if cross > ORTHOGONALITY_SLACK * scale {
        return Err(Error::NotOrthogonal { residual: cross });
    }
    if let Some(bad) = mixed
        .iter()
        .find(|k| ket_classify(k, tol) != KetClass::Regular)
    {
        return Err(Error::NullConeKet(ket_classify(bad, tol)));
    }
    Ok(mixed)
}

/// Cross products above this (relative to the largest self-product) mean the
/// input to [`mix_orthogonal_bases`] was not orthogonal.
const ORTHOGONALITY_SLACK: f64 = 1e-8;

/// The unique `ψ` with `(ψ, m_l) = f_l` for every reference basis ket `m_l`.
pub fn riesz_representation(
    spec: &ScalarProductSpec,
    f: &[Bicomplex],
    basis: BasisLabel,
) -> Result<Ket> {
    check_dim(spec.dim(), f.len())?;
    // (ψ, m_l)_k = conj((G_k ψ_k)_l), so ψ_k = G_k⁻¹ conj(f_k)
    let solve = |k: usize| {
        let rhs: Vec<Complex> = f.iter().map(|w| w.project(k).conj()).collect();
        spec.solve_gram(k, &rhs)
    };
    Ok(Ket::from_components(&solve(1), &solve(2), basis))
}

/// Re-expresses `ψ` in the basis whose vectors are the columns of `l`
/// (`|new_l⟩ = Σ_p l_pl |old_p⟩`): new coefficients are `l⁻¹ · old`.
pub fn change_basis(
    psi: &Ket,
    l: &BicomplexMatrix,
    new_basis: BasisLabel,
    tol: &Tolerance,
) -> Result<Ket> {
    check_dim(l.dim(), psi.dim())?;
    let inv = l.inverse(tol)?;
    Ok(Ket::new(inv.matrix.mul_vec(psi.coeffs())?, new_basis))
}

/// A basis of the module, given by kets expressed in a parent basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Basis {
    label: BasisLabel,
    vectors: Vec<Ket>,
}

impl Basis {
    /// Accepts `vectors` only if none lies in the null cone and the
    /// change-of-basis matrix to the parent is nonsingular.
    pub fn new(label: BasisLabel, vectors: Vec<Ket>, tol: &Tolerance) -> Result<Self> {
        let n = vectors.len();
        if n == 0 {
            return Err(Error::NotABasis);
        }
        for v in &vectors {
            check_dim(n, v.dim())?;
            check_same_basis(vectors[0].basis(), v.basis())?;
            match ket_classify(v, tol) {
                KetClass::Regular => {}
                other => return Err(Error::NullConeKet(other)),
            }
        }
        if kets_to_matrix(&vectors)?.is_singular(tol) {
            return Err(Error::NotABasis);
        }
        Ok(Self { label, vectors })
    }

    /// The reference basis itself, as seen from itself.
    pub fn standard(n: usize, label: BasisLabel) -> Self {
        let vectors = (0..n).map(|l| Ket::unit(n, l, label.clone())).collect();
        Self { label, vectors }
    }

    pub fn label(&self) -> &BasisLabel {
        &self.label
    }

    pub fn parent(&self) -> &BasisLabel {
        self.vectors[0].basis()
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Ket] {
        &self.vectors
    }

    /// Columns are the basis vectors in parent coordinates.
    pub fn change_matrix(&self) -> BicomplexMatrix {
        kets_to_matrix(&self.vectors).expect("basis vectors share one dimension")
    }

    /// Coordinates of a parent-basis ket in this basis.
    pub fn express(&self, psi: &Ket, tol: &Tolerance) -> Result<Ket> {
        check_same_basis(self.parent(), psi.basis())?;
        change_basis(psi, &self.change_matrix(), self.label.clone(), tol)
    }
}

/// `{P_k(|s_l⟩)}` for a basis, checked to be complex-linearly independent.
pub fn project_basis(b: &Basis, k: usize, tol: &Tolerance) -> Result<Vec<Vec<Complex>>> {
    let vecs: Vec<Vec<Complex>> = b.vectors().iter().map(|v| v.component(k)).collect();
    let rank = CMatrix::from_columns(&vecs).rank(tol.eps_null.max(1e-12) * b.dim() as f64);
    if rank != b.dim() {
        return Err(Error::NotABasis);
    }
    Ok(vecs)
}
