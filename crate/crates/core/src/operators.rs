//! Linear operators on the module and their spectral theory.
//!
//! An operator is a bicomplex matrix in a named basis. Since
//! `A = e1 A₁ + e2 A₂` and every ket splits the same way, eigenproblems,
//! adjoints and power series all reduce to two independent complex problems
//! that are solved separately and recombined.

use crate::error::{Error, Result};
use crate::hilbert::{
    check_dim, check_same_basis, ket_classify, scalar_product, BasisLabel, Ket, KetClass,
    ScalarProductSpec,
};
use crate::linalg::{gram_inner, CMatrix};
use crate::matrix::BicomplexMatrix;
use crate::scalar::{Bicomplex, Classification, Complex, Tolerance};

#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    mat: BicomplexMatrix,
    basis: BasisLabel,
}

impl Operator {
    pub fn new(mat: BicomplexMatrix, basis: BasisLabel) -> Self {
        Self { mat, basis }
    }

    pub fn identity(n: usize, basis: BasisLabel) -> Self {
        Self::new(BicomplexMatrix::identity(n), basis)
    }

    pub fn zero(n: usize, basis: BasisLabel) -> Self {
        Self::new(BicomplexMatrix::zeros(n), basis)
    }

    pub fn from_components(a1: &CMatrix, a2: &CMatrix, basis: BasisLabel) -> Self {
        Self::new(BicomplexMatrix::from_components(a1, a2), basis)
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn matrix(&self) -> &BicomplexMatrix {
        &self.mat
    }

    pub fn basis(&self) -> &BasisLabel {
        &self.basis
    }

    /// `P_k(A)`, the complex matrix acting on the `k`-th component.
    pub fn component(&self, k: usize) -> CMatrix {
        self.mat.component(k)
    }

    pub fn apply(&self, psi: &Ket) -> Result<Ket> {
        check_same_basis(&self.basis, psi.basis())?;
        Ok(Ket::new(
            self.mat.mul_vec(psi.coeffs())?,
            self.basis.clone(),
        ))
    }

    /// `A ∘ B`
    pub fn compose(&self, other: &Self) -> Result<Self> {
        check_same_basis(&self.basis, &other.basis)?;
        Ok(Self::new(self.mat.matmul(&other.mat)?, self.basis.clone()))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same_basis(&self.basis, &other.basis)?;
        check_dim(self.dim(), other.dim())?;
        Ok(Self::new(&self.mat + &other.mat, self.basis.clone()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Bicomplex::real(-1.0)))
    }

    pub fn scale(&self, s: Bicomplex) -> Self {
        Self::new(self.mat.scale(s), self.basis.clone())
    }

    pub fn max_diff(&self, other: &Self) -> f64 {
        self.mat.max_diff(&other.mat)
    }

    /// Whether one idempotent component of the operator vanishes.
    pub fn classify(&self, tol: &Tolerance) -> Classification {
        Classification::from_magnitudes(
            self.component(1).max_abs(),
            self.component(2).max_abs(),
            tol.eps_null,
        )
    }
}

/// `P_k(A)`
pub fn op_project(a: &Operator, k: usize) -> CMatrix {
    a.component(k)
}

/// Representation in the basis `|new_l⟩ = Σ_p L_pl |old_p⟩`: `L⁻¹ A L`.
pub fn conjugate_by_basis(
    a: &Operator,
    l: &BicomplexMatrix,
    new_basis: BasisLabel,
    tol: &Tolerance,
) -> Result<Operator> {
    check_dim(a.dim(), l.dim())?;
    let inv = l.inverse(tol)?;
    Ok(Operator::new(&(&inv.matrix * &a.mat) * l, new_basis))
}

/// The operator `A*` with `(ψ, Aφ) = (A*ψ, φ)`; componentwise
/// `A*_k = G_k⁻¹ A_k^H G_k`.
pub fn adjoint(spec: &ScalarProductSpec, a: &Operator) -> Result<Operator> {
    check_dim(spec.dim(), a.dim())?;
    let comp = |k: usize| {
        let ah_g = &a.component(k).adjoint() * spec.gram(k);
        let cols: Vec<Vec<Complex>> = (0..a.dim())
            .map(|j| spec.solve_gram(k, &ah_g.column(j)))
            .collect();
        CMatrix::from_columns(&cols)
    };
    Ok(Operator::from_components(
        &comp(1),
        &comp(2),
        a.basis.clone(),
    ))
}

/// `|φ⟩⟨ψ|`, acting as `χ ↦ (ψ, χ) φ`.
pub fn outer_product(spec: &ScalarProductSpec, phi: &Ket, psi: &Ket) -> Result<Operator> {
    check_same_basis(phi.basis(), psi.basis())?;
    check_dim(phi.dim(), psi.dim())?;
    check_dim(spec.dim(), phi.dim())?;
    let comp = |k: usize| {
        let f = phi.component(k);
        // row vector ψ_k^H G_k
        let row: Vec<Complex> = spec
            .gram(k)
            .mul_vec(&psi.component(k))
            .iter()
            .map(|z| z.conj())
            .collect();
        CMatrix::from_fn(phi.dim(), |i, j| f[i] * row[j])
    };
    Ok(Operator::from_components(
        &comp(1),
        &comp(2),
        phi.basis().clone(),
    ))
}

/// `max |A* - A|` over entries.
pub fn self_adjoint_residual(spec: &ScalarProductSpec, a: &Operator) -> Result<f64> {
    Ok(adjoint(spec, a)?.max_diff(a))
}

pub fn is_self_adjoint(spec: &ScalarProductSpec, a: &Operator, tol: &Tolerance) -> Result<bool> {
    let r = self_adjoint_residual(spec, a)?;
    Ok(r <= tol.eps_eq * a.mat.max_abs().max(1.0))
}

/// `max |U*U - I|` over entries.
pub fn unitarity_residual(spec: &ScalarProductSpec, u: &Operator) -> Result<f64> {
    let uu = adjoint(spec, u)?.compose(u)?;
    Ok(uu.max_diff(&Operator::identity(u.dim(), u.basis.clone())))
}

pub fn is_unitary(spec: &ScalarProductSpec, u: &Operator, tol: &Tolerance) -> Result<bool> {
    Ok(unitarity_residual(spec, u)? <= tol.eps_eq * u.mat.max_abs().max(1.0))
}

/// An eigenvalue with an eigenket outside the null cone.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: Bicomplex,
    pub ket: Ket,
}

/// Eigenvalues within this relative gap are treated as one cluster whose
/// eigenvectors are re-orthonormalized.
const DEGENERACY_GAP: f64 = 1e-8;

/// Orthonormal eigenvectors of one component `H_k`, self-adjoint for `G_k`.
/// Returns the Rayleigh quotients (complex, so realness can be checked) and
/// the eigenvectors, ascending by real part.
fn component_eigen(
    spec: &ScalarProductSpec,
    h: &CMatrix,
    k: usize,
) -> Result<(Vec<Complex>, Vec<Vec<Complex>>)> {
    let n = h.dim();
    let l = spec.cholesky(k);
    // C = L^H H L^{-H} is Hermitian when G H is
    let linv_h_cols: Vec<Vec<Complex>> = (0..n)
        .map(|j| {
            let mut e = vec![Complex::new(0.0, 0.0); n];
            e[j] = Complex::new(1.0, 0.0);
            l.solve_lower_adjoint(&e)
        })
        .collect();
    let linv_h = CMatrix::from_columns(&linv_h_cols);
    let c = &(&l.adjoint() * h) * &linv_h;
    let (vals, y) = c.hermitian_eigen()?;

    let g = spec.gram(k);
    let mut vecs: Vec<Vec<Complex>> = (0..n)
        .map(|j| l.solve_lower_adjoint(&y.column(j)))
        .collect();

    let scale = vals
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && vals[end] - vals[end - 1] < DEGENERACY_GAP * scale {
            end += 1;
        }
        if end - start > 1 {
            for a in start..end {
                for b in start..a {
                    let proj = gram_inner(g, &vecs[b], &vecs[a]);
                    let vb = vecs[b].clone();
                    for (x, y) in vecs[a].iter_mut().zip(&vb) {
                        *x -= proj * y;
                    }
                }
                let norm = gram_inner(g, &vecs[a], &vecs[a]).re.sqrt();
                for x in vecs[a].iter_mut() {
                    *x /= norm;
                }
            }
        }
        start = end;
    }

    let rayleigh = vecs
        .iter()
        .map(|v| gram_inner(g, v, &h.mul_vec(v)) / gram_inner(g, v, v))
        .collect();
    Ok((rayleigh, vecs))
}

/// Spectral decomposition of a self-adjoint operator: `n` eigenpairs whose
/// kets form an orthonormal basis. Component eigenvalues are sorted
/// ascending and paired index to index.
pub fn eigendecompose_self_adjoint(
    spec: &ScalarProductSpec,
    h: &Operator,
    tol: &Tolerance,
) -> Result<Vec<EigenPair>> {
    let residual = self_adjoint_residual(spec, h)?;
    if residual > tol.eps_eq * h.mat.max_abs().max(1.0) {
        return Err(Error::NotSelfAdjoint { residual });
    }
    let (l1, v1) = component_eigen(spec, &h.component(1), 1)?;
    let (l2, v2) = component_eigen(spec, &h.component(2), 2)?;
    Ok((0..h.dim())
        .map(|i| EigenPair {
            value: Bicomplex::from_components(l1[i], l2[i]),
            ket: Ket::from_components(&v1[i], &v2[i], h.basis.clone()),
        })
        .collect())
}

/// `true` when the two components have different degeneracy patterns, in
/// which case the index-to-index pairing is one convention among several.
pub fn pairing_is_ambiguous(pairs: &[EigenPair]) -> bool {
    let pattern = |k: usize| -> Vec<bool> {
        let vals: Vec<f64> = pairs.iter().map(|p| p.value.project(k).re).collect();
        let scale = vals
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()))
            .max(f64::MIN_POSITIVE);
        vals.windows(2)
            .map(|w| w[1] - w[0] < DEGENERACY_GAP * scale)
            .collect()
    };
    pattern(1) != pattern(2)
}

/// `Σ_l λ_l |φ_l⟩⟨φ_l|`
pub fn spectral_reconstruct(spec: &ScalarProductSpec, pairs: &[EigenPair]) -> Result<Operator> {
    let first = pairs.first().ok_or(Error::DimensionMismatch {
        expected: spec.dim(),
        found: 0,
    })?;
    let mut acc = Operator::zero(first.ket.dim(), first.ket.basis().clone());
    for p in pairs {
        acc = acc.add(&outer_product(spec, &p.ket, &p.ket)?.scale(p.value))?;
    }
    Ok(acc)
}

/// `max |Σ_l |u_l⟩⟨u_l| - I|`, zero for an orthonormal basis.
pub fn completeness_residual(spec: &ScalarProductSpec, kets: &[Ket]) -> Result<f64> {
    let first = kets.first().ok_or(Error::NotABasis)?;
    let mut acc = Operator::zero(first.dim(), first.basis().clone());
    for k in kets {
        acc = acc.add(&outer_product(spec, k, k)?)?;
    }
    Ok(acc.max_diff(&Operator::identity(first.dim(), first.basis().clone())))
}

/// Outcome of checking eigenket orthogonality.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalityReport {
    /// Largest `|(φ_l, φ_p)|` over pairs whose eigenvalue difference is invertible.
    pub max_constrained: f64,
    pub constrained_pairs: usize,
    /// Index pairs whose eigenvalue difference lies in the null cone (or is
    /// zero); orthogonality is not implied for these.
    pub unconstrained: Vec<(usize, usize)>,
}

impl OrthogonalityReport {
    pub fn passes(&self, limit: f64) -> bool {
        self.max_constrained <= limit
    }
}

pub fn eigenket_orthogonality_check(
    spec: &ScalarProductSpec,
    pairs: &[EigenPair],
    tol: &Tolerance,
) -> Result<OrthogonalityReport> {
    let mut report = OrthogonalityReport {
        max_constrained: 0.0,
        constrained_pairs: 0,
        unconstrained: Vec::new(),
    };
    for l in 0..pairs.len() {
        for p in l + 1..pairs.len() {
            let diff = pairs[l].value - pairs[p].value;
            if diff.classify(tol) == Classification::Invertible {
                let s = scalar_product(spec, &pairs[l].ket, &pairs[p].ket)?;
                report.max_constrained = report.max_constrained.max(s.euclid_norm());
                report.constrained_pairs += 1;
            } else {
                report.unconstrained.push((l, p));
            }
        }
    }
    Ok(report)
}

/// Weight of the anti-Hermitian part when folding a unitary into one
/// self-adjoint operator; irrational so distinct unit-circle eigenvalues stay
/// distinct.
const UNITARY_MIX: f64 = std::f64::consts::SQRT_2;

/// Eigenpairs of a unitary operator. The Hermitian combination
/// `(U + U*)/2 + c (U - U*)/(2 i1)` shares its eigenkets with `U`; each
/// eigenvalue is then read off as `(φ, Uφ)`.
pub fn eigendecompose_unitary(
    spec: &ScalarProductSpec,
    u: &Operator,
    tol: &Tolerance,
) -> Result<Vec<EigenPair>> {
    let residual = unitarity_residual(spec, u)?;
    if residual > tol.eps_eq * u.mat.max_abs().max(1.0) {
        return Err(Error::NotUnitary { residual });
    }
    let us = adjoint(spec, u)?;
    let re = u.add(&us)?.scale(Bicomplex::real(0.5));
    // 1 / (2 i1) = -i1 / 2
    let im = u
        .sub(&us)?
        .scale(Bicomplex::from_parts(0.0, -0.5, 0.0, 0.0));
    let k = re.add(&im.scale(Bicomplex::real(UNITARY_MIX)))?;
    // k is self-adjoint up to the unitarity residual
    let relaxed = Tolerance::new(tol.eps_null, (tol.eps_eq * 1e3).min(1e-6))?;
    let pairs = eigendecompose_self_adjoint(spec, &k, &relaxed)?;
    pairs
        .into_iter()
        .map(|p| {
            let value = scalar_product(spec, &p.ket, &u.apply(&p.ket)?)?;
            Ok(EigenPair { value, ket: p.ket })
        })
        .collect()
}

/// Largest `|A φ - λ φ|` over the pairs.
pub fn eigen_residual(a: &Operator, pairs: &[EigenPair]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for p in pairs {
        let lhs = a.apply(&p.ket)?;
        worst = worst.max(lhs.max_diff(&p.ket.scale(p.value)));
    }
    Ok(worst)
}

/// Steps allowed before a power series is declared divergent.
pub const SERIES_MAX_TERMS: usize = 2000;
/// Consecutive negligible terms required before a series is truncated.
const SERIES_QUIET_TERMS: usize = 4;

fn component_series(
    a: &CMatrix,
    coeff: impl Fn(usize) -> Complex,
    truncation: f64,
) -> Result<CMatrix> {
    let n = a.dim();
    let mut power = CMatrix::identity(n);
    let mut sum = CMatrix::zeros(n);
    let mut quiet = 0;
    for m in 0..SERIES_MAX_TERMS {
        if m > 0 {
            power = &power * a;
        }
        let term = power.scale(coeff(m));
        sum = &sum + &term;
        let (tn, sn) = (term.norm_1(), sum.norm_1());
        if !tn.is_finite() || !sn.is_finite() {
            return Err(Error::SeriesDivergence { terms: m + 1 });
        }
        if tn <= truncation * sn {
            quiet += 1;
            if quiet >= SERIES_QUIET_TERMS {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::SeriesDivergence {
        terms: SERIES_MAX_TERMS,
    })
}

/// `f(A) = Σ c_m A^m`, summed independently on each idempotent component:
/// `f(A) = e1 f₁(A₁) + e2 f₂(A₂)`. A component stops once its terms stay
/// below `truncation` times its partial sum.
pub fn op_function(
    a: &Operator,
    coeffs: impl Fn(usize) -> Bicomplex,
    truncation: f64,
) -> Result<Operator> {
    let f1 = component_series(&a.component(1), |m| coeffs(m).project(1), truncation)?;
    let f2 = component_series(&a.component(2), |m| coeffs(m).project(2), truncation)?;
    Ok(Operator::from_components(&f1, &f2, a.basis.clone()))
}

/// `exp(A) = e1 exp(A₁) + e2 exp(A₂)` by scaling and squaring.
pub fn op_exp(a: &Operator) -> Operator {
    Operator::from_components(
        &a.component(1).expm(),
        &a.component(2).expm(),
        a.basis.clone(),
    )
}

/// `exp(c H)` for self-adjoint `H` through its spectral decomposition:
/// `Σ exp(c λ_l) |φ_l⟩⟨φ_l|`.
pub fn op_exp_spectral(
    spec: &ScalarProductSpec,
    h: &Operator,
    c: Bicomplex,
    tol: &Tolerance,
) -> Result<Operator> {
    let pairs = eigendecompose_self_adjoint(spec, h, tol)?;
    let shifted: Vec<EigenPair> = pairs
        .into_iter()
        .map(|p| EigenPair {
            value: (c * p.value).exp(),
            ket: p.ket,
        })
        .collect();
    spectral_reconstruct(spec, &shifted)
}

/// Time data for `i1 ξ ħ dψ/dt = H ψ`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionConfig {
    pub hbar: f64,
    pub t0: f64,
    pub t1: f64,
    /// Number of sampled times between `t0` and `t1`.
    pub steps: usize,
    pub xi: Option<Bicomplex>,
}

impl EvolutionConfig {
    pub fn new(hbar: f64, t0: f64, t1: f64, steps: usize) -> Self {
        Self {
            hbar,
            t0,
            t1,
            steps,
            xi: None,
        }
    }

    pub fn with_xi(mut self, xi: Bicomplex) -> Self {
        self.xi = Some(xi);
        self
    }

    pub fn validate(&self, tol: &Tolerance) -> Result<()> {
        if !(self.hbar > 0.0 && self.hbar.is_finite()) {
            return Err(Error::InvalidXi(format!(
                "hbar = {} must be positive",
                self.hbar
            )));
        }
        if !(self.t0.is_finite() && self.t1.is_finite()) || self.steps == 0 {
            return Err(Error::InvalidXi(
                "t0, t1 must be finite and steps positive".into(),
            ));
        }
        if let Some(xi) = self.xi {
            if !xi.dagger().approx_eq(&xi, tol.eps_eq) {
                return Err(Error::InvalidXi(format!("{xi} is not invariant under †3")));
            }
            if xi.classify(tol) != Classification::Invertible {
                return Err(Error::InvalidXi(format!("{xi} is not invertible")));
            }
        }
        Ok(())
    }

    /// Sample times `t0 + (t1 - t0) i / (steps - 1)`, or just `t1` for one step.
    pub fn sample_times(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.t1];
        }
        let span = self.t1 - self.t0;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.t1
                } else {
                    self.t0 + span * (i as f64) / ((self.steps - 1) as f64)
                }
            })
            .collect()
    }
}

/// `H' = ξ⁻¹ H` when `ξ` is given, `H` otherwise.
pub fn effective_hamiltonian(
    cfg: &EvolutionConfig,
    h: &Operator,
    tol: &Tolerance,
) -> Result<Operator> {
    cfg.validate(tol)?;
    match cfg.xi {
        Some(xi) => Ok(h.scale(xi.inverse(tol)?)),
        None => Ok(h.clone()),
    }
}

/// `U(t, t0) = exp(-(i1/ħ)(t - t0) H)` for an already-folded Hamiltonian.
pub fn propagator(h: &Operator, hbar: f64, dt: f64) -> Operator {
    op_exp(&h.scale(Bicomplex::from_parts(0.0, -dt / hbar, 0.0, 0.0)))
}

/// The unitary `U(t1, t0)` for a time-independent self-adjoint Hamiltonian.
pub fn evolution_operator(
    spec: &ScalarProductSpec,
    cfg: &EvolutionConfig,
    h: &Operator,
    tol: &Tolerance,
) -> Result<Operator> {
    let hp = effective_hamiltonian(cfg, h, tol)?;
    let residual = self_adjoint_residual(spec, &hp)?;
    if residual > tol.eps_eq * hp.matrix().max_abs().max(1.0) {
        return Err(Error::NotSelfAdjoint { residual });
    }
    Ok(propagator(&hp, cfg.hbar, cfg.t1 - cfg.t0))
}

/// `ψ(t) = U(t, t0) ψ0` at each sample time. At `t = t0` the input is
/// returned unchanged.
pub fn evolve_samples(
    spec: &ScalarProductSpec,
    cfg: &EvolutionConfig,
    h: &Operator,
    psi0: &Ket,
    tol: &Tolerance,
) -> Result<Vec<(f64, Ket)>> {
    check_same_basis(h.basis(), psi0.basis())?;
    check_dim(h.dim(), psi0.dim())?;
    // validates ξ and self-adjointness once
    evolution_operator(spec, cfg, h, tol)?;
    let hp = effective_hamiltonian(cfg, h, tol)?;
    cfg.sample_times()
        .into_iter()
        .map(|t| {
            if t == cfg.t0 {
                Ok((t, psi0.clone()))
            } else {
                Ok((t, propagator(&hp, cfg.hbar, t - cfg.t0).apply(psi0)?))
            }
        })
        .collect()
}

/// Euclidean norm of the coefficient vector.
pub fn ket_norm(k: &Ket) -> f64 {
    k.coeffs()
        .iter()
        .map(|w| w.euclid_norm().powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Normwise residual `‖i1 ħ dψ/dt - H'ψ‖ / (‖H'‖_F ‖ψ‖)` at time `t`, with the
/// derivative taken by central differences of step `step`.
pub fn schrodinger_residual(
    cfg: &EvolutionConfig,
    h: &Operator,
    psi0: &Ket,
    t: f64,
    step: f64,
    tol: &Tolerance,
) -> Result<f64> {
    let hp = effective_hamiltonian(cfg, h, tol)?;
    let at = |s: f64| propagator(&hp, cfg.hbar, s - cfg.t0).apply(psi0);
    let plus = at(t + step)?;
    let minus = at(t - step)?;
    let now = at(t)?;
    let coef = Bicomplex::from_parts(0.0, cfg.hbar / (2.0 * step), 0.0, 0.0);
    let lhs = plus.checked_sub(&minus)?.scale(coef);
    let rhs = hp.apply(&now)?;
    let frob = hp
        .matrix()
        .entries()
        .iter()
        .map(|w| w.euclid_norm().powi(2))
        .sum::<f64>()
        .sqrt();
    let scale = (frob * ket_norm(&now)).max(f64::MIN_POSITIVE);
    Ok(ket_norm(&lhs.checked_sub(&rhs)?) / scale)
}

/// Guard used by callers that need an eigenket outside the null cone.
pub fn is_valid_eigenket(ket: &Ket, tol: &Tolerance) -> bool {
    ket_classify(ket, tol) == KetClass::Regular
}
