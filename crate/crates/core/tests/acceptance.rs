//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits non-zero if any criterion fails.
//!
//! Reference values come from oracles written here against the raw
//! `(z1, z2)` representation: schoolbook bicomplex multiplication, cofactor
//! determinants, and scalar products evaluated directly with the bicomplex
//! Gram matrix `e1 G1 + e2 G2`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use bicomplex::bct;
use bicomplex::hilbert::{gram_schmidt, mix_orthogonal_bases, riesz_representation};
use bicomplex::operators::{
    eigendecompose_self_adjoint, eigendecompose_unitary, evolution_operator, evolve_samples,
    op_exp, op_exp_spectral, EvolutionConfig,
};
use bicomplex::{
    sample, BasisLabel, Bicomplex, BicomplexMatrix, Complex, Error, Ket, Operator,
    ScalarProductSpec, Tolerance,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// ---- oracles on the (z1, z2) representation -------------------------------

const I: Complex = Complex::new(0.0, 1.0);

fn mul(a: Bicomplex, b: Bicomplex) -> Bicomplex {
    Bicomplex::new(a.z1 * b.z1 - a.z2 * b.z2, a.z1 * b.z2 + a.z2 * b.z1)
}

fn add(a: Bicomplex, b: Bicomplex) -> Bicomplex {
    Bicomplex::new(a.z1 + b.z1, a.z2 + b.z2)
}

fn sub(a: Bicomplex, b: Bicomplex) -> Bicomplex {
    Bicomplex::new(a.z1 - b.z1, a.z2 - b.z2)
}

fn dagger3(a: Bicomplex) -> Bicomplex {
    Bicomplex::new(a.z1.conj(), -a.z2.conj())
}

fn norm(a: Bicomplex) -> f64 {
    (a.z1.norm_sqr() + a.z2.norm_sqr()).sqrt()
}

fn proj(a: Bicomplex, k: usize) -> Complex {
    if k == 1 {
        a.z1 - a.z2 * I
    } else {
        a.z1 + a.z2 * I
    }
}

/// `e1 c1 + e2 c2` in `(z1, z2)` form.
fn combine(c1: Complex, c2: Complex) -> Bicomplex {
    Bicomplex::new((c1 + c2) * 0.5, (c1 - c2) * I * 0.5)
}

fn cofactor_det(m: &[Vec<Bicomplex>]) -> Bicomplex {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    let mut acc = Bicomplex::ZERO;
    for j in 0..n {
        let minor: Vec<Vec<Bicomplex>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, w)| *w)
                    .collect()
            })
            .collect();
        let term = mul(m[0][j], cofactor_det(&minor));
        acc = if j % 2 == 0 {
            add(acc, term)
        } else {
            sub(acc, term)
        };
    }
    acc
}

fn rows(m: &BicomplexMatrix) -> Vec<Vec<Bicomplex>> {
    m.rows().map(|r| r.to_vec()).collect()
}

fn matmul(a: &[Vec<Bicomplex>], b: &[Vec<Bicomplex>]) -> Vec<Vec<Bicomplex>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(Bicomplex::ZERO, |s, k| add(s, mul(a[i][k], b[k][j]))))
                .collect()
        })
        .collect()
}

fn dist_identity(a: &[Vec<Bicomplex>]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, row) in a.iter().enumerate() {
        for (j, w) in row.iter().enumerate() {
            let e = if i == j { sub(*w, Bicomplex::ONE) } else { *w };
            worst = worst.max(norm(e));
        }
    }
    worst
}

fn max_dist(a: &[Vec<Bicomplex>], b: &[Vec<Bicomplex>]) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(x, y)| x.iter().zip(y).map(|(p, q)| norm(sub(*p, *q))))
        .fold(0.0, f64::max)
}

fn max_abs(a: &[Vec<Bicomplex>]) -> f64 {
    a.iter().flatten().map(|w| norm(*w)).fold(0.0, f64::max)
}

/// `e1 G1 + e2 G2` entrywise.
fn bicomplex_gram(spec: &ScalarProductSpec) -> Vec<Vec<Bicomplex>> {
    let n = spec.dim();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| combine(spec.gram(1)[(i, j)], spec.gram(2)[(i, j)]))
                .collect()
        })
        .collect()
}

/// `Σ_ij ψ_i^{†3} G_ij φ_j`
fn product(g: &[Vec<Bicomplex>], psi: &[Bicomplex], phi: &[Bicomplex]) -> Bicomplex {
    let mut acc = Bicomplex::ZERO;
    for (i, row) in g.iter().enumerate() {
        for (j, gij) in row.iter().enumerate() {
            acc = add(acc, mul(mul(dagger3(psi[i]), *gij), phi[j]));
        }
    }
    acc
}

/// Oracle adjoint for the standard product: `(A*)_ij = (A_ji)^{†3}`.
fn adjoint_std(a: &[Vec<Bicomplex>]) -> Vec<Vec<Bicomplex>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| dagger3(a[j][i])).collect())
        .collect()
}

// ---- random inputs ---------------------------------------------------------

fn random_spec(rng: &mut ChaCha8Rng, n: usize) -> ScalarProductSpec {
    ScalarProductSpec::new(
        sample::positive_definite(rng, n),
        sample::positive_definite(rng, n),
        &Tolerance::default(),
    )
    .expect("positive definite")
}

fn std_label() -> BasisLabel {
    BasisLabel::default()
}

fn random_self_adjoint(rng: &mut ChaCha8Rng, n: usize) -> Operator {
    Operator::from_components(
        &sample::hermitian(rng, n),
        &sample::hermitian(rng, n),
        std_label(),
    )
}

/// Self-adjoint for `spec`: `H_k = G_k⁻¹ S_k` with Hermitian `S_k`.
fn self_adjoint_for(rng: &mut ChaCha8Rng, spec: &ScalarProductSpec) -> Operator {
    let n = spec.dim();
    let h1 = &spec.gram_inverse(1) * &sample::hermitian(rng, n);
    let h2 = &spec.gram_inverse(2) * &sample::hermitian(rng, n);
    Operator::from_components(&h1, &h2, std_label())
}

// ---- reporting -------------------------------------------------------------

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn fmt(x: f64) -> String {
    format!("{x:.3e}")
}

// ---- criteria --------------------------------------------------------------

fn idempotent_homomorphism() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let start = Instant::now();
    let (mut worst, mut componentwise) = (0.0f64, 0.0f64);
    for _ in 0..100_000 {
        let s = sample::bicomplex(&mut rng);
        let t = sample::bicomplex(&mut rng);
        let st = s * t;
        let scale = (norm(s) * norm(t)).max(f64::MIN_POSITIVE);
        for k in 1..=2 {
            let expect = proj(s, k) * proj(t, k);
            let err = (st.project(k) - expect).norm();
            worst = worst.max(err / scale);
            componentwise = componentwise.max(err / expect.norm().max(f64::MIN_POSITIVE));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        worst <= 1e-12 && secs < 1.0,
        format!(
            "100000 pairs, max relative residual {} (limit 1e-12; componentwise {}), {secs:.3} s (limit 1 s)",
            fmt(worst),
            fmt(componentwise)
        ),
    )
}

fn norm_laws() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let mut violations = 0usize;
    for _ in 0..100_000 {
        // spread magnitudes over several decades
        let s = sample::bicomplex(&mut rng).scale(10f64.powf(rng.gen_range(-3.0..3.0)));
        let t = sample::bicomplex(&mut rng).scale(10f64.powf(rng.gen_range(-3.0..3.0)));
        let (ns, nt) = (s.euclid_norm(), t.euclid_norm());
        if (s + t).euclid_norm() > (ns + nt) * (1.0 + 1e-12) {
            violations += 1;
        }
        if (s * t).euclid_norm() > std::f64::consts::SQRT_2 * ns * nt * (1.0 + 1e-12) {
            violations += 1;
        }
        // the library norm must agree with the oracle
        if (ns - norm(s)).abs() > 1e-15 * norm(s) {
            violations += 1;
        }
    }
    let e1 = Bicomplex::e1();
    let witness =
        ((e1 * e1).euclid_norm() - std::f64::consts::SQRT_2 * e1.euclid_norm().powi(2)).abs();
    outcome(
        violations == 0 && witness <= 1e-15,
        format!(
            "100000 pairs, {violations} violations beyond 1e-12; e1 equality witness gap {}",
            fmt(witness)
        ),
    )
}

fn determinant_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let mut worst: f64 = 0.0;
    for trial in 0..500 {
        let n = 2 + trial % 3;
        let a = sample::bicomplex_matrix(&mut rng, n);
        let oracle = cofactor_det(&rows(&a));
        let rel = norm(sub(a.det(), oracle)) / norm(oracle).max(f64::MIN_POSITIVE);
        worst = worst.max(rel);
    }
    outcome(
        worst <= 1e-9,
        format!(
            "500 matrices n in {{2,3,4}}, max relative residual {} (limit 1e-9)",
            fmt(worst)
        ),
    )
}

fn inverse_checks() -> Outcome {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let (mut right, mut left_right) = (0.0f64, 0.0f64);
    for trial in 0..200 {
        let n = 1 + trial % 8;
        let a = sample::well_conditioned(&mut rng, n);
        let inv = a.inverse(&tol).expect("well conditioned").matrix;
        let (ra, ri) = (rows(&a), rows(&inv));
        right = right.max(dist_identity(&matmul(&ra, &ri)));
        // a left inverse built independently from the transpose
        let left = a
            .transpose()
            .inverse(&tol)
            .expect("transpose")
            .matrix
            .transpose();
        left_right = left_right.max(dist_identity(&matmul(&rows(&left), &ra)));
        left_right = left_right.max(max_dist(&rows(&left), &ri));
    }

    let mut missed = 0usize;
    for trial in 0..200 {
        let n = 2 + trial % 7;
        let good = sample::shifted_matrix(&mut rng, n, n as f64);
        let mut bad = sample::complex_matrix(&mut rng, n, 1.0);
        // last column a combination of the others
        let (c0, c1) = (
            sample::complex(&mut rng, 1.0),
            sample::complex(&mut rng, 1.0),
        );
        for i in 0..n {
            let second = if n > 2 {
                c1 * bad[(i, 1)]
            } else {
                Complex::new(0.0, 0.0)
            };
            bad[(i, n - 1)] = c0 * bad[(i, 0)] + second;
        }
        let (a1, a2) = if trial % 2 == 0 {
            (&bad, &good)
        } else {
            (&good, &bad)
        };
        let a = BicomplexMatrix::from_components(a1, a2);
        let singular = a.is_singular(&tol);
        let refused = matches!(a.inverse(&tol), Err(Error::SingularMatrix(_)));
        if !(singular && refused) {
            missed += 1;
        }
    }
    outcome(
        right <= 1e-10 && left_right <= 1e-10 && missed == 0,
        format!(
            "200 matrices n <= 8: |A A^-1 - I| {}, left vs right {} (limit 1e-10); singular detection missed {missed}/200",
            fmt(right),
            fmt(left_right)
        ),
    )
}

fn orthonormality(g: &[Vec<Bicomplex>], kets: &[Ket]) -> (f64, f64) {
    let (mut cross, mut unit) = (0.0f64, 0.0f64);
    for (l, a) in kets.iter().enumerate() {
        for (p, b) in kets.iter().enumerate() {
            let s = product(g, a.coeffs(), b.coeffs());
            if l == p {
                unit = unit.max(norm(sub(s, Bicomplex::ONE)));
            } else {
                cross = cross.max(norm(s));
            }
        }
    }
    (cross, unit)
}

fn is_null_cone(k: &Ket) -> bool {
    let n1: f64 = k
        .coeffs()
        .iter()
        .map(|w| proj(*w, 1).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let n2: f64 = k
        .coeffs()
        .iter()
        .map(|w| proj(*w, 2).norm_sqr())
        .sum::<f64>()
        .sqrt();
    n1.min(n2) <= 1e-12 * n1.max(n2)
}

fn gram_schmidt_checks() -> Outcome {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let (mut cross, mut unit, mut nc) = (0.0f64, 0.0f64, 0usize);
    for trial in 0..200 {
        let n = 1 + trial % 8;
        let spec = random_spec(&mut rng, n);
        let g = bicomplex_gram(&spec);
        let m = sample::bicomplex_matrix(&mut rng, n);
        let kets: Vec<Ket> = (0..n).map(|j| Ket::new(m.column(j), std_label())).collect();
        let out = gram_schmidt(&spec, &kets, &tol).expect("random basis");
        let (c, u) = orthonormality(&g, &out);
        cross = cross.max(c);
        unit = unit.max(u);
        nc += out.iter().filter(|k| is_null_cone(k)).count();
    }

    let spec = random_spec(&mut rng, 3);
    let g = bicomplex_gram(&spec);
    let kets: Vec<Ket> = (0..3)
        .map(|_| Ket::new(sample::bicomplex_vec(&mut rng, 3), std_label()))
        .collect();
    let base = gram_schmidt(&spec, &kets, &tol).expect("random basis");
    let perms = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let (mut mixed_cross, mut mixed_ok) = (0.0f64, 0usize);
    for p in perms {
        if let Ok(mixed) = mix_orthogonal_bases(&spec, &base, &p, &tol) {
            let (c, u) = orthonormality(&g, &mixed);
            mixed_cross = mixed_cross.max(c).max(u);
            mixed_ok += 1;
        }
    }
    outcome(
        cross <= 1e-10 && unit <= 1e-10 && nc == 0 && mixed_ok == 6 && mixed_cross <= 1e-10,
        format!(
            "200 bases n <= 8: cross {}, self-product {} (limit 1e-10), null-cone outputs {nc}; mixed bases {mixed_ok}/6 orthonormal to {}",
            fmt(cross),
            fmt(unit),
            fmt(mixed_cross)
        ),
    )
}

fn riesz_checks() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    let mut worst: f64 = 0.0;
    for trial in 0..200 {
        let n = 1 + trial % 8;
        let spec = random_spec(&mut rng, n);
        let g = bicomplex_gram(&spec);
        let f = sample::bicomplex_vec(&mut rng, n);
        let psi = riesz_representation(&spec, &f, std_label()).expect("representation");
        // f(φ) = Σ f_l φ_l must equal (ψ, φ) for every φ
        for _ in 0..4 {
            let phi = sample::bicomplex_vec(&mut rng, n);
            let direct = f
                .iter()
                .zip(&phi)
                .fold(Bicomplex::ZERO, |s, (a, b)| add(s, mul(*a, *b)));
            let via = product(&g, psi.coeffs(), &phi);
            let scale = f.iter().map(|w| norm(*w)).sum::<f64>().max(1.0);
            worst = worst.max(norm(sub(direct, via)) / scale);
        }
    }
    outcome(
        worst <= 1e-10,
        format!(
            "200 functionals, max reconstruction residual {} (limit 1e-10)",
            fmt(worst)
        ),
    )
}

fn spectral_checks() -> Outcome {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let (mut recon, mut imag, mut ortho) = (0.0f64, 0.0f64, 0.0f64);
    let mut constrained = 0usize;
    for trial in 0..200 {
        let n = 1 + trial % 8;
        let h = random_self_adjoint(&mut rng, n);
        let pairs = eigendecompose_self_adjoint(&ScalarProductSpec::identity(n), &h, &tol)
            .expect("self-adjoint");
        let mut sum = vec![vec![Bicomplex::ZERO; n]; n];
        for p in &pairs {
            let v = p.ket.coeffs();
            for i in 0..n {
                for j in 0..n {
                    sum[i][j] = add(sum[i][j], mul(p.value, mul(v[i], dagger3(v[j]))));
                }
            }
            imag = imag
                .max(proj(p.value, 1).im.abs())
                .max(proj(p.value, 2).im.abs());
        }
        recon = recon.max(max_dist(&sum, &rows(h.matrix())));
        let g = bicomplex_gram(&ScalarProductSpec::identity(n));
        for l in 0..n {
            for q in l + 1..n {
                let d = sub(pairs[l].value, pairs[q].value);
                let (d1, d2) = (proj(d, 1).norm(), proj(d, 2).norm());
                if d1.min(d2) > 1e-12 * d1.max(d2) {
                    constrained += 1;
                    ortho = ortho.max(norm(product(
                        &g,
                        pairs[l].ket.coeffs(),
                        pairs[q].ket.coeffs(),
                    )));
                }
            }
        }
    }
    outcome(
        recon <= 1e-9 && imag <= 1e-10 && ortho <= 1e-10,
        format!(
            "200 operators n <= 8: reconstruction {} (limit 1e-9), eigenvalue imaginary parts {} (limit 1e-10), orthogonality {} over {constrained} pairs (limit 1e-10)",
            fmt(recon),
            fmt(imag),
            fmt(ortho)
        ),
    )
}

fn exponential_checks() -> Outcome {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    let (mut unitarity, mut agree) = (0.0f64, 0.0f64);
    for trial in 0..100 {
        let n = 1 + trial % 8;
        let h = random_self_adjoint(&mut rng, n);
        let u = rows(op_exp(&h.scale(Bicomplex::i1())).matrix());
        unitarity = unitarity.max(dist_identity(&matmul(&adjoint_std(&u), &u)));
        let spec = ScalarProductSpec::identity(n);
        for c in [Bicomplex::ONE, Bicomplex::i1()] {
            let direct = op_exp(&h.scale(c));
            let spectral = op_exp_spectral(&spec, &h, c, &tol).expect("self-adjoint");
            agree = agree.max(spectral.max_diff(&direct) / direct.matrix().max_abs().max(1.0));
        }
    }
    let (t, step) = (0.3, 1e-5);
    let mut deriv: f64 = 0.0;
    for trial in 0..100 {
        let n = 1 + trial % 8;
        let a = Operator::new(sample::bicomplex_matrix(&mut rng, n), std_label());
        let at = |s: f64| rows(op_exp(&a.scale(Bicomplex::real(s))).matrix());
        let (plus, minus) = (at(t + step), at(t - step));
        let fd: Vec<Vec<Bicomplex>> = plus
            .iter()
            .zip(&minus)
            .map(|(p, m)| {
                p.iter()
                    .zip(m)
                    .map(|(x, y)| sub(*x, *y).scale(0.5 / step))
                    .collect()
            })
            .collect();
        let exact = matmul(&rows(a.matrix()), &at(t));
        deriv = deriv.max(max_dist(&fd, &exact) / max_abs(&exact));
    }
    outcome(
        unitarity <= 1e-9 && deriv <= 1e-6 && agree <= 1e-9,
        format!(
            "100 operators: |U*U - I| {} (limit 1e-9); d/dt exp(tA) relative residual {} (limit 1e-6); spectral vs squaring {} (limit 1e-9)",
            fmt(unitarity),
            fmt(deriv),
            fmt(agree)
        ),
    )
}

fn evolution_checks() -> Outcome {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let (mut drift, mut semigroup, mut unit_eig, mut folded) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for trial in 0..20 {
        let n = 1 + trial % 6;
        let spec = if trial % 2 == 0 {
            ScalarProductSpec::identity(n)
        } else {
            random_spec(&mut rng, n)
        };
        let g = bicomplex_gram(&spec);
        let h = self_adjoint_for(&mut rng, &spec);
        let psi0 = Ket::new(sample::bicomplex_vec(&mut rng, n), std_label());
        let n0 = product(&g, psi0.coeffs(), psi0.coeffs());
        let cfg = EvolutionConfig::new(1.0, 0.0, 10.0, 100);
        for (_, psi) in evolve_samples(&spec, &cfg, &h, &psi0, &tol).expect("evolution") {
            let nt = product(&g, psi.coeffs(), psi.coeffs());
            drift = drift.max(norm(sub(nt, n0)) / norm(n0));
        }

        let (t0, t1, t2) = (0.2, 1.1, 2.7);
        let u = |a: f64, b: f64| {
            evolution_operator(&spec, &EvolutionConfig::new(0.7, a, b, 1), &h, &tol)
                .expect("evolution")
        };
        let composed = u(t1, t2).compose(&u(t0, t1)).expect("same basis");
        semigroup = semigroup.max(composed.max_diff(&u(t0, t2)));

        for p in eigendecompose_unitary(&spec, &u(t0, t2), &tol).expect("unitary") {
            unit_eig = unit_eig.max(norm(sub(mul(dagger3(p.value), p.value), Bicomplex::ONE)));
        }

        let xi = sample::hyperbolic(&mut rng, 0.5, 2.0);
        let with_xi = EvolutionConfig::new(1.0, 0.0, 3.0, 1).with_xi(xi);
        let via_xi = evolution_operator(&spec, &with_xi, &h, &tol).expect("valid xi");
        // H' = ξ⁻¹ H built from the idempotent components of ξ
        let h1 = h.component(1).scale(Complex::new(1.0, 0.0) / proj(xi, 1));
        let h2 = h.component(2).scale(Complex::new(1.0, 0.0) / proj(xi, 2));
        let hp = Operator::from_components(&h1, &h2, std_label());
        let direct = evolution_operator(&spec, &EvolutionConfig::new(1.0, 0.0, 3.0, 1), &hp, &tol)
            .expect("direct");
        folded = folded.max(via_xi.max_diff(&direct));
    }
    outcome(
        drift <= 1e-9 && semigroup <= 1e-9 && unit_eig <= 1e-9 && folded <= 1e-10,
        format!(
            "20 systems x 100 times: norm drift {} (limit 1e-9), semigroup {} (limit 1e-9), |l^t3 l - 1| {} (limit 1e-9), xi folding {} (limit 1e-10)",
            fmt(drift),
            fmt(semigroup),
            fmt(unit_eig),
            fmt(folded)
        ),
    )
}

fn bct_files(dir: &Path) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(dir)
        .expect("corpus directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "bct"))
        .collect();
    v.sort();
    v
}

fn run_check(path: &Path) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_bct"))
        .arg("check")
        .arg(path)
        .output()
        .expect("run bct");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

fn golden_corpus() -> Outcome {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests");
    let golden = bct_files(&root.join("golden"));
    let counter = bct_files(&root.join("counterexamples"));
    let mut kinds = std::collections::BTreeSet::new();
    let mut round_trip_failures = Vec::new();
    for p in golden.iter().chain(&counter) {
        let text = std::fs::read_to_string(p).expect("readable");
        match bct::parse(&text) {
            Ok(doc) => {
                kinds.insert(doc.kind().as_str());
                if bct::print(&doc) != text {
                    round_trip_failures.push(p.file_name().unwrap().to_string_lossy().into_owned());
                }
            }
            Err(_) => {
                round_trip_failures.push(p.file_name().unwrap().to_string_lossy().into_owned())
            }
        }
    }
    let valid_failures: Vec<String> = golden
        .iter()
        .filter(|p| {
            let (code, out) = run_check(p);
            !(code == 0 && out.ends_with("verdict\tpass\n"))
        })
        .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
        .collect();
    let counter_passes: Vec<String> = counter
        .iter()
        .filter(|p| {
            let (code, out) = run_check(p);
            !(code != 0 && out.ends_with("verdict\tfail\n"))
        })
        .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
        .collect();
    let has_pivot = counter.iter().any(|p| {
        let (_, out) = run_check(p);
        out.contains("NullConePivot")
    });
    let has_non_sa = counter.iter().any(|p| {
        let (_, out) = run_check(p);
        out.contains("residual\tself-adjoint\t") && out.contains("\tfail\n")
    });
    outcome(
        golden.len() >= 12
            && kinds.len() == 5
            && round_trip_failures.is_empty()
            && valid_failures.is_empty()
            && counter_passes.is_empty()
            && has_pivot
            && has_non_sa,
        format!(
            "{} valid + {} counterexample files, {} kinds; round-trip mismatches {:?}; check failing on valid {:?}; counterexamples not failing {:?}",
            golden.len(),
            counter.len(),
            kinds.len(),
            round_trip_failures,
            valid_failures,
            counter_passes
        ),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("idempotent ring homomorphism", idempotent_homomorphism),
        ("norm laws", norm_laws),
        ("determinant oracle", determinant_oracle),
        ("inverse and singular detection", inverse_checks),
        ("gram-schmidt and mixed bases", gram_schmidt_checks),
        ("riesz representation", riesz_checks),
        ("spectral theorem", spectral_checks),
        ("exponential and unitarity", exponential_checks),
        ("evolution", evolution_checks),
        ("cli golden files", golden_corpus),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        let tag = if result.pass { "PASS" } else { "FAIL" };
        if !result.pass {
            failed += 1;
        }
        println!("criterion {:>2} {tag} {name}: {}", i + 1, result.detail);
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
