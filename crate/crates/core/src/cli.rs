//! The `bct` command-line tool.
//!
//! Every subcommand reads `.bct` files, recomputes the residuals that define
//! its result and prints a [`Report`]. Exit codes: 0 when every residual is
//! within tolerance, 1 for unreadable or malformed input, 2 when the input
//! violates a mathematical precondition, 3 when a residual check fails.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bct::{self, BctDocument, Kind, Payload};
use crate::error::{Error, Result};
use crate::hilbert::{
    gram_schmidt, hyperbolic_norm, ket_classify, kets_to_matrix, mix_orthogonal_bases, normalize,
    orthonormality_residuals, riesz_representation, scalar_product, BasisLabel, Ket, KetClass,
    ScalarProductSpec,
};
use crate::matrix::BicomplexMatrix;
use crate::operators::{
    adjoint, eigen_residual, eigendecompose_self_adjoint, eigendecompose_unitary,
    eigenket_orthogonality_check, evolution_operator, evolve_samples, ket_norm, op_exp,
    op_exp_spectral, pairing_is_ambiguous, schrodinger_residual, self_adjoint_residual,
    spectral_reconstruct, unitarity_residual, EigenPair, EvolutionConfig, Operator,
};
use crate::report::{Report, Verdict};
use crate::sample;
use crate::scalar::{Bicomplex, Classification, Tolerance};
use crate::text::{format_atom, format_complex_atom, format_real, parse_atom};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_RESIDUAL: i32 = 3;

/// Seed for the random probes used by `check`.
const CHECK_SEED: u64 = 0x5eed;

const TOL_ROUND_TRIP: f64 = 1e-14;
const TOL_ALGEBRA: f64 = 1e-12;
const TOL_DET: f64 = 1e-10;
const TOL_ORTHO: f64 = 1e-10;
const TOL_SPECTRAL: f64 = 1e-9;
const TOL_HYPERBOLIC: f64 = 1e-10;
const TOL_NORM_CONSERVATION: f64 = 1e-9;
const TOL_DERIVATIVE: f64 = 1e-6;
/// Central-difference step, in units of the inverse frequency `ħ/‖H‖`.
const DERIVATIVE_STEP: f64 = 1e-4;

#[derive(Debug, Parser)]
#[command(
    name = "bct",
    version,
    about = "Bicomplex linear algebra and quantum evolution on .bct files"
)]
pub struct Cli {
    /// Relative threshold below which an idempotent component counts as zero.
    #[arg(long, global = true, default_value_t = 1e-12)]
    pub eps_null: f64,
    /// Relative tolerance for equality tests.
    #[arg(long, global = true, default_value_t = 1e-12)]
    pub eps_eq: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Summarize a document.
    Info { file: PathBuf },
    /// Idempotent components of a scalar, ket or matrix.
    Idempotent { file: PathBuf },
    /// Determinant and its null-cone classification.
    Det { file: PathBuf },
    /// Inverse of a matrix.
    Inv { file: PathBuf },
    /// Orthonormalize the columns of a matrix.
    GramSchmidt {
        file: PathBuf,
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Eigenvalues and eigenkets of a self-adjoint operator.
    Spectral {
        file: PathBuf,
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Matrix exponential.
    Exp {
        file: PathBuf,
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Time evolution of a state under a Hamiltonian.
    Evolve {
        #[arg(long)]
        hamiltonian: PathBuf,
        #[arg(long)]
        state: PathBuf,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        hbar: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        t0: f64,
        #[arg(long, allow_hyphen_values = true)]
        t1: f64,
        #[arg(long, default_value_t = 2)]
        samples: usize,
        /// Hyperbolic scale factor as an atom, e.g. "(1 0 0 0.5)".
        #[arg(long, allow_hyphen_values = true)]
        xi: Option<String>,
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Run every applicable invariant check on a document.
    Check {
        file: PathBuf,
        #[arg(long)]
        spec: Option<PathBuf>,
    },
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_PASS
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_INPUT
                }
            };
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let _ = write!(out, "{}", report.render());
            match report.verdict() {
                Verdict::Pass => EXIT_PASS,
                Verdict::Fail => EXIT_RESIDUAL,
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_input_error() {
                EXIT_INPUT
            } else {
                EXIT_PRECONDITION
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Report> {
    let tol = Tolerance::new(cli.eps_null, cli.eps_eq)?;
    match &cli.command {
        Command::Info { file } => info(&load(file)?, &tol),
        Command::Idempotent { file } => idempotent(&load(file)?),
        Command::Det { file } => det(&load(file)?, &tol),
        Command::Inv { file } => inv(&load(file)?, &tol),
        Command::GramSchmidt { file, spec } => {
            let doc = load(file)?;
            let spec = load_spec(spec.as_deref(), doc.dim, &tol)?;
            orthonormalize(&doc, &spec, &tol)
        }
        Command::Spectral { file, spec } => {
            let doc = load(file)?;
            let spec = load_spec(spec.as_deref(), doc.dim, &tol)?;
            let h = doc.as_operator()?;
            let mut r = Report::new("spectral");
            spectral_suite(&mut r, &spec, &h, &tol, true)?;
            Ok(r)
        }
        Command::Exp { file, spec } => {
            let doc = load(file)?;
            let spec = load_spec(spec.as_deref(), doc.dim, &tol)?;
            exp(&doc, &spec, &tol)
        }
        Command::Evolve {
            hamiltonian,
            state,
            hbar,
            t0,
            t1,
            samples,
            xi,
            spec,
        } => {
            let h = load(hamiltonian)?.as_operator()?;
            let psi = load(state)?.as_ket()?;
            let spec = load_spec(spec.as_deref(), h.dim(), &tol)?;
            let mut cfg = EvolutionConfig::new(*hbar, *t0, *t1, *samples);
            if let Some(x) = xi {
                cfg = cfg.with_xi(parse_atom(x).map_err(|m| Error::Parse {
                    line: 0,
                    column: 0,
                    message: format!("--xi: {m}"),
                })?);
            }
            evolve(&spec, &cfg, &h, &psi, &tol)
        }
        Command::Check { file, spec } => {
            let doc = load(file)?;
            let spec = load_spec(spec.as_deref(), doc.dim, &tol)?;
            check(&doc, &spec, &tol)
        }
    }
}

fn load(path: &Path) -> Result<BctDocument> {
    bct::read_file(path)
}

fn load_spec(path: Option<&Path>, n: usize, tol: &Tolerance) -> Result<ScalarProductSpec> {
    let Some(p) = path else {
        return Ok(ScalarProductSpec::identity(n));
    };
    let doc = load(p)?;
    if doc.kind() != Kind::Spec {
        return Err(Error::KindMismatch {
            expected: "spec".into(),
            found: doc.kind().as_str().into(),
        });
    }
    if doc.dim != n {
        return Err(Error::DimMismatch(format!(
            "spec has dim {}, input has dim {n}",
            doc.dim
        )));
    }
    doc.as_spec(tol)
}

fn atoms(ws: &[Bicomplex]) -> String {
    ws.iter().map(format_atom).collect::<Vec<_>>().join(" ")
}

fn complex_atoms(zs: &[crate::scalar::Complex]) -> String {
    zs.iter()
        .map(format_complex_atom)
        .collect::<Vec<_>>()
        .join(" ")
}

fn info(doc: &BctDocument, tol: &Tolerance) -> Result<Report> {
    let mut r = Report::new("info");
    r.line(&["kind", doc.kind().as_str()]);
    r.line(&["dim", &doc.dim.to_string()]);
    let basis = doc
        .basis
        .as_ref()
        .map_or("-".to_string(), |b| b.to_string());
    r.line(&["basis", &basis]);
    match &doc.payload {
        Payload::Scalar(w) => {
            r.line(&["class", w.classify(tol).as_str()]);
            r.line(&["euclid-norm", &format_real(w.euclid_norm())]);
            r.line(&[
                "hyperbolic",
                if w.is_hyperbolic(tol.eps_eq) {
                    "yes"
                } else {
                    "no"
                },
            ]);
        }
        Payload::Ket(_) => {
            r.line(&["class", ket_classify(&doc.as_ket()?, tol).as_str()]);
        }
        Payload::Matrix(m) | Payload::Operator(m) => {
            let d = m.det();
            r.line(&["det", &format_atom(&d), d.classify(tol).as_str()]);
        }
        Payload::Spec(g1, g2) => {
            r.line(&[
                "hermitian-residual",
                &format_real(g1.hermitian_residual()),
                &format_real(g2.hermitian_residual()),
            ]);
            let spec = doc.as_spec(tol)?;
            r.line(&[
                "closed-under-v",
                if spec.is_closed_under_v(tol) {
                    "yes"
                } else {
                    "no"
                },
            ]);
        }
    }
    Ok(r)
}

fn idempotent(doc: &BctDocument) -> Result<Report> {
    let mut r = Report::new("idempotent");
    match &doc.payload {
        Payload::Scalar(w) => {
            let f = w.to_idempotent();
            r.line(&["e1", &format_complex_atom(&f.c1)]);
            r.line(&["e2", &format_complex_atom(&f.c2)]);
            let back = Bicomplex::from_idempotent(f);
            r.residual(
                "reconstruction",
                (back - *w).euclid_norm(),
                TOL_ROUND_TRIP * w.euclid_norm().max(1.0),
            );
        }
        Payload::Ket(_) => {
            let psi = doc.as_ket()?;
            let (v1, v2) = (psi.component(1), psi.component(2));
            r.line(&["e1", &complex_atoms(&v1)]);
            r.line(&["e2", &complex_atoms(&v2)]);
            let back = Ket::from_components(&v1, &v2, psi.basis().clone());
            let scale = ket_norm(&psi).max(1.0);
            r.residual(
                "reconstruction",
                back.max_diff(&psi),
                TOL_ROUND_TRIP * scale,
            );
        }
        Payload::Matrix(m) | Payload::Operator(m) => {
            let (a1, a2) = m.components();
            for (name, a) in [("e1", &a1), ("e2", &a2)] {
                for row in a.as_slice().chunks(a.dim()) {
                    r.line(&[name, &complex_atoms(row)]);
                }
            }
            let back = BicomplexMatrix::from_components(&a1, &a2);
            r.residual(
                "reconstruction",
                back.max_diff(m),
                TOL_ROUND_TRIP * m.max_abs().max(1.0),
            );
        }
        Payload::Spec(..) => {
            return Err(Error::KindMismatch {
                expected: "scalar, ket, matrix or operator".into(),
                found: "spec".into(),
            })
        }
    }
    Ok(r)
}

fn det_residuals(r: &mut Report, m: &BicomplexMatrix, tol: &Tolerance) -> Bicomplex {
    let d = m.det();
    r.line(&["det", &format_atom(&d), d.classify(tol).as_str()]);
    let dt = m.transpose().det();
    r.residual(
        "det-transpose",
        (d - dt).euclid_norm(),
        TOL_DET * d.euclid_norm().max(1.0),
    );
    d
}

fn det(doc: &BctDocument, tol: &Tolerance) -> Result<Report> {
    let m = doc.as_matrix()?;
    let mut r = Report::new("det");
    det_residuals(&mut r, &m, tol);
    Ok(r)
}

/// Inverse residual allowance for 1-norm condition number `cond`.
fn inverse_tolerance(cond: f64) -> f64 {
    TOL_DET.max(1e3 * f64::EPSILON * cond)
}

fn inverse_residuals(
    r: &mut Report,
    m: &BicomplexMatrix,
    tol: &Tolerance,
) -> Result<BicomplexMatrix> {
    let inv = m.inverse(tol)?;
    let cond = inv.condition[0].max(inv.condition[1]);
    r.line(&[
        "condition",
        &format_real(inv.condition[0]),
        &format_real(inv.condition[1]),
    ]);
    let id = BicomplexMatrix::identity(m.dim());
    let allow = inverse_tolerance(cond);
    r.residual("right-inverse", (m * &inv.matrix).max_diff(&id), allow);
    r.residual("left-inverse", (&inv.matrix * m).max_diff(&id), allow);
    Ok(inv.matrix)
}

fn inv(doc: &BctDocument, tol: &Tolerance) -> Result<Report> {
    let m = doc.as_matrix()?;
    let mut r = Report::new("inv");
    let inverse = inverse_residuals(&mut r, &m, tol)?;
    r.document(&BctDocument::matrix(inverse));
    Ok(r)
}

fn columns_as_kets(m: &BicomplexMatrix, basis: &BasisLabel) -> Vec<Ket> {
    (0..m.dim())
        .map(|j| Ket::new(m.column(j), basis.clone()))
        .collect()
}

fn orthonormal_residuals(
    r: &mut Report,
    spec: &ScalarProductSpec,
    kets: &[Ket],
    tol: &Tolerance,
) -> Result<()> {
    let (cross, unit) = orthonormality_residuals(spec, kets)?;
    r.residual("orthogonality", cross, TOL_ORTHO);
    r.residual("normalization", unit, TOL_ORTHO);
    let nc = kets
        .iter()
        .filter(|k| ket_classify(k, tol) != KetClass::Regular)
        .count();
    r.residual("null-cone-kets", nc as f64, 0.0);
    Ok(())
}

fn orthonormalize(doc: &BctDocument, spec: &ScalarProductSpec, tol: &Tolerance) -> Result<Report> {
    let m = doc.as_matrix()?;
    let basis = doc.basis.clone().unwrap_or_default();
    let out = gram_schmidt(spec, &columns_as_kets(&m, &basis), tol)?;
    let mut r = Report::new("gram-schmidt");
    orthonormal_residuals(&mut r, spec, &out, tol)?;
    r.document(&BctDocument::matrix(kets_to_matrix(&out)?));
    Ok(r)
}

/// Largest imaginary part among the component eigenvalues.
fn max_imag(pairs: &[EigenPair]) -> f64 {
    pairs
        .iter()
        .flat_map(|p| [p.value.project(1).im.abs(), p.value.project(2).im.abs()])
        .fold(0.0, f64::max)
}

fn spectral_suite(
    r: &mut Report,
    spec: &ScalarProductSpec,
    h: &Operator,
    tol: &Tolerance,
    print_pairs: bool,
) -> Result<Vec<EigenPair>> {
    let pairs = eigendecompose_self_adjoint(spec, h, tol)?;
    if print_pairs {
        for (l, p) in pairs.iter().enumerate() {
            r.line(&["eigenvalue", &l.to_string(), &format_atom(&p.value)]);
        }
        for (l, p) in pairs.iter().enumerate() {
            r.line(&["eigenket", &l.to_string(), &atoms(p.ket.coeffs())]);
        }
    }
    if pairing_is_ambiguous(&pairs) {
        r.line(&["pairing", "ambiguous"]);
    }
    let scale = h.matrix().max_abs().max(1.0);
    let rebuilt = spectral_reconstruct(spec, &pairs)?;
    r.residual("reconstruction", rebuilt.max_diff(h), TOL_SPECTRAL * scale);
    r.residual(
        "eigen-equation",
        eigen_residual(h, &pairs)?,
        TOL_SPECTRAL * scale,
    );
    r.residual(
        "hyperbolic-eigenvalues",
        max_imag(&pairs),
        TOL_HYPERBOLIC * scale,
    );
    let kets: Vec<Ket> = pairs.iter().map(|p| p.ket.clone()).collect();
    orthonormal_residuals(r, spec, &kets, tol)?;
    let report = eigenket_orthogonality_check(spec, &pairs, tol)?;
    r.line(&[
        "unconstrained-pairs",
        &report.unconstrained.len().to_string(),
    ]);
    r.residual("eigenket-orthogonality", report.max_constrained, TOL_ORTHO);
    Ok(pairs)
}

fn exp(doc: &BctDocument, spec: &ScalarProductSpec, tol: &Tolerance) -> Result<Report> {
    let a = doc.as_operator()?;
    let mut r = Report::new("exp");
    let e = op_exp(&a);
    let e_neg = op_exp(&a.scale(Bicomplex::real(-1.0)));
    let spread = (e.matrix().max_abs() * e_neg.matrix().max_abs() * a.dim() as f64).max(1.0);
    let id = Operator::identity(a.dim(), a.basis().clone());
    r.residual(
        "inverse-pair",
        e.compose(&e_neg)?.max_diff(&id),
        TOL_ALGEBRA * spread,
    );
    let sa = self_adjoint_residual(spec, &a)?;
    if sa <= tol.eps_eq * a.matrix().max_abs().max(1.0) {
        let spectral = op_exp_spectral(spec, &a, Bicomplex::ONE, tol)?;
        r.residual(
            "spectral-agreement",
            spectral.max_diff(&e),
            TOL_SPECTRAL * e.matrix().max_abs().max(1.0),
        );
    }
    match doc.kind() {
        Kind::Operator => r.document(&BctDocument::operator(&e)),
        _ => r.document(&BctDocument::matrix(e.matrix().clone())),
    }
    Ok(r)
}

fn evolve(
    spec: &ScalarProductSpec,
    cfg: &EvolutionConfig,
    h: &Operator,
    psi0: &Ket,
    tol: &Tolerance,
) -> Result<Report> {
    let mut r = Report::new("evolve");
    let series = evolve_samples(spec, cfg, h, psi0, tol)?;
    let n0 = scalar_product(spec, psi0, psi0)?;
    let mut header = vec!["t".to_string()];
    header.extend((0..psi0.dim()).map(|i| format!("psi{i}")));
    header.extend(["norm-e1".to_string(), "norm-e2".to_string()]);
    r.line(&header.iter().map(String::as_str).collect::<Vec<_>>());
    let mut drift: f64 = 0.0;
    for (t, psi) in &series {
        let hn = hyperbolic_norm(spec, psi)?;
        drift = drift.max((scalar_product(spec, psi, psi)? - n0).euclid_norm());
        let mut row = vec![format_real(*t)];
        row.extend(psi.coeffs().iter().map(format_atom));
        row.push(format_real(hn.value.x1.max(0.0).sqrt()));
        row.push(format_real(hn.value.x2.max(0.0).sqrt()));
        r.line(&row.iter().map(String::as_str).collect::<Vec<_>>());
    }
    r.residual(
        "norm-conservation",
        drift,
        TOL_NORM_CONSERVATION * n0.euclid_norm().max(1.0),
    );
    let u = evolution_operator(spec, cfg, h, tol)?;
    r.residual(
        "unitarity",
        unitarity_residual(spec, &u)?,
        TOL_NORM_CONSERVATION,
    );
    let hp = match cfg.xi {
        Some(xi) => h.scale(xi.inverse(tol)?),
        None => h.clone(),
    };
    let omega = hp.matrix().max_abs() * h.dim() as f64 / cfg.hbar;
    let step = DERIVATIVE_STEP / omega.max(1.0);
    let fd = schrodinger_residual(cfg, h, psi0, cfg.t1, step, tol)?;
    r.residual("schrodinger", fd, TOL_DERIVATIVE);
    Ok(r)
}

fn check(doc: &BctDocument, spec: &ScalarProductSpec, tol: &Tolerance) -> Result<Report> {
    let mut r = Report::new("check");
    r.line(&["kind", doc.kind().as_str()]);
    let mut rng = ChaCha8Rng::seed_from_u64(CHECK_SEED);
    match doc.kind() {
        Kind::Scalar => check_scalar(&mut r, doc.as_scalar()?, tol),
        Kind::Ket => check_ket(&mut r, spec, &doc.as_ket()?, tol)?,
        Kind::Matrix => check_matrix(&mut r, spec, doc, tol)?,
        Kind::Operator => check_operator(&mut r, spec, &doc.as_operator()?, tol, &mut rng)?,
        Kind::Spec => check_spec(&mut r, &doc.as_spec(tol)?, tol, &mut rng)?,
    }
    Ok(r)
}

fn check_scalar(r: &mut Report, w: Bicomplex, tol: &Tolerance) {
    let s = w.euclid_norm().max(1.0);
    r.line(&["class", w.classify(tol).as_str()]);
    let back = Bicomplex::from_idempotent(w.to_idempotent());
    r.residual(
        "idempotent-round-trip",
        (back - w).euclid_norm(),
        TOL_ROUND_TRIP * s,
    );
    let ww = w * w;
    let hom = (1..=2)
        .map(|k| (ww.project(k) - w.project(k) * w.project(k)).norm())
        .fold(0.0, f64::max);
    r.residual("homomorphism", hom, TOL_ALGEBRA * s * s);
    let inv = crate::scalar::Conjugation::ALL
        .iter()
        .map(|c| (w.conj(*c).conj(*c) - w).euclid_norm())
        .fold(0.0, f64::max);
    r.residual("conjugation-involution", inv, 0.0);
    let excess = (ww.euclid_norm() - std::f64::consts::SQRT_2 * w.euclid_norm().powi(2)).max(0.0);
    r.residual("norm-submultiplicative", excess, TOL_ALGEBRA * s * s);
    let mj = w.modulus_sq(crate::scalar::ModulusKind::J);
    let imag = mj.project(1).im.abs().max(mj.project(2).im.abs());
    r.residual("modulus-j-hyperbolic", imag, TOL_ALGEBRA * s * s);
    if w.classify(tol) == Classification::Invertible {
        if let Ok(wi) = w.inverse(tol) {
            let e = (w * wi - Bicomplex::ONE).euclid_norm();
            let cond = w.euclid_norm() * wi.euclid_norm();
            r.residual("inverse", e, TOL_ALGEBRA * cond.max(1.0));
        }
    }
}

fn check_ket(r: &mut Report, spec: &ScalarProductSpec, psi: &Ket, tol: &Tolerance) -> Result<()> {
    let class = ket_classify(psi, tol);
    r.line(&["class", class.as_str()]);
    let s = ket_norm(psi).max(1.0);
    let pp = scalar_product(spec, psi, psi)?;
    let imag = pp.project(1).im.abs().max(pp.project(2).im.abs());
    r.residual("self-product-hyperbolic", imag, TOL_ALGEBRA * s * s);
    let hn = hyperbolic_norm(spec, psi)?;
    r.residual(
        "self-product-nonnegative",
        (-hn.value.x1.min(hn.value.x2)).max(0.0),
        TOL_ALGEBRA * s * s,
    );
    if class == KetClass::Regular {
        let u = normalize(spec, psi, tol)?;
        let e = (scalar_product(spec, &u, &u)? - Bicomplex::ONE).euclid_norm();
        r.residual("normalization", e, TOL_ORTHO);
    }
    let n = psi.dim();
    let f: Vec<Bicomplex> = (0..n)
        .map(|l| scalar_product(spec, psi, &Ket::unit(n, l, psi.basis().clone())))
        .collect::<Result<_>>()?;
    let rep = riesz_representation(spec, &f, psi.basis().clone())?;
    r.residual("riesz", rep.max_diff(psi), TOL_ORTHO * s);
    Ok(())
}

fn check_matrix(
    r: &mut Report,
    spec: &ScalarProductSpec,
    doc: &BctDocument,
    tol: &Tolerance,
) -> Result<()> {
    let m = doc.as_matrix()?;
    let d = det_residuals(r, &m, tol);
    if d.classify(tol) != Classification::Invertible {
        r.line(&["basis", "no"]);
        return Ok(());
    }
    inverse_residuals(r, &m, tol)?;
    let basis = doc.basis.clone().unwrap_or_default();
    match gram_schmidt(spec, &columns_as_kets(&m, &basis), tol) {
        Ok(out) => orthonormal_residuals(r, spec, &out, tol)?,
        Err(e @ (Error::NullConePivot { .. } | Error::NotABasis | Error::NullConeKet(_))) => {
            r.failed_check("gram-schmidt", &e.to_string());
        }
        Err(e) => return Err(e),
    }
    Ok(())
}

fn check_operator(
    r: &mut Report,
    spec: &ScalarProductSpec,
    a: &Operator,
    tol: &Tolerance,
    rng: &mut ChaCha8Rng,
) -> Result<()> {
    let n = a.dim();
    let scale = a.matrix().max_abs().max(1.0);
    let star = adjoint(spec, a)?;
    r.residual(
        "adjoint-involution",
        adjoint(spec, &star)?.max_diff(a),
        TOL_ORTHO * scale,
    );
    let mut rel: f64 = 0.0;
    for _ in 0..8 {
        let psi = Ket::new(sample::bicomplex_vec(rng, n), a.basis().clone());
        let phi = Ket::new(sample::bicomplex_vec(rng, n), a.basis().clone());
        let lhs = scalar_product(spec, &psi, &a.apply(&phi)?)?;
        let rhs = scalar_product(spec, &star.apply(&psi)?, &phi)?;
        rel = rel.max((lhs - rhs).euclid_norm());
    }
    r.residual("adjoint-relation", rel, TOL_ORTHO * scale * n as f64);

    // an operator document is a Hamiltonian or a propagator
    let sa = self_adjoint_residual(spec, a)?;
    let un = unitarity_residual(spec, a)?;
    let limit = tol.eps_eq * scale;
    if sa <= limit {
        r.line(&["class", "self-adjoint"]);
        let mut probe = Report::new("");
        spectral_suite(&mut probe, spec, a, tol, false)?;
        r.payload.extend(probe.payload);
        r.residuals.extend(probe.residuals);
        let u = op_exp(&a.scale(Bicomplex::i1()));
        r.residual("exp-unitarity", unitarity_residual(spec, &u)?, TOL_SPECTRAL);
    } else if un <= limit {
        r.line(&["class", "unitary"]);
        let pairs = eigendecompose_unitary(spec, a, tol)?;
        r.residual("eigen-equation", eigen_residual(a, &pairs)?, TOL_SPECTRAL);
        let worst = pairs
            .iter()
            .map(|p| (p.value.dagger() * p.value - Bicomplex::ONE).euclid_norm())
            .fold(0.0, f64::max);
        r.residual("unit-eigenvalues", worst, TOL_SPECTRAL);
    } else {
        r.line(&["class", "neither"]);
        r.residual("self-adjoint", sa, limit);
        r.residual("unitary", un, limit);
    }
    Ok(())
}

fn check_spec(
    r: &mut Report,
    spec: &ScalarProductSpec,
    tol: &Tolerance,
    rng: &mut ChaCha8Rng,
) -> Result<()> {
    let n = spec.dim();
    for k in 1..=2 {
        let g = spec.gram(k);
        r.residual(
            &format!("hermitian-g{k}"),
            g.hermitian_residual(),
            tol.eps_eq * g.max_abs().max(1.0),
        );
        let l = spec.cholesky(k);
        let llh = l * &l.adjoint();
        r.residual(
            &format!("cholesky-g{k}"),
            llh.max_diff(g),
            TOL_ALGEBRA * g.max_abs().max(1.0),
        );
    }
    r.line(&[
        "closed-under-v",
        if spec.is_closed_under_v(tol) {
            "yes"
        } else {
            "no"
        },
    ]);
    let basis = BasisLabel::default();
    let m = sample::well_conditioned(rng, n);
    let kets = columns_as_kets(&m, &basis);
    match gram_schmidt(spec, &kets, tol) {
        Ok(out) => {
            orthonormal_residuals(r, spec, &out, tol)?;
            let perm = sample::permutation(rng, n);
            match mix_orthogonal_bases(spec, &out, &perm, tol) {
                Ok(mixed) => {
                    let (cross, _) = orthonormality_residuals(spec, &mixed)?;
                    r.residual("mixed-basis-orthogonality", cross, TOL_ORTHO);
                }
                Err(e) => r.failed_check("mixed-basis", &e.to_string()),
            }
        }
        Err(e) => r.failed_check("gram-schmidt", &e.to_string()),
    }
    let f = sample::bicomplex_vec(rng, n);
    let psi = riesz_representation(spec, &f, basis.clone())?;
    let worst = (0..n)
        .map(|l| {
            scalar_product(spec, &psi, &Ket::unit(n, l, basis.clone()))
                .map(|v| (v - f[l]).euclid_norm())
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    r.residual("riesz", worst, TOL_ORTHO);
    Ok(())
}

/// Parses process arguments, runs, and exits.
pub fn main_entry() -> ! {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock());
    std::process::exit(code)
}
