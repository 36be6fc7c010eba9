//! The `.bct` text container.
//!
//! ```text
//! bct v1
//! kind: matrix
//! dim: 2
//! basis: std
//! (1 0 0 0) (0 0 0 0)
//! (0 0 0 0) (0.5 0 0 0.5)
//! ```
//!
//! Header lines come first: the version line, then `kind:` and `dim:`, and
//! optionally `basis:`. Rows of atoms follow, one per line. A bicomplex atom
//! `(re1 im1 re2 im2)` stands for `(re1 + im1 i1) + (re2 + im2 i1) i2`; the
//! Gram matrices of a `spec` use complex atoms `(re im)`, `n` rows for `G1`
//! followed by `n` rows for `G2`. Blank lines and lines starting with `#`
//! are ignored on input and never written.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hilbert::{BasisLabel, Ket, ScalarProductSpec};
use crate::linalg::CMatrix;
use crate::matrix::BicomplexMatrix;
use crate::operators::Operator;
use crate::scalar::{Bicomplex, Complex, Tolerance};
use crate::text::{format_atom, format_complex_atom, parse_real};

pub const VERSION_LINE: &str = "bct v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Scalar,
    Ket,
    Matrix,
    Operator,
    Spec,
}

impl Kind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Kind::Scalar => "scalar",
            Kind::Ket => "ket",
            Kind::Matrix => "matrix",
            Kind::Operator => "operator",
            Kind::Spec => "spec",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "scalar" => Kind::Scalar,
            "ket" => Kind::Ket,
            "matrix" => Kind::Matrix,
            "operator" => Kind::Operator,
            "spec" => Kind::Spec,
            _ => return None,
        })
    }

    fn atom_width(&self) -> usize {
        if *self == Kind::Spec {
            2
        } else {
            4
        }
    }

    /// `(rows, atoms per row)` for order `n`.
    fn shape(&self, n: usize) -> (usize, usize) {
        match self {
            Kind::Scalar => (1, 1),
            Kind::Ket => (1, n),
            Kind::Matrix | Kind::Operator => (n, n),
            Kind::Spec => (2 * n, n),
        }
    }
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Scalar(Bicomplex),
    Ket(Vec<Bicomplex>),
    Matrix(BicomplexMatrix),
    Operator(BicomplexMatrix),
    Spec(CMatrix, CMatrix),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BctDocument {
    pub dim: usize,
    pub basis: Option<BasisLabel>,
    pub payload: Payload,
}

impl BctDocument {
    pub fn scalar(w: Bicomplex) -> Self {
        Self {
            dim: 1,
            basis: None,
            payload: Payload::Scalar(w),
        }
    }

    pub fn ket(psi: &Ket) -> Self {
        Self {
            dim: psi.dim(),
            basis: Some(psi.basis().clone()),
            payload: Payload::Ket(psi.coeffs().to_vec()),
        }
    }

    pub fn matrix(m: BicomplexMatrix) -> Self {
        Self {
            dim: m.dim(),
            basis: None,
            payload: Payload::Matrix(m),
        }
    }

    pub fn operator(a: &Operator) -> Self {
        Self {
            dim: a.dim(),
            basis: Some(a.basis().clone()),
            payload: Payload::Operator(a.matrix().clone()),
        }
    }

    pub fn spec(s: &ScalarProductSpec) -> Self {
        Self {
            dim: s.dim(),
            basis: None,
            payload: Payload::Spec(s.gram(1).clone(), s.gram(2).clone()),
        }
    }

    pub fn kind(&self) -> Kind {
        match self.payload {
            Payload::Scalar(_) => Kind::Scalar,
            Payload::Ket(_) => Kind::Ket,
            Payload::Matrix(_) => Kind::Matrix,
            Payload::Operator(_) => Kind::Operator,
            Payload::Spec(..) => Kind::Spec,
        }
    }

    fn basis_or_default(&self) -> BasisLabel {
        self.basis.clone().unwrap_or_default()
    }

    fn mismatch(&self, expected: &str) -> Error {
        Error::KindMismatch {
            expected: expected.into(),
            found: self.kind().as_str().into(),
        }
    }

    pub fn as_scalar(&self) -> Result<Bicomplex> {
        match &self.payload {
            Payload::Scalar(w) => Ok(*w),
            _ => Err(self.mismatch("scalar")),
        }
    }

    pub fn as_ket(&self) -> Result<Ket> {
        match &self.payload {
            Payload::Ket(v) => Ok(Ket::new(v.clone(), self.basis_or_default())),
            _ => Err(self.mismatch("ket")),
        }
    }

    /// Matrix payload; an operator's matrix is accepted as well.
    pub fn as_matrix(&self) -> Result<BicomplexMatrix> {
        match &self.payload {
            Payload::Matrix(m) | Payload::Operator(m) => Ok(m.clone()),
            _ => Err(self.mismatch("matrix")),
        }
    }

    /// Operator payload; a plain matrix is read in the default basis.
    pub fn as_operator(&self) -> Result<Operator> {
        match &self.payload {
            Payload::Matrix(m) | Payload::Operator(m) => {
                Ok(Operator::new(m.clone(), self.basis_or_default()))
            }
            _ => Err(self.mismatch("operator")),
        }
    }

    pub fn as_spec(&self, tol: &Tolerance) -> Result<ScalarProductSpec> {
        match &self.payload {
            Payload::Spec(g1, g2) => ScalarProductSpec::new(g1.clone(), g2.clone(), tol),
            _ => Err(self.mismatch("spec")),
        }
    }
}

/// Canonical text of a document.
pub fn print(doc: &BctDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{VERSION_LINE}");
    let _ = writeln!(out, "kind: {}", doc.kind());
    let _ = writeln!(out, "dim: {}", doc.dim);
    if let Some(b) = &doc.basis {
        let _ = writeln!(out, "basis: {b}");
    }
    let join = |atoms: Vec<String>| atoms.join(" ");
    match &doc.payload {
        Payload::Scalar(w) => {
            let _ = writeln!(out, "{}", format_atom(w));
        }
        Payload::Ket(v) => {
            let _ = writeln!(out, "{}", join(v.iter().map(format_atom).collect()));
        }
        Payload::Matrix(m) | Payload::Operator(m) => {
            for row in m.rows() {
                let _ = writeln!(out, "{}", join(row.iter().map(format_atom).collect()));
            }
        }
        Payload::Spec(g1, g2) => {
            for g in [g1, g2] {
                for row in g.as_slice().chunks(g.dim()) {
                    let _ = writeln!(
                        out,
                        "{}",
                        join(row.iter().map(format_complex_atom).collect())
                    );
                }
            }
        }
    }
    out
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Atoms of one payload row, each a list of reals.
fn parse_row(text: &str, line: usize, width: usize) -> Result<Vec<Vec<f64>>> {
    let mut atoms = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    let col = |byte: usize| text[..byte].chars().count() + 1;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c != '(' {
            return Err(parse_err(
                line,
                col(pos),
                format!("expected `(`, found `{c}`"),
            ));
        }
        let close = text[pos..]
            .find(')')
            .map(|off| pos + off)
            .ok_or_else(|| parse_err(line, col(pos), "unterminated atom"))?;
        let inner = &text[pos + 1..close];
        if let Some(off) = inner.find('(') {
            return Err(parse_err(line, col(pos + 1 + off), "nested `(`"));
        }
        let mut vals = Vec::with_capacity(width);
        let mut offset = pos + 1;
        for tok in inner.split(' ') {
            if tok.is_empty() {
                offset += 1;
                continue;
            }
            let v = parse_real(tok).map_err(|m| parse_err(line, col(offset), m))?;
            vals.push(v);
            offset += tok.len() + 1;
        }
        if vals.len() != width {
            return Err(parse_err(
                line,
                col(pos),
                format!("atom needs {width} numbers, found {}", vals.len()),
            ));
        }
        atoms.push(vals);
        while i < chars.len() && chars[i].0 <= close {
            i += 1;
        }
    }
    Ok(atoms)
}

fn header_value<'a>(line: &'a str, key: &str, lineno: usize) -> Result<&'a str> {
    line.strip_prefix(key)
        .and_then(|r| r.strip_prefix(':'))
        .map(str::trim)
        .filter(|v| !v.is_empty())
        .ok_or_else(|| parse_err(lineno, 1, format!("expected `{key}: <value>`")))
}

pub fn parse(text: &str) -> Result<BctDocument> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));

    let (ln, first) = lines
        .next()
        .ok_or_else(|| parse_err(1, 1, "empty document"))?;
    if first.trim() != VERSION_LINE {
        return Err(parse_err(ln, 1, format!("expected `{VERSION_LINE}`")));
    }

    let (ln, l) = lines
        .next()
        .ok_or_else(|| parse_err(ln + 1, 1, "missing `kind:` line"))?;
    let kind_str = header_value(l.trim(), "kind", ln)?;
    let kind = Kind::parse(kind_str)
        .ok_or_else(|| parse_err(ln, 7, format!("unknown kind `{kind_str}`")))?;

    let (ln, l) = lines
        .next()
        .ok_or_else(|| parse_err(ln + 1, 1, "missing `dim:` line"))?;
    let dim_str = header_value(l.trim(), "dim", ln)?;
    let dim: usize =
        dim_str.parse().ok().filter(|d| *d > 0).ok_or_else(|| {
            parse_err(ln, 6, format!("dim `{dim_str}` is not a positive integer"))
        })?;

    let mut basis = None;
    let mut rows: Vec<(usize, Vec<Vec<f64>>)> = Vec::new();
    for (ln, l) in lines {
        let t = l.trim();
        if t.starts_with("basis") && rows.is_empty() && basis.is_none() {
            let label = header_value(t, "basis", ln)?;
            if label.split_whitespace().count() != 1 {
                return Err(parse_err(ln, 8, "basis label must be a single word"));
            }
            basis = Some(BasisLabel::new(label));
            continue;
        }
        rows.push((ln, parse_row(l, ln, kind.atom_width())?));
    }

    let (want_rows, want_cols) = kind.shape(dim);
    if kind == Kind::Scalar && dim != 1 {
        return Err(Error::DimMismatch(format!(
            "a scalar has dim 1, found {dim}"
        )));
    }
    if rows.len() != want_rows {
        return Err(Error::DimMismatch(format!(
            "{kind} of dim {dim} needs {want_rows} rows, found {}",
            rows.len()
        )));
    }
    if let Some((ln, r)) = rows.iter().find(|(_, r)| r.len() != want_cols) {
        return Err(Error::DimMismatch(format!(
            "line {ln}: {kind} of dim {dim} needs {want_cols} atoms per row, found {}",
            r.len()
        )));
    }

    let bic = |a: &[f64]| Bicomplex::from_parts(a[0], a[1], a[2], a[3]);
    let flat: Vec<&Vec<f64>> = rows.iter().flat_map(|(_, r)| r.iter()).collect();
    let payload = match kind {
        Kind::Scalar => Payload::Scalar(bic(flat[0])),
        Kind::Ket => Payload::Ket(flat.iter().map(|a| bic(a)).collect()),
        Kind::Matrix | Kind::Operator => {
            let m = BicomplexMatrix::from_fn(dim, |i, j| bic(flat[i * dim + j]));
            if kind == Kind::Matrix {
                Payload::Matrix(m)
            } else {
                Payload::Operator(m)
            }
        }
        Kind::Spec => {
            let g = |off: usize| {
                CMatrix::from_fn(dim, |i, j| {
                    let a = flat[off + i * dim + j];
                    Complex::new(a[0], a[1])
                })
            };
            Payload::Spec(g(0), g(dim * dim))
        }
    };
    Ok(BctDocument {
        dim,
        basis,
        payload,
    })
}

/// Reads and parses a file; I/O failures map to [`Error::Io`].
pub fn read_file(path: &std::path::Path) -> Result<BctDocument> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse(&text)
}
