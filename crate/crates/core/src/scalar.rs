//! Bicomplex and hyperbolic numbers.
//!
//! A bicomplex number is stored as `w = z1 + z2 i2` with `z1, z2` in `C(i1)`.
//! Its idempotent form `w = ẑ1 e1 + ẑ2 e2` is a derived view in which ring
//! multiplication, inversion and roots act component by component.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// An element of `C(i1)`.
pub type Complex = Complex64;

const I: Complex = Complex::new(0.0, 1.0);

/// Thresholds used to realise exact ring statements in floating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Relative threshold below which an idempotent component counts as zero.
    pub eps_null: f64,
    /// Componentwise absolute-or-relative threshold for approximate equality.
    pub eps_eq: f64,
}

impl Tolerance {
    pub fn new(eps_null: f64, eps_eq: f64) -> Result<Self> {
        for (name, v) in [("eps_null", eps_null), ("eps_eq", eps_eq)] {
            if !(v > 0.0 && v <= 1e-6) {
                return Err(Error::InvalidTolerance(format!(
                    "{name} = {v} must lie in (0, 1e-6]"
                )));
            }
        }
        Ok(Self { eps_null, eps_eq })
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            eps_null: 1e-12,
            eps_eq: 1e-12,
        }
    }
}

/// Position of a number (or ket, or operator) relative to the null cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Zero,
    /// The first idempotent component vanishes.
    NullCone1,
    /// The second idempotent component vanishes.
    NullCone2,
    /// Both idempotent components are nonzero.
    Invertible,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::Zero => "zero",
            Classification::NullCone1 => "null_cone_1",
            Classification::NullCone2 => "null_cone_2",
            Classification::Invertible => "invertible",
        }
    }

    /// Classify from the magnitudes of the two idempotent components.
    pub fn from_magnitudes(m1: f64, m2: f64, eps_null: f64) -> Self {
        let scale = m1.max(m2);
        if scale == 0.0 {
            Classification::Zero
        } else if m1 <= eps_null * scale {
            Classification::NullCone1
        } else if m2 <= eps_null * scale {
            Classification::NullCone2
        } else {
            Classification::Invertible
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The three bicomplex conjugations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conjugation {
    /// `z̄1 + z̄2 i2`
    Dagger1,
    /// `z1 - z2 i2`
    Dagger2,
    /// `z̄1 - z̄2 i2`
    Dagger3,
}

impl Conjugation {
    pub const ALL: [Conjugation; 3] = [
        Conjugation::Dagger1,
        Conjugation::Dagger2,
        Conjugation::Dagger3,
    ];
}

/// Which squared modulus to take: `w w†2`, `w w†1` or `w w†3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModulusKind {
    I1,
    I2,
    J,
}

impl ModulusKind {
    pub const ALL: [ModulusKind; 3] = [ModulusKind::I1, ModulusKind::I2, ModulusKind::J];
}

/// Idempotent coordinates `(ẑ1, ẑ2)` of a bicomplex number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdempotentForm {
    pub c1: Complex,
    pub c2: Complex,
}

impl IdempotentForm {
    pub fn new(c1: Complex, c2: Complex) -> Self {
        Self { c1, c2 }
    }

    pub fn component(&self, k: usize) -> Complex {
        match k {
            1 => self.c1,
            2 => self.c2,
            _ => panic!("idempotent component index must be 1 or 2, got {k}"),
        }
    }
}

/// A bicomplex number `z1 + z2 i2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Bicomplex {
    pub z1: Complex,
    pub z2: Complex,
}

impl Bicomplex {
    pub const ZERO: Bicomplex = Bicomplex::new(Complex::new(0.0, 0.0), Complex::new(0.0, 0.0));
    pub const ONE: Bicomplex = Bicomplex::new(Complex::new(1.0, 0.0), Complex::new(0.0, 0.0));

    pub const fn new(z1: Complex, z2: Complex) -> Self {
        Self { z1, z2 }
    }

    /// Builds `(re1 + im1 i1) + (re2 + im2 i1) i2`, rejecting non-finite input.
    pub fn try_from_parts(re1: f64, im1: f64, re2: f64, im2: f64) -> Result<Self> {
        if [re1, im1, re2, im2].iter().all(|v| v.is_finite()) {
            Ok(Self::from_parts(re1, im1, re2, im2))
        } else {
            Err(Error::NonFinite(format!(
                "bicomplex components ({re1} {im1} {re2} {im2})"
            )))
        }
    }

    pub const fn from_parts(re1: f64, im1: f64, re2: f64, im2: f64) -> Self {
        Self::new(Complex::new(re1, im1), Complex::new(re2, im2))
    }

    pub fn parts(&self) -> [f64; 4] {
        [self.z1.re, self.z1.im, self.z2.re, self.z2.im]
    }

    pub const fn real(x: f64) -> Self {
        Self::from_parts(x, 0.0, 0.0, 0.0)
    }

    /// Embeds an element of `C(i1)`.
    pub const fn from_complex(z: Complex) -> Self {
        Self::new(z, Complex::new(0.0, 0.0))
    }

    pub const fn i1() -> Self {
        Self::from_parts(0.0, 1.0, 0.0, 0.0)
    }

    pub const fn i2() -> Self {
        Self::from_parts(0.0, 0.0, 1.0, 0.0)
    }

    /// `j = i1 i2`, the hyperbolic unit.
    pub const fn j() -> Self {
        Self::from_parts(0.0, 0.0, 0.0, 1.0)
    }

    /// `e1 = (1 + j) / 2`
    pub const fn e1() -> Self {
        Self::from_parts(0.5, 0.0, 0.0, 0.5)
    }

    /// `e2 = (1 - j) / 2`
    pub const fn e2() -> Self {
        Self::from_parts(0.5, 0.0, 0.0, -0.5)
    }

    pub fn is_finite(&self) -> bool {
        self.parts().iter().all(|v| v.is_finite())
    }

    pub fn to_idempotent(&self) -> IdempotentForm {
        let t = self.z2 * I;
        IdempotentForm::new(self.z1 - t, self.z1 + t)
    }

    pub fn from_idempotent(f: IdempotentForm) -> Self {
        Self::new((f.c1 + f.c2) * 0.5, (f.c1 - f.c2) * I * 0.5)
    }

    pub fn from_components(c1: Complex, c2: Complex) -> Self {
        Self::from_idempotent(IdempotentForm::new(c1, c2))
    }

    /// Projection `P_k` onto `C(i1)`, `k ∈ {1, 2}`.
    pub fn project(&self, k: usize) -> Complex {
        let t = self.z2 * I;
        match k {
            1 => self.z1 - t,
            2 => self.z1 + t,
            _ => panic!("idempotent component index must be 1 or 2, got {k}"),
        }
    }

    pub fn conj(&self, kind: Conjugation) -> Self {
        match kind {
            Conjugation::Dagger1 => Self::new(self.z1.conj(), self.z2.conj()),
            Conjugation::Dagger2 => Self::new(self.z1, -self.z2),
            Conjugation::Dagger3 => Self::new(self.z1.conj(), -self.z2.conj()),
        }
    }

    /// Shorthand for the `†3` conjugation, the one entering scalar products.
    pub fn dagger(&self) -> Self {
        self.conj(Conjugation::Dagger3)
    }

    pub fn modulus_sq(&self, kind: ModulusKind) -> Self {
        let c = match kind {
            ModulusKind::I1 => Conjugation::Dagger2,
            ModulusKind::I2 => Conjugation::Dagger1,
            ModulusKind::J => Conjugation::Dagger3,
        };
        *self * self.conj(c)
    }

    /// The Euclidean `R^4` norm `sqrt(|z1|^2 + |z2|^2)`.
    pub fn euclid_norm(&self) -> f64 {
        self.z1.norm().hypot(self.z2.norm())
    }

    pub fn classify(&self, tol: &Tolerance) -> Classification {
        let f = self.to_idempotent();
        Classification::from_magnitudes(f.c1.norm(), f.c2.norm(), tol.eps_null)
    }

    /// `ẑ1⁻¹ e1 + ẑ2⁻¹ e2`. Fails on zero and on the null cone.
    pub fn inverse(&self, tol: &Tolerance) -> Result<Self> {
        match self.classify(tol) {
            Classification::Invertible => {
                let f = self.to_idempotent();
                Ok(Self::from_components(f.c1.inv(), f.c2.inv()))
            }
            other => Err(Error::NotInvertible(other)),
        }
    }

    /// Principal `n`-th root taken independently in each idempotent component.
    pub fn nth_root(&self, n: u32) -> Self {
        assert!(n >= 1, "root order must be positive");
        let root = |z: Complex| {
            if z == Complex::new(0.0, 0.0) || n == 1 {
                z
            } else {
                Complex::from_polar(z.norm().powf(1.0 / n as f64), z.arg() / n as f64)
            }
        };
        let f = self.to_idempotent();
        Self::from_components(root(f.c1), root(f.c2))
    }

    pub fn powi(&self, n: u32) -> Self {
        (0..n).fold(Self::ONE, |acc, _| acc * *self)
    }

    /// Applies `f` to each idempotent component.
    pub fn map_components(&self, f: impl Fn(Complex) -> Complex) -> Self {
        let c = self.to_idempotent();
        Self::from_components(f(c.c1), f(c.c2))
    }

    pub fn exp(&self) -> Self {
        self.map_components(|z| z.exp())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.z1 * s, self.z2 * s)
    }

    /// Componentwise absolute-or-relative comparison of the four real parts.
    pub fn approx_eq(&self, other: &Self, eps: f64) -> bool {
        self.parts()
            .iter()
            .zip(other.parts().iter())
            .all(|(a, b)| (a - b).abs() <= eps * 1f64.max(a.abs()).max(b.abs()))
    }

    /// `true` when both `z1` and `z2` are real up to `eps`, i.e. the number lies in `D`.
    pub fn is_hyperbolic(&self, eps: f64) -> bool {
        let scale = 1f64.max(self.euclid_norm());
        self.z1.im.abs() <= eps * scale && self.z2.re.abs() <= eps * scale
    }
}

impl fmt::Display for Bicomplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_atom(self))
    }
}

impl Add for Bicomplex {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.z1 + rhs.z1, self.z2 + rhs.z2)
    }
}

impl Sub for Bicomplex {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.z1 - rhs.z1, self.z2 - rhs.z2)
    }
}

impl Neg for Bicomplex {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.z1, -self.z2)
    }
}

impl Mul for Bicomplex {
    type Output = Self;
    // (z1 + z2 i2)(w1 + w2 i2) = (z1 w1 - z2 w2) + (z1 w2 + z2 w1) i2
    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.z1 * rhs.z1 - self.z2 * rhs.z2,
            self.z1 * rhs.z2 + self.z2 * rhs.z1,
        )
    }
}

impl Mul<f64> for Bicomplex {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

impl Mul<Complex> for Bicomplex {
    type Output = Self;
    fn mul(self, rhs: Complex) -> Self {
        Self::new(self.z1 * rhs, self.z2 * rhs)
    }
}

impl AddAssign for Bicomplex {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for Bicomplex {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl MulAssign for Bicomplex {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl std::iter::Sum for Bicomplex {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |a, b| a + b)
    }
}

impl From<Complex> for Bicomplex {
    fn from(z: Complex) -> Self {
        Self::from_complex(z)
    }
}

impl From<f64> for Bicomplex {
    fn from(x: f64) -> Self {
        Self::real(x)
    }
}

/// A hyperbolic number `x1 e1 + x2 e2`, stored in idempotent coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Hyperbolic {
    pub x1: f64,
    pub x2: f64,
}

impl Hyperbolic {
    pub fn new(x1: f64, x2: f64) -> Self {
        Self { x1, x2 }
    }

    /// Reads the real parts of the idempotent components. The imaginary parts
    /// are dropped; callers that care check `Bicomplex::is_hyperbolic` first.
    pub fn from_bicomplex(w: &Bicomplex) -> Self {
        let f = w.to_idempotent();
        Self::new(f.c1.re, f.c2.re)
    }

    pub fn to_bicomplex(&self) -> Bicomplex {
        Bicomplex::from_components(Complex::new(self.x1, 0.0), Complex::new(self.x2, 0.0))
    }

    /// Membership in `D+`.
    pub fn is_positive(&self) -> bool {
        self.x1 >= 0.0 && self.x2 >= 0.0
    }

    /// `D+` membership allowing each component to dip to `-eps`.
    pub fn is_positive_within(&self, eps: f64) -> bool {
        self.x1 >= -eps && self.x2 >= -eps
    }
}
