//! Number rendering shared by every text output.
//!
//! Reals are written like C's `%.17g`: 17 significant digits, trailing zeros
//! trimmed, scientific notation outside `1e-4 <= |x| < 1e17`. This is enough
//! for every `f64` to survive a print/parse round trip bit for bit.

use crate::scalar::{Bicomplex, Complex};

const SIG_DIGITS: usize = 17;

pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = sci
        .split_once('e')
        .expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();

    if exp < -4 || exp >= SIG_DIGITS as i32 {
        let mut m = format!("{}.{}", &digits[..1], &digits[1..]);
        trim_fraction(&mut m);
        let esign = if exp < 0 { '-' } else { '+' };
        format!("{sign}{m}e{esign}{:02}", exp.abs())
    } else if exp < 0 {
        let mut s = format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits);
        trim_fraction(&mut s);
        format!("{sign}{s}")
    } else {
        let point = exp as usize + 1;
        let mut s = format!("{}.{}", &digits[..point], &digits[point..]);
        trim_fraction(&mut s);
        format!("{sign}{s}")
    }
}

fn trim_fraction(s: &mut String) {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
}

/// `(re1 im1 re2 im2)` for `z1 = re1 + im1 i1`, `z2 = re2 + im2 i1`.
pub fn format_atom(w: &Bicomplex) -> String {
    let [a, b, c, d] = w.parts();
    format!(
        "({} {} {} {})",
        format_real(a),
        format_real(b),
        format_real(c),
        format_real(d)
    )
}

/// `(re im)`
pub fn format_complex_atom(z: &Complex) -> String {
    format!("({} {})", format_real(z.re), format_real(z.im))
}

/// Parses a single atom string such as `"(1 0 0 -0.5)"` (used by CLI flags).
pub fn parse_atom(s: &str) -> Result<Bicomplex, String> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| format!("atom `{s}` must be enclosed in parentheses"))?;
    let vals = inner
        .split_whitespace()
        .map(parse_real)
        .collect::<Result<Vec<_>, _>>()?;
    if vals.len() != 4 {
        return Err(format!("atom `{s}` needs 4 numbers, found {}", vals.len()));
    }
    Ok(Bicomplex::from_parts(vals[0], vals[1], vals[2], vals[3]))
}

/// Finite decimal literal.
pub fn parse_real(tok: &str) -> Result<f64, String> {
    let looks_numeric = tok
        .chars()
        .all(|c| c.is_ascii_digit() || matches!(c, '+' | '-' | '.' | 'e' | 'E'));
    let v: f64 = if looks_numeric {
        tok.parse().ok()
    } else {
        None
    }
    .ok_or_else(|| format!("`{tok}` is not a decimal number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{tok}` is not finite"))
    }
}
