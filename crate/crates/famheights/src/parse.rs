//! Text format for polynomials: sums of terms over variables `x0..xN` and
//! `t`, rational coefficients written `a/b`, e.g. `x0^2 + 3*t*x1^2`.
//!
//! Parsing is whitespace-insensitive and accepts parenthesized subexpressions
//! (needed for coefficients like `(t^2 + t)*x1`). Display emits terms in
//! descending graded-lex order and round-trips through the parser.

use crate::error::Error;
use crate::mpoly::{Mono, MultiPoly};
use crate::ring::{BigRat, Ring};
use crate::upoly::TPoly;
use num_bigint::BigInt;
use std::fmt;

/// Parse a polynomial in `x0..x{nx-1}` and `t` with coefficients in ℚ[t].
pub fn parse_qt_poly(input: &str, num_x_vars: usize) -> Result<MultiPoly<TPoly>, Error> {
    let raw = parse_raw(input, num_x_vars)?;
    Ok(split_t(&raw, num_x_vars))
}

/// Parse a polynomial in `x0..x{nx-1}` with rational coefficients;
/// occurrences of `t` are rejected.
pub fn parse_qpoly(input: &str, num_x_vars: usize) -> Result<MultiPoly<BigRat>, Error> {
    let raw = parse_raw(input, num_x_vars)?;
    strip_t(&raw, num_x_vars).ok_or_else(|| {
        Error::Parse(format!(
            "polynomial must not involve t: {}",
            input.trim()
        ))
    })
}

/// Raw parse target: x-variables first, `t` as the extra last variable.
fn parse_raw(input: &str, nx: usize) -> Result<MultiPoly<BigRat>, Error> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
        nx,
    };
    let poly = p.parse_sum()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::Parse(format!(
            "unexpected trailing input at byte {} in {:?}",
            p.pos, input
        )));
    }
    Ok(poly)
}

/// Regroup a raw polynomial (t as last variable) into ℚ[t] coefficients.
pub fn split_t(raw: &MultiPoly<BigRat>, nx: usize) -> MultiPoly<TPoly> {
    let mut out = MultiPoly::zero(nx);
    for (m, c) in raw.terms() {
        let te = m.0.get(nx).copied().unwrap_or(0) as usize;
        let mut coeffs = vec![BigRat::zero(); te + 1];
        coeffs[te] = c.clone();
        let xm = Mono(m.0[..nx.min(m.0.len())].to_vec());
        out.add_term(xm, TPoly::from_coeffs(coeffs));
    }
    out
}

/// Downcast a raw polynomial to rational coefficients; `None` if t occurs.
pub fn strip_t(raw: &MultiPoly<BigRat>, nx: usize) -> Option<MultiPoly<BigRat>> {
    let mut out = MultiPoly::zero(nx);
    for (m, c) in raw.terms() {
        if m.0.get(nx).copied().unwrap_or(0) != 0 {
            return None;
        }
        out.add_term(Mono(m.0[..nx.min(m.0.len())].to_vec()), c.clone());
    }
    Some(out)
}

/// Downcast ℚ[t] coefficients to ℚ when no coefficient involves t.
pub fn qt_to_q(p: &MultiPoly<TPoly>) -> Option<MultiPoly<BigRat>> {
    let mut out = MultiPoly::zero(p.nvars());
    for (m, c) in p.terms() {
        if !c.is_constant() {
            return None;
        }
        out.add_term(m.clone(), c.coeff(0));
    }
    Some(out)
}

/// Lift rational coefficients into ℚ[t].
pub fn q_to_qt(p: &MultiPoly<BigRat>) -> MultiPoly<TPoly> {
    p.map_coeffs(|c| TPoly::constant(c.clone()))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nx: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn parse_sum(&mut self) -> Result<MultiPoly<BigRat>, Error> {
        let nvars = self.nx + 1;
        let mut acc = MultiPoly::zero(nvars);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                Some(b')') | None => {
                    if first {
                        return Err(Error::Parse("empty polynomial".into()));
                    }
                    break;
                }
                Some(_) if first => 1,
                Some(c) => {
                    return Err(Error::Parse(format!(
                        "expected '+' or '-' before term, found {:?}",
                        c as char
                    )))
                }
            };
            let term = self.parse_term()?;
            acc = if sign > 0 { acc.add(&term) } else { acc.sub(&term) };
            first = false;
            match self.peek() {
                Some(b'+') | Some(b'-') => continue,
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<MultiPoly<BigRat>, Error> {
        let nvars = self.nx + 1;
        let mut acc = MultiPoly::constant(nvars, BigRat::one());
        loop {
            let factor = self.parse_factor()?;
            acc = acc.mul(&factor);
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<MultiPoly<BigRat>, Error> {
        let nvars = self.nx + 1;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.parse_sum()?;
                if self.bump() != Some(b')') {
                    return Err(Error::Parse("unclosed parenthesis".into()));
                }
                let e = self.parse_exponent()?;
                Ok(inner.pow(e))
            }
            Some(b't') => {
                self.pos += 1;
                let e = self.parse_exponent()?;
                let mut m = Mono::one(nvars);
                m.0[self.nx] = e;
                Ok(MultiPoly::monomial(nvars, m, BigRat::one()))
            }
            Some(b'x') => {
                self.pos += 1;
                let idx = self.parse_digits()? as usize;
                if idx >= self.nx {
                    return Err(Error::Parse(format!(
                        "variable x{} out of range (expected x0..x{})",
                        idx,
                        self.nx.saturating_sub(1)
                    )));
                }
                let e = self.parse_exponent()?;
                let mut m = Mono::one(nvars);
                m.0[idx] = e;
                Ok(MultiPoly::monomial(nvars, m, BigRat::one()))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.parse_bigint()?;
                let den = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d = self.parse_bigint()?;
                    if d == BigInt::from(0) {
                        return Err(Error::Parse("zero denominator".into()));
                    }
                    d
                } else {
                    BigInt::from(1)
                };
                Ok(MultiPoly::constant(nvars, BigRat::new(num, den)))
            }
            other => Err(Error::Parse(format!(
                "expected factor, found {:?}",
                other.map(|c| c as char)
            ))),
        }
    }

    fn parse_exponent(&mut self) -> Result<u32, Error> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.parse_digits()
        } else {
            Ok(1)
        }
    }

    fn parse_digits(&mut self) -> Result<u32, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse("expected digits".into()));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse("integer too large for exponent/index".into()))
    }

    fn parse_bigint(&mut self) -> Result<BigInt, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse("expected number".into()));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .expect("digit string"))
    }
}

/// Shared display routine for [`MultiPoly`]: descending graded-lex terms,
/// coefficients parenthesized when their rendering contains spaces.
pub(crate) fn display_poly<R: Ring>(
    p: &MultiPoly<R>,
    f: &mut fmt::Formatter<'_>,
) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let terms: Vec<_> = p.terms().collect();
    let mut first = true;
    for (m, c) in terms.into_iter().rev() {
        let (neg, mag) = if c.is_negative() {
            (true, c.neg())
        } else {
            (false, c.clone())
        };
        if first {
            if neg {
                write!(f, "-")?;
            }
            first = false;
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let mono = render_mono(m);
        let mag_str = mag.to_string();
        let mag_wrapped = if mag_str.contains(' ') {
            format!("({})", mag_str)
        } else {
            mag_str
        };
        match (mag == R::one(), mono.is_empty()) {
            (_, true) => write!(f, "{}", mag_wrapped)?,
            (true, false) => write!(f, "{}", mono)?,
            (false, false) => write!(f, "{}*{}", mag_wrapped, mono)?,
        }
    }
    Ok(())
}

fn render_mono(m: &Mono) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("x{}", i)),
            _ => parts.push(format!("x{}^{}", i, e)),
        }
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_example() {
        let p = parse_qt_poly("x0^2 + 3*t*x1^2", 2).unwrap();
        assert_eq!(p.to_string(), "x0^2 + 3*t*x1^2");
    }

    #[test]
    fn whitespace_and_fractions() {
        let p = parse_qpoly("  1/2 * x0  -  x1 ^ 2 ", 2).unwrap();
        assert_eq!(p.to_string(), "-x1^2 + 1/2*x0");
    }

    #[test]
    fn parenthesized_coefficients_round_trip() {
        let p = parse_qt_poly("(t^2 + t)*x0 - x1", 2).unwrap();
        let s = p.to_string();
        let q = parse_qt_poly(&s, 2).unwrap();
        assert_eq!(p, q);
        assert_eq!(s, "(t^2 + t)*x0 - x1");
    }

    #[test]
    fn rejects_t_in_rational_context() {
        assert!(parse_qpoly("t*x0", 1).is_err());
    }

    #[test]
    fn rejects_out_of_range_variables() {
        assert!(parse_qpoly("x2 + x0", 2).is_err());
    }

    #[test]
    fn rejects_trailing_garbage() {
        assert!(parse_qpoly("x0 + ", 1).is_err());
        assert!(parse_qpoly("x0 x1", 2).is_err());
    }
}
