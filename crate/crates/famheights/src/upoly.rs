//! Dense univariate polynomials over a [`Ring`].
//!
//! `TPoly = UPoly<BigRat>` is the parameter ring ℚ[t]; the same type with
//! other coefficient rings shows up internally (characteristic polynomials
//! in the resultant fallback, main-variable views in multivariate gcd).

use crate::ring::{BigRat, Ring};
use std::fmt;

/// Univariate polynomial, coefficient of degree `i` at index `i`,
/// no trailing zeros stored.
#[derive(Clone, PartialEq, Eq)]
pub struct UPoly<R: Ring> {
    coeffs: Vec<R>,
}

/// Elements of ℚ[t].
pub type TPoly = UPoly<BigRat>;

impl<R: Ring> UPoly<R> {
    pub fn from_coeffs(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().map_or(false, R::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn constant(c: R) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The variable itself.
    pub fn gen() -> Self {
        Self::from_coeffs(vec![R::zero(), R::one()])
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree with the convention deg 0 = 0 (for size bookkeeping).
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading_coeff(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::from_coeffs(vec![]);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&R::from_int(i as i64)))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> UPoly<S> {
        UPoly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    pub fn mul_coeff(&self, c: &R) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Content of the coefficient list (canonical non-negative gcd fold).
    pub fn content(&self) -> R {
        let mut g = R::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Primitive part with positive leading coefficient; returns
    /// `(scale, primitive)` with `scale * primitive == self`.
    pub fn primitive(&self) -> (R, Self) {
        if self.coeffs.is_empty() {
            return (R::zero(), self.clone());
        }
        let mut c = self.content();
        if self.leading_coeff().map_or(false, R::is_negative) {
            c = c.neg();
        }
        let prim = Self::from_coeffs(
            self.coeffs
                .iter()
                .map(|a| a.exact_div(&c).expect("content divides"))
                .collect(),
        );
        (c, prim)
    }

    /// Polynomial division when it is exact over R; `None` otherwise.
    pub fn exact_div_poly(&self, rhs: &Self) -> Option<Self> {
        if rhs.coeffs.is_empty() {
            return None;
        }
        if self.coeffs.is_empty() {
            return Some(Self::from_coeffs(vec![]));
        }
        let dr = rhs.coeffs.len() - 1;
        if self.coeffs.len() - 1 < dr {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![R::zero(); self.coeffs.len() - dr];
        let lc = rhs.leading_coeff().unwrap();
        let mut top = rem.len();
        while top > dr {
            let k = top - 1;
            if !rem[k].is_zero() {
                let q = rem[k].exact_div(lc)?;
                let shift = k - dr;
                for (i, c) in rhs.coeffs.iter().enumerate() {
                    rem[shift + i] = rem[shift + i].sub(&q.mul(c));
                }
                quot[shift] = q;
            }
            top = k;
        }
        if rem.iter().all(R::is_zero) {
            Some(Self::from_coeffs(quot))
        } else {
            None
        }
    }

    /// Pseudo-remainder: `lc(rhs)^(deg self - deg rhs + 1) * self mod rhs`.
    fn pseudo_rem(&self, rhs: &Self) -> Self {
        let dr = rhs.degree().expect("pseudo_rem by zero");
        let lc = rhs.leading_coeff().unwrap().clone();
        let mut rem = self.clone();
        while rem.degree().map_or(false, |d| d >= dr) {
            let d = rem.degree().unwrap();
            let top = rem.leading_coeff().unwrap().clone();
            // rem <- lc*rem - top * x^(d-dr) * rhs
            let mut next = vec![R::zero(); d.max(1)];
            next.resize(d + 1, R::zero());
            for (i, c) in rem.coeffs.iter().enumerate() {
                next[i] = c.mul(&lc);
            }
            for (i, c) in rhs.coeffs.iter().enumerate() {
                let j = i + d - dr;
                next[j] = next[j].sub(&top.mul(c));
            }
            rem = Self::from_coeffs(next);
        }
        rem
    }

    /// Gcd by primitive pseudo-remainder sequence; canonical output
    /// (primitive, positive leading coefficient).
    pub fn gcd_poly(&self, rhs: &Self) -> Self {
        if self.coeffs.is_empty() {
            return rhs.primitive_canonical();
        }
        if rhs.coeffs.is_empty() {
            return self.primitive_canonical();
        }
        let cont = self.content().gcd(&rhs.content());
        let (_, mut a) = self.primitive();
        let (_, mut b) = rhs.primitive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.coeffs.is_empty() {
            let r = a.pseudo_rem(&b);
            let (_, rp) = r.primitive();
            a = b;
            b = rp;
            if a.degree() < b.degree() {
                std::mem::swap(&mut a, &mut b);
            }
        }
        let (_, g) = a.primitive();
        g.mul_coeff(&cont)
    }

    fn primitive_canonical(&self) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let lead_neg = self.leading_coeff().map_or(false, R::is_negative);
        if lead_neg {
            self.map_coeffs(|c| c.neg())
        } else {
            self.clone()
        }
    }

    /// Newton interpolation on distinct integer nodes. Panics if node
    /// differences are not invertible against the values (they are for the
    /// coefficient rings used here, which contain ℚ).
    pub fn interpolate(nodes: &[i64], values: &[R]) -> Self {
        assert_eq!(nodes.len(), values.len());
        let n = nodes.len();
        // divided differences
        let mut dd: Vec<R> = values.to_vec();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = dd[i].sub(&dd[i - 1]);
                let den = nodes[i] - nodes[i - level];
                dd[i] = num.mul_rat(&BigRat::new(1.into(), den.into()));
            }
        }
        // Horner assembly of the Newton form
        let mut poly = Self::from_coeffs(vec![]);
        for i in (0..n).rev() {
            // poly = poly * (x - nodes[i]) + dd[i]
            let shifted = poly.mul(&Self::from_coeffs(vec![
                R::from_int(-nodes[i]),
                R::one(),
            ]));
            poly = shifted.add(&Self::constant(dd[i].clone()));
        }
        poly
    }
}

impl<R: Ring> Ring for UPoly<R> {
    fn zero() -> Self {
        UPoly { coeffs: vec![] }
    }
    fn one() -> Self {
        Self::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&rhs.coeff(i)));
        }
        Self::from_coeffs(out)
    }
    fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).sub(&rhs.coeff(i)));
        }
        Self::from_coeffs(out)
    }
    fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(out)
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        self.exact_div_poly(rhs)
    }
    fn gcd(&self, rhs: &Self) -> Self {
        self.gcd_poly(rhs)
    }
    fn is_negative(&self) -> bool {
        self.leading_coeff().map_or(false, R::is_negative)
    }
    fn from_int(n: i64) -> Self {
        Self::constant(R::from_int(n))
    }
    fn mul_rat(&self, r: &BigRat) -> Self {
        self.map_coeffs(|c| c.mul_rat(r))
    }
}

impl<R: Ring> fmt::Display for UPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", c.neg())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let mag_is_one = mag == R::one();
            match i {
                0 => write!(f, "{}", mag)?,
                1 if mag_is_one => write!(f, "t")?,
                1 => write!(f, "{}*t", mag)?,
                _ if mag_is_one => write!(f, "t^{}", i)?,
                _ => write!(f, "{}*t^{}", mag, i)?,
            }
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for UPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t_poly(coeffs: &[i64]) -> TPoly {
        TPoly::from_coeffs(coeffs.iter().map(|&c| BigRat::from_int(c)).collect())
    }

    #[test]
    fn exact_division_round_trip() {
        let a = t_poly(&[1, 2, 1]); // (t+1)^2
        let b = t_poly(&[1, 1]);
        let q = a.exact_div_poly(&b).unwrap();
        assert_eq!(q, b);
        assert!(t_poly(&[1, 0, 1]).exact_div_poly(&b).is_none());
    }

    #[test]
    fn gcd_of_products() {
        let a = t_poly(&[1, 1]).mul(&t_poly(&[-2, 1])); // (t+1)(t-2)
        let b = t_poly(&[1, 1]).mul(&t_poly(&[3, 1])); // (t+1)(t+3)
        assert_eq!(a.gcd_poly(&b), t_poly(&[1, 1]));
        // integer contents participate in the gcd
        let a2 = a.mul_coeff(&BigRat::from_int(2));
        let b2 = b.mul_coeff(&BigRat::from_int(4));
        assert_eq!(a2.gcd_poly(&b2), t_poly(&[2, 2]));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = t_poly(&[3, -2, 0, 5]);
        let nodes: Vec<i64> = (0..4).collect();
        let values: Vec<BigRat> = nodes
            .iter()
            .map(|&x| p.eval(&BigRat::from_int(x)))
            .collect();
        assert_eq!(TPoly::interpolate(&nodes, &values), p);
    }

    #[test]
    fn display_reads_naturally() {
        assert_eq!(t_poly(&[1, -2, 1]).to_string(), "t^2 - 2*t + 1");
        assert_eq!(t_poly(&[0, 1]).to_string(), "t");
        assert_eq!(TPoly::zero().to_string(), "0");
    }
}
