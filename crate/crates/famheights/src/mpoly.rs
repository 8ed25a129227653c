//! Sparse multivariate polynomials over a [`Ring`], with the primitive-form
//! normalization, composition and evaluation used by morphisms and divisors.
//!
//! Terms are kept in a `BTreeMap` keyed by graded-lexicographic monomials,
//! so iteration order (and therefore display and sign conventions) is
//! deterministic. The "first nonzero coefficient" of the sign convention is
//! the graded-lex leading term.

use crate::error::Error;
use crate::ring::{BigRat, Ring};
use crate::upoly::UPoly;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector; ordered by total degree, then lexicographically with
/// the first variable most significant.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(nvars: usize) -> Self {
        Mono(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Mono(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.0.len().max(rhs.0.len());
        Mono((0..n).map(|i| self.exp(i) + rhs.exp(i)).collect())
    }

    pub fn divides(&self, rhs: &Self) -> bool {
        let n = self.0.len().max(rhs.0.len());
        (0..n).all(|i| self.exp(i) <= rhs.exp(i))
    }

    /// rhs / self, assuming divisibility.
    pub fn div_into(&self, rhs: &Self) -> Self {
        let n = self.0.len().max(rhs.0.len());
        Mono((0..n).map(|i| rhs.exp(i) - self.exp(i)).collect())
    }

    fn exp(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial; no zero coefficients stored, all
/// exponent vectors of length `nvars`.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly<R: Ring> {
    nvars: usize,
    terms: BTreeMap<Mono, R>,
}

impl<R: Ring> MultiPoly<R> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: R) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Mono::one(nvars), c);
        }
        p
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut p = Self::zero(nvars);
        p.terms.insert(Mono::var(nvars, i), R::one());
        p
    }

    pub fn monomial(nvars: usize, m: Mono, c: R) -> Self {
        assert_eq!(m.0.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Mono, R)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &R)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> R {
        self.terms.get(m).cloned().unwrap_or_else(R::zero)
    }

    /// Rebuild with the given variable count (monomials zero-padded). Only
    /// widening is meaningful; shrinking asserts the dropped slots are unused.
    pub fn promoted(&self, nvars: usize) -> Self {
        if nvars == self.nvars {
            return self.clone();
        }
        let mut out = Self::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            if e.len() > nvars {
                assert!(e[nvars..].iter().all(|&x| x == 0));
                e.truncate(nvars);
            } else {
                e.resize(nvars, 0);
            }
            out.terms.insert(Mono(e), c.clone());
        }
        out
    }

    pub fn add_term(&mut self, mut m: Mono, c: R) {
        if m.0.len() != self.nvars {
            if m.0.len() > self.nvars {
                let n = m.0.len();
                *self = self.promoted(n);
            } else {
                m.0.resize(self.nvars, 0);
            }
        }
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Graded-lex leading term.
    pub fn leading(&self) -> Option<(&Mono, &R)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).max()
    }

    /// Nonzero and all terms of equal total degree.
    pub fn is_form(&self) -> bool {
        let mut degs = self.terms.keys().map(Mono::degree);
        match degs.next() {
            None => false,
            Some(d0) => degs.all(|d| d == d0),
        }
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> MultiPoly<S> {
        MultiPoly::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        )
    }

    pub fn mul_coeff(&self, c: &R) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))),
        )
    }

    pub fn mul_mono(&self, m: &Mono) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.nvars, R::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact evaluation at ring elements (one per variable).
    pub fn eval(&self, point: &[R]) -> R {
        assert_eq!(point.len(), self.nvars);
        let mut acc = R::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&point[i]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Substitute each variable by the corresponding polynomial.
    pub fn substitute(&self, subs: &[Self]) -> Self {
        assert_eq!(subs.len(), self.nvars);
        let out_vars = subs
            .first()
            .map(|p| p.nvars)
            .unwrap_or(self.nvars);
        // cache powers per variable up to the maximum exponent used
        let mut pows: Vec<Vec<Self>> = Vec::with_capacity(self.nvars);
        for (i, sub) in subs.iter().enumerate() {
            let maxe = self.degree_in(i);
            let mut v = Vec::with_capacity(maxe as usize + 1);
            v.push(Self::constant(out_vars, R::one()));
            for e in 1..=maxe {
                let next = v[(e - 1) as usize].mul(sub);
                v.push(next);
            }
            pows.push(v);
        }
        let mut acc = Self::zero(out_vars);
        for (m, c) in &self.terms {
            let mut term = Self::constant(out_vars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&pows[i][e as usize]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] -= 1;
            out.add_term(m2, c.mul(&R::from_int(e as i64)));
        }
        out
    }

    /// Content: canonical non-negative gcd of all coefficients.
    pub fn content(&self) -> R {
        let mut g = R::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
        }
        g
    }

    /// Divide out the signed content so the leading coefficient is positive;
    /// returns `(scale, primitive)` with `scale * primitive == self`.
    pub fn primitive(&self) -> (R, Self) {
        if self.is_zero() {
            return (R::zero(), self.clone());
        }
        let mut c = self.content();
        if self.leading().map_or(false, |(_, lc)| lc.is_negative()) {
            c = c.neg();
        }
        let prim = self.map_coeffs(|a| a.exact_div(&c).expect("content divides"));
        (c, prim)
    }

    /// Multivariate exact division; `None` when the division has a
    /// nonzero remainder.
    pub fn exact_div_poly(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let n = self.nvars.max(rhs.nvars);
        let mut rem = self.promoted(n);
        let rhs = rhs.promoted(n);
        let mut quot = Self::zero(n);
        let (lm, lc) = {
            let (m, c) = rhs.leading().unwrap();
            (m.clone(), c.clone())
        };
        while let Some((rm, rc)) = rem.leading() {
            if !lm.divides(rm) {
                return None;
            }
            let q = rc.exact_div(&lc)?;
            let qm = lm.div_into(rm);
            let piece = Self::monomial(n, qm, q);
            rem = rem.sub(&rhs.mul(&piece));
            quot = quot.add(&piece);
        }
        Some(quot)
    }

    /// View as a univariate polynomial in `var`; coefficients keep the same
    /// variable count with exponent 0 in `var`.
    pub fn to_upoly(&self, var: usize) -> UPoly<Self> {
        let d = self.degree_in(var) as usize;
        let mut coeffs = vec![Self::zero(self.nvars); d + 1];
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            let mut m2 = m.clone();
            m2.0[var] = 0;
            coeffs[e].add_term(m2, c.clone());
        }
        UPoly::from_coeffs(coeffs)
    }

    pub fn from_upoly(var: usize, up: &UPoly<Self>, nvars: usize) -> Self {
        let mut out = Self::zero(nvars);
        for (e, c) in up.coeffs().iter().enumerate() {
            for (m, a) in &c.terms {
                let mut m2 = m.clone();
                m2.0[var] += e as u32;
                out.add_term(m2, a.clone());
            }
        }
        out
    }

    fn vars_used(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&v| self.degree_in(v) > 0)
            .collect()
    }

    /// Multivariate gcd via primitive pseudo-remainder sequences, recursing
    /// on the main variable. Canonical output: primitive with positive
    /// leading coefficient (content gcd of the inputs retained).
    pub fn gcd_poly(&self, rhs: &Self) -> Self {
        if self.nvars != rhs.nvars {
            let n = self.nvars.max(rhs.nvars);
            return self.promoted(n).gcd_poly(&rhs.promoted(n));
        }
        if self.is_zero() {
            let (_, p) = rhs.primitive();
            return p.mul_coeff(&rhs.content());
        }
        if rhs.is_zero() {
            let (_, p) = self.primitive();
            return p.mul_coeff(&self.content());
        }
        let mut vars = self.vars_used();
        for v in rhs.vars_used() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        if vars.is_empty() {
            // both constants
            let a = self.leading().unwrap().1.clone();
            let b = rhs.leading().unwrap().1.clone();
            return Self::constant(self.nvars, a.gcd(&b));
        }
        let v = vars[0];
        let ua = self.to_upoly(v);
        let ub = rhs.to_upoly(v);
        let g = ua.gcd_poly(&ub);
        let out = Self::from_upoly(v, &g, self.nvars);
        let (_, p) = out.primitive();
        p.mul_coeff(&out.content())
    }

    /// Squarefree decomposition `self = unit * prod_i part_i^i` (Yun's
    /// algorithm in the least variable present, recursing on the content).
    /// Parts are primitive with positive leading coefficient; the unit is
    /// dropped. Output sorted by multiplicity, then by form.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let mut parts: Vec<(Self, u32)> = Vec::new();
        self.squarefree_into(&mut parts);
        // merge repeats (content vs. primitive part can in principle repeat a
        // factor), then order deterministically
        parts.sort_by(|a, b| cmp_forms(&a.0, &b.0));
        let mut merged: Vec<(Self, u32)> = Vec::new();
        for (p, m) in parts {
            if let Some(last) = merged.last_mut() {
                if last.0 == p {
                    last.1 += m;
                    continue;
                }
            }
            merged.push((p, m));
        }
        merged.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| cmp_forms(&a.0, &b.0)));
        merged
    }

    fn squarefree_into(&self, parts: &mut Vec<(Self, u32)>) {
        if self.is_zero() {
            return;
        }
        let vars = self.vars_used();
        if vars.is_empty() {
            return; // constant: unit, dropped
        }
        let v = vars[0];
        // split off the factors free of v (the content in v), recurse on them
        let mut cont = Self::constant(self.nvars, R::one());
        {
            let up = self.to_upoly(v);
            let mut g = Self::zero(self.nvars);
            for c in up.coeffs() {
                g = g.gcd_poly(c);
            }
            if !g.is_zero() {
                cont = g;
            }
        }
        let pp = self.exact_div_poly(&cont).expect("content divides");
        if !cont.vars_used().is_empty() {
            cont.squarefree_into(parts);
        }
        // Yun's loop on pp with respect to v
        let deriv = pp.derivative(v);
        let g = pp.gcd_poly(&deriv);
        let mut b = pp.exact_div_poly(&g).expect("gcd divides");
        let c = deriv.exact_div_poly(&g).expect("gcd divides");
        let mut d = c.sub(&b.derivative(v));
        let max_iter = pp.degree_in(v) + 1;
        let mut i = 1u32;
        loop {
            let a = b.gcd_poly(&d);
            if a.degree_in(v) > 0 {
                let (_, p) = a.primitive();
                parts.push((p, i));
            }
            b = b.exact_div_poly(&a).expect("factor divides");
            if b.degree_in(v) == 0 {
                break;
            }
            let c_next = d.exact_div_poly(&a).expect("factor divides");
            d = c_next.sub(&b.derivative(v));
            i += 1;
            assert!(i <= max_iter, "squarefree decomposition did not terminate");
        }
    }
}

impl MultiPoly<BigRat> {
    /// Evaluate an integer-coefficient polynomial at big-integer coordinates.
    pub fn eval_int(&self, point: &[num_bigint::BigInt]) -> num_bigint::BigInt {
        use num_bigint::BigInt;
        use num_traits::{One, Zero};
        assert_eq!(point.len(), self.nvars);
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            debug_assert!(c.is_integer());
            let mut term = c.numer().clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let mut pow = BigInt::one();
                    let mut base = point[i].clone();
                    let mut k = e;
                    while k > 0 {
                        if k & 1 == 1 {
                            pow = &pow * &base;
                        }
                        base = &base * &base;
                        k >>= 1;
                    }
                    term *= pow;
                }
            }
            acc += term;
        }
        acc
    }
}

/// Deterministic total order on polynomials (degree, then term list).
pub fn cmp_forms<R: Ring>(a: &MultiPoly<R>, b: &MultiPoly<R>) -> Ordering {
    a.total_degree()
        .cmp(&b.total_degree())
        .then_with(|| a.num_terms().cmp(&b.num_terms()))
        .then_with(|| a.to_string().cmp(&b.to_string()))
}

impl<R: Ring> Ring for MultiPoly<R> {
    fn zero() -> Self {
        MultiPoly::zero(0)
    }
    fn one() -> Self {
        MultiPoly::constant(0, R::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
    fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }
    fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.nvars.max(rhs.nvars));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        self.exact_div_poly(rhs)
    }
    fn gcd(&self, rhs: &Self) -> Self {
        self.gcd_poly(rhs)
    }
    fn is_negative(&self) -> bool {
        self.leading().map_or(false, |(_, c)| c.is_negative())
    }
    fn from_int(n: i64) -> Self {
        MultiPoly::constant(0, R::from_int(n))
    }
    fn mul_rat(&self, r: &BigRat) -> Self {
        self.map_coeffs(|c| c.mul_rat(r))
    }
}

// `Ring::zero()` has no variable-count information, so zero/one from the
// trait use nvars = 0; arithmetic tolerates mixed counts by taking the max.
// Code that constructs polynomials directly always passes an explicit count.

impl<R: Ring> fmt::Display for MultiPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::parse::display_poly(self, f)
    }
}

impl<R: Ring> fmt::Debug for MultiPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Homogeneous polynomial with content 1 and positive graded-lex leading
/// coefficient; the canonical representative of a divisor.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PrimitiveForm<R: Ring> {
    form: MultiPoly<R>,
    degree: u32,
}

impl<R: Ring> PrimitiveForm<R> {
    pub fn form(&self) -> &MultiPoly<R> {
        &self.form
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn into_form(self) -> MultiPoly<R> {
        self.form
    }
}

impl<R: Ring> fmt::Display for PrimitiveForm<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.form.fmt(f)
    }
}

/// Strip the signed content from a nonzero homogeneous polynomial.
///
/// Returns `(scale, primitive)` with `scale * primitive == input`, where the
/// primitive form has coefficient content 1 and positive leading coefficient.
pub fn normalize_primitive<R: Ring>(p: &MultiPoly<R>) -> Result<(R, PrimitiveForm<R>), Error> {
    if p.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !p.is_form() {
        return Err(Error::NotHomogeneous(p.to_string()));
    }
    let (scale, form) = p.primitive();
    let degree = form.total_degree().unwrap();
    Ok((scale, PrimitiveForm { form, degree }))
}

/// Substitute the variables of each `F_i` by the forms `G`; for homogeneous
/// inputs of degrees d and e the outputs are homogeneous of degree d*e.
pub fn compose_forms<R: Ring>(
    outer: &[MultiPoly<R>],
    inner: &[MultiPoly<R>],
) -> Result<Vec<MultiPoly<R>>, Error> {
    let Some(first) = outer.first() else {
        return Ok(vec![]);
    };
    if first.nvars() != inner.len() {
        return Err(Error::ArityMismatch(format!(
            "{} outer variables vs {} inner forms",
            first.nvars(),
            inner.len()
        )));
    }
    for p in outer {
        if p.nvars() != first.nvars() {
            return Err(Error::ArityMismatch("uneven outer arity".into()));
        }
    }
    Ok(outer.iter().map(|p| p.substitute(inner)).collect())
}

/// Exact evaluation of a tuple of polynomials at a point.
pub fn evaluate_forms<R: Ring>(forms: &[MultiPoly<R>], coords: &[R]) -> Result<Vec<R>, Error> {
    for p in forms {
        if p.nvars() != coords.len() {
            return Err(Error::ArityMismatch(format!(
                "{} variables vs {} coordinates",
                p.nvars(),
                coords.len()
            )));
        }
    }
    Ok(forms.iter().map(|p| p.eval(coords)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_qpoly;

    #[test]
    fn primitive_extracts_integer_content() {
        let p = parse_qpoly("2*x0 + 4*x1 + 6*x2", 3).unwrap();
        let (scale, prim) = normalize_primitive(&p).unwrap();
        assert_eq!(scale, BigRat::from_int(2));
        assert_eq!(prim.form(), &parse_qpoly("x0 + 2*x1 + 3*x2", 3).unwrap());
    }

    #[test]
    fn primitive_is_idempotent_and_fixes_sign() {
        let p = parse_qpoly("x0 - x1", 2).unwrap();
        let (scale, prim) = normalize_primitive(&p).unwrap();
        assert_eq!(scale, BigRat::from_int(1));
        assert_eq!(prim.form(), &p);
        let (s2, p2) = normalize_primitive(prim.form()).unwrap();
        assert_eq!(s2, BigRat::from_int(1));
        assert_eq!(p2.form(), prim.form());

        let q = parse_qpoly("-3/2*x0^2", 2).unwrap();
        let (s, pf) = normalize_primitive(&q).unwrap();
        assert_eq!(s, BigRat::new((-3).into(), 2.into()));
        assert_eq!(pf.form(), &parse_qpoly("x0^2", 2).unwrap());
    }

    #[test]
    fn zero_input_is_rejected() {
        assert!(matches!(
            normalize_primitive(&MultiPoly::<BigRat>::zero(2)),
            Err(Error::ZeroInput)
        ));
    }

    #[test]
    fn compose_power_maps() {
        let f = vec![
            parse_qpoly("x0^2", 2).unwrap(),
            parse_qpoly("x1^2", 2).unwrap(),
        ];
        let out = compose_forms(&f, &f).unwrap();
        assert_eq!(out[0], parse_qpoly("x0^4", 2).unwrap());
        assert_eq!(out[1], parse_qpoly("x1^4", 2).unwrap());
    }

    #[test]
    fn compose_identity_returns_inner() {
        let id = vec![
            parse_qpoly("x0", 2).unwrap(),
            parse_qpoly("x1", 2).unwrap(),
        ];
        let g = vec![
            parse_qpoly("x0^2 + x1^2", 2).unwrap(),
            parse_qpoly("x0*x1", 2).unwrap(),
        ];
        assert_eq!(compose_forms(&id, &g).unwrap(), g);
    }

    #[test]
    fn evaluate_forms_examples() {
        let f = vec![
            parse_qpoly("x0^2 + x1^2", 2).unwrap(),
            parse_qpoly("x0*x1", 2).unwrap(),
        ];
        let vals = evaluate_forms(&f, &[BigRat::from_int(1), BigRat::from_int(2)]).unwrap();
        assert_eq!(vals, vec![BigRat::from_int(5), BigRat::from_int(2)]);
        let zeros = evaluate_forms(&f, &[BigRat::from_int(0), BigRat::from_int(0)]).unwrap();
        assert!(zeros.iter().all(|v| Ring::is_zero(v)));
    }

    #[test]
    fn exact_division_detects_remainders() {
        let p = parse_qpoly("x0^2 - x1^2", 2).unwrap();
        let d = parse_qpoly("x0 - x1", 2).unwrap();
        let q = p.exact_div_poly(&d).unwrap();
        assert_eq!(q, parse_qpoly("x0 + x1", 2).unwrap());
        assert!(parse_qpoly("x0^2 + x1^2", 2)
            .unwrap()
            .exact_div_poly(&d)
            .is_none());
    }

    #[test]
    fn multivariate_gcd_of_products() {
        let a = parse_qpoly("x0^2 - x1^2", 2).unwrap(); // (x0-x1)(x0+x1)
        let b = parse_qpoly("x0^2 + 2*x0*x1 + x1^2", 2).unwrap(); // (x0+x1)^2
        let g = a.gcd_poly(&b);
        assert_eq!(g, parse_qpoly("x0 + x1", 2).unwrap());
    }

    #[test]
    fn squarefree_splits_powers() {
        let lin = parse_qpoly("x0 - x1", 2).unwrap();
        let quad = parse_qpoly("x0 + x1", 2).unwrap();
        let p = lin.pow(3).mul(&quad);
        let parts = p.squarefree_decomposition();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], (quad, 1));
        assert_eq!(parts[1], (lin, 3));
    }

    #[test]
    fn squarefree_handles_monomial_factors() {
        // x0^2 * (x0 + x1)
        let p = parse_qpoly("x0^3 + x0^2*x1", 2).unwrap();
        let parts = p.squarefree_decomposition();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].0, parse_qpoly("x0 + x1", 2).unwrap());
        assert_eq!(parts[0].1, 1);
        assert_eq!(parts[1].0, parse_qpoly("x0", 2).unwrap());
        assert_eq!(parts[1].1, 2);
    }
}
