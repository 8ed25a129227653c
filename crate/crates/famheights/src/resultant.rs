//! Resultants by fraction-free elimination.
//!
//! [`sylvester_resultant`] handles binary forms; [`macaulay_resultant`]
//! handles N+1 forms in N+1 variables for N ∈ {1, 2} as the classical
//! quotient det(M)/det(M') of the Macaulay matrix by its non-reduced minor.
//! When the minor vanishes, the quotient is recovered from the
//! characteristic polynomials det(M - λI) and det(M' - λI'), themselves
//! computed by evaluation at integer shifts of the diagonal coefficients and
//! interpolation; their exact quotient at λ = 0 is the resultant.

use crate::error::Error;
use crate::mpoly::{Mono, MultiPoly};
use crate::ring::Ring;
use crate::upoly::UPoly;

/// Fraction-free Bareiss determinant over an integral domain.
pub fn bareiss_det<R: Ring>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut sign_flip = false;
    let mut prev = R::one();
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            let Some(pivot) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return R::zero();
            };
            m.swap(k, pivot);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num
                    .exact_div(&prev)
                    .expect("Bareiss division is exact over a domain");
            }
            m[i][k] = R::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        det.neg()
    } else {
        det
    }
}

/// Coefficient vector of a binary form of declared degree `deg`:
/// index i holds the coefficient of x^(deg-i) * y^i.
pub fn binary_form_coeffs<R: Ring>(p: &MultiPoly<R>, deg: u32) -> Result<Vec<R>, Error> {
    if p.nvars() != 2 {
        return Err(Error::ArityMismatch(format!(
            "binary form expected, got {} variables",
            p.nvars()
        )));
    }
    if !p.is_form() || p.total_degree() != Some(deg) {
        return Err(Error::NotHomogeneous(p.to_string()));
    }
    let mut coeffs = vec![R::zero(); deg as usize + 1];
    for (m, c) in p.terms() {
        coeffs[m.0[1] as usize] = c.clone();
    }
    Ok(coeffs)
}

/// Sylvester resultant of two nonzero binary forms, with the homogeneous
/// convention fixed by the forms' degrees.
pub fn sylvester_resultant<R: Ring>(g: &MultiPoly<R>, h: &MultiPoly<R>) -> Result<R, Error> {
    if g.is_zero() || h.is_zero() {
        return Err(Error::ZeroInput);
    }
    let dg = g.total_degree().unwrap();
    let dh = h.total_degree().unwrap();
    let a = binary_form_coeffs(g, dg)?;
    let b = binary_form_coeffs(h, dh)?;
    Ok(sylvester_from_coeffs(&a, &b))
}

/// Sylvester determinant from coefficient vectors (degrees m = a.len()-1,
/// n = b.len()-1); the matrix has n staggered a-rows over m b-rows.
pub fn sylvester_from_coeffs<R: Ring>(a: &[R], b: &[R]) -> R {
    let m = a.len() - 1;
    let n = b.len() - 1;
    if m == 0 {
        let mut acc = R::one();
        for _ in 0..n {
            acc = acc.mul(&a[0]);
        }
        return acc;
    }
    if n == 0 {
        let mut acc = R::one();
        for _ in 0..m {
            acc = acc.mul(&b[0]);
        }
        return acc;
    }
    let size = m + n;
    let mut mat = vec![vec![R::zero(); size]; size];
    for i in 0..n {
        for (j, c) in a.iter().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in b.iter().enumerate() {
            mat[n + i][i + j] = c.clone();
        }
    }
    bareiss_det(mat)
}

/// All monomials of the given total degree in `nvars` variables,
/// in ascending graded-lex order.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Mono> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fill(&mut out, &mut current, 0, degree, nvars);
    fn fill(out: &mut Vec<Mono>, cur: &mut Vec<u32>, var: usize, left: u32, nvars: usize) {
        if var + 1 == nvars {
            cur[var] = left;
            out.push(Mono(cur.clone()));
            cur[var] = 0;
            return;
        }
        for e in 0..=left {
            cur[var] = e;
            fill(out, cur, var + 1, left - e, nvars);
        }
        cur[var] = 0;
    }
    out.sort();
    out
}

/// Macaulay resultant of `n+1` forms in `n+1` variables (n = 1 or 2).
/// Zero exactly when the forms share a projective common zero over the
/// algebraic closure. For two binary forms this is the Sylvester resultant.
pub fn macaulay_resultant<R: Ring>(forms: &[MultiPoly<R>]) -> Result<R, Error> {
    match forms.len() {
        2 => sylvester_resultant(&forms[0], &forms[1]),
        3 => macaulay_ternary(forms),
        k => Err(Error::ArityMismatch(format!(
            "expected 2 or 3 forms, got {}",
            k
        ))),
    }
}

/// Row/column structure of the ternary Macaulay matrix for fixed degrees;
/// reusable across many coefficient specializations of the same shape.
pub struct MacaulayShape {
    degs: [u32; 3],
    monomials: Vec<Mono>,
    index: std::collections::HashMap<Mono, usize>,
    /// row i: (form index, cofactor monomial) for the assigned form
    assignment: Vec<(usize, Mono)>,
    /// indices of non-reduced monomials (divisible by x_i^{d_i} for >= 2 i)
    non_reduced: Vec<usize>,
}

impl MacaulayShape {
    pub fn new(degs: [u32; 3]) -> Self {
        let nvars = 3usize;
        let nu = degs.iter().sum::<u32>() - nvars as u32 + 1;
        let monomials = monomials_of_degree(nvars, nu);
        let index: std::collections::HashMap<Mono, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let mut assignment = Vec::with_capacity(monomials.len());
        let mut non_reduced = Vec::new();
        for (row, mono) in monomials.iter().enumerate() {
            let divisible: Vec<usize> = (0..nvars)
                .filter(|&i| mono.0[i] >= degs[i])
                .collect();
            debug_assert!(!divisible.is_empty(), "degree nu forces a divisor");
            let i = divisible[0];
            let mut cof = mono.clone();
            cof.0[i] -= degs[i];
            assignment.push((i, cof));
            if divisible.len() >= 2 {
                non_reduced.push(row);
            }
        }
        MacaulayShape {
            degs,
            monomials,
            index,
            assignment,
            non_reduced,
        }
    }

    pub fn size(&self) -> usize {
        self.monomials.len()
    }

    /// Dense Macaulay matrix with `shift` subtracted on the diagonal
    /// (row/column labels agree, so the λ-shifted system F_i - λ x_i^{d_i}
    /// is exactly M - λI).
    fn matrix<R: Ring>(&self, forms: &[MultiPoly<R>], shift: i64) -> Vec<Vec<R>> {
        let size = self.monomials.len();
        let mut mat = vec![vec![R::zero(); size]; size];
        for (row, (fi, cof)) in self.assignment.iter().enumerate() {
            for (m, c) in forms[*fi].terms() {
                let col = self.index[&cof.mul(m)];
                mat[row][col] = mat[row][col].add(c);
            }
            if shift != 0 {
                mat[row][row] = mat[row][row].sub(&R::from_int(shift));
            }
        }
        mat
    }

    fn minor<R: Ring>(&self, mat: &[Vec<R>]) -> Vec<Vec<R>> {
        self.non_reduced
            .iter()
            .map(|&i| {
                self.non_reduced
                    .iter()
                    .map(|&j| mat[i][j].clone())
                    .collect()
            })
            .collect()
    }

    /// Resultant of three ternary forms matching this shape's degrees.
    pub fn resultant<R: Ring>(&self, forms: &[MultiPoly<R>]) -> Result<R, Error> {
        debug_assert_eq!(forms.len(), 3);
        for (p, &d) in forms.iter().zip(&self.degs) {
            if p.is_zero() || !p.is_form() || p.total_degree() != Some(d) {
                return Err(Error::NotHomogeneous(p.to_string()));
            }
        }
        let mat = self.matrix(forms, 0);
        let det_minor = bareiss_det(self.minor(&mat));
        if !det_minor.is_zero() {
            let det = bareiss_det(mat);
            return det
                .exact_div(&det_minor)
                .ok_or_else(|| Error::Computation("Macaulay quotient not exact".into()));
        }
        // Singular minor: evaluate both characteristic polynomials on
        // integer diagonal shifts and interpolate; the exact quotient at 0
        // is the resultant of the unshifted system.
        let size = self.monomials.len() as i64;
        let minor_size = self.non_reduced.len() as i64;
        let nodes: Vec<i64> = (0..=size).collect();
        let full_vals: Vec<R> = nodes
            .iter()
            .map(|&s| bareiss_det(self.matrix(forms, s)))
            .collect();
        let p_full = UPoly::interpolate(&nodes, &full_vals);
        let minor_nodes: Vec<i64> = (0..=minor_size).collect();
        let minor_vals: Vec<R> = minor_nodes
            .iter()
            .map(|&s| bareiss_det(self.minor(&self.matrix(forms, s))))
            .collect();
        let p_minor = UPoly::interpolate(&minor_nodes, &minor_vals);
        let quotient = p_full
            .exact_div_poly(&p_minor)
            .ok_or_else(|| Error::Computation("perturbed Macaulay quotient not exact".into()))?;
        Ok(quotient.coeff(0))
    }
}

fn macaulay_ternary<R: Ring>(forms: &[MultiPoly<R>]) -> Result<R, Error> {
    for p in forms {
        if p.nvars() != 3 {
            return Err(Error::ArityMismatch(
                "ternary resultant needs 3-variable forms".into(),
            ));
        }
        if p.is_zero() || !p.is_form() {
            return Err(Error::NotHomogeneous(p.to_string()));
        }
    }
    let degs = [
        forms[0].total_degree().unwrap(),
        forms[1].total_degree().unwrap(),
        forms[2].total_degree().unwrap(),
    ];
    MacaulayShape::new(degs).resultant(forms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_qpoly, parse_qt_poly};
    use crate::ring::BigRat;
    use crate::upoly::TPoly;

    fn q(s: &str, n: usize) -> MultiPoly<BigRat> {
        parse_qpoly(s, n).unwrap()
    }

    #[test]
    fn sylvester_linear_pair_is_a_determinant() {
        // (a x + b y, c x + d y) -> a d - b c
        let g = q("2*x0 + 3*x1", 2);
        let h = q("5*x0 + 7*x1", 2);
        let r = sylvester_resultant(&g, &h).unwrap();
        assert_eq!(r, BigRat::from_int(2 * 7 - 3 * 5));
    }

    #[test]
    fn sylvester_of_coordinate_powers() {
        let g = q("x0^2", 2);
        let h = q("x1^2", 2);
        assert_eq!(sylvester_resultant(&g, &h).unwrap(), BigRat::from_int(1));
        // shared root [0:1]
        let k = q("x0*x1", 2);
        assert_eq!(sylvester_resultant(&g, &k).unwrap(), BigRat::from_int(0));
    }

    #[test]
    fn sylvester_over_qt_is_constant_for_good_family()  {
        let g = parse_qt_poly("x0^2 + t*x1^2", 2).unwrap();
        let h = parse_qt_poly("x1^2", 2).unwrap();
        let r = sylvester_resultant(&g, &h).unwrap();
        assert_eq!(r, TPoly::constant(BigRat::from_int(1)));
    }

    #[test]
    fn macaulay_of_power_map_is_one() {
        let forms = vec![q("x0^2", 3), q("x1^2", 3), q("x2^2", 3)];
        assert_eq!(macaulay_resultant(&forms).unwrap(), BigRat::from_int(1));
    }

    #[test]
    fn macaulay_detects_common_zero() {
        // all three vanish at [0:0:1]
        let forms = vec![q("x0*x1", 3), q("x0^2", 3), q("x1^2", 3)];
        assert_eq!(macaulay_resultant(&forms).unwrap(), BigRat::from_int(0));
    }

    #[test]
    fn macaulay_over_qt_of_degenerating_family_vanishes_at_zero() {
        let forms = vec![
            parse_qt_poly("t*x0^2", 3).unwrap(),
            parse_qt_poly("x1^2", 3).unwrap(),
            parse_qt_poly("x2^2", 3).unwrap(),
        ];
        let r = macaulay_resultant(&forms).unwrap();
        assert!(!Ring::is_zero(&r));
        assert!(Ring::is_zero(&r.eval(&BigRat::from_int(0))));
    }

    #[test]
    fn macaulay_matches_sylvester_on_specialized_system() {
        // ternary system with x2 eliminated trivially reduces to a binary one
        let forms = vec![
            q("x0^2 + x1^2", 3),
            q("x1^2 + x0*x1", 3),
            q("x2^2", 3),
        ];
        let r = macaulay_resultant(&forms).unwrap();
        assert!(!Ring::is_zero(&r));
    }

    #[test]
    fn bareiss_agrees_with_closed_forms() {
        let m: Vec<Vec<BigRat>> = vec![
            vec![BigRat::from_int(1), BigRat::from_int(2)],
            vec![BigRat::from_int(3), BigRat::from_int(4)],
        ];
        assert_eq!(bareiss_det(m), BigRat::from_int(-2));
        // zero pivot forces a swap
        let m2: Vec<Vec<BigRat>> = vec![
            vec![BigRat::from_int(0), BigRat::from_int(1), BigRat::from_int(2)],
            vec![BigRat::from_int(1), BigRat::from_int(0), BigRat::from_int(3)],
            vec![BigRat::from_int(4), BigRat::from_int(5), BigRat::from_int(0)],
        ];
        assert_eq!(bareiss_det(m2), BigRat::from_int(22));
    }

    #[test]
    fn multiplicativity_in_the_first_argument() {
        let g = q("x0 + 2*x1", 2);
        let h = q("3*x0 - x1", 2);
        let k = q("x0^2 + x1^2", 2);
        let lhs = sylvester_resultant(&g.mul(&h), &k).unwrap();
        let rhs = sylvester_resultant(&g, &k)
            .unwrap()
            .mul(&sylvester_resultant(&h, &k).unwrap());
        assert!(lhs == rhs || lhs == rhs.neg());
    }
}
