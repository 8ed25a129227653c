//! Endomorphisms of projective space given by tuples of forms.

use crate::error::Error;
use crate::mpoly::{compose_forms, MultiPoly};
use crate::resultant::macaulay_resultant;
use crate::ring::Ring;

/// A degree-d morphism of P^N (N = 1 or 2): N+1 forms of common degree d in
/// x0..xN with integrally normalized coefficients, joint content 1, and
/// nonvanishing resultant (no common projective zero over the closure).
///
/// The forms are normalized jointly (a single scalar), which leaves the
/// underlying map unchanged; individual forms need not be primitive.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjMorphism<R: Ring> {
    dim: usize,
    degree: u32,
    forms: Vec<MultiPoly<R>>,
    res: R,
}

impl<R: Ring> ProjMorphism<R> {
    pub fn new(forms: Vec<MultiPoly<R>>) -> Result<Self, Error> {
        let n_plus_1 = forms.len();
        if n_plus_1 < 2 || n_plus_1 > 3 {
            return Err(Error::InvalidMorphism(format!(
                "expected 2 or 3 forms (ambient P^1 or P^2), got {}",
                n_plus_1
            )));
        }
        let dim = n_plus_1 - 1;
        let mut degree = None;
        for p in &forms {
            if p.is_zero() || !p.is_form() {
                return Err(Error::InvalidMorphism(format!(
                    "component is not a nonzero form: {}",
                    p
                )));
            }
            if p.nvars() != n_plus_1 {
                return Err(Error::InvalidMorphism(format!(
                    "component has {} variables, expected {}",
                    p.nvars(),
                    n_plus_1
                )));
            }
            let d = p.total_degree().unwrap();
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 != d => {
                    return Err(Error::InvalidMorphism(
                        "components have different degrees".into(),
                    ))
                }
                _ => {}
            }
        }
        let degree = degree.unwrap();
        if degree < 2 {
            return Err(Error::InvalidMorphism(format!(
                "degree must be >= 2, got {}",
                degree
            )));
        }
        // joint normalization: one scalar across all forms
        let mut content = R::zero();
        for p in &forms {
            content = content.gcd(&p.content());
        }
        let lead_neg = forms[0]
            .leading()
            .map_or(false, |(_, c)| c.is_negative());
        if lead_neg {
            content = content.neg();
        }
        let forms: Vec<_> = forms
            .iter()
            .map(|p| p.map_coeffs(|c| c.exact_div(&content).expect("joint content divides")))
            .collect();
        let res = macaulay_resultant(&forms)?;
        if res.is_zero() {
            return Err(Error::InvalidMorphism(
                "forms share a projective zero (vanishing resultant)".into(),
            ));
        }
        Ok(ProjMorphism {
            dim,
            degree,
            forms,
            res,
        })
    }

    /// Ambient dimension N.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Algebraic degree d.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn forms(&self) -> &[MultiPoly<R>] {
        &self.forms
    }

    /// The (joint-normalized) Macaulay resultant of the defining forms.
    pub fn resultant(&self) -> &R {
        &self.res
    }

    /// Composition f ∘ g (apply g first), renormalized.
    pub fn compose(&self, inner: &Self) -> Result<Self, Error> {
        if self.dim != inner.dim {
            return Err(Error::ArityMismatch(
                "composition of maps on different ambients".into(),
            ));
        }
        Self::new(compose_forms(&self.forms, &inner.forms)?)
    }

    /// Canonical text key (used for certificate caching).
    pub fn cache_key(&self) -> String {
        let parts: Vec<String> = self.forms.iter().map(|p| p.to_string()).collect();
        format!("P{};d{};[{}]", self.dim, self.degree, parts.join(" ; "))
    }
}

impl<R: Ring> std::fmt::Display for ProjMorphism<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.forms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_qpoly, parse_qt_poly};
    use crate::ring::BigRat;

    #[test]
    fn joint_normalization_preserves_ratios() {
        let f = ProjMorphism::new(vec![
            parse_qpoly("4*x0^2", 2).unwrap(),
            parse_qpoly("6*x1^2", 2).unwrap(),
        ])
        .unwrap();
        assert_eq!(f.forms()[0], parse_qpoly("2*x0^2", 2).unwrap());
        assert_eq!(f.forms()[1], parse_qpoly("3*x1^2", 2).unwrap());
    }

    #[test]
    fn rejects_degenerate_forms() {
        let err = ProjMorphism::new(vec![
            parse_qpoly("x0*x1", 2).unwrap(),
            parse_qpoly("x0^2", 2).unwrap(),
        ]);
        assert!(matches!(err, Err(Error::InvalidMorphism(_))));
    }

    #[test]
    fn composition_multiplies_degrees() {
        let f = ProjMorphism::new(vec![
            parse_qt_poly("x0^2 + t*x1^2", 2).unwrap(),
            parse_qt_poly("x1^2", 2).unwrap(),
        ])
        .unwrap();
        let ff = f.compose(&f).unwrap();
        assert_eq!(ff.degree(), 4);
        // (x0^2 + t x1^2)^2 + t x1^4
        let expected = parse_qt_poly("(x0^2 + t*x1^2)^2 + t*x1^4", 2).unwrap();
        assert_eq!(ff.forms()[0], expected);
    }

    #[test]
    fn rejects_linear_maps() {
        let err = ProjMorphism::new(vec![
            parse_qpoly("x0", 2).unwrap(),
            parse_qpoly("x1", 2).unwrap(),
        ]);
        assert!(matches!(err, Err(Error::InvalidMorphism(_))));
        let _ = BigRat::from_int(0);
    }
}
