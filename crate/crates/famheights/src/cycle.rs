//! Hypersurface cycles: formal integer combinations of primitive forms.

use crate::error::Error;
use crate::mpoly::{cmp_forms, normalize_primitive, MultiPoly, PrimitiveForm};
use crate::ring::Ring;

/// Effective cycle of codimension 1 in P^N: a list of (primitive form,
/// multiplicity) pairs with pairwise distinct forms and positive total
/// degree. For N = 1 these are point cycles, for N = 2 plane-curve cycles.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HypersurfaceCycle<R: Ring> {
    ambient: usize,
    components: Vec<(PrimitiveForm<R>, u32)>,
}

impl<R: Ring> HypersurfaceCycle<R> {
    /// Build a cycle from raw forms with multiplicities; each form is
    /// primitivized, proportional forms merge by adding multiplicities.
    pub fn new(ambient: usize, parts: Vec<(MultiPoly<R>, u32)>) -> Result<Self, Error> {
        if !(1..=2).contains(&ambient) {
            return Err(Error::InvalidCycle(format!(
                "ambient dimension must be 1 or 2, got {}",
                ambient
            )));
        }
        let mut components: Vec<(PrimitiveForm<R>, u32)> = Vec::new();
        for (raw, mult) in parts {
            if mult == 0 {
                continue;
            }
            if raw.nvars() != ambient + 1 {
                return Err(Error::InvalidCycle(format!(
                    "component has {} variables, expected {}",
                    raw.nvars(),
                    ambient + 1
                )));
            }
            let (_, prim) = normalize_primitive(&raw)?;
            match components.iter_mut().find(|(p, _)| *p == prim) {
                Some((_, m)) => *m += mult,
                None => components.push((prim, mult)),
            }
        }
        if components.is_empty() {
            return Err(Error::InvalidCycle("empty cycle".into()));
        }
        components.sort_by(|a, b| cmp_forms(a.0.form(), b.0.form()).then(a.1.cmp(&b.1)));
        Ok(HypersurfaceCycle {
            ambient,
            components,
        })
    }

    /// Single-component cycle with multiplicity 1.
    pub fn from_form(ambient: usize, form: MultiPoly<R>) -> Result<Self, Error> {
        Self::new(ambient, vec![(form, 1)])
    }

    /// Ambient dimension N (the cycle itself has dimension N-1).
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn components(&self) -> &[(PrimitiveForm<R>, u32)] {
        &self.components
    }

    /// Total degree m = sum of multiplicity * deg(component).
    pub fn total_degree(&self) -> u32 {
        self.components
            .iter()
            .map(|(p, m)| p.degree() * m)
            .sum()
    }

    /// The defining form of the whole cycle: product of component forms with
    /// multiplicities. Two cycles are equal iff their product forms agree.
    pub fn product_form(&self) -> MultiPoly<R> {
        let mut acc = MultiPoly::constant(self.ambient + 1, R::one());
        for (p, m) in &self.components {
            acc = acc.mul(&p.form().pow(*m));
        }
        acc
    }

    pub fn map_coeffs<S: Ring>(
        &self,
        f: impl Fn(&R) -> S + Copy,
    ) -> Result<HypersurfaceCycle<S>, Error> {
        HypersurfaceCycle::new(
            self.ambient,
            self.components
                .iter()
                .map(|(p, m)| (p.form().map_coeffs(f), *m))
                .collect(),
        )
    }
}

impl<R: Ring> std::fmt::Display for HypersurfaceCycle<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, (p, m)) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *m != 1 {
                write!(f, "{}*", m)?;
            }
            write!(f, "div({})", p.form())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_qpoly;
    use crate::ring::BigRat;

    #[test]
    fn proportional_components_merge() {
        let y = HypersurfaceCycle::new(
            1,
            vec![
                (parse_qpoly("2*x0", 2).unwrap(), 1),
                (parse_qpoly("-x0", 2).unwrap(), 2),
            ],
        )
        .unwrap();
        assert_eq!(y.components().len(), 1);
        assert_eq!(y.components()[0].1, 3);
        assert_eq!(y.total_degree(), 3);
        let _ = BigRat::from_int(0);
    }

    #[test]
    fn product_form_encodes_the_cycle() {
        let y = HypersurfaceCycle::new(
            1,
            vec![
                (parse_qpoly("x0", 2).unwrap(), 2),
                (parse_qpoly("x0 - x1", 2).unwrap(), 1),
            ],
        )
        .unwrap();
        let p = y.product_form();
        assert_eq!(p, parse_qpoly("x0^3 - x0^2*x1", 2).unwrap());
        assert_eq!(y.to_string(), "2*div(x0) + div(x0 - x1)");
    }

    #[test]
    fn empty_and_wrong_arity_rejected() {
        assert!(HypersurfaceCycle::<BigRat>::new(1, vec![]).is_err());
        assert!(
            HypersurfaceCycle::new(2, vec![(parse_qpoly("x0", 2).unwrap(), 1)]).is_err()
        );
    }
}
