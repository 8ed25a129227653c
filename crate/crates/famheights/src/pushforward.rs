//! Divisor pushforward under a finite morphism of P^N, computed as a norm
//! form by elimination.
//!
//! For a single component div(G) of degree m:
//! - N=1: H(x0, x1) = Res_u(G(u), x0 F1(u) - x1 F0(u)), a binary form of
//!   degree m, computed by a symbolic Sylvester determinant.
//! - N=2: H is the degree-(m d) form with
//!   x_p^{m d} H = Res_u(G(u), { x_i F_p(u) - x_p F_i(u) }_{i != p}) for the
//!   pivot p. The right side is evaluated at an integer grid in the chart
//!   x_p = 1 (where the pivot-power factor is invisible) and H is recovered
//!   by bivariate interpolation at its contract degree. Pivots 1 and 2 are
//!   fallbacks, cross-checked by a gcd when the degree contract fails.
//!
//! The result is split into components by squarefree decomposition: the
//! image of an irreducible cycle is irreducible, so the pushforward of a
//! valid component is a prime power and the decomposition recovers its
//! support and multiplicity deg(f restricted to the component).

use crate::cycle::HypersurfaceCycle;
use crate::error::Error;
use crate::morphism::ProjMorphism;
use crate::mpoly::{Mono, MultiPoly, PrimitiveForm};
use crate::resultant::{binary_form_coeffs, sylvester_from_coeffs, MacaulayShape};
use crate::ring::Ring;
use crate::upoly::UPoly;

/// Hard cap on the Macaulay matrix dimension for a single elimination;
/// beyond this the iterated heights give up with a budget error instead of
/// stalling ((m + 2d - 2 + 2 choose 2) rows for inputs of degree m).
const MAX_MACAULAY_DIM: usize = 300;

/// Pushforward cycle f_* Y; total degree deg(Y) * d^(N-1).
pub fn pushforward_divisor<R: Ring>(
    f: &ProjMorphism<R>,
    y: &HypersurfaceCycle<R>,
) -> Result<HypersurfaceCycle<R>, Error> {
    if y.ambient() != f.dim() {
        return Err(Error::ArityMismatch(format!(
            "cycle in P^{} pushed by a morphism of P^{}",
            y.ambient(),
            f.dim()
        )));
    }
    let mut parts: Vec<(MultiPoly<R>, u32)> = Vec::new();
    for (comp, mult) in y.components() {
        let image = push_component(f, comp)?;
        for (form, e) in image.squarefree_decomposition() {
            if form.total_degree().unwrap_or(0) == 0 {
                continue;
            }
            parts.push((form, e * mult));
        }
    }
    let out = HypersurfaceCycle::new(f.dim(), parts)?;
    let expected = y.total_degree() * f.degree().pow(f.dim() as u32 - 1);
    if out.total_degree() != expected {
        return Err(Error::DegenerateElimination(format!(
            "pushforward degree {} != contract {}",
            out.total_degree(),
            expected
        )));
    }
    Ok(out)
}

fn push_component<R: Ring>(
    f: &ProjMorphism<R>,
    comp: &PrimitiveForm<R>,
) -> Result<MultiPoly<R>, Error> {
    match f.dim() {
        1 => push_component_p1(f, comp),
        2 => push_component_p2(f, comp),
        n => Err(Error::ArityMismatch(format!("unsupported ambient P^{}", n))),
    }
}

/// N = 1: symbolic Sylvester resultant over the coefficient ring R[x0, x1].
fn push_component_p1<R: Ring>(
    f: &ProjMorphism<R>,
    comp: &PrimitiveForm<R>,
) -> Result<MultiPoly<R>, Error> {
    type S<R> = MultiPoly<R>;
    let m = comp.degree();
    let d = f.degree();
    let g = binary_form_coeffs(comp.form(), m)?;
    let f0 = binary_form_coeffs(&f.forms()[0], d)?;
    let f1 = binary_form_coeffs(&f.forms()[1], d)?;
    let x0: S<R> = MultiPoly::variable(2, 0);
    let x1: S<R> = MultiPoly::variable(2, 1);
    let g_lift: Vec<S<R>> = g
        .iter()
        .map(|c| MultiPoly::constant(2, c.clone()))
        .collect();
    // x0 * F1 - x1 * F0, coefficientwise
    let aux: Vec<S<R>> = f0
        .iter()
        .zip(&f1)
        .map(|(a, b)| x0.mul_coeff(b).sub(&x1.mul_coeff(a)))
        .collect();
    let res = sylvester_from_coeffs(&g_lift, &aux);
    if res.is_zero() {
        return Err(Error::DegenerateElimination(format!(
            "vanishing resultant for component {}",
            comp.form()
        )));
    }
    if res.total_degree() != Some(m) || !res.is_form() {
        return Err(Error::DegenerateElimination(format!(
            "norm form has degree {:?}, expected {}",
            res.total_degree(),
            m
        )));
    }
    Ok(res)
}

/// N = 2: grid evaluation of the Macaulay resultant in the chart x_p = 1,
/// then bivariate interpolation at the contract degree m*d.
fn push_component_p2<R: Ring>(
    f: &ProjMorphism<R>,
    comp: &PrimitiveForm<R>,
) -> Result<MultiPoly<R>, Error> {
    let m = comp.degree();
    let d = f.degree();
    let shape = MacaulayShape::new([m, d, d]);
    if shape.size() > MAX_MACAULAY_DIM {
        return Err(Error::BudgetExceeded {
            detail: format!(
                "Macaulay matrix of dimension {} exceeds the cap {}",
                shape.size(),
                MAX_MACAULAY_DIM
            ),
            partial: vec![],
        });
    }
    let mut candidates: Vec<MultiPoly<R>> = Vec::new();
    for pivot in 0..3usize {
        match push_p2_pivot(f, comp, &shape, pivot)? {
            Some(h) => {
                if h.total_degree() == Some(m * d) && h.is_form() {
                    return Ok(h);
                }
                candidates.push(h);
            }
            None => continue,
        }
    }
    // cross-check: the norm form divides every pivot's reconstruction
    if candidates.len() >= 2 {
        let g = candidates[0].gcd_poly(&candidates[1]);
        if g.total_degree() == Some(m * d) && g.is_form() {
            return Ok(g);
        }
    }
    Err(Error::DegenerateElimination(format!(
        "all pivots failed for component {}",
        comp.form()
    )))
}

/// One pivot chart; `None` when the resultant vanishes identically on the
/// grid (this pivot degenerate).
fn push_p2_pivot<R: Ring>(
    f: &ProjMorphism<R>,
    comp: &PrimitiveForm<R>,
    shape: &MacaulayShape,
    pivot: usize,
) -> Result<Option<MultiPoly<R>>, Error> {
    let m = comp.degree();
    let d = f.degree();
    let deg_out = (m * d) as usize;
    let others: Vec<usize> = (0..3).filter(|&i| i != pivot).collect();
    let nodes: Vec<i64> = (0..=deg_out as i64).collect();
    let fp = &f.forms()[pivot];

    // values[j][i] = Res at (x_other0, x_other1) = (nodes[i], nodes[j])
    let mut rows: Vec<UPoly<R>> = Vec::with_capacity(nodes.len());
    let mut all_zero = true;
    for &zeta in &nodes {
        let mut vals: Vec<R> = Vec::with_capacity(nodes.len());
        for &xi in &nodes {
            let a1 = fp
                .mul_coeff(&R::from_int(xi))
                .sub(&f.forms()[others[0]]);
            let a2 = fp
                .mul_coeff(&R::from_int(zeta))
                .sub(&f.forms()[others[1]]);
            if a1.is_zero() || a2.is_zero() {
                // a grid point where an auxiliary form collapses entirely;
                // shift the whole grid by reporting pivot failure
                return Ok(None);
            }
            let v = shape.resultant(&[comp.form().clone(), a1, a2])?;
            if !v.is_zero() {
                all_zero = false;
            }
            vals.push(v);
        }
        rows.push(UPoly::interpolate(&nodes, &vals));
    }
    if all_zero {
        return Ok(None);
    }
    // second interpolation pass, coefficient by coefficient
    let mut h = MultiPoly::zero(3);
    for i in 0..=deg_out {
        let col: Vec<R> = rows.iter().map(|r| r.coeff(i)).collect();
        let qi = UPoly::interpolate(&nodes, &col);
        for (j, c) in qi.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i + j > deg_out {
                // degree overflow: the pivot-power factorization failed here
                return Ok(None);
            }
            let mut e = vec![0u32; 3];
            e[pivot] = (deg_out - i - j) as u32;
            e[others[0]] = i as u32;
            e[others[1]] = j as u32;
            h.add_term(Mono(e), c.clone());
        }
    }
    if h.is_zero() {
        return Ok(None);
    }
    let (_, prim) = h.primitive();
    Ok(Some(prim))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_qpoly, parse_qt_poly};
    use crate::ring::BigRat;
    use crate::upoly::TPoly;

    fn power_map_p1() -> ProjMorphism<BigRat> {
        ProjMorphism::new(vec![
            parse_qpoly("x0^2", 2).unwrap(),
            parse_qpoly("x1^2", 2).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn fixed_point_of_the_squaring_map() {
        let f = power_map_p1();
        let y = HypersurfaceCycle::from_form(1, parse_qpoly("x0 - x1", 2).unwrap()).unwrap();
        let out = pushforward_divisor(&f, &y).unwrap();
        assert_eq!(out, y);
    }

    #[test]
    fn image_of_zero_section_in_the_quadratic_family() {
        let f = ProjMorphism::new(vec![
            parse_qt_poly("x0^2 + t*x1^2", 2).unwrap(),
            parse_qt_poly("x1^2", 2).unwrap(),
        ])
        .unwrap();
        let y =
            HypersurfaceCycle::from_form(1, parse_qt_poly("x0", 2).unwrap()).unwrap();
        let out = pushforward_divisor(&f, &y).unwrap();
        let expected =
            HypersurfaceCycle::from_form(1, parse_qt_poly("x0 - t*x1", 2).unwrap()).unwrap();
        assert_eq!(out, expected);
    }

    #[test]
    fn plane_pushforward_meets_the_degree_contract() {
        let f = ProjMorphism::new(vec![
            parse_qpoly("x0^2", 3).unwrap(),
            parse_qpoly("x1^2", 3).unwrap(),
            parse_qpoly("x2^2", 3).unwrap(),
        ])
        .unwrap();
        let y = HypersurfaceCycle::from_form(2, parse_qpoly("x0 + x1 + x2", 3).unwrap())
            .unwrap();
        let out = pushforward_divisor(&f, &y).unwrap();
        assert_eq!(out.total_degree(), 2);
        // product over the fiber signs: (x0 - x1 - x2)^2 - 4 x1 x2
        let expected = HypersurfaceCycle::from_form(
            2,
            parse_qpoly("x0^2 + x1^2 + x2^2 - 2*x0*x1 - 2*x0*x2 - 2*x1*x2", 3).unwrap(),
        )
        .unwrap();
        assert_eq!(out, expected);
    }

    #[test]
    fn coordinate_plane_picks_up_multiplicity() {
        let f = ProjMorphism::new(vec![
            parse_qpoly("x0^2", 3).unwrap(),
            parse_qpoly("x1^2", 3).unwrap(),
            parse_qpoly("x2^2", 3).unwrap(),
        ])
        .unwrap();
        let y = HypersurfaceCycle::from_form(2, parse_qpoly("x1", 3).unwrap()).unwrap();
        let out = pushforward_divisor(&f, &y).unwrap();
        assert_eq!(out.components().len(), 1);
        assert_eq!(out.components()[0].0.form(), &parse_qpoly("x1", 3).unwrap());
        assert_eq!(out.components()[0].1, 2);
    }

    #[test]
    fn conjugate_points_collide_with_multiplicity() {
        let f = power_map_p1();
        let y = HypersurfaceCycle::from_form(1, parse_qpoly("x0^2 - 2*x1^2", 2).unwrap())
            .unwrap();
        let out = pushforward_divisor(&f, &y).unwrap();
        assert_eq!(out.components().len(), 1);
        assert_eq!(
            out.components()[0].0.form(),
            &parse_qpoly("x0 - 2*x1", 2).unwrap()
        );
        assert_eq!(out.components()[0].1, 2);
    }

    #[test]
    fn functoriality_against_composition() {
        let f = ProjMorphism::new(vec![
            parse_qpoly("x0^2 + x1^2", 2).unwrap(),
            parse_qpoly("x1^2", 2).unwrap(),
        ])
        .unwrap();
        let y = HypersurfaceCycle::from_form(1, parse_qpoly("x0 - 3*x1", 2).unwrap())
            .unwrap();
        let twice = pushforward_divisor(&f, &pushforward_divisor(&f, &y).unwrap()).unwrap();
        let composed = pushforward_divisor(&f.compose(&f).unwrap(), &y).unwrap();
        assert_eq!(twice, composed);
    }

    #[test]
    fn multi_component_cycles_push_linearly() {
        let f = power_map_p1();
        let y = HypersurfaceCycle::new(
            1,
            vec![
                (parse_qpoly("x0", 2).unwrap(), 2),
                (parse_qpoly("x0 - x1", 2).unwrap(), 1),
            ],
        )
        .unwrap();
        let out = pushforward_divisor(&f, &y).unwrap();
        assert_eq!(out.total_degree(), 3);
        assert_eq!(out, y);
        let _ = TPoly::constant(BigRat::from_int(0));
    }
}
