//! The function-field side: families of morphisms over ℚ[t], heights as
//! t-degrees, generic canonical heights by degree growth, good-reduction
//! certificates and specialization at rational parameters.

use crate::cycle::HypersurfaceCycle;
use crate::error::Error;
use crate::heights::{extrapolate_tail, ln_bigint, rat_to_f64, HeightValue, Mode, RatPoint};
use crate::morphism::ProjMorphism;
use crate::mpoly::MultiPoly;
use crate::pushforward::pushforward_divisor;
use crate::ring::{BigRat, Ring};
use crate::upoly::TPoly;
use num_bigint::BigInt;
use num_traits::Signed;

/// Coefficient-size cap for iterated function-field computations.
const FF_BUDGET_BITS: u64 = 8_000_000;

/// A rational parameter value on the base line.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParameterPoint {
    pub tau: BigRat,
}

impl ParameterPoint {
    pub fn new(tau: BigRat) -> Self {
        ParameterPoint { tau }
    }

    pub fn from_ints(num: i64, den: i64) -> Self {
        ParameterPoint {
            tau: BigRat::new(num.into(), den.into()),
        }
    }
}

impl std::fmt::Display for ParameterPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.tau)
    }
}

/// Naive degree-1 ample height on the parameter line:
/// h(a/b) = log max(|a|, |b|) for a/b in lowest terms.
pub fn parameter_height(tau: &ParameterPoint) -> HeightValue {
    let a = tau.tau.numer().abs();
    let b = tau.tau.denom().abs();
    let m = if a > b { a } else { b };
    let value = ln_bigint(&m);
    HeightValue {
        value,
        radius: value.abs() * f64::EPSILON * 4.0,
        mode: Mode::Rigorous,
        exact: None,
    }
}

/// Point of P^N over ℚ(t): coprime ℤ[t] coordinates, integer-content-free,
/// sign-normalized (leading coefficient of the first nonzero coordinate
/// positive).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FFPoint {
    coords: Vec<TPoly>,
}

impl FFPoint {
    pub fn new(coords: Vec<TPoly>) -> Result<Self, Error> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroInput);
        }
        // divide by the full content gcd in ℚ[t]
        let mut g = TPoly::zero();
        for c in &coords {
            g = g.gcd(c);
        }
        let first_sign_neg = coords
            .iter()
            .find(|c| !c.is_zero())
            .unwrap()
            .is_negative();
        if first_sign_neg {
            g = g.neg();
        }
        let coords = coords
            .iter()
            .map(|c| c.exact_div(&g).expect("content divides"))
            .collect();
        Ok(FFPoint { coords })
    }

    pub fn coords(&self) -> &[TPoly] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    fn bits(&self) -> u64 {
        self.coords
            .iter()
            .flat_map(|c| c.coeffs().iter())
            .map(|q| q.numer().bits() + q.denom().bits())
            .sum()
    }
}

impl std::fmt::Display for FFPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, " : ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "]")
    }
}

/// Weil height over ℚ(t): the maximal coordinate degree in t.
pub fn ff_height_point(p: &FFPoint) -> BigRat {
    let deg = p
        .coords
        .iter()
        .map(|c| c.degree_or_zero())
        .max()
        .unwrap_or(0);
    BigRat::from_int(deg as i64)
}

/// A family of morphisms of P^N over the parameter line, regular away from
/// the zero set of `good_locus_poly`.
#[derive(Clone, Debug)]
pub struct FamilyMorphism {
    base: ProjMorphism<TPoly>,
    good_locus_poly: TPoly,
}

impl FamilyMorphism {
    pub fn new(base: ProjMorphism<TPoly>) -> Self {
        let (_, rho) = base.resultant().primitive();
        FamilyMorphism {
            base,
            good_locus_poly: rho,
        }
    }

    pub fn base(&self) -> &ProjMorphism<TPoly> {
        &self.base
    }

    pub fn degree(&self) -> u32 {
        self.base.degree()
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// The morphism part of the good-reduction certificate.
    pub fn good_locus_poly(&self) -> &TPoly {
        &self.good_locus_poly
    }

    /// True when the family does not actually involve t.
    pub fn is_constant(&self) -> bool {
        self.base
            .forms()
            .iter()
            .all(|p| p.terms().all(|(_, c)| c.is_constant()))
    }
}

/// One exact orbit step over ℚ(t) with coprime renormalization.
pub fn apply_ff_point(f: &FamilyMorphism, p: &FFPoint) -> FFPoint {
    let coords: Vec<TPoly> = f
        .base
        .forms()
        .iter()
        .map(|form| form.eval(p.coords()))
        .collect();
    FFPoint::new(coords).expect("morphism image of a point is nonzero")
}

/// Result of a function-field canonical height computation: the height and
/// the full diagnostic sequence a_n (exact rationals).
pub struct FfHeightResult {
    pub height: HeightValue,
    pub sequence: Vec<BigRat>,
}

/// Canonical height over ℚ(t) of a point: lim d^-n deg_t(f^n(P)).
/// Exact (rigorous, radius 0) when the increments vanish twice in a row;
/// geometric extrapolation otherwise.
pub fn ff_canonical_height_point(
    f: &FamilyMorphism,
    p: &FFPoint,
    n_max: u32,
) -> Result<FfHeightResult, Error> {
    assert!(n_max >= 3, "need at least three steps");
    let d = BigRat::from_int(f.degree() as i64);
    let mut current = p.clone();
    let mut seq: Vec<BigRat> = vec![ff_height_point(&current)];
    let mut dn = BigRat::from_int(1);
    for _ in 1..=n_max {
        current = apply_ff_point(f, &current);
        if current.bits() > FF_BUDGET_BITS {
            return Err(Error::BudgetExceeded {
                detail: format!("orbit coordinates reached {} bits", current.bits()),
                partial: seq.iter().map(rat_to_f64).collect(),
            });
        }
        dn = dn.mul(&d);
        seq.push(ff_height_point(&current).exact_div(&dn).unwrap());
        let k = seq.len();
        if k >= 3 && seq[k - 1] == seq[k - 2] && seq[k - 2] == seq[k - 3] {
            return Ok(FfHeightResult {
                height: HeightValue::exact_rational(seq[k - 1].clone(), Mode::Rigorous),
                sequence: seq,
            });
        }
    }
    let float_seq: Vec<f64> = seq.iter().map(rat_to_f64).collect();
    let (value, radius, _) = extrapolate_tail(&float_seq, f.degree());
    Ok(FfHeightResult {
        height: HeightValue {
            value,
            radius,
            mode: Mode::Heuristic,
            exact: None,
        },
        sequence: seq,
    })
}

/// t-degree of a cycle over ℚ[t]: additive over components (the t-degree of
/// the product form).
fn cycle_deg_t(y: &HypersurfaceCycle<TPoly>) -> u32 {
    y.components()
        .iter()
        .map(|(form, mult)| {
            let comp_deg = form
                .form()
                .terms()
                .map(|(_, c)| c.degree_or_zero() as u32)
                .max()
                .unwrap_or(0);
            comp_deg * mult
        })
        .sum()
}

fn cycle_bits_qt(y: &HypersurfaceCycle<TPoly>) -> u64 {
    let mut total = 0u64;
    for (form, _) in y.components() {
        for (_, c) in form.form().terms() {
            for q in c.coeffs() {
                total += q.numer().bits() + q.denom().bits();
            }
        }
    }
    total
}

/// Canonical height over ℚ(t) of a hypersurface cycle:
/// a_n = d^-n deg_t(f^n_* Y) / ((q+1) m d^{n(N-1)}), with the t-primitive
/// part taken at each pushforward (vertical components removed by the
/// primitive normalization) and the x-degree contract checked exactly.
pub fn ff_canonical_height_hypersurface(
    f: &FamilyMorphism,
    y: &HypersurfaceCycle<TPoly>,
    n_max: u32,
) -> Result<FfHeightResult, Error> {
    assert!(n_max >= 1);
    let d = f.degree();
    let n_amb = f.dim() as u32;
    let q_plus_1 = BigRat::from_int(n_amb as i64);
    let m = y.total_degree();
    let mut current = y.clone();
    let mut seq: Vec<BigRat> = Vec::new();
    let mut dn = BigRat::from_int(1);
    for n in 0..=n_max {
        if n > 0 {
            current = match pushforward_divisor(f.base(), &current) {
                Ok(c) => c,
                Err(Error::BudgetExceeded { detail, .. }) => {
                    return Err(Error::BudgetExceeded {
                        detail,
                        partial: seq.iter().map(rat_to_f64).collect(),
                    })
                }
                Err(e) => return Err(e),
            };
            let bits = cycle_bits_qt(&current);
            if bits > FF_BUDGET_BITS {
                return Err(Error::BudgetExceeded {
                    detail: format!("cycle coefficients reached {} bits", bits),
                    partial: seq.iter().map(rat_to_f64).collect(),
                });
            }
            dn = dn.mul(&BigRat::from_int(d as i64));
        }
        // exact degree contract: deg_x = m * d^{n(N-1)}
        let m_n = m * d.pow(n * (n_amb - 1));
        if current.total_degree() != m_n {
            return Err(Error::DegenerateElimination(format!(
                "x-degree {} at step {} violates the contract {}",
                current.total_degree(),
                n,
                m_n
            )));
        }
        let a = BigRat::from_int(cycle_deg_t(&current) as i64)
            .exact_div(&dn.mul(&q_plus_1).mul(&BigRat::from_int(m_n as i64)))
            .unwrap();
        seq.push(a);
        let k = seq.len();
        if k >= 3 && seq[k - 1] == seq[k - 2] && seq[k - 2] == seq[k - 3] {
            return Ok(FfHeightResult {
                height: HeightValue::exact_rational(seq[k - 1].clone(), Mode::Rigorous),
                sequence: seq,
            });
        }
    }
    let float_seq: Vec<f64> = seq.iter().map(rat_to_f64).collect();
    let (value, radius, _) = extrapolate_tail(&float_seq, d);
    Ok(FfHeightResult {
        height: HeightValue {
            value,
            radius,
            mode: Mode::Heuristic,
            exact: None,
        },
        sequence: seq,
    })
}

/// Computable good-reduction certificate: a product of named nonzero
/// polynomials in ℤ[t]; any τ where none of them vanish is certified good
/// (a subset of the true good locus, never a superset).
pub struct GoodLocus {
    pub factors: Vec<(String, TPoly)>,
}

impl GoodLocus {
    /// The combined certificate ρ(t), primitive.
    pub fn combined(&self) -> TPoly {
        let mut acc = TPoly::constant(BigRat::from_int(1));
        for (_, p) in &self.factors {
            acc = acc.mul(p);
        }
        let (_, prim) = acc.primitive();
        prim
    }

    /// Name of the first guard vanishing at τ, if any.
    pub fn vanishing_guard(&self, tau: &ParameterPoint) -> Option<&str> {
        self.factors
            .iter()
            .find(|(_, p)| Ring::is_zero(&p.eval(&tau.tau)))
            .map(|(name, _)| name.as_str())
    }
}

/// Build the good-reduction certificate for a family, optionally refined by
/// guards for a hypersurface cycle: each component must not vanish at τ
/// (its t-content is a unit after normalization, kept as a defensive guard)
/// and components of equal degree must stay non-proportional (gcd of the
/// 2x2 minors of their coefficient vectors).
pub fn good_locus(f: &FamilyMorphism, cycle: Option<&HypersurfaceCycle<TPoly>>) -> GoodLocus {
    let mut factors = vec![(
        "morphism resultant".to_string(),
        f.good_locus_poly.clone(),
    )];
    if let Some(y) = cycle {
        for (i, (form, _)) in y.components().iter().enumerate() {
            let mut g = TPoly::zero();
            for (_, c) in form.form().terms() {
                g = g.gcd(c);
            }
            if !g.is_constant() {
                factors.push((format!("component {} content", i), g));
            }
        }
        let comps = y.components();
        for i in 0..comps.len() {
            for j in i + 1..comps.len() {
                if comps[i].0.degree() != comps[j].0.degree() {
                    continue;
                }
                let a = comps[i].0.form();
                let b = comps[j].0.form();
                let monos: Vec<_> = {
                    let mut m: Vec<_> = a.terms().map(|(mo, _)| mo.clone()).collect();
                    for (mo, _) in b.terms() {
                        if !m.contains(mo) {
                            m.push(mo.clone());
                        }
                    }
                    m
                };
                let mut g = TPoly::zero();
                'outer: for s in 0..monos.len() {
                    for t in s + 1..monos.len() {
                        let minor = a
                            .coeff(&monos[s])
                            .mul(&b.coeff(&monos[t]))
                            .sub(&a.coeff(&monos[t]).mul(&b.coeff(&monos[s])));
                        g = g.gcd(&minor);
                        if g.is_constant() && !g.is_zero() {
                            break 'outer;
                        }
                    }
                }
                if !g.is_constant() {
                    factors.push((format!("components {} and {} distinctness", i, j), g));
                }
            }
        }
    }
    GoodLocus { factors }
}

/// Specialize the family at τ; fails with the vanishing guard's name when τ
/// is outside the certified good locus.
pub fn specialize_morphism(
    f: &FamilyMorphism,
    tau: &ParameterPoint,
) -> Result<ProjMorphism<BigRat>, Error> {
    if Ring::is_zero(&f.good_locus_poly.eval(&tau.tau)) {
        return Err(Error::BadParameter {
            tau: tau.to_string(),
            guard: "morphism resultant".into(),
        });
    }
    let forms: Vec<MultiPoly<BigRat>> = f
        .base
        .forms()
        .iter()
        .map(|form| form.map_coeffs(|c| c.eval(&tau.tau)))
        .collect();
    ProjMorphism::new(forms)
}

/// Specialize a function-field point at τ (always defined: coprime
/// coordinates cannot vanish simultaneously).
pub fn specialize_point(p: &FFPoint, tau: &ParameterPoint) -> RatPoint {
    RatPoint::from_rationals(p.coords.iter().map(|c| c.eval(&tau.tau)).collect())
        .expect("coprime coordinates do not vanish together")
}

/// Specialize a cycle at τ; components must survive (guarded by the cycle
/// part of the good locus).
pub fn specialize_cycle(
    y: &HypersurfaceCycle<TPoly>,
    tau: &ParameterPoint,
) -> Result<HypersurfaceCycle<BigRat>, Error> {
    let mut parts = Vec::new();
    for (i, (form, mult)) in y.components().iter().enumerate() {
        let spec = form.form().map_coeffs(|c| c.eval(&tau.tau));
        if spec.is_zero() {
            return Err(Error::BadParameter {
                tau: tau.to_string(),
                guard: format!("component {} content", i),
            });
        }
        parts.push((spec, *mult));
    }
    HypersurfaceCycle::new(y.ambient(), parts)
}
