//! Heights over ℚ: naive and canonical heights of rational points, and the
//! coefficient-height of hypersurface cycles with its canonical limit.
//!
//! Canonical heights of points run on exact big-integer orbits with coprime
//! renormalization at every step; only the final logarithm is floating
//! point, taken from the top bits of the integer (relative error a few
//! ulps). The error radius is certificate-backed (rigorous) when a
//! Nullstellensatz certificate is available and the stopping rule met its
//! tolerance, geometric-tail extrapolation (heuristic) otherwise.

use crate::certificate::nullstellensatz_certificate;
use crate::cycle::HypersurfaceCycle;
use crate::error::Error;
use crate::morphism::ProjMorphism;
use crate::pushforward::pushforward_divisor;
use crate::ring::{BigRat, Ring};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Maximum total coefficient size (bits) a cycle may reach during iterated
/// pushforwards before the computation aborts with a budget error.
const CYCLE_BUDGET_BITS: u64 = 8_000_000;

/// How a reported error radius is justified.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Rigorous,
    Heuristic,
}

/// A real height estimate with an explicit error radius.
#[derive(Clone, Debug)]
pub struct HeightValue {
    pub value: f64,
    pub radius: f64,
    pub mode: Mode,
    /// Exact rational value when the computation terminated exactly
    /// (function-field degrees, detected preperiodicity).
    pub exact: Option<BigRat>,
}

impl HeightValue {
    pub fn exact_rational(value: BigRat, mode: Mode) -> Self {
        let v = rat_to_f64(&value);
        HeightValue {
            value: v,
            radius: 0.0,
            mode,
            exact: Some(value),
        }
    }
}

pub fn rat_to_f64(r: &BigRat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Natural log of a positive big integer, from its top 53 bits.
pub fn ln_bigint(x: &BigInt) -> f64 {
    debug_assert!(x.is_positive());
    let bits = x.bits();
    if bits <= 53 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 53;
    let top = (x >> shift).to_f64().unwrap();
    top.ln() + (shift as f64) * std::f64::consts::LN_2
}

/// Rational point of P^N with coprime, sign-normalized integer coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatPoint {
    coords: Vec<BigInt>,
}

impl RatPoint {
    pub fn new(coords: Vec<BigInt>) -> Result<Self, Error> {
        let coords = normalize_int_coords(coords)?;
        Ok(RatPoint { coords })
    }

    pub fn from_rationals(coords: Vec<BigRat>) -> Result<Self, Error> {
        let mut lcm = BigInt::from(1);
        for c in &coords {
            lcm = lcm.lcm(c.denom());
        }
        Self::new(
            coords
                .iter()
                .map(|c| c.numer() * (&lcm / c.denom()))
                .collect(),
        )
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self, Error> {
        Self::new(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn max_abs(&self) -> BigInt {
        self.coords
            .iter()
            .map(|c| c.abs())
            .max()
            .expect("nonempty")
    }

    fn bits(&self) -> u64 {
        self.coords.iter().map(|c| c.bits()).sum()
    }
}

impl std::fmt::Display for RatPoint {
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

fn normalize_int_coords(mut coords: Vec<BigInt>) -> Result<Vec<BigInt>, Error> {
    if coords.iter().all(Zero::is_zero) {
        return Err(Error::ZeroInput);
    }
    let mut g = BigInt::from(0);
    for c in &coords {
        g = g.gcd(c);
        if g == BigInt::from(1) {
            break;
        }
    }
    if g != BigInt::from(1) {
        for c in coords.iter_mut() {
            *c = &*c / &g;
        }
    }
    if coords.iter().find(|c| !Zero::is_zero(*c)).unwrap().is_negative() {
        for c in coords.iter_mut() {
            *c = -&*c;
        }
    }
    Ok(coords)
}

/// Naive Weil height: log of the max absolute coordinate.
pub fn naive_height(p: &RatPoint) -> HeightValue {
    let m = p.max_abs();
    let value = ln_bigint(&m);
    HeightValue {
        value,
        radius: value.abs() * f64::EPSILON * 4.0,
        mode: Mode::Rigorous,
        exact: None,
    }
}

/// The one-step height distortion constants of a morphism over ℤ.
#[derive(Clone, Debug)]
pub struct HeightConstants {
    /// h(f(P)) <= d h(P) + c_plus (triangle inequality on the forms).
    pub c_plus: f64,
    /// h(f(P)) >= d h(P) - c_minus (from the Nullstellensatz certificate);
    /// `None` when no certificate was computed.
    pub c_minus: Option<f64>,
    /// Certified divisor bound: gcd(F(P)) divides this for coprime P.
    pub gcd_bound: Option<BigInt>,
}

impl HeightConstants {
    /// C with |h(f(P)) - d h(P)| <= C, when two-sided.
    pub fn two_sided(&self) -> Option<f64> {
        self.c_minus.map(|m| m.max(self.c_plus))
    }
}

/// Compute the height-distortion constants; the certificate side is skipped
/// when `use_certificate` is false and degrades to `None` on failure.
pub fn height_constants(f: &ProjMorphism<BigRat>, use_certificate: bool) -> HeightConstants {
    let mut worst = BigInt::from(1);
    for form in f.forms() {
        let monomials = BigInt::from(form.num_terms() as i64);
        let maxcoef = form
            .terms()
            .map(|(_, c)| c.numer().abs())
            .max()
            .unwrap_or_else(|| BigInt::from(1));
        let bound = monomials * maxcoef;
        if bound > worst {
            worst = bound;
        }
    }
    let c_plus = ln_bigint(&worst);
    let (c_minus, gcd_bound) = if use_certificate {
        match nullstellensatz_certificate(f) {
            Ok(cert) => (
                Some(ln_bigint(&cert.l1_bound())),
                Some(cert.scalar.abs()),
            ),
            Err(_) => (None, None),
        }
    } else {
        (None, None)
    };
    HeightConstants {
        c_plus,
        c_minus,
        gcd_bound,
    }
}

/// One exact orbit step: evaluate the forms and renormalize to coprime,
/// sign-normalized coordinates. `gcd_bound` (gcd(F(P)) | bound) turns the
/// big-integer gcd into cheap modular reductions.
pub fn apply_point(
    f: &ProjMorphism<BigRat>,
    p: &RatPoint,
    gcd_bound: Option<&BigInt>,
) -> RatPoint {
    let mut coords: Vec<BigInt> = f
        .forms()
        .iter()
        .map(|form| form.eval_int(p.coords()))
        .collect();
    match gcd_bound {
        Some(bound) if *bound != BigInt::from(1) => {
            let mut g = bound.abs();
            for c in &coords {
                if g == BigInt::from(1) {
                    break;
                }
                g = g.gcd(&c.mod_floor(&g));
            }
            if g != BigInt::from(1) {
                for c in coords.iter_mut() {
                    debug_assert!((&*c % &g).is_zero());
                    *c = &*c / &g;
                }
            }
            debug_assert_eq!(
                coords.iter().fold(BigInt::from(0), |a, c| a.gcd(c)),
                BigInt::from(1)
            );
            let mut coords = coords;
            if coords
                .iter()
                .find(|c| !Zero::is_zero(*c))
                .unwrap()
                .is_negative()
            {
                for c in coords.iter_mut() {
                    *c = -&*c;
                }
            }
            RatPoint { coords }
        }
        Some(_) => {
            // bound 1: already coprime, only fix the sign
            if coords
                .iter()
                .find(|c| !Zero::is_zero(*c))
                .unwrap()
                .is_negative()
            {
                for c in coords.iter_mut() {
                    *c = -&*c;
                }
            }
            RatPoint { coords }
        }
        None => RatPoint {
            coords: normalize_int_coords(coords).expect("morphism image of a point is nonzero"),
        },
    }
}

/// Canonical height of a rational point: lim d^{-n} h(f^n(P)).
///
/// Stops rigorously when the certificate bound C/(d^n (d-1)) reaches `tol`,
/// heuristically when the geometric tail of the increments does, exactly
/// when the orbit revisits a point (preperiodic, height 0), and at `n_max`
/// otherwise (heuristic mode with the achieved radius).
pub fn canonical_height_point(
    f: &ProjMorphism<BigRat>,
    p: &RatPoint,
    tol: f64,
    n_max: u32,
    use_certificate: bool,
) -> HeightValue {
    assert!(tol > 0.0 && n_max >= 1);
    let d = f.degree() as f64;
    let constants = height_constants(f, use_certificate);
    let c = constants.two_sided();
    let gcd_bound = constants.gcd_bound.clone();

    let mut current = p.clone();
    let mut seq: Vec<f64> = vec![naive_height(&current).value];
    let mut seen: Vec<RatPoint> = Vec::new();
    let mut n = 0u32;
    loop {
        // rigorous stop: the tail is bounded by C sum_{k>n} d^-k
        if let Some(c) = c {
            let rig = c / (d.powi(n as i32) * (d - 1.0));
            if rig <= tol {
                return HeightValue {
                    value: seq[n as usize],
                    radius: rig,
                    mode: Mode::Rigorous,
                    exact: None,
                };
            }
        }
        // exact stop: revisited point means preperiodic, height exactly 0
        if seen.contains(&current) {
            return HeightValue {
                value: 0.0,
                radius: 0.0,
                mode: Mode::Rigorous,
                exact: Some(BigRat::from_int(0)),
            };
        }
        if current.bits() <= 512 {
            seen.push(current.clone());
        }
        // heuristic stop on the extrapolated tail
        if seq.len() >= 3 {
            let (_, tail, _) = extrapolate_tail(&seq, f.degree());
            if tail <= tol {
                let radius = match c {
                    Some(c) => tail.min(c / (d.powi(n as i32) * (d - 1.0))),
                    None => tail,
                };
                return HeightValue {
                    value: seq[n as usize],
                    radius,
                    mode: Mode::Heuristic,
                    exact: None,
                };
            }
        }
        if n == n_max {
            let (_, tail, _) = extrapolate_tail(&seq, f.degree());
            let radius = match c {
                Some(c) => tail.min(c / (d.powi(n as i32) * (d - 1.0))),
                None => tail,
            };
            return HeightValue {
                value: seq[n as usize],
                radius,
                mode: Mode::Heuristic,
                exact: None,
            };
        }
        current = apply_point(f, &current, gcd_bound.as_ref());
        n += 1;
        seq.push(naive_height(&current).value / d.powi(n as i32));
    }
}

/// Coefficient height of a cycle: sum of mult * log max-coefficient over the
/// primitive components, divided by (q+1) * total degree. This is the
/// degree-normalized height proxy; it is representative-independent and
/// differs from the adelic cycle height by a bounded amount along any fixed
/// family, which cancels in every limit and ratio the library reports.
pub fn hypersurface_height(y: &HypersurfaceCycle<BigRat>) -> HeightValue {
    let q_plus_1 = y.ambient() as f64; // q = N - 1
    let m_total = y.total_degree() as f64;
    let mut sum = 0.0;
    for (form, mult) in y.components() {
        let maxcoef = form
            .form()
            .terms()
            .map(|(_, c)| c.numer().abs())
            .max()
            .unwrap_or_else(|| BigInt::from(1));
        sum += (*mult as f64) * ln_bigint(&maxcoef);
    }
    let value = sum / (q_plus_1 * m_total);
    HeightValue {
        value,
        radius: value.abs() * f64::EPSILON * 8.0,
        mode: Mode::Heuristic,
        exact: None,
    }
}

/// Canonical height of a hypersurface cycle with the full diagnostic
/// sequence a_n = d^-n h(f^n_* Y).
pub struct CycleHeightResult {
    pub height: HeightValue,
    pub sequence: Vec<f64>,
}

pub fn canonical_height_hypersurface(
    f: &ProjMorphism<BigRat>,
    y: &HypersurfaceCycle<BigRat>,
    n_max: u32,
    tol: f64,
) -> Result<CycleHeightResult, Error> {
    assert!(n_max >= 1);
    let d = f.degree() as f64;
    let mut current = y.clone();
    let mut seq = vec![hypersurface_height(&current).value];
    for n in 1..=n_max {
        current = match pushforward_divisor(f, &current) {
            Ok(c) => c,
            Err(Error::BudgetExceeded { detail, .. }) => {
                return Err(Error::BudgetExceeded {
                    detail,
                    partial: seq,
                })
            }
            Err(e) => return Err(e),
        };
        let bits = cycle_bits(&current);
        if bits > CYCLE_BUDGET_BITS {
            return Err(Error::BudgetExceeded {
                detail: format!("cycle coefficients reached {} bits", bits),
                partial: seq,
            });
        }
        seq.push(hypersurface_height(&current).value / d.powi(n as i32));
        let k = seq.len();
        if k >= 3 && seq[k - 1] == seq[k - 2] && seq[k - 2] == seq[k - 3] {
            break; // increments exactly zero twice
        }
        if k >= 3 {
            let (_, tail, _) = extrapolate_tail(&seq, f.degree());
            if tail <= tol {
                break;
            }
        }
    }
    let (value, radius, _) = extrapolate_tail(&seq, f.degree());
    Ok(CycleHeightResult {
        height: HeightValue {
            value,
            radius,
            mode: Mode::Heuristic,
            exact: None,
        },
        sequence: seq,
    })
}

fn cycle_bits(y: &HypersurfaceCycle<BigRat>) -> u64 {
    let mut total = 0u64;
    for (form, _) in y.components() {
        for (_, c) in form.form().terms() {
            total += c.numer().bits() + 1;
        }
    }
    total
}

/// Geometric-tail extrapolation of a convergent sequence: estimated limit,
/// radius, and whether the last two increments vanished exactly.
pub(crate) fn extrapolate_tail(seq: &[f64], degree: u32) -> (f64, f64, bool) {
    let last = *seq.last().expect("nonempty sequence");
    let k = seq.len();
    if k == 1 {
        return (last, f64::INFINITY, false);
    }
    let d1 = seq[k - 1] - seq[k - 2];
    if k >= 3 && d1 == 0.0 && seq[k - 2] - seq[k - 3] == 0.0 {
        return (last, 0.0, true);
    }
    let default_r = 1.0 / degree as f64;
    let r = if k >= 3 {
        let d0 = seq[k - 2] - seq[k - 3];
        if d0 != 0.0 && (d1 / d0).is_finite() {
            (d1 / d0).clamp(-0.95, 0.95)
        } else {
            default_r
        }
    } else {
        default_r
    };
    let tail = d1 * r / (1.0 - r);
    let value = last + tail;
    let radius = 2.0 * tail.abs() + d1.abs() * 1e-9 + value.abs() * 1e-14;
    (value, radius, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_qpoly;

    fn morphism(forms: &[&str], n: usize) -> ProjMorphism<BigRat> {
        ProjMorphism::new(forms.iter().map(|s| parse_qpoly(s, n).unwrap()).collect())
            .unwrap()
    }

    #[test]
    fn naive_height_examples() {
        let p = RatPoint::from_ints(&[3, 4]).unwrap();
        assert!((naive_height(&p).value - 4.0f64.ln()).abs() < 1e-14);
        let q = RatPoint::from_ints(&[1, 1]).unwrap();
        assert_eq!(naive_height(&q).value, 0.0);
        // rational input normalizes to coprime integers
        let r = RatPoint::from_rationals(vec![
            BigRat::new(3.into(), 4.into()),
            BigRat::from_int(1),
        ])
        .unwrap();
        assert_eq!(r, RatPoint::from_ints(&[3, 4]).unwrap());
    }

    #[test]
    fn power_map_constants_vanish() {
        let f = morphism(&["x0^2", "x1^2"], 2);
        let c = height_constants(&f, true);
        assert_eq!(c.c_plus, 0.0);
        assert_eq!(c.c_minus, Some(0.0));
        assert_eq!(c.two_sided(), Some(0.0));
    }

    #[test]
    fn scaled_power_map_bound_holds_on_samples() {
        let f = morphism(&["2*x0^2", "3*x1^2"], 2);
        let c = height_constants(&f, true);
        assert!((c.c_plus - 3.0f64.ln()).abs() < 1e-12);
        let cc = c.two_sided().unwrap();
        let d = 2.0;
        for a in -20i64..20 {
            for b in 1i64..20 {
                if num_integer::gcd(a, b) != 1 {
                    continue;
                }
                let p = RatPoint::from_ints(&[a, b]).unwrap();
                let fp = apply_point(&f, &p, c.gcd_bound.as_ref());
                let gap = naive_height(&fp).value - d * naive_height(&p).value;
                assert!(gap.abs() <= cc + 1e-9, "gap {} exceeds C {}", gap, cc);
            }
        }
    }

    #[test]
    fn power_map_canonical_equals_naive() {
        let f = morphism(&["x0^2", "x1^2"], 2);
        let p = RatPoint::from_ints(&[2, 1]).unwrap();
        let h = canonical_height_point(&f, &p, 1e-9, 16, true);
        assert_eq!(h.mode, Mode::Rigorous);
        assert!(h.radius <= 1e-9);
        assert!((h.value - 2.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn periodic_orbit_has_height_zero() {
        // 0 -> -1 -> 0 under z^2 - 1
        let f = morphism(&["x0^2 - x1^2", "x1^2"], 2);
        let p = RatPoint::from_ints(&[0, 1]).unwrap();
        let h = canonical_height_point(&f, &p, 1e-9, 16, true);
        assert_eq!(h.value, 0.0);
        assert_eq!(h.radius, 0.0);
        assert_eq!(h.mode, Mode::Rigorous);
    }

    #[test]
    fn wandering_point_matches_direct_iteration() {
        let f = morphism(&["x0^2 + x1^2", "x1^2"], 2);
        let p = RatPoint::from_ints(&[0, 1]).unwrap();
        let h = canonical_height_point(&f, &p, 1e-9, 12, true);
        // independent check: a_12 = 2^-12 h(f^12 P) with plain gcd stripping
        let mut q = p.clone();
        for _ in 0..12 {
            q = apply_point(&f, &q, None);
        }
        let oracle = naive_height(&q).value / 2f64.powi(12);
        let c = height_constants(&f, true).two_sided().unwrap();
        assert!((h.value - oracle).abs() <= 2.0 * c / 2f64.powi(12));
        assert!(h.value > 0.1);
    }

    #[test]
    fn functional_equation_within_radii() {
        let f = morphism(&["x0^2 + x1^2", "x1^2"], 2);
        let p = RatPoint::from_ints(&[3, 5]).unwrap();
        let fp = apply_point(&f, &p, None);
        let h_p = canonical_height_point(&f, &p, 1e-9, 14, true);
        let h_fp = canonical_height_point(&f, &fp, 1e-9, 14, true);
        let lhs = (h_fp.value - 2.0 * h_p.value).abs();
        assert!(lhs <= 2.0 * (h_fp.radius + 2.0 * h_p.radius) + 1e-12);
    }

    #[test]
    fn cycle_height_proxy_examples() {
        let y = HypersurfaceCycle::from_form(
            2,
            parse_qpoly("x0 + 2*x1 + 3*x2", 3).unwrap(),
        )
        .unwrap();
        let h = hypersurface_height(&y);
        assert!((h.value - 3.0f64.ln() / 2.0).abs() < 1e-14);

        let z = HypersurfaceCycle::from_form(1, parse_qpoly("x0 - x1", 2).unwrap()).unwrap();
        assert_eq!(hypersurface_height(&z).value, 0.0);

        let w = HypersurfaceCycle::new(
            1,
            vec![
                (parse_qpoly("x0", 2).unwrap(), 2),
                (parse_qpoly("x0 - x1", 2).unwrap(), 1),
            ],
        )
        .unwrap();
        assert_eq!(hypersurface_height(&w).value, 0.0);
    }

    #[test]
    fn fixed_divisor_of_power_map_has_zero_height() {
        let f = morphism(&["x0^2", "x1^2"], 2);
        let y = HypersurfaceCycle::from_form(1, parse_qpoly("x0 - x1", 2).unwrap()).unwrap();
        let r = canonical_height_hypersurface(&f, &y, 6, 1e-9).unwrap();
        assert_eq!(r.height.value, 0.0);
        assert_eq!(r.height.radius, 0.0);
        assert!(r.sequence.iter().all(|&a| a == 0.0));
    }

    #[test]
    fn doubling_orbit_divisor_has_height_log2() {
        // x - 2y maps to x - 2^(2^n) y; every a_n equals log 2
        let f = morphism(&["x0^2", "x1^2"], 2);
        let y = HypersurfaceCycle::from_form(1, parse_qpoly("x0 - 2*x1", 2).unwrap())
            .unwrap();
        let r = canonical_height_hypersurface(&f, &y, 8, 1e-9).unwrap();
        assert!((r.height.value - 2.0f64.ln()).abs() < 1e-12);
        assert!(r.height.radius < 1e-9);
    }

    #[test]
    fn plane_cycle_functional_equation() {
        let f = morphism(&["x0^2", "x1^2", "x2^2"], 3);
        let y = HypersurfaceCycle::from_form(2, parse_qpoly("x0 + x1 + x2", 3).unwrap())
            .unwrap();
        let hy = canonical_height_hypersurface(&f, &y, 3, 1e-6).unwrap();
        let fy = pushforward_divisor(&f, &y).unwrap();
        let hfy = canonical_height_hypersurface(&f, &fy, 2, 1e-6).unwrap();
        assert!(hy.height.value >= -hy.height.radius);
        let gap = (hfy.height.value - 2.0 * hy.height.value).abs();
        assert!(
            gap <= 2.0 * (hfy.height.radius + 2.0 * hy.height.radius) + 1e-9,
            "gap {} radii {} {}",
            gap,
            hy.height.radius,
            hfy.height.radius
        );
    }
}
