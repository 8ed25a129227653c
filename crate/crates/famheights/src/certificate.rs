//! Nullstellensatz certificates for morphisms over ℤ: exact identities
//! x_i^M * R = sum_j G_ij * F_j, found by linear algebra in graded pieces.
//!
//! The identity certifies the lower height bound
//! h(f(P)) >= d h(P) - log K with K = max_i sum_j ||G_ij||_1, which is what
//! makes the canonical-height error radius rigorous. Certificates are
//! cached per morphism in a write-once map (duplicate concurrent
//! computation is harmless; results are identical).

use crate::error::Error;
use crate::morphism::ProjMorphism;
use crate::mpoly::{Mono, MultiPoly};
use crate::resultant::monomials_of_degree;
use crate::ring::{BigRat, Ring};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Exact identity x_i^M * R = sum_j G_ij F_j for each i, with integer data.
#[derive(Clone, Debug)]
pub struct NullstellensatzCertificate {
    pub exponent: u32,
    pub scalar: BigInt,
    /// cofactors[i][j] has integer coefficients and degree M - d
    pub cofactors: Vec<Vec<MultiPoly<BigRat>>>,
}

impl NullstellensatzCertificate {
    /// Check the defining identity by literal expansion.
    pub fn verify(&self, f: &ProjMorphism<BigRat>) -> bool {
        let n = f.forms().len();
        for i in 0..n {
            let mut sum = MultiPoly::zero(n);
            for j in 0..n {
                sum = sum.add(&self.cofactors[i][j].mul(&f.forms()[j]));
            }
            let target = MultiPoly::monomial(
                n,
                Mono::var(n, i).powed(self.exponent),
                BigRat::from(self.scalar.clone()),
            );
            if sum != target {
                return false;
            }
        }
        true
    }

    /// K = max_i sum_j (l1 norm of G_ij); `log K` is the certified loss of
    /// height in one step of the morphism.
    pub fn l1_bound(&self) -> BigInt {
        let mut best = BigInt::one();
        for row in &self.cofactors {
            let mut sum = BigInt::zero();
            for g in row {
                for (_, c) in g.terms() {
                    sum += c.numer().abs();
                }
            }
            if sum > best {
                best = sum;
            }
        }
        best
    }
}

impl Mono {
    fn powed(mut self, e: u32) -> Mono {
        for x in self.0.iter_mut() {
            *x *= e;
        }
        self
    }
}

type Cache = Mutex<HashMap<String, Arc<NullstellensatzCertificate>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Compute (or fetch) the certificate for a morphism over ℤ. The exponent M
/// is minimal among d..=(N+1)(d-1)+1; by Macaulay's bound the top value
/// always works when the resultant is nonzero.
pub fn nullstellensatz_certificate(
    f: &ProjMorphism<BigRat>,
) -> Result<Arc<NullstellensatzCertificate>, Error> {
    let key = f.cache_key();
    if let Some(hit) = cache().lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let cert = Arc::new(compute_certificate(f)?);
    cache()
        .lock()
        .unwrap()
        .entry(key)
        .or_insert_with(|| cert.clone());
    Ok(cert)
}

fn compute_certificate(
    f: &ProjMorphism<BigRat>,
) -> Result<NullstellensatzCertificate, Error> {
    let n = f.forms().len();
    let d = f.degree();
    let bound = (n as u32) * (d - 1) + 1;
    for m in d..=bound {
        if let Some(cert) = try_exponent(f, m) {
            debug_assert!(cert.verify(f));
            return Ok(cert);
        }
    }
    Err(Error::CertificateUnavailable(format!(
        "no identity up to the Macaulay bound {} for {}",
        bound, f
    )))
}

fn try_exponent(f: &ProjMorphism<BigRat>, m: u32) -> Option<NullstellensatzCertificate> {
    let n = f.forms().len();
    let d = f.degree();
    let rows_monos = monomials_of_degree(n, m);
    let cols_monos = monomials_of_degree(n, m - d);
    let row_index: HashMap<&Mono, usize> =
        rows_monos.iter().enumerate().map(|(i, mo)| (mo, i)).collect();
    let ncols = n * cols_monos.len();
    let nrows = rows_monos.len();
    // system matrix: column (j, mu) holds the coefficients of mu * F_j
    let mut a = vec![vec![BigRat::from_int(0); ncols]; nrows];
    for j in 0..n {
        for (k, mu) in cols_monos.iter().enumerate() {
            let col = j * cols_monos.len() + k;
            for (mo, c) in f.forms()[j].terms() {
                let row = row_index[&mu.mul(mo)];
                a[row][col] = a[row][col].clone() + c.clone();
            }
        }
    }
    // targets: e_{x_i^m}
    let mut targets = vec![vec![BigRat::from_int(0); n]; nrows];
    for i in 0..n {
        let row = row_index[&Mono::var(n, i).powed(m)];
        targets[row][i] = BigRat::from_int(1);
    }
    let solutions = solve_all(a, targets, ncols, n)?;
    // clear denominators with a single scalar across all i
    let mut denom_lcm = BigInt::one();
    for sol in &solutions {
        for c in sol {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
    }
    let scalar = denom_lcm;
    let mut cofactors = Vec::with_capacity(n);
    for sol in &solutions {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let mut g = MultiPoly::zero(n);
            for (k, mu) in cols_monos.iter().enumerate() {
                let c = &sol[j * cols_monos.len() + k];
                if !Zero::is_zero(c) {
                    g.add_term(mu.clone(), c * BigRat::from(scalar.clone()));
                }
            }
            row.push(g);
        }
        cofactors.push(row);
    }
    Some(NullstellensatzCertificate {
        exponent: m,
        scalar,
        cofactors,
    })
}

/// Gaussian elimination with several right-hand sides; returns one solution
/// per target or `None` if any target is inconsistent.
fn solve_all(
    mut a: Vec<Vec<BigRat>>,
    mut rhs: Vec<Vec<BigRat>>,
    ncols: usize,
    ntargets: usize,
) -> Option<Vec<Vec<BigRat>>> {
    let nrows = a.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
    let mut r = 0usize;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !Zero::is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(r, p);
        rhs.swap(r, p);
        let inv = a[r][c].clone();
        for x in a[r].iter_mut() {
            *x = &*x / &inv;
        }
        for x in rhs[r].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..nrows {
            if i != r && !Zero::is_zero(&a[i][c]) {
                let factor = a[i][c].clone();
                let (ar, ai) = split_rows(&mut a, r, i);
                for (x, y) in ai.iter_mut().zip(ar.iter()) {
                    *x = &*x - &(&factor * y);
                }
                let (br, bi) = split_rows(&mut rhs, r, i);
                for (x, y) in bi.iter_mut().zip(br.iter()) {
                    *x = &*x - &(&factor * y);
                }
            }
        }
        pivot_of_col[c] = Some(r);
        r += 1;
        if r == nrows {
            break;
        }
    }
    // consistency: every zero row of a must have zero rhs entries
    for i in 0..nrows {
        if a[i].iter().all(Zero::is_zero) {
            if rhs[i].iter().any(|x| !Zero::is_zero(x)) {
                return None;
            }
        }
    }
    let mut out = Vec::with_capacity(ntargets);
    for t in 0..ntargets {
        let mut sol = vec![BigRat::from_int(0); ncols];
        for c in 0..ncols {
            if let Some(p) = pivot_of_col[c] {
                sol[c] = rhs[p][t].clone();
            }
        }
        out.push(sol);
    }
    Some(out)
}

fn split_rows<'a, T>(m: &'a mut [Vec<T>], r: usize, i: usize) -> (&'a Vec<T>, &'a mut Vec<T>) {
    debug_assert_ne!(r, i);
    if r < i {
        let (head, tail) = m.split_at_mut(i);
        (&head[r], &mut tail[0])
    } else {
        let (head, tail) = m.split_at_mut(r);
        (&tail[0], &mut head[i])
    }
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
    fn power_map_certificate_is_trivial() {
        let f = morphism(&["x0^2", "x1^2"], 2);
        let cert = nullstellensatz_certificate(&f).unwrap();
        assert_eq!(cert.exponent, 2);
        assert_eq!(cert.scalar, BigInt::from(1));
        assert!(cert.verify(&f));
        assert_eq!(cert.l1_bound(), BigInt::from(1));
    }

    #[test]
    fn quadratic_perturbation_certificate() {
        let f = morphism(&["x0^2 + x1^2", "x1^2"], 2);
        let cert = nullstellensatz_certificate(&f).unwrap();
        assert_eq!(cert.exponent, 2);
        assert!(cert.verify(&f));
        // R divides a power of the resultant (here the resultant is 1)
        assert_eq!(cert.scalar.abs(), BigInt::from(1));
    }

    #[test]
    fn plane_power_map_certificate() {
        let f = morphism(&["x0^2", "x1^2", "x2^2"], 3);
        let cert = nullstellensatz_certificate(&f).unwrap();
        assert_eq!(cert.exponent, 2);
        assert!(cert.verify(&f));
    }

    #[test]
    fn cache_returns_the_same_certificate() {
        let f = morphism(&["x0^2 - x1^2", "x1^2"], 2);
        let a = nullstellensatz_certificate(&f).unwrap();
        let b = nullstellensatz_certificate(&f).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert!(a.verify(&f));
    }
}
