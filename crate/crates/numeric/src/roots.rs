use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::dyadic::Dyadic;
use crate::error::NumericError;
use crate::interval::RInterval;
use crate::rat::Rat;
use crate::upoly::{int_primitive, int_trim, UniPoly};

/// A certified real root: the open interval `(lo, hi)` contains exactly one
/// root of the squarefree factor `factor`, or `lo == hi` is the root itself.
/// Endpoints are dyadic rationals.
#[derive(Clone, Debug)]
pub struct RealRoot {
    pub lo: Rat,
    pub hi: Rat,
    pub multiplicity: usize,
    /// Squarefree primitive integer polynomial having this root as a simple
    /// root (shared by all roots of the same factor).
    pub factor: Arc<UniPoly>,
}

impl RealRoot {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(BigInt::from(2))
    }

    pub fn approx(&self) -> f64 {
        crate::rat::rat_to_f64(&self.midpoint())
    }

    /// Enclosing interval at the given working precision.
    pub fn interval(&self, prec: u32) -> RInterval {
        RInterval::from_rat_bounds(&self.lo, &self.hi, prec)
    }

    /// Bisect until the width is at most `2^-bits`.
    pub fn refined(&self, bits: u32) -> RealRoot {
        let target = Rat::new(BigInt::one(), BigInt::one() << bits);
        let mut r = self.clone();
        if r.is_exact() || r.width() <= target {
            return r;
        }
        let ints = r.factor.primitive_integer();
        // An endpoint may itself be a (different) root of the factor, so
        // compare against whichever endpoint sign is nonzero.
        let slo = sign_int_at(&ints, &r.lo);
        let shi = sign_int_at(&ints, &r.hi);
        while r.width() > target {
            let m = r.midpoint();
            let sm = sign_int_at(&ints, &m);
            if sm == 0 {
                r.lo = m.clone();
                r.hi = m;
                break;
            }
            let left_side = if slo != 0 { sm == slo } else { sm != shi };
            if left_side {
                r.lo = m;
            } else {
                r.hi = m;
            }
        }
        r
    }
}

/// Sign of the integer polynomial `a` at the rational `x`, computed exactly.
pub(crate) fn sign_int_at(a: &[BigInt], x: &Rat) -> i8 {
    if a.is_empty() {
        return 0;
    }
    let (m, d) = (x.numer(), x.denom());
    let mut acc = a.last().unwrap().clone();
    let mut dp = BigInt::one();
    for c in a.iter().rev().skip(1) {
        dp *= d;
        acc = acc * m + c * &dp;
    }
    // d > 0, so the homogenized value has the sign of p(x).
    if acc.is_zero() {
        0
    } else if acc.is_positive() {
        1
    } else {
        -1
    }
}

/// Number of sign changes in a coefficient sequence (zeros skipped).
fn sign_variations(a: &[BigInt]) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for c in a {
        let s = if c.is_zero() {
            continue;
        } else if c.is_positive() {
            1
        } else {
            -1
        };
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// `p(x + 1)` by repeated synthetic division.
fn taylor_shift_one(a: &[BigInt]) -> Vec<BigInt> {
    let mut v = a.to_vec();
    let n = v.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = v[j + 1].clone();
            v[j] += t;
        }
    }
    v
}

/// `2^n p(x / 2)`.
fn halve_argument(a: &[BigInt]) -> Vec<BigInt> {
    let n = a.len() - 1;
    a.iter().enumerate().map(|(i, c)| c << (n - i)).collect()
}

/// Upper bound on the number of roots in (0, 1): sign variations of
/// `(x+1)^n p(1/(x+1))`.
fn descartes_01(a: &[BigInt]) -> usize {
    let rev: Vec<BigInt> = a.iter().rev().cloned().collect();
    sign_variations(&taylor_shift_one(&rev))
}

/// Isolate the roots of squarefree `a` (integer, nonzero at 0 and 1 not
/// required) in the open unit interval. Each output `(c, k, exact)` denotes
/// the interval `(c/2^k, (c+1)/2^k)` or, if `exact`, the point `c/2^k`.
fn isolate_unit(a: Vec<BigInt>) -> Vec<(BigInt, u32, bool)> {
    let mut out = Vec::new();
    let mut stack = vec![(a, BigInt::zero(), 0u32)];
    while let Some((q, c, k)) = stack.pop() {
        let v = descartes_01(&q);
        if v == 0 {
            continue;
        }
        if v == 1 {
            out.push((c, k, false));
            continue;
        }
        let left = halve_argument(&q);
        let mut right = taylor_shift_one(&left);
        let c2 = &c << 1;
        if right[0].is_zero() {
            // Root exactly at the midpoint.
            out.push((&c2 + 1, k + 1, true));
            right.remove(0);
        }
        stack.push((right, &c2 + 1, k + 1));
        stack.push((left, c2, k + 1));
    }
    out
}

/// Power of two strictly larger than the absolute value of every root
/// (Cauchy bound).
fn root_bound_log2(a: &[BigInt]) -> u32 {
    let lead = a.last().unwrap().abs();
    let mut maxq = Rat::zero();
    for c in &a[..a.len() - 1] {
        let q = Rat::new(c.abs(), lead.clone());
        if q > maxq {
            maxq = q;
        }
    }
    let bound = maxq + Rat::one();
    let mut k = 0u32;
    while Rat::from_integer(BigInt::one() << k) <= bound {
        k += 1;
    }
    k
}

/// Roots of a squarefree integer polynomial as rational intervals, sorted.
fn isolate_squarefree(a: &[BigInt]) -> Vec<(Rat, Rat)> {
    let mut a = int_trim(a.to_vec());
    let mut roots = Vec::new();
    if a.len() <= 1 {
        return roots;
    }
    if a[0].is_zero() {
        roots.push((Rat::zero(), Rat::zero()));
        a.remove(0);
        a = int_primitive(a);
    }
    if a.len() <= 1 {
        return roots;
    }
    let k = root_bound_log2(&a);
    // Positive roots: scale x -> 2^k x so they lie in (0, 1).
    let scaled: Vec<BigInt> = a
        .iter()
        .enumerate()
        .map(|(i, c)| c << (k as usize * i))
        .collect();
    let neg: Vec<BigInt> = scaled
        .iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
        .collect();
    for (poly, sign) in [(scaled, 1i64), (neg, -1i64)] {
        for (c, depth, exact) in isolate_unit(poly) {
            let den = BigInt::one() << depth;
            let scale = BigInt::one() << k;
            let lo = Rat::new(&c * &scale, den.clone());
            let hi = if exact {
                lo.clone()
            } else {
                Rat::new((&c + 1) * &scale, den)
            };
            if sign > 0 {
                roots.push((lo, hi));
            } else {
                roots.push((-hi, -lo));
            }
        }
    }
    roots.sort_by(|x, y| x.0.cmp(&y.0));
    roots
}

/// Isolate every distinct real root of `p`.
///
/// Output intervals are pairwise disjoint, sorted, of width at most
/// `2^-width_bits`, each containing exactly one distinct real root; the
/// multiplicity comes from the squarefree decomposition.
pub fn isolate_real_roots(p: &UniPoly, width_bits: u32) -> Result<Vec<RealRoot>, NumericError> {
    if p.is_zero() {
        return Err(NumericError::ZeroPolynomial);
    }
    let mut all: Vec<RealRoot> = Vec::new();
    for (factor, mult) in p.squarefree_decomposition() {
        let ints = factor.primitive_integer();
        let shared = Arc::new(UniPoly::from_integers(&ints));
        for (lo, hi) in isolate_squarefree(&ints) {
            all.push(
                RealRoot {
                    lo,
                    hi,
                    multiplicity: mult,
                    factor: shared.clone(),
                }
                .refined(width_bits),
            );
        }
    }
    all.sort_by(|x, y| x.lo.cmp(&y.lo));
    // Roots of different factors are distinct; refine until intervals separate.
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..all.len().saturating_sub(1) {
            if all[i].hi >= all[i + 1].lo {
                let bits = finer_bits(&all[i]).max(finer_bits(&all[i + 1]));
                all[i] = all[i].refined(bits);
                all[i + 1] = all[i + 1].refined(bits);
                changed = true;
            }
        }
        if changed {
            all.sort_by(|x, y| x.lo.cmp(&y.lo));
        }
    }
    Ok(all)
}

fn finer_bits(r: &RealRoot) -> u32 {
    let w = r.width();
    let mut k = 0u32;
    while Rat::new(BigInt::one(), BigInt::one() << k) >= w {
        k += 1;
    }
    k + 1
}

/// Refine an isolating interval of a simple root of `p` to width at most
/// `target_width` by bisection with exact sign evaluation at dyadic points.
pub fn refine_root(
    p: &UniPoly,
    interval: &RInterval,
    target_width: &Dyadic,
) -> Result<RInterval, NumericError> {
    let ints = p.primitive_integer();
    if ints.is_empty() {
        return Err(NumericError::ZeroPolynomial);
    }
    let mut lo = interval.lo().to_rat();
    let mut hi = interval.hi().to_rat();
    let prec = interval.prec();
    let slo = sign_int_at(&ints, &lo);
    let shi = sign_int_at(&ints, &hi);
    if slo == 0 {
        return Ok(RInterval::point(interval.lo().clone(), prec));
    }
    if shi == 0 {
        return Ok(RInterval::point(interval.hi().clone(), prec));
    }
    if slo == shi {
        return Err(NumericError::NotIsolating);
    }
    let target = target_width.to_rat();
    let two = Rat::from_integer(BigInt::from(2));
    while &hi - &lo > target {
        let m = (&lo + &hi) / &two;
        let sm = sign_int_at(&ints, &m);
        if sm == 0 {
            let d = Dyadic::exact_from_rat(&m).expect("dyadic midpoint");
            return Ok(RInterval::point(d, prec));
        }
        if sm == slo {
            lo = m;
        } else {
            hi = m;
        }
    }
    let lo_d = Dyadic::exact_from_rat(&lo).expect("dyadic endpoint");
    let hi_d = Dyadic::exact_from_rat(&hi).expect("dyadic endpoint");
    Ok(RInterval::new(lo_d, hi_d, prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_frac};

    fn p(cs: &[i64]) -> UniPoly {
        UniPoly::from_i64s(cs)
    }

    #[test]
    fn sqrt_two() {
        let roots = isolate_real_roots(&p(&[-2, 0, 1]), 20).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0].approx() + 2f64.sqrt()).abs() < 1e-5);
        assert!((roots[1].approx() - 2f64.sqrt()).abs() < 1e-5);
        assert!(roots.iter().all(|r| r.width() <= rat_frac(1, 1 << 20)));
        assert!(roots.iter().all(|r| r.multiplicity == 1));
    }

    #[test]
    fn double_root() {
        let roots = isolate_real_roots(&p(&[1, -2, 1]), 20).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].multiplicity, 2);
        assert!(roots[0].lo <= rat(1) && rat(1) <= roots[0].hi);
    }

    #[test]
    fn rational_roots_and_zero() {
        // x (x - 1/2) (x + 3) (2x - 1)^2 has roots 0, 1/2 (mult 3), -3.
        let f = &(&(&p(&[0, 1]) * &p(&[-1, 2])) * &p(&[3, 1])) * &p(&[-1, 2]).pow(2);
        let roots = isolate_real_roots(&f, 30).unwrap();
        assert_eq!(roots.len(), 3);
        assert_eq!(roots[1].lo, rat(0));
        assert!(roots[1].is_exact());
        assert_eq!(roots[2].multiplicity, 3);
        assert!(roots[2].lo <= rat_frac(1, 2) && rat_frac(1, 2) <= roots[2].hi);
    }

    #[test]
    fn no_real_roots() {
        assert!(isolate_real_roots(&p(&[1, 0, 1]), 10).unwrap().is_empty());
        assert!(isolate_real_roots(&p(&[5]), 10).unwrap().is_empty());
    }

    #[test]
    fn refine_behaviour() {
        let f = p(&[-2, 0, 1]);
        let i = RInterval::from_rat_bounds(&rat(1), &rat(2), 64);
        let r = refine_root(&f, &i, &Dyadic::pow2(-60)).unwrap();
        assert!(r.width() <= Dyadic::pow2(-60));
        let sq = 2f64.sqrt();
        assert!(r.contains_f64(sq, 1e-15));
        let g = p(&[0, -1, 0, 1]);
        let j = RInterval::from_rat_bounds(&rat_frac(1, 2), &rat_frac(3, 2), 64);
        let r = refine_root(&g, &j, &Dyadic::pow2(-40)).unwrap();
        assert!(r.contains(&Dyadic::one()));
        let bad = RInterval::from_rat_bounds(&rat(3), &rat(4), 64);
        assert_eq!(
            refine_root(&f, &bad, &Dyadic::pow2(-10)),
            Err(NumericError::NotIsolating)
        );
    }
}
