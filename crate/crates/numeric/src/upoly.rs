use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::interval::RInterval;
use crate::rat::{common_denominator, format_rat, rat, Rat};
use crate::scalar::Scalar;

/// Dense univariate polynomial with rational coefficients.
///
/// `coeffs[i]` is the coefficient of `x^i`. Trailing zeros are never stored,
/// so the zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        UniPoly::new(cs.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_integers(cs: &[BigInt]) -> Self {
        UniPoly::new(cs.iter().map(|c| Rat::from_integer(c.clone())).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(rat(1))
    }

    pub fn constant(c: Rat) -> Self {
        UniPoly::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        UniPoly::from_i64s(&[0, 1])
    }

    pub fn monomial(c: Rat, deg: usize) -> Self {
        let mut v = vec![Rat::zero(); deg + 1];
        v[deg] = c;
        UniPoly::new(v)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial reported as 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, c: &Rat) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.leading();
        self.scale(&(rat(1) / l))
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, n: u32) -> UniPoly {
        Scalar::pow(self, n)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + crate::rat::rat_to_f64(c);
        }
        acc
    }

    /// Outward-rounded interval evaluation (Horner form).
    pub fn eval_interval(&self, x: &RInterval) -> RInterval {
        let mut acc = RInterval::zero(x.prec());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &RInterval::from_rat(c, x.prec());
        }
        acc
    }

    /// Composition `self(g(x))`.
    pub fn compose(&self, g: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &UniPoly::constant(c.clone());
        }
        acc
    }

    /// Euclidean division over the rationals.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dn = d.deg();
        let lc_inv = rat(1) / d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dn {
            return (UniPoly::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); r.len() - dn];
        for k in (0..q.len()).rev() {
            let c = &r[k + dn] * &lc_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dn);
        (UniPoly::new(q), UniPoly::new(r))
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &UniPoly) -> Option<UniPoly> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).1
    }

    /// Scale to a primitive integer polynomial with positive leading
    /// coefficient. The zero polynomial maps to an empty vector.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let den = common_denominator(self.coeffs.iter());
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(den.clone())).to_integer())
            .collect();
        int_primitive(ints)
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let a = self.primitive_integer();
        let b = o.primitive_integer();
        UniPoly::from_integers(&int_gcd(a, b)).monic()
    }

    /// Certifies `gcd(self, o) = 1`. Tries several word-size primes first and
    /// falls back to the exact gcd when every prime is inconclusive.
    pub fn is_coprime(&self, o: &UniPoly) -> bool {
        if self.is_zero() {
            return !o.is_zero() && o.deg() == 0;
        }
        if o.is_zero() {
            return self.deg() == 0;
        }
        let a = self.primitive_integer();
        let b = o.primitive_integer();
        for &p in MODULAR_PRIMES.iter() {
            if let Some(true) = modular_coprime(&a, &b, p) {
                return true;
            }
        }
        int_gcd(a, b).len() == 1
    }

    /// Squarefree decomposition (Yun): returns `(factor, multiplicity)` pairs
    /// with monic, pairwise coprime, non-constant squarefree factors whose
    /// product with multiplicities equals `self` up to a constant.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, usize)> {
        let mut out = Vec::new();
        if self.deg() == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_exact(&a0).expect("gcd divides");
        let mut c = fp.div_exact(&a0).expect("gcd divides");
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while b.deg() > 0 {
            let a = b.gcd(&d);
            b = b.div_exact(&a).expect("gcd divides");
            c = d.div_exact(&a).expect("gcd divides");
            d = &c - &b.derivative();
            if a.deg() > 0 {
                out.push((a, i));
            }
            i += 1;
        }
        out
    }

    pub fn squarefree_part(&self) -> UniPoly {
        if self.deg() == 0 {
            return UniPoly::one();
        }
        let f = self.monic();
        f.div_exact(&f.gcd(&f.derivative())).expect("gcd divides")
    }

    /// Remove every factor of `d` (repeatedly) from `self`; returns the
    /// cofactor and the number of times `d` divided.
    pub fn remove_factor(&self, d: &UniPoly) -> (UniPoly, usize) {
        let mut cur = self.clone();
        let mut k = 0;
        if d.deg() == 0 {
            return (cur, 0);
        }
        while let Some(q) = cur.div_exact(d) {
            cur = q;
            k += 1;
        }
        (cur, k)
    }

    /// Remove every root shared with `d` (with full multiplicity).
    pub fn remove_common_roots(&self, d: &UniPoly) -> UniPoly {
        let mut cur = self.clone();
        loop {
            let g = cur.gcd(d);
            if g.deg() == 0 {
                return cur;
            }
            cur = cur.div_exact(&g).expect("gcd divides");
        }
    }
}

/// Primes below 2^31 used for modular coprimality certificates.
const MODULAR_PRIMES: [u64; 4] = [2_147_483_647, 2_147_483_629, 2_147_483_587, 2_147_483_579];

fn mod_reduce(a: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut v: Vec<u64> = a
        .iter()
        .map(|c| {
            let r = c.mod_floor(&pb);
            u64::try_from(r).expect("reduced residue fits")
        })
        .collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

fn mod_pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

/// `Some(true)` when the images mod `p` are coprime and neither leading
/// coefficient vanishes mod `p` (which certifies coprimality over the
/// rationals), `None` when the prime is unsuitable or inconclusive.
fn modular_coprime(a: &[BigInt], b: &[BigInt], p: u64) -> Option<bool> {
    let mut x = mod_reduce(a, p);
    let mut y = mod_reduce(b, p);
    if x.len() != a.len() || y.len() != b.len() {
        return None;
    }
    while !y.is_empty() {
        let inv = mod_inv(*y.last().unwrap(), p);
        let dy = y.len() - 1;
        while x.len() > dy {
            let c = x.last().unwrap() * inv % p;
            let shift = x.len() - 1 - dy;
            for (j, yc) in y.iter().enumerate() {
                let t = c * yc % p;
                x[shift + j] = (x[shift + j] + p - t) % p;
            }
            while x.last() == Some(&0) {
                x.pop();
            }
            if x.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
    if x.len() == 1 {
        Some(true)
    } else {
        None
    }
}

pub(crate) fn int_trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Divide by the content and make the leading coefficient positive.
pub(crate) fn int_primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let v = int_trim(v);
    if v.is_empty() {
        return v;
    }
    let mut g = BigInt::zero();
    for c in &v {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    let neg = v.last().unwrap().is_negative();
    v.into_iter()
        .map(|c| {
            let q = if g.is_one() { c } else { c / &g };
            if neg {
                -q
            } else {
                q
            }
        })
        .collect()
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) a mod b` over the integers.
pub(crate) fn int_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    if a.len() <= db {
        return a.to_vec();
    }
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &lr * bc;
        }
        r = int_trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

/// Primitive gcd over the integers via the primitive remainder sequence.
pub(crate) fn int_gcd(a: Vec<BigInt>, b: Vec<BigInt>) -> Vec<BigInt> {
    let (mut a, mut b) = (int_primitive(a), int_primitive(b));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            return vec![BigInt::one()];
        }
        let r = int_primitive(int_prem(&a, &b));
        a = b;
        b = r;
    }
    a
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UniPoly::new(v)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Scalar for UniPoly {
    fn zero_like(&self) -> Self {
        UniPoly::zero()
    }
    fn one_like(&self) -> Self {
        UniPoly::one()
    }
    fn from_rat_like(&self, r: &Rat) -> Self {
        UniPoly::constant(r.clone())
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn divided(&self, o: &Self) -> Option<Self> {
        self.div_exact(o)
    }
    fn is_zero_exact(&self) -> bool {
        self.is_zero()
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", format_rat(c))?,
                1 => write!(f, "({})*x", format_rat(c))?,
                _ => write!(f, "({})*x^{i}", format_rat(c))?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> UniPoly {
        UniPoly::from_i64s(cs)
    }

    #[test]
    fn division_identity() {
        let a = p(&[3, -2, 0, 5, 1]);
        let b = p(&[1, 0, 2]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.deg() < 2);
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let g = p(&[-2, 0, 1]);
        let a = &g * &p(&[1, 1]);
        let b = &g * &p(&[5, 0, 3]);
        assert_eq!(a.gcd(&b), g);
        assert!(!a.is_coprime(&b));
        assert!(p(&[1, 1]).is_coprime(&p(&[5, 0, 3])));
    }

    #[test]
    fn yun_decomposition() {
        // (x-1)^3 (x+2)^2 (x^2+1)
        let f = &(&p(&[-1, 1]).pow(3) * &p(&[2, 1]).pow(2)) * &p(&[1, 0, 1]);
        let dec = f.squarefree_decomposition();
        assert_eq!(dec.len(), 3);
        assert_eq!(dec[0], (p(&[1, 0, 1]), 1));
        assert_eq!(dec[1], (p(&[2, 1]), 2));
        assert_eq!(dec[2], (p(&[-1, 1]), 3));
        assert_eq!(f.squarefree_part().deg(), 4);
    }

    #[test]
    fn remove_factor_counts() {
        let q = p(&[1, 0, 1]);
        let f = &q.pow(3) * &p(&[0, 1]);
        let (rest, k) = f.remove_factor(&q);
        assert_eq!(k, 3);
        assert_eq!(rest, p(&[0, 1]));
    }

    #[test]
    fn interval_eval_encloses() {
        let f = p(&[-2, 0, 1]);
        let x = RInterval::from_rat(&crate::rat::rat_frac(7, 5), 60);
        assert!(f
            .eval_interval(&x)
            .contains_rat(&f.eval(&crate::rat::rat_frac(7, 5))));
    }
}
