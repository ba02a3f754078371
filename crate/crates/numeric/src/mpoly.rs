use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::error::NumericError;
use crate::interval::RInterval;
use crate::rat::{format_rat, rat, Rat};
use crate::scalar::Scalar;
use crate::upoly::UniPoly;

/// Sparse multivariate polynomial over the rationals with a fixed number of
/// variables. Terms with zero coefficient are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    arity: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl MultiPoly {
    pub fn zero(arity: usize) -> Self {
        MultiPoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rat, arity: usize) -> Self {
        let mut p = MultiPoly::zero(arity);
        p.add_term(vec![0; arity], c);
        p
    }

    pub fn one(arity: usize) -> Self {
        MultiPoly::constant(rat(1), arity)
    }

    /// The variable `x_i`.
    pub fn var(i: usize, arity: usize) -> Self {
        assert!(i < arity);
        let mut e = vec![0; arity];
        e[i] = 1;
        MultiPoly::monomial(e, rat(1))
    }

    pub fn monomial(exps: Vec<u32>, c: Rat) -> Self {
        let mut p = MultiPoly::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rat)>) -> Self {
        let mut p = MultiPoly::zero(arity);
        for (e, c) in terms {
            assert_eq!(e.len(), arity, "exponent vector arity");
            p.add_term(e, c);
        }
        p
    }

    /// Add `c * x^exps` in place.
    pub fn add_term(&mut self, exps: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn degree_in(&self, var: usize) -> usize {
        self.terms
            .keys()
            .map(|e| e[var] as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&k| k as usize).sum())
            .max()
            .unwrap_or(0)
    }

    /// Constant value if the polynomial has no variables in it.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.arity);
        }
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        Scalar::pow(self, n)
    }

    pub fn derivative(&self, var: usize) -> MultiPoly {
        let mut p = MultiPoly::zero(self.arity);
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut e2 = e.clone();
                e2[var] -= 1;
                p.add_term(e2, c * rat(e[var] as i64));
            }
        }
        p
    }

    /// Coefficients with respect to `var`: `result[k]` is the coefficient of
    /// `var^k`, a polynomial of the same arity not involving `var`.
    pub fn coeffs_in(&self, var: usize) -> Vec<MultiPoly> {
        let n = if self.is_zero() {
            0
        } else {
            self.degree_in(var) + 1
        };
        let mut out = vec![MultiPoly::zero(self.arity); n];
        for (e, c) in &self.terms {
            let k = e[var] as usize;
            let mut e2 = e.clone();
            e2[var] = 0;
            out[k].add_term(e2, c.clone());
        }
        out
    }

    /// Inverse of [`MultiPoly::coeffs_in`].
    pub fn from_coeffs_in(var: usize, coeffs: &[MultiPoly], arity: usize) -> MultiPoly {
        let mut p = MultiPoly::zero(arity);
        for (k, c) in coeffs.iter().enumerate() {
            for (e, a) in &c.terms {
                let mut e2 = e.clone();
                e2[var] += k as u32;
                p.add_term(e2, a.clone());
            }
        }
        p
    }

    /// Evaluate over any scalar ring; `point` must have `arity` entries.
    pub fn eval_with<S: Scalar>(&self, point: &[S]) -> Result<S, NumericError> {
        if point.len() != self.arity {
            return Err(NumericError::ArityMismatch {
                expected: self.arity,
                got: point.len(),
            });
        }
        // A template coordinate is needed to build scalars of the right kind.
        let Some(first) = point.first() else {
            return Err(NumericError::ArityMismatch {
                expected: 1,
                got: 0,
            });
        };
        let maxdeg: Vec<usize> = (0..self.arity).map(|i| self.degree_in(i)).collect();
        let powers: Vec<Vec<S>> = point
            .iter()
            .zip(&maxdeg)
            .map(|(x, &d)| {
                let mut v = Vec::with_capacity(d + 1);
                v.push(x.one_like());
                for k in 1..=d {
                    let next = if k % 2 == 0 {
                        v[k / 2].squared()
                    } else {
                        v[k - 1].times(x)
                    };
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = first.zero_like();
        for (e, c) in &self.terms {
            let mut t = first.from_rat_like(c);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.times(&powers[i][k as usize]);
                }
            }
            acc = acc.plus(&t);
        }
        Ok(acc)
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        if self.arity == 0 {
            return self.as_constant().unwrap_or_default();
        }
        self.eval_with(point).expect("arity checked by caller")
    }

    pub fn eval_interval(&self, point: &[RInterval]) -> RInterval {
        self.eval_with(point).expect("arity checked by caller")
    }

    /// Substitute `var := q` (same arity).
    pub fn substitute(&self, var: usize, q: &MultiPoly) -> MultiPoly {
        let cs = self.coeffs_in(var);
        let mut acc = MultiPoly::zero(self.arity);
        for c in cs.iter().rev() {
            acc = &(&acc * q) + c;
        }
        acc
    }

    /// Substitute every variable simultaneously by a polynomial of arity
    /// `target_arity`.
    pub fn compose(&self, subs: &[MultiPoly], target_arity: usize) -> MultiPoly {
        assert_eq!(subs.len(), self.arity);
        let maxdeg: Vec<usize> = (0..self.arity).map(|i| self.degree_in(i)).collect();
        let powers: Vec<Vec<MultiPoly>> = subs
            .iter()
            .zip(&maxdeg)
            .map(|(s, &d)| {
                let mut v = vec![MultiPoly::one(target_arity)];
                for k in 1..=d {
                    let next = &v[k - 1] * s;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = MultiPoly::zero(target_arity);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(c.clone(), target_arity);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = &t * &powers[i][k as usize];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// View as a univariate polynomial in `var`; `None` if another variable
    /// occurs.
    pub fn to_univariate(&self, var: usize) -> Option<UniPoly> {
        let mut v = vec![Rat::zero(); self.degree_in(var) + 1];
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(i, &k)| i != var && k > 0) {
                return None;
            }
            v[e[var] as usize] = c.clone();
        }
        Some(UniPoly::new(v))
    }

    pub fn from_univariate(p: &UniPoly, var: usize, arity: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(arity);
        for (k, c) in p.coeffs().iter().enumerate() {
            let mut e = vec![0; arity];
            e[var] = k as u32;
            out.add_term(e, c.clone());
        }
        out
    }

    /// Leading term in lexicographic order of exponent vectors.
    fn lex_leading(&self) -> Option<(&Vec<u32>, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient by multivariate division in lexicographic order, or
    /// `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        let (de, dc) = d.lex_leading()?;
        let (de, dc) = (de.clone(), dc.clone());
        let mut r = self.clone();
        let mut q = MultiPoly::zero(self.arity);
        while let Some((re, rc)) = r.lex_leading() {
            if re.iter().zip(&de).any(|(a, b)| a < b) {
                return None;
            }
            let e: Vec<u32> = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            let c = rc / &dc;
            let t = MultiPoly::monomial(e, c);
            r = &r - &(&t * d);
            q = &q + &t;
        }
        Some(q)
    }

    /// Homogeneous of the given degree (the zero polynomial counts).
    pub fn is_homogeneous(&self, deg: usize) -> bool {
        self.terms
            .keys()
            .all(|e| e.iter().map(|&k| k as usize).sum::<usize>() == deg)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.arity, o.arity, "arity mismatch in addition");
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.arity, o.arity, "arity mismatch in subtraction");
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), -c);
        }
        p
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.arity, o.arity, "arity mismatch in product");
        let mut p = MultiPoly::zero(self.arity);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1 * c2);
            }
        }
        p
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Scalar for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(self.arity)
    }
    fn one_like(&self) -> Self {
        MultiPoly::one(self.arity)
    }
    fn from_rat_like(&self, r: &Rat) -> Self {
        MultiPoly::constant(r.clone(), self.arity)
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

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", format_rat(c))?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{i}")?,
                    _ => write!(f, "*x{i}^{k}")?,
                }
            }
        }
        Ok(())
    }
}
