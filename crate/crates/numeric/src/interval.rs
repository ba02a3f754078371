use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::dyadic::{Dyadic, Round};
use crate::rat::Rat;
use crate::sign::Sign;

/// Closed interval `[lo, hi]` with dyadic endpoints.
///
/// Every operation rounds outward to `prec` significant bits, so the result
/// always contains the exact result for any choice of points in the inputs.
/// Binary operations work at the larger of the two precisions.
#[derive(Clone, PartialEq, Eq)]
pub struct RInterval {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

impl RInterval {
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RInterval { lo, hi, prec }
    }

    pub fn point(x: Dyadic, prec: u32) -> Self {
        RInterval {
            lo: x.clone(),
            hi: x,
            prec,
        }
    }

    pub fn zero(prec: u32) -> Self {
        RInterval::point(Dyadic::zero(), prec)
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        RInterval::point(Dyadic::from_i64(n), prec).rounded()
    }

    pub fn from_rat(r: &Rat, prec: u32) -> Self {
        RInterval {
            lo: Dyadic::from_rat(r, prec, Round::Floor),
            hi: Dyadic::from_rat(r, prec, Round::Ceil),
            prec,
        }
    }

    /// Encloses the exact rational interval `[lo, hi]`.
    pub fn from_rat_bounds(lo: &Rat, hi: &Rat, prec: u32) -> Self {
        assert!(lo <= hi);
        RInterval {
            lo: Dyadic::from_rat(lo, prec, Round::Floor),
            hi: Dyadic::from_rat(hi, prec, Round::Ceil),
            prec,
        }
    }

    fn rounded(self) -> Self {
        let prec = self.prec;
        RInterval {
            lo: self.lo.round(prec, Round::Floor),
            hi: self.hi.round(prec, Round::Ceil),
            prec,
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        RInterval {
            lo: self.lo.clone(),
            hi: self.hi.clone(),
            prec,
        }
        .rounded()
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn mid(&self) -> Dyadic {
        Dyadic::midpoint(&self.lo, &self.hi)
    }

    pub fn mid_f64(&self) -> f64 {
        self.mid().to_f64()
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_rat(&self, r: &Rat) -> bool {
        &self.lo.to_rat() <= r && r <= &self.hi.to_rat()
    }

    pub fn contains_f64(&self, x: f64, slack: f64) -> bool {
        self.lo.to_f64() - slack <= x && x <= self.hi.to_f64() + slack
    }

    /// `true` when the two intervals share a point.
    pub fn overlaps(&self, o: &RInterval) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    /// Certified sign: definite when the interval excludes zero, `Zero` only
    /// for the point interval `[0, 0]`, otherwise `Unknown`.
    pub fn sign(&self) -> Sign {
        if self.lo.signum() > 0 {
            Sign::Positive
        } else if self.hi.signum() < 0 {
            Sign::Negative
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Sign::Zero
        } else {
            Sign::Unknown
        }
    }

    /// Strictly less, certified.
    pub fn certainly_lt(&self, o: &RInterval) -> bool {
        self.hi < o.lo
    }

    pub fn hull(&self, o: &RInterval) -> RInterval {
        RInterval {
            lo: Dyadic::min(&self.lo, &o.lo),
            hi: Dyadic::max(&self.hi, &o.hi),
            prec: self.prec.max(o.prec),
        }
    }

    pub fn abs(&self) -> RInterval {
        if self.lo.signum() >= 0 {
            self.clone()
        } else if self.hi.signum() <= 0 {
            -self
        } else {
            RInterval {
                lo: Dyadic::zero(),
                hi: Dyadic::max(&self.lo.abs(), &self.hi),
                prec: self.prec,
            }
        }
    }

    pub fn square(&self) -> RInterval {
        let a = self.abs();
        RInterval {
            lo: a.lo.mul(&a.lo),
            hi: a.hi.mul(&a.hi),
            prec: self.prec,
        }
        .rounded()
    }

    pub fn powi(&self, n: u32) -> RInterval {
        let mut acc = RInterval::from_i64(1, self.prec);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Quotient; `None` when the divisor contains zero.
    pub fn checked_div(&self, o: &RInterval) -> Option<RInterval> {
        if o.contains_zero() {
            return None;
        }
        let prec = self.prec.max(o.prec);
        let cands_lo = [
            self.lo.div(&o.lo, prec, Round::Floor),
            self.lo.div(&o.hi, prec, Round::Floor),
            self.hi.div(&o.lo, prec, Round::Floor),
            self.hi.div(&o.hi, prec, Round::Floor),
        ];
        let cands_hi = [
            self.lo.div(&o.lo, prec, Round::Ceil),
            self.lo.div(&o.hi, prec, Round::Ceil),
            self.hi.div(&o.lo, prec, Round::Ceil),
            self.hi.div(&o.hi, prec, Round::Ceil),
        ];
        let lo = cands_lo.iter().min().unwrap().clone();
        let hi = cands_hi.iter().max().unwrap().clone();
        Some(RInterval { lo, hi, prec })
    }

    /// Square root of the nonnegative part; `None` if the interval is
    /// certainly negative.
    pub fn sqrt(&self) -> Option<RInterval> {
        if self.hi.signum() < 0 {
            return None;
        }
        let lo = if self.lo.signum() <= 0 {
            Dyadic::zero()
        } else {
            self.lo.sqrt(self.prec, Round::Floor)
        };
        let hi = self.hi.sqrt(self.prec, Round::Ceil);
        Some(RInterval {
            lo,
            hi,
            prec: self.prec,
        })
    }

    pub fn scale_pow2(&self, k: i64) -> RInterval {
        RInterval {
            lo: self.lo.mul_pow2(k),
            hi: self.hi.mul_pow2(k),
            prec: self.prec,
        }
    }
}

impl Add for &RInterval {
    type Output = RInterval;
    fn add(self, o: &RInterval) -> RInterval {
        RInterval {
            lo: self.lo.add(&o.lo),
            hi: self.hi.add(&o.hi),
            prec: self.prec.max(o.prec),
        }
        .rounded()
    }
}

impl Sub for &RInterval {
    type Output = RInterval;
    fn sub(self, o: &RInterval) -> RInterval {
        RInterval {
            lo: self.lo.sub(&o.hi),
            hi: self.hi.sub(&o.lo),
            prec: self.prec.max(o.prec),
        }
        .rounded()
    }
}

impl Mul for &RInterval {
    type Output = RInterval;
    fn mul(self, o: &RInterval) -> RInterval {
        let prec = self.prec.max(o.prec);
        if self.is_point() && o.is_point() {
            return RInterval::point(self.lo.mul(&o.lo), prec).rounded();
        }
        let p = [
            self.lo.mul(&o.lo),
            self.lo.mul(&o.hi),
            self.hi.mul(&o.lo),
            self.hi.mul(&o.hi),
        ];
        let lo = p.iter().min().unwrap().clone();
        let hi = p.iter().max().unwrap().clone();
        RInterval { lo, hi, prec }.rounded()
    }
}

impl Neg for &RInterval {
    type Output = RInterval;
    fn neg(self) -> RInterval {
        RInterval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            prec: self.prec,
        }
    }
}

impl Neg for RInterval {
    type Output = RInterval;
    fn neg(self) -> RInterval {
        -&self
    }
}

impl fmt::Debug for RInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_frac};

    #[test]
    fn arithmetic_encloses_exact() {
        let a = RInterval::from_rat(&rat_frac(1, 3), 30);
        let b = RInterval::from_rat(&rat_frac(-2, 7), 30);
        let exact = rat_frac(1, 3) * rat_frac(-2, 7) + rat_frac(1, 3) - rat_frac(-2, 7);
        let v = &(&(&a * &b) + &a) - &b;
        assert!(v.contains_rat(&exact));
        let q = a.checked_div(&b).unwrap();
        assert!(q.contains_rat(&(rat_frac(1, 3) / rat_frac(-2, 7))));
        assert!(b
            .checked_div(&RInterval::from_rat_bounds(&rat(-1), &rat(1), 30))
            .is_none());
    }

    #[test]
    fn sign_semantics() {
        assert_eq!(RInterval::from_i64(3, 10).sign(), Sign::Positive);
        assert_eq!(RInterval::zero(10).sign(), Sign::Zero);
        let straddle = RInterval::from_rat_bounds(&rat(-1), &rat(1), 10);
        assert_eq!(straddle.sign(), Sign::Unknown);
        assert_eq!(straddle.square().lo().signum(), 0);
    }

    #[test]
    fn sqrt_contains_root() {
        let two = RInterval::from_i64(2, 80);
        let r = two.sqrt().unwrap();
        assert!(r.square().contains(&Dyadic::from_i64(2)));
        assert!(r.width().to_f64() < 1e-20);
    }
}
