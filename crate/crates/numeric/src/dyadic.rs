use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rat::Rat;

/// Rounding direction for inexact dyadic operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Floor,
    Ceil,
}

/// A dyadic rational `mant * 2^exp`.
///
/// Kept normalized: the mantissa is odd, or zero with `exp == 0`, so equal
/// values have equal representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

fn shr_floor(m: &BigInt, shift: u64) -> BigInt {
    if shift == 0 {
        return m.clone();
    }
    let d = BigInt::one() << shift;
    m.div_floor(&d)
}

fn shr_round(m: &BigInt, shift: u64, dir: Round) -> BigInt {
    match dir {
        Round::Floor => shr_floor(m, shift),
        Round::Ceil => -shr_floor(&-m, shift),
    }
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        if let Some(tz) = self.mant.trailing_zeros() {
            if tz > 0 {
                self.mant >>= tz;
                self.exp += tz as i64;
            }
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic::from_int(BigInt::one())
    }

    pub fn from_int(n: BigInt) -> Self {
        Dyadic::new(n, 0)
    }

    pub fn from_i64(n: i64) -> Self {
        Dyadic::from_int(BigInt::from(n))
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Self {
        Dyadic {
            mant: BigInt::one(),
            exp: e,
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i8 {
        match self.mant.sign() {
            BigSign::Minus => -1,
            BigSign::NoSign => 0,
            BigSign::Plus => 1,
        }
    }

    /// Bit length of the mantissa.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Position of the most significant bit, i.e. `floor(log2 |x|)`.
    /// Zero maps to `i64::MIN`.
    pub fn magnitude_exp(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exp + self.bits() as i64 - 1
        }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn add(&self, o: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(o.exp);
        let a = &self.mant << ((self.exp - e) as u64);
        let b = &o.mant << ((o.exp - e) as u64);
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, o: &Dyadic) -> Dyadic {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Dyadic) -> Dyadic {
        if self.is_zero() || o.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mant: &self.mant * &o.mant,
            exp: self.exp + o.exp,
        }
    }

    /// Multiplication by `2^k`, exact.
    pub fn mul_pow2(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    /// Rounds to at most `prec` significant bits in direction `dir`.
    pub fn round(&self, prec: u32, dir: Round) -> Dyadic {
        let bits = self.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        Dyadic::new(shr_round(&self.mant, shift, dir), self.exp + shift as i64)
    }

    /// Rounds to a multiple of `2^-frac_bits` in direction `dir`.
    pub fn round_fixed(&self, frac_bits: i64, dir: Round) -> Dyadic {
        if self.exp >= -frac_bits {
            return self.clone();
        }
        let shift = (-frac_bits - self.exp) as u64;
        Dyadic::new(shr_round(&self.mant, shift, dir), -frac_bits)
    }

    /// Rounded quotient with about `prec` significant bits.
    pub fn div(&self, o: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        assert!(!o.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let k = (prec as i64 + o.bits() as i64 - self.bits() as i64 + 2).max(0) as u64;
        let num = &self.mant << k;
        let den = &o.mant;
        let q = match dir {
            Round::Floor => num.div_floor(den),
            Round::Ceil => -((-num).div_floor(den)),
        };
        Dyadic::new(q, self.exp - o.exp - k as i64).round(prec, dir)
    }

    /// Rounded square root of a nonnegative value.
    pub fn sqrt(&self, prec: u32, dir: Round) -> Dyadic {
        assert!(self.signum() >= 0, "sqrt of negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let want = 2 * prec as i64 + 4;
        let mut shift = (want - self.bits() as i64).max(0);
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let m = &self.mant << (shift as u64);
        let e = self.exp - shift;
        let mut r = m.sqrt();
        if dir == Round::Ceil && &r * &r != m {
            r += 1;
        }
        Dyadic::new(r, e / 2).round(prec, dir)
    }

    /// Rounds a rational to a dyadic with about `prec` significant bits.
    pub fn from_rat(r: &Rat, prec: u32, dir: Round) -> Dyadic {
        let n = r.numer();
        let d = r.denom();
        if n.is_zero() {
            return Dyadic::zero();
        }
        if d.is_one() {
            return Dyadic::from_int(n.clone()).round(prec, dir);
        }
        let k = prec as i64 + d.bits() as i64 - n.bits() as i64 + 2;
        let (num, den) = if k >= 0 {
            (n << (k as u64), d.clone())
        } else {
            (n.clone(), d << ((-k) as u64))
        };
        let q = match dir {
            Round::Floor => num.div_floor(&den),
            Round::Ceil => -((-num).div_floor(&den)),
        };
        Dyadic::new(q, -k).round(prec, dir)
    }

    /// Exact conversion when the denominator is a power of two.
    pub fn exact_from_rat(r: &Rat) -> Option<Dyadic> {
        let d = r.denom();
        if (d & (d - BigInt::one())).is_zero() {
            Some(Dyadic::new(r.numer().clone(), -(d.bits() as i64 - 1)))
        } else {
            None
        }
    }

    /// Nearest dyadic to an f64 (exact: every finite f64 is dyadic).
    pub fn from_f64(x: f64) -> Option<Dyadic> {
        let r = Rat::from_float(x)?;
        Some(Dyadic::from_rat(&r, 64, Round::Floor))
    }

    pub fn to_rat(&self) -> Rat {
        if self.exp >= 0 {
            Rat::from_integer(&self.mant << (self.exp as u64))
        } else {
            Rat::new(self.mant.clone(), BigInt::one() << ((-self.exp) as u64))
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.bits();
        let (m, e) = if bits > 62 {
            let s = bits - 62;
            (shr_floor(&self.mant, s), self.exp + s as i64)
        } else {
            (self.mant.clone(), self.exp)
        };
        let mf = m.to_f64().unwrap_or(f64::NAN);
        let e = e.clamp(-4000, 4000) as i32;
        // split to avoid intermediate overflow/underflow in powi
        let half = e / 2;
        mf * 2f64.powi(half) * 2f64.powi(e - half)
    }

    /// Midpoint `(a + b) / 2`, exact.
    pub fn midpoint(a: &Dyadic, b: &Dyadic) -> Dyadic {
        a.add(b).mul_pow2(-1)
    }

    pub fn min(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn max(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        // same sign: compare magnitudes first when they differ by a lot
        let ma = self.magnitude_exp();
        let mb = other.magnitude_exp();
        if ma != mb {
            let by_mag = ma.cmp(&mb);
            return if sa > 0 { by_mag } else { by_mag.reverse() };
        }
        match self.sub(other).signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_frac};

    #[test]
    fn rounding_brackets_rationals() {
        let third = rat_frac(1, 3);
        let lo = Dyadic::from_rat(&third, 20, Round::Floor);
        let hi = Dyadic::from_rat(&third, 20, Round::Ceil);
        assert!(lo.to_rat() < third && third < hi.to_rat());
        assert!(hi.sub(&lo).to_rat() < rat_frac(1, 1 << 20));
        let neg = -third.clone();
        let lo = Dyadic::from_rat(&neg, 20, Round::Floor);
        let hi = Dyadic::from_rat(&neg, 20, Round::Ceil);
        assert!(lo.to_rat() < neg && neg < hi.to_rat());
    }

    #[test]
    fn exact_values_round_trip() {
        let x = Dyadic::from_rat(&rat_frac(-5, 8), 3, Round::Floor);
        assert_eq!(x.to_rat(), rat_frac(-5, 8));
        assert_eq!(Dyadic::from_i64(12).to_rat(), rat(12));
        assert_eq!(Dyadic::from_i64(12).mantissa(), &BigInt::from(3));
    }

    #[test]
    fn sqrt_brackets() {
        let two = Dyadic::from_i64(2);
        let lo = two.sqrt(50, Round::Floor);
        let hi = two.sqrt(50, Round::Ceil);
        assert!(lo.mul(&lo) < two && two < hi.mul(&hi));
        assert!((lo.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-14);
    }

    #[test]
    fn ordering_and_division() {
        let a = Dyadic::from_i64(-3);
        let b = Dyadic::pow2(-40);
        assert!(a < b);
        assert!(b < Dyadic::one());
        let q_lo = Dyadic::one().div(&Dyadic::from_i64(3), 40, Round::Floor);
        let q_hi = Dyadic::one().div(&Dyadic::from_i64(3), 40, Round::Ceil);
        assert!(q_lo.to_rat() < rat_frac(1, 3) && rat_frac(1, 3) < q_hi.to_rat());
        let q = Dyadic::from_i64(-7).div(&Dyadic::from_i64(2), 40, Round::Floor);
        assert_eq!(q.to_rat(), rat_frac(-7, 2));
    }

    #[test]
    fn huge_exponents_to_f64() {
        let x = Dyadic::new(BigInt::from(3), 2000);
        assert!(x.to_f64().is_infinite());
        let y = Dyadic::new(BigInt::from(3), -10);
        assert_eq!(y.to_f64(), 3.0 / 1024.0);
    }
}
