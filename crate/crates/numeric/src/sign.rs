use std::fmt;

use crate::error::NumericError;
use crate::interval::RInterval;
use crate::mpoly::MultiPoly;
use crate::rat::{sign_of, Rat};
use crate::Precision;

/// Outcome of a certified sign decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
    /// The precision cap was reached before the sign could be certified.
    Unknown,
}

impl Sign {
    pub fn from_i8(s: i8) -> Sign {
        match s.signum() {
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }

    /// `Some(-1 | 0 | 1)` for decided signs.
    pub fn to_i8(self) -> Option<i8> {
        match self {
            Sign::Negative => Some(-1),
            Sign::Zero => Some(0),
            Sign::Positive => Some(1),
            Sign::Unknown => None,
        }
    }

    pub fn is_definite(self) -> bool {
        matches!(self, Sign::Negative | Sign::Positive)
    }

    pub fn mul(self, o: Sign) -> Sign {
        match (self.to_i8(), o.to_i8()) {
            (Some(a), Some(b)) => Sign::from_i8(a * b),
            (Some(0), None) | (None, Some(0)) => Sign::Zero,
            _ => Sign::Unknown,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Sign::Negative => "-1",
            Sign::Zero => "0",
            Sign::Positive => "+1",
            Sign::Unknown => "unknown",
        };
        f.write_str(s)
    }
}

/// A coordinate of an evaluation point: an exact rational or an enclosure.
#[derive(Clone, Debug)]
pub enum Coord {
    Exact(Rat),
    Approx(RInterval),
}

impl Coord {
    fn at_prec(&self, prec: u32) -> RInterval {
        match self {
            Coord::Exact(r) => RInterval::from_rat(r, prec),
            Coord::Approx(i) => i.with_prec(prec.max(i.prec())),
        }
    }
}

/// Run `eval` at increasing working precision until it yields an interval
/// excluding zero. `eval` returns `None` when it cannot produce an enclosure
/// at that precision (for instance a division by an interval containing
/// zero); that also triggers a retry at higher precision.
pub fn decide_sign<F>(precision: Precision, mut eval: F) -> Sign
where
    F: FnMut(u32) -> Option<RInterval>,
{
    for prec in precision.schedule() {
        if let Some(v) = eval(prec) {
            let s = v.sign();
            if s.is_definite() {
                return s;
            }
        }
    }
    Sign::Unknown
}

/// Certified sign of `p` at `point`.
///
/// With all coordinates exact the value is computed exactly (so `Zero` is
/// possible). Otherwise the polynomial is evaluated in interval arithmetic
/// with precision doubling up to the cap; `Unknown` means the enclosure
/// still contained zero at the cap.
pub fn sign_at(p: &MultiPoly, point: &[Coord], precision: Precision) -> Result<Sign, NumericError> {
    if point.len() != p.arity() {
        return Err(NumericError::ArityMismatch {
            expected: p.arity(),
            got: point.len(),
        });
    }
    let exact: Option<Vec<Rat>> = point
        .iter()
        .map(|c| match c {
            Coord::Exact(r) => Some(r.clone()),
            Coord::Approx(i) if i.is_point() => Some(i.lo().to_rat()),
            Coord::Approx(_) => None,
        })
        .collect();
    if let Some(xs) = exact {
        return Ok(Sign::from_i8(sign_of(&p.eval(&xs))));
    }
    Ok(decide_sign(precision, |prec| {
        let xs: Vec<RInterval> = point.iter().map(|c| c.at_prec(prec)).collect();
        Some(p.eval_interval(&xs))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_frac};

    #[test]
    fn basic_signs() {
        let x = MultiPoly::var(0, 1);
        let p = &x.pow(2) + &MultiPoly::one(1);
        let iv = RInterval::from_rat_bounds(&rat(-1), &rat(1), 64);
        assert_eq!(
            sign_at(&p, &[Coord::Approx(iv)], Precision::default()).unwrap(),
            Sign::Positive
        );
        assert_eq!(
            sign_at(&x, &[Coord::Exact(rat(0))], Precision::default()).unwrap(),
            Sign::Zero
        );
        let third = Coord::Approx(RInterval::from_rat(&rat_frac(1, 3), 64));
        let q = &x.scale(&rat(3)) - &MultiPoly::one(1);
        assert_eq!(
            sign_at(&q, &[third], Precision::with_cap(128)).unwrap(),
            Sign::Unknown
        );
        assert!(sign_at(&q, &[], Precision::default()).is_err());
    }

    #[test]
    fn precision_doubling_decides() {
        // 1 - 3 * (1/3 - 2^-100) > 0 needs more than 64 bits.
        let eps =
            rat_frac(1, 1) / crate::rat::Rat::from_integer(num_bigint::BigInt::from(1) << 100);
        let t = rat_frac(1, 3) - eps;
        let s = decide_sign(Precision::default(), |prec| {
            let v = RInterval::from_rat(&t, prec);
            Some(&RInterval::from_i64(1, prec) - &(&RInterval::from_i64(3, prec) * &v))
        });
        assert_eq!(s, Sign::Positive);
    }
}
