use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"n"`, `"n/d"` or a finite decimal such as `"-1.415"`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rat::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let neg = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        let int_val: BigInt = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            int_digits.parse().ok()?
        };
        let frac_val: BigInt = frac_part.parse().ok()?;
        let scale = num_traits::pow(BigInt::from(10), frac_part.len());
        let mag = Rat::new(int_val * &scale + frac_val, scale);
        return Some(if neg { -mag } else { mag });
    }
    let n: BigInt = s.parse().ok()?;
    Some(Rat::from_integer(n))
}

/// Canonical text form: `n` for integers, `n/d` otherwise.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Nearest f64 (may be infinite for huge values).
pub fn rat_to_f64(r: &Rat) -> f64 {
    crate::dyadic::Dyadic::from_rat(r, 64, crate::dyadic::Round::Floor).to_f64()
}

pub fn sign_of(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(it: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    use num_integer::Integer;
    it.into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_forms() {
        assert_eq!(parse_rat("3"), Some(rat(3)));
        assert_eq!(parse_rat("-6/4"), Some(rat_frac(-3, 2)));
        assert_eq!(parse_rat("-1.415"), Some(rat_frac(-1415, 1000)));
        assert_eq!(parse_rat("0.3075"), Some(rat_frac(3075, 10000)));
        assert_eq!(parse_rat("-.5"), Some(rat_frac(-1, 2)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("abc"), None);
        assert_eq!(format_rat(&rat_frac(6, -4)), "-3/2");
        assert_eq!(format_rat(&rat(7)), "7");
    }
}
