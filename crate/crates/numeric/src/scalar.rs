use std::fmt::Debug;

use num_complex::Complex64;
use num_traits::Zero;

use crate::interval::RInterval;
use crate::rat::{rat_to_f64, Rat};

/// Minimal commutative-ring interface shared by exact rationals, intervals,
/// approximate complex numbers and polynomials.
///
/// `divided` is exact division where the ring has it (polynomials return
/// `None` when the division is not exact) and returns `None` for division by
/// zero (or by an interval containing zero).
pub trait Scalar: Clone + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_rat_like(&self, r: &Rat) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn divided(&self, o: &Self) -> Option<Self>;
    /// Exactly zero (for intervals: the point interval `[0,0]`).
    fn is_zero_exact(&self) -> bool;

    /// `self * self`; interval types override this with a tighter enclosure.
    fn squared(&self) -> Self {
        self.times(self)
    }

    fn pow(&self, n: u32) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.times(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.squared();
            }
        }
        acc
    }

    fn from_i64_like(&self, n: i64) -> Self {
        self.from_rat_like(&crate::rat::rat(n))
    }
}

impl Scalar for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        crate::rat::rat(1)
    }
    fn from_rat_like(&self, r: &Rat) -> Self {
        r.clone()
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
        if o.is_zero() {
            None
        } else {
            Some(self / o)
        }
    }
    fn is_zero_exact(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for RInterval {
    fn zero_like(&self) -> Self {
        RInterval::zero(self.prec())
    }
    fn one_like(&self) -> Self {
        RInterval::from_i64(1, self.prec())
    }
    fn from_rat_like(&self, r: &Rat) -> Self {
        RInterval::from_rat(r, self.prec())
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
        self.checked_div(o)
    }
    fn squared(&self) -> Self {
        self.square()
    }
    fn is_zero_exact(&self) -> bool {
        self.lo().is_zero() && self.hi().is_zero()
    }
}

impl Scalar for Complex64 {
    fn zero_like(&self) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one_like(&self) -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_rat_like(&self, r: &Rat) -> Self {
        Complex64::new(rat_to_f64(r), 0.0)
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
        if o.norm() == 0.0 {
            None
        } else {
            Some(self / o)
        }
    }
    fn is_zero_exact(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}

/// Horner evaluation of a dense coefficient slice (index = degree) at `x`.
pub fn horner<S: Scalar>(coeffs: &[S], x: &S) -> S {
    let mut acc = x.zero_like();
    for c in coeffs.iter().rev() {
        acc = acc.times(x).plus(c);
    }
    acc
}

/// 3x3 determinant over any scalar ring.
pub fn det3<S: Scalar>(m: &[[S; 3]; 3]) -> S {
    let t0 = m[1][1].times(&m[2][2]).minus(&m[1][2].times(&m[2][1]));
    let t1 = m[1][0].times(&m[2][2]).minus(&m[1][2].times(&m[2][0]));
    let t2 = m[1][0].times(&m[2][1]).minus(&m[1][1].times(&m[2][0]));
    m[0][0]
        .times(&t0)
        .minus(&m[0][1].times(&t1))
        .plus(&m[0][2].times(&t2))
}

/// Adjugate (transpose of the cofactor matrix) of a 3x3 matrix.
pub fn adjugate3<S: Scalar>(m: &[[S; 3]; 3]) -> [[S; 3]; 3] {
    let c = |r0: usize, r1: usize, c0: usize, c1: usize| {
        m[r0][c0]
            .times(&m[r1][c1])
            .minus(&m[r0][c1].times(&m[r1][c0]))
    };
    [
        [c(1, 2, 1, 2), c(0, 2, 1, 2).negated(), c(0, 1, 1, 2)],
        [
            c(1, 2, 0, 2).negated(),
            c(0, 2, 0, 2),
            c(0, 1, 0, 2).negated(),
        ],
        [c(1, 2, 0, 1), c(0, 2, 0, 1).negated(), c(0, 1, 0, 1)],
    ]
}

pub fn mat3_mul<S: Scalar>(a: &[[S; 3]; 3], b: &[[S; 3]; 3]) -> [[S; 3]; 3] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            a[i][0]
                .times(&b[0][j])
                .plus(&a[i][1].times(&b[1][j]))
                .plus(&a[i][2].times(&b[2][j]))
        })
    })
}

pub fn mat3_vec<S: Scalar>(a: &[[S; 3]; 3], v: &[S; 3]) -> [S; 3] {
    std::array::from_fn(|i| {
        a[i][0]
            .times(&v[0])
            .plus(&a[i][1].times(&v[1]))
            .plus(&a[i][2].times(&v[2]))
    })
}

pub fn transpose3<S: Scalar>(a: &[[S; 3]; 3]) -> [[S; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

pub fn dot3<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> S {
    a[0].times(&b[0])
        .plus(&a[1].times(&b[1]))
        .plus(&a[2].times(&b[2]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn adjugate_is_inverse_times_det() {
        let m = [
            [rat(2), rat(-1), rat(3)],
            [rat(0), rat(4), rat(1)],
            [rat(5), rat(2), rat(-2)],
        ];
        let d = det3(&m);
        let adj = adjugate3(&m);
        let p = mat3_mul(&m, &adj);
        for (i, row) in p.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert_eq!(*v, if i == j { d.clone() } else { rat(0) });
            }
        }
    }
}
