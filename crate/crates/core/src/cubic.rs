//! Pointed cubic surfaces and their branch quartics.
//!
//! A cubic surface `V(F) ⊂ P^3` with the point `p = [1, 0, 0, 0]`, tangent
//! plane `V(x3)` at `p` and the line `V(x0, x1)` on the surface has
//! `F = x0^2 A + x0 B + C` with `A = a2001 y3` and forms `B`, `C` of degrees
//! 2 and 3 in `y = (x1, x2, x3)`. Projection from `p` is branched over the
//! quartic `V(B^2 - 4AC)`, for which `V(y1)` is a bitangent; its type
//! relative to `V(y3)` equals the class of the determinant of a 4×4 matrix
//! in the coefficients of `B` and `C`.

use std::fmt;

use bitangent_numeric::rat::rat;
use bitangent_numeric::{MultiPoly, Rat, Scalar};
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{CoreError, Result};
use crate::geometry::{ProjLine, Quartic};
use crate::qtype::{det4, gw_report_excluding, GWClass};
use crate::solver::BitangentSet;

/// Exponents `(i, j, k, l)` of `x0^i x1^j x2^k x3^l`, graded
/// lexicographically.
pub const CUBIC_MONOMIALS: [[u32; 4]; 20] = [
    [3, 0, 0, 0],
    [2, 1, 0, 0],
    [2, 0, 1, 0],
    [2, 0, 0, 1],
    [1, 2, 0, 0],
    [1, 1, 1, 0],
    [1, 1, 0, 1],
    [1, 0, 2, 0],
    [1, 0, 1, 1],
    [1, 0, 0, 2],
    [0, 3, 0, 0],
    [0, 2, 1, 0],
    [0, 2, 0, 1],
    [0, 1, 2, 0],
    [0, 1, 1, 1],
    [0, 1, 0, 2],
    [0, 0, 3, 0],
    [0, 0, 2, 1],
    [0, 0, 1, 2],
    [0, 0, 0, 3],
];

/// Monomials whose coefficients vanish for a pointed cubic in normal form.
pub const VANISHING: [[u32; 4]; 7] = [
    [3, 0, 0, 0],
    [2, 1, 0, 0],
    [2, 0, 1, 0],
    [0, 0, 3, 0],
    [0, 0, 2, 1],
    [0, 0, 1, 2],
    [0, 0, 0, 3],
];

fn monomial_index(e: [u32; 4]) -> usize {
    CUBIC_MONOMIALS
        .iter()
        .position(|m| *m == e)
        .expect("exponents of a cubic monomial")
}

/// A cubic surface in the normal form of a pointed cubic.
#[derive(Clone, PartialEq, Eq)]
pub struct PointedCubic {
    coeffs: [Rat; 20],
}

impl PointedCubic {
    pub fn new(coeffs: [Rat; 20]) -> Result<PointedCubic> {
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(CoreError::InvalidCubic("zero form".into()));
        }
        for e in VANISHING {
            if !coeffs[monomial_index(e)].is_zero() {
                return Err(CoreError::InvalidCubic(format!(
                    "coefficient of x0^{} x1^{} x2^{} x3^{} must vanish",
                    e[0], e[1], e[2], e[3]
                )));
            }
        }
        Ok(PointedCubic { coeffs })
    }

    /// Build from `(exponents, coefficient)` pairs; unlisted monomials are
    /// zero.
    pub fn from_terms(terms: &[([u32; 4], Rat)]) -> Result<PointedCubic> {
        let mut coeffs: [Rat; 20] = std::array::from_fn(|_| Rat::zero());
        for (e, c) in terms {
            if e.iter().sum::<u32>() != 3 {
                return Err(CoreError::InvalidCubic(format!("{e:?} is not cubic")));
            }
            coeffs[monomial_index(*e)] = c.clone();
        }
        PointedCubic::new(coeffs)
    }

    /// Random admissible cubic with integer coefficients in `[-range, range]`
    /// and `a2001`, `a1020` nonzero.
    pub fn random(rng: &mut ChaCha8Rng, range: i64) -> PointedCubic {
        let mut coeffs: [Rat; 20] = std::array::from_fn(|_| Rat::zero());
        for (i, e) in CUBIC_MONOMIALS.iter().enumerate() {
            if VANISHING.contains(e) {
                continue;
            }
            let required = *e == [2, 0, 0, 1] || *e == [1, 0, 2, 0];
            coeffs[i] = loop {
                let v = rng.gen_range(-range..=range);
                if v != 0 || !required {
                    break rat(v);
                }
            };
        }
        PointedCubic::new(coeffs).expect("admissible by construction")
    }

    pub fn coeffs(&self) -> &[Rat; 20] {
        &self.coeffs
    }

    /// Coefficient of `x0^i x1^j x2^k x3^l`.
    pub fn a(&self, i: u32, j: u32, k: u32, l: u32) -> &Rat {
        &self.coeffs[monomial_index([i, j, k, l])]
    }

    /// The forms `(A, B, C)` in `y = (x1, x2, x3)`.
    pub fn forms(&self) -> (MultiPoly, MultiPoly, MultiPoly) {
        let mut parts = [MultiPoly::zero(3), MultiPoly::zero(3), MultiPoly::zero(3)];
        for (e, c) in CUBIC_MONOMIALS.iter().zip(&self.coeffs) {
            if e[0] <= 2 && !c.is_zero() {
                parts[2 - e[0] as usize].add_term(vec![e[1], e[2], e[3]], c.clone());
            }
        }
        let [a, b, c] = parts;
        (a, b, c)
    }

    /// The branch quartic `B^2 - 4AC`.
    pub fn branch_quartic(&self) -> Result<Quartic> {
        let (a, b, c) = self.forms();
        let f = &(&b * &b) - &(&(&a * &c).scale(&rat(4)));
        Quartic::from_poly(&f)
    }

    /// The 4×4 matrix whose determinant gives the type of the line.
    pub fn kw_type(&self) -> KWDeterminant {
        let [b20, b11, b02] =
            [self.a(1, 0, 2, 0), self.a(1, 0, 1, 1), self.a(1, 0, 0, 2)].map(Clone::clone);
        let [c20, c11, c02] =
            [self.a(0, 1, 2, 0), self.a(0, 1, 1, 1), self.a(0, 1, 0, 2)].map(Clone::clone);
        let z = Rat::zero();
        let matrix = [
            [b20.clone(), z.clone(), c20.clone(), z.clone()],
            [b11.clone(), b20, c11.clone(), c20],
            [b02.clone(), b11, c02.clone(), c11],
            [z.clone(), b02, z, c02],
        ];
        let value = det4(&matrix);
        KWDeterminant { matrix, value }
    }

    /// The tangency points of `V(y1)` with the branch quartic,
    /// `[0, -a1011 ± d, 2 a1020]` with `d^2 = a1011^2 - 4 a1020 a1002`.
    pub fn bridge_tangency(&self) -> Result<BridgeTangency> {
        let (b20, b11, b02) = (self.a(1, 0, 2, 0), self.a(1, 0, 1, 1), self.a(1, 0, 0, 2));
        if b20.is_zero() {
            return Err(CoreError::TangencyFormulaDegenerate);
        }
        let d2 = &(b11 * b11) - &(&(b20 * b02) * &rat(4));
        let c = |a: Rat, b: Rat| Surd::new(a, b, d2.clone());
        let points = [1, -1].map(|s| {
            [
                c(Rat::zero(), Rat::zero()),
                c(-b11, rat(s)),
                c(b20 * rat(2), Rat::zero()),
            ]
        });
        Ok(BridgeTangency {
            points,
            d_squared: d2,
        })
    }

    /// Both sides of `df/dy1(z1) * df/dy1(z2) = 1024 a2001^2 a1020^4 M`.
    pub fn verify_sametype_identity(&self) -> Result<SameTypeIdentity> {
        let t = self.bridge_tangency()?;
        let (a, b, c) = self.forms();
        let f = &(&b * &b) - &(&(&a * &c).scale(&rat(4)));
        let d1 = f.derivative(0);
        let v1 = d1.eval_with(&t.points[0])?;
        let v2 = d1.eval_with(&t.points[1])?;
        let prod = v1.times(&v2);
        debug_assert!(prod.b.is_zero(), "product of conjugates is rational");
        let m = self.kw_type().value;
        let rhs = &(&(&rat(1024) * &self.a(2, 0, 0, 1).pow(2)) * &self.a(1, 0, 2, 0).pow(4)) * &m;
        Ok(SameTypeIdentity {
            holds: prod.a == rhs,
            lhs: prod.a,
            rhs,
            m,
        })
    }
}

impl fmt::Debug for PointedCubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointedCubic(")?;
        let mut first = true;
        for (e, c) in CUBIC_MONOMIALS.iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "a{}{}{}{}={}", e[0], e[1], e[2], e[3], c)?;
        }
        write!(f, ")")
    }
}

/// The determinant `M` and its matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KWDeterminant {
    pub matrix: [[Rat; 4]; 4],
    pub value: Rat,
}

impl KWDeterminant {
    /// `<1>` or `<-1>`, `None` when `M = 0`.
    pub fn class(&self) -> Option<GWClass> {
        (!self.value.is_zero())
            .then(|| GWClass::from_sign(if self.value.is_positive() { 1 } else { -1 }))
    }
}

/// Element `a + b d` of `Q(d)` with `d^2` fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    pub a: Rat,
    pub b: Rat,
    pub d2: Rat,
}

impl Surd {
    pub fn new(a: Rat, b: Rat, d2: Rat) -> Surd {
        Surd { a, b, d2 }
    }

    /// The image under `d -> -d`.
    pub fn conjugate(&self) -> Surd {
        Surd::new(self.a.clone(), -&self.b, self.d2.clone())
    }

    /// `(a + b d)(a - b d)`.
    pub fn norm(&self) -> Rat {
        &(&self.a * &self.a) - &(&(&self.b * &self.b) * &self.d2)
    }
}

impl Scalar for Surd {
    fn zero_like(&self) -> Self {
        Surd::new(Rat::zero(), Rat::zero(), self.d2.clone())
    }
    fn one_like(&self) -> Self {
        Surd::new(rat(1), Rat::zero(), self.d2.clone())
    }
    fn from_rat_like(&self, r: &Rat) -> Self {
        Surd::new(r.clone(), Rat::zero(), self.d2.clone())
    }
    fn plus(&self, o: &Self) -> Self {
        Surd::new(&self.a + &o.a, &self.b + &o.b, self.d2.clone())
    }
    fn minus(&self, o: &Self) -> Self {
        Surd::new(&self.a - &o.a, &self.b - &o.b, self.d2.clone())
    }
    fn times(&self, o: &Self) -> Self {
        let a = &(&self.a * &o.a) + &(&(&self.b * &o.b) * &self.d2);
        let b = &(&self.a * &o.b) + &(&self.b * &o.a);
        Surd::new(a, b, self.d2.clone())
    }
    fn negated(&self) -> Self {
        Surd::new(-&self.a, -&self.b, self.d2.clone())
    }
    fn divided(&self, o: &Self) -> Option<Self> {
        let n = o.norm();
        if n.is_zero() {
            return None;
        }
        let p = self.times(&o.conjugate());
        Some(Surd::new(&p.a / &n, &p.b / &n, self.d2.clone()))
    }
    fn is_zero_exact(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

/// Tangency points of `V(y1)` with the branch quartic over `Q(d)`.
#[derive(Clone, Debug)]
pub struct BridgeTangency {
    pub points: [[Surd; 3]; 2],
    pub d_squared: Rat,
}

impl BridgeTangency {
    /// The two points coincide (`d^2 = 0`), making `V(y1)` a hyperflex.
    pub fn is_hyperflex(&self) -> bool {
        self.d_squared.is_zero()
    }
}

/// Both sides of the same-type identity.
#[derive(Clone, Debug)]
pub struct SameTypeIdentity {
    pub lhs: Rat,
    pub rhs: Rat,
    pub m: Rat,
    pub holds: bool,
}

/// Outcome of the signature check for the bitangents other than `L`.
#[derive(Clone, Debug)]
pub struct MainTheoremCheck {
    pub bitangent: usize,
    pub class: GWClass,
    pub passed: bool,
}

/// Sum of the types of the 27 bitangents other than the rational bitangent
/// `V(l)`, relative to `V(l)`. Passes iff it has rank 27 and signature 3.
pub fn verify_theorem_main(set: &BitangentSet, l: &ProjLine) -> Result<MainTheoremCheck> {
    let idx = set.find_rational_line(l).ok_or(CoreError::NotABitangent)?;
    let class = gw_report_excluding(set, l, Some(idx))?;
    Ok(MainTheoremCheck {
        bitangent: idx,
        passed: class.rank() == 27 && class.signature() == 3,
        class,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use bitangent_numeric::rat::rat_frac;
    use rand::SeedableRng;

    fn sample() -> PointedCubic {
        let t = |e: [u32; 4], v: i64| (e, rat(v));
        PointedCubic::from_terms(&[
            t([1, 2, 0, 0], 1),
            t([1, 1, 1, 0], -2),
            t([1, 1, 0, 1], 3),
            t([1, 0, 2, 0], 2),
            t([1, 0, 1, 1], 1),
            t([1, 0, 0, 2], -1),
            t([0, 1, 2, 0], 1),
            t([0, 1, 1, 1], 2),
            t([0, 1, 0, 2], -3),
            t([0, 2, 1, 0], 1),
            t([0, 2, 0, 1], 0),
            t([0, 3, 0, 0], 2),
            t([2, 0, 0, 1], 3),
        ])
        .unwrap()
    }

    #[test]
    fn branch_quartic_matches_symbolic_expansion() {
        let f = sample().branch_quartic().unwrap();
        let expected = [1, -4, -18, 8, -22, 7, -8, -4, -14, 30, 4, 4, -3, -2, 1];
        assert_eq!(f, Quartic::from_i64s(expected).unwrap());
    }

    #[test]
    fn identity_on_fixed_cubic() {
        let v = sample();
        assert_eq!(v.kw_type().value, rat(28));
        let id = v.verify_sametype_identity().unwrap();
        assert_eq!(id.lhs, rat(4128768));
        assert!(id.holds);
        assert_eq!(v.bridge_tangency().unwrap().d_squared, rat(9));
    }

    #[test]
    fn restriction_to_the_bitangent_is_a_square() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let v = PointedCubic::random(&mut rng, 5);
            let f = v.branch_quartic().unwrap();
            let (b20, b11, b02) = (v.a(1, 0, 2, 0), v.a(1, 0, 1, 1), v.a(1, 0, 0, 2));
            // (b20 y2^2 + b11 y2 y3 + b02 y3^2)^2
            let sq = [
                b20 * b20,
                &(b20 * b11) * &rat(2),
                &(b11 * b11) + &(&(b20 * b02) * &rat(2)),
                &(b11 * b02) * &rat(2),
                b02 * b02,
            ];
            for (k, c) in sq.iter().enumerate() {
                assert_eq!(&f.coeff(0, 4 - k as u32, k as u32), c);
            }
        }
    }

    #[test]
    fn block_diagonal_determinant() {
        let v = PointedCubic::from_terms(&[
            ([2, 0, 0, 1], rat(1)),
            ([1, 0, 2, 0], rat(3)),
            ([1, 0, 0, 2], rat(-2)),
            ([0, 1, 2, 0], rat(5)),
            ([0, 1, 0, 2], rat_frac(1, 2)),
        ])
        .unwrap();
        // (a1020 a0102 - a0120 a1002)^2 = (3/2 + 10)^2
        assert_eq!(v.kw_type().value, rat_frac(529, 4));
        let t = v.bridge_tangency().unwrap();
        assert_eq!(t.points[0][1], Surd::new(Rat::zero(), rat(1), rat(24)));
    }

    #[test]
    fn tangency_points_lie_on_the_quartic() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..10 {
            let v = PointedCubic::random(&mut rng, 4);
            let f = v.branch_quartic().unwrap().poly();
            for p in v.bridge_tangency().unwrap().points {
                assert!(f.eval_with(&p).unwrap().is_zero_exact());
                // The gradient is normal to V(y1).
                for i in [1, 2] {
                    assert!(f.derivative(i).eval_with(&p).unwrap().is_zero_exact());
                }
            }
        }
    }

    #[test]
    fn vanishing_a_gives_a_double_conic() {
        let v = PointedCubic::from_terms(&[
            ([1, 0, 2, 0], rat(1)),
            ([1, 1, 0, 1], rat(2)),
            ([0, 1, 1, 1], rat(1)),
        ])
        .unwrap();
        let (_, b, _) = v.forms();
        let f = v.branch_quartic().unwrap();
        assert_eq!(f.poly(), &b * &b);
        assert!(!f.is_smooth());
    }

    #[test]
    fn invalid_cubics_are_rejected() {
        assert!(PointedCubic::from_terms(&[([3, 0, 0, 0], rat(1))]).is_err());
        assert!(PointedCubic::from_terms(&[]).is_err());
        let degenerate = PointedCubic::from_terms(&[([2, 0, 0, 1], rat(1))]).unwrap();
        assert!(matches!(
            degenerate.bridge_tangency(),
            Err(CoreError::TangencyFormulaDegenerate)
        ));
    }
}
