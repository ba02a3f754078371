//! Types of bitangents relative to a line at infinity, the local index in
//! standard coordinates, signed counts and the Grothendieck–Witt report.
//!
//! For a real bitangent `L` with tangency points `z1`, `z2` and a line at
//! infinity `V(m)`, write `grad f(z_i) = mu_i l`. The type is the sign of
//! `mu_1 mu_2 (m . z1)(m . z2)`, which does not depend on the scaling of the
//! `z_i`, of `f`, or of `l` and `m`.

use std::fmt;
use std::ops::{Add, AddAssign};

use bitangent_numeric::rat::{rat, sign_of};
use bitangent_numeric::scalar::det3;
use bitangent_numeric::{MultiPoly, RInterval, Rat, Scalar, Sign};
use rayon::prelude::*;

use crate::error::{CoreError, Result};
use crate::geometry::{restrict_form, ProjLine, Quartic};
use crate::solver::{
    compute_bitangents, root_of_divisor, Bitangent, BitangentSet, ChartEval, Reality,
};

/// Working precision, in bits, below which interval decisions are retried
/// before the exact incidence test is run.
const QUICK_CAP: u32 = 512;

/// An element of GW(R): `n_plus <1> + n_minus <-1>`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct GWClass {
    pub n_plus: usize,
    pub n_minus: usize,
}

impl GWClass {
    pub const PLUS: GWClass = GWClass {
        n_plus: 1,
        n_minus: 0,
    };
    pub const MINUS: GWClass = GWClass {
        n_plus: 0,
        n_minus: 1,
    };
    /// `<1> + <-1>`, the trace of a rank-one form from C to R.
    pub const HYPERBOLIC: GWClass = GWClass {
        n_plus: 1,
        n_minus: 1,
    };

    pub fn new(n_plus: usize, n_minus: usize) -> GWClass {
        GWClass { n_plus, n_minus }
    }

    /// `<1>` for positive signs, `<-1>` for negative ones.
    pub fn from_sign(s: i8) -> GWClass {
        if s > 0 {
            GWClass::PLUS
        } else {
            GWClass::MINUS
        }
    }

    pub fn rank(&self) -> usize {
        self.n_plus + self.n_minus
    }

    pub fn signature(&self) -> i64 {
        self.n_plus as i64 - self.n_minus as i64
    }

    pub fn times(&self, k: usize) -> GWClass {
        GWClass::new(self.n_plus * k, self.n_minus * k)
    }
}

impl Add for GWClass {
    type Output = GWClass;
    fn add(self, o: GWClass) -> GWClass {
        GWClass::new(self.n_plus + o.n_plus, self.n_minus + o.n_minus)
    }
}

impl AddAssign for GWClass {
    fn add_assign(&mut self, o: GWClass) {
        *self = *self + o;
    }
}

impl std::iter::Sum for GWClass {
    fn sum<I: Iterator<Item = GWClass>>(iter: I) -> GWClass {
        iter.fold(GWClass::default(), |a, b| a + b)
    }
}

impl fmt::Display for GWClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}<1> + {}<-1>", self.n_plus, self.n_minus)
    }
}

/// Scalars whose sign can be certified (exactly or by an enclosure).
pub trait CertifiedSign: Scalar {
    fn certified_sign(&self) -> Sign;
    /// Do two values agree (exactly, or as overlapping enclosures)?
    fn agrees_with(&self, o: &Self) -> bool;
}

impl CertifiedSign for Rat {
    fn certified_sign(&self) -> Sign {
        Sign::from_i8(sign_of(self))
    }
    fn agrees_with(&self, o: &Self) -> bool {
        self == o
    }
}

impl CertifiedSign for RInterval {
    fn certified_sign(&self) -> Sign {
        let s = self.sign();
        if s == Sign::Zero || s.is_definite() {
            s
        } else {
            Sign::Unknown
        }
    }
    fn agrees_with(&self, o: &Self) -> bool {
        self.overlaps(o)
    }
}

/// `(m2 - a m1, m3 - b m1)`: the line at infinity restricted to
/// `V(y1 + a y2 + b y3)`, in the coordinates `(y2, y3)`.
fn restricted_form<S: Scalar>(a: &S, b: &S, mw: &[S; 3]) -> (S, S) {
    (mw[1].minus(&a.times(&mw[0])), mw[2].minus(&b.times(&mw[0])))
}

/// The same, as polynomials in `(a, b)`.
fn restricted_form_poly(mw: &[Rat; 3]) -> (MultiPoly, MultiPoly) {
    let a = MultiPoly::var(0, 2);
    let b = MultiPoly::var(1, 2);
    let c = |r: &Rat| MultiPoly::constant(r.clone(), 2);
    (&c(&mw[1]) - &a.scale(&mw[0]), &c(&mw[2]) - &b.scale(&mw[0]))
}

/// Polynomial in `(a, b)` vanishing exactly when the line at infinity passes
/// through a tangency point of `V(y1 + a y2 + b y3)`.
fn incidence_poly(bt: &Bitangent, mw: &[Rat; 3]) -> MultiPoly {
    let q = &bt.chart().q;
    let (m2, m3) = restricted_form_poly(mw);
    let c = |n: i64| MultiPoly::constant(rat(n), 2);
    if bt.hyperflex() {
        // The double point has parameter t = -q3 / (4 q4).
        return &(&(&c(4) * &q[4]) * &m3) - &(&q[3] * &m2);
    }
    // 8 q4^2 times the resultant of t^2 + s t + p and m2 t + m3.
    let t0 = &(&(&c(8) * &q[4]) * &q[4]) * &(&m3 * &m3);
    let t1 = &(&(&c(4) * &q[4]) * &q[3]) * &(&m2 * &m3);
    let w = &(&(&c(4) * &q[4]) * &q[2]) - &(&q[3] * &q[3]);
    let t2 = &w * &(&m2 * &m2);
    &(&t0 - &t1) + &t2
}

/// Exact test: does the line at infinity meet the tangency scheme?
pub fn meets_tangency_exactly(bt: &Bitangent, m: &ProjLine) -> bool {
    let Some(root) = bt.root() else {
        return false;
    };
    let mw = bt.chart().line_to_work(m);
    let n = bt.chart().substitute_b(&incidence_poly(bt, &mw));
    if n.is_zero() {
        return true;
    }
    root_of_divisor(root, &n.gcd(&root.factor))
}

/// Run an interval decision with increasing precision; if it stays
/// undecided past [`QUICK_CAP`], check exactly whether the line at infinity
/// meets the tangency scheme before continuing to the precision cap.
fn decide_for_line<T>(
    bt: &Bitangent,
    m: &ProjLine,
    mut decide: impl FnMut(&ChartEval) -> Option<T>,
) -> Result<T> {
    let precision = bt.chart().precision;
    let mut checked = false;
    for prec in precision.schedule() {
        if prec > QUICK_CAP && !checked {
            if meets_tangency_exactly(bt, m) {
                return Err(CoreError::TangencyOnLineAtInfinity);
            }
            checked = true;
        }
        if let Some(e) = bt.eval(prec) {
            if let Some(v) = decide(&e) {
                return Ok(v);
            }
        }
    }
    if !checked && meets_tangency_exactly(bt, m) {
        return Err(CoreError::TangencyOnLineAtInfinity);
    }
    Err(CoreError::Undecidable(precision.cap_bits))
}

/// `mu_1 mu_2 (m . z1)(m . z2)` for a split bitangent as a symmetric
/// function of the tangency points: with `R(t) = d1f(z(t)) (m . z(t))` and
/// `R mod (t^2 + s t + p) = alpha t + beta`, the product is
/// `alpha^2 p - alpha beta s + beta^2`.
fn split_product(e: &ChartEval, d1: &MultiPoly, mw: &[RInterval; 3]) -> RInterval {
    let zero = RInterval::zero(e.prec);
    let one = RInterval::from_i64(1, e.prec);
    let subs = [
        [-&e.a, -&e.b],
        [one.clone(), zero.clone()],
        [zero.clone(), one.clone()],
    ];
    let d = restrict_form(d1, &subs, &zero);
    let (m2, m3) = restricted_form(&e.a, &e.b, mw);
    let mut r = vec![zero.clone(); d.len() + 1];
    for (k, c) in d.iter().enumerate() {
        r[k] = &r[k] + &(c * &m3);
        r[k + 1] = &r[k + 1] + &(c * &m2);
    }
    for k in (2..r.len()).rev() {
        let c = r[k].clone();
        r[k - 1] = &r[k - 1] - &(&c * &e.s);
        r[k - 2] = &r[k - 2] - &(&c * &e.p);
    }
    let (alpha, beta) = (&r[1], &r[0]);
    let t = &(&alpha.square() * &e.p) - &(&(alpha * beta) * &e.s);
    &t + &beta.square()
}

fn interval_line(m: &[Rat; 3], prec: u32) -> [RInterval; 3] {
    std::array::from_fn(|i| RInterval::from_rat(&m[i], prec))
}

/// Sign (`1` or `-1`) of the type of a real bitangent relative to `V(m)`.
pub fn qtype_sign(bt: &Bitangent, m: &ProjLine) -> Result<i8> {
    if !bt.is_real() {
        return Err(CoreError::NotReal);
    }
    if bt.is_line(m) {
        return Err(CoreError::LineAtInfinityIsBitangent);
    }
    let mw = bt.chart().line_to_work(m);
    if bt.reality() == Reality::RealNonSplit {
        // Conjugate tangency points: the product is a norm, hence positive.
        return Ok(1);
    }
    if bt.hyperflex() {
        // The product is a square; it only has to be nonzero.
        return decide_for_line(bt, m, |e| {
            let miw = interval_line(&mw, e.prec);
            let (m2, m3) = restricted_form(&e.a, &e.b, &miw);
            let half = RInterval::from_rat(&Rat::new(1.into(), 2.into()), e.prec);
            let t0 = -&(&e.s * &half);
            let v = &(&m2 * &t0) + &m3;
            v.sign().is_definite().then_some(1)
        });
    }
    let d1 = bt.chart().work.poly().derivative(0);
    decide_for_line(bt, m, |e| {
        let miw = interval_line(&mw, e.prec);
        split_product(e, &d1, &miw)
            .sign()
            .to_i8()
            .filter(|s| *s != 0)
    })
}

/// The type `<1>` or `<-1>` of a real bitangent relative to `V(m)`.
pub fn qtype(bt: &Bitangent, m: &ProjLine) -> Result<GWClass> {
    qtype_sign(bt, m).map(GWClass::from_sign)
}

/// Types of all real bitangents (`None` for complex representatives).
pub fn qtype_signs(set: &BitangentSet, m: &ProjLine) -> Result<Vec<Option<i8>>> {
    set.bitangents()
        .par_iter()
        .map(|bt| {
            if bt.is_real() {
                qtype_sign(bt, m).map(Some)
            } else {
                Ok(None)
            }
        })
        .collect()
}

fn hypothesis_error(e: CoreError) -> CoreError {
    match e {
        CoreError::TangencyOnLineAtInfinity => CoreError::LineAtInfinityMeetsTangency,
        other => other,
    }
}

/// Signed count of real bitangents relative to `V(m)`.
pub fn signed_count(f: &Quartic, m: &ProjLine) -> Result<i64> {
    signed_count_of(&compute_bitangents(f, 0)?, m)
}

pub fn signed_count_of(set: &BitangentSet, m: &ProjLine) -> Result<i64> {
    let signs = qtype_signs(set, m).map_err(hypothesis_error)?;
    Ok(set
        .bitangents()
        .iter()
        .zip(signs)
        .filter_map(|(bt, s)| s.map(|s| s as i64 * bt.multiplicity() as i64))
        .sum())
}

/// Sum of the types of all 28 bitangents relative to `V(m)`: real ones
/// contribute their type, conjugate pairs a hyperbolic form.
pub fn gw_report(f: &Quartic, m: &ProjLine) -> Result<GWClass> {
    gw_report_of(&compute_bitangents(f, 0)?, m)
}

pub fn gw_report_of(set: &BitangentSet, m: &ProjLine) -> Result<GWClass> {
    gw_report_excluding(set, m, None)
}

/// As [`gw_report_of`], leaving out the bitangent at index `skip`.
pub fn gw_report_excluding(
    set: &BitangentSet,
    m: &ProjLine,
    skip: Option<usize>,
) -> Result<GWClass> {
    let signs: Vec<Option<i8>> = set
        .bitangents()
        .par_iter()
        .enumerate()
        .map(|(i, bt)| {
            if Some(i) == skip || !bt.is_real() {
                Ok(None)
            } else {
                qtype_sign(bt, m).map(Some)
            }
        })
        .collect::<Result<_>>()
        .map_err(hypothesis_error)?;
    let mut total = GWClass::default();
    for (i, (bt, s)) in set.bitangents().iter().zip(signs).enumerate() {
        if Some(i) == skip {
            continue;
        }
        total += match s {
            Some(s) => GWClass::from_sign(s).times(bt.multiplicity()),
            None => GWClass::HYPERBOLIC.times(bt.multiplicity()),
        };
    }
    Ok(total)
}

/// Standard coordinates `Y = N y'` around a bitangent, in which the bitangent
/// is `V(Y1)`, the line at infinity is `V(Y3)`, and after dividing by
/// `kappa`, `f|_{Y1 = 0} = (Y2^2 + alpha Y3^2)^2`.
#[derive(Clone, Debug)]
pub struct StandardChartData<S> {
    /// Rows `l, n, m` of `N`, in work coordinates.
    pub frame: [[S; 3]; 3],
    pub alpha: S,
    pub kappa: S,
    /// `c_130, c_121, c_112, c_103`: coefficients of `Y1 Y2^j Y3^k` in
    /// `f / kappa`.
    pub c: [S; 4],
    /// `e3`, `e1`, `e2 - 2 alpha kappa`, `e0 - alpha^2 kappa`, where `e_k`
    /// is the coefficient of `Y2^k Y3^(4-k)` in `f|_{Y1 = 0}`; all vanish.
    pub residuals: [S; 4],
}

/// Build the standard chart for the line `V(y1 + a y2 + b y3)` of `work`
/// with tangency quadratic `y2^2 + s y2 y3 + p y3^2` and line at infinity
/// `mw`. `use_y2` picks the complementary form `y2` (otherwise `y3`); it
/// should be the coordinate in which the restricted line at infinity has the
/// smaller coefficient. Returns `None` when a division by zero occurs, which
/// for exact scalars means the tangency scheme meets the line at infinity.
pub fn standard_chart_from<S: Scalar>(
    work: &MultiPoly,
    a: &S,
    b: &S,
    s: &S,
    p: &S,
    mw: &[S; 3],
    use_y2: bool,
) -> Option<StandardChartData<S>> {
    let zero = a.zero_like();
    let one = a.one_like();
    let two = a.from_i64_like(2);
    let four = a.from_i64_like(4);
    let (m2, m3) = restricted_form(a, b, mw);
    let tq = |u: &S, v: &S| {
        u.squared()
            .plus(&s.times(&u.times(v)))
            .plus(&p.times(&v.squared()))
    };
    // k is the complementary form; w and w2 are dual to (k, m) on the line.
    let (k, w, w2) = if use_y2 {
        let inv = one.divided(&m3)?;
        (
            (one.clone(), zero.clone()),
            (one.clone(), m2.negated().times(&inv)),
            (zero.clone(), inv),
        )
    } else {
        let inv = one.divided(&m2)?;
        (
            (zero.clone(), one.clone()),
            (m3.negated().times(&inv), one.clone()),
            (inv, zero.clone()),
        )
    };
    let ca = tq(&w.0, &w.1);
    let cc = tq(&w2.0, &w2.1);
    let cb = tq(&w.0.plus(&w2.0), &w.1.plus(&w2.1)).minus(&ca).minus(&cc);
    let lambda = cb.divided(&two.times(&ca))?;
    let n2 = k.0.plus(&lambda.times(&m2));
    let n3 = k.1.plus(&lambda.times(&m3));
    let alpha = four
        .times(&ca)
        .times(&cc)
        .minus(&cb.squared())
        .divided(&four.times(&ca.squared()))?;
    let det = n2.times(&m3).minus(&n3.times(&m2));
    // (y2, y3) in terms of (Y2, Y3) on the line.
    let y2 = [m3.divided(&det)?, n3.negated().divided(&det)?];
    let y3 = [m2.negated().divided(&det)?, n2.divided(&det)?];
    let y1 = [
        a.times(&y2[0]).plus(&b.times(&y3[0])).negated(),
        a.times(&y2[1]).plus(&b.times(&y3[1])).negated(),
    ];
    let subs = [y1, y2, y3];
    let e = restrict_form(work, &subs, a);
    let kappa = e[4].clone();
    // v = (n x m) / det N is the Y1 direction.
    let nw = [zero.clone(), n2.clone(), n3.clone()];
    let cross = [
        nw[1].times(&mw[2]).minus(&nw[2].times(&mw[1])),
        nw[2].times(&mw[0]).minus(&nw[0].times(&mw[2])),
        nw[0].times(&mw[1]).minus(&nw[1].times(&mw[0])),
    ];
    let mut dpoly: Vec<S> = Vec::new();
    for (i, ci) in cross.iter().enumerate() {
        let v = ci.divided(&det)?;
        let part = restrict_form(&work.derivative(i), &subs, a);
        if dpoly.is_empty() {
            dpoly = vec![zero.clone(); part.len()];
        }
        for (acc, c) in dpoly.iter_mut().zip(&part) {
            *acc = acc.plus(&v.times(c));
        }
    }
    let c = [
        dpoly[3].divided(&kappa)?,
        dpoly[2].divided(&kappa)?,
        dpoly[1].divided(&kappa)?,
        dpoly[0].divided(&kappa)?,
    ];
    let residuals = [
        e[3].clone(),
        e[1].clone(),
        e[2].minus(&two.times(&alpha).times(&kappa)),
        e[0].minus(&alpha.squared().times(&kappa)),
    ];
    let frame = [[one.clone(), a.clone(), b.clone()], nw, mw.clone()];
    Some(StandardChartData {
        frame,
        alpha,
        kappa,
        c,
        residuals,
    })
}

/// Standard chart of a real bitangent relative to `V(m)`, evaluated with the
/// bitangent parameters refined to `prec` bits.
pub fn standard_chart(
    bt: &Bitangent,
    m: &ProjLine,
    prec: u32,
) -> Result<StandardChartData<RInterval>> {
    if !bt.is_real() {
        return Err(CoreError::NotReal);
    }
    let e = bt.eval(prec).ok_or(CoreError::Undecidable(prec))?;
    let mw = bt.chart().line_to_work(m);
    let miw = interval_line(&mw, e.prec);
    let (m2, m3) = restricted_form(&e.a, &e.b, &miw);
    let use_y2 = m3.mid_f64().abs() >= m2.mid_f64().abs();
    standard_chart_from(
        &bt.chart().work.poly(),
        &e.a,
        &e.b,
        &e.s,
        &e.p,
        &miw,
        use_y2,
    )
    .ok_or(CoreError::Undecidable(prec))
}

/// The Jacobian of the local equations at a zero in standard coordinates,
/// its determinant and the closed form it equals up to the factor 4.
#[derive(Clone, Debug)]
pub struct LocalIndex<S> {
    pub jacobian: [[S; 4]; 4],
    pub det: S,
    /// `alpha^3 c130^2 + (c121^2 - 2 c130 c112) alpha^2
    ///  + (c112^2 - 2 c103 c121) alpha + c103^2`.
    pub rhs: S,
    pub sign: Sign,
}

impl<S> LocalIndex<S> {
    pub fn class(&self) -> Option<GWClass> {
        self.sign
            .to_i8()
            .filter(|s| *s != 0)
            .map(GWClass::from_sign)
    }
}

pub fn det4<S: Scalar>(m: &[[S; 4]; 4]) -> S {
    let mut acc = m[0][0].zero_like();
    for col in 0..4 {
        let minor: [[S; 3]; 3] = std::array::from_fn(|i| {
            std::array::from_fn(|j| m[i + 1][if j < col { j } else { j + 1 }].clone())
        });
        let t = m[0][col].times(&det3(&minor));
        acc = if col % 2 == 0 {
            acc.plus(&t)
        } else {
            acc.minus(&t)
        };
    }
    acc
}

pub fn local_index_from<S: CertifiedSign>(alpha: &S, c: &[S; 4]) -> Result<LocalIndex<S>> {
    let [c130, c121, c112, c103] = c;
    let z = alpha.zero_like();
    let two = alpha.from_i64_like(2);
    let four = alpha.from_i64_like(4);
    let al2 = alpha.squared();
    let jacobian = [
        [
            c121.negated(),
            two.times(c130).times(alpha).minus(c112),
            c103.negated(),
            c130.times(&al2),
        ],
        [
            c130.negated(),
            c121.negated(),
            c112.negated(),
            c103.negated(),
        ],
        [
            two.negated(),
            z.clone(),
            two.times(alpha).negated(),
            z.clone(),
        ],
        [
            z.clone(),
            two.negated(),
            z.clone(),
            two.times(alpha).negated(),
        ],
    ];
    let det = det4(&jacobian);
    let rhs = al2
        .times(alpha)
        .times(&c130.squared())
        .plus(
            &c121
                .squared()
                .minus(&two.times(c130).times(c112))
                .times(&al2),
        )
        .plus(
            &c112
                .squared()
                .minus(&two.times(c103).times(c121))
                .times(alpha),
        )
        .plus(&c103.squared());
    let sign = det.certified_sign();
    if sign == Sign::Zero {
        return Err(CoreError::NonSimpleZero);
    }
    let quadruple = four.times(&rhs);
    assert!(
        det.agrees_with(&quadruple),
        "Jacobian determinant disagrees with its closed form"
    );
    Ok(LocalIndex {
        jacobian,
        det,
        rhs,
        sign,
    })
}

pub fn local_index<S: CertifiedSign>(data: &StandardChartData<S>) -> Result<LocalIndex<S>> {
    local_index_from(&data.alpha, &data.c)
}

/// Local index of a real bitangent relative to `V(m)`, with the precision
/// raised until the sign of the Jacobian determinant is certified.
pub fn local_index_of(bt: &Bitangent, m: &ProjLine) -> Result<(GWClass, LocalIndex<RInterval>)> {
    if !bt.is_real() {
        return Err(CoreError::NotReal);
    }
    if bt.is_line(m) {
        return Err(CoreError::LineAtInfinityIsBitangent);
    }
    let precision = bt.chart().precision;
    let mut checked = false;
    for prec in precision.schedule() {
        if prec > QUICK_CAP && !checked {
            if meets_tangency_exactly(bt, m) {
                return Err(CoreError::TangencyOnLineAtInfinity);
            }
            checked = true;
        }
        let Ok(data) = standard_chart(bt, m, prec) else {
            continue;
        };
        let li = local_index(&data)?;
        if let Some(c) = li.class() {
            return Ok((c, li));
        }
    }
    Err(CoreError::Undecidable(precision.cap_bits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use bitangent_numeric::rat::rat_frac;
    use num_traits::Zero;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn closed_form_examples() {
        let li = local_index_from(&rat(5), &[rat(0), rat(0), rat(0), rat(1)]).unwrap();
        assert_eq!(li.rhs, rat(1));
        assert_eq!(li.class(), Some(GWClass::PLUS));
        let li = local_index_from(&rat(-1), &[rat(0), rat(0), rat(1), rat(0)]).unwrap();
        assert_eq!(li.rhs, rat(-1));
        assert_eq!(li.class(), Some(GWClass::MINUS));
        assert_eq!(
            local_index_from(&rat(2), &[rat(0), rat(0), rat(0), rat(0)]).unwrap_err(),
            CoreError::NonSimpleZero
        );
    }

    #[test]
    fn determinant_is_four_times_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut r = || rat_frac(rng.gen_range(-40..=40), rng.gen_range(1..=9));
        for _ in 0..50 {
            let alpha = r();
            let c = [r(), r(), r(), r()];
            match local_index_from(&alpha, &c) {
                Ok(li) => assert_eq!(li.det, &li.rhs * rat(4)),
                Err(e) => assert_eq!(e, CoreError::NonSimpleZero),
            }
        }
    }

    #[test]
    fn standard_form_is_recovered_exactly() {
        // f = y1 (2 y2^3 - y2^2 y3 + 3 y2 y3^2 + 5 y3^3) + y1^2 (y2 y3 - y1^2)
        //     + (y2^2 - 3 y3^2)^2
        let y = |i| MultiPoly::var(i, 3);
        let cst = |n: i64| MultiPoly::constant(rat(n), 3);
        let (y1, y2, y3) = (y(0), y(1), y(2));
        let cubic = &(&(&(&cst(2) * &y2.pow(3)) - &(&y2.pow(2) * &y3))
            + &(&cst(3) * &(&y2 * &y3.pow(2))))
            + &(&cst(5) * &y3.pow(3));
        let sq = &y2.pow(2) - &(&cst(3) * &y3.pow(2));
        let f = &(&(&y1 * &cubic) + &(&y1.pow(2) * &(&(&y2 * &y3) - &y1.pow(2)))) + &sq.pow(2);
        let data = standard_chart_from(
            &f,
            &rat(0),
            &rat(0),
            &rat(0),
            &rat(-3),
            &[rat(0), rat(0), rat(1)],
            true,
        )
        .unwrap();
        assert_eq!(data.alpha, rat(-3));
        assert_eq!(data.kappa, rat(1));
        assert_eq!(data.c, [rat(2), rat(-1), rat(3), rat(5)]);
        assert!(data.residuals.iter().all(|r| r.is_zero()));
        assert_eq!(data.frame[1], [rat(0), rat(1), rat(0)]);
    }

    #[test]
    fn standard_chart_of_a_mapped_form() {
        // Rational bitangent V(y1 + y2 - y3) after a coordinate change:
        // the chart data must satisfy its residual identities exactly.
        let y = |i| MultiPoly::var(i, 3);
        let cst = |n: i64| MultiPoly::constant(rat(n), 3);
        let l = &(&y(0) + &y(1)) - &y(2);
        let sq = &(&y(1).pow(2) + &(&y(1) * &y(2))) + &(&cst(2) * &y(2).pow(2));
        let f = &(&l * &(&y(0).pow(3) - &(&cst(4) * &y(2).pow(3)))) + &sq.pow(2);
        // Restriction to l = 0 is sq^2, so s = 1, p = 2 with a = 1, b = -1.
        let data = standard_chart_from(
            &f,
            &rat(1),
            &rat(-1),
            &rat(1),
            &rat(2),
            &[rat(1), rat(2), rat(3)],
            false,
        )
        .unwrap();
        assert!(data.residuals.iter().all(|r| r.is_zero()));
        // alpha is the discriminant ratio of the tangency quadratic: it is
        // positive because the tangency points are complex.
        assert!(data.alpha > rat(0));
        let li = local_index(&data).unwrap();
        assert_eq!(li.class(), Some(GWClass::PLUS));
    }

    #[test]
    fn gw_class_arithmetic() {
        let g = GWClass::PLUS.times(16) + GWClass::MINUS.times(12);
        assert_eq!(g.rank(), 28);
        assert_eq!(g.signature(), 4);
        assert_eq!(g.to_string(), "16<1> + 12<-1>");
    }
}
