//! The 28 bitangents of a smooth quartic by elimination, with certified
//! reality and splitness classification.
//!
//! After a seeded random change of coordinates `y = A y'`, every bitangent of
//! the transformed quartic `f_w(y') = f(A y')` has the form
//! `V(y1 + a y2 + b y3)`. Restricting `f_w` to that line gives a binary
//! quartic `sum q_k(a, b) y2^k y3^(4-k)`, and the line is a bitangent exactly
//! when this form is `q4` times the square of a monic quadratic. That
//! happens when two polynomial conditions `G1`, `G2` vanish; eliminating `b`
//! gives a univariate polynomial in `a` whose roots are the bitangents.

use std::sync::{Arc, Mutex};

use bitangent_numeric::rat::rat;
use bitangent_numeric::resultant::resultant_with_chain;
use bitangent_numeric::scalar::{adjugate3, horner, mat3_vec, transpose3};
use bitangent_numeric::{
    complex_root_clusters, decide_sign, isolate_real_roots, MultiPoly, Precision, RInterval, Rat,
    RealRoot, Scalar, Sign, UniPoly,
};
use num_complex::Complex64;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{CoreError, Result};
use crate::geometry::{
    is_smooth, restrict_form, substitute_rational_y, ProjLine, ProjectiveMap, Quartic,
    DEFAULT_RETRIES,
};

/// Number of bitangents of a smooth plane quartic, counted with multiplicity.
pub const BITANGENT_COUNT: usize = 28;

/// Width, in bits, of the initial isolating intervals for chart roots.
const ISOLATION_BITS: u32 = 24;

/// Tolerance passed to the complex root finder for non-real chart roots.
const COMPLEX_TOL: f64 = 1e-13;

/// Dual chart used for line parameters: lines `V(y_k + a y_i + b y_j)` where
/// `k` is the normalized coordinate and `i < j` are the other two.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualChart {
    pub normalized: usize,
}

impl DualChart {
    pub fn others(self) -> [usize; 2] {
        match self.normalized {
            0 => [1, 2],
            1 => [0, 2],
            _ => [0, 1],
        }
    }
}

impl Default for DualChart {
    fn default() -> Self {
        DualChart { normalized: 0 }
    }
}

/// Coefficients `q_k(a, b)` of `y_i^k y_j^(4-k)` in the restriction of `f` to
/// `V(y_k + a y_i + b y_j)`, as polynomials in `(a, b)`.
pub fn chart_restriction(f: &Quartic, chart: DualChart) -> [MultiPoly; 5] {
    let a = MultiPoly::var(0, 2);
    let b = MultiPoly::var(1, 2);
    let zero = MultiPoly::zero(2);
    let one = MultiPoly::one(2);
    let [i, j] = chart.others();
    let mut subs: [[MultiPoly; 2]; 3] = std::array::from_fn(|_| [zero.clone(), zero.clone()]);
    subs[chart.normalized] = [-&a, -&b];
    subs[i] = [one.clone(), zero.clone()];
    subs[j] = [zero.clone(), one.clone()];
    let v = restrict_form(&f.poly(), &subs, &zero);
    std::array::from_fn(|k| v.get(k).cloned().unwrap_or_else(|| zero.clone()))
}

/// The two conditions for `q4^-1 * f|_L` to be the square of a monic
/// quadratic `t^2 + s t + p` (with `s = q3 / 2q4`):
/// `G1 = 8 q4^2 q1 - 4 q4 q2 q3 + q3^3` (the `t` coefficient) and
/// `G2 = 64 q4^3 q0 - (4 q4 q2 - q3^2)^2` (the constant coefficient).
pub fn square_conditions(f: &Quartic, chart: DualChart) -> (MultiPoly, MultiPoly) {
    let q = chart_restriction(f, chart);
    conditions_from(&q)
}

fn conditions_from(q: &[MultiPoly; 5]) -> (MultiPoly, MultiPoly) {
    let c = |n: i64| MultiPoly::constant(rat(n), 2);
    let q4sq = &q[4] * &q[4];
    let g1 = &(&(&c(8) * &q4sq) * &q[1]) - &(&(&(&c(4) * &q[4]) * &q[2]) * &q[3]);
    let g1 = &g1 + &q[3].pow(3);
    let w = &(&(&c(4) * &q[4]) * &q[2]) - &(&q[3] * &q[3]);
    let g2 = &(&(&c(64) * &q4sq) * &(&q[4] * &q[0])) - &(&w * &w);
    (g1, g2)
}

/// `3 q3^2 - 8 q4 q2`: a positive multiple of the discriminant of the
/// tangency quadratic.
fn tangency_discriminant(q: &[MultiPoly; 5]) -> MultiPoly {
    let c = |n: i64| MultiPoly::constant(rat(n), 2);
    &(&c(3) * &(&q[3] * &q[3])) - &(&(&c(8) * &q[4]) * &q[2])
}

/// View a polynomial in `(a, b)` as a polynomial in `b` over `Q[a]`.
pub(crate) fn dense_in_b(p: &MultiPoly) -> Vec<UniPoly> {
    p.coeffs_in(1)
        .iter()
        .map(|c| c.to_univariate(0).expect("only a remains"))
        .collect()
}

/// Exact data of the elimination in work coordinates, shared by all
/// bitangents of one computation.
#[derive(Debug)]
pub struct WorkChart {
    /// The input quartic.
    pub quartic: Quartic,
    /// The coordinate change: work points `y'` map to `A y'`.
    pub map: ProjectiveMap,
    /// `f(A y')`.
    pub work: Quartic,
    /// Restriction coefficients `q_0..q_4` of the work quartic.
    pub q: [MultiPoly; 5],
    /// Chart eliminant: roots are the `a` parameters of the bitangents.
    pub eliminant: UniPoly,
    /// Degree-one subresultant `s11(a) b + s10(a)` used to recover `b`.
    pub s10: UniPoly,
    pub s11: UniPoly,
    /// `gcd` of the eliminant with the exact hyperflex condition.
    pub hyperflex_factor: UniPoly,
    /// `adj(A)^T`, mapping work line coordinates to original ones.
    line_map: [[Rat; 3]; 3],
    pub precision: Precision,
}

impl WorkChart {
    /// Work-coordinate version of an original line: `A^T m`.
    pub fn line_to_work(&self, m: &ProjLine) -> [Rat; 3] {
        mat3_vec(&transpose3(self.map.matrix()), m.coords())
    }

    pub fn line_from_work<S: Scalar>(&self, l: &[S; 3]) -> [S; 3] {
        let m: [[S; 3]; 3] = std::array::from_fn(|i| {
            std::array::from_fn(|j| l[0].from_rat_like(&self.line_map[i][j]))
        });
        mat3_vec(&m, l)
    }

    pub fn point_from_work<S: Scalar>(&self, p: &[S; 3]) -> [S; 3] {
        let a = self.map.matrix();
        let m: [[S; 3]; 3] =
            std::array::from_fn(|i| std::array::from_fn(|j| p[0].from_rat_like(&a[i][j])));
        mat3_vec(&m, p)
    }

    /// `b = -s10(a) / s11(a)` over any scalar type.
    pub fn back_solve<S: Scalar>(&self, a: &S) -> Option<S> {
        let lift =
            |p: &UniPoly| -> Vec<S> { p.coeffs().iter().map(|c| a.from_rat_like(c)).collect() };
        let s10 = horner(&lift(&self.s10), a);
        let s11 = horner(&lift(&self.s11), a);
        s10.negated().divided(&s11)
    }

    /// Numerator in `a` of `p(a, -s10/s11)`.
    pub fn substitute_b(&self, p: &MultiPoly) -> UniPoly {
        substitute_rational_y(&dense_in_b(p), &self.s11, &self.s10)
    }
}

/// Attempt elimination in the coordinates given by `map`.
enum Attempt {
    Generic(WorkChart),
    /// Everything but squarefreeness of the eliminant holds.
    Repeated(WorkChart),
    Failed,
}

fn eliminate(f: &Quartic, map: ProjectiveMap, precision: Precision) -> Attempt {
    let work = f.substitute_linear(map.matrix());
    let q = chart_restriction(&work, DualChart::default());
    let (g1, g2) = conditions_from(&q);
    let (d1, d2) = (dense_in_b(&g1), dense_in_b(&g2));
    if d1.is_empty() || d2.is_empty() {
        return Attempt::Failed;
    }
    let (res, chain) = resultant_with_chain(&d2, &d1);
    if res.is_zero() {
        return Attempt::Failed;
    }
    let q4 = q[4].to_univariate(0).expect("q4 depends on a only");
    if q4.is_zero() {
        return Attempt::Failed;
    }
    let eliminant = res.remove_common_roots(&q4);
    if eliminant.deg() != BITANGENT_COUNT {
        return Attempt::Failed;
    }
    let Some(lin) = chain.iter().find(|m| m.len() == 2) else {
        return Attempt::Failed;
    };
    let (s10, s11) = (lin[0].clone(), lin[1].clone());
    let sf = eliminant.squarefree_part();
    if !sf.is_coprime(&s11) {
        return Attempt::Failed;
    }
    let disc = tangency_discriminant(&q);
    let nd = substitute_rational_y(&dense_in_b(&disc), &s11, &s10);
    let hyperflex_factor = if sf.is_coprime(&nd) {
        UniPoly::one()
    } else {
        sf.gcd(&nd)
    };
    let adj = adjugate3(map.matrix());
    let chart = WorkChart {
        quartic: f.clone(),
        line_map: transpose3(&adj),
        map,
        work,
        q,
        eliminant: eliminant.clone(),
        s10,
        s11,
        hyperflex_factor,
        precision,
    };
    if sf.deg() == eliminant.deg() {
        Attempt::Generic(chart)
    } else {
        Attempt::Repeated(chart)
    }
}

/// Classification of a bitangent over the reals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reality {
    /// Real line with real tangency points (including real hyperflexes).
    RealSplit,
    /// Real line whose tangency points are complex conjugate.
    RealNonSplit,
    /// One representative of a pair of complex conjugate lines.
    ComplexPair,
}

impl Reality {
    pub fn is_real(self) -> bool {
        !matches!(self, Reality::ComplexPair)
    }

    pub fn label(self) -> &'static str {
        match self {
            Reality::RealSplit => "real_split",
            Reality::RealNonSplit => "real_non_split",
            Reality::ComplexPair => "complex_pair",
        }
    }
}

#[derive(Clone, Debug)]
enum ChartRoot {
    Real(RealRoot),
    Complex(Complex64),
}

/// Interval evaluation of the chart data of a real bitangent.
#[derive(Clone, Debug)]
pub struct ChartEval {
    pub prec: u32,
    pub a: RInterval,
    pub b: RInterval,
    /// `q_0..q_4` at `(a, b)`.
    pub q: [RInterval; 5],
    /// The tangency quadratic is `t^2 + s t + p`, with `t = y2 / y3` on the
    /// line and points `(-a t - b, t, 1)` in work coordinates.
    pub s: RInterval,
    pub p: RInterval,
}

impl ChartEval {
    /// `s^2 - 4p`.
    pub fn discriminant(&self) -> RInterval {
        let four = RInterval::from_i64(4, self.prec);
        &self.s.square() - &(&four * &self.p)
    }

    /// Work-coordinate point with parameter `t`.
    pub fn point(&self, t: &RInterval) -> [RInterval; 3] {
        [
            -&(&(&self.a * t) + &self.b),
            t.clone(),
            RInterval::from_i64(1, self.prec),
        ]
    }

    /// Real tangency parameters: the two roots of the tangency quadratic, or
    /// the double root for a hyperflex. `None` if the discriminant is not
    /// certified nonnegative at this precision.
    pub fn real_parameters(&self, hyperflex: bool) -> Option<[RInterval; 2]> {
        let half = RInterval::from_rat(&Rat::new(1.into(), 2.into()), self.prec);
        let ms = -&self.s;
        if hyperflex {
            let t = &ms * &half;
            return Some([t.clone(), t]);
        }
        let d = self.discriminant();
        if d.sign() != Sign::Positive {
            return None;
        }
        let r = d.sqrt()?;
        Some([&(&ms + &r) * &half, &(&ms - &r) * &half])
    }

    /// Interval residuals of `f|_L - q4 (t^2 + s t + p)^2` in the `t^1`,
    /// `t^0` and `t^2` coefficients (the `t^3` one vanishes by definition of
    /// `s`).
    pub fn residuals(&self) -> [RInterval; 3] {
        let two = RInterval::from_i64(2, self.prec);
        let q4 = &self.q[4];
        let r1 = &self.q[1] - &(&(q4 * &two) * &(&self.s * &self.p));
        let r0 = &self.q[0] - &(q4 * &self.p.square());
        let r2 = &self.q[2] - &(q4 * &(&self.s.square() + &(&two * &self.p)));
        [r1, r0, r2]
    }
}

/// One bitangent (or one representative of a conjugate pair).
#[derive(Debug)]
pub struct Bitangent {
    chart: Arc<WorkChart>,
    root: ChartRoot,
    reality: Reality,
    hyperflex: bool,
    multiplicity: usize,
    cache: Mutex<Option<(RealRoot, Arc<ChartEval>)>>,
}

/// Tangency points of a bitangent in original coordinates.
#[derive(Clone, Debug)]
pub enum TangencyPoints {
    Real([[RInterval; 3]; 2]),
    Complex([[Complex64; 3]; 2]),
}

impl Bitangent {
    pub fn reality(&self) -> Reality {
        self.reality
    }

    pub fn is_real(&self) -> bool {
        self.reality.is_real()
    }

    pub fn is_split(&self) -> bool {
        self.reality == Reality::RealSplit
    }

    pub fn hyperflex(&self) -> bool {
        self.hyperflex
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    pub fn chart(&self) -> &Arc<WorkChart> {
        &self.chart
    }

    /// Isolating interval of the chart parameter `a` (real bitangents).
    pub fn root(&self) -> Option<&RealRoot> {
        match &self.root {
            ChartRoot::Real(r) => Some(r),
            ChartRoot::Complex(_) => None,
        }
    }

    /// Chart parameters `(a, b)` in work coordinates, approximately.
    pub fn chart_params_approx(&self) -> (Complex64, Complex64) {
        let a = match &self.root {
            ChartRoot::Real(_) => {
                let r = self.refined_root(64);
                Complex64::new(r.approx(), 0.0)
            }
            ChartRoot::Complex(z) => *z,
        };
        let b = self
            .chart
            .back_solve(&a)
            .unwrap_or(Complex64::new(f64::NAN, f64::NAN));
        (a, b)
    }

    fn refined_root(&self, bits: u32) -> RealRoot {
        let ChartRoot::Real(r) = &self.root else {
            panic!("refined_root called on a complex bitangent");
        };
        let guard = self.cache.lock().expect("cache lock");
        let start = guard
            .as_ref()
            .map(|(r, _)| r.clone())
            .unwrap_or_else(|| r.clone());
        drop(guard);
        start.refined(bits)
    }

    /// Chart data evaluated with the parameter refined to width `2^-prec`,
    /// or `None` if `s11` or `q4` could not be separated from zero at this
    /// precision. Complex bitangents always give `None`.
    pub fn eval(&self, prec: u32) -> Option<Arc<ChartEval>> {
        if !self.is_real() {
            return None;
        }
        {
            let guard = self.cache.lock().expect("cache lock");
            if let Some((_, e)) = guard.as_ref() {
                if e.prec >= prec {
                    return Some(e.clone());
                }
            }
        }
        let root = self.refined_root(prec);
        let a = if root.is_exact() {
            RInterval::from_rat(&root.lo, prec)
        } else {
            root.interval(prec)
        };
        let b = self.chart.back_solve(&a)?;
        let ab = [a.clone(), b.clone()];
        let q: [RInterval; 5] = std::array::from_fn(|k| self.chart.q[k].eval_interval(&ab));
        let two = RInterval::from_i64(2, prec);
        let four = RInterval::from_i64(4, prec);
        let eight = RInterval::from_i64(8, prec);
        let s = q[3].checked_div(&(&two * &q[4]))?;
        let num = &(&(&four * &q[4]) * &q[2]) - &q[3].square();
        let p = num.checked_div(&(&eight * &q[4].square()))?;
        let e = Arc::new(ChartEval {
            prec,
            a,
            b,
            q,
            s,
            p,
        });
        *self.cache.lock().expect("cache lock") = Some((root, e.clone()));
        Some(e)
    }

    /// Evaluate with increasing precision until `decide` returns a value.
    pub fn with_eval<T>(&self, mut decide: impl FnMut(&ChartEval) -> Option<T>) -> Result<T> {
        let precision = self.chart.precision;
        for prec in precision.schedule() {
            if let Some(e) = self.eval(prec) {
                if let Some(v) = decide(&e) {
                    return Ok(v);
                }
            }
        }
        Err(CoreError::Undecidable(precision.cap_bits))
    }

    /// Certified enclosure of the line in original coordinates, scaled so
    /// that its entry of largest magnitude is 1.
    pub fn line_interval(&self, prec: u32) -> Result<[RInterval; 3]> {
        if !self.is_real() {
            return Err(CoreError::NotABitangent);
        }
        self.with_eval(|e| {
            if e.prec < prec {
                return None;
            }
            let one = RInterval::from_i64(1, e.prec);
            let l = self.chart.line_from_work(&[one, e.a.clone(), e.b.clone()]);
            normalize_interval(&l)
        })
    }

    /// Approximate line in original coordinates, scaled so that the entry of
    /// largest modulus is 1.
    pub fn line_approx(&self) -> [Complex64; 3] {
        let (a, b) = self.chart_params_approx();
        let l = self.chart.line_from_work(&[Complex64::new(1.0, 0.0), a, b]);
        let k = (0..3)
            .max_by(|&i, &j| l[i].norm().partial_cmp(&l[j].norm()).unwrap())
            .unwrap();
        let d = l[k];
        l.map(|c| c / d)
    }

    /// Real tangency points in original coordinates with the parameter
    /// refined to `prec` bits, or `None` if not certified at this precision.
    pub fn real_tangency_points(&self, prec: u32) -> Option<[[RInterval; 3]; 2]> {
        if self.reality != Reality::RealSplit {
            return None;
        }
        let e = self.eval(prec)?;
        let [t1, t2] = e.real_parameters(self.hyperflex)?;
        Some([
            self.chart.point_from_work(&e.point(&t1)),
            self.chart.point_from_work(&e.point(&t2)),
        ])
    }

    /// The tangency points in original coordinates.
    pub fn tangency_points(&self) -> Result<TangencyPoints> {
        match self.reality {
            Reality::RealSplit => {
                let hyperflex = self.hyperflex;
                let ts =
                    self.with_eval(|e| e.real_parameters(hyperflex).map(|t| (e.clone(), t)))?;
                let (e, [t1, t2]) = ts;
                Ok(TangencyPoints::Real([
                    self.chart.point_from_work(&e.point(&t1)),
                    self.chart.point_from_work(&e.point(&t2)),
                ]))
            }
            _ => {
                let (a, b, s, p) = self.complex_quadratic();
                let r = (s * s - p * 4.0).sqrt();
                let pts = [(-s + r) * 0.5, (-s - r) * 0.5].map(|t| {
                    self.chart
                        .point_from_work(&[-(a * t) - b, t, Complex64::new(1.0, 0.0)])
                });
                Ok(TangencyPoints::Complex(pts))
            }
        }
    }

    /// `(a, b, s, p)` in double precision complex arithmetic.
    fn complex_quadratic(&self) -> (Complex64, Complex64, Complex64, Complex64) {
        let (a, b) = self.chart_params_approx();
        let q: Vec<Complex64> = self
            .chart
            .q
            .iter()
            .map(|p| p.eval_with(&[a, b]).expect("arity 2"))
            .collect();
        let s = q[3] / (q[4] * 2.0);
        let p = (q[4] * q[2] * 4.0 - q[3] * q[3]) / (q[4] * q[4] * 8.0);
        (a, b, s, p)
    }

    /// Approximate tangency quadratic `t^2 + s t + p` on the line, in the
    /// parameter `t = y2'/y3'` of work coordinates.
    pub fn tangency_quadratic_approx(&self) -> (Complex64, Complex64) {
        let (_, _, s, p) = self.complex_quadratic();
        (s, p)
    }

    /// Is this bitangent the given rational line?
    pub fn is_line(&self, m: &ProjLine) -> bool {
        let ChartRoot::Real(root) = &self.root else {
            return false;
        };
        let mw = self.chart.line_to_work(m);
        if mw[0].is_zero() {
            return false;
        }
        let a0 = &mw[1] / &mw[0];
        let b0 = &mw[2] / &mw[0];
        let inside = if root.is_exact() {
            root.lo == a0
        } else {
            root.lo < a0 && a0 < root.hi
        };
        if !inside || !root.factor.eval(&a0).is_zero() {
            return false;
        }
        self.chart.back_solve(&a0) == Some(b0)
    }
}

/// Scale an interval vector by its entry of largest magnitude.
fn normalize_interval(l: &[RInterval; 3]) -> Option<[RInterval; 3]> {
    let k = (0..3)
        .max_by(|&i, &j| {
            l[i].mid_f64()
                .abs()
                .partial_cmp(&l[j].mid_f64().abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .unwrap();
    let d = l[k].clone();
    let mut out = [
        l[0].checked_div(&d)?,
        l[1].checked_div(&d)?,
        l[2].checked_div(&d)?,
    ];
    out[k] = RInterval::from_i64(1, d.prec());
    Some(out)
}

/// Is `root` (a root of a squarefree factor) also a root of `g`, where every
/// root of `g` is a root of that factor?
pub(crate) fn root_of_divisor(root: &RealRoot, g: &UniPoly) -> bool {
    if g.deg() == 0 {
        return false;
    }
    if root.is_exact() {
        return g.eval(&root.lo).is_zero();
    }
    let mut r = root.clone();
    let mut bits = 8;
    loop {
        let slo = g.eval(&r.lo);
        let shi = g.eval(&r.hi);
        if !slo.is_zero() && !shi.is_zero() {
            return (slo < Rat::zero()) != (shi < Rat::zero());
        }
        r = r.refined(bits);
        if r.is_exact() {
            return g.eval(&r.lo).is_zero();
        }
        bits += 8;
    }
}

/// All 28 bitangents of a smooth quartic.
#[derive(Debug)]
pub struct BitangentSet {
    chart: Arc<WorkChart>,
    bitangents: Vec<Bitangent>,
    attempts: usize,
}

impl BitangentSet {
    pub fn quartic(&self) -> &Quartic {
        &self.chart.quartic
    }

    pub fn chart(&self) -> &Arc<WorkChart> {
        &self.chart
    }

    /// The coordinate change used for the elimination.
    pub fn witness_map(&self) -> &ProjectiveMap {
        &self.chart.map
    }

    pub fn attempts(&self) -> usize {
        self.attempts
    }

    pub fn bitangents(&self) -> &[Bitangent] {
        &self.bitangents
    }

    pub fn iter(&self) -> impl Iterator<Item = &Bitangent> {
        self.bitangents.iter()
    }

    pub fn real(&self) -> impl Iterator<Item = &Bitangent> {
        self.bitangents.iter().filter(|b| b.is_real())
    }

    /// Sum of multiplicities, counting each conjugate pair twice.
    pub fn total_multiplicity(&self) -> usize {
        self.bitangents
            .iter()
            .map(|b| match b.reality {
                Reality::ComplexPair => 2 * b.multiplicity,
                _ => b.multiplicity,
            })
            .sum()
    }

    pub fn count(&self, reality: Reality) -> usize {
        self.bitangents
            .iter()
            .filter(|b| b.reality == reality)
            .map(|b| b.multiplicity)
            .sum()
    }

    /// Number of real bitangents, with multiplicity.
    pub fn real_count(&self) -> usize {
        self.count(Reality::RealSplit) + self.count(Reality::RealNonSplit)
    }

    pub fn hyperflex_count(&self) -> usize {
        self.bitangents.iter().filter(|b| b.hyperflex).count()
    }

    /// Index of the bitangent equal to the rational line `m`, if any.
    pub fn find_rational_line(&self, m: &ProjLine) -> Option<usize> {
        self.bitangents.iter().position(|b| b.is_line(m))
    }
}

/// Compute the bitangents of a smooth quartic with the default precision
/// policy (cap from the environment).
pub fn compute_bitangents(f: &Quartic, seed: u64) -> Result<BitangentSet> {
    compute_bitangents_with(f, seed, Precision::from_env())
}

pub fn compute_bitangents_with(
    f: &Quartic,
    seed: u64,
    precision: Precision,
) -> Result<BitangentSet> {
    if !is_smooth(f) {
        return Err(CoreError::NotSmooth);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fallback = None;
    let mut found = None;
    let mut attempts = 0;
    for attempt in 0..DEFAULT_RETRIES {
        attempts = attempt + 1;
        let map = ProjectiveMap::random(&mut rng, 2 + attempt as i64);
        match eliminate(f, map, precision) {
            Attempt::Generic(c) => {
                found = Some(c);
                break;
            }
            Attempt::Repeated(c) => {
                fallback.get_or_insert(c);
            }
            Attempt::Failed => {}
        }
    }
    let chart = found
        .or(fallback)
        .ok_or(CoreError::GenericityFailure(DEFAULT_RETRIES))?;
    let chart = Arc::new(chart);
    let bitangents = classify(&chart, seed)?;
    let set = BitangentSet {
        chart,
        bitangents,
        attempts,
    };
    debug_assert_eq!(set.total_multiplicity(), BITANGENT_COUNT);
    Ok(set)
}

fn classify(chart: &Arc<WorkChart>, seed: u64) -> Result<Vec<Bitangent>> {
    let roots = isolate_real_roots(&chart.eliminant, ISOLATION_BITS)?;
    let mut out: Vec<Bitangent> = roots
        .into_par_iter()
        .map(|root| classify_real(chart, root))
        .collect::<Result<Vec<_>>>()?;
    let clusters = complex_root_clusters(&chart.eliminant, COMPLEX_TOL, seed)?;
    for (z, mult) in clusters {
        if z.im > 0.0 {
            out.push(Bitangent {
                chart: chart.clone(),
                root: ChartRoot::Complex(z),
                reality: Reality::ComplexPair,
                hyperflex: false,
                multiplicity: mult,
                cache: Mutex::new(None),
            });
        }
    }
    let total: usize = out
        .iter()
        .map(|b| {
            if b.is_real() {
                b.multiplicity
            } else {
                2 * b.multiplicity
            }
        })
        .sum();
    if total != BITANGENT_COUNT {
        return Err(CoreError::GenericityFailure(0));
    }
    Ok(out)
}

fn classify_real(chart: &Arc<WorkChart>, root: RealRoot) -> Result<Bitangent> {
    let hyperflex = root_of_divisor(&root, &chart.hyperflex_factor);
    let multiplicity = root.multiplicity;
    let mut bt = Bitangent {
        chart: chart.clone(),
        root: ChartRoot::Real(root),
        reality: Reality::RealSplit,
        hyperflex,
        multiplicity,
        cache: Mutex::new(None),
    };
    if !hyperflex {
        let sign = decide_sign(chart.precision, |prec| {
            bt.eval(prec).map(|e| e.discriminant())
        });
        bt.reality = match sign {
            Sign::Positive => Reality::RealSplit,
            Sign::Negative => Reality::RealNonSplit,
            _ => return Err(CoreError::Undecidable(chart.precision.cap_bits)),
        };
    }
    let e = bt
        .eval(chart.precision.start_bits)
        .ok_or(CoreError::Undecidable(chart.precision.start_bits))?;
    if e.residuals().iter().any(|r| !r.contains_zero()) {
        return Err(CoreError::NotABitangent);
    }
    Ok(bt)
}
