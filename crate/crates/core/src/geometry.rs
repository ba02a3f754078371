//! Plane quartics, lines, projective maps, restriction to lines, and the
//! exact smoothness and real-flex computations.

use std::fmt;

use bitangent_numeric::rat::{format_rat, rat_to_f64, sign_of};
use bitangent_numeric::resultant::subresultant_chain;
use bitangent_numeric::scalar::{adjugate3, det3, mat3_mul, mat3_vec, transpose3};
use bitangent_numeric::{
    isolate_real_roots, rat, resultant_dense, MultiPoly, Rat, Scalar, UniPoly,
};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CoreError, Result};

/// Exponents `(i, j, k)` with `i + j + k = 4` in graded lexicographic order.
pub const MONOMIALS: [[u32; 3]; 15] = [
    [4, 0, 0],
    [3, 1, 0],
    [3, 0, 1],
    [2, 2, 0],
    [2, 1, 1],
    [2, 0, 2],
    [1, 3, 0],
    [1, 2, 1],
    [1, 1, 2],
    [1, 0, 3],
    [0, 4, 0],
    [0, 3, 1],
    [0, 2, 2],
    [0, 1, 3],
    [0, 0, 4],
];

/// Number of coordinate changes tried by the exact elimination routines.
pub const DEFAULT_RETRIES: usize = 8;

/// A ternary quartic form with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quartic {
    coeffs: [Rat; 15],
}

impl Quartic {
    pub fn new(coeffs: [Rat; 15]) -> Result<Quartic> {
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(CoreError::InvalidQuartic("identically zero".into()));
        }
        Ok(Quartic { coeffs })
    }

    pub fn from_i64s(cs: [i64; 15]) -> Result<Quartic> {
        Quartic::new(cs.map(rat))
    }

    pub fn from_poly(p: &MultiPoly) -> Result<Quartic> {
        if p.arity() != 3 {
            return Err(CoreError::InvalidQuartic(format!(
                "expected 3 variables, got {}",
                p.arity()
            )));
        }
        if !p.is_homogeneous(4) {
            return Err(CoreError::InvalidQuartic(
                "not homogeneous of degree 4".into(),
            ));
        }
        Quartic::new(MONOMIALS.map(|e| p.coeff(&e)))
    }

    /// `144(x^4 + y^4) - 225(x^2 + y^2) z^2 + 350 x^2 y^2 + 81 z^4`.
    pub fn trott() -> Quartic {
        let mut cs = [0i64; 15];
        cs[0] = 144;
        cs[10] = 144;
        cs[5] = -225;
        cs[12] = -225;
        cs[3] = 350;
        cs[14] = 81;
        Quartic::from_i64s(cs).expect("nonzero")
    }

    /// `y1^4 + y2^4 + y3^4`.
    pub fn fermat() -> Quartic {
        let mut cs = [0i64; 15];
        cs[0] = 1;
        cs[10] = 1;
        cs[14] = 1;
        Quartic::from_i64s(cs).expect("nonzero")
    }

    /// `y1^4 + y2^4 + y1 y3^3`: smooth, with `V(y1)` meeting it in a single
    /// point of contact order four.
    pub fn hyperflex_example() -> Quartic {
        let mut cs = [0i64; 15];
        cs[0] = 1;
        cs[10] = 1;
        cs[9] = 1;
        Quartic::from_i64s(cs).expect("nonzero")
    }

    pub fn coeffs(&self) -> &[Rat; 15] {
        &self.coeffs
    }

    pub fn coeff(&self, i: u32, j: u32, k: u32) -> Rat {
        MONOMIALS
            .iter()
            .position(|e| *e == [i, j, k])
            .map(|p| self.coeffs[p].clone())
            .unwrap_or_else(Rat::zero)
    }

    pub fn poly(&self) -> MultiPoly {
        MultiPoly::from_terms(
            3,
            MONOMIALS
                .iter()
                .zip(&self.coeffs)
                .map(|(e, c)| (e.to_vec(), c.clone())),
        )
    }

    pub fn scale(&self, c: &Rat) -> Result<Quartic> {
        Quartic::new(self.coeffs.clone().map(|a| a * c))
    }

    pub fn eval(&self, p: &[Rat; 3]) -> Rat {
        self.poly().eval(p)
    }

    pub fn gradient(&self) -> [MultiPoly; 3] {
        let p = self.poly();
        [p.derivative(0), p.derivative(1), p.derivative(2)]
    }

    /// Determinant of the matrix of second partial derivatives (degree 6).
    pub fn hessian(&self) -> MultiPoly {
        let g = self.gradient();
        let m: [[MultiPoly; 3]; 3] =
            std::array::from_fn(|i| std::array::from_fn(|j| g[i].derivative(j)));
        det3(&m)
    }

    /// The quartic `y -> f(A y)`.
    pub fn substitute_linear(&self, a: &[[Rat; 3]; 3]) -> Quartic {
        let subs: Vec<MultiPoly> = (0..3)
            .map(|i| {
                MultiPoly::from_terms(
                    3,
                    (0..3).map(|j| {
                        let mut e = vec![0; 3];
                        e[j] = 1;
                        (e, a[i][j].clone())
                    }),
                )
            })
            .collect();
        let p = self.poly().compose(&subs, 3);
        Quartic {
            coeffs: MONOMIALS.map(|e| p.coeff(&e)),
        }
    }

    /// Image of the curve under `g`: the quartic `f o g^-1`, whose zero set is
    /// `g(V(f))`.
    pub fn apply_map(&self, g: &ProjectiveMap) -> Quartic {
        self.substitute_linear(&g.inverse().m)
    }

    pub fn is_smooth(&self) -> bool {
        is_smooth(self)
    }
}

impl fmt::Debug for Quartic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quartic({self})")
    }
}

impl fmt::Display for Quartic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["x", "y", "z"];
        let mut first = true;
        for (e, c) in MONOMIALS.iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            write!(f, "{}", format_rat(&c.abs()))?;
            for (v, &k) in names.iter().zip(e) {
                match k {
                    0 => {}
                    1 => write!(f, "*{v}")?,
                    _ => write!(f, "*{v}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

/// A line `V(l1 y1 + l2 y2 + l3 y3)` with rational coordinates, normalized so
/// the first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjLine {
    coords: [Rat; 3],
}

impl ProjLine {
    pub fn new(coords: [Rat; 3]) -> Result<ProjLine> {
        let Some(lead) = coords.iter().find(|c| !c.is_zero()).cloned() else {
            return Err(CoreError::ZeroLine);
        };
        Ok(ProjLine {
            coords: coords.map(|c| c / &lead),
        })
    }

    pub fn from_i64s(c: [i64; 3]) -> Result<ProjLine> {
        ProjLine::new(c.map(rat))
    }

    /// `V(z)`.
    pub fn z_axis_at_infinity() -> ProjLine {
        ProjLine::from_i64s([0, 0, 1]).expect("nonzero")
    }

    pub fn coords(&self) -> &[Rat; 3] {
        &self.coords
    }

    pub fn to_f64(&self) -> [f64; 3] {
        self.coords.clone().map(|c| rat_to_f64(&c))
    }

    /// Value of the linear form at a point.
    pub fn eval<S: Scalar>(&self, p: &[S; 3]) -> S {
        let t: [S; 3] = std::array::from_fn(|i| p[0].from_rat_like(&self.coords[i]).times(&p[i]));
        t[0].plus(&t[1]).plus(&t[2])
    }

    pub fn linear_form(&self) -> MultiPoly {
        MultiPoly::from_terms(
            3,
            (0..3).map(|j| {
                let mut e = vec![0; 3];
                e[j] = 1;
                (e, self.coords[j].clone())
            }),
        )
    }
}

impl fmt::Debug for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}, {}]",
            format_rat(&self.coords[0]),
            format_rat(&self.coords[1]),
            format_rat(&self.coords[2])
        )
    }
}

/// An invertible 3x3 rational matrix acting on points by `p -> M p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveMap {
    m: [[Rat; 3]; 3],
}

impl ProjectiveMap {
    pub fn new(m: [[Rat; 3]; 3]) -> Result<ProjectiveMap> {
        if det3(&m).is_zero() {
            return Err(CoreError::SingularMap);
        }
        Ok(ProjectiveMap { m })
    }

    pub fn from_i64s(m: [[i64; 3]; 3]) -> Result<ProjectiveMap> {
        ProjectiveMap::new(m.map(|r| r.map(rat)))
    }

    pub fn identity() -> ProjectiveMap {
        ProjectiveMap::from_i64s([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).expect("invertible")
    }

    /// Random invertible integer matrix with entries in `[-range, range]`.
    pub fn random(rng: &mut ChaCha8Rng, range: i64) -> ProjectiveMap {
        loop {
            let m: [[i64; 3]; 3] =
                std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-range..=range)));
            if let Ok(g) = ProjectiveMap::from_i64s(m) {
                return g;
            }
        }
    }

    pub fn random_seeded(seed: u64, range: i64) -> ProjectiveMap {
        ProjectiveMap::random(&mut ChaCha8Rng::seed_from_u64(seed), range)
    }

    pub fn matrix(&self) -> &[[Rat; 3]; 3] {
        &self.m
    }

    pub fn det(&self) -> Rat {
        det3(&self.m)
    }

    pub fn inverse(&self) -> ProjectiveMap {
        let d = self.det();
        let adj = adjugate3(&self.m);
        ProjectiveMap {
            m: adj.map(|r| r.map(|c| c / &d)),
        }
    }

    /// `self o other`.
    pub fn compose(&self, other: &ProjectiveMap) -> ProjectiveMap {
        ProjectiveMap {
            m: mat3_mul(&self.m, &other.m),
        }
    }

    pub fn apply_point(&self, p: &[Rat; 3]) -> [Rat; 3] {
        mat3_vec(&self.m, p)
    }

    /// Image of a line: `l -> M^-T l`.
    pub fn apply_line(&self, l: &ProjLine) -> ProjLine {
        let inv_t = transpose3(&self.inverse().m);
        ProjLine::new(mat3_vec(&inv_t, &l.coords)).expect("invertible map sends lines to lines")
    }
}

/// How a line was parametrized: coordinate `eliminated` is solved for, and
/// the binary form is in the remaining coordinates `params[0]`, `params[1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LineChart {
    pub eliminated: usize,
    pub params: [usize; 2],
}

/// A binary quartic `sum c[m] u^m v^(4-m)`, with `u`, `v` the chart parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryQuartic {
    pub coeffs: [Rat; 5],
    pub chart: LineChart,
}

impl BinaryQuartic {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// Restrict a ternary form to a parametrized line. `subs[i]` gives `y_i` as
/// the linear form `subs[i][0] u + subs[i][1] v`; the result lists the
/// coefficients of `u^m v^(d-m)` for `m = 0..=d`.
pub fn restrict_form<S: Scalar>(form: &MultiPoly, subs: &[[S; 2]; 3], template: &S) -> Vec<S> {
    let d = form.total_degree();
    let zero = template.zero_like();
    // powers[i][k] = (subs[i][0] u + subs[i][1] v)^k as coefficients by power of u.
    let powers: Vec<Vec<Vec<S>>> = subs
        .iter()
        .map(|lin| {
            let mut v: Vec<Vec<S>> = vec![vec![template.one_like()]];
            for k in 1..=d {
                let prev = &v[k - 1];
                let mut next = vec![zero.clone(); k + 1];
                for (m, c) in prev.iter().enumerate() {
                    next[m + 1] = next[m + 1].plus(&c.times(&lin[0]));
                    next[m] = next[m].plus(&c.times(&lin[1]));
                }
                v.push(next);
            }
            v
        })
        .collect();
    let mut out = vec![zero.clone(); d + 1];
    for (e, c) in form.terms() {
        let mut acc = vec![template.from_rat_like(c)];
        for (i, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let pw = &powers[i][k as usize];
            let mut next = vec![zero.clone(); acc.len() + pw.len() - 1];
            for (a, x) in acc.iter().enumerate() {
                for (b, y) in pw.iter().enumerate() {
                    next[a + b] = next[a + b].plus(&x.times(y));
                }
            }
            acc = next;
        }
        for (m, v) in acc.into_iter().enumerate() {
            out[m] = out[m].plus(&v);
        }
    }
    out
}

/// Chart for a line: eliminate the coordinate of largest absolute value
/// (lowest index on ties).
pub fn line_chart(l: &ProjLine) -> LineChart {
    let c = l.coords();
    let mut k = 0;
    for i in 1..3 {
        if c[i].abs() > c[k].abs() {
            k = i;
        }
    }
    let params = match k {
        0 => [1, 2],
        1 => [0, 2],
        _ => [0, 1],
    };
    LineChart {
        eliminated: k,
        params,
    }
}

pub fn restrict_to_line(f: &Quartic, l: &ProjLine) -> BinaryQuartic {
    let chart = line_chart(l);
    let c = l.coords();
    let k = chart.eliminated;
    let [i, j] = chart.params;
    let mut subs: [[Rat; 2]; 3] = std::array::from_fn(|_| [rat(0), rat(0)]);
    subs[i] = [rat(1), rat(0)];
    subs[j] = [rat(0), rat(1)];
    subs[k] = [-&c[i] / &c[k], -&c[j] / &c[k]];
    let v = restrict_form(&f.poly(), &subs, &rat(0));
    BinaryQuartic {
        coeffs: std::array::from_fn(|m| v[m].clone()),
        chart,
    }
}

/// Number of distinct real points of `V(f)` on the line.
pub fn real_points_on_line(f: &Quartic, l: &ProjLine) -> Result<usize> {
    let b = restrict_to_line(f, l);
    if b.is_zero() {
        return Err(CoreError::LineContainedInCurve);
    }
    let g = UniPoly::new(b.coeffs.to_vec());
    let affine = if g.deg() == 0 {
        0
    } else {
        isolate_real_roots(&g, 4)?.len()
    };
    Ok(affine + usize::from(b.coeffs[4].is_zero()))
}

/// Dehomogenize at `z = 1` and view as a polynomial in `y` with coefficients
/// in `Q[x]`.
fn dense_in_y(p: &MultiPoly) -> Vec<UniPoly> {
    let x = MultiPoly::var(0, 2);
    let y = MultiPoly::var(1, 2);
    let one = MultiPoly::one(2);
    let affine = p.compose(&[x, y, one], 2);
    affine
        .coeffs_in(1)
        .iter()
        .map(|c| c.to_univariate(0).expect("only x remains"))
        .collect()
}

/// Restriction to `z = 0`, dehomogenized at `y = 1`, as a polynomial in `x`.
fn at_infinity(p: &MultiPoly) -> UniPoly {
    let x = MultiPoly::var(0, 1);
    let one = MultiPoly::one(1);
    let zero = MultiPoly::zero(1);
    p.compose(&[x, one, zero], 1)
        .to_univariate(0)
        .expect("univariate")
}

fn vanishes_at_x_point(p: &MultiPoly) -> bool {
    p.eval(&[rat(1), rat(0), rat(0)]).is_zero()
}

/// Common zeros of two forms on the line `z = 0`.
fn common_zero_at_infinity(p: &MultiPoly, q: &MultiPoly) -> bool {
    if vanishes_at_x_point(p) && vanishes_at_x_point(q) {
        return true;
    }
    let (a, b) = (at_infinity(p), at_infinity(q));
    if a.is_zero() {
        return b.deg() > 0 || b.is_zero();
    }
    if b.is_zero() {
        return a.deg() > 0;
    }
    !a.is_coprime(&b)
}

/// Data of a generic projection of `V(p) ∩ V(q)` to the `x` axis.
struct Projection {
    /// Resultant in `x` (possibly zero).
    res: UniPoly,
    /// Squarefree part of `res` and the degree-one subresultant `s11 y + s10`.
    sf: UniPoly,
    s1: Option<(UniPoly, UniPoly)>,
}

/// Eliminate `y` from `p`, `q` in the chart `z = 1`. Returns `None` when the
/// leading `y` coefficients are not constants (non-generic coordinates).
fn project(p: &MultiPoly, q: &MultiPoly) -> Option<Projection> {
    let (pd, qd) = (dense_in_y(p), dense_in_y(q));
    if pd.len() != p.total_degree() + 1 || qd.len() != q.total_degree() + 1 {
        return None;
    }
    let res = resultant_dense(&pd, &qd);
    if res.is_zero() {
        return Some(Projection {
            res: res.clone(),
            sf: res,
            s1: None,
        });
    }
    let chain = subresultant_chain(&pd, &qd);
    let s1 = chain
        .iter()
        .find(|m| m.len() == 2)
        .map(|m| (m[1].clone(), m[0].clone()));
    let sf = res.squarefree_part();
    Some(Projection { res, sf, s1 })
}

/// Numerator of `g(x, -s10/s11)` where `g` is given densely in `y`.
pub(crate) fn substitute_rational_y(g: &[UniPoly], s11: &UniPoly, s10: &UniPoly) -> UniPoly {
    let d = g.len().saturating_sub(1);
    let neg = -s10;
    let mut acc = UniPoly::zero();
    for (k, c) in g.iter().enumerate() {
        let t = &(c * &neg.pow(k as u32)) * &s11.pow((d - k) as u32);
        acc = &acc + &t;
    }
    acc
}

/// Exact smoothness test over the rationals. Coordinates are changed by
/// seeded random maps until the elimination is generic; if no generic
/// coordinates are found the quartic is reported as not smooth.
pub fn is_smooth(f: &Quartic) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5300_7e5e);
    for attempt in 0..DEFAULT_RETRIES {
        let g = if attempt == 0 {
            ProjectiveMap::identity()
        } else {
            ProjectiveMap::random(&mut rng, 3 + attempt as i64)
        };
        let h = f.apply_map(&g);
        let [f1, f2, f3] = h.gradient();
        // Points on z = 0.
        if vanishes_at_x_point(&f1) && vanishes_at_x_point(&f2) && vanishes_at_x_point(&f3) {
            return false;
        }
        let inf = at_infinity(&f1)
            .gcd(&at_infinity(&f2))
            .gcd(&at_infinity(&f3));
        if inf.deg() > 0 || inf.is_zero() {
            return false;
        }
        let Some(pr) = project(&f1, &f2) else {
            continue;
        };
        if pr.res.is_zero() {
            return false;
        }
        let Some((s11, s10)) = pr.s1 else {
            continue;
        };
        if !pr.sf.is_coprime(&s11) {
            continue;
        }
        let n = substitute_rational_y(&dense_in_y(&f3), &s11, &s10);
        return pr.sf.is_coprime(&n);
    }
    false
}

/// Number of real flexes (real points of `V(f) ∩ V(Hessian)`), without
/// multiplicity.
pub fn real_flex_count(f: &Quartic) -> Result<usize> {
    if !is_smooth(f) {
        return Err(CoreError::NotSmooth);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xf1e7);
    for attempt in 0..DEFAULT_RETRIES {
        let g = if attempt == 0 {
            ProjectiveMap::identity()
        } else {
            ProjectiveMap::random(&mut rng, 3 + attempt as i64)
        };
        let h = f.apply_map(&g);
        let p = h.poly();
        let hess = h.hessian();
        if common_zero_at_infinity(&p, &hess) {
            continue;
        }
        let Some(pr) = project(&p, &hess) else {
            continue;
        };
        if pr.res.is_zero() {
            return Err(CoreError::NotSmooth);
        }
        let Some((s11, _)) = pr.s1 else {
            continue;
        };
        if !pr.sf.is_coprime(&s11) {
            continue;
        }
        return Ok(isolate_real_roots(&pr.sf, 4)?.len());
    }
    Err(CoreError::GenericityFailure(DEFAULT_RETRIES))
}

/// Sign of a rational as `-1`, `0` or `1`.
pub fn rsign(r: &Rat) -> i8 {
    sign_of(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn restriction_examples() {
        let f = Quartic::fermat();
        let b = restrict_to_line(&f, &ProjLine::from_i64s([1, 0, 0]).unwrap());
        assert_eq!(b.coeffs, [1, 0, 0, 0, 1].map(rat));
        let t = restrict_to_line(&Quartic::trott(), &ProjLine::z_axis_at_infinity());
        assert_eq!(t.coeffs, [144, 0, 350, 0, 144].map(rat));
        assert_eq!(t.chart.eliminated, 2);
    }

    #[test]
    fn map_action_round_trips() {
        let f = Quartic::trott();
        let g = ProjectiveMap::from_i64s([[1, 2, 0], [0, 1, -1], [3, 0, 1]]).unwrap();
        let h = f.apply_map(&g).apply_map(&g.inverse());
        assert_eq!(h, f);
        assert_eq!(f.apply_map(&ProjectiveMap::identity()), f);
        let perm = ProjectiveMap::from_i64s([[0, 1, 0], [0, 0, 1], [1, 0, 0]]).unwrap();
        assert_eq!(Quartic::fermat().apply_map(&perm), Quartic::fermat());
    }

    #[test]
    fn smoothness() {
        assert!(is_smooth(&Quartic::fermat()));
        assert!(is_smooth(&Quartic::trott()));
        assert!(is_smooth(&Quartic::hyperflex_example()));
        // (y1^2 + y2^2)^2
        let mut cs = [0i64; 15];
        cs[0] = 1;
        cs[3] = 2;
        cs[10] = 1;
        assert!(!is_smooth(&Quartic::from_i64s(cs).unwrap()));
        // Nodal: x^4 + y^4 - x^2 z^2 ... has a node at [0:0:1]? Use y^2 z^2 - x^2 z^2 + x^4 + y^4.
        let mut cs = [0i64; 15];
        cs[0] = 1;
        cs[10] = 1;
        cs[5] = -1;
        cs[12] = 1;
        assert!(!is_smooth(&Quartic::from_i64s(cs).unwrap()));
    }

    #[test]
    fn points_on_lines() {
        let t = Quartic::trott();
        assert_eq!(
            real_points_on_line(&t, &ProjLine::z_axis_at_infinity()).unwrap(),
            0
        );
        assert_eq!(
            real_points_on_line(&t, &ProjLine::from_i64s([0, 1, 0]).unwrap()).unwrap(),
            4
        );
        let f = Quartic::fermat();
        assert_eq!(
            real_points_on_line(&f, &ProjLine::from_i64s([1, 2, -3]).unwrap()).unwrap(),
            0
        );
    }

    #[test]
    fn flexes() {
        assert_eq!(real_flex_count(&Quartic::fermat()).unwrap(), 0);
        assert_eq!(real_flex_count(&Quartic::trott()).unwrap(), 8);
    }
}
