//! Grates, the dual grate arrangement and the enumeration of all signed
//! counts attainable by moving the line at infinity.
//!
//! Fix a base line `M` meeting no tangency point. The grate of a real split
//! bitangent is the segment joining its two tangency points in the affine
//! chart `P^2 \ M`. Moving the line at infinity from `M` to `L` flips the
//! type of exactly those bitangents whose grate `L` crosses, so the signed
//! count is constant on the regions cut out of the dual plane by the lines
//! dual to grate endpoints. Every region is reached by sweeping pencils of
//! parallel lines (lines through `[M]` in the dual plane), one direction per
//! angular gap between endpoint pairs.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::OnceLock;

use bitangent_numeric::{Dyadic, RInterval, Rat};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{CoreError, Result};
use crate::geometry::{ProjLine, ProjectiveMap, Quartic};
use crate::qtype::{meets_tangency_exactly, qtype_signs, GWClass};
use crate::solver::{compute_bitangents, BitangentSet, Reality};

/// Precision of the grate endpoint enclosures used first.
const GRATE_BITS: u32 = 256;
/// Precision at which breakpoints that still overlap are treated as equal.
const GRATE_BITS_MAX: u32 = 1024;
/// Precision above which an undecided crossing is checked exactly.
const QUICK_CAP: u32 = 512;
/// Alternative base lines tried when `V(z)` is not generic.
const BASE_RETRIES: usize = 16;
/// Critical pencil directions closer than this (radians) are merged.
const ANGLE_RESOLUTION: f64 = 1e-12;

/// Affine chart of the complement of a line `M = V(mu)`: rows `e_i`, `e_j`,
/// `mu`, where `k` is the index of the entry of `mu` of largest magnitude and
/// `i < j` are the other two. A point `z` has affine coordinates
/// `X = z_i / (mu . z)`, `Y = z_j / (mu . z)`.
#[derive(Clone, Debug)]
pub struct MChart {
    line: ProjLine,
    rows: [[Rat; 3]; 3],
}

impl MChart {
    pub fn new(m: &ProjLine) -> MChart {
        let mu = m.coords().clone();
        let k = (0..3)
            .max_by(|&a, &b| mu[a].abs().cmp(&mu[b].abs()).then(b.cmp(&a)))
            .expect("three coordinates");
        let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
        let unit = |i: usize| -> [Rat; 3] {
            std::array::from_fn(|c| if c == i { Rat::one() } else { Rat::zero() })
        };
        MChart {
            line: m.clone(),
            rows: [unit(others[0]), unit(others[1]), mu],
        }
    }

    pub fn line(&self) -> &ProjLine {
        &self.line
    }

    pub fn rows(&self) -> &[[Rat; 3]; 3] {
        &self.rows
    }

    /// Affine coordinates of a point and the sign of `mu . z`, or `None` if
    /// `mu . z` is not separated from zero.
    pub fn affine(&self, z: &[RInterval; 3]) -> Option<([RInterval; 2], i8)> {
        let w = self.rows.each_ref().map(|r| dot(r, z));
        let s = w[2].sign().to_i8().filter(|s| *s != 0)?;
        Some(([w[0].checked_div(&w[2])?, w[1].checked_div(&w[2])?], s))
    }

    /// The line `-q X + p Y = c` in original coordinates.
    pub fn pencil_line(&self, dir: &Direction, c: &Rat) -> ProjLine {
        let [r0, r1, mu] = &self.rows;
        let coords: [Rat; 3] =
            std::array::from_fn(|i| &(&(-&dir.q * &r0[i]) + &(&dir.p * &r1[i])) - &(c * &mu[i]));
        ProjLine::new(coords).expect("rows are independent")
    }
}

fn dot(r: &[Rat; 3], z: &[RInterval; 3]) -> RInterval {
    let prec = z[0].prec();
    let mut acc = RInterval::zero(prec);
    for (a, x) in r.iter().zip(z) {
        if !a.is_zero() {
            acc = &acc + &(&RInterval::from_rat(a, prec) * x);
        }
    }
    acc
}

/// Direction `(p, q)` of the lines `-q X + p Y = c` of a pencil.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Direction {
    pub p: Rat,
    pub q: Rat,
}

impl Direction {
    /// Lines `Y = a X + c`.
    pub fn slope(a: Rat) -> Direction {
        Direction {
            p: Rat::one(),
            q: a,
        }
    }

    /// Lines `X = const`.
    pub fn vertical() -> Direction {
        Direction {
            p: Rat::zero(),
            q: -Rat::one(),
        }
    }

    /// Offset `c = -q X + p Y` of the pencil line through `(X, Y)`.
    fn offset(&self, xy: &[RInterval; 2]) -> RInterval {
        let prec = xy[0].prec();
        let mut acc = RInterval::zero(prec);
        if !self.q.is_zero() {
            acc = &acc - &(&RInterval::from_rat(&self.q, prec) * &xy[0]);
        }
        if !self.p.is_zero() {
            acc = &acc + &(&RInterval::from_rat(&self.p, prec) * &xy[1]);
        }
        acc
    }
}

/// The segment joining the two tangency points of a real split bitangent in
/// the affine chart of the base line.
#[derive(Clone, Debug)]
pub struct Grate {
    /// Index of the bitangent in its [`BitangentSet`].
    pub bitangent: usize,
    /// Tangency points in original coordinates.
    pub points: [[RInterval; 3]; 2],
    /// Affine coordinates `(X, Y)` of the endpoints in the chart of `M`.
    pub endpoints: [[RInterval; 2]; 2],
    /// Type of the bitangent relative to `M`.
    pub qtype_at_m: GWClass,
    sign: i8,
    base_sign: i8,
    weight: i64,
}

impl Grate {
    /// Sign of the type relative to `M`.
    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn endpoints_approx(&self) -> [[f64; 2]; 2] {
        self.endpoints
            .each_ref()
            .map(|e| [e[0].mid_f64(), e[1].mid_f64()])
    }
}

fn hypothesis_error(e: CoreError) -> CoreError {
    match e {
        CoreError::TangencyOnLineAtInfinity => CoreError::LineAtInfinityMeetsTangency,
        other => other,
    }
}

/// Grates of all real split bitangents relative to `V(m)`. Hyperflexes are
/// excluded, their grate being a single point.
pub fn grates(set: &BitangentSet, m: &ProjLine) -> Result<Vec<Grate>> {
    let signs = qtype_signs(set, m).map_err(hypothesis_error)?;
    grates_with_signs(set, &MChart::new(m), &signs, GRATE_BITS)
}

fn grates_with_signs(
    set: &BitangentSet,
    chart: &MChart,
    signs: &[Option<i8>],
    prec: u32,
) -> Result<Vec<Grate>> {
    set.bitangents()
        .par_iter()
        .enumerate()
        .filter(|(_, bt)| bt.reality() == Reality::RealSplit && !bt.hyperflex())
        .map(|(i, bt)| {
            let sign = signs[i].ok_or(CoreError::NotReal)?;
            let cap = bt.chart().precision.cap_bits.max(prec);
            let mut p = prec;
            loop {
                if let Some(points) = bt.real_tangency_points(p) {
                    if let (Some((e0, s0)), Some((e1, s1))) =
                        (chart.affine(&points[0]), chart.affine(&points[1]))
                    {
                        return Ok(Grate {
                            bitangent: i,
                            points,
                            endpoints: [e0, e1],
                            qtype_at_m: GWClass::from_sign(sign),
                            sign,
                            base_sign: s0 * s1,
                            weight: bt.multiplicity() as i64,
                        });
                    }
                }
                if p >= cap {
                    return Err(CoreError::Undecidable(cap));
                }
                p = (p * 2).min(cap);
            }
        })
        .collect()
}

/// Signed count relative to `V(l)` from the count `s_m` relative to the base
/// line of the grates: each grate crossed by `V(l)` changes the count by
/// `-2` times its type relative to the base line.
pub fn transform_count(
    s_m: i64,
    grates: &[Grate],
    set: &BitangentSet,
    l: &ProjLine,
) -> Result<i64> {
    let mut s = s_m;
    for g in grates {
        if crosses(g, set, l)? {
            s -= 2 * g.weight * g.sign as i64;
        }
    }
    Ok(s)
}

/// Does `V(l)` separate the endpoints of the grate in the chart of `M`, i.e.
/// is `(l . z1)(mu . z1)(l . z2)(mu . z2)` negative?
fn crosses(g: &Grate, set: &BitangentSet, l: &ProjLine) -> Result<bool> {
    let bt = &set.bitangents()[g.bitangent];
    let cap = bt.chart().precision.cap_bits;
    let mut pts = g.points.clone();
    let mut prec = pts[0][0].prec();
    let mut checked = false;
    loop {
        let s = l.eval(&pts[0]).sign().mul(l.eval(&pts[1]).sign());
        if let Some(s) = s.to_i8().filter(|s| *s != 0) {
            return Ok(s * g.base_sign < 0);
        }
        if prec >= QUICK_CAP && !checked {
            if meets_tangency_exactly(bt, l) {
                return Err(CoreError::WallCrossing);
            }
            checked = true;
        }
        if prec >= cap {
            return Err(CoreError::Undecidable(cap));
        }
        prec = (prec * 2).min(cap);
        if let Some(p) = bt.real_tangency_points(prec) {
            pts = p;
        }
    }
}

/// A group of grate endpoints with the same offset in a pencil, in sweep
/// order. Endpoints share a group only if their offsets could not be
/// separated at the highest enclosure precision.
#[derive(Clone, Debug)]
pub struct Breakpoint {
    pub value: RInterval,
    /// `(grate position, endpoint 0 or 1)`.
    pub members: Vec<(usize, usize)>,
}

/// Ordered breakpoints of a pencil.
#[derive(Clone, Debug)]
pub struct Sweep {
    pub direction: Direction,
    pub breakpoints: Vec<Breakpoint>,
    /// Groups with more than one endpoint.
    pub ties: usize,
}

impl Sweep {
    /// Offset of a pencil line inside interval `k` (`0..=breakpoints.len()`),
    /// chosen as the simplest rational there.
    pub fn witness_offset(&self, k: usize) -> Rat {
        let n = self.breakpoints.len();
        if n == 0 {
            return Rat::zero();
        }
        if k == 0 {
            return self.breakpoints[0].value.lo().to_rat().floor() - Rat::one();
        }
        if k == n {
            return self.breakpoints[n - 1].value.hi().to_rat().ceil() + Rat::one();
        }
        simplest_between(
            &self.breakpoints[k - 1].value.hi().to_rat(),
            &self.breakpoints[k].value.lo().to_rat(),
        )
    }

    /// Counts on the `breakpoints.len() + 1` intervals, starting from
    /// `start` on the first interval where grate `i` has type `signs[i]`.
    pub fn counts(&self, grates: &[Grate], signs: &[i8], start: i64) -> Vec<i64> {
        let mut signs = signs.to_vec();
        let mut s = start;
        let mut out = Vec::with_capacity(self.breakpoints.len() + 1);
        out.push(s);
        for b in &self.breakpoints {
            for &(g, _) in &b.members {
                s -= 2 * grates[g].weight * signs[g] as i64;
                signs[g] = -signs[g];
            }
            out.push(s);
        }
        out
    }
}

fn sweep_grates(grates: &[Grate], dir: &Direction, final_pass: bool) -> Option<Sweep> {
    let mut items: Vec<(RInterval, (usize, usize))> = grates
        .iter()
        .enumerate()
        .flat_map(|(g, gr)| (0..2).map(move |e| (dir.offset(&gr.endpoints[e]), (g, e))))
        .collect();
    items.sort_by(|a, b| {
        a.0.mid_f64()
            .partial_cmp(&b.0.mid_f64())
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| a.0.lo().cmp(b.0.lo()))
    });
    let mut breakpoints: Vec<Breakpoint> = Vec::new();
    for (v, m) in items {
        match breakpoints.last_mut() {
            Some(last) if !last.value.certainly_lt(&v) => {
                if !final_pass {
                    return None;
                }
                last.value = last.value.hull(&v);
                last.members.push(m);
            }
            _ => breakpoints.push(Breakpoint {
                value: v,
                members: vec![m],
            }),
        }
    }
    let ties = breakpoints.iter().filter(|b| b.members.len() > 1).count();
    Some(Sweep {
        direction: dir.clone(),
        breakpoints,
        ties,
    })
}

/// Simplest rational (smallest denominator, then smallest absolute
/// numerator) in the open interval `(lo, hi)`.
pub fn simplest_between(lo: &Rat, hi: &Rat) -> Rat {
    assert!(lo < hi, "empty interval");
    if lo.is_negative() && hi.is_positive() {
        return Rat::zero();
    }
    if !hi.is_positive() {
        return -simplest_above(&-hi, Some(&-lo));
    }
    simplest_above(lo, Some(hi))
}

/// Simplest rational in `(lo, hi)` for `lo >= 0`, `hi` possibly infinite.
fn simplest_above(lo: &Rat, hi: Option<&Rat>) -> Rat {
    let n = lo.floor();
    let next = &n + Rat::one();
    if hi.map_or(true, |h| next < *h) {
        return next;
    }
    let h = hi.expect("finite upper bound") - &n;
    let l = lo - &n;
    let upper = (!l.is_zero()).then(|| l.recip());
    n + simplest_above(&h.recip(), upper.as_ref()).recip()
}

/// A pencil direction strictly inside the angular interval `(lo, hi)`
/// (radians, `hi - lo < pi`), with simplest rational slope.
fn direction_between(lo: f64, hi: f64) -> Direction {
    let k = ((lo - PI / 2.0) / PI).ceil();
    if PI / 2.0 + k * PI < hi {
        return Direction::vertical();
    }
    let shift = ((lo + PI / 2.0) / PI).floor() * PI;
    let (tl, th) = ((lo - shift).tan(), (hi - shift).tan());
    let to_rat = |x: f64| Dyadic::from_f64(x).expect("finite").to_rat();
    Direction::slope(simplest_between(&to_rat(tl), &to_rat(th)))
}

/// The arrangement of lines dual to the grate endpoints of a base line `M`.
pub struct DualGrateArrangement<'a> {
    set: &'a BitangentSet,
    chart: MChart,
    signs: Vec<Option<i8>>,
    base_count: i64,
    grates: Vec<Grate>,
    fine: OnceLock<Option<Vec<Grate>>>,
}

impl<'a> DualGrateArrangement<'a> {
    /// Arrangement for the base line `V(m)`; fails if `V(m)` meets a
    /// tangency point or is a bitangent.
    pub fn new(set: &'a BitangentSet, m: &ProjLine) -> Result<DualGrateArrangement<'a>> {
        let signs = qtype_signs(set, m).map_err(hypothesis_error)?;
        let chart = MChart::new(m);
        let grates = grates_with_signs(set, &chart, &signs, GRATE_BITS)?;
        let base_count = set
            .bitangents()
            .iter()
            .zip(&signs)
            .filter_map(|(bt, s)| s.map(|s| s as i64 * bt.multiplicity() as i64))
            .sum();
        Ok(DualGrateArrangement {
            set,
            chart,
            signs,
            base_count,
            grates,
            fine: OnceLock::new(),
        })
    }

    /// Arrangement for `V(z)`, or for the first generic line of a seeded
    /// list of small alternatives if `V(z)` meets a tangency point or is a
    /// bitangent.
    pub fn with_generic_base(set: &'a BitangentSet, seed: u64) -> Result<DualGrateArrangement<'a>> {
        for m in base_candidates(seed) {
            match DualGrateArrangement::new(set, &m) {
                Ok(a) => return Ok(a),
                Err(
                    CoreError::LineAtInfinityMeetsTangency
                    | CoreError::LineAtInfinityIsBitangent
                    | CoreError::Undecidable(_),
                ) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(CoreError::GenericityFailure(BASE_RETRIES))
    }

    pub fn base_line(&self) -> &ProjLine {
        self.chart.line()
    }

    pub fn chart(&self) -> &MChart {
        &self.chart
    }

    /// Signed count relative to the base line.
    pub fn base_count(&self) -> i64 {
        self.base_count
    }

    pub fn grates(&self) -> &[Grate] {
        &self.grates
    }

    /// Types relative to the base line, `None` for complex bitangents.
    pub fn base_signs(&self) -> &[Option<i8>] {
        &self.signs
    }

    /// Lines of the dual plane, two per grate: the coordinates of the grate
    /// endpoints.
    pub fn dual_lines(&self) -> Vec<[f64; 3]> {
        self.grates
            .iter()
            .flat_map(|g| g.points.iter().map(|p| p.each_ref().map(|c| c.mid_f64())))
            .collect()
    }

    /// Pairwise intersections of the dual lines: the lines through two grate
    /// endpoints, normalized to unit length.
    pub fn vertices(&self) -> Vec<[f64; 3]> {
        let lines = self.dual_lines();
        let mut out = Vec::new();
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                let (a, b) = (lines[i], lines[j]);
                let v = [
                    a[1] * b[2] - a[2] * b[1],
                    a[2] * b[0] - a[0] * b[2],
                    a[0] * b[1] - a[1] * b[0],
                ];
                let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                out.push(v.map(|x| x / n));
            }
        }
        out
    }

    /// Directions (in `[0, pi)`) of the lines through two grate endpoints in
    /// the chart of `M`: the pencil directions at which the order of the
    /// breakpoints changes.
    pub fn critical_angles(&self) -> Vec<f64> {
        let pts: Vec<[f64; 2]> = self
            .grates
            .iter()
            .flat_map(|g| g.endpoints_approx())
            .collect();
        let mut out = Vec::new();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let t = (pts[j][1] - pts[i][1]).atan2(pts[j][0] - pts[i][0]);
                out.push(t.rem_euclid(PI));
            }
        }
        out.sort_by(|a, b| a.partial_cmp(b).expect("finite angles"));
        out.dedup_by(|b, a| *b - *a < ANGLE_RESOLUTION);
        out
    }

    /// One pencil direction inside each gap between critical angles.
    pub fn sample_directions(&self) -> Vec<Direction> {
        let angles = self.critical_angles();
        if angles.is_empty() {
            return vec![Direction::slope(Rat::zero())];
        }
        let n = angles.len();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = angles[i];
            let b = if i + 1 < n {
                angles[i + 1]
            } else {
                angles[0] + PI
            };
            let w = b - a;
            if w < ANGLE_RESOLUTION {
                continue;
            }
            out.push(direction_between(a + w / 4.0, b - w / 4.0));
        }
        out
    }

    fn fine_grates(&self) -> Option<&[Grate]> {
        self.fine
            .get_or_init(|| {
                grates_with_signs(self.set, &self.chart, &self.signs, GRATE_BITS_MAX).ok()
            })
            .as_deref()
    }

    /// Ordered breakpoints of the pencil with direction `dir`. Enclosures
    /// are refined once if two offsets overlap; offsets still overlapping
    /// after that are grouped.
    pub fn sweep(&self, dir: &Direction) -> Sweep {
        if let Some(s) = sweep_grates(&self.grates, dir, false) {
            return s;
        }
        match self.fine_grates() {
            Some(fine) => sweep_grates(fine, dir, true),
            None => sweep_grates(&self.grates, dir, true),
        }
        .expect("final pass always succeeds")
    }

    /// Counts along the pencil `dir`, starting from the base line.
    pub fn pencil_counts(&self, dir: &Direction) -> (Sweep, Vec<i64>) {
        let sweep = self.sweep(dir);
        let signs: Vec<i8> = self.grates.iter().map(|g| g.sign).collect();
        let counts = sweep.counts(&self.grates, &signs, self.base_count);
        (sweep, counts)
    }

    /// Signed count relative to `V(l)` through the grates of the base line.
    pub fn transform_count(&self, l: &ProjLine) -> Result<i64> {
        if self.set.find_rational_line(l).is_some() {
            return Err(CoreError::LineAtInfinityIsBitangent);
        }
        transform_count(self.base_count, &self.grates, self.set, l)
    }

    /// All counts attained on the sampled regions, with one witness line
    /// per count.
    pub fn all_counts(&self) -> SignedCounts {
        let dirs = self.sample_directions();
        let per_dir: Vec<(BTreeMap<i64, Witness>, usize, usize)> = dirs
            .par_iter()
            .map(|dir| {
                let (sweep, counts) = self.pencil_counts(dir);
                let mut best: BTreeMap<i64, (Rat, usize)> = BTreeMap::new();
                for (k, &c) in counts.iter().enumerate() {
                    let off = sweep.witness_offset(k);
                    let h = height(&off);
                    let e = best.entry(c).or_insert((off.clone(), k));
                    if h < height(&e.0) {
                        *e = (off, k);
                    }
                }
                let witnesses = best
                    .into_iter()
                    .map(|(c, (off, _))| {
                        let line = self.chart.pencil_line(dir, &off);
                        (
                            c,
                            Witness {
                                line,
                                direction: dir.clone(),
                                offset: off,
                            },
                        )
                    })
                    .collect();
                (witnesses, counts.len(), sweep.ties)
            })
            .collect();
        let mut witnesses: BTreeMap<i64, Witness> = BTreeMap::new();
        let mut regions = 0;
        let mut ties = 0;
        for (w, r, t) in per_dir {
            regions += r;
            ties += t;
            for (c, wit) in w {
                match witnesses.get(&c) {
                    Some(old) if old.height() <= wit.height() => {}
                    _ => {
                        witnesses.insert(c, wit);
                    }
                }
            }
        }
        SignedCounts {
            base_line: self.chart.line().clone(),
            base_count: self.base_count,
            grate_count: self.grates.len(),
            directions: dirs.len(),
            regions_sampled: regions,
            ties,
            witnesses,
        }
    }
}

fn height(r: &Rat) -> u64 {
    r.numer().bits() + r.denom().bits()
}

fn base_candidates(seed: u64) -> Vec<ProjLine> {
    let mut out = vec![ProjLine::z_axis_at_infinity()];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < BASE_RETRIES {
        let c = [rng.gen_range(-3..=3), rng.gen_range(-3..=3), 1];
        let l = ProjLine::from_i64s(c).expect("nonzero");
        if !out.contains(&l) {
            out.push(l);
        }
    }
    out
}

/// A line at infinity realising a count.
#[derive(Clone, Debug)]
pub struct Witness {
    pub line: ProjLine,
    pub direction: Direction,
    pub offset: Rat,
}

impl Witness {
    fn height(&self) -> u64 {
        self.line.coords().iter().map(height).sum()
    }
}

/// Result of the sweep over all regions of the dual grate arrangement.
#[derive(Clone, Debug)]
pub struct SignedCounts {
    pub base_line: ProjLine,
    pub base_count: i64,
    pub grate_count: usize,
    pub directions: usize,
    pub regions_sampled: usize,
    /// Breakpoint groups whose offsets could not be separated.
    pub ties: usize,
    pub witnesses: BTreeMap<i64, Witness>,
}

impl SignedCounts {
    pub fn counts(&self) -> Vec<i64> {
        self.witnesses.keys().copied().collect()
    }
}

/// All signed counts of a smooth quartic over the choices of line at
/// infinity, with witnesses.
pub fn all_signed_counts(f: &Quartic) -> Result<SignedCounts> {
    let set = compute_bitangents(f, 0)?;
    all_signed_counts_of(&set)
}

pub fn all_signed_counts_of(set: &BitangentSet) -> Result<SignedCounts> {
    Ok(DualGrateArrangement::with_generic_base(set, 0)?.all_counts())
}

/// One interval of a [`CountBand`].
#[derive(Clone, Debug)]
pub struct BandInterval {
    /// Offsets bounding the interval (`None` for the unbounded ends).
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub witness: Rat,
    pub line: ProjLine,
    pub count: i64,
}

/// Signed counts along the pencil of lines `y = a x + c` in the chart
/// `z = 1`, as a function of `c`.
#[derive(Clone, Debug)]
pub struct CountBand {
    pub slope: Rat,
    /// Enclosures of the offsets `c = y - a x` of the grate endpoints.
    pub breakpoints: Vec<RInterval>,
    pub intervals: Vec<BandInterval>,
    pub ties: usize,
}

impl CountBand {
    /// Count on the pencil line with offset `c`, `None` if `c` cannot be
    /// placed strictly inside one interval.
    pub fn count_at(&self, c: &Rat) -> Option<i64> {
        let prec = self.breakpoints.first().map_or(64, |b| b.prec());
        let x = RInterval::from_rat(c, prec);
        let mut k = 0;
        for b in &self.breakpoints {
            if b.certainly_lt(&x) {
                k += 1;
            } else if !x.certainly_lt(b) {
                return None;
            }
        }
        Some(self.intervals[k].count)
    }
}

/// Signed counts along the pencil of slope `a` in the chart `z = 1`. The
/// count on the first interval is computed directly; every breakpoint then
/// flips the type of its grate.
pub fn count_band(set: &BitangentSet, slope: &Rat) -> Result<CountBand> {
    let arr = DualGrateArrangement::new(set, &ProjLine::z_axis_at_infinity())?;
    let dir = Direction::slope(slope.clone());
    let sweep = arr.sweep(&dir);
    let first = arr.chart.pencil_line(&dir, &sweep.witness_offset(0));
    let signs = qtype_signs(set, &first).map_err(hypothesis_error)?;
    let start: i64 = set
        .bitangents()
        .iter()
        .zip(&signs)
        .filter_map(|(bt, s)| s.map(|s| s as i64 * bt.multiplicity() as i64))
        .sum();
    let grate_signs: Vec<i8> = arr
        .grates
        .iter()
        .map(|g| signs[g.bitangent].expect("grates are real"))
        .collect();
    let counts = sweep.counts(&arr.grates, &grate_signs, start);
    let n = sweep.breakpoints.len();
    let intervals = counts
        .iter()
        .enumerate()
        .map(|(k, &count)| {
            let witness = sweep.witness_offset(k);
            BandInterval {
                lower: (k > 0).then(|| sweep.breakpoints[k - 1].value.mid_f64()),
                upper: (k < n).then(|| sweep.breakpoints[k].value.mid_f64()),
                line: arr.chart.pencil_line(&dir, &witness),
                witness,
                count,
            }
        })
        .collect();
    Ok(CountBand {
        slope: slope.clone(),
        breakpoints: sweep.breakpoints.iter().map(|b| b.value.clone()).collect(),
        intervals,
        ties: sweep.ties,
    })
}

/// Counts outside `{0, 2, 4, 6, 8}`.
pub fn outside_expected_range(c: i64) -> bool {
    !(0..=8).contains(&c) || c % 2 != 0
}

/// Outcome of [`all_signed_counts`] on one scanned quartic.
#[derive(Clone, Debug)]
pub struct ScanEntry {
    pub corpus_index: usize,
    pub sample: usize,
    pub quartic: Quartic,
    pub real_bitangents: usize,
    pub result: std::result::Result<SignedCounts, String>,
}

/// A count outside `{0, 2, 4, 6, 8}` with its witness.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub corpus_index: usize,
    pub sample: usize,
    pub quartic: Quartic,
    pub count: i64,
    pub witness: ProjLine,
}

#[derive(Clone, Debug, Default)]
pub struct ScanReport {
    pub entries: Vec<ScanEntry>,
    pub counterexamples: Vec<Counterexample>,
}

impl ScanReport {
    pub fn failures(&self) -> usize {
        self.entries.iter().filter(|e| e.result.is_err()).count()
    }

    /// Histogram of attained count sets.
    pub fn count_sets(&self) -> BTreeMap<Vec<i64>, usize> {
        let mut out = BTreeMap::new();
        for e in &self.entries {
            if let Ok(r) = &e.result {
                *out.entry(r.counts()).or_insert(0) += 1;
            }
        }
        out
    }
}

/// Run [`all_signed_counts`] on every corpus quartic and on
/// `samples_per_quartic - 1` random projective images of it, flagging any
/// count outside `{0, 2, 4, 6, 8}`. Failures are recorded per entry.
pub fn conjecture_scan(corpus: &[Quartic], samples_per_quartic: usize, seed: u64) -> ScanReport {
    let jobs: Vec<(usize, usize, Quartic)> = corpus
        .iter()
        .enumerate()
        .flat_map(|(i, f)| {
            (0..samples_per_quartic.max(1)).map(move |s| {
                let q = if s == 0 {
                    f.clone()
                } else {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((i as u64) << 32) ^ s as u64);
                    f.substitute_linear(ProjectiveMap::random(&mut rng, 2).matrix())
                };
                (i, s, q)
            })
        })
        .collect();
    let entries: Vec<ScanEntry> = jobs
        .into_par_iter()
        .map(|(i, s, q)| {
            let (real, result) = match compute_bitangents(&q, seed) {
                Ok(set) => (
                    set.real_count(),
                    all_signed_counts_of(&set).map_err(|e| e.to_string()),
                ),
                Err(e) => (0, Err(e.to_string())),
            };
            ScanEntry {
                corpus_index: i,
                sample: s,
                quartic: q,
                real_bitangents: real,
                result,
            }
        })
        .collect();
    let mut counterexamples = Vec::new();
    for e in &entries {
        if let Ok(r) = &e.result {
            for (c, w) in &r.witnesses {
                if outside_expected_range(*c) {
                    counterexamples.push(Counterexample {
                        corpus_index: e.corpus_index,
                        sample: e.sample,
                        quartic: e.quartic.clone(),
                        count: *c,
                        witness: w.line.clone(),
                    });
                }
            }
        }
    }
    ScanReport {
        entries,
        counterexamples,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use bitangent_numeric::rat::{rat, rat_frac};

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_between(&rat_frac(-1, 2), &rat(3)), rat(0));
        assert_eq!(
            simplest_between(&rat_frac(1, 3), &rat_frac(1, 2)),
            rat_frac(2, 5)
        );
        assert_eq!(
            simplest_between(&rat_frac(3, 10), &rat_frac(4, 10)),
            rat_frac(1, 3)
        );
        assert_eq!(simplest_between(&rat(2), &rat(3)), rat_frac(5, 2));
        assert_eq!(simplest_between(&rat(-3), &rat(-2)), rat_frac(-5, 2));
        assert_eq!(simplest_between(&rat_frac(7, 4), &rat(5)), rat(2));
        assert_eq!(
            simplest_between(&rat(0), &rat_frac(1, 100)),
            rat_frac(1, 101)
        );
    }

    #[test]
    fn directions_fall_inside_gaps() {
        for (lo, hi) in [(0.1, 0.2), (1.5, 1.6), (3.0, 3.2), (2.0, 2.01), (4.6, 4.8)] {
            let d = direction_between(lo, hi);
            let t = rat_to_f64(&d.q).atan2(rat_to_f64(&d.p)).rem_euclid(PI);
            let inside = (lo..hi).contains(&t) || (lo..hi).contains(&(t + PI));
            assert!(inside, "{lo} {hi} -> {t}");
        }
    }

    fn rat_to_f64(r: &Rat) -> f64 {
        bitangent_numeric::rat::rat_to_f64(r)
    }

    #[test]
    fn chart_of_standard_line() {
        let c = MChart::new(&ProjLine::z_axis_at_infinity());
        let z = [3, 4, 2].map(|v| RInterval::from_i64(v, 64));
        let (xy, s) = c.affine(&z).unwrap();
        assert_eq!(s, 1);
        assert!(xy[0].contains_rat(&rat_frac(3, 2)) && xy[1].contains_rat(&rat(2)));
        let l = c.pencil_line(&Direction::slope(rat_frac(5, 4)), &rat(1));
        // -5/4 X + Y = 1  ->  V(-5/4 x + y - z)
        assert_eq!(
            l,
            ProjLine::new([rat(1), rat_frac(-4, 5), rat_frac(4, 5)]).unwrap()
        );
    }

    #[test]
    fn fermat_has_no_grates() {
        let set = compute_bitangents(&Quartic::fermat(), 0).unwrap();
        let arr = DualGrateArrangement::with_generic_base(&set, 0).unwrap();
        assert!(arr.grates().is_empty());
        let counts = arr.all_counts();
        assert_eq!(counts.counts(), vec![4]);
    }
}
