use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::NumericError;
use crate::rat::{rat_to_f64, Rat};
use crate::roots::isolate_real_roots;
use crate::upoly::UniPoly;

const MAX_ITERATIONS: usize = 2000;
/// Fresh random starts tried before giving up.
const RESTARTS: usize = 4;

/// Approximate all complex roots of `p` with multiplicities.
///
/// Each squarefree factor is solved by Aberth–Ehrlich iteration in double
/// precision, started from a perturbed circle derived from `seed`. The number
/// of real roots of each factor is taken from exact isolation, so the output
/// is conjugation-closed and the real roots carry zero imaginary part.
/// Multiplicities sum to the degree of `p`.
pub fn complex_root_clusters(
    p: &UniPoly,
    tol: f64,
    seed: u64,
) -> Result<Vec<(Complex64, usize)>, NumericError> {
    if p.is_zero() {
        return Err(NumericError::ZeroPolynomial);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (factor, mult) in p.squarefree_decomposition() {
        let real = isolate_real_roots(&factor, 53)?;
        let approx = aberth_squarefree(&factor, tol, &mut rng)?;
        for z in conjugate_closure(approx, real.iter().map(|r| r.approx()).collect()) {
            out.push((z, mult));
        }
    }
    out.sort_by(|a, b| {
        let ka = (a.0.im != 0.0, a.0.re, -a.0.im);
        let kb = (b.0.im != 0.0, b.0.re, -b.0.im);
        ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(out)
}

/// Smallest power of two exceeding the Cauchy root bound.
fn scale_exponent(p: &UniPoly) -> i32 {
    let lead = p.leading();
    let mut m = 0.0f64;
    for c in &p.coeffs()[..p.deg()] {
        let q = (c / &lead).abs();
        m = m.max(rat_to_f64(&q));
    }
    (m + 1.0).log2().ceil().max(0.0) as i32
}

fn aberth_squarefree(
    p: &UniPoly,
    tol: f64,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Complex64>, NumericError> {
    let n = p.deg();
    if n == 0 {
        return Ok(Vec::new());
    }
    let k = scale_exponent(p);
    let scale = 2f64.powi(k);
    // q(y) = p(2^k y) / (lead * 2^(k n)), roots inside the unit disc.
    let lead = p.leading();
    let coeffs: Vec<Complex64> = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let r: Rat = c / &lead;
            let e = k * (i as i32 - n as i32);
            Complex64::new(rat_to_f64(&r) * 2f64.powi(e), 0.0)
        })
        .collect();
    if n == 1 {
        return Ok(vec![-coeffs[0] * scale]);
    }
    let scaled_tol = tol / scale;
    let mut err = None;
    for _ in 0..RESTARTS {
        match aberth_iterate(&coeffs, scaled_tol, rng) {
            Ok(z) => return Ok(z.into_iter().map(|v| v * scale).collect()),
            Err(e) => err = Some(e),
        }
    }
    Err(err.expect("at least one restart"))
}

fn aberth_iterate(
    coeffs: &[Complex64],
    scaled_tol: f64,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Complex64>, NumericError> {
    let n = coeffs.len() - 1;
    let rev: Vec<Complex64> = coeffs.iter().rev().copied().collect();
    let theta0: f64 = rng.gen_range(0.0..2.0 * PI / n as f64);
    let mut z: Vec<Complex64> = (0..n)
        .map(|j| {
            let r = 0.6 + 0.1 * rng.gen::<f64>();
            Complex64::from_polar(r, theta0 + 2.0 * PI * j as f64 / n as f64)
        })
        .collect();
    let mut done = vec![false; n];
    let mut last_max = f64::INFINITY;
    for _ in 0..MAX_ITERATIONS {
        let mut max_corr = 0.0f64;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let zi = z[i];
            let Some(ratio) = newton_ratio(coeffs, &rev, zi) else {
                done[i] = true;
                continue;
            };
            let mut s = Complex64::zero();
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    s += (zi - zj).inv();
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.re.is_finite() && w.im.is_finite() {
                z[i] = zi - w;
                let corr = w.norm() / (1.0 + zi.norm());
                if corr < scaled_tol.max(1e-15) {
                    done[i] = true;
                }
                max_corr = max_corr.max(corr);
            }
        }
        last_max = max_corr;
        if done.iter().all(|&d| d) {
            return Ok(z);
        }
    }
    Err(NumericError::NoConvergence {
        iterations: MAX_ITERATIONS,
        max_correction: last_max,
    })
}

/// The Newton correction `p(z) / p'(z)`, evaluated through the reversed
/// polynomial outside the unit disc. `None` once `|p(z)|` is below the
/// rounding error bound of the evaluation, so `z` cannot be improved in
/// double precision.
fn newton_ratio(coeffs: &[Complex64], rev: &[Complex64], z: Complex64) -> Option<Complex64> {
    let n = coeffs.len() - 1;
    let inside = z.norm() <= 1.0;
    let (c, x) = if inside { (coeffs, z) } else { (rev, z.inv()) };
    let (pv, dv) = horner_with_derivative(c, x);
    let r = x.norm();
    let mut bound = 0.0;
    for a in c.iter().rev() {
        bound = bound * r + a.norm();
    }
    bound *= 4.0 * n as f64 * f64::EPSILON;
    if pv.norm() <= bound {
        return None;
    }
    if inside {
        Some(pv / dv)
    } else {
        // p(z) = z^n r(1/z), so p/p' = z / (n - w r'(w) / r(w)) with w = 1/z.
        Some(z / (Complex64::new(n as f64, 0.0) - x * dv / pv))
    }
}

fn horner_with_derivative(coeffs: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut d = Complex64::zero();
    for c in coeffs.iter().rev() {
        d = d * x + p;
        p = p * x + c;
    }
    (p, d)
}

/// Replace the approximations closest to the real axis by the certified real
/// roots and average the rest into exact conjugate pairs.
fn conjugate_closure(mut approx: Vec<Complex64>, real: Vec<f64>) -> Vec<Complex64> {
    approx.sort_by(|a, b| a.im.abs().partial_cmp(&b.im.abs()).unwrap());
    let mut out: Vec<Complex64> = real.iter().map(|&r| Complex64::new(r, 0.0)).collect();
    let mut rest: Vec<Complex64> = approx.split_off(real.len().min(approx.len()));
    while let Some(a) = rest.pop() {
        let target = a.conj();
        let best = rest
            .iter()
            .enumerate()
            .min_by(|x, y| {
                (x.1 - target)
                    .norm()
                    .partial_cmp(&(y.1 - target).norm())
                    .unwrap()
            })
            .map(|(i, _)| i);
        let b = match best {
            Some(i) => rest.swap_remove(i),
            None => target,
        };
        let re = 0.5 * (a.re + b.re);
        let im = 0.5 * (a.im.abs() + b.im.abs());
        out.push(Complex64::new(re, im));
        out.push(Complex64::new(re, -im));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> UniPoly {
        UniPoly::from_i64s(cs)
    }

    #[test]
    fn unit_roots() {
        let r = complex_root_clusters(&p(&[1, 0, 1]), 1e-12, 0).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r
            .iter()
            .all(|(z, m)| *m == 1 && (z.norm() - 1.0).abs() < 1e-9));
        assert!(r.iter().any(|(z, _)| z.im > 0.5) && r.iter().any(|(z, _)| z.im < -0.5));
        let r = complex_root_clusters(&p(&[-1, 0, 0, 0, 1]), 1e-12, 7).unwrap();
        assert_eq!(r.len(), 4);
        let reals: Vec<f64> = r
            .iter()
            .filter(|(z, _)| z.im == 0.0)
            .map(|(z, _)| z.re)
            .collect();
        assert_eq!(reals.len(), 2);
        assert!((reals[0] + 1.0).abs() < 1e-9 && (reals[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn multiplicities_sum_to_degree() {
        let f = &p(&[1, 0, 1]).pow(2) * &p(&[-3, 1]).pow(3);
        let r = complex_root_clusters(&f, 1e-12, 1).unwrap();
        assert_eq!(r.iter().map(|(_, m)| m).sum::<usize>(), 7);
    }
}
