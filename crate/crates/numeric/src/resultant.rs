use crate::error::NumericError;
use crate::mpoly::MultiPoly;
use crate::scalar::Scalar;

fn trim<S: Scalar>(mut v: Vec<S>) -> Vec<S> {
    while v.last().is_some_and(|c| c.is_zero_exact()) {
        v.pop();
    }
    v
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b` on dense
/// coefficient vectors (index = degree). `b` must be nonzero.
pub fn pseudo_remainder<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return r;
    }
    let lb = b[db].clone();
    let mut e = r.len() - db;
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c = c.times(&lb);
        }
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] = r[shift + j].minus(&lr.times(bc));
        }
        r = trim(r);
        e -= 1;
        if r.is_empty() {
            return r;
        }
    }
    if e > 0 {
        let f = lb.pow(e as u32);
        for c in r.iter_mut() {
            *c = c.times(&f);
        }
    }
    r
}

fn exact_div_all<S: Scalar>(v: Vec<S>, d: &S) -> Vec<S> {
    v.into_iter()
        .map(|c| c.divided(d).expect("subresultant division is exact"))
        .collect()
}

/// Runs the subresultant pseudo-remainder sequence and returns the
/// resultant together with the sequence members. When the first input has
/// smaller degree the inputs are exchanged (and the sign adjusted).
fn subresultant_prs<S: Scalar>(p: &[S], q: &[S]) -> (S, Vec<Vec<S>>) {
    let template = p.first().or(q.first()).expect("nonempty input").clone();
    let mut a = trim(p.to_vec());
    let mut b = trim(q.to_vec());
    let zero = template.zero_like();
    let one = template.one_like();
    if a.is_empty() || b.is_empty() {
        return (zero, vec![a, b]);
    }
    let mut s = one.clone();
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
        if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
            s = s.negated();
        }
    }
    let mut chain = vec![a.clone(), b.clone()];
    if b.len() == 1 {
        let r = b[0].pow((a.len() - 1) as u32);
        return (s.times(&r), chain);
    }
    let mut g = one.clone();
    let mut h = one.clone();
    loop {
        let da = a.len() - 1;
        let db = b.len() - 1;
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = s.negated();
        }
        let r = pseudo_remainder(&a, &b);
        a = b;
        if r.is_empty() {
            return (zero, chain);
        }
        let divisor = g.times(&h.pow(delta as u32));
        b = exact_div_all(r, &divisor);
        chain.push(b.clone());
        g = a.last().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g
                .pow(delta as u32)
                .divided(&h.pow(delta as u32 - 1))
                .expect("subresultant division is exact"),
        };
        if b.len() == 1 {
            break;
        }
    }
    let da = a.len() - 1;
    let lb = b[0].clone();
    let hh = match da {
        0 => h,
        1 => lb,
        _ => lb
            .pow(da as u32)
            .divided(&h.pow(da as u32 - 1))
            .expect("subresultant division is exact"),
    };
    (s.times(&hh), chain)
}

/// Resultant of two dense polynomials (index = degree) over a ring with
/// exact division, by the subresultant pseudo-remainder sequence.
///
/// Conventions for degenerate inputs: a zero input gives zero; a constant
/// `c` against a polynomial of degree `n` gives `c^n`.
pub fn resultant_dense<S: Scalar>(p: &[S], q: &[S]) -> S {
    subresultant_prs(p, q).0
}

/// The subresultant sequence starting from `p`, `q` (larger degree first):
/// each later member is, up to sign, the subresultant of its degree.
/// Ends with the last nonzero member.
pub fn subresultant_chain<S: Scalar>(p: &[S], q: &[S]) -> Vec<Vec<S>> {
    subresultant_prs(p, q).1
}

/// Resultant and subresultant sequence from a single run.
pub fn resultant_with_chain<S: Scalar>(p: &[S], q: &[S]) -> (S, Vec<Vec<S>>) {
    subresultant_prs(p, q)
}

/// Sylvester resultant of `p` and `q` with respect to variable `var`.
pub fn resultant(p: &MultiPoly, q: &MultiPoly, var: usize) -> Result<MultiPoly, NumericError> {
    if p.arity() != q.arity() {
        return Err(NumericError::ArityMismatch {
            expected: p.arity(),
            got: q.arity(),
        });
    }
    if var >= p.arity() {
        return Err(NumericError::ArityMismatch {
            expected: var + 1,
            got: p.arity(),
        });
    }
    if p.is_zero() || q.is_zero() {
        return Err(NumericError::ZeroPolynomial);
    }
    if p.degree_in(var) == 0 || q.degree_in(var) == 0 {
        return Err(NumericError::NothingToEliminate(var));
    }
    let pc = p.coeffs_in(var);
    let qc = q.coeffs_in(var);
    Ok(resultant_dense(&pc, &qc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, Rat};
    use crate::upoly::UniPoly;

    /// Sylvester determinant by fraction-free Gaussian elimination over the
    /// rationals; independent of the sequence-based computation.
    fn sylvester(p: &[Rat], q: &[Rat]) -> Rat {
        let m = p.len() - 1;
        let n = q.len() - 1;
        let size = m + n;
        let mut mat = vec![vec![rat(0); size]; size];
        for i in 0..n {
            for (j, c) in p.iter().rev().enumerate() {
                mat[i][i + j] = c.clone();
            }
        }
        for i in 0..m {
            for (j, c) in q.iter().rev().enumerate() {
                mat[n + i][i + j] = c.clone();
            }
        }
        let mut det = rat(1);
        for col in 0..size {
            let Some(piv) = (col..size).find(|&r| mat[r][col] != rat(0)) else {
                return rat(0);
            };
            if piv != col {
                mat.swap(piv, col);
                det = -det;
            }
            let pv = mat[col][col].clone();
            det *= &pv;
            for r in col + 1..size {
                let f = &mat[r][col] / &pv;
                for c in col..size {
                    let t = &f * &mat[col][c];
                    mat[r][c] -= t;
                }
            }
        }
        det
    }

    fn v(cs: &[i64]) -> Vec<Rat> {
        cs.iter().map(|&c| rat(c)).collect()
    }

    #[test]
    fn linear_pair() {
        assert_eq!(resultant_dense(&v(&[-1, 1]), &v(&[1, 1])), rat(2));
    }

    #[test]
    fn quadratic_discriminant() {
        // x^2 + b x + c and 2x + b give (4c - b^2) up to the sign convention.
        let (b, c) = (3, 5);
        let r = resultant_dense(&v(&[c, b, 1]), &v(&[b, 2]));
        assert_eq!(r, rat(4 * c - b * b));
    }

    #[test]
    fn matches_sylvester_determinant() {
        let cases = [
            (v(&[1, -3, 0, 2, 7]), v(&[5, 1, -1])),
            (v(&[2, 0, 0, 1]), v(&[-1, 4, 0, 0, 3])),
            (v(&[1, 2, 3]), v(&[3, 2, 1])),
            (v(&[0, 0, 1, 1]), v(&[0, 1, 2])),
            (v(&[4, -4, 1]), v(&[-2, 1])),
        ];
        for (p, q) in cases {
            assert_eq!(resultant_dense(&p, &q), sylvester(&p, &q), "{p:?} {q:?}");
        }
    }

    #[test]
    fn multivariate_elimination() {
        // Res_x(x - t, x^2 - 2) = t^2 - 2 up to sign.
        let x = MultiPoly::var(0, 2);
        let t = MultiPoly::var(1, 2);
        let p = &x - &t;
        let q = &x.pow(2) - &MultiPoly::constant(rat(2), 2);
        let r = resultant(&p, &q, 0).unwrap();
        let expect = &t.pow(2) - &MultiPoly::constant(rat(2), 2);
        assert!(r == expect || r == -&expect, "{r}");
        assert_eq!(
            resultant(&t, &q, 0),
            Err(NumericError::NothingToEliminate(0))
        );
    }

    #[test]
    fn chain_over_univariate_coefficients() {
        // Common root b = a for every a: the degree-1 member vanishes at b = a.
        let a = UniPoly::x();
        let one = UniPoly::one();
        let p = vec![(&a * &a).scale(&rat(-1)), UniPoly::zero(), one.clone()];
        // (b - a)(b + 1)
        let q = vec![-&a, &one - &a, one.clone()];
        let chain = subresultant_chain(&p, &q);
        let s1 = chain.iter().find(|m| m.len() == 2).unwrap();
        let b = (-&s1[0]).div_exact(&s1[1]).unwrap();
        assert_eq!(b, a);
        assert!(resultant_dense(&p, &q).is_zero());
    }
}
