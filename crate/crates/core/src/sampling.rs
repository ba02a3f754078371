//! Seeded random quartics of prescribed real topology, compact quartics and
//! random lines.

use bitangent_numeric::rat::{rat, rat_frac};
use bitangent_numeric::{MultiPoly, Rat};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::{
    is_smooth, real_points_on_line, ProjLine, ProjectiveMap, Quartic, MONOMIALS,
};

/// Rigid isotopy types of smooth real plane quartics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Topology {
    Empty,
    OneOval,
    TwoOvals,
    ThreeOvals,
    FourOvals,
    Nested,
}

impl Topology {
    pub const ALL: [Topology; 6] = [
        Topology::Empty,
        Topology::OneOval,
        Topology::TwoOvals,
        Topology::ThreeOvals,
        Topology::FourOvals,
        Topology::Nested,
    ];

    /// Number of real bitangents of every quartic of this type.
    pub fn real_bitangents(self) -> usize {
        match self {
            Topology::Empty | Topology::OneOval | Topology::Nested => 4,
            Topology::TwoOvals => 8,
            Topology::ThreeOvals => 16,
            Topology::FourOvals => 28,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Topology::Empty => "empty",
            Topology::OneOval => "one-oval",
            Topology::TwoOvals => "two-ovals",
            Topology::ThreeOvals => "three-ovals",
            Topology::FourOvals => "four-ovals",
            Topology::Nested => "nested",
        }
    }
}

fn var(i: usize) -> MultiPoly {
    MultiPoly::var(i, 3)
}

fn lin(c: [i64; 3]) -> MultiPoly {
    &(&var(0).scale(&rat(c[0])) + &var(1).scale(&rat(c[1]))) + &var(2).scale(&rat(c[2]))
}

/// `x^2 + y^2 - r z^2` translated to `(cx, 0)`.
fn circle(cx: i64, r: i64) -> MultiPoly {
    let x = &var(0) - &var(2).scale(&rat(cx));
    &(&(&x * &x) + &var(1).pow(2)) - &var(2).pow(2).scale(&rat(r))
}

fn sum_sq() -> MultiPoly {
    &(&var(0).pow(2) + &var(1).pow(2)) + &var(2).pow(2)
}

/// The unperturbed model of each type, all with coefficients of moderate
/// size and real locus well inside the affine chart `z = 1`.
fn model(t: Topology) -> MultiPoly {
    let (x, y, z) = (var(0), var(1), var(2));
    match t {
        Topology::Empty => &(&x.pow(4) + &y.pow(4)) + &z.pow(4),
        Topology::OneOval => &(&x.pow(4) + &y.pow(4)) - &z.pow(4),
        Topology::TwoOvals => &(&circle(-2, 1) * &circle(2, 1)) + &z.pow(4).scale(&rat_frac(1, 2)),
        Topology::Nested => &(&circle(0, 1) * &circle(0, 4)) + &z.pow(4).scale(&rat_frac(1, 2)),
        Topology::ThreeOvals | Topology::FourOvals => {
            let lines =
                &(&lin([1, 0, 0]) * &lin([0, 1, 0])) * &(&lin([1, 1, -1]) * &lin([2, -1, 3]));
            let eps = sum_sq().pow(2).scale(&rat_frac(1, 200));
            if t == Topology::FourOvals {
                &lines + &eps
            } else {
                &lines - &eps
            }
        }
    }
}

fn small_rat(rng: &mut ChaCha8Rng, num: i64, den: i64) -> Rat {
    rat_frac(rng.gen_range(-num..=num), den)
}

/// A quartic of type `t`: the model plus small rational noise in every
/// coefficient, moved by a random integer coordinate change with entries in
/// `[-1, 1]` around the identity. Retries until the result is smooth.
pub fn random_quartic(t: Topology, rng: &mut ChaCha8Rng) -> Quartic {
    let base = Quartic::from_poly(&model(t)).expect("model is a quartic");
    loop {
        let noise: [Rat; 15] = std::array::from_fn(|_| small_rat(rng, 1, 1000));
        let coeffs: [Rat; 15] = std::array::from_fn(|i| &base.coeffs()[i] + &noise[i]);
        let Ok(f) = Quartic::new(coeffs) else {
            continue;
        };
        let g = loop {
            let m: [[i64; 3]; 3] = std::array::from_fn(|i| {
                std::array::from_fn(|j| i64::from(i == j) * 2 + rng.gen_range(-1..=1))
            });
            if let Ok(g) = ProjectiveMap::from_i64s(m) {
                break g;
            }
        };
        let f = f.substitute_linear(g.matrix());
        if is_smooth(&f) {
            return f;
        }
    }
}

/// A random smooth quartic with small integer coefficients and a positive
/// definite restriction to `V(z)`, so its real locus is compact in the
/// chart `z = 1`.
pub fn random_compact_quartic(rng: &mut ChaCha8Rng) -> Quartic {
    let inf = ProjLine::z_axis_at_infinity();
    loop {
        let mut coeffs: [Rat; 15] = std::array::from_fn(|_| rat(rng.gen_range(-9..=9)));
        for (c, e) in coeffs.iter_mut().zip(MONOMIALS.iter()) {
            if *e == [4, 0, 0] || *e == [0, 4, 0] {
                *c = rat(rng.gen_range(10..=30));
            }
        }
        let Ok(f) = Quartic::new(coeffs) else {
            continue;
        };
        if real_points_on_line(&f, &inf) == Ok(0) && is_smooth(&f) {
            return f;
        }
    }
}

/// A random line with small integer coordinates.
pub fn random_line(rng: &mut ChaCha8Rng, range: i64) -> ProjLine {
    loop {
        let c: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-range..=range));
        if let Ok(l) = ProjLine::from_i64s(c) {
            return l;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn generated_quartics_are_smooth() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for t in Topology::ALL {
            assert!(random_quartic(t, &mut rng).is_smooth(), "{t:?}");
        }
        let f = random_compact_quartic(&mut rng);
        assert_eq!(
            real_points_on_line(&f, &ProjLine::z_axis_at_infinity()).unwrap(),
            0
        );
    }
}
