use bitangent_numeric::{
    complex_root_clusters, isolate_real_roots, rat, rat_frac, refine_root, resultant_dense,
    sign_at, Coord, Dyadic, MultiPoly, Precision, RInterval, Rat, Sign, UniPoly,
};
use proptest::prelude::*;

fn poly_strategy(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    (1..=max_deg)
        .prop_flat_map(|d| (prop::collection::vec(-6i64..=6, d), 1i64..=4))
        .prop_map(|(mut cs, lead)| {
            cs.push(lead);
            UniPoly::from_i64s(&cs)
        })
}

fn sign_of_rat(r: &Rat) -> i8 {
    bitangent_numeric::rat::sign_of(r)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn resultant_is_multiplicative(p in poly_strategy(3), q in poly_strategy(3), r in poly_strategy(3)) {
        let pq = &p * &q;
        let lhs = resultant_dense(pq.coeffs(), r.coeffs());
        let rhs = resultant_dense(p.coeffs(), r.coeffs()) * resultant_dense(q.coeffs(), r.coeffs());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn isolation_finds_every_rational_root(
        roots in prop::collection::vec((-20i64..=20, 1i64..=4, 1usize..=3), 1..6),
        quad in 1i64..5,
    ) {
        let mut f = UniPoly::from_i64s(&[quad, 0, 1]);
        let mut distinct: Vec<Rat> = Vec::new();
        for (n, d, m) in &roots {
            let r = rat_frac(*n, *d);
            f = &f * &UniPoly::new(vec![-r.clone(), rat(1)]).pow(*m as u32);
            if !distinct.contains(&r) {
                distinct.push(r);
            }
        }
        let iso = isolate_real_roots(&f, 30).unwrap();
        prop_assert_eq!(iso.len(), distinct.len());
        for r in &distinct {
            prop_assert!(iso.iter().filter(|i| &i.lo <= r && r <= &i.hi).count() == 1);
        }
        for w in iso.windows(2) {
            prop_assert!(w[0].hi < w[1].lo);
        }
        let total: usize = roots.iter().map(|(_, _, m)| m).sum();
        prop_assert!(iso.iter().map(|i| i.multiplicity).sum::<usize>() <= total);
    }

    #[test]
    fn clusters_are_conjugate_closed(p in poly_strategy(8), seed in 0u64..1000) {
        let deg = p.deg();
        let clusters = complex_root_clusters(&p, 1e-10, seed).unwrap();
        prop_assert_eq!(clusters.iter().map(|(_, m)| m).sum::<usize>(), deg);
        for (z, m) in &clusters {
            if z.im != 0.0 {
                let has_conj = clusters
                    .iter()
                    .any(|(w, k)| k == m && w.re == z.re && w.im == -z.im);
                prop_assert!(has_conj);
            }
        }
    }

    #[test]
    fn refinement_keeps_a_sign_change(n in -30i64..30, d in 1i64..7, extra in poly_strategy(3), bits in 10u32..80) {
        let r = rat_frac(n, d);
        // Multiply by a factor with no real roots near r so the root stays simple.
        let g = &UniPoly::from_i64s(&[1, 0, 1]) * &(&extra * &extra);
        let g = &g + &UniPoly::from_i64s(&[1]);
        let f = &UniPoly::new(vec![-r.clone(), rat(1)]) * &g;
        let iso = isolate_real_roots(&f, 8).unwrap();
        let root = iso.iter().find(|i| i.lo <= r && r <= i.hi).unwrap().clone();
        prop_assume!(!root.is_exact());
        let iv = root.interval(4096);
        let out = refine_root(&root.factor, &iv, &Dyadic::pow2(-(bits as i64))).unwrap();
        prop_assert!(out.width() <= Dyadic::pow2(-(bits as i64)));
        prop_assert!(out.contains_rat(&r));
        let lo = root.factor.eval(&out.lo().to_rat());
        let hi = root.factor.eval(&out.hi().to_rat());
        prop_assert!(sign_of_rat(&lo) * sign_of_rat(&hi) <= 0);
    }

    #[test]
    fn interval_sign_never_lies(
        terms in prop::collection::vec(((0u32..4, 0u32..4), -9i64..=9), 1..8),
        x in (-50i64..50, 1i64..9),
        y in (-50i64..50, 1i64..9),
    ) {
        let p = MultiPoly::from_terms(2, terms.iter().map(|((a, b), c)| (vec![*a, *b], rat(*c))));
        let pt = [rat_frac(x.0, x.1), rat_frac(y.0, y.1)];
        let exact = sign_of_rat(&p.eval(&pt));
        let approx: Vec<Coord> = pt
            .iter()
            .map(|r| Coord::Approx(RInterval::from_rat(r, 64)))
            .collect();
        match sign_at(&p, &approx, Precision::with_cap(256)).unwrap() {
            Sign::Unknown => prop_assert_eq!(exact, 0),
            s => prop_assert_eq!(s.to_i8(), Some(exact)),
        }
        let exact_coords: Vec<Coord> = pt.iter().map(|r| Coord::Exact(r.clone())).collect();
        prop_assert_eq!(sign_at(&p, &exact_coords, Precision::default()).unwrap().to_i8(), Some(exact));
    }
}
