use bitangent_core::cubic::PointedCubic;
use bitangent_core::qtype::{local_index_from, local_index_of, qtype_sign};
use bitangent_core::sampling::{random_line, random_quartic, Topology};
use bitangent_core::{
    compute_bitangents, real_flex_count, signed_count_of, CoreError, DualGrateArrangement,
    ProjLine, ProjectiveMap, Quartic, Reality,
};
use bitangent_numeric::rat::rat_frac;
use bitangent_numeric::Rat;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| rat_frac(n, d))
}

/// `alpha^3 c130^2 + (c121^2 - 2 c130 c112) alpha^2
///  + (c112^2 - 2 c103 c121) alpha + c103^2`, expanded independently.
fn closed_form(alpha: &Rat, c: &[Rat; 4]) -> Rat {
    let [c130, c121, c112, c103] = c;
    let two = rat_frac(2, 1);
    let a2 = alpha * alpha;
    &(&(&(&a2 * alpha) * &(c130 * c130)) + &(&(&(c121 * c121) - &(&two * &(c130 * c112))) * &a2))
        + &(&(&(&(c112 * c112) - &(&two * &(c103 * c121))) * alpha) + &(c103 * c103))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn jacobian_determinant_is_four_times_closed_form(
        alpha in small_rat(),
        c in proptest::array::uniform4(small_rat()),
    ) {
        let expected = &closed_form(&alpha, &c) * &rat_frac(4, 1);
        match local_index_from(&alpha, &c) {
            Ok(li) => prop_assert_eq!(li.det, expected),
            Err(CoreError::NonSimpleZero) => prop_assert!(expected.is_zero()),
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn sametype_identity_holds(seed in any::<u64>()) {
        let v = PointedCubic::random(&mut ChaCha8Rng::seed_from_u64(seed), 6);
        let id = v.verify_sametype_identity().unwrap();
        prop_assert!(id.holds, "{:?}: {} vs {}", v, id.lhs, id.rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    /// The signed count is a projective invariant: `f` relative to `V(m)`
    /// and `f(A y)` relative to `V(A^T m)` agree, bitangent by bitangent.
    #[test]
    fn signed_count_is_equivariant(seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = Quartic::trott();
        let a = ProjectiveMap::random(&mut rng, 1);
        let fa = f.substitute_linear(a.matrix());
        let m = random_line(&mut rng, 5);
        let at = a.matrix();
        let ma = ProjLine::new(std::array::from_fn(|j| {
            (0..3).map(|i| &at[i][j] * &m.coords()[i]).sum()
        })).unwrap();
        let set = compute_bitangents(&f, 0).unwrap();
        let set_a = compute_bitangents(&fa, 1).unwrap();
        prop_assert_eq!(signed_count_of(&set, &m).unwrap(), signed_count_of(&set_a, &ma).unwrap());
    }

    /// Types do not depend on the random work coordinates of the solver.
    #[test]
    fn types_do_not_depend_on_solver_seed(seed in 1u64..1000) {
        let f = Quartic::trott();
        let m = random_line(&mut ChaCha8Rng::seed_from_u64(seed), 7);
        let s0 = compute_bitangents(&f, 0).unwrap();
        let s1 = compute_bitangents(&f, seed).unwrap();
        prop_assert!(s1.attempts() >= 1);
        prop_assert_eq!(signed_count_of(&s0, &m).unwrap(), signed_count_of(&s1, &m).unwrap());
    }
}

#[test]
fn counts_are_even_and_bounded_and_klein_holds() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for t in Topology::ALL {
        let f = random_quartic(t, &mut rng);
        let set = compute_bitangents(&f, 0).unwrap();
        assert_eq!(set.real_count(), t.real_bitangents(), "{t:?}");
        let flexes = real_flex_count(&f).unwrap();
        assert_eq!(flexes + 2 * set.count(Reality::RealNonSplit), 8, "{t:?}");
        let arr = DualGrateArrangement::with_generic_base(&set, 0).unwrap();
        for l in (0..10).map(|_| random_line(&mut rng, 6)) {
            let s = signed_count_of(&set, &l).unwrap();
            assert_eq!(s.rem_euclid(2), 0);
            assert!(s.unsigned_abs() as usize <= set.real_count());
            assert_eq!(arr.transform_count(&l).unwrap(), s, "{t:?} {l}");
        }
    }
}

#[test]
fn local_index_sign_is_the_type() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let f = random_quartic(Topology::FourOvals, &mut rng);
    let set = compute_bitangents(&f, 0).unwrap();
    let m = random_line(&mut rng, 4);
    for bt in set.real() {
        let (class, li) = local_index_of(bt, &m).unwrap();
        assert_eq!(class.signature(), qtype_sign(bt, &m).unwrap() as i64);
        assert!(li
            .det
            .overlaps(&(&li.rhs * &bitangent_numeric::RInterval::from_i64(4, li.rhs.prec()))));
    }
}
