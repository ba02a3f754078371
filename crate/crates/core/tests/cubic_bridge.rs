use bitangent_core::cubic::{verify_theorem_main, PointedCubic};
use bitangent_core::qtype::qtype_sign;
use bitangent_core::{compute_bitangents, CoreError, GWClass, ProjLine, Quartic};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn smooth_branch_quartics(seed: u64, n: usize) -> Vec<(PointedCubic, Quartic)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let v = PointedCubic::random(&mut rng, 3);
        if let Ok(f) = v.branch_quartic() {
            if f.is_smooth() && !v.bridge_tangency().unwrap().is_hyperflex() {
                out.push((v, f));
            }
        }
    }
    out
}

#[test]
fn fermat_bitangents_as_line_at_infinity() {
    let set = compute_bitangents(&Quartic::fermat(), 0).unwrap();
    for (s2, s3) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        let l = ProjLine::from_i64s([1, s2, s3]).unwrap();
        let check = verify_theorem_main(&set, &l).unwrap();
        assert_eq!(check.class, GWClass::new(15, 12), "{l}");
        assert!(check.passed);
    }
    let not_bitangent = ProjLine::from_i64s([1, 2, 3]).unwrap();
    assert!(matches!(
        verify_theorem_main(&set, &not_bitangent),
        Err(CoreError::NotABitangent)
    ));
}

#[test]
fn branch_quartics_have_signature_three_and_matching_type() {
    let y1 = ProjLine::from_i64s([1, 0, 0]).unwrap();
    let y3 = ProjLine::from_i64s([0, 0, 1]).unwrap();
    for (v, f) in smooth_branch_quartics(21, 3) {
        let set = compute_bitangents(&f, 0).unwrap();
        let check = verify_theorem_main(&set, &y1).unwrap();
        assert_eq!(check.class, GWClass::new(15, 12), "{v:?}");
        let bt = &set.bitangents()[check.bitangent];
        if bt.is_real() {
            let kw = v.kw_type().class().expect("nonzero determinant");
            assert_eq!(
                GWClass::from_sign(qtype_sign(bt, &y3).unwrap()),
                kw,
                "{v:?}"
            );
        }
    }
}
