//! Acceptance criteria, one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the verdict lines are
//! printed even when every criterion passes. Exits nonzero if any criterion
//! fails, except the ones listed in `KNOWN_CONFLICTS`, which are still
//! reported as FAIL.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use bitangent_cli::commands::RunOptions;
use bitangent_cli::corpus::builtin;
use bitangent_cli::suites::{
    compact_corpus, run_cap, run_conjecture, run_klein, run_main, run_sametype, topology_corpus,
};
use bitangent_core::arrangement::DualGrateArrangement;
use bitangent_core::qtype::{local_index_from, local_index_of, qtype_sign, standard_chart};
use bitangent_core::sampling::random_line;
use bitangent_core::{compute_bitangents, signed_count_of, BitangentSet, ProjLine, Quartic};
use bitangent_numeric::rat::{rat, rat_frac};
use bitangent_numeric::{Dyadic, RInterval, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

/// Criteria whose statement cannot hold as written, with the reason.
const KNOWN_CONFLICTS: [(u32, &str); 1] = [(
    3,
    "the quoted Fermat line coefficients are not bitangents; the real bitangents are \
     V(y1 +- y2 +- y3), and |a| != |b| contradicts the symmetry of the Fermat quartic",
)];

struct Verdict {
    passed: bool,
    detail: String,
}

impl Verdict {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Verdict {
            passed,
            detail: detail.into(),
        }
    }
}

fn binary(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_bitangents"))
        .args(args)
        .output()
        .expect("binary runs");
    let code = out.status.code().unwrap_or(-1);
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, json)
}

fn fermat_set() -> BitangentSet {
    compute_bitangents(&Quartic::fermat(), 0).unwrap()
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let (code, r) = binary(&["bitangents", "trott"]);
    let elapsed = start.elapsed();
    let o = &r["output"];
    let ok = code == 0
        && o["total"] == 28
        && o["real"] == 28
        && o["real_split"] == 28
        && o["bitangents"].as_array().is_some_and(|b| b.len() == 28)
        && elapsed < Duration::from_secs(30);
    Verdict::new(
        ok,
        format!(
            "total {} real {} split {} in {:.1}s",
            o["total"],
            o["real"],
            o["real_split"],
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_2() -> Verdict {
    let (code, r) = binary(&["signed-count", "trott", "--line", "0", "0", "1"]);
    let o = &r["output"];
    let gw = &o["gw_report"];
    Verdict::new(
        code == 0 && o["signed_count"] == 4 && gw["plus"] == 16 && gw["minus"] == 12,
        format!("s = {}, {}", o["signed_count"], gw["class"]),
    )
}

/// `(a, b)` of `V(y1 + a y2 + b y3)` enclosed to width at most `2^-bits`.
fn affine_coefficients(
    bt: &bitangent_core::solver::Bitangent,
    bits: i64,
) -> Option<[RInterval; 2]> {
    let tol = Dyadic::pow2(-bits);
    let mut prec = 64;
    while prec <= 4096 {
        let l = bt.line_interval(prec).ok()?;
        let ab = [l[1].checked_div(&l[0])?, l[2].checked_div(&l[0])?];
        if ab.iter().all(|x| x.width().sub(&tol).signum() <= 0) {
            return Some(ab);
        }
        prec *= 2;
    }
    None
}

fn criterion_3() -> (Verdict, bool) {
    let set = fermat_set();
    let real: Vec<_> = set.real().collect();
    let prec = 256;
    let one = RInterval::from_i64(1, prec);
    let sqrt5 = RInterval::from_i64(5, prec).sqrt().unwrap();
    let fourth_root = |x: RInterval| x.sqrt().unwrap().sqrt().unwrap();
    let alpha = fourth_root(
        (&sqrt5 - &one)
            .checked_div(&RInterval::from_i64(2, prec))
            .unwrap(),
    );
    let beta = fourth_root(
        (&sqrt5 - &one)
            .checked_div(&(&RInterval::from_i64(3, prec) - &sqrt5))
            .unwrap(),
    );
    let enclosures: Vec<[RInterval; 2]> = real
        .iter()
        .filter_map(|bt| affine_coefficients(bt, 40))
        .collect();
    let mut contained = 0;
    for sa in [1, -1] {
        for sb in [1, -1] {
            let a = &alpha * &RInterval::from_i64(sa, prec);
            let b = &beta * &RInterval::from_i64(sb, prec);
            if enclosures
                .iter()
                .any(|e| e[0].overlaps(&a) && e[1].overlaps(&b))
            {
                contained += 1;
            }
        }
    }
    let found: Vec<String> = enclosures
        .iter()
        .map(|e| format!("({:.6}, {:.6})", e[0].mid_f64(), e[1].mid_f64()))
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut counts = Vec::new();
    let mut all_plus = true;
    for _ in 0..5 {
        let m = random_line(&mut rng, 9);
        counts.push(signed_count_of(&set, &m).unwrap());
        all_plus &= real.iter().all(|bt| qtype_sign(bt, &m) == Ok(1));
    }
    let rest =
        real.len() == 4 && enclosures.len() == 4 && all_plus && counts.iter().all(|&s| s == 4);
    let containment = contained == 4;
    (
        Verdict::new(
            rest && containment,
            format!(
                "{} real, all <1>: {all_plus}, s = {counts:?}; quoted values contained: {contained}/4 \
                 (a, b) = {} vs (+-{:.6}, +-{:.6})",
                real.len(),
                found.join(" "),
                alpha.mid_f64(),
                beta.mid_f64()
            ),
        ),
        rest,
    )
}

fn criterion_4() -> Verdict {
    let start = Instant::now();
    let (code, r) = binary(&["all-counts", "trott"]);
    let o = &r["output"];
    let counts: Vec<i64> = o["counts"]
        .as_array()
        .map(|a| a.iter().filter_map(Value::as_i64).collect())
        .unwrap_or_default();
    let confirmed = o["witnesses"]
        .as_array()
        .is_some_and(|w| w.iter().all(|w| w["confirmed"] == true));
    let set = compute_bitangents(&Quartic::trott(), 0).unwrap();
    let pencil: Vec<i64> = ["0.3075", "-1.415", "0", "1.233", "1.296"]
        .iter()
        .map(|c| {
            let c = bitangent_numeric::rat::parse_rat(c).unwrap();
            let l = ProjLine::new([rat_frac(-5, 4), rat(1), c]).unwrap();
            signed_count_of(&set, &l).unwrap()
        })
        .collect();
    let elapsed = start.elapsed();
    Verdict::new(
        code == 0
            && counts == [0, 2, 4, 6, 8]
            && confirmed
            && pencil == [0, 2, 4, 6, 8]
            && elapsed < Duration::from_secs(300),
        format!(
            "counts {counts:?}, witnesses confirmed {confirmed}, pencil lines L0..L8 give {pencil:?}, {:.1}s",
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_5() -> Verdict {
    let out = run_cap(&compact_corpus(20, 5), RunOptions::default());
    Verdict::new(
        out.cases.len() == 20 && out.all_passed(),
        format!(
            "{}/{} with s = 4 and 16<1> + 12<-1>, {} skipped",
            out.passed,
            out.cases.len(),
            out.skipped
        ),
    )
}

/// `alpha^3 c130^2 + (c121^2 - 2 c130 c112) alpha^2
///  + (c112^2 - 2 c103 c121) alpha + c103^2`.
fn closed_form(alpha: &Rat, c: &[Rat; 4]) -> Rat {
    let [c130, c121, c112, c103] = c;
    let two = rat(2);
    alpha * alpha * alpha * c130 * c130
        + (c121 * c121 - &two * c130 * c112) * alpha * alpha
        + (c112 * c112 - &two * c103 * c121) * alpha
        + c103 * c103
}

fn to_rat(x: &RInterval) -> Rat {
    x.mid().to_rat()
}

fn criterion_6() -> Verdict {
    let mut corpus: Vec<Quartic> = ["trott", "fermat"]
        .iter()
        .map(|n| builtin(n).unwrap().quartic)
        .collect();
    corpus.extend(topology_corpus(18, 6).into_iter().map(|r| r.quartic));
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut instances, mut sign_ok, mut exact_ok, mut errors) = (0, 0, 0, Vec::new());
    for f in &corpus {
        let set = compute_bitangents(f, 0).unwrap();
        let m = random_line(&mut rng, 7);
        for bt in set.real() {
            instances += 1;
            let result = local_index_of(bt, &m).and_then(|(class, li)| {
                let data = standard_chart(bt, &m, li.det.prec())?;
                Ok((class, data))
            });
            match result {
                Ok((class, data)) => {
                    if class.signature() == qtype_sign(bt, &m).unwrap() as i64 {
                        sign_ok += 1;
                    }
                    // Exact check at the rational midpoints of the chart data.
                    let alpha = to_rat(&data.alpha);
                    let c = data.c.clone().map(|x| to_rat(&x));
                    let exact = local_index_from(&alpha, &c).unwrap();
                    let sign = if exact.det > rat(0) { 1 } else { -1 };
                    if exact.det == rat(4) * closed_form(&alpha, &c) && sign == class.signature() {
                        exact_ok += 1;
                    }
                }
                Err(e) => errors.push(e.to_string()),
            }
        }
    }
    let mut sample_rng = ChaCha8Rng::seed_from_u64(66);
    let mut r = || rat_frac(sample_rng.gen_range(-50..=50), sample_rng.gen_range(1..=15));
    let samples = 200;
    let random_ok = (0..samples)
        .filter(|_| {
            let alpha = r();
            let c = [r(), r(), r(), r()];
            let expected = rat(4) * closed_form(&alpha, &c);
            match local_index_from(&alpha, &c) {
                Ok(li) => li.det == expected,
                Err(_) => expected == rat(0),
            }
        })
        .count();
    Verdict::new(
        instances >= 200
            && sign_ok == instances
            && exact_ok == instances
            && random_ok == samples
            && errors.is_empty(),
        format!(
            "{instances} real bitangent instances: sign agrees {sign_ok}, exact det = 4 rhs {exact_ok}; \
             random rational data {random_ok}/{samples}; errors {errors:?}"
        ),
    )
}

fn criterion_7() -> Verdict {
    let start = Instant::now();
    let out = run_sametype(100, 7);
    let elapsed = start.elapsed();
    Verdict::new(
        out.cases.len() == 100 && out.all_passed() && elapsed < Duration::from_secs(10),
        format!(
            "{}/100 exact identities in {:.2}s",
            out.passed,
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_8() -> Verdict {
    let out = run_main(
        10,
        RunOptions {
            seed: 8,
            ..RunOptions::default()
        },
    );
    let signature_three = out
        .cases
        .iter()
        .filter(|c| c.detail["rank"] == 27 && c.detail["signature"] == 3)
        .count();
    Verdict::new(
        out.cases.len() == 14 && out.all_passed() && signature_three == 14,
        format!(
            "{}/{} cases give 15<1> + 12<-1> (Fermat x4, branch quartics x10)",
            signature_three,
            out.cases.len()
        ),
    )
}

fn criterion_9() -> Verdict {
    let mut corpus: Vec<_> = ["trott", "fermat", "hyperflex"]
        .iter()
        .map(|n| builtin(n).unwrap())
        .collect();
    corpus.extend(topology_corpus(12, 9));
    let out = run_klein(&corpus, RunOptions::default());
    let trott = &out.cases[0].detail;
    let fermat = &out.cases[1].detail;
    Verdict::new(
        out.all_passed()
            && trott["real_flexes"] == 8
            && fermat["real_flexes"] == 0
            && fermat["real_non_split"] == 4,
        format!(
            "{}/{} quartics; Trott flexes {}, Fermat {} + 2*{}",
            out.passed,
            out.cases.len(),
            trott["real_flexes"],
            fermat["real_flexes"],
            fermat["real_non_split"]
        ),
    )
}

fn criterion_10() -> Verdict {
    let start = Instant::now();
    let out = run_conjecture(&topology_corpus(200, 10), 10);
    let elapsed = start.elapsed();
    Verdict::new(
        out.cases.len() == 200 && out.all_passed() && elapsed < Duration::from_secs(1800),
        format!(
            "{}/200 quartics with counts in {{0,2,4,6,8}} in {:.0}s; count sets {}",
            out.passed,
            elapsed.as_secs_f64(),
            out.summary["count_sets"]
        ),
    )
}

fn criterion_11() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut pairs, mut agree, mut errors) = (0, 0, Vec::new());
    for rec in topology_corpus(25, 11) {
        let set = compute_bitangents(&rec.quartic, 0).unwrap();
        let arr = DualGrateArrangement::with_generic_base(&set, 0).unwrap();
        for _ in 0..4 {
            let l = random_line(&mut rng, 9);
            pairs += 1;
            match (arr.transform_count(&l), signed_count_of(&set, &l)) {
                (Ok(t), Ok(s)) if t == s => agree += 1,
                (t, s) => errors.push(format!("{} {l}: {t:?} vs {s:?}", rec.name)),
            }
        }
    }
    Verdict::new(
        pairs == 100 && agree == 100,
        format!("{agree}/{pairs} pairs agree; mismatches {errors:?}"),
    )
}

fn main() -> ExitCode {
    let criteria: Vec<(u32, &str, Box<dyn Fn() -> (Verdict, bool)>)> = vec![
        (
            1,
            "Trott has 28 real split bitangents",
            Box::new(|| (criterion_1(), false)),
        ),
        (
            2,
            "Trott signed count at V(z)",
            Box::new(|| (criterion_2(), false)),
        ),
        (3, "Fermat real bitangents", Box::new(criterion_3)),
        (
            4,
            "Trott attainable counts and pencil witnesses",
            Box::new(|| (criterion_4(), false)),
        ),
        (
            5,
            "signed count 4 for compact quartics",
            Box::new(|| (criterion_5(), false)),
        ),
        (
            6,
            "local index equals type",
            Box::new(|| (criterion_6(), false)),
        ),
        (
            7,
            "pointed cubic identity",
            Box::new(|| (criterion_7(), false)),
        ),
        (
            8,
            "signature 3 relative to a bitangent",
            Box::new(|| (criterion_8(), false)),
        ),
        (
            9,
            "Klein flex and bitangent count",
            Box::new(|| (criterion_9(), false)),
        ),
        (
            10,
            "randomized count scan (not a proof)",
            Box::new(|| (criterion_10(), false)),
        ),
        (
            11,
            "transform count equals direct count",
            Box::new(|| (criterion_11(), false)),
        ),
    ];
    let mut unexpected = 0;
    for (id, title, run) in criteria {
        let start = Instant::now();
        let (v, rest_passed) = run();
        let secs = start.elapsed().as_secs_f64();
        let status = if v.passed { "PASS" } else { "FAIL" };
        println!(
            "{status} criterion {id:>2}: {title} [{secs:.1}s] {}",
            v.detail
        );
        if !v.passed {
            match KNOWN_CONFLICTS.iter().find(|(k, _)| *k == id) {
                Some((_, why)) if rest_passed => {
                    println!("     criterion {id:>2} known conflict: {why}")
                }
                _ => unexpected += 1,
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria failed");
        ExitCode::FAILURE
    }
}
