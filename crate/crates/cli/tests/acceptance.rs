//! One PASS/FAIL line per acceptance criterion. The process fails when a
//! criterion fails for a reason not listed in `KNOWN_DEVIATIONS`.

use std::process::Command;
use std::time::{Duration, Instant};

use schwarzian_core::coeff::{gaussian, rational, with_precision, BigComplex, ExactRational, GaussianRational, Scalar};
use schwarzian_core::jets::{parse_expr, Mobius};
use schwarzian_core::metrics::{invariant_schwarzian, MetricModel, PeschlMindaContext};
use schwarzian_core::polyring::{recursion_remainder, Family, Monomial, PolyCache, WeightedPoly};
use schwarzian_core::schwarzian::{
    tamanoi_s_via_frame, tamanoi_s_via_poly, verify_aharonov_recursion, verify_frame_flow, verify_moebius_invariance,
    verify_s_recursion, BasePointContext, RandomCorpus, ResidualReport, DEFAULT_SEED,
};

/// Criteria whose failure is explained in the project notes: the printed
/// `P_6` carries `-315/4 x1^6`, while the generated row, the frame expansion
/// of `exp` and the S-recursion all give `+315/4`.
const KNOWN_DEVIATIONS: [u8; 1] = [1];

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, detail: detail.into() }
    }
}

type Term<'a> = (i64, i64, &'a [(u32, u32)]);

fn poly(family: Family, terms: &[Term<'_>]) -> WeightedPoly {
    WeightedPoly::from_terms(
        family,
        terms.iter().map(|(n, d, e)| (Monomial::from_exponents(e.iter().copied()), rational(*n, *d))),
    )
}

fn within(elapsed: Duration, limit: f64) -> bool {
    elapsed.as_secs_f64() < limit
}

fn exact_zero(reports: &[ResidualReport]) -> bool {
    reports.iter().all(|r| r.passes(0.0))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let cache = PolyCache::new();
    let generated: Vec<_> = (3..=7).map(|n| cache.tamanoi(n)).collect();
    let elapsed = start.elapsed();
    let printed = [
        poly(Family::Q, &[(1, 1, &[(3, 1)]), (-4, 1, &[(1, 1), (2, 1)]), (3, 1, &[(1, 3)])]),
        poly(Family::Q, &[(1, 1, &[(4, 1)]), (-5, 1, &[(1, 1), (3, 1)]), (5, 1, &[(1, 2), (2, 1)])]),
        poly(
            Family::Q,
            &[
                (1, 1, &[(5, 1)]),
                (-6, 1, &[(1, 1), (4, 1)]),
                (15, 2, &[(1, 2), (3, 1)]),
                (-10, 1, &[(1, 1), (2, 2)]),
                (30, 1, &[(1, 3), (2, 1)]),
                (-45, 2, &[(1, 5)]),
            ],
        ),
        poly(
            Family::Q,
            &[
                (1, 1, &[(6, 1)]),
                (-7, 1, &[(1, 1), (5, 1)]),
                (21, 2, &[(1, 2), (4, 1)]),
                (-35, 1, &[(1, 1), (2, 1), (3, 1)]),
                (105, 2, &[(1, 3), (3, 1)]),
                (105, 1, &[(1, 2), (2, 2)]),
                (-210, 1, &[(1, 4), (2, 1)]),
                (-315, 4, &[(1, 6)]),
            ],
        ),
        poly(
            Family::Q,
            &[
                (1, 1, &[(7, 1)]),
                (-8, 1, &[(1, 1), (6, 1)]),
                (14, 1, &[(1, 2), (5, 1)]),
                (-56, 1, &[(1, 1), (2, 1), (4, 1)]),
                (84, 1, &[(1, 3), (4, 1)]),
                (-35, 1, &[(1, 1), (3, 2)]),
                (420, 1, &[(1, 2), (2, 1), (3, 1)]),
                (-420, 1, &[(1, 4), (3, 1)]),
                (-420, 1, &[(1, 3), (2, 2)]),
                (420, 1, &[(1, 5), (2, 1)]),
            ],
        ),
    ];
    let mut mismatches = Vec::new();
    for (k, (g, p)) in generated.iter().zip(&printed).enumerate() {
        let diff = &**g - p;
        if !diff.is_zero() {
            mismatches.push(format!("P{}: generated - printed = {}", k + 3, diff.to_text()));
        }
    }
    let fast = within(elapsed, 1.0);
    let detail = if mismatches.is_empty() {
        format!("P3..P7 match term for term ({elapsed:.2?})")
    } else {
        format!("{} ({elapsed:.2?})", mismatches.join("; "))
    };
    Outcome::new(mismatches.is_empty() && fast, detail)
}

fn criterion_2() -> Outcome {
    let psi = Family::Psi;
    let expected = [
        poly(psi, &[(1, 1, &[(2, 1)])]),
        poly(psi, &[(1, 1, &[(3, 1)])]),
        poly(psi, &[(1, 1, &[(4, 1)]), (1, 1, &[(2, 2)])]),
        poly(psi, &[(1, 1, &[(5, 1)]), (2, 1, &[(2, 1), (3, 1)])]),
        poly(psi, &[(1, 1, &[(6, 1)]), (1, 1, &[(2, 3)]), (1, 1, &[(3, 2)]), (2, 1, &[(2, 1), (4, 1)])]),
    ];
    let bad: Vec<usize> = (2..=6).filter(|&n| *PolyCache::global().sigma(n) != expected[n - 2]).collect();
    Outcome::new(bad.is_empty(), if bad.is_empty() { "sigma2..sigma6 exact".into() } else { format!("mismatch at {bad:?}") })
}

fn criterion_3() -> Outcome {
    let s = Family::S;
    let rows = [
        (4, poly(s, &[(4, 1, &[(2, 2)])])),
        (5, poly(s, &[(5, 1, &[(2, 1), (3, 1)])])),
        (6, poly(s, &[(6, 1, &[(2, 1), (4, 1)]), (10, 1, &[(2, 3)])])),
    ];
    let rows_ok = recursion_remainder(3).is_zero() && rows.iter().all(|(n, p)| recursion_remainder(*n) == *p);
    let zero = ExactRational::from_integer(0.into());
    let nonnegative = (3..=12).all(|n| recursion_remainder(n).terms().all(|(_, c)| c.is_integer() && *c >= zero))
        && (2..=12).all(|n| PolyCache::global().sigma(n).terms().all(|(_, c)| c.is_integer() && *c >= zero));
    Outcome::new(rows_ok && nonnegative, format!("rows S3..S6: {rows_ok}; nonnegative integer coefficients to n=12: {nonnegative}"))
}

fn criterion_4() -> Outcome {
    let cache = PolyCache::global();
    let graded = (0..=14).all(|n| {
        let p = cache.tamanoi(n);
        p.is_homogeneous(n as u64)
            && p.variables().iter().all(|&k| k as usize <= n)
            && p.euler_operator() == p.scale(&rational(n as i64, 1))
            && p.terms().all(|(_, c)| schwarzian_core::coeff::is_dyadic(c))
    });
    let start = Instant::now();
    let p20 = PolyCache::new().tamanoi(20);
    let elapsed = start.elapsed();
    Outcome::new(
        graded && within(elapsed, 10.0),
        format!("grading/bound/Euler/dyadic n<=14: {graded}; P20 ({} terms) in {elapsed:.2?}", p20.len()),
    )
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut worst = None;
    for (i, case) in RandomCorpus::new(DEFAULT_SEED).cases(200).into_iter().enumerate() {
        let ctx = BasePointContext::for_order(case.f, case.z0, 10).unwrap();
        let (a, b) = (tamanoi_s_via_frame(&ctx, 10).unwrap(), tamanoi_s_via_poly(&ctx, 10).unwrap());
        if a.values() != b.values() && worst.is_none() {
            worst = Some(i);
        }
    }
    let elapsed = start.elapsed();
    Outcome::new(
        worst.is_none() && within(elapsed, 30.0),
        format!("200 cases, n<=10, first mismatch {worst:?}, {elapsed:.2?}"),
    )
}

fn criterion_6() -> Outcome {
    let (one, zero) = (rational(1, 1), rational(0, 1));
    let mut ok = true;
    for (text, a) in [
        ("exp(z)", gaussian(one.clone(), zero.clone())),
        ("exp(2*z)", gaussian(rational(2, 1), zero.clone())),
        ("exp((1+i)*z)", gaussian(one.clone(), one.clone())),
    ] {
        let ctx = BasePointContext::for_order(parse_expr(text).unwrap(), GaussianRational::from_i64(0), 4).unwrap();
        let s = tamanoi_s_via_frame(&ctx, 4).unwrap();
        let a2 = a.clone() * &a;
        ok &= s[2] == -(a2.clone() * &GaussianRational::from_rational(&rational(1, 2)))
            && s[3] == GaussianRational::from_i64(0)
            && s[4] == a2.clone() * &a2;
    }
    Outcome::new(ok, "a in {1, 2, 1+i}: S2 = -a^2/2, S3 = 0, S4 = a^4 exactly at z0 = 0")
}

fn criterion_7() -> Outcome {
    let mut exact = true;
    for case in RandomCorpus::new(DEFAULT_SEED).cases(40) {
        let ctx = BasePointContext::for_order(case.f, case.z0, 8).unwrap();
        exact &= exact_zero(&[
            verify_s_recursion(&ctx, 8).unwrap(),
            verify_aharonov_recursion(&ctx, 8).unwrap(),
            verify_frame_flow(&ctx, 8).unwrap(),
        ]);
    }
    let worst = with_precision(128, || {
        let mut worst: f64 = 0.0;
        for (text, re, im) in [("exp(z)", (1, 3), (-1, 5)), ("exp(2*z) + z", (1, 4), (0, 1)), ("z*exp(z)", (1, 2), (0, 1))] {
            let z0 = BigComplex::from_gaussian(&gaussian(rational(re.0, re.1), rational(im.0, im.1)));
            let ctx = BasePointContext::for_order(parse_expr(text).unwrap(), z0, 8).unwrap();
            for r in [
                verify_s_recursion(&ctx, 8).unwrap(),
                verify_aharonov_recursion(&ctx, 8).unwrap(),
                verify_frame_flow(&ctx, 8).unwrap(),
            ] {
                worst = worst.max(r.max_residual());
            }
        }
        worst
    });
    Outcome::new(exact && worst <= 1e-15, format!("rational corpus exact: {exact}; exp family max residual {worst:e}"))
}

fn criterion_8() -> Outcome {
    let mut corpus = RandomCorpus::new(DEFAULT_SEED);
    let mut draws = RandomCorpus::new(DEFAULT_SEED + 1);
    let mut checked = 0;
    let mut ok = true;
    while checked < 50 {
        let case = corpus.next_case();
        let m: Mobius = draws.mobius();
        let ctx = BasePointContext::for_order(case.f, case.z0, 8).unwrap();
        if m.has_pole_at(ctx.jet().value()) {
            continue;
        }
        ok &= verify_moebius_invariance(&ctx, &m, 8).unwrap().passes(0.0);
        checked += 1;
    }
    Outcome::new(ok, format!("{checked} postcompositions, psi_n and S_n (2<=n<=8) unchanged exactly"))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let output = Command::new(env!("CARGO_BIN_EXE_schwarzian"))
        .args(["verify", "--suite", "metrics", "--max", "6", "--tolerance", "1e-12", "--precision", "128", "--format", "json"])
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    let report: serde_json::Value = serde_json::from_slice(&output.stdout).expect("json report");
    let failing: Vec<String> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] != "pass")
        .map(|c| c["name"].as_str().unwrap_or_default().to_string())
        .collect();
    let e = MetricModel::euclidean();
    let mut reduction = true;
    for case in RandomCorpus::new(DEFAULT_SEED).cases(30) {
        let ctx = PeschlMindaContext::for_order(case.f.clone(), case.z0.clone(), e.clone(), e.clone(), 8).unwrap();
        let sigma = invariant_schwarzian(&ctx, 8).unwrap();
        let s = tamanoi_s_via_poly(&BasePointContext::for_order(case.f, case.z0, 8).unwrap(), 8).unwrap();
        reduction &= sigma.values() == s.values();
    }
    Outcome::new(
        failing.is_empty() && reduction && output.status.success() && within(elapsed, 60.0),
        format!("euclidean reduction n<=8 exact: {reduction}; metric suite failing checks {failing:?}; {elapsed:.2?}"),
    )
}

fn criterion_10() -> Outcome {
    let mut ok = true;
    for m in [MetricModel::euclidean(), MetricModel::spherical(), MetricModel::hyperbolic()] {
        for z0 in [gaussian(rational(0, 1), rational(0, 1)), gaussian(rational(1, 3), rational(1, 4))] {
            let ctx = PeschlMindaContext::for_order(parse_expr("z").unwrap(), z0, m.clone(), m.clone(), 8).unwrap();
            let sigma = invariant_schwarzian(&ctx, 8).unwrap();
            ok &= (2..=8).all(|n| sigma[n] == GaussianRational::from_i64(0));
        }
    }
    Outcome::new(ok, "Sigma^n(id) = 0 exactly for n = 2..8, all standard metrics")
}

fn main() {
    let criteria: [(u8, &str, fn() -> Outcome); 10] = [
        (1, "printed Tamanoi polynomials", criterion_1),
        (2, "sigma table", criterion_2),
        (3, "S-recursion table and positivity", criterion_3),
        (4, "weight grading and P20 timing", criterion_4),
        (5, "two-path oracle", criterion_5),
        (6, "exponential witness", criterion_6),
        (7, "recursion and frame-flow residuals", criterion_7),
        (8, "Mobius invariance", criterion_8),
        (9, "metric suite", criterion_9),
        (10, "identity-map nullity", criterion_10),
    ];
    let mut unexpected = 0;
    for (id, title, check) in criteria {
        let outcome = check();
        let status = if outcome.pass { "PASS" } else { "FAIL" };
        let note = if !outcome.pass && KNOWN_DEVIATIONS.contains(&id) { " [known deviation]" } else { "" };
        println!("{status} criterion {id:>2}: {title}: {}{note}", outcome.detail);
        if !outcome.pass && note.is_empty() {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} acceptance criteria failed");
        std::process::exit(1);
    }
}
