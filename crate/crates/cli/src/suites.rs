//! Verification suites. Each suite yields named checks; a check aggregates the
//! residual reports of every case it covers and keeps the first failure as its
//! witness.

use schwarzian_core::coeff::{gaussian, is_dyadic, rational, with_precision, BigComplex, GaussianRational, Scalar};
use schwarzian_core::jets::{parse_expr, HolExpr, Mobius};
use schwarzian_core::metrics::{self, MetricModel, PeschlMindaContext};
use schwarzian_core::polyring::{recursion_remainder, Family, PolyCache, WeightedPoly};
use schwarzian_core::schwarzian::{self, BasePointContext, RandomCorpus, ResidualReport};
use schwarzian_core::Error;
use serde_json::{json, Value};

use crate::{Backend, CliError, Format};

const DEFAULT_ORDER: usize = 10;
const DEFAULT_METRIC_ORDER: usize = 6;
const DEFAULT_TOLERANCE: f64 = 1e-15;
const DEFAULT_METRIC_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Symbolic,
    Analytic,
    Metric,
}

const SUITES: [(&str, Kind); 14] = [
    ("weight-grading", Kind::Symbolic),
    ("sigma-psi", Kind::Symbolic),
    ("s-decomposition", Kind::Symbolic),
    ("sigma-positivity", Kind::Symbolic),
    ("tamanoi-recursion", Kind::Analytic),
    ("two-path", Kind::Analytic),
    ("frame-flow", Kind::Analytic),
    ("aharonov-recursion", Kind::Analytic),
    ("mobius-invariance", Kind::Analytic),
    ("q-derivative", Kind::Analytic),
    ("isometry-invariance", Kind::Metric),
    ("invariant-recursion", Kind::Metric),
    ("euclidean-reduction", Kind::Metric),
    ("identity-nullity", Kind::Metric),
];

pub fn suite_names() -> impl Iterator<Item = &'static str> {
    SUITES.iter().map(|(name, _)| *name).chain(["symbolic", "analytic", "metrics", "all"])
}

#[derive(Clone, Debug)]
pub struct Config {
    pub max: Option<usize>,
    pub tolerance: Option<f64>,
    pub precision: usize,
    pub seed: u64,
    pub trials: usize,
    pub backend: Backend,
}

impl Config {
    fn order(&self, kind: Kind) -> usize {
        self.max.unwrap_or(if kind == Kind::Metric { DEFAULT_METRIC_ORDER } else { DEFAULT_ORDER })
    }

    fn tolerance(&self, kind: Kind) -> f64 {
        self.tolerance.unwrap_or(if kind == Kind::Metric { DEFAULT_METRIC_TOLERANCE } else { DEFAULT_TOLERANCE })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub max_residual: f64,
    pub witness: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "status": if c.pass { "pass" } else { "fail" },
                    "max_residual": c.max_residual,
                    "witness": c.witness,
                })
            })
            .collect();
        json!({"suite": self.suite, "seed": self.seed, "checks": checks, "pass": self.pass})
    }

    pub fn render(&self, format: Format) -> String {
        if format == Format::Json {
            return serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
        }
        let mut lines: Vec<String> = self
            .checks
            .iter()
            .map(|c| {
                let status = if c.pass { "PASS" } else { "FAIL" };
                let mut line = format!("{status} {} (max residual {:e})", c.name, c.max_residual);
                if !c.witness.is_null() {
                    line.push_str(&format!(" witness: {}", c.witness));
                }
                line
            })
            .collect();
        lines.push(format!("suite {} (seed {}): {}", self.suite, self.seed, if self.pass { "PASS" } else { "FAIL" }));
        lines.join("\n")
    }
}

pub fn run(suite: &str, config: &Config) -> Result<SuiteReport, CliError> {
    let selected: Vec<(&str, Kind)> = match suite {
        "all" => SUITES.to_vec(),
        "symbolic" => SUITES.iter().copied().filter(|(_, k)| *k == Kind::Symbolic).collect(),
        "analytic" => SUITES.iter().copied().filter(|(_, k)| *k == Kind::Analytic).collect(),
        "metrics" => SUITES.iter().copied().filter(|(_, k)| *k == Kind::Metric).collect(),
        name => SUITES.iter().copied().filter(|(n, _)| *n == name).collect(),
    };
    if selected.is_empty() {
        let known: Vec<_> = suite_names().collect();
        return Err(CliError::Usage(format!("unknown suite `{suite}`; expected one of {}", known.join(", "))));
    }
    let aggregate = selected.len() > 1;
    let checks = with_precision(config.precision, || {
        let mut checks = Vec::new();
        for (name, kind) in &selected {
            for mut c in run_one(name, *kind, config) {
                if aggregate {
                    c.name = format!("{name}/{}", c.name);
                }
                checks.push(c);
            }
        }
        checks
    });
    let pass = checks.iter().all(|c| c.pass);
    Ok(SuiteReport { suite: suite.to_string(), seed: config.seed, checks, pass })
}

/// Accumulates the residuals of one check over many cases.
struct Tally {
    name: String,
    tolerance: f64,
    max: f64,
    pass: bool,
    witness: Value,
}

impl Tally {
    fn new(name: impl Into<String>, tolerance: f64) -> Self {
        Self { name: name.into(), tolerance, max: 0.0, pass: true, witness: Value::Null }
    }

    fn fail(&mut self, witness: Value) {
        if self.pass {
            self.witness = witness;
        }
        self.pass = false;
    }

    fn absorb(&mut self, case: &str, report: Result<ResidualReport, Error>) {
        match report {
            Ok(r) => {
                self.max = self.max.max(r.max_residual());
                if let Some(w) = r.witness(self.tolerance) {
                    self.fail(json!({"case": case, "label": w.label, "residual": w.value}));
                }
            }
            Err(e) => self.fail(json!({"case": case, "error": e.to_string()})),
        }
    }

    /// A symbolic condition; `defect` counts offending terms.
    fn flag(&mut self, defect: usize, witness: impl FnOnce() -> Value) {
        self.max = self.max.max(defect as f64);
        if defect > 0 {
            self.fail(witness());
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult { name: self.name, pass: self.pass, max_residual: self.max, witness: self.witness }
    }
}

fn run_one(name: &str, kind: Kind, config: &Config) -> Vec<CheckResult> {
    let n = config.order(kind);
    match name {
        "weight-grading" => weight_grading(n),
        "sigma-psi" => sigma_psi(n, config),
        "s-decomposition" => s_decomposition(n),
        "sigma-positivity" => sigma_positivity(n),
        "tamanoi-recursion" => analytic(Probe::SRecursion, config),
        "two-path" => analytic(Probe::TwoPath, config),
        "frame-flow" => analytic(Probe::FrameFlow, config),
        "aharonov-recursion" => analytic(Probe::Aharonov, config),
        "mobius-invariance" => analytic(Probe::Mobius, config),
        "q-derivative" => analytic(Probe::QDerivative, config),
        "isometry-invariance" => isometry_invariance(config),
        "invariant-recursion" => invariant_recursion(config),
        "euclidean-reduction" => euclidean_reduction(config),
        "identity-nullity" => identity_nullity(config),
        _ => unreachable!("suite names are validated"),
    }
}

fn is_nonnegative_integer(p: &WeightedPoly) -> usize {
    p.terms().filter(|(_, c)| !c.is_integer() || c < &&rational(0, 1)).count()
}

fn weight_grading(n: usize) -> Vec<CheckResult> {
    let cache = PolyCache::global();
    let mut homogeneous = Tally::new("homogeneity", 0.0);
    let mut bound = Tally::new("variable-bound", 0.0);
    let mut euler = Tally::new("euler-identity", 0.0);
    let mut dyadic = Tally::new("dyadic-coefficients", 0.0);
    for m in 0..=n {
        let p = cache.tamanoi(m);
        let text = || json!({"n": m, "P": p.to_text()});
        homogeneous.flag(usize::from(!p.is_homogeneous(m as u64)), text);
        bound.flag(p.variables().iter().filter(|&&k| k as usize > m).count(), text);
        let defect = &p.euler_operator() - &p.scale(&rational(m as i64, 1));
        euler.flag(defect.len(), || json!({"n": m, "defect": defect.to_text()}));
        dyadic.flag(p.terms().filter(|(_, c)| !is_dyadic(c)).count(), text);
    }
    [homogeneous, bound, euler, dyadic].into_iter().map(Tally::finish).collect()
}

fn factorial(n: usize) -> i64 {
    (2..=n as i64).product()
}

fn sigma_psi(n: usize, config: &Config) -> Vec<CheckResult> {
    let cache = PolyCache::global();
    let mut symbolic = Tally::new("sigma(Psi(q)) = P/(n+1)!", 0.0);
    for m in 0..=n {
        let composed = cache
            .sigma(m)
            .substitute(Family::Q, |k| Some((*cache.aharonov(k as usize)).clone()))
            .expect("Aharonov polynomials are in the q-family");
        let expected = cache.tamanoi(m).scale(&rational(1, factorial(m + 1)));
        let defect = &composed - &expected;
        symbolic.flag(defect.len(), || json!({"n": m, "defect": defect.to_text()}));
    }
    let mut checks = vec![symbolic.finish()];
    checks.extend(analytic(Probe::SigmaPsi, &Config { max: Some(n), ..config.clone() }));
    checks
}

fn s_decomposition(n: usize) -> Vec<CheckResult> {
    let mut coefficients = Tally::new("nonnegative-integer-coefficients", 0.0);
    let mut range = Tally::new("variables-in-2..n-2", 0.0);
    let mut rows = Tally::new("known-rows", 0.0);
    let known = [(3, ""), (4, "4*S2^2"), (5, "5*S2*S3"), (6, "6*S2*S4 + 10*S2^3")];
    for m in 3..=n {
        let r = recursion_remainder(m);
        let text = || json!({"n": m, "remainder": r.to_text()});
        coefficients.flag(is_nonnegative_integer(&r), text);
        range.flag(r.variables().iter().filter(|&&k| k < 2 || k as usize > m - 2).count(), text);
        if let Some((_, row)) = known.iter().find(|(k, _)| *k == m) {
            let rendered = if r.is_zero() { String::new() } else { r.to_text() };
            rows.flag(usize::from(rendered != *row), || json!({"n": m, "expected": row, "found": rendered}));
        }
    }
    [coefficients, range, rows].into_iter().map(Tally::finish).collect()
}

fn sigma_positivity(n: usize) -> Vec<CheckResult> {
    let cache = PolyCache::global();
    let mut coefficients = Tally::new("nonnegative-integer-coefficients", 0.0);
    let mut rows = Tally::new("known-rows", 0.0);
    let known = [(2, "psi2"), (3, "psi3"), (4, "psi4 + psi2^2"), (5, "psi5 + 2*psi2*psi3")];
    for m in 0..=n {
        let s = cache.sigma(m);
        coefficients.flag(is_nonnegative_integer(&s), || json!({"n": m, "sigma": s.to_text()}));
        if let Some((_, row)) = known.iter().find(|(k, _)| *k == m) {
            let found = s.to_text();
            rows.flag(usize::from(found != *row), || json!({"n": m, "expected": row, "found": found}));
        }
    }
    [coefficients, rows].into_iter().map(Tally::finish).collect()
}

/// A test function with the backend it can be evaluated on.
#[derive(Clone, Debug)]
struct Case {
    f: HolExpr,
    z0: GaussianRational,
    rational: bool,
}

impl Case {
    fn parse(f: &str, z0: GaussianRational) -> Self {
        let f = parse_expr(f).expect("fixed cases parse");
        let rational = !f.is_transcendental();
        Self { f, z0, rational }
    }

    fn describe(&self) -> String {
        format!("f = {} at z0 = {}", self.f, self.z0.render())
    }

    /// Runs `probe` on the backend chosen by `backend`, or skips the case.
    fn run<P: ProbeFn>(&self, backend: Backend, probe: &P) -> Option<Result<ResidualReport, Error>> {
        let exact = match backend {
            Backend::Exact if !self.rational => return None,
            Backend::Exact => true,
            Backend::Float => false,
            Backend::Auto => self.rational,
        };
        Some(if exact {
            probe.run(&self.f, self.z0.clone())
        } else {
            probe.run(&self.f, BigComplex::from_gaussian(&self.z0))
        })
    }
}

fn g(re: (i64, i64), im: (i64, i64)) -> GaussianRational {
    gaussian(rational(re.0, re.1), rational(im.0, im.1))
}

fn real(n: i64, d: i64) -> GaussianRational {
    g((n, d), (0, 1))
}

fn transcendental_cases() -> Vec<Case> {
    vec![
        Case::parse("exp(z)", g((1, 3), (-1, 5))),
        Case::parse("exp(2*z) + z", real(1, 4)),
        Case::parse("z*exp(z)", real(1, 2)),
        Case::parse("log(1 + z)", g((1, 5), (1, 7))),
    ]
}

/// Something evaluated on either backend.
trait ProbeFn {
    fn run<S: Scalar>(&self, f: &HolExpr, z0: S) -> Result<ResidualReport, Error>;
}

#[derive(Clone, Copy, Debug)]
enum Probe {
    SRecursion,
    TwoPath,
    SigmaPsi,
    FrameFlow,
    Aharonov,
    QDerivative,
    Mobius,
}

impl Probe {
    fn label(self) -> &'static str {
        match self {
            Probe::SRecursion => "S-recursion",
            Probe::TwoPath => "frame = P_n(q)",
            Probe::SigmaPsi => "S_n/(n+1)! = sigma_n(psi)",
            Probe::FrameFlow => "frame flow",
            Probe::Aharonov => "Aharonov recursion",
            Probe::QDerivative => "q-derivative",
            Probe::Mobius => "Mobius postcomposition",
        }
    }
}

struct Analytic {
    probe: Probe,
    n: usize,
    mobius: Mobius,
}

impl ProbeFn for Analytic {
    fn run<S: Scalar>(&self, f: &HolExpr, z0: S) -> Result<ResidualReport, Error> {
        let n = self.n;
        let ctx = BasePointContext::for_order(f.clone(), z0, n.max(2))?;
        match self.probe {
            Probe::SRecursion => schwarzian::verify_s_recursion(&ctx, n),
            Probe::TwoPath => {
                let (frame, poly) = (schwarzian::tamanoi_s_via_frame(&ctx, n)?, schwarzian::tamanoi_s_via_poly(&ctx, n)?);
                let mut report = ResidualReport::new::<S>("S_n via frame = P_n(q)");
                for (k, v) in frame.iter() {
                    report.push(format!("n={k}"), &(v.clone() - &poly[k]));
                }
                Ok(report)
            }
            Probe::SigmaPsi => {
                let (direct, via_psi) = (schwarzian::sigma_values(&ctx, n)?, schwarzian::sigma_via_psi(&ctx, n)?);
                let mut report = ResidualReport::new::<S>("S_n/(n+1)! = sigma_n(psi)");
                for (k, v) in direct.iter() {
                    report.push(format!("n={k}"), &(v.clone() - &via_psi[k]));
                }
                Ok(report)
            }
            Probe::FrameFlow => schwarzian::verify_frame_flow(&ctx, n),
            Probe::Aharonov => schwarzian::verify_aharonov_recursion(&ctx, n),
            Probe::QDerivative => schwarzian::verify_q_derivative(&ctx, n),
            Probe::Mobius => schwarzian::verify_moebius_invariance(&ctx, &self.mobius, n),
        }
    }
}

/// A Möbius map without a pole at `f(z0)`.
fn safe_mobius(draws: &mut RandomCorpus, case: &Case) -> Mobius {
    loop {
        let m = draws.mobius();
        let clear = if case.rational {
            case.f.eval_at(&case.z0, None).map(|w| !m.has_pole_at(&w))
        } else {
            case.f.eval_at(&BigComplex::from_gaussian(&case.z0), None).map(|w| m.apply(&w).is_ok())
        };
        if clear.unwrap_or(true) {
            return m;
        }
    }
}

fn analytic(probe: Probe, config: &Config) -> Vec<CheckResult> {
    let n = config.order(Kind::Analytic);
    let tolerance = config.tolerance(Kind::Analytic);
    let corpus = RandomCorpus::new(config.seed).cases(config.trials);
    let mut draws = RandomCorpus::new(config.seed.wrapping_add(1));
    let mut rational = Tally::new(format!("{} (rational corpus)", probe.label()), tolerance);
    let mut transcendental = Tally::new(format!("{} (transcendental)", probe.label()), tolerance);
    let rational_cases = corpus.into_iter().map(|c| Case { f: c.f, z0: c.z0, rational: true });
    let mut ran_transcendental = false;
    for case in rational_cases.chain(transcendental_cases()) {
        let mobius = safe_mobius(&mut draws, &case);
        let job = Analytic { probe, n, mobius };
        let tally = if case.rational { &mut rational } else { &mut transcendental };
        if let Some(result) = case.run(config.backend, &job) {
            ran_transcendental |= !case.rational;
            tally.absorb(&case.describe(), result);
        }
    }
    let mut out = vec![rational.finish()];
    if ran_transcendental {
        out.push(transcendental.finish());
    }
    out
}

fn models() -> [MetricModel; 3] {
    [MetricModel::euclidean(), MetricModel::spherical(), MetricModel::hyperbolic()]
}

enum MetricProbe {
    QDerivative,
    InvariantRecursion,
    IsometryInvariance { g: Mobius, h: Mobius },
    EuclideanReduction,
    Nullity,
}

struct MetricJob {
    probe: MetricProbe,
    rho: MetricModel,
    sigma: MetricModel,
    n: usize,
}

impl ProbeFn for MetricJob {
    fn run<S: Scalar>(&self, f: &HolExpr, z0: S) -> Result<ResidualReport, Error> {
        let n = self.n;
        let ctx = PeschlMindaContext::for_order(f.clone(), z0.clone(), self.rho.clone(), self.sigma.clone(), n)?;
        match &self.probe {
            MetricProbe::QDerivative => metrics::verify_metric_q_derivative(&ctx, n),
            MetricProbe::InvariantRecursion => metrics::verify_invariant_recursion(&ctx, n),
            MetricProbe::IsometryInvariance { g, h } => metrics::verify_isometry_invariance(&ctx, g, h, n),
            MetricProbe::EuclideanReduction => {
                let sigma = metrics::invariant_schwarzian(&ctx, n)?;
                let s = schwarzian::tamanoi_s_via_poly(&BasePointContext::for_order(f.clone(), z0, n)?, n)?;
                let mut report = ResidualReport::new::<S>("Sigma^n (euclidean) = S_n");
                for k in 0..=n {
                    report.push(format!("n={k}"), &(sigma[k].clone() - &s[k]));
                }
                Ok(report)
            }
            MetricProbe::Nullity => {
                let sigma = metrics::invariant_schwarzian(&ctx, n)?;
                let mut report = ResidualReport::new::<S>("Sigma^n(id) = 0");
                for k in 2..=n {
                    report.push(format!("n={k}"), &sigma[k]);
                }
                Ok(report)
            }
        }
    }
}

fn run_metric(tally: &mut Tally, cases: &[Case], job: &MetricJob, backend: Backend) {
    for case in cases {
        if let Some(result) = case.run(backend, job) {
            tally.absorb(&case.describe(), result);
        }
    }
}

fn euclidean_reduction(config: &Config) -> Vec<CheckResult> {
    let n = config.order(Kind::Metric);
    let tolerance = config.tolerance(Kind::Metric);
    let e = MetricModel::euclidean();
    let job = MetricJob { probe: MetricProbe::EuclideanReduction, rho: e.clone(), sigma: e, n };
    let corpus: Vec<Case> = RandomCorpus::new(config.seed)
        .cases(config.trials)
        .into_iter()
        .map(|c| Case { f: c.f, z0: c.z0, rational: true })
        .collect();
    let mut rational = Tally::new("Sigma^n = S_n (rational corpus)", tolerance);
    run_metric(&mut rational, &corpus, &job, config.backend);
    let mut out = vec![rational.finish()];
    if config.backend != Backend::Exact {
        let mut t = Tally::new("Sigma^n = S_n (transcendental)", tolerance);
        run_metric(&mut t, &[Case::parse("exp(z/2)", real(-3, 10)), Case::parse("z*exp(z)", real(1, 2))], &job, config.backend);
        out.push(t.finish());
    }
    out
}

fn identity_nullity(config: &Config) -> Vec<CheckResult> {
    let n = config.order(Kind::Metric);
    let tolerance = config.tolerance(Kind::Metric);
    let points = [real(0, 1), g((1, 3), (1, 4)), g((-1, 5), (1, 2))];
    let cases: Vec<Case> = points.iter().map(|z0| Case::parse("z", z0.clone())).collect();
    models()
        .into_iter()
        .map(|m| {
            let mut tally = Tally::new(format!("identity map, {m}"), tolerance);
            let job = MetricJob { probe: MetricProbe::Nullity, rho: m.clone(), sigma: m, n };
            run_metric(&mut tally, &cases, &job, config.backend);
            tally.finish()
        })
        .collect()
}

fn invariant_recursion(config: &Config) -> Vec<CheckResult> {
    let n = config.order(Kind::Metric);
    let tolerance = config.tolerance(Kind::Metric);
    let cases = [
        Case::parse("z/3 + z^2/5", g((-1, 4), (1, 3))),
        Case::parse("z^2 + z/2", g((1, 10), (1, 5))),
        Case::parse("mobius(1, 0, 1, 3; z)", real(1, 5)),
        Case::parse("exp(z/2)", real(-3, 10)),
        Case::parse("log(1 + z)/2", g((1, 5), (1, 10))),
    ];
    let mut out = Vec::new();
    for rho in models() {
        for sigma in models() {
            for (probe, name) in [(MetricProbe::QDerivative, "Q-derivative"), (MetricProbe::InvariantRecursion, "Sigma-recursion")] {
                let mut tally = Tally::new(format!("{name}, {rho} -> {sigma}"), tolerance);
                let job = MetricJob { probe, rho: rho.clone(), sigma: sigma.clone(), n };
                run_metric(&mut tally, &cases, &job, config.backend);
                out.push(tally.finish());
            }
        }
    }
    out
}

fn mobius(a: GaussianRational, b: GaussianRational, c: GaussianRational, d: GaussianRational) -> Mobius {
    Mobius::new(a, b, c, d).expect("fixed maps are nondegenerate")
}

fn isometry_invariance(config: &Config) -> Vec<CheckResult> {
    let n = config.order(Kind::Metric);
    let tolerance = config.tolerance(Kind::Metric);
    let (zero, one) = (real(0, 1), real(1, 1));
    let rotation = mobius(g((3, 5), (4, 5)), zero.clone(), zero.clone(), one.clone());
    let translation = mobius(one.clone(), one.clone(), zero.clone(), one.clone());
    let shift = mobius(one.clone(), g((-1, 2), (1, 1)), zero.clone(), one.clone());
    let disk = |a: GaussianRational| mobius(one.clone(), a.clone(), a.conj(), one.clone());
    let id = Mobius::identity();

    let plane_cases = [Case::parse("z^3 + 2*z", g((1, 4), (-1, 6))), Case::parse("exp(z/2)", real(-3, 10))];
    let disk_cases = [
        Case::parse("z^2", g((1, 4), (-1, 6))),
        Case::parse("z^2 + z/2", g((1, 10), (1, 5))),
        Case::parse("exp(z/2)/2", real(-3, 10)),
    ];
    let groups: Vec<(String, MetricModel, Vec<Case>, Mobius, Mobius)> = vec![
        ("identity, euclidean".into(), MetricModel::euclidean(), plane_cases.to_vec(), id.clone(), id.clone()),
        ("rotation, euclidean".into(), MetricModel::euclidean(), plane_cases.to_vec(), rotation.clone(), rotation.clone()),
        ("rotation, spherical".into(), MetricModel::spherical(), plane_cases.to_vec(), rotation.clone(), rotation.clone()),
        ("rotation, hyperbolic".into(), MetricModel::hyperbolic(), disk_cases.to_vec(), rotation.clone(), rotation.clone()),
        ("translation, euclidean".into(), MetricModel::euclidean(), plane_cases.to_vec(), translation, shift),
        ("disk automorphism (a = 1/3)".into(), MetricModel::hyperbolic(), disk_cases.to_vec(), disk(real(1, 3)), id.clone()),
        (
            "disk automorphisms (a = 1/3, (1+i)/4)".into(),
            MetricModel::hyperbolic(),
            disk_cases.to_vec(),
            disk(real(1, 3)),
            disk(g((1, 4), (1, 4))),
        ),
    ];
    groups
        .into_iter()
        .map(|(name, m, cases, gm, hm)| {
            let mut tally = Tally::new(name, tolerance);
            let job = MetricJob { probe: MetricProbe::IsometryInvariance { g: gm, h: hm }, rho: m.clone(), sigma: m, n };
            run_metric(&mut tally, &cases, &job, config.backend);
            tally.finish()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(backend: Backend) -> Config {
        Config { max: Some(6), tolerance: None, precision: 128, seed: 7, trials: 5, backend }
    }

    #[test]
    fn every_suite_passes_on_small_inputs() {
        for backend in [Backend::Auto, Backend::Exact] {
            let report = run("all", &config(backend)).unwrap();
            let failures: Vec<_> = report.checks.iter().filter(|c| !c.pass).collect();
            assert!(failures.is_empty(), "{failures:#?}");
        }
    }

    #[test]
    fn unknown_suite_is_a_usage_error() {
        assert!(matches!(run("nosuch", &config(Backend::Auto)), Err(CliError::Usage(_))));
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run("analytic", &config(Backend::Auto)).unwrap().render(Format::Json);
        let b = run("analytic", &config(Backend::Auto)).unwrap().render(Format::Json);
        assert_eq!(a, b);
    }
}
