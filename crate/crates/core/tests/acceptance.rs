//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs without the libtest harness so the lines always print.

use std::time::{Duration, Instant};

use num_rational::Rational64;

use hint_core::cli::{cmd_demo, DemoName, EXIT_OK};
use hint_core::deficiency::{
    defi_continuity, defi_convexity, defi_lineness, ClusterScenario, ConvexityScenario, GlobalComponent, Jump, Line,
    LinenessScenario, Point2, Primitive,
};
use hint_core::oracle::mutants::{AtomDroppingIntegrate, DominanceDroppingAdd, InflatedMeasure};
use hint_core::oracle::{
    check_algebra_laws, check_algebra_laws_with, check_integral_laws, check_integral_laws_with, random_hvalue,
    LawReport, Profile,
};
use hint_core::rational::int;
use hint_core::{HNonNeg, HValue};

/// A pair with an optional infinite second coordinate, for hand evaluation
/// independent of the crate's arithmetic.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Pair {
    d: Rational64,
    /// `None` is `+inf`.
    m: Option<Rational64>,
}

fn p(d: i64, m: i64) -> Pair {
    Pair { d: Rational64::from_integer(d), m: Some(Rational64::from_integer(m)) }
}

fn p_inf(d: i64) -> Pair {
    Pair { d: Rational64::from_integer(d), m: None }
}

fn is_zero(a: Pair) -> bool {
    a.d == 0.into() && a.m == Some(0.into())
}

fn times(a: Pair, b: Pair) -> Pair {
    if is_zero(a) || is_zero(b) {
        return p(0, 0);
    }
    let m = match (a.m, b.m) {
        (Some(x), Some(y)) => Some(x * y),
        (Some(x), None) | (None, Some(x)) if x == 0.into() => Some(0.into()),
        _ => None,
    };
    Pair { d: a.d + b.d, m }
}

fn plus(a: Pair, b: Pair) -> Pair {
    if a.d != b.d {
        return if a.d > b.d { a } else { b };
    }
    Pair { d: a.d, m: a.m.zip(b.m).map(|(x, y)| x + y) }
}

fn render(a: Pair) -> String {
    let r = |x: Rational64| if *x.denom() == 1 { x.numer().to_string() } else { format!("{}/{}", x.numer(), x.denom()) };
    format!("({}, {})", r(a.d), a.m.map_or("inf".to_string(), r))
}

fn sum(terms: &[(Pair, Pair)]) -> Pair {
    terms.iter().fold(p(0, 0), |acc, &(c, mu)| plus(acc, times(c, mu)))
}

struct Gate {
    failures: usize,
}

impl Gate {
    fn report(&mut self, n: u32, name: &str, ok: bool, detail: String) {
        println!("{} criterion {n} ({name}): {detail}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            self.failures += 1;
        }
    }
}

fn pt(x: i64, y: i64) -> Point2 {
    Point2::new(int(x), int(y))
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

fn criterion_1(g: &mut Gate) {
    let (results, took) = timed(|| {
        [DemoName::MonotoneFailure, DemoName::Distributivity].map(|name| {
            let (mut out, mut err) = (Vec::new(), Vec::new());
            let code = cmd_demo(name, &mut out, &mut err);
            (code, String::from_utf8(out).expect("utf-8"))
        })
    });
    let [(c1, mono), (c2, dist)] = results;
    let fns_ok = (1..=3).all(|n| mono.lines().any(|l| l.starts_with(&format!("f_{n}(")) && l.contains("integral = (2, 0)")));
    let limit_ok = mono.lines().any(|l| l.starts_with("f(x) = lim") && l.contains("integral = (2, 1)"));
    let dist_ok = dist.contains("(1, 1) * (0, 0) = (0, 0)") && dist.contains("(1, 5) + (1, -5) = (1, 0)");
    let ok = c1 == EXIT_OK && c2 == EXIT_OK && fns_ok && limit_ok && dist_ok && took < Duration::from_secs(1);
    g.report(1, "worked examples", ok, format!("f_1..f_3 -> (2, 0), limit -> (2, 1), (0, 0) vs (1, 0) in {took:.2?}"));
}

fn law_line(r: &LawReport, took: Duration) -> String {
    let checks: u64 = r.laws.iter().map(|t| t.checks).sum();
    format!("{} trials, seeds {}, {checks} checks, {} violations in {took:.2?}", r.trials, r.seed_range(), r.violations.len())
}

fn criterion_2(g: &mut Gate) {
    let (r, took) = timed(|| check_algebra_laws(10_000, 0));
    let every_law = r.laws.iter().all(|t| t.checks > 0);
    let ok = r.passed() && every_law && took < Duration::from_secs(30);
    g.report(2, "algebra laws", ok, law_line(&r, took));
    if !r.passed() {
        print!("{r}");
    }
}

fn criterion_3(g: &mut Gate) {
    let (r, took) = timed(|| check_integral_laws(1_000, 0));
    let every_law = r.laws.iter().all(|t| t.checks > 0);
    let ok = r.passed() && every_law && took < Duration::from_secs(60);
    g.report(3, "integral laws", ok, law_line(&r, took));
    if !r.passed() {
        print!("{r}");
    }
}

fn criterion_4(g: &mut Gate) {
    // hand evaluation: sum of (coefficient) * (mu of its set)
    let expected = [
        ("convex K (a segment)", sum(&[])),
        ("two points at distance 1", sum(&[(p(1, 1), p(0, 1)), (p(1, 1), p(0, 1))])),
        (
            "three collinear points {0, 1, 2}",
            sum(&[
                (p(1, 1), p(0, 1)),
                (p(1, 2), p(0, 1)),
                (p(1, 1), p(0, 1)),
                (p(1, 1), p(0, 1)),
                (p(1, 2), p(0, 1)),
                (p(1, 1), p(0, 1)),
            ]),
        ),
        ("single jump", sum(&[(p(0, 1), p(0, 1))])),
        ("Dirichlet-style global set", sum(&[(p(0, 1), p_inf(1))])),
        ("line and an off point", sum(&[(p(0, 1), p(0, 1))])),
    ];
    let hn = |s: &str| -> HNonNeg { s.parse().expect("golden value") };
    let axis = Line::new(pt(0, 0), pt(1, 0)).expect("distinct");
    let computed = [
        defi_convexity(&ConvexityScenario { points: vec![pt(1, 0)], segments: vec![[pt(0, 0), pt(2, 0)]] }),
        defi_convexity(&ConvexityScenario::points(vec![pt(0, 0), pt(1, 0)])),
        defi_convexity(&ConvexityScenario::points(vec![pt(0, 0), pt(1, 0), pt(2, 0)])),
        defi_continuity(&ClusterScenario {
            jumps: vec![Jump { x: int(0), remainder: hn("(0, 1)") }],
            ..Default::default()
        }),
        defi_continuity(&ClusterScenario {
            global: Some(GlobalComponent { set: "R".into(), remainder: hn("(0, 1)") }),
            ..Default::default()
        }),
        defi_lineness(&LinenessScenario {
            primitives: vec![Primitive::Line(axis.clone()), Primitive::Point(pt(3, 2))],
            candidates: vec![axis],
        })
        .map(|r| r.value),
    ];
    let mut all = true;
    let mut parts = Vec::new();
    for ((name, hand), got) in expected.iter().zip(computed) {
        let want = render(*hand);
        let got = got.map(|v| v.to_string()).unwrap_or_else(|e| format!("error {e}"));
        all &= got == want;
        if got == want {
            parts.push(format!("{name} {got}"));
        } else {
            parts.push(format!("{name} {got}, hand value {want}"));
        }
    }
    g.report(4, "deficiency golden values", all, parts.join("; "));
}

fn criterion_5(g: &mut Gate) {
    let runs = [
        ("dominance-dropping add", check_algebra_laws_with(&DominanceDroppingAdd, 1_000, 0)),
        ("non-additive measure", check_integral_laws_with(&InflatedMeasure, 200, 0)),
        ("atom-dropping integrate", check_integral_laws_with(&AtomDroppingIntegrate, 200, 0)),
    ];
    let mut all = true;
    let mut parts = Vec::new();
    for (name, r) in &runs {
        match r.violations.first() {
            Some(v) => {
                // the reported seed alone must reproduce a violation
                let again = match *name {
                    "dominance-dropping add" => check_algebra_laws_with(&DominanceDroppingAdd, 1, v.seed),
                    "non-additive measure" => check_integral_laws_with(&InflatedMeasure, 1, v.seed),
                    _ => check_integral_laws_with(&AtomDroppingIntegrate, 1, v.seed),
                };
                all &= !again.passed();
                parts.push(format!("{name}: {} violations, first [{}] seed {}", r.violations.len(), v.law, v.seed));
            }
            None => {
                all = false;
                parts.push(format!("{name}: not detected"));
            }
        }
    }
    g.report(5, "mutant detection", all, parts.join("; "));
}

fn criterion_6(g: &mut Gate) {
    let mut bad = Vec::new();
    for seed in 0..10_000u64 {
        let profile = [Profile::Nonneg, Profile::Signed, Profile::WithInfinities][(seed % 3) as usize];
        let v = random_hvalue(seed, profile);
        let text = v.to_string();
        if text.parse::<HValue>().ok().as_ref() != Some(&v) {
            bad.push(text);
        }
    }
    g.report(6, "render/parse round trip", bad.is_empty(), format!("10000 values, {} mismatches {bad:?}", bad.len()));
}

fn main() {
    let mut g = Gate { failures: 0 };
    criterion_1(&mut g);
    criterion_2(&mut g);
    criterion_3(&mut g);
    criterion_4(&mut g);
    criterion_5(&mut g);
    criterion_6(&mut g);
    if g.failures > 0 {
        println!("{} criteria failed", g.failures);
        std::process::exit(1);
    }
    println!("all 6 criteria passed");
}
