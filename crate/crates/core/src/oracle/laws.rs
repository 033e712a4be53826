//! Randomized checks of the integral laws on small atom spaces, each compared
//! with a brute force over subsets and partitions.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::hvalue::{sum_nonneg, HNonNeg};
use crate::integral::{indefinite, integrate_ordinary, integrate_value, isimple_sup_gap, pointwise_add_fn, HFunction, SimpleFn};
use crate::rational::{ExtRational, Rational};
use crate::space::{AtomSpace, HMeasure, MeasurableSet, MeasureSpace};

use super::{draw_nonneg, random_atom_space, run_trials, LawReport, LawTally, Trial, Violation, ATOM_NAMES};

/// The measure and integral under test. The defaults are the crate's own.
pub trait IntegralSystem: Sync {
    fn measure(&self, space: &MeasureSpace, s: &MeasurableSet) -> Result<HNonNeg> {
        space.measure(s)
    }

    fn integrate(&self, space: &MeasureSpace, f: &SimpleFn) -> Result<HNonNeg> {
        integrate_value(space, &HFunction::Simple(f.clone()))
    }

    /// `L -> int_L f`.
    fn indefinite(&self, space: &MeasureSpace, f: &SimpleFn, s: &MeasurableSet) -> Result<HNonNeg> {
        indefinite(space, &HFunction::Simple(f.clone())).measure(s)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ReferenceSystem;

impl IntegralSystem for ReferenceSystem {}

pub const INTEGRAL_LAWS: [&str; 11] = [
    "additivity",
    "pointwise-add",
    "homogeneity",
    "monotonicity",
    "set-additivity",
    "zero-law",
    "sigma-additivity",
    "t4-agreement",
    "ordinary-agreement",
    "minorant-soundness",
    "attainment",
];

/// Bell numbers from the Bell triangle.
pub fn bell(n: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![*row.last().expect("nonempty")];
        for v in &row {
            let x = next.last().expect("nonempty") + v;
            next.push(x);
        }
        row = next;
    }
    row[0]
}

/// Every partition of `{0, ..., n-1}`, from restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn grow(i: usize, n: usize, labels: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            let blocks = labels.iter().max().map_or(0, |m| m + 1);
            let mut p = vec![Vec::new(); blocks];
            for (x, &b) in labels.iter().enumerate() {
                p[b].push(x);
            }
            out.push(p);
            return;
        }
        let next = labels.iter().max().map_or(0, |m| m + 1);
        for b in 0..=next {
            labels.push(b);
            grow(i + 1, n, labels, out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    grow(0, n, &mut Vec::new(), &mut out);
    out
}

fn ids_of(space: &AtomSpace, mask: usize) -> Vec<String> {
    space.ids().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, id)| id.to_string()).collect()
}

fn atoms_of(space: &AtomSpace, mask: usize) -> MeasurableSet {
    MeasurableSet::atoms(ids_of(space, mask))
}

/// A simple function constant on the blocks of a random partition.
fn random_simple(rng: &mut ChaCha8Rng, space: &AtomSpace) -> SimpleFn {
    let n = space.len();
    let mut blocks: Vec<Vec<String>> = Vec::new();
    for id in space.ids() {
        let b = rng.gen_range(0..=blocks.len());
        if b == blocks.len() {
            blocks.push(Vec::new());
        }
        blocks[b].push(id.to_string());
    }
    debug_assert!(blocks.len() <= n);
    let pieces = blocks
        .into_iter()
        .map(|ids| {
            let c = if rng.gen_ratio(1, 4) { HNonNeg::zero() } else { draw_nonneg(rng) };
            (c, MeasurableSet::atoms(ids))
        })
        .filter(|(c, _)| !c.is_zero())
        .collect();
    SimpleFn::i_simple(pieces).expect("disjoint blocks")
}

/// A value at most `v`.
fn below(rng: &mut ChaCha8Rng, v: &HNonNeg) -> HNonNeg {
    match rng.gen_range(0..3) {
        0 => v.clone(),
        1 => HNonNeg::zero(),
        _ => {
            let c = draw_nonneg(rng);
            if &c <= v {
                c
            } else {
                HNonNeg::zero()
            }
        }
    }
}

fn per_atom(space: &AtomSpace, value: impl Fn(&str) -> HNonNeg) -> SimpleFn {
    SimpleFn::on_atoms(space.ids().map(|id| (id.to_string(), value(id))).filter(|(_, v)| !v.is_zero()))
        .expect("one piece per atom")
}

/// `(D, m)` with `D` the largest `dim mu(L) + inf_L pi1(f)` over sets of
/// positive measure on which `f > 0`, and `m` the best sum of
/// `mass mu(L_i) * inf pi2(f)` over disjoint such `L_i` reaching `D`.
pub fn t4_brute_force(space: &AtomSpace, f: &SimpleFn) -> HNonNeg {
    let n = space.len();
    let weights: Vec<&HNonNeg> = space.atoms().iter().map(|(_, w)| w).collect();
    let values: Vec<HNonNeg> = space.ids().map(|id| f.at_name(id)).collect();
    let full = (1usize << n) - 1;
    // (dim sum, mass product) for qualifying sets
    let mut cand: Vec<Option<(Rational, ExtRational)>> = vec![None; full + 1];
    for (mask, slot) in cand.iter_mut().enumerate().skip(1) {
        let members: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let mu = sum_nonneg(members.iter().map(|&i| weights[i]));
        if mu.is_zero() || members.iter().any(|&i| values[i].is_zero()) {
            continue;
        }
        let d2 = members.iter().map(|&i| values[i].d.value()).min().expect("nonempty");
        let m2 = members.iter().map(|&i| &values[i].m).min().expect("nonempty");
        *slot = Some((mu.d.value() + d2, mu.m.mul(m2)));
    }
    let Some(top) = cand.iter().flatten().map(|(d, _)| d).max().cloned() else {
        return HNonNeg::zero();
    };
    let mut best = vec![ExtRational::zero(); full + 1];
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        let mut sub = mask;
        let mut b = ExtRational::zero();
        while sub > 0 {
            if sub & low != 0 {
                let own = match &cand[sub] {
                    Some((d, m)) if d == &top => m.clone(),
                    _ => ExtRational::zero(),
                };
                let total = own.checked_add(&best[mask ^ sub]).expect("nonnegative");
                if total > b {
                    b = total;
                }
            }
            sub = (sub - 1) & mask;
        }
        best[mask] = b;
    }
    HNonNeg::of(top, best[full].clone()).expect("nonnegative")
}

/// Findings from sampling minorants `g <= f`: every sample must integrate to
/// at most the system's integral of `f`, and `g = f` must reach it.
fn minorant_findings<S: IntegralSystem>(
    sys: &S,
    space: &AtomSpace,
    f: &SimpleFn,
    samples: usize,
    seed: u64,
) -> Result<Vec<(&'static str, String)>> {
    let value = sys.integrate(&MeasureSpace::Atoms(space.clone()), f)?;
    let report = isimple_sup_gap(space, f, samples, seed)?;
    let mut out: Vec<(&'static str, String)> =
        report.violations.into_iter().map(|(k, d)| ("minorant-soundness", format!("sample {k}: {d}"))).collect();
    if report.largest > value {
        out.push(("minorant-soundness", format!("a minorant integrates to {} above {value}", report.largest)));
    }
    if samples > 0 && report.largest != value {
        out.push(("attainment", format!("f = {f} integrates to {value} but g = f gives {}", report.largest)));
    }
    Ok(out)
}

fn integral_trial<S: IntegralSystem>(sys: &S, seed: u64) -> Trial {
    let mut t = Trial::new(seed);
    let mut rng = t.rng();
    let n = rng.gen_range(1..=ATOM_NAMES.len());
    let atoms = random_atom_space(rng.gen(), n);
    let space = MeasureSpace::Atoms(atoms.clone());
    let f = random_simple(&mut rng, &atoms);
    let g = random_simple(&mut rng, &atoms);
    let int = |h: &SimpleFn| sys.integrate(&space, h);
    let ctx = format!("space {:?}, f = {f}", atoms.atoms().iter().map(|(i, w)| format!("{i}:{w}")).collect::<Vec<_>>());

    let sum = per_atom(&atoms, |id| f.at_name(id).add(&g.at_name(id)));
    t.check_result(
        "additivity",
        (|| Ok(int(&sum)? == int(&f)?.add(&int(&g)?)))(),
        || format!("{ctx}, g = {g}"),
    );
    t.check_result(
        "pointwise-add",
        pointwise_add_fn(&f.clone().into(), &g.clone().into()).map(|h| match h {
            HFunction::Simple(h) => atoms.ids().all(|id| h.at_name(id) == sum.at_name(id)),
            HFunction::Piecewise(_) => false,
        }),
        || format!("{ctx}, g = {g}"),
    );

    let c = draw_nonneg(&mut rng);
    t.check_result("homogeneity", (|| Ok(int(&f.scale(&c))? == c.mul(&int(&f)?)))(), || format!("{ctx}, c = {c}"));

    let lower: Vec<(String, HNonNeg)> = atoms.ids().map(|id| (id.to_string(), below(&mut rng, &f.at_name(id)))).collect();
    let lower = per_atom(&atoms, |id| lower.iter().find(|(i, _)| i == id).expect("every atom").1.clone());
    t.check_result("monotonicity", (|| Ok(int(&lower)? <= int(&f)?))(), || format!("{ctx}, g = {lower}"));

    let full = (1usize << n) - 1;
    let (mut a, mut b) = (0usize, 0usize);
    for i in 0..n {
        match rng.gen_range(0..3) {
            0 => a |= 1 << i,
            1 => b |= 1 << i,
            _ => {}
        }
    }
    t.check_result(
        "set-additivity",
        (|| {
            let (sa, sb, sab) = (atoms_of(&atoms, a), atoms_of(&atoms, b), atoms_of(&atoms, a | b));
            let nu_ok = sys.indefinite(&space, &f, &sab)?
                == sys.indefinite(&space, &f, &sa)?.add(&sys.indefinite(&space, &f, &sb)?);
            let mu_ok = sys.measure(&space, &sab)? == sys.measure(&space, &sa)?.add(&sys.measure(&space, &sb)?);
            Ok(nu_ok && mu_ok)
        })(),
        || format!("{ctx}, A = {:?}, B = {:?}", ids_of(&atoms, a), ids_of(&atoms, b)),
    );

    let null_elsewhere = atoms.atoms().iter().all(|(id, w)| w.is_zero() || f.at_name(id).is_zero());
    t.check_result("zero-law", int(&f).map(|v| v.is_zero() == null_elsewhere), || ctx.clone());

    // measures of every subset, then every partition of the whole space
    let table = (|| -> Result<(Vec<HNonNeg>, Vec<HNonNeg>)> {
        let mut mu = Vec::with_capacity(full + 1);
        let mut nu = Vec::with_capacity(full + 1);
        for mask in 0..=full {
            let s = atoms_of(&atoms, mask);
            mu.push(sys.measure(&space, &s)?);
            nu.push(sys.indefinite(&space, &f, &s)?);
        }
        Ok((mu, nu))
    })();
    let partitions = set_partitions(n);
    let sigma = table.map(|(mu, nu)| {
        let mut bad = None;
        for p in &partitions {
            let masks: Vec<usize> = p.iter().map(|blk| blk.iter().map(|i| 1 << i).sum()).collect();
            let mu_sum = sum_nonneg(masks.iter().map(|&m| &mu[m]));
            let nu_sum = sum_nonneg(masks.iter().map(|&m| &nu[m]));
            if mu_sum != mu[full] || nu_sum != nu[full] {
                bad = Some(format!(
                    "partition {p:?}: mu {} vs {mu_sum}, integral {} vs {nu_sum}",
                    mu[full], nu[full]
                ));
                break;
            }
        }
        if partitions.len() as u64 != bell(n) {
            bad = Some(format!("{} partitions of {n} atoms, expected {}", partitions.len(), bell(n)));
        }
        bad
    });
    match sigma {
        Ok(bad) => t.check("sigma-additivity", bad.is_none(), || format!("{ctx}, {}", bad.unwrap_or_default())),
        Err(e) => t.check("sigma-additivity", false, || format!("{ctx}: {e}")),
    }

    let brute = t4_brute_force(&atoms, &f);
    t.check_result("t4-agreement", int(&f).map(|v| v == brute), || format!("{ctx}, brute force {brute}"));

    let flat = AtomSpace::new(
        atoms
            .atoms()
            .iter()
            .map(|(id, w)| {
                let v = if w.m.is_zero() { HNonNeg::zero() } else { HNonNeg::of(Rational::from_integer(0.into()), w.m.clone()).expect("nonneg") };
                (id.clone(), v)
            })
            .collect(),
    )
    .expect("same names");
    let flat = MeasureSpace::Atoms(flat);
    t.check_result(
        "ordinary-agreement",
        (|| Ok(integrate_ordinary(&flat, &HFunction::Simple(f.clone()))? == sys.integrate(&flat, &f)?))(),
        || format!("{ctx} with weights flattened to dimension 0"),
    );

    match minorant_findings(sys, &atoms, &f, 8, rng.gen()) {
        Ok(found) => {
            let sound = found.iter().find(|(l, _)| *l == "minorant-soundness").map(|(_, d)| d.clone());
            let attained = found.iter().find(|(l, _)| *l == "attainment").map(|(_, d)| d.clone());
            t.check("minorant-soundness", sound.is_none(), || format!("{ctx}: {}", sound.unwrap_or_default()));
            t.check("attainment", attained.is_none(), || format!("{ctx}: {}", attained.unwrap_or_default()));
        }
        Err(e) => t.check("minorant-soundness", false, || format!("{ctx}: {e}")),
    }
    t
}

pub fn check_integral_laws(trials: u64, seed: u64) -> LawReport {
    check_integral_laws_with(&ReferenceSystem, trials, seed)
}

pub fn check_integral_laws_with<S: IntegralSystem>(sys: &S, trials: u64, seed: u64) -> LawReport {
    run_trials("integral laws", &INTEGRAL_LAWS, trials, seed, |s| integral_trial(sys, s))
}

pub fn minorant_sample_check(space: &AtomSpace, f: &SimpleFn, samples: usize, seed: u64) -> LawReport {
    minorant_sample_check_with(&ReferenceSystem, space, f, samples, seed)
}

/// One report over `samples` sampled minorants; violations carry `seed`.
pub fn minorant_sample_check_with<S: IntegralSystem>(
    sys: &S,
    space: &AtomSpace,
    f: &SimpleFn,
    samples: usize,
    seed: u64,
) -> LawReport {
    let found = minorant_findings(sys, space, f, samples, seed)
        .unwrap_or_else(|e| vec![("minorant-soundness", e.to_string())]);
    let count = |law: &str| found.iter().filter(|(l, _)| *l == law).count() as u64;
    let laws = vec![
        LawTally { law: "minorant-soundness".into(), checks: samples as u64, violations: count("minorant-soundness") },
        LawTally { law: "attainment".into(), checks: u64::from(samples > 0), violations: count("attainment") },
    ];
    let violations =
        found.into_iter().map(|(law, detail)| Violation { law: law.to_string(), seed, detail }).collect();
    LawReport { suite: "minorant sampling".into(), trials: samples as u64, first_seed: seed, laws, violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::mutants::{AtomDroppingIntegrate, InflatedMeasure};

    fn hn(s: &str) -> HNonNeg {
        s.parse().unwrap()
    }

    #[test]
    fn partitions_are_complete() {
        assert_eq!((0..=6).map(bell).collect::<Vec<_>>(), vec![1, 1, 2, 5, 15, 52, 203]);
        for n in 0..=6 {
            assert_eq!(set_partitions(n).len() as u64, bell(n));
        }
    }

    #[test]
    fn brute_force_matches_hand_values() {
        let xy = AtomSpace::new(vec![("x".into(), hn("(1/2, 3)")), ("y".into(), hn("(0, 2)"))]).unwrap();
        let f = SimpleFn::on_atoms([("x", hn("(1/2, 2)")), ("y", hn("(1, 5)"))]).unwrap();
        assert_eq!(t4_brute_force(&xy, &f), hn("(1, 16)"));
        assert_eq!(t4_brute_force(&xy, &SimpleFn::zero()), HNonNeg::zero());
        let g = SimpleFn::on_atoms([("x", hn("(1, 0)"))]).unwrap();
        assert_eq!(t4_brute_force(&xy, &g), hn("(3/2, 0)"));
    }

    #[test]
    fn reference_passes() {
        let r = check_integral_laws(150, 7);
        assert!(r.passed(), "{r}");
        assert_eq!(r.tally("sigma-additivity").unwrap().checks, 150);
    }

    #[test]
    fn infinite_weights_keep_the_laws() {
        let space =
            AtomSpace::new(vec![("a".into(), hn("(1, inf)")), ("b".into(), hn("(1, 2)")), ("c".into(), hn("(0, 0)"))])
                .unwrap();
        let f = SimpleFn::on_atoms([("a", hn("(0, 0)")), ("b", hn("(1, 1)")), ("c", hn("(3, inf)"))]).unwrap();
        let f = SimpleFn::i_simple(f.pieces().iter().filter(|(c, _)| !c.is_zero()).cloned().collect()).unwrap();
        assert_eq!(t4_brute_force(&space, &f), hn("(2, 2)"));
        let r = minorant_sample_check(&space, &f, 500, 1);
        assert!(r.passed(), "{r}");
        let h = SimpleFn::on_atoms([("a", hn("(1/2, 3)"))]).unwrap();
        let whole = MeasureSpace::Atoms(space.clone());
        assert_eq!(ReferenceSystem.integrate(&whole, &h).unwrap(), hn("(3/2, inf)"));
        assert_eq!(t4_brute_force(&space, &h), hn("(3/2, inf)"));
        assert_eq!(hn("(0, 0)").mul(&hn("(1, inf)")), HNonNeg::zero());
    }

    #[test]
    fn minorants_of_zero() {
        let space = random_atom_space(3, 4);
        let r = minorant_sample_check(&space, &SimpleFn::zero(), 1000, 2);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn mutants_are_caught() {
        let r = check_integral_laws_with(&InflatedMeasure, 100, 0);
        assert!(r.tally("sigma-additivity").unwrap().violations > 0, "{r}");
        let r = check_integral_laws_with(&AtomDroppingIntegrate, 100, 0);
        assert!(r.tally("attainment").unwrap().violations > 0, "{r}");
        let space = AtomSpace::new(vec![("a".into(), hn("(0, 1)")), ("b".into(), hn("(1, 1)"))]).unwrap();
        let f = SimpleFn::on_atoms([("a", hn("(0, 1)")), ("b", hn("(1, 1)"))]).unwrap();
        let r = minorant_sample_check_with(&AtomDroppingIntegrate, &space, &f, 10, 4);
        assert_eq!(r.tally("attainment").unwrap().violations, 1);
        assert!(r.violations.iter().all(|v| v.seed == 4));
    }
}
