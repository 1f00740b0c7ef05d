//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. All comparisons are exact.

mod common;

use common::*;
use contingent::assessment::{check_i, check_ie, Axiom, DEFAULT_N_MAX};
use contingent::bits::Event;
use contingent::construct::{build_belief_lift, build_canonical_sound, build_interval_additive};
use contingent::games::{
    layer_decompose, pointwise_undominated, rationalizable, t_bullet, t_circ,
    verify_integral_equality, DominanceMode,
};
use contingent::identify::{largest_subtheory, subtheory_via_certainty, understood_implications, IdentifyError};
use contingent::logic::{sat_set, Atoms, Formula, Theory};
use contingent::model::{represents, Appraisal, SubjectiveModel};
use contingent::rational::Q;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn theory(name: &str, atoms: &Atoms) -> Theory {
    let v: serde_json::Value = serde_json::from_str(&read(name)).unwrap();
    let gens = v["generators"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| atoms.parse(g.as_str().unwrap()).unwrap())
        .collect();
    Theory::new(atoms, gens).unwrap()
}

fn linda_representations() -> Outcome {
    let start = Instant::now();
    let a = assessment("linda.json");
    let m1 = model("linda_model1.json");
    let m2 = model("linda_model2.json");
    for (name, m) in [("model 1", &m1), ("model 2", &m2)] {
        let r = represents(m, &a);
        ensure!(r.represents, "{name} does not represent π");
        for text in ["f", "t", "t & f"] {
            let f = a.atoms().parse(text).unwrap();
            let res = r
                .residuals
                .iter()
                .find(|x| x.formula == f.to_string())
                .ok_or(format!("{name}: no residual for {text}"))?;
            ensure!(res.residual == Some(Q::zero()), "{name}: residual on {text} is {:?}", res.residual);
            // Direct recomputation of λ(t(φ)).
            let lam = m.lambda(m.truth_of(&f).unwrap()).unwrap();
            ensure!(&lam == a.pi(&f).unwrap(), "{name}: λ(t({text})) = {lam}");
        }
    }
    ensure!(!m1.classify_truth_stored().monotone, "model 1 t reported monotone");
    let lc = m2.classify_lambda().map_err(|e| e.to_string())?;
    ensure!(!lc.monotone, "model 2 λ reported monotone");
    let pair = lc
        .witnesses
        .iter()
        .any(|w| w.property == "monotone" && w.events == ["{w2}", "{w2,w3}"]);
    ensure!(pair, "no monotonicity witness ({{w2}}, {{w2,w3}}): {:?}", lc.witnesses);
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("{elapsed:?}"))
}

fn linda_identification() -> Outcome {
    let a = assessment("linda.json");
    let verdicts = understood_implications(&a).map_err(|e| e.to_string())?;
    let bad: Vec<_> = verdicts.iter().filter(|v| !v.understood).collect();
    ensure!(bad.len() == 1, "{} pairs not understood", bad.len());
    let v = bad[0];
    ensure!(
        v.antecedent == "(t & f)" && v.consequent == "t",
        "flagged pair is ({}, {})",
        v.antecedent,
        v.consequent
    );
    ensure!(v.margin == q(-1, 4), "margin {}", v.margin);
    // Oracle: every valid pair with π(ψ) < π(φ), enumerated directly.
    let es = a.entries();
    let mut oracle = Vec::new();
    for x in es {
        for y in es {
            if x.text != y.text && x.sat.is_subset(&y.sat) && y.pi < x.pi {
                oracle.push((x.text.clone(), y.text.clone()));
            }
        }
    }
    ensure!(oracle == [(v.antecedent.clone(), v.consequent.clone())], "oracle gives {oracle:?}");
    Ok(format!("{} valid implications", verdicts.len()))
}

fn voting_subtheory() -> Outcome {
    let a = assessment("voting.json");
    let atoms = a.atoms().clone();
    let pi = |t: &str| a.pi(&atoms.parse(t).unwrap()).cloned().unwrap();
    let alpha = pi("r");
    ensure!(
        pi("!b") == alpha && Q::one() - pi("b") == alpha && Q::one() - pi("!r") == alpha,
        "inequality (1) fails"
    );
    ensure!(pi("p").is_positive(), "inequality (2) fails");
    ensure!(pi("r & p") >= pi("b & p"), "inequality (3) fails");
    let t = theory("voting_theory.json", &atoms);
    let r = largest_subtheory(&a, &t).map_err(|e| e.to_string())?;
    ensure!(r.unique, "sub-theory not unique");
    let expected = sat_set(&atoms.parse("r <-> !b").unwrap(), &atoms);
    ensure!(r.subtheory.models == expected, "sub-theory is not the closure of r <-> !b");
    ensure!(r.verification.pass, "returned sub-theory fails S-I");
    Ok(format!("α = {alpha}"))
}

fn duality_suite() -> Outcome {
    let start = Instant::now();
    let mut g = rng(4);
    let runs = 500;
    for run in 0..runs {
        let a = random_monotone_assessment(&mut g);
        let sound = build_canonical_sound(&a).map_err(|e| format!("run {run}: canonical: {e}"))?;
        ensure!(sound.model.classify_truth_stored().sound, "run {run}: t not sound");
        let additive = build_interval_additive(&a).map_err(|e| format!("run {run}: interval: {e}"))?;
        ensure!(additive.model.is_additive(), "run {run}: λ not additive");
        for m in [&sound.model, &additive.model] {
            ensure!(represents(m, &a).represents, "run {run}: does not represent π");
            for e in a.entries() {
                let lam = m.truth_extended(&e.formula).and_then(|t| m.lambda(&t));
                ensure!(lam.as_ref() == Some(&e.pi), "run {run}: λ(t({})) = {lam:?}", e.text);
            }
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    Ok(format!("{runs} assessments in {elapsed:?}"))
}

/// Sound `t` on atoms p, q over three states, one stored formula per
/// semantic class: pq ↦ w1, p¬q ↦ w2, ¬p¬q ↦ w3, ¬pq ↦ nothing.
fn lift_base(nu: &[Q]) -> SubjectiveModel {
    let atoms = Atoms::new(&["p", "q"]).unwrap();
    // Valuation bit 0 is p, bit 1 is q.
    let state_of = |v: usize| match v {
        3 => Some(0),
        1 => Some(1),
        0 => Some(2),
        _ => None,
    };
    let truth: Vec<(Formula, Event)> = (0u64..16)
        .map(|mask| {
            let sat = Event::from_mask(4, mask);
            let event = Event::from_indices(3, sat.iter().filter_map(state_of));
            (atoms.formula_for(&sat), event)
        })
        .collect();
    let table: BTreeMap<Event, Q> = (0..8u64).map(|m| (Event::from_mask(3, m), nu[m as usize].clone())).collect();
    SubjectiveModel::new(&atoms, vec!["w1".into(), "w2".into(), "w3".into()], truth, Appraisal::Table(table)).unwrap()
}

fn belief_lift_suite() -> Outcome {
    let grid: Vec<Q> = (0..=4).map(|k| q(k, 4)).collect();
    let mut lifted = 0;
    let mut idx = [0usize; 6];
    loop {
        let mut nu = vec![Q::zero(); 8];
        for (j, m) in (1..7).enumerate() {
            nu[m] = grid[idx[j]].clone();
        }
        nu[7] = Q::one();
        if mobius_oracle(&nu).iter().all(|m| !m.is_negative()) {
            let base = lift_base(&nu);
            let out = build_belief_lift(&base).map_err(|e| format!("{nu:?}: {e}"))?;
            let m = &out.model;
            let entries = base.truth_entries();
            for e in entries {
                let t = m.truth_of(&e.formula).ok_or(format!("{} missing after lift", e.text))?;
                ensure!(m.lambda(t) == base.lambda(&e.event), "λ(t({})) changed", e.text);
            }
            for x in entries {
                for y in entries {
                    let conj = Formula::and(x.formula.clone(), y.formula.clone());
                    let tc = m.truth_semantic(&conj).ok_or("conjunction class missing")?;
                    let tx = m.truth_of(&x.formula).unwrap();
                    let ty = m.truth_of(&y.formula).unwrap();
                    ensure!(*tc == tx.intersection(ty), "t not ∧-distributive at {}, {}", x.text, y.text);
                }
            }
            lifted += 1;
        }
        let mut j = 0;
        while j < 6 {
            idx[j] += 1;
            if idx[j] < grid.len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
        if j == 6 {
            break;
        }
    }
    ensure!(lifted > 0, "no totally monotone appraisals found");
    Ok(format!("{lifted} totally monotone appraisals of 15625"))
}

fn choquet_suite() -> Outcome {
    let mut g = rng(6);
    for run in 0..1000 {
        let n = g.gen_range(1..=4);
        let nu = random_capacity(&mut g, n, 8);
        let m = table_model(&nu);
        // Comonotone pair: both nondecreasing along one random order.
        let mut order: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(&mut order[..], &mut g);
        let mut x = vec![Q::zero(); n];
        let mut y = vec![Q::zero(); n];
        let (mut cx, mut cy) = (0i64, 0i64);
        for &i in &order {
            cx += g.gen_range(0..3);
            cy += g.gen_range(0..3);
            x[i] = q(cx, 2);
            y[i] = q(cy, 3);
        }
        let sum: Vec<Q> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let cxv = m.choquet(&x).map_err(|e| e.to_string())?;
        let cyv = m.choquet(&y).map_err(|e| e.to_string())?;
        let csv = m.choquet(&sum).map_err(|e| e.to_string())?;
        ensure!(csv == &cxv + &cyv, "run {run}: comonotone additivity fails");
        ensure!(cxv == choquet_oracle(&x, &nu), "run {run}: disagrees with oracle");
        // A pointwise larger capacity integrates to at least as much.
        let other = random_capacity(&mut g, n, 8);
        let larger: Vec<Q> = nu.iter().zip(&other).map(|(a, b)| a.max(b).clone()).collect();
        let cl = table_model(&larger).choquet(&x).map_err(|e| e.to_string())?;
        ensure!(cl >= cxv, "run {run}: capacity monotonicity fails");
        // Additive λ: Choquet equals the dot product.
        let w: Vec<i64> = (0..n).map(|_| g.gen_range(0..5)).collect();
        let total: i64 = w.iter().sum::<i64>().max(1);
        let mut p: Vec<Q> = w.iter().map(|&v| q(v, total)).collect();
        if w.iter().all(|&v| v == 0) {
            p[0] = Q::one();
        }
        let add = SubjectiveModel::new(
            &atoms(1),
            (0..n).map(|i| format!("w{i}")).collect(),
            Vec::new(),
            Appraisal::Additive(p.clone()),
        )
        .map_err(|e| e.to_string())?;
        ensure!(add.choquet(&x).map_err(|e| e.to_string())? == dot(&p, &x), "run {run}: additive ≠ dot");
    }
    Ok("1000 instances".into())
}

fn statement_maps() -> Outcome {
    let source = model("layers_source.json");
    let target = model("layers_target.json");
    let s = strategy("layers_strategy.json", source.atoms());
    let x = t_circ(&source, &s).map_err(|e| e.to_string())?;
    ensure!(x == [q(3, 1), q(4, 1), q(2, 1)], "t∘(s) = {x:?}");
    let layers = layer_decompose(&x, &source).map_err(|e| e.to_string())?;
    let got: Vec<(Q, String)> = layers.iter().map(|l| (l.alpha.clone(), l.formula.to_string())).collect();
    let want = vec![
        (q(4, 1), "(p & !q)".to_string()),
        (q(3, 1), "p".to_string()),
        (q(2, 1), "T".to_string()),
    ];
    ensure!(got == want, "layers {got:?}");
    let y = t_bullet(&source, &target, &s).map_err(|e| e.to_string())?;
    ensure!(y == [q(3, 1), q(2, 1), q(2, 1)], "t•(s) = {y:?}");
    let eq = verify_integral_equality(&source, &target, &s).map_err(|e| e.to_string())?;
    ensure!(eq.equal, "{} ≠ {}", eq.source_value, eq.target_value);
    let nu = source.powerset_function().map_err(|e| e.to_string())?;
    ensure!(choquet_oracle(&x, nu.values()) == eq.source_value, "source integral disagrees with oracle");
    ensure!(dot(&y, &[q(1, 3), q(1, 3), q(1, 3)]) == eq.target_value, "target integral disagrees with oracle");
    Ok(format!("∫ = {}", eq.source_value))
}

fn rationalize_with_dominance() -> Outcome {
    let base = model("two_state_base.json");
    let alts: Vec<_> = ["two_state_s1.json", "two_state_s2.json", "two_state_s3.json"]
        .iter()
        .map(|f| strategy(f, base.atoms()))
        .collect();
    let add = rationalizable(2, &alts, &base, DominanceMode::Strict, true).map_err(|e| e.to_string())?;
    ensure!(!add.rationalizable, "s3 rationalizable by an additive prior");
    ensure!(
        add.dominance.mixture == Some(vec![q(1, 2), q(1, 2), Q::zero()]),
        "mixture {:?}",
        add.dominance.mixture
    );
    ensure!(add.dominance.value == q(1, 6), "ε = {}", add.dominance.value);
    let r = rationalizable(2, &alts, &base, DominanceMode::Strict, false).map_err(|e| e.to_string())?;
    ensure!(r.rationalizable, "s3 not rationalizable in the maximal model");
    let w = r.witness.ok_or("no witness")?;
    let nu = w.powerset_function().map_err(|e| e.to_string())?;
    let values: Vec<Q> = alts
        .iter()
        .map(|s| choquet_oracle(&t_circ(&base, s).unwrap(), nu.values()))
        .collect();
    ensure!(values == [q(1, 4), q(1, 4), q(1, 3)], "witness values {values:?}");
    ensure!(r.values == values, "reported values {:?}", r.values);
    Ok("1/3 vs 1/4, 1/4".into())
}

fn lp_vs_oracle() -> Outcome {
    let vals = small_payoffs();
    let mut instances: Vec<Vec<Vec<Q>>> = Vec::new();
    // Every instance with at most four payoff entries in total.
    for (k, n) in [(1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2), (3, 1)] {
        let cells = k * n;
        let mut idx = vec![0usize; cells];
        loop {
            instances.push((0..k).map(|i| (0..n).map(|w| vals[idx[i * n + w]].clone()).collect()).collect());
            let mut j = 0;
            while j < cells {
                idx[j] += 1;
                if idx[j] < vals.len() {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
            if j == cells {
                break;
            }
        }
    }
    let exhaustive = instances.len();
    let mut g = rng(9);
    for _ in 0..3000 {
        let k = g.gen_range(2..=3);
        let n = g.gen_range(2..=4);
        instances.push(random_acts(&mut g, k, n));
    }
    let mut dominated = 0;
    for alts in &instances {
        let x = &alts[0];
        for (mode, weak) in [(DominanceMode::Strict, false), (DominanceMode::Weak, true)] {
            let r = pointwise_undominated(x, alts, mode).map_err(|e| format!("{alts:?}: {e}"))?;
            let exact = vertex_dominated(x, alts, weak);
            ensure!(r.undominated != exact, "{mode:?} disagrees with vertex oracle on {alts:?}");
            if grid_dominated(x, alts, 12, weak) {
                ensure!(!r.undominated, "{mode:?}: grid finds a dominating mixture the LP missed on {alts:?}");
            }
            if r.undominated {
                let p = r.prior.as_ref().ok_or("no prior")?;
                ensure!(p.iter().sum::<Q>() == Q::one(), "prior does not sum to 1");
                ensure!(alts.iter().all(|a| dot(p, x) >= dot(p, a)), "prior does not support x");
                if weak {
                    ensure!(p.iter().all(Signed::is_positive), "weak prior lacks full support");
                }
            } else {
                dominated += 1;
                let mu = r.mixture.as_ref().ok_or("no mixture")?;
                let y = mixed(alts, mu);
                let ok = if weak { weakly_dominates(&y, x) } else { strictly_dominates(&y, x) };
                ensure!(ok, "{mode:?} mixture does not dominate on {alts:?}");
            }
        }
    }
    Ok(format!(
        "{} instances ({exhaustive} exhaustive), {dominated} dominated verdicts",
        instances.len()
    ))
}

fn split_certainty() -> Outcome {
    let a = assessment("split_certainty.json");
    let atoms = a.atoms().clone();
    ensure!(check_i(&a).pass, "I fails");
    let ie = check_ie(&a, DEFAULT_N_MAX);
    ensure!(!ie.pass, "IE passes");
    let family = ie.violations.iter().find(|v| v.formulas == ["(p | q)", "p", "q"]);
    let v = family.ok_or("no violation on the family {p, q} under p | q")?;
    ensure!(v.lhs == Q::one() && v.rhs == q(2, 1), "violation {} vs {}", v.lhs, v.rhs);
    // A model of the assessment where t(p ∧ q) ⊊ t(q), although q and
    // p ∧ q are equivalent under the theory {p}.
    let m = model("split_certainty_model.json");
    ensure!(represents(&m, &a).represents, "model does not represent π");
    let t = theory("split_certainty_theory.json", &atoms);
    let f = |s: &str| atoms.parse(s).unwrap();
    ensure!(t.implies(&f("q"), &f("p & q")), "q does not imply p ∧ q under {{p}}");
    let tpq = m.truth_of(&f("p & q")).unwrap();
    let tq = m.truth_of(&f("q")).unwrap();
    ensure!(tpq.is_subset(tq) && tpq != tq, "t(p ∧ q) is not a proper subset of t(q)");
    match subtheory_via_certainty(&a, &t) {
        Err(IdentifyError::Axiom(r)) if r.axiom == Axiom::InclusionExclusion => {
            Ok(format!("refused with {} IE violations", r.violations.len()))
        }
        Err(e) => Err(format!("refused for the wrong reason: {e}")),
        Ok(_) => Err("sub-theory via certainty was not refused".into()),
    }
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("Linda representation pair", linda_representations),
        ("Linda identification", linda_identification),
        ("voting sub-theory", voting_subtheory),
        ("duality suite", duality_suite),
        ("belief-function lift", belief_lift_suite),
        ("Choquet properties", choquet_suite),
        ("statement-to-state maps", statement_maps),
        ("rationalizability and additive dominance", rationalize_with_dominance),
        ("LP vs brute-force oracle", lp_vs_oracle),
        ("IE failure refuses certainty sub-theory", split_certainty),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match std::panic::catch_unwind(f) {
            Ok(Ok(note)) => println!("PASS criterion {:>2}: {name} ({note})", i + 1),
            Ok(Err(why)) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name}: {why}", i + 1);
            }
            Err(_) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name}: panicked", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
