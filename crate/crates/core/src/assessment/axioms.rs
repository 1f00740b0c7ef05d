//! Axiom checkers. Every check is relative to the finite universe `Φ`:
//! instances that need a formula outside `Φ` are counted as untestable
//! instead of being passed.

use super::Assessment;
use crate::bits::ValuationSet;
use crate::logic::Theory;
use crate::rational::{serde_q, Q};
use num_traits::{One, Zero};
use serde::Serialize;
use std::fmt;

pub const DEFAULT_N_MAX: usize = 3;

/// Untestable instances beyond this many are only counted.
const UNTESTABLE_SAMPLE: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axiom {
    #[serde(rename = "NT")]
    Nontriviality,
    #[serde(rename = "E")]
    Equivalence,
    #[serde(rename = "I")]
    Implication,
    #[serde(rename = "IE")]
    InclusionExclusion,
    #[serde(rename = "A")]
    Additivity,
    #[serde(rename = "S-I")]
    TheoryImplication,
}

impl Axiom {
    pub fn id(self) -> &'static str {
        match self {
            Axiom::Nontriviality => "NT",
            Axiom::Equivalence => "E",
            Axiom::Implication => "I",
            Axiom::InclusionExclusion => "IE",
            Axiom::Additivity => "A",
            Axiom::TheoryImplication => "S-I",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Nontriviality => "Non-Triviality",
            Axiom::Equivalence => "Equivalence",
            Axiom::Implication => "Implication",
            Axiom::InclusionExclusion => "Inclusion/Exclusion",
            Axiom::Additivity => "Additivity",
            Axiom::TheoryImplication => "Theory-Implication",
        }
    }

    /// The inequality a violation breaks.
    pub fn rule(self) -> &'static str {
        match self {
            Axiom::Nontriviality => "π(T) = 1, π(F) = 0 and 0 ≤ π(φ) ≤ 1",
            Axiom::Equivalence => "φ ⟺ ψ requires π(φ) = π(ψ)",
            Axiom::Implication => "φ ⟹ ψ requires π(ψ) ≥ π(φ)",
            Axiom::InclusionExclusion => {
                "φ_1..φ_k ⟹ ψ requires π(ψ) + Σ_{|I| even} π(φ_I) ≥ Σ_{|I| odd} π(φ_I)"
            }
            Axiom::Additivity => "φ ∧ φ′ ⟹ F requires π(φ) + π(φ′) = π(φ ∨ φ′)",
            Axiom::TheoryImplication => "φ ⟹_T ψ requires π(ψ) ≥ π(φ)",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Formulas involved, in the order the rule names them.
    pub formulas: Vec<String>,
    #[serde(with = "serde_q")]
    pub lhs: Q,
    #[serde(with = "serde_q")]
    pub rhs: Q,
    pub rule: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Untestable {
    pub formulas: Vec<String>,
    pub missing: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub pass: bool,
    pub violations: Vec<Violation>,
    pub untestable_count: usize,
    /// The first few untestable instances.
    pub untestable: Vec<Untestable>,
}

impl AxiomReport {
    fn new(axiom: Axiom) -> Self {
        AxiomReport {
            axiom,
            pass: true,
            violations: Vec::new(),
            untestable_count: 0,
            untestable: Vec::new(),
        }
    }

    fn violate(&mut self, formulas: Vec<String>, lhs: Q, rhs: Q) {
        self.pass = false;
        self.violations.push(Violation {
            formulas,
            lhs,
            rhs,
            rule: self.axiom.rule(),
        });
    }

    fn untestable(&mut self, formulas: Vec<String>, missing: String) {
        self.untestable_count += 1;
        if self.untestable.len() < UNTESTABLE_SAMPLE {
            self.untestable.push(Untestable { formulas, missing });
        }
    }
}

pub fn check_nt(a: &Assessment) -> AxiomReport {
    let mut report = AxiomReport::new(Axiom::Nontriviality);
    for e in a.entries() {
        let out_of_range = e.pi < Q::zero() || e.pi > Q::one();
        let bad_constant = match e.formula {
            crate::logic::Formula::True => !e.pi.is_one(),
            crate::logic::Formula::False => !e.pi.is_zero(),
            _ => false,
        };
        if out_of_range || bad_constant {
            let expected = match e.formula {
                crate::logic::Formula::True => Q::one(),
                crate::logic::Formula::False => Q::zero(),
                _ => e.pi.clone().max(Q::zero()).min(Q::one()),
            };
            report.violate(vec![e.text.clone()], e.pi.clone(), expected);
        }
    }
    report
}

pub fn check_e(a: &Assessment) -> AxiomReport {
    let mut report = AxiomReport::new(Axiom::Equivalence);
    let es = a.entries();
    for i in 0..es.len() {
        for j in i + 1..es.len() {
            if es[i].sat == es[j].sat && es[i].pi != es[j].pi {
                report.violate(
                    vec![es[i].text.clone(), es[j].text.clone()],
                    es[i].pi.clone(),
                    es[j].pi.clone(),
                );
            }
        }
    }
    report
}

/// Pairs `(φ, ψ)` with `rel(sat φ, sat ψ)` and `π(ψ) < π(φ)`.
fn check_pairwise(
    a: &Assessment,
    axiom: Axiom,
    rel: impl Fn(&ValuationSet, &ValuationSet) -> bool,
) -> AxiomReport {
    let mut report = AxiomReport::new(axiom);
    let es = a.entries();
    for (i, phi) in es.iter().enumerate() {
        for (j, psi) in es.iter().enumerate() {
            if i != j && rel(&phi.sat, &psi.sat) && psi.pi < phi.pi {
                report.violate(
                    vec![phi.text.clone(), psi.text.clone()],
                    psi.pi.clone(),
                    phi.pi.clone(),
                );
            }
        }
    }
    report
}

pub fn check_i(a: &Assessment) -> AxiomReport {
    check_pairwise(a, Axiom::Implication, |f, g| f.is_subset(g))
}

pub fn check_s_i(a: &Assessment, theory: &Theory) -> AxiomReport {
    check_pairwise(a, Axiom::TheoryImplication, |f, g| {
        theory.implies_sets(f, g)
    })
}

/// Total-monotonicity inequality for every `ψ` and every family of at most
/// `n_max` formulas implying it. Families range over one representative per
/// equivalence class of `Φ`; disagreements inside a class are `check_e`'s
/// business. Conjunctions `φ_I` are looked up semantically.
pub fn check_ie(a: &Assessment, n_max: usize) -> AxiomReport {
    let mut report = AxiomReport::new(Axiom::InclusionExclusion);
    let es = a.entries();
    let reps = a.representatives();
    let mut family: Vec<usize> = Vec::new();
    for &psi in &reps {
        let below: Vec<usize> = reps
            .iter()
            .copied()
            .filter(|&f| es[f].sat.is_subset(&es[psi].sat))
            .collect();
        for k in 1..=n_max.min(below.len()) {
            for_each_combination(below.len(), k, &mut |combo| {
                family.clear();
                family.extend(combo.iter().map(|&c| below[c]));
                test_family(a, psi, &family, &mut report);
            });
        }
    }
    report
}

fn test_family(a: &Assessment, psi: usize, family: &[usize], report: &mut AxiomReport) {
    let es = a.entries();
    let k = family.len();
    let mut odd = Q::zero();
    let mut even = Q::zero();
    for mask in 1u32..(1 << k) {
        let mut inter = es[psi].sat.clone();
        for (bit, &f) in family.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                inter = inter.intersection(&es[f].sat);
            }
        }
        let Some(idx) = a.index_by_sat(&inter) else {
            let names: Vec<&str> = family
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask & (1 << bit) != 0)
                .map(|(_, &f)| es[f].text.as_str())
                .collect();
            let mut formulas = vec![es[psi].text.clone()];
            formulas.extend(family.iter().map(|&f| es[f].text.clone()));
            report.untestable(formulas, format!("conjunction of {}", names.join(", ")));
            return;
        };
        if mask.count_ones() % 2 == 1 {
            odd += &es[idx].pi;
        } else {
            even += &es[idx].pi;
        }
    }
    let lhs = &es[psi].pi + even;
    if lhs < odd {
        let mut formulas = vec![es[psi].text.clone()];
        formulas.extend(family.iter().map(|&f| es[f].text.clone()));
        report.violate(formulas, lhs, odd);
    }
}

/// Calls `visit` with each `k`-subset of `0..n` in lexicographic order.
pub(crate) fn for_each_combination(n: usize, k: usize, visit: &mut impl FnMut(&[usize])) {
    fn rec(
        start: usize,
        n: usize,
        k: usize,
        cur: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if cur.len() == k {
            visit(cur);
            return;
        }
        let need = k - cur.len();
        for i in start..=n - need {
            cur.push(i);
            rec(i + 1, n, k, cur, visit);
            cur.pop();
        }
    }
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), visit);
    }
}

/// Disjoint pairs `φ, φ′` whose disjunction (up to equivalence) is in `Φ`.
pub fn check_a(a: &Assessment) -> AxiomReport {
    let mut report = AxiomReport::new(Axiom::Additivity);
    let es = a.entries();
    for i in 0..es.len() {
        for j in i + 1..es.len() {
            if !es[i].sat.is_disjoint(&es[j].sat) {
                continue;
            }
            let names = vec![es[i].text.clone(), es[j].text.clone()];
            match a.index_by_sat(&es[i].sat.union(&es[j].sat)) {
                None => report.untestable(
                    names,
                    format!("disjunction of {}, {}", es[i].text, es[j].text),
                ),
                Some(u) => {
                    let sum = &es[i].pi + &es[j].pi;
                    if sum != es[u].pi {
                        let mut formulas = names;
                        formulas.push(es[u].text.clone());
                        report.violate(formulas, sum, es[u].pi.clone());
                    }
                }
            }
        }
    }
    report
}
