//! Builders that turn an assessment (or a model) into a representing
//! subjective model with prescribed properties.

use crate::assessment::{check_a, check_e, check_i, check_nt, Assessment, AxiomReport};
use crate::bits::{atom_mask, field_atoms, union_of_atoms, Event};
use crate::linalg::{project_onto_affine, solve, AffineSolution};
use crate::lp::{Lp, LpOutcome, Relation};
use crate::logic::{Atoms, Formula};
use crate::model::{represents, Appraisal, ModelError, SubjectiveModel, Witness};
use crate::rational::{display_q, format_q, Q};
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Coordinates of the product model; it has `2^k` states.
pub const MAX_PRODUCT_COORDINATES: usize = 16;
/// Atoms of the field tabulated by the valuation-space builders.
pub const MAX_FIELD_ATOMS: usize = 16;
/// States of a model whose nonempty subsets become the lifted states.
pub const MAX_LIFT_STATES: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    Product,
    CanonicalSound,
    IntervalAdditive,
    BeliefLift,
    AdditiveSound,
}

impl Construction {
    pub fn id(self) -> &'static str {
        match self {
            Construction::Product => "product",
            Construction::CanonicalSound => "canonical-sound",
            Construction::IntervalAdditive => "interval-additive",
            Construction::BeliefLift => "belief-lift",
            Construction::AdditiveSound => "additive-sound",
        }
    }

    pub fn all() -> [Construction; 5] {
        [
            Construction::Product,
            Construction::CanonicalSound,
            Construction::IntervalAdditive,
            Construction::BeliefLift,
            Construction::AdditiveSound,
        ]
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl std::str::FromStr for Construction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Construction::all()
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| format!("unknown construction `{s}`"))
    }
}

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("axiom {} fails ({} violation(s))", .0.axiom, .0.violations.len())]
    Axiom(AxiomReport),
    #[error("{0}")]
    TooLarge(String),
    #[error("truth valuation is not sound")]
    NotSound(Vec<Witness>),
    #[error("λ is not a belief function: Möbius mass {mass} on {event}")]
    NegativeMass { event: String, mass: String },
    #[error("universe under-determined: {0}")]
    UnderDetermined(String),
    #[error("no additive λ on the generated field agrees with π")]
    NoAdditiveExtension,
    #[error("completed λ has a negative mass on {0}")]
    InfeasibleCompletion(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("postcondition failed: {0}")]
    Postcondition(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone)]
pub struct BuildOutcome {
    pub model: SubjectiveModel,
    pub construction: Construction,
    /// Postconditions evaluated on the built model.
    pub certificate: Vec<Check>,
}

impl BuildOutcome {
    fn new(model: SubjectiveModel, construction: Construction) -> Self {
        BuildOutcome {
            model,
            construction,
            certificate: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, holds: bool) {
        self.certificate.push(Check {
            name: name.into(),
            holds,
        });
    }

    /// Records a check that the construction guarantees.
    fn require(&mut self, name: &str, holds: bool) -> Result<(), BuildError> {
        self.check(name, holds);
        if holds {
            Ok(())
        } else {
            Err(BuildError::Postcondition(name.to_string()))
        }
    }

    fn require_represents(&mut self, a: &Assessment) -> Result<(), BuildError> {
        let r = represents(&self.model, a);
        self.require("represents π", r.represents)
    }

    pub fn holds(&self, name: &str) -> Option<bool> {
        self.certificate
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.holds)
    }
}

fn require_axiom(report: AxiomReport) -> Result<(), BuildError> {
    if report.pass {
        Ok(())
    } else {
        Err(BuildError::Axiom(report))
    }
}

fn universe(a: &Assessment) -> Vec<Formula> {
    a.entries().iter().map(|e| e.formula.clone()).collect()
}

/// Label of valuation `v`: its literals, e.g. `t&!f`.
pub fn valuation_label(atoms: &Atoms, v: usize) -> String {
    if atoms.is_empty() {
        return "T".to_string();
    }
    atoms
        .names()
        .iter()
        .enumerate()
        .map(|(j, name)| {
            if v & (1 << j) != 0 {
                name.clone()
            } else {
                format!("!{name}")
            }
        })
        .collect::<Vec<_>>()
        .join("&")
}

fn valuation_states(atoms: &Atoms) -> Vec<String> {
    (0..atoms.valuation_count())
        .map(|v| valuation_label(atoms, v))
        .collect()
}

/// One independent binary coordinate per non-constant formula of `Φ`, with
/// the product measure whose marginals are `π`.
pub fn build_product_model(a: &Assessment) -> Result<BuildOutcome, BuildError> {
    require_axiom(check_nt(a))?;
    let coords: Vec<&crate::assessment::Entry> = a
        .entries()
        .iter()
        .filter(|e| !e.formula.is_constant())
        .collect();
    let k = coords.len();
    if k > MAX_PRODUCT_COORDINATES {
        return Err(BuildError::TooLarge(format!(
            "{k} formulas; the product model supports at most {MAX_PRODUCT_COORDINATES}"
        )));
    }
    let n = 1usize << k;
    let states: Vec<String> = (0..n)
        .map(|s| {
            let bits: String = (0..k)
                .map(|j| if s & (1 << j) != 0 { '1' } else { '0' })
                .collect();
            format!("s{bits}")
        })
        .collect();
    let masses: Vec<Q> = (0..n)
        .map(|s| {
            coords
                .iter()
                .enumerate()
                .map(|(j, e)| {
                    if s & (1 << j) != 0 {
                        e.pi.clone()
                    } else {
                        Q::one() - &e.pi
                    }
                })
                .product()
        })
        .collect();
    let truth = coords
        .iter()
        .enumerate()
        .map(|(j, e)| {
            (
                e.formula.clone(),
                Event::from_indices(n, (0..n).filter(|s| s & (1 << j) != 0)),
            )
        })
        .collect();
    let model = SubjectiveModel::new(a.atoms(), states, truth, Appraisal::Additive(masses))?;
    let mut out = BuildOutcome::new(model, Construction::Product);
    out.require("λ additive", out.model.is_additive())?;
    out.require_represents(a)?;
    let exact = out.model.classify_truth(&universe(a)).exact;
    out.check("t exact", exact);
    Ok(out)
}

/// Field atoms of the valuation space generated by `sat(Φ)`.
fn valuation_field(a: &Assessment) -> Result<Vec<Event>, BuildError> {
    let gens: Vec<Event> = a.entries().iter().map(|e| e.sat.clone()).collect();
    let atoms = field_atoms(a.atoms().valuation_count(), &gens);
    if atoms.len() > MAX_FIELD_ATOMS {
        return Err(BuildError::TooLarge(format!(
            "generated field has {} atoms; at most {MAX_FIELD_ATOMS} are tabulated",
            atoms.len()
        )));
    }
    Ok(atoms)
}

/// States are the valuations of the atoms, `t = sat`, and `λ(sat φ) = π(φ)`.
/// Events of the generated field outside `sat(Φ)` get the inner extension
/// `max{π(φ) : sat φ ⊆ E}`.
pub fn build_canonical_sound(a: &Assessment) -> Result<BuildOutcome, BuildError> {
    require_axiom(check_nt(a))?;
    require_axiom(check_e(a))?;
    let atoms = valuation_field(a)?;
    let n = a.atoms().valuation_count();
    let mut table = BTreeMap::new();
    for mask in 0u64..(1 << atoms.len()) {
        let e = union_of_atoms(n, &atoms, mask);
        let value = match a.index_by_sat(&e) {
            Some(i) => a.entries()[i].pi.clone(),
            None if e.is_empty() => Q::zero(),
            None if e.is_full() => Q::one(),
            None => a
                .entries()
                .iter()
                .filter(|x| x.sat.is_subset(&e))
                .map(|x| x.pi.clone())
                .max()
                .unwrap_or_else(Q::zero),
        };
        table.insert(e, value);
    }
    let truth = a
        .entries()
        .iter()
        .map(|e| (e.formula.clone(), e.sat.clone()))
        .collect();
    let model = SubjectiveModel::new(
        a.atoms(),
        valuation_states(a.atoms()),
        truth,
        Appraisal::Table(table),
    )?;
    let mut out = BuildOutcome::new(model, Construction::CanonicalSound);
    let sound = out.model.classify_truth(&universe(a)).sound;
    out.require("t sound", sound)?;
    out.require_represents(a)?;
    let lambda = out.model.classify_lambda()?;
    if check_i(a).pass {
        out.require("λ monotone on Σ", lambda.monotone)?;
    } else {
        out.check("λ monotone on Σ", lambda.monotone);
    }
    out.check("λ additive on Σ", lambda.additive);
    Ok(out)
}

/// Partition of `[0,1]` at the distinct values of `π`; `t(φ)` is the union
/// of the cells inside `[0, π(φ)]` and `λ` is length.
pub fn build_interval_additive(a: &Assessment) -> Result<BuildOutcome, BuildError> {
    require_axiom(check_nt(a))?;
    require_axiom(check_i(a))?;
    let mut cuts: Vec<Q> = a
        .entries()
        .iter()
        .map(|e| e.pi.clone())
        .filter(|v| v.is_positive())
        .collect();
    cuts.sort();
    cuts.dedup();
    let n = cuts.len();
    let mut states = Vec::with_capacity(n);
    let mut masses = Vec::with_capacity(n);
    let mut prev = Q::zero();
    for c in &cuts {
        states.push(format!("({},{}]", display_q(&prev), display_q(c)));
        masses.push(c - &prev);
        prev = c.clone();
    }
    let truth = a
        .entries()
        .iter()
        .map(|e| {
            (
                e.formula.clone(),
                Event::from_indices(n, (0..n).filter(|&j| cuts[j] <= e.pi)),
            )
        })
        .collect();
    let model = SubjectiveModel::new(a.atoms(), states, truth, Appraisal::Additive(masses))?;
    let mut out = BuildOutcome::new(model, Construction::IntervalAdditive);
    out.require("λ additive", out.model.is_additive())?;
    let monotone = out.model.classify_truth(&universe(a)).monotone;
    out.require("t monotone", monotone)?;
    out.require_represents(a)?;
    Ok(out)
}

/// States are the nonempty subsets `A` of `Ω`, weighted by the Möbius mass
/// of `λ`, and `t(φ) = {A : A ⊆ t′(φ)}`. Null states are kept.
pub fn build_belief_lift(m: &SubjectiveModel) -> Result<BuildOutcome, BuildError> {
    let n = m.state_count();
    if n > MAX_LIFT_STATES {
        return Err(BuildError::TooLarge(format!(
            "{n} states; the lift supports at most {MAX_LIFT_STATES}"
        )));
    }
    let truth_flags = m.classify_truth_stored();
    if !truth_flags.sound {
        return Err(BuildError::NotSound(truth_flags.witnesses));
    }
    let masses = m.mobius()?;
    if let Some(mask) = masses.first_negative() {
        return Err(BuildError::NegativeMass {
            event: m.event_label(&Event::from_mask(n, mask)),
            mass: format_q(masses.mass(mask)),
        });
    }
    let subsets: Vec<u64> = (1u64..(1 << n)).collect();
    let states: Vec<String> = subsets
        .iter()
        .map(|&s| m.event_label(&Event::from_mask(n, s)))
        .collect();
    let lifted_masses: Vec<Q> = subsets.iter().map(|&s| masses.mass(s).clone()).collect();
    let truth: Vec<(Formula, Event)> = m
        .truth_entries()
        .iter()
        .map(|e| {
            let old = e.event.as_mask();
            let inside = subsets
                .iter()
                .enumerate()
                .filter(|(_, &s)| s & !old == 0)
                .map(|(i, _)| i);
            (e.formula.clone(), Event::from_indices(subsets.len(), inside))
        })
        .collect();
    let lifted = SubjectiveModel::new(m.atoms(), states, truth, Appraisal::Additive(lifted_masses))?;
    let mut out = BuildOutcome::new(lifted, Construction::BeliefLift);
    out.require("λ additive", out.model.is_additive())?;
    let preserved = m.truth_entries().iter().all(|e| {
        out.model
            .truth_of(&e.formula)
            .and_then(|t| out.model.lambda(t))
            == m.lambda(&e.event)
    });
    out.require("λ(t(φ)) preserved", preserved)?;
    let flags = out.model.classify_truth_stored();
    out.require("t exact", flags.exact)?;
    out.require("t ∧-distributive", flags.and_distributive)?;
    Ok(out)
}

/// How [`build_additive_sound`] treats a universe that leaves some field
/// atom's mass undetermined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Completion {
    #[default]
    Refuse,
    /// Project the size-proportional uniform assignment onto the solution
    /// set; if that leaves a negative mass, take the solution maximizing
    /// the smallest mass instead. Not canonical.
    NearestUniform,
}

/// `t = sat` on the valuations with the additive `λ` on the generated field
/// that agrees with `π`.
pub fn build_additive_sound(
    a: &Assessment,
    completion: Completion,
) -> Result<BuildOutcome, BuildError> {
    require_axiom(check_nt(a))?;
    require_axiom(check_a(a))?;
    require_axiom(check_i(a))?;
    let atoms = valuation_field(a)?;
    let k = atoms.len();
    let n = a.atoms().valuation_count();
    let reps = a.representatives();
    let rows: Vec<Vec<Q>> = reps
        .iter()
        .map(|&i| {
            let mask = atom_mask(&a.entries()[i].sat, &atoms).expect("sat(Φ) generates the field");
            (0..k)
                .map(|j| if mask & (1 << j) != 0 { Q::one() } else { Q::zero() })
                .collect()
        })
        .collect();
    let rhs: Vec<Q> = reps.iter().map(|&i| a.entries()[i].pi.clone()).collect();
    let (masses, completed) = match solve(&rows, &rhs, k) {
        AffineSolution::Inconsistent => return Err(BuildError::NoAdditiveExtension),
        AffineSolution::Unique(x) => (x, false),
        AffineSolution::Underdetermined { rank, free } => match completion {
            Completion::Refuse => {
                let names: Vec<String> = free
                    .iter()
                    .map(|&j| a.atoms().formula_for(&atoms[j]).to_string())
                    .collect();
                return Err(BuildError::UnderDetermined(format!(
                    "{} field atoms but rank {rank}; free: {}",
                    k,
                    names.join(", ")
                )));
            }
            Completion::NearestUniform => {
                let reference: Vec<Q> = atoms
                    .iter()
                    .map(|e| Q::new((e.count() as i64).into(), (n as i64).into()))
                    .collect();
                let x = project_onto_affine(&rows, &rhs, &reference)
                    .ok_or(BuildError::NoAdditiveExtension)?;
                if x.iter().any(Signed::is_negative) {
                    (max_min_masses(&rows, &rhs, k).ok_or(BuildError::NoAdditiveExtension)?, true)
                } else {
                    (x, true)
                }
            }
        },
    };
    if let Some(j) = masses.iter().position(|m| m.is_negative()) {
        let at = a.atoms().formula_for(&atoms[j]).to_string();
        return Err(if completed {
            BuildError::InfeasibleCompletion(at)
        } else {
            BuildError::NoAdditiveExtension
        });
    }
    let mut table = BTreeMap::new();
    for mask in 0u64..(1 << k) {
        let value: Q = (0..k)
            .filter(|j| mask & (1 << j) != 0)
            .map(|j| &masses[j])
            .sum();
        table.insert(union_of_atoms(n, &atoms, mask), value);
    }
    let truth = a
        .entries()
        .iter()
        .map(|e| (e.formula.clone(), e.sat.clone()))
        .collect();
    let model = SubjectiveModel::new(
        a.atoms(),
        valuation_states(a.atoms()),
        truth,
        Appraisal::Table(table),
    )?;
    let mut out = BuildOutcome::new(model, Construction::AdditiveSound);
    let sound = out.model.classify_truth(&universe(a)).sound;
    out.require("t sound", sound)?;
    let additive = out.model.classify_lambda()?.additive;
    out.require("λ additive on Σ", additive)?;
    out.require_represents(a)?;
    out.check("canonical (no completion)", !completed);
    Ok(out)
}

/// Nonnegative solution of `rows·x = rhs` with the largest smallest entry.
fn max_min_masses(rows: &[Vec<Q>], rhs: &[Q], k: usize) -> Option<Vec<Q>> {
    // Variables: x_1..x_k, then the floor.
    let mut objective = vec![Q::zero(); k + 1];
    objective[k] = Q::one();
    let mut lp = Lp::new(objective);
    for (row, b) in rows.iter().zip(rhs) {
        let mut r = row.clone();
        r.push(Q::zero());
        lp.push(r, Relation::Eq, b.clone());
    }
    for j in 0..k {
        let mut r = vec![Q::zero(); k + 1];
        r[j] = Q::one();
        r[k] = -Q::one();
        lp.push(r, Relation::Ge, Q::zero());
    }
    match lp.solve() {
        LpOutcome::Optimal { x, .. } => Some(x[..k].to_vec()),
        _ => None,
    }
}

/// Runs the named construction on an assessment. The belief lift starts
/// from the canonical sound model.
pub fn build(
    a: &Assessment,
    construction: Construction,
    completion: Completion,
) -> Result<BuildOutcome, BuildError> {
    match construction {
        Construction::Product => build_product_model(a),
        Construction::CanonicalSound => build_canonical_sound(a),
        Construction::IntervalAdditive => build_interval_additive(a),
        Construction::BeliefLift => build_belief_lift(&build_canonical_sound(a)?.model),
        Construction::AdditiveSound => build_additive_sound(a, completion),
    }
}
