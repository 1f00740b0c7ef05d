//! Subjective models of uncertainty `(Ω, t, λ)`.

mod choquet;
mod classify;
mod mobius;

pub use choquet::{choquet_with, represents, Representation, Residual};
pub use classify::{LambdaClassification, TruthClassification, Witness};
pub use mobius::{inverse_mobius, mobius, MobiusMass, SetFunction, MAX_POWERSET_STATES};

use crate::bits::{field_atoms, Event, ValuationSet};
use crate::logic::{sat_set, Atoms, Formula, LogicError};
use crate::rational::{format_q, in_unit_interval, parse_q, RationalError, Q};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    Rational(#[from] RationalError),
    #[error("invalid model JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("formula `{formula}`: {source}")]
    Formula {
        formula: String,
        #[source]
        source: LogicError,
    },
    #[error("model has no states")]
    NoStates,
    #[error("state label `{0}` is empty, repeated or contains `|`")]
    BadStateLabel(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("formula `{0}` given two truth sets")]
    DuplicateFormula(String),
    #[error("t({formula}) must be {expected}")]
    TruthConstant {
        formula: &'static str,
        expected: &'static str,
    },
    #[error("λ({event}) = {value}: {reason}")]
    BadLambda {
        event: String,
        value: String,
        reason: &'static str,
    },
    #[error("additive masses: {0}")]
    BadMasses(String),
    #[error("model file needs exactly one of `lambda` and `additive`")]
    AppraisalShape,
    #[error("no atom declaration available for the model's formulas")]
    AtomsMissing,
    #[error("λ is not defined on {0}")]
    Undefined(String),
    #[error("payoff vector has {got} entries for {expected} states")]
    PayoffLength { got: usize, expected: usize },
    #[error("payoff {0} is negative; shift payoffs to be non-negative first")]
    NegativePayoff(String),
    #[error("{0}")]
    TooLarge(String),
}

/// The likelihood appraisal `λ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Appraisal {
    /// Explicit values on finitely many events; `λ(∅)=0` and `λ(Ω)=1` are
    /// always present.
    Table(BTreeMap<Event, Q>),
    /// Probability masses per state; `λ` is defined on every event.
    Additive(Vec<Q>),
}

/// `t(φ)` for one stored formula.
#[derive(Debug, Clone)]
pub struct TruthEntry {
    pub formula: Formula,
    pub text: String,
    pub sat: ValuationSet,
    pub event: Event,
}

#[derive(Debug, Clone)]
pub struct SubjectiveModel {
    atoms: Atoms,
    states: Vec<String>,
    truth: Vec<TruthEntry>,
    by_text: HashMap<String, usize>,
    appraisal: Appraisal,
}

impl SubjectiveModel {
    /// `T ↦ Ω` and `F ↦ ∅` are added when absent and rejected when wrong.
    pub fn new(
        atoms: &Atoms,
        states: Vec<String>,
        truth: Vec<(Formula, Event)>,
        appraisal: Appraisal,
    ) -> Result<Self, ModelError> {
        if states.is_empty() {
            return Err(ModelError::NoStates);
        }
        for (i, s) in states.iter().enumerate() {
            if s.is_empty() || s.contains('|') || states[..i].contains(s) {
                return Err(ModelError::BadStateLabel(s.clone()));
            }
        }
        let n = states.len();
        let mut entries: Vec<TruthEntry> = Vec::with_capacity(truth.len() + 2);
        let mut by_text: HashMap<String, usize> = HashMap::new();
        for (formula, event) in truth {
            assert_eq!(event.len(), n, "truth set over the wrong state space");
            let text = formula.to_string();
            match formula {
                Formula::True if !event.is_full() => {
                    return Err(ModelError::TruthConstant {
                        formula: "T",
                        expected: "Ω",
                    })
                }
                Formula::False if !event.is_empty() => {
                    return Err(ModelError::TruthConstant {
                        formula: "F",
                        expected: "∅",
                    })
                }
                _ => {}
            }
            if by_text.insert(text.clone(), entries.len()).is_some() {
                return Err(ModelError::DuplicateFormula(text));
            }
            let sat = sat_set(&formula, atoms);
            entries.push(TruthEntry {
                formula,
                text,
                sat,
                event,
            });
        }
        for (formula, event) in [(Formula::True, Event::full(n)), (Formula::False, Event::empty(n))]
        {
            let text = formula.to_string();
            if !by_text.contains_key(&text) {
                by_text.insert(text.clone(), entries.len());
                let sat = sat_set(&formula, atoms);
                entries.push(TruthEntry {
                    formula,
                    text,
                    sat,
                    event,
                });
            }
        }
        entries.sort_by(|a, b| a.text.cmp(&b.text));
        by_text = entries
            .iter()
            .enumerate()
            .map(|(i, e)| (e.text.clone(), i))
            .collect();

        let appraisal = match appraisal {
            Appraisal::Table(mut table) => {
                let label = |e: &Event| event_label(&states, e);
                for (e, v) in &table {
                    assert_eq!(e.len(), n, "λ event over the wrong state space");
                    if !in_unit_interval(v) {
                        return Err(ModelError::BadLambda {
                            event: label(e),
                            value: format_q(v),
                            reason: "outside [0,1]",
                        });
                    }
                }
                for (e, expected, reason) in [
                    (Event::empty(n), Q::zero(), "λ(∅) must be 0"),
                    (Event::full(n), Q::one(), "λ(Ω) must be 1"),
                ] {
                    match table.get(&e) {
                        Some(v) if *v != expected => {
                            return Err(ModelError::BadLambda {
                                event: label(&e),
                                value: format_q(v),
                                reason,
                            })
                        }
                        Some(_) => {}
                        None => {
                            table.insert(e, expected);
                        }
                    }
                }
                Appraisal::Table(table)
            }
            Appraisal::Additive(masses) => {
                if masses.len() != n {
                    return Err(ModelError::BadMasses(format!(
                        "{} masses for {n} states",
                        masses.len()
                    )));
                }
                if let Some(m) = masses.iter().find(|m| m.is_negative()) {
                    return Err(ModelError::BadMasses(format!("negative mass {}", format_q(m))));
                }
                let total: Q = masses.iter().sum();
                if !total.is_one() {
                    return Err(ModelError::BadMasses(format!(
                        "masses sum to {}",
                        format_q(&total)
                    )));
                }
                Appraisal::Additive(masses)
            }
        };
        Ok(SubjectiveModel {
            atoms: atoms.clone(),
            states,
            truth: entries,
            by_text,
            appraisal,
        })
    }

    /// Convenience constructor from formula texts and state-label lists.
    pub fn from_labels(
        atoms: &Atoms,
        states: &[&str],
        truth: &[(&str, &[&str])],
        appraisal: Appraisal,
    ) -> Result<Self, ModelError> {
        let states: Vec<String> = states.iter().map(|s| s.to_string()).collect();
        let mut t = Vec::with_capacity(truth.len());
        for (text, labels) in truth {
            let f = atoms.parse(text).map_err(|source| ModelError::Formula {
                formula: text.to_string(),
                source,
            })?;
            t.push((f, parse_labels(&states, labels.iter().copied())?));
        }
        Self::new(atoms, states, t, appraisal)
    }

    pub fn atoms(&self) -> &Atoms {
        &self.atoms
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn truth_entries(&self) -> &[TruthEntry] {
        &self.truth
    }

    pub fn appraisal(&self) -> &Appraisal {
        &self.appraisal
    }

    pub fn is_additive(&self) -> bool {
        matches!(self.appraisal, Appraisal::Additive(_))
    }

    pub fn omega(&self) -> Event {
        Event::full(self.states.len())
    }

    /// Stored `t(φ)`, matched syntactically.
    pub fn truth_of(&self, f: &Formula) -> Option<&Event> {
        self.by_text.get(&f.to_string()).map(|&i| &self.truth[i].event)
    }

    /// Stored `t(φ)`, else the stored value of an equivalent formula.
    pub fn truth_semantic(&self, f: &Formula) -> Option<&Event> {
        self.truth_of(f).or_else(|| {
            let sat = sat_set(f, &self.atoms);
            self.truth.iter().find(|e| e.sat == sat).map(|e| &e.event)
        })
    }

    /// `t(φ)` for any formula: stored value, else the stored value of an
    /// equivalent formula, else built from the parts through the connectives.
    /// The last two steps are only meaningful when `t` is sound.
    pub fn truth_extended(&self, f: &Formula) -> Option<Event> {
        if let Some(e) = self.truth_semantic(f) {
            return Some(e.clone());
        }
        match f {
            Formula::True => Some(self.omega()),
            Formula::False => Some(Event::empty(self.states.len())),
            Formula::Atom(_) => None,
            Formula::Not(a) => Some(self.truth_extended(a)?.complement()),
            Formula::And(a, b) => {
                Some(self.truth_extended(a)?.intersection(&self.truth_extended(b)?))
            }
            Formula::Or(a, b) => Some(self.truth_extended(a)?.union(&self.truth_extended(b)?)),
        }
    }

    /// `λ(E)`, or `None` where the appraisal leaves it undefined.
    pub fn lambda(&self, e: &Event) -> Option<Q> {
        match &self.appraisal {
            Appraisal::Table(table) => table.get(e).cloned(),
            Appraisal::Additive(masses) => Some(e.iter().map(|i| &masses[i]).sum()),
        }
    }

    /// Atoms of `Σ`: the field generated by `t(Φ)` and the events carrying a
    /// λ value (all singletons for an additive appraisal).
    pub fn sigma_atoms(&self) -> Vec<Event> {
        let n = self.states.len();
        match &self.appraisal {
            Appraisal::Additive(_) => (0..n).map(|i| Event::from_indices(n, [i])).collect(),
            Appraisal::Table(table) => {
                let gens: Vec<Event> = self
                    .truth
                    .iter()
                    .map(|e| e.event.clone())
                    .chain(table.keys().cloned())
                    .collect();
                field_atoms(n, &gens)
            }
        }
    }

    pub fn event_label(&self, e: &Event) -> String {
        event_label(&self.states, e)
    }

    /// `λ` tabulated on all of `2^Ω`, failing where it is undefined.
    pub fn powerset_function(&self) -> Result<SetFunction, ModelError> {
        let n = self.states.len();
        if n > MAX_POWERSET_STATES {
            return Err(ModelError::TooLarge(format!(
                "{n} states; powerset operations support at most {MAX_POWERSET_STATES}"
            )));
        }
        let mut values = Vec::with_capacity(1 << n);
        for mask in 0u64..(1 << n) {
            let e = Event::from_mask(n, mask);
            values.push(
                self.lambda(&e)
                    .ok_or_else(|| ModelError::Undefined(self.event_label(&e)))?,
            );
        }
        Ok(SetFunction::new(n, values).expect("λ(∅) = 0 is enforced at construction"))
    }

    pub fn from_json(text: &str, atoms: Option<&Atoms>) -> Result<Self, ModelError> {
        let file: ModelFile = serde_json::from_str(text)?;
        file.into_model(atoms)
    }

    pub fn to_file(&self) -> ModelFile {
        let labels = |e: &Event| -> Vec<String> { e.iter().map(|i| self.states[i].clone()).collect() };
        let key = |e: &Event| labels(e).join("|");
        let (lambda, additive) = match &self.appraisal {
            Appraisal::Table(table) => (
                Some(table.iter().map(|(e, v)| (key(e), format_q(v))).collect()),
                None,
            ),
            Appraisal::Additive(masses) => (
                None,
                Some(
                    self.states
                        .iter()
                        .zip(masses)
                        .map(|(s, m)| (s.clone(), format_q(m)))
                        .collect(),
                ),
            ),
        };
        ModelFile {
            atoms: Some(self.atoms.names().to_vec()),
            states: self.states.clone(),
            t: self
                .truth
                .iter()
                .map(|e| (e.text.clone(), labels(&e.event)))
                .collect(),
            lambda,
            additive,
        }
    }
}

/// `{w1,w2}` style label, states in model order.
pub fn event_label(states: &[String], e: &Event) -> String {
    let names: Vec<&str> = e.iter().map(|i| states[i].as_str()).collect();
    format!("{{{}}}", names.join(","))
}

fn parse_labels<'a>(
    states: &[String],
    labels: impl IntoIterator<Item = &'a str>,
) -> Result<Event, ModelError> {
    let mut e = Event::empty(states.len());
    for label in labels {
        let label = label.trim();
        let i = states
            .iter()
            .position(|s| s == label)
            .ok_or_else(|| ModelError::UnknownState(label.to_string()))?;
        e.insert(i);
    }
    Ok(e)
}

/// On-disk model: `t` maps formula text to state labels, `lambda` maps
/// `|`-joined state labels (empty string for ∅) to `"num/den"`, and
/// `additive` gives per-state masses instead of `lambda`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub atoms: Option<Vec<String>>,
    pub states: Vec<String>,
    pub t: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub additive: Option<BTreeMap<String, String>>,
}

impl ModelFile {
    pub fn into_model(self, atoms: Option<&Atoms>) -> Result<SubjectiveModel, ModelError> {
        let atoms = match (&self.atoms, atoms) {
            (Some(names), _) => Atoms::new(names)?,
            (None, Some(a)) => a.clone(),
            (None, None) => return Err(ModelError::AtomsMissing),
        };
        let states = self.states;
        let mut truth = Vec::with_capacity(self.t.len());
        for (text, labels) in &self.t {
            let f = atoms.parse(text).map_err(|source| ModelError::Formula {
                formula: text.clone(),
                source,
            })?;
            truth.push((f, parse_labels(&states, labels.iter().map(String::as_str))?));
        }
        let appraisal = match (self.lambda, self.additive) {
            (Some(table), None) => {
                let mut out = BTreeMap::new();
                for (key, value) in &table {
                    let labels = key.split('|').filter(|s| !s.trim().is_empty());
                    out.insert(parse_labels(&states, labels)?, parse_q(value)?);
                }
                Appraisal::Table(out)
            }
            (None, Some(masses)) => {
                let mut out = vec![Q::zero(); states.len()];
                for (label, value) in &masses {
                    let e = parse_labels(&states, [label.as_str()])?;
                    let i = e.iter().next().expect("one label gives one state");
                    out[i] = parse_q(value)?;
                }
                Appraisal::Additive(out)
            }
            _ => return Err(ModelError::AppraisalShape),
        };
        SubjectiveModel::new(&atoms, states, truth, appraisal)
    }
}
