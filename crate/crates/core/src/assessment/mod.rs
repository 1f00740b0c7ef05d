//! Likelihood assessments `π: Φ → [0,1]` over a finite formula universe,
//! bets evaluated against them, and the axiom checkers.

mod axioms;
mod bet;

pub use axioms::{
    check_a, check_e, check_i, check_ie, check_nt, check_s_i, Axiom, AxiomReport, Untestable,
    Violation, DEFAULT_N_MAX,
};
pub use bet::{bet_value, Bet};

use crate::bits::ValuationSet;
use crate::logic::{sat_set, Atoms, Formula, LogicError};
use crate::rational::{format_q, in_unit_interval, parse_q, RationalError, Q};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AssessmentError {
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    Rational(#[from] RationalError),
    #[error("formula `{formula}`: {source}")]
    Formula {
        formula: String,
        #[source]
        source: LogicError,
    },
    #[error("π({formula}) = {value} lies outside [0,1]")]
    OutOfRange { formula: String, value: String },
    #[error("formula `{0}` listed twice")]
    Duplicate(String),
    #[error("formula `{0}` is not in the assessed universe")]
    NotInUniverse(String),
    #[error("invalid bet: {0}")]
    InvalidBet(String),
    #[error("invalid assessment JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// One assessed formula together with its cached valuation set.
#[derive(Debug, Clone)]
pub struct Entry {
    pub formula: Formula,
    pub text: String,
    pub sat: ValuationSet,
    pub pi: Q,
}

/// `π` on a finite universe `Φ`. Entries are kept in canonical text order
/// so every report built from them is deterministic.
#[derive(Debug, Clone)]
pub struct Assessment {
    atoms: Atoms,
    entries: Vec<Entry>,
    by_text: HashMap<String, usize>,
    by_sat: HashMap<ValuationSet, usize>,
}

impl Assessment {
    /// `T` and `F` are added with values 1 and 0 when absent.
    pub fn new(atoms: &Atoms, values: Vec<(Formula, Q)>) -> Result<Self, AssessmentError> {
        let mut entries: Vec<Entry> = Vec::with_capacity(values.len() + 2);
        let mut seen: HashMap<String, ()> = HashMap::new();
        for (formula, pi) in values {
            let text = formula.to_string();
            if seen.insert(text.clone(), ()).is_some() {
                return Err(AssessmentError::Duplicate(text));
            }
            if !in_unit_interval(&pi) {
                return Err(AssessmentError::OutOfRange {
                    formula: text,
                    value: format_q(&pi),
                });
            }
            let sat = sat_set(&formula, atoms);
            entries.push(Entry {
                formula,
                text,
                sat,
                pi,
            });
        }
        for (formula, pi) in [(Formula::True, Q::one()), (Formula::False, Q::zero())] {
            let text = formula.to_string();
            if !seen.contains_key(&text) {
                let sat = sat_set(&formula, atoms);
                entries.push(Entry {
                    formula,
                    text,
                    sat,
                    pi,
                });
            }
        }
        entries.sort_by(|a, b| a.text.cmp(&b.text));
        let by_text = entries
            .iter()
            .enumerate()
            .map(|(i, e)| (e.text.clone(), i))
            .collect();
        let mut by_sat = HashMap::new();
        for (i, e) in entries.iter().enumerate() {
            by_sat.entry(e.sat.clone()).or_insert(i);
        }
        Ok(Assessment {
            atoms: atoms.clone(),
            entries,
            by_text,
            by_sat,
        })
    }

    /// Builds `π` from `(formula text, value)` pairs.
    pub fn from_texts<S: AsRef<str>>(
        atoms: &Atoms,
        values: &[(S, Q)],
    ) -> Result<Self, AssessmentError> {
        let mut parsed = Vec::with_capacity(values.len());
        for (text, pi) in values {
            let text = text.as_ref();
            let f = atoms
                .parse(text)
                .map_err(|source| AssessmentError::Formula {
                    formula: text.to_string(),
                    source,
                })?;
            parsed.push((f, pi.clone()));
        }
        Self::new(atoms, parsed)
    }

    pub fn atoms(&self) -> &Atoms {
        &self.atoms
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn index_of(&self, f: &Formula) -> Option<usize> {
        self.by_text.get(&f.to_string()).copied()
    }

    pub fn pi(&self, f: &Formula) -> Option<&Q> {
        self.index_of(f).map(|i| &self.entries[i].pi)
    }

    /// First member of `Φ` (canonical order) whose valuation set is `sat`.
    pub fn index_by_sat(&self, sat: &ValuationSet) -> Option<usize> {
        self.by_sat.get(sat).copied()
    }

    /// One index per semantic class of `Φ`, each the first in canonical order.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps: Vec<usize> = self.by_sat.values().copied().collect();
        reps.sort_unstable();
        reps
    }

    pub fn from_json(text: &str) -> Result<Self, AssessmentError> {
        let file: AssessmentFile = serde_json::from_str(text)?;
        file.into_assessment()
    }

    pub fn to_file(&self) -> AssessmentFile {
        AssessmentFile {
            atoms: self.atoms.names().to_vec(),
            pi: self
                .entries
                .iter()
                .map(|e| (e.text.clone(), format_q(&e.pi)))
                .collect(),
        }
    }
}

/// On-disk form: `{"atoms": [...], "pi": {"<formula>": "num/den"}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssessmentFile {
    pub atoms: Vec<String>,
    pub pi: BTreeMap<String, String>,
}

impl AssessmentFile {
    pub fn into_assessment(self) -> Result<Assessment, AssessmentError> {
        let atoms = Atoms::new(&self.atoms)?;
        let mut values = Vec::with_capacity(self.pi.len());
        for (text, value) in &self.pi {
            values.push((text.as_str(), parse_q(value)?));
        }
        Assessment::from_texts(&atoms, &values)
    }
}
