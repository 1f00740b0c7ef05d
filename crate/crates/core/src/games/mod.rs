//! Strategies as statement-contingent payoffs: the maps into state-space
//! acts, maximal models, and rationalizability by Choquet expected payoff.

mod dominance;
mod maps;
mod rationalize;

pub use dominance::{pointwise_undominated, DominanceMode, DominanceResult};
pub use maps::{
    layer_decompose, t_bullet, t_circ, verify_integral_equality, IntegralEquality, Layer,
    MaximalModel, MAX_COORDINATES,
};
pub use rationalize::{rationalizable, RationalizabilityResult};

use crate::logic::{Atoms, Formula, LogicError};
use crate::model::{ModelError, Witness};
use crate::rational::{format_q, parse_q, RationalError, Q};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GamesError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    Rational(#[from] RationalError),
    #[error("invalid strategy JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("formula `{formula}`: {source}")]
    Formula {
        formula: String,
        #[source]
        source: LogicError,
    },
    #[error("payoff {payoff} for `{formula}` is negative; shift the strategy first")]
    NegativePayoff { formula: String, payoff: String },
    #[error("strategy lists `{0}` twice")]
    DuplicateFormula(String),
    #[error("t is not sound ({} witness(es)); use t_bullet with an exact additive target", .0.len())]
    NotSound(Vec<Witness>),
    #[error("t is undefined on `{0}`")]
    Undefined(String),
    #[error("event {0} is not the truth set of any formula")]
    NoPreimage(String),
    #[error("target model must be exact with an additive appraisal")]
    TargetShape,
    #[error("models disagree on `{formula}`: λ(t(φ)) = {source_value}, λ′(t′(φ)) = {target_value}")]
    Mismatch {
        formula: String,
        source_value: String,
        target_value: String,
    },
    #[error("{count} coordinates; maximal models support at most {max}")]
    TooManyCoordinates { count: usize, max: usize },
    #[error("no alternatives given")]
    Empty,
    #[error("payoff vectors have different lengths")]
    Shape,
    #[error("strategy index {index} out of range for {len} alternatives")]
    NotInSet { index: usize, len: usize },
    #[error("witness failed verification: {0}")]
    Verification(String),
}

/// A finitely supported map from formulas to non-negative payoffs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strategy {
    payoffs: Vec<(Formula, Q)>,
}

impl Strategy {
    /// Zero payoffs are dropped; the rest are ordered by formula text.
    pub fn new(payoffs: Vec<(Formula, Q)>) -> Result<Self, GamesError> {
        let mut out: Vec<(Formula, Q)> = Vec::with_capacity(payoffs.len());
        for (f, v) in payoffs {
            if v.is_negative() {
                return Err(GamesError::NegativePayoff {
                    formula: f.to_string(),
                    payoff: format_q(&v),
                });
            }
            let text = f.to_string();
            if out.iter().any(|(g, _)| g.to_string() == text) {
                return Err(GamesError::DuplicateFormula(text));
            }
            if !v.is_zero() {
                out.push((f, v));
            }
        }
        out.sort_by_key(|(f, _)| f.to_string());
        Ok(Strategy { payoffs: out })
    }

    pub fn from_texts<S: AsRef<str>>(atoms: &Atoms, payoffs: &[(S, Q)]) -> Result<Self, GamesError> {
        let mut parsed = Vec::with_capacity(payoffs.len());
        for (text, v) in payoffs {
            let f = atoms.parse(text.as_ref()).map_err(|source| GamesError::Formula {
                formula: text.as_ref().to_string(),
                source,
            })?;
            parsed.push((f, v.clone()));
        }
        Strategy::new(parsed)
    }

    /// The primitive bet on `f`: pays 1 when `f` is true.
    pub fn bet(f: Formula) -> Self {
        Strategy {
            payoffs: vec![(f, Q::from_integer(1.into()))],
        }
    }

    pub fn payoffs(&self) -> &[(Formula, Q)] {
        &self.payoffs
    }

    pub fn support(&self) -> impl Iterator<Item = &Formula> {
        self.payoffs.iter().map(|(f, _)| f)
    }

    /// Adds `c` on `T`, which raises every act pointwise by `c`.
    pub fn shifted(&self, c: &Q) -> Result<Self, GamesError> {
        let mut payoffs = self.payoffs.clone();
        match payoffs.iter_mut().find(|(f, _)| *f == Formula::True) {
            Some((_, v)) => *v += c,
            None => payoffs.push((Formula::True, c.clone())),
        }
        Strategy::new(payoffs)
    }

    /// `α·self + β·other`, merging formulas by text.
    pub fn combine(&self, alpha: &Q, other: &Strategy, beta: &Q) -> Result<Self, GamesError> {
        let mut acc: BTreeMap<String, (Formula, Q)> = BTreeMap::new();
        for (scale, s) in [(alpha, self), (beta, other)] {
            for (f, v) in &s.payoffs {
                let slot = acc
                    .entry(f.to_string())
                    .or_insert_with(|| (f.clone(), Q::zero()));
                slot.1 += scale * v;
            }
        }
        Strategy::new(acc.into_values().collect())
    }

    pub fn from_json(text: &str, atoms: &Atoms) -> Result<(Option<String>, Self), GamesError> {
        let file: StrategyFile = serde_json::from_str(text)?;
        let mut payoffs = Vec::with_capacity(file.payoffs.len());
        for (formula, value) in &file.payoffs {
            payoffs.push((formula.as_str(), parse_q(value)?));
        }
        Ok((file.name, Strategy::from_texts(atoms, &payoffs)?))
    }

    pub fn to_file(&self, name: Option<&str>) -> StrategyFile {
        StrategyFile {
            name: name.map(str::to_string),
            payoffs: self
                .payoffs
                .iter()
                .map(|(f, v)| (f.to_string(), format_q(v)))
                .collect(),
        }
    }
}

/// On-disk strategy: formula text to `"num/den"` payoff.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrategyFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub payoffs: BTreeMap<String, String>,
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::model::tests::table;
    use crate::model::{Appraisal, SubjectiveModel};
    use crate::rational::{q, qi};

    pub(crate) fn pq() -> Atoms {
        Atoms::new(&["p", "q"]).unwrap()
    }

    /// Three states, `t(p) = {w1,w2}`, `t(q) = {w1}`, and a monotone
    /// non-additive capacity.
    pub(crate) fn layer_source() -> SubjectiveModel {
        let s = ["w1", "w2", "w3"];
        SubjectiveModel::from_labels(
            &pq(),
            &s,
            &[("p", &["w1", "w2"]), ("q", &["w1"])],
            table(
                &s,
                &[
                    (&["w1"], q(1, 3)),
                    (&["w2"], q(0, 1)),
                    (&["w3"], q(1, 3)),
                    (&["w1", "w2"], q(1, 3)),
                    (&["w1", "w3"], q(2, 3)),
                    (&["w2", "w3"], q(1, 3)),
                ],
            ),
        )
        .unwrap()
    }

    /// Exact target with uniform masses on three states.
    pub(crate) fn layer_target() -> SubjectiveModel {
        let s = ["w1", "w2", "w3"];
        let w1: &[&str] = &["w1"];
        let w2: &[&str] = &["w2"];
        SubjectiveModel::from_labels(
            &pq(),
            &s,
            &[
                ("p", w1),
                ("q", w1),
                ("p & q", w1),
                ("p | q", w1),
                ("!p", w2),
                ("!q", w2),
                ("!p & !q", w2),
                ("!p | !q", w2),
                ("p & !q", &[]),
            ],
            Appraisal::Additive(vec![q(1, 3), q(1, 3), q(1, 3)]),
        )
        .unwrap()
    }

    pub(crate) fn layer_strategy() -> Strategy {
        Strategy::from_texts(&pq(), &[("T", qi(1)), ("p", qi(2)), ("!q", qi(1))]).unwrap()
    }

    #[test]
    fn strategy_normalization() {
        let s = layer_strategy();
        let texts: Vec<String> = s.support().map(|f| f.to_string()).collect();
        assert_eq!(texts, ["!q", "T", "p"]);
        assert!(matches!(
            Strategy::from_texts(&pq(), &[("p", qi(-1))]),
            Err(GamesError::NegativePayoff { .. })
        ));
        assert!(matches!(
            Strategy::from_texts(&pq(), &[("p", qi(1)), ("p", qi(2))]),
            Err(GamesError::DuplicateFormula(_))
        ));
        let shifted = s.shifted(&qi(2)).unwrap();
        assert!(shifted.payoffs().contains(&(Formula::True, qi(3))));
        let json = serde_json::to_string(&s.to_file(Some("s"))).unwrap();
        let (name, back) = Strategy::from_json(&json, &pq()).unwrap();
        assert_eq!(name.as_deref(), Some("s"));
        assert_eq!(back, s);
    }
}
