//! Choquet integration and the representation test `λ(t(φ)) = π(φ)`.

use super::{ModelError, SubjectiveModel};
use crate::assessment::Assessment;
use crate::bits::Event;
use crate::rational::{serde_q, Q};
use num_traits::{Signed, Zero};
use serde::Serialize;

/// Finite Choquet integral of a non-negative `x` against `measure`:
/// with distinct values `α_1 > … > α_k` and `α_{k+1} = 0`,
/// `Σ_j (α_j − α_{j+1})·λ({x ≥ α_j})`.
///
/// `measure` returns `None` for events outside its domain; the first such
/// upper set is reported with `label`.
pub fn choquet_with(
    x: &[Q],
    measure: impl Fn(&Event) -> Option<Q>,
    label: impl Fn(&Event) -> String,
) -> Result<Q, ModelError> {
    if let Some(neg) = x.iter().find(|v| v.is_negative()) {
        return Err(ModelError::NegativePayoff(crate::rational::format_q(neg)));
    }
    let mut levels: Vec<&Q> = x.iter().collect();
    levels.sort_unstable_by(|a, b| b.cmp(a));
    levels.dedup();
    let mut total = Q::zero();
    for (j, alpha) in levels.iter().enumerate() {
        if alpha.is_zero() {
            break;
        }
        let next = levels.get(j + 1).map(|v| (*v).clone()).unwrap_or_else(Q::zero);
        let upper = Event::from_indices(x.len(), (0..x.len()).filter(|&i| x[i] >= **alpha));
        let lam = measure(&upper).ok_or_else(|| ModelError::Undefined(label(&upper)))?;
        total += (*alpha - next) * lam;
    }
    Ok(total)
}

impl SubjectiveModel {
    /// `∫ x dλ` over this model's states.
    pub fn choquet(&self, x: &[Q]) -> Result<Q, ModelError> {
        if x.len() != self.states.len() {
            return Err(ModelError::PayoffLength {
                got: x.len(),
                expected: self.states.len(),
            });
        }
        choquet_with(x, |e| self.lambda(e), |e| self.event_label(e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Residual {
    pub formula: String,
    #[serde(with = "serde_q")]
    pub pi: Q,
    /// `λ(t(φ))`, absent when `t(φ)` or `λ` there is undefined.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_opt_q")]
    pub lambda: Option<Q>,
    /// `λ(t(φ)) − π(φ)`.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_opt_q")]
    pub residual: Option<Q>,
}

fn ser_opt_q<S: serde::Serializer>(v: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(q) => serde_q::serialize(q, s),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Representation {
    pub represents: bool,
    pub residuals: Vec<Residual>,
}

impl Representation {
    /// Residuals that are nonzero or undefined.
    pub fn failures(&self) -> impl Iterator<Item = &Residual> {
        self.residuals
            .iter()
            .filter(|r| r.residual.as_ref().is_none_or(|v| !v.is_zero()))
    }
}

/// Checks `λ(t(φ)) = π(φ)` for every `φ ∈ Φ`. Formulas without a stored
/// truth set use [`SubjectiveModel::truth_extended`].
pub fn represents(m: &SubjectiveModel, a: &Assessment) -> Representation {
    let mut residuals = Vec::with_capacity(a.len());
    for entry in a.entries() {
        let lambda = m
            .truth_of(&entry.formula)
            .cloned()
            .or_else(|| m.truth_extended(&entry.formula))
            .and_then(|e| m.lambda(&e));
        let residual = lambda.as_ref().map(|l| l - &entry.pi);
        residuals.push(Residual {
            formula: entry.text.clone(),
            pi: entry.pi.clone(),
            lambda,
            residual,
        });
    }
    let ok = residuals
        .iter()
        .all(|r| r.residual.as_ref().is_some_and(Zero::is_zero));
    Representation {
        represents: ok,
        residuals,
    }
}
