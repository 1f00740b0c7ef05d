//! Rationalizability by Choquet expected payoff, through the maximal model.

use super::dominance::{pointwise_undominated, DominanceMode, DominanceResult};
use super::maps::{require_sound, t_circ, MaximalModel};
use super::{GamesError, Strategy};
use crate::bits::Event;
use crate::model::{Appraisal, SubjectiveModel};
use crate::rational::Q;
use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub struct RationalizabilityResult {
    pub rationalizable: bool,
    pub mode: DominanceMode,
    pub additive_only: bool,
    /// Maximal-model coordinates; empty when `additive_only`.
    pub coordinates: Vec<Event>,
    pub dominance: DominanceResult,
    /// The base model with `λ` replaced by the rationalizing appraisal.
    pub witness: Option<SubjectiveModel>,
    /// Choquet value of every alternative under the witness.
    pub values: Vec<Q>,
}

/// Is `alternatives[index]` a Choquet best response to some likelihood
/// appraisal on `base`'s state space? With `additive_only`, only additive
/// appraisals are allowed and dominance is tested on the base acts.
pub fn rationalizable(
    index: usize,
    alternatives: &[Strategy],
    base: &SubjectiveModel,
    mode: DominanceMode,
    additive_only: bool,
) -> Result<RationalizabilityResult, GamesError> {
    if alternatives.is_empty() {
        return Err(GamesError::Empty);
    }
    if index >= alternatives.len() {
        return Err(GamesError::NotInSet {
            index,
            len: alternatives.len(),
        });
    }
    require_sound(base)?;
    let truth: Vec<_> = base
        .truth_entries()
        .iter()
        .map(|e| (e.formula.clone(), e.event.clone()))
        .collect();

    let (coordinates, dominance, appraisal) = if additive_only {
        let acts: Vec<Vec<Q>> = alternatives
            .iter()
            .map(|s| t_circ(base, s))
            .collect::<Result<_, _>>()?;
        let d = pointwise_undominated(&acts[index], &acts, mode)?;
        let appraisal = d.prior.clone().map(Appraisal::Additive);
        (Vec::new(), d, appraisal)
    } else {
        let mm = MaximalModel::for_strategies(base, alternatives)?;
        let acts: Vec<Vec<Q>> = alternatives
            .iter()
            .map(|s| mm.t_m_bullet(base, s))
            .collect::<Result<_, _>>()?;
        let d = pointwise_undominated(&acts[index], &acts, mode)?;
        // λ(E) is the prior mass of the cylinder where coordinate E is 1.
        let appraisal = d.prior.as_ref().map(|p| {
            let mut table = BTreeMap::new();
            for (i, e) in mm.coordinates().iter().enumerate() {
                let mass: Q = p
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| k & (1 << i) != 0)
                    .map(|(_, v)| v)
                    .sum();
                table.insert(e.clone(), mass);
            }
            Appraisal::Table(table)
        });
        (mm.coordinates().to_vec(), d, appraisal)
    };

    let Some(appraisal) = appraisal else {
        return Ok(RationalizabilityResult {
            rationalizable: false,
            mode,
            additive_only,
            coordinates,
            dominance,
            witness: None,
            values: Vec::new(),
        });
    };
    // The model's own appraisal is reported when it already supports the
    // choice; otherwise the LP witness is pulled back.
    let own_fits = !additive_only || base.is_additive();
    let own = if own_fits { choquet_values(base, base, alternatives).ok() } else { None };
    let (witness, values) = match own {
        Some(v) if v.iter().all(|x| *x <= v[index]) => (base.clone(), v),
        _ => {
            let w = SubjectiveModel::new(base.atoms(), base.states().to_vec(), truth, appraisal)?;
            let v = choquet_values(&w, base, alternatives)?;
            (w, v)
        }
    };
    let best = &values[index];
    if let Some(j) = values.iter().position(|v| v > best) {
        return Err(GamesError::Verification(format!(
            "alternative {j} earns more than the chosen strategy under the witness"
        )));
    }
    Ok(RationalizabilityResult {
        rationalizable: true,
        mode,
        additive_only,
        coordinates,
        dominance,
        witness: Some(witness),
        values,
    })
}

fn choquet_values(
    witness: &SubjectiveModel,
    base: &SubjectiveModel,
    alternatives: &[Strategy],
) -> Result<Vec<Q>, GamesError> {
    alternatives
        .iter()
        .map(|s| Ok(witness.choquet(&t_circ(base, s)?)?))
        .collect()
}
