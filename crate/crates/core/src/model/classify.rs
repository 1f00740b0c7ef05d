//! Property flags for truth valuations and likelihood appraisals.

use super::mobius::{mobius, SetFunction, MAX_POWERSET_STATES};
use super::{Appraisal, ModelError, SubjectiveModel};
use crate::bits::{union_of_atoms, ValuationSet};
use crate::logic::Formula;
use crate::rational::Q;
use num_traits::{One, Signed};
use serde::Serialize;
use std::collections::HashMap;

/// Counterexamples kept per truth-valuation property.
const WITNESS_CAP: usize = 20;

/// A counterexample to one property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub property: &'static str,
    pub formulas: Vec<String>,
    pub events: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TruthClassification {
    pub exact: bool,
    pub monotone: bool,
    pub symmetric: bool,
    pub and_distributive: bool,
    pub sound: bool,
    pub witnesses: Vec<Witness>,
    /// Formulas of the requested universe with no stored truth set.
    pub unstored: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LambdaClassification {
    pub symmetric: bool,
    pub monotone: bool,
    pub totally_monotone: bool,
    pub additive: bool,
    pub witnesses: Vec<Witness>,
    /// Number of atoms of the field `Σ` the flags were computed over.
    pub sigma_atoms: usize,
}

impl SubjectiveModel {
    /// Flags over every stored formula.
    pub fn classify_truth_stored(&self) -> TruthClassification {
        let universe: Vec<Formula> = self.truth.iter().map(|e| e.formula.clone()).collect();
        self.classify_truth(&universe)
    }

    /// Truth-valuation flags over `universe`. Compounds (`¬φ`, `φ∧ψ`) are
    /// matched up to logical equivalence among the universe's members, so a
    /// pair with `φ ⟹ ψ` also tests `t(φ) = t(φ) ∩ t(ψ)`.
    pub fn classify_truth(&self, universe: &[Formula]) -> TruthClassification {
        let mut members: Vec<(String, &ValuationSet, &crate::bits::Event)> = Vec::new();
        let mut unstored = Vec::new();
        for f in universe {
            let text = f.to_string();
            match self.by_text.get(&text) {
                Some(&i) => {
                    let e = &self.truth[i];
                    if !members.iter().any(|(t, _, _)| *t == text) {
                        members.push((text, &e.sat, &e.event));
                    }
                }
                None => unstored.push(text),
            }
        }
        let mut by_sat: HashMap<&ValuationSet, Vec<usize>> = HashMap::new();
        for (i, (_, sat, _)) in members.iter().enumerate() {
            by_sat.entry(*sat).or_default().push(i);
        }

        let mut out = TruthClassification {
            exact: true,
            monotone: true,
            symmetric: true,
            and_distributive: true,
            sound: true,
            witnesses: Vec::new(),
            unstored,
        };
        let label = |e: &crate::bits::Event| self.event_label(e);
        let mut per_property: HashMap<&'static str, usize> = HashMap::new();
        let mut fail = |flag: &mut bool, property, formulas: Vec<String>, events: Vec<String>| {
            *flag = false;
            let seen = per_property.entry(property).or_default();
            if *seen < WITNESS_CAP {
                *seen += 1;
                out.witnesses.push(Witness {
                    property,
                    formulas,
                    events,
                });
            }
        };
        let mut exact = true;
        let mut monotone = true;
        let mut symmetric = true;
        let mut and_dist = true;
        for (i, (fi, si, ei)) in members.iter().enumerate() {
            for (j, (fj, sj, ej)) in members.iter().enumerate() {
                if i == j {
                    continue;
                }
                if si == sj && ei != ej && i < j {
                    fail(
                        &mut exact,
                        "exact",
                        vec![fi.clone(), fj.clone()],
                        vec![label(ei), label(ej)],
                    );
                }
                if si.is_subset(sj) && !ei.is_subset(ej) {
                    fail(
                        &mut monotone,
                        "monotone",
                        vec![fi.clone(), fj.clone()],
                        vec![label(ei), label(ej)],
                    );
                }
                if i < j {
                    let meet = si.intersection(sj);
                    let expected = ei.intersection(ej);
                    for &k in by_sat.get(&meet).into_iter().flatten() {
                        let (fk, _, ek) = &members[k];
                        if **ek != expected {
                            fail(
                                &mut and_dist,
                                "and_distributive",
                                vec![fi.clone(), fj.clone(), fk.clone()],
                                vec![label(ei), label(ej), label(ek)],
                            );
                        }
                    }
                }
            }
            let negation = si.complement();
            let expected = ei.complement();
            for &k in by_sat.get(&negation).into_iter().flatten() {
                let (fk, _, ek) = &members[k];
                if **ek != expected {
                    fail(
                        &mut symmetric,
                        "symmetric",
                        vec![fi.clone(), fk.clone()],
                        vec![label(ei), label(ek)],
                    );
                }
            }
        }
        out.exact = exact;
        out.monotone = monotone;
        out.symmetric = symmetric;
        out.and_distributive = and_dist;
        out.sound = exact && monotone && symmetric && and_dist;
        out
    }

    /// Appraisal flags, relative to `Σ` (see [`SubjectiveModel::sigma_atoms`]).
    /// Total monotonicity is decided by nonnegativity of the Möbius masses
    /// over the atoms of `Σ`.
    pub fn classify_lambda(&self) -> Result<LambdaClassification, ModelError> {
        let Appraisal::Table(_) = &self.appraisal else {
            return Ok(LambdaClassification {
                symmetric: true,
                monotone: true,
                totally_monotone: true,
                additive: true,
                witnesses: Vec::new(),
                sigma_atoms: self.states.len(),
            });
        };
        let (atoms, f) = self.sigma_function()?;
        let k = atoms.len();
        let n = self.states.len();
        let event = |mask: u64| union_of_atoms(n, &atoms, mask);
        let vals = f.values().to_vec();
        let full = (1u64 << k) - 1;
        let label = |mask: u64| self.event_label(&event(mask));
        let mut witnesses = Vec::new();

        let symmetric = match (0..=full).find(|&m| &vals[m as usize] + &vals[(full ^ m) as usize] != Q::one()) {
            Some(m) => {
                witnesses.push(Witness {
                    property: "symmetric",
                    formulas: Vec::new(),
                    events: vec![label(m), label(full ^ m)],
                });
                false
            }
            None => true,
        };

        let mut monotone = true;
        'outer: for mask in 0..=full {
            for bit in 0..k {
                let up = mask | (1 << bit);
                if up != mask && vals[mask as usize] > vals[up as usize] {
                    witnesses.push(Witness {
                        property: "monotone",
                        formulas: Vec::new(),
                        events: vec![label(mask), label(up)],
                    });
                    monotone = false;
                    break 'outer;
                }
            }
        }

        let m = mobius(&f);
        let totally_monotone = match m.first_negative() {
            Some(mask) => {
                witnesses.push(Witness {
                    property: "totally_monotone",
                    formulas: Vec::new(),
                    events: vec![label(mask)],
                });
                false
            }
            None => true,
        };

        let singles: Vec<&Q> = (0..k).map(|j| &vals[1 << j]).collect();
        let additive = match (0..=full).find(|&mask| {
            let sum: Q = (0..k)
                .filter(|j| mask & (1 << j) != 0)
                .map(|j| singles[j])
                .sum();
            sum != vals[mask as usize]
        }) {
            Some(mask) => {
                witnesses.push(Witness {
                    property: "additive",
                    formulas: Vec::new(),
                    events: vec![label(mask)],
                });
                false
            }
            None => true,
        };

        Ok(LambdaClassification {
            symmetric,
            monotone,
            totally_monotone,
            additive,
            witnesses,
            sigma_atoms: k,
        })
    }

    /// The atoms of `Σ` and `λ` tabulated on their unions, indexed by atom
    /// mask.
    pub fn sigma_function(&self) -> Result<(Vec<crate::bits::Event>, SetFunction), ModelError> {
        let atoms = self.sigma_atoms();
        let k = atoms.len();
        if k > MAX_POWERSET_STATES {
            return Err(ModelError::TooLarge(format!(
                "Σ has {k} atoms; at most {MAX_POWERSET_STATES} are tabulated"
            )));
        }
        let n = self.states.len();
        let mut vals: Vec<Q> = Vec::with_capacity(1 << k);
        for mask in 0u64..(1 << k) {
            let e = union_of_atoms(n, &atoms, mask);
            vals.push(
                self.lambda(&e)
                    .ok_or_else(|| ModelError::Undefined(self.event_label(&e)))?,
            );
        }
        let f = SetFunction::new(k, vals).expect("λ(∅) = 0 is enforced at construction");
        Ok((atoms, f))
    }

    /// Möbius masses of `λ` on the full powerset of `Ω`.
    pub fn mobius(&self) -> Result<super::MobiusMass, ModelError> {
        Ok(mobius(&self.powerset_function()?))
    }

    /// True when `λ` has no negative Möbius mass on `2^Ω`.
    pub fn has_nonnegative_mobius(&self) -> Result<bool, ModelError> {
        Ok(self.mobius()?.masses().iter().all(|m| !m.is_negative()))
    }
}
