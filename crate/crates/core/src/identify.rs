//! Which implications an agent perceives, and which part of a modeler's
//! theory the agent actually reasons with.

use crate::assessment::{
    check_i, check_ie, check_nt, check_s_i, Assessment, AxiomReport, DEFAULT_N_MAX,
};
use crate::bits::ValuationSet;
use crate::logic::{sat_set, Formula, Theory};
use crate::rational::{serde_q, Q};
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

/// Sub-theories are enumerated as supersets of `V(T)`; this caps the number
/// of valuations outside `V(T)`.
pub const MAX_FREE_VALUATIONS: usize = 16;

#[derive(Debug, Error)]
pub enum IdentifyError {
    #[error("axiom {} fails ({} violation(s))", .0.axiom, .0.violations.len())]
    Axiom(AxiomReport),
    #[error("{0}")]
    TooLarge(String),
    #[error("derived sub-theory fails S-I ({} violation(s))", .0.violations.len())]
    Verification(AxiomReport),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImplicationVerdict {
    pub antecedent: String,
    pub consequent: String,
    pub logically_valid: bool,
    pub understood: bool,
    /// `π(ψ) − π(φ)`.
    #[serde(with = "serde_q")]
    pub margin: Q,
}

/// One verdict per ordered pair `(φ, ψ)` of distinct members of `Φ` with
/// `φ ⟹ ψ`; understood iff `π(ψ) ≥ π(φ)`.
pub fn understood_implications(a: &Assessment) -> Result<Vec<ImplicationVerdict>, IdentifyError> {
    let nt = check_nt(a);
    if !nt.pass {
        return Err(IdentifyError::Axiom(nt));
    }
    let es = a.entries();
    let mut out = Vec::new();
    for (i, phi) in es.iter().enumerate() {
        for (j, psi) in es.iter().enumerate() {
            if i != j && phi.sat.is_subset(&psi.sat) {
                let margin = &psi.pi - &phi.pi;
                out.push(ImplicationVerdict {
                    antecedent: phi.text.clone(),
                    consequent: psi.text.clone(),
                    logically_valid: true,
                    understood: margin >= Q::from_integer(0.into()),
                    margin,
                });
            }
        }
    }
    Ok(out)
}

/// A sub-theory given by its models.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubtheoryCandidate {
    pub models: ValuationSet,
    pub generators: Vec<Formula>,
    /// Positions in the input theory's generator list, when a subset of
    /// them generates exactly this sub-theory.
    pub from_theory: Option<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct SubtheoryResult {
    pub subtheory: SubtheoryCandidate,
    pub unique: bool,
    /// All minimal passing model sets when `unique` is false.
    pub candidates: Vec<SubtheoryCandidate>,
    /// Φ-relative S-I check of the returned sub-theory.
    pub verification: AxiomReport,
    pub diagnostics: Vec<String>,
}

impl SubtheoryResult {
    pub fn theory(&self, t: &Theory) -> Theory {
        Theory::new(t.atoms(), self.subtheory.generators.clone())
            .expect("sub-theories of a consistent theory are consistent")
    }
}

/// Describes the theory with models `v`: the smallest subset of `t`'s
/// generators with exactly these models, else one clause per excluded
/// valuation.
fn describe(t: &Theory, v: &ValuationSet) -> SubtheoryCandidate {
    let atoms = t.atoms();
    let gens = t.generators();
    if gens.len() <= 12 {
        let sats: Vec<ValuationSet> = gens.iter().map(|g| sat_set(g, atoms)).collect();
        let mut masks: Vec<u32> = (0..1u32 << gens.len()).collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        for mask in masks {
            let models = (0..gens.len())
                .filter(|j| mask & (1 << j) != 0)
                .fold(atoms.all(), |acc, j| acc.intersection(&sats[j]));
            if models == *v {
                let idx: Vec<usize> = (0..gens.len()).filter(|j| mask & (1 << j) != 0).collect();
                return SubtheoryCandidate {
                    models: v.clone(),
                    generators: idx.iter().map(|&j| gens[j].clone()).collect(),
                    from_theory: Some(idx),
                };
            }
        }
    }
    let excluded = v.complement();
    let clauses = excluded.iter().map(|x| {
        Formula::or_all(atoms.names().iter().enumerate().map(|(j, name)| {
            let atom = Formula::atom(name);
            if x & (1 << j) != 0 {
                Formula::not(atom)
            } else {
                atom
            }
        }))
    });
    SubtheoryCandidate {
        models: v.clone(),
        generators: clauses.collect(),
        from_theory: None,
    }
}

/// The largest `S ⊆ T` (smallest model set `V ⊇ V(T)`) such that `π`
/// satisfies S-I on `Φ`. Passing model sets are upward closed, so the
/// answer is unique exactly when there is one minimal passing set.
pub fn largest_subtheory(a: &Assessment, t: &Theory) -> Result<SubtheoryResult, IdentifyError> {
    let i = check_i(a);
    if !i.pass {
        return Err(IdentifyError::Axiom(i));
    }
    let vt = t.models();
    let free: Vec<usize> = vt.complement().iter().collect();
    if free.len() > MAX_FREE_VALUATIONS {
        return Err(IdentifyError::TooLarge(format!(
            "{} valuations outside V(T); at most {MAX_FREE_VALUATIONS} are enumerated",
            free.len()
        )));
    }
    // A pair with π(φ) > π(ψ) is tolerated by S_V iff V meets sat φ ∖ sat ψ.
    let es = a.entries();
    let mut obstacles: Vec<u64> = Vec::new();
    for phi in es {
        for psi in es {
            if phi.pi > psi.pi {
                let d = phi.sat.difference(&psi.sat);
                if d.intersects(vt) {
                    continue;
                }
                let mask = free
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| d.contains(v))
                    .fold(0u64, |m, (b, _)| m | (1 << b));
                obstacles.push(mask);
            }
        }
    }
    obstacles.sort_unstable();
    obstacles.dedup();
    let minimal_obstacles: Vec<u64> = obstacles
        .iter()
        .copied()
        .filter(|&d| !obstacles.iter().any(|&e| e != d && e & d == e))
        .collect();
    let passes = |mask: u64| minimal_obstacles.iter().all(|&d| mask & d != 0);
    let mut minimal: Vec<u64> = Vec::new();
    for mask in 0u64..(1 << free.len()) {
        if passes(mask) && (0..free.len()).all(|b| mask & (1 << b) == 0 || !passes(mask ^ (1 << b)))
        {
            minimal.push(mask);
        }
    }
    let to_set = |mask: u64| {
        let mut v = vt.clone();
        for (b, &x) in free.iter().enumerate() {
            if mask & (1 << b) != 0 {
                v.insert(x);
            }
        }
        v
    };
    let mut candidates: Vec<SubtheoryCandidate> =
        minimal.iter().map(|&m| describe(t, &to_set(m))).collect();
    candidates.sort_by_key(|c| (c.models.count(), c.models.clone()));
    let unique = candidates.len() == 1;
    let chosen = candidates[0].clone();
    let verification = check_s_i(a, &Theory::from_models(t.atoms(), chosen.models.clone()).expect("nonempty"));
    let mut diagnostics = vec![format!(
        "{} obstacle set(s) outside V(T), {} minimal",
        obstacles.len(),
        minimal_obstacles.len()
    )];
    if !unique {
        diagnostics.push(format!(
            "{} incomparable maximal sub-theories; the answer is not unique on this universe",
            candidates.len()
        ));
    }
    Ok(SubtheoryResult {
        subtheory: chosen,
        unique,
        candidates: if unique { Vec::new() } else { candidates },
        verification,
        diagnostics,
    })
}

/// `S` generated by the members of `T ∩ Φ` assessed as certain. Requires IE
/// and verifies S-I on the result.
pub fn subtheory_via_certainty(
    a: &Assessment,
    t: &Theory,
) -> Result<SubtheoryResult, IdentifyError> {
    let ie = check_ie(a, DEFAULT_N_MAX);
    if !ie.pass {
        return Err(IdentifyError::Axiom(ie));
    }
    let certain: Vec<&crate::assessment::Entry> = a
        .entries()
        .iter()
        .filter(|e| t.contains(&e.formula) && e.pi.is_one())
        .collect();
    let models = certain
        .iter()
        .fold(t.atoms().all(), |acc, e| acc.intersection(&e.sat));
    let mut subtheory = describe(t, &models);
    if subtheory.from_theory.is_none() {
        subtheory.generators = certain
            .iter()
            .filter(|e| !e.sat.is_full())
            .map(|e| e.formula.clone())
            .collect();
    }
    let verification = check_s_i(
        a,
        &Theory::from_models(t.atoms(), models).expect("contains V(T)"),
    );
    if !verification.pass {
        return Err(IdentifyError::Verification(verification));
    }
    Ok(SubtheoryResult {
        subtheory,
        unique: true,
        candidates: Vec::new(),
        verification,
        diagnostics: vec![format!("{} certain member(s) of T in Φ", certain.len())],
    })
}
