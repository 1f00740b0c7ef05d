use super::{sat_set, Atoms, Formula, LogicError};
use crate::bits::ValuationSet;

/// A theory given by finitely many generators; it stands for their closure
/// under implication, so membership is `V(T) ⊆ sat(φ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theory {
    atoms: Atoms,
    generators: Vec<Formula>,
    models: ValuationSet,
}

impl Theory {
    pub fn new(atoms: &Atoms, generators: Vec<Formula>) -> Result<Self, LogicError> {
        let models = generators
            .iter()
            .fold(atoms.all(), |acc, g| acc.intersection(&sat_set(g, atoms)));
        if models.is_empty() {
            return Err(LogicError::InconsistentTheory);
        }
        Ok(Theory {
            atoms: atoms.clone(),
            generators,
            models,
        })
    }

    /// The closure of nothing: every tautology, and only those.
    pub fn tautological(atoms: &Atoms) -> Self {
        Theory {
            atoms: atoms.clone(),
            generators: Vec::new(),
            models: atoms.all(),
        }
    }

    /// Theory whose models are exactly `models`, generated by one formula.
    pub fn from_models(atoms: &Atoms, models: ValuationSet) -> Result<Self, LogicError> {
        if models.is_empty() {
            return Err(LogicError::InconsistentTheory);
        }
        if models.is_full() {
            return Ok(Self::tautological(atoms));
        }
        let gen = atoms.formula_for(&models.complement());
        Ok(Theory {
            atoms: atoms.clone(),
            generators: vec![Formula::not(gen)],
            models,
        })
    }

    pub fn atoms(&self) -> &Atoms {
        &self.atoms
    }

    pub fn generators(&self) -> &[Formula] {
        &self.generators
    }

    /// `V(T)`: valuations satisfying every generator.
    pub fn models(&self) -> &ValuationSet {
        &self.models
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.models.is_subset(&sat_set(f, &self.atoms))
    }

    /// `f ⟹_T g`: `g` follows from `f` together with the theory.
    pub fn implies(&self, f: &Formula, g: &Formula) -> bool {
        self.implies_sets(&sat_set(f, &self.atoms), &sat_set(g, &self.atoms))
    }

    pub fn implies_sets(&self, f: &ValuationSet, g: &ValuationSet) -> bool {
        f.intersection(&self.models).is_subset(g)
    }

    /// `self ⊆ other` as sets of formulas.
    pub fn is_subtheory_of(&self, other: &Theory) -> bool {
        other.models.is_subset(&self.models)
    }
}
