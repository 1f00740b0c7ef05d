//! Propositional language over a declared, finite atom set.
//!
//! Semantics are by exhaustive truth table: with `n` atoms a formula denotes
//! a [`ValuationSet`] of length `2^n`, where valuation `i` makes atom `j`
//! true iff bit `j` of `i` is set.

mod formula;
mod parser;
mod theory;

pub use formula::Formula;
pub use parser::parse_formula;
pub use theory::Theory;

use crate::bits::ValuationSet;
use thiserror::Error;

/// Hard ceiling on declared atoms; valuation sets have `2^n` bits.
pub const MAX_ATOMS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("undeclared atom `{name}` at position {pos}")]
    UndeclaredAtom { name: String, pos: usize },
    #[error("invalid atom name `{0}`")]
    InvalidAtomName(String),
    #[error("atom `{0}` declared twice")]
    DuplicateAtom(String),
    #[error("{0} atoms declared; at most {MAX_ATOMS} are supported")]
    TooManyAtoms(usize),
    #[error("theory is inconsistent: its generators have no common model")]
    InconsistentTheory,
}

/// The declared atom set of a session, in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Atoms {
    names: Vec<String>,
}

impl Atoms {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, LogicError> {
        if names.len() > MAX_ATOMS {
            return Err(LogicError::TooManyAtoms(names.len()));
        }
        let mut out: Vec<String> = Vec::with_capacity(names.len());
        for name in names {
            let name = name.as_ref();
            if !is_atom_name(name) {
                return Err(LogicError::InvalidAtomName(name.to_string()));
            }
            if out.iter().any(|n| n == name) {
                return Err(LogicError::DuplicateAtom(name.to_string()));
            }
            out.push(name.to_string());
        }
        Ok(Atoms { names: out })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Number of valuations, `2^n`.
    pub fn valuation_count(&self) -> usize {
        1 << self.names.len()
    }

    pub fn all(&self) -> ValuationSet {
        ValuationSet::full(self.valuation_count())
    }

    pub fn none(&self) -> ValuationSet {
        ValuationSet::empty(self.valuation_count())
    }

    /// Valuations in which atom `j` is true.
    pub fn atom_set(&self, j: usize) -> ValuationSet {
        let n = self.valuation_count();
        ValuationSet::from_indices(n, (0..n).filter(|i| i & (1 << j) != 0))
    }

    pub fn parse(&self, text: &str) -> Result<Formula, LogicError> {
        parse_formula(text, self)
    }

    /// Conjunction of literals true exactly at valuation `v`.
    pub fn minterm(&self, v: usize) -> Formula {
        Formula::and_all(self.names.iter().enumerate().map(|(j, name)| {
            let atom = Formula::atom(name);
            if v & (1 << j) != 0 {
                atom
            } else {
                Formula::not(atom)
            }
        }))
    }

    /// A formula whose valuation set is exactly `set` (disjunctive normal form,
    /// with `T`/`F` for the trivial cases).
    pub fn formula_for(&self, set: &ValuationSet) -> Formula {
        if set.is_full() {
            Formula::True
        } else if set.is_empty() {
            Formula::False
        } else {
            Formula::or_all(set.iter().map(|v| self.minterm(v)))
        }
    }
}

pub(crate) fn is_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    name != "T" && name != "F" && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Valuation set of `f`; atoms not declared in `atoms` panic, which parsing
/// against the same atom set rules out.
pub fn sat_set(f: &Formula, atoms: &Atoms) -> ValuationSet {
    match f {
        Formula::True => atoms.all(),
        Formula::False => atoms.none(),
        Formula::Atom(name) => {
            let j = atoms
                .index_of(name)
                .unwrap_or_else(|| panic!("atom `{name}` not declared"));
            atoms.atom_set(j)
        }
        Formula::Not(a) => sat_set(a, atoms).complement(),
        Formula::And(a, b) => sat_set(a, atoms).intersection(&sat_set(b, atoms)),
        Formula::Or(a, b) => sat_set(a, atoms).union(&sat_set(b, atoms)),
    }
}

/// `f ⟹ g`: every valuation satisfying `f` satisfies `g`.
pub fn implies(f: &Formula, g: &Formula, atoms: &Atoms) -> bool {
    sat_set(f, atoms).is_subset(&sat_set(g, atoms))
}

pub fn equivalent(f: &Formula, g: &Formula, atoms: &Atoms) -> bool {
    sat_set(f, atoms) == sat_set(g, atoms)
}

pub fn theory_consistent(gens: &[Formula], atoms: &Atoms) -> bool {
    !gens
        .iter()
        .fold(atoms.all(), |acc, g| acc.intersection(&sat_set(g, atoms)))
        .is_empty()
}
