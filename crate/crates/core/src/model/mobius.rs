//! Möbius inversion of set functions on a full powerset.

use crate::rational::Q;
use num_traits::{Signed, Zero};

/// Largest `|Ω|` for which whole-powerset tables are built.
pub const MAX_POWERSET_STATES: usize = 20;

/// A set function on `2^Ω`, indexed by bitmask, with value 0 on `∅`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFunction {
    n: usize,
    values: Vec<Q>,
}

impl SetFunction {
    /// `None` unless `values` has `2^n` entries and `values[0] = 0`.
    pub fn new(n: usize, values: Vec<Q>) -> Option<Self> {
        (n <= MAX_POWERSET_STATES && values.len() == 1 << n && values[0].is_zero())
            .then_some(SetFunction { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn value(&self, mask: u64) -> &Q {
        &self.values[mask as usize]
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }
}

/// Möbius masses `m(A)` on nonempty subsets, indexed by bitmask
/// (`masses[0]` is always 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobiusMass {
    n: usize,
    masses: Vec<Q>,
}

impl MobiusMass {
    pub fn new(n: usize, masses: Vec<Q>) -> Option<Self> {
        (n <= MAX_POWERSET_STATES && masses.len() == 1 << n && masses[0].is_zero())
            .then_some(MobiusMass { n, masses })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mass(&self, mask: u64) -> &Q {
        &self.masses[mask as usize]
    }

    pub fn masses(&self) -> &[Q] {
        &self.masses
    }

    pub fn total(&self) -> Q {
        self.masses.iter().sum()
    }

    /// Sets carrying nonzero mass, in mask order.
    pub fn focal_sets(&self) -> impl Iterator<Item = (u64, &Q)> {
        self.masses
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
            .map(|(i, m)| (i as u64, m))
    }

    /// First set with negative mass, if any.
    pub fn first_negative(&self) -> Option<u64> {
        self.masses
            .iter()
            .position(|m| m.is_negative())
            .map(|i| i as u64)
    }
}

/// `m(A) = Σ_{B⊆A} (−1)^{|A∖B|} λ(B)`, by the fast subset transform.
pub fn mobius(f: &SetFunction) -> MobiusMass {
    let mut m = f.values.clone();
    for bit in 0..f.n {
        let b = 1usize << bit;
        for mask in 0..m.len() {
            if mask & b != 0 {
                let lower = m[mask ^ b].clone();
                m[mask] -= lower;
            }
        }
    }
    MobiusMass { n: f.n, masses: m }
}

/// `λ(B) = Σ_{A⊆B} m(A)`.
pub fn inverse_mobius(m: &MobiusMass) -> SetFunction {
    let mut f = m.masses.clone();
    for bit in 0..m.n {
        let b = 1usize << bit;
        for mask in 0..f.len() {
            if mask & b != 0 {
                let lower = f[mask ^ b].clone();
                f[mask] += lower;
            }
        }
    }
    SetFunction { n: m.n, values: f }
}
