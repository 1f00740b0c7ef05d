use super::{Assessment, AssessmentError};
use crate::logic::Formula;
use crate::rational::{format_q, Q};
use num_traits::{One, Signed, Zero};

/// Lottery over primitive bets: pays 1 util on the truth of each listed
/// formula with the given probability weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bet {
    weights: Vec<(Formula, Q)>,
}

impl Bet {
    pub fn new(weights: Vec<(Formula, Q)>) -> Result<Self, AssessmentError> {
        if weights.is_empty() {
            return Err(AssessmentError::InvalidBet("empty support".into()));
        }
        let mut total = Q::zero();
        for (f, w) in &weights {
            if !w.is_positive() {
                return Err(AssessmentError::InvalidBet(format!(
                    "weight {} on `{f}` is not positive",
                    format_q(w)
                )));
            }
            total += w;
        }
        if !total.is_one() {
            return Err(AssessmentError::InvalidBet(format!(
                "weights sum to {}, not 1",
                format_q(&total)
            )));
        }
        Ok(Bet { weights })
    }

    pub fn primitive(f: Formula) -> Self {
        Bet {
            weights: vec![(f, Q::one())],
        }
    }

    pub fn weights(&self) -> &[(Formula, Q)] {
        &self.weights
    }

    /// `α·self + (1−α)·other`, merging repeated formulas.
    pub fn mix(&self, other: &Bet, alpha: &Q) -> Result<Bet, AssessmentError> {
        let beta = Q::one() - alpha;
        let mut merged: Vec<(Formula, Q)> = Vec::new();
        let scaled = self
            .weights
            .iter()
            .map(|(f, w)| (f, w * alpha))
            .chain(other.weights.iter().map(|(f, w)| (f, w * &beta)));
        for (f, w) in scaled {
            match merged.iter_mut().find(|(g, _)| g == f) {
                Some((_, acc)) => *acc += w,
                None => merged.push((f.clone(), w)),
            }
        }
        merged.retain(|(_, w)| !w.is_zero());
        Bet::new(merged)
    }
}

/// Expected likelihood `Σ b(φ)·π(φ)`.
pub fn bet_value(a: &Assessment, b: &Bet) -> Result<Q, AssessmentError> {
    let mut total = Q::zero();
    for (f, w) in &b.weights {
        let pi = a
            .pi(f)
            .ok_or_else(|| AssessmentError::NotInUniverse(f.to_string()))?;
        total += w * pi;
    }
    Ok(total)
}
