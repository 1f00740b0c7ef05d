//! Likelihood assessments over propositional statements: axiom checks,
//! subjective state-space models, identification of misperceived
//! implications, and rationalizability by Choquet expected payoff.

pub mod assessment;
pub mod bits;
pub mod cli;
pub mod construct;
pub mod games;
pub mod identify;
pub mod linalg;
pub mod lp;
pub mod logic;
pub mod model;
pub mod rational;
