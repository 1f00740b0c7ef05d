//! Pointwise dominance by mixtures, decided by exact linear programming.

use super::GamesError;
use crate::lp::{Lp, LpOutcome, Relation};
use crate::rational::{serde_q, serde_q_vec, Q};
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DominanceMode {
    /// `Σ μ_i x_i(ω) > x(ω)` at every state.
    Strict,
    /// `Σ μ_i x_i(ω) ≥ x(ω)` everywhere, strictly somewhere.
    Weak,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DominanceResult {
    pub undominated: bool,
    /// Optimal LP value: the uniform margin `ε` (strict) or the total
    /// slack (weak). Dominated iff positive.
    #[serde(with = "serde_q")]
    pub value: Q,
    /// Dominating weights over the alternatives.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_opt_vec")]
    pub mixture: Option<Vec<Q>>,
    /// Probability over states under which `x` does at least as well as
    /// every alternative; full support in weak mode.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_opt_vec")]
    pub prior: Option<Vec<Q>>,
}

fn ser_opt_vec<S: serde::Serializer>(v: &Option<Vec<Q>>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => serde_q_vec::serialize(v, s),
        None => s.serialize_none(),
    }
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// States grouped by their payoff profile across `x` and the alternatives.
struct Rows {
    /// Per distinct profile: the alternatives' payoffs, then `x`'s.
    profiles: Vec<(Vec<Q>, Q)>,
    groups: Vec<Vec<usize>>,
}

fn group_rows(x: &[Q], alternatives: &[Vec<Q>]) -> Rows {
    let mut index: BTreeMap<(Vec<Q>, Q), usize> = BTreeMap::new();
    let mut profiles = Vec::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for w in 0..x.len() {
        let key: (Vec<Q>, Q) = (alternatives.iter().map(|a| a[w].clone()).collect(), x[w].clone());
        let slot = *index.entry(key.clone()).or_insert_with(|| {
            profiles.push(key);
            groups.push(Vec::new());
            profiles.len() - 1
        });
        groups[slot].push(w);
    }
    Rows { profiles, groups }
}

/// Spreads per-profile weights evenly over each profile's states.
fn spread(rows: &Rows, weights: &[Q], n: usize) -> Vec<Q> {
    let mut p = vec![Q::zero(); n];
    for (g, w) in rows.groups.iter().zip(weights) {
        let share = w / Q::from_integer((g.len() as i64).into());
        for &s in g {
            p[s] = share.clone();
        }
    }
    p
}

fn mixture_dominates(x: &[Q], alternatives: &[Vec<Q>], mu: &[Q], mode: DominanceMode) -> bool {
    if mu.iter().any(Signed::is_negative) || mu.iter().sum::<Q>() != Q::one() {
        return false;
    }
    let mixed: Vec<Q> = (0..x.len())
        .map(|w| mu.iter().zip(alternatives).map(|(m, a)| m * &a[w]).sum())
        .collect();
    match mode {
        DominanceMode::Strict => mixed.iter().zip(x).all(|(m, v)| m > v),
        DominanceMode::Weak => {
            mixed.iter().zip(x).all(|(m, v)| m >= v) && mixed.iter().zip(x).any(|(m, v)| m > v)
        }
    }
}

fn prior_supports(x: &[Q], alternatives: &[Vec<Q>], p: &[Q], mode: DominanceMode) -> bool {
    let positive = match mode {
        DominanceMode::Strict => p.iter().all(|v| !v.is_negative()),
        DominanceMode::Weak => p.iter().all(Signed::is_positive),
    };
    positive
        && p.iter().sum::<Q>() == Q::one()
        && alternatives.iter().all(|a| dot(p, x) >= dot(p, a))
}

/// Direct search for a prior: `p` in the simplex with `p·(x − a_i) ≥ 0`,
/// maximizing the smallest weight in weak mode.
fn prior_lp(rows: &Rows, k: usize, mode: DominanceMode) -> Option<Vec<Q>> {
    let r = rows.profiles.len();
    let sizes: Vec<Q> = rows
        .groups
        .iter()
        .map(|g| Q::from_integer((g.len() as i64).into()))
        .collect();
    // Variables: per-profile weights, then the floor `t`.
    let mut objective = vec![Q::zero(); r + 1];
    if mode == DominanceMode::Weak {
        objective[r] = Q::one();
    }
    let mut lp = Lp::new(objective);
    let mut total = vec![Q::one(); r + 1];
    total[r] = Q::zero();
    lp.push(total, Relation::Eq, Q::one());
    for i in 0..k {
        let mut row: Vec<Q> = rows.profiles.iter().map(|(a, v)| v - &a[i]).collect();
        row.push(Q::zero());
        lp.push(row, Relation::Ge, Q::zero());
    }
    if mode == DominanceMode::Weak {
        for (j, size) in sizes.iter().enumerate() {
            let mut row = vec![Q::zero(); r + 1];
            row[j] = Q::one() / size;
            row[r] = -Q::one();
            lp.push(row, Relation::Ge, Q::zero());
        }
    }
    match lp.solve() {
        LpOutcome::Optimal { x, value, .. } => {
            if mode == DominanceMode::Weak && !value.is_positive() {
                return None;
            }
            Some(x[..r].to_vec())
        }
        _ => None,
    }
}

/// Decides whether `x` is dominated by a mixture of `alternatives`.
pub fn pointwise_undominated(
    x: &[Q],
    alternatives: &[Vec<Q>],
    mode: DominanceMode,
) -> Result<DominanceResult, GamesError> {
    if alternatives.is_empty() {
        return Err(GamesError::Empty);
    }
    if alternatives.iter().any(|a| a.len() != x.len()) {
        return Err(GamesError::Shape);
    }
    let k = alternatives.len();
    let rows = group_rows(x, alternatives);
    let r = rows.profiles.len();

    let (lp, width) = match mode {
        DominanceMode::Strict => {
            // Variables: μ_1..μ_k, ε⁺, ε⁻.
            let mut objective = vec![Q::zero(); k + 2];
            objective[k] = Q::one();
            objective[k + 1] = -Q::one();
            let mut lp = Lp::new(objective);
            for (a, v) in &rows.profiles {
                let mut row = a.clone();
                row.push(-Q::one());
                row.push(Q::one());
                lp.push(row, Relation::Ge, v.clone());
            }
            (lp, k + 2)
        }
        DominanceMode::Weak => {
            // Variables: μ_1..μ_k, one slack per profile.
            let mut objective = vec![Q::zero(); k + r];
            for (j, g) in rows.groups.iter().enumerate() {
                objective[k + j] = Q::from_integer((g.len() as i64).into());
            }
            let mut lp = Lp::new(objective);
            for (j, (a, v)) in rows.profiles.iter().enumerate() {
                let mut row = a.clone();
                row.resize(k + r, Q::zero());
                row[k + j] = -Q::one();
                lp.push(row, Relation::Eq, v.clone());
            }
            (lp, k + r)
        }
    };
    let mut lp = lp;
    let mut simplex = vec![Q::zero(); width];
    for v in &mut simplex[..k] {
        *v = Q::one();
    }
    lp.push(simplex, Relation::Eq, Q::one());

    let LpOutcome::Optimal { x: sol, value, duals } = lp.solve() else {
        unreachable!("the dominance program is feasible and bounded");
    };
    if value.is_positive() {
        let mu = sol[..k].to_vec();
        if !mixture_dominates(x, alternatives, &mu, mode) {
            return Err(GamesError::Verification(
                "LP mixture does not dominate".to_string(),
            ));
        }
        return Ok(DominanceResult {
            undominated: false,
            value,
            mixture: Some(mu),
            prior: None,
        });
    }
    // Row duals are ≤ 0 for the `≥` rows (strict) and ≤ −1 per state for
    // the equality rows (weak); their negation, normalized, is a prior.
    let weights: Vec<Q> = duals[..r].iter().map(|y| -y).collect();
    let total: Q = weights.iter().sum();
    let mut prior = None;
    if total.is_positive() {
        let normalized: Vec<Q> = weights.iter().map(|w| w / &total).collect();
        let p = spread(&rows, &normalized, x.len());
        if prior_supports(x, alternatives, &p, mode) {
            prior = Some(p);
        }
    }
    if prior.is_none() {
        prior = prior_lp(&rows, k, mode).map(|w| spread(&rows, &w, x.len()));
    }
    match prior {
        Some(p) if prior_supports(x, alternatives, &p, mode) => Ok(DominanceResult {
            undominated: true,
            value,
            mixture: None,
            prior: Some(p),
        }),
        _ => Err(GamesError::Verification(
            "no prior certifies the undominated strategy".to_string(),
        )),
    }
}
