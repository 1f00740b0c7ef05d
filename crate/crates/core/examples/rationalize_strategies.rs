//! A sure payoff that no additive prior rationalizes but a non-additive
//! appraisal does.

use contingent::games::{rationalizable, DominanceMode, Strategy};
use contingent::model::SubjectiveModel;

const BASE: &str = include_str!("../fixtures/two_state_base.json");
const STRATEGIES: [&str; 3] = [
    include_str!("../fixtures/two_state_s1.json"),
    include_str!("../fixtures/two_state_s2.json"),
    include_str!("../fixtures/two_state_s3.json"),
];

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let base = SubjectiveModel::from_json(BASE, None)?;
    let alts: Vec<Strategy> = STRATEGIES
        .iter()
        .map(|t| Strategy::from_json(t, base.atoms()).map(|(_, s)| s))
        .collect::<Result<_, _>>()?;

    let additive = rationalizable(2, &alts, &base, DominanceMode::Strict, true)?;
    println!("s3 with additive priors: rationalizable = {}", additive.rationalizable);
    if let Some(mu) = &additive.dominance.mixture {
        let parts: Vec<String> = mu.iter().map(|v| v.to_string()).collect();
        println!("  dominated by mixture ({}) with margin {}", parts.join(", "), additive.dominance.value);
    }

    let general = rationalizable(2, &alts, &base, DominanceMode::Strict, false)?;
    println!("s3 with any appraisal: rationalizable = {}", general.rationalizable);
    for (i, v) in general.values.iter().enumerate() {
        println!("  ∫ s{} = {v}", i + 1);
    }
    Ok(())
}
