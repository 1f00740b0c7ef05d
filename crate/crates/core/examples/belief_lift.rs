//! A sound model with a belief-function appraisal, lifted to an additive
//! model over subsets of states.

use contingent::construct::build_belief_lift;
use contingent::model::SubjectiveModel;

const SOURCE: &str = include_str!("../fixtures/layers_source.json");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = SubjectiveModel::from_json(SOURCE, None)?;
    println!("totally monotone: {}", m.has_nonnegative_mobius()?);
    let out = build_belief_lift(&m)?;
    let lifted = &out.model;
    for e in m.truth_entries() {
        let before = m.lambda(&e.event).unwrap();
        let after = lifted.truth_of(&e.formula).and_then(|t| lifted.lambda(t)).unwrap();
        println!("{:<10} λ = {before}  lifted λ = {after}", e.text);
    }
    let flags = lifted.classify_truth_stored();
    println!("lifted t: exact = {}, ∧-distributive = {}, symmetric = {}", flags.exact, flags.and_distributive, flags.symmetric);
    Ok(())
}
