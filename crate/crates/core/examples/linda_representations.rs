//! Two models that represent the same Linda assessment, each failing a
//! different rationality property.

use contingent::assessment::{check_i, Assessment};
use contingent::model::{represents, SubjectiveModel};

const LINDA: &str = include_str!("../fixtures/linda.json");
const MODEL_1: &str = include_str!("../fixtures/linda_model1.json");
const MODEL_2: &str = include_str!("../fixtures/linda_model2.json");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = Assessment::from_json(LINDA)?;
    let i = check_i(&a);
    println!("axiom I holds: {}", i.pass);
    for v in &i.violations {
        println!("  {} ⟹ {} but {} > {}", v.formulas[0], v.formulas[1], v.lhs, v.rhs);
    }

    for (name, text) in [("model 1", MODEL_1), ("model 2", MODEL_2)] {
        let m = SubjectiveModel::from_json(text, None)?;
        let r = represents(&m, &a);
        let t = m.classify_truth_stored();
        let lam = m.classify_lambda()?;
        println!("\n{name}: represents π = {}", r.represents);
        println!("  t monotone = {}, sound = {}", t.monotone, t.sound);
        println!("  λ monotone = {}, additive = {}", lam.monotone, lam.additive);
        for w in t.witnesses.iter().chain(&lam.witnesses).take(3) {
            println!("  {} fails at {:?}", w.property, w.events);
        }
    }
    Ok(())
}
