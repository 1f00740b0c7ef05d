//! A strategy's act in a non-additive model, its layer decomposition, and
//! the same strategy carried to an additive model with equal value.

use contingent::games::{layer_decompose, t_bullet, t_circ, verify_integral_equality, Strategy};
use contingent::model::SubjectiveModel;

const SOURCE: &str = include_str!("../fixtures/layers_source.json");
const TARGET: &str = include_str!("../fixtures/layers_target.json");
const STRATEGY: &str = include_str!("../fixtures/layers_strategy.json");

fn show(x: &[contingent::rational::Q]) -> String {
    let parts: Vec<String> = x.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let source = SubjectiveModel::from_json(SOURCE, None)?;
    let target = SubjectiveModel::from_json(TARGET, None)?;
    let (_, s) = Strategy::from_json(STRATEGY, source.atoms())?;

    let x = t_circ(&source, &s)?;
    println!("act in the source: {}", show(&x));
    for layer in layer_decompose(&x, &source)? {
        println!("  layer {} on {}", layer.alpha, layer.formula);
    }
    println!("act in the target: {}", show(&t_bullet(&source, &target, &s)?));
    let eq = verify_integral_equality(&source, &target, &s)?;
    println!("integrals: {} and {} (equal: {})", eq.source_value, eq.target_value, eq.equal);
    Ok(())
}
