//! Which part of a background theory an agent reasons with, recovered from
//! likelihood assessments alone.

use contingent::assessment::Assessment;
use contingent::identify::{largest_subtheory, subtheory_via_certainty, understood_implications};
use contingent::logic::Theory;

const VOTING: &str = include_str!("../fixtures/voting.json");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = Assessment::from_json(VOTING)?;
    let atoms = a.atoms().clone();
    let theory = Theory::new(&atoms, vec![atoms.parse("r <-> !b")?, atoms.parse("p -> b")?])?;

    let verdicts = understood_implications(&a)?;
    let missed = verdicts.iter().filter(|v| !v.understood).count();
    println!("{} valid implications, {missed} not understood", verdicts.len());

    let r = largest_subtheory(&a, &theory)?;
    let gens: Vec<String> = r.subtheory.generators.iter().map(|g| g.to_string()).collect();
    println!("largest sub-theory: closure of {{{}}} (unique: {})", gens.join(", "), r.unique);

    let c = subtheory_via_certainty(&a, &theory)?;
    let gens: Vec<String> = c.subtheory.generators.iter().map(|g| g.to_string()).collect();
    println!("from certain statements: closure of {{{}}}", gens.join(", "));
    Ok(())
}
