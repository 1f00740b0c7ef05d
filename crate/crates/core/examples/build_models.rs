//! Every model construction run on the voting assessment, with the
//! postconditions each one certifies.

use contingent::assessment::Assessment;
use contingent::construct::{build, Completion, Construction};

const VOTING: &str = include_str!("../fixtures/voting.json");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = Assessment::from_json(VOTING)?;
    for c in Construction::all() {
        match build(&a, c, Completion::Refuse) {
            Ok(out) => {
                println!("{c}: {} states", out.model.state_count());
                for check in &out.certificate {
                    println!("  {:<28} {}", check.name, check.holds);
                }
            }
            Err(e) => println!("{c}: refused ({e})"),
        }
    }
    Ok(())
}
