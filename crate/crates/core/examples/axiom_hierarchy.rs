//! Probabilities, belief functions and plain capacities over two atoms,
//! and which axioms each one satisfies.

use contingent::assessment::{check_a, check_e, check_i, check_ie, check_nt, Assessment, DEFAULT_N_MAX};
use contingent::logic::Atoms;
use contingent::rational::q;

fn report(label: &str, a: &Assessment) {
    let checks = [
        check_nt(a),
        check_e(a),
        check_i(a),
        check_ie(a, DEFAULT_N_MAX),
        check_a(a),
    ];
    let line: Vec<String> = checks
        .iter()
        .map(|r| format!("{}={}", r.axiom.id(), if r.pass { "pass" } else { "FAIL" }))
        .collect();
    println!("{label:<14} {}", line.join(" "));
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let atoms = Atoms::new(&["p", "q"])?;
    let universe = ["p", "q", "p & q", "p | q", "!p"];

    // Uniform probability on the four valuations.
    let probability = [q(1, 2), q(1, 2), q(1, 4), q(3, 4), q(1, 2)];
    // Mass 1/2 on p and 1/2 on q.
    let belief = [q(1, 2), q(1, 2), q(0, 1), q(1, 1), q(0, 1)];
    // Certain of p and of q separately, never of both.
    let capacity = [q(1, 1), q(1, 1), q(0, 1), q(1, 1), q(0, 1)];

    for (label, values) in [
        ("probability", probability),
        ("belief", belief),
        ("capacity", capacity),
    ] {
        let pairs: Vec<(&str, _)> = universe.iter().copied().zip(values).collect();
        report(label, &Assessment::from_texts(&atoms, &pairs)?);
    }
    Ok(())
}
