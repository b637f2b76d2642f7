//! The Euler vorticity system: which reading of the g-family symmetry
//! survives, and the law it generates.

use noether::catalog::catalog_entry;
use noether::engine::{first_theorem_quasi, is_symmetry, second_theorem_identity};

fn main() {
    let e = catalog_entry("vorticity-euler").unwrap();
    let sys = &e.system;
    for name in ["g-family", "g-family-literal"] {
        let alpha = e.symmetry(name).unwrap();
        let check = is_symmetry(sys, alpha).unwrap();
        println!("{name}: symmetry on-shell = {}", check.holds);
    }

    let alpha = e.symmetry("g-family").unwrap();
    let a = e.alternative.as_ref().unwrap();
    let d = first_theorem_quasi(sys, a, alpha, e.multipliers.as_deref()).unwrap();
    println!("law valid off-shell: {}", d.law.is_valid(sys));
    println!(
        "arbitrary functions: {}",
        d.law
            .functions
            .iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    for (f, id) in d
        .law
        .functions
        .iter()
        .zip(second_theorem_identity(&d.law, sys).unwrap())
    {
        if id.combination.is_zero() {
            println!("from {f}: vacuous");
            continue;
        }
        let shown = id.strengthen(sys).unwrap_or(id);
        println!("from {f}: {}", shown.render(sys));
    }
}
