//! A Lagrangian in curl potentials u, v whose gauge symmetry carries an
//! arbitrary F(t,x,y,z); the second theorem returns div curl = 0.

use noether::catalog::catalog_entry;
use noether::engine::{first_theorem_variational, second_theorem_identity};

fn main() {
    let e = catalog_entry("curl-potential").unwrap();
    let sys = &e.system;
    let s = sys.space();
    let l = e.lagrangian.as_ref().unwrap();
    for name in ["gauge-u", "gauge-v"] {
        let alpha = e.symmetry(name).unwrap();
        let m = e
            .variation_fluxes
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m.clone());
        match first_theorem_variational(l, alpha, m, s.p()) {
            Ok(law) => {
                println!("{name}: law valid = {}", law.is_valid(sys));
                for id in second_theorem_identity(&law, sys).unwrap() {
                    let shown = id.strengthen(sys).unwrap_or(id);
                    println!("  identity {}", shown.render(sys));
                }
            }
            Err(err) => println!("{name}: {err}"),
        }
    }
}
