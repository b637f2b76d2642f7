//! Liouville's equation u_tx = exp(u): a variational symmetry carrying an
//! arbitrary f(t) and the function-free law it implies.

use noether::catalog::catalog_entry;
use noether::engine::{first_theorem_variational, subset_variable_theorem};
use noether::expr::DepId;
use noether::jet::euler;

fn main() {
    let e = catalog_entry("liouville").unwrap();
    let sys = &e.system;
    let s = sys.space();
    let l = e.lagrangian.as_ref().unwrap();
    println!("L      = {}", s.render(l));
    println!("E_u(L) = {}", s.render(&euler(l, DepId(0))));

    let alpha = e.symmetry("f-family").unwrap();
    let m = e
        .variation_fluxes
        .iter()
        .find(|(n, _)| n == "f-family")
        .map(|(_, m)| m.clone());
    let law = first_theorem_variational(l, alpha, m, s.p()).unwrap();
    println!("alpha  = {}", s.render(&alpha.components[0]));
    for k in &law.fluxes {
        println!("  flux {}", s.render(k));
    }

    let cl = e.law("f-family").unwrap();
    let out = subset_variable_theorem(cl, sys, "f").unwrap();
    println!(
        "Div({}) = {}",
        out.fluxes
            .iter()
            .map(|k| s.render(k))
            .collect::<Vec<_>>()
            .join(", "),
        out.rhs.render(sys)
    );
    println!("characteristic {}", s.render(&out.law.characteristic[0]));
}
