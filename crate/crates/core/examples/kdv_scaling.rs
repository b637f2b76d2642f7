//! KdV as a quasi-Noether system: the scaling symmetry gives a
//! conservation law with characteristic 1.

use noether::catalog::catalog_entry;
use noether::engine::{first_theorem_quasi, is_symmetry, multiplier_search, MultiplierAnsatz};

fn main() {
    let kdv = catalog_entry("kdv").unwrap();
    let sys = &kdv.system;
    let s = sys.space();
    let alpha = kdv.symmetry("scaling").unwrap();
    let a = kdv.alternative.as_ref().unwrap();

    println!("Delta  = {}", s.render(sys.equation(0)));
    println!("alpha  = {}", s.render(&alpha.components[0]));
    println!(
        "symmetry holds on-shell: {}",
        is_symmetry(sys, alpha).unwrap().holds
    );

    let d = first_theorem_quasi(sys, a, alpha, None).unwrap();
    println!("X_alpha A = {}", d.gamma.combination(sys).render(sys));
    for (i, k) in d.law.fluxes.iter().enumerate() {
        println!(
            "J^{} = {}",
            s.var_name(noether::expr::VarId(i as u8)),
            s.render(k)
        );
    }
    println!("characteristic = {}", s.render(&d.law.characteristic[0]));
    println!("valid off-shell: {}", d.law.is_valid(sys));

    // Multipliers beta with E(beta * Delta) = 0 on-shell, up to order 2 and degree 2.
    let ansatz = MultiplierAnsatz {
        order: 2,
        degree: 2,
        explicit: true,
    };
    for beta in multiplier_search(sys, &ansatz).unwrap() {
        println!("beta = {}", s.render(&beta[0]));
    }
}
