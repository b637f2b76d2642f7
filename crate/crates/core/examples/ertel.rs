//! Ertel's potential vorticity law for the Euler vorticity system with an
//! advected scalar psi.

use noether::catalog::catalog_entry;
use noether::engine::{equivalent_characteristics, triviality_classify};
use noether::expr::{Expr, VarId};

fn main() {
    let e = catalog_entry("ertel").unwrap();
    let sys = &e.system;
    let s = sys.space();
    let cl = e.law("ertel").unwrap();
    for (i, k) in cl.fluxes.iter().enumerate() {
        println!("K^{} = {}", s.var_name(VarId(i as u8)), s.render(k));
    }
    println!("D_i K^i = {}", cl.rhs(sys).render(sys));
    println!("valid off-shell: {}", cl.is_valid(sys));
    let zero = vec![Expr::zero(); sys.len()];
    println!(
        "characteristic vanishes on-shell: {}",
        equivalent_characteristics(sys, &cl.characteristic, &zero).unwrap()
    );
    let rep = triviality_classify(cl, sys).unwrap();
    println!("classification: {:?}", rep.classification);
}
