//! A law of the generic vorticity system carrying an arbitrary F(t,x,y,z)
//! is trivial, and the second theorem extracts the identity behind it.

use noether::catalog::catalog_entry;
use noether::engine::{triviality_classify, Triviality};
use noether::expr::VarId;

fn main() {
    let e = catalog_entry("vorticity-generic").unwrap();
    let sys = &e.system;
    let s = sys.space();
    let cl = e.law("F-family").unwrap();
    let rep = triviality_classify(cl, sys).unwrap();
    println!(
        "classification: {}",
        match rep.classification {
            Triviality::Trivial => "trivial",
            Triviality::Nontrivial => "nontrivial",
        }
    );
    for id in &rep.identities {
        println!("identity:     {}", id.render(sys));
        if let Some(st) = id.strengthen(sys) {
            println!("strengthened: {}", st.render(sys));
        }
    }
    for (i, (k1, k2)) in rep.residual_fluxes.iter().zip(&rep.kind2).enumerate() {
        let v = s.var_name(VarId(i as u8));
        println!("{v}: vanishing on-shell {}", k1.render(sys));
        println!("{v}: divergence-free    {}", s.render(k2));
    }
}
