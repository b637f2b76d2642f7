//! The numeric oracle: random polynomial profiles confirm a law and reject
//! a perturbed one.

use noether::catalog::catalog_entry;
use noether::engine::ConservationLaw;
use noether::oracle::{verify_conservation_law, verify_identity, OracleConfig, TrialProfile};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let cfg = OracleConfig::default();
    let kdv = catalog_entry("kdv").unwrap();
    let sys = &kdv.system;
    let s = sys.space();
    let law = kdv.law("scaling").unwrap();
    let rep = verify_conservation_law(law, sys, &cfg).unwrap();
    println!(
        "scaling law: passed {} (max residual {:.2e})",
        rep.passed(),
        rep.max_residual
    );

    let wrong = ConservationLaw::new(law.fluxes.clone(), vec![s.parse("2").unwrap()]);
    let rep = verify_conservation_law(&wrong, sys, &cfg).unwrap();
    println!(
        "doubled characteristic: passed {} (max residual {:.2e})",
        rep.passed(),
        rep.max_residual
    );

    let e = s.parse("sin(u)^2 + cos(u)^2 - 1").unwrap();
    println!(
        "sin^2 + cos^2 - 1 == 0: {}",
        verify_identity(s, &e, &cfg).unwrap().passed()
    );

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let profile = TrialProfile::random(s, cfg.degree, &mut rng);
    let delta = sys.equation(0);
    println!(
        "Delta at {:?} = {:.6}",
        profile.point(),
        profile.evaluate(delta).unwrap()
    );
}
