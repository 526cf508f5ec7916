//! Locally nilpotent derivations: the Nagata flow and the two standard
//! derivations of the Russell cubic with their common invariants.

use exotic::cli::repro::{nagata_derivation, russell_derivations};
use exotic::derivations::{
    exp_flow, flow_group_law_holds, invariant_candidates, kernel_elements, nilpotency_test,
    DEFAULT_NILPOTENCY_BOUND,
};
use exotic::polyring::Rational;
use num_traits::One;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let nagata = nagata_derivation()?;
    let cert = nilpotency_test(&nagata, DEFAULT_NILPOTENCY_BOUND)?;
    let flow = exp_flow(&nagata, &cert)?;
    for img in flow.at(&Rational::one())? {
        println!("exp(d)(..) = {img}");
    }
    println!("group law: {}", flow_group_law_holds(&nagata, &cert)?);

    let (d1, d2) = russell_derivations()?;
    for (name, d) in [("d1", &d1), ("d2", &d2)] {
        let cert = nilpotency_test(d, DEFAULT_NILPOTENCY_BOUND)?;
        println!("{name}: {d}; orders {:?}", cert.orders()?);
        let ker: Vec<String> = kernel_elements(d, &cert, 2)?
            .iter()
            .map(|p| p.to_string())
            .collect();
        println!("  kernel up to degree 2: {ker:?}");
    }
    let inv = invariant_candidates(&[d1, d2], 2)?;
    let ml: Vec<String> = inv.ml_upper_bound.iter().map(|p| p.to_string()).collect();
    println!("common kernel up to degree 2: {ml:?}");
    Ok(())
}
