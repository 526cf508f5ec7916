//! Smith theory on small complexes with a cyclic action of prime order.

use exotic::smithhom::{
    orbit_complex, sample_instances, transfer_check, verify_smith_sequences, ChainComplex,
    Coefficients,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for inst in sample_instances() {
        let k = &inst.complex;
        let betti = ChainComplex::from_simplicial(k, Coefficients::Mod(inst.action.order()))
            .betti(inst.action.order());
        let orbit = orbit_complex(k, &inst.action)?;
        let report = verify_smith_sequences(k, &inst.action)?;
        let transfer = transfer_check(k, &inst.action, 2)?;
        println!(
            "{}: chi = {}, chi(orbit) = {}, Betti mod p {:?}, sequences exact: {}, transfer: {}",
            inst.name,
            k.euler_characteristic(),
            orbit.chain_complex().euler_characteristic(),
            betti,
            report.all_exact(),
            transfer.all_hold(),
        );
    }
    Ok(())
}
