//! Schmidt decomposition and entanglement of two PT qubits, checked against
//! the closed form in the CPT eigenbasis.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_6};

use cpt_entangle::entanglement::{
    entanglement_entropy, is_product, schmidt, state_from_eigen_amplitudes,
    two_ptqubit_entanglement,
};
use cpt_entangle::linalg::{c64, ZERO};
use cpt_entangle::metric::MetricSpace;
use cpt_entangle::ptqubit::{PTParams, PTQubitSystem};

fn main() -> cpt_entangle::Result<()> {
    let a = PTQubitSystem::build(PTParams::symmetric(1.0, 1.0, FRAC_PI_6))?;
    let b = PTQubitSystem::build(PTParams::symmetric(0.4, 1.3, -0.8))?;
    let h = FRAC_1_SQRT_2;

    let cases = [
        ("psi+ psi+", [c64(1.0, 0.0), ZERO, ZERO, ZERO]),
        ("CPT singlet", [ZERO, c64(h, 0.0), c64(-h, 0.0), ZERO]),
        (
            "partly entangled",
            [c64(0.8, 0.0), ZERO, ZERO, c64(0.0, 0.6)],
        ),
        (
            "product (x)(x)",
            [c64(0.5, 0.0), c64(0.5, 0.0), c64(0.5, 0.0), c64(0.5, 0.0)],
        ),
    ];
    println!(
        "{:<18} {:>12} {:>12} {:>8}  Schmidt weights",
        "state", "closed form", "pipeline", "product"
    );
    for (name, q) in cases {
        let psi = state_from_eigen_amplitudes(&a, &b, q);
        let closed = two_ptqubit_entanglement(q[0], q[1], q[2], q[3])?;
        let sf = schmidt(&psi, a.space(), b.space())?;
        println!(
            "{name:<18} {closed:>12.9} {:>12.9} {:>8}  {:.6?}",
            sf.entropy(),
            is_product(q[0], q[1], q[2], q[3]),
            sf.weights()
        );
    }

    // The same coefficients read with the Dirac product describe a
    // different amount of entanglement.
    let psi = state_from_eigen_amplitudes(&a, &b, [ZERO, c64(h, 0.0), c64(-h, 0.0), ZERO]);
    let id = MetricSpace::identity(2);
    println!(
        "CPT singlet entropy: CPT product {:.6} bits, Dirac product {:.6} bits",
        entanglement_entropy(&psi, a.space(), b.space())?,
        entanglement_entropy(&psi, &id, &id)?
    );
    Ok(())
}
