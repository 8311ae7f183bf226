//! Entanglement generated from |00> by the coupled Hamiltonian H1 ⊗ H2.
//!
//! Compares the closed-form evolution operator with a matrix exponential and
//! shows that dropping the local terms leaves the entropy unchanged.

use std::f64::consts::FRAC_PI_6;

use cpt_entangle::dynamics::{
    closed_form_amplitudes, entangling_unitary, evolve, product_hamiltonian,
};
use cpt_entangle::linalg::{expm, CVector, I};
use cpt_entangle::ptqubit::{PTParams, PTQubitSystem};

fn main() -> cpt_entangle::Result<()> {
    let a = PTQubitSystem::build(PTParams::symmetric(1.0, 1.0, FRAC_PI_6))?;
    let b = PTQubitSystem::build(PTParams::symmetric(0.6, 0.9, 0.4))?;
    let ph = product_hamiltonian(&a, &b)?;
    println!("coupling omega*omega'/4 = {:.9}", ph.coupling());
    println!(
        "bloch vectors n = {:.6?}, n' = {:.6?}",
        ph.bloch.0.n, ph.bloch.1.n
    );

    let times: Vec<f64> = (0..=20).map(|k| 0.25 * k as f64).collect();
    let psi0 = CVector::basis(4, 0);
    let nonlocal = evolve(&ph.nonlocal_part, &psi0, &times, a.space(), b.space())?;
    let full = evolve(&ph.matrix, &psi0, &times, a.space(), b.space())?;

    println!(
        "{:>6} {:>12} {:>12} {:>10} {:>10}",
        "t", "E nonlocal", "E full H", "|U - expm|", "|amp err|"
    );
    for (k, &t) in times.iter().enumerate() {
        let u = entangling_unitary(&ph, t);
        let oracle = expm(&ph.nonlocal_part.scale(-I * t))?;
        let amps = CVector::from_vec(closed_form_amplitudes(a.params(), b.params(), t)?.to_vec());
        println!(
            "{t:>6.2} {:>12.9} {:>12.9} {:>10.1e} {:>10.1e}",
            nonlocal.entropies[k],
            full.entropies[k],
            u.max_abs_diff(&oracle),
            amps.max_abs_diff(&nonlocal.states[k])
        );
    }
    Ok(())
}
