//! Entanglement rate along a trajectory, compared with a finite difference
//! of the entropy and with the capability bound.

use std::f64::consts::FRAC_PI_6;

use cpt_entangle::dynamics::product_hamiltonian;
use cpt_entangle::entanglement::entanglement_entropy;
use cpt_entangle::linalg::{expm, CVector, I};
use cpt_entangle::ptqubit::{PTParams, PTQubitSystem};
use cpt_entangle::rate::{h_max, trajectory_with_capability, HMaxConfig};

fn main() -> cpt_entangle::Result<()> {
    let sys = PTQubitSystem::build(PTParams::symmetric(1.0, 1.0, FRAC_PI_6))?;
    let ph = product_hamiltonian(&sys, &sys)?;
    let (s1, s2) = (sys.space(), sys.space());
    let h = &ph.matrix;
    let psi0 = CVector::basis(4, 0);

    let capability = h_max(h, s1, s2, &HMaxConfig::default())?.value;
    println!("h_max = {capability:.12}");

    let entropy_at = |t: f64| -> cpt_entangle::Result<f64> {
        let state = expm(&h.scale(-I * t))?.apply(&psi0);
        entanglement_entropy(&state, s1, s2)
    };

    let times: Vec<f64> = (0..=24).map(|k| 0.2 * k as f64).collect();
    let samples = trajectory_with_capability(h, &psi0, s1, s2, &times, capability)?;
    println!(
        "{:>5} {:>10} {:>10} {:>12} {:>12} {:>10} {:>12}",
        "t", "lambda", "E", "dE/dt", "finite diff", "bound", "closed form"
    );
    let step = 1e-5;
    for s in samples {
        let fd = (entropy_at(s.t + step)? - entropy_at((s.t - step).max(0.0))?)
            / (s.t + step - (s.t - step).max(0.0));
        println!(
            "{:>5.2} {:>10.6} {:>10.6} {:>12.6} {:>12.6} {:>10.4} {:>12.6}",
            s.t, s.lambda, s.entropy, s.gamma, fd, s.bound, s.lambda_closed_form
        );
    }
    Ok(())
}
