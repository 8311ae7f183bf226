//! Inner products, orthogonality and measurement in a CPT metric space,
//! compared with the ordinary Dirac inner product.

use std::f64::consts::FRAC_PI_6;

use cpt_entangle::linalg::{c64, CVector};
use cpt_entangle::metric::MetricSpace;
use cpt_entangle::ptqubit::{PTParams, PTQubitSystem};

fn main() -> cpt_entangle::Result<()> {
    let sys = PTQubitSystem::build(PTParams::symmetric(1.0, 1.0, FRAC_PI_6))?;
    let cpt = sys.space();
    let dirac = MetricSpace::identity(2);

    let e0 = CVector::basis(2, 0);
    let e1 = CVector::basis(2, 1);
    println!("              Dirac                CPT");
    println!(
        "<0|0>   {:>12.6}   {:>20.6}",
        dirac.inner(&e0, &e0)?,
        cpt.inner(&e0, &e0)?
    );
    println!(
        "<0|1>   {:>12.6}   {:>20.6}",
        dirac.inner(&e0, &e1)?,
        cpt.inner(&e0, &e1)?
    );

    // The computational basis is not orthogonal under the CPT product; its
    // CPT orthocomplement differs from e1.
    let perp = cpt.orthocomplement(&e0)?;
    println!("CPT orthocomplement of |0>: {:.6?}", perp.as_slice());
    println!(
        "  check <0|perp>_CPT = {:.2e}",
        cpt.inner(&e0, &perp)?.norm()
    );

    // Whitening maps the CPT product onto the Dirac product.
    let psi = CVector::from_vec(vec![c64(0.3, -0.2), c64(0.9, 0.4)]);
    let phi = CVector::from_vec(vec![c64(-0.5, 0.1), c64(0.2, 0.7)]);
    let direct = cpt.inner(&psi, &phi)?;
    let whitened = cpt.whiten(&psi)?.dirac(&cpt.whiten(&phi)?);
    println!("<psi|phi>_CPT = {direct:.12}, via whitening = {whitened:.12}");

    // Born rule in the eigenbasis, which is CPT-orthonormal.
    let basis = [sys.psi_plus().clone(), sys.psi_minus().clone()];
    for (name, state) in [("|0>", &e0), ("|1>", &e1), ("psi", &psi)] {
        let p = cpt.measurement_probability(state, &basis)?;
        println!("P(psi+), P(psi-) for {name:<4}: {:.6}, {:.6}", p[0], p[1]);
    }

    println!(
        "H is a CPT observable: {}",
        cpt.is_metric_observable(sys.hamiltonian())?
    );
    println!(
        "H is Dirac-Hermitian:  {}",
        sys.hamiltonian().hermitian_deviation() < 1e-12
    );
    Ok(())
}
