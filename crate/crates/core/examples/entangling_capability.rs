//! Entangling capability h_max = max |<a1 b1|H|a2 b2>| for several
//! Hamiltonians, with the optimizer's cross-check against a grid search.

use std::f64::consts::FRAC_PI_6;

use cpt_entangle::dynamics::product_hamiltonian;
use cpt_entangle::linalg::{pauli, tensor_product, CMatrix};
use cpt_entangle::metric::MetricSpace;
use cpt_entangle::ptqubit::{PTParams, PTQubitSystem};
use cpt_entangle::rate::{h_max, HMaxConfig};

fn report(
    name: &str,
    h: &CMatrix,
    s1: &MetricSpace,
    s2: &MetricSpace,
    expected: Option<f64>,
) -> cpt_entangle::Result<()> {
    let r = h_max(h, s1, s2, &HMaxConfig::default())?;
    let expected = expected.map_or("-".to_string(), |v| format!("{v:.9}"));
    println!(
        "{name:<28} {:>12.9} {expected:>12} {:>10.1e} {:>6}/{:<3} {:>8}",
        r.value, r.cross_check_gap, r.converged_starts, r.starts, r.evaluations
    );
    Ok(())
}

fn main() -> cpt_entangle::Result<()> {
    println!(
        "{:<28} {:>12} {:>12} {:>10} {:>10} {:>8}",
        "Hamiltonian", "h_max", "expected", "grid gap", "converged", "evals"
    );
    let id = MetricSpace::identity(2);
    report("identity", &CMatrix::identity(4), &id, &id, Some(0.0))?;
    report(
        "sigma_x (x) sigma_x",
        &tensor_product(&pauli::x(), &pauli::x()),
        &id,
        &id,
        Some(1.0),
    )?;
    let heisenberg = &(&tensor_product(&pauli::x(), &pauli::x())
        + &tensor_product(&pauli::y(), &pauli::y()))
        + &tensor_product(&pauli::z(), &pauli::z());
    report("XX + YY + ZZ", &heisenberg, &id, &id, None)?;

    for (r, s, theta) in [(1.0, 1.0, FRAC_PI_6), (0.5, 1.0, 1.2), (1.4, 2.0, -0.7)] {
        let sys = PTQubitSystem::build(PTParams::symmetric(r, s, theta))?;
        let ph = product_hamiltonian(&sys, &sys)?;
        report(
            &format!("H({r}, {s}, {theta:.3}) squared"),
            &ph.matrix,
            sys.space(),
            sys.space(),
            Some(ph.coupling()),
        )?;
    }
    Ok(())
}
