//! Spectrum, CPT metric and conjugation algebra of a single PT-symmetric qubit.
//!
//! cargo run --example pt_spectrum -- [r] [s] [theta]

use cpt_entangle::linalg::eig_hermitian;
use cpt_entangle::ptqubit::{PTParams, PTQubitSystem};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse())
        .collect::<Result<_, _>>()?;
    let (r, s, theta) = match args[..] {
        [r, s, theta] => (r, s, theta),
        _ => (1.0, 1.0, std::f64::consts::FRAC_PI_6),
    };
    let params = PTParams::symmetric(r, s, theta);
    let sys = PTQubitSystem::build(params)?;

    let (lo, hi) = sys.energies();
    println!(
        "H = [[r e^(i theta), s], [s, r e^(-i theta)]] with r = {r}, s = {s}, theta = {theta}"
    );
    println!("energies      E- = {lo:.12}, E+ = {hi:.12}");
    println!(
        "alpha         {:.12} (sin alpha = {:.12})",
        sys.alpha(),
        sys.alpha().sin()
    );

    let metric = sys.space().metric();
    println!("metric M:");
    for i in 0..2 {
        println!(
            "  [{:>22}, {:>22}]",
            format!("{:.6}", metric[(i, 0)]),
            format!("{:.6}", metric[(i, 1)])
        );
    }
    println!(
        "metric eigenvalues {:?}",
        eig_hermitian(metric)?.eigenvalues
    );

    let m = sys.space();
    println!(
        "<psi+|psi+> = {:.3e}, <psi-|psi-> = {:.3e}, <psi+|psi-> = {:.3e}",
        m.inner(sys.psi_plus(), sys.psi_plus())?,
        m.inner(sys.psi_minus(), sys.psi_minus())?,
        m.inner(sys.psi_plus(), sys.psi_minus())?.norm()
    );
    println!(
        "Dirac overlap <psi+|psi-> = {:.6}",
        sys.psi_plus().dirac(sys.psi_minus())
    );

    let report = sys.verify_algebra();
    println!("algebra residuals:");
    println!("  C^2 - I        {:.2e}", report.c_squared);
    println!("  [C, H]         {:.2e}", report.c_h_commutator);
    println!("  [C, PT]        {:.2e}", report.c_pt_commutator);
    println!("  H^dag M - M H  {:.2e}", report.h_metric_adjoint);
    Ok(())
}
