//! The Dirac singlet (|01> - |10>)/sqrt(2) traced with the CPT inner product.
//!
//! Prints the entropy obtained from the reduced state alongside the closed
//! form with eigenvalues (1 ± 2 sin α)/2, which disagrees with it and is
//! undefined once sin α > 1/2.

use cpt_entangle::entanglement::cross_theory_singlet_entropy;

fn main() -> cpt_entangle::Result<()> {
    println!(
        "{:>8} {:>14} {:>14} {:>14}",
        "alpha", "reduced state", "closed form", "metric frame"
    );
    for k in 0..=14 {
        let alpha = 0.1 * k as f64;
        let row = cross_theory_singlet_entropy(alpha)?;
        let closed = row
            .closed_form_value
            .map_or("undefined".into(), |v| format!("{v:.9}"));
        println!(
            "{alpha:>8.2} {:>14.9} {closed:>14} {:>14.9}",
            row.oracle_value, row.metric_frame_value
        );
    }
    Ok(())
}
