#![allow(dead_code)]

use cpt_entangle::linalg::{c64, CVector};
use cpt_entangle::ptqubit::{PTParams, PTQubitSystem};
use num_complex::Complex64;
use rand::Rng;

/// Unbroken `s = t` parameters with `|sin α| ≤ 0.85`.
pub fn random_params(rng: &mut impl Rng) -> PTParams {
    let s = rng.gen_range(0.5..2.0);
    let mut theta: f64 = rng.gen_range(-1.5..1.5);
    if theta.abs() < 0.1 {
        theta = 0.1f64.copysign(theta);
    }
    let sin_alpha = rng.gen_range(-0.85..0.85);
    PTParams::symmetric(sin_alpha * s / theta.sin(), s, theta)
}

pub fn random_system(rng: &mut impl Rng) -> PTQubitSystem {
    PTQubitSystem::build(random_params(rng)).expect("random parameters are unbroken")
}

pub fn random_complex(rng: &mut impl Rng) -> Complex64 {
    c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Unnormalized random vector of dimension `dim`.
pub fn random_vector(rng: &mut impl Rng, dim: usize) -> CVector {
    (0..dim).map(|_| random_complex(rng)).collect()
}

/// Random quadruple with unit sum of squared moduli.
pub fn random_quadruple(rng: &mut impl Rng) -> [Complex64; 4] {
    let mut q = [
        random_complex(rng),
        random_complex(rng),
        random_complex(rng),
        random_complex(rng),
    ];
    let n = q.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut q {
        *z /= n;
    }
    q
}
