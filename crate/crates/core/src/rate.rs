//! Entanglement rate and entangling capability of two-qubit Hamiltonians.
//!
//! For `Ψ = √λ a1⊗b1 + √(1-λ) a2⊗b2` (Schmidt form, `λ` the larger weight)
//! evolving under a metric-self-adjoint `H`:
//!
//! * `dλ/dt = 2√(λ(1-λ)) Im h`, with `h = ⟨a1 b1| H |a2 b2⟩` in the joint metric;
//! * `dE/dt = f(λ) Im h` where `f(λ) = 2√(λ(1-λ)) log2((1-λ)/λ)`;
//! * the magnitude form `Γ = f(λ)|h|` and the capability
//!   `h_max = max |h|` over unit `a1`, `b1`;
//! * `|dE/dt| ≤ |log2((1-λ)/λ)| h_max`.
//!
//! `h_max` has no closed form in general; it is found by a multi-start
//! Nelder–Mead search over four angles in the whitened frame and
//! cross-checked against a dense grid.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::entanglement::{binary_entropy, schmidt, SchmidtForm};
use crate::error::{Error, Result};
use crate::linalg::{c64, expm, tensor_product, CMatrix, CVector, I, ZERO};
use crate::metric::{tensor_space, MetricSpace};
use crate::optimize::{halton, NelderMead};

/// Environment variable capping optimizer threads.
pub const THREADS_ENV: &str = "CPT_ENTANGLE_THREADS";

fn check_two_qubit(h: &CMatrix, s1: &MetricSpace, s2: &MetricSpace) -> Result<()> {
    if s1.dim() != 2 || s2.dim() != 2 {
        return Err(Error::DimMismatch {
            expected: 2,
            got: if s1.dim() != 2 { s1.dim() } else { s2.dim() },
        });
    }
    let n = h.ensure_square()?;
    if n != 4 {
        return Err(Error::DimMismatch {
            expected: 4,
            got: n,
        });
    }
    Ok(())
}

/// `h(H, a1, b1) = ⟨a1 b1| H |a2 b2⟩` with `a2`, `b2` the metric
/// orthocomplements of `a1`, `b1`.
pub fn h_value(
    h: &CMatrix,
    a1: &CVector,
    b1: &CVector,
    s1: &MetricSpace,
    s2: &MetricSpace,
) -> Result<Complex64> {
    check_two_qubit(h, s1, s2)?;
    let a2 = s1.orthocomplement(a1)?;
    let b2 = s2.orthocomplement(b1)?;
    let joint = tensor_space(s1, s2);
    joint.inner(&a1.kron(b1), &h.apply(&a2.kron(&b2)))
}

fn schmidt_pair_element(h: &CMatrix, sf: &SchmidtForm) -> Result<(f64, Complex64)> {
    if sf.len() != 2 {
        return Err(Error::RankMismatch {
            expected: 2,
            got: sf.len(),
        });
    }
    let w = sf.weights();
    let total = w[0] + w[1];
    if !(total > 0.0) {
        return Err(Error::ZeroVector { norm: total.sqrt() });
    }
    let lambda = w[0] / total;
    let joint = tensor_space(&sf.spaces.0, &sf.spaces.1);
    let element = joint.inner(
        &sf.left[0].kron(&sf.right[0]),
        &h.apply(&sf.left[1].kron(&sf.right[1])),
    )?;
    Ok((lambda, element))
}

/// `dλ/dt = 2√(λ(1-λ)) Im⟨a1 b1|H|a2 b2⟩` for the Schmidt vectors in `sf`.
pub fn lambda_dot(
    h: &CMatrix,
    sf: &SchmidtForm,
    s1: &MetricSpace,
    s2: &MetricSpace,
) -> Result<f64> {
    check_two_qubit(h, s1, s2)?;
    let (lambda, element) = schmidt_pair_element(h, sf)?;
    Ok(2.0 * (lambda * (1.0 - lambda)).max(0.0).sqrt() * element.im)
}

/// `dE/dλ = log2((1-λ)/λ)` times `2√(λ(1-λ))`, extended by zero at the
/// endpoints.
pub fn rate_factor(lambda: f64) -> f64 {
    if lambda <= 0.0 || lambda >= 1.0 {
        return 0.0;
    }
    2.0 * (lambda * (1.0 - lambda)).sqrt() * ((1.0 - lambda) / lambda).log2()
}

/// Rate quantities at one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rate {
    /// Larger Schmidt weight.
    pub lambda: f64,
    /// `⟨a1 b1|H|a2 b2⟩` on the Schmidt vectors.
    pub h: Complex64,
    /// `f(λ)|h|`.
    pub magnitude: f64,
    /// `f(λ) Im h = dE/dt`.
    pub signed: f64,
}

/// Entanglement rate of `psi` (normalized internally) under `h`.
pub fn gamma(h: &CMatrix, psi: &CVector, s1: &MetricSpace, s2: &MetricSpace) -> Result<Rate> {
    check_two_qubit(h, s1, s2)?;
    let unit = tensor_space(s1, s2).normalize(psi)?;
    let sf = schmidt(&unit, s1, s2)?;
    let (lambda, element) = schmidt_pair_element(h, &sf)?;
    let f = rate_factor(lambda);
    Ok(Rate {
        lambda,
        h: element,
        magnitude: f * element.norm(),
        signed: f * element.im,
    })
}

/// Settings for [`h_max`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HMaxConfig {
    pub starts: usize,
    pub tolerance: f64,
    /// Evaluation cap per local search.
    pub max_evaluations: usize,
    /// Points per angle in the cross-check grid.
    pub grid_points: usize,
    /// Offset into the quasi-random start sequence.
    pub seed: u64,
    /// Worker threads; `None` reads `CPT_ENTANGLE_THREADS`, else uses all cores.
    pub threads: Option<usize>,
}

impl Default for HMaxConfig {
    fn default() -> Self {
        Self {
            starts: 32,
            tolerance: 1e-10,
            max_evaluations: 20_000,
            grid_points: 24,
            seed: 0,
            threads: None,
        }
    }
}

/// Maximum of `|h|` with its maximizers and optimizer diagnostics.
#[derive(Debug, Clone, Serialize)]
pub struct HMaxResult {
    pub value: f64,
    #[serde(serialize_with = "serialize_vector")]
    pub a1: CVector,
    #[serde(serialize_with = "serialize_vector")]
    pub b1: CVector,
    pub evaluations: usize,
    pub starts: usize,
    pub converged_starts: usize,
    /// Best value from the multi-start search alone.
    pub multistart_value: f64,
    /// Best raw grid value.
    pub grid_value: f64,
    /// Grid maximum after local refinement.
    pub grid_refined_value: f64,
    /// `|multistart_value - grid_refined_value|`.
    pub cross_check_gap: f64,
}

fn serialize_vector<S: serde::Serializer>(
    v: &CVector,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.dim()))?;
    for z in v.iter() {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

/// `(cos(x/2), e^{iφ} sin(x/2))` and its Dirac orthocomplement.
fn unit_pair(x: f64, phi: f64) -> ([Complex64; 2], [Complex64; 2]) {
    let (s, c) = (0.5 * x).sin_cos();
    let e = Complex64::from_polar(1.0, phi);
    ([c64(c, 0.0), e * s], [-e.conj() * s, c64(c, 0.0)])
}

/// `|h|` in the whitened frame, where `hw = (S1⊗S2) H (S1⊗S2)^{-1}`.
struct WhitenedObjective {
    hw: CMatrix,
}

impl WhitenedObjective {
    /// `G[j][l] = Σ_ik conj(u_i) hw[(i,j),(k,l)] u⊥_k`.
    fn contract_first(&self, u: &[Complex64; 2], u_perp: &[Complex64; 2]) -> [[Complex64; 2]; 2] {
        let mut g = [[ZERO; 2]; 2];
        for (j, row) in g.iter_mut().enumerate() {
            for (l, slot) in row.iter_mut().enumerate() {
                let mut acc = ZERO;
                for (i, ui) in u.iter().enumerate() {
                    for (k, uk) in u_perp.iter().enumerate() {
                        acc += ui.conj() * self.hw[(2 * i + j, 2 * k + l)] * uk;
                    }
                }
                *slot = acc;
            }
        }
        g
    }

    fn contract_second(
        g: &[[Complex64; 2]; 2],
        v: &[Complex64; 2],
        v_perp: &[Complex64; 2],
    ) -> Complex64 {
        let mut acc = ZERO;
        for j in 0..2 {
            for l in 0..2 {
                acc += v[j].conj() * g[j][l] * v_perp[l];
            }
        }
        acc
    }

    fn abs_h(&self, angles: &[f64]) -> f64 {
        let (u, up) = unit_pair(angles[0], angles[1]);
        let (v, vp) = unit_pair(angles[2], angles[3]);
        Self::contract_second(&self.contract_first(&u, &up), &v, &vp).norm()
    }
}

fn thread_count(config: &HMaxConfig) -> usize {
    let requested = config
        .threads
        .or_else(|| std::env::var(THREADS_ENV).ok().and_then(|v| v.parse().ok()))
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    requested.max(1)
}

fn start_point(config: &HMaxConfig, k: usize) -> Vec<f64> {
    let u = halton(
        config.seed.wrapping_mul(config.starts as u64) + k as u64 + 1,
        4,
    );
    vec![PI * u[0], 2.0 * PI * u[1], PI * u[2], 2.0 * PI * u[3]]
}

/// Entangling capability `max |h(H, a1, b1)|` over metric-unit `a1`, `b1`.
pub fn h_max(
    h: &CMatrix,
    s1: &MetricSpace,
    s2: &MetricSpace,
    config: &HMaxConfig,
) -> Result<HMaxResult> {
    check_two_qubit(h, s1, s2)?;
    if config.starts == 0 || config.grid_points < 2 {
        return Err(Error::InvalidParams(
            "h_max needs at least one start and two grid points".into(),
        ));
    }
    let whiten = tensor_product(s1.sqrt_metric(), s2.sqrt_metric());
    let unwhiten = tensor_product(s1.inv_sqrt_metric(), s2.inv_sqrt_metric());
    let objective = WhitenedObjective {
        hw: whiten.matmul(h).matmul(&unwhiten),
    };
    let nm = NelderMead {
        initial_step: 0.3,
        tolerance: config.tolerance,
        max_evaluations: config.max_evaluations,
    };
    let neg = |x: &[f64]| -objective.abs_h(x);

    // Starts are independent; results are reduced in index order so the
    // outcome does not depend on the thread count.
    let threads = thread_count(config).min(config.starts);
    let mut runs = Vec::with_capacity(config.starts);
    if threads <= 1 {
        for k in 0..config.starts {
            runs.push(nm.minimize(neg, &start_point(config, k)));
        }
    } else {
        let chunk = config.starts.div_ceil(threads);
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads)
                .map(|w| {
                    let (nm, neg) = (&nm, &neg);
                    scope.spawn(move || {
                        (w * chunk..((w + 1) * chunk).min(config.starts))
                            .map(|k| nm.minimize(neg, &start_point(config, k)))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            for handle in handles {
                runs.extend(handle.join().expect("optimizer thread panicked"));
            }
        });
    }

    let mut evaluations: usize = runs.iter().map(|r| r.evaluations).sum();
    let converged_starts = runs.iter().filter(|r| r.converged).count();
    let best_start =
        runs.iter().enumerate().fold(
            0,
            |best, (k, r)| if r.value < runs[best].value { k } else { best },
        );
    let multistart = &runs[best_start];

    // Grid cross-check.
    let g = config.grid_points;
    let pairs: Vec<(f64, f64, [Complex64; 2], [Complex64; 2])> = (0..g)
        .flat_map(|i| (0..g).map(move |j| (i, j)))
        .map(|(i, j)| {
            let x = PI * i as f64 / (g - 1) as f64;
            let phi = 2.0 * PI * j as f64 / g as f64;
            let (u, up) = unit_pair(x, phi);
            (x, phi, u, up)
        })
        .collect();
    let mut grid_best = (f64::NEG_INFINITY, [0.0; 4]);
    for (x1, p1, u, up) in &pairs {
        let contracted = objective.contract_first(u, up);
        for (x2, p2, v, vp) in &pairs {
            let val = WhitenedObjective::contract_second(&contracted, v, vp).norm();
            if val > grid_best.0 {
                grid_best = (val, [*x1, *p1, *x2, *p2]);
            }
        }
    }
    evaluations += pairs.len() * pairs.len();
    let refined = nm.minimize(neg, &grid_best.1);
    evaluations += refined.evaluations;

    let multistart_value = -multistart.value;
    let grid_refined_value = (-refined.value).max(grid_best.0);
    let (value, angles, converged) = if multistart_value >= grid_refined_value {
        (multistart_value, multistart.x.clone(), multistart.converged)
    } else {
        (grid_refined_value, refined.x.clone(), refined.converged)
    };
    if !converged {
        return Err(Error::OptimizerBudgetExceeded {
            best_value: value,
            evaluations,
        });
    }

    let (u, _) = unit_pair(angles[0], angles[1]);
    let (v, _) = unit_pair(angles[2], angles[3]);
    let a1 = s1.normalize(&s1.unwhiten(&CVector::from_vec(u.to_vec()))?)?;
    let b1 = s2.normalize(&s2.unwhiten(&CVector::from_vec(v.to_vec()))?)?;

    Ok(HMaxResult {
        value,
        a1,
        b1,
        evaluations,
        starts: config.starts,
        converged_starts,
        multistart_value,
        grid_value: grid_best.0,
        grid_refined_value,
        cross_check_gap: (multistart_value - grid_refined_value).abs(),
    })
}

/// `λ(t) = sin²(h_max t + φ0)` with `λ0 = sin² φ0`.
pub fn lambda_closed_form(h_max: f64, lambda0: f64, t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&lambda0) {
        return Err(Error::DomainError(lambda0));
    }
    let phi0 = lambda0.sqrt().asin();
    Ok((h_max * t + phi0).sin().powi(2))
}

/// `log2((1-λ)/λ) h_max` (signed).
pub fn gamma_bound(lambda: f64, h_max: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::DomainError(lambda));
    }
    Ok(((1.0 - lambda) / lambda).log2() * h_max)
}

/// Magnitude form `|log2((1-λ)/λ)| h_max`, taking the limit at the endpoints.
pub fn gamma_bound_magnitude(lambda: f64, h_max: f64) -> f64 {
    match gamma_bound(lambda, h_max) {
        Ok(b) => b.abs(),
        Err(_) if h_max == 0.0 => 0.0,
        Err(_) => f64::INFINITY,
    }
}

/// One point of an entanglement-rate trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateSample {
    pub t: f64,
    /// Larger Schmidt weight.
    pub lambda: f64,
    /// Entanglement in bits.
    pub entropy: f64,
    /// Signed rate `dE/dt`.
    pub gamma: f64,
    /// Magnitude form `f(λ)|h|`.
    pub gamma_magnitude: f64,
    /// `|log2((1-λ)/λ)| h_max`.
    pub bound: f64,
    /// `sin²(h_max (t - t0) + φ0)` seeded with the first sample's λ and
    /// folded onto the larger-weight branch, so it is comparable with `lambda`.
    pub lambda_closed_form: f64,
}

/// Rate trajectory with `h_max` computed using the default optimizer
/// settings.
pub fn trajectory(
    h: &CMatrix,
    psi0: &CVector,
    s1: &MetricSpace,
    s2: &MetricSpace,
    times: &[f64],
) -> Result<Vec<RateSample>> {
    let capability = h_max(h, s1, s2, &HMaxConfig::default())?.value;
    trajectory_with_capability(h, psi0, s1, s2, times, capability)
}

/// Rate trajectory for a known `h_max`.
pub fn trajectory_with_capability(
    h: &CMatrix,
    psi0: &CVector,
    s1: &MetricSpace,
    s2: &MetricSpace,
    times: &[f64],
    capability: f64,
) -> Result<Vec<RateSample>> {
    check_two_qubit(h, s1, s2)?;
    if times.windows(2).any(|w| !(w[1] >= w[0])) {
        return Err(Error::InvalidParams(
            "sample times must be nondecreasing".into(),
        ));
    }
    let joint = tensor_space(s1, s2);
    let mut out = Vec::with_capacity(times.len());
    let mut origin: Option<(f64, f64)> = None;
    for &t in times {
        let state = expm(&h.scale(-I * t))?.apply(psi0);
        let unit = joint.normalize(&state)?;
        let rate = gamma(h, &unit, s1, s2)?;
        let (t0, lambda0) = *origin.get_or_insert((t, rate.lambda));
        let closed = lambda_closed_form(capability, lambda0.clamp(0.0, 1.0), t - t0)?;
        out.push(RateSample {
            t,
            lambda: rate.lambda,
            entropy: binary_entropy(rate.lambda),
            gamma: rate.signed,
            gamma_magnitude: rate.magnitude,
            bound: gamma_bound_magnitude(rate.lambda, capability),
            lambda_closed_form: closed.max(1.0 - closed),
        });
    }
    Ok(out)
}
