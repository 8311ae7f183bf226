//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Run with `cargo test --test acceptance`.

mod common;

use std::f64::consts::{FRAC_PI_4, FRAC_PI_6};
use std::process::Command;

use cpt_entangle::dynamics::{
    closed_form_amplitudes, entangling_unitary, evolve, product_hamiltonian,
};
use cpt_entangle::entanglement::{
    cross_theory_singlet_entropy, entanglement_entropy, is_product, schmidt,
    state_from_eigen_amplitudes, two_ptqubit_entanglement,
};
use cpt_entangle::linalg::{expm, pauli, tensor_product, CMatrix, CVector, I};
use cpt_entangle::metric::{tensor_space, MetricSpace};
use cpt_entangle::ptqubit::{PTParams, PTQubitSystem};
use cpt_entangle::rate::{gamma, h_max, h_value, lambda_closed_form, trajectory, HMaxConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{random_quadruple, random_system, random_vector};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// 50 unbroken `(r, s = t, θ)` points spread over `sin α ∈ [-0.9, 0.9]`.
fn parameter_grid() -> Vec<PTParams> {
    let mut grid = Vec::with_capacity(50);
    for i in 0..5 {
        let s = 0.5 + 0.4 * i as f64;
        for j in 0..10 {
            let sin_alpha = -0.9 + 0.2 * j as f64;
            let theta = -1.4 + 0.3 * ((i + j) % 10) as f64 + 0.05;
            grid.push(PTParams::symmetric(sin_alpha * s / theta.sin(), s, theta));
        }
    }
    grid
}

fn c1_orthonormality() -> Outcome {
    let mut worst: f64 = 0.0;
    for p in parameter_grid() {
        let sys = PTQubitSystem::build(p).unwrap();
        let (plus, minus, m) = (sys.psi_plus(), sys.psi_minus(), sys.space());
        worst = worst
            .max((m.inner(plus, plus).unwrap() - 1.0).norm())
            .max((m.inner(minus, minus).unwrap() - 1.0).norm())
            .max(m.inner(plus, minus).unwrap().norm())
            .max(m.inner(minus, plus).unwrap().norm());
    }
    outcome(
        worst < 1e-12,
        format!("max deviation {worst:.2e} over 50 points"),
    )
}

fn c2_conjugation_algebra() -> Outcome {
    let worst = parameter_grid()
        .into_iter()
        .map(|p| PTQubitSystem::build(p).unwrap().verify_algebra().max())
        .fold(0.0, f64::max);
    outcome(
        worst < 1e-12,
        format!("max residual {worst:.2e} over 50 points"),
    )
}

fn c3_hermitian_limit() -> Outcome {
    let id = MetricSpace::identity(2);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for k in 0..5 {
        let p1 = PTParams::symmetric(0.3 + 0.2 * k as f64, 1.0, 0.0);
        let p2 = PTParams::symmetric(-0.4 + 0.1 * k as f64, 0.7, 0.0);
        let (s1, s2) = (
            PTQubitSystem::build(p1).unwrap(),
            PTQubitSystem::build(p2).unwrap(),
        );
        let h = product_hamiltonian(&s1, &s2).unwrap().matrix;
        let psi = tensor_space(&id, &id)
            .normalize(&random_vector(&mut rng, 4))
            .unwrap();

        let e_cpt = entanglement_entropy(&psi, s1.space(), s2.space()).unwrap();
        let e_id = entanglement_entropy(&psi, &id, &id).unwrap();
        let c_cpt = schmidt(&psi, s1.space(), s2.space()).unwrap().coefficients;
        let c_id = schmidt(&psi, &id, &id).unwrap().coefficients;
        let g_cpt = gamma(&h, &psi, s1.space(), s2.space()).unwrap();
        let g_id = gamma(&h, &psi, &id, &id).unwrap();
        let cfg = HMaxConfig::default();
        let hm_cpt = h_max(&h, s1.space(), s2.space(), &cfg).unwrap().value;
        let hm_id = h_max(&h, &id, &id, &cfg).unwrap().value;

        worst = worst
            .max((e_cpt - e_id).abs())
            .max(
                c_cpt
                    .iter()
                    .zip(&c_id)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max),
            )
            .max((g_cpt.signed - g_id.signed).abs())
            .max((g_cpt.magnitude - g_id.magnitude).abs())
            .max((hm_cpt - hm_id).abs());
    }
    outcome(
        worst <= 1e-12,
        format!("max difference {worst:.2e} (entropy, Schmidt, rate, h_max)"),
    )
}

fn c4_singlet_cross_theory() -> Outcome {
    let at_zero = cross_theory_singlet_entropy(0.0).unwrap();
    let mut values = Vec::new();
    for k in 1..=5 {
        values.push(
            cross_theory_singlet_entropy(0.1 * k as f64)
                .unwrap()
                .oracle_value,
        );
    }
    let below_one = values.iter().all(|&v| v < 1.0);
    let decreasing = values.windows(2).all(|w| w[1] < w[0]);
    let unit_at_zero = (at_zero.oracle_value - 1.0).abs() < 1e-12;

    let sixth = cross_theory_singlet_entropy(FRAC_PI_6).unwrap();
    let expected = 0.468_996;
    let matches_hand_value = (sixth.oracle_value - expected).abs() < 1e-6;
    let closed = sixth
        .closed_form_value
        .map_or("undefined".to_string(), |v| format!("{v:.6}"));

    outcome(
        unit_at_zero && below_one && decreasing && matches_hand_value,
        format!(
            "E(0) = {:.12}, E(0.1..0.5) = {:?} (below 1: {below_one}, decreasing: {decreasing}); \
             at pi/6 pipeline = {:.6}, metric frame = {:.6}, closed form = {closed}, \
             expected {expected}: {}",
            at_zero.oracle_value,
            values
                .iter()
                .map(|v| (v * 1e6).round() / 1e6)
                .collect::<Vec<_>>(),
            sixth.oracle_value,
            sixth.metric_frame_value,
            if matches_hand_value {
                "match"
            } else {
                "MISMATCH"
            },
        ),
    )
}

fn c5_closed_form_entanglement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    let mut separability_ok = true;
    for k in 0..1000 {
        let (s1, s2) = (random_system(&mut rng), random_system(&mut rng));
        let q = if k % 10 == 0 {
            // Product quadruple (a, b) ⊗ (c, d) → amplitudes ac, ad, bc, bd.
            let u = random_quadruple(&mut rng);
            let n1 = (u[0].norm_sqr() + u[1].norm_sqr()).sqrt();
            let n2 = (u[2].norm_sqr() + u[3].norm_sqr()).sqrt();
            let (a, b, c, d) = (u[0] / n1, u[1] / n1, u[2] / n2, u[3] / n2);
            [a * c, a * d, b * c, b * d]
        } else {
            random_quadruple(&mut rng)
        };
        let closed = two_ptqubit_entanglement(q[0], q[1], q[2], q[3]).unwrap();
        let psi = state_from_eigen_amplitudes(&s1, &s2, q);
        let pipeline = entanglement_entropy(&psi, s1.space(), s2.space()).unwrap();
        worst = worst.max((closed - pipeline).abs());
        let product = is_product(q[0], q[1], q[2], q[3]);
        let separable = (q[0] * q[3] - q[1] * q[2]).norm() <= 1e-10;
        if separable != (closed < 1e-9) || separable != product {
            separability_ok = false;
        }
    }
    outcome(
        worst < 1e-9 && separability_ok,
        format!("max |closed - pipeline| {worst:.2e} over 1000 quadruples; separability consistent: {separability_ok}"),
    )
}

fn c6_entangling_unitary() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut worst_u, mut worst_amp): (f64, f64) = (0.0, 0.0);
    for _ in 0..30 {
        let (s1, s2) = (random_system(&mut rng), random_system(&mut rng));
        let t = rng.gen_range(0.0..5.0);
        let ph = product_hamiltonian(&s1, &s2).unwrap();
        let u = entangling_unitary(&ph, t);
        let oracle = expm(&ph.nonlocal_part.scale(-I * t)).unwrap();
        worst_u = worst_u.max(u.max_abs_diff(&oracle));
        let applied = u.apply(&CVector::basis(4, 0));
        let closed = closed_form_amplitudes(s1.params(), s2.params(), t).unwrap();
        let closed = CVector::from_vec(closed.to_vec());
        worst_amp = worst_amp.max(closed.max_abs_diff(&applied));
    }
    outcome(
        worst_u < 1e-10 && worst_amp < 1e-12,
        format!("unitary vs expm {worst_u:.2e}; amplitudes vs U|00> {worst_amp:.2e} over 30 pairs"),
    )
}

fn c7_local_terms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let times: Vec<f64> = (0..=60).map(|k| 0.05 * k as f64).collect();
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let (s1, s2) = (random_system(&mut rng), random_system(&mut rng));
        let ph = product_hamiltonian(&s1, &s2).unwrap();
        let psi0 = CVector::basis(4, 0);
        let full = evolve(&ph.matrix, &psi0, &times, s1.space(), s2.space()).unwrap();
        let nonlocal = evolve(&ph.nonlocal_part, &psi0, &times, s1.space(), s2.space()).unwrap();
        for (a, b) in full.entropies.iter().zip(&nonlocal.entropies) {
            worst = worst.max((a - b).abs());
        }
    }
    outcome(
        worst < 1e-9,
        format!("max entropy difference {worst:.2e} over 10 draws, t in [0, 3]"),
    )
}

fn entropy_at(h: &CMatrix, psi0: &CVector, s1: &MetricSpace, s2: &MetricSpace, t: f64) -> f64 {
    let state = expm(&h.scale(-I * t)).unwrap().apply(psi0);
    let unit = tensor_space(s1, s2).normalize(&state).unwrap();
    entanglement_entropy(&unit, s1, s2).unwrap()
}

fn c8_rate_consistency() -> Outcome {
    let id = MetricSpace::identity(2);
    let xx = tensor_product(&pauli::x(), &pauli::x());
    let mut cases: Vec<(CMatrix, MetricSpace, MetricSpace)> =
        vec![(xx.clone(), id.clone(), id.clone())];
    let pt = PTQubitSystem::build(PTParams::symmetric(1.0, 1.0, FRAC_PI_6)).unwrap();
    let ph = product_hamiltonian(&pt, &pt).unwrap();
    cases.push((ph.matrix.clone(), pt.space().clone(), pt.space().clone()));
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..3 {
        let (s1, s2) = (random_system(&mut rng), random_system(&mut rng));
        let ph = product_hamiltonian(&s1, &s2).unwrap();
        cases.push((ph.matrix, s1.space().clone(), s2.space().clone()));
    }

    let times: Vec<f64> = (0..100).map(|k| 0.03 * k as f64).collect();
    let step = 1e-5;
    let (mut worst_fd, mut worst_bound, mut checked): (f64, f64, usize) =
        (0.0, f64::NEG_INFINITY, 0);
    for (h, s1, s2) in &cases {
        let psi0 = CVector::basis(4, 0);
        let samples = trajectory(h, &psi0, s1, s2, &times).unwrap();
        for s in &samples {
            worst_bound = worst_bound.max(s.gamma - s.bound);
            let near = |x: f64| (s.lambda - x).abs() < 1e-6;
            if near(0.0) || near(0.5) || near(1.0) || s.t < step {
                continue;
            }
            let fd = (entropy_at(h, &psi0, s1, s2, s.t + step)
                - entropy_at(h, &psi0, s1, s2, s.t - step))
                / (2.0 * step);
            worst_fd = worst_fd.max((s.gamma - fd).abs());
            checked += 1;
        }
    }

    let cap = h_max(&xx, &id, &id, &HMaxConfig::default()).unwrap().value;
    let mut worst_closed: f64 = 0.0;
    for k in 0..100 {
        let t = FRAC_PI_4 * k as f64 / 100.0;
        let state = expm(&xx.scale(-I * t))
            .unwrap()
            .apply(&CVector::basis(4, 0));
        let smaller = 1.0 - schmidt(&state, &id, &id).unwrap().weights()[0];
        worst_closed = worst_closed.max((lambda_closed_form(cap, 0.0, t).unwrap() - smaller).abs());
    }

    outcome(
        worst_fd < 1e-5 && worst_bound <= 1e-8 && (cap - 1.0).abs() < 1e-6 && worst_closed < 1e-9,
        format!(
            "rate vs finite difference {worst_fd:.2e} ({checked} samples); max(gamma - bound) {worst_bound:.2e}; \
             h_max(XX) = {cap:.12}; sin^2 t deviation {worst_closed:.2e}"
        ),
    )
}

fn c9_optimizer_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut worst_margin, mut worst_gap): (f64, f64) = (f64::INFINITY, 0.0);
    for _ in 0..10 {
        let (s1, s2) = (random_system(&mut rng), random_system(&mut rng));
        let ph = product_hamiltonian(&s1, &s2).unwrap();
        let r = h_max(&ph.matrix, s1.space(), s2.space(), &HMaxConfig::default()).unwrap();
        worst_gap = worst_gap.max(r.cross_check_gap);
        for _ in 0..1000 {
            let a = s1.space().normalize(&random_vector(&mut rng, 2)).unwrap();
            let b = s2.space().normalize(&random_vector(&mut rng, 2)).unwrap();
            let h = h_value(&ph.matrix, &a, &b, s1.space(), s2.space())
                .unwrap()
                .norm();
            worst_margin = worst_margin.min(r.value - h);
        }
    }
    outcome(
        worst_margin >= -1e-8 && worst_gap < 1e-6,
        format!(
            "min(h_max - |h|) {worst_margin:.2e} over 10x1000 pairs; max grid gap {worst_gap:.2e}"
        ),
    )
}

fn c10_determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_cpt-entangle");
    let runs: [&[&str]; 5] = [
        &[
            "hmax",
            "--seed",
            "7",
            "--sys1",
            "0.8,1.2,1.2,0.6",
            "--sys2",
            "0.3,0.9,0.9,-1.0",
        ],
        &["rate", "--seed", "7", "--time-steps", "40"],
        &["evolve", "--time-steps", "40"],
        &["singlet-sweep", "--alpha-max", "1.2", "--steps", "25"],
        &["entropy", "--theory", "dirac"],
    ];
    let mut identical = true;
    let mut notes = Vec::new();
    for args in runs {
        let outputs: Vec<Vec<u8>> = ["1", "4"]
            .iter()
            .flat_map(|threads| [threads, threads])
            .map(|threads| {
                let out = Command::new(bin)
                    .args(args)
                    .env("CPT_ENTANGLE_THREADS", threads)
                    .output()
                    .expect("binary runs");
                assert!(
                    out.status.success(),
                    "{args:?} failed: {}",
                    String::from_utf8_lossy(&out.stderr)
                );
                out.stdout
            })
            .collect();
        let same = outputs.windows(2).all(|w| w[0] == w[1]);
        identical &= same;
        notes.push(format!(
            "{}: {}",
            args[0],
            if same { "identical" } else { "DIFFERENT" }
        ));
    }
    outcome(
        identical,
        format!("4 runs each (1 and 4 threads): {}", notes.join(", ")),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("CPT orthonormality of eigenstates", c1_orthonormality),
        ("conjugation algebra residuals", c2_conjugation_algebra),
        ("Hermitian-limit regression", c3_hermitian_limit),
        ("singlet entropy across theories", c4_singlet_cross_theory),
        (
            "closed-form two-qubit entanglement",
            c5_closed_form_entanglement,
        ),
        ("entangling unitary and amplitudes", c6_entangling_unitary),
        ("local terms do not entangle", c7_local_terms),
        ("entanglement rate consistency", c8_rate_consistency),
        ("h_max optimizer soundness", c9_optimizer_soundness),
        ("CLI determinism", c10_determinism),
    ];
    let mut failures = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let result = check();
        if !result.pass {
            failures += 1;
        }
        println!(
            "{} [{:>2}] {name}: {}",
            if result.pass { "PASS" } else { "FAIL" },
            k + 1,
            result.detail
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
