//! Two-level PT-symmetric systems.
//!
//! The Hamiltonian family is
//!
//! ```text
//! H = [ r e^{iθ}   s        ]
//!     [ t          r e^{-iθ} ]
//! ```
//!
//! with real spectrum `E± = r cosθ ± sqrt(st - r² sin²θ)` in the unbroken
//! phase. For `s = t` the conjugation operator has the closed form
//! `C = (1/cosα) [[i sinα, 1], [1, -i sinα]]` with `sinα = r sinθ / s`, and the
//! CPT inner product `[(CPT)ψ]·φ` is represented by the metric
//! `M = (CP)ᵀ = PC`.
//!
//! Eigenstates are normalized with the prefactor `1/sqrt(2 cosα)`, the value
//! for which they are CPT-orthonormal; likewise `C` carries `1/cosα` so that
//! `C² = I`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c64, CMatrix, CVector};
use crate::metric::MetricSpace;

/// Margin keeping parameters away from the exceptional point.
pub const UNBROKEN_MARGIN: f64 = 1e-9;
const INVARIANT_TOL: f64 = 1e-10;

/// Parameters `(r, s, t, θ)` of the 2×2 PT-symmetric Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PTParams {
    pub r: f64,
    pub s: f64,
    pub t: f64,
    pub theta: f64,
}

impl PTParams {
    pub fn new(r: f64, s: f64, t: f64, theta: f64) -> Self {
        Self { r, s, t, theta }
    }

    /// Symmetric-coupling form `s = t`.
    pub fn symmetric(r: f64, s: f64, theta: f64) -> Self {
        Self { r, s, t: s, theta }
    }

    /// `st - r² sin²θ`; positive in the unbroken phase.
    pub fn discriminant(&self) -> f64 {
        let rs = self.r * self.theta.sin();
        self.s * self.t - rs * rs
    }

    pub fn hamiltonian(&self) -> CMatrix {
        let (sin, cos) = self.theta.sin_cos();
        CMatrix::from_rows(&[
            [c64(self.r * cos, self.r * sin), c64(self.s, 0.0)],
            [c64(self.t, 0.0), c64(self.r * cos, -self.r * sin)],
        ])
    }

    fn check_finite(&self) -> Result<()> {
        if [self.r, self.s, self.t, self.theta]
            .iter()
            .all(|x| x.is_finite())
        {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!(
                "non-finite parameter in {self:?}"
            )))
        }
    }

    /// `(E-, E+)`. Valid for any unbroken parameters, including `s != t`.
    pub fn spectrum(&self) -> Result<(f64, f64)> {
        self.check_finite()?;
        let discriminant = self.discriminant();
        if !(discriminant > UNBROKEN_MARGIN) {
            return Err(Error::BrokenPTPhase { discriminant });
        }
        let centre = self.r * self.theta.cos();
        let half_gap = discriminant.sqrt();
        Ok((centre - half_gap, centre + half_gap))
    }

    /// `sinα = r sinθ / sqrt(st)`.
    pub fn sin_alpha(&self) -> Result<f64> {
        self.check_finite()?;
        let st = self.s * self.t;
        if !(st > 0.0) {
            return Err(Error::BrokenPTPhase {
                discriminant: self.discriminant(),
            });
        }
        Ok(self.r * self.theta.sin() / st.sqrt())
    }
}

/// Conjugation operator `C(α)`.
pub fn conjugation_operator(alpha: f64) -> CMatrix {
    let (s, c) = alpha.sin_cos();
    CMatrix::from_rows(&[
        [c64(0.0, s / c), c64(1.0 / c, 0.0)],
        [c64(1.0 / c, 0.0), c64(0.0, -s / c)],
    ])
}

/// Parity operator (swap).
pub fn parity_operator() -> CMatrix {
    CMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]])
}

/// Metric representing the CPT inner product at angle `α`:
/// `M = (1/cosα) [[1, -i sinα], [i sinα, 1]]`.
pub fn cpt_metric_matrix(alpha: f64) -> CMatrix {
    // M = (CP)ᵀ; C and P are both symmetric so this is P·C.
    parity_operator().matmul(&conjugation_operator(alpha))
}

/// The CPT metric space at angle `α`.
pub fn cpt_space(alpha: f64) -> Result<MetricSpace> {
    let sin_alpha = alpha.sin();
    if !(sin_alpha.abs() < 1.0 - UNBROKEN_MARGIN) {
        return Err(Error::NonPositiveMetric { sin_alpha });
    }
    MetricSpace::new(cpt_metric_matrix(alpha))
}

/// A fully constructed PT qubit: spectrum, eigenbasis, C, P and the CPT
/// metric space.
#[derive(Debug, Clone)]
pub struct PTQubitSystem {
    params: PTParams,
    alpha: f64,
    energies: (f64, f64),
    hamiltonian: CMatrix,
    psi_plus: CVector,
    psi_minus: CVector,
    c: CMatrix,
    p: CMatrix,
    space: MetricSpace,
}

impl PTQubitSystem {
    pub fn build(params: PTParams) -> Result<Self> {
        let energies = params.spectrum()?;
        if params.s != params.t {
            return Err(Error::UnsupportedAsymmetric {
                s: params.s,
                t: params.t,
            });
        }
        if !(params.s > 0.0) {
            return Err(Error::InvalidParams(format!(
                "coupling s must be positive (got {})",
                params.s
            )));
        }
        let sin_alpha = params.sin_alpha()?;
        if !(sin_alpha.abs() < 1.0 - UNBROKEN_MARGIN) {
            return Err(Error::NonPositiveMetric { sin_alpha });
        }
        let alpha = sin_alpha.asin();

        let norm = c64(1.0 / (2.0 * alpha.cos()).sqrt(), 0.0);
        let half = Complex64::from_polar(1.0, alpha / 2.0);
        let psi_plus = CVector::from_vec(vec![half * norm, half.conj() * norm]);
        let psi_minus = CVector::from_vec(vec![half.conj() * norm, -half * norm]);

        let system = Self {
            params,
            alpha,
            energies,
            hamiltonian: params.hamiltonian(),
            psi_plus,
            psi_minus,
            c: conjugation_operator(alpha),
            p: parity_operator(),
            space: cpt_space(alpha)?,
        };
        system.check_invariants()?;
        Ok(system)
    }

    fn check_invariants(&self) -> Result<()> {
        let report = self.verify_algebra();
        let s = &self.space;
        let gram = [
            s.inner(&self.psi_plus, &self.psi_plus)? - 1.0,
            s.inner(&self.psi_minus, &self.psi_minus)? - 1.0,
            s.inner(&self.psi_plus, &self.psi_minus)?,
        ];
        let gram_dev = gram.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let h = &self.hamiltonian;
        let eig_dev = h
            .apply(&self.psi_plus)
            .max_abs_diff(&self.psi_plus.scale(c64(self.energies.1, 0.0)))
            .max(
                h.apply(&self.psi_minus)
                    .max_abs_diff(&self.psi_minus.scale(c64(self.energies.0, 0.0))),
            );
        let scale = h.max_abs().max(1.0);
        if report.max() > INVARIANT_TOL * scale
            || gram_dev > INVARIANT_TOL
            || eig_dev > INVARIANT_TOL * scale
        {
            return Err(Error::InvalidParams(format!(
                "PT qubit invariants violated (algebra {:.3e}, gram {gram_dev:.3e}, eigen {eig_dev:.3e})",
                report.max()
            )));
        }
        Ok(())
    }

    pub fn params(&self) -> &PTParams {
        &self.params
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `(E-, E+)`.
    pub fn energies(&self) -> (f64, f64) {
        self.energies
    }

    pub fn hamiltonian(&self) -> &CMatrix {
        &self.hamiltonian
    }

    pub fn psi_plus(&self) -> &CVector {
        &self.psi_plus
    }

    pub fn psi_minus(&self) -> &CVector {
        &self.psi_minus
    }

    pub fn conjugation(&self) -> &CMatrix {
        &self.c
    }

    pub fn parity(&self) -> &CMatrix {
        &self.p
    }

    pub fn space(&self) -> &MetricSpace {
        &self.space
    }

    /// `(CPT)ψ = C·P·conj(ψ)`.
    pub fn cpt_apply(&self, psi: &CVector) -> Result<CVector> {
        if psi.dim() != 2 {
            return Err(Error::DimMismatch {
                expected: 2,
                got: psi.dim(),
            });
        }
        Ok(self.c.matmul(&self.p).apply(&psi.conj()))
    }

    pub fn verify_algebra(&self) -> AlgebraReport {
        algebra_residuals(&self.hamiltonian, &self.c, &self.p, self.space.metric())
    }
}

/// Max-norm residuals of the conjugation algebra.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlgebraReport {
    /// `C² - I`
    pub c_squared: f64,
    /// `CH - HC`
    pub c_h_commutator: f64,
    /// `C(PT) - (PT)C` as antilinear maps.
    pub c_pt_commutator: f64,
    /// `H†M - MH`
    pub h_metric_adjoint: f64,
}

impl AlgebraReport {
    pub fn max(&self) -> f64 {
        self.c_squared
            .max(self.c_h_commutator)
            .max(self.c_pt_commutator)
            .max(self.h_metric_adjoint)
    }
}

/// Residuals for explicitly supplied operators.
///
/// `PT` acts as `ψ ↦ P·conj(ψ)`, so `C(PT)ψ - (PT)Cψ = (CP - P·conj(C))·conj(ψ)`;
/// evaluating on the standard basis reduces the antilinear commutator to that
/// matrix difference.
pub fn algebra_residuals(h: &CMatrix, c: &CMatrix, p: &CMatrix, metric: &CMatrix) -> AlgebraReport {
    let n = c.rows();
    AlgebraReport {
        c_squared: c.matmul(c).max_abs_diff(&CMatrix::identity(n)),
        c_h_commutator: c.commutator(h).max_abs(),
        c_pt_commutator: c.matmul(p).max_abs_diff(&p.matmul(&c.conj())),
        h_metric_adjoint: h.adjoint().matmul(metric).max_abs_diff(&metric.matmul(h)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_6};

    #[test]
    fn pi_over_six_spectrum() {
        // Characteristic polynomial of [[e^{iπ/6}, 1], [1, e^{-iπ/6}]]:
        // λ² - 2cos(π/6) λ + (1 - 1) = 0  ->  λ ∈ {0, √3}.
        let sys = PTQubitSystem::build(PTParams::new(1.0, 1.0, 1.0, FRAC_PI_6)).unwrap();
        assert!((sys.alpha() - FRAC_PI_6).abs() < 1e-15);
        let (lo, hi) = sys.energies();
        assert!(lo.abs() < 1e-15);
        assert!((hi - 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn hermitian_limit_is_standard_theory() {
        let sys = PTQubitSystem::build(PTParams::new(0.7, 1.3, 1.3, 0.0)).unwrap();
        assert_eq!(sys.alpha(), 0.0);
        assert!(sys.space().is_identity());
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(sys.psi_plus().max_abs_diff(&CVector::from_real(&[h, h])) < 1e-15);
        assert!(sys.psi_minus().max_abs_diff(&CVector::from_real(&[h, -h])) < 1e-15);
        assert_eq!(sys.conjugation().matmul(sys.parity()), CMatrix::identity(2));
    }

    #[test]
    fn broken_phase_is_rejected() {
        let err = PTQubitSystem::build(PTParams::new(1.0, 0.4, 0.4, FRAC_PI_2)).unwrap_err();
        assert!(matches!(err, Error::BrokenPTPhase { .. }));
    }

    #[test]
    fn asymmetric_coupling_has_spectrum_but_no_metric() {
        let p = PTParams::new(1.0, 2.0, 0.5, 0.3);
        let (lo, hi) = p.spectrum().unwrap();
        let d = (1.0 - 0.3f64.sin().powi(2)).sqrt();
        assert!((lo - (0.3f64.cos() - d)).abs() < 1e-14);
        assert!((hi - (0.3f64.cos() + d)).abs() < 1e-14);
        assert!(matches!(
            PTQubitSystem::build(p),
            Err(Error::UnsupportedAsymmetric { .. })
        ));
    }

    #[test]
    fn non_positive_coupling_is_rejected() {
        assert!(matches!(
            PTQubitSystem::build(PTParams::new(0.1, -1.0, -1.0, 0.2)),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn eigenstates_are_cpt_orthonormal() {
        let sys = PTQubitSystem::build(PTParams::new(0.8, 1.1, 1.1, 1.0)).unwrap();
        let s = sys.space();
        let (p, m) = (sys.psi_plus(), sys.psi_minus());
        assert!((s.inner(p, p).unwrap() - 1.0).norm() < 1e-12);
        assert!((s.inner(m, m).unwrap() - 1.0).norm() < 1e-12);
        assert!(s.inner(p, m).unwrap().norm() < 1e-12);
    }

    #[test]
    fn cpt_map_at_alpha_zero_is_conjugation() {
        // With α = 0, C = P so CPT reduces to complex conjugation; the map
        // form [(CPT)ψ]·φ then agrees with the Dirac product.
        let sys = PTQubitSystem::build(PTParams::new(1.0, 1.0, 1.0, 0.0)).unwrap();
        let e0 = CVector::basis(2, 0);
        assert_eq!(sys.cpt_apply(&e0).unwrap(), e0);
        let v = CVector::from_vec(vec![c64(0.3, 0.4), c64(-1.0, 2.0)]);
        assert_eq!(sys.cpt_apply(&v).unwrap(), v.conj());
    }

    #[test]
    fn cpt_map_recovers_unit_norm_of_eigenstates() {
        let sys = PTQubitSystem::build(PTParams::new(1.0, 1.0, 1.0, FRAC_PI_6)).unwrap();
        for psi in [sys.psi_plus(), sys.psi_minus()] {
            let z = sys.cpt_apply(psi).unwrap().dot(psi);
            assert!((z - 1.0).norm() < 1e-14);
        }
    }

    #[test]
    fn cpt_map_is_antilinear() {
        let sys = PTQubitSystem::build(PTParams::new(0.5, 1.0, 1.0, 0.9)).unwrap();
        let a = c64(0.3, -1.2);
        let b = c64(-0.7, 0.25);
        let psi = CVector::from_vec(vec![c64(1.0, 0.5), c64(0.0, -2.0)]);
        let phi = CVector::from_vec(vec![c64(-0.4, 0.0), c64(0.6, 0.6)]);
        let combo = &psi.scale(a) + &phi.scale(b);
        let lhs = sys.cpt_apply(&combo).unwrap();
        let rhs = &sys.cpt_apply(&psi).unwrap().scale(a.conj())
            + &sys.cpt_apply(&phi).unwrap().scale(b.conj());
        assert!(lhs.max_abs_diff(&rhs) < 1e-14);
        assert!(matches!(
            sys.cpt_apply(&CVector::zeros(3)),
            Err(Error::DimMismatch { .. })
        ));
    }

    #[test]
    fn algebra_residuals_vanish() {
        for theta in [0.0, FRAC_PI_6, 1.2] {
            let sys = PTQubitSystem::build(PTParams::new(1.0, 1.0, 1.0, theta)).unwrap();
            assert!(sys.verify_algebra().max() < 1e-12, "theta = {theta}");
        }
    }

    #[test]
    fn corrupted_conjugation_is_detected() {
        let sys = PTQubitSystem::build(PTParams::new(1.0, 1.0, 1.0, 0.0)).unwrap();
        let bad = CMatrix::from_real_rows(&[[0.0, 1.1], [1.1, 0.0]]);
        let r = algebra_residuals(sys.hamiltonian(), &bad, sys.parity(), sys.space().metric());
        // C² = 1.21 I
        assert!((r.c_squared - 0.21).abs() < 1e-14);
    }

    #[test]
    fn hamiltonian_is_observable_in_its_own_space() {
        let sys = PTQubitSystem::build(PTParams::new(1.0, 1.0, 1.0, FRAC_PI_6)).unwrap();
        assert!(sys.space().is_metric_observable(sys.hamiltonian()).unwrap());
        // Hermitian conjugation alone does not make H self-adjoint.
        assert!(!MetricSpace::identity(2)
            .is_metric_observable(sys.hamiltonian())
            .unwrap());
    }

    #[test]
    fn measurement_in_eigenbasis() {
        let sys = PTQubitSystem::build(PTParams::new(1.0, 1.0, 1.0, FRAC_PI_6)).unwrap();
        let basis = [sys.psi_plus().clone(), sys.psi_minus().clone()];
        let p = sys
            .space()
            .measurement_probability(sys.psi_plus(), &basis)
            .unwrap();
        assert!((p[0] - 1.0).abs() < 1e-12 && p[1].abs() < 1e-12);
        // |e0† M ψ±|² = 1/(2 cosα) and ||e0||² = 1/cosα, so both outcomes are 1/2.
        let p = sys
            .space()
            .measurement_probability(&CVector::basis(2, 0), &basis)
            .unwrap();
        assert!((p[0] - 0.5).abs() < 1e-12 && (p[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn orthocomplement_of_plus_is_minus() {
        let sys = PTQubitSystem::build(PTParams::new(0.9, 1.0, 1.0, 0.8)).unwrap();
        let o = sys.space().orthocomplement(sys.psi_plus()).unwrap();
        let overlap = sys.space().inner(sys.psi_minus(), &o).unwrap();
        assert!((overlap.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn whitened_eigenstates_are_dirac_orthonormal() {
        let sys = PTQubitSystem::build(PTParams::new(1.0, 1.0, 1.0, 1.1)).unwrap();
        let s = sys.space();
        let p = s.whiten(sys.psi_plus()).unwrap();
        let m = s.whiten(sys.psi_minus()).unwrap();
        assert!((p.dirac(&p) - 1.0).norm() < 1e-10);
        assert!((m.dirac(&m) - 1.0).norm() < 1e-10);
        assert!(p.dirac(&m).norm() < 1e-10);
    }

    #[test]
    fn metric_approaches_identity_continuously() {
        for theta in [1e-2, 1e-3, 1e-5] {
            let sys = PTQubitSystem::build(PTParams::new(1.0, 1.0, 1.0, theta)).unwrap();
            let dev = sys.space().metric().max_abs_diff(&CMatrix::identity(2));
            assert!(dev <= 10.0 * sys.alpha().abs(), "theta = {theta}");
        }
    }
}
