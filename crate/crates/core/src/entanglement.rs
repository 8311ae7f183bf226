//! Schmidt decomposition, partial traces and entanglement entropy under an
//! arbitrary pair of metrics.
//!
//! A bipartite vector `Ψ ∈ C^{d1} ⊗ C^{d2}` is stored row-major: component
//! `a * d2 + i` is the coefficient of `e_a ⊗ e_i`. Reshaping gives the
//! coefficient matrix `A` (`d1 × d2`).
//!
//! Under metrics `M1`, `M2` the Schmidt decomposition is the SVD of the
//! whitened matrix `M1^{1/2} A (M2^{1/2})ᵀ`, with singular vectors mapped back
//! by `M^{-1/2}`. Reduced densities follow the recipe of tracing out one side
//! with that side's inner product:
//!
//! ```text
//! ρ1[a, b] = Σ_ij Ψ[a, i] conj(Ψ[b, j]) W[j, i]
//! ```
//!
//! where `W` is the traced side's metric (CPT theory) or the identity (Dirac
//! theory). The result is a coefficient matrix in the computational basis.
//! Its spectrum can be read in two frames:
//!
//! * computational: ordinary eigenvalues of `ρ / tr ρ`;
//! * metric: eigenvalues of `M^{1/2} ρ M^{1/2}` normalized, i.e. the spectrum
//!   of the operator `ρ M` whose bras carry the kept side's metric. This frame
//!   agrees with the Schmidt weights.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{c64, eig_hermitian, svd, CMatrix, CVector, ZERO};
use crate::metric::{tensor_space, MetricSpace};
use crate::ptqubit::{cpt_space, PTQubitSystem};

const HERMITIAN_TOL: f64 = 1e-10;
const NEGATIVE_EIGENVALUE_TOL: f64 = 1e-10;
const PRODUCT_TOL: f64 = 1e-10;
const NORMALIZATION_TOL: f64 = 1e-10;

/// Which inner product performs the partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Theory {
    Dirac,
    Cpt,
}

/// Subsystem kept by a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    First,
    Second,
}

/// Schmidt decomposition `Ψ = Σ_k c_k a_k ⊗ b_k` with `c_k ≥ 0` descending and
/// `{a_k}`, `{b_k}` orthonormal in their metric spaces.
///
/// All `min(d1, d2)` terms are kept; trailing zero coefficients carry an
/// orthonormal completion of the vectors.
#[derive(Debug, Clone)]
pub struct SchmidtForm {
    pub coefficients: Vec<f64>,
    pub left: Vec<CVector>,
    pub right: Vec<CVector>,
    pub spaces: (MetricSpace, MetricSpace),
}

impl SchmidtForm {
    /// Squared coefficients.
    pub fn weights(&self) -> Vec<f64> {
        self.coefficients.iter().map(|c| c * c).collect()
    }

    /// Number of coefficients above `1e-12` of the largest.
    pub fn rank(&self) -> usize {
        let top = self.coefficients.first().copied().unwrap_or(0.0);
        self.coefficients
            .iter()
            .filter(|&&c| c > 1e-12 * top.max(f64::MIN_POSITIVE))
            .count()
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn reconstruct(&self) -> CVector {
        let d = self.spaces.0.dim() * self.spaces.1.dim();
        let mut out = CVector::zeros(d);
        for ((c, a), b) in self.coefficients.iter().zip(&self.left).zip(&self.right) {
            out = &out + &a.kron(b).scale(c64(*c, 0.0));
        }
        out
    }

    /// Entropy of the normalized weights, in bits.
    pub fn entropy(&self) -> f64 {
        let w = self.weights();
        let total: f64 = w.iter().sum();
        if total <= 0.0 {
            return 0.0;
        }
        shannon_bits(w.iter().map(|x| x / total))
    }
}

/// `-Σ p log2 p` with `0 log 0 = 0`.
pub fn shannon_bits(probs: impl IntoIterator<Item = f64>) -> f64 {
    probs
        .into_iter()
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.log2())
        .sum::<f64>()
        .max(0.0)
}

/// Binary entropy `H(λ)` in bits.
pub fn binary_entropy(lambda: f64) -> f64 {
    shannon_bits([lambda, 1.0 - lambda])
}

fn check_bipartite(psi: &CVector, s1: &MetricSpace, s2: &MetricSpace) -> Result<(usize, usize)> {
    let (d1, d2) = (s1.dim(), s2.dim());
    if psi.dim() != d1 * d2 {
        return Err(Error::DimMismatch {
            expected: d1 * d2,
            got: psi.dim(),
        });
    }
    Ok((d1, d2))
}

fn coefficient_matrix(psi: &CVector, d1: usize, d2: usize) -> CMatrix {
    CMatrix::from_vec(d1, d2, psi.as_slice().to_vec())
}

/// Schmidt decomposition with respect to the metrics of `s1` and `s2`.
pub fn schmidt(psi: &CVector, s1: &MetricSpace, s2: &MetricSpace) -> Result<SchmidtForm> {
    let (d1, d2) = check_bipartite(psi, s1, s2)?;
    let a = coefficient_matrix(psi, d1, d2);
    let whitened = s1
        .sqrt_metric()
        .matmul(&a)
        .matmul(&s2.sqrt_metric().transpose());
    let dec = svd(&whitened);

    let k = d1.min(d2);
    let mut left = Vec::with_capacity(k);
    let mut right = Vec::with_capacity(k);
    for j in 0..k {
        // whitened = Σ σ u_j v_j†  ->  Ψ' = Σ σ u_j ⊗ conj(v_j)
        let u = s1.inv_sqrt_metric().apply(&dec.u.column(j));
        let v = s2.inv_sqrt_metric().apply(&dec.v.column(j).conj());
        let fixed = u.fix_phase();
        // fixed = u * e^{iφ}; compensate on the right factor.
        let k0 = fixed.dominant_index().unwrap_or(0);
        let phase = if u[k0].norm() > 0.0 {
            fixed[k0] / u[k0]
        } else {
            Complex64::new(1.0, 0.0)
        };
        left.push(fixed);
        right.push(v.scale(phase.conj()));
    }
    Ok(SchmidtForm {
        coefficients: dec.singular_values,
        left,
        right,
        spaces: (s1.clone(), s2.clone()),
    })
}

/// A reduced state: coefficient matrix in the computational basis plus the
/// space whose metric defines its operator form.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    pub matrix: CMatrix,
    pub space: MetricSpace,
    pub trace_normalized: bool,
}

impl DensityMatrix {
    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn normalized(&self) -> Result<DensityMatrix> {
        let tr = self.trace();
        if !(tr > 0.0) {
            return Err(Error::UnphysicalState(format!("non-positive trace {tr}")));
        }
        Ok(DensityMatrix {
            matrix: self.matrix.scale_real(1.0 / tr),
            space: self.space.clone(),
            trace_normalized: true,
        })
    }
}

/// Partial trace keeping `keep`, with the traced side's inner product chosen
/// by `theory`. The result is not normalized.
pub fn reduced_density(
    psi: &CVector,
    s1: &MetricSpace,
    s2: &MetricSpace,
    keep: Side,
    theory: Theory,
) -> Result<DensityMatrix> {
    let (d1, d2) = check_bipartite(psi, s1, s2)?;
    let a = coefficient_matrix(psi, d1, d2);
    let (kept, traced) = match keep {
        Side::First => (s1, s2),
        Side::Second => (s2, s1),
    };
    let weight = match theory {
        Theory::Cpt => traced.metric().clone(),
        Theory::Dirac => CMatrix::identity(traced.dim()),
    };
    // keep 1: ρ = A Wᵀ A†;  keep 2: ρ = Aᵀ Wᵀ conj(A)
    let matrix = match keep {
        Side::First => a.matmul(&weight.transpose()).matmul(&a.adjoint()),
        Side::Second => a.transpose().matmul(&weight.transpose()).matmul(&a.conj()),
    };
    let space = match theory {
        Theory::Cpt => kept.clone(),
        Theory::Dirac => MetricSpace::identity(kept.dim()),
    };
    let trace = matrix.trace().re;
    Ok(DensityMatrix {
        matrix,
        space,
        trace_normalized: (trace - 1.0).abs() <= 1e-10,
    })
}

fn spectrum_entropy(m: &CMatrix) -> Result<f64> {
    let deviation = m.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let tr = m.trace().re;
    if !(tr > 0.0) {
        return Err(Error::UnphysicalState(format!("non-positive trace {tr}")));
    }
    let n = m.rows();
    let sym = CMatrix::from_fn(n, n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * (0.5 / tr));
    let eig = eig_hermitian(&sym)?;
    let mut probs = Vec::with_capacity(n);
    for &lambda in &eig.eigenvalues {
        if lambda < -NEGATIVE_EIGENVALUE_TOL {
            return Err(Error::UnphysicalState(format!(
                "density matrix has eigenvalue {lambda:.3e}"
            )));
        }
        probs.push(lambda.max(0.0));
    }
    Ok(shannon_bits(probs))
}

/// Von Neumann entropy (bits) of the trace-normalized coefficient matrix,
/// using ordinary eigenvalues.
pub fn entropy(rho: &DensityMatrix) -> Result<f64> {
    spectrum_entropy(&rho.matrix)
}

/// Von Neumann entropy (bits) with eigenvalues taken relative to the metric
/// of `rho.space`.
pub fn entropy_metric_frame(rho: &DensityMatrix) -> Result<f64> {
    if rho.space.is_identity() {
        return entropy(rho);
    }
    let deviation = rho.matrix.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let s = rho.space.sqrt_metric();
    spectrum_entropy(&s.matmul(&rho.matrix).matmul(s))
}

/// Entanglement entropy in bits from the Schmidt weights.
pub fn entanglement_entropy(psi: &CVector, s1: &MetricSpace, s2: &MetricSpace) -> Result<f64> {
    Ok(schmidt(psi, s1, s2)?.entropy())
}

/// Closed-form entropy of `aψ+ψ+' + bψ+ψ-' + cψ-ψ+' + dψ-ψ-'`:
/// `λ± = (1 ± √X)/2`, `X = 1 - 4[(|a|²+|b|²)(|c|²+|d|²) - |ac* + bd*|²]`.
pub fn two_ptqubit_entanglement(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
) -> Result<f64> {
    let norm_sq = a.norm_sqr() + b.norm_sqr() + c.norm_sqr() + d.norm_sqr();
    if (norm_sq - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized { norm_sq });
    }
    let x = 1.0
        - 4.0
            * ((a.norm_sqr() + b.norm_sqr()) * (c.norm_sqr() + d.norm_sqr())
                - (a * c.conj() + b * d.conj()).norm_sqr());
    let root = if x < 0.0 {
        if x < -1e-12 {
            return Err(Error::UnphysicalState(format!("X = {x:.3e} is negative")));
        }
        0.0
    } else {
        x.sqrt()
    };
    Ok(shannon_bits([0.5 * (1.0 + root), 0.5 * (1.0 - root)]))
}

/// Separability test `|ad - bc| ≤ 1e-10` (the ratio condition `a/b = c/d`
/// without division).
pub fn is_product(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> bool {
    (a * d - b * c).norm() <= PRODUCT_TOL
}

/// `Σ amp_k (basis1 ⊗ basis2)_k` with amplitudes ordered `++, +-, -+, --`.
pub fn state_from_eigen_amplitudes(
    sys1: &PTQubitSystem,
    sys2: &PTQubitSystem,
    amps: [Complex64; 4],
) -> CVector {
    let b1 = [sys1.psi_plus(), sys1.psi_minus()];
    let b2 = [sys2.psi_plus(), sys2.psi_minus()];
    let mut out = CVector::zeros(4);
    for (k, amp) in amps.iter().enumerate() {
        out = &out + &b1[k / 2].kron(b2[k % 2]).scale(*amp);
    }
    out
}

/// Amplitudes of `psi` in the CPT-orthonormal product eigenbasis.
pub fn eigen_amplitudes(
    sys1: &PTQubitSystem,
    sys2: &PTQubitSystem,
    psi: &CVector,
) -> Result<[Complex64; 4]> {
    let joint = tensor_space(sys1.space(), sys2.space());
    let b1 = [sys1.psi_plus(), sys1.psi_minus()];
    let b2 = [sys2.psi_plus(), sys2.psi_minus()];
    let mut out = [ZERO; 4];
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = joint.inner(&b1[k / 2].kron(b2[k % 2]), psi)?;
    }
    Ok(out)
}

/// `(e0 ⊗ e1 - e1 ⊗ e0)/√2`.
pub fn dirac_singlet() -> CVector {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    CVector::from_real(&[0.0, h, -h, 0.0])
}

/// `(ψ+ ⊗ ψ-' - ψ- ⊗ ψ+')/√2`.
pub fn cpt_singlet(sys1: &PTQubitSystem, sys2: &PTQubitSystem) -> CVector {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    state_from_eigen_amplitudes(sys1, sys2, [ZERO, c64(h, 0.0), c64(-h, 0.0), ZERO])
}

/// Entropy of the Dirac singlet traced in the CPT theory, two ways.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SingletComparison {
    pub alpha: f64,
    /// Closed form with `λ± = (1 ± 2 sinα)/2`; `None` where a λ is negative.
    pub closed_form_value: Option<f64>,
    /// CPT partial trace, trace normalization, computational eigenvalues.
    pub oracle_value: f64,
    /// Same reduced state with eigenvalues in the metric frame.
    pub metric_frame_value: f64,
}

/// `-Σ λ log2 λ` with `λ± = (1 ± 2 sinα)/2`.
///
/// This closed form does not follow from trace-normalizing the CPT-traced
/// singlet (whose normalized eigenvalues are `(1 ± sinα)/2`); it is kept for
/// comparison and fails once `|sinα| > 1/2` makes a λ negative.
pub fn singlet_closed_form_entropy(alpha: f64) -> Result<f64> {
    let s = alpha.sin();
    let lambdas = [0.5 * (1.0 + 2.0 * s), 0.5 * (1.0 - 2.0 * s)];
    if lambdas.iter().any(|&l| l < -NEGATIVE_EIGENVALUE_TOL) {
        return Err(Error::UnphysicalState(format!(
            "eigenvalues {lambdas:?} at alpha = {alpha}"
        )));
    }
    Ok(shannon_bits(lambdas.iter().map(|l| l.max(0.0))))
}

pub fn cross_theory_singlet_entropy(alpha: f64) -> Result<SingletComparison> {
    if !(alpha.abs() < std::f64::consts::FRAC_PI_2 - 1e-6) {
        return Err(Error::DomainError(alpha));
    }
    let space = cpt_space(alpha)?;
    let rho = reduced_density(&dirac_singlet(), &space, &space, Side::First, Theory::Cpt)?;
    Ok(SingletComparison {
        alpha,
        closed_form_value: singlet_closed_form_entropy(alpha).ok(),
        oracle_value: entropy(&rho)?,
        metric_frame_value: entropy_metric_frame(&rho)?,
    })
}
