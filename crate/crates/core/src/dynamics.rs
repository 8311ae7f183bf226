//! Entanglement generation by product Hamiltonians `H1 ⊗ H2`.
//!
//! Each factor decomposes as `r cosθ I + (ω/2) σ·n` with the complex Bloch
//! vector `n = (2/ω)(s, 0, i r sinθ)` and `ω = 2s cosα`, so that `n·n = 1`
//! (bilinear, not Hermitian, dot product). Expanding the product leaves three
//! local terms and a single nonlocal one, `(ωω'/4) σ·n ⊗ σ·n'`, which alone
//! drives entanglement.

use num_complex::Complex64;

use crate::entanglement::schmidt;
use crate::error::{Error, Result};
use crate::linalg::{c64, expm, pauli, tensor_product, CMatrix, CVector, I};
use crate::metric::{tensor_space, MetricSpace};
use crate::ptqubit::{parity_operator, PTParams, PTQubitSystem};

/// `H = scalar·I + (ω/2) σ·n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochDecomposition {
    pub scalar: f64,
    pub omega: f64,
    pub n: [Complex64; 3],
}

impl BlochDecomposition {
    /// `σ·n`.
    pub fn sigma_n(&self) -> CMatrix {
        pauli::dot(&self.n)
    }

    pub fn reconstruct(&self) -> CMatrix {
        &CMatrix::identity(2).scale_real(self.scalar) + &self.sigma_n().scale_real(self.omega / 2.0)
    }

    /// Bilinear `n·n`.
    pub fn n_dot_n(&self) -> Complex64 {
        self.n.iter().map(|x| x * x).sum()
    }
}

pub fn bloch_decompose(params: &PTParams) -> Result<BlochDecomposition> {
    // Validation (unbroken phase, s = t, s > 0) is shared with the qubit build.
    let sys = PTQubitSystem::build(*params)?;
    let omega = 2.0 * params.s * sys.alpha().cos();
    let k = 2.0 / omega;
    Ok(BlochDecomposition {
        scalar: params.r * params.theta.cos(),
        omega,
        n: [
            c64(k * params.s, 0.0),
            c64(0.0, 0.0),
            c64(0.0, k * params.r * params.theta.sin()),
        ],
    })
}

/// `H1 ⊗ H2` together with its nonlocal part.
#[derive(Debug, Clone)]
pub struct ProductHamiltonian {
    pub factors: (PTQubitSystem, PTQubitSystem),
    pub bloch: (BlochDecomposition, BlochDecomposition),
    pub matrix: CMatrix,
    /// `(ωω'/4) σ·n ⊗ σ·n'`
    pub nonlocal_part: CMatrix,
}

pub fn product_hamiltonian(
    sys1: &PTQubitSystem,
    sys2: &PTQubitSystem,
) -> Result<ProductHamiltonian> {
    let b1 = bloch_decompose(sys1.params())?;
    let b2 = bloch_decompose(sys2.params())?;
    let matrix = tensor_product(sys1.hamiltonian(), sys2.hamiltonian());
    let nonlocal_part =
        tensor_product(&b1.sigma_n(), &b2.sigma_n()).scale_real(b1.omega * b2.omega / 4.0);
    Ok(ProductHamiltonian {
        factors: (sys1.clone(), sys2.clone()),
        bloch: (b1, b2),
        matrix,
        nonlocal_part,
    })
}

impl ProductHamiltonian {
    /// The three local terms `rr' cosθ cosθ' I⊗I + r cosθ (ω'/2) I⊗σ·n' +
    /// r' cosθ' (ω/2) σ·n⊗I`.
    pub fn local_terms(&self) -> [CMatrix; 3] {
        let (b1, b2) = &self.bloch;
        let id = CMatrix::identity(2);
        [
            CMatrix::identity(4).scale_real(b1.scalar * b2.scalar),
            tensor_product(&id, &b2.sigma_n()).scale_real(b1.scalar * b2.omega / 2.0),
            tensor_product(&b1.sigma_n(), &id).scale_real(b2.scalar * b1.omega / 2.0),
        ]
    }

    /// Frequency `ωω'/4` of the entangling unitary.
    pub fn coupling(&self) -> f64 {
        self.bloch.0.omega * self.bloch.1.omega / 4.0
    }

    /// Joint CPT metric space.
    pub fn space(&self) -> MetricSpace {
        tensor_space(self.factors.0.space(), self.factors.1.space())
    }

    /// `max |H (P⊗P) - (P⊗P) conj(H)|`, the commutator with the antilinear
    /// `PT ⊗ PT` evaluated on the standard basis.
    pub fn pt_symmetry_residual(&self) -> f64 {
        pt_symmetry_residual(&self.matrix)
    }
}

pub fn pt_symmetry_residual(h: &CMatrix) -> f64 {
    let pp = tensor_product(&parity_operator(), &parity_operator());
    h.matmul(&pp).max_abs_diff(&pp.matmul(&h.conj()))
}

/// `U(t) = cos(ωω't/4) I - i sin(ωω't/4) σ·n ⊗ σ·n'`.
pub fn entangling_unitary(ph: &ProductHamiltonian, t: f64) -> CMatrix {
    let phase = ph.coupling() * t;
    let generator = tensor_product(&ph.bloch.0.sigma_n(), &ph.bloch.1.sigma_n());
    &CMatrix::identity(4).scale_real(phase.cos()) + &generator.scale(-I * phase.sin())
}

/// Amplitudes `(α, β, γ, δ)` of `U(t)|0⟩|0⟩` on `|00⟩, |01⟩, |10⟩, |11⟩`
/// (computational basis), from the explicit formulas.
pub fn closed_form_amplitudes(p1: &PTParams, p2: &PTParams, t: f64) -> Result<[Complex64; 4]> {
    let b1 = bloch_decompose(p1)?;
    let b2 = bloch_decompose(p2)?;
    let ww = b1.omega * b2.omega;
    let (sin, cos) = (ww * t / 4.0).sin_cos();
    let k = 4.0 / ww;
    let (st1, st2) = (p1.theta.sin(), p2.theta.sin());
    Ok([
        c64(cos, sin * k * p1.r * p2.r * st1 * st2),
        c64(k * sin * p2.s * p1.r * st1, 0.0),
        c64(k * sin * p1.s * p2.r * st2, 0.0),
        c64(0.0, -k * p1.s * p2.s * sin),
    ])
}

/// Trajectory of states and their CPT entanglement.
#[derive(Debug, Clone)]
pub struct EvolutionResult {
    pub times: Vec<f64>,
    /// Raw `exp(-iHt) Ψ0`, not renormalized.
    pub states: Vec<CVector>,
    /// Entanglement entropy (bits) of each state after normalization.
    pub entropies: Vec<f64>,
    /// Larger Schmidt weight `λ(t)`.
    pub schmidt_lambdas: Vec<f64>,
}

/// Evolves `psi0` under the time-independent `h`, recomputing
/// `exp(-iHt)` at each sample.
pub fn evolve(
    h: &CMatrix,
    psi0: &CVector,
    times: &[f64],
    s1: &MetricSpace,
    s2: &MetricSpace,
) -> Result<EvolutionResult> {
    let n = h.ensure_square()?;
    if n != psi0.dim() || n != s1.dim() * s2.dim() {
        return Err(Error::DimMismatch {
            expected: n,
            got: psi0.dim(),
        });
    }
    if times.windows(2).any(|w| !(w[1] >= w[0])) {
        return Err(Error::InvalidParams(
            "sample times must be nondecreasing".into(),
        ));
    }
    let joint = tensor_space(s1, s2);
    let mut result = EvolutionResult {
        times: times.to_vec(),
        states: Vec::with_capacity(times.len()),
        entropies: Vec::with_capacity(times.len()),
        schmidt_lambdas: Vec::with_capacity(times.len()),
    };
    for &t in times {
        let state = expm(&h.scale(-I * t))?.apply(psi0);
        let unit = joint.normalize(&state)?;
        let form = schmidt(&unit, s1, s2)?;
        result.schmidt_lambdas.push(form.weights()[0]);
        result.entropies.push(form.entropy());
        result.states.push(state);
    }
    Ok(result)
}
