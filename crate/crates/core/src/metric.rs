//! Finite-dimensional inner-product spaces with a Hermitian positive-definite
//! metric.
//!
//! `inner(psi, phi) = psi† M phi`. The identity metric is ordinary (Dirac)
//! quantum mechanics; the CPT metric of a PT-symmetric qubit is built in
//! [`crate::ptqubit`]. Whitening by `M^{1/2}` maps the metric geometry onto the
//! Dirac geometry, which is how the Schmidt and optimization code reuses
//! standard SVD/eigen machinery.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{c64, eig_hermitian, tensor_product, CMatrix, CVector};

const HERMITIAN_TOL: f64 = 1e-12;
const MIN_METRIC_EIGENVALUE: f64 = 1e-10;
const ZERO_NORM: f64 = 1e-14;
const OBSERVABLE_TOL: f64 = 1e-10;
const ORTHONORMAL_TOL: f64 = 1e-10;

/// Inner-product space defined by a Hermitian positive-definite metric.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricSpace {
    metric: CMatrix,
    sqrt: CMatrix,
    inv_sqrt: CMatrix,
    identity: bool,
}

impl MetricSpace {
    /// Dirac space of dimension `dim`.
    pub fn identity(dim: usize) -> Self {
        Self {
            metric: CMatrix::identity(dim),
            sqrt: CMatrix::identity(dim),
            inv_sqrt: CMatrix::identity(dim),
            identity: true,
        }
    }

    /// Validates `metric` and precomputes `M^{1/2}` and `M^{-1/2}`.
    pub fn new(metric: CMatrix) -> Result<Self> {
        let n = metric.ensure_square()?;
        if metric == CMatrix::identity(n) {
            return Ok(Self::identity(n));
        }
        let deviation = metric.hermitian_deviation();
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let eig = eig_hermitian(&metric)?;
        let min = eig.eigenvalues.first().copied().unwrap_or(1.0);
        if min <= MIN_METRIC_EIGENVALUE {
            return Err(Error::NotPositiveDefinite {
                min_eigenvalue: min,
            });
        }
        Ok(Self {
            sqrt: eig.map_spectrum(f64::sqrt),
            inv_sqrt: eig.map_spectrum(|x| 1.0 / x.sqrt()),
            metric,
            identity: false,
        })
    }

    pub fn dim(&self) -> usize {
        self.metric.rows()
    }

    pub fn metric(&self) -> &CMatrix {
        &self.metric
    }

    /// `M^{1/2}`.
    pub fn sqrt_metric(&self) -> &CMatrix {
        &self.sqrt
    }

    /// `M^{-1/2}`.
    pub fn inv_sqrt_metric(&self) -> &CMatrix {
        &self.inv_sqrt
    }

    pub fn is_identity(&self) -> bool {
        self.identity
    }

    fn check_dim(&self, v: &CVector) -> Result<()> {
        if v.dim() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimMismatch {
                expected: self.dim(),
                got: v.dim(),
            })
        }
    }

    /// `psi† M phi`; conjugate-linear in `psi`.
    pub fn inner(&self, psi: &CVector, phi: &CVector) -> Result<Complex64> {
        self.check_dim(psi)?;
        self.check_dim(phi)?;
        if self.identity {
            return Ok(psi.dirac(phi));
        }
        Ok(psi.dirac(&self.metric.apply(phi)))
    }

    pub fn norm(&self, psi: &CVector) -> Result<f64> {
        Ok(self.inner(psi, psi)?.re.max(0.0).sqrt())
    }

    /// Unit-norm copy of `psi` with the dominant component real and
    /// nonnegative.
    pub fn normalize(&self, psi: &CVector) -> Result<CVector> {
        let norm = self.norm(psi)?;
        if !(norm >= ZERO_NORM) {
            return Err(Error::ZeroVector { norm });
        }
        Ok(psi.scale(c64(1.0 / norm, 0.0)).fix_phase())
    }

    /// `psi -> M^{1/2} psi`.
    pub fn whiten(&self, psi: &CVector) -> Result<CVector> {
        self.check_dim(psi)?;
        Ok(self.sqrt.apply(psi))
    }

    /// `psi -> M^{-1/2} psi`.
    pub fn unwhiten(&self, psi: &CVector) -> Result<CVector> {
        self.check_dim(psi)?;
        Ok(self.inv_sqrt.apply(psi))
    }

    /// Unit vector orthogonal to `psi` in a two-dimensional space.
    pub fn orthocomplement(&self, psi: &CVector) -> Result<CVector> {
        self.check_dim(psi)?;
        if self.dim() != 2 {
            return Err(Error::DimMismatch {
                expected: 2,
                got: self.dim(),
            });
        }
        let norm = self.norm(psi)?;
        if !(norm >= ZERO_NORM) {
            return Err(Error::ZeroVector { norm });
        }
        // psi† M phi = 0  <=>  phi is Dirac-orthogonal to M psi.
        let w = self.metric.apply(psi);
        let phi = CVector::from_vec(vec![-w[1].conj(), w[0].conj()]);
        self.normalize(&phi)
    }

    /// Born-rule probabilities of finding `psi` in each basis state.
    ///
    /// `p_n = |<psi|psi_n>|^2 / (||psi||^2 ||psi_n||^2)`.
    pub fn measurement_probability(&self, psi: &CVector, basis: &[CVector]) -> Result<Vec<f64>> {
        self.check_dim(psi)?;
        let mut deviation: f64 = 0.0;
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate().skip(i) {
                let g = self.inner(a, b)?;
                let target = if i == j { 1.0 } else { 0.0 };
                deviation = deviation.max((g - target).norm());
            }
        }
        if deviation > ORTHONORMAL_TOL {
            return Err(Error::BasisNotOrthonormal { deviation });
        }
        let psi_sq = self.inner(psi, psi)?.re;
        if !(psi_sq.sqrt() >= ZERO_NORM) {
            return Err(Error::ZeroVector {
                norm: psi_sq.max(0.0).sqrt(),
            });
        }
        basis
            .iter()
            .map(|b| {
                let amp = self.inner(psi, b)?;
                let b_sq = self.inner(b, b)?.re;
                Ok(amp.norm_sqr() / (psi_sq * b_sq))
            })
            .collect()
    }

    /// Whether `O` is self-adjoint under the metric: `O† M = M O`.
    pub fn is_metric_observable(&self, op: &CMatrix) -> Result<bool> {
        self.check_square_op(op)?;
        let lhs = op.adjoint().matmul(&self.metric);
        let rhs = self.metric.matmul(op);
        Ok(lhs.max_abs_diff(&rhs) <= OBSERVABLE_TOL)
    }

    /// Whether `transpose(O) = K O K` for the supplied CPT matrix `K`.
    pub fn is_transpose_observable(&self, op: &CMatrix, cpt_map: &CMatrix) -> Result<bool> {
        self.check_square_op(op)?;
        self.check_square_op(cpt_map)?;
        let rhs = cpt_map.matmul(op).matmul(cpt_map);
        Ok(op.transpose().max_abs_diff(&rhs) <= OBSERVABLE_TOL)
    }

    fn check_square_op(&self, op: &CMatrix) -> Result<()> {
        let n = op.ensure_square()?;
        if n != self.dim() {
            return Err(Error::DimMismatch {
                expected: self.dim(),
                got: n,
            });
        }
        Ok(())
    }
}

/// Joint space with metric `M1 ⊗ M2`.
pub fn tensor_space(s1: &MetricSpace, s2: &MetricSpace) -> MetricSpace {
    if s1.identity && s2.identity {
        return MetricSpace::identity(s1.dim() * s2.dim());
    }
    // The Kronecker product of Hermitian positive-definite factors is again
    // HPD, and its square roots factor the same way.
    MetricSpace {
        metric: tensor_product(&s1.metric, &s2.metric),
        sqrt: tensor_product(&s1.sqrt, &s2.sqrt),
        inv_sqrt: tensor_product(&s1.inv_sqrt, &s2.inv_sqrt),
        identity: false,
    }
}

/// A state together with the space it lives in.
#[derive(Debug, Clone)]
pub struct StateVector<'a> {
    space: &'a MetricSpace,
    components: CVector,
}

impl<'a> StateVector<'a> {
    pub fn new(space: &'a MetricSpace, components: CVector) -> Result<Self> {
        space.check_dim(&components)?;
        Ok(Self { space, components })
    }

    pub fn space(&self) -> &MetricSpace {
        self.space
    }

    pub fn components(&self) -> &CVector {
        &self.components
    }

    pub fn norm(&self) -> f64 {
        self.space.norm(&self.components).unwrap_or(0.0)
    }

    pub fn inner(&self, other: &StateVector<'_>) -> Result<Complex64> {
        self.space.inner(&self.components, &other.components)
    }

    pub fn normalized(&self) -> Result<StateVector<'a>> {
        Ok(Self {
            space: self.space,
            components: self.space.normalize(&self.components)?,
        })
    }
}
