use super::CMatrix;
use crate::error::{Error, Result};

/// Above this 1-norm the exponential is at risk of overflowing `f64`.
const MAX_NORM: f64 = 700.0;
const MAX_TERMS: usize = 60;

/// Matrix exponential by scaling and squaring with a truncated Taylor series.
///
/// The argument is scaled by `2^-k` until its 1-norm is at most 1/2, the
/// series is summed until a term falls below `1e-18` relative to the partial
/// sum, and the result is squared `k` times.
pub fn expm(a: &CMatrix) -> Result<CMatrix> {
    let n = a.ensure_square()?;
    let norm = a.one_norm();
    if !norm.is_finite() || norm > MAX_NORM {
        return Err(Error::Overflow { norm });
    }

    let mut squarings = 0u32;
    let mut scaled_norm = norm;
    while scaled_norm > 0.5 {
        scaled_norm *= 0.5;
        squarings += 1;
    }
    let x = a.scale_real(0.5f64.powi(squarings as i32));

    let mut sum = CMatrix::identity(n);
    let mut term = CMatrix::identity(n);
    for k in 1..=MAX_TERMS {
        term = term.matmul(&x).scale_real(1.0 / k as f64);
        sum = &sum + &term;
        if term.max_abs() <= 1e-18 * sum.max_abs() {
            break;
        }
    }

    for _ in 0..squarings {
        sum = sum.matmul(&sum);
    }
    if !sum.is_finite() {
        return Err(Error::Overflow { norm });
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c64, pauli, tensor_product, I};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn exp_of_zero_is_identity() {
        assert_eq!(expm(&CMatrix::zeros(3, 3)).unwrap(), CMatrix::identity(3));
    }

    #[test]
    fn euler_identity_for_sigma_x() {
        let u = expm(&pauli::x().scale(-I * FRAC_PI_2)).unwrap();
        let expected = pauli::x().scale(-I);
        assert!(u.max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn diagonal_matches_scalar_exp() {
        let d = CMatrix::diag(&[c64(1.5, 0.3), c64(-2.0, 4.0), c64(0.0, -7.0)]);
        let e = expm(&d).unwrap();
        for i in 0..3 {
            let z = d[(i, i)].exp();
            assert!((e[(i, i)] - z).norm() < 1e-13 * z.norm().max(1.0));
        }
    }

    #[test]
    fn inverse_pair_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let n = rng.gen_range(1..=6);
            let mut a = CMatrix::from_fn(n, n, |_, _| {
                c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            let target = rng.gen_range(0.1..5.0);
            a = a.scale_real(target / a.one_norm());
            let p = expm(&a).unwrap().matmul(&expm(&(-&a)).unwrap());
            assert!(p.max_abs_diff(&CMatrix::identity(n)) < 1e-9);
        }
    }

    #[test]
    fn large_hermitian_generator_stays_unitary() {
        // ||A|| near 50: compare with the spectral route.
        let h = tensor_product(&pauli::x(), &pauli::z()).scale_real(25.0);
        let u = expm(&h.scale(-I)).unwrap();
        let uu = u.adjoint().matmul(&u);
        assert!(uu.max_abs_diff(&CMatrix::identity(4)) < 1e-10);
        let spectral = crate::linalg::eig_hermitian(&h).unwrap();
        let n = 4;
        let v = &spectral.eigenvectors;
        let oracle = CMatrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| v[(i, k)] * (-I * spectral.eigenvalues[k]).exp() * v[(j, k)].conj())
                .sum()
        });
        assert!(u.max_abs_diff(&oracle) < 1e-10);
    }

    #[test]
    fn overflow_is_reported() {
        let a = CMatrix::diag_real(&[1e4, 0.0]);
        assert!(matches!(expm(&a), Err(Error::Overflow { .. })));
    }
}
