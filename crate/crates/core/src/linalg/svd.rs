use super::{c64, CMatrix, CVector, ZERO};

const MAX_SWEEPS: usize = 80;

/// Thin singular value decomposition `A = U diag(s) V†`.
///
/// `U` is `m x k`, `V` is `n x k` with `k = min(m, n)`; singular values are
/// descending.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: CMatrix,
    pub singular_values: Vec<f64>,
    pub v: CMatrix,
}

/// One-sided (Hestenes) Jacobi SVD.
pub fn svd(a: &CMatrix) -> Svd {
    if a.rows() < a.cols() {
        // A† = V S U†
        let t = svd(&a.adjoint());
        return Svd {
            u: t.v,
            singular_values: t.singular_values,
            v: t.u,
        };
    }
    let (m, n) = (a.rows(), a.cols());
    let mut w = a.clone();
    let mut v = CMatrix::identity(n);

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = ZERO;
                for i in 0..m {
                    alpha += w[(i, p)].norm_sqr();
                    beta += w[(i, q)].norm_sqr();
                    gamma += w[(i, p)].conj() * w[(i, q)];
                }
                let g = gamma.norm();
                if g == 0.0 || g <= 1e-15 * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // Rotate column q by e^{-i phi} so the overlap is real.
                let phase = gamma.conj() / g;
                for i in 0..m {
                    w[(i, q)] *= phase;
                }
                for i in 0..n {
                    v[(i, q)] *= phase;
                }
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..m {
                    let wp = w[(i, p)];
                    let wq = w[(i, q)];
                    w[(i, p)] = wp * c - wq * s;
                    w[(i, q)] = wp * s + wq * c;
                }
                for i in 0..n {
                    let vp = v[(i, p)];
                    let vq = v[(i, q)];
                    v[(i, p)] = vp * c - vq * s;
                    v[(i, q)] = vp * s + vq * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = (0..n).map(|j| w.column(j).dirac_norm()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));

    let scale = norms.iter().copied().fold(0.0, f64::max);
    let mut u_cols: Vec<CVector> = Vec::with_capacity(n);
    let mut singular_values = Vec::with_capacity(n);
    for &j in &order {
        let sigma = norms[j];
        singular_values.push(sigma);
        if sigma > 1e-14 * scale.max(f64::MIN_POSITIVE) {
            u_cols.push(w.column(j).scale(c64(1.0 / sigma, 0.0)));
        } else {
            u_cols.push(complete_orthonormal(&u_cols, m));
        }
    }
    let v_sorted = CMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    Svd {
        u: CMatrix::from_columns(&u_cols),
        singular_values,
        v: v_sorted,
    }
}

/// A unit vector Dirac-orthogonal to every vector in `basis`.
pub(crate) fn complete_orthonormal(basis: &[CVector], dim: usize) -> CVector {
    let mut best: Option<CVector> = None;
    let mut best_norm = 0.0;
    for k in 0..dim {
        let mut cand = CVector::basis(dim, k);
        for _ in 0..2 {
            for b in basis {
                let proj = b.dirac(&cand);
                cand = &cand - &b.scale(proj);
            }
        }
        let nrm = cand.dirac_norm();
        if nrm > best_norm {
            best_norm = nrm;
            best = Some(cand);
        }
        if nrm > 0.5 {
            break;
        }
    }
    let v = best.expect("dimension must exceed the basis size");
    v.scale(c64(1.0 / best_norm, 0.0))
}
