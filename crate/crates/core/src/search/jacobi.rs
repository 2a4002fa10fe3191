use crate::error::{Error, Result};

/// Eigenvalues in ascending order; `vectors[k]` is the unit eigenvector of `values[k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

impl Eigen {
    /// `V diag(f(λ)) Vᵀ`.
    pub fn reconstruct(&self, f: impl Fn(f64) -> f64) -> Vec<Vec<f64>> {
        let n = self.values.len();
        let mut out = vec![vec![0.0; n]; n];
        for (lam, v) in self.values.iter().zip(&self.vectors) {
            let l = f(*lam);
            if l == 0.0 {
                continue;
            }
            for i in 0..n {
                let li = l * v[i];
                for j in i..n {
                    out[i][j] += li * v[j];
                }
            }
        }
        for i in 0..n {
            for j in 0..i {
                out[i][j] = out[j][i];
            }
        }
        out
    }
}

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm is at most
/// `tol · max(1, ‖A‖_F)`.
pub fn jacobi_eigendecomposition(a: &[Vec<f64>], tol: f64) -> Result<Eigen> {
    let n = a.len();
    let norm = a.iter().flatten().map(|v| v * v).sum::<f64>().sqrt();
    let scale = norm.max(1.0);
    for i in 0..n {
        if a[i].len() != n {
            return Err(Error::DimensionMismatch {
                what: "row length of a square matrix",
                expected: n,
                found: a[i].len(),
            });
        }
        for j in i + 1..n {
            if (a[i][j] - a[j][i]).abs() > tol * scale {
                return Err(Error::NonSymmetric { row: i, col: j });
            }
        }
    }
    let mut m: Vec<f64> = a.iter().flatten().copied().collect();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let off = |m: &[f64]| {
        let mut s = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                s += 2.0 * m[i * n + j] * m[i * n + j];
            }
        }
        s.sqrt()
    };
    for _sweep in 0..100 {
        if off(&m) <= tol * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k * n + p];
                    let mkq = m[k * n + q];
                    m[k * n + p] = c * mkp - s * mkq;
                    m[k * n + q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p * n + k];
                    let mqk = m[q * n + k];
                    m[p * n + k] = c * mpk - s * mqk;
                    m[q * n + k] = s * mpk + c * mqk;
                }
                m[p * n + q] = 0.0;
                m[q * n + p] = 0.0;
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i * n + i].total_cmp(&m[j * n + j]));
    Ok(Eigen {
        values: order.iter().map(|&i| m[i * n + i]).collect(),
        vectors: order
            .iter()
            .map(|&k| (0..n).map(|i| v[i * n + k]).collect())
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_is_fixed() {
        let e = jacobi_eigendecomposition(&[vec![3.0, 0.0], vec![0.0, -1.0]], 1e-12).unwrap();
        assert_eq!(e.values, vec![-1.0, 3.0]);
        assert_eq!(e.vectors[0], vec![0.0, 1.0]);
    }

    #[test]
    fn swap_matrix() {
        let e = jacobi_eigendecomposition(&[vec![0.0, 1.0], vec![1.0, 0.0]], 1e-12).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-12 && (e.values[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reconstructs_input() {
        let a = vec![
            vec![4.0, 1.0, -2.0, 0.5],
            vec![1.0, 2.0, 0.0, 1.0],
            vec![-2.0, 0.0, 3.0, -1.5],
            vec![0.5, 1.0, -1.5, -1.0],
        ];
        let e = jacobi_eigendecomposition(&a, 1e-13).unwrap();
        let r = e.reconstruct(|l| l);
        for i in 0..4 {
            for j in 0..4 {
                assert!((r[i][j] - a[i][j]).abs() < 1e-11);
                let dot: f64 = (0..4).map(|k| e.vectors[i][k] * e.vectors[j][k]).sum();
                assert!((dot - if i == j { 1.0 } else { 0.0 }).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_asymmetric() {
        assert!(jacobi_eigendecomposition(&[vec![0.0, 1.0], vec![2.0, 0.0]], 1e-12).is_err());
    }
}
