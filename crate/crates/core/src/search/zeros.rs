use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::jacobi::jacobi_eigendecomposition;
use super::SearchConfig;
use crate::biquadratic::BiquadraticForm;
use crate::form::Monomial;
use crate::linalg::RationalMatrix;
use crate::rational::{best_approximation, Rational};

/// Denominator bounds tried when snapping a numeric zero to a rational point.
const SNAP_DENOMINATORS: [u64; 4] = [12, 144, 1728, 20736];

/// A real zero `(x, y)` of a biquadratic form, both parts nonzero.
pub type BiPoint = (Vec<Rational>, Vec<Rational>);

/// Exact zeros of `b` on the sphere product: coordinate pairs `(eᵢ, eⱼ)` plus rational
/// snaps of local minimizers from seeded random starts.
///
/// Each point is scaled so that its largest coordinate in each block is `1`.
pub fn exact_zeros(b: &BiquadraticForm, cfg: &SearchConfig) -> Vec<BiPoint> {
    let n = b.n();
    let mut out: Vec<BiPoint> = Vec::new();
    let push = |p: BiPoint, out: &mut Vec<BiPoint>| {
        if !out.contains(&p) {
            out.push(p);
        }
    };
    let unit = |i: usize| -> Vec<Rational> {
        (0..n)
            .map(|k| if k == i { Rational::one() } else { Rational::zero() })
            .collect()
    };
    for i in 0..n {
        for j in 0..n {
            if b.evaluate(&unit(i), &unit(j)).map_or(false, |v| v.is_zero()) {
                push((unit(i), unit(j)), &mut out);
            }
        }
    }
    let scale = b
        .coefficients()
        .map(|(_, c)| crate::rational::to_f64(&c.abs()))
        .fold(0.0, f64::max);
    if scale == 0.0 {
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.restarts {
        let x0: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let Some((x, y, v)) = local_min(b, x0) else {
            continue;
        };
        if v > 1e-9 * scale {
            continue;
        }
        for p in snaps(&x, &y) {
            if b.evaluate(&p.0, &p.1).map_or(false, |v| v.is_zero()) {
                push(p.clone(), &mut out);
                let swapped = (p.1.clone(), p.0.clone());
                if b.evaluate(&swapped.0, &swapped.1).map_or(false, |v| v.is_zero()) {
                    push(swapped, &mut out);
                }
                break;
            }
        }
    }
    out
}

/// `yᵀ A(x) y = b(x, y)` when `x_block`, else `xᵀ A(y) x`.
fn block_matrix(b: &BiquadraticForm, v: &[f64], x_block: bool) -> Vec<Vec<f64>> {
    let n = b.n();
    let mut a = vec![vec![0.0; n]; n];
    for (idx, c) in b.coefficients() {
        let c = crate::rational::to_f64(c);
        let ((i, j), (k, l)) = if x_block { (idx.x, idx.y) } else { (idx.y, idx.x) };
        let w = c * v[i] * v[j];
        if k == l {
            a[k][k] += w;
        } else {
            a[k][l] += 0.5 * w;
            a[l][k] += 0.5 * w;
        }
    }
    a
}

/// Alternating minimization: each step replaces one block by the bottom eigenvector of
/// the quadratic form the other block induces.
fn local_min(b: &BiquadraticForm, x0: Vec<f64>) -> Option<(Vec<f64>, Vec<f64>, f64)> {
    let norm = |v: &[f64]| v.iter().map(|t| t * t).sum::<f64>().sqrt();
    let nx = norm(&x0);
    if nx == 0.0 {
        return None;
    }
    let mut x: Vec<f64> = x0.iter().map(|t| t / nx).collect();
    let mut y = Vec::new();
    let mut value = f64::INFINITY;
    for _ in 0..500 {
        let ey = jacobi_eigendecomposition(&block_matrix(b, &x, true), 1e-14).ok()?;
        y = ey.vectors[0].clone();
        let ex = jacobi_eigendecomposition(&block_matrix(b, &y, false), 1e-14).ok()?;
        x = ex.vectors[0].clone();
        let v = ex.values[0];
        if (value - v).abs() <= 1e-16 * (1.0 + v.abs()) {
            value = v;
            break;
        }
        value = v;
    }
    Some((x, y, value))
}

fn snap(v: &[f64], den: u64) -> Option<Vec<Rational>> {
    let m = v.iter().copied().fold(0.0f64, |a, t| if t.abs() > a.abs() { t } else { a });
    if m == 0.0 {
        return None;
    }
    Some(v.iter().map(|t| best_approximation(t / m, den)).collect())
}

fn snaps(x: &[f64], y: &[f64]) -> Vec<BiPoint> {
    SNAP_DENOMINATORS
        .iter()
        .filter_map(|&d| Some((snap(x, d)?, snap(y, d)?)))
        .collect()
}

/// Columns spanning the orthogonal complement of `{z(p) : p ∈ points}` in the coefficient
/// space of `z`, or `None` when the points impose no condition.
pub fn reduction_matrix(z: &[Monomial], points: &[Vec<Rational>]) -> Option<RationalMatrix> {
    let rows: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| z.iter().map(|m| m.evaluate(p)).collect())
        .filter(|r: &Vec<Rational>| r.iter().any(|v| !v.is_zero()))
        .collect();
    if rows.is_empty() {
        return None;
    }
    let zm = RationalMatrix::from_rows(rows).ok()?;
    let basis = zm.nullspace();
    let mut u = RationalMatrix::zeros(z.len(), basis.len());
    for (c, v) in basis.iter().enumerate() {
        for (r, e) in v.iter().enumerate() {
            u[(r, c)] = e.clone();
        }
    }
    Some(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biquadratic::hessian_biquadratic;
    use crate::face::{q_basis, FaceParams};
    use crate::form::Form;
    use crate::rational::int;

    #[test]
    fn diagonal_quartic_has_off_diagonal_coordinate_zeros() {
        let p = &(&Form::var(3, 0).pow(4) + &Form::var(3, 1).pow(4)) + &Form::var(3, 2).pow(4);
        let h = hessian_biquadratic(&p).unwrap();
        assert!(exact_zeros(&h, &SearchConfig::default()).len() >= 6);
    }

    #[test]
    fn face_member_zeros_include_the_shared_point() {
        let fp = FaceParams::new(int(1), int(1));
        let q = q_basis(&fp).unwrap();
        let p = q[..4].iter().fold(Form::zero(3, 4), |acc, f| &acc + f);
        let h = hessian_biquadratic(&p).unwrap();
        let zs = exact_zeros(&h, &SearchConfig::default());
        let d = vec![int(1), int(1), int(1)];
        let e3 = vec![int(0), int(0), int(1)];
        assert!(zs.contains(&(e3, d)));
    }

    #[test]
    fn reduction_drops_a_monomial() {
        let z = vec![Monomial::new(vec![1, 0]), Monomial::new(vec![0, 1])];
        let u = reduction_matrix(&z, &[vec![int(1), int(0)]]).unwrap();
        assert_eq!(u.cols(), 1);
        assert_eq!(u.column(0), vec![int(0), int(1)]);
    }
}
