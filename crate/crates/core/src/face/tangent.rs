use num_traits::{One, Zero};

use super::{q_basis, FaceParams};
use crate::biquadratic::{hessian_biquadratic, BiquadraticForm};
use crate::certificates::{ldlt_psd_check, LdltReport};
use crate::error::{Error, Result};
use crate::form::complement_basis;
use crate::linalg::{RationalMatrix, SymRationalMatrix};
use crate::rational::{to_f64, Rational};

/// Second-order behaviour of a biquadratic form at one of its zeros, restricted to the
/// tangent space `{(u, v) : uᵀx₀ = 0, vᵀy₀ = 0}` of the sphere product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentHessian {
    /// The full `2n × 2n` Hessian of `(x, y) ↦ b(x, y)` at the point.
    pub full: SymRationalMatrix,
    /// Columns spanning the tangent space.
    pub basis: RationalMatrix,
    /// `Bᵀ H B`, of size `2(n−1)`.
    pub restricted: SymRationalMatrix,
    pub report: LdltReport,
}

/// Restricts the Hessian of `b` at `(x₀, y₀)` to the tangent space and decides its
/// definiteness. Each block of the basis comes from [`complement_basis`].
pub fn tangent_hessian_check(
    b: &BiquadraticForm,
    x0: &[Rational],
    y0: &[Rational],
) -> Result<TangentHessian> {
    let value = b.evaluate(x0, y0)?;
    if !value.is_zero() {
        return Err(Error::NonzeroAtPoint(value.to_string()));
    }
    let n = b.n();
    let point: Vec<Rational> = x0.iter().chain(y0).cloned().collect();
    let h = b.to_form().hessian()?.evaluate(&point)?;
    let full = SymRationalMatrix::from_rows(h)?;

    let (bx, by) = (complement_basis(x0)?, complement_basis(y0)?);
    let mut basis = RationalMatrix::zeros(2 * n, 2 * (n - 1));
    for i in 0..n {
        for j in 0..n - 1 {
            basis[(i, j)] = bx[(i, j)].clone();
            basis[(n + i, n - 1 + j)] = by[(i, j)].clone();
        }
    }
    let restricted =
        SymRationalMatrix::try_from(basis.transpose().mul(&full.as_matrix())?.mul(&basis)?)?;
    let report = ldlt_psd_check(&restricted);
    Ok(TangentHessian {
        full,
        basis,
        restricted,
        report,
    })
}

/// `h_{qᵢ}` at one of the reference points.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessValue {
    /// `v1`, `v2` or `v3`.
    pub point: &'static str,
    /// 1-based index `i` of `qᵢ`.
    pub q_index: usize,
    /// Present for the rational points.
    pub exact: Option<Rational>,
    pub value: f64,
}

/// Evaluates every `h_{qᵢ}` at `v1 = ([0,b,1],[a,0,1])`, `v2 = ([0,(2+√3)b,1],[a,0,1])`
/// and `v3 = ([a,b,1],[1,0,1])`. `v2` is irrational and evaluated in floating point.
pub fn witness_evaluations(fp: &FaceParams) -> Result<Vec<WitnessValue>> {
    fp.require_nonzero()?;
    let h: Vec<BiquadraticForm> = q_basis(fp)?
        .iter()
        .map(hessian_biquadratic)
        .collect::<Result<_>>()?;
    let (a, b) = (fp.a.clone(), fp.b.clone());
    let (z, o) = (Rational::zero, Rational::one);
    let rational_points = [
        ("v1", [z(), b.clone(), o()], [a.clone(), z(), o()]),
        ("v3", [a.clone(), b.clone(), o()], [o(), z(), o()]),
    ];
    let mut out = Vec::with_capacity(15);
    for (name, x, y) in &rational_points[..1] {
        push_exact(&mut out, &h, name, x, y)?;
    }
    let (af, bf) = (to_f64(&a), to_f64(&b));
    let x2 = [0.0, (2.0 + 3f64.sqrt()) * bf, 1.0];
    let y2 = [af, 0.0, 1.0];
    for (i, hi) in h.iter().enumerate() {
        out.push(WitnessValue {
            point: "v2",
            q_index: i + 1,
            exact: None,
            value: hi.evaluate_f64(&x2, &y2)?,
        });
    }
    for (name, x, y) in &rational_points[1..] {
        push_exact(&mut out, &h, name, x, y)?;
    }
    Ok(out)
}

fn push_exact(
    out: &mut Vec<WitnessValue>,
    h: &[BiquadraticForm],
    name: &'static str,
    x: &[Rational],
    y: &[Rational],
) -> Result<()> {
    for (i, hi) in h.iter().enumerate() {
        let v = hi.evaluate(x, y)?;
        out.push(WitnessValue {
            point: name,
            q_index: i + 1,
            value: to_f64(&v),
            exact: Some(v),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::PsdVerdict;
    use crate::corpus;
    use crate::form::Form;
    use crate::rational::{int, rat};

    fn e(i: usize) -> Vec<Rational> {
        (0..3).map(|k| if k == i { int(1) } else { int(0) }).collect()
    }

    #[test]
    fn f_is_strictly_convex_along_the_tangent_space() {
        let hf = hessian_biquadratic(&corpus::f_lemma32()).unwrap();
        let t = tangent_hessian_check(&hf, &e(0), &e(1)).unwrap();
        assert_eq!(t.restricted.dim(), 4);
        assert_eq!(t.report.verdict, PsdVerdict::PositiveDefinite);
    }

    #[test]
    fn reduction_form_has_zero_tangent_hessian() {
        let hq = hessian_biquadratic(&corpus::q_reduction()).unwrap();
        let t = tangent_hessian_check(&hq, &e(0), &e(1)).unwrap();
        assert!(t.restricted.is_zero());
        assert_eq!(t.report.verdict, PsdVerdict::PositiveSemidefinite);
    }

    #[test]
    fn nonzero_point_rejected() {
        let h = hessian_biquadratic(&Form::var(3, 0).pow(4)).unwrap();
        assert!(matches!(
            tangent_hessian_check(&h, &e(0), &e(0)),
            Err(Error::NonzeroAtPoint(_))
        ));
    }

    #[test]
    fn witnesses_match_closed_forms() {
        let fp = FaceParams::new(rat(3, 2), int(-2));
        let w = witness_evaluations(&fp).unwrap();
        assert_eq!(w.len(), 15);
        let get = |p: &str, i: usize| w.iter().find(|v| v.point == p && v.q_index == i).unwrap();
        for i in 1..=4 {
            assert_eq!(get("v1", i).exact, Some(int(0)));
        }
        assert_eq!(get("v1", 5).exact, Some(int(-4) * rat(9, 4) * int(4)));
        let expect = (48.0 + 24.0 * 3f64.sqrt()) * 16.0;
        assert!((get("v2", 4).value - expect).abs() <= 1e-9 * expect);
        assert_eq!(get("v3", 2).exact, Some(int(0)));
        assert!(get("v3", 5).value > 0.0);
    }
}
