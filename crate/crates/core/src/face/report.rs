use num_traits::Zero;
use serde::Serialize;

use super::{
    alpha5_lower_bound, det_m_closed, find_additional_zero, gram_m, membership_t, AlphaVector,
    FaceParams, Precision, QuadraticKind,
};
use crate::certificates::{ldlt_psd_check, PsdVerdict};
use crate::error::Result;
use crate::rational::format_rational;

/// Summary of a face query. Field order is the serialization order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FaceReport {
    pub a: String,
    pub b: String,
    pub alphas: Vec<String>,
    /// `None` unless `α₁..α₄ > 0`.
    pub bound: Option<String>,
    pub membership: bool,
    /// `None` when some `αᵢ = 0` (`i ≤ 4`).
    pub det_closed: Option<String>,
    pub det_elimination: String,
    pub m_diagonal: bool,
    pub m_verdict: &'static str,
    pub zero: Option<ZeroReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroReport {
    pub x: [f64; 3],
    pub y: [f64; 3],
    pub residual: f64,
    pub quadratic: [String; 3],
    pub discriminant: String,
    pub identically_zero: bool,
}

/// Collects bound, membership and determinants, plus the additional zero when `zero_tol`
/// is given (which requires `α₅` at the bound).
pub fn face_report(
    alpha: &AlphaVector,
    fp: &FaceParams,
    zero_tol: Option<f64>,
) -> Result<FaceReport> {
    let m = gram_m(alpha, fp)?;
    let bound = alpha5_lower_bound(alpha, fp).ok();
    let det_closed = det_m_closed(alpha, fp).ok();
    let diagonal = (0..5).all(|i| (0..5).all(|j| i == j || m.get(i, j).is_zero()));
    let verdict = match ldlt_psd_check(&m).verdict {
        PsdVerdict::PositiveDefinite => "positive definite",
        PsdVerdict::PositiveSemidefinite => "positive semidefinite",
        PsdVerdict::NotPsd => "not psd",
    };
    let zero = match zero_tol {
        Some(tol) => {
            let z = find_additional_zero(alpha, fp, tol, Precision::Double)?;
            Some(ZeroReport {
                x: z.point.x,
                y: z.point.y,
                residual: z.point.residual,
                quadratic: z.quadratic.clone().map(|c| format_rational(&c)),
                discriminant: format_rational(&z.discriminant),
                identically_zero: z.kind == QuadraticKind::IdenticallyZero,
            })
        }
        None => None,
    };
    Ok(FaceReport {
        a: format_rational(&fp.a),
        b: format_rational(&fp.b),
        alphas: alpha.values().iter().map(format_rational).collect(),
        bound: bound.as_ref().map(format_rational),
        membership: membership_t(alpha, fp)?,
        det_closed: det_closed.as_ref().map(format_rational),
        det_elimination: format_rational(&m.determinant()),
        m_diagonal: diagonal,
        m_verdict: verdict,
        zero,
    })
}
