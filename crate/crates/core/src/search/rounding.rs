use super::gram::GramParameterization;
use super::SearchConfig;
use crate::certificates::{ldlt_psd_check, verify_sos_certificate, LdltReport, SosCertificate};
use crate::error::Result;
use crate::linalg::SymRationalMatrix;
use crate::rational::{best_approximation, Rational};

/// Rounding stops doubling the denominator bound after this many doublings.
const MAX_DOUBLINGS: u32 = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rounded {
    /// The exact fiber point (in reduced coordinates when the parameterization is reduced).
    pub gram: SymRationalMatrix,
    pub certificate: SosCertificate,
    pub denominator_bound: u64,
}

/// LDLᵀ report of the last rounding attempt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundingFailure {
    pub denominator_bound: u64,
    pub ldlt: LdltReport,
}

/// Rounds the fiber coordinates of `g`, doubling the denominator bound until the exact
/// point passes the LDLᵀ test.
pub fn rationalize_and_certify(
    g: &[Vec<f64>],
    pz: &GramParameterization,
    cfg: &SearchConfig,
) -> Result<std::result::Result<Rounded, RoundingFailure>> {
    let t = pz.coordinates(g);
    let mut bound = cfg.denominator_bound.max(1);
    let mut last = None;
    for _ in 0..=MAX_DOUBLINGS {
        let tr: Vec<Rational> = t.iter().map(|v| best_approximation(*v, bound)).collect();
        let x = pz.point(&tr)?;
        let ldlt = ldlt_psd_check(&x);
        if ldlt.verdict.is_psd() {
            let certificate = pz.certificate(&x)?;
            if verify_sos_certificate(pz.target(), &certificate)?.is_accepted() {
                return Ok(Ok(Rounded {
                    gram: x,
                    certificate,
                    denominator_bound: bound,
                }));
            }
        }
        last = Some(RoundingFailure {
            denominator_bound: bound,
            ldlt,
        });
        bound = bound.saturating_mul(2);
    }
    Ok(Err(last.expect("at least one attempt")))
}
