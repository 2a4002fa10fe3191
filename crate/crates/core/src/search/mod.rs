//! Numeric Gram matrix search with exact rounding, and the checkers built on it.
//!
//! The numeric side never decides anything on its own. A positive answer is an
//! [`SosCertificate`] accepted by [`verify_sos_certificate`]; a negative answer is a
//! [`DualCertificate`] accepted by [`DualCertificate::verify_refutation`].

mod ap;
mod gram;
mod jacobi;
mod refute;
mod rounding;
mod zeros;

use std::fmt;

use num_traits::{One, Signed, Zero};

pub use ap::{alternating_projection_solve, ApResult, ApSolution, ApStall};
pub use gram::{parameterize, parameterize_reduced, GramParameterization};
pub use jacobi::{jacobi_eigendecomposition, Eigen};
pub use refute::refutation_search;
pub use rounding::{rationalize_and_certify, Rounded, RoundingFailure};
pub use zeros::{exact_zeros, reduction_matrix, BiPoint};

use crate::biquadratic::{hessian_biquadratic, hessian_form, BiquadraticForm};
use crate::certificates::{is_sum_of_even_monomials, verify_sos_certificate, SosCertificate};
use crate::corpus;
use crate::dual::DualCertificate;
use crate::error::{Error, Result};
use crate::form::{Form, Monomial};

#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    pub max_iterations: usize,
    pub convergence_tol: f64,
    /// Starting denominator bound for rounding; doubled on failure.
    pub denominator_bound: u64,
    /// Random starts for the zero search.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            max_iterations: 50_000,
            convergence_tol: 1e-8,
            denominator_bound: 1 << 16,
            restarts: 16,
            seed: 0,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.max_iterations > 0
            && self.convergence_tol > 0.0
            && self.convergence_tol.is_finite()
            && self.denominator_bound > 0
            && self.restarts > 0;
        if ok {
            Ok(())
        } else {
            Err(Error::Degenerate(
                "search parameters must all be positive".into(),
            ))
        }
    }
}

/// Where a refutation came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RefutationSource {
    Numeric,
    /// The stored functional for the corpus form `b_thm22`.
    Builtin,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StallDiagnostics {
    pub min_eigenvalue: f64,
    /// Distance from the last fiber point to the PSD cone.
    pub gap: f64,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SearchStatus {
    ExactCertificate(SosCertificate),
    NumericFeasible { residual: f64 },
    Refuted(DualCertificate, RefutationSource),
    Stalled(StallDiagnostics),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub iterations: usize,
    /// `max(0, -λ_min)` of the numeric Gram matrix before rounding.
    pub residual: f64,
    pub denominator_bound: Option<u64>,
    /// Basis length after pruning, and the Gram size after the zero reduction.
    pub basis_len: usize,
    pub gram_dim: usize,
}

impl SearchOutcome {
    pub fn status_name(&self) -> &'static str {
        match self.status {
            SearchStatus::ExactCertificate(_) => "exact-certificate",
            SearchStatus::NumericFeasible { .. } => "numeric-feasible",
            SearchStatus::Refuted(..) => "refuted",
            SearchStatus::Stalled(_) => "stalled",
        }
    }

    pub fn certificate(&self) -> Option<&SosCertificate> {
        match &self.status {
            SearchStatus::ExactCertificate(c) => Some(c),
            _ => None,
        }
    }

    pub fn refutation(&self) -> Option<&DualCertificate> {
        match &self.status {
            SearchStatus::Refuted(c, _) => Some(c),
            _ => None,
        }
    }
}

impl fmt::Display for SearchOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "status: {}", self.status_name())?;
        writeln!(f, "iterations: {}", self.iterations)?;
        writeln!(f, "residual: {:e}", self.residual)?;
        match self.denominator_bound {
            Some(d) => writeln!(f, "denominator bound: {d}")?,
            None => writeln!(f, "denominator bound: -")?,
        }
        write!(f, "basis: {} monomials, gram size {}", self.basis_len, self.gram_dim)?;
        match &self.status {
            SearchStatus::Refuted(c, src) => {
                let how = match src {
                    RefutationSource::Numeric => "numeric",
                    RefutationSource::Builtin => "builtin",
                };
                let p = c.values().len();
                write!(f, "\nrefutation: {how}, {p} values")
            }
            SearchStatus::Stalled(d) => write!(
                f,
                "\nstall: {} (min eigenvalue {:e}, gap {:e})",
                d.reason, d.min_eigenvalue, d.gap
            ),
            _ => Ok(()),
        }
    }
}

/// `x_i y_j` in `2n` variables, ordered by `i` then `j`.
pub fn bilinear_basis(n: usize) -> Vec<Monomial> {
    hessian_basis(n, 4)
}

/// Products of an `x`-monomial of degree `d/2 − 1` with one `y_j`, in `2n` variables:
/// a complete basis for `yᵀ H(x) y` when `H` is the Hessian of a degree-`d` form.
pub fn hessian_basis(n: usize, degree: u32) -> Vec<Monomial> {
    let xs = Monomial::all_of_degree(n, degree.saturating_sub(2) / 2);
    let mut out: Vec<Monomial> = Vec::with_capacity(xs.len() * n);
    let mut xs = xs;
    xs.sort();
    xs.reverse();
    for m in &xs {
        for j in 0..n {
            let mut e = m.exponents().to_vec();
            e.resize(2 * n, 0);
            e[n + j] += 1;
            out.push(Monomial::new(e));
        }
    }
    out
}

/// Drops basis elements whose square has coefficient zero in the target: the matching
/// diagonal Gram entry is forced to zero, and with it the whole row.
fn prune(target: &Form, z: &[Monomial]) -> Vec<Monomial> {
    z.iter()
        .filter(|m| !target.coefficient(&m.mul(m)).is_zero())
        .cloned()
        .collect()
}

/// Numeric search for a Gram matrix of `target` over `z`, rounded to an exact
/// certificate when possible. Never refutes.
///
/// When `target` is biquadratic in the two halves of its variables, exact real zeros
/// are located first: every PSD Gram matrix annihilates `z(u)` at a zero `u`, so the
/// search runs on the orthogonal complement.
pub fn search_sos(target: &Form, z: &[Monomial], cfg: &SearchConfig) -> Result<SearchOutcome> {
    cfg.validate()?;
    if target.degree() % 2 == 1 {
        return Err(Error::OddDegree(target.degree()));
    }
    // Surface representability errors against the full basis.
    parameterize(target, z)?;
    let stalled = |reason: &str, basis_len: usize, gram_dim: usize| SearchOutcome {
        status: SearchStatus::Stalled(StallDiagnostics {
            min_eigenvalue: f64::NAN,
            gap: f64::NAN,
            reason: reason.into(),
        }),
        iterations: 0,
        residual: f64::NAN,
        denominator_bound: None,
        basis_len,
        gram_dim,
    };
    if let Some(m) = z.iter().find(|m| target.coefficient(&m.mul(m)).is_negative()) {
        return Ok(stalled(&format!("square of {m} has a negative coefficient"), z.len(), 0));
    }
    let z = prune(target, z);
    let points = biquadratic_view(target)
        .map(|b| {
            exact_zeros(&b, cfg)
                .into_iter()
                .map(|(x, y)| x.into_iter().chain(y).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        })
        .unwrap_or_default();
    let pz = match reduction_matrix(&z, &points) {
        Some(u) => parameterize_reduced(target, &z, u),
        None => parameterize(target, &z),
    };
    let pz = match pz {
        Ok(pz) => pz,
        Err(Error::NotRepresentable(why)) => return Ok(stalled(&why, z.len(), 0)),
        Err(e) => return Err(e),
    };
    let (basis_len, gram_dim) = (z.len(), pz.dim());
    match alternating_projection_solve(&pz, cfg) {
        ApResult::Feasible(sol) => {
            let (status, bound) = match rationalize_and_certify(&sol.gram, &pz, cfg)? {
                Ok(r) => (SearchStatus::ExactCertificate(r.certificate), Some(r.denominator_bound)),
                Err(f) => (
                    SearchStatus::NumericFeasible {
                        residual: sol.residual,
                    },
                    Some(f.denominator_bound),
                ),
            };
            Ok(SearchOutcome {
                status,
                iterations: sol.iterations,
                residual: sol.residual,
                denominator_bound: bound,
                basis_len,
                gram_dim,
            })
        }
        ApResult::Stalled(st) => Ok(SearchOutcome {
            status: SearchStatus::Stalled(StallDiagnostics {
                min_eigenvalue: st.min_eigenvalue,
                gap: st.gap,
                reason: "alternating projections did not reach the PSD cone".into(),
            }),
            iterations: st.iterations,
            residual: (-st.min_eigenvalue).max(0.0),
            denominator_bound: None,
            basis_len,
            gram_dim,
        }),
    }
}

fn biquadratic_view(target: &Form) -> Option<BiquadraticForm> {
    let n = target.n_vars();
    if n % 2 != 0 || target.degree() != 4 {
        return None;
    }
    BiquadraticForm::from_form(target, n / 2).ok()
}

/// SOS check for a biquadratic form over the bilinear basis. When the numeric search
/// stalls, the stored functional is used for the corpus form `b_thm22` and a
/// refutation search runs otherwise.
pub fn check_sos_biquadratic(b: &BiquadraticForm, cfg: &SearchConfig) -> Result<SearchOutcome> {
    let n = b.n();
    let mut out = search_sos(&b.to_form(), &bilinear_basis(n), cfg)?;
    if let SearchStatus::ExactCertificate(c) = &mut out.status {
        c.split = Some(n);
    }
    if matches!(out.status, SearchStatus::Stalled(_)) {
        let stored = corpus::b22_dual();
        if *b == corpus::b_thm22() && stored.verify_refutation(b)?.is_accepted() {
            out.status = SearchStatus::Refuted(stored, RefutationSource::Builtin);
        } else if let Some(c) = refutation_search(b, cfg)? {
            out.status = SearchStatus::Refuted(c, RefutationSource::Numeric);
        }
    }
    debug_assert!(sound_biquadratic(b, &out));
    Ok(out)
}

fn sound_biquadratic(b: &BiquadraticForm, out: &SearchOutcome) -> bool {
    match &out.status {
        SearchStatus::ExactCertificate(c) => {
            verify_sos_certificate(&b.to_form(), c).map_or(false, |v| v.is_accepted())
        }
        SearchStatus::Refuted(c, _) => c.verify_refutation(b).map_or(false, |v| v.is_accepted()),
        _ => true,
    }
}

/// Decides sos-convexity of `p` when the search succeeds: an exact certificate for
/// `yᵀ H_p(x) y`, or (for quartics) a refutation of it.
pub fn check_sos_convexity(p: &Form, cfg: &SearchConfig) -> Result<SearchOutcome> {
    let d = p.degree();
    if d % 2 == 1 {
        return Err(Error::OddDegree(d));
    }
    if d < 2 {
        return Err(Error::DegreeTooLow {
            found: d,
            required: 2,
        });
    }
    let n = p.n_vars();
    if d == 4 {
        return check_sos_biquadratic(&hessian_biquadratic(p)?, cfg);
    }
    let h = hessian_form(p)?;
    let mut out = search_sos(&h, &hessian_basis(n, d), cfg)?;
    if let SearchStatus::ExactCertificate(c) = &mut out.status {
        c.split = Some(n);
    }
    Ok(out)
}

/// Searches for a certificate of `multiplier · target = zᵀQz` with `multiplier` a
/// positive combination of even monomials in the first variables of `target`.
pub fn check_sos_with_multiplier(
    target: &Form,
    multiplier: &Form,
    cfg: &SearchConfig,
) -> Result<SearchOutcome> {
    if !is_sum_of_even_monomials(multiplier) {
        return Err(Error::Degenerate(
            "multiplier must be a positive combination of even monomials".into(),
        ));
    }
    let nv = target.n_vars();
    let product = &multiplier.embed(nv)? * target;
    let dm = multiplier.degree();
    let split = biquadratic_view(target).map(|b| b.n());
    let z = match split {
        Some(n) if multiplier.n_vars() <= n => {
            let xs = Monomial::all_of_degree(n, (dm + 2) / 2);
            let mut z = Vec::new();
            for m in xs.iter().rev() {
                for j in 0..n {
                    let mut e = m.exponents().to_vec();
                    e.resize(2 * n, 0);
                    e[n + j] += 1;
                    z.push(Monomial::new(e));
                }
            }
            z
        }
        _ => {
            let mut z = Monomial::all_of_degree(nv, product.degree() / 2);
            z.reverse();
            z
        }
    };
    let mut out = search_sos(&product, &z, cfg)?;
    if let SearchStatus::ExactCertificate(c) = &out.status {
        let mut cert = SosCertificate::with_multiplier(
            c.z.clone(),
            c.q.clone(),
            multiplier.clone(),
            num_rational::BigRational::one(),
        )?;
        cert.split = split;
        if !verify_sos_certificate(target, &cert)?.is_accepted() {
            return Err(Error::Degenerate("rounded certificate failed verification".into()));
        }
        out.status = SearchStatus::ExactCertificate(cert);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::face::{face_member, AlphaVector, FaceParams};
    use crate::rational::{int, rat};

    fn sum_of_fourth_powers() -> Form {
        (0..3).fold(Form::zero(3, 4), |acc, i| &acc + &Form::var(3, i).pow(4))
    }

    #[test]
    fn bases() {
        assert_eq!(bilinear_basis(3).len(), 9);
        assert_eq!(bilinear_basis(3)[1].exponents(), &[1, 0, 0, 0, 1, 0]);
        assert_eq!(hessian_basis(2, 6).len(), 6);
    }

    #[test]
    fn diagonal_quartic_is_certified() {
        let out = check_sos_convexity(&sum_of_fourth_powers(), &SearchConfig::default()).unwrap();
        let c = out.certificate().expect("certificate");
        assert_eq!(c.z.len(), 3);
        let h = hessian_form(&sum_of_fourth_powers()).unwrap();
        assert!(verify_sos_certificate(&h, c).unwrap().is_accepted());
    }

    #[test]
    fn face_member_is_certified() {
        let fp = FaceParams::new(int(1), int(1));
        let alpha = AlphaVector::new([int(1), int(2), rat(1, 2), int(1), rat(-1, 4)]);
        let p = face_member(&alpha, &fp).unwrap();
        let out = check_sos_convexity(&p, &SearchConfig::default()).unwrap();
        assert!(out.certificate().is_some(), "{out}");
        assert!(out.residual <= 1e-6);
    }

    #[test]
    fn bundled_non_sos_form_is_refuted() {
        let out = check_sos_biquadratic(&corpus::b_thm22(), &SearchConfig::default()).unwrap();
        let c = out.refutation().expect("refutation");
        assert!(c.verify_refutation(&corpus::b_thm22()).unwrap().is_accepted());
    }

    #[test]
    fn odd_degree_rejected() {
        assert!(matches!(
            check_sos_convexity(&Form::var(2, 0).pow(3), &SearchConfig::default()),
            Err(Error::OddDegree(3))
        ));
    }
}
