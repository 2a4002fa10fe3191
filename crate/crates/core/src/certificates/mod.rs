//! Exact Gram-matrix certificates and the LDLᵀ positive-semidefiniteness test.

mod text;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::form::{Form, Monomial};
use crate::linalg::SymRationalMatrix;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PsdVerdict {
    PositiveDefinite,
    PositiveSemidefinite,
    NotPsd,
}

impl PsdVerdict {
    pub fn is_psd(self) -> bool {
        self != PsdVerdict::NotPsd
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LdltReport {
    pub verdict: PsdVerdict,
    /// Diagonal of `D`, up to and including the failing step.
    pub pivots: Vec<Rational>,
    /// Elimination step at which the matrix was found not PSD.
    pub failure_index: Option<usize>,
}

/// Symmetric Gaussian elimination without pivoting.
///
/// A negative pivot, or a zero pivot whose remaining row is nonzero, proves the matrix
/// is not PSD. A zero pivot with a zero row is skipped. Exact, so the answer is decisive.
pub fn ldlt_psd_check(s: &SymRationalMatrix) -> LdltReport {
    let n = s.dim();
    let mut a: Vec<Vec<Rational>> = (0..n).map(|i| s.row(i).to_vec()).collect();
    let mut pivots = Vec::with_capacity(n);
    let mut semidefinite = false;
    for k in 0..n {
        let p = a[k][k].clone();
        pivots.push(p.clone());
        if p.is_negative() {
            return not_psd(pivots, k);
        }
        if p.is_zero() {
            if a[k][k + 1..].iter().any(|v| !v.is_zero()) {
                return not_psd(pivots, k);
            }
            semidefinite = true;
            continue;
        }
        for i in k + 1..n {
            if a[k][i].is_zero() {
                continue;
            }
            let f = &a[k][i] / &p;
            for j in i..n {
                let delta = &f * &a[k][j];
                a[i][j] -= &delta;
                if j != i {
                    a[j][i] = a[i][j].clone();
                }
            }
        }
    }
    LdltReport {
        verdict: if semidefinite {
            PsdVerdict::PositiveSemidefinite
        } else {
            PsdVerdict::PositiveDefinite
        },
        pivots,
        failure_index: None,
    }
}

fn not_psd(pivots: Vec<Rational>, k: usize) -> LdltReport {
    LdltReport {
        verdict: PsdVerdict::NotPsd,
        pivots,
        failure_index: Some(k),
    }
}

/// The polynomial `zᵀ Q z`.
pub fn gram_expand(z: &[Monomial], q: &SymRationalMatrix) -> Result<Form> {
    if q.dim() != z.len() {
        return Err(Error::DimensionMismatch {
            what: "Gram matrix dimension versus basis length",
            expected: z.len(),
            found: q.dim(),
        });
    }
    let Some(first) = z.first() else {
        return Ok(Form::zero(0, 0));
    };
    let (n, d) = (first.n_vars(), first.degree());
    if let Some(bad) = z.iter().find(|m| m.n_vars() != n || m.degree() != d) {
        return Err(if bad.n_vars() != n {
            Error::DimensionMismatch {
                what: "basis monomial variable count",
                expected: n,
                found: bad.n_vars(),
            }
        } else {
            Error::WrongDegree {
                expected: d,
                found: bad.degree(),
            }
        });
    }
    let two = Rational::from_integer(2.into());
    let mut out = Form::zero(n, 2 * d);
    for i in 0..z.len() {
        for j in i..z.len() {
            let c = q.get(i, j);
            if c.is_zero() {
                continue;
            }
            let c = if i == j { c.clone() } else { c * &two };
            out.add_term(z[i].mul(&z[j]), c);
        }
    }
    Ok(out)
}

/// Claims `multiplier · target / scale = zᵀ Q z` with `Q ⪰ 0`.
///
/// With multiplier 1 and scale 1 this is a plain SOS certificate `target = zᵀQz`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SosCertificate {
    /// Basis monomials over all target variables.
    pub z: Vec<Monomial>,
    pub q: SymRationalMatrix,
    /// A form in the first `multiplier.n_vars()` variables of the target.
    pub multiplier: Form,
    pub scale: Rational,
    /// Number of leading variables that form the x-block in the `Z:` section; `None`
    /// for certificates over a single block.
    pub split: Option<usize>,
}

impl SosCertificate {
    pub fn new(z: Vec<Monomial>, q: SymRationalMatrix) -> Result<Self> {
        let n = z.first().map_or(0, Monomial::n_vars);
        Self::with_multiplier(z, q, Form::constant(n, Rational::one()), Rational::one())
    }

    pub fn with_multiplier(
        z: Vec<Monomial>,
        q: SymRationalMatrix,
        multiplier: Form,
        scale: Rational,
    ) -> Result<Self> {
        if q.dim() != z.len() {
            return Err(Error::DimensionMismatch {
                what: "Gram matrix dimension versus basis length",
                expected: z.len(),
                found: q.dim(),
            });
        }
        if !scale.is_positive() {
            return Err(Error::Degenerate(format!("scale {scale} must be positive")));
        }
        Ok(Self {
            z,
            q,
            multiplier,
            scale,
            split: None,
        })
    }

    /// Marks the first `k` variables as the x-block (used only for display and text I/O).
    pub fn with_split(mut self, k: usize) -> Self {
        self.split = Some(k);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SosVerdict {
    Accepted { ldlt: LdltReport },
    /// `multiplier · target / scale` and `zᵀQz` differ at `monomial`, checked in
    /// descending monomial order.
    CoefficientMismatch {
        monomial: Monomial,
        expected: Rational,
        found: Rational,
    },
    NotPsd { ldlt: LdltReport },
    /// The multiplier is not a positive combination of even monomials.
    MultiplierNotSquares,
}

impl SosVerdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, SosVerdict::Accepted { .. })
    }
}

/// Checks the identity coefficient by coefficient, then the PSD-ness of `Q`, then the
/// multiplier.
pub fn verify_sos_certificate(target: &Form, cert: &SosCertificate) -> Result<SosVerdict> {
    let n = target.n_vars();
    if let Some(m) = cert.z.iter().find(|m| m.n_vars() != n) {
        return Err(Error::DimensionMismatch {
            what: "basis monomial variable count",
            expected: n,
            found: m.n_vars(),
        });
    }
    if cert.multiplier.n_vars() > n {
        return Err(Error::DimensionMismatch {
            what: "multiplier variable count",
            expected: n,
            found: cert.multiplier.n_vars(),
        });
    }
    let mult = cert.multiplier.embed(n)?;
    let lhs = (&mult * target).scale(&cert.scale.recip());
    let rhs = gram_expand(&cert.z, &cert.q)?;
    let rhs = if cert.z.is_empty() { Form::zero(n, lhs.degree()) } else { rhs };
    if !lhs.is_zero() && !rhs.is_zero() && lhs.degree() != rhs.degree() {
        return Err(Error::WrongDegree {
            expected: lhs.degree(),
            found: rhs.degree(),
        });
    }
    if let Some((m, e, f)) = first_difference(&lhs, &rhs) {
        return Ok(SosVerdict::CoefficientMismatch {
            monomial: m,
            expected: e,
            found: f,
        });
    }
    let ldlt = ldlt_psd_check(&cert.q);
    if !ldlt.verdict.is_psd() {
        return Ok(SosVerdict::NotPsd { ldlt });
    }
    if !is_sum_of_even_monomials(&cert.multiplier) {
        return Ok(SosVerdict::MultiplierNotSquares);
    }
    Ok(SosVerdict::Accepted { ldlt })
}

fn first_difference(a: &Form, b: &Form) -> Option<(Monomial, Rational, Rational)> {
    let mut keys: Vec<&Monomial> = a.terms().map(|(m, _)| m).chain(b.terms().map(|(m, _)| m)).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter().rev().find_map(|m| {
        let (x, y) = (a.coefficient(m), b.coefficient(m));
        (x != y).then(|| (m.clone(), x, y))
    })
}

/// A nonzero positive combination of monomials with all exponents even.
pub fn is_sum_of_even_monomials(f: &Form) -> bool {
    !f.is_zero()
        && f.terms()
            .all(|(m, c)| c.is_positive() && m.exponents().iter().all(|e| e % 2 == 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn sym(rows: &[&[i64]]) -> SymRationalMatrix {
        SymRationalMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn identity_is_positive_definite() {
        let r = ldlt_psd_check(&SymRationalMatrix::identity(3));
        assert_eq!(r.verdict, PsdVerdict::PositiveDefinite);
        assert_eq!(r.pivots, vec![int(1); 3]);
    }

    #[test]
    fn zero_pivot_with_nonzero_row() {
        let r = ldlt_psd_check(&sym(&[&[0, 1], &[1, 0]]));
        assert_eq!(r.verdict, PsdVerdict::NotPsd);
        assert_eq!(r.failure_index, Some(0));
    }

    #[test]
    fn semidefinite_and_negative() {
        assert_eq!(
            ldlt_psd_check(&sym(&[&[1, 1], &[1, 1]])).verdict,
            PsdVerdict::PositiveSemidefinite
        );
        assert_eq!(
            ldlt_psd_check(&sym(&[&[0, 0], &[0, 2]])).verdict,
            PsdVerdict::PositiveSemidefinite
        );
        let r = ldlt_psd_check(&sym(&[&[1, 2], &[2, 1]]));
        assert_eq!((r.verdict, r.failure_index), (PsdVerdict::NotPsd, Some(1)));
        assert_eq!(r.pivots, vec![int(1), int(-3)]);
    }

    #[test]
    fn single_square() {
        let z = vec![Monomial::new(vec![1, 0, 0, 1, 0, 0])];
        let f = gram_expand(&z, &sym(&[&[12]])).unwrap();
        assert_eq!(f.coefficient(&Monomial::new(vec![2, 0, 0, 2, 0, 0])), int(12));
        assert_eq!(f.num_terms(), 1);
        assert!(gram_expand(&z, &SymRationalMatrix::zeros(2)).is_err());
    }

    #[test]
    fn cross_terms_doubled() {
        // (x + y)^2 with z = (x, y), Q = all ones.
        let z = vec![Monomial::var(2, 0), Monomial::var(2, 1)];
        let f = gram_expand(&z, &sym(&[&[1, 1], &[1, 1]])).unwrap();
        assert_eq!(f, (&Form::var(2, 0) + &Form::var(2, 1)).pow(2));
    }

    #[test]
    fn verify_reports_mismatch_and_psd_failure() {
        let z = vec![Monomial::var(2, 0), Monomial::var(2, 1)];
        let target = (&Form::var(2, 0) + &Form::var(2, 1)).pow(2);
        let good = SosCertificate::new(z.clone(), sym(&[&[1, 1], &[1, 1]])).unwrap();
        assert!(verify_sos_certificate(&target, &good).unwrap().is_accepted());

        let bad = SosCertificate::new(z.clone(), sym(&[&[2, 1], &[1, 1]])).unwrap();
        match verify_sos_certificate(&target, &bad).unwrap() {
            SosVerdict::CoefficientMismatch { monomial, expected, found } => {
                assert_eq!(monomial, Monomial::new(vec![2, 0]));
                assert_eq!((expected, found), (int(1), int(2)));
            }
            v => panic!("unexpected {v:?}"),
        }

        // An indefinite Q that matches its own expansion.
        let q = sym(&[&[1, 2], &[2, 1]]);
        let t = gram_expand(&z, &q).unwrap();
        let cert = SosCertificate::new(z, q).unwrap();
        assert!(matches!(
            verify_sos_certificate(&t, &cert).unwrap(),
            SosVerdict::NotPsd { .. }
        ));
    }

    #[test]
    fn zero_target_zero_q() {
        let z = vec![Monomial::new(vec![1, 1]), Monomial::new(vec![2, 0])];
        let cert = SosCertificate::new(z, SymRationalMatrix::zeros(2)).unwrap();
        assert!(verify_sos_certificate(&Form::zero(2, 4), &cert).unwrap().is_accepted());
    }

    #[test]
    fn multiplier_syntax() {
        let sq = &Form::var(3, 0).pow(2) + &Form::var(3, 1).pow(2);
        assert!(is_sum_of_even_monomials(&sq));
        assert!(is_sum_of_even_monomials(&Form::constant(3, int(1))));
        assert!(!is_sum_of_even_monomials(&(&Form::var(3, 0) * &Form::var(3, 1))));
        assert!(!is_sum_of_even_monomials(&sq.scale(&rat(-1, 2))));
    }

    #[test]
    fn nonpositive_scale_rejected() {
        let z = vec![Monomial::var(1, 0)];
        let r = SosCertificate::with_multiplier(
            z,
            SymRationalMatrix::identity(1),
            Form::constant(1, int(1)),
            int(0),
        );
        assert!(r.is_err());
    }
}
