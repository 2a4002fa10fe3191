//! Linear functionals on biquadratic forms that separate a form from the SOS cone.
//!
//! A functional is a vector `c` indexed by a [`MonomialOrdering`]. If its moment matrix
//! is PSD then `⟨c, w⟩ = Tr(Q · M_c) ≥ 0` for every SOS `w = z̃ᵀQz̃`, so a negative
//! pairing proves that the form is not a sum of squares.

use num_traits::{Signed, Zero};

use crate::biquadratic::{BiIndex, BiquadraticForm, MonomialOrdering};
use crate::certificates::{ldlt_psd_check, LdltReport};
use crate::error::{Error, Result};
use crate::linalg::SymRationalMatrix;
use crate::rational::{format_rational, Rational};
use crate::textio::{content_lines, header_usize, parse_header, rational_at};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCertificate {
    ordering: MonomialOrdering,
    c: Vec<Rational>,
}

impl DualCertificate {
    pub fn new(ordering: MonomialOrdering, c: Vec<Rational>) -> Result<Self> {
        if c.len() != ordering.len() {
            return Err(Error::DimensionMismatch {
                what: "functional length versus ordering",
                expected: ordering.len(),
                found: c.len(),
            });
        }
        Ok(Self { ordering, c })
    }

    pub fn ordering(&self) -> &MonomialOrdering {
        &self.ordering
    }

    pub fn values(&self) -> &[Rational] {
        &self.c
    }

    /// Value of the functional on the monomial `idx`.
    pub fn value(&self, idx: BiIndex) -> Option<&Rational> {
        self.ordering.position(idx).map(|p| &self.c[p])
    }

    /// `cᵀ b⃗` with `b⃗` listed in this certificate's ordering.
    pub fn pairing(&self, b: &BiquadraticForm) -> Result<Rational> {
        let v = b.coefficient_vector(&self.ordering)?;
        Ok(self.c.iter().zip(&v).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
    }

    /// Entry `(x_i y_j, x_k y_l)` is the value at `x_i x_k y_j y_l`, over the basis
    /// `x₁y₁, x₁y₂, …, x_n y_n`.
    pub fn moment_matrix(&self) -> MomentMatrix {
        let n = self.ordering.n();
        let basis: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let mut m = SymRationalMatrix::zeros(basis.len());
        for (r, &(i, j)) in basis.iter().enumerate() {
            for (s, &(k, l)) in basis.iter().enumerate().skip(r) {
                let v = self
                    .value(BiIndex::new(i, k, j, l))
                    .expect("orderings list every monomial");
                m.set(r, s, v.clone());
            }
        }
        MomentMatrix { basis, matrix: m }
    }

    /// Accepts when the moment matrix is PSD and the pairing with `b` is negative.
    pub fn verify_refutation(&self, b: &BiquadraticForm) -> Result<RefutationVerdict> {
        let pairing = self.pairing(b)?;
        let ldlt = ldlt_psd_check(&self.moment_matrix().matrix);
        Ok(if !ldlt.verdict.is_psd() {
            RefutationVerdict::MomentNotPsd { pairing, ldlt }
        } else if !pairing.is_negative() {
            RefutationVerdict::PairingNonnegative { pairing, ldlt }
        } else {
            RefutationVerdict::Accepted { pairing, ldlt }
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "dual n={}\nORDER: {}\nC:\n",
            self.ordering.n(),
            self.ordering.name()
        );
        for v in &self.c {
            s.push_str(&format_rational(v));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (hl, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty dual certificate file"))?;
        let n = header_usize(&parse_header(hl, header, "dual")?, "n", hl)?;
        let (ol, order) = lines
            .next()
            .ok_or_else(|| Error::parse(hl, "missing `ORDER:`"))?;
        let name = order
            .strip_prefix("ORDER:")
            .ok_or_else(|| Error::parse(ol, "expected `ORDER: builtin36 | lex`"))?
            .trim();
        let ordering = MonomialOrdering::by_name(name, n).map_err(|e| Error::parse(ol, e.to_string()))?;
        match lines.next() {
            Some((_, "C:")) => {}
            Some((ln, _)) => return Err(Error::parse(ln, "expected `C:`")),
            None => return Err(Error::parse(ol, "missing `C:`")),
        }
        let mut c = Vec::new();
        let mut last = ol;
        for (ln, line) in lines {
            for t in line.split_whitespace() {
                c.push(rational_at(t, ln)?);
            }
            last = ln;
        }
        Self::new(ordering, c).map_err(|e| Error::parse(last, e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentMatrix {
    /// `(i, j)` stands for `x_i y_j`.
    pub basis: Vec<(usize, usize)>,
    pub matrix: SymRationalMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RefutationVerdict {
    Accepted { pairing: Rational, ldlt: LdltReport },
    MomentNotPsd { pairing: Rational, ldlt: LdltReport },
    PairingNonnegative { pairing: Rational, ldlt: LdltReport },
}

impl RefutationVerdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, RefutationVerdict::Accepted { .. })
    }

    pub fn pairing(&self) -> &Rational {
        match self {
            RefutationVerdict::Accepted { pairing, .. }
            | RefutationVerdict::MomentNotPsd { pairing, .. }
            | RefutationVerdict::PairingNonnegative { pairing, .. } => pairing,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::PsdVerdict;
    use crate::rational::int;

    #[test]
    fn all_ones_moment_matrix() {
        let d = DualCertificate::new(MonomialOrdering::lex(3), vec![int(1); 36]).unwrap();
        let m = d.moment_matrix().matrix;
        assert_eq!(m.dim(), 9);
        assert!((0..9).all(|i| m.row(i).iter().all(|v| *v == int(1))));
    }

    #[test]
    fn zero_functional_never_refutes() {
        let d = DualCertificate::new(MonomialOrdering::lex(2), vec![int(0); 9]).unwrap();
        let b = BiquadraticForm::from_coefficients(2, [(BiIndex::new(0, 1, 0, 1), int(-1))]).unwrap();
        let v = d.verify_refutation(&b).unwrap();
        assert!(!v.is_accepted());
        assert_eq!(*v.pairing(), int(0));
    }

    #[test]
    fn refutes_negative_square() {
        // -x1^2 y1^2 is not SOS; the point evaluation at (e1, e1) separates it.
        let ord = MonomialOrdering::lex(2);
        let mut c = vec![int(0); 9];
        c[ord.position(BiIndex::new(0, 0, 0, 0)).unwrap()] = int(1);
        let d = DualCertificate::new(ord, c).unwrap();
        let b = BiquadraticForm::from_coefficients(2, [(BiIndex::new(0, 0, 0, 0), int(-1))]).unwrap();
        match d.verify_refutation(&b).unwrap() {
            RefutationVerdict::Accepted { pairing, ldlt } => {
                assert_eq!(pairing, int(-1));
                assert_eq!(ldlt.verdict, PsdVerdict::PositiveSemidefinite);
            }
            v => panic!("unexpected {v:?}"),
        }
    }

    #[test]
    fn text_roundtrip() {
        let d = DualCertificate::new(MonomialOrdering::lex(2), (0..9).map(int).collect()).unwrap();
        let t = d.to_text();
        assert_eq!(DualCertificate::from_text(&t).unwrap(), d);
        assert!(DualCertificate::from_text(&t.replace("lex", "grlex")).is_err());
        assert!(DualCertificate::from_text(&t.replace("8/1\n", "")).is_err());
    }

    #[test]
    fn length_mismatch() {
        assert!(DualCertificate::new(MonomialOrdering::builtin36(), vec![int(1); 35]).is_err());
    }
}
