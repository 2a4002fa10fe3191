//! Reference objects shipped with the crate, stored in the same text formats the CLI
//! reads and writes.

use crate::biquadratic::BiquadraticForm;
use crate::certificates::SosCertificate;
use crate::dual::DualCertificate;
use crate::error::{Error, Result};
use crate::form::{Form, PolyMatrix};

const CHOI_MATRIX: &str = include_str!("../corpus/choi_matrix.pmat");
const CHOI_BIQUADRATIC: &str = include_str!("../corpus/choi_biquadratic.biq");
const B_THM22: &str = include_str!("../corpus/b_thm22.biq");
const F_LEMMA32: &str = include_str!("../corpus/f_lemma32.form");
const Q_REDUCTION: &str = include_str!("../corpus/q_reduction.form");
const Q22_CERT: &str = include_str!("../corpus/q22_cert.cert");
const B22_DUAL: &str = include_str!("../corpus/b22_dual.dual");

/// Every name accepted by [`builtin`].
pub const BUILTIN_NAMES: [&str; 7] = [
    "choi_matrix",
    "choi_biquadratic",
    "b_thm22",
    "f_lemma32",
    "q_reduction",
    "q22_cert",
    "b22_dual",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CorpusObject {
    Matrix(PolyMatrix),
    Biquadratic(BiquadraticForm),
    Form(Form),
    SosCertificate(SosCertificate),
    DualCertificate(DualCertificate),
}

impl CorpusObject {
    pub fn to_text(&self) -> String {
        match self {
            CorpusObject::Matrix(m) => m.to_text(),
            CorpusObject::Biquadratic(b) => b.to_text(),
            CorpusObject::Form(f) => f.to_text(),
            CorpusObject::SosCertificate(c) => c.to_text(),
            CorpusObject::DualCertificate(d) => d.to_text(),
        }
    }

    /// Parses any of the text formats, dispatching on the header keyword.
    pub fn from_text(text: &str) -> Result<Self> {
        let keyword = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .find(|l| !l.is_empty())
            .and_then(|l| l.split_whitespace().next())
            .unwrap_or("");
        Ok(match keyword {
            "pmat" => CorpusObject::Matrix(PolyMatrix::from_text(text)?),
            "biq" => CorpusObject::Biquadratic(BiquadraticForm::from_text(text)?),
            "form" => CorpusObject::Form(Form::from_text(text)?),
            "sos-cert" => CorpusObject::SosCertificate(SosCertificate::from_text(text)?),
            "dual" => CorpusObject::DualCertificate(DualCertificate::from_text(text)?),
            other => {
                return Err(Error::parse(
                    1,
                    format!("unrecognized file header `{other}`"),
                ))
            }
        })
    }
}

/// Looks up a reference object by name.
pub fn builtin(name: &str) -> Result<CorpusObject> {
    Ok(match name {
        "choi_matrix" => CorpusObject::Matrix(choi_matrix()),
        "choi_biquadratic" => CorpusObject::Biquadratic(choi_biquadratic()),
        "b_thm22" => CorpusObject::Biquadratic(b_thm22()),
        "f_lemma32" => CorpusObject::Form(f_lemma32()),
        "q_reduction" => CorpusObject::Form(q_reduction()),
        "q22_cert" => CorpusObject::SosCertificate(q22_cert()),
        "b22_dual" => CorpusObject::DualCertificate(b22_dual()),
        other => return Err(Error::UnknownBuiltin(other.to_string())),
    })
}

/// Choi's matrix `C(x)`, symmetric and pointwise PSD but not a Hessian.
pub fn choi_matrix() -> PolyMatrix {
    PolyMatrix::from_text(CHOI_MATRIX).expect("bundled choi_matrix parses")
}

/// `yᵀ C(x) y`.
pub fn choi_biquadratic() -> BiquadraticForm {
    BiquadraticForm::from_text(CHOI_BIQUADRATIC).expect("bundled choi_biquadratic parses")
}

/// The symmetric nonnegative biquadratic form that is not a sum of squares.
pub fn b_thm22() -> BiquadraticForm {
    BiquadraticForm::from_text(B_THM22).expect("bundled b_thm22 parses")
}

/// `(x₁+x₃)⁴ + (x₂+x₃)⁴ + (2x₁+x₃)⁴ + (2x₂+x₃)⁴`.
pub fn f_lemma32() -> Form {
    Form::from_text(F_LEMMA32).expect("bundled f_lemma32 parses")
}

/// `x₃⁴ / 12`, whose Hessian form is `x₃²y₃²`.
pub fn q_reduction() -> Form {
    Form::from_text(Q_REDUCTION).expect("bundled q_reduction parses")
}

/// `(x₁² + x₂²) · b = (1/384) zᵀQz` for [`b_thm22`].
pub fn q22_cert() -> SosCertificate {
    SosCertificate::from_text(Q22_CERT).expect("bundled q22_cert parses")
}

/// The separating functional for [`b_thm22`] over the builtin 36-monomial ordering.
pub fn b22_dual() -> DualCertificate {
    DualCertificate::from_text(B22_DUAL).expect("bundled b22_dual parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_builtin_roundtrips_bit_exactly() {
        let raw = [
            CHOI_MATRIX,
            CHOI_BIQUADRATIC,
            B_THM22,
            F_LEMMA32,
            Q_REDUCTION,
            Q22_CERT,
            B22_DUAL,
        ];
        for (name, text) in BUILTIN_NAMES.iter().zip(raw) {
            let obj = builtin(name).unwrap();
            assert_eq!(obj.to_text(), text, "{name}");
            assert_eq!(CorpusObject::from_text(text).unwrap(), obj, "{name}");
        }
    }

    #[test]
    fn unknown_name() {
        assert_eq!(
            builtin("choi"),
            Err(Error::UnknownBuiltin("choi".to_string()))
        );
    }
}
