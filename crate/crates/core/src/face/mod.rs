//! The face `T_{a,b}` of the cone of convex ternary quartics whose Hessian forms vanish
//! at `u₁ = (e₁, e₂)` and `u₂ = (e₃, [a, b, 1])`.
//!
//! Members are `p = Σ αᵢ qᵢ` with `h_p = sᵀ M s` for five bilinear forms `sᵢ` and a
//! `5 × 5` Gram matrix `M(α, a, b)`; membership reduces to `M ⪰ 0`.

mod report;
mod tangent;
mod zero;

use std::ops::Index;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::form::{Form, Monomial};
use crate::linalg::{RationalMatrix, SymRationalMatrix};
use crate::rational::{factorial, int, Rational};

pub use report::{face_report, FaceReport, ZeroReport};
pub use tangent::{tangent_hessian_check, witness_evaluations, TangentHessian, WitnessValue};
pub use zero::{derived_quadratic, find_additional_zero, AdditionalZero, BiquadPoint, Precision, QuadraticKind};

/// The direction `d = [a, b, 1]` of the second zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceParams {
    pub a: Rational,
    pub b: Rational,
}

impl FaceParams {
    pub fn new(a: Rational, b: Rational) -> Self {
        Self { a, b }
    }

    fn require_not_both_zero(&self) -> Result<()> {
        if self.a.is_zero() && self.b.is_zero() {
            return Err(Error::Degenerate("a and b are both zero".into()));
        }
        Ok(())
    }

    fn require_nonzero(&self) -> Result<()> {
        if self.a.is_zero() || self.b.is_zero() {
            return Err(Error::Degenerate(format!(
                "a = {} and b = {} must both be nonzero",
                self.a, self.b
            )));
        }
        Ok(())
    }

    pub fn d(&self) -> [Rational; 3] {
        [self.a.clone(), self.b.clone(), Rational::one()]
    }
}

/// Coordinates `(α₁, …, α₅)` of `p = Σ αᵢ qᵢ`. Indexing is 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaVector([Rational; 5]);

impl AlphaVector {
    pub fn new(alphas: [Rational; 5]) -> Self {
        Self(alphas)
    }

    pub fn from_slice(v: &[Rational]) -> Result<Self> {
        let arr: [Rational; 5] = v.to_vec().try_into().map_err(|v: Vec<_>| Error::DimensionMismatch {
            what: "alpha vector length",
            expected: 5,
            found: v.len(),
        })?;
        Ok(Self(arr))
    }

    pub fn values(&self) -> &[Rational; 5] {
        &self.0
    }

    /// The same `α₁..α₄` with another `α₅`.
    pub fn with_alpha5(&self, a5: Rational) -> Self {
        let mut v = self.0.clone();
        v[4] = a5;
        Self(v)
    }

    fn require_positive_first_four(&self) -> Result<()> {
        if let Some(i) = (0..4).find(|&i| !self.0[i].is_positive()) {
            return Err(Error::Degenerate(format!(
                "alpha_{} = {} must be positive",
                i + 1,
                self.0[i]
            )));
        }
        Ok(())
    }
}

impl Index<usize> for AlphaVector {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

fn lin(c: &[Rational]) -> Form {
    Form::linear(c)
}

/// `q₁ = x₁⁴, q₂ = x₂⁴, q₃ = (x₁−ax₃)⁴, q₄ = (x₂−bx₃)⁴, q₅ = x₃²(bx₁−ax₂)²`.
pub fn q_basis(fp: &FaceParams) -> Result<[Form; 5]> {
    fp.require_not_both_zero()?;
    let (a, b, z, o) = (&fp.a, &fp.b, Rational::zero(), Rational::one());
    Ok([
        lin(&[o.clone(), z.clone(), z.clone()]).pow(4),
        lin(&[z.clone(), o.clone(), z.clone()]).pow(4),
        lin(&[o.clone(), z.clone(), -a]).pow(4),
        lin(&[z.clone(), o.clone(), -b]).pow(4),
        &lin(&[z.clone(), z.clone(), o]).pow(2) * &lin(&[b.clone(), -a, z]).pow(2),
    ])
}

/// `p = Σ αᵢ qᵢ`.
pub fn face_member(alpha: &AlphaVector, fp: &FaceParams) -> Result<Form> {
    let q = q_basis(fp)?;
    let mut p = Form::zero(3, 4);
    for (qi, ai) in q.iter().zip(alpha.values()) {
        p = &p + &qi.scale(ai);
    }
    Ok(p)
}

/// The bilinear forms in `(x₁, x₂, x₃, y₁, y₂, y₃)`:
/// `s₁ = x₁y₁, s₂ = x₂y₂, s₃ = (x₁−ax₃)(y₁−ay₃), s₄ = (x₂−bx₃)(y₂−by₃), s₅ = x₃(by₁−ay₂)`,
/// normalized so that `h_{qᵢ} = 12 sᵢ²` for `i ≤ 4`.
pub fn s_basis(fp: &FaceParams) -> Result<[Form; 5]> {
    fp.require_nonzero()?;
    let (a, b) = (&fp.a, &fp.b);
    let l = |c: [Rational; 6]| lin(&c);
    let (z, o) = (Rational::zero, Rational::one);
    let x1 = l([o(), z(), z(), z(), z(), z()]);
    let x2 = l([z(), o(), z(), z(), z(), z()]);
    let x3 = l([z(), z(), o(), z(), z(), z()]);
    let y1 = l([z(), z(), z(), o(), z(), z()]);
    let y2 = l([z(), z(), z(), z(), o(), z()]);
    Ok([
        &x1 * &y1,
        &x2 * &y2,
        &l([o(), z(), -a, z(), z(), z()]) * &l([z(), z(), z(), o(), z(), -a]),
        &l([z(), o(), -b, z(), z(), z()]) * &l([z(), z(), z(), z(), o(), -b]),
        &x3 * &l([z(), z(), z(), b.clone(), -a, z()]),
    ])
}

/// The Gram matrix `M` with `sᵀ M s = h_p` for `p = Σ αᵢ qᵢ`, where `c = a/b`.
pub fn gram_m(alpha: &AlphaVector, fp: &FaceParams) -> Result<SymRationalMatrix> {
    fp.require_nonzero()?;
    let (a, b) = (&fp.a, &fp.b);
    let a5 = &alpha[4];
    let t = |k: i64| int(k) * a5;
    let ba = b / a;
    let ab = a / b;
    let ba2 = &ba * &ba;
    let ab2 = &ab * &ab;
    let mut m = SymRationalMatrix::zeros(5);
    m.set(0, 0, int(12) * &alpha[0] + t(2) * &ba2);
    m.set(0, 1, t(-2));
    m.set(0, 2, t(-2) * &ba2);
    m.set(0, 3, t(2));
    m.set(0, 4, t(2) * &ba);
    m.set(1, 1, int(12) * &alpha[1] + t(2) * &ab2);
    m.set(1, 2, t(2));
    m.set(1, 3, t(-2) * &ab2);
    m.set(1, 4, t(-2) * &ab);
    m.set(2, 2, int(12) * &alpha[2] + t(2) * &ba2);
    m.set(2, 3, t(-2));
    m.set(2, 4, t(-2) * &ba);
    m.set(3, 3, int(12) * &alpha[3] + t(2) * &ab2);
    m.set(3, 4, t(2) * &ab);
    m.set(4, 4, t(-4));
    Ok(m)
}

/// `Σ = b⁴/α₁ + a⁴/α₂ + b⁴/α₃ + a⁴/α₄`.
fn sigma(alpha: &AlphaVector, fp: &FaceParams) -> Result<Rational> {
    if let Some(i) = (0..4).find(|&i| alpha[i].is_zero()) {
        return Err(Error::Degenerate(format!("alpha_{} is zero", i + 1)));
    }
    let a4 = num_traits::pow(fp.a.clone(), 4);
    let b4 = num_traits::pow(fp.b.clone(), 4);
    Ok(&b4 / &alpha[0] + &a4 / &alpha[1] + &b4 / &alpha[2] + &a4 / &alpha[3])
}

/// `det M = −20736 α₁α₂α₃α₄α₅ (4a²b² + α₅ Σ) / (a²b²)`.
pub fn det_m_closed(alpha: &AlphaVector, fp: &FaceParams) -> Result<Rational> {
    fp.require_nonzero()?;
    let s = sigma(alpha, fp)?;
    let a2b2 = &fp.a * &fp.a * &fp.b * &fp.b;
    let prod = alpha.values().iter().fold(Rational::one(), |acc, v| acc * v);
    Ok(int(-20736) * prod * (int(4) * &a2b2 + &alpha[4] * s) / a2b2)
}

/// `−4a²b² / Σ`, the smallest `α₅` for which `M ⪰ 0`.
pub fn alpha5_lower_bound(alpha: &AlphaVector, fp: &FaceParams) -> Result<Rational> {
    fp.require_nonzero()?;
    alpha.require_positive_first_four()?;
    let a2b2 = &fp.a * &fp.a * &fp.b * &fp.b;
    Ok(int(-4) * a2b2 / sigma(alpha, fp)?)
}

/// Whether `Σ αᵢ qᵢ` lies in `T_{a,b}`: `α₁..α₄ ≥ 0` and `bound ≤ α₅ ≤ 0`, where a
/// vanishing `αᵢ` (`i ≤ 4`) forces `α₅ = 0`.
pub fn membership_t(alpha: &AlphaVector, fp: &FaceParams) -> Result<bool> {
    fp.require_nonzero()?;
    if (0..4).any(|i| alpha[i].is_negative()) || alpha[4].is_positive() {
        return Ok(false);
    }
    if (0..4).any(|i| alpha[i].is_zero()) {
        return Ok(alpha[4].is_zero());
    }
    Ok(alpha5_lower_bound(alpha, fp)? <= alpha[4])
}

/// Spans the kernel of `M` when `α₅` sits at the lower bound:
/// `v = (2ab³/α₁, −2a³b/α₂, −2ab³/α₃, 2a³b/α₄, Σ)`.
pub fn kernel_vector(alpha: &AlphaVector, fp: &FaceParams) -> Result<[Rational; 5]> {
    let bound = alpha5_lower_bound(alpha, fp)?;
    if alpha[4] != bound {
        return Err(Error::NotAtBound {
            found: alpha[4].to_string(),
            bound: bound.to_string(),
        });
    }
    let (a, b) = (&fp.a, &fp.b);
    let ab3 = int(2) * a * b * b * b;
    let a3b = int(2) * a * a * a * b;
    Ok([
        &ab3 / &alpha[0],
        -(&a3b / &alpha[1]),
        -(&ab3 / &alpha[2]),
        &a3b / &alpha[3],
        sigma(alpha, fp)?,
    ])
}

/// The linear conditions cutting out `L_{a,b}` and the resulting dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabDimension {
    /// One row per quartic `x_k ũ²ṽ` or `x_k ṽ²ũ` at each zero `(u, v)`, over the quartic
    /// monomials in descending lexicographic order.
    pub constraints: RationalMatrix,
    pub rank: usize,
    pub dimension: usize,
    /// A basis of `L_{a,b}`.
    pub basis: Vec<Form>,
}

/// Builds the apolar conditions `∂(q)[g] = 0` for every quartic multiple `q` of `ũ²ṽ` and
/// `ṽ²ũ` at both zeros and returns `15 − rank`.
pub fn l_ab_dimension(fp: &FaceParams) -> Result<LabDimension> {
    fp.require_not_both_zero()?;
    let (z, o) = (Rational::zero, Rational::one);
    let zeros = [
        ([o(), z(), z()], [z(), o(), z()]),
        ([z(), z(), o()], fp.d()),
    ];
    let monos = Monomial::all_of_degree(3, 4);
    let weights: Vec<Rational> = monos
        .iter()
        .map(|m| {
            Rational::from_integer(m.exponents().iter().map(|&e| factorial(e)).product())
        })
        .collect();
    let mut rows = Vec::with_capacity(12);
    for (u, v) in &zeros {
        let (ut, vt) = (lin(u), lin(v));
        let cubics = [&ut.pow(2) * &vt, &vt.pow(2) * &ut];
        for cubic in &cubics {
            for k in 0..3 {
                let q = &Form::var(3, k) * cubic;
                rows.push(
                    monos
                        .iter()
                        .zip(&weights)
                        .map(|(m, w)| q.coefficient(m) * w)
                        .collect(),
                );
            }
        }
    }
    let constraints = RationalMatrix::from_rows(rows)?;
    let rank = constraints.rank();
    let basis = constraints
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut g = Form::zero(3, 4);
            for (m, c) in monos.iter().zip(v) {
                g = &g + &Form::term(m.clone(), c);
            }
            g
        })
        .collect::<Vec<_>>();
    Ok(LabDimension {
        rank,
        dimension: monos.len() - rank,
        constraints,
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biquadratic::hessian_biquadratic;
    use crate::certificates::{gram_expand, ldlt_psd_check, PsdVerdict};
    use crate::rational::rat;

    fn ones(a5: Rational) -> AlphaVector {
        AlphaVector::new([int(1), int(1), int(1), int(1), a5])
    }

    fn fp(a: i64, b: i64) -> FaceParams {
        FaceParams::new(int(a), int(b))
    }

    /// `h_p` written as a form over the bilinear products, for comparison with `sᵀMs`.
    fn gram_identity_holds(alpha: &AlphaVector, fp: &FaceParams) -> bool {
        let s = s_basis(fp).unwrap();
        let m = gram_m(alpha, fp).unwrap();
        let mut lhs = Form::zero(6, 4);
        for i in 0..5 {
            for j in 0..5 {
                lhs = &lhs + &(&s[i] * &s[j]).scale(m.get(i, j));
            }
        }
        let h = hessian_biquadratic(&face_member(alpha, fp).unwrap()).unwrap();
        lhs == h.to_form()
    }

    #[test]
    fn q5_at_unit_params() {
        let q = q_basis(&fp(1, 1)).unwrap();
        let x = |i| Form::var(3, i);
        assert_eq!(q[4], &x(2).pow(2) * &(&x(0) - &x(1)).pow(2));
        assert!(q_basis(&fp(0, 0)).is_err());
    }

    #[test]
    fn gram_identity_small_cases() {
        assert!(gram_identity_holds(&ones(int(-1)), &fp(1, 1)));
        assert!(gram_identity_holds(
            &AlphaVector::new([int(2), rat(1, 3), int(5), int(7), rat(-2, 9)]),
            &FaceParams::new(rat(3, 2), int(-2))
        ));
    }

    #[test]
    fn fourth_powers_are_twelve_squares() {
        let f = FaceParams::new(rat(2, 3), int(5));
        let (q, s) = (q_basis(&f).unwrap(), s_basis(&f).unwrap());
        for i in 0..4 {
            let h = hessian_biquadratic(&q[i]).unwrap().to_form();
            assert_eq!(h, s[i].pow(2).scale(&int(12)));
        }
    }

    #[test]
    fn diagonal_when_alpha5_vanishes() {
        let m = gram_m(&ones(int(0)), &fp(1, 2)).unwrap();
        assert_eq!(m, SymRationalMatrix::from_diagonal(&[int(12), int(12), int(12), int(12), int(0)]));
        assert!(membership_t(&ones(int(0)), &fp(1, 2)).unwrap());
    }

    #[test]
    fn bound_and_kernel_at_unit_params() {
        let f = fp(1, 1);
        let alpha = ones(int(-1));
        assert_eq!(alpha5_lower_bound(&alpha, &f).unwrap(), int(-1));
        assert_eq!(det_m_closed(&alpha, &f).unwrap(), int(0));
        let v = kernel_vector(&alpha, &f).unwrap();
        assert_eq!(v.to_vec(), vec![int(2), int(-2), int(-2), int(2), int(4)]);
        let mv = gram_m(&alpha, &f).unwrap().mul_vec(&v).unwrap();
        assert!(mv.iter().all(Zero::is_zero));
        assert_eq!(
            ldlt_psd_check(&gram_m(&alpha, &f).unwrap()).verdict,
            PsdVerdict::PositiveSemidefinite
        );
        assert!(kernel_vector(&ones(rat(-1, 2)), &f).is_err());
    }

    #[test]
    fn membership_examples() {
        let f = fp(1, 1);
        assert!(membership_t(&ones(int(-1)), &f).unwrap());
        assert!(!membership_t(&ones(int(-2)), &f).unwrap());
        let a = AlphaVector::new([int(0), int(1), int(1), int(1), rat(-1, 10)]);
        assert!(!membership_t(&a, &f).unwrap());
        assert!(membership_t(&a.with_alpha5(int(0)), &f).unwrap());
        assert!(!membership_t(&ones(int(1)), &f).unwrap());
    }

    #[test]
    fn closed_determinant_matches_elimination() {
        let alpha = AlphaVector::new([int(3), rat(1, 2), int(2), int(1), rat(-1, 7)]);
        let f = FaceParams::new(rat(-3, 4), int(2));
        assert_eq!(
            det_m_closed(&alpha, &f).unwrap(),
            gram_m(&alpha, &f).unwrap().determinant()
        );
    }

    #[test]
    fn printed_corner_entry_breaks_the_identity_unless_a_equals_b() {
        // With the (1,5) entry 2α₅·a/b instead of 2α₅·b/a the Gram identity fails.
        let check = |f: FaceParams| {
            let alpha = ones(rat(-1, 3));
            let mut m = gram_m(&alpha, &f).unwrap();
            m.set(0, 4, int(2) * &alpha[4] * (&f.a / &f.b));
            let s = s_basis(&f).unwrap();
            let z: Vec<Form> = s.to_vec();
            let mut lhs = Form::zero(6, 4);
            for i in 0..5 {
                for j in 0..5 {
                    lhs = &lhs + &(&z[i] * &z[j]).scale(m.get(i, j));
                }
            }
            lhs == hessian_biquadratic(&face_member(&alpha, &f).unwrap()).unwrap().to_form()
        };
        assert!(check(fp(1, 1)));
        assert!(!check(fp(1, 2)));
    }

    #[test]
    fn lab_dimension_is_five() {
        for (a, b) in [(1, 1), (1, 0), (0, 3), (-2, 5)] {
            let d = l_ab_dimension(&fp(a, b)).unwrap();
            assert_eq!((d.rank, d.dimension, d.basis.len()), (10, 5, 5), "a={a} b={b}");
            assert_eq!(d.constraints.rows(), 12);
        }
        assert!(l_ab_dimension(&fp(0, 0)).is_err());
    }

    #[test]
    fn q_basis_spans_lab() {
        let f = FaceParams::new(rat(2, 3), int(-1));
        let lab = l_ab_dimension(&f).unwrap();
        let q = q_basis(&f).unwrap();
        let monos = Monomial::all_of_degree(3, 4);
        for qi in &q {
            let coeffs: Vec<Rational> = monos.iter().map(|m| qi.coefficient(m)).collect();
            let c = lab.constraints.mul_vec(&coeffs).unwrap();
            assert!(c.iter().all(Zero::is_zero));
        }
        let rows: Vec<Vec<Rational>> = q
            .iter()
            .chain(&lab.basis)
            .map(|g| monos.iter().map(|m| g.coefficient(m)).collect())
            .collect();
        assert_eq!(RationalMatrix::from_rows(rows).unwrap().rank(), 5);
    }

    #[test]
    fn s_vanishes_at_both_zeros() {
        let f = FaceParams::new(rat(5, 2), rat(-1, 3));
        let (z, o) = (Rational::zero, Rational::one);
        let u1 = [o(), z(), z(), z(), o(), z()];
        let u2 = [z(), z(), o(), f.a.clone(), f.b.clone(), o()];
        for s in s_basis(&f).unwrap() {
            assert!(s.evaluate(&u1).unwrap().is_zero());
            assert!(s.evaluate(&u2).unwrap().is_zero());
        }
    }

    #[test]
    fn gram_expand_over_s_products() {
        // gram_expand needs monomials, so check the smallest case by hand: s₁ = x₁y₁.
        let z = vec![Monomial::new(vec![1, 0, 0, 1, 0, 0])];
        let m = SymRationalMatrix::from_diagonal(&[int(12)]);
        let h = hessian_biquadratic(&Form::var(3, 0).pow(4)).unwrap();
        assert_eq!(gram_expand(&z, &m).unwrap(), h.to_form());
    }
}
