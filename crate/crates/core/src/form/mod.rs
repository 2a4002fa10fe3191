//! Homogeneous polynomials (forms) with exact rational coefficients.
//!
//! A [`Form`] is a sparse map from exponent vectors to nonzero rationals. Every stored
//! monomial has the same total degree; the zero form still carries a degree tag so that
//! homogeneity checks stay decidable.

mod expr;
mod hessian;
mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::rational::Rational;

pub use expr::parse_expression;
pub use hessian::{HessianVerdict, HessianViolation, PolyMatrix};

/// Exponent vector of a monomial; its length is the ambient variable count.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn one(n_vars: usize) -> Self {
        Self(vec![0; n_vars])
    }

    /// `x_i` in `n_vars` variables.
    pub fn var(n_vars: usize, i: usize) -> Self {
        let mut e = vec![0; n_vars];
        e[i] = 1;
        Self(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn n_vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Concatenates two exponent vectors, e.g. an x-part and a y-part.
    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut e = self.0.clone();
        e.extend_from_slice(&other.0);
        Monomial(e)
    }

    /// Pads with zero exponents up to `n_vars` variables.
    pub fn embed(&self, n_vars: usize) -> Monomial {
        let mut e = self.0.clone();
        e.resize(n_vars, 0);
        Monomial(e)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        self.0
            .iter()
            .zip(point)
            .filter(|(e, _)| **e > 0)
            .fold(Rational::one(), |acc, (&e, v)| acc * num_traits::pow(v.clone(), e as usize))
    }

    pub fn evaluate_f64(&self, point: &[f64]) -> f64 {
        self.0
            .iter()
            .zip(point)
            .fold(1.0, |acc, (&e, v)| acc * v.powi(e as i32))
    }

    /// All monomials of total degree `degree` in `n_vars` variables, in descending
    /// lexicographic order (x₁^d first).
    pub fn all_of_degree(n_vars: usize, degree: u32) -> Vec<Monomial> {
        fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if prefix.len() + 1 == n {
                prefix.push(d);
                out.push(Monomial(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=d).rev() {
                prefix.push(e);
                rec(n, d - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n_vars == 0 {
            if degree == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        rec(n_vars, degree, &mut Vec::with_capacity(n_vars), &mut out);
        out
    }

    /// Text such as `x1^2*x3`; `names` supplies one name per variable.
    pub fn display_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    names[i].clone()
                } else {
                    format!("{}^{e}", names[i])
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&x_names(self.n_vars())))
    }
}

/// Default variable names `x1..xn`.
pub fn x_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// Names `x1..xn, y1..yn` for forms on a pair of variable blocks.
pub fn xy_names(n: usize) -> Vec<String> {
    (1..=n)
        .map(|i| format!("x{i}"))
        .chain((1..=n).map(|i| format!("y{i}")))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Form {
    n_vars: usize,
    degree: u32,
    terms: BTreeMap<Monomial, Rational>,
}

impl Form {
    pub fn zero(n_vars: usize, degree: u32) -> Self {
        Self {
            n_vars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, c: Rational) -> Self {
        Self::term(Monomial::one(n_vars), c)
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut f = Self::zero(m.n_vars(), m.degree());
        if !c.is_zero() {
            f.terms.insert(m, c);
        }
        f
    }

    /// The linear form `x_i`.
    pub fn var(n_vars: usize, i: usize) -> Self {
        Self::term(Monomial::var(n_vars, i), Rational::one())
    }

    /// `Σ coeffs[i] x_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut f = Self::zero(n, 1);
        for (i, c) in coeffs.iter().enumerate() {
            f.add_term(Monomial::var(n, i), c.clone());
        }
        f
    }

    /// Builds a form from terms, summing repeated monomials.
    pub fn from_terms(
        n_vars: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self> {
        let mut f = Self::zero(n_vars, degree);
        for (m, c) in terms {
            if m.n_vars() != n_vars {
                return Err(Error::DimensionMismatch {
                    what: "exponent vector length",
                    expected: n_vars,
                    found: m.n_vars(),
                });
            }
            if m.degree() != degree {
                return Err(Error::WrongDegree {
                    expected: degree,
                    found: m.degree(),
                });
            }
            f.add_term(m, c);
        }
        Ok(f)
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c·m` in place. `m` must have this form's degree and variable count.
    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.n_vars(), self.n_vars);
        debug_assert_eq!(m.degree(), self.degree);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// The same polynomial tagged with another degree; only allowed for the zero form or
    /// when the degree already matches.
    pub fn with_degree(mut self, degree: u32) -> Result<Self> {
        if !self.is_zero() && self.degree != degree {
            return Err(Error::WrongDegree {
                expected: degree,
                found: self.degree,
            });
        }
        self.degree = degree;
        Ok(self)
    }

    /// Exact sum; the zero form adapts to the other operand's degree.
    pub fn checked_add(&self, other: &Form) -> Result<Form> {
        if self.n_vars != other.n_vars {
            return Err(Error::DimensionMismatch {
                what: "number of variables",
                expected: self.n_vars,
                found: other.n_vars,
            });
        }
        let degree = match (self.is_zero(), other.is_zero()) {
            (true, false) => other.degree,
            (false, true) | (true, true) => self.degree,
            (false, false) if self.degree == other.degree => self.degree,
            _ => {
                return Err(Error::WrongDegree {
                    expected: self.degree,
                    found: other.degree,
                })
            }
        };
        let mut out = self.clone();
        out.degree = degree;
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Rational) -> Form {
        if s.is_zero() {
            return Form::zero(self.n_vars, self.degree);
        }
        Form {
            n_vars: self.n_vars,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn checked_mul(&self, other: &Form) -> Result<Form> {
        if self.n_vars != other.n_vars {
            return Err(Error::DimensionMismatch {
                what: "number of variables",
                expected: self.n_vars,
                found: other.n_vars,
            });
        }
        let mut out = Form::zero(self.n_vars, self.degree + other.degree);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Form {
        let mut out = Form::constant(self.n_vars, Rational::one());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// The same polynomial viewed in `n_vars ≥ self.n_vars()` variables (new variables
    /// appended with exponent zero).
    pub fn embed(&self, n_vars: usize) -> Result<Form> {
        if n_vars < self.n_vars {
            return Err(Error::DimensionMismatch {
                what: "embedding target variable count",
                expected: self.n_vars,
                found: n_vars,
            });
        }
        Ok(Form {
            n_vars,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.embed(n_vars), c.clone()))
                .collect(),
        })
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        self.check_point(point.len())?;
        Ok(self
            .terms
            .iter()
            .fold(Rational::zero(), |acc, (m, c)| acc + c * m.evaluate(point)))
    }

    pub fn evaluate_f64(&self, point: &[f64]) -> Result<f64> {
        self.check_point(point.len())?;
        Ok(self
            .terms
            .iter()
            .map(|(m, c)| crate::rational::to_f64(c) * m.evaluate_f64(point))
            .sum())
    }

    fn check_point(&self, len: usize) -> Result<()> {
        if len != self.n_vars {
            return Err(Error::DimensionMismatch {
                what: "point dimension",
                expected: self.n_vars,
                found: len,
            });
        }
        Ok(())
    }

    /// `∂f/∂x_i` (0-based `i`); the zero form of degree 0 stays degree 0.
    pub fn differentiate(&self, i: usize) -> Result<Form> {
        if i >= self.n_vars {
            return Err(Error::IndexOutOfRange {
                index: i,
                n_vars: self.n_vars,
            });
        }
        let mut out = Form::zero(self.n_vars, self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut d = m.0.clone();
            d[i] -= 1;
            out.add_term(Monomial(d), c * Rational::from_integer(e.into()));
        }
        Ok(out)
    }

    /// `f(T·x)` for an `n_vars × m` matrix `T`; the result lives in `m` variables.
    ///
    /// With a square `T` this is the linear change of coordinates `x ↦ T x`.
    pub fn substitute(&self, t: &RationalMatrix) -> Result<Form> {
        if t.rows() != self.n_vars {
            return Err(Error::DimensionMismatch {
                what: "substitution matrix rows",
                expected: self.n_vars,
                found: t.rows(),
            });
        }
        let m = t.cols();
        // x_i ↦ Σ_j T_ij y_j, with cached powers.
        let images: Vec<Form> = (0..self.n_vars).map(|i| Form::linear(t.row(i))).collect();
        let mut powers: Vec<Vec<Form>> = images
            .iter()
            .map(|l| vec![Form::constant(m, Rational::one()), l.clone()])
            .collect();
        let mut out = Form::zero(m, self.degree);
        for (mono, c) in &self.terms {
            let mut prod = Form::constant(m, c.clone());
            for (i, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                prod = &prod * &powers[i][e as usize];
            }
            for (pm, pc) in prod.terms {
                out.add_term(pm, pc);
            }
        }
        Ok(out)
    }

    /// `f(T·x)` for square `T`.
    pub fn linear_change(&self, t: &RationalMatrix) -> Result<Form> {
        if !t.is_square() || t.rows() != self.n_vars {
            return Err(Error::DimensionMismatch {
                what: "change-of-variables matrix size",
                expected: self.n_vars,
                found: if t.rows() != self.n_vars { t.rows() } else { t.cols() },
            });
        }
        self.substitute(t)
    }

    /// Restricts the form to the hyperplane `{v : vᵀc = 0}`.
    ///
    /// The hyperplane basis drops the coordinate `k` of largest `|c_k|` (first one on
    /// ties) and uses `e_j − (c_j/c_k)·e_k` for the remaining `j` in increasing order, so
    /// the result is a form in `n − 1` variables.
    pub fn restrict_to_complement(&self, c: &[Rational]) -> Result<Form> {
        let basis = complement_basis(c)?;
        if basis.rows() != self.n_vars {
            return Err(Error::DimensionMismatch {
                what: "normal vector length",
                expected: self.n_vars,
                found: basis.rows(),
            });
        }
        self.substitute(&basis)
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.display_with(names);
            if mono == "1" {
                s.push_str(&abs.to_string());
            } else if abs.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{abs}*{mono}"));
            }
        }
        s
    }
}

/// The `n × (n−1)` basis matrix of `{v : vᵀc = 0}` used by
/// [`Form::restrict_to_complement`]: columns `e_j − (c_j/c_k) e_k`, `k` the coordinate of
/// largest magnitude.
pub fn complement_basis(c: &[Rational]) -> Result<RationalMatrix> {
    if c.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    let abs: Vec<Rational> = c.iter().map(num_traits::Signed::abs).collect();
    let mut k = 0;
    for i in 1..c.len() {
        if abs[i] > abs[k] {
            k = i;
        }
    }
    let n = c.len();
    let mut b = RationalMatrix::zeros(n, n - 1);
    for (col, j) in (0..n).filter(|&j| j != k).enumerate() {
        b[(j, col)] = Rational::one();
        b[(k, col)] = -(&c[j] / &c[k]);
    }
    Ok(b)
}

impl Add for &Form {
    type Output = Form;

    /// # Panics
    /// On mismatched variable counts or degrees (see [`Form::checked_add`]).
    fn add(self, rhs: &Form) -> Form {
        self.checked_add(rhs).expect("adding incompatible forms")
    }
}

impl Sub for &Form {
    type Output = Form;

    fn sub(self, rhs: &Form) -> Form {
        self.checked_add(&-rhs).expect("subtracting incompatible forms")
    }
}

impl Neg for &Form {
    type Output = Form;

    fn neg(self) -> Form {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Form {
    type Output = Form;

    fn mul(self, rhs: &Form) -> Form {
        self.checked_mul(rhs).expect("multiplying forms in different variable counts")
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&x_names(self.n_vars)))
    }
}
