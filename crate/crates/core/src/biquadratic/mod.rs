//! Biquadratic forms `b(x, y) = Σ α_ijkl x_i x_j y_k y_l`, quadratic in each block.

pub mod dims;
mod ordering;
mod text;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::form::{xy_names, Form, Monomial, PolyMatrix};
use crate::rational::{to_f64, Rational};

pub use dims::{dim_hessian, dim_nary, dim_symmetric};
pub use ordering::MonomialOrdering;

/// Index of the monomial `x_i x_j y_k y_l` with `i ≤ j`, `k ≤ l` (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BiIndex {
    pub x: (usize, usize),
    pub y: (usize, usize),
}

impl BiIndex {
    /// Normalizes the order inside each pair.
    pub fn new(i: usize, j: usize, k: usize, l: usize) -> Self {
        Self {
            x: (i.min(j), i.max(j)),
            y: (k.min(l), k.max(l)),
        }
    }

    pub fn swapped(self) -> Self {
        Self { x: self.y, y: self.x }
    }

    /// The monomial as an exponent vector over `(x, y)` in `2n` variables.
    pub fn monomial(self, n: usize) -> Monomial {
        let mut e = vec![0u32; 2 * n];
        e[self.x.0] += 1;
        e[self.x.1] += 1;
        e[n + self.y.0] += 1;
        e[n + self.y.1] += 1;
        Monomial::new(e)
    }

    fn max_index(self) -> usize {
        self.x.1.max(self.y.1)
    }
}

impl fmt::Display for BiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |name: char, (a, b): (usize, usize)| {
            if a == b {
                format!("{name}{}^2", a + 1)
            } else {
                format!("{name}{}*{name}{}", a + 1, b + 1)
            }
        };
        write!(f, "{}*{}", part('x', self.x), part('y', self.y))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiquadraticForm {
    n: usize,
    coeffs: BTreeMap<BiIndex, Rational>,
}

impl BiquadraticForm {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_coefficients(
        n: usize,
        coeffs: impl IntoIterator<Item = (BiIndex, Rational)>,
    ) -> Result<Self> {
        let mut b = Self::zero(n);
        for (idx, c) in coeffs {
            b.add(idx, c)?;
        }
        Ok(b)
    }

    /// Block size: `x` and `y` each have `n` variables.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (&BiIndex, &Rational)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, idx: BiIndex) -> Rational {
        self.coeffs.get(&idx).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c` to the coefficient of `idx`.
    pub fn add(&mut self, idx: BiIndex, c: Rational) -> Result<()> {
        if idx.max_index() >= self.n {
            return Err(Error::IndexOutOfRange {
                index: idx.max_index(),
                n_vars: self.n,
            });
        }
        let idx = BiIndex::new(idx.x.0, idx.x.1, idx.y.0, idx.y.1);
        let e = self.coeffs.entry(idx).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&idx);
        }
        Ok(())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, c * s)).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                what: "biquadratic block size",
                expected: self.n,
                found: other.n,
            });
        }
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add(*k, c.clone())?;
        }
        Ok(out)
    }

    /// Reads a quartic in `2n` variables `(x, y)`; fails unless every monomial has
    /// degree 2 in each block.
    pub fn from_form(f: &Form, n: usize) -> Result<Self> {
        if f.n_vars() != 2 * n {
            return Err(Error::DimensionMismatch {
                what: "variables of a biquadratic form (2n)",
                expected: 2 * n,
                found: f.n_vars(),
            });
        }
        if !f.is_zero() && f.degree() != 4 {
            return Err(Error::WrongDegree {
                expected: 4,
                found: f.degree(),
            });
        }
        let mut out = Self::zero(n);
        for (m, c) in f.terms() {
            let e = m.exponents();
            let xs = indices(&e[..n]);
            let ys = indices(&e[n..]);
            if xs.len() != 2 || ys.len() != 2 {
                return Err(Error::NotRepresentable(format!(
                    "monomial {} is not quadratic in each block",
                    m.display_with(&xy_names(n))
                )));
            }
            out.add(BiIndex::new(xs[0], xs[1], ys[0], ys[1]), c.clone())?;
        }
        Ok(out)
    }

    /// The same polynomial as a [`Form`] in `2n` variables `x1..xn, y1..yn`.
    pub fn to_form(&self) -> Form {
        let mut f = Form::zero(2 * self.n, 4);
        for (k, c) in &self.coeffs {
            f = &f + &Form::term(k.monomial(self.n), c.clone());
        }
        f
    }

    /// `yᵀ A(x) y` for a symmetric matrix `A` of quadratic forms.
    pub fn from_matrix(a: &PolyMatrix) -> Result<Self> {
        let n = a.dim();
        if a.n_vars() != n {
            return Err(Error::DimensionMismatch {
                what: "matrix variables versus dimension",
                expected: n,
                found: a.n_vars(),
            });
        }
        let mut out = Self::zero(n);
        for k in 0..n {
            for l in 0..n {
                let entry = a.get(k, l);
                if entry.is_zero() {
                    continue;
                }
                if entry.degree() != 2 {
                    return Err(Error::WrongDegree {
                        expected: 2,
                        found: entry.degree(),
                    });
                }
                for (m, c) in entry.terms() {
                    let xs = indices(m.exponents());
                    out.add(BiIndex::new(xs[0], xs[1], k, l), c.clone())?;
                }
            }
        }
        Ok(out)
    }

    /// `b(y, x)`.
    pub fn swap_xy(&self) -> Self {
        Self {
            n: self.n,
            coeffs: self.coeffs.iter().map(|(k, c)| (k.swapped(), c.clone())).collect(),
        }
    }

    /// Checks `b(x, y) = b(y, x)`. On failure the witness is the first monomial, in
    /// index order, whose coefficient differs from that of its swapped partner.
    pub fn is_symmetric(&self) -> SymmetryVerdict {
        let mut keys: Vec<BiIndex> = self
            .coeffs
            .keys()
            .flat_map(|k| [*k, k.swapped()])
            .collect();
        keys.sort();
        keys.dedup();
        for k in keys {
            let a = self.coefficient(k);
            let b = self.coefficient(k.swapped());
            if a != b {
                return SymmetryVerdict::Asymmetric {
                    monomial: k,
                    coefficient: a,
                    swapped: k.swapped(),
                    swapped_coefficient: b,
                };
            }
        }
        SymmetryVerdict::Symmetric
    }

    pub fn evaluate(&self, x: &[Rational], y: &[Rational]) -> Result<Rational> {
        self.check_len(x.len())?;
        self.check_len(y.len())?;
        let mut s = Rational::zero();
        for (k, c) in &self.coeffs {
            s += c * &x[k.x.0] * &x[k.x.1] * &y[k.y.0] * &y[k.y.1];
        }
        Ok(s)
    }

    pub fn evaluate_f64(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        self.check_len(x.len())?;
        self.check_len(y.len())?;
        Ok(self
            .coeffs
            .iter()
            .map(|(k, c)| to_f64(c) * x[k.x.0] * x[k.x.1] * y[k.y.0] * y[k.y.1])
            .sum())
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.n {
            return Err(Error::DimensionMismatch {
                what: "point length",
                expected: self.n,
                found: len,
            });
        }
        Ok(())
    }

    /// Coefficients listed in the order of `ord`.
    pub fn coefficient_vector(&self, ord: &MonomialOrdering) -> Result<Vec<Rational>> {
        if ord.n() != self.n {
            return Err(Error::DimensionMismatch {
                what: "ordering block size",
                expected: self.n,
                found: ord.n(),
            });
        }
        Ok(ord.entries().iter().map(|k| self.coefficient(*k)).collect())
    }

    /// Inverse of [`coefficient_vector`](Self::coefficient_vector).
    pub fn from_coefficient_vector(ord: &MonomialOrdering, v: &[Rational]) -> Result<Self> {
        if v.len() != ord.len() {
            return Err(Error::DimensionMismatch {
                what: "coefficient vector length",
                expected: ord.len(),
                found: v.len(),
            });
        }
        Self::from_coefficients(ord.n(), ord.entries().iter().copied().zip(v.iter().cloned()))
    }

    pub fn display(&self) -> String {
        self.to_form().display_with(&xy_names(self.n))
    }
}

impl fmt::Display for BiquadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymmetryVerdict {
    Symmetric,
    Asymmetric {
        monomial: BiIndex,
        coefficient: Rational,
        swapped: BiIndex,
        swapped_coefficient: Rational,
    },
}

impl SymmetryVerdict {
    pub fn is_symmetric(&self) -> bool {
        matches!(self, SymmetryVerdict::Symmetric)
    }
}

/// Positions of the exponent vector, repeated by multiplicity.
fn indices(e: &[u32]) -> Vec<usize> {
    e.iter()
        .enumerate()
        .flat_map(|(i, &k)| std::iter::repeat(i).take(k as usize))
        .collect()
}

/// `yᵀ H_p(x) y` for a quartic `p`.
pub fn hessian_biquadratic(p: &Form) -> Result<BiquadraticForm> {
    if p.degree() != 4 {
        return Err(Error::WrongDegree {
            expected: 4,
            found: p.degree(),
        });
    }
    BiquadraticForm::from_matrix(&p.hessian()?)
}

/// `yᵀ H_p(x) y` for a form of any degree `d ≥ 2`, as a form of degree `d` in
/// `2n` variables `(x, y)`.
pub fn hessian_form(p: &Form) -> Result<Form> {
    let h = p.hessian()?;
    let n = p.n_vars();
    let mut out = Form::zero(2 * n, p.degree());
    for i in 0..n {
        for j in 0..n {
            let entry = h.get(i, j);
            if entry.is_zero() {
                continue;
            }
            let mut yy = vec![0u32; 2 * n];
            yy[n + i] += 1;
            yy[n + j] += 1;
            let lifted = entry.embed(2 * n)?;
            out = &out + &(&lifted * &Form::term(Monomial::new(yy), Rational::from_integer(1.into())));
        }
    }
    Ok(out)
}
