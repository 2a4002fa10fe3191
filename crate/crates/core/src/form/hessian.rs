use num_traits::Zero;

use super::{x_names, Form};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Symmetric square matrix of forms sharing one variable count and one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    dim: usize,
    n_vars: usize,
    degree: u32,
    entries: Vec<Form>,
}

impl PolyMatrix {
    /// Builds a matrix from rows; rejects asymmetric input and mixed degrees.
    pub fn from_rows(rows: Vec<Vec<Form>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::DimensionMismatch {
                what: "polynomial matrix dimension",
                expected: 1,
                found: 0,
            });
        }
        let n_vars = rows[0][0].n_vars();
        let degree = rows
            .iter()
            .flatten()
            .find(|f| !f.is_zero())
            .map_or(rows[0][0].degree(), Form::degree);
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    what: "polynomial matrix row length",
                    expected: dim,
                    found: row.len(),
                });
            }
            for f in row {
                if f.n_vars() != n_vars {
                    return Err(Error::DimensionMismatch {
                        what: "entry variable count",
                        expected: n_vars,
                        found: f.n_vars(),
                    });
                }
                entries.push(f.with_degree(degree)?);
            }
        }
        let m = Self {
            dim,
            n_vars,
            degree,
            entries,
        };
        for i in 0..dim {
            for j in i + 1..dim {
                if m.get(i, j) != m.get(j, i) {
                    return Err(Error::NonSymmetric { row: i, col: j });
                }
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn get(&self, i: usize, j: usize) -> &Form {
        &self.entries[i * self.dim + j]
    }

    /// Checks that the third partials commute: `∂A_ij/∂x_k = ∂A_ik/∂x_j` for all
    /// `i, j, k`, which characterizes matrices of second derivatives.
    ///
    /// Violations whose one side vanishes identically are listed first, then in
    /// lexicographic `(i, j, k)` order with `j < k`.
    pub fn is_valid_hessian(&self) -> Result<HessianVerdict> {
        if self.dim != self.n_vars {
            return Err(Error::DimensionMismatch {
                what: "Hessian candidate must be n_vars × n_vars",
                expected: self.n_vars,
                found: self.dim,
            });
        }
        let n = self.dim;
        let mut violations = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in j + 1..n {
                    let left = self.get(i, j).differentiate(k)?;
                    let right = self.get(i, k).differentiate(j)?;
                    if left != right {
                        violations.push(HessianViolation {
                            i,
                            j,
                            k,
                            left,
                            right,
                        });
                    }
                }
            }
        }
        violations.sort_by_key(|v| !(v.left.is_zero() || v.right.is_zero()));
        Ok(if violations.is_empty() {
            HessianVerdict::Valid
        } else {
            HessianVerdict::Invalid(violations)
        })
    }

    /// `vᵀ A w` as a form, for constant vectors `v`, `w`.
    pub fn sandwich(&self, v: &[Rational], w: &[Rational]) -> Form {
        let mut out = Form::zero(self.n_vars, self.degree);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let c = &v[i] * &w[j];
                if !c.is_zero() {
                    out = &out + &self.get(i, j).scale(&c);
                }
            }
        }
        out
    }

    /// Evaluates every entry at `point`.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Vec<Vec<Rational>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j).evaluate(point)).collect())
            .collect()
    }
}

/// One failure of third-partial commutation: `∂A_ij/∂x_k` (left) differs from
/// `∂A_ik/∂x_j` (right). Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HessianViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub left: Form,
    pub right: Form,
}

impl std::fmt::Display for HessianViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names = x_names(self.left.n_vars());
        write!(
            f,
            "dA[{},{}]/dx{} = {} but dA[{},{}]/dx{} = {}",
            self.i + 1,
            self.j + 1,
            self.k + 1,
            self.left.display_with(&names),
            self.i + 1,
            self.k + 1,
            self.j + 1,
            self.right.display_with(&names)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HessianVerdict {
    Valid,
    /// All violating triples; the first is the reported witness.
    Invalid(Vec<HessianViolation>),
}

impl HessianVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, HessianVerdict::Valid)
    }

    pub fn witness(&self) -> Option<&HessianViolation> {
        match self {
            HessianVerdict::Valid => None,
            HessianVerdict::Invalid(v) => v.first(),
        }
    }
}

impl Form {
    /// Matrix of second partial derivatives.
    pub fn hessian(&self) -> Result<PolyMatrix> {
        if self.degree < 2 {
            return Err(Error::DegreeTooLow {
                found: self.degree,
                required: 2,
            });
        }
        let n = self.n_vars;
        let grad: Vec<Form> = (0..n).map(|i| self.differentiate(i)).collect::<Result<_>>()?;
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                row.push(grad[i].differentiate(j)?);
            }
            rows.push(row);
        }
        PolyMatrix::from_rows(rows)
    }

    /// Recovers a degree-`d` form from its Hessian: `p = xᵀ H x / (d (d − 1))`.
    pub fn euler_recover(h: &PolyMatrix, d: u32) -> Result<Form> {
        if d < 2 {
            return Err(Error::DegreeTooLow {
                found: d,
                required: 2,
            });
        }
        let n = h.n_vars();
        let mut out = Form::zero(n, d);
        for i in 0..h.dim() {
            for j in 0..h.dim() {
                let entry = h.get(i, j);
                if entry.is_zero() {
                    continue;
                }
                if entry.degree() + 2 != d {
                    return Err(Error::WrongDegree {
                        expected: d - 2,
                        found: entry.degree(),
                    });
                }
                let xixj = &Form::var(n, i) * &Form::var(n, j);
                out = &out + &(&xixj * entry);
            }
        }
        let scale = Rational::new(1.into(), (d * (d - 1)).into());
        Ok(out.scale(&scale))
    }
}
