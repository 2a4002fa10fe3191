use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::certificates::{gram_expand, SosCertificate};
use crate::error::{Error, Result};
use crate::form::{Form, Monomial};
use crate::linalg::{RationalMatrix, SymRationalMatrix};
use crate::rational::{to_f64, Rational};

/// The affine space of Gram matrices `X` with `wᵀ X w = target`, where `w = z` or
/// `w = Uᵀ z` for a reduction matrix `U`.
///
/// Points are `base + Σ tᵢ kernel[i]`. The coordinate `tᵢ` is the entry of `X` at
/// the `i`-th free position minus the corresponding entry of `base`.
#[derive(Clone, Debug)]
pub struct GramParameterization {
    z: Vec<Monomial>,
    reduction: Option<RationalMatrix>,
    target: Form,
    dim: usize,
    pairs: Vec<(usize, usize)>,
    base: SymRationalMatrix,
    kernel: Vec<SymRationalMatrix>,
    free: Vec<usize>,
    fiber: Fiber,
}

/// Floating-point data for the Frobenius projection onto the fiber.
#[derive(Clone, Debug)]
enum Fiber {
    /// Every parameter meets exactly one constraint: `(parameter, coefficient)` lists
    /// with their right-hand sides.
    Groups(Vec<(Vec<(usize, f64)>, f64)>),
    /// `x ← x − K (R x − r)` with `K = W⁻¹Rᵀ(RW⁻¹Rᵀ)⁻¹`.
    Dense {
        rows: Vec<Vec<f64>>,
        rhs: Vec<f64>,
        k: Vec<Vec<f64>>,
    },
}

/// Frobenius weight of a parameter: off-diagonal entries occur twice.
fn weight(r: usize, s: usize) -> u32 {
    if r == s {
        1
    } else {
        2
    }
}

/// Gram parameterization of `target` over the monomial basis `z`.
pub fn parameterize(target: &Form, z: &[Monomial]) -> Result<GramParameterization> {
    let polys: Vec<BTreeMap<Monomial, Rational>> = z
        .iter()
        .map(|m| BTreeMap::from([(m.clone(), Rational::one())]))
        .collect();
    build(target, z, None, polys)
}

/// Gram parameterization over `w = Uᵀ z`, where the columns of `u` (size `|z| × k`)
/// give the coefficients of each `w_r` in `z`.
pub fn parameterize_reduced(
    target: &Form,
    z: &[Monomial],
    u: RationalMatrix,
) -> Result<GramParameterization> {
    if u.rows() != z.len() {
        return Err(Error::DimensionMismatch {
            what: "rows of the reduction matrix",
            expected: z.len(),
            found: u.rows(),
        });
    }
    let polys = (0..u.cols())
        .map(|r| {
            z.iter()
                .enumerate()
                .filter(|(i, _)| !u[(*i, r)].is_zero())
                .map(|(i, m)| (m.clone(), u[(i, r)].clone()))
                .collect()
        })
        .collect();
    build(target, z, Some(u), polys)
}

fn build(
    target: &Form,
    z: &[Monomial],
    reduction: Option<RationalMatrix>,
    polys: Vec<BTreeMap<Monomial, Rational>>,
) -> Result<GramParameterization> {
    let n_vars = target.n_vars();
    if let Some(bad) = z.iter().find(|m| m.n_vars() != n_vars) {
        return Err(Error::DimensionMismatch {
            what: "variables of a basis monomial",
            expected: n_vars,
            found: bad.n_vars(),
        });
    }
    if let Some(m) = z.first() {
        if 2 * m.degree() != target.degree() || z.iter().any(|w| w.degree() != m.degree()) {
            return Err(Error::WrongDegree {
                expected: target.degree(),
                found: 2 * z.iter().map(Monomial::degree).max().unwrap_or(0),
            });
        }
    }
    let dim = polys.len();
    let pairs: Vec<(usize, usize)> = (0..dim).flat_map(|r| (r..dim).map(move |s| (r, s))).collect();

    // Column p of the constraint system is the expansion of (2 - δ) w_r w_s.
    let mut rows: BTreeMap<Monomial, Vec<(usize, Rational)>> = BTreeMap::new();
    for (p, &(r, s)) in pairs.iter().enumerate() {
        let mut col: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &polys[r] {
            for (mb, cb) in &polys[s] {
                let e = col.entry(ma.mul(mb)).or_insert_with(Rational::zero);
                *e += ca * cb * Rational::from_integer(weight(r, s).into());
            }
        }
        for (m, c) in col {
            if !c.is_zero() {
                rows.entry(m).or_default().push((p, c));
            }
        }
    }
    for (m, c) in target.terms() {
        if !rows.contains_key(m) && !c.is_zero() {
            return Err(Error::NotRepresentable(format!(
                "monomial {m} is not a product of basis elements"
            )));
        }
    }
    let system: Vec<(Vec<(usize, Rational)>, Rational)> = rows
        .into_iter()
        .map(|(m, cols)| {
            let rhs = target.coefficient(&m);
            (cols, rhs)
        })
        .collect();

    let w: Vec<Rational> = pairs
        .iter()
        .map(|&(r, s)| Rational::from_integer(weight(r, s).into()))
        .collect();
    let mut seen = vec![0usize; pairs.len()];
    for (cols, _) in &system {
        for (p, _) in cols {
            seen[*p] += 1;
        }
    }
    let grouped = seen.iter().all(|&c| c <= 1);

    let (x0, kernel_vecs, free, fiber) = if grouped {
        grouped_system(&system, &w, pairs.len())
    } else {
        dense_system(&system, &w, pairs.len())?
    };

    let to_sym = |x: &[Rational]| {
        let mut m = SymRationalMatrix::zeros(dim);
        for (p, &(r, s)) in pairs.iter().enumerate() {
            m.set(r, s, x[p].clone());
        }
        m
    };
    let base = to_sym(&x0);
    let kernel = kernel_vecs.iter().map(|v| to_sym(v)).collect();
    Ok(GramParameterization {
        z: z.to_vec(),
        reduction,
        target: target.clone(),
        dim,
        pairs,
        base,
        kernel,
        free,
        fiber,
    })
}

type Parts = (Vec<Rational>, Vec<Vec<Rational>>, Vec<usize>, Fiber);

fn grouped_system(
    system: &[(Vec<(usize, Rational)>, Rational)],
    w: &[Rational],
    n_params: usize,
) -> Parts {
    let mut x0 = vec![Rational::zero(); n_params];
    let mut kernel = Vec::new();
    let mut free = Vec::new();
    let mut groups = Vec::with_capacity(system.len());
    for (cols, rhs) in system {
        // Weighted minimum norm: x_p = λ a_p / ω_p.
        let denom = cols
            .iter()
            .fold(Rational::zero(), |acc, (p, a)| acc + a * a / &w[*p]);
        let lambda = rhs / &denom;
        for (p, a) in cols {
            x0[*p] = &lambda * a / &w[*p];
        }
        let (p0, a0) = &cols[0];
        for (p, a) in &cols[1..] {
            let mut v = vec![Rational::zero(); n_params];
            v[*p] = Rational::one();
            v[*p0] = -a / a0;
            kernel.push(v);
            free.push(*p);
        }
        groups.push((
            cols.iter().map(|(p, a)| (*p, to_f64(a))).collect(),
            to_f64(rhs),
        ));
    }
    // Parameters that appear in no constraint are unconstrained.
    let mut used = vec![false; n_params];
    for (cols, _) in system {
        for (p, _) in cols {
            used[*p] = true;
        }
    }
    for p in (0..n_params).filter(|&p| !used[p]) {
        let mut v = vec![Rational::zero(); n_params];
        v[p] = Rational::one();
        kernel.push(v);
        free.push(p);
    }
    (x0, kernel, free, Fiber::Groups(groups))
}

fn dense_system(
    system: &[(Vec<(usize, Rational)>, Rational)],
    w: &[Rational],
    n_params: usize,
) -> Result<Parts> {
    let mut aug = RationalMatrix::zeros(system.len(), n_params + 1);
    for (i, (cols, rhs)) in system.iter().enumerate() {
        for (p, a) in cols {
            aug[(i, *p)] = a.clone();
        }
        aug[(i, n_params)] = rhs.clone();
    }
    let (r, pivots) = aug.rref();
    if pivots.last() == Some(&n_params) {
        return Err(Error::NotRepresentable(
            "target is not in the span of the Gram products".into(),
        ));
    }
    let rank = pivots.len();
    let mut rmat = RationalMatrix::zeros(rank, n_params);
    let mut rb = Vec::with_capacity(rank);
    for i in 0..rank {
        for j in 0..n_params {
            rmat[(i, j)] = r[(i, j)].clone();
        }
        rb.push(r[(i, n_params)].clone());
    }
    // K = W⁻¹Rᵀ(RW⁻¹Rᵀ)⁻¹.
    let mut wrt = rmat.transpose();
    for p in 0..n_params {
        for i in 0..rank {
            let v = &wrt[(p, i)] / &w[p];
            wrt[(p, i)] = v;
        }
    }
    let k = if rank == 0 {
        RationalMatrix::zeros(n_params, 0)
    } else {
        wrt.mul(&rmat.mul(&wrt)?.inverse()?)?
    };
    let x0 = k.mul_vec(&rb)?;

    let mut is_pivot = vec![false; n_params];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n_params).filter(|&f| !is_pivot[f]).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n_params];
            v[f] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, f)].clone();
            }
            v
        })
        .collect();
    let fl = |m: &RationalMatrix| {
        (0..m.rows())
            .map(|i| m.row(i).iter().map(to_f64).collect())
            .collect()
    };
    let fiber = Fiber::Dense {
        rows: fl(&rmat),
        rhs: rb.iter().map(to_f64).collect(),
        k: fl(&k),
    };
    Ok((x0, kernel, free, fiber))
}

impl GramParameterization {
    pub fn z(&self) -> &[Monomial] {
        &self.z
    }

    /// `None` when the Gram matrix is indexed by `z` itself.
    pub fn reduction(&self) -> Option<&RationalMatrix> {
        self.reduction.as_ref()
    }

    pub fn target(&self) -> &Form {
        &self.target
    }

    /// Size of the (possibly reduced) Gram matrix.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn base(&self) -> &SymRationalMatrix {
        &self.base
    }

    pub fn kernel(&self) -> &[SymRationalMatrix] {
        &self.kernel
    }

    /// `base + Σ tᵢ kernel[i]`.
    pub fn point(&self, t: &[Rational]) -> Result<SymRationalMatrix> {
        if t.len() != self.kernel.len() {
            return Err(Error::DimensionMismatch {
                what: "number of fiber coordinates",
                expected: self.kernel.len(),
                found: t.len(),
            });
        }
        let mut g = self.base.clone();
        for (ti, b) in t.iter().zip(&self.kernel) {
            if !ti.is_zero() {
                g = g.add(&b.scale(ti))?;
            }
        }
        Ok(g)
    }

    /// Fiber coordinates of a numeric matrix near the fiber.
    pub fn coordinates(&self, g: &[Vec<f64>]) -> Vec<f64> {
        self.free
            .iter()
            .map(|&p| {
                let (r, s) = self.pairs[p];
                g[r][s] - to_f64(self.base.get(r, s))
            })
            .collect()
    }

    /// The Gram matrix over `z`: `U X Uᵀ`, or `X` when there is no reduction.
    pub fn full_gram(&self, x: &SymRationalMatrix) -> Result<SymRationalMatrix> {
        match &self.reduction {
            Some(u) => x.congruence(u),
            None => Ok(x.clone()),
        }
    }

    /// Certificate over `z` for a point `x` of the fiber.
    pub fn certificate(&self, x: &SymRationalMatrix) -> Result<SosCertificate> {
        SosCertificate::new(self.z.clone(), self.full_gram(x)?)
    }

    /// Expansion `zᵀ (U X Uᵀ) z`.
    pub fn expand(&self, x: &SymRationalMatrix) -> Result<Form> {
        let f = gram_expand(&self.z, &self.full_gram(x)?)?;
        if f.is_zero() {
            return Ok(Form::zero(self.target.n_vars(), self.target.degree()));
        }
        Ok(f)
    }

    pub(crate) fn base_f64(&self) -> Vec<Vec<f64>> {
        self.base.to_f64_rows()
    }

    /// Orthogonal projection onto the fiber in the Frobenius norm, in place.
    pub(crate) fn project(&self, g: &mut [Vec<f64>]) {
        let mut x: Vec<f64> = self.pairs.iter().map(|&(r, s)| 0.5 * (g[r][s] + g[s][r])).collect();
        match &self.fiber {
            Fiber::Groups(groups) => {
                for (cols, rhs) in groups {
                    let mut num = *rhs;
                    let mut den = 0.0;
                    for &(p, a) in cols {
                        num -= a * x[p];
                        den += a * a / f64::from(weight(self.pairs[p].0, self.pairs[p].1));
                    }
                    let lambda = num / den;
                    for &(p, a) in cols {
                        x[p] += lambda * a / f64::from(weight(self.pairs[p].0, self.pairs[p].1));
                    }
                }
            }
            Fiber::Dense { rows, rhs, k } => {
                let resid: Vec<f64> = rows
                    .iter()
                    .zip(rhs)
                    .map(|(row, b)| row.iter().zip(&x).map(|(a, v)| a * v).sum::<f64>() - b)
                    .collect();
                for (p, kp) in k.iter().enumerate() {
                    x[p] -= kp.iter().zip(&resid).map(|(a, r)| a * r).sum::<f64>();
                }
            }
        }
        for (p, &(r, s)) in self.pairs.iter().enumerate() {
            g[r][s] = x[p];
            g[s][r] = x[p];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biquadratic::{hessian_biquadratic, BiIndex};
    use crate::corpus;
    use crate::rational::{int, rat};

    pub(crate) fn bilinears(n: usize) -> Vec<Monomial> {
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| {
                let mut e = vec![0; 2 * n];
                e[i] += 1;
                e[n + j] += 1;
                Monomial::new(e)
            })
            .collect()
    }

    #[test]
    fn single_square() {
        let t = Form::term(BiIndex::new(0, 0, 0, 0).monomial(3), int(12));
        let z = vec![Monomial::new(vec![1, 0, 0, 1, 0, 0])];
        let pz = parameterize(&t, &z).unwrap();
        assert_eq!(pz.base(), &SymRationalMatrix::from_diagonal(&[int(12)]));
        assert!(pz.kernel().is_empty());
    }

    #[test]
    fn ternary_bilinear_kernel_has_dimension_nine() {
        let pz = parameterize(&corpus::b_thm22().to_form(), &bilinears(3)).unwrap();
        assert_eq!(pz.kernel().len(), 9);
        assert_eq!(pz.expand(pz.base()).unwrap(), corpus::b_thm22().to_form());
        for b in pz.kernel() {
            assert!(pz.expand(b).unwrap().is_zero());
        }
    }

    #[test]
    fn stray_monomial_is_reported() {
        let mut t = corpus::b_thm22().to_form();
        t = &t + &Form::term(Monomial::new(vec![2, 0, 0, 0, 2, 0]), int(1));
        let z: Vec<Monomial> = bilinears(3).into_iter().filter(|m| m.exponents()[4] == 0).collect();
        assert!(matches!(parameterize(&t, &z), Err(Error::NotRepresentable(_))));
        let cubic = Form::term(Monomial::new(vec![3, 0, 0, 1, 0, 0]), int(1));
        let t2 = &corpus::b_thm22().to_form() + &cubic;
        assert!(parameterize(&t2, &bilinears(3)).is_err());
    }

    #[test]
    fn reduced_parameterization_expands_to_target() {
        let h = hessian_biquadratic(&Form::var(2, 0).pow(4)).unwrap().to_form();
        let z = bilinears(2);
        let mut u = RationalMatrix::zeros(4, 2);
        u[(0, 0)] = int(1);
        u[(1, 1)] = int(1);
        u[(2, 1)] = int(1);
        let pz = parameterize_reduced(&h, &z, u).unwrap();
        assert_eq!(pz.dim(), 2);
        assert_eq!(pz.expand(pz.base()).unwrap(), h);
        let g = pz.point(&vec![rat(1, 3); pz.kernel().len()]).unwrap();
        assert_eq!(pz.expand(&g).unwrap(), h);
    }

    #[test]
    fn projection_lands_on_fiber() {
        let pz = parameterize(&corpus::b_thm22().to_form(), &bilinears(3)).unwrap();
        let mut g = vec![vec![0.25; 9]; 9];
        pz.project(&mut g);
        let t = pz.coordinates(&g);
        let approx: Vec<Rational> = t.iter().map(|v| Rational::from_float(*v).unwrap()).collect();
        let exact = pz.point(&approx).unwrap().to_f64_rows();
        for i in 0..9 {
            for j in 0..9 {
                assert!((exact[i][j] - g[i][j]).abs() < 1e-9);
            }
        }
    }
}
