//! A zero of `h_p` with `x₁x₂y₁y₂ ≠ 0` for `p` on the boundary of `T_{a,b}`.
//!
//! At the bound, `M v = 0` for the kernel vector `v`, so any `(x, y)` with `s(x, y) = v`
//! gives `h_p(x, y) = vᵀMv = 0`. Solving `sᵢ = vᵢ`:
//!
//! * `y₁ = v₁/x₁`, `y₂ = v₂/x₂`;
//! * `x₃ = v₅x₁x₂ / D₁` with `D₁ = bv₁x₂ − av₂x₁`, from `s₅ = v₅`;
//! * `y₃ = K / D₂` with `D₂ = ax₂ − bx₁` and `K = v₅ + ab((v₃−v₁)/a² − (v₄−v₂)/b²)`, from
//!   the identity `y₃(ax₂ − bx₁) = s₅ + ab((s₃−s₁)/a² − (s₄−s₂)/b²)`;
//! * `s₃ = v₃` then becomes the homogeneous quadratic
//!   `(D₁ − av₅x₂)(v₁D₂ − aKx₁) − v₃D₁D₂ = 0` in `(x₁, x₂)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{face_member, kernel_vector, AlphaVector, FaceParams};
use crate::biquadratic::{hessian_biquadratic, BiquadraticForm};
use crate::error::{Error, Result};
use crate::form::{Form, Monomial};
use crate::rational::{from_f64_exact, int, rat, to_f64, Rational};

/// Arithmetic used for the root and the back-substitution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    /// IEEE double throughout.
    Double,
    /// The square root to 60 decimal digits, everything else exact.
    Extended,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadraticKind {
    /// A nonzero quadratic with positive discriminant.
    Proper,
    /// The quadratic vanishes identically, so every admissible `x₁` works.
    IdenticallyZero,
}

/// A point of `ℝ³ × ℝ³` with both blocks scaled to unit length.
#[derive(Clone, Debug, PartialEq)]
pub struct BiquadPoint {
    pub x: [f64; 3],
    pub y: [f64; 3],
    /// `|h_p(x, y)|` at the unit-length point, computed exactly from the reported
    /// coordinates (double) or from the unnormalized rational point (extended).
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdditionalZero {
    pub point: BiquadPoint,
    pub kernel: [Rational; 5],
    /// Coefficients of `x₁², x₁x₂, x₂²`.
    pub quadratic: [Rational; 3],
    pub discriminant: Rational,
    pub kind: QuadraticKind,
    /// `true` when `x₂ = 1` was used, `false` for the fallback `x₁ = 1`.
    pub x2_normalized: bool,
}

struct Setup {
    a: Rational,
    b: Rational,
    v: [Rational; 5],
    k: Rational,
    h: BiquadraticForm,
}

/// The quadratic in `(x₁, x₂)` as coefficients of `x₁², x₁x₂, x₂²`.
pub fn derived_quadratic(alpha: &AlphaVector, fp: &FaceParams) -> Result<[Rational; 3]> {
    let s = setup(alpha, fp)?;
    Ok(quadratic(&s))
}

fn setup(alpha: &AlphaVector, fp: &FaceParams) -> Result<Setup> {
    let v = kernel_vector(alpha, fp)?;
    let (a, b) = (fp.a.clone(), fp.b.clone());
    let k = &v[4] + &a * &b * ((&v[2] - &v[0]) / (&a * &a) - (&v[3] - &v[1]) / (&b * &b));
    let h = hessian_biquadratic(&face_member(alpha, fp)?)?;
    Ok(Setup { a, b, v, k, h })
}

fn quadratic(s: &Setup) -> [Rational; 3] {
    let (a, b, v, k) = (&s.a, &s.b, &s.v, &s.k);
    let l = |c1: Rational, c2: Rational| Form::linear(&[c1, c2]);
    let d1 = l(-(a * &v[1]), b * &v[0]);
    let d2 = l(-b.clone(), a.clone());
    let f1 = &d1 - &l(Rational::zero(), a * &v[4]);
    let f2 = &d2.scale(&v[0]) - &l(a * k, Rational::zero());
    let q = &(&f1 * &f2) - &(&d1 * &d2).scale(&v[2]);
    [
        q.coefficient(&Monomial::new(vec![2, 0])),
        q.coefficient(&Monomial::new(vec![1, 1])),
        q.coefficient(&Monomial::new(vec![0, 2])),
    ]
}

/// Finds the zero for `α₅` at the lower bound, then checks `|h_p| ≤ tol` at unit scale.
///
/// The quadratic is dehomogenized with `x₂ = 1`; when neither root admits the
/// back-substitution, `x₁ = 1` is tried instead.
pub fn find_additional_zero(
    alpha: &AlphaVector,
    fp: &FaceParams,
    tol: f64,
    precision: Precision,
) -> Result<AdditionalZero> {
    let s = setup(alpha, fp)?;
    let quad = quadratic(&s);
    let disc = &quad[1] * &quad[1] - int(4) * &quad[0] * &quad[2];
    let done = |point: BiquadPoint, kind, x2_normalized| {
        if !(point.residual <= tol) {
            return Err(Error::ResidualTooLarge {
                residual: point.residual,
                tol,
            });
        }
        Ok(AdditionalZero {
            point,
            kernel: s.v.clone(),
            quadratic: quad.clone(),
            discriminant: disc.clone(),
            kind,
            x2_normalized,
        })
    };

    if quad.iter().all(Zero::is_zero) {
        // Every x₁ solves it; take the first candidate that avoids the divisions.
        let candidates = [int(2), int(3), int(-2), rat(1, 2), int(5), int(-3), rat(7, 3), int(11)];
        for t in candidates {
            if let Some((x, y)) = back_substitute_exact(&s, &t, &Rational::one()) {
                return done(exact_point(&s, &x, &y), QuadraticKind::IdenticallyZero, true);
            }
        }
        return Err(Error::DegenerateDivision);
    }
    if !disc.is_positive() {
        return Err(Error::DiscriminantNotPositive(disc.to_string()));
    }

    let mut hit_division = false;
    for x2_normalized in [true, false] {
        // In t: c_tt t² + c_mid t + c_one = 0.
        let (c_tt, c_one) = if x2_normalized {
            (&quad[0], &quad[2])
        } else {
            (&quad[2], &quad[0])
        };
        let c_mid = &quad[1];
        let point = match precision {
            Precision::Double => {
                let roots = roots_f64(to_f64(c_tt), to_f64(c_mid), to_f64(c_one));
                roots.into_iter().find_map(|t| {
                    let (x1, x2) = if x2_normalized { (t, 1.0) } else { (1.0, t) };
                    match back_substitute_f64(&s, x1, x2) {
                        Ok(p) => Some(double_point(&s, p)),
                        Err(division) => {
                            hit_division |= division;
                            None
                        }
                    }
                })
            }
            Precision::Extended => {
                let roots = roots_extended(c_tt, c_mid, c_one, &disc);
                roots.into_iter().find_map(|t| {
                    let one = Rational::one();
                    let (x1, x2) = if x2_normalized { (&t, &one) } else { (&one, &t) };
                    if (&s.a * x2 - &s.b * x1).is_zero() {
                        hit_division = true;
                        return None;
                    }
                    back_substitute_exact(&s, x1, x2).map(|(x, y)| exact_point(&s, &x, &y))
                })
            }
        };
        if let Some(p) = point {
            return done(p, QuadraticKind::Proper, x2_normalized);
        }
    }
    Err(if hit_division {
        Error::DegenerateDivision
    } else {
        Error::Degenerate("no root gives x1 x2 y1 y2 != 0".into())
    })
}

type Pair<T> = ([T; 3], [T; 3]);

fn back_substitute_exact(s: &Setup, x1: &Rational, x2: &Rational) -> Option<Pair<Rational>> {
    let (a, b, v) = (&s.a, &s.b, &s.v);
    let d1 = b * &v[0] * x2 - a * &v[1] * x1;
    let d2 = a * x2 - b * x1;
    if x1.is_zero() || x2.is_zero() || d1.is_zero() || d2.is_zero() {
        return None;
    }
    let x3 = &v[4] * x1 * x2 / &d1;
    let y = [&v[0] / x1, &v[1] / x2, &s.k / &d2];
    if y[0].is_zero() || y[1].is_zero() {
        return None;
    }
    Some(([x1.clone(), x2.clone(), x3], y))
}

/// `Err(true)` flags a vanishing `ax₂ − bx₁`.
fn back_substitute_f64(s: &Setup, x1: f64, x2: f64) -> std::result::Result<Pair<f64>, bool> {
    let (a, b) = (to_f64(&s.a), to_f64(&s.b));
    let v: Vec<f64> = s.v.iter().map(to_f64).collect();
    let eps = 1e-12;
    let d1 = b * v[0] * x2 - a * v[1] * x1;
    let d2 = a * x2 - b * x1;
    let scale = (a * x2).abs() + (b * x1).abs();
    if d2.abs() <= eps * scale {
        return Err(true);
    }
    let d1_scale = (b * v[0] * x2).abs() + (a * v[1] * x1).abs();
    if x1.abs() <= eps || x2.abs() <= eps || d1.abs() <= eps * d1_scale {
        return Err(false);
    }
    let x3 = v[4] * x1 * x2 / d1;
    Ok(([x1, x2, x3], [v[0] / x1, v[1] / x2, to_f64(&s.k) / d2]))
}

fn unit(v: [f64; 3]) -> [f64; 3] {
    let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
    v.map(|c| c / n)
}

fn double_point(s: &Setup, (x, y): Pair<f64>) -> BiquadPoint {
    let (x, y) = (unit(x), unit(y));
    let exact = |v: [f64; 3]| v.map(|c| from_f64_exact(c).unwrap_or_else(Rational::zero));
    let r = s
        .h
        .evaluate(&exact(x), &exact(y))
        .expect("block size 3");
    BiquadPoint {
        x,
        y,
        residual: to_f64(&r.abs()),
    }
}

fn exact_point(s: &Setup, x: &[Rational; 3], y: &[Rational; 3]) -> BiquadPoint {
    let sq = |v: &[Rational; 3]| v.iter().fold(Rational::zero(), |acc, c| acc + c * c);
    let r = s.h.evaluate(x, y).expect("block size 3").abs() / (sq(x) * sq(y));
    BiquadPoint {
        x: unit(x.clone().map(|c| to_f64(&c))),
        y: unit(y.clone().map(|c| to_f64(&c))),
        residual: to_f64(&r),
    }
}

/// Real roots in ascending order, by the cancellation-free formula.
fn roots_f64(a: f64, b: f64, c: f64) -> Vec<f64> {
    if a == 0.0 {
        return if b == 0.0 { vec![] } else { vec![-c / b] };
    }
    let d = (b * b - 4.0 * a * c).max(0.0).sqrt();
    let q = -0.5 * (b + b.signum() * d);
    let mut r = if q == 0.0 { vec![0.0] } else { vec![q / a, c / q] };
    r.sort_by(f64::total_cmp);
    r
}

fn roots_extended(a: &Rational, b: &Rational, c: &Rational, disc: &Rational) -> Vec<Rational> {
    if a.is_zero() {
        return if b.is_zero() { vec![] } else { vec![-c / b] };
    }
    let sd = sqrt_approx(disc, 60);
    let two_a = int(2) * a;
    let mut r = vec![(-b - &sd) / &two_a, (-b + &sd) / &two_a];
    r.sort();
    r
}

/// `√r` truncated to `digits` decimal places (for `r ≥ 0`).
fn sqrt_approx(r: &Rational, digits: u32) -> Rational {
    let scale = num_traits::pow(BigInt::from(10), digits as usize);
    let (n, d) = (r.numer(), r.denom());
    let root = (n * d * &scale * &scale).sqrt();
    Rational::new(root, d * scale)
}
