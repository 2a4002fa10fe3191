use num_traits::{One, Zero};
use proptest::prelude::*;

use quartic_sos::certificates::{gram_expand, ldlt_psd_check, PsdVerdict};
use quartic_sos::cli::{run, ExitStatus};
use quartic_sos::corpus::{self, CorpusObject, BUILTIN_NAMES};
use quartic_sos::dual::DualCertificate;
use quartic_sos::face::{alpha5_lower_bound, derived_quadratic, AlphaVector, FaceParams};
use quartic_sos::rational::{int, rat};
use quartic_sos::search::{
    bilinear_basis, jacobi_eigendecomposition, parameterize, search_sos, SearchConfig,
};
use quartic_sos::{BiquadraticForm, Form, Monomial, MonomialOrdering, Rational, SosCertificate, SymRationalMatrix};

fn small() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn positive() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn nonzero() -> impl Strategy<Value = Rational> {
    small().prop_filter("nonzero", |q| !q.is_zero())
}

fn symmetric(dim: usize) -> impl Strategy<Value = SymRationalMatrix> {
    prop::collection::vec(small(), dim * (dim + 1) / 2).prop_map(move |v| {
        let mut m = SymRationalMatrix::zeros(dim);
        let mut it = v.into_iter();
        for i in 0..dim {
            for j in i..dim {
                m.set(i, j, it.next().unwrap());
            }
        }
        m
    })
}

/// `AᵀA` for a random `r × dim` matrix, so PSD with rank at most `r`.
fn gram_of_rows(dim: usize) -> impl Strategy<Value = SymRationalMatrix> {
    (0..=dim).prop_flat_map(move |r| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, dim), r).prop_map(move |a| {
            let mut m = SymRationalMatrix::zeros(dim);
            for i in 0..dim {
                for j in i..dim {
                    let s: i64 = a.iter().map(|row| row[i] * row[j]).sum();
                    m.set(i, j, int(s));
                }
            }
            m
        })
    })
}

fn form(n: usize, degree: u32) -> impl Strategy<Value = Form> {
    let monos = Monomial::all_of_degree(n, degree);
    prop::collection::vec(small(), monos.len()).prop_map(move |cs| {
        monos
            .iter()
            .zip(cs)
            .fold(Form::zero(n, degree), |acc, (m, c)| &acc + &Form::term(m.clone(), c))
    })
}

fn biquadratic(n: usize) -> impl Strategy<Value = BiquadraticForm> {
    let ord = MonomialOrdering::lex(n);
    prop::collection::vec(small(), ord.len())
        .prop_map(move |v| BiquadraticForm::from_coefficient_vector(&ord, &v).unwrap())
}

fn det(m: &[Vec<Rational>]) -> Rational {
    if m.is_empty() {
        return Rational::one();
    }
    let mut total = Rational::zero();
    for c in 0..m.len() {
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &m[0][c] * det(&minor);
        if c % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn principal_minor(s: &SymRationalMatrix, idx: &[usize]) -> Rational {
    let m: Vec<Vec<Rational>> = idx
        .iter()
        .map(|&i| idx.iter().map(|&j| s.get(i, j).clone()).collect())
        .collect();
    det(&m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ldlt_agrees_with_principal_minors(s in prop_oneof![
        (1usize..=4).prop_flat_map(symmetric),
        (1usize..=4).prop_flat_map(gram_of_rows),
    ]) {
        let n = s.dim();
        let subsets: Vec<Vec<usize>> = (1u32..1 << n)
            .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
            .collect();
        let psd = subsets.iter().all(|idx| principal_minor(&s, idx) >= Rational::zero());
        let pd = (1..=n).all(|k| principal_minor(&s, &(0..k).collect::<Vec<_>>()) > Rational::zero());
        let expected = if pd {
            PsdVerdict::PositiveDefinite
        } else if psd {
            PsdVerdict::PositiveSemidefinite
        } else {
            PsdVerdict::NotPsd
        };
        prop_assert_eq!(ldlt_psd_check(&s).verdict, expected);
    }

    #[test]
    fn fiber_points_expand_to_the_target(
        q in symmetric(9),
        t in prop::collection::vec(small(), 64),
    ) {
        let z = bilinear_basis(3);
        let target = gram_expand(&z, &q).unwrap();
        prop_assume!(!target.is_zero());
        let pz = parameterize(&target, &z).unwrap();
        let t = &t[..pz.kernel().len()];
        prop_assert_eq!(pz.expand(&pz.point(t).unwrap()).unwrap(), target);
    }

    #[test]
    fn jacobi_reconstructs_and_is_orthonormal(
        (k, v) in (1usize..=6).prop_flat_map(|k| (Just(k), prop::collection::vec(-10.0f64..10.0, k * k)))
    ) {
        let a: Vec<Vec<f64>> = (0..k)
            .map(|i| (0..k).map(|j| 0.5 * (v[i * k + j] + v[j * k + i])).collect())
            .collect();
        let tol = 1e-12;
        let e = jacobi_eigendecomposition(&a, tol).unwrap();
        let norm = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt().max(1.0);
        let r = e.reconstruct(|l| l);
        for i in 0..k {
            for j in 0..k {
                prop_assert!((r[i][j] - a[i][j]).abs() <= 100.0 * tol * norm);
                let dot: f64 = (0..k).map(|m| e.vectors[i][m] * e.vectors[j][m]).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((dot - want).abs() <= 1e-10);
            }
        }
        prop_assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn hessian_is_symmetric_and_recovers_the_form(p in (2u32..=5).prop_flat_map(|d| form(3, d))) {
        let h = p.hessian().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                prop_assert_eq!(h.get(i, j), h.get(j, i));
            }
        }
        prop_assert_eq!(Form::euler_recover(&h, p.degree()).unwrap(), p);
    }

    #[test]
    fn form_text_round_trips(p in (1u32..=4).prop_flat_map(|d| form(3, d))) {
        prop_assert_eq!(Form::from_text(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn biquadratic_text_round_trips(b in biquadratic(3)) {
        prop_assert_eq!(BiquadraticForm::from_text(&b.to_text()).unwrap(), b);
    }

    #[test]
    fn certificate_text_round_trips(q in symmetric(9)) {
        let c = SosCertificate::new(bilinear_basis(3), q).unwrap().with_split(3);
        prop_assert_eq!(SosCertificate::from_text(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn dual_text_round_trips(v in prop::collection::vec(small(), 36)) {
        let d = DualCertificate::new(MonomialOrdering::builtin36(), v).unwrap();
        prop_assert_eq!(DualCertificate::from_text(&d.to_text()).unwrap(), d);
    }

    #[test]
    fn additional_zero_quadratic_matches_the_closed_form(
        a in nonzero(),
        b in nonzero(),
        al in prop::collection::vec(positive(), 4),
    ) {
        let fp = FaceParams::new(a.clone(), b.clone());
        let mut alpha = AlphaVector::new([al[0].clone(), al[1].clone(), al[2].clone(), al[3].clone(), int(0)]);
        alpha = alpha.with_alpha5(alpha5_lower_bound(&alpha, &fp).unwrap());
        let ours = derived_quadratic(&alpha, &fp).unwrap();
        let (a1, a2, a3, a4) = (&al[0], &al[1], &al[2], &al[3]);
        let p = |r: &Rational, k: i32| -> Rational {
            (0..k).fold(Rational::one(), |acc, _| acc * r)
        };
        let common = p(&a, 4) * a1 * a2 * a3 + p(&a, 4) * a1 * a3 * a4
            - p(&b, 4) * a1 * a2 * a4 - p(&b, 4) * a2 * a3 * a4;
        let c11 = int(-2) * p(&a, 3) * &b * a1 * a3 * a4 * &common;
        let c22 = int(2) * &a * p(&b, 3) * a2 * a3 * a4 * &common;
        let (a8, b8, a4_, b4) = (p(&a, 8), p(&b, 8), p(&a, 4), p(&b, 4));
        let c12 = int(2) * p(a4, 2) * &b8 * a3 * p(a2, 2) * a1
            + int(2) * p(a1, 2) * &a8 * a4 * p(a3, 2) * a2
            - int(6) * &a4_ * a2 * &b4 * p(a3, 2) * p(a4, 2) * a1
            - int(2) * a4 * &b4 * p(a3, 2) * p(a2, 2) * a1 * &a4_
            - int(2) * p(a1, 2) * &a4_ * p(a4, 2) * a3 * a2 * &b4
            + int(2) * p(a1, 2) * &a4_ * p(a2, 2) * a3 * &b4 * a4
            + p(a4, 2) * &b8 * p(a3, 2) * p(a2, 2)
            + p(a1, 2) * &a8 * p(a4, 2) * p(a3, 2)
            + p(a1, 2) * &a8 * p(a2, 2) * p(a3, 2)
            + p(a1, 2) * p(a2, 2) * &b8 * p(a4, 2);
        let factor = -(&a * &a) / p(&(a1 * a2 * a3 * a4), 2);
        prop_assert_eq!(&ours[0], &(c11 * &factor));
        prop_assert_eq!(&ours[1], &(c12 * &factor));
        prop_assert_eq!(&ours[2], &(c22 * &factor));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn search_is_deterministic_for_a_seed(
        seed in 0u64..1000,
        c in prop::collection::vec(1i64..=5, 3),
    ) {
        let p = (0..3).fold(Form::zero(3, 4), |acc, i| &acc + &Form::var(3, i).pow(4).scale(&int(c[i])));
        let cross = (&Form::var(3, 0) * &Form::var(3, 1)).pow(2);
        let target = &p + &cross;
        let z = Monomial::all_of_degree(3, 2);
        let cfg = SearchConfig { seed, ..SearchConfig::default() };
        let first = search_sos(&target, &z, &cfg).unwrap();
        let second = search_sos(&target, &z, &cfg).unwrap();
        prop_assert_eq!(first, second);
    }
}

#[test]
fn builtin_subcommand_writes_the_bundled_text() {
    let dir = tempfile::tempdir().unwrap();
    for name in BUILTIN_NAMES {
        let path = dir.path().join(name);
        let args = ["quartic-sos", "builtin", name, path.to_str().unwrap()];
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(args, &mut out, &mut err), ExitStatus::Verified, "{name}");
        let written = std::fs::read_to_string(&path).unwrap();
        let obj = corpus::builtin(name).unwrap();
        assert_eq!(written, obj.to_text(), "{name}");
        assert_eq!(CorpusObject::from_text(&written).unwrap(), obj, "{name}");
    }
}
