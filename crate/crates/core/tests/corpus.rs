use quartic_sos::biquadratic::{hessian_biquadratic, BiIndex, SymmetryVerdict};
use quartic_sos::certificates::{verify_sos_certificate, PsdVerdict, SosVerdict};
use quartic_sos::corpus;
use quartic_sos::form::{parse_expression, x_names, Monomial};
use quartic_sos::rational::{int, rat};
use quartic_sos::{ldlt_psd_check, MonomialOrdering, Rational};

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

#[test]
fn multiplier_certificate_verifies() {
    let b = corpus::b_thm22();
    let cert = corpus::q22_cert();
    assert_eq!(cert.q.dim(), 15);
    assert_eq!(*cert.q.get(0, 0), int(4608));
    assert_eq!(cert.scale, rat(1, 384));
    let v = verify_sos_certificate(&b.to_form(), &cert).unwrap();
    match v {
        SosVerdict::Accepted { ldlt } => assert_eq!(ldlt.verdict, PsdVerdict::PositiveDefinite),
        other => panic!("{other:?}"),
    }
}

#[test]
fn perturbed_certificate_is_rejected_at_a_named_coefficient() {
    let b = corpus::b_thm22();
    let mut cert = corpus::q22_cert();
    cert.q.set(0, 0, int(4609));
    match verify_sos_certificate(&b.to_form(), &cert).unwrap() {
        SosVerdict::CoefficientMismatch { monomial, expected, found } => {
            // z₁² = x₂²x₃²y₃².
            assert_eq!(monomial, Monomial::new(vec![0, 2, 2, 0, 0, 2]));
            assert_eq!(found - expected, int(1));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn dual_functional_separates() {
    let b = corpus::b_thm22();
    let d = corpus::b22_dual();
    assert_eq!(d.pairing(&b).unwrap(), int(-37));
    let printed: [[i64; 9]; 9] = [
        [61, 0, -48, 0, -15, -7, -48, -7, 34],
        [0, 64, 35, -15, -37, -1, -7, -5, 1],
        [-48, 35, 66, -7, -1, -1, 34, 1, -23],
        [0, -15, -7, 64, -37, -5, 35, -1, 1],
        [-15, -37, -1, -37, 96, -15, -1, -15, 12],
        [-7, -1, -1, -5, -15, 18, 1, 12, -18],
        [-48, -7, 34, 35, -1, 1, 66, -1, -23],
        [-7, -5, 1, -1, -15, 12, -1, 18, -18],
        [34, 1, -23, 1, 12, -18, -23, -18, 37],
    ];
    let m = d.moment_matrix().matrix;
    for (i, row) in printed.iter().enumerate() {
        assert_eq!(m.row(i), ints(row).as_slice(), "row {i}");
    }
    assert_eq!(ldlt_psd_check(&m).verdict, PsdVerdict::PositiveDefinite);
    assert!(d.verify_refutation(&b).unwrap().is_accepted());
}

#[test]
fn coefficient_vector_in_builtin_order() {
    let v = corpus::b_thm22()
        .coefficient_vector(&MonomialOrdering::builtin36())
        .unwrap();
    let printed = [
        12, 7, 12, 3, 5, 6, 7, -5, 13, -11, 5, -10, 12, 13, 12, 13, 23, 12, 3, -11, 13, -10, 3,
        9, 5, 5, 23, 3, 31, 4, 6, -10, 12, 9, 4, 12,
    ];
    assert_eq!(v, ints(&printed));
}

#[test]
fn choi_objects() {
    let c = corpus::choi_matrix();
    let names = x_names(3);
    assert_eq!(*c.get(0, 0), parse_expression("x1^2 + 2*x2^2", &names).unwrap());
    let cb = corpus::choi_biquadratic();
    assert_eq!(
        quartic_sos::BiquadraticForm::from_matrix(&c).unwrap(),
        cb
    );
    match cb.is_symmetric() {
        SymmetryVerdict::Asymmetric { monomial, coefficient, swapped, swapped_coefficient } => {
            assert_eq!(monomial, BiIndex::new(0, 0, 1, 1));
            assert_eq!(coefficient, int(0));
            assert_eq!(swapped, BiIndex::new(1, 1, 0, 0));
            assert_eq!(swapped_coefficient, int(2));
        }
        SymmetryVerdict::Symmetric => panic!("Choi form is not symmetric"),
    }
    assert_ne!(cb.swap_xy(), cb);
    let w = c.is_valid_hessian().unwrap();
    let v = w.witness().unwrap();
    let pair = [v.left.clone(), v.right.clone()];
    assert!(pair.iter().any(|f| f.is_zero()));
    assert!(pair.contains(&parse_expression("-x3", &names).unwrap()));
}

#[test]
fn reduction_form_and_f() {
    let hq = hessian_biquadratic(&corpus::q_reduction()).unwrap();
    assert_eq!(hq.num_terms(), 1);
    assert_eq!(hq.coefficient(BiIndex::new(2, 2, 2, 2)), int(1));
    let f = parse_expression("x1^4", &x_names(3)).unwrap();
    assert_eq!(corpus::f_lemma32().coefficient(f.terms().next().unwrap().0), int(17));
}
