use vtschur::schur::chevalley_matrix;
use vtschur::stab::{
    ahat, compatibility_check, fit_products, shift, stab_catalog, stab_catalog_suite, stab_mult_e, stab_mult_f,
    stabilization_check, upsilon_suite, verify_prop_a, zero_j, Fit, KElt, ShiftMode, WeightWindow, WindowModel,
};
use vtschur::{IntMatrix, Poly};

fn m(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(rows).unwrap()
}

#[test]
fn limit_products_restrict_to_finite_ones() {
    for n in 2..=3 {
        for d in 1..=3 {
            assert!(compatibility_check(n, d).unwrap().passed());
        }
    }
}

#[test]
fn rank_zero_is_identity() {
    let a = m(&[vec![-2, 1], vec![3, 1]]);
    let d = IntMatrix::diag(&a.ro());
    assert_eq!(stab_mult_e(&d, &a).unwrap(), KElt::basis(&a).unwrap());
    assert_eq!(stab_mult_f(&d, &a).unwrap(), KElt::basis(&a).unwrap());
}

#[test]
fn negative_diagonals_follow_the_shifted_pattern() {
    let a = m(&[vec![0, 1], vec![3, -1]]);
    let b = chevalley_matrix(true, 1, 2, &a.ro()).unwrap();
    let limit = stab_mult_e(&b, &a).unwrap();
    assert!(limit.terms().any(|(z, _)| z.diagonal().iter().any(|&x| x < -1)));
    let fits = fit_products(&b, &a, &[3, 4, 5], ShiftMode::I).unwrap();
    for f in &fits {
        assert_eq!(f.at_one().unwrap(), limit.coeff(&f.z));
        for s in [3, 4, 5] {
            assert!(f.at_shift(s).is_ok());
        }
    }
    assert!(fits.iter().any(Fit::depends_on_shift));

    let c = m(&[vec![0, 1], vec![2, -1]]);
    let f = chevalley_matrix(false, 1, 2, &c.ro()).unwrap();
    let rep = stabilization_check(&f, &c, &[3, 4, 5], ShiftMode::I).unwrap();
    assert!(rep.all_pass(), "{rep}");
}

#[test]
fn catalog_fits() {
    assert_eq!(stab_catalog().len(), 10);
    let rep = stab_catalog_suite(&[3, 4, 5]);
    assert!(rep.all_pass(), "{rep}");
    let wider = stab_catalog_suite(&[3, 5, 6, 8]);
    assert!(wider.all_pass(), "{wider}");
}

#[test]
fn diagonal_patterns_are_constant() {
    let a = IntMatrix::diag(&[1, -1]);
    let d = IntMatrix::diag(&a.ro());
    let fits = fit_products(&d, &a, &[3, 4, 5], ShiftMode::I).unwrap();
    assert_eq!(fits.len(), 1);
    assert!(!fits[0].depends_on_shift());
    assert_eq!(fits[0].at_one().unwrap(), Poly::one());
}

#[test]
fn fit_rejects_low_shifts() {
    let a = m(&[vec![0, 1], vec![3, -1]]);
    let b = chevalley_matrix(true, 1, 2, &a.ro()).unwrap();
    assert!(fit_products(&b, &a, &[1, 2, 3], ShiftMode::I).is_err());
    assert!(fit_products(&b, &a, &[3, 4], ShiftMode::I).is_err());
}

#[test]
fn primed_shift_keeps_the_cut_entry() {
    let a = m(&[vec![-1, 1, 0], vec![0, 0, 2], vec![1, 0, -2]]);
    let s = shift(&a, 2, ShiftMode::TwoIPrime(1)).unwrap();
    assert_eq!(s.diagonal(), vec![3, 0, 2]);
    assert!(vtschur::stab::is_stab_primed(&s, 1));
    assert_eq!(shift(&a, 2, ShiftMode::TwoI).unwrap().diagonal(), vec![3, 4, 2]);
}

#[test]
fn completion_elements() {
    let w = WeightWindow::new(3, 1).unwrap();
    let unit = zero_j(&[0, 0, 0], &w).unwrap();
    assert_eq!(unit.len(), 7usize.pow(3));
    let z = zero_j(&[1, 0, 0], &w).unwrap();
    for (a, c) in z.terms() {
        let l = a.get(0, 0);
        assert_eq!(*c, Poly::vt(l, l));
    }
    let zm = zero_j(&[-1, 0, 0], &w).unwrap();
    assert_eq!(zm.coeff(&IntMatrix::diag(&[2, 0, 0])), Poly::vt(-2, 2));
    assert!(ahat(&IntMatrix::diag(&[1, 0, 0]), &[0, 0, 0], &w).is_err());

    let e1 = ahat(&m(&[vec![0, 1, 0], vec![0, 0, 0], vec![0, 0, 0]]), &[0, 0, 0], &w).unwrap();
    let model = WindowModel::new(3, w);
    let acted = model.act(&vtschur::stab::KGen::E(1), &model.unit()).unwrap();
    let inner = |x: &IntMatrix| x.diagonal().iter().all(|d| d.abs() < w.w);
    assert_eq!(acted.filter(inner), e1.filter(inner));
}

#[test]
fn completion_relations() {
    let w = WeightWindow::new(4, 2).unwrap();
    for n in 2..=3 {
        let rep = verify_prop_a(None, n, w).unwrap();
        assert!(rep.all_pass(), "{rep}");
        assert!(rep.checks.iter().any(|c| c.name.starts_with("(1-iii)")));
        assert!(rep.checks.iter().any(|c| c.name.contains("stable")));
    }
    let only = verify_prop_a(Some("(1-ii)"), 2, w).unwrap();
    assert!(only.checks.iter().all(|c| c.name.starts_with("(1-ii)")));
    assert!(verify_prop_a(None, 2, WeightWindow::new(4, 1).unwrap()).is_err());
}

#[test]
fn transported_relations() {
    let w = WeightWindow::new(4, 2).unwrap();
    for n in 2..=3 {
        let rep = upsilon_suite(n, w).unwrap();
        assert!(rep.all_pass(), "{rep}");
    }
}
