use proptest::prelude::*;
use vtschur::galois::Sigma;
use vtschur::hecke::{hecke_mul, HeckeElt, Permutation};
use vtschur::laurent::{qbinom, rational};
use vtschur::schur::{chevalley_matrix, mult_chev_e, mult_chev_f, theta, Basis, SchurElt};
use vtschur::stab::{shift, ShiftMode};
use vtschur::uvt::{star_expand, GeneratorWord};
use vtschur::words::Gen;
use vtschur::{IntMatrix, Poly};

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((-4i64..=4, -4i64..=4, -5i64..=5), 0..6).prop_map(|ts| {
        let mut p = Poly::zero();
        for (a, b, c) in ts {
            p.add_term(a, b, c);
        }
        p
    })
}

fn even_degree_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((-4i64..=4, -3i64..=3, -5i64..=5), 0..6).prop_map(|ts| {
        let mut p = Poly::zero();
        for (a, k, c) in ts {
            p.add_term(a, a + 2 * k, c);
        }
        p
    })
}

fn even_v_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((0i64..=3, -2i64..=2, -5i64..=5), 0..5).prop_map(|ts| {
        let mut p = Poly::zero();
        for (a, b, c) in ts {
            p.add_term(2 * a, b, c);
        }
        p
    })
}

fn nonzero_rational() -> impl Strategy<Value = num_rational::BigRational> {
    (1i64..=9, 1i64..=9, any::<bool>()).prop_map(|(n, d, neg)| rational(if neg { -n } else { n }, d))
}

fn schur_elt(n: usize, d: usize) -> impl Strategy<Value = SchurElt> {
    let basis = theta(n, d);
    let len = basis.len();
    prop::collection::vec((0..len, poly()), 0..5).prop_map(move |ts| {
        let mut x = SchurElt::zero(n, d);
        for (i, c) in ts {
            x.add_term(basis[i].clone(), c);
        }
        x
    })
}

fn hecke_elt(d: usize) -> impl Strategy<Value = HeckeElt> {
    let perms = Permutation::all(d);
    let len = perms.len();
    prop::collection::vec((0..len, poly()), 0..4).prop_map(move |ts| {
        let mut x = HeckeElt::zero(d);
        for (i, c) in ts {
            x.add_term(perms[i].clone(), c);
        }
        x
    })
}

fn gen3() -> impl Strategy<Value = Gen> {
    prop::sample::select(Gen::all(3))
}

fn gen_word() -> impl Strategy<Value = GeneratorWord> {
    prop::collection::vec(gen3(), 0..4).prop_map(GeneratorWord::new)
}

fn stab_matrix() -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(0i64..=3, 9).prop_flat_map(|off| {
        prop::collection::vec(-4i64..=4, 3).prop_map(move |diag| {
            let mut m = IntMatrix::zeros(3, 3);
            for i in 0..3 {
                for j in 0..3 {
                    m.set(i, j, if i == j { diag[i] } else { off[3 * i + j] });
                }
            }
            m
        })
    })
}

proptest! {
    #[test]
    fn bar_is_an_involution(p in poly()) {
        prop_assert_eq!(p.bar().bar(), p);
    }

    #[test]
    fn binomials_are_symmetric(n in 0i64..=12, k in 0i64..=12) {
        prop_assume!(k <= n);
        prop_assert_eq!(qbinom(n, k).unwrap(), qbinom(n, n - k).unwrap());
    }

    #[test]
    fn rs_rewriting_round_trips(p in even_degree_poly()) {
        prop_assert_eq!(p.to_rs().unwrap().to_vt(), p);
    }

    #[test]
    fn eval_q_is_multiplicative(p in even_v_poly(), q in even_v_poly(), prime in prop::sample::select(vec![3i64, 5, 7])) {
        let (x, y, xy) = (p.eval_q(prime), q.eval_q(prime), (&p * &q).eval_q(prime));
        if let (Ok(x), Ok(y), Ok(xy)) = (x, y, xy) {
            prop_assert_eq!(x.mul(&y), xy);
        }
    }

    #[test]
    fn specialize_is_a_homomorphism(p in poly(), q in poly(), v0 in nonzero_rational(), t0 in nonzero_rational()) {
        let lhs = (&p * &q).specialize(&v0, &t0).unwrap();
        let rhs = p.specialize(&v0, &t0).unwrap() * q.specialize(&v0, &t0).unwrap();
        prop_assert_eq!(lhs, rhs);
        let sum = (&p + &q).specialize(&v0, &t0).unwrap();
        prop_assert_eq!(sum, p.specialize(&v0, &t0).unwrap() + q.specialize(&v0, &t0).unwrap());
    }

    #[test]
    fn basis_conversion_round_trips(x in schur_elt(3, 2)) {
        let e = x.to_basis(Basis::E);
        prop_assert_eq!(e.to_basis(Basis::Braced).to_basis(Basis::E), e.clone());
        prop_assert_eq!(e.to_basis(Basis::Braced), x);
    }

    #[test]
    fn chevalley_products_respect_weights(idx in 0usize..1000, upper in any::<bool>(), h in 1usize..=2, r in 1i64..=2) {
        let th = theta(3, 3);
        let a = th[idx % th.len()].clone();
        let b = chevalley_matrix(upper, h, r, &a.ro()).unwrap();
        prop_assume!(b.is_nonnegative());
        let x = SchurElt::basis_elt(&a).unwrap();
        let y = if upper { mult_chev_e(&b, &x).unwrap() } else { mult_chev_f(&b, &x).unwrap() };
        for (c, _) in y.terms() {
            prop_assert_eq!(c.ro(), b.ro());
            prop_assert_eq!(c.co(), a.co());
        }
    }

    #[test]
    fn hecke_is_associative(x in hecke_elt(3), y in hecke_elt(3), z in hecke_elt(3)) {
        let left = hecke_mul(&hecke_mul(&x, &y).unwrap(), &z).unwrap();
        let right = hecke_mul(&x, &hecke_mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn sigma_squares_to_identity(p in poly(), x in schur_elt(2, 2), h in hecke_elt(3)) {
        prop_assert_eq!(p.sigma().sigma(), p);
        prop_assert_eq!(x.sigma().sigma(), x);
        prop_assert_eq!(h.sigma().sigma(), h);
    }

    #[test]
    fn star_is_associative(x in gen_word(), y in gen_word(), z in gen_word()) {
        let left = star_expand(3, &star_expand(3, &x, &y), &z);
        let right = star_expand(3, &x, &star_expand(3, &y, &z));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn shifts_move_only_the_diagonal(a in stab_matrix(), p in 5i64..=9) {
        let s = shift(&a, p, ShiftMode::I).unwrap();
        prop_assert_eq!(s.offdiag_part(), a.offdiag_part());
        let mut back = s.clone();
        for i in 0..3 {
            back.add_at(i, i, -p);
        }
        prop_assert_eq!(back, a.clone());
        for m in 1..=2 {
            prop_assume!(a.get(m, m) >= 0);
            let t = shift(&a, p, ShiftMode::TwoIPrime(m)).unwrap();
            prop_assert_eq!(t.get(m, m), a.get(m, m));
            prop_assert!(vtschur::stab::is_stab_primed(&t, m));
        }
    }
}
