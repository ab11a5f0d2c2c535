use vtschur::galois::{descent_suite, equivariance_check};
use vtschur::jparity::{verify_hat_relations, verify_tilde_relations};
use vtschur::laurent::rational;
use vtschur::report::Report;
use vtschur::schur::verify_s_relations;
use vtschur::tensor::{centralizer_dim, commute_check, coproduct_suite, hecke_operator_checks, surjectivity_rank, Side};
use vtschur::uvt::{exponent_identity_check, hopf_checks, t1_specialization_check, verify_star_relations, verify_u_relations};

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn assert_pass(rep: Report) -> Report {
    assert!(rep.all_pass(), "{rep}");
    rep
}

fn alternates(rep: &Report) -> Vec<String> {
    let mut ids: Vec<String> = rep.alternates_used().into_iter().map(|(id, _)| id).collect();
    ids.sort();
    ids
}

#[test]
fn schur_algebra_presentation() {
    for (n, d) in [(2, 1), (2, 2), (3, 2), (3, 3)] {
        let rep = assert_pass(verify_s_relations(n, d).unwrap());
        assert!(rep.checks.iter().any(|c| c.name.starts_with("R5")));
        assert!(rep.checks.iter().any(|c| c.name.starts_with("R7")));
    }
}

#[test]
fn quantum_algebra_on_tensor_space() {
    for (n, d) in [(2, 1), (2, 2), (3, 2), (3, 3)] {
        let rep = assert_pass(verify_u_relations(n, d).unwrap());
        let alt = alternates(&rep);
        if n == 3 {
            assert!(alt.iter().any(|id| id.starts_with("R4")));
        }
        assert!(!alt.iter().any(|id| id.starts_with("R3 E")));
    }
}

#[test]
fn commuting_actions() {
    for n in 1..=4 {
        for d in 1..=3 {
            assert_pass(commute_check(n, d).unwrap());
        }
    }
    for d in 2..=3 {
        assert_pass(hecke_operator_checks(2, d).unwrap());
    }
}

#[test]
fn double_centralizer() {
    for (n, d) in [(2, 2), (3, 2), (3, 3)] {
        for (v0, t0) in [(2, 3), (5, 7)] {
            let (v0, t0) = (rational(v0, 1), rational(t0, 1));
            assert_eq!(centralizer_dim(Side::Hecke, n, d, &v0, &t0).unwrap(), binom(n * n + d - 1, d));
            assert_eq!(centralizer_dim(Side::Quantum, n, d, &v0, &t0).unwrap(), (1..=d).product::<usize>());
        }
        let rank = surjectivity_rank(n, d, &rational(2, 1), &rational(3, 1)).unwrap();
        assert_eq!(rank, binom(n * n + d - 1, d));
    }
}

#[test]
fn star_twist() {
    for (n, d) in [(2, 2), (3, 2)] {
        assert_pass(verify_star_relations(n, d).unwrap());
    }
    for n in 2..=3 {
        assert_pass(t1_specialization_check(n).unwrap());
    }
    for n in 2..=5 {
        assert!(exponent_identity_check(n).passed());
    }
}

#[test]
fn hopf_structure() {
    for n in 2..=3 {
        for d in 1..=3 {
            let rep = assert_pass(hopf_checks(n, d).unwrap());
            assert!(alternates(&rep).iter().all(|id| id.starts_with("antipode")));
        }
        assert_pass(coproduct_suite(n, 3).unwrap());
    }
}

#[test]
fn parity_idempotents() {
    for (n, d, m) in [(2, 2, 1), (3, 2, 1), (3, 3, 2)] {
        let rep = assert_pass(verify_tilde_relations(n, d, m).unwrap());
        assert!(rep.checks.iter().any(|c| c.name.contains("= δ")));
    }
    for (n, d, m) in [(3, 2, 1), (4, 2, 2), (4, 3, 1)] {
        let rep = assert_pass(verify_hat_relations(n, d, m).unwrap());
        assert!(rep.checks.iter().all(|c| c.status != vtschur::report::Status::Skip));
        for r in ["r4", "r5", "r6", "r7"] {
            assert!(rep.checks.iter().any(|c| c.name.starts_with(r)), "{r} missing");
        }
    }
}

#[test]
fn galois_descent() {
    for (n, d) in [(2, 2), (3, 2), (3, 3)] {
        assert_pass(equivariance_check(n, d).unwrap());
    }
    for (n, d) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        assert_pass(descent_suite(n, d).unwrap());
    }
}
