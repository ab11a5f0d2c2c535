use std::collections::BTreeMap;
use vtschur::flag_oracle::{FlagOracle, Guards};
use vtschur::galois::{descent_suite, equivariance_check, Sigma};
use vtschur::hecke::{hecke_oracle, HeckeElt, Permutation};
use vtschur::jparity::{verify_hat_relations, verify_tilde_relations};
use vtschur::laurent::rational;
use vtschur::report::Report;
use vtschur::schur::{oracle_compare, theta, verify_s_relations, SchurElt};
use vtschur::stab::{stab_catalog, stab_catalog_suite, upsilon_suite, verify_prop_a, WeightWindow};
use vtschur::tensor::{centralizer_dim, commute_check, coproduct_suite, surjectivity_rank, Side};
use vtschur::uvt::{exponent_identity_check, hopf_checks, t1_specialization_check, verify_star_relations, verify_u_relations};
use vtschur::Poly;

/// Alternate forms used, keyed by suite and form, with the number of checks relying on each.
type Notes = BTreeMap<String, usize>;
type Outcome = Result<Notes, String>;

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn need(rep: vtschur::Result<Report>, notes: &mut Notes) -> Result<(), String> {
    let rep = rep.map_err(|e| e.to_string())?;
    if !rep.all_pass() {
        return Err(format!("{rep}"));
    }
    for (_, why) in rep.alternates_used() {
        *notes.entry(format!("{}: {why}", rep.suite)).or_default() += 1;
    }
    Ok(())
}

fn oracle() -> Outcome {
    let mut notes = Notes::new();
    let g = Guards::default();
    for n in 2..=3 {
        for d in 1..=2 {
            need(oracle_compare(n, d, &[3, 5, 7], &g), &mut notes)?;
        }
    }
    for d in 2..=3 {
        need(hecke_oracle(d, &[3, 5], &g), &mut notes)?;
    }
    Ok(notes)
}

fn presentation() -> Outcome {
    let mut notes = Notes::new();
    for (n, d) in [(2, 1), (2, 2), (3, 2), (3, 3)] {
        need(verify_s_relations(n, d), &mut notes)?;
        need(verify_u_relations(n, d), &mut notes)?;
    }
    Ok(notes)
}

fn commuting() -> Outcome {
    let mut notes = Notes::new();
    for n in 1..=4 {
        for d in 1..=3 {
            need(commute_check(n, d), &mut notes)?;
        }
    }
    Ok(notes)
}

fn centralizer() -> Outcome {
    for (n, d) in [(2, 2), (3, 2), (3, 3)] {
        let want = binom(n * n + d - 1, d);
        let fact: usize = (1..=d).product();
        for (v0, t0) in [(2, 3), (5, 7)] {
            let (v0, t0) = (rational(v0, 1), rational(t0, 1));
            let h = centralizer_dim(Side::Hecke, n, d, &v0, &t0).map_err(|e| e.to_string())?;
            let q = centralizer_dim(Side::Quantum, n, d, &v0, &t0).map_err(|e| e.to_string())?;
            if h != want || q != fact {
                return Err(format!("(n={n}, d={d}): commutants {h}, {q}; want {want}, {fact}"));
            }
        }
        let rank = surjectivity_rank(n, d, &rational(2, 1), &rational(3, 1)).map_err(|e| e.to_string())?;
        if rank != want {
            return Err(format!("(n={n}, d={d}): image rank {rank}, want {want}"));
        }
    }
    Ok(Notes::new())
}

fn counting() -> Outcome {
    for p in [3, 5] {
        for n in 1..=3 {
            for d in 1..=3usize {
                let o = FlagOracle::new(p, n, d, &Guards::default()).map_err(|e| e.to_string())?;
                let fact: usize = (1..=d).product();
                if o.xy_types().len() != n.pow(d as u32) || o.yy_types().len() != fact {
                    return Err(format!("type counts off at p={p}, n={n}, d={d}"));
                }
            }
        }
    }
    Ok(Notes::new())
}

fn star() -> Outcome {
    let mut notes = Notes::new();
    for (n, d) in [(2, 2), (3, 2)] {
        need(verify_star_relations(n, d), &mut notes)?;
    }
    for n in 2..=3 {
        need(t1_specialization_check(n), &mut notes)?;
    }
    for n in 2..=5 {
        let c = exponent_identity_check(n);
        if !c.passed() {
            return Err(format!("exponent identity at n={n}: {c:?}"));
        }
    }
    Ok(notes)
}

fn hopf() -> Outcome {
    let mut notes = Notes::new();
    for n in 2..=3 {
        for d in 1..=3 {
            need(hopf_checks(n, d), &mut notes)?;
        }
        need(coproduct_suite(n, 3), &mut notes)?;
    }
    Ok(notes)
}

fn stabilization() -> Outcome {
    let mut notes = Notes::new();
    if stab_catalog().len() != 10 {
        return Err("catalog must hold 10 pairs".into());
    }
    need(Ok(stab_catalog_suite(&[3, 4, 5])), &mut notes)?;
    let w = WeightWindow::new(4, 2).map_err(|e| e.to_string())?;
    for n in 2..=3 {
        need(verify_prop_a(None, n, w), &mut notes)?;
        need(upsilon_suite(n, w), &mut notes)?;
    }
    Ok(notes)
}

fn parity() -> Outcome {
    let mut notes = Notes::new();
    for (n, d, m) in [(2, 2, 1), (3, 2, 1), (3, 3, 2)] {
        need(verify_tilde_relations(n, d, m), &mut notes)?;
    }
    for (n, d, m) in [(3, 2, 1), (4, 2, 2), (4, 3, 1)] {
        need(verify_hat_relations(n, d, m), &mut notes)?;
    }
    Ok(notes)
}

fn descent() -> Outcome {
    let mut notes = Notes::new();
    let p = Poly::from_terms([((1, 2), 3), ((-2, 0), -1), ((0, -1), 5)]);
    if p.sigma().sigma() != p {
        return Err("σ² on coefficients".into());
    }
    for (n, d) in [(2, 2), (3, 3)] {
        for a in theta(n, d) {
            let x = SchurElt::basis_elt(&a).map_err(|e| e.to_string())?;
            if x.sigma().sigma() != x {
                return Err(format!("σ² on {{{a}}}"));
            }
        }
    }
    for w in Permutation::all(3) {
        let h = HeckeElt::basis(w.clone());
        if h.sigma().sigma() != h {
            return Err(format!("σ² on T_{w}"));
        }
    }
    for (n, d) in [(2, 2), (3, 2), (3, 3)] {
        need(equivariance_check(n, d), &mut notes)?;
    }
    for (n, d) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        need(descent_suite(n, d), &mut notes)?;
    }
    Ok(notes)
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("oracle equivalence of multiplication formulas", oracle),
        ("presentation relations on the geometric model", presentation),
        ("commuting actions on tensor space", commuting),
        ("double centralizer dimensions", centralizer),
        ("orbit type counts", counting),
        ("star twist coherence", star),
        ("Hopf structure", hopf),
        ("stabilization and completion relations", stabilization),
        ("parity idempotent suites", parity),
        ("Galois descent", descent),
    ];
    let mut failed = vec![];
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        match run() {
            Ok(notes) => {
                println!("[PASS] {} {name} ({:.1?})", k + 1, start.elapsed());
                for (form, k) in notes {
                    println!("       {} ({k} checks)", form.replace(": alternate:", " via "));
                }
            }
            Err(why) => {
                println!("[FAIL] {} {name}: {why}", k + 1);
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
