use rand::Rng;
use std::collections::BTreeMap;
use vtschur::flag_oracle::{dim_stats, seeded_rng, FlagOracle, Guards};
use vtschur::hecke::{hecke_oracle, perm_matrix, Permutation};
use vtschur::schur::{e_product, mult_chev_e, mult_chev_f, oracle_compare, theta, SchurElt};
use vtschur::{IntMatrix, Poly};

fn m(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(rows).unwrap()
}

fn factorial(d: usize) -> usize {
    (1..=d).product()
}

#[test]
fn chevalley_products_match_orbit_counts() {
    let g = Guards::default();
    for n in 2..=3 {
        for d in 1..=2 {
            let rep = oracle_compare(n, d, &[3, 5, 7], &g).unwrap();
            assert!(rep.all_pass(), "{rep}");
        }
    }
}

#[test]
fn hecke_products_match_complete_flag_counts() {
    let g = Guards::default();
    for d in 2..=3 {
        let rep = hecke_oracle(d, &[3, 5], &g).unwrap();
        assert!(rep.all_pass(), "{rep}");
    }
}

/// Fits `c(q) = Σ_k a_k q^k` through the counts at three primes, with `deg <= 2`.
fn quadratic_through(points: &[(i64, i64)]) -> [i64; 3] {
    let [(x0, y0), (x1, y1), (x2, y2)] = [points[0], points[1], points[2]];
    let det = (x0 - x1) * (x0 - x2) * (x1 - x2);
    let a2 = (y0 * (x1 - x2) - y1 * (x0 - x2) + y2 * (x0 - x1)) / det;
    let a1 = (y1 - y0) / (x1 - x0) - a2 * (x0 + x1);
    let a0 = y0 - a1 * x0 - a2 * x0 * x0;
    for &(x, y) in points {
        assert_eq!(a0 + a1 * x + a2 * x * x, y);
    }
    [a0, a1, a2]
}

fn fitted_count(b: &IntMatrix, a: &IntMatrix, c: &IntMatrix) -> [i64; 3] {
    let g = Guards::default();
    let counts: Vec<(i64, i64)> = [3u64, 5, 7]
        .iter()
        .map(|&p| {
            let o = FlagOracle::new(p, b.rows(), b.total() as usize, &g).unwrap();
            (p as i64, o.convolve_count(b, a).unwrap().get(c).copied().unwrap_or(0))
        })
        .collect();
    quadratic_through(&counts)
}

#[test]
fn binomial_examples_follow_counts_in_q() {
    let one_plus_q = Poly::from_terms([((0, 0), 1), ((2, 0), 1)]);
    let cases = [
        (m(&[vec![1, 1], vec![0, 0]]), m(&[vec![1, 0], vec![1, 0]]), IntMatrix::diag(&[2, 0]), [1, 1, 0]),
        (m(&[vec![0, 0], vec![1, 1]]), m(&[vec![0, 1], vec![0, 1]]), IntMatrix::diag(&[0, 2]), [1, 1, 0]),
        (m(&[vec![0, 1], vec![0, 1]]), IntMatrix::diag(&[0, 2]), m(&[vec![0, 1], vec![0, 1]]), [1, 0, 0]),
        (m(&[vec![1, 0], vec![1, 0]]), IntMatrix::diag(&[2, 0]), m(&[vec![1, 0], vec![1, 0]]), [1, 0, 0]),
    ];
    for (b, a, c, want) in cases {
        assert_eq!(fitted_count(&b, &a, &c), want);
        let e = e_product(&b, &a).unwrap();
        let expect = if want[1] == 1 { one_plus_q.clone() } else { Poly::one() };
        assert_eq!(e.coeff(&c), expect);
        let x = SchurElt::basis_elt(&a).unwrap();
        let braced = if b.lower_chevalley().is_some() { mult_chev_f(&b, &x) } else { mult_chev_e(&b, &x) }.unwrap();
        assert_eq!(braced.len(), 1);
    }
}

#[test]
fn elementary_products() {
    let b = m(&[vec![0, 1], vec![0, 0]]);
    let a = IntMatrix::diag(&[0, 1]);
    let x = mult_chev_e(&b, &SchurElt::basis_elt(&a).unwrap()).unwrap();
    assert_eq!(x, SchurElt::basis_elt(&b).unwrap());
    let c = m(&[vec![0, 0], vec![1, 0]]);
    let y = mult_chev_f(&c, &SchurElt::basis_elt(&IntMatrix::diag(&[1, 0])).unwrap()).unwrap();
    assert_eq!(y, SchurElt::basis_elt(&c).unwrap());
    let d = IntMatrix::diag(&[1, 1]);
    let z = mult_chev_e(&d, &SchurElt::basis_elt(&m(&[vec![1, 0], vec![0, 1]])).unwrap()).unwrap();
    assert_eq!(z, SchurElt::basis_elt(&d).unwrap());
}

#[test]
fn orbit_type_counts() {
    let g = Guards::default();
    for p in [3, 5] {
        for n in 1..=3 {
            for d in 1..=3 {
                let o = FlagOracle::new(p, n, d, &g).unwrap();
                assert_eq!(o.xy_types().len(), n.pow(d as u32), "#Π for n={n}, d={d}, p={p}");
                assert_eq!(o.yy_types().len(), factorial(d), "#Σ for d={d}, p={p}");
            }
        }
    }
}

#[test]
fn complete_flag_types_are_permutations() {
    let o = FlagOracle::new(3, 1, 3, &Guards::default()).unwrap();
    let mut perms: Vec<IntMatrix> = Permutation::all(3).iter().map(perm_matrix).collect();
    perms.sort();
    assert_eq!(o.yy_types(), perms);
    assert_eq!(o.orbit_matrix_yy(&o.y[0], &o.y[0]), IntMatrix::diag(&[1, 1, 1]));
}

#[test]
fn orbit_matrices_are_invariant() {
    let mut rng = seeded_rng(7);
    for (p, n, d) in [(3, 2, 2), (3, 3, 3), (5, 2, 3)] {
        let o = FlagOracle::new(p, n, d, &Guards::default()).unwrap();
        for _ in 0..10 {
            let g = o.random_invertible(&mut rng);
            let v = &o.x[rng.gen_range(0..o.x.len())];
            let w = &o.x[rng.gen_range(0..o.x.len())];
            let f = &o.y[rng.gen_range(0..o.y.len())];
            let before = (o.orbit_matrix_xx(v, w), o.orbit_matrix_xy(v, f));
            let (gv, gw, gf) = (o.act_flag(&g, v), o.act_flag(&g, w), o.act_flag(&g, f));
            assert_eq!(before, (o.orbit_matrix_xx(&gv, &gw), o.orbit_matrix_xy(&gv, &gf)));
            assert_eq!(before.0.total(), d as i64);
        }
    }
}

type Func = BTreeMap<IntMatrix, i64>;

fn convolve(o: &FlagOracle, f: &Func, g: &Func) -> Func {
    let mut out = Func::new();
    for (b, x) in f {
        for (a, y) in g {
            if b.co() != a.ro() {
                continue;
            }
            for (c, k) in o.convolve_count(b, a).unwrap() {
                *out.entry(c).or_default() += x * y * k;
            }
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

#[test]
fn convolution_is_associative() {
    let mut rng = seeded_rng(11);
    for n in 1..=3 {
        for d in 1..=2 {
            let o = FlagOracle::new(3, n, d, &Guards::default()).unwrap();
            let th = theta(n, d);
            let mut done = 0;
            while done < 20 {
                let pick = |rng: &mut rand_chacha::ChaCha8Rng| th[rng.gen_range(0..th.len())].clone();
                let (c, b, a) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
                if c.co() != b.ro() || b.co() != a.ro() {
                    continue;
                }
                let one = |x: IntMatrix| Func::from([(x, 1)]);
                let (fc, fb, fa) = (one(c), one(b), one(a));
                let left = convolve(&o, &convolve(&o, &fc, &fb), &fa);
                let right = convolve(&o, &fc, &convolve(&o, &fb, &fa));
                assert_eq!(left, right);
                done += 1;
            }
        }
    }
}

#[test]
fn dimension_split() {
    for n in 1..=3 {
        for d in 1..=4 {
            for a in theta(n, d) {
                let (stab, orbit, dr) = dim_stats(&a);
                assert_eq!(stab + orbit, (d * d) as i64);
                assert!(dr >= 0 && dr <= orbit);
            }
        }
    }
}
