//! The order-two symmetry `σ: (v, t) ↦ (-v, -t)` and descent to `r = vt`, `s = v^{-1}t`.

use crate::error::Result;
use crate::hecke::{mul_ti, quadratic_rs, HeckeElt, Permutation};
use crate::laurent::{Poly, RSPoly};
use crate::report::{Check, Report};
use crate::schur::SchurElt;
use crate::tensor::{gen_op, t_op, LinOp, Space, TensorElt};
use crate::uvt::u_catalog;
use crate::words::{verify_relation_in, Combo, Gen, Model, Relation};

/// `v^a t^b ↦ (-1)^{a+b} v^a t^b`.
pub fn sigma_poly(p: &Poly) -> Poly {
    let mut out = Poly::zero();
    for (a, b, c) in p.terms() {
        let c = if (a + b).rem_euclid(2) == 0 { *c } else { -*c };
        out.add_term(a, b, c);
    }
    out
}

/// Sign of `σ` on a generator: `E_i ↦ -E_i`, everything else fixed.
pub fn sigma_gen_sign(g: Gen) -> i64 {
    match g {
        Gen::E(_) => -1,
        _ => 1,
    }
}

/// `σ` on a carrier. Basis elements (`{A}`, `T_w`, `v_r`) are fixed, so `σ` acts on coefficients.
pub trait Sigma: Sized + PartialEq {
    fn sigma(&self) -> Self;

    fn is_fixed(&self) -> bool {
        self.sigma() == *self
    }
}

impl Sigma for Poly {
    fn sigma(&self) -> Self {
        sigma_poly(self)
    }
}

impl Sigma for SchurElt {
    fn sigma(&self) -> Self {
        self.map_coeffs(sigma_poly)
    }
}

impl Sigma for HeckeElt {
    fn sigma(&self) -> Self {
        self.map_coeffs(sigma_poly)
    }
}

impl Sigma for TensorElt {
    fn sigma(&self) -> Self {
        self.map_coeffs(sigma_poly)
    }
}

impl Sigma for LinOp {
    fn sigma(&self) -> Self {
        self.map_coeffs(sigma_poly)
    }
}

pub fn fixed_check<X: Sigma>(x: &X) -> bool {
    x.is_fixed()
}

/// Coefficients rewritten in `(r, s)`; fails with `NotDescendable` on an odd monomial.
pub fn descend<'a, K: Clone + 'a>(terms: impl IntoIterator<Item = (&'a K, &'a Poly)>) -> Result<Vec<(K, RSPoly)>> {
    terms.into_iter().map(|(k, c)| Ok((k.clone(), c.to_rs()?))).collect()
}

pub fn descend_schur(x: &SchurElt) -> Result<Vec<(crate::IntMatrix, RSPoly)>> {
    descend(x.terms())
}

pub fn descend_hecke(x: &HeckeElt) -> Result<Vec<(Permutation, RSPoly)>> {
    descend(x.terms())
}

pub fn descend_tensor(x: &TensorElt) -> Result<Vec<(Vec<usize>, RSPoly)>> {
    descend(x.terms())
}

/// `σ(g·x) = σ(g)·σ(x)` on every basis vector, and `σ(x T_j) = σ(x) T_j`.
pub fn equivariance_check(n: usize, d: usize) -> Result<Report> {
    let space = Space::new(n, d)?;
    let mut report = Report::new("equivariance").param("n", n).param("d", d);
    for g in Gen::all(n) {
        let op = gen_op(space, g, None)?;
        let lhs = op.sigma();
        let rhs = op.scale(&Poly::constant(sigma_gen_sign(g)));
        report.push(Check::from_witness(format!("σ({g}·x) = σ({g})·σ(x)"), lhs.sub(&rhs)?.witness()));
    }
    for j in 1..d {
        let op = t_op(space, j)?;
        report.push(Check::from_witness(format!("σ(x·T{j}) = σ(x)·T{j}"), op.sigma().sub(&op)?.witness()));
    }
    Ok(report)
}

/// Tensor operators with `E_i` replaced by the `σ`-fixed `tE_i`.
struct Descended {
    inner: crate::tensor::TensorModel,
}

impl Model for Descended {
    type Elt = LinOp;

    fn identity(&self) -> LinOp {
        self.inner.identity()
    }

    fn left_mul(&self, g: Gen, x: &LinOp) -> Result<LinOp> {
        let y = self.inner.left_mul(g, x)?;
        Ok(if matches!(g, Gen::E(_)) { y.scale(&Poly::t()) } else { y })
    }

    fn lin_comb(&self, terms: &[(Poly, LinOp)]) -> LinOp {
        self.inner.lin_comb(terms)
    }

    fn witness(&self, x: &LinOp) -> Option<String> {
        self.inner.witness(x)
    }
}

/// Rewrites a combination in `E` for the generator `tE`: each word picks up `t^{-#E}`,
/// then the whole relation is normalized by `t` if its coefficients are odd.
pub fn rewrite_for_descent(c: &Combo) -> Combo {
    let mut out = Combo::zero();
    for (w, k) in c.terms() {
        let e = w.iter().filter(|g| matches!(g, Gen::E(_))).count() as i64;
        out.add_term(k * &Poly::vt(0, -e), w.clone());
    }
    let odd = out
        .terms()
        .next()
        .and_then(|(_, k)| k.terms().next().map(|(a, b, _)| (a + b).rem_euclid(2) == 1))
        .unwrap_or(false);
    if odd {
        out.scale(&Poly::t())
    } else {
        out
    }
}

fn rs_certificate(c: &Combo) -> std::result::Result<String, String> {
    let mut parts = Vec::new();
    for (w, k) in c.terms() {
        let rs = k.to_rs().map_err(|e| format!("{} on {}", e, crate::words::word_string(w)))?;
        parts.push(format!("({rs})·{}", crate::words::word_string(w)));
    }
    Ok(parts.join(" + "))
}

fn descend_relation(model: &Descended, rel: &Relation) -> Result<Check> {
    let printed = rewrite_for_descent(&rel.printed);
    let mut r = Relation::new(format!("descended {}", rel.id), printed.clone());
    if let Some((label, alt)) = &rel.alternate {
        r = r.with_alternate(label, rewrite_for_descent(alt));
    }
    let check = verify_relation_in(model, &r)?;
    if !check.passed() {
        return Ok(check);
    }
    let held = match &check.form {
        Some(f) if f.starts_with("alternate") => r.alternate.as_ref().map(|(_, c)| c.clone()).unwrap_or(printed),
        _ => printed,
    };
    Ok(match rs_certificate(&held) {
        Ok(cert) => check.with_detail(cert),
        Err(w) => Check::fail(r.id, format!("not descendable: {w}")),
    })
}

/// (i) the descended generators are `σ`-fixed; (ii) the defining relations, rewritten
/// for `tE_i`, have `(r, s)` coefficients and hold; (iii) the fixed part of tensor space
/// has dimension `n^d`; (iv) the Hecke algebra descends to `(T - r)(T + s) = 0`.
pub fn descent_suite(n: usize, d: usize) -> Result<Report> {
    let space = Space::new(n, d)?;
    let mut report = Report::new("descend").param("n", n).param("d", d);
    for g in Gen::all(n) {
        let mut op = gen_op(space, g, None)?;
        let name = if matches!(g, Gen::E(_)) {
            op = op.scale(&Poly::t());
            format!("(i) t{g} fixed")
        } else {
            format!("(i) {g} fixed")
        };
        report.push(Check::from_witness(name, op.sigma().sub(&op)?.witness()));
    }
    let model = Descended { inner: crate::tensor::TensorModel::new(n, d)? };
    for rel in u_catalog(n)? {
        let c = descend_relation(&model, &rel)?;
        report.push(Check { name: format!("(ii) {}", c.name), ..c });
    }
    let fixed = space.seqs().filter(|r| TensorElt::basis(n, r.clone()).map(|x| x.is_fixed()).unwrap_or(false)).count();
    let check = if fixed == space.dim() {
        Check::pass("(iii) fixed tensor basis")
    } else {
        Check::fail("(iii) fixed tensor basis", format!("{fixed} of {}", space.dim()))
    };
    report.push(check.with_detail(format!("dimension {fixed}")));
    for i in 1..d {
        let cert = quadratic_rs(d, i)?;
        let want = [RSPoly::monomial(0, 0, 1), rs_sum(&[(1, 0, -1), (0, 1, 1)]), RSPoly::monomial(1, 1, -1)];
        let ok = cert.product.is_zero() && cert.rs_coeffs == want;
        let cs: Vec<String> = cert.rs_coeffs.iter().map(|c| c.to_string()).collect();
        let c = if ok {
            Check::pass(format!("(iv) (T{i}-r)(T{i}+s) = 0"))
        } else {
            Check::fail(format!("(iv) (T{i}-r)(T{i}+s) = 0"), cs.join(", "))
        };
        report.push(c.with_detail(cs.join(", ")));
        let op = t_op(space, i)?;
        report.push(Check::from_witness(format!("(iv) T{i} fixed"), op.sigma().sub(&op)?.witness()));
    }
    let mut bad = None;
    'outer: for w in Permutation::all(d) {
        for i in 1..d {
            let x = mul_ti(&HeckeElt::basis(w.clone()), i)?;
            if let Err(e) = descend_hecke(&x) {
                bad = Some(format!("T{w}·T{i}: {e}"));
                break 'outer;
            }
        }
    }
    report.push(Check::from_witness("(iv) structure constants in (r, s)", bad));
    if d >= 3 {
        let braid = crate::hecke::verify_hecke(d)?;
        let fails: Vec<String> = braid.failures().iter().map(|c| c.name.clone()).collect();
        report.push(Check::from_witness("(iv) braid and commutation", (!fails.is_empty()).then(|| fails.join(", "))));
    }
    Ok(report)
}

fn rs_sum(terms: &[(i64, i64, i64)]) -> RSPoly {
    let mut p = RSPoly::zero();
    for &(x, y, c) in terms {
        p.add_term(x, y, c);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::vt_minus_vinvt;

    #[test]
    fn sigma_on_polys() {
        assert_eq!(sigma_poly(&Poly::vt(1, 1)), Poly::vt(1, 1));
        assert_eq!(sigma_poly(&Poly::v()), -Poly::v());
        assert_eq!(sigma_poly(&vt_minus_vinvt()), vt_minus_vinvt());
        let p = Poly::from_terms([((1, 0), 3), ((2, 1), -2), ((0, 0), 5)]);
        assert_eq!(sigma_poly(&sigma_poly(&p)), p);
    }

    #[test]
    fn fixed_operators() {
        let s = Space::new(2, 1).unwrap();
        let e = gen_op(s, Gen::E(1), None).unwrap();
        assert!(!fixed_check(&e));
        assert!(fixed_check(&e.scale(&Poly::t())));
        assert!(fixed_check(&gen_op(s, Gen::a(1), None).unwrap()));
        let x = TensorElt::basis(2, vec![1]).unwrap().scale(&Poly::v());
        assert!(descend_tensor(&x).is_err());
    }

    #[test]
    fn suites() {
        for (n, d) in [(2, 2), (3, 2)] {
            let r = equivariance_check(n, d).unwrap();
            assert!(r.all_pass(), "{r}");
            let r = descent_suite(n, d).unwrap();
            assert!(r.all_pass(), "{r}");
        }
        assert!(descent_suite(2, 3).unwrap().all_pass());
    }

    #[test]
    fn round_trip() {
        let p = Poly::from_terms([((1, 1), 2), ((-1, 3), -1), ((0, 2), 7)]);
        assert_eq!(p.to_rs().unwrap().to_vt(), p);
    }
}
