//! Parity idempotents `J_±` (and `J_0`) and the algebras built from them.

use crate::error::{Error, Result};
use crate::laurent::{v_minus_vinv, Poly};
use crate::report::{Check, Report};
use crate::schur::{self, SchurElt};
use crate::tensor::{gen_op, LinOp, SchurOnTensor, Space, TensorModel};
use crate::uvt::{r1_catalog, r2_catalog, r3_catalog, r3_catalog_vt, s_extra_catalog};
use crate::words::{verify_catalog, Combo, Gen, JSign, Relation};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    Tilde,
    Hat,
}

/// The cut index `m` together with the variant; fixes all three projectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JCut {
    pub m: usize,
    pub variant: Variant,
}

/// A single projector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JSpec {
    pub cut: JCut,
    pub sign: JSign,
}

impl JCut {
    pub fn tilde(m: usize) -> Self {
        JCut { m, variant: Variant::Tilde }
    }

    pub fn hat(m: usize) -> Self {
        JCut { m, variant: Variant::Hat }
    }

    pub fn spec(self, sign: JSign) -> JSpec {
        JSpec { cut: self, sign }
    }

    /// Whether `J_sign` keeps weight `lambda` (`lambda[a-1]` = multiplicity of `a`).
    pub fn keeps(&self, sign: JSign, lambda: &[i64]) -> bool {
        let d: i64 = lambda.iter().sum();
        let below: i64 = lambda.iter().take(self.m).sum();
        let clear = match self.variant {
            Variant::Tilde => true,
            Variant::Hat => lambda.get(self.m).copied().unwrap_or(0) == 0,
        };
        let even = (below - d).rem_euclid(2) == 0;
        match sign {
            JSign::Plus => clear && even,
            JSign::Minus => clear && !even,
            JSign::Zero => !clear,
        }
    }
}

impl JSpec {
    pub fn keeps(&self, lambda: &[i64]) -> bool {
        self.cut.keeps(self.sign, lambda)
    }
}

fn w(gens: &[Gen]) -> Combo {
    Combo::word(gens.to_vec())
}

fn jw(s: JSign) -> Gen {
    Gen::J(s)
}

/// `J_sign` as a diagonal operator on `V^{⊗d}`.
pub fn j_operator(spec: JSpec, n: usize, d: usize) -> Result<LinOp> {
    check_cut(spec.cut, n)?;
    gen_op(Space::new(n, d)?, Gen::J(spec.sign), Some(spec.cut))
}

/// `Σ {D_λ}` over the weights `λ` that `J_sign` keeps.
pub fn j_schur_element(spec: JSpec, n: usize, d: usize) -> Result<SchurElt> {
    check_cut(spec.cut, n)?;
    Ok(schur::gen_j(n, d, spec.cut, spec.sign))
}

fn check_cut(cut: JCut, n: usize) -> Result<()> {
    if cut.m == 0 || cut.m >= n {
        return Err(Error::IndexOutOfRange(format!("cut m = {} with n = {n}", cut.m)));
    }
    Ok(())
}

fn signs(cut: JCut) -> Vec<JSign> {
    match cut.variant {
        Variant::Tilde => vec![JSign::Plus, JSign::Minus],
        Variant::Hat => vec![JSign::Plus, JSign::Minus, JSign::Zero],
    }
}

/// Partition of unity, orthogonality, and commutation with the Cartan generators.
fn j_cartan_block(n: usize, cut: JCut) -> Vec<Relation> {
    let ss = signs(cut);
    let mut out = Vec::new();
    let sum = ss.iter().fold(Combo::zero(), |acc, &s| acc.add(&w(&[jw(s)])));
    let label = if cut.variant == Variant::Tilde { "J+ + J- = 1" } else { "J+ + J0 + J- = 1" };
    out.push(Relation::eq(label, sum, Combo::one()));
    for &a in &ss {
        for &b in &ss {
            let rhs = if a == b { w(&[jw(a)]) } else { Combo::zero() };
            out.push(Relation::eq(format!("{}{} = δ", jw(a), jw(b)), w(&[jw(a), jw(b)]), rhs));
        }
        for x in 1..=n {
            for g in [Gen::a(x), Gen::b(x)] {
                out.push(Relation::eq(format!("{}{g} = {g}{}", jw(a), jw(a)), w(&[jw(a), g]), w(&[g, jw(a)])));
            }
        }
    }
    out
}

/// The two-parameter Serre relations between `i` and `i+1` as printed for the J-algebras.
fn j_serre(n: usize) -> Vec<Relation> {
    let mut out = Vec::new();
    let vt_sum = Poly::from_terms([((1, 1), 1), ((-1, 1), 1)]);
    let vt_sum_inv = Poly::from_terms([((1, -1), 1), ((-1, -1), 1)]);
    for i in 1..n.saturating_sub(1) {
        let (e, e1, f, f1) = (Gen::E(i), Gen::E(i + 1), Gen::F(i), Gen::F(i + 1));
        out.push(Relation::new(
            format!("Serre E{i}E{i}E{}", i + 1),
            w(&[e, e, e1])
                .sub(&w(&[e, e1, e]).scale(&vt_sum))
                .add(&w(&[e1, e, e]).scale(&Poly::vt(0, 2))),
        ));
        out.push(Relation::new(
            format!("Serre E{}E{}E{i}", i + 1, i + 1),
            w(&[e1, e1, e])
                .scale(&Poly::vt(0, 2))
                .sub(&w(&[e1, e, e1]).scale(&vt_sum))
                .add(&w(&[e, e1, e1])),
        ));
        out.push(Relation::new(
            format!("Serre F{i}F{i}F{}", i + 1),
            w(&[f, f, f1])
                .sub(&w(&[f, f1, f]).scale(&vt_sum_inv))
                .add(&w(&[f1, f, f]).scale(&Poly::vt(0, -2))),
        ));
        out.push(Relation::new(
            format!("Serre F{}F{}F{i}", i + 1, i + 1),
            w(&[f1, f1, f])
                .scale(&Poly::vt(0, -2))
                .sub(&w(&[f1, f, f1]).scale(&vt_sum_inv))
                .add(&w(&[f, f1, f1])),
        ));
    }
    out
}

/// The defining relations of the tilde algebra at cut `m`.
pub fn tilde_catalog(n: usize, m: usize) -> Vec<Relation> {
    let cut = JCut::tilde(m);
    let mut out = j_cartan_block(n, cut);
    for s in [JSign::Plus, JSign::Minus] {
        let (j, jf) = (jw(s), jw(s.flip()));
        for i in 1..n {
            for x in [Gen::E(i), Gen::F(i)] {
                if i == m {
                    out.push(Relation::eq(format!("{j}{x} = {x}{jf}"), w(&[j, x]), w(&[x, jf])));
                } else {
                    out.push(Relation::eq(format!("{j}{x} = {x}{j}"), w(&[j, x]), w(&[x, j])));
                }
            }
        }
    }
    out.extend(r1_catalog(n));
    out.extend(r2_catalog(n));
    out.extend(r3_catalog_vt(n));
    out.extend(j_serre(n));
    out
}

fn cartan_quotient(a: usize) -> Combo {
    w(&[Gen::a(a), Gen::b(a + 1)]).sub(&w(&[Gen::b(a), Gen::a(a + 1)]))
}

/// Relations (r1)-(r7) and the rest of the hat algebra's definition at cut `m`.
pub fn hat_catalog(n: usize, m: usize) -> Vec<Relation> {
    let cut = JCut::hat(m);
    let mut out = j_cartan_block(n, cut);
    let dm = |i: usize, k: usize| Poly::constant((i != k) as i64);
    for s in [JSign::Plus, JSign::Minus] {
        let (j, jf) = (jw(s), jw(s.flip()));
        for i in 1..n {
            let (e, f) = (Gen::E(i), Gen::F(i));
            let e_alt = w(&[e, j]).scale(&dm(i, m + 1)).sub(&w(&[j, e]).scale(&dm(i, m)));
            let f_alt = w(&[f, j]).scale(&dm(i, m)).sub(&w(&[j, f]).scale(&dm(i, m + 1)));
            let e_label = "(1-δ_{i,m+1})E_iJ = (1-δ_{i,m})JE_i";
            let f_label = "(1-δ_{i,m})F_iJ = (1-δ_{i,m+1})JF_i";
            out.push(
                Relation::eq(format!("r2 {e}{j} = (1-δ_{{i,m}}){j}{e}"), w(&[e, j]), w(&[j, e]).scale(&dm(i, m)))
                    .with_alternate(e_label, e_alt.clone()),
            );
            out.push(
                Relation::eq(format!("r2 {j}{e} = (1-δ_{{i,m+1}}){e}{j}"), w(&[j, e]), w(&[e, j]).scale(&dm(i, m + 1)))
                    .with_alternate(e_label, e_alt),
            );
            out.push(
                Relation::eq(format!("r3 {f}{j} = (1-δ_{{i,m+1}}){j}{f}"), w(&[f, j]), w(&[j, f]).scale(&dm(i, m + 1)))
                    .with_alternate(f_label, f_alt.clone()),
            );
            out.push(
                Relation::eq(format!("r3 {j}{f} = (1-δ_{{i,m}}){f}{j}"), w(&[j, f]), w(&[f, j]).scale(&dm(i, m)))
                    .with_alternate(f_label, f_alt),
            );
        }
        if m + 1 < n {
            let (em, em1, fm, fm1) = (Gen::E(m), Gen::E(m + 1), Gen::F(m), Gen::F(m + 1));
            out.push(Relation::eq(format!("r4 {j}E{m}E{}", m + 1), w(&[j, em, em1]), w(&[em, em1, jf])));
            out.push(Relation::eq(format!("r5 {j}F{}F{m}", m + 1), w(&[j, fm1, fm]), w(&[fm1, fm, jf])));
            let jdiff = w(&[j]).sub(&w(&[jf]));
            let r7 = w(&[j, fm1, em1])
                .sub(&w(&[fm1, em1, jf]))
                .scale(&v_minus_vinv())
                .add(&cartan_quotient(m + 1).mul(&jdiff));
            out.push(Relation::new(format!("r7 {j}F{}E{}", m + 1, m + 1), r7));
        }
        let jdiff = w(&[j]).sub(&w(&[jf]));
        let r6 = w(&[j, Gen::E(m), Gen::F(m)])
            .sub(&w(&[Gen::E(m), Gen::F(m), jf]))
            .scale(&v_minus_vinv())
            .sub(&cartan_quotient(m).mul(&jdiff));
        out.push(Relation::new(format!("r6 {j}E{m}F{m}"), r6));
    }
    out.extend(r1_catalog(n));
    out.extend(r2_catalog(n));
    out.extend(r3_catalog(n));
    out.extend(j_serre(n));
    out
}

fn run(name: &str, model: &TensorModel, rels: &[Relation], n: usize, d: usize, m: usize) -> Result<Report> {
    let mut report = Report::new(name).param("n", n).param("d", d).param("m", m);
    for c in verify_catalog(model, rels)? {
        report.push(c);
    }
    // The Schur-algebra relations are unaffected by adjoining the J's.
    for c in verify_catalog(model, &s_extra_catalog(n, d))? {
        report.push(c);
    }
    Ok(report)
}

pub fn verify_tilde_relations(n: usize, d: usize, m: usize) -> Result<Report> {
    check_cut(JCut::tilde(m), n)?;
    let model = TensorModel::with_cut(n, d, JCut::tilde(m))?;
    let mut report = run("jparity-tilde", &model, &tilde_catalog(n, m), n, d, m)?;
    report.push(schur_agreement(n, d, JCut::tilde(m))?);
    Ok(report)
}

pub fn verify_hat_relations(n: usize, d: usize, m: usize) -> Result<Report> {
    check_cut(JCut::hat(m), n)?;
    let model = TensorModel::with_cut(n, d, JCut::hat(m))?;
    let mut report = run("jparity-hat", &model, &hat_catalog(n, m), n, d, m)?;
    if m + 1 >= n {
        report.push(Check::skip("r4 r5 r7", format!("need m + 2 <= n (m = {m}, n = {n})")));
    }
    report.push(schur_agreement(n, d, JCut::hat(m))?);
    Ok(report)
}

/// The Schur-algebra `J`'s act on tensor space as the projectors.
fn schur_agreement(n: usize, d: usize, cut: JCut) -> Result<Check> {
    let name = "J in the Schur algebra acts as the tensor projector";
    if n < d {
        return Ok(Check::skip(name, "needs n >= d"));
    }
    let s = SchurOnTensor::new(n, d)?;
    for sign in signs(cut) {
        let spec = cut.spec(sign);
        let lhs = s.op(&j_schur_element(spec, n, d)?)?;
        let rhs = j_operator(spec, n, d)?;
        if let Some(w) = lhs.sub(&rhs)?.witness() {
            return Ok(Check::fail(name, format!("{}: {w}", jw(sign))));
        }
    }
    Ok(Check::pass(name))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::support;

    #[test]
    fn projectors() {
        let p = j_operator(JCut::tilde(1).spec(JSign::Plus), 2, 2).unwrap();
        assert_eq!(support(&p).into_iter().collect::<Vec<_>>(), vec![vec![1, 1], vec![2, 2]]);
        let z = j_operator(JCut::hat(1).spec(JSign::Zero), 3, 1).unwrap();
        assert_eq!(support(&z).into_iter().collect::<Vec<_>>(), vec![vec![2]]);
        let p = j_operator(JCut::hat(1).spec(JSign::Plus), 3, 1).unwrap();
        assert!(!support(&p).contains(&vec![2]));
    }

    #[test]
    fn suites() {
        for (n, d, m) in [(2, 2, 1), (3, 2, 1), (3, 3, 2)] {
            let r = verify_tilde_relations(n, d, m).unwrap();
            assert!(r.all_pass(), "{r}");
        }
        for (n, d, m) in [(3, 2, 1), (4, 2, 2)] {
            let r = verify_hat_relations(n, d, m).unwrap();
            assert!(r.all_pass(), "{r}");
        }
    }
}
