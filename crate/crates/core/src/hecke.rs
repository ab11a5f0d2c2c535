//! The two-parameter Hecke algebra `H_d(v,t)` in the basis `T_w`.

use crate::error::{Error, Result};
use crate::flag_oracle::{FlagOracle, Guards};
use crate::laurent::{vt_minus_vinvt, Poly, RSPoly};
use crate::matrix::IntMatrix;
use crate::report::{Check, Report};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Permutation of `{1..d}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    image: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.image
    }
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let d = image.len();
        let mut seen = vec![false; d + 1];
        for &x in &image {
            if x == 0 || x > d || seen[x] {
                return Err(Error::Schema(format!("{image:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Permutation { image })
    }

    pub fn identity(d: usize) -> Self {
        Permutation { image: (1..=d).collect() }
    }

    /// The simple transposition `s_i` (1-based).
    pub fn simple(d: usize, i: usize) -> Self {
        let mut p = Permutation::identity(d);
        p.image.swap(i - 1, i);
        p
    }

    pub fn d(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// `w(x)` for 1-based `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.image[x - 1]
    }

    /// Coxeter length = number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.image;
        let mut l = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    l += 1;
                }
            }
        }
        l
    }

    /// `w s_i`: swaps positions `i` and `i+1`.
    pub fn times_simple(&self, i: usize) -> Self {
        let mut p = self.clone();
        p.image.swap(i - 1, i);
        p
    }

    /// `w ∘ u`.
    pub fn compose(&self, u: &Permutation) -> Self {
        Permutation { image: u.image.iter().map(|&x| self.image[x - 1]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.d()];
        for (i, &x) in self.image.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { image: inv }
    }

    /// A reduced word `[a_1, ..., a_k]` with `w = s_{a_1} ... s_{a_k}`, found by
    /// peeling right descents.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut out = Vec::new();
        while let Some(i) = (1..w.d()).find(|&i| w.apply(i) > w.apply(i + 1)) {
            out.push(i);
            w = w.times_simple(i);
        }
        out.reverse();
        out
    }

    pub fn all(d: usize) -> Vec<Permutation> {
        fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
            let d = used.len();
            if cur.len() == d {
                out.push(Permutation { image: cur.clone() });
                return;
            }
            for x in 1..=d {
                if !used[x - 1] {
                    used[x - 1] = true;
                    cur.push(x);
                    rec(cur, used, out);
                    cur.pop();
                    used[x - 1] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; d], &mut out);
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.image)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.image.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", s.join(" "))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct HeckeElt {
    d: usize,
    terms: BTreeMap<Permutation, Poly>,
}

impl HeckeElt {
    pub fn zero(d: usize) -> Self {
        HeckeElt { d, terms: BTreeMap::new() }
    }

    pub fn one(d: usize) -> Self {
        HeckeElt::basis(Permutation::identity(d))
    }

    pub fn basis(w: Permutation) -> Self {
        let mut x = HeckeElt::zero(w.d());
        x.add_term(w, Poly::one());
        x
    }

    /// `T_i`.
    pub fn generator(d: usize, i: usize) -> Result<Self> {
        check_index(d, i)?;
        Ok(HeckeElt::basis(Permutation::simple(d, i)))
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &Poly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Permutation) -> Poly {
        self.terms.get(w).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn add_term(&mut self, w: Permutation, c: Poly) {
        if c.is_zero() {
            return;
        }
        let next = match self.terms.remove(&w) {
            Some(old) => &old + &c,
            None => c,
        };
        if !next.is_zero() {
            self.terms.insert(w, next);
        }
    }

    pub fn add(&self, other: &HeckeElt) -> HeckeElt {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &HeckeElt) -> HeckeElt {
        self.add(&other.scale(&-Poly::one()))
    }

    pub fn scale(&self, c: &Poly) -> HeckeElt {
        let mut out = HeckeElt::zero(self.d);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> HeckeElt {
        let mut out = HeckeElt::zero(self.d);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), f(x));
        }
        out
    }

    pub fn to_json(&self) -> Result<serde_json::Value> {
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| Ok(HeckeTermJson { perm: w.clone(), poly: c.to_quads()? }))
            .collect::<Result<Vec<_>>>()?;
        serde_json::to_value(HeckeJson { d: self.d, terms }).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn from_json(v: &serde_json::Value) -> Result<HeckeElt> {
        let j: HeckeJson = serde_json::from_value(v.clone()).map_err(|e| Error::Schema(e.to_string()))?;
        let mut out = HeckeElt::zero(j.d);
        for t in j.terms {
            if t.perm.d() != j.d {
                return Err(Error::Schema(format!("permutation {} has degree != {}", t.perm, j.d)));
            }
            out.add_term(t.perm, Poly::from_quads(&t.poly)?);
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct HeckeTermJson {
    perm: Permutation,
    poly: Vec<[i64; 4]>,
}

#[derive(Serialize, Deserialize)]
struct HeckeJson {
    d: usize,
    terms: Vec<HeckeTermJson>,
}

impl fmt::Debug for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c})T{w}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn check_index(d: usize, i: usize) -> Result<()> {
    if i == 0 || i >= d {
        return Err(Error::IndexOutOfRange(format!("T_{i} with d = {d}")));
    }
    Ok(())
}

/// `x · T_i` by the basis rule.
pub fn mul_ti(x: &HeckeElt, i: usize) -> Result<HeckeElt> {
    check_index(x.d, i)?;
    let q = vt_minus_vinvt();
    let t2 = Poly::vt(0, 2);
    let mut out = HeckeElt::zero(x.d);
    for (w, c) in &x.terms {
        let ws = w.times_simple(i);
        if w.apply(i) < w.apply(i + 1) {
            out.add_term(ws, c.clone());
        } else {
            out.add_term(w.clone(), c * &q);
            out.add_term(ws, c * &t2);
        }
    }
    Ok(out)
}

/// `x · T_w` along a reduced word of `w`.
pub fn mul_tw(x: &HeckeElt, w: &Permutation) -> Result<HeckeElt> {
    let mut out = x.clone();
    for i in w.reduced_word() {
        out = mul_ti(&out, i)?;
    }
    Ok(out)
}

pub fn hecke_mul(x: &HeckeElt, y: &HeckeElt) -> Result<HeckeElt> {
    if x.d != y.d {
        return Err(Error::Incompatible(format!("H_{} vs H_{}", x.d, y.d)));
    }
    let mut out = HeckeElt::zero(x.d);
    for (w, c) in &y.terms {
        out = out.add(&mul_tw(x, w)?.scale(c));
    }
    Ok(out)
}

/// `T_{a_1} ... T_{a_k}`.
pub fn word_product(d: usize, word: &[usize]) -> Result<HeckeElt> {
    let mut x = HeckeElt::one(d);
    for &i in word {
        x = mul_ti(&x, i)?;
    }
    Ok(x)
}

/// The permutation matrix with a 1 in row `w(i)`, column `i`.
pub fn perm_matrix(w: &Permutation) -> IntMatrix {
    let d = w.d();
    let mut m = IntMatrix::zeros(d, d);
    for i in 1..=d {
        m.set(w.apply(i) - 1, i - 1, 1);
    }
    m
}

/// Compares `e_u * e_w`, with `T_w = (v^{-1}t)^{l(w)} e_w`, against complete-flag
/// convolution counts over `F_q`.
pub fn hecke_oracle(d: usize, primes: &[u64], guards: &Guards) -> Result<Report> {
    let mut rep = Report::new("hecke-oracle").param("d", d).param("primes", primes.to_vec());
    let perms = Permutation::all(d);
    let mut table = Vec::new();
    for u in &perms {
        for w in &perms {
            let prod = hecke_mul(&HeckeElt::basis(u.clone()), &HeckeElt::basis(w.clone()))?;
            let shift = (u.length() + w.length()) as i64;
            let mut e = BTreeMap::new();
            for (x, c) in prod.terms() {
                let k = x.length() as i64 - shift;
                e.insert(perm_matrix(x), c * &Poly::vt(-k, k));
            }
            table.push((u, w, e));
        }
    }
    for &p in primes {
        let oracle = FlagOracle::new(p, 1, d, guards)?;
        let mut witness = None;
        'pairs: for (u, w, e) in &table {
            let counts = oracle.convolve_yyy(&perm_matrix(u), &perm_matrix(w))?;
            let mut got = BTreeMap::new();
            for (x, c) in e {
                let at_q = c.eval_q(p as i64);
                match at_q {
                    Ok(y) if y.terms().all(|(k, _)| k == 0) => {
                        got.insert(x.clone(), y.coeff(0));
                    }
                    _ => {
                        witness = Some(format!("e_{u} * e_{w}: coefficient {c} at {x} is not an integer in q"));
                        break 'pairs;
                    }
                }
            }
            got.retain(|_, c| *c != 0);
            if got != counts {
                witness = Some(format!("e_{u} * e_{w}: formula {got:?}, count {counts:?}"));
                break;
            }
        }
        rep.push(
            Check::from_witness(format!("T-basis products = complete flag counts (d={d}, q={p})"), witness)
                .with_detail(format!("{} pairs", table.len())),
        );
    }
    Ok(rep)
}

/// Result of expanding `(T_i - vt)(T_i + v^{-1}t)`.
#[derive(Clone, Debug)]
pub struct QuadraticCertificate {
    pub product: HeckeElt,
    /// Coefficients of `T_i^2`, `T_i`, `1` in `T_i^2 - (vt - v^{-1}t)T_i - t^2`.
    pub vt_coeffs: [Poly; 3],
    pub rs_coeffs: [RSPoly; 3],
}

pub fn quadratic_rs(d: usize, i: usize) -> Result<QuadraticCertificate> {
    let ti = HeckeElt::generator(d, i)?;
    let one = HeckeElt::one(d);
    let left = ti.sub(&one.scale(&Poly::vt(1, 1)));
    let right = ti.add(&one.scale(&Poly::vt(-1, 1)));
    let product = hecke_mul(&left, &right)?;
    let vt_coeffs = [Poly::one(), -vt_minus_vinvt(), -Poly::vt(0, 2)];
    let rs_coeffs = [vt_coeffs[0].to_rs()?, vt_coeffs[1].to_rs()?, vt_coeffs[2].to_rs()?];
    Ok(QuadraticCertificate { product, vt_coeffs, rs_coeffs })
}

/// Quadratic, braid and commutation relations in the regular representation, plus
/// independence of the reduced word.
pub fn verify_hecke(d: usize) -> Result<Report> {
    let mut report = Report::new("hecke").param("d", d);
    let q = vt_minus_vinvt();
    for i in 1..d {
        let ti = HeckeElt::generator(d, i)?;
        let lhs = hecke_mul(&ti, &ti)?;
        let rhs = ti.scale(&q).add(&HeckeElt::one(d).scale(&Poly::vt(0, 2)));
        report.push(Check::from_witness(format!("quadratic T{i}"), diff_witness(&lhs, &rhs)));
        let cert = quadratic_rs(d, i)?;
        report.push(Check::from_witness(
            format!("(T{i}-r)(T{i}+s) = 0"),
            (!cert.product.is_zero()).then(|| cert.product.to_string()),
        ));
    }
    for j in 1..d.saturating_sub(1) {
        let lhs = word_product(d, &[j, j + 1, j])?;
        let rhs = word_product(d, &[j + 1, j, j + 1])?;
        report.push(Check::from_witness(format!("braid T{j}T{}T{j}", j + 1), diff_witness(&lhs, &rhs)));
    }
    for i in 1..d {
        for j in i + 2..d {
            let lhs = word_product(d, &[i, j])?;
            let rhs = word_product(d, &[j, i])?;
            report.push(Check::from_witness(format!("commute T{i}T{j}"), diff_witness(&lhs, &rhs)));
        }
    }
    let mut bad = None;
    for w in Permutation::all(d) {
        if word_product(d, &w.reduced_word())? != HeckeElt::basis(w.clone()) {
            bad = Some(format!("reduced word of {w}"));
            break;
        }
    }
    report.push(Check::from_witness("T_w from reduced words", bad));
    Ok(report)
}

fn diff_witness(a: &HeckeElt, b: &HeckeElt) -> Option<String> {
    let d = a.sub(b);
    (!d.is_zero()).then(|| d.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_and_braid() {
        let t1 = HeckeElt::generator(2, 1).unwrap();
        let sq = hecke_mul(&t1, &t1).unwrap();
        assert_eq!(sq.coeff(&Permutation::simple(2, 1)), vt_minus_vinvt());
        assert_eq!(sq.coeff(&Permutation::identity(2)), Poly::vt(0, 2));
        assert_eq!(hecke_mul(&HeckeElt::one(2), &t1).unwrap(), t1);
        assert!(verify_hecke(3).unwrap().all_pass());
        assert!(verify_hecke(4).unwrap().all_pass());
    }

    #[test]
    fn lengths_and_words() {
        let w = Permutation::new(vec![3, 1, 2]).unwrap();
        assert_eq!(w.length(), 2);
        assert_eq!(w.reduced_word().len(), 2);
        assert_eq!(Permutation::all(3).len(), 6);
        assert!(Permutation::new(vec![1, 1]).is_err());
    }

    #[test]
    fn quadratic_certificate() {
        let c = quadratic_rs(2, 1).unwrap();
        assert!(c.product.is_zero());
        assert_eq!(c.rs_coeffs[1].to_string(), "1*r^0*s^1 + -1*r^1*s^0");
    }
}
