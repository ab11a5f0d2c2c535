//! The limit algebra on integer matrices with nonnegative off-diagonal entries:
//! stabilized Chevalley products, extraction of structure constants in the
//! auxiliary variables `(v', t')`, and a finite weight-window model of the completion.

use crate::error::{Error, Result};
use crate::laurent::{is_integral_rational, v_minus_vinv, Poly};
use crate::linalg::{solve, SparseVec};
use crate::matrix::IntMatrix;
use crate::report::{Check, Report};
use crate::schur::{chevalley_e_terms, chevalley_f_terms, chevalley_matrix, mult_chev_e, mult_chev_f, theta, Regime, SchurElt};
use crate::uvt::u_catalog;
use crate::words::{verify_catalog, Gen, Model};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Membership in the index set of the limit algebra.
pub fn is_stab(a: &IntMatrix) -> bool {
    a.rows() == a.cols() && a.offdiag_nonnegative()
}

/// The primed variant: additionally entry `(m+1, m+1)` is nonnegative (`m` 1-based).
pub fn is_stab_primed(a: &IntMatrix, m: usize) -> bool {
    is_stab(a) && Regime::StabPrimed(m).admits(a)
}

fn require_stab(a: &IntMatrix) -> Result<()> {
    if is_stab(a) {
        Ok(())
    } else {
        Err(Error::Incompatible(format!("{a} has a negative off-diagonal entry or is not square")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShiftMode {
    /// `A + pI`.
    I,
    /// `A + 2pI`.
    TwoI,
    /// `A + 2pI'` with `I' = I - E_{m+1,m+1}`.
    TwoIPrime(usize),
}

impl ShiftMode {
    pub fn amount(self, p: i64) -> i64 {
        match self {
            ShiftMode::I => p,
            ShiftMode::TwoI | ShiftMode::TwoIPrime(_) => 2 * p,
        }
    }

    pub fn regime(self) -> Regime {
        match self {
            ShiftMode::TwoIPrime(m) => Regime::StabPrimed(m),
            _ => Regime::Stab,
        }
    }

    fn shifts(self, i: usize) -> bool {
        !matches!(self, ShiftMode::TwoIPrime(m) if m == i)
    }
}

impl fmt::Display for ShiftMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShiftMode::I => write!(f, "I"),
            ShiftMode::TwoI => write!(f, "2I"),
            ShiftMode::TwoIPrime(m) => write!(f, "2I'(m={m})"),
        }
    }
}

/// Diagonal shift of `a` by `p` in the given mode.
pub fn shift(a: &IntMatrix, p: i64, mode: ShiftMode) -> Result<IntMatrix> {
    require_stab(a)?;
    let s = mode.amount(p);
    let mut out = a.clone();
    for i in 0..a.rows() {
        if mode.shifts(i) {
            out.add_at(i, i, s);
        }
    }
    if out.ro().iter().chain(out.co().iter()).any(|&x| x < 0) {
        return Err(Error::InfeasibleShift(format!("{a} shifted by {s} has a negative row or column sum")));
    }
    Ok(out)
}

fn unshift(a: &IntMatrix, s: i64, mode: ShiftMode) -> IntMatrix {
    let mut out = a.clone();
    for i in 0..a.rows() {
        if mode.shifts(i) {
            out.add_at(i, i, -s);
        }
    }
    out
}

/// A finite linear combination of `{A}`, `A` in the limit index set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KElt {
    n: usize,
    terms: BTreeMap<IntMatrix, Poly>,
}

impl KElt {
    pub fn zero(n: usize) -> Self {
        KElt { n, terms: BTreeMap::new() }
    }

    pub fn basis(a: &IntMatrix) -> Result<Self> {
        require_stab(a)?;
        let mut x = KElt::zero(a.rows());
        x.add_term(a.clone(), Poly::one());
        Ok(x)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IntMatrix, &Poly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: &IntMatrix) -> Poly {
        self.terms.get(a).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn add_term(&mut self, a: IntMatrix, c: Poly) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(a.clone()).or_insert_with(Poly::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&a);
        }
    }

    pub fn add(&self, other: &KElt) -> KElt {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &KElt) -> KElt {
        self.add(&other.scale(&Poly::constant(-1)))
    }

    pub fn scale(&self, c: &Poly) -> KElt {
        let mut out = KElt::zero(self.n);
        for (a, x) in &self.terms {
            out.add_term(a.clone(), x * c);
        }
        out
    }

    /// The terms whose matrix satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&IntMatrix) -> bool) -> KElt {
        KElt { n: self.n, terms: self.terms.iter().filter(|(a, _)| keep(a)).map(|(a, c)| (a.clone(), c.clone())).collect() }
    }
}

impl fmt::Display for KElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(a, c)| format!("({c}){{{a}}}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `(upper, h, r)` for a Chevalley-type matrix; a diagonal matrix gives `r = 0`.
fn chevalley_shape(b: &IntMatrix) -> Option<(bool, usize, i64)> {
    if b.is_diagonal() {
        return Some((true, 1, 0));
    }
    if let Some((h, r)) = b.upper_chevalley() {
        return Some((true, h, r));
    }
    b.lower_chevalley().map(|(h, r)| (false, h, r))
}

/// `{B} * {A}` in the limit algebra restricted to `regime`.
pub fn stab_mult_in(b: &IntMatrix, a: &IntMatrix, regime: Regime) -> Result<KElt> {
    require_stab(b)?;
    require_stab(a)?;
    if b.rows() != a.rows() || b.co() != a.ro() {
        return Err(Error::Incompatible(format!("co({b}) != ro({a})")));
    }
    if !regime.admits(a) || !regime.admits(b) {
        return Err(Error::Incompatible(format!("{b} or {a} lies outside the index set")));
    }
    let (upper, h, r) =
        chevalley_shape(b).ok_or_else(|| Error::Incompatible(format!("{b} is not of Chevalley type")))?;
    let mut out = KElt::zero(a.rows());
    if r == 0 {
        out.add_term(a.clone(), Poly::one());
        return Ok(out);
    }
    let terms = if upper { chevalley_e_terms(h, r, a, regime)? } else { chevalley_f_terms(h, r, a, regime)? };
    for (m, c) in terms {
        out.add_term(m, c);
    }
    Ok(out)
}

/// `{B} * {A}` for `B - rE_{h,h+1}` diagonal.
pub fn stab_mult_e(b: &IntMatrix, a: &IntMatrix) -> Result<KElt> {
    if !b.is_diagonal() && b.upper_chevalley().is_none() {
        return Err(Error::Incompatible(format!("{b} is not of upper Chevalley type")));
    }
    stab_mult_in(b, a, Regime::Stab)
}

/// `{C} * {A}` for `C - rE_{h+1,h}` diagonal.
pub fn stab_mult_f(c: &IntMatrix, a: &IntMatrix) -> Result<KElt> {
    if !c.is_diagonal() && c.lower_chevalley().is_none() {
        return Err(Error::Incompatible(format!("{c} is not of lower Chevalley type")));
    }
    stab_mult_in(c, a, Regime::Stab)
}

/// On natural inputs the limit product, cut down to natural matrices, is the
/// finite Chevalley product.
pub fn compatibility_check(n: usize, d: usize) -> Result<Check> {
    let name = format!("stab_mult = mult_chev (n={n}, d={d})");
    let mut count = 0;
    for a in theta(n, d) {
        let x = SchurElt::basis_elt(&a)?;
        for upper in [true, false] {
            for h in 1..n {
                for r in 0..=d as i64 {
                    let b = chevalley_matrix(upper, h, r, &a.ro())?;
                    if !b.is_nonnegative() {
                        continue;
                    }
                    let finite = if upper { mult_chev_e(&b, &x)? } else { mult_chev_f(&b, &x)? };
                    let limit = stab_mult_in(&b, &a, Regime::Stab)?.filter(|m| m.is_nonnegative());
                    let lhs: BTreeMap<_, _> = finite.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
                    if lhs != limit.terms {
                        return Ok(Check::fail(name, format!("{{{b}}}{{{a}}}: {finite} vs {limit}")));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(Check::pass(name).with_detail(format!("{count} products")))
}

/// `G = N / den` with `N` a polynomial in `(v', t')` with Laurent coefficients
/// in `(v, t)` and `den` a Laurent polynomial in `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fit {
    pub z: IntMatrix,
    /// `(k, l) -> g_{kl}` for the monomial `v'^k t'^l` of `N`.
    pub g: BTreeMap<(i64, i64), Poly>,
    pub den: Poly,
    pub unknowns: usize,
    pub rank: usize,
}

/// `prod_{i=1}^r (v^{-2i} - 1)`, which clears every binomial denominator of a rank-`r` product.
pub fn fit_denominator(r: i64) -> Poly {
    let mut out = Poly::one();
    for i in 1..=r {
        out = &out * &Poly::from_terms([((-2 * i, 0), 1), ((0, 0), -1)]);
    }
    out
}

impl Fit {
    /// `G(v, 1, t, 1)`.
    pub fn at_one(&self) -> Result<Poly> {
        let mut out = Poly::zero();
        for c in self.g.values() {
            out = &out + c;
        }
        out.div_exact(&self.den)
    }

    /// `G(v, v^{-s}, t, t^s)`.
    pub fn at_shift(&self, s: i64) -> Result<Poly> {
        let mut out = Poly::zero();
        for (&(k, l), c) in &self.g {
            out = &out + &c.shift(-k * s, l * s);
        }
        out.div_exact(&self.den)
    }

    pub fn depends_on_shift(&self) -> bool {
        self.g.keys().any(|&kl| kl != (0, 0))
    }

    pub fn determined(&self) -> bool {
        self.rank == self.unknowns
    }

    pub fn formula(&self) -> String {
        if self.g.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self.g.iter().map(|(&(k, l), c)| format!("({c})*v'^{k}*t'^{l}")).collect();
        format!("[{}] / ({})", parts.join(" + "), self.den)
    }
}

/// Fits `den * c_s = N(v, v^{-s}, t, t^s)` for the observed `(s, c_s)`, with
/// `v'`- and `t'`-degrees of `N` in `[0, max_deg]`.
pub fn fit_pattern(z: &IntMatrix, points: &[(i64, Poly)], den: &Poly, max_deg: i64) -> Result<Fit> {
    let points: Vec<(i64, Poly)> = points.iter().map(|(s, c)| (*s, c * den)).collect();
    let mut unknowns: Vec<(i64, i64, i64, i64)> = Vec::new();
    for k in 0..=max_deg {
        for l in 0..=max_deg {
            let mut cand: Option<BTreeSet<(i64, i64)>> = None;
            for (s, c) in &points {
                let here: BTreeSet<(i64, i64)> = c.terms().map(|(a, b, _)| (a + k * s, b - l * s)).collect();
                cand = Some(match cand {
                    None => here,
                    Some(prev) => prev.intersection(&here).copied().collect(),
                });
            }
            for (alpha, beta) in cand.unwrap_or_default() {
                unknowns.push((k, l, alpha, beta));
            }
        }
    }
    let mut rows: BTreeMap<(usize, i64, i64), SparseVec> = BTreeMap::new();
    for (pi, (s, c)) in points.iter().enumerate() {
        for (a, b, _) in c.terms() {
            rows.entry((pi, a, b)).or_default();
        }
        for (u, &(k, l, alpha, beta)) in unknowns.iter().enumerate() {
            let row = rows.entry((pi, alpha - k * s, beta + l * s)).or_default();
            row.insert(u, BigRational::from_integer(1.into()));
        }
    }
    let eqs: Vec<(SparseVec, BigRational)> = rows
        .into_iter()
        .map(|((pi, a, b), row)| (row, BigRational::from_integer(points[pi].1.coeff(a, b).into())))
        .collect();
    let inconsistent = || Error::FitInconsistent(format!("coefficients of {{{z}}} follow no single pattern"));
    let (x, rank) = solve(unknowns.len(), eqs).ok_or_else(inconsistent)?;
    let mut g: BTreeMap<(i64, i64), Poly> = BTreeMap::new();
    for (&(k, l, alpha, beta), val) in unknowns.iter().zip(&x) {
        if val.is_zero() {
            continue;
        }
        if !is_integral_rational(val) {
            return Err(inconsistent());
        }
        let c = val.to_integer().to_i64().ok_or_else(inconsistent)?;
        g.entry((k, l)).or_insert_with(Poly::zero).add_term(alpha, beta, c);
    }
    g.retain(|_, c| !c.is_zero());
    Ok(Fit { z: z.clone(), g, den: den.clone(), unknowns: unknowns.len(), rank })
}

/// Products `{pA1} * {pA2}` in the finite algebras, for each `p`, fitted per
/// output matrix. `A1` must be of Chevalley type.
pub fn fit_products(a1: &IntMatrix, a2: &IntMatrix, p_list: &[i64], mode: ShiftMode) -> Result<Vec<Fit>> {
    require_stab(a1)?;
    require_stab(a2)?;
    let (upper, _, r) =
        chevalley_shape(a1).ok_or_else(|| Error::Incompatible(format!("{a1} is not of Chevalley type")))?;
    if a1.co() != a2.ro() {
        return Err(Error::Incompatible(format!("co({a1}) != ro({a2})")));
    }
    if p_list.len() < 3 {
        return Err(Error::Unsupported("a fit needs at least three shifts".into()));
    }
    let p0 = a1.diagonal().iter().chain(a2.diagonal().iter()).map(|x| x.abs()).max().unwrap_or(0) + r;
    let mut observed: BTreeMap<IntMatrix, BTreeMap<usize, Poly>> = BTreeMap::new();
    for (pi, &p) in p_list.iter().enumerate() {
        let s = mode.amount(p);
        if s < p0 {
            return Err(Error::Unsupported(format!("shift {s} is below p0 = {p0}")));
        }
        let (b, a) = (shift(a1, p, mode)?, shift(a2, p, mode)?);
        if !b.is_nonnegative() || !a.is_nonnegative() {
            return Err(Error::InfeasibleShift(format!("{a1}, {a2} at p = {p}")));
        }
        let x = SchurElt::basis_elt(&a)?;
        let prod = if upper { mult_chev_e(&b, &x)? } else { mult_chev_f(&b, &x)? };
        for (m, c) in prod.terms() {
            observed.entry(unshift(m, s, mode)).or_default().insert(pi, c.clone());
        }
    }
    let mut fits = Vec::new();
    for (z, by_p) in observed {
        let points: Vec<(i64, Poly)> = p_list
            .iter()
            .enumerate()
            .map(|(pi, &p)| (mode.amount(p), by_p.get(&pi).cloned().unwrap_or_else(Poly::zero)))
            .collect();
        fits.push(fit_pattern(&z, &points, &fit_denominator(r), 2 * r)?);
    }
    Ok(fits)
}

/// Fits the shifted products and compares the `v' = t' = 1` limit with the
/// limit-algebra product.
pub fn stabilization_check(a1: &IntMatrix, a2: &IntMatrix, p_list: &[i64], mode: ShiftMode) -> Result<Report> {
    let fits = fit_products(a1, a2, p_list, mode)?;
    let limit = stab_mult_in(a1, a2, mode.regime())?;
    let mut rep = Report::new("stab-fit")
        .param("a1", a1.to_string())
        .param("a2", a2.to_string())
        .param("mode", mode.to_string())
        .param("p_list", p_list.to_vec());
    let mut seen = BTreeSet::new();
    for f in &fits {
        seen.insert(f.z.clone());
        let name = format!("G {{{}}}", f.z);
        if !f.determined() {
            rep.push(Check::fail(name, format!("underdetermined: rank {} of {}", f.rank, f.unknowns)));
            continue;
        }
        let want = limit.coeff(&f.z);
        let got = f.at_one()?;
        let check = if got == want {
            Check::pass(name)
        } else {
            Check::fail(name, format!("G(v,1,t,1) = {got}, limit product gives {want}"))
        };
        rep.push(check.with_detail(f.formula()));
    }
    for (z, c) in limit.terms() {
        if !seen.contains(z) {
            rep.push(Check::fail(format!("G {{{z}}}"), format!("limit term ({c}) absent from every shifted product")));
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug)]
pub struct StabPair {
    pub name: String,
    pub a1: IntMatrix,
    pub a2: IntMatrix,
    pub mode: ShiftMode,
}

fn pair(upper: bool, h: usize, r: i64, a2: &[Vec<i64>], mode: ShiftMode) -> StabPair {
    let a2 = IntMatrix::from_rows(a2).expect("square");
    let a1 = chevalley_matrix(upper, h, r, &a2.ro()).expect("valid h");
    let tag = if r == 0 { "D".to_string() } else { format!("{}{h}^{r}", if upper { "E" } else { "F" }) };
    StabPair { name: format!("{tag} * {a2} [{mode}]"), a1, a2, mode }
}

/// Ten pairs for `n = 2, 3`, including diagonal and rank-2 cases and both doubled shifts.
pub fn stab_catalog() -> Vec<StabPair> {
    use ShiftMode::*;
    vec![
        pair(true, 1, 1, &[vec![0, 0], vec![0, 0]], I),
        pair(true, 1, 1, &[vec![1, 0], vec![0, 2]], I),
        pair(false, 1, 1, &[vec![1, 2], vec![0, 1]], I),
        pair(true, 1, 2, &[vec![0, 1], vec![3, -1]], I),
        pair(true, 1, 0, &[vec![2, 0], vec![0, -1]], I),
        pair(false, 1, 2, &[vec![0, 1], vec![2, -1]], I),
        pair(true, 1, 1, &[vec![1, 1, 0], vec![0, 0, 2], vec![1, 0, -1]], I),
        pair(false, 2, 1, &[vec![0, 1, 1], vec![1, -2, 0], vec![0, 1, 1]], I),
        pair(true, 2, 2, &[vec![2, 0, 1], vec![1, 1, 0], vec![0, 1, 0]], TwoI),
        pair(false, 1, 2, &[vec![0, 2, 0], vec![1, 0, 1], vec![0, 0, -1]], TwoIPrime(1)),
    ]
}

/// `stabilization_check` over the catalog; a fit error becomes a failing check.
pub fn stab_catalog_suite(p_list: &[i64]) -> Report {
    let mut rep = Report::new("stab-fit").param("p_list", p_list.to_vec());
    for pr in stab_catalog() {
        let check = match stabilization_check(&pr.a1, &pr.a2, p_list, pr.mode) {
            Ok(r) if r.all_pass() => {
                let dep = fit_products(&pr.a1, &pr.a2, p_list, pr.mode)
                    .map(|fs| fs.iter().any(Fit::depends_on_shift))
                    .unwrap_or(false);
                Check::pass(&pr.name).with_detail(format!("{} outputs, v'/t' dependence: {dep}", r.checks.len()))
            }
            Ok(r) => {
                let w: Vec<String> = r
                    .failures()
                    .iter()
                    .map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default()))
                    .collect();
                Check::fail(&pr.name, w.join("; "))
            }
            Err(e) => Check::fail(&pr.name, e.to_string()),
        };
        rep.push(check);
    }
    rep
}

/// Diagonal entries of window matrices lie in `[-w, w]`; assertions are made
/// only on column profiles at least `margin` away from the boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightWindow {
    pub w: i64,
    pub margin: i64,
}

impl WeightWindow {
    pub fn new(w: i64, margin: i64) -> Result<Self> {
        if w < 1 || margin < 0 || margin > w {
            return Err(Error::Unsupported(format!("window W = {w}, margin = {margin}")));
        }
        Ok(WeightWindow { w, margin })
    }

    pub fn widened(self) -> Self {
        WeightWindow { w: self.w + 1, margin: self.margin + 1 }
    }

    /// All `λ ∈ [-w, w]^n`.
    pub fn weights(&self, n: usize) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|p| (-self.w..=self.w).map(move |x| [p.clone(), vec![x]].concat()))
                .collect();
        }
        out
    }

    pub fn interior(&self, co: &[i64]) -> bool {
        co.iter().all(|x| x.abs() <= self.w - self.margin)
    }
}

/// Truncation of `Σ_λ v^{Σλ_k j_k} t^{Σλ_k|j_k|} {A0 + D_λ}` to the window.
pub fn ahat(a0: &IntMatrix, j: &[i64], window: &WeightWindow) -> Result<KElt> {
    require_stab(a0)?;
    if a0.diagonal().iter().any(|&x| x != 0) {
        return Err(Error::Incompatible(format!("{a0} has a nonzero diagonal")));
    }
    let n = a0.rows();
    if j.len() != n {
        return Err(Error::Incompatible(format!("weight vector of length {} for n = {n}", j.len())));
    }
    let mut out = KElt::zero(n);
    for lam in window.weights(n) {
        let a: i64 = lam.iter().zip(j).map(|(l, x)| l * x).sum();
        let b: i64 = lam.iter().zip(j).map(|(l, x)| l * x.abs()).sum();
        out.add_term(a0.add(&IntMatrix::diag(&lam)), Poly::vt(a, b));
    }
    Ok(out)
}

/// `0(j)`.
pub fn zero_j(j: &[i64], window: &WeightWindow) -> Result<KElt> {
    ahat(&IntMatrix::zeros(j.len(), j.len()), j, window)
}

/// Letters acting on the completion. `Weight(a, b)` is the diagonal element
/// `Σ v^{Σλ_k a_k} t^{Σλ_k b_k} {D_λ}`, so `0(j) = Weight(j, |j|)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KGen {
    E(usize),
    F(usize),
    Weight(Vec<i64>, Vec<i64>),
}

impl KGen {
    pub fn zero(j: &[i64]) -> KGen {
        KGen::Weight(j.to_vec(), j.iter().map(|x| x.abs()).collect())
    }
}

impl fmt::Display for KGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KGen::E(i) => write!(f, "E{i}"),
            KGen::F(i) => write!(f, "F{i}"),
            KGen::Weight(a, b) if b.iter().zip(a).all(|(x, y)| *x == y.abs()) => write!(f, "0{a:?}"),
            KGen::Weight(a, b) => write!(f, "W{a:?}{b:?}"),
        }
    }
}

pub type KCombo = Vec<(Poly, Vec<KGen>)>;

/// Left multiplication on the window-truncated unit of the completion. Each
/// column profile is an independent block, so every computed coefficient is exact.
#[derive(Clone, Debug)]
pub struct WindowModel {
    pub n: usize,
    pub window: WeightWindow,
    pub regime: Regime,
}

impl WindowModel {
    pub fn new(n: usize, window: WeightWindow) -> Self {
        WindowModel { n, window, regime: Regime::Stab }
    }

    pub fn unit(&self) -> KElt {
        let mut out = KElt::zero(self.n);
        for lam in self.window.weights(self.n) {
            let d = IntMatrix::diag(&lam);
            if self.regime.admits(&d) {
                out.add_term(d, Poly::one());
            }
        }
        out
    }

    pub fn act(&self, g: &KGen, x: &KElt) -> Result<KElt> {
        let mut out = KElt::zero(self.n);
        for (a, c) in x.terms() {
            match g {
                KGen::E(h) => {
                    for (m, k) in chevalley_e_terms(*h, 1, a, self.regime)? {
                        out.add_term(m, c * &k);
                    }
                }
                KGen::F(h) => {
                    for (m, k) in chevalley_f_terms(*h, 1, a, self.regime)? {
                        out.add_term(m, c * &k);
                    }
                }
                KGen::Weight(va, tb) => {
                    let ro = a.ro();
                    let ea: i64 = ro.iter().zip(va).map(|(r, x)| r * x).sum();
                    let eb: i64 = ro.iter().zip(tb).map(|(r, x)| r * x).sum();
                    out.add_term(a.clone(), c * &Poly::vt(ea, eb));
                }
            }
        }
        Ok(out)
    }

    pub fn eval_word(&self, w: &[KGen]) -> Result<KElt> {
        let mut x = self.unit();
        for g in w.iter().rev() {
            x = self.act(g, &x)?;
        }
        Ok(x)
    }

    pub fn eval(&self, c: &KCombo) -> Result<KElt> {
        let mut out = KElt::zero(self.n);
        for (coef, w) in c {
            out = out.add(&self.eval_word(w)?.scale(coef));
        }
        Ok(out)
    }

    pub fn interior_part(&self, x: &KElt) -> KElt {
        x.filter(|m| self.window.interior(&m.co()))
    }

    /// `(witness, boundary term count)` for `x = 0` on the interior.
    pub fn interior_witness(&self, x: &KElt) -> (Option<String>, usize) {
        let inner = self.interior_part(x);
        let skipped = x.len() - inner.len();
        let w = inner.terms().next().map(|(m, c)| format!("({c}){{{m}}}"));
        (w, skipped)
    }
}

fn unit_vec(n: usize, a: usize, x: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[a - 1] = x;
    v
}

fn sample_weights(n: usize) -> Vec<Vec<i64>> {
    let mut out = vec![unit_vec(n, 1, 1), unit_vec(n, n, -1)];
    let mut mixed = vec![0; n];
    mixed[0] = 2;
    mixed[1] = -1;
    out.push(mixed);
    out
}

/// The relations of the generators `E_i, F_i, 0(j)` of the completion, each
/// written as a combination that should vanish.
pub fn prop_a_catalog(n: usize) -> Vec<(String, KCombo)> {
    let one = Poly::one;
    let neg = || Poly::constant(-1);
    let js = sample_weights(n);
    let mut out: Vec<(String, KCombo)> = Vec::new();
    for (x, j) in js.iter().enumerate() {
        for j2 in &js[x + 1..] {
            out.push((
                format!("(1-i) 0{j:?}0{j2:?}"),
                vec![(one(), vec![KGen::zero(j), KGen::zero(j2)]), (neg(), vec![KGen::zero(j2), KGen::zero(j)])],
            ));
        }
    }
    for h in 1..n {
        for j in &js {
            let (a, b) = (j[h - 1] - j[h], j[h - 1].abs() - j[h].abs());
            out.push((
                format!("(1-ii) 0{j:?}E{h}"),
                vec![
                    (one(), vec![KGen::zero(j), KGen::E(h)]),
                    (-Poly::vt(a, b), vec![KGen::E(h), KGen::zero(j)]),
                ],
            ));
            out.push((
                format!("(1-ii) 0{j:?}F{h}"),
                vec![
                    (one(), vec![KGen::zero(j), KGen::F(h)]),
                    (-Poly::vt(-a, -b), vec![KGen::F(h), KGen::zero(j)]),
                ],
            ));
        }
        let tv = &Poly::t() * &v_minus_vinv();
        let mut d = vec![0; n];
        d[h - 1] = 1;
        d[h] = -1;
        let dm: Vec<i64> = d.iter().map(|x| -x).collect();
        out.push((
            format!("(1-iii) E{h}F{h}"),
            vec![
                (tv.clone(), vec![KGen::E(h), KGen::F(h)]),
                (-tv, vec![KGen::F(h), KGen::E(h)]),
                (neg(), vec![KGen::zero(&d)]),
                (one(), vec![KGen::zero(&dm)]),
            ],
        ));
    }
    let vt_sum = Poly::from_terms([((1, 1), 1), ((-1, 1), 1)]);
    let vt_inv_sum = Poly::from_terms([((1, -1), 1), ((-1, -1), 1)]);
    for i in 1..n.saturating_sub(1) {
        let (e, e1, f, f1) = (KGen::E(i), KGen::E(i + 1), KGen::F(i), KGen::F(i + 1));
        out.push((
            format!("(1-iv) E{i}E{i}E{}", i + 1),
            vec![
                (one(), vec![e.clone(), e.clone(), e1.clone()]),
                (-vt_sum.clone(), vec![e.clone(), e1.clone(), e.clone()]),
                (Poly::vt(0, 2), vec![e1.clone(), e.clone(), e.clone()]),
            ],
        ));
        out.push((
            format!("(1-iv) E{}E{}E{i}", i + 1, i + 1),
            vec![
                (Poly::vt(0, 2), vec![e1.clone(), e1.clone(), e.clone()]),
                (-vt_sum.clone(), vec![e1.clone(), e.clone(), e1.clone()]),
                (one(), vec![e.clone(), e1.clone(), e1.clone()]),
            ],
        ));
        out.push((
            format!("(1-iv) F{i}F{i}F{}", i + 1),
            vec![
                (one(), vec![f.clone(), f.clone(), f1.clone()]),
                (-vt_inv_sum.clone(), vec![f.clone(), f1.clone(), f.clone()]),
                (Poly::vt(0, -2), vec![f1.clone(), f.clone(), f.clone()]),
            ],
        ));
        out.push((
            format!("(1-iv) F{}F{}F{i}", i + 1, i + 1),
            vec![
                (Poly::vt(0, -2), vec![f1.clone(), f1.clone(), f.clone()]),
                (-vt_inv_sum.clone(), vec![f1.clone(), f.clone(), f1.clone()]),
                (one(), vec![f.clone(), f1.clone(), f1.clone()]),
            ],
        ));
    }
    out
}

/// Interior coefficients of every word of `c` agree between `model` and the
/// widened window.
fn widening_witness(model: &WindowModel, c: &KCombo) -> Result<Option<String>> {
    let wide = WindowModel { window: WeightWindow { w: model.window.w + 1, margin: model.window.margin }, ..model.clone() };
    for (_, w) in c {
        let narrow = model.interior_part(&model.eval_word(w)?);
        let widened = model.interior_part(&wide.eval_word(w)?);
        if narrow != widened {
            let shown: Vec<String> = w.iter().map(|g| g.to_string()).collect();
            return Ok(Some(format!("word {} changes under W -> W+1", shown.join(""))));
        }
    }
    Ok(None)
}

/// The completion relations, filtered to ids starting with `id` if given.
pub fn verify_prop_a(id: Option<&str>, n: usize, window: WeightWindow) -> Result<Report> {
    if window.margin < 2 {
        return Err(Error::Unsupported(format!("margin {} < 2", window.margin)));
    }
    let model = WindowModel::new(n, window);
    let mut rep = Report::new("stab").param("n", n).param("window", window.w).param("margin", window.margin);
    for (name, c) in prop_a_catalog(n) {
        if id.is_some_and(|p| !name.starts_with(p)) {
            continue;
        }
        let (w, skipped) = model.interior_witness(&model.eval(&c)?);
        let check = Check::from_witness(&name, w);
        rep.push(if skipped > 0 { check.with_detail(format!("{skipped} boundary terms skipped")) } else { check });
        rep.push(Check::from_witness(format!("{name} stable W->W+1"), widening_witness(&model, &c)?));
    }
    Ok(rep)
}

/// The images `E_i -> tE_i`, `F_i -> F_i`, `A_a -> 0(a)`, `B_a -> 0(-a)` of the
/// generators of the quantum algebra, acting on the window.
#[derive(Clone, Debug)]
pub struct UpsilonModel {
    pub inner: WindowModel,
}

impl Model for UpsilonModel {
    type Elt = KElt;

    fn identity(&self) -> KElt {
        self.inner.unit()
    }

    fn left_mul(&self, g: Gen, x: &KElt) -> Result<KElt> {
        let n = self.inner.n;
        let letter = match g {
            Gen::E(i) => return Ok(self.inner.act(&KGen::E(i), x)?.scale(&Poly::t())),
            Gen::F(i) => KGen::F(i),
            Gen::A(a, inv) => {
                let s = if inv { -1 } else { 1 };
                KGen::Weight(unit_vec(n, a, s), unit_vec(n, a, s))
            }
            Gen::B(a, inv) => {
                let s = if inv { -1 } else { 1 };
                KGen::Weight(unit_vec(n, a, -s), unit_vec(n, a, s))
            }
            Gen::J(_) => return Err(Error::Unsupported("J has no image in the completion".into())),
        };
        self.inner.act(&letter, x)
    }

    fn lin_comb(&self, terms: &[(Poly, KElt)]) -> KElt {
        let mut out = KElt::zero(self.inner.n);
        for (c, x) in terms {
            out = out.add(&x.scale(c));
        }
        out
    }

    fn witness(&self, x: &KElt) -> Option<String> {
        self.inner.interior_witness(x).0
    }
}

/// R1-R4 transported to the completion.
pub fn upsilon_suite(n: usize, window: WeightWindow) -> Result<Report> {
    let model = UpsilonModel { inner: WindowModel::new(n, window) };
    let mut rep = Report::new("stab-upsilon").param("n", n).param("window", window.w).param("margin", window.margin);
    for c in verify_catalog(&model, &u_catalog(n)?)? {
        rep.push(c);
    }
    Ok(rep)
}

/// Compatibility, the fit catalog, the completion relations and their transport.
pub fn stab_suite(n: usize, window: WeightWindow, p_list: &[i64]) -> Result<Report> {
    let mut rep = Report::new("stab").param("n", n).param("window", window.w).param("margin", window.margin);
    for d in 1..=3 {
        rep.push(compatibility_check(n, d)?);
    }
    rep.extend(stab_catalog_suite(p_list));
    rep.extend(verify_prop_a(None, n, window)?);
    rep.extend(upsilon_suite(n, window)?);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn shifts() {
        let a = m(&[vec![-1, 1], vec![0, 0]]);
        assert_eq!(shift(&a, 2, ShiftMode::I).unwrap(), m(&[vec![1, 1], vec![0, 2]]));
        let b = m(&[vec![0, 1], vec![2, 0]]);
        assert_eq!(shift(&b, 0, ShiftMode::TwoI).unwrap(), b);
        assert_eq!(shift(&a, 1, ShiftMode::TwoIPrime(1)).unwrap(), m(&[vec![1, 1], vec![0, 0]]));
        assert!(shift(&m(&[vec![-3, 1], vec![0, 0]]), 1, ShiftMode::I).is_err());
    }

    #[test]
    fn compatibility() {
        for n in 2..=3 {
            for d in 1..=3 {
                let c = compatibility_check(n, d).unwrap();
                assert!(c.passed(), "{c:?}");
            }
        }
    }

    #[test]
    fn limit_products() {
        let a = m(&[vec![0, 1], vec![2, -3]]);
        let d = IntMatrix::diag(&a.ro());
        assert_eq!(stab_mult_e(&d, &a).unwrap(), KElt::basis(&a).unwrap());
        let b = chevalley_matrix(true, 1, 1, &a.ro()).unwrap();
        let x = stab_mult_e(&b, &a).unwrap();
        assert!(x.terms().any(|(z, _)| z.get(1, 1) < -3));
        assert!(stab_mult_e(&m(&[vec![0, 0], vec![1, 0]]), &a).is_err());
    }

    #[test]
    fn fits() {
        let rep = stab_catalog_suite(&[3, 4, 5]);
        assert!(rep.all_pass(), "{rep}");
        let pairs = stab_catalog();
        let binom = &pairs[3];
        let fs = fit_products(&binom.a1, &binom.a2, &[3, 4, 5], binom.mode).unwrap();
        assert!(fs.iter().any(Fit::depends_on_shift));
        let diag = &pairs[4];
        let fs = fit_products(&diag.a1, &diag.a2, &[3, 4, 5], diag.mode).unwrap();
        assert!(fs.iter().all(|f| !f.depends_on_shift()));
    }

    #[test]
    fn completion_elements() {
        let w = WeightWindow::new(2, 1).unwrap();
        let unit = zero_j(&[0, 0], &w).unwrap();
        assert_eq!(unit.len(), 25);
        assert!(unit.terms().all(|(_, c)| c.is_one()));
        let z = zero_j(&[1, 0], &w).unwrap();
        assert_eq!(z.coeff(&IntMatrix::diag(&[2, -1])), Poly::vt(2, 2));
        let e = ahat(&m(&[vec![0, 1], vec![0, 0]]), &[0, 0], &w).unwrap();
        let model = WindowModel::new(2, w);
        assert_eq!(model.act(&KGen::E(1), &model.unit()).unwrap().filter(|x| w.interior(&x.diagonal())), e.filter(|x| w.interior(&x.diagonal())));
    }

    #[test]
    fn relations() {
        let w = WeightWindow::new(4, 2).unwrap();
        for n in 2..=3 {
            let rep = verify_prop_a(None, n, w).unwrap();
            assert!(rep.all_pass(), "{rep}");
        }
        let rep = upsilon_suite(3, w).unwrap();
        assert!(rep.all_pass(), "{rep}");
        assert!(rep.alternates_used().iter().any(|(id, _)| id.starts_with("R4")));
    }
}
