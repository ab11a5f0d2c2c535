//! Tensor space `V^{⊗d}` with the left action of the quantum group and the right
//! Hecke action, plus the operator algebra used to verify relations.

use crate::error::{Error, Result};
use crate::jparity::JCut;
use crate::laurent::{vt_minus_vinvt, Poly};
use crate::linalg::{Echelon, SparseVec};
use crate::matrix::IntMatrix;
use crate::report::{Check, Report};
use crate::schur::{self, chevalley_e_terms, chevalley_f_terms, Regime, SchurElt};
use crate::words::{Gen, JSign, Model, Word};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A basis label `r = (r_1, ..., r_d)`, entries in `1..=n`.
pub type Seq = Vec<usize>;

pub fn seq_string(r: &[usize]) -> String {
    let s: Vec<String> = r.iter().map(|x| x.to_string()).collect();
    format!("v_({})", s.join(","))
}

/// Multiplicities of `1..=n` in `r`.
pub fn content(n: usize, r: &[usize]) -> Vec<i64> {
    let mut c = vec![0; n];
    for &x in r {
        c[x - 1] += 1;
    }
    c
}

/// Dimensions and the index map `Seq <-> 0..n^d` (first entry most significant).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Space {
    pub n: usize,
    pub d: usize,
}

impl Space {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::IndexOutOfRange("n = 0".into()));
        }
        if (n as f64).powi(d as i32) > 1.0e5 {
            return Err(Error::GuardExceeded(format!("n^d for n = {n}, d = {d}")));
        }
        Ok(Space { n, d })
    }

    pub fn dim(&self) -> usize {
        self.n.pow(self.d as u32)
    }

    pub fn seq(&self, mut idx: usize) -> Seq {
        let mut r = vec![0; self.d];
        for p in (0..self.d).rev() {
            r[p] = idx % self.n + 1;
            idx /= self.n;
        }
        r
    }

    pub fn index(&self, r: &[usize]) -> usize {
        r.iter().fold(0, |acc, &x| acc * self.n + (x - 1))
    }

    pub fn seqs(&self) -> impl Iterator<Item = Seq> + '_ {
        (0..self.dim()).map(|i| self.seq(i))
    }
}

/// Sparse element of tensor space.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElt {
    pub n: usize,
    pub d: usize,
    terms: BTreeMap<Seq, Poly>,
}

impl TensorElt {
    pub fn zero(n: usize, d: usize) -> Self {
        TensorElt { n, d, terms: BTreeMap::new() }
    }

    pub fn basis(n: usize, r: Seq) -> Result<Self> {
        if r.iter().any(|&x| x == 0 || x > n) {
            return Err(Error::IndexOutOfRange(format!("{r:?} with n = {n}")));
        }
        let mut x = TensorElt::zero(n, r.len());
        x.add_term(r, Poly::one());
        Ok(x)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Seq, &Poly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, r: &[usize]) -> Poly {
        self.terms.get(r).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, r: Seq, c: Poly) {
        if c.is_zero() {
            return;
        }
        let next = match self.terms.remove(&r) {
            Some(old) => &old + &c,
            None => c,
        };
        if !next.is_zero() {
            self.terms.insert(r, next);
        }
    }

    pub fn add(&self, other: &TensorElt) -> TensorElt {
        let mut out = self.clone();
        for (r, c) in &other.terms {
            out.add_term(r.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Poly) -> TensorElt {
        let mut out = TensorElt::zero(self.n, self.d);
        for (r, x) in &self.terms {
            out.add_term(r.clone(), x * c);
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> TensorElt {
        let mut out = TensorElt::zero(self.n, self.d);
        for (r, x) in &self.terms {
            out.add_term(r.clone(), f(x));
        }
        out
    }

    fn map_basis(&self, f: impl Fn(&[usize]) -> Vec<(Seq, Poly)>) -> TensorElt {
        let mut out = TensorElt::zero(self.n, self.d);
        for (r, c) in &self.terms {
            for (s, k) in f(r) {
                out.add_term(s, c * &k);
            }
        }
        out
    }
}

impl fmt::Debug for TensorElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TensorElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(r, c)| format!("({c}){}", seq_string(r))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn delta(a: usize, b: usize) -> i64 {
    (a == b) as i64
}

/// `E_i v_r` on a basis vector.
pub fn e_on_basis(i: usize, r: &[usize]) -> Vec<(Seq, Poly)> {
    let mut out = Vec::new();
    for p in 0..r.len() {
        if r[p] != i + 1 {
            continue;
        }
        let (mut a, mut b) = (0, 1);
        for &x in &r[p + 1..] {
            a += delta(i, x) - delta(i + 1, x);
            b += delta(i, x) + delta(i + 1, x);
        }
        let mut s = r.to_vec();
        s[p] = i;
        out.push((s, Poly::vt(a, b)));
    }
    out
}

/// `F_i v_r` on a basis vector.
pub fn f_on_basis(i: usize, r: &[usize]) -> Vec<(Seq, Poly)> {
    let mut out = Vec::new();
    for p in 0..r.len() {
        if r[p] != i {
            continue;
        }
        let (mut a, mut b) = (0, 0);
        for &x in &r[..p] {
            a += delta(i + 1, x) - delta(i, x);
            b += delta(i, x) + delta(i + 1, x);
        }
        let mut s = r.to_vec();
        s[p] = i + 1;
        out.push((s, Poly::vt(a, b)));
    }
    out
}

/// `v_r T_j` on a basis vector.
pub fn t_on_basis(j: usize, r: &[usize]) -> Vec<(Seq, Poly)> {
    let (x, y) = (r[j - 1], r[j]);
    let mut s = r.to_vec();
    s.swap(j - 1, j);
    if x < y {
        vec![(s, Poly::one())]
    } else if x == y {
        vec![(s, Poly::vt(1, 1))]
    } else {
        vec![(r.to_vec(), vt_minus_vinvt()), (s, Poly::vt(0, 2))]
    }
}

/// Diagonal scalar of a Cartan-type generator on `v_r`, or `None` for `E`, `F`, `J`.
fn diagonal_scalar(g: Gen, r: &[usize]) -> Option<Poly> {
    let count = |a: usize| r.iter().filter(|&&x| x == a).count() as i64;
    match g {
        Gen::A(a, inv) => {
            let k = if inv { -count(a) } else { count(a) };
            Some(Poly::vt(k, k))
        }
        Gen::B(a, inv) => {
            let k = if inv { -count(a) } else { count(a) };
            Some(Poly::vt(-k, k))
        }
        _ => None,
    }
}

fn check_gen(n: usize, g: Gen) -> Result<()> {
    let ok = match g {
        Gen::E(i) | Gen::F(i) => i >= 1 && i < n,
        Gen::A(a, _) | Gen::B(a, _) => a >= 1 && a <= n,
        Gen::J(_) => true,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange(format!("{g} for n = {n}")))
    }
}

/// `g v_r`; `J` needs a cut.
pub fn gen_on_basis(n: usize, g: Gen, cut: Option<JCut>, r: &[usize]) -> Result<Vec<(Seq, Poly)>> {
    check_gen(n, g)?;
    Ok(match g {
        Gen::E(i) => e_on_basis(i, r),
        Gen::F(i) => f_on_basis(i, r),
        Gen::J(s) => {
            let cut = cut.ok_or_else(|| Error::Unsupported("J generator without a cut".into()))?;
            if cut.keeps(s, &content(n, r)) {
                vec![(r.to_vec(), Poly::one())]
            } else {
                vec![]
            }
        }
        _ => vec![(r.to_vec(), diagonal_scalar(g, r).unwrap())],
    })
}

pub fn act(g: Gen, x: &TensorElt) -> Result<TensorElt> {
    check_gen(x.n, g)?;
    let n = x.n;
    Ok(x.map_basis(|r| gen_on_basis(n, g, None, r).unwrap_or_default()))
}

pub fn act_e(i: usize, x: &TensorElt) -> Result<TensorElt> {
    act(Gen::E(i), x)
}

pub fn act_f(i: usize, x: &TensorElt) -> Result<TensorElt> {
    act(Gen::F(i), x)
}

pub fn act_a(a: usize, inverse: bool, x: &TensorElt) -> Result<TensorElt> {
    act(Gen::A(a, inverse), x)
}

pub fn act_b(a: usize, inverse: bool, x: &TensorElt) -> Result<TensorElt> {
    act(Gen::B(a, inverse), x)
}

/// Right action `x T_j`.
pub fn act_t(j: usize, x: &TensorElt) -> Result<TensorElt> {
    if j == 0 || j >= x.d {
        return Err(Error::IndexOutOfRange(format!("T_{j} with d = {}", x.d)));
    }
    Ok(x.map_basis(|r| t_on_basis(j, r)))
}

/// Sparse operator on `V^{⊗d}`; column `c` is the image of basis vector `c`.
#[derive(Clone, PartialEq, Eq)]
pub struct LinOp {
    pub space: Space,
    cols: Vec<BTreeMap<usize, Poly>>,
}

impl LinOp {
    pub fn zero(space: Space) -> Self {
        LinOp { space, cols: vec![BTreeMap::new(); space.dim()] }
    }

    pub fn identity(space: Space) -> Self {
        let mut op = LinOp::zero(space);
        for c in 0..space.dim() {
            op.cols[c].insert(c, Poly::one());
        }
        op
    }

    pub fn from_basis_fn(space: Space, f: impl Fn(&[usize]) -> Result<Vec<(Seq, Poly)>>) -> Result<Self> {
        let mut op = LinOp::zero(space);
        for c in 0..space.dim() {
            for (s, k) in f(&space.seq(c))? {
                op.add_entry(space.index(&s), c, k);
            }
        }
        Ok(op)
    }

    pub fn add_entry(&mut self, row: usize, col: usize, k: Poly) {
        if k.is_zero() {
            return;
        }
        let e = self.cols[col].entry(row).or_insert_with(Poly::zero);
        *e = &*e + &k;
        if e.is_zero() {
            self.cols[col].remove(&row);
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> Poly {
        self.cols[col].get(&row).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn col(&self, c: usize) -> &BTreeMap<usize, Poly> {
        &self.cols[c]
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    fn check_space(&self, other: &LinOp) -> Result<()> {
        if self.space != other.space {
            return Err(Error::Incompatible(format!("{:?} vs {:?}", self.space, other.space)));
        }
        Ok(())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinOp) -> Result<LinOp> {
        self.check_space(other)?;
        let mut out = LinOp::zero(self.space);
        for (c, col) in other.cols.iter().enumerate() {
            for (k, x) in col {
                for (r, y) in &self.cols[*k] {
                    out.add_entry(*r, c, y * x);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &LinOp) -> Result<LinOp> {
        self.check_space(other)?;
        let mut out = self.clone();
        for (c, col) in other.cols.iter().enumerate() {
            for (r, x) in col {
                out.add_entry(*r, c, x.clone());
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LinOp) -> Result<LinOp> {
        self.add(&other.scale(&-Poly::one()))
    }

    pub fn scale(&self, k: &Poly) -> LinOp {
        let mut out = LinOp::zero(self.space);
        for (c, col) in self.cols.iter().enumerate() {
            for (r, x) in col {
                out.add_entry(*r, c, x * k);
            }
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> LinOp {
        let mut out = LinOp::zero(self.space);
        for (c, col) in self.cols.iter().enumerate() {
            for (r, x) in col {
                out.add_entry(*r, c, f(x));
            }
        }
        out
    }

    /// `self ⊗ other` on `V^{⊗(d1+d2)}` under `v_r ⊗ v_s ↦ v_{rs}`.
    pub fn kron(&self, other: &LinOp) -> Result<LinOp> {
        if self.space.n != other.space.n {
            return Err(Error::Incompatible("kron of different n".into()));
        }
        let space = Space::new(self.space.n, self.space.d + other.space.d)?;
        let n2 = other.space.dim();
        let mut out = LinOp::zero(space);
        for (c1, col1) in self.cols.iter().enumerate() {
            for (c2, col2) in other.cols.iter().enumerate() {
                for (r1, x) in col1 {
                    for (r2, y) in col2 {
                        out.add_entry(r1 * n2 + r2, c1 * n2 + c2, x * y);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, x: &TensorElt) -> Result<TensorElt> {
        if (x.n, x.d) != (self.space.n, self.space.d) {
            return Err(Error::Incompatible("operator and vector spaces differ".into()));
        }
        let mut out = TensorElt::zero(x.n, x.d);
        for (r, c) in &x.terms {
            for (row, k) in &self.cols[self.space.index(r)] {
                out.add_term(self.space.seq(*row), c * k);
            }
        }
        Ok(out)
    }

    /// First nonzero column, as "basis vector ↦ image".
    pub fn witness(&self) -> Option<String> {
        let (c, col) = self.cols.iter().enumerate().find(|(_, col)| !col.is_empty())?;
        let mut img = TensorElt::zero(self.space.n, self.space.d);
        for (r, k) in col {
            img.add_term(self.space.seq(*r), k.clone());
        }
        Some(format!("{} ↦ {img}", seq_string(&self.space.seq(c))))
    }

    /// Entries specialized at `(v0, t0)`, as sparse columns.
    pub fn specialize(&self, v0: &BigRational, t0: &BigRational) -> Result<Vec<SparseVec>> {
        self.cols
            .iter()
            .map(|col| {
                let mut out = SparseVec::new();
                for (r, k) in col {
                    let x = k.specialize(v0, t0)?;
                    if !x.is_zero() {
                        out.insert(*r, x);
                    }
                }
                Ok(out)
            })
            .collect()
    }
}

impl fmt::Debug for LinOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinOp(n={}, d={}", self.space.n, self.space.d)?;
        for (c, col) in self.cols.iter().enumerate() {
            for (r, k) in col {
                write!(f, "; [{r},{c}]={k}")?;
            }
        }
        write!(f, ")")
    }
}

pub fn gen_op(space: Space, g: Gen, cut: Option<JCut>) -> Result<LinOp> {
    check_gen(space.n, g)?;
    LinOp::from_basis_fn(space, |r| gen_on_basis(space.n, g, cut, r))
}

/// The right action of `T_j` as the operator `x ↦ x T_j`.
pub fn t_op(space: Space, j: usize) -> Result<LinOp> {
    if j == 0 || j >= space.d {
        return Err(Error::IndexOutOfRange(format!("T_{j} with d = {}", space.d)));
    }
    LinOp::from_basis_fn(space, |r| Ok(t_on_basis(j, r)))
}

/// Generator words evaluated as operators on `V^{⊗d}`.
#[derive(Clone, Debug)]
pub struct TensorModel {
    pub space: Space,
    pub cut: Option<JCut>,
    ops: BTreeMap<Gen, LinOp>,
}

impl TensorModel {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        Self::build(n, d, None)
    }

    pub fn with_cut(n: usize, d: usize, cut: JCut) -> Result<Self> {
        Self::build(n, d, Some(cut))
    }

    fn build(n: usize, d: usize, cut: Option<JCut>) -> Result<Self> {
        let space = Space::new(n, d)?;
        let mut gens = Gen::all(n);
        if cut.is_some() {
            gens.extend([Gen::J(JSign::Plus), Gen::J(JSign::Minus), Gen::J(JSign::Zero)]);
        }
        let mut ops = BTreeMap::new();
        for g in gens {
            ops.insert(g, gen_op(space, g, cut)?);
        }
        Ok(TensorModel { space, cut, ops })
    }

    pub fn op(&self, g: Gen) -> Result<&LinOp> {
        self.ops
            .get(&g)
            .ok_or_else(|| Error::IndexOutOfRange(format!("{g} for n = {}", self.space.n)))
    }

    pub fn word_op(&self, w: &[Gen]) -> Result<LinOp> {
        crate::words::eval_word(self, w)
    }
}

impl Model for TensorModel {
    type Elt = LinOp;

    fn identity(&self) -> LinOp {
        LinOp::identity(self.space)
    }

    fn left_mul(&self, g: Gen, x: &LinOp) -> Result<LinOp> {
        self.op(g)?.compose(x)
    }

    fn lin_comb(&self, terms: &[(Poly, LinOp)]) -> LinOp {
        let mut out = LinOp::zero(self.space);
        for (c, x) in terms {
            for (col, entries) in x.cols.iter().enumerate() {
                for (r, k) in entries {
                    out.add_entry(*r, col, c * k);
                }
            }
        }
        out
    }

    fn witness(&self, x: &LinOp) -> Option<String> {
        x.witness()
    }
}

fn op_diff(name: String, a: &LinOp, b: &LinOp) -> Result<Check> {
    Ok(Check::from_witness(name, a.sub(b)?.witness()))
}

/// `g (x T_j) = (g x) T_j` for every generator, every `j`, every basis vector.
pub fn commute_check(n: usize, d: usize) -> Result<Report> {
    if n > 4 || d > 3 {
        return Err(Error::GuardExceeded(format!("commute_check needs n <= 4, d <= 3 (got {n}, {d})")));
    }
    let model = TensorModel::new(n, d)?;
    let mut report = Report::new("duality").param("n", n).param("d", d);
    for j in 1..d {
        let t = t_op(model.space, j)?;
        for g in Gen::all(n) {
            let g_op = model.op(g)?;
            report.push(op_diff(format!("{g} commutes with T{j}"), &g_op.compose(&t)?, &t.compose(g_op)?)?);
        }
    }
    Ok(report)
}

/// Quadratic, braid and far-commutation relations for the right action.
pub fn hecke_operator_checks(n: usize, d: usize) -> Result<Report> {
    let space = Space::new(n, d)?;
    let mut report = Report::new("hecke-operators").param("n", n).param("d", d);
    let ts: Vec<LinOp> = (1..d).map(|j| t_op(space, j)).collect::<Result<_>>()?;
    let id = LinOp::identity(space);
    for (k, t) in ts.iter().enumerate() {
        let rhs = t.scale(&vt_minus_vinvt()).add(&id.scale(&Poly::vt(0, 2)))?;
        report.push(op_diff(format!("quadratic T{}", k + 1), &t.compose(t)?, &rhs)?);
    }
    for k in 0..ts.len().saturating_sub(1) {
        let (a, b) = (&ts[k], &ts[k + 1]);
        let lhs = a.compose(b)?.compose(a)?;
        let rhs = b.compose(a)?.compose(b)?;
        report.push(op_diff(format!("braid T{}T{}T{}", k + 1, k + 2, k + 1), &lhs, &rhs)?);
    }
    for k in 0..ts.len() {
        for l in k + 2..ts.len() {
            let lhs = ts[k].compose(&ts[l])?;
            let rhs = ts[l].compose(&ts[k])?;
            report.push(op_diff(format!("commute T{}T{}", k + 1, l + 1), &lhs, &rhs)?);
        }
    }
    Ok(report)
}

/// Which commutant `centralizer_dim` computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Commutant of the Hecke operators (the Schur side).
    Hecke,
    /// Commutant of the quantum group generators (the Hecke side).
    Quantum,
}

pub fn check_specialization(v0: &BigRational, t0: &BigRational) -> Result<()> {
    let one = BigRational::one();
    let vt = v0 * t0;
    if v0.is_zero() || t0.is_zero() || *v0 == one || *v0 == -&one || vt == one || vt == -one {
        return Err(Error::DegenerateSpecialization(format!("(v, t) = ({v0}, {t0})")));
    }
    Ok(())
}

/// Dimension of `{X : M X = X M for all M}` at `(v0, t0)`.
pub fn centralizer_dim(side: Side, n: usize, d: usize, v0: &BigRational, t0: &BigRational) -> Result<usize> {
    check_specialization(v0, t0)?;
    let space = Space::new(n, d)?;
    let dim = space.dim();
    if dim > 64 {
        return Err(Error::GuardExceeded(format!("centralizer on a space of dimension {dim}")));
    }
    let ops: Vec<LinOp> = match side {
        Side::Hecke => (1..d).map(|j| t_op(space, j)).collect::<Result<_>>()?,
        Side::Quantum => {
            let mut v = Vec::new();
            for i in 1..n {
                v.push(gen_op(space, Gen::E(i), None)?);
                v.push(gen_op(space, Gen::F(i), None)?);
            }
            for a in 1..=n {
                v.push(gen_op(space, Gen::a(a), None)?);
                v.push(gen_op(space, Gen::b(a), None)?);
            }
            v
        }
    };
    // Unknown X_{k,l} has index k * dim + l.
    let mut ech = Echelon::new();
    for op in &ops {
        let cols = op.specialize(v0, t0)?;
        let mut rows_of: Vec<SparseVec> = vec![SparseVec::new(); dim];
        for (c, col) in cols.iter().enumerate() {
            for (r, x) in col {
                rows_of[*r].insert(c, x.clone());
            }
        }
        // (M X - X M)_{i,j} = Σ_k M_{ik} X_{kj} - Σ_k X_{ik} M_{kj}
        for i in 0..dim {
            for j in 0..dim {
                let mut eq = SparseVec::new();
                for (k, m) in &rows_of[i] {
                    *eq.entry(k * dim + j).or_insert_with(BigRational::zero) += m;
                }
                for (k, m) in &cols[j] {
                    *eq.entry(i * dim + k).or_insert_with(BigRational::zero) -= m;
                }
                ech.insert(eq);
            }
        }
    }
    Ok(dim * dim - ech.rank())
}

fn flatten(cols: &[SparseVec], dim: usize) -> SparseVec {
    let mut out = SparseVec::new();
    for (c, col) in cols.iter().enumerate() {
        for (r, x) in col {
            out.insert(r * dim + c, x.clone());
        }
    }
    out
}

fn sparse_compose(a: &[SparseVec], b: &[SparseVec]) -> Vec<SparseVec> {
    b.iter()
        .map(|col| {
            let mut out = SparseVec::new();
            for (k, x) in col {
                for (r, y) in &a[*k] {
                    let e = out.entry(*r).or_insert_with(BigRational::zero);
                    *e += x * y;
                }
            }
            out.retain(|_, x| !x.is_zero());
            out
        })
        .collect()
}

/// Rank of the span of generator words at `(v0, t0)`, grown breadth first until a
/// whole level adds nothing. The length cap starts at `2d` and doubles at most twice.
pub fn surjectivity_rank(n: usize, d: usize, v0: &BigRational, t0: &BigRational) -> Result<usize> {
    check_specialization(v0, t0)?;
    let space = Space::new(n, d)?;
    let dim = space.dim();
    let mut gens = Vec::new();
    for g in Gen::all(n) {
        if matches!(g, Gen::A(_, true) | Gen::B(_, true)) {
            continue;
        }
        gens.push(gen_op(space, g, None)?.specialize(v0, t0)?);
    }
    let id: Vec<SparseVec> = (0..dim).map(|c| SparseVec::from([(c, BigRational::one())])).collect();
    let mut ech = Echelon::new();
    ech.insert(flatten(&id, dim));
    let mut frontier = vec![id];
    let mut cap = 2 * d.max(1);
    let mut len = 0;
    for _ in 0..3 {
        while len < cap {
            len += 1;
            let mut next = Vec::new();
            for x in &frontier {
                for g in &gens {
                    let y = sparse_compose(g, x);
                    if ech.insert(flatten(&y, dim)) {
                        next.push(y);
                    }
                }
            }
            if next.is_empty() {
                return Ok(ech.rank());
            }
            frontier = next;
        }
        cap *= 2;
    }
    Err(Error::RankNotStable(format!("rank {} after words of length {len}", ech.rank())))
}

/// `Δ(g)` as a sum of `c · w1 ⊗ w2`.
pub fn coproduct(g: Gen) -> Result<Vec<(Poly, Word, Word)>> {
    Ok(match g {
        Gen::E(i) => vec![
            (Poly::one(), vec![Gen::E(i)], vec![Gen::a(i), Gen::b(i + 1)]),
            (Poly::one(), vec![], vec![Gen::E(i)]),
        ],
        Gen::F(i) => vec![
            (Poly::one(), vec![Gen::F(i)], vec![]),
            (Poly::one(), vec![Gen::b(i), Gen::a(i + 1)], vec![Gen::F(i)]),
        ],
        Gen::A(..) | Gen::B(..) => vec![(Poly::one(), vec![g], vec![g])],
        Gen::J(_) => return Err(Error::Unsupported("coproduct of J".into())),
    })
}

/// Operator of `Σ c · w1 ⊗ w2` on `V^{⊗d1} ⊗ V^{⊗d2}`.
pub fn two_leg_op(n: usize, d1: usize, d2: usize, legs: &[(Poly, Word, Word)]) -> Result<LinOp> {
    let m1 = TensorModel::new(n, d1)?;
    let m2 = TensorModel::new(n, d2)?;
    let mut out = LinOp::zero(Space::new(n, d1 + d2)?);
    for (c, w1, w2) in legs {
        out = out.add(&m1.word_op(w1)?.kron(&m2.word_op(w2)?)?.scale(c))?;
    }
    Ok(out)
}

/// The action on `V^{⊗(d1+d2)}` equals the `Δ`-prescribed action on the factors.
pub fn coproduct_compat(n: usize, d1: usize, d2: usize, g: Gen) -> Result<Check> {
    if d1 + d2 > 3 {
        return Err(Error::GuardExceeded(format!("d1 + d2 = {} > 3", d1 + d2)));
    }
    let full = TensorModel::new(n, d1 + d2)?;
    let lhs = full.op(g)?.clone();
    let rhs = two_leg_op(n, d1, d2, &coproduct(g)?)?;
    op_diff(format!("Δ({g}) on V^{d1} ⊗ V^{d2}"), &lhs, &rhs)
}

pub fn coproduct_suite(n: usize, d: usize) -> Result<Report> {
    let mut report = Report::new("coproduct").param("n", n).param("d", d);
    for d1 in 0..=d {
        for g in Gen::all(n) {
            report.push(coproduct_compat(n, d1, d - d1, g)?);
        }
    }
    Ok(report)
}

/// The `n x d` matrix of a sequence: entry `(r_p, p)` is 1.
pub fn seq_matrix(n: usize, r: &[usize]) -> IntMatrix {
    let mut m = IntMatrix::zeros(n, r.len());
    for (p, &x) in r.iter().enumerate() {
        m.set(x - 1, p, 1);
    }
    m
}

fn matrix_seq(m: &IntMatrix) -> Option<Seq> {
    (0..m.cols())
        .map(|p| {
            let rows: Vec<usize> = (0..m.rows()).filter(|&i| m.get(i, p) != 0).collect();
            (rows.len() == 1 && m.get(rows[0], p) == 1).then(|| rows[0] + 1)
        })
        .collect()
}

/// Operator of a Chevalley basis element `{B}` with `B - rE_{h,h+1}` (or `rE_{h+1,h}`) diagonal,
/// through the rectangular multiplication formulas on `n x d` matrices.
pub fn chevalley_op(space: Space, b: &IntMatrix) -> Result<LinOp> {
    let (upper, h, r) = match (b.upper_chevalley(), b.lower_chevalley()) {
        (Some((h, r)), _) => (true, h, r),
        (None, Some((h, r))) => (false, h, r),
        _ if b.is_diagonal() => (true, 1, 0),
        _ => return Err(Error::Unsupported(format!("{b:?} is not of Chevalley type"))),
    };
    let co = b.co();
    LinOp::from_basis_fn(space, |s| {
        let pi = seq_matrix(space.n, s);
        if pi.ro() != co {
            return Ok(vec![]);
        }
        if r == 0 {
            return Ok(vec![(s.to_vec(), Poly::one())]);
        }
        let terms = if upper {
            chevalley_e_terms(h, r, &pi, Regime::Natural)?
        } else {
            chevalley_f_terms(h, r, &pi, Regime::Natural)?
        };
        terms
            .into_iter()
            .map(|(m, k)| {
                matrix_seq(&m)
                    .map(|s2| (s2, k))
                    .ok_or_else(|| Error::Incompatible(format!("non-sequence target {m:?}")))
            })
            .collect()
    })
}

fn corner_total(a: &IntMatrix) -> i64 {
    schur::corner_sums(a).iter().sum()
}

/// Operators of every basis element `{A}`, `A ∈ Θ_d`, obtained from the triangular
/// products by peeling off lower terms.
#[derive(Clone, Debug)]
pub struct SchurOnTensor {
    pub space: Space,
    ops: BTreeMap<IntMatrix, LinOp>,
}

impl SchurOnTensor {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        let space = Space::new(n, d)?;
        let mut theta = schur::theta(n, d);
        theta.sort_by_key(corner_total);
        let mut ops: BTreeMap<IntMatrix, LinOp> = BTreeMap::new();
        for a in theta {
            let factors = schur::triangular_factors(&a)?;
            let mut op = chevalley_op(space, &IntMatrix::diag(&a.co()))?;
            for f in factors.iter().rev() {
                op = chevalley_op(space, &f.matrix)?.compose(&op)?;
            }
            let prod = schur::product_of_factors(&a, &factors)?.braced();
            for (m, c) in prod.terms() {
                if *m == a {
                    continue;
                }
                let lower = ops
                    .get(m)
                    .ok_or_else(|| Error::Incompatible(format!("lower term {m:?} of {a:?} not yet built")))?;
                op = op.sub(&lower.scale(c))?;
            }
            ops.insert(a, op);
        }
        Ok(SchurOnTensor { space, ops })
    }

    pub fn basis_op(&self, a: &IntMatrix) -> Result<&LinOp> {
        self.ops.get(a).ok_or_else(|| Error::IndexOutOfRange(format!("{a:?} not in Θ_d")))
    }

    pub fn op(&self, x: &SchurElt) -> Result<LinOp> {
        if (x.n(), x.d()) != (self.space.n, self.space.d) {
            return Err(Error::Incompatible("element and tensor space differ".into()));
        }
        let mut out = LinOp::zero(self.space);
        for (a, c) in x.braced().terms() {
            out = out.add(&self.basis_op(a)?.scale(c))?;
        }
        Ok(out)
    }

    /// Coefficients of `op` in the operators `{A}`. Each `{A}` is read off at the
    /// column of the sorted sequence of content `co(A)` and a row whose block
    /// matrix is `A`; blocks of distinct `A` are disjoint.
    pub fn decompose(&self, op: &LinOp) -> Result<SchurElt> {
        let n = self.space.n;
        let mut out = SchurElt::zero(n, self.space.d);
        for (a, basis_op) in &self.ops {
            let col = self.space.index(&sorted_seq(&a.co()));
            let row = self.space.index(&block_seq(a));
            let k = basis_op.entry(row, col);
            let (x, y, unit) = k
                .as_monomial()
                .ok_or_else(|| Error::Incompatible(format!("pivot of {a:?} is {k}")))?;
            if unit.abs() != 1 {
                return Err(Error::InexactDivision);
            }
            let c = &op.entry(row, col) * &Poly::monomial(-x, -y, unit);
            out.add_term(a.clone(), c);
        }
        let back = self.op(&out)?;
        if let Some(w) = back.sub(op)?.witness() {
            return Err(Error::Incompatible(format!("operator outside the span of {{A}}: {w}")));
        }
        Ok(out)
    }
}

/// `(1^{c_1}, 2^{c_2}, ...)`.
pub fn sorted_seq(c: &[i64]) -> Seq {
    c.iter().enumerate().flat_map(|(j, &k)| std::iter::repeat(j + 1).take(k as usize)).collect()
}

/// Column by column, the row indices of `A` with multiplicity.
fn block_seq(a: &IntMatrix) -> Seq {
    let mut out = Vec::new();
    for j in 0..a.cols() {
        for i in 0..a.rows() {
            out.extend(std::iter::repeat(i + 1).take(a.get(i, j) as usize));
        }
    }
    out
}

/// Product of Schur elements by composing tensor operators; needs `n >= d`.
pub fn product_via_operators(x: &SchurElt, y: &SchurElt) -> Result<SchurElt> {
    if (x.n(), x.d()) != (y.n(), y.d()) {
        return Err(Error::Incompatible("factors live in different algebras".into()));
    }
    if x.n() < x.d() {
        return Err(Error::Unsupported(format!("n = {} < d = {}", x.n(), x.d())));
    }
    let s = SchurOnTensor::new(x.n(), x.d())?;
    s.decompose(&s.op(x)?.compose(&s.op(y)?)?)
}

/// Sequences that a set of projectors keep, for quick inspection.
pub fn support(op: &LinOp) -> BTreeSet<Seq> {
    (0..op.space.dim()).filter(|&c| !op.col(c).is_empty()).map(|c| op.space.seq(c)).collect()
}
