//! Generator symbols, formal words, and evaluation of word combinations in a model.

use crate::error::Result;
use crate::laurent::Poly;
use crate::report::Check;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum JSign {
    Plus,
    Minus,
    Zero,
}

impl JSign {
    pub fn flip(self) -> JSign {
        match self {
            JSign::Plus => JSign::Minus,
            JSign::Minus => JSign::Plus,
            JSign::Zero => JSign::Zero,
        }
    }
}

/// Generator symbol. Indices are 1-based; the flag on `A`/`B` marks the inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gen {
    E(usize),
    F(usize),
    A(usize, bool),
    B(usize, bool),
    J(JSign),
}

impl Gen {
    pub fn a(a: usize) -> Gen {
        Gen::A(a, false)
    }
    pub fn a_inv(a: usize) -> Gen {
        Gen::A(a, true)
    }
    pub fn b(a: usize) -> Gen {
        Gen::B(a, false)
    }
    pub fn b_inv(a: usize) -> Gen {
        Gen::B(a, true)
    }

    pub fn inverse(self) -> Option<Gen> {
        match self {
            Gen::A(a, inv) => Some(Gen::A(a, !inv)),
            Gen::B(a, inv) => Some(Gen::B(a, !inv)),
            _ => None,
        }
    }

    /// Every generator of `U_{v,t}(gl_n)` (no `J`).
    pub fn all(n: usize) -> Vec<Gen> {
        let mut out = Vec::new();
        for i in 1..n {
            out.push(Gen::E(i));
            out.push(Gen::F(i));
        }
        for a in 1..=n {
            out.extend([Gen::a(a), Gen::a_inv(a), Gen::b(a), Gen::b_inv(a)]);
        }
        out
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::E(i) => write!(f, "E{i}"),
            Gen::F(i) => write!(f, "F{i}"),
            Gen::A(a, false) => write!(f, "A{a}"),
            Gen::A(a, true) => write!(f, "A{a}^-1"),
            Gen::B(a, false) => write!(f, "B{a}"),
            Gen::B(a, true) => write!(f, "B{a}^-1"),
            Gen::J(JSign::Plus) => write!(f, "J+"),
            Gen::J(JSign::Minus) => write!(f, "J-"),
            Gen::J(JSign::Zero) => write!(f, "J0"),
        }
    }
}

pub type Word = Vec<Gen>;

pub fn word_string(w: &[Gen]) -> String {
    if w.is_empty() {
        "1".to_string()
    } else {
        w.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("*")
    }
}

/// Formal linear combination of words with Laurent coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Combo {
    terms: BTreeMap<Word, Poly>,
}

impl Combo {
    pub fn zero() -> Self {
        Combo::default()
    }

    pub fn one() -> Self {
        Combo::word(Vec::new())
    }

    pub fn word(w: Word) -> Self {
        Combo::term(Poly::one(), w)
    }

    pub fn gen(g: Gen) -> Self {
        Combo::word(vec![g])
    }

    pub fn scalar(c: Poly) -> Self {
        Combo::term(c, Vec::new())
    }

    pub fn term(c: Poly, w: Word) -> Self {
        let mut out = Combo::zero();
        out.add_term(c, w);
        out
    }

    pub fn add_term(&mut self, c: Poly, w: Word) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Poly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Combo) -> Combo {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(c.clone(), w.clone());
        }
        out
    }

    pub fn sub(&self, other: &Combo) -> Combo {
        self.add(&other.scale(&-Poly::one()))
    }

    pub fn scale(&self, c: &Poly) -> Combo {
        let mut out = Combo::zero();
        for (w, x) in &self.terms {
            out.add_term(x * c, w.clone());
        }
        out
    }

    /// Product by concatenation.
    pub fn mul(&self, other: &Combo) -> Combo {
        let mut out = Combo::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend(w2.iter().copied());
                out.add_term(c1 * c2, w);
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> Combo {
        let mut out = Combo::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Apply `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> Combo {
        let mut out = Combo::zero();
        for (w, c) in &self.terms {
            out.add_term(f(c), w.clone());
        }
        out
    }
}

impl fmt::Display for Combo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c})·{}", word_string(w))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// An algebra (or module of operators) in which generator words can be evaluated.
pub trait Model {
    type Elt: Clone;

    fn identity(&self) -> Self::Elt;
    /// `g · x`.
    fn left_mul(&self, g: Gen, x: &Self::Elt) -> Result<Self::Elt>;
    fn lin_comb(&self, terms: &[(Poly, Self::Elt)]) -> Self::Elt;
    /// Description of a nonzero entry, or `None` if `x` is zero.
    fn witness(&self, x: &Self::Elt) -> Option<String>;
}

pub fn eval_word<M: Model>(m: &M, w: &[Gen]) -> Result<M::Elt> {
    let mut x = m.identity();
    for &g in w.iter().rev() {
        x = m.left_mul(g, &x)?;
    }
    Ok(x)
}

pub fn eval_combo<M: Model>(m: &M, c: &Combo) -> Result<M::Elt> {
    let mut parts = Vec::new();
    for (w, coef) in c.terms() {
        parts.push((coef.clone(), eval_word(m, w)?));
    }
    Ok(m.lin_comb(&parts))
}

/// `None` if the combination vanishes in the model, else a witness.
pub fn check_zero<M: Model>(m: &M, c: &Combo) -> Result<Option<String>> {
    let x = eval_combo(m, c)?;
    Ok(m.witness(&x))
}

/// A relation `printed = 0`, optionally with a corrected reading tried when the printed one fails.
#[derive(Clone, Debug)]
pub struct Relation {
    pub id: String,
    pub printed: Combo,
    pub alternate: Option<(String, Combo)>,
}

impl Relation {
    pub fn new(id: impl Into<String>, printed: Combo) -> Self {
        Relation { id: id.into(), printed, alternate: None }
    }

    /// `lhs = rhs`.
    pub fn eq(id: impl Into<String>, lhs: Combo, rhs: Combo) -> Self {
        Relation::new(id, lhs.sub(&rhs))
    }

    pub fn with_alternate(mut self, label: &str, combo: Combo) -> Self {
        self.alternate = Some((label.to_string(), combo));
        self
    }
}

/// Checks the printed form; if it fails and an alternate exists, the alternate is
/// checked and the check records which form held.
pub fn verify_relation_in<M: Model>(m: &M, rel: &Relation) -> Result<Check> {
    let printed = check_zero(m, &rel.printed)?;
    let Some(w) = printed else {
        return Ok(Check::pass(&rel.id).with_form("printed"));
    };
    if let Some((label, alt)) = &rel.alternate {
        if check_zero(m, alt)?.is_none() {
            return Ok(Check::pass(&rel.id)
                .with_form(format!("alternate:{label}"))
                .with_detail(format!("printed form fails at {w}")));
        }
    }
    Ok(Check::fail(&rel.id, w).with_form("printed"))
}

pub fn verify_catalog<M: Model>(m: &M, rels: &[Relation]) -> Result<Vec<Check>> {
    rels.iter().map(|r| verify_relation_in(m, r)).collect()
}
