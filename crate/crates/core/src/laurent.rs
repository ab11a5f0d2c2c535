//! Sparse Laurent polynomials in `v` and `t`, quantum integers and binomials.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

/// Exact coefficient ring: `i64` (integers) or `BigRational`.
pub trait Coeff:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    fn div_exact(&self, other: &Self) -> Option<Self>;
    fn to_rational(&self) -> BigRational;
    fn from_i64(x: i64) -> Self;
    /// Numerator and denominator, when both fit in an `i64`.
    fn num_den(&self) -> Option<(i64, i64)>;
    fn from_num_den(num: i64, den: i64) -> Option<Self>;
    fn render(&self) -> String;
}

impl Coeff for i64 {
    fn div_exact(&self, other: &Self) -> Option<Self> {
        if *other == 0 || self % other != 0 {
            None
        } else {
            Some(self / other)
        }
    }
    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(*self))
    }
    fn from_i64(x: i64) -> Self {
        x
    }
    fn num_den(&self) -> Option<(i64, i64)> {
        Some((*self, 1))
    }
    fn from_num_den(num: i64, den: i64) -> Option<Self> {
        if den != 0 && num % den == 0 {
            Some(num / den)
        } else {
            None
        }
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Coeff for BigRational {
    fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            None
        } else {
            Some(self / other)
        }
    }
    fn to_rational(&self) -> BigRational {
        self.clone()
    }
    fn from_i64(x: i64) -> Self {
        BigRational::from_integer(BigInt::from(x))
    }
    fn num_den(&self) -> Option<(i64, i64)> {
        Some((self.numer().to_i64()?, self.denom().to_i64()?))
    }
    fn from_num_den(num: i64, den: i64) -> Option<Self> {
        if den == 0 {
            None
        } else {
            Some(BigRational::new(BigInt::from(num), BigInt::from(den)))
        }
    }
    fn render(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

/// Sparse bivariate Laurent polynomial; keys are `(v exponent, t exponent)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly2<C: Coeff = i64> {
    terms: BTreeMap<(i64, i64), C>,
}

pub type Poly = LaurentPoly2<i64>;
pub type RatPoly = LaurentPoly2<BigRational>;

impl<C: Coeff> Default for LaurentPoly2<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> LaurentPoly2<C> {
    pub fn zero() -> Self {
        LaurentPoly2 { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(a: i64, b: i64, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        LaurentPoly2 { terms }
    }

    /// `v^a t^b` with unit coefficient.
    pub fn vt(a: i64, b: i64) -> Self {
        Self::monomial(a, b, C::one())
    }

    pub fn v() -> Self {
        Self::vt(1, 0)
    }

    pub fn t() -> Self {
        Self::vt(0, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = ((i64, i64), C)>>(it: I) -> Self {
        let mut p = Self::zero();
        for ((a, b), c) in it {
            p.add_term(a, b, c);
        }
        p
    }

    pub fn add_term(&mut self, a: i64, b: i64, c: C) {
        if c.is_zero() {
            return;
        }
        let key = (a, b);
        let next = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !next.is_zero() {
            self.terms.insert(key, next);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64, &C)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn coeff(&self, a: i64, b: i64) -> C {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(C::zero)
    }

    /// The single term of a monomial, if it is one.
    pub fn as_monomial(&self) -> Option<(i64, i64, C)> {
        if self.terms.len() == 1 {
            let (&(a, b), c) = self.terms.iter().next()?;
            Some((a, b, c.clone()))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(&k, x)| (k, x.clone() * c.clone())))
    }

    pub fn shift(&self, da: i64, db: i64) -> Self {
        LaurentPoly2 {
            terms: self.terms.iter().map(|(&(a, b), c)| ((a + da, b + db), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Integer power; negative exponents are allowed for monomials only.
    pub fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            return Ok(self.pow(e as u32));
        }
        let (a, b, c) = self.as_monomial().ok_or(Error::InexactDivision)?;
        let inv = C::one().div_exact(&c).ok_or(Error::InexactDivision)?;
        Ok(Self::monomial(-a, -b, inv).pow((-e) as u32))
    }

    /// The bar involution: `v -> v^{-1}`, `t` fixed.
    pub fn bar(&self) -> Self {
        LaurentPoly2 { terms: self.terms.iter().map(|(&(a, b), c)| ((-a, b), c.clone())).collect() }
    }

    /// Substitute `t = 1`.
    pub fn at_t_one(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(a, _), c)| ((a, 0), c.clone())))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> LaurentPoly2<D> {
        LaurentPoly2::from_terms(self.terms.iter().map(|(&k, c)| (k, f(c))))
    }

    pub fn to_rational(&self) -> RatPoly {
        self.map_coeffs(|c| c.to_rational())
    }

    pub fn min_t_exp(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.1).min()
    }

    pub fn min_v_exp(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.0).min()
    }

    /// Exact division by a divisor that only involves `v`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::InexactDivision);
        }
        if divisor.terms.keys().any(|k| k.1 != 0) {
            return Err(Error::Unsupported("divisor must be a polynomial in v".into()));
        }
        let dlo = *divisor.terms.keys().next().map(|(a, _)| a).unwrap();
        let dhi = divisor.terms.keys().next_back().map(|(a, _)| *a).unwrap();
        let lead = divisor.terms[&(dhi, 0)].clone();
        let mut slices: BTreeMap<i64, BTreeMap<i64, C>> = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            slices.entry(b).or_default().insert(a, c.clone());
        }
        let mut out = Self::zero();
        for (b, mut rem) in slices {
            loop {
                let (rlo, rhi) = match (rem.keys().next(), rem.keys().next_back()) {
                    (Some(&lo), Some(&hi)) => (lo, hi),
                    _ => break,
                };
                if rhi - rlo < dhi - dlo {
                    return Err(Error::InexactDivision);
                }
                let q = rem[&rhi].div_exact(&lead).ok_or(Error::InexactDivision)?;
                let shift = rhi - dhi;
                for (&(a, _), c) in &divisor.terms {
                    let key = a + shift;
                    let next = rem.remove(&key).unwrap_or_else(C::zero) - q.clone() * c.clone();
                    if !next.is_zero() {
                        rem.insert(key, next);
                    }
                }
                out.add_term(shift, b, q);
            }
        }
        Ok(out)
    }

    /// Exact evaluation at `v = v0`, `t = t0`.
    pub fn specialize(&self, v0: &BigRational, t0: &BigRational) -> Result<BigRational> {
        if v0.is_zero() || t0.is_zero() {
            return Err(Error::ZeroSubstitution);
        }
        let mut acc = BigRational::zero();
        for (&(a, b), c) in &self.terms {
            acc += c.to_rational() * rat_pow(v0, a) * rat_pow(t0, b);
        }
        Ok(acc)
    }

    fn eval_q_generic(&self, q: i64) -> Result<BTreeMap<i64, BigRational>> {
        if q < 2 {
            return Err(Error::Unsupported(format!("q = {q} must be at least 2")));
        }
        let qr = BigRational::from_integer(BigInt::from(q));
        let mut out: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            if a.rem_euclid(2) != 0 {
                return Err(Error::OddVPower(a));
            }
            let val = c.to_rational() * rat_pow(&qr, a / 2);
            let e = out.entry(b).or_insert_with(BigRational::zero);
            *e += val;
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// Substitute `v^2 = q`, requiring integer coefficients in the result.
    pub fn eval_q(&self, q: i64) -> Result<TPoly<i64>> {
        let m = self.eval_q_generic(q)?;
        let mut out = TPoly::zero();
        for (b, c) in m {
            if !c.is_integer() {
                return Err(Error::NotIntegral { q, t_exp: b });
            }
            let ci = c.numer().to_i64().ok_or(Error::NotIntegral { q, t_exp: b })?;
            out.add_term(b, ci);
        }
        Ok(out)
    }

    /// Substitute `v^2 = q` over the rationals.
    pub fn eval_q_rational(&self, q: i64) -> Result<TPoly<BigRational>> {
        let m = self.eval_q_generic(q)?;
        let mut out = TPoly::zero();
        for (b, c) in m {
            out.add_term(b, c);
        }
        Ok(out)
    }

    /// Rewrite in `r = vt`, `s = v^{-1}t`.
    pub fn to_rs(&self) -> Result<RSPoly<C>> {
        let mut out = RSPoly::zero();
        for (&(a, b), c) in &self.terms {
            if (a + b).rem_euclid(2) != 0 {
                return Err(Error::NotDescendable { a, b });
            }
            out.add_term((a + b) / 2, (b - a) / 2, c.clone());
        }
        Ok(out)
    }

    /// JSON form: `[a, b, numerator, denominator]` quadruples in canonical order.
    pub fn to_quads(&self) -> Result<Vec<[i64; 4]>> {
        self.terms
            .iter()
            .map(|(&(a, b), c)| {
                let (n, d) = c.num_den().ok_or_else(|| Error::Schema("coefficient too large".into()))?;
                Ok([a, b, n, d])
            })
            .collect()
    }

    pub fn from_quads(q: &[[i64; 4]]) -> Result<Self> {
        let mut p = Self::zero();
        for &[a, b, n, d] in q {
            let c = C::from_num_den(n, d)
                .ok_or_else(|| Error::Schema(format!("coefficient {n}/{d} not representable")))?;
            p.add_term(a, b, c);
        }
        Ok(p)
    }
}

fn rat_pow(x: &BigRational, e: i64) -> BigRational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    num_traits::pow::pow(base, e.unsigned_abs() as usize)
}

impl<C: Coeff> fmt::Display for LaurentPoly2<C> {
    /// Canonical text form `c*v^a*t^b + ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(&(a, b), c)| format!("{}*v^{}*t^{}", c.render(), a, b)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<C: Coeff> FromStr for LaurentPoly2<C> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut p = Self::zero();
        if s == "0" || s.is_empty() {
            return Ok(p);
        }
        for part in s.split(" + ") {
            let bad = || Error::Schema(format!("bad term '{part}'"));
            let mut it = part.trim().split('*');
            let c = it.next().ok_or_else(bad)?;
            let vpart = it.next().ok_or_else(bad)?;
            let tpart = it.next().ok_or_else(bad)?;
            let a: i64 = vpart.strip_prefix("v^").ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let b: i64 = tpart.strip_prefix("t^").ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let (n, d) = match c.split_once('/') {
                Some((n, d)) => (n.parse().map_err(|_| bad())?, d.parse().map_err(|_| bad())?),
                None => (c.parse().map_err(|_| bad())?, 1),
            };
            p.add_term(a, b, C::from_num_den(n, d).ok_or_else(bad)?);
        }
        Ok(p)
    }
}

impl<C: Coeff> Add for &LaurentPoly2<C> {
    type Output = LaurentPoly2<C>;
    fn add(self, rhs: &LaurentPoly2<C>) -> LaurentPoly2<C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<C: Coeff> Sub for &LaurentPoly2<C> {
    type Output = LaurentPoly2<C>;
    fn sub(self, rhs: &LaurentPoly2<C>) -> LaurentPoly2<C> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<C: Coeff> Mul for &LaurentPoly2<C> {
    type Output = LaurentPoly2<C>;
    fn mul(self, rhs: &LaurentPoly2<C>) -> LaurentPoly2<C> {
        let mut out = LaurentPoly2::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Coeff> Neg for &LaurentPoly2<C> {
    type Output = LaurentPoly2<C>;
    fn neg(self) -> LaurentPoly2<C> {
        LaurentPoly2 { terms: self.terms.iter().map(|(&k, c)| (k, -c.clone())).collect() }
    }
}

impl<C: Coeff> AddAssign<&LaurentPoly2<C>> for LaurentPoly2<C> {
    fn add_assign(&mut self, rhs: &LaurentPoly2<C>) {
        for (&(a, b), c) in &rhs.terms {
            self.add_term(a, b, c.clone());
        }
    }
}

impl<C: Coeff> SubAssign<&LaurentPoly2<C>> for LaurentPoly2<C> {
    fn sub_assign(&mut self, rhs: &LaurentPoly2<C>) {
        for (&(a, b), c) in &rhs.terms {
            self.add_term(a, b, -c.clone());
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr for LaurentPoly2<C> {
            type Output = LaurentPoly2<C>;
            fn $m(self, rhs: LaurentPoly2<C>) -> LaurentPoly2<C> {
                (&self).$m(&rhs)
            }
        }
        impl<C: Coeff> $tr<&LaurentPoly2<C>> for LaurentPoly2<C> {
            type Output = LaurentPoly2<C>;
            fn $m(self, rhs: &LaurentPoly2<C>) -> LaurentPoly2<C> {
                (&self).$m(rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl<C: Coeff> Neg for LaurentPoly2<C> {
    type Output = LaurentPoly2<C>;
    fn neg(self) -> LaurentPoly2<C> {
        -&self
    }
}

/// Univariate Laurent polynomial in `t`, the target of [`LaurentPoly2::eval_q`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TPoly<C: Coeff> {
    terms: BTreeMap<i64, C>,
}

impl<C: Coeff> TPoly<C> {
    pub fn zero() -> Self {
        TPoly { terms: BTreeMap::new() }
    }
    pub fn add_term(&mut self, b: i64, c: C) {
        if c.is_zero() {
            return;
        }
        let next = match self.terms.remove(&b) {
            Some(old) => old + c,
            None => c,
        };
        if !next.is_zero() {
            self.terms.insert(b, next);
        }
    }
    pub fn coeff(&self, b: i64) -> C {
        self.terms.get(&b).cloned().unwrap_or_else(C::zero)
    }
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.terms.iter().map(|(&b, c)| (b, c))
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&b1, c1) in &self.terms {
            for (&b2, c2) in &other.terms {
                out.add_term(b1 + b2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Coeff> fmt::Display for TPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(b, c)| format!("{}*t^{}", c.render(), b)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Laurent polynomial in `r = vt` and `s = v^{-1}t`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RSPoly<C: Coeff = i64> {
    terms: BTreeMap<(i64, i64), C>,
}

impl<C: Coeff> RSPoly<C> {
    pub fn zero() -> Self {
        RSPoly { terms: BTreeMap::new() }
    }
    pub fn monomial(x: i64, y: i64, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(x, y, c);
        p
    }
    pub fn add_term(&mut self, x: i64, y: i64, c: C) {
        if c.is_zero() {
            return;
        }
        let next = match self.terms.remove(&(x, y)) {
            Some(old) => old + c,
            None => c,
        };
        if !next.is_zero() {
            self.terms.insert((x, y), next);
        }
    }
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64, &C)> {
        self.terms.iter().map(|(&(x, y), c)| (x, y, c))
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    /// Substitute back `r = vt`, `s = v^{-1}t`.
    pub fn to_vt(&self) -> LaurentPoly2<C> {
        LaurentPoly2::from_terms(self.terms.iter().map(|(&(x, y), c)| ((x - y, x + y), c.clone())))
    }
    pub fn to_quads(&self) -> Result<Vec<[i64; 4]>> {
        self.terms
            .iter()
            .map(|(&(x, y), c)| {
                let (n, d) = c.num_den().ok_or_else(|| Error::Schema("coefficient too large".into()))?;
                Ok([x, y, n, d])
            })
            .collect()
    }
}

impl<C: Coeff> fmt::Display for RSPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(&(x, y), c)| format!("{}*r^{}*s^{}", c.render(), x, y)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `(n)_v = 1 + v^2 + ... + v^{2(n-1)}` for `n >= 0`.
pub fn qint(n: i64) -> Result<Poly> {
    if n < 0 {
        return Err(Error::NegativeArgument(n));
    }
    Ok(qint_signed(n))
}

/// `(v^{2n} - 1)/(v^2 - 1)` for any integer `n`.
pub fn qint_signed(n: i64) -> Poly {
    let mut p = Poly::zero();
    if n >= 0 {
        for k in 0..n {
            p.add_term(2 * k, 0, 1);
        }
    } else {
        for k in 1..=(-n) {
            p.add_term(-2 * k, 0, -1);
        }
    }
    p
}

/// Gaussian binomial `prod_{i=1}^k (n+1-i)_v / (i)_v`, for `0 <= k <= n`.
pub fn qbinom(n: i64, k: i64) -> Result<Poly> {
    if n < 0 || k < 0 || k > n {
        return Err(Error::InvalidBinomial { n, k });
    }
    qbinom_general(n, k)
}

/// The same product for any integer top entry and `k >= 0`.
pub fn qbinom_general(n: i64, k: i64) -> Result<Poly> {
    if k < 0 {
        return Err(Error::InvalidBinomial { n, k });
    }
    let mut num = Poly::one();
    let mut den = Poly::one();
    for i in 1..=k {
        num = &num * &qint_signed(n + 1 - i);
        den = &den * &qint_signed(i);
    }
    num.div_exact(&den)
}

pub fn qbinom_bar(n: i64, k: i64) -> Result<Poly> {
    Ok(qbinom(n, k)?.bar())
}

/// Balanced binomial `v^{-k(n-k)} (n choose k)_v`, symmetric under bar.
pub fn balanced_binom(n: i64, k: i64) -> Result<Poly> {
    Ok(qbinom(n, k)?.shift(-k * (n - k), 0))
}

/// Two-parameter integer `((vt)^k - (v^{-1}t)^k) / (vt - v^{-1}t)`.
pub fn qint_vt(k: i64) -> Result<Poly> {
    if k < 0 {
        return Err(Error::NegativeArgument(k));
    }
    let mut p = Poly::zero();
    for j in 0..k {
        p.add_term(k - 1 - 2 * j, k - 1, 1);
    }
    Ok(p)
}

pub fn qfactorial_v(p: i64) -> Result<Poly> {
    let mut out = Poly::one();
    for k in 1..=p {
        out = &out * &qint(k)?;
    }
    Ok(out)
}

pub fn qfactorial_vt(p: i64) -> Result<Poly> {
    let mut out = Poly::one();
    for k in 1..=p {
        out = &out * &qint_vt(k)?;
    }
    Ok(out)
}

/// The factor `v - v^{-1}`.
pub fn v_minus_vinv() -> Poly {
    Poly::from_terms([((1, 0), 1), ((-1, 0), -1)])
}

/// The factor `vt - v^{-1}t`.
pub fn vt_minus_vinvt() -> Poly {
    Poly::from_terms([((1, 1), 1), ((-1, 1), -1)])
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_integral_rational(x: &BigRational) -> bool {
    x.is_integer() && x.numer().abs() < BigInt::from(i64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn add_examples() {
        let a = Poly::v() + Poly::t();
        assert_eq!(a + (-Poly::v()), Poly::t());
        assert_eq!(Poly::zero() + Poly::v(), Poly::v());
        assert_eq!(Poly::vt(2, 1) + Poly::vt(2, 1), Poly::monomial(2, 1, 2));
    }

    #[test]
    fn mul_examples() {
        let a = Poly::v() + Poly::t();
        let b = Poly::v() - Poly::t();
        assert_eq!(a * b, Poly::vt(2, 0) - Poly::vt(0, 2));
        assert_eq!(Poly::vt(-1, 0) * Poly::v(), Poly::one());
        let x = Poly::vt(1, 1) - Poly::vt(-1, 1);
        let y = Poly::vt(1, 1) + Poly::vt(-1, 1);
        assert_eq!(x * y, Poly::vt(2, 2) - Poly::vt(-2, 2));
    }

    #[test]
    fn bar_examples() {
        assert_eq!(Poly::vt(2, 1).bar(), Poly::vt(-2, 1));
        assert_eq!(Poly::one().bar(), Poly::one());
        let s = Poly::v() + Poly::vt(-1, 0);
        assert_eq!(s.bar(), s);
    }

    #[test]
    fn quantum_integers() {
        assert_eq!(qint(2).unwrap(), Poly::vt(2, 0) + Poly::one());
        assert_eq!(qint(1).unwrap(), Poly::one());
        assert_eq!(qint(0).unwrap(), Poly::zero());
        assert_eq!(qint(-1), Err(Error::NegativeArgument(-1)));
        assert_eq!(qint_signed(-1), -Poly::vt(-2, 0));
    }

    #[test]
    fn quantum_binomials() {
        assert_eq!(qbinom(2, 1).unwrap(), Poly::vt(2, 0) + Poly::one());
        assert_eq!(qbinom(5, 0).unwrap(), Poly::one());
        assert_eq!(qbinom(3, 2).unwrap(), Poly::vt(4, 0) + Poly::vt(2, 0) + Poly::one());
        assert!(qbinom(2, 3).is_err());
        assert_eq!(balanced_binom(2, 1).unwrap(), Poly::v() + Poly::vt(-1, 0));
        assert_eq!(qint_vt(2).unwrap(), Poly::vt(1, 1) + Poly::vt(-1, 1));
    }

    #[test]
    fn specialize_examples() {
        let two = rational(2, 1);
        let three = rational(3, 1);
        assert_eq!(Poly::vt(1, 1).specialize(&two, &three).unwrap(), rational(6, 1));
        assert_eq!(Poly::vt(-1, 0).specialize(&two, &three).unwrap(), rational(1, 2));
        assert_eq!(vt_minus_vinvt().specialize(&two, &three).unwrap(), rational(9, 2));
        assert_eq!(Poly::v().specialize(&rational(0, 1), &three), Err(Error::ZeroSubstitution));
    }

    #[test]
    fn eval_q_examples() {
        let x = Poly::vt(2, 0) - Poly::one();
        assert_eq!(x.eval_q(3).unwrap().coeff(0), 2);
        assert_eq!(Poly::vt(1, 1).eval_q(5), Err(Error::OddVPower(1)));
        let y = Poly::vt(-2, 2);
        assert!(matches!(y.eval_q(9), Err(Error::NotIntegral { .. })));
        assert_eq!(y.eval_q_rational(9).unwrap().coeff(2), rational(1, 9));
    }

    #[test]
    fn to_rs_examples() {
        assert_eq!(Poly::vt(1, 1).to_rs().unwrap(), RSPoly::monomial(1, 0, 1));
        assert_eq!(Poly::vt(-1, 1).to_rs().unwrap(), RSPoly::monomial(0, 1, 1));
        assert_eq!(Poly::v().to_rs(), Err(Error::NotDescendable { a: 1, b: 0 }));
    }

    #[test]
    fn text_and_json_round_trip() {
        let x = p("2*v^-1*t^3 + -1*v^0*t^0");
        assert_eq!(x.to_string().parse::<Poly>().unwrap(), x);
        assert_eq!(Poly::from_quads(&x.to_quads().unwrap()).unwrap(), x);
        let r: RatPoly = "1/2*v^1*t^0".parse().unwrap();
        assert_eq!(r.to_string(), "1/2*v^1*t^0");
    }

    #[test]
    fn inexact_division_detected() {
        assert_eq!(Poly::one().div_exact(&qint(2).unwrap()), Err(Error::InexactDivision));
    }
}
