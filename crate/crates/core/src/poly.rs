//! Sparse multivariate polynomials over Q.
//!
//! A [`Polynomial`] carries the [`VarContext`] it lives in; terms are kept in a
//! `BTreeMap` keyed by [`Monomial`] under graded lexicographic order (context
//! order breaks ties), so iteration and rendering are deterministic and zero
//! coefficients are never stored.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact coefficient field. `BigRational` is always reduced with a positive
/// denominator, and zero is `0/1`.
pub type Rational = BigRational;

/// Builds the rational `n/d`. Panics on a zero denominator.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials live in different variable contexts")]
    ContextMismatch,
    #[error("variable index {0} is not in the context")]
    UnknownVariable(usize),
    #[error("duplicate variable name `{0}`")]
    DuplicateName(String),
    #[error("variable context must contain at least one variable")]
    EmptyContext,
}

#[derive(Debug, PartialEq, Eq)]
struct ContextInner {
    names: Vec<String>,
    distinguished: usize,
}

/// Ordered, duplicate-free list of variable names plus the position of the
/// distinguished variable `x` (the one a normalized derivation sends to 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarContext(Arc<ContextInner>);

impl VarContext {
    pub fn new<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        distinguished: usize,
    ) -> Result<Self, PolyError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(PolyError::EmptyContext);
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(PolyError::DuplicateName(n.clone()));
            }
        }
        if distinguished >= names.len() {
            return Err(PolyError::UnknownVariable(distinguished));
        }
        Ok(VarContext(Arc::new(ContextInner {
            names,
            distinguished,
        })))
    }

    /// Context whose first variable is distinguished.
    pub fn with_names<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, PolyError> {
        Self::new(names, 0)
    }

    pub fn arity(&self) -> usize {
        self.0.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.0.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    pub fn distinguished(&self) -> usize {
        self.0.distinguished
    }

    pub(crate) fn check(&self, v: usize) -> Result<(), PolyError> {
        if v < self.arity() {
            Ok(())
        } else {
            Err(PolyError::UnknownVariable(v))
        }
    }
}

/// Degree of a polynomial in some variable(s); the zero polynomial has
/// degree `NegInfinity`, which compares below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegInfinity => None,
        }
    }

    pub fn is_at_least(self, d: u32) -> bool {
        self >= Degree::Finite(d)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Exponent vector, one entry per context variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn var(arity: usize, v: usize, e: u32) -> Self {
        let mut m = Self::one(arity);
        m.0[v] = e;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, v: usize) -> u32 {
        self.0[v]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn with_exponent(&self, v: usize, e: u32) -> Monomial {
        let mut m = self.clone();
        m.0[v] = e;
        m
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    ctx: VarContext,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ctx: &VarContext) -> Self {
        Polynomial {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &VarContext) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn constant(ctx: &VarContext, c: Rational) -> Self {
        Self::term(ctx, Monomial::one(ctx.arity()), c)
    }

    pub fn term(ctx: &VarContext, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.0.len(), ctx.arity(), "monomial arity");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial {
            ctx: ctx.clone(),
            terms,
        }
    }

    /// The variable `v` as a polynomial. Panics if `v` is out of range.
    pub fn var(ctx: &VarContext, v: usize) -> Self {
        Self::term(ctx, Monomial::var(ctx.arity(), v, 1), Rational::one())
    }

    pub fn var_pow(ctx: &VarContext, v: usize, e: u32) -> Self {
        Self::term(ctx, Monomial::var(ctx.arity(), v, e), Rational::one())
    }

    /// Sums the given terms, merging equal monomials.
    pub fn from_terms(ctx: &VarContext, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(ctx);
        for (m, c) in terms {
            assert_eq!(m.0.len(), ctx.arity(), "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    /// Builds `Σ coeffs[k]·v^k`.
    pub fn from_univariate(ctx: &VarContext, v: usize, coeffs: &[Rational]) -> Self {
        Self::from_terms(
            ctx,
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (Monomial::var(ctx.arity(), v, k as u32), c.clone())),
        )
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn context(&self) -> &VarContext {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// `Some(c)` when the polynomial is the constant `c` (including 0).
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.terms.values().next().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    fn same_context(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(PolyError::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.same_context(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.same_context(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.same_context(other)?;
        let mut out = Polynomial::zero(&self.ctx);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ctx);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial(&self, v: usize) -> Result<Polynomial, PolyError> {
        self.ctx.check(v)?;
        Ok(self.partial_at(v))
    }

    pub(crate) fn partial_at(&self, v: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.0[v];
            if e > 0 {
                out.add_term(m.with_exponent(v, e - 1), c * Rational::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    pub fn degree_in(&self, v: usize) -> Result<Degree, PolyError> {
        self.ctx.check(v)?;
        Ok(self.degree_at(v))
    }

    pub(crate) fn degree_at(&self, v: usize) -> Degree {
        self.terms
            .keys()
            .map(|m| m.0[v])
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    pub fn total_degree(&self) -> Degree {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Coefficient of `v^k`, as a polynomial in the same context that no
    /// longer involves `v`.
    pub fn coefficient_of(&self, v: usize, k: u32) -> Result<Polynomial, PolyError> {
        self.ctx.check(v)?;
        Ok(self.coefficient_at(v, k))
    }

    pub(crate) fn coefficient_at(&self, v: usize, k: u32) -> Polynomial {
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0[v] == k)
                .map(|(m, c)| (m.with_exponent(v, 0), c.clone()))
                .collect(),
        }
    }

    /// Sets every listed variable to zero.
    pub fn substitute_zero(&self, vars: &[usize]) -> Result<Polynomial, PolyError> {
        for &v in vars {
            self.ctx.check(v)?;
        }
        Ok(Polynomial {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| vars.iter().all(|&v| m.0[v] == 0))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        })
    }

    pub fn involves(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.0[v] > 0)
    }

    /// Indices of the variables that actually occur.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.ctx.arity()).filter(|&v| self.involves(v)).collect()
    }

    /// True when no variable outside `allowed` occurs.
    pub fn only_involves(&self, allowed: &[usize]) -> bool {
        self.variables().iter().all(|v| allowed.contains(v))
    }

    /// Dense coefficient list in `v` (index = exponent), or `None` if some
    /// other variable occurs. The zero polynomial gives an empty list.
    pub fn univariate_coefficients(&self, v: usize) -> Option<Vec<Rational>> {
        if !self.only_involves(&[v]) {
            return None;
        }
        let len = self.degree_at(v).finite().map_or(0, |d| d as usize + 1);
        let mut out = vec![Rational::zero(); len];
        for (m, c) in &self.terms {
            out[m.0[v] as usize] = c.clone();
        }
        Some(out)
    }

    /// Moves the polynomial into `target`, sending source variable `i` to
    /// `map[i]`. Returns `None` if a variable that occurs has no image.
    pub fn transfer(&self, target: &VarContext, map: &[Option<usize>]) -> Option<Polynomial> {
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.arity()];
            for (i, &k) in m.0.iter().enumerate() {
                if k > 0 {
                    e[map.get(i).copied().flatten()?] += k;
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        Some(out)
    }

    fn render_monomial(&self, m: &Monomial) -> String {
        m.0.iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| {
                if e == 1 {
                    self.ctx.name(v).to_string()
                } else {
                    format!("{}^{}", self.ctx.name(v), e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for Polynomial {
    /// Canonical text, highest monomial first, e.g. `x^2*y1 - 3*x + 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", self.render_monomial(m))?;
            } else {
                write!(f, "{}*{}", abs, self.render_monomial(m))?;
            }
        }
        Ok(())
    }
}

impl serde::Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial context mismatch")
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx() -> VarContext {
        VarContext::with_names(["x", "y"]).unwrap()
    }

    fn x(c: &VarContext) -> Polynomial {
        Polynomial::var(c, 0)
    }

    fn y(c: &VarContext) -> Polynomial {
        Polynomial::var(c, 1)
    }

    fn k(c: &VarContext, n: i64, d: i64) -> Polynomial {
        Polynomial::constant(c, rat(n, d))
    }

    #[test]
    fn add_examples() {
        let c = ctx();
        assert_eq!((&x(&c) + &k(&c, 1, 1)) + (&x(&c) - &k(&c, 1, 1)), x(&c).scale(&rat(2, 1)));
        let p = &x(&c) * &y(&c) + k(&c, 3, 1);
        assert_eq!(&p + &Polynomial::zero(&c), p);
        assert_eq!(
            x(&c).scale(&rat(1, 2)) + x(&c).scale(&rat(1, 3)),
            x(&c).scale(&rat(5, 6))
        );
    }

    #[test]
    fn mul_examples() {
        let c = ctx();
        let lhs = (&x(&c) + &y(&c)) * (&x(&c) - &y(&c));
        assert_eq!(lhs, x(&c).pow(2) - y(&c).pow(2));
        let p = &x(&c) + &k(&c, 7, 3);
        assert_eq!(&p * &Polynomial::one(&c), p);
        assert_eq!(x(&c).scale(&rat(2, 1)) * k(&c, 1, 2), x(&c));
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = ctx();
        let b = VarContext::with_names(["x", "z"]).unwrap();
        assert_eq!(x(&a).checked_add(&x(&b)), Err(PolyError::ContextMismatch));
        assert_eq!(x(&a).checked_mul(&x(&b)), Err(PolyError::ContextMismatch));
    }

    #[test]
    fn context_rejects_duplicates() {
        assert!(matches!(
            VarContext::with_names(["x", "x"]),
            Err(PolyError::DuplicateName(_))
        ));
        assert!(VarContext::new(["x"], 3).is_err());
    }

    #[test]
    fn partial_examples() {
        let c = ctx();
        let x2y = x(&c).pow(2) * y(&c);
        assert_eq!(x2y.partial(0).unwrap(), (x(&c) * y(&c)).scale(&rat(2, 1)));
        assert!(x(&c).pow(2).partial(1).unwrap().is_zero());
        assert_eq!(x(&c).pow(3).scale(&rat(1, 3)).partial(0).unwrap(), x(&c).pow(2));
        assert_eq!(x(&c).partial(5), Err(PolyError::UnknownVariable(5)));
    }

    #[test]
    fn degree_examples() {
        let c = ctx();
        let p = x(&c).pow(2) * y(&c) + x(&c);
        assert_eq!(p.degree_in(0).unwrap(), Degree::Finite(2));
        assert_eq!(x(&c).pow(2).degree_in(1).unwrap(), Degree::Finite(0));
        assert_eq!(Polynomial::zero(&c).degree_in(0).unwrap(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
    }

    #[test]
    fn coefficient_examples() {
        let c = ctx();
        let p = x(&c).pow(2) * y(&c) + x(&c) * y(&c) + k(&c, 3, 1);
        assert_eq!(p.coefficient_of(1, 1).unwrap(), x(&c).pow(2) + x(&c));
        assert!(p.coefficient_of(1, 4).unwrap().is_zero());

        let c3 = VarContext::with_names(["x1", "x2", "x3"]).unwrap();
        let x1 = Polynomial::var(&c3, 0);
        let x2 = Polynomial::var(&c3, 1);
        let b3 = &x1 * &x2.pow(2) + &x2 + Polynomial::one(&c3);
        assert_eq!(b3.coefficient_of(1, 2).unwrap(), x1);
    }

    #[test]
    fn substitute_zero_examples() {
        let c = VarContext::with_names(["x", "y1", "y2"]).unwrap();
        let (xx, y1, y2) = (Polynomial::var(&c, 0), Polynomial::var(&c, 1), Polynomial::var(&c, 2));
        let p = &y1 * &y2 + &y1 + &xx;
        assert_eq!(p.substitute_zero(&[2]).unwrap(), &y1 + &xx);
        assert_eq!(p.substitute_zero(&[]).unwrap(), p);
        assert!((&xx * &y2.pow(2)).substitute_zero(&[2]).unwrap().is_zero());
    }

    #[test]
    fn render_examples() {
        let c = VarContext::with_names(["x", "y1"]).unwrap();
        let p = Polynomial::var_pow(&c, 0, 2) * Polynomial::var(&c, 1)
            + Polynomial::constant(&c, rat(1, 2));
        assert_eq!(p.to_string(), "x^2*y1 + 1/2");
        assert_eq!(Polynomial::zero(&c).to_string(), "0");
        assert_eq!((-Polynomial::var(&c, 0)).to_string(), "-x");
        let q = Polynomial::var(&c, 0).scale(&rat(-3, 4)) + Polynomial::constant(&c, rat(-2, 1));
        assert_eq!(q.to_string(), "-3/4*x - 2");
    }

    #[test]
    fn univariate_round_trip() {
        let c = ctx();
        let coeffs = vec![rat(1, 1), rat(0, 1), rat(-5, 2)];
        let p = Polynomial::from_univariate(&c, 0, &coeffs);
        assert_eq!(p.univariate_coefficients(0).unwrap(), coeffs);
        assert!((&p * &y(&c)).univariate_coefficients(0).is_none());
        assert!(Polynomial::zero(&c).univariate_coefficients(0).unwrap().is_empty());
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(((0u32..3, 0u32..3), (-4i64..=4, 1i64..=3)), 0..5).prop_map(|ts| {
            let c = ctx();
            Polynomial::from_terms(
                &c,
                ts.into_iter()
                    .map(|((a, b), (n, d))| (Monomial::new(vec![a, b]), rat(n, d))),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert!((&p - &p).is_zero());
        }

        #[test]
        fn leibniz(p in arb_poly(), q in arb_poly(), v in 0usize..2) {
            let lhs = (&p * &q).partial(v).unwrap();
            let rhs = &p.partial(v).unwrap() * &q + &p * &q.partial(v).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn coefficients_reconstruct(p in arb_poly(), v in 0usize..2) {
            let c = p.context().clone();
            let mut acc = Polynomial::zero(&c);
            if let Some(d) = p.degree_in(v).unwrap().finite() {
                for k in 0..=d {
                    acc = acc + p.coefficient_of(v, k).unwrap() * Polynomial::var_pow(&c, v, k);
                }
            }
            prop_assert_eq!(acc, p);
        }

        #[test]
        fn degree_is_additive(p in arb_poly(), q in arb_poly(), v in 0usize..2) {
            prop_assume!(!p.is_zero() && !q.is_zero());
            let (dp, dq) = (p.degree_in(v).unwrap().finite().unwrap(), q.degree_in(v).unwrap().finite().unwrap());
            prop_assert_eq!((&p * &q).degree_in(v).unwrap(), Degree::Finite(dp + dq));
        }
    }
}
