//! Degree-bounded image and kernel membership.
//!
//! The unknown `f` ranges over the monomials inside a per-variable exponent
//! box. Each box monomial is pushed through `D` symbolically, and matching
//! coefficients of `D(f) − g` gives an exact linear system over Q. Every
//! answer is relative to the box: an infeasible system only says that no
//! preimage exists *within those bounds*.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::ser::SerializeMap;
use serde::Serialize;
use thiserror::Error;

use crate::derivation::Derivation;
use crate::linalg::{self, Solution};
use crate::poly::{Monomial, PolyError, Polynomial, Rational, VarContext};

/// Largest number of unknowns a bounded system may have.
pub const MAX_UNKNOWNS: u128 = 10_000_000;

/// Per-variable bound used for witness checks unless overridden.
pub const WITNESS_DEFAULT_BOUND: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MembershipError {
    #[error("derivation, target and bounds must share one variable context")]
    ContextMismatch,
    #[error("expected {expected} degree bounds, got {got}")]
    BoundsArity { expected: usize, got: usize },
    #[error("unknown variable `{0}` in degree bounds")]
    UnknownVariable(String),
    #[error("bounds give {unknowns} unknowns, above the limit of {limit}")]
    ResourceLimit { unknowns: u128, limit: u128 },
}

impl From<PolyError> for MembershipError {
    fn from(_: PolyError) -> Self {
        MembershipError::ContextMismatch
    }
}

/// Maximum exponent of each variable in the unknown `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeBounds {
    ctx: VarContext,
    max: Vec<u32>,
}

impl DegreeBounds {
    pub fn new(ctx: &VarContext, max: Vec<u32>) -> Result<Self, MembershipError> {
        if max.len() != ctx.arity() {
            return Err(MembershipError::BoundsArity { expected: ctx.arity(), got: max.len() });
        }
        Ok(DegreeBounds { ctx: ctx.clone(), max })
    }

    pub fn uniform(ctx: &VarContext, n: u32) -> Self {
        DegreeBounds { ctx: ctx.clone(), max: vec![n; ctx.arity()] }
    }

    pub fn witness_default(ctx: &VarContext) -> Self {
        Self::uniform(ctx, WITNESS_DEFAULT_BOUND)
    }

    /// Overrides the bound of the named variable.
    pub fn set(&mut self, name: &str, n: u32) -> Result<(), MembershipError> {
        let v = self
            .ctx
            .index_of(name)
            .ok_or_else(|| MembershipError::UnknownVariable(name.to_string()))?;
        self.max[v] = n;
        Ok(())
    }

    pub fn context(&self) -> &VarContext {
        &self.ctx
    }

    pub fn get(&self, v: usize) -> u32 {
        self.max[v]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.max
    }

    /// Number of monomials in the box.
    pub fn unknowns(&self) -> u128 {
        self.max.iter().map(|&m| u128::from(m) + 1).product()
    }

    /// Whether every bound of `self` is at least the matching bound of `other`.
    pub fn dominates(&self, other: &DegreeBounds) -> bool {
        self.max.len() == other.max.len() && self.max.iter().zip(&other.max).all(|(a, b)| a >= b)
    }

    /// All monomials in the box, in ascending monomial order.
    fn monomials(&self) -> Vec<Monomial> {
        let mut out = Vec::with_capacity(self.unknowns() as usize);
        let mut e = vec![0u32; self.max.len()];
        'outer: loop {
            out.push(Monomial::new(e.clone()));
            for (ei, &m) in e.iter_mut().zip(&self.max) {
                if *ei < m {
                    *ei += 1;
                    continue 'outer;
                }
                *ei = 0;
            }
            break;
        }
        out.sort();
        out
    }
}

impl fmt::Display for DegreeBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.max.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}<={}", self.ctx.name(i), m)?;
        }
        Ok(())
    }
}

impl Serialize for DegreeBounds {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.max.len()))?;
        for (i, m) in self.max.iter().enumerate() {
            map.serialize_entry(self.ctx.name(i), m)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "preimage", rename_all = "snake_case")]
pub enum Outcome {
    Feasible(Polynomial),
    InfeasibleWithinBounds,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundedCertificate {
    pub target: Polynomial,
    pub bounds: DegreeBounds,
    #[serde(flatten)]
    pub outcome: Outcome,
    /// Number of coefficient equations.
    pub rows: usize,
    /// Number of unknown coefficients.
    pub cols: usize,
    pub rank: usize,
    pub augmented_rank: usize,
    pub elapsed_ms: f64,
    /// Set when the caller expected infeasibility.
    pub witness_check: bool,
    /// A witness check that came back feasible.
    pub contradiction: bool,
}

impl BoundedCertificate {
    pub fn is_feasible(&self) -> bool {
        matches!(self.outcome, Outcome::Feasible(_))
    }

    pub fn preimage(&self) -> Option<&Polynomial> {
        match &self.outcome {
            Outcome::Feasible(f) => Some(f),
            Outcome::InfeasibleWithinBounds => None,
        }
    }
}

struct System {
    columns: Vec<Monomial>,
    /// Equation rows keyed by the monomial whose coefficient they match.
    rows: BTreeMap<Monomial, Vec<(usize, Rational)>>,
}

fn check_inputs(d: &Derivation, bounds: &DegreeBounds) -> Result<(), MembershipError> {
    if d.context() != bounds.context() {
        return Err(MembershipError::ContextMismatch);
    }
    let unknowns = bounds.unknowns();
    if unknowns > MAX_UNKNOWNS {
        return Err(MembershipError::ResourceLimit { unknowns, limit: MAX_UNKNOWNS });
    }
    Ok(())
}

/// Columns are the given monomials; rows come from the images `D(m)`.
fn assemble(d: &Derivation, columns: Vec<Monomial>) -> System {
    let ctx = d.context();
    let mut rows: BTreeMap<Monomial, Vec<(usize, Rational)>> = BTreeMap::new();
    for (j, m) in columns.iter().enumerate() {
        let image = d.apply_unchecked(&Polynomial::term(ctx, m.clone(), Rational::from_integer(1.into())));
        for (mono, c) in image.terms() {
            rows.entry(mono.clone()).or_default().push((j, c.clone()));
        }
    }
    System { columns, rows }
}

pub fn preimage_bounded(
    d: &Derivation,
    g: &Polynomial,
    bounds: &DegreeBounds,
) -> Result<BoundedCertificate, MembershipError> {
    check_inputs(d, bounds)?;
    if g.context() != d.context() {
        return Err(MembershipError::ContextMismatch);
    }
    let start = Instant::now();
    let mut sys = assemble(d, bounds.monomials());
    for (m, _) in g.terms() {
        sys.rows.entry(m.clone()).or_default();
    }
    let nrows = sys.rows.len();
    let ncols = sys.columns.len();
    let report = linalg::solve(
        ncols,
        sys.rows.into_iter().map(|(m, row)| {
            let rhs = g.coefficient(&m);
            (row, rhs)
        }),
    );
    let outcome = match report.solution {
        Solution::Feasible(x) => {
            let f = Polynomial::from_terms(d.context(), sys.columns.into_iter().zip(x));
            assert!(
                d.apply_unchecked(&f) == *g,
                "bounded preimage failed re-verification"
            );
            Outcome::Feasible(f)
        }
        Solution::Infeasible => Outcome::InfeasibleWithinBounds,
    };
    Ok(BoundedCertificate {
        target: g.clone(),
        bounds: bounds.clone(),
        outcome,
        rows: nrows,
        cols: ncols,
        rank: report.rank,
        augmented_rank: report.augmented_rank,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        witness_check: false,
        contradiction: false,
    })
}

/// Basis of the non-constant kernel elements inside the box.
///
/// Columns run from the largest monomial down, so each basis element has
/// coefficient 1 on a monomial that is as small as the reduction allows.
pub fn kernel_bounded(d: &Derivation, bounds: &DegreeBounds) -> Result<Vec<Polynomial>, MembershipError> {
    check_inputs(d, bounds)?;
    let mut columns = bounds.monomials();
    columns.retain(|m| !m.is_one());
    columns.reverse();
    let sys = assemble(d, columns);
    let basis = linalg::kernel(sys.columns.len(), sys.rows.into_values());
    Ok(basis
        .into_iter()
        .map(|v| {
            let f = Polynomial::from_terms(d.context(), sys.columns.iter().cloned().zip(v));
            debug_assert!(d.apply_unchecked(&f).is_zero());
            f
        })
        .collect())
}

/// [`preimage_bounded`] for a target that is expected to lie outside `Im D`.
pub fn check_nonmembership(
    d: &Derivation,
    g: &Polynomial,
    bounds: &DegreeBounds,
) -> Result<BoundedCertificate, MembershipError> {
    let mut cert = preimage_bounded(d, g, bounds)?;
    cert.witness_check = true;
    cert.contradiction = cert.is_feasible();
    Ok(cert)
}
