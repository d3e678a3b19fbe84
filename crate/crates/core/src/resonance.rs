//! Non-negative integer relations `Σ lᵢ·aᵢ(x) = 0` among group coefficients.
//!
//! The rational kernel of `l ↦ Σ lᵢaᵢ` is computed exactly. Its reduced basis
//! has a unit vector at each free coordinate, so every integer kernel point is
//! the combination of basis vectors weighted by its own free coordinates.
//! Scanning free coordinates over `0..=bound` therefore finds every relation
//! with entries at most `bound`.

use num_integer::Integer;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::linalg::Echelon;
use crate::linalg::SparseRow;
use crate::poly::{Polynomial, Rational};

pub const DEFAULT_BOUND: u32 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResonanceError {
    #[error("at least one coefficient is required")]
    Empty,
    #[error("`{0}` is not a polynomial in the distinguished variable alone")]
    Multivariate(String),
    #[error("coefficients live in different variable contexts")]
    ContextMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResonanceSet {
    pub arity: usize,
    /// Every relation has all entries in `0..=bound`.
    pub bound: u32,
    pub kernel_dimension: usize,
    /// All nonzero relations within the bound, sorted by entry sum then
    /// lexicographically.
    pub relations: Vec<Vec<u64>>,
    /// The relations whose entries have gcd 1.
    pub primitive: Vec<Vec<u64>>,
}

impl ResonanceSet {
    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }
}

/// Checks `Σ lᵢ·aᵢ = 0` by polynomial arithmetic.
pub fn is_relation(as_: &[Polynomial], l: &[u64]) -> bool {
    let Some(first) = as_.first() else {
        return false;
    };
    as_.iter()
        .zip(l)
        .fold(Polynomial::zero(first.context()), |acc, (a, &k)| {
            acc + a.scale(&Rational::from_integer(k.into()))
        })
        .is_zero()
}

pub fn positive_resonances(as_: &[Polynomial], bound: u32) -> Result<ResonanceSet, ResonanceError> {
    let first = as_.first().ok_or(ResonanceError::Empty)?;
    let ctx = first.context();
    let x = ctx.distinguished();
    let mut coeffs = Vec::with_capacity(as_.len());
    for a in as_ {
        if a.context() != ctx {
            return Err(ResonanceError::ContextMismatch);
        }
        coeffs.push(
            a.univariate_coefficients(x)
                .ok_or_else(|| ResonanceError::Multivariate(a.to_string()))?,
        );
    }
    let s = as_.len();
    let height = coeffs.iter().map(Vec::len).max().unwrap_or(0);
    let mut ech = Echelon::new(s);
    for p in 0..height {
        ech.insert(SparseRow::from_rationals(
            coeffs
                .iter()
                .enumerate()
                .filter_map(|(i, c)| c.get(p).map(|v| (i, v.clone()))),
        ));
    }
    let basis = ech.kernel_basis();
    let bound_r = Rational::from_integer(bound.into());
    let mut relations = Vec::new();
    let mut weights = vec![0u32; basis.len()];
    'scan: loop {
        if weights.iter().any(|&w| w > 0) {
            let mut l = vec![Rational::zero(); s];
            for (v, &w) in basis.iter().zip(&weights) {
                if w == 0 {
                    continue;
                }
                let w = Rational::from_integer(w.into());
                for (li, vi) in l.iter_mut().zip(v) {
                    *li += vi * &w;
                }
            }
            if l.iter().all(|c| c.is_integer() && !c.is_negative() && c <= &bound_r) {
                relations.push(
                    l.iter()
                        .map(|c| c.to_integer().to_u64().expect("bounded"))
                        .collect::<Vec<u64>>(),
                );
            }
        }
        // odometer over {0..=bound}^free
        for w in weights.iter_mut() {
            if *w < bound {
                *w += 1;
                continue 'scan;
            }
            *w = 0;
        }
        break;
    }
    relations.sort_by(|a, b| {
        a.iter()
            .sum::<u64>()
            .cmp(&b.iter().sum::<u64>())
            .then_with(|| a.cmp(b))
    });
    let primitive = relations
        .iter()
        .filter(|l| l.iter().fold(BigInt::zero(), |g, &v| g.gcd(&BigInt::from(v))) == BigInt::from(1))
        .cloned()
        .collect();
    Ok(ResonanceSet {
        arity: s,
        bound,
        kernel_dimension: basis.len(),
        relations,
        primitive,
    })
}
