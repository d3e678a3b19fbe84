//! Polynomial solutions of `z' = a·z + b` over `K[x]`.
//!
//! For `deg a ≥ 0` (with `a ≠ 0`) the map `z ↦ z' − a·z` raises degree by
//! exactly `deg a`, so a solution must have degree `deg b − deg a` and is
//! found by clearing the residual from the top coefficient down, much like
//! polynomial division. `a = 0` is plain antidifferentiation.

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{self, Echelon};
use crate::poly::{Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OdeError {
    #[error("`{0}` is not a polynomial in the distinguished variable alone")]
    Multivariate(String),
    #[error("coefficients live in different variable contexts")]
    ContextMismatch,
    #[error("at least one right-hand side is required")]
    EmptyRightHandSides,
}

fn univariate(p: &Polynomial) -> Result<Vec<Rational>, OdeError> {
    p.univariate_coefficients(p.context().distinguished())
        .ok_or_else(|| OdeError::Multivariate(p.to_string()))
}

fn degree(c: &[Rational]) -> Option<usize> {
    c.iter().rposition(|v| !v.is_zero())
}

/// The equation `z' = a·z + b` with `a, b ∈ K[x]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OdeProblem {
    pub a: Polynomial,
    pub b: Polynomial,
}

impl OdeProblem {
    pub fn new(a: Polynomial, b: Polynomial) -> Result<Self, OdeError> {
        if a.context() != b.context() {
            return Err(OdeError::ContextMismatch);
        }
        univariate(&a)?;
        univariate(&b)?;
        Ok(OdeProblem { a, b })
    }

    pub fn solve(&self) -> Option<Polynomial> {
        let a = univariate(&self.a).expect("checked");
        let b = univariate(&self.b).expect("checked");
        let ctx = self.a.context();
        let x = ctx.distinguished();
        solve_dense(&a, &b).map(|z| Polynomial::from_univariate(ctx, x, &z))
    }

    /// Whether `z` satisfies the equation exactly.
    pub fn is_solution(&self, z: &Polynomial) -> bool {
        let x = self.a.context().distinguished();
        (z.partial_at(x) - &self.a * z - &self.b).is_zero()
    }
}

/// Returns `z ∈ K[x]` with `z' = a·z + b`, or `None` if no polynomial
/// solution exists.
pub fn solve_ode(a: &Polynomial, b: &Polynomial) -> Result<Option<Polynomial>, OdeError> {
    Ok(OdeProblem::new(a.clone(), b.clone())?.solve())
}

fn solve_dense(a: &[Rational], b: &[Rational]) -> Option<Vec<Rational>> {
    let Some(da) = degree(a) else {
        // z' = b
        let mut z = vec![Rational::zero(); b.len() + 1];
        for (k, c) in b.iter().enumerate() {
            z[k + 1] = c / Rational::from_integer((k as u64 + 1).into());
        }
        return Some(z);
    };
    let Some(db) = degree(b) else {
        return Some(Vec::new());
    };
    if db < da {
        return None;
    }
    let lead = &a[da];
    let m = db - da;
    let mut z = vec![Rational::zero(); m + 1];
    // residual = b − (z' − a·z)
    let mut r: Vec<Rational> = b[..=db].to_vec();
    for k in (0..=m).rev() {
        let zk = -&r[k + da] / lead;
        if zk.is_zero() {
            continue;
        }
        if k > 0 {
            r[k - 1] -= &zk * Rational::from_integer((k as u64).into());
        }
        for (i, ai) in a[..=da].iter().enumerate() {
            r[k + i] += &zk * ai;
        }
        z[k] = zk;
    }
    r.iter().all(Zero::is_zero).then_some(z)
}

/// `{k ∈ Q^r : z' = a·z + Σ kⱼbⱼ has a solution in K[x]}`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct SolvableSubspace {
    /// Ambient dimension `r`.
    pub ambient: usize,
    /// Reduced echelon basis (each pivot entry 1).
    #[serde(serialize_with = "serialize_vectors")]
    pub basis: Vec<Vec<Rational>>,
}

impl SolvableSubspace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, k: &[Rational]) -> bool {
        assert_eq!(k.len(), self.ambient, "tuple length");
        let mut ech = Echelon::new(self.ambient);
        for v in &self.basis {
            ech.insert(linalg::dense_row(v));
        }
        ech.spans(linalg::dense_row(k))
    }
}

pub(crate) fn serialize_vectors<S: serde::Serializer>(
    vs: &[Vec<Rational>],
    s: S,
) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(vs.len()))?;
    for v in vs {
        seq.serialize_element(&v.iter().map(ToString::to_string).collect::<Vec<_>>())?;
    }
    seq.end()
}

/// Computes the solvable subspace by projecting the kernel of the joint
/// linear system in `(z-coefficients, k)` onto the `k` coordinates.
pub fn solvable_subspace(a: &Polynomial, bs: &[Polynomial]) -> Result<SolvableSubspace, OdeError> {
    if bs.is_empty() {
        return Err(OdeError::EmptyRightHandSides);
    }
    if bs.iter().any(|b| b.context() != a.context()) {
        return Err(OdeError::ContextMismatch);
    }
    let ad = univariate(a)?;
    let bd: Vec<Vec<Rational>> = bs.iter().map(univariate).collect::<Result<_, _>>()?;
    let r = bs.len();
    let identity = || {
        (0..r)
            .map(|i| {
                let mut v = vec![Rational::zero(); r];
                v[i] = Rational::from_integer(1.into());
                v
            })
            .collect()
    };
    let da = match degree(&ad) {
        None | Some(0) => {
            return Ok(SolvableSubspace {
                ambient: r,
                basis: identity(),
            })
        }
        Some(d) => d,
    };
    let max_db = bd.iter().filter_map(|b| degree(b)).max();
    // deg z = deg(Σ kⱼbⱼ) − deg a ≤ max deg bⱼ − deg a
    let nz = match max_db {
        Some(db) if db >= da => db - da + 1,
        _ => 0,
    };
    let top = (nz + da).max(max_db.map_or(0, |d| d + 1));
    let ncols = nz + r;
    let rows = (0..top).map(|p| {
        let mut row: Vec<(usize, Rational)> = Vec::new();
        // z' contributes (p+1)·z_{p+1}
        if p + 1 < nz {
            row.push((p + 1, Rational::from_integer((p as u64 + 1).into())));
        }
        // −a·z contributes −a_{p−i}·z_i
        for i in 0..nz {
            if p >= i && p - i <= da && !ad[p - i].is_zero() {
                row.push((i, -ad[p - i].clone()));
            }
        }
        for (j, b) in bd.iter().enumerate() {
            if let Some(c) = b.get(p).filter(|c| !c.is_zero()) {
                row.push((nz + j, -c.clone()));
            }
        }
        row
    });
    let kernel = linalg::kernel(ncols, rows);
    let mut ech = Echelon::new(r);
    for v in &kernel {
        ech.insert(linalg::dense_row(&v[nz..]));
    }
    Ok(SolvableSubspace {
        ambient: r,
        basis: ech.normalized_rows(),
    })
}
