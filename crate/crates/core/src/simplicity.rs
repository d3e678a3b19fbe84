//! Simplicity of Shamsuddin derivations.
//!
//! A Shamsuddin derivation is simple exactly when every group restriction
//! `Dᵢ` is simple, and `Dᵢ` is simple exactly when `z' = aᵢz + Σ kⱼb_{i,j}`
//! has no solution in `K[x]` for any nonzero `k`. Both equivalences are
//! taken as known results; this module turns them into an exact decision
//! via [`solvable_subspace`].

use serde::Serialize;

use crate::derivation::ShamsuddinForm;
use crate::linalg;
use crate::ode::solvable_subspace;
use crate::poly::{Degree, Rational};

/// Why a form is or is not simple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SimplicityReason {
    /// Every group has `deg aᵢ ≥ 1` and a trivial solvable subspace.
    NoSolvableCombination,
    /// Some `aᵢ ∈ K`, so every combination is solvable.
    ConstantCoefficient,
    /// Some nonzero `k` makes the group equation solvable.
    SolvableCombination,
}

impl SimplicityReason {
    pub fn citation(self) -> &'static str {
        match self {
            SimplicityReason::NoSolvableCombination => "[6] Thm 3.1, Thm 3.2",
            SimplicityReason::ConstantCoefficient => "Lemma 2.1",
            SimplicityReason::SolvableCombination => "[6] Thm 3.2",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicityVerdict {
    pub simple: bool,
    /// Zero-based index of the first failing group.
    pub failing_group: Option<usize>,
    /// Nonzero `k` for which the failing group's equation is solvable.
    #[serde(serialize_with = "serialize_opt_vector")]
    pub failing_k: Option<Vec<Rational>>,
    pub reason: SimplicityReason,
}

fn serialize_opt_vector<S: serde::Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_seq(v.iter().map(ToString::to_string)),
        None => s.serialize_none(),
    }
}

pub fn is_simple_shamsuddin(form: &ShamsuddinForm) -> SimplicityVerdict {
    for (i, g) in form.groups().iter().enumerate() {
        let bs: Vec<_> = g.bs().cloned().collect();
        let sub = solvable_subspace(&g.a, &bs).expect("Shamsuddin coefficients are univariate");
        let low_degree = g.a.total_degree() < Degree::Finite(1);
        if low_degree || !sub.is_trivial() {
            return SimplicityVerdict {
                simple: false,
                failing_group: Some(i),
                failing_k: sub.basis.first().cloned(),
                reason: if low_degree {
                    SimplicityReason::ConstantCoefficient
                } else {
                    SimplicityReason::SolvableCombination
                },
            };
        }
    }
    SimplicityVerdict {
        simple: true,
        failing_group: None,
        failing_k: None,
        reason: SimplicityReason::NoSolvableCombination,
    }
}

/// Fast sufficient test: `deg aᵢ > deg b_{i,j}` for every slot and the `b_{i,·}`
/// linearly independent over Q, in every group.
pub fn sufficient_simple_cor23(form: &ShamsuddinForm) -> bool {
    let x = form.context().distinguished();
    form.groups().iter().all(|g| {
        let da = g.a.total_degree();
        if g.bs().any(|b| b.total_degree() >= da) {
            return false;
        }
        let vectors: Vec<Vec<Rational>> = g
            .bs()
            .map(|b| b.univariate_coefficients(x).expect("univariate"))
            .collect();
        let width = vectors.iter().map(Vec::len).max().unwrap_or(0);
        let padded: Vec<Vec<Rational>> = vectors
            .into_iter()
            .map(|mut v| {
                v.resize(width, Rational::from_integer(0.into()));
                v
            })
            .collect();
        linalg::rank_of(width, &padded) == g.slots.len()
    })
}
