//! Exact sparse linear algebra over Q by fraction-free elimination.
//!
//! Rows are cleared of denominators on entry and kept as primitive integer
//! vectors (content 1, positive leading entry). Pivots are always the leading
//! column of a row, so the pivot order is fixed by column index and the result
//! depends only on the input rows and their order.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::Rational;

/// Sparse row with integer entries sorted by column; no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseRow(Vec<(usize, BigInt)>);

impl SparseRow {
    /// Scales a rational row to a primitive integer row. Entries may be given
    /// in any column order; repeated columns are summed.
    pub fn from_rationals(entries: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut merged: BTreeMap<usize, Rational> = BTreeMap::new();
        for (c, v) in entries {
            *merged.entry(c).or_insert_with(Rational::zero) += v;
        }
        merged.retain(|_, v| !v.is_zero());
        let lcm = merged
            .values()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let mut row = SparseRow(
            merged
                .into_iter()
                .map(|(c, v)| (c, v.numer() * (&lcm / v.denom())))
                .collect(),
        );
        row.normalize();
        row
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn leading(&self) -> Option<(usize, &BigInt)> {
        self.0.first().map(|(c, v)| (*c, v))
    }

    pub fn get(&self, col: usize) -> Option<&BigInt> {
        self.0
            .binary_search_by_key(&col, |(c, _)| *c)
            .ok()
            .map(|i| &self.0[i].1)
    }

    pub fn entries(&self) -> &[(usize, BigInt)] {
        &self.0
    }

    fn normalize(&mut self) {
        let g = self
            .0
            .iter()
            .fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
        let flip = self.0.first().is_some_and(|(_, v)| v.is_negative());
        if g.is_zero() {
            return;
        }
        let g = if flip { -g } else { g };
        if !g.is_one() {
            for (_, v) in &mut self.0 {
                *v /= &g;
            }
        }
    }

    /// Clears column `col` of `self` using `pivot`, whose entry at `col` is
    /// nonzero: `self := (p/g)·self − (s/g)·pivot` with `g = gcd(p, s)`.
    fn eliminate(&mut self, pivot: &SparseRow, col: usize) {
        let Some(s) = self.get(col).cloned() else {
            return;
        };
        let p = pivot.get(col).expect("pivot entry").clone();
        let g = p.gcd(&s);
        let (mp, ms) = (&p / &g, &s / &g);
        let mut out = Vec::with_capacity(self.0.len() + pivot.0.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.0, &pivot.0);
        while i < a.len() || j < b.len() {
            let (c, v) = match (a.get(i), b.get(j)) {
                (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                    i += 1;
                    j += 1;
                    (*ca, va * &mp - vb * &ms)
                }
                (Some((ca, va)), Some((cb, _))) if ca < cb => {
                    i += 1;
                    (*ca, va * &mp)
                }
                (Some((ca, va)), None) => {
                    i += 1;
                    (*ca, va * &mp)
                }
                (_, Some((cb, vb))) => {
                    j += 1;
                    (*cb, -(vb * &ms))
                }
                (None, None) => unreachable!(),
            };
            if !v.is_zero() {
                out.push((c, v));
            }
        }
        self.0 = out;
        self.normalize();
    }
}

/// Incrementally built row echelon form.
#[derive(Debug, Clone)]
pub struct Echelon {
    ncols: usize,
    pivots: BTreeMap<usize, SparseRow>,
    reduced: bool,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            pivots: BTreeMap::new(),
            reduced: true,
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    fn reduce(&self, mut row: SparseRow) -> SparseRow {
        while let Some((c, _)) = row.leading() {
            match self.pivots.get(&c) {
                Some(p) => row.eliminate(p, c),
                None => break,
            }
        }
        row
    }

    /// Adds a row; returns whether the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        debug_assert!(row.entries().iter().all(|(c, _)| *c < self.ncols));
        let row = self.reduce(row);
        match row.leading() {
            Some((c, _)) => {
                self.pivots.insert(c, row);
                self.reduced = false;
                true
            }
            None => false,
        }
    }

    /// Whether `row` lies in the row space.
    pub fn spans(&self, row: SparseRow) -> bool {
        self.reduce(row).is_zero()
    }

    /// Back-substitution to reduced row echelon form: every pivot column is
    /// zero outside its own pivot row.
    pub fn reduce_fully(&mut self) {
        if self.reduced {
            return;
        }
        let cols: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for c in cols {
            let pivot = self.pivots[&c].clone();
            for (_, row) in self.pivots.range_mut(..c) {
                row.eliminate(&pivot, c);
            }
        }
        self.reduced = true;
    }

    /// Rows of the reduced form as rationals scaled so each pivot is 1.
    pub fn normalized_rows(&mut self) -> Vec<Vec<Rational>> {
        self.reduce_fully();
        self.pivots
            .iter()
            .map(|(c, row)| {
                let p = row.get(*c).expect("pivot").clone();
                let mut dense = vec![Rational::zero(); self.ncols];
                for (j, v) in row.entries() {
                    dense[*j] = Rational::new(v.clone(), p.clone());
                }
                dense
            })
            .collect()
    }

    /// Basis of the null space, one vector per free column (ascending), with
    /// a 1 at its free column and 0 at the other free columns.
    pub fn kernel_basis(&mut self) -> Vec<Vec<Rational>> {
        self.reduce_fully();
        (0..self.ncols)
            .filter(|c| !self.pivots.contains_key(c))
            .map(|free| {
                let mut v = vec![Rational::zero(); self.ncols];
                v[free] = Rational::one();
                for (pc, row) in &self.pivots {
                    if let Some(e) = row.get(free) {
                        let p = row.get(*pc).expect("pivot");
                        v[*pc] = -Rational::new(e.clone(), p.clone());
                    }
                }
                v
            })
            .collect()
    }
}

/// Outcome of an exact solve of `A·x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    /// Particular solution with all free unknowns set to 0.
    Feasible(Vec<Rational>),
    /// The system is inconsistent.
    Infeasible,
}

/// Summary of a solve, kept for certificates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub solution: Solution,
    pub rank: usize,
    pub augmented_rank: usize,
}

/// Solves `Σ_j rows[i][j]·x_j = rhs[i]` for `ncols` unknowns.
pub fn solve(
    ncols: usize,
    rows: impl IntoIterator<Item = (Vec<(usize, Rational)>, Rational)>,
) -> SolveReport {
    let mut ech = Echelon::new(ncols + 1);
    for (row, b) in rows {
        let mut entries = row;
        if !b.is_zero() {
            entries.push((ncols, b));
        }
        ech.insert(SparseRow::from_rationals(entries));
    }
    let augmented_rank = ech.rank();
    if ech.pivots.contains_key(&ncols) {
        return SolveReport {
            solution: Solution::Infeasible,
            rank: augmented_rank - 1,
            augmented_rank,
        };
    }
    ech.reduce_fully();
    let mut x = vec![Rational::zero(); ncols];
    for (c, row) in &ech.pivots {
        if let Some(b) = row.get(ncols) {
            x[*c] = Rational::new(b.clone(), row.get(*c).expect("pivot").clone());
        }
    }
    SolveReport {
        solution: Solution::Feasible(x),
        rank: augmented_rank,
        augmented_rank,
    }
}

/// Null space basis of the matrix with the given sparse rows.
pub fn kernel(ncols: usize, rows: impl IntoIterator<Item = Vec<(usize, Rational)>>) -> Vec<Vec<Rational>> {
    let mut ech = Echelon::new(ncols);
    for r in rows {
        ech.insert(SparseRow::from_rationals(r));
    }
    ech.kernel_basis()
}

/// Rank of a set of dense rational vectors of length `ncols`.
pub fn rank_of(ncols: usize, vectors: &[Vec<Rational>]) -> usize {
    let mut ech = Echelon::new(ncols);
    for v in vectors {
        ech.insert(dense_row(v));
    }
    ech.rank()
}

pub fn dense_row(v: &[Rational]) -> SparseRow {
    SparseRow::from_rationals(v.iter().cloned().enumerate())
}
