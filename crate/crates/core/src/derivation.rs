//! Derivations of a polynomial ring, given by the images of the generators.
//!
//! Besides application and iteration this module recognizes the two shapes
//! the classifier works with:
//!
//! * Shamsuddin: `D(x) = 1` and `D(y) = a(x)·y + b(x)` for every other
//!   variable. [`ShamsuddinForm`] groups the variables by equal `a`.
//! * Triangular: `D(x₁) = 1` and `D(xᵢ) = aᵢ·xᵢ + bᵢ` with `aᵢ, bᵢ` in the
//!   earlier variables. Every Shamsuddin derivation is triangular with the
//!   distinguished variable first.

use std::fmt;

use thiserror::Error;

use crate::poly::{Degree, PolyError, Polynomial, VarContext};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error("expected {expected} generator images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("group index {index} out of range ({groups} groups)")]
    GroupIndex { index: usize, groups: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    ctx: VarContext,
    images: Vec<Polynomial>,
}

impl Derivation {
    pub fn new(ctx: &VarContext, images: Vec<Polynomial>) -> Result<Self, DerivationError> {
        if images.len() != ctx.arity() {
            return Err(DerivationError::ImageCount {
                expected: ctx.arity(),
                got: images.len(),
            });
        }
        if images.iter().any(|p| p.context() != ctx) {
            return Err(PolyError::ContextMismatch.into());
        }
        Ok(Derivation {
            ctx: ctx.clone(),
            images,
        })
    }

    pub fn context(&self) -> &VarContext {
        &self.ctx
    }

    pub fn image(&self, v: usize) -> &Polynomial {
        &self.images[v]
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// `D(f) = Σ_v D(v)·∂f/∂v`.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial, PolyError> {
        if f.context() != &self.ctx {
            return Err(PolyError::ContextMismatch);
        }
        Ok(self.apply_unchecked(f))
    }

    pub(crate) fn apply_unchecked(&self, f: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(&self.ctx);
        for (v, img) in self.images.iter().enumerate() {
            if img.is_zero() || !f.involves(v) {
                continue;
            }
            out = out + img * &f.partial_at(v);
        }
        out
    }

    /// `D^m(f)`; `m = 0` returns `f`.
    pub fn iterate(&self, f: &Polynomial, m: u32) -> Result<Polynomial, PolyError> {
        if f.context() != &self.ctx {
            return Err(PolyError::ContextMismatch);
        }
        let mut g = f.clone();
        for _ in 0..m {
            if g.is_zero() {
                break;
            }
            g = self.apply_unchecked(&g);
        }
        Ok(g)
    }

    /// Whether `D(x) = 1` for the distinguished variable.
    pub fn is_normalized(&self) -> bool {
        self.images[self.ctx.distinguished()].is_one()
    }

    /// Recognizes `∂x + Σ (a(x)·y + b(x))∂y`.
    pub fn as_shamsuddin(&self) -> Option<ShamsuddinForm> {
        let x = self.ctx.distinguished();
        if !self.is_normalized() {
            return None;
        }
        let mut groups: Vec<ShamsuddinGroup> = Vec::new();
        for v in (0..self.ctx.arity()).filter(|&v| v != x) {
            let img = &self.images[v];
            if !img.only_involves(&[x, v]) || img.degree_at(v) > Degree::Finite(1) {
                return None;
            }
            let a = img.coefficient_at(v, 1);
            let b = img.coefficient_at(v, 0);
            match groups.iter_mut().find(|g| g.a == a) {
                Some(g) => g.slots.push(Slot { var: v, b }),
                None => groups.push(ShamsuddinGroup {
                    a,
                    slots: vec![Slot { var: v, b }],
                }),
            }
        }
        Some(ShamsuddinForm {
            ctx: self.ctx.clone(),
            groups,
        })
    }

    /// Recognizes `∂x₁ + Σ_{i≥2} (aᵢxᵢ + bᵢ)∂xᵢ` with `aᵢ, bᵢ ∈ K[x₁..x_{i−1}]`,
    /// ordering the variables with the distinguished one first and the rest
    /// in context order.
    pub fn as_triangular(&self) -> Option<TriangularForm> {
        let first = self.ctx.distinguished();
        if !self.is_normalized() {
            return None;
        }
        let order: Vec<usize> = std::iter::once(first)
            .chain((0..self.ctx.arity()).filter(|&v| v != first))
            .collect();
        let mut levels = Vec::new();
        for (i, &v) in order.iter().enumerate().skip(1) {
            let img = &self.images[v];
            if !img.only_involves(&order[..=i]) || img.degree_at(v) > Degree::Finite(1) {
                return None;
            }
            levels.push(TriangularLevel {
                var: v,
                a: img.coefficient_at(v, 1),
                b: img.coefficient_at(v, 0),
            });
        }
        Some(TriangularForm {
            ctx: self.ctx.clone(),
            first,
            levels,
        })
    }

    /// Iterates `D` on every generator for at most `max_steps` steps. A
    /// `Nilpotent` answer is definitive (nilpotent on generators implies
    /// locally nilpotent); `Inconclusive` only means the budget ran out.
    pub fn probe_nilpotency(&self, max_steps: u32) -> NilpotencyProbe {
        let mut orders = Vec::with_capacity(self.ctx.arity());
        for v in 0..self.ctx.arity() {
            let mut g = Polynomial::var(&self.ctx, v);
            let mut m = 0;
            while !g.is_zero() {
                if m == max_steps {
                    return NilpotencyProbe::Inconclusive {
                        steps: max_steps,
                        pending_var: v,
                    };
                }
                g = self.apply_unchecked(&g);
                m += 1;
            }
            orders.push(m);
        }
        NilpotencyProbe::Nilpotent { orders }
    }
}

impl fmt::Display for Derivation {
    /// Renders in the input grammar: `vars: x, y; x' = 1; y' = x*y + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vars: {}", self.ctx.names().join(", "))?;
        for (v, img) in self.images.iter().enumerate() {
            write!(f, "; {}' = {}", self.ctx.name(v), img)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum NilpotencyProbe {
    /// `orders[v]` is the least `m` with `D^m(v) = 0`.
    Nilpotent { orders: Vec<u32> },
    Inconclusive { steps: u32, pending_var: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slot {
    /// Context index of the variable `y_{i,j}`.
    pub var: usize,
    pub b: Polynomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShamsuddinGroup {
    pub a: Polynomial,
    pub slots: Vec<Slot>,
}

impl ShamsuddinGroup {
    pub fn bs(&self) -> impl Iterator<Item = &Polynomial> {
        self.slots.iter().map(|s| &s.b)
    }

    pub fn has_nonzero_b(&self) -> bool {
        self.slots.iter().any(|s| !s.b.is_zero())
    }
}

/// Grouped Shamsuddin form. Groups appear in order of first occurrence of
/// their `a`, slots in variable order; all `a`, `b` involve only `x` and the
/// `a` are pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShamsuddinForm {
    ctx: VarContext,
    groups: Vec<ShamsuddinGroup>,
}

impl ShamsuddinForm {
    /// Builds a form from explicit groups, rejecting repeated `a`, empty
    /// groups, or coefficients that involve anything but `x`.
    pub fn from_groups(ctx: &VarContext, groups: Vec<ShamsuddinGroup>) -> Option<Self> {
        let x = ctx.distinguished();
        let mut seen = vec![false; ctx.arity()];
        seen[x] = true;
        for (i, g) in groups.iter().enumerate() {
            if g.slots.is_empty() || groups[..i].iter().any(|h| h.a == g.a) {
                return None;
            }
            if !g.a.only_involves(&[x]) || g.a.context() != ctx {
                return None;
            }
            for s in &g.slots {
                if s.var >= ctx.arity() || seen[s.var] || !s.b.only_involves(&[x]) || s.b.context() != ctx {
                    return None;
                }
                seen[s.var] = true;
            }
        }
        Some(ShamsuddinForm {
            ctx: ctx.clone(),
            groups,
        })
    }

    pub fn context(&self) -> &VarContext {
        &self.ctx
    }

    pub fn groups(&self) -> &[ShamsuddinGroup] {
        &self.groups
    }

    /// Name of `y_{i,j}` (zero-based indices).
    pub fn variable_name(&self, group: usize, slot: usize) -> &str {
        self.ctx.name(self.groups[group].slots[slot].var)
    }

    /// Reassembles the derivation. Variables not covered by any slot map to 0.
    pub fn to_derivation(&self) -> Derivation {
        let mut images = vec![Polynomial::zero(&self.ctx); self.ctx.arity()];
        images[self.ctx.distinguished()] = Polynomial::one(&self.ctx);
        for g in &self.groups {
            for s in &g.slots {
                images[s.var] = &g.a * &Polynomial::var(&self.ctx, s.var) + &s.b;
            }
        }
        Derivation::new(&self.ctx, images).expect("arity matches")
    }

    /// `Dᵢ = ∂x + Σⱼ (aᵢ·y_{i,j} + b_{i,j})∂_{i,j}` on `K[x, y_{i,1}, …]`.
    pub fn restrict_to_group(&self, i: usize) -> Result<Derivation, DerivationError> {
        let g = self.groups.get(i).ok_or(DerivationError::GroupIndex {
            index: i,
            groups: self.groups.len(),
        })?;
        let x = self.ctx.distinguished();
        let names = std::iter::once(self.ctx.name(x).to_string())
            .chain(g.slots.iter().map(|s| self.ctx.name(s.var).to_string()));
        let sub = VarContext::with_names(names)?;
        let move_x = |p: &Polynomial| {
            let mut map = vec![None; self.ctx.arity()];
            map[x] = Some(0);
            p.transfer(&sub, &map).expect("univariate in x")
        };
        let a = move_x(&g.a);
        let mut images = vec![Polynomial::one(&sub)];
        for (j, s) in g.slots.iter().enumerate() {
            images.push(&a * &Polynomial::var(&sub, j + 1) + move_x(&s.b));
        }
        Ok(Derivation::new(&sub, images).expect("arity matches"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularLevel {
    pub var: usize,
    pub a: Polynomial,
    pub b: Polynomial,
}

/// Triangular decomposition; `levels[k]` describes the variable at position
/// `k + 2` of the order `x₁ = first, x₂, …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularForm {
    ctx: VarContext,
    first: usize,
    levels: Vec<TriangularLevel>,
}

impl TriangularForm {
    pub fn context(&self) -> &VarContext {
        &self.ctx
    }

    /// Number of variables `n`.
    pub fn len(&self) -> usize {
        self.levels.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Context index of `x_i` (1-based position in the triangular order).
    pub fn var(&self, i: usize) -> usize {
        assert!(i >= 1 && i <= self.len(), "position out of range");
        if i == 1 {
            self.first
        } else {
            self.levels[i - 2].var
        }
    }

    /// `aᵢ` for `i ≥ 2`.
    pub fn a(&self, i: usize) -> &Polynomial {
        &self.levels[i - 2].a
    }

    /// `bᵢ` for `i ≥ 2`.
    pub fn b(&self, i: usize) -> &Polynomial {
        &self.levels[i - 2].b
    }

    pub fn levels(&self) -> &[TriangularLevel] {
        &self.levels
    }

    /// Local nilpotency of a triangular derivation: true iff every `aᵢ = 0`.
    ///
    /// If all `aᵢ` vanish, `D(xᵢ)` lies in `K[x₁..x_{i−1}]` and induction on `i`
    /// shows every generator is killed by a power of `D`, hence so is every
    /// polynomial. Otherwise take the least `i` with `aᵢ ≠ 0`; `D` is locally
    /// nilpotent on `A = K[x₁..x_{i−1}]` with the degree function
    /// `ν(f) = max{m : D^m f ≠ 0}`. The `xᵢ`-coefficient of `D^k(xᵢ)` obeys
    /// `c₀ = 1`, `c_{k+1} = D(cₖ) + aᵢcₖ`, and `ν(aᵢcₖ) > ν(D cₖ)` gives
    /// `ν(cₖ) = k·ν(aᵢ) ≥ 0`, so no power of `D` kills `xᵢ`.
    pub fn is_locally_nilpotent(&self) -> bool {
        self.levels.iter().all(|l| l.a.is_zero())
    }

    /// Upper bound on the least `m` with `D^m(v) = 0` for each generator of a
    /// strictly triangular form (`None` if some `aᵢ ≠ 0`). The bound is
    /// `1 + ν(v)` where `ν(x₁) = 1` and `ν(xᵢ) ≤ 1 + max over monomials of bᵢ
    /// of Σ eⱼ·ν(xⱼ)`.
    pub fn nilpotency_bounds(&self) -> Option<Vec<u64>> {
        if !self.is_locally_nilpotent() {
            return None;
        }
        let mut nu = vec![0u64; self.ctx.arity()];
        nu[self.first] = 1;
        for l in &self.levels {
            let weighted = l
                .b
                .terms()
                .map(|(m, _)| {
                    m.exponents()
                        .iter()
                        .zip(&nu)
                        .map(|(&e, &w)| e as u64 * w)
                        .sum::<u64>()
                })
                .max();
            nu[l.var] = weighted.map_or(0, |w| w + 1);
        }
        Some(nu.into_iter().map(|n| n + 1).collect())
    }
}

pub fn is_locally_nilpotent_triangular(t: &TriangularForm) -> bool {
    t.is_locally_nilpotent()
}

impl Derivation {
    /// Whether every generator image is zero.
    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Polynomial::is_zero)
    }
}
