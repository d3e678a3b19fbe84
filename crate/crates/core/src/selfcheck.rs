//! Seeded randomized consistency checks, run by `derivlab selfcheck`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::derivation::Derivation;
use crate::membership::{preimage_bounded, DegreeBounds};
use crate::ode::{solvable_subspace, solve_ode};
use crate::poly::{rat, Monomial, Polynomial, VarContext};
use crate::resonance::{is_relation, positive_resonances};

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: u32,
    pub failures: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelfcheckReport {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl SelfcheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failures == 0)
    }
}

/// Random polynomial with up to `terms` terms, exponents `≤ max_exp`, small integer coefficients.
pub fn random_poly(rng: &mut impl Rng, ctx: &VarContext, max_exp: u32, terms: usize) -> Polynomial {
    let n = rng.gen_range(0..=terms);
    Polynomial::from_terms(
        ctx,
        (0..n).map(|_| {
            let e = (0..ctx.arity()).map(|_| rng.gen_range(0..=max_exp)).collect();
            (Monomial::new(e), rat(rng.gen_range(-4..=4), rng.gen_range(1..=3)))
        }),
    )
}

fn random_univariate(rng: &mut impl Rng, ctx: &VarContext, max_deg: usize) -> Polynomial {
    let len = rng.gen_range(0..=max_deg + 1);
    let cs: Vec<_> = (0..len).map(|_| rat(rng.gen_range(-3..=3), 1)).collect();
    Polynomial::from_univariate(ctx, 0, &cs)
}

fn check(name: &'static str, cases: u32, mut case: impl FnMut() -> bool) -> CheckResult {
    let failures = (0..cases).filter(|_| !case()).count() as u32;
    CheckResult { name, cases, failures }
}

pub fn run(seed: u64, cases: u32) -> SelfcheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ctx = VarContext::with_names(["x", "y"]).expect("names");
    let line = VarContext::with_names(["x"]).expect("names");
    let mut checks = Vec::new();

    checks.push(check("ring axioms", cases, || {
        let [f, g, h] = [0; 3].map(|_| random_poly(&mut rng, &ctx, 3, 4));
        (&f + &g) * &h == &f * &h + &g * &h && &f * &g == &g * &f && (&f * &g) * &h == &f * &(&g * &h)
    }));

    checks.push(check("leibniz rule", cases, || {
        let d = Derivation::new(&ctx, vec![random_poly(&mut rng, &ctx, 2, 3), random_poly(&mut rng, &ctx, 2, 3)])
            .expect("arity");
        let f = random_poly(&mut rng, &ctx, 3, 3);
        let g = random_poly(&mut rng, &ctx, 3, 3);
        let lhs = d.apply(&(&f * &g)).expect("ctx");
        lhs == d.apply(&f).expect("ctx") * &g + &f * &d.apply(&g).expect("ctx")
    }));

    checks.push(check("ode round trip", cases, || {
        let a = random_univariate(&mut rng, &line, 3);
        let z = random_univariate(&mut rng, &line, 4);
        let b = z.partial(0).expect("ctx") - &a * &z;
        match solve_ode(&a, &b).expect("univariate") {
            Some(w) => w.partial(0).expect("ctx") == &a * &w + &b,
            None => false,
        }
    }));

    checks.push(check("solvable subspace membership", cases, || {
        let a = random_univariate(&mut rng, &line, 2);
        let bs: Vec<_> = (0..2).map(|_| random_univariate(&mut rng, &line, 3)).collect();
        let sub = solvable_subspace(&a, &bs).expect("univariate");
        sub.basis.iter().all(|k| {
            let rhs = bs.iter().zip(k).fold(Polynomial::zero(&line), |acc, (b, c)| acc + b.scale(c));
            solve_ode(&a, &rhs).expect("univariate").is_some()
        })
    }));

    checks.push(check("resonance relations", cases, || {
        let s = rng.gen_range(1..=3);
        let as_: Vec<_> = (0..s).map(|_| random_univariate(&mut rng, &line, 2)).collect();
        let r = positive_resonances(&as_, 3).expect("nonempty");
        r.relations.iter().all(|l| is_relation(&as_, l)) && (r.kernel_dimension > 0 || r.relations.is_empty())
    }));

    checks.push(check("bounded preimage of images", cases.div_ceil(4), || {
        let d = Derivation::new(
            &ctx,
            vec![Polynomial::one(&ctx), random_poly(&mut rng, &ctx, 1, 3)],
        )
        .expect("arity");
        let f = random_poly(&mut rng, &ctx, 2, 3);
        let g = d.apply(&f).expect("ctx");
        preimage_bounded(&d, &g, &DegreeBounds::uniform(&ctx, 2))
            .map(|c| c.is_feasible())
            .unwrap_or(false)
    }));

    SelfcheckReport { seed, checks }
}
