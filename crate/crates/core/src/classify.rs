//! Rule chain deciding whether `Im D` is a Mathieu-Zhao space.
//!
//! Each rule recognizes one family of derivations with a known answer and
//! names the result it relies on. Rules are tried in a fixed order and the
//! first match wins; the local nilpotency check only annotates the verdict.

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::derivation::{is_locally_nilpotent_triangular, Derivation, ShamsuddinForm, TriangularForm};
use crate::membership::{check_nonmembership, BoundedCertificate, DegreeBounds, MembershipError};
use crate::poly::{Degree, Polynomial, Rational};
use crate::simplicity::is_simple_shamsuddin;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "MZ")]
    Mz,
    #[serde(rename = "NotMZ")]
    NotMz,
    NotSimple,
    /// Not MZ provided `D` is simple, which could not be decided.
    #[serde(rename = "ConditionalNotMZ")]
    ConditionalNotMz,
    Unknown,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Mz => "MZ",
            Status::NotMz => "NotMZ",
            Status::NotSimple => "NotSimple",
            Status::ConditionalNotMz => "ConditionalNotMZ",
            Status::Unknown => "Unknown",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    Thm22,
    Prop24,
    Cor26,
    Prop31a,
    Prop31b,
    Prop33,
    Thm34,
    Prop35,
    Cor36,
    Prop37,
    LocallyFinite,
}

impl Rule {
    pub fn tag(self) -> &'static str {
        match self {
            Rule::Thm22 => "Thm 2.2",
            Rule::Prop24 => "Prop 2.4",
            Rule::Cor26 => "Cor 2.6",
            Rule::Prop31a => "Prop 3.1(1)",
            Rule::Prop31b => "Prop 3.1(2)",
            Rule::Prop33 => "Prop 3.3",
            Rule::Thm34 => "Thm 3.4",
            Rule::Prop35 => "Prop 3.5",
            Rule::Cor36 => "Cor 3.6",
            Rule::Prop37 => "Prop 3.7",
            Rule::LocallyFinite => "locally finite (beyond paper)",
        }
    }
}

impl Serialize for Rule {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

/// A claim about `D` made alongside the main status.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Annotation {
    pub status: Status,
    pub rule: Rule,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub rule: Option<Rule>,
    /// Polynomial asserted to lie outside `Im D` while some power of it lies inside.
    pub witness: Option<Polynomial>,
    pub hypotheses_used: Vec<String>,
    pub annotations: Vec<Annotation>,
    pub citations: Vec<String>,
    pub beyond_paper: bool,
    pub notes: Vec<String>,
    pub certificate: Option<BoundedCertificate>,
}

impl Verdict {
    fn new(status: Status, rule: Rule) -> Self {
        Verdict {
            status,
            rule: Some(rule),
            witness: None,
            hypotheses_used: Vec::new(),
            annotations: Vec::new(),
            citations: vec![rule.tag().to_string()],
            beyond_paper: false,
            notes: Vec::new(),
            certificate: None,
        }
    }

    fn not_mz(rule: Rule, witness: Polynomial) -> Self {
        Verdict {
            witness: Some(witness),
            ..Verdict::new(Status::NotMz, rule)
        }
    }

    fn unknown() -> Self {
        Verdict {
            rule: None,
            citations: Vec::new(),
            ..Verdict::new(Status::Unknown, Rule::Thm22)
        }
    }

    fn hypothesis(mut self, h: &str) -> Self {
        self.hypotheses_used.push(h.to_string());
        self
    }

    fn cite(mut self, c: &str) -> Self {
        if !self.citations.iter().any(|x| x == c) {
            self.citations.push(c.to_string());
        }
        self
    }

    /// Whether the verdict carries the local nilpotency annotation.
    pub fn is_not_simple(&self) -> bool {
        self.status == Status::NotSimple || self.annotations.iter().any(|a| a.status == Status::NotSimple)
    }
}

#[derive(Debug, Clone, Default)]
pub struct ClassifyOptions {
    /// Treat `D` as simple where simplicity cannot be decided.
    pub assume_simple: bool,
    /// Re-check the witness within these bounds.
    pub check_bounds: Option<DegreeBounds>,
    /// Enable rules outside the published rule set.
    pub extensions: bool,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassifyError {
    #[error("the distinguished variable must satisfy D(x) = 1")]
    NotNormalized,
    #[error("witness {witness} has the bounded preimage {preimage} ({rule})")]
    WitnessContradiction { rule: String, witness: String, preimage: String },
    #[error(transparent)]
    Membership(#[from] MembershipError),
}

/// Exact test of `deg_pivot(n₁·a_{n−1} + n₂·a_n) ≥ 1` for every
/// `(n₁, n₂) ∈ ℕ² ∖ {0}`.
///
/// With `qᵢ` the part of `aᵢ` that involves the pivot, a bad pair exists iff
/// one of the `qᵢ` vanishes or `q_n = λ·q_{n−1}` with `λ < 0`.
pub fn prop31_condition2(a_nm1: &Polynomial, a_n: &Polynomial, pivot: usize) -> bool {
    let pivot_part = |a: &Polynomial| a - &a.substitute_zero(&[pivot]).expect("pivot in context");
    let q1 = pivot_part(a_nm1);
    let q2 = pivot_part(a_n);
    let (Some((m, c1)), false) = (q1.leading_term(), q2.is_zero()) else {
        return false;
    };
    let lambda = q2.coefficient(m) / c1;
    let proportional = q2 == q1.scale(&lambda);
    !(proportional && lambda < Rational::from_integer(0.into()))
}

pub fn classify(d: &Derivation, opts: &ClassifyOptions) -> Result<Verdict, ClassifyError> {
    if !d.is_normalized() {
        return Err(ClassifyError::NotNormalized);
    }
    let sh = d.as_shamsuddin();
    let tri = d.as_triangular();
    let lnd = tri
        .as_ref()
        .is_some_and(|t| d.context().arity() >= 2 && is_locally_nilpotent_triangular(t));

    let mut verdict = sh
        .as_ref()
        .and_then(shamsuddin_rules)
        .or_else(|| tri.as_ref().and_then(|t| triangular_rules(d, t, opts, lnd)))
        .or_else(|| {
            opts.extensions
                .then(|| tri.as_ref().and_then(locally_finite_rule))
                .flatten()
        });

    if lnd {
        let note = Annotation { status: Status::NotSimple, rule: Rule::Prop37 };
        verdict = Some(match verdict {
            Some(mut v) => {
                v.annotations.push(note);
                v.cite(Rule::Prop37.tag())
            }
            None => Verdict::new(Status::NotSimple, Rule::Prop37).hypothesis("triangular with all a_i = 0"),
        });
    }

    let mut verdict = verdict.unwrap_or_else(|| {
        let mut v = Verdict::unknown();
        if plausibly_simple(d, sh.as_ref()) {
            v.notes.push("conjecturally not MZ if D is simple (Conjecture 1.1)".to_string());
            v = v.cite("Conjecture 1.1");
        }
        v
    });

    if let (Some(bounds), Some(w)) = (&opts.check_bounds, &verdict.witness) {
        let cert = check_nonmembership(d, w, bounds)?;
        if cert.contradiction {
            let preimage = cert.preimage().map(ToString::to_string).unwrap_or_default();
            if verdict.status == Status::ConditionalNotMz {
                verdict
                    .notes
                    .push(format!("witness has the preimage {preimage}, so D is not simple"));
            } else {
                return Err(ClassifyError::WitnessContradiction {
                    rule: verdict.rule.map_or("", Rule::tag).to_string(),
                    witness: w.to_string(),
                    preimage,
                });
            }
        }
        verdict.certificate = Some(cert);
    }
    Ok(verdict)
}

fn shamsuddin_rules(sh: &ShamsuddinForm) -> Option<Verdict> {
    let ctx = sh.context();
    let groups = sh.groups();
    if groups.is_empty() {
        return None;
    }
    let first_var = |g: usize| Polynomial::var(ctx, groups[g].slots[0].var);

    // R1
    let simplicity = is_simple_shamsuddin(sh);
    if simplicity.simple {
        return Some(
            Verdict::not_mz(Rule::Thm22, first_var(0))
                .hypothesis("D simple (decided)")
                .cite(simplicity.reason.citation()),
        );
    }

    // R2
    let nonzero_a: Vec<usize> = (0..groups.len()).filter(|&i| !groups[i].a.is_zero()).collect();
    if groups.len() <= 2 && nonzero_a.len() <= 1 {
        let v = match nonzero_a.first() {
            Some(&i) if !groups[i].a.is_constant() => Verdict::not_mz(Rule::Prop24, first_var(i)),
            _ => Verdict::new(Status::Mz, Rule::Prop24),
        };
        return Some(v.hypothesis("Shamsuddin with one shared coefficient a"));
    }

    // R3
    let with_b: Vec<usize> = (0..groups.len()).filter(|&i| groups[i].has_nonzero_b()).collect();
    let candidate = match with_b.as_slice() {
        [i] => Some(*i),
        [] => (0..groups.len()).find(|&i| groups[i].a.total_degree().is_at_least(1)),
        _ => None,
    };
    if let Some(i) = candidate.filter(|&i| groups[i].a.total_degree().is_at_least(1)) {
        return Some(
            Verdict::not_mz(Rule::Cor26, first_var(i))
                .hypothesis("all other groups have b = 0")
                .cite("Lemma 2.5")
                .cite(Rule::Prop24.tag()),
        );
    }
    None
}

fn triangular_rules(d: &Derivation, t: &TriangularForm, opts: &ClassifyOptions, lnd: bool) -> Option<Verdict> {
    let ctx = t.context();
    let n = t.len();
    if n < 2 {
        return None;
    }
    let xv = |i: usize| Polynomial::var(ctx, t.var(i));
    let deg = |p: &Polynomial, i: usize| p.degree_at(t.var(i));

    // R4
    let a_n = t.a(n);
    if deg(a_n, n - 1).is_at_least(1) {
        return Some(Verdict::not_mz(Rule::Prop31a, xv(n)).hypothesis("triangular"));
    }
    if n >= 3 && deg(a_n, n - 1) == Degree::Finite(0) && prop31_condition2(t.a(n - 1), a_n, t.var(n - 2)) {
        return Some(Verdict::not_mz(Rule::Prop31b, xv(n)).hypothesis("triangular"));
    }
    if n != 3 {
        return None;
    }

    let (a2, a3, b3) = (t.a(2), t.a(3), t.b(3));
    let x1 = t.var(1);
    let u = deg(b3, 2);

    // R6
    if a3.is_zero() {
        if let Some(v) = u.finite() {
            let top = b3.coefficient_at(t.var(2), v);
            let witness = xv(2).pow(v + 1);
            if top.is_constant() {
                let verdict = if a2.is_constant() {
                    Verdict::new(Status::Mz, Rule::Cor36)
                } else {
                    Verdict::not_mz(Rule::Cor36, witness)
                };
                return Some(verdict.hypothesis("triangular, n = 3, a_3 = 0, top x_2-coefficient of b_3 in K*"));
            }
            if a2.degree_at(x1) > top.degree_at(x1) {
                return Some(Verdict::not_mz(Rule::Prop35, witness).hypothesis("triangular, n = 3, a_3 = 0"));
            }
        }
    }

    // R5
    let witness_rule = if a3.is_zero() {
        u.finite().map(|u| (Rule::Prop33, xv(2).pow(u + 1)))
    } else if deg(a3, 2) == Degree::Finite(0) {
        Some((Rule::Thm34, xv(2)))
    } else {
        None
    };
    let (rule, witness) = witness_rule?;
    match simplicity_of(d, t, lnd) {
        Some(true) => Some(Verdict::not_mz(rule, witness).hypothesis("D simple (decided)")),
        Some(false) => None,
        None if opts.assume_simple => {
            let mut v = Verdict::not_mz(rule, witness).hypothesis("D simple");
            v.status = Status::ConditionalNotMz;
            Some(v)
        }
        None => None,
    }
}

/// `Some(true)`/`Some(false)` when simplicity of a triangular `D` is known.
fn simplicity_of(d: &Derivation, t: &TriangularForm, lnd: bool) -> Option<bool> {
    if lnd || d.images().iter().any(Polynomial::is_zero) {
        return Some(false);
    }
    if let Some(sh) = d.as_shamsuddin() {
        return Some(is_simple_shamsuddin(&sh).simple);
    }
    // a non-simple restriction to K[x_1, x_2] extends to a stable ideal of the whole ring
    let ctx = t.context();
    let keep = [t.var(1), t.var(2)];
    let sub = crate::poly::VarContext::new(
        keep.iter().map(|&v| ctx.name(v).to_string()),
        0,
    )
    .ok()?;
    let mut map = vec![None; ctx.arity()];
    map[keep[0]] = Some(0);
    map[keep[1]] = Some(1);
    let images = keep.iter().map(|&v| d.image(v).transfer(&sub, &map)).collect::<Option<Vec<_>>>()?;
    let low = Derivation::new(&sub, images).ok()?.as_shamsuddin()?;
    if !is_simple_shamsuddin(&low).simple {
        return Some(false);
    }
    None
}

fn locally_finite_rule(t: &TriangularForm) -> Option<Verdict> {
    if !t.levels().iter().all(|l| l.a.is_constant()) {
        return None;
    }
    let mut v = Verdict::new(Status::Mz, Rule::LocallyFinite).hypothesis("triangular with all a_i in K");
    v.beyond_paper = true;
    v.notes.push("triangular with constant a_i is locally finite".to_string());
    Some(v)
}

/// No cheap obstruction to simplicity is visible.
fn plausibly_simple(d: &Derivation, sh: Option<&ShamsuddinForm>) -> bool {
    if d.images().iter().any(Polynomial::is_zero) {
        return false;
    }
    match sh {
        Some(sh) => is_simple_shamsuddin(sh).simple,
        None => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::membership::preimage_bounded;
    use crate::parse::{parse_derivation, parse_poly};
    use crate::poly::{rat, VarContext};
    use proptest::prelude::*;

    fn run(spec: &str) -> Verdict {
        classify(&parse_derivation(spec).unwrap(), &ClassifyOptions::default()).unwrap()
    }

    fn checked(spec: &str) -> Verdict {
        let d = parse_derivation(spec).unwrap();
        let opts = ClassifyOptions {
            check_bounds: Some(DegreeBounds::witness_default(d.context())),
            ..Default::default()
        };
        classify(&d, &opts).unwrap()
    }

    fn witness(v: &Verdict) -> String {
        v.witness.as_ref().map(ToString::to_string).unwrap_or_default()
    }

    #[test]
    fn shamsuddin_examples() {
        let v = run("vars: x, y; x' = 1; y' = x*y + 1");
        assert_eq!((v.status, v.rule, witness(&v).as_str()), (Status::NotMz, Some(Rule::Thm22), "y"));

        let v = run("vars: x, y1, y2; x' = 1; y1' = 2*y1 + x; y2' = x^2");
        assert_eq!((v.status, v.rule), (Status::Mz, Some(Rule::Prop24)));
        assert!(v.witness.is_none());

        let v = run("vars: x, y; x' = 1; y' = y + 1");
        assert_eq!((v.status, v.rule), (Status::Mz, Some(Rule::Prop24)));

        let v = run("vars: x, y1, y2; x' = 1; y1' = x*y1 + x; y2' = x^2");
        assert_eq!((v.status, v.rule, witness(&v).as_str()), (Status::NotMz, Some(Rule::Prop24), "y1"));
    }

    #[test]
    fn restriction_rule() {
        // three groups, only the second carries b terms
        let v = run("vars: x, y1, y2, y3; x' = 1; y1' = 2*y1; y2' = x*y2 + x; y3' = x^2*y3");
        assert_eq!((v.status, v.rule, witness(&v).as_str()), (Status::NotMz, Some(Rule::Cor26), "y2"));
        // two groups with b terms: no rule applies
        let v = run("vars: x, y1, y2, y3; x' = 1; y1' = 2*y1 + 1; y2' = x*y2 + x; y3' = x^2*y3");
        assert_eq!(v.status, Status::Unknown);
    }

    #[test]
    fn triangular_examples() {
        let v = checked("vars: x1, x2, x3; x1' = 1; x2' = x1*x2 + 1; x3' = x2 + 1");
        assert_eq!((v.status, v.rule, witness(&v).as_str()), (Status::NotMz, Some(Rule::Cor36), "x2^2"));
        assert!(!v.certificate.unwrap().is_feasible());

        let v = checked("vars: x1, x2, x3; x1' = 1; x2' = x1; x3' = x2*x3 + 1");
        assert_eq!((v.status, v.rule, witness(&v).as_str()), (Status::NotMz, Some(Rule::Prop31a), "x3"));
        assert!(!v.certificate.unwrap().is_feasible());

        let v = run("vars: x, y1, y2; x' = 1; y1' = x; y2' = y1");
        assert!(v.is_not_simple());
        assert_eq!((v.status, v.rule), (Status::Mz, Some(Rule::Cor36)));
        assert!(v.citations.contains(&"Prop 3.7".to_string()));
    }

    #[test]
    fn nilpotent_without_mz_rule() {
        let v = run("vars: x, y1, y2, y3; x' = 1; y1' = x; y2' = y1; y3' = y2*x");
        assert_eq!((v.status, v.rule), (Status::NotSimple, Some(Rule::Prop37)));
    }

    #[test]
    fn cor36_is_an_iff() {
        let mz = run("vars: x1, x2, x3; x1' = 1; x2' = 3*x2 + x1; x3' = 2*x2 + 1");
        let not = run("vars: x1, x2, x3; x1' = 1; x2' = x1*x2 + x1; x3' = 2*x2 + 1");
        assert_eq!((mz.status, mz.rule), (Status::Mz, Some(Rule::Cor36)));
        assert_eq!((not.status, not.rule), (Status::NotMz, Some(Rule::Cor36)));
    }

    #[test]
    fn prop24_is_an_iff() {
        for (a, status) in [("5", Status::Mz), ("x + 5", Status::NotMz), ("x^3", Status::NotMz)] {
            let v = run(&format!("vars: x, y1, y2; x' = 1; y1' = ({a})*y1; y2' = ({a})*y2 + x; "));
            assert_eq!(v.status, status, "a = {a}");
        }
    }

    #[test]
    fn prop35_branch() {
        // top coefficient x1 of b3 is not constant, deg a2 = 2 > 1
        let v = checked("vars: x1, x2, x3; x1' = 1; x2' = x1^2*x2 + 1; x3' = x1*x2");
        assert_eq!((v.status, v.rule, witness(&v).as_str()), (Status::NotMz, Some(Rule::Prop35), "x2^2"));
    }

    #[test]
    fn conditional_branch() {
        // x3' involves x2 and x3, so simplicity is not decided here; a3 = -a2 blocks the pivot condition
        let spec = "vars: x1, x2, x3; x1' = 1; x2' = x1*x2 + 1; x3' = -x1*x3 + x2^2";
        assert_eq!(run(spec).status, Status::Unknown);
        let d = parse_derivation(spec).unwrap();
        let v = classify(&d, &ClassifyOptions { assume_simple: true, ..Default::default() }).unwrap();
        assert_eq!((v.status, v.rule, witness(&v).as_str()), (Status::ConditionalNotMz, Some(Rule::Thm34), "x2"));
        assert!(v.hypotheses_used.contains(&"D simple".to_string()));
    }

    #[test]
    fn assumption_is_ignored_when_refuted() {
        // the x1, x2 part is not simple (a2 constant)
        let spec = "vars: x1, x2, x3; x1' = 1; x2' = x2 + 1; x3' = -x1*x3 + x2^2";
        let d = parse_derivation(spec).unwrap();
        let v = classify(&d, &ClassifyOptions { assume_simple: true, ..Default::default() }).unwrap();
        assert_ne!(v.status, Status::ConditionalNotMz);
    }

    #[test]
    fn extension_rule() {
        let spec = "vars: x1, x2, x3; x1' = 1; x2' = x1^2; x3' = 2*x3 + x2*x1";
        let d = parse_derivation(spec).unwrap();
        let v = classify(&d, &ClassifyOptions::default()).unwrap();
        assert_ne!(v.rule, Some(Rule::LocallyFinite));
        let v = classify(&d, &ClassifyOptions { extensions: true, ..Default::default() }).unwrap();
        assert_eq!((v.status, v.rule), (Status::Mz, Some(Rule::LocallyFinite)));
        assert!(v.beyond_paper);
    }

    #[test]
    fn rejects_unnormalized() {
        let d = parse_derivation("vars: x, y; x' = 2; y' = y").unwrap();
        assert_eq!(classify(&d, &ClassifyOptions::default()), Err(ClassifyError::NotNormalized));
    }

    #[test]
    fn plain_partial_falls_through() {
        let v = run("vars: x; x' = 1");
        assert_eq!(v.status, Status::Unknown);
        assert!(v.rule.is_none());
    }

    #[test]
    fn witnesses_survive_bounded_checks() {
        for spec in [
            "vars: x, y; x' = 1; y' = x*y + 1",
            "vars: x, y1, y2; x' = 1; y1' = x*y1 + 1; y2' = x^2*y2 + 1",
            "vars: x, y1, y2; x' = 1; y1' = x*y1 + x; y2' = x^2",
            "vars: x, y1, y2, y3; x' = 1; y1' = 2*y1; y2' = x*y2 + x; y3' = x^2*y3",
            "vars: x1, x2, x3; x1' = 1; x2' = x1*x2 + 1; x3' = x2 + 1",
        ] {
            let v = checked(spec);
            assert_eq!(v.status, Status::NotMz, "{spec}");
            let cert = v.certificate.expect("certificate");
            assert!(!cert.is_feasible() && !cert.contradiction, "{spec}");
        }
    }

    #[test]
    fn mz_verdicts_reach_probe_monomials() {
        for spec in [
            "vars: x, y1, y2; x' = 1; y1' = 2*y1 + x; y2' = x^2",
            "vars: x, y1, y2; x' = 1; y1' = y1 + 1; y2' = y2",
        ] {
            let d = parse_derivation(spec).unwrap();
            let c = d.context();
            assert_eq!(classify(&d, &ClassifyOptions::default()).unwrap().status, Status::Mz);
            let bounds = DegreeBounds::new(c, vec![6, 1, 1]).unwrap();
            for g in ["y1", "x*y1", "x^2", "y1*y2"] {
                let g = parse_poly(g, c).unwrap();
                let f = preimage_bounded(&d, &g, &bounds).unwrap();
                assert!(f.is_feasible(), "{g} under {spec}");
            }
        }
    }

    #[test]
    fn condition2_examples() {
        let c = VarContext::with_names(["t", "u"]).unwrap();
        let p = |s: &str| parse_poly(s, &c).unwrap();
        assert!(prop31_condition2(&p("t"), &p("t^2"), 0));
        assert!(!prop31_condition2(&p("t"), &p("-t"), 0));
        assert!(!prop31_condition2(&p("t"), &p("5"), 0));
        assert!(!prop31_condition2(&p("2*t + u"), &p("-3*t"), 0));
        assert!(prop31_condition2(&p("2*t + u"), &p("3*t + 7"), 0));
    }

    fn grid_condition2(a1: &Polynomial, a2: &Polynomial, pivot: usize) -> bool {
        (0..=20i64).all(|n1| {
            (0..=20i64).all(|n2| {
                (n1, n2) == (0, 0)
                    || (a1.scale(&rat(n1, 1)) + a2.scale(&rat(n2, 1))).degree_in(pivot).unwrap().is_at_least(1)
            })
        })
    }

    proptest! {
        #[test]
        fn condition2_matches_grid(
            c1 in prop::collection::vec(-3i64..=3, 1..4),
            c2 in prop::collection::vec(-3i64..=3, 1..4),
            shift in -2i64..=2,
        ) {
            let c = VarContext::with_names(["t", "u"]).unwrap();
            let uni = |cs: &[i64]| Polynomial::from_univariate(&c, 0, &cs.iter().map(|&v| rat(v, 1)).collect::<Vec<_>>());
            let a1 = uni(&c1) + Polynomial::var(&c, 1);
            let a2 = uni(&c2) + Polynomial::var(&c, 1).scale(&rat(shift, 1));
            prop_assert_eq!(prop31_condition2(&a1, &a2, 0), grid_condition2(&a1, &a2, 0));
        }

        #[test]
        fn classification_is_deterministic(a in -2i64..=2, b in -2i64..=2, e in 0u32..3) {
            let spec = format!("vars: x, y; x' = 1; y' = ({a})*x^{e}*y + {b}");
            let d = parse_derivation(&spec).unwrap();
            let opts = ClassifyOptions::default();
            prop_assert_eq!(classify(&d, &opts).unwrap(), classify(&d, &opts).unwrap());
        }
    }
}
