//! Property checks shared by the proptest suites and the acceptance runner.
//! Each check returns `Err` with a description of the counterexample.

use rand::Rng;

use regtype::decide::{enumerate_witness, ext_member};
use regtype::engine::widen;
use regtype::propagate::{aunify, cover, coverset_join, down, solve, type_of, up, vts, TypeSubst};
use regtype::term::ground_encode;
use regtype::{Decider, ExtType, RuleSet, Scheme, SeqExpr, Term, Type, Var, VarTyping, VtSet};

use super::ensure;
use super::gen::Sampler;
use super::oracle::{apply, sem_member, subst, Bindings};

pub type Check = Result<(), String>;

/// `Ok(false)` when the sampled case did not meet the property's hypothesis.
pub type Outcome = Result<bool, String>;

fn lib<T>(r: regtype::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn vars(names: &[&str]) -> Vec<Var> {
    names.iter().map(|n| Var::new(n)).collect()
}

/// Emptiness agrees with brute-force witness search bounded by the number
/// of search states.
pub fn etype_vs_witness(rules: &RuleSet, e: &ExtType) -> Check {
    let dec = Decider::new(rules);
    let (empty, states) = lib(dec.etype_with_states(e))?;
    ensure(lib(dec.etype(e))? == empty, || format!("tabled and direct answers differ on {e}"))?;
    if empty {
        let w = enumerate_witness(e, rules, states + 4);
        ensure(w.is_none(), || format!("{e} judged empty but {} is a member", w.clone().unwrap()))
    } else {
        match enumerate_witness(e, rules, states.max(1)) {
            Some(w) => ensure(ext_member(rules, &w, e), || format!("witness {w} not in {e}")),
            None => Err(format!("{e} judged nonempty but no witness within depth {states}")),
        }
    }
}

/// Membership of a possibly non-ground term equals membership of its ground
/// encoding under the ground semantics.
pub fn chi_transfer(rules: &RuleSet, r: &Type, seed: u64) -> Check {
    let mut s = Sampler::new(seed);
    let t = if s.rng.gen_bool(0.6) {
        match s.member(rules, r, 4) {
            Some(t) => s.loosen(&t, 0.15),
            None => s.any_term(3),
        }
    } else {
        s.any_term(3)
    };
    let expect = sem_member(rules, &t, r);
    let encoded = ext_member(rules, &ground_encode(&t), &ExtType::Base(r.clone()));
    ensure(encoded == expect, || format!("{t} in {r}: definition says {expect}, encoding says {encoded}"))?;
    let direct = lib(rules.member(&t, r))?;
    ensure(direct == expect, || format!("{t} in {r}: definition says {expect}, member says {direct}"))
}

pub fn includes_transitive(rules: &RuleSet, a: &Type, b: &Type, c: &Type) -> Check {
    let dec = Decider::new(rules);
    let ab = lib(dec.includes(a, b))?;
    let bc = lib(dec.includes(b, c))?;
    if ab && bc {
        ensure(lib(dec.includes(a, c))?, || format!("{c} <= {b} <= {a} but not {c} <= {a}"))?;
    }
    if !ab {
        let w = enumerate_witness(&ExtType::diff(b.clone(), a.clone()), rules, 8);
        ensure(w.is_some(), || format!("{b} <= {a} refuted without a witness"))?;
    }
    Ok(())
}

/// Members stay members under instantiation.
pub fn instantiation_closed(rules: &RuleSet, r: &Type, seed: u64) -> Outcome {
    let mut s = Sampler::new(seed);
    let Some(t) = s.member(rules, r, 4) else { return Ok(false) };
    ensure(sem_member(rules, &t, r), || format!("sampler produced {t} outside {r}"))?;
    let sigma: Vec<(Var, Term)> = t.vars().into_iter().map(|v| (v, s.any_term(2))).collect();
    let inst = apply(&sigma, &t);
    ensure(sem_member(rules, &inst, r), || format!("{t} in {r} but its instance {inst} is not"))?;
    ensure(lib(rules.member(&inst, r))?, || format!("member rejects instance {inst} of {r}"))?;
    Ok(true)
}

/// Every substitution that puts `t` in `r` is described by `vts(r, t)`.
pub fn vts_sound(rules: &RuleSet, r: &Type, seed: u64) -> Outcome {
    let mut s = Sampler::new(seed);
    let Some(g) = s.member(rules, r, 4) else { return Ok(false) };
    let pool = vars(&["x", "y", "z", "w"]);
    let (t, theta) = s.generalize(&g, &pool, 0.4);
    ensure(apply(&theta, &t) == g, || format!("pattern {t} does not rebuild {g}"))?;
    let out = vts(r, &t, rules);
    ensure(out.satisfied_by(&subst(&theta), rules), || {
        format!("vts({r}, {t}) = {out} misses {}", subst(&theta))
    })
    .map(|_| true)
}

/// A typing that `theta` satisfies: each variable gets the first candidate
/// type containing its value, or `1`.
fn typing_for(rules: &RuleSet, s: &mut Sampler, theta: &[(Var, Term)], pool: &[Type]) -> VarTyping {
    let mut mu = VarTyping::new();
    for (v, t) in theta {
        for _ in 0..4 {
            let cand = s.pick(pool).clone();
            if sem_member(rules, t, &cand) {
                mu.set(v.clone(), cand);
                break;
            }
        }
    }
    mu
}

fn noise(s: &mut Sampler, vs: &[Var], pool: &[Type]) -> VarTyping {
    let mut mu = VarTyping::new();
    for v in vs {
        if s.rng.gen_bool(0.6) {
            mu.set(v.clone(), s.pick(pool).clone());
        }
    }
    mu
}

/// A set that contains `theta` plus up to two unrelated typings.
fn set_containing(rules: &RuleSet, s: &mut Sampler, theta: &[(Var, Term)], pool: &[Type]) -> VtSet {
    let vs: Vec<Var> = theta.iter().map(|(v, _)| v.clone()).collect();
    let mut out = VtSet::singleton(typing_for(rules, s, theta, pool));
    for _ in 0..s.rng.gen_range(0..3) {
        out.insert(noise(s, &vs, pool));
    }
    out
}

fn value(rules: &RuleSet, s: &mut Sampler, pool: &[Type]) -> Term {
    let r = s.pick(pool).clone();
    s.member(rules, &r, 3).unwrap_or_else(|| s.any_term(2))
}

/// Solved-form equations with a substitution that satisfies a sampled set.
pub struct EqCase {
    pub eqs: Vec<(Var, Term)>,
    pub theta: Vec<(Var, Term)>,
    pub set: VtSet,
}

pub fn eq_case(rules: &RuleSet, pool: &[Type], seed: u64) -> EqCase {
    let mut s = Sampler::new(seed);
    let lhs = if s.rng.gen_bool(0.5) { vars(&["a"]) } else { vars(&["a", "b"]) };
    let rhs = vars(&["c", "d"]);
    let sigma: Vec<(Var, Term)> = rhs.iter().map(|v| (v.clone(), value(rules, &mut s, pool))).collect();
    let mut eqs = Vec::new();
    let mut theta: Vec<(Var, Term)> = sigma.iter().map(|(v, t)| (v.clone(), s.loosen(t, 0.2))).collect();
    for x in lhs {
        let t = s.pattern(&rhs, 2);
        let val = if s.rng.gen_bool(0.1) { s.any_term(2) } else { s.loosen(&apply(&sigma, &t), 0.25) };
        theta.push((x.clone(), val));
        eqs.push((x, t));
    }
    let set = set_containing(rules, &mut s, &theta, pool);
    EqCase { eqs, theta, set }
}

/// The substitution after solving the equations under `theta`, if they unify.
fn solved(c: &EqCase) -> Option<Vec<(Var, Term)>> {
    let mut b = Bindings::new();
    for (x, t) in &c.eqs {
        if !b.unify(&apply(&c.theta, &Term::Var(x.clone())), &apply(&c.theta, t)) {
            return None;
        }
    }
    Some(c.theta.iter().map(|(v, t)| (v.clone(), b.resolve(t))).collect())
}

fn eq_check(rules: &RuleSet, c: &EqCase, name: &str, out: &VtSet) -> Outcome {
    ensure(c.set.satisfied_by(&subst(&c.theta), rules), || format!("setup: {} outside {}", subst(&c.theta), c.set))?;
    let Some(after) = solved(c) else { return Ok(false) };
    let eqs: Vec<String> = c.eqs.iter().map(|(x, t)| format!("{x}={t}")).collect();
    ensure(out.satisfied_by(&subst(&after), rules), || {
        format!("{name}({{{}}}, {}) = {out} misses {}", eqs.join(", "), c.set, subst(&after))
    })
    .map(|_| true)
}

pub fn down_sound(rules: &RuleSet, pool: &[Type], seed: u64) -> Outcome {
    let c = eq_case(rules, pool, seed);
    eq_check(rules, &c, "down", &down(&c.eqs, &c.set, rules))
}

pub fn up_sound(rules: &RuleSet, pool: &[Type], seed: u64) -> Outcome {
    let c = eq_case(rules, pool, seed);
    let a = eq_check(rules, &c, "up", &lib(up(&c.eqs, &c.set, rules))?)?;
    let b = eq_check(rules, &c, "solve", &lib(solve(&c.eqs, &c.set, rules))?)?;
    Ok(a && b)
}

/// Join is an upper bound and meet is exact, at every scheme.
pub fn tsub_bounds(rules: &RuleSet, k1: &TypeSubst, k2: &TypeSubst, tau: &Scheme) -> Check {
    let dec = Decider::new(rules);
    let (a, b) = (k1.apply(tau), k2.apply(tau));
    let j = k1.join(k2).apply(tau);
    let both = Type::or_raw(a.clone(), b.clone());
    ensure(lib(dec.includes(&j, &both))?, || format!("({k1} join {k2})({tau}) = {j} misses {both}"))?;
    let m = k1.meet(k2).apply(tau);
    let conj = Type::and_raw(a, b);
    ensure(lib(dec.equivalent(&m, &conj))?, || format!("({k1} meet {k2})({tau}) = {m} differs from {conj}"))
}

fn cover_type(k: &[TypeSubst], tau: &Scheme) -> Type {
    Type::or_all(k.iter().map(|x| x.apply(tau)))
}

pub fn cover_sound(rules: &RuleSet, r: &Type, tau: &Scheme) -> Check {
    let dec = Decider::new(rules);
    let k = cover(r, tau);
    let u = cover_type(&k, tau);
    ensure(lib(dec.includes(&u, r))?, || format!("cover({r}, {tau}) gives {u}, which misses part of {r}"))
}

/// Covers of the two components combine into a cover of the pair.
pub fn cover_compositional(rules: &RuleSet, r1: &Type, t1: &Scheme, r2: &Type, t2: &Scheme) -> Check {
    let dec = Decider::new(rules);
    let (k1, k2) = (cover(r1, t1), cover(r2, t2));
    let joined = coverset_join(&k1, &k2);
    let union = joined
        .iter()
        .map(|k| SeqExpr::seq(vec![k.apply(t1), k.apply(t2)]))
        .reduce(SeqExpr::or)
        .unwrap_or(SeqExpr::Never(2));
    let lhs = SeqExpr::seq(vec![r1.clone(), r2.clone()]);
    let ok = lib(dec.etype_seq(&SeqExpr::and(lhs.clone(), SeqExpr::not(union.clone()))))?;
    ensure(ok, || format!("{lhs} not within {union}"))
}

/// `type_of` contains every instance of the term under the typing.
pub fn type_of_sound(rules: &RuleSet, pool: &[Type], seed: u64) -> Outcome {
    let mut s = Sampler::new(seed);
    let vs = vars(&["a", "b", "c"]);
    let mut mu = VarTyping::new();
    let mut theta = Vec::new();
    for v in &vs {
        let r = s.pick(pool).clone();
        let Some(t) = s.member(rules, &r, 3) else { return Ok(false) };
        mu.set(v.clone(), r);
        theta.push((v.clone(), t));
    }
    let t = s.pattern(&vs, 3);
    let r = lib(type_of(&t, &mu, rules))?;
    let inst = apply(&theta, &t);
    ensure(sem_member(rules, &inst, &r), || format!("type_of({t}, {mu}) = {r} misses {inst}"))?;
    Ok(true)
}

/// Abstract unification covers concrete unification of sampled states.
pub fn aunify_sound(rules: &RuleSet, pool: &[Type], seed: u64) -> Outcome {
    let mut s = Sampler::new(seed);
    let vp = vars(&["x", "y", "z"]);
    let g = Term::app("p", vec![value(rules, &mut s, pool), value(rules, &mut s, pool)]);
    let (a1, b1) = s.generalize(&g, &vp, 0.4);
    let (a2, b2) = s.generalize(&g, &vp, 0.4);
    let theta1: Vec<(Var, Term)> = b1.iter().map(|(v, t)| (v.clone(), s.loosen(t, 0.2))).collect();
    let theta2: Vec<(Var, Term)> = b2.iter().map(|(v, t)| (v.clone(), s.loosen(t, 0.2))).collect();
    let s1 = set_containing(rules, &mut s, &theta1, pool);
    let s2 = set_containing(rules, &mut s, &theta2, pool);
    let dec = Decider::new(rules);
    let out = lib(aunify(&a1, &s1, &a2, &s2, &dec))?;
    // Rename the caller side apart before unifying.
    let left = apply(&theta1, &a1).map_vars(&mut |v| Term::Var(Var::scoped(&v.name, v.scope + 20_000)));
    let right = apply(&theta2, &a2);
    let mut b = Bindings::new();
    if !b.unify(&left, &right) {
        return Ok(false);
    }
    let after: Vec<(Var, Term)> =
        vp.iter().map(|v| (v.clone(), b.resolve(&apply(&theta2, &Term::Var(v.clone()))))).collect();
    ensure(out.satisfied_by(&subst(&after), rules), || {
        format!("aunify({a1}, {s1}, {a2}, {s2}) = {out} misses {}", subst(&after))
    })
    .map(|_| true)
}

fn random_set(s: &mut Sampler, vs: &[Var], pool: &[Type]) -> VtSet {
    let n = s.rng.gen_range(1..3);
    VtSet::from_typings((0..n).map(|_| noise(s, vs, pool)))
}

/// Substitutions of the meet are exactly those of both operands.
pub fn meet_exact(rules: &RuleSet, pool: &[Type], seed: u64) -> Check {
    let mut s = Sampler::new(seed);
    let vs = vars(&["a", "b"]);
    let s1 = random_set(&mut s, &vs, pool);
    let s2 = random_set(&mut s, &vs, pool);
    let theta: Vec<(Var, Term)> = vs.iter().map(|v| (v.clone(), value(rules, &mut s, pool))).collect();
    let th = subst(&theta);
    let both = s1.satisfied_by(&th, rules) && s2.satisfied_by(&th, rules);
    let m = s1.meet(&s2);
    ensure(m.satisfied_by(&th, rules) == both, || format!("{th}: meet of {s1} and {s2} disagrees"))
}

/// Described substitutions stay described after further instantiation.
pub fn set_instantiation_closed(rules: &RuleSet, pool: &[Type], seed: u64) -> Check {
    let mut s = Sampler::new(seed);
    let vs = vars(&["a", "b"]);
    let theta: Vec<(Var, Term)> = vs.iter().map(|v| (v.clone(), value(rules, &mut s, pool))).collect();
    let set = set_containing(rules, &mut s, &theta, pool);
    let free: Vec<Var> = theta.iter().flat_map(|(_, t)| t.vars()).collect();
    let sigma: Vec<(Var, Term)> = free.into_iter().map(|v| (v, s.any_term(2))).collect();
    let composed: Vec<(Var, Term)> = theta.iter().map(|(v, t)| (v.clone(), apply(&sigma, t))).collect();
    ensure(set.satisfied_by(&subst(&composed), rules), || {
        format!("{} in {set} but its instance {} is not", subst(&theta), subst(&composed))
    })
}

/// Meet and join give equivalent results on equivalent operands.
pub fn ops_respect_equivalence(rules: &RuleSet, pool: &[Type], seed: u64) -> Check {
    let mut s = Sampler::new(seed);
    let vs = vars(&["a", "b"]);
    let dec = Decider::new(rules);
    let a = random_set(&mut s, &vs, pool).union(&random_set(&mut s, &vs, pool));
    let t = random_set(&mut s, &vs, pool);
    let a2 = dec.remove_redundant(&a);
    ensure(lib(dec.vtset_equiv(&a, &a2))?, || format!("remove_redundant changed the meaning of {a}"))?;
    let (m1, m2) = (a.meet(&t), a2.meet(&t));
    ensure(lib(dec.vtset_equiv(&m1, &m2))?, || format!("meet with {t}: {m1} vs {m2}"))?;
    let (j1, j2) = (a.join(&t, &dec), a2.join(&t, &dec));
    ensure(lib(dec.vtset_equiv(&j1, &j2))?, || format!("join with {t}: {j1} vs {j2}"))
}

pub fn canonical_equivalent(rules: &RuleSet, r: &Type) -> Check {
    let dec = Decider::new(rules);
    let c = r.canonical();
    ensure(lib(dec.equivalent(r, &c))?, || format!("canonical form {c} of {r} is not equivalent"))?;
    ensure(c.canonical() == c, || format!("canonical form {c} is not a fixpoint"))?;
    let t = dec.tidy(r);
    ensure(lib(dec.equivalent(r, &t))?, || format!("tidy form {t} of {r} is not equivalent"))
}

pub fn depth_abstraction_sound(rules: &RuleSet, r: &Type, k: usize) -> Check {
    let dec = Decider::new(rules);
    let d = lib(r.depth_abstract(k))?;
    ensure(lib(dec.includes(&d, r))?, || format!("d_{k}({r}) = {d} loses members"))?;
    ensure(d.atom_depth_max() <= k, || format!("d_{k}({r}) = {d} is deeper than {k}"))
}

pub fn widening_extensive(rules: &RuleSet, pool: &[Type], k: usize, seed: u64) -> Check {
    let mut s = Sampler::new(seed);
    let vs = vars(&["a", "b"]);
    let set = random_set(&mut s, &vs, pool);
    let dec = Decider::new(rules);
    let w = lib(widen(&set, k, &dec))?;
    ensure(lib(dec.vtset_leq(&set, &w))?, || format!("widen({set}, {k}) = {w} loses substitutions"))
}
