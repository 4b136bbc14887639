//! Worked examples for propagation, covers and the decision procedures.

use std::sync::Arc;

use regtype::decide::enumerate_witness;
use regtype::propagate::{aunify, cover, coverset_join, coverset_meet, down, id_abstract, solve, type_of, up, vts, TypeSubst};
use regtype::{Decider, ExtType, RuleSet, Scheme, SeqExpr, Term, Type, VarTyping, VtSet};

use super::props::Check;
use super::{ensure, peano, peano_pairs, rules, ty, typing, v, vtset};

pub type Golden = (&'static str, fn() -> Check);

fn lib<T>(r: regtype::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn equiv_sets(rules: &RuleSet, got: &VtSet, want: &VtSet) -> Check {
    let dec = Decider::new(rules);
    ensure(lib(dec.vtset_equiv(got, want))?, || format!("got {got}, expected {want}"))
}

fn equiv_types(rules: &RuleSet, got: &Type, want: &Type) -> Check {
    let dec = Decider::new(rules);
    ensure(lib(dec.equivalent(got, want))?, || format!("got {got}, expected {want}"))
}

fn singleton_list() -> Term {
    Term::list(vec![Term::var("x")], None)
}

/// `{x: 1, y: list(nat) or nat}` and its solved equation `y = [x]`.
fn down_input() -> (Vec<(regtype::Var, Term)>, VtSet) {
    (vec![(v("y"), singleton_list())], vtset(&[&[("y", "list(nat) or nat")]]))
}

fn mu() -> VarTyping {
    typing(&[("x", "nat"), ("y", "list(nat) or nat")])
}

pub fn propagation() -> Vec<Golden> {
    vec![
        ("vts of a list type on [x]", || {
            let d = peano();
            equiv_sets(&d, &vts(&ty("list(nat)"), &singleton_list(), &d), &vtset(&[&[("x", "nat")]]))
        }),
        ("vts of nat on [x] is empty", || {
            let d = peano();
            let out = vts(&ty("nat"), &singleton_list(), &d);
            ensure(out.is_empty(), || format!("got {out}"))
        }),
        ("vts of a union on [x]", || {
            let d = peano();
            equiv_sets(&d, &vts(&ty("list(nat) or nat"), &singleton_list(), &d), &vtset(&[&[("x", "nat")]]))
        }),
        ("vts of 0 on a compound term is empty", || {
            let d = peano();
            let out = vts(&Type::Zero, &Term::app("s", vec![Term::var("x")]), &d);
            ensure(out.is_empty(), || format!("got {out}"))
        }),
        ("down narrows x", || {
            let d = peano();
            let (eqs, s) = down_input();
            equiv_sets(&d, &down(&eqs, &s, &d), &VtSet::singleton(mu()))
        }),
        ("down with no equations", || {
            let d = peano();
            let (_, s) = down_input();
            equiv_sets(&d, &down(&[], &s, &d), &s)
        }),
        ("type of x", || {
            let d = peano();
            equiv_types(&d, &lib(type_of(&Term::var("x"), &mu(), &d))?, &ty("nat"))
        }),
        ("type of []", || {
            let d = peano();
            equiv_types(&d, &lib(type_of(&Term::nil(), &mu(), &d))?, &ty("list(0)"))
        }),
        ("type of [x]", || {
            let d = peano();
            equiv_types(&d, &lib(type_of(&singleton_list(), &mu(), &d))?, &ty("list(nat)"))
        }),
        ("type of a shared constant", || {
            let d = rules("nil.rules");
            let got = lib(type_of(&Term::atom("nil"), &VarTyping::new(), &d))?;
            equiv_types(&d, &got, &ty("list(0) and tree(0)"))?;
            let w = enumerate_witness(&ExtType::Base(got.clone()), &d, 2);
            ensure(w == Some(Term::atom("nil")), || format!("witness {w:?}"))
        }),
        ("up narrows y", || {
            let d = peano();
            let (eqs, _) = down_input();
            let out = lib(up(&eqs, &VtSet::singleton(mu()), &d))?;
            equiv_sets(&d, &out, &vtset(&[&[("x", "nat"), ("y", "list(nat)")]]))
        }),
        ("solve composes down and up", || {
            let d = peano();
            let (eqs, s) = down_input();
            equiv_sets(&d, &lib(solve(&eqs, &s, &d))?, &vtset(&[&[("x", "nat"), ("y", "list(nat)")]]))
        }),
        ("aunify of p(x) with p([x])", || {
            let d = peano();
            let dec = Decider::new(&d);
            let a1 = Term::app("p", vec![Term::var("x")]);
            let a2 = Term::app("p", vec![singleton_list()]);
            let s1 = vtset(&[&[("x", "list(nat) or nat")]]);
            let out = lib(aunify(&a1, &s1, &a2, &id_abstract(), &dec))?;
            equiv_sets(&d, &out, &vtset(&[&[("x", "nat")]]))?;
            ensure(out.vars().iter().all(|x| !x.primed), || format!("renamed variables remain in {out}"))
        }),
        ("aunify with an empty side", || {
            let d = peano();
            let dec = Decider::new(&d);
            let a = Term::app("p", vec![Term::var("x")]);
            let out = lib(aunify(&a, &VtSet::empty(), &a, &VtSet::top(), &dec))?;
            ensure(out.is_empty(), || format!("got {out}"))
        }),
    ]
}

fn b(s: &str) -> Arc<str> {
    s.into()
}

fn list_b() -> Scheme {
    Scheme::Con(b("list"), vec![b("B")])
}

fn tsub(pairs: &[(&str, &str)]) -> TypeSubst {
    TypeSubst::map(pairs.iter().map(|(p, t)| (b(p), ty(t))))
}

/// Cover sets are compared through their instances at a spread of schemes.
fn equiv_covers(rules: &RuleSet, got: &[TypeSubst], want: &[TypeSubst], schemes: &[Scheme]) -> Check {
    let dec = Decider::new(rules);
    for tau in schemes {
        let g = Type::or_all(got.iter().map(|k| k.apply(tau)));
        let w = Type::or_all(want.iter().map(|k| k.apply(tau)));
        ensure(lib(dec.equivalent(&g, &w))?, || format!("at {tau}: got {g}, expected {w}"))?;
    }
    Ok(())
}

fn pair_schemes() -> Vec<Scheme> {
    vec![
        Scheme::Param(b("B")),
        Scheme::Param(b("C")),
        list_b(),
        Scheme::Con(b("tree"), vec![b("C")]),
        Scheme::Con(b("pair"), vec![b("B"), b("C")]),
        Scheme::Con(b("pair"), vec![b("C"), b("B")]),
    ]
}

/// `K1` and `K2` over the parameters `B` and `C`.
fn k1() -> Vec<TypeSubst> {
    vec![tsub(&[("B", "tree(nat)"), ("C", "nat")]), tsub(&[("B", "list(nat)"), ("C", "nat")])]
}

fn k2() -> Vec<TypeSubst> {
    vec![tsub(&[("B", "list(even)"), ("C", "even")])]
}

pub fn covers() -> Vec<Golden> {
    vec![
        ("cover of a conjunction", || {
            let d = peano();
            let got = cover(&ty("list(nat) and tree(even)"), &list_b());
            equiv_covers(&d, &got, &[tsub(&[("B", "nat")])], &[list_b(), Scheme::Param(b("B"))])
        }),
        ("cover of list(0)", || {
            let got = cover(&ty("list(0)"), &list_b());
            ensure(got == vec![tsub(&[("B", "0")])], || format!("got {got:?}"))
        }),
        ("cover of an atomic type by a parameter", || {
            let got = cover(&ty("nat"), &Scheme::Param(b("B")));
            ensure(got == vec![tsub(&[("B", "nat")])], || format!("got {got:?}"))
        }),
        ("cover with mismatched constructors", || {
            let got = cover(&ty("tree(0)"), &list_b());
            ensure(got == vec![TypeSubst::Top], || format!("got {got:?}"))
        }),
        ("cover of 1 and 0", || {
            ensure(cover(&Type::One, &list_b()) == vec![TypeSubst::Top], || "cover(1)".into())?;
            ensure(cover(&Type::Zero, &list_b()) == vec![TypeSubst::Bottom], || "cover(0)".into())
        }),
        ("join of two cover sets", || {
            let d = peano_pairs();
            let got = coverset_join(&k1(), &k2());
            let want = vec![tsub(&[("B", "tree(nat) or list(even)"), ("C", "nat")]), tsub(&[("B", "list(nat)"), ("C", "nat")])];
            equiv_covers(&d, &got, &want, &pair_schemes())
        }),
        ("meet of two cover sets", || {
            let d = peano_pairs();
            let got = coverset_meet(&k1(), &k2());
            equiv_covers(&d, &got, &[tsub(&[("B", "list(even)"), ("C", "even")])], &pair_schemes())
        }),
        ("join is not a homomorphism", || {
            let d = peano();
            let k = tsub(&[("B", "nat")]).join(&tsub(&[("B", "list(nat)")]));
            let t = Term::list(vec![Term::Int(0), Term::list(vec![Term::Int(0)], None)], None);
            let joined = k.apply(&list_b());
            let separate = Type::or_raw(ty("list(nat)"), ty("list(list(nat))"));
            ensure(lib(d.member(&t, &joined))?, || format!("{t} not in {joined}"))?;
            ensure(!lib(d.member(&t, &separate))?, || format!("{t} in {separate}"))
        }),
    ]
}

fn ex_mu(x: &str, y: &str) -> VarTyping {
    typing(&[("x", x), ("y", y)])
}

pub fn decision() -> Vec<Golden> {
    vec![
        ("split lists are equivalent to their union", || {
            let d = peano();
            let dec = Decider::new(&d);
            let s1 = VtSet::from_typings([ex_mu("list(even)", "list(nat)"), ex_mu("list(odd)", "list(nat)")]);
            let s2 = VtSet::singleton(ex_mu("list(even) or list(odd)", "list(nat)"));
            ensure(lib(dec.vtset_leq(&s1, &s2))?, || "S1 <= S2".into())?;
            ensure(lib(dec.vtset_leq(&s2, &s1))?, || "S2 <= S1".into())
        }),
        ("redundant typings are removed", || {
            let d = peano();
            let dec = Decider::new(&d);
            let m3 = ex_mu("list(nat)", "list(nat)");
            let s = VtSet::from_typings([ex_mu("list(even)", "list(nat)"), ex_mu("list(odd)", "list(nat)"), m3.clone()]);
            let r = dec.remove_redundant(&s);
            ensure(r == VtSet::singleton(m3), || format!("got {r}"))
        }),
        ("nat and list(1) is empty", || {
            let d = peano();
            let dec = Decider::new(&d);
            ensure(lib(dec.is_empty(&ty("nat and list(1)")))?, || "nonempty".into())
        }),
        ("a type minus itself is empty", || {
            let d = peano();
            let dec = Decider::new(&d);
            ensure(lib(dec.etype(&ExtType::diff(ty("list(nat)"), ty("list(nat)"))))?, || "nonempty".into())
        }),
        ("the complement of list(1) is inhabited", || {
            let d = peano();
            let dec = Decider::new(&d);
            let e = ExtType::not(ExtType::Base(ty("list(1)")));
            ensure(!lib(dec.etype(&e))?, || "empty".into())?;
            let w = enumerate_witness(&e, &d, 3);
            ensure(w.is_some(), || "no witness".into())
        }),
        ("split lists are strictly smaller than list(nat)", || {
            let d = peano();
            let dec = Decider::new(&d);
            let split = ty("list(even) or list(odd)");
            ensure(lib(dec.includes(&ty("list(nat)"), &split))?, || "not included".into())?;
            ensure(!lib(dec.includes(&split, &ty("list(nat)")))?, || "included back".into())?;
            let t = Term::list(vec![Term::Int(0), Term::app("s", vec![Term::Int(0)])], None);
            ensure(lib(d.member(&t, &ty("list(nat)")))? && !lib(d.member(&t, &split))?, || format!("{t}"))
        }),
        ("list(even) is within list(nat)", || {
            let d = peano();
            let dec = Decider::new(&d);
            ensure(lib(dec.includes(&ty("list(nat)"), &ty("list(even)")))?, || "not included".into())?;
            ensure(!lib(dec.vtset_leq(&vtset(&[&[("x", "list(nat)")]]), &vtset(&[&[("x", "list(even)")]])))?, || "leq".into())
        }),
        ("complement pushed into positions", || {
            let d = peano();
            let dec = Decider::new(&d);
            let e = SeqExpr::not(SeqExpr::seq(vec![ty("list(even) or list(odd)"), ty("list(nat)")]));
            let pushed = e.push_complement();
            let want = "(<~(list(even) or list(odd)), 1> or <1, ~list(nat)>)";
            ensure(pushed.to_string() == want, || format!("got {pushed}"))?;
            let inside = SeqExpr::seq(vec![ty("list(even)"), ty("list(nat)")]);
            ensure(lib(dec.etype_seq(&SeqExpr::and(inside, pushed)))?, || "pushed form meets its own complement".into())
        }),
        ("repeated checks hit the table", || {
            let d = peano();
            let dec = Decider::new(&d);
            let e = ExtType::Base(ty("nat and list(1)"));
            let first = lib(dec.etype(&e))?;
            let misses = dec.cache().misses;
            let second = lib(dec.etype(&e))?;
            let c = dec.cache();
            ensure(first == second && c.misses == misses && c.hits >= 1, || format!("{c:?}"))
        }),
    ]
}
