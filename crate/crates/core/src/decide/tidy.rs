//! Equivalence-preserving size reduction of types.

use crate::decide::Decider;
use crate::types::Type;

impl Decider<'_> {
    /// An equivalent canonical type without conjuncts implied by other
    /// conjuncts, without empty disjuncts and without disjuncts included in
    /// other disjuncts. Constructor arguments are reduced the same way.
    pub fn tidy(&self, t: &Type) -> Type {
        if matches!(t, Type::Zero | Type::One | Type::Prim(_)) {
            return t.clone();
        }
        let mut conjs: Vec<Type> = Vec::new();
        'outer: for conj in t.canonical().disjuncts() {
            let mut atoms = Vec::new();
            for a in conj {
                match a {
                    Type::One => {}
                    Type::Zero => continue 'outer,
                    Type::Con(c, args) => atoms.push(Type::Con(c, args.iter().map(|x| self.tidy(x)).collect())),
                    other => atoms.push(other),
                }
            }
            let kept = self.minimal(&atoms, |sup, sub| self.includes_unchecked(sup, sub));
            let c = Type::and_all(kept);
            if !self.is_empty_unchecked(&c) {
                conjs.push(c);
            }
        }
        // Keep the disjuncts not included in another kept one.
        let kept = self.minimal(&conjs, |sub, sup| self.includes_unchecked(sup, sub));
        Type::or_all(kept).canonical()
    }

    /// Drops item `i` when some other surviving item `j` has
    /// `redundant(items[i], items[j])`.
    fn minimal(&self, items: &[Type], redundant: impl Fn(&Type, &Type) -> bool) -> Vec<Type> {
        let mut keep = vec![true; items.len()];
        for i in 0..items.len() {
            for j in 0..items.len() {
                if i != j && keep[j] && redundant(&items[i], &items[j]) {
                    keep[i] = false;
                    break;
                }
            }
        }
        items.iter().zip(keep).filter(|(_, k)| *k).map(|(t, _)| t.clone()).collect()
    }
}
