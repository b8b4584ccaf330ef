//! Transfer of argumentation semantics to logic programs.
//!
//! A framework is built over the rules of a program: one argument per
//! rule, and a rule with empty positive body attacks every rule that
//! negates its head. Extensions of that framework are sets of enabled
//! rules; the least atom set closed under the enabled rules is checked
//! for consistency (no derived atom may occur in a negative body of an
//! enabled rule) before it counts as derived.

use std::collections::{BTreeMap, BTreeSet};

use crate::af::{ArgId, ArgumentationFramework, Extension, Semantics};
use crate::lp::{AtomSet, Hypothesis, Program, RuleId};

/// Bijection between program rules and framework arguments (`r<k>`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleArgMap {
    to_arg: BTreeMap<RuleId, ArgId>,
    to_rule: BTreeMap<ArgId, RuleId>,
}

impl RuleArgMap {
    pub fn arg_for(&self, id: RuleId) -> &ArgId {
        &self.to_arg[&id]
    }

    pub fn rule_for(&self, arg: &ArgId) -> Option<RuleId> {
        self.to_rule.get(arg).copied()
    }

    /// Ψ⁻¹ applied pointwise to an extension.
    pub fn extension_to_rules(&self, e: &Extension) -> BTreeSet<RuleId> {
        e.iter()
            .map(|a| self.to_rule[a])
            .collect()
    }
}

/// The argumentation framework over a program: arguments are rules,
/// attacks go from positive-body-free rules to rules negating their head.
pub fn build_af_over(p: &Program) -> (ArgumentationFramework, RuleArgMap) {
    let mut to_arg = BTreeMap::new();
    let mut to_rule = BTreeMap::new();
    for id in p.rule_ids() {
        let arg = ArgId::new(id.to_string()).expect("rule label is non-empty");
        to_arg.insert(id, arg.clone());
        to_rule.insert(arg, id);
    }
    let mut attacks = Vec::new();
    for (id1, r1) in p.iter() {
        if !r1.body_plus.is_empty() {
            continue;
        }
        for (id2, r2) in p.iter() {
            if r2.body_minus.contains(&r1.head) {
                attacks.push((to_arg[&id1].clone(), to_arg[&id2].clone()));
            }
        }
    }
    let af = ArgumentationFramework::new(to_arg.values().cloned(), attacks)
        .expect("attack endpoints are rule arguments");
    (af, RuleArgMap { to_arg, to_rule })
}

/// Rule sets enabled in `p` by the semantics: extensions of the framework
/// over `p`, mapped back through Ψ⁻¹.
pub fn enabled_rule_sets(p: &Program, sem: Semantics) -> Vec<BTreeSet<RuleId>> {
    let (af, map) = build_af_over(p);
    af.extensions(sem)
        .iter()
        .map(|e| map.extension_to_rules(e))
        .collect()
}

/// Least set of atoms closed under the enabled rules: a head joins the set
/// once the positive body is contained in it. Negative bodies are ignored.
pub fn in_as(p: &Program, rule_in: &BTreeSet<RuleId>) -> AtomSet {
    let mut atoms = AtomSet::new();
    loop {
        let mut changed = false;
        for id in rule_in {
            let r = p.rule(*id).expect("rule id within program");
            if !atoms.contains(&r.head) && r.body_plus.iter().all(|a| atoms.contains(a)) {
                atoms.insert(r.head.clone());
                changed = true;
            }
        }
        if !changed {
            return atoms;
        }
    }
}

/// No atom of `m` occurs in the negative body of any rule in `r`.
pub fn is_consistent_with(m: &AtomSet, r: &BTreeSet<RuleId>, p: &Program) -> bool {
    r.iter().all(|id| {
        p.rule(*id)
            .expect("rule id within program")
            .body_minus
            .is_disjoint(m)
    })
}

/// Per-extension transfer record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferOutcome {
    pub rule_in: BTreeSet<RuleId>,
    pub in_as: AtomSet,
    pub consistent: bool,
    /// Present iff consistent; equals `in_as` when present.
    pub derived: Option<AtomSet>,
}

/// One outcome per enabled rule set, in canonical extension order.
pub fn derived_atoms(p: &Program, sem: Semantics) -> Vec<TransferOutcome> {
    enabled_rule_sets(p, sem)
        .into_iter()
        .map(|rule_in| {
            let atoms = in_as(p, &rule_in);
            let consistent = is_consistent_with(&atoms, &rule_in, p);
            TransferOutcome {
                derived: consistent.then(|| atoms.clone()),
                rule_in,
                in_as: atoms,
                consistent,
            }
        })
        .collect()
}

/// Repair variant: for each enabled rule set, take the subset-maximal
/// consistent rule subsets, compute their closed atom sets, and keep the
/// subset-maximal atom sets overall.
pub fn derived_atoms_maximal(p: &Program, sem: Semantics) -> Vec<AtomSet> {
    let mut collected: BTreeSet<AtomSet> = BTreeSet::new();
    for rule_in in enabled_rule_sets(p, sem) {
        let ids: Vec<RuleId> = rule_in.iter().copied().collect();
        let mut consistent_subsets: Vec<BTreeSet<RuleId>> = Vec::new();
        for mask in 0u64..(1u64 << ids.len()) {
            let subset: BTreeSet<RuleId> = ids
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, id)| *id)
                .collect();
            if is_consistent_with(&in_as(p, &subset), &subset, p) {
                consistent_subsets.push(subset);
            }
        }
        for subset in &consistent_subsets {
            let maximal = !consistent_subsets
                .iter()
                .any(|other| other != subset && subset.is_subset(other));
            if maximal {
                collected.insert(in_as(p, subset));
            }
        }
    }
    let mut maximal_sets: Vec<AtomSet> = collected
        .iter()
        .filter(|m| !collected.iter().any(|other| other != *m && m.is_subset(other)))
        .cloned()
        .collect();
    maximal_sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter())));
    maximal_sets
}

/// Hypothesis collecting every negatively occurring atom of the rule set.
pub fn delta_for(p: &Program, r: &BTreeSet<RuleId>) -> Hypothesis {
    r.iter()
        .flat_map(|id| {
            p.rule(*id)
                .expect("rule id within program")
                .body_minus
                .iter()
                .cloned()
        })
        .collect()
}

/// The rules of `r` as a program of their own (for derivation checks).
pub fn subprogram(p: &Program, r: &BTreeSet<RuleId>) -> Program {
    Program::new(r.iter().map(|id| p.rule(*id).expect("rule id within program").clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::fixtures::*;
    use crate::lp::parse_program;

    fn rids(ids: &[usize]) -> BTreeSet<RuleId> {
        ids.iter().map(|&i| RuleId(i)).collect()
    }

    #[test]
    fn af_over_fact_and_negation() {
        let p = parse_program("a.\nb :- not a.\n").unwrap();
        let (af, map) = build_af_over(&p);
        assert_eq!(af.attacks().len(), 1);
        assert!(af.has_attack(map.arg_for(RuleId(1)), map.arg_for(RuleId(2))));
    }

    #[test]
    fn af_over_even_cycle() {
        let p = parse_program("a :- not b.\nb :- not a.\n").unwrap();
        let (af, map) = build_af_over(&p);
        assert!(af.has_attack(map.arg_for(RuleId(1)), map.arg_for(RuleId(2))));
        assert!(af.has_attack(map.arg_for(RuleId(2)), map.arg_for(RuleId(1))));
        assert_eq!(af.attacks().len(), 2);
    }

    #[test]
    fn af_over_guarded_program_has_no_attacks() {
        // The only candidate attacker with an empty positive body heads an
        // atom nobody negates.
        let (af, _) = build_af_over(&guarded());
        assert!(af.attacks().is_empty());
    }

    #[test]
    fn enabled_rules_of_chain() {
        assert_eq!(
            enabled_rule_sets(&chain(), Semantics::Preferred),
            vec![rids(&[1, 3])]
        );
    }

    #[test]
    fn enabled_rules_of_guarded_program() {
        assert_eq!(
            enabled_rule_sets(&guarded(), Semantics::Preferred),
            vec![rids(&[1, 2, 3])]
        );
    }

    #[test]
    fn no_extensions_means_no_enabled_sets() {
        assert!(enabled_rule_sets(&odd_cycle(), Semantics::Stable).is_empty());
    }

    #[test]
    fn in_as_examples() {
        assert_eq!(in_as(&chain(), &rids(&[1, 3])), atoms(&["a", "c"]));
        assert_eq!(in_as(&guarded(), &rids(&[1, 2, 3])), atoms(&["a", "b", "c"]));
        assert_eq!(in_as(&chain(), &rids(&[])), AtomSet::new());
    }

    #[test]
    fn consistency_examples() {
        assert!(is_consistent_with(&atoms(&["a", "c"]), &rids(&[1, 3]), &chain()));
        assert!(!is_consistent_with(
            &atoms(&["a", "b", "c"]),
            &rids(&[1, 2, 3]),
            &guarded()
        ));
        assert!(is_consistent_with(&AtomSet::new(), &rids(&[1, 2, 3]), &guarded()));
    }

    #[test]
    fn derived_atoms_chain() {
        let outcomes = derived_atoms(&chain(), Semantics::Preferred);
        assert_eq!(outcomes.len(), 1);
        assert_eq!(outcomes[0].derived, Some(atoms(&["a", "c"])));
        assert!(outcomes[0].consistent);
    }

    #[test]
    fn derived_atoms_guarded_program_is_inconsistent() {
        let outcomes = derived_atoms(&guarded(), Semantics::Preferred);
        assert_eq!(outcomes.len(), 1);
        assert!(!outcomes[0].consistent);
        assert_eq!(outcomes[0].derived, None);
        assert_eq!(outcomes[0].in_as, atoms(&["a", "b", "c"]));
    }

    #[test]
    fn derived_atoms_with_self_negating_rule() {
        let outcomes = derived_atoms(&chain_with_odd_loop(), Semantics::Preferred);
        assert_eq!(outcomes.len(), 1);
        assert_eq!(outcomes[0].derived, Some(atoms(&["a", "c"])));
    }

    #[test]
    fn repair_splits_guarded_program() {
        assert_eq!(
            derived_atoms_maximal(&guarded(), Semantics::Preferred),
            vec![atoms(&["a", "c"]), atoms(&["b", "c"])]
        );
    }

    #[test]
    fn repair_is_identity_on_consistent_outcomes() {
        assert_eq!(
            derived_atoms_maximal(&chain(), Semantics::Preferred),
            vec![atoms(&["a", "c"])]
        );
    }

    #[test]
    fn repair_of_empty_enabled_sets() {
        assert!(derived_atoms_maximal(&odd_cycle(), Semantics::Stable).is_empty());
    }

    #[test]
    fn delta_for_examples() {
        assert_eq!(delta_for(&chain(), &rids(&[1, 3])), hyp(&["b"]));
        let positive = parse_program("a.\nb :- a.\n").unwrap();
        assert_eq!(delta_for(&positive, &rids(&[1, 2])), Hypothesis::empty());
        assert_eq!(delta_for(&guarded(), &rids(&[1, 2, 3])), hyp(&["b", "d"]));
    }

    #[test]
    fn proposition_holds_on_chain() {
        // Derived atoms equal the hypothesis-based derivation over the
        // enabled rules.
        let p = chain();
        for outcome in derived_atoms(&p, Semantics::Preferred) {
            let sub = subprogram(&p, &outcome.rule_in);
            let delta = delta_for(&p, &outcome.rule_in);
            assert_eq!(outcome.in_as, sub.derive(&delta));
        }
    }

    #[test]
    fn in_as_is_monotone_in_rule_in() {
        let p = guarded();
        let smaller = rids(&[2]);
        let larger = rids(&[2, 3]);
        assert!(in_as(&p, &smaller).is_subset(&in_as(&p, &larger)));
    }

    #[test]
    fn psi_roundtrip_on_extensions() {
        let p = chain();
        let (af, map) = build_af_over(&p);
        for e in af.extensions(Semantics::Complete) {
            let rules = map.extension_to_rules(&e);
            let back: Extension = rules.iter().map(|id| map.arg_for(*id).clone()).collect();
            assert_eq!(back, e);
        }
    }

    #[test]
    fn conflicting_pair_erratum_in_as_follows_definition() {
        // The least closed set over {r1,r2,r3} of the p/q-guarded pair is
        // {a,p}: q is underivable, so b never joins. The set is still
        // inconsistent (a occurs in body⁻(r2)), so nothing is derived.
        let p = conflicting_pair();
        let all = rids(&[1, 2, 3]);
        assert_eq!(in_as(&p, &all), atoms(&["a", "p"]));
        assert!(!is_consistent_with(&in_as(&p, &all), &all, &p));
        let outcomes = derived_atoms(&p, Semantics::Preferred);
        assert_eq!(outcomes.len(), 1);
        assert_eq!(outcomes[0].in_as, atoms(&["a", "p"]));
        assert!(!outcomes[0].consistent);
    }

    #[test]
    fn conflicting_pair_erratum_stable_extension_exists() {
        // With an empty attack relation the full rule set is vacuously a
        // stable extension, even though the program transfer derives
        // nothing from it.
        let (af, _) = build_af_over(&conflicting_pair());
        assert!(af.attacks().is_empty());
        assert_eq!(af.stable().len(), 1);
        assert_eq!(af.stable()[0].len(), 3);
    }
}
