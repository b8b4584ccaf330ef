//! Definitional oracles and random instance generators for differential
//! testing.
//!
//! Everything here recomputes semantics straight from the definitions,
//! independently of the solver paths: set-based predicates instead of
//! bitmasks, reachability closure instead of Tarjan, a membership test
//! instead of the constructive SCC-recursive enumeration, and grounded as
//! the least complete extension instead of the characteristic-function
//! fixpoint.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::af::{canonical_sort, ArgId, ArgumentationFramework, Extension, Semantics};
use crate::lp::{Atom, AtomSet, Program, Rule};
use crate::scc::{BaseFunction, RestrictionMode};
use crate::{repr, transfer};

fn all_subsets(args: &BTreeSet<ArgId>) -> Vec<Extension> {
    let items: Vec<ArgId> = args.iter().cloned().collect();
    let mut out = vec![Extension::new()];
    for item in items {
        let mut extended: Vec<Extension> = out
            .iter()
            .map(|s| {
                let mut t = s.clone();
                t.insert(item.clone());
                t
            })
            .collect();
        out.append(&mut extended);
    }
    out
}

fn cf(af: &ArgumentationFramework, s: &Extension) -> bool {
    !af.attacks()
        .iter()
        .any(|(a, b)| s.contains(a) && s.contains(b))
}

fn attacks_arg(af: &ArgumentationFramework, s: &Extension, target: &ArgId) -> bool {
    af.attacks()
        .iter()
        .any(|(a, b)| s.contains(a) && b == target)
}

fn acceptable(af: &ArgumentationFramework, s: &Extension, a: &ArgId) -> bool {
    af.attacks()
        .iter()
        .filter(|(_, t)| t == a)
        .all(|(b, _)| attacks_arg(af, s, b))
}

fn admissible(af: &ArgumentationFramework, s: &Extension) -> bool {
    cf(af, s) && s.iter().all(|a| acceptable(af, s, a))
}

fn stable(af: &ArgumentationFramework, s: &Extension) -> bool {
    cf(af, s)
        && af
            .args()
            .iter()
            .filter(|a| !s.contains(*a))
            .all(|a| attacks_arg(af, s, a))
}

fn complete(af: &ArgumentationFramework, s: &Extension) -> bool {
    admissible(af, s)
        && af
            .args()
            .iter()
            .filter(|a| acceptable(af, s, a))
            .all(|a| s.contains(a))
}

fn keep_maximal(sets: Vec<Extension>) -> Vec<Extension> {
    sets.iter()
        .filter(|s| !sets.iter().any(|other| other != *s && s.is_subset(other)))
        .cloned()
        .collect()
}

/// Path-equivalence classes computed from the reachability closure.
fn naive_components(af: &ArgumentationFramework) -> Vec<BTreeSet<ArgId>> {
    let args: Vec<ArgId> = af.args().iter().cloned().collect();
    let index: BTreeMap<&ArgId, usize> = args.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let n = args.len();
    let mut reach = vec![vec![false; n]; n];
    for (a, b) in af.attacks() {
        reach[index[a]][index[b]] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if reach[i][k] && reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    let mut assigned = vec![false; n];
    let mut components = Vec::new();
    for i in 0..n {
        if assigned[i] {
            continue;
        }
        let mut comp = BTreeSet::new();
        for j in 0..n {
            if i == j || (reach[i][j] && reach[j][i]) {
                comp.insert(args[j].clone());
                assigned[j] = true;
            }
        }
        components.push(comp);
    }
    components
}

fn restrict(af: &ArgumentationFramework, s: &BTreeSet<ArgId>) -> ArgumentationFramework {
    ArgumentationFramework::new(
        af.args().intersection(s).cloned(),
        af.attacks()
            .iter()
            .filter(|(a, b)| s.contains(a) && s.contains(b))
            .cloned(),
    )
    .unwrap()
}

fn base_member(
    af: &ArgumentationFramework,
    c: &BTreeSet<ArgId>,
    e: &Extension,
    base: BaseFunction,
) -> bool {
    match base {
        BaseFunction::MaximalConflictFree => {
            cf(af, e)
                && af.args().iter().all(|a| {
                    e.contains(a) || {
                        let mut bigger = e.clone();
                        bigger.insert(a.clone());
                        !cf(af, &bigger)
                    }
                })
        }
        BaseFunction::MaximalAdmissible => {
            let candidates: Vec<Extension> = all_subsets(c)
                .into_iter()
                .filter(|s| admissible(af, s))
                .collect();
            candidates.contains(e)
                && !candidates.iter().any(|other| other != e && e.is_subset(other))
        }
    }
}

/// Membership test for the SCC-recursive schema, quantifying over all
/// components at once (no topological processing order).
pub fn gf_member(
    af: &ArgumentationFramework,
    c: &BTreeSet<ArgId>,
    e: &Extension,
    base: BaseFunction,
    mode: RestrictionMode,
) -> bool {
    if !e.is_subset(af.args()) {
        return false;
    }
    let components = naive_components(af);
    if components.len() <= 1 {
        return base_member(af, c, e, base);
    }
    components.iter().all(|component| {
        let mut defeated = BTreeSet::new();
        let mut undefeated = BTreeSet::new();
        let mut provisional = BTreeSet::new();
        for a in component {
            let outside: Vec<&ArgId> = af
                .attackers_of(a)
                .filter(|b| !component.contains(*b))
                .collect();
            if outside.iter().any(|b| e.contains(*b)) {
                defeated.insert(a.clone());
            } else if outside.iter().all(|b| attacks_arg(af, e, b)) {
                undefeated.insert(a.clone());
            } else {
                provisional.insert(a.clone());
            }
        }
        let survivors: BTreeSet<ArgId> = match mode {
            RestrictionMode::UndefeatedOnly => undefeated.clone(),
            RestrictionMode::UndefeatedOrProvisional => {
                undefeated.union(&provisional).cloned().collect()
            }
        };
        let local: Extension = e.intersection(component).cloned().collect();
        let sub_c: BTreeSet<ArgId> = undefeated.intersection(c).cloned().collect();
        gf_member(&restrict(af, &survivors), &sub_c, &local, base, mode)
    })
}

/// Extensions of any of the eight semantics, straight from the definitions.
pub fn oracle_extensions(af: &ArgumentationFramework, sem: Semantics) -> Vec<Extension> {
    let subsets = all_subsets(af.args());
    let mut out = match sem {
        Semantics::Grounded => {
            let completes: Vec<Extension> = subsets
                .into_iter()
                .filter(|s| complete(af, s))
                .collect();
            let least = completes
                .iter()
                .find(|s| completes.iter().all(|other| s.is_subset(other)))
                .expect("grounded extension exists")
                .clone();
            vec![least]
        }
        Semantics::Preferred => keep_maximal(
            subsets
                .into_iter()
                .filter(|s| admissible(af, s))
                .collect(),
        ),
        Semantics::Stable => subsets.into_iter().filter(|s| stable(af, s)).collect(),
        Semantics::Complete => subsets.into_iter().filter(|s| complete(af, s)).collect(),
        Semantics::Cf1 => subsets
            .into_iter()
            .filter(|s| {
                gf_member(
                    af,
                    af.args(),
                    s,
                    BaseFunction::MaximalConflictFree,
                    RestrictionMode::UndefeatedOnly,
                )
            })
            .collect(),
        Semantics::Cf2 => subsets
            .into_iter()
            .filter(|s| {
                gf_member(
                    af,
                    af.args(),
                    s,
                    BaseFunction::MaximalConflictFree,
                    RestrictionMode::UndefeatedOrProvisional,
                )
            })
            .collect(),
        Semantics::Ad1 => subsets
            .into_iter()
            .filter(|s| {
                gf_member(
                    af,
                    af.args(),
                    s,
                    BaseFunction::MaximalAdmissible,
                    RestrictionMode::UndefeatedOnly,
                )
            })
            .collect(),
        Semantics::Ad2 => subsets
            .into_iter()
            .filter(|s| {
                gf_member(
                    af,
                    af.args(),
                    s,
                    BaseFunction::MaximalAdmissible,
                    RestrictionMode::UndefeatedOrProvisional,
                )
            })
            .collect(),
    };
    canonical_sort(&mut out);
    out
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn arg_labels(n: usize) -> Vec<ArgId> {
    (1..=n)
        .map(|i| ArgId::new(format!("v{i}")).unwrap())
        .collect()
}

/// Random framework with up to `max_args` arguments, attack density ~1/3.
pub fn random_af(rng: &mut ChaCha8Rng, max_args: usize) -> ArgumentationFramework {
    let n = rng.gen_range(0..=max_args);
    let labels = arg_labels(n);
    let mut attacks = Vec::new();
    for a in &labels {
        for b in &labels {
            if rng.gen_ratio(1, 3) {
                attacks.push((a.clone(), b.clone()));
            }
        }
    }
    ArgumentationFramework::new(labels, attacks).unwrap()
}

/// Random acyclic framework: attacks only from lower to higher index.
pub fn random_acyclic_af(rng: &mut ChaCha8Rng, max_args: usize) -> ArgumentationFramework {
    let n = rng.gen_range(0..=max_args);
    let labels = arg_labels(n);
    let mut attacks = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_ratio(1, 3) {
                attacks.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    ArgumentationFramework::new(labels, attacks).unwrap()
}

/// Random framework whose attack graph is one strongly connected
/// component: a Hamiltonian attack cycle plus random extra attacks.
pub fn random_single_scc_af(rng: &mut ChaCha8Rng, max_args: usize) -> ArgumentationFramework {
    let n = rng.gen_range(1..=max_args.max(1));
    let labels = arg_labels(n);
    let mut attacks = Vec::new();
    for i in 0..n {
        attacks.push((labels[i].clone(), labels[(i + 1) % n].clone()));
    }
    for a in &labels {
        for b in &labels {
            if rng.gen_ratio(1, 4) {
                attacks.push((a.clone(), b.clone()));
            }
        }
    }
    ArgumentationFramework::new(labels, attacks).unwrap()
}

/// Random program over at most `max_atoms` atoms and `max_rules` rules.
pub fn random_program(rng: &mut ChaCha8Rng, max_rules: usize, max_atoms: usize) -> Program {
    let atoms: Vec<Atom> = (1..=max_atoms.max(1))
        .map(|i| Atom::new(format!("p{i}")).unwrap())
        .collect();
    let n_rules = rng.gen_range(0..=max_rules);
    let mut rules = Vec::new();
    for _ in 0..n_rules {
        let head = atoms[rng.gen_range(0..atoms.len())].clone();
        let mut body_plus = AtomSet::new();
        let mut body_minus = AtomSet::new();
        for atom in &atoms {
            if rng.gen_ratio(1, 5) {
                body_plus.insert(atom.clone());
            }
            if rng.gen_ratio(1, 5) {
                body_minus.insert(atom.clone());
            }
        }
        rules.push(Rule {
            head,
            body_plus,
            body_minus,
        });
    }
    Program::new(rules)
}

#[derive(Debug, Clone, Copy, Default, Serialize, PartialEq, Eq)]
pub struct CheckCount {
    pub passed: usize,
    pub failed: usize,
}

impl CheckCount {
    fn record(&mut self, ok: bool) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }
}

/// Differential-testing report; reproducible from the seed.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct OracleReport {
    pub seed: u64,
    pub count: usize,
    pub max_size: usize,
    /// Solver vs definitional oracle, all eight semantics per framework.
    pub semantics_checks: CheckCount,
    /// Extension-set equality through the representing program, all eight
    /// semantics per framework.
    pub roundtrip_checks: CheckCount,
    /// Derived atoms vs hypothesis-based derivation over enabled rules.
    pub proposition_checks: CheckCount,
    /// Recorded only: how often stable extensions of the framework over a
    /// program coincide with its stable models.
    pub stable_agreement: CheckCount,
    pub failures: Vec<String>,
    pub all_passed: bool,
}

pub fn oracle_check(seed: u64, count: usize, max_size: usize) -> OracleReport {
    let mut rng = seeded_rng(seed);
    let mut report = OracleReport {
        seed,
        count,
        max_size,
        semantics_checks: CheckCount::default(),
        roundtrip_checks: CheckCount::default(),
        proposition_checks: CheckCount::default(),
        stable_agreement: CheckCount::default(),
        failures: Vec::new(),
        all_passed: true,
    };
    for i in 0..count {
        let af = random_af(&mut rng, max_size);
        for sem in Semantics::ALL {
            let got = af.extensions(sem);
            let want = oracle_extensions(&af, sem);
            report.semantics_checks.record(got == want);
            if got != want {
                report
                    .failures
                    .push(format!("instance {i}: {sem} solver/oracle mismatch on {af:?}"));
            }
            match repr::roundtrip_check(&af, sem) {
                Ok(rt) => {
                    report.roundtrip_checks.record(rt.equal);
                    if !rt.equal {
                        report
                            .failures
                            .push(format!("instance {i}: {sem} roundtrip mismatch on {af:?}"));
                    }
                }
                Err(e) => {
                    report.roundtrip_checks.record(false);
                    report.failures.push(format!("instance {i}: {e}"));
                }
            }
        }

        let program = random_program(&mut rng, max_size, max_size.min(6));
        for outcome in transfer::derived_atoms(&program, Semantics::Preferred) {
            if !outcome.consistent {
                continue;
            }
            let sub = transfer::subprogram(&program, &outcome.rule_in);
            let delta = transfer::delta_for(&program, &outcome.rule_in);
            let ok = outcome.in_as == sub.derive(&delta);
            report.proposition_checks.record(ok);
            if !ok {
                report
                    .failures
                    .push(format!("instance {i}: derivation mismatch on {program:?}"));
            }
        }

        let (program_af, map) = transfer::build_af_over(&program);
        let stable_derived: BTreeSet<AtomSet> = program_af
            .stable()
            .iter()
            .map(|e| transfer::in_as(&program, &map.extension_to_rules(e)))
            .collect();
        let models = program.stable_models();
        report.stable_agreement.record(stable_derived == models);
    }
    report.all_passed = report.semantics_checks.failed == 0
        && report.roundtrip_checks.failed == 0
        && report.proposition_checks.failed == 0;
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::af::fixtures::*;

    #[test]
    fn oracle_matches_solver_on_fixtures() {
        for framework in [three_cycle(), four_cycle(), mutual(), chain_af(), witness_af()] {
            for sem in Semantics::ALL {
                assert_eq!(
                    framework.extensions(sem),
                    oracle_extensions(&framework, sem),
                    "{sem} on {framework:?}"
                );
            }
        }
    }

    #[test]
    fn gf_membership_accepts_known_cf2_extensions() {
        let selfloop = af(&["r1", "r2"], &[("r1", "r1"), ("r1", "r2")]);
        assert!(gf_member(
            &selfloop,
            selfloop.args(),
            &ext(&["r2"]),
            BaseFunction::MaximalConflictFree,
            RestrictionMode::UndefeatedOrProvisional,
        ));
        assert!(!gf_member(
            &selfloop,
            selfloop.args(),
            &ext(&["r1"]),
            BaseFunction::MaximalConflictFree,
            RestrictionMode::UndefeatedOrProvisional,
        ));
    }

    #[test]
    fn generators_are_reproducible() {
        let a = random_af(&mut seeded_rng(7), 6);
        let b = random_af(&mut seeded_rng(7), 6);
        assert_eq!(a, b);
    }

    #[test]
    fn single_scc_generator_yields_one_component() {
        let mut rng = seeded_rng(3);
        for _ in 0..20 {
            let af = random_single_scc_af(&mut rng, 5);
            assert_eq!(naive_components(&af).len(), 1);
        }
    }

    #[test]
    fn empty_report_passes() {
        let report = oracle_check(1, 0, 6);
        assert!(report.all_passed);
        assert_eq!(report.semantics_checks, CheckCount::default());
    }

    #[test]
    fn small_sweep_passes() {
        let report = oracle_check(1, 15, 5);
        assert!(report.all_passed, "failures: {:?}", report.failures);
    }
}
