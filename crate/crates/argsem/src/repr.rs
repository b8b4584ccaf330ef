//! Representing argumentation frameworks as logic programs and back.
//!
//! `af_to_program` emits one rule per argument whose negative body lists
//! its attackers. `program_represents_af` recognizes exactly the programs
//! of that shape and recovers the unique framework they represent.
//! `canonical_program` is the attack-per-rule variant with facts for
//! isolated arguments; it is serialized but not wired into the transfer
//! pipeline. `roundtrip_check` verifies that transferring a semantics
//! through the representing program reproduces the framework's own
//! extensions.

use std::collections::{BTreeMap, BTreeSet};

use crate::af::{ArgId, ArgumentationFramework, Extension, Semantics};
use crate::lp::{is_valid_atom_name, Atom, AtomSet, Program, Rule};
use crate::transfer;
use crate::{Error, Result};

fn label_atom(arg: &ArgId) -> Result<Atom> {
    Atom::new(arg.label()).map_err(|_| {
        Error::InvalidInput(format!(
            "argument label `{arg}` is not a valid atom name; sanitize labels first"
        ))
    })
}

/// One rule per argument: `a :- not b1, ..., not bk.` with the attackers
/// of `a` as negative body. Rules are ordered by argument label.
pub fn af_to_program(af: &ArgumentationFramework) -> Result<Program> {
    let mut rules = Vec::new();
    for a in af.args() {
        let head = label_atom(a)?;
        let mut body_minus = AtomSet::new();
        for b in af.attackers_of(a) {
            body_minus.insert(label_atom(b)?);
        }
        rules.push(Rule {
            head,
            body_plus: AtomSet::new(),
            body_minus,
        });
    }
    Ok(Program::new(rules))
}

/// Deterministic renaming of all argument labels to valid atom names.
/// Returns the renamed framework and the map from new to original labels.
pub fn sanitize_labels(
    af: &ArgumentationFramework,
) -> (ArgumentationFramework, BTreeMap<ArgId, ArgId>) {
    if af.args().iter().all(|a| is_valid_atom_name(a.label())) {
        let identity = af.args().iter().map(|a| (a.clone(), a.clone())).collect();
        return (af.clone(), identity);
    }
    let renamed: BTreeMap<ArgId, ArgId> = af
        .args()
        .iter()
        .enumerate()
        .map(|(i, a)| (a.clone(), ArgId::new(format!("x{}", i + 1)).unwrap()))
        .collect();
    let framework = ArgumentationFramework::new(
        renamed.values().cloned(),
        af.attacks()
            .iter()
            .map(|(a, b)| (renamed[a].clone(), renamed[b].clone())),
    )
    .expect("renaming preserves well-formedness");
    let recover = renamed.into_iter().map(|(orig, new)| (new, orig)).collect();
    (framework, recover)
}

/// Verdict on whether a program has the representation shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentationReport {
    pub valid: bool,
    pub framework: Option<ArgumentationFramework>,
    pub violations: Vec<String>,
}

/// A program represents a framework iff every rule has an empty positive
/// body and every atom of the language heads exactly one rule. The
/// recovered framework is unique: arguments are the heads, attacks run
/// from each negative-body atom to the head of its rule.
pub fn program_represents_af(p: &Program) -> RepresentationReport {
    let mut violations = Vec::new();
    for (id, r) in p.iter() {
        if !r.body_plus.is_empty() {
            violations.push(format!("rule {id}: non-empty positive body"));
        }
    }
    let mut head_count: BTreeMap<&Atom, usize> = BTreeMap::new();
    for r in p.rules() {
        *head_count.entry(&r.head).or_insert(0) += 1;
    }
    for atom in p.language() {
        match head_count.get(&atom).copied().unwrap_or(0) {
            0 => violations.push(format!("atom {atom}: heads no rule")),
            1 => {}
            n => violations.push(format!("atom {atom}: heads {n} rules")),
        }
    }
    if !violations.is_empty() {
        return RepresentationReport {
            valid: false,
            framework: None,
            violations,
        };
    }
    let args: Vec<ArgId> = p
        .rules()
        .iter()
        .map(|r| ArgId::new(r.head.name()).unwrap())
        .collect();
    let attacks: Vec<(ArgId, ArgId)> = p
        .rules()
        .iter()
        .flat_map(|r| {
            let head = ArgId::new(r.head.name()).unwrap();
            r.body_minus
                .iter()
                .map(move |b| (ArgId::new(b.name()).unwrap(), head.clone()))
        })
        .collect();
    RepresentationReport {
        valid: true,
        framework: Some(ArgumentationFramework::new(args, attacks).unwrap()),
        violations: Vec::new(),
    }
}

/// The canonical program: one rule `a :- not b.` per attack `(a,b)`, and a
/// fact `a.` for every argument that participates in no attack at all.
pub fn canonical_program(af: &ArgumentationFramework) -> Result<Program> {
    let mut rules = Vec::new();
    for (a, b) in af.attacks() {
        let mut body_minus = AtomSet::new();
        body_minus.insert(label_atom(b)?);
        rules.push(Rule {
            head: label_atom(a)?,
            body_plus: AtomSet::new(),
            body_minus,
        });
    }
    for a in af.args() {
        let isolated = !af
            .attacks()
            .iter()
            .any(|(x, y)| x == a || y == a);
        if isolated {
            rules.push(Rule::fact(label_atom(a)?));
        }
    }
    rules.sort_by(|r1, r2| {
        (r1.head.name(), r1.body_minus.iter().next().map(Atom::name))
            .cmp(&(r2.head.name(), r2.body_minus.iter().next().map(Atom::name)))
    });
    Ok(Program::new(rules))
}

/// Comparison of a framework's extensions with the extensions obtained by
/// transferring the semantics through the representing program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundtripReport {
    pub semantics: Semantics,
    pub equal: bool,
    pub af_extensions: Vec<Extension>,
    pub transferred: Vec<Extension>,
    /// Transfer outcomes that failed the consistency check (none expected).
    pub inconsistent_outcomes: usize,
    pub missing_in_transfer: Vec<Extension>,
    pub extra_in_transfer: Vec<Extension>,
}

fn atomset_to_extension(m: &AtomSet) -> Extension {
    m.iter().map(|a| ArgId::new(a.name()).unwrap()).collect()
}

/// Compute both extension collections and report whether they coincide.
pub fn roundtrip_check(af: &ArgumentationFramework, sem: Semantics) -> Result<RoundtripReport> {
    let program = af_to_program(af)?;
    let af_extensions = af.extensions(sem);
    let outcomes = transfer::derived_atoms(&program, sem);
    let inconsistent_outcomes = outcomes.iter().filter(|o| !o.consistent).count();
    let mut transferred: Vec<Extension> = outcomes
        .iter()
        .filter_map(|o| o.derived.as_ref().map(atomset_to_extension))
        .collect();
    crate::af::canonical_sort(&mut transferred);
    let af_set: BTreeSet<&Extension> = af_extensions.iter().collect();
    let tr_set: BTreeSet<&Extension> = transferred.iter().collect();
    let missing_in_transfer: Vec<Extension> =
        af_set.difference(&tr_set).map(|e| (*e).clone()).collect();
    let extra_in_transfer: Vec<Extension> =
        tr_set.difference(&af_set).map(|e| (*e).clone()).collect();
    Ok(RoundtripReport {
        semantics: sem,
        equal: inconsistent_outcomes == 0
            && missing_in_transfer.is_empty()
            && extra_in_transfer.is_empty(),
        af_extensions,
        transferred,
        inconsistent_outcomes,
        missing_in_transfer,
        extra_in_transfer,
    })
}
