//! Hypotheses as arguments: the framework whose arguments are the
//! self-consistent hypotheses of a program.
//!
//! Construction is a sweep over all 2^n hypotheses of the language, so it
//! is capped; the intended use case is desk-scale. Attacks follow the
//! derivation relation: Δ attacks Δ′ when Δ derives an atom Δ′ assumes
//! false.

use std::collections::BTreeMap;

use crate::af::{ArgId, ArgumentationFramework, Semantics};
use crate::lp::{hypothesis_attacks, is_self_consistent, Atom, AtomSet, Hypothesis, Program};
use crate::{Error, Result};

pub const DEFAULT_HYPOTHESIS_CAP: usize = 12;

/// Framework over self-consistent hypotheses, with the label map back to
/// the hypotheses themselves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisFramework {
    pub framework: ArgumentationFramework,
    arg_to_hypothesis: BTreeMap<ArgId, Hypothesis>,
}

impl HypothesisFramework {
    pub fn hypothesis_for(&self, arg: &ArgId) -> Option<&Hypothesis> {
        self.arg_to_hypothesis.get(arg)
    }

    /// Hypotheses in canonical order: by size, then by assumed atoms.
    pub fn hypotheses(&self) -> Vec<&Hypothesis> {
        let mut v: Vec<&Hypothesis> = self.arg_to_hypothesis.values().collect();
        v.sort_by(|a, b| {
            a.len()
                .cmp(&b.len())
                .then_with(|| a.assumed_false().iter().cmp(b.assumed_false().iter()))
        });
        v
    }
}

/// Stable label for a hypothesis, usable as an argument id.
pub fn hypothesis_label(delta: &Hypothesis) -> ArgId {
    let parts: Vec<String> = delta
        .assumed_false()
        .iter()
        .map(|a| format!("not {a}"))
        .collect();
    ArgId::new(format!("{{{}}}", parts.join(","))).unwrap()
}

/// Build AF^P: arguments are all self-consistent hypotheses over the
/// language of `p`, attacks per the derivation relation. Refuses languages
/// larger than `cap`.
pub fn build_hypothesis_af(p: &Program, cap: usize) -> Result<HypothesisFramework> {
    let lang: Vec<Atom> = p.language().into_iter().collect();
    if lang.len() > cap {
        return Err(Error::CapExceeded {
            size: lang.len(),
            cap,
        });
    }
    let mut hypotheses = Vec::new();
    for mask in 0u64..(1u64 << lang.len()) {
        let assumed: AtomSet = lang
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, a)| a.clone())
            .collect();
        let delta = Hypothesis::new(assumed);
        if is_self_consistent(p, &delta) {
            hypotheses.push(delta);
        }
    }
    let arg_to_hypothesis: BTreeMap<ArgId, Hypothesis> = hypotheses
        .iter()
        .map(|d| (hypothesis_label(d), d.clone()))
        .collect();
    let mut attacks = Vec::new();
    for d1 in &hypotheses {
        for d2 in &hypotheses {
            if hypothesis_attacks(p, d1, d2) {
                attacks.push((hypothesis_label(d1), hypothesis_label(d2)));
            }
        }
    }
    let framework = ArgumentationFramework::new(arg_to_hypothesis.keys().cloned(), attacks)
        .expect("attack endpoints are hypothesis arguments");
    Ok(HypothesisFramework {
        framework,
        arg_to_hypothesis,
    })
}

/// One extension of AF^P together with the atom sets it characterizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisCharacterization {
    pub extension: Vec<Hypothesis>,
    pub atom_sets: Vec<AtomSet>,
}

/// Apply a semantics to AF^P and map each extension to the atom sets
/// derivable from its hypotheses. With `maximal_only`, only the
/// subset-maximal hypotheses of each extension contribute.
pub fn hypothesis_transfer(
    p: &Program,
    sem: Semantics,
    maximal_only: bool,
    cap: usize,
) -> Result<Vec<HypothesisCharacterization>> {
    let haf = build_hypothesis_af(p, cap)?;
    let mut out = Vec::new();
    for e in haf.framework.extensions(sem) {
        let members: Vec<&Hypothesis> = e
            .iter()
            .map(|arg| haf.hypothesis_for(arg).expect("extension member is a hypothesis"))
            .collect();
        let kept: Vec<&Hypothesis> = if maximal_only {
            members
                .iter()
                .copied()
                .filter(|d| !members.iter().any(|other| *other != *d && d.is_subset(other)))
                .collect()
        } else {
            members.clone()
        };
        let mut atom_sets: Vec<AtomSet> = kept
            .iter()
            .map(|d| p.derive(d))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        atom_sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter())));
        out.push(HypothesisCharacterization {
            extension: members.into_iter().cloned().collect(),
            atom_sets,
        });
    }
    Ok(out)
}
