//! Abstract argumentation frameworks and the classical Dung semantics.
//!
//! Extensions are computed by exhaustive subset enumeration over a
//! bitmask view of the framework. Target instances are desk-scale (the
//! transfer construction yields one argument per program rule), so a soft
//! cap of [`ENUMERATION_SOFT_CAP`] arguments applies; callers may warn
//! above it but enumeration still runs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Opaque argument label, unique within a framework.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArgId(String);

impl ArgId {
    pub fn new(label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        if label.is_empty() {
            return Err(Error::InvalidInput("empty argument label".into()));
        }
        Ok(ArgId(label))
    }

    pub fn label(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ArgId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub type Extension = BTreeSet<ArgId>;

pub const ENUMERATION_SOFT_CAP: usize = 22;

/// Extension-based semantics selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Semantics {
    Grounded,
    Preferred,
    Stable,
    Complete,
    Cf1,
    Cf2,
    Ad1,
    Ad2,
}

impl Semantics {
    pub const ALL: [Semantics; 8] = [
        Semantics::Grounded,
        Semantics::Preferred,
        Semantics::Stable,
        Semantics::Complete,
        Semantics::Cf1,
        Semantics::Cf2,
        Semantics::Ad1,
        Semantics::Ad2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Semantics::Grounded => "grounded",
            Semantics::Preferred => "preferred",
            Semantics::Stable => "stable",
            Semantics::Complete => "complete",
            Semantics::Cf1 => "cf1",
            Semantics::Cf2 => "cf2",
            Semantics::Ad1 => "ad1",
            Semantics::Ad2 => "ad2",
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Semantics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Semantics::ALL
            .into_iter()
            .find(|sem| sem.name() == s)
            .ok_or_else(|| Error::UnknownSemantics(s.to_string()))
    }
}

/// A finite set of arguments with a binary attack relation.
/// Self-attacks are permitted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ArgumentationFramework {
    args: BTreeSet<ArgId>,
    attacks: BTreeSet<(ArgId, ArgId)>,
}

impl ArgumentationFramework {
    pub fn new(
        args: impl IntoIterator<Item = ArgId>,
        attacks: impl IntoIterator<Item = (ArgId, ArgId)>,
    ) -> Result<Self> {
        let args: BTreeSet<ArgId> = args.into_iter().collect();
        let attacks: BTreeSet<(ArgId, ArgId)> = attacks.into_iter().collect();
        for (a, b) in &attacks {
            if !args.contains(a) || !args.contains(b) {
                return Err(Error::InvalidInput(format!(
                    "attack ({a},{b}) mentions an undeclared argument"
                )));
            }
        }
        Ok(ArgumentationFramework { args, attacks })
    }

    pub fn args(&self) -> &BTreeSet<ArgId> {
        &self.args
    }

    pub fn attacks(&self) -> &BTreeSet<(ArgId, ArgId)> {
        &self.attacks
    }

    pub fn len(&self) -> usize {
        self.args.len()
    }

    pub fn is_empty(&self) -> bool {
        self.args.is_empty()
    }

    pub fn has_attack(&self, a: &ArgId, b: &ArgId) -> bool {
        self.attacks.contains(&(a.clone(), b.clone()))
    }

    pub fn attackers_of<'a>(&'a self, target: &'a ArgId) -> impl Iterator<Item = &'a ArgId> {
        self.attacks
            .iter()
            .filter(move |(_, t)| t == target)
            .map(|(s, _)| s)
    }

    /// Parse the APX format: lines `arg(a).` and `att(a,b).`, `%` comments.
    pub fn parse_apx(text: &str) -> Result<Self> {
        let mut args = BTreeSet::new();
        let mut attacks = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('%') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: &str| Error::Parse {
                line: line_no,
                column: 1,
                message: message.to_string(),
            };
            if let Some(inner) = line.strip_prefix("arg(").and_then(|s| s.strip_suffix(").")) {
                args.insert(apx_ident(inner, line_no)?);
            } else if let Some(inner) = line.strip_prefix("att(").and_then(|s| s.strip_suffix(").")) {
                let (a, b) = inner
                    .split_once(',')
                    .ok_or_else(|| err("expected `att(a,b).`"))?;
                attacks.push((apx_ident(a, line_no)?, apx_ident(b, line_no)?));
            } else {
                return Err(err("expected `arg(a).` or `att(a,b).`"));
            }
        }
        ArgumentationFramework::new(args, attacks)
    }

    pub fn to_apx(&self) -> String {
        let mut out = String::new();
        for a in &self.args {
            out.push_str(&format!("arg({a}).\n"));
        }
        for (a, b) in &self.attacks {
            out.push_str(&format!("att({a},{b}).\n"));
        }
        out
    }

    fn check_members(&self, s: &Extension) -> Result<()> {
        for a in s {
            if !self.args.contains(a) {
                return Err(Error::InvalidInput(format!(
                    "argument `{a}` is not in the framework"
                )));
            }
        }
        Ok(())
    }

    /// No attack pair has both ends in `s` (self-attacks included).
    pub fn is_conflict_free(&self, s: &Extension) -> Result<bool> {
        self.check_members(s)?;
        Ok(!self
            .attacks
            .iter()
            .any(|(a, b)| s.contains(a) && s.contains(b)))
    }

    /// `s` attacks `target` iff some member of `s` attacks it.
    pub fn set_attacks(&self, s: &Extension, target: &ArgId) -> bool {
        s.iter().any(|b| self.has_attack(b, target))
    }

    /// Conflict-free and counterattacks every attack on its members.
    pub fn is_admissible(&self, s: &Extension) -> bool {
        if self.is_conflict_free(s) != Ok(true) {
            return false;
        }
        s.iter().all(|a| {
            self.attackers_of(a)
                .all(|b| self.set_attacks(s, b))
        })
    }

    /// The characteristic function: arguments acceptable w.r.t. `s`.
    pub fn characteristic(&self, s: &Extension) -> Extension {
        self.args
            .iter()
            .filter(|a| self.attackers_of(a).all(|b| self.set_attacks(s, b)))
            .cloned()
            .collect()
    }

    /// Least fixed point of the characteristic function.
    pub fn grounded(&self) -> Extension {
        let mut current = Extension::new();
        loop {
            let next = self.characteristic(&current);
            if next == current {
                return current;
            }
            current = next;
        }
    }

    /// Subset-maximal admissible sets.
    pub fn preferred(&self) -> Vec<Extension> {
        let idx = Indexed::new(self);
        let admissible = idx.all_masks_where(|m| idx.admissible(m));
        let maximal = keep_maximal_masks(&admissible);
        idx.to_extensions(maximal)
    }

    /// Conflict-free sets attacking every outside argument. May be empty.
    pub fn stable(&self) -> Vec<Extension> {
        let idx = Indexed::new(self);
        let masks = idx.all_masks_where(|m| idx.stable(m));
        idx.to_extensions(masks)
    }

    /// Admissible sets closed under the characteristic function.
    pub fn complete(&self) -> Vec<Extension> {
        let idx = Indexed::new(self);
        let masks = idx.all_masks_where(|m| idx.admissible(m) && idx.characteristic(m) & !m == 0);
        idx.to_extensions(masks)
    }

    /// Dispatch to the named semantics; output canonically sorted.
    pub fn extensions(&self, sem: Semantics) -> Vec<Extension> {
        let mut out = match sem {
            Semantics::Grounded => vec![self.grounded()],
            Semantics::Preferred => self.preferred(),
            Semantics::Stable => self.stable(),
            Semantics::Complete => self.complete(),
            Semantics::Cf1 => crate::scc::cf1(self),
            Semantics::Cf2 => crate::scc::cf2(self),
            Semantics::Ad1 => crate::scc::ad1(self),
            Semantics::Ad2 => crate::scc::ad2(self),
        };
        canonical_sort(&mut out);
        out
    }
}

fn apx_ident(s: &str, line: usize) -> Result<ArgId> {
    let s = s.trim();
    if s.is_empty() || s.chars().any(|c| "(),%".contains(c) || c.is_whitespace()) {
        return Err(Error::Parse {
            line,
            column: 1,
            message: format!("invalid argument name `{s}`"),
        });
    }
    ArgId::new(s)
}

/// Sort extensions by (size, lexicographic member labels) and dedup.
pub fn canonical_sort(exts: &mut Vec<Extension>) {
    exts.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.iter().cmp(b.iter()))
    });
    exts.dedup();
}

/// Bitmask view of a framework for subset enumeration. Argument `i` is the
/// i-th label in sorted order.
struct Indexed {
    labels: Vec<ArgId>,
    /// attackers[i]: mask of arguments attacking i.
    attackers: Vec<u64>,
    /// targets[i]: mask of arguments attacked by i.
    targets: Vec<u64>,
    full: u64,
}

impl Indexed {
    fn new(af: &ArgumentationFramework) -> Self {
        let labels: Vec<ArgId> = af.args.iter().cloned().collect();
        assert!(
            labels.len() <= 60,
            "subset enumeration supports at most 60 arguments, got {}",
            labels.len()
        );
        let index: BTreeMap<&ArgId, usize> =
            labels.iter().enumerate().map(|(i, a)| (a, i)).collect();
        let mut attackers = vec![0u64; labels.len()];
        let mut targets = vec![0u64; labels.len()];
        for (a, b) in &af.attacks {
            let (ai, bi) = (index[a], index[b]);
            attackers[bi] |= 1 << ai;
            targets[ai] |= 1 << bi;
        }
        let full = if labels.is_empty() {
            0
        } else {
            (1u64 << labels.len()) - 1
        };
        Indexed {
            labels,
            attackers,
            targets,
            full,
        }
    }

    fn members(&self, mask: u64) -> impl Iterator<Item = usize> + '_ {
        (0..self.labels.len()).filter(move |i| mask & (1 << i) != 0)
    }

    fn attacked_by(&self, mask: u64) -> u64 {
        self.members(mask).map(|i| self.targets[i]).fold(0, |a, t| a | t)
    }

    fn conflict_free(&self, mask: u64) -> bool {
        self.attacked_by(mask) & mask == 0
    }

    fn admissible(&self, mask: u64) -> bool {
        if !self.conflict_free(mask) {
            return false;
        }
        let counter = self.attacked_by(mask);
        self.members(mask).all(|i| self.attackers[i] & !counter == 0)
    }

    fn characteristic(&self, mask: u64) -> u64 {
        let counter = self.attacked_by(mask);
        (0..self.labels.len())
            .filter(|&i| self.attackers[i] & !counter == 0)
            .fold(0, |m, i| m | (1 << i))
    }

    fn stable(&self, mask: u64) -> bool {
        self.conflict_free(mask) && (self.full & !mask) & !self.attacked_by(mask) == 0
    }

    fn all_masks_where(&self, pred: impl Fn(u64) -> bool) -> Vec<u64> {
        (0..=self.full).filter(|&m| pred(m)).collect()
    }

    fn to_extension(&self, mask: u64) -> Extension {
        self.members(mask).map(|i| self.labels[i].clone()).collect()
    }

    fn to_extensions(&self, masks: Vec<u64>) -> Vec<Extension> {
        masks.into_iter().map(|m| self.to_extension(m)).collect()
    }
}

fn keep_maximal_masks(masks: &[u64]) -> Vec<u64> {
    masks
        .iter()
        .copied()
        .filter(|&m| !masks.iter().any(|&other| other != m && other & m == m))
        .collect()
}

/// Subset-maximal conflict-free sets (the CF1/CF2 base selection).
pub fn maximal_conflict_free(af: &ArgumentationFramework) -> Vec<Extension> {
    let idx = Indexed::new(af);
    let cf = idx.all_masks_where(|m| idx.conflict_free(m));
    let mut out = idx.to_extensions(keep_maximal_masks(&cf));
    canonical_sort(&mut out);
    out
}

/// Subset-maximal sets admissible in `af` and contained in `within`.
pub fn maximal_admissible_within(
    af: &ArgumentationFramework,
    within: &BTreeSet<ArgId>,
) -> Vec<Extension> {
    let idx = Indexed::new(af);
    let allowed: u64 = idx
        .labels
        .iter()
        .enumerate()
        .filter(|(_, a)| within.contains(a))
        .fold(0, |m, (i, _)| m | (1 << i));
    let adm = idx.all_masks_where(|m| m & !allowed == 0 && idx.admissible(m));
    let mut out = idx.to_extensions(keep_maximal_masks(&adm));
    canonical_sort(&mut out);
    out
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn arg(label: &str) -> ArgId {
        ArgId::new(label).unwrap()
    }

    pub fn ext(labels: &[&str]) -> Extension {
        labels.iter().map(|l| arg(l)).collect()
    }

    pub fn af(args: &[&str], attacks: &[(&str, &str)]) -> ArgumentationFramework {
        ArgumentationFramework::new(
            args.iter().map(|l| arg(l)),
            attacks.iter().map(|(a, b)| (arg(a), arg(b))),
        )
        .unwrap()
    }

    /// Three-cycle a -> b -> c -> a.
    pub fn three_cycle() -> ArgumentationFramework {
        af(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")])
    }

    /// Four-cycle a -> b -> c -> d -> a.
    pub fn four_cycle() -> ArgumentationFramework {
        af(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
        )
    }

    /// Mutual attack between a and b.
    pub fn mutual() -> ArgumentationFramework {
        af(&["a", "b"], &[("a", "b"), ("b", "a")])
    }

    /// Attack chain r1 -> r2 -> r3 -> r4.
    pub fn chain_af() -> ArgumentationFramework {
        af(
            &["r1", "r2", "r3", "r4"],
            &[("r1", "r2"), ("r2", "r3"), ("r3", "r4")],
        )
    }

    /// Five arguments: a->b, c->b, c<->d, d->e, e->e.
    pub fn witness_af() -> ArgumentationFramework {
        af(
            &["a", "b", "c", "d", "e"],
            &[
                ("a", "b"),
                ("c", "b"),
                ("c", "d"),
                ("d", "c"),
                ("d", "e"),
                ("e", "e"),
            ],
        )
    }

    pub fn exts(sets: &[&[&str]]) -> Vec<Extension> {
        let mut v: Vec<Extension> = sets.iter().map(|s| ext(s)).collect();
        canonical_sort(&mut v);
        v
    }
}
