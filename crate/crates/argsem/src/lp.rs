//! Propositional normal logic programs: data model, text format,
//! hypothesis-based derivation and brute-force stable models.
//!
//! A rule is `head :- a, b, not c.`; a fact is `head.`. A hypothesis is a
//! set of atoms assumed false; reducing a program by a hypothesis and
//! taking the least model of the surviving positive rules yields the atoms
//! derivable from the hypothesis. Stable models are found by sweeping all
//! hypotheses over the language, so this module is an oracle, not a solver.

use std::collections::BTreeSet;
use std::fmt;

use crate::{Error, Result};

/// A propositional atom. Names match `[a-z][A-Za-z0-9_]*`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(String);

impl Atom {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if is_valid_atom_name(&name) {
            Ok(Atom(name))
        } else {
            Err(Error::InvalidInput(format!("invalid atom name `{name}`")))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn is_valid_atom_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub type AtomSet = BTreeSet<Atom>;

/// Position of a rule within its program, 1-based in textual order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RuleId(pub usize);

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub head: Atom,
    pub body_plus: AtomSet,
    pub body_minus: AtomSet,
}

impl Rule {
    pub fn fact(head: Atom) -> Self {
        Rule {
            head,
            body_plus: AtomSet::new(),
            body_minus: AtomSet::new(),
        }
    }

    pub fn is_fact(&self) -> bool {
        self.body_plus.is_empty() && self.body_minus.is_empty()
    }

    /// True if the rule carries no default negation.
    pub fn is_positive(&self) -> bool {
        self.body_minus.is_empty()
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_fact() {
            return write!(f, "{}.", self.head);
        }
        let mut lits: Vec<String> = self.body_plus.iter().map(|a| a.to_string()).collect();
        lits.extend(self.body_minus.iter().map(|a| format!("not {a}")));
        write!(f, "{} :- {}.", self.head, lits.join(", "))
    }
}

/// A finite set of rules, kept in textual order. Rule ids are 1..n.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Program {
    rules: Vec<Rule>,
}

impl Program {
    pub fn new(rules: impl IntoIterator<Item = Rule>) -> Self {
        Program {
            rules: rules.into_iter().collect(),
        }
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn rule(&self, id: RuleId) -> Option<&Rule> {
        if id.0 == 0 {
            return None;
        }
        self.rules.get(id.0 - 1)
    }

    pub fn rule_ids(&self) -> impl Iterator<Item = RuleId> {
        (1..=self.rules.len()).map(RuleId)
    }

    pub fn iter(&self) -> impl Iterator<Item = (RuleId, &Rule)> {
        self.rules
            .iter()
            .enumerate()
            .map(|(i, r)| (RuleId(i + 1), r))
    }

    /// All atoms occurring anywhere in the program.
    pub fn language(&self) -> AtomSet {
        let mut lang = AtomSet::new();
        for r in &self.rules {
            lang.insert(r.head.clone());
            lang.extend(r.body_plus.iter().cloned());
            lang.extend(r.body_minus.iter().cloned());
        }
        lang
    }

    /// Normalized text form: one rule per line, `h :- a, not b.` spacing.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for r in &self.rules {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out
    }

    /// Reduce by a hypothesis: `P_Δ` drops the assumed literals from
    /// negative bodies, `P_Δ⁺` additionally drops every rule whose body
    /// still contains an assumption.
    pub fn reduce(&self, delta: &Hypothesis) -> (Program, Program) {
        let reduced: Vec<Rule> = self
            .rules
            .iter()
            .map(|r| Rule {
                head: r.head.clone(),
                body_plus: r.body_plus.clone(),
                body_minus: r.body_minus.difference(delta.assumed_false()).cloned().collect(),
            })
            .collect();
        let positive: Vec<Rule> = reduced
            .iter()
            .filter(|r| r.body_minus.is_empty())
            .cloned()
            .collect();
        (Program::new(reduced), Program::new(positive))
    }

    /// Atoms derivable from the hypothesis: the least model of `P_Δ⁺`.
    pub fn derive(&self, delta: &Hypothesis) -> AtomSet {
        let (_, positive) = self.reduce(delta);
        least_model(&positive).expect("reduct is a positive program")
    }

    /// All stable models, by brute force over every hypothesis that is
    /// total w.r.t. the language.
    pub fn stable_models(&self) -> BTreeSet<AtomSet> {
        let lang: Vec<Atom> = self.language().into_iter().collect();
        let n = lang.len();
        let mut models = BTreeSet::new();
        for mask in 0u64..(1u64 << n) {
            let mut candidate = AtomSet::new();
            let mut assumed = AtomSet::new();
            for (i, atom) in lang.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    candidate.insert(atom.clone());
                } else {
                    assumed.insert(atom.clone());
                }
            }
            let delta = Hypothesis::new(assumed);
            if self.derive(&delta) == candidate {
                models.insert(candidate);
            }
        }
        models
    }

    /// As [`stable_models`](Self::stable_models), with a soft language-size
    /// cap: the sweep still runs, but a warning is reported above the cap.
    pub fn stable_models_checked(&self, cap: usize) -> (BTreeSet<AtomSet>, Option<String>) {
        let size = self.language().len();
        let warning = (size > cap).then(|| {
            format!("language has {size} atoms (cap {cap}); brute-force sweep of 2^{size} hypotheses")
        });
        (self.stable_models(), warning)
    }
}

pub const DEFAULT_STABLE_CAP: usize = 20;

/// Least model of a positive program: the fixpoint of immediate
/// consequences starting from the empty set.
pub fn least_model(p: &Program) -> Result<AtomSet> {
    if let Some(r) = p.rules().iter().find(|r| !r.is_positive()) {
        return Err(Error::InvalidInput(format!(
            "least_model requires a positive program, found `{r}`"
        )));
    }
    let mut model = AtomSet::new();
    loop {
        let mut changed = false;
        for r in p.rules() {
            if !model.contains(&r.head) && r.body_plus.iter().all(|a| model.contains(a)) {
                model.insert(r.head.clone());
                changed = true;
            }
        }
        if !changed {
            return Ok(model);
        }
    }
}

/// A set of atoms assumed false (default literals `not A`).
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hypothesis {
    assumed_false: AtomSet,
}

impl Hypothesis {
    pub fn new(assumed_false: AtomSet) -> Self {
        Hypothesis { assumed_false }
    }

    pub fn empty() -> Self {
        Hypothesis::default()
    }

    pub fn assumed_false(&self) -> &AtomSet {
        &self.assumed_false
    }

    pub fn len(&self) -> usize {
        self.assumed_false.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assumed_false.is_empty()
    }

    pub fn is_subset(&self, other: &Hypothesis) -> bool {
        self.assumed_false.is_subset(&other.assumed_false)
    }
}

impl FromIterator<Atom> for Hypothesis {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> Self {
        Hypothesis::new(iter.into_iter().collect())
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lits: Vec<String> = self
            .assumed_false
            .iter()
            .map(|a| format!("not {a}"))
            .collect();
        write!(f, "{{{}}}", lits.join(", "))
    }
}

/// Δ attacks Δ′ iff some atom derivable from Δ is assumed false in Δ′.
pub fn hypothesis_attacks(p: &Program, delta: &Hypothesis, other: &Hypothesis) -> bool {
    !p.derive(delta).is_disjoint(other.assumed_false())
}

/// A hypothesis is self-consistent iff it does not attack itself.
pub fn is_self_consistent(p: &Program, delta: &Hypothesis) -> bool {
    !hypothesis_attacks(p, delta, delta)
}

pub fn parse_program(text: &str) -> Result<Program> {
    let mut rules = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('%') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        rules.push(parse_rule_line(line_no, line)?);
    }
    Ok(Program::new(rules))
}

struct Scanner<'a> {
    line: usize,
    chars: Vec<char>,
    pos: usize,
    _text: &'a str,
}

impl<'a> Scanner<'a> {
    fn new(line: usize, text: &'a str) -> Self {
        Scanner {
            line,
            chars: text.chars().collect(),
            pos: 0,
            _text: text,
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, expected: char) -> Result<()> {
        if self.peek() == Some(expected) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{expected}`")))
        }
    }

    fn identifier(&mut self) -> Result<String> {
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_lowercase() => self.pos += 1,
            _ => return Err(self.err("expected an atom (lowercase identifier)")),
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }
}

fn parse_rule_line(line_no: usize, text: &str) -> Result<Rule> {
    let mut s = Scanner::new(line_no, text);
    s.skip_ws();
    let head = Atom::new(s.identifier()?).map_err(|_| s.err("invalid atom"))?;
    s.skip_ws();
    let mut body_plus = AtomSet::new();
    let mut body_minus = AtomSet::new();
    if s.peek() == Some(':') {
        s.eat(':')?;
        s.eat('-')?;
        loop {
            s.skip_ws();
            let ident = s.identifier()?;
            s.skip_ws();
            // `not` followed by another identifier is a default literal;
            // a bare `not` stays a positive atom.
            if ident == "not" && matches!(s.peek(), Some(c) if c.is_ascii_lowercase()) {
                let atom = Atom::new(s.identifier()?).map_err(|_| s.err("invalid atom"))?;
                body_minus.insert(atom);
            } else {
                body_plus.insert(Atom::new(ident).map_err(|_| s.err("invalid atom"))?);
            }
            s.skip_ws();
            match s.peek() {
                Some(',') => {
                    s.eat(',')?;
                }
                Some('.') => break,
                _ => return Err(s.err("expected `,` or `.`")),
            }
        }
    }
    s.eat('.')?;
    s.skip_ws();
    if s.peek().is_some() {
        return Err(s.err("unexpected trailing input after `.`"));
    }
    Ok(Rule {
        head,
        body_plus,
        body_minus,
    })
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// Chain program: a.  b :- not a.  c :- not b.  d :- not c.
    pub fn chain() -> Program {
        parse_program("a.\nb :- not a.\nc :- not b.\nd :- not c.\n").unwrap()
    }

    /// a :- not b.  b :- c, not d.  c.
    pub fn guarded() -> Program {
        parse_program("a :- not b.\nb :- c, not d.\nc.\n").unwrap()
    }

    /// Chain plus a self-negating rule e :- not e.
    pub fn chain_with_odd_loop() -> Program {
        parse_program("a.\nb :- not a.\nc :- not b.\nd :- not c.\ne :- not e.\n").unwrap()
    }

    /// Odd negative cycle: a :- not b.  b :- not c.  c :- not a.
    pub fn odd_cycle() -> Program {
        parse_program("a :- not b.\nb :- not c.\nc :- not a.\n").unwrap()
    }

    /// a :- p, not b.  b :- q, not a.  p.
    pub fn conflicting_pair() -> Program {
        parse_program("a :- p, not b.\nb :- q, not a.\np.\n").unwrap()
    }

    pub fn atoms(names: &[&str]) -> AtomSet {
        names.iter().map(|n| Atom::new(*n).unwrap()).collect()
    }

    pub fn hyp(names: &[&str]) -> Hypothesis {
        Hypothesis::new(atoms(names))
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn parse_fact() {
        let p = parse_program("a.").unwrap();
        assert_eq!(p.len(), 1);
        let r = &p.rules()[0];
        assert_eq!(r.head.name(), "a");
        assert!(r.is_fact());
    }

    #[test]
    fn parse_single_negative_literal() {
        let p = parse_program("b :- not a.").unwrap();
        let r = &p.rules()[0];
        assert!(r.body_plus.is_empty());
        assert_eq!(r.body_minus, atoms(&["a"]));
    }

    #[test]
    fn parse_mixed_body() {
        let p = parse_program("b :- c, not d.").unwrap();
        let r = &p.rules()[0];
        assert_eq!(r.body_plus, atoms(&["c"]));
        assert_eq!(r.body_minus, atoms(&["d"]));
    }

    #[test]
    fn parse_reports_line_and_column() {
        let err = parse_program("a.\nb :- Not a.").unwrap_err();
        match err {
            Error::Parse { line, column, .. } => {
                assert_eq!(line, 2);
                assert_eq!(column, 6);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_trailing_garbage() {
        assert!(matches!(
            parse_program("a. b."),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn duplicate_rules_are_kept_distinct() {
        let p = parse_program("a :- not b.\na :- not b.\n").unwrap();
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let p = parse_program("% header\n\na. % fact\n").unwrap();
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn serialize_normalizes_spacing() {
        let p = parse_program("h:-a,not   b.").unwrap();
        assert_eq!(p.serialize(), "h :- a, not b.\n");
        assert_eq!(parse_program(&p.serialize()).unwrap(), p);
    }

    #[test]
    fn reduce_empty_hypothesis_is_identity() {
        let p = parse_program("a.").unwrap();
        let (pd, pd_plus) = p.reduce(&Hypothesis::empty());
        assert_eq!(pd, p);
        assert_eq!(pd_plus, p);
    }

    #[test]
    fn reduce_deletes_assumed_literals() {
        let p = parse_program("b :- not a.").unwrap();
        let (pd, pd_plus) = p.reduce(&hyp(&["a"]));
        let expected = Program::new([Rule::fact(Atom::new("b").unwrap())]);
        assert_eq!(pd, expected);
        assert_eq!(pd_plus, expected);
    }

    #[test]
    fn reduce_guarded_program() {
        // Hand application of the definition, cross-checked below via
        // least_model: only r1 (a :- not b, reduced to a fact) and the
        // fact c survive into P_Δ⁺.
        let (_, pd_plus) = guarded().reduce(&hyp(&["b"]));
        assert_eq!(
            pd_plus.serialize(),
            "a.\nc.\n"
        );
        assert_eq!(least_model(&pd_plus).unwrap(), atoms(&["a", "c"]));
    }

    #[test]
    fn least_model_chain() {
        let p = parse_program("a.\nb :- a.\n").unwrap();
        assert_eq!(least_model(&p).unwrap(), atoms(&["a", "b"]));
    }

    #[test]
    fn least_model_empty_program() {
        assert_eq!(least_model(&Program::default()).unwrap(), AtomSet::new());
    }

    #[test]
    fn least_model_order_independent() {
        let p = parse_program("b :- c.\nc.\n").unwrap();
        assert_eq!(least_model(&p).unwrap(), atoms(&["b", "c"]));
    }

    #[test]
    fn least_model_rejects_negation() {
        let p = parse_program("a :- not b.").unwrap();
        assert!(least_model(&p).is_err());
    }

    #[test]
    fn least_model_is_minimal_closed_set() {
        // Brute force: every proper subset of the least model fails closure.
        let p = parse_program("a.\nb :- a.\nc :- b, a.\nd :- e.\n").unwrap();
        let lm = least_model(&p).unwrap();
        let atoms_vec: Vec<Atom> = lm.iter().cloned().collect();
        let closed = |s: &AtomSet| {
            p.rules()
                .iter()
                .all(|r| !r.body_plus.iter().all(|a| s.contains(a)) || s.contains(&r.head))
        };
        assert!(closed(&lm));
        for mask in 0..(1u32 << atoms_vec.len()) - 1 {
            let subset: AtomSet = atoms_vec
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, a)| a.clone())
                .collect();
            assert!(!closed(&subset), "proper subset {subset:?} is closed");
        }
    }

    #[test]
    fn derive_chain_under_not_b() {
        assert_eq!(chain().derive(&hyp(&["b"])), atoms(&["a", "c"]));
    }

    #[test]
    fn derive_facts_only() {
        let p = parse_program("a.\nq.\n").unwrap();
        assert_eq!(p.derive(&hyp(&["a"])), atoms(&["a", "q"]));
        assert_eq!(p.derive(&Hypothesis::empty()), atoms(&["a", "q"]));
    }

    #[test]
    fn derive_guarded_under_not_d() {
        assert_eq!(guarded().derive(&hyp(&["d"])), atoms(&["b", "c"]));
    }

    #[test]
    fn stable_models_conflicting_pair() {
        let expected: BTreeSet<AtomSet> = [atoms(&["a", "p"])].into_iter().collect();
        assert_eq!(conflicting_pair().stable_models(), expected);
    }

    #[test]
    fn stable_models_odd_cycle_has_none() {
        assert!(odd_cycle().stable_models().is_empty());
    }

    #[test]
    fn stable_models_chain() {
        let expected: BTreeSet<AtomSet> = [atoms(&["a", "c"])].into_iter().collect();
        assert_eq!(chain().stable_models(), expected);
    }

    #[test]
    fn stable_models_reports_size_warning() {
        let (_, warning) = chain().stable_models_checked(2);
        assert!(warning.is_some());
        let (_, warning) = chain().stable_models_checked(20);
        assert!(warning.is_none());
    }

    #[test]
    fn hypothesis_attack_in_guarded_program() {
        let p = guarded();
        assert!(hypothesis_attacks(&p, &hyp(&["d"]), &hyp(&["b"])));
        // ∅ derives only {c}, which attacks nothing in AR.
        for target in [hyp(&["a"]), hyp(&["b"]), hyp(&["d"])] {
            assert!(!hypothesis_attacks(&p, &Hypothesis::empty(), &target));
        }
    }

    #[test]
    fn empty_hypothesis_is_never_attacked() {
        let p = guarded();
        for delta in [hyp(&["a"]), hyp(&["b"]), hyp(&["c"]), hyp(&["d"])] {
            assert!(!hypothesis_attacks(&p, &delta, &Hypothesis::empty()));
        }
    }

    #[test]
    fn self_consistency_in_guarded_program() {
        let p = guarded();
        assert!(!is_self_consistent(&p, &hyp(&["c"])));
        assert!(is_self_consistent(&p, &Hypothesis::empty()));
        assert!(is_self_consistent(&p, &hyp(&["a", "d"])));
    }

    #[test]
    fn atom_in_both_body_parts_is_accepted() {
        let p = parse_program("a :- b, not b.\nb.\n").unwrap();
        assert_eq!(p.derive(&Hypothesis::empty()), atoms(&["b"]));
        // Assuming `not b` strips the guard but the fact still fires the rule.
        assert_eq!(p.derive(&hyp(&["b"])), atoms(&["a", "b"]));
    }

    #[test]
    fn derive_stays_within_language() {
        let p = guarded();
        let lang = p.language();
        for delta in [
            Hypothesis::empty(),
            hyp(&["a"]),
            hyp(&["b", "d"]),
            hyp(&["a", "b", "c", "d"]),
        ] {
            assert!(p.derive(&delta).is_subset(&lang));
        }
    }
}
