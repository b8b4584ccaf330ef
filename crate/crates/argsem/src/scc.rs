//! Strongly connected components and the SCC-recursive semantics family.
//!
//! The generic schema walks the condensation DAG in topological order,
//! extending partial extensions component by component. For each component
//! the arguments are split into defeated / provisionally defeated /
//! undefeated relative to the choices already made in ancestor components,
//! the framework is restricted accordingly, and a base function is applied
//! once the recursion bottoms out in a single component. CF1/CF2 use
//! maximal conflict-free sets as base, AD1/AD2 maximal admissible sets.

use std::collections::{BTreeMap, BTreeSet};

use crate::af::{ArgId, ArgumentationFramework, Extension};

pub use crate::af::{canonical_sort, maximal_conflict_free};

/// Equivalence classes of arguments under path equivalence (mutual
/// reachability). Components are listed in a topological order of the
/// condensation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccPartition {
    pub components: Vec<BTreeSet<ArgId>>,
    pub component_of: BTreeMap<ArgId, usize>,
}

/// Condensation DAG over component indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccGraph {
    pub edges: BTreeSet<(usize, usize)>,
    pub topo_order: Vec<usize>,
}

impl SccGraph {
    /// Components without parents.
    pub fn initial_components(&self) -> Vec<usize> {
        self.topo_order
            .iter()
            .copied()
            .filter(|&c| !self.edges.iter().any(|&(_, to)| to == c))
            .collect()
    }
}

/// Tarjan's algorithm; components come out in reverse topological order
/// and are reversed before returning.
pub fn sccs(af: &ArgumentationFramework) -> SccPartition {
    let labels: Vec<ArgId> = af.args().iter().cloned().collect();
    let index_of: BTreeMap<&ArgId, usize> =
        labels.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let n = labels.len();
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (a, b) in af.attacks() {
        succ[index_of[a]].push(index_of[b]);
    }

    struct Tarjan<'a> {
        succ: &'a [Vec<usize>],
        index: Vec<Option<usize>>,
        lowlink: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        counter: usize,
        components: Vec<Vec<usize>>,
    }

    impl Tarjan<'_> {
        fn visit(&mut self, v: usize) {
            self.index[v] = Some(self.counter);
            self.lowlink[v] = self.counter;
            self.counter += 1;
            self.stack.push(v);
            self.on_stack[v] = true;
            for &w in &self.succ[v] {
                if self.index[w].is_none() {
                    self.visit(w);
                    self.lowlink[v] = self.lowlink[v].min(self.lowlink[w]);
                } else if self.on_stack[w] {
                    self.lowlink[v] = self.lowlink[v].min(self.index[w].unwrap());
                }
            }
            if self.lowlink[v] == self.index[v].unwrap() {
                let mut comp = Vec::new();
                loop {
                    let w = self.stack.pop().unwrap();
                    self.on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                self.components.push(comp);
            }
        }
    }

    let mut t = Tarjan {
        succ: &succ,
        index: vec![None; n],
        lowlink: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        counter: 0,
        components: Vec::new(),
    };
    for v in 0..n {
        if t.index[v].is_none() {
            t.visit(v);
        }
    }
    t.components.reverse();

    let components: Vec<BTreeSet<ArgId>> = t
        .components
        .iter()
        .map(|c| c.iter().map(|&i| labels[i].clone()).collect())
        .collect();
    let mut component_of = BTreeMap::new();
    for (ci, comp) in components.iter().enumerate() {
        for a in comp {
            component_of.insert(a.clone(), ci);
        }
    }
    SccPartition {
        components,
        component_of,
    }
}

/// Condensation of the attack relation. Components are already in
/// topological order, so `topo_order` is the identity sequence.
pub fn scc_graph(af: &ArgumentationFramework, part: &SccPartition) -> SccGraph {
    let mut edges = BTreeSet::new();
    for (a, b) in af.attacks() {
        let (ca, cb) = (part.component_of[a], part.component_of[b]);
        if ca != cb {
            edges.insert((ca, cb));
        }
    }
    debug_assert!(edges.iter().all(|&(from, to)| from < to), "not topological");
    SccGraph {
        edges,
        topo_order: (0..part.components.len()).collect(),
    }
}

/// Sub-framework induced by `s`.
pub fn restrict(af: &ArgumentationFramework, s: &BTreeSet<ArgId>) -> ArgumentationFramework {
    ArgumentationFramework::new(
        af.args().intersection(s).cloned(),
        af.attacks()
            .iter()
            .filter(|(a, b)| s.contains(a) && s.contains(b))
            .cloned(),
    )
    .expect("restriction preserves well-formedness")
}

/// Split of a component relative to choices made outside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpuPartition {
    pub defeated: BTreeSet<ArgId>,
    pub provisionally_defeated: BTreeSet<ArgId>,
    pub undefeated: BTreeSet<ArgId>,
}

/// Defeated: attacked from outside the component by `e`. Undefeated: not
/// defeated and every outside attacker is attacked by `e`. Provisionally
/// defeated: the rest. Only attackers outside the component are consulted.
pub fn dpu(af: &ArgumentationFramework, component: &BTreeSet<ArgId>, e: &Extension) -> DpuPartition {
    let mut out = DpuPartition {
        defeated: BTreeSet::new(),
        provisionally_defeated: BTreeSet::new(),
        undefeated: BTreeSet::new(),
    };
    for a in component {
        let outside: Vec<&ArgId> = af
            .attackers_of(a)
            .filter(|b| !component.contains(*b))
            .collect();
        if outside.iter().any(|b| e.contains(*b) && !component.contains(*b)) {
            out.defeated.insert(a.clone());
        } else if outside.iter().all(|b| af.set_attacks(e, b)) {
            out.undefeated.insert(a.clone());
        } else {
            out.provisionally_defeated.insert(a.clone());
        }
    }
    out
}

/// Base function applied to single-component frameworks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseFunction {
    /// Maximal conflict-free sets; ignores the undefeated parameter.
    MaximalConflictFree,
    /// Maximal sets admissible in the framework and contained in the
    /// undefeated parameter.
    MaximalAdmissible,
}

/// Which arguments of a component survive into the recursive call.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RestrictionMode {
    /// Undefeated only (CF1/AD1).
    UndefeatedOnly,
    /// Undefeated plus provisionally defeated (CF2/AD2).
    UndefeatedOrProvisional,
}

fn apply_base(
    af: &ArgumentationFramework,
    c: &BTreeSet<ArgId>,
    base: BaseFunction,
) -> Vec<Extension> {
    match base {
        BaseFunction::MaximalConflictFree => maximal_conflict_free(af),
        BaseFunction::MaximalAdmissible => crate::af::maximal_admissible_within(af, c),
    }
}

/// The generic SCC-recursive schema. A framework with at most one
/// component is handed to the base function; otherwise partial extensions
/// are extended component by component in topological order, recursing
/// into the restricted sub-framework of each component.
pub fn gf(
    af: &ArgumentationFramework,
    c: &BTreeSet<ArgId>,
    base: BaseFunction,
    mode: RestrictionMode,
) -> Vec<Extension> {
    let part = sccs(af);
    if part.components.len() <= 1 {
        return apply_base(af, c, base);
    }
    let graph = scc_graph(af, &part);
    let mut partials: Vec<Extension> = vec![Extension::new()];
    for &ci in &graph.topo_order {
        let component = &part.components[ci];
        let mut next = Vec::new();
        for e in &partials {
            let split = dpu(af, component, e);
            let survivors: BTreeSet<ArgId> = match mode {
                RestrictionMode::UndefeatedOnly => split.undefeated.clone(),
                RestrictionMode::UndefeatedOrProvisional => split
                    .undefeated
                    .union(&split.provisionally_defeated)
                    .cloned()
                    .collect(),
            };
            let sub_af = restrict(af, &survivors);
            let sub_c: BTreeSet<ArgId> = split.undefeated.intersection(c).cloned().collect();
            for sub_e in gf(&sub_af, &sub_c, base, mode) {
                let mut extended = e.clone();
                extended.extend(sub_e);
                next.push(extended);
            }
        }
        partials = next;
    }
    canonical_sort(&mut partials);
    partials
}

pub fn cf1(af: &ArgumentationFramework) -> Vec<Extension> {
    gf(
        af,
        af.args(),
        BaseFunction::MaximalConflictFree,
        RestrictionMode::UndefeatedOnly,
    )
}

pub fn cf2(af: &ArgumentationFramework) -> Vec<Extension> {
    gf(
        af,
        af.args(),
        BaseFunction::MaximalConflictFree,
        RestrictionMode::UndefeatedOrProvisional,
    )
}

pub fn ad1(af: &ArgumentationFramework) -> Vec<Extension> {
    gf(
        af,
        af.args(),
        BaseFunction::MaximalAdmissible,
        RestrictionMode::UndefeatedOnly,
    )
}

pub fn ad2(af: &ArgumentationFramework) -> Vec<Extension> {
    gf(
        af,
        af.args(),
        BaseFunction::MaximalAdmissible,
        RestrictionMode::UndefeatedOrProvisional,
    )
}
