//! Branch-and-reduce enumeration of minimal rdfs with polynomial delay.
//!
//! A search node is a partial five-valued labeling ([`Grdf`]). Each branching
//! step decides for one vertex whether it gets value 2; afterwards the
//! reduction rules are applied until none fires, and the child is entered only
//! if the generalized extension test says some minimal rdf is still consistent
//! with it. Every entered node therefore has a solution below it, which bounds
//! the number of inner nodes between two outputs by `2n`.

use std::fmt;

use crate::extension::{gen_ext_rd, project_grdf};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::rdf::{is_minimal_rdf, Assignment};
use crate::stats::{EnumStats, GapTracker};

/// Default weight of a 1̄-vertex in the measure.
pub const OMEGA_1: f64 = 2.0 / 3.0;
/// Default weight of a 2̄-vertex in the measure.
pub const OMEGA_2: f64 = 0.38488;

/// Label of a vertex in a search node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    /// Not decided yet.
    Active,
    Zero,
    One,
    Two,
    /// 1̄: already dominated by a 2-vertex, ends up as 0 or 2.
    ZeroOrTwo,
    /// 2̄: must not become 2, ends up as 0 or 1.
    ZeroOrOne,
}

impl Label {
    pub const ALL: [Label; 6] = [
        Label::Active,
        Label::Zero,
        Label::One,
        Label::Two,
        Label::ZeroOrTwo,
        Label::ZeroOrOne,
    ];

    fn index(self) -> usize {
        self as usize
    }

    fn symbol(self) -> &'static str {
        match self {
            Label::Active => "A",
            Label::Zero => "0",
            Label::One => "1",
            Label::Two => "2",
            Label::ZeroOrTwo => "~1",
            Label::ZeroOrOne => "~2",
        }
    }
}

/// Generalized Roman domination function: a labeling of every vertex with a
/// [`Label`], with one vertex set per label kept in sync.
#[derive(Clone, PartialEq, Eq)]
pub struct Grdf {
    labels: Vec<Label>,
    sets: [VertexSet; 6],
}

impl Grdf {
    /// Every vertex active.
    pub fn nowhere_defined(n: usize) -> Self {
        let mut sets: [VertexSet; 6] = Default::default();
        for (i, set) in sets.iter_mut().enumerate() {
            *set = if i == Label::Active.index() {
                VertexSet::full(n)
            } else {
                VertexSet::new(n)
            };
        }
        Grdf {
            labels: vec![Label::Active; n],
            sets,
        }
    }

    pub fn from_labels(labels: &[Label]) -> Self {
        let mut f = Grdf::nowhere_defined(labels.len());
        for (v, &l) in labels.iter().enumerate() {
            f.set(v, l);
        }
        f
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, v: VertexId) -> Label {
        self.labels[v]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn set(&mut self, v: VertexId, label: Label) {
        let old = self.labels[v];
        self.sets[old.index()].remove(v);
        self.sets[label.index()].insert(v);
        self.labels[v] = label;
    }

    pub fn set_of(&self, label: Label) -> &VertexSet {
        &self.sets[label.index()]
    }

    pub fn count(&self, label: Label) -> usize {
        self.set_of(label).len()
    }

    /// Union of the vertex sets of `labels`.
    pub fn any_of(&self, labels: &[Label]) -> VertexSet {
        let mut out = VertexSet::new(self.len());
        for &l in labels {
            out.union_with(self.set_of(l));
        }
        out
    }

    /// Everywhere defined with values in {0, 1, 2}.
    pub fn is_leaf(&self) -> bool {
        self.count(Label::Active) == 0
            && self.count(Label::ZeroOrTwo) == 0
            && self.count(Label::ZeroOrOne) == 0
    }

    pub fn to_assignment(&self) -> Option<Assignment> {
        self.labels
            .iter()
            .map(|l| match l {
                Label::Zero => Some(0),
                Label::One => Some(1),
                Label::Two => Some(2),
                _ => None,
            })
            .collect::<Option<Vec<u8>>>()
            .map(|values| Assignment::new(values).expect("values are in range"))
    }
}

impl fmt::Debug for Grdf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.labels.iter().enumerate().map(|(v, l)| (v, l.symbol())))
            .finish()
    }
}

/// μ = |A| + w1·|1̄| + w2·|2̄|.
pub fn measure(f: &Grdf, w1: f64, w2: f64) -> f64 {
    f.count(Label::Active) as f64
        + w1 * f.count(Label::ZeroOrTwo) as f64
        + w2 * f.count(Label::ZeroOrOne) as f64
}

/// Whether the rdf `g` is consistent with the search node `f`.
pub fn is_consistent(g: &Assignment, f: &Grdf) -> bool {
    g.len() == f.len()
        && (0..f.len()).all(|v| {
            let allowed: &[Label] = match g.get(v) {
                2 => &[Label::Active, Label::Two, Label::ZeroOrTwo],
                1 => &[Label::Active, Label::One, Label::ZeroOrOne],
                _ => &[
                    Label::Active,
                    Label::Zero,
                    Label::ZeroOrTwo,
                    Label::ZeroOrOne,
                ],
            };
            allowed.contains(&f.label(v))
        })
}

// ---------------------------------------------------------------------------
// Reduction rules

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Last potential private neighbor.
    Lpn,
    V0,
    V1,
    V2,
    /// No potential domination.
    Npd,
    /// No private neighbor.
    Npn,
    Isolate,
    Edges,
}

impl Rule {
    pub const ORDER: [Rule; 8] = [
        Rule::Lpn,
        Rule::V0,
        Rule::V1,
        Rule::V2,
        Rule::Npd,
        Rule::Npn,
        Rule::Isolate,
        Rule::Edges,
    ];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Effect {
    Relabel { vertex: VertexId, to: Label },
    DeleteEdge(VertexId, VertexId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub rule: Rule,
    pub effect: Effect,
}

/// The rule applications performed while reducing a node, in order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionTrace(pub Vec<ReductionStep>);

impl ReductionTrace {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn steps(&self) -> &[ReductionStep] {
        &self.0
    }

    /// Re-applies the trace to a pre-state.
    pub fn replay(&self, g: &mut Graph, f: &mut Grdf) {
        for step in &self.0 {
            apply_effect(g, f, step.effect);
        }
    }

    /// Puts back the edges this trace deleted.
    pub fn restore_edges(&self, g: &mut Graph) {
        for step in &self.0 {
            if let Effect::DeleteEdge(u, v) = step.effect {
                g.add_edge(u, v).expect("restored edge was valid");
            }
        }
    }
}

fn apply_effect(g: &mut Graph, f: &mut Grdf, effect: Effect) {
    match effect {
        Effect::Relabel { vertex, to } => f.set(vertex, to),
        Effect::DeleteEdge(u, v) => g.remove_edge(u, v),
    }
}

/// Applies the reduction rules until none fires. Rules are tried in the fixed
/// order LPN, V0, V1, V2, NPD, NPN, Isolate, Edges, restarting from LPN after
/// every single application. Edge deletions act on `g`, which must be a
/// working copy of the input graph.
pub fn apply_reductions(g: &mut Graph, f: &mut Grdf) -> ReductionTrace {
    let mut trace = ReductionTrace::default();
    while let Some((rule, effects)) = Rule::ORDER
        .iter()
        .find_map(|&r| find_rule(g, f, r).map(|e| (r, e)))
    {
        for effect in effects {
            apply_effect(g, f, effect);
            trace.0.push(ReductionStep { rule, effect });
        }
    }
    trace
}

/// Effects of the first applicable instance of `rule`, if any, without applying them.
pub fn apply_rule(g: &Graph, f: &Grdf, rule: Rule) -> Option<Vec<Effect>> {
    find_rule(g, f, rule)
}

fn find_rule(g: &Graph, f: &Grdf, rule: Rule) -> Option<Vec<Effect>> {
    use Label::*;
    let relabel = |vertex, to| Effect::Relabel { vertex, to };
    match rule {
        Rule::Lpn => {
            let open = f.any_of(&[ZeroOrOne, Active]);
            f.set_of(Two).iter().find_map(|v| {
                let cand = g.neighbors(v).intersection(&open);
                (cand.len() == 1).then(|| vec![relabel(cand.first().unwrap(), Zero)])
            })
        }
        Rule::V0 => {
            let twos = f.set_of(Two);
            let watched = f.any_of(&[Zero, ZeroOrTwo, ZeroOrOne]);
            f.set_of(Zero).iter().find_map(|v| {
                let dominators = g.neighbors(v).intersection(twos);
                if dominators.len() != 1 {
                    return None;
                }
                let u = dominators.first().unwrap();
                let doubly_dominated = g
                    .neighbors(u)
                    .intersection(&watched)
                    .iter()
                    .filter(|&x| x != v)
                    .all(|x| g.neighbors(x).intersection_count(twos) >= 2);
                if !doubly_dominated {
                    return None;
                }
                push_neighbors(g, f, v, (Active, ZeroOrOne), (ZeroOrTwo, Zero))
            })
        }
        Rule::V1 => f
            .set_of(One)
            .iter()
            .find_map(|v| push_neighbors(g, f, v, (Active, ZeroOrOne), (ZeroOrTwo, Zero))),
        Rule::V2 => f
            .set_of(Two)
            .iter()
            .find_map(|v| push_neighbors(g, f, v, (Active, ZeroOrTwo), (ZeroOrOne, Zero))),
        Rule::Npd => {
            let blocked = f.any_of(&[ZeroOrOne, Zero, One]);
            f.set_of(ZeroOrOne)
                .iter()
                .find(|&v| g.neighbors(v).is_subset(&blocked))
                .map(|v| vec![relabel(v, One)])
        }
        Rule::Npn => {
            let settled = f.any_of(&[Zero, ZeroOrTwo]);
            f.set_of(Active)
                .iter()
                .find(|&v| g.neighbors(v).is_subset(&settled))
                .map(|v| vec![relabel(v, ZeroOrOne)])
        }
        Rule::Isolate => {
            if f.count(Active) > 0 {
                return None;
            }
            let deny = f.set_of(ZeroOrOne);
            f.set_of(ZeroOrTwo)
                .iter()
                .find(|&v| g.neighbors(v).is_disjoint(deny))
                .map(|v| vec![relabel(v, Zero)])
        }
        Rule::Edges => {
            let passive = f.any_of(&[ZeroOrOne, Zero, One]);
            let edge = passive.iter().find_map(|u| {
                g.neighbors(u)
                    .intersection(&passive)
                    .first()
                    .map(|v| (u, v))
            });
            edge.map(|(u, v)| vec![Effect::DeleteEdge(u, v)])
        }
    }
}

/// Relabels the neighbors of `v`: those labeled `a.0` become `a.1`, those
/// labeled `b.0` become `b.1`. `None` if there is nothing to relabel.
fn push_neighbors(
    g: &Graph,
    f: &Grdf,
    v: VertexId,
    a: (Label, Label),
    b: (Label, Label),
) -> Option<Vec<Effect>> {
    let effects: Vec<Effect> = g
        .neighbors(v)
        .iter()
        .filter_map(|w| {
            let l = f.label(w);
            let to = if l == a.0 {
                a.1
            } else if l == b.0 {
                b.1
            } else {
                return None;
            };
            Some(Effect::Relabel { vertex: w, to })
        })
        .collect();
    (!effects.is_empty()).then_some(effects)
}

// ---------------------------------------------------------------------------
// Branching

/// Branching priority class (1 highest) and the chosen vertex.
pub fn branch_choice(g: &Graph, f: &Grdf) -> Option<(VertexId, u8)> {
    let active = f.set_of(Label::Active);
    let deny = f.set_of(Label::ZeroOrOne);
    let open = active.union(deny);
    if let Some(v) = active
        .iter()
        .find(|&v| g.neighbors(v).intersection_count(&open) >= 2)
    {
        return Some((v, 1));
    }
    if let Some(v) = active.first() {
        return Some((v, 2));
    }
    let candidates = f.set_of(Label::ZeroOrTwo);
    candidates
        .iter()
        .find(|&v| g.neighbors(v).intersection_count(deny) != 2)
        .or_else(|| candidates.first())
        .map(|v| (v, 3))
}

/// Lowest-id vertex of the highest nonempty priority class.
pub fn pick_branch_vertex(g: &Graph, f: &Grdf) -> Option<VertexId> {
    branch_choice(g, f).map(|(v, _)| v)
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("vertex {0} is neither active nor labeled 1̄")]
pub struct NotBranchable(pub VertexId);

/// Child where `v` takes value 2.
pub fn branch_set_two(f: &Grdf, v: VertexId) -> Result<Grdf, NotBranchable> {
    match f.label(v) {
        Label::Active | Label::ZeroOrTwo => {
            let mut child = f.clone();
            child.set(v, Label::Two);
            Ok(child)
        }
        _ => Err(NotBranchable(v)),
    }
}

/// Child where `v` does not take value 2: active becomes 2̄, 1̄ becomes 0.
pub fn branch_deny_two(f: &Grdf, v: VertexId) -> Result<Grdf, NotBranchable> {
    let to = match f.label(v) {
        Label::Active => Label::ZeroOrOne,
        Label::ZeroOrTwo => Label::Zero,
        _ => return Err(NotBranchable(v)),
    };
    let mut child = f.clone();
    child.set(v, to);
    Ok(child)
}

// ---------------------------------------------------------------------------
// Invariants and phase properties

/// Which of the four node invariants hold at a reduction fixpoint.
pub fn grdf_invariants(g: &Graph, f: &Grdf) -> [bool; 4] {
    use Label::*;
    let twos = f.set_of(Two);
    let i1 = f
        .any_of(&[ZeroOrTwo, Zero])
        .iter()
        .all(|x| g.neighbors(x).intersection_count(twos) > 0);
    let around_two = f.any_of(&[ZeroOrTwo, Zero, Two]);
    let i2 = twos.iter().all(|x| g.neighbors(x).is_subset(&around_two));
    let around_one = f.any_of(&[ZeroOrOne, Zero, One]);
    let i3 = f
        .set_of(One)
        .iter()
        .all(|x| g.neighbors(x).is_subset(&around_one));
    let i4 = f.count(ZeroOrOne) == 0 || f.count(Active) + f.count(ZeroOrTwo) > 0;
    [i1, i2, i3, i4]
}

/// Properties that must hold once branching priority `phase` is exhausted.
/// Phase 0 are the edge conditions holding at every reduction fixpoint.
pub fn check_phase_properties(g: &Graph, f: &Grdf, phase: u8) -> bool {
    use Label::*;
    let active = f.set_of(Active);
    let deny = f.set_of(ZeroOrOne);
    let dominated = f.set_of(ZeroOrTwo);
    match phase {
        0 => {
            let passive = f.any_of(&[Zero, One, ZeroOrOne]);
            let no_edge = |from: &VertexSet, to: &VertexSet| {
                from.iter().all(|u| g.neighbors(u).is_disjoint(to))
            };
            no_edge(&passive, &passive)
                && no_edge(f.set_of(Two), &deny.union(active))
                && no_edge(f.set_of(One), &dominated.union(active))
        }
        1 => {
            let allowed = f.any_of(&[ZeroOrTwo, Zero]);
            active.iter().all(|v| {
                let active_nbrs = g.neighbors(v).intersection(active);
                active_nbrs.is_empty()
                    || (active_nbrs.len() == 1
                        && g.neighbors(v).difference(&active_nbrs).is_subset(&allowed))
            })
        }
        2 => {
            active.is_empty()
                && deny
                    .iter()
                    .all(|x| !g.neighbors(x).is_empty() && g.neighbors(x).is_subset(dominated))
        }
        3 => active.is_empty() && deny.is_empty() && dominated.is_empty(),
        _ => false,
    }
}

// ---------------------------------------------------------------------------
// Enumeration

#[derive(Clone, Copy, Debug)]
pub struct RefinedOptions {
    /// Check node invariants, phase properties and measure decrease at every
    /// node; violations panic.
    pub assert_invariants: bool,
    pub omega1: f64,
    pub omega2: f64,
}

impl Default for RefinedOptions {
    fn default() -> Self {
        RefinedOptions {
            assert_invariants: false,
            omega1: OMEGA_1,
            omega2: OMEGA_2,
        }
    }
}

/// Enumerates every minimal rdf of `g` exactly once, passing each to `sink`.
pub fn enumerate_minimal_rdf_refined(g: &Graph, sink: impl FnMut(&Assignment)) -> EnumStats {
    enumerate_minimal_rdf_refined_with(g, RefinedOptions::default(), sink)
}

pub fn enumerate_minimal_rdf_refined_with(
    g: &Graph,
    opts: RefinedOptions,
    sink: impl FnMut(&Assignment),
) -> EnumStats {
    let mut search = Search {
        original: g,
        work: g.clone(),
        opts,
        stats: EnumStats::default(),
        gap: GapTracker::default(),
        sink,
    };
    search.node(&Grdf::nowhere_defined(g.order()), None);
    let Search {
        mut stats,
        gap,
        work,
        ..
    } = search;
    debug_assert!(&work == g, "working graph not restored");
    stats.finish(gap, g.order());
    stats
}

struct Search<'g, F> {
    original: &'g Graph,
    /// Input graph minus the edges deleted along the current search path.
    work: Graph,
    opts: RefinedOptions,
    stats: EnumStats,
    gap: GapTracker,
    sink: F,
}

impl<F: FnMut(&Assignment)> Search<'_, F> {
    fn node(&mut self, f: &Grdf, parent_priority: Option<u8>) {
        self.stats.tree_nodes += 1;
        if let Some(solution) = f.to_assignment() {
            if self.opts.assert_invariants {
                assert!(check_phase_properties(&self.work, f, 3));
                assert!(
                    is_minimal_rdf(self.original, &solution),
                    "leaf {solution} is not minimal"
                );
            }
            debug_assert!(is_minimal_rdf(self.original, &solution));
            self.stats.solutions += 1;
            self.gap.output();
            (self.sink)(&solution);
            return;
        }
        self.gap.visit();

        let (v, priority) =
            branch_choice(&self.work, f).expect("a non-leaf node always has an active or 1̄ vertex");
        if let Some(parent) = parent_priority {
            if priority > parent {
                self.stats.phase_transitions += 1;
            }
            if self.opts.assert_invariants {
                assert!(priority >= parent, "branching priority went back up");
            }
        }
        if self.opts.assert_invariants {
            for phase in 1..priority {
                assert!(
                    check_phase_properties(&self.work, f, phase),
                    "phase {phase} properties violated at {f:?}"
                );
            }
        }

        let mu = measure(f, self.opts.omega1, self.opts.omega2);
        let children = [
            branch_set_two(f, v).expect("chosen vertex is branchable"),
            branch_deny_two(f, v).expect("chosen vertex is branchable"),
        ];
        for mut child in children {
            let trace = apply_reductions(&mut self.work, &mut child);
            if self.opts.assert_invariants {
                self.check_fixpoint(&child, mu);
            }
            if gen_ext_rd(&project_grdf(self.original, &child)).is_some() {
                self.node(&child, Some(priority));
                self.gap.visit();
            }
            trace.restore_edges(&mut self.work);
        }
    }

    fn check_fixpoint(&self, f: &Grdf, parent_measure: f64) {
        let inv = grdf_invariants(&self.work, f);
        assert!(
            inv.iter().all(|&ok| ok),
            "invariants {inv:?} violated at {f:?}"
        );
        assert!(
            check_phase_properties(&self.work, f, 0),
            "edge conditions violated at {f:?}"
        );
        let mu = measure(f, self.opts.omega1, self.opts.omega2);
        assert!(
            mu < parent_measure,
            "measure did not decrease: {parent_measure} -> {mu}"
        );
    }
}
