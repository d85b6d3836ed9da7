//! Polynomial-time extension solvers.
//!
//! All four variants share one saturate / privacy-test / fill procedure:
//!
//! 1. every 1-vertex adjacent to a 2-vertex must itself become 2 (the
//!    standard order allows raising it; under the partial order it cannot be
//!    raised, so the instance is rejected);
//! 2. every 2-vertex needs a private neighbor: `N(v)` (standard) or `N[v]`
//!    (partial order) must not be covered by `N[M2 \ {v}]`;
//! 3. vertices left undominated become 1.

use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::rdf::{Assignment, ModelError, Order};
use crate::refined::{Grdf, Label};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExtensionError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("forbidden set has capacity {got}, graph has order {expected}")]
    ForbiddenSize { expected: usize, got: usize },
    #[error("vertex {0} is valued 2 but also forbidden from being 2")]
    ForbiddenTwo(usize),
}

/// A generalized extension query: is there a minimal rdf above `f` whose
/// 2-vertices avoid `forbidden`?
#[derive(Clone, Debug)]
pub struct ExtensionInstance<'g> {
    graph: &'g Graph,
    f: Assignment,
    forbidden: VertexSet,
}

impl<'g> ExtensionInstance<'g> {
    pub fn new(
        graph: &'g Graph,
        f: Assignment,
        forbidden: VertexSet,
    ) -> Result<Self, ExtensionError> {
        f.check_order(graph)?;
        if forbidden.capacity() != graph.order() {
            return Err(ExtensionError::ForbiddenSize {
                expected: graph.order(),
                got: forbidden.capacity(),
            });
        }
        if let Some(v) = f.level(2).intersection(&forbidden).first() {
            return Err(ExtensionError::ForbiddenTwo(v));
        }
        Ok(ExtensionInstance {
            graph,
            f,
            forbidden,
        })
    }

    /// Instance with an empty forbidden set.
    pub fn unrestricted(graph: &'g Graph, f: Assignment) -> Result<Self, ExtensionError> {
        Self::new(graph, f, VertexSet::new(graph.order()))
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn assignment(&self) -> &Assignment {
        &self.f
    }

    pub fn forbidden(&self) -> &VertexSet {
        &self.forbidden
    }
}

/// Decides whether `f` extends to a minimal rdf (`f <= f~` pointwise).
/// Returns the witness constructed along the way.
pub fn ext_rd(g: &Graph, f: &Assignment) -> Option<Assignment> {
    solve(g, f, None, Order::Standard)
}

/// Like [`ext_rd`], but the witness must not assign 2 to a forbidden vertex.
pub fn gen_ext_rd(inst: &ExtensionInstance) -> Option<Assignment> {
    solve(inst.graph, &inst.f, Some(&inst.forbidden), Order::Standard)
}

/// Decides whether `f` extends (in the partial-order sense: 1 stays 1, 2 stays 2)
/// to a PO-minimal rdf.
pub fn ext_po_rd(g: &Graph, f: &Assignment) -> Option<Assignment> {
    solve(g, f, None, Order::Po)
}

pub fn gen_ext_po_rd(inst: &ExtensionInstance) -> Option<Assignment> {
    solve(inst.graph, &inst.f, Some(&inst.forbidden), Order::Po)
}

pub fn extend(inst: &ExtensionInstance, order: Order) -> Option<Assignment> {
    solve(inst.graph, &inst.f, Some(&inst.forbidden), order)
}

fn solve(
    g: &Graph,
    f: &Assignment,
    forbidden: Option<&VertexSet>,
    order: Order,
) -> Option<Assignment> {
    debug_assert_eq!(f.len(), g.order());
    let mut ext = f.clone();
    let mut twos = f.level(2);
    let mut pending = twos.clone();

    // Pick the lowest pending id each round.
    while let Some(v) = pending.first() {
        for u in g.neighbors(v).iter() {
            if ext.get(u) != 1 {
                continue;
            }
            if order == Order::Po || forbidden.is_some_and(|s| s.contains(u)) {
                return None;
            }
            ext.set(u, 2);
            pending.insert(u);
            twos.insert(u);
        }
        pending.remove(v);
    }

    for v in twos.iter() {
        let mut others = twos.clone();
        others.remove(v);
        let covered = g.closed_neighborhood(&others);
        let needs_private = match order {
            Order::Standard => g.neighbors(v).clone(),
            Order::Po => g.closed_neighbors(v),
        };
        if needs_private.is_subset(&covered) {
            return None;
        }
    }

    let dominated = g.closed_neighborhood(&twos);
    for v in g.vertices().filter(|&v| !dominated.contains(v)) {
        ext.set(v, 1);
    }
    Some(ext)
}

/// The extension query attached to a search node: A, V0, 1̄ and 2̄ map to 0,
/// V1 to 1, V2 to 2, and the 2̄-vertices are forbidden from becoming 2.
pub fn project_grdf<'g>(g: &'g Graph, f: &Grdf) -> ExtensionInstance<'g> {
    let values = (0..f.len())
        .map(|v| match f.label(v) {
            Label::One => 1,
            Label::Two => 2,
            _ => 0,
        })
        .collect();
    ExtensionInstance {
        graph: g,
        f: Assignment::new(values).expect("values are in range"),
        forbidden: f.set_of(Label::ZeroOrOne).clone(),
    }
}
