//! Assignments `V -> {0,1,2}`, their level sets, and the minimality checkers
//! for the pointwise order `0 < 1 < 2` and for the partial order in which 1 and
//! 2 are incomparable.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Graph, VertexId, VertexSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("invalid assignment character {ch:?} at position {pos}; expected 0, 1 or 2")]
    BadChar { ch: char, pos: usize },
    #[error("assignment has length {got}, graph has order {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("vertex {0} is not in the set")]
    NotInSet(VertexId),
    #[error("value {0} is not one of 0, 1, 2")]
    BadValue(u8),
}

/// Which pointwise order minimality refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    /// Lifted from the linear order `0 < 1 < 2`.
    Standard,
    /// Lifted from `0 < 1`, `0 < 2`, with 1 and 2 incomparable.
    Po,
}

/// A total function from the vertices to `{0, 1, 2}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(Vec<u8>);

impl Assignment {
    pub fn new(values: Vec<u8>) -> Result<Self, ModelError> {
        if let Some(&bad) = values.iter().find(|&&x| x > 2) {
            return Err(ModelError::BadValue(bad));
        }
        Ok(Assignment(values))
    }

    pub fn constant(n: usize, value: u8) -> Self {
        assert!(value <= 2, "value out of range");
        Assignment(vec![value; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: VertexId) -> u8 {
        self.0[v]
    }

    pub fn set(&mut self, v: VertexId, value: u8) {
        assert!(value <= 2, "value out of range");
        self.0[v] = value;
    }

    pub fn values(&self) -> &[u8] {
        &self.0
    }

    /// V_i(f) for `i` in {0, 1, 2}.
    pub fn level(&self, value: u8) -> VertexSet {
        VertexSet::from_vertices(
            self.len(),
            self.0
                .iter()
                .enumerate()
                .filter(|(_, &x)| x == value)
                .map(|(v, _)| v),
        )
    }

    pub fn level_sets(&self) -> LevelSets {
        LevelSets {
            v0: self.level(0),
            v1: self.level(1),
            v2: self.level(2),
        }
    }

    /// |V1| + 2|V2|.
    pub fn weight(&self) -> usize {
        self.0.iter().map(|&x| x as usize).sum()
    }

    /// Checks the assignment length against the graph order.
    pub fn check_order(&self, g: &Graph) -> Result<(), ModelError> {
        if self.len() != g.order() {
            return Err(ModelError::LengthMismatch {
                expected: g.order(),
                got: self.len(),
            });
        }
        Ok(())
    }
}

impl FromStr for Assignment {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .enumerate()
            .map(|(pos, ch)| match ch {
                '0' => Ok(0),
                '1' => Ok(1),
                '2' => Ok(2),
                _ => Err(ModelError::BadChar { ch, pos }),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Assignment)
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &x in &self.0 {
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

/// The partition V = V0 ⊎ V1 ⊎ V2 induced by an assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelSets {
    pub v0: VertexSet,
    pub v1: VertexSet,
    pub v2: VertexSet,
}

pub fn weight(f: &Assignment) -> usize {
    f.weight()
}

/// Every 0-vertex has a neighbor valued 2.
pub fn is_rdf(g: &Graph, f: &Assignment) -> bool {
    let v2 = f.level(2);
    g.vertices()
        .filter(|&v| f.get(v) == 0)
        .all(|v| g.neighbors(v).intersection_count(&v2) > 0)
}

/// P_{G,D}(v) = N[v] \ N[D \ {v}].
pub fn private_neighbors(g: &Graph, d: &VertexSet, v: VertexId) -> Result<VertexSet, ModelError> {
    if !d.contains(v) {
        return Err(ModelError::NotInSet(v));
    }
    let mut others = d.clone();
    others.remove(v);
    Ok(g.closed_neighbors(v)
        .difference(&g.closed_neighborhood(&others)))
}

/// The three conditions of the minimal-rdf characterization, evaluated separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    /// N[V2] ∩ V1 = ∅.
    pub twos_avoid_ones: bool,
    /// Every 2-vertex has a private neighbor other than itself in G[V0 ∪ V2].
    pub privacy: bool,
    /// V2 is a minimal dominating set of G[V0 ∪ V2].
    pub minimal_dominating: bool,
}

impl ConditionReport {
    pub fn minimal(&self, order: Order) -> bool {
        match order {
            Order::Standard => self.twos_avoid_ones && self.privacy && self.minimal_dominating,
            Order::Po => self.twos_avoid_ones && self.minimal_dominating,
        }
    }

    /// Names of the failing conditions relevant for `order`.
    pub fn failures(&self, order: Order) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.twos_avoid_ones {
            out.push("N[V2]∩V1");
        }
        if order == Order::Standard && !self.privacy {
            out.push("privacy condition");
        }
        if !self.minimal_dominating {
            out.push("minimal dominating set");
        }
        out
    }
}

/// Evaluates the characterization conditions of `f` on `g`.
pub fn check_conditions(g: &Graph, f: &Assignment) -> ConditionReport {
    let LevelSets { v0, v1, v2 } = f.level_sets();
    let twos_avoid_ones = g.closed_neighborhood(&v2).is_disjoint(&v1);

    let support = v0.union(&v2);
    let induced = induced_subgraph(g, &support);
    let private: Vec<VertexSet> = v2
        .iter()
        .map(|v| private_neighbors(&induced, &v2, v).expect("v is in V2"))
        .collect();

    let privacy = private
        .iter()
        .zip(v2.iter())
        .all(|(p, v)| p.iter().any(|u| u != v));
    let dominates = support.is_subset(&induced.closed_neighborhood(&v2));
    let minimal_dominating = dominates && private.iter().all(|p| !p.is_empty());

    ConditionReport {
        twos_avoid_ones,
        privacy,
        minimal_dominating,
    }
}

/// The subgraph induced by `keep`, on the same vertex ids (other vertices become isolated).
pub fn induced_subgraph(g: &Graph, keep: &VertexSet) -> Graph {
    Graph::from_edges(
        g.order(),
        g.edges()
            .filter(|&(u, v)| keep.contains(u) && keep.contains(v)),
    )
    .expect("edges of g are valid")
}

pub fn is_minimal_rdf(g: &Graph, f: &Assignment) -> bool {
    check_conditions(g, f).minimal(Order::Standard)
}

pub fn is_po_minimal_rdf(g: &Graph, f: &Assignment) -> bool {
    check_conditions(g, f).minimal(Order::Po)
}

pub fn is_minimal(g: &Graph, f: &Assignment, order: Order) -> bool {
    check_conditions(g, f).minimal(order)
}

/// Pointwise `f <= h` under `0 < 1 < 2`.
pub fn leq_standard(f: &Assignment, h: &Assignment) -> bool {
    f.len() == h.len() && f.values().iter().zip(h.values()).all(|(a, b)| a <= b)
}

/// Pointwise `f <= h` under `0 < 1, 0 < 2`.
pub fn leq_po(f: &Assignment, h: &Assignment) -> bool {
    f.len() == h.len()
        && f.values()
            .iter()
            .zip(h.values())
            .all(|(&a, &b)| a == 0 || a == b)
}

pub fn leq(f: &Assignment, h: &Assignment, order: Order) -> bool {
    match order {
        Order::Standard => leq_standard(f, h),
        Order::Po => leq_po(f, h),
    }
}
