//! O*(2^n) enumerators driven by the choice of the 2-vertices.
//!
//! A minimal rdf is determined by its set of 2-vertices, so the standard-order
//! enumerator walks candidate sets directly. The PO enumerator walks a binary
//! include/exclude tree over the vertices and prunes with the PO extension
//! test, which gives polynomial delay.

use crate::extension::{gen_ext_po_rd, ExtensionInstance};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::rdf::Assignment;
use crate::stats::{EnumStats, GapTracker};

/// The unique minimal rdf whose 2-vertices are exactly `v2`: 2 on `v2`, 0 on
/// `N[v2] \ v2`, 1 elsewhere. `None` unless every `v` in `v2` has a private
/// neighbor other than itself.
pub fn extend_from_v2(g: &Graph, v2: &VertexSet) -> Option<Assignment> {
    for v in v2.iter() {
        let mut others = v2.clone();
        others.remove(v);
        let covered = g.closed_neighborhood(&others);
        if g.neighbors(v).is_subset(&covered) {
            return None;
        }
    }
    let dominated = g.closed_neighborhood(v2);
    let values = g
        .vertices()
        .map(|v| match (v2.contains(v), dominated.contains(v)) {
            (true, _) => 2,
            (false, true) => 0,
            (false, false) => 1,
        })
        .collect();
    Some(Assignment::new(values).expect("values are in range"))
}

/// Enumerates all minimal rdfs in ascending bit-pattern order of their
/// 2-vertex sets (vertex 0 least significant). Sets larger than `n/2` are
/// skipped without being examined.
pub fn enumerate_minimal_rdf_simple(g: &Graph, mut sink: impl FnMut(&Assignment)) -> EnumStats {
    let n = g.order();
    let mut stats = EnumStats::default();
    let mut gap = GapTracker::default();
    let mut v2 = VertexSet::new(n);
    loop {
        if 2 * v2.len() <= n {
            stats.tree_nodes += 1;
            gap.visit();
            if let Some(f) = extend_from_v2(g, &v2) {
                stats.solutions += 1;
                gap.output();
                sink(&f);
            }
        }
        if !v2.increment() {
            break;
        }
    }
    stats.finish(gap, n);
    stats
}

/// Enumerates all PO-minimal rdfs. Vertices are decided in ascending id
/// order, "is a 2-vertex" first, and a child is entered only if the PO
/// extension test accepts it.
pub fn enumerate_po_minimal_simple(g: &Graph, sink: impl FnMut(&Assignment)) -> EnumStats {
    let n = g.order();
    let mut search = PoSearch {
        g,
        chosen: Assignment::constant(n, 0),
        excluded: VertexSet::new(n),
        stats: EnumStats::default(),
        gap: GapTracker::default(),
        sink,
    };
    search.node(0);
    let PoSearch { mut stats, gap, .. } = search;
    stats.finish(gap, n);
    stats
}

struct PoSearch<'g, F> {
    g: &'g Graph,
    /// 2 on the vertices decided to be 2-vertices, 0 elsewhere.
    chosen: Assignment,
    excluded: VertexSet,
    stats: EnumStats,
    gap: GapTracker,
    sink: F,
}

impl<F: FnMut(&Assignment)> PoSearch<'_, F> {
    fn test(&self) -> Option<Assignment> {
        let inst = ExtensionInstance::new(self.g, self.chosen.clone(), self.excluded.clone())
            .expect("chosen and excluded vertices are disjoint");
        gen_ext_po_rd(&inst)
    }

    fn node(&mut self, next: VertexId) {
        self.stats.tree_nodes += 1;
        if next == self.g.order() {
            let f = self.test().expect("only accepted nodes are entered");
            self.stats.solutions += 1;
            self.gap.output();
            (self.sink)(&f);
            return;
        }
        self.gap.visit();

        self.chosen.set(next, 2);
        if self.test().is_some() {
            self.node(next + 1);
            self.gap.visit();
        }
        self.chosen.set(next, 0);

        self.excluded.insert(next);
        if self.test().is_some() {
            self.node(next + 1);
            self.gap.visit();
        }
        self.excluded.remove(next);
    }
}
