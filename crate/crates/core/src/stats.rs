use serde::{Deserialize, Serialize};

/// Base of the worst-case running-time bound of the refined enumerator.
pub const REFINED_BASE: f64 = 1.9332;

/// Per-run counters reported by every enumerator.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct EnumStats {
    pub solutions: u64,
    /// Search-tree nodes (candidate subsets for the subset enumerator).
    pub tree_nodes: u64,
    /// Largest number of inner nodes visited between two consecutive outputs,
    /// counting the stretch before the first and after the last output.
    pub max_gap: u64,
    /// `tree_nodes / 1.9332^n`.
    pub max_measure_ratio: f64,
    /// Branchings whose priority class dropped below the parent's.
    pub phase_transitions: u64,
}

impl EnumStats {
    pub(crate) fn finish(&mut self, gap: GapTracker, n: usize) {
        self.max_gap = gap.finish();
        self.max_measure_ratio = self.tree_nodes as f64 / REFINED_BASE.powi(n as i32);
    }

    pub fn to_json(&self, wall_ms: u64) -> StatsJson {
        StatsJson {
            solutions: self.solutions,
            tree_nodes: self.tree_nodes,
            max_gap: self.max_gap,
            wall_ms,
        }
    }
}

/// Wire form of [`EnumStats`] emitted by `enumerate --stats json`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsJson {
    pub solutions: u64,
    pub tree_nodes: u64,
    pub max_gap: u64,
    pub wall_ms: u64,
}

/// Tracks the number of inner nodes visited since the last output.
#[derive(Clone, Debug, Default)]
pub(crate) struct GapTracker {
    current: u64,
    max: u64,
}

impl GapTracker {
    pub fn visit(&mut self) {
        self.current += 1;
    }

    pub fn output(&mut self) {
        self.max = self.max.max(self.current);
        self.current = 0;
    }

    pub fn finish(self) -> u64 {
        self.max.max(self.current)
    }
}
