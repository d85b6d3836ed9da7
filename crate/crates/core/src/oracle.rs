//! Brute-force ground truth straight from the definitions: sweep all 3^n
//! assignments, keep the rdfs, and keep an rdf iff no other rdf lies below it.
//! Nothing here calls into the characterization checkers of [`crate::rdf`].

use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::rdf::{Assignment, Order};

pub const DEFAULT_CAP: usize = 12;

/// Upper bound on `cap`: assignments are packed into 64-bit masks.
const MAX_CAP: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph of order {n} exceeds the brute-force cap of {cap} vertices")]
    CapExceeded { n: usize, cap: usize },
}

/// An assignment packed as two masks: vertices valued at least 1, and vertices valued 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Packed {
    pos: u64,
    two: u64,
}

impl Packed {
    fn below(self, other: Packed, order: Order) -> bool {
        match order {
            // g <= f pointwise under 0 < 1 < 2.
            Order::Standard => self.pos & !other.pos == 0 && self.two & !other.two == 0,
            // Every 1 of g is a 1 of f, every 2 of g is a 2 of f.
            Order::Po => {
                let (g1, f1) = (self.pos & !self.two, other.pos & !other.two);
                g1 & !f1 == 0 && self.two & !other.two == 0
            }
        }
    }

    fn unpack(self, n: usize) -> Assignment {
        let values = (0..n)
            .map(|v| ((self.pos >> v) & 1) as u8 + ((self.two >> v) & 1) as u8)
            .collect();
        Assignment::new(values).expect("values are in range")
    }

    fn pack(f: &Assignment) -> Packed {
        let mut p = Packed { pos: 0, two: 0 };
        for (v, &x) in f.values().iter().enumerate() {
            if x >= 1 {
                p.pos |= 1 << v;
            }
            if x == 2 {
                p.two |= 1 << v;
            }
        }
        p
    }
}

/// All minimal rdfs of one graph under one order, computed once and queried
/// repeatedly.
#[derive(Clone, Debug)]
pub struct BruteOracle {
    n: usize,
    order: Order,
    minimal: Vec<Packed>,
}

impl BruteOracle {
    pub fn new(g: &Graph, order: Order) -> Result<Self, OracleError> {
        Self::with_cap(g, order, DEFAULT_CAP)
    }

    pub fn with_cap(g: &Graph, order: Order, cap: usize) -> Result<Self, OracleError> {
        let n = g.order();
        if n > cap.min(MAX_CAP) {
            return Err(OracleError::CapExceeded {
                n,
                cap: cap.min(MAX_CAP),
            });
        }
        let neighbor_masks: Vec<u64> = g
            .vertices()
            .map(|v| g.neighbors(v).iter().fold(0u64, |m, u| m | 1 << u))
            .collect();

        let mut rdfs = Vec::new();
        let mut digits = vec![0u8; n];
        loop {
            let mut p = Packed { pos: 0, two: 0 };
            for (v, &d) in digits.iter().enumerate() {
                if d >= 1 {
                    p.pos |= 1 << v;
                }
                if d == 2 {
                    p.two |= 1 << v;
                }
            }
            let all_zeros_covered = (0..n)
                .filter(|&v| digits[v] == 0)
                .all(|v| neighbor_masks[v] & p.two != 0);
            if all_zeros_covered {
                rdfs.push(p);
            }
            if !next_ternary(&mut digits) {
                break;
            }
        }

        let minimal = rdfs
            .iter()
            .copied()
            .filter(|&f| !rdfs.iter().any(|&g| g != f && g.below(f, order)))
            .collect();
        Ok(BruteOracle { n, order, minimal })
    }

    /// Minimal rdfs sorted by their string form.
    pub fn minimal_rdfs(&self) -> Vec<Assignment> {
        let mut out: Vec<Assignment> = self.minimal.iter().map(|p| p.unpack(self.n)).collect();
        out.sort_by_key(|f| f.to_string());
        out
    }

    pub fn count(&self) -> usize {
        self.minimal.len()
    }

    /// Is some minimal rdf above `f` (in this oracle's order) with no 2 on `forbidden`?
    pub fn extends(&self, f: &Assignment, forbidden: &VertexSet) -> bool {
        let below = Packed::pack(f);
        let forbidden = forbidden.iter().fold(0u64, |m, v| m | 1 << v);
        self.minimal
            .iter()
            .any(|&h| below.below(h, self.order) && h.two & forbidden == 0)
    }
}

/// Odometer increment over base-3 digits; false after the last assignment.
fn next_ternary(digits: &mut [u8]) -> bool {
    for d in digits.iter_mut() {
        if *d < 2 {
            *d += 1;
            return true;
        }
        *d = 0;
    }
    false
}

pub fn brute_minimal_rdfs(g: &Graph, order: Order) -> Result<Vec<Assignment>, OracleError> {
    Ok(BruteOracle::new(g, order)?.minimal_rdfs())
}

pub fn brute_ext(
    g: &Graph,
    f: &Assignment,
    forbidden: &VertexSet,
    order: Order,
) -> Result<bool, OracleError> {
    Ok(BruteOracle::new(g, order)?.extends(f, forbidden))
}
