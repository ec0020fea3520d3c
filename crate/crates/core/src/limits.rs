//! Search and size budgets shared by the exponential algorithms.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Budgets that turn runaway searches into [`Error::BudgetExceeded`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Search nodes for matching and linear-quotient searches.
    pub nodes: u64,
    /// Faces materialized for one homology computation.
    pub faces: usize,
    /// Elements of one lcm lattice.
    pub lattice: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { nodes: 10_000_000, faces: 1 << 22, lattice: 1 << 20 }
    }
}

impl Limits {
    /// Defaults overridden by `SFP_NODE_BUDGET`, `SFP_FACE_BUDGET` and
    /// `SFP_LATTICE_BUDGET` when set to a positive integer.
    pub fn from_env() -> Self {
        let mut l = Limits::default();
        let read = |key: &str| std::env::var(key).ok().and_then(|v| v.trim().parse::<u64>().ok()).filter(|&v| v > 0);
        if let Some(v) = read("SFP_NODE_BUDGET") {
            l.nodes = v;
        }
        if let Some(v) = read("SFP_FACE_BUDGET") {
            l.faces = v as usize;
        }
        if let Some(v) = read("SFP_LATTICE_BUDGET") {
            l.lattice = v as usize;
        }
        l
    }

    /// Process-wide limits, read from the environment once.
    pub fn global() -> &'static Limits {
        static GLOBAL: OnceLock<Limits> = OnceLock::new();
        GLOBAL.get_or_init(Limits::from_env)
    }
}

/// Counts search nodes against a budget.
#[derive(Debug)]
pub struct NodeCounter {
    used: u64,
    limit: u64,
}

impl NodeCounter {
    pub fn new(limit: u64) -> Self {
        NodeCounter { used: 0, limit }
    }

    #[inline]
    pub fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::BudgetExceeded { what: "search node", limit: self.limit })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}
