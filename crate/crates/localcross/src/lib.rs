//! Exact recognition of graphs that can be drawn with few crossings per edge
//! in two restricted settings:
//!
//! * **2-layer drawings**: the vertices of a bipartite graph are placed on two
//!   parallel lines and edges are drawn as straight segments between them.
//!   A drawing is k-planar if every edge is crossed at most k times.  Both the
//!   one-sided variant (the order of the top layer is fixed) and the two-sided
//!   variant (both orders are free) are supported, plus a weighted one-sided
//!   variant where crossings are charged edge weights instead of units.
//! * **outer (circular) drawings**: all vertices on a circle, edges as chords,
//!   again with at most k crossings per edge.
//!
//! Every YES answer comes with a certificate drawing that can be re-verified
//! by independent pairwise crossing counters.  Brute-force oracles for all
//! three recognizers (and for tree bandwidth) live in [`oracle`] and are used
//! by the test suites to cross-check the solvers on exhaustive small-instance
//! families.  [`reductions`] builds the hardness gadgets that tie these
//! problems to Partition and to tree bandwidth.

pub mod bipartite;
pub mod drawing;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod io;
pub mod one_sided;
pub mod oracle;
pub mod outer;
pub mod reductions;
pub mod render;
pub mod two_sided;

pub use bipartite::{BipartiteInstance, Side};
pub use drawing::{CircularDrawing, LinearLayout, TwoLayerDrawing};
pub use error::Error;
pub use graph::{Edge, Graph};

/// Shared knobs for the dynamic-programming solvers.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// Hard cap on live table entries / states; exceeding it aborts with
    /// [`Error::Resource`] instead of exhausting memory.
    pub table_cap: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { table_cap: 10_000_000 }
    }
}

/// Table statistics reported by the dynamic programs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DpStats {
    /// States materialized over the whole run (checked against the cap).
    pub states_created: usize,
    /// Largest live state count at any single step.
    pub peak_states: usize,
    /// Steps executed (base step included).
    pub steps: usize,
    /// Largest component collection attached to any state (free-order
    /// two-layer solver only; zero elsewhere).
    pub max_components: usize,
}

/// Environment variable honored by the CLI to override
/// [`SolverConfig::table_cap`].
pub const TABLE_CAP_ENV: &str = "LOCALCROSS_TABLE_CAP";
