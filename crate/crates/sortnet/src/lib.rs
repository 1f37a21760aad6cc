//! Sorting-network toolkit: synthesis of minimal-depth networks and depth
//! lower bounds via SAT, plus verification, prefix generation and rendering.
//!
//! The pieces fit together like this:
//!
//! * [`net`] models comparator networks and verifies them against all binary
//!   inputs (0-1 principle) with bit-parallel evaluation.
//! * [`prefix`] generates the fixed first layers of a synthesis problem
//!   (adjacent-pair and reflected first layers, green filters, two-layer
//!   representatives modulo symmetry) and optimizes them with a small
//!   evolutionary search over channel permutations.
//! * [`encode`] turns "a depth-`d` network extending prefix `P` sorts input
//!   set `X`" into CNF, in an original and an improved flavor, and emits
//!   DIMACS plus a variable-map sidecar.
//! * [`solver`] decides satisfiability with an embedded CDCL solver or any
//!   external DIMACS solver.
//! * [`synth`] runs the counterexample loop (solve, decode, verify, add the
//!   minimal-window failures) and the prefix-sweep lower-bound driver.
//! * [`catalog`] ships known networks and the bounds table.

pub mod bits;
pub mod catalog;
pub mod encode;
pub mod error;
pub(crate) mod hash;
pub mod net;
pub mod prefix;
pub mod render;
pub mod rng;
pub mod solver;
pub mod synth;

pub use bits::{BitVector, Window};
pub use error::{Error, Result};
pub use net::{Comparator, ComparatorNetwork, Layer, OutputSet, Verdict, EXHAUSTIVE_LIMIT};
pub use prefix::{EaConfig, Prefix, PrefixLabel};

#[cfg(test)]
pub(crate) mod testutil {
    use crate::net::ComparatorNetwork;

    /// The classic 4-channel, depth-3, 5-comparator example network.
    pub fn example4() -> ComparatorNetwork {
        ComparatorNetwork::from_pairs(4, &[&[(1, 2), (3, 4)], &[(1, 3), (2, 4)], &[(2, 3)]])
            .unwrap()
    }
}
