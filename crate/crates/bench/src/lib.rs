//! Benchmark inputs shared by the criterion benches.

use odometry_core::{fixtures, Graph};

/// Named graphs of increasing size with nontrivial block structure.
pub fn named_inputs() -> Vec<(&'static str, Graph)> {
    vec![
        ("k4", fixtures::k4().graph().clone()),
        ("petersen", fixtures::petersen().graph().clone()),
        ("k4_bridge", fixtures::k4_bridge().graph().clone()),
        ("chain_of_6_k4s", fixtures::chain_of_k4s(6).graph().clone()),
        ("bridge_tree", fixtures::bridge_tree().graph().clone()),
    ]
}
