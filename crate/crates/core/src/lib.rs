//! t-tone graph colouring.
//!
//! A t-tone k-colouring assigns each vertex a t-subset of `{1, ..., k}` so
//! that vertices at distance `d` share fewer than `d` colours. This crate
//! provides the verifier, exact oracles for small graphs, constructive
//! colourers for forests, dense random graphs (mutually respecting
//! partitions) and sparse graphs (high-degree core plus greedy extension),
//! seeded random instance generators, and the experiment drivers behind the
//! `tonelab` CLI.
//!
//! Data-parallel loops run on rayon when the default `parallel` feature is
//! enabled and fall back to sequential iteration otherwise; results are
//! identical either way.

pub mod dense;
pub mod exact;
pub mod experiments;
pub mod graph;
pub mod io;
pub mod par;
pub mod random;
pub mod sparse;
pub mod tone;
pub mod tree;

pub use graph::{Graph, Vertex};
pub use tone::{kappa, verify, Color, Label, Partition, ToneColoring, Verdict, Violation};
