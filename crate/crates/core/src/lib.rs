//! Estimating the number of nodes of a graph from a sample of its nodes.
//!
//! Samples come from uniform draws ([`sample_uis`]), weighted draws
//! ([`sample_wis`]) or random walks ([`sample_rw`], [`sample_rw_multi`]).
//! Estimators either count repeated nodes ([`node`]) or count edges and
//! neighbor matches among the sampled nodes ([`induced`]). Walk samples are
//! correlated; [`walk`] removes the correlation by thinning or by ignoring
//! close pairs.

pub mod error;
pub mod estimator;
pub mod experiment;
pub mod generate;
pub mod graph;
pub mod induced;
pub mod node;
pub mod report;
pub mod sample;
pub mod sample_file;
pub mod star;
pub mod walk;

pub use error::{Error, Result};
pub use estimator::{AuxMode, AuxiliarySet, EstimateOutcome, RatioEstimate};
pub use graph::{Graph, GraphBuilder, NodeId};
pub use sample::{sample_rw, sample_rw_multi, sample_uis, sample_wis, Method, Sample, SampleRecord, WeightRule};
