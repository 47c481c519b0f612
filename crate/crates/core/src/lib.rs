//! Reference cascades over citation networks.
//!
//! A reference cascade collects a focal paper, its references, their
//! references and so on, layered into generations by shortest citing-path
//! distance. The same engine walks citations for forward cascades. On top of
//! the cascades sit per-generation width and topic relevance, cohort
//! distribution reports, and a bounded-generation recommender.

pub mod analytics;
pub mod cascade;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod recommend;
pub mod relevance;
pub mod report;
pub mod snapshot;
pub mod synth;

pub use analytics::{
    run_cohort, select_cohort, Cohort, CohortOptions, CohortReport, GenerationStats,
};
pub use cascade::{ancestors, build_cascade, cascade_width, Cascade, CascadeBuilder, Direction};
pub use corpus::{Corpus, DanglingPolicy, IngestOptions, NodeId, PaperRecord};
pub use error::{Error, Result};
pub use graph::CitationGraph;
pub use recommend::{recommend, RecommendOptions, Recommendation};
pub use relevance::{
    generation_relevance, jaccard, truncate_code, CodeLevel, CodeTable, RelevanceConfig,
};
pub use snapshot::Snapshot;
pub use synth::{generate, SynthParams};
