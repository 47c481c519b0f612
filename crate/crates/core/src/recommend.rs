//! Literature recommendation from a bounded-generation reference cascade.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::cascade::{CascadeBuilder, Direction};
use crate::corpus::{Corpus, NodeId};
use crate::error::{Error, Result};
use crate::graph::CitationGraph;
use crate::relevance::{overlap_sorted, CodeTable, EmptyCodePolicy, RelevanceConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Recommendation {
    pub paper: String,
    pub generation: u32,
    pub relevance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecommendOptions {
    pub max_generation: u32,
    pub min_relevance: f64,
    pub top_k: Option<usize>,
    /// Drop generation-1 papers (the focal paper's own references).
    pub exclude_direct: bool,
    pub relevance: RelevanceConfig,
}

impl Default for RecommendOptions {
    fn default() -> Self {
        RecommendOptions {
            max_generation: 4,
            min_relevance: 0.2,
            top_k: None,
            exclude_direct: false,
            relevance: RelevanceConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecommendStatus {
    Ok,
    /// The focal paper has no codes, so relevance is undefined for every candidate.
    FocalHasNoCodes,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecommendResult {
    pub focal: String,
    pub status: RecommendStatus,
    pub items: Vec<Recommendation>,
}

/// Ranks papers in backward generations `1..=max_generation` of `focal` by
/// Jaccard relevance, then generation, then external id.
pub fn recommend(
    graph: &CitationGraph,
    corpus: &Corpus,
    focal: NodeId,
    options: &RecommendOptions,
) -> Result<RecommendResult> {
    let table = CodeTable::new(corpus, options.relevance.code_level);
    recommend_with_table(graph, &table, focal, options)
}

/// As [`recommend`], reusing a prebuilt code table (its level must match).
pub fn recommend_with_table(
    graph: &CitationGraph,
    table: &CodeTable,
    focal: NodeId,
    options: &RecommendOptions,
) -> Result<RecommendResult> {
    graph.check_node(focal)?;
    if options.max_generation < 1 {
        return Err(Error::Usage("max_generation must be at least 1".into()));
    }
    if table.level() != options.relevance.code_level {
        return Err(Error::Usage(
            "code table level does not match options".into(),
        ));
    }
    let focal_id = graph.label(focal).to_string();
    let focal_codes = table.codes(focal);
    if focal_codes.is_empty() {
        return Ok(RecommendResult {
            focal: focal_id,
            status: RecommendStatus::FocalHasNoCodes,
            items: Vec::new(),
        });
    }
    let cascade = CascadeBuilder::new(graph.node_count()).build(
        graph,
        focal,
        Direction::Backward,
        Some(options.max_generation),
    )?;
    let first = if options.exclude_direct { 2 } else { 1 };
    let mut items = Vec::new();
    for (generation, layer) in cascade.layers().enumerate().skip(first) {
        for &p in layer {
            let codes = table.codes(p);
            if codes.is_empty() && options.relevance.empty_code_policy == EmptyCodePolicy::Exclude {
                continue;
            }
            let Some(relevance) = overlap_sorted(focal_codes, codes).ratio() else {
                continue;
            };
            if relevance >= options.min_relevance {
                items.push(Recommendation {
                    paper: graph.label(p).to_string(),
                    generation: generation as u32,
                    relevance,
                });
            }
        }
    }
    items.sort_by(|a, b| {
        b.relevance
            .partial_cmp(&a.relevance)
            .unwrap_or(Ordering::Equal)
            .then(a.generation.cmp(&b.generation))
            .then_with(|| a.paper.cmp(&b.paper))
    });
    if let Some(k) = options.top_k {
        items.truncate(k);
    }
    Ok(RecommendResult {
        focal: focal_id,
        status: RecommendStatus::Ok,
        items,
    })
}

/// CSV with header `rank,external_id,generation,relevance`; ranks start at 1.
pub fn to_csv(items: &[Recommendation]) -> String {
    let mut out = String::from("rank,external_id,generation,relevance\n");
    for (i, r) in items.iter().enumerate() {
        out.push_str(&format!(
            "{},{},{},{}\n",
            i + 1,
            csv_field(&r.paper),
            r.generation,
            r.relevance
        ));
    }
    out
}

pub(crate) fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
