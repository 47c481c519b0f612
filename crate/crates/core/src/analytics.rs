//! Cohort selection and the cohort-level distribution analyses.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cascade::{cascade_width, Cascade, CascadeBuilder, Direction};
use crate::corpus::{Corpus, NodeId};
use crate::error::{Error, Result};
use crate::graph::CitationGraph;
use crate::relevance::{cascade_scores, CodeTable, GenerationScore, RelevanceConfig};

/// A set of focal papers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cohort {
    pub name: String,
    pub focal_nodes: Vec<NodeId>,
    pub selector: String,
}

impl Cohort {
    /// Cohort from an explicit node list; sorts and deduplicates.
    pub fn from_nodes(name: impl Into<String>, mut nodes: Vec<NodeId>) -> Self {
        nodes.sort_unstable();
        nodes.dedup();
        Cohort {
            name: name.into(),
            focal_nodes: nodes,
            selector: "explicit".into(),
        }
    }

    pub fn len(&self) -> usize {
        self.focal_nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.focal_nodes.is_empty()
    }
}

/// Papers carrying at least one code that starts with `code_prefix`.
pub fn select_cohort(corpus: &Corpus, code_prefix: &str) -> Result<Cohort> {
    if code_prefix.is_empty() {
        return Err(Error::Usage("cohort code prefix must be nonempty".into()));
    }
    let focal_nodes = corpus
        .papers()
        .iter()
        .enumerate()
        .filter(|(_, p)| p.codes.iter().any(|c| c.starts_with(code_prefix)))
        .map(|(i, _)| i as NodeId)
        .collect();
    Ok(Cohort {
        name: format!("prefix-{code_prefix}"),
        focal_nodes,
        selector: format!("code prefix `{code_prefix}`"),
    })
}

/// Number of cascades per depth value.
pub fn depth_distribution(depths: impl IntoIterator<Item = u32>) -> BTreeMap<u32, u64> {
    let mut out = BTreeMap::new();
    for d in depths {
        *out.entry(d).or_insert(0) += 1;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum Binning {
    /// `bins` geometrically spaced bins from the smallest size to the largest.
    Log { bins: usize },
    /// Fixed-width bins starting at 0.
    Linear { width: f64 },
    /// Caller-supplied strictly increasing edges.
    Explicit { edges: Vec<f64> },
}

/// Bins are half-open `[lo, hi)` except the last, which is closed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
}

impl Histogram {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    fn bin_of(&self, value: f64) -> Option<usize> {
        let n = self.counts.len();
        if value < self.edges[0] || value > self.edges[n] {
            return None;
        }
        let pp = self.edges.partition_point(|&e| e <= value);
        Some((pp - 1).min(n - 1))
    }
}

fn snap(e: f64) -> f64 {
    let r = e.round();
    if (e - r).abs() <= 1e-9 * e.abs().max(1.0) {
        r
    } else {
        e
    }
}

pub fn bin_edges(sizes: &[u64], binning: &Binning) -> Result<Vec<f64>> {
    match binning {
        Binning::Log { bins } => {
            if *bins < 1 {
                return Err(Error::Usage("log binning needs at least one bin".into()));
            }
            let (Some(&min), Some(&max)) = (sizes.iter().min(), sizes.iter().max()) else {
                return Err(Error::Usage("log binning needs a nonempty sample".into()));
            };
            let lo = min.max(1) as f64;
            let mut hi = max as f64;
            if hi <= lo {
                hi = lo + 1.0;
            }
            let ratio = hi / lo;
            let n = *bins;
            Ok((0..=n)
                .map(|i| match i {
                    0 => lo,
                    i if i == n => hi,
                    i => snap(lo * ratio.powf(i as f64 / n as f64)),
                })
                .collect())
        }
        Binning::Linear { width } => {
            if !(width.is_finite() && *width > 0.0) {
                return Err(Error::Usage(format!("invalid linear bin width {width}")));
            }
            let max = sizes.iter().copied().max().unwrap_or(0) as f64;
            let n = (max / width).floor() as usize + 1;
            Ok((0..=n).map(|i| i as f64 * width).collect())
        }
        Binning::Explicit { edges } => {
            if edges.len() < 2
                || edges
                    .windows(2)
                    .any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less))
            {
                return Err(Error::Usage(
                    "explicit bin edges must be strictly increasing with at least two edges".into(),
                ));
            }
            Ok(edges.clone())
        }
    }
}

pub fn size_histogram(sizes: &[u64], binning: &Binning) -> Result<Histogram> {
    let edges = bin_edges(sizes, binning)?;
    let mut h = Histogram {
        counts: vec![0; edges.len() - 1],
        edges,
    };
    for &s in sizes {
        let bin = h
            .bin_of(s as f64)
            .ok_or_else(|| Error::Usage(format!("size {s} falls outside the bin edges")))?;
        h.counts[bin] += 1;
    }
    Ok(h)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VacuumZone {
    pub low: f64,
    pub high: f64,
}

/// Maximal interior runs of empty bins whose value span satisfies
/// `high / low >= min_span_ratio`.
pub fn vacuum_zones(h: &Histogram, min_span_ratio: f64) -> Vec<VacuumZone> {
    let counts = &h.counts;
    let mut zones = Vec::new();
    let mut i = 0;
    while i < counts.len() {
        if counts[i] != 0 {
            i += 1;
            continue;
        }
        let start = i;
        while i < counts.len() && counts[i] == 0 {
            i += 1;
        }
        if start == 0 || i == counts.len() {
            continue;
        }
        let (low, high) = (h.edges[start], h.edges[i]);
        if low <= 0.0 || high / low >= min_span_ratio {
            zones.push(VacuumZone { low, high });
        }
    }
    zones
}

pub fn find_vacuum_zones(
    sizes: &[u64],
    binning: &Binning,
    min_span_ratio: f64,
) -> Result<Vec<VacuumZone>> {
    Ok(vacuum_zones(
        &size_histogram(sizes, binning)?,
        min_span_ratio,
    ))
}

/// Everything the cohort aggregates need from one cascade.
#[derive(Debug, Clone, PartialEq)]
pub struct CascadeMetrics {
    pub focal: NodeId,
    pub depth: u32,
    pub size: u64,
    pub width: u64,
    /// Widths of generations 0..=depth.
    pub widths: Vec<u64>,
    /// Relevance scores of generations 1..=depth; empty for a codeless focal.
    pub scores: Vec<GenerationScore>,
}

impl CascadeMetrics {
    pub fn compute(c: &Cascade, table: &CodeTable, cfg: &RelevanceConfig) -> Result<Self> {
        Ok(CascadeMetrics {
            focal: c.focal(),
            depth: c.depth(),
            size: c.size() as u64,
            width: cascade_width(c) as u64,
            widths: c.widths().into_iter().map(|w| w as u64).collect(),
            scores: cascade_scores(c, table, cfg)?,
        })
    }

    pub fn relevance(&self, generation: u32) -> Option<f64> {
        let g = generation as usize;
        if g == 0 {
            return None;
        }
        self.scores.get(g - 1).and_then(|s| s.mean())
    }
}

fn median(sorted: &[u64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2] as f64
    } else {
        (sorted[n / 2 - 1] as f64 + sorted[n / 2] as f64) / 2.0
    }
}

/// How per-generation relevance is aggregated across a cohort.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum RelevanceAggregation {
    /// Mean over cascades of each cascade's generation mean.
    #[default]
    PerCascade,
    /// Mean over all focal/paper pairs in the generation, pooled across cascades.
    Pooled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationStats {
    pub generation: u32,
    /// Cascades with depth >= generation.
    pub reach_count: u64,
    pub median_width: f64,
    pub mean_relevance: Option<f64>,
    /// Pooled-pair mean, reported alongside whichever aggregation is primary.
    pub pooled_relevance: Option<f64>,
    pub relevance_sample_count: u64,
}

fn max_depth(cascades: &[CascadeMetrics]) -> u32 {
    cascades.iter().map(|c| c.depth).max().unwrap_or(0)
}

/// `(generation, reach_count, median_width)` for generations 1..=max depth.
pub fn median_width_per_generation(
    cascades: &[CascadeMetrics],
    include_unreached: bool,
) -> Vec<(u32, u64, f64)> {
    (1..=max_depth(cascades))
        .map(|g| {
            let mut widths: Vec<u64> = cascades
                .iter()
                .filter_map(|c| match c.widths.get(g as usize) {
                    Some(&w) => Some(w),
                    None if include_unreached => Some(0),
                    None => None,
                })
                .collect();
            let reach = cascades.iter().filter(|c| c.depth >= g).count() as u64;
            widths.sort_unstable();
            (g, reach, median(&widths))
        })
        .collect()
}

/// Per-generation relevance: `(generation, mean, pooled, sample_count)` where
/// `sample_count` is how many cascades had a defined generation relevance.
pub fn mean_relevance_per_generation(
    cascades: &[CascadeMetrics],
    aggregation: RelevanceAggregation,
) -> Vec<(u32, Option<f64>, Option<f64>, u64)> {
    (1..=max_depth(cascades))
        .map(|g| {
            let (mut sum, mut n) = (0.0, 0u64);
            let (mut pooled_sum, mut pooled_n) = (0.0, 0u64);
            for c in cascades {
                if let Some(s) = c.scores.get(g as usize - 1) {
                    if let Some(m) = s.mean() {
                        sum += m;
                        n += 1;
                    }
                    pooled_sum += s.sum;
                    pooled_n += s.count as u64;
                }
            }
            let per_cascade = (n > 0).then(|| sum / n as f64);
            let pooled = (pooled_n > 0).then(|| pooled_sum / pooled_n as f64);
            let mean = match aggregation {
                RelevanceAggregation::PerCascade => per_cascade,
                RelevanceAggregation::Pooled => pooled,
            };
            (g, mean, pooled, n)
        })
        .collect()
}

pub fn generation_stats(
    cascades: &[CascadeMetrics],
    include_unreached: bool,
    aggregation: RelevanceAggregation,
) -> Vec<GenerationStats> {
    median_width_per_generation(cascades, include_unreached)
        .into_iter()
        .zip(mean_relevance_per_generation(cascades, aggregation))
        .map(
            |((generation, reach_count, median_width), (_, mean, pooled, n))| GenerationStats {
                generation,
                reach_count,
                median_width,
                mean_relevance: mean,
                pooled_relevance: pooled,
                relevance_sample_count: n,
            },
        )
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CohortOptions {
    /// Not serialized: reports must not depend on the worker count.
    #[serde(skip, default = "one")]
    pub workers: usize,
    pub max_depth: Option<u32>,
    pub log_bins: usize,
    /// `None` picks `ceil(max_size / log_bins)`.
    pub linear_bin_width: Option<f64>,
    pub min_span_ratio: f64,
    pub include_unreached: bool,
    pub aggregation: RelevanceAggregation,
}

fn one() -> usize {
    1
}

impl Default for CohortOptions {
    fn default() -> Self {
        CohortOptions {
            workers: 1,
            max_depth: None,
            log_bins: 20,
            linear_bin_width: None,
            min_span_ratio: 2.0,
            include_unreached: false,
            aggregation: RelevanceAggregation::PerCascade,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CohortInfo {
    pub name: String,
    pub selector: String,
    pub size: usize,
    pub direction: Direction,
    pub relevance: RelevanceConfig,
    pub options: CohortOptions,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CascadeRecord {
    pub focal_id: String,
    pub depth: u32,
    pub size: u64,
    pub width: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizeHistograms {
    pub log: Option<Histogram>,
    pub linear: Option<Histogram>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub max_depth: u32,
    pub max_size: u64,
    /// Focal papers with no traversal-direction neighbour (depth 0).
    pub zero_reference_count: u64,
    pub zero_reference_fraction: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CohortReport {
    pub cohort: CohortInfo,
    pub cascades: Vec<CascadeRecord>,
    pub depth_distribution: BTreeMap<u32, u64>,
    pub size_histograms: SizeHistograms,
    pub vacuum_zones: Vec<VacuumZone>,
    pub generation_stats: Vec<GenerationStats>,
    pub summary: Summary,
}

impl CohortReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Builds every cascade of the cohort and aggregates the report.
///
/// Cascades are built on a pool of `options.workers` threads, each with its
/// own traversal scratch. Records come back in focal order, so the report
/// does not depend on scheduling.
pub fn run_cohort(
    graph: &CitationGraph,
    corpus: &Corpus,
    cohort: &Cohort,
    direction: Direction,
    cfg: &RelevanceConfig,
    options: &CohortOptions,
) -> Result<CohortReport> {
    if options.workers == 0 {
        return Err(Error::Usage("worker count must be at least 1".into()));
    }
    if corpus.len() != graph.node_count() {
        return Err(Error::Usage(
            "corpus and graph disagree on node count".into(),
        ));
    }
    for &f in &cohort.focal_nodes {
        graph.check_node(f)?;
    }
    let table = CodeTable::new(corpus, cfg.code_level);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers)
        .build()
        .map_err(|e| Error::Worker {
            focal: String::new(),
            message: e.to_string(),
        })?;
    let metrics: Vec<CascadeMetrics> = pool.install(|| {
        cohort
            .focal_nodes
            .par_iter()
            .map_init(
                || CascadeBuilder::new(graph.node_count()),
                |builder, &focal| {
                    builder
                        .build(graph, focal, direction, options.max_depth)
                        .and_then(|c| CascadeMetrics::compute(&c, &table, cfg))
                        .map_err(|e| Error::Worker {
                            focal: graph.label(focal).to_string(),
                            message: e.to_string(),
                        })
                },
            )
            .collect::<Result<Vec<_>>>()
    })?;
    aggregate(graph, cohort, direction, cfg, options, &metrics)
}

/// Aggregates per-cascade metrics (in focal order) into a report.
pub fn aggregate(
    graph: &CitationGraph,
    cohort: &Cohort,
    direction: Direction,
    cfg: &RelevanceConfig,
    options: &CohortOptions,
    metrics: &[CascadeMetrics],
) -> Result<CohortReport> {
    let sizes: Vec<u64> = metrics.iter().map(|m| m.size).collect();
    let depth_distribution = depth_distribution(metrics.iter().map(|m| m.depth));
    let max_size = sizes.iter().copied().max().unwrap_or(0);
    let (log, linear, zones) = if sizes.is_empty() {
        (None, None, Vec::new())
    } else {
        let log = size_histogram(
            &sizes,
            &Binning::Log {
                bins: options.log_bins,
            },
        )?;
        let width = options.linear_bin_width.unwrap_or_else(|| {
            (max_size as f64 / options.log_bins.max(1) as f64)
                .ceil()
                .max(1.0)
        });
        let linear = size_histogram(&sizes, &Binning::Linear { width })?;
        let zones = vacuum_zones(&log, options.min_span_ratio);
        (Some(log), Some(linear), zones)
    };
    let zero = depth_distribution.get(&0).copied().unwrap_or(0);
    Ok(CohortReport {
        cohort: CohortInfo {
            name: cohort.name.clone(),
            selector: cohort.selector.clone(),
            size: cohort.len(),
            direction,
            relevance: *cfg,
            options: options.clone(),
        },
        cascades: metrics
            .iter()
            .map(|m| CascadeRecord {
                focal_id: graph.label(m.focal).to_string(),
                depth: m.depth,
                size: m.size,
                width: m.width,
            })
            .collect(),
        summary: Summary {
            max_depth: max_depth(metrics),
            max_size,
            zero_reference_count: zero,
            zero_reference_fraction: (!metrics.is_empty())
                .then(|| zero as f64 / metrics.len() as f64),
        },
        depth_distribution,
        size_histograms: SizeHistograms { log, linear },
        vacuum_zones: zones,
        generation_stats: generation_stats(metrics, options.include_unreached, options.aggregation),
    })
}
