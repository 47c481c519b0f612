//! Python bindings: a `Network` class wrapping a loaded corpus and its graph,
//! plus the Jaccard helpers.

use std::collections::BTreeSet;
use std::path::PathBuf;

use pyo3::exceptions::{PyIOError, PyKeyError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use refcascade::analytics::RelevanceAggregation;
use refcascade::cascade::CascadeDump;
use refcascade::corpus::{load_aps, load_corpus, save_tables, IngestOptions};
use refcascade::relevance::EmptyCodePolicy;
use refcascade::report::write_report;
use refcascade::synth::{Attachment, RefsDistribution};
use refcascade::{
    ancestors, build_cascade, generate, generation_relevance, recommend, run_cohort, select_cohort,
    CodeLevel, CodeTable, CohortOptions, CohortReport, DanglingPolicy, Direction, Error, NodeId,
    RecommendOptions, RelevanceConfig, Snapshot, SynthParams,
};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Io { .. } => PyIOError::new_err(e.to_string()),
        Error::UnknownId(_) => PyKeyError::new_err(e.to_string()),
        Error::Worker { .. } | Error::Json(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn bad(what: &str, value: &str) -> PyErr {
    PyValueError::new_err(format!("unknown {what} `{value}`"))
}

fn direction(s: &str) -> PyResult<Direction> {
    match s {
        "backward" => Ok(Direction::Backward),
        "forward" => Ok(Direction::Forward),
        _ => Err(bad("direction", s)),
    }
}

fn code_level(s: &str) -> PyResult<CodeLevel> {
    match s {
        "full" => Ok(CodeLevel::Full),
        "two" => Ok(CodeLevel::Two),
        "one" => Ok(CodeLevel::One),
        _ => Err(bad("code level", s)),
    }
}

fn relevance_config(level: &str, empty_codes: &str) -> PyResult<RelevanceConfig> {
    let empty_code_policy = match empty_codes {
        "exclude" => EmptyCodePolicy::Exclude,
        "zero" => EmptyCodePolicy::Zero,
        _ => return Err(bad("empty-code policy", empty_codes)),
    };
    Ok(RelevanceConfig {
        code_level: code_level(level)?,
        empty_code_policy,
    })
}

fn dangling(s: &str) -> PyResult<DanglingPolicy> {
    match s {
        "stub" => Ok(DanglingPolicy::Stub),
        "drop" => Ok(DanglingPolicy::Drop),
        "error" => Ok(DanglingPolicy::Error),
        _ => Err(bad("dangling policy", s)),
    }
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// A citation network: papers with codes plus the citing relation.
#[pyclass(name = "Network", frozen)]
struct PyNetwork {
    snap: Snapshot,
}

impl PyNetwork {
    fn node(&self, id: &str) -> PyResult<NodeId> {
        self.snap
            .corpus
            .lookup(id)
            .ok_or_else(|| py_err(Error::UnknownId(id.to_string())))
    }

    fn labels(&self, nodes: &[NodeId]) -> Vec<String> {
        let mut v: Vec<String> = nodes
            .iter()
            .map(|&n| self.snap.graph.label(n).to_string())
            .collect();
        v.sort();
        v
    }

    #[allow(clippy::too_many_arguments)]
    fn cohort_report(
        &self,
        py: Python<'_>,
        code_prefix: &str,
        direction_: &str,
        level: &str,
        empty_codes: &str,
        bins: usize,
        linear_bin_width: Option<f64>,
        min_span_ratio: f64,
        workers: Option<usize>,
        max_depth: Option<u32>,
        include_unreached: bool,
        aggregation: &str,
    ) -> PyResult<CohortReport> {
        let dir = direction(direction_)?;
        let cfg = relevance_config(level, empty_codes)?;
        let aggregation = match aggregation {
            "per-cascade" => RelevanceAggregation::PerCascade,
            "pooled" => RelevanceAggregation::Pooled,
            _ => return Err(bad("aggregation", aggregation)),
        };
        let options = CohortOptions {
            workers: workers.unwrap_or_else(default_workers),
            max_depth,
            log_bins: bins,
            linear_bin_width,
            min_span_ratio,
            include_unreached,
            aggregation,
        };
        let snap = &self.snap;
        py.detach(|| {
            let cohort = select_cohort(&snap.corpus, code_prefix)?;
            run_cohort(&snap.graph, &snap.corpus, &cohort, dir, &cfg, &options)
        })
        .map_err(py_err)
    }
}

#[pymethods]
impl PyNetwork {
    /// Loads `papers.tsv` / `edges.tsv` style tables.
    #[staticmethod]
    #[pyo3(signature = (papers, edges, dangling_policy = "stub", normalize_codes = false))]
    fn from_tables(
        papers: PathBuf,
        edges: PathBuf,
        dangling_policy: &str,
        normalize_codes: bool,
    ) -> PyResult<Self> {
        let corpus = load_corpus(
            papers,
            edges,
            dangling(dangling_policy)?,
            IngestOptions { normalize_codes },
        )
        .map_err(py_err)?;
        Ok(PyNetwork {
            snap: Snapshot::from_corpus(corpus),
        })
    }

    /// Loads the APS metadata and citation CSV files.
    #[staticmethod]
    #[pyo3(signature = (metadata, citations, dangling_policy = "drop", normalize_codes = false))]
    fn from_aps(
        metadata: PathBuf,
        citations: PathBuf,
        dangling_policy: &str,
        normalize_codes: bool,
    ) -> PyResult<Self> {
        let corpus = load_aps(
            metadata,
            citations,
            dangling(dangling_policy)?,
            IngestOptions { normalize_codes },
        )
        .map_err(py_err)?;
        Ok(PyNetwork {
            snap: Snapshot::from_corpus(corpus),
        })
    }

    #[staticmethod]
    fn from_snapshot(path: PathBuf) -> PyResult<Self> {
        Ok(PyNetwork {
            snap: Snapshot::load(path).map_err(py_err)?,
        })
    }

    /// Seeded synthetic corpus. `refs` is `const:K`, `uniform:A:B` or
    /// `geometric:P:CAP`; `attachment` is `uniform` or `preferential:ALPHA`.
    #[staticmethod]
    #[pyo3(signature = (
        n_papers, seed, refs = "const:5", attachment = "preferential:1", recency_half_life = None,
        zero_ref_fraction = 0.0, code_universe = 1000, codes_per_paper = 2, code_inheritance = 0.5
    ))]
    #[allow(clippy::too_many_arguments)]
    fn synthetic(
        n_papers: usize,
        seed: u64,
        refs: &str,
        attachment: &str,
        recency_half_life: Option<f64>,
        zero_ref_fraction: f64,
        code_universe: u32,
        codes_per_paper: u32,
        code_inheritance: f64,
    ) -> PyResult<Self> {
        let params = SynthParams {
            n_papers,
            refs: refs
                .parse::<RefsDistribution>()
                .map_err(PyValueError::new_err)?,
            attachment: attachment
                .parse::<Attachment>()
                .map_err(PyValueError::new_err)?,
            recency_half_life,
            zero_ref_fraction,
            code_universe,
            codes_per_paper,
            code_inheritance,
            seed,
        };
        Ok(PyNetwork {
            snap: Snapshot::from_corpus(generate(&params).map_err(py_err)?),
        })
    }

    fn save_snapshot(&self, path: PathBuf) -> PyResult<()> {
        self.snap.save(path).map_err(py_err)
    }

    fn save_tables(&self, papers: PathBuf, edges: PathBuf) -> PyResult<()> {
        save_tables(&self.snap.corpus, &papers, &edges).map_err(py_err)
    }

    fn __len__(&self) -> usize {
        self.snap.corpus.len()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.snap.graph.edge_count()
    }

    fn __repr__(&self) -> String {
        format!(
            "Network(papers={}, edges={})",
            self.snap.corpus.len(),
            self.snap.graph.edge_count()
        )
    }

    fn codes(&self, paper: &str) -> PyResult<Vec<String>> {
        let n = self.node(paper)?;
        Ok(self.snap.corpus.papers()[n as usize]
            .codes
            .iter()
            .cloned()
            .collect())
    }

    /// Papers cited by `paper`.
    fn references(&self, paper: &str) -> PyResult<Vec<String>> {
        let n = self.node(paper)?;
        Ok(self.labels(self.snap.graph.references(n).map_err(py_err)?))
    }

    /// Papers citing `paper`.
    fn citations(&self, paper: &str) -> PyResult<Vec<String>> {
        let n = self.node(paper)?;
        Ok(self.labels(self.snap.graph.citations(n).map_err(py_err)?))
    }

    /// Cascade as a dict: focal, direction, depth, size, widths and layers
    /// (each layer a sorted list of ids).
    #[pyo3(signature = (focal, direction = "backward", max_depth = None))]
    fn cascade<'py>(
        &self,
        py: Python<'py>,
        focal: &str,
        direction: &str,
        max_depth: Option<u32>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let c = build_cascade(
            &self.snap.graph,
            self.node(focal)?,
            self::direction(direction)?,
            max_depth,
        )
        .map_err(py_err)?;
        let dump = CascadeDump::new(&c, &self.snap.graph);
        let d = PyDict::new(py);
        d.set_item("focal", dump.focal)?;
        d.set_item("direction", dump.direction.as_str())?;
        d.set_item("depth", dump.depth)?;
        d.set_item("size", dump.size)?;
        d.set_item("widths", dump.widths)?;
        d.set_item("layers", dump.layers)?;
        Ok(d)
    }

    /// Papers in the backward cascade of `focal` that cite nothing.
    fn ancestors(&self, focal: &str) -> PyResult<Vec<String>> {
        let c = build_cascade(
            &self.snap.graph,
            self.node(focal)?,
            Direction::Backward,
            None,
        )
        .map_err(py_err)?;
        Ok(self.labels(&ancestors(&c, &self.snap.graph).map_err(py_err)?))
    }

    /// Mean Jaccard relevance of each generation to the focal paper,
    /// generation 1 first; `None` where undefined.
    #[pyo3(signature = (focal, code_level = "full", empty_codes = "exclude", max_depth = None))]
    fn relevance_profile(
        &self,
        focal: &str,
        code_level: &str,
        empty_codes: &str,
        max_depth: Option<u32>,
    ) -> PyResult<Vec<Option<f64>>> {
        let cfg = relevance_config(code_level, empty_codes)?;
        let c = build_cascade(
            &self.snap.graph,
            self.node(focal)?,
            Direction::Backward,
            max_depth,
        )
        .map_err(py_err)?;
        let table = CodeTable::new(&self.snap.corpus, cfg.code_level);
        (1..=c.depth())
            .map(|g| generation_relevance(&c, &table, &cfg, g).map_err(py_err))
            .collect()
    }

    /// Cohort report for papers with a code under `code_prefix`, as a dict.
    #[pyo3(signature = (
        code_prefix, direction = "backward", code_level = "full", empty_codes = "exclude", bins = 20,
        linear_bin_width = None, min_span_ratio = 2.0, workers = None, max_depth = None,
        include_unreached = false, aggregation = "per-cascade"
    ))]
    #[allow(clippy::too_many_arguments)]
    fn cohort<'py>(
        &self,
        py: Python<'py>,
        code_prefix: &str,
        direction: &str,
        code_level: &str,
        empty_codes: &str,
        bins: usize,
        linear_bin_width: Option<f64>,
        min_span_ratio: f64,
        workers: Option<usize>,
        max_depth: Option<u32>,
        include_unreached: bool,
        aggregation: &str,
    ) -> PyResult<Bound<'py, PyAny>> {
        let report = self.cohort_report(
            py,
            code_prefix,
            direction,
            code_level,
            empty_codes,
            bins,
            linear_bin_width,
            min_span_ratio,
            workers,
            max_depth,
            include_unreached,
            aggregation,
        )?;
        let json = report.to_json().map_err(py_err)?;
        py.import("json")?.call_method1("loads", (json,))
    }

    /// Runs a cohort and writes the report files into `out_dir`; returns the
    /// written paths.
    #[pyo3(signature = (code_prefix, out_dir, direction = "backward", code_level = "full", workers = None, emit_plots = false))]
    #[allow(clippy::too_many_arguments)]
    fn write_cohort(
        &self,
        py: Python<'_>,
        code_prefix: &str,
        out_dir: PathBuf,
        direction: &str,
        code_level: &str,
        workers: Option<usize>,
        emit_plots: bool,
    ) -> PyResult<Vec<PathBuf>> {
        let report = self.cohort_report(
            py,
            code_prefix,
            direction,
            code_level,
            "exclude",
            20,
            None,
            2.0,
            workers,
            None,
            false,
            "per-cascade",
        )?;
        write_report(&report, &out_dir, emit_plots).map_err(py_err)
    }

    /// Ranked `(paper, generation, relevance)` suggestions from the focal
    /// paper's backward cascade.
    #[pyo3(signature = (
        focal, max_generation = 4, min_relevance = 0.2, top_k = None, exclude_direct = false,
        code_level = "full", empty_codes = "exclude"
    ))]
    #[allow(clippy::too_many_arguments)]
    fn recommend(
        &self,
        focal: &str,
        max_generation: u32,
        min_relevance: f64,
        top_k: Option<usize>,
        exclude_direct: bool,
        code_level: &str,
        empty_codes: &str,
    ) -> PyResult<Vec<(String, u32, f64)>> {
        let options = RecommendOptions {
            max_generation,
            min_relevance,
            top_k,
            exclude_direct,
            relevance: relevance_config(code_level, empty_codes)?,
        };
        let r = recommend(
            &self.snap.graph,
            &self.snap.corpus,
            self.node(focal)?,
            &options,
        )
        .map_err(py_err)?;
        Ok(r.items
            .into_iter()
            .map(|i| (i.paper, i.generation, i.relevance))
            .collect())
    }
}

/// Jaccard index of two code collections; `None` when both are empty.
#[pyfunction]
fn jaccard(a: Vec<String>, b: Vec<String>) -> Option<f64> {
    let a: BTreeSet<String> = a.into_iter().collect();
    let b: BTreeSet<String> = b.into_iter().collect();
    refcascade::jaccard(&a, &b)
}

/// Keeps the first one or two dot-separated segments of a code.
#[pyfunction]
#[pyo3(signature = (code, level = "full"))]
fn truncate_code(code: &str, level: &str) -> PyResult<String> {
    Ok(refcascade::truncate_code(code, code_level(level)?).to_string())
}

#[pymodule]
fn refcascade_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyNetwork>()?;
    m.add_function(wrap_pyfunction!(jaccard, m)?)?;
    m.add_function(wrap_pyfunction!(truncate_code, m)?)?;
    Ok(())
}
