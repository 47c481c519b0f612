//! Brute-force oracles shared by the integration suites.
//!
//! Nothing here goes through the library's CSR graph, BFS or code table:
//! distances come from repeated edge relaxation over the raw edge list and
//! relevance from string sets.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use refcascade::{Corpus, DanglingPolicy, PaperRecord};

pub const UNREACHED: u16 = u16::MAX;

/// All-pairs distances by repeated relaxation. `dist[x * n + s]` is the
/// length of the shortest path from `s` to `x` following edges forward
/// (`reverse = false`, citing -> cited) or backward.
pub fn all_pairs_relaxation(n: usize, edges: &[(u32, u32)], reverse: bool) -> Vec<u16> {
    let mut dist = vec![UNREACHED; n * n];
    for s in 0..n {
        dist[s * n + s] = 0;
    }
    loop {
        let mut changed = false;
        for &(a, b) in edges {
            let (from, to) = if reverse { (b, a) } else { (a, b) };
            let (from, to) = (from as usize, to as usize);
            if from == to {
                continue;
            }
            let (src_row, dst_row) = if from < to {
                let (lo, hi) = dist.split_at_mut(to * n);
                (&lo[from * n..from * n + n], &mut hi[..n])
            } else {
                let (lo, hi) = dist.split_at_mut(from * n);
                (&hi[..n], &mut lo[to * n..to * n + n])
            };
            for (d, &f) in dst_row.iter_mut().zip(src_row) {
                let cand = f.saturating_add(1);
                if cand < *d {
                    *d = cand;
                    changed = true;
                }
            }
        }
        if !changed {
            return dist;
        }
    }
}

/// Single-source distances by repeated relaxation.
pub fn single_source_relaxation(
    n: usize,
    edges: &[(u32, u32)],
    source: u32,
    reverse: bool,
) -> Vec<Option<u32>> {
    let mut dist = vec![None; n];
    dist[source as usize] = Some(0u32);
    loop {
        let mut changed = false;
        for &(a, b) in edges {
            let (from, to) = if reverse { (b, a) } else { (a, b) };
            if let Some(df) = dist[from as usize] {
                let cand = df + 1;
                if dist[to as usize].is_none_or(|d| cand < d) {
                    dist[to as usize] = Some(cand);
                    changed = true;
                }
            }
        }
        if !changed {
            return dist;
        }
    }
}

/// A seeded random graph with mixed density; some instances are DAGs with
/// injected back edges, some are fully random (self-loops and duplicates
/// included, which ingestion drops).
pub fn random_graph(seed: u64) -> (usize, Vec<(u32, u32)>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = match seed % 4 {
        0 => rng.random_range(1..=20),
        1 => rng.random_range(20..=120),
        _ => rng.random_range(120..=500),
    };
    let density = [0.3, 0.8, 1.5, 3.0, 6.0][rng.random_range(0..5)];
    let m = (n as f64 * density) as usize;
    let mut edges = Vec::with_capacity(m);
    let dag = rng.random_bool(0.5);
    for _ in 0..m {
        let a = rng.random_range(0..n as u32);
        let b = rng.random_range(0..n as u32);
        if dag {
            if a != b {
                edges.push((a.max(b), a.min(b)));
            }
        } else {
            edges.push((a, b));
        }
    }
    if dag && n > 2 {
        for _ in 0..rng.random_range(0..=3) {
            let a = rng.random_range(0..n as u32);
            let b = rng.random_range(0..n as u32);
            if a != b {
                edges.push((a.min(b), a.max(b)));
            }
        }
    }
    (n, edges)
}

pub fn corpus_from_edges(n: usize, edges: &[(u32, u32)]) -> Corpus {
    let ids: Vec<String> = (0..n).map(|i| format!("n{i:04}")).collect();
    Corpus::from_parts(
        ids.iter().map(|i| PaperRecord::new(i.clone())),
        edges
            .iter()
            .map(|&(a, b)| (ids[a as usize].as_str(), ids[b as usize].as_str())),
        DanglingPolicy::Error,
    )
    .unwrap()
}

pub fn oracle_truncate(code: &str, segments: Option<usize>) -> String {
    match segments {
        None => code.to_string(),
        Some(k) => code.split('.').take(k).collect::<Vec<_>>().join("."),
    }
}

pub fn oracle_jaccard(a: &BTreeSet<String>, b: &BTreeSet<String>) -> Option<f64> {
    let union: BTreeSet<&String> = a.iter().chain(b.iter()).collect();
    if union.is_empty() {
        return None;
    }
    let inter = a.iter().filter(|x| b.contains(*x)).count();
    Some(inter as f64 / union.len() as f64)
}

/// Everything the golden report holds, derived by brute force.
#[derive(Debug)]
pub struct OracleCascade {
    pub focal: u32,
    pub depth: u32,
    pub size: u64,
    pub widths: Vec<u64>,
    /// Mean relevance per generation 1..=depth, with (sum, count) for pooling.
    pub relevance: Vec<(Option<f64>, f64, u64)>,
}

pub fn oracle_cascade(
    corpus: &Corpus,
    focal: u32,
    reverse: bool,
    segments: Option<usize>,
    exclude_empty: bool,
) -> OracleCascade {
    let dist = single_source_relaxation(corpus.len(), corpus.edges(), focal, reverse);
    let depth = dist.iter().flatten().copied().max().unwrap();
    let mut layers: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for (v, d) in dist.iter().enumerate() {
        if let Some(d) = d {
            layers.entry(*d).or_default().push(v as u32);
        }
    }
    let codes = |v: u32| -> BTreeSet<String> {
        corpus.papers()[v as usize]
            .codes
            .iter()
            .map(|c| oracle_truncate(c, segments))
            .collect()
    };
    let focal_codes = codes(focal);
    let relevance = (1..=depth)
        .map(|g| {
            if focal_codes.is_empty() {
                return (None, 0.0, 0);
            }
            let mut vals = Vec::new();
            for &p in &layers[&g] {
                let pc = codes(p);
                if pc.is_empty() && exclude_empty {
                    continue;
                }
                if let Some(j) = oracle_jaccard(&focal_codes, &pc) {
                    vals.push(j);
                }
            }
            let sum: f64 = vals.iter().sum();
            let mean = (!vals.is_empty()).then(|| sum / vals.len() as f64);
            (mean, sum, vals.len() as u64)
        })
        .collect();
    OracleCascade {
        focal,
        depth,
        size: layers.values().map(|l| l.len() as u64).sum(),
        widths: (0..=depth).map(|g| layers[&g].len() as u64).collect(),
        relevance,
    }
}

pub fn oracle_median(mut v: Vec<u64>) -> f64 {
    v.sort();
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2] as f64
    } else {
        (v[n / 2 - 1] + v[n / 2]) as f64 / 2.0
    }
}

/// Log-bin counts: bin `i` covers `[e_i, e_{i+1})`, last bin closed.
pub fn oracle_log_histogram(sizes: &[u64], bins: usize) -> (Vec<f64>, Vec<u64>) {
    let lo = *sizes.iter().min().unwrap() as f64;
    let mut hi = *sizes.iter().max().unwrap() as f64;
    if hi <= lo {
        hi = lo + 1.0;
    }
    let edges: Vec<f64> = (0..=bins)
        .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / bins as f64).exp())
        .collect();
    let mut counts = vec![0u64; bins];
    for &s in sizes {
        let v = s as f64;
        let mut bin = bins - 1;
        for i in 0..bins {
            if v < edges[i + 1] * (1.0 - 1e-12) {
                bin = i;
                break;
            }
        }
        counts[bin] += 1;
    }
    (edges, counts)
}

pub fn approx_eq(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

pub fn approx_opt(a: Option<f64>, b: Option<f64>, tol: f64) -> bool {
    match (a, b) {
        (Some(x), Some(y)) => approx_eq(x, y, tol),
        (None, None) => true,
        _ => false,
    }
}

/// The small seeded corpus behind the frozen cohort report.
pub fn golden_params() -> refcascade::SynthParams {
    refcascade::SynthParams {
        n_papers: 200,
        refs: refcascade::synth::RefsDistribution::Uniform { min: 1, max: 4 },
        attachment: refcascade::synth::Attachment::Preferential { alpha: 1.0 },
        recency_half_life: None,
        zero_ref_fraction: 0.1,
        code_universe: 400,
        codes_per_paper: 2,
        code_inheritance: 0.5,
        seed: 42,
    }
}

/// Same corpus as [`golden_params`], as `synth` flags.
pub const GOLDEN_SYNTH_ARGS: &[&str] = &[
    "--n-papers",
    "200",
    "--refs",
    "uniform:1:4",
    "--attachment",
    "preferential:1",
    "--zero-ref-fraction",
    "0.1",
    "--code-universe",
    "400",
    "--codes-per-paper",
    "2",
    "--code-inheritance",
    "0.5",
    "--seed",
    "42",
];

pub const GOLDEN_PREFIX: &str = "1";

pub fn golden_path() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/synth200_cohort_1.json")
}

/// Runs the CLI in-process, returning `(exit code, stdout, stderr)`.
pub fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("refcascade").chain(args.iter().copied());
    let code = refcascade::cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}
