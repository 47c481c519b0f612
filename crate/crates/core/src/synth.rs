//! Deterministic synthetic citation corpora.
//!
//! Papers are created in index order and paper `i` only cites papers `< i`,
//! so every generated corpus is acyclic. All randomness comes from a single
//! ChaCha8 stream (`rand_chacha::ChaCha8Rng::seed_from_u64(seed)`), consumed
//! in a fixed order:
//!
//! 1. per paper: the zero-reference draw (only if `zero_ref_fraction > 0`),
//!    the reference count, then one weighted draw per reference;
//! 2. then per code slot: the inheritance draw and the code pick.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, NodeId, PaperRecord};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum RefsDistribution {
    Constant {
        k: u32,
    },
    /// Uniform on `min..=max`.
    Uniform {
        min: u32,
        max: u32,
    },
    /// Failures before the first success with success probability `p`, capped.
    Geometric {
        p: f64,
        cap: u32,
    },
}

impl std::str::FromStr for RefsDistribution {
    type Err = String;

    /// `const:K`, `uniform:A:B` or `geometric:P:CAP`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |i: usize| -> std::result::Result<&str, String> {
            parts
                .get(i)
                .copied()
                .ok_or_else(|| format!("missing field in `{s}`"))
        };
        let bad = |e: &dyn std::fmt::Display| format!("`{s}`: {e}");
        let d = match parts[0] {
            "const" | "constant" if parts.len() == 2 => RefsDistribution::Constant {
                k: num(1)?.parse().map_err(|e| bad(&e))?,
            },
            "uniform" if parts.len() == 3 => RefsDistribution::Uniform {
                min: num(1)?.parse().map_err(|e| bad(&e))?,
                max: num(2)?.parse().map_err(|e| bad(&e))?,
            },
            "geometric" if parts.len() == 3 => RefsDistribution::Geometric {
                p: num(1)?.parse().map_err(|e| bad(&e))?,
                cap: num(2)?.parse().map_err(|e| bad(&e))?,
            },
            _ => return Err(format!("unrecognised reference distribution `{s}`")),
        };
        Ok(d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Attachment {
    Uniform,
    /// Weight `(in_degree + 1)^alpha`.
    Preferential {
        alpha: f64,
    },
}

impl std::str::FromStr for Attachment {
    type Err = String;

    /// `uniform` or `preferential:ALPHA`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.split_once(':') {
            None if s == "uniform" => Ok(Attachment::Uniform),
            Some(("preferential", a)) => a
                .parse()
                .map(|alpha| Attachment::Preferential { alpha })
                .map_err(|e| format!("`{s}`: {e}")),
            _ => Err(format!("unrecognised attachment `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthParams {
    pub n_papers: usize,
    pub refs: RefsDistribution,
    pub attachment: Attachment,
    /// Cited-paper weights are multiplied by `2^(-(i - j) / half_life)`.
    pub recency_half_life: Option<f64>,
    /// Probability that a paper has no references at all.
    pub zero_ref_fraction: f64,
    pub code_universe: u32,
    pub codes_per_paper: u32,
    pub code_inheritance: f64,
    pub seed: u64,
}

impl Default for SynthParams {
    fn default() -> Self {
        SynthParams {
            n_papers: 1000,
            refs: RefsDistribution::Constant { k: 5 },
            attachment: Attachment::Preferential { alpha: 1.0 },
            recency_half_life: None,
            zero_ref_fraction: 0.0,
            code_universe: 1000,
            codes_per_paper: 2,
            code_inheritance: 0.5,
            seed: 0,
        }
    }
}

impl SynthParams {
    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Usage(m));
        if self.n_papers == 0 {
            return fail("n_papers must be at least 1".into());
        }
        if self.n_papers > u32::MAX as usize {
            return fail("n_papers exceeds u32 node ids".into());
        }
        for (name, p) in [
            ("code_inheritance", self.code_inheritance),
            ("zero_ref_fraction", self.zero_ref_fraction),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return fail(format!("{name} must lie in [0, 1], got {p}"));
            }
        }
        match self.refs {
            RefsDistribution::Uniform { min, max } if min > max => {
                return fail(format!("uniform reference range {min}..={max} is empty"));
            }
            RefsDistribution::Geometric { p, .. } if !(p > 0.0 && p <= 1.0) => {
                return fail(format!("geometric p must lie in (0, 1], got {p}"));
            }
            _ => {}
        }
        if let Attachment::Preferential { alpha } = self.attachment {
            if !(alpha.is_finite() && alpha >= 0.0) {
                return fail(format!(
                    "preferential alpha must be finite and >= 0, got {alpha}"
                ));
            }
        }
        if let Some(h) = self.recency_half_life {
            if !(h.is_finite() && h > 0.0) {
                return fail(format!("recency half-life must be positive, got {h}"));
            }
        }
        if self.codes_per_paper > self.code_universe {
            return fail(format!(
                "codes_per_paper ({}) exceeds code_universe ({})",
                self.codes_per_paper, self.code_universe
            ));
        }
        Ok(())
    }
}

/// Code string for interned code `k`: `TT.SS.G` with `TT = k mod 100`.
pub fn code_label(k: u32) -> String {
    format!("{:02}.{:02}.{}", k % 100, (k / 100) % 100, k / 10_000)
}

pub fn paper_label(i: usize) -> String {
    format!("SYN{i:07}")
}

/// Fenwick tree over nonnegative weights with weighted sampling.
struct Fenwick {
    tree: Vec<f64>,
}

impl Fenwick {
    fn new(n: usize) -> Self {
        Fenwick {
            tree: vec![0.0; n + 1],
        }
    }

    fn from_weights(w: &[f64]) -> Self {
        let mut tree = vec![0.0; w.len() + 1];
        tree[1..].copy_from_slice(w);
        for i in 1..tree.len() {
            let parent = i + (i & i.wrapping_neg());
            if parent < tree.len() {
                tree[parent] += tree[i];
            }
        }
        Fenwick { tree }
    }

    fn add(&mut self, idx: usize, delta: f64) {
        let mut i = idx + 1;
        while i < self.tree.len() {
            self.tree[i] += delta;
            i += i & i.wrapping_neg();
        }
    }

    fn prefix(&self, len: usize) -> f64 {
        let mut i = len;
        let mut s = 0.0;
        while i > 0 {
            s += self.tree[i];
            i &= i - 1;
        }
        s
    }

    /// Smallest index whose inclusive prefix sum exceeds `target`.
    fn find(&self, mut target: f64) -> usize {
        let n = self.tree.len() - 1;
        let mut pos = 0;
        let mut step = n.next_power_of_two();
        while step > 0 {
            let next = pos + step;
            if next <= n && self.tree[next] <= target {
                pos = next;
                target -= self.tree[next];
            }
            step >>= 1;
        }
        pos
    }
}

/// Rescale the recency factor once it exceeds 2^RESCALE_EXP.
const RESCALE_EXP: f64 = 900.0;

struct Sampler {
    base: Vec<f64>,
    weight: Vec<f64>,
    fenwick: Fenwick,
    half_life: Option<f64>,
    anchor: usize,
}

impl Sampler {
    fn new(n: usize, half_life: Option<f64>) -> Self {
        Sampler {
            base: vec![0.0; n],
            weight: vec![0.0; n],
            fenwick: Fenwick::new(n),
            half_life,
            anchor: 0,
        }
    }

    fn recency(&self, j: usize) -> f64 {
        match self.half_life {
            Some(h) => ((j as f64 - self.anchor as f64) / h).exp2(),
            None => 1.0,
        }
    }

    fn set_base(&mut self, j: usize, base: f64) {
        self.base[j] = base;
        let w = base * self.recency(j);
        self.fenwick.add(j, w - self.weight[j]);
        self.weight[j] = w;
    }

    /// Keeps recency factors of the first `len` papers inside f64 range.
    fn maybe_rescale(&mut self, len: usize) {
        let Some(h) = self.half_life else { return };
        if (len as f64 - self.anchor as f64) / h <= RESCALE_EXP {
            return;
        }
        self.anchor = len;
        for j in 0..len {
            self.weight[j] = self.base[j] * self.recency(j);
        }
        self.fenwick = Fenwick::from_weights(&self.weight);
    }

    /// Draws up to `k` distinct indices among the first `len` by weight.
    fn sample_distinct(
        &mut self,
        rng: &mut ChaCha8Rng,
        len: usize,
        k: usize,
        out: &mut Vec<usize>,
    ) {
        out.clear();
        let mut attempts = 0;
        while out.len() < k && attempts < 4 * k + 16 {
            attempts += 1;
            let total = self.fenwick.prefix(len);
            if total.is_nan() || total <= 0.0 {
                break;
            }
            let target = rng.random::<f64>() * total;
            let j = self.fenwick.find(target).min(len - 1);
            if self.weight[j] <= 0.0 {
                continue;
            }
            self.fenwick.add(j, -self.weight[j]);
            out.push(j);
        }
        for &j in out.iter() {
            self.fenwick.add(j, self.weight[j]);
        }
    }
}

fn draw_ref_count(rng: &mut ChaCha8Rng, refs: RefsDistribution) -> u32 {
    match refs {
        RefsDistribution::Constant { k } => k,
        RefsDistribution::Uniform { min, max } => rng.random_range(min..=max),
        RefsDistribution::Geometric { p, cap } => {
            if p >= 1.0 {
                return 0;
            }
            let u: f64 = 1.0 - rng.random::<f64>();
            let k = (u.ln() / (1.0 - p).ln()).floor();
            if k >= cap as f64 {
                cap
            } else {
                k as u32
            }
        }
    }
}

pub fn generate(params: &SynthParams) -> Result<Corpus> {
    params.validate()?;
    let n = params.n_papers;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut sampler = Sampler::new(n, params.recency_half_life);
    let mut in_degree = vec![0u32; n];
    let base_weight = |deg: u32| match params.attachment {
        Attachment::Uniform => 1.0,
        Attachment::Preferential { alpha } => (deg as f64 + 1.0).powf(alpha),
    };

    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    let mut codes: Vec<Vec<u32>> = Vec::with_capacity(n);
    let mut cited = Vec::new();
    let universe = params.code_universe;

    for i in 0..n {
        let has_refs =
            params.zero_ref_fraction <= 0.0 || rng.random::<f64>() >= params.zero_ref_fraction;
        let k = if has_refs {
            draw_ref_count(&mut rng, params.refs) as usize
        } else {
            0
        };
        if i > 0 && k > 0 {
            sampler.maybe_rescale(i);
            sampler.sample_distinct(&mut rng, i, k.min(i), &mut cited);
            cited.sort_unstable();
        } else {
            cited.clear();
        }
        for &j in &cited {
            edges.push((i as NodeId, j as NodeId));
            in_degree[j] += 1;
            if matches!(params.attachment, Attachment::Preferential { .. }) {
                sampler.set_base(j, base_weight(in_degree[j]));
            }
        }

        let mut mine: Vec<u32> = Vec::with_capacity(params.codes_per_paper as usize);
        for _ in 0..params.codes_per_paper {
            let inherit = !cited.is_empty() && rng.random::<f64>() < params.code_inheritance;
            let mut picked = None;
            if inherit {
                let src = cited[rng.random_range(0..cited.len())];
                let pool: Vec<u32> = codes[src]
                    .iter()
                    .copied()
                    .filter(|c| !mine.contains(c))
                    .collect();
                if !pool.is_empty() {
                    picked = Some(pool[rng.random_range(0..pool.len())]);
                }
            }
            let code = match picked {
                Some(c) => c,
                None => loop {
                    let c = rng.random_range(0..universe);
                    if !mine.contains(&c) {
                        break c;
                    }
                },
            };
            mine.push(code);
        }
        codes.push(mine);
        sampler.set_base(i, base_weight(0));
    }

    let papers = codes.into_iter().enumerate().map(|(i, cs)| PaperRecord {
        external_id: paper_label(i),
        year: Some(1900 + (i as u64 * 114 / n as u64) as i32),
        codes: cs.into_iter().map(code_label).collect(),
    });
    Ok(Corpus::from_papers(papers)?.with_resolved_edges(edges))
}
