//! Topic relevance as Jaccard similarity of classification-code sets.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::cascade::Cascade;
use crate::corpus::{Corpus, NodeId};
use crate::error::{Error, Result};

/// How much of a dot-delimited code takes part in comparisons.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize, clap::ValueEnum,
)]
#[serde(rename_all = "lowercase")]
pub enum CodeLevel {
    /// The whole code, e.g. `21.60.Cs`.
    #[default]
    Full,
    /// First two segments, e.g. `21.60`.
    Two,
    /// First segment, e.g. `21`.
    One,
}

/// Treatment of papers whose code set is empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum EmptyCodePolicy {
    /// Leave them out of generation averages entirely.
    #[default]
    Exclude,
    /// Score them as 0 against a coded focal paper.
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RelevanceConfig {
    pub code_level: CodeLevel,
    pub empty_code_policy: EmptyCodePolicy,
}

pub fn truncate_code(code: &str, level: CodeLevel) -> &str {
    let keep = match level {
        CodeLevel::Full => return code,
        CodeLevel::Two => 2,
        CodeLevel::One => 1,
    };
    match code.match_indices('.').nth(keep - 1) {
        Some((i, _)) => &code[..i],
        None => code,
    }
}

/// Intersection and union sizes of two sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Overlap {
    pub intersection: u32,
    pub union: u32,
}

impl Overlap {
    /// `None` when both sets were empty.
    pub fn ratio(self) -> Option<f64> {
        (self.union > 0).then(|| self.intersection as f64 / self.union as f64)
    }
}

/// Overlap of two ascending, duplicate-free slices.
pub fn overlap_sorted<T: Ord>(a: &[T], b: &[T]) -> Overlap {
    let (mut i, mut j, mut common) = (0, 0, 0u32);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                common += 1;
                i += 1;
                j += 1;
            }
        }
    }
    Overlap {
        intersection: common,
        union: (a.len() + b.len()) as u32 - common,
    }
}

/// Jaccard similarity; undefined when both sets are empty.
pub fn jaccard<T: Ord>(a: &BTreeSet<T>, b: &BTreeSet<T>) -> Option<f64> {
    let common = a.intersection(b).count();
    let union = a.len() + b.len() - common;
    (union > 0).then(|| common as f64 / union as f64)
}

/// Per-paper code sets after truncation, interned to integers.
#[derive(Debug, Clone)]
pub struct CodeTable {
    level: CodeLevel,
    offsets: Vec<u32>,
    ids: Vec<u32>,
    names: Vec<String>,
}

impl CodeTable {
    pub fn new(corpus: &Corpus, level: CodeLevel) -> Self {
        let mut intern: HashMap<&str, u32> = HashMap::new();
        let mut names = Vec::new();
        let mut offsets = Vec::with_capacity(corpus.len() + 1);
        let mut ids = Vec::new();
        offsets.push(0);
        let mut buf = Vec::new();
        for p in corpus.papers() {
            buf.clear();
            for code in &p.codes {
                let t = truncate_code(code, level);
                let id = *intern.entry(t).or_insert_with(|| {
                    names.push(t.to_string());
                    (names.len() - 1) as u32
                });
                buf.push(id);
            }
            buf.sort_unstable();
            buf.dedup();
            ids.extend_from_slice(&buf);
            offsets.push(ids.len() as u32);
        }
        CodeTable {
            level,
            offsets,
            ids,
            names,
        }
    }

    pub fn level(&self) -> CodeLevel {
        self.level
    }

    /// Interned truncated codes of `node`, ascending.
    pub fn codes(&self, node: NodeId) -> &[u32] {
        let u = node as usize;
        &self.ids[self.offsets[u] as usize..self.offsets[u + 1] as usize]
    }

    pub fn code_name(&self, id: u32) -> &str {
        &self.names[id as usize]
    }

    pub fn relevance(&self, a: NodeId, b: NodeId) -> Option<f64> {
        overlap_sorted(self.codes(a), self.codes(b)).ratio()
    }
}

/// Sum and count of the comparable focal/paper relevances in one generation.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GenerationScore {
    pub sum: f64,
    pub count: u32,
}

impl GenerationScore {
    pub fn mean(self) -> Option<f64> {
        (self.count > 0).then(|| self.sum / self.count as f64)
    }
}

fn score_layer(
    focal: &[u32],
    layer: &[NodeId],
    table: &CodeTable,
    policy: EmptyCodePolicy,
) -> GenerationScore {
    let mut score = GenerationScore::default();
    for &p in layer {
        let codes = table.codes(p);
        if codes.is_empty() && policy == EmptyCodePolicy::Exclude {
            continue;
        }
        if let Some(r) = overlap_sorted(focal, codes).ratio() {
            score.sum += r;
            score.count += 1;
        }
    }
    score
}

fn check_level(table: &CodeTable, cfg: &RelevanceConfig) -> Result<()> {
    if table.level != cfg.code_level {
        return Err(Error::Usage(format!(
            "code table built at level {:?} but config asks for {:?}",
            table.level, cfg.code_level
        )));
    }
    Ok(())
}

/// Mean relevance between the focal paper and generation `generation`.
///
/// `None` when the focal paper has no codes or no paper in the generation is
/// comparable under the configured empty-code policy.
pub fn generation_relevance(
    c: &Cascade,
    table: &CodeTable,
    cfg: &RelevanceConfig,
    generation: u32,
) -> Result<Option<f64>> {
    check_level(table, cfg)?;
    if generation == 0 || generation > c.depth() {
        return Err(Error::Usage(format!(
            "generation {generation} outside 1..={}",
            c.depth()
        )));
    }
    let focal = table.codes(c.focal());
    if focal.is_empty() {
        return Ok(None);
    }
    let layer = c.layer(generation).expect("checked against depth");
    Ok(score_layer(focal, layer, table, cfg.empty_code_policy).mean())
}

/// Scores for generations 1..=depth, index 0 holding generation 1. Empty
/// when the focal paper has no codes.
pub fn cascade_scores(
    c: &Cascade,
    table: &CodeTable,
    cfg: &RelevanceConfig,
) -> Result<Vec<GenerationScore>> {
    check_level(table, cfg)?;
    let focal = table.codes(c.focal());
    if focal.is_empty() {
        return Ok(Vec::new());
    }
    Ok(c.layers()
        .skip(1)
        .map(|layer| score_layer(focal, layer, table, cfg.empty_code_policy))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cascade::{build_cascade, Direction};
    use crate::corpus::{DanglingPolicy, PaperRecord};
    use crate::graph::CitationGraph;
    use proptest::prelude::*;

    fn set(items: &[&str]) -> BTreeSet<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn truncation_levels() {
        assert_eq!(truncate_code("21.60.Cs", CodeLevel::One), "21");
        assert_eq!(truncate_code("21.60.Cs", CodeLevel::Two), "21.60");
        assert_eq!(truncate_code("21.60.Cs", CodeLevel::Full), "21.60.Cs");
        assert_eq!(truncate_code("21", CodeLevel::Two), "21");
        assert_eq!(truncate_code("21.60", CodeLevel::Two), "21.60");
    }

    #[test]
    fn jaccard_examples() {
        assert_eq!(jaccard(&set(&["x", "y"]), &set(&["x", "y"])), Some(1.0));
        assert_eq!(jaccard(&set(&["x"]), &set(&["y"])), Some(0.0));
        assert_eq!(
            jaccard(&set(&["x", "y"]), &set(&["y", "z"])),
            Some(1.0 / 3.0)
        );
        assert_eq!(jaccard(&set(&[]), &set(&[])), None);
        assert_eq!(jaccard(&set(&["x"]), &set(&[])), Some(0.0));
    }

    /// focal A{a,b} cites B{a,b}, C{a,c}, D{} ; B cites E{a,b}.
    fn fixture() -> (Corpus, CitationGraph) {
        let corpus = Corpus::from_parts(
            [
                PaperRecord::new("A").with_codes(["a", "b"]),
                PaperRecord::new("B").with_codes(["a", "b"]),
                PaperRecord::new("C").with_codes(["a", "c"]),
                PaperRecord::new("D"),
                PaperRecord::new("E").with_codes(["a", "b"]),
                PaperRecord::new("F"),
            ],
            [("A", "B"), ("A", "C"), ("A", "D"), ("B", "E"), ("F", "A")],
            DanglingPolicy::Error,
        )
        .unwrap();
        let g = CitationGraph::build(&corpus);
        (corpus, g)
    }

    #[test]
    fn generation_mean_excludes_empty() {
        let (corpus, g) = fixture();
        let table = CodeTable::new(&corpus, CodeLevel::Full);
        let cfg = RelevanceConfig::default();
        let c = build_cascade(&g, 0, Direction::Backward, None).unwrap();
        let r1 = generation_relevance(&c, &table, &cfg, 1).unwrap().unwrap();
        assert!((r1 - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(
            generation_relevance(&c, &table, &cfg, 2).unwrap(),
            Some(1.0)
        );
        assert!(matches!(
            generation_relevance(&c, &table, &cfg, 3),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            generation_relevance(&c, &table, &cfg, 0),
            Err(Error::Usage(_))
        ));

        let zero = RelevanceConfig {
            empty_code_policy: EmptyCodePolicy::Zero,
            ..cfg
        };
        let r1z = generation_relevance(&c, &table, &zero, 1).unwrap().unwrap();
        assert!((r1z - (1.0 + 1.0 / 3.0) / 3.0).abs() < 1e-12);
    }

    #[test]
    fn codeless_focal_undefined() {
        let (corpus, g) = fixture();
        let table = CodeTable::new(&corpus, CodeLevel::Full);
        let c = build_cascade(&g, 5, Direction::Backward, None).unwrap();
        let cfg = RelevanceConfig::default();
        for gen in 1..=c.depth() {
            assert_eq!(generation_relevance(&c, &table, &cfg, gen).unwrap(), None);
        }
        assert!(cascade_scores(&c, &table, &cfg).unwrap().is_empty());
    }

    #[test]
    fn coarse_level_merges_codes() {
        let corpus = Corpus::from_papers([
            PaperRecord::new("A").with_codes(["21.60.Cs", "24.10.-i"]),
            PaperRecord::new("B").with_codes(["21.10.Ab"]),
        ])
        .unwrap();
        let full = CodeTable::new(&corpus, CodeLevel::Full);
        let one = CodeTable::new(&corpus, CodeLevel::One);
        assert_eq!(full.relevance(0, 1), Some(0.0));
        assert_eq!(one.relevance(0, 1), Some(0.5));
        let cfg = RelevanceConfig::default();
        let g = CitationGraph::build(&corpus);
        let c = build_cascade(&g, 0, Direction::Backward, None).unwrap();
        assert!(cascade_scores(&c, &one, &cfg).is_err());
    }

    fn code_set() -> impl Strategy<Value = BTreeSet<String>> {
        prop::collection::btree_set("[1-3]\\.[1-3]\\.[ab]", 0..5)
    }

    proptest! {
        #[test]
        fn jaccard_symmetric_bounded(a in code_set(), b in code_set()) {
            let ab = jaccard(&a, &b);
            prop_assert_eq!(ab, jaccard(&b, &a));
            if let Some(v) = ab {
                prop_assert!((0.0..=1.0).contains(&v));
                prop_assert_eq!(v == 1.0, a == b);
            } else {
                prop_assert!(a.is_empty() && b.is_empty());
            }
            let va: Vec<&String> = a.iter().collect();
            let vb: Vec<&String> = b.iter().collect();
            prop_assert_eq!(overlap_sorted(&va, &vb).ratio(), ab);
        }

        #[test]
        fn truncation_idempotent(code in "[0-9]{1,2}(\\.[0-9A-Za-z+-]{1,3}){0,3}") {
            for level in [CodeLevel::Full, CodeLevel::Two, CodeLevel::One] {
                let once = truncate_code(&code, level);
                prop_assert_eq!(truncate_code(once, level), once);
            }
        }
    }
}
