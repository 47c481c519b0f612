//! Reference cascades (and their forward mirror, citation cascades).
//!
//! A cascade partitions every node reachable from a focal paper into
//! generations by shortest-path distance along the traversal direction:
//! references for a backward cascade, citations for a forward one.

use serde::{Deserialize, Serialize};

use crate::corpus::NodeId;
use crate::error::{Error, Result};
use crate::graph::CitationGraph;

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize, clap::ValueEnum,
)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Follow references: references of references, and so on.
    #[default]
    Backward,
    /// Follow citations: citations of citations, and so on.
    Forward,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Backward => "backward",
            Direction::Forward => "forward",
        }
    }

    #[inline]
    fn neighbors(self, g: &CitationGraph, node: NodeId) -> &[NodeId] {
        match self {
            Direction::Backward => g.references_unchecked(node),
            Direction::Forward => g.citations_unchecked(node),
        }
    }
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Generation layers of one focal paper.
///
/// Layers are stored back to back in `nodes`; generation `g` occupies
/// `nodes[layer_offsets[g]..layer_offsets[g + 1]]` and is sorted ascending.
/// Generation 0 is the focal paper alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cascade {
    focal: NodeId,
    direction: Direction,
    nodes: Vec<NodeId>,
    layer_offsets: Vec<usize>,
    max_depth: Option<u32>,
}

impl Cascade {
    pub fn focal(&self) -> NodeId {
        self.focal
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// Depth limit the cascade was built with, if any.
    pub fn max_depth(&self) -> Option<u32> {
        self.max_depth
    }

    /// Index of the deepest nonempty generation.
    pub fn depth(&self) -> u32 {
        (self.layer_offsets.len() - 2) as u32
    }

    /// Total number of nodes, focal included.
    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    pub fn layer(&self, generation: u32) -> Option<&[NodeId]> {
        let g = generation as usize;
        (g + 1 < self.layer_offsets.len())
            .then(|| &self.nodes[self.layer_offsets[g]..self.layer_offsets[g + 1]])
    }

    pub fn layers(&self) -> impl ExactSizeIterator<Item = &[NodeId]> + '_ {
        self.layer_offsets
            .windows(2)
            .map(move |w| &self.nodes[w[0]..w[1]])
    }

    pub fn widths(&self) -> Vec<usize> {
        self.layer_offsets.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// All cascade nodes, generation by generation.
    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    /// Generation of `node` within this cascade, if present.
    pub fn generation_of(&self, node: NodeId) -> Option<u32> {
        self.layers()
            .position(|layer| layer.binary_search(&node).is_ok())
            .map(|g| g as u32)
    }

    /// True when a depth limit cut off at least one further generation.
    pub fn is_truncated(&self, g: &CitationGraph) -> bool {
        match self.max_depth {
            Some(limit) if self.depth() == limit => {
                self.layer(limit).unwrap_or_default().iter().any(|&u| {
                    self.direction
                        .neighbors(g, u)
                        .iter()
                        .any(|v| self.generation_of(*v).is_none())
                })
            }
            _ => false,
        }
    }
}

/// Maximum generation width, generation 0 included.
pub fn cascade_width(c: &Cascade) -> usize {
    c.layer_offsets
        .windows(2)
        .map(|w| w[1] - w[0])
        .max()
        .unwrap_or(0)
}

/// Nodes of a backward cascade that cite nothing in the corpus.
pub fn ancestors(c: &Cascade, g: &CitationGraph) -> Result<Vec<NodeId>> {
    if c.direction != Direction::Backward {
        return Err(Error::Usage(
            "ancestors are defined for backward cascades only".into(),
        ));
    }
    let mut out: Vec<NodeId> = c
        .nodes
        .iter()
        .copied()
        .filter(|&u| g.references_unchecked(u).is_empty())
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Reusable traversal scratch space.
///
/// Visit marks live in a bitset (one bit per node) that is wiped between
/// builds, which keeps the hot marker array cache resident on large graphs.
/// One builder per worker.
#[derive(Debug, Default)]
pub struct CascadeBuilder {
    visited: Vec<u64>,
    layer_bits: Vec<u64>,
}

impl CascadeBuilder {
    pub fn new(node_count: usize) -> Self {
        CascadeBuilder {
            visited: vec![0; node_count.div_ceil(64)],
            layer_bits: vec![0; node_count.div_ceil(64)],
        }
    }

    pub fn build(
        &mut self,
        g: &CitationGraph,
        focal: NodeId,
        direction: Direction,
        max_depth: Option<u32>,
    ) -> Result<Cascade> {
        g.check_node(focal)?;
        let words = g.node_count().div_ceil(64);
        if self.visited.len() != words {
            self.visited = vec![0; words];
            self.layer_bits = vec![0; words];
        } else {
            self.visited.fill(0);
        }
        let visited = &mut self.visited;
        let layer_bits = &mut self.layer_bits;

        visited[focal as usize >> 6] |= 1 << (focal & 63);
        let mut nodes = vec![focal];
        let mut layer_offsets = vec![0, 1];
        let mut depth = 0u32;
        loop {
            if max_depth.is_some_and(|limit| depth >= limit) {
                break;
            }
            let (start, end) = (
                layer_offsets[depth as usize],
                layer_offsets[depth as usize + 1],
            );
            for i in start..end {
                let u = nodes[i];
                for &v in direction.neighbors(g, u) {
                    let word = &mut visited[v as usize >> 6];
                    let bit = 1u64 << (v & 63);
                    if *word & bit == 0 {
                        *word |= bit;
                        nodes.push(v);
                    }
                }
            }
            if nodes.len() == end {
                break;
            }
            sort_layer(&mut nodes[end..], layer_bits);
            layer_offsets.push(nodes.len());
            depth += 1;
        }
        Ok(Cascade {
            focal,
            direction,
            nodes,
            layer_offsets,
            max_depth,
        })
    }
}

/// Sorts a freshly discovered layer. Large layers go through a bitset scan,
/// which beats a comparison sort once the layer is dense relative to the
/// node count. `bits` is all zero on entry and on exit.
fn sort_layer(layer: &mut [NodeId], bits: &mut [u64]) {
    if layer.len() * 16 < bits.len() {
        layer.sort_unstable();
        return;
    }
    for &v in layer.iter() {
        bits[v as usize >> 6] |= 1 << (v & 63);
    }
    let mut out = 0;
    for (w, word) in bits.iter_mut().enumerate() {
        let mut x = *word;
        if x == 0 {
            continue;
        }
        *word = 0;
        while x != 0 {
            layer[out] = ((w << 6) as u32) | x.trailing_zeros();
            out += 1;
            x &= x - 1;
        }
    }
    debug_assert_eq!(out, layer.len());
}

/// Builds one cascade with fresh scratch space. Prefer [`CascadeBuilder`]
/// when building many.
pub fn build_cascade(
    g: &CitationGraph,
    focal: NodeId,
    direction: Direction,
    max_depth: Option<u32>,
) -> Result<Cascade> {
    CascadeBuilder::new(g.node_count()).build(g, focal, direction, max_depth)
}

/// JSON form of a cascade with external ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CascadeDump {
    pub focal: String,
    pub direction: Direction,
    pub depth: u32,
    pub size: usize,
    pub widths: Vec<usize>,
    pub layers: Vec<Vec<String>>,
}

impl CascadeDump {
    pub fn new(c: &Cascade, g: &CitationGraph) -> Self {
        CascadeDump {
            focal: g.label(c.focal).to_string(),
            direction: c.direction,
            depth: c.depth(),
            size: c.size(),
            widths: c.widths(),
            layers: c
                .layers()
                .map(|layer| {
                    let mut ids: Vec<String> =
                        layer.iter().map(|&u| g.label(u).to_string()).collect();
                    ids.sort_unstable();
                    ids
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Corpus, DanglingPolicy, PaperRecord};

    fn graph(ids: &str, edges: &[(&str, &str)]) -> CitationGraph {
        let names: Vec<String> = ids.chars().map(String::from).collect();
        let corpus = Corpus::from_parts(
            names.iter().map(|n| PaperRecord::new(n.clone())),
            edges.iter().copied(),
            DanglingPolicy::Error,
        )
        .unwrap();
        CitationGraph::build(&corpus)
    }

    fn five() -> CitationGraph {
        graph(
            "ABCDE",
            &[("A", "B"), ("A", "C"), ("B", "D"), ("C", "D"), ("D", "E")],
        )
    }

    fn layers(c: &Cascade) -> Vec<Vec<NodeId>> {
        c.layers().map(<[_]>::to_vec).collect()
    }

    #[test]
    fn five_node_example() {
        let g = five();
        let c = build_cascade(&g, 0, Direction::Backward, None).unwrap();
        assert_eq!(layers(&c), vec![vec![0], vec![1, 2], vec![3], vec![4]]);
        assert_eq!((c.depth(), c.size()), (3, 5));
        assert_eq!(c.widths(), vec![1, 2, 1, 1]);
        assert_eq!(cascade_width(&c), 2);
        assert_eq!(ancestors(&c, &g).unwrap(), vec![4]);
    }

    #[test]
    fn isolated_focal() {
        let g = graph("AB", &[("B", "A")]);
        let c = build_cascade(&g, 0, Direction::Backward, None).unwrap();
        assert_eq!(layers(&c), vec![vec![0]]);
        assert_eq!((c.depth(), c.size(), cascade_width(&c)), (0, 1, 1));
        assert_eq!(ancestors(&c, &g).unwrap(), vec![0]);
    }

    #[test]
    fn shortcut_takes_shorter_path() {
        let g = graph("ABC", &[("A", "B"), ("B", "C"), ("A", "C")]);
        let c = build_cascade(&g, 0, Direction::Backward, None).unwrap();
        assert_eq!(layers(&c), vec![vec![0], vec![1, 2]]);
        assert_eq!((c.depth(), c.size()), (1, 3));
    }

    #[test]
    fn cycle_terminates() {
        let g = graph("ABC", &[("A", "B"), ("B", "C"), ("C", "A")]);
        let c = build_cascade(&g, 0, Direction::Backward, None).unwrap();
        assert_eq!(layers(&c), vec![vec![0], vec![1], vec![2]]);
        assert_eq!((c.depth(), c.size()), (2, 3));
        assert!(ancestors(&c, &g).unwrap().is_empty());
    }

    #[test]
    fn diamond_ancestor() {
        let g = graph("ABCD", &[("A", "B"), ("A", "C"), ("B", "D"), ("C", "D")]);
        let c = build_cascade(&g, 0, Direction::Backward, None).unwrap();
        assert_eq!(ancestors(&c, &g).unwrap(), vec![3]);
    }

    #[test]
    fn star_width() {
        let g = graph("ABCDE", &[("A", "B"), ("A", "C"), ("A", "D"), ("A", "E")]);
        let c = build_cascade(&g, 0, Direction::Backward, None).unwrap();
        assert_eq!(cascade_width(&c), 4);
    }

    #[test]
    fn forward_direction_and_ancestor_usage_error() {
        let g = five();
        let c = build_cascade(&g, 4, Direction::Forward, None).unwrap();
        assert_eq!(layers(&c), vec![vec![4], vec![3], vec![1, 2], vec![0]]);
        assert!(matches!(ancestors(&c, &g), Err(Error::Usage(_))));
    }

    #[test]
    fn truncation() {
        let g = five();
        let full = build_cascade(&g, 0, Direction::Backward, None).unwrap();
        let c = build_cascade(&g, 0, Direction::Backward, Some(1)).unwrap();
        assert_eq!(layers(&c), vec![vec![0], vec![1, 2]]);
        assert!(c.is_truncated(&g));
        assert!(!full.is_truncated(&g));
        // Frontier nodes B and C still cite something, so they are not ancestors.
        assert!(ancestors(&c, &g).unwrap().is_empty());
        let zero = build_cascade(&g, 0, Direction::Backward, Some(0)).unwrap();
        assert_eq!(zero.size(), 1);
        let exact = build_cascade(&g, 0, Direction::Backward, Some(3)).unwrap();
        assert!(!exact.is_truncated(&g));
        assert_eq!(
            exact,
            Cascade {
                max_depth: Some(3),
                ..full
            }
        );
    }

    #[test]
    fn out_of_range_focal() {
        assert!(matches!(
            build_cascade(&five(), 5, Direction::Backward, None),
            Err(Error::NodeIndex { .. })
        ));
    }

    #[test]
    fn builder_reuse_matches_fresh() {
        let g = five();
        let mut b = CascadeBuilder::new(g.node_count());
        for round in 0..3 {
            for u in 0..5 {
                for dir in [Direction::Backward, Direction::Forward] {
                    let reused = b.build(&g, u, dir, None).unwrap();
                    assert_eq!(
                        reused,
                        build_cascade(&g, u, dir, None).unwrap(),
                        "round {round}"
                    );
                }
            }
        }
        let other = graph("AB", &[("A", "B")]);
        assert_eq!(
            b.build(&other, 0, Direction::Backward, None)
                .unwrap()
                .size(),
            2
        );
        assert_eq!(b.build(&g, 0, Direction::Backward, None).unwrap().size(), 5);
    }

    #[test]
    fn dump_json_shape() {
        let g = five();
        let c = build_cascade(&g, 0, Direction::Backward, None).unwrap();
        let json = serde_json::to_string(&CascadeDump::new(&c, &g)).unwrap();
        assert_eq!(
            json,
            r#"{"focal":"A","direction":"backward","depth":3,"size":5,"widths":[1,2,1,1],"layers":[["A"],["B","C"],["D"],["E"]]}"#
        );
    }
}
