//! Immutable dual-adjacency citation graph.
//!
//! Both directions are stored in compressed sparse row form: the references
//! of node `u` live in `ref_targets[ref_offsets[u]..ref_offsets[u + 1]]`, and
//! its citations in the matching `cit_*` arrays. Target lists are sorted and
//! duplicate-free.

use crate::corpus::{Corpus, NodeId};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CitationGraph {
    node_count: usize,
    ref_offsets: Vec<u64>,
    ref_targets: Vec<NodeId>,
    cit_offsets: Vec<u64>,
    cit_targets: Vec<NodeId>,
    labels: Vec<String>,
}

/// Counting-sort construction of one CSR direction. Targets are sorted per
/// node and duplicates removed.
fn build_csr(
    node_count: usize,
    edges: &[(NodeId, NodeId)],
    key: impl Fn(&(NodeId, NodeId)) -> (NodeId, NodeId),
) -> (Vec<u64>, Vec<NodeId>) {
    let mut offsets = vec![0u64; node_count + 1];
    for e in edges {
        offsets[key(e).0 as usize + 1] += 1;
    }
    for i in 0..node_count {
        offsets[i + 1] += offsets[i];
    }
    let mut cursor: Vec<u64> = offsets[..node_count].to_vec();
    let mut targets = vec![0 as NodeId; edges.len()];
    for e in edges {
        let (src, dst) = key(e);
        let slot = &mut cursor[src as usize];
        targets[*slot as usize] = dst;
        *slot += 1;
    }
    let mut compacted = Vec::with_capacity(targets.len());
    let mut new_offsets = Vec::with_capacity(node_count + 1);
    new_offsets.push(0u64);
    for u in 0..node_count {
        let list = &mut targets[offsets[u] as usize..offsets[u + 1] as usize];
        list.sort_unstable();
        let start = compacted.len();
        for &t in list.iter() {
            if compacted.len() == start || *compacted.last().unwrap() != t {
                compacted.push(t);
            }
        }
        new_offsets.push(compacted.len() as u64);
    }
    (new_offsets, compacted)
}

impl CitationGraph {
    /// Builds the graph from a corpus. Node ids are corpus indices.
    pub fn build(corpus: &Corpus) -> Self {
        let node_count = corpus.len();
        let edges = corpus.edges();
        let (ref_offsets, ref_targets) = build_csr(node_count, edges, |&(a, b)| (a, b));
        let (cit_offsets, cit_targets) = build_csr(node_count, edges, |&(a, b)| (b, a));
        CitationGraph {
            node_count,
            ref_offsets,
            ref_targets,
            cit_offsets,
            cit_targets,
            labels: corpus
                .papers()
                .iter()
                .map(|p| p.external_id.clone())
                .collect(),
        }
    }

    pub(crate) fn from_raw_parts(
        ref_offsets: Vec<u64>,
        ref_targets: Vec<NodeId>,
        cit_offsets: Vec<u64>,
        cit_targets: Vec<NodeId>,
        labels: Vec<String>,
    ) -> Result<Self> {
        let g = CitationGraph {
            node_count: labels.len(),
            ref_offsets,
            ref_targets,
            cit_offsets,
            cit_targets,
            labels,
        };
        g.check_invariants().map_err(Error::Snapshot)?;
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.ref_targets.len()
    }

    pub fn label(&self, node: NodeId) -> &str {
        &self.labels[node as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn check_node(&self, node: NodeId) -> Result<()> {
        if (node as usize) < self.node_count {
            Ok(())
        } else {
            Err(Error::NodeIndex {
                index: node as u64,
                node_count: self.node_count,
            })
        }
    }

    /// Papers cited by `node`, ascending.
    pub fn references(&self, node: NodeId) -> Result<&[NodeId]> {
        self.check_node(node)?;
        Ok(self.references_unchecked(node))
    }

    /// Papers citing `node`, ascending.
    pub fn citations(&self, node: NodeId) -> Result<&[NodeId]> {
        self.check_node(node)?;
        Ok(self.citations_unchecked(node))
    }

    pub fn out_degree(&self, node: NodeId) -> Result<usize> {
        self.references(node).map(<[_]>::len)
    }

    pub fn in_degree(&self, node: NodeId) -> Result<usize> {
        self.citations(node).map(<[_]>::len)
    }

    #[inline]
    pub(crate) fn references_unchecked(&self, node: NodeId) -> &[NodeId] {
        let u = node as usize;
        &self.ref_targets[self.ref_offsets[u] as usize..self.ref_offsets[u + 1] as usize]
    }

    #[inline]
    pub(crate) fn citations_unchecked(&self, node: NodeId) -> &[NodeId] {
        let u = node as usize;
        &self.cit_targets[self.cit_offsets[u] as usize..self.cit_offsets[u + 1] as usize]
    }

    pub(crate) fn raw_parts(&self) -> (&[u64], &[NodeId], &[u64], &[NodeId]) {
        (
            &self.ref_offsets,
            &self.ref_targets,
            &self.cit_offsets,
            &self.cit_targets,
        )
    }

    /// Every reference edge as (citing, cited), in node order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        (0..self.node_count as NodeId)
            .flat_map(move |u| self.references_unchecked(u).iter().map(move |&v| (u, v)))
    }

    /// Verifies offset shapes, per-node ordering and the transpose property.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let n = self.node_count;
        for (name, offsets, targets) in [
            ("ref", &self.ref_offsets, &self.ref_targets),
            ("cit", &self.cit_offsets, &self.cit_targets),
        ] {
            if offsets.len() != n + 1 || offsets[0] != 0 {
                return Err(format!("{name}_offsets has wrong shape"));
            }
            if offsets.windows(2).any(|w| w[0] > w[1]) {
                return Err(format!("{name}_offsets is not nondecreasing"));
            }
            if offsets[n] as usize != targets.len() {
                return Err(format!("{name}_offsets does not end at the edge count"));
            }
            for u in 0..n {
                let list = &targets[offsets[u] as usize..offsets[u + 1] as usize];
                if list.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(format!("{name} list of node {u} not strictly ascending"));
                }
                if list.last().is_some_and(|&t| t as usize >= n) {
                    return Err(format!(
                        "{name} list of node {u} has an out-of-range target"
                    ));
                }
            }
        }
        if self.ref_targets.len() != self.cit_targets.len() {
            return Err("directions disagree on edge count".into());
        }
        let mut fwd: Vec<(NodeId, NodeId)> = self.edges().collect();
        let mut rev: Vec<(NodeId, NodeId)> = (0..n as NodeId)
            .flat_map(|v| self.citations_unchecked(v).iter().map(move |&u| (u, v)))
            .collect();
        fwd.sort_unstable();
        rev.sort_unstable();
        if fwd != rev {
            return Err("citation adjacency is not the transpose of reference adjacency".into());
        }
        Ok(())
    }
}
