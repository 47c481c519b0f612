//! Binary snapshot of a corpus and its citation graph.
//!
//! Layout (all integers little-endian):
//!
//! ```text
//! magic      8 bytes  "RCASCSNP"
//! version    u8       1
//! node_count u64
//! edge_count u64
//! papers     node_count x { id: str, has_year: u8, year: i32, n_codes: u32, codes: str* }
//! ref_offsets  (node_count + 1) x u64
//! ref_targets  edge_count x u32
//! cit_offsets  (node_count + 1) x u64
//! cit_targets  edge_count x u32
//! ```
//!
//! `str` is a u32 byte length followed by UTF-8 bytes.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use crate::corpus::{Corpus, NodeId, PaperRecord};
use crate::error::{Error, Result};
use crate::graph::CitationGraph;

pub const MAGIC: &[u8; 8] = b"RCASCSNP";
pub const VERSION: u8 = 1;

/// A corpus together with the graph built from it.
#[derive(Debug, Clone)]
pub struct Snapshot {
    pub corpus: Corpus,
    pub graph: CitationGraph,
}

impl Snapshot {
    pub fn from_corpus(corpus: Corpus) -> Self {
        let graph = CitationGraph::build(&corpus);
        Snapshot { corpus, graph }
    }

    pub fn write_to<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        let (ref_offsets, ref_targets, cit_offsets, cit_targets) = self.graph.raw_parts();
        out.write_all(MAGIC)?;
        out.write_all(&[VERSION])?;
        out.write_all(&(self.graph.node_count() as u64).to_le_bytes())?;
        out.write_all(&(self.graph.edge_count() as u64).to_le_bytes())?;
        for p in self.corpus.papers() {
            write_str(out, &p.external_id)?;
            out.write_all(&[p.year.is_some() as u8])?;
            out.write_all(&p.year.unwrap_or(0).to_le_bytes())?;
            out.write_all(&(p.codes.len() as u32).to_le_bytes())?;
            for c in &p.codes {
                write_str(out, c)?;
            }
        }
        for chunk in [ref_offsets, cit_offsets]
            .into_iter()
            .zip([ref_targets, cit_targets])
        {
            let (offsets, targets) = chunk;
            for &o in offsets {
                out.write_all(&o.to_le_bytes())?;
            }
            for &t in targets {
                out.write_all(&t.to_le_bytes())?;
            }
        }
        out.flush()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut buf = Vec::new();
        self.write_to(&mut buf)
            .expect("writing to a Vec cannot fail");
        buf
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut out =
            BufWriter::with_capacity(1 << 20, File::create(path).map_err(|e| Error::io(path, e))?);
        self.write_to(&mut out).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut bytes = Vec::new();
        File::open(path)
            .and_then(|mut f| f.read_to_end(&mut bytes))
            .map_err(|e| Error::io(path, e))?;
        Self::from_bytes(&bytes)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = Cursor { bytes, pos: 0 };
        if r.take(8)? != MAGIC {
            return Err(Error::Snapshot("bad magic header".into()));
        }
        let version = r.take(1)?[0];
        if version != VERSION {
            return Err(Error::Snapshot(format!("unsupported version {version}")));
        }
        let n = r.u64()? as usize;
        let m = r.u64()? as usize;
        let mut papers = Vec::with_capacity(n);
        for _ in 0..n {
            let external_id = r.string()?;
            let has_year = r.take(1)?[0] != 0;
            let year = r.i32()?;
            let n_codes = r.u32()?;
            let mut codes = BTreeSet::new();
            for _ in 0..n_codes {
                codes.insert(r.string()?);
            }
            papers.push(PaperRecord {
                external_id,
                year: has_year.then_some(year),
                codes,
            });
        }
        let ref_offsets = r.u64_vec(n + 1)?;
        let ref_targets = r.u32_vec(m)?;
        let cit_offsets = r.u64_vec(n + 1)?;
        let cit_targets = r.u32_vec(m)?;
        if r.pos != bytes.len() {
            return Err(Error::Snapshot("trailing bytes".into()));
        }
        let labels = papers.iter().map(|p| p.external_id.clone()).collect();
        let graph = CitationGraph::from_raw_parts(
            ref_offsets,
            ref_targets,
            cit_offsets,
            cit_targets,
            labels,
        )?;
        let edges: Vec<(NodeId, NodeId)> = graph.edges().collect();
        let corpus = Corpus::from_papers(papers)
            .map_err(|e| Error::Snapshot(e.to_string()))?
            .with_resolved_edges(edges);
        Ok(Snapshot { corpus, graph })
    }
}

fn write_str<W: Write>(out: &mut W, s: &str) -> std::io::Result<()> {
    out.write_all(&(s.len() as u32).to_le_bytes())?;
    out.write_all(s.as_bytes())
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|&e| e <= self.bytes.len())
            .ok_or_else(|| Error::Snapshot("truncated snapshot".into()))?;
        let s = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn i32(&mut self) -> Result<i32> {
        Ok(i32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn string(&mut self) -> Result<String> {
        let len = self.u32()? as usize;
        String::from_utf8(self.take(len)?.to_vec())
            .map_err(|_| Error::Snapshot("invalid UTF-8 in string".into()))
    }

    fn u64_vec(&mut self, n: usize) -> Result<Vec<u64>> {
        let raw = self.take(
            n.checked_mul(8)
                .ok_or_else(|| Error::Snapshot("overflow".into()))?,
        )?;
        Ok(raw
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
            .collect())
    }

    fn u32_vec(&mut self, n: usize) -> Result<Vec<u32>> {
        let raw = self.take(
            n.checked_mul(4)
                .ok_or_else(|| Error::Snapshot("overflow".into()))?,
        )?;
        Ok(raw
            .chunks_exact(4)
            .map(|c| u32::from_le_bytes(c.try_into().unwrap()))
            .collect())
    }
}
