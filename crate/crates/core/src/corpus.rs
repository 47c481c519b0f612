//! Paper metadata and citation edge ingestion.
//!
//! Two plain-text layouts are supported:
//!
//! * papers table: UTF-8 TSV with header `id\tyear\tcodes`, where `codes` is
//!   `;`-separated and an empty field means absent;
//! * edges table: UTF-8 TSV with header `citing\tcited`.
//!
//! The APS adapter reads the publisher's citation CSV (`citing_doi,cited_doi`)
//! together with a metadata CSV (`doi,year,pacs`).

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense internal node index.
pub type NodeId = u32;

pub const PAPERS_HEADER: &str = "id\tyear\tcodes";
pub const EDGES_HEADER: &str = "citing\tcited";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaperRecord {
    pub external_id: String,
    pub year: Option<i32>,
    pub codes: BTreeSet<String>,
}

impl PaperRecord {
    pub fn new(external_id: impl Into<String>) -> Self {
        PaperRecord {
            external_id: external_id.into(),
            year: None,
            codes: BTreeSet::new(),
        }
    }

    pub fn with_year(mut self, year: i32) -> Self {
        self.year = Some(year);
        self
    }

    pub fn with_codes<I, S>(mut self, codes: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.codes = codes.into_iter().map(Into::into).collect();
        self
    }
}

/// What to do with an edge whose endpoint has no metadata record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DanglingPolicy {
    Drop,
    #[default]
    Stub,
    Error,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct IngestOptions {
    /// Remove interior whitespace from codes and fold them to lowercase.
    pub normalize_codes: bool,
}

/// Edge ingest counters.
///
/// `input_edge_rows == kept_edges + self_loops + duplicates + dangling_dropped`
/// always holds.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestStats {
    pub input_edge_rows: u64,
    pub kept_edges: u64,
    pub self_loops: u64,
    pub duplicates: u64,
    pub dangling_dropped: u64,
    pub stubs_created: u64,
}

impl IngestStats {
    pub fn is_balanced(&self) -> bool {
        self.input_edge_rows
            == self.kept_edges + self.self_loops + self.duplicates + self.dangling_dropped
    }
}

/// Papers plus resolved citing relations over interned ids.
///
/// A corpus with no edges loaded yet is the "partial" corpus produced by
/// [`load_papers`].
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    papers: Vec<PaperRecord>,
    edges: Vec<(NodeId, NodeId)>,
    id_index: HashMap<String, NodeId>,
    stats: IngestStats,
}

impl PartialEq for Corpus {
    fn eq(&self, other: &Self) -> bool {
        self.papers == other.papers && self.edges == other.edges
    }
}

impl Corpus {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_papers(papers: impl IntoIterator<Item = PaperRecord>) -> Result<Self> {
        let mut corpus = Corpus::new();
        for p in papers {
            corpus.add_paper(p)?;
        }
        Ok(corpus)
    }

    /// Builds a corpus from papers and (citing, cited) id pairs using the
    /// given dangling policy. Mostly useful for tests and generators.
    pub fn from_parts<'a>(
        papers: impl IntoIterator<Item = PaperRecord>,
        edges: impl IntoIterator<Item = (&'a str, &'a str)>,
        policy: DanglingPolicy,
    ) -> Result<Self> {
        let mut corpus = Corpus::from_papers(papers)?;
        let mut seen = HashSet::new();
        for (i, (citing, cited)) in edges.into_iter().enumerate() {
            corpus
                .ingest_edge(citing, cited, policy, &mut seen)
                .map_err(|msg| Error::Validation(format!("edge {}: {msg}", i + 1)))?;
        }
        Ok(corpus)
    }

    pub fn add_paper(&mut self, paper: PaperRecord) -> Result<NodeId> {
        if paper.external_id.is_empty() {
            return Err(Error::Validation("empty paper id".into()));
        }
        if self.id_index.contains_key(&paper.external_id) {
            return Err(Error::Validation(format!(
                "duplicate paper id `{}`",
                paper.external_id
            )));
        }
        let id = NodeId::try_from(self.papers.len())
            .map_err(|_| Error::Validation("corpus exceeds u32 node ids".into()))?;
        self.id_index.insert(paper.external_id.clone(), id);
        self.papers.push(paper);
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.papers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.papers.is_empty()
    }

    pub fn papers(&self) -> &[PaperRecord] {
        &self.papers
    }

    pub fn paper(&self, id: NodeId) -> Option<&PaperRecord> {
        self.papers.get(id as usize)
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn stats(&self) -> &IngestStats {
        &self.stats
    }

    pub fn lookup(&self, external_id: &str) -> Option<NodeId> {
        self.id_index.get(external_id).copied()
    }

    pub fn external_id(&self, id: NodeId) -> &str {
        &self.papers[id as usize].external_id
    }

    /// Adopts already-resolved edges (used when restoring from a snapshot).
    pub(crate) fn with_resolved_edges(mut self, edges: Vec<(NodeId, NodeId)>) -> Self {
        self.stats = IngestStats {
            input_edge_rows: edges.len() as u64,
            kept_edges: edges.len() as u64,
            ..IngestStats::default()
        };
        self.edges = edges;
        self
    }

    /// Resolves one raw edge. Errors only under [`DanglingPolicy::Error`].
    fn ingest_edge(
        &mut self,
        citing: &str,
        cited: &str,
        policy: DanglingPolicy,
        seen: &mut HashSet<u64>,
    ) -> std::result::Result<(), String> {
        if citing.is_empty() || cited.is_empty() {
            return Err("empty paper id in edge".into());
        }
        self.stats.input_edge_rows += 1;
        if citing == cited {
            self.stats.self_loops += 1;
            return Ok(());
        }
        let mut ends = [0 as NodeId; 2];
        for (slot, ext) in ends.iter_mut().zip([citing, cited]) {
            match self.id_index.get(ext) {
                Some(&id) => *slot = id,
                None => match policy {
                    DanglingPolicy::Error => {
                        self.stats.input_edge_rows -= 1;
                        return Err(format!("unknown paper id `{ext}`"));
                    }
                    DanglingPolicy::Drop => {
                        self.stats.dangling_dropped += 1;
                        return Ok(());
                    }
                    DanglingPolicy::Stub => {
                        *slot = self
                            .add_paper(PaperRecord::new(ext))
                            .map_err(|e| e.to_string())?;
                        self.stats.stubs_created += 1;
                    }
                },
            }
        }
        let key = ((ends[0] as u64) << 32) | ends[1] as u64;
        if seen.insert(key) {
            self.edges.push((ends[0], ends[1]));
            self.stats.kept_edges += 1;
        } else {
            self.stats.duplicates += 1;
        }
        Ok(())
    }

    /// Checks every corpus invariant.
    pub fn validate(&self) -> Result<()> {
        if self.id_index.len() != self.papers.len() {
            return Err(Error::Validation("id index is not a bijection".into()));
        }
        for (i, p) in self.papers.iter().enumerate() {
            if p.external_id.is_empty() {
                return Err(Error::Validation(format!("paper {i} has an empty id")));
            }
            if self.id_index.get(&p.external_id) != Some(&(i as NodeId)) {
                return Err(Error::Validation(format!(
                    "id index disagrees for `{}`",
                    p.external_id
                )));
            }
            if let Some(bad) = p.codes.iter().find(|c| !is_valid_code(c)) {
                return Err(Error::Validation(format!(
                    "paper `{}` has invalid code `{bad}`",
                    p.external_id
                )));
            }
        }
        let n = self.papers.len() as u64;
        let mut seen = HashSet::with_capacity(self.edges.len());
        for &(a, b) in &self.edges {
            if a as u64 >= n || b as u64 >= n {
                return Err(Error::Validation(format!("edge ({a}, {b}) out of range")));
            }
            if a == b {
                return Err(Error::Validation(format!("self-loop on node {a}")));
            }
            if !seen.insert((a, b)) {
                return Err(Error::Validation(format!("duplicate edge ({a}, {b})")));
            }
        }
        Ok(())
    }
}

fn is_valid_code(code: &str) -> bool {
    !code.is_empty() && !code.chars().any(char::is_whitespace)
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(|f| BufReader::with_capacity(1 << 20, f))
        .map_err(|e| Error::io(path, e))
}

/// Iterates `(line_number, line)` over a reader, stripping line terminators.
/// Blank lines are skipped.
fn for_each_line<R: BufRead>(
    mut reader: R,
    source: &Path,
    mut f: impl FnMut(u64, &str) -> Result<()>,
) -> Result<()> {
    let mut buf = String::new();
    let mut line_no = 0u64;
    loop {
        buf.clear();
        let n = reader
            .read_line(&mut buf)
            .map_err(|e| Error::io(source, e))?;
        if n == 0 {
            return Ok(());
        }
        line_no += 1;
        let line = buf.trim_end_matches(['\n', '\r']);
        if line.is_empty() {
            continue;
        }
        f(line_no, line)?;
    }
}

fn check_header(line_no: u64, line: &str, expected: &str, source: &Path) -> Result<()> {
    if line != expected {
        return Err(Error::parse(
            source,
            line_no,
            format!(
                "expected header `{}`, found `{line}`",
                expected.escape_default()
            ),
        ));
    }
    Ok(())
}

pub(crate) fn parse_codes(
    field: &str,
    opts: IngestOptions,
) -> std::result::Result<BTreeSet<String>, String> {
    let mut codes = BTreeSet::new();
    for raw in field.split(';') {
        let code = raw.trim();
        if code.is_empty() {
            continue;
        }
        let code = if opts.normalize_codes {
            code.chars()
                .filter(|c| !c.is_whitespace())
                .flat_map(char::to_lowercase)
                .collect()
        } else if code.chars().any(char::is_whitespace) {
            return Err(format!("code `{code}` contains whitespace"));
        } else {
            code.to_string()
        };
        codes.insert(code);
    }
    Ok(codes)
}

fn parse_year(field: &str) -> std::result::Result<Option<i32>, String> {
    let field = field.trim();
    if field.is_empty() {
        return Ok(None);
    }
    field
        .parse::<i32>()
        .map(Some)
        .map_err(|_| format!("invalid year `{field}`"))
}

/// Reads a papers table from any reader. `source` names the input in errors.
pub fn read_papers<R: BufRead>(reader: R, source: &Path, opts: IngestOptions) -> Result<Corpus> {
    let mut corpus = Corpus::new();
    let mut header_seen = false;
    for_each_line(reader, source, |line_no, line| {
        if !header_seen {
            header_seen = true;
            return check_header(line_no, line, PAPERS_HEADER, source);
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 3 {
            return Err(Error::parse(
                source,
                line_no,
                format!("expected 3 tab-separated columns, found {}", cols.len()),
            ));
        }
        let id = cols[0].trim();
        if id.is_empty() {
            return Err(Error::parse(source, line_no, "empty paper id"));
        }
        let year = parse_year(cols[1]).map_err(|m| Error::parse(source, line_no, m))?;
        let codes = parse_codes(cols[2], opts).map_err(|m| Error::parse(source, line_no, m))?;
        corpus
            .add_paper(PaperRecord {
                external_id: id.to_string(),
                year,
                codes,
            })
            .map_err(|e| match e {
                Error::Validation(m) => {
                    Error::Validation(format!("{}:{line_no}: {m}", source.display()))
                }
                other => other,
            })?;
        Ok(())
    })?;
    if !header_seen {
        return Err(Error::parse(source, 1, "missing header"));
    }
    Ok(corpus)
}

/// Loads the papers table at `path` into a corpus with no edges.
pub fn load_papers(path: impl AsRef<Path>, opts: IngestOptions) -> Result<Corpus> {
    let path = path.as_ref();
    read_papers(open(path)?, path, opts)
}

pub fn read_edges<R: BufRead>(
    reader: R,
    source: &Path,
    mut corpus: Corpus,
    policy: DanglingPolicy,
) -> Result<Corpus> {
    let mut seen: HashSet<u64> = corpus
        .edges
        .iter()
        .map(|&(a, b)| ((a as u64) << 32) | b as u64)
        .collect();
    let mut header_seen = false;
    for_each_line(reader, source, |line_no, line| {
        if !header_seen {
            header_seen = true;
            return check_header(line_no, line, EDGES_HEADER, source);
        }
        let mut cols = line.split('\t');
        let (Some(citing), Some(cited), None) = (cols.next(), cols.next(), cols.next()) else {
            return Err(Error::parse(
                source,
                line_no,
                format!(
                    "expected 2 tab-separated columns, found {}",
                    line.split('\t').count()
                ),
            ));
        };
        corpus
            .ingest_edge(citing.trim(), cited.trim(), policy, &mut seen)
            .map_err(|m| Error::parse(source, line_no, m))
    })?;
    if !header_seen {
        return Err(Error::parse(source, 1, "missing header"));
    }
    Ok(corpus)
}

/// Resolves the edges table at `path` against `corpus`.
pub fn load_edges(
    path: impl AsRef<Path>,
    corpus: Corpus,
    policy: DanglingPolicy,
) -> Result<Corpus> {
    let path = path.as_ref();
    read_edges(open(path)?, path, corpus, policy)
}

/// Loads both tables and validates the result.
pub fn load_corpus(
    papers: impl AsRef<Path>,
    edges: impl AsRef<Path>,
    policy: DanglingPolicy,
    opts: IngestOptions,
) -> Result<Corpus> {
    let corpus = load_edges(edges, load_papers(papers, opts)?, policy)?;
    corpus.validate()?;
    Ok(corpus)
}

/// Loads the APS metadata CSV (`doi,year,pacs`, codes `;`-separated) and
/// citation CSV (`citing_doi,cited_doi`).
pub fn load_aps(
    metadata: impl AsRef<Path>,
    citations: impl AsRef<Path>,
    policy: DanglingPolicy,
    opts: IngestOptions,
) -> Result<Corpus> {
    let metadata = metadata.as_ref();
    let citations = citations.as_ref();
    let csv_err = |path: &Path, e: csv::Error| -> Error {
        let line = e.position().map(|p| p.line()).unwrap_or(0);
        match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::io(path, io),
            kind => Error::parse(path, line, format!("{kind:?}")),
        }
    };

    let mut corpus = Corpus::new();
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(open(metadata)?);
    let mut record = csv::StringRecord::new();
    while rdr
        .read_record(&mut record)
        .map_err(|e| csv_err(metadata, e))?
    {
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.len() != 3 {
            return Err(Error::parse(
                metadata,
                line,
                format!("expected 3 columns, found {}", record.len()),
            ));
        }
        let year = parse_year(&record[1]).map_err(|m| Error::parse(metadata, line, m))?;
        let codes = parse_codes(&record[2], opts).map_err(|m| Error::parse(metadata, line, m))?;
        corpus
            .add_paper(PaperRecord {
                external_id: record[0].trim().to_string(),
                year,
                codes,
            })
            .map_err(|e| Error::Validation(format!("{}:{line}: {e}", metadata.display())))?;
    }

    let mut seen = HashSet::new();
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(open(citations)?);
    while rdr
        .read_record(&mut record)
        .map_err(|e| csv_err(citations, e))?
    {
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.len() != 2 {
            return Err(Error::parse(
                citations,
                line,
                format!("expected 2 columns, found {}", record.len()),
            ));
        }
        corpus
            .ingest_edge(record[0].trim(), record[1].trim(), policy, &mut seen)
            .map_err(|m| Error::parse(citations, line, m))?;
    }
    corpus.validate()?;
    Ok(corpus)
}

pub fn write_papers<W: Write>(corpus: &Corpus, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{PAPERS_HEADER}")?;
    for p in &corpus.papers {
        let year = p.year.map(|y| y.to_string()).unwrap_or_default();
        let codes = p
            .codes
            .iter()
            .map(String::as_str)
            .collect::<Vec<_>>()
            .join(";");
        writeln!(out, "{}\t{year}\t{codes}", p.external_id)?;
    }
    out.flush()
}

pub fn write_edges<W: Write>(corpus: &Corpus, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{EDGES_HEADER}")?;
    for &(a, b) in &corpus.edges {
        writeln!(out, "{}\t{}", corpus.external_id(a), corpus.external_id(b))?;
    }
    out.flush()
}

/// Writes `papers.tsv`-style and `edges.tsv`-style files.
pub fn save_tables(corpus: &Corpus, papers: &Path, edges: &Path) -> Result<()> {
    let create = |p: &Path| {
        File::create(p)
            .map(BufWriter::new)
            .map_err(|e| Error::io(p, e))
    };
    write_papers(corpus, create(papers)?).map_err(|e| Error::io(papers, e))?;
    write_edges(corpus, create(edges)?).map_err(|e| Error::io(edges, e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn papers(text: &str) -> Result<Corpus> {
        read_papers(
            text.as_bytes(),
            Path::new("papers.tsv"),
            IngestOptions::default(),
        )
    }

    fn with_edges(corpus: Corpus, text: &str, policy: DanglingPolicy) -> Result<Corpus> {
        read_edges(text.as_bytes(), Path::new("edges.tsv"), corpus, policy)
    }

    #[test]
    fn parses_full_row() {
        let c = papers("id\tyear\tcodes\n10.1103/A\t1999\t21.60.Cs;24.10.-i\n").unwrap();
        assert_eq!(
            c.papers()[0],
            PaperRecord::new("10.1103/A")
                .with_year(1999)
                .with_codes(["21.60.Cs", "24.10.-i"])
        );
    }

    #[test]
    fn parses_empty_fields() {
        let c = papers("id\tyear\tcodes\n10.1103/B\t\t\n").unwrap();
        assert_eq!(c.papers()[0], PaperRecord::new("10.1103/B"));
    }

    #[test]
    fn rejects_duplicate_id() {
        let err = papers("id\tyear\tcodes\n10.1103/A\t\t\n10.1103/A\t2000\t\n").unwrap_err();
        assert!(
            matches!(err, Error::Validation(ref m) if m.contains("10.1103/A") && m.contains(":3:"))
        );
    }

    #[test]
    fn wrong_column_count_reports_line() {
        let err = papers("id\tyear\tcodes\nA\t1999\t\nB\t2000\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
    }

    #[test]
    fn bad_header_and_bad_year() {
        assert!(matches!(
            papers("A\t1\t\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            papers("id\tyear\tcodes\nA\tnineteen\t\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn codes_trimmed_and_whitespace_rejected() {
        let c = papers("id\tyear\tcodes\nA\t\t 21.60.Cs ; ;52.35.-g\n").unwrap();
        assert_eq!(c.papers()[0].codes.len(), 2);
        assert!(papers("id\tyear\tcodes\nA\t\t21 60\n").is_err());
        let norm = read_papers(
            "id\tyear\tcodes\nA\t\t21 60.Cs\n".as_bytes(),
            Path::new("p"),
            IngestOptions {
                normalize_codes: true,
            },
        )
        .unwrap();
        assert!(norm.papers()[0].codes.contains("2160.cs"));
    }

    fn abc() -> Corpus {
        papers("id\tyear\tcodes\nA\t\t\nB\t\t\nC\t\t\n").unwrap()
    }

    #[test]
    fn self_loop_dropped() {
        let c = with_edges(abc(), "citing\tcited\nA\tA\nA\tB\n", DanglingPolicy::Stub).unwrap();
        assert_eq!(c.stats().self_loops, 1);
        assert_eq!(c.edges(), &[(0, 1)]);
    }

    #[test]
    fn dangling_stub_creates_record() {
        let c = with_edges(abc(), "citing\tcited\nA\tX\n", DanglingPolicy::Stub).unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(c.papers()[3], PaperRecord::new("X"));
        assert_eq!(c.edges(), &[(0, 3)]);
        assert_eq!(c.stats().stubs_created, 1);
        c.validate().unwrap();
    }

    #[test]
    fn dangling_drop_counts() {
        let c = with_edges(abc(), "citing\tcited\nA\tX\n", DanglingPolicy::Drop).unwrap();
        assert_eq!(c.len(), 3);
        assert!(c.edges().is_empty());
        assert_eq!(c.stats().dangling_dropped, 1);
    }

    #[test]
    fn dangling_error_names_line() {
        let err =
            with_edges(abc(), "citing\tcited\nA\tB\nA\tX\n", DanglingPolicy::Error).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, ref message, .. } if message.contains('X')));
    }

    #[test]
    fn duplicates_counted_and_balanced() {
        let c = with_edges(
            abc(),
            "citing\tcited\nA\tB\nA\tB\nB\tB\nA\tZ\nB\tC\n",
            DanglingPolicy::Drop,
        )
        .unwrap();
        let s = c.stats();
        assert_eq!(
            (s.kept_edges, s.duplicates, s.self_loops, s.dangling_dropped),
            (2, 1, 1, 1)
        );
        assert_eq!(s.input_edge_rows, 5);
        assert!(s.is_balanced());
    }

    #[test]
    fn round_trip_tables() {
        let c = with_edges(
            papers("id\tyear\tcodes\nA\t1999\t21.60.Cs;24.10.-i\nB\t\t\nC\t2001\t52.35.-g\n")
                .unwrap(),
            "citing\tcited\nA\tB\nC\tA\nC\tQ\n",
            DanglingPolicy::Stub,
        )
        .unwrap();
        let mut p = Vec::new();
        let mut e = Vec::new();
        write_papers(&c, &mut p).unwrap();
        write_edges(&c, &mut e).unwrap();
        let back = with_edges(
            read_papers(p.as_slice(), Path::new("p"), IngestOptions::default()).unwrap(),
            std::str::from_utf8(&e).unwrap(),
            DanglingPolicy::Error,
        )
        .unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn aps_adapter() {
        let dir = tempfile::tempdir().unwrap();
        let meta = dir.path().join("meta.csv");
        let cites = dir.path().join("cites.csv");
        std::fs::write(
            &meta,
            "doi,year,pacs\n10.1/a,1980,21.60.Cs;24.10.-i\n10.1/b,1970,\n",
        )
        .unwrap();
        std::fs::write(
            &cites,
            "citing_doi,cited_doi\n10.1/a,10.1/b\n10.1/a,10.1/zz\n",
        )
        .unwrap();
        let c = load_aps(
            &meta,
            &cites,
            DanglingPolicy::Drop,
            IngestOptions::default(),
        )
        .unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.edges(), &[(0, 1)]);
        assert_eq!(c.stats().dangling_dropped, 1);
    }

    #[test]
    fn missing_file_names_path() {
        let err = load_papers("/nonexistent/papers.tsv", IngestOptions::default()).unwrap_err();
        assert!(err.to_string().contains("/nonexistent/papers.tsv"));
    }
}
