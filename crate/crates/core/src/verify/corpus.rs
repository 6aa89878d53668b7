//! Tables of cones transcribed from the literature, and diffs against them.
//!
//! A corpus file is JSON: either a bare array of records or an object
//! `{"legend": {...}, "records": [...]}`. A record carries `rank`, `w` and
//! either `generators` (alias `gens`) or `equations`, the latter written the
//! way the tables print them: comma-separated chains such as
//! `x31=x41=0, x53*x42-x52*x43=0`, `n*` for the whole space. Legend names
//! (e.g. `D`) are expanded before parsing.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::ConeSet;
use crate::groebner::{containment_witness, radical_member, GroebnerError, Ideal};
use crate::poly::parse_poly;
use crate::schubert::{coordinate_names, coordinate_table, TangentCone};
use crate::weyl::{parse_cycles, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("expected an array of records or an object with \"records\"")]
    Shape,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub rank: usize,
    pub w: String,
    #[serde(default, alias = "gens", skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equations: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub row: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Corpus {
    pub legend: BTreeMap<String, String>,
    pub entries: Vec<CorpusEntry>,
    /// Records that failed to deserialize: `(position, message)`.
    pub errors: Vec<(usize, String)>,
}

impl Corpus {
    /// Merges several files; legends are combined.
    pub fn merge(parts: impl IntoIterator<Item = Corpus>) -> Corpus {
        let mut out = Corpus::default();
        for p in parts {
            let offset = out.entries.len() + out.errors.len();
            out.legend.extend(p.legend);
            out.errors
                .extend(p.errors.into_iter().map(|(i, m)| (i + offset, m)));
            out.entries.extend(p.entries);
        }
        out
    }
}

#[derive(Deserialize)]
struct Document {
    #[serde(default)]
    legend: BTreeMap<String, String>,
    records: Vec<serde_json::Value>,
}

pub fn load_corpus(text: &str) -> Result<Corpus, CorpusError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| CorpusError::Json(e.to_string()))?;
    let (legend, records) = match value {
        serde_json::Value::Array(records) => (BTreeMap::new(), records),
        v @ serde_json::Value::Object(_) => {
            let doc: Document = serde_json::from_value(v).map_err(|_| CorpusError::Shape)?;
            (doc.legend, doc.records)
        }
        _ => return Err(CorpusError::Shape),
    };
    let mut corpus = Corpus {
        legend,
        ..Corpus::default()
    };
    for (i, r) in records.into_iter().enumerate() {
        match serde_json::from_value::<CorpusEntry>(r) {
            Ok(e) => corpus.entries.push(e),
            Err(e) => corpus.errors.push((i, e.to_string())),
        }
    }
    Ok(corpus)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnomalyKind {
    /// The same element appears in more than one record.
    DuplicateLabel,
    /// A chain with `0` in the middle, like `x31=0=x52=0`.
    InnerZero,
    /// An entry consisting of just `0`, read as the origin.
    BareZero,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Anomaly {
    pub w: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub row: Option<usize>,
    pub kind: AnomalyKind,
    pub detail: String,
}

fn expand_legend(text: &str, legend: &BTreeMap<String, String>) -> String {
    if legend.is_empty() {
        return text.to_string();
    }
    let mut out = String::new();
    let mut word = String::new();
    let flush = |word: &mut String, out: &mut String| {
        match legend.get(word.as_str()) {
            Some(e) => {
                out.push('(');
                out.push_str(e);
                out.push(')');
            }
            None => out.push_str(word),
        }
        word.clear();
    };
    for ch in text.chars() {
        if ch.is_alphanumeric() || ch == '_' {
            word.push(ch);
        } else {
            flush(&mut word, &mut out);
            out.push(ch);
        }
    }
    flush(&mut word, &mut out);
    out
}

/// Turns table-style equations into generator strings.
///
/// Each comma-separated chain `a = b = ... = 0` contributes every side other
/// than `0`; a chain without a `0` side contributes the differences with its
/// first side. `n*` is the whole space. A lone `0` is read as the origin of
/// a rank-`rank` space and flagged.
pub fn equations_to_generators(
    text: &str,
    rank: usize,
    legend: &BTreeMap<String, String>,
) -> Result<(Vec<String>, Vec<AnomalyKind>), String> {
    let text = text.trim();
    let mut anomalies = Vec::new();
    if matches!(text, "n*" | "n^*" | "") {
        return Ok((Vec::new(), anomalies));
    }
    if text == "0" {
        anomalies.push(AnomalyKind::BareZero);
        return Ok((coordinate_names(rank), anomalies));
    }
    let expanded = expand_legend(text, legend);
    let mut gens = Vec::new();
    for chain in expanded.split(',') {
        let sides: Vec<&str> = chain.split('=').map(str::trim).collect();
        if sides.len() < 2 || sides.iter().any(|s| s.is_empty()) {
            return Err(format!("cannot read equation {:?}", chain.trim()));
        }
        let zeros: Vec<usize> = (0..sides.len()).filter(|&i| sides[i] == "0").collect();
        if zeros.iter().any(|&i| i + 1 != sides.len()) {
            anomalies.push(AnomalyKind::InnerZero);
        }
        if zeros.is_empty() {
            for s in &sides[1..] {
                gens.push(format!("({}) - ({})", sides[0], s));
            }
        } else {
            gens.extend(sides.iter().filter(|s| **s != "0").map(|s| s.to_string()));
        }
    }
    Ok((gens, anomalies))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AllowlistEntry {
    pub rank: usize,
    pub w: String,
    #[serde(default)]
    pub reason: String,
}

/// Discrepancies a human has confirmed as misprints. Allowlisted rows still
/// carry their witness in the report.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Allowlist {
    pub entries: Vec<AllowlistEntry>,
    keys: HashSet<(usize, Vec<usize>)>,
}

impl Allowlist {
    pub fn new(entries: Vec<AllowlistEntry>) -> Result<Self, String> {
        let mut keys = HashSet::new();
        for e in &entries {
            let w = parse_cycles(&e.w, e.rank).map_err(|err| format!("allowlist entry {}: {err}", e.w))?;
            keys.insert((e.rank, w.one_line().to_vec()));
        }
        Ok(Allowlist { entries, keys })
    }

    pub fn contains(&self, rank: usize, w: &Permutation) -> bool {
        self.keys.contains(&(rank, w.one_line().to_vec()))
    }

    pub fn reason(&self, rank: usize, w: &Permutation) -> Option<&str> {
        self.entries.iter().find_map(|e| {
            let p = parse_cycles(&e.w, e.rank).ok()?;
            (e.rank == rank && &p == w).then_some(e.reason.as_str())
        })
    }
}

pub fn load_allowlist(text: &str) -> Result<Allowlist, CorpusError> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Shape {
        List(Vec<AllowlistEntry>),
        Doc { entries: Vec<AllowlistEntry> },
    }
    let shape: Shape = serde_json::from_str(text).map_err(|e| CorpusError::Json(e.to_string()))?;
    let entries = match shape {
        Shape::List(e) | Shape::Doc { entries: e } => e,
    };
    Allowlist::new(entries).map_err(CorpusError::Json)
}

/// Which variety the witness fails to vanish on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessSide {
    /// A corpus equation that is not in the radical of the computed ideal.
    CorpusEquationOffComputed,
    /// A computed generator that is not in the radical of the corpus ideal.
    ComputedEquationOffCorpus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Match,
    Mismatch {
        witness: String,
        side: WitnessSide,
        allowlisted: bool,
    },
    MissingFromCorpus {
        allowlisted: bool,
    },
    BadEntry {
        message: String,
    },
}

impl Verdict {
    /// Counts against the run unless allowlisted.
    pub fn is_failure(&self) -> bool {
        match self {
            Verdict::Match => false,
            Verdict::Mismatch { allowlisted, .. } | Verdict::MissingFromCorpus { allowlisted } => !allowlisted,
            Verdict::BadEntry { .. } => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffEntry {
    pub w: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub row: Option<usize>,
    /// Generators read from the corpus row.
    pub corpus_generators: Vec<String>,
    #[serde(flatten)]
    pub verdict: Verdict,
}

impl DiffEntry {
    /// Re-derives a mismatch from scratch: the witness must fail radical
    /// membership in the ideal named by the verdict. `Ok(false)` means the
    /// witness does not hold up.
    pub fn recheck(&self, computed: &TangentCone) -> Result<bool, String> {
        let Verdict::Mismatch { witness, side, .. } = &self.verdict else {
            return Ok(true);
        };
        let table = coordinate_table(computed.rank);
        let f = parse_poly(witness, &table).map_err(|e| e.to_string())?;
        let ideal = match side {
            WitnessSide::CorpusEquationOffComputed => computed.ideal(),
            WitnessSide::ComputedEquationOffCorpus => {
                let gens: Vec<&str> = self.corpus_generators.iter().map(String::as_str).collect();
                Ideal::parse(&table, &gens).map_err(|e| e.to_string())?
            }
        };
        radical_member(&f, &ideal)
            .map(|inside| !inside)
            .map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffSummary {
    pub entries: usize,
    pub matched: usize,
    pub mismatched: usize,
    /// Mismatched or missing rows covered by the allowlist.
    pub allowlisted: usize,
    pub missing: usize,
    pub bad_entries: usize,
    pub anomalies: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffReport {
    pub rank: usize,
    pub entries: Vec<DiffEntry>,
    pub anomalies: Vec<Anomaly>,
    pub summary: DiffSummary,
}

impl DiffReport {
    pub fn is_pass(&self) -> bool {
        !self.entries.iter().any(|e| e.verdict.is_failure())
    }

    /// Mismatches, missing rows and bad entries, allowlisted or not.
    pub fn discrepancies(&self) -> impl Iterator<Item = &DiffEntry> {
        self.entries.iter().filter(|e| e.verdict != Verdict::Match)
    }
}

impl fmt::Display for DiffReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.summary;
        writeln!(
            f,
            "corpus rank {}: {} entries, {} match, {} mismatch, {} missing, {} bad ({} allowlisted), {} anomalies: {}",
            self.rank,
            s.entries,
            s.matched,
            s.mismatched,
            s.missing,
            s.bad_entries,
            s.allowlisted,
            s.anomalies,
            if self.is_pass() { "PASS" } else { "FAIL" }
        )?;
        for e in self.discrepancies() {
            let place = match (e.table, e.row) {
                (Some(t), Some(r)) => format!(" (table {t}, row {r})"),
                _ => String::new(),
            };
            match &e.verdict {
                Verdict::Mismatch {
                    witness,
                    side,
                    allowlisted,
                } => {
                    let which = match side {
                        WitnessSide::CorpusEquationOffComputed => "corpus equation not vanishing on the computed cone",
                        WitnessSide::ComputedEquationOffCorpus => "computed equation not vanishing on the corpus cone",
                    };
                    let tag = if *allowlisted { " [allowlisted]" } else { "" };
                    writeln!(f, "  mismatch {}{place}: {which}: {witness}{tag}", e.w)?;
                }
                Verdict::MissingFromCorpus { allowlisted } => {
                    let tag = if *allowlisted { " [allowlisted]" } else { "" };
                    writeln!(f, "  missing {}{tag}", e.w)?;
                }
                Verdict::BadEntry { message } => writeln!(f, "  bad entry {}{place}: {message}", e.w)?,
                Verdict::Match => {}
            }
        }
        for a in &self.anomalies {
            let place = match (a.table, a.row) {
                (Some(t), Some(r)) => format!(" (table {t}, row {r})"),
                _ => String::new(),
            };
            writeln!(f, "  anomaly {}{place}: {}", a.w, a.detail)?;
        }
        Ok(())
    }
}

fn compare_one(computed: &Ideal, corpus: &Ideal) -> Result<Verdict, GroebnerError> {
    if let Some(g) = containment_witness(corpus, computed)? {
        return Ok(Verdict::Mismatch {
            witness: g.to_string(),
            side: WitnessSide::CorpusEquationOffComputed,
            allowlisted: false,
        });
    }
    if let Some(g) = containment_witness(computed, corpus)? {
        return Ok(Verdict::Mismatch {
            witness: g.to_string(),
            side: WitnessSide::ComputedEquationOffCorpus,
            allowlisted: false,
        });
    }
    Ok(Verdict::Match)
}

/// Diffs every corpus record of the set's rank against the computed cones,
/// and lists the elements no record mentions.
pub fn compare_corpus(set: &ConeSet, corpus: &Corpus, allowlist: &Allowlist) -> DiffReport {
    let rank = set.rank;
    let table = coordinate_table(rank);
    let mut entries = Vec::new();
    let mut anomalies = Vec::new();
    let mut seen: HashMap<Vec<usize>, String> = HashMap::new();
    for (pos, msg) in &corpus.errors {
        entries.push(DiffEntry {
            w: format!("record {pos}"),
            table: None,
            row: None,
            corpus_generators: Vec::new(),
            verdict: Verdict::BadEntry { message: msg.clone() },
        });
    }
    for rec in corpus.entries.iter().filter(|e| e.rank == rank) {
        let mut entry = DiffEntry {
            w: rec.w.clone(),
            table: rec.table,
            row: rec.row,
            corpus_generators: Vec::new(),
            verdict: Verdict::Match,
        };
        let bad = |entry: &mut DiffEntry, message: String| entry.verdict = Verdict::BadEntry { message };
        let w = match parse_cycles(&rec.w, rank) {
            Ok(w) => w,
            Err(e) => {
                bad(&mut entry, e.to_string());
                entries.push(entry);
                continue;
            }
        };
        let anomaly = |kind, detail: String| Anomaly {
            w: rec.w.clone(),
            table: rec.table,
            row: rec.row,
            kind,
            detail,
        };
        if let Some(first) = seen.get(w.one_line()) {
            let detail = format!("{} listed again, first as {first}", rec.w);
            anomalies.push(anomaly(AnomalyKind::DuplicateLabel, detail));
        }
        seen.entry(w.one_line().to_vec()).or_insert_with(|| rec.w.clone());
        let gens = match (&rec.generators, &rec.equations) {
            (Some(g), _) => g.iter().map(|s| expand_legend(s, &corpus.legend)).collect(),
            (None, Some(eq)) => match equations_to_generators(eq, rank, &corpus.legend) {
                Ok((g, kinds)) => {
                    for k in kinds {
                        let detail = match k {
                            AnomalyKind::InnerZero => format!("chain with an inner 0 in {eq:?}"),
                            AnomalyKind::BareZero => format!("{eq:?} read as the origin"),
                            AnomalyKind::DuplicateLabel => unreachable!(),
                        };
                        anomalies.push(anomaly(k, detail));
                    }
                    g
                }
                Err(e) => {
                    bad(&mut entry, e);
                    entries.push(entry);
                    continue;
                }
            },
            (None, None) => {
                bad(&mut entry, "record has neither generators nor equations".into());
                entries.push(entry);
                continue;
            }
        };
        entry.corpus_generators = gens;
        let strs: Vec<&str> = entry.corpus_generators.iter().map(String::as_str).collect();
        let ideal = match Ideal::parse(&table, &strs) {
            Ok(i) => i,
            Err(e) => {
                bad(&mut entry, e.to_string());
                entries.push(entry);
                continue;
            }
        };
        // normalized printing of the parsed generators
        entry.corpus_generators = ideal.generators().iter().map(|g| g.to_string()).collect();
        let Some(cone) = set.get(&w) else {
            bad(&mut entry, format!("{w} not in the computed sweep"));
            entries.push(entry);
            continue;
        };
        entry.verdict = match compare_one(&cone.ideal(), &ideal) {
            Ok(Verdict::Mismatch { witness, side, .. }) => Verdict::Mismatch {
                witness,
                side,
                allowlisted: allowlist.contains(rank, &w),
            },
            Ok(v) => v,
            Err(e) => Verdict::BadEntry { message: e.to_string() },
        };
        entries.push(entry);
    }
    for cone in &set.cones {
        if !seen.contains_key(cone.w.one_line()) {
            entries.push(DiffEntry {
                w: cone.w.to_string(),
                table: None,
                row: None,
                corpus_generators: Vec::new(),
                verdict: Verdict::MissingFromCorpus {
                    allowlisted: allowlist.contains(rank, &cone.w),
                },
            });
        }
    }
    let mut summary = DiffSummary {
        entries: entries.len(),
        anomalies: anomalies.len(),
        ..DiffSummary::default()
    };
    for e in &entries {
        match &e.verdict {
            Verdict::Match => summary.matched += 1,
            Verdict::Mismatch { allowlisted, .. } => {
                summary.mismatched += 1;
                if *allowlisted {
                    summary.allowlisted += 1;
                }
            }
            Verdict::MissingFromCorpus { allowlisted } => {
                summary.missing += 1;
                if *allowlisted {
                    summary.allowlisted += 1;
                }
            }
            Verdict::BadEntry { .. } => summary.bad_entries += 1,
        }
    }
    DiffReport {
        rank,
        entries,
        anomalies,
        summary,
    }
}
