//! Document corpora: loading, validation, partitioning, time periods, and
//! the time-varying legal-access policy.
//!
//! Records are line-delimited JSON. Ingestion strips newline characters from
//! abstract text, rejects duplicate ids, and reports malformed lines by line
//! number. All values are immutable after load and safe to share across
//! threads.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::sync::LazyLock;

use chrono::NaiveDate;
use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed::derive_rng;

/// ChatGPT public launch date; the boundary between pre and post periods.
pub fn chatgpt_launch() -> NaiveDate {
    NaiveDate::from_ymd_opt(2022, 11, 30).expect("valid date")
}

/// Last day on which ChatGPT was the only major public LLM.
pub fn clean_period_end() -> NaiveDate {
    NaiveDate::from_ymd_opt(2023, 2, 5).expect("valid date")
}

/// Where an abstract came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Biorxiv,
    Arxiv,
    Elsevier,
    Synthetic,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Source::Biorxiv => "biorxiv",
            Source::Arxiv => "arxiv",
            Source::Elsevier => "elsevier",
            Source::Synthetic => "synthetic",
        };
        f.write_str(s)
    }
}

/// Outcome measures attached to a document. Counts accumulate over the six
/// months after posting; the impact factor is that of the publishing journal.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Outcomes {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub citations: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub impact_factor: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub views_abstract: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub views_pdf: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub views_full: Option<u64>,
}

/// One abstract record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub text: String,
    pub source: Source,
    pub posted_date: NaiveDate,
    #[serde(default)]
    pub subfields: Vec<String>,
    #[serde(default)]
    pub countries_all: Vec<String>,
    #[serde(default)]
    pub country_first: String,
    #[serde(default)]
    pub country_last: String,
    #[serde(default)]
    pub author_first_id: String,
    #[serde(default)]
    pub author_last_id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub published: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outcomes: Option<Outcomes>,
}

impl Document {
    /// Replaces newline characters in `text` with spaces and checks field
    /// invariants. Called on every ingested record.
    pub fn normalize(&mut self) -> Result<()> {
        if self.text.contains('\r') || self.text.contains('\n') {
            self.text = self
                .text
                .replace("\r\n", " ")
                .replace(['\n', '\r'], " ");
        }
        self.validate()
    }

    fn validate(&self) -> Result<()> {
        let fail = |msg: &str| -> Result<()> {
            Err(Error::InvalidDocument {
                id: self.id.clone(),
                msg: msg.to_string(),
            })
        };
        if self.id.is_empty() {
            return fail("empty id");
        }
        if self.text.trim().is_empty() {
            return fail("empty text");
        }
        if let Some(l) = self.label {
            if l > 1 {
                return fail("label must be 0 or 1");
            }
        }
        if let Some(o) = &self.outcomes {
            if let Some(f) = o.impact_factor {
                if !f.is_finite() || f < 0.0 {
                    return fail("impact_factor must be finite and non-negative");
                }
            }
        }
        Ok(())
    }

    pub fn is_published(&self) -> bool {
        self.published.unwrap_or(false)
    }

    /// Primary subfield tag, used as the grouping key for normalization and
    /// trend grouping. Empty string when the document carries no tags.
    pub fn primary_subfield(&self) -> &str {
        self.subfields.first().map(String::as_str).unwrap_or("")
    }
}

/// An immutable sequence of documents with unique ids.
#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    docs: Vec<Document>,
}

impl Corpus {
    /// Builds a corpus from documents, normalizing each and rejecting
    /// duplicate ids.
    pub fn from_docs(mut docs: Vec<Document>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for doc in &mut docs {
            doc.normalize()?;
            if !seen.insert(doc.id.clone()) {
                return Err(Error::DuplicateId(doc.id.clone()));
            }
        }
        Ok(Self { docs })
    }

    /// Loads a JSONL corpus. Malformed lines are reported with their
    /// 1-based line number; blank lines are ignored.
    pub fn load_jsonl(path: impl AsRef<Path>) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        Self::read_jsonl(BufReader::new(file))
    }

    pub fn read_jsonl(reader: impl BufRead) -> Result<Self> {
        let mut docs = Vec::new();
        let mut seen = BTreeSet::new();
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let mut doc: Document =
                serde_json::from_str(&line).map_err(|e| Error::MalformedLine {
                    line: line_no,
                    msg: e.to_string(),
                })?;
            doc.normalize().map_err(|e| Error::MalformedLine {
                line: line_no,
                msg: e.to_string(),
            })?;
            if !seen.insert(doc.id.clone()) {
                return Err(Error::DuplicateId(doc.id.clone()));
            }
            docs.push(doc);
        }
        Ok(Self { docs })
    }

    pub fn write_jsonl(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
        for doc in &self.docs {
            let line = serde_json::to_string(doc)
                .map_err(|e| Error::InvalidDocument {
                    id: doc.id.clone(),
                    msg: e.to_string(),
                })?;
            writeln!(out, "{line}")?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn docs(&self) -> &[Document] {
        &self.docs
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Document> {
        self.docs.iter()
    }

    pub fn len(&self) -> usize {
        self.docs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.docs.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&Document> {
        self.docs.iter().find(|d| d.id == id)
    }

    /// Hex fingerprint over sorted (id, label) pairs. Stored in trained
    /// models so that evaluation runs can assert they never reuse the
    /// training corpus.
    pub fn fingerprint(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut keys: Vec<(&str, i16)> = self
            .docs
            .iter()
            .map(|d| (d.id.as_str(), d.label.map(i16::from).unwrap_or(-1)))
            .collect();
        keys.sort_unstable();
        let mut hasher = Sha256::new();
        for (id, label) in keys {
            hasher.update((id.len() as u64).to_le_bytes());
            hasher.update(id.as_bytes());
            hasher.update(label.to_le_bytes());
        }
        let digest = hasher.finalize();
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Deterministic disjoint train/test split. The test set receives
    /// `round(len * test_fraction)` documents (at least 1, at most len-1);
    /// both halves preserve corpus order.
    pub fn split_disjoint(&self, seed: u64, test_fraction: f64) -> Result<(Corpus, Corpus)> {
        if !(test_fraction > 0.0 && test_fraction < 1.0) {
            return Err(Error::InvalidFraction(test_fraction));
        }
        if self.is_empty() {
            return Err(Error::EmptyCorpus);
        }
        let n = self.docs.len();
        let n_test = ((n as f64 * test_fraction).round() as usize).clamp(1, n.saturating_sub(1));
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut derive_rng(seed, "split", 0));
        let mut test_idx: Vec<usize> = order[..n_test].to_vec();
        let mut train_idx: Vec<usize> = order[n_test..].to_vec();
        test_idx.sort_unstable();
        train_idx.sort_unstable();
        let pick = |idx: &[usize]| Corpus {
            docs: idx.iter().map(|&i| self.docs[i].clone()).collect(),
        };
        Ok((pick(&train_idx), pick(&test_idx)))
    }
}

impl<'a> IntoIterator for &'a Corpus {
    type Item = &'a Document;
    type IntoIter = std::slice::Iter<'a, Document>;
    fn into_iter(self) -> Self::IntoIter {
        self.docs.iter()
    }
}

// ---------------------------------------------------------------------------
// Time periods
// ---------------------------------------------------------------------------

/// The three periods partitioning the date line around the ChatGPT launch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Period {
    Pre,
    Clean,
    PostClean,
}

/// Assigns a date to its period. The clean period is the inclusive window
/// from the ChatGPT launch through the eve of the next major LLM release.
pub fn assign_period(date: NaiveDate) -> Period {
    if date < chatgpt_launch() {
        Period::Pre
    } else if date <= clean_period_end() {
        Period::Clean
    } else {
        Period::PostClean
    }
}

/// Analysis windows used by the regressions: the clean period alone, or the
/// clean period plus everything after it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PeriodFilter {
    Clean,
    Full,
}

impl PeriodFilter {
    pub fn contains(self, date: NaiveDate) -> bool {
        match self {
            PeriodFilter::Clean => matches!(assign_period(date), Period::Clean),
            PeriodFilter::Full => date >= chatgpt_launch(),
        }
    }
}

impl fmt::Display for PeriodFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PeriodFilter::Clean => "clean",
            PeriodFilter::Full => "full",
        })
    }
}

// ---------------------------------------------------------------------------
// Legal-access policy
// ---------------------------------------------------------------------------

/// How a document's country is attributed when deciding legal access.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AttributionRule {
    AllAuthors,
    FirstAuthor,
    LastAuthor,
}

impl AttributionRule {
    fn name(self) -> &'static str {
        match self {
            AttributionRule::AllAuthors => "all_authors",
            AttributionRule::FirstAuthor => "first_author",
            AttributionRule::LastAuthor => "last_author",
        }
    }
}

/// Handling of country codes that are not valid ISO 3166-1 alpha-2 codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strictness {
    Strict,
    /// Unknown codes are treated as unrestricted, with a warning.
    #[default]
    Lenient,
}

/// A restriction interval; `end` is inclusive, `None` means open-ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DateInterval {
    pub start: NaiveDate,
    pub end: Option<NaiveDate>,
}

impl DateInterval {
    pub fn contains(&self, date: NaiveDate) -> bool {
        date >= self.start && self.end.map_or(true, |end| date <= end)
    }
}

/// Country-keyed restriction intervals. Within a country the intervals are
/// non-overlapping; restriction is evaluated at a specific date.
#[derive(Debug, Clone, PartialEq)]
pub struct AccessPolicy {
    entries: BTreeMap<String, Vec<DateInterval>>,
}

static BUILTIN_POLICY_CSV: &str = include_str!("../data/access_policy.csv");

static BUILTIN_POLICY: LazyLock<AccessPolicy> = LazyLock::new(|| {
    AccessPolicy::from_csv_str(BUILTIN_POLICY_CSV).expect("bundled policy table is valid")
});

impl AccessPolicy {
    pub fn new(entries: BTreeMap<String, Vec<DateInterval>>) -> Result<Self> {
        for (country, intervals) in &entries {
            let mut sorted = intervals.clone();
            sorted.sort_by_key(|iv| iv.start);
            for iv in &sorted {
                if let Some(end) = iv.end {
                    if end < iv.start {
                        return Err(Error::InvalidArg(format!(
                            "{country}: interval end {end} precedes start {}",
                            iv.start
                        )));
                    }
                }
            }
            for pair in sorted.windows(2) {
                let overlaps = match pair[0].end {
                    None => true,
                    Some(end) => pair[1].start <= end,
                };
                if overlaps {
                    return Err(Error::InvalidArg(format!(
                        "{country}: overlapping restriction intervals"
                    )));
                }
            }
        }
        Ok(Self { entries })
    }

    /// The bundled restriction table: the major restricted countries with
    /// their time-varying windows (China, Hong Kong, and Macau open-ended;
    /// Italy restricted only 2023-03-31 through 2023-04-28; etc.).
    pub fn builtin() -> &'static AccessPolicy {
        &BUILTIN_POLICY
    }

    /// Parses `country,start_date,end_date` CSV; an empty end date means the
    /// restriction is still in force.
    pub fn from_csv_str(data: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(data.as_bytes());
        let mut entries: BTreeMap<String, Vec<DateInterval>> = BTreeMap::new();
        for record in reader.records() {
            let record = record?;
            let country = record
                .get(0)
                .ok_or_else(|| Error::InvalidArg("policy row missing country".into()))?
                .trim()
                .to_uppercase();
            let start = parse_date(record.get(1).unwrap_or("").trim())?;
            let end_raw = record.get(2).unwrap_or("").trim();
            let end = if end_raw.is_empty() {
                None
            } else {
                Some(parse_date(end_raw)?)
            };
            entries
                .entry(country)
                .or_default()
                .push(DateInterval { start, end });
        }
        Self::new(entries)
    }

    pub fn load_csv(path: impl AsRef<Path>) -> Result<Self> {
        let data = std::fs::read_to_string(path)?;
        Self::from_csv_str(&data)
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("country,start_date,end_date\n");
        for (country, intervals) in &self.entries {
            for iv in intervals {
                let end = iv.end.map(|d| d.to_string()).unwrap_or_default();
                out.push_str(&format!("{country},{},{end}\n", iv.start));
            }
        }
        out
    }

    pub fn countries(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    /// True when `country` is restricted at `date`. Unknown (non-ISO) codes
    /// error under strict mode and count as unrestricted under lenient mode.
    pub fn is_restricted(
        &self,
        country: &str,
        date: NaiveDate,
        strictness: Strictness,
    ) -> Result<bool> {
        if !is_iso_country(country) {
            match strictness {
                Strictness::Strict => return Err(Error::UnknownCountry(country.to_string())),
                Strictness::Lenient => {
                    log::warn!("unknown country code `{country}` treated as unrestricted");
                    return Ok(false);
                }
            }
        }
        Ok(self
            .entries
            .get(country)
            .map_or(false, |ivs| ivs.iter().any(|iv| iv.contains(date))))
    }
}

fn parse_date(s: &str) -> Result<NaiveDate> {
    NaiveDate::parse_from_str(s, "%Y-%m-%d")
        .map_err(|e| Error::InvalidArg(format!("bad date `{s}`: {e}")))
}

/// True when the document is without legal access at `date` under the given
/// attribution rule: every author country restricted (all-authors rule), or
/// the first/last author's country restricted.
pub fn access_status(
    policy: &AccessPolicy,
    doc: &Document,
    date: NaiveDate,
    rule: AttributionRule,
    strictness: Strictness,
) -> Result<bool> {
    let missing = || Error::MissingCountry {
        id: doc.id.clone(),
        rule: rule.name(),
    };
    match rule {
        AttributionRule::AllAuthors => {
            if doc.countries_all.is_empty() {
                return Err(missing());
            }
            for country in &doc.countries_all {
                if !policy.is_restricted(country, date, strictness)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        AttributionRule::FirstAuthor => {
            if doc.country_first.is_empty() {
                return Err(missing());
            }
            policy.is_restricted(&doc.country_first, date, strictness)
        }
        AttributionRule::LastAuthor => {
            if doc.country_last.is_empty() {
                return Err(missing());
            }
            policy.is_restricted(&doc.country_last, date, strictness)
        }
    }
}

// ---------------------------------------------------------------------------
// Country volume filter
// ---------------------------------------------------------------------------

/// Per-country document counts before and after the ChatGPT launch. A
/// document counts once toward each distinct country in its author list.
pub fn country_preprint_counts(corpus: &Corpus) -> BTreeMap<String, (usize, usize)> {
    let mut counts: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for doc in corpus {
        let post = doc.posted_date >= chatgpt_launch();
        let distinct: BTreeSet<&str> = doc.countries_all.iter().map(String::as_str).collect();
        for country in distinct {
            let entry = counts.entry(country.to_string()).or_default();
            if post {
                entry.1 += 1;
            } else {
                entry.0 += 1;
            }
        }
    }
    counts
}

/// Pure exclusion predicate: a country is excludable unless it has at least
/// `min_count` preprints both before and after the ChatGPT launch.
pub fn is_low_volume_country(
    counts: &BTreeMap<String, (usize, usize)>,
    country: &str,
    min_count: usize,
) -> bool {
    let (pre, post) = counts.get(country).copied().unwrap_or((0, 0));
    pre < min_count || post < min_count
}

/// Officially assigned ISO 3166-1 alpha-2 codes.
static ISO_ALPHA2: &[&str] = &[
    "AD", "AE", "AF", "AG", "AI", "AL", "AM", "AO", "AQ", "AR", "AS", "AT", "AU", "AW", "AX",
    "AZ", "BA", "BB", "BD", "BE", "BF", "BG", "BH", "BI", "BJ", "BL", "BM", "BN", "BO", "BQ",
    "BR", "BS", "BT", "BV", "BW", "BY", "BZ", "CA", "CC", "CD", "CF", "CG", "CH", "CI", "CK",
    "CL", "CM", "CN", "CO", "CR", "CU", "CV", "CW", "CX", "CY", "CZ", "DE", "DJ", "DK", "DM",
    "DO", "DZ", "EC", "EE", "EG", "EH", "ER", "ES", "ET", "FI", "FJ", "FK", "FM", "FO", "FR",
    "GA", "GB", "GD", "GE", "GF", "GG", "GH", "GI", "GL", "GM", "GN", "GP", "GQ", "GR", "GS",
    "GT", "GU", "GW", "GY", "HK", "HM", "HN", "HR", "HT", "HU", "ID", "IE", "IL", "IM", "IN",
    "IO", "IQ", "IR", "IS", "IT", "JE", "JM", "JO", "JP", "KE", "KG", "KH", "KI", "KM", "KN",
    "KP", "KR", "KW", "KY", "KZ", "LA", "LB", "LC", "LI", "LK", "LR", "LS", "LT", "LU", "LV",
    "LY", "MA", "MC", "MD", "ME", "MF", "MG", "MH", "MK", "ML", "MM", "MN", "MO", "MP", "MQ",
    "MR", "MS", "MT", "MU", "MV", "MW", "MX", "MY", "MZ", "NA", "NC", "NE", "NF", "NG", "NI",
    "NL", "NO", "NP", "NR", "NU", "NZ", "OM", "PA", "PE", "PF", "PG", "PH", "PK", "PL", "PM",
    "PN", "PR", "PS", "PT", "PW", "PY", "QA", "RE", "RO", "RS", "RU", "RW", "SA", "SB", "SC",
    "SD", "SE", "SG", "SH", "SI", "SJ", "SK", "SL", "SM", "SN", "SO", "SR", "SS", "ST", "SV",
    "SX", "SY", "SZ", "TC", "TD", "TF", "TG", "TH", "TJ", "TK", "TL", "TM", "TN", "TO", "TR",
    "TT", "TV", "TW", "TZ", "UA", "UG", "UM", "US", "UY", "UZ", "VA", "VC", "VE", "VG", "VI",
    "VN", "VU", "WF", "WS", "YE", "YT", "ZA", "ZM", "ZW",
];

pub fn is_iso_country(code: &str) -> bool {
    ISO_ALPHA2.binary_search(&code).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn date(y: i32, m: u32, d: u32) -> NaiveDate {
        NaiveDate::from_ymd_opt(y, m, d).unwrap()
    }

    pub(crate) fn doc(id: &str, text: &str) -> Document {
        Document {
            id: id.to_string(),
            text: text.to_string(),
            source: Source::Synthetic,
            posted_date: date(2022, 1, 1),
            subfields: vec![],
            countries_all: vec!["US".into()],
            country_first: "US".into(),
            country_last: "US".into(),
            author_first_id: "a1".into(),
            author_last_id: "a2".into(),
            label: None,
            published: None,
            outcomes: None,
        }
    }

    #[test]
    fn load_three_valid_lines() {
        let lines = (0..3)
            .map(|i| serde_json::to_string(&doc(&format!("d{i}"), "some text")).unwrap())
            .collect::<Vec<_>>()
            .join("\n");
        let corpus = Corpus::read_jsonl(lines.as_bytes()).unwrap();
        assert_eq!(corpus.len(), 3);
    }

    #[test]
    fn newlines_in_text_become_spaces() {
        let corpus = Corpus::from_docs(vec![doc("d1", "a\nb")]).unwrap();
        assert_eq!(corpus.docs()[0].text, "a b");
        let corpus = Corpus::from_docs(vec![doc("d2", "a\r\nb")]).unwrap();
        assert_eq!(corpus.docs()[0].text, "a b");
    }

    #[test]
    fn missing_posted_date_names_line() {
        let good = serde_json::to_string(&doc("d1", "text")).unwrap();
        let mut bad: serde_json::Value = serde_json::from_str(&good).unwrap();
        bad.as_object_mut().unwrap().remove("posted_date");
        bad["id"] = serde_json::json!("d2");
        let data = format!("{good}\n{bad}\n");
        let err = Corpus::read_jsonl(data.as_bytes()).unwrap_err();
        match err {
            Error::MalformedLine { line, msg } => {
                assert_eq!(line, 2);
                assert!(msg.contains("posted_date"), "{msg}");
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn duplicate_id_rejected() {
        let err = Corpus::from_docs(vec![doc("d1", "a"), doc("d1", "b")]).unwrap_err();
        assert!(matches!(err, Error::DuplicateId(id) if id == "d1"));
    }

    #[test]
    fn jsonl_round_trip_is_identity() {
        let mut d = doc("d1", "full text here");
        d.label = Some(1);
        d.published = Some(true);
        d.outcomes = Some(Outcomes {
            citations: Some(4),
            impact_factor: Some(3.25),
            views_abstract: Some(120),
            views_pdf: Some(48),
            views_full: Some(9),
        });
        let corpus = Corpus::from_docs(vec![d, doc("d2", "other text")]).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("docs.jsonl");
        corpus.write_jsonl(&path).unwrap();
        let reloaded = Corpus::load_jsonl(&path).unwrap();
        assert_eq!(corpus, reloaded);
    }

    #[test]
    fn period_boundaries() {
        assert_eq!(assign_period(date(2022, 11, 29)), Period::Pre);
        assert_eq!(assign_period(date(2022, 11, 30)), Period::Clean);
        assert_eq!(assign_period(date(2023, 2, 5)), Period::Clean);
        assert_eq!(assign_period(date(2023, 2, 6)), Period::PostClean);
    }

    #[test]
    fn split_is_disjoint_and_deterministic() {
        let docs: Vec<Document> = (0..100).map(|i| doc(&format!("d{i}"), "t")).collect();
        let corpus = Corpus::from_docs(docs).unwrap();
        let (train, test) = corpus.split_disjoint(9, 0.2).unwrap();
        assert_eq!(train.len(), 80);
        assert_eq!(test.len(), 20);
        let train_ids: BTreeSet<_> = train.iter().map(|d| d.id.clone()).collect();
        let test_ids: BTreeSet<_> = test.iter().map(|d| d.id.clone()).collect();
        assert!(train_ids.is_disjoint(&test_ids));
        assert_eq!(train_ids.len() + test_ids.len(), 100);

        let (train2, test2) = corpus.split_disjoint(9, 0.2).unwrap();
        assert_eq!(train, train2);
        assert_eq!(test, test2);
    }

    #[test]
    fn split_rejects_degenerate_fractions() {
        let corpus = Corpus::from_docs(vec![doc("d1", "t"), doc("d2", "t")]).unwrap();
        assert!(matches!(
            corpus.split_disjoint(1, 1.0),
            Err(Error::InvalidFraction(_))
        ));
        assert!(matches!(
            corpus.split_disjoint(1, 0.0),
            Err(Error::InvalidFraction(_))
        ));
    }

    #[test]
    fn access_all_authors_requires_every_country_restricted() {
        let policy = AccessPolicy::builtin();
        let mut d = doc("d1", "t");
        d.countries_all = vec!["CN".into(), "CN".into()];
        d.country_first = "CN".into();
        d.country_last = "CN".into();
        assert!(access_status(
            policy,
            &d,
            date(2023, 6, 1),
            AttributionRule::AllAuthors,
            Strictness::Strict
        )
        .unwrap());

        d.countries_all = vec!["CN".into(), "US".into()];
        assert!(!access_status(
            policy,
            &d,
            date(2023, 6, 1),
            AttributionRule::AllAuthors,
            Strictness::Strict
        )
        .unwrap());
    }

    #[test]
    fn access_is_time_varying() {
        let policy = AccessPolicy::builtin();
        let mut d = doc("d1", "t");
        d.countries_all = vec!["IT".into()];
        d.country_first = "IT".into();
        d.country_last = "IT".into();
        let restricted = |when: NaiveDate| {
            access_status(policy, &d, when, AttributionRule::AllAuthors, Strictness::Strict)
                .unwrap()
        };
        assert!(restricted(date(2023, 4, 10)));
        assert!(!restricted(date(2023, 5, 10)));
        assert!(!restricted(date(2023, 3, 30)));
    }

    #[test]
    fn unknown_country_strict_vs_lenient() {
        let policy = AccessPolicy::builtin();
        assert!(matches!(
            policy.is_restricted("XX", date(2023, 1, 1), Strictness::Strict),
            Err(Error::UnknownCountry(_))
        ));
        assert!(!policy
            .is_restricted("XX", date(2023, 1, 1), Strictness::Lenient)
            .unwrap());
    }

    #[test]
    fn single_author_rules_agree() {
        let policy = AccessPolicy::builtin();
        for country in ["CN", "US", "IT", "UA"] {
            let mut d = doc("d1", "t");
            d.countries_all = vec![country.into()];
            d.country_first = country.into();
            d.country_last = country.into();
            for when in [date(2022, 6, 1), date(2023, 1, 15), date(2023, 9, 1)] {
                let all = access_status(policy, &d, when, AttributionRule::AllAuthors, Strictness::Strict).unwrap();
                let first = access_status(policy, &d, when, AttributionRule::FirstAuthor, Strictness::Strict).unwrap();
                let last = access_status(policy, &d, when, AttributionRule::LastAuthor, Strictness::Strict).unwrap();
                assert_eq!(all, first);
                assert_eq!(all, last);
            }
        }
    }

    #[test]
    fn low_volume_predicate() {
        let mut docs = Vec::new();
        for i in 0..12 {
            let mut d = doc(&format!("pre{i}"), "t");
            d.posted_date = date(2021, 1, 1);
            d.countries_all = vec!["DE".into()];
            docs.push(d);
        }
        for i in 0..12 {
            let mut d = doc(&format!("post{i}"), "t");
            d.posted_date = date(2023, 1, 1);
            d.countries_all = if i < 3 {
                vec!["FR".into()]
            } else {
                vec!["DE".into()]
            };
            docs.push(d);
        }
        let corpus = Corpus::from_docs(docs).unwrap();
        let counts = country_preprint_counts(&corpus);
        assert!(!is_low_volume_country(&counts, "DE", 10));
        assert!(is_low_volume_country(&counts, "FR", 10));
        assert!(is_low_volume_country(&counts, "JP", 10));
    }

    #[test]
    fn policy_csv_round_trip() {
        let policy = AccessPolicy::builtin();
        let csv = policy.to_csv_string();
        let reparsed = AccessPolicy::from_csv_str(&csv).unwrap();
        assert_eq!(*policy, reparsed);
    }

    #[test]
    fn policy_rejects_overlaps() {
        let csv = "country,start_date,end_date\nCN,2022-11-30,\nCN,2023-01-01,2023-02-01\n";
        assert!(AccessPolicy::from_csv_str(csv).is_err());
    }
}
