//! Exhaustive genus-range survey over every equivalence class of a given
//! size, with deterministic parallelism and resumable JSONL checkpoints.
//!
//! Records are produced in lexicographic order of canonical word regardless
//! of thread count: enumeration is chunked into batches, each batch is mapped
//! in parallel, and results are merged in order. A checkpoint file holds one
//! record per line followed by a single trailer line, either
//! `{"complete":true}` or `{"resume_after":"<word>"}`; resuming re-enumerates
//! from the trailer word and merges into a result identical to an
//! uninterrupted run.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use rayon::prelude::*;

use crate::dow::{CanonicalDow, Dow};
use crate::enumerate::CanonicalWords;
use crate::graph::AssemblyGraph;
use crate::ribbon::{self, GenusRange, RibbonOptions};
use crate::{Error, Result};

/// Largest size surveyed without explicitly raising the cap.
pub const DEFAULT_SURVEY_CAP: usize = 9;

/// Words per parallel batch.
const BATCH: usize = 1024;

/// Survey result for one equivalence class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurveyRecord {
    pub word: CanonicalDow,
    pub n: usize,
    pub range: GenusRange,
    /// boundary count -> number of the `2^n` choices attaining it.
    pub boundary_counts: BTreeMap<u32, u64>,
}

/// Count and the lexicographically least witnesses for one genus range.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RangeEntry {
    pub count: u64,
    pub witnesses: Vec<CanonicalDow>,
}

/// Aggregated survey of all classes of one size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RangeFamily {
    pub n: usize,
    /// Total number of equivalence classes surveyed.
    pub classes: u64,
    /// Keyed in the linear order on ranges (by max, then min).
    pub ranges: BTreeMap<GenusRange, RangeEntry>,
}

impl RangeFamily {
    pub fn empty(n: usize) -> RangeFamily {
        RangeFamily { n, classes: 0, ranges: BTreeMap::new() }
    }

    fn add(&mut self, record: &SurveyRecord, witness_limit: usize) {
        self.classes += 1;
        let entry = self.ranges.entry(record.range).or_default();
        entry.count += 1;
        if entry.witnesses.len() < witness_limit {
            entry.witnesses.push(record.word.clone());
        }
    }

    /// The set of genus ranges attained, in increasing order.
    pub fn range_set(&self) -> Vec<GenusRange> {
        self.ranges.keys().copied().collect()
    }

    pub fn count_of(&self, range: GenusRange) -> u64 {
        self.ranges.get(&range).map_or(0, |entry| entry.count)
    }
}

/// Total order on genus ranges: by maximum, then by minimum.
pub fn compare_ranges(a: GenusRange, b: GenusRange) -> std::cmp::Ordering {
    a.cmp(&b)
}

#[derive(Clone, Debug)]
pub struct SurveyOptions {
    /// Refuse sizes beyond this (with a cost estimate).
    pub cap: usize,
    /// Witnesses retained per range.
    pub witness_limit: usize,
    /// Stop after this many records; used to checkpoint partial runs.
    pub stop_after: Option<u64>,
}

impl Default for SurveyOptions {
    fn default() -> Self {
        SurveyOptions { cap: DEFAULT_SURVEY_CAP, witness_limit: 3, stop_after: None }
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n <= cap {
        return Ok(());
    }
    // (2n-1)!! candidate words in ascending-first-occurrence form
    let mut candidates: u128 = 1;
    for k in 0..n as u128 {
        candidates = candidates.saturating_mul(2 * k + 1);
    }
    Err(Error::SurveyOverCap { n, cap, candidates })
}

fn compute_record(word: CanonicalDow) -> SurveyRecord {
    let n = word.symbol_count();
    let opts = RibbonOptions { cap: n, ..Default::default() };
    let profile = ribbon::genus_range_profile_with(&AssemblyGraph::build(word.as_dow()), &opts)
        .expect("size was validated against the survey cap");
    SurveyRecord { word, n, range: profile.range, boundary_counts: profile.boundary_counts }
}

/// Streams survey records in canonical order to `on_record`, starting after
/// `resume_after` when given. Returns true when the enumeration ran to
/// completion, false when `stop_after` cut it short.
pub fn survey_each(
    n: usize,
    opts: &SurveyOptions,
    resume_after: Option<&Dow>,
    mut on_record: impl FnMut(&SurveyRecord) -> Result<()>,
) -> Result<bool> {
    check_cap(n, opts.cap)?;
    let mut words = match resume_after {
        None => CanonicalWords::new(n),
        Some(word) => CanonicalWords::resume_after(n, word)?,
    };
    let mut emitted = 0u64;
    loop {
        let batch: Vec<CanonicalDow> = words.by_ref().take(BATCH).collect();
        if batch.is_empty() {
            return Ok(true);
        }
        let records: Vec<SurveyRecord> = batch.into_par_iter().map(compute_record).collect();
        for record in &records {
            on_record(record)?;
            emitted += 1;
            if Some(emitted) == opts.stop_after {
                return Ok(false);
            }
        }
    }
}

/// Surveys every class of size `n`.
pub fn survey(n: usize, witness_limit: usize) -> Result<RangeFamily> {
    survey_with(n, &SurveyOptions { witness_limit, ..Default::default() })
}

pub fn survey_with(n: usize, opts: &SurveyOptions) -> Result<RangeFamily> {
    let mut family = RangeFamily::empty(n);
    survey_each(n, opts, None, |record| {
        family.add(record, opts.witness_limit);
        Ok(())
    })?;
    Ok(family)
}

/// Up to `limit` canonical witnesses with the given genus range, in
/// lexicographic order.
pub fn find_with_range(n: usize, range: GenusRange, limit: usize) -> Result<Vec<CanonicalDow>> {
    find_with_range_capped(n, range, limit, DEFAULT_SURVEY_CAP)
}

pub fn find_with_range_capped(
    n: usize,
    range: GenusRange,
    limit: usize,
    cap: usize,
) -> Result<Vec<CanonicalDow>> {
    check_cap(n, cap)?;
    let mut found = Vec::new();
    if limit == 0 {
        return Ok(found);
    }
    let opts = SurveyOptions { cap, ..Default::default() };
    survey_each(n, &opts, None, |record| {
        if record.range == range && found.len() < limit {
            found.push(record.word.clone());
        }
        Ok(())
    })?;
    Ok(found)
}

/// Output format for range histograms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HistogramFormat {
    Csv,
    Json,
}

impl FromStr for HistogramFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(HistogramFormat::Csv),
            "json" => Ok(HistogramFormat::Json),
            other => Err(Error::InvalidParameter(format!(
                "unknown histogram format '{other}', expected csv or json"
            ))),
        }
    }
}

/// Writes the per-range counts, sorted by the linear order on ranges.
/// CSV columns are `range_min,range_max,count`; JSON mirrors them.
pub fn emit_histogram(
    family: &RangeFamily,
    format: HistogramFormat,
    sink: &mut dyn Write,
) -> Result<()> {
    match format {
        HistogramFormat::Csv => {
            writeln!(sink, "range_min,range_max,count")?;
            for (range, entry) in &family.ranges {
                writeln!(sink, "{},{},{}", range.min, range.max, entry.count)?;
            }
        }
        HistogramFormat::Json => {
            let mut rows = Vec::new();
            for (range, entry) in &family.ranges {
                rows.push(format!(
                    "{{\"range_min\":{},\"range_max\":{},\"count\":{}}}",
                    range.min,
                    range.max,
                    entry.count
                ));
            }
            writeln!(sink, "[{}]", rows.join(","))?;
        }
    }
    Ok(())
}

/// Outcome recorded by a checkpoint trailer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckpointStatus {
    Complete,
    ResumeAfter(CanonicalDow),
}

fn record_line(record: &SurveyRecord) -> String {
    let mut hist = String::new();
    for (i, (b, count)) in record.boundary_counts.iter().enumerate() {
        if i > 0 {
            hist.push(',');
        }
        let _ = fmt::Write::write_fmt(&mut hist, format_args!("\"{b}\":{count}"));
    }
    format!(
        "{{\"word\":\"{}\",\"n\":{},\"gr\":[{},{}],\"b_hist\":{{{}}}}}",
        record.word,
        record.n,
        record.range.min,
        record.range.max,
        hist
    )
}

/// Streams survey records to a JSONL checkpoint. Every record becomes one
/// line; `finish` writes the trailer. Dropping the writer without finishing
/// leaves a file that readers reject, which is the crash-safety contract.
pub struct CheckpointWriter<W: Write> {
    sink: W,
    last: Option<CanonicalDow>,
}

impl<W: Write> CheckpointWriter<W> {
    pub fn new(sink: W) -> Self {
        CheckpointWriter { sink, last: None }
    }

    pub fn record(&mut self, record: &SurveyRecord) -> Result<()> {
        writeln!(self.sink, "{}", record_line(record))?;
        self.last = Some(record.word.clone());
        Ok(())
    }

    /// Writes the trailer: `complete` when the run finished, otherwise a
    /// resume marker at the last written word.
    pub fn finish(mut self, complete: bool) -> Result<()> {
        if complete {
            writeln!(self.sink, "{{\"complete\":true}}")?;
        } else {
            let last = self.last.ok_or_else(|| {
                Error::InvalidParameter("cannot write a resumable trailer before any record".into())
            })?;
            writeln!(self.sink, "{{\"resume_after\":\"{last}\"}}")?;
        }
        self.sink.flush()?;
        Ok(())
    }
}

#[derive(serde::Deserialize)]
struct RawRecord {
    word: String,
    n: usize,
    gr: [u32; 2],
    b_hist: BTreeMap<String, u64>,
}

#[derive(serde::Deserialize)]
struct RawTrailer {
    resume_after: Option<String>,
    complete: Option<bool>,
}

fn bad_line(line: usize, message: impl Into<String>) -> Error {
    Error::Checkpoint { line, message: message.into() }
}

/// Reads a checkpoint written by [`CheckpointWriter`]. Every line must parse,
/// records must be internally consistent, and the last line must be a
/// trailer; a truncated or trailer-less file is an error naming the line.
pub fn checkpoint_read(reader: impl BufRead) -> Result<(Vec<SurveyRecord>, CheckpointStatus)> {
    let mut records = Vec::new();
    let mut status: Option<CheckpointStatus> = None;
    let mut line_number = 0usize;
    for line in reader.lines() {
        line_number += 1;
        let line = line?;
        if status.is_some() {
            return Err(bad_line(line_number, "content after the trailer line"));
        }
        let value: serde_json::Value = serde_json::from_str(&line)
            .map_err(|e| bad_line(line_number, format!("not valid JSON: {e}")))?;
        let object = value
            .as_object()
            .ok_or_else(|| bad_line(line_number, "expected a JSON object"))?;
        if object.contains_key("word") {
            let raw: RawRecord = serde_json::from_value(value.clone())
                .map_err(|e| bad_line(line_number, format!("malformed record: {e}")))?;
            records.push(parse_record(raw, line_number)?);
        } else {
            let raw: RawTrailer = serde_json::from_value(value.clone())
                .map_err(|e| bad_line(line_number, format!("malformed trailer: {e}")))?;
            status = Some(parse_trailer(raw, line_number)?);
        }
    }
    match status {
        Some(status) => Ok((records, status)),
        None => Err(bad_line(line_number + 1, "missing trailer line")),
    }
}

fn parse_record(raw: RawRecord, line: usize) -> Result<SurveyRecord> {
    let word: Dow = raw
        .word
        .parse()
        .map_err(|e| bad_line(line, format!("bad word: {e}")))?;
    if word.symbol_count() != raw.n {
        return Err(bad_line(line, format!("word has {} symbols, record says {}", word.symbol_count(), raw.n)));
    }
    if !word.is_canonical_form() {
        return Err(bad_line(line, format!("word '{word}' is not in canonical form")));
    }
    if raw.gr[0] > raw.gr[1] {
        return Err(bad_line(line, format!("inverted genus range [{},{}]", raw.gr[0], raw.gr[1])));
    }
    let mut boundary_counts = BTreeMap::new();
    for (key, count) in raw.b_hist {
        let b: u32 = key
            .parse()
            .map_err(|_| bad_line(line, format!("bad boundary count key '{key}'")))?;
        boundary_counts.insert(b, count);
    }
    let total: u64 = boundary_counts.values().sum();
    if total != 1u64 << raw.n {
        return Err(bad_line(line, format!("boundary histogram totals {total}, expected 2^{}", raw.n)));
    }
    let range = GenusRange::new(raw.gr[0], raw.gr[1]);
    let n = raw.n as i64;
    let from_hist = GenusRange::new(
        ((n - *boundary_counts.keys().last().unwrap() as i64 + 2) / 2) as u32,
        ((n - *boundary_counts.keys().next().unwrap() as i64 + 2) / 2) as u32,
    );
    if range != from_hist {
        return Err(bad_line(line, format!("genus range {range} inconsistent with histogram ({from_hist})")));
    }
    Ok(SurveyRecord {
        word: word.canonicalize(),
        n: raw.n,
        range,
        boundary_counts,
    })
}

fn parse_trailer(raw: RawTrailer, line: usize) -> Result<CheckpointStatus> {
    match (raw.complete, raw.resume_after) {
        (Some(true), None) => Ok(CheckpointStatus::Complete),
        (None, Some(word)) => {
            let word: Dow = word
                .parse()
                .map_err(|e| bad_line(line, format!("bad resume word: {e}")))?;
            if !word.is_canonical_form() {
                return Err(bad_line(line, format!("resume word '{word}' is not canonical")));
            }
            Ok(CheckpointStatus::ResumeAfter(word.canonicalize()))
        }
        _ => Err(bad_line(line, "trailer must be {\"complete\":true} or {\"resume_after\":\"<word>\"}")),
    }
}

/// Runs a survey streaming records to a checkpoint sink, honoring
/// `opts.stop_after`. Returns the (possibly partial) family.
pub fn survey_to_checkpoint(
    n: usize,
    opts: &SurveyOptions,
    sink: impl Write,
) -> Result<RangeFamily> {
    let mut writer = CheckpointWriter::new(sink);
    let mut family = RangeFamily::empty(n);
    let complete = survey_each(n, opts, None, |record| {
        writer.record(record)?;
        family.add(record, opts.witness_limit);
        Ok(())
    })?;
    writer.finish(complete)?;
    Ok(family)
}

/// Resumes a survey from a checkpoint: previously computed records are
/// replayed, enumeration continues after the trailer word, and when `sink`
/// is given the merged complete checkpoint is written to it. The result is
/// identical to an uninterrupted run.
pub fn survey_resume(
    n: usize,
    opts: &SurveyOptions,
    source: impl BufRead,
    sink: Option<&mut dyn Write>,
) -> Result<RangeFamily> {
    let (records, status) = checkpoint_read(source)?;
    for (i, record) in records.iter().enumerate() {
        if record.n != n {
            return Err(bad_line(i + 1, format!("record size {} does not match survey size {n}", record.n)));
        }
    }
    let mut family = RangeFamily::empty(n);
    let mut writer = sink.map(CheckpointWriter::new);
    for record in &records {
        if let Some(w) = writer.as_mut() {
            w.record(record)?;
        }
        family.add(record, opts.witness_limit);
    }
    if let CheckpointStatus::ResumeAfter(word) = status {
        let resume_opts = SurveyOptions { stop_after: None, ..opts.clone() };
        survey_each(n, &resume_opts, Some(word.as_dow()), |record| {
            if let Some(w) = writer.as_mut() {
                w.record(record)?;
            }
            family.add(record, opts.witness_limit);
            Ok(())
        })?;
    }
    if let Some(w) = writer {
        w.finish(true)?;
    }
    Ok(family)
}

/// Which conjecture to probe.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeKind {
    /// Singleton ranges `[h,h]` with `h` beyond `psi(n)`, expected absent.
    SingletonGap,
    /// Classes of range `[0,1]` that are not loop nestings of a repeat word,
    /// expected absent.
    ZeroOne,
}

impl FromStr for ProbeKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "singleton-gap" => Ok(ProbeKind::SingletonGap),
            "zero-one" => Ok(ProbeKind::ZeroOne),
            other => Err(Error::InvalidParameter(format!(
                "unknown probe '{other}', expected singleton-gap or zero-one"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub enum ProbeReport {
    SingletonGap {
        n: usize,
        psi: u32,
        /// Observed singleton ranges with class counts.
        singletons: Vec<(GenusRange, u64)>,
        /// Singletons above psi, with one witness each.
        violations: Vec<(GenusRange, CanonicalDow)>,
    },
    ZeroOne {
        n: usize,
        /// All classes with range [0,1].
        classes: Vec<CanonicalDow>,
        /// Those whose pair-removal core is not a repeat word.
        violations: Vec<CanonicalDow>,
    },
}

/// True when the word's pair-removal core is (equivalent to) an odd repeat
/// word `1 2 .. m 1 2 .. m`.
pub fn is_repeat_word_nesting(word: &Dow) -> bool {
    let core = word.loop_nesting_core();
    if core.is_empty() {
        return false; // loop-nested all the way down: range {0}, not [0,1]
    }
    let m = core.symbol_count();
    match crate::families::repeat_word(m) {
        Ok(repeat) => core.equivalent(&repeat),
        Err(_) => false,
    }
}

pub fn conjecture_probe(n: usize, kind: ProbeKind, cap: usize) -> Result<ProbeReport> {
    let opts = SurveyOptions { cap, ..Default::default() };
    match kind {
        ProbeKind::SingletonGap => {
            let psi = crate::families::psi(n as u32)?.psi;
            let mut singletons: BTreeMap<GenusRange, (u64, CanonicalDow)> = BTreeMap::new();
            survey_each(n, &opts, None, |record| {
                if record.range.is_singleton() {
                    singletons
                        .entry(record.range)
                        .or_insert_with(|| (0, record.word.clone()))
                        .0 += 1;
                }
                Ok(())
            })?;
            let violations = singletons
                .iter()
                .filter(|(range, _)| range.min > psi)
                .map(|(range, (_, witness))| (*range, witness.clone()))
                .collect();
            Ok(ProbeReport::SingletonGap {
                n,
                psi,
                singletons: singletons.iter().map(|(r, (count, _))| (*r, *count)).collect(),
                violations,
            })
        }
        ProbeKind::ZeroOne => {
            let target = GenusRange::new(0, 1);
            let mut classes = Vec::new();
            let mut violations = Vec::new();
            survey_each(n, &opts, None, |record| {
                if record.range == target {
                    classes.push(record.word.clone());
                    if !is_repeat_word_nesting(record.word.as_dow()) {
                        violations.push(record.word.clone());
                    }
                }
                Ok(())
            })?;
            Ok(ProbeReport::ZeroOne { n, classes, violations })
        }
    }
}
