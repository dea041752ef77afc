//! Clustering files: UTF-8 text with one `element_id<TAB>cluster_label` record
//! per line. Blank lines and lines starting with `#` are skipped.

use std::collections::HashSet;
use std::fs;
use std::io::Write;
use std::path::Path;

use crate::clustering::LabeledClustering;
use crate::error::{Error, Result};

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_clustering(text: &str) -> Result<LabeledClustering> {
    let mut records = Vec::new();
    let mut seen = HashSet::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let (id, label) = line
            .split_once('\t')
            .ok_or_else(|| parse_error(line_no, "expected element_id<TAB>cluster_label"))?;
        if label.contains('\t') {
            return Err(parse_error(line_no, "more than two tab-separated fields"));
        }
        if id.is_empty() || label.is_empty() {
            return Err(parse_error(line_no, "empty element id or cluster label"));
        }
        if !seen.insert(id) {
            return Err(parse_error(line_no, format!("element id {id:?} listed twice")));
        }
        records.push((id, label));
    }
    if records.is_empty() {
        return Err(parse_error(last_line.max(1), "no records"));
    }
    LabeledClustering::from_pairs(records)
}

pub fn read_clustering(path: impl AsRef<Path>) -> Result<LabeledClustering> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes).map_err(|e| {
        let valid = &e.as_bytes()[..e.utf8_error().valid_up_to()];
        let line = valid.iter().filter(|&&b| b == b'\n').count() + 1;
        parse_error(line, "invalid UTF-8")
    })?;
    parse_clustering(&text)
}

pub fn write_clustering<W: Write>(out: &mut W, clustering: &LabeledClustering) -> Result<()> {
    for (id, label) in clustering.records() {
        writeln!(out, "{id}\t{label}")?;
    }
    Ok(())
}

pub fn write_clustering_file(path: impl AsRef<Path>, clustering: &LabeledClustering) -> Result<()> {
    let mut buf = Vec::new();
    write_clustering(&mut buf, clustering)?;
    fs::write(path, buf)?;
    Ok(())
}
