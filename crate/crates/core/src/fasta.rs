//! FASTA input and pattern sources.
//!
//! Records are parsed one at a time from any [`BufRead`]. Sequence lines are
//! concatenated with whitespace and line endings (LF or CRLF) removed; the
//! characters themselves are kept verbatim, so soft-masked lowercase and `N`
//! runs reach the encoder untouched.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FastaError {
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
    #[error("cannot open {path}: {source}")]
    Open { path: PathBuf, source: io::Error },
    #[error("line {line}: sequence data before the first '>' header")]
    MissingHeader { line: usize },
    #[error("record {id:?} has an empty sequence")]
    EmptySequence { id: String },
    #[error("pattern is empty")]
    EmptyPattern,
    #[error("pattern file holds more than one record")]
    MultiplePatterns,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FastaRecord {
    /// Header text after '>' up to the first whitespace.
    pub id: String,
    /// Remainder of the header line, leading whitespace removed.
    pub description: String,
    pub sequence: Vec<u8>,
}

fn parse_header(line: &[u8]) -> (String, String) {
    let text = String::from_utf8_lossy(&line[1..]);
    let text = text.trim_end();
    match text.split_once(char::is_whitespace) {
        Some((id, rest)) => (id.to_string(), rest.trim_start().to_string()),
        None => (text.to_string(), String::new()),
    }
}

/// Streaming FASTA reader yielding one record at a time.
pub struct FastaReader<R> {
    reader: R,
    line: Vec<u8>,
    line_no: usize,
    // header of the record whose sequence is read next
    pending: Option<(String, String)>,
    done: bool,
}

impl<R: BufRead> FastaReader<R> {
    pub fn new(reader: R) -> Self {
        FastaReader {
            reader,
            line: Vec::new(),
            line_no: 0,
            pending: None,
            done: false,
        }
    }

    fn next_line(&mut self) -> io::Result<bool> {
        self.line.clear();
        let read = self.reader.read_until(b'\n', &mut self.line)?;
        if read > 0 {
            self.line_no += 1;
        }
        Ok(read > 0)
    }

    fn read_record(&mut self) -> Result<Option<FastaRecord>, FastaError> {
        if self.pending.is_none() {
            loop {
                if !self.next_line()? {
                    return Ok(None);
                }
                if self.line.first() == Some(&b'>') {
                    self.pending = Some(parse_header(&self.line));
                    break;
                }
                if !self.line.iter().all(u8::is_ascii_whitespace) {
                    return Err(FastaError::MissingHeader { line: self.line_no });
                }
            }
        }
        let (id, description) = self.pending.take().expect("header was read");
        let mut sequence = Vec::new();
        while self.next_line()? {
            if self.line.first() == Some(&b'>') {
                self.pending = Some(parse_header(&self.line));
                break;
            }
            sequence.extend(self.line.iter().filter(|b| !b.is_ascii_whitespace()));
        }
        if sequence.is_empty() {
            return Err(FastaError::EmptySequence { id });
        }
        Ok(Some(FastaRecord {
            id,
            description,
            sequence,
        }))
    }
}

impl<R: BufRead> Iterator for FastaReader<R> {
    type Item = Result<FastaRecord, FastaError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let item = self.read_record().transpose();
        if !matches!(item, Some(Ok(_))) {
            self.done = true;
        }
        item
    }
}

/// Reads every record from `source`.
pub fn read_fasta<R: BufRead>(source: R) -> Result<Vec<FastaRecord>, FastaError> {
    FastaReader::new(source).collect()
}

/// Opens a path for reading; `-` means standard input.
pub fn open_input(path: &Path) -> Result<Box<dyn BufRead>, FastaError> {
    if path.as_os_str() == "-" {
        return Ok(Box::new(BufReader::new(io::stdin())));
    }
    let file = File::open(path).map_err(|source| FastaError::Open {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(Box::new(BufReader::with_capacity(1 << 16, file)))
}

/// Writes one record with sequence lines of at most `width` characters.
pub fn write_fasta<W: Write>(out: &mut W, record: &FastaRecord, width: usize) -> io::Result<()> {
    out.write_all(b">")?;
    out.write_all(record.id.as_bytes())?;
    if !record.description.is_empty() {
        out.write_all(b" ")?;
        out.write_all(record.description.as_bytes())?;
    }
    out.write_all(b"\n")?;
    for chunk in record.sequence.chunks(width.max(1)) {
        out.write_all(chunk)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// Where a search pattern comes from.
#[derive(Clone, Copy, Debug)]
pub enum PatternSource<'a> {
    Literal(&'a str),
    File(&'a Path),
}

/// Resolves a pattern source to a pattern string. Files may carry a single
/// optional FASTA header; whitespace and line breaks are removed.
pub fn read_pattern(source: PatternSource<'_>) -> Result<String, FastaError> {
    let pattern = match source {
        PatternSource::Literal(s) => s.to_string(),
        PatternSource::File(path) => {
            let mut raw = String::new();
            open_input(path)?.read_to_string(&mut raw)?;
            pattern_from_text(&raw)?
        }
    };
    if pattern.is_empty() {
        return Err(FastaError::EmptyPattern);
    }
    Ok(pattern)
}

fn pattern_from_text(raw: &str) -> Result<String, FastaError> {
    let mut lines = raw.lines().filter(|l| !l.trim().is_empty()).peekable();
    if lines.peek().is_some_and(|l| l.starts_with('>')) {
        lines.next();
    }
    let mut out = String::new();
    for line in lines {
        if line.starts_with('>') {
            return Err(FastaError::MultiplePatterns);
        }
        out.extend(line.chars().filter(|c| !c.is_whitespace()));
    }
    Ok(out)
}
