use std::io::{self, Write};

use serde::Serialize;

use crate::Format;

/// One reported match.
#[derive(Debug, Serialize)]
pub struct OutputRecord<'a> {
    pub record_id: &'a str,
    pub position: usize,
    pub mismatches: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matched_substring: Option<&'a str>,
}

pub struct RecordWriter<W> {
    out: W,
    format: Format,
}

impl<W: Write> RecordWriter<W> {
    pub fn new(out: W, format: Format) -> Self {
        RecordWriter { out, format }
    }

    pub fn header(&mut self, show_match: bool) -> io::Result<()> {
        if self.format != Format::Tsv {
            return Ok(());
        }
        write!(self.out, "record_id\tposition\tmismatches")?;
        if show_match {
            write!(self.out, "\tmatched_substring")?;
        }
        writeln!(self.out)
    }

    pub fn write(&mut self, rec: &OutputRecord<'_>) -> io::Result<()> {
        match self.format {
            Format::Tsv => {
                write!(self.out, "{}\t{}\t{}", rec.record_id, rec.position, rec.mismatches)?;
                if let Some(s) = rec.matched_substring {
                    write!(self.out, "\t{s}")?;
                }
                writeln!(self.out)
            }
            Format::Json => {
                serde_json::to_writer(&mut self.out, rec)?;
                writeln!(self.out)
            }
        }
    }

    pub fn flush(&mut self) -> io::Result<()> {
        self.out.flush()
    }
}
