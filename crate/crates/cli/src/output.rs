use std::io::Write;

use serde::Serialize;

use crate::error::{CliError, CliResult};

/// Comma-separated, header row, LF line endings.
pub fn csv_writer<W: Write>(sink: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(sink)
}

/// Pretty JSON with a trailing newline.
pub fn json<T: Serialize>(value: &T) -> CliResult<String> {
    let mut text = serde_json::to_string_pretty(value).map_err(CliError::input)?;
    text.push('\n');
    Ok(text)
}
