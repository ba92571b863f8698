//! Table and report writers. CSV floats carry 17 significant digits; JSON
//! numbers use the shortest representation that round-trips.

use crate::CliError;
use serde::Serialize;
use std::io::Write;
use std::path::Path;

/// `{:.16e}`, i.e. 17 significant digits. Negative zero prints as zero.
pub fn float(x: f64) -> String {
    format!("{:.16e}", x + 0.0)
}

pub fn opt_float(x: Option<f64>) -> String {
    x.map(float).unwrap_or_default()
}

/// Writes `text` to `path`, or to stdout when `path` is `None`.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            // A closed downstream pipe (e.g. `| head`) is not an error.
            match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                other => other?,
            }
        }
    }
    Ok(())
}

pub fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut text = header.join(",");
    text.push('\n');
    for row in rows {
        text.push_str(&row.join(","));
        text.push('\n');
    }
    text
}

pub fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Config(format!("serialization: {e}")))?;
    text.push('\n');
    Ok(text)
}
