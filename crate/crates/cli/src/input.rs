use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};

use wirtgraph::gauss::split_codes;
use wirtgraph::GaussError;

/// One code read from an input file.
pub struct Entry {
    pub source: String,
    pub line: usize,
    pub text: String,
}

pub fn read_source(path: &Path) -> io::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path)
    }
}

/// Splits every input into codes. With `lenient`, a file whose brackets do
/// not balance is split line by line instead, so one bad line does not hide
/// the rest.
pub fn entries(paths: &[PathBuf], lenient: bool) -> Result<Vec<Entry>, (String, GaussError)> {
    let stdin = [PathBuf::from("-")];
    let paths = if paths.is_empty() { &stdin[..] } else { paths };
    let mut out = Vec::new();
    for path in paths {
        let source = path.display().to_string();
        let text = read_source(path).map_err(|e| {
            (
                source.clone(),
                GaussError::Syntax {
                    offset: 0,
                    message: format!("cannot read input: {e}"),
                },
            )
        })?;
        let codes = match split_codes(&text) {
            Ok(codes) => codes,
            Err(_) if lenient => text
                .lines()
                .enumerate()
                .filter(|(_, l)| {
                    let t = l.trim();
                    !t.is_empty() && !t.starts_with('#')
                })
                .map(|(i, l)| (i + 1, l.to_string()))
                .collect(),
            Err(e) => return Err((source, e)),
        };
        out.extend(codes.into_iter().map(|(line, text)| Entry {
            source: source.clone(),
            line,
            text,
        }));
    }
    Ok(out)
}
