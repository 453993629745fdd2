use super::{
    validate_link, validate_spatial, EdgeCode, Endpoint, GaussCode, LinkGaussCode,
    SpatialGaussCode,
};
use crate::error::GaussError;

/// An entry of a bracketed list before it is interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Item {
    Int(i32),
    Symbol(Endpoint),
}

/// Syntax-only parse result: a list of lists of items.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawCode {
    pub lists: Vec<(usize, Vec<(usize, Item)>)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Item(Item),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, GaussError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = skip_assignment_prefix(text);
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b'[' => {
                out.push((i, Tok::Open));
                i += 1;
            }
            b']' => {
                out.push((i, Tok::Close));
                i += 1;
            }
            b',' => i += 1,
            _ if b.is_ascii_whitespace() => i += 1,
            b'-' | b'+' | b'0'..=b'9' => {
                let start = i;
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let s = &text[start..i];
                let v: i32 = s
                    .parse()
                    .map_err(|_| GaussError::syntax(start, format!("bad integer `{s}`")))?;
                out.push((start, Tok::Item(Item::Int(v))));
            }
            b'a'..=b'z' => {
                let start = i;
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let s = &text[start..i];
                let ep: Endpoint = s.parse().map_err(|e| match e {
                    GaussError::Syntax { message, .. } => GaussError::Syntax {
                        offset: start,
                        message,
                    },
                    other => other,
                })?;
                out.push((start, Tok::Item(Item::Symbol(ep))));
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(GaussError::syntax(i, format!("unexpected character `{ch}`")));
            }
        }
    }
    Ok(out)
}

/// Accepts an optional leading `name =` as in `gauss_code = [[...]]`.
fn skip_assignment_prefix(text: &str) -> usize {
    let trimmed = text.trim_start();
    let ident_len = trimmed
        .bytes()
        .take_while(|b| b.is_ascii_alphanumeric() || *b == b'_')
        .count();
    if ident_len == 0 {
        return 0;
    }
    match trimmed[ident_len..].trim_start().strip_prefix('=') {
        Some(after) => text.len() - after.len(),
        None => 0,
    }
}

/// Parses the bracket structure without interpreting it.
pub fn parse_raw(text: &str) -> Result<RawCode, GaussError> {
    let toks = tokenize(text)?;
    let mut it = toks.into_iter().peekable();
    match it.next() {
        Some((_, Tok::Open)) => {}
        Some((pos, _)) => return Err(GaussError::syntax(pos, "expected `[`")),
        None => return Err(GaussError::syntax(0, "empty input")),
    }
    let mut lists = Vec::new();
    loop {
        match it.next() {
            Some((pos, Tok::Open)) => {
                let mut items = Vec::new();
                loop {
                    match it.next() {
                        Some((p, Tok::Item(item))) => items.push((p, item)),
                        Some((_, Tok::Close)) => break,
                        Some((p, Tok::Open)) => {
                            return Err(GaussError::syntax(p, "lists nest at most two deep"))
                        }
                        None => return Err(GaussError::syntax(text.len(), "unbalanced `[`")),
                    }
                }
                lists.push((pos, items));
            }
            Some((_, Tok::Close)) => break,
            Some((p, Tok::Item(_))) => {
                return Err(GaussError::syntax(p, "entries must sit inside an inner list"))
            }
            None => return Err(GaussError::syntax(text.len(), "unbalanced `[`")),
        }
    }
    if let Some((p, _)) = it.next() {
        return Err(GaussError::syntax(p, "trailing input after closing `]`"));
    }
    Ok(RawCode { lists })
}

impl RawCode {
    fn has_symbols(&self) -> bool {
        self.lists
            .iter()
            .any(|(_, l)| l.iter().any(|(_, i)| matches!(i, Item::Symbol(_))))
    }

    pub fn into_link(self) -> Result<LinkGaussCode, GaussError> {
        let mut components = Vec::with_capacity(self.lists.len());
        for (_, list) in self.lists {
            let mut comp = Vec::with_capacity(list.len());
            for (pos, item) in list {
                match item {
                    Item::Int(v) => comp.push(v),
                    Item::Symbol(s) => {
                        return Err(GaussError::syntax(
                            pos,
                            format!("endpoint symbol `{s}` in a link code"),
                        ))
                    }
                }
            }
            components.push(comp);
        }
        Ok(LinkGaussCode { components })
    }

    pub fn into_spatial(self) -> Result<SpatialGaussCode, GaussError> {
        let mut edges = Vec::with_capacity(self.lists.len());
        for (pos, list) in self.lists {
            if list.len() < 2 {
                return Err(GaussError::syntax(pos, "edge needs a start and an end symbol"));
            }
            let (start, end) = match (list[0].1, list[list.len() - 1].1) {
                (Item::Symbol(s), Item::Symbol(e)) => (s, e),
                _ => {
                    return Err(GaussError::syntax(
                        pos,
                        "edge must start and end with an endpoint symbol",
                    ))
                }
            };
            let mut passages = Vec::with_capacity(list.len() - 2);
            for &(p, item) in &list[1..list.len() - 1] {
                match item {
                    Item::Int(v) => passages.push(v),
                    Item::Symbol(s) => {
                        return Err(GaussError::syntax(
                            p,
                            format!("endpoint symbol `{s}` inside an edge"),
                        ))
                    }
                }
            }
            edges.push(EdgeCode::new(start, passages, end));
        }
        Ok(SpatialGaussCode { edges })
    }
}

/// Parses and validates a link Gauss code such as `[[1,-2,3,-1,2,-3]]`.
pub fn parse_link_gauss(text: &str) -> Result<LinkGaussCode, GaussError> {
    let code = parse_raw(text)?.into_link()?;
    let report = validate_link(&code);
    if report.ok {
        Ok(code)
    } else {
        Err(GaussError::Validation(report))
    }
}

/// Parses and validates a spatial-graph Gauss code such as
/// `[[a1, 3, -4, a2], [b1, ...], ...]`.
pub fn parse_spatial_gauss(text: &str) -> Result<SpatialGaussCode, GaussError> {
    let code = parse_raw(text)?.into_spatial()?;
    let report = validate_spatial(&code);
    if report.ok {
        Ok(code)
    } else {
        Err(GaussError::Validation(report))
    }
}

/// Parses either flavour; the presence of any endpoint symbol selects the
/// spatial format.
pub fn parse_any(text: &str) -> Result<GaussCode, GaussError> {
    let raw = parse_raw(text)?;
    if raw.has_symbols() {
        let code = raw.into_spatial()?;
        let report = validate_spatial(&code);
        if report.ok {
            Ok(GaussCode::Spatial(code))
        } else {
            Err(GaussError::Validation(report))
        }
    } else {
        let code = raw.into_link()?;
        let report = validate_link(&code);
        if report.ok {
            Ok(GaussCode::Link(code))
        } else {
            Err(GaussError::Validation(report))
        }
    }
}

/// Splits a file into its top-level bracketed codes.
///
/// Each returned item is `(line, text)` with a 1-based line number. Lines
/// whose first non-blank character is `#` are comments. A code may span
/// several lines; an optional `name =` prefix is kept with the code.
pub fn split_codes(text: &str) -> Result<Vec<(usize, String)>, GaussError> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    let mut start_line = 0usize;
    let mut offset = 0usize;
    for (lineno, line) in text.lines().enumerate() {
        let trimmed = line.trim_start();
        if depth == 0 && (trimmed.starts_with('#') || trimmed.is_empty()) {
            offset += line.len() + 1;
            continue;
        }
        if depth == 0 && current.trim().is_empty() {
            start_line = lineno + 1;
        }
        for (i, ch) in line.char_indices() {
            match ch {
                '[' => depth += 1,
                ']' => {
                    if depth == 0 {
                        return Err(GaussError::syntax(offset + i, "unbalanced `]`"));
                    }
                    depth -= 1;
                    if depth == 0 {
                        current.push(']');
                        out.push((start_line, std::mem::take(&mut current)));
                        continue;
                    }
                }
                _ => {}
            }
            if depth == 0 && current.trim().is_empty() && ch == ',' {
                continue;
            }
            current.push(ch);
        }
        current.push('\n');
        offset += line.len() + 1;
    }
    if depth != 0 {
        return Err(GaussError::syntax(text.len(), "unbalanced `[`"));
    }
    if !current.trim().is_empty() {
        return Err(GaussError::syntax(text.len(), "trailing text outside a code"));
    }
    Ok(out)
}
