//! Reader and writer for the line-oriented standoff format.
//!
//! ```text
//! #DOC <id>
//! #META <key>=<value>
//! #TEXT <n-lines>
//! <raw text, exactly n lines>
//! E<k>\tEVENT\t<category>\t<start>\t<end>\tneg=<bool>\t<surface>
//! T<k>\tTIMEX\t<type>\t<start>\t<end>\t<value>\t<modifier>\t<surface>
//! L<k>\tTLINK\t<source>\t<target>\t<relation>\t<origin>
//! ```
//!
//! The surface column is optional on read and always written. Surfaces and
//! meta values escape `\\`, tab, CR and LF.

use std::fmt::Write as _;
use std::path::Path;

use super::{
    AnnotatedDocument, CorpusError, Document, EventMention, Span, TLink, TimexMention,
};

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out
}

fn unescape(s: &str) -> Result<String, String> {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('\\') => out.push('\\'),
            Some('t') => out.push('\t'),
            Some('n') => out.push('\n'),
            Some('r') => out.push('\r'),
            Some(other) => return Err(format!("unknown escape `\\{other}`")),
            None => return Err("dangling escape at end of field".into()),
        }
    }
    Ok(out)
}

/// Renders the canonical standoff form. Annotation order is canonical
/// regardless of the in-memory order.
pub fn to_standoff_string(doc: &AnnotatedDocument) -> String {
    let mut sorted = doc.clone();
    sorted.canonicalize();
    let mut out = String::new();
    let _ = writeln!(out, "#DOC {}", sorted.doc.id);
    for (k, v) in &sorted.doc.meta {
        let _ = writeln!(out, "#META {}={}", k, escape(v));
    }
    let text = sorted.doc.text();
    if text.is_empty() {
        out.push_str("#TEXT 0\n");
    } else {
        let lines: Vec<&str> = text.split('\n').collect();
        let _ = writeln!(out, "#TEXT {}", lines.len());
        for line in lines {
            out.push_str(line);
            out.push('\n');
        }
    }
    for e in &sorted.events {
        let _ = writeln!(
            out,
            "{}\tEVENT\t{}\t{}\t{}\tneg={}\t{}",
            e.id,
            e.category,
            e.span.start,
            e.span.end,
            e.negated,
            escape(sorted.surface(e.span))
        );
    }
    for t in &sorted.timexes {
        let _ = writeln!(
            out,
            "{}\tTIMEX\t{}\t{}\t{}\t{}\t{}\t{}",
            t.id,
            t.ttype,
            t.span.start,
            t.span.end,
            t.value,
            t.modifier,
            escape(sorted.surface(t.span))
        );
    }
    for l in &sorted.tlinks {
        let _ = writeln!(
            out,
            "{}\tTLINK\t{}\t{}\t{}\t{}",
            l.id, l.source, l.target, l.relation, l.origin
        );
    }
    out
}

pub fn write_standoff(doc: &AnnotatedDocument, path: impl AsRef<Path>) -> Result<(), CorpusError> {
    std::fs::write(path, to_standoff_string(doc))?;
    Ok(())
}

pub fn read_standoff(path: impl AsRef<Path>) -> Result<AnnotatedDocument, CorpusError> {
    let raw = std::fs::read_to_string(path)?;
    parse_standoff(&raw)
}

fn perr(line: usize, reason: impl Into<String>) -> CorpusError {
    CorpusError::Parse {
        line,
        reason: reason.into(),
    }
}

fn parse_field<T: std::str::FromStr>(line: usize, field: &str, what: &str) -> Result<T, CorpusError>
where
    T::Err: std::fmt::Display,
{
    field
        .parse::<T>()
        .map_err(|e| perr(line, format!("bad {what} `{field}`: {e}")))
}

fn parse_bool(line: usize, field: &str) -> Result<bool, CorpusError> {
    match field.strip_prefix("neg=").unwrap_or(field) {
        "true" => Ok(true),
        "false" => Ok(false),
        other => Err(perr(line, format!("bad negation flag `{other}`"))),
    }
}

/// Parses and validates a standoff document.
pub fn parse_standoff(raw: &str) -> Result<AnnotatedDocument, CorpusError> {
    let lines: Vec<&str> = raw.split('\n').collect();
    // a trailing newline yields one empty final element
    let n_lines = if raw.ends_with('\n') { lines.len() - 1 } else { lines.len() };
    let mut i = 0usize;
    let header = |l: &str| l.strip_suffix('\r').unwrap_or(l).to_string();

    let first = lines.first().map(|l| header(l)).unwrap_or_default();
    let id = first
        .strip_prefix("#DOC ")
        .ok_or_else(|| perr(1, "expected `#DOC <id>`"))?
        .trim()
        .to_string();
    i += 1;

    let mut meta = Vec::new();
    let n_text;
    loop {
        if i >= n_lines {
            return Err(perr(i + 1, "missing `#TEXT` header"));
        }
        let l = header(lines[i]);
        if let Some(rest) = l.strip_prefix("#META ") {
            let (k, v) = rest
                .split_once('=')
                .ok_or_else(|| perr(i + 1, "meta line needs `key=value`"))?;
            let v = unescape(v).map_err(|e| perr(i + 1, e))?;
            meta.push((k.trim().to_string(), v));
            i += 1;
        } else if let Some(rest) = l.strip_prefix("#TEXT ") {
            n_text = parse_field::<usize>(i + 1, rest.trim(), "line count")?;
            i += 1;
            break;
        } else {
            return Err(perr(i + 1, "expected `#META` or `#TEXT`"));
        }
    }
    if i + n_text > n_lines {
        return Err(perr(n_lines, format!("text block declares {n_text} lines but file ends early")));
    }
    let text = lines[i..i + n_text].join("\n");
    i += n_text;

    let mut doc = Document::new(id, text);
    for (k, v) in meta {
        doc.meta.insert(k, v);
    }
    let mut ad = AnnotatedDocument::new(doc);
    while i < n_lines {
        let lineno = i + 1;
        let l = header(lines[i]);
        i += 1;
        if l.is_empty() {
            continue;
        }
        let f: Vec<&str> = l.split('\t').collect();
        let kind = f.get(1).copied().unwrap_or("");
        let surface = match kind {
            "EVENT" => {
                if f.len() != 6 && f.len() != 7 {
                    return Err(perr(lineno, format!("EVENT line has {} fields", f.len())));
                }
                let span = parse_span(lineno, f[3], f[4])?;
                ad.events.push(EventMention {
                    id: f[0].to_string(),
                    span,
                    category: parse_field(lineno, f[2], "category")?,
                    negated: parse_bool(lineno, f[5])?,
                });
                f.get(6).map(|s| (f[0], span, *s))
            }
            "TIMEX" => {
                if f.len() != 7 && f.len() != 8 {
                    return Err(perr(lineno, format!("TIMEX line has {} fields", f.len())));
                }
                let span = parse_span(lineno, f[3], f[4])?;
                ad.timexes.push(TimexMention {
                    id: f[0].to_string(),
                    span,
                    ttype: parse_field(lineno, f[2], "timex type")?,
                    value: f[5].to_string(),
                    modifier: parse_field(lineno, f[6], "modifier")?,
                });
                f.get(7).map(|s| (f[0], span, *s))
            }
            "TLINK" => {
                if f.len() != 6 {
                    return Err(perr(lineno, format!("TLINK line has {} fields", f.len())));
                }
                ad.tlinks.push(TLink {
                    id: f[0].to_string(),
                    source: f[2].to_string(),
                    target: f[3].to_string(),
                    relation: parse_field(lineno, f[4], "relation")?,
                    origin: parse_field(lineno, f[5], "origin")?,
                });
                None
            }
            other => return Err(perr(lineno, format!("unknown record kind `{other}`"))),
        };
        if let Some((id, span, recorded)) = surface {
            let recorded = unescape(recorded).map_err(|e| perr(lineno, e))?;
            match ad.doc.slice(span) {
                Some(actual) if actual == recorded => {}
                Some(actual) => {
                    return Err(CorpusError::validation(
                        id,
                        format!("span {span} slices to `{actual}`, file records `{recorded}`"),
                    ))
                }
                None => {
                    return Err(CorpusError::validation(
                        id,
                        format!("span {span} exceeds text length {}", ad.doc.char_len()),
                    ))
                }
            }
        }
    }
    ad.validate()?;
    Ok(ad)
}

fn parse_span(line: usize, start: &str, end: &str) -> Result<Span, CorpusError> {
    let s: usize = parse_field(line, start, "start offset")?;
    let e: usize = parse_field(line, end, "end offset")?;
    if s >= e {
        return Err(perr(line, format!("span start {s} not before end {e}")));
    }
    Ok(Span::new(s, e))
}
