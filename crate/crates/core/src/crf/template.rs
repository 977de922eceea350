use std::collections::HashSet;
use std::fmt;

use super::CrfError;

/// One CRF++ unigram template such as `U18:%x[0,1]/%x[0,2]/%x[0,4]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureTemplate {
    pub id: String,
    pub cells: Vec<(i32, usize)>,
}

impl fmt::Display for FeatureTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.id)?;
        for (i, (row, col)) in self.cells.iter().enumerate() {
            if i > 0 {
                f.write_str("/")?;
            }
            write!(f, "%x[{row},{col}]")?;
        }
        Ok(())
    }
}

const MAX_OFFSET: i32 = 4;

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn err(&self, reason: impl Into<String>) -> CrfError {
        CrfError::TemplateSyntax {
            line: self.line,
            col: self.pos + 1,
            reason: reason.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, lit: &str) -> Result<(), CrfError> {
        for c in lit.chars() {
            if self.peek() != Some(c) {
                return Err(self.err(format!("expected `{lit}`")));
            }
            self.pos += 1;
        }
        Ok(())
    }

    fn int(&mut self) -> Result<i64, CrfError> {
        let start = self.pos;
        if self.peek() == Some('-') || self.peek() == Some('+') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return Err(self.err("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| {
            self.pos = start;
            self.err("integer out of range")
        })
    }
}

/// Parses a CRF++ template file. Blank lines, `#` comments and the bigram
/// marker line `B` are accepted; label transitions are always modeled.
pub fn parse_templates(text: &str) -> Result<Vec<FeatureTemplate>, CrfError> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim_end();
        if line.trim().is_empty() || line.trim_start().starts_with('#') || line.trim() == "B" {
            continue;
        }
        let mut cur = Cursor {
            chars: line.chars().collect(),
            pos: 0,
            line: n + 1,
        };
        if cur.peek() != Some('U') {
            return Err(cur.err("template id must start with `U`"));
        }
        while cur.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
            cur.pos += 1;
        }
        let id: String = cur.chars[..cur.pos].iter().collect();
        if id.len() < 2 {
            return Err(cur.err("template id needs a suffix"));
        }
        cur.expect(":")?;
        let mut cells = Vec::new();
        loop {
            cur.expect("%x[")?;
            let row_at = cur.pos;
            let row = cur.int()?;
            if !(-(MAX_OFFSET as i64)..=MAX_OFFSET as i64).contains(&row) {
                cur.pos = row_at;
                return Err(cur.err(format!("row offset {row} outside [-{MAX_OFFSET}, {MAX_OFFSET}]")));
            }
            cur.expect(",")?;
            let col_at = cur.pos;
            let col = cur.int()?;
            if col < 0 {
                cur.pos = col_at;
                return Err(cur.err("column index must be non-negative"));
            }
            cur.expect("]")?;
            cells.push((row as i32, col as usize));
            match cur.peek() {
                None => break,
                Some('/') => cur.pos += 1,
                Some(_) => return Err(cur.err("expected `/` or end of line")),
            }
        }
        if !seen.insert(id.clone()) {
            cur.pos = 0;
            return Err(cur.err(format!("duplicate template id {id}")));
        }
        out.push(FeatureTemplate { id, cells });
    }
    Ok(out)
}
