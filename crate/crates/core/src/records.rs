//! Output records: `key=value` lines for scripts, aligned tables for people.

use std::fmt::Display;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub kind: &'static str,
    pub fields: Vec<(&'static str, String)>,
}

impl Record {
    pub fn new(kind: &'static str) -> Self {
        Record {
            kind,
            fields: Vec::new(),
        }
    }

    pub fn with(mut self, key: &'static str, value: impl Display) -> Self {
        self.fields.push((key, value.to_string()));
        self
    }

    pub fn with_opt(self, key: &'static str, value: Option<impl Display>) -> Self {
        match value {
            Some(v) => self.with(key, v),
            None => self,
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| *k == key).map(|(_, v)| v.as_str())
    }

    /// `record=<kind> key=value ...`, quoting values that need it.
    pub fn machine_line(&self) -> String {
        let mut line = format!("record={}", self.kind);
        for (k, v) in &self.fields {
            line.push(' ');
            line.push_str(k);
            line.push('=');
            line.push_str(&quote(v));
        }
        line
    }
}

/// Bare when the value is a non-empty run of characters other than
/// whitespace, `"`, `\` and `=`; otherwise double-quoted with `\"`, `\\`
/// and `\n` escapes.
pub fn quote(v: &str) -> String {
    let bare = !v.is_empty()
        && v
            .chars()
            .all(|c| !c.is_whitespace() && c != '"' && c != '\\' && c != '=');
    if bare {
        return v.to_string();
    }
    let mut out = String::with_capacity(v.len() + 2);
    out.push('"');
    for c in v.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Inverse of [`Record::machine_line`].
pub fn parse_machine_line(line: &str) -> Option<Vec<(String, String)>> {
    let mut out = Vec::new();
    let mut chars = line.chars().peekable();
    loop {
        while chars.peek() == Some(&' ') {
            chars.next();
        }
        if chars.peek().is_none() {
            return Some(out);
        }
        let mut key = String::new();
        loop {
            match chars.next()? {
                '=' => break,
                c => key.push(c),
            }
        }
        let mut value = String::new();
        if chars.peek() == Some(&'"') {
            chars.next();
            loop {
                match chars.next()? {
                    '"' => break,
                    '\\' => match chars.next()? {
                        'n' => value.push('\n'),
                        c => value.push(c),
                    },
                    c => value.push(c),
                }
            }
        } else {
            while let Some(&c) = chars.peek() {
                if c == ' ' {
                    break;
                }
                value.push(c);
                chars.next();
            }
        }
        out.push((key, value));
    }
}

pub fn render_machine(records: &[Record]) -> String {
    records.iter().map(|r| r.machine_line() + "\n").collect()
}

/// Consecutive records of one kind become a table; a lone record becomes
/// a two-column key/value listing.
pub fn render_human(records: &[Record]) -> String {
    let mut out = String::new();
    let mut start = 0;
    while start < records.len() {
        let kind = records[start].kind;
        let end = records[start..]
            .iter()
            .position(|r| r.kind != kind)
            .map_or(records.len(), |k| start + k);
        if !out.is_empty() {
            out.push('\n');
        }
        out.push_str(&format!("[{kind}]\n"));
        let group = &records[start..end];
        if group.len() == 1 {
            let rows: Vec<Vec<String>> = group[0]
                .fields
                .iter()
                .map(|(k, v)| vec![k.to_string(), v.clone()])
                .collect();
            out.push_str(&table(&rows));
        } else {
            let mut headers: Vec<&'static str> = Vec::new();
            for r in group {
                for (k, _) in &r.fields {
                    if !headers.contains(k) {
                        headers.push(k);
                    }
                }
            }
            let mut rows = vec![headers.iter().map(|h| h.to_string()).collect::<Vec<_>>()];
            for r in group {
                rows.push(headers.iter().map(|h| r.get(h).unwrap_or("-").to_string()).collect());
            }
            out.push_str(&table(&rows));
        }
        start = end;
    }
    out
}

fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c + 1 == row.len() {
                line.push_str(cell);
            } else {
                line.push_str(cell);
                line.push_str(&" ".repeat(widths[c] - cell.chars().count() + 2));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quoting() {
        assert_eq!(quote("zmod(8)"), "zmod(8)");
        assert_eq!(quote("dup(zmod(4); 2)"), "\"dup(zmod(4); 2)\"");
        assert_eq!(quote(""), "\"\"");
        assert_eq!(quote("a=\"b\"\\"), "\"a=\\\"b\\\"\\\\\"");
    }

    #[test]
    fn machine_lines_parse_back() {
        let r = Record::new("props")
            .with("ring", "trivext(zmod(4); regular)")
            .with("size", 16)
            .with("note", "say \"hi\"\nthere")
            .with("empty", "");
        let parsed = parse_machine_line(&r.machine_line()).unwrap();
        assert_eq!(parsed[0], ("record".into(), "props".into()));
        let back: Vec<(String, String)> = r.fields.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        assert_eq!(parsed[1..], back[..]);
    }

    #[test]
    fn human_tables_align() {
        let rows = vec![
            Record::new("verdict").with("clause", "chain").with("status", "verified"),
            Record::new("verdict").with("clause", "thm-2.1:2").with("status", "verified"),
        ];
        let text = render_human(&rows);
        assert_eq!(
            text,
            "[verdict]\nclause     status\nchain      verified\nthm-2.1:2  verified\n"
        );
        let single = render_human(&[Record::new("props").with("ring", "zmod(2)").with("size", 2)]);
        assert_eq!(single, "[props]\nring  zmod(2)\nsize  2\n");
    }
}
