//! Line-oriented group definition files.
//!
//! ```text
//! # Grigorchuk group
//! degree = 2
//! generator a : root = (1 2) ; sections = [e, e]
//! generator b : root = e ; sections = [a, c]
//! order a = 2
//! ```
//!
//! Generators may be referenced before they are declared. Writing a
//! definition back out goes through the `Display` impl of [`GroupDef`].

use selfsim_core::{parse_word, DefError, GroupDef, Permutation, Section};

struct GeneratorLine {
    line: usize,
    name: String,
    root: Permutation,
    sections: Vec<(usize, String)>,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> DefError {
    DefError::Syntax { line, column, message: message.into() }
}

/// Column (1-based, in characters) of byte offset `offset` within `line`.
fn column_of(line: &str, offset: usize) -> usize {
    line[..offset].chars().count() + 1
}

pub fn parse(text: &str) -> Result<GroupDef, DefError> {
    let mut degree: Option<usize> = None;
    let mut generators: Vec<GeneratorLine> = Vec::new();
    let mut orders: Vec<(usize, String, u32)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = body.len() - body.trim_start().len();
        let col = |off: usize| column_of(raw, indent + off);

        if let Some(rest) = keyword(trimmed, "degree") {
            let value = rest.trim_start().strip_prefix('=').ok_or_else(|| syntax(lineno, col(6), "expected '='"))?;
            let value = value.trim();
            let d: usize = value.parse().map_err(|_| syntax(lineno, col(trimmed.len() - value.len()), "expected a degree"))?;
            if degree.replace(d).is_some() {
                return Err(syntax(lineno, col(0), "degree declared twice"));
            }
        } else if let Some(rest) = keyword(trimmed, "generator") {
            let d = degree.ok_or_else(|| syntax(lineno, col(0), "generator before degree"))?;
            generators.push(generator_line(lineno, raw, indent, trimmed, rest, d)?);
        } else if let Some(rest) = keyword(trimmed, "order") {
            let (name, value) = rest.split_once('=').ok_or_else(|| syntax(lineno, col(5), "expected '='"))?;
            let value = value.trim();
            let m: u32 = value
                .parse()
                .map_err(|_| syntax(lineno, col(trimmed.len() - value.len()), "expected a positive order"))?;
            orders.push((lineno, name.trim().to_string(), m));
        } else {
            let word: String = trimmed.chars().take_while(|c| !c.is_whitespace()).collect();
            return Err(syntax(lineno, col(0), format!("unknown directive '{}'", word)));
        }
    }

    let degree = degree.ok_or_else(|| syntax(1, 1, "missing degree"))?;
    let names: Vec<String> = generators.iter().map(|g| g.name.clone()).collect();
    let mut builder = GroupDef::builder(degree);
    for g in &generators {
        let mut sections = Vec::with_capacity(g.sections.len());
        for (column, text) in &g.sections {
            let w = parse_word(&names, text).map_err(|e| syntax(g.line, column + e.offset, e.message))?;
            sections.push(Section::Word(w));
        }
        builder = builder.generator_with_sections(&g.name, g.root.clone(), sections);
    }
    for (line, name, m) in &orders {
        if !names.contains(name) {
            return Err(syntax(*line, 1, format!("undeclared generator '{}'", name)));
        }
        builder = builder.order(name, *m);
    }
    builder.build()
}

/// The remainder after `word` when `line` starts with it as a whole token.
fn keyword<'a>(line: &'a str, word: &str) -> Option<&'a str> {
    let rest = line.strip_prefix(word)?;
    match rest.chars().next() {
        Some(c) if c.is_alphanumeric() || c == '_' => None,
        _ => Some(rest),
    }
}

fn generator_line(
    lineno: usize,
    raw: &str,
    indent: usize,
    trimmed: &str,
    rest: &str,
    degree: usize,
) -> Result<GeneratorLine, DefError> {
    let offset_of = |s: &str| indent + (s.as_ptr() as usize - trimmed.as_ptr() as usize);
    let col = |s: &str| column_of(raw, offset_of(s));

    let (name, rest) = rest.split_once(':').ok_or_else(|| syntax(lineno, col(rest), "expected ':' after name"))?;
    let name = name.trim();
    if name.is_empty() {
        return Err(syntax(lineno, col(rest), "missing generator name"));
    }
    let (root_part, sections_part) =
        rest.split_once(';').ok_or_else(|| syntax(lineno, col(rest), "expected ';' between root and sections"))?;

    let root_text = field(root_part, "root").ok_or_else(|| syntax(lineno, col(root_part), "expected 'root = ...'"))?;
    let root = Permutation::parse(degree, root_text)
        .map_err(|e| syntax(lineno, col(root_text), format!("bad root label: {}", e)))?;

    let list = field(sections_part, "sections")
        .ok_or_else(|| syntax(lineno, col(sections_part), "expected 'sections = [...]'"))?;
    let inner = list
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| syntax(lineno, col(list), "sections must be a bracketed list"))?;
    let mut sections = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    for (i, c) in inner.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                sections.push(&inner[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    sections.push(&inner[start..]);
    if sections.len() == 1 && sections[0].trim().is_empty() {
        sections.clear();
    }
    let sections = sections.into_iter().map(|s| (col(s), s.to_string())).collect::<Vec<_>>();
    if sections.len() != degree {
        return Err(syntax(
            lineno,
            col(list),
            format!("generator '{}' has {} sections, expected {}", name, sections.len(), degree),
        ));
    }
    Ok(GeneratorLine { line: lineno, name: name.to_string(), root, sections })
}

/// The value in `key = value`, trimmed.
fn field<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    let rest = keyword(text.trim_start(), key)?;
    Some(rest.trim_start().strip_prefix('=')?.trim())
}
