//! Plain-text format for TBNs and named configurations.
//!
//! ```text
//! # comment
//! w = 2
//! G: 11* 12* 21* 22*
//! 2 x H1: 11 12
//! a b*
//! conf start: {G H1} {H1}
//! ```
//!
//! A monomer line is `[N x] [name:] site...`, with a trailing `*` marking a
//! starred site. A leading integer followed by `x` and at least one more
//! token is a count. Configuration lines reference monomers by name.

use std::collections::HashMap;

use crate::error::{Result, TbnError};
use crate::model::{BondStrength, Configuration, Monomer, Polymer, SiteType, Tbn};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TbnDocument {
    pub tbn: Tbn,
    pub configurations: Vec<(String, Configuration)>,
    pub w: Option<BondStrength>,
}

impl TbnDocument {
    pub fn new(tbn: Tbn) -> Self {
        Self {
            tbn,
            configurations: Vec::new(),
            w: None,
        }
    }

    pub fn configuration(&self, name: &str) -> Result<&Configuration> {
        self.configurations
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c)
            .ok_or_else(|| TbnError::UnknownConfiguration(name.to_string()))
    }
}

fn err(line: usize, column: usize, message: impl Into<String>) -> TbnError {
    TbnError::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with 1-based character columns.
fn tokens(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    let mut col = 0;
    let mut start_col = 0;
    for (byte, ch) in s.char_indices() {
        col += 1;
        if ch.is_whitespace() {
            if let Some(b) = start.take() {
                out.push((start_col, &s[b..byte]));
            }
        } else if start.is_none() {
            start = Some(byte);
            start_col = col;
        }
    }
    if let Some(b) = start {
        out.push((start_col, &s[b..]));
    }
    out
}

fn valid_name(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | '~' | '\'' | '^'))
}

struct PendingConf {
    line: usize,
    name: String,
    name_col: usize,
    polymers: Vec<Vec<(usize, String)>>,
}

pub fn parse_tbn(text: &str) -> Result<TbnDocument> {
    let mut monomers: Vec<(Monomer, u32, usize)> = Vec::new();
    let mut by_name: HashMap<String, usize> = HashMap::new();
    let mut confs: Vec<PendingConf> = Vec::new();
    let mut w = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokens(line);
        if toks.is_empty() {
            continue;
        }
        if toks[0].1 == "w" || toks[0].1.starts_with("w=") {
            let rest = line.trim_start()[1..].trim_start();
            let value = rest
                .strip_prefix('=')
                .ok_or_else(|| err(line_no, toks[0].0, "expected `w = p/q`"))?;
            if w.is_some() {
                return Err(err(line_no, toks[0].0, "w given twice"));
            }
            w = Some(BondStrength::parse(value.trim()).map_err(|e| err(line_no, toks[0].0, e.to_string()))?);
            continue;
        }
        if toks[0].1 == "conf" {
            confs.push(parse_conf(line, line_no, &toks)?);
            continue;
        }

        let mut rest = &toks[..];
        let mut count = 1u32;
        if rest.len() >= 3 && rest[1].1 == "x" && rest[0].1.chars().all(|c| c.is_ascii_digit()) {
            count = rest[0]
                .1
                .parse()
                .map_err(|_| err(line_no, rest[0].0, "count out of range"))?;
            if count == 0 {
                return Err(err(line_no, rest[0].0, "count must be positive"));
            }
            rest = &rest[2..];
        }
        let mut label = None;
        if let Some(name) = rest[0].1.strip_suffix(':') {
            if !valid_name(name) {
                return Err(err(line_no, rest[0].0, format!("invalid monomer name `{name}`")));
            }
            label = Some((name.to_string(), rest[0].0));
            rest = &rest[1..];
        }
        if rest.is_empty() {
            return Err(err(line_no, toks.last().unwrap().0, "monomer has no sites"));
        }
        let mut sites = Vec::new();
        for &(col, tok) in rest {
            match SiteType::parse(tok) {
                Some(s) if valid_name(&s.name) => sites.push(s),
                _ => return Err(err(line_no, col, format!("invalid site `{tok}`"))),
            }
        }
        let m = Monomer::new(sites);
        let existing = monomers.iter().position(|(x, _, _)| *x == m);
        match (&label, existing) {
            (Some((name, col)), _) if by_name.contains_key(name) => {
                return Err(err(line_no, *col, format!("monomer `{name}` declared twice")));
            }
            (_, Some(k)) => {
                let same_label = monomers[k].0.label() == label.as_ref().map(|(n, _)| n.as_str());
                if !same_label {
                    let col = label.as_ref().map_or(rest[0].0, |(_, c)| *c);
                    return Err(err(
                        line_no,
                        col,
                        format!(
                            "sites `{}` already declared as {} on line {}",
                            m.sites_string(),
                            monomers[k].0.display_name(),
                            monomers[k].2
                        ),
                    ));
                }
                monomers[k].1 += count;
            }
            (Some((name, _)), None) => {
                by_name.insert(name.clone(), monomers.len());
                monomers.push((m.with_label(name.clone()), count, line_no));
            }
            (None, None) => monomers.push((m, count, line_no)),
        }
    }

    if monomers.is_empty() {
        return Err(TbnError::EmptyTbn);
    }
    let tbn = Tbn::new(monomers.iter().map(|(m, c, _)| (m.clone(), *c)))?;
    let mut configurations = Vec::new();
    for conf in confs {
        if configurations
            .iter()
            .any(|(n, _): &(String, Configuration)| *n == conf.name)
        {
            return Err(err(
                conf.line,
                conf.name_col,
                format!("configuration `{}` declared twice", conf.name),
            ));
        }
        let mut polymers = Vec::new();
        for members in &conf.polymers {
            let mut counts = vec![0u32; tbn.type_count()];
            for (col, name) in members {
                let k = *by_name
                    .get(name)
                    .ok_or_else(|| err(conf.line, *col, format!("unknown monomer `{name}`")))?;
                let ty = tbn.type_index(&monomers[k].0).expect("declared type");
                counts[ty] += 1;
            }
            polymers.push(Polymer::from_counts(counts).map_err(|e| err(conf.line, conf.name_col, e.to_string()))?);
        }
        let c = Configuration::from_polymers(polymers);
        tbn.validate(&c)
            .map_err(|e| err(conf.line, conf.name_col, format!("configuration `{}`: {e}", conf.name)))?;
        configurations.push((conf.name, c));
    }
    Ok(TbnDocument { tbn, configurations, w })
}

fn parse_conf(line: &str, line_no: usize, toks: &[(usize, &str)]) -> Result<PendingConf> {
    let head = toks
        .get(1)
        .ok_or_else(|| err(line_no, toks[0].0, "expected `conf NAME: {...}`"))?;
    let name = match head.1.split_once(':') {
        Some((n, _)) => n,
        None => return Err(err(line_no, head.0, "expected `:` after the configuration name")),
    };
    if !valid_name(name) {
        return Err(err(line_no, head.0, format!("invalid configuration name `{name}`")));
    }
    // everything after the colon, with character columns
    let colon_col = head.0 + name.chars().count();
    let body_start = line.char_indices().nth(colon_col).map_or(line.len(), |(b, _)| b);
    let body = &line[body_start..];

    let mut polymers = Vec::new();
    let mut current: Option<Vec<(usize, String)>> = None;
    let mut word = String::new();
    let mut word_col = 0;
    let flush = |word: &mut String, word_col: usize, current: &mut Option<Vec<(usize, String)>>| -> Result<()> {
        if word.is_empty() {
            return Ok(());
        }
        match current {
            Some(p) => p.push((word_col, std::mem::take(word))),
            None => return Err(err(line_no, word_col, format!("`{word}` is outside braces"))),
        }
        Ok(())
    };
    for (k, ch) in body.chars().enumerate() {
        let col = colon_col + 1 + k;
        match ch {
            '{' => {
                flush(&mut word, word_col, &mut current)?;
                if current.is_some() {
                    return Err(err(line_no, col, "nested `{`"));
                }
                current = Some(Vec::new());
            }
            '}' => {
                flush(&mut word, word_col, &mut current)?;
                match current.take() {
                    Some(p) if !p.is_empty() => polymers.push(p),
                    Some(_) => return Err(err(line_no, col, "empty polymer")),
                    None => return Err(err(line_no, col, "unmatched `}`")),
                }
            }
            c if c.is_whitespace() => flush(&mut word, word_col, &mut current)?,
            c => {
                if word.is_empty() {
                    word_col = col;
                }
                word.push(c);
            }
        }
    }
    flush(&mut word, word_col, &mut current)?;
    if current.is_some() {
        return Err(err(line_no, line.chars().count().max(1), "unclosed `{`"));
    }
    if polymers.is_empty() {
        return Err(err(line_no, head.0, "configuration has no polymers"));
    }
    Ok(PendingConf {
        line: line_no,
        name: name.to_string(),
        name_col: head.0,
        polymers,
    })
}

/// Labels used when rendering: the monomer label, or `m{k}` for unlabeled types.
fn render_labels(tbn: &Tbn) -> Vec<String> {
    let taken: Vec<&str> = tbn.types().iter().filter_map(|m| m.label()).collect();
    let mut next = 0;
    tbn.types()
        .iter()
        .map(|m| match m.label() {
            Some(l) => l.to_string(),
            None => loop {
                let cand = format!("m{next}");
                next += 1;
                if !taken.contains(&cand.as_str()) {
                    break cand;
                }
            },
        })
        .collect()
}

pub fn render_tbn(doc: &TbnDocument) -> String {
    let tbn = &doc.tbn;
    let need_labels = !doc.configurations.is_empty();
    let labels = render_labels(tbn);
    let mut out = String::new();
    if let Some(w) = doc.w {
        out.push_str(&format!("w = {}\n", w.fraction_string()));
    }
    for (t, m) in tbn.types().iter().enumerate() {
        let count = tbn.counts()[t];
        if count > 1 {
            out.push_str(&format!("{count} x "));
        }
        if m.label().is_some() || need_labels {
            out.push_str(&format!("{}: ", labels[t]));
        }
        out.push_str(&m.sites_string());
        out.push('\n');
    }
    for (name, c) in &doc.configurations {
        out.push_str(&format!("conf {name}:"));
        for p in c.polymers() {
            let members: Vec<&str> = p.members().into_iter().map(|t| labels[t].as_str()).collect();
            out.push_str(&format!(" {{{}}}", members.join(" ")));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{gen_grid, GridSpec};

    const FOUR_MONOMERS: &str = "\
# four monomers
w = 2
A: a b
B: a* b*
C: a
D: b
conf separate: {A} {B} {C} {D}
conf paired: {A B} {C} {D}
";

    #[test]
    fn parses_monomers_and_confs() {
        let doc = parse_tbn(FOUR_MONOMERS).unwrap();
        assert_eq!(doc.tbn.monomer_count(), 4);
        assert_eq!(doc.w, Some(BondStrength::integer(2)));
        let paired = doc.configuration("paired").unwrap();
        assert_eq!(paired.polymer_count(), 3);
        assert!(doc.tbn.is_saturated(paired));
        assert!(!doc.tbn.is_saturated(doc.configuration("separate").unwrap()));
    }

    #[test]
    fn counts_and_unnamed() {
        let doc = parse_tbn("3 x a b*\nb  # trailing\n2 x T: x\n").unwrap();
        assert_eq!(doc.tbn.monomer_count(), 6);
        assert_eq!(doc.tbn.type_count(), 3);
        // a lone integer then `x` is two sites
        let doc = parse_tbn("11 x\n").unwrap();
        assert_eq!(doc.tbn.types()[0].size(), 2);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_tbn("A: a\nconf s: {A} {Q}\n").unwrap_err();
        assert_eq!(
            e,
            TbnError::Parse {
                line: 2,
                column: 14,
                message: "unknown monomer `Q`".into()
            }
        );
        let e = parse_tbn("A: a\nB: a* **\n").unwrap_err();
        assert!(matches!(e, TbnError::Parse { line: 2, column: 7, .. }));
        assert_eq!(parse_tbn("# nothing\n\n"), Err(TbnError::EmptyTbn));
        assert!(matches!(
            parse_tbn("w = 0.5\nA: a\n"),
            Err(TbnError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn non_partitions_are_rejected() {
        let e = parse_tbn("A: a\nB: a*\nconf s: {A}\n").unwrap_err();
        assert!(matches!(e, TbnError::Parse { line: 3, .. }), "{e}");
        let e = parse_tbn("A: a\nB: a*\nconf s: {A B} {B}\n").unwrap_err();
        assert!(matches!(e, TbnError::Parse { line: 3, .. }));
        assert!(parse_tbn("A: a\nconf s: {A\n").is_err());
        assert!(parse_tbn("A: a\nconf s: A\n").is_err());
    }

    #[test]
    fn duplicate_declarations() {
        assert!(parse_tbn("A: a b\nB: b a\n").is_err());
        assert!(parse_tbn("A: a\nA: b\n").is_err());
        assert!(parse_tbn("A: a\nA: a\n").is_err());
        let doc = parse_tbn("a\na\n").unwrap();
        assert_eq!(doc.tbn.monomer_count(), 2);
    }

    #[test]
    fn grid_round_trip() {
        let grid = gen_grid(&GridSpec::single(2)).unwrap();
        let doc = TbnDocument {
            tbn: grid.tbn.clone(),
            configurations: grid.configurations.clone(),
            w: Some(BondStrength::integer(2)),
        };
        let text = render_tbn(&doc);
        assert!(text.contains("G: 11* 12* 21* 22*"), "{text}");
        let back = parse_tbn(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(render_tbn(&back), text);
    }

    #[test]
    fn unlabeled_types_get_names() {
        let doc = parse_tbn("a\na*\nm0: b\n").unwrap();
        let mut doc = doc;
        let whole = doc.tbn.whole();
        doc.configurations.push(("all".into(), whole));
        let back = parse_tbn(&render_tbn(&doc)).unwrap();
        assert_eq!(back.configurations[0].1, doc.configurations[0].1);
    }
}
