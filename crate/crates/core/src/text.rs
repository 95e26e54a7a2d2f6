//! Text formats: `< sources ; targets ; internals | relators >` for
//! presentations, and `id, swap, cop, cou, mul, uni, ant, int, coi` with
//! `;` (diagrammatic composition), `*` (tensor) and parentheses for terms.
//! Words use identifiers with `'` or `^-1` for inverses and integer powers.

use crate::error::{Error, Result};
use crate::pres::RelPresentation;
use crate::term::{tensor_t, then, GenSym, HopfTerm};
use crate::words::{Generator, Letter, Sign, Word};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    Lt,
    Gt,
    Semi,
    Pipe,
    Comma,
    LParen,
    RParen,
    Star,
    Caret,
    Prime,
    Minus,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let (l, c) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let ch = chars.next().unwrap();
            if ch == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            ch
        };
        if ch.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if ch.is_ascii_digit() {
            let mut value = 0u64;
            while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                value = value * 10 + bump(&mut chars).to_digit(10).unwrap() as u64;
            }
            out.push(Spanned { tok: Tok::Int(value), line: l, col: c });
            continue;
        }
        if ch.is_alphabetic() || ch == '_' {
            let mut name = String::new();
            while chars.peek().is_some_and(|c| c.is_alphanumeric() || *c == '_') {
                name.push(bump(&mut chars));
            }
            out.push(Spanned { tok: Tok::Ident(name), line: l, col: c });
            continue;
        }
        let tok = match ch {
            '<' => Tok::Lt,
            '>' => Tok::Gt,
            ';' => Tok::Semi,
            '|' => Tok::Pipe,
            ',' => Tok::Comma,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '\'' => Tok::Prime,
            '-' => Tok::Minus,
            other => {
                return Err(Error::Parse {
                    line: l,
                    col: c,
                    msg: format!("unexpected character '{other}'"),
                })
            }
        };
        bump(&mut chars);
        out.push(Spanned { tok, line: l, col: c });
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> (usize, usize) {
        match self.toks.get(self.pos.min(self.toks.len().saturating_sub(1))) {
            Some(s) => (s.line, s.col),
            None => (1, 1),
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, col) = self.here();
        Err(Error::Parse { line, col, msg: msg.into() })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        match self.next() {
            Some(s) if s.tok == tok => Ok(()),
            Some(s) => Err(Error::Parse {
                line: s.line,
                col: s.col,
                msg: format!("expected {what}, found {:?}", s.tok),
            }),
            None => self.err(format!("expected {what}, found end of input")),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }
}

fn is_section_sep(tok: &Tok) -> bool {
    matches!(tok, Tok::Semi | Tok::Pipe)
}

/// `< a1, a2 ; b1 ; c1 | w1, w2 >`; the three separators may each be `;` or `|`.
pub fn parse_presentation(text: &str) -> Result<RelPresentation> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let pres = parse_presentation_inner(&mut p)?;
    if !p.at_end() {
        return p.err("trailing input after presentation");
    }
    Ok(pres)
}

fn parse_name_list(p: &mut Parser) -> Result<Vec<String>> {
    let mut names = Vec::new();
    loop {
        match p.peek().map(|s| s.tok.clone()) {
            Some(Tok::Ident(name)) => {
                p.next();
                names.push(name);
                match p.peek().map(|s| &s.tok) {
                    Some(Tok::Comma) => {
                        p.next();
                    }
                    _ => break,
                }
            }
            _ => break,
        }
    }
    Ok(names)
}

fn parse_presentation_inner(p: &mut Parser) -> Result<RelPresentation> {
    p.expect(Tok::Lt, "'<'")?;
    let sources = parse_name_list(p)?;
    match p.next() {
        Some(s) if is_section_sep(&s.tok) => {}
        _ => return p.err("expected ';' or '|' after source generators"),
    }
    let targets = parse_name_list(p)?;
    match p.next() {
        Some(s) if is_section_sep(&s.tok) => {}
        _ => return p.err("expected ';' or '|' after target generators"),
    }
    let internals = parse_name_list(p)?;
    match p.next() {
        Some(s) if is_section_sep(&s.tok) => {}
        _ => return p.err("expected ';' or '|' after internal generators"),
    }

    let mut table: HashMap<String, Generator> = HashMap::new();
    for (i, name) in sources.iter().enumerate() {
        if table.insert(name.clone(), Generator::Source(i as u32 + 1)).is_some() {
            return p.err(format!("duplicate generator name '{name}'"));
        }
    }
    for (i, name) in targets.iter().enumerate() {
        if table.insert(name.clone(), Generator::Target(i as u32 + 1)).is_some() {
            return p.err(format!("duplicate generator name '{name}'"));
        }
    }
    for (i, name) in internals.iter().enumerate() {
        if table.insert(name.clone(), Generator::Internal(i as u32 + 1)).is_some() {
            return p.err(format!("duplicate generator name '{name}'"));
        }
    }

    let mut relators = Vec::new();
    if !matches!(p.peek().map(|s| &s.tok), Some(Tok::Gt)) {
        loop {
            relators.push(parse_word(p, &table)?);
            match p.peek().map(|s| &s.tok) {
                Some(Tok::Comma) => {
                    p.next();
                }
                _ => break,
            }
        }
    }
    p.expect(Tok::Gt, "'>'")?;
    RelPresentation::new(sources, targets, internals.len() as u32, relators)
}

/// A word: sequence of `name`, `name'`, `name^k`, `name^-k`; `1` is the
/// empty word.
fn parse_word(p: &mut Parser, table: &HashMap<String, Generator>) -> Result<Word> {
    let mut letters = Vec::new();
    let mut any = false;
    loop {
        match p.peek().map(|s| s.tok.clone()) {
            Some(Tok::Int(1)) => {
                p.next();
                any = true;
            }
            Some(Tok::Ident(name)) => {
                let span = p.next().unwrap();
                any = true;
                let gen = *table.get(&name).ok_or(Error::Parse {
                    line: span.line,
                    col: span.col,
                    msg: format!("undeclared generator '{name}'"),
                })?;
                let (sign, count) = match p.peek().map(|s| s.tok.clone()) {
                    Some(Tok::Prime) => {
                        p.next();
                        (Sign::Minus, 1u64)
                    }
                    Some(Tok::Caret) => {
                        p.next();
                        let negative = if matches!(p.peek().map(|s| &s.tok), Some(Tok::Minus)) {
                            p.next();
                            true
                        } else {
                            false
                        };
                        match p.next() {
                            Some(Spanned { tok: Tok::Int(k), .. }) if k > 0 => {
                                (if negative { Sign::Minus } else { Sign::Plus }, k)
                            }
                            _ => return p.err("expected a nonzero exponent after '^'"),
                        }
                    }
                    _ => (Sign::Plus, 1),
                };
                for _ in 0..count {
                    letters.push(Letter::new(gen, sign));
                }
            }
            _ => break,
        }
    }
    if !any {
        return p.err("expected a word (use '1' for the empty word)");
    }
    Ok(Word(letters))
}

/// Resolve display names: stored source/target names deduplicated, internal
/// generators named c1..ck avoiding collisions.
pub fn display_names(p: &RelPresentation) -> (Vec<String>, Vec<String>, Vec<String>) {
    let mut used: HashMap<String, usize> = HashMap::new();
    let mut uniq = |name: &str| -> String {
        let mut candidate = name.to_string();
        while let Some(n) = used.get(&candidate) {
            let next = format!("{name}_{}", n + 1);
            *used.get_mut(&candidate).unwrap() += 1;
            candidate = next;
        }
        used.insert(candidate.clone(), 1);
        candidate
    };
    let sources: Vec<String> = p.source_names.iter().map(|n| uniq(n)).collect();
    let targets: Vec<String> = p.target_names.iter().map(|n| uniq(n)).collect();
    let mut internals = Vec::new();
    let mut i = 1;
    while internals.len() < p.internals as usize {
        let candidate = format!("c{i}");
        i += 1;
        if !used.contains_key(&candidate) {
            used.insert(candidate.clone(), 1);
            internals.push(candidate);
        }
    }
    (sources, targets, internals)
}

fn print_word(w: &Word, sources: &[String], targets: &[String], internals: &[String]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    let name = |l: &Letter| -> &str {
        match l.gen {
            Generator::Source(i) => &sources[i as usize - 1],
            Generator::Target(i) => &targets[i as usize - 1],
            Generator::Internal(i) => &internals[i as usize - 1],
        }
    };
    let mut parts: Vec<String> = Vec::new();
    let mut run: Option<(Letter, u64)> = None;
    let flush = |run: &mut Option<(Letter, u64)>, parts: &mut Vec<String>| {
        if let Some((l, count)) = run.take() {
            let base = name(&l).to_string();
            match (l.sign, count) {
                (Sign::Plus, 1) => parts.push(base),
                (Sign::Plus, k) => parts.push(format!("{base}^{k}")),
                (Sign::Minus, 1) => parts.push(format!("{base}^-1")),
                (Sign::Minus, k) => parts.push(format!("{base}^-{k}")),
            }
        }
    };
    for &l in w.iter() {
        match &mut run {
            Some((prev, count)) if *prev == l => *count += 1,
            _ => {
                flush(&mut run, &mut parts);
                run = Some((l, 1));
            }
        }
    }
    flush(&mut run, &mut parts);
    parts.join(" ")
}

pub fn print_presentation(p: &RelPresentation) -> String {
    let (sources, targets, internals) = display_names(p);
    let relators: Vec<String> =
        p.relators.iter().map(|w| print_word(w, &sources, &targets, &internals)).collect();
    format!(
        "< {} ; {} ; {} | {} >",
        sources.join(", "),
        targets.join(", "),
        internals.join(", "),
        relators.join(", ")
    )
}

fn gen_by_name(name: &str) -> Option<GenSym> {
    GenSym::ALL.into_iter().find(|g| g.name() == name)
}

/// `term := tensor (';' tensor)*`, `tensor := atom ('*' atom)*`,
/// `atom := generator | id0 | '(' term ')'`. Arity bookkeeping is enforced
/// with positions in the error.
pub fn parse_term(text: &str) -> Result<HopfTerm> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let t = parse_term_compose(&mut p)?;
    if !p.at_end() {
        return p.err("trailing input after term");
    }
    Ok(t)
}

fn parse_term_compose(p: &mut Parser) -> Result<HopfTerm> {
    let mut acc = parse_term_tensor(p)?;
    while matches!(p.peek().map(|s| &s.tok), Some(Tok::Semi)) {
        let (line, col) = p.here();
        p.next();
        let rhs = parse_term_tensor(p)?;
        acc = then(&acc, &rhs).map_err(|e| Error::Parse {
            line,
            col,
            msg: format!("composition arity mismatch: {e}"),
        })?;
    }
    Ok(acc)
}

fn parse_term_tensor(p: &mut Parser) -> Result<HopfTerm> {
    let mut acc = parse_term_atom(p)?;
    while matches!(p.peek().map(|s| &s.tok), Some(Tok::Star)) {
        p.next();
        let rhs = parse_term_atom(p)?;
        acc = tensor_t(&acc, &rhs);
    }
    Ok(acc)
}

fn parse_term_atom(p: &mut Parser) -> Result<HopfTerm> {
    match p.next() {
        Some(Spanned { tok: Tok::LParen, .. }) => {
            let t = parse_term_compose(p)?;
            p.expect(Tok::RParen, "')'")?;
            Ok(t)
        }
        Some(Spanned { tok: Tok::Ident(name), line, col }) => {
            if name == "id0" {
                return Ok(HopfTerm::identity(0));
            }
            match gen_by_name(&name) {
                Some(g) => Ok(HopfTerm::generator(g)),
                None => Err(Error::Parse {
                    line,
                    col,
                    msg: format!(
                        "unknown generator '{name}' (expected id, swap, cop, cou, mul, uni, ant, int, coi)"
                    ),
                }),
            }
        }
        Some(s) => Err(Error::Parse {
            line: s.line,
            col: s.col,
            msg: format!("expected a term, found {:?}", s.tok),
        }),
        None => p.err("expected a term, found end of input"),
    }
}

pub fn print_term(t: &HopfTerm) -> String {
    if t.slices().is_empty() {
        return if t.arity_in() == 0 {
            "id0".to_string()
        } else {
            vec!["id"; t.arity_in()].join(" * ")
        };
    }
    t.slices()
        .iter()
        .map(|layer| {
            if layer.is_empty() {
                "id0".to_string()
            } else {
                layer.iter().map(|g| g.name()).collect::<Vec<_>>().join(" * ")
            }
        })
        .collect::<Vec<_>>()
        .join(" ; ")
}
