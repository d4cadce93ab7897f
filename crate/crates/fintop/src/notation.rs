//! Arrow notation for spaces, maps, and lifting classes.
//!
//! Grammar, with whitespace ignored everywhere:
//!
//! ```text
//! space := "{" [chain ("," chain)*] "}"
//! chain := label (rel label)*
//! rel   := "->" | "<-" | "<->" | "="
//! label := [A-Za-z][A-Za-z0-9']*
//! map   := space "-->" space
//! class := "{" [map ("," map)*] "}" ("^" [lr]+ ["_{<" int "}"])+
//! ```
//!
//! In `{a->b}` the point `a` is open and `b` is closed; `a->b` puts `b` in
//! the closure of `a`. Repeating a label names the same point again, and `=`
//! merges two labels into a single point; writing `->`, `<-`, or `<->`
//! between two labels of one merged point is an error. A map expression
//! sends each domain point to the codomain point that carries one of its
//! labels, and the induced assignment must be monotone.
//!
//! The lexer uses maximal munch (`-->` before `->`, `<->` before `<-`), and
//! every error carries the byte offset it refers to. Errors at end of input
//! point at the last non-whitespace byte.

use std::collections::BTreeSet;

use crate::map::FinMap;
use crate::space::{fresh_label, fresh_labels, FinSpace, PointLabel};
use crate::Side;

/// A parse or elaboration failure at a byte offset of the input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError { offset, message: message.into() }
    }
}

/// One `^l` or `^r` step of a class expression, with an optional bound on
/// the sizes of the spaces searched in that step: `_{<k}` limits them to at
/// most `k - 1` points, stored here as `size_limit = Some(k - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassStep {
    pub side: Side,
    pub size_limit: Option<usize>,
}

/// A parsed class expression: generator maps followed by one or more
/// orthogonal-complement steps.
#[derive(Debug, Clone)]
pub struct ClassExpr {
    pub generators: Vec<FinMap>,
    pub generator_texts: Vec<String>,
    pub steps: Vec<ClassStep>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum TokKind {
    LBrace,
    RBrace,
    Comma,
    To,
    From,
    Both,
    Same,
    MapArrow,
    Caret,
    Underscore,
    Lt,
    Int(usize),
    Label(String),
}

impl TokKind {
    fn describe(&self) -> String {
        match self {
            TokKind::LBrace => "`{`".into(),
            TokKind::RBrace => "`}`".into(),
            TokKind::Comma => "`,`".into(),
            TokKind::To => "`->`".into(),
            TokKind::From => "`<-`".into(),
            TokKind::Both => "`<->`".into(),
            TokKind::Same => "`=`".into(),
            TokKind::MapArrow => "`-->`".into(),
            TokKind::Caret => "`^`".into(),
            TokKind::Underscore => "`_`".into(),
            TokKind::Lt => "`<`".into(),
            TokKind::Int(n) => format!("integer `{n}`"),
            TokKind::Label(s) => format!("label `{s}`"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokKind,
    start: usize,
    end: usize,
}

fn tokenize(input: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let start = i;
        let rest = &input[i..];
        let kind = match bytes[i] {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'{' => {
                i += 1;
                TokKind::LBrace
            }
            b'}' => {
                i += 1;
                TokKind::RBrace
            }
            b',' => {
                i += 1;
                TokKind::Comma
            }
            b'^' => {
                i += 1;
                TokKind::Caret
            }
            b'_' => {
                i += 1;
                TokKind::Underscore
            }
            b'=' => {
                i += 1;
                TokKind::Same
            }
            b'-' => {
                if rest.starts_with("-->") {
                    i += 3;
                    TokKind::MapArrow
                } else if rest.starts_with("->") {
                    i += 2;
                    TokKind::To
                } else {
                    return Err(ParseError::new(
                        start,
                        "unexpected `-`, expected `->` or `-->`",
                    ));
                }
            }
            b'<' => {
                if rest.starts_with("<->") {
                    i += 3;
                    TokKind::Both
                } else if rest.starts_with("<-") {
                    i += 2;
                    TokKind::From
                } else {
                    i += 1;
                    TokKind::Lt
                }
            }
            b'0'..=b'9' => {
                let mut j = i + 1;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let value: usize = input[i..j].parse().map_err(|_| {
                    ParseError::new(start, "integer is too large")
                })?;
                i = j;
                TokKind::Int(value)
            }
            b'A'..=b'Z' | b'a'..=b'z' => {
                let mut j = i + 1;
                while j < bytes.len()
                    && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'\'')
                {
                    j += 1;
                }
                let text = input[i..j].to_string();
                i = j;
                TokKind::Label(text)
            }
            _ => {
                let ch = rest.chars().next().unwrap();
                return Err(ParseError::new(
                    start,
                    format!("unexpected character `{ch}`"),
                ));
            }
        };
        toks.push(Token { kind, start, end: i });
    }
    Ok(toks)
}

/// Byte offset reported for errors at end of input: the last non-whitespace
/// byte, or 0 when there is none.
fn eof_offset(input: &str) -> usize {
    input
        .bytes()
        .enumerate()
        .filter(|(_, b)| !b.is_ascii_whitespace())
        .next_back()
        .map(|(i, _)| i)
        .unwrap_or(0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rel {
    To,
    From,
    Both,
    Same,
}

impl Rel {
    fn symbol(self) -> &'static str {
        match self {
            Rel::To => "->",
            Rel::From => "<-",
            Rel::Both => "<->",
            Rel::Same => "=",
        }
    }
}

#[derive(Debug)]
struct ChainAst {
    labels: Vec<(String, usize)>,
    rels: Vec<(Rel, usize)>,
}

#[derive(Debug)]
struct SpaceAst {
    chains: Vec<ChainAst>,
    start: usize,
    end: usize,
}

struct Parser<'a> {
    input: &'a str,
    toks: Vec<Token>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Result<Self, ParseError> {
        Ok(Parser { input, toks: tokenize(input)?, pos: 0 })
    }

    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn at(&self, kind: &TokKind) -> bool {
        self.peek().is_some_and(|t| t.kind == *kind)
    }

    fn advance(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, kind: &TokKind, what: &str) -> Result<Token, ParseError> {
        match self.advance() {
            Some(t) if t.kind == *kind => Ok(t),
            Some(t) => Err(ParseError::new(
                t.start,
                format!("expected {what}, found {}", t.kind.describe()),
            )),
            None => Err(ParseError::new(
                eof_offset(self.input),
                format!("unexpected end of input, expected {what}"),
            )),
        }
    }

    fn expect_label(&mut self, what: &str) -> Result<(String, usize), ParseError> {
        match self.advance() {
            Some(Token { kind: TokKind::Label(s), start, .. }) => Ok((s, start)),
            Some(t) => Err(ParseError::new(
                t.start,
                format!("expected {what}, found {}", t.kind.describe()),
            )),
            None => Err(ParseError::new(
                eof_offset(self.input),
                format!("unexpected end of input, expected {what}"),
            )),
        }
    }

    fn expect_eof(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(ParseError::new(
                t.start,
                format!("expected end of input, found {}", t.kind.describe()),
            )),
        }
    }

    fn try_rel(&mut self) -> Option<(Rel, usize)> {
        let rel = match self.peek()?.kind {
            TokKind::To => Rel::To,
            TokKind::From => Rel::From,
            TokKind::Both => Rel::Both,
            TokKind::Same => Rel::Same,
            _ => return None,
        };
        let t = self.advance().unwrap();
        Some((rel, t.start))
    }

    fn parse_space_ast(&mut self) -> Result<SpaceAst, ParseError> {
        let open = self.expect(&TokKind::LBrace, "`{`")?;
        let mut chains = Vec::new();
        if self.at(&TokKind::RBrace) {
            let close = self.advance().unwrap();
            return Ok(SpaceAst { chains, start: open.start, end: close.end });
        }
        loop {
            chains.push(self.parse_chain()?);
            if self.at(&TokKind::Comma) {
                self.advance();
                continue;
            }
            let close = self.expect(&TokKind::RBrace, "`,` or `}`")?;
            return Ok(SpaceAst { chains, start: open.start, end: close.end });
        }
    }

    fn parse_chain(&mut self) -> Result<ChainAst, ParseError> {
        let first = self.expect_label("a label")?;
        let mut labels = vec![first];
        let mut rels = Vec::new();
        while let Some(rel) = self.try_rel() {
            rels.push(rel);
            labels.push(self.expect_label("a label")?);
        }
        Ok(ChainAst { labels, rels })
    }

    fn parse_map_ast(&mut self) -> Result<(SpaceAst, SpaceAst, usize), ParseError> {
        let dom = self.parse_space_ast()?;
        let arrow = self.expect(&TokKind::MapArrow, "`-->`")?;
        let cod = self.parse_space_ast()?;
        Ok((dom, cod, arrow.start))
    }

    fn parse_class_ast(&mut self) -> Result<ClassExpr, ParseError> {
        self.expect(&TokKind::LBrace, "`{`")?;
        let mut generators = Vec::new();
        let mut generator_texts = Vec::new();
        if self.at(&TokKind::RBrace) {
            self.advance();
        } else {
            loop {
                let (dom, cod, arrow) = self.parse_map_ast()?;
                generator_texts.push(self.input[dom.start..cod.end].to_string());
                generators.push(elaborate_map(&dom, &cod, arrow)?);
                if self.at(&TokKind::Comma) {
                    self.advance();
                    continue;
                }
                self.expect(&TokKind::RBrace, "`,` or `}`")?;
                break;
            }
        }
        let mut steps = Vec::new();
        self.expect(&TokKind::Caret, "`^`")?;
        loop {
            let (letters, letters_off) = self.expect_label("orthogonal letters `l` or `r`")?;
            let mut group = Vec::new();
            for ch in letters.chars() {
                let side = match ch {
                    'l' => Side::Left,
                    'r' => Side::Right,
                    _ => {
                        return Err(ParseError::new(
                            letters_off,
                            format!("invalid orthogonal letter `{ch}`, expected `l` or `r`"),
                        ))
                    }
                };
                group.push(side);
            }
            let mut size_limit = None;
            if self.at(&TokKind::Underscore) {
                self.advance();
                self.expect(&TokKind::LBrace, "`{`")?;
                self.expect(&TokKind::Lt, "`<`")?;
                let bound_tok = match self.advance() {
                    Some(Token { kind: TokKind::Int(k), start, .. }) => (k, start),
                    Some(t) => {
                        return Err(ParseError::new(
                            t.start,
                            format!("expected an integer, found {}", t.kind.describe()),
                        ))
                    }
                    None => {
                        return Err(ParseError::new(
                            eof_offset(self.input),
                            "unexpected end of input, expected an integer",
                        ))
                    }
                };
                if bound_tok.0 == 0 {
                    return Err(ParseError::new(
                        bound_tok.1,
                        "size bound must be at least 1",
                    ));
                }
                self.expect(&TokKind::RBrace, "`}`")?;
                size_limit = Some(bound_tok.0 - 1);
            }
            steps.extend(group.into_iter().map(|side| ClassStep { side, size_limit }));
            if self.at(&TokKind::Caret) {
                self.advance();
                continue;
            }
            break;
        }
        Ok(ClassExpr { generators, generator_texts, steps })
    }
}

/// Union-find over label occurrences, used to merge `=`-joined labels.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

struct ElaboratedSpace {
    space: FinSpace,
    /// Distinct label names in order of first appearance, with the point
    /// index each names and the byte offset of its first occurrence.
    names: Vec<(String, usize, usize)>,
}

fn elaborate_space(ast: &SpaceAst) -> Result<ElaboratedSpace, ParseError> {
    let mut names: Vec<(String, usize)> = Vec::new();
    let name_id = |name: &str, offset: usize, names: &mut Vec<(String, usize)>| {
        match names.iter().position(|(n, _)| n == name) {
            Some(i) => i,
            None => {
                names.push((name.to_string(), offset));
                names.len() - 1
            }
        }
    };
    let mut chain_ids: Vec<Vec<usize>> = Vec::new();
    for chain in &ast.chains {
        let ids = chain
            .labels
            .iter()
            .map(|(name, off)| name_id(name, *off, &mut names))
            .collect();
        chain_ids.push(ids);
    }
    let mut uf = UnionFind::new(names.len());
    for (chain, ids) in ast.chains.iter().zip(&chain_ids) {
        for (k, (rel, _)) in chain.rels.iter().enumerate() {
            if *rel == Rel::Same {
                uf.union(ids[k], ids[k + 1]);
            }
        }
    }
    // Points in order of first appearance of their earliest label.
    let mut point_of_root: Vec<Option<usize>> = vec![None; names.len()];
    let mut point_tokens: Vec<BTreeSet<String>> = Vec::new();
    let mut point_of_name: Vec<usize> = vec![0; names.len()];
    for id in 0..names.len() {
        let root = uf.find(id);
        let point = match point_of_root[root] {
            Some(p) => p,
            None => {
                let p = point_tokens.len();
                point_of_root[root] = Some(p);
                point_tokens.push(BTreeSet::new());
                p
            }
        };
        point_tokens[point].insert(names[id].0.clone());
        point_of_name[id] = point;
    }
    let mut arrows: Vec<(usize, usize)> = Vec::new();
    for (chain, ids) in ast.chains.iter().zip(&chain_ids) {
        for (k, (rel, rel_off)) in chain.rels.iter().enumerate() {
            let a = point_of_name[ids[k]];
            let b = point_of_name[ids[k + 1]];
            match rel {
                Rel::Same => {}
                _ if a == b => {
                    return Err(ParseError::new(
                        *rel_off,
                        format!(
                            "relation `{}` between `{}` and `{}`, which name the same point",
                            rel.symbol(),
                            chain.labels[k].0,
                            chain.labels[k + 1].0,
                        ),
                    ));
                }
                Rel::To => arrows.push((a, b)),
                Rel::From => arrows.push((b, a)),
                Rel::Both => {
                    arrows.push((a, b));
                    arrows.push((b, a));
                }
            }
        }
    }
    let labels: Vec<PointLabel> = point_tokens
        .into_iter()
        .map(|tokens| PointLabel::from_tokens(tokens).expect("merged points keep their labels"))
        .collect();
    let space = FinSpace::from_arrows(labels, &arrows)
        .map_err(|e| ParseError::new(ast.start, format!("invalid space: {e}")))?;
    let names = names
        .into_iter()
        .enumerate()
        .map(|(id, (name, off))| (name, point_of_name[id], off))
        .collect();
    Ok(ElaboratedSpace { space, names })
}

fn elaborate_map(
    dom_ast: &SpaceAst,
    cod_ast: &SpaceAst,
    arrow_offset: usize,
) -> Result<FinMap, ParseError> {
    let dom = elaborate_space(dom_ast)?;
    let cod = elaborate_space(cod_ast)?;
    let mut assign: Vec<Option<(usize, String)>> = vec![None; dom.space.len()];
    for (name, dpt, off) in &dom.names {
        let Some(cpt) = cod.space.point_named(name) else {
            return Err(ParseError::new(
                *off,
                format!("domain label `{name}` does not appear in the codomain"),
            ));
        };
        match &assign[*dpt] {
            None => assign[*dpt] = Some((cpt, name.clone())),
            Some((prev_cpt, prev_name)) => {
                if *prev_cpt != cpt {
                    return Err(ParseError::new(
                        *off,
                        format!(
                            "labels `{prev_name}` and `{name}` name one domain point \
                             but different codomain points"
                        ),
                    ));
                }
            }
        }
    }
    let assign: Vec<usize> = assign
        .into_iter()
        .map(|a| a.expect("every domain point carries at least one label").0)
        .collect();
    match FinMap::new(dom.space.clone(), cod.space.clone(), assign.clone()) {
        Ok(map) => Ok(map),
        Err(crate::map::MapError::NotMonotone { x, y }) => Err(ParseError::new(
            arrow_offset,
            format!(
                "map is not monotone: `{}` lies under `{}` but their images \
                 `{}` and `{}` are not related",
                dom.space.label(x),
                dom.space.label(y),
                cod.space.label(assign[x]),
                cod.space.label(assign[y]),
            ),
        )),
        Err(e) => Err(ParseError::new(arrow_offset, format!("invalid map: {e}"))),
    }
}

/// Parses a space expression such as `{a->b,c}`.
pub fn parse_space(input: &str) -> Result<FinSpace, ParseError> {
    let mut p = Parser::new(input)?;
    let ast = p.parse_space_ast()?;
    p.expect_eof()?;
    Ok(elaborate_space(&ast)?.space)
}

/// Parses a map expression such as `{a}-->{a->b}`.
pub fn parse_map(input: &str) -> Result<FinMap, ParseError> {
    let mut p = Parser::new(input)?;
    let (dom, cod, arrow) = p.parse_map_ast()?;
    p.expect_eof()?;
    elaborate_map(&dom, &cod, arrow)
}

/// Parses a class expression such as `{ {}-->{o} }^r` or
/// `{ {o}-->{o->c} }^r_{<5}^lr`.
pub fn parse_class_expr(input: &str) -> Result<ClassExpr, ParseError> {
    let mut p = Parser::new(input)?;
    let class = p.parse_class_ast()?;
    p.expect_eof()?;
    Ok(class)
}

fn valid_label(token: &str) -> bool {
    let mut chars = token.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '\'')
}

fn all_labels_valid(space: &FinSpace) -> bool {
    space.labels().iter().all(|l| l.tokens().all(valid_label))
}

/// Renders a space in arrow notation. Points whose labels fit the grammar
/// keep them; otherwise the whole space is relabeled with fresh labels.
/// Parsing the result always gives a homeomorphic space.
pub fn render_space(space: &FinSpace) -> String {
    if all_labels_valid(space) {
        render_valid_space(space)
    } else {
        render_valid_space(&space.with_fresh_labels())
    }
}

fn render_valid_space(space: &FinSpace) -> String {
    let n = space.len();
    if n == 0 {
        return "{}".to_string();
    }
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (x..n)
            .filter(|&y| space.leq(x, y) && space.leq(y, x))
            .collect();
        for &y in &members {
            class_of[y] = classes.len();
        }
        classes.push(members);
    }
    let rep: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let k = classes.len();
    let lt = |a: usize, b: usize| a != b && space.leq(rep[a], rep[b]);
    let disp = |x: usize| space.label(x).to_string();
    let mut chains: Vec<String> = Vec::new();
    for class in &classes {
        if class.len() >= 2 {
            chains.push(
                class.iter().map(|&x| disp(x)).collect::<Vec<_>>().join("<->"),
            );
        }
    }
    let mut has_edge = vec![false; k];
    for a in 0..k {
        for b in 0..k {
            if lt(a, b) && !(0..k).any(|m| lt(a, m) && lt(m, b)) {
                has_edge[a] = true;
                has_edge[b] = true;
                chains.push(format!("{}->{}", disp(rep[a]), disp(rep[b])));
            }
        }
    }
    for (i, class) in classes.iter().enumerate() {
        if class.len() == 1 && !has_edge[i] {
            chains.push(disp(class[0]));
        }
    }
    format!("{{{}}}", chains.join(","))
}

fn with_labels(space: &FinSpace, labels: Vec<PointLabel>) -> FinSpace {
    let n = space.len();
    let leq = (0..n)
        .map(|x| (0..n).map(|y| space.leq(x, y)).collect())
        .collect();
    FinSpace::new(labels, leq).expect("relabeling preserves a valid space")
}

/// Renders a map in arrow notation. When the stored labels already express
/// the assignment they are kept verbatim; otherwise the domain keeps or
/// receives fresh labels and each codomain point is labeled by its fiber,
/// merged with `=`. Parsing the result gives an isomorphic map.
pub fn render_map(map: &FinMap) -> String {
    let dom = map.dom();
    let cod = map.cod();
    let conformant = all_labels_valid(dom)
        && all_labels_valid(cod)
        && (0..dom.len()).all(|d| {
            let c = map.apply(d);
            dom.label(d).tokens().all(|t| cod.label(c).contains(t))
        });
    if conformant {
        return format!("{}-->{}", render_valid_space(dom), render_valid_space(cod));
    }
    let dom_labels: Vec<PointLabel> = if all_labels_valid(dom) {
        dom.labels().to_vec()
    } else {
        fresh_labels(dom.len())
    };
    let mut used: BTreeSet<String> = dom_labels
        .iter()
        .flat_map(|l| l.tokens().map(str::to_string))
        .collect();
    let mut fresh_i = 0;
    let mut cod_labels: Vec<PointLabel> = Vec::with_capacity(cod.len());
    for c in 0..cod.len() {
        let fiber: Vec<usize> = (0..dom.len()).filter(|&d| map.apply(d) == c).collect();
        if fiber.is_empty() {
            let primary = cod.label(c).primary();
            let mut cand = if valid_label(primary) {
                primary.to_string()
            } else {
                loop {
                    let t = fresh_label(fresh_i);
                    fresh_i += 1;
                    if !used.contains(&t) {
                        break t;
                    }
                }
            };
            while used.contains(&cand) {
                cand.push('\'');
            }
            used.insert(cand.clone());
            cod_labels.push(PointLabel::new(cand));
        } else {
            let mut merged = dom_labels[fiber[0]].clone();
            for &d in &fiber[1..] {
                merged = merged.merged_with(&dom_labels[d]);
            }
            cod_labels.push(merged);
        }
    }
    let rendered = format!(
        "{}-->{}",
        render_valid_space(&with_labels(dom, dom_labels)),
        render_valid_space(&with_labels(cod, cod_labels)),
    );
    debug_assert!(
        parse_map(&rendered)
            .map(|m| crate::canon::map_key(&m) == crate::canon::map_key(map))
            .unwrap_or(false),
        "rendered map `{rendered}` must parse back to an isomorphic map",
    );
    rendered
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::{map_key, space_key};
    use crate::space::PointSet;

    #[test]
    fn parses_empty_and_singleton() {
        assert_eq!(parse_space("{}").unwrap().len(), 0);
        let p = parse_space("{x}").unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.label(0).primary(), "x");
    }

    #[test]
    fn arrow_orientation_open_to_closed() {
        let s = parse_space("{o->c}").unwrap();
        let o = s.point_named("o").unwrap();
        let c = s.point_named("c").unwrap();
        assert!(s.leq(o, c));
        assert!(!s.leq(c, o));
        let status_o = s.subset_status(PointSet::singleton(o)).unwrap();
        assert!(status_o.open && !status_o.closed);
        let status_c = s.subset_status(PointSet::singleton(c)).unwrap();
        assert!(status_c.closed && !status_c.open);
    }

    #[test]
    fn whitespace_is_ignored() {
        let a = parse_space("{a->b,c}").unwrap();
        let b = parse_space(" { a -> b , c } ").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn repeated_labels_name_one_point() {
        let s = parse_space("{a->b,b->c,a->c}").unwrap();
        assert_eq!(s.len(), 3);
        let s2 = parse_space("{u->v,u->w}").unwrap();
        assert_eq!(s2.len(), 3);
    }

    #[test]
    fn merged_labels_form_one_point() {
        let s = parse_space("{a=b}").unwrap();
        assert_eq!(s.len(), 1);
        assert!(s.label(0).contains("a") && s.label(0).contains("b"));
        let t = parse_space("{u->a=b<-v}").unwrap();
        assert_eq!(t.len(), 3);
    }

    #[test]
    fn back_and_both_arrows() {
        let s = parse_space("{a<-b}").unwrap();
        let (a, b) = (s.point_named("a").unwrap(), s.point_named("b").unwrap());
        assert!(s.leq(b, a) && !s.leq(a, b));
        let t = parse_space("{a<->b}").unwrap();
        let (a, b) = (t.point_named("a").unwrap(), t.point_named("b").unwrap());
        assert!(t.leq(a, b) && t.leq(b, a));
    }

    #[test]
    fn transitivity_is_implied() {
        let s = parse_space("{a->b->c}").unwrap();
        let (a, c) = (s.point_named("a").unwrap(), s.point_named("c").unwrap());
        assert!(s.leq(a, c));
    }

    #[test]
    fn relation_within_a_merged_point_is_rejected() {
        let err = parse_space("{a->b,a=b}").unwrap_err();
        assert_eq!(err.offset, 2);
        let err = parse_space("{a=b,a<->b}").unwrap_err();
        assert_eq!(err.offset, 6);
        let err = parse_space("{a->a}").unwrap_err();
        assert_eq!(err.offset, 2);
    }

    #[test]
    fn eof_errors_point_at_last_content_byte() {
        let err = parse_space("{a->").unwrap_err();
        assert_eq!(err.offset, 3);
        let err = parse_space("{a->  ").unwrap_err();
        assert_eq!(err.offset, 3);
        let err = parse_space("").unwrap_err();
        assert_eq!(err.offset, 0);
        let err = parse_space("{x").unwrap_err();
        assert_eq!(err.offset, 1);
    }

    #[test]
    fn stray_tokens_are_located() {
        let err = parse_space("{a b}").unwrap_err();
        assert_eq!(err.offset, 3);
        let err = parse_space("{a}x").unwrap_err();
        assert_eq!(err.offset, 3);
        let err = parse_space("{a-b}").unwrap_err();
        assert_eq!(err.offset, 2);
    }

    #[test]
    fn map_assignment_follows_labels() {
        let m = parse_map("{a}-->{a->b}").unwrap();
        assert_eq!(m.dom().len(), 1);
        assert_eq!(m.cod().len(), 2);
        let a_cod = m.cod().point_named("a").unwrap();
        assert_eq!(m.apply(0), a_cod);
    }

    #[test]
    fn map_merging_collapses_points() {
        let m = parse_map("{a<->b}-->{a=b}").unwrap();
        assert_eq!(m.cod().len(), 1);
        assert_eq!(m.assign(), &[0, 0]);
        let m2 = parse_map("{a,b}-->{a=b}").unwrap();
        assert_eq!(m2.assign(), &[0, 0]);
    }

    #[test]
    fn unmatched_domain_label_is_rejected() {
        let err = parse_map("{o}-->{c}").unwrap_err();
        assert_eq!(err.offset, 1);
        assert!(err.message.contains('o'));
    }

    #[test]
    fn non_monotone_map_is_rejected() {
        let err = parse_map("{a->b}-->{a,b}").unwrap_err();
        assert_eq!(err.offset, 6);
        assert!(err.message.contains("monotone"));
    }

    #[test]
    fn inconsistent_merge_is_rejected() {
        let err = parse_map("{a=b}-->{a,b}").unwrap_err();
        assert!(err.message.contains("different codomain points"));
    }

    #[test]
    fn empty_domain_map_parses() {
        let m = parse_map("{}-->{o}").unwrap();
        assert!(m.dom().is_empty());
        assert_eq!(m.cod().len(), 1);
    }

    #[test]
    fn class_expression_steps_and_limits() {
        let c = parse_class_expr("{ {}-->{o} }^r").unwrap();
        assert_eq!(c.generators.len(), 1);
        assert_eq!(c.generator_texts, vec!["{}-->{o}".to_string()]);
        assert_eq!(c.steps, vec![ClassStep { side: Side::Right, size_limit: None }]);

        let c = parse_class_expr("{ {o}-->{o->c} }^r_{<5}^lr").unwrap();
        assert_eq!(
            c.steps,
            vec![
                ClassStep { side: Side::Right, size_limit: Some(4) },
                ClassStep { side: Side::Left, size_limit: None },
                ClassStep { side: Side::Right, size_limit: None },
            ]
        );

        let c = parse_class_expr("{ {a}-->{a,b}, {}-->{o} }^lr_{<3}").unwrap();
        assert_eq!(c.generators.len(), 2);
        assert_eq!(
            c.steps,
            vec![
                ClassStep { side: Side::Left, size_limit: Some(2) },
                ClassStep { side: Side::Right, size_limit: Some(2) },
            ]
        );
    }

    #[test]
    fn class_expression_requires_an_operation() {
        let err = parse_class_expr("{ {}-->{o} }").unwrap_err();
        assert_eq!(err.offset, 11);
        let err = parse_class_expr("{ {}-->{o} }^q").unwrap_err();
        assert!(err.message.contains("invalid orthogonal letter"));
    }

    #[test]
    fn render_round_trips_up_to_homeomorphism() {
        for text in [
            "{}",
            "{a}",
            "{a,b}",
            "{a->b}",
            "{a<->b}",
            "{a=b}",
            "{a->b->c}",
            "{a->b,c}",
            "{x->a<-y}",
            "{a<->b<-c}",
            "{a<->b->c}",
            "{u->a=b<-v}",
            "{a<-v->x<-w->b}",
        ] {
            let s = parse_space(text).unwrap();
            let rendered = render_space(&s);
            let back = parse_space(&rendered).unwrap();
            assert_eq!(space_key(&s), space_key(&back), "render of `{text}` gave `{rendered}`");
        }
    }

    #[test]
    fn render_relabels_product_style_tokens() {
        let a = parse_space("{a->b}").unwrap();
        let b = parse_space("{x}").unwrap();
        let prod = a.product(&b).space;
        let rendered = render_space(&prod);
        let back = parse_space(&rendered).unwrap();
        assert_eq!(space_key(&prod), space_key(&back));
    }

    #[test]
    fn render_map_round_trips() {
        for text in [
            "{}-->{o}",
            "{o}-->{o->c}",
            "{c}-->{o->c}",
            "{a<->b}-->{a=b}",
            "{o->c}-->{o=c}",
            "{a}-->{a<->b}",
            "{a<->b<-c}-->{a<->b=c}",
            "{u->a,b<-v}-->{u->a=b<-v}",
        ] {
            let m = parse_map(text).unwrap();
            let rendered = render_map(&m);
            let back = parse_map(&rendered).unwrap();
            assert_eq!(map_key(&m), map_key(&back), "render of `{text}` gave `{rendered}`");
        }
    }

    #[test]
    fn render_map_labels_codomain_by_fibers() {
        let dom = FinSpace::discrete(["a", "b"]);
        let collapse = FinMap::to_point(&dom, "p");
        let rendered = render_map(&collapse);
        let back = parse_map(&rendered).unwrap();
        assert_eq!(map_key(&collapse), map_key(&back));
        assert!(rendered.contains('='));
    }

    #[test]
    fn render_map_keeps_untouched_codomain_points() {
        let m = parse_map("{a}-->{a->b}").unwrap();
        assert_eq!(render_map(&m), "{a}-->{a->b}");
    }
}
