//! Readers for every object grammar the CLI accepts.  Each text grammar
//! mirrors the engine's display form exactly, so parsing a rendered object
//! gives the object back; the JSON readers accept the schema produced by
//! [`crate::render`].

use std::str::FromStr;

use anyhow::{anyhow, bail, Result};
use serde_json::Value;

use rdeco::bar::BarWord;
use rdeco::cycle::{Coordinate, Cycle, Monomial};
use rdeco::iterint::{IArg, ISymbol};
use rdeco::polygon::{RDecoPolygon, Side};
use rdeco::tree::{RDecoTree, TreeNode, VertexType};
use rdeco::{Atom, AtomKind, LinComb, Scalar, TensorWord, WedgeWord};

/// Classify a bare name: digit strings are numeric constants, `t`/`u`/`v`/`w`
/// with an optional index are cycle parameters, `s<digits>` are simplicial
/// variables, everything else is a named constant.
pub fn atom(tok: &str) -> Result<Atom> {
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if tok.is_empty() {
        bail!("empty name");
    }
    if digits(tok) || (tok.starts_with('-') && digits(&tok[1..])) {
        let v = Scalar::from_str(tok).map_err(|e| anyhow!("bad numeral `{tok}`: {e}"))?;
        return Ok(Atom::number(v));
    }
    let head = tok.as_bytes()[0];
    if matches!(head, b't' | b'u' | b'v' | b'w') && (tok.len() == 1 || digits(&tok[1..])) {
        return Ok(Atom::parameter_named(tok));
    }
    if head == b's' && tok.len() > 1 && digits(&tok[1..]) {
        return Ok(Atom::topological(tok[1..].parse()?));
    }
    if !tok.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'\'') {
        bail!("name `{tok}` has characters outside [A-Za-z0-9_']");
    }
    Ok(Atom::constant(tok))
}

// ---------------------------------------------------------------- trees --

struct Scan<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Scan<'a> {
    fn new(src: &'a str) -> Self {
        Scan { src: src.as_bytes(), pos: 0 }
    }

    fn ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if !self.eat(c) {
            bail!("expected `{}` at byte {}", c as char, self.pos);
        }
        Ok(())
    }

    fn token(&mut self) -> Result<&'a str> {
        let start = self.pos;
        while let Some(b) = self.peek() {
            if b.is_ascii_whitespace() || matches!(b, b'(' | b')' | b'~') {
                break;
            }
            self.pos += 1;
        }
        if self.pos == start {
            bail!("expected a name at byte {start}");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii split"))
    }

    fn done(&mut self) -> bool {
        self.ws();
        self.pos == self.src.len()
    }
}

fn vtype(second: bool) -> VertexType {
    if second {
        VertexType::Second
    } else {
        VertexType::First
    }
}

fn tree_node(s: &mut Scan) -> Result<TreeNode> {
    s.ws();
    let vt = vtype(s.eat(b'~'));
    match s.peek() {
        Some(b'(') => {
            s.pos += 1;
            let mut children = Vec::new();
            loop {
                s.ws();
                if s.eat(b')') {
                    break;
                }
                if s.peek().is_none() {
                    bail!("unclosed `(`");
                }
                children.push(tree_node(s)?);
            }
            Ok(TreeNode::Internal { vtype: vt, children })
        }
        Some(b'_') => {
            s.pos += 1;
            Ok(TreeNode::Leaf { dec: None, vtype: vt })
        }
        Some(_) => Ok(TreeNode::Leaf { dec: Some(atom(s.token()?)?), vtype: vt }),
        None => bail!("unexpected end of tree"),
    }
}

/// `(root top)`: root decoration, then one vertex, either a leaf name, `_`,
/// or `(child child ...)`.  `~` before a name or `(` marks the second kind.
pub fn tree(src: &str) -> Result<RDecoTree> {
    let mut s = Scan::new(src);
    s.ws();
    s.expect(b'(')?;
    s.ws();
    let second = s.eat(b'~');
    let root = atom(s.token()?)?;
    let top = tree_node(&mut s)?;
    s.ws();
    s.expect(b')')?;
    if !s.done() {
        bail!("trailing input after the tree");
    }
    let t = RDecoTree::with_root_type(root, vtype(second), top);
    if !t.well_formed() {
        bail!("every branching vertex needs at least two children");
    }
    Ok(t)
}

// ------------------------------------------------------------- polygons --

/// `[d1,d2,...,dn]`, root side last; `_` for an undecorated side, a leading
/// `~name` for the marked first side.
pub fn polygon(src: &str) -> Result<RDecoPolygon> {
    let inner = strip_brackets(src, "polygon")?;
    let mut sides = Vec::new();
    for raw in inner.split(',') {
        let tok = raw.trim();
        sides.push(if tok == "_" {
            Side::Blank
        } else if let Some(rest) = tok.strip_prefix('~') {
            Side::Second(atom(rest.trim())?)
        } else {
            Side::Dec(atom(tok)?)
        });
    }
    RDecoPolygon::new(sides).map_err(|e| anyhow!("{e}"))
}

fn strip_brackets<'a>(src: &'a str, what: &str) -> Result<&'a str> {
    src.trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| anyhow!("a {what} literal is written in `[...]`"))
}

// --------------------------------------------------------------- cycles --

fn monomial(src: &str) -> Result<Monomial> {
    let t = src.trim();
    if t.is_empty() {
        bail!("empty monomial");
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => {
            let d = d.trim();
            let d = d.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(d);
            (n, Some(d))
        }
        None => (t, None),
    };
    let mut m = Monomial::one();
    for (part, orient) in [(Some(num), 1i64), (den, -1)] {
        let Some(part) = part else { continue };
        for f in part.split('*') {
            let f = f.trim();
            let (name, exp) = match f.split_once('^') {
                Some((n, e)) => {
                    (n.trim(), e.trim().parse::<i64>().map_err(|_| anyhow!("bad power `{e}`"))?)
                }
                None => (f, 1),
            };
            if name == "1" && exp == 1 {
                continue;
            }
            m = m.times(&atom(name)?, orient * exp);
        }
    }
    Ok(m)
}

fn coordinate(src: &str) -> Result<Coordinate> {
    let t = src.trim();
    if let Some(rest) = t.strip_prefix("1-") {
        return Ok(Coordinate::one_minus(monomial(rest)?));
    }
    Ok(Coordinate::plain(monomial(t)?))
}

/// `[c1, c2, ...]` with coordinates `1-<mon>` or `<mon>`; a monomial is a
/// `*`-product of powered names over at most one `/`.  An ordered simplicial
/// chain may follow: `... with s0<=s1<=1`.  The literal is normalised, so
/// the result is a one-term sum with sign, or zero.
pub fn cycles(src: &str) -> Result<LinComb<Cycle>> {
    let t = src.trim();
    let (head, chain_part) = match t.split_once(" with ") {
        Some((h, c)) => (h, Some(c)),
        None => (t, None),
    };
    let inner = strip_brackets(head, "cycle")?;
    let mut coords = Vec::new();
    if !inner.trim().is_empty() {
        for raw in inner.split(',') {
            coords.push(coordinate(raw)?);
        }
    }
    let mut chain = Vec::new();
    if let Some(cp) = chain_part {
        for raw in cp.split("<=") {
            chain.push(atom(raw.trim())?);
        }
    }
    Ok(Cycle::normal_form(coords, chain))
}

// ------------------------------------------------------------ bar words --

/// `[p1|p2|...]`: letters separated by `|`, each a polygon or a ` ^ `-join
/// of polygons; `1` (or `[]`) is the empty word.
pub fn bar_word(src: &str) -> Result<BarWord> {
    let t = src.trim();
    if t == "1" {
        return Ok(TensorWord::unit());
    }
    let inner = strip_brackets(t, "bar word")?;
    let mut letters = Vec::new();
    if !inner.trim().is_empty() {
        for piece in split_outside_brackets(inner, b'|') {
            let mut polys = Vec::new();
            for lp in split_outside_brackets(&piece, b'^') {
                polys.push(polygon(&lp)?);
            }
            letters.push(wedge_letter(polys)?);
        }
    }
    Ok(TensorWord::new(letters))
}

/// A letter must already be in canonical order; reject shuffled or repeated
/// factors rather than silently reordering under the reader's feet.
fn wedge_letter(polys: Vec<RDecoPolygon>) -> Result<WedgeWord<RDecoPolygon>> {
    if polys.len() == 1 {
        return Ok(WedgeWord::single(polys.into_iter().next().unwrap()));
    }
    let lc = WedgeWord::normalize(polys);
    let mut terms = lc.iter();
    match (terms.next(), terms.next()) {
        (Some((w, k)), None) if k.clone() == Scalar::one() => Ok(w.clone()),
        _ => bail!("letter factors must be distinct and sorted"),
    }
}

fn split_outside_brackets(s: &str, sep: u8) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for &b in s.as_bytes() {
        match b {
            b'[' | b'(' => {
                depth += 1;
                cur.push(b as char);
            }
            b']' | b')' => {
                depth -= 1;
                cur.push(b as char);
            }
            _ if b == sep && depth == 0 => out.push(std::mem::take(&mut cur)),
            _ => cur.push(b as char),
        }
    }
    out.push(cur);
    out
}

// -------------------------------------------------------------- symbols --

/// `I(a0; a1, ..., an; b)`; `0` is the zero base point, the middle may be
/// empty.
pub fn symbol(src: &str) -> Result<ISymbol> {
    let t = src.trim();
    let inner = t
        .strip_prefix("I(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| anyhow!("a symbol literal is written `I(a0; a1, ..; b)`"))?;
    let parts: Vec<&str> = inner.split(';').collect();
    if parts.len() != 3 {
        bail!("a symbol has exactly two `;` separators");
    }
    let middle_raw = parts[1].trim();
    let middle = if middle_raw.is_empty() {
        Vec::new()
    } else {
        middle_raw.split(',').map(iarg).collect::<Result<Vec<_>>>()?
    };
    Ok(ISymbol::new(iarg(parts[0])?, middle, iarg(parts[2])?))
}

fn iarg(src: &str) -> Result<IArg> {
    let t = src.trim();
    if t == "0" {
        Ok(IArg::Zero)
    } else {
        Ok(IArg::At(atom(t)?))
    }
}

// ----------------------------------------------------------------- JSON --

pub fn looks_like_json(src: &str) -> bool {
    src.trim_start().starts_with('{')
}

/// Text or JSON, decided by the leading character.
pub fn tree_any(src: &str) -> Result<RDecoTree> {
    if looks_like_json(src) {
        tree_json(&parse_value(src)?)
    } else {
        tree(src)
    }
}

pub fn polygon_any(src: &str) -> Result<RDecoPolygon> {
    if looks_like_json(src) {
        polygon_json(&parse_value(src)?)
    } else {
        polygon(src)
    }
}

pub fn cycles_any(src: &str) -> Result<LinComb<Cycle>> {
    if looks_like_json(src) {
        let (coords, chain) = cycle_json(&parse_value(src)?)?;
        Ok(Cycle::normal_form(coords, chain))
    } else {
        cycles(src)
    }
}

pub fn bar_word_any(src: &str) -> Result<BarWord> {
    if looks_like_json(src) {
        bar_word_json(&parse_value(src)?)
    } else {
        bar_word(src)
    }
}

pub fn symbol_any(src: &str) -> Result<ISymbol> {
    if looks_like_json(src) {
        symbol_json(&parse_value(src)?)
    } else {
        symbol(src)
    }
}

fn parse_value(src: &str) -> Result<Value> {
    serde_json::from_str(src).map_err(|e| anyhow!("invalid JSON: {e}"))
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| anyhow!("missing field `{key}`"))
}

fn data<'a>(v: &'a Value, kind: &str) -> Result<&'a Value> {
    match get(v, "kind")?.as_str() {
        Some(k) if k == kind => get(v, "data"),
        Some(k) => bail!("expected kind `{kind}`, found `{k}`"),
        None => bail!("`kind` must be a string"),
    }
}

fn str_field<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    get(v, key)?.as_str().ok_or_else(|| anyhow!("field `{key}` must be a string"))
}

fn bool_field(v: &Value, key: &str) -> Result<bool> {
    get(v, key)?.as_bool().ok_or_else(|| anyhow!("field `{key}` must be a boolean"))
}

fn list<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>> {
    get(v, key)?.as_array().ok_or_else(|| anyhow!("field `{key}` must be an array"))
}

pub fn atom_json(v: &Value) -> Result<Atom> {
    let d = data(v, "atom")?;
    let name = str_field(d, "name")?;
    let kind = match str_field(d, "type")? {
        "constant" => AtomKind::Constant,
        "parameter" => AtomKind::Parameter,
        "topological" => AtomKind::Topological,
        other => bail!("unknown atom type `{other}`"),
    };
    let mut a = Atom::new(kind, name);
    if let Some(val) = d.get("value").filter(|v| !v.is_null()) {
        let s = val.as_str().ok_or_else(|| anyhow!("`value` must be a string"))?;
        a = a.with_value(Scalar::from_str(s).map_err(|e| anyhow!("bad value `{s}`: {e}"))?);
    }
    Ok(a)
}

fn node_json(v: &Value) -> Result<TreeNode> {
    match get(v, "kind")?.as_str() {
        Some("leaf") => {
            let d = get(v, "data")?;
            let dec = match d.get("dec").filter(|x| !x.is_null()) {
                Some(a) => Some(atom_json(a)?),
                None => None,
            };
            Ok(TreeNode::Leaf { dec, vtype: vtype(bool_field(d, "second")?) })
        }
        Some("vertex") => {
            let d = get(v, "data")?;
            let children =
                list(d, "children")?.iter().map(node_json).collect::<Result<Vec<_>>>()?;
            Ok(TreeNode::Internal { vtype: vtype(bool_field(d, "second")?), children })
        }
        Some(other) => bail!("unknown vertex kind `{other}`"),
        None => bail!("`kind` must be a string"),
    }
}

pub fn tree_json(v: &Value) -> Result<RDecoTree> {
    let d = data(v, "tree")?;
    let t = RDecoTree::with_root_type(
        atom_json(get(d, "root")?)?,
        vtype(bool_field(d, "second")?),
        node_json(get(d, "top")?)?,
    );
    if !t.well_formed() {
        bail!("every branching vertex needs at least two children");
    }
    Ok(t)
}

pub fn polygon_json(v: &Value) -> Result<RDecoPolygon> {
    let d = data(v, "polygon")?;
    let mut sides = Vec::new();
    for sv in list(d, "sides")? {
        let sd = data(sv, "side")?;
        let dec = sd.get("dec").filter(|x| !x.is_null());
        sides.push(match (bool_field(sd, "second")?, dec) {
            (true, Some(a)) => Side::Second(atom_json(a)?),
            (false, Some(a)) => Side::Dec(atom_json(a)?),
            (false, None) => Side::Blank,
            (true, None) => bail!("a marked side carries a decoration"),
        });
    }
    RDecoPolygon::new(sides).map_err(|e| anyhow!("{e}"))
}

fn monomial_json(v: &Value) -> Result<Monomial> {
    let factors = v.as_array().ok_or_else(|| anyhow!("a monomial is an array of factors"))?;
    let mut m = Monomial::one();
    for f in factors {
        let a = atom_json(get(f, "atom")?)?;
        let e = get(f, "exp")?.as_i64().ok_or_else(|| anyhow!("`exp` must be an integer"))?;
        m = m.times(&a, e);
    }
    Ok(m)
}

fn coordinate_json(v: &Value) -> Result<Coordinate> {
    let d = data(v, "coordinate")?;
    let mon = monomial_json(get(d, "mon")?)?;
    match str_field(d, "form")? {
        "one-minus" => Ok(Coordinate::one_minus(mon)),
        "plain" => Ok(Coordinate::plain(mon)),
        other => bail!("unknown coordinate form `{other}`"),
    }
}

pub fn cycle_json(v: &Value) -> Result<(Vec<Coordinate>, Vec<Atom>)> {
    let d = data(v, "cycle")?;
    let coords = list(d, "coords")?.iter().map(coordinate_json).collect::<Result<Vec<_>>>()?;
    let chain = list(d, "chain")?.iter().map(atom_json).collect::<Result<Vec<_>>>()?;
    Ok((coords, chain))
}

pub fn bar_word_json(v: &Value) -> Result<BarWord> {
    let d = data(v, "word")?;
    let mut letters = Vec::new();
    for lv in list(d, "letters")? {
        let ld = data(lv, "wedge")?;
        let polys =
            list(ld, "factors")?.iter().map(polygon_json).collect::<Result<Vec<_>>>()?;
        letters.push(wedge_letter(polys)?);
    }
    Ok(TensorWord::new(letters))
}

fn iarg_json(v: &Value) -> Result<IArg> {
    match get(v, "kind")?.as_str() {
        Some("zero") => Ok(IArg::Zero),
        Some("atom") => Ok(IArg::At(atom_json(v)?)),
        Some(other) => bail!("unknown argument kind `{other}`"),
        None => bail!("`kind` must be a string"),
    }
}

pub fn symbol_json(v: &Value) -> Result<ISymbol> {
    let d = data(v, "symbol")?;
    let middle = list(d, "middle")?.iter().map(iarg_json).collect::<Result<Vec<_>>>()?;
    Ok(ISymbol::new(iarg_json(get(d, "start")?)?, middle, iarg_json(get(d, "end")?)?))
}

/// Integer, ratio `p/q`, or decimal string, as an exact scalar.
pub fn scalar(src: &str) -> Result<Scalar> {
    let t = src.trim();
    if let Ok(v) = Scalar::from_str(t) {
        return Ok(v);
    }
    let (int, frac) = t
        .split_once('.')
        .ok_or_else(|| anyhow!("expected an integer, `p/q`, or a decimal, got `{t}`"))?;
    let digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    let (sign, int) = match int.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", int.strip_prefix('+').unwrap_or(int)),
    };
    if !digits(int) || !digits(frac) || frac.is_empty() {
        bail!("expected an integer, `p/q`, or a decimal, got `{t}`");
    }
    let combined = format!("{sign}{int}{frac}/1{}", "0".repeat(frac.len()));
    Scalar::from_str(&combined).map_err(|e| anyhow!("bad decimal `{t}`: {e}"))
}
