//! Output in three formats.  Text reuses the engine's display forms (the
//! grammars in [`crate::parse`] read them back verbatim), JSON wraps every
//! object as `{"kind", "data"}` with sums as `{"terms": [{coeff, basis}]}`,
//! and LaTeX mirrors the bracket notation.

use std::fmt::Display;

use clap::ValueEnum;
use serde_json::{json, Value};

use rdeco::checks::CheckReport;
use rdeco::cycle::{Coordinate, Cycle, Form, Monomial};
use rdeco::iterint::{IArg, IMonomial, ISymbol};
use rdeco::polygon::{RDecoPolygon, Side};
use rdeco::tree::{RDecoTree, TreeNode};
use rdeco::{Atom, AtomKind, LinComb, Scalar, TensorWord, WedgeWord};

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

pub trait Render {
    fn text(&self) -> String;
    fn json(&self) -> Value;
    fn latex(&self) -> String;
}

// ---------------------------------------------------------------- leaves --

fn scalar_latex(k: &Scalar) -> String {
    let s = k.to_string();
    match s.split_once('/') {
        Some((p, q)) => format!("\\tfrac{{{p}}}{{{q}}}"),
        None => s,
    }
}

fn name_latex(name: &str) -> String {
    if let Some((p, q)) = name.split_once('/') {
        return format!("\\tfrac{{{p}}}{{{q}}}");
    }
    let split = name.len() - name.bytes().rev().take_while(u8::is_ascii_digit).count();
    let (stem, index) = name.split_at(split);
    if index.is_empty() || !stem.bytes().last().is_some_and(|b| b.is_ascii_alphabetic()) {
        name.to_string()
    } else {
        format!("{}_{{{}}}", stem.replace('_', "\\_"), index)
    }
}

impl Render for Atom {
    fn text(&self) -> String {
        self.to_string()
    }

    fn json(&self) -> Value {
        let ty = match self.kind() {
            AtomKind::Constant => "constant",
            AtomKind::Parameter => "parameter",
            AtomKind::Topological => "topological",
        };
        let mut d = json!({ "type": ty, "name": self.name() });
        if let Some(v) = self.value() {
            d["value"] = json!(v.to_string());
        }
        json!({ "kind": "atom", "data": d })
    }

    fn latex(&self) -> String {
        name_latex(self.name())
    }
}

// ----------------------------------------------------------------- trees --

fn node_json(n: &TreeNode) -> Value {
    match n {
        TreeNode::Leaf { dec, vtype } => json!({
            "kind": "leaf",
            "data": {
                "second": vtype.is_second(),
                "dec": dec.as_ref().map(Render::json),
            },
        }),
        TreeNode::Internal { vtype, children } => json!({
            "kind": "vertex",
            "data": {
                "second": vtype.is_second(),
                "children": children.iter().map(node_json).collect::<Vec<_>>(),
            },
        }),
    }
}

impl Render for RDecoTree {
    fn text(&self) -> String {
        self.to_string()
    }

    fn json(&self) -> Value {
        json!({
            "kind": "tree",
            "data": {
                "second": self.root_type.is_second(),
                "root": self.root_dec.json(),
                "top": node_json(&self.top),
            },
        })
    }

    fn latex(&self) -> String {
        // The planar s-expression is the notation; keep it verbatim.
        let quoted = self.to_string().replace('_', "\\_").replace('~', "\\char`~");
        format!("\\texttt{{{quoted}}}")
    }
}

// -------------------------------------------------------------- polygons --

fn side_json(s: &Side) -> Value {
    let (second, dec) = match s {
        Side::Dec(a) => (false, Some(a.json())),
        Side::Blank => (false, None),
        Side::Second(a) => (true, Some(a.json())),
    };
    json!({ "kind": "side", "data": { "second": second, "dec": dec } })
}

fn side_latex(s: &Side) -> String {
    match s {
        Side::Dec(a) => a.latex(),
        Side::Blank => "\\square".into(),
        Side::Second(a) => format!("\\widetilde{{{}}}", a.latex()),
    }
}

impl Render for RDecoPolygon {
    fn text(&self) -> String {
        self.to_string()
    }

    fn json(&self) -> Value {
        json!({
            "kind": "polygon",
            "data": { "sides": self.sides().iter().map(side_json).collect::<Vec<_>>() },
        })
    }

    fn latex(&self) -> String {
        let sides: Vec<String> = self.sides().iter().map(side_latex).collect();
        format!("[{}]", sides.join(","))
    }
}

// ---------------------------------------------------------------- cycles --

fn monomial_json(m: &Monomial) -> Value {
    let factors: Vec<Value> =
        m.factors().map(|(a, e)| json!({ "atom": a.json(), "exp": e })).collect();
    Value::Array(factors)
}

fn monomial_latex(m: &Monomial) -> String {
    let side = |items: &[(String, i64)]| {
        items
            .iter()
            .map(|(n, e)| if *e == 1 { n.clone() } else { format!("{n}^{{{e}}}") })
            .collect::<Vec<_>>()
            .join("\\,")
    };
    let num: Vec<(String, i64)> =
        m.factors().filter(|&(_, e)| e > 0).map(|(a, e)| (a.latex(), e)).collect();
    let den: Vec<(String, i64)> =
        m.factors().filter(|&(_, e)| e < 0).map(|(a, e)| (a.latex(), -e)).collect();
    match (num.is_empty(), den.is_empty()) {
        (true, true) => "1".into(),
        (false, true) => side(&num),
        (true, false) => format!("\\frac{{1}}{{{}}}", side(&den)),
        (false, false) => format!("\\frac{{{}}}{{{}}}", side(&num), side(&den)),
    }
}

fn coordinate_json(c: &Coordinate) -> Value {
    let form = match c.form {
        Form::OneMinus => "one-minus",
        Form::Plain => "plain",
    };
    json!({ "kind": "coordinate", "data": { "form": form, "mon": monomial_json(&c.mon) } })
}

fn coordinate_latex(c: &Coordinate) -> String {
    match c.form {
        Form::OneMinus => format!("1-{}", monomial_latex(&c.mon)),
        Form::Plain => monomial_latex(&c.mon),
    }
}

impl Render for Cycle {
    fn text(&self) -> String {
        self.to_string()
    }

    fn json(&self) -> Value {
        json!({
            "kind": "cycle",
            "data": {
                "coords": self.coords().iter().map(coordinate_json).collect::<Vec<_>>(),
                "chain": self.chain().iter().map(Render::json).collect::<Vec<_>>(),
            },
        })
    }

    fn latex(&self) -> String {
        let coords: Vec<String> = self.coords().iter().map(coordinate_latex).collect();
        let mut out = format!("\\big[{}\\big]", coords.join(",\\ "));
        if !self.chain().is_empty() {
            let names: Vec<String> = self.chain().iter().map(Render::latex).collect();
            out.push_str(&format!("\\ \\text{{on}}\\ {}", names.join("\\le ")));
        }
        out
    }
}

// --------------------------------------------------------------- symbols --

impl Render for IArg {
    fn text(&self) -> String {
        self.to_string()
    }

    fn json(&self) -> Value {
        match self {
            IArg::Zero => json!({ "kind": "zero", "data": Value::Null }),
            IArg::At(a) => a.json(),
        }
    }

    fn latex(&self) -> String {
        match self {
            IArg::Zero => "0".into(),
            IArg::At(a) => a.latex(),
        }
    }
}

impl Render for ISymbol {
    fn text(&self) -> String {
        self.to_string()
    }

    fn json(&self) -> Value {
        json!({
            "kind": "symbol",
            "data": {
                "start": self.a0.json(),
                "middle": self.middle.iter().map(Render::json).collect::<Vec<_>>(),
                "end": self.a_end.json(),
            },
        })
    }

    fn latex(&self) -> String {
        let middle: Vec<String> = self.middle.iter().map(Render::latex).collect();
        format!("\\mathrm{{I}}({};\\,{};\\,{})", self.a0.latex(), middle.join(","), self.a_end.latex())
    }
}

impl Render for IMonomial {
    fn text(&self) -> String {
        self.to_string()
    }

    fn json(&self) -> Value {
        json!({
            "kind": "product",
            "data": { "factors": self.factors().iter().map(Render::json).collect::<Vec<_>>() },
        })
    }

    fn latex(&self) -> String {
        if self.is_one() {
            return "1".into();
        }
        self.factors().iter().map(Render::latex).collect::<Vec<_>>().join("\\cdot ")
    }
}

// ----------------------------------------------------- words and tensors --

impl<F: Ord + Display + Render> Render for WedgeWord<F> {
    fn text(&self) -> String {
        self.to_string()
    }

    fn json(&self) -> Value {
        json!({
            "kind": "wedge",
            "data": { "factors": self.factors().iter().map(Render::json).collect::<Vec<_>>() },
        })
    }

    fn latex(&self) -> String {
        if self.factors().is_empty() {
            return "1".into();
        }
        self.factors().iter().map(Render::latex).collect::<Vec<_>>().join("\\wedge ")
    }
}

impl<L: Ord + Display + Render> Render for TensorWord<L> {
    fn text(&self) -> String {
        // The empty word is the bar unit; print it as such.
        if self.is_empty() {
            return "1".into();
        }
        self.to_string()
    }

    fn json(&self) -> Value {
        json!({
            "kind": "word",
            "data": { "letters": self.letters().iter().map(Render::json).collect::<Vec<_>>() },
        })
    }

    fn latex(&self) -> String {
        if self.is_empty() {
            return "1".into();
        }
        let letters: Vec<String> = self.letters().iter().map(Render::latex).collect();
        format!("\\big[{}\\big]", letters.join("\\,\\big\\vert\\,"))
    }
}

impl<A: Render, B: Render> Render for (A, B) {
    fn text(&self) -> String {
        format!("{} \u{2297} {}", self.0.text(), self.1.text())
    }

    fn json(&self) -> Value {
        json!({ "kind": "tensor", "data": { "left": self.0.json(), "right": self.1.json() } })
    }

    fn latex(&self) -> String {
        format!("{} \\otimes {}", self.0.latex(), self.1.latex())
    }
}

// ------------------------------------------------------------------ sums --

fn signed_sum<B: Ord>(lc: &LinComb<B>, part: impl Fn(&B) -> String, latex: bool) -> String {
    if lc.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (b, k)) in lc.iter().enumerate() {
        let neg = k.is_negative();
        let abs = if neg { -k.clone() } else { k.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !abs.is_one() {
            if latex {
                out.push_str(&scalar_latex(&abs));
                out.push_str("\\,");
            } else {
                out.push_str(&abs.to_string());
                out.push('*');
            }
        }
        out.push_str(&part(b));
    }
    out
}

pub fn lincomb<B: Ord + Render>(lc: &LinComb<B>, format: Format) -> String {
    match format {
        Format::Text => signed_sum(lc, Render::text, false),
        Format::Latex => signed_sum(lc, Render::latex, true),
        Format::Json => {
            let terms: Vec<Value> = lc
                .iter()
                .map(|(b, k)| json!({ "coeff": k.to_string(), "basis": b.json() }))
                .collect();
            pretty(&json!({ "terms": terms }))
        }
    }
}

pub fn single<B: Render>(b: &B, format: Format) -> String {
    match format {
        Format::Text => b.text(),
        Format::Json => pretty(&b.json()),
        Format::Latex => b.latex(),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("value serialization cannot fail")
}

// -------------------------------------------------------- derived output --

/// One named number, with an error bound when the producer has one.
pub struct Quantity {
    pub label: &'static str,
    pub value: f64,
    pub bound: Option<f64>,
}

impl Quantity {
    pub fn new(label: &'static str, value: f64) -> Self {
        Quantity { label, value, bound: None }
    }

    pub fn bounded(label: &'static str, value: f64, bound: f64) -> Self {
        Quantity { label, value, bound: Some(bound) }
    }
}

pub fn quantities(items: &[Quantity], format: Format) -> String {
    match format {
        Format::Text | Format::Latex => {
            let width = items.iter().map(|q| q.label.len()).max().unwrap_or(0);
            items
                .iter()
                .map(|q| {
                    let mut line = format!("{:width$} = {:.15}", q.label, q.value);
                    if let Some(b) = q.bound {
                        line.push_str(&format!("  (error <= {b:.2e})"));
                    }
                    line
                })
                .collect::<Vec<_>>()
                .join("\n")
        }
        Format::Json => {
            let items: Vec<Value> = items
                .iter()
                .map(|q| {
                    let mut d = json!({ "label": q.label, "value": q.value });
                    if let Some(b) = q.bound {
                        d["errorBound"] = json!(b);
                    }
                    d
                })
                .collect();
            pretty(&json!({ "kind": "values", "data": items }))
        }
    }
}

/// Admissibility verdicts, one per cycle of a combination.
pub fn admissibility(rows: &[(Cycle, bool)], format: Format) -> String {
    match format {
        Format::Text | Format::Latex => {
            if rows.is_empty() {
                return "0: admissible (no terms)".into();
            }
            rows.iter()
                .map(|(z, ok)| {
                    format!("{z}: {}", if *ok { "admissible" } else { "not admissible" })
                })
                .collect::<Vec<_>>()
                .join("\n")
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|(z, ok)| json!({ "cycle": z.json(), "admissible": ok }))
                .collect();
            pretty(&json!({ "kind": "admissibility", "data": rows }))
        }
    }
}

/// Suite results; the boolean is the overall verdict.
pub fn report(reports: &[CheckReport], format: Format) -> (String, bool) {
    let passed = reports.iter().all(CheckReport::passed);
    let out = match format {
        Format::Text | Format::Latex => {
            reports.iter().map(CheckReport::line).collect::<Vec<_>>().join("\n")
        }
        Format::Json => {
            let suites: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "name": r.name,
                        "cases": r.cases,
                        "failures": r.failures,
                    })
                })
                .collect();
            pretty(&json!({ "kind": "report", "data": { "passed": passed, "checks": suites } }))
        }
    };
    (out, passed)
}
