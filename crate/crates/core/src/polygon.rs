//! Decorated oriented polygons and the arrow differentials.
//!
//! A polygon stores its sides in cyclic order with the root side last.
//! Vertex `i` is the starting corner of side `i`, so vertex 0 is the corner
//! shared by the root side and side 0.  An arrow runs from a vertex to a
//! non-incident side and cuts the polygon in two; both parts keep a piece of
//! the target side, decorated like the whole side.
//!
//! Two differentials are provided.  They agree on forward arrows and differ
//! on backward ones (arrows pointing left of their vertex):
//! - [`RDecoPolygon::differential`] keeps the backward cut in the inherited
//!   cyclic order and charges a fixed `-1` per backward arrow; this is the
//!   version matched by the triangulation map to trees.
//! - [`RDecoPolygon::differential_bar`] lists the backward cut in reversed
//!   order and charges `(-1)^w` with `w` the cut's weight; this is the
//!   version the bar construction is built from.

use crate::atom::Atom;
use crate::lincomb::{Graded, LinComb, WedgeWord};
use crate::scalar::Scalar;
use std::fmt;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Side {
    Dec(Atom),
    Blank,
    /// Marked first side of an enhanced polygon.
    Second(Atom),
}

impl Side {
    pub fn is_blank(&self) -> bool {
        matches!(self, Side::Blank)
    }

    pub fn is_second(&self) -> bool {
        matches!(self, Side::Second(_))
    }

    pub fn atom(&self) -> Option<&Atom> {
        match self {
            Side::Dec(a) | Side::Second(a) => Some(a),
            Side::Blank => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RDecoPolygon {
    sides: Vec<Side>,
}

#[derive(Debug, PartialEq, Eq)]
pub enum PolygonError {
    TooFewSides,
    BlankEnd,
    MisplacedSecond,
}

impl fmt::Display for PolygonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolygonError::TooFewSides => write!(f, "a polygon needs at least two sides"),
            PolygonError::BlankEnd => {
                write!(f, "the first and the root side must be decorated")
            }
            PolygonError::MisplacedSecond => {
                write!(f, "a marked side is only allowed in the first position")
            }
        }
    }
}

impl std::error::Error for PolygonError {}

impl RDecoPolygon {
    pub fn new(sides: Vec<Side>) -> Result<Self, PolygonError> {
        if sides.len() < 2 {
            return Err(PolygonError::TooFewSides);
        }
        if sides.first().unwrap().is_blank() || sides.last().unwrap().is_blank() {
            return Err(PolygonError::BlankEnd);
        }
        if sides.iter().skip(1).any(Side::is_second) || sides.last().unwrap().is_second() {
            return Err(PolygonError::MisplacedSecond);
        }
        Ok(RDecoPolygon { sides })
    }

    /// Plain polygon from decorations, root last.
    pub fn decorated(atoms: Vec<Atom>) -> Result<Self, PolygonError> {
        RDecoPolygon::new(atoms.into_iter().map(Side::Dec).collect())
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    pub fn len(&self) -> usize {
        self.sides.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn root_side(&self) -> &Side {
        self.sides.last().unwrap()
    }

    pub fn is_enhanced(&self) -> bool {
        self.sides[0].is_second()
    }

    /// Count of non-root sides that are not marked.
    pub fn weight(&self) -> usize {
        self.sides
            .iter()
            .take(self.sides.len() - 1)
            .filter(|s| !s.is_second())
            .count()
    }

    pub fn adams_degree(&self) -> usize {
        2 * self.weight()
    }

    /// All arrows from a vertex to a non-incident side.  Enhanced polygons
    /// exclude arrows touching vertex 0 or the marked side.
    pub fn arrows(&self) -> Vec<Arrow> {
        let n = self.sides.len();
        let enhanced = self.is_enhanced();
        let mut out = Vec::new();
        for vertex in 0..n {
            if enhanced && vertex == 0 {
                continue;
            }
            for target in 0..n {
                if target == vertex || target == (vertex + n - 1) % n {
                    continue;
                }
                if enhanced && target == 0 {
                    continue;
                }
                out.push(Arrow { vertex, target });
            }
        }
        out
    }

    /// Split along one arrow: (cut part, root part), with the backward cut
    /// in the inherited cyclic order.
    pub fn dissect_one(&self, arrow: &Arrow) -> (RDecoPolygon, RDecoPolygon) {
        let n = self.sides.len();
        let (v, t) = (arrow.vertex, arrow.target);
        debug_assert!(t != v && t != (v + n - 1) % n, "arrow hits an incident side");
        let d = &self.sides;
        if !arrow.backward() {
            // v <= t - 1
            let cut: Vec<Side> = d[v..=t].to_vec();
            let mut root: Vec<Side> = d[..v].to_vec();
            root.extend_from_slice(&d[t..]);
            (RDecoPolygon { sides: cut }, RDecoPolygon { sides: root })
        } else {
            // t <= v - 2; the cut inherits the arc t+1..v-1 plus a root
            // piece of side t.
            let mut cut: Vec<Side> = d[t + 1..v].to_vec();
            cut.push(d[t].clone());
            let mut root: Vec<Side> = d[..=t].to_vec();
            root.extend_from_slice(&d[v..]);
            (RDecoPolygon { sides: cut }, RDecoPolygon { sides: root })
        }
    }

    fn arrow_terms(&self, bar: bool) -> LinComb<WedgeWord<RDecoPolygon>> {
        let mut out = LinComb::zero();
        for arrow in self.arrows() {
            let (mut cut, root) = self.dissect_one(&arrow);
            let mut sign = 1i8;
            if arrow.backward() {
                if bar {
                    let k = cut.sides.len() - 1;
                    cut.sides[..k].reverse();
                    if cut.weight() % 2 == 1 {
                        sign = -1;
                    }
                } else {
                    sign = -1;
                }
            }
            if cut.quotient_zero() || root.quotient_zero() {
                continue;
            }
            out.add_assign(
                WedgeWord::normalize(vec![root, cut]).scaled(&Scalar::from_sign(sign)),
            );
        }
        out
    }

    /// Arrow differential with inherited backward cuts.
    pub fn differential(&self) -> LinComb<WedgeWord<RDecoPolygon>> {
        self.arrow_terms(false)
    }

    /// Arrow differential with reversed backward cuts and weight signs.
    pub fn differential_bar(&self) -> LinComb<WedgeWord<RDecoPolygon>> {
        self.arrow_terms(true)
    }

    /// Dissection parts may expose a blank side at an end; those classes
    /// vanish.
    pub(crate) fn quotient_zero(&self) -> bool {
        self.sides.first().unwrap().is_blank() || self.sides.last().unwrap().is_blank()
    }

    pub(crate) fn from_sides_unchecked(sides: Vec<Side>) -> Self {
        RDecoPolygon { sides }
    }
}

/// Polygons are odd for the wedge: their exterior degree is one regardless
/// of side count.
impl Graded for RDecoPolygon {
    fn wedge_degree(&self) -> usize {
        1
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Arrow {
    pub vertex: usize,
    pub target: usize,
}

impl Arrow {
    pub fn new(vertex: usize, target: usize) -> Self {
        Arrow { vertex, target }
    }

    pub fn backward(&self) -> bool {
        self.target < self.vertex
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.vertex, self.target)
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Dec(a) => write!(f, "{a}"),
            Side::Blank => write!(f, "_"),
            Side::Second(a) => write!(f, "~{a}"),
        }
    }
}

impl fmt::Display for RDecoPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, s) in self.sides.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "]")
    }
}

/// Extend either differential to wedge words by the signed product rule;
/// each polygon factor counts as odd.
pub fn wedge_differential(
    w: &WedgeWord<RDecoPolygon>,
    bar: bool,
) -> LinComb<WedgeWord<RDecoPolygon>> {
    let factors = w.factors();
    let mut out = LinComb::zero();
    for (i, p) in factors.iter().enumerate() {
        let sign = Scalar::from_sign(if i % 2 == 0 { 1 } else { -1 });
        let dp = if bar { p.differential_bar() } else { p.differential() };
        for (dw, c) in dp.iter() {
            let mut fs: Vec<RDecoPolygon> = Vec::with_capacity(factors.len() + 1);
            fs.extend_from_slice(&factors[..i]);
            fs.extend(dw.factors().iter().cloned());
            fs.extend_from_slice(&factors[i + 1..]);
            out.add_assign(WedgeWord::normalize(fs).scaled(&(c.clone() * sign.clone())));
        }
    }
    out
}

pub fn wedge_differential_lincomb(
    lc: &LinComb<WedgeWord<RDecoPolygon>>,
    bar: bool,
) -> LinComb<WedgeWord<RDecoPolygon>> {
    let mut out = LinComb::zero();
    for (w, c) in lc.iter() {
        out.add_assign(wedge_differential(w, bar).scaled(c));
    }
    out
}
