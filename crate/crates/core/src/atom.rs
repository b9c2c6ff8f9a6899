//! Atoms: the named quantities that decorate trees and polygons and appear
//! in cycle coordinates.
//!
//! Three kinds exist.  `Constant` atoms stand for fixed field elements
//! (decorations such as `x1`, or numeric literals like `1`, which carry
//! their exact value).  `Parameter` atoms are the affine cycle parameters
//! introduced for internal tree vertices.  `Topological` atoms are the
//! simplicial variables constrained to an ordered chain.
//!
//! Distinct constant atoms are treated as algebraically independent unless
//! they carry equal numeric values and a caller unifies them explicitly.

use crate::scalar::Scalar;
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum AtomKind {
    Constant,
    Parameter,
    Topological,
}

#[derive(Clone, Debug)]
pub struct Atom {
    kind: AtomKind,
    name: String,
    /// Exact value, when known (numeric literals).  Not part of identity.
    value: Option<Scalar>,
}

impl Atom {
    pub fn new(kind: AtomKind, name: impl Into<String>) -> Self {
        Atom { kind, name: name.into(), value: None }
    }

    pub fn constant(name: impl Into<String>) -> Self {
        let name = name.into();
        if name == "1" {
            return Atom::one();
        }
        Atom::new(AtomKind::Constant, name)
    }

    /// Numeric constant; the name is the canonical rendering of the value.
    pub fn number(value: Scalar) -> Self {
        Atom { kind: AtomKind::Constant, name: value.to_string(), value: Some(value) }
    }

    pub fn one() -> Self {
        Atom::number(Scalar::one())
    }

    /// Canonically named parameter `t1`, `t2`, ...
    pub fn parameter(index: usize) -> Self {
        Atom::new(AtomKind::Parameter, format!("t{index}"))
    }

    pub fn parameter_named(name: impl Into<String>) -> Self {
        Atom::new(AtomKind::Parameter, name)
    }

    /// Simplicial variable `s0`, `s1`, ...
    pub fn topological(index: usize) -> Self {
        Atom::new(AtomKind::Topological, format!("s{index}"))
    }

    pub fn kind(&self) -> AtomKind {
        self.kind
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn value(&self) -> Option<&Scalar> {
        self.value.as_ref()
    }

    pub fn with_value(mut self, value: Scalar) -> Self {
        self.value = Some(value);
        self
    }

    pub fn is_parameter(&self) -> bool {
        self.kind == AtomKind::Parameter
    }

    pub fn is_topological(&self) -> bool {
        self.kind == AtomKind::Topological
    }

    /// True for the multiplicative unit; such atoms never enter monomials.
    pub fn is_unit(&self) -> bool {
        matches!(&self.value, Some(v) if v.is_one())
    }
}

// Identity is (kind, name); a numeric value is an annotation, and reusing a
// name for two different values is a caller bug.
impl PartialEq for Atom {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.name == other.name
    }
}

impl Eq for Atom {}

impl PartialOrd for Atom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Atom {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.kind, &self.name).cmp(&(other.kind, &other.name))
    }
}

impl Hash for Atom {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.kind.hash(state);
        self.name.hash(state);
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}
