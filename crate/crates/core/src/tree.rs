//! Rooted plane trees with a decorated root and decorated (or blank) leaves,
//! together with the edge-contraction differential taking a tree to a signed
//! sum of forests.
//!
//! Conventions:
//! - The root has valency 1; every internal vertex has at least 3 incident
//!   edges (so at least 2 children).
//! - Edges are indexed 1..=n in preorder, root edge first; a tree with n
//!   edges carries the orientation e1 ^ ... ^ en.
//! - Contracting an external edge (root edge or leaf edge) pushes the outer
//!   decoration onto the inner vertex and the tree falls apart there; each
//!   fragment keeps the planar order.  Contracting an internal edge merges
//!   its endpoints into one vertex.
//! - Trees whose leftmost leaf is blank are treated as zero, as are
//!   fragments that would need a blank root.

use crate::atom::Atom;
use crate::lincomb::{Graded, LinComb, WedgeWord};
use crate::scalar::Scalar;
use std::fmt;

/// Vertex flavor: ordinary, simplicial, or the root flavor compatible with
/// both.  Simplicial vertices turn into chained variables under the cycle
/// translation.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum VertexType {
    First,
    Second,
    Both,
}

impl VertexType {
    pub fn merge(self, other: VertexType) -> VertexType {
        use VertexType::*;
        match (self, other) {
            (a, b) if a == b => a,
            (Both, _) | (_, Both) => Both,
            _ => Second,
        }
    }

    pub fn is_second(self) -> bool {
        matches!(self, VertexType::Second | VertexType::Both)
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum TreeNode {
    Leaf { dec: Option<Atom>, vtype: VertexType },
    Internal { vtype: VertexType, children: Vec<TreeNode> },
}

impl TreeNode {
    pub fn leaf(dec: Atom) -> Self {
        TreeNode::Leaf { dec: Some(dec), vtype: VertexType::First }
    }

    pub fn blank() -> Self {
        TreeNode::Leaf { dec: None, vtype: VertexType::First }
    }

    pub fn second_leaf(dec: Atom) -> Self {
        TreeNode::Leaf { dec: Some(dec), vtype: VertexType::Second }
    }

    pub fn internal(children: Vec<TreeNode>) -> Self {
        TreeNode::Internal { vtype: VertexType::First, children }
    }

    pub fn internal_second(children: Vec<TreeNode>) -> Self {
        TreeNode::Internal { vtype: VertexType::Second, children }
    }

    pub fn vtype(&self) -> VertexType {
        match self {
            TreeNode::Leaf { vtype, .. } | TreeNode::Internal { vtype, .. } => *vtype,
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, TreeNode::Leaf { .. })
    }

    fn edges_below(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 0,
            TreeNode::Internal { children, .. } => {
                children.iter().map(|c| 1 + c.edges_below()).sum()
            }
        }
    }

    fn first_leaf(&self) -> &TreeNode {
        match self {
            TreeNode::Leaf { .. } => self,
            TreeNode::Internal { children, .. } => children[0].first_leaf(),
        }
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a TreeNode>) {
        match self {
            TreeNode::Leaf { .. } => out.push(self),
            TreeNode::Internal { children, .. } => {
                for c in children {
                    c.collect_leaves(out);
                }
            }
        }
    }

    fn well_formed(&self) -> bool {
        match self {
            TreeNode::Leaf { .. } => true,
            TreeNode::Internal { children, .. } => {
                children.len() >= 2 && children.iter().all(TreeNode::well_formed)
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RDecoTree {
    pub root_dec: Atom,
    pub root_type: VertexType,
    pub top: TreeNode,
}

/// Wedge product of trees; the ambient object the differential lands in.
pub type Forest = WedgeWord<RDecoTree>;

impl RDecoTree {
    pub fn new(root_dec: Atom, top: TreeNode) -> Self {
        RDecoTree { root_dec, root_type: VertexType::First, top }
    }

    pub fn with_root_type(root_dec: Atom, root_type: VertexType, top: TreeNode) -> Self {
        RDecoTree { root_dec, root_type, top }
    }

    /// Single-edge tree: root decorated `root_dec`, one leaf `leaf_dec`.
    pub fn line(root_dec: Atom, leaf_dec: Atom) -> Self {
        RDecoTree::new(root_dec, TreeNode::leaf(leaf_dec))
    }

    pub fn edge_count(&self) -> usize {
        1 + self.top.edges_below()
    }

    pub fn leaves(&self) -> Vec<&TreeNode> {
        let mut out = Vec::new();
        self.top.collect_leaves(&mut out);
        out
    }

    pub fn leaf_decorations(&self) -> Vec<Option<&Atom>> {
        self.leaves()
            .into_iter()
            .map(|l| match l {
                TreeNode::Leaf { dec, .. } => dec.as_ref(),
                _ => unreachable!(),
            })
            .collect()
    }

    /// Internal vertices must have >= 2 children.
    pub fn well_formed(&self) -> bool {
        self.top.well_formed()
    }

    /// A blank leftmost leaf makes the tree vanish in the quotient where
    /// such trees are identified with zero.
    pub fn is_quotient_zero(&self) -> bool {
        matches!(self.top.first_leaf(), TreeNode::Leaf { dec: None, .. })
    }

    pub(crate) fn arena(&self) -> Arena {
        let mut a = Arena {
            parent: vec![usize::MAX],
            children: vec![Vec::new()],
            dec: vec![Some(self.root_dec.clone())],
            vtype: vec![self.root_type],
        };
        fn visit(a: &mut Arena, node: &TreeNode, parent: usize) {
            let id = a.parent.len();
            a.parent.push(parent);
            a.children.push(Vec::new());
            a.children[parent].push(id);
            match node {
                TreeNode::Leaf { dec, vtype } => {
                    a.dec.push(dec.clone());
                    a.vtype.push(*vtype);
                }
                TreeNode::Internal { vtype, children } => {
                    a.dec.push(None);
                    a.vtype.push(*vtype);
                    for c in children {
                        visit(a, c, id);
                    }
                }
            }
        }
        visit(&mut a, &self.top, 0);
        a
    }

    /// Contract edge `j` (1-based, preorder).  The coefficient collects the
    /// sign for moving e_j to the front, the parity of the permutation taking
    /// the surviving edges to the fragments' own preorders, and the sign from
    /// sorting the fragments.
    pub fn contract_edge(&self, j: usize) -> LinComb<Forest> {
        let n = self.edge_count();
        assert!(1 <= j && j <= n, "edge index out of range");
        let mut a = self.arena();
        let w = j;
        let v = a.parent[w];
        let merged_vt = a.vtype[v].merge(a.vtype[w]);
        // (tree, original edge ids in the fragment's preorder)
        let mut comps: Vec<(RDecoTree, Vec<usize>)> = Vec::new();
        if v == 0 {
            for &c in a.children[w].clone().iter() {
                let mut ids = vec![c];
                let top = rebuild(&a, c, &mut ids);
                comps.push((
                    RDecoTree::with_root_type(self.root_dec.clone(), merged_vt, top),
                    ids,
                ));
            }
        } else if a.children[w].is_empty() {
            let Some(dec) = a.dec[w].clone() else {
                // Blank decoration cannot become a fragment root.
                return LinComb::zero();
            };
            let siblings: Vec<usize> =
                a.children[v].iter().copied().filter(|&c| c != w).collect();
            a.children[v].clear();
            a.dec[v] = Some(dec.clone());
            a.vtype[v] = merged_vt;
            let c0 = a.children[0][0];
            let mut ids = vec![c0];
            let top = rebuild(&a, c0, &mut ids);
            comps.push((
                RDecoTree::with_root_type(self.root_dec.clone(), a.vtype[0], top),
                ids,
            ));
            for c in siblings {
                let mut ids = vec![c];
                let top = rebuild(&a, c, &mut ids);
                comps.push((RDecoTree::with_root_type(dec.clone(), merged_vt, top), ids));
            }
        } else {
            let pos = a.children[v].iter().position(|&c| c == w).unwrap();
            let grand = a.children[w].clone();
            a.children[v].splice(pos..pos + 1, grand);
            a.vtype[v] = merged_vt;
            let c0 = a.children[0][0];
            let mut ids = vec![c0];
            let top = rebuild(&a, c0, &mut ids);
            comps.push((
                RDecoTree::with_root_type(self.root_dec.clone(), a.vtype[0], top),
                ids,
            ));
        }

        if comps.iter().any(|(t, _)| t.is_quotient_zero()) {
            return LinComb::zero();
        }

        let mut sign = if (j - 1) % 2 == 0 { 1i8 } else { -1i8 };
        let concat: Vec<usize> = comps.iter().flat_map(|(_, ids)| ids.iter().copied()).collect();
        if inversions(&concat) % 2 == 1 {
            sign = -sign;
        }
        let trees: Vec<RDecoTree> = comps.into_iter().map(|(t, _)| t).collect();
        WedgeWord::normalize(trees).scaled(&Scalar::from_sign(sign))
    }

    /// Sum of all edge contractions; zero on trees with at most one edge.
    pub fn differential(&self) -> LinComb<Forest> {
        let n = self.edge_count();
        if n <= 1 {
            return LinComb::zero();
        }
        let mut out = LinComb::zero();
        for j in 1..=n {
            out.add_assign(self.contract_edge(j));
        }
        out
    }
}

fn rebuild(a: &Arena, v: usize, edge_ids: &mut Vec<usize>) -> TreeNode {
    if a.children[v].is_empty() {
        TreeNode::Leaf { dec: a.dec[v].clone(), vtype: a.vtype[v] }
    } else {
        let children = a.children[v]
            .iter()
            .map(|&c| {
                edge_ids.push(c);
                rebuild(a, c, edge_ids)
            })
            .collect();
        TreeNode::Internal { vtype: a.vtype[v], children }
    }
}

fn inversions(xs: &[usize]) -> usize {
    let mut count = 0;
    for i in 0..xs.len() {
        for k in i + 1..xs.len() {
            if xs[i] > xs[k] {
                count += 1;
            }
        }
    }
    count
}

pub(crate) struct Arena {
    pub(crate) parent: Vec<usize>,
    pub(crate) children: Vec<Vec<usize>>,
    pub(crate) dec: Vec<Option<Atom>>,
    pub(crate) vtype: Vec<VertexType>,
}

impl Graded for RDecoTree {
    fn wedge_degree(&self) -> usize {
        self.edge_count()
    }
}

/// Extend the differential to a forest by the signed product rule, the sign
/// being the parity of the total edge count of preceding factors.
pub fn forest_differential(w: &Forest) -> LinComb<Forest> {
    let factors = w.factors();
    let mut out = LinComb::zero();
    let mut deg_before = 0usize;
    for (i, t) in factors.iter().enumerate() {
        let sign = Scalar::from_sign(if deg_before % 2 == 0 { 1 } else { -1 });
        for (dw, c) in t.differential().iter() {
            let mut fs: Vec<RDecoTree> = Vec::with_capacity(factors.len() + dw.len());
            fs.extend_from_slice(&factors[..i]);
            fs.extend(dw.factors().iter().cloned());
            fs.extend_from_slice(&factors[i + 1..]);
            out.add_assign(WedgeWord::normalize(fs).scaled(&(c.clone() * sign.clone())));
        }
        deg_before += t.wedge_degree();
    }
    out
}

pub fn differential_lincomb(lc: &LinComb<Forest>) -> LinComb<Forest> {
    let mut out = LinComb::zero();
    for (w, c) in lc.iter() {
        out.add_assign(forest_differential(w).scaled(c));
    }
    out
}

impl fmt::Display for TreeNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeNode::Leaf { dec, vtype } => {
                if vtype.is_second() {
                    write!(f, "~")?;
                }
                match dec {
                    Some(a) => write!(f, "{a}"),
                    None => write!(f, "_"),
                }
            }
            TreeNode::Internal { vtype, children } => {
                if vtype.is_second() {
                    write!(f, "~")?;
                }
                write!(f, "(")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for RDecoTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        if self.root_type.is_second() {
            write!(f, "~")?;
        }
        write!(f, "{} {})", self.root_dec, self.top)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(name: &str) -> Atom {
        Atom::constant(name)
    }

    fn line(r: &str, l: &str) -> RDecoTree {
        RDecoTree::line(atom(r), atom(l))
    }

    fn corolla(r: &str, leaves: &[&str]) -> RDecoTree {
        RDecoTree::new(
            atom(r),
            TreeNode::internal(leaves.iter().map(|s| TreeNode::leaf(atom(s))).collect()),
        )
    }

    #[test]
    fn edge_counts() {
        assert_eq!(line("1", "x").edge_count(), 1);
        assert_eq!(corolla("1", &["x1", "x2"]).edge_count(), 3);
    }

    #[test]
    fn small_corolla_differential() {
        // Root 1 over leaves x1, x2.  Contracting the root edge splits into
        // two lines from 1; contracting a leaf edge pushes that decoration
        // onto the fork.
        let t = corolla("1", &["x1", "x2"]);
        let d = t.differential();
        let term = |a: RDecoTree, b: RDecoTree| WedgeWord::normalize(vec![a, b]);
        let mut expect = term(line("1", "x1"), line("1", "x2"));
        expect.sub_assign(term(line("1", "x1"), line("x1", "x2")));
        expect.add_assign(term(line("1", "x2"), line("x2", "x1")));
        assert_eq!(d, expect);
    }

    #[test]
    fn five_edge_contraction_sign() {
        // (1 ((a b) c)): contracting the edge to leaf `a` leaves the later
        // sibling edge out of place, flipping the permutation parity.
        let t = RDecoTree::new(
            atom("1"),
            TreeNode::internal(vec![
                TreeNode::internal(vec![TreeNode::leaf(atom("a")), TreeNode::leaf(atom("b"))]),
                TreeNode::leaf(atom("c")),
            ]),
        );
        let got = t.contract_edge(3);
        let expect = WedgeWord::normalize(vec![corolla("1", &["a", "c"]), line("a", "b")])
            .negated();
        assert_eq!(got, expect);
    }

    #[test]
    fn contract_single_edge_gives_unit() {
        let t = line("a", "b");
        assert_eq!(t.contract_edge(1), LinComb::single(WedgeWord::unit()));
        assert!(t.differential().is_zero());
    }

    #[test]
    fn equal_adjacent_leaves_cancel() {
        // Both decorations agree, so the two leaf contractions cancel and
        // the root contraction repeats an odd factor.
        let t = corolla("1", &["x", "x"]);
        assert!(t.differential().is_zero());
    }

    #[test]
    fn differential_squares_to_zero_on_samples() {
        let samples = vec![
            RDecoTree::new(
                atom("1"),
                TreeNode::internal(vec![
                    TreeNode::leaf(atom("a")),
                    TreeNode::internal(vec![TreeNode::leaf(atom("b")), TreeNode::leaf(atom("c"))]),
                ]),
            ),
            RDecoTree::new(
                atom("r"),
                TreeNode::internal(vec![
                    TreeNode::internal(vec![TreeNode::leaf(atom("a")), TreeNode::leaf(atom("b"))]),
                    TreeNode::internal(vec![TreeNode::leaf(atom("c")), TreeNode::leaf(atom("d"))]),
                ]),
            ),
            corolla("r", &["a", "b", "c", "d"]),
        ];
        for t in samples {
            let d2 = differential_lincomb(&t.differential());
            assert!(d2.is_zero(), "d^2 != 0 for {t}: {d2}");
        }
    }

    #[test]
    fn blank_first_leaf_vanishes() {
        let t = RDecoTree::new(
            atom("1"),
            TreeNode::internal(vec![TreeNode::blank(), TreeNode::leaf(atom("x"))]),
        );
        assert!(t.is_quotient_zero());
        assert!(t.differential().is_zero());
    }

    #[test]
    fn blank_middle_leaf_terms_drop() {
        // The blank leaf cannot seed new roots, so only the internal
        // contraction (which keeps it attached) survives.
        let t = RDecoTree::new(
            atom("1"),
            TreeNode::internal(vec![
                TreeNode::leaf(atom("x")),
                TreeNode::internal(vec![TreeNode::blank(), TreeNode::leaf(atom("y"))]),
            ]),
        );
        let blank_corolla = RDecoTree::new(
            atom("1"),
            TreeNode::internal(vec![
                TreeNode::leaf(atom("x")),
                TreeNode::blank(),
                TreeNode::leaf(atom("y")),
            ]),
        );
        assert!(t.contract_edge(1).is_zero());
        assert!(t.contract_edge(2).is_zero());
        assert_eq!(
            t.differential(),
            LinComb::single(WedgeWord::single(blank_corolla.clone()))
        );
        assert!(blank_corolla.differential().is_zero());
    }

    #[test]
    fn grading_drops_by_one() {
        let t = RDecoTree::new(
            atom("r"),
            TreeNode::internal(vec![
                TreeNode::leaf(atom("a")),
                TreeNode::internal(vec![TreeNode::leaf(atom("b")), TreeNode::leaf(atom("c"))]),
            ]),
        );
        let n = t.edge_count();
        for (w, _) in t.differential().iter() {
            assert_eq!(w.total_degree(), n - 1);
        }
    }

    #[test]
    fn display_round_shape() {
        let t = RDecoTree::new(
            atom("1"),
            TreeNode::internal(vec![TreeNode::leaf(atom("x1")), TreeNode::blank()]),
        );
        assert_eq!(t.to_string(), "(1 (x1 _))");
    }
}
