//! The triangulation map from polygons to sums of trees.
//!
//! Every triangulation of an N-gon yields a plane trivalent tree dual to it:
//! triangles become internal vertices, polygon sides become leaves (in planar
//! order) and the root side becomes the root decoration.  The map sends a
//! polygon to the sum of these trees over all of its triangulations, each
//! with coefficient +1.
//!
//! Triangulations containing a triangle with two blank original sides are
//! skipped.  For enhanced polygons the path from the root to the marked leaf
//! is typed simplicial.

use crate::atom::Atom;
use crate::lincomb::{LinComb, WedgeWord};
use crate::polygon::{RDecoPolygon, Side};
use crate::tree::{RDecoTree, TreeNode, VertexType};

pub fn psi(p: &RDecoPolygon) -> LinComb<RDecoTree> {
    let sides = p.sides();
    let n = sides.len();
    let root_atom: Atom = sides[n - 1]
        .atom()
        .cloned()
        .expect("the root side is always decorated");
    let enhanced = p.is_enhanced();
    let root_type = if enhanced { VertexType::Second } else { VertexType::First };
    if n == 2 {
        let top = side_leaf(&sides[0]);
        return LinComb::single(RDecoTree::with_root_type(root_atom, root_type, top));
    }
    let tops = fan(sides, 0, n - 1, enhanced);
    tops.into_iter()
        .map(|top| {
            (
                RDecoTree::with_root_type(root_atom.clone(), root_type, top),
                crate::scalar::Scalar::one(),
            )
        })
        .collect()
}

fn side_leaf(side: &Side) -> TreeNode {
    match side {
        Side::Dec(a) => TreeNode::leaf(a.clone()),
        Side::Blank => TreeNode::blank(),
        Side::Second(a) => TreeNode::second_leaf(a.clone()),
    }
}

/// All dual trees for the sub-polygon spanned by corners i..j (j > i),
/// closed off by the chord (i, j).
fn fan(sides: &[Side], i: usize, j: usize, enhanced: bool) -> Vec<TreeNode> {
    if j == i + 1 {
        return vec![side_leaf(&sides[i])];
    }
    let vtype = if enhanced && i == 0 { VertexType::Second } else { VertexType::First };
    let mut out = Vec::new();
    for k in i + 1..j {
        // Triangle (i, k, j): skip it when both of its non-chord sides are
        // original blank sides.
        if k == i + 1 && j == k + 1 && sides[i].is_blank() && sides[k].is_blank() {
            continue;
        }
        let lefts = fan(sides, i, k, enhanced);
        let rights = fan(sides, k, j, enhanced);
        for l in &lefts {
            for r in &rights {
                out.push(TreeNode::Internal {
                    vtype,
                    children: vec![l.clone(), r.clone()],
                });
            }
        }
    }
    out
}

/// Map each factor of a wedge word and renormalize.
pub fn psi_wedge(w: &WedgeWord<RDecoPolygon>) -> LinComb<WedgeWord<RDecoTree>> {
    let mut acc: LinComb<Vec<RDecoTree>> = LinComb::single(Vec::new());
    for p in w.factors() {
        let image = psi(p);
        let mut next = LinComb::zero();
        for (prefix, c) in acc.iter() {
            for (t, ct) in image.iter() {
                let mut ext = prefix.clone();
                ext.push(t.clone());
                next.add_term(ext, c.clone() * ct.clone());
            }
        }
        acc = next;
    }
    acc.flat_map(WedgeWord::normalize)
}

pub fn psi_wedge_lincomb(
    lc: &LinComb<WedgeWord<RDecoPolygon>>,
) -> LinComb<WedgeWord<RDecoTree>> {
    let mut out = LinComb::zero();
    for (w, c) in lc.iter() {
        out.add_assign(psi_wedge(w).scaled(c));
    }
    out
}

/// Independent enumeration of the same sum: full binary plane trees over the
/// non-root sides as leaves, built by splitting the leaf interval instead of
/// picking triangulation apexes.
pub fn tree_sum(p: &RDecoPolygon) -> LinComb<RDecoTree> {
    let sides = p.sides();
    let n = sides.len();
    let root_atom = sides[n - 1].atom().cloned().expect("decorated root side");
    let enhanced = p.is_enhanced();
    let root_type = if enhanced { VertexType::Second } else { VertexType::First };
    let leaves: Vec<TreeNode> = sides[..n - 1].iter().map(side_leaf).collect();
    let mut out = LinComb::zero();
    for top in binary_over(&leaves, 0, enhanced) {
        if has_double_blank_fork(&top) {
            continue;
        }
        out.add_term(
            RDecoTree::with_root_type(root_atom.clone(), root_type, top),
            crate::scalar::Scalar::one(),
        );
    }
    out
}

fn binary_over(leaves: &[TreeNode], offset: usize, enhanced: bool) -> Vec<TreeNode> {
    if leaves.len() == 1 {
        return vec![leaves[0].clone()];
    }
    let vtype = if enhanced && offset == 0 { VertexType::Second } else { VertexType::First };
    let mut out = Vec::new();
    for split in 1..leaves.len() {
        for l in binary_over(&leaves[..split], offset, enhanced) {
            for r in binary_over(&leaves[split..], offset + split, enhanced) {
                out.push(TreeNode::Internal {
                    vtype,
                    children: vec![l.clone(), r.clone()],
                });
            }
        }
    }
    out
}

fn has_double_blank_fork(node: &TreeNode) -> bool {
    match node {
        TreeNode::Leaf { .. } => false,
        TreeNode::Internal { children, .. } => {
            let blank_leaves = children
                .iter()
                .filter(|c| matches!(c, TreeNode::Leaf { dec: None, .. }))
                .count();
            blank_leaves >= 2 || children.iter().any(has_double_blank_fork)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn poly(names: &[&str]) -> RDecoPolygon {
        RDecoPolygon::decorated(names.iter().map(|s| Atom::constant(*s)).collect()).unwrap()
    }

    #[test]
    fn two_gon_is_a_line() {
        let lc = psi(&poly(&["a", "b"]));
        assert_eq!(
            lc,
            LinComb::single(RDecoTree::line(Atom::constant("b"), Atom::constant("a")))
        );
    }

    #[test]
    fn triangle_is_a_fork() {
        let lc = psi(&poly(&["x1", "x2", "r"]));
        let expect = RDecoTree::new(
            Atom::constant("r"),
            TreeNode::internal(vec![
                TreeNode::leaf(Atom::constant("x1")),
                TreeNode::leaf(Atom::constant("x2")),
            ]),
        );
        assert_eq!(lc, LinComb::single(expect));
    }

    #[test]
    fn square_has_two_triangulations() {
        let lc = psi(&poly(&["a", "b", "c", "r"]));
        assert_eq!(lc.len(), 2);
        let comb = RDecoTree::new(
            Atom::constant("r"),
            TreeNode::internal(vec![
                TreeNode::leaf(Atom::constant("a")),
                TreeNode::internal(vec![
                    TreeNode::leaf(Atom::constant("b")),
                    TreeNode::leaf(Atom::constant("c")),
                ]),
            ]),
        );
        assert_eq!(lc.coeff(&comb), Scalar::one());
    }

    #[test]
    fn catalan_counts() {
        let expected = [1usize, 1, 2, 5, 14];
        for (m, &count) in expected.iter().enumerate() {
            let names: Vec<String> = (0..=m + 1).map(|i| format!("c{i}")).collect();
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let lc = psi(&poly(&refs));
            let total: Scalar = lc
                .iter()
                .map(|(_, c)| c.clone())
                .fold(Scalar::zero(), |a, b| a + b);
            assert_eq!(total, Scalar::from_int(count as i64));
        }
    }

    #[test]
    fn matches_independent_enumeration() {
        for names in [&["a", "b", "r"][..], &["a", "b", "c", "r"], &["a", "b", "c", "d", "r"]] {
            let p = poly(names);
            assert_eq!(psi(&p), tree_sum(&p));
        }
    }

    #[test]
    fn blank_pair_rule_drops_triangulations() {
        // [a, _, _, r]: the triangulation putting both blanks in one
        // triangle is skipped, in both implementations.
        let p = RDecoPolygon::new(vec![
            Side::Dec(Atom::constant("a")),
            Side::Blank,
            Side::Blank,
            Side::Dec(Atom::constant("r")),
        ])
        .unwrap();
        let lc = psi(&p);
        assert_eq!(lc.len(), 1);
        assert_eq!(psi(&p), tree_sum(&p));
    }

    #[test]
    fn enhanced_marks_the_left_spine() {
        let p = RDecoPolygon::new(vec![
            Side::Second(Atom::topological(0)),
            Side::Dec(Atom::constant("x1")),
            Side::Dec(Atom::constant("x2")),
            Side::Dec(Atom::constant("1")),
        ])
        .unwrap();
        let lc = psi(&p);
        assert_eq!(lc.len(), 2);
        for (t, _) in lc.iter() {
            assert!(t.root_type.is_second());
            // The leftmost internal path and the marked leaf are simplicial.
            let mut node = &t.top;
            loop {
                match node {
                    TreeNode::Internal { vtype, children } => {
                        assert!(vtype.is_second());
                        node = &children[0];
                    }
                    TreeNode::Leaf { vtype, dec } => {
                        assert!(vtype.is_second());
                        assert_eq!(dec.as_ref().map(|a| a.name()), Some("s0"));
                        break;
                    }
                }
            }
        }
    }
}
