//! From decorated trees to parametrized cycles.
//!
//! Every tree gives one cycle: internal vertices become free parameters,
//! each edge becomes the coordinate `1 - y(parent)/y(child)` of the values
//! at its ends, and an undecorated leaf turns its edge into the bare parent
//! value.  Simplicial vertices become chained variables instead of free
//! parameters: edges inside the simplicial spine contribute no coordinate,
//! only the ordering chain from the spine leaf up to the root decoration.
//!
//! The map is multiplicative, sending a wedge of trees to the product of
//! their cycles.

use std::fmt;

use crate::atom::Atom;
use crate::cycle::{Coordinate, Cycle, CycleError, Monomial};
use crate::lincomb::{LinComb, WedgeWord};
use crate::tree::{Forest, RDecoTree};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CyclingError {
    /// Simplicial vertices must form one path from the root to a leaf.
    BrokenSpine,
    Product(CycleError),
}

impl fmt::Display for CyclingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CyclingError::BrokenSpine => {
                write!(f, "simplicial vertices do not form a root-to-leaf path")
            }
            CyclingError::Product(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CyclingError {}

impl From<CycleError> for CyclingError {
    fn from(e: CycleError) -> Self {
        CyclingError::Product(e)
    }
}

/// The cycle of a single tree: zero or one canonical term.
pub fn cycle_of_tree(t: &RDecoTree) -> Result<LinComb<Cycle>, CyclingError> {
    if t.is_quotient_zero() {
        return Ok(LinComb::zero());
    }
    let a = t.arena();
    let m = a.parent.len();

    // Simplicial vertices must chain root -> ... -> one leaf.
    let second: Vec<usize> = (0..m).filter(|&v| a.vtype[v].is_second()).collect();
    let mut spine: Vec<usize> = Vec::new();
    if !second.is_empty() {
        if !a.vtype[0].is_second() {
            return Err(CyclingError::BrokenSpine);
        }
        let mut v = 0;
        spine.push(0);
        loop {
            let next: Vec<usize> = a.children[v]
                .iter()
                .copied()
                .filter(|&w| a.vtype[w].is_second())
                .collect();
            match next.len() {
                0 => break,
                1 => {
                    v = next[0];
                    spine.push(v);
                }
                _ => return Err(CyclingError::BrokenSpine),
            }
        }
        if spine.len() != second.len() {
            return Err(CyclingError::BrokenSpine);
        }
        let tip = *spine.last().unwrap();
        if !a.children[tip].is_empty() || a.dec[tip].is_none() {
            return Err(CyclingError::BrokenSpine);
        }
    }

    // Vertex values: free parameters on ordinary internal vertices in
    // preorder, chained simplicial variables counted from the spine tip.
    let mut value: Vec<Option<Atom>> = vec![None; m];
    value[0] = Some(t.root_dec.clone());
    let mut next_param = 0usize;
    for v in 1..m {
        value[v] = if a.children[v].is_empty() {
            a.dec[v].clone()
        } else if a.vtype[v].is_second() {
            let pos_from_tip = spine.len() - 1 - spine.iter().position(|&s| s == v).unwrap();
            Some(Atom::topological(pos_from_tip))
        } else {
            next_param += 1;
            Some(Atom::parameter(next_param))
        };
    }

    let mut coords = Vec::new();
    for w in 1..m {
        let v = a.parent[w];
        if a.vtype[v].is_second() && a.vtype[w].is_second() {
            continue;
        }
        let yv = value[v].clone().expect("internal vertices are valued");
        match &value[w] {
            Some(yw) => coords.push(Coordinate::one_minus(Monomial::ratio(yv, yw.clone()))),
            None => coords.push(Coordinate::plain(Monomial::atom(yv))),
        }
    }

    // Chain from the spine tip up to the root decoration.
    let chain: Vec<Atom> =
        spine.iter().rev().map(|&v| value[v].clone().unwrap()).collect();

    Ok(Cycle::normal_form(coords, chain))
}

/// Product of the cycles of the factors, in wedge order.
pub fn cycle_of_forest(w: &Forest) -> Result<LinComb<Cycle>, CyclingError> {
    let mut acc: LinComb<Cycle> = LinComb::single(unit_cycle());
    for tree in w.factors() {
        let image = cycle_of_tree(tree)?;
        let mut next = LinComb::zero();
        for (z, c) in acc.iter() {
            for (zt, ct) in image.iter() {
                next.add_assign(z.concat(zt)?.scaled(&(c.clone() * ct.clone())));
            }
        }
        acc = next;
    }
    Ok(acc)
}

pub fn cycle_of_forest_lincomb(lc: &LinComb<Forest>) -> Result<LinComb<Cycle>, CyclingError> {
    let mut out = LinComb::zero();
    for (w, c) in lc.iter() {
        out.add_assign(cycle_of_forest(w)?.scaled(c));
    }
    Ok(out)
}

fn unit_cycle() -> Cycle {
    let lc = Cycle::normal_form(Vec::new(), Vec::new());
    let (z, _) = lc.iter().next().expect("empty cycle is canonical");
    z.clone()
}

/// Hang bar letters on the simplicial spine of an enhanced head tree: each
/// letter contributes one new spine vertex above the previous top, carrying
/// the letter's factors (minus their roots) as extra children.  The first
/// letter sits deepest.
pub fn graft(head: &RDecoTree, letters: &[WedgeWord<RDecoTree>]) -> RDecoTree {
    use crate::tree::{TreeNode, VertexType};
    let mut top = head.top.clone();
    for letter in letters {
        let mut children = vec![top];
        for factor in letter.factors() {
            children.push(factor.top.clone());
        }
        top = TreeNode::Internal { vtype: VertexType::Second, children };
    }
    RDecoTree::with_root_type(head.root_dec.clone(), VertexType::Second, top)
}

/// Coordinate count and free-parameter count expected from the shape of a
/// tree: edges outside the spine, and ordinary internal vertices.
pub fn expected_bigrading(t: &RDecoTree) -> (usize, usize) {
    let a = t.arena();
    let m = a.parent.len();
    let spine_edges = (1..m)
        .filter(|&w| a.vtype[a.parent[w]].is_second() && a.vtype[w].is_second())
        .count();
    let free = (1..m)
        .filter(|&v| !a.children[v].is_empty() && !a.vtype[v].is_second())
        .count();
    (t.edge_count() - spine_edges, free)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{TreeNode, VertexType};

    fn c(name: &str) -> Atom {
        Atom::constant(name)
    }

    fn fork(root: &str, l1: &str, l2: &str) -> RDecoTree {
        RDecoTree::new(
            c(root),
            TreeNode::internal(vec![TreeNode::leaf(c(l1)), TreeNode::leaf(c(l2))]),
        )
    }

    fn canon(coords: Vec<Coordinate>, chain: Vec<Atom>) -> LinComb<Cycle> {
        Cycle::normal_form(coords, chain)
    }

    fn om(a: Atom, b: Atom) -> Coordinate {
        Coordinate::one_minus(Monomial::ratio(a, b))
    }

    #[test]
    fn two_variable_fork() {
        let t = fork("1", "x1", "x2");
        let got = cycle_of_tree(&t).unwrap();
        let p = Atom::parameter(1);
        let expect = canon(
            vec![
                om(Atom::one(), p.clone()),
                om(p.clone(), c("x1")),
                om(p.clone(), c("x2")),
            ],
            vec![],
        );
        assert_eq!(got, expect);
        assert!(!got.is_zero());
    }

    #[test]
    fn equal_decorations_vanish() {
        let t = fork("1", "x", "x");
        assert!(cycle_of_tree(&t).unwrap().is_zero());
    }

    #[test]
    fn blank_leaf_gives_plain_parameter() {
        let t = RDecoTree::new(
            c("1"),
            TreeNode::internal(vec![TreeNode::leaf(c("x")), TreeNode::blank()]),
        );
        let p = Atom::parameter(1);
        let expect = canon(
            vec![
                om(Atom::one(), p.clone()),
                om(p.clone(), c("x")),
                Coordinate::plain(Monomial::atom(p.clone())),
            ],
            vec![],
        );
        assert_eq!(cycle_of_tree(&t).unwrap(), expect);
    }

    #[test]
    fn simplicial_spine_builds_chain() {
        // Root s3 over a spine s2, s1 ending in the leaf s0, with ordinary
        // branches a1 and (a2, (a3, a4)).
        let s = Atom::topological;
        let t = RDecoTree::with_root_type(
            s(3),
            VertexType::Second,
            TreeNode::internal_second(vec![
                TreeNode::internal_second(vec![
                    TreeNode::second_leaf(s(0)),
                    TreeNode::leaf(c("a1")),
                ]),
                TreeNode::internal(vec![
                    TreeNode::leaf(c("a2")),
                    TreeNode::internal(vec![TreeNode::leaf(c("a3")), TreeNode::leaf(c("a4"))]),
                ]),
            ]),
        );
        let (t1, t2) = (Atom::parameter(1), Atom::parameter(2));
        let expect = canon(
            vec![
                om(s(1), c("a1")),
                om(s(2), t1.clone()),
                om(t1.clone(), c("a2")),
                om(t1.clone(), t2.clone()),
                om(t2.clone(), c("a3")),
                om(t2.clone(), c("a4")),
            ],
            vec![s(0), s(1), s(2), s(3)],
        );
        let got = cycle_of_tree(&t).unwrap();
        assert_eq!(got, expect);
        let (z, _) = got.iter().next().unwrap();
        assert_eq!(z.chain().len(), 4);
        assert_eq!(expected_bigrading(&t), (6, 2));
        assert_eq!(z.ambient(), 6);
        assert_eq!(z.dimension(), 2);
    }

    #[test]
    fn spine_must_be_a_path() {
        let t = RDecoTree::with_root_type(
            c("1"),
            VertexType::Second,
            TreeNode::internal(vec![TreeNode::leaf(c("x")), TreeNode::leaf(c("y"))]),
        );
        // Root marked but no spine leaf below it.
        assert_eq!(cycle_of_tree(&t), Err(CyclingError::BrokenSpine));
    }

    #[test]
    fn chain_map_on_the_fork() {
        let t = fork("1", "x1", "x2");
        let lhs = cycle_of_forest_lincomb(&t.differential()).unwrap();
        let mut rhs = LinComb::zero();
        for (z, coeff) in cycle_of_tree(&t).unwrap().iter() {
            rhs.add_assign(z.boundary().unwrap().scaled(coeff));
        }
        assert_eq!(lhs, rhs);
        assert!(!lhs.is_zero());
    }

    #[test]
    fn graft_reproduces_spine_shape() {
        let head = RDecoTree::with_root_type(
            c("1"),
            VertexType::Second,
            TreeNode::internal_second(vec![
                TreeNode::second_leaf(Atom::topological(0)),
                TreeNode::leaf(c("a1")),
            ]),
        );
        let letter = WedgeWord::single(RDecoTree::new(
            c("r"),
            TreeNode::internal(vec![
                TreeNode::leaf(c("a2")),
                TreeNode::internal(vec![TreeNode::leaf(c("a3")), TreeNode::leaf(c("a4"))]),
            ]),
        ));
        let grafted = graft(&head, &[letter]);
        assert_eq!(grafted.edge_count(), 9);
        let got = cycle_of_tree(&grafted).unwrap();
        // Matches the hand-built spine tree up to the root decoration.
        let (z, _) = got.iter().next().unwrap();
        assert_eq!(z.ambient(), 6);
        assert_eq!(z.chain().len(), 4);
        assert_eq!(z.chain()[3], c("1"));
    }
}
