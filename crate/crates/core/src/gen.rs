//! Seeded generators and exhaustive shape enumeration for the
//! verification suites.  Everything is driven by an explicit ChaCha
//! stream so failures replay from a seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::atom::Atom;
use crate::dissect::compatible;
use crate::lincomb::WedgeWord;
use crate::polygon::{Arrow, RDecoPolygon, Side};
use crate::tree::{RDecoTree, TreeNode, VertexType};

/// Seed from the `POLYLOG_SEED` environment variable, or the default.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var("POLYLOG_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(default)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every plane subtree shape with `m` edges below one vertex; `m == 0` is
/// a leaf.  Internal vertices branch, so `m == 1` yields nothing and the
/// counts follow the Riordan numbers.
fn node_shapes(m: usize) -> Vec<TreeNode> {
    if m == 0 {
        return vec![TreeNode::blank()];
    }
    let mut out = Vec::new();
    // First child takes 1 + k edges, the rest of the forest recurses.
    fn forests(m: usize) -> Vec<Vec<TreeNode>> {
        if m == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for k in 0..m {
            for child in node_shapes(k) {
                for rest in forests(m - 1 - k) {
                    let mut f = vec![child.clone()];
                    f.extend(rest);
                    out.push(f);
                }
            }
        }
        out
    }
    for f in forests(m) {
        if f.len() >= 2 {
            out.push(TreeNode::internal(f));
        }
    }
    out
}

/// All plane tree shapes with the given edge count, leaves decorated
/// `x1, x2, ..` in traversal order and root decorated `r`.
pub fn tree_shapes(edges: usize) -> Vec<RDecoTree> {
    assert!(edges >= 1);
    node_shapes(edges - 1)
        .into_iter()
        .map(|top| {
            let mut t = RDecoTree::new(Atom::constant("r"), top);
            let mut next = 0usize;
            relabel(&mut t.top, &mut |_| {
                next += 1;
                Some(Atom::constant(format!("x{next}")))
            });
            t
        })
        .collect()
}

/// Rewrite every leaf decoration; `None` blanks the leaf.
pub fn relabel(node: &mut TreeNode, f: &mut impl FnMut(usize) -> Option<Atom>) {
    fn go(node: &mut TreeNode, idx: &mut usize, f: &mut impl FnMut(usize) -> Option<Atom>) {
        match node {
            TreeNode::Leaf { dec, .. } => {
                *dec = f(*idx);
                *idx += 1;
            }
            TreeNode::Internal { children, .. } => {
                for c in children {
                    go(c, idx, f);
                }
            }
        }
    }
    go(node, &mut 0, f)
}

/// Random plane tree with `edges` edges; leaves blank with the given
/// probability, occasionally repeating a decoration.  A two-edge request
/// is impossible (the single interior vertex could not branch) and rounds
/// up to three.
pub fn random_tree(r: &mut ChaCha8Rng, edges: usize, blank_prob: f64) -> RDecoTree {
    fn random_node(r: &mut ChaCha8Rng, m: usize) -> TreeNode {
        if m == 0 {
            return TreeNode::blank();
        }
        let mut left = m;
        let mut children = Vec::new();
        while left > 0 {
            // A child spends one edge to attach plus zero or at least two
            // below itself, and the first child must leave room for a sibling.
            let takes: Vec<usize> = std::iter::once(1)
                .chain(3..=left)
                .filter(|&t| !(children.is_empty() && t == left))
                .collect();
            let take = takes[r.gen_range(0..takes.len())];
            children.push(random_node(r, take - 1));
            left -= take;
        }
        TreeNode::internal(children)
    }
    let edges = match edges {
        0 | 1 => 1,
        2 => 3,
        e => e,
    };
    let mut t = RDecoTree::new(Atom::constant("r"), random_node(r, edges - 1));
    let mut pool: Vec<Atom> = Vec::new();
    relabel(&mut t.top, &mut |i| {
        if r.gen_bool(blank_prob) {
            None
        } else if !pool.is_empty() && r.gen_bool(0.15) {
            Some(pool[r.gen_range(0..pool.len())].clone())
        } else {
            let a = Atom::constant(format!("x{}", i + 1));
            pool.push(a.clone());
            Some(a)
        }
    });
    t
}

/// Random wedge word of one to three trees.
pub fn random_forest(r: &mut ChaCha8Rng, max_edges: usize) -> WedgeWord<RDecoTree> {
    let n = r.gen_range(1..=3);
    let mut factors = Vec::new();
    for i in 0..n {
        let e = r.gen_range(1..=max_edges);
        let mut t = random_tree(r, e, 0.15);
        t.root_dec = Atom::constant(format!("r{i}"));
        factors.push(t);
    }
    WedgeWord::normalize(factors)
        .into_terms()
        .next()
        .map(|(w, _)| w)
        .unwrap_or_else(WedgeWord::unit)
}

/// Random polygon on `n` sides; interior sides may blank, the first side
/// carries the mark when `enhanced`.
pub fn random_polygon(
    r: &mut ChaCha8Rng,
    n: usize,
    blank_prob: f64,
    enhanced: bool,
) -> RDecoPolygon {
    let mut sides = Vec::with_capacity(n);
    for i in 0..n {
        let a = Atom::constant(format!("x{}", i + 1));
        if i == 0 && enhanced {
            sides.push(Side::Second(a));
        } else if i > 0 && i + 1 < n && r.gen_bool(blank_prob) {
            sides.push(Side::Blank);
        } else {
            sides.push(Side::Dec(a));
        }
    }
    RDecoPolygon::new(sides).unwrap()
}

/// Random compatible arrow set, grown greedily over a shuffled arrow
/// order.
pub fn random_dissection(r: &mut ChaCha8Rng, p: &RDecoPolygon, keep_prob: f64) -> Vec<Arrow> {
    let mut arrows = p.arrows();
    arrows.shuffle(r);
    let n = p.len();
    let mut chosen: Vec<Arrow> = Vec::new();
    for a in arrows {
        if r.gen_bool(keep_prob) && chosen.iter().all(|c| compatible(c, &a, n)) {
            chosen.push(a);
        }
    }
    chosen
}

/// Random spine-marked tree: a second-type path from the root down to a
/// decorated tip, with ordinary subtrees grafted along it.
pub fn random_spine_tree(r: &mut ChaCha8Rng, segments: usize, max_edges: usize) -> RDecoTree {
    let mut top = TreeNode::second_leaf(Atom::topological(0));
    for _ in 0..segments {
        let mut children = vec![top];
        let extra = r.gen_range(1..=2);
        for _ in 0..extra {
            let e = r.gen_range(1..=max_edges);
            let t = random_tree(r, e, 0.0);
            children.push(t.top);
        }
        top = TreeNode::internal_second(children);
    }
    RDecoTree::with_root_type(Atom::one(), VertexType::Second, top)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_counts_follow_the_riordan_numbers() {
        let counts: Vec<usize> = (1..=7).map(|n| tree_shapes(n).len()).collect();
        assert_eq!(counts, vec![1, 0, 1, 1, 3, 6, 15]);
    }

    #[test]
    fn shapes_are_distinct_and_well_formed() {
        let shapes = tree_shapes(7);
        for t in &shapes {
            assert!(t.well_formed());
            assert_eq!(t.edge_count(), 7);
        }
        let mut keys: Vec<String> = shapes.iter().map(|t| format!("{t}")).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), shapes.len());
    }

    #[test]
    fn generators_replay_from_a_seed() {
        let mut a = rng(7);
        let mut b = rng(7);
        for _ in 0..5 {
            assert_eq!(
                format!("{}", random_tree(&mut a, 4, 0.2)),
                format!("{}", random_tree(&mut b, 4, 0.2))
            );
        }
        let p = random_polygon(&mut a, 5, 0.2, false);
        assert_eq!(p.len(), 5);
        let d = random_dissection(&mut a, &p, 0.6);
        let n = p.len();
        for i in 0..d.len() {
            for j in i + 1..d.len() {
                assert!(compatible(&d[i], &d[j], n));
            }
        }
    }

    #[test]
    fn spine_trees_pass_the_shape_checks() {
        let mut r = rng(11);
        for _ in 0..10 {
            let t = random_spine_tree(&mut r, 2, 2);
            assert!(t.well_formed());
            assert!(crate::cycling::cycle_of_tree(&t).is_ok());
        }
    }
}
