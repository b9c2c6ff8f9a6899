//! Multi-arrow dissections of a decorated polygon.
//!
//! Arrows are modelled as closed intervals on the boundary circle.  The
//! circle is scaled so that every corner and every landing point of every
//! possible arrow is a distinct integer, with all arrows landing on one side
//! clustered near its midpoint in a fixed order.  Two arrows are compatible
//! when their intervals are nested, disjoint, or touch in a single point;
//! with the chosen landing order this reproduces non-crossing of the chords,
//! counting chords that fan out of a shared corner as non-crossing.
//!
//! A dissection splits the polygon into regions: one for each arrow
//! (bounded by that arrow and the arrows immediately nested inside it) and
//! one root region containing the original root side.  Each region is again
//! a decorated polygon whose root side is the piece cut by its own arrow.

use std::collections::HashMap;

use crate::polygon::{Arrow, RDecoPolygon, Side};

/// Interval of an arrow on the scaled circle `[0, 2nm]`, `m = 2n + 2`.
fn arc(arrow: &Arrow, n: usize) -> (i64, i64) {
    let m = 2 * n as i64 + 2;
    let v = arrow.vertex as i64;
    let t = arrow.target as i64;
    let pos = (2 * v - (2 * t + 2)).rem_euclid(2 * n as i64);
    let land = (2 * t + 1) * m - pos;
    if arrow.backward() {
        (land, 2 * v * m)
    } else {
        (2 * v * m, land)
    }
}

/// Chords do not cross (nesting and sharing a start corner allowed).
pub fn compatible(a: &Arrow, b: &Arrow, n: usize) -> bool {
    if a == b {
        return false;
    }
    let (a1, b1) = arc(a, n);
    let (a2, b2) = arc(b, n);
    !((a1 < a2 && a2 < b1 && b1 < b2) || (a2 < a1 && a1 < b2 && b2 < b1))
}

/// Chords cut off non-overlapping pieces: the intervals meet in at most a
/// point.
pub fn independent(a: &Arrow, b: &Arrow, n: usize) -> bool {
    if a == b {
        return false;
    }
    let (a1, b1) = arc(a, n);
    let (a2, b2) = arc(b, n);
    a1.max(a2) >= b1.min(b2)
}

fn pairwise_subsets(arrows: &[Arrow], n: usize, pred: fn(&Arrow, &Arrow, usize) -> bool) -> Vec<Vec<Arrow>> {
    let mut out = vec![Vec::new()];
    let mut stack: Vec<(usize, Vec<Arrow>)> = vec![(0, Vec::new())];
    while let Some((from, chosen)) = stack.pop() {
        for i in from..arrows.len() {
            if chosen.iter().all(|c| pred(c, &arrows[i], n)) {
                let mut next = chosen.clone();
                next.push(arrows[i].clone());
                out.push(next.clone());
                stack.push((i + 1, next));
            }
        }
    }
    out
}

/// Every compatible arrow set, including the empty one.
pub fn all_dissections(p: &RDecoPolygon) -> Vec<Vec<Arrow>> {
    pairwise_subsets(&p.arrows(), p.len(), compatible)
}

/// Every pairwise independent arrow set, including the empty one.
pub fn independent_dissections(p: &RDecoPolygon) -> Vec<Vec<Arrow>> {
    pairwise_subsets(&p.arrows(), p.len(), independent)
}

/// One region of a dissection, together with its place in the nesting
/// forest of the arrows.
#[derive(Clone, Debug)]
pub struct RegionPart {
    pub arrow: Arrow,
    pub body: RDecoPolygon,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct DissectionRegions {
    pub root: RDecoPolygon,
    pub parts: Vec<RegionPart>,
}

impl DissectionRegions {
    /// Indices of arrows not nested inside any other arrow.
    pub fn top_level(&self) -> Vec<usize> {
        (0..self.parts.len())
            .filter(|&i| self.parts[i].parent.is_none())
            .collect()
    }

    /// Product over backward arrows of `(-1)^(weight of their region)`.
    pub fn sign(&self) -> i8 {
        let mut s = 1i8;
        for part in &self.parts {
            if part.arrow.backward() && part.body.weight() % 2 == 1 {
                s = -s;
            }
        }
        s
    }

    /// Some region is a vanishing quotient class.
    pub fn quotient_zero(&self) -> bool {
        self.root.quotient_zero() || self.parts.iter().any(|p| p.body.quotient_zero())
    }
}

/// Split `p` along a compatible arrow set.  With `bar` set, backward
/// regions list their non-root sides in reversed order.
pub fn regions(p: &RDecoPolygon, arrows: &[Arrow], bar: bool) -> DissectionRegions {
    let n = p.len();
    let m = 2 * n as i64 + 2;
    let arcs: Vec<(i64, i64)> = arrows.iter().map(|a| arc(a, n)).collect();

    // Refine the circle: sides split at every landing point.
    let mut cuts: Vec<Vec<i64>> = vec![Vec::new(); n];
    for (a, &(lo, hi)) in arrows.iter().zip(&arcs) {
        cuts[a.target].push(if a.backward() { lo } else { hi });
    }
    let mut pieces: Vec<((i64, i64), usize)> = Vec::new();
    for s in 0..n {
        let start = 2 * s as i64 * m;
        let end = start + 2 * m;
        let mut pts = cuts[s].clone();
        pts.sort_unstable();
        let mut prev = start;
        for pt in pts {
            pieces.push(((prev, pt), s));
            prev = pt;
        }
        pieces.push(((prev, end), s));
    }

    // Nesting forest: parent = tightest strictly containing interval.
    let contains = |outer: (i64, i64), inner: (i64, i64)| {
        outer != inner && outer.0 <= inner.0 && inner.1 <= outer.1
    };
    let mut parent: Vec<Option<usize>> = vec![None; arrows.len()];
    for i in 0..arrows.len() {
        let mut best: Option<usize> = None;
        for j in 0..arrows.len() {
            if contains(arcs[j], arcs[i])
                && best.map_or(true, |b| contains(arcs[b], arcs[j]))
            {
                best = Some(j);
            }
        }
        parent[i] = best;
    }
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); arrows.len()];
    for i in 0..arrows.len() {
        if let Some(pa) = parent[i] {
            children[pa].push(i);
        }
    }

    let piece_in = |piece: (i64, i64), arc: (i64, i64)| arc.0 <= piece.0 && piece.1 <= arc.1;
    let side_of = |s: usize| p.sides()[s].clone();

    let mut parts = Vec::with_capacity(arrows.len());
    for i in 0..arrows.len() {
        let mut walk: Vec<Side> = Vec::new();
        for &(iv, s) in &pieces {
            if piece_in(iv, arcs[i]) && !children[i].iter().any(|&c| piece_in(iv, arcs[c])) {
                walk.push(side_of(s));
            }
        }
        debug_assert!(walk.len() >= 2, "region degenerated to a single side");
        let body = if arrows[i].backward() {
            let root = walk.remove(0);
            if bar {
                walk.reverse();
            }
            walk.push(root);
            RDecoPolygon::from_sides_unchecked(walk)
        } else {
            RDecoPolygon::from_sides_unchecked(walk)
        };
        parts.push(RegionPart {
            arrow: arrows[i].clone(),
            body,
            parent: parent[i],
            children: children[i].clone(),
        });
    }

    let mut root_walk: Vec<Side> = Vec::new();
    for &(iv, s) in &pieces {
        let covered = (0..arrows.len())
            .filter(|&i| parent[i].is_none())
            .any(|i| piece_in(iv, arcs[i]));
        if !covered {
            root_walk.push(side_of(s));
        }
    }
    debug_assert!(root_walk.len() >= 2, "root region degenerated");
    DissectionRegions {
        root: RDecoPolygon::from_sides_unchecked(root_walk),
        parts,
    }
}

/// Dissection counts by a left-to-right sweep, independent of the interval
/// enumeration above.
///
/// Arrows appear as bracket pairs on the `2n` corner/side stations of the
/// linearized circle: a forward arrow opens at its corner (even station) and
/// closes at its target side (odd station), a backward arrow opens at its
/// target side and closes at its corner.  Compatibility is last-in
/// first-out closing, with shared stations free.  `independent_only`
/// restricts to at most one open arrow, closing before opening.
pub fn sweep_count(n: usize, enhanced: bool, independent_only: bool) -> u64 {
    // Stations after `pos` where an arc opened at `s` may close.  Arcs
    // spanning the whole strip would join corner 0 to its own incident root
    // side; no arrow does that.
    fn ends_ahead(s: usize, pos: usize, n: usize) -> usize {
        (pos + 1..2 * n)
            .filter(|&q| (q + s) % 2 == 1 && q - s >= 3 && !(s == 0 && q == 2 * n - 1))
            .count()
    }

    // Arcs sharing a start must close at pairwise distinct stations.
    fn feasible(stack: &[usize], pos: usize, n: usize) -> bool {
        stack
            .iter()
            .all(|&s| stack.iter().filter(|&&t| t == s).count() <= ends_ahead(s, pos, n))
    }

    fn go(
        pos: usize,
        stack: Vec<usize>,
        n: usize,
        enhanced: bool,
        independent_only: bool,
        memo: &mut HashMap<(usize, Vec<usize>), u64>,
    ) -> u64 {
        if pos == 2 * n {
            return if stack.is_empty() { 1 } else { 0 };
        }
        let key = (pos, stack);
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let stack = &key.1;
        let mut total = 0u64;
        let max_close = if independent_only {
            stack.len().min(1)
        } else {
            stack.len()
        };
        for k in 0..=max_close {
            // Closing the top k arcs here needs opposite parity, span >= 3
            // and pairwise distinct starts (equal starts would duplicate an
            // arrow).
            let closed = &stack[stack.len() - k..];
            let ok = closed
                .iter()
                .all(|&s| (s + pos) % 2 == 1 && pos - s >= 3 && !(s == 0 && pos == 2 * n - 1))
                && closed.iter().enumerate().all(|(a, &s)| closed[a + 1..].iter().all(|&t| t != s));
            if !ok {
                continue;
            }
            let kept: Vec<usize> = stack[..stack.len() - k].to_vec();
            let max_open = if independent_only {
                if kept.is_empty() { 1 } else { 0 }
            } else {
                ends_ahead(pos, pos, n)
            };
            for open in 0..=max_open {
                if open > 0 && enhanced && pos <= 1 {
                    continue;
                }
                let mut next = kept.clone();
                next.extend(std::iter::repeat(pos).take(open));
                if !feasible(&next, pos, n) {
                    break;
                }
                total += go(pos + 1, next, n, enhanced, independent_only, memo);
            }
        }
        memo.insert(key, total);
        total
    }
    go(0, Vec::new(), n, enhanced, independent_only, &mut HashMap::new())
}
