//! Bar words over polygon wedges: the dissection series of a polygon, the
//! tensor differential acting on it, and the coproducts that slice it.
//!
//! A bar word is a tensor string of letters, each letter a wedge word of
//! polygons.  The series of a polygon has one word per dissection and per
//! admissible ordering of the dissection's nesting forest; the root region
//! always leads.  Backward arrows contribute the parity of their region's
//! weight as a sign and list their non-root sides reversed, matching the
//! reversing variant of the polygon differential.

use crate::dissect::{all_dissections, independent_dissections, regions, DissectionRegions};
use crate::lincomb::{shuffle, LinComb, TensorWord, WedgeWord};
use crate::polygon::{wedge_differential, RDecoPolygon};
use crate::scalar::Scalar;

pub type Letter = WedgeWord<RDecoPolygon>;
pub type BarWord = TensorWord<Letter>;
/// Left/right slices of a bar word under a coproduct.
pub type BarTensor = (BarWord, BarWord);

fn parity_sign(k: usize) -> Scalar {
    Scalar::from_sign(if k % 2 == 0 { 1 } else { -1 })
}

/// Differential on bar words: the reversing wedge differential inside each
/// letter plus wedge merges of adjacent letters.  Slot signs follow the
/// letter weights (exterior degree plus one) accumulated to the left, with
/// one extra flip on merges; this is exactly the bookkeeping that makes
/// the total square vanish for letters of arbitrary length.
pub fn bar_differential(word: &BarWord) -> LinComb<BarWord> {
    let letters = word.letters();
    let n = letters.len();
    let mut out = LinComb::zero();
    let mut before = 0usize;
    for j in 0..n {
        let weight = letters[j].total_degree() + 1;
        for (img, c) in wedge_differential(&letters[j], true).iter() {
            let mut ls = letters.to_vec();
            ls[j] = img.clone();
            out.add_term(TensorWord::new(ls), c.clone() * parity_sign(before));
        }
        if j + 1 < n {
            for (merged, c) in WedgeWord::concat(&letters[j], &letters[j + 1]).iter() {
                let mut ls = Vec::with_capacity(n - 1);
                ls.extend_from_slice(&letters[..j]);
                ls.push(merged.clone());
                ls.extend_from_slice(&letters[j + 2..]);
                out.add_term(TensorWord::new(ls), c.clone() * parity_sign(before + weight + 1));
            }
        }
        before += weight;
    }
    out
}

pub fn bar_differential_lincomb(v: &LinComb<BarWord>) -> LinComb<BarWord> {
    let mut out = LinComb::zero();
    for (w, c) in v.iter() {
        out.add_assign(bar_differential(w).scaled(c));
    }
    out
}

/// Orderings of the parts in which every arrow comes before the arrows
/// nested inside it.
fn part_orders(r: &DissectionRegions) -> Vec<Vec<usize>> {
    fn go(
        r: &DissectionRegions,
        used: &mut Vec<bool>,
        acc: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if acc.len() == r.parts.len() {
            out.push(acc.clone());
            return;
        }
        for i in 0..r.parts.len() {
            if used[i] || !r.parts[i].parent.map_or(true, |pa| used[pa]) {
                continue;
            }
            used[i] = true;
            acc.push(i);
            go(r, used, acc, out);
            acc.pop();
            used[i] = false;
        }
    }
    let mut out = Vec::new();
    go(r, &mut vec![false; r.parts.len()], &mut Vec::new(), &mut out);
    out
}

/// Dissection series of a polygon: one word per compatible arrow set and
/// per admissible part order, the root region leading, weighted by the
/// parity sign of the backward regions.  Dissections with a vanishing
/// quotient region are dropped.  Marked polygons restrict to arrows that
/// keep the marked side in the root region, so the mark stays in the
/// first letter throughout the series.
pub fn bar_of_polygon(p: &RDecoPolygon) -> LinComb<BarWord> {
    let mut out = LinComb::zero();
    for d in all_dissections(p) {
        let r = regions(p, &d, true);
        if r.quotient_zero() {
            continue;
        }
        let coeff = Scalar::from_sign(r.sign());
        for order in part_orders(&r) {
            let mut letters = vec![Letter::single(r.root.clone())];
            letters.extend(order.iter().map(|&i| Letter::single(r.parts[i].body.clone())));
            out.add_term(TensorWord::new(letters), coeff.clone());
        }
    }
    out
}

/// Split a bar word in two at every position, both trivial slices
/// included.
pub fn deconcat(word: &BarWord) -> LinComb<BarTensor> {
    let ls = word.letters();
    (0..=ls.len())
        .map(|k| {
            let pair = (TensorWord::new(ls[..k].to_vec()), TensorWord::new(ls[k..].to_vec()));
            (pair, Scalar::one())
        })
        .collect()
}

pub fn deconcat_lincomb(v: &LinComb<BarWord>) -> LinComb<BarTensor> {
    v.clone().flat_map(|w| deconcat(&w))
}

fn shuffle_lincomb(a: LinComb<BarWord>, b: &LinComb<BarWord>) -> LinComb<BarWord> {
    let mut out = LinComb::zero();
    for (x, cx) in a.iter() {
        for (y, cy) in b.iter() {
            out.add_assign(shuffle(x, y).scaled(&(cx.clone() * cy.clone())));
        }
    }
    out
}

/// Slices cut out by pairwise independent arrow sets: the series of the
/// root region on the left, the shuffled series of the cut regions on the
/// right.  The empty set contributes the whole series against the unit.
fn dissection_slices(p: &RDecoPolygon) -> LinComb<BarTensor> {
    let mut out = LinComb::zero();
    for d in independent_dissections(p) {
        let r = regions(p, &d, true);
        if r.quotient_zero() {
            continue;
        }
        let coeff = Scalar::from_sign(r.sign());
        let left = bar_of_polygon(&r.root);
        let mut right = LinComb::single(BarWord::unit());
        for part in &r.parts {
            right = shuffle_lincomb(right, &bar_of_polygon(&part.body));
        }
        for (lw, lc) in left.iter() {
            for (rw, rc) in right.iter() {
                out.add_term((lw.clone(), rw.clone()), lc.clone() * rc.clone() * coeff.clone());
            }
        }
    }
    out
}

/// Coproduct of a polygon's series: the trivial left slice plus one slice
/// per independent dissection.  Equal to splitting each word of the
/// series at every position.
pub fn coproduct_adm(p: &RDecoPolygon) -> LinComb<BarTensor> {
    let mut out: LinComb<BarTensor> = bar_of_polygon(p)
        .into_terms()
        .map(|(w, c)| ((BarWord::unit(), w), c))
        .collect();
    out.add_assign(dissection_slices(p));
    out
}

/// Coaction for a marked polygon: the marked root region always stays on
/// the left, so there is no trivial left slice.
pub fn coaction_enh(p: &RDecoPolygon) -> LinComb<BarTensor> {
    debug_assert!(p.is_enhanced());
    dissection_slices(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atom::Atom;
    use crate::polygon::tests::poly;
    use crate::polygon::Side;

    fn word(letters: &[&[&str]]) -> BarWord {
        TensorWord::new(letters.iter().map(|ls| Letter::single(poly(ls))).collect())
    }

    #[test]
    fn triangle_series() {
        let p = poly(&["1", "2", "3"]);
        let mut expect = LinComb::zero();
        expect.add_term(word(&[&["1", "2", "3"]]), Scalar::one());
        expect.add_term(word(&[&["1", "3"], &["2", "3"]]), Scalar::one());
        expect.add_term(word(&[&["2", "3"], &["1", "2"]]), Scalar::one());
        expect.add_term(word(&[&["1", "3"], &["2", "1"]]), Scalar::from_sign(-1));
        assert_eq!(bar_of_polygon(&p), expect);
    }

    #[test]
    fn square_series_counts_and_signs() {
        let p = poly(&["1", "2", "3", "4"]);
        let b = bar_of_polygon(&p);
        let by_len = |k: usize| b.iter().filter(|(w, _)| w.len() == k).count();
        assert_eq!(by_len(1), 1);
        assert_eq!(by_len(2), 8);
        assert_eq!(by_len(3), 15);
        assert_eq!(b.len(), 24);

        let sizes: Vec<usize> = all_dissections(&p).iter().map(Vec::len).collect();
        assert_eq!(sizes.iter().filter(|&&s| s == 2).count(), 12);
        assert_eq!(sizes.iter().max(), Some(&2));

        assert_eq!(b.coeff(&word(&[&["1", "4"], &["3", "2", "1"]])), Scalar::one());
        assert_eq!(b.coeff(&word(&[&["1", "2", "4"], &["3", "2"]])), Scalar::from_sign(-1));
        assert_eq!(b.coeff(&word(&[&["1", "4"], &["3", "4"], &["2", "3"]])), Scalar::one());
        assert_eq!(b.coeff(&word(&[&["1", "4"], &["2", "4"], &["3", "4"]])), Scalar::one());
        assert_eq!(b.coeff(&word(&[&["2", "4"], &["1", "2"], &["3", "2"]])), Scalar::from_sign(-1));
        assert_eq!(b.coeff(&word(&[&["1", "4"], &["2", "1"], &["3", "4"]])), Scalar::from_sign(-1));
    }

    #[test]
    fn series_is_closed_under_the_differential() {
        for names in [&["1", "2", "3"][..], &["1", "2", "3", "4"][..]] {
            let p = poly(names);
            let d = bar_differential_lincomb(&bar_of_polygon(&p));
            assert!(d.is_zero(), "leftover: {d}");
        }
    }

    #[test]
    fn differential_squares_to_zero_on_long_letters() {
        let t1 = poly(&["1", "2", "3"]);
        let t2 = poly(&["2", "4", "5"]);
        let g = poly(&["1", "5"]);
        for w in [
            TensorWord::new(vec![Letter::single(t1.clone()), Letter::single(t2.clone())]),
            TensorWord::new(vec![
                Letter::single(g.clone()),
                WedgeWord::normalize(vec![t1.clone(), t2.clone()])
                    .iter()
                    .next()
                    .map(|(w, _)| w.clone())
                    .unwrap(),
                Letter::single(t1.clone()),
            ]),
        ] {
            let dd = bar_differential_lincomb(&bar_differential(&w));
            assert!(dd.is_zero(), "square leftover: {dd}");
        }
    }

    #[test]
    fn coproduct_matches_deconcatenation() {
        for names in [&["1", "2", "3"][..], &["1", "2", "3", "4"][..]] {
            let p = poly(names);
            assert_eq!(coproduct_adm(&p), deconcat_lincomb(&bar_of_polygon(&p)));
        }
    }

    #[test]
    fn marked_coaction_keeps_the_mark_left() {
        let p = RDecoPolygon::new(vec![
            Side::Second(Atom::constant("a")),
            Side::Dec(Atom::constant("b")),
            Side::Dec(Atom::constant("c")),
            Side::Dec(Atom::constant("r")),
        ])
        .unwrap();
        let b = bar_of_polygon(&p);
        for (w, _) in b.iter() {
            let first = &w.letters()[0];
            assert!(first.factors()[0].is_enhanced());
            for l in &w.letters()[1..] {
                assert!(l.factors().iter().all(|q| !q.is_enhanced()));
            }
        }
        assert!(bar_differential_lincomb(&b).is_zero());

        let mut marked_splits = LinComb::zero();
        for (w, c) in b.iter() {
            let ls = w.letters();
            for k in 1..=ls.len() {
                marked_splits.add_term(
                    (TensorWord::new(ls[..k].to_vec()), TensorWord::new(ls[k..].to_vec())),
                    c.clone(),
                );
            }
        }
        assert_eq!(coaction_enh(&p), marked_splits);
    }
}
