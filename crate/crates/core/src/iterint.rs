//! Formal iterated-integral symbols: normalization to base point zero, the
//! subsequence coproduct, and the one-gap cobracket.
//!
//! A symbol `I(a0; m1, .., mn; b)` records a path from `a0` to `b` with `n`
//! marked arguments.  Normalization rewrites every symbol over the base
//! point zero, expanding a nonzero start into signed products of reversed
//! prefixes and suffixes.  The quotient kills symbols whose leading
//! argument repeats the zero base point, and (by default) symbols whose
//! path starts and ends at zero.

use std::fmt;

use crate::atom::Atom;
use crate::lincomb::{Graded, LinComb, WedgeWord};
use crate::polygon::{RDecoPolygon, Side};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum IArg {
    Zero,
    At(Atom),
}

impl IArg {
    pub fn is_zero(&self) -> bool {
        matches!(self, IArg::Zero)
    }
}

impl fmt::Display for IArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IArg::Zero => write!(f, "0"),
            IArg::At(a) => write!(f, "{a}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ISymbol {
    pub a0: IArg,
    pub middle: Vec<IArg>,
    pub a_end: IArg,
}

impl ISymbol {
    pub fn new(a0: IArg, middle: Vec<IArg>, a_end: IArg) -> Self {
        ISymbol { a0, middle, a_end }
    }

    pub fn based(middle: Vec<IArg>, a_end: IArg) -> Self {
        ISymbol { a0: IArg::Zero, middle, a_end }
    }

    pub fn weight(&self) -> usize {
        self.middle.len()
    }
}

/// Cobracket factors anticommute regardless of weight.
impl Graded for ISymbol {
    fn wedge_degree(&self) -> usize {
        1
    }
}

impl fmt::Display for ISymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I({}; ", self.a0)?;
        for (i, m) in self.middle.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "; {})", self.a_end)
    }
}

/// Commutative product of symbols, kept sorted.  The empty product is one.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct IMonomial(Vec<ISymbol>);

impl IMonomial {
    pub fn one() -> Self {
        IMonomial(Vec::new())
    }

    pub fn symbol(s: ISymbol) -> Self {
        IMonomial(vec![s])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[ISymbol] {
        &self.0
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        v.sort();
        IMonomial(v)
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(ISymbol::weight).sum()
    }
}

impl fmt::Display for IMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Rewriting switches.  `zero_span_vanishes` kills every symbol whose path
/// runs from zero to zero; turning it off instead identifies such a symbol
/// with its reversal, signed by the weight.
#[derive(Clone, Copy, Debug)]
pub struct IOptions {
    pub zero_span_vanishes: bool,
}

impl Default for IOptions {
    fn default() -> Self {
        IOptions { zero_span_vanishes: true }
    }
}

/// Rewrite one symbol over the zero base point.
pub fn i_normalize(s: &ISymbol, opts: IOptions) -> LinComb<IMonomial> {
    if s.middle.is_empty() {
        return LinComb::single(IMonomial::one());
    }
    match &s.a0 {
        IArg::At(a) => {
            // Split the path through zero: every cut point produces a
            // reversed prefix back to the old start and a suffix onward.
            let n = s.middle.len();
            let mut out = LinComb::zero();
            for k in 0..=n {
                let mut prefix: Vec<IArg> = s.middle[..k].to_vec();
                prefix.reverse();
                let back = ISymbol::based(prefix, IArg::At(a.clone()));
                let on = ISymbol::based(s.middle[k..].to_vec(), s.a_end.clone());
                let sign = Scalar::from_sign(if k % 2 == 0 { 1 } else { -1 });
                let product = mul_lincomb(
                    &i_normalize(&back, opts),
                    &i_normalize(&on, opts),
                );
                out.add_assign(product.scaled(&sign));
            }
            out
        }
        IArg::Zero => {
            if s.middle.first().map_or(false, IArg::is_zero) {
                return LinComb::zero();
            }
            if !s.a_end.is_zero() {
                return LinComb::single(IMonomial::symbol(s.clone()));
            }
            if opts.zero_span_vanishes {
                return LinComb::zero();
            }
            if s.middle.last().map_or(false, IArg::is_zero) {
                return LinComb::zero();
            }
            let mut rev = s.middle.clone();
            rev.reverse();
            let sign = Scalar::from_sign(if s.middle.len() % 2 == 0 { 1 } else { -1 });
            if rev < s.middle {
                LinComb::term(IMonomial::symbol(ISymbol::based(rev, IArg::Zero)), sign)
            } else if rev == s.middle && s.middle.len() % 2 == 1 {
                LinComb::zero()
            } else {
                LinComb::single(IMonomial::symbol(s.clone()))
            }
        }
    }
}

pub fn mul_lincomb(a: &LinComb<IMonomial>, b: &LinComb<IMonomial>) -> LinComb<IMonomial> {
    let mut out = LinComb::zero();
    for (x, cx) in a.iter() {
        for (y, cy) in b.iter() {
            out.add_term(x.mul(y), cx.clone() * cy.clone());
        }
    }
    out
}

pub fn i_normalize_monomial(m: &IMonomial, opts: IOptions) -> LinComb<IMonomial> {
    let mut out = LinComb::single(IMonomial::one());
    for s in m.factors() {
        out = mul_lincomb(&out, &i_normalize(s, opts));
    }
    out
}

/// Subsequence coproduct of one symbol: the kept arguments stay on the
/// left, each gap closes up into a factor on the right.
pub fn i_coproduct(s: &ISymbol, opts: IOptions) -> LinComb<(IMonomial, IMonomial)> {
    let n = s.middle.len();
    let mut args: Vec<IArg> = Vec::with_capacity(n + 2);
    args.push(s.a0.clone());
    args.extend(s.middle.iter().cloned());
    args.push(s.a_end.clone());

    let mut out = LinComb::zero();
    for mask in 0u32..(1 << n) {
        let mut kept: Vec<usize> = vec![0];
        for i in 0..n {
            if mask & (1 << i) != 0 {
                kept.push(i + 1);
            }
        }
        kept.push(n + 1);

        let left_sym = ISymbol::new(
            args[0].clone(),
            kept[1..kept.len() - 1].iter().map(|&i| args[i].clone()).collect(),
            args[n + 1].clone(),
        );
        let mut right = LinComb::single(IMonomial::one());
        for w in kept.windows(2) {
            let gap = ISymbol::new(
                args[w[0]].clone(),
                args[w[0] + 1..w[1]].to_vec(),
                args[w[1]].clone(),
            );
            right = mul_lincomb(&right, &i_normalize(&gap, opts));
        }
        for (lm, lc) in i_normalize(&left_sym, opts).iter() {
            for (rm, rc) in right.iter() {
                out.add_term((lm.clone(), rm.clone()), lc.clone() * rc.clone());
            }
        }
    }
    out
}

pub fn i_coproduct_monomial(m: &IMonomial, opts: IOptions) -> LinComb<(IMonomial, IMonomial)> {
    let mut out = LinComb::single((IMonomial::one(), IMonomial::one()));
    for s in m.factors() {
        let piece = i_coproduct(s, opts);
        let mut next = LinComb::zero();
        for ((la, ra), ca) in out.iter() {
            for ((lb, rb), cb) in piece.iter() {
                next.add_term((la.mul(lb), ra.mul(rb)), ca.clone() * cb.clone());
            }
        }
        out = next;
    }
    out
}

/// Projection to single symbols: products of two or more positive-weight
/// symbols and the empty product both drop.
pub(crate) fn lie_part(v: &LinComb<IMonomial>) -> LinComb<ISymbol> {
    let mut out = LinComb::zero();
    for (m, c) in v.iter() {
        if m.factors().len() == 1 {
            out.add_term(m.factors()[0].clone(), c.clone());
        }
    }
    out
}

/// One-gap cobracket of a zero-based symbol: for every proper gap the
/// punctured symbol wedges the gap, both factors projected to single
/// symbols after normalization.
pub fn i_cobracket(s: &ISymbol, opts: IOptions) -> LinComb<WedgeWord<ISymbol>> {
    debug_assert!(s.a0.is_zero(), "cobracket expects a zero-based symbol");
    let n = s.middle.len();
    let mut args: Vec<IArg> = Vec::with_capacity(n + 2);
    args.push(s.a0.clone());
    args.extend(s.middle.iter().cloned());
    args.push(s.a_end.clone());

    let mut out = LinComb::zero();
    for k in 0..=n {
        for l in k + 2..=n + 1 {
            if k == 0 && l == n + 1 {
                continue;
            }
            let mut outer_mid: Vec<IArg> = args[1..=k].to_vec();
            outer_mid.extend_from_slice(&args[l..=n]);
            let outer = ISymbol::new(args[0].clone(), outer_mid, args[n + 1].clone());
            let gap = ISymbol::new(args[k].clone(), args[k + 1..l].to_vec(), args[l].clone());

            let outer_syms = lie_part(&i_normalize(&outer, opts));
            let gap_syms = lie_part(&i_normalize(&gap, opts));
            for (x, cx) in outer_syms.iter() {
                for (y, cy) in gap_syms.iter() {
                    out.add_assign(
                        WedgeWord::normalize(vec![x.clone(), y.clone()])
                            .scaled(&(cx.clone() * cy.clone())),
                    );
                }
            }
        }
    }
    out
}

/// Cobracket extended to wedges by the signed slot-wise rule, flattening
/// each expanded slot into the ambient wedge; squares to zero.
pub fn i_cobracket_wedge(
    w: &WedgeWord<ISymbol>,
    opts: IOptions,
) -> LinComb<WedgeWord<ISymbol>> {
    let mut out = LinComb::zero();
    let fs = w.factors();
    for (j, f) in fs.iter().enumerate() {
        let inner = i_cobracket(f, opts);
        let sign = Scalar::from_sign(if j % 2 == 0 { 1 } else { -1 });
        for (pair, c) in inner.iter() {
            let mut factors: Vec<ISymbol> = fs[..j].to_vec();
            factors.extend(pair.factors().iter().cloned());
            factors.extend_from_slice(&fs[j + 1..]);
            out.add_assign(
                WedgeWord::normalize(factors).scaled(&(c.clone() * sign.clone())),
            );
        }
    }
    out
}

/// Read a polygon as the symbol integrating along its sides: the root
/// side closes the path, blank sides mark zero arguments.
pub fn polygon_to_i(p: &RDecoPolygon) -> ISymbol {
    let side_arg = |s: &Side| match s {
        Side::Blank => IArg::Zero,
        Side::Dec(a) | Side::Second(a) => IArg::At(a.clone()),
    };
    let sides = p.sides();
    let middle = sides[..sides.len() - 1].iter().map(side_arg).collect();
    ISymbol::based(middle, side_arg(&sides[sides.len() - 1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::tests::poly;

    fn at(name: &str) -> IArg {
        IArg::At(Atom::constant(name))
    }

    fn sym(mid: &[&str], end: &str) -> ISymbol {
        let arg = |s: &str| if s == "0" { IArg::Zero } else { at(s) };
        ISymbol::based(mid.iter().map(|s| arg(s)).collect(), arg(end))
    }

    #[test]
    fn zero_based_symbols_are_already_normal() {
        let s = sym(&["x", "0", "y"], "1");
        assert_eq!(
            i_normalize(&s, IOptions::default()),
            LinComb::single(IMonomial::symbol(s.clone()))
        );
        assert!(i_normalize(&sym(&["0", "x"], "1"), IOptions::default()).is_zero());
        assert!(i_normalize(&sym(&["x", "y"], "0"), IOptions::default()).is_zero());
        assert_eq!(
            i_normalize(&sym(&[], "0"), IOptions::default()),
            LinComb::single(IMonomial::one())
        );
    }

    #[test]
    fn nonzero_start_expands_through_zero() {
        // I(a; x; b) = I(0; x; b) - I(0; x; a) over the zero base point.
        let s = ISymbol::new(at("a").clone(), vec![at("x")], at("b"));
        let expect: LinComb<IMonomial> = [
            (IMonomial::symbol(sym(&["x"], "b")), Scalar::one()),
            (IMonomial::symbol(sym(&["x"], "a")), Scalar::from_sign(-1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(i_normalize(&s, IOptions::default()), expect);
    }

    #[test]
    fn weight_two_expansion_includes_the_cross_product() {
        let s = ISymbol::new(at("a"), vec![at("x"), at("y")], at("b"));
        let got = i_normalize(&s, IOptions::default());
        let cross = IMonomial::symbol(sym(&["x"], "a")).mul(&IMonomial::symbol(sym(&["y"], "b")));
        assert_eq!(got.coeff(&cross), Scalar::from_sign(-1));
        assert_eq!(got.coeff(&IMonomial::symbol(sym(&["x", "y"], "b"))), Scalar::one());
        assert_eq!(got.coeff(&IMonomial::symbol(sym(&["y", "x"], "a"))), Scalar::one());
        assert_eq!(got.len(), 3);
    }

    #[test]
    fn reversal_rule_when_zero_spans_survive() {
        let opts = IOptions { zero_span_vanishes: false };
        let kept = sym(&["x", "y"], "0");
        let rev = sym(&["y", "x"], "0");
        let (small, large) = if kept.middle < rev.middle { (kept.clone(), rev) } else { (rev, kept.clone()) };
        assert_eq!(
            i_normalize(&large, opts),
            LinComb::single(IMonomial::symbol(small.clone()))
        );
        assert_eq!(
            i_normalize(&small, opts),
            LinComb::single(IMonomial::symbol(small.clone()))
        );
        // Odd-weight palindromes cancel against their own reversal.
        assert!(i_normalize(&sym(&["x"], "0"), opts).is_zero());
        assert!(i_normalize(&sym(&["x", "y", "x"], "0"), opts).is_zero());
    }

    #[test]
    fn coproduct_is_coassociative() {
        let opts = IOptions::default();
        for s in [sym(&["x", "y"], "1"), sym(&["x", "0", "y"], "1"), sym(&["x", "y", "z"], "w")] {
            let start = i_coproduct(&s, opts);
            let mut left: LinComb<(IMonomial, IMonomial, IMonomial)> = LinComb::zero();
            for ((a, b), c) in start.iter() {
                for ((a1, a2), c2) in i_coproduct_monomial(a, opts).iter() {
                    left.add_term((a1.clone(), a2.clone(), b.clone()), c.clone() * c2.clone());
                }
            }
            let mut right: LinComb<(IMonomial, IMonomial, IMonomial)> = LinComb::zero();
            for ((a, b), c) in start.iter() {
                for ((b1, b2), c2) in i_coproduct_monomial(b, opts).iter() {
                    right.add_term((a.clone(), b1.clone(), b2.clone()), c.clone() * c2.clone());
                }
            }
            assert_eq!(left, right, "coassociativity failed for {s}");
        }
    }

    #[test]
    fn counit_recovers_the_symbol() {
        let opts = IOptions::default();
        let s = sym(&["x", "y", "z"], "1");
        let cp = i_coproduct(&s, opts);
        let mut left_unit = LinComb::zero();
        let mut right_unit = LinComb::zero();
        for ((a, b), c) in cp.iter() {
            if a.is_one() {
                left_unit.add_term(b.clone(), c.clone());
            }
            if b.is_one() {
                right_unit.add_term(a.clone(), c.clone());
            }
        }
        let expect = LinComb::single(IMonomial::symbol(s));
        assert_eq!(left_unit, expect);
        assert_eq!(right_unit, expect);
    }

    #[test]
    fn cobracket_matches_the_reversing_polygon_differential() {
        let opts = IOptions::default();
        for names in [
            &["x1", "x2", "r"][..],
            &["x1", "x2", "x3", "r"][..],
            &["x1", "x2", "x3", "x4", "r"][..],
        ] {
            let p = poly(names);
            let lhs = i_cobracket(&polygon_to_i(&p), opts);
            let mut rhs = LinComb::zero();
            for arrow in p.arrows() {
                let (mut cut, root) = p.dissect_one(&arrow);
                let mut sign = 1i8;
                if arrow.backward() {
                    let k = cut.sides().len() - 1;
                    let mut sides = cut.sides().to_vec();
                    sides[..k].reverse();
                    cut = RDecoPolygon::new(sides).unwrap();
                    if cut.weight() % 2 == 1 {
                        sign = -1;
                    }
                }
                for (rs, rc) in lie_part(&i_normalize(&polygon_to_i(&root), opts)).iter() {
                    for (cs, cc) in lie_part(&i_normalize(&polygon_to_i(&cut), opts)).iter() {
                        rhs.add_assign(
                            WedgeWord::normalize(vec![rs.clone(), cs.clone()])
                                .scaled(&(rc.clone() * cc.clone() * Scalar::from_sign(sign))),
                        );
                    }
                }
            }
            assert_eq!(lhs, rhs, "cobracket mismatch for {p}");
        }
    }

    #[test]
    fn cobracket_matches_on_blank_sides_too() {
        let opts = IOptions::default();
        let p = crate::polygon::RDecoPolygon::new(vec![
            Side::Dec(Atom::constant("x")),
            Side::Blank,
            Side::Dec(Atom::constant("y")),
            Side::Dec(Atom::constant("r")),
        ])
        .unwrap();
        let lhs = i_cobracket(&polygon_to_i(&p), opts);
        let mut rhs = LinComb::zero();
        for arrow in p.arrows() {
            let (mut cut, root) = p.dissect_one(&arrow);
            let mut sign = 1i8;
            if arrow.backward() {
                let k = cut.sides().len() - 1;
                let mut sides = cut.sides().to_vec();
                sides[..k].reverse();
                cut = RDecoPolygon::from_sides_unchecked(sides);
                if cut.weight() % 2 == 1 {
                    sign = -1;
                }
            }
            for (rs, rc) in lie_part(&i_normalize(&polygon_to_i(&root), opts)).iter() {
                for (cs, cc) in lie_part(&i_normalize(&polygon_to_i(&cut), opts)).iter() {
                    rhs.add_assign(
                        WedgeWord::normalize(vec![rs.clone(), cs.clone()])
                            .scaled(&(rc.clone() * cc.clone() * Scalar::from_sign(sign))),
                    );
                }
            }
        }
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cobracket_squares_to_zero() {
        let opts = IOptions::default();
        for s in [sym(&["x", "y", "z"], "1"), sym(&["x", "0", "y"], "w"), sym(&["x", "y", "z", "w"], "1")] {
            let once = i_cobracket(&s, opts);
            let mut twice = LinComb::zero();
            for (w, c) in once.iter() {
                twice.add_assign(i_cobracket_wedge(w, opts).scaled(c));
            }
            assert!(twice.is_zero(), "co-Jacobi failed for {s}: {twice}");
        }
    }
}
