//! Exact linear combinations over an ordered basis, plus the two word
//! constructions used throughout: anticommutative wedge words with graded
//! swap signs, and tensor words with the shuffle product.

use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

/// Finite formal sum of basis elements with rational coefficients.
/// Zero-coefficient terms are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinComb<B: Ord> {
    terms: BTreeMap<B, Scalar>,
}

impl<B: Ord> Default for LinComb<B> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<B: Ord> LinComb<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(basis: B, coeff: Scalar) -> Self {
        let mut lc = Self::zero();
        lc.add_term(basis, coeff);
        lc
    }

    pub fn single(basis: B) -> Self {
        Self::term(basis, Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, basis: &B) -> Scalar {
        self.terms.get(basis).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (B, Scalar)> {
        self.terms.into_iter()
    }

    pub fn add_term(&mut self, basis: B, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(basis) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: Self) {
        for (b, c) in other.terms {
            self.add_term(b, c);
        }
    }

    pub fn sub_assign(&mut self, other: Self) {
        for (b, c) in other.terms {
            self.add_term(b, -c);
        }
    }

    pub fn scale(&mut self, k: &Scalar) {
        if k.is_zero() {
            self.terms.clear();
            return;
        }
        for c in self.terms.values_mut() {
            *c *= k;
        }
    }

    pub fn scaled(mut self, k: &Scalar) -> Self {
        self.scale(k);
        self
    }

    pub fn negated(mut self) -> Self {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }

    /// Push each basis element through `f` (which may itself produce a sum),
    /// multiplying coefficients along the way.
    pub fn flat_map<C: Ord>(self, mut f: impl FnMut(B) -> LinComb<C>) -> LinComb<C> {
        let mut out = LinComb::zero();
        for (b, coeff) in self.terms {
            let mut image = f(b);
            image.scale(&coeff);
            out.add_assign(image);
        }
        out
    }

    pub fn map_basis<C: Ord>(self, mut f: impl FnMut(B) -> C) -> LinComb<C> {
        let mut out = LinComb::zero();
        for (b, coeff) in self.terms {
            out.add_term(f(b), coeff);
        }
        out
    }
}

impl<B: Ord> FromIterator<(B, Scalar)> for LinComb<B> {
    fn from_iter<I: IntoIterator<Item = (B, Scalar)>>(iter: I) -> Self {
        let mut lc = Self::zero();
        for (b, c) in iter {
            lc.add_term(b, c);
        }
        lc
    }
}

impl<B: Ord> std::ops::Add for LinComb<B> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.add_assign(rhs);
        self
    }
}

impl<B: Ord> std::ops::Sub for LinComb<B> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self.sub_assign(rhs);
        self
    }
}

impl<B: Ord + fmt::Display> fmt::Display for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if abs.is_one() {
                write!(f, "{b}")?;
            } else {
                write!(f, "{abs}*{b}")?;
            }
        }
        Ok(())
    }
}

/// Degree used for the wedge sign rule.  Swapping adjacent factors of
/// degrees p and q multiplies by (-1)^{pq}.
pub trait Graded {
    fn wedge_degree(&self) -> usize;
}

/// Sorted wedge product of graded factors.  The empty word is the unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct WedgeWord<F: Ord> {
    factors: Vec<F>,
}

impl<F: Ord> WedgeWord<F> {
    pub fn unit() -> Self {
        WedgeWord { factors: Vec::new() }
    }

    pub fn factors(&self) -> &[F] {
        &self.factors
    }

    pub fn into_factors(self) -> Vec<F> {
        self.factors
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

impl<F: Ord + Graded + Clone> WedgeWord<F> {
    /// Sort the factors into canonical order, returning the accumulated
    /// swap sign, or zero when an odd factor repeats.
    pub fn normalize(factors: Vec<F>) -> LinComb<WedgeWord<F>> {
        match sort_graded(factors) {
            None => LinComb::zero(),
            Some((sorted, sign)) => {
                LinComb::term(WedgeWord { factors: sorted }, Scalar::from_sign(sign))
            }
        }
    }

    pub fn single(factor: F) -> Self {
        WedgeWord { factors: vec![factor] }
    }

    /// Wedge two already-normalized words.
    pub fn concat(a: &Self, b: &Self) -> LinComb<WedgeWord<F>> {
        let mut factors = a.factors.clone();
        factors.extend(b.factors.iter().cloned());
        Self::normalize(factors)
    }

    pub fn total_degree(&self) -> usize {
        self.factors.iter().map(Graded::wedge_degree).sum()
    }
}

/// Insertion sort tracking graded swap parity.  Returns None when two equal
/// odd-degree factors meet (the word is then zero).  Equal even factors are
/// kept; callers relying on 2-torsion vanishing handle that separately.
fn sort_graded<F: Ord + Graded>(mut factors: Vec<F>) -> Option<(Vec<F>, i8)> {
    let mut sign = 1i8;
    for i in 1..factors.len() {
        let mut j = i;
        while j > 0 && factors[j] < factors[j - 1] {
            let p = factors[j - 1].wedge_degree();
            let q = factors[j].wedge_degree();
            if p * q % 2 == 1 {
                sign = -sign;
            }
            factors.swap(j - 1, j);
            j -= 1;
        }
        if j > 0 && factors[j] == factors[j - 1] && factors[j].wedge_degree() % 2 == 1 {
            return None;
        }
    }
    Some((factors, sign))
}

impl<F: Ord + fmt::Display> fmt::Display for WedgeWord<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, x) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " ^ ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Ordered tensor word; letters do not commute and carry no signs here.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TensorWord<L: Ord> {
    letters: Vec<L>,
}

impl<L: Ord> TensorWord<L> {
    pub fn new(letters: Vec<L>) -> Self {
        TensorWord { letters }
    }

    pub fn unit() -> Self {
        TensorWord { letters: Vec::new() }
    }

    pub fn letters(&self) -> &[L] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<L> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl<L: Ord + fmt::Display> fmt::Display for TensorWord<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// Shuffle product of two tensor words: the sum over all interleavings that
/// preserve the internal order of each word, every term with coefficient +1.
pub fn shuffle<L: Ord + Clone>(a: &TensorWord<L>, b: &TensorWord<L>) -> LinComb<TensorWord<L>> {
    fn go<L: Ord + Clone>(
        a: &[L],
        b: &[L],
        prefix: &mut Vec<L>,
        out: &mut LinComb<TensorWord<L>>,
    ) {
        if a.is_empty() {
            let mut word = prefix.clone();
            word.extend(b.iter().cloned());
            out.add_term(TensorWord::new(word), Scalar::one());
            return;
        }
        if b.is_empty() {
            let mut word = prefix.clone();
            word.extend(a.iter().cloned());
            out.add_term(TensorWord::new(word), Scalar::one());
            return;
        }
        prefix.push(a[0].clone());
        go(&a[1..], b, prefix, out);
        prefix.pop();
        prefix.push(b[0].clone());
        go(a, &b[1..], prefix, out);
        prefix.pop();
    }
    let mut out = LinComb::zero();
    go(a.letters(), b.letters(), &mut Vec::new(), &mut out);
    out
}
