//! Parametrized algebraic cycles in the cube.
//!
//! A cycle is an ordered list of coordinates, each either `q` or `1 - q`
//! for a monomial `q` in free parameters, simplicial variables and
//! constants.  The cycle is the closure of the image of the parameter space
//! under these coordinates, sitting inside a product of projective lines
//! punctured at 1, with distinguished faces at 0 and infinity.
//!
//! Cycles are taken up to coordinate permutation with sign (alternating
//! projection) and up to renaming of the bound parameters.  `normal_form`
//! produces the canonical representative; a cycle equal to minus itself is
//! zero.

use std::collections::BTreeMap;
use std::fmt;

use crate::atom::{Atom, AtomKind};
use crate::lincomb::LinComb;
use crate::scalar::Scalar;

/// Product of atoms with integer exponents.  Unit atoms are dropped, so the
/// empty monomial is the constant 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(BTreeMap<Atom, i64>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn atom(a: Atom) -> Self {
        Monomial::one().times(&a, 1)
    }

    /// Quotient a / b of two atoms.
    pub fn ratio(a: Atom, b: Atom) -> Self {
        Monomial::one().times(&a, 1).times(&b, -1)
    }

    pub fn times(mut self, a: &Atom, exp: i64) -> Self {
        if a.is_unit() || exp == 0 {
            return self;
        }
        let e = self.0.entry(a.clone()).or_insert(0);
        *e += exp;
        if *e == 0 {
            self.0.remove(a);
        }
        self
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (a, &e) in &other.0 {
            out = out.times(a, e);
        }
        out
    }

    pub fn pow(&self, k: i64) -> Monomial {
        let mut out = Monomial::one();
        for (a, &e) in &self.0 {
            out = out.times(a, e * k);
        }
        out
    }

    pub fn exponent_of(&self, a: &Atom) -> i64 {
        self.0.get(a).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Atom, i64)> {
        self.0.iter().map(|(a, &e)| (a, e))
    }

    pub fn parameters(&self) -> Vec<Atom> {
        self.0
            .keys()
            .filter(|a| a.kind() == AtomKind::Parameter)
            .cloned()
            .collect()
    }

    pub fn is_parameter_free(&self) -> bool {
        self.0.keys().all(|a| a.kind() != AtomKind::Parameter)
    }

    /// Replace every occurrence of `a` by the monomial `value`.
    pub fn substitute(&self, a: &Atom, value: &Monomial) -> Monomial {
        let e = self.exponent_of(a);
        if e == 0 {
            return self.clone();
        }
        self.clone().times(a, -e).mul(&value.pow(e))
    }

    fn rename(&self, map: &BTreeMap<Atom, Atom>) -> Monomial {
        let mut out = Monomial::one();
        for (a, &e) in &self.0 {
            out = out.times(map.get(a).unwrap_or(a), e);
        }
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |items: &[(String, i64)]| -> String {
            items
                .iter()
                .map(|(n, e)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
                .collect::<Vec<_>>()
                .join("*")
        };
        let num: Vec<(String, i64)> = self
            .0
            .iter()
            .filter(|(_, &e)| e > 0)
            .map(|(a, &e)| (a.to_string(), e))
            .collect();
        let den: Vec<(String, i64)> = self
            .0
            .iter()
            .filter(|(_, &e)| e < 0)
            .map(|(a, &e)| (a.to_string(), -e))
            .collect();
        match (num.is_empty(), den.is_empty()) {
            (true, true) => write!(f, "1"),
            (false, true) => write!(f, "{}", part(&num)),
            (true, false) if den.len() == 1 => write!(f, "1/{}", part(&den)),
            (false, false) if den.len() == 1 => write!(f, "{}/{}", part(&num), part(&den)),
            (true, false) => write!(f, "1/({})", part(&den)),
            (false, false) => write!(f, "{}/({})", part(&num), part(&den)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Form {
    OneMinus,
    Plain,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coordinate {
    pub form: Form,
    pub mon: Monomial,
}

impl Coordinate {
    pub fn one_minus(mon: Monomial) -> Self {
        Coordinate { form: Form::OneMinus, mon }
    }

    pub fn plain(mon: Monomial) -> Self {
        Coordinate { form: Form::Plain, mon }
    }
}

impl fmt::Display for Coordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.form {
            Form::OneMinus => write!(f, "1-{}", self.mon),
            Form::Plain => write!(f, "{}", self.mon),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    coords: Vec<Coordinate>,
    chain: Vec<Atom>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CycleError {
    /// A face lands inside another boundary face; the cycle does not meet
    /// the boundary properly.
    Degenerate { cycle: Box<Cycle>, coordinate: usize, at_infinity: bool },
    /// A vanishing locus cannot be solved with integer monomials.
    UnsupportedExponent { cycle: Box<Cycle>, coordinate: usize },
    /// Both factors carry a simplicial chain.
    ChainClash,
}

impl fmt::Display for CycleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycleError::Degenerate { cycle, coordinate, at_infinity } => write!(
                f,
                "degenerate face of {} at coordinate {} ({})",
                cycle,
                coordinate + 1,
                if *at_infinity { "infinity" } else { "zero" }
            ),
            CycleError::UnsupportedExponent { cycle, coordinate } => write!(
                f,
                "cannot solve coordinate {} of {} for a parameter",
                coordinate + 1,
                cycle
            ),
            CycleError::ChainClash => write!(f, "both factors carry a simplicial chain"),
        }
    }
}

impl std::error::Error for CycleError {}

impl Cycle {
    /// Canonical representative with sign, as a one- or zero-term sum.
    pub fn normal_form(coords: Vec<Coordinate>, chain: Vec<Atom>) -> LinComb<Cycle> {
        let mut params: Vec<Atom> = Vec::new();
        for c in &coords {
            for p in c.mon.parameters() {
                if !params.contains(&p) {
                    params.push(p);
                }
            }
        }
        params.sort();
        let k = params.len();
        let mut best: Option<(Vec<Coordinate>, i8)> = None;
        let mut ambiguous = false;
        for perm in permutations(k) {
            let map: BTreeMap<Atom, Atom> = params
                .iter()
                .enumerate()
                .map(|(i, p)| (p.clone(), Atom::parameter(perm[i] + 1)))
                .collect();
            let renamed: Vec<Coordinate> = coords
                .iter()
                .map(|c| Coordinate { form: c.form, mon: c.mon.rename(&map) })
                .collect();
            let Some((sorted, sign)) = sort_signed(renamed) else {
                return LinComb::zero();
            };
            match &best {
                None => best = Some((sorted, sign)),
                Some((b, bs)) => {
                    if sorted < *b {
                        best = Some((sorted, sign));
                        ambiguous = false;
                    } else if sorted == *b && sign != *bs {
                        ambiguous = true;
                    }
                }
            }
        }
        let (coords, sign) = best.expect("at least the identity permutation");
        if ambiguous {
            return LinComb::zero();
        }
        LinComb::single(Cycle { coords, chain }).scaled(&Scalar::from_sign(sign))
    }

    pub fn coords(&self) -> &[Coordinate] {
        &self.coords
    }

    pub fn chain(&self) -> &[Atom] {
        &self.chain
    }

    /// Number of cube factors the cycle sits in.
    pub fn ambient(&self) -> usize {
        self.coords.len()
    }

    /// Number of free parameters.
    pub fn dimension(&self) -> usize {
        let mut params: Vec<Atom> = Vec::new();
        for c in &self.coords {
            for p in c.mon.parameters() {
                if !params.contains(&p) {
                    params.push(p);
                }
            }
        }
        params.len()
    }

    /// Intersection with one boundary face.  An empty intersection is the
    /// zero sum; an improper one is the `Degenerate` error.
    pub fn face(&self, i: usize, at_infinity: bool) -> Result<LinComb<Cycle>, CycleError> {
        let c = &self.coords[i];
        let params = c.mon.parameters();
        match (c.form, at_infinity) {
            (Form::OneMinus, false) => {
                if params.is_empty() {
                    return if c.mon.is_one() {
                        Err(CycleError::Degenerate {
                            cycle: Box::new(self.clone()),
                            coordinate: i,
                            at_infinity: false,
                        })
                    } else {
                        Ok(LinComb::zero())
                    };
                }
                self.solve_face(i, None)
            }
            (Form::Plain, false) => {
                if params.is_empty() {
                    return Ok(LinComb::zero());
                }
                let mut out = LinComb::zero();
                for p in &params {
                    let to_infinity = c.mon.exponent_of(p) < 0;
                    out.add_assign(self.limit_branch(i, false, p, to_infinity)?);
                }
                Ok(out)
            }
            (_, true) => {
                if params.is_empty() {
                    return Ok(LinComb::zero());
                }
                let mut out = LinComb::zero();
                for p in &params {
                    let to_infinity = c.mon.exponent_of(p) > 0;
                    out.add_assign(self.limit_branch(i, true, p, to_infinity)?);
                }
                Ok(out)
            }
        }
    }

    /// Solve `mon = 1` at coordinate `i` for one parameter of exponent
    /// one and substitute everywhere else.  The answer does not depend on
    /// which parameter is chosen.
    pub(crate) fn solve_face(
        &self,
        i: usize,
        pivot: Option<&Atom>,
    ) -> Result<LinComb<Cycle>, CycleError> {
        let c = &self.coords[i];
        let pivot = match pivot {
            Some(p) => p.clone(),
            None => {
                let mut found = None;
                for p in c.mon.parameters() {
                    if c.mon.exponent_of(&p).abs() == 1 {
                        found = Some(p);
                        break;
                    }
                }
                found.ok_or_else(|| CycleError::UnsupportedExponent {
                    cycle: Box::new(self.clone()),
                    coordinate: i,
                })?
            }
        };
        let e = c.mon.exponent_of(&pivot);
        debug_assert!(e.abs() == 1);
        let value = c.mon.clone().times(&pivot, -e).pow(-e);
        let mut rest = Vec::with_capacity(self.coords.len() - 1);
        for (j, cj) in self.coords.iter().enumerate() {
            if j == i {
                continue;
            }
            let mon = cj.mon.substitute(&pivot, &value);
            if cj.form == Form::Plain && mon.is_one() {
                // The coordinate became the excluded point 1.
                return Ok(LinComb::zero());
            }
            rest.push(Coordinate { form: cj.form, mon });
        }
        Ok(Cycle::normal_form(rest, self.chain.clone()))
    }

    /// Component of a face where parameter `p` runs to 0 or infinity.
    fn limit_branch(
        &self,
        i: usize,
        at_infinity: bool,
        p: &Atom,
        to_infinity: bool,
    ) -> Result<LinComb<Cycle>, CycleError> {
        let mut rest = Vec::with_capacity(self.coords.len() - 1);
        let mut degenerate = false;
        let mut empty = false;
        for (j, cj) in self.coords.iter().enumerate() {
            if j == i {
                continue;
            }
            let d = cj.mon.exponent_of(p);
            if d == 0 {
                rest.push(cj.clone());
                continue;
            }
            let mon_vanishes = (d > 0) != to_infinity;
            if mon_vanishes {
                match cj.form {
                    // 1 - 0 = 1 is outside the cube: empty component.
                    Form::OneMinus => empty = true,
                    // The component sits inside another zero face.
                    Form::Plain => degenerate = true,
                }
            } else {
                // The monomial blows up along with the parameter.
                degenerate = true;
            }
        }
        if empty {
            return Ok(LinComb::zero());
        }
        if degenerate {
            return Err(CycleError::Degenerate {
                cycle: Box::new(self.clone()),
                coordinate: i,
                at_infinity,
            });
        }
        Ok(Cycle::normal_form(rest, self.chain.clone()))
    }

    /// Alternating sum of zero and infinity faces over all coordinates.
    pub fn boundary(&self) -> Result<LinComb<Cycle>, CycleError> {
        let mut out = LinComb::zero();
        for i in 0..self.coords.len() {
            let sign = Scalar::from_sign(if i % 2 == 0 { 1 } else { -1 });
            out.add_assign(self.face(i, false)?.scaled(&sign));
            out.sub_assign(self.face(i, true)?.scaled(&sign));
        }
        Ok(out)
    }

    /// Simplicial faces of the chain: glue each pair of successive chain
    /// entries, with alternating signs.  Gluing the first variable onto an
    /// unvalued or zero start kills every coordinate that mentions it; the
    /// final variable is substituted by the chain's endpoint.  Coordinates
    /// that collapse onto the excluded point or a zero face drop out.
    pub fn chain_boundary(&self) -> LinComb<Cycle> {
        let k = self.chain.len().saturating_sub(2);
        if k == 0 {
            return LinComb::zero();
        }
        let start = &self.chain[0];
        let zero_start = start.value().map(|v| v.is_zero()).unwrap_or(true);
        let mut out = LinComb::zero();
        for i in 0..=k {
            let sign = Scalar::from_sign(if i % 2 == 0 { 1 } else { -1 });
            // Face i glues chain entries i and i+1; the surviving name is
            // the lower one except against the fixed endpoints.
            let (glued, value) = if i == 0 {
                let v = if zero_start { None } else { Some(Monomial::atom(start.clone())) };
                (self.chain[1].clone(), v)
            } else if i < k {
                (self.chain[i + 1].clone(), Some(Monomial::atom(self.chain[i].clone())))
            } else {
                let end = &self.chain[k + 1];
                let v = if end.is_unit() { Monomial::one() } else { Monomial::atom(end.clone()) };
                (self.chain[k].clone(), Some(v))
            };
            let mut coords = Vec::with_capacity(self.coords.len());
            let mut vanishes = false;
            for c in &self.coords {
                let mon = match &value {
                    Some(v) => c.mon.substitute(&glued, v),
                    None => {
                        if c.mon.exponent_of(&glued) != 0 {
                            vanishes = true;
                            break;
                        }
                        c.mon.clone()
                    }
                };
                if c.form == Form::OneMinus && mon.is_one() {
                    // 1 - 1 = 0 sits inside a zero face.
                    vanishes = true;
                    break;
                }
                if c.form == Form::Plain && mon.is_one() {
                    // The coordinate became the excluded point 1.
                    vanishes = true;
                    break;
                }
                coords.push(Coordinate { form: c.form, mon });
            }
            if vanishes {
                continue;
            }
            let mut chain = self.chain.clone();
            chain.remove(if i < k { i + 1 } else { k });
            if chain.len() == 2 {
                // No interior variable left: the chain carries no data.
                chain.clear();
            }
            out.add_assign(Cycle::normal_form(coords, chain).scaled(&sign));
        }
        out
    }

    /// Every iterated face avoids the degenerate case.
    pub fn is_admissible(&self) -> Result<bool, CycleError> {
        for i in 0..self.coords.len() {
            for at_infinity in [false, true] {
                match self.face(i, at_infinity) {
                    Ok(sum) => {
                        for (cycle, _) in sum.iter() {
                            if !cycle.is_admissible()? {
                                return Ok(false);
                            }
                        }
                    }
                    Err(CycleError::Degenerate { .. }) => return Ok(false),
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(true)
    }

    /// Cartesian product, with both factors' parameters kept apart.  At
    /// most one factor may carry a simplicial chain.
    pub fn concat(&self, other: &Cycle) -> Result<LinComb<Cycle>, CycleError> {
        if !self.chain.is_empty() && !other.chain.is_empty() {
            return Err(CycleError::ChainClash);
        }
        let chain = if self.chain.is_empty() { other.chain.clone() } else { self.chain.clone() };
        let mut coords = Vec::with_capacity(self.coords.len() + other.coords.len());
        let left_params = {
            let mut ps: Vec<Atom> = Vec::new();
            for c in &self.coords {
                for p in c.mon.parameters() {
                    if !ps.contains(&p) {
                        ps.push(p);
                    }
                }
            }
            ps.sort();
            ps
        };
        let map_left: BTreeMap<Atom, Atom> = left_params
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), Atom::parameter(i + 1)))
            .collect();
        for c in &self.coords {
            coords.push(Coordinate { form: c.form, mon: c.mon.rename(&map_left) });
        }
        let mut right_params: Vec<Atom> = Vec::new();
        for c in &other.coords {
            for p in c.mon.parameters() {
                if !right_params.contains(&p) {
                    right_params.push(p);
                }
            }
        }
        right_params.sort();
        let map_right: BTreeMap<Atom, Atom> = right_params
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), Atom::parameter(left_params.len() + i + 1)))
            .collect();
        for c in &other.coords {
            coords.push(Coordinate { form: c.form, mon: c.mon.rename(&map_right) });
        }
        Ok(Cycle::normal_form(coords, chain))
    }

    /// Connected components of coordinates linked by shared parameters.
    /// More than one component means the cycle is a product.
    pub fn parameter_components(&self) -> usize {
        let m = self.coords.len();
        let mut comp: Vec<usize> = (0..m).collect();
        fn find(comp: &mut Vec<usize>, i: usize) -> usize {
            if comp[i] != i {
                let r = find(comp, comp[i]);
                comp[i] = r;
            }
            comp[i]
        }
        for i in 0..m {
            for j in i + 1..m {
                let share = self.coords[i]
                    .mon
                    .parameters()
                    .iter()
                    .any(|p| self.coords[j].mon.exponent_of(p) != 0);
                if share {
                    let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                    comp[a] = b;
                }
            }
        }
        (0..m).map(|i| find(&mut comp, i)).collect::<std::collections::BTreeSet<_>>().len()
    }

    pub fn is_decomposable(&self) -> bool {
        self.coords.len() >= 2 && self.parameter_components() >= 2
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")?;
        if !self.chain.is_empty() {
            let names: Vec<String> = self.chain.iter().map(|a| a.to_string()).collect();
            write!(f, " with {}", names.join("<="))?;
        }
        Ok(())
    }
}

/// Boundary extended to sums.
pub fn boundary_lincomb(lc: &LinComb<Cycle>) -> Result<LinComb<Cycle>, CycleError> {
    let mut out = LinComb::zero();
    for (z, c) in lc.iter() {
        out.add_assign(z.boundary()?.scaled(c));
    }
    Ok(out)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(k - 1) {
        for slot in 0..k {
            let mut p = rest.clone();
            p.insert(slot, k - 1);
            out.push(p);
        }
    }
    out
}

/// Sort with swap parity; equal entries make the orientation cancel.
fn sort_signed(mut coords: Vec<Coordinate>) -> Option<(Vec<Coordinate>, i8)> {
    let mut sign = 1i8;
    for i in 1..coords.len() {
        let mut j = i;
        while j > 0 && coords[j] < coords[j - 1] {
            coords.swap(j, j - 1);
            sign = -sign;
            j -= 1;
        }
    }
    for w in coords.windows(2) {
        if w[0] == w[1] {
            return None;
        }
    }
    Some((coords, sign))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(i: usize) -> Atom {
        Atom::parameter(i)
    }

    fn c(name: &str) -> Atom {
        Atom::constant(name)
    }

    fn one_minus(m: Monomial) -> Coordinate {
        Coordinate::one_minus(m)
    }

    #[test]
    fn monomial_arithmetic_and_display() {
        let m = Monomial::ratio(c("a"), t(1));
        assert_eq!(m.to_string(), "a/t1");
        assert_eq!(m.pow(-1).to_string(), "t1/a");
        assert_eq!(m.substitute(&t(1), &Monomial::atom(c("a"))).to_string(), "1");
        let u = Monomial::atom(Atom::one());
        assert!(u.is_one());
    }

    #[test]
    fn normal_form_sign_and_cancellation() {
        let a = one_minus(Monomial::atom(c("a")));
        let b = one_minus(Monomial::atom(c("b")));
        let ab = Cycle::normal_form(vec![a.clone(), b.clone()], vec![]);
        let ba = Cycle::normal_form(vec![b.clone(), a.clone()], vec![]);
        assert_eq!(ab, ba.negated());
        assert!(Cycle::normal_form(vec![a.clone(), a.clone()], vec![]).is_zero());
    }

    #[test]
    fn parameter_renaming_is_canonical() {
        let z1 = Cycle::normal_form(
            vec![
                one_minus(Monomial::atom(t(7))),
                one_minus(Monomial::ratio(t(7), c("x"))),
            ],
            vec![],
        );
        let z2 = Cycle::normal_form(
            vec![
                one_minus(Monomial::atom(t(2))),
                one_minus(Monomial::ratio(t(2), c("x"))),
            ],
            vec![],
        );
        assert_eq!(z1, z2);
        assert!(!z1.is_zero());
    }

    #[test]
    fn double_log_cycle_boundary_and_admissibility() {
        // (t, 1-t, 1-a/t): its whole boundary is one face, and every face
        // chain stays proper.
        let z = Cycle::normal_form(
            vec![
                Coordinate::plain(Monomial::atom(t(1))),
                one_minus(Monomial::atom(t(1))),
                one_minus(Monomial::ratio(c("a"), t(1))),
            ],
            vec![],
        );
        assert_eq!(z.len(), 1);
        let (cycle, coeff) = z.iter().next().unwrap();
        let boundary = cycle.boundary().unwrap().scaled(coeff);
        let expect = Cycle::normal_form(
            vec![
                Coordinate::plain(Monomial::atom(c("a"))),
                one_minus(Monomial::atom(c("a"))),
            ],
            vec![],
        );
        assert_eq!(boundary, expect);
        assert!(cycle.is_admissible().unwrap());
    }

    #[test]
    fn chain_boundary_glues_successive_entries() {
        let s = |i: usize| Atom::topological(i);
        // One interior variable: the zero end kills the term that mentions
        // it, the unit end substitutes.
        let eta = Cycle::normal_form(
            vec![
                one_minus(Monomial::ratio(s(1), t(0))),
                one_minus(Monomial::ratio(t(0), c("x1"))),
                one_minus(Monomial::ratio(t(0), c("x2"))),
            ],
            vec![s(0), s(1), Atom::one()],
        );
        let (cycle, coeff) = eta.iter().next().unwrap();
        let got = cycle.chain_boundary().scaled(coeff);
        let expect = Cycle::normal_form(
            vec![
                one_minus(Monomial::atom(t(0)).pow(-1)),
                one_minus(Monomial::ratio(t(0), c("x1"))),
                one_minus(Monomial::ratio(t(0), c("x2"))),
            ],
            vec![],
        )
        .negated();
        assert_eq!(got, expect);

        // Two interior variables and no parameters: the middle face glues
        // them, the top face substitutes the unit.
        let flat = Cycle::normal_form(
            vec![
                one_minus(Monomial::ratio(s(1), c("x1"))),
                one_minus(Monomial::ratio(s(2), c("x2"))),
            ],
            vec![s(0), s(1), s(2), Atom::one()],
        );
        let (cycle, coeff) = flat.iter().next().unwrap();
        let got = cycle.chain_boundary().scaled(coeff);
        let merged = Cycle::normal_form(
            vec![
                one_minus(Monomial::ratio(s(1), c("x1"))),
                one_minus(Monomial::ratio(s(1), c("x2"))),
            ],
            vec![s(0), s(1), Atom::one()],
        );
        let capped = Cycle::normal_form(
            vec![
                one_minus(Monomial::ratio(s(1), c("x1"))),
                one_minus(Monomial::atom(c("x2")).pow(-1)),
            ],
            vec![s(0), s(1), Atom::one()],
        );
        assert_eq!(got, capped - merged);
    }

    #[test]
    fn pivot_choice_does_not_matter() {
        let z = Cycle::normal_form(
            vec![
                one_minus(Monomial::ratio(t(1), t(2))),
                one_minus(Monomial::ratio(t(1), c("x"))),
                one_minus(Monomial::ratio(t(2), c("y"))),
            ],
            vec![],
        );
        let (cycle, _) = z.iter().next().unwrap();
        let idx = cycle
            .coords()
            .iter()
            .position(|c| c.mon.parameters().len() == 2)
            .unwrap();
        let via_t1 = cycle.solve_face(idx, Some(&t(1))).unwrap();
        let via_t2 = cycle.solve_face(idx, Some(&t(2))).unwrap();
        assert_eq!(via_t1, via_t2);
        assert!(!via_t1.is_zero());
    }

    #[test]
    fn unsolvable_exponent_is_reported() {
        let z = Cycle::normal_form(
            vec![one_minus(Monomial::one().times(&t(1), 2).times(&c("x"), -1))],
            vec![],
        );
        let (cycle, _) = z.iter().next().unwrap();
        match cycle.face(0, false) {
            Err(CycleError::UnsupportedExponent { .. }) => {}
            other => panic!("expected exponent error, got {other:?}"),
        }
    }

    #[test]
    fn product_is_graded_commutative() {
        let mk = |name: &str| {
            let z = Cycle::normal_form(
                vec![
                    one_minus(Monomial::atom(t(1))),
                    one_minus(Monomial::ratio(t(1), c(name))),
                ],
                vec![],
            );
            let first = z.iter().next().unwrap().0.clone();
            first
        };
        let (x, y) = (mk("x"), mk("y"));
        let xy = x.concat(&y).unwrap();
        let yx = y.concat(&x).unwrap();
        // Two coordinates each: even ambient degree, so the product
        // commutes.
        assert_eq!(xy, yx);
        let (prod, _) = xy.iter().next().unwrap();
        assert!(prod.is_decomposable());
        assert_eq!(prod.parameter_components(), 2);
        assert_eq!(prod.dimension(), 2);
    }

    #[test]
    fn odd_by_odd_product_anticommutes() {
        let mk = |name: &str| {
            let z = Cycle::normal_form(vec![one_minus(Monomial::ratio(t(1), c(name)))], vec![]);
            let first = z.iter().next().unwrap().0.clone();
            first
        };
        let (x, y) = (mk("x"), mk("y"));
        let xy = x.concat(&y).unwrap();
        let yx = y.concat(&x).unwrap();
        assert_eq!(xy, yx.negated());
    }

    #[test]
    fn chain_clash_is_refused() {
        let mk = || {
            let z = Cycle::normal_form(
                vec![one_minus(Monomial::ratio(Atom::topological(1), c("x")))],
                vec![Atom::topological(0), Atom::topological(1)],
            );
            let first = z.iter().next().unwrap().0.clone();
            first
        };
        assert_eq!(mk().concat(&mk()), Err(CycleError::ChainClash));
    }
}
