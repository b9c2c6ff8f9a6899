//! Acceptance gate.  Four criteria, one test and one printed line each:
//! worked-example fixtures (exact, under a second), the law suites at desk
//! scale (under five minutes), numeric cross-checks (under thirty seconds),
//! and decomposability of tree-sum boundaries.  A few extra fixtures pin
//! the marked-polygon constructions end to end.

use std::time::Instant;

use rdeco::bar::{bar_of_polygon, BarWord};
use rdeco::checks::{run_all, SuiteOptions};
use rdeco::cycle::{boundary_lincomb, Coordinate, Cycle, Monomial};
use rdeco::cycling::cycle_of_tree;
use rdeco::dissect::regions;
use rdeco::numeric::{
    check_diff_li, double_log_cycle_check, iterint_numeric, li_series, realize_marked_chain,
};
use rdeco::polygon::{Arrow, RDecoPolygon, Side};
use rdeco::psi::{psi, tree_sum};
use rdeco::tree::{RDecoTree, TreeNode};
use rdeco::{Atom, LinComb, Scalar, TensorWord, WedgeWord};

fn c(name: &str) -> Atom {
    Atom::constant(name)
}

fn om(m: Monomial) -> Coordinate {
    Coordinate::one_minus(m)
}

fn ratio(a: Atom, b: Atom) -> Monomial {
    Monomial::ratio(a, b)
}

fn poly(names: &[&str]) -> RDecoPolygon {
    RDecoPolygon::decorated(names.iter().map(|s| c(s)).collect()).unwrap()
}

fn line(root: &str, leaf: &str) -> RDecoTree {
    RDecoTree::line(c(root), c(leaf))
}

fn bw(letters: &[&[&str]]) -> BarWord {
    TensorWord::new(letters.iter().map(|names| WedgeWord::single(poly(names))).collect())
}

/// The two-leaf fork with unit root decoration.
fn fork() -> RDecoTree {
    RDecoTree::new(
        Atom::one(),
        TreeNode::internal(vec![TreeNode::leaf(c("x1")), TreeNode::leaf(c("x2"))]),
    )
}

/// Marked quadrangle: second-type side carrying the path start, then the
/// two interior decorations, then the unit root side.
fn marked_quad() -> RDecoPolygon {
    RDecoPolygon::new(vec![
        Side::Second(Atom::topological(0)),
        Side::Dec(c("x1")),
        Side::Dec(c("x2")),
        Side::Dec(Atom::one()),
    ])
    .unwrap()
}

fn catalan(k: usize) -> usize {
    let mut c: u128 = 1;
    for i in 0..k as u128 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c as usize
}

#[test]
fn criterion_1_worked_example_fixtures() {
    let clock = Instant::now();

    // Differential of the fork: three wedge products of lines.
    let mut expect = WedgeWord::normalize(vec![line("1", "x1"), line("1", "x2")]);
    expect.sub_assign(WedgeWord::normalize(vec![line("1", "x1"), line("x1", "x2")]));
    expect.add_assign(WedgeWord::normalize(vec![line("1", "x2"), line("x2", "x1")]));
    assert_eq!(fork().differential(), expect, "fork differential");

    // The fork's cycle: one parameter, three coordinates.
    let t = Atom::parameter(1);
    let double_log = Cycle::normal_form(
        vec![
            om(ratio(Atom::one(), t.clone())),
            om(ratio(t.clone(), c("x1"))),
            om(ratio(t.clone(), c("x2"))),
        ],
        vec![],
    );
    let got = cycle_of_tree(&fork()).unwrap();
    assert_eq!(got, double_log, "fork cycle");
    assert_eq!(got.len(), 1);

    // Its boundary: one surviving face per coordinate, alternating signs.
    let (z, k) = got.iter().next().unwrap();
    let bdry = z.boundary().unwrap().scaled(k);
    let mut expect = Cycle::normal_form(
        vec![om(ratio(Atom::one(), c("x1"))), om(ratio(Atom::one(), c("x2")))],
        vec![],
    );
    expect.sub_assign(Cycle::normal_form(
        vec![om(ratio(Atom::one(), c("x1"))), om(ratio(c("x1"), c("x2")))],
        vec![],
    ));
    expect.add_assign(Cycle::normal_form(
        vec![om(ratio(Atom::one(), c("x2"))), om(ratio(c("x2"), c("x1")))],
        vec![],
    ));
    assert_eq!(bdry, expect, "double log boundary");

    // A plain coordinate: boundary collapses to the endpoint cycle.
    let weighted = Cycle::normal_form(
        vec![
            Coordinate::plain(Monomial::atom(t.clone())),
            om(Monomial::atom(t.clone())),
            om(ratio(c("a"), t.clone())),
        ],
        vec![],
    );
    let (z, k) = weighted.iter().next().unwrap();
    let expect = Cycle::normal_form(
        vec![Coordinate::plain(Monomial::atom(c("a"))), om(Monomial::atom(c("a")))],
        vec![],
    );
    assert_eq!(z.boundary().unwrap().scaled(k), expect, "plain coordinate boundary");
    assert!(z.is_admissible().unwrap());

    // Triple log: the two-term cycle from the quadrangle's tree sum.
    let u = Atom::parameter(2);
    let mut triple: LinComb<Cycle> = LinComb::zero();
    for (tr, k) in tree_sum(&poly(&["x1", "x2", "x3", "1"])).iter() {
        triple.add_assign(cycle_of_tree(tr).unwrap().scaled(k));
    }
    let mut expect = Cycle::normal_form(
        vec![
            om(ratio(Atom::one(), t.clone())),
            om(ratio(t.clone(), c("x1"))),
            om(ratio(t.clone(), u.clone())),
            om(ratio(u.clone(), c("x2"))),
            om(ratio(u.clone(), c("x3"))),
        ],
        vec![],
    );
    expect.add_assign(Cycle::normal_form(
        vec![
            om(ratio(Atom::one(), t.clone())),
            om(ratio(t.clone(), u.clone())),
            om(ratio(u.clone(), c("x1"))),
            om(ratio(u.clone(), c("x2"))),
            om(ratio(t.clone(), c("x3"))),
        ],
        vec![],
    ));
    assert_eq!(triple, expect, "triple log cycle");

    // Differential of the triangle.
    let tri = poly(&["1", "2", "3"]);
    let mut expect = WedgeWord::normalize(vec![poly(&["1", "3"]), poly(&["2", "3"])]);
    expect.add_assign(WedgeWord::normalize(vec![poly(&["2", "3"]), poly(&["1", "2"])]));
    expect.sub_assign(WedgeWord::normalize(vec![poly(&["1", "3"]), poly(&["2", "1"])]));
    assert_eq!(tri.differential(), expect, "triangle differential");

    // Bar terms of the triangle: the polygon itself plus three two-letter
    // words.
    let mut expect = LinComb::single(bw(&[&["1", "2", "3"]]));
    expect.add_assign(LinComb::single(bw(&[&["1", "3"], &["2", "3"]])));
    expect.add_assign(LinComb::single(bw(&[&["2", "3"], &["1", "2"]])));
    expect.sub_assign(LinComb::single(bw(&[&["1", "3"], &["2", "1"]])));
    assert_eq!(bar_of_polygon(&tri), expect, "triangle bar terms");

    // Bar terms of the quadrangle: 1 + 8 + 15 words, signs included.
    let two_letter: [(i64, &[&str], &[&str]); 8] = [
        (1, &["1", "4"], &["2", "3", "4"]),
        (1, &["3", "4"], &["1", "2", "3"]),
        (-1, &["1", "2", "4"], &["3", "2"]),
        (-1, &["1", "3", "4"], &["2", "1"]),
        (1, &["1", "2", "4"], &["3", "4"]),
        (1, &["1", "3", "4"], &["2", "3"]),
        (1, &["2", "3", "4"], &["1", "2"]),
        (1, &["1", "4"], &["3", "2", "1"]),
    ];
    let three_letter: [(i64, [&[&str]; 3]); 15] = [
        (1, [&["1", "4"], &["2", "4"], &["3", "4"]]),
        (1, [&["3", "4"], &["1", "3"], &["2", "3"]]),
        (-1, [&["2", "4"], &["1", "2"], &["3", "2"]]),
        (-1, [&["2", "4"], &["3", "2"], &["1", "2"]]),
        (1, [&["1", "4"], &["3", "1"], &["2", "1"]]),
        (1, [&["1", "4"], &["3", "4"], &["2", "3"]]),
        (1, [&["3", "4"], &["2", "3"], &["1", "2"]]),
        (1, [&["1", "4"], &["2", "1"], &["3", "2"]]),
        (-1, [&["1", "4"], &["2", "1"], &["3", "4"]]),
        (-1, [&["1", "4"], &["3", "4"], &["2", "1"]]),
        (-1, [&["1", "4"], &["2", "4"], &["3", "2"]]),
        (-1, [&["3", "4"], &["1", "3"], &["2", "1"]]),
        (1, [&["2", "4"], &["1", "2"], &["3", "4"]]),
        (1, [&["2", "4"], &["3", "4"], &["1", "2"]]),
        (-1, [&["1", "4"], &["3", "1"], &["2", "3"]]),
    ];
    let mut expect = LinComb::single(bw(&[&["1", "2", "3", "4"]]));
    for (sign, first, second) in two_letter {
        expect.add_term(bw(&[first, second]), Scalar::from_int(sign));
    }
    for (sign, letters) in three_letter {
        expect.add_term(bw(&letters), Scalar::from_int(sign));
    }
    assert_eq!(bar_of_polygon(&poly(&["1", "2", "3", "4"])), expect, "quadrangle bar terms");

    // Octagon dissection: two fans plus a forward arrow, total sign -1.
    let oct = RDecoPolygon::decorated(
        (1..=8).map(|k: usize| Atom::constant(k.to_string())).collect(),
    )
    .unwrap();
    let arrows =
        vec![Arrow::new(2, 0), Arrow::new(2, 7), Arrow::new(7, 4), Arrow::new(3, 4)];
    assert_eq!(regions(&oct, &arrows, true).sign(), -1, "octagon sign");

    let elapsed = clock.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "fixtures took {elapsed:?}, budget 1 s");
    println!("ACCEPTANCE worked-example fixtures: PASS ({elapsed:?})");
}

#[test]
fn criterion_2_invariant_suites() {
    let clock = Instant::now();
    let opts = SuiteOptions::default();
    for report in run_all(&opts) {
        println!("  {}", report.line());
        assert!(report.passed(), "{}", report.line());
    }

    // Tree sums stay Catalan out to seven sides, one tree per summand.
    for m in 2..=7usize {
        let atoms: Vec<Atom> = (1..=m)
            .map(|i| if i == m { c("r") } else { c(&format!("y{i}")) })
            .collect();
        let p = RDecoPolygon::decorated(atoms).unwrap();
        let lc = tree_sum(&p);
        assert_eq!(lc.len(), catalan(m - 2), "tree count for {m} sides");
        assert!(lc.iter().all(|(_, k)| k.clone() == Scalar::one()));
        if m <= 6 {
            assert_eq!(psi(&p), lc, "triangulation enumeration for {m} sides");
        }
    }

    let elapsed = clock.elapsed();
    assert!(elapsed.as_secs_f64() < 300.0, "suites took {elapsed:?}, budget 5 min");
    println!("ACCEPTANCE invariant suites: PASS ({elapsed:?})");
}

#[test]
fn criterion_3_numeric_cross_checks() {
    let clock = Instant::now();

    // Series against the straight-path quadrature.
    let series = li_series(&[1, 1], &[0.3, 0.2]).unwrap();
    let integral = iterint_numeric(0.0, &[50.0 / 3.0, 5.0], 1.0, 1e-10).unwrap();
    assert!((series - integral).abs() < 1e-6, "series {series} vs integral {integral}");

    // Independent quadrature of the one-variable form.
    let (lobatto, series2) = double_log_cycle_check(5.0, 2.5).unwrap();
    assert!((lobatto - series2).abs() < 1e-8, "{lobatto} vs {series2}");

    // The realized marked-quadrangle chain gives the same number.
    let realized = realize_marked_chain(&[Scalar::ratio(50, 3), Scalar::ratio(5, 1)]).unwrap();
    assert!((realized - series).abs() < 1e-6, "realized {realized} vs series {series}");

    // Differential identity: small residual, quadratic decay in h.
    let tiny = check_diff_li(5.0, 2.5, 1e-4).unwrap();
    assert!(tiny < 1e-6, "residual {tiny} at h = 1e-4");
    let big = check_diff_li(5.0, 2.5, 1e-2).unwrap();
    let half = check_diff_li(5.0, 2.5, 5e-3).unwrap();
    let decay = big / half;
    assert!((3.5..=4.5).contains(&decay), "halving h scaled the residual by {decay}");

    let elapsed = clock.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "numeric checks took {elapsed:?}, budget 30 s");
    println!("ACCEPTANCE numeric agreement: PASS ({elapsed:?})");
}

/// Indices of the coordinates tied to the first coordinate through shared
/// parameters.
fn first_component(z: &Cycle) -> Vec<bool> {
    let coords = z.coords();
    let mut inside = vec![false; coords.len()];
    inside[0] = true;
    loop {
        let mut changed = false;
        for i in 1..coords.len() {
            if inside[i] {
                continue;
            }
            let linked = coords[i].mon.parameters().iter().any(|p| {
                (0..coords.len()).any(|j| inside[j] && coords[j].mon.exponent_of(p) != 0)
            });
            if linked {
                inside[i] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    inside
}

#[test]
fn criterion_4_boundaries_factor_into_admissible_cycles() {
    for m in 3..=5usize {
        let atoms: Vec<Atom> = (1..=m).map(|i| c(&format!("g{i}"))).collect();
        let p = RDecoPolygon::decorated(atoms).unwrap();
        let mut image: LinComb<Cycle> = LinComb::zero();
        for (tr, k) in tree_sum(&p).iter() {
            image.add_assign(cycle_of_tree(tr).unwrap().scaled(k));
        }
        for (z, _) in image.iter() {
            assert!(z.is_admissible().unwrap(), "m={m}: inadmissible image term");
        }
        let bdry = boundary_lincomb(&image).unwrap();
        assert!(!bdry.is_zero(), "m={m}: boundary vanished");
        for (z, k) in bdry.iter() {
            assert!(!k.is_zero());
            assert!(z.is_decomposable(), "m={m}: indecomposable boundary term {z:?}");
            let inside = first_component(z);
            let (mut left, mut right) = (Vec::new(), Vec::new());
            for (i, coord) in z.coords().iter().enumerate() {
                if inside[i] {
                    left.push(coord.clone());
                } else {
                    right.push(coord.clone());
                }
            }
            assert!(!left.is_empty() && !right.is_empty(), "m={m}: trivial split");
            let lf = Cycle::normal_form(left, vec![]);
            let rf = Cycle::normal_form(right, vec![]);
            let (lz, _) = lf.iter().next().expect("left factor");
            let (rz, _) = rf.iter().next().expect("right factor");
            assert!(lz.is_admissible().unwrap(), "m={m}: left factor inadmissible");
            assert!(rz.is_admissible().unwrap(), "m={m}: right factor inadmissible");
            let prod = lz.concat(rz).unwrap();
            assert_eq!(prod.len(), 1, "m={m}: product not a single term");
            let (pz, pk) = prod.iter().next().unwrap();
            assert_eq!(pz, z, "m={m}: factors do not rebuild the term");
            assert!(pk.clone() == Scalar::one() || pk.clone() == -Scalar::one());
        }
    }
    println!("ACCEPTANCE decomposable boundaries: PASS");
}

#[test]
fn marked_quadrangle_total_boundary() {
    // Face boundary plus chain boundary of the marked quadrangle's cycles:
    // the double log cycle with a minus sign plus three chain terms.
    let mut total: LinComb<Cycle> = LinComb::zero();
    for (tr, k) in psi(&marked_quad()).iter() {
        for (z, kk) in cycle_of_tree(tr).unwrap().iter() {
            let coeff = k.clone() * kk.clone();
            total.add_assign(z.boundary().unwrap().scaled(&coeff));
            total.add_assign(z.chain_boundary().scaled(&coeff));
        }
    }
    let s = Atom::topological;
    let t = Atom::parameter(1);
    let chain = vec![s(0), s(1), Atom::one()];
    let double_log = Cycle::normal_form(
        vec![
            om(ratio(Atom::one(), t.clone())),
            om(ratio(t.clone(), c("x1"))),
            om(ratio(t.clone(), c("x2"))),
        ],
        vec![],
    );
    let mut expect = double_log.negated();
    expect.add_assign(Cycle::normal_form(
        vec![om(ratio(s(1), c("x1"))), om(ratio(Atom::one(), c("x2")))],
        chain.clone(),
    ));
    expect.sub_assign(Cycle::normal_form(
        vec![om(ratio(s(1), c("x1"))), om(ratio(c("x1"), c("x2")))],
        chain.clone(),
    ));
    expect.add_assign(Cycle::normal_form(
        vec![om(ratio(s(1), c("x2"))), om(ratio(c("x2"), c("x1")))],
        chain,
    ));
    assert_eq!(total, expect);
    println!("ACCEPTANCE marked-quadrangle boundary: PASS");
}

#[test]
fn marked_quadrangle_bar_prefix() {
    // Words cutting off the whole undecorated tail start with the marked
    // two-gon and continue exactly as the plain triangle's bar terms.
    let b = bar_of_polygon(&marked_quad());
    assert_eq!(b.len(), 8);
    let l0 = WedgeWord::single(
        RDecoPolygon::new(vec![
            Side::Second(Atom::topological(0)),
            Side::Dec(Atom::one()),
        ])
        .unwrap(),
    );
    let mut prefixed: LinComb<BarWord> = LinComb::zero();
    for (w, k) in b.iter() {
        if w.letters().first() == Some(&l0) {
            prefixed.add_term(w.clone(), k.clone());
        }
    }
    let mut expect: LinComb<BarWord> = LinComb::zero();
    for (w, k) in bar_of_polygon(&poly(&["x1", "x2", "1"])).iter() {
        let mut letters = vec![l0.clone()];
        letters.extend(w.letters().iter().cloned());
        expect.add_term(TensorWord::new(letters), k.clone());
    }
    assert_eq!(prefixed.len(), 4);
    assert_eq!(prefixed, expect);
    println!("ACCEPTANCE marked-quadrangle bar prefix: PASS");
}

#[test]
fn repeated_decoration_off_path_is_inadmissible() {
    // Repeating a decoration along a root-to-leaf path spoils properness
    // without killing the cycle.
    let tr = RDecoTree::new(
        Atom::one(),
        TreeNode::internal(vec![
            TreeNode::leaf(c("x")),
            TreeNode::internal(vec![TreeNode::leaf(c("x")), TreeNode::leaf(c("y"))]),
        ]),
    );
    let image = cycle_of_tree(&tr).unwrap();
    assert!(!image.is_zero());
    let (z, _) = image.iter().next().unwrap();
    assert_eq!(z.is_admissible(), Ok(false));
    println!("ACCEPTANCE inadmissible witness: PASS");
}
