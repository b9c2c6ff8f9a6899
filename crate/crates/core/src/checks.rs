//! Verification suites: exhaustive and randomized law checks across the
//! whole engine, grouped by area, one report per law.
//!
//! Bounds come from `SuiteOptions`: `max_sides` caps polygon sizes and
//! forest edge totals, `seed` fixes the random stream, so any failure can
//! be replayed exactly.  Failure strings carry the offending input.

use crate::atom::Atom;
use crate::bar::{
    bar_differential, bar_differential_lincomb, bar_of_polygon, coaction_enh, coproduct_adm,
    deconcat, deconcat_lincomb, BarTensor, BarWord, Letter,
};
use crate::cycle::{boundary_lincomb, Cycle};
use crate::cycling::{cycle_of_forest_lincomb, cycle_of_tree, expected_bigrading};
use crate::dissect::{all_dissections, independent_dissections, regions, sweep_count};
use crate::exec;
use crate::gen::{
    random_dissection, random_forest, random_polygon, random_spine_tree, random_tree, rng,
    tree_shapes,
};
use crate::iterint::{
    i_cobracket, i_cobracket_wedge, i_coproduct, i_coproduct_monomial, i_normalize, lie_part,
    mul_lincomb, polygon_to_i, IMonomial, IOptions, ISymbol,
};
use crate::lincomb::{shuffle, LinComb, TensorWord, WedgeWord};
use crate::numeric::{
    check_diff_li, double_log_cycle_check, iterint_numeric, li_series, realize_marked_chain,
};
use crate::polygon::{Arrow, RDecoPolygon, Side};
use crate::psi::{psi, psi_wedge_lincomb, tree_sum};
use crate::scalar::Scalar;
use crate::tree::{differential_lincomb, forest_differential, Forest, RDecoTree, TreeNode};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Bounds shared by every suite.
#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    /// Largest polygon side count; tree and forest sizes derive from it.
    pub max_sides: usize,
    /// Seed for all randomized sampling.
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { max_sides: 6, seed: 42 }
    }
}

/// Outcome of one law over its whole case pool.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    fn new(name: &'static str) -> Self {
        CheckReport { name, cases: 0, failures: Vec::new() }
    }

    fn case(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(detail());
        }
    }

    /// Fold a parallel batch of `(ok, detail)` outcomes in.
    fn absorb(&mut self, outcomes: Vec<Option<String>>) {
        for o in outcomes {
            self.cases += 1;
            if let Some(msg) = o {
                self.failures.push(msg);
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// One human-readable verdict line.
    pub fn line(&self) -> String {
        if self.passed() {
            format!("PASS {} ({} cases)", self.name, self.cases)
        } else {
            format!(
                "FAIL {} ({} of {} cases): {}",
                self.name,
                self.failures.len(),
                self.cases,
                self.failures[0]
            )
        }
    }
}

pub const SUITE_NAMES: [&str; 6] = ["trees", "polygons", "cycles", "bar", "iterint", "numeric"];

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Option<Vec<CheckReport>> {
    match name {
        "trees" => Some(trees_suite(opts)),
        "polygons" => Some(polygons_suite(opts)),
        "cycles" => Some(cycles_suite(opts)),
        "bar" => Some(bar_suite(opts)),
        "iterint" => Some(iterint_suite(opts)),
        "numeric" => Some(numeric_suite(opts)),
        _ => None,
    }
}

pub fn run_all(opts: &SuiteOptions) -> Vec<CheckReport> {
    SUITE_NAMES.iter().flat_map(|n| run_suite(n, opts).unwrap()).collect()
}

// ---------------------------------------------------------------- pools

fn constant(i: usize) -> Atom {
    Atom::constant(format!("x{i}"))
}

/// Every polygon on `2..=max` sides over distinct decorations, sweeping
/// all blank patterns on the non-root sides, plain and enhanced.  The
/// root side is always decorated.
fn polygon_pool(max: usize) -> Vec<RDecoPolygon> {
    let mut out = Vec::new();
    for n in 2..=max {
        for enhanced in [false, true] {
            for mask in 0u32..(1 << (n - 2)) {
                let mut sides = Vec::with_capacity(n);
                for i in 0..n {
                    if enhanced && i == 0 {
                        sides.push(Side::Second(constant(1)));
                    } else if i > 0 && i + 1 < n && mask & (1 << (i - 1)) != 0 {
                        sides.push(Side::Blank);
                    } else {
                        sides.push(Side::Dec(constant(i + 1)));
                    }
                }
                out.push(RDecoPolygon::new(sides).unwrap());
            }
        }
    }
    out
}

/// All tree shapes on `1..=max` edges, each under a distinct decoration,
/// plus a variant with one blank interior leaf when there are at least
/// two leaves.
fn tree_pool(max: usize) -> Vec<RDecoTree> {
    let mut out = Vec::new();
    for e in 1..=max {
        for shape in tree_shapes(e) {
            let distinct = decorate(&shape, None);
            let leaves = distinct.leaves().len();
            out.push(distinct);
            if leaves >= 2 {
                out.push(decorate(&shape, Some(leaves / 2)));
            }
        }
    }
    out
}

/// Distinct constants on every leaf, with leaf `blank_at` left blank.
fn decorate(shape: &RDecoTree, blank_at: Option<usize>) -> RDecoTree {
    let mut t = shape.clone();
    let mut next = 0usize;
    crate::gen::relabel(&mut t.top, &mut |i| {
        next = i + 1;
        if blank_at == Some(i) {
            None
        } else {
            Some(constant(i + 1))
        }
    });
    t.root_dec = Atom::constant("r");
    t
}

fn catalan(k: usize) -> usize {
    // Binomial recurrence; sizes stay tiny.
    let mut row = vec![1usize];
    for _ in 0..k {
        let mut next = vec![0; row.len() + 1];
        for (i, v) in row.iter().enumerate() {
            next[i] += v;
            next[i + 1] += v;
        }
        row = next;
    }
    let mut c2k = row.clone();
    for _ in 0..k {
        let mut next = vec![0; c2k.len() + 1];
        for (i, v) in c2k.iter().enumerate() {
            next[i] += v;
            next[i + 1] += v;
        }
        c2k = next;
    }
    c2k[k] / (k + 1)
}

// ------------------------------------------------- plane canonical form

/// Edges in the branch hanging off one child slot: the connecting edge
/// plus everything below the child.
fn branch_edges(n: &TreeNode) -> usize {
    match n {
        TreeNode::Leaf { .. } => 1,
        TreeNode::Internal { children, .. } => {
            1 + children.iter().map(branch_edges).sum::<usize>()
        }
    }
}

/// Order the children at every vertex canonically, tracking the sign of
/// the edge-set permutation: swapping neighbouring branches costs the
/// product of their edge parities.  Two equal odd branches at one vertex
/// force the whole term to zero.
fn canon_node(n: &TreeNode) -> Option<(TreeNode, i8)> {
    match n {
        TreeNode::Leaf { .. } => Some((n.clone(), 1)),
        TreeNode::Internal { vtype, children } => {
            let mut sign = 1i8;
            let mut items: Vec<(TreeNode, usize)> = Vec::with_capacity(children.len());
            for ch in children {
                let (c, s) = canon_node(ch)?;
                sign *= s;
                let e = branch_edges(&c);
                items.push((c, e));
            }
            let m = items.len();
            for i in 1..m {
                for j in (1..=i).rev() {
                    if items[j - 1].0 > items[j].0 {
                        if items[j - 1].1 % 2 == 1 && items[j].1 % 2 == 1 {
                            sign = -sign;
                        }
                        items.swap(j - 1, j);
                    } else {
                        break;
                    }
                }
            }
            for w in items.windows(2) {
                if w[0].0 == w[1].0 && w[0].1 % 2 == 1 {
                    return None;
                }
            }
            let children = items.into_iter().map(|(c, _)| c).collect();
            Some((TreeNode::Internal { vtype: *vtype, children }, sign))
        }
    }
}

/// A tree up to plane re-embedding: reorder every vertex's children into
/// canonical order and absorb the orientation sign.
fn plane_canon(t: &RDecoTree) -> Option<(RDecoTree, i8)> {
    let (top, sign) = canon_node(&t.top)?;
    Some((RDecoTree { root_dec: t.root_dec.clone(), root_type: t.root_type, top }, sign))
}

fn canon_forest(w: &Forest) -> LinComb<Forest> {
    let mut sign = 1i8;
    let mut factors = Vec::with_capacity(w.len());
    for t in w.factors() {
        match plane_canon(t) {
            None => return LinComb::zero(),
            Some((ct, s)) => {
                sign *= s;
                factors.push(ct);
            }
        }
    }
    WedgeWord::normalize(factors).scaled(&Scalar::from_sign(sign))
}

fn canon_lincomb(lc: &LinComb<Forest>) -> LinComb<Forest> {
    lc.clone().flat_map(|w| canon_forest(&w))
}

fn trees_as_forests(lc: &LinComb<RDecoTree>) -> LinComb<Forest> {
    lc.clone().map_basis(WedgeWord::single)
}

// -------------------------------------------------------------- trees

fn trees_suite(opts: &SuiteOptions) -> Vec<CheckReport> {
    let pool = tree_pool(opts.max_sides);
    let mut reports = Vec::new();

    let mut r = CheckReport::new("tree differential squares to zero");
    r.absorb(exec::map(&pool, |t| {
        let once = t.differential();
        let twice = differential_lincomb(&once);
        if twice.is_zero() {
            None
        } else {
            Some(format!("{t}: d^2 = {twice}"))
        }
    }));
    reports.push(r);

    let mut r = CheckReport::new("tree differential drops one edge and stays well-formed");
    r.absorb(exec::map(&pool, |t| {
        let e = t.edge_count();
        for (w, _) in t.differential().iter() {
            let total: usize = w.factors().iter().map(RDecoTree::edge_count).sum();
            if total != e - 1 {
                return Some(format!("{t}: term {w} has {total} edges, wanted {}", e - 1));
            }
            if !w.factors().iter().all(RDecoTree::well_formed) {
                return Some(format!("{t}: term {w} is not well-formed"));
            }
        }
        None
    }));
    reports.push(r);

    let mut r = CheckReport::new("forest differential squares to zero");
    let mut rand = rng(opts.seed);
    let forests: Vec<Forest> =
        (0..200).map(|_| random_forest(&mut rand, opts.max_sides)).collect();
    r.absorb(exec::map(&forests, |w| {
        let twice = differential_lincomb(&forest_differential(w));
        if twice.is_zero() {
            None
        } else {
            Some(format!("{w}: d^2 = {twice}"))
        }
    }));
    reports.push(r);

    let mut r = CheckReport::new("forest differential obeys the signed product rule");
    let mut rand = rng(opts.seed ^ 0x1e1b);
    let mut lists: Vec<Vec<RDecoTree>> = Vec::new();
    for _ in 0..100 {
        let k = 2 + (rand.gen_range(0..2) as usize);
        let mut list = Vec::with_capacity(k);
        for j in 0..k {
            let e = [1usize, 3, 4][rand.gen_range(0..3)];
            let mut t = random_tree(&mut rand, e, 0.1);
            t.root_dec = Atom::constant(format!("r{j}"));
            list.push(t);
        }
        lists.push(list);
    }
    r.absorb(exec::map(&lists, |list| {
        let word = WedgeWord::normalize(list.clone());
        let lhs = differential_lincomb(&word);
        let mut rhs: LinComb<Forest> = LinComb::zero();
        let mut prefix = 1i8;
        for (i, t) in list.iter().enumerate() {
            for (w, c) in t.differential().iter() {
                let mut factors: Vec<RDecoTree> = list[..i].to_vec();
                factors.extend(w.factors().iter().cloned());
                factors.extend(list[i + 1..].iter().cloned());
                rhs.add_assign(
                    WedgeWord::normalize(factors)
                        .scaled(&(c.clone() * Scalar::from_sign(prefix))),
                );
            }
            if t.edge_count() % 2 == 1 {
                prefix = -prefix;
            }
        }
        if lhs == rhs {
            None
        } else {
            let w: Vec<String> = list.iter().map(|t| t.to_string()).collect();
            Some(format!("[{}]: product rule mismatch", w.join(" ^ ")))
        }
    }));
    reports.push(r);

    reports
}

// ------------------------------------------------------------ polygons

fn polygons_suite(opts: &SuiteOptions) -> Vec<CheckReport> {
    let pool = polygon_pool(opts.max_sides);
    let plain: Vec<RDecoPolygon> =
        pool.iter().filter(|p| !p.is_enhanced() && !p.quotient_zero()).cloned().collect();
    let mut reports = Vec::new();

    let mut r = CheckReport::new("polygon differential squares to zero");
    r.absorb(exec::map(&pool, |p| {
        let twice = crate::polygon::wedge_differential_lincomb(&p.differential(), false);
        if twice.is_zero() {
            None
        } else {
            Some(format!("{p}: d^2 = {twice}"))
        }
    }));
    reports.push(r);

    let mut r = CheckReport::new("reversing polygon differential squares to zero");
    r.absorb(exec::map(&pool, |p| {
        let twice = crate::polygon::wedge_differential_lincomb(&p.differential_bar(), true);
        if twice.is_zero() {
            None
        } else {
            Some(format!("{p}: d-bar^2 = {twice}"))
        }
    }));
    reports.push(r);

    let mut r = CheckReport::new("triangulation intertwines the differentials");
    r.absorb(exec::map(&plain, |p| {
        let lhs = canon_lincomb(&differential_lincomb(&trees_as_forests(&psi(p))));
        let rhs = canon_lincomb(&psi_wedge_lincomb(&p.differential()));
        if lhs == rhs {
            None
        } else {
            Some(format!("{p}: tree-d of psi != psi of polygon-d"))
        }
    }));
    reports.push(r);

    // The two differentials only agree term-for-term when every side is
    // decorated; blank sides drop different cut terms from each.
    let full: Vec<RDecoPolygon> = plain
        .iter()
        .filter(|p| p.sides().iter().all(|s| !s.is_blank()))
        .cloned()
        .collect();
    let mut r = CheckReport::new("reversing differential agrees after triangulation");
    r.absorb(exec::map(&full, |p| {
        let lhs = canon_lincomb(&psi_wedge_lincomb(&p.differential_bar()));
        let rhs = canon_lincomb(&psi_wedge_lincomb(&p.differential()));
        if lhs == rhs {
            None
        } else {
            Some(format!("{p}: psi of reversing-d != psi of plain-d"))
        }
    }));
    reports.push(r);

    let mirrorable: Vec<RDecoPolygon> = plain
        .iter()
        .filter(|p| !p.sides()[p.len() - 2].is_blank())
        .cloned()
        .collect();
    let mut r = CheckReport::new("side reversal flips triangulation by side-count parity");
    r.absorb(exec::map(&mirrorable, |p| {
        let mut sides = p.sides().to_vec();
        let n = sides.len();
        sides[..n - 1].reverse();
        let mirrored = RDecoPolygon::new(sides).unwrap();
        let lhs = canon_lincomb(&trees_as_forests(&psi(&mirrored)));
        let sign = Scalar::from_sign(if n % 2 == 0 { 1 } else { -1 });
        let rhs = canon_lincomb(&trees_as_forests(&psi(p))).scaled(&sign);
        if lhs == rhs {
            None
        } else {
            Some(format!("{p}: mirrored triangulation has the wrong sign"))
        }
    }));
    reports.push(r);

    let mut r = CheckReport::new("triangulation count is Catalan");
    for n in 2..=opts.max_sides + 1 {
        let p = RDecoPolygon::decorated((1..=n).map(constant).collect()).unwrap();
        let got = tree_sum(&p).len();
        let want = catalan(n - 2);
        r.case(got == want, || format!("{p}: {got} trees, wanted {want}"));
    }
    reports.push(r);

    let mut r = CheckReport::new("dissection census matches the closed count");
    for n in 2..=opts.max_sides {
        for enhanced in [false, true] {
            let p = random_polygon(&mut rng(1), n, 0.0, enhanced);
            for independent in [false, true] {
                let got = if independent {
                    independent_dissections(&p).len() as u64
                } else {
                    all_dissections(&p).len() as u64
                };
                let want = sweep_count(n, enhanced, independent);
                r.case(got == want, || {
                    format!("n={n} enhanced={enhanced} independent={independent}: {got} != {want}")
                });
            }
        }
    }
    reports.push(r);

    let (r1, r2) = dissection_sign_checks(opts);
    reports.push(r2);
    reports.push(r1);

    reports
}

fn arrow_sign(a: &Arrow) -> i8 {
    if a.backward() {
        -1
    } else {
        1
    }
}

/// Both dissection-sign laws on a shared random sample: dropping one
/// arrow rescales the sign by the parities of the arrow and of its
/// enclosing region, and the sign of a refinement factors over the
/// arrows added region by region.
fn dissection_sign_checks(opts: &SuiteOptions) -> (CheckReport, CheckReport) {
    let mut factoring = CheckReport::new("dissection sign factors over added arrows");
    let mut removal = CheckReport::new("removing one arrow rescales the dissection sign");
    let mut rand = rng(opts.seed ^ 0x5167);
    let mut samples: Vec<(RDecoPolygon, Vec<Arrow>)> = Vec::new();
    for _ in 0..500 {
        let n = rand.gen_range(3..=opts.max_sides.max(4));
        let enhanced = rand.gen_bool(0.3);
        let p = random_polygon(&mut rand, n, 0.15, enhanced);
        let full = random_dissection(&mut rand, &p, 0.7);
        samples.push((p, full));
    }

    let removal_out = exec::map(&samples, |(p, full)| {
        let whole = regions(p, full, true);
        for beta in full.iter() {
            let without: Vec<Arrow> = full.iter().filter(|a| *a != beta).cloned().collect();
            let idx = whole.parts.iter().position(|part| part.arrow == *beta).unwrap();
            let eps_parent = match whole.parts[idx].parent {
                None => 1,
                Some(j) => arrow_sign(&whole.parts[j].arrow),
            };
            let chi = whole.parts[idx].body.weight();
            let factor = if (eps_parent * arrow_sign(beta)) == -1 && chi % 2 == 1 { -1 } else { 1 };
            let got = regions(p, &without, true).sign();
            let want = whole.sign() * factor;
            if got != want {
                return Some(format!("{p} minus {beta} from {:?}: {got} != {want}", full));
            }
        }
        None
    });
    removal.absorb(removal_out);

    let factoring_out = exec::map(&samples, |(p, full)| {
        let kept: Vec<Arrow> = full.iter().step_by(2).cloned().collect();
        let whole = regions(p, full, true);
        let mut factor = 1i8;
        for beta in full.iter() {
            if kept.contains(beta) {
                continue;
            }
            let mut single = kept.clone();
            single.push(*beta);
            let solo = regions(p, &single, true);
            let idx = solo.parts.iter().position(|part| part.arrow == *beta).unwrap();
            let eps_parent = match solo.parts[idx].parent {
                None => 1,
                Some(j) => arrow_sign(&solo.parts[j].arrow),
            };
            let full_idx = whole.parts.iter().position(|part| part.arrow == *beta).unwrap();
            let chi = whole.parts[full_idx].body.weight();
            if (eps_parent * arrow_sign(beta)) == -1 && chi % 2 == 1 {
                factor = -factor;
            }
        }
        let got = whole.sign();
        let want = regions(p, &kept, true).sign() * factor;
        if got != want {
            Some(format!("{p} with {:?} over {:?}: {got} != {want}", full, kept))
        } else {
            None
        }
    });
    factoring.absorb(factoring_out);

    (factoring, removal)
}

// ------------------------------------------------------------- cycles

fn cycles_suite(opts: &SuiteOptions) -> Vec<CheckReport> {
    let pool = tree_pool(opts.max_sides - 1);
    let mut reports = Vec::new();

    // A blank leaf zeroes every contraction term while its cycle still has
    // faces, so the chain-map law is about fully decorated trees.
    let decorated_pool: Vec<RDecoTree> = pool
        .iter()
        .filter(|t| t.leaf_decorations().iter().all(Option::is_some))
        .cloned()
        .collect();
    let mut r = CheckReport::new("forest cycling intertwines differential and boundary");
    r.absorb(exec::map(&decorated_pool, |t| {
        let image = match cycle_of_tree(t) {
            Ok(v) => v,
            Err(e) => return Some(format!("{t}: {e}")),
        };
        let lhs = match boundary_lincomb(&image) {
            Ok(v) => v,
            Err(e) => return Some(format!("{t}: boundary failed: {e}")),
        };
        let rhs = match cycle_of_forest_lincomb(&t.differential()) {
            Ok(v) => v,
            Err(e) => return Some(format!("{t}: image of d failed: {e}")),
        };
        if lhs == rhs {
            None
        } else {
            Some(format!("{t}: boundary of image != image of differential"))
        }
    }));
    reports.push(r);

    let mut r = CheckReport::new("boundary of a tree cycle squares to zero");
    r.absorb(exec::map(&pool, |t| {
        let image = match cycle_of_tree(t) {
            Ok(v) => v,
            Err(e) => return Some(format!("{t}: {e}")),
        };
        let once = match boundary_lincomb(&image) {
            Ok(v) => v,
            Err(e) => return Some(format!("{t}: boundary failed: {e}")),
        };
        match boundary_lincomb(&once) {
            Ok(v) if v.is_zero() => None,
            Ok(v) => Some(format!("{t}: boundary^2 = {v}")),
            Err(e) => Some(format!("{t}: boundary^2 failed: {e}")),
        }
    }));
    reports.push(r);

    let mut r = CheckReport::new("cycling lands in the expected bigrading");
    let mut spined = pool.clone();
    let mut rand = rng(opts.seed ^ 0x5b1);
    for _ in 0..40 {
        let segments = 1 + rand.gen_range(0..3);
        spined.push(random_spine_tree(&mut rand, segments, opts.max_sides));
    }
    r.absorb(exec::map(&spined, |t| {
        let image = match cycle_of_tree(t) {
            Ok(v) => v,
            Err(e) => return Some(format!("{t}: {e}")),
        };
        let (ambient, free) = expected_bigrading(t);
        for (c, _) in image.iter() {
            if c.ambient() != ambient || c.dimension() != free {
                return Some(format!(
                    "{t}: cycle {c} sits in ({}, {}), wanted ({ambient}, {free})",
                    c.ambient(),
                    c.dimension()
                ));
            }
        }
        None
    }));
    reports.push(r);

    let mut r = CheckReport::new("equal adjacent leaf decorations collapse the cycle");
    for t in [
        RDecoTree::new(
            Atom::constant("r"),
            TreeNode::internal(vec![
                TreeNode::leaf(constant(1)),
                TreeNode::leaf(constant(1)),
            ]),
        ),
        RDecoTree::new(
            Atom::constant("r"),
            TreeNode::internal(vec![
                TreeNode::leaf(constant(1)),
                TreeNode::leaf(constant(1)),
                TreeNode::leaf(constant(2)),
            ]),
        ),
        RDecoTree::new(
            Atom::constant("r"),
            TreeNode::internal(vec![
                TreeNode::leaf(constant(2)),
                TreeNode::internal(vec![
                    TreeNode::leaf(constant(1)),
                    TreeNode::leaf(constant(1)),
                ]),
            ]),
        ),
    ] {
        let image = cycle_of_tree(&t);
        r.case(matches!(&image, Ok(v) if v.is_zero()), || {
            format!("{t}: image should vanish, got {:?}", image.map(|v| v.to_string()))
        });
    }
    reports.push(r);

    let sums: Vec<RDecoPolygon> = (3..=opts.max_sides)
        .map(|n| {
            let mut atoms: Vec<Atom> = (1..n).map(constant).collect();
            atoms.push(Atom::one());
            RDecoPolygon::decorated(atoms).unwrap()
        })
        .collect();

    let mut r = CheckReport::new("tree-sum cycles are admissible");
    r.absorb(exec::map(&sums, |p| {
        let image = match cycle_of_forest_lincomb(&trees_as_forests(&tree_sum(p))) {
            Ok(v) => v,
            Err(e) => return Some(format!("{p}: {e}")),
        };
        for (c, _) in image.iter() {
            match c.is_admissible() {
                Ok(true) => {}
                Ok(false) => return Some(format!("{p}: {c} is inadmissible")),
                Err(e) => return Some(format!("{p}: {c}: {e}")),
            }
        }
        None
    }));
    reports.push(r);

    let mut r = CheckReport::new("tree-sum cycle boundaries are decomposable");
    r.absorb(exec::map(&sums, |p| {
        let image = match cycle_of_forest_lincomb(&trees_as_forests(&tree_sum(p))) {
            Ok(v) => v,
            Err(e) => return Some(format!("{p}: {e}")),
        };
        let bound = match boundary_lincomb(&image) {
            Ok(v) => v,
            Err(e) => return Some(format!("{p}: boundary failed: {e}")),
        };
        for (c, _) in bound.iter() {
            let pieces = split_components(c);
            if pieces.len() < 2 || !c.is_decomposable() {
                return Some(format!("{p}: boundary term {c} does not decompose"));
            }
            for piece in pieces {
                let part = Cycle::normal_form(piece, vec![]);
                for (q, _) in part.iter() {
                    match q.is_admissible() {
                        Ok(true) => {}
                        Ok(false) => {
                            return Some(format!("{p}: component {q} of {c} is inadmissible"))
                        }
                        Err(e) => return Some(format!("{p}: component {q} of {c}: {e}")),
                    }
                }
            }
        }
        None
    }));
    reports.push(r);

    let mut r = CheckReport::new("tree-sum cycles have empty faces at infinity");
    r.absorb(exec::map(&sums, |p| {
        let image = match cycle_of_forest_lincomb(&trees_as_forests(&tree_sum(p))) {
            Ok(v) => v,
            Err(e) => return Some(format!("{p}: {e}")),
        };
        for (c, _) in image.iter() {
            for i in 0..c.ambient() {
                match c.face(i, true) {
                    Ok(v) if v.is_zero() => {}
                    Ok(v) => return Some(format!("{p}: {c} meets infinity: {v}")),
                    Err(e) => return Some(format!("{p}: {c} at infinity: {e}")),
                }
            }
        }
        None
    }));
    reports.push(r);

    reports
}

/// Coordinate indices grouped by shared parameters; parameter-free
/// coordinates stand alone.
fn split_components(c: &Cycle) -> Vec<Vec<crate::cycle::Coordinate>> {
    let coords = c.coords();
    let m = coords.len();
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
            let share =
                coords[i].mon.parameters().iter().any(|p| coords[j].mon.exponent_of(p) != 0);
            if share {
                let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                comp[a] = b;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<crate::cycle::Coordinate>> =
        std::collections::BTreeMap::new();
    for i in 0..m {
        let root = find(&mut comp, i);
        groups.entry(root).or_default().push(coords[i].clone());
    }
    groups.into_values().collect()
}

// ---------------------------------------------------------------- bar

fn bar_suite(opts: &SuiteOptions) -> Vec<CheckReport> {
    let pool = polygon_pool(opts.max_sides);
    let small = polygon_pool(opts.max_sides - 1);
    let mut reports = Vec::new();

    let mut r = CheckReport::new("bar series of a polygon is a cocycle");
    r.absorb(exec::map(&pool, |p| {
        let d = bar_differential_lincomb(&bar_of_polygon(p));
        if d.is_zero() {
            None
        } else {
            Some(format!("{p}: D B = {d}"))
        }
    }));
    reports.push(r);

    let mut r = CheckReport::new("bar differential squares to zero");
    let mut rand = rng(opts.seed ^ 0xba2);
    let mut words: Vec<BarWord> = Vec::new();
    for _ in 0..100 {
        let letters = 1 + rand.gen_range(0..3);
        let mut w: Vec<Letter> = Vec::new();
        for _ in 0..letters {
            let count = 1 + rand.gen_range(0..2);
            let mut polys: Vec<RDecoPolygon> = Vec::with_capacity(count);
            for _ in 0..count {
                let n = 2 + rand.gen_range(0..3);
                polys.push(random_polygon(&mut rand, n, 0.1, false));
            }
            let wedge = WedgeWord::normalize(polys);
            let first = wedge.iter().next().map(|(word, _)| word.clone());
            match first {
                Some(word) => w.push(word),
                None => continue,
            }
        }
        if !w.is_empty() {
            words.push(TensorWord::new(w));
        }
    }
    r.absorb(exec::map(&words, |w| {
        let twice = bar_differential_lincomb(&bar_differential(w));
        if twice.is_zero() {
            None
        } else {
            Some(format!("{w}: D^2 = {twice}"))
        }
    }));
    reports.push(r);

    let plain_small: Vec<RDecoPolygon> =
        small.iter().filter(|p| !p.is_enhanced()).cloned().collect();
    let mut r = CheckReport::new("dissection coproduct equals deconcatenation");
    r.absorb(exec::map(&plain_small, |p| {
        let lhs = coproduct_adm(p);
        let rhs = deconcat_lincomb(&bar_of_polygon(p));
        if lhs == rhs {
            None
        } else {
            Some(format!("{p}: coproduct != deconcatenation"))
        }
    }));
    reports.push(r);

    let mut r = CheckReport::new("coproduct is coassociative");
    r.absorb(exec::map(&plain_small, |p| {
        let cp = coproduct_adm(p);
        let mut left: LinComb<(BarWord, BarWord, BarWord)> = LinComb::zero();
        let mut right: LinComb<(BarWord, BarWord, BarWord)> = LinComb::zero();
        for ((a, b), c) in cp.iter() {
            for ((a1, a2), c2) in deconcat(a).iter() {
                left.add_term((a1.clone(), a2.clone(), b.clone()), c.clone() * c2.clone());
            }
            for ((b1, b2), c2) in deconcat(b).iter() {
                right.add_term((a.clone(), b1.clone(), b2.clone()), c.clone() * c2.clone());
            }
        }
        if left == right {
            None
        } else {
            Some(format!("{p}: coassociativity fails"))
        }
    }));
    reports.push(r);

    let mut r = CheckReport::new("counit slices recover the series");
    r.absorb(exec::map(&plain_small, |p| {
        let series = bar_of_polygon(p);
        let cp = coproduct_adm(p);
        let mut left_unit: LinComb<BarWord> = LinComb::zero();
        let mut right_unit: LinComb<BarWord> = LinComb::zero();
        for ((a, b), c) in cp.iter() {
            if a.is_empty() {
                left_unit.add_term(b.clone(), c.clone());
            }
            if b.is_empty() {
                right_unit.add_term(a.clone(), c.clone());
            }
        }
        if left_unit == series && right_unit == series {
            None
        } else {
            Some(format!("{p}: counit slices disagree with the series"))
        }
    }));
    reports.push(r);

    let mut r = CheckReport::new("deconcatenation is a shuffle bialgebra map");
    let mut rand = rng(opts.seed ^ 0x5f1e);
    let mut pairs: Vec<(BarWord, BarWord)> = Vec::new();
    for _ in 0..60 {
        let make = |rand: &mut ChaCha8Rng| {
            let letters = 1 + rand.gen_range(0..2);
            let mut w: Vec<Letter> = Vec::with_capacity(letters);
            for _ in 0..letters {
                let n = 2 + rand.gen_range(0..2);
                w.push(WedgeWord::single(random_polygon(rand, n, 0.0, false)));
            }
            TensorWord::new(w)
        };
        let a = make(&mut rand);
        let b = make(&mut rand);
        pairs.push((a, b));
    }
    r.absorb(exec::map(&pairs, |(a, b)| {
        let lhs = shuffle(a, b).flat_map(|w| deconcat(&w));
        let mut rhs: LinComb<BarTensor> = LinComb::zero();
        for ((a1, a2), c1) in deconcat(a).iter() {
            for ((b1, b2), c2) in deconcat(b).iter() {
                for (l, cl) in shuffle(a1, b1).iter() {
                    for (rr, cr) in shuffle(a2, b2).iter() {
                        rhs.add_term(
                            (l.clone(), rr.clone()),
                            c1.clone() * c2.clone() * cl.clone() * cr.clone(),
                        );
                    }
                }
            }
        }
        if lhs == rhs {
            None
        } else {
            Some(format!("[{a}] shuffled with [{b}]: coproduct mismatch"))
        }
    }));
    reports.push(r);

    let marked_small: Vec<RDecoPolygon> =
        small.iter().filter(|p| p.is_enhanced()).cloned().collect();
    let mut r = CheckReport::new("marked coaction splits the series at the mark");
    r.absorb(exec::map(&marked_small, |p| {
        let lhs = coaction_enh(p);
        let mut rhs: LinComb<BarTensor> = LinComb::zero();
        for (w, c) in bar_of_polygon(p).iter() {
            let letters = w.letters();
            for k in 1..=letters.len() {
                rhs.add_term(
                    (
                        TensorWord::new(letters[..k].to_vec()),
                        TensorWord::new(letters[k..].to_vec()),
                    ),
                    c.clone(),
                );
            }
        }
        if lhs == rhs {
            None
        } else {
            Some(format!("{p}: marked coaction != splits keeping the mark"))
        }
    }));
    reports.push(r);

    reports
}

// ------------------------------------------------------------ iterint

fn iterint_suite(opts: &SuiteOptions) -> Vec<CheckReport> {
    let iopts = IOptions::default();
    let pool: Vec<RDecoPolygon> = polygon_pool(opts.max_sides)
        .into_iter()
        .filter(|p| !p.is_enhanced() && !p.quotient_zero())
        .collect();
    let small: Vec<RDecoPolygon> =
        pool.iter().filter(|p| p.len() < opts.max_sides).cloned().collect();
    let mut reports = Vec::new();

    let mut r = CheckReport::new("cobracket matches the reversing polygon differential");
    r.absorb(exec::map(&pool, |p| {
        let lhs = i_cobracket(&polygon_to_i(p), iopts);
        let mut rhs: LinComb<WedgeWord<ISymbol>> = LinComb::zero();
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
            for (rs, rc) in lie_part(&i_normalize(&polygon_to_i(&root), iopts)).iter() {
                for (cs, cc) in lie_part(&i_normalize(&polygon_to_i(&cut), iopts)).iter() {
                    rhs.add_assign(
                        WedgeWord::normalize(vec![rs.clone(), cs.clone()])
                            .scaled(&(rc.clone() * cc.clone() * Scalar::from_sign(sign))),
                    );
                }
            }
        }
        if lhs == rhs {
            None
        } else {
            Some(format!("{p}: cobracket != polygon differential"))
        }
    }));
    reports.push(r);

    let mut r = CheckReport::new("cobracket squares to zero");
    r.absorb(exec::map(&pool, |p| {
        let twice =
            i_cobracket(&polygon_to_i(p), iopts).flat_map(|w| i_cobracket_wedge(&w, iopts));
        if twice.is_zero() {
            None
        } else {
            Some(format!("{p}: delta^2 = {twice}"))
        }
    }));
    reports.push(r);

    let mut r = CheckReport::new("integral coproduct is coassociative");
    r.absorb(exec::map(&pool, |p| {
        let start = i_coproduct(&polygon_to_i(p), iopts);
        let mut left: LinComb<(IMonomial, IMonomial, IMonomial)> = LinComb::zero();
        let mut right: LinComb<(IMonomial, IMonomial, IMonomial)> = LinComb::zero();
        for ((a, b), c) in start.iter() {
            for ((a1, a2), c2) in i_coproduct_monomial(a, iopts).iter() {
                left.add_term((a1.clone(), a2.clone(), b.clone()), c.clone() * c2.clone());
            }
            for ((b1, b2), c2) in i_coproduct_monomial(b, iopts).iter() {
                right.add_term((a.clone(), b1.clone(), b2.clone()), c.clone() * c2.clone());
            }
        }
        if left == right {
            None
        } else {
            Some(format!("{p}: coassociativity fails"))
        }
    }));
    reports.push(r);

    let mut r = CheckReport::new("normalization is idempotent");
    r.absorb(exec::map(&pool, |p| {
        let once = i_normalize(&polygon_to_i(p), iopts);
        for (m, _) in once.iter() {
            let again = crate::iterint::i_normalize_monomial(m, iopts);
            if again != LinComb::single(m.clone()) {
                return Some(format!("{p}: {m} renormalizes to {again}"));
            }
        }
        None
    }));
    reports.push(r);

    let mut r = CheckReport::new("integral coproduct matches dissection slices");
    r.absorb(exec::map(&small, |p| {
        let rhs = i_coproduct(&polygon_to_i(p), iopts);
        let mut lhs: LinComb<(IMonomial, IMonomial)> = LinComb::zero();
        for d in independent_dissections(p) {
            let reg = regions(p, &d, true);
            if reg.quotient_zero() {
                continue;
            }
            let root_part = i_normalize(&polygon_to_i(&reg.root), iopts);
            let mut parts: LinComb<IMonomial> = LinComb::single(IMonomial::one());
            for part in &reg.parts {
                parts = mul_lincomb(&parts, &i_normalize(&polygon_to_i(&part.body), iopts));
            }
            let sign = Scalar::from_sign(reg.sign());
            for (a, ca) in root_part.iter() {
                for (b, cb) in parts.iter() {
                    lhs.add_term((a.clone(), b.clone()), ca.clone() * cb.clone() * sign.clone());
                }
            }
        }
        for (m, c) in i_normalize(&polygon_to_i(p), iopts).into_terms() {
            lhs.add_term((IMonomial::one(), m), c);
        }
        if lhs == rhs {
            None
        } else {
            Some(format!("{p}: dissection slices != integral coproduct"))
        }
    }));
    reports.push(r);

    reports
}

// ------------------------------------------------------------ numeric

fn numeric_suite(opts: &SuiteOptions) -> Vec<CheckReport> {
    let mut reports = Vec::new();

    let mut r = CheckReport::new("double log series agrees with quadrature");
    for (x1, x2) in [(50.0 / 3.0, 5.0), (5.0, 2.5), (-3.0, 7.0)] {
        match double_log_cycle_check(x1, x2) {
            Ok((integral, series)) => r.case((integral - series).abs() < 1e-8, || {
                format!("x1={x1} x2={x2}: |{integral} - {series}| >= 1e-8")
            }),
            Err(e) => r.case(false, || format!("x1={x1} x2={x2}: {e}")),
        }
    }
    reports.push(r);

    let mut r = CheckReport::new("differential identity residual is second order");
    match (check_diff_li(3.0, 7.0, 1e-4), check_diff_li(3.0, 7.0, 1e-2), check_diff_li(3.0, 7.0, 5e-3)) {
        (Ok(tiny), Ok(big), Ok(half)) => {
            r.case(tiny < 1e-6, || format!("residual at h=1e-4 is {tiny}"));
            let ratio = big / half;
            r.case((3.5..=4.5).contains(&ratio), || {
                format!("halving h scales the residual by {ratio}, wanted about 4")
            });
        }
        (a, b, c) => r.case(false, || format!("residual evaluation failed: {a:?} {b:?} {c:?}")),
    }
    reports.push(r);

    let mut r = CheckReport::new("chain cycles integrate to the double log series");
    for (num1, den1, num2, den2) in [(50i64, 3i64, 5i64, 1i64), (5, 1, 5, 2)] {
        let x1 = num1 as f64 / den1 as f64;
        let x2 = num2 as f64 / den2 as f64;
        match realize_marked_chain(&[Scalar::ratio(num1, den1), Scalar::ratio(num2, den2)]) {
            Ok(total) => match li_series(&[1, 1], &[x2 / x1, 1.0 / x2]) {
                Ok(series) => r.case((total - series).abs() < 1e-6, || {
                    format!("x1={x1} x2={x2}: |{total} - {series}| >= 1e-6")
                }),
                Err(e) => r.case(false, || format!("series at ({x1}, {x2}): {e}")),
            },
            Err(e) => r.case(false, || format!("realization at ({x1}, {x2}): {e}")),
        }
    }
    // Weight three: the realized chain is I(0; x(z); 1) = -Li_{1,1,1}(z).
    {
        let zs = [0.2f64, 0.3, 0.4];
        let xs = [
            Scalar::ratio(1000, 24),
            Scalar::ratio(100, 12),
            Scalar::ratio(10, 4),
        ];
        match (realize_marked_chain(&xs), li_series(&[1, 1, 1], &zs)) {
            (Ok(total), Ok(series)) => r.case((total + series).abs() < 1e-6, || {
                format!("z=(0.2,0.3,0.4): |{total} + {series}| >= 1e-6")
            }),
            (a, b) => r.case(false, || format!("weight-3 evaluation failed: {a:?} {b:?}")),
        }
    }
    reports.push(r);

    let mut r = CheckReport::new("series agrees with the integral across weights");
    let mut rand = rng(opts.seed ^ 0x9e3d);
    for m in 1usize..=3 {
        for _ in 0..5 {
            let zs: Vec<f64> = (0..m)
                .map(|_| {
                    let mag = rand.gen_range(0.05..=0.5);
                    if rand.gen_bool(0.5) { mag } else { -mag }
                })
                .collect();
            // Pole positions: x_j = 1 / (z_j z_{j+1} .. z_m).
            let mut xs = vec![0.0f64; m];
            let mut tail = 1.0;
            for j in (0..m).rev() {
                tail *= zs[j];
                xs[j] = 1.0 / tail;
            }
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            let ns = vec![1u32; m];
            match (li_series(&ns, &zs), iterint_numeric(0.0, &xs, 1.0, 1e-10)) {
                (Ok(series), Ok(integral)) => {
                    r.case((series - sign * integral).abs() < 1e-6, || {
                        format!("m={m} z={zs:?}: series {series} vs integral {integral}")
                    })
                }
                (a, b) => r.case(false, || format!("m={m} z={zs:?}: {a:?} {b:?}")),
            }
        }
    }
    reports.push(r);

    let mut r = CheckReport::new("quadrature is stable under tolerance refinement");
    for (xs, tol) in [(vec![50.0 / 3.0, 5.0], 1e-8), (vec![5.0, 2.5, -4.0], 1e-8)] {
        match (
            iterint_numeric(0.0, &xs, 1.0, tol),
            iterint_numeric(0.0, &xs, 1.0, tol * 0.5),
        ) {
            (Ok(coarse), Ok(fine)) => r.case((coarse - fine).abs() < tol, || {
                format!("xs={xs:?}: |{coarse} - {fine}| >= {tol}")
            }),
            (a, b) => r.case(false, || format!("xs={xs:?}: {a:?} {b:?}")),
        }
    }
    reports.push(r);

    let mut r = CheckReport::new("divergent series arguments are refused");
    r.case(li_series(&[1, 1], &[4.0, 0.5]).is_err(), || {
        "li_series accepted z with a trailing product at 1".into()
    });
    r.case(li_series(&[1, 1], &[4.0, 0.2]).is_ok(), || {
        "li_series refused convergent arguments".into()
    });
    reports.push(r);

    reports
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass_on_a_small_bound() {
        let opts = SuiteOptions { max_sides: 5, seed: 7 };
        for report in run_all(&opts) {
            assert!(report.passed(), "{}", report.line());
            assert!(report.cases > 0, "{} ran no cases", report.name);
        }
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run_suite("nonsense", &SuiteOptions::default()).is_none());
    }
}
