//! Floating-point cross-checks: nested polylogarithm series, numeric
//! iterated integrals along a real path, and realization of cycles whose
//! coordinates trace such a path.
//!
//! Two independent quadratures are provided on purpose: the iterated
//! integrals run on adaptive Simpson with an analytic innermost layer,
//! while the double-log check re-integrates with composite Gauss-Lobatto
//! so that agreement is evidence rather than tautology.

use thiserror::Error;

use crate::atom::Atom;
use crate::cycle::{Cycle, Form};
use crate::cycling::cycle_of_tree;
use crate::polygon::{RDecoPolygon, Side};
use crate::psi::psi;
use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq)]
pub enum NumError {
    /// The nested series does not converge for these arguments.
    #[error("series does not converge for the given arguments")]
    NonConvergent,
    /// A pole sits on (or too close to) the integration path.
    #[error("integration path passes through a pole")]
    SingularPath,
    /// The cycle's coordinates do not trace a single integration path.
    #[error("cycle coordinates do not describe a path integral")]
    UnsupportedChain,
}

/// Nested series `sum over m1 < .. < mk` of `prod z_i^{m_i} / m_i^{n_i}`.
/// Requires every trailing argument product to stay strictly inside the
/// unit disc.
pub fn li_series(ns: &[u32], zs: &[f64]) -> Result<f64, NumError> {
    assert_eq!(ns.len(), zs.len(), "one exponent per argument");
    let k = ns.len();
    if k == 0 {
        return Ok(1.0);
    }
    let mut trailing = 1.0f64;
    for j in (0..k).rev() {
        trailing *= zs[j].abs();
        if trailing >= 1.0 - 1e-12 {
            return Err(NumError::NonConvergent);
        }
    }

    // One pass per index m, deepest level last so each level still sees
    // the previous prefix sums.
    let mut pows = vec![1.0f64; k];
    let mut prefix = vec![0.0f64; k];
    let mut total = 0.0f64;
    for m in 1..=200_000u64 {
        let mf = m as f64;
        let mut level = vec![0.0f64; k];
        for j in (0..k).rev() {
            let weight = pows[j] * zs[j] / mf.powi(ns[j] as i32);
            level[j] = if j == 0 { weight } else { weight * prefix[j - 1] };
        }
        for j in 0..k {
            pows[j] *= zs[j];
            prefix[j] += level[j];
        }
        total += level[k - 1];
        if m > 30 && level[k - 1].abs() < 1e-17 * (1.0 + total.abs()) {
            return Ok(total);
        }
    }
    Ok(total)
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, eps: f64) -> f64 {
    fn simpson(a: f64, fa: f64, b: f64, fb: f64, fm: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        fm: f64,
        whole: f64,
        eps: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(a, fa, m, fm, flm);
        let right = simpson(m, fm, b, fb, frm);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * eps {
            return left + right + (left + right - whole) / 15.0;
        }
        recurse(f, a, fa, m, fm, flm, left, 0.5 * eps, depth - 1)
            + recurse(f, m, fm, b, fb, frm, right, 0.5 * eps, depth - 1)
    }
    let m = 0.5 * (a + b);
    let (fa, fb, fm) = (f(a), f(b), f(m));
    let whole = simpson(a, fa, b, fb, fm);
    recurse(f, a, fa, b, fb, fm, whole, eps, 40)
}

fn pole_on_path(x: f64, a: f64, b: f64) -> bool {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    x >= lo - 1e-9 && x <= hi + 1e-9
}

/// `I(x0; x1, .., xn; xend)` along the straight real path, integrating
/// `dt/(t - x_i)` in nested order.  The innermost layer is the closed-form
/// logarithm; outer layers use adaptive Simpson.
pub fn iterint_numeric(x0: f64, xs: &[f64], xend: f64, tol: f64) -> Result<f64, NumError> {
    if xs.is_empty() {
        return Ok(1.0);
    }
    for &x in xs {
        if pole_on_path(x, x0, xend) {
            return Err(NumError::SingularPath);
        }
    }
    fn level(j: usize, t: f64, x0: f64, xs: &[f64], tol: f64) -> f64 {
        if j == 0 {
            return ((t - xs[0]) / (x0 - xs[0])).ln();
        }
        adaptive_simpson(
            &|s| level(j - 1, s, x0, xs, tol * 0.2) / (s - xs[j]),
            x0,
            t,
            tol,
        )
    }
    Ok(level(xs.len() - 1, xend, x0, xs, tol))
}

/// Composite five-point Gauss-Lobatto quadrature, doubling panels until
/// two refinements agree.
fn gauss_lobatto(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let nodes = [-1.0, -(3.0f64 / 7.0).sqrt(), 0.0, (3.0f64 / 7.0).sqrt(), 1.0];
    let weights = [0.1, 49.0 / 90.0, 32.0 / 45.0, 49.0 / 90.0, 0.1];
    let composite = |panels: usize| -> f64 {
        let h = (b - a) / panels as f64;
        let mut acc = 0.0;
        for p in 0..panels {
            let (lo, hi) = (a + p as f64 * h, a + (p + 1) as f64 * h);
            let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
            for (x, w) in nodes.iter().zip(weights) {
                acc += w * half * f(mid + half * x);
            }
        }
        acc
    };
    let mut panels = 2;
    let mut prev = composite(panels);
    loop {
        panels *= 2;
        let next = composite(panels);
        if (next - prev).abs() < tol || panels > 1 << 14 {
            return next;
        }
        prev = next;
    }
}

/// The double logarithm two unrelated ways: the one-variable integral
/// `int_0^1 log((s - x1)/(-x1)) / (s - x2) ds` by Gauss-Lobatto, and the
/// nested series at `z1 = x2/x1`, `z2 = 1/x2`.  Returns both values.
pub fn double_log_cycle_check(x1: f64, x2: f64) -> Result<(f64, f64), NumError> {
    if pole_on_path(x1, 0.0, 1.0) || pole_on_path(x2, 0.0, 1.0) {
        return Err(NumError::SingularPath);
    }
    let integral = gauss_lobatto(&|s| ((s - x1) / (-x1)).ln() / (s - x2), 0.0, 1.0, 1e-12);
    let series = li_series(&[1, 1], &[x2 / x1, 1.0 / x2])?;
    Ok((integral, series))
}

/// One-variable value `I(0; y; 1)`.
pub fn i1(y: f64) -> f64 {
    (1.0 - 1.0 / y).ln()
}

/// Residual of the differential identities for `I(0; a1, a2; 1)`: central
/// differences of the numeric integral against the closed-form right-hand
/// sides, one partial per argument.  Second order in `h`.
pub fn check_diff_li(a1: f64, a2: f64, h: f64) -> Result<f64, NumError> {
    let tol = 1e-12;
    let value = |u: f64, v: f64| iterint_numeric(0.0, &[u, v], 1.0, tol);

    let d1 = (value(a1 + h, a2)? - value(a1 - h, a2)?) / (2.0 * h);
    let rhs1 = i1(a2) * (1.0 / (a1 - a2) - 1.0 / a1) - i1(a1) / (a1 - a2);

    let d2 = (value(a1, a2 + h)? - value(a1, a2 - h)?) / (2.0 * h);
    let rhs2 = i1(a2) / (a2 - a1) + i1(a1) * (1.0 / (a1 - a2) - 1.0 / (1.0 - a2));

    Ok((d1 - rhs1).abs().max((d2 - rhs2).abs()))
}

/// Numeric value of a cycle whose coordinates walk its simplicial chain:
/// every parameter-carrying cycle averages out to zero, the empty product
/// is one, and a chain of `1 - s_i/x_i` coordinates is the path integral
/// with the `x_i` read off in chain order.  Chain ends default to zero
/// and one when their atoms carry no value.
pub fn realize_bar_entry(cycle: &Cycle) -> Result<f64, NumError> {
    if cycle
        .coords()
        .iter()
        .any(|c| !c.mon.is_parameter_free())
    {
        return Ok(0.0);
    }
    if cycle.coords().is_empty() {
        return Ok(1.0);
    }
    let chain = cycle.chain();
    if chain.len() != cycle.coords().len() + 2 {
        return Err(NumError::UnsupportedChain);
    }
    let endpoint = |i: usize, default: f64| -> Result<f64, NumError> {
        match chain[i].value() {
            Some(v) => Ok(v.to_f64()),
            None if chain[i].is_topological() => Ok(default),
            None => Err(NumError::UnsupportedChain),
        }
    };
    let start = endpoint(0, 0.0)?;
    let end = endpoint(chain.len() - 1, 1.0)?;

    let mut xs = Vec::with_capacity(chain.len() - 2);
    for s in &chain[1..chain.len() - 1] {
        let mut found = None;
        for coord in cycle.coords() {
            if coord.mon.exponent_of(s) == 0 {
                continue;
            }
            if found.is_some() || coord.form != Form::OneMinus || coord.mon.exponent_of(s) != 1 {
                return Err(NumError::UnsupportedChain);
            }
            let rest: Vec<(&crate::atom::Atom, i64)> =
                coord.mon.factors().filter(|(a, _)| *a != s).collect::<Vec<_>>();
            match rest.as_slice() {
                [(x, -1)] => match x.value() {
                    Some(v) => found = Some(v.to_f64()),
                    None => return Err(NumError::UnsupportedChain),
                },
                _ => return Err(NumError::UnsupportedChain),
            }
        }
        xs.push(found.ok_or(NumError::UnsupportedChain)?);
    }
    iterint_numeric(start, &xs, end, 1e-10)
}

/// Numeric value of the marked polygon on the given points: triangulate,
/// push every tree to its cycle and integrate each chain term.  Only the
/// fully second-type caterpillar survives realization, so the sum equals
/// `I(0; x1, .., xm; 1)` whenever that integral exists.
pub fn realize_marked_chain(values: &[Scalar]) -> Result<f64, NumError> {
    let mut sides = vec![Side::Second(Atom::topological(0))];
    for (i, v) in values.iter().enumerate() {
        sides.push(Side::Dec(Atom::constant(format!("x{}", i + 1)).with_value(v.clone())));
    }
    sides.push(Side::Dec(Atom::one()));
    let p = RDecoPolygon::new(sides).expect("marked polygon is well formed");
    let mut total = 0.0;
    for (t, c) in psi(&p).iter() {
        let image = cycle_of_tree(t).map_err(|_| NumError::UnsupportedChain)?;
        for (cycle, k) in image.iter() {
            total += c.to_f64() * k.to_f64() * realize_bar_entry(cycle)?;
        }
    }
    Ok(total)
}
