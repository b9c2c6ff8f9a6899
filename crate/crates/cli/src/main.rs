//! Command-line front end for the polygon/tree/cycle engine.
//!
//! Exit codes: 0 success, 1 malformed input, 2 an operation left its domain
//! (degenerate face, singular integration path, unrealizable chain), 3 a
//! verification suite failed (the first counterexample is printed).

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use rdeco::bar::{bar_of_polygon, coproduct_adm, deconcat_lincomb};
use rdeco::checks::{run_all, run_suite, SuiteOptions, SUITE_NAMES};
use rdeco::cycle::boundary_lincomb;
use rdeco::cycling::cycle_of_tree;
use rdeco::iterint::{i_cobracket, i_coproduct, i_normalize, IOptions};
use rdeco::numeric::{double_log_cycle_check, iterint_numeric, li_series, realize_marked_chain};
use rdeco::psi::psi;
use rdeco::LinComb;

use rdeco_cli::parse;
use rdeco_cli::render::{self, Format, Quantity};

const GRAMMARS: &str = "\
OBJECT GRAMMARS (JSON alternatives start with `{`; outputs mirror them)
  name     letters, digits, `_`, `'`.  `t`/`u`/`v`/`w` with an optional index
           are cycle parameters, `s0`, `s1`, ... are simplicial variables,
           integers are numeric constants, anything else is a free constant.
  tree     `(root top)`: the root decoration and one vertex, where a vertex
           is a decorated leaf, `_` (undecorated), or `(v1 v2 ...)` with two
           or more children.  `~` in front marks the second kind:
           `(~s3 ~(~(~s0 a) (b c)))`.
  polygon  `[d1,d2,...,dn]`: sides in order, the root side last; `_` for an
           undecorated side, `~name` (first position only) for the marked
           side of a based polygon: `[~s0,x1,x2,1]`.
  cycle    `[c1, c2, ...]`: coordinates `1-<mon>` or `<mon>`, a monomial
           being a `*`-product of powered names over at most one `/`, e.g.
           `[1-1/t, 1-t/x1, 1-t/x2]`.  An ordered simplicial chain may
           follow: `[1-s1/x1] with s0<=s1<=1`.
  bar word `[p1|p2|...]`: letters separated by `|`, each letter a polygon or
           a ` ^ `-join of polygons; `1` is the empty word.
  symbol   `I(a0; a1, ..., an; b)` with `0` for the zero base point.

Linear combinations print as `a - 2*b + c`; under --format json they print
as {\"terms\": [{\"coeff\": \"p/q\", \"basis\": ...}]}.";

#[derive(Parser)]
#[command(
    name = "rdeco",
    version,
    about = "Decorated polygons, plane trees, algebraic cycles, and the maps between them",
    after_long_help = GRAMMARS
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decorated plane trees.
    #[command(subcommand)]
    Tree(TreeCmd),
    /// Decorated polygons and their bar algebra.
    #[command(subcommand)]
    Polygon(PolygonCmd),
    /// Parametrized algebraic cycles.
    #[command(subcommand)]
    Cycle(CycleCmd),
    /// Formal iterated-integral symbols.
    #[command(subcommand)]
    Iterint(IterintCmd),
    /// Numerical evaluation.
    #[command(subcommand)]
    Eval(EvalCmd),
    /// Cross-checks between independent realizations.
    #[command(subcommand)]
    Compare(CompareCmd),
    /// Run a verification suite (or `all`); exits 3 on failure.
    Verify {
        /// One of: trees, polygons, cycles, bar, iterint, numeric, all.
        suite: String,
        /// Largest polygon side count exercised by randomized checks.
        #[arg(long, default_value_t = 6)]
        max_sides: usize,
        /// Sampling seed; falls back to POLYLOG_SEED, then 42.
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Subcommand)]
enum TreeCmd {
    /// Differential of a tree, as a sum of forests.
    Diff { tree: String },
}

#[derive(Subcommand)]
enum PolygonCmd {
    /// Differential of a polygon, as a sum of wedge words.
    Diff {
        poly: String,
        /// Use the bar-compatible variant (signs twisted by the region sweep).
        #[arg(long)]
        bar_variant: bool,
    },
    /// Sum of trees dual to the dissections of a polygon.
    Psi { poly: String },
    /// Image of a polygon in the bar construction.
    Bar { poly: String },
    /// Coproduct of the bar image.
    Coproduct {
        poly: String,
        #[arg(long, value_enum, default_value_t = Method::Deconcat)]
        method: Method,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Deconcatenation of the full bar image.
    Deconcat,
    /// Direct sum over admissible dissecting arrows.
    Admissible,
}

#[derive(Subcommand)]
enum CycleCmd {
    /// Cycle attached to a tree.
    FromTree { tree: String },
    /// Cycle attached to a polygon, summed over its dual trees.
    FromPolygon { poly: String },
    /// Full boundary of a cycle: face sum plus the chain part.
    Diff { cycle: String },
    /// Check each term for proper boundary intersections.
    Admissible { cycle: String },
}

#[derive(Subcommand)]
enum IterintCmd {
    /// Rewrite a symbol into the shuffle-regularized basis.
    Normalize { symbol: String },
    /// Coproduct of a symbol, as a sum of tensors.
    Coproduct { symbol: String },
    /// Cobracket of a symbol, as a sum of wedges.
    Cobracket { symbol: String },
}

#[derive(Subcommand)]
enum EvalCmd {
    /// Nested polylogarithm series at real arguments inside the polydisc.
    Li {
        /// Comma-separated exponents, e.g. --ns 1,1.
        #[arg(long, value_delimiter = ',', required = true)]
        ns: Vec<u32>,
        /// Comma-separated arguments, same length as --ns.
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        zs: Vec<f64>,
    },
    /// Iterated path integral with the given interior points.
    Iint {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        x0: f64,
        /// Comma-separated interior points, e.g. --xs 50/3 as 16.666...
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        xs: Vec<f64>,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        xend: f64,
        /// Quadrature refinement threshold.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
}

#[derive(Subcommand)]
enum CompareCmd {
    /// Compare the weight-two series, the iterated integral, and the value
    /// realized from the cycle image of the marked quadrangle.
    Hodge {
        /// First argument, as an integer, `p/q`, or decimal.
        #[arg(long, allow_negative_numbers = true)]
        x1: String,
        /// Second argument, same forms.
        #[arg(long, allow_negative_numbers = true)]
        x2: String,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure { code: 1, message: e.to_string() }
}

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure { code: 2, message: e.to_string() }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are not errors; everything else is bad usage.
            let _ = e.print();
            return match e.exit_code() {
                0 => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(&cli) {
        Ok((out, code)) => {
            // Tolerate a closed pipe on the reading side.
            use std::io::Write;
            let _ = writeln!(std::io::stdout(), "{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<(String, u8), Failure> {
    let fmt = cli.format;
    let out = match &cli.cmd {
        Cmd::Tree(TreeCmd::Diff { tree }) => {
            let t = parse::tree_any(tree).map_err(invalid)?;
            render::lincomb(&t.differential(), fmt)
        }
        Cmd::Polygon(cmd) => polygon_cmd(cmd, fmt)?,
        Cmd::Cycle(cmd) => cycle_cmd(cmd, fmt)?,
        Cmd::Iterint(cmd) => {
            let opts = IOptions::default();
            match cmd {
                IterintCmd::Normalize { symbol } => {
                    let s = parse::symbol_any(symbol).map_err(invalid)?;
                    render::lincomb(&i_normalize(&s, opts), fmt)
                }
                IterintCmd::Coproduct { symbol } => {
                    let s = parse::symbol_any(symbol).map_err(invalid)?;
                    render::lincomb(&i_coproduct(&s, opts), fmt)
                }
                IterintCmd::Cobracket { symbol } => {
                    let s = parse::symbol_any(symbol).map_err(invalid)?;
                    render::lincomb(&i_cobracket(&s, opts), fmt)
                }
            }
        }
        Cmd::Eval(cmd) => eval_cmd(cmd, fmt)?,
        Cmd::Compare(CompareCmd::Hodge { x1, x2 }) => {
            let a1 = parse::scalar(x1).map_err(invalid)?;
            let a2 = parse::scalar(x2).map_err(invalid)?;
            let (integral, series) =
                double_log_cycle_check(a1.to_f64(), a2.to_f64()).map_err(domain)?;
            let realized = realize_marked_chain(&[a1, a2]).map_err(domain)?;
            let spread =
                (integral - series).abs().max((realized - series).abs());
            render::quantities(
                &[
                    Quantity::new("nested series", series),
                    Quantity::new("iterated integral", integral),
                    Quantity::new("realized cycle chain", realized),
                    Quantity::new("max spread", spread),
                ],
                fmt,
            )
        }
        Cmd::Verify { suite, max_sides, seed } => {
            let opts = SuiteOptions {
                max_sides: *max_sides,
                seed: seed.unwrap_or_else(|| rdeco::gen::seed_from_env(42)),
            };
            let reports = if suite == "all" {
                run_all(&opts)
            } else {
                run_suite(suite, &opts).ok_or_else(|| {
                    invalid(format!(
                        "unknown suite `{suite}`; pick one of {} or `all`",
                        SUITE_NAMES.join(", ")
                    ))
                })?
            };
            let (out, passed) = render::report(&reports, fmt);
            return Ok((out, if passed { 0 } else { 3 }));
        }
    };
    Ok((out, 0))
}

fn polygon_cmd(cmd: &PolygonCmd, fmt: Format) -> Result<String, Failure> {
    Ok(match cmd {
        PolygonCmd::Diff { poly, bar_variant } => {
            let p = parse::polygon_any(poly).map_err(invalid)?;
            let d = if *bar_variant { p.differential_bar() } else { p.differential() };
            render::lincomb(&d, fmt)
        }
        PolygonCmd::Psi { poly } => {
            let p = parse::polygon_any(poly).map_err(invalid)?;
            render::lincomb(&psi(&p), fmt)
        }
        PolygonCmd::Bar { poly } => {
            let p = parse::polygon_any(poly).map_err(invalid)?;
            render::lincomb(&bar_of_polygon(&p), fmt)
        }
        PolygonCmd::Coproduct { poly, method } => {
            let p = parse::polygon_any(poly).map_err(invalid)?;
            let cop = match method {
                Method::Deconcat => deconcat_lincomb(&bar_of_polygon(&p)),
                Method::Admissible => coproduct_adm(&p),
            };
            render::lincomb(&cop, fmt)
        }
    })
}

fn cycle_cmd(cmd: &CycleCmd, fmt: Format) -> Result<String, Failure> {
    Ok(match cmd {
        CycleCmd::FromTree { tree } => {
            let t = parse::tree_any(tree).map_err(invalid)?;
            render::lincomb(&cycle_of_tree(&t).map_err(domain)?, fmt)
        }
        CycleCmd::FromPolygon { poly } => {
            let p = parse::polygon_any(poly).map_err(invalid)?;
            let mut total = LinComb::zero();
            for (t, k) in psi(&p).iter() {
                total.add_assign(cycle_of_tree(t).map_err(domain)?.scaled(k));
            }
            render::lincomb(&total, fmt)
        }
        CycleCmd::Diff { cycle } => {
            let lc = parse::cycles_any(cycle).map_err(invalid)?;
            let mut total = boundary_lincomb(&lc).map_err(domain)?;
            for (z, k) in lc.iter() {
                total.add_assign(z.chain_boundary().scaled(k));
            }
            render::lincomb(&total, fmt)
        }
        CycleCmd::Admissible { cycle } => {
            let lc = parse::cycles_any(cycle).map_err(invalid)?;
            let mut rows = Vec::new();
            for (z, _) in lc.iter() {
                rows.push((z.clone(), z.is_admissible().map_err(domain)?));
            }
            render::admissibility(&rows, fmt)
        }
    })
}

fn eval_cmd(cmd: &EvalCmd, fmt: Format) -> Result<String, Failure> {
    Ok(match cmd {
        EvalCmd::Li { ns, zs } => {
            if ns.len() != zs.len() {
                return Err(invalid("--ns and --zs must have the same length"));
            }
            if ns.is_empty() {
                return Err(invalid("at least one index is needed"));
            }
            let v = li_series(ns, zs).map_err(domain)?;
            render::quantities(&[Quantity::bounded("value", v, 1e-12)], fmt)
        }
        EvalCmd::Iint { x0, xs, xend, tol } => {
            let v = iterint_numeric(*x0, xs, *xend, *tol).map_err(domain)?;
            render::quantities(&[Quantity::bounded("value", v, *tol)], fmt)
        }
    })
}
