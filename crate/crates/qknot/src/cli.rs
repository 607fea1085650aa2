//! Command line front end: compute colored Jones polynomials, evaluate the
//! q-series, and run verification suites.
//!
//! Exit codes: 0 success (or all checks pass), 1 verification failure,
//! 2 usage or parameter error.

use std::io::Write as _;

use clap::{Parser, Subcommand, ValueEnum};

use crate::jones::{jones_any, FormulaChoice, KnotSpec};
use crate::qcomb::MonomialUnit;
use crate::qseries::{
    cal_f_mp, cal_u_mp, f_mp, f_t_torus, kz_f, u_base, u_mp, u_t_torus, EvalMode,
    SeriesValue,
};
use crate::verify::{run_suite, Grid, Status, Suite};
use crate::{Error, LaurentPolynomial, QuotientElement, Result};

/// Exact colored Jones polynomials of double twist knots and their
/// associated q-series at roots of unity.
#[derive(Parser)]
#[command(name = "qknot", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a colored Jones polynomial.
    Compute {
        /// Knot: "K(m,p)", "b(l,t)" or "T(2,k)" with odd k >= 3.
        #[arg(long)]
        knot: String,
        /// Number of colors (1 gives the normalization value 1).
        #[arg(long = "N")]
        n: u32,
        #[arg(long, value_enum, default_value_t = FormulaArg::Auto)]
        formula: FormulaArg,
        #[arg(long, value_enum, default_value_t = OutputArg::Text)]
        out: OutputArg,
    },
    /// Evaluate a q-series at a root of unity or as a truncated series.
    Series {
        #[arg(long, value_enum)]
        function: FunctionArg,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        t: Option<u32>,
        /// Argument x as "+1", "-1" or "±q^e".
        #[arg(long, default_value = "-1")]
        x: String,
        /// "root:N" for Z[q]/(q^N-1), "series:M" for coefficients up to q^M.
        #[arg(long)]
        mode: String,
        #[arg(long, value_enum, default_value_t = OutputArg::Text)]
        out: OutputArg,
    },
    /// Run a verification suite and emit a JSONL report.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long = "m-max", default_value_t = 2)]
        m_max: u32,
        #[arg(long = "p-max", default_value_t = 2)]
        p_max: u32,
        #[arg(long = "n-max", default_value_t = 3)]
        n_max: u32,
        #[arg(long = "t-max", default_value_t = 2)]
        t_max: u32,
        /// Worker threads for the grid (default: rayon's choice).
        #[arg(long)]
        jobs: Option<usize>,
        /// Write the JSONL report here instead of stdout.
        #[arg(long)]
        report: Option<std::path::PathBuf>,
    },
}

#[derive(Copy, Clone, ValueEnum, PartialEq, Eq, Debug)]
enum FormulaArg {
    Auto,
    Cyclotomic,
    Theorem,
    Takata,
}

#[derive(Copy, Clone, ValueEnum, PartialEq, Eq, Debug)]
enum OutputArg {
    Text,
    Json,
    Csv,
}

#[derive(Copy, Clone, ValueEnum, PartialEq, Eq, Debug)]
enum SuiteArg {
    All,
    Mirror,
    Duality,
    Takata,
    Lemmas,
    Displays,
}

#[derive(Copy, Clone, ValueEnum, PartialEq, Eq, Debug)]
enum FunctionArg {
    #[value(name = "F")]
    F,
    #[value(name = "U")]
    U,
    #[value(name = "calF")]
    CalF,
    #[value(name = "calU")]
    CalU,
    #[value(name = "Ft")]
    Ft,
    #[value(name = "Ut")]
    Ut,
    #[value(name = "KZ")]
    Kz,
    #[value(name = "Ubase")]
    Ubase,
}

fn parse_error(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

/// Parse "K(m,p)" / "b(l,t)" / "T(2,k)"; whitespace-insensitive.
pub fn parse_knot_spec(input: &str) -> Result<KnotSpec> {
    // strip whitespace but remember original positions for error messages
    let compact: Vec<(usize, char)> = input
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let text: String = compact.iter().map(|&(_, c)| c).collect();
    let at = |idx: usize| compact.get(idx).map(|&(pos, _)| pos).unwrap_or(input.len());

    let (head, rest) = match text.chars().next() {
        Some(c @ ('K' | 'b' | 'T')) => (c, &text[1..]),
        Some(_) => return Err(parse_error(at(0), "expected 'K', 'b' or 'T'")),
        None => return Err(parse_error(0, "empty knot specification")),
    };
    if !rest.starts_with('(') || !rest.ends_with(')') {
        return Err(parse_error(at(1), "expected a parenthesized pair"));
    }
    let inner = &rest[1..rest.len() - 1];
    let mut parts = inner.splitn(2, ',');
    let first = parts.next().unwrap_or("");
    let second = parts
        .next()
        .ok_or_else(|| parse_error(at(2), "expected two comma-separated integers"))?;
    let first_pos = at(2);
    let second_pos = at(2 + first.len() + 1);
    let parse_i64 = |s: &str, pos: usize| -> Result<i64> {
        s.parse::<i64>()
            .map_err(|_| parse_error(pos, format!("'{s}' is not an integer")))
    };
    match head {
        'K' => {
            let m = parse_i64(first, first_pos)?;
            let p = parse_i64(second, second_pos)?;
            if m == 0 || p == 0 {
                return Err(Error::InvalidParameter(
                    "double twist parameters must be nonzero".into(),
                ));
            }
            Ok(KnotSpec::DoubleTwist { m, p })
        }
        'b' => {
            let l = parse_i64(first, first_pos)?;
            let t = parse_i64(second, second_pos)?;
            if l <= 0 || t <= 0 {
                return Err(Error::InvalidParameter(
                    "two-bridge parameters must be positive".into(),
                ));
            }
            Ok(KnotSpec::TwoBridge { l: l as u32, t: t as u32 })
        }
        _ => {
            let two = parse_i64(first, first_pos)?;
            if two != 2 {
                return Err(parse_error(first_pos, "only T(2,k) torus knots are supported"));
            }
            let k = parse_i64(second, second_pos)?;
            if k < 3 || k % 2 == 0 {
                return Err(parse_error(second_pos, "torus parameter k must be odd and >= 3"));
            }
            Ok(KnotSpec::Torus2 { t: ((k - 1) / 2) as u32 })
        }
    }
}

/// Inverse of `parse_knot_spec` on valid specs.
pub fn render(spec: &KnotSpec) -> String {
    match *spec {
        KnotSpec::DoubleTwist { m, p } => format!("K({m},{p})"),
        KnotSpec::TwoBridge { l, t } => format!("b({l},{t})"),
        KnotSpec::Torus2 { t } => format!("T(2,{})", 2 * t + 1),
    }
}

fn parse_monomial_unit(s: &str) -> Result<MonomialUnit> {
    let s = s.trim();
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1i8, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let exponent = match body {
        "1" => 0,
        "q" => 1,
        _ => match body.strip_prefix("q^") {
            Some(e) => e.parse::<i64>().map_err(|_| {
                Error::InvalidParameter(format!("cannot parse x argument '{s}'"))
            })?,
            None => {
                return Err(Error::InvalidParameter(format!(
                    "cannot parse x argument '{s}' (expected ±1 or ±q^e)"
                )))
            }
        },
    };
    Ok(MonomialUnit { sign, exponent })
}

fn parse_mode(s: &str) -> Result<EvalMode> {
    let err = || {
        Error::InvalidParameter(format!(
            "cannot parse mode '{s}' (expected root:N or series:M)"
        ))
    };
    let (kind, value) = s.split_once(':').ok_or_else(err)?;
    let value: u32 = value.parse().map_err(|_| err())?;
    match kind {
        "root" => Ok(EvalMode::RootOfUnity(value)),
        "series" => Ok(EvalMode::Series(value)),
        _ => Err(err()),
    }
}

fn print_poly(poly: &LaurentPolynomial, out: OutputArg) {
    match out {
        OutputArg::Text => println!("{poly}"),
        OutputArg::Json => println!("{}", poly.to_json()),
        OutputArg::Csv => {
            println!("exponent,coefficient");
            for (exp, coeff) in poly.iter() {
                println!("{exp},{coeff}");
            }
        }
    }
}

fn print_quotient(value: &QuotientElement, out: OutputArg) {
    match out {
        OutputArg::Text | OutputArg::Csv => println!("{value}"),
        OutputArg::Json => {
            let coeffs: Vec<String> =
                value.coeffs().iter().map(|c| c.to_string()).collect();
            println!("{}", serde_json::json!(coeffs));
        }
    }
}

fn print_series_value(value: &SeriesValue, out: OutputArg) {
    match value {
        SeriesValue::Root(q) => print_quotient(q, out),
        SeriesValue::Series(p) => print_poly(p, out),
    }
}

fn need(opt: Option<u32>, name: &str) -> Result<u32> {
    opt.ok_or_else(|| Error::InvalidParameter(format!("--{name} is required here")))
}

fn need_root(mode: EvalMode, what: &str) -> Result<u32> {
    match mode {
        EvalMode::RootOfUnity(n) => Ok(n),
        EvalMode::Series(_) => Err(Error::InvalidParameter(format!(
            "{what} is only defined at roots of unity; use --mode root:N"
        ))),
    }
}

fn cmd_compute(knot: &str, n: u32, formula: FormulaArg, out: OutputArg) -> Result<()> {
    let spec = parse_knot_spec(knot)?;
    let formula = match formula {
        FormulaArg::Auto => FormulaChoice::Auto,
        FormulaArg::Cyclotomic => FormulaChoice::Cyclotomic,
        FormulaArg::Theorem => FormulaChoice::Theorem,
        FormulaArg::Takata => FormulaChoice::Takata,
    };
    let poly = jones_any(&spec, n, formula)?;
    print_poly(&poly, out);
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_series(
    function: FunctionArg,
    m: Option<u32>,
    p: Option<u32>,
    t: Option<u32>,
    x: &str,
    mode: &str,
    out: OutputArg,
) -> Result<()> {
    let x = parse_monomial_unit(x)?;
    let mode = parse_mode(mode)?;
    match function {
        FunctionArg::F => {
            let value = f_mp(need(m, "m")?, need(p, "p")?, need_root(mode, "F")?)?;
            print_quotient(&value, out);
        }
        FunctionArg::U => {
            let value = u_mp(need(m, "m")?, need(p, "p")?, x, mode)?;
            print_series_value(&value, out);
        }
        FunctionArg::CalF => {
            let value =
                cal_f_mp(need(m, "m")?, need(p, "p")?, need_root(mode, "calF")?)?;
            print_quotient(&value, out);
        }
        FunctionArg::CalU => {
            let value =
                cal_u_mp(need(m, "m")?, need(p, "p")?, x, need_root(mode, "calU")?)?;
            print_quotient(&value, out);
        }
        FunctionArg::Ft => {
            let value = f_t_torus(need(t, "t")?, need_root(mode, "Ft")?)?;
            print_quotient(&value, out);
        }
        FunctionArg::Ut => {
            let value = u_t_torus(need(t, "t")?, x, mode)?;
            print_series_value(&value, out);
        }
        FunctionArg::Kz => {
            let value = kz_f(need_root(mode, "KZ")?)?;
            print_quotient(&value, out);
        }
        FunctionArg::Ubase => {
            let value = u_base(x, mode)?;
            print_series_value(&value, out);
        }
    }
    Ok(())
}

fn cmd_verify(
    suite: SuiteArg,
    grid: Grid,
    jobs: Option<usize>,
    report_path: Option<&std::path::Path>,
) -> Result<bool> {
    let suite = match suite {
        SuiteArg::All => Suite::All,
        SuiteArg::Mirror => Suite::Mirror,
        SuiteArg::Duality => Suite::Duality,
        SuiteArg::Takata => Suite::Takata,
        SuiteArg::Lemmas => Suite::Lemmas,
        SuiteArg::Displays => Suite::Displays,
    };
    let reports = match jobs {
        Some(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::InvalidParameter(format!("cannot build thread pool: {e}")))?;
            pool.install(|| run_suite(suite, &grid))?
        }
        None => run_suite(suite, &grid)?,
    };
    let passed = reports.iter().filter(|r| r.status == Status::Pass).count();
    let failed = reports.len() - passed;
    let mut lines = Vec::with_capacity(reports.len() + 1);
    for r in &reports {
        lines.push(serde_json::to_string(r).expect("report serialization"));
    }
    lines.push(
        serde_json::json!({
            "summary": { "total": reports.len(), "passed": passed, "failed": failed }
        })
        .to_string(),
    );
    match report_path {
        Some(path) => {
            let mut file = std::fs::File::create(path).map_err(|e| {
                Error::InvalidParameter(format!("cannot write {}: {e}", path.display()))
            })?;
            for line in &lines {
                writeln!(file, "{line}").map_err(|e| {
                    Error::InvalidParameter(format!("cannot write report: {e}"))
                })?;
            }
        }
        None => {
            for line in &lines {
                println!("{line}");
            }
        }
    }
    Ok(failed == 0)
}

/// Entry point; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Compute { knot, n, formula, out } => {
            cmd_compute(&knot, n, formula, out).map(|()| true)
        }
        Command::Series { function, m, p, t, x, mode, out } => {
            cmd_series(function, m, p, t, &x, &mode, out).map(|()| true)
        }
        Command::Verify { suite, m_max, p_max, n_max, t_max, jobs, report } => cmd_verify(
            suite,
            Grid { m_max, p_max, n_max, t_max },
            jobs,
            report.as_deref(),
        ),
    };
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn knot_spec_round_trip() {
        for s in ["K(-2,-2)", "K(1,1)", "b(7,5)", "T(2,5)"] {
            let spec = parse_knot_spec(s).unwrap();
            assert_eq!(render(&spec), s);
        }
    }

    #[test]
    fn knot_spec_whitespace() {
        assert_eq!(
            parse_knot_spec(" K ( -2 , -2 ) ").unwrap(),
            KnotSpec::DoubleTwist { m: -2, p: -2 }
        );
    }

    #[test]
    fn knot_spec_rejects() {
        assert!(parse_knot_spec("K(0,1)").is_err());
        assert!(parse_knot_spec("K(1)").is_err());
        assert!(parse_knot_spec("X(1,1)").is_err());
        assert!(parse_knot_spec("T(3,5)").is_err());
        assert!(parse_knot_spec("T(2,4)").is_err());
        assert!(parse_knot_spec("K(a,1)").is_err());
        assert!(parse_knot_spec("").is_err());
    }

    #[test]
    fn parse_error_positions() {
        match parse_knot_spec("K(a,1)").unwrap_err() {
            Error::Parse { pos, .. } => assert_eq!(pos, 2),
            other => panic!("unexpected error {other:?}"),
        }
        match parse_knot_spec("  K( 1, b)").unwrap_err() {
            Error::Parse { pos, .. } => assert_eq!(pos, 8),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn monomial_unit_parsing() {
        assert_eq!(parse_monomial_unit("-1").unwrap(), MonomialUnit::minus_one());
        assert_eq!(parse_monomial_unit("+1").unwrap(), MonomialUnit::one());
        assert_eq!(parse_monomial_unit("1").unwrap(), MonomialUnit::one());
        assert_eq!(parse_monomial_unit("q").unwrap(), MonomialUnit::q_pow(1));
        assert_eq!(parse_monomial_unit("-q^3").unwrap(), MonomialUnit::neg_q_pow(3));
        assert!(parse_monomial_unit("2").is_err());
    }

    #[test]
    fn mode_parsing() {
        assert_eq!(parse_mode("root:4").unwrap(), EvalMode::RootOfUnity(4));
        assert_eq!(parse_mode("series:10").unwrap(), EvalMode::Series(10));
        assert!(parse_mode("roots:4").is_err());
        assert!(parse_mode("root").is_err());
        assert!(parse_mode("root:x").is_err());
    }
}
