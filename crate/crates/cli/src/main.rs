use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use selmer_core::families::{
    classify_mult_primes, delta_square_test, family18, family18_special_primes, hesse, search_rigged,
    theorem44_bound, three_isogeny_pair,
};
use selmer_core::report;
use selmer_core::twist::trivializing_classes;
use selmer_core::{
    empirical_verify, rational_kernels, twist_report, velu, Error, Integer, Isogeny, Restriction, Result,
    WeierstrassCurve,
};

#[derive(Parser)]
#[command(name = "selmer", version, about = "Selmer ratios and twist densities for isogenies over Q")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Compact JSON (the default)
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Args)]
struct CurveArg {
    /// Coefficients a1,a2,a3,a4,a6 (integers or p/q)
    #[arg(short = 'a', value_name = "A1,A2,A3,A4,A6", allow_hyphen_values = true)]
    a: String,
}

#[derive(Args)]
struct IsogenyArgs {
    #[command(flatten)]
    curve: CurveArg,
    /// Isogeny degrees, one or two of 2, 3, 5, 7
    #[arg(long, value_delimiter = ',', default_value = "3")]
    degrees: Vec<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants, minimal model, local data and rational kernel counts
    CurveInfo(CurveArg),
    /// All rational isogenies of the given degrees
    Isogenies {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,7")]
        degrees: Vec<u32>,
    },
    /// Generating polynomials, rank bounds and Sha statements over the twist family
    TwistReport {
        #[command(flatten)]
        iso: IsogenyArgs,
        /// Local class restriction, e.g. "2:1,inf:+,5:1"
        #[arg(long, allow_hyphen_values = true)]
        restrict: Option<String>,
    },
    /// Sha statements and rank bounds only
    ShaReport {
        #[command(flatten)]
        iso: IsogenyArgs,
        #[arg(long, allow_hyphen_values = true)]
        restrict: Option<String>,
    },
    /// Hesse curve v(x^3+y^3+z^3) = 3uxyz with its two 3-isogenies
    Hesse {
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        /// Twist used for the multiplicative-prime classification
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        s0: String,
    },
    /// Member of the 18-isogeny family
    Family18 {
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        #[arg(long, allow_hyphen_values = true)]
        n: String,
    },
    /// Hesse parameters u <= bound with many primes in u-1 and u^2+u+1
    SearchRigged {
        #[arg(long)]
        target_m: usize,
        #[arg(long, default_value_t = 1_000_000)]
        bound: u64,
    },
    /// Tabulate Selmer exponents over squarefree |s| <= bound
    VerifyEmpirical {
        #[command(flatten)]
        iso: IsogenyArgs,
        #[arg(long, default_value_t = 100_000)]
        bound: u64,
    },
    /// Whether disc(E) disc(E') is a square, for E with one rational 2-torsion point and a 3-isogeny
    DeltaSquare(CurveArg),
}

fn parse_int(s: &str, name: &str) -> Result<Integer> {
    s.trim()
        .parse()
        .map_err(|_| Error::input(format!("--{name} must be an integer, got {s:?}")))
}

fn parse_curve(c: &CurveArg) -> Result<WeierstrassCurve> {
    WeierstrassCurve::parse(&c.a)
}

fn parse_restriction(r: &Option<String>) -> Result<Restriction> {
    match r {
        Some(s) => s.parse(),
        None => Ok(Restriction::none()),
    }
}

fn check_degree(d: u32) -> Result<()> {
    if [2, 3, 5, 7].contains(&d) {
        Ok(())
    } else {
        Err(Error::input(format!("unsupported degree {d}; expected 2, 3, 5 or 7")))
    }
}

/// Isogenies of the requested degrees. A repeated 3 selects both 3-isogenies
/// in the canonical pair order; otherwise each degree must have a unique kernel.
fn select(e: &WeierstrassCurve, degrees: &[u32]) -> Result<Vec<Isogeny>> {
    if degrees.is_empty() || degrees.len() > 2 {
        return Err(Error::input("give one or two degrees"));
    }
    degrees.iter().try_for_each(|&d| check_degree(d))?;
    if degrees == [3, 3] {
        let (a, b) = three_isogeny_pair(e, &[])?;
        return Ok(vec![a, b]);
    }
    if degrees.len() == 2 && degrees[0] == degrees[1] {
        return Err(Error::input("repeated degrees are only supported for 3,3"));
    }
    let mut out = vec![];
    for &d in degrees {
        let ks = rational_kernels(e, d)?;
        match ks.len() {
            0 => return Err(Error::input(format!("no rational {d}-isogeny"))),
            1 => out.push(velu(e, &ks[0], d)?),
            _ if d == 3 => out.push(three_isogeny_pair(e, &[])?.0),
            n => {
                return Err(Error::input(format!(
                    "{n} rational {d}-isogenies; the choice is ambiguous"
                )))
            }
        }
    }
    Ok(out)
}

fn run(cli: &Cli) -> Result<Value> {
    match &cli.command {
        Command::CurveInfo(c) => {
            let e = parse_curve(c)?;
            let mut degs = vec![];
            for d in [2u32, 3, 5, 7] {
                degs.push((d, rational_kernels(&e, d)?.len()));
            }
            Ok(report::envelope("curve-info", report::curve_info(&e, &[], &degs)?))
        }
        Command::Isogenies { curve, degrees } => {
            let e = parse_curve(curve)?;
            let mut by_degree = Map::new();
            for &d in degrees {
                check_degree(d)?;
                let isos: Vec<Value> = rational_kernels(&e, d)?
                    .iter()
                    .map(|k| velu(&e, k, d).map(|phi| report::isogeny(&phi)))
                    .collect::<Result<_>>()?;
                by_degree.insert(d.to_string(), Value::Array(isos));
            }
            Ok(report::envelope(
                "isogenies",
                json!({"curve": report::curve(&e), "isogenies": by_degree}),
            ))
        }
        Command::TwistReport { iso, restrict } => {
            let e = parse_curve(&iso.curve)?;
            let r = parse_restriction(restrict)?;
            let isos = select(&e, &iso.degrees)?;
            let rep = twist_report(&isos, &r)?;
            let mut body = report::twist_report(&rep);
            if iso.degrees == [3, 3] {
                let classes: Map<String, Value> = trivializing_classes(&isos[0], &isos[1])?
                    .into_iter()
                    .map(|(p, c)| (p.to_string(), json!(c)))
                    .collect();
                body["trivializing_classes"] = Value::Object(classes);
            }
            Ok(report::envelope("twist-report", body))
        }
        Command::ShaReport { iso, restrict } => {
            let e = parse_curve(&iso.curve)?;
            let r = parse_restriction(restrict)?;
            let rep = twist_report(&select(&e, &iso.degrees)?, &r)?;
            Ok(report::envelope(
                "sha-report",
                json!({
                    "restriction": rep.restriction.to_string(),
                    "rank": rep.rank.as_ref().map(report::rank),
                    "sha": rep.sha.iter().map(report::sha).collect::<Vec<_>>(),
                }),
            ))
        }
        Command::Hesse { u, v, s0 } => {
            let h = hesse(&parse_int(u, "u")?, &parse_int(v, "v")?)?;
            let c = classify_mult_primes(&h.phi1, &h.phi2, &parse_int(s0, "s0")?)?;
            let mut body = report::hesse(&h);
            body["classification"] = report::classification(&c);
            body["rank_bound"] = match theorem44_bound(&c) {
                Ok(b) => json!(b),
                Err(e) => json!({"error": e.to_string()}),
            };
            Ok(report::envelope("hesse", body))
        }
        Command::Family18 { m, n } => {
            let f = family18(&parse_int(m, "m")?, &parse_int(n, "n")?)?;
            let special = if f.is_14a_exception { None } else { Some(family18_special_primes(&f)?) };
            Ok(report::envelope("family18", report::family18(&f, special.as_ref())))
        }
        Command::SearchRigged { target_m, bound } => {
            let us = search_rigged(*target_m, *bound)?;
            Ok(report::envelope(
                "search-rigged",
                json!({"target_m": target_m, "bound": bound, "u": us}),
            ))
        }
        Command::VerifyEmpirical { iso, bound } => {
            let e = parse_curve(&iso.curve)?;
            let r = empirical_verify(&select(&e, &iso.degrees)?, *bound)?;
            Ok(report::envelope("verify-empirical", report::empirical(&r)))
        }
        Command::DeltaSquare(c) => {
            let e = parse_curve(c)?;
            let sq = delta_square_test(&e)?;
            Ok(report::envelope(
                "delta-square",
                json!({"curve": report::curve(&e), "is_square": sq}),
            ))
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(v) => {
            let out = if cli.pretty {
                serde_json::to_string_pretty(&v)
            } else {
                serde_json::to_string(&v)
            };
            // a closed pipe (e.g. `| head`) is not an error
            let _ = writeln!(std::io::stdout(), "{}", out.expect("JSON serialization"));
        }
        Err(e) => {
            let v = report::envelope("error", json!({"error": e.to_string(), "exit_code": e.exit_code()}));
            println!("{v}");
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
