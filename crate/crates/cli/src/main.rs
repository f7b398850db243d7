use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use painleve_qcurve::openfe::{open_free_energy, principal_special, SpecializedS};
use painleve_qcurve::render::{
    closed_f_json, laurent_latex, table_json, zpoly_json, Fraction, LaurentJson, Style,
};
use painleve_qcurve::toprec::{euler, is_stable};
use painleve_qcurve::verify::{run_suite, Params, Suite};
use painleve_qcurve::wkb::{painleve_series, riccati_P, scalar_lax, Branch};
use painleve_qcurve::{closed_F, compute_W, persist, Cache, ClosedF, Error, Rational, ZPoly};

/// Largest `2g - 2 + n` accepted on the command line.
const EULER_LIMIT: i32 = 14;
const ORDER_LIMIT: u32 = 24;

#[derive(Parser, Debug)]
#[command(name = "painleve-qcurve", version, about = "Exact topological recursion and quantum curve checks for Painleve I")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// W-table cache file (defaults to $PAINLEVE_QCURVE_CACHE).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Report cache activity on stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute and print one object.
    Compute(ComputeArgs),
    /// Run a verification suite; exits 1 if any check fails.
    Verify(VerifyArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Target {
    /// Eynard-Orantin differential W_{g,n}.
    W,
    /// Open free energy F_{g,n}.
    FOpen,
    /// Principal specialization S_m.
    S,
    /// Riccati coefficient P_m (plus branch).
    P,
    /// Closed free energy F_g.
    FreeEnergy,
    /// q_{2k}, p_{2k+1} and sigma_{2k} of the formal Painleve solution.
    Painleve,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Coord {
    Z,
    X,
}

#[derive(Args, Debug)]
struct ComputeArgs {
    target: Target,
    #[arg(long)]
    g: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    /// Number of hbar^2 steps for `painleve`.
    #[arg(long, default_value_t = 3)]
    order: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Coordinate for `s` and `p`.
    #[arg(long, value_enum, default_value_t = Coord::Z)]
    coord: Coord,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SuiteArg {
    All,
    QuantumCurve,
    Tau,
    DiffRec,
    Variation,
    /// sigma from residues at infinity.
    #[value(name = "appendix")]
    HamiltonianResidue,
    /// G and E after principal specialization.
    #[value(name = "section4")]
    PrincipalGe,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::QuantumCurve => Suite::QuantumCurve,
            SuiteArg::Tau => Suite::Tau,
            SuiteArg::DiffRec => Suite::DiffRec,
            SuiteArg::Variation => Suite::Variation,
            SuiteArg::HamiltonianResidue => Suite::HamiltonianResidue,
            SuiteArg::PrincipalGe => Suite::PrincipalGE,
        }
    }
}

#[derive(Args, Debug)]
struct VerifyArgs {
    suite: SuiteArg,
    /// Highest hbar-order for the quantum curve and WKB checks.
    #[arg(long, default_value_t = 8)]
    order: u32,
    /// Highest 2g - 2 + n for the recursion-side identities.
    #[arg(long, default_value_t = 4)]
    euler_max: u32,
    /// Highest genus for dF_g/dt = sigma_2g.
    #[arg(long, default_value_t = 4)]
    gmax: u32,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the JSON report instead of the summary.
    #[arg(long)]
    json: bool,
}

enum Failure {
    Usage(String),
    Checks,
    Internal(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(m) => Failure::Usage(m),
            e => Failure::Internal(e),
        }
    }
}

type Outcome<T = ()> = Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn need(v: Option<u32>, name: &str) -> Outcome<u32> {
    v.ok_or_else(|| usage(format!("--{name} is required for this target")))
}

fn check_euler(g: u32, n: u32) -> Outcome {
    if !is_stable(g, n) {
        return Err(usage(format!("(g, n) = ({g}, {n}) is not stable: need 2g - 2 + n >= 1")));
    }
    if euler(g, n) > EULER_LIMIT {
        return Err(usage(format!("2g - 2 + n = {} exceeds the limit {EULER_LIMIT}", euler(g, n))));
    }
    Ok(())
}

fn open_cache(path: Option<&Path>, verbose: bool) -> Outcome<Cache> {
    let cache = Cache::new();
    if let Some(p) = path {
        let n = persist::load(p, &cache)?;
        if verbose {
            eprintln!("loaded {n} tables from {}", p.display());
        }
    }
    Ok(cache)
}

fn close_cache(cache: &Cache, path: Option<&Path>, verbose: bool) -> Outcome {
    if let Some(p) = path {
        persist::save(cache, p)?;
        if verbose {
            eprintln!("saved {} tables to {}", cache.len(), p.display());
        }
    }
    Ok(())
}

fn fraction(f: Outcome<Fraction>, style: Style) -> Outcome<String> {
    Ok(f?.render(style))
}

fn zpoly_out(p: &ZPoly, format: Format, coord: Coord) -> Outcome<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(&zpoly_json(p)?).expect("serializes")),
        Format::Text | Format::Latex => {
            let style = if format == Format::Latex { Style::Latex } else { Style::Text };
            let f = match coord {
                Coord::Z => Fraction::from_zpoly(p),
                Coord::X => Fraction::x_form(p),
            };
            fraction(f.map_err(Failure::from), style)
        }
    }
}

fn compute(args: &ComputeArgs, cache: &Cache) -> Outcome<String> {
    if args.coord == Coord::X && !matches!(args.target, Target::S | Target::P) {
        return Err(usage("--coord x applies to `s` and `p` only"));
    }
    let style = if args.format == Format::Latex { Style::Latex } else { Style::Text };
    match args.target {
        Target::W | Target::FOpen => {
            let (g, n) = (need(args.g, "g")?, need(args.n, "n")?);
            check_euler(g, n)?;
            let (terms, poly) = if args.target == Target::W {
                let w = compute_W(g, n, cache)?;
                (table_json(w.terms())?, w.expand())
            } else {
                let f = open_free_energy(g, n, cache)?;
                (table_json(f.terms())?, f.expand())
            };
            Ok(match args.format {
                Format::Json => {
                    serde_json::to_string_pretty(&json!({"g": g, "n": n, "terms": terms})).expect("serializes")
                }
                _ => {
                    let mut s = Fraction::from_mpoly(&poly)?.render(style);
                    if args.target == Target::W && style == Style::Latex {
                        s.extend((1..=n).map(|i| format!("dz_{{{i}}}")));
                    }
                    s
                }
            })
        }
        Target::S => {
            let m = need(args.m, "m")?;
            if m as i32 - 1 > EULER_LIMIT {
                return Err(usage(format!("m = {m} is too large")));
            }
            match principal_special(m, cache)? {
                SpecializedS::Poly { value, .. } => zpoly_out(&value, args.format, args.coord),
                SpecializedS::HalfLog => Ok(match (args.format, args.coord) {
                    (Format::Json, _) => serde_json::to_string_pretty(
                        &json!({"m": 1, "log": {"num": "-1", "den": "2", "of": "z"}}),
                    )
                    .expect("serializes"),
                    (Format::Latex, Coord::Z) => "-\\frac{1}{2}\\log z".into(),
                    (Format::Latex, Coord::X) => "-\\frac{1}{4}\\log(x+2q_{0})".into(),
                    (_, Coord::Z) => "-1/2 * log(z)".into(),
                    (_, Coord::X) => "-1/4 * log(x + 2 * q0)".into(),
                }),
            }
        }
        Target::P => {
            let m = need(args.m, "m")?;
            if m > ORDER_LIMIT {
                return Err(usage(format!("m = {m} exceeds the limit {ORDER_LIMIT}")));
            }
            let ps = painleve_series::<Rational>(m / 2 + 1);
            let lax = scalar_lax(m.max(1), &ps)?;
            let p = riccati_P(m, &lax, Branch::Plus)?.coeff(m as i32 - 1)?;
            let poly = p.as_poly().ok_or_else(|| Failure::Internal(Error::InternalConsistency(format!("P_{m} = {p}"))))?;
            zpoly_out(poly, args.format, args.coord)
        }
        Target::FreeEnergy => {
            let g = need(args.g, "g")?;
            if 2 * g as i32 - 1 > EULER_LIMIT {
                return Err(usage(format!("g = {g} is too large")));
            }
            let f = closed_F(g, cache)?;
            Ok(match (args.format, &f) {
                (Format::Json, _) => serde_json::to_string_pretty(&closed_f_json(&f)).expect("serializes"),
                (Format::Latex, ClosedF::Value { value, .. }) => laurent_latex(value),
                (Format::Latex, ClosedF::Log { coeff, arg, .. }) => {
                    let c = laurent_latex(&painleve_qcurve::CoeffElem::constant(coeff.clone()));
                    format!("{c}\\log({})", laurent_latex(arg))
                }
                (_, f) => f.to_string(),
            })
        }
        Target::Painleve => {
            if args.order > ORDER_LIMIT {
                return Err(usage(format!("--order {} exceeds the limit {ORDER_LIMIT}", args.order)));
            }
            let ps = painleve_series::<Rational>(args.order);
            Ok(match args.format {
                Format::Json => {
                    let list = |v: &[painleve_qcurve::CoeffElem]| v.iter().map(LaurentJson::from_laurent).collect::<Vec<_>>();
                    serde_json::to_string_pretty(&json!({"q": list(&ps.q), "p": list(&ps.p), "sigma": list(&ps.sigma)}))
                        .expect("serializes")
                }
                _ => {
                    let show = |l: &painleve_qcurve::CoeffElem| {
                        if style == Style::Latex { laurent_latex(l) } else { l.to_string() }
                    };
                    let mut lines = Vec::new();
                    for k in 0..=args.order as usize {
                        lines.push(format!("q_{} = {}", 2 * k, show(&ps.q[k])));
                        lines.push(format!("p_{} = {}", 2 * k + 1, show(&ps.p[k])));
                        lines.push(format!("sigma_{} = {}", 2 * k, show(&ps.sigma[k])));
                    }
                    lines.join("\n")
                }
            })
        }
    }
}

fn verify(args: &VerifyArgs, cache: &Cache) -> Outcome {
    if args.order > ORDER_LIMIT || args.euler_max as i32 > EULER_LIMIT || 2 * args.gmax as i32 - 1 > EULER_LIMIT {
        return Err(usage("verification parameters exceed the supported range"));
    }
    let params = Params { order: args.order, euler_max: args.euler_max, gmax: args.gmax };
    let report = run_suite(args.suite.into(), params, cache)?;
    if let Some(out) = &args.out {
        std::fs::write(out, report.to_json() + "\n").map_err(|e| Failure::Internal(e.into()))?;
    }
    if args.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.summary_text());
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn run(cli: &Cli) -> Outcome {
    let path = cli.cache.clone().or_else(persist::default_cache_path);
    let cache = open_cache(path.as_deref(), cli.verbose)?;
    let result = match &cli.command {
        Command::Compute(args) => compute(args, &cache).map(|s| println!("{s}")),
        Command::Verify(args) => verify(args, &cache),
    };
    if !matches!(result, Err(Failure::Internal(_)) | Err(Failure::Usage(_))) {
        close_cache(&cache, path.as_deref(), cli.verbose)?;
    }
    result
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("internal error: {e}");
            ExitCode::from(3)
        }
    }
}
