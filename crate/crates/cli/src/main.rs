//! `schroder` — enumerate lattice paths, expand their generating
//! functions, compute growth constants and run the verification suites.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use num::BigRational;
use schroder_core::asymptotics::{constants, decimal_string, ratio_limit, Family};
use schroder_core::enumeration::{count, enumerate, insert_h, Guards};
use schroder_core::forms::{FormulaRegistry, MarkerUse, Specialization};
use schroder_core::path::{stats, LatticePath, StepSet, Variant};
use schroder_core::series::{from_rational, Poly, Series};
use schroder_cli::bfile::compare;
use schroder_cli::fixtures::resolve;
use schroder_cli::suites::{default_cache_dir, SuiteConfig, SuiteRegistry};
use schroder_cli::table::{render, Format};

#[derive(Parser)]
#[command(
    name = "schroder",
    about = "Exact toolkit for Schröder-like lattice paths: enumeration, generating functions, growth constants and verification suites",
    version
)]
struct Cli {
    /// Output format for tables and reports
    #[arg(long, global = true, default_value = "csv")]
    format: String,

    /// Never touch the network; cached and bundled data only
    #[arg(long, global = true)]
    offline: bool,

    /// Cache directory for fetched sequence files
    /// (default: $SCHRODER_CACHE_DIR or ~/.cache/schroder/oeis)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List all paths of one order
    Enumerate(EnumerateArgs),
    /// Statistics of the given paths
    Stats(StatsArgs),
    /// Expand a named generating function
    Series(SeriesArgs),
    /// Insert horizontal steps into a Dyck path
    Insert(InsertArgs),
    /// Growth constants table
    Constants(ConstantsArgs),
    /// Compare a computed series against a sequence file
    CompareOeis(CompareArgs),
    /// Run a verification suite (identities, bijections, asymptotics, oeis, all)
    Verify(VerifyArgs),
}

#[derive(Args)]
struct EnumerateArgs {
    /// Step family s1..s6
    #[arg(long)]
    steps: String,
    /// Order (half the total width)
    #[arg(long)]
    n: usize,
    /// l for all paths, a to exclude axis horizontals
    #[arg(long, default_value = "l")]
    variant: String,
    /// Raise the per-family enumeration ceiling
    #[arg(long)]
    guard: Option<usize>,
    /// Print the count instead of the paths
    #[arg(long)]
    count: bool,
}

#[derive(Args)]
struct StatsArgs {
    /// Paths in compact form, e.g. UHD or U3D2D
    #[arg(required = true)]
    paths: Vec<String>,
}

#[derive(Args)]
struct SeriesArgs {
    /// Formula name (see --list), or `rational` with --num/--den
    name: Option<String>,
    /// Truncation order
    #[arg(long, default_value_t = 16)]
    trunc: usize,
    /// Diagonal-run marker (rational, e.g. 2 or 1/2)
    #[arg(long, default_value = "1")]
    y: String,
    /// Horizontal-run marker
    #[arg(long, default_value = "1")]
    z: String,
    /// Numerator coefficient list for `rational`, ascending (e.g. 1,-12,16)
    #[arg(long)]
    num: Option<String>,
    /// Denominator coefficient list for `rational`
    #[arg(long)]
    den: Option<String>,
    /// List the available formulas
    #[arg(long)]
    list: bool,
}

#[derive(Args)]
struct InsertArgs {
    /// Dyck base path
    #[arg(long)]
    base: String,
    /// Number of horizontal steps to insert
    #[arg(long)]
    m: usize,
    /// Raise the insertion ceiling
    #[arg(long)]
    guard: Option<usize>,
}

#[derive(Args)]
struct ConstantsArgs {
    /// Fractional digits to print
    #[arg(long, default_value_t = 30)]
    digits: usize,
}

#[derive(Args)]
struct CompareArgs {
    /// Sequence id, e.g. A078009
    #[arg(long)]
    id: String,
    /// Formula name to expand
    #[arg(long)]
    series: String,
    /// Series index 0 aligns with this sequence index
    #[arg(long, default_value_t = 0)]
    offset: i64,
    /// Truncation (default: cover the whole sequence file)
    #[arg(long)]
    trunc: Option<usize>,
    #[arg(long, default_value = "1")]
    y: String,
    #[arg(long, default_value = "1")]
    z: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// identities, bijections, asymptotics, oeis or all
    suite: String,
    /// Highest order compared against enumeration
    #[arg(long)]
    n_max: Option<usize>,
    /// Truncation for series-identity checks
    #[arg(long)]
    trunc: Option<usize>,
    /// Comma-separated marker values, e.g. 1,2,3,5,1/2,1/3
    #[arg(long)]
    grid: Option<String>,
    /// Extra sequence ids for the oeis suite
    #[arg(long)]
    sequence: Vec<String>,
}

fn parse_rational(text: &str) -> anyhow::Result<BigRational> {
    BigRational::from_str(text)
        .or_else(|_| schroder_core::asymptotics::decimal_rational(text).map_err(|e| anyhow!("{e}")))
        .with_context(|| format!("cannot parse `{text}` as a rational"))
}

fn series_rows(series: &Series) -> Vec<Vec<String>> {
    series
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| vec![i.to_string(), c.to_string()])
        .collect()
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let format = Format::from_str(&cli.format).map_err(|e| anyhow!(e))?;
    let cache_dir = cli.cache_dir.clone().unwrap_or_else(default_cache_dir);
    match cli.command {
        Command::Enumerate(args) => {
            let set: StepSet = args.steps.parse()?;
            let variant: Variant = args.variant.parse()?;
            let mut guards = Guards::default();
            if let Some(g) = args.guard {
                guards = guards.with_max_order(set, g);
            }
            if args.count {
                let total = count(set, args.n, variant, &guards)?;
                println!("{total}");
                return Ok(true);
            }
            let rows: Vec<Vec<String>> = enumerate(set, args.n, variant, &guards)?
                .map(|p| {
                    let st = stats(&p).expect("nonempty");
                    vec![
                        p.to_string(),
                        st.order.to_string(),
                        st.diagonal_runs.to_string(),
                        st.horizontal_runs.to_string(),
                        st.peaks.to_string(),
                    ]
                })
                .collect();
            print!("{}", render(&["path", "order", "dr", "hr", "peaks"], &rows, format));
        }
        Command::Stats(args) => {
            let mut rows = Vec::new();
            for text in &args.paths {
                let path: LatticePath = text.parse()?;
                let st = stats(&path)?;
                rows.push(vec![
                    text.clone(),
                    st.order.to_string(),
                    st.diagonal_runs.to_string(),
                    st.horizontal_runs.to_string(),
                    st.peaks.to_string(),
                    st.runs.to_string(),
                    st.pyramid_weight.map_or_else(|| "-".into(), |w| w.to_string()),
                ]);
            }
            print!(
                "{}",
                render(
                    &["path", "order", "dr", "hr", "peaks", "runs", "pyramid_weight"],
                    &rows,
                    format
                )
            );
        }
        Command::Series(args) => {
            let registry = FormulaRegistry::with_builtins();
            if args.list {
                let rows: Vec<Vec<String>> = registry
                    .iter()
                    .map(|f| {
                        let markers = match f.markers() {
                            MarkerUse::None => "fixed",
                            MarkerUse::Y => "y",
                            MarkerUse::YZ => "y,z",
                        };
                        vec![f.name().to_string(), markers.to_string(), f.summary().to_string()]
                    })
                    .collect();
                print!("{}", render(&["name", "markers", "summary"], &rows, format));
                return Ok(true);
            }
            let name = args.name.as_deref().ok_or_else(|| anyhow!("formula name required (or --list)"))?;
            let series = if name == "rational" {
                let num = Poly::parse_list(
                    args.num.as_deref().ok_or_else(|| anyhow!("--num required for `rational`"))?,
                )?;
                let den = Poly::parse_list(
                    args.den.as_deref().ok_or_else(|| anyhow!("--den required for `rational`"))?,
                )?;
                from_rational(&num, &den, args.trunc)?
            } else {
                let formula = registry.get(name).ok_or_else(|| {
                    anyhow!(
                        "unknown formula `{name}`; available: rational, {}",
                        registry.iter().map(|f| f.name()).collect::<Vec<_>>().join(", ")
                    )
                })?;
                let spec = Specialization::new(
                    parse_rational(&args.y)?,
                    parse_rational(&args.z)?,
                    args.trunc,
                )?;
                formula.expand(&spec)?
            };
            print!("{}", render(&["i", "coeff"], &series_rows(&series), format));
        }
        Command::Insert(args) => {
            let base: LatticePath = args.base.parse()?;
            let mut guards = Guards::default();
            if let Some(g) = args.guard {
                guards = guards.with_max_insertions(g);
            }
            let rows: Vec<Vec<String>> = insert_h(&base, args.m, &guards)?
                .into_iter()
                .map(|(q, plan)| {
                    let st = stats(&q).expect("nonempty");
                    vec![
                        q.to_string(),
                        st.order.to_string(),
                        st.diagonal_runs.to_string(),
                        st.horizontal_runs.to_string(),
                        plan.i().to_string(),
                        plan.j().to_string(),
                    ]
                })
                .collect();
            print!("{}", render(&["path", "order", "dr", "hr", "i", "j"], &rows, format));
        }
        Command::Constants(args) => {
            let mut rows = Vec::new();
            for family in Family::ALL {
                let ratio = ratio_limit(family)?;
                for variant in [Variant::L, Variant::A] {
                    let c = constants(family, variant)?;
                    rows.push(vec![
                        family.to_string(),
                        variant.to_string(),
                        decimal_string(&c.alpha, args.digits),
                        decimal_string(&c.constant, args.digits),
                        decimal_string(&ratio, args.digits),
                        c.radicand.to_string(),
                    ]);
                }
            }
            print!(
                "{}",
                render(
                    &["family", "variant", "alpha", "constant", "ratio_limit", "radicand"],
                    &rows,
                    format
                )
            );
        }
        Command::CompareOeis(args) => {
            let bfile = resolve(&args.id, &cache_dir, cli.offline)?;
            let registry = FormulaRegistry::with_builtins();
            let formula = registry
                .get(&args.series)
                .ok_or_else(|| anyhow!("unknown formula `{}`", args.series))?;
            let top = bfile.entries.last().map(|(n, _)| *n).unwrap_or(0).max(1);
            let trunc = args.trunc.unwrap_or((top - args.offset).max(1) as usize);
            let spec = Specialization::new(
                parse_rational(&args.y)?,
                parse_rational(&args.z)?,
                trunc,
            )?;
            let series = formula.expand(&spec)?;
            let outcome = compare(&series, &bfile, args.offset)?;
            println!(
                "{} vs {} ({:?} source): {}",
                args.series,
                args.id,
                bfile.source,
                outcome.describe()
            );
            return Ok(outcome.passed());
        }
        Command::Verify(args) => {
            let mut config = SuiteConfig {
                offline: cli.offline,
                cache_dir,
                extra_sequences: args.sequence.clone(),
                ..SuiteConfig::default()
            };
            if let Some(n) = args.n_max {
                config.n_max = n;
            }
            if let Some(t) = args.trunc {
                config.trunc = t;
            }
            if let Some(grid) = &args.grid {
                config.grid = grid
                    .split(',')
                    .map(|t| parse_rational(t.trim()))
                    .collect::<anyhow::Result<Vec<_>>>()?;
                if config.grid.is_empty() {
                    bail!("--grid needs at least one value");
                }
            }
            let registry = SuiteRegistry::with_builtins();
            let reports = registry.run(&args.suite, &config)?;
            let mut all_pass = true;
            for report in &reports {
                match format {
                    Format::Json => println!("{}", report.to_json()),
                    Format::Csv => print!("{}", report.to_csv()),
                    Format::Md => print!("{}", report.to_markdown()),
                }
                all_pass &= report.passed();
            }
            return Ok(all_pass);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
