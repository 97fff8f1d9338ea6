use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gic::datum::{
    load_datum_file, validate_datum, Conventions, FlagOrder, GradedDatum, SignConvention,
};
use gic::engine::{check_run_tree, Engine};
use gic::fixtures::{computed_lines, example_datum, expected_lines};
use gic::oracles::{check_e_against_counts, kl_cross_check, kl_polynomial, orbit_dim_oracle};
use gic::report::{build_report, to_csv, to_json};
use gic::selftest::{run_selftest, SelftestOptions};
use gic::type_a::orbits::multisegments;
use gic::type_a::{build_datum, TypeASpec};
use gic::Error;

#[derive(Parser)]
#[command(
    name = "gic",
    version,
    about = "Multiplicity matrices of graded Lie algebras"
)]
struct Cli {
    #[arg(long, value_enum, global = true, default_value = "plusv")]
    sign_convention: SignArg,
    #[arg(long, value_enum, global = true, default_value = "asc")]
    flag_order: OrderArg,
    /// Seed for randomised choices (conjugated orbit representatives).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Plusv,
    Printed,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Asc,
    Desc,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Type-A datum, e.g. `glq:0,0,1;n=1`.
    #[arg(long)]
    gl: Option<String>,
    /// Datum table in JSON.
    #[arg(long)]
    datum: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the engine and write the result.
    Compute {
        #[command(flatten)]
        source: Source,
        /// Only report this degree.
        #[arg(long, allow_hyphen_values = true)]
        n: Option<i64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a datum for consistency without running the engine.
    Validate {
        #[command(flatten)]
        source: Source,
    },
    /// Point-count, orbit-dimension and KL checks on a type-A datum, or a
    /// single KL polynomial with `--kl X Y`.
    Oracle {
        #[arg(long)]
        gl: Option<String>,
        #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3])]
        q: Vec<u64>,
        /// Two permutations in one-line notation, e.g. `--kl 1,2,3,4 3,4,1,2`.
        #[arg(long, num_args = 2, value_names = ["X", "Y"])]
        kl: Option<Vec<String>>,
    },
    /// Invariants and oracles over the fixtures and all small type-A data.
    Selftest {
        /// Largest total rank enumerated.
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long)]
        no_oracles: bool,
    },
    /// A worked example with expected and computed values side by side.
    Example {
        #[arg(value_parser = ["a1", "a001", "sp4"])]
        name: String,
    },
}

enum Failure {
    Input(String),
    Broken(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::AlgorithmBroken { .. } | Error::OracleMismatch(_) => {
                Failure::Broken(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn conventions(cli: &Cli) -> Conventions {
    Conventions {
        sign: match cli.sign_convention {
            SignArg::Plusv => SignConvention::PlusV,
            SignArg::Printed => SignConvention::PrintedMinusV,
        },
        flag_order: match cli.flag_order {
            OrderArg::Asc => FlagOrder::Ascending,
            OrderArg::Desc => FlagOrder::Descending,
        },
    }
}

fn load(source: &Source, conv: Conventions) -> Result<Arc<GradedDatum>, Failure> {
    let d = match (&source.gl, &source.datum) {
        (Some(gl), _) => build_datum(&gl.parse::<TypeASpec>()?, conv)?,
        (_, Some(path)) => load_datum_file(path, conv)?,
        _ => return Err(Failure::Input("one of --gl or --datum is required".into())),
    };
    Ok(d)
}

fn emit(text: &str, out: Option<&PathBuf>) -> Outcome {
    match out {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_perm(s: &str) -> Result<Vec<usize>, Failure> {
    let p: Vec<usize> = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Failure::Input(format!("bad permutation {s}")))
        })
        .collect::<Result<_, _>>()?;
    let mut sorted = p.clone();
    sorted.sort();
    if !sorted.iter().copied().eq(1..=p.len()) || p.len() > gic::oracles::MAX_KL_RANK {
        return Err(Failure::Input(format!(
            "{s} is not a permutation of 1..m with m <= 6"
        )));
    }
    Ok(p)
}

fn run(cli: &Cli) -> Outcome {
    let conv = conventions(cli);
    match &cli.command {
        Command::Compute {
            source,
            n,
            format,
            out,
        } => {
            let datum = load(source, conv)?;
            let result = Engine::new(conv).run(&datum)?;
            let report = build_report(&result, *n)?;
            let text = match format {
                Format::Json => to_json(&report)?,
                Format::Csv => to_csv(&report)?,
            };
            emit(&text, out.as_ref())
        }
        Command::Validate { source } => {
            let datum = load(source, conv)?;
            let findings = validate_datum(&datum, conv.sign);
            for f in &findings {
                println!("{f}");
            }
            if findings.is_empty() {
                println!(
                    "{}: ok ({} descendants)",
                    datum.name,
                    datum.descendants().len()
                );
                Ok(())
            } else {
                Err(Failure::Input(format!("{} findings", findings.len())))
            }
        }
        Command::Oracle { gl, q, kl } => {
            if let Some(pair) = kl {
                let x = parse_perm(&pair[0])?;
                let y = parse_perm(&pair[1])?;
                if x.len() != y.len() {
                    return Err(Failure::Input("permutations of different sizes".into()));
                }
                println!(
                    "P[{} , {}](q) = {}",
                    pair[0],
                    pair[1],
                    kl_polynomial(&x, &y).to_string().replace('v', "q")
                );
                if gl.is_none() {
                    return Ok(());
                }
            }
            let Some(gl) = gl else {
                return Err(Failure::Input("oracle needs --gl or --kl".into()));
            };
            let spec: TypeASpec = gl.parse()?;
            let datum = build_datum(&spec, conv)?;
            let result = Engine::new(conv).run(&datum)?;
            let mut total = 0;
            for gr in &result.gradings {
                let sp = spec.with_n(gr.n);
                for ms in multisegments(&sp) {
                    let want = orbit_dim_oracle(&sp, &ms);
                    let got =
                        gr.z.iter()
                            .find(|z| z.kappa.orbit == ms.name())
                            .map(|z| z.d);
                    let ok = got == Some(want);
                    total += usize::from(!ok);
                    println!(
                        "orbit-dim n={} {}: engine {got:?} oracle {want} {}",
                        gr.n,
                        ms.name(),
                        if ok { "ok" } else { "MISMATCH" }
                    );
                }
            }
            for &p in q {
                let findings = check_e_against_counts(&spec, &result, p, cli.seed)?;
                println!("point-counts q={p}: {} findings", findings.len());
                for f in &findings {
                    println!("  {f}");
                }
                total += findings.len();
            }
            let k = spec.rank() as i64;
            if spec.factors.len() == 1
                && spec.n.abs() == 1
                && spec.factors[0].weights().iter().copied().eq(0..k)
            {
                let findings = kl_cross_check(&spec, &result);
                println!(
                    "kl-cross-check (informational): {} findings",
                    findings.len()
                );
                for f in &findings {
                    println!("  {f}");
                }
            }
            if total == 0 {
                Ok(())
            } else {
                Err(Failure::Broken(format!("{total} oracle findings")))
            }
        }
        Command::Selftest { depth, no_oracles } => {
            let opts = SelftestOptions {
                depth: *depth,
                seed: cli.seed,
                oracles: !no_oracles,
                conventions: conv,
                ..Default::default()
            };
            let report = run_selftest(&opts);
            println!("data: {}", report.data.len());
            for (k, v) in &report.checks {
                println!("check {k}: {v}");
            }
            for s in &report.skipped {
                println!("skipped: {s}");
            }
            for f in &report.kl_findings {
                println!("kl (informational): {f}");
            }
            for f in &report.findings {
                println!("FINDING {f}");
            }
            if report.passed() {
                println!("selftest passed");
                Ok(())
            } else {
                Err(Failure::Broken(format!(
                    "{} findings",
                    report.findings.len()
                )))
            }
        }
        Command::Example { name } => {
            let datum = example_datum(name, conv)?;
            let result = Engine::new(conv).run(&datum)?;
            let computed = computed_lines(name, &result);
            let expected = expected_lines(name);
            let width = expected.iter().map(String::len).max().unwrap_or(0).max(8);
            println!("{:<width$}  | computed", "expected");
            let mut all = computed.len() == expected.len();
            for i in 0..computed.len().max(expected.len()) {
                let e = expected.get(i).map_or("", String::as_str);
                let c = computed.get(i).map_or("", String::as_str);
                let mark = if e == c { "" } else { "  <-- differs" };
                all &= e == c;
                println!("{e:<width$}  | {c}{mark}");
            }
            let findings = check_run_tree(&result);
            for f in &findings {
                println!("FINDING {f}");
            }
            if all && findings.is_empty() {
                Ok(())
            } else {
                Err(Failure::Broken("example does not match".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Broken(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
