use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use colorinv::perm::parse_cycle_list;
use colorinv::picture::{balanced_multiplicities, PictureInvariant};
use colorinv::restitution::restitute;
use colorinv::trace::{trace_monomial, U11Element};
use colorinv::verify::{check_picture, run_suite};
use colorinv::{Config, Error, MixedShape, Permutation, PictureShape, SymPolynomial, W0Point};

#[derive(Parser)]
#[command(
    name = "colorinv",
    version,
    about = "Graded picture invariants of mixed tensor spaces over Lie color algebras"
)]
struct Cli {
    /// Override the configured truncation degree of the ε-Grassmann algebra.
    #[arg(long, global = true)]
    truncation: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load a configuration, check the bicharacter axioms and the basis order, and summarize it.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Balanced multiplicity tuples of the configured shape and their permutations.
    List {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
    /// Print φ_σ for the configured shape.
    Picture {
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated m_1,…,m_s.
        #[arg(long)]
        multiplicities: String,
        /// Cycle notation `(1 2)(3)` or one-line `[2,1,3]`.
        #[arg(long)]
        sigma: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Also cross-check this invariant at random points.
        #[arg(long, value_enum)]
        check: Option<Check>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Evaluate a trace monomial over an explicit cycle list.
    Trace {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        sigma: String,
        /// Operator index (1-based) for each position of σ.
        #[arg(long)]
        assign: String,
        /// Point file for the matrix shape with one (1,1) summand per operator.
        #[arg(long)]
        point: PathBuf,
    },
    /// Run a verification suite; exit status 0 iff every case passes.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Restitute a stored polynomial at a point.
    Eval {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        point: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    PathEquality,
    Invariance,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path, truncation: Option<usize>) -> Result<Config, Error> {
    let mut config = Config::load(path)?;
    if let Some(t) = truncation {
        config.bounds.truncation = t;
    }
    Ok(config)
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

fn parse_list(text: &str, what: &str) -> Result<Vec<usize>, Error> {
    text.split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad {what} entry {x:?}")))
        })
        .collect()
}

fn summands_text(shape: &MixedShape) -> String {
    shape
        .summands()
        .iter()
        .map(|(b, t)| format!("({b},{t})"))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn run(cli: Cli) -> Result<bool, Error> {
    let trunc = cli.truncation;
    match cli.command {
        Command::Validate { config } => {
            let c = load(&config, trunc)?;
            let g = c.chi.group();
            let degrees: Vec<String> = c
                .space
                .degrees()
                .iter()
                .map(|&d| g.format_element(d))
                .collect();
            println!("config: {}", c.name);
            println!("group: factors {:?}, order {}", g.factors(), g.order());
            println!("bicharacter: {}", c.chi.validate());
            println!(
                "space: degrees {} ({}|{})",
                degrees.join(" "),
                c.space.m(),
                c.space.n()
            );
            println!("shape: {}", summands_text(&c.shape));
            println!(
                "bounds: max_n {}, max_dim {}, truncation {}",
                c.bounds.max_n, c.bounds.max_dim, c.bounds.truncation
            );
            Ok(true)
        }
        Command::List { config, max_degree } => {
            let c = load(&config, trunc)?;
            println!(
                "# shape {}, total degree <= {max_degree}, N <= {}",
                summands_text(&c.shape),
                c.bounds.max_n
            );
            for m in balanced_multiplicities(&c.shape, max_degree, c.bounds.max_n) {
                let p = PictureShape::new(c.shape.clone(), m.clone())?;
                let sigmas: Vec<String> = Permutation::all(p.n())
                    .iter()
                    .map(|s| s.cycle_string())
                    .collect();
                let m: Vec<String> = m.iter().map(|x| x.to_string()).collect();
                println!("m={} N={} sigmas: {}", m.join(","), p.n(), sigmas.join(" "));
            }
            Ok(true)
        }
        Command::Picture {
            config,
            multiplicities,
            sigma,
            format,
            check,
            seed,
        } => {
            let c = load(&config, trunc)?;
            let p = PictureShape::new(
                c.shape.clone(),
                parse_list(&multiplicities, "multiplicity")?,
            )?;
            let sigma = Permutation::parse(&sigma, Some(p.n()))?;
            let phi = p.build_phi(&sigma, &c.bounds)?;
            match format {
                Format::Text => println!("{phi}"),
                Format::Json => println!("{}", to_json(&c, &phi)),
            }
            let Some(check) = check else { return Ok(true) };
            let name = match check {
                Check::PathEquality => "path-equality",
                Check::Invariance => "invariance",
            };
            let report = check_picture(name, &c, &p, &sigma, seed)?;
            eprint!("{report}");
            Ok(report.all_passed())
        }
        Command::Trace {
            config,
            sigma,
            assign,
            point,
        } => {
            let c = load(&config, trunc)?;
            let f: Vec<usize> = parse_list(&assign, "assignment")?;
            if f.contains(&0) {
                return Err(Error::Parse("operator indices are 1-based".into()));
            }
            let s = f.iter().copied().max().unwrap_or(0);
            let shape = MixedShape::new(c.space.clone(), vec![(1, 1); s])?;
            let u = W0Point::parse(&shape, &read(&point)?)?;
            let cycles = parse_cycle_list(&sigma, f.len())?;
            let mats: Vec<U11Element> = (0..s)
                .map(|i| U11Element::from_point(&u, i))
                .collect::<Result<_, _>>()?;
            let f0: Vec<usize> = f.iter().map(|i| i - 1).collect();
            println!(
                "{}",
                trace_monomial(&cycles, &f0, &mats)?.to_text_with_header()
            );
            Ok(true)
        }
        Command::Verify {
            suite,
            config,
            seed,
            report,
        } => {
            let c = load(&config, trunc)?;
            let r = run_suite(&suite, &c, seed)?;
            let text = r.to_string();
            print!("{text}");
            if let Some(path) = report {
                std::fs::write(&path, &text)
                    .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
            }
            Ok(r.all_passed())
        }
        Command::Eval {
            config,
            poly,
            point,
        } => {
            let c = load(&config, trunc)?;
            let f = SymPolynomial::parse(&c.shape, &read(&poly)?)?;
            let u = W0Point::parse(&c.shape, &read(&point)?)?;
            println!("{}", restitute(&f, &u)?.to_text_with_header());
            Ok(true)
        }
    }
}

fn to_json(c: &Config, phi: &PictureInvariant) -> String {
    let m = c.chi.modulus();
    let terms: Vec<serde_json::Value> = phi
        .polynomial
        .terms()
        .map(|(mono, coeff)| {
            let factors: Vec<serde_json::Value> = mono
                .factors()
                .iter()
                .map(|(v, e)| json!({ "variable": v.to_string(), "exponent": e }))
                .collect();
            json!({ "coefficient": coeff.lift_to(m).unwrap_or_else(|_| coeff.clone()).to_string(), "monomial": factors })
        })
        .collect();
    let value = json!({
        "config": c.name,
        "root_of_unity_order": m,
        "multiplicities": phi.shape.multiplicities(),
        "sigma": phi.sigma.cycle_string(),
        "terms": terms,
    });
    serde_json::to_string_pretty(&value).expect("json values serialize")
}
