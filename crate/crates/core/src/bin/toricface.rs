use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use toricface::complex::{fiber_union, segre, tensor_join, veronese, MonoidalComplex};
use toricface::document::ComplexDocument;
use toricface::ideal::{presentation_ideal, render_list, TermOrder};
use toricface::koszul::{self, BettiOptions, Verdict};
use toricface::numeric::FieldChoice;
use toricface::Error;

/// Exact computations with toric face rings.
///
/// Input files hold a monoidal complex as JSON with 0-based generator indices;
/// reports call the variable of generator j `X{j+1}`.
#[derive(Parser)]
#[command(name = "toricface", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format: m2 (Betti tables only), json or text.
    #[arg(long, global = true)]
    format: Option<Format>,
    /// Worker threads for Betti computations.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    M2,
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check the fan and the compatibility of the facet monoids.
    Validate {
        file: PathBuf,
        /// Largest degree searched when testing monoid membership.
        #[arg(long, default_value_t = 32)]
        degree_bound: usize,
    },
    /// Presentation ideal: monomial part, facet toric ideals, minimal generators.
    Ideal { file: PathBuf },
    /// Reduced Gröbner basis of the presentation ideal.
    Gb {
        file: PathBuf,
        #[command(flatten)]
        order: OrderArg,
    },
    /// Graded Betti numbers of the residue field.
    Betti {
        file: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Koszulness up to the given bounds.
    Koszul {
        file: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Whether the nerve is a flag complex.
    Quadratic { file: PathBuf },
    /// Strong Koszulness with respect to X1, ..., Xn.
    StronglyKoszul { file: PathBuf },
    /// Initial Koszulness with respect to a sequence of variables.
    IKoszul {
        file: PathBuf,
        /// Comma-separated 1-based variable numbers; defaults to 1,2,...,n.
        #[arg(long, value_delimiter = ',')]
        sequence: Option<Vec<usize>>,
    },
    /// Whether the reduced Gröbner basis under a term order is quadratic.
    GQuadratic {
        file: PathBuf,
        #[command(flatten)]
        order: OrderArg,
    },
    /// Build a new complex and print it as a document.
    Construct {
        #[command(subcommand)]
        kind: Construction,
        /// Write the document here instead of standard output.
        #[arg(long, short, global = true)]
        output: Option<PathBuf>,
    },
    /// Gather the quadratic condition, facet and global Koszulness and
    /// G-quadraticity in one report.
    Scan {
        file: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
    },
}

#[derive(Subcommand)]
enum Construction {
    /// Subcomplex generated by all elements of a fixed degree.
    Veronese {
        file: PathBuf,
        #[arg(long, short)]
        degree: usize,
    },
    /// Join in orthogonal coordinates; the ring is the tensor product.
    Tensor { first: PathBuf, second: PathBuf },
    /// Union of the fans in orthogonal coordinates.
    Fiber { first: PathBuf, second: PathBuf },
    /// Segre product.
    Segre { first: PathBuf, second: PathBuf },
}

#[derive(Args)]
struct OrderArg {
    /// lex, grevlex or revlex, optionally followed by a variable priority
    /// such as grevlex:3,1,2.
    #[arg(long, default_value = "grevlex")]
    order: String,
}

#[derive(Args)]
struct Bounds {
    #[arg(long, default_value_t = 4)]
    max_i: usize,
    /// Largest internal degree; defaults to max-i + 2.
    #[arg(long)]
    degree_bound: Option<usize>,
    /// q for the rationals or fp:<p> for a prime field.
    #[arg(long, default_value = "q")]
    field: String,
    /// Largest divisor interval before the computation gives up.
    #[arg(long)]
    interval_cap: Option<usize>,
}

enum Failure {
    Usage(String),
    Bound(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_bound_exceeded() {
            Failure::Bound(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

fn parse_field(s: &str) -> Result<FieldChoice, Failure> {
    match s {
        "q" | "Q" | "QQ" => Ok(FieldChoice::Rationals),
        _ => s
            .strip_prefix("fp:")
            .and_then(|p| p.parse::<u64>().ok())
            .and_then(FieldChoice::prime)
            .ok_or_else(|| Failure::Usage(format!("unknown field `{s}`; use q or fp:<prime>"))),
    }
}

impl Bounds {
    fn options(&self) -> Result<BettiOptions, Failure> {
        if self.max_i == 0 {
            return Err(Failure::Usage("--max-i must be at least 1".into()));
        }
        Ok(BettiOptions {
            max_i: self.max_i,
            max_degree: self.degree_bound.unwrap_or(self.max_i + 2),
            field: parse_field(&self.field)?,
            interval_cap: self.interval_cap,
        })
    }
}

fn load(path: &Path) -> Result<MonoidalComplex, Failure> {
    let doc = load_document(path)?;
    doc.build().map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_document(path: &Path) -> Result<ComplexDocument, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    ComplexDocument::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

struct Report {
    text: String,
    holds: bool,
}

fn verdict(v: Verdict, format: Format) -> Report {
    let holds = !v.is_failure();
    let text = match format {
        Format::Json => pretty(&v.to_json()),
        _ => v.render_text(),
    };
    Report { text, holds }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<Report, Failure> {
    let format = cli.format;
    let text_or = |f: Option<Format>| f.unwrap_or(Format::Text);
    match cli.command {
        Command::Validate { file, degree_bound } => {
            let doc = load_document(&file)?;
            let built = doc.build();
            let result = match &built {
                Err(e) => Err(e.to_string()),
                Ok(cx) => cx.validate(degree_bound).map_err(|e| e.to_string()),
            };
            let holds = result.is_ok();
            let text = match text_or(format) {
                Format::Json => pretty(&json!({"valid": holds, "error": result.as_ref().err()})),
                _ => match &result {
                    Ok(()) => "valid\n".to_string(),
                    Err(e) => format!("invalid: {e}\n"),
                },
            };
            Ok(Report { text, holds })
        }
        Command::Ideal { file } => {
            let cx = load(&file)?;
            let pres = presentation_ideal(&cx);
            let mins = pres.minimal_generators();
            let facets: Vec<(Vec<usize>, Vec<String>)> = pres
                .facet_ideals
                .iter()
                .map(|f| {
                    let gens = f.local.generators().iter().map(|p| p.embed(&f.vars, pres.n).to_string()).collect();
                    (f.vars.iter().map(|v| v + 1).collect(), gens)
                })
                .collect();
            let text = match text_or(format) {
                Format::Json => pretty(&json!({
                    "monomial_part": pres.monomial_part.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                    "facet_ideals": facets.iter().map(|(v, g)| json!({"variables": v, "generators": g})).collect::<Vec<_>>(),
                    "minimal_generators": mins.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                })),
                _ => {
                    let mut s = format!("monomial part: {}\n", render_list(&pres.monomial_part));
                    for (v, g) in &facets {
                        let names: Vec<String> = v.iter().map(|x| format!("X{x}")).collect();
                        let ideal = if g.is_empty() { "0".to_string() } else { format!("({})", g.join(", ")) };
                        s.push_str(&format!("facet on {}: {ideal}\n", names.join(",")));
                    }
                    s.push_str(&format!("ideal: {}\n", render_list(&mins)));
                    s
                }
            };
            Ok(Report { text, holds: true })
        }
        Command::Gb { file, order } => {
            let cx = load(&file)?;
            let order = TermOrder::parse(&order.order, cx.n()).map_err(|e| Failure::Usage(e.to_string()))?;
            let gb = presentation_ideal(&cx).ideal.gb(&order);
            let elems = gb.display_elements();
            let text = match text_or(format) {
                Format::Json => pretty(&json!({
                    "order": order.to_string(),
                    "groebner_basis": elems.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                })),
                _ => format!("{order}: {}\n", render_list(&elems)),
            };
            Ok(Report { text, holds: true })
        }
        Command::Betti { file, bounds } => {
            let cx = load(&file)?;
            let t = koszul::betti_table(&cx, bounds.options()?).map_err(Error::from)?;
            let text = match format.unwrap_or(Format::M2) {
                Format::Json => pretty(&t.to_json()),
                Format::M2 => t.render_m2(),
                Format::Text => format!(
                    "Betti numbers over {} for i <= {} and internal degree <= {}\n{}",
                    t.field,
                    t.max_i,
                    t.max_degree,
                    t.render_m2()
                ),
            };
            Ok(Report { text, holds: true })
        }
        Command::Koszul { file, bounds } => {
            let cx = load(&file)?;
            Ok(verdict(koszul::koszul_check(&cx, bounds.options()?).map_err(Error::from)?, text_or(format)))
        }
        Command::Quadratic { file } => Ok(verdict(koszul::quadratic_condition(&load(&file)?), text_or(format))),
        Command::StronglyKoszul { file } => {
            let cx = load(&file)?;
            Ok(verdict(koszul::strongly_koszul(&cx).map_err(Error::from)?, text_or(format)))
        }
        Command::IKoszul { file, sequence } => {
            let cx = load(&file)?;
            let seq: Vec<usize> = match sequence {
                None => (0..cx.n()).collect(),
                Some(s) => {
                    if s.contains(&0) {
                        return Err(Failure::Usage("variables in --sequence are numbered from 1".into()));
                    }
                    s.iter().map(|v| v - 1).collect()
                }
            };
            Ok(verdict(koszul::i_koszul(&cx, &seq).map_err(Error::from)?, text_or(format)))
        }
        Command::GQuadratic { file, order } => {
            let cx = load(&file)?;
            let order = TermOrder::parse(&order.order, cx.n()).map_err(|e| Failure::Usage(e.to_string()))?;
            Ok(verdict(koszul::g_quadratic(&cx, &order), text_or(format)))
        }
        Command::Construct { kind, output } => {
            let (cx, name) = match kind {
                Construction::Veronese { file, degree } => {
                    (veronese(&load(&file)?, degree).map_err(Error::from)?, format!("veronese {degree}"))
                }
                Construction::Tensor { first, second } => {
                    (tensor_join(&load(&first)?, &load(&second)?).map_err(Error::from)?, "tensor".into())
                }
                Construction::Fiber { first, second } => {
                    (fiber_union(&load(&first)?, &load(&second)?).map_err(Error::from)?, "fiber".into())
                }
                Construction::Segre { first, second } => {
                    (segre(&load(&first)?, &load(&second)?).map_err(Error::from)?, "segre".into())
                }
            };
            let text = ComplexDocument::from_complex(&cx, Some(name)).render();
            match output {
                Some(p) => {
                    fs::write(&p, &text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
                    Ok(Report { text: String::new(), holds: true })
                }
                None => Ok(Report { text, holds: true }),
            }
        }
        Command::Scan { file, bounds } => {
            let cx = load(&file)?;
            let r = koszul::scan(&cx, bounds.options()?).map_err(Error::from)?;
            let text = match text_or(format) {
                Format::Json => pretty(&r.to_json()),
                _ => r.render_text(),
            };
            Ok(Report { text, holds: !r.counterexample })
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(j) = cli.jobs {
        if j == 0 || rayon::ThreadPoolBuilder::new().num_threads(j).build_global().is_err() {
            eprintln!("error: could not start {j} worker threads");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(r) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(r.text.as_bytes());
            ExitCode::from(if r.holds { 0 } else { 1 })
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Bound(m)) => {
            eprintln!("bound exceeded: {m}");
            ExitCode::from(3)
        }
    }
}
