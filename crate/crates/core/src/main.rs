use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use g2tab::action::matrix_dump;
use g2tab::branching::{branch_table, verify_branching};
use g2tab::config::{OutputFormat, Overrides, RunConfig};
use g2tab::relations::{CertificateCache, CertificateRecord, RelationError};
use g2tab::reptheory::weyl_dim_g2;
use g2tab::tableau::{enumerate, Shape, Tableau, TableauFilter, TableauJson, MAX_INDEXABLE_BOXES};
use g2tab::verify::run_suite;
use g2tab::weights::Weight;

const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser)]
#[command(name = "g2tab", version, about = "Tableau model for irreducible G2 representations")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// "exact", "auto", or a prime above 2^30 [env: G2TAB_MODULUS]
    #[arg(long, global = true)]
    modulus: Option<String>,
    /// Worker threads, 0 for automatic [env: G2TAB_THREADS]
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Certificate cache directory [env: G2TAB_CACHE]
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Output format: json (lines), csv or table
    #[arg(long, global = true, value_parser = parse_output)]
    output: Option<OutputFormat>,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of the irreducible representation with highest weight a·λ1 + b·λ2
    Dim {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
    },
    /// Stream fillings of a shape
    Enumerate {
        #[arg(long, value_parser = parse_shape)]
        shape: Shape,
        #[arg(long, default_value = "g2", value_parser = parse_filter)]
        filter: TableauFilter,
        /// Keep only fillings of this weight, given as x,y in root coordinates
        #[arg(long, value_parser = parse_weight)]
        weight: Option<Weight>,
        /// Print only the number of fillings
        #[arg(long)]
        count: bool,
    },
    /// Relation rank, quotient dimension and basis certificate of a shape
    Quotient {
        #[arg(long, value_parser = parse_shape)]
        shape: Shape,
        /// Refuse shapes with more boxes than this
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_boxes: Option<u64>,
        /// Ignore and do not write the cache
        #[arg(long)]
        no_cache: bool,
    },
    /// Restriction table to the A2 subgroup
    Branch {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        /// Also compare against highest-weight tableaux and the dimension sum
        #[arg(long)]
        verify: bool,
    },
    /// Run every consistency check up to a box bound
    VerifyAll {
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
        max_boxes: u64,
    },
    /// Dump the generator matrices and invariant form as JSON
    Matrices,
}

fn parse_shape(s: &str) -> Result<Shape, String> {
    s.parse::<Shape>().map_err(|e| e.to_string())
}

fn parse_filter(s: &str) -> Result<TableauFilter, String> {
    s.parse::<TableauFilter>()
        .map_err(|_| format!("unknown filter {s:?}: expected all, semistandard or g2"))
}

fn parse_output(s: &str) -> Result<OutputFormat, String> {
    s.parse::<OutputFormat>().map_err(|e| e.to_string())
}

fn parse_weight(s: &str) -> Result<Weight, String> {
    let parts: Vec<&str> = s.trim_matches(|c| c == '[' || c == ']').split(',').collect();
    match parts.as_slice() {
        [x, y] => {
            let x = x.trim().parse().map_err(|_| format!("bad weight {s:?}"))?;
            let y = y.trim().parse().map_err(|_| format!("bad weight {s:?}"))?;
            Ok(Weight::new(x, y))
        }
        _ => Err(format!("bad weight {s:?}: expected x,y")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let flags = Overrides {
        modulus: cli.global.modulus.clone(),
        threads: cli.global.threads,
        cache_dir: cli.global.cache.clone(),
        max_boxes: match &cli.command {
            Command::Quotient { max_boxes, .. } => max_boxes.map(|n| n as usize),
            _ => None,
        },
        output: cli.global.output,
    };
    let cfg = match RunConfig::from_process_env(&flags) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    if cfg.threads > 0 {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cfg.threads).build_global();
    }
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = match run(&cli.command, &cfg, &mut out) {
        Ok(code) => code,
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    };
    let _ = out.flush();
    ExitCode::from(code)
}

fn run(cmd: &Command, cfg: &RunConfig, out: &mut impl Write) -> io::Result<u8> {
    match cmd {
        Command::Dim { a, b } => {
            writeln!(out, "{}", weyl_dim_g2(*a, *b))?;
            Ok(0)
        }
        Command::Enumerate {
            shape,
            filter,
            weight,
            count,
        } => cmd_enumerate(*shape, *filter, *weight, *count, cfg.output, out),
        Command::Quotient { shape, no_cache, .. } => cmd_quotient(*shape, *no_cache, cfg, out),
        Command::Branch { a, b, verify } => cmd_branch(*a, *b, *verify, cfg.output, out),
        Command::VerifyAll { max_boxes } => {
            let report = match run_suite(*max_boxes as usize) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(EXIT_RESOURCE);
                }
            };
            for c in &report.checks {
                writeln!(out, "{c}")?;
            }
            let passed = report.passed();
            writeln!(out, "{}", if passed { "PASS" } else { "FAIL" })?;
            Ok(if passed { 0 } else { EXIT_VERIFY })
        }
        Command::Matrices => {
            writeln!(out, "{}", serde_json::to_string(&matrix_dump()).expect("serializable"))?;
            Ok(0)
        }
    }
}

fn cmd_enumerate(
    shape: Shape,
    filter: TableauFilter,
    weight: Option<Weight>,
    count: bool,
    format: OutputFormat,
    out: &mut impl Write,
) -> io::Result<u8> {
    if filter == TableauFilter::All && shape.boxes() > MAX_INDEXABLE_BOXES {
        eprintln!("error: shape {shape} has too many boxes to list every filling");
        return Ok(EXIT_RESOURCE);
    }
    let keep = |t: &Tableau| weight.is_none_or(|w| t.weight() == w);
    if count {
        writeln!(out, "{}", enumerate(shape, filter).filter(keep).count())?;
        return Ok(0);
    }
    for t in enumerate(shape, filter).filter(keep) {
        match format {
            OutputFormat::Json => writeln!(
                out,
                "{}",
                serde_json::to_string(&TableauJson::from(&t)).expect("serializable")
            )?,
            OutputFormat::Csv => writeln!(out, "{}", t.to_csv_line())?,
            OutputFormat::Table => {
                let row = |r: &[g2tab::weights::Entry]| {
                    r.iter()
                        .map(|e| format!("{:>5}", e.symbol()))
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                writeln!(out, "{}", row(t.row1()))?;
                if !t.row2().is_empty() {
                    writeln!(out, "{}", row(t.row2()))?;
                }
                writeln!(out)?;
            }
        }
    }
    Ok(0)
}

fn cmd_quotient(shape: Shape, no_cache: bool, cfg: &RunConfig, out: &mut impl Write) -> io::Result<u8> {
    if shape.boxes() > cfg.max_boxes {
        eprintln!(
            "error: shape {shape} has {} boxes, above the limit of {} (raise --max-boxes)",
            shape.boxes(),
            cfg.max_boxes
        );
        return Ok(EXIT_RESOURCE);
    }
    let mode = cfg.scalar.resolve(shape.boxes());
    let cache = CertificateCache::new(&cfg.cache_dir);
    let cached = if no_cache { None } else { cache.load(shape, mode) };
    let rec = match cached {
        Some(r) => r,
        None => match CertificateRecord::compute(shape, mode) {
            Ok(r) => {
                if !no_cache {
                    if let Err(e) = cache.store(&r) {
                        eprintln!("warning: could not write cache {}: {e}", cache.dir().display());
                    }
                }
                r
            }
            Err(e @ RelationError::TooLarge(_)) => {
                eprintln!("error: {e}");
                return Ok(EXIT_RESOURCE);
            }
            Err(e) => {
                eprintln!("error: {e}");
                return Ok(1);
            }
        },
    };
    match cfg.output {
        OutputFormat::Table => {
            writeln!(out, "shape          {}", rec.shape)?;
            writeln!(out, "modulus        {}", rec.modulus.tag())?;
            writeln!(out, "relation rank  {}", rec.relation_rank)?;
            writeln!(out, "quotient dim   {}", rec.quotient_dim)?;
            writeln!(out, "g2 tableaux    {}", rec.g2_count)?;
            writeln!(out, "spanning       {}", rec.spanning)?;
            writeln!(out, "independent    {}", rec.independent)?;
        }
        _ => writeln!(out, "{}", rec.to_json())?,
    }
    if !rec.holds() {
        eprintln!("FINDING: G2 tableaux of shape {shape} do not form a basis of the quotient");
        return Ok(EXIT_VERIFY);
    }
    Ok(0)
}

fn cmd_branch(a: u32, b: u32, verify: bool, format: OutputFormat, out: &mut impl Write) -> io::Result<u8> {
    let table = branch_table(a, b);
    match format {
        OutputFormat::Json => writeln!(out, "{}", table.to_json())?,
        OutputFormat::Csv => {
            for (c, d, m) in &table.entries {
                writeln!(out, "{c},{d},{m}")?;
            }
        }
        OutputFormat::Table => {
            writeln!(out, "{:>4} {:>4} {:>6}", "c", "d", "mult")?;
            for (c, d, m) in &table.entries {
                writeln!(out, "{c:>4} {d:>4} {m:>6}")?;
            }
        }
    }
    if verify {
        let v = verify_branching(a, b);
        writeln!(out, "{}", serde_json::to_string(&v).expect("serializable"))?;
        if !v.holds() {
            eprintln!("FINDING: branching check failed for ({a},{b})");
            return Ok(EXIT_VERIFY);
        }
    }
    Ok(0)
}
