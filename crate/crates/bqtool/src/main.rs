use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use bqtool::json::{certificate_from_json, outcome_json, report_json};
use bqtool::parse::{parse_complex, parse_triple};
use bqtool::scan::{scan_grid, CellStatus, ScanConfig, SliceKind};
use bqtool::{dot, ppm, table};
use bqtool_core::analysis::{angle_decay_scan, bip_scan, palindromic_chain, ps_scan};
use bqtool_core::bq::{decide_bq, enumerate_omega, validate_certificate, BqOutcome, BqParams};
use bqtool_core::farey::{
    mod2_type, palindromic_representative, rewrite_in_pair, standard_word, BasicPair,
};
use bqtool_core::geometry::{lift_triple, nested_halfspace_check};
use bqtool_core::growth::{arrow_agreement_scan, fibonacci_growth_scan};
use bqtool_core::{Error, Fraction, MarkoffTriple, C64};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "bqtool",
    version,
    about = "Markoff maps, BQ decisions and parameter-plane scans"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads for scans
    #[arg(long, global = true, env = "BQTOOL_THREADS")]
    threads: Option<usize>,
    /// Write a JSON report here
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Write a CSV table here
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    /// Main output file (DOT for `tree`, PPM for `scan`)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Re-check certificates after they are produced
    #[arg(long, global = true)]
    validate: bool,
}

#[derive(Args, Clone, Copy)]
struct SearchArgs {
    /// Node budget of the tree search
    #[arg(long, default_value_t = BqParams::default().max_nodes)]
    max_nodes: usize,
    /// Tolerance for traces in [-2, 2] and for reducibility
    #[arg(long, default_value_t = BqParams::default().tol)]
    tol: f64,
    /// Margin above 2 required of adjacent values when pruning
    #[arg(long, default_value_t = BqParams::default().margin)]
    margin: f64,
    /// Floor M for pruned values; defaults to 2 + margin
    #[arg(long)]
    floor: Option<f64>,
}

impl SearchArgs {
    fn params(&self) -> BqParams {
        BqParams {
            tol: self.tol,
            margin: self.margin,
            floor: self.floor.unwrap_or(2.0 + self.margin),
            max_nodes: self.max_nodes,
        }
    }
}

#[derive(Args)]
struct TripleArg {
    /// Trace triple `x,y,z`; complex entries as `re+imi`
    #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
    triple: MarkoffTriple,
}

#[derive(Clone, Copy, ValueEnum)]
enum Slice {
    Diagonal,
    FixXy,
}

#[derive(Subcommand)]
enum Command {
    /// Standard word of a primitive class
    Word {
        #[arg(allow_hyphen_values = true)]
        fraction: Fraction,
        /// Also rewrite in a basic pair (ab, a-ab, b-ab)
        #[arg(long)]
        pair: Option<BasicPair>,
    },
    /// Palindromic representative with respect to a basic pair
    Palindrome {
        #[arg(allow_hyphen_values = true)]
        fraction: Fraction,
        #[arg(long)]
        pair: BasicPair,
    },
    /// Decide the BQ-conditions
    Bq {
        #[command(flatten)]
        triple: TripleArg,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Re-check a certificate document
    Check { file: PathBuf },
    /// Export the explored tree as DOT
    Tree {
        #[command(flatten)]
        triple: TripleArg,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Regions with |value| <= m
    Omega {
        #[command(flatten)]
        triple: TripleArg,
        #[arg(long, default_value_t = 2.0)]
        m: f64,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Quasigeodesic constants of broken geodesics
    Ps {
        #[command(flatten)]
        triple: TripleArg,
        #[arg(long, default_value_t = 10)]
        depth: u64,
        #[arg(long, default_value_t = 1.0)]
        eps: f64,
        #[arg(long, default_value_t = 4)]
        copies: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Palindromic axes against the hyperelliptic axes
    Bip {
        #[command(flatten)]
        triple: TripleArg,
        #[arg(long, default_value_t = 8)]
        depth: u64,
    },
    /// Growth of values against word length
    Growth {
        #[command(flatten)]
        triple: TripleArg,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Agreement of trace and word-length arrows
    Arrows {
        #[command(flatten)]
        triple: TripleArg,
        #[arg(long, default_value_t = 10)]
        depth: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Complex distances between neighbouring axes
    Angles {
        #[command(flatten)]
        triple: TripleArg,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Descending chain of palindromic neighbours
    Chain {
        #[arg(allow_hyphen_values = true)]
        fraction: Fraction,
        #[arg(long)]
        pair: BasicPair,
        #[command(flatten)]
        triple: TripleArg,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Nested half-spaces for the lifted generators
    Nesting {
        #[command(flatten)]
        triple: TripleArg,
    },
    /// Scan a slice of the parameter plane
    Scan {
        #[arg(long, value_enum, default_value_t = Slice::Diagonal)]
        slice: Slice,
        /// Fixed x for `fix-xy`
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        x: Option<C64>,
        /// Fixed y for `fix-xy`
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        y: Option<C64>,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        center: C64,
        #[arg(long)]
        width: f64,
        /// Defaults to the width scaled by rows/cols
        #[arg(long)]
        height: Option<f64>,
        #[arg(long, default_value_t = 64)]
        cols: usize,
        #[arg(long, default_value_t = 64)]
        rows: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
}

/// Exit status 1 for usage and I/O problems, 2 for degenerate input.
enum Failure {
    Usage(anyhow::Error),
    Degenerate(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Reducible { .. }
            | Error::Overflow(_)
            | Error::NoAxis
            | Error::SharedEndpoint
            | Error::NotLoxodromic
            | Error::AxesIntersect
            | Error::NotCertified => Failure::Degenerate(e.into()),
            _ => Failure::Usage(e.into()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn write_file(path: &Path, contents: &[u8]) -> anyhow::Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn emit_json<T: serde::Serialize>(cli: &Cli, kind: &str, report: &T) -> anyhow::Result<()> {
    if let Some(path) = &cli.json {
        write_file(path, report_json(kind, report)?.as_bytes())?;
    }
    Ok(())
}

fn fmt_c(v: C64) -> String {
    if v.im == 0.0 {
        format!("{}", v.re)
    } else {
        format!("{}{:+}i", v.re, v.im)
    }
}

fn print_outcome(o: &BqOutcome) {
    println!("status: {}", o.status());
    println!("nodes: {}", o.nodes());
    match o {
        BqOutcome::Certified(c) => {
            println!("explored: {}", c.explored.len());
            println!("frontier: {}", c.frontier.len());
            println!("omega2: {}", c.omega_below(2.0).len());
        }
        BqOutcome::Fails {
            witness,
            value,
            reason,
            ..
        } => {
            println!("witness: {witness}");
            println!("value: {}", fmt_c(*value));
            println!("reason: {reason:?}");
        }
        BqOutcome::Inconclusive(s) => println!("queued: {}", s.queued),
        BqOutcome::Reducible { mu } => println!("mu: {}", fmt_c(*mu)),
    }
}

fn decide(cli: &Cli, t: &MarkoffTriple, params: &BqParams) -> Result<BqOutcome, Failure> {
    let o = decide_bq(t, params);
    print_outcome(&o);
    if let Some(path) = &cli.json {
        write_file(path, outcome_json(&o, *params)?.as_bytes())?;
    }
    if let BqOutcome::Reducible { mu } = o {
        return Err(Error::Reducible {
            mu_re: mu.re,
            mu_im: mu.im,
        }
        .into());
    }
    if cli.validate {
        if let BqOutcome::Certified(c) = &o {
            match validate_certificate(c, t) {
                Ok(d) => println!("validation: ok ({d:?})"),
                Err(v) => println!("validation: FAILED {v}"),
            }
        }
    }
    Ok(o)
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Word { fraction, pair } => {
            let w = standard_word(fraction)?;
            println!("fraction: {fraction}");
            println!("word: {w}");
            println!("length: {}", w.len());
            println!("type: {}", mod2_type(fraction));
            if let Some(p) = pair {
                println!(
                    "in {}: {}",
                    p.label(),
                    rewrite_in_pair(&w, *p).render(p.letter_names())
                );
            }
        }
        Command::Palindrome { fraction, pair } => {
            let w = palindromic_representative(fraction, *pair)?;
            println!("{}", w.render(pair.letter_names()));
        }
        Command::Bq { triple, search } => {
            decide(cli, &triple.triple, &search.params())?;
        }
        Command::Check { file } => {
            let s =
                fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
            let c = certificate_from_json(&s)?;
            match validate_certificate(&c, &c.triple) {
                Ok(d) => println!("ok: {d:?}"),
                Err(v) => return Err(Failure::Usage(anyhow!("certificate rejected: {v}"))),
            }
        }
        Command::Tree { triple, search } => {
            if let BqOutcome::Certified(c) = decide(cli, &triple.triple, &search.params())? {
                let text = dot::certificate_dot(&c);
                match &cli.out {
                    Some(path) => write_file(path, text.as_bytes())?,
                    None => print!("{text}"),
                }
            }
        }
        Command::Omega { triple, m, search } => {
            for (f, v) in enumerate_omega(&triple.triple, *m, &search.params())? {
                println!("{f}\t{}", fmt_c(v));
            }
        }
        Command::Ps {
            triple,
            depth,
            eps,
            copies,
            search,
        } => {
            let r = ps_scan(
                &triple.triple,
                *depth,
                *eps,
                *copies,
                None,
                search.params().tol,
            )?;
            println!("classes: {}", r.records.len());
            println!("k_star: {}", r.k_star);
            println!(
                "flagged: {}",
                r.flagged
                    .iter()
                    .map(|f| f.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            println!(
                "worst: {}",
                r.worst
                    .iter()
                    .map(|f| f.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            if let Some(path) = &cli.csv {
                let mut buf = Vec::new();
                table::write_ps_csv(&r, &mut buf)?;
                write_file(path, &buf)?;
            }
            emit_json(cli, "ps", &r)?;
        }
        Command::Bip { triple, depth } => {
            let r = bip_scan(&triple.triple, *depth)?;
            println!("records: {}", r.records.len());
            for (p, d) in BasicPair::ALL.iter().zip(r.max_distance) {
                println!("D {}: {d}", p.label());
            }
            println!("D: {}", r.d());
            println!("max_residual: {}", r.max_residual);
            println!("skipped: {}", r.skipped.len());
            emit_json(cli, "bip", &r)?;
        }
        Command::Growth {
            triple,
            depth,
            search,
        } => {
            let r = fibonacci_growth_scan(&triple.triple, *depth, &search.params());
            println!("status: {}", r.status);
            println!("records: {}", r.records.len());
            println!("c_minus: {}", r.c_minus);
            println!("c_plus: {}", r.c_plus);
            println!("c_fibonacci: {}", r.c_fibonacci);
            println!("exceptions: {}", r.exceptions.len());
            emit_json(cli, "growth", &r)?;
        }
        Command::Arrows {
            triple,
            depth,
            search,
        } => {
            let r = arrow_agreement_scan(&triple.triple, *depth, &search.params())?;
            println!("edges: {}", r.edges_compared);
            println!("n0: {}", r.n0);
            println!("disagreements: {}", r.disagreements.len());
            emit_json(cli, "arrows", &r)?;
        }
        Command::Angles {
            triple,
            depth,
            search,
        } => {
            let r = angle_decay_scan(&triple.triple, *depth, &search.params())?;
            println!("pairs: {}", r.records.len());
            println!("k: {}", r.k);
            println!("k_half: {}", r.k_half);
            for (level, a) in r.max_angle_by_level.iter().enumerate() {
                println!("level {level}: max |Im delta| {a}");
            }
            emit_json(cli, "angles", &r)?;
        }
        Command::Chain {
            fraction,
            pair,
            triple,
            search,
        } => {
            let r = palindromic_chain(fraction, *pair, &triple.triple, &search.params())?;
            for e in &r.entries {
                println!("{}\t{}\tstep {}", e.fraction, e.word, e.step);
            }
            println!("terminal: {}", r.terminal);
            println!("descending: {}", r.descending);
            emit_json(cli, "chain", &r)?;
        }
        Command::Nesting { triple } => {
            let (a, b) = lift_triple(&triple.triple, 1e-9)?;
            let r = nested_halfspace_check(&a, &b)?;
            for rel in &r.relations {
                println!(
                    "{}{}: nested {} margin {}",
                    rel.x, rel.y, rel.nested, rel.margin
                );
            }
            println!("axis_distance: {}", r.axis_distance);
            println!("axis_angle: {}", r.axis_angle);
            emit_json(cli, "nesting", &r)?;
        }
        Command::Scan {
            slice,
            x,
            y,
            center,
            width,
            height,
            cols,
            rows,
            search,
        } => {
            let kind = match slice {
                Slice::Diagonal => SliceKind::Diagonal,
                Slice::FixXy => {
                    let (Some(x), Some(y)) = (x, y) else {
                        return Err(Failure::Usage(anyhow!("fix-xy needs --x and --y")));
                    };
                    SliceKind::FixXy { x: *x, y: *y }
                }
            };
            let cfg = ScanConfig {
                kind,
                center: *center,
                width: *width,
                height: height.unwrap_or(*width * *rows as f64 / (*cols).max(1) as f64),
                cols: *cols,
                rows: *rows,
                params: search.params(),
                validate: cli.validate,
            };
            let r = scan_grid(&cfg, cli.threads)?;
            for s in [
                CellStatus::Certified,
                CellStatus::Fails,
                CellStatus::Inconclusive,
                CellStatus::Reducible,
            ] {
                println!(
                    "{}: {}",
                    s.as_str(),
                    r.cells.iter().filter(|c| c.status == s).count()
                );
            }
            if cli.validate {
                println!(
                    "invalid certificates: {}",
                    r.cells
                        .iter()
                        .filter(|c| c.validated == Some(false))
                        .count()
                );
            }
            if let Some(path) = &cli.out {
                ppm::write_ppm(&r, path)?;
            }
            if let Some(path) = &cli.csv {
                let mut buf = Vec::new();
                table::write_scan_csv(&r, &mut buf)?;
                write_file(path, &buf)?;
            }
            emit_json(cli, "scan", &r)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = run(&cli);
    let _ = std::io::stdout().flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Degenerate(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
