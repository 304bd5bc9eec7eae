use std::fs::{self, File, OpenOptions};
use std::io::{self, BufWriter, Write};
use std::ops::Range;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use p1f::catalogue::{ingest_catalogue, parse_tokens, split_entries, write_store};
use p1f::invariants::InvariantKind;
use p1f::latin::{fold, unipotent_square, Hamiltonicity};
use p1f::search::{enumerate, EnumerateOptions, LineSink};
use p1f::{
    are_isomorphic, canonicalize, develop, emit_line, validate_p1f, DevelopmentSpec,
    Factorisation, LatinSquare,
};

#[derive(Parser)]
#[command(name = "p1f", version, about = "Perfect 1-factorisations of complete graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the P1Fs of K_n up to isomorphism.
    Enumerate(EnumerateArgs),
    /// Check that every entry of a file is a perfect 1-factorisation.
    Verify { file: PathBuf },
    /// Print the canonical form of every entry.
    Canon {
        file: PathBuf,
        /// Append the automorphism group order and generator cycle type.
        #[arg(long)]
        aut: bool,
    },
    /// Test whether the first entries of two files are isomorphic (exit 0 if so, 1 if not).
    Iso { first: PathBuf, second: PathBuf },
    /// Print an invariant of every entry.
    Invariants {
        #[arg(long, value_enum)]
        kind: Kind,
        file: PathBuf,
    },
    /// Folded Latin squares and their cycle structure.
    Latin(LatinArgs),
    /// Develop base factors under a permutation as described by a spec file.
    Develop {
        specfile: PathBuf,
        /// Append the automorphism group order and generator cycle type.
        #[arg(long)]
        aut: bool,
    },
    /// Validate, canonise and index a catalogue file or directory.
    Ingest {
        path: PathBuf,
        /// Write the catalogue and its invariant index to this directory.
        #[arg(long)]
        store: Option<PathBuf>,
    },
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    /// Seed index range `A..B` (half-open).
    #[arg(long, value_parser = parse_range)]
    seeds: Option<Range<usize>>,
    /// Progress file; finished seeds listed there are skipped on restart.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Output file for canonical lines.
    #[arg(long)]
    out: PathBuf,
    /// Process seeds from last to first.
    #[arg(long)]
    reverse: bool,
}

#[derive(Args)]
struct LatinArgs {
    /// Fold at this vertex (a letter, or a 0-based index).
    #[arg(long, conflicts_with = "all_folds", required_unless_present_any = ["all_folds", "square"])]
    fold: Option<String>,
    /// Fold at every vertex.
    #[arg(long)]
    all_folds: bool,
    /// Treat FILE as a Latin square rather than a factorisation.
    #[arg(long, conflicts_with_all = ["fold", "all_folds"])]
    square: bool,
    /// Report Hamiltonicity instead of printing squares.
    #[arg(long)]
    check: bool,
    file: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Train,
    Indegree,
    Pv,
    Tricolour,
    Cycles,
    Profile,
}

impl From<Kind> for InvariantKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Train => InvariantKind::Train,
            Kind::Indegree => InvariantKind::Indegree,
            Kind::Pv => InvariantKind::PVector,
            Kind::Tricolour => InvariantKind::Tricolour,
            Kind::Cycles => InvariantKind::Cycles,
            Kind::Profile => InvariantKind::Profile,
        }
    }
}

fn parse_range(s: &str) -> Result<Range<usize>, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let a = a.parse().map_err(|_| format!("bad range start {a:?}"))?;
    let b = b.parse().map_err(|_| format!("bad range end {b:?}"))?;
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok(a..b)
}

/// Exit status 2: bad invocation or unreadable input.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn read_input(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path)
        .map_err(|e| anyhow!(UsageError(format!("cannot read {}: {e}", path.display()))))
}

/// Every entry of a catalogue-format file, parsed.
fn read_factorisations(path: &Path) -> anyhow::Result<Vec<(usize, Factorisation)>> {
    let text = read_input(path)?;
    let entries = split_entries(&text, path);
    if entries.is_empty() {
        bail!("{}: no factorisations found", path.display());
    }
    entries
        .iter()
        .map(|e| {
            let tokens: Vec<&str> = e.tokens.iter().map(String::as_str).collect();
            parse_tokens(&tokens)
                .map(|f| (e.line, f))
                .with_context(|| format!("{}:{}", path.display(), e.line))
        })
        .collect()
}

fn first_factorisation(path: &Path) -> anyhow::Result<Factorisation> {
    Ok(read_factorisations(path)?.remove(0).1)
}

fn aut_suffix(f: &Factorisation) -> anyhow::Result<String> {
    let group = canonicalize(f)?.automorphisms;
    let generator = group
        .generator_cycle_type()
        .map_or_else(|| "non-cyclic".to_string(), |c| c.to_string());
    Ok(format!("\taut={} generator={generator}", group.order()))
}

fn parse_vertex(text: &str, n: usize) -> anyhow::Result<usize> {
    let v = match text.as_bytes() {
        [c] if c.is_ascii_lowercase() => (c - b'a') as usize,
        _ => text
            .parse()
            .map_err(|_| anyhow!(UsageError(format!("bad vertex {text:?}"))))?,
    };
    if v >= n {
        bail!(UsageError(format!("vertex {text} outside 0..{n}")));
    }
    Ok(v)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn describe(h: Hamiltonicity) -> String {
    format!(
        "row-Hamiltonian: {}, column-Hamiltonian: {}, symbol-Hamiltonian: {}, atomic: {}",
        yes_no(h.row),
        yes_no(h.column),
        yes_no(h.symbol),
        yes_no(h.atomic())
    )
}

fn run_enumerate(args: &EnumerateArgs, out: &mut impl Write) -> anyhow::Result<ExitCode> {
    let resuming = args
        .checkpoint
        .as_ref()
        .is_some_and(|c| fs::metadata(c).map(|m| m.len() > 0).unwrap_or(false));
    let file = if resuming {
        OpenOptions::new().create(true).append(true).open(&args.out)
    } else {
        File::create(&args.out)
    }
    .with_context(|| format!("cannot open {}", args.out.display()))?;
    let sink = LineSink::new(BufWriter::new(file));
    let options = EnumerateOptions {
        seeds: args.seeds.clone(),
        checkpoint: args.checkpoint.clone(),
        reverse: args.reverse,
    };
    let summary = enumerate(args.n, &options, &sink)?;
    let resumed = summary.seeds.iter().filter(|s| s.resumed).count();
    writeln!(
        out,
        "n={} seeds={}/{} resumed={} classes={} nodes={} elapsed={:.1}s",
        summary.n,
        summary.seeds.len(),
        summary.total_seeds,
        resumed,
        summary.count(),
        summary.nodes(),
        summary.elapsed.as_secs_f64()
    )?;
    Ok(ExitCode::SUCCESS)
}

fn run_verify(file: &Path, out: &mut impl Write) -> anyhow::Result<ExitCode> {
    let text = read_input(file)?;
    let entries = split_entries(&text, file);
    let mut bad = 0;
    for e in &entries {
        let tokens: Vec<&str> = e.tokens.iter().map(String::as_str).collect();
        let verdict = match parse_tokens(&tokens) {
            Err(err) => Err(err.to_string()),
            Ok(f) => {
                let report = validate_p1f(&f);
                if report.is_p1f() {
                    Ok(())
                } else {
                    let pairs: Vec<String> = report
                        .offending_pairs
                        .iter()
                        .map(|(i, j, ls)| format!("({},{}):{ls:?}", i + 1, j + 1))
                        .collect();
                    Err(format!("not perfect; factor pairs and cycle lengths {}", pairs.join(" ")))
                }
            }
        };
        match verdict {
            Ok(()) => writeln!(out, "{}:{}: ok", file.display(), e.line)?,
            Err(msg) => {
                bad += 1;
                writeln!(out, "{}:{}: {msg}", file.display(), e.line)?;
            }
        }
    }
    writeln!(out, "{} entries, {} perfect", entries.len(), entries.len() - bad)?;
    Ok(if bad == 0 && !entries.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn run_latin(args: &LatinArgs, out: &mut impl Write) -> anyhow::Result<ExitCode> {
    if args.square {
        let square: LatinSquare = read_input(&args.file)?.parse()?;
        if args.check {
            writeln!(out, "{}", describe(square.classify()))?;
            let m = square.order();
            let hamilton = (0..m)
                .flat_map(|r| (r + 1..m).map(move |s| (r, s)))
                .filter(|&(r, s)| square.row_cycle_lengths(r, s).map(|l| l == [m]).unwrap_or(false))
                .count();
            writeln!(out, "Hamilton row pairs: {hamilton}/{}", m * (m - 1) / 2)?;
        } else {
            write!(out, "{square}")?;
        }
        return Ok(ExitCode::SUCCESS);
    }
    let f = first_factorisation(&args.file)?;
    let n = f.n();
    let vertices: Vec<usize> = match &args.fold {
        Some(j) => vec![parse_vertex(j, n)?],
        None => (0..n).collect(),
    };
    let mut symbol = 0;
    let mut atomic = 0;
    for (k, &j) in vertices.iter().enumerate() {
        let square = fold(&f, j)?;
        if args.check {
            let h = square.classify();
            symbol += h.symbol as usize;
            atomic += h.atomic() as usize;
            if args.fold.is_some() {
                writeln!(out, "{}", describe(h))?;
            }
        } else {
            if k > 0 {
                writeln!(out)?;
            }
            write!(out, "{square}")?;
        }
    }
    if args.check && args.all_folds {
        writeln!(out, "symbol-Hamiltonian: {symbol}/{n}, atomic: {atomic}")?;
    }
    debug_assert!(unipotent_square(&f).is_symmetric());
    Ok(ExitCode::SUCCESS)
}

fn run_ingest(path: &Path, store: Option<&Path>, out: &mut impl Write) -> anyhow::Result<ExitCode> {
    if fs::metadata(path).is_err() {
        bail!(UsageError(format!("cannot read {}", path.display())));
    }
    let ingested = ingest_catalogue(path)?;
    writeln!(out, "{}", ingested.stats)?;
    if !ingested.non_canonical.is_empty() {
        writeln!(out, "\nnon-canonical entries:")?;
        for issue in &ingested.non_canonical {
            writeln!(out, "  {issue}")?;
        }
    }
    if !ingested.errors.is_empty() {
        writeln!(out, "\nerrors:")?;
        for issue in &ingested.errors {
            writeln!(out, "  {issue}")?;
        }
    }
    if let Some(dir) = store {
        write_store(dir, &ingested.records)?;
        writeln!(out, "\nstore written to {}", dir.display())?;
    }
    Ok(if ingested.errors.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Enumerate(args) => run_enumerate(&args, &mut out),
        Command::Verify { file } => run_verify(&file, &mut out),
        Command::Canon { file, aut } => {
            for (_, f) in read_factorisations(&file)? {
                let form = canonicalize(&f)?.form;
                let suffix = if aut { aut_suffix(&form)? } else { String::new() };
                writeln!(out, "{}{suffix}", emit_line(&form))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Iso { first, second } => {
            let (a, b) = (first_factorisation(&first)?, first_factorisation(&second)?);
            if are_isomorphic(&a, &b)? {
                writeln!(out, "isomorphic")?;
                Ok(ExitCode::SUCCESS)
            } else {
                writeln!(out, "not isomorphic")?;
                Ok(ExitCode::FAILURE)
            }
        }
        Command::Invariants { kind, file } => {
            let kind = InvariantKind::from(kind);
            for (_, f) in read_factorisations(&file)? {
                writeln!(out, "{}", kind.evaluate(&f))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Latin(args) => run_latin(&args, &mut out),
        Command::Develop { specfile, aut } => {
            let spec = DevelopmentSpec::parse(&read_input(&specfile)?)?;
            let f = develop(&spec)?;
            let suffix = if aut { aut_suffix(&f)? } else { String::new() };
            writeln!(out, "{}{suffix}", emit_line(&f))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Ingest { path, store } => run_ingest(&path, store.as_deref(), &mut out),
    }
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("P1F_THREADS") {
        let threads: usize = v
            .parse()
            .map_err(|_| anyhow!(UsageError(format!("P1F_THREADS must be a number, got {v:?}"))))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(cli)) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
