use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use regorb::catalogue::{self, RowParams};
use regorb::classify::{
    classify_row, verify_against_table3, write_csv, ClassificationRecord, ClassifyConfig, Journal, DEFAULT_SEED,
};
use regorb::cliffnorm::{assemble_full, Bounds, CliffError};
use regorb::espec::EType;
use regorb::group::{enumerate, FiniteGroup, GMat, MatSpace};
use regorb::orbits::{census_has_regular, has_regular_orbit, orbit_census, CENSUS_MAX_SPACE};

const EXIT_MISMATCH: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_SCOPE: u8 = 3;

/// Rows checked by `verify` when none are given.
const DEFAULT_VERIFY_ROWS: [u32; 15] = [62, 63, 64, 66, 67, 68, 69, 19, 49, 50, 52, 48, 65, 104, 117];

#[derive(Parser)]
#[command(name = "regorb", version, about = "Regular orbits of extraspecial normalizer subgroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Assemble the normalizer for a row and write its generators.
    BuildNormalizer(RunArgs),
    /// Classify the groups without a regular orbit for the given rows.
    Classify(RunArgs),
    /// Compare classifications with the known counts.
    Verify {
        #[command(flatten)]
        run: RunArgs,
        /// Verify a saved records.json instead of recomputing.
        #[arg(long)]
        records: Option<PathBuf>,
    },
    /// Decide whether a serialized group has a regular orbit.
    OrbitCheck {
        file: PathBuf,
        /// Cross-check with the orbit census.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 30_000_000)]
        max_space: u64,
    },
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum EtypeArg {
    Auto,
    Plus,
    Minus,
    Symplectic,
}

#[derive(Args, Clone, Serialize)]
struct RunArgs {
    /// Catalogue rows, comma separated.
    #[arg(long, alias = "row", value_delimiter = ',')]
    rows: Vec<u32>,
    #[arg(long)]
    e: Option<u32>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    a: Option<u32>,
    #[arg(long)]
    b: Option<u32>,
    #[arg(long, value_enum, default_value = "auto")]
    etype: EtypeArg,
    #[arg(long, default_value_t = Bounds::default().max_group_order)]
    max_group_order: usize,
    #[arg(long, default_value_t = Bounds::default().max_quotient)]
    max_quotient: usize,
    #[arg(long, default_value_t = Bounds::default().max_space)]
    max_space: u64,
    /// Allow rows with e = 9 or 16.
    #[arg(long)]
    stretch: bool,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, env = "REGORB_CHECKPOINT_DIR")]
    checkpoint_dir: Option<PathBuf>,
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Cross-check every candidate against the orbit census.
    #[arg(long)]
    oracle: bool,
}

struct Failure(u8, String);

impl RunArgs {
    fn bounds(&self) -> Bounds {
        Bounds {
            max_group_order: self.max_group_order,
            max_quotient: self.max_quotient,
            max_space: self.max_space,
            stretch: self.stretch,
        }
    }

    fn etype(&self) -> Option<EType> {
        match self.etype {
            EtypeArg::Auto => None,
            EtypeArg::Plus => Some(EType::Plus),
            EtypeArg::Minus => Some(EType::Minus),
            EtypeArg::Symplectic => Some(EType::SymplecticType),
        }
    }

    fn config(&self) -> ClassifyConfig {
        ClassifyConfig { bounds: self.bounds(), seed: self.seed, etype: self.etype(), oracle: self.oracle }
    }

    fn row_params(&self, default_rows: &[u32]) -> Result<Vec<RowParams>, Failure> {
        let invalid = |m: String| Failure(EXIT_INVALID, m);
        let explicit = [self.e, self.p, self.d, self.a, self.b];
        if explicit.iter().any(|x| x.is_some()) {
            if !self.rows.is_empty() {
                return Err(invalid("give either --rows or --e/--p/--d/--a/--b".into()));
            }
            let [Some(e), Some(p), Some(d), Some(a), Some(b)] = explicit else {
                return Err(invalid("--e, --p, --d, --a and --b must all be given".into()));
            };
            return RowParams::new(e, p, d, a, b).map(|r| vec![r]).map_err(|e| invalid(e.to_string()));
        }
        let rows: &[u32] = if self.rows.is_empty() { default_rows } else { &self.rows };
        if rows.is_empty() {
            return Err(invalid("no rows given".into()));
        }
        rows.iter().map(|&n| catalogue::row(n).map_err(|e| invalid(e.to_string()))).collect()
    }

    fn setup_threads(&self) {
        if let Some(n) = self.threads {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }

    fn out_dir(&self) -> Result<&Path, Failure> {
        fs::create_dir_all(&self.out).map_err(|e| Failure(EXIT_INVALID, format!("{}: {e}", self.out.display())))?;
        Ok(&self.out)
    }
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure(EXIT_INVALID, format!("{}: {e}", path.display())))
}

fn build_normalizer(args: &RunArgs) -> Result<(), Failure> {
    args.setup_threads();
    let rows = args.row_params(&[])?;
    let out = args.out_dir()?;
    let bounds = args.bounds();
    for row in rows {
        let types = match args.etype() {
            None => row.assembly_types(),
            Some(t) if row.assembly_types().contains(&t) => vec![t],
            Some(t) => return Err(Failure(EXIT_INVALID, format!("{}: no {} model", row.label(), t.name()))),
        };
        for t in types {
            let asm = match assemble_full(&row, t, &bounds) {
                Ok(a) => a,
                Err(CliffError::OutOfScope(why)) => {
                    return Err(Failure(EXIT_SCOPE, format!("{}: out of desk scope: {why}", row.label())))
                }
                Err(e) => return Err(Failure(EXIT_MISMATCH, e.to_string())),
            };
            let n = asm.enumerate(bounds.max_group_order).map_err(|e| Failure(EXIT_MISMATCH, e.to_string()))?;
            let name = match row.row {
                Some(no) => format!("normalizer-row{no}-{}.json", t.name()),
                None => format!("normalizer-e{}-p{}-d{}-a{}-b{}-{}.json", row.e, row.p, row.d, row.a, row.b, t.name()),
            };
            let path = out.join(name);
            write(&path, &serde_json::to_string_pretty(&asm.to_json(Some(n.order()))).unwrap())?;
            println!("{} {}: |N| = {} ({})", row.label(), t.name(), n.order(), path.display());
        }
    }
    Ok(())
}

fn run_rows(args: &RunArgs, rows: &[RowParams]) -> Result<Vec<ClassificationRecord>, Failure> {
    let journal = match &args.checkpoint_dir {
        Some(dir) => Some(Journal::open(dir).map_err(|e| Failure(EXIT_INVALID, e.to_string()))?),
        None => None,
    };
    let config = args.config();
    rows.iter()
        .map(|row| {
            let start = std::time::Instant::now();
            let rec = classify_row(row, &config, journal.as_ref()).map_err(|e| Failure(EXIT_MISMATCH, e.to_string()))?;
            eprintln!("{}: {} groups, max {} ({:.1}s)", row.label(), rec.num_gps, rec.max_order, start.elapsed().as_secs_f64());
            Ok(rec)
        })
        .collect()
}

fn write_reports(args: &RunArgs, records: &[ClassificationRecord]) -> Result<String, Failure> {
    let out = args.out_dir()?;
    let mut csv = Vec::new();
    write_csv(records, &mut csv).unwrap();
    let csv = String::from_utf8(csv).unwrap();
    write(&out.join("table3.csv"), &csv)?;
    let report = json!({ "config": args, "records": records });
    write(&out.join("records.json"), &serde_json::to_string_pretty(&report).unwrap())?;
    Ok(csv)
}

fn classify(args: &RunArgs) -> Result<(), Failure> {
    args.setup_threads();
    let rows = args.row_params(&[])?;
    let records = run_rows(args, &rows)?;
    print!("{}", write_reports(args, &records)?);
    if records.iter().any(|r| !r.complete) {
        for r in records.iter().filter(|r| !r.complete) {
            eprintln!("{}: out of desk scope: {}", r.row.label(), r.skipped.as_deref().unwrap_or(""));
        }
        return Err(Failure(EXIT_SCOPE, "some rows were skipped".into()));
    }
    Ok(())
}

#[derive(Deserialize)]
struct SavedRecords {
    records: Vec<ClassificationRecord>,
}

fn verify(args: &RunArgs, saved: Option<&Path>) -> Result<(), Failure> {
    args.setup_threads();
    let records = match saved {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure(EXIT_INVALID, format!("{}: {e}", path.display())))?;
            serde_json::from_str::<SavedRecords>(&text)
                .map_err(|e| Failure(EXIT_INVALID, format!("{}: {e}", path.display())))?
                .records
        }
        None => {
            let rows = args.row_params(&DEFAULT_VERIFY_ROWS)?;
            let records = run_rows(args, &rows)?;
            write_reports(args, &records)?;
            records
        }
    };
    let diff = verify_against_table3(&records);
    print!("{diff}");
    if diff.any_mismatch() {
        Err(Failure(EXIT_MISMATCH, "verification failed".into()))
    } else if !diff.all_pass() {
        Err(Failure(EXIT_SCOPE, "some rows were skipped".into()))
    } else {
        Ok(())
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixEntry {
    Plain(Vec<Vec<u32>>),
    Tagged { matrix: Vec<Vec<u32>> },
}

/// A group given by generators over GF(p); normalizer files also parse.
#[derive(Deserialize)]
struct GroupFile {
    p: u32,
    d: usize,
    generators: Vec<MatrixEntry>,
}

fn orbit_check(file: &Path, oracle: bool, max_space: u64) -> Result<(), Failure> {
    let invalid = |m: String| Failure(EXIT_INVALID, format!("{}: {m}", file.display()));
    let text = fs::read_to_string(file).map_err(|e| invalid(e.to_string()))?;
    let g: GroupFile = serde_json::from_str(&text).map_err(|e| invalid(e.to_string()))?;
    if !regorb::gfp::is_prime(g.p) || g.p >= 256 || g.d == 0 {
        return Err(invalid(format!("unsupported field GF({}) or dimension {}", g.p, g.d)));
    }
    let space = MatSpace::new(g.p, g.d);
    let gens: Vec<GMat> = g
        .generators
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let rows = match m {
                MatrixEntry::Plain(r) | MatrixEntry::Tagged { matrix: r } => r,
            };
            space.from_nested(rows).ok_or_else(|| invalid(format!("generator {i} is not a {0}x{0} matrix mod {1}", g.d, g.p)))
        })
        .collect::<Result<_, _>>()?;
    let group = enumerate(space, &gens, regorb::group::DEFAULT_GROUP_BOUND).map_err(|e| invalid(e.to_string()))?;
    let report = match has_regular_orbit(space, group.elements(), max_space) {
        Ok(r) => r,
        Err(e) => return Err(Failure(EXIT_SCOPE, e.to_string())),
    };
    println!("|G| = {}", report.group_order);
    if report.has_regular {
        println!("regular orbit: witness {:?}", report.witness.as_ref().unwrap());
    } else {
        println!("no regular orbit: {} fixed spaces cover all {} points", report.cover.len(), report.covered_points);
        for c in &report.cover {
            println!("  fix {:?} = span {:?}", c.element, c.basis);
        }
    }
    if oracle {
        let census = orbit_census(space, &gens, max_space.min(CENSUS_MAX_SPACE)).map_err(|e| Failure(EXIT_SCOPE, e.to_string()))?;
        let sizes: Vec<String> = census.iter().map(|(s, n)| format!("{s}x{n}")).collect();
        println!("orbit sizes: {}", sizes.join(" "));
        if census_has_regular(&census, report.group_order) != report.has_regular {
            return Err(Failure(EXIT_MISMATCH, "census disagrees with the covering test".into()));
        }
        println!("census agrees");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::BuildNormalizer(a) => build_normalizer(a),
        Command::Classify(a) => classify(a),
        Command::Verify { run, records } => verify(run, records.as_deref()),
        Command::OrbitCheck { file, oracle, max_space } => orbit_check(file, *oracle, *max_space),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
