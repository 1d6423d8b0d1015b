use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use lame_census::census::{census_table, dessin_count, lame_count, CensusEntry};
use lame_census::constellation::{
    dessins_by_case, enumerate_representatives, ConstellationRecord, EnumerationConfig,
    DEFAULT_MAX_DEGREE,
};
use lame_census::ramification::{
    build_profile, normalized_index, profiles_for, riemann_hurwitz_check, CaseLabel, CycleType,
    MarkedPoint,
};

/// Census of integral Lamé equations with dihedral projective monodromy:
/// closed-form counts plus a brute-force dessin enumerator to check them.
#[derive(Parser)]
#[command(name = "lame-census", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the dessin count D and the Lamé count L at one (n, N)
    Count {
        /// Index of the Lamé equation (any integer)
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        /// Half the dihedral order (at least 1)
        #[arg(long = "N")]
        half_order: u64,
    },
    /// Print both counts for every (n, N) in a rectangle
    Table {
        #[arg(long = "n-min", allow_negative_numbers = true)]
        n_min: i64,
        #[arg(long = "n-max", allow_negative_numbers = true)]
        n_max: i64,
        #[arg(long = "N-min")]
        order_min: u64,
        #[arg(long = "N-max")]
        order_max: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Write to this file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the closed-form dessin count with brute-force enumeration
    Verify {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long = "N")]
        half_order: u64,
        /// Refuse cover degrees above this bound
        #[arg(long = "max-degree", default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: u64,
        /// Worker threads for the sweep (0 = default pool, 1 = sequential)
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// List the ramification profiles that instantiate at (n, N)
    Profiles {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long = "N")]
        half_order: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Write one representative constellation per dessin class
    Enumerate {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long = "N")]
        half_order: u64,
        /// Ramification case label (Ia, Ib, Ic, Id, II)
        #[arg(long)]
        case: CaseLabel,
        /// Write the records to this file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Refuse cover degrees above this bound
        #[arg(long = "max-degree", default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: u64,
        /// Worker threads for the sweep (0 = default pool, 1 = sequential)
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
}

/// A profile as printed by `profiles`: the profile fields plus the genus
/// recomputed from the branch data.
#[derive(Serialize)]
struct ProfileWithGenus<'a> {
    case: CaseLabel,
    n: u64,
    #[serde(rename = "N")]
    half_order: u64,
    degree: u64,
    #[serde(rename = "over0")]
    over_zero: &'a CycleType,
    #[serde(rename = "over1")]
    over_one: &'a CycleType,
    #[serde(rename = "overInf")]
    over_infinity: &'a CycleType,
    marks: &'a [MarkedPoint],
    genus: i64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Count { n, half_order } => {
            let dessins = dessin_count(n, half_order).map_err(|e| e.to_string())?;
            let lame = lame_count(n, half_order).map_err(|e| e.to_string())?;
            println!("D={dessins} L={lame}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Table { n_min, n_max, order_min, order_max, format, out } => {
            let entries =
                census_table(n_min, n_max, order_min, order_max).map_err(|e| e.to_string())?;
            let rendered = match format {
                Format::Csv => render_csv(&entries),
                Format::Json => render_json_array(&entries)?,
            };
            emit(&rendered, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { n, half_order, max_degree, workers } => {
            let formula = dessin_count(n, half_order).map_err(|e| e.to_string())?;
            let config = EnumerationConfig { max_degree, workers };
            let per_case = match normalized_index(n) {
                Some(index) => {
                    dessins_by_case(index, half_order, &config).map_err(|e| e.to_string())?
                }
                // n(n+1) = 0: no covers, the brute-force total is empty
                None => Vec::new(),
            };
            for (case, count) in &per_case {
                println!("{case}: {count}");
            }
            let oracle: u64 = per_case.iter().map(|&(_, count)| count).sum();
            if oracle == formula {
                println!("MATCH ({oracle} = {formula})");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("MISMATCH ({oracle} != {formula})");
                Ok(ExitCode::from(1))
            }
        }
        Command::Profiles { n, half_order, format } => {
            if format != Format::Json {
                return Err("profiles output supports only --format json".to_string());
            }
            if half_order < 1 {
                return Err("N must be >= 1".to_string());
            }
            let profiles = match normalized_index(n) {
                Some(index) => profiles_for(index, half_order),
                None => Vec::new(),
            };
            let mut dumps = Vec::with_capacity(profiles.len());
            for p in &profiles {
                let genus = riemann_hurwitz_check(p).map_err(|e| e.to_string())?;
                dumps.push(ProfileWithGenus {
                    case: p.case,
                    n: p.n,
                    half_order: p.half_order,
                    degree: p.degree,
                    over_zero: &p.over_zero,
                    over_one: &p.over_one,
                    over_infinity: &p.over_infinity,
                    marks: &p.marks,
                    genus,
                });
            }
            println!("{}", serde_json::to_string(&dumps).map_err(|e| e.to_string())?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate { n, half_order, case, out, max_degree, workers } => {
            let index = normalized_index(n)
                .ok_or_else(|| format!("no cover exists for index n = {n}: n(n+1) = 0"))?;
            let profile = build_profile(case, index, half_order).map_err(|e| e.to_string())?;
            let config = EnumerationConfig { max_degree, workers };
            let representatives =
                enumerate_representatives(&profile, &config).map_err(|e| e.to_string())?;
            let mut body = String::new();
            for constellation in &representatives {
                let record = ConstellationRecord::new(case, constellation);
                body.push_str(&serde_json::to_string(&record).map_err(|e| e.to_string())?);
                body.push('\n');
            }
            match out.as_deref() {
                Some(path) => {
                    fs::write(path, &body)
                        .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
                    println!("count: {}", representatives.len());
                }
                None => {
                    print!("{body}");
                    eprintln!("count: {}", representatives.len());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn render_csv(entries: &[CensusEntry]) -> String {
    let mut rendered = String::from("n,N,dessins,lame\n");
    for e in entries {
        rendered.push_str(&format!("{},{},{},{}\n", e.n, e.half_order, e.dessins, e.lame));
    }
    rendered
}

fn render_json_array<T: Serialize>(values: &[T]) -> Result<String, String> {
    let mut rendered = serde_json::to_string(values).map_err(|e| e.to_string())?;
    rendered.push('\n');
    Ok(rendered)
}

fn emit(rendered: &str, out: Option<&std::path::Path>) -> Result<(), String> {
    match out {
        Some(path) => {
            fs::write(path, rendered).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}
