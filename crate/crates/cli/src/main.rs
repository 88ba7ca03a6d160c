use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context as _};
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use sqsum::format::{gap_json_lines, search_csv, search_json, search_text, OutputFormat, SearchRecord};
use sqsum::parallel::{min_sumset_par, pool, search_gap_par, table_scan_par};
use sqsum::setfile::{read_set_file, render_set};
use sqsum::verify::{run_suite, VerifyConfig, DEFAULT_SEED};
use sqsum_core::constructions::{
    build_ec_family, build_ec_family_rem, check_perfect_cuboid, magic7_set, GapSearch,
};
use sqsum_core::sumset::{report_values, SquareSet};
use sqsum_core::zp::{PrimeModulus, ResidueSet, SearchOptions};
use sqsum_core::{Integer, Rational};

#[derive(Parser)]
#[command(name = "sqsum", version, about = "Small sumsets of squares over Q and Z_p")]
struct Cli {
    #[arg(long, value_enum, default_value_t, global = true)]
    format: OutputFormat,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Size of A+A for a set file.
    Sumset {
        file: PathBuf,
        /// Reduce the (integer) elements modulo this prime.
        #[arg(long)]
        p: Option<u64>,
        /// Also print the elements of A+A.
        #[arg(long)]
        full: bool,
    },
    /// Emit an explicit square set.
    Construct(ConstructArgs),
    /// Minimum |A+A| over n-subsets of the squares mod p.
    #[command(alias = "table")]
    Search(SearchArgs),
    /// Bounded scan for generalized progressions containing many squares.
    Gap {
        /// Dimension sizes, e.g. 3,3.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        /// Largest step (and base, unless --base-bound is given).
        #[arg(long)]
        bound: u64,
        #[arg(long)]
        base_bound: Option<u64>,
        #[arg(long)]
        min_squares: usize,
    },
    /// Which diagonals of an a x b x c box are integers.
    Cuboid {
        #[arg(value_parser = parse_integer)]
        a: Integer,
        #[arg(value_parser = parse_integer)]
        b: Integer,
        #[arg(value_parser = parse_integer)]
        c: Integer,
    },
    /// Recompute the published values.
    Verify {
        /// Criterion id, tag or title fragment.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ConstructArgs {
    /// Union of n progression blocks (3n squares).
    #[arg(long)]
    n: Option<usize>,
    /// Exactly m squares: full blocks plus a partial one.
    #[arg(long)]
    size: Option<usize>,
    /// The seven squares of the 3x3 magic square.
    #[arg(long)]
    magic: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, conflicts_with_all = ["pmin", "pmax"], required_unless_present_all = ["pmin", "pmax"])]
    p: Option<u64>,
    #[arg(long, requires = "pmax")]
    pmin: Option<u64>,
    #[arg(long, requires = "pmin")]
    pmax: Option<u64>,
    /// Stop after this many search nodes per prime.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    no_symmetry: bool,
    /// Write the witness of a single search as a set file.
    #[arg(long, requires = "p")]
    witness_file: Option<PathBuf>,
}

fn parse_integer(s: &str) -> Result<Integer, String> {
    s.parse().map_err(|_| format!("{s:?} is not an integer"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let workers = cli
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let result = pool(workers).and_then(|pool| pool.install(|| run(cli.format, cli.command)));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` means the command ran but something did not hold.
fn run(format: OutputFormat, command: Command) -> anyhow::Result<bool> {
    match command {
        Command::Sumset { file, p, full } => {
            let set = read_set_file(&file)?;
            match p {
                Some(p) => sumset_mod_p(format, &set, p, full),
                None => sumset_q(format, &set, full),
            }
        }
        Command::Construct(args) => construct(format, args),
        Command::Search(args) => search(format, args),
        Command::Gap {
            sizes,
            bound,
            base_bound,
            min_squares,
        } => {
            let s = GapSearch::with_bounds(sizes, base_bound.unwrap_or(bound), bound, min_squares)?;
            let hits = search_gap_par(&s);
            match format {
                OutputFormat::Json => print!("{}", gap_json_lines(&hits)?),
                _ => {
                    for h in &hits {
                        println!(
                            "base={} steps={:?} squares={} elements={:?}",
                            h.base, h.steps, h.square_count, h.elements
                        );
                    }
                    eprintln!("{} hit(s)", hits.len());
                }
            }
            Ok(true)
        }
        Command::Cuboid { a, b, c } => {
            let r = check_perfect_cuboid(&a, &b, &c)?;
            let show = |d: &Option<Integer>| d.as_ref().map_or("-".to_string(), Integer::to_string);
            match format {
                OutputFormat::Json => println!(
                    "{}",
                    json!({
                        "edges": r.edges.iter().map(Integer::to_string).collect::<Vec<_>>(),
                        "face_diagonals": r.face_diagonals.iter().map(|d| d.as_ref().map(Integer::to_string)).collect::<Vec<_>>(),
                        "space_diagonal": r.space_diagonal.as_ref().map(Integer::to_string),
                        "euler_brick": r.is_euler_brick(),
                        "perfect": r.is_perfect(),
                    })
                ),
                _ => println!(
                    "edges={} {} {} faces={} {} {} space={} euler_brick={} perfect={}",
                    r.edges[0],
                    r.edges[1],
                    r.edges[2],
                    show(&r.face_diagonals[0]),
                    show(&r.face_diagonals[1]),
                    show(&r.face_diagonals[2]),
                    show(&r.space_diagonal),
                    r.is_euler_brick(),
                    r.is_perfect()
                ),
            }
            Ok(true)
        }
        Command::Verify { filter, seed } => {
            let outcomes = run_suite(&VerifyConfig { seed, filter });
            if outcomes.is_empty() {
                bail!("no criterion matches the filter");
            }
            for o in &outcomes {
                println!("{o}");
            }
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            println!("{} passed, {failed} failed", outcomes.len() - failed);
            Ok(failed == 0)
        }
    }
}

fn sumset_q(format: OutputFormat, set: &BTreeSet<Rational>, full: bool) -> anyhow::Result<bool> {
    let r = report_values(set)?;
    let all_squares = set.iter().all(|v| v.as_square_root().is_some());
    match format {
        OutputFormat::Json => {
            let mut v = json!({
                "n": r.source_size,
                "sumset_size": r.sumset_size,
                "lower": r.lower_bound,
                "upper": r.upper_bound,
                "squares": all_squares,
            });
            if full {
                v["sumset"] = r.sumset.iter().map(Rational::to_string).collect();
            }
            println!("{v}");
        }
        _ => {
            println!(
                "n={} |A+A|={} lower={} upper={} squares={}",
                r.source_size, r.sumset_size, r.lower_bound, r.upper_bound, all_squares
            );
            if full {
                print!("{}", render_set(None, &r.sumset));
            }
        }
    }
    Ok(true)
}

fn sumset_mod_p(format: OutputFormat, set: &BTreeSet<Rational>, p: u64, full: bool) -> anyhow::Result<bool> {
    let m = PrimeModulus::new(p)?;
    let mut members = Vec::with_capacity(set.len());
    for v in set {
        if !v.is_integer() {
            bail!("{v} is not an integer");
        }
        let r = v.numer() % Integer::from(p);
        let r = if r < Integer::from(0) { r + Integer::from(p) } else { r };
        members.push(u64::try_from(&r).expect("reduced below p"));
    }
    let a = ResidueSet::from_members(m, members.iter().copied())?;
    if a.len() != set.len() {
        bail!("elements collide modulo {p}");
    }
    let s = a.sumset();
    match format {
        OutputFormat::Json => {
            let mut v = json!({ "n": a.len(), "p": p, "sumset_size": s.len() });
            if full {
                v["sumset"] = s.to_vec().into();
            }
            println!("{v}");
        }
        _ => {
            println!("n={} p={p} |A+A|={}", a.len(), s.len());
            if full {
                print!("{}", render_set(None, &s.to_vec()));
            }
        }
    }
    Ok(true)
}

fn construct(format: OutputFormat, args: ConstructArgs) -> anyhow::Result<bool> {
    let (label, set, size, bound): (String, SquareSet, usize, Option<usize>) = if let Some(n) = args.n {
        let fam = build_ec_family(n)?;
        let size = report_values(&fam.set.to_set())?.sumset_size;
        let bound = sqsum_core::constructions::block_bound(n);
        (format!("{n} block(s) of d = 24 progressions"), fam.set, size, Some(bound))
    } else if let Some(m) = args.size {
        let fam = build_ec_family_rem(m)?;
        let label = format!("{} full block(s) plus {}", fam.full_blocks, fam.remainder);
        (label, fam.set, fam.sumset_size, Some(fam.formula_bound))
    } else {
        let set = magic7_set();
        let size = report_values(&set.to_set())?.sumset_size;
        ("magic square entries".into(), set, size, None)
    };
    let within = bound.is_none_or(|b| size <= b);
    match format {
        OutputFormat::Json => {
            let v = json!({
                "label": label,
                "values": set.values().map(Rational::to_string).collect::<Vec<_>>(),
                "roots": set.iter().map(|(_, r)| r.to_string()).collect::<Vec<_>>(),
                "sumset_size": size,
                "bound": bound,
            });
            println!("{v}");
        }
        _ => {
            let bound_text = bound.map_or(String::new(), |b| format!(" bound={b}"));
            let header = format!("{label}\nn={} |A+A|={size}{bound_text}", set.len());
            print!("{}", render_set(Some(&header), set.values()));
        }
    }
    if !within {
        eprintln!("|A+A| = {size} exceeds the closed-form bound");
    }
    Ok(true)
}

fn search(format: OutputFormat, args: SearchArgs) -> anyhow::Result<bool> {
    let options = SearchOptions {
        symmetry: !args.no_symmetry,
        budget: args.budget,
    };
    let records: Vec<SearchRecord> = match args.p {
        Some(p) => {
            let m = PrimeModulus::new(p)?;
            let r = min_sumset_par(args.n, m, options)?;
            if let Some(path) = &args.witness_file {
                let header = format!("n={} p={p} |A+A|={} exact={}", r.n, r.minimum, r.exact);
                std::fs::write(path, render_set(Some(&header), &r.witness.to_vec()))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            vec![SearchRecord::from(&r)]
        }
        None => {
            let (lo, hi) = (args.pmin.unwrap(), args.pmax.unwrap());
            table_scan_par(args.n, lo, hi, options)?
                .iter()
                .map(SearchRecord::from)
                .collect()
        }
    };
    match format {
        OutputFormat::Text => {
            for r in &records {
                println!("{}", search_text(r));
            }
        }
        OutputFormat::Csv => print!("{}", search_csv(&records)?),
        OutputFormat::Json => println!("{}", search_json(&records)?),
    }
    Ok(records.iter().all(|r| r.exact && r.error.is_none()))
}
