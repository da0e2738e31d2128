//! Command-line front end: every computation of the library with
//! machine-readable output.
//!
//! Exit codes: 0 on success, 1 on a domain error (reported as a single
//! `error: ...` line on stderr), 2 on a usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use primroot::arith::{format_rational, parse_rational, Rational};
use primroot::census::{heuristic_sum, run_census, SieveTables};
use primroot::density::{
    artin_constant_partial, delta_closed, format_significant, is_wud, wud_set, BParity,
    Progression, ARTIN_CONSTANT, ARTIN_CONSTANT_DECIMAL,
};
use primroot::series::delta_truncated;

#[derive(Parser)]
#[command(
    name = "primroot",
    version,
    about = "Densities of primes with a prescribed primitive root in arithmetic progressions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

fn parse_g(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Exact density of primes p = a (mod f) with g a primitive root
    Density {
        /// Base g, an integer or "num/den"
        #[arg(long, value_parser = parse_g, allow_hyphen_values = true)]
        g: Rational,
        #[arg(long, default_value_t = 1)]
        f: u64,
        #[arg(long, default_value_t = 1)]
        a: u64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Densities of every reduced residue class modulo f
    DensityTable {
        #[arg(long, value_parser = parse_g, allow_hyphen_values = true)]
        g: Rational,
        #[arg(long)]
        f: u64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Truncated series evaluation compared against the closed form
    Oracle {
        #[arg(long, value_parser = parse_g, allow_hyphen_values = true)]
        g: Rational,
        #[arg(long, default_value_t = 1)]
        f: u64,
        #[arg(long, default_value_t = 1)]
        a: u64,
        /// Series cutoff N
        #[arg(long = "oracle-n", default_value_t = 1_000_000)]
        oracle_n: u64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Weak-uniform-distribution classification of moduli for g
    Wud {
        #[arg(long, value_parser = parse_g, allow_hyphen_values = true)]
        g: Rational,
        /// Check moduli f up to this bound
        #[arg(long, default_value_t = 48)]
        fmax: u64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Sieve primes to x and count primitive-root cases per residue class
    Census {
        #[arg(long, value_parser = parse_g, allow_hyphen_values = true)]
        g: Rational,
        #[arg(long, default_value_t = 1)]
        f: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=1_000_000_000))]
        x: u64,
        /// Worker threads for the census scan (default: all cores)
        #[arg(long)]
        threads: Option<usize>,
        /// Versioned binary cache for the sieve table
        #[arg(long = "sieve-cache")]
        sieve_cache: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Heuristic sum 2 sum phi(p-1)/(p-1) against the census count
    Heuristic {
        #[arg(long, value_parser = parse_g, allow_hyphen_values = true)]
        g: Rational,
        #[arg(long, default_value_t = 1)]
        f: u64,
        #[arg(long, default_value_t = 1)]
        a: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=1_000_000_000))]
        x: u64,
        #[arg(long = "sieve-cache")]
        sieve_cache: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Partial Euler product for the Artin constant
    Constant {
        /// Take primes up to this cutoff
        #[arg(long, default_value_t = 1_000_000)]
        cutoff: u64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

fn main() -> ExitCode {
    // die quietly when the consumer closes the pipe (e.g. `primroot ... | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn sig12(x: f64) -> String {
    format_significant(x, 12)
}

fn case_name(parity: BParity) -> &'static str {
    match parity {
        BParity::BOdd => "b_odd",
        BParity::BEven => "b_even",
    }
}

#[derive(Serialize)]
struct TableRowJson {
    a: u64,
    coeff: String,
    value: String,
    vanishes: bool,
}

#[derive(Serialize)]
struct TableJson {
    g: String,
    f: u64,
    rows: Vec<TableRowJson>,
}

#[derive(Serialize)]
struct OracleJson {
    g: String,
    f: u64,
    a: u64,
    cutoff: u64,
    value: String,
    tail_bound: String,
    closed_coeff: String,
    closed_value: String,
    difference: String,
}

#[derive(Serialize)]
struct WudJson {
    g: String,
    set: String,
    fmax: u64,
    wud: Vec<u64>,
    consistent: bool,
}

#[derive(Serialize)]
struct HeuristicJson {
    g: String,
    f: u64,
    a: u64,
    x: u64,
    heuristic: String,
    census_count: u64,
    relative_difference: String,
}

#[derive(Serialize)]
struct ConstantJson {
    cutoff: u64,
    value: String,
    error_bound: String,
    reference: &'static str,
}

fn run(command: Command) -> primroot::Result<()> {
    match command {
        Command::Density { g, f, a, format } => {
            let result = delta_closed(Progression::new(a, f)?, &g)?;
            match format {
                Format::Json => println!("{}", result.to_json_string()),
                Format::Csv => {
                    println!("coeff,value,b,case,gamma,correction_sign,vanishes");
                    println!(
                        "{},{},{},{},{},{},{}",
                        format_rational(&result.coeff),
                        sig12(result.value),
                        result.branch.b,
                        case_name(result.branch.parity),
                        result.branch.gamma.map_or(String::new(), |v| v.to_string()),
                        result.branch.correction_sign,
                        result.vanishes
                    );
                }
                Format::Table => {
                    println!("g          = {}", format_rational(&g));
                    println!("class      = {a} (mod {f})");
                    println!("coeff      = {}", format_rational(&result.coeff));
                    println!("delta      = {}  (coeff x A)", sig12(result.value));
                    println!("vanishes   = {}", result.vanishes);
                    println!("b          = {}", result.branch.b);
                    println!("case       = {}", case_name(result.branch.parity));
                    match result.branch.gamma {
                        Some(gam) => println!("gamma      = {gam}"),
                        None => println!("gamma      = -"),
                    }
                    println!("corr sign  = {}", result.branch.correction_sign);
                }
            }
            Ok(())
        }
        Command::DensityTable { g, f, format } => {
            let mut rows = Vec::new();
            for prog in Progression::all_mod(f) {
                let r = delta_closed(prog, &g)?;
                rows.push(TableRowJson {
                    a: prog.a(),
                    coeff: format_rational(&r.coeff),
                    value: sig12(r.value),
                    vanishes: r.vanishes,
                });
            }
            match format {
                Format::Json => {
                    let out = TableJson {
                        g: format_rational(&g),
                        f,
                        rows,
                    };
                    println!("{}", serde_json::to_string(&out).expect("serializes"));
                }
                Format::Csv => {
                    println!("a,coeff,value,vanishes");
                    for r in rows {
                        println!("{},{},{},{}", r.a, r.coeff, r.value, r.vanishes);
                    }
                }
                Format::Table => {
                    println!("g = {}, f = {f}", format_rational(&g));
                    println!("{:>8}  {:>14}  {:>16}  vanishes", "a", "coeff", "delta");
                    for r in rows {
                        println!("{:>8}  {:>14}  {:>16}  {}", r.a, r.coeff, r.value, r.vanishes);
                    }
                }
            }
            Ok(())
        }
        Command::Oracle {
            g,
            f,
            a,
            oracle_n,
            format,
        } => {
            let prog = Progression::new(a, f)?;
            let closed = delta_closed(prog, &g)?;
            let truncated = delta_truncated(prog, &g, oracle_n)?;
            let diff = (truncated.value - closed.value).abs();
            match format {
                Format::Json => {
                    let out = OracleJson {
                        g: format_rational(&g),
                        f,
                        a,
                        cutoff: oracle_n,
                        value: sig12(truncated.value),
                        tail_bound: sig12(truncated.tail_bound),
                        closed_coeff: format_rational(&closed.coeff),
                        closed_value: sig12(closed.value),
                        difference: sig12(diff),
                    };
                    println!("{}", serde_json::to_string(&out).expect("serializes"));
                }
                Format::Csv => {
                    println!("value,tail_bound,closed_coeff,closed_value,difference");
                    println!(
                        "{},{},{},{},{}",
                        sig12(truncated.value),
                        sig12(truncated.tail_bound),
                        format_rational(&closed.coeff),
                        sig12(closed.value),
                        sig12(diff)
                    );
                }
                Format::Table => {
                    println!("series (N = {oracle_n}) = {}", sig12(truncated.value));
                    println!("tail bound        = {}", sig12(truncated.tail_bound));
                    println!(
                        "closed form       = {}  ({} x A)",
                        sig12(closed.value),
                        format_rational(&closed.coeff)
                    );
                    println!("difference        = {}", sig12(diff));
                    println!("within bound      = {}", diff <= truncated.tail_bound);
                }
            }
            Ok(())
        }
        Command::Wud { g, fmax, format } => {
            let set = wud_set(&g)?;
            let mut members = Vec::new();
            let mut consistent = true;
            for f in 1..=fmax {
                let wud = is_wud(f, &g)?;
                if wud {
                    members.push(f);
                }
                consistent &= wud == set.contains(f);
            }
            match format {
                Format::Json => {
                    let out = WudJson {
                        g: format_rational(&g),
                        set: set.to_string(),
                        fmax,
                        wud: members,
                        consistent,
                    };
                    println!("{}", serde_json::to_string(&out).expect("serializes"));
                }
                Format::Csv => {
                    println!("f,wud");
                    for f in 1..=fmax {
                        println!("{f},{}", members.binary_search(&f).is_ok());
                    }
                }
                Format::Table => {
                    println!("g = {}", format_rational(&g));
                    println!("classification         = {set}");
                    println!(
                        "wud moduli (f <= {fmax})  = {}",
                        members
                            .iter()
                            .map(|f| f.to_string())
                            .collect::<Vec<_>>()
                            .join(", ")
                    );
                    println!("matches classification = {consistent}");
                }
            }
            Ok(())
        }
        Command::Census {
            g,
            f,
            x,
            threads,
            sieve_cache,
            format,
        } => {
            let tables = SieveTables::load_or_build(sieve_cache.as_deref(), x)?;
            let report = match threads {
                Some(t) => rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build()
                    .expect("thread pool")
                    .install(|| run_census(&g, f, x, &tables)),
                None => run_census(&g, f, x, &tables),
            }?;
            match format {
                Format::Json => println!("{}", report.to_json_string()),
                Format::Csv => print!("{}", report.to_csv_string()),
                Format::Table => {
                    println!(
                        "g = {}, f = {}, x = {}, pi(x) = {}",
                        format_rational(&report.g),
                        report.f,
                        report.x,
                        report.pi_x
                    );
                    println!(
                        "excluded primes: {}",
                        report
                            .excluded_primes
                            .iter()
                            .map(|p| p.to_string())
                            .collect::<Vec<_>>()
                            .join(", ")
                    );
                    println!(
                        "{:>8}  {:>10}  {:>12}  {:>12}  {:>14}",
                        "a", "count", "count/pi(x)", "predicted", "coeff"
                    );
                    for row in &report.rows {
                        println!(
                            "{:>8}  {:>10}  {:>12}  {:>12}  {:>14}",
                            row.a,
                            row.count,
                            format_significant(row.count as f64 / report.pi_x as f64, 6),
                            format_significant(row.predicted, 6),
                            format_rational(&row.predicted_coeff)
                        );
                    }
                }
            }
            Ok(())
        }
        Command::Heuristic {
            g,
            f,
            a,
            x,
            sieve_cache,
            format,
        } => {
            let tables = SieveTables::load_or_build(sieve_cache.as_deref(), x)?;
            let sum = heuristic_sum(&g, f, a, x, &tables)?;
            let report = run_census(&g, f, x, &tables)?;
            let count = report
                .rows
                .iter()
                .find(|r| r.a % f == a % f)
                .map_or(0, |r| r.count);
            let rel = if count > 0 {
                (sum - count as f64).abs() / count as f64
            } else {
                f64::NAN
            };
            match format {
                Format::Json => {
                    let out = HeuristicJson {
                        g: format_rational(&g),
                        f,
                        a,
                        x,
                        heuristic: sig12(sum),
                        census_count: count,
                        relative_difference: sig12(rel),
                    };
                    println!("{}", serde_json::to_string(&out).expect("serializes"));
                }
                Format::Csv => {
                    println!("heuristic,census_count,relative_difference");
                    println!("{},{count},{}", sig12(sum), sig12(rel));
                }
                Format::Table => {
                    println!("heuristic sum       = {}", sig12(sum));
                    println!("census count        = {count}");
                    println!("relative difference = {}", sig12(rel));
                }
            }
            Ok(())
        }
        Command::Constant { cutoff, format } => {
            let (value, bound) = artin_constant_partial(cutoff);
            match format {
                Format::Json => {
                    let out = ConstantJson {
                        cutoff,
                        value: sig12(value),
                        error_bound: format!("{bound:e}"),
                        reference: ARTIN_CONSTANT_DECIMAL,
                    };
                    println!("{}", serde_json::to_string(&out).expect("serializes"));
                }
                Format::Csv => {
                    println!("cutoff,value,error_bound,reference");
                    println!("{cutoff},{},{bound:e},{ARTIN_CONSTANT_DECIMAL}", sig12(value));
                }
                Format::Table => {
                    println!("partial product (p <= {cutoff}) = {}", sig12(value));
                    println!("error bound      = {bound:e}");
                    println!("reference        = {ARTIN_CONSTANT_DECIMAL}");
                    println!("difference       = {:e}", (value - ARTIN_CONSTANT).abs());
                }
            }
            Ok(())
        }
    }
}
