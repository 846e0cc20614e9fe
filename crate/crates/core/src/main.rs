use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cimlab::caps::Caps;
use cimlab::ci::{self, ScanOptions};
use cimlab::constructions::{self, OddSquareKind};
use cimlab::error::{Error, Result};
use cimlab::group::FiniteGroup;
use cimlab::interchange::{self, MapJson};
use cimlab::iso;
use cimlab::notation;
use cimlab::reproduce::{self, ReproduceOptions};

/// Cayley maps, their automorphism groups and the CI property.
///
/// Exit status: 0 for a positive verdict, 1 for a negative one, 2 on error.
/// CIMLAB_CAP_ORDER overrides the group-order cap.
#[derive(Parser)]
#[command(name = "cimlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct Output {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
}

#[derive(Args)]
struct ScanArgs {
    /// Group notation or a JSON table file.
    #[arg(long)]
    group: String,
    /// Defaults to |H| - 1.
    #[arg(long)]
    max_valency: Option<usize>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Check every map instead of one per class under group automorphisms
    /// and mirroring.
    #[arg(long)]
    no_symmetry_reduction: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum CiMethod {
    Babai,
    Definitional,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    OddSquare,
    Cyclic2power,
    Frobenius,
    Q16,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Cyclic,
    Elementary,
}

#[derive(Subcommand)]
enum Command {
    /// Automorphism group of a map.
    AutMap {
        #[arg(long)]
        map: String,
    },
    /// Whether two maps are isomorphic and whether Cayley isomorphic.
    IsoMaps {
        #[arg(long)]
        map1: String,
        #[arg(long)]
        map2: String,
    },
    /// Whether a single map is a CI-map.
    IsCiMap {
        #[arg(long)]
        map: String,
        #[arg(long, value_enum, default_value_t = CiMethod::Babai)]
        method: CiMethod,
    },
    /// Whether every map over a group is a CI-map.
    VerifyCim(ScanArgs),
    /// Whether every connected map over a group is a CI-map.
    VerifyConnectedCim(ScanArgs),
    /// Compares the definitional and Babai verdicts on every map over a group.
    CrossValidate {
        #[arg(long)]
        group: String,
    },
    /// Builds an explicit non-CI map with its certificate.
    Counterexample {
        #[arg(long, value_enum)]
        family: Family,
        /// Odd prime for odd-square.
        #[arg(long, default_value_t = 3)]
        p: usize,
        /// Exponent for cyclic-2power.
        #[arg(long, default_value_t = 4)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Kind::Cyclic)]
        kind: Kind,
        /// Normal subgroup K for frobenius.
        #[arg(long, default_value = "cyclic:7")]
        k_group: String,
        /// Order of the complement for frobenius.
        #[arg(long, default_value_t = 3)]
        m: usize,
        /// Action of the complement on K: mult:u, map:i0;i1;... or aut:i.
        #[arg(long, default_value = "mult:2")]
        action: String,
        /// Element of K whose orbit gives the connection set.
        #[arg(long, default_value_t = 1)]
        seed: usize,
    },
    /// Runs every construction and scan and emits one summary bundle.
    ReproducePaper {
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, default_value_t = 15)]
        max_odd_order: usize,
        #[arg(long)]
        no_symmetry_reduction: bool,
    },
}

#[derive(Serialize)]
struct AutMapReport {
    map: MapJson,
    order: usize,
    stabilizer_order: usize,
    balanced: bool,
    antibalanced: bool,
    connected: bool,
    generators: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct IsoMapsReport {
    first: MapJson,
    second: MapJson,
    isomorphic: bool,
    cayley_isomorphic: bool,
    isomorphism: Option<Vec<usize>>,
    group_isomorphism: Option<Vec<usize>>,
}

fn emit<T: Serialize>(value: &T, out: &Output) -> Result<()> {
    let Format::Json = out.format;
    let text = interchange::to_sorted_json(value)?;
    match &out.out {
        Some(path) => std::fs::write(path, text + "\n")?,
        None => writeln!(std::io::stdout().lock(), "{text}")?,
    }
    Ok(())
}

fn scan_options(args: &ScanArgs, h: &FiniteGroup) -> Result<ScanOptions> {
    if args.workers == 0 {
        return Err(Error::Parse("--workers must be positive".into()));
    }
    Ok(ScanOptions {
        max_valency: args.max_valency.unwrap_or(h.order().saturating_sub(1)),
        workers: args.workers,
        symmetry_reduction: !args.no_symmetry_reduction,
    })
}

fn run(cli: &Cli) -> Result<bool> {
    let caps = Caps::from_env();
    let start = Instant::now();
    let verdict = match &cli.command {
        Command::AutMap { map } => {
            let m = interchange::load_map(map)?;
            let aut = iso::map_automorphism_group(&m, &caps)?;
            let report = AutMapReport {
                map: MapJson::from_map(&m),
                order: aut.order(),
                stabilizer_order: aut.order() / m.order(),
                balanced: m.is_balanced(),
                antibalanced: m.is_antibalanced(),
                connected: m.is_connected(),
                generators: aut.generators().iter().map(|p| p.images().to_vec()).collect(),
            };
            emit(&report, &cli.output)?;
            true
        }
        Command::IsoMaps { map1, map2 } => {
            let (m1, m2) = (interchange::load_map(map1)?, interchange::load_map(map2)?);
            let f = iso::find_map_isomorphism(&m1, &m2)?;
            let g = iso::are_cayley_isomorphic(&m1, &m2, &caps)?;
            let report = IsoMapsReport {
                first: MapJson::from_map(&m1),
                second: MapJson::from_map(&m2),
                isomorphic: f.is_some(),
                cayley_isomorphic: g.is_some(),
                isomorphism: f.map(|f| f.images().to_vec()),
                group_isomorphism: g.map(|g| g.images().to_vec()),
            };
            emit(&report, &cli.output)?;
            report.isomorphic
        }
        Command::IsCiMap { map, method } => {
            let m = interchange::load_map(map)?;
            let report = match method {
                CiMethod::Babai => ci::babai_is_ci_map(&m, &caps)?,
                CiMethod::Definitional => ci::definitional_is_ci_map(&m, &caps)?,
            };
            emit(&report, &cli.output)?;
            report.verdict
        }
        Command::VerifyCim(args) | Command::VerifyConnectedCim(args) => {
            let h = Arc::new(interchange::load_group(&args.group)?);
            let opts = scan_options(args, &h)?;
            let report = if matches!(cli.command, Command::VerifyCim(_)) {
                ci::verify_cim_group(&h, &opts, &caps)?
            } else {
                ci::verify_connected_cim(&h, &opts, &caps)?
            };
            eprintln!(
                "{}: checked {} of {} maps",
                h.name(),
                report.stats.get("maps_checked").copied().unwrap_or(0),
                report.stats.get("maps_total").copied().unwrap_or(0)
            );
            emit(&report, &cli.output)?;
            report.verdict
        }
        Command::CrossValidate { group } => {
            let h = Arc::new(interchange::load_group(group)?);
            let report = ci::cross_validate(&h, &caps)?;
            emit(&report, &cli.output)?;
            report.verdict
        }
        Command::Counterexample {
            family,
            p,
            n,
            kind,
            k_group,
            m,
            action,
            seed,
        } => {
            let w = match family {
                Family::OddSquare => {
                    let kind = match kind {
                        Kind::Cyclic => OddSquareKind::Cyclic,
                        Kind::Elementary => OddSquareKind::Elementary,
                    };
                    constructions::odd_square_map(*p, kind, &caps)?
                }
                Family::Cyclic2power => constructions::cyclic_2power_map(*n, &caps)?,
                Family::Frobenius => {
                    let k = Arc::new(notation::parse_group_with(k_group, &caps)?);
                    let act = notation::parse_action(&k, action, &caps)?;
                    constructions::frobenius_map(*m, &act, *seed, &caps)?
                }
                Family::Q16 => {
                    let w = constructions::quaternion16_witness(&caps)?;
                    emit(&w.to_json(), &cli.output)?;
                    return Ok(true);
                }
            };
            w.validate(&caps)?;
            emit(&w.to_json(), &cli.output)?;
            true
        }
        Command::ReproducePaper {
            workers,
            max_odd_order,
            no_symmetry_reduction,
        } => {
            if *workers == 0 {
                return Err(Error::Parse("--workers must be positive".into()));
            }
            let opts = ReproduceOptions {
                workers: *workers,
                symmetry_reduction: !no_symmetry_reduction,
                max_odd_order: *max_odd_order,
                caps,
            };
            let (bundle, timings) = reproduce::reproduce(&opts)?;
            for (key, secs) in &timings {
                eprintln!("{key}: {secs:.3} s");
            }
            emit(&bundle, &cli.output)?;
            bundle.all_hold()
        }
    };
    eprintln!("elapsed: {:.3} s", start.elapsed().as_secs_f64());
    Ok(verdict)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
