//! `qutrit-pingpong`: entropy tables, information curves, attack checks, protocol simulation and
//! protocol comparison.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage or validation failure, 3 numerical failure.
//! Every failure prints one line `error[<kind>]: <message>` to stderr.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qutrit_pingpong::algebra::BasisLabel;
use qutrit_pingpong::attack::{verify_table2, TABLE2_TOL};
use qutrit_pingpong::compare::{comparison_curve_data, protocol_table, render_table};
use qutrit_pingpong::info::{curve_grid, info_curve, source_entropy, FrequencyTable, InfoUnit, DEFAULT_CURVE_POINTS};
use qutrit_pingpong::sim::{detection_survey, rounds_for_confidence, run_with_transcript, transcript_csv, ProtocolConfig};
use qutrit_pingpong::Error;

#[derive(Parser)]
#[command(name = "qutrit-pingpong", version, about = "Qutrit ping-pong protocol and its individual-attack analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Source entropy of a bigram frequency table.
    Entropy {
        /// JSON file `{"p": [[...],[...],[...]]}`; uniform when omitted.
        #[arg(long)]
        freq: Option<PathBuf>,
        /// Print only this unit.
        #[arg(long)]
        unit: Option<InfoUnit>,
    },
    /// Eve's information against d_z for the symmetric attack, as CSV.
    Curve {
        #[arg(long)]
        freq: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CURVE_POINTS)]
        points: usize,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute the published attack-parameter table.
    AttackVerify {
        /// Instead, survey exact per-basis detection of this many random BRANCH attacks.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0, requires = "sample")]
        seed: u64,
        /// Representation basis of the sampled attacks.
        #[arg(long, default_value = "z", requires = "sample")]
        basis: BasisLabel,
    },
    /// Run the full-state protocol simulator.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Override the seed in the config file.
        #[arg(long)]
        seed: Option<u64>,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the per-cycle transcript CSV.
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Control rounds needed to detect an attack of per-round probability D with confidence TARGET.
    Rounds { d: f64, target: f64 },
    /// Capacities and detection bounds of the protocol family.
    Compare {
        /// Emit JSON instead of an aligned table.
        #[arg(long)]
        json: bool,
        /// Also write the qutrit curve in bits to this CSV file.
        #[arg(long)]
        curve: Option<PathBuf>,
        #[arg(long, requires = "curve")]
        freq: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CURVE_POINTS, requires = "curve")]
        points: usize,
    },
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            return fail(Failure::Usage(first.trim_start_matches("error: ").to_string()));
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => fail(f),
    }
}

fn fail(f: Failure) -> ExitCode {
    let (kind, code, message) = match f {
        Failure::Usage(m) => ("usage", 2, m),
        Failure::Lib(Error::Io(e)) => ("io", 1, e.to_string()),
        Failure::Lib(e) if e.is_numerical() => ("numerical", 3, e.to_string()),
        Failure::Lib(e) => ("validation", 2, e.to_string()),
    };
    eprintln!("error[{kind}]: {}", message.replace('\n', " "));
    ExitCode::from(code)
}

fn dispatch(command: Command) -> CliResult {
    match command {
        Command::Entropy { freq, unit } => cmd_entropy(freq.as_deref(), unit),
        Command::Curve { freq, points, out } => cmd_curve(freq.as_deref(), points, out.as_deref()),
        Command::AttackVerify { sample: None, .. } => cmd_attack_verify(),
        Command::AttackVerify { sample: Some(n), seed, basis } => cmd_attack_survey(n, seed, basis),
        Command::Simulate { config, seed, out, transcript } => {
            cmd_simulate(&config, seed, out.as_deref(), transcript.as_deref())
        }
        Command::Rounds { d, target } => {
            println!("{}", rounds_for_confidence(d, target)?);
            Ok(())
        }
        Command::Compare { json, curve, freq, points } => cmd_compare(json, curve.as_deref(), freq.as_deref(), points),
    }
}

fn load_freq(path: Option<&Path>) -> Result<FrequencyTable, Error> {
    match path {
        Some(p) => FrequencyTable::from_json(&fs::read_to_string(p)?),
        None => Ok(FrequencyTable::uniform()),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => Ok(fs::write(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_entropy(freq: Option<&Path>, unit: Option<InfoUnit>) -> CliResult {
    let table = load_freq(freq)?;
    let units = match unit {
        Some(u) => vec![u],
        None => vec![InfoUnit::Trit, InfoUnit::Bit],
    };
    for u in units {
        println!("H = {:.4} {u}", source_entropy(&table, u).value);
    }
    Ok(())
}

fn cmd_curve(freq: Option<&Path>, points: usize, out: Option<&Path>) -> CliResult {
    let table = load_freq(freq)?;
    let curve = info_curve(&table, &curve_grid(points)?)?;
    let mut csv = String::from("d_z,I0_trits,I0_bits\n");
    for p in &curve {
        let _ = writeln!(csv, "{:.16e},{:.16e},{:.16e}", p.d_z, p.i0_trits, p.i0_bits());
    }
    emit(out, &csv)?;
    let last = curve.last().expect("at least two points");
    let h = source_entropy(&table, InfoUnit::Trit).value;
    eprintln!(
        "endpoint check: I0(2/3) = {:.4} trit, H = {h:.4} trit, |difference| = {:.1e}",
        last.i0_trits,
        (last.i0_trits - h).abs()
    );
    Ok(())
}

fn cmd_attack_verify() -> CliResult {
    println!("{:>3} {:>5} {:>9} {:>9} {:>9} {:>9} {:>9}  result", "row", "kind", "d_x", "pub d_x", "d_z", "pub d_z", "max dev");
    let checks = verify_table2();
    for c in &checks {
        println!(
            "{:>3} {:>5} {:>9.6} {:>9.6} {:>9.6} {:>9.6} {:>9.2e}  {}",
            c.index + 1,
            if c.symmetric { "sym" } else { "asym" },
            c.d_x,
            c.published_d_x,
            c.d_z,
            c.published_d_z,
            c.max_deviation(),
            if c.passes() { "PASS" } else { "FAIL" }
        );
    }
    let worst = checks.iter().map(|c| c.max_deviation()).fold(0.0, f64::max);
    let failed = checks.iter().filter(|c| !c.passes()).count();
    println!("max deviation {worst:.2e} (tolerance {TABLE2_TOL:.0e}); {failed} of {} rows outside tolerance", checks.len());
    Ok(())
}

fn cmd_attack_survey(samples: usize, seed: u64, basis: BasisLabel) -> CliResult {
    let rows = detection_survey(samples, seed, basis)?;
    println!("{:>4} {:>9} {:>9} {:>9} {:>9} {:>9}", "draw", "analytic", "d_z", "d_x", "d_v", "d_t");
    for (n, r) in rows.iter().enumerate() {
        let [z, x, v, t] = r.exact_d;
        println!("{n:>4} {:>9.4} {z:>9.4} {x:>9.4} {v:>9.4} {t:>9.4}", r.analytic_d);
    }
    Ok(())
}

fn cmd_simulate(config: &Path, seed: Option<u64>, out: Option<&Path>, transcript: Option<&Path>) -> CliResult {
    let mut cfg = ProtocolConfig::from_json(&fs::read_to_string(config).map_err(Error::Io)?)?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    let report = run_with_transcript(&cfg)?;
    if let (Some(path), Some(t)) = (transcript, report.transcript.as_deref()) {
        fs::write(path, transcript_csv(t)).map_err(Error::Io)?;
    }
    let mut json = report.to_json();
    json.push('\n');
    emit(out, &json)?;
    for s in &report.per_basis {
        if let (Some(emp), Some(ana), Some(band)) = (s.empirical_d, s.analytic_d, s.band_3sigma) {
            eprintln!(
                "basis {}: empirical d = {emp:.4}, analytic d = {ana:.4} ± {band:.4} (3σ), {}",
                s.basis,
                if (emp - ana).abs() <= band { "within band" } else { "OUTSIDE band" }
            );
        }
    }
    Ok(())
}

fn cmd_compare(json: bool, curve: Option<&Path>, freq: Option<&Path>, points: usize) -> CliResult {
    let rows = protocol_table();
    if json {
        println!("{}", serde_json::to_string_pretty(&rows).map_err(Error::Json)?);
    } else {
        print!("{}", render_table(&rows));
    }
    if let Some(path) = curve {
        let table = load_freq(freq)?;
        fs::write(path, comparison_curve_data(&table, points)?).map_err(Error::Io)?;
    }
    Ok(())
}
