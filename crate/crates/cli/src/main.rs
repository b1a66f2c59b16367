//! Command-line front end for the `lefschetz` library.
//!
//! Exit codes: 0 on success, 1 when a check fails or no certificate is
//! found, 2 on usage or parse errors. Output for a fixed (input, options)
//! pair is byte-identical across runs; every randomized command echoes the
//! seed it resolved.

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use lefschetz::complex::{SimplicialComplex, SubdividedComplex};
use lefschetz::eulerian::{
    self, a_table_recurrence, flatten_and_check_a, predict_peak, sd_h_transform,
    verify_inequalities, verify_symmetry, DEFAULT_ENUMERATION_BUDGET,
};
use lefschetz::face_algebra::{
    almost_strong_lefschetz_check, s_lefschetz_check, verify_lefschetz_certificate, AlgebraError,
    LefschetzCertificate, LefschetzOutcome, DEFAULT_PRIME, DEFAULT_SEED, DEFAULT_TRIALS,
};
use lefschetz::field::PrimeField;
use lefschetz::io::{format_facets, format_subdivided_sidecar, parse_facets};
use lefschetz::shelling::{find_shelling, ShellingSearch, DEFAULT_SEARCH_BUDGET};
use lefschetz::vectors::IntVector;

#[derive(Parser)]
#[command(
    name = "lefschetz",
    version,
    about = "f-, h- and g-vectors, barycentric subdivisions, shellings, refined \
             descent tables, and exact mod-p Lefschetz certificates for \
             simplicial complexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Human-readable lines.
    Text,
    /// Stable machine-readable JSON (entries as decimal strings).
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the f-vector of a facet-list file (entry 0 counts the empty face)
    Fvec {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the h-vector of a facet-list file
    Hvec {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the g-vector of a facet-list file
    Gvec {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the barycentric subdivision as a facet list (JSON adds levels and origins)
    Sd {
        file: PathBuf,
        /// Also write the vertex-level sidecar to this path.
        #[arg(long)]
        sidecar: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Search for a shelling order; prints the order, restriction faces, and h-vector
    Shell {
        file: PathBuf,
        /// Node budget for the backtracking search.
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Search for an almost strong Lefschetz certificate over F_p
    Lefschetz {
        file: PathBuf,
        /// Barycentrically subdivide the input before the check.
        #[arg(long)]
        sd: bool,
        /// Override the checked exponent s (default: the dimension).
        #[arg(long)]
        exponent: Option<i64>,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: u32,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the refined descent table A(d, i, j) (rows i = 0..d-1, columns j = 1..d)
    Eulerian {
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Re-check table claims or a stored certificate
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
    /// One document per complex: vectors, subdivision, M-sequence and peak
    /// verdicts, and a certificate attempt. Requires a shellable input or
    /// --assume-cm.
    Report {
        file: PathBuf,
        /// Skip the shelling search and proceed as if the input were
        /// Cohen-Macaulay.
        #[arg(long)]
        assume_cm: bool,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: u32,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Node budget for the shelling search.
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Check table symmetry, every inequality family, and the flattened
    /// read-out of A(d, i, j)
    Eulerian {
        #[arg(long)]
        d: usize,
        /// Permutation-enumeration budget for the symmetry check.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
        budget: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Re-verify a stored Lefschetz certificate against its complex
    Certificate {
        /// Facet-list file the certificate was issued for.
        complex: PathBuf,
        /// Certificate JSON file.
        certificate: PathBuf,
        /// Barycentrically subdivide the complex first, as the issuing run did.
        #[arg(long)]
        sd: bool,
    },
}

/// Errors that abort a command before any verdict is reached. All of them
/// are usage or input problems and exit with code 2.
#[derive(Debug)]
enum CliError {
    Io(PathBuf, std::io::Error),
    Parse(lefschetz::io::ParseError),
    Algebra(AlgebraError),
    Shelling(lefschetz::shelling::ShellingError),
    Eulerian(eulerian::EulerianError),
    Certificate(serde_json::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Parse(e) => write!(f, "{e}"),
            CliError::Algebra(e) => write!(f, "{e}"),
            CliError::Shelling(e) => write!(f, "{e}"),
            CliError::Eulerian(e) => write!(f, "{e}"),
            CliError::Certificate(e) => write!(f, "certificate JSON: {e}"),
        }
    }
}

impl From<lefschetz::io::ParseError> for CliError {
    fn from(e: lefschetz::io::ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Algebra(e)
    }
}

impl From<lefschetz::shelling::ShellingError> for CliError {
    fn from(e: lefschetz::shelling::ShellingError) -> Self {
        CliError::Shelling(e)
    }
}

impl From<eulerian::EulerianError> for CliError {
    fn from(e: eulerian::EulerianError) -> Self {
        CliError::Eulerian(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read_input(path: &PathBuf) -> Result<SimplicialComplex, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.clone(), e))?;
    Ok(parse_facets(&text)?)
}

fn vector_json(v: &IntVector) -> serde_json::Value {
    json!(v.to_decimal_strings())
}

fn print_vector(command: &str, v: &IntVector, format: Format) {
    match format {
        Format::Text => println!("{v}"),
        Format::Json => print_json(&json!({ "command": command, "entries": vector_json(v) })),
    }
}

fn print_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("JSON output")
    );
}

const PASS: ExitCode = ExitCode::SUCCESS;
const FAIL: ExitCode = ExitCode::FAILURE;

fn verdict(ok: bool) -> ExitCode {
    if ok {
        PASS
    } else {
        FAIL
    }
}

fn dispatch(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Fvec { file, format } => {
            print_vector("fvec", &read_input(&file)?.f_vector(), format);
            Ok(PASS)
        }
        Command::Hvec { file, format } => {
            print_vector("hvec", &read_input(&file)?.h_vector(), format);
            Ok(PASS)
        }
        Command::Gvec { file, format } => {
            print_vector("gvec", &read_input(&file)?.g_vector(), format);
            Ok(PASS)
        }
        Command::Sd {
            file,
            sidecar,
            format,
        } => run_sd(&file, sidecar.as_ref(), format),
        Command::Shell {
            file,
            budget,
            format,
        } => run_shell(&file, budget, format),
        Command::Lefschetz {
            file,
            sd,
            exponent,
            prime,
            trials,
            seed,
            format,
        } => run_lefschetz(&file, sd, exponent, prime, trials, seed, format),
        Command::Eulerian { d, format } => run_eulerian(d, format),
        Command::Verify { what } => match what {
            VerifyCommand::Eulerian { d, budget, format } => run_verify_eulerian(d, budget, format),
            VerifyCommand::Certificate {
                complex,
                certificate,
                sd,
            } => run_verify_certificate(&complex, &certificate, sd),
        },
        Command::Report {
            file,
            assume_cm,
            prime,
            trials,
            seed,
            budget,
            format,
        } => run_report(&file, assume_cm, prime, trials, seed, budget, format),
    }
}

fn origins_json(sd: &SubdividedComplex) -> serde_json::Value {
    let mut map = serde_json::Map::new();
    for (v, origin) in sd.origins() {
        map.insert(v.to_string(), json!(origin));
    }
    serde_json::Value::Object(map)
}

fn levels_json(sd: &SubdividedComplex) -> serde_json::Value {
    let mut map = serde_json::Map::new();
    for (v, level) in sd.levels() {
        map.insert(v.to_string(), json!(level));
    }
    serde_json::Value::Object(map)
}

fn run_sd(file: &PathBuf, sidecar: Option<&PathBuf>, format: Format) -> Result<ExitCode, CliError> {
    let complex = read_input(file)?;
    let sd = complex.barycentric_subdivision();
    if let Some(path) = sidecar {
        std::fs::write(path, format_subdivided_sidecar(&sd))
            .map_err(|e| CliError::Io(path.clone(), e))?;
    }
    match format {
        Format::Text => print!("{}", format_facets(sd.complex())),
        Format::Json => print_json(&json!({
            "command": "sd",
            "facets": sd.complex().facets(),
            "levels": levels_json(&sd),
            "origins": origins_json(&sd),
            "f": vector_json(&sd.complex().f_vector()),
            "h": vector_json(&sd.complex().h_vector()),
        })),
    }
    Ok(PASS)
}

fn run_shell(file: &PathBuf, budget: u64, format: Format) -> Result<ExitCode, CliError> {
    let complex = read_input(file)?;
    match find_shelling(&complex, budget)? {
        ShellingSearch::Found(cert) => {
            match format {
                Format::Text => {
                    print!("{}", cert.to_text());
                    println!("h = {}", cert.h_vector());
                }
                Format::Json => print_json(&json!({
                    "command": "shell",
                    "found": true,
                    "order": cert.order(),
                    "restrictions": cert.restrictions(),
                    "h": vector_json(&cert.h_vector()),
                })),
            }
            Ok(PASS)
        }
        ShellingSearch::NotShellable => {
            match format {
                Format::Text => println!("not shellable: the search exhausted every order"),
                Format::Json => print_json(&json!({
                    "command": "shell",
                    "found": false,
                    "reason": "not shellable",
                })),
            }
            Ok(FAIL)
        }
        ShellingSearch::BudgetExhausted { nodes } => {
            match format {
                Format::Text => {
                    println!("search budget exhausted after {nodes} nodes; no verdict")
                }
                Format::Json => print_json(&json!({
                    "command": "shell",
                    "found": false,
                    "reason": "budget exhausted",
                    "nodes": nodes,
                })),
            }
            Ok(FAIL)
        }
    }
}

fn witness_lines(cert: &LefschetzCertificate) -> Vec<String> {
    let mut lines: Vec<String> = cert
        .theta
        .iter()
        .enumerate()
        .map(|(i, form)| format!("theta[{i}] = {form}"))
        .collect();
    lines.push(format!("omega = {}", cert.omega));
    lines.extend(cert.witnesses.iter().map(|w| {
        format!(
            "degree {}: omega^{} maps dim {} into dim {} with rank {}",
            w.degree, w.power, w.source_dim, w.target_dim, w.rank
        )
    }));
    lines
}

fn run_lefschetz(
    file: &PathBuf,
    sd: bool,
    exponent: Option<i64>,
    prime: u64,
    trials: u32,
    seed: u64,
    format: Format,
) -> Result<ExitCode, CliError> {
    let input = read_input(file)?;
    let complex = if sd {
        input.barycentric_subdivision().complex().clone()
    } else {
        input
    };
    let field = PrimeField::new(prime).map_err(AlgebraError::from)?;
    let outcome = match exponent {
        Some(s) => s_lefschetz_check(&complex, s, trials, seed, &field)?,
        None => almost_strong_lefschetz_check(&complex, trials, seed, &field)?,
    };
    match outcome {
        LefschetzOutcome::Certified(cert) => {
            match format {
                Format::Text => {
                    println!("p = {}", cert.p);
                    println!("seed = {}", cert.seed);
                    println!("s = {}", cert.s);
                    println!("trial = {}", cert.trial);
                    for line in witness_lines(&cert) {
                        println!("{line}");
                    }
                    println!("certificate found");
                }
                Format::Json => println!("{}", cert.to_json()),
            }
            Ok(PASS)
        }
        LefschetzOutcome::Inconclusive { trials } => {
            match format {
                Format::Text => {
                    println!("p = {prime}");
                    println!("seed = {seed}");
                    println!("no certificate within {trials} trials");
                }
                Format::Json => print_json(&json!({
                    "command": "lefschetz",
                    "p": prime,
                    "seed": seed,
                    "certificate": serde_json::Value::Null,
                    "trials": trials,
                })),
            }
            Ok(FAIL)
        }
    }
}

fn run_eulerian(d: usize, format: Format) -> Result<ExitCode, CliError> {
    let table = a_table_recurrence(d)?;
    match format {
        Format::Text => print!("{}", table.to_csv()),
        Format::Json => print_json(&json!({ "command": "eulerian", "table": table.to_json() })),
    }
    Ok(PASS)
}

fn ordering_name(o: std::cmp::Ordering) -> &'static str {
    match o {
        std::cmp::Ordering::Less => "less",
        std::cmp::Ordering::Equal => "equal",
        std::cmp::Ordering::Greater => "greater",
    }
}

fn pass_word(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn run_verify_eulerian(d: usize, budget: usize, format: Format) -> Result<ExitCode, CliError> {
    let symmetry = verify_symmetry(d, budget)?;
    let inequalities = verify_inequalities(d.saturating_sub(1).max(1))?;
    let flatten = flatten_and_check_a(d)?;
    let table = a_table_recurrence(d)?;
    let pass = symmetry.pass() && inequalities.pass() && flatten.pass();

    // The four documented middle entries of A(6, *, *).
    let quartet: Vec<(usize, usize)> = if d == 6 {
        vec![(2, 3), (3, 3), (2, 4), (3, 4)]
    } else {
        Vec::new()
    };

    match format {
        Format::Text => {
            println!("d = {d}");
            for &(i, j) in &quartet {
                println!("A({d},{i},{j}) = {}", table.a(i, j));
            }
            println!(
                "symmetry A(d,i,j) = A(d,d-1-i,d+1-j): {}",
                pass_word(symmetry.pass())
            );
            for family in &inequalities.families {
                println!("{}: {}", family.name, pass_word(family.pass()));
                for violation in &family.violations {
                    println!("  violation: {violation}");
                }
            }
            for &(column, ordering) in &inequalities.middle_pairs {
                println!(
                    "middle pair column {column} (informational): {}",
                    ordering_name(ordering)
                );
            }
            println!(
                "flattened table: unimodal {}, symmetric {}, middle peak {}",
                pass_word(flatten.unimodal),
                pass_word(flatten.symmetric),
                pass_word(flatten.middle_peak)
            );
            println!("overall: {}", pass_word(pass));
        }
        Format::Json => {
            let values: serde_json::Value = {
                let mut map = serde_json::Map::new();
                for &(i, j) in &quartet {
                    map.insert(format!("A({d},{i},{j})"), json!(table.a(i, j).to_string()));
                }
                serde_json::Value::Object(map)
            };
            print_json(&json!({
                "command": "verify-eulerian",
                "d": d,
                "values": values,
                "symmetry": symmetry.pass(),
                "families": inequalities
                    .families
                    .iter()
                    .map(|f| json!({ "name": f.name, "pass": f.pass(), "violations": f.violations }))
                    .collect::<Vec<_>>(),
                "middle_pairs": inequalities
                    .middle_pairs
                    .iter()
                    .map(|&(c, o)| json!([c, ordering_name(o)]))
                    .collect::<Vec<_>>(),
                "flatten": {
                    "sequence": vector_json(&flatten.sequence),
                    "unimodal": flatten.unimodal,
                    "symmetric": flatten.symmetric,
                    "middle_peak": flatten.middle_peak,
                },
                "pass": pass,
            }));
        }
    }
    Ok(verdict(pass))
}

fn run_verify_certificate(
    complex_path: &PathBuf,
    certificate_path: &PathBuf,
    sd: bool,
) -> Result<ExitCode, CliError> {
    let input = read_input(complex_path)?;
    let complex = if sd {
        input.barycentric_subdivision().complex().clone()
    } else {
        input
    };
    let text = std::fs::read_to_string(certificate_path)
        .map_err(|e| CliError::Io(certificate_path.clone(), e))?;
    let cert = LefschetzCertificate::from_json(&text).map_err(CliError::Certificate)?;
    match verify_lefschetz_certificate(&complex, &cert) {
        Ok(()) => {
            println!(
                "certificate verifies: s = {}, p = {}, {} rank witnesses",
                cert.s,
                cert.p,
                cert.witnesses.len()
            );
            Ok(PASS)
        }
        Err(e) => {
            println!("certificate rejected: {e}");
            Ok(FAIL)
        }
    }
}

fn run_report(
    file: &PathBuf,
    assume_cm: bool,
    prime: u64,
    trials: u32,
    seed: u64,
    budget: u64,
    format: Format,
) -> Result<ExitCode, CliError> {
    let complex = read_input(file)?;
    let d = complex.d();

    // The M-sequence and peak claims reported below hypothesize a
    // Cohen-Macaulay complex; a verified shelling establishes that, the
    // flag asserts it.
    let shelling = if assume_cm {
        None
    } else {
        match find_shelling(&complex, budget)? {
            ShellingSearch::Found(cert) => Some(cert),
            ShellingSearch::NotShellable => {
                let message = "input is not shellable; the claims in this report \
                     hypothesize a Cohen-Macaulay complex. Rerun with --assume-cm \
                     to assert that hypothesis and proceed.";
                return reject_report(format, "not shellable", message);
            }
            ShellingSearch::BudgetExhausted { nodes } => {
                let message = format!(
                    "shelling search exhausted its budget after {nodes} nodes; \
                     shellability is unresolved and the claims in this report \
                     hypothesize a Cohen-Macaulay complex. Rerun with a larger \
                     --budget or with --assume-cm."
                );
                return reject_report(format, "budget exhausted", &message);
            }
        }
    };

    let h = complex.h_vector();
    let g = complex.g_vector();
    let sd = complex.barycentric_subdivision();
    let h_sd = sd.complex().h_vector();
    let g_sd = sd.complex().g_vector();
    let transform = sd_h_transform(&h, d)?;
    let transform_matches = transform == h_sd;

    let g_is_m = g.is_m_sequence();
    let g_sd_is_m = g_sd.is_m_sequence();

    // Reflected dominance h_{d-1-i} >= h_i of the subdivision for
    // i <= (d-2)/2, the inequality the interior structure forces.
    let dominance = if d >= 2 {
        (0..=(d - 2) / 2).all(|i| h_sd.get(d - 1 - i) >= h_sd.get(i))
    } else {
        true
    };

    let predicted = predict_peak(&h, d)?;
    let (actual, unimodal) = h_sd.peak_positions();
    let peak_matches = unimodal && predicted.iter().any(|p| actual.contains(p));

    let field = PrimeField::new(prime).map_err(AlgebraError::from)?;
    let outcome = almost_strong_lefschetz_check(sd.complex(), trials, seed, &field)?;
    let certified = outcome.certificate().is_some();

    let pass = transform_matches && g_is_m && g_sd_is_m && dominance && peak_matches && certified;

    match format {
        Format::Text => {
            println!(
                "input: {} facets, dimension {}, {}",
                complex.facets().len(),
                complex.dimension(),
                if complex.is_pure() {
                    "pure"
                } else {
                    "not pure"
                }
            );
            match &shelling {
                Some(cert) => println!("shelling: found ({} steps)", cert.order().len()),
                None => println!("shelling: skipped, Cohen-Macaulay assumed"),
            }
            println!("h = {h}");
            println!("g = {g}");
            println!("g is an M-sequence: {}", pass_word(g_is_m));
            println!("subdivision: {} facets", sd.complex().facets().len());
            println!("h(sd) = {h_sd}");
            println!("g(sd) = {g_sd}");
            println!(
                "h(sd) matches the descent transform of h: {}",
                pass_word(transform_matches)
            );
            println!("g(sd) is an M-sequence: {}", pass_word(g_sd_is_m));
            println!(
                "reflected dominance h_(d-1-i) >= h_i on h(sd): {}",
                pass_word(dominance)
            );
            println!(
                "predicted peak positions: {}",
                predicted
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            println!(
                "actual peak positions: {} (unimodal: {})",
                actual
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(", "),
                pass_word(unimodal)
            );
            println!("peak location matches: {}", pass_word(peak_matches));
            println!("p = {prime}");
            println!("seed = {seed}");
            match outcome.certificate() {
                Some(cert) => {
                    println!("certificate: found (trial {})", cert.trial);
                    for line in witness_lines(cert) {
                        println!("{line}");
                    }
                }
                None => println!("certificate: not found within {trials} trials"),
            }
            println!("overall: {}", pass_word(pass));
        }
        Format::Json => print_json(&json!({
            "command": "report",
            "input": {
                "facets": complex.facets().len(),
                "dimension": complex.dimension(),
                "pure": complex.is_pure(),
            },
            "shelling": match &shelling {
                Some(cert) => json!({ "found": true, "order": cert.order() }),
                None => json!({ "found": serde_json::Value::Null, "assumed_cm": true }),
            },
            "h": vector_json(&h),
            "g": vector_json(&g),
            "g_is_m_sequence": g_is_m,
            "h_sd": vector_json(&h_sd),
            "g_sd": vector_json(&g_sd),
            "transform_matches": transform_matches,
            "g_sd_is_m_sequence": g_sd_is_m,
            "reflected_dominance": dominance,
            "predicted_peaks": predicted,
            "actual_peaks": actual,
            "peak_matches": peak_matches,
            "p": prime,
            "seed": seed,
            "trials": trials,
            "certificate": match outcome.certificate() {
                Some(cert) => serde_json::to_value(cert).expect("certificate serializes"),
                None => serde_json::Value::Null,
            },
            "pass": pass,
        })),
    }
    Ok(verdict(pass))
}

fn reject_report(format: Format, reason: &str, message: &str) -> Result<ExitCode, CliError> {
    match format {
        Format::Text => println!("{message}"),
        Format::Json => print_json(&json!({
            "command": "report",
            "pass": false,
            "reason": reason,
            "message": message,
        })),
    }
    Ok(FAIL)
}
