//! Command-line front end: build the chain complex or group presentation
//! for a spec, run pointwise jump-locus queries, verify the expected locus
//! identities over character batteries, and certify torsion structure.
//! All payloads are JSON with stable key order and stable record sort, so
//! identical invocations produce byte-identical output.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use charvar::chain::EquivariantComplex;
use charvar::construction::{build_space, parse_spec_json, SpaceSpec};
use charvar::error::Error;
use charvar::groups::{build_group, Presentation};
use charvar::laurent::LaurentPoly;
use charvar::loci::{
    auto_characters, jump_dim, ps_check_all, verify_group, verify_space_complex, JumpQuery,
    JumpTarget,
};
use charvar::obstruction::obstruction_verdict;
use charvar::scalar::Character;

const EXIT_VERIFY_FAIL: u8 = 1;
const EXIT_BAD_INPUT: u8 = 2;
const EXIT_INVARIANT: u8 = 3;
const EXIT_FLOAT_REJECTED: u8 = 4;

#[derive(Parser)]
#[command(
    name = "charvar",
    about = "Exact pointwise computation of cohomology jump loci on the character torus",
    version
)]
struct Cli {
    /// Exact arithmetic (the default; listed for symmetry with --float)
    #[arg(long, global = true, conflicts_with = "float")]
    exact: bool,

    /// Evaluate on the float-complex path (exploratory queries only;
    /// verification commands refuse it)
    #[arg(long, global = true)]
    float: bool,

    /// Worker threads for character batteries (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Write the JSON payload to this path instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the chain complex (k >= 2) or group presentation (k = 1) of a spec
    Build {
        /// Spec JSON: a path, inline JSON, or "-" for stdin
        spec: String,
    },
    /// Membership and dimension of one character in one jump locus
    Query {
        spec: String,
        /// Character JSON: a path or inline JSON
        #[arg(long)]
        character: String,
        /// Cohomological degree i
        #[arg(long)]
        degree: usize,
        /// Jump threshold r
        #[arg(long, default_value_t = 1)]
        rank: usize,
    },
    /// Verify the expected jump-locus shape of the spec's space over a battery
    Verify {
        spec: String,
        /// Use the built-in character sampler
        #[arg(long)]
        auto: bool,
        /// JSON array of characters (path or inline); merged with --auto
        #[arg(long)]
        chars: Option<String>,
        /// Verify this prebuilt complex JSON instead of building from the spec
        #[arg(long)]
        complex: Option<String>,
    },
    /// Verify the degree-one jump locus of the spec's group over a battery
    GroupVerify {
        spec: String,
        #[arg(long)]
        auto: bool,
        #[arg(long)]
        chars: Option<String>,
    },
    /// Check jump loci against Alexander supports degree by degree
    PsCheck {
        spec: String,
        #[arg(long)]
        auto: bool,
        #[arg(long)]
        chars: Option<String>,
    },
    /// Decide whether the locus is a finite union of torsion translates
    Obstruct {
        spec: String,
        /// Optional JSON array of characters claimed to exhaust the locus
        #[arg(long)]
        points: Option<String>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Failure {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match &e {
            Error::Json(_) => EXIT_BAD_INPUT,
            _ => EXIT_INVARIANT,
        };
        Failure::new(code, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // best effort; a pool may already exist in test harnesses
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match run(&cli) {
        Ok((payload, code)) => {
            let text = format!("{payload}\n");
            if let Some(path) = &cli.output {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!(
                        "{}",
                        serde_json::json!({"error": format!("cannot write {}: {e}", path.display()), "code": EXIT_BAD_INPUT})
                    );
                    return ExitCode::from(EXIT_BAD_INPUT);
                }
            } else {
                print!("{text}");
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!(
                "{}",
                serde_json::json!({"error": f.message, "code": f.code})
            );
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<(serde_json::Value, u8), Failure> {
    match &cli.command {
        Command::Build { spec } => cmd_build(spec),
        Command::Query {
            spec,
            character,
            degree,
            rank,
        } => cmd_query(spec, character, *degree, *rank, cli.float),
        Command::Verify {
            spec,
            auto,
            chars,
            complex,
        } => cmd_verify(spec, *auto, chars.as_deref(), complex.as_deref(), cli.float),
        Command::GroupVerify { spec, auto, chars } => {
            cmd_group_verify(spec, *auto, chars.as_deref(), cli.float)
        }
        Command::PsCheck { spec, auto, chars } => {
            cmd_ps_check(spec, *auto, chars.as_deref(), cli.float)
        }
        Command::Obstruct { spec, points } => cmd_obstruct(spec, points.as_deref()),
    }
}

/// Resolves an input argument: inline JSON if it looks like JSON, stdin for
/// "-", otherwise a file path.
fn read_input(arg: &str) -> Result<String, Failure> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::new(EXIT_BAD_INPUT, format!("cannot read stdin: {e}")))?;
        return Ok(buf);
    }
    std::fs::read_to_string(arg)
        .map_err(|e| Failure::new(EXIT_BAD_INPUT, format!("cannot read {arg}: {e}")))
}

fn parse_json(arg: &str) -> Result<serde_json::Value, Failure> {
    let text = read_input(arg)?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::new(EXIT_BAD_INPUT, format!("malformed JSON: {e}")))
}

/// Parsed spec fields; bad field values are input errors (exit 2), not
/// invariant violations.
struct ParsedSpec {
    n: usize,
    k: Option<usize>,
    polys: Vec<LaurentPoly>,
}

fn load_spec(arg: &str) -> Result<ParsedSpec, Failure> {
    let v = parse_json(arg)?;
    let (n, k, polys) =
        parse_spec_json(&v).map_err(|e| Failure::new(EXIT_BAD_INPUT, e.to_string()))?;
    Ok(ParsedSpec { n, k, polys })
}

fn space_spec(parsed: &ParsedSpec) -> Result<SpaceSpec, Failure> {
    let k = parsed
        .k
        .ok_or_else(|| Failure::new(EXIT_BAD_INPUT, "spec needs a positive integer k"))?;
    SpaceSpec::new(parsed.n, k, parsed.polys.clone())
        .map_err(|e| Failure::new(EXIT_BAD_INPUT, e.to_string()))
}

fn load_characters(
    auto: bool,
    chars: Option<&str>,
    n: usize,
    polys: &[LaurentPoly],
) -> Result<Vec<Character>, Failure> {
    let mut battery: Vec<Character> = Vec::new();
    if auto {
        battery.extend(auto_characters(n, polys).map_err(Failure::from)?);
    }
    if let Some(arg) = chars {
        let v = parse_json(arg)?;
        let arr = v.as_array().ok_or_else(|| {
            Failure::new(EXIT_BAD_INPUT, "character battery must be a JSON array")
        })?;
        for cj in arr {
            let chi = Character::from_json(cj)
                .map_err(|e| Failure::new(EXIT_BAD_INPUT, e.to_string()))?;
            if chi.n() != n {
                return Err(Failure::new(
                    EXIT_BAD_INPUT,
                    format!("character has {} coordinates, expected {n}", chi.n()),
                ));
            }
            battery.push(chi);
        }
    }
    if battery.is_empty() {
        return Err(Failure::new(
            EXIT_BAD_INPUT,
            "no characters: pass --auto and/or --chars FILE",
        ));
    }
    battery.sort_by_key(Character::sort_key);
    battery.dedup_by_key(|c| c.sort_key());
    Ok(battery)
}

fn reject_float_mode(float: bool) -> Result<(), Failure> {
    if float {
        return Err(Failure::new(
            EXIT_FLOAT_REJECTED,
            "verification commands are exact-only; drop --float",
        ));
    }
    Ok(())
}

fn cmd_build(spec: &str) -> Result<(serde_json::Value, u8), Failure> {
    let parsed = load_spec(spec)?;
    match parsed.k {
        Some(1) => {
            let pres: Presentation =
                build_group(parsed.n, &parsed.polys).map_err(Failure::from)?;
            Ok((pres.to_json(), 0))
        }
        _ => {
            let spec = space_spec(&parsed)?;
            let complex = build_space(&spec).map_err(Failure::from)?;
            complex.validate().map_err(Failure::from)?;
            Ok((complex.to_json(), 0))
        }
    }
}

fn cmd_query(
    spec: &str,
    character: &str,
    degree: usize,
    rank: usize,
    float: bool,
) -> Result<(serde_json::Value, u8), Failure> {
    let parsed = load_spec(spec)?;
    let target = match parsed.k {
        Some(1) => JumpTarget::Group(build_group(parsed.n, &parsed.polys).map_err(Failure::from)?),
        _ => JumpTarget::Space(space_spec(&parsed)?),
    };
    let chi_json = parse_json(character)?;
    let mut chi =
        Character::from_json(&chi_json).map_err(|e| Failure::new(EXIT_BAD_INPUT, e.to_string()))?;
    if chi.n() != parsed.n {
        return Err(Failure::new(
            EXIT_BAD_INPUT,
            format!("character has {} coordinates, expected {}", chi.n(), parsed.n),
        ));
    }
    if float {
        chi = chi.to_float();
    }
    let query = JumpQuery::new(target, chi, degree, rank)
        .map_err(|e| Failure::new(EXIT_BAD_INPUT, e.to_string()))?;
    let dim = jump_dim(&query.target, &query.character, query.degree).map_err(Failure::from)?;
    Ok((
        serde_json::json!({
            "member": dim >= query.rank,
            "dim": dim,
            "degree": query.degree,
            "rank": query.rank,
            "mode": if float { "float" } else { "exact" },
        }),
        0,
    ))
}

fn cmd_verify(
    spec: &str,
    auto: bool,
    chars: Option<&str>,
    complex: Option<&str>,
    float: bool,
) -> Result<(serde_json::Value, u8), Failure> {
    reject_float_mode(float)?;
    let parsed = load_spec(spec)?;
    let spec = space_spec(&parsed)?;
    let battery = load_characters(auto, chars, spec.n(), spec.polys())?;
    let complex = match complex {
        Some(arg) => {
            let v = parse_json(arg)?;
            let c = EquivariantComplex::from_json(&v)
                .map_err(|e| Failure::new(EXIT_BAD_INPUT, e.to_string()))?;
            c.validate().map_err(Failure::from)?; // d.d != 0 is exit 3
            c
        }
        None => {
            let c = build_space(&spec).map_err(Failure::from)?;
            c.validate().map_err(Failure::from)?;
            c
        }
    };
    let report = verify_space_complex(&complex, &spec, &battery).map_err(Failure::from)?;
    let code = if report.pass() { 0 } else { EXIT_VERIFY_FAIL };
    Ok((report.to_json().map_err(Failure::from)?, code))
}

fn cmd_group_verify(
    spec: &str,
    auto: bool,
    chars: Option<&str>,
    float: bool,
) -> Result<(serde_json::Value, u8), Failure> {
    reject_float_mode(float)?;
    let parsed = load_spec(spec)?;
    let battery = load_characters(auto, chars, parsed.n, &parsed.polys)?;
    let report = verify_group(parsed.n, &parsed.polys, &battery).map_err(Failure::from)?;
    let code = if report.pass() { 0 } else { EXIT_VERIFY_FAIL };
    Ok((report.to_json().map_err(Failure::from)?, code))
}

fn cmd_ps_check(
    spec: &str,
    auto: bool,
    chars: Option<&str>,
    float: bool,
) -> Result<(serde_json::Value, u8), Failure> {
    reject_float_mode(float)?;
    let parsed = load_spec(spec)?;
    let spec = space_spec(&parsed)?;
    let battery = load_characters(auto, chars, spec.n(), spec.polys())?;
    let mut records = Vec::with_capacity(battery.len());
    let mut all_pass = true;
    for chi in &battery {
        let pass = ps_check_all(&spec, chi).map_err(Failure::from)?;
        all_pass &= pass;
        records.push(serde_json::json!({
            "character": chi.to_json().map_err(Failure::from)?,
            "pass": pass,
        }));
    }
    Ok((
        serde_json::json!({
            "verdict": if all_pass { "pass" } else { "fail" },
            "records": records,
        }),
        if all_pass { 0 } else { EXIT_VERIFY_FAIL },
    ))
}

fn cmd_obstruct(spec: &str, points: Option<&str>) -> Result<(serde_json::Value, u8), Failure> {
    let parsed = load_spec(spec)?;
    let claimed: Option<Vec<Character>> = match points {
        None => None,
        Some(arg) => {
            let v = parse_json(arg)?;
            let arr = v.as_array().ok_or_else(|| {
                Failure::new(EXIT_BAD_INPUT, "claimed points must be a JSON array")
            })?;
            Some(
                arr.iter()
                    .map(|cj| {
                        Character::from_json(cj)
                            .map_err(|e| Failure::new(EXIT_BAD_INPUT, e.to_string()))
                    })
                    .collect::<Result<Vec<_>, Failure>>()?,
            )
        }
    };
    let report = obstruction_verdict(parsed.n, &parsed.polys, claimed.as_deref())
        .map_err(Failure::from)?;
    Ok((report.to_json(), 0))
}
