//! Command-line interface over the lipext library.
//!
//! Exit codes: 0 success, 1 malformed or invalid input, 2 point outside
//! the ball, 3 point certified non-extreme, 4 certificate disagrees with
//! the exhaustive oracle, 5 decomposition failed verification.

mod docs;

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use lipext::{
    certify_extremality, cut_oracle_bruteforce, decompose, gen_euclidean_space, gen_extreme,
    gen_member, gen_random_metric, is_member, lipschitz_constant_with_pair, verify_decomposition,
    Certificate64, GenConfig, Norm64, Tolerance64,
};
use serde::Serialize;

use docs::{
    check_version, parse_direction, AtomDoc, CertificateDocument, CutDoc, DecompositionDocument,
    ErrorDocument, InstanceDocument, MembershipDocument, NormDoc, OracleVerdict, ReportEntryDoc,
    SpaceDoc, Status, VerifyDocument, FORMAT_VERSION,
};

const EXIT_OK: i32 = 0;
const EXIT_INPUT: i32 = 1;
const EXIT_NOT_MEMBER: i32 = 2;
const EXIT_NOT_EXTREME: i32 = 3;
const EXIT_ORACLE_DISAGREES: i32 = 4;
const EXIT_VERIFY_FAILED: i32 = 5;

#[derive(Parser)]
#[command(
    name = "lipext",
    version,
    about = "Extreme points of vector-valued Lipschitz unit balls",
    after_help = "Exit codes: 0 ok, 1 bad input, 2 not a member, \
                  3 not extreme, 4 oracle disagreement, 5 verification failed."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check an instance document and test ball membership.
    Validate {
        /// Instance file; `-` or absent reads stdin.
        file: Option<PathBuf>,
        /// Overrides the feasibility and tightness tolerances.
        #[arg(long)]
        tol: Option<f64>,
        /// Ball radius to test against; overrides the document's `L`.
        #[arg(long = "L", value_name = "L")]
        l: Option<f64>,
    },
    /// Certify whether the instance point is an extreme point.
    CheckExtreme {
        file: Option<PathBuf>,
        #[arg(long)]
        tol: Option<f64>,
        /// Cross-check against exhaustive cut enumeration (n <= 20).
        #[arg(long)]
        oracle: bool,
    },
    /// Decompose the instance point into extreme points.
    Decompose {
        file: Option<PathBuf>,
        #[arg(long)]
        tol: Option<f64>,
        /// Basis index (e.g. `0`) or comma-separated vector (e.g. `1,2`),
        /// scaled to unit norm. Defaults to the first basis vector.
        #[arg(long, allow_hyphen_values = true)]
        direction: Option<String>,
        /// Re-check the result from scratch and embed the report.
        #[arg(long)]
        verify: bool,
    },
    /// Generate a reproducible random instance document.
    Gen {
        /// Nodes besides the basepoint.
        #[arg(long)]
        n: usize,
        /// Target space dimension.
        #[arg(long)]
        dim: usize,
        /// Norm exponent.
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        /// Cube dimension the euclidean site sampler uses.
        #[arg(long, default_value_t = 3)]
        embed_dim: usize,
        /// Distance scale.
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Metric space family.
        #[arg(long, value_enum, default_value_t = SpaceKind::Euclidean)]
        kind: SpaceKind,
        /// Push the sampled member to a certified extreme point.
        #[arg(long)]
        extreme: bool,
    },
    /// Re-check a stored decomposition against its instance.
    Verify {
        /// Instance file; `-` reads stdin.
        instance: PathBuf,
        /// Decomposition file; `-` reads stdin.
        decomposition: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpaceKind {
    /// Distances of random sites in a cube.
    Euclidean,
    /// Shortest-path closure of a random symmetric matrix.
    Random,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<lipext::Error> for Failure {
    fn from(e: lipext::Error) -> Self {
        let code = match e {
            lipext::Error::NotAMember { .. } => EXIT_NOT_MEMBER,
            _ => EXIT_INPUT,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version land here too; only real usage errors fail
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let format = cli.format;
    let code = match run(cli.command, format) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            if format == Format::Json {
                let doc = ErrorDocument {
                    format_version: FORMAT_VERSION,
                    error: failure.message,
                };
                println!("{}", serde_json::to_string(&doc).expect("error serializes"));
            }
            failure.code
        }
    };
    std::process::exit(code);
}

fn run(command: Command, format: Format) -> Result<i32, Failure> {
    match command {
        Command::Validate { file, tol, l } => validate(file, tol, l, format),
        Command::CheckExtreme { file, tol, oracle } => check_extreme(file, tol, oracle, format),
        Command::Decompose {
            file,
            tol,
            direction,
            verify,
        } => run_decompose(file, tol, direction.as_deref(), verify, format),
        Command::Gen {
            n,
            dim,
            p,
            embed_dim,
            scale,
            seed,
            kind,
            extreme,
        } => generate(n, dim, p, embed_dim, scale, seed, kind, extreme),
        Command::Verify {
            instance,
            decomposition,
            tol,
        } => verify(&instance, &decomposition, tol, format),
    }
}

fn read_input(file: Option<&PathBuf>) -> Result<String, Failure> {
    match file {
        Some(path) if path.as_os_str() != "-" => std::fs::read_to_string(path)
            .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display()))),
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Failure::input(format!("cannot read stdin: {e}")))?;
            Ok(buf)
        }
    }
}

fn parse_instance(file: Option<&PathBuf>) -> Result<InstanceDocument, Failure> {
    let text = read_input(file)?;
    let doc: InstanceDocument =
        serde_json::from_str(&text).map_err(|e| Failure::input(format!("bad instance: {e}")))?;
    check_version(doc.format_version).map_err(Failure::input)?;
    Ok(doc)
}

fn tolerances(tol: Option<f64>) -> Result<Tolerance64, Failure> {
    match tol {
        None => Ok(Tolerance64::default()),
        Some(t) => {
            if !t.is_finite() {
                return Err(Failure::input("tolerance must be finite"));
            }
            let defaults = Tolerance64::default();
            Tolerance64::new(t, t, defaults.tol_weight).map_err(Failure::from)
        }
    }
}

/// Commands that reason about the unit ball reject an explicit radius
/// other than 1.
fn require_unit_radius(doc: &InstanceDocument) -> Result<(), Failure> {
    match doc.l {
        None | Some(1.0) => Ok(()),
        Some(l) => Err(Failure::input(format!(
            "this command works on the unit ball; got L = {l}"
        ))),
    }
}

fn emit<T: Serialize>(doc: &T, format: Format, text: String) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string(doc).expect("document serializes")
        ),
        Format::Text => println!("{text}"),
    }
}

fn validate(
    file: Option<PathBuf>,
    tol: Option<f64>,
    l_flag: Option<f64>,
    format: Format,
) -> Result<i32, Failure> {
    let doc = parse_instance(file.as_ref())?;
    let tol = tolerances(tol)?;
    let radius = match l_flag.or(doc.l) {
        None => 1.0,
        Some(l) if l.is_finite() && l > 0.0 => l,
        Some(l) => {
            return Err(Failure::input(format!(
                "L must be positive and finite, got {l}"
            )))
        }
    };
    let (space, norm, point) = doc.to_parts().map_err(Failure::input)?;
    let (constant, worst_pair) = lipschitz_constant_with_pair(&point, &space, &norm)?;
    let member = is_member(&point, &space, &norm, radius, &tol)?;
    let out = MembershipDocument {
        format_version: FORMAT_VERSION,
        member,
        lipschitz_constant: constant,
        worst_pair,
    };
    let text = format!(
        "member: {member}\nlipschitz constant: {constant}\nworst pair: ({}, {})",
        worst_pair.0, worst_pair.1
    );
    emit(&out, format, text);
    Ok(if member { EXIT_OK } else { EXIT_NOT_MEMBER })
}

fn check_extreme(
    file: Option<PathBuf>,
    tol: Option<f64>,
    oracle: bool,
    format: Format,
) -> Result<i32, Failure> {
    let doc = parse_instance(file.as_ref())?;
    require_unit_radius(&doc)?;
    let tol = tolerances(tol)?;
    let (space, norm, point) = doc.to_parts().map_err(Failure::input)?;
    let cert = certify_extremality(&point, &space, &norm, &tol)?;
    let verdict = if oracle {
        let cut = cut_oracle_bruteforce(&point, &space, &norm, &tol)?;
        Some(if cert.is_extreme() == cut.is_none() {
            OracleVerdict::Agree
        } else {
            OracleVerdict::Disagree
        })
    } else {
        None
    };
    let out = match &cert {
        Certificate64::Extreme { parent } => CertificateDocument {
            format_version: FORMAT_VERSION,
            status: Status::Extreme,
            parent: Some(parent.clone()),
            cut: None,
            oracle: verdict,
        },
        Certificate64::NotExtreme { cut } => CertificateDocument {
            format_version: FORMAT_VERSION,
            status: Status::NotExtreme,
            parent: None,
            cut: Some(CutDoc {
                nodes: cut.nodes().to_vec(),
                epsilon: cut.epsilon(),
            }),
            oracle: verdict,
        },
    };
    let oracle_text = match verdict {
        None => String::from("skipped"),
        Some(OracleVerdict::Agree) => String::from("agree"),
        Some(OracleVerdict::Disagree) => String::from("disagree"),
    };
    let text = match &cert {
        Certificate64::Extreme { parent } => {
            format!("status: extreme\nparent: {parent:?}\noracle: {oracle_text}")
        }
        Certificate64::NotExtreme { cut } => format!(
            "status: not_extreme\ncut nodes: {:?}\nepsilon: {}\noracle: {oracle_text}",
            cut.nodes(),
            cut.epsilon()
        ),
    };
    emit(&out, format, text);
    if verdict == Some(OracleVerdict::Disagree) {
        return Ok(EXIT_ORACLE_DISAGREES);
    }
    Ok(if cert.is_extreme() {
        EXIT_OK
    } else {
        EXIT_NOT_EXTREME
    })
}

fn run_decompose(
    file: Option<PathBuf>,
    tol: Option<f64>,
    direction: Option<&str>,
    verify: bool,
    format: Format,
) -> Result<i32, Failure> {
    let doc = parse_instance(file.as_ref())?;
    require_unit_radius(&doc)?;
    let tol = tolerances(tol)?;
    let (space, norm, point) = doc.to_parts().map_err(Failure::input)?;
    let v = parse_direction(direction, &norm).map_err(Failure::input)?;
    let dec = decompose(&point, &space, &norm, &v, &tol)?;
    let (verified, report) = if verify {
        let report = verify_decomposition(&dec.claim(), &space, &norm, &tol)?;
        (report.ok(), Some(ReportEntryDoc::from_report(&report)))
    } else {
        (false, None)
    };
    let out = DecompositionDocument {
        format_version: FORMAT_VERSION,
        direction: v.coords().to_vec(),
        k: dec.k(),
        atoms: dec
            .atoms()
            .iter()
            .map(|a| AtomDoc {
                weight: a.weight,
                t: a.t.coords().to_vec(),
                point: a.point.values().to_vec(),
            })
            .collect(),
        reconstruction_error: dec.reconstruction_error(),
        verified,
        report,
    };
    let mut text = format!(
        "k: {}\nreconstruction error: {}\nverified: {verified}",
        dec.k(),
        dec.reconstruction_error()
    );
    for (i, atom) in dec.atoms().iter().enumerate() {
        text.push_str(&format!("\natom {i}: weight {}", atom.weight));
    }
    emit(&out, format, text);
    Ok(if verify && !verified {
        EXIT_VERIFY_FAILED
    } else {
        EXIT_OK
    })
}

#[allow(clippy::too_many_arguments)]
fn generate(
    n: usize,
    dim: usize,
    p: f64,
    embed_dim: usize,
    scale: f64,
    seed: u64,
    kind: SpaceKind,
    extreme: bool,
) -> Result<i32, Failure> {
    let cfg = GenConfig {
        n,
        dim,
        p,
        embed_dim,
        scale,
        seed,
    };
    cfg.validate()?;
    let space = match kind {
        SpaceKind::Euclidean => gen_euclidean_space(&cfg)?,
        SpaceKind::Random => gen_random_metric(&cfg)?,
    };
    let norm = Norm64::new(dim, p)?;
    // decorrelate the point stream from the site stream
    let point_seed = seed ^ 0x9e37_79b9_7f4a_7c15;
    let point = if extreme {
        let tol = Tolerance64::default();
        gen_extreme(&space, &norm, point_seed, &tol)?.point
    } else {
        gen_member(&space, &norm, point_seed)?
    };
    let out = InstanceDocument {
        format_version: FORMAT_VERSION,
        space: SpaceDoc::from_space(&space),
        norm: NormDoc::from_norm(&norm),
        point: point.values().to_vec(),
        l: None,
    };
    // instances are meant for piping, so this is always JSON
    println!(
        "{}",
        serde_json::to_string(&out).expect("document serializes")
    );
    Ok(EXIT_OK)
}

fn verify(
    instance: &PathBuf,
    decomposition: &PathBuf,
    tol: Option<f64>,
    format: Format,
) -> Result<i32, Failure> {
    if instance.as_os_str() == "-" && decomposition.as_os_str() == "-" {
        return Err(Failure::input("only one input may come from stdin"));
    }
    let doc = parse_instance(Some(instance))?;
    require_unit_radius(&doc)?;
    let text = read_input(Some(decomposition))?;
    let dec: DecompositionDocument = serde_json::from_str(&text)
        .map_err(|e| Failure::input(format!("bad decomposition: {e}")))?;
    check_version(dec.format_version).map_err(Failure::input)?;
    let tol = tolerances(tol)?;
    let (space, norm, point) = doc.to_parts().map_err(Failure::input)?;
    let claim = dec.to_claim(point).map_err(Failure::input)?;
    let report = verify_decomposition(&claim, &space, &norm, &tol)?;
    let ok = report.ok();
    let out = VerifyDocument {
        format_version: FORMAT_VERSION,
        ok,
        report: ReportEntryDoc::from_report(&report),
    };
    let mut lines: Vec<String> = report
        .entries
        .iter()
        .map(|e| {
            let mark = if e.ok { "ok" } else { "FAIL" };
            if e.detail.is_empty() {
                format!("{mark:4} {}", e.name)
            } else {
                format!("{mark:4} {} ({})", e.name, e.detail)
            }
        })
        .collect();
    lines.push(format!("ok: {ok}"));
    emit(&out, format, lines.join("\n"));
    Ok(if ok { EXIT_OK } else { EXIT_VERIFY_FAILED })
}
