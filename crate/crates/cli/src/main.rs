//! Command-line driver: covering, seifertization, uncovering, splitting,
//! invariants, localization, randomized roundtrips and the selftest.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use seiblan::blanchfield::BlanchfieldPresentation;
use seiblan::forms::{rank_certificate, RankCertificate};
use seiblan::invariants::{invariant_report_capped, lookup_knot};
use seiblan::json as wire;
use seiblan::seifert::split_near_projection;
use seiblan::selftest::{roundtrip_campaign, run_selftest};
use seiblan::{BaseRing, Error, Eta};

#[derive(Parser)]
#[command(name = "seiblan", version, about = "Exact Seifert/Blanchfield form calculator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct OutArgs {
    /// Output file, defaults to stdout
    #[arg(long = "out", value_name = "PATH")]
    output: Option<PathBuf>,
    /// Output format
    #[arg(long, default_value = "json", value_parser = ["json", "text"])]
    format: String,
}

#[derive(Args, Clone)]
struct IoArgs {
    /// Input file (JSON), defaults to stdin where a file is required
    #[arg(long = "in", value_name = "PATH")]
    input: Option<PathBuf>,
    /// Output file, defaults to stdout
    #[arg(long = "out", value_name = "PATH")]
    output: Option<PathBuf>,
    /// Coefficient ring: z, q, or `fp:<prime>`
    #[arg(long, default_value = "z")]
    ring: String,
    /// Symmetry sign for inputs that need one
    #[arg(long, default_value = "+1", allow_hyphen_values = true)]
    eta: String,
    /// Output format
    #[arg(long, default_value = "json", value_parser = ["json", "text"])]
    format: String,
    /// Degree cap for Laurent computations
    #[arg(long, default_value_t = 512)]
    degree_cap: i64,
}

#[derive(Subcommand)]
enum Command {
    /// Invariant report (Alexander polynomial, signature, determinant)
    Invariants {
        /// Built-in knot name (unknot, trefoil, figure_eight, ...)
        #[arg(long)]
        knot: Option<String>,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Covering Blanchfield form of a Seifert form
    Cover {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Companion Seifert module of a presented Blanchfield module
    Seifertize {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Nonsingular Seifert form covering a given Blanchfield form
    Uncover {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Unipotent/nilpotent splitting of a near-projection
    Decompose {
        #[command(flatten)]
        io: IoArgs,
    },
    /// The induced form (1-z) theta over A[z,1/z,1/(1-z)]
    Localize {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Randomized uncover(cover(F)) campaign
    Roundtrip {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        max_rank: usize,
        /// Restrict the campaign to one symmetry sign
        #[arg(long, allow_hyphen_values = true)]
        eta: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Full invariant suites
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
}

/// Validation problems exit 2, mathematical failures exit 1.
enum Failure {
    Validation(String),
    Math(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BadScalar(_)
            | Error::ShapeMismatch(_)
            | Error::RingMismatch(_, _)
            | Error::NotSquare(_, _)
            | Error::NotPrime(_) => Failure::Validation(e.to_string()),
            other => Failure::Math(other),
        }
    }
}

type CmdResult = std::result::Result<(), Failure>;

fn parse_ring(s: &str) -> std::result::Result<BaseRing, Failure> {
    match s {
        "z" | "Z" => Ok(BaseRing::Integers),
        "q" | "Q" => Ok(BaseRing::Rationals),
        other => {
            if let Some(p) = other.strip_prefix("fp:") {
                let p: u64 = p
                    .parse()
                    .map_err(|_| Failure::Validation(format!("bad prime {p:?}")))?;
                BaseRing::prime_field(p).map_err(Failure::from)
            } else {
                Err(Failure::Validation(format!(
                    "unknown ring {other:?}; expected z, q or fp:<prime>"
                )))
            }
        }
    }
}

fn parse_eta(s: &str) -> std::result::Result<Eta, Failure> {
    match s {
        "+1" | "1" => Ok(Eta::Plus),
        "-1" => Ok(Eta::Minus),
        other => Err(Failure::Validation(format!("eta must be +1 or -1, got {other:?}"))),
    }
}

/// Inject the --eta flag as a default when the input object omits "eta".
fn with_eta_default(mut v: Value, eta_flag: &str) -> std::result::Result<Value, Failure> {
    if let Some(obj) = v.as_object_mut() {
        if !obj.contains_key("eta") {
            let eta = parse_eta(eta_flag)?;
            obj.insert("eta".into(), Value::from(eta.sign()));
        }
    }
    Ok(v)
}

fn read_input(io: &IoArgs) -> std::result::Result<Value, Failure> {
    let text = match &io.input {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| Failure::Validation(format!("cannot read {}: {e}", path.display())))?,
        None => {
            use std::io::Read;
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Failure::Validation(format!("cannot read stdin: {e}")))?;
            buf
        }
    };
    serde_json::from_str(&text).map_err(|e| Failure::Validation(format!("invalid JSON: {e}")))
}

fn emit_to(output: &Option<PathBuf>, format: &str, value: &Value, text: String) -> CmdResult {
    let rendered = if format == "json" {
        wire::to_string_pretty(value)
    } else {
        text
    };
    match output {
        Some(path) => fs::write(path, rendered + "\n")
            .map_err(|e| Failure::Validation(format!("cannot write {}: {e}", path.display()))),
        None => {
            // exit quietly on a closed pipe instead of panicking
            use std::io::Write;
            let mut out = std::io::stdout();
            if writeln!(out, "{rendered}").is_err() {
                std::process::exit(0);
            }
            Ok(())
        }
    }
}

fn emit(io: &IoArgs, value: &Value, text: String) -> CmdResult {
    emit_to(&io.output, &io.format, value, text)
}

fn laurent_text(p: &seiblan::LaurentPoly) -> String {
    format!("{p}")
}

fn cmd_invariants(knot: Option<String>, io: &IoArgs) -> CmdResult {
    let ring = parse_ring(&io.ring)?;
    let form = match knot {
        Some(name) => {
            let rec = lookup_knot(&name)
                .ok_or_else(|| Failure::Validation(format!("unknown knot {name:?}")))?;
            rec.form(ring).map_err(Failure::from)?
        }
        None => {
            let v = with_eta_default(read_input(io)?, &io.eta)?;
            wire::seifert_form_from_value(ring, &v).map_err(Failure::from)?
        }
    };
    let report = invariant_report_capped(&form, io.degree_cap).map_err(Failure::from)?;
    let text = format!(
        "alexander   {}\nsignature   {}\ndeterminant {}\nrank        {}",
        laurent_text(&report.alexander),
        report
            .signature
            .map(|s| s.to_string())
            .unwrap_or_else(|| "n/a".into()),
        report.determinant,
        report.rank,
    );
    emit(io, &wire::report_to_value(&report), text)
}

fn cmd_cover(io: &IoArgs) -> CmdResult {
    let ring = parse_ring(&io.ring)?;
    let v = with_eta_default(read_input(io)?, &io.eta)?;
    let form = wire::seifert_form_from_value(ring, &v).map_err(Failure::from)?;
    let cov = form.cover().map_err(Failure::from)?;
    let text = format!(
        "covering form on rank {} module, t-exponent {}",
        cov.rank(),
        cov.t_exponent()
    );
    emit(io, &wire::blanchfield_form_to_value(&cov), text)
}

fn cmd_seifertize(io: &IoArgs) -> CmdResult {
    let ring = parse_ring(&io.ring)?;
    let v = read_input(io)?;
    let d = wire::presentation_from_value(ring, &v).map_err(Failure::from)?;
    let pres = BlanchfieldPresentation::new(d).map_err(Failure::from)?;
    let (module, info) = pres.seifertize_with_info().map_err(Failure::from)?;
    let mut value = wire::module_to_value(&module);
    let obj = value.as_object_mut().unwrap();
    obj.insert("degree".into(), json!(info.degree));
    obj.insert("base_rank".into(), json!(info.base_rank));
    let text = format!(
        "companion module of rank {} (degree {} on base rank {})",
        module.rank(),
        info.degree,
        info.base_rank
    );
    emit(io, &value, text)
}

fn cmd_uncover(io: &IoArgs) -> CmdResult {
    let ring = parse_ring(&io.ring)?;
    let v = with_eta_default(read_input(io)?, &io.eta)?;
    let bform = wire::blanchfield_form_from_value(ring, &v).map_err(Failure::from)?;
    let input_rank = bform.rank();
    let (form, trace) = bform.uncover().map_err(Failure::from)?;
    let certificate = rank_certificate(&trace, 1, input_rank);
    let cert_str = match certificate {
        RankCertificate::Holds => "holds".to_string(),
        RankCertificate::SkippedShortcut => "skipped (shortcut)".to_string(),
        RankCertificate::Failed { expected, actual } => {
            format!("failed: expected {expected}, got {actual}")
        }
    };
    let value = json!({
        "form": wire::seifert_form_to_value(&form),
        "trace": {
            "path": if trace.shortcut { "shortcut" } else { "full" },
            "k": trace.k,
            "twist_exponent": trace.twist_exponent,
            "input_rank": trace.input_rank,
            "result_rank": trace.result_rank,
            "rank_certificate": cert_str,
            "iso_witness_found": trace.iso_witness_found,
        },
    });
    let text = format!(
        "uncovered rank {} form via {} path (k = {}); rank certificate: {}",
        form.rank(),
        if trace.shortcut { "shortcut" } else { "full" },
        trace.k,
        cert_str
    );
    emit(io, &value, text)
}

fn cmd_decompose(io: &IoArgs) -> CmdResult {
    let ring = parse_ring(&io.ring)?;
    let v = read_input(io)?;
    let module = wire::module_from_value(ring, &v).map_err(Failure::from)?;
    let split = split_near_projection(&module).map_err(Failure::from)?;
    let value = json!({
        "k": split.k,
        "pi_k": wire::matrix_to_value(&split.pi_k),
        "projector": wire::matrix_to_value(&split.projector),
        "plus": {
            "module": wire::module_to_value(&split.plus),
            "image_basis": wire::matrix_to_value(&split.plus_split.image_basis),
            "section": wire::matrix_to_value(&split.plus_split.section),
        },
        "minus": {
            "module": wire::module_to_value(&split.minus),
            "image_basis": wire::matrix_to_value(&split.minus_split.image_basis),
            "section": wire::matrix_to_value(&split.minus_split.section),
        },
    });
    let text = format!(
        "near-projection of exponent {}: unipotent rank {}, nilpotent rank {}",
        split.k,
        split.plus.rank(),
        split.minus.rank()
    );
    emit(io, &value, text)
}

fn cmd_localize(io: &IoArgs) -> CmdResult {
    let ring = parse_ring(&io.ring)?;
    let v = with_eta_default(read_input(io)?, &io.eta)?;
    let form = wire::seifert_form_from_value(ring, &v).map_err(Failure::from)?;
    let loc = form.localize_capped(io.degree_cap).map_err(Failure::from)?;
    let text = format!(
        "localized form of rank {}, defect determinant {}",
        loc.rank(),
        laurent_text(loc.det_defect())
    );
    emit(io, &wire::localized_form_to_value(&loc), text)
}

fn cmd_roundtrip(seed: u64, count: usize, max_rank: usize, eta: Option<String>, out: &OutArgs) -> CmdResult {
    let eta_filter = eta.as_deref().map(parse_eta).transpose()?;
    let min_padded = (count * 3) / 10;
    let report = roundtrip_campaign(seed, count, max_rank, eta_filter, min_padded);
    let instances: Vec<Value> = report
        .instances
        .iter()
        .map(|i| {
            json!({
                "index": i.index,
                "eta": i.eta.sign(),
                "base_rank": i.base_rank,
                "padded_rank": i.padded_rank,
                "result_rank": i.result_rank,
                "path": if i.shortcut { "shortcut" } else { "full" },
                "passed": i.passed,
                "detail": i.detail,
            })
        })
        .collect();
    let ok = report.all_passed();
    let value = json!({
        "seed": seed,
        "count": count,
        "max_rank": max_rank,
        "padded_runs": report.padded_runs,
        "full_path_runs": report.full_path_runs,
        "all_passed": ok,
        "instances": instances,
    });
    let mut text = String::new();
    for i in &report.instances {
        text.push_str(&format!(
            "#{:<3} eta {:+} rank {}->{} {:<8} {}\n",
            i.index,
            i.eta.sign(),
            i.padded_rank,
            i.result_rank,
            if i.shortcut { "shortcut" } else { "full" },
            if i.passed { "ok" } else { &i.detail },
        ));
    }
    text.push_str(&format!(
        "{}/{} matched ({} padded, {} full-path)",
        report.instances.iter().filter(|i| i.passed).count(),
        count,
        report.padded_runs,
        report.full_path_runs
    ));
    emit_to(&out.output, &out.format, &value, text)?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Math(Error::InternalAssertion(
            "roundtrip campaign had failures".into(),
        )))
    }
}

fn cmd_selftest(seed: u64, out: &OutArgs) -> CmdResult {
    let outcomes = run_selftest(seed);
    let ok = outcomes.iter().all(|o| o.passed);
    let values: Vec<Value> = outcomes
        .iter()
        .map(|o| {
            json!({
                "name": o.name,
                "passed": o.passed,
                "detail": o.detail,
                "elapsed_ms": o.elapsed_ms as u64,
            })
        })
        .collect();
    let value = json!({ "seed": seed, "all_passed": ok, "checks": values });
    let mut text = String::new();
    for o in &outcomes {
        text.push_str(&format!(
            "{:<26} {}  ({} ms)  {}\n",
            o.name,
            if o.passed { "PASS" } else { "FAIL" },
            o.elapsed_ms,
            o.detail
        ));
    }
    text.push_str(if ok { "all checks passed" } else { "FAILURES present" });
    emit_to(&out.output, &out.format, &value, text)?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Math(Error::InternalAssertion("selftest failed".into())))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Invariants { knot, io } => cmd_invariants(knot.clone(), io),
        Command::Cover { io } => cmd_cover(io),
        Command::Seifertize { io } => cmd_seifertize(io),
        Command::Uncover { io } => cmd_uncover(io),
        Command::Decompose { io } => cmd_decompose(io),
        Command::Localize { io } => cmd_localize(io),
        Command::Roundtrip { seed, count, max_rank, eta, out } => {
            cmd_roundtrip(*seed, *count, *max_rank, eta.clone(), out)
        }
        Command::Selftest { seed, out } => cmd_selftest(*seed, out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(msg)) => {
            let err = json!({ "error": { "kind": "validation", "message": msg } });
            eprintln!("{err}");
            ExitCode::from(2)
        }
        Err(Failure::Math(e)) => {
            let err = json!({ "error": { "kind": "math", "message": e.to_string() } });
            eprintln!("{err}");
            ExitCode::from(1)
        }
    }
}
