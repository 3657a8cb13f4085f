//! `decomp-embed`: decide embeddings of decomposition spaces into Sobolev,
//! `C_b^k` and `BV^k` spaces, inspect coverings and test weighted sequence
//! space embeddings.
//!
//! Exit status: 0 Embeds, 1 DoesNotEmbed, 2 Undetermined, 10 oracle
//! disagreement, 64 usage, 65 malformed input, 70 unsupported weight or
//! internal failure.

mod commands;
mod error;
mod input;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use commands::Report;
use error::{CliError, EXIT_USAGE};
use input::{exponent_flag, I0Choice, JsonExponent, QueryDocument, TargetKind};

#[derive(Parser)]
#[command(name = "decomp-embed", version, about = "Embeddings of decomposition spaces into Sobolev spaces")]
struct Cli {
    /// Print a human-readable table instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide an embedding for a built-in family.
    Decide(DecideArgs),
    /// Report the neighbor structure and constants of a covering window.
    InspectCovering(InspectArgs),
    /// Decide l_v^r ↪ l_u^s for exp-poly weights u, v.
    CheckSequence(SequenceArgs),
    /// Compare the engine with the closed forms on a family's grid.
    VerifyFamily(VerifyArgs),
}

#[derive(Args)]
struct DecideArgs {
    /// Query document (inline JSON or @file); replaces the other flags.
    #[arg(long, conflicts_with_all = ["family", "params", "p", "r", "target", "k", "q", "refine", "i0"])]
    query: Option<String>,
    #[arg(long, required_unless_present = "query")]
    family: Option<String>,
    /// Family parameters as JSON (inline or @file).
    #[arg(long, required_unless_present = "query")]
    params: Option<String>,
    #[arg(long, required_unless_present = "query")]
    p: Option<String>,
    #[arg(long, required_unless_present = "query")]
    r: Option<String>,
    #[arg(long, value_enum, required_unless_present = "query")]
    target: Option<TargetKind>,
    #[arg(long, default_value_t = 0)]
    k: u32,
    /// Integrability of the Sobolev target.
    #[arg(long)]
    q: Option<String>,
    /// Apply the family's refined criteria for q in (2, inf).
    #[arg(long)]
    refine: bool,
    /// Re-check every symbolic l^θ decision with the truncated oracle.
    #[arg(long)]
    oracle_check: bool,
    /// Subset I0 for the Khintchine conditions.
    #[arg(long, value_enum)]
    i0: Option<I0Choice>,
}

#[derive(Args)]
struct InspectArgs {
    #[arg(long, required_unless_present = "covering")]
    family: Option<String>,
    #[arg(long, requires = "family")]
    params: Option<String>,
    /// Covering descriptor as JSON (inline or @file).
    #[arg(long, conflicts_with_all = ["family", "params"])]
    covering: Option<String>,
    #[arg(long)]
    radius: u64,
    /// Also check moderateness of the family's space weight for this r.
    #[arg(long)]
    r: Option<String>,
}

#[derive(Args)]
struct SequenceArgs {
    /// Target weight as JSON (inline or @file).
    #[arg(long)]
    u: String,
    /// Source weight as JSON (inline or @file).
    #[arg(long)]
    v: String,
    #[arg(long)]
    r: String,
    #[arg(long)]
    s: String,
    /// Also classify the quotient with the truncated oracle.
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    family: String,
}

fn family_flag(s: &str) -> Result<decomp_embed_core::families::FamilyId, CliError> {
    input::family_id(s).ok_or_else(|| CliError::Usage(format!("unknown family {:?}", s)))
}

fn decide_document(a: DecideArgs) -> Result<QueryDocument, CliError> {
    if let Some(q) = &a.query {
        let mut doc = input::query_document(&input::json_arg("query", q)?)?;
        doc.oracle_check |= a.oracle_check;
        return Ok(doc);
    }
    let missing = |n: &str| CliError::Usage(format!("--{} is required", n));
    let family = a.family.ok_or_else(|| missing("family"))?;
    family_flag(&family)?;
    let params: Value = input::json_arg("params", a.params.as_deref().ok_or_else(|| missing("params"))?)?;
    Ok(QueryDocument {
        family,
        params,
        p: JsonExponent(exponent_flag("p", a.p.as_deref().ok_or_else(|| missing("p"))?)?),
        r: JsonExponent(exponent_flag("r", a.r.as_deref().ok_or_else(|| missing("r"))?)?),
        target: a.target.ok_or_else(|| missing("target"))?,
        k: a.k,
        q: a.q.as_deref().map(|q| exponent_flag("q", q)).transpose()?.map(JsonExponent),
        refine: a.refine,
        oracle_check: a.oracle_check,
        i0: a.i0.unwrap_or_default(),
    })
}

fn run(command: Command) -> Result<Report, CliError> {
    match command {
        Command::Decide(a) => commands::cmd_decide(&decide_document(a)?),
        Command::InspectCovering(a) => {
            let src = match (&a.covering, &a.family) {
                (Some(c), _) => input::covering(&input::json_arg("covering", c)?)?,
                (None, Some(f)) => {
                    let id = family_flag(f)?;
                    let params = input::json_arg("params", a.params.as_deref().unwrap_or("{}"))?;
                    input::CoveringSource::Family(input::family_spec(id, &params)?)
                }
                (None, None) => return Err(CliError::Usage("give --family or --covering".into())),
            };
            let r = a.r.as_deref().map(|r| exponent_flag("r", r)).transpose()?;
            commands::cmd_inspect_covering(&src, a.radius, r)
        }
        Command::CheckSequence(a) => {
            let u = input::weight("u", &input::json_arg("u", &a.u)?)?;
            let v = input::weight("v", &input::json_arg("v", &a.v)?)?;
            let r = exponent_flag("r", &a.r)?;
            let s = exponent_flag("s", &a.s)?;
            commands::cmd_check_sequence(&u, &v, r, s, a.oracle)
        }
        Command::VerifyFamily(a) => commands::cmd_verify_family(family_flag(&a.family)?),
    }
}

fn exit(code: i32) -> ExitCode {
    ExitCode::from(code as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { exit(EXIT_USAGE) } else { exit(0) };
        }
    };
    match run(cli.command) {
        Ok(report) => {
            if cli.pretty {
                print!("{}", report.text);
            } else {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("reports serialize"));
            }
            exit(report.code)
        }
        Err(e) => {
            eprintln!("error: {}", e);
            exit(e.code())
        }
    }
}
