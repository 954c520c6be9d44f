//! Argument parsing and JSON glue for the `moonforge` binary.
//!
//! ```text
//! moonforge <verb> [--scores LIST | --in FILE] [--seed K] [--n N] [--den D]
//!                  [--schedule LIST] [--cap V] [--m M] [--plan-only] [--no-weights]
//! ```
//!
//! Exit codes: 0 success or feasible, 1 infeasible or failed verification
//! (JSON still on stdout), 2 usage, parse or other errors (stderr).

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::approx::{approximate_realize_with, perturb, ApproxRun, PerturbResult};
use crate::blowup::{
    blowup_scores, realize_rational_with, BlowupOptions, BlowupPlan, DEFAULT_VERTEX_CAP,
};
use crate::error::{Error, Result};
use crate::feasibility::{check_fast, FeasibilityVerdict};
use crate::generate::random_feasible;
use crate::rational::Rational;
use crate::realize::realize_integer;
use crate::sequence::ScoreSequence;
use crate::tournament::{GeneralizedTournament, Tournament};

pub const DEFAULT_SCHEDULE: [u64; 3] = [10, 20, 40];
pub const DEFAULT_PERTURB_M: u64 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    /// Decide feasibility and print a verdict with an optional witness
    Check,
    /// Realize an integer score sequence as a tournament
    Realize,
    /// Realize a rational score sequence by blow-up (or print the plan)
    Blowup,
    /// Perturb to a nearby feasible sequence with small denominators
    Perturb,
    /// Perturb and realize for each accuracy in a schedule
    Approx,
    /// Draw a feasible score sequence from a seeded generator
    Random,
    /// Re-check any artifact emitted by the other verbs
    Verify,
}

#[derive(Debug, Parser)]
#[command(
    name = "moonforge",
    version,
    about = "Exact tournament score sequences and their realizations"
)]
pub struct Command {
    #[arg(value_enum)]
    pub verb: Verb,
    /// Comma-separated rationals, e.g. 1/2,1/2,2 or 1.25,0.75,1
    #[arg(long, allow_hyphen_values = true)]
    pub scores: Option<String>,
    /// JSON input file (`-` for stdin)
    #[arg(long = "in", value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Seed for `random` (default 0)
    #[arg(long)]
    pub seed: Option<u64>,
    /// Sequence length for `random`
    #[arg(long)]
    pub n: Option<usize>,
    /// Weight denominator for `random` (default 1: integer scores)
    #[arg(long)]
    pub den: Option<u32>,
    /// Accuracy schedule for `approx`, e.g. 10,20,40
    #[arg(long)]
    pub schedule: Option<String>,
    /// Blow-up vertex cap
    #[arg(long)]
    pub cap: Option<usize>,
    /// Accuracy parameter for `perturb`
    #[arg(long)]
    pub m: Option<u64>,
    /// `blowup`: print the lifted sequence instead of the weights
    #[arg(long)]
    pub plan_only: bool,
    /// `approx`: omit the weight matrices
    #[arg(long)]
    pub no_weights: bool,
}

/// Result of one invocation, ready to be written out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn json<T: Serialize>(code: i32, value: &T) -> Self {
        let mut stdout = serde_json::to_string_pretty(value).expect("serializable output");
        stdout.push('\n');
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: impl std::fmt::Display) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        match e {
            Error::Infeasible(w) => Outcome::json(1, &FeasibilityVerdict::infeasible(w)),
            other => Outcome::usage(other),
        }
    }
}

/// Runs one command; `args` excludes the program name.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once("moonforge".into()).chain(args.into_iter().map(Into::into));
    let command = match Command::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    dispatch(&command).unwrap_or_else(Outcome::from)
}

fn dispatch(c: &Command) -> Result<Outcome> {
    let options = BlowupOptions {
        vertex_cap: c.cap.unwrap_or(DEFAULT_VERTEX_CAP),
        ..Default::default()
    };
    match c.verb {
        Verb::Check => {
            let verdict = check_fast(&sequence_input(c)?)?;
            Ok(Outcome::json(
                if verdict.feasible { 0 } else { 1 },
                &verdict,
            ))
        }
        Verb::Realize => Ok(Outcome::json(0, &realize_integer(&sequence_input(c)?)?)),
        Verb::Blowup => {
            let targets = sequence_input(c)?;
            if c.plan_only {
                let m = targets.lcm_denominators().try_into().map_err(|_| {
                    Error::InvalidArgument("denominator lcm exceeds 64 bits".into())
                })?;
                Ok(Outcome::json(0, &blowup_scores(&targets, m)?))
            } else {
                Ok(Outcome::json(0, &realize_rational_with(&targets, options)?))
            }
        }
        Verb::Perturb => {
            let m = c.m.unwrap_or(DEFAULT_PERTURB_M);
            Ok(Outcome::json(0, &perturb(&sequence_input(c)?, m)?))
        }
        Verb::Approx => {
            let schedule = match &c.schedule {
                Some(text) => parse_schedule(text)?,
                None => DEFAULT_SCHEDULE.to_vec(),
            };
            let mut run = approximate_realize_with(&sequence_input(c)?, &schedule, options)?;
            if c.no_weights {
                run = run.without_weights();
            }
            Ok(Outcome::json(0, &run))
        }
        Verb::Random => {
            let n =
                c.n.ok_or_else(|| Error::InvalidArgument("random needs --n".into()))?;
            let seq = random_feasible(n, c.den.unwrap_or(1), c.seed.unwrap_or(0))?;
            Ok(Outcome::json(0, &seq))
        }
        Verb::Verify => verify(c),
    }
}

fn parse_schedule(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidArgument(format!("bad schedule entry {t:?}")))
        })
        .collect()
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(value: Value) -> Result<T> {
    serde_json::from_value(value).map_err(|e| Error::InvalidArgument(format!("bad JSON: {e}")))
}

/// Accepts `{"scores": [...]}` or a bare array.
fn sequence_from_json(text: &str) -> Result<ScoreSequence> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("bad JSON: {e}")))?;
    match value {
        Value::Array(_) => parse_json::<Vec<Rational>>(value).map(ScoreSequence::new),
        other => parse_json(other),
    }
}

fn sequence_input(c: &Command) -> Result<ScoreSequence> {
    match (&c.scores, &c.input) {
        (Some(_), Some(_)) => Err(Error::InvalidArgument(
            "give either --scores or --in, not both".into(),
        )),
        (Some(list), None) => ScoreSequence::parse_list(list),
        (None, Some(path)) => sequence_from_json(&read_input(path)?),
        (None, None) => Err(Error::InvalidArgument("missing --scores or --in".into())),
    }
}

#[derive(Serialize)]
struct VerifyReport {
    artifact: &'static str,
    ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    scores: Option<Vec<Rational>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    message: Option<String>,
}

impl VerifyReport {
    fn outcome(self) -> Outcome {
        Outcome::json(if self.ok { 0 } else { 1 }, &self)
    }
}

fn check_outcome(artifact: &'static str, checked: Result<()>) -> VerifyReport {
    VerifyReport {
        artifact,
        ok: checked.is_ok(),
        scores: None,
        message: checked.err().map(|e| e.to_string()),
    }
}

fn compare(expected: Option<&ScoreSequence>, actual: &ScoreSequence) -> Result<()> {
    match expected {
        Some(e) if e != actual => Err(Error::Mismatch(format!(
            "scores {actual} differ from the expected {e}"
        ))),
        _ => Ok(()),
    }
}

/// Recomputes scores of a (generalized) tournament, or re-checks a plan,
/// perturbation, approximation run, sequence or verdict. `--scores`, when
/// given, is the sequence the artifact should realize or approximate.
fn verify(c: &Command) -> Result<Outcome> {
    let path = c
        .input
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("verify needs --in FILE".into()))?;
    let expected = c
        .scores
        .as_deref()
        .map(ScoreSequence::parse_list)
        .transpose()?;
    let expected = expected.as_ref();
    let value: Value = serde_json::from_str(&read_input(path)?)
        .map_err(|e| Error::InvalidArgument(format!("bad JSON: {e}")))?;

    let has = |key: &str| value.get(key).is_some();
    let report = if value.is_array() {
        let run: ApproxRun = parse_json(value)?;
        let checked = run.records.iter().try_for_each(|r| {
            r.verify()?;
            if let Some(targets) = expected {
                let p = PerturbResult {
                    m: r.m,
                    targets: targets.clone(),
                    output: r.perturbed.clone(),
                    permutation: Vec::new(),
                    sup_error: r.sup_error.clone(),
                };
                p.verify()?;
            }
            Ok(())
        });
        check_outcome("approx-run", checked)
    } else if has("edges") {
        let t: Tournament = parse_json(value)?;
        let scores = crate::realize::scores_of(&t);
        let mut r = check_outcome("tournament", compare(expected, &scores));
        r.scores = Some(scores.into_vec());
        r
    } else if has("weights") {
        let g: GeneralizedTournament = parse_json(value)?;
        let scores = g.scores();
        let mut r = check_outcome("generalized-tournament", compare(expected, &scores));
        r.scores = Some(scores.into_vec());
        r
    } else if has("lifted") {
        let plan: BlowupPlan = parse_json(value)?;
        let checked = plan.verify().and_then(|_| compare(expected, &plan.targets));
        check_outcome("blowup-plan", checked)
    } else if has("output") {
        let p: PerturbResult = parse_json(value)?;
        let checked = p.verify().and_then(|_| compare(expected, &p.targets));
        check_outcome("perturbation", checked)
    } else if has("feasible") {
        let claimed: FeasibilityVerdict = parse_json(value)?;
        let seq = expected
            .ok_or_else(|| Error::InvalidArgument("verifying a verdict needs --scores".into()))?;
        let actual = check_fast(seq)?;
        let checked = if actual == claimed {
            Ok(())
        } else {
            Err(Error::Mismatch(
                "verdict does not match a fresh check".into(),
            ))
        };
        check_outcome("verdict", checked)
    } else if has("scores") {
        let seq: ScoreSequence = parse_json(value)?;
        let checked = check_fast(&seq)
            .and_then(FeasibilityVerdict::into_result)
            .and_then(|_| compare(expected, &seq));
        let mut r = check_outcome("sequence", checked);
        r.scores = Some(seq.into_vec());
        r
    } else {
        return Err(Error::InvalidArgument("unrecognized artifact".into()));
    };
    Ok(report.outcome())
}
