//! Batch front end: read a JSON instance, run one computation, print JSON.
//!
//! Exit codes: `0` computed, `1` unstable verdict under `--fail-on-unstable`,
//! `2` malformed input or arguments.

use std::ffi::OsString;
use std::io::{IsTerminal, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::classical::{
    dualize_filtration, ramanathan_semistable, semistable_form, FlagSource, FormVerdict,
    SplitSheafModel,
};
use crate::dispo::{
    admissible_deformation, asymptotic_semistable, deform_to_fixed_point, delta_semistable,
    functional_m, mu_profile, slope_parameter, slope_semistable, Verdict,
};
use crate::error::{Error, Result};
use crate::flags::OneParamSubgroup;
use crate::hilbert_mumford::{mu, torus_destabilize, weighted_compositions, Destabilization};
use crate::json::{
    flag_out, poly_out, profile_out, rational_out, BoundsPayload, DispoPayload, FlagsPayload,
    FormPayload, InstanceFile, Kind, TorusPayload,
};
use crate::repdata::{adjoint_low_height_bound, heinloth_curve_condition, DynkinType};

#[derive(Parser, Debug)]
#[command(
    name = "semistab",
    version,
    about = "Exact Hilbert–Mumford and semistability computations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Instance file; standard input when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    input: Option<PathBuf>,
    /// Exit with status 1 when the verdict is unstable.
    #[arg(long, global = true)]
    fail_on_unstable: bool,
    /// Test stability instead of semistability.
    #[arg(long, global = true)]
    strict: bool,
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hilbert–Mumford weight of a torus point, or μ of a dispo filtration.
    Mu {
        /// Read λ from the `lambda` field of this JSON file (e.g. `destabilize` output).
        #[arg(long, value_name = "PATH")]
        lambda_from: Option<PathBuf>,
    },
    /// Find a destabilizing one-parameter subgroup or a hull certificate.
    Destabilize,
    /// δ-semistability and slope semistability of dispo filtrations.
    DispoCheck,
    /// Admissible deformation of nonvanishing profiles.
    Deform,
    /// Semistability of a bilinear-form bundle on the projective line.
    FormCheck,
    /// Dual weighted flag of a coordinate flag.
    Dualize,
    /// Characteristic bounds for a list of Dynkin types.
    Bounds {
        #[arg(value_name = "TYPE")]
        types: Vec<String>,
    },
    /// Tuples (d_1, …, d_s) with Σ i·d_i = s!.
    EnumerateCompositions { s: usize },
}

struct Outcome {
    value: Value,
    unstable: bool,
}

impl Outcome {
    fn computed(value: Value) -> Self {
        Outcome {
            value,
            unstable: false,
        }
    }
}

/// Run with the process streams; `NO_COLOR` disables colored diagnostics.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let color = std::env::var_os("NO_COLOR").is_none() && std::io::stderr().is_terminal();
    run_with(
        args,
        &mut std::io::stdin().lock(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
        color,
    )
}

pub fn run_with<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
    color: bool,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = if color {
                e.render().ansi().to_string()
            } else {
                e.render().to_string()
            };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    match execute(&cli, stdin) {
        Ok(out) => {
            let text = if cli.pretty {
                serde_json::to_string_pretty(&out.value)
            } else {
                serde_json::to_string(&out.value)
            }
            .expect("JSON values always serialize");
            if writeln!(stdout, "{text}").is_err() {
                return 2;
            }
            if out.unstable && cli.fail_on_unstable {
                1
            } else {
                0
            }
        }
        Err(e) => {
            let tag = if color {
                "\x1b[31merror\x1b[0m"
            } else {
                "error"
            };
            let _ = writeln!(stderr, "{tag}: {e}");
            2
        }
    }
}

fn read_text(path: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<String> {
    let mut text = String::new();
    match path {
        Some(p) => {
            text = std::fs::read_to_string(p)
                .map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?
        }
        None => {
            stdin
                .read_to_string(&mut text)
                .map_err(|e| Error::Parse(format!("standard input: {e}")))?;
        }
    }
    Ok(text)
}

fn instance(cli: &Cli, stdin: &mut dyn Read, kinds: &[Kind]) -> Result<InstanceFile> {
    let file = InstanceFile::parse(&read_text(&cli.input, stdin)?)?;
    file.expect(kinds)?;
    Ok(file)
}

fn verdict_word(holds: bool, strict: bool) -> &'static str {
    match (holds, strict) {
        (false, _) => "unstable",
        (true, true) => "stable",
        (true, false) => "semistable",
    }
}

fn verdict_out(v: Verdict) -> Value {
    json!({ "holds": v.holds(), "witness_index": v.witness() })
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<Outcome> {
    match &cli.command {
        Command::Mu { lambda_from } => mu_command(cli, stdin, lambda_from),
        Command::Destabilize => {
            let file = instance(cli, stdin, &[Kind::TorusRep])?;
            let p: TorusPayload = file.payload()?;
            let rep = p.rep.build()?;
            Ok(match torus_destabilize(&rep, &p.point()?)? {
                Destabilization::Unstable { lambda } => Outcome {
                    value: json!({ "lambda": lambda.weights(), "verdict": "unstable" }),
                    unstable: true,
                },
                Destabilization::Semistable { certificate } => {
                    let cert: serde_json::Map<String, Value> = certificate
                        .iter()
                        .map(|(k, v)| (k.clone(), rational_out(v)))
                        .collect();
                    Outcome::computed(json!({ "certificate": cert, "verdict": "semistable" }))
                }
            })
        }
        Command::DispoCheck => dispo_check(cli, stdin),
        Command::Deform => {
            let file = instance(cli, stdin, &[Kind::Dispo])?;
            let p: DispoPayload = file.payload()?;
            let results = p
                .cases()?
                .iter()
                .map(|(f, prof)| {
                    let step = admissible_deformation(f, prof)?;
                    let (fixed, rounds) = deform_to_fixed_point(f, prof)?;
                    Ok(json!({
                        "deformed": profile_out(&step),
                        "fixed_point": profile_out(&fixed),
                        "m": poly_out(&functional_m(f)),
                        "mu": rational_out(&mu_profile(f, &fixed)?),
                        "rounds": rounds,
                    }))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Outcome::computed(if p.is_single() {
                results.into_iter().next().expect("single case")
            } else {
                json!({ "results": results })
            }))
        }
        Command::FormCheck => {
            let file = instance(cli, stdin, &[Kind::FormBundle])?;
            let p: FormPayload = file.payload()?;
            let fb = p.form.build()?;
            let source = match &p.flags {
                None => FlagSource::ExhaustiveCoordinate,
                Some(list) => FlagSource::Supplied(
                    list.iter()
                        .map(|f| f.build(fb.model()))
                        .collect::<Result<Vec<_>>>()?,
                ),
            };
            let main = semistable_form(&fb, &source, cli.strict)?;
            let ram = ramanathan_semistable(&fb, &source, cli.strict)?;
            Ok(Outcome {
                value: json!({
                    "flags_checked": main.flags_checked,
                    "ramanathan": form_verdict_out(&ram),
                    "verdict": verdict_word(main.holds, cli.strict),
                    "witness": form_verdict_out(&main)["witness"].clone(),
                }),
                unstable: !main.holds,
            })
        }
        Command::Dualize => {
            let file = instance(cli, stdin, &[Kind::Flags])?;
            let p: FlagsPayload = file.payload()?;
            let model = SplitSheafModel::new(p.degrees.clone())?;
            let flag = p.flag.build(&model)?;
            let dual = dualize_filtration(&model, &flag)?;
            Ok(Outcome::computed(json!({
                "degrees": model.dual().degrees(),
                "flag": flag_out(&dual),
            })))
        }
        Command::Bounds { types } => {
            let names = if types.is_empty() {
                let file = instance(cli, stdin, &[Kind::BoundsQuery])?;
                file.payload::<BoundsPayload>()?.types
            } else {
                types.clone()
            };
            if names.is_empty() {
                return Err(Error::Parse("no Dynkin types given".into()));
            }
            let parsed = names
                .iter()
                .map(|s| s.parse::<DynkinType>())
                .collect::<Result<Vec<_>>>()?;
            let bound = parsed.iter().map(|&t| adjoint_low_height_bound(t)).max();
            Ok(Outcome::computed(json!({
                "bound": bound,
                "clause": heinloth_curve_condition(&parsed).to_string(),
            })))
        }
        Command::EnumerateCompositions { s } => {
            let list = weighted_compositions(*s)?;
            Ok(Outcome::computed(
                json!({ "compositions": list, "count": list.len() }),
            ))
        }
    }
}

fn form_verdict_out(v: &FormVerdict) -> Value {
    let witness = v.witness.as_ref().map(|w| {
        json!({
            "flag": flag_out(&w.flag),
            "from_kernel": w.from_kernel,
            "l": rational_out(&w.l),
            "m": poly_out(&w.m),
            "mu": rational_out(&w.mu),
        })
    });
    json!({ "holds": v.holds, "witness": witness })
}

fn lambda_from_file(path: &PathBuf) -> Result<Vec<i64>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    let field = match &v {
        Value::Array(_) => &v,
        _ => v
            .get("lambda")
            .ok_or_else(|| Error::Parse(format!("{}: no `lambda` field", path.display())))?,
    };
    serde_json::from_value(field.clone()).map_err(|e| Error::Parse(e.to_string()))
}

fn mu_command(cli: &Cli, stdin: &mut dyn Read, lambda_from: &Option<PathBuf>) -> Result<Outcome> {
    let file = instance(cli, stdin, &[Kind::TorusRep, Kind::Dispo])?;
    if file.kind == Kind::Dispo {
        let p: DispoPayload = file.payload()?;
        let mus = p
            .cases()?
            .iter()
            .map(|(f, prof)| Ok(rational_out(&mu_profile(f, prof)?)))
            .collect::<Result<Vec<_>>>()?;
        let value = if p.is_single() {
            json!({ "mu": mus[0] })
        } else {
            json!({ "mu": mus })
        };
        return Ok(Outcome::computed(value));
    }
    let p: TorusPayload = file.payload()?;
    let weights = match lambda_from {
        Some(path) => lambda_from_file(path)?,
        None => p
            .lambda
            .clone()
            .ok_or_else(|| Error::Parse("torus `mu` needs `lambda` or --lambda-from".into()))?,
    };
    let lambda = OneParamSubgroup::new(weights)?;
    let value = mu(&p.rep.build()?, &lambda, &p.point()?)?;
    Ok(Outcome {
        value: json!({ "mu": value.to_string() }),
        unstable: value < 0,
    })
}

fn dispo_check(cli: &Cli, stdin: &mut dyn Read) -> Result<Outcome> {
    let file = instance(cli, stdin, &[Kind::Dispo])?;
    let p: DispoPayload = file.payload()?;
    let cases = p.cases()?;
    let mus = cases
        .iter()
        .map(|(f, prof)| Ok(rational_out(&mu_profile(f, prof)?)))
        .collect::<Result<Vec<_>>>()?;
    let Some(delta) = p.delta()? else {
        let v = asymptotic_semistable(&cases, cli.strict)?;
        return Ok(Outcome {
            value: json!({
                "mu": mus,
                "verdict": verdict_word(v.holds(), cli.strict),
                "witness_index": v.witness(),
            }),
            unstable: !v.holds(),
        });
    };
    let v = delta_semistable(&cases, &delta, cli.strict)?;
    let dim = cases
        .first()
        .and_then(|(f, _)| f.total_hilb().degree())
        .unwrap_or(1);
    let delta_bar = slope_parameter(&delta, dim)?;
    let slope = slope_semistable(&cases, &delta_bar, cli.strict)?;
    Ok(Outcome {
        value: json!({
            "delta_bar": rational_out(&delta_bar),
            "mu": mus,
            "slope": verdict_out(slope),
            "verdict": verdict_word(v.holds(), cli.strict),
            "witness_index": v.witness(),
        }),
        unstable: !v.holds(),
    })
}
