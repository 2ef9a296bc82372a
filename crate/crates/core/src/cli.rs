//! Command-line front end. Every subcommand reads UTF-8 JSON (from a file or
//! stdin) and produces a [`CommandResult`].
//!
//! Exit codes: 0 ok, 2 input error, 3 refused, 4 internal error.

use std::io::Read;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::blowup::{
    blowup_mori_generators, blowup_nef_generators, build_blowup, is_nef_on_blowup,
    seshadri_via_blowup,
};
use crate::bundles::{
    ample_check_bundle, bundle_nef_obstruction, seshadri_bundle, validate_splitting, BundleBase,
    SplittingData,
};
use crate::cones::{
    cones_equal_bounded, contains_bounded, dual_cone_bounded, RationalCone, DEFAULT_MAX_DIM,
};
use crate::error::{Error, Result, Status};
use crate::flag::{build_flag_model, build_projective_space_model, CartanType};
use crate::model::{
    ample_check_linebundle, intersect, nef_obstruction, seshadri_line, DivisorClass, VarietyModel,
    VarietyModelJson,
};
use crate::rational::{self, parse_int_list, parse_rational, parse_rational_list};
use crate::report::ValidationReport;
use crate::toric::{
    divisor_degree_on_wall, seshadri_toric_fixed_point, toric_nef_obstruction, validate_fan, Fan,
    FanSpec, ToricDivisor,
};

/// Environment variable overriding the cone duality dimension bound.
pub const MAX_CONE_DIM_VAR: &str = "POSKIT_MAX_CONE_DIM";

#[derive(Debug, Parser)]
#[command(
    name = "poskit",
    version,
    about = "Exact positivity checks and Seshadri constants"
)]
struct Cli {
    /// Emit a JSON envelope {"status","payload","message"} instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Variety models: validation and line-bundle positivity.
    #[command(subcommand)]
    Model(ModelCmd),
    /// Build models of flag varieties G/B and projective spaces.
    #[command(subcommand)]
    Flag(FlagCmd),
    /// Smooth complete toric varieties given by a fan.
    #[command(subcommand)]
    Toric(ToricCmd),
    /// Rational polyhedral cones.
    #[command(subcommand)]
    Cone(ConeCmd),
    /// The blow-up at the sink.
    #[command(subcommand)]
    Blowup(BlowupCmd),
    /// Vector bundles given by splitting data.
    #[command(subcommand)]
    Bundle(BundleCmd),
}

#[derive(Debug, Args)]
struct Input {
    /// JSON file; `-` or omitted reads stdin.
    file: Option<String>,
}

#[derive(Debug, Args)]
struct LineBundleArg {
    #[command(flatten)]
    input: Input,
    /// Coefficients a_1,..,a_r of L = sum a_i D_i.
    #[arg(long = "L", allow_hyphen_values = true)]
    l: String,
}

#[derive(Debug, Subcommand)]
enum ModelCmd {
    /// Check a model and report every violation.
    Validate(Input),
    /// Intersection number L.C with a named curve.
    Intersect {
        #[command(flatten)]
        line: LineBundleArg,
        #[arg(long)]
        curve: String,
    },
    /// Whether L is nef.
    Nef(LineBundleArg),
    /// Whether L is ample.
    Ample(LineBundleArg),
    /// Seshadri constant of an ample L at the sink.
    Seshadri(LineBundleArg),
}

#[derive(Debug, Subcommand)]
enum FlagCmd {
    /// Model of G/B, e.g. `flag build A3`.
    Build { cartan_type: String },
    /// Model of P^n.
    Projective { n: usize },
    /// Cartan matrix of a type.
    Cartan { cartan_type: String },
}

#[derive(Debug, Args)]
struct ToricDivisorArg {
    #[command(flatten)]
    input: Input,
    /// Coefficients of D = sum a_rho D_rho, in ray order.
    #[arg(long = "D", allow_hyphen_values = true)]
    d: String,
}

#[derive(Debug, Subcommand)]
enum ToricCmd {
    /// Check that a fan is smooth and complete.
    Validate(Input),
    /// List walls with their relations.
    Walls(Input),
    /// Degree of D on the curve of a wall.
    Degree {
        #[command(flatten)]
        divisor: ToricDivisorArg,
        /// Wall label as printed by `toric walls`.
        #[arg(long)]
        wall: String,
    },
    /// Whether D is nef.
    Nef(ToricDivisorArg),
    /// Seshadri constant of a nef D at a torus-fixed point.
    Seshadri {
        #[command(flatten)]
        divisor: ToricDivisorArg,
        /// Index of the maximal cone whose fixed point is meant.
        #[arg(long)]
        cone: usize,
    },
}

#[derive(Debug, Subcommand)]
enum ConeCmd {
    /// Extreme rays of the dual cone.
    Dual(Input),
    /// Whether a vector lies in the cone.
    Contains {
        #[command(flatten)]
        input: Input,
        /// Vector entries, e.g. `1,-1/2,0`.
        #[arg(long, allow_hyphen_values = true)]
        v: String,
    },
    /// Whether two cones are equal.
    Equal {
        first: String,
        second: String,
    },
}

#[derive(Debug, Subcommand)]
enum BlowupCmd {
    /// Bases and intersection pairing of the blow-up.
    Build(Input),
    /// Generators of the nef cone of the blow-up.
    Nefcone(Input),
    /// Generators of the Mori cone of the blow-up.
    Moricone(Input),
    /// Whether Bl*L - cE is nef, with a witness curve if not.
    Isnef {
        #[command(flatten)]
        input: Input,
        /// Coefficients b of Bl*(sum b_i D_i).
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// Multiple c of the exceptional divisor subtracted.
        #[arg(long, allow_hyphen_values = true)]
        c: String,
    },
    /// Seshadri constant of an ample L computed on the blow-up.
    Seshadri(LineBundleArg),
}

#[derive(Debug, Args)]
struct BundleArgs {
    /// Splitting data JSON; `-` or omitted reads stdin.
    splitting: Option<String>,
    /// Variety model the bundle lives on.
    #[arg(long, conflicts_with = "fan", required_unless_present = "fan")]
    model: Option<String>,
    /// Fan of the toric variety the bundle lives on.
    #[arg(long)]
    fan: Option<String>,
}

#[derive(Debug, Subcommand)]
enum BundleCmd {
    /// Check splitting data against the base.
    Validate(BundleArgs),
    /// Whether the bundle is nef.
    Nef(BundleArgs),
    /// Whether the bundle is ample.
    Ample(BundleArgs),
    /// Seshadri constant of a nef bundle.
    Seshadri {
        #[command(flatten)]
        args: BundleArgs,
        /// Maximal cone index of the fixed point (toric bases only).
        #[arg(long)]
        cone: Option<usize>,
    },
}

/// Outcome of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Option<Value>,
    pub message: String,
    /// Plain-text rendering of the payload.
    pub text: String,
}

impl CommandResult {
    fn ok(payload: Value, text: impl Into<String>, message: impl Into<String>) -> Self {
        CommandResult {
            status: Status::Ok,
            payload: Some(payload),
            message: message.into(),
            text: text.into(),
        }
    }

    fn from_error(err: &Error) -> Self {
        CommandResult {
            status: err.status(),
            payload: None,
            message: err.to_string(),
            text: String::new(),
        }
    }

    fn report(report: ValidationReport, what: &str) -> Self {
        let payload = serde_json::to_value(&report).expect("report serializes");
        if report.passed {
            CommandResult::ok(payload, "valid", format!("{what} is valid"))
        } else {
            let lines: Vec<String> = report
                .violations
                .iter()
                .map(|v| format!("{}: {}", v.subject, v.message))
                .collect();
            CommandResult {
                status: Status::InputError,
                payload: Some(payload),
                message: format!("{what} is invalid: {}", report.summary()),
                text: lines.join("\n"),
            }
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "status": self.status.as_str(),
            "payload": self.payload.clone().unwrap_or(Value::Null),
            "message": self.message,
        })
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    CommandResult::ok(json!(rendered), rendered, "")
                }
                _ => CommandResult {
                    status: Status::InputError,
                    payload: None,
                    message: rendered.trim_end().to_string(),
                    text: String::new(),
                },
            };
        }
    };
    let mut ctx = Context {
        stdin,
        stdin_used: false,
    };
    dispatch(cli.command, &mut ctx).unwrap_or_else(|e| CommandResult::from_error(&e))
}

/// Whether the parsed argv asked for JSON output.
pub fn wants_json<I, T>(argv: I) -> bool
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Cli::try_parse_from(argv)
        .map(|c| c.json)
        .unwrap_or_else(|_| false)
}

struct Context<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
}

impl Context<'_> {
    fn read(&mut self, path: Option<&str>) -> Result<String> {
        match path {
            None | Some("-") => {
                if std::mem::replace(&mut self.stdin_used, true) {
                    return Err(Error::input("stdin can feed only one input"));
                }
                let mut buf = String::new();
                self.stdin
                    .read_to_string(&mut buf)
                    .map_err(|e| Error::input(format!("reading stdin: {e}")))?;
                Ok(buf)
            }
            Some(p) => std::fs::read_to_string(p).map_err(|e| Error::input(format!("{p}: {e}"))),
        }
    }

    fn load<T: DeserializeOwned>(&mut self, path: Option<&str>, what: &str) -> Result<T> {
        let text = self.read(path)?;
        let value = parse_json(&text, what)?;
        serde_json::from_value(value).map_err(|e| Error::input(format!("{what}: {e}")))
    }

    fn model(&mut self, path: Option<&str>) -> Result<VarietyModel> {
        let raw: VarietyModelJson = self.load(path, "variety model")?;
        VarietyModel::try_from(raw)
    }

    fn fan(&mut self, path: Option<&str>) -> Result<Fan> {
        Fan::new(self.load(path, "fan")?)
    }

    fn cone(&mut self, path: Option<&str>) -> Result<RationalCone> {
        let text = self.read(path)?;
        RationalCone::from_json(&parse_json(&text, "cone")?)
    }
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let before: usize = text
        .split_inclusive('\n')
        .take(line.saturating_sub(1))
        .map(str::len)
        .sum();
    before + column.saturating_sub(1)
}

/// Parses JSON, reporting syntax errors with their byte offset. A result
/// envelope produced by `--json` is unwrapped to its payload.
fn parse_json(text: &str, what: &str) -> Result<Value> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        if e.is_syntax() || e.is_eof() {
            Error::input(format!(
                "malformed {what} JSON at byte offset {}: {e}",
                byte_offset(text, e.line(), e.column())
            ))
        } else {
            Error::input(format!("{what}: {e}"))
        }
    })?;
    match value {
        Value::Object(mut map)
            if map.len() == 3
                && map.contains_key("status")
                && map.contains_key("message")
                && map.contains_key("payload") =>
        {
            Ok(map.remove("payload").unwrap_or(Value::Null))
        }
        other => Ok(other),
    }
}

fn max_cone_dim() -> Result<usize> {
    match std::env::var(MAX_CONE_DIM_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Error::input(format!(
                "{MAX_CONE_DIM_VAR} must be a positive integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_MAX_DIM),
    }
}

fn bool_result(value: bool, message: impl Into<String>) -> CommandResult {
    CommandResult::ok(json!(value), value.to_string(), message)
}

fn rational_result(q: &rational::Rational, message: impl Into<String>) -> CommandResult {
    CommandResult::ok(rational::to_json(q), rational::to_text(q), message)
}

fn json_result(payload: Value, message: impl Into<String>) -> CommandResult {
    let text = serde_json::to_string_pretty(&payload).expect("values serialize");
    CommandResult::ok(payload, text, message)
}

fn cone_result(cone: &RationalCone, message: impl Into<String>) -> CommandResult {
    let payload = cone.to_json();
    let text = payload.to_string();
    CommandResult::ok(payload, text, message)
}

fn dispatch(command: Command, ctx: &mut Context<'_>) -> Result<CommandResult> {
    match command {
        Command::Model(cmd) => run_model(cmd, ctx),
        Command::Flag(cmd) => run_flag(cmd),
        Command::Toric(cmd) => run_toric(cmd, ctx),
        Command::Cone(cmd) => run_cone(cmd, ctx),
        Command::Blowup(cmd) => run_blowup(cmd, ctx),
        Command::Bundle(cmd) => run_bundle(cmd, ctx),
    }
}

fn line_bundle(ctx: &mut Context<'_>, arg: &LineBundleArg) -> Result<(VarietyModel, DivisorClass)> {
    let model = ctx.model(arg.input.file.as_deref())?;
    let l = DivisorClass::new(parse_int_list(&arg.l)?);
    Ok((model, l))
}

fn run_model(cmd: ModelCmd, ctx: &mut Context<'_>) -> Result<CommandResult> {
    match cmd {
        ModelCmd::Validate(input) => {
            let raw: VarietyModelJson = ctx.load(input.file.as_deref(), "variety model")?;
            Ok(CommandResult::report(raw.validate(), "model"))
        }
        ModelCmd::Intersect { line, curve } => {
            let (model, l) = line_bundle(ctx, &line)?;
            let record = model
                .curve(&curve)
                .ok_or_else(|| Error::input(format!("model has no curve named {curve:?}")))?;
            let deg = intersect(&model, &l, record)?;
            let q = rational::Rational::from_integer(deg);
            Ok(CommandResult::ok(
                rational::to_json(&q)["num"].clone(),
                rational::to_text(&q),
                format!("L . {curve} = {}", rational::to_text(&q)),
            ))
        }
        ModelCmd::Nef(arg) => {
            let (model, l) = line_bundle(ctx, &arg)?;
            Ok(match nef_obstruction(&model, &l)? {
                None => bool_result(true, "L has non-negative degree on every B-stable curve"),
                Some((c, d)) => bool_result(false, format!("L . {} = {d} < 0", c.name)),
            })
        }
        ModelCmd::Ample(arg) => {
            let (model, l) = line_bundle(ctx, &arg)?;
            let ample = ample_check_linebundle(&model, &l)?;
            Ok(bool_result(
                ample,
                if ample {
                    "all coefficients are positive"
                } else {
                    "some coefficient is not positive"
                },
            ))
        }
        ModelCmd::Seshadri(arg) => {
            let (model, l) = line_bundle(ctx, &arg)?;
            let eps = seshadri_line(&model, &l)?;
            Ok(rational_result(
                &eps,
                "Seshadri constant at the sink, min_i a_i",
            ))
        }
    }
}

fn run_flag(cmd: FlagCmd) -> Result<CommandResult> {
    match cmd {
        FlagCmd::Build { cartan_type } => {
            let t: CartanType = cartan_type.parse()?;
            let model = build_flag_model(t)?;
            Ok(json_result(
                serde_json::to_value(&model).expect("models serialize"),
                format!("G/B model of type {t}"),
            ))
        }
        FlagCmd::Projective { n } => {
            let model = build_projective_space_model(n)?;
            Ok(json_result(
                serde_json::to_value(&model).expect("models serialize"),
                format!("model of P^{n}"),
            ))
        }
        FlagCmd::Cartan { cartan_type } => {
            let t: CartanType = cartan_type.parse()?;
            let matrix = t.cartan_matrix();
            let text = matrix
                .iter()
                .map(|row| row.iter().map(|x| format!("{x:>3}")).collect::<String>())
                .collect::<Vec<_>>()
                .join("\n");
            Ok(CommandResult::ok(
                json!(matrix),
                text,
                format!("Cartan matrix of {t}"),
            ))
        }
    }
}

fn toric_divisor(ctx: &mut Context<'_>, arg: &ToricDivisorArg) -> Result<(Fan, ToricDivisor)> {
    let fan = ctx.fan(arg.input.file.as_deref())?;
    Ok((fan, ToricDivisor::new(parse_int_list(&arg.d)?)))
}

fn run_toric(cmd: ToricCmd, ctx: &mut Context<'_>) -> Result<CommandResult> {
    match cmd {
        ToricCmd::Validate(input) => {
            let spec: FanSpec = ctx.load(input.file.as_deref(), "fan")?;
            Ok(CommandResult::report(validate_fan(&spec), "fan"))
        }
        ToricCmd::Walls(input) => {
            let fan = ctx.fan(input.file.as_deref())?;
            let walls: Vec<Value> = fan
                .walls()
                .iter()
                .map(|w| {
                    let mut v = serde_json::to_value(w).expect("walls serialize");
                    v["label"] = json!(w.label());
                    v
                })
                .collect();
            let text = fan
                .walls()
                .iter()
                .map(|w| {
                    format!(
                        "{}: shared rays {:?}, cones {:?}, opposite rays {:?}, relation b = {:?}",
                        w.label(),
                        w.ray_indices,
                        w.cone_pair,
                        w.opposite_rays,
                        w.relation_coeffs
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok(CommandResult::ok(
                json!(walls),
                text,
                format!("{} walls", walls.len()),
            ))
        }
        ToricCmd::Degree { divisor, wall } => {
            let (fan, d) = toric_divisor(ctx, &divisor)?;
            let w = fan
                .wall(&wall)
                .ok_or_else(|| Error::input(format!("fan has no wall labelled {wall:?}")))?;
            let q = rational::Rational::from_integer(divisor_degree_on_wall(&fan, &d, w)?);
            Ok(CommandResult::ok(
                rational::to_json(&q)["num"].clone(),
                rational::to_text(&q),
                format!("degree of D on {wall}"),
            ))
        }
        ToricCmd::Nef(arg) => {
            let (fan, d) = toric_divisor(ctx, &arg)?;
            if d.coeffs.len() != fan.rays().len() {
                return Err(Error::DimensionMismatch {
                    expected: fan.rays().len(),
                    found: d.coeffs.len(),
                });
            }
            Ok(match toric_nef_obstruction(&fan, &d)? {
                None => bool_result(true, "D has non-negative degree on every invariant curve"),
                Some((w, deg)) => {
                    bool_result(false, format!("D has degree {deg} on wall {}", w.label()))
                }
            })
        }
        ToricCmd::Seshadri { divisor, cone } => {
            let (fan, d) = toric_divisor(ctx, &divisor)?;
            let eps = seshadri_toric_fixed_point(&fan, &d, cone)?;
            Ok(rational_result(
                &eps,
                format!("Seshadri constant at the fixed point of cone {cone}"),
            ))
        }
    }
}

fn run_cone(cmd: ConeCmd, ctx: &mut Context<'_>) -> Result<CommandResult> {
    let bound = max_cone_dim()?;
    match cmd {
        ConeCmd::Dual(input) => {
            let cone = ctx.cone(input.file.as_deref())?;
            Ok(cone_result(&dual_cone_bounded(&cone, bound)?, "dual cone"))
        }
        ConeCmd::Contains { input, v } => {
            let cone = ctx.cone(input.file.as_deref())?;
            let v = parse_rational_list(&v)?;
            let inside = contains_bounded(&cone, &v, bound)?;
            Ok(bool_result(
                inside,
                if inside {
                    "v lies in the cone"
                } else {
                    "v lies outside the cone"
                },
            ))
        }
        ConeCmd::Equal { first, second } => {
            let a = ctx.cone(Some(&first))?;
            let b = ctx.cone(Some(&second))?;
            Ok(bool_result(cones_equal_bounded(&a, &b, bound)?, ""))
        }
    }
}

fn run_blowup(cmd: BlowupCmd, ctx: &mut Context<'_>) -> Result<CommandResult> {
    match cmd {
        BlowupCmd::Build(input) => {
            let bm = build_blowup(&ctx.model(input.file.as_deref())?);
            Ok(json_result(
                serde_json::to_value(&bm).expect("blow-up serializes"),
                "rows: divisor basis, columns: curve basis",
            ))
        }
        BlowupCmd::Nefcone(input) => {
            let bm = build_blowup(&ctx.model(input.file.as_deref())?);
            Ok(cone_result(
                &blowup_nef_generators(&bm),
                format!("nef cone in basis {:?}", bm.divisor_basis()),
            ))
        }
        BlowupCmd::Moricone(input) => {
            let bm = build_blowup(&ctx.model(input.file.as_deref())?);
            Ok(cone_result(
                &blowup_mori_generators(&bm),
                format!("Mori cone in basis {:?}", bm.curve_basis()),
            ))
        }
        BlowupCmd::Isnef { input, b, c } => {
            let bm = build_blowup(&ctx.model(input.file.as_deref())?);
            let b = parse_rational_list(&b)?;
            let c = parse_rational(&c)?;
            let nef = is_nef_on_blowup(&bm, &b, &c)?;
            let message = match bm.nef_witness(&b, &c)? {
                Some((curve, value)) => format!(
                    "Bl*L - cE is not a nef line bundle: its intersection with {curve} is {}",
                    rational::to_text(&value)
                ),
                None => "Bl*L - cE is nef (c >= 0 and b_j >= c for all j)".to_string(),
            };
            Ok(bool_result(nef, message))
        }
        BlowupCmd::Seshadri(arg) => {
            let (model, l) = line_bundle(ctx, &arg)?;
            let eps = seshadri_via_blowup(&build_blowup(&model), &l)?;
            Ok(rational_result(
                &eps,
                "largest lambda with Bl*L - lambda E nef",
            ))
        }
    }
}

fn run_bundle(cmd: BundleCmd, ctx: &mut Context<'_>) -> Result<CommandResult> {
    let (args, cone) = match &cmd {
        BundleCmd::Validate(a) | BundleCmd::Nef(a) | BundleCmd::Ample(a) => (a, None),
        BundleCmd::Seshadri { args, cone } => (args, *cone),
    };
    // the base is loaded first so that `--model -` can take stdin
    let model;
    let fan;
    let base = if let Some(path) = &args.fan {
        fan = ctx.fan(Some(path))?;
        BundleBase::Toric(&fan)
    } else {
        model = ctx.model(args.model.as_deref())?;
        BundleBase::Simple(&model)
    };
    let splitting: SplittingData = ctx
        .load::<SplittingData>(args.splitting.as_deref(), "splitting data")?
        .canonical();

    match cmd {
        BundleCmd::Validate(_) => Ok(CommandResult::report(
            validate_splitting(&base, &splitting),
            "splitting data",
        )),
        BundleCmd::Nef(_) => Ok(match bundle_nef_obstruction(&base, &splitting)? {
            None => bool_result(
                true,
                "every summand on every invariant curve has degree >= 0",
            ),
            Some((curve, a)) => bool_result(
                false,
                format!("the restriction to {curve} has a summand O({a})"),
            ),
        }),
        BundleCmd::Ample(_) => {
            let ample = ample_check_bundle(&base, &splitting)?;
            Ok(bool_result(
                ample,
                if ample {
                    "every summand on every B-stable curve has degree >= 1"
                } else {
                    "some summand has degree <= 0"
                },
            ))
        }
        BundleCmd::Seshadri { .. } => {
            let eps = seshadri_bundle(&base, &splitting, cone)?;
            Ok(rational_result(
                &eps,
                "minimum splitting degree over curves through the point",
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_with(args: &[&str], stdin: &str) -> CommandResult {
        let mut input = stdin.as_bytes();
        run(
            std::iter::once("poskit").chain(args.iter().copied()),
            &mut input,
        )
    }

    fn flag_model(t: &str) -> String {
        run_with(&["flag", "build", t], "").text
    }

    #[test]
    fn flag_build_then_seshadri() {
        let model = flag_model("A3");
        let out = run_with(&["blowup", "seshadri", "--L", "3,1,2"], &model);
        assert_eq!(out.status, Status::Ok);
        assert_eq!(out.text, "1");
        assert_eq!(out.payload, Some(json!({"num": 1, "den": 1})));
    }

    #[test]
    fn isnef_failure_message() {
        let model = flag_model("A2");
        let out = run_with(&["blowup", "isnef", "--b", "1,0", "--c", "1"], &model);
        assert_eq!(out.status, Status::Ok);
        assert_eq!(out.text, "false");
        assert!(out.message.contains("not a nef line bundle"));
        assert!(out.message.contains("C2~ is -1"));
    }

    #[test]
    fn refusal_and_input_errors() {
        let model = flag_model("A2");
        let out = run_with(&["model", "seshadri", "--L", "0,1"], &model);
        assert_eq!(out.status, Status::Refused);
        assert_eq!(out.exit_code(), 3);
        assert!(out.message.contains("ample"));

        let out = run_with(&["frobnicate"], "");
        assert_eq!(out.exit_code(), 2);

        let out = run_with(&["model", "validate"], "{\"name\": \"x\",\n  \"rank\": }");
        assert_eq!(out.status, Status::InputError);
        assert!(out.message.contains("byte offset 24"), "{}", out.message);

        let out = run_with(&["model", "nef", "--L", "1,2,3"], &model);
        assert_eq!(out.status, Status::InputError);
    }

    #[test]
    fn json_envelope_is_accepted_as_input() {
        let env = run_with(&["flag", "build", "B2", "--json"], "").to_json();
        let out = run_with(&["model", "seshadri", "--L", "4,2"], &env.to_string());
        assert_eq!(out.text, "2");
    }

    #[test]
    fn negative_values_parse() {
        let model = flag_model("A2");
        let out = run_with(&["model", "nef", "--L", "-1,5"], &model);
        assert_eq!(out.text, "false");
        assert!(out.message.contains("C1"));
    }

    #[test]
    fn byte_offsets() {
        assert_eq!(byte_offset("abc\ndef", 2, 2), 5);
        assert_eq!(byte_offset("abc", 1, 1), 0);
    }
}
