//! Command-line front end for the `bairecf` library.
//!
//! [`run`] parses an argument vector, dispatches to the library and returns
//! a [`CommandResult`]; the binary only prints it and sets the exit code.

use std::collections::BTreeSet;
use std::io::Read;
use std::path::Path;

use bairecf::cover::enumerate_levels;
use bairecf::ultra::{
    build_cover_sequence, disjointify, sierpinski_embed, ultrametric_from_covers,
    verify_ball_properties, verify_base_equality, verify_ultrametric, CoverSequence,
    CoverSequenceJson, DistanceTable, FiniteSpace, FiniteSpaceJson,
};
use bairecf::{
    baire_distance, check_ball_image, children, convergents, cylinder_of_ball, euclid_div,
    evaluate, evaluate_with_tail, expand_rational, expand_surd, first_difference, interval_of,
    locate, phi_forward, phi_inverse, psi_inverse, psi_map, surd_compare, verify_cover_properties,
    Baire2Prefix, BairePrefix, CoverMember, DigitWord, QuadraticSurd, Rational,
};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

/// Environment variable capping every depth, level and bound argument.
pub const MAX_DEPTH_VAR: &str = "BAIRECF_MAX_DEPTH";
pub const DEFAULT_MAX_DEPTH: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Ok,
    /// Malformed or out-of-domain input.
    InputError,
    /// Unknown subcommand or bad flags.
    UsageError,
    /// A verify subcommand found a counterexample.
    VerificationFailed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::InputError => 1,
            Status::UsageError => 2,
            Status::VerificationFailed => 3,
        }
    }
}

/// Outcome of one invocation. A string payload is printed verbatim, any
/// other JSON value is printed as one line of JSON; `Null` prints nothing.
#[derive(Clone, PartialEq, Debug)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub message: Option<String>,
}

impl CommandResult {
    fn ok(payload: Value) -> Self {
        CommandResult {
            status: Status::Ok,
            payload,
            message: None,
        }
    }

    fn error(status: Status, message: impl Into<String>) -> Self {
        CommandResult {
            status,
            payload: Value::Null,
            message: Some(message.into()),
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    /// The text written to stdout, with a trailing newline when non-empty.
    pub fn stdout(&self) -> String {
        let mut out = match &self.payload {
            Value::Null => String::new(),
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        if !out.is_empty() && !out.ends_with('\n') {
            out.push('\n');
        }
        out
    }
}

#[derive(Parser, Debug)]
#[command(name = "bairecf", version, about = "Exact continued fractions, Baire space and ultrametrics")]
struct Cli {
    /// Print the payload as a single JSON document.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integer and rational arithmetic.
    #[command(subcommand)]
    Rat(RatCmd),
    /// Continued fractions of rationals.
    #[command(subcommand)]
    Cf(CfCmd),
    /// Quadratic surds (p+q*sqrt(d))/r.
    #[command(subcommand)]
    Surd(SurdCmd),
    /// Points of Baire space and B2.
    #[command(subcommand)]
    Baire(BaireCmd),
    /// The interval covers of the irrationals.
    #[command(subcommand)]
    Cover(CoverCmd),
    /// The homeomorphism between B2 and the irrationals.
    #[command(subcommand)]
    Homeo(HomeoCmd),
    /// Finite metric spaces, cover sequences and ultrametrics.
    #[command(subcommand)]
    Ultra(UltraCmd),
    /// Embed the points of a cover sequence into Baire space.
    Embed {
        /// Cover sequence JSON file, or - for stdin.
        #[arg(long)]
        covers: String,
    },
}

#[derive(Subcommand, Debug)]
enum RatCmd {
    /// Floor division a = b*q + r with 0 <= r < b.
    Div {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
}

#[derive(Subcommand, Debug)]
enum CfCmd {
    /// Canonical continued fraction of a rational.
    Expand {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Value of a word, optionally with a rational tail appended.
    Eval {
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(long, allow_hyphen_values = true)]
        tail: Option<String>,
    },
    /// Values of all prefixes of a word.
    Convergents { word: String },
}

#[derive(Subcommand, Debug)]
enum SurdCmd {
    /// The first depth+1 continued-fraction digits.
    Expand {
        #[arg(allow_hyphen_values = true)]
        s: String,
        #[arg(long)]
        depth: usize,
    },
    /// Compare against a rational: LT or GT.
    Compare {
        #[arg(allow_hyphen_values = true)]
        s: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    Floor {
        #[arg(allow_hyphen_values = true)]
        s: String,
    },
    /// 1/(s - floor(s)).
    Recip {
        #[arg(allow_hyphen_values = true)]
        s: String,
    },
}

#[derive(Args, Debug)]
struct PairArgs {
    f: String,
    g: String,
    /// Number of leading entries that may be compared.
    #[arg(long)]
    bound: usize,
    /// Read the points as elements of B2.
    #[arg(long)]
    b2: bool,
}

#[derive(Subcommand, Debug)]
enum BaireCmd {
    /// Tagged distance, EXACT v or AT_MOST v.
    Dist(PairArgs),
    /// First index where the points differ, or "none".
    Diff(PairArgs),
    /// The cylinder equal to the open ball of the given radius.
    Cyl {
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        radius: String,
        #[arg(long)]
        b2: bool,
    },
    /// The isometry from Baire space onto B2, or its inverse.
    Psi {
        point: String,
        #[arg(long)]
        inverse: bool,
    },
}

#[derive(Subcommand, Debug)]
enum CoverCmd {
    /// Members of one level under a fixed head digit, as JSON lines.
    Show {
        #[arg(long)]
        level: usize,
        #[arg(long, allow_hyphen_values = true)]
        a0: i64,
        #[arg(long)]
        max_digit: u64,
    },
    /// Check disjointness, refinement and mesh on a finite enumeration.
    Verify {
        #[arg(long)]
        max_level: usize,
        #[arg(long, allow_hyphen_values = true)]
        a0_min: i64,
        #[arg(long, allow_hyphen_values = true)]
        a0_max: i64,
        #[arg(long)]
        max_digit: u64,
    },
    /// The interval addressed by a word.
    Interval { word: String },
    /// Members one level below a word, for last digits 1..=k-max.
    Children {
        word: String,
        #[arg(long)]
        k_max: u64,
    },
    /// The member of a level containing a surd.
    Locate {
        #[arg(allow_hyphen_values = true)]
        s: String,
        #[arg(long)]
        level: usize,
    },
}

#[derive(Subcommand, Debug)]
enum HomeoCmd {
    /// Enclosing interval of the image of a B2 point.
    Fwd {
        #[arg(long)]
        point: String,
        #[arg(long)]
        depth: usize,
    },
    /// Leading coordinates of the preimage of a surd.
    Inv {
        #[arg(long, allow_hyphen_values = true)]
        surd: String,
        #[arg(long)]
        depth: usize,
    },
    /// Image of the ball of radius 1/n around a B2 point.
    Ball {
        #[arg(long)]
        point: String,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
enum UltraCmd {
    /// Shrinking refining partitions of a finite metric space.
    Build {
        /// Finite space JSON file, or - for stdin.
        #[arg(long)]
        space: String,
        #[arg(long)]
        depth: usize,
    },
    /// The ultrametric induced by a cover sequence.
    Rho {
        #[arg(long)]
        covers: String,
    },
    /// Check the ultrametric inequality and the ball properties of a table.
    Verify {
        #[arg(long)]
        table: String,
    },
    /// Compare the balls of the induced ultrametric with the cover blocks.
    BaseEq {
        #[arg(long)]
        covers: String,
        /// Distance table to compare with; defaults to the induced one.
        #[arg(long)]
        table: Option<String>,
    },
    /// Disjoint refinement of an ordered list of sets.
    Disjointify {
        /// JSON file {"sets": [[ids]]}, or - for stdin.
        #[arg(long)]
        sets: String,
    },
}

/// Runs with the depth cap taken from the environment.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match max_depth_from_env() {
        Ok(cap) => run_with_limit(argv, cap),
        Err(msg) => CommandResult::error(Status::UsageError, msg),
    }
}

fn max_depth_from_env() -> Result<usize, String> {
    match std::env::var(MAX_DEPTH_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{MAX_DEPTH_VAR} must be a non-negative integer, got {v:?}")),
        Err(_) => Ok(DEFAULT_MAX_DEPTH),
    }
}

/// Runs with an explicit depth cap. `argv[0]` is the program name.
pub fn run_with_limit<I, T>(argv: I, max_depth: usize) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    CommandResult::ok(Value::String(text))
                }
                _ => {
                    let text = text.strip_prefix("error: ").unwrap_or(&text);
                    CommandResult::error(Status::UsageError, text.trim_end())
                }
            };
        }
    };
    let ctx = Ctx {
        json: cli.json,
        max_depth,
    };
    match dispatch(&ctx, cli.command) {
        Ok(result) => result,
        Err(msg) => CommandResult::error(Status::InputError, msg),
    }
}

struct Ctx {
    json: bool,
    max_depth: usize,
}

type Outcome = Result<CommandResult, String>;

impl Ctx {
    /// Text payload by default, `value` under `--json`.
    fn emit(&self, text: String, value: Value) -> Outcome {
        Ok(CommandResult::ok(if self.json { value } else { Value::String(text) }))
    }

    /// Like [`Ctx::emit`], but exits with the verification status on failure.
    fn verdict(&self, passed: bool, text: String, value: Value) -> Outcome {
        let mut result = self.emit(text, value)?;
        if !passed {
            result.status = Status::VerificationFailed;
            result.message = Some("verification failed".into());
        }
        Ok(result)
    }

    fn cap(&self, what: &str, n: usize) -> Result<usize, String> {
        if n > self.max_depth {
            Err(format!(
                "{what} {n} exceeds the limit {} set by {MAX_DEPTH_VAR}",
                self.max_depth
            ))
        } else {
            Ok(n)
        }
    }
}

fn parse<T: std::str::FromStr<Err = bairecf::Error>>(s: &str) -> Result<T, String> {
    s.parse().map_err(|e: bairecf::Error| e.to_string())
}

fn lib<T>(r: bairecf::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn to_json<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("report types serialize")
}

fn digits_json(digits: &[BigInt]) -> Value {
    Value::Array(digits.iter().map(|d| Value::String(d.to_string())).collect())
}

fn dispatch(ctx: &Ctx, command: Command) -> Outcome {
    match command {
        Command::Rat(cmd) => rat(ctx, cmd),
        Command::Cf(cmd) => cf(ctx, cmd),
        Command::Surd(cmd) => surd(ctx, cmd),
        Command::Baire(cmd) => baire(ctx, cmd),
        Command::Cover(cmd) => cover(ctx, cmd),
        Command::Homeo(cmd) => homeo(ctx, cmd),
        Command::Ultra(cmd) => ultra(ctx, cmd),
        Command::Embed { covers } => embed(ctx, &covers),
    }
}

fn rat(ctx: &Ctx, cmd: RatCmd) -> Outcome {
    match cmd {
        RatCmd::Div { a, b } => {
            let a: BigInt = parse_bigint(&a)?;
            let b: BigInt = parse_bigint(&b)?;
            let (q, r) = lib(euclid_div(&a, &b))?;
            ctx.emit(format!("{q} {r}"), json!({"q": q.to_string(), "r": r.to_string()}))
        }
    }
}

fn parse_bigint(s: &str) -> Result<BigInt, String> {
    let ok = !s.is_empty() && s.strip_prefix('-').unwrap_or(s).bytes().all(|b| b.is_ascii_digit());
    match ok.then(|| s.parse::<BigInt>().ok()).flatten() {
        Some(v) => Ok(v),
        None => Err(format!("parse error at {s:?}: expected an integer")),
    }
}

fn cf(ctx: &Ctx, cmd: CfCmd) -> Outcome {
    match cmd {
        CfCmd::Expand { x } => {
            let x: Rational = parse(&x)?;
            let w = lib(expand_rational(&x))?;
            ctx.emit(w.to_string(), json!({"word": w.to_string(), "digits": digits_json(w.digits())}))
        }
        CfCmd::Eval { word, tail } => {
            let w: DigitWord = parse(&word)?;
            let v = match tail {
                Some(t) => lib(evaluate_with_tail(&w, &parse(&t)?))?,
                None => evaluate(&w),
            };
            ctx.emit(v.to_string(), json!({"value": v}))
        }
        CfCmd::Convergents { word } => {
            let w: DigitWord = parse(&word)?;
            let c: Vec<Rational> = convergents(&w);
            let text = c.iter().map(Rational::to_string).collect::<Vec<_>>().join("\n");
            ctx.emit(text, json!({"convergents": c}))
        }
    }
}

fn surd(ctx: &Ctx, cmd: SurdCmd) -> Outcome {
    match cmd {
        SurdCmd::Expand { s, depth } => {
            let s: QuadraticSurd = parse(&s)?;
            let w = expand_surd(&s, ctx.cap("depth", depth)?);
            ctx.emit(w.to_string(), json!({"word": w.to_string(), "digits": digits_json(w.digits())}))
        }
        SurdCmd::Compare { s, x } => {
            let s: QuadraticSurd = parse(&s)?;
            let x: Rational = parse(&x)?;
            let ord = match surd_compare(&s, &x) {
                std::cmp::Ordering::Less => "LT",
                std::cmp::Ordering::Greater => "GT",
                std::cmp::Ordering::Equal => unreachable!("surds are irrational"),
            };
            ctx.emit(ord.into(), json!({"ordering": ord}))
        }
        SurdCmd::Floor { s } => {
            let s: QuadraticSurd = parse(&s)?;
            let f = s.floor();
            ctx.emit(f.to_string(), json!({"floor": f.to_string()}))
        }
        SurdCmd::Recip { s } => {
            let s: QuadraticSurd = parse(&s)?;
            let t = s.recip_frac();
            ctx.emit(t.to_string(), json!({"surd": t.to_string()}))
        }
    }
}

/// Parses a pair of points of B or B2 and applies `f` to them.
fn with_pair<R>(
    args: &PairArgs,
    on_b: impl FnOnce(&BairePrefix, &BairePrefix, usize) -> bairecf::Result<R>,
    on_b2: impl FnOnce(&Baire2Prefix, &Baire2Prefix, usize) -> bairecf::Result<R>,
) -> Result<R, String> {
    if args.b2 {
        lib(on_b2(&parse(&args.f)?, &parse(&args.g)?, args.bound))
    } else {
        lib(on_b(&parse(&args.f)?, &parse(&args.g)?, args.bound))
    }
}

fn baire(ctx: &Ctx, cmd: BaireCmd) -> Outcome {
    match cmd {
        BaireCmd::Dist(args) => {
            ctx.cap("bound", args.bound)?;
            let d = with_pair(&args, baire_distance, baire_distance)?;
            let kind = if d.is_exact() { "EXACT" } else { "AT_MOST" };
            ctx.emit(d.to_string(), json!({"kind": kind, "value": d.value()}))
        }
        BaireCmd::Diff(args) => {
            ctx.cap("bound", args.bound)?;
            let k = with_pair(&args, first_difference, first_difference)?;
            let text = k.map_or_else(|| "none".to_string(), |k| k.to_string());
            ctx.emit(text, json!({"index": k}))
        }
        BaireCmd::Cyl { f, radius, b2 } => {
            let r: Rational = parse(&radius)?;
            let text = if b2 {
                lib(cylinder_of_ball(&parse::<Baire2Prefix>(&f)?, &r))?.to_string()
            } else {
                lib(cylinder_of_ball(&parse::<BairePrefix>(&f)?, &r))?.to_string()
            };
            ctx.emit(text.clone(), json!({"cylinder": text}))
        }
        BaireCmd::Psi { point, inverse } => {
            let image = if inverse {
                psi_inverse(&parse(&point)?).to_string()
            } else {
                psi_map(&parse(&point)?).to_string()
            };
            ctx.emit(image.clone(), json!({"point": image}))
        }
    }
}

fn member_json(m: &CoverMember) -> Value {
    json!({"word": m.word().to_string(), "lo": m.interval().lo(), "hi": m.interval().hi()})
}

/// JSON lines by default, one JSON array under `--json`.
fn emit_members(ctx: &Ctx, members: &[CoverMember]) -> Outcome {
    let values: Vec<Value> = members.iter().map(member_json).collect();
    let lines = values.iter().map(Value::to_string).collect::<Vec<_>>().join("\n");
    ctx.emit(lines, Value::Array(values))
}

fn check_line(name: &str, c: &bairecf::PropertyCheck) -> String {
    let verdict = if c.passed { "PASS" } else { "FAIL" };
    let mut line = format!("{name}: {verdict} ({} checked)", c.checked);
    if !c.counterexample.is_empty() {
        line.push_str(&format!(" {}", c.counterexample));
    }
    line
}

fn cover(ctx: &Ctx, cmd: CoverCmd) -> Outcome {
    match cmd {
        CoverCmd::Show { level, a0, max_digit } => {
            let levels = lib(enumerate_levels(ctx.cap("level", level)?, (a0, a0), max_digit))?;
            emit_members(ctx, &levels[level])
        }
        CoverCmd::Verify { max_level, a0_min, a0_max, max_digit } => {
            let report = lib(verify_cover_properties(
                ctx.cap("level", max_level)?,
                (a0_min, a0_max),
                max_digit,
            ))?;
            let mut lines = vec![format!(
                "members per level: {}",
                report.members_per_level.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" ")
            )];
            lines.push(format!(
                "mesh per level: {}",
                report.level_mesh.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" ")
            ));
            for (name, c) in [
                ("disjoint", &report.disjoint),
                ("refines", &report.refines),
                ("closure_refines", &report.closure_refines),
                ("mesh", &report.mesh),
            ] {
                lines.push(check_line(name, c));
            }
            ctx.verdict(report.passed(), lines.join("\n"), to_json(&report))
        }
        CoverCmd::Interval { word } => {
            let iv = interval_of(&parse(&word)?);
            ctx.emit(iv.to_string(), json!({"lo": iv.lo(), "hi": iv.hi()}))
        }
        CoverCmd::Children { word, k_max } => emit_members(ctx, &children(&parse(&word)?, k_max)),
        CoverCmd::Locate { s, level } => {
            let w = lib(locate(&parse(&s)?, ctx.cap("level", level)?))?;
            let iv = interval_of(&w);
            ctx.emit(
                format!("{w} {iv}"),
                json!({"word": w.to_string(), "lo": iv.lo(), "hi": iv.hi()}),
            )
        }
    }
}

fn homeo(ctx: &Ctx, cmd: HomeoCmd) -> Outcome {
    match cmd {
        HomeoCmd::Fwd { point, depth } => {
            let p: Baire2Prefix = parse(&point)?;
            let a = lib(phi_forward(&p, ctx.cap("depth", depth)?))?;
            ctx.emit(
                format!("word {}\ninterval {}\nmidpoint {}", a.word, a.interval, a.midpoint),
                json!({
                    "word": a.word.to_string(),
                    "lo": a.interval.lo(),
                    "hi": a.interval.hi(),
                    "midpoint": a.midpoint,
                }),
            )
        }
        HomeoCmd::Inv { surd, depth } => {
            let s: QuadraticSurd = parse(&surd)?;
            let p = lib(phi_inverse(&s, ctx.cap("depth", depth)?))?;
            ctx.emit(p.to_string(), json!({"digits": digits_json(p.entries())}))
        }
        HomeoCmd::Ball { point, n } => {
            let p: Baire2Prefix = parse(&point)?;
            let img = lib(check_ball_image(&p, ctx.cap("n", n)?))?;
            let cyl = Baire2Prefix::new(img.cylinder.clone(), None).expect("digits of a B2 point");
            ctx.verdict(
                img.all_inside,
                format!(
                    "cylinder {cyl}\ninterval {}\nsamples {} inside {}",
                    img.interval, img.samples, img.all_inside
                ),
                json!({
                    "cylinder": digits_json(&img.cylinder),
                    "lo": img.interval.lo(),
                    "hi": img.interval.hi(),
                    "samples": img.samples,
                    "all_inside": img.all_inside,
                }),
            )
        }
    }
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("cannot read stdin: {e}"))?;
        Ok(s)
    } else {
        std::fs::read_to_string(Path::new(path)).map_err(|e| format!("cannot read {path}: {e}"))
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T, String> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(|e| {
        let line = text.lines().nth(e.line().saturating_sub(1)).unwrap_or("").trim();
        format!("parse error at {line:?}: {e}")
    })
}

fn read_covers(path: &str) -> Result<CoverSequence, String> {
    lib(CoverSequence::from_json(&read_json::<CoverSequenceJson>(path)?))
}

fn set_text(ids: &[String], block: &[usize]) -> String {
    let names: Vec<&str> = block.iter().map(|&i| ids[i].as_str()).collect();
    format!("{{{}}}", names.join(","))
}

fn covers_text(seq: &CoverSequence) -> String {
    seq.levels()
        .iter()
        .enumerate()
        .map(|(i, level)| {
            let blocks: Vec<String> = level.iter().map(|b| set_text(seq.ids(), b)).collect();
            format!("level {i}: {}", blocks.join(" "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn table_text(table: &DistanceTable) -> String {
    let ids = table.ids();
    let mut lines = Vec::new();
    for i in 0..ids.len() {
        for j in i + 1..ids.len() {
            lines.push(format!("d({}, {}) = {}", ids[i], ids[j], table.get(i, j)));
        }
    }
    lines.join("\n")
}

#[derive(serde::Deserialize)]
struct SetsJson {
    sets: Vec<Vec<String>>,
}

fn ultra(ctx: &Ctx, cmd: UltraCmd) -> Outcome {
    match cmd {
        UltraCmd::Build { space, depth } => {
            let space = lib(FiniteSpace::from_json(&read_json::<FiniteSpaceJson>(&space)?))?;
            let seq = lib(build_cover_sequence(&space, ctx.cap("depth", depth)?))?;
            ctx.emit(covers_text(&seq), to_json(&seq.to_json()))
        }
        UltraCmd::Rho { covers } => {
            let seq = read_covers(&covers)?;
            let table = lib(ultrametric_from_covers(&seq))?;
            ctx.emit(table_text(&table), to_json(&table.to_json()))
        }
        UltraCmd::Verify { table } => {
            let table = lib(DistanceTable::from_json(&read_json::<FiniteSpaceJson>(&table)?))?;
            let ultra = verify_ultrametric(&table);
            let balls = verify_ball_properties(&table);
            let mut lines = vec![
                check_line("strong_triangle", &ultra.strong_triangle),
                check_line("isosceles", &ultra.isosceles),
            ];
            for (name, c) in [
                ("precondition", &balls.precondition),
                ("nested", &balls.nested),
                ("equal_radius", &balls.equal_radius),
                ("every_point_center", &balls.every_point_center),
                ("closed_ball_absorbs", &balls.closed_ball_absorbs),
                ("unions_clopen", &balls.unions_clopen),
            ] {
                lines.push(check_line(name, c));
            }
            ctx.verdict(
                ultra.passed() && balls.passed(),
                lines.join("\n"),
                json!({"ultrametric": to_json(&ultra), "balls": to_json(&balls)}),
            )
        }
        UltraCmd::BaseEq { covers, table } => {
            let seq = read_covers(&covers)?;
            let table = match table {
                Some(path) => lib(DistanceTable::from_json(&read_json::<FiniteSpaceJson>(&path)?))?,
                None => lib(ultrametric_from_covers(&seq))?,
            };
            let report = lib(verify_base_equality(&seq, &table))?;
            let mut text = format!(
                "base equality: {} (balls {}, cover sets {})",
                if report.passed { "PASS" } else { "FAIL" },
                report.balls,
                report.cover_sets
            );
            for set in &report.only_balls {
                text.push_str(&format!("\nball only: {{{}}}", set.join(",")));
            }
            for set in &report.only_covers {
                text.push_str(&format!("\ncover only: {{{}}}", set.join(",")));
            }
            ctx.verdict(report.passed, text, to_json(&report))
        }
        UltraCmd::Disjointify { sets } => {
            let input: SetsJson = read_json(&sets)?;
            let family: Vec<BTreeSet<String>> =
                input.sets.iter().map(|s| s.iter().cloned().collect()).collect();
            let ground: BTreeSet<String> = family.iter().flatten().cloned().collect();
            let parts = lib(disjointify(&family, &ground))?;
            let text = parts
                .iter()
                .map(|p| format!("{{{}}}", p.iter().cloned().collect::<Vec<_>>().join(",")))
                .collect::<Vec<_>>()
                .join(" ");
            ctx.emit(text, json!({"sets": parts}))
        }
    }
}

fn embed(ctx: &Ctx, covers: &str) -> Outcome {
    let seq = read_covers(covers)?;
    let codes = sierpinski_embed(&seq);
    let pairs: Vec<(&String, String)> = seq.ids().iter().zip(codes.iter().map(|c| c.to_string())).collect();
    let text = pairs
        .iter()
        .map(|(id, code)| format!("{id} {code}"))
        .collect::<Vec<_>>()
        .join("\n");
    let value = Value::Array(
        pairs
            .iter()
            .map(|(id, code)| json!({"point": id, "code": code}))
            .collect(),
    );
    ctx.emit(text, value)
}
