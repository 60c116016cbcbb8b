mod bundle;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use conres_core::bmspace::{self, AxiomTable, ColumnSpec, Script, SpaceExpr};
use conres_core::casebook::{self, CaseReport, RunOptions, Verdict};
use conres_core::cohring::{self, presets, GradedRing, Presentation};
use conres_core::hodgepoly::{self, Division, MHPolynomial, SpecializeMode};
use conres_core::specseq::{self, Constraint, DifferentialFact, Page, Status};
use conres_core::strata::{self, Level, StratificationModel};
use conres_core::TwistedDims;

const EXIT_SCHEMA: u8 = 2;
const EXIT_COMPUTE: u8 = 3;
const EXIT_CHECK: u8 = 4;

#[derive(Parser)]
#[command(
    name = "conres",
    version,
    about = "Exact bookkeeping for conical resolutions of discriminants"
)]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Write results here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Graded quotient rings.
    #[command(subcommand)]
    Ring(RingCmd),
    /// Chern classes.
    #[command(subcommand)]
    Chern(ChernCmd),
    /// Borel-Moore homology of space expressions.
    #[command(subcommand)]
    Space(SpaceCmd),
    /// Spectral sequences.
    #[command(subcommand)]
    Ss(SsCmd),
    /// Mixed Hodge polynomials.
    #[command(subcommand)]
    Hodge(HodgeCmd),
    /// Stratification models.
    #[command(subcommand)]
    Strata(StrataCmd),
    /// Case studies.
    #[command(subcommand)]
    Case(CaseCmd),
}

#[derive(Args)]
struct RingSource {
    /// Built-in presentation (pair-n2, flag-n2, cp2, ...).
    #[arg(long, conflicts_with = "presentation")]
    preset: Option<String>,
    /// JSON presentation file.
    #[arg(long)]
    presentation: Option<String>,
}

#[derive(Subcommand)]
enum RingCmd {
    /// Dimensions of the even-degree pieces.
    Dims(RingSource),
    /// Normal form of a polynomial expression.
    Nf {
        #[command(flatten)]
        ring: RingSource,
        expr: String,
    },
}

#[derive(Subcommand)]
enum ChernCmd {
    /// Chern class of theta_{d,n} on ordered point pairs.
    Theta {
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 2)]
        n: u32,
        /// Compare the closed formula with the exact-sequence route.
        #[arg(long)]
        check: bool,
    },
    /// Chern classes of xi', eta' and c1 of their quotient.
    XiEta,
    /// Evaluate a JSON bundle expression.
    Eval { input: String },
}

#[derive(Subcommand)]
enum SpaceCmd {
    /// Evaluate a space expression, script or column spec (JSON).
    Eval { input: String },
}

#[derive(Args)]
struct SsInputArgs {
    /// Built-in input (lastcolq, quartic-e1, cubic-e1, cubic-grid).
    #[arg(long)]
    preset: Option<String>,
    /// JSON file with `page`, `facts` and `constraints`.
    input: Option<String>,
}

#[derive(Subcommand)]
enum SsCmd {
    /// Run to the stable page with the given facts.
    Run(SsInputArgs),
    /// Exhaustive inference of unknown differentials.
    Infer {
        #[command(flatten)]
        src: SsInputArgs,
        #[arg(long, env = "CONRES_SEARCH_BOUND", default_value_t = specseq::DEFAULT_SEARCH_BOUND)]
        search_bound: u64,
    },
}

#[derive(Subcommand)]
enum HodgeCmd {
    /// Borel-Moore totals (JSON) to the polynomial of the complement.
    Dualize {
        #[arg(long)]
        ambient_dim: i64,
        input: String,
    },
    Specialize {
        poly: String,
        #[arg(long, default_value = "poincare")]
        mode: SpecializeMode,
    },
    /// Exact division in Z[t, u^±1, v^±1].
    Divide { dividend: String, divisor: String },
}

#[derive(Subcommand)]
enum StrataCmd {
    Validate {
        /// singular-cubics, singular-cubics-refined, cubic-flag, quartic.
        #[arg(long)]
        preset: Option<String>,
        input: Option<String>,
        #[arg(long, default_value = "5")]
        level: Level,
        /// Also check the quartic geometrization table.
        #[arg(long)]
        table: bool,
    },
}

#[derive(Subcommand)]
enum CaseCmd {
    /// Run the full pipeline on a built-in case or a JSON file.
    Run {
        case: String,
        /// Only print this stage (a..e).
        #[arg(long)]
        stage: Option<String>,
        #[arg(long, env = "CONRES_SEARCH_BOUND", default_value_t = specseq::DEFAULT_SEARCH_BOUND)]
        search_bound: u64,
    },
    List,
    /// Print a case as JSON.
    Export {
        case: String,
    },
}

enum Fail {
    Schema(String),
    Compute(String),
}

impl Fail {
    fn schema(e: impl std::fmt::Display) -> Self {
        Fail::Schema(e.to_string())
    }
    fn compute(e: impl std::fmt::Display) -> Self {
        Fail::Compute(e.to_string())
    }
}

struct Output {
    text: String,
    json: Value,
    /// Exit code for a well-formed result that failed its check.
    check_failed: bool,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output {
            text: text.into(),
            json,
            check_failed: false,
        }
    }
}

type CmdResult = Result<Output, Fail>;

/// `-` is stdin, an existing path is read, anything else is taken literally.
fn read_input(arg: &str) -> Result<String, Fail> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(Fail::schema)?;
        return Ok(s);
    }
    let path = std::path::Path::new(arg);
    if path.is_file() {
        return std::fs::read_to_string(path).map_err(|e| Fail::Schema(format!("{arg}: {e}")));
    }
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(arg.to_string());
    }
    Err(Fail::Schema(format!("{arg}: no such file")))
}

fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T, Fail> {
    serde_json::from_str(text).map_err(Fail::schema)
}

fn to_json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn load_ring(src: &RingSource) -> Result<Arc<GradedRing>, Fail> {
    let p: Presentation = match (&src.preset, &src.presentation) {
        (Some(name), None) => presets::preset_presentation(name).map_err(Fail::schema)?,
        (None, Some(file)) => parse_json(&read_input(file)?)?,
        _ => return Err(Fail::Schema("give --preset or --presentation".into())),
    };
    cohring::build_ring(&p).map_err(Fail::compute)
}

fn cmd_ring(c: &RingCmd) -> CmdResult {
    match c {
        RingCmd::Dims(src) => {
            let r = load_ring(src)?;
            let dims = r.dims();
            let text = dims
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            Ok(Output::new(text, json!({ "dims": dims })))
        }
        RingCmd::Nf { ring, expr } => {
            let r = load_ring(ring)?;
            let raw = r.parse_poly(expr).map_err(Fail::schema)?;
            let nf = r.normal_form(&raw);
            if nf.truncated_terms > 0 {
                eprintln!(
                    "note: {} terms above the top degree dropped",
                    nf.truncated_terms
                );
            }
            let e = nf.element;
            Ok(Output::new(
                e.to_string(),
                json!({ "text": e.to_string(), "element": e.to_json() }),
            ))
        }
    }
}

fn cmd_chern(c: &ChernCmd) -> CmdResult {
    match c {
        ChernCmd::Theta { d, n, check } => {
            let t = cohring::chern_theta(*d, *n).map_err(Fail::compute)?;
            let mut lines = Vec::new();
            let agree = t.routes_agree();
            if *check {
                lines.push(
                    if agree {
                        "routes agree"
                    } else {
                        "routes DIFFER"
                    }
                    .to_string(),
                );
            }
            lines.push(format!("c(theta) = {}", t.flag.element()));
            lines.push(format!("pulled back: {}", t.closed.element()));
            if *check && !agree {
                lines.push(format!("proof route: {}", t.proof_route.element()));
            }
            let mut out = Output::new(
                lines.join("\n"),
                json!({
                    "d": d, "n": n,
                    "routes_agree": agree,
                    "flag": t.flag.element().to_string(),
                    "closed": t.closed.element().to_string(),
                    "proof_route": t.proof_route.element().to_string(),
                }),
            );
            out.check_failed = *check && !agree;
            Ok(out)
        }
        ChernCmd::XiEta => {
            let x = cohring::chern_xi_eta().map_err(Fail::compute)?;
            let text = format!(
                "c(xi') = {}\nc(eta') = {}\nc1(xi'/eta') = {}",
                x.xi.element(),
                x.eta.element(),
                x.c1_quotient
            );
            Ok(Output::new(
                text,
                json!({
                    "xi": x.xi.element().to_string(),
                    "eta": x.eta.element().to_string(),
                    "c1_quotient": x.c1_quotient.to_string(),
                }),
            ))
        }
        ChernCmd::Eval { input } => {
            let spec: bundle::BundleInput = parse_json(&read_input(input)?)?;
            let (rank, class) = spec.eval()?;
            Ok(Output::new(
                format!("rank {rank}\nc = {}", class.element()),
                json!({ "rank": rank, "class": class.element().to_string(), "element": class.element().to_json() }),
            ))
        }
    }
}

/// Any of the three JSON shapes `space eval` accepts.
#[derive(Deserialize)]
#[serde(untagged)]
enum SpaceInput {
    Column(ColumnSpec),
    Script(Script),
    Expr(SpaceExpr),
}

fn cmd_space(c: &SpaceCmd) -> CmdResult {
    let SpaceCmd::Eval { input } = c;
    let text = read_input(input)?;
    let parsed: SpaceInput = parse_json(&text).map_err(|_| {
        Fail::Schema("input is neither a column spec, a script nor a space expression".into())
    })?;
    let ax = AxiomTable::standard();
    let res = match &parsed {
        SpaceInput::Column(col) => col.eval(&ax),
        SpaceInput::Script(s) => bmspace::run_script(s, &ax),
        SpaceInput::Expr(e) => bmspace::eval_space(e, &ax).map(|dims| bmspace::ScriptResult {
            dims,
            audit: Vec::new(),
        }),
    }
    .map_err(Fail::compute)?;
    let mut lines = vec![res.dims.to_string()];
    for a in &res.audit {
        lines.push(format!("  step {}: {} [{}]", a.step, a.value, a.citation));
    }
    Ok(Output::new(lines.join("\n"), to_json(&res)))
}

#[derive(Clone, Default, Serialize, Deserialize)]
struct SsInput {
    #[serde(default)]
    page: Page,
    #[serde(default)]
    facts: Vec<DifferentialFact>,
    #[serde(default)]
    constraints: Vec<Constraint>,
}

fn ss_preset(name: &str) -> Result<SsInput, Fail> {
    let unknown = |keys: &[(u32, i64, i64)]| {
        keys.iter()
            .map(|&(r, p, q)| DifferentialFact::new(r, p, q, Status::Unknown))
            .collect()
    };
    Ok(match name {
        "lastcolq" => SsInput {
            page: casebook::quartic_grid(),
            facts: unknown(&[(1, 2, 1), (1, 2, 3), (1, 3, 5)]),
            constraints: vec![Constraint::ForbiddenTotalDegrees {
                degrees: (1..=7).collect(),
                p_range: None,
            }],
        },
        "cubic-grid" => SsInput {
            page: casebook::cubic_grid(),
            facts: unknown(&[(1, 2, 1), (1, 2, 3)]),
            constraints: vec![Constraint::ForbiddenTotalDegrees {
                degrees: (1..=6).collect(),
                p_range: None,
            }],
        },
        "quartic-e1" => SsInput {
            page: casebook::quartic_e1(),
            facts: casebook::quartic_facts(),
            constraints: Vec::new(),
        },
        "cubic-e1" => SsInput {
            page: casebook::cubic_e1(),
            facts: casebook::cubic_facts(),
            constraints: Vec::new(),
        },
        _ => {
            return Err(Fail::Schema(format!(
                "unknown preset `{name}` (lastcolq, cubic-grid, quartic-e1, cubic-e1)"
            )))
        }
    })
}

fn ss_input(a: &SsInputArgs) -> Result<SsInput, Fail> {
    match (&a.preset, &a.input) {
        (Some(p), None) => ss_preset(p),
        (None, Some(f)) => parse_json(&read_input(f)?),
        (None, None) => Err(Fail::Schema("give --preset or an input file".into())),
        (Some(_), Some(_)) => Err(Fail::Schema(
            "--preset and an input file are exclusive".into(),
        )),
    }
}

fn survivors_text(page: &Page) -> Vec<String> {
    let list = page.survivor_list();
    if list.is_empty() {
        vec!["survivors: none".into()]
    } else {
        std::iter::once("survivors:".to_string())
            .chain(list.into_iter().map(|s| format!("  {s}")))
            .collect()
    }
}

fn cmd_ss(c: &SsCmd) -> CmdResult {
    match c {
        SsCmd::Run(src) => {
            let input = ss_input(src)?;
            let res = specseq::run(&input.page, &input.facts).map_err(Fail::compute)?;
            for k in &res.unused_nonzero {
                eprintln!("warning: nonzero {k} has no twist-matched endpoints");
            }
            let mut lines = survivors_text(&res.einf);
            let totals = res.einf.totals();
            lines.push(format!("totals: {totals}"));
            let mut j = to_json(&input);
            j["survivors"] = to_json(&res.einf.survivor_list());
            j["result"] = to_json(&res);
            Ok(Output::new(lines.join("\n"), j))
        }
        SsCmd::Infer { src, search_bound } => {
            let input = ss_input(src)?;
            let rep = specseq::infer(&input.page, &input.facts, &input.constraints, *search_bound)
                .map_err(Fail::compute)?;
            let mut lines = rep.summary_lines();
            if let Some(s) = &rep.survivors {
                lines.extend(survivors_text(s));
            }
            let mut j = to_json(&input);
            j["report"] = to_json(&rep);
            let mut out = Output::new(lines.join("\n"), j);
            // no assignment satisfies the constraints
            out.check_failed = rep.satisfying == 0 && !rep.nothing_to_infer();
            Ok(out)
        }
    }
}

fn parse_poly(s: &str) -> Result<MHPolynomial, Fail> {
    s.parse().map_err(Fail::schema)
}

fn cmd_hodge(c: &HodgeCmd) -> CmdResult {
    match c {
        HodgeCmd::Dualize { ambient_dim, input } => {
            let t: TwistedDims = parse_json(&read_input(input)?)?;
            let p = hodgepoly::dualize(&t, *ambient_dim).map_err(Fail::compute)?;
            Ok(Output::new(p.to_string(), json!({ "polynomial": p })))
        }
        HodgeCmd::Specialize { poly, mode } => {
            let p = parse_poly(poly)?;
            let s = hodgepoly::specialize(&p, *mode);
            Ok(Output::new(
                s.to_string(),
                json!({ "polynomial": p, "mode": mode, "value": s.to_string() }),
            ))
        }
        HodgeCmd::Divide { dividend, divisor } => {
            let (p, d) = (parse_poly(dividend)?, parse_poly(divisor)?);
            match hodgepoly::divide_exact(&p, &d).map_err(Fail::compute)? {
                Division::Exact(q) => Ok(Output::new(
                    format!("quotient: {q}"),
                    json!({ "divisible": true, "quotient": q }),
                )),
                Division::NotDivisible { obstruction } => {
                    let m = hodgepoly::mono_to_string(obstruction);
                    Ok(Output::new(
                        format!("not divisible; obstruction {m}"),
                        json!({ "divisible": false, "obstruction": m }),
                    ))
                }
            }
        }
    }
}

fn strata_preset(name: &str) -> Result<StratificationModel, Fail> {
    Ok(match name {
        "singular-cubics" => strata::singular_cubics_model(),
        "singular-cubics-refined" => strata::singular_cubics_refined(),
        "cubic-flag" => strata::cubic_flag_model(),
        "quartic" => strata::quartic_model(),
        _ => return Err(Fail::Schema(format!("unknown strata preset `{name}`"))),
    })
}

fn cmd_strata(c: &StrataCmd) -> CmdResult {
    let StrataCmd::Validate {
        preset,
        input,
        level,
        table,
    } = c;
    let model = match (preset, input) {
        (Some(p), None) => strata_preset(p)?,
        (None, Some(f)) => {
            let m: StratificationModel = parse_json(&read_input(f)?)?;
            m.check().map_err(Fail::schema)?;
            m
        }
        _ => return Err(Fail::Schema("give --preset or an input file".into())),
    };
    let rep = model.validate(*level).map_err(Fail::compute)?;
    let mut text = rep.to_string();
    let mut ok = rep.passed();
    let mut j = json!({ "report": rep });
    if *table {
        let t = strata::geom_table_check(&model, &strata::quartic_geom_table());
        text.push_str(&format!(
            "\ngeometrization table: {} rows, {} violations",
            t.rows,
            t.violations.len()
        ));
        for v in &t.violations {
            text.push_str(&format!("\n  {v}"));
        }
        ok &= t.violations.is_empty();
        j["table"] = to_json(&t);
    }
    let mut out = Output::new(text, j);
    out.check_failed = !ok;
    Ok(out)
}

fn cmd_case(c: &CaseCmd) -> CmdResult {
    match c {
        CaseCmd::List => {
            let cases: Vec<_> = casebook::BUILTIN_NAMES
                .iter()
                .map(|n| casebook::builtin(n).expect("builtin"))
                .collect();
            let text = cases
                .iter()
                .map(|c| format!("{}  D={}  {}", c.name, c.ambient_dim, status_word(c.status)))
                .collect::<Vec<_>>()
                .join("\n");
            let j: Vec<_> = cases
                .iter()
                .map(
                    |c| json!({ "name": c.name, "ambient_dim": c.ambient_dim, "status": c.status }),
                )
                .collect();
            Ok(Output::new(text, Value::Array(j)))
        }
        CaseCmd::Export { case } => {
            let c = casebook::load_case(case).map_err(case_fail)?;
            let text = casebook::case_to_json(&c);
            let j: Value = serde_json::from_str(&text).expect("valid json");
            Ok(Output::new(text, j))
        }
        CaseCmd::Run {
            case,
            stage,
            search_bound,
        } => {
            let c = casebook::load_case(case).map_err(case_fail)?;
            let rep = casebook::run_case(
                &c,
                &RunOptions {
                    search_bound: *search_bound,
                },
            );
            if rep.verdict == Verdict::Failed {
                // stages that could not run are computation errors
                let out = render_case(&rep, stage.as_deref())?;
                return Err(Fail::Compute(format!(
                    "case {} failed\n{}",
                    rep.name, out.text
                )));
            }
            let mut out = render_case(&rep, stage.as_deref())?;
            out.check_failed = rep.verdict != Verdict::Match;
            Ok(out)
        }
    }
}

fn status_word(s: casebook::CaseStatus) -> &'static str {
    match s {
        casebook::CaseStatus::Complete => "complete",
        casebook::CaseStatus::IncompleteReference => "incomplete reference",
    }
}

fn case_fail(e: casebook::CaseError) -> Fail {
    match e {
        casebook::CaseError::Io { .. }
        | casebook::CaseError::Schema { .. }
        | casebook::CaseError::Invalid(_) => Fail::schema(e),
    }
}

fn render_case(rep: &CaseReport, stage: Option<&str>) -> CmdResult {
    let Some(id) = stage else {
        return Ok(Output::new(rep.to_string(), to_json(rep)));
    };
    let s = rep
        .stage(id)
        .ok_or_else(|| Fail::Schema(format!("no stage `{id}` (a..e)")))?;
    let mut text = format!("[{}] {}: {:?}", s.stage, s.title, s.status).to_lowercase();
    for l in &s.lines {
        text.push_str(&format!("\n    {l}"));
    }
    Ok(Output::new(text, to_json(s)))
}

fn dispatch(cmd: &Cmd) -> CmdResult {
    match cmd {
        Cmd::Ring(c) => cmd_ring(c),
        Cmd::Chern(c) => cmd_chern(c),
        Cmd::Space(c) => cmd_space(c),
        Cmd::Ss(c) => cmd_ss(c),
        Cmd::Hodge(c) => cmd_hodge(c),
        Cmd::Strata(c) => cmd_strata(c),
        Cmd::Case(c) => cmd_case(c),
    }
}

fn emit(cli: &Cli, out: &Output) -> std::io::Result<()> {
    let mut body = match cli.format {
        Format::Text => out.text.clone(),
        Format::Json => serde_json::to_string_pretty(&out.json).expect("json"),
    };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &cli.out {
        Some(path) => std::fs::write(path, body),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli.cmd) {
        Ok(out) => {
            if let Err(e) = emit(&cli, &out) {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_SCHEMA);
            }
            if out.check_failed {
                ExitCode::from(EXIT_CHECK)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Fail::Schema(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_SCHEMA)
        }
        Err(Fail::Compute(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_COMPUTE)
        }
    }
}
