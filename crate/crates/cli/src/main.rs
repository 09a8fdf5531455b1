//! `horikawa`: command-line access to the classification, cohomology,
//! double-cover, foliation and family computations.
//!
//! Every subcommand prints a JSON envelope on stdout. Exit codes: 0 success,
//! 2 rejected input, 1 internal error, 64 usage error.

use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use horikawa_core::classify::{classification_table, enumerate, validate, Candidate, HorikawaDatum, TableRow};
use horikawa_core::cohomology::{cohomology, CechOracle, CohomologyVector};
use horikawa_core::cover::{
    invariants, noether_check, omega_class, pluricanonical_h0, CoverInvariants, DoubleCoverDatum,
    NoetherReport,
};
use horikawa_core::family::{draw_sections, lambda_sweep, lift_check, seeded_sections, LiftReport, SweepReport};
use horikawa_core::foliation::{
    analyze, quotient_from_report, remark_delta, singular_points, FoliationRecipe, QuotientReport,
    SingularityReport,
};
use horikawa_core::lattice::{CanonicalImage, DivisorClass, SurfaceModel};
use horikawa_core::selftest::{run_all, run_criterion, CriterionResult};
use horikawa_core::HorikawaError;
use horikawa_polyalg::{Field, FieldSpec, Gf2k, PolyError};
use serde::Serialize;
use serde_json::Value;

const VERSION: &str = env!("CARGO_PKG_VERSION");
const EXIT_REJECTED: u8 = 2;
const EXIT_INTERNAL: u8 = 1;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "horikawa", version, about = "Horikawa surfaces and their characteristic-2 constructions")]
struct Cli {
    /// Output format; csv and table apply to `classify` and `selftest`.
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,

    /// Coefficient field, `2^k` or `Q`.
    #[arg(long, global = true)]
    field: Option<FieldSpec>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Admissible branch data for a range of p_g, or a check of one candidate.
    Classify {
        #[arg(long)]
        pg: u64,
        #[arg(long)]
        to: Option<u64>,
        /// Validate `--bundle` on this surface or image (F:d, P2, cone:d).
        #[arg(long, requires = "bundle")]
        candidate: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "candidate")]
        bundle: Option<String>,
    },
    /// Line-bundle cohomology.
    Cohom {
        #[arg(long)]
        surface: SurfaceModel,
        #[arg(long, allow_hyphen_values = true)]
        bundle: String,
        /// Also run the Čech oracle and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Invariants of the double cover branched along 2L.
    Cover {
        #[arg(long)]
        surface: SurfaceModel,
        #[arg(long, allow_hyphen_values = true)]
        bundle: String,
        /// Also count sections of the n-th canonical power.
        #[arg(long)]
        n: Option<u32>,
    },
    /// Zeros, divisor class and quotient of the vector field of a recipe.
    Foliate {
        #[arg(long, required_unless_present = "remark55")]
        d: Option<u32>,
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        /// Poles a_i as field elements (binary digits are coefficients in g).
        #[arg(long, value_delimiter = ',')]
        a: Option<Vec<u64>>,
        /// Zeros b_j, same encoding as `--a`.
        #[arg(long, value_delimiter = ',')]
        b: Option<Vec<u64>>,
        /// The field (x^2 + x^-4) d/dx + (t^2 + t^-4) d/dt on F_0 over GF(4).
        #[arg(long, conflicts_with_all = ["d", "ell", "m", "a", "b"])]
        remark55: bool,
    },
    /// The family z^2 + λ s z + t over a classifier datum.
    Deform {
        #[arg(long)]
        pg: u64,
        #[arg(long)]
        image: CanonicalImage,
        #[arg(long, value_delimiter = ',', default_value = "0,1,2")]
        lambda: Vec<u64>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Lift a classifier datum with GF(2) sections to characteristic 0.
    Lift {
        #[arg(long)]
        pg: u64,
        #[arg(long)]
        image: CanonicalImage,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Run the invariant suite.
    Selftest {
        /// Run a single criterion.
        #[arg(long)]
        criterion: Option<u8>,
    },
}

#[derive(Serialize)]
struct Envelope {
    command: String,
    version: &'static str,
    field: Option<String>,
    payload: Value,
    warnings: Vec<String>,
}

/// What a subcommand produced: the JSON payload, an optional plain-text
/// projection, and the exit status.
struct Outcome {
    field: Option<String>,
    payload: Value,
    text: Option<String>,
    warnings: Vec<String>,
    code: u8,
}

impl Outcome {
    fn ok<T: Serialize>(payload: &T) -> Result<Self, Failure> {
        Ok(Outcome {
            field: None,
            payload: serde_json::to_value(payload).map_err(|e| Failure::Internal(e.to_string()))?,
            text: None,
            warnings: Vec::new(),
            code: 0,
        })
    }

    fn with_field(mut self, field: impl ToString) -> Self {
        self.field = Some(field.to_string());
        self
    }
}

enum Failure {
    Rejected(String),
    Internal(String),
}

impl From<HorikawaError> for Failure {
    fn from(e: HorikawaError) -> Self {
        match e {
            HorikawaError::Inconsistent(_) | HorikawaError::Poly(_) => Failure::Internal(e.to_string()),
            _ => Failure::Rejected(e.to_string()),
        }
    }
}

/// Polynomial errors reaching the CLI come from user-supplied field sizes.
impl From<PolyError> for Failure {
    fn from(e: PolyError) -> Self {
        Failure::Rejected(e.to_string())
    }
}

fn parse_bundle(surface: SurfaceModel, text: &str) -> Result<DivisorClass, Failure> {
    let coeffs = text
        .split(',')
        .map(|c| c.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| Failure::Rejected(format!("bad bundle `{text}`: expected integers a[,b]")))?;
    Ok(DivisorClass::new(surface, coeffs)?)
}

fn find_datum(pg: u64, image: CanonicalImage) -> Result<HorikawaDatum, Failure> {
    let data = enumerate(pg)?;
    let hit = data.iter().find(|h| match image {
        CanonicalImage::SmoothP2 { embedding_degree: 0 } => matches!(h.image, CanonicalImage::SmoothP2 { .. }),
        img => h.image == img,
    });
    match hit {
        Some(h) => Ok(h.clone()),
        None => {
            let allowed: Vec<String> = data.iter().map(|h| h.image.to_string()).collect();
            Err(Failure::Rejected(format!(
                "({pg}, {image}) is not admissible; images for p_g = {pg}: {}",
                allowed.join(", ")
            )))
        }
    }
}

fn binary_field(spec: Option<FieldSpec>, default: Option<u32>) -> Result<Option<Gf2k>, Failure> {
    match spec {
        Some(FieldSpec::Binary(k)) => Ok(Some(Gf2k::new(k)?)),
        Some(FieldSpec::Rational) => Err(Failure::Rejected(
            "this computation needs a field of characteristic 2".into(),
        )),
        None => Ok(default.map(Gf2k::new).transpose()?),
    }
}

fn csv_row(r: &TableRow) -> String {
    let d = r.d.map(|d| d.to_string()).unwrap_or_default();
    let (la, lb) = match r.l.surface() {
        SurfaceModel::ProjectivePlane => (r.l.a().to_string(), String::new()),
        SurfaceModel::Hirzebruch(_) => (r.l.a().to_string(), r.l.b().to_string()),
    };
    format!("{},{},{d},{la},{lb},{}", r.pg, r.image, r.ksq)
}

fn table(rows: &[TableRow], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str("pg,image,d,L_a,L_b,Ksq\n");
            for r in rows {
                out.push_str(&csv_row(r));
                out.push('\n');
            }
        }
        _ => {
            let _ = writeln!(out, "{:>4}  {:<9} {:>3}  {:<12} {:>4}", "pg", "image", "d", "L", "Ksq");
            for r in rows {
                let d = r.d.map(|d| d.to_string()).unwrap_or_else(|| "-".into());
                let _ = writeln!(out, "{:>4}  {:<9} {:>3}  {:<12} {:>4}", r.pg, r.image.to_string(), d, r.l.to_string(), r.ksq);
            }
        }
    }
    out
}

fn classify(pg: u64, to: Option<u64>, candidate: Option<String>, bundle: Option<String>, format: Format) -> Result<Outcome, Failure> {
    if let (Some(c), Some(b)) = (candidate, bundle) {
        let cand = if c.trim_start().starts_with("cone") {
            Candidate::Image(c.parse()?)
        } else {
            Candidate::Surface(c.parse()?)
        };
        let surface = match cand {
            Candidate::Surface(s) => s,
            Candidate::Image(img) => img.desingularisation(),
        };
        let l = parse_bundle(surface, &b)?;
        let v = validate(cand, &l);
        let accepted = v.is_accept();
        let mut out = Outcome::ok(&v)?;
        if !accepted {
            out.code = EXIT_REJECTED;
        } else if let horikawa_core::classify::Validation::Accept { datum } = &v {
            if datum.pg != pg {
                out.warnings.push(format!("the candidate has p_g = {}, not {pg}", datum.pg));
            }
        }
        return Ok(out);
    }
    let rows = classification_table(pg, to.unwrap_or(pg))?;
    let mut out = Outcome::ok(&rows)?;
    if format != Format::Json {
        out.text = Some(table(&rows, format));
    }
    Ok(out)
}

#[derive(Serialize)]
struct CohomPayload {
    surface: SurfaceModel,
    bundle: DivisorClass,
    display: String,
    cohomology: CohomologyVector,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<CohomologyVector>,
}

fn cohom(surface: SurfaceModel, bundle: &str, oracle: bool) -> Result<Outcome, Failure> {
    let l = parse_bundle(surface, bundle)?;
    let c = cohomology(&l)?;
    let o = if oracle { Some(CechOracle::from_env().compute(&l)?) } else { None };
    if let Some(o) = o {
        if o != c {
            return Err(Failure::Internal(format!("formula {c:?} differs from the Čech oracle {o:?} for {l}")));
        }
    }
    let out = Outcome::ok(&CohomPayload {
        surface,
        display: l.to_string(),
        bundle: l,
        cohomology: c,
        oracle: o,
    })?;
    Ok(if oracle { out.with_field("Q") } else { out })
}

#[derive(Serialize)]
struct CoverPayload {
    #[serde(rename = "L")]
    l: DivisorClass,
    omega: DivisorClass,
    invariants: CoverInvariants,
    noether: NoetherReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    plurigenus: Option<(u32, u64)>,
}

fn cover(surface: SurfaceModel, bundle: &str, n: Option<u32>) -> Result<Outcome, Failure> {
    let c = DoubleCoverDatum::new(parse_bundle(surface, bundle)?);
    let inv = invariants(&c)?;
    let plurigenus = match n {
        Some(n) => Some((n, pluricanonical_h0(&c, n)?)),
        None => None,
    };
    Outcome::ok(&CoverPayload {
        omega: omega_class(&c),
        noether: noether_check(inv.ksq, inv.pg),
        l: c.l,
        invariants: inv,
        plurigenus,
    })
}

#[derive(Serialize)]
struct RemarkPayload {
    surface: SurfaceModel,
    additive: bool,
    report: SingularityReport,
    chern_count: i64,
    quotient: QuotientReport,
}

fn foliate(
    field: Option<FieldSpec>,
    d: Option<u32>,
    ell: Option<usize>,
    m: Option<usize>,
    a: Option<Vec<u64>>,
    b: Option<Vec<u64>>,
    remark: bool,
) -> Result<Outcome, Failure> {
    if remark {
        if !matches!(field, None | Some(FieldSpec::Binary(2))) {
            return Err(Failure::Rejected("the F_0 field is defined over GF(4)".into()));
        }
        let eta = remark_delta();
        let report = singular_points(&eta)?;
        let surface = eta.surface();
        let chern_count = horikawa_core::foliation::chern_zero_count(surface, &report.divisor_class)?;
        let quotient = quotient_from_report(surface, &report)?;
        return Ok(Outcome::ok(&RemarkPayload {
            surface,
            additive: horikawa_core::foliation::check_additive(&eta),
            report,
            chern_count,
            quotient,
        })?
        .with_field("2^2"));
    }
    let d = d.ok_or_else(|| Failure::Rejected("--d is required".into()))?;
    let field = binary_field(field, None)?;
    let recipe = match (a, b) {
        (Some(a), b) => {
            let b = b.unwrap_or_default();
            if ell.is_some_and(|l| l != a.len()) || m.is_some_and(|m| m != b.len()) {
                return Err(Failure::Rejected("--ell/--m disagree with the lengths of --a/--b".into()));
            }
            let field = match field {
                Some(f) => f,
                None => {
                    let top = a.iter().chain(&b).copied().max().unwrap_or(0);
                    Gf2k::with_at_least(top as usize + 1)?
                }
            };
            FoliationRecipe::new(d, field, a, b)?
        }
        (None, Some(_)) => return Err(Failure::Rejected("--b needs --a".into())),
        (None, None) => {
            let ell = ell.ok_or_else(|| Failure::Rejected("--ell is required without --a".into()))?;
            FoliationRecipe::with_defaults(d, ell, m.unwrap_or(0), field)?
        }
    };
    let analysis = analyze(&recipe)?;
    let warnings = analysis.warnings.clone();
    let mut out = Outcome::ok(&analysis)?.with_field(recipe.field.spec());
    out.warnings = warnings;
    Ok(out)
}

#[derive(Serialize)]
struct DeformPayload {
    datum: HorikawaDatum,
    seed: u64,
    draws: usize,
    sweep: SweepReport,
}

fn deform(field: Option<FieldSpec>, pg: u64, image: CanonicalImage, lambda: &[u64], seed: u64) -> Result<Outcome, Failure> {
    let datum = find_datum(pg, image)?;
    let field = binary_field(field, Some(2))?.expect("default given");
    let draw = draw_sections(&datum.l, field, seed)?;
    let sweep = lambda_sweep(&draw.cover, lambda)?;
    let mut warnings = Vec::new();
    if !sweep.invariants_constant {
        warnings.push("invariants vary along the sweep".into());
    }
    let mut out = Outcome::ok(&DeformPayload {
        datum,
        seed,
        draws: draw.draws,
        sweep,
    })?
    .with_field(field.spec());
    out.warnings = warnings;
    Ok(out)
}

#[derive(Serialize)]
struct LiftPayload {
    datum: HorikawaDatum,
    seed: u64,
    report: LiftReport,
}

fn lift(field: Option<FieldSpec>, pg: u64, image: CanonicalImage, seed: u64) -> Result<Outcome, Failure> {
    if !matches!(field, None | Some(FieldSpec::Binary(1))) {
        return Err(Failure::Rejected("lifting starts from sections over GF(2)".into()));
    }
    let datum = find_datum(pg, image)?;
    let cover = seeded_sections(&datum.l, Gf2k::new(1)?, seed)?;
    let report = lift_check(&cover)?;
    let passed = report.passed;
    let mut out = Outcome::ok(&LiftPayload { datum, seed, report })?.with_field("2^1");
    if !passed {
        out.code = EXIT_INTERNAL;
        out.warnings.push("cohomology or invariants changed under the lift".into());
    }
    Ok(out)
}

#[derive(Serialize)]
struct SelftestPayload {
    criteria: Vec<CriterionResult>,
    passed: usize,
    failed: usize,
}

fn selftest(criterion: Option<u8>, format: Format) -> Result<Outcome, Failure> {
    let criteria = match criterion {
        Some(id) => vec![run_criterion(id).ok_or_else(|| Failure::Rejected(format!("no criterion {id}")))?],
        None => run_all(),
    };
    let passed = criteria.iter().filter(|c| c.passed).count();
    let failed = criteria.len() - passed;
    let mut text = String::new();
    for c in &criteria {
        let _ = writeln!(text, "{c}");
    }
    let _ = writeln!(text, "{passed} passed, {failed} failed");
    let mut out = Outcome::ok(&SelftestPayload { criteria, passed, failed })?;
    if format != Format::Json {
        out.text = Some(text);
    }
    if failed > 0 {
        out.code = EXIT_INTERNAL;
    }
    Ok(out)
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let format = cli.format;
    let result = match cli.command {
        Command::Classify { pg, to, candidate, bundle } => classify(pg, to, candidate, bundle, format),
        Command::Cohom { surface, bundle, oracle } => cohom(surface, &bundle, oracle),
        Command::Cover { surface, bundle, n } => cover(surface, &bundle, n),
        Command::Foliate { d, ell, m, a, b, remark55 } => foliate(cli.field, d, ell, m, a, b, remark55),
        Command::Deform { pg, image, lambda, seed } => deform(cli.field, pg, image, &lambda, seed),
        Command::Lift { pg, image, seed } => lift(cli.field, pg, image, seed),
        Command::Selftest { criterion } => selftest(criterion, format),
    };
    let out = match result {
        Ok(out) => out,
        Err(Failure::Rejected(msg)) => {
            eprintln!("rejected: {msg}");
            return ExitCode::from(EXIT_REJECTED);
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_INTERNAL);
        }
    };
    for w in &out.warnings {
        eprintln!("warning: {w}");
    }
    // a closed pipe (`| head`) is not an error worth reporting
    let mut stdout = std::io::stdout().lock();
    match out.text {
        Some(text) => {
            let _ = stdout.write_all(text.as_bytes());
        }
        None => {
            let envelope = Envelope {
                command: argv[1..].join(" "),
                version: VERSION,
                field: out.field,
                payload: out.payload,
                warnings: out.warnings,
            };
            match serde_json::to_string_pretty(&envelope) {
                Ok(s) => {
                    let _ = writeln!(stdout, "{s}");
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_INTERNAL);
                }
            }
        }
    }
    ExitCode::from(out.code)
}
