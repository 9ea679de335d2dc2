//! `chainstab`: exact stability chambers, graduations and moduli descriptors
//! for holomorphic chains.

use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use chainstab::chain::SubchainSelector;
use chainstab::chamber::matrix_determinant_identity;
use chainstab::git::{classify_character, correspondence_check, quotient_descriptor};
use chainstab::moduli::describe_moduli;
use chainstab::stability::{graduation, is_semistable};
use chainstab::{
    build_cone, sampling, selfcheck, AlphaVector, ChainType, CharacterTuple, CurveContext,
    Error, ModuliDescriptor, RankOneChain, Rational, WallSet,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "chainstab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cone inequalities, vertex and coefficient determinant for a type.
    Chamber {
        #[command(flatten)]
        ty: TypeArg,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Where a parameter lies relative to the cone.
    Classify {
        #[command(flatten)]
        ty: TypeArg,
        #[command(flatten)]
        alpha: AlphaArg,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Stability of a rank-one chain, checked against every subchain.
    Stability {
        #[command(flatten)]
        chain: ChainArgs,
        #[command(flatten)]
        alpha: AlphaArg,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Graded object of a semistable rank-one chain.
    Graduation {
        #[command(flatten)]
        chain: ChainArgs,
        #[command(flatten)]
        alpha: AlphaArg,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Moduli descriptor of a rank-one type at a parameter.
    Moduli {
        #[command(flatten)]
        ty: TypeArg,
        #[command(flatten)]
        genus: GenusArg,
        #[command(flatten)]
        alpha: AlphaArg,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Character region and quotient, optionally compared with a parameter.
    Git {
        #[command(flatten)]
        ty: TypeArg,
        #[command(flatten)]
        genus: GenusArg,
        /// Exponents k_1,..,k_n.
        #[arg(long)]
        chars: CharacterTuple,
        /// Parameter to compare against.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<AlphaVector>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Classify sampled parameters for one type.
    Sweep {
        #[command(flatten)]
        chain: ChainArgs,
        /// Also describe the moduli space at each sample.
        #[arg(long)]
        genus: Option<u32>,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Seeded property suites; exits 1 if any case fails.
    Selfcheck {
        #[command(flatten)]
        sampling: SamplingArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args)]
struct TypeArg {
    /// Type as "r0,..,rn;d0,..,dn".
    #[arg(long = "type", allow_hyphen_values = true)]
    ty: ChainType,
}

#[derive(Args)]
struct ChainArgs {
    #[command(flatten)]
    ty: TypeArg,
    /// Which arrows are nonzero, e.g. "1,0" or "true,false". Default: all.
    #[arg(long)]
    phi: Option<String>,
}

#[derive(Args)]
struct AlphaArg {
    /// Parameter (alpha_1,..,alpha_n); entries may be "p/q".
    #[arg(long, allow_hyphen_values = true)]
    alpha: AlphaVector,
}

#[derive(Args)]
struct GenusArg {
    #[arg(long, default_value_t = 0)]
    genus: u32,
}

#[derive(Args)]
struct SamplingArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    samples: usize,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    output: Format,
    /// Shorthand for --output json.
    #[arg(long)]
    json: bool,
}

impl OutputArgs {
    fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else {
            self.output
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

impl ChainArgs {
    fn chain(&self) -> Result<RankOneChain, Error> {
        let t = &self.ty.ty;
        if !t.is_rank_one() {
            return Err(Error::UnsupportedType(format!(
                "chains are only handled for ranks (1,..,1), got {t}"
            )));
        }
        let phi = match &self.phi {
            None => vec![true; t.n()],
            Some(s) => parse_flags(s)?,
        };
        check_len("--phi", phi.len(), t)?;
        RankOneChain::new(t.degrees().to_vec(), phi)
    }
}

fn parse_flags(s: &str) -> Result<Vec<bool>, Error> {
    s.split(',')
        .map(|x| match x.trim() {
            "1" | "true" | "t" => Ok(true),
            "0" | "false" | "f" => Ok(false),
            _ => Err(Error::Parse {
                what: "arrow flags",
                input: s.to_string(),
            }),
        })
        .collect()
}

fn check_len(what: &str, found: usize, t: &ChainType) -> Result<(), Error> {
    if found == t.n() {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "{what} has {found} entries but the type {t} has n = {} arrows",
            t.n()
        )))
    }
}

/// A command's result: a JSON value plus its text rendering.
struct Report {
    json: serde_json::Value,
    text: String,
    ok: bool,
}

impl Report {
    fn new<T: Serialize>(value: &T, text: String) -> Self {
        Report {
            json: serde_json::to_value(value).expect("reports serialize"),
            text,
            ok: true,
        }
    }
}

fn strings(xs: &[Rational]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn set(walls: &WallSet) -> String {
    let parts: Vec<String> = walls.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn selectors(xs: &[SubchainSelector]) -> String {
    let parts: Vec<String> = xs
        .iter()
        .map(|s| set(&s.indices().iter().copied().collect()))
        .collect();
    parts.join(" ")
}

#[derive(Serialize)]
struct ChamberReport {
    functionals: Vec<Vec<Rational>>,
    constants: Vec<Rational>,
    vertex: Vec<Rational>,
    determinant: Rational,
    closed_form_determinant: Rational,
}

#[derive(Serialize)]
struct ClassifyReport {
    kind: &'static str,
    active_walls: WallSet,
}

#[derive(Serialize)]
struct GraduationReport {
    wall: WallSet,
    psi_nonzero: Vec<bool>,
    factor_slopes: Vec<Rational>,
}

#[derive(Serialize)]
struct GitReport {
    class: &'static str,
    #[serde(rename = "I")]
    zeros: WallSet,
    descriptor: ModuliDescriptor,
    #[serde(skip_serializing_if = "Option::is_none")]
    matches_alpha: Option<bool>,
}

#[derive(Serialize)]
struct SweepSample {
    alpha: AlphaVector,
    kind: &'static str,
    active_walls: WallSet,
    stable: bool,
    semistable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    dimension: Option<Option<i64>>,
}

#[derive(Serialize, Default)]
struct SweepCounts {
    interior: usize,
    wall: usize,
    outside: usize,
    stable: usize,
    semistable: usize,
}

#[derive(Serialize)]
struct SweepReport {
    seed: u64,
    counts: SweepCounts,
    samples: Vec<SweepSample>,
}

fn classify_report(t: &ChainType, alpha: &AlphaVector) -> Result<ClassifyReport, Error> {
    let class = build_cone(t).classify(alpha)?;
    Ok(ClassifyReport {
        kind: class.kind_name(),
        active_walls: class.active_walls().unwrap_or_default(),
    })
}

fn descriptor_text(d: &ModuliDescriptor) -> String {
    let mut out = String::new();
    let kind = serde_json::to_value(d.kind).expect("kind serializes");
    let _ = writeln!(out, "kind: {}", kind.as_str().unwrap_or_default());
    let _ = writeln!(out, "base: Pic^{:?} of a genus {} curve, dimension {}", d.base.degrees, d.base.genus, d.base.dimension);
    for f in &d.factors {
        match (f.skipped, f.fiber_dim) {
            (true, _) => {
                let _ = writeln!(out, "factor {}: collapsed", f.index);
            }
            (false, Some(r)) => {
                let _ = writeln!(out, "factor {}: P^{r}-bundle", f.index);
            }
            (false, None) => {
                let _ = writeln!(out, "factor {}: stratified", f.index);
            }
        }
    }
    for s in &d.strata {
        let r: Vec<String> = s.r.iter().map(|x| x.map_or("-".into(), |x| x.to_string())).collect();
        let dim = s.dimension.map_or("empty on a general curve".into(), |x| format!("dimension {x}"));
        let _ = writeln!(out, "stratum r = ({}): {dim}", r.join(","));
    }
    match d.dimension {
        Some(dim) => {
            let _ = writeln!(out, "dimension: {dim}");
        }
        None => {
            let _ = writeln!(out, "dimension: none");
        }
    }
    let _ = writeln!(out, "euler characteristic: {}", d.euler_characteristic);
    for note in &d.notes {
        let _ = writeln!(out, "note: {note}");
    }
    out
}

fn validate(command: &Command) -> Result<(), Error> {
    match command {
        Command::Classify { ty, alpha, .. } | Command::Moduli { ty, alpha, .. } => {
            check_len("--alpha", alpha.alpha.len(), &ty.ty)
        }
        Command::Stability { chain, alpha, .. } | Command::Graduation { chain, alpha, .. } => {
            check_len("--alpha", alpha.alpha.len(), &chain.ty.ty)
        }
        Command::Git {
            ty, chars, alpha, ..
        } => {
            check_len("--chars", chars.len(), &ty.ty)?;
            match alpha {
                Some(a) => check_len("--alpha", a.len(), &ty.ty),
                None => Ok(()),
            }
        }
        Command::Chamber { .. } | Command::Sweep { .. } | Command::Selfcheck { .. } => Ok(()),
    }
}

fn run(command: &Command) -> Result<Report, Error> {
    validate(command)?;
    match command {
        Command::Chamber { ty, .. } => {
            let t = &ty.ty;
            let cone = build_cone(t);
            let (determinant, closed_form_determinant) = matrix_determinant_identity(t)?;
            let report = ChamberReport {
                functionals: cone.functionals().iter().map(|f| f.as_slice().to_vec()).collect(),
                constants: cone.constants().to_vec(),
                vertex: cone.vertex().as_slice().to_vec(),
                determinant,
                closed_form_determinant,
            };
            let mut text = String::new();
            for (i, (f, c)) in report.functionals.iter().zip(&report.constants).enumerate() {
                let _ = writeln!(text, "h_{}: ({}) . alpha < {c}", i + 1, strings(f));
            }
            let _ = writeln!(text, "vertex: ({})", strings(&report.vertex));
            let _ = writeln!(
                text,
                "determinant: {} (closed form {})",
                report.determinant, report.closed_form_determinant
            );
            Ok(Report::new(&report, text))
        }
        Command::Classify { ty, alpha, .. } => {
            let report = classify_report(&ty.ty, &alpha.alpha)?;
            let text = format!("{} {}\n", report.kind, set(&report.active_walls));
            Ok(Report::new(&report, text))
        }
        Command::Stability { chain, alpha, .. } => {
            let c = chain.chain()?;
            let verdict = is_semistable(&c, &alpha.alpha)?;
            let mut text = format!("stable: {}\nsemistable: {}\n", verdict.stable, verdict.semistable);
            if !verdict.tight_selectors.is_empty() {
                let _ = writeln!(text, "tight: {}", selectors(&verdict.tight_selectors));
            }
            if let Some(v) = &verdict.violating_selector {
                let _ = writeln!(text, "violating: {}", selectors(std::slice::from_ref(v)));
            }
            Ok(Report::new(&verdict, text))
        }
        Command::Graduation { chain, alpha, .. } => {
            let c = chain.chain()?;
            let g = graduation(&c, &alpha.alpha)?;
            let report = GraduationReport {
                wall: g.wall_set,
                psi_nonzero: g.representative.phi_nonzero().to_vec(),
                factor_slopes: g.factor_slopes,
            };
            let text = format!(
                "wall: {}\npsi_nonzero: {:?}\nfactor slopes: {}\n",
                set(&report.wall),
                report.psi_nonzero,
                strings(&report.factor_slopes)
            );
            Ok(Report::new(&report, text))
        }
        Command::Moduli { ty, genus, alpha, .. } => {
            let d = describe_moduli(&ty.ty, CurveContext::new(genus.genus), &alpha.alpha)?;
            let text = descriptor_text(&d);
            Ok(Report::new(&d, text))
        }
        Command::Git {
            ty,
            genus,
            chars,
            alpha,
            ..
        } => {
            let ctx = CurveContext::new(genus.genus);
            let class = classify_character(chars);
            let descriptor = quotient_descriptor(&ty.ty, ctx, chars)?;
            let matches_alpha = alpha
                .as_ref()
                .map(|a| correspondence_check(&ty.ty, ctx, chars, a))
                .transpose()?;
            let mut text = format!("class: {} {}\n", class.class_name(), set(&class.zero_set().unwrap_or_default()));
            text.push_str(&descriptor_text(&descriptor));
            if let Some(m) = matches_alpha {
                let _ = writeln!(text, "matches alpha: {m}");
            }
            let report = GitReport {
                class: class.class_name(),
                zeros: class.zero_set().unwrap_or_default(),
                descriptor,
                matches_alpha,
            };
            Ok(Report::new(&report, text))
        }
        Command::Sweep {
            chain,
            genus,
            sampling: s,
            ..
        } => {
            let c = chain.chain()?;
            let t = c.chain_type();
            let cone = build_cone(&t);
            let mut rng = sampling::seeded(s.seed);
            let mut counts = SweepCounts::default();
            let mut samples = Vec::with_capacity(s.samples);
            for _ in 0..s.samples {
                let alpha = sampling::alpha(&mut rng, &cone);
                let class = cone.classify(&alpha)?;
                let verdict = is_semistable(&c, &alpha)?;
                match class.kind_name() {
                    "interior" => counts.interior += 1,
                    "wall" => counts.wall += 1,
                    _ => counts.outside += 1,
                }
                counts.stable += usize::from(verdict.stable);
                counts.semistable += usize::from(verdict.semistable);
                let dimension = genus
                    .map(|g| describe_moduli(&t, CurveContext::new(g), &alpha).map(|d| d.dimension))
                    .transpose()?;
                samples.push(SweepSample {
                    alpha,
                    kind: class.kind_name(),
                    active_walls: class.active_walls().unwrap_or_default(),
                    stable: verdict.stable,
                    semistable: verdict.semistable,
                    dimension,
                });
            }
            let text = format!(
                "{} samples: {} interior, {} on walls, {} outside; {} stable, {} semistable\n",
                samples.len(),
                counts.interior,
                counts.wall,
                counts.outside,
                counts.stable,
                counts.semistable
            );
            let report = SweepReport {
                seed: s.seed,
                counts,
                samples,
            };
            Ok(Report::new(&report, text))
        }
        Command::Selfcheck { sampling: s, .. } => {
            let result = selfcheck::run(s.seed, s.samples)?;
            let mut text = format!("seed {}\n", result.seed);
            for suite in &result.suites {
                let status = if suite.failed == 0 { "PASS" } else { "FAIL" };
                let _ = writeln!(text, "{status} {}: {} passed, {} failed", suite.name, suite.passed, suite.failed);
            }
            let mut report = Report::new(&result, text);
            report.ok = result.all_passed();
            Ok(report)
        }
    }
}

fn format_of(command: &Command) -> Format {
    match command {
        Command::Chamber { out, .. }
        | Command::Classify { out, .. }
        | Command::Stability { out, .. }
        | Command::Graduation { out, .. }
        | Command::Moduli { out, .. }
        | Command::Git { out, .. }
        | Command::Sweep { out, .. }
        | Command::Selfcheck { out, .. } => out.format(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(report) => {
            let body = match format_of(&cli.command) {
                Format::Json => {
                    serde_json::to_string_pretty(&report.json).expect("values serialize") + "\n"
                }
                Format::Text => report.text,
            };
            // A closed pipe downstream is not an error of ours.
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
