use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use gw_euler_core::degree::consistency_report;
use gw_euler_core::enumerative::{euler_lines, euler_o_n_over, euler_o_n_stacky, PlaneConfig};
use gw_euler_core::fp_verifier::verify_lines_class;
use gw_euler_core::poly::{parse_scalar, parse_system_with_vars};
use gw_euler_core::{
    global_degree, make_extension, parse_system, rng, ss_class, trace_form, Error, FieldCtx, FieldElem, FieldSpec,
    GWClass, MonomialOrder, MultiPoly, TransferMode,
};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "gw-euler", version, about = "Grothendieck-Witt valued Euler classes and A1-degrees")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Q, fp:<p>, fp (with --p) or ext:<file> holding a JSON field description.
    /// Defaults to Q, or to F_p when --p is given.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Characteristic for --field fp.
    #[arg(long, global = true)]
    p: Option<u64>,
    #[arg(long, global = true, default_value = "degrevlex")]
    order: MonomialOrder,
    #[arg(long, global = true, default_value = "scharlau")]
    mode: TransferMode,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Record wall-clock time in the manifest.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Args, Debug, Clone)]
struct SystemInput {
    /// Polynomials separated by ';' or newlines.
    #[arg(long)]
    system: Option<String>,
    /// Read the system from a file; overrides --system.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Comma-separated variable order; defaults to order of first appearance.
    #[arg(long)]
    vars: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normalize a GW expression such as "2H + <3> + <-3>".
    Simplify { expr: String },
    /// Global A1-degree: the Scheja-Storch class of g - value.
    Degree {
        #[command(flatten)]
        input: SystemInput,
        /// Comma-separated target value; defaults to the origin.
        #[arg(long, allow_hyphen_values = true)]
        value: Option<String>,
    },
    /// Scheja-Storch form of a zero-dimensional complete intersection.
    Ss {
        #[command(flatten)]
        input: SystemInput,
    },
    /// Euler number of O(n) on P^1 for the section sign*x^n.
    #[command(name = "o-n")]
    ON {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value = "+1", allow_hyphen_values = true)]
        sign: String,
    },
    /// Euler number of O(n) on the square-root stack chart, n odd.
    #[command(name = "o-n-stacky")]
    ONStacky {
        #[arg(long)]
        n: u64,
    },
    /// Lines meeting six planes in P^4.
    LinesP4 {
        /// JSON plane configuration; a seeded random one otherwise.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Exchange alpha_1 and beta_1 before computing.
        #[arg(long)]
        swap_first_pair: bool,
    },
    /// Brute-force cross-check of the lines class over a prime field.
    VerifyLines {
        #[arg(long, default_value_t = 5)]
        trials: usize,
    },
    /// Gram matrix of (x, y) -> Tr(a x y) on base[t]/(modulus).
    TraceForm {
        /// Monic squarefree polynomial in t.
        #[arg(long)]
        modulus: String,
        /// Element a written in t.
        #[arg(long)]
        element: String,
    },
    /// Compare the sum of local indices over a fiber with the global degree.
    Consistency {
        #[command(flatten)]
        input: SystemInput,
        #[arg(long, allow_hyphen_values = true)]
        value: Option<String>,
        /// Irreducible factors (in one variable) to use when splitting the eliminant.
        #[arg(long)]
        hint: Vec<String>,
    },
}

#[derive(Serialize)]
struct RunManifest {
    command: String,
    version: &'static str,
    field: FieldSpec,
    seed: Option<u64>,
    order: MonomialOrder,
    mode: TransferMode,
    timing: Option<Value>,
}

struct Report {
    text: String,
    json: Value,
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Simplify { .. } => "simplify",
        Command::Degree { .. } => "degree",
        Command::Ss { .. } => "ss",
        Command::ON { .. } => "o-n",
        Command::ONStacky { .. } => "o-n-stacky",
        Command::LinesP4 { .. } => "lines-p4",
        Command::VerifyLines { .. } => "verify-lines",
        Command::TraceForm { .. } => "trace-form",
        Command::Consistency { .. } => "consistency",
    }
}

fn build_field(g: &Global) -> gw_euler_core::Result<FieldCtx> {
    let f = match (&g.field, g.p) {
        (Some(f), _) => f.trim(),
        (None, Some(_)) => "fp",
        (None, None) => "Q",
    };
    match (f, g.p) {
        ("fp" | "Fp", Some(p)) => FieldCtx::prime(p),
        ("fp" | "Fp", None) => Err(Error::Invalid("--field fp needs --p".into())),
        _ => match f.strip_prefix("ext:") {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{path}: {e}")))?;
                text.parse::<FieldSpec>()?.build()
            }
            None => f.parse::<FieldSpec>()?.build(),
        },
    }
}

fn read_system(ctx: &FieldCtx, input: &SystemInput) -> gw_euler_core::Result<Vec<MultiPoly>> {
    let text = match (&input.file, &input.system) {
        (Some(path), _) => std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?,
        (None, Some(s)) => s.clone(),
        (None, None) => return Err(Error::Invalid("give --system or --file".into())),
    };
    match &input.vars {
        Some(v) => {
            let names: Vec<&str> = v.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            parse_system_with_vars(ctx, &text, &names)
        }
        None => parse_system(ctx, &text),
    }
}

fn read_value(ctx: &FieldCtx, value: &Option<String>, n: usize) -> gw_euler_core::Result<Vec<FieldElem>> {
    match value {
        None => Ok(vec![ctx.zero(); n]),
        Some(v) => {
            let out = v.split(',').map(|s| parse_scalar(ctx, s.trim())).collect::<gw_euler_core::Result<Vec<_>>>()?;
            if out.len() != n {
                return Err(Error::Invalid(format!("value has {} entries, system has {n}", out.len())));
            }
            Ok(out)
        }
    }
}

/// Coefficients (constant term first) of a polynomial in one variable.
fn univariate(ctx: &FieldCtx, text: &str, var: &str) -> gw_euler_core::Result<Vec<FieldElem>> {
    let p = parse_system_with_vars(ctx, text, &[var])?.remove(0);
    let deg = p.total_degree().unwrap_or(0) as usize;
    let mut out = vec![ctx.zero(); deg + 1];
    for (e, c) in p.terms() {
        out[e[0] as usize] = c.clone();
    }
    Ok(out)
}

fn class_json(c: &GWClass) -> Value {
    json!({
        "class": c.to_string(),
        "class_json": c.to_json(),
        "invariants": c.invariants().ok(),
    })
}

fn run(cli: &Cli, ctx: &FieldCtx) -> gw_euler_core::Result<Report> {
    let g = &cli.global;
    match &cli.command {
        Command::Simplify { expr } => {
            let c = GWClass::parse(ctx, expr)?;
            Ok(Report {
                text: c.to_string(),
                json: class_json(&c),
            })
        }
        Command::Degree { input, value } => {
            let sys = read_system(ctx, input)?;
            let v = read_value(ctx, value, sys.len())?;
            let c = global_degree(&sys, &v, g.order)?;
            Ok(Report {
                text: c.to_string(),
                json: class_json(&c),
            })
        }
        Command::Ss { input } => {
            let sys = read_system(ctx, input)?;
            let r = ss_class(&sys, g.order)?;
            Ok(Report {
                text: r.class.to_string(),
                json: r.to_json(),
            })
        }
        Command::ON { n, sign } => {
            let s: i64 = sign.trim_start_matches('+').parse().map_err(|_| Error::Parse(format!("bad sign '{sign}'")))?;
            let r = euler_o_n_over(ctx, *n, s, g.mode)?;
            Ok(Report {
                text: r.class.to_string(),
                json: r.to_json(),
            })
        }
        Command::ONStacky { n } => {
            let r = euler_o_n_stacky(*n, g.mode)?;
            Ok(Report {
                text: r.class.to_string(),
                json: r.to_json(),
            })
        }
        Command::LinesP4 { config, swap_first_pair } => {
            let planes = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
                    let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
                    PlaneConfig::from_json(ctx, &v)?
                }
                None => PlaneConfig::random(ctx, 4, &mut rng::seeded(g.seed.unwrap_or(0)))?,
            };
            let planes = if *swap_first_pair { planes.swap_first_pair() } else { planes };
            let r = euler_lines(&planes, g.order)?;
            let mut j = r.to_json();
            j["configuration"] = planes.to_json();
            Ok(Report {
                text: r.class.to_string(),
                json: j,
            })
        }
        Command::VerifyLines { trials } => {
            let p = match ctx {
                FieldCtx::Prime(p) => *p,
                _ => g.p.ok_or_else(|| Error::Invalid("verify-lines needs --p or --field fp:<p>".into()))?,
            };
            let r = verify_lines_class(p, g.seed.unwrap_or(0), *trials)?;
            let mut lines = Vec::new();
            for t in &r.trials {
                let rep = &t.report;
                lines.push(match &rep.degenerate {
                    Some(why) => format!("trial {}: degenerate ({why}) after {} reseeds", t.index, t.reseeds),
                    None => format!(
                        "trial {}: {} rank {} disc {} swapped disc {} rational lines {} {}",
                        t.index,
                        rep.class.as_deref().unwrap_or("?"),
                        rep.rank.unwrap_or(0),
                        rep.disc.as_deref().unwrap_or("?"),
                        rep.disc_swapped.as_deref().unwrap_or("?"),
                        rep.incident_lines.len(),
                        if rep.passed { "pass" } else { "fail" }
                    ),
                });
            }
            lines.push(format!("passed {} failed {} degenerate {}", r.passed, r.failed, r.degenerate));
            Ok(Report {
                text: lines.join("\n"),
                json: r.to_json(),
            })
        }
        Command::TraceForm { modulus, element } => {
            let m = univariate(ctx, modulus, "t")?;
            let alg = make_extension(ctx, &m)?;
            let a = parse_system_with_vars(ctx, element, &["t"])?.remove(0).eval_in(alg.ctx(), &[alg.generator()])?;
            let form = trace_form(&alg, &a)?;
            let class = form.class()?;
            let rows: Vec<String> = form
                .matrix()
                .iter()
                .map(|r| format!("[{}]", r.iter().map(|x| ctx.format_elem(x)).collect::<Vec<_>>().join(", ")))
                .collect();
            let mut j = class_json(&class);
            j["gram"] = form.to_json();
            Ok(Report {
                text: format!("[{}]\n{}", rows.join(", "), class),
                json: j,
            })
        }
        Command::Consistency { input, value, hint } => {
            let sys = read_system(ctx, input)?;
            let v = read_value(ctx, value, sys.len())?;
            let var = sys.first().map(|f| f.vars()[0].clone()).unwrap_or_default();
            let hints = hint.iter().map(|h| univariate(ctx, h, &var)).collect::<gw_euler_core::Result<Vec<_>>>()?;
            let r = consistency_report(&sys, &v, &hints, g.order)?;
            let mut lines: Vec<String> = r.points.iter().map(|p| format!("{} -> {}", p.point["coords"], p.index)).collect();
            lines.push(format!("local sum {}", r.local_sum));
            lines.push(format!("global {}", r.global));
            lines.push(format!("verdict {}", r.verdict));
            Ok(Report {
                text: lines.join("\n"),
                json: serde_json::to_value(&r).expect("report serializes"),
            })
        }
    }
}

fn manifest(cli: &Cli, field: FieldSpec, timing: Option<Value>) -> RunManifest {
    RunManifest {
        command: command_name(&cli.command).to_string(),
        version: env!("CARGO_PKG_VERSION"),
        field,
        seed: cli.global.seed,
        order: cli.global.order,
        mode: cli.global.mode,
        timing,
    }
}

fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let start = Instant::now();
    let ctx = build_field(&cli.global);
    let result = ctx.as_ref().map_err(Clone::clone).and_then(|k| run(&cli, k));
    let timing = cli.global.timing.then(|| json!({ "elapsed_ms": start.elapsed().as_secs_f64() * 1000.0 }));
    let field = match &ctx {
        Ok(k) => k.spec(),
        Err(_) => FieldSpec::Q,
    };
    let m = manifest(&cli, field, timing);
    match result {
        Ok(report) => {
            if cli.global.json {
                emit(&serde_json::to_string_pretty(&json!({ "manifest": m, "result": report.json })).expect("json"));
            } else {
                emit(&report.text);
                emit(&format!("# {}", serde_json::to_string(&m).expect("json")));
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let err = json!({
                "error": { "kind": e.kind(), "message": e.to_string() },
                "manifest": m,
            });
            emit(&serde_json::to_string_pretty(&err).expect("json"));
            ExitCode::from(2)
        }
    }
}
