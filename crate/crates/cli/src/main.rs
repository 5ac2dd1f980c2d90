use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use dihedral_schubert::algebra::UniversalAlgebra;
use dihedral_schubert::building::{bar_step, graph_metrics, min_slope_scan, ChamberGraph, SlopeField, WeightedConfiguration};
use dihedral_schubert::cones::{
    a1_oracle, cone_equal, gen_bk, gen_km, gen_sti, gen_wti, is_member, point_from_json, redundancy_audit, AuditStatus,
    ConeGeometry, InequalitySystem, KmAlgebra, DEFAULT_BUDGET,
};
use dihedral_schubert::dihedral::Side;
use dihedral_schubert::field::Field;
use dihedral_schubert::filtration::{self, ConcaveWeighting};
use dihedral_schubert::suites::{run_suite, SUITES};
use dihedral_schubert::Error;

const BUDGET_VAR: &str = "DSCHUBERT_BUDGET";

#[derive(Parser)]
#[command(name = "dschubert", version, about = "Dihedral Schubert calculus, stability cones and polygon buildings")]
struct Cli {
    /// Write the JSON document here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    At,
    Gr,
    Limit,
    Bi,
}

#[derive(Clone, Copy, ValueEnum)]
enum Weighting {
    Phi,
    Phi1,
    Phi2,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Latex,
}

#[derive(Subcommand)]
enum Command {
    /// Multiplication table of A_t, gr A_t, its limit, or B^(i).
    MultTable {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "at")]
        algebra: TableKind,
        #[arg(long, value_enum, default_value = "phi")]
        weighting: Weighting,
        /// Side of B^(i) for `--algebra bi`.
        #[arg(long, default_value_t = 1)]
        side: u8,
    },
    /// Generates an inequality system.
    Cone {
        /// wti, sti, km[:ALG], bk or oracle, optionally prefixed by `theta:` and suffixed by `@m`.
        #[arg(long)]
        system: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "json")]
        out: Format,
    },
    /// Tests a point, given as a JSON list of `[a, b]` weights, for membership.
    Member {
        #[arg(long)]
        system: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        point: PathBuf,
    },
    /// Facet certificates for every inequality of a system.
    Audit {
        #[arg(long)]
        system: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: usize,
        /// Exit 1 if some inequality is not a facet.
        #[arg(long)]
        strict: bool,
    },
    /// Certified equality of two cones.
    Equal {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: usize,
    },
    /// An apartment followed by bar steps.
    Build {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        stages: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Maximum number of pairs handled per bar step.
        #[arg(long, default_value_t = 5000)]
        cap: usize,
        /// Process a seeded sample when a step exceeds the cap.
        #[arg(long)]
        sample: bool,
    },
    /// Slopes of a weighted configuration on a graph written by `build`.
    Slope {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        config: PathBuf,
    },
    /// Runs a named acceptance suite.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
    },
}

enum Failure {
    Usage(String),
    Budget(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::BudgetExceeded(_) => Failure::Budget(e.to_string()),
            Error::InvalidParameter(_) | Error::NotDominant { .. } | Error::OutOfRange { .. } => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Other(e.to_string()),
        }
    }
}

type Outcome = Result<Document, Failure>;

/// A result together with the manifest that reproduces it.
struct Document {
    parameters: Value,
    seed: Option<u64>,
    field: Value,
    outputs: Vec<(&'static str, Value)>,
    latex: Option<String>,
    failure: Option<String>,
}

impl Document {
    fn new(parameters: Value, field: Value) -> Document {
        Document { parameters, seed: None, field, outputs: Vec::new(), latex: None, failure: None }
    }

    fn output(mut self, name: &'static str, value: Value) -> Document {
        self.outputs.push((name, value));
        self
    }

    fn render(&self, command: &str) -> String {
        let mut digests = Map::new();
        let mut body = Map::new();
        for (name, value) in &self.outputs {
            digests.insert(name.to_string(), json!(sha256(&serde_json::to_string(value).expect("json"))));
            body.insert(name.to_string(), value.clone());
        }
        if let Some(latex) = &self.latex {
            digests.insert("latex".into(), json!(sha256(latex)));
        }
        let manifest = json!({
            "command": command,
            "parameters": self.parameters,
            "seed": self.seed,
            "field": self.field,
            "toolchain": {"rustc": env!("DSCHUBERT_RUSTC"), "crate": env!("CARGO_PKG_VERSION")},
            "output_digests": digests,
        });
        match &self.latex {
            Some(latex) => {
                let manifest = serde_json::to_string(&manifest).expect("json");
                format!("% manifest: {manifest}\n{latex}")
            }
            None => {
                body.insert("manifest".into(), manifest);
                let mut s = serde_json::to_string_pretty(&Value::Object(body)).expect("json");
                s.push('\n');
                s
            }
        }
    }
}

fn sha256(s: &str) -> String {
    format!("{:x}", Sha256::digest(s.as_bytes()))
}

fn budget() -> Result<usize, Failure> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v.parse().map_err(|_| Failure::Usage(format!("{BUDGET_VAR}={v} is not a number"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn field_json(n: u32) -> Result<Value, Failure> {
    Ok(Field::cyclotomic(n)?.descriptor().to_json())
}

fn side(k: u8) -> Result<Side, Failure> {
    Side::from_number(k).ok_or_else(|| Failure::Usage(format!("side {k} is not 1 or 2")))
}

/// `[theta:]kind[:algebra][@m]`
fn system(spec: &str, n: u32, m: usize) -> Result<InequalitySystem, Failure> {
    let (spec, theta) = match spec.strip_prefix("theta:") {
        Some(rest) => (rest, true),
        None => (spec, false),
    };
    let (spec, m) = match spec.split_once('@') {
        Some((s, k)) => (s, k.parse().map_err(|_| Failure::Usage(format!("bad slot count in {spec}")))?),
        None => (spec, m),
    };
    let budget = budget()?;
    let sys = match spec.split_once(':').unwrap_or((spec, "at")) {
        ("wti", _) => gen_wti(n, m)?.system,
        ("sti", _) => gen_sti(n, m, budget)?,
        ("bk", _) => gen_bk(n, m, budget)?,
        ("oracle", _) => {
            if n != 2 {
                return Err(Failure::Usage("the oracle system exists for n = 2 only".into()));
            }
            a1_oracle(m)?
        }
        ("km", alg) => {
            let kind = KmAlgebra::parse(alg).ok_or_else(|| Failure::Usage(format!("unknown algebra {alg}")))?;
            gen_km(kind, n, m, budget)?
        }
        _ => return Err(Failure::Usage(format!("unknown system {spec}"))),
    };
    Ok(if theta { sys.pushforward_theta() } else { sys })
}

fn read_json(path: &PathBuf) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn mult_table(n: u32, kind: TableKind, weighting: Weighting, k: u8) -> Outcome {
    let field = Field::cyclotomic(n)?;
    let alg = UniversalAlgebra::new(&field);
    let wt = match weighting {
        Weighting::Phi => ConcaveWeighting::full(&alg),
        Weighting::Phi1 => ConcaveWeighting::side(&alg, Side::One),
        Weighting::Phi2 => ConcaveWeighting::side(&alg, Side::Two),
    };
    let table = match kind {
        TableKind::At => alg.table_json(&alg.basis())?,
        TableKind::Gr => filtration::table_json(&wt, false)?,
        TableKind::Limit => filtration::table_json(&wt, true)?,
        TableKind::Bi => alg.table_json(&alg.grassmannian_basis(side(k)?))?,
    };
    let name = ["at", "gr", "limit", "bi"][kind as usize];
    let weighting = ["phi", "phi1", "phi2"][weighting as usize];
    let params = json!({"n": n, "algebra": name, "weighting": weighting, "side": k});
    Ok(Document::new(params, field.descriptor().to_json()).output("table", table))
}

fn cone(spec: &str, n: u32, m: usize, out: Format) -> Outcome {
    let sys = system(spec, n, m)?;
    let format = ["json", "latex"][out as usize];
    let params = json!({"system": spec, "n": n, "m": m, "out": format});
    let mut doc = Document::new(params, field_json(n)?);
    match out {
        Format::Json => doc = doc.output("system", sys.to_json()),
        Format::Latex => doc.latex = Some(sys.to_latex()),
    }
    Ok(doc)
}

fn member(spec: &str, n: u32, m: usize, path: &PathBuf) -> Outcome {
    let sys = system(spec, n, m)?;
    let point = point_from_json(&read_json(path)?)?;
    let r = is_member(&point, &sys)?;
    let result = json!({
        "verdict": if r.member { "member" } else { "not member" },
        "point": point.iter().map(|w| w.to_json()).collect::<Vec<_>>(),
        "violations": r.violations,
        "first_violated": r.violated,
        "tight": r.tight,
    });
    let params = json!({"system": spec, "n": n, "m": m, "point": path});
    Ok(Document::new(params, field_json(n)?).output("membership", result))
}

fn audit(spec: &str, n: u32, m: usize, strict: bool) -> Outcome {
    let sys = system(spec, n, m)?;
    let entries = redundancy_audit(&sys)?;
    let bad = entries.iter().find(|e| e.status != AuditStatus::Facet);
    let params = json!({"system": spec, "n": n, "m": m, "strict": strict});
    let mut doc = Document::new(params, field_json(n)?).output(
        "audit",
        json!({
            "inequalities": entries.len(),
            "facets": entries.iter().filter(|e| e.status == AuditStatus::Facet).count(),
            "entries": entries.iter().map(|e| e.to_json()).collect::<Vec<_>>(),
        }),
    );
    if strict {
        doc.failure = bad.map(|e| format!("{} is not a facet", e.tag));
    }
    Ok(doc)
}

fn equal(a: &str, b: &str, n: u32, m: usize) -> Outcome {
    let (sa, sb) = (system(a, n, m)?, system(b, n, m)?);
    let r = cone_equal(&sa, &sb)?;
    let params = json!({"a": a, "b": b, "n": n, "m": m});
    let mut doc = Document::new(params, field_json(n)?).output("equal", r.to_json());
    doc.failure = r.first_failure().map(|e| format!("{} is not implied by the other side", e.tag));
    Ok(doc)
}

fn build(n: u32, stages: usize, seed: u64, cap: usize, sample: bool) -> Outcome {
    let mut g = ChamberGraph::apartment(n, seed)?;
    let mut reports = Vec::new();
    for _ in 0..stages {
        g.next_stage();
        reports.push(bar_step(&mut g, cap, sample)?);
    }
    let params = json!({"n": n, "stages": stages, "seed": seed, "cap": cap, "sample": sample});
    let mut doc = Document::new(params, field_json(n)?)
        .output("graph", g.to_json())
        .output("metrics", json!(graph_metrics(&g)))
        .output("steps", json!(reports));
    doc.seed = Some(seed);
    Ok(doc)
}

fn slope(graph: &PathBuf, config: &PathBuf) -> Outcome {
    let gj = read_json(graph)?;
    // accept both a bare graph and the document written by `build`
    let g = ChamberGraph::from_json(gj.get("graph").unwrap_or(&gj))?;
    let config = WeightedConfiguration::from_json(&g, &read_json(config)?)?;
    let geometry = ConeGeometry::new(g.n())?;
    let field = SlopeField::new(&geometry, &g, &config);
    let slopes = (0..g.vertex_count()).map(|v| field.slope(&g, v).map(|s| s.to_json())).collect::<Result<Vec<_>, _>>()?;
    let mut minima = Map::new();
    for (name, l) in [("type1", Some(Side::One)), ("type2", Some(Side::Two)), ("all", None)] {
        let best = min_slope_scan(&geometry, &g, &config, l)?;
        minima.insert(name.into(), json!(best.map(|(v, s)| json!({"vertex": v, "slope": s.to_json()}))));
    }
    let params = json!({"graph": graph, "config": config.to_json()});
    let mut doc = Document::new(params, field_json(g.n())?).output("slopes", json!({"values": slopes, "minima": minima}));
    doc.seed = Some(g.seed());
    Ok(doc)
}

fn verify(name: &str) -> Outcome {
    let out = run_suite(name)?.ok_or_else(|| Failure::Usage(format!("unknown suite {name}")))?;
    let params = json!({"suite": name, "criterion": out.criterion});
    let mut doc = Document::new(params, Value::Null)
        .output("summary", json!({"passed": out.passed, "summary": out.summary}))
        .output("artifact", out.artifact);
    if !out.passed {
        doc.failure = Some(out.summary);
    }
    Ok(doc)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, outcome) = match &cli.command {
        Command::MultTable { n, algebra, weighting, side } => ("mult-table", mult_table(*n, *algebra, *weighting, *side)),
        Command::Cone { system, n, m, out } => ("cone", cone(system, *n, *m, *out)),
        Command::Member { system, n, m, point } => ("member", member(system, *n, *m, point)),
        Command::Audit { system, n, m, strict } => ("audit", audit(system, *n, *m, *strict)),
        Command::Equal { a, b, n, m } => ("equal", equal(a, b, *n, *m)),
        Command::Build { n, stages, seed, cap, sample } => ("build", build(*n, *stages, *seed, *cap, *sample)),
        Command::Slope { graph, config } => ("slope", slope(graph, config)),
        Command::Verify { suite } => ("verify", verify(suite)),
    };
    let doc = match outcome {
        Ok(doc) => doc,
        Err(f) => {
            let (code, kind, msg) = match f {
                Failure::Usage(m) => (2, "usage", m),
                Failure::Budget(m) => (3, "budget", m),
                Failure::Other(m) => (1, "error", m),
            };
            eprintln!("dschubert {name}: {kind} error: {msg}");
            return ExitCode::from(code);
        }
    };
    let text = doc.render(name);
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("dschubert {name}: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    match doc.failure {
        Some(first) => {
            eprintln!("dschubert {name}: verification failed: {first}");
            ExitCode::from(1)
        }
        None => ExitCode::SUCCESS,
    }
}
