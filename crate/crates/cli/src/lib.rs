//! The `lipfree` command line: argument parsing, dispatch and report rendering.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use lipfree::free_space::{free_norm, lip_vertices_integral};
use lipfree::io::{
    graph_to_value, hpolytope_to_value, metric_to_value, parse_instance, parse_polytope, parse_vector,
    vpolytope_to_value, Exact, PolytopeInput,
};
use lipfree::metric::{canonical_graph, MetricError};
use lipfree::polytope::{
    hull_to_hrep, monte_carlo_volume, polar, polar_of_hrep, reduce_to_vertices, vertex_enumeration, volume,
};
use lipfree::product::{
    extremal_search, maximizer_conditions, minimizer_conditions, volume_product_f64, Objective, SearchConfig,
    SearchMode,
};
use lipfree::rational::{approx_string, format_rational, format_rational_pq, Rational};
use lipfree::structure::{classify, decompose, isometry_check, symmetric_faces, FaceTemplate, IsometryOutcome};
use lipfree::{free_ball, volume_product, MetricSpace};

mod batch;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ObjectiveArg {
    Max,
    Min,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BatchCommand {
    Product,
    Classify,
}

#[derive(Debug, Parser)]
#[command(name = "lipfree", version, about = "Unit balls and volume products of Lipschitz-free spaces")]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Record wall-clock time in the JSON manifest (reports are then no longer byte-stable).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the metric axioms of an instance.
    Validate {
        #[arg(long)]
        input: PathBuf,
    },
    /// Canonical graph of a metric space.
    Graph {
        #[arg(long)]
        input: PathBuf,
    },
    /// Vertices and facets of the free-space ball and vertices of the Lipschitz ball.
    Ball {
        #[arg(long)]
        input: PathBuf,
        /// Write the JSON ball here instead of printing the report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Polar of a polytope given by vertices or halfspaces.
    Polar {
        #[arg(long)]
        input: PathBuf,
    },
    /// Exact volume of a polytope, optionally with a Monte Carlo estimate.
    Volume {
        #[arg(long)]
        input: PathBuf,
        /// Number of Monte Carlo samples (0 disables the estimate).
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Volume product report.
    Product {
        #[arg(long)]
        input: PathBuf,
        /// Floating-point evaluation instead of exact arithmetic.
        #[arg(long)]
        float: bool,
    },
    /// Structural classification.
    Classify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Biconnected components as metric spaces with their gluing data.
    Decompose {
        #[arg(long)]
        input: PathBuf,
    },
    /// Decide whether two free spaces are isometric.
    Isometric {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Largest number of edges per component for the bijection search.
        #[arg(long, default_value_t = lipfree::structure::DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Exact free norm of a vector in coordinates of the non-root points.
    Norm {
        #[arg(long)]
        input: PathBuf,
        /// Vector such as "[1,-1/2,0]".
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
    },
    /// Centrally symmetric faces of dimension at least 2 and their templates.
    Faces {
        #[arg(long)]
        input: PathBuf,
    },
    /// Hill-climbing search for extremal volume products.
    Search {
        #[arg(long)]
        points: usize,
        #[arg(long, value_enum)]
        objective: ObjectiveArg,
        #[arg(long, default_value_t = 500)]
        iters: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.2)]
        t0: f64,
        #[arg(long, default_value_t = 0.5)]
        decay: f64,
        /// Evaluate every iterate exactly.
        #[arg(long)]
        exact: bool,
        /// Starting metric; random integer distances when absent.
        #[arg(long)]
        start: Option<PathBuf>,
        /// Write the best metric found here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run `product` or `classify` on every `.json` file of a directory.
    Batch {
        #[arg(long)]
        dir: PathBuf,
        #[arg(long, value_enum, default_value_t = BatchCommand::Product)]
        command: BatchCommand,
        /// Write the table here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
pub(crate) enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => m,
        }
    }
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub inputs: Vec<String>,
    pub seed: Option<u64>,
    pub mode: &'static str,
    pub version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

/// A rendered command result: JSON body plus its text form.
pub(crate) struct Report {
    json: Value,
    text: String,
}

pub(crate) fn read_input(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))
}

pub(crate) fn load_metric(path: &Path) -> Result<MetricSpace, CliError> {
    let text = read_input(path)?;
    parse_instance(&text).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, body: &str) -> Result<(), CliError> {
    std::fs::write(path, body).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn exact(r: &Rational) -> Value {
    serde_json::to_value(Exact::from(r)).expect("serializable")
}

fn labels(m: &MetricSpace, (i, j): (usize, usize)) -> String {
    format!("m({},{})", m.labels()[i], m.labels()[j])
}

/// `P(M) = 9 (exact 9/1), gap = 1 (9 − 8)`.
pub fn product_line(product: &Rational, floor: &Rational, gap: &Rational) -> String {
    format!(
        "P(M) = {} (exact {}), gap = {} ({} − {})",
        approx_string(product),
        format_rational_pq(product),
        approx_string(gap),
        format_rational(product),
        format_rational(floor)
    )
}

fn cmd_validate(input: &Path) -> Result<Report, CliError> {
    let text = read_input(input)?;
    match parse_instance(&text) {
        Ok(m) => Ok(Report {
            text: format!("valid metric space on {} points (n = {}, root {})\n", m.len(), m.dim(), m.labels()[m.root()]),
            json: json!({"valid": true, "points": m.len(), "n": m.dim(), "root": m.root()}),
        }),
        Err(lipfree::io::FormatError::Metric(MetricError::NotAMetric(v))) => {
            let mut msg = format!("{}: not a metric space", input.display());
            for x in &v {
                let _ = write!(msg, "\n  {x}");
            }
            Err(CliError::Domain(msg))
        }
        Err(e) => Err(CliError::Domain(format!("{}: {e}", input.display()))),
    }
}

fn cmd_graph(input: &Path) -> Result<Report, CliError> {
    let m = load_metric(input)?;
    let g = canonical_graph(&m);
    let mut text = format!("canonical graph: {} vertices, {} edges\n", g.vertex_count(), g.edges().len());
    for e in g.edges() {
        let _ = writeln!(text, "  {} -- {}  {}", m.labels()[e.u], m.labels()[e.v], format_rational(&e.w));
    }
    Ok(Report {
        json: graph_to_value(&g),
        text,
    })
}

fn cmd_ball(input: &Path, out: Option<&Path>) -> Result<Report, CliError> {
    let m = load_metric(input)?;
    let model = free_ball(&m).map_err(domain)?;
    let facets = model.facets();
    let vertices: Vec<Value> = model
        .vrep
        .vertices()
        .iter()
        .zip(&model.vertex_labels)
        .map(|(v, &(i, j))| json!({"molecule": [i, j], "coords": v.iter().map(format_rational).collect::<Vec<_>>()}))
        .collect();
    let ball = json!({
        "dim": model.dim(),
        "vertices": vertices,
        "facets": hpolytope_to_value(&facets)["halfspaces"],
        "lipschitz_vertices": vpolytope_to_value(model.lip_vertices())["vertices"],
        "lipschitz_vertices_integral": lip_vertices_integral(&model),
    });
    if let Some(path) = out {
        write_file(path, &pretty(&ball))?;
    }
    let mut text = format!(
        "B_F: {} vertices, {} facets; B_Lip0: {} vertices\n",
        model.vrep.len(),
        facets.len(),
        model.lip_vertices().len()
    );
    for (v, &l) in model.vrep.vertices().iter().zip(&model.vertex_labels) {
        let coords: Vec<String> = v.iter().map(format_rational).collect();
        let _ = writeln!(text, "  {} = [{}]", labels(&m, l), coords.join(", "));
    }
    Ok(Report { json: ball, text })
}

fn cmd_polar(input: &Path) -> Result<Report, CliError> {
    let text = read_input(input)?;
    let p = parse_polytope(&text).map_err(|e| CliError::Domain(format!("{}: {e}", input.display())))?;
    let (verts, halfspaces) = match p {
        PolytopeInput::Vertices(v) => {
            let v = reduce_to_vertices(v.vertices()).map_err(domain)?;
            let h = polar(&v).map_err(domain)?;
            (vertex_enumeration(&h).map_err(domain)?, h)
        }
        PolytopeInput::Halfspaces(h) => {
            let v = polar_of_hrep(&h).map_err(domain)?;
            let hv = hull_to_hrep(&v).map_err(domain)?;
            (v, hv)
        }
    };
    let json = json!({
        "dim": verts.dim(),
        "vertices": vpolytope_to_value(&verts)["vertices"],
        "halfspaces": hpolytope_to_value(&halfspaces)["halfspaces"],
    });
    Ok(Report {
        text: format!("polar: {} vertices, {} facets\n", verts.len(), halfspaces.len()),
        json,
    })
}

fn cmd_volume(input: &Path, samples: usize, seed: u64) -> Result<Report, CliError> {
    let text = read_input(input)?;
    let p = parse_polytope(&text).map_err(|e| CliError::Domain(format!("{}: {e}", input.display())))?;
    let (v, h) = match p {
        PolytopeInput::Vertices(v) => {
            let v = reduce_to_vertices(v.vertices()).map_err(domain)?;
            let h = hull_to_hrep(&v).map_err(domain)?;
            (v, h)
        }
        PolytopeInput::Halfspaces(h) => (vertex_enumeration(&h).map_err(domain)?, h),
    };
    let vol = volume(&v, &h).map_err(domain)?;
    let mut json = json!({"dim": v.dim(), "vertices": v.len(), "facets": h.len(), "volume": exact(&vol)});
    let mut text = format!("volume = {} (exact {})\n", approx_string(&vol), format_rational_pq(&vol));
    if samples > 0 {
        let mc = monte_carlo_volume(&h, samples, seed).map_err(domain)?;
        json["monte_carlo"] = serde_json::to_value(mc).expect("serializable");
        let _ = writeln!(text, "monte carlo = {:.6} ± {:.6} ({} samples)", mc.estimate, mc.half_width, mc.samples);
    }
    Ok(Report { json, text })
}

fn cmd_product(input: &Path, float: bool) -> Result<Report, CliError> {
    let m = load_metric(input)?;
    if float {
        let p = volume_product_f64(&m).map_err(domain)?;
        return Ok(Report {
            text: format!("P(M) ≈ {p} (float)\n"),
            json: json!({"n": m.dim(), "product": p}),
        });
    }
    let r = volume_product(&m);
    let mut json = serde_json::to_value(&r).expect("serializable");
    json["product_approx"] = Value::String(approx_string(&r.product));
    json["gap_approx"] = Value::String(approx_string(&r.gap));
    json["edges"] = json!(canonical_graph(&m).edges().len());
    let mut text = product_line(&r.product, &r.mahler_floor, &r.gap);
    text.push('\n');
    let _ = writeln!(
        text,
        "n = {}, |B_F| = {}, |B_Lip0| = {}, strict triangles = {}, simplicial = {}, all bridges = {}",
        r.n,
        format_rational(&r.vol_free),
        format_rational(&r.vol_lip),
        r.flags.strict_triangles,
        r.flags.simplicial,
        r.flags.all_bridges
    );
    if r.n > 0 {
        json["maximizer_conditions"] = serde_json::to_value(maximizer_conditions(&m)).expect("serializable");
        json["minimizer_conditions"] =
            serde_json::to_value(minimizer_conditions(&m).map_err(domain)?).expect("serializable");
    }
    Ok(Report { json, text })
}

fn cmd_classify(input: &Path) -> Result<Report, CliError> {
    let m = load_metric(input)?;
    let c = classify(&m);
    let json = serde_json::to_value(&c).expect("serializable");
    let mut text = String::new();
    for (k, v) in json.as_object().expect("struct serializes to an object") {
        let _ = writeln!(text, "{k}={v}");
    }
    Ok(Report { json, text })
}

fn cmd_decompose(input: &Path) -> Result<Report, CliError> {
    let m = load_metric(input)?;
    let dec = decompose(&m);
    let comps: Vec<Value> = dec
        .components
        .iter()
        .zip(&dec.gluing)
        .map(|(c, g)| json!({"metric": metric_to_value(c), "gluing": g}))
        .collect();
    let mut text = format!("{} components\n", dec.components.len());
    for (c, g) in dec.components.iter().zip(&dec.gluing) {
        let names: Vec<&str> = g.points.iter().map(|&p| m.labels()[p].as_str()).collect();
        let _ = writeln!(text, "  {{{}}} attached at {} (n = {})", names.join(", "), m.labels()[g.attach], c.dim());
    }
    Ok(Report {
        json: json!({"components": comps}),
        text,
    })
}

fn cmd_isometric(a: &Path, b: &Path, budget: usize) -> Result<Report, CliError> {
    let ma = load_metric(a)?;
    let mb = load_metric(b)?;
    match isometry_check(&ma, &mb, budget).map_err(domain)? {
        IsometryOutcome::Isometric(w) => {
            let ratios: Vec<String> = w.ratios.iter().map(format_rational).collect();
            let matrix: Vec<Vec<String>> = w.matrix.iter().map(|r| r.iter().map(format_rational).collect()).collect();
            Ok(Report {
                text: format!("isometric: yes (component ratios {})\n", ratios.join(", ")),
                json: json!({
                    "isometric": true,
                    "witness": {
                        "sigma": w.sigma,
                        "signs": w.signs,
                        "components": w.components,
                        "ratios": ratios,
                        "matrix": matrix,
                    }
                }),
            })
        }
        IsometryOutcome::NotIsometric(why) => Ok(Report {
            text: format!("isometric: no ({why})\n"),
            json: json!({"isometric": false, "reason": why}),
        }),
    }
}

fn cmd_norm(input: &Path, vector: &str) -> Result<Report, CliError> {
    let m = load_metric(input)?;
    let phi = parse_vector(vector).map_err(|e| CliError::Usage(format!("--vector: {e}")))?;
    if phi.len() != m.dim() {
        return Err(CliError::Domain(format!(
            "vector has {} entries but the space has dimension {}",
            phi.len(),
            m.dim()
        )));
    }
    let norm = free_norm(&m, &phi);
    Ok(Report {
        text: format!("{} (approx {})\n", format_rational(&norm), approx_string(&norm)),
        json: json!({"norm": exact(&norm)}),
    })
}

fn cmd_faces(input: &Path) -> Result<Report, CliError> {
    let m = load_metric(input)?;
    let faces = symmetric_faces(&m).map_err(domain)?;
    let mut text = format!("{} centrally symmetric faces\n", faces.len());
    for f in &faces {
        let kind = match f.template {
            FaceTemplate::Square { .. } => "a",
            FaceTemplate::Midpoints { .. } => "b",
        };
        let mols: Vec<String> = f.molecules.iter().map(|&l| labels(&m, l)).collect();
        let _ = writeln!(text, "  dim {} type {kind}: {}", f.dimension, mols.join(" "));
    }
    Ok(Report {
        json: json!({"faces": faces}),
        text,
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    points: usize,
    objective: ObjectiveArg,
    iters: usize,
    seed: u64,
    t0: f64,
    decay: f64,
    exact_mode: bool,
    start: Option<&Path>,
    out: Option<&Path>,
) -> Result<Report, CliError> {
    let objective = match objective {
        ObjectiveArg::Max => Objective::Maximize,
        ObjectiveArg::Min => Objective::Minimize,
    };
    let mut cfg = SearchConfig::new(points, objective, iters, seed);
    cfg.t0 = t0;
    cfg.decay = decay;
    cfg.mode = if exact_mode { SearchMode::Exact } else { SearchMode::Float };
    cfg.start = start.map(load_metric).transpose()?;
    let r = extremal_search(&cfg).map_err(|e| CliError::Usage(e.to_string()))?;
    let best = metric_to_value(&r.best_metric);
    if let Some(path) = out {
        write_file(path, &pretty(&best))?;
    }
    let accepted = r.trace.iter().filter(|t| t.accepted).count();
    Ok(Report {
        text: format!(
            "best P = {} (exact {}) after {} iterations, {accepted} accepted\n",
            approx_string(&r.best_product),
            format_rational_pq(&r.best_product),
            r.trace.len()
        ),
        json: json!({
            "best_product": exact(&r.best_product),
            "best_metric": best,
            "trace": r.trace,
        }),
    })
}

fn threads() -> Result<Option<usize>, CliError> {
    match std::env::var("LIPFREE_THREADS") {
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!("LIPFREE_THREADS must be a positive integer, got {s:?}"))),
        },
        Err(_) => Ok(None),
    }
}

struct Dispatched {
    report: Report,
    inputs: Vec<String>,
    seed: Option<u64>,
    mode: &'static str,
}

fn dispatch(command: &Command, format: Format) -> Result<Dispatched, CliError> {
    let show = |p: &Path| p.display().to_string();
    let plain = |report: Report, p: &Path| Dispatched {
        report,
        inputs: vec![show(p)],
        seed: None,
        mode: "exact",
    };
    Ok(match command {
        Command::Validate { input } => plain(cmd_validate(input)?, input),
        Command::Graph { input } => plain(cmd_graph(input)?, input),
        Command::Ball { input, out } => plain(cmd_ball(input, out.as_deref())?, input),
        Command::Polar { input } => plain(cmd_polar(input)?, input),
        Command::Volume { input, samples, seed } => Dispatched {
            report: cmd_volume(input, *samples, *seed)?,
            inputs: vec![show(input)],
            seed: (*samples > 0).then_some(*seed),
            mode: "exact",
        },
        Command::Product { input, float } => Dispatched {
            report: cmd_product(input, *float)?,
            inputs: vec![show(input)],
            seed: None,
            mode: if *float { "float" } else { "exact" },
        },
        Command::Classify { input } => plain(cmd_classify(input)?, input),
        Command::Decompose { input } => plain(cmd_decompose(input)?, input),
        Command::Isometric { a, b, budget } => Dispatched {
            report: cmd_isometric(a, b, *budget)?,
            inputs: vec![show(a), show(b)],
            seed: None,
            mode: "exact",
        },
        Command::Norm { input, vector } => plain(cmd_norm(input, vector)?, input),
        Command::Faces { input } => plain(cmd_faces(input)?, input),
        Command::Search {
            points,
            objective,
            iters,
            seed,
            t0,
            decay,
            exact,
            start,
            out,
        } => Dispatched {
            report: cmd_search(*points, *objective, *iters, *seed, *t0, *decay, *exact, start.as_deref(), out.as_deref())?,
            inputs: start.iter().map(|p| show(p)).collect(),
            seed: Some(*seed),
            mode: if *exact { "exact" } else { "float" },
        },
        Command::Batch { dir, command, out } => {
            let report = batch::run(dir, *command, threads()?)?;
            let report = match out {
                Some(path) => {
                    let body = match format {
                        Format::Json => pretty(&report.json),
                        Format::Text => report.text.clone(),
                    };
                    write_file(path, &body)?;
                    Report {
                        text: format!("wrote {}\n", path.display()),
                        json: report.json,
                    }
                }
                None => report,
            };
            Dispatched {
                report,
                inputs: vec![show(dir)],
                seed: None,
                mode: "exact",
            }
        }
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Graph { .. } => "graph",
        Command::Ball { .. } => "ball",
        Command::Polar { .. } => "polar",
        Command::Volume { .. } => "volume",
        Command::Product { .. } => "product",
        Command::Classify { .. } => "classify",
        Command::Decompose { .. } => "decompose",
        Command::Isometric { .. } => "isometric",
        Command::Norm { .. } => "norm",
        Command::Faces { .. } => "faces",
        Command::Search { .. } => "search",
        Command::Batch { .. } => "batch",
    }
}

/// Runs the command line with explicit output streams; returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                return 2;
            }
            let _ = out.write_all(text.as_bytes());
            return 0;
        }
    };
    let start = Instant::now();
    match dispatch(&cli.command, cli.format) {
        Ok(d) => {
            let body = match cli.format {
                Format::Text => d.report.text,
                Format::Json => {
                    let manifest = RunManifest {
                        command: command_name(&cli.command).to_string(),
                        inputs: d.inputs,
                        seed: d.seed,
                        mode: d.mode,
                        version: VERSION,
                        timing_ms: cli.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
                    };
                    pretty(&json!({"manifest": manifest, "report": d.report.json}))
                }
            };
            let _ = out.write_all(body.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "lipfree: {}", e.message());
            e.code()
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
