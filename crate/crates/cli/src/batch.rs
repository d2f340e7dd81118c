use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use lipfree::metric::canonical_graph;
use lipfree::rational::format_rational;
use lipfree::structure::classify;
use lipfree::volume_product;

use crate::{load_metric, BatchCommand, CliError, Report};

#[derive(Debug, Clone, Default, Serialize)]
struct Row {
    file: String,
    n: Option<usize>,
    edges: Option<usize>,
    #[serde(flatten)]
    values: serde_json::Map<String, serde_json::Value>,
    error: Option<String>,
}

fn product_row(path: &Path) -> Result<(usize, usize, Vec<(&'static str, String)>), CliError> {
    let m = load_metric(path)?;
    let r = volume_product(&m);
    Ok((
        r.n,
        canonical_graph(&m).edges().len(),
        vec![
            ("vol_free", format_rational(&r.vol_free)),
            ("vol_lip", format_rational(&r.vol_lip)),
            ("product", format_rational(&r.product)),
            ("gap", format_rational(&r.gap)),
            ("strict_triangles", r.flags.strict_triangles.to_string()),
            ("simplicial", r.flags.simplicial.to_string()),
            ("all_bridges", r.flags.all_bridges.to_string()),
        ],
    ))
}

fn classify_row(path: &Path) -> Result<(usize, usize, Vec<(&'static str, String)>), CliError> {
    let m = load_metric(path)?;
    let c = classify(&m);
    let opt = |b: Option<bool>| b.map_or_else(String::new, |b| b.to_string());
    Ok((
        m.dim(),
        canonical_graph(&m).edges().len(),
        vec![
            ("is_tree", c.is_tree.to_string()),
            ("is_spiderweb", c.is_spiderweb.to_string()),
            ("is_hanner", c.is_hanner.to_string()),
            ("free_ball_is_zonotope", c.free_ball_is_zonotope.to_string()),
            ("lip_ball_zonoid_4pt", c.lip_ball_zonoid_4pt.to_string()),
            ("linfty_decomposable", opt(c.linfty_decomposable)),
            ("component_count", c.component_count.to_string()),
        ],
    ))
}

fn columns(command: BatchCommand) -> &'static [&'static str] {
    match command {
        BatchCommand::Product => &["vol_free", "vol_lip", "product", "gap", "strict_triangles", "simplicial", "all_bridges"],
        BatchCommand::Classify => &[
            "is_tree",
            "is_spiderweb",
            "is_hanner",
            "free_ball_is_zonotope",
            "lip_ball_zonoid_4pt",
            "linfty_decomposable",
            "component_count",
        ],
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub(crate) fn run(dir: &Path, command: BatchCommand, threads: Option<usize>) -> Result<Report, CliError> {
    let entries = std::fs::read_dir(dir).map_err(|e| CliError::Domain(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<_> = entries
        .filter_map(Result::ok)
        .map(|e| e.path())
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();

    let compute = |path: &std::path::PathBuf| {
        let file = path.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default();
        let result = match command {
            BatchCommand::Product => product_row(path),
            BatchCommand::Classify => classify_row(path),
        };
        match result {
            Ok((n, edges, values)) => Row {
                file,
                n: Some(n),
                edges: Some(edges),
                values: values.into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect(),
                error: None,
            },
            Err(e) => Row {
                file,
                error: Some(e.message().to_string()),
                ..Row::default()
            },
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| CliError::Domain(e.to_string()))?;
    // par_iter preserves input order, so rows stay sorted by filename
    let rows: Vec<Row> = pool.install(|| files.par_iter().map(compute).collect());

    let cols = columns(command);
    let mut text = String::from("file,n,edges");
    for c in cols {
        text.push(',');
        text.push_str(c);
    }
    text.push_str(",error\n");
    for r in &rows {
        let mut fields = vec![
            csv_field(&r.file),
            r.n.map_or_else(String::new, |n| n.to_string()),
            r.edges.map_or_else(String::new, |e| e.to_string()),
        ];
        for c in cols {
            fields.push(csv_field(r.values.get(*c).and_then(|v| v.as_str()).unwrap_or("")));
        }
        fields.push(csv_field(r.error.as_deref().unwrap_or("")));
        text.push_str(&fields.join(","));
        text.push('\n');
    }
    Ok(Report {
        json: json!({"command": match command { BatchCommand::Product => "product", BatchCommand::Classify => "classify" }, "rows": rows}),
        text,
    })
}
