use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use specgraph::field::{estimate_window, finite_chain_spectrum, gbz_residual, EnergyWindow};
use specgraph::graph::{extract, ExtractionConfig};
use specgraph::io::{
    export_graphml, render_binary, render_field, render_graph, spectrum_csv, write_atomic, write_field_dump,
    GraphDocument, Style,
};
use specgraph::poly::{Boundary, LaurentCharPoly};
use specgraph::sweep::{enumerate_classes, run_sweep, write_sweep, ClassEnumSpec, DedupKey, SweepConfig};

/// Open-boundary spectral graphs of 1-D crystal characteristic polynomials.
///
/// Polynomials are written in z and E, e.g. "z + z**-1 - E" or
/// "-z**-2 - E - z + z**4"; `**` or `^` for powers, `1/z**k` for negative
/// powers, `i`/`j` for the imaginary unit.
#[derive(Parser)]
#[command(name = "specgraph", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract the spectral graph of one polynomial.
    Extract {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        /// Energy window re_min,re_max,im_min,im_max (estimated when absent).
        #[arg(long, value_parser = parse_window)]
        window: Option<[f64; 4]>,
        /// Coarse grid resolution.
        #[arg(long, default_value_t = 256)]
        res: usize,
        /// Refinement factor of the fine pass.
        #[arg(long, default_value_t = 4)]
        refine: usize,
        /// Node merge tolerance in pixels.
        #[arg(long, default_value_t = 5.0)]
        merge_tol: f64,
        /// Short-edge contraction threshold in pixels (default: 0 for one band, 20 otherwise).
        #[arg(long)]
        short_edge: Option<f64>,
        /// Output JSON file (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory for potential, dos, binary, skeleton and graph PNGs.
        #[arg(long)]
        plots: Option<PathBuf>,
        /// Also write GraphML next to --out.
        #[arg(long, requires = "out")]
        graphml: bool,
    },
    /// Run a parameter sweep described by a TOML file.
    Sweep {
        #[arg(long)]
        spec: PathBuf,
        /// Output directory (overrides `out` in the spec).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (overrides `jobs` in the spec).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// List polynomial classes with z -> 1/z duplicates removed.
    Enumerate {
        #[arg(long, default_value_t = 1)]
        bands: u32,
        /// Comma-separated hopping ranges p + q.
        #[arg(long, value_delimiter = ',', default_values_t = [4, 5, 6])]
        ranges: Vec<u32>,
        #[arg(long, value_enum, default_value_t = Dedup::ZPresence)]
        dedup: Dedup,
        #[arg(long)]
        out: PathBuf,
    },
    /// Finite-chain eigenvalues as CSV, sorted by (re, im).
    Spectrum {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        cells: usize,
        /// Periodic instead of open boundary.
        #[arg(long)]
        pbc: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// GBZ residual |z_{p+1}| - |z_p| on a grid: raw float dump, or a
    /// heatmap when --out ends in .png.
    Gbz {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long, default_value_t = 256)]
        res: usize,
        #[arg(long, value_parser = parse_window)]
        window: Option<[f64; 4]>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Dedup {
    ZPresence,
    Monomials,
}

fn parse_window(s: &str) -> Result<[f64; 4], String> {
    let v: Vec<f64> =
        s.split(',').map(|x| x.trim().parse::<f64>().map_err(|e| format!("`{x}`: {e}"))).collect::<Result<_, _>>()?;
    v.try_into().map_err(|_| "expected four numbers re_min,re_max,im_min,im_max".to_string())
}

fn parse_poly(text: &str) -> Result<LaurentCharPoly> {
    text.parse::<LaurentCharPoly>().with_context(|| format!("[parse] cannot parse `{text}`"))
}

fn window_from(w: [f64; 4], res: usize) -> Result<EnergyWindow> {
    EnergyWindow::new(w[0], w[1], w[2], w[3], res).context("[window] invalid --window")
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    write_atomic(path, bytes).with_context(|| format!("[io] cannot write {}", path.display()))
}

#[allow(clippy::too_many_arguments)]
fn cmd_extract(
    text: &str,
    window: Option<[f64; 4]>,
    res: usize,
    refine: usize,
    merge_tol: f64,
    short_edge: Option<f64>,
    out: Option<&Path>,
    plots: Option<&Path>,
    graphml: bool,
) -> Result<()> {
    let poly = parse_poly(text)?;
    let config = ExtractionConfig {
        resolution: res,
        refine,
        window: window.map(|w| window_from(w, res)).transpose()?,
        merge_tol_px: merge_tol,
        short_edge_px: short_edge,
        ..Default::default()
    };
    let x = extract(&poly, &config)?;
    let doc = GraphDocument::from_extraction(poly.to_string(), &config, &x);
    let json = doc.to_json()?;
    match out {
        Some(path) => write_file(path, json.as_bytes())?,
        None => print!("{json}"),
    }
    if graphml {
        let path = out.expect("clap enforces --out").with_extension("graphml");
        write_file(&path, export_graphml(&x.graph, true).as_bytes())?;
    }
    if let Some(dir) = plots {
        std::fs::create_dir_all(dir).with_context(|| format!("[io] cannot create {}", dir.display()))?;
        write_file(&dir.join("potential.png"), &render_field(&x.phi, Style::Potential)?)?;
        write_file(&dir.join("dos.png"), &render_field(&x.dos, Style::Dos)?)?;
        write_file(&dir.join("binary.png"), &render_binary(&x.binary)?)?;
        write_file(&dir.join("skeleton.png"), &render_binary(&x.skeleton)?)?;
        write_file(&dir.join("graph.png"), &render_graph(&x.graph, &x.dos)?)?;
    }
    eprintln!(
        "{}: {} nodes, {} edges, {} components, refined {:.2}%",
        poly,
        x.graph.node_count(),
        x.graph.edge_count(),
        x.graph.component_count(),
        100.0 * x.refined_fraction
    );
    Ok(())
}

fn cmd_sweep(spec: &Path, out: Option<PathBuf>, jobs: Option<usize>) -> Result<()> {
    let text = std::fs::read_to_string(spec).with_context(|| format!("[io] cannot read {}", spec.display()))?;
    let config = SweepConfig::from_toml(&text).context("[config] invalid sweep spec")?;
    let dir = match out.or_else(|| config.out.clone()) {
        Some(d) => d,
        None => bail!("[config] no output directory: pass --out or set `out` in the spec"),
    };
    let (template, spec) = config.resolve().context("[config] invalid sweep spec")?;
    let report = |done: usize, total: usize| eprint!("\r{done}/{total} rows");
    let outcome = run_sweep(&template, &spec, jobs.or(config.jobs), Some(&report))?;
    eprintln!();
    write_sweep(&outcome, &dir).with_context(|| format!("[io] cannot write sweep to {}", dir.display()))?;
    let failed = outcome.rows.iter().filter(|r| r.result.is_err()).count();
    eprintln!("{} rows written to {} ({failed} failed)", outcome.rows.len(), dir.display());
    Ok(())
}

fn cmd_enumerate(bands: u32, ranges: Vec<u32>, dedup: Dedup, out: &Path) -> Result<()> {
    let dedup = match dedup {
        Dedup::ZPresence => DedupKey::ZPresence,
        Dedup::Monomials => DedupKey::Monomials,
    };
    let spec = ClassEnumSpec { bands, ranges, dedup, ..Default::default() };
    let classes = enumerate_classes(&spec).context("[enumerate] invalid specification")?;
    let mut json = serde_json::to_string_pretty(&classes).context("[io] serialization failed")?;
    json.push('\n');
    write_file(out, json.as_bytes())?;
    eprintln!("{} classes", classes.len());
    Ok(())
}

fn cmd_spectrum(text: &str, cells: usize, pbc: bool, out: &Path) -> Result<()> {
    let poly = parse_poly(text)?;
    let boundary = if pbc { Boundary::Periodic } else { Boundary::Open };
    let ev = finite_chain_spectrum(&poly, cells, boundary).with_context(|| format!("[spectrum] {poly}"))?;
    write_file(out, spectrum_csv(&ev)?.as_bytes())
}

fn cmd_gbz(text: &str, res: usize, window: Option<[f64; 4]>, out: &Path) -> Result<()> {
    let poly = parse_poly(text)?;
    let window = match window {
        Some(w) => window_from(w, res)?,
        None => estimate_window(&poly, 40, 0.2, res).with_context(|| format!("[window] {poly}"))?,
    };
    let field = gbz_residual(&poly, &window).with_context(|| format!("[field] {poly}"))?;
    let bytes = if out.extension().is_some_and(|e| e == "png") {
        render_field(&field, Style::Potential)?
    } else {
        write_field_dump(&field)
    };
    write_file(out, &bytes)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Extract { poly, window, res, refine, merge_tol, short_edge, out, plots, graphml } => {
            cmd_extract(&poly, window, res, refine, merge_tol, short_edge, out.as_deref(), plots.as_deref(), graphml)
        }
        Command::Sweep { spec, out, jobs } => cmd_sweep(&spec, out, jobs),
        Command::Enumerate { bands, ranges, dedup, out } => cmd_enumerate(bands, ranges, dedup, &out),
        Command::Spectrum { poly, cells, pbc, out } => cmd_spectrum(&poly, cells, pbc, &out),
        Command::Gbz { poly, res, window, out } => cmd_gbz(&poly, res, window, &out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
