//! `tropcheck`: command-line analyzer for tropical (min-plus) rational
//! maps. Loads a map description, runs the requested analysis, and emits
//! exact JSON (or text) reports; verdicts map to exit codes.
//!
//! Exit codes: 0 isomorphism / success, 1 not an isomorphism, 2 unknown,
//! 64 usage, parse or I/O error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use tropcheck_core::exactgeom::polyhedron::{clipped_polygon_2d, rat_to_f64, Relation};
use tropcheck_core::json;
use tropcheck_core::rat::{format_point, format_rat, parse_point, Rat};
use tropcheck_core::{
    clarke_at, decide_isomorphism, enumerate_pieces, parse_map, preimage, AnalyzeOptions,
    Decomposition, TropicalMap, Verdict,
};

const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "tropcheck",
    about = "Exact analyzer for tropical (min-plus) rational maps",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Args)]
struct InputArgs {
    /// Map description file (one `map name(vars) = (coords)` per file).
    file: PathBuf,
    /// Substitute `${NAME}` placeholders before parsing (repeatable).
    #[arg(long = "set", value_name = "NAME=VALUE")]
    set: Vec<String>,
}

#[derive(Args)]
struct ReportArgs {
    /// Seed for the regular-value sampler (fallback: $TROPCHECK_SEED, then 0).
    /// Verdicts are seed-independent; only the certified value varies.
    #[arg(long)]
    seed: Option<u64>,
    /// Retry bound for the regular-value search.
    #[arg(long, default_value_t = 32)]
    retries: u32,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the map is an isomorphism and report certificates.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Enumerate the linear pieces (cells, matrices, Jacobians).
    Pieces {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the map at an exact rational point.
    Eval {
        #[command(flatten)]
        input: InputArgs,
        /// Point, e.g. "1,1,0" or "(3/2, -7)".
        point: String,
    },
    /// Compute the exact fiber over a point.
    Preimage {
        #[command(flatten)]
        input: InputArgs,
        point: String,
    },
    /// Test the convex hull of differentials at a point for singularity.
    Clarke {
        #[command(flatten)]
        input: InputArgs,
        point: String,
    },
    /// Construct the piecewise-affine inverse (isomorphisms only).
    Invert {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Render the 2D cell decomposition as an SVG, colored by Jacobian sign.
    Plot {
        #[command(flatten)]
        input: InputArgs,
        /// Viewport as XMIN,XMAX,YMIN,YMAX (exact rationals).
        #[arg(long, default_value = "-10,10,-10,10")]
        viewport: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("tropcheck: {err:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Analyze { input, report } => cmd_analyze(&input, &report),
        Command::Pieces { input, format, out } => cmd_pieces(&input, format, &out),
        Command::Eval { input, point } => cmd_eval(&input, &point),
        Command::Preimage { input, point } => cmd_preimage(&input, &point),
        Command::Clarke { input, point } => cmd_clarke(&input, &point),
        Command::Invert { input, report } => cmd_invert(&input, &report),
        Command::Plot {
            input,
            viewport,
            out,
        } => cmd_plot(&input, &viewport, &out),
    }
}

fn load_map(input: &InputArgs) -> Result<TropicalMap> {
    let mut text = fs::read_to_string(&input.file)
        .with_context(|| format!("cannot read {}", input.file.display()))?;
    for kv in &input.set {
        let (name, value) = kv
            .split_once('=')
            .ok_or_else(|| anyhow!("--set expects NAME=VALUE, got '{kv}'"))?;
        text = text.replace(&format!("${{{name}}}"), value.trim());
    }
    if let Some(pos) = text.find("${") {
        let end = text[pos..].find('}').map_or(text.len(), |e| pos + e + 1);
        return Err(anyhow!(
            "unresolved placeholder {} in {} (provide --set NAME=VALUE)",
            &text[pos..end],
            input.file.display()
        ));
    }
    parse_map(&text).map_err(|e| anyhow!("{}: {e}", input.file.display()))
}

fn seed_value(flag: Option<u64>) -> Result<u64> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var("TROPCHECK_SEED") {
        Ok(raw) => raw
            .trim()
            .parse()
            .map_err(|_| anyhow!("TROPCHECK_SEED must be an unsigned integer, got '{raw}'")),
        Err(_) => Ok(0),
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, content).with_context(|| format!("cannot write {}", path.display()))
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn to_json_doc<T: serde::Serialize>(value: &T) -> Result<String> {
    let mut doc = serde_json::to_string_pretty(value)?;
    doc.push('\n');
    Ok(doc)
}

fn parse_point_arg(raw: &str, dim: usize) -> Result<Vec<Rat>> {
    let point =
        parse_point(raw).ok_or_else(|| anyhow!("cannot parse point '{raw}' as rationals"))?;
    if point.len() != dim {
        return Err(anyhow!(
            "point has dimension {}, the map expects {dim}",
            point.len()
        ));
    }
    Ok(point)
}

fn cmd_analyze(input: &InputArgs, report_args: &ReportArgs) -> Result<u8> {
    let map = load_map(input)?;
    let opts = AnalyzeOptions {
        seed: seed_value(report_args.seed)?,
        retries: report_args.retries,
    };
    let report = decide_isomorphism(&map, &opts).map_err(|e| anyhow!("{e}"))?;
    let doc = match report_args.format {
        Format::Json => to_json_doc(&json::report_json(&report))?,
        Format::Text => {
            let pieces = report.signs.pos + report.signs.neg + report.signs.zero;
            let mut lines = vec![
                format!("map: {} ({} pieces)", map.name(), pieces),
                format!(
                    "signs: pos {}, neg {}, zero {}",
                    report.signs.pos, report.signs.neg, report.signs.zero
                ),
                json::verdict_summary(&report),
            ];
            if let Some(cert) = &report.certificate {
                lines.push(format!("regular value: {}", format_point(&cert.value)));
            }
            for w in &report.witnesses {
                lines.push(format!("fiber point: {}", format_point(w)));
            }
            lines.join("\n") + "\n"
        }
    };
    emit(&report_args.out, &doc)?;
    Ok(match report.verdict {
        Verdict::Isomorphism => 0,
        Verdict::NotIsomorphism => 1,
        Verdict::Unknown => 2,
    })
}

fn cmd_pieces(input: &InputArgs, format: Format, out: &Option<PathBuf>) -> Result<u8> {
    let map = load_map(input)?;
    let d = enumerate_pieces(&map);
    let doc = match format {
        Format::Json => to_json_doc(&json::decomposition_json(&d))?,
        Format::Text => {
            let mut lines = vec![format!(
                "map {}: {} pieces over dimension {}",
                map.name(),
                d.len(),
                d.dim()
            )];
            for p in d.pieces() {
                let jac = p.jac.as_ref().map_or("n/a".to_string(), format_rat);
                lines.push(format!("piece {}: jac {}", p.id, jac));
                for r in 0..p.matrix.rows() {
                    lines.push(format!("  row {}: {}", r, format_point(p.matrix.row(r))));
                }
                lines.push(format!("  offset: {}", format_point(&p.offset)));
                for c in p.cell.constraints() {
                    let rel = match c.rel {
                        Relation::GeqZero => ">= 0",
                        Relation::EqZero => "= 0",
                    };
                    lines.push(format!("  cell: {} {}", c.form.to_text(map.vars()), rel));
                }
            }
            lines.join("\n") + "\n"
        }
    };
    emit(out, &doc)?;
    Ok(0)
}

fn cmd_eval(input: &InputArgs, point: &str) -> Result<u8> {
    let map = load_map(input)?;
    let x = parse_point_arg(point, map.dim())?;
    let y = map.eval(&x).map_err(|e| anyhow!("{e}"))?;
    println!("{}", format_point(&y));
    Ok(0)
}

fn cmd_preimage(input: &InputArgs, point: &str) -> Result<u8> {
    let map = load_map(input)?;
    let x = parse_point_arg(point, map.coords().len())?;
    let d = enumerate_pieces(&map);
    let fiber = preimage(&d, &x).map_err(|e| anyhow!("{e}"))?;
    let doc = to_json_doc(&json::fiber_json(&x, &fiber))?;
    print!("{doc}");
    Ok(0)
}

fn cmd_clarke(input: &InputArgs, point: &str) -> Result<u8> {
    let map = load_map(input)?;
    let x = parse_point_arg(point, map.dim())?;
    let d = enumerate_pieces(&map);
    let set = clarke_at(&d, &x).map_err(|e| anyhow!("{e}"))?;
    let doc = to_json_doc(&json::clarke_json(&set))?;
    print!("{doc}");
    Ok(0)
}

fn cmd_invert(input: &InputArgs, report_args: &ReportArgs) -> Result<u8> {
    let map = load_map(input)?;
    let opts = AnalyzeOptions {
        seed: seed_value(report_args.seed)?,
        retries: report_args.retries,
    };
    let report = decide_isomorphism(&map, &opts).map_err(|e| anyhow!("{e}"))?;
    let Some(inverse) = &report.inverse else {
        eprintln!(
            "tropcheck: {} is not an isomorphism ({})",
            map.name(),
            report.reason.describe()
        );
        return Ok(1);
    };
    #[derive(serde::Serialize)]
    struct InverseJson {
        map: String,
        dimension: usize,
        n_pieces: usize,
        pieces: Vec<json::PieceJson>,
    }
    let doc = to_json_doc(&InverseJson {
        map: format!("{}_inverse", map.name()),
        dimension: map.dim(),
        n_pieces: inverse.len(),
        pieces: inverse.iter().map(json::piece_json).collect(),
    })?;
    emit(&report_args.out, &doc)?;
    Ok(0)
}

fn cmd_plot(input: &InputArgs, viewport: &str, out: &Option<PathBuf>) -> Result<u8> {
    let map = load_map(input)?;
    if map.dim() != 2 {
        return Err(anyhow!(
            "plot requires a 2-dimensional map, {} has dimension {}",
            map.name(),
            map.dim()
        ));
    }
    let coords = parse_point(viewport)
        .filter(|v| v.len() == 4)
        .ok_or_else(|| anyhow!("viewport must be XMIN,XMAX,YMIN,YMAX"))?;
    let (xmin, xmax, ymin, ymax) = (&coords[0], &coords[1], &coords[2], &coords[3]);
    if xmin >= xmax || ymin >= ymax {
        return Err(anyhow!(
            "viewport bounds must satisfy XMIN < XMAX, YMIN < YMAX"
        ));
    }
    let d = enumerate_pieces(&map);
    let svg = render_svg(&d, xmin, xmax, ymin, ymax);
    emit(out, &svg)?;
    Ok(0)
}

fn render_svg(d: &Decomposition, xmin: &Rat, xmax: &Rat, ymin: &Rat, ymax: &Rat) -> String {
    use num_traits::Signed;
    const SIZE: f64 = 640.0;
    let (fx0, fx1) = (rat_to_f64(xmin), rat_to_f64(xmax));
    let (fy0, fy1) = (rat_to_f64(ymin), rat_to_f64(ymax));
    let sx = SIZE / (fx1 - fx0);
    let sy = SIZE / (fy1 - fy0);
    let px = |x: f64| (x - fx0) * sx;
    // SVG y grows downward.
    let py = |y: f64| SIZE - (y - fy0) * sy;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" \
         viewBox=\"0 0 {SIZE} {SIZE}\">\n"
    ));
    out.push_str(&format!(
        "  <rect width=\"{SIZE}\" height=\"{SIZE}\" fill=\"white\"/>\n"
    ));
    for piece in d.pieces() {
        let Some(poly) = clipped_polygon_2d(&piece.cell, xmin, xmax, ymin, ymax) else {
            continue;
        };
        let fill = match &piece.jac {
            Some(j) if j.is_positive() => "#8fd19e",
            Some(j) if j.is_negative() => "#f1998e",
            _ => "#cccccc",
        };
        let points: Vec<String> = poly
            .iter()
            .map(|(x, y)| format!("{:.3},{:.3}", px(rat_to_f64(x)), py(rat_to_f64(y))))
            .collect();
        out.push_str(&format!(
            "  <polygon points=\"{}\" fill=\"{}\" stroke=\"#333333\" stroke-width=\"1\"/>\n",
            points.join(" "),
            fill
        ));
        let (mut cx, mut cy) = (0.0, 0.0);
        for (x, y) in &poly {
            cx += rat_to_f64(x) / poly.len() as f64;
            cy += rat_to_f64(y) / poly.len() as f64;
        }
        out.push_str(&format!(
            "  <text x=\"{:.3}\" y=\"{:.3}\" font-size=\"14\" text-anchor=\"middle\" \
             fill=\"#222222\">{}</text>\n",
            px(cx),
            py(cy),
            piece.id
        ));
    }
    // Axes, when visible.
    if fx0 < 0.0 && fx1 > 0.0 {
        out.push_str(&format!(
            "  <line x1=\"{0:.3}\" y1=\"0\" x2=\"{0:.3}\" y2=\"{SIZE}\" \
             stroke=\"#666666\" stroke-dasharray=\"4 4\"/>\n",
            px(0.0)
        ));
    }
    if fy0 < 0.0 && fy1 > 0.0 {
        out.push_str(&format!(
            "  <line x1=\"0\" y1=\"{0:.3}\" x2=\"{SIZE}\" y2=\"{0:.3}\" \
             stroke=\"#666666\" stroke-dasharray=\"4 4\"/>\n",
            py(0.0)
        ));
    }
    out.push_str("</svg>\n");
    out
}
