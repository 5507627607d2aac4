use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use dehnkit_core::coords::{boundary_restriction, compatible, euler_characteristic, weight};
use dehnkit_core::enumerate::{boundary_slope_set, enumerate_vertices, EnumOptions};
use dehnkit_core::filling::{cap_surface, fill, FilledTriangulation};
use dehnkit_core::layered::{build_lst, classify_planar, pad_lst, LayeredTorus};
use dehnkit_core::par::parallel_available;
use dehnkit_core::reports::{candidates_with, emit, Format, Goal, ReportOptions};
use dehnkit_core::surface::{decompose_components, summarize_surface, SurfaceSummary};
use dehnkit_core::torus::TorusCurve;
use dehnkit_core::{BoundaryTorus, Mode, NormalCoords, Slope, Triangulation};

#[derive(Parser)]
#[command(name = "dehnkit", version, about = "Normal surfaces and Dehn-filling slopes of knot-manifold triangulations")]
struct Cli {
    /// Input triangulation.
    #[arg(long, global = true)]
    tri: Option<PathBuf>,
    /// Output file (stdout if omitted, except where a file is required).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value = "tsv", value_parser = parse_format)]
    format: Format,
    /// Enumeration bound: maximum number of rays, or the piece cap for classify-planar.
    #[arg(long, global = true)]
    cap: Option<u64>,
    /// Seed for the sampled checks of verify-torus.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Run single-threaded.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the triangulation and its boundary torus, then sample the torus curve calculus.
    VerifyTorus {
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// List the vertex solutions.
    Vertices {
        #[arg(long, default_value = "normal", value_parser = parse_mode)]
        mode: Mode,
        #[arg(long)]
        embedded_only: bool,
    },
    /// Boundary slopes of the embedded vertex solutions.
    Slopes {
        #[arg(long, default_value = "normal", value_parser = parse_mode)]
        mode: Mode,
    },
    /// Build a layered solid torus with meridian p/q.
    Layered {
        #[arg(long, value_parser = parse_slope)]
        slope: Slope,
        #[arg(long, default_value_t = 1)]
        min_tets: usize,
    },
    /// Dehn-fill the triangulation along a slope.
    Fill {
        #[arg(long, value_parser = parse_slope)]
        slope: Slope,
        #[arg(long, default_value_t = 1)]
        min_lst_tets: usize,
    },
    /// Cap a surface of the base off in a filled triangulation written by `fill`.
    Cap {
        #[arg(long)]
        filled: PathBuf,
        #[arg(long)]
        coords: PathBuf,
    },
    /// Classify the connected normal surfaces of a layered solid torus.
    ClassifyPlanar {
        /// Build the layered torus directly instead of reading --tri.
        #[arg(long, value_parser = parse_slope)]
        slope: Option<Slope>,
        #[arg(long, default_value_t = 1)]
        min_tets: usize,
    },
    /// Candidate slopes for one of the decision problems.
    Candidates {
        #[arg(long, value_parser = parse_goal)]
        goal: Goal,
    },
    /// Add two coordinate lists and describe the result.
    Sum {
        #[arg(long, num_args = 2, required = true)]
        coords: Vec<PathBuf>,
    },
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: dehnkit_core::Error| e.to_string())
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: dehnkit_core::Error| e.to_string())
}

fn parse_slope(s: &str) -> Result<Slope, String> {
    s.parse().map_err(|e: dehnkit_core::Error| e.to_string())
}

fn parse_goal(s: &str) -> Result<Goal, String> {
    s.parse().map_err(|e: dehnkit_core::Error| e.to_string())
}

fn main() {
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn run(cli: Cli) -> Result<()> {
    let parallel = !cli.sequential && parallel_available();
    let text = match &cli.command {
        Command::VerifyTorus { samples } => verify_torus(&load(&cli)?, *samples, cli.seed, cli.format)?,
        Command::Vertices { mode, embedded_only } => vertices(&load(&cli)?, &cli, *mode, *embedded_only, parallel)?,
        Command::Slopes { mode } => slopes(&load(&cli)?, &cli, *mode, parallel)?,
        Command::Layered { slope, min_tets } => return layered(&cli, *slope, *min_tets),
        Command::Fill { slope, min_lst_tets } => return fill_cmd(&load(&cli)?, &cli, *slope, *min_lst_tets),
        Command::Cap { filled, coords } => cap(&load(&cli)?, filled, coords, cli.format)?,
        Command::ClassifyPlanar { slope, min_tets } => {
            let lst = match slope {
                Some(s) => padded_lst(*s, *min_tets)?,
                None => {
                    let path = cli.tri.as_deref().ok_or_else(|| anyhow!("--tri or --slope is required"))?;
                    lst_from_file(path)?
                }
            };
            classify(&lst, cli.cap, parallel, cli.format)?
        }
        Command::Candidates { goal } => {
            let input = load(&cli)?;
            let mut opts = ReportOptions { parallel, ..ReportOptions::default() };
            if let Some(cap) = cli.cap {
                opts.max_rays = cap as usize;
            }
            emit(&candidates_with(&input.tri, &input.torus, *goal, &opts)?, cli.format)
        }
        Command::Sum { coords } => sum(&load(&cli)?, coords, cli.format)?,
    };
    write_output(cli.out.as_deref(), &text)
}

/// A triangulation and the boundary basis slopes are written in.
struct Input {
    tri: Triangulation,
    torus: BoundaryTorus,
    knot: bool,
}

fn read_tri(path: &Path) -> Result<Triangulation> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Triangulation::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

fn read_sidecar(path: &Path) -> Result<Option<Value>> {
    let side = sidecar_path(path);
    if !side.exists() {
        return Ok(None);
    }
    let text = fs::read_to_string(&side).with_context(|| format!("reading {}", side.display()))?;
    Ok(Some(serde_json::from_str(&text).with_context(|| format!("parsing {}", side.display()))?))
}

/// Loads --tri. A sidecar `<file>.json` with a `basis` entry fixes the boundary basis; otherwise
/// the default basis is used.
fn load(cli: &Cli) -> Result<Input> {
    let path = cli.tri.as_deref().ok_or_else(|| anyhow!("--tri is required"))?;
    let tri = read_tri(path)?;
    let default = tri.require_knot_manifold();
    let knot = default.is_ok();
    let torus = match read_sidecar(path)?.and_then(|v| v.get("basis").cloned()) {
        Some(basis) => {
            let reps: [(usize, usize); 3] = serde_json::from_value(basis).context("sidecar basis")?;
            tri.torus_with_basis(reps.map(|(t, e)| tri.edge_class(t, e)))?
        }
        None => match default {
            Ok(t) => t,
            Err(e) => match tri.boundary_torus() {
                Ok(t) => t,
                Err(_) => bail!(e),
            },
        },
    };
    Ok(Input { tri, torus, knot })
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn triple(x: [u64; 3]) -> String {
    format!("{},{},{}", x[0], x[1], x[2])
}

fn joined(c: &NormalCoords) -> String {
    c.values().iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn verify_torus(input: &Input, samples: usize, seed: u64, format: Format) -> Result<String> {
    let tri = &input.tri;
    let reps = input.torus.edge_reps();
    let mut failures = Vec::new();
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..samples {
        let (p, q) = loop {
            let p: i64 = rng.random_range(-40..=40);
            let q: i64 = rng.random_range(0..=40);
            if num_integer::Integer::gcd(&p, &q) == 1 {
                break (p, q);
            }
        };
        let s = Slope::from_pq(p, q)?;
        let back = Slope::from_intersections(s.intersections())?;
        let sum = TorusCurve { x: [0, 1, 2].map(|i| s.coords()[i] + s.complement().coords()[i]) };
        if s.to_pq() != (p, q) && s.to_pq() != (-p, -q) {
            failures.push(format!("{p}/{q} round-trips to {}", s.pq_string()));
        }
        if back != s {
            failures.push(format!("{s} does not survive the intersection triple"));
        }
        if sum.essential_count() != 0 {
            failures.push(format!("{s} plus its complement is not trivial"));
        }
    }
    let ok = failures.is_empty();
    Ok(match format {
        Format::Json => to_json(&json!({
            "tetrahedra": tri.size(),
            "edges": tri.edge_count(),
            "vertices": tri.vertex_count(),
            "orientable": tri.is_orientable(),
            "knot_manifold": input.knot,
            "basis": reps,
            "samples": samples,
            "seed": seed,
            "failures": failures,
            "ok": ok,
        })),
        Format::Tsv => {
            let mut out = String::from("key\tvalue\n");
            let _ = writeln!(out, "tetrahedra\t{}", tri.size());
            let _ = writeln!(out, "edges\t{}", tri.edge_count());
            let _ = writeln!(out, "vertices\t{}", tri.vertex_count());
            let _ = writeln!(out, "orientable\t{}", tri.is_orientable());
            let _ = writeln!(out, "knot_manifold\t{}", input.knot);
            for (k, (t, e)) in reps.iter().enumerate() {
                let _ = writeln!(out, "basis_{}\ttet {t} edge {e}", k + 1);
            }
            let _ = writeln!(out, "samples\t{samples}");
            for f in &failures {
                let _ = writeln!(out, "failure\t{f}");
            }
            let _ = writeln!(out, "ok\t{ok}");
            out
        }
    })
}

fn enum_options(cli: &Cli, mode: Mode, embedded_only: bool, parallel: bool) -> EnumOptions {
    let mut o = EnumOptions::new(mode).embedded_only(embedded_only).parallel(parallel);
    if let Some(cap) = cli.cap {
        o.max_rays = cap as usize;
    }
    o
}

fn vertices(input: &Input, cli: &Cli, mode: Mode, embedded_only: bool, parallel: bool) -> Result<String> {
    let tri = &input.tri;
    let vs = enumerate_vertices(tri, &enum_options(cli, mode, embedded_only, parallel))?;
    let rows: Vec<_> = vs
        .iter()
        .map(|v| {
            let boundary = boundary_restriction(tri, &v.coords, &input.torus).ok();
            let slope = boundary.filter(|_| v.embedded).and_then(|b| b.slope());
            (v, euler_characteristic(tri, &v.coords), weight(tri, &v.coords), boundary, slope)
        })
        .collect();
    Ok(match cli.format {
        Format::Json => to_json(&Value::Array(
            rows.iter()
                .map(|(v, chi, w, b, s)| {
                    json!({
                        "index": v.index,
                        "coords": v.coords,
                        "embedded": v.embedded,
                        "euler": chi,
                        "weight": w,
                        "boundary": b.map(|b| b.x),
                        "slope": s.map(|s| s.pq_string()),
                    })
                })
                .collect(),
        )),
        Format::Tsv => {
            let mut out = String::from("index\tcoords\tembedded\tchi\tweight\tboundary\tslope\n");
            for (v, chi, w, b, s) in &rows {
                let b = b.map_or("-".to_string(), |b| triple(b.x));
                let s = s.map_or("-".to_string(), |s| s.pq_string());
                let _ = writeln!(out, "{}\t{}\t{}\t{chi}\t{w}\t{b}\t{s}", v.index, joined(&v.coords), v.embedded);
            }
            out
        }
    })
}

fn slopes(input: &Input, cli: &Cli, mode: Mode, parallel: bool) -> Result<String> {
    let vs = enumerate_vertices(&input.tri, &enum_options(cli, mode, true, parallel))?;
    let set = boundary_slope_set(&input.tri, &vs, &input.torus)?;
    Ok(match cli.format {
        Format::Json => to_json(&json!(set
            .iter()
            .map(|s| json!({"triple": s.slope, "pq": s.slope.pq_string(), "witnesses": s.witnesses}))
            .collect::<Vec<_>>())),
        Format::Tsv => {
            let mut out = String::from("triple\tpq\twitnesses\n");
            for s in &set {
                let w: Vec<String> = s.witnesses.iter().map(usize::to_string).collect();
                let _ = writeln!(out, "{}\t{}\t{}", triple(s.slope.coords()), s.slope.pq_string(), w.join(","));
            }
            out
        }
    })
}

fn padded_lst(slope: Slope, min_tets: usize) -> Result<LayeredTorus> {
    let lst = build_lst(slope)?;
    Ok(if min_tets > 1 { pad_lst(&lst, min_tets - 1)? } else { lst })
}

fn required_out(cli: &Cli) -> Result<&Path> {
    cli.out.as_deref().ok_or_else(|| anyhow!("--out is required"))
}

fn layered(cli: &Cli, slope: Slope, min_tets: usize) -> Result<()> {
    let out = required_out(cli)?;
    let lst = padded_lst(slope, min_tets)?;
    write_output(Some(out), &lst.tri().to_text())?;
    let side = serde_json::to_value(lst.sidecar())?;
    write_output(Some(&sidecar_path(out)), &to_json(&side))?;
    println!("{} tetrahedra, meridian {} ({})", lst.size(), lst.meridian(), lst.meridian().pq_string());
    Ok(())
}

/// Rebuilds the layered torus described by a file written by `layered`.
fn lst_from_file(path: &Path) -> Result<LayeredTorus> {
    let tri = read_tri(path)?;
    let side = read_sidecar(path)?.ok_or_else(|| anyhow!("{} has no sidecar", path.display()))?;
    let pq = side["meridian_pq"].as_str().ok_or_else(|| anyhow!("sidecar lacks meridian_pq"))?;
    let tets = side["tetrahedra"].as_u64().ok_or_else(|| anyhow!("sidecar lacks tetrahedra"))? as usize;
    let lst = padded_lst(pq.parse()?, tets)?;
    if lst.tri() != &tri {
        bail!("{} does not match the layered torus its sidecar describes", path.display());
    }
    Ok(lst)
}

fn fill_cmd(input: &Input, cli: &Cli, slope: Slope, min_lst_tets: usize) -> Result<()> {
    let out = required_out(cli)?;
    let f = fill(&input.tri, &input.torus, slope, min_lst_tets)?;
    write_output(Some(out), &f.tri().to_text())?;
    let side = json!({
        "slope": f.alpha(),
        "slope_pq": f.alpha().pq_string(),
        "min_lst_tets": min_lst_tets,
        "lst_tetrahedra": f.lst().size(),
        "offset": f.offset(),
        "mirrored": f.mirrored(),
        "base_basis": input.torus.edge_reps(),
    });
    write_output(Some(&sidecar_path(out)), &to_json(&side))?;
    println!("{} tetrahedra ({} from the solid torus), slope {}", f.tri().size(), f.lst().size(), slope.pq_string());
    Ok(())
}

fn refill(input: &Input, filled: &Path) -> Result<FilledTriangulation> {
    let side = read_sidecar(filled)?.ok_or_else(|| anyhow!("{} has no sidecar", filled.display()))?;
    let slope: Slope = side["slope_pq"].as_str().ok_or_else(|| anyhow!("sidecar lacks slope_pq"))?.parse()?;
    let min = side["min_lst_tets"].as_u64().unwrap_or(1) as usize;
    let f = fill(&input.tri, &input.torus, slope, min)?;
    if f.tri() != &read_tri(filled)? {
        bail!("{} is not the filling of --tri its sidecar describes", filled.display());
    }
    Ok(f)
}

fn read_coords(path: &Path) -> Result<NormalCoords> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    NormalCoords::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn summary_json(s: &SurfaceSummary) -> Value {
    json!({
        "coords": s.coords,
        "euler": s.euler,
        "orientable": s.orientable,
        "genus": s.genus,
        "boundary_circles": s.boundary_circles,
        "boundary": s.boundary_curves.iter().map(|b| b.x).collect::<Vec<_>>(),
        "weight": s.weight,
        "separating": s.separating,
    })
}

fn summary_row(s: &SurfaceSummary) -> String {
    let b: Vec<String> = s.boundary_curves.iter().map(|b| triple(b.x)).collect();
    let sep = s.separating.map_or("-".to_string(), |v| v.to_string());
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{sep}",
        joined(&s.coords),
        s.euler,
        s.orientable,
        s.boundary_circles,
        if b.is_empty() { "-".to_string() } else { b.join(";") },
        s.weight
    )
}

const SUMMARY_HEADER: &str = "coords\tchi\torientable\tboundary_circles\tboundary\tweight\tseparating";

fn cap(input: &Input, filled: &Path, coords: &Path, format: Format) -> Result<String> {
    let f = refill(input, filled)?;
    let s = read_coords(coords)?;
    let capped = cap_surface(&f, &s)?;
    let parts = decompose_components(f.tri(), &capped)?;
    let summaries: Vec<SurfaceSummary> =
        parts.iter().map(|p| summarize_surface(f.tri(), p, &[])).collect::<dehnkit_core::Result<_>>()?;
    Ok(match format {
        Format::Json => to_json(&json!({
            "coords": capped,
            "euler": euler_characteristic(f.tri(), &capped),
            "weight": weight(f.tri(), &capped),
            "components": summaries.iter().map(summary_json).collect::<Vec<_>>(),
        })),
        Format::Tsv => {
            let mut out = format!("section\t{SUMMARY_HEADER}\n");
            let _ = writeln!(
                out,
                "capped\t{}\t{}\t-\t-\t-\t{}\t-",
                joined(&capped),
                euler_characteristic(f.tri(), &capped),
                weight(f.tri(), &capped)
            );
            for s in &summaries {
                let _ = writeln!(out, "component\t{}", summary_row(s));
            }
            out
        }
    })
}

fn classify(lst: &LayeredTorus, cap: Option<u64>, parallel: bool, format: Format) -> Result<String> {
    let audit = classify_planar(lst, cap, parallel)?;
    Ok(match format {
        Format::Json => to_json(&json!({
            "tetrahedra": audit.tetrahedra,
            "cap": audit.cap,
            "meridian": lst.meridian().pq_string(),
            "classes": audit.classes.iter().map(|c| json!({"kind": c.kind, "surface": summary_json(&c.witness)})).collect::<Vec<_>>(),
            "closed_surfaces": audit.closed_surfaces,
            "missing_tetrahedron": audit.missing_tetrahedron,
            "weight_violations": audit.weight_violations,
            "passed": audit.passed(),
        })),
        Format::Tsv => {
            let mut out = format!("kind\t{SUMMARY_HEADER}\n");
            for c in &audit.classes {
                let _ = writeln!(out, "{}\t{}", c.kind.as_str(), summary_row(&c.witness));
            }
            for v in &audit.weight_violations {
                let _ = writeln!(out, "# weight violation: {v}");
            }
            let _ = writeln!(
                out,
                "# tetrahedra={} cap={} closed={} missing_tetrahedron={} passed={}",
                audit.tetrahedra,
                audit.cap,
                audit.closed_surfaces,
                audit.missing_tetrahedron,
                audit.passed()
            );
            out
        }
    })
}

fn sum(input: &Input, paths: &[PathBuf], format: Format) -> Result<String> {
    let tri = &input.tri;
    let a = read_coords(&paths[0])?;
    let b = read_coords(&paths[1])?;
    let total = a.add(&b)?;
    let ok = compatible(tri, &a, &b)?;
    let tori = if input.knot { vec![input.torus.clone()] } else { Vec::new() };
    let summaries: Vec<SurfaceSummary> = if ok {
        decompose_components(tri, &total)?
            .iter()
            .map(|p| summarize_surface(tri, p, &tori))
            .collect::<dehnkit_core::Result<_>>()?
    } else {
        Vec::new()
    };
    let boundary = if input.knot { boundary_restriction(tri, &total, &input.torus).ok() } else { None };
    Ok(match format {
        Format::Json => to_json(&json!({
            "coords": total,
            "compatible": ok,
            "euler": euler_characteristic(tri, &total),
            "weight": weight(tri, &total),
            "boundary": boundary.map(|b| b.x),
            "components": summaries.iter().map(summary_json).collect::<Vec<_>>(),
        })),
        Format::Tsv => {
            let mut out = format!("section\t{SUMMARY_HEADER}\n");
            let b = boundary.map_or("-".to_string(), |b| triple(b.x));
            let _ = writeln!(
                out,
                "sum\t{}\t{}\t-\t-\t{b}\t{}\tcompatible={ok}",
                joined(&total),
                euler_characteristic(tri, &total),
                weight(tri, &total)
            );
            for s in &summaries {
                let _ = writeln!(out, "component\t{}", summary_row(s));
            }
            out
        }
    })
}
