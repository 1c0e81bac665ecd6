use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use moebius::{Mat2C, C64};
use serde_json::{json, Value};
use slicecli::{
    components, overlay, read_ppm, render, symmetry_check, CheckResult, Config, ComponentReport, RasterJob,
    SliceError, SliceImage, SymmetryReport, Window,
};

// Writes to stdout, ignoring a closed pipe.
macro_rules! out {
    ($($a:tt)*) => {{
        let _ = write!(std::io::stdout().lock(), $($a)*);
    }};
}

macro_rules! outln {
    ($($a:tt)*) => {{
        let _ = writeln!(std::io::stdout().lock(), $($a)*);
    }};
}

#[derive(Parser)]
#[command(name = "slicecli", version, about = "Holonomy, trace-tree and slice tools for glued pants")]
struct Cli {
    /// TOML file with default values for any flag
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Holonomy of a chain on a surface file
    Holonomy {
        #[arg(long)]
        surface: Option<PathBuf>,
        /// e.g. "P0:[Ainf] ; gate(1,+) ; P1:[A0^-1 A1]"
        #[arg(long, allow_hyphen_values = true)]
        chain: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Deviation of the length-c data from the cusped limit
    LimitCheck {
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        mu: Option<C64>,
        #[arg(long, value_delimiter = ',')]
        cs: Option<Vec<f64>>,
        #[arg(long)]
        json: bool,
    },
    /// Once-punctured torus group: matrices, traces, relations
    Hnn {
        #[arg(long)]
        c: Option<f64>,
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        mu: Option<C64>,
        #[arg(long)]
        json: bool,
    },
    /// Four-holed sphere group: matrices and relations
    Afp {
        #[arg(long)]
        c: Option<f64>,
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        mu: Option<C64>,
        #[arg(long)]
        json: bool,
    },
    /// Quasi-Fuchsian verdict at one slice point
    Bq {
        #[arg(long)]
        c: Option<f64>,
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        tau: Option<C64>,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Rasterize the slice at one c into a PPM image
    Slice {
        #[arg(long)]
        c: Option<f64>,
        #[command(flatten)]
        raster: RasterArgs,
    },
    /// Rasterize several c over one window and stack them
    Overlay {
        #[arg(long, value_delimiter = ',')]
        cs: Option<Vec<f64>>,
        #[command(flatten)]
        raster: RasterArgs,
    },
    /// Symmetry and periodicity agreement of a rendered slice
    Symmetry {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Overrides the c stored in the image
        #[arg(long)]
        c: Option<f64>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(clap::Args)]
struct RasterArgs {
    #[arg(long, value_parser = pair_arg, allow_hyphen_values = true)]
    re: Option<[f64; 2]>,
    #[arg(long, value_parser = pair_arg, allow_hyphen_values = true)]
    im: Option<[f64; 2]>,
    /// WxH
    #[arg(long)]
    size: Option<String>,
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    report: Option<PathBuf>,
}

fn pair_arg(s: &str) -> Result<[f64; 2], String> {
    let (a, b) = s.split_once(',').ok_or("expected A,B")?;
    let p = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x}: {e}"));
    Ok([p(a)?, p(b)?])
}

fn complex_arg(s: &str) -> Result<C64, String> {
    pair_arg(s).map(|[a, b]| C64::new(a, b))
}

enum Failure {
    Invalid(String),
    Floor(String),
}

impl From<SliceError> for Failure {
    fn from(e: SliceError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure::Invalid(e.to_string())
}

fn need<T>(v: Option<T>, name: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Invalid(format!("missing --{name}")))
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn cjson(z: C64) -> Value {
    json!([z.re, z.im])
}

fn mjson(m: &Mat2C) -> Value {
    Value::Array(m.entries().iter().map(|e| cjson(*e)).collect())
}

fn print_json(v: &Value) {
    outln!("{}", serde_json::to_string_pretty(v).unwrap_or_default());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Floor(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cfg = match &cli.config {
        Some(p) => Config::parse(&String::from_utf8_lossy(&read(p)?))?,
        None => Config::default(),
    };
    let cfg_c = |v: Option<[f64; 2]>| v.map(|[a, b]| C64::new(a, b));
    match cli.cmd {
        Cmd::Holonomy { surface, chain, json } => {
            let path = need(surface.or(cfg.surface.map(PathBuf::from)), "surface")?;
            let chain = need(chain.or(cfg.chain), "chain")?;
            holonomy(&path, &chain, json || cfg.json.unwrap_or(false))
        }
        Cmd::LimitCheck { mu, cs, json } => {
            let mu = need(mu.or(cfg_c(cfg.mu)), "mu")?;
            let cs = cs.or(cfg.cs).unwrap_or_else(|| vec![0.1, 0.01, 0.001]);
            limit_check(mu, &cs, json || cfg.json.unwrap_or(false))
        }
        Cmd::Hnn { c, mu, json } => hnn(
            need(c.or(cfg.c), "c")?,
            mu.or(cfg_c(cfg.mu)).unwrap_or_default(),
            json || cfg.json.unwrap_or(false),
        ),
        Cmd::Afp { c, mu, json } => afp(
            need(c.or(cfg.c), "c")?,
            mu.or(cfg_c(cfg.mu)).unwrap_or_default(),
            json || cfg.json.unwrap_or(false),
        ),
        Cmd::Bq { c, tau, budget, json } => bq_point(
            need(c.or(cfg.c), "c")?,
            need(tau.or(cfg_c(cfg.tau)), "tau")?,
            budget.or(cfg.budget).unwrap_or(bq::DEFAULT_BUDGET),
            json || cfg.json.unwrap_or(false),
        ),
        Cmd::Slice { c, raster } => {
            let c = need(c.or(cfg.c), "c")?;
            let (job, out, report) = raster_job(c, raster, &cfg)?;
            let img = render(&job)?;
            if let Some(p) = &out {
                write(p, &img.to_ppm())?;
            }
            emit_report(&slice_report(&img), report.as_deref())
        }
        Cmd::Overlay { cs, raster } => {
            let cs = need(cs.or(cfg.cs.clone()), "cs")?;
            let first = *cs.first().ok_or_else(|| invalid("empty --cs"))?;
            let (job, out, report) = raster_job(first, raster, &cfg)?;
            let jobs: Vec<RasterJob> = cs.iter().map(|&c| RasterJob { c, ..job.clone() }).collect();
            let o = overlay(&jobs)?;
            if let Some(p) = &out {
                write(p, &o.to_ppm())?;
            }
            let mut text = String::new();
            for im in &o.images {
                text += &format!("c={} counts qf/notqf/undecided={:?}\n", im.job.c, im.counts());
            }
            for (s, l, f) in o.containment() {
                let f = f.map_or("n/a".to_string(), |f| format!("{f:.4}"));
                text += &format!("containment c={s} in c={l}: {f}\n");
            }
            emit_report(&text, report.as_deref())
        }
        Cmd::Symmetry { input, c, json } => {
            let path = need(input.or(cfg.input.map(PathBuf::from)), "in")?;
            let mut img = read_ppm(&read(&path)?)?;
            if let Some(c) = c.or(cfg.c) {
                img.job.c = c;
                img.job.validate()?;
            }
            let r = symmetry_check(&img);
            if json || cfg.json.unwrap_or(false) {
                print_json(&json!({
                    "conjugation": check_json(&r.conjugation),
                    "negation": check_json(&r.negation),
                    "periodicity": check_json(&r.periodicity),
                }));
            } else {
                out!("{}", symmetry_text(&r));
            }
            Ok(())
        }
    }
}

fn raster_job(c: f64, a: RasterArgs, cfg: &Config) -> Result<(RasterJob, Option<PathBuf>, Option<PathBuf>), Failure> {
    let d = Window::default_for(c);
    let re = a.re.or(cfg.re).map_or(d.re, |[x, y]| (x, y));
    let im = a.im.or(cfg.im).map_or(d.im, |[x, y]| (x, y));
    let size = a.size.or(cfg.size.clone()).unwrap_or_else(|| "200x200".into());
    let (w, h) = size
        .split_once('x')
        .and_then(|(w, h)| Some((w.parse().ok()?, h.parse().ok()?)))
        .ok_or_else(|| invalid(format!("bad --size {size}, expected WxH")))?;
    let job = RasterJob::new(c, Window { re, im }, w, h, a.budget.or(cfg.budget).unwrap_or(bq::DEFAULT_BUDGET))
        .with_threads(a.threads.or(cfg.threads).unwrap_or(0));
    job.validate()?;
    let out = a.out.or(cfg.out.clone().map(PathBuf::from));
    let report = a.report.or(cfg.report.clone().map(PathBuf::from));
    Ok((job, out, report))
}

fn emit_report(text: &str, path: Option<&Path>) -> Result<(), Failure> {
    match path {
        Some(p) => write(p, text.as_bytes()),
        None => {
            out!("{text}");
            Ok(())
        }
    }
}

fn check_json(r: &CheckResult) -> Value {
    match r {
        CheckResult::Skipped(why) => json!({ "skipped": why }),
        CheckResult::Done { pairs, agree, mismatches } => json!({
            "pairs": pairs,
            "agree": agree,
            "fraction": r.fraction(),
            "mismatches": mismatches,
        }),
    }
}

fn check_text(name: &str, r: &CheckResult) -> String {
    match r {
        CheckResult::Skipped(why) => format!("{name}: skipped ({why})\n"),
        CheckResult::Done { pairs, agree, .. } => {
            format!("{name}: {agree}/{pairs} = {:.4}\n", r.fraction().unwrap_or(0.0))
        }
    }
}

fn symmetry_text(r: &SymmetryReport) -> String {
    check_text("conjugation", &r.conjugation)
        + &check_text("negation", &r.negation)
        + &check_text("periodicity", &r.periodicity)
}

fn components_text(r: &ComponentReport) -> String {
    let mut largest = r.sizes.clone();
    largest.sort_unstable_by(|a, b| b.cmp(a));
    largest.truncate(10);
    format!(
        "components: {}\nreal-axis components: {} (unique: {})\nlargest sizes: {:?}\n",
        r.count,
        r.real_axis.len(),
        r.bm_unique(),
        largest
    )
}

fn slice_report(img: &SliceImage) -> String {
    let j = &img.job;
    let [q, n, u] = img.counts();
    format!(
        "c={} re=[{}, {}] im=[{}, {}] size={}x{} budget={}\nwall time: {:.3} s\nqf={q} notqf={n} undecided={u}\n",
        j.c,
        j.window.re.0,
        j.window.re.1,
        j.window.im.0,
        j.window.im.1,
        j.width,
        j.height,
        j.budget,
        img.wall.as_secs_f64()
    ) + &components_text(&components(img))
        + &symmetry_text(&symmetry_check(img))
}

fn holonomy(path: &Path, chain: &str, as_json: bool) -> Result<(), Failure> {
    let text = String::from_utf8_lossy(&read(path)?).into_owned();
    let g = surface::parse_surface(&text).map_err(invalid)?;
    let ch = surface::HolonomyChain::parse(chain, &g).map_err(invalid)?;
    let m = surface::holonomy(&g, &ch).map_err(invalid)?;
    let tr = m.trace();
    let len = m.translation_length().ok();
    if as_json {
        print_json(&json!({
            "chain": ch.to_string(),
            "matrix": mjson(&m),
            "trace": cjson(tr),
            "class": format!("{:?}", m.classify()),
            "translation_length": len.map(cjson),
        }));
    } else {
        outln!("chain: {ch}");
        outln!("matrix: {}", m.to_text());
        outln!("trace: {tr}  |trace| = {}", tr.norm());
        outln!("class: {:?}", m.classify());
        if let Some(l) = len {
            outln!("complex translation length: {l}");
        }
    }
    Ok(())
}

fn limit_check(mu: C64, cs: &[f64], as_json: bool) -> Result<(), Failure> {
    let r = limits::limit_check(mu, cs).map_err(|e| match e {
        limits::LimitError::Floor(_) => Failure::Floor(e.to_string()),
        _ => invalid(e),
    })?;
    if as_json {
        let q: Vec<Value> = r
            .quantities
            .iter()
            .map(|q| {
                json!({
                    "name": q.name,
                    "deviations": q.deviations,
                    "monotone": q.monotone,
                    "rate_ok": q.rate_ok,
                    "decay_order": q.decay_order,
                })
            })
            .collect();
        print_json(&json!({ "mu": cjson(mu), "cs": cs, "quantities": q }));
    } else {
        out!("{}", r.to_table());
    }
    Ok(())
}

fn hnn(c: f64, mu: C64, as_json: bool) -> Result<(), Failure> {
    let g = groups::Hnn::build(c, mu).map_err(invalid)?;
    let t = g.trace_triple().map_err(invalid)?;
    let mats = [("S1", g.s1), ("S2", g.s2), ("R", g.r), ("U", g.u), ("K1", g.k1), ("K2", g.k2)];
    if as_json {
        let m: serde_json::Map<String, Value> = mats.iter().map(|(k, m)| (k.to_string(), mjson(m))).collect();
        let res: serde_json::Map<String, Value> = g.residuals().into_iter().map(|(k, v)| (k.into(), json!(v))).collect();
        print_json(&json!({
            "c": c,
            "mu": cjson(mu),
            "matrices": m,
            "trace_triple": t.map(cjson),
            "circles": g.circles,
            "residuals": res,
        }));
    } else {
        for (k, m) in mats {
            outln!("{k}: {}", m.to_text());
        }
        outln!("trace triple: {} {} {}", t[0], t[1], t[2]);
        outln!("circles (C1, R1), (C2, R2): {:?}", g.circles);
        for (k, v) in g.residuals() {
            outln!("{k}: {v:.3e}");
        }
    }
    Ok(())
}

fn afp(c: f64, mu: C64, as_json: bool) -> Result<(), Failure> {
    let g = groups::Afp::build(c, mu).map_err(invalid)?;
    let mats = [("S1", g.s1), ("U", g.u), ("V1", g.v[0]), ("V2", g.v[1]), ("V3", g.v[2]), ("V4", g.v[3])];
    if as_json {
        let m: serde_json::Map<String, Value> = mats.iter().map(|(k, m)| (k.to_string(), mjson(m))).collect();
        let res: serde_json::Map<String, Value> = g.residuals().into_iter().map(|(k, v)| (k.into(), json!(v))).collect();
        print_json(&json!({ "c": c, "mu": cjson(mu), "matrices": m, "fhat": g.fhat, "residuals": res }));
    } else {
        for (k, m) in mats {
            outln!("{k}: {}", m.to_text());
        }
        outln!("alternative circles (C1', R1'), (C2', R2'): {:?}", g.fhat);
        for (k, v) in g.residuals() {
            outln!("{k}: {v:.3e}");
        }
    }
    Ok(())
}

fn bq_point(c: f64, tau: C64, budget: usize, as_json: bool) -> Result<(), Failure> {
    let v = bq::classify_point(c, tau, budget).map_err(invalid)?;
    if as_json {
        print_json(&json!({
            "c": c,
            "tau": cjson(tau),
            "outcome": v.outcome.to_string(),
            "nodes_visited": v.nodes_visited,
            "min_trace_norm_seen": v.min_trace_norm_seen,
            "depth_limit_hit": v.depth_limit_hit,
        }));
    } else {
        outln!("{}", v.outcome);
        outln!("nodes visited: {}", v.nodes_visited);
        outln!("min trace norm seen: {}", v.min_trace_norm_seen);
        outln!("depth limit hit: {}", v.depth_limit_hit);
    }
    Ok(())
}
