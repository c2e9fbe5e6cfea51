use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use polydual::cli::{self, Command, JobOutput, JobRequest, OutputFormat, DEFAULT_TOL};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "polydual", version, about = "Dual regular polygons sharing a distance multiset")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Cyclic averages of even powers, from distances or from (n, r, l).
    Averages(Flags),
    /// Both (R, L) solutions for a distance list.
    Dual(Flags),
    /// Build the second polygon from a polygon and a point.
    Reconstruct(Flags),
    /// Equilateral-triangle closed forms and constructions.
    Pompeiu(Flags),
    /// The two points seeing two polygons with a shared vertex alike.
    TwoPoints(Flags),
    /// Check the closed forms against the brute-force oracle.
    Verify(Flags),
    /// Write an SVG figure.
    Render(Flags),
    /// Run a JSON job file, or `-` for stdin.
    Job {
        file: String,
    },
}

#[derive(Args)]
struct Flags {
    /// Comma-separated distances or a JSON array.
    #[arg(long, allow_hyphen_values = true)]
    distances: Option<String>,
    /// `n,cx,cy,r,phase` or a JSON polygon object. Repeat for two-points.
    #[arg(long, allow_hyphen_values = true)]
    polygon: Vec<String>,
    /// `x,y` or a JSON point object.
    #[arg(long, allow_hyphen_values = true)]
    point: Option<String>,
    /// Direction of the second center from the point (radians or `<v>deg`).
    #[arg(long, allow_hyphen_values = true)]
    direction: Option<String>,
    /// Vertex whose distance anchors the construction, 1-based.
    #[arg(long)]
    anchor_index: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    l: Option<f64>,
    #[arg(long)]
    count: Option<u64>,
    #[arg(long)]
    n_min: Option<u64>,
    #[arg(long)]
    n_max: Option<u64>,
    #[arg(long)]
    grid_resolution: Option<u64>,
    #[arg(long)]
    refine_iterations: Option<u64>,
    /// Scene for `render`: reconstruct, two-points or pompeiu.
    #[arg(long)]
    scene: Option<String>,
    /// Also draw the mirror-image dual polygon.
    #[arg(long)]
    mirror: bool,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Format {
    Json,
    Svg,
}

fn numbers(s: &str, what: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| format!("--{what}: cannot parse {t:?}")))
        .collect()
}

fn json_or<F>(s: &str, what: &str, csv: F) -> Result<Value, String>
where
    F: FnOnce(&str) -> Result<Value, String>,
{
    let t = s.trim();
    if t.starts_with('{') || t.starts_with('[') {
        serde_json::from_str(t).map_err(|e| format!("--{what}: {e}"))
    } else {
        csv(t)
    }
}

fn polygon_value(s: &str) -> Result<Value, String> {
    json_or(s, "polygon", |t| {
        let parts: Vec<&str> = t.split(',').map(str::trim).collect();
        if parts.len() != 5 {
            return Err(format!("--polygon: expected n,cx,cy,r,phase, got {t:?}"));
        }
        let n: u64 = parts[0].parse().map_err(|_| format!("--polygon: bad n {:?}", parts[0]))?;
        let xyz = numbers(&parts[1..4].join(","), "polygon")?;
        Ok(json!({
            "n": n,
            "center": { "x": xyz[0], "y": xyz[1] },
            "r": xyz[2],
            "phase": parts[4],
        }))
    })
}

fn angle_value(s: &str) -> Value {
    match s.trim().parse::<f64>() {
        Ok(v) => json!(v),
        Err(_) => json!(s.trim()),
    }
}

fn payload(f: &Flags) -> Result<Value, String> {
    let mut p = Map::new();
    if let Some(d) = &f.distances {
        let v = json_or(d, "distances", |t| Ok(json!(numbers(t, "distances")?)))?;
        p.insert("distances".into(), v);
    }
    match f.polygon.len() {
        0 => {}
        1 => {
            p.insert("polygon".into(), polygon_value(&f.polygon[0])?);
        }
        _ => {
            let list = f.polygon.iter().map(|s| polygon_value(s)).collect::<Result<Vec<_>, _>>()?;
            p.insert("polygons".into(), Value::Array(list));
        }
    }
    if let Some(pt) = &f.point {
        let v = json_or(pt, "point", |t| match numbers(t, "point")?.as_slice() {
            [x, y] => Ok(json!({ "x": x, "y": y })),
            _ => Err(format!("--point: expected x,y, got {t:?}")),
        })?;
        p.insert("point".into(), v);
    }
    if let Some(d) = &f.direction {
        p.insert("direction".into(), angle_value(d));
    }
    let ints = [
        ("anchor_index", f.anchor_index),
        ("n", f.n),
        ("count", f.count),
        ("n_min", f.n_min),
        ("n_max", f.n_max),
        ("grid_resolution", f.grid_resolution),
        ("refine_iterations", f.refine_iterations),
    ];
    for (k, v) in ints {
        if let Some(v) = v {
            p.insert(k.into(), json!(v));
        }
    }
    for (k, v) in [("r", f.r), ("l", f.l)] {
        if let Some(v) = v {
            p.insert(k.into(), json!(v));
        }
    }
    if let Some(s) = &f.scene {
        p.insert("scene".into(), json!(s));
    }
    if f.mirror {
        p.insert("mirror".into(), json!(true));
    }
    Ok(Value::Object(p))
}

fn request(command: Command, f: Flags) -> Result<JobRequest, JobOutput> {
    let payload = payload(&f).map_err(usage)?;
    Ok(JobRequest {
        command,
        payload,
        tol: f.tol,
        seed: f.seed,
        output_path: f.out,
        format: match f.format {
            Format::Json => OutputFormat::Json,
            Format::Svg => OutputFormat::Svg,
        },
    })
}

fn usage(message: String) -> JobOutput {
    let body = json!({ "code": "SCHEMA", "message": message, "context": {} });
    JobOutput {
        exit_code: 2,
        stdout: cli::to_json(&body),
    }
}

fn read_job(file: &str) -> Result<JobRequest, JobOutput> {
    let mut text = String::new();
    let read = if file == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(file).map(|s| text = s)
    };
    read.map_err(|e| usage(format!("{file}: {e}")))?;
    JobRequest::from_json(&text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let req = match cli.command {
        Sub::Averages(f) => request(Command::Averages, f),
        Sub::Dual(f) => request(Command::Dual, f),
        Sub::Reconstruct(f) => request(Command::Reconstruct, f),
        Sub::Pompeiu(f) => request(Command::Pompeiu, f),
        Sub::TwoPoints(f) => request(Command::TwoPoints, f),
        Sub::Verify(f) => request(Command::Verify, f),
        Sub::Render(f) => request(Command::Render, f),
        Sub::Job { file } => read_job(&file),
    };
    let out = match req {
        Ok(r) => cli::run(&r),
        Err(o) => o,
    };
    print!("{}", out.stdout);
    ExitCode::from(out.exit_code as u8)
}
