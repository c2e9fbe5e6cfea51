//! JSON job runner behind the `polydual` binary.
//!
//! A job is `{"command", "payload", "tol", "seed", "output_path", "format"}`.
//! Distances are arrays of numbers, points are `{"x", "y"}`, polygons are
//! `{"n", "center", "r", "phase"}`. Angles are radians, or strings with a
//! `deg` suffix such as `"45deg"`. Vertex indices are 1-based.
//!
//! Exit codes: 0 on success, 1 on a domain error, 2 on a malformed request.
//! Errors are reported as `{"code", "message", "context"}`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::{json, Map, Value};

use crate::averages::{averages_from_distances, averages_from_radius_offset, check_consistency, ConsistencyReport, CONSISTENCY_TOL};
use crate::dual::{classify_point, solve, DualSolution, Role};
use crate::error::Error;
use crate::geometry::{Distances, Point2, RegularPolygon};
use crate::oracle::{search_second_polygon, InstanceOptions, InstanceStream, OracleConfig};
use crate::pompeiu::{construct_both_triangles, pompeiu_from_distances, solve_equilateral, weitzenbock_margin};
use crate::reconstruction::{construct_dual_with_anchor, verify_permutation, DualPolygonPair, PermutationMatch};
use crate::svg::{dual_scene, pompeiu_scene, two_points_scene, Figure};
use crate::two_points::two_points;

pub const DEFAULT_TOL: f64 = 1e-9;

/// Agreement required between the oracle and the closed forms.
pub const ORACLE_AGREEMENT: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Averages,
    Dual,
    Reconstruct,
    Pompeiu,
    TwoPoints,
    Verify,
    Render,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Averages => "averages",
            Command::Dual => "dual",
            Command::Reconstruct => "reconstruct",
            Command::Pompeiu => "pompeiu",
            Command::TwoPoints => "two-points",
            Command::Verify => "verify",
            Command::Render => "render",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Svg,
}

fn empty_object() -> Value {
    Value::Object(Map::new())
}

fn default_tol() -> f64 {
    DEFAULT_TOL
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobRequest {
    pub command: Command,
    #[serde(default = "empty_object")]
    pub payload: Value,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output_path: Option<String>,
    #[serde(default)]
    pub format: OutputFormat,
}

impl JobRequest {
    pub fn new(command: Command, payload: Value) -> Self {
        JobRequest {
            command,
            payload,
            tol: DEFAULT_TOL,
            seed: 0,
            output_path: None,
            format: OutputFormat::Json,
        }
    }

    /// Parses a request document; failures are schema errors (exit 2).
    pub fn from_json(text: &str) -> Result<Self, JobOutput> {
        serde_json::from_str(text).map_err(|e| error_output(None, &JobError::Schema(e.to_string())))
    }
}

/// What the binary prints and the status it exits with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobOutput {
    pub exit_code: i32,
    pub stdout: String,
}

#[derive(Debug)]
enum JobError {
    Domain(Error),
    Schema(String),
    Io(String),
}

impl From<Error> for JobError {
    fn from(e: Error) -> Self {
        JobError::Domain(e)
    }
}

type JobResult<T> = Result<T, JobError>;

enum Body {
    Json(Value),
    Svg(Figure),
}

/// Runs one job. Writes `output_path` when set.
pub fn run(request: &JobRequest) -> JobOutput {
    match dispatch(request).and_then(|body| emit(request, body)) {
        Ok(stdout) => JobOutput { exit_code: 0, stdout },
        Err(e) => error_output(Some(request.command), &e),
    }
}

fn dispatch(req: &JobRequest) -> JobResult<Body> {
    if !(req.tol.is_finite() && req.tol > 0.0) {
        return Err(JobError::Schema(format!("tol must be positive, got {}", req.tol)));
    }
    let p = &req.payload;
    if !p.is_object() {
        return Err(JobError::Schema("payload must be an object".into()));
    }
    let svg = req.format == OutputFormat::Svg;
    match req.command {
        Command::Averages => averages_job(p, req.tol).map(Body::Json),
        Command::Dual => dual_job(p, req.tol).map(Body::Json),
        Command::Reconstruct if svg => render_job(p, "reconstruct", req.tol).map(Body::Svg),
        Command::Reconstruct => reconstruct_job(p, req.tol).map(Body::Json),
        Command::Pompeiu if svg => render_job(p, "pompeiu", req.tol).map(Body::Svg),
        Command::Pompeiu => pompeiu_job(p, req.tol).map(Body::Json),
        Command::TwoPoints if svg => render_job(p, "two-points", req.tol).map(Body::Svg),
        Command::TwoPoints => two_points_job(p, req.tol).map(Body::Json),
        Command::Verify => verify_job(p, req.seed).map(Body::Json),
        Command::Render => {
            let scene = p
                .get("scene")
                .and_then(Value::as_str)
                .ok_or_else(|| JobError::Schema("render payload needs a \"scene\" string".into()))?;
            render_job(p, scene, req.tol).map(Body::Svg)
        }
    }
}

fn emit(req: &JobRequest, body: Body) -> JobResult<String> {
    let (text, summary) = match body {
        Body::Json(v) => (to_json(&v), None),
        Body::Svg(fig) => {
            let c = fig.counts();
            let summary = json!({
                "polygons": c.polygons,
                "circles": c.circles,
                "markers": c.markers,
                "segments": c.segments,
            });
            (fig.to_svg(), Some(summary))
        }
    };
    match &req.output_path {
        None => Ok(text),
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| JobError::Io(format!("{path}: {e}")))?;
            let mut out = json!({ "output": path });
            if let Some(s) = summary {
                out["elements"] = s;
            }
            Ok(to_json(&out))
        }
    }
}

fn error_output(command: Option<Command>, e: &JobError) -> JobOutput {
    let (exit_code, code, message, mut context) = match e {
        JobError::Domain(err) => (1, err.code(), err.to_string(), error_context(err)),
        JobError::Schema(msg) => (2, "SCHEMA", msg.clone(), Map::new()),
        JobError::Io(msg) => (1, "IO", msg.clone(), Map::new()),
    };
    if let Some(c) = command {
        context.insert("command".into(), json!(c.name()));
    }
    let body = json!({ "code": code, "message": message, "context": context });
    JobOutput {
        exit_code,
        stdout: to_json(&body),
    }
}

fn error_context(e: &Error) -> Map<String, Value> {
    let v = match e {
        Error::DimensionMismatch { left, right } => json!({ "left": left, "right": right }),
        Error::Realizability { value, .. } => json!({ "value": value }),
        Error::TriangleInequality { largest, sum_of_others } => {
            json!({ "largest": largest, "sum_of_others": sum_of_others })
        }
        Error::NoIntersection { anchor, lower, upper } => {
            json!({ "anchor": anchor, "lower": lower, "upper": upper })
        }
        Error::Range { value } => json!({ "value": value }),
        Error::SharedVertex { gap } => json!({ "gap": gap }),
        Error::Congruent { r1, r2 } => json!({ "r1": r1, "r2": r2 }),
        Error::InvalidInput(_) | Error::Degenerate(_) | Error::Concentric => json!({}),
    };
    match v {
        Value::Object(m) => m,
        _ => Map::new(),
    }
}

// ---------------------------------------------------------------------------
// number formatting

/// Formats `v` with 17 significant digits, positionally for moderate
/// magnitudes and in exponent form otherwise.
pub fn format_sig17(v: f64) -> String {
    if v == 0.0 {
        return "0.0".to_string();
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..=15).contains(&exp) {
        return sci;
    }
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    if exp >= 0 {
        let split = exp as usize + 1;
        format!("{sign}{}.{}", &digits[..split], &digits[split..])
    } else {
        let zeros = "0".repeat((-exp - 1) as usize);
        format!("{sign}0.{zeros}{digits}")
    }
}

struct Sig17(PrettyFormatter<'static>);

impl Formatter for Sig17 {
    fn write_f64<W: ?Sized + std::io::Write>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()> {
        writer.write_all(format_sig17(value).as_bytes())
    }

    fn begin_array<W: ?Sized + std::io::Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + std::io::Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + std::io::Write>(&mut self, w: &mut W, first: bool) -> std::io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + std::io::Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + std::io::Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + std::io::Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + std::io::Write>(&mut self, w: &mut W, first: bool) -> std::io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + std::io::Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + std::io::Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Pretty JSON with 17-significant-digit floats, newline-terminated.
pub fn to_json(v: &Value) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sig17(PrettyFormatter::new()));
    v.serialize(&mut ser).expect("serializing a Value cannot fail");
    let mut s = String::from_utf8(buf).expect("serde_json emits UTF-8");
    s.push('\n');
    s
}

// ---------------------------------------------------------------------------
// payload parsing

fn schema(msg: impl Into<String>) -> JobError {
    JobError::Schema(msg.into())
}

fn field<'a>(p: &'a Value, key: &str) -> JobResult<&'a Value> {
    p.get(key).ok_or_else(|| schema(format!("missing field \"{key}\"")))
}

fn number(v: &Value, what: &str) -> JobResult<f64> {
    v.as_f64().ok_or_else(|| schema(format!("\"{what}\" must be a number")))
}

/// Radians as a number, or a string with a `deg` (or `rad`) suffix.
pub fn parse_angle_str(s: &str) -> Option<f64> {
    let s = s.trim();
    if let Some(d) = s.strip_suffix("deg") {
        d.trim().parse::<f64>().ok().map(|v| v * PI / 180.0)
    } else if let Some(r) = s.strip_suffix("rad") {
        r.trim().parse::<f64>().ok()
    } else {
        s.parse::<f64>().ok()
    }
}

fn angle(v: &Value, what: &str) -> JobResult<f64> {
    match v {
        Value::Number(_) => number(v, what),
        Value::String(s) => parse_angle_str(s).ok_or_else(|| schema(format!("\"{what}\": bad angle {s:?}"))),
        _ => Err(schema(format!("\"{what}\" must be a number or a \"<value>deg\" string"))),
    }
}

fn distances(p: &Value) -> JobResult<Distances> {
    let arr = field(p, "distances")?
        .as_array()
        .ok_or_else(|| schema("\"distances\" must be an array"))?;
    let values = arr.iter().map(|v| number(v, "distances")).collect::<JobResult<Vec<f64>>>()?;
    Distances::new(values).map_err(|e| schema(e.to_string()))
}

fn point(v: &Value, what: &str) -> JobResult<Point2> {
    let obj = v.as_object().ok_or_else(|| schema(format!("\"{what}\" must be an object {{x, y}}")))?;
    let x = number(obj.get("x").ok_or_else(|| schema(format!("\"{what}.x\" missing")))?, "x")?;
    let y = number(obj.get("y").ok_or_else(|| schema(format!("\"{what}.y\" missing")))?, "y")?;
    Ok(Point2::new(x, y))
}

fn polygon(v: &Value, what: &str) -> JobResult<RegularPolygon> {
    if !v.is_object() {
        return Err(schema(format!("\"{what}\" must be an object {{n, center, r, phase}}")));
    }
    let n = field(v, "n")?
        .as_u64()
        .ok_or_else(|| schema(format!("\"{what}.n\" must be a positive integer")))? as usize;
    let center = match v.get("center") {
        Some(c) => point(c, "center")?,
        None => Point2::ORIGIN,
    };
    let r = number(field(v, "r")?, "r")?;
    let phase = match v.get("phase") {
        Some(a) => angle(a, "phase")?,
        None => 0.0,
    };
    RegularPolygon::new(n, center, r, phase).map_err(|e| schema(e.to_string()))
}

fn opt_usize(p: &Value, key: &str, default: usize) -> JobResult<usize> {
    match p.get(key) {
        None => Ok(default),
        Some(v) => v
            .as_u64()
            .map(|x| x as usize)
            .ok_or_else(|| schema(format!("\"{key}\" must be a nonnegative integer"))),
    }
}

// ---------------------------------------------------------------------------
// JSON views

fn point_json(p: Point2) -> Value {
    json!({ "x": p.x, "y": p.y })
}

fn polygon_json(p: &RegularPolygon) -> Value {
    json!({
        "n": p.n,
        "center": point_json(p.center),
        "r": p.circumradius,
        "phase": p.phase,
        "vertices": p.vertices().into_iter().map(point_json).collect::<Vec<_>>(),
    })
}

fn consistency_json(r: &ConsistencyReport) -> Value {
    json!({
        "pass": r.pass,
        "tol": r.tol,
        "moment_bound": r.moment_bound,
        "checks": r.checks.iter().map(|c| json!({
            "m": c.m,
            "actual": c.actual,
            "expected": c.expected,
            "residual": c.residual,
            "relative_residual": c.relative_residual,
            "pass": c.pass,
        })).collect::<Vec<_>>(),
    })
}

fn dual_json(s: &DualSolution) -> Value {
    json!({
        "s2": s.s2,
        "s4": s.s4,
        "discriminant": s.discriminant,
        "R1": s.larger.r,
        "L1": s.larger.l,
        "R2": s.smaller.r,
        "L2": s.smaller.l,
        "degeneracy": s.degeneracy,
        "point_class": classify_point(s),
    })
}

/// Vertex indices are reported 1-based.
fn permutation_json(p: &PermutationMatch) -> Value {
    match p {
        PermutationMatch::Found { permutation, residual } => json!({
            "status": "found",
            "permutation": permutation.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "residual": residual,
        }),
        PermutationMatch::Failed { residual } => json!({ "status": "failed", "residual": residual }),
    }
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Some(b), Value::Object(e)) = (base.as_object_mut(), extra) {
        b.extend(e);
    }
    base
}

// ---------------------------------------------------------------------------
// commands

fn consistency_tol(tol: f64) -> f64 {
    tol.max(CONSISTENCY_TOL)
}

fn averages_job(p: &Value, tol: f64) -> JobResult<Value> {
    if p.get("distances").is_some() {
        let d = distances(p)?;
        let avgs = averages_from_distances(&d)?;
        let report = check_consistency(&avgs, consistency_tol(tol));
        return Ok(json!({
            "command": "averages",
            "n": d.n(),
            "source": "distances",
            "averages": avgs.values(),
            "consistency": consistency_json(&report),
        }));
    }
    let n = field(p, "n")?
        .as_u64()
        .ok_or_else(|| schema("\"n\" must be a positive integer"))? as usize;
    let r = number(field(p, "r")?, "r")?;
    let l = number(field(p, "l")?, "l")?;
    let avgs = averages_from_radius_offset(n, r, l)?;
    Ok(json!({
        "command": "averages",
        "n": n,
        "source": "radius_offset",
        "averages": avgs.values(),
    }))
}

fn dual_job(p: &Value, tol: f64) -> JobResult<Value> {
    let d = distances(p)?;
    let mut extra = json!({});
    if d.n() == 3 {
        let v = d.values();
        let t = pompeiu_from_distances(v[0], v[1], v[2], tol)?;
        extra = json!({ "pompeiu": { "area": t.area, "degenerate": t.degenerate } });
    }
    let sol = solve(&d, tol)?;
    let report = check_consistency(&averages_from_distances(&d)?, consistency_tol(tol));
    let out = merge(
        json!({ "command": "dual", "n": d.n(), "distances": d.values() }),
        dual_json(&sol),
    );
    let out = merge(out, json!({ "consistency": consistency_json(&report) }));
    Ok(merge(out, extra))
}

fn build_pair(p: &Value, tol: f64) -> JobResult<DualPolygonPair> {
    let poly = polygon(field(p, "polygon")?, "polygon")?;
    let m = point(field(p, "point")?, "point")?;
    let direction = match p.get("direction") {
        Some(a) => angle(a, "direction")?,
        None => 0.0,
    };
    let anchor = opt_usize(p, "anchor_index", 1)?;
    if anchor == 0 {
        return Err(schema("\"anchor_index\" is 1-based"));
    }
    let anchor = anchor - 1;
    Ok(construct_dual_with_anchor(&poly, m, direction, anchor, tol)?)
}

fn reconstruct_job(p: &Value, tol: f64) -> JobResult<Value> {
    let pair = build_pair(p, tol)?;
    let d = pair.distances();
    let (xb, xc) = (pair.b_distances(), pair.c_distances());
    let perm_b = verify_permutation(&d, &xb, tol.max(1e-9))?;
    let perm_c = verify_permutation(&d, &xc, tol.max(1e-9))?;
    let sol = solve(&d, tol)?;
    Ok(json!({
        "command": "reconstruct",
        "point": point_json(pair.point),
        "primary": merge(polygon_json(&pair.primary), json!({ "distances": d.values() })),
        "b_polygon": merge(polygon_json(&pair.b_polygon), json!({
            "distances": xb.values(),
            "permutation": permutation_json(&perm_b),
        })),
        "c_polygon": merge(polygon_json(&pair.c_polygon), json!({
            "distances": xc.values(),
            "permutation": permutation_json(&perm_c),
        })),
        "center_direction": pair.center_direction,
        "anchor_index": pair.anchor_index + 1,
        "anchor_distance": pair.anchor_distance,
        "match_residual": pair.match_residual,
        "dual": dual_json(&sol),
    }))
}

fn pompeiu_job(p: &Value, tol: f64) -> JobResult<Value> {
    let d = distances(p)?;
    let [d1, d2, d3] = <[f64; 3]>::try_from(d.values())
        .map_err(|_| schema(format!("pompeiu needs exactly 3 distances, got {}", d.n())))?;
    let t = pompeiu_from_distances(d1, d2, d3, tol)?;
    let sol = solve_equilateral(&t);
    let mut out = merge(
        json!({
            "command": "pompeiu",
            "distances": d.values(),
            "area": t.area,
            "degenerate": t.degenerate,
            "weitzenbock_margin": weitzenbock_margin(&t),
            "sides": [sol.larger_side, sol.smaller_side],
        }),
        dual_json(&sol.dual),
    );
    if !t.degenerate {
        let k = construct_both_triangles(d1, d2, d3, tol)?;
        out["construction"] = json!({
            "point": point_json(k.point),
            "auxiliary": point_json(k.auxiliary),
            "larger": k.larger.iter().map(|v| point_json(*v)).collect::<Vec<_>>(),
            "smaller": k.smaller.iter().map(|v| point_json(*v)).collect::<Vec<_>>(),
        });
    }
    Ok(out)
}

fn polygon_pair(p: &Value) -> JobResult<(RegularPolygon, RegularPolygon)> {
    if let Some(list) = p.get("polygons") {
        let arr = list.as_array().ok_or_else(|| schema("\"polygons\" must be an array"))?;
        if arr.len() != 2 {
            return Err(schema(format!("\"polygons\" needs exactly 2 entries, got {}", arr.len())));
        }
        return Ok((polygon(&arr[0], "polygons[0]")?, polygon(&arr[1], "polygons[1]")?));
    }
    Ok((
        polygon(field(p, "polygon_a")?, "polygon_a")?,
        polygon(field(p, "polygon_b")?, "polygon_b")?,
    ))
}

fn two_points_job(p: &Value, tol: f64) -> JobResult<Value> {
    let (pa, pb) = polygon_pair(p)?;
    let sol = two_points(&pa, &pb, tol)?;
    Ok(json!({
        "command": "two-points",
        "polygon_a": polygon_json(&pa),
        "polygon_b": polygon_json(&pb),
        "m1": point_json(sol.m1),
        "m2": sol.m2.map(point_json),
        "collinear_degenerate": sol.collinear_degenerate,
        "shared_vertex": [sol.shared_vertex.0 + 1, sol.shared_vertex.1 + 1],
        "center_distance": sol.center_distance,
        "existence_condition": sol.existence_condition,
        "matches": sol.matches.iter().map(|m| json!({
            "point": point_json(m.point),
            "distances_a": m.distances_a.values(),
            "distances_b": m.distances_b.values(),
            "permutation": permutation_json(&m.permutation),
        })).collect::<Vec<_>>(),
    }))
}

#[derive(Debug, Clone, Copy)]
struct Verdict {
    found: bool,
    residual: f64,
    radius_error: f64,
    offset_error: f64,
    swap_error: f64,
}

fn verify_one(poly: &RegularPolygon, m: Point2, cfg: &OracleConfig) -> JobResult<(Value, Verdict)> {
    let res = search_second_polygon(poly, m, cfg);
    let r = poly.circumradius;
    let l = m.distance(poly.center);
    let sol = solve(&poly.distances_from(m), 1e-9)?;
    let expected = match sol.matching_role(r, l, 1e-6) {
        Some(Role::Larger) => sol.smaller,
        _ => sol.larger,
    };
    let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(f64::MIN_POSITIVE);
    let v = Verdict {
        found: res.found,
        residual: res.residual,
        radius_error: rel(res.radius, expected.r),
        offset_error: rel(res.offset, expected.l),
        swap_error: rel(res.radius, l).max(rel(res.offset, r)),
    };
    let body = json!({
        "n": poly.n,
        "polygon": polygon_json(poly),
        "point": point_json(m),
        "found": res.found,
        "residual": res.residual,
        "oracle": { "r": res.radius, "l": res.offset },
        "closed_form": { "r": expected.r, "l": expected.l },
        "radius_error": v.radius_error,
        "offset_error": v.offset_error,
        "swap_error": v.swap_error,
        "samples_evaluated": res.samples_evaluated,
    });
    Ok((body, v))
}

fn verify_job(p: &Value, seed: u64) -> JobResult<Value> {
    let defaults = OracleConfig::default();
    let cfg = OracleConfig {
        grid_resolution: opt_usize(p, "grid_resolution", defaults.grid_resolution)?,
        refine_iterations: opt_usize(p, "refine_iterations", defaults.refine_iterations)?,
        seed,
        tol: defaults.tol,
    };
    if cfg.grid_resolution < 8 {
        return Err(schema("\"grid_resolution\" must be >= 8"));
    }
    let instances: Vec<(RegularPolygon, Point2)> = if p.get("polygon").is_some() {
        vec![(polygon(field(p, "polygon")?, "polygon")?, point(field(p, "point")?, "point")?)]
    } else {
        let count = opt_usize(p, "count", 16)?;
        let n_min = opt_usize(p, "n_min", 3)?;
        let n_max = opt_usize(p, "n_max", 8)?;
        if n_min < 3 || n_max < n_min {
            return Err(schema(format!("bad n range {n_min}..={n_max}")));
        }
        InstanceStream::new(
            seed,
            InstanceOptions {
                n_range: n_min..=n_max,
                ..InstanceOptions::default()
            },
        )
        .take(count)
        .collect()
    };
    let results = instances
        .par_iter()
        .map(|(poly, m)| verify_one(poly, *m, &cfg))
        .collect::<JobResult<Vec<_>>>()?;
    let worst = |f: fn(&Verdict) -> f64| results.iter().map(|(_, v)| f(v)).fold(0.0, f64::max);
    let all_found = results.iter().all(|(_, v)| v.found);
    let max_radius = worst(|v| v.radius_error);
    let max_offset = worst(|v| v.offset_error);
    let max_swap = worst(|v| v.swap_error);
    Ok(json!({
        "command": "verify",
        "seed": seed,
        "instances": results.len(),
        "all_found": all_found,
        "max_residual": worst(|v| v.residual),
        "max_radius_error": max_radius,
        "max_offset_error": max_offset,
        "max_swap_error": max_swap,
        "agreement_tol": ORACLE_AGREEMENT,
        "pass": all_found && max_radius.max(max_offset).max(max_swap) <= ORACLE_AGREEMENT,
        "results": results.into_iter().map(|(b, _)| b).collect::<Vec<_>>(),
    }))
}

fn render_job(p: &Value, scene: &str, tol: f64) -> JobResult<Figure> {
    match scene {
        "reconstruct" | "dual" => {
            let pair = build_pair(p, tol)?;
            let mirror = p.get("mirror").and_then(Value::as_bool).unwrap_or(false);
            Ok(dual_scene(&pair, mirror))
        }
        "two-points" => {
            let (pa, pb) = polygon_pair(p)?;
            let sol = two_points(&pa, &pb, tol)?;
            Ok(two_points_scene(&pa, &pb, &sol))
        }
        "pompeiu" => {
            let d = distances(p)?;
            let [d1, d2, d3] = <[f64; 3]>::try_from(d.values())
                .map_err(|_| schema(format!("pompeiu needs exactly 3 distances, got {}", d.n())))?;
            Ok(pompeiu_scene(&construct_both_triangles(d1, d2, d3, tol)?))
        }
        other => Err(schema(format!(
            "unknown scene {other:?} (expected reconstruct, two-points or pompeiu)"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig17_format() {
        assert_eq!(format_sig17(std::f64::consts::SQRT_2), "1.4142135623730951");
        assert_eq!(format_sig17(1.0), "1.0000000000000000");
        assert_eq!(format_sig17(-0.001), "-0.0010000000000000000");
        assert_eq!(format_sig17(1e20), "1.0000000000000000e20");
        assert_eq!(format_sig17(0.0), "0.0");
        for v in [3.0e-5, 123456.789, -7.25, 4.358898943540674] {
            assert_eq!(format_sig17(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn angles() {
        assert_eq!(parse_angle_str("180deg"), Some(PI));
        assert_eq!(parse_angle_str("0.5"), Some(0.5));
        assert_eq!(parse_angle_str("1.5rad"), Some(1.5));
        assert_eq!(parse_angle_str("north"), None);
    }

    #[test]
    fn schema_errors_exit_two() {
        let out = run(&JobRequest::new(Command::Dual, json!({ "distances": "1,2" })));
        assert_eq!(out.exit_code, 2);
        assert!(out.stdout.contains("\"SCHEMA\""));
        let out = JobRequest::from_json(r#"{"command": "nope"}"#).unwrap_err();
        assert_eq!(out.exit_code, 2);
    }

    #[test]
    fn domain_errors_exit_one() {
        let out = run(&JobRequest::new(Command::Dual, json!({ "distances": [1.0, 1.0, 5.0] })));
        assert_eq!(out.exit_code, 1);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["code"], "TRIANGLE_INEQUALITY");
        assert_eq!(v["context"]["command"], "dual");
    }
}
