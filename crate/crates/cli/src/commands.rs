use crate::settings::{self, required, FileConfig};
use crate::{BodyArgs, CapsArgs, Cli, Command, HullArgs, LimitsArgs, LlnArgs, ScanArgs, SimulateArgs};
use serde_json::{json, Map, Value};
use spindle_core::asymptotics::limits;
use spindle_core::cap::{cap_measures, phi_jacobian_closed, phi_jacobian_fd, t_star, ReparamPoint};
use spindle_core::dual::{constant_width, dual_identity_report, power_identities};
use spindle_core::mc::{self, read_csv, to_csv_string, variance_slope, StatField};
use spindle_core::{r_hull, r_hull_oracle, BodySpec, ConvexBody, Error, ExperimentConfig, Model, Point2, Result};
use std::path::{Path, PathBuf};

/// Finite-difference step of the reference Jacobian.
const FD_STEP: f64 = 1e-6;
/// Widths within this of `r` count as the constant-width case.
const WIDTH_TOL: f64 = 1e-9;

struct Context {
    seed: u64,
    workers: usize,
    out: Option<PathBuf>,
    file: FileConfig,
}

impl Context {
    fn body(&self, args: &BodyArgs) -> Result<(BodySpec, ConvexBody, f64)> {
        let text = required(args.body.clone(), self.file.body.clone(), "body")?;
        let spec: BodySpec = text.parse()?;
        let body = spec.build()?;
        let r = required(args.r, self.file.r, "r")?;
        Ok((spec, body, r))
    }

    fn model(&self, flag: &Option<String>) -> Result<Model> {
        required(flag.clone(), self.file.model.clone(), "model")?.parse()
    }

    /// Echoes the resolved settings to stderr and returns the metadata block.
    fn announce(&self, config: Value) -> Map<String, Value> {
        let mut echo = config.clone();
        if let Value::Object(m) = &mut echo {
            m.insert("workers".into(), self.workers.into());
            m.insert("seed".into(), self.seed.into());
        }
        eprintln!("config: {echo}");
        let mut meta = Map::new();
        meta.insert("tool".into(), "spindle".into());
        meta.insert("version".into(), env!("CARGO_PKG_VERSION").into());
        meta.insert("config".into(), config);
        meta.insert("seed".into(), self.seed.into());
        meta
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| Error::Io(format!("cannot write {}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn emit_json(&self, meta: Map<String, Value>, mut body: Map<String, Value>) -> Result<()> {
        body.insert("metadata".into(), Value::Object(meta));
        let text = serde_json::to_string_pretty(&Value::Object(body))
            .map_err(|e| Error::Io(e.to_string()))?;
        self.emit(&(text + "\n"))
    }
}

fn object(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => Map::new(),
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

pub fn run(cli: Cli) -> Result<()> {
    let file = FileConfig::load(cli.global.config.as_deref())?;
    let workers = settings::workers(cli.global.workers, file.workers)?;
    if workers == 0 {
        return Err(Error::Config("workers must be at least 1".into()));
    }
    let ctx = Context {
        seed: cli.global.seed.or(file.seed).unwrap_or(0),
        workers,
        out: cli.global.out.clone().or(file.out.clone()),
        file,
    };
    match &cli.command {
        Command::Hull(a) => hull(&ctx, a),
        Command::Caps(a) => caps(&ctx, a),
        Command::Limits(a) => limits_cmd(&ctx, a),
        Command::DualCheck(a) => dual_check(&ctx, a),
        Command::Simulate(a) => simulate(&ctx, a),
        Command::VarianceScan(a) => variance_scan(&ctx, a),
        Command::Lln(a) => lln(&ctx, a),
    }
}

/// Reads `x,y` rows; a non-numeric first row is taken as a header.
fn read_points(path: &Path) -> Result<Vec<Point2>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))?;
    let mut points = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let parse = |k: usize| rec.get(k).and_then(|s| s.parse::<f64>().ok());
        match (parse(0), parse(1), rec.len()) {
            (Some(x), Some(y), 2) => points.push(Point2::new(x, y)),
            _ if i == 0 => continue,
            _ => {
                return Err(Error::Csv(format!(
                    "{} line {}: expected two numbers",
                    path.display(),
                    i + 1
                )))
            }
        }
    }
    Ok(points)
}

fn hull(ctx: &Context, a: &HullArgs) -> Result<()> {
    let input = required(a.input.clone(), ctx.file.input.clone(), "input")?;
    let r = required(a.r, ctx.file.r, "r")?;
    let oracle = a.oracle || ctx.file.oracle.unwrap_or(false);
    let meta = ctx.announce(json!({"command": "hull", "input": input, "r": r, "oracle": oracle}));
    let points = read_points(&input)?;
    let dp = if oracle { r_hull_oracle(&points, r)? } else { r_hull(&points, r)? };
    let vertices: Vec<[f64; 2]> = dp.vertices().iter().map(|p| [p.x, p.y]).collect();
    let out = json!({
        "r": r,
        "vertices": vertices,
        "f0": dp.f0(),
        "area": dp.area()?,
        "perimeter": dp.perimeter()?,
    });
    ctx.emit_json(meta, object(out))
}

fn caps(ctx: &Context, a: &CapsArgs) -> Result<()> {
    let (spec, body, r) = ctx.body(&a.body)?;
    let theta = required(a.theta, ctx.file.theta, "theta")?;
    let t = required(a.t, ctx.file.t, "t")?;
    let meta = ctx.announce(json!({
        "command": "caps", "body": spec.as_str(), "r": r, "theta": theta, "t": t,
    }));
    let m = cap_measures(&body, theta, t, r)?;
    // reference pair a quarter of the arc either side of the normal direction
    let spread = 0.25 * m.arc_length / r;
    let rp = ReparamPoint { theta, t, phi1: theta - spread, phi2: theta + spread };
    let gap = body.curvature(theta) - 1.0 / r;
    let limit = (gap > 0.0).then(|| (2.0 / gap).sqrt());
    let out = json!({
        "theta": theta,
        "t": t,
        "r": r,
        "area": m.area,
        "arc_length": m.arc_length,
        "t_star": t_star(&body, theta, r)?,
        "curvature": body.curvature(theta),
        "reference": rp,
        "jacobian_closed": phi_jacobian_closed(&body, &rp, r)?,
        "jacobian_fd": phi_jacobian_fd(&body, &rp, r, FD_STEP)?,
        "arc_ratio": limit.map(|k| m.arc_length / t.sqrt() / (2.0 * k)),
        "area_ratio": limit.map(|k| m.area / t.powf(1.5) / (4.0 / 3.0 * k)),
    });
    ctx.emit_json(meta, object(out))
}

fn limits_cmd(ctx: &Context, a: &LimitsArgs) -> Result<()> {
    let (spec, body, r) = ctx.body(&a.body)?;
    let model = ctx.model(&a.model)?;
    let meta = ctx.announce(json!({
        "command": "limits", "body": spec.as_str(), "r": r, "model": model,
    }));
    let c = limits(&body, r, model)?;
    ctx.emit_json(meta, object(to_value(&c)))
}

fn dual_check(ctx: &Context, a: &BodyArgs) -> Result<()> {
    let (spec, body, r) = ctx.body(a)?;
    let meta = ctx.announce(json!({"command": "dual-check", "body": spec.as_str(), "r": r}));
    let report = dual_identity_report(&body, r)?;
    let mut out = json!({
        "identities": report,
        "max_identity": report.max_identity(),
    });
    if let Some(w) = constant_width(&body, WIDTH_TOL).filter(|w| (w - r).abs() <= WIDTH_TOL * r) {
        let rows: Vec<Value> = power_identities(&body, r, &[1.0 / 3.0, 2.0 / 3.0, 2.0])?
            .iter()
            .map(|p| {
                let mut v = to_value(p);
                v["residual"] = ((p.lhs - p.rhs) / p.lhs.abs().max(f64::MIN_POSITIVE)).abs().into();
                v
            })
            .collect();
        out["constant_width"] = json!({"width": w, "power_identities": rows});
    }
    ctx.emit_json(meta, object(out))
}

fn simulate(ctx: &Context, a: &SimulateArgs) -> Result<()> {
    let text = required(a.body.body.clone(), ctx.file.body.clone(), "body")?;
    let spec: BodySpec = text.parse()?;
    let r = required(a.body.r, ctx.file.r, "r")?;
    let model = ctx.model(&a.model)?;
    let n_values = required(a.n_values.clone(), ctx.file.n_values.clone(), "n-values")?;
    let reps = required(a.reps, ctx.file.reps, "reps")?;
    let mut config = ExperimentConfig::new(spec, r, model, n_values, reps, ctx.seed)
        .with_workers(ctx.workers);
    config.output = ctx.out.clone();
    config.validate()?;
    eprintln!("config: {}", json!({"experiment": to_value(&config), "workers": ctx.workers}));
    let rows = mc::run_experiment(&config)?;
    if model == Model::Circumscribed {
        let mismatches: u64 = rows.iter().map(|s| s.f0_mismatches).sum();
        eprintln!("f0 cross-check mismatches: {mismatches}");
    }
    ctx.emit(&to_csv_string(&mc::metadata(&config), &rows)?)
}

fn variance_scan(ctx: &Context, a: &ScanArgs) -> Result<()> {
    let input = required(a.input.clone(), ctx.file.input.clone(), "input")?;
    let names = if a.fields.is_empty() { ctx.file.field.clone().unwrap_or_default() } else { a.fields.clone() };
    let file = std::fs::File::open(&input)
        .map_err(|e| Error::Io(format!("cannot read {}: {e}", input.display())))?;
    let rows = read_csv(file)?;
    if let Some(first) = rows.first() {
        if rows.iter().any(|s| s.model != first.model || s.body != first.body || s.r != first.r) {
            return Err(Error::Config("input mixes runs of different models, bodies or radii".into()));
        }
    }
    let fields: Vec<StatField> = if names.is_empty() {
        let mut f = vec![StatField::VarF0, StatField::VarMissed];
        if rows.iter().all(|s| s.var_perim_diff.is_some()) && !rows.is_empty() {
            f.push(StatField::VarPerimDiff);
        }
        f
    } else {
        names.iter().map(|n| n.parse()).collect::<Result<_>>()?
    };
    let field_names: Vec<&str> = fields.iter().map(|f| f.name()).collect();
    let meta = ctx.announce(json!({"command": "variance-scan", "input": input, "fields": field_names}));
    let fits = fields
        .iter()
        .map(|&f| variance_slope(&rows, f))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Map::new();
    out.insert("rows".into(), rows.len().into());
    out.insert("fits".into(), to_value(&fits));
    ctx.emit_json(meta, out)
}

fn lln(ctx: &Context, a: &LlnArgs) -> Result<()> {
    let (spec, body, r) = ctx.body(&a.body)?;
    let n_max = required(a.n_max, ctx.file.n_max, "n-max")?;
    let meta = ctx.announce(json!({"command": "lln", "body": spec.as_str(), "r": r, "n_max": n_max}));
    let path = mc::lln_trajectory(&body, r, ctx.seed, n_max)?;
    ctx.emit_json(meta, object(to_value(&path)))
}
