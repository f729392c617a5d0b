//! The five subcommands.

use crate::args::{parse_eps_list, parse_point, thread_count, Flags, UsageError};
use crate::output::{num, write_out, ObjMesh};
use srcurv::approx::{limit_table, DEFAULT_EPS_LIST};
use srcurv::expr;
use srcurv::groups::{builtin_model, BuiltinModel, GroupModel};
use srcurv::jets::ScalarField;
use srcurv::revolution::{
    const_curvature_profile, model_surface_by_name, CurvKind, Grid, ModelSurface, ProfileCurve,
    RevolutionGroup,
};
use srcurv::surface::{curvatures, curvatures_off_surface, CurvatureReport, SurfaceError};
use srcurv::Point;
use std::io::Write;

/// Evaluation failures map to exit 2; usage problems to exit 1.
enum CmdError {
    Usage(String),
    Eval(String),
}

impl From<UsageError> for CmdError {
    fn from(e: UsageError) -> Self {
        CmdError::Usage(e.0)
    }
}

impl From<SurfaceError> for CmdError {
    fn from(e: SurfaceError) -> Self {
        CmdError::Eval(e.to_string())
    }
}

impl From<srcurv::revolution::RevolutionError> for CmdError {
    fn from(e: srcurv::revolution::RevolutionError) -> Self {
        use srcurv::revolution::RevolutionError as R;
        match &e {
            R::InvalidParams(_) | R::UnknownFamily(_) => CmdError::Usage(e.to_string()),
            _ => CmdError::Eval(e.to_string()),
        }
    }
}

fn finish(result: Result<(), CmdError>, err: &mut dyn Write) -> i32 {
    match result {
        Ok(()) => 0,
        Err(CmdError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            let _ = writeln!(err, "run `src-curv --help` for usage");
            1
        }
        Err(CmdError::Eval(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn group_model(flags: &Flags) -> Result<GroupModel, CmdError> {
    let name = flags.require("group")?;
    let which = BuiltinModel::from_name(name).map_err(|e| CmdError::Usage(e.to_string()))?;
    Ok(builtin_model(which))
}

/// The surface source: exactly one of `--surface` or `--family`.
fn surface_field(flags: &Flags, model: &GroupModel) -> Result<ScalarField, CmdError> {
    match (flags.get("surface"), flags.get("family")) {
        (Some(_), Some(_)) => Err(CmdError::Usage(
            "give either --surface or --family, not both".into(),
        )),
        (Some(text), None) => {
            let ast = expr::parse(text, model.chart())
                .map_err(|e| CmdError::Usage(format!("--surface: {e}")))?;
            Ok(expr::field_from_ast(&ast, model.chart()))
        }
        (None, Some(name)) => {
            let surface = model_surface_by_name(name, &flags.profile_params()?)?;
            let field = surface.implicit.ok_or_else(|| {
                CmdError::Usage(format!(
                    "family `{name}` has no implicit representation; it is patch-only"
                ))
            })?;
            if field.chart() != model.chart() {
                return Err(CmdError::Usage(format!(
                    "family `{name}` lives on chart {:?}, group uses {:?}",
                    field.chart(),
                    model.chart()
                )));
            }
            Ok(field)
        }
        (None, None) => Err(CmdError::Usage(
            "a surface is required: --surface EXPR or --family NAME".into(),
        )),
    }
}

fn gather_points(flags: &Flags) -> Result<Vec<Point>, CmdError> {
    let mut points = Vec::new();
    if let Some(path) = flags.get("points") {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CmdError::Usage(format!("cannot read points file `{path}`: {e}")))?;
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() || line.starts_with("x1") {
                continue;
            }
            points.push(parse_point(line)?);
        }
    }
    for raw in &flags.points {
        points.push(parse_point(raw)?);
    }
    if points.is_empty() {
        return Err(CmdError::Usage(
            "no points given (--points FILE or --point x,y,z)".into(),
        ));
    }
    Ok(points)
}

/// Per-point curvature reports over a worker pool, results in input order.
fn evaluate_points(
    model: &GroupModel,
    field: &ScalarField,
    points: &[Point],
    off_surface: bool,
    workers: usize,
) -> Vec<Result<CurvatureReport, SurfaceError>> {
    let n = points.len();
    let workers = workers.max(1).min(n.max(1));
    let mut results: Vec<Option<Result<CurvatureReport, SurfaceError>>> = vec![None; n];
    let chunk = n.div_ceil(workers);
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for (w, slice) in points.chunks(chunk).enumerate() {
            let start = w * chunk;
            handles.push(scope.spawn(move || {
                let mut local = Vec::with_capacity(slice.len());
                for (i, &p) in slice.iter().enumerate() {
                    let report = if off_surface {
                        curvatures_off_surface(model, field, p)
                    } else {
                        curvatures(model, field, p)
                    };
                    local.push((start + i, report));
                }
                local
            }));
        }
        for handle in handles {
            for (idx, report) in handle.join().expect("worker panicked") {
                results[idx] = Some(report);
            }
        }
    });
    results
        .into_iter()
        .map(|r| r.expect("all filled"))
        .collect()
}

pub fn curvature(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = (|| -> Result<(), CmdError> {
        let flags = Flags::parse(
            argv,
            &[
                "group",
                "surface",
                "family",
                "points",
                "out",
                "off-surface",
                "threads",
            ],
        )?;
        let model = group_model(&flags)?;
        let field = surface_field(&flags, &model)?;
        let points = gather_points(&flags)?;
        let out_path = flags.require("out")?;
        let off_surface = flags.get("off-surface").is_some();
        let workers = thread_count(&flags)?;

        let reports = evaluate_points(&model, &field, &points, off_surface, workers);
        // the first failing point (in input order) aborts the run; the
        // error text carries the point coordinates
        for report in &reports {
            if let Err(e) = report {
                return Err(CmdError::Eval(e.to_string()));
            }
        }
        let mut csv = String::from("x1,x2,x3,l,Tu,K_h,H_h,Q_h,characteristic\n");
        for (p, report) in points.iter().zip(&reports) {
            let r = report.as_ref().unwrap();
            csv.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                num(p[0]),
                num(p[1]),
                num(p[2]),
                num(r.horizontal.l),
                num(r.horizontal.tu),
                num(r.k_h),
                num(r.h_h),
                num(r.q_h),
                r.horizontal.characteristic
            ));
        }
        write_out(out_path, &csv, out).map_err(|e| CmdError::Usage(e.to_string()))?;
        Ok(())
    })();
    finish(result, err)
}

fn build_profile(flags: &Flags) -> Result<(ProfileCurve, RevolutionGroup), CmdError> {
    let group = RevolutionGroup::from_name(flags.require("group")?)
        .map_err(|e| CmdError::Usage(e.to_string()))?;
    let kind =
        CurvKind::from_name(flags.require("kind")?).map_err(|e| CmdError::Usage(e.to_string()))?;
    let target = flags.require_f64("target")?;
    let params = flags.profile_params()?;
    let (a, b) = flags.require_range("range")?;
    let n = flags.get_usize("samples", 101)?;
    let profile = const_curvature_profile(group, kind, target, &params, Grid::new(a, b, n))?;
    Ok((profile, group))
}

pub fn profile(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = (|| -> Result<(), CmdError> {
        let flags = Flags::parse(
            argv,
            &["group", "kind", "target", "range", "samples", "out"],
        )?;
        let (profile, _) = build_profile(&flags)?;
        let out_path = flags.require("out")?;
        let mut csv = String::from("s,f,fprime,K,H,Q,residual\n");
        for sample in &profile.samples {
            let (k, h, q) = profile.curvatures_at(sample.s)?;
            let value = match profile.kind {
                CurvKind::K => k,
                CurvKind::H => h,
                CurvKind::Q => q,
            };
            csv.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                num(sample.s),
                num(sample.f),
                num(sample.fprime),
                num(k),
                num(h),
                num(q),
                num((value - profile.target).abs())
            ));
        }
        write_out(out_path, &csv, out).map_err(|e| CmdError::Usage(e.to_string()))?;
        Ok(())
    })();
    finish(result, err)
}

pub fn mesh(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = (|| -> Result<(), CmdError> {
        let flags = Flags::parse(
            argv,
            &[
                "family", "group", "kind", "target", "range", "samples", "angular", "lrange", "out",
            ],
        )?;
        let out_path = flags.require("out")?;
        let angular = flags.get_usize("angular", 48)?.max(3);
        let samples = flags.get_usize("samples", 48)?.max(2);

        let mesh = if let Some(name) = flags.get("family") {
            let surface = model_surface_by_name(name, &flags.profile_params()?)?;
            mesh_family(&surface, samples, angular)?
        } else if flags.get("group").is_some() {
            let (profile, group) = build_profile(&flags)?;
            match group {
                RevolutionGroup::Heisenberg => mesh_revolved_profile(&profile, angular),
                RevolutionGroup::AffineAdditive => {
                    let lrange = if flags.get("lrange").is_some() {
                        flags.require_range("lrange")?
                    } else {
                        (0.5, 2.5)
                    };
                    mesh_scaling_profile(&profile, lrange, angular)
                }
            }
        } else {
            return Err(CmdError::Usage(
                "mesh needs --family NAME or a profile specification (--group/--kind/--target/--range)"
                    .into(),
            ));
        };
        write_out(out_path, &mesh.to_obj(), out).map_err(|e| CmdError::Usage(e.to_string()))?;
        Ok(())
    })();
    finish(result, err)
}

/// Patch families grid `(s, phi)`; revolution families revolve their profile.
fn mesh_family(
    surface: &ModelSurface,
    samples: usize,
    angular: usize,
) -> Result<ObjMesh, CmdError> {
    if let Some(patch) = &surface.patch {
        let mut mesh = ObjMesh::new();
        let (s_lo, s_hi) = patch.s_range;
        let (p_lo, p_hi) = patch.phi_range;
        let inset = 0.01 * (s_hi - s_lo);
        let mut grid = vec![vec![0usize; angular]; samples];
        for (i, row) in grid.iter_mut().enumerate() {
            let s = s_lo + inset + (s_hi - s_lo - 2.0 * inset) * i as f64 / (samples - 1) as f64;
            for (j, slot) in row.iter_mut().enumerate() {
                let phi = p_lo + (p_hi - p_lo) * j as f64 / angular as f64;
                *slot = mesh.vertex(patch.at(s, phi));
            }
        }
        for i in 0..samples - 1 {
            for j in 0..angular {
                let jn = (j + 1) % angular;
                mesh.quad(
                    [grid[i][j], grid[i][jn], grid[i + 1][jn], grid[i + 1][j]],
                    None,
                );
            }
        }
        return Ok(mesh);
    }
    if let Some((lo, hi)) = surface.profile_range {
        let mut mesh = ObjMesh::new();
        let inset = 0.02 * (hi - lo);
        let mut grid = vec![vec![0usize; angular]; samples];
        let mut fprimes = vec![0.0; samples];
        let mut radii = vec![0.0; samples];
        for (i, row) in grid.iter_mut().enumerate() {
            let r = lo + inset + (hi - lo - 2.0 * inset) * i as f64 / (samples - 1) as f64;
            let jet = surface
                .profile_at(r)
                .expect("profile present")
                .map_err(CmdError::from)?;
            fprimes[i] = jet.fprime;
            radii[i] = jet.radius;
            for (j, slot) in row.iter_mut().enumerate() {
                let th = 2.0 * std::f64::consts::PI * j as f64 / angular as f64;
                *slot = mesh.vertex([jet.radius * th.cos(), jet.radius * th.sin(), jet.f]);
            }
        }
        for i in 0..samples - 1 {
            for j in 0..angular {
                let jn = (j + 1) % angular;
                // outward along the defining gradient of the graph t = f(r)
                let th = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / angular as f64;
                let fp = 0.5 * (fprimes[i] + fprimes[i + 1]);
                let dir = [-fp * th.cos(), -fp * th.sin(), 1.0];
                mesh.quad(
                    [grid[i][j], grid[i][jn], grid[i + 1][jn], grid[i + 1][j]],
                    Some(dir),
                );
            }
        }
        return Ok(mesh);
    }
    Err(CmdError::Usage(
        "family has neither a patch nor a revolution profile to mesh".into(),
    ))
}

/// Heisenberg profiles revolve as `(r cos th, r sin th, f(r))`.
fn mesh_revolved_profile(profile: &ProfileCurve, angular: usize) -> ObjMesh {
    let mut mesh = ObjMesh::new();
    let rows = profile.samples.len();
    let mut grid = vec![vec![0usize; angular]; rows];
    for (i, sample) in profile.samples.iter().enumerate() {
        for (j, slot) in grid[i].iter_mut().enumerate() {
            let th = 2.0 * std::f64::consts::PI * j as f64 / angular as f64;
            *slot = mesh.vertex([sample.s * th.cos(), sample.s * th.sin(), sample.f]);
        }
    }
    for i in 0..rows - 1 {
        for j in 0..angular {
            let jn = (j + 1) % angular;
            // outward along the defining gradient of the graph t = f(r)
            let th = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / angular as f64;
            let fp = 0.5 * (profile.samples[i].fprime + profile.samples[i + 1].fprime);
            let dir = [-fp * th.cos(), -fp * th.sin(), 1.0];
            mesh.quad(
                [grid[i][j], grid[i][jn], grid[i + 1][jn], grid[i + 1][j]],
                Some(dir),
            );
        }
    }
    mesh
}

/// Scaling-invariant graphs grid `(rho, lambda)` and emit `(f(rho), lambda,
/// rho lambda)`: the symmetry is the scaling action, not a rotation.
fn mesh_scaling_profile(
    profile: &ProfileCurve,
    lrange: (f64, f64),
    lambda_steps: usize,
) -> ObjMesh {
    let mut mesh = ObjMesh::new();
    let rows = profile.samples.len();
    let cols = lambda_steps.max(2);
    let mut grid = vec![vec![0usize; cols]; rows];
    for (i, sample) in profile.samples.iter().enumerate() {
        for (j, slot) in grid[i].iter_mut().enumerate() {
            let lam = lrange.0 + (lrange.1 - lrange.0) * j as f64 / (cols - 1) as f64;
            *slot = mesh.vertex([sample.f, lam, sample.s * lam]);
        }
    }
    for i in 0..rows - 1 {
        for j in 0..cols - 1 {
            mesh.quad(
                [
                    grid[i][j],
                    grid[i][j + 1],
                    grid[i + 1][j + 1],
                    grid[i + 1][j],
                ],
                None,
            );
        }
    }
    mesh
}

pub fn approx(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = (|| -> Result<(), CmdError> {
        let flags = Flags::parse(argv, &["group", "surface", "family", "eps", "out"])?;
        let model = group_model(&flags)?;
        let field = surface_field(&flags, &model)?;
        let out_path = flags.require("out")?;
        if flags.points.len() != 1 {
            return Err(CmdError::Usage(
                "approx needs exactly one --point x,y,z".into(),
            ));
        }
        let point = parse_point(&flags.points[0])?;
        let eps_list = match flags.get("eps") {
            Some(raw) => parse_eps_list(raw)?,
            None => DEFAULT_EPS_LIST.to_vec(),
        };
        let table = limit_table(&model, &field, point, &eps_list)?;
        let mut csv =
            String::from("eps,H_eps,K_eps_sigma,A1,A3,l_eps,rbar_eps,rbar_over_eps_leps\n");
        for row in &table.rows {
            csv.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                num(row.eps),
                num(row.h_eps),
                num(row.k_eps_sigma),
                num(row.a1),
                num(row.a3),
                num(row.l_eps),
                num(row.rbar_eps),
                num(row.rbar_over_eps_leps)
            ));
        }
        csv.push_str(&format!("# H_limit = {}\n", num(table.h_limit)));
        csv.push_str(&format!("# K_limit = {}\n", num(table.k_limit)));
        csv.push_str(&format!("# H_error_order = {}\n", num(table.h_slope)));
        csv.push_str(&format!("# K_error_order = {}\n", num(table.k_slope)));
        write_out(out_path, &csv, out).map_err(|e| CmdError::Usage(e.to_string()))?;
        Ok(())
    })();
    finish(result, err)
}

pub fn verify(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if !argv.is_empty() {
        let _ = writeln!(err, "verify takes no flags");
        return 1;
    }
    let mut outcomes = srcurv::verify::run_all();
    outcomes.push(cli_examples_outcome());
    let mut all = true;
    for o in &outcomes {
        let status = if o.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "[{:>3}] {:<52} {}  {}",
            format!("{}", o.id),
            o.name,
            status,
            o.details
        );
        all &= o.passed;
    }
    let _ = writeln!(
        out,
        "{}",
        if all {
            "all criteria passed"
        } else {
            "some criteria failed (see lines above)"
        }
    );
    if all {
        0
    } else {
        1
    }
}

/// The three documented command-line invocations, run in-process.
fn cli_examples_outcome() -> srcurv::verify::CriterionOutcome {
    let mut failures: Vec<String> = Vec::new();

    // flat plane: one row with K = -2, H = 0, Q = -1
    let mut out = Vec::new();
    let mut err = Vec::new();
    let args: Vec<String> = [
        "curvature",
        "--group",
        "heis",
        "--surface",
        "t",
        "--point",
        "1,0,0",
        "--out",
        "-",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let code = crate::run_cli_io(&args, &mut out, &mut err);
    if code != 0 {
        failures.push(format!("plane example exited {code}"));
    } else {
        let text = String::from_utf8_lossy(&out);
        match text.lines().nth(1) {
            Some(row) => {
                let cols: Vec<f64> = row
                    .split(',')
                    .take(8)
                    .filter_map(|c| c.parse::<f64>().ok())
                    .collect();
                if cols.len() < 8
                    || (cols[5] + 2.0).abs() > 1e-10
                    || cols[6].abs() > 1e-10
                    || (cols[7] + 1.0).abs() > 1e-10
                {
                    failures.push(format!("plane example row unexpected: {row}"));
                }
            }
            None => failures.push("plane example produced no data row".into()),
        }
    }

    // partial branch profile: finite residual column below 1e-10
    let tmp = std::env::temp_dir().join(format!("src_curv_verify_{}.csv", std::process::id()));
    let tmp_str = tmp.to_string_lossy().to_string();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let args: Vec<String> = [
        "profile",
        "--group",
        "aa",
        "--kind",
        "K",
        "--target",
        "-4",
        "--param",
        "branch=partial",
        "--range",
        "-2,2",
        "--samples",
        "101",
        "--out",
        &tmp_str,
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let code = crate::run_cli_io(&args, &mut out, &mut err);
    if code != 0 {
        failures.push(format!(
            "profile example exited {code}: {}",
            String::from_utf8_lossy(&err)
        ));
    } else {
        match std::fs::read_to_string(&tmp) {
            Ok(text) => {
                let mut rows = 0;
                for line in text.lines().skip(1) {
                    if let Some(res) = line.split(',').nth(6) {
                        let res: f64 = res.parse().unwrap_or(f64::NAN);
                        if !(res < 1e-10) {
                            failures.push(format!("profile residual {res:.3e} >= 1e-10"));
                            break;
                        }
                        rows += 1;
                    }
                }
                if rows != 101 {
                    failures.push(format!("profile example wrote {rows} rows, expected 101"));
                }
            }
            Err(e) => failures.push(format!("cannot read profile output: {e}")),
        }
        let _ = std::fs::remove_file(&tmp);
    }

    // characteristic point: exit 2 with the point named
    let mut out = Vec::new();
    let mut err = Vec::new();
    let args: Vec<String> = [
        "curvature",
        "--group",
        "heis",
        "--surface",
        "t",
        "--point",
        "0,0,0",
        "--out",
        "-",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let code = crate::run_cli_io(&args, &mut out, &mut err);
    let msg = String::from_utf8_lossy(&err);
    if code != 2 {
        failures.push(format!("characteristic example exited {code}, expected 2"));
    } else if !msg.contains("characteristic point at (0,0,0)") {
        failures.push(format!("characteristic message unexpected: {}", msg.trim()));
    }

    srcurv::verify::CriterionOutcome {
        id: 13,
        name: "command-line examples",
        passed: failures.is_empty(),
        details: if failures.is_empty() {
            "plane row, partial-branch profile, characteristic exit code".into()
        } else {
            failures.join("; ")
        },
    }
}
