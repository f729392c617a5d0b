//! Command-line front end: curvature evaluation over point sets, profile
//! generation, mesh export, convergence studies and the built-in
//! verification suite.
//!
//! Exit codes: `0` success, `1` usage error, `2` domain or characteristic
//! failure during evaluation.

mod args;
mod commands;
mod output;

use std::io::Write;

pub const USAGE: &str = "\
src-curv: horizontal curvatures of implicit surfaces in 3D contact sub-Riemannian Lie groups

USAGE:
  src-curv curvature --group G (--surface EXPR | --family NAME --param k=v ...)
                     (--points FILE | --point x,y,z ...) [--off-surface]
                     [--threads N] --out FILE
  src-curv profile   --group G --kind K|H|Q --target VALUE [--param k=v ...]
                     --range a,b --samples N --out FILE
  src-curv mesh      (--family NAME --param k=v ... | --group G --kind K|H|Q
                     --target VALUE [--param k=v ...] --range a,b --samples N)
                     --angular N [--lrange a,b] --out FILE.obj
  src-curv approx    --group G (--surface EXPR | --family NAME --param k=v ...)
                     --point x,y,z [--eps e1,e2,...] --out FILE
  src-curv verify

Groups: heis (chart x,y,t), aa (chart a,l,t), aa_rho (chart a,l,rho).
Surface families: heis_plane_nonvertical, heis_plane_vertical, heis_quadric_2xy,
  heis_cylinder, koranyi, bubble, cc_sphere_heis, aa_plane, aa_hyperbolic_plane,
  aa_cylinder_circle, aa_cylinder_line, flask_patch, cc_sphere_aa_patch.
Common flags: --config FILE (key=value lines, `#` comments; flags override),
  --out - (standard output).  SRC_CURV_THREADS overrides the worker count.
";

/// Runs the CLI against `argv` (without the program name), writing to the
/// given streams; returns the process exit code.
pub fn run_cli_io(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match argv.first().map(String::as_str) {
        Some("curvature") => commands::curvature(&argv[1..], out, err),
        Some("profile") => commands::profile(&argv[1..], out, err),
        Some("mesh") => commands::mesh(&argv[1..], out, err),
        Some("approx") => commands::approx(&argv[1..], out, err),
        Some("verify") => commands::verify(&argv[1..], out, err),
        Some("--help") | Some("-h") | Some("help") => {
            let _ = out.write_all(USAGE.as_bytes());
            0
        }
        Some(other) => {
            let _ = writeln!(err, "unknown subcommand `{other}`\n\n{USAGE}");
            1
        }
        None => {
            let _ = writeln!(err, "{USAGE}");
            1
        }
    }
}

/// Entry point used by the binary.
pub fn run_cli(argv: &[String]) -> i32 {
    let mut out = std::io::stdout();
    let mut err = std::io::stderr();
    run_cli_io(argv, &mut out, &mut err)
}
