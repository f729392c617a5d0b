//! Flag parsing and `key=value` config files.

use srcurv::revolution::{AaHCase, BranchSel, ProfileParams};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Parsed flags: single-valued options plus repeatable `--param`/`--point`.
#[derive(Debug, Default, Clone)]
pub struct Flags {
    single: BTreeMap<String, String>,
    pub params: Vec<String>,
    pub points: Vec<String>,
}

const REPEATABLE: [&str; 2] = ["param", "point"];

impl Flags {
    pub fn parse(argv: &[String], allowed: &[&str]) -> Result<Flags, UsageError> {
        let mut flags = Flags::default();
        let mut i = 0;
        while i < argv.len() {
            let arg = &argv[i];
            let Some(name) = arg.strip_prefix("--") else {
                return Err(UsageError(format!("unexpected argument `{arg}`")));
            };
            if name == "off-surface" {
                // boolean flag
                if !allowed.contains(&name) {
                    return Err(UsageError(format!("unknown flag `--{name}`")));
                }
                flags.single.insert(name.to_string(), "true".to_string());
                i += 1;
                continue;
            }
            if !allowed.contains(&name) && !REPEATABLE.contains(&name) && name != "config" {
                return Err(UsageError(format!("unknown flag `--{name}`")));
            }
            let Some(value) = argv.get(i + 1) else {
                return Err(UsageError(format!("flag `--{name}` needs a value")));
            };
            i += 2;
            match name {
                "config" => flags.load_config(value)?,
                "param" => flags.params.push(value.clone()),
                "point" => flags.points.push(value.clone()),
                _ => {
                    flags.single.insert(name.to_string(), value.clone());
                }
            }
        }
        Ok(flags)
    }

    /// Config files hold `key=value` lines mirroring the flags; `#` starts a
    /// comment.  Values from the command line override the file; repeatable
    /// keys accumulate.
    fn load_config(&mut self, path: &str) -> Result<(), UsageError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("cannot read config `{path}`: {e}")))?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(UsageError(format!(
                    "{path}:{}: expected key=value, got `{line}`",
                    lineno + 1
                )));
            };
            let (key, value) = (key.trim(), value.trim());
            match key {
                "param" => self.params.push(value.to_string()),
                "point" => self.points.push(value.to_string()),
                _ => {
                    // command-line values win
                    self.single
                        .entry(key.to_string())
                        .or_insert_with(|| value.to_string());
                }
            }
        }
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.single.get(name).map(String::as_str)
    }

    pub fn require(&self, name: &str) -> Result<&str, UsageError> {
        self.get(name)
            .ok_or_else(|| UsageError(format!("missing required flag `--{name}`")))
    }

    pub fn get_f64(&self, name: &str) -> Result<Option<f64>, UsageError> {
        match self.get(name) {
            None => Ok(None),
            Some(s) => s
                .parse::<f64>()
                .map(Some)
                .map_err(|_| UsageError(format!("flag `--{name}`: `{s}` is not a number"))),
        }
    }

    pub fn require_f64(&self, name: &str) -> Result<f64, UsageError> {
        self.get_f64(name)?
            .ok_or_else(|| UsageError(format!("missing required flag `--{name}`")))
    }

    pub fn get_usize(&self, name: &str, default: usize) -> Result<usize, UsageError> {
        match self.get(name) {
            None => Ok(default),
            Some(s) => s
                .parse::<usize>()
                .map_err(|_| UsageError(format!("flag `--{name}`: `{s}` is not a count"))),
        }
    }

    /// `a,b` pair.
    pub fn require_range(&self, name: &str) -> Result<(f64, f64), UsageError> {
        let raw = self.require(name)?;
        let parts: Vec<&str> = raw.split(',').collect();
        if parts.len() != 2 {
            return Err(UsageError(format!(
                "flag `--{name}` expects `a,b`, got `{raw}`"
            )));
        }
        let a = parts[0]
            .trim()
            .parse::<f64>()
            .map_err(|_| UsageError(format!("flag `--{name}`: bad number `{}`", parts[0])))?;
        let b = parts[1]
            .trim()
            .parse::<f64>()
            .map_err(|_| UsageError(format!("flag `--{name}`: bad number `{}`", parts[1])))?;
        Ok((a, b))
    }

    /// Collected `--param k=v` pairs as branch parameters.
    pub fn profile_params(&self) -> Result<ProfileParams, UsageError> {
        let mut params = ProfileParams::new();
        for raw in &self.params {
            let Some((key, value)) = raw.split_once('=') else {
                return Err(UsageError(format!(
                    "--param expects `key=value`, got `{raw}`"
                )));
            };
            let (key, value) = (key.trim(), value.trim());
            match key {
                "branch" => {
                    params.branch =
                        BranchSel::from_name(value).map_err(|e| UsageError(e.to_string()))?;
                }
                "case" => {
                    params.case =
                        Some(AaHCase::from_name(value).map_err(|e| UsageError(e.to_string()))?);
                }
                _ => {
                    let num = value.parse::<f64>().map_err(|_| {
                        UsageError(format!("--param {key}: `{value}` is not a number"))
                    })?;
                    params.set(key, num);
                }
            }
        }
        Ok(params)
    }
}

pub fn parse_point(raw: &str) -> Result<[f64; 3], UsageError> {
    let parts: Vec<&str> = raw.split(',').collect();
    if parts.len() != 3 {
        return Err(UsageError(format!(
            "point `{raw}` must have three comma-separated coordinates"
        )));
    }
    let mut p = [0.0; 3];
    for (slot, part) in p.iter_mut().zip(&parts) {
        let v: f64 = part
            .trim()
            .parse()
            .map_err(|_| UsageError(format!("bad coordinate `{part}` in `{raw}`")))?;
        if !v.is_finite() {
            return Err(UsageError(format!("coordinate `{part}` is not finite")));
        }
        *slot = v;
    }
    Ok(p)
}

pub fn parse_eps_list(raw: &str) -> Result<Vec<f64>, UsageError> {
    let mut out = Vec::new();
    for part in raw.split(',') {
        let v: f64 = part
            .trim()
            .parse()
            .map_err(|_| UsageError(format!("bad eps value `{part}`")))?;
        if !(v > 0.0) {
            return Err(UsageError(format!(
                "eps values must be positive, got `{part}`"
            )));
        }
        out.push(v);
    }
    if out.is_empty() {
        return Err(UsageError("empty eps list".to_string()));
    }
    Ok(out)
}

/// Worker count: `--threads`, then `SRC_CURV_THREADS`, then the hardware.
pub fn thread_count(flags: &Flags) -> Result<usize, UsageError> {
    if let Some(n) = flags.get("threads") {
        return n
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| UsageError(format!("bad thread count `{n}`")));
    }
    if let Ok(n) = std::env::var("SRC_CURV_THREADS") {
        if let Ok(n) = n.parse::<usize>() {
            if n > 0 {
                return Ok(n);
            }
        }
    }
    Ok(std::thread::available_parallelism()
        .map(usize::from)
        .unwrap_or(1))
}
