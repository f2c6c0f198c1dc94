//! Run configuration: per-subcommand defaults, a flat key=value file, and flag overrides.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::ValueEnum;
use fourprimes_core::asymptotics::DEFAULT_STEP;
use fourprimes_core::circle::LemmaKind;
use fourprimes_core::DEFAULT_SIGMA;
use serde::Serialize;
use serde_json::Value;

use crate::cli::{CoefficientKind, Command, Flags, Format};
use crate::error::CliError;

/// Fully resolved configuration, echoed in every report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Config {
    pub sigma: f64,
    #[serde(rename = "P")]
    pub p: f64,
    #[serde(rename = "N")]
    pub n: f64,
    pub tol: f64,
    pub buchstab_h: f64,
    pub pmax: u64,
    pub qmax: u64,
    pub seed: u64,
    pub jobs: usize,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub samples: usize,
    pub targets: Vec<u64>,
    pub points: Vec<f64>,
    pub gamma: f64,
    pub j: usize,
    pub counts: bool,
    #[serde(rename = "restrict_I")]
    pub restrict_i: bool,
    pub lemma: LemmaKind,
    #[serde(rename = "X")]
    pub x: u64,
    #[serde(rename = "R")]
    pub r: Option<f64>,
    #[serde(rename = "S")]
    pub s: Option<f64>,
    #[serde(rename = "U")]
    pub u: Option<f64>,
    #[serde(rename = "Z")]
    pub z: Option<f64>,
    pub coefficients: CoefficientKind,
    pub exceptions: Option<PathBuf>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, CliError>
where
    T::Err: std::fmt::Display,
{
    value.parse().map_err(|e| usage(format!("invalid value {value:?} for {key}: {e}")))
}

fn parse_list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>, CliError>
where
    T::Err: std::fmt::Display,
{
    value.split(',').map(str::trim).filter(|s| !s.is_empty()).map(|s| parse(key, s)).collect()
}

fn parse_enum<T: ValueEnum>(key: &str, value: &str) -> Result<T, CliError> {
    T::from_str(value, true).map_err(|e| usage(format!("invalid value {value:?} for {key}: {e}")))
}

impl Flags {
    /// Set one option from its textual key and value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let key = key.trim().replace('-', "_");
        let k = key.as_str();
        let v = value.trim();
        match k {
            "sigma" => self.sigma = Some(parse(k, v)?),
            "P" => self.p = Some(parse(k, v)?),
            "N" => self.n = Some(parse(k, v)?),
            "tol" => self.tol = Some(parse(k, v)?),
            "buchstab_h" => self.buchstab_h = Some(parse(k, v)?),
            "pmax" => self.pmax = Some(parse(k, v)?),
            "qmax" => self.qmax = Some(parse(k, v)?),
            "seed" => self.seed = Some(parse(k, v)?),
            "jobs" => self.jobs = Some(parse(k, v)?),
            "output" => self.output = Some(PathBuf::from(v)),
            "format" => self.format = Some(parse_enum(k, v)?),
            "samples" => self.samples = Some(parse(k, v)?),
            "targets" => self.targets = Some(parse_list(k, v)?),
            "points" => self.points = Some(parse_list(k, v)?),
            "gamma" => self.gamma = Some(parse(k, v)?),
            "j" => self.j = Some(parse(k, v)?),
            "counts" => self.counts = Some(parse(k, v)?),
            "restrict_I" => self.restrict_i = Some(parse(k, v)?),
            "lemma" => self.lemma = Some(parse(k, v)?),
            "X" => self.x = Some(parse(k, v)?),
            "R" => self.r = Some(parse(k, v)?),
            "S" => self.s = Some(parse(k, v)?),
            "U" => self.u = Some(parse(k, v)?),
            "Z" => self.z = Some(parse(k, v)?),
            "coefficients" => self.coefficients = Some(parse_enum(k, v)?),
            "exceptions" => self.exceptions = Some(PathBuf::from(v)),
            _ => return Err(usage(format!("unknown configuration key {key:?}"))),
        }
        Ok(())
    }

    /// Options from `text`: `key=value` lines with `#` comments, or the `config`
    /// object of a JSON report.
    pub fn parse_text(text: &str) -> Result<Flags, CliError> {
        let mut flags = Flags::default();
        if text.trim_start().starts_with('{') {
            let doc: Value = serde_json::from_str(text)?;
            let obj = doc
                .get("config")
                .unwrap_or(&doc)
                .as_object()
                .ok_or_else(|| usage("JSON configuration must be an object"))?;
            for (key, value) in obj {
                let text = match value {
                    Value::Null => continue,
                    Value::String(s) => s.clone(),
                    Value::Array(items) => items.iter().map(Value::to_string).collect::<Vec<_>>().join(","),
                    other => other.to_string(),
                };
                flags.set(key, &text)?;
            }
        } else {
            for (i, raw) in text.lines().enumerate() {
                let line = raw.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let (key, value) = line
                    .split_once('=')
                    .ok_or_else(|| usage(format!("config line {}: expected key=value, got {raw:?}", i + 1)))?;
                flags.set(key, value)?;
            }
        }
        Ok(flags)
    }

    pub fn read(path: &Path) -> Result<Flags, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path.display(), e))?;
        Flags::parse_text(&text)
    }

    /// `self` takes precedence; P and N are overridden together since each determines the other.
    pub fn over(self, base: Flags) -> Flags {
        let size_given = self.p.is_some() || self.n.is_some();
        let (p, n) = if size_given { (self.p, self.n) } else { (base.p, base.n) };
        Flags {
            config: self.config,
            sigma: self.sigma.or(base.sigma),
            p,
            n,
            tol: self.tol.or(base.tol),
            buchstab_h: self.buchstab_h.or(base.buchstab_h),
            pmax: self.pmax.or(base.pmax),
            qmax: self.qmax.or(base.qmax),
            seed: self.seed.or(base.seed),
            jobs: self.jobs.or(base.jobs),
            output: self.output.or(base.output),
            format: self.format.or(base.format),
            samples: self.samples.or(base.samples),
            targets: self.targets.or(base.targets),
            points: self.points.or(base.points),
            gamma: self.gamma.or(base.gamma),
            j: self.j.or(base.j),
            counts: self.counts.or(base.counts),
            restrict_i: self.restrict_i.or(base.restrict_i),
            lemma: self.lemma.or(base.lemma),
            x: self.x.or(base.x),
            r: self.r.or(base.r),
            s: self.s.or(base.s),
            u: self.u.or(base.u),
            z: self.z.or(base.z),
            coefficients: self.coefficients.or(base.coefficients),
            exceptions: self.exceptions.or(base.exceptions),
        }
    }
}

struct Defaults {
    p: Option<f64>,
    n: Option<f64>,
    tol: f64,
    pmax: u64,
    qmax: u64,
    samples: usize,
    targets: Vec<u64>,
}

fn defaults(cmd: Command) -> Defaults {
    let base = Defaults {
        p: Some(1e6),
        n: None,
        tol: 1e-7,
        pmax: 500,
        qmax: 500,
        samples: 10,
        targets: Vec::new(),
    };
    match cmd {
        Command::Constants => Defaults { tol: 2e-3, ..base },
        Command::VerifyDecomposition => Defaults { samples: 10_000, ..base },
        Command::Scan => Defaults { p: None, n: Some(1e6), ..base },
        Command::SingularSeries => Defaults { targets: vec![100, 148, 1012], ..base },
        Command::SingularIntegral => Defaults { tol: 1e-9, samples: 20, ..base },
        Command::ScanMinor => Defaults { p: Some(4096.0), samples: 1000, ..base },
        Command::Lemma => Defaults { samples: 100, ..base },
        Command::CompareMainTerm => Defaults { p: None, n: Some(1e8), pmax: 1000, qmax: 100, ..base },
    }
}

fn positive(name: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(usage(format!("{name} = {v} must be a positive finite number")))
    }
}

impl Config {
    /// Apply the subcommand's defaults to `f` and validate.
    pub fn resolve(cmd: Command, f: Flags) -> Result<Config, CliError> {
        let d = defaults(cmd);
        let sigma = f.sigma.unwrap_or(DEFAULT_SIGMA);
        if !(sigma > 0.15 && sigma < 1.0 / 6.0) {
            return Err(usage(format!("sigma = {sigma} is outside the admissible range (3/20, 1/6)")));
        }
        let from_p = |p: f64| (p, (1.5 * p).powi(2));
        let from_n = |n: f64| (2.0 / 3.0 * n.sqrt(), n);
        let (p, n) = match (f.p, f.n) {
            (Some(p), None) => from_p(p),
            (None, Some(n)) => from_n(n),
            (Some(p), Some(n)) => {
                if ((1.5 * p).powi(2) - n).abs() > 1e-9 * n {
                    return Err(usage(format!("P = {p} and N = {n} disagree; N must equal (3P/2)²")));
                }
                (p, n)
            }
            (None, None) => match (d.p, d.n) {
                (Some(p), _) => from_p(p),
                (None, Some(n)) => from_n(n),
                (None, None) => unreachable!("every subcommand has a default size"),
            },
        };
        positive("P", p)?;
        positive("N", n)?;
        let tol = positive("tol", f.tol.unwrap_or(d.tol))?;
        let buchstab_h = positive("buchstab_h", f.buchstab_h.unwrap_or(DEFAULT_STEP))?;
        let gamma = positive("gamma", f.gamma.unwrap_or(200.0))?;
        let samples = f.samples.unwrap_or(d.samples);
        if samples == 0 {
            return Err(usage("samples must be at least 1"));
        }
        Ok(Config {
            sigma,
            p,
            n,
            tol,
            buchstab_h,
            pmax: f.pmax.unwrap_or(d.pmax),
            qmax: f.qmax.unwrap_or(d.qmax),
            seed: f.seed.unwrap_or(0),
            jobs: f.jobs.unwrap_or(0),
            output: f.output,
            format: f.format.unwrap_or(Format::Json),
            samples,
            targets: f.targets.unwrap_or(d.targets),
            points: f.points.unwrap_or_default(),
            gamma,
            j: f.j.unwrap_or(1),
            counts: f.counts.unwrap_or(false),
            restrict_i: f.restrict_i.unwrap_or(false),
            lemma: f.lemma.unwrap_or(LemmaKind::Count31),
            x: f.x.unwrap_or(1 << 14),
            r: f.r,
            s: f.s,
            u: f.u,
            z: f.z,
            coefficients: f.coefficients.unwrap_or(CoefficientKind::Ones),
            exceptions: f.exceptions,
        })
    }
}
