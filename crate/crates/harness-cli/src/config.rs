//! Experiment configuration: a flat `key = value` text format with `[section]`
//! headers. Every key is addressed as `section.key`.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateChoice {
    /// Dimer product state, a symmetric state with `n(k) = (1 + cos k) / 2`.
    Dimer,
    /// Squeezed state with the same filling profile (prediction only).
    Squeezed,
}

impl StateChoice {
    pub fn as_str(&self) -> &'static str {
        match self {
            StateChoice::Dimer => "dimer",
            StateChoice::Squeezed => "squeezed",
        }
    }
}

impl FromStr for StateChoice {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "dimer" => Ok(StateChoice::Dimer),
            "squeezed" => Ok(StateChoice::Squeezed),
            other => Err(format!("unknown state `{other}` (expected dimer or squeezed)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn as_str(&self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

impl FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

/// Which covariance-level route the exact engine uses for Renyi negativities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactMethod {
    /// Traces of the negativity Hamiltonian (depends on the spectrum cutoff).
    Spectrum,
    /// Gaussian composition of `rho^R1` with its adjoint (cutoff free).
    Composition,
    Both,
}

impl ExactMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            ExactMethod::Spectrum => "spectrum",
            ExactMethod::Composition => "composition",
            ExactMethod::Both => "both",
        }
    }

    pub fn spectrum(&self) -> bool {
        matches!(self, ExactMethod::Spectrum | ExactMethod::Both)
    }

    pub fn composition(&self) -> bool {
        matches!(self, ExactMethod::Composition | ExactMethod::Both)
    }
}

impl FromStr for ExactMethod {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "spectrum" => Ok(ExactMethod::Spectrum),
            "composition" => Ok(ExactMethod::Composition),
            "both" => Ok(ExactMethod::Both),
            other => Err(format!(
                "unknown exact method `{other}` (expected spectrum, composition or both)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub state: StateChoice,
    pub l1: usize,
    pub l2: usize,
    pub d: usize,
    pub t_min: f64,
    pub t_max: f64,
    pub steps: usize,
    pub alphas: Vec<u32>,
    pub lambdas: Vec<f64>,
    pub kgrid: usize,
    pub cutoff: f64,
    pub ceiling: usize,
    pub exact_method: ExactMethod,
    pub output: String,
    pub format: OutputFormat,
    pub dump_dir: Option<String>,
    /// `0` means available parallelism.
    pub workers: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            state: StateChoice::Dimer,
            l1: 100,
            l2: 100,
            d: 100,
            t_min: 0.0,
            t_max: 300.0,
            steps: 30,
            alphas: vec![2, 3, 4],
            lambdas: Vec::new(),
            kgrid: negham_core::MidpointGrid::DEFAULT_POINTS,
            cutoff: gaussian_engine::DEFAULT_CUTOFF,
            ceiling: 4000,
            exact_method: ExactMethod::Both,
            output: "-".to_string(),
            format: OutputFormat::Csv,
            dump_dir: None,
            workers: 0,
        }
    }
}

fn parse_list<T: FromStr>(value: &str) -> std::result::Result<Vec<T>, String> {
    if value.trim().is_empty() {
        return Ok(Vec::new());
    }
    value
        .split(',')
        .map(|s| s.trim().parse::<T>().map_err(|_| format!("cannot parse `{}`", s.trim())))
        .collect()
}

fn parse_one<T: FromStr>(value: &str) -> std::result::Result<T, String> {
    value.trim().parse::<T>().map_err(|_| format!("cannot parse `{}`", value.trim()))
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

impl ExperimentConfig {
    /// Every `section.key` understood by [`ExperimentConfig::set`].
    pub const KEYS: [&'static str; 17] = [
        "state.kind",
        "geometry.l1",
        "geometry.l2",
        "geometry.d",
        "time.t_min",
        "time.t_max",
        "time.steps",
        "renyi.alpha",
        "renyi.lambda",
        "numerics.kgrid",
        "numerics.cutoff",
        "numerics.ceiling",
        "numerics.exact_method",
        "output.path",
        "output.format",
        "output.dump_dir",
        "run.workers",
    ];

    /// Assigns one `section.key`; errors carry a bare message for the caller to locate.
    pub fn set(&mut self, key: &str, value: &str) -> std::result::Result<(), String> {
        match key {
            "state.kind" => self.state = value.trim().parse()?,
            "geometry.l1" => self.l1 = parse_one(value)?,
            "geometry.l2" => self.l2 = parse_one(value)?,
            "geometry.d" => self.d = parse_one(value)?,
            "time.t_min" => self.t_min = parse_one(value)?,
            "time.t_max" => self.t_max = parse_one(value)?,
            "time.steps" => self.steps = parse_one(value)?,
            "renyi.alpha" => self.alphas = parse_list(value)?,
            "renyi.lambda" => self.lambdas = parse_list(value)?,
            "numerics.kgrid" => self.kgrid = parse_one(value)?,
            "numerics.cutoff" => self.cutoff = parse_one(value)?,
            "numerics.ceiling" => self.ceiling = parse_one(value)?,
            "numerics.exact_method" => self.exact_method = value.trim().parse()?,
            "output.path" => self.output = value.trim().to_string(),
            "output.format" => self.format = value.trim().parse()?,
            "output.dump_dir" => {
                let v = value.trim();
                self.dump_dir = (!v.is_empty()).then(|| v.to_string());
            }
            "run.workers" => self.workers = parse_one(value)?,
            other => return Err(format!("unknown key `{other}`")),
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        let mut section = String::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                let name = name.strip_suffix(']').ok_or_else(|| HarnessError::Config {
                    line: line_no,
                    message: format!("unterminated section header `{line}`"),
                })?;
                section = name.trim().to_string();
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| HarnessError::Config {
                line: line_no,
                message: format!("expected `key = value`, got `{line}`"),
            })?;
            let full = if section.is_empty() {
                key.trim().to_string()
            } else {
                format!("{section}.{}", key.trim())
            };
            cfg.set(&full, value).map_err(|message| HarnessError::Config {
                line: line_no,
                message: format!("{full}: {message}"),
            })?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Canonical text form; `parse(to_text())` reproduces the configuration.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "[state]\nkind = {}\n", self.state.as_str());
        let _ = writeln!(s, "[geometry]\nl1 = {}\nl2 = {}\nd = {}\n", self.l1, self.l2, self.d);
        let _ = writeln!(
            s,
            "[time]\nt_min = {:?}\nt_max = {:?}\nsteps = {}\n",
            self.t_min, self.t_max, self.steps
        );
        let lambdas: Vec<String> = self.lambdas.iter().map(|x| format!("{x:?}")).collect();
        let _ = writeln!(
            s,
            "[renyi]\nalpha = {}\nlambda = {}\n",
            join(&self.alphas),
            lambdas.join(", ")
        );
        let _ = writeln!(
            s,
            "[numerics]\nkgrid = {}\ncutoff = {:?}\nceiling = {}\nexact_method = {}\n",
            self.kgrid,
            self.cutoff,
            self.ceiling,
            self.exact_method.as_str()
        );
        let _ = writeln!(
            s,
            "[output]\npath = {}\nformat = {}\ndump_dir = {}\n",
            self.output,
            self.format.as_str(),
            self.dump_dir.as_deref().unwrap_or("")
        );
        let _ = writeln!(s, "[run]\nworkers = {}", self.workers);
        s
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |message: String| Err(HarnessError::Invalid(message));
        if self.l1 == 0 || self.l2 == 0 || self.d == 0 {
            return fail(format!(
                "geometry sizes must be positive (l1={}, l2={}, d={})",
                self.l1, self.l2, self.d
            ));
        }
        if !(self.t_min >= 0.0 && self.t_max >= self.t_min && self.t_max.is_finite()) {
            return fail(format!(
                "time grid must satisfy 0 <= t_min <= t_max, got [{}, {}]",
                self.t_min, self.t_max
            ));
        }
        if self.alphas.is_empty() || self.alphas.contains(&0) {
            return fail("alpha list must be non-empty positive integers".into());
        }
        if self.kgrid == 0 {
            return fail("kgrid must be positive".into());
        }
        if !(self.cutoff > 0.0 && self.cutoff < 0.5) {
            return fail(format!("cutoff must lie in (0, 0.5), got {}", self.cutoff));
        }
        if self.lambdas.iter().any(|x| !x.is_finite()) {
            return fail("lambda values must be finite".into());
        }
        Ok(())
    }

    /// `t_min + i (t_max - t_min) / steps` for `i = 0..=steps`.
    pub fn times(&self) -> Vec<f64> {
        if self.steps == 0 {
            return vec![self.t_min];
        }
        (0..=self.steps)
            .map(|i| self.t_min + (self.t_max - self.t_min) * i as f64 / self.steps as f64)
            .collect()
    }
}
