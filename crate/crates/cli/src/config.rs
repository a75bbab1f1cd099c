//! Line-oriented `key = value` run configuration.
//!
//! `#` starts a comment, lists are comma-separated. Keys that are not set
//! fall back to the Table-1 reference parameters.

use std::fmt::Write as _;
use std::path::PathBuf;

use dirac_msy::model::QuasiTail;
use dirac_msy::{
    BranchPolicy, PotentialChoice, PotentialParams, QuantumState, RadialGrid, SymmetryLimit, SymmetrySpec,
};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`, got `{text}`")]
    Syntax { line: usize, text: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: key `{key}` given twice")]
    Duplicate { line: usize, key: String },
    #[error("key `{key}`: cannot parse `{value}`: {reason}")]
    Value { key: String, value: String, reason: String },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub limit: SymmetryLimit,
    pub choice: PotentialChoice,
    pub tail: QuasiTail,
    pub branch: BranchPolicy,
    pub mass: f64,
    pub sym_const: f64,
    pub v0: f64,
    pub v1: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub alpha: f64,
    pub tensor: Vec<f64>,
    /// Explicit `(n, κ)` list; when empty, `n_list × kappa_list` is used.
    pub states: Vec<QuantumState>,
    pub n_list: Vec<u32>,
    pub kappa_list: Vec<i32>,
    pub window: Option<(f64, f64)>,
    pub r_min: Option<f64>,
    pub r_max: Option<f64>,
    pub points: Option<usize>,
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            limit: SymmetryLimit::Pseudospin,
            choice: PotentialChoice::First,
            tail: QuasiTail::default(),
            branch: BranchPolicy::Auto,
            mass: 5.0,
            sym_const: 0.0,
            v0: -0.2,
            v1: 0.1,
            a: 1.0,
            b: -2.0,
            c: 1.0,
            d: -1.0,
            alpha: 0.01,
            tensor: vec![0.0],
            states: Vec::new(),
            n_list: vec![1],
            kappa_list: vec![-1],
            window: None,
            r_min: None,
            r_max: None,
            points: None,
            output: None,
        }
    }
}

const KEYS: &[&str] = &[
    "limit",
    "choice",
    "tail",
    "branch",
    "mass",
    "sym_const",
    "v0",
    "v1",
    "a",
    "b",
    "c",
    "d",
    "alpha",
    "tensor",
    "states",
    "n_list",
    "kappa_list",
    "window",
    "r_min",
    "r_max",
    "points",
    "output",
];

fn value_err(key: &str, value: &str, reason: impl ToString) -> ConfigError {
    ConfigError::Value { key: key.into(), value: value.into(), reason: reason.to_string() }
}

fn parse_one<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, ConfigError>
where
    T::Err: ToString,
{
    value.trim().parse().map_err(|e: T::Err| value_err(key, value, e))
}

fn parse_list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>, ConfigError>
where
    T::Err: ToString,
{
    if value.trim().is_empty() {
        return Ok(Vec::new());
    }
    value.split(',').map(|v| parse_one(key, v)).collect()
}

fn parse_state(key: &str, item: &str) -> Result<QuantumState, ConfigError> {
    let (n, k) = item.trim().split_once(':').ok_or_else(|| value_err(key, item, "expected `n:kappa`"))?;
    QuantumState::new(parse_one(key, n)?, parse_one(key, k)?).map_err(|e| value_err(key, item, e))
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Self::default();
        let mut seen: Vec<&str> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) =
                line.split_once('=').ok_or_else(|| ConfigError::Syntax { line: i + 1, text: raw.to_string() })?;
            let (key, value) = (key.trim(), value.trim());
            let Some(&known) = KEYS.iter().find(|k| **k == key) else {
                return Err(ConfigError::UnknownKey { line: i + 1, key: key.into() });
            };
            if seen.contains(&known) {
                return Err(ConfigError::Duplicate { line: i + 1, key: key.into() });
            }
            seen.push(known);
            cfg.set(known, value)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        match key {
            "limit" => self.limit = parse_one(key, value)?,
            "choice" => self.choice = parse_one(key, value)?,
            "tail" => self.tail = parse_one(key, value)?,
            "branch" => self.branch = parse_one(key, value)?,
            "mass" => self.mass = parse_one(key, value)?,
            "sym_const" => self.sym_const = parse_one(key, value)?,
            "v0" => self.v0 = parse_one(key, value)?,
            "v1" => self.v1 = parse_one(key, value)?,
            "a" => self.a = parse_one(key, value)?,
            "b" => self.b = parse_one(key, value)?,
            "c" => self.c = parse_one(key, value)?,
            "d" => self.d = parse_one(key, value)?,
            "alpha" => self.alpha = parse_one(key, value)?,
            "tensor" => self.tensor = parse_list(key, value)?,
            "states" => {
                self.states = if value.is_empty() {
                    Vec::new()
                } else {
                    value.split(',').map(|s| parse_state(key, s)).collect::<Result<_, _>>()?
                }
            }
            "n_list" => self.n_list = parse_list(key, value)?,
            "kappa_list" => self.kappa_list = parse_list(key, value)?,
            "window" => {
                let w: Vec<f64> = parse_list(key, value)?;
                let [lo, hi] = w[..] else {
                    return Err(value_err(key, value, "expected `lo, hi`"));
                };
                self.window = Some((lo, hi));
            }
            "r_min" => self.r_min = Some(parse_one(key, value)?),
            "r_max" => self.r_max = Some(parse_one(key, value)?),
            "points" => self.points = Some(parse_one(key, value)?),
            "output" => self.output = Some(PathBuf::from(value)),
            _ => unreachable!("key list and setter out of sync"),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.params().map_err(|e| ConfigError::Invalid(e.to_string()))?;
        if !self.n_list.is_empty() && self.kappa_list.contains(&0) {
            return Err(ConfigError::Invalid("kappa_list contains 0".into()));
        }
        for &h in &self.tensor {
            self.spec(h).map_err(|e| ConfigError::Invalid(e.to_string()))?;
        }
        if let Some((lo, hi)) = self.window {
            if !(lo < hi) {
                return Err(ConfigError::Invalid(format!("empty window [{lo}, {hi}]")));
            }
        }
        if self.r_min.is_some() || self.r_max.is_some() || self.points.is_some() {
            self.grid().map_err(|e| ConfigError::Invalid(e.to_string()))?;
        }
        Ok(())
    }

    /// Text form accepted by [`RunConfig::parse`]. Floats use the shortest
    /// representation that reads back exactly.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let mut put = |k: &str, v: String| {
            let _ = writeln!(out, "{k} = {v}");
        };
        put("limit", self.limit.to_string());
        put("choice", self.choice.to_string());
        put("tail", self.tail.to_string());
        put("branch", self.branch.to_string());
        put("mass", self.mass.to_string());
        put("sym_const", self.sym_const.to_string());
        put("v0", self.v0.to_string());
        put("v1", self.v1.to_string());
        put("a", self.a.to_string());
        put("b", self.b.to_string());
        put("c", self.c.to_string());
        put("d", self.d.to_string());
        put("alpha", self.alpha.to_string());
        put("tensor", join(&self.tensor));
        if self.states.is_empty() {
            put("n_list", join(&self.n_list));
            put("kappa_list", join(&self.kappa_list));
        } else {
            put("states", self.states.iter().map(|q| format!("{}:{}", q.n, q.kappa)).collect::<Vec<_>>().join(", "));
        }
        if let Some((lo, hi)) = self.window {
            put("window", format!("{lo}, {hi}"));
        }
        if let Some(v) = self.r_min {
            put("r_min", v.to_string());
        }
        if let Some(v) = self.r_max {
            put("r_max", v.to_string());
        }
        if let Some(v) = self.points {
            put("points", v.to_string());
        }
        if let Some(v) = &self.output {
            put("output", v.display().to_string());
        }
        out
    }

    pub fn params(&self) -> dirac_msy::Result<PotentialParams> {
        PotentialParams::new(self.v0, self.v1, self.a, self.b, self.c, self.d, self.alpha)
    }

    pub fn spec(&self, tensor: f64) -> dirac_msy::Result<SymmetrySpec> {
        let mut s = SymmetrySpec::new(self.limit, self.choice, self.sym_const, tensor, self.mass)?;
        s.tail = self.tail;
        Ok(s)
    }

    /// The states to solve, in input order.
    pub fn state_list(&self) -> Vec<QuantumState> {
        if !self.states.is_empty() {
            return self.states.clone();
        }
        self.n_list.iter().flat_map(|&n| self.kappa_list.iter().map(move |&k| QuantumState { n, kappa: k })).collect()
    }

    /// Explicit grid from `r_min`, `r_max`, `points` (defaults fill gaps).
    pub fn grid(&self) -> dirac_msy::Result<RadialGrid> {
        let d = RadialGrid::default();
        RadialGrid::uniform(
            self.r_min.unwrap_or(d.r_min),
            self.r_max.unwrap_or(d.r_max),
            self.points.unwrap_or(d.points),
        )
    }

    pub fn has_grid(&self) -> bool {
        self.r_min.is_some() || self.r_max.is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_the_reference_parameters() {
        let c = RunConfig::parse("").unwrap();
        assert_eq!((c.alpha, c.mass, c.a, c.b, c.c, c.d), (0.01, 5.0, 1.0, -2.0, 1.0, -1.0));
    }

    #[test]
    fn comments_lists_and_states() {
        let c = RunConfig::parse(
            "# header\nlimit = spin # trailing\n tensor = 0, 0.5\nstates = 0:-2, 1:3\nwindow = 4, 6\n",
        )
        .unwrap();
        assert_eq!(c.limit, SymmetryLimit::Spin);
        assert_eq!(c.tensor, vec![0.0, 0.5]);
        assert_eq!(c.state_list(), vec![QuantumState { n: 0, kappa: -2 }, QuantumState { n: 1, kappa: 3 }]);
        assert_eq!(c.window, Some((4.0, 6.0)));
    }

    #[test]
    fn cross_product_without_states() {
        let c = RunConfig::parse("n_list = 0, 1\nkappa_list = -1, 2").unwrap();
        assert_eq!(c.state_list().len(), 4);
        let empty = RunConfig::parse("n_list =").unwrap();
        assert!(empty.state_list().is_empty());
    }

    #[test]
    fn round_trip_is_a_fixed_point() {
        let text = "alpha = 0.030000000000000002\nv0 = -1e-7\nstates = 2:-5\ntensor = 0.1, 0.7\npoints = 301\nr_min = 0.5\noutput = out.csv\nbranch = minus\ntail = linear";
        let a = RunConfig::parse(text).unwrap();
        let s = a.serialize();
        let b = RunConfig::parse(&s).unwrap();
        assert_eq!(a, b);
        assert_eq!(s, b.serialize());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(RunConfig::parse("alpha 0.1"), Err(ConfigError::Syntax { line: 1, .. })));
        assert!(matches!(RunConfig::parse("gamma = 1"), Err(ConfigError::UnknownKey { .. })));
        assert!(matches!(RunConfig::parse("v0 = 1\nv0 = 2"), Err(ConfigError::Duplicate { line: 2, .. })));
        assert!(matches!(RunConfig::parse("v0 = x"), Err(ConfigError::Value { .. })));
        assert!(matches!(RunConfig::parse("states = 1:0"), Err(ConfigError::Value { .. })));
        assert!(matches!(RunConfig::parse("alpha = -1"), Err(ConfigError::Invalid(_))));
        assert!(matches!(RunConfig::parse("mass = 0"), Err(ConfigError::Invalid(_))));
        assert!(matches!(RunConfig::parse("window = 3, 1"), Err(ConfigError::Invalid(_))));
        assert!(matches!(RunConfig::parse("limit = both"), Err(ConfigError::Value { .. })));
    }
}
