//! Declarative scenario files.
//!
//! A scenario is a TOML document describing the input photons, the circuit,
//! an optional parameter sweep and what to report. Records are written as
//! one-key inline tables holding a positional array:
//!
//! ```toml
//! name = "hom"
//! channels = 2
//! polarizations = 1
//! shape = "gaussian"          # or "exponential"
//! core = "permanent"          # or "direct"
//!
//! input = [
//!     { photons = [1, 0, 0, 0.0, 1.0, 1.0] },    # n, ch, pol, t, f, w
//!     { photons = [1, 1, 0, 0.0, 1.0, 1.0] },
//! ]
//! # { bell = [ch1, ch2, "p", phase, t1, f1, w1, t2, f2, w2] }
//!
//! circuit = [
//!     { bs = [0, 1, 45.0, 0.0] },                # ch1, ch2, theta, phi (degrees)
//!     { detector = [0] },
//!     { detector = [1] },                       # [ch] or [ch, count]
//! ]
//! # { ps = [ch, phi] }, { delay = [ch] }
//!
//! [periods]                   # optional, needed by delays
//! count = 3
//! length = 3.1
//!
//! [[sweep]]
//! name = "dt"
//! field = "input.1.t"         # input.<i>.<t|f|w|phase|t1|...>, circuit.<i>.<theta|phi>
//! from = 0.0
//! to = 3.0
//! steps = 60
//! shift = 0.0                 # added to each value before substitution
//!
//! [report]
//! kind = "distribution"       # resolved | density | correlation
//! ```
//!
//! Several `[[sweep]]` entries advance together (same step count) unless
//! `cartesian = true`, in which case every combination is run.

pub mod builtin;

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::device::{BellKind, QODevice};
use crate::engine::{Core, OutputMode, SimConfig};
use crate::error::{Error, Result};
use crate::outcomes::{
    coincidence, density_matrix, distribution, postselect, resolved_distribution, unconditioned_channels, Distribution,
};
use crate::packet::{PacketRef, PacketTable, Shape};

/// Input record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputRecord {
    /// `[n, ch, pol, t, f, w]`
    Photons(u32, usize, usize, f64, f64, f64),
    /// `[ch1, ch2, kind, phase, t1, f1, w1, t2, f2, w2]`
    Bell(usize, usize, String, f64, f64, f64, f64, f64, f64, f64),
}

/// Circuit record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ElementRecord {
    /// `[ch1, ch2, theta, phi]`
    Bs(usize, usize, f64, f64),
    /// `[ch, phi]`
    Ps(usize, f64),
    /// `[ch]`
    Delay([usize; 1]),
    /// `[ch]` or `[ch, count]`
    Detector(Vec<u32>),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Periods {
    pub count: usize,
    pub length: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepParam {
    pub name: String,
    pub field: String,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub shift: f64,
}

fn is_zero(x: &f64) -> bool {
    *x == 0.0
}

fn is_false(b: &bool) -> bool {
    !*b
}

impl SweepParam {
    pub fn values(&self) -> Vec<f64> {
        if self.steps <= 1 {
            return vec![self.from];
        }
        let step = (self.to - self.from) / (self.steps - 1) as f64;
        (0..self.steps).map(|i| self.from + step * i as f64).collect()
    }
}

/// What each sweep point reports.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Report {
    /// Photon counts per channel.
    #[default]
    Distribution,
    /// Probability of every output ket.
    Resolved,
    /// Density matrix of the channels without a count condition.
    Density {
        #[serde(default, skip_serializing_if = "is_false")]
        reduce_packets: bool,
    },
    /// Probability of finding photons in the packets of input records `a`
    /// and `b` (zero-photon records are fine), on their channels and
    /// polarizations. With `sum_periods`, both packets are moved together
    /// through every period and the results added.
    Correlation {
        a: usize,
        b: usize,
        #[serde(default, skip_serializing_if = "is_false")]
        sum_periods: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub channels: usize,
    #[serde(default = "one")]
    pub polarizations: usize,
    #[serde(default)]
    pub shape: Shape,
    #[serde(default)]
    pub core: Core,
    #[serde(default, skip_serializing_if = "is_false")]
    pub order_by_time: bool,
    #[serde(default, skip_serializing_if = "is_false")]
    pub cartesian: bool,
    /// Output kets to compute instead of the full distribution.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub restrict: Vec<Vec<u32>>,
    pub input: Vec<InputRecord>,
    pub circuit: Vec<ElementRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub periods: Option<Periods>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sweep: Vec<SweepParam>,
    #[serde(default)]
    pub report: Report,
}

fn one() -> usize {
    1
}

/// Result for one sweep point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Point {
    pub params: Vec<(String, f64)>,
    #[serde(flatten)]
    pub value: PointValue,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PointValue {
    Distribution(Distribution),
    Density(DensityReport),
    Correlation(f64),
}

/// Density matrix in plain arrays, plus the heralding probability.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityReport {
    pub labels: Vec<String>,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
    pub purity: f64,
    pub probability: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Scenario {
    pub fn from_toml(text: &str) -> Result<Self> {
        let s: Scenario = toml::from_str(text).map_err(|e| Error::Scenario(e.to_string()))?;
        s.validate()?;
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Scenario(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text).map_err(|e| match e {
            Error::Scenario(m) => Error::Scenario(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Scenario(e.to_string()))
    }

    /// Structural checks: ranges, record shapes, sweep fields.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Scenario(m));
        if self.channels == 0 || self.polarizations == 0 {
            return bad("channels and polarizations must be positive".into());
        }
        let ch_ok = |c: usize| c < self.channels;
        for (i, r) in self.input.iter().enumerate() {
            match r {
                InputRecord::Photons(_, ch, pol, ..) => {
                    if !ch_ok(*ch) || *pol >= self.polarizations {
                        return bad(format!("input {i}: channel {ch} / polarization {pol} out of range"));
                    }
                }
                InputRecord::Bell(c1, c2, kind, ..) => {
                    if !ch_ok(*c1) || !ch_ok(*c2) || c1 == c2 {
                        return bad(format!("input {i}: bad Bell pair channels {c1}, {c2}"));
                    }
                    if self.polarizations != 2 {
                        return bad(format!("input {i}: Bell pairs need polarizations = 2"));
                    }
                    kind.parse::<BellKind>()
                        .map_err(|e| Error::Scenario(format!("input {i}: {e}")))?;
                }
            }
        }
        let mut detectors = Vec::new();
        for (i, e) in self.circuit.iter().enumerate() {
            let ok = match e {
                ElementRecord::Bs(a, b, ..) => ch_ok(*a) && ch_ok(*b) && a != b,
                ElementRecord::Ps(c, _) => ch_ok(*c),
                ElementRecord::Delay([c]) => ch_ok(*c) && self.periods.is_some_and(|p| p.count >= 2),
                ElementRecord::Detector(v) => {
                    let ok = (1..=2).contains(&v.len()) && ch_ok(v[0] as usize) && !detectors.contains(&v[0]);
                    detectors.push(v.first().copied().unwrap_or(u32::MAX));
                    ok
                }
            };
            if !ok {
                return bad(format!("circuit {i}: invalid element {e:?}"));
            }
        }
        if let Some(p) = self.periods {
            if p.count == 0 || (p.count > 1 && (p.length.is_nan() || p.length <= 0.0)) {
                return bad(format!("invalid periods {p:?}"));
            }
        }
        if self.input.is_empty() {
            return bad("no input records".into());
        }
        for s in &self.sweep {
            if s.steps == 0 {
                return bad(format!("sweep '{}' needs at least one step", s.name));
            }
            self.clone().set_field(&s.field, s.from)?;
        }
        if !self.cartesian && self.sweep.windows(2).any(|w| w[0].steps != w[1].steps) {
            return bad("sweeps advancing together need equal step counts (or set cartesian = true)".into());
        }
        if let Report::Correlation { a, b, .. } = self.report {
            for r in [a, b] {
                if !matches!(self.input.get(r), Some(InputRecord::Photons(..))) {
                    return bad(format!(
                        "correlation refers to input {r}, which is not a photons record"
                    ));
                }
            }
        }
        Ok(())
    }

    /// Overwrites one numeric field, addressed as `input.<i>.<name>` or
    /// `circuit.<i>.<name>`.
    pub fn set_field(&mut self, field: &str, value: f64) -> Result<()> {
        let unknown = || Error::Scenario(format!("unknown sweep field '{field}'"));
        let parts: Vec<&str> = field.split('.').collect();
        let [section, idx, name] = parts[..] else {
            return Err(unknown());
        };
        let i: usize = idx.parse().map_err(|_| unknown())?;
        let slot = match section {
            "input" => match self.input.get_mut(i).ok_or_else(unknown)? {
                InputRecord::Photons(_, _, _, t, f, w) => match name {
                    "t" => t,
                    "f" => f,
                    "w" => w,
                    _ => return Err(unknown()),
                },
                InputRecord::Bell(_, _, _, phase, t1, f1, w1, t2, f2, w2) => match name {
                    "phase" => phase,
                    "t1" => t1,
                    "f1" => f1,
                    "w1" => w1,
                    "t2" => t2,
                    "f2" => f2,
                    "w2" => w2,
                    _ => return Err(unknown()),
                },
            },
            "circuit" => match self.circuit.get_mut(i).ok_or_else(unknown)? {
                ElementRecord::Bs(_, _, theta, phi) => match name {
                    "theta" => theta,
                    "phi" => phi,
                    _ => return Err(unknown()),
                },
                ElementRecord::Ps(_, phi) if name == "phi" => phi,
                _ => return Err(unknown()),
            },
            _ => return Err(unknown()),
        };
        *slot = value;
        Ok(())
    }

    /// Parameter values of every sweep point, in run order.
    pub fn points(&self) -> Vec<Vec<(String, f64)>> {
        if self.sweep.is_empty() {
            return vec![Vec::new()];
        }
        let axes: Vec<Vec<f64>> = self.sweep.iter().map(SweepParam::values).collect();
        let mut out = Vec::new();
        if self.cartesian {
            let mut idx = vec![0usize; axes.len()];
            loop {
                out.push(
                    self.sweep
                        .iter()
                        .zip(&idx)
                        .enumerate()
                        .map(|(a, (s, &i))| (s.name.clone(), axes[a][i]))
                        .collect(),
                );
                let mut a = axes.len();
                loop {
                    if a == 0 {
                        return out;
                    }
                    a -= 1;
                    idx[a] += 1;
                    if idx[a] < axes[a].len() {
                        break;
                    }
                    idx[a] = 0;
                }
            }
        }
        for i in 0..axes[0].len() {
            out.push(
                self.sweep
                    .iter()
                    .zip(&axes)
                    .map(|(s, v)| (s.name.clone(), v[i]))
                    .collect(),
            );
        }
        out
    }

    /// Builds the device for one point and sends the input. Returns the
    /// packet of every input record (two for Bell pairs).
    pub fn build(&self, params: &[(String, f64)]) -> Result<(QODevice, Vec<Vec<PacketRef>>)> {
        let mut s = self.clone();
        for (name, value) in params {
            let p = self
                .sweep
                .iter()
                .find(|p| &p.name == name)
                .ok_or_else(|| Error::Scenario(format!("unknown sweep '{name}'")))?;
            s.set_field(&p.field, value + p.shift)?;
        }
        let table = match s.periods {
            Some(p) => PacketTable::with_periods(s.shape, p.count, p.length)?,
            None => PacketTable::new(s.shape),
        };
        let mut dev = QODevice::with_table(s.channels, s.polarizations, table)?.order_by_time(s.order_by_time);
        let mut refs = Vec::with_capacity(s.input.len());
        for r in &s.input {
            match r {
                InputRecord::Photons(n, ch, pol, t, f, w) => {
                    refs.push(vec![dev.add_photons(*n, *ch, *pol, *t, *f, *w)?])
                }
                InputRecord::Bell(c1, c2, kind, phase, t1, f1, w1, t2, f2, w2) => {
                    let (a, b) =
                        dev.add_bell_pair(*c1, *c2, kind.parse()?, *phase, [*t1, *f1, *w1], [*t2, *f2, *w2])?;
                    refs.push(vec![a, b]);
                }
            }
        }
        for e in &s.circuit {
            match e {
                ElementRecord::Bs(a, b, theta, phi) => dev.beamsplitter(*a, *b, *theta, *phi)?,
                ElementRecord::Ps(c, phi) => dev.phase_shifter(*c, *phi)?,
                ElementRecord::Delay([c]) => dev.delay(*c)?,
                ElementRecord::Detector(v) => dev.detector(v[0] as usize, v.get(1).copied())?,
            };
        }
        if !dev.is_sent() {
            dev.send_to_circuit()?;
        }
        let refs = refs
            .into_iter()
            .map(|r| r.into_iter().map(|p| dev.resolve(p)).collect())
            .collect();
        Ok((dev, refs))
    }

    fn sim_config(&self, core: Core) -> SimConfig {
        let output = if self.restrict.is_empty() {
            OutputMode::Full
        } else {
            OutputMode::Restricted(self.restrict.clone())
        };
        SimConfig {
            core,
            output,
            ..SimConfig::default()
        }
    }

    /// Runs one point.
    pub fn run_point(&self, params: &[(String, f64)], core: Core) -> Result<Point> {
        let (dev, refs) = self.build(params)?;
        let out = dev.run(&self.sim_config(core))?;
        let circuit = dev.circuit()?;
        let detectors = circuit.detectors();
        let value = match &self.report {
            Report::Distribution => PointValue::Distribution(distribution(&out, detectors)),
            Report::Resolved => PointValue::Distribution(resolved_distribution(&out, detectors)),
            Report::Density { reduce_packets } => {
                let branches = postselect(&out, detectors);
                let probability = branches.iter().map(|b| b.weight).sum();
                let mut rho = density_matrix(&branches, &unconditioned_channels(circuit.levels(), detectors))?;
                if *reduce_packets {
                    rho = rho.reduce_packets(circuit.levels());
                }
                let n = rho.dim();
                let m = rho.matrix();
                PointValue::Density(DensityReport {
                    labels: rho.labels().to_vec(),
                    re: (0..n).map(|r| (0..n).map(|c| m[(r, c)].re).collect()).collect(),
                    im: (0..n).map(|r| (0..n).map(|c| m[(r, c)].im).collect()).collect(),
                    purity: rho.purity(),
                    probability,
                })
            }
            Report::Correlation { a, b, sum_periods } => {
                let levels = circuit.levels();
                let n_t = dev.table().per_period();
                let periods = dev.table().periods();
                let slot = |i: usize| match &self.input[i] {
                    InputRecord::Photons(_, ch, pol, ..) => (*ch, *pol, refs[i][0]),
                    InputRecord::Bell(..) => unreachable!("checked by validate"),
                };
                let ((ca, pa, ra), (cb, pb, rb)) = (slot(*a), slot(*b));
                let shifts = if *sum_periods { periods } else { 1 };
                let mut total = 0.0;
                for p in 0..shifts {
                    let (qa, qb) = (ra.period + p, rb.period + p);
                    if qa >= periods || qb >= periods {
                        break;
                    }
                    let la = levels.level_of(ca, pa, qa * n_t + ra.base)?;
                    let lb = levels.level_of(cb, pb, qb * n_t + rb.base)?;
                    total += coincidence(&out, la, lb);
                }
                PointValue::Correlation(total)
            }
        };
        Ok(Point {
            params: params.to_vec(),
            value,
        })
    }

    /// Runs every sweep point in parallel; results come back in sweep order.
    pub fn run(&self, core: Option<Core>) -> Result<Vec<Point>> {
        let core = core.unwrap_or(self.core);
        self.points().par_iter().map(|p| self.run_point(p, core)).collect()
    }
}

/// Writes results as CSV: sweep columns first, then the report columns.
pub fn write_csv<W: Write>(scenario: &Scenario, points: &[Point], w: W) -> Result<()> {
    let io = |e: csv::Error| Error::Scenario(e.to_string());
    let mut out = csv::Writer::from_writer(w);
    let mut header: Vec<String> = scenario.sweep.iter().map(|s| s.name.clone()).collect();
    let tail: &[&str] = match scenario.report {
        Report::Distribution | Report::Resolved => &["label", "probability"],
        Report::Density { .. } => &["row", "col", "re", "im"],
        Report::Correlation { .. } => &["probability"],
    };
    header.extend(tail.iter().map(|s| s.to_string()));
    out.write_record(&header).map_err(io)?;
    for p in points {
        let lead: Vec<String> = p.params.iter().map(|(_, v)| v.to_string()).collect();
        match &p.value {
            PointValue::Distribution(d) => {
                for e in d.entries() {
                    let mut row = lead.clone();
                    row.push(e.label.clone());
                    row.push(e.probability.to_string());
                    out.write_record(&row).map_err(io)?;
                }
            }
            PointValue::Density(r) => {
                for (i, li) in r.labels.iter().enumerate() {
                    for (j, lj) in r.labels.iter().enumerate() {
                        let mut row = lead.clone();
                        row.extend([li.clone(), lj.clone(), r.re[i][j].to_string(), r.im[i][j].to_string()]);
                        out.write_record(&row).map_err(io)?;
                    }
                }
            }
            PointValue::Correlation(v) => {
                let mut row = lead.clone();
                row.push(v.to_string());
                out.write_record(&row).map_err(io)?;
            }
        }
    }
    out.flush().map_err(|e| Error::Scenario(e.to_string()))
}

/// Writes results as a JSON document.
pub fn write_json<W: Write>(scenario: &Scenario, points: &[Point], w: W) -> Result<()> {
    #[derive(Serialize)]
    struct Doc<'a> {
        scenario: &'a str,
        points: Vec<JsonPoint<'a>>,
    }
    #[derive(Serialize)]
    struct JsonPoint<'a> {
        params: serde_json::Map<String, serde_json::Value>,
        #[serde(flatten)]
        value: &'a PointValue,
    }
    let doc = Doc {
        scenario: &scenario.name,
        points: points
            .iter()
            .map(|p| JsonPoint {
                params: p
                    .params
                    .iter()
                    .map(|(k, v)| (k.clone(), serde_json::json!(v)))
                    .collect(),
                value: &p.value,
            })
            .collect(),
    };
    serde_json::to_writer_pretty(w, &doc).map_err(|e| Error::Scenario(e.to_string()))
}

/// Writes in the requested format.
pub fn write(scenario: &Scenario, points: &[Point], format: Format, w: impl Write) -> Result<()> {
    match format {
        Format::Csv => write_csv(scenario, points, w),
        Format::Json => write_json(scenario, points, w),
    }
}
