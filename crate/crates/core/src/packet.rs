//! Wavepacket shape models and the packet parameter table.
//!
//! A packet is `|P⟩ = ∫ K(t) e^{−iω₀(t−t₀)} |t⟩ dt` for a real envelope `K`.
//! Two envelopes are supported:
//!
//! * Gaussian, `K(t) = √Δω / π^{1/4} · exp(−(t−t₀)²Δω²/2)`, with `w = Δω`.
//! * One-sided exponential, `K(t) = √(2/τ) · exp(−(t−t₀)/τ)` for `t ≥ t₀`,
//!   with `w = τ`.
//!
//! Both are unit-normalized and have closed-form pairwise overlaps.
//!
//! The table holds the packets of the first period. With several periods of
//! length `Δt`, each packet `k` has a replica in period `p` centred at
//! `t₀ + p·Δt`; the flat packet index of that replica is `p·n_t + k`.
//! Packets in different periods are taken not to overlap at all.

use std::f64::consts::SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// Default cap on the total number of packets (all periods included).
pub const DEFAULT_MAX_PACKETS: usize = 40;

/// Absolute tolerance on each of `t`, `f`, `w` when looking for duplicates.
pub const DEDUP_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    #[default]
    Gaussian,
    Exponential,
}

/// Parameters of one wavepacket.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PacketDescriptor {
    pub index: usize,
    /// Central emission time.
    pub t: f64,
    /// Central angular frequency.
    pub f: f64,
    /// Width: `Δω` for Gaussians, decay time `τ` for exponentials.
    pub w: f64,
}

/// A packet of the table placed in a given period.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PacketRef {
    pub base: usize,
    pub period: usize,
}

impl PacketRef {
    /// Flat packet index for a table with `per_period` packets per period.
    pub fn flat(&self, per_period: usize) -> usize {
        self.period * per_period + self.base
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PacketTable {
    shape: Shape,
    packets: Vec<PacketDescriptor>,
    periods: usize,
    period_length: f64,
    max_packets: usize,
}

impl PacketTable {
    /// Table with a single period.
    pub fn new(shape: Shape) -> Self {
        PacketTable {
            shape,
            packets: Vec::new(),
            periods: 1,
            period_length: 0.0,
            max_packets: DEFAULT_MAX_PACKETS,
        }
    }

    /// Table split into `periods` time bins of length `period_length`.
    pub fn with_periods(shape: Shape, periods: usize, period_length: f64) -> Result<Self> {
        if periods == 0 {
            return Err(Error::InvalidParameter("at least one period is required".into()));
        }
        if periods > 1 && !(period_length > 0.0 && period_length.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "period length must be positive with {periods} periods, got {period_length}"
            )));
        }
        Ok(PacketTable {
            periods,
            period_length,
            ..Self::new(shape)
        })
    }

    pub fn with_max_packets(mut self, max: usize) -> Self {
        self.max_packets = max;
        self
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn periods(&self) -> usize {
        self.periods
    }

    pub fn period_length(&self) -> f64 {
        self.period_length
    }

    /// Packets per period, `n_t`.
    pub fn per_period(&self) -> usize {
        self.packets.len()
    }

    /// Total packet count over all periods, `n_D = n_t · periods`.
    pub fn total(&self) -> usize {
        self.packets.len() * self.periods
    }

    pub fn is_empty(&self) -> bool {
        self.packets.is_empty()
    }

    /// Packets of the first period, in insertion order.
    pub fn packets(&self) -> &[PacketDescriptor] {
        &self.packets
    }

    /// Descriptor of flat packet `i`, with its time shifted into its period.
    pub fn descriptor(&self, flat: usize) -> Result<PacketDescriptor> {
        if flat >= self.total() {
            return Err(Error::OutOfRange {
                what: "packet",
                value: flat,
                bound: self.total(),
            });
        }
        let n_t = self.per_period();
        let mut d = self.packets[flat % n_t];
        d.t += (flat / n_t) as f64 * self.period_length;
        Ok(d)
    }

    /// All descriptors, period-major.
    pub fn descriptors(&self) -> Vec<PacketDescriptor> {
        (0..self.total())
            .map(|i| self.descriptor(i).expect("index in range"))
            .collect()
    }

    /// Defines a packet and returns its index within the period.
    ///
    /// `n` is only a hint: indices are assigned in insertion order. A packet
    /// matching an existing entry within [`DEDUP_TOLERANCE`] reuses it. With
    /// several periods, a time falling in a later period refers to the replica
    /// of the matching first-period packet.
    pub fn def_packet(&mut self, n: usize, t: f64, f: f64, w: f64) -> Result<usize> {
        let _ = n;
        Ok(self.place(t, f, w)?.base)
    }

    /// Like [`PacketTable::def_packet`] but also returns the period the time
    /// falls into.
    pub fn place(&mut self, t: f64, f: f64, w: f64) -> Result<PacketRef> {
        if !(w > 0.0 && w.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "packet width must be positive, got {w}"
            )));
        }
        if !t.is_finite() || !f.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "packet time/frequency must be finite (t={t}, f={f})"
            )));
        }
        let (period, offset) = self.split_time(t)?;
        if let Some(base) = self.packets.iter().position(|p| {
            (p.t - offset).abs() <= DEDUP_TOLERANCE
                && (p.f - f).abs() <= DEDUP_TOLERANCE
                && (p.w - w).abs() <= DEDUP_TOLERANCE
        }) {
            return Ok(PacketRef { base, period });
        }
        if (self.packets.len() + 1) * self.periods > self.max_packets {
            return Err(Error::TableFull(self.max_packets));
        }
        let base = self.packets.len();
        self.packets.push(PacketDescriptor {
            index: base,
            t: offset,
            f,
            w,
        });
        Ok(PacketRef { base, period })
    }

    fn split_time(&self, t: f64) -> Result<(usize, f64)> {
        if self.periods == 1 {
            return Ok((0, t));
        }
        let p = (t / self.period_length).floor();
        if p < 0.0 || p >= self.periods as f64 {
            return Err(Error::InvalidParameter(format!(
                "time {t} lies outside the {} periods of length {}",
                self.periods, self.period_length
            )));
        }
        let p = p as usize;
        Ok((p, t - p as f64 * self.period_length))
    }

    /// Reorders the first-period packets; `order[i]` is the old index of the
    /// new packet `i`.
    pub(crate) fn reorder(&mut self, order: &[usize]) {
        let old = std::mem::take(&mut self.packets);
        self.packets = order
            .iter()
            .enumerate()
            .map(|(i, &o)| PacketDescriptor { index: i, ..old[o] })
            .collect();
    }

    pub fn overlap(&self, a: &PacketDescriptor, b: &PacketDescriptor) -> Complex64 {
        match self.shape {
            Shape::Gaussian => overlap_gaussian(a, b),
            Shape::Exponential => overlap_exponential(a, b),
        }
    }

    /// `n_t × n_t` overlap matrix of the first period.
    pub fn period_overlap(&self) -> Result<CMatrix> {
        if self.is_empty() {
            return Err(Error::InvalidParameter("packet table is empty".into()));
        }
        Ok(hermitian_from(&self.packets, |a, b| self.overlap(a, b)))
    }
}

/// Full `n_D × n_D` overlap matrix `Sᵢⱼ = ⟨Pᵢ|Pⱼ⟩`. Packets in different
/// periods get an exact zero.
pub fn build_overlap_matrix(table: &PacketTable) -> Result<CMatrix> {
    let block = table.period_overlap()?;
    let n_t = table.per_period();
    let n = table.total();
    Ok(CMatrix::from_fn(n, n, |i, j| {
        if i / n_t == j / n_t {
            block[(i % n_t, j % n_t)]
        } else {
            Complex64::default()
        }
    }))
}

fn hermitian_from(
    packets: &[PacketDescriptor],
    f: impl Fn(&PacketDescriptor, &PacketDescriptor) -> Complex64,
) -> CMatrix {
    let n = packets.len();
    let mut s = CMatrix::identity(n);
    for i in 0..n {
        for j in i + 1..n {
            let v = f(&packets[i], &packets[j]);
            s[(i, j)] = v;
            s[(j, i)] = v.conj();
        }
    }
    s
}

/// Closed-form overlap of two Gaussian packets:
/// `N · e^{−T(tᵢ−tⱼ)²} · e^{−W(ωᵢ−ωⱼ)²} · e^{−iφ(tᵢ−tⱼ)}`.
pub fn overlap_gaussian(a: &PacketDescriptor, b: &PacketDescriptor) -> Complex64 {
    let (wa2, wb2) = (a.w * a.w, b.w * b.w);
    let sum = wa2 + wb2;
    let t_coef = 0.5 * wa2 * wb2 / sum;
    let w_coef = 0.5 / sum;
    let phi = (wa2 * b.f + wb2 * a.f) / sum;
    let norm = SQRT_2 * (a.w * b.w).sqrt() / sum.sqrt();

    let dt = a.t - b.t;
    let df = a.f - b.f;
    let magnitude = norm * (-t_coef * dt * dt - w_coef * df * df).exp();
    Complex64::from_polar(magnitude, -phi * dt)
}

/// Closed-form overlap of two one-sided exponential packets.
///
/// With `γ = 1/τₐ + 1/τ_b − i(ωₐ−ω_b)` and `t* = max(tₐ, t_b)`:
///
/// ```text
/// ⟨Pₐ|P_b⟩ = 2/(√(τₐτ_b)·γ) · exp(−(t*−tₐ)/τₐ − (t*−t_b)/τ_b)
///            · exp(i[(ωₐ−ω_b)t* − ωₐtₐ + ω_b t_b])
/// ```
pub fn overlap_exponential(a: &PacketDescriptor, b: &PacketDescriptor) -> Complex64 {
    let gamma = Complex64::new(1.0 / a.w + 1.0 / b.w, -(a.f - b.f));
    let start = a.t.max(b.t);
    let decay = (-(start - a.t) / a.w - (start - b.t) / b.w).exp();
    let phase = (a.f - b.f) * start - a.f * a.t + b.f * b.t;
    Complex64::from_polar(2.0 * decay / (a.w * b.w).sqrt(), phase) / gamma
}
