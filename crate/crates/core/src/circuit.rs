//! Circuit matrices.
//!
//! The circuit is a `d × d` matrix `U` acting on creation operators,
//! `a†ⱼ → Σₖ Uₖⱼ a†ₖ`. Each element left-multiplies the running total, so
//! elements act on the input in the order they are added.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{modified_cholesky, CMatrix, DEFAULT_CLIP_EPSILON, ZERO};
use crate::packet::PacketTable;
use crate::state::LevelIndex;

/// Default bound on the orthonormalization row-norm error.
pub const DEFAULT_ROW_NORM_BOUND: f64 = 1e-6;

/// Detector on one channel, optionally post-selecting an exact photon count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DetectorSpec {
    pub channel: usize,
    pub condition: Option<u32>,
}

#[derive(Debug, Clone)]
pub struct CircuitBuilder {
    levels: LevelIndex,
    periods: usize,
    total: CMatrix,
    detectors: Vec<DetectorSpec>,
    emitter_applied: bool,
    clip_epsilon: f64,
    row_norm_bound: f64,
    row_norm_error: Option<f64>,
}

impl CircuitBuilder {
    /// Single-period circuit over `levels`.
    pub fn new(levels: LevelIndex) -> Self {
        CircuitBuilder {
            levels,
            periods: 1,
            total: CMatrix::identity(levels.dim()),
            detectors: Vec::new(),
            emitter_applied: false,
            clip_epsilon: DEFAULT_CLIP_EPSILON,
            row_norm_bound: DEFAULT_ROW_NORM_BOUND,
            row_norm_error: None,
        }
    }

    /// Circuit whose packet index is split into `periods` equal groups.
    pub fn with_periods(levels: LevelIndex, periods: usize) -> Result<Self> {
        if periods == 0 || !levels.packets().is_multiple_of(periods) {
            return Err(Error::InvalidParameter(format!(
                "{} packets cannot be split into {periods} periods",
                levels.packets()
            )));
        }
        Ok(CircuitBuilder {
            periods,
            ..Self::new(levels)
        })
    }

    pub fn with_clip_epsilon(mut self, epsilon: f64) -> Self {
        self.clip_epsilon = epsilon;
        self
    }

    pub fn with_row_norm_bound(mut self, bound: f64) -> Self {
        self.row_norm_bound = bound;
        self
    }

    pub fn levels(&self) -> &LevelIndex {
        &self.levels
    }

    pub fn periods(&self) -> usize {
        self.periods
    }

    /// Packets per period.
    pub fn per_period(&self) -> usize {
        self.levels.packets() / self.periods
    }

    pub fn total(&self) -> &CMatrix {
        &self.total
    }

    pub fn detectors(&self) -> &[DetectorSpec] {
        &self.detectors
    }

    pub fn emitter_applied(&self) -> bool {
        self.emitter_applied
    }

    /// Row-norm error of the last overlap-based emitter, if any.
    pub fn row_norm_error(&self) -> Option<f64> {
        self.row_norm_error
    }

    /// True once every channel has a detector.
    pub fn is_sealed(&self) -> bool {
        self.detectors.len() == self.levels.channels()
    }

    fn check_open(&self) -> Result<()> {
        if self.is_sealed() {
            Err(Error::Sealed)
        } else {
            Ok(())
        }
    }

    fn check_channel(&self, ch: usize) -> Result<()> {
        if ch < self.levels.channels() {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                what: "channel",
                value: ch,
                bound: self.levels.channels(),
            })
        }
    }

    /// Replaces the rows listed in `rows` by `block · rows`.
    fn mix_rows(&mut self, rows: &[usize], block: &CMatrix) {
        let old: Vec<Vec<Complex64>> = rows.iter().map(|&r| self.total.row(r).to_vec()).collect();
        let d = self.total.cols();
        for (bi, &r) in rows.iter().enumerate() {
            for c in 0..d {
                let mut acc = ZERO;
                for (bj, row) in old.iter().enumerate() {
                    acc += block[(bi, bj)] * row[c];
                }
                self.total[(r, c)] = acc;
            }
        }
    }

    /// Beamsplitter between `ch1` and `ch2`, angles in degrees:
    ///
    /// ```text
    /// ⎡ cos θ        −e^{iφ} sin θ ⎤
    /// ⎣ e^{−iφ} sin θ    cos θ     ⎦
    /// ```
    ///
    /// applied to every (polarization, packet) sublevel pair.
    pub fn beamsplitter(&mut self, ch1: usize, ch2: usize, theta_deg: f64, phi_deg: f64) -> Result<&mut Self> {
        self.check_open()?;
        self.check_channel(ch1)?;
        self.check_channel(ch2)?;
        if ch1 == ch2 {
            return Err(Error::InvalidParameter(format!(
                "beamsplitter needs two distinct channels, got {ch1} twice"
            )));
        }
        let (theta, phi) = (theta_deg.to_radians(), phi_deg.to_radians());
        let (c, s) = (theta.cos(), theta.sin());
        let block = CMatrix::from_rows(vec![
            vec![Complex64::new(c, 0.0), -Complex64::from_polar(s, phi)],
            vec![Complex64::from_polar(s, -phi), Complex64::new(c, 0.0)],
        ])?;
        for (l1, l2) in self.levels.channel_levels(ch1).zip(self.levels.channel_levels(ch2)) {
            self.mix_rows(&[l1, l2], &block);
        }
        Ok(self)
    }

    /// Multiplies every sublevel of `ch` by `e^{iφ}`, angle in degrees.
    pub fn phase_shifter(&mut self, ch: usize, phi_deg: f64) -> Result<&mut Self> {
        self.check_open()?;
        self.check_channel(ch)?;
        let factor = Complex64::from_polar(1.0, phi_deg.to_radians());
        for l in self.levels.channel_levels(ch) {
            for c in 0..self.total.cols() {
                self.total[(l, c)] *= factor;
            }
        }
        Ok(self)
    }

    /// Emitter from Gram-Schmidt coefficients.
    ///
    /// `g[i][j]` is the weight of orthonormal packet `j` in input packet `i`,
    /// `|Pᵢ⟩ = Σⱼ gᵢⱼ |P̃ⱼ⟩`. The same map is used in every channel,
    /// polarization and period.
    pub fn emitter_from_coeffs(&mut self, g: &CMatrix) -> Result<&mut Self> {
        self.check_open()?;
        if self.emitter_applied {
            return Err(Error::EmitterAlreadyApplied);
        }
        let n_t = self.per_period();
        if g.rows() != n_t || g.cols() != n_t {
            return Err(Error::Dimension(format!(
                "emitter needs a {n_t}x{n_t} coefficient matrix, got {}x{}",
                g.rows(),
                g.cols()
            )));
        }
        if !g.is_lower_triangular(1e-12) {
            return Err(Error::NotLowerTriangular);
        }
        let block = g.transpose();
        for ch in 0..self.levels.channels() {
            for pol in 0..self.levels.polarizations() {
                for p in 0..self.periods {
                    let rows: Vec<usize> = (0..n_t)
                        .map(|k| self.levels.level_of(ch, pol, p * n_t + k))
                        .collect::<Result<_>>()?;
                    self.mix_rows(&rows, &block);
                }
            }
        }
        self.emitter_applied = true;
        Ok(self)
    }

    /// Emitter from the single-period overlap matrix `Sᵢⱼ = ⟨Pᵢ|Pⱼ⟩`.
    ///
    /// The coefficients come from a (modified) Cholesky factor `L` of `S`:
    /// `gᵢⱼ = conj(Lᵢⱼ)`. Fails if the factor's rows deviate from unit norm by
    /// more than the configured bound.
    pub fn emitter_from_overlap(&mut self, s: &CMatrix) -> Result<&mut Self> {
        self.check_open()?;
        if self.emitter_applied {
            return Err(Error::EmitterAlreadyApplied);
        }
        let fact = modified_cholesky(s, self.clip_epsilon)?;
        if fact.row_norm_error > self.row_norm_bound {
            return Err(Error::RowNormExceeded {
                error: fact.row_norm_error,
                bound: self.row_norm_bound,
            });
        }
        self.emitter_from_coeffs(&fact.factor.conj())?;
        self.row_norm_error = Some(fact.row_norm_error);
        Ok(self)
    }

    /// Emitter configured from a packet table. Returns, for each packet of the
    /// period, its index in the circuit.
    pub fn emitter_from_table(&mut self, table: &PacketTable) -> Result<Vec<usize>> {
        if table.per_period() != self.per_period() || table.periods() != self.periods {
            return Err(Error::Dimension(format!(
                "table has {} packets x {} periods, circuit expects {} x {}",
                table.per_period(),
                table.periods(),
                self.per_period(),
                self.periods
            )));
        }
        let s = table.period_overlap()?;
        self.emitter_from_overlap(&s)?;
        Ok((0..table.per_period()).collect())
    }

    /// Delays channel `ch` by one period: orthonormal packet `j` moves to
    /// `j + n_t`. Packets already in the last period are lost.
    pub fn delay(&mut self, ch: usize) -> Result<&mut Self> {
        self.check_open()?;
        self.check_channel(ch)?;
        if self.periods < 2 {
            return Err(Error::NoRoomToDelay(self.periods));
        }
        if !self.emitter_applied {
            return Err(Error::EmitterMissing);
        }
        let n_t = self.per_period();
        let n_d = self.levels.packets();
        let d = self.total.cols();
        for pol in 0..self.levels.polarizations() {
            let base = self.levels.level_of(ch, pol, 0)?;
            for k in (0..n_d).rev() {
                for c in 0..d {
                    self.total[(base + k, c)] = if k >= n_t {
                        self.total[(base + k - n_t, c)]
                    } else {
                        ZERO
                    };
                }
            }
        }
        Ok(self)
    }

    /// Declares a detector on `ch`, optionally post-selecting `condition`
    /// photons there.
    pub fn detector(&mut self, ch: usize, condition: Option<u32>) -> Result<&mut Self> {
        self.check_channel(ch)?;
        if self.detectors.iter().any(|d| d.channel == ch) {
            return Err(Error::DuplicateDetector(ch));
        }
        self.detectors.push(DetectorSpec { channel: ch, condition });
        Ok(self)
    }
}
