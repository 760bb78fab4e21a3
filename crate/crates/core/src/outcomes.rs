//! Post-selection, probability distributions and density matrices.
//!
//! Detectors with a photon-count condition record which levels of their
//! channel were hit. Each distinct record is a classical outcome, so the
//! branches it defines add incoherently. Channels without a condition keep
//! their full level content, packet labels included.

use std::collections::BTreeMap;
use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;

use crate::circuit::DetectorSpec;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, CMatrix, ZERO};
use crate::state::{render_pattern, FockState, LevelIndex, Occupation};

/// Probabilities below this are left out of distributions.
pub const PROBABILITY_FLOOR: f64 = 1e-12;

/// One post-selected measurement record.
#[derive(Debug, Clone, PartialEq)]
pub struct Branch {
    /// Occupations of the levels of the conditioned channels, in level order.
    pub record: Occupation,
    /// Conditional state, normalized.
    pub state: FockState,
    /// Probability of the record.
    pub weight: f64,
}

fn conditioned(detectors: &[DetectorSpec]) -> Vec<(usize, u32)> {
    detectors
        .iter()
        .filter_map(|d| d.condition.map(|c| (d.channel, c)))
        .collect()
}

fn passes(levels: &LevelIndex, occ: &[u32], conds: &[(usize, u32)]) -> bool {
    conds
        .iter()
        .all(|&(ch, n)| occ[levels.channel_levels(ch)].iter().sum::<u32>() == n)
}

/// Splits `output` into branches, one per distinct content of the
/// conditioned channels among the kets that meet every condition.
pub fn postselect(output: &FockState, detectors: &[DetectorSpec]) -> Vec<Branch> {
    let levels = *output.levels();
    let conds = conditioned(detectors);
    let mut watched: Vec<usize> = conds.iter().flat_map(|&(ch, _)| levels.channel_levels(ch)).collect();
    watched.sort_unstable();

    let mut groups: BTreeMap<std::cmp::Reverse<Occupation>, Vec<(Complex64, Vec<i64>)>> = BTreeMap::new();
    for k in output.kets() {
        if !passes(&levels, &k.occupations, &conds) {
            continue;
        }
        let record: Occupation = watched.iter().map(|&l| k.occupations[l]).collect();
        groups
            .entry(std::cmp::Reverse(record))
            .or_default()
            .push((k.amplitude, k.occupations.iter().map(|&n| n as i64).collect()));
    }
    groups
        .into_iter()
        .filter_map(|(std::cmp::Reverse(record), entries)| {
            let state = FockState::new(levels, entries).expect("kets come from a valid state");
            let weight = state.norm2();
            (weight > 0.0).then(|| Branch {
                record,
                state: state.normalized(),
                weight,
            })
        })
        .collect()
}

/// A measured outcome and its probability.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Outcome {
    pub label: String,
    /// Photon counts per channel, or per level for resolved distributions.
    pub pattern: Vec<u32>,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct Distribution {
    entries: Vec<Outcome>,
}

impl Distribution {
    fn from_map(map: BTreeMap<std::cmp::Reverse<Vec<u32>>, f64>, label: impl Fn(&[u32]) -> String) -> Self {
        let entries = map
            .into_iter()
            .filter(|(_, p)| *p >= PROBABILITY_FLOOR)
            .map(|(std::cmp::Reverse(pattern), probability)| Outcome {
                label: label(&pattern),
                pattern,
                probability,
            })
            .collect();
        Distribution { entries }
    }

    pub fn entries(&self) -> &[Outcome] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Probability of `label`, zero if absent.
    pub fn get(&self, label: &str) -> f64 {
        self.entries
            .iter()
            .find(|e| e.label == label)
            .map_or(0.0, |e| e.probability)
    }

    /// Probability of a pattern, zero if absent.
    pub fn probability(&self, pattern: &[u32]) -> f64 {
        self.entries
            .iter()
            .find(|e| e.pattern == pattern)
            .map_or(0.0, |e| e.probability)
    }

    pub fn total(&self) -> f64 {
        self.entries.iter().map(|e| e.probability).sum()
    }

    /// Distribution of a channel-pattern distribution over the channels in
    /// `keep`, in that order.
    pub fn marginal(&self, keep: &[usize]) -> Distribution {
        let mut map = BTreeMap::new();
        for e in &self.entries {
            let sub: Vec<u32> = keep.iter().map(|&c| e.pattern[c]).collect();
            *map.entry(std::cmp::Reverse(sub)).or_insert(0.0) += e.probability;
        }
        Distribution::from_map(map, render_pattern)
    }

    /// Writes `label,probability` rows with a header.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let io = |e: csv::Error| Error::Scenario(e.to_string());
        out.write_record(["label", "probability"]).map_err(io)?;
        for e in &self.entries {
            out.write_record([e.label.as_str(), &e.probability.to_string()])
                .map_err(io)?;
        }
        out.flush().map_err(|e| Error::Scenario(e.to_string()))
    }
}

/// Probability of each channel-count pattern among kets meeting the
/// detector conditions.
pub fn distribution(output: &FockState, detectors: &[DetectorSpec]) -> Distribution {
    let levels = *output.levels();
    let conds = conditioned(detectors);
    let mut map = BTreeMap::new();
    for k in output.kets() {
        if passes(&levels, &k.occupations, &conds) {
            *map.entry(std::cmp::Reverse(levels.channel_counts(&k.occupations)))
                .or_insert(0.0) += k.amplitude.norm_sqr();
        }
    }
    Distribution::from_map(map, render_pattern)
}

/// Probability of each output ket, labelled with its levels.
pub fn resolved_distribution(output: &FockState, detectors: &[DetectorSpec]) -> Distribution {
    let levels = *output.levels();
    let conds = conditioned(detectors);
    let mut map = BTreeMap::new();
    for k in output.kets() {
        if passes(&levels, &k.occupations, &conds) {
            *map.entry(std::cmp::Reverse(k.occupations.clone())).or_insert(0.0) += k.amplitude.norm_sqr();
        }
    }
    Distribution::from_map(map, |occ| levels.render(occ))
}

/// Probability that levels `a` and `b` are both occupied (twice occupied if
/// they are the same level).
pub fn coincidence(output: &FockState, a: usize, b: usize) -> f64 {
    output
        .kets()
        .iter()
        .filter(|k| {
            let (na, nb) = (k.occupations[a], k.occupations[b]);
            if a == b {
                na >= 2
            } else {
                na >= 1 && nb >= 1
            }
        })
        .map(|k| k.amplitude.norm_sqr())
        .sum()
}

/// Density matrix over a set of channels.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    labels: Vec<String>,
    basis: Vec<Occupation>,
    matrix: CMatrix,
}

impl DensityMatrix {
    /// Basis kets as full-length occupation vectors, zero outside the kept
    /// channels.
    pub fn basis(&self) -> &[Occupation] {
        &self.basis
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `ρ[row, col]` by basis labels; zero for labels outside the basis.
    pub fn get(&self, row: &str, col: &str) -> Complex64 {
        match (self.index_of(row), self.index_of(col)) {
            (Some(r), Some(c)) => self.matrix[(r, c)],
            _ => ZERO,
        }
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        let n = self.dim();
        let mut s = 0.0;
        for r in 0..n {
            for c in 0..n {
                s += (self.matrix[(r, c)] * self.matrix[(c, r)]).re;
            }
        }
        s
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(hermitian_eig(&self.matrix)?.0)
    }

    /// Sums out packet labels: entries whose kets differ only in packets are
    /// added when both sides carry the same packets per channel. This is the
    /// partial trace over packets when each channel holds at most one photon.
    pub fn reduce_packets(&self, levels: &LevelIndex) -> DensityMatrix {
        let n_p = levels.polarizations();
        let n_d = levels.packets();
        let mode = |occ: &[u32]| -> Vec<u32> {
            (0..levels.channels() * n_p)
                .map(|m| occ[m * n_d..(m + 1) * n_d].iter().sum())
                .collect()
        };
        let packets = |occ: &[u32]| -> Vec<u32> {
            let mut v = vec![0u32; levels.channels() * n_d];
            for (l, &n) in occ.iter().enumerate() {
                let t = levels.tuple_of(l).expect("level in range");
                v[t.channel * n_d + t.packet] += n;
            }
            v
        };
        let modes: Vec<Vec<u32>> = self.basis.iter().map(|o| mode(o)).collect();
        let pks: Vec<Vec<u32>> = self.basis.iter().map(|o| packets(o)).collect();
        let mut keys: Vec<Vec<u32>> = modes.clone();
        keys.sort_by(|a, b| b.cmp(a));
        keys.dedup();
        let pos = |m: &Vec<u32>| keys.iter().position(|k| k == m).expect("key present");

        let mut matrix = CMatrix::zeros(keys.len(), keys.len());
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                if pks[a] == pks[b] {
                    matrix[(pos(&modes[a]), pos(&modes[b]))] += self.matrix[(a, b)];
                }
            }
        }
        let labels = keys.iter().map(|k| render_modes(k, n_p)).collect();
        let basis = keys.clone();
        DensityMatrix { labels, basis, matrix }
    }

    /// Header row of labels, then one row per basis ket with `re,im` pairs.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let io = |e: csv::Error| Error::Scenario(e.to_string());
        let mut header = vec!["ket".to_string()];
        for l in &self.labels {
            header.push(format!("{l} re"));
            header.push(format!("{l} im"));
        }
        out.write_record(&header).map_err(io)?;
        for (r, l) in self.labels.iter().enumerate() {
            let mut row = vec![l.clone()];
            for c in 0..self.dim() {
                row.push(self.matrix[(r, c)].re.to_string());
                row.push(self.matrix[(r, c)].im.to_string());
            }
            out.write_record(&row).map_err(io)?;
        }
        out.flush().map_err(|e| Error::Scenario(e.to_string()))
    }
}

impl std::fmt::Display for DensityMatrix {
    /// Real parts, one row per basis ket.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let width = self.labels.iter().map(String::len).max().unwrap_or(0);
        for (r, l) in self.labels.iter().enumerate() {
            write!(f, " {l:<width$}")?;
            for c in 0..self.dim() {
                write!(f, " {:>7.4}", self.matrix[(r, c)].re)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn render_modes(counts: &[u32], n_p: usize) -> String {
    let mut parts = Vec::new();
    for (m, &n) in counts.iter().enumerate() {
        let (ch, pol) = (m / n_p, m % n_p);
        let letter = match pol {
            0 => "H".to_string(),
            1 => "V".to_string(),
            p => format!("P{p}"),
        };
        parts.extend(std::iter::repeat_n(format!("{letter}{ch}"), n as usize));
    }
    format!("| {} >", parts.join(", "))
}

/// Density matrix of the channels in `keep`, mixing the branches with their
/// weights and tracing out every other channel. Normalized to unit trace.
pub fn density_matrix(branches: &[Branch], keep: &[usize]) -> Result<DensityMatrix> {
    let total: f64 = branches.iter().map(|b| b.weight).sum();
    if branches.is_empty() || total <= 0.0 {
        return Err(Error::ZeroProbability);
    }
    let levels = *branches[0].state.levels();
    for &ch in keep {
        if ch >= levels.channels() {
            return Err(Error::OutOfRange {
                what: "channel",
                value: ch,
                bound: levels.channels(),
            });
        }
    }
    let mut kept = vec![false; levels.dim()];
    for &ch in keep {
        for l in levels.channel_levels(ch) {
            kept[l] = true;
        }
    }
    let split = |occ: &[u32]| -> (Occupation, Occupation) {
        let mut a = occ.to_vec();
        let mut b = occ.to_vec();
        for (l, &k) in kept.iter().enumerate() {
            if k {
                b[l] = 0;
            } else {
                a[l] = 0;
            }
        }
        (a, b)
    };

    // Per branch: environment content -> list of (kept ket, amplitude).
    let mut basis: Vec<Occupation> = Vec::new();
    let mut parts = Vec::new();
    for br in branches {
        let mut env: BTreeMap<Occupation, Vec<(Occupation, Complex64)>> = BTreeMap::new();
        for k in br.state.kets() {
            let (sys, rest) = split(&k.occupations);
            basis.push(sys.clone());
            env.entry(rest).or_default().push((sys, k.amplitude));
        }
        parts.push((br.weight / total, env));
    }
    basis.sort_by(|a, b| b.cmp(a));
    basis.dedup();
    let index = |o: &Occupation| basis.binary_search_by(|p| o.cmp(p)).expect("ket in basis");

    let mut matrix = CMatrix::zeros(basis.len(), basis.len());
    for (w, env) in &parts {
        for terms in env.values() {
            for (a, za) in terms {
                for (b, zb) in terms {
                    matrix[(index(a), index(b))] += za * zb.conj() * *w;
                }
            }
        }
    }
    let tr = matrix.trace().re;
    if tr <= 0.0 {
        return Err(Error::ZeroProbability);
    }
    let matrix = matrix.scale(Complex64::new(1.0 / tr, 0.0));
    let labels = basis.iter().map(|o| levels.render(o)).collect();
    Ok(DensityMatrix { labels, basis, matrix })
}

/// Channels without a post-selection condition.
pub fn unconditioned_channels(levels: &LevelIndex, detectors: &[DetectorSpec]) -> Vec<usize> {
    (0..levels.channels())
        .filter(|ch| !detectors.iter().any(|d| d.channel == *ch && d.condition.is_some()))
        .collect()
}
