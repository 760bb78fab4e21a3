//! Photon-level front end: photons and Bell pairs are declared together with
//! their wavepackets, and the circuit is assembled once the input is known.
//!
//! Circuit elements are recorded as they are declared and replayed after the
//! emitter when the input is sent, since the packet count (and hence the
//! matrix size) is only fixed at that point. Declaring the last detector
//! sends the input automatically.

use std::f64::consts::FRAC_1_SQRT_2;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circuit::{CircuitBuilder, DetectorSpec};
use crate::engine::{self, SimConfig};
use crate::error::{Error, Result};
use crate::packet::{PacketRef, PacketTable, Shape};
use crate::state::{FockState, LevelIndex};

pub const H: usize = 0;
pub const V: usize = 1;

/// Polarization-entangled two-photon states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BellKind {
    /// `(|HH⟩ + e^{iφ}|VV⟩)/√2`
    PhiPlus,
    /// `(|HH⟩ − e^{iφ}|VV⟩)/√2`
    PhiMinus,
    /// `(|HV⟩ + e^{iφ}|VH⟩)/√2`
    PsiPlus,
    /// `(|HV⟩ − e^{iφ}|VH⟩)/√2`
    PsiMinus,
}

impl BellKind {
    /// The two branches as (polarization in ch1, polarization in ch2, sign).
    fn branches(self) -> [(usize, usize, f64); 2] {
        match self {
            BellKind::PhiPlus => [(H, H, 1.0), (V, V, 1.0)],
            BellKind::PhiMinus => [(H, H, 1.0), (V, V, -1.0)],
            BellKind::PsiPlus => [(H, V, 1.0), (V, H, 1.0)],
            BellKind::PsiMinus => [(H, V, 1.0), (V, H, -1.0)],
        }
    }
}

impl FromStr for BellKind {
    type Err = Error;

    /// Accepts the snake-case names and the one-letter codes `p`, `m`, `s`,
    /// `a` (phi plus, phi minus, psi plus, psi minus).
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p" | "phi_plus" => Ok(BellKind::PhiPlus),
            "m" | "phi_minus" => Ok(BellKind::PhiMinus),
            "s" | "psi_plus" => Ok(BellKind::PsiPlus),
            "a" | "psi_minus" => Ok(BellKind::PsiMinus),
            other => Err(Error::InvalidParameter(format!("unknown Bell state '{other}'"))),
        }
    }
}

/// Linear circuit elements accepted by the device, angles in degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Element {
    Beamsplitter {
        ch1: usize,
        ch2: usize,
        theta: f64,
        phi: f64,
    },
    PhaseShifter {
        ch: usize,
        phi: f64,
    },
    Delay {
        ch: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Slot {
    ch: usize,
    pol: usize,
    packet: PacketRef,
}

#[derive(Debug, Clone)]
struct Sent {
    circuit: CircuitBuilder,
    input: FockState,
}

/// Input photons, their wavepackets and the circuit they enter.
#[derive(Debug, Clone)]
pub struct QODevice {
    channels: usize,
    polarizations: usize,
    table: PacketTable,
    order_by_time: bool,
    pending: Vec<(Complex64, Vec<Slot>)>,
    elements: Vec<Element>,
    detectors: Vec<DetectorSpec>,
    sent: Option<Sent>,
    // New base index of each declared packet, once sorted by time.
    new_base: Option<Vec<usize>>,
}

impl QODevice {
    /// Device with Gaussian packets and a single period.
    pub fn new(channels: usize, polarizations: usize) -> Result<Self> {
        Self::with_table(channels, polarizations, PacketTable::new(Shape::Gaussian))
    }

    /// Device using `table` for its packets. The table may already hold
    /// packets; photons can refer to them by parameters.
    pub fn with_table(channels: usize, polarizations: usize, table: PacketTable) -> Result<Self> {
        // Validates the counts.
        LevelIndex::new(channels, polarizations, 1)?;
        Ok(QODevice {
            channels,
            polarizations,
            table,
            order_by_time: false,
            pending: vec![(Complex64::new(1.0, 0.0), Vec::new())],
            elements: Vec::new(),
            detectors: Vec::new(),
            sent: None,
            new_base: None,
        })
    }

    /// Sort packets by emission time before orthonormalizing, so that the
    /// earliest packet leads. By default the first declared packet leads.
    pub fn order_by_time(mut self, yes: bool) -> Self {
        self.order_by_time = yes;
        self
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn polarizations(&self) -> usize {
        self.polarizations
    }

    pub fn table(&self) -> &PacketTable {
        &self.table
    }

    pub fn is_sent(&self) -> bool {
        self.sent.is_some()
    }

    fn check_open(&self) -> Result<()> {
        if self.sent.is_some() {
            Err(Error::AlreadySent)
        } else {
            Ok(())
        }
    }

    fn check_channel(&self, ch: usize) -> Result<()> {
        if ch < self.channels {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                what: "channel",
                value: ch,
                bound: self.channels,
            })
        }
    }

    fn check_pol(&self, pol: usize) -> Result<()> {
        if pol < self.polarizations {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                what: "polarization",
                value: pol,
                bound: self.polarizations,
            })
        }
    }

    /// Adds `n` photons on (`ch`, `pol`) in the packet `(t, f, w)` and returns
    /// where that packet sits. `n = 0` only declares the packet.
    pub fn add_photons(&mut self, n: u32, ch: usize, pol: usize, t: f64, f: f64, w: f64) -> Result<PacketRef> {
        self.check_open()?;
        self.check_channel(ch)?;
        self.check_pol(pol)?;
        let packet = self.table.place(t, f, w)?;
        let slot = Slot { ch, pol, packet };
        for (_, slots) in &mut self.pending {
            slots.extend(std::iter::repeat_n(slot, n as usize));
        }
        Ok(packet)
    }

    /// Adds a polarization Bell pair on `ch1`, `ch2`. `a` and `b` are the
    /// `(t, f, w)` packets of the two photons; `phase` (radians) multiplies
    /// the second branch.
    pub fn add_bell_pair(
        &mut self,
        ch1: usize,
        ch2: usize,
        kind: BellKind,
        phase: f64,
        a: [f64; 3],
        b: [f64; 3],
    ) -> Result<(PacketRef, PacketRef)> {
        self.check_open()?;
        if self.polarizations != 2 {
            return Err(Error::InvalidParameter(format!(
                "Bell pairs need two polarizations, device has {}",
                self.polarizations
            )));
        }
        self.check_channel(ch1)?;
        self.check_channel(ch2)?;
        if ch1 == ch2 {
            return Err(Error::InvalidParameter(format!(
                "Bell pair needs two distinct channels, got {ch1} twice"
            )));
        }
        let pa = self.table.place(a[0], a[1], a[2])?;
        let pb = self.table.place(b[0], b[1], b[2])?;

        let [first, second] = kind.branches();
        let branch_amps = [
            Complex64::new(FRAC_1_SQRT_2 * first.2, 0.0),
            Complex64::from_polar(FRAC_1_SQRT_2 * second.2, phase),
        ];
        let mut next = Vec::with_capacity(self.pending.len() * 2);
        for (amp, slots) in &self.pending {
            for ((p1, p2, _), ba) in [first, second].into_iter().zip(branch_amps) {
                let mut s = slots.clone();
                s.push(Slot {
                    ch: ch1,
                    pol: p1,
                    packet: pa,
                });
                s.push(Slot {
                    ch: ch2,
                    pol: p2,
                    packet: pb,
                });
                next.push((amp * ba, s));
            }
        }
        self.pending = next;
        Ok((pa, pb))
    }

    fn push_element(&mut self, e: Element) -> Result<&mut Self> {
        self.check_open()?;
        match e {
            Element::Beamsplitter { ch1, ch2, .. } => {
                self.check_channel(ch1)?;
                self.check_channel(ch2)?;
                if ch1 == ch2 {
                    return Err(Error::InvalidParameter(format!(
                        "beamsplitter needs two distinct channels, got {ch1} twice"
                    )));
                }
            }
            Element::PhaseShifter { ch, .. } => self.check_channel(ch)?,
            Element::Delay { ch } => {
                self.check_channel(ch)?;
                if self.table.periods() < 2 {
                    return Err(Error::NoRoomToDelay(self.table.periods()));
                }
            }
        }
        self.elements.push(e);
        Ok(self)
    }

    pub fn beamsplitter(&mut self, ch1: usize, ch2: usize, theta_deg: f64, phi_deg: f64) -> Result<&mut Self> {
        self.push_element(Element::Beamsplitter {
            ch1,
            ch2,
            theta: theta_deg,
            phi: phi_deg,
        })
    }

    pub fn phase_shifter(&mut self, ch: usize, phi_deg: f64) -> Result<&mut Self> {
        self.push_element(Element::PhaseShifter { ch, phi: phi_deg })
    }

    pub fn delay(&mut self, ch: usize) -> Result<&mut Self> {
        self.push_element(Element::Delay { ch })
    }

    /// Declares a detector. Once every channel has one, the input is sent.
    pub fn detector(&mut self, ch: usize, condition: Option<u32>) -> Result<&mut Self> {
        self.check_open()?;
        self.check_channel(ch)?;
        if self.detectors.iter().any(|d| d.channel == ch) {
            return Err(Error::DuplicateDetector(ch));
        }
        self.detectors.push(DetectorSpec { channel: ch, condition });
        if self.detectors.len() == self.channels {
            self.send_to_circuit()?;
        }
        Ok(self)
    }

    /// Orthonormalizes the packets, builds the circuit and the input state.
    /// Input kets are written over the declared packets; the emitter at the
    /// front of the circuit maps them to the orthonormal basis.
    pub fn send_to_circuit(&mut self) -> Result<&FockState> {
        self.check_open()?;
        if self.table.is_empty() {
            return Err(Error::InvalidParameter("no packets declared".into()));
        }
        if self.order_by_time {
            self.sort_packets();
        }
        let levels = LevelIndex::new(self.channels, self.polarizations, self.table.total())?;
        let mut circuit = CircuitBuilder::with_periods(levels, self.table.periods())?;
        circuit.emitter_from_table(&self.table)?;
        for e in &self.elements {
            match *e {
                Element::Beamsplitter { ch1, ch2, theta, phi } => circuit.beamsplitter(ch1, ch2, theta, phi)?,
                Element::PhaseShifter { ch, phi } => circuit.phase_shifter(ch, phi)?,
                Element::Delay { ch } => circuit.delay(ch)?,
            };
        }
        for d in &self.detectors {
            circuit.detector(d.channel, d.condition)?;
        }

        let n_t = self.table.per_period();
        let mut entries = Vec::with_capacity(self.pending.len());
        for (amp, slots) in &self.pending {
            let mut occ = vec![0i64; levels.dim()];
            for s in slots {
                occ[levels.level_of(s.ch, s.pol, s.packet.flat(n_t))?] += 1;
            }
            entries.push((*amp, occ));
        }
        let input = FockState::new(levels, entries)?;
        let sent = self.sent.insert(Sent { circuit, input });
        Ok(&sent.input)
    }

    fn sort_packets(&mut self) {
        let mut order: Vec<usize> = (0..self.table.per_period()).collect();
        let packets = self.table.packets();
        order.sort_by(|&a, &b| packets[a].t.total_cmp(&packets[b].t));
        let mut new_of_old = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            new_of_old[old] = new;
        }
        self.table.reorder(&order);
        for (_, slots) in &mut self.pending {
            for s in slots {
                s.packet.base = new_of_old[s.packet.base];
            }
        }
        self.new_base = Some(new_of_old);
    }

    /// Where a packet returned by [`QODevice::add_photons`] ended up after
    /// sending; differs only when packets were sorted by time.
    pub fn resolve(&self, packet: PacketRef) -> PacketRef {
        match &self.new_base {
            Some(map) => PacketRef {
                base: map[packet.base],
                ..packet
            },
            None => packet,
        }
    }

    fn sent(&self) -> Result<&Sent> {
        self.sent.as_ref().ok_or(Error::NotSent)
    }

    pub fn circuit(&self) -> Result<&CircuitBuilder> {
        Ok(&self.sent()?.circuit)
    }

    pub fn input(&self) -> Result<&FockState> {
        Ok(&self.sent()?.input)
    }

    pub fn levels(&self) -> Result<LevelIndex> {
        Ok(*self.sent()?.circuit.levels())
    }

    /// Runs the sent input through the circuit.
    pub fn run(&self, cfg: &SimConfig) -> Result<FockState> {
        let sent = self.sent()?;
        engine::run(sent.circuit.total(), &sent.input, cfg)
    }
}
