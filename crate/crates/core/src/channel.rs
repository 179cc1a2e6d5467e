//! Six-qubit channel states shared between the near qubits {2, 4, 6} and the
//! distant qubits {7, 8, 9}.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::angle::EntanglementAngle;
use crate::error::{Error, Result};
use crate::linalg::{c, DensityOperator, Label, LinearOperator, QubitMap, StateVector, C64};
use crate::protocol::{correction_for, Outcome};

/// Channel register in slot order.
pub const CHANNEL_QUBITS: [Label; 6] = [2, 4, 6, 7, 8, 9];
/// Qubits carrying the input state.
pub const INPUT_QUBITS: [Label; 3] = [1, 3, 5];
/// Qubits measured by the sender.
pub const NEAR_QUBITS: [Label; 6] = [1, 2, 3, 4, 5, 6];
/// Receiver's qubits.
pub const DISTANT_QUBITS: [Label; 3] = [7, 8, 9];

const EPR3_PARTS: [&[Label]; 3] = [&[2, 7], &[4, 8], &[6, 9]];
const GHZ2_PARTS: [&[Label]; 2] = [&[2, 6, 8], &[4, 7, 9]];
const EPR3_MEASURED: [&[Label]; 3] = [&[1, 2], &[3, 4], &[5, 6]];
const GHZ2_MEASURED: [&[Label]; 2] = [&[1, 4, 5], &[2, 3, 6]];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    /// Three EPR-like pairs, three pair measurements.
    Epr3,
    /// Two GHZ-like triples in the alternating geometry, two triple measurements.
    Ghz2,
}

impl Scheme {
    pub const ALL: [Scheme; 2] = [Scheme::Epr3, Scheme::Ghz2];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Epr3 => "epr3",
            Scheme::Ghz2 => "ghz2",
        }
    }

    /// Wired channel parts; the first label of each part is a near qubit.
    pub fn channel_parts(self) -> &'static [&'static [Label]] {
        match self {
            Scheme::Epr3 => &EPR3_PARTS,
            Scheme::Ghz2 => &GHZ2_PARTS,
        }
    }

    /// Groups of near qubits measured jointly.
    pub fn measured_groups(self) -> &'static [&'static [Label]] {
        match self {
            Scheme::Epr3 => &EPR3_MEASURED,
            Scheme::Ghz2 => &GHZ2_MEASURED,
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "epr3" | "3-epr" | "epr" => Ok(Scheme::Epr3),
            "ghz2" | "2-ghz" | "ghz" => Ok(Scheme::Ghz2),
            other => Err(Error::InvalidArgument(format!("unknown scheme '{other}'"))),
        }
    }
}

/// Receiver-side correction chosen from the announced outcome.
pub type CorrectionRule = fn(&Outcome) -> LinearOperator;

#[derive(Debug, Clone, Copy)]
pub struct SchemeConfig {
    pub scheme: Scheme,
    /// Channel parts are `cos(theta)|0..0> + sin(theta)|1..1>`.
    pub channel_angle: EntanglementAngle,
    /// Measurement bases use `b0 = cos(phi)`, `b1 = sin(phi)`.
    pub measurement_angle: EntanglementAngle,
    pub corrections: CorrectionRule,
}

impl SchemeConfig {
    pub fn new(scheme: Scheme, theta: f64, phi: f64) -> Result<Self> {
        Ok(Self {
            scheme,
            channel_angle: EntanglementAngle::named("channel angle", theta)?,
            measurement_angle: EntanglementAngle::named("measurement angle", phi)?,
            corrections: correction_for,
        })
    }

    /// Maximally entangled channel and measurements.
    pub fn ideal(scheme: Scheme) -> Self {
        Self {
            scheme,
            channel_angle: EntanglementAngle::MAXIMAL,
            measurement_angle: EntanglementAngle::MAXIMAL,
            corrections: correction_for,
        }
    }

    /// Replaces the receiver's correction table.
    pub fn with_corrections(mut self, rule: CorrectionRule) -> Self {
        self.corrections = rule;
        self
    }

    pub fn theta(&self) -> f64 {
        self.channel_angle.radians()
    }

    pub fn phi(&self) -> f64 {
        self.measurement_angle.radians()
    }
}

impl PartialEq for SchemeConfig {
    fn eq(&self, other: &Self) -> bool {
        self.scheme == other.scheme
            && self.channel_angle == other.channel_angle
            && self.measurement_angle == other.measurement_angle
            && std::ptr::fn_addr_eq(self.corrections, other.corrections)
    }
}

/// Density operator of the six channel qubits, laid out as [`CHANNEL_QUBITS`].
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelState {
    scheme: Scheme,
    rho: DensityOperator,
}

impl ChannelState {
    pub(crate) fn from_parts(scheme: Scheme, rho: DensityOperator) -> Self {
        Self { scheme, rho }
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn rho(&self) -> &DensityOperator {
        &self.rho
    }

    pub fn qubit_map() -> QubitMap {
        QubitMap::new(&CHANNEL_QUBITS).expect("distinct labels")
    }

    /// Reduced density operator of one wired part, in the part's label order.
    pub fn part_state(&self, part: &[Label]) -> Result<DensityOperator> {
        if !self.scheme.channel_parts().contains(&part) {
            return Err(Error::PartNotInGeometry(part.to_vec(), self.scheme.name()));
        }
        self.rho.partial_trace(part, &Self::qubit_map())
    }
}

fn two_term_ket(num_qubits: usize, theta: f64) -> Result<StateVector> {
    let a = EntanglementAngle::named("channel angle", theta)?;
    let mut amps = vec![c(0.0, 0.0); 1 << num_qubits];
    amps[0] = c(a.cos(), 0.0);
    amps[(1 << num_qubits) - 1] = c(a.sin(), 0.0);
    StateVector::new(amps)
}

/// `cos(theta)|00> + sin(theta)|11>`.
pub fn epr_pair(theta: f64) -> Result<StateVector> {
    two_term_ket(2, theta)
}

/// `cos(theta)|000> + sin(theta)|111>`.
pub fn ghz_triple(theta: f64) -> Result<StateVector> {
    two_term_ket(3, theta)
}

pub fn build_channel(cfg: &SchemeConfig) -> ChannelState {
    ChannelState {
        scheme: cfg.scheme,
        rho: channel_ket(cfg).outer(),
    }
}

/// Pure channel ket on qubits 2, 4, 6, 7, 8, 9 (slot order of [`ChannelState::qubit_map`]).
pub fn channel_ket(cfg: &SchemeConfig) -> StateVector {
    let theta = cfg.theta();
    let unit = match cfg.scheme {
        Scheme::Epr3 => epr_pair(theta),
        Scheme::Ghz2 => ghz_triple(theta),
    }
    .expect("angle validated by SchemeConfig");
    let parts: Vec<(&StateVector, &[Label])> = cfg
        .scheme
        .channel_parts()
        .iter()
        .map(|p| (&unit, *p))
        .collect();
    StateVector::arrange(&parts, &ChannelState::qubit_map()).expect("fixed geometry")
}

/// Matrix element `<row bits| rho_part |column bits>` of a wired part; `indices`
/// lists the row bits followed by the column bits.
pub fn gamma(ch: &ChannelState, part: &[Label], indices: &[u8]) -> Result<C64> {
    let reduced = ch.part_state(part)?;
    let k = part.len();
    if indices.len() != 2 * k {
        return Err(Error::GammaIndexLength {
            qubits: k,
            expected: 2 * k,
            found: indices.len(),
        });
    }
    let mut row = 0usize;
    let mut col = 0usize;
    for (i, &b) in indices.iter().enumerate() {
        if b > 1 {
            return Err(Error::NotABit(b));
        }
        if i < k {
            row = (row << 1) | b as usize;
        } else {
            col = (col << 1) | b as usize;
        }
    }
    Ok(reduced.matrix()[(row, col)])
}
