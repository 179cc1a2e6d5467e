use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{Error, Result};

/// Angle in the open interval `(0, pi/2)` parametrizing a two-term entangled
/// state `cos(a)|0..0> + sin(a)|1..1>`. Maximal entanglement at `pi/4`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct EntanglementAngle(f64);

impl EntanglementAngle {
    pub const MAXIMAL: EntanglementAngle = EntanglementAngle(std::f64::consts::FRAC_PI_4);

    pub fn new(radians: f64) -> Result<Self> {
        Self::named("angle", radians)
    }

    pub(crate) fn named(name: &'static str, radians: f64) -> Result<Self> {
        if radians > 0.0 && radians < FRAC_PI_2 {
            Ok(Self(radians))
        } else {
            Err(Error::AngleOutOfRange {
                name,
                value: radians,
            })
        }
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    /// Coefficient of the all-zeros term.
    pub fn cos(self) -> f64 {
        self.0.cos()
    }

    /// Coefficient of the all-ones term.
    pub fn sin(self) -> f64 {
        self.0.sin()
    }

    /// `[cos, sin]`, indexable by bit value.
    pub fn coefficients(self) -> [f64; 2] {
        [self.cos(), self.sin()]
    }
}
