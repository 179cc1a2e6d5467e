//! Exact simulation of GHZ-like state teleportation, `c0|000> + c1|111>`, through
//! two channel layouts:
//!
//! * **3-EPR**: three EPR-like pairs (2,7), (4,8), (6,9) with Bell-like
//!   measurements on (1,2), (3,4), (5,6);
//! * **2-GHZ**: two GHZ-like triples (2,6,8), (4,7,9) with GHZ-like
//!   measurements on (1,4,5), (2,3,6).
//!
//! Channels and measurement bases may be non-maximally entangled, and the
//! channel may suffer a single-qubit bit-flip, phase-flip or depolarizing error.
//! All measurement branches are evaluated exactly on dense matrices (at most
//! nine qubits), and the resulting fidelities are compared against closed-form
//! expressions.
//!
//! ```
//! use ghz_teleport::{teleport, InputState, NoiseSpec, Scheme, SchemeConfig};
//!
//! let cfg = SchemeConfig::ideal(Scheme::Ghz2);
//! let run = teleport(&InputState::equal(), &cfg, &NoiseSpec::none()).unwrap();
//! assert!((run.total_fidelity - 1.0).abs() < 1e-12);
//! assert_eq!(run.possible_outcomes().count(), 16);
//! ```

pub mod angle;
pub mod bases;
pub mod channel;
pub mod cli;
pub mod error;
pub mod fidelity;
pub mod linalg;
pub mod noise;
pub mod protocol;
pub mod verify;

pub use angle::EntanglementAngle;
pub use bases::{basis_element, full_basis, BasisLabel};
pub use channel::{build_channel, channel_ket, epr_pair, gamma, ghz_triple, ChannelState, Scheme, SchemeConfig};
pub use error::{Error, Result};
pub use fidelity::{
    average_fidelity, closed_form, closed_form_at_qubit, delta_f, grid_sweep, AverageMethod,
    FidelityReport, SweepGrid, TransferMap,
};
pub use linalg::{DensityOperator, LinearOperator, QubitMap, StateVector};
pub use noise::{apply_noise, kraus_set, noisy_channel, noisy_ensemble, noisy_gamma_check, NoiseKind, NoiseSpec, Placement};
pub use protocol::{
    correction_for, per_input_fidelity_closed, projector_for, teleport, InputState, Outcome,
    TeleportRun,
};
pub use verify::{CriterionOutcome, Verifier, VerifyReport};
