//! One complete teleportation of `c0|000> + c1|111>` from qubits 1-3-5 to
//! qubits 7-8-9: joint entangled-basis measurement on the near qubits, announcement
//! of the outcome, and a Pauli correction on the distant qubits.
//!
//! Every measurement branch is computed exactly; nothing is sampled.

use rand::{Rng, RngExt};
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::angle::EntanglementAngle;
use crate::bases::{basis_element, BasisLabel};
use crate::channel::{
    build_channel, ChannelState, Scheme, SchemeConfig, CHANNEL_QUBITS, DISTANT_QUBITS,
    INPUT_QUBITS, NEAR_QUBITS,
};
use crate::error::{Error, Result};
use crate::linalg::{
    c, max_abs_diff, project_out_raw, CMatrix, DensityOperator, Label, LinearOperator, QubitMap, StateVector,
    C64, STRUCTURE_TOL,
};
use crate::noise::{noisy_channel, NoiseKind, NoiseSpec};

/// Branches with probability at or below this are treated as impossible.
pub const ZERO_PROBABILITY: f64 = 1e-12;

/// Number of enumerated measurement outcomes for either scheme.
pub const OUTCOME_COUNT: usize = 64;

/// Amplitudes of the GHZ-like input `c0|000> + c1|111>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InputState {
    c0: C64,
    c1: C64,
}

impl InputState {
    pub fn new(c0: C64, c1: C64) -> Result<Self> {
        let norm = c0.norm_sqr() + c1.norm_sqr();
        if (norm - 1.0).abs() > STRUCTURE_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { c0, c1 })
    }

    /// `c0 = cos(theta0)`, `c1 = e^(i phase) sin(theta0)`.
    pub fn from_angles(theta0: f64, phase: f64) -> Result<Self> {
        if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&theta0) || !phase.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "input angles ({theta0}, {phase}) need 0 <= theta0 <= pi/2 and a finite phase"
            )));
        }
        Ok(Self {
            c0: c(theta0.cos(), 0.0),
            c1: C64::from_polar(theta0.sin(), phase),
        })
    }

    /// `(|000> + |111>)/sqrt(2)`.
    pub fn equal() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            c0: c(h, 0.0),
            c1: c(h, 0.0),
        }
    }

    /// Draws from the uniform measure `sin(t) cos(t) dt dphase / pi`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let u: f64 = rng.random();
        let v: f64 = rng.random();
        let theta0 = 0.5 * (1.0 - 2.0 * u).acos();
        Self::from_angles(theta0, 2.0 * std::f64::consts::PI * v).expect("sampled angles in range")
    }

    pub fn c0(&self) -> C64 {
        self.c0
    }

    pub fn c1(&self) -> C64 {
        self.c1
    }

    pub fn amplitudes(&self) -> [C64; 2] {
        [self.c0, self.c1]
    }

    /// Three-qubit ket `c0|000> + c1|111>`.
    pub fn ket(&self) -> StateVector {
        let mut amps = vec![c(0.0, 0.0); 8];
        amps[0] = self.c0;
        amps[7] = self.c1;
        StateVector::new(amps).expect("length 8")
    }
}

impl Serialize for InputState {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&[self.c0.re, self.c0.im])?;
        seq.serialize_element(&[self.c1.re, self.c1.im])?;
        seq.end()
    }
}

/// Classical record of one joint measurement.
///
/// EPR3: `(mu, lambda)` on qubits 1-2, `(nu, omega)` on 3-4, `(epsilon, tau)` on 5-6,
/// packed into an index in that order. GHZ2: `(mu, lambda, omega)` on 1-4-5 and
/// `(nu, tau, epsilon)` on 2-3-6, packed in that order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Outcome {
    pub scheme: Scheme,
    pub mu: u8,
    pub lambda: u8,
    pub nu: u8,
    pub omega: u8,
    pub epsilon: u8,
    pub tau: u8,
}

impl Outcome {
    pub fn from_index(scheme: Scheme, index: usize) -> Result<Self> {
        if index >= OUTCOME_COUNT {
            return Err(Error::OutcomeIndex {
                index,
                scheme: scheme.name(),
            });
        }
        let bit = |i: usize| (index >> (5 - i)) as u8 & 1;
        Ok(match scheme {
            Scheme::Epr3 => Self {
                scheme,
                mu: bit(0),
                lambda: bit(1),
                nu: bit(2),
                omega: bit(3),
                epsilon: bit(4),
                tau: bit(5),
            },
            Scheme::Ghz2 => Self {
                scheme,
                mu: bit(0),
                lambda: bit(1),
                omega: bit(2),
                nu: bit(3),
                tau: bit(4),
                epsilon: bit(5),
            },
        })
    }

    /// Bits in packing order.
    pub fn bits(&self) -> [u8; 6] {
        match self.scheme {
            Scheme::Epr3 => [self.mu, self.lambda, self.nu, self.omega, self.epsilon, self.tau],
            Scheme::Ghz2 => [self.mu, self.lambda, self.omega, self.nu, self.tau, self.epsilon],
        }
    }

    pub fn index(&self) -> usize {
        self.bits().iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }

    pub fn bit_string(&self) -> String {
        self.bits().iter().map(|b| if *b == 1 { '1' } else { '0' }).collect()
    }

    pub fn all(scheme: Scheme) -> Vec<Outcome> {
        (0..OUTCOME_COUNT)
            .map(|i| Self::from_index(scheme, i).expect("index in range"))
            .collect()
    }

    /// `(mu, lambda-vector)` of the basis element found on each measured group,
    /// in the order of [`Scheme::measured_groups`].
    pub fn group_labels(&self) -> Vec<(u8, Vec<u8>)> {
        match self.scheme {
            Scheme::Epr3 => vec![
                (self.mu, vec![self.lambda]),
                (self.nu, vec![self.omega]),
                (self.epsilon, vec![self.tau]),
            ],
            Scheme::Ghz2 => vec![
                (self.mu, vec![self.lambda, self.omega]),
                (self.nu, vec![self.tau, self.epsilon]),
            ],
        }
    }
}

/// Joint measurement ket for `outcome` on qubits 1..6 (ascending label order).
pub fn measurement_ket(outcome: &Outcome, phi: EntanglementAngle) -> StateVector {
    let groups = outcome.scheme.measured_groups();
    let kets: Vec<StateVector> = outcome
        .group_labels()
        .into_iter()
        .zip(groups.iter())
        .map(|((mu, lambda), g)| {
            basis_element(&BasisLabel::new(g.len(), mu, lambda, phi).expect("valid bits"))
        })
        .collect();
    let parts: Vec<(&StateVector, &[Label])> =
        kets.iter().zip(groups.iter()).map(|(k, g)| (k, *g)).collect();
    let near = QubitMap::new(&NEAR_QUBITS).expect("distinct labels");
    StateVector::arrange(&parts, &near).expect("groups partition the near qubits")
}

/// Nonzero entries of [`measurement_ket`] as `(index on qubits 1..6, amplitude)`,
/// read off the product structure without building the vector. At most eight.
pub(crate) fn measurement_support(outcome: &Outcome, phi: EntanglementAngle) -> ([(usize, f64); 8], usize) {
    let b = phi.coefficients();
    let groups = outcome.scheme.measured_groups();
    let mut out = [(0usize, 1.0f64); 8];
    let mut len = 1;
    for ((mu, lambda), labels) in outcome.group_labels().into_iter().zip(groups.iter()) {
        let mu = mu as usize;
        for i in (0..len).rev() {
            let (idx, amp) = out[i];
            for j in 0..2usize {
                let sign = if mu * j == 1 { -1.0 } else { 1.0 };
                let mut bits = idx;
                for (k, &label) in labels.iter().enumerate() {
                    let bit = if k == 0 { j } else { j ^ lambda[k - 1] as usize };
                    bits |= bit << (6 - label as usize);
                }
                out[2 * i + j] = (bits, amp * sign * b[mu ^ j]);
            }
        }
        len *= 2;
    }
    (out, len)
}

/// Rank-1 projector onto the measurement ket of `outcome`, on qubits 1..6.
pub fn projector_for(scheme: Scheme, outcome: &Outcome, phi: f64) -> Result<LinearOperator> {
    if outcome.scheme != scheme {
        return Err(Error::OutcomeSchemeMismatch {
            expected: scheme.name(),
            found: outcome.scheme.name(),
        });
    }
    let phi = EntanglementAngle::named("measurement angle", phi)?;
    Ok(LinearOperator::projector(&measurement_ket(outcome, phi)))
}

fn z_then_x(z: u8, x: u8) -> LinearOperator {
    LinearOperator::pauli_z().pow(z).compose(&LinearOperator::pauli_x().pow(x))
}

fn x_then_z(x: u8, z: u8) -> LinearOperator {
    LinearOperator::pauli_x().pow(x).compose(&LinearOperator::pauli_z().pow(z))
}

/// Ideal-case Pauli correction on qubits 7, 8, 9.
///
/// EPR3: `Z^mu X^lambda (x) Z^nu X^omega (x) Z^epsilon X^tau`.
/// GHZ2: `Z^mu X^lambda (x) X^tau Z^nu (x) X^lambda`; qubits 7 and 9 both come from
/// the (4, 7, 9) triple and carry the same bit flip.
pub fn correction_for(outcome: &Outcome) -> LinearOperator {
    let o = outcome;
    match o.scheme {
        Scheme::Epr3 => z_then_x(o.mu, o.lambda)
            .kron(&z_then_x(o.nu, o.omega))
            .kron(&z_then_x(o.epsilon, o.tau)),
        Scheme::Ghz2 => z_then_x(o.mu, o.lambda)
            .kron(&x_then_z(o.tau, o.nu))
            .kron(&LinearOperator::pauli_x().pow(o.lambda)),
    }
}

/// Per-outcome result of a teleportation.
#[derive(Debug, Clone, Serialize)]
pub struct OutcomeRecord {
    pub outcome: Outcome,
    pub probability: f64,
    /// `<target| rho_K |target>` of the unnormalized corrected branch.
    pub overlap: f64,
    /// `None` when the branch has zero probability.
    pub conditional_fidelity: Option<f64>,
    #[serde(serialize_with = "serialize_state")]
    pub corrected_state: Option<DensityOperator>,
}

fn serialize_state<S: Serializer>(
    state: &Option<DensityOperator>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match state {
        None => s.serialize_none(),
        Some(rho) => {
            let m = rho.matrix();
            let rows: Vec<Vec<[f64; 2]>> = (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                .collect();
            rows.serialize(s)
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TeleportRun {
    pub scheme: Scheme,
    pub input: InputState,
    pub outcomes: Vec<OutcomeRecord>,
    /// Sum of branch overlaps.
    pub total_fidelity: f64,
}

impl TeleportRun {
    pub fn probability_sum(&self) -> f64 {
        self.outcomes.iter().map(|o| o.probability).sum()
    }

    /// `sum_K p_K F_K` over the branches with nonzero probability.
    pub fn weighted_fidelity(&self) -> f64 {
        self.outcomes
            .iter()
            .filter_map(|o| o.conditional_fidelity.map(|f| f * o.probability))
            .sum()
    }

    pub fn possible_outcomes(&self) -> impl Iterator<Item = &OutcomeRecord> {
        self.outcomes.iter().filter(|o| o.conditional_fidelity.is_some())
    }
}

/// Register layout used for the nine-qubit state: input qubits first, then the
/// channel in its own slot order, so the joint operator is a plain Kronecker product.
fn full_map() -> QubitMap {
    let labels: Vec<Label> = INPUT_QUBITS.iter().chain(CHANNEL_QUBITS.iter()).copied().collect();
    QubitMap::new(&labels).expect("distinct labels")
}

/// Corrected, unnormalized receiver operators `U_K Tr_near[(P_K x 1) (A x rho_ch)] U_K^dagger`
/// for every outcome in index order, where `input` is an operator `A` on qubits
/// 1, 3, 5. Linear in `A`, so it also accepts non-Hermitian inputs.
pub(crate) fn corrected_branches(
    input: &CMatrix,
    channel: &ChannelState,
    cfg: &SchemeConfig,
) -> Result<Vec<CMatrix>> {
    let full = input.kronecker(channel.rho().matrix());
    let map = full_map();
    debug_assert_eq!(map.labels()[6..], DISTANT_QUBITS);
    Outcome::all(cfg.scheme)
        .iter()
        .map(|o| {
            let ket = measurement_ket(o, cfg.measurement_angle);
            let branch = project_out_raw(&full, &ket, &NEAR_QUBITS, &map)?;
            let u = (cfg.corrections)(o);
            Ok(u.matrix() * branch * u.matrix().adjoint())
        })
        .collect()
}

/// Teleports `input` through an explicitly given channel state.
pub fn teleport_through(
    input: &InputState,
    cfg: &SchemeConfig,
    channel: &ChannelState,
) -> Result<TeleportRun> {
    if channel.scheme() != cfg.scheme {
        return Err(Error::InvalidArgument(format!(
            "channel built for {} used with {}",
            channel.scheme(),
            cfg.scheme
        )));
    }
    let target = input.ket();
    let branches = corrected_branches(target.outer().matrix(), channel, cfg)?;
    let mut outcomes = Vec::with_capacity(branches.len());
    for (outcome, m) in Outcome::all(cfg.scheme).into_iter().zip(branches) {
        let rho = DensityOperator::from_matrix_unchecked(m);
        let probability = rho.trace();
        let overlap = rho.expectation(&target)?;
        let possible = probability > ZERO_PROBABILITY;
        outcomes.push(OutcomeRecord {
            outcome,
            probability,
            overlap,
            conditional_fidelity: possible.then(|| overlap / probability),
            corrected_state: rho.normalized(ZERO_PROBABILITY),
        });
    }
    let total_fidelity = outcomes.iter().map(|o| o.overlap).sum();
    Ok(TeleportRun {
        scheme: cfg.scheme,
        input: *input,
        outcomes,
        total_fidelity,
    })
}

/// Full teleportation with the channel built from `cfg` and then exposed to
/// `noise`. A uniform placement uses the equal mixture of the six single-qubit
/// placements, which gives the placement-averaged fidelity by linearity.
pub fn teleport(input: &InputState, cfg: &SchemeConfig, noise: &NoiseSpec) -> Result<TeleportRun> {
    let channel = noisy_channel(&build_channel(cfg), noise)?;
    teleport_through(input, cfg, &channel)
}

/// Closed per-input fidelity of the noiseless protocol:
/// `|c0|^4 + |c1|^4 + 128 |c0|^2 |c1|^2 (b0 b1 beta0 beta1)^3` for EPR3 and
/// `|c0|^4 + |c1|^4 + 32 |c0|^2 |c1|^2 (b0 b1 beta0 beta1)^2` for GHZ2.
pub fn per_input_fidelity_closed(
    input: &InputState,
    cfg: &SchemeConfig,
    noise: &NoiseSpec,
) -> Result<f64> {
    if noise.kind != NoiseKind::None {
        return Err(Error::NoiseNotAllowed);
    }
    let a = input.c0.norm_sqr();
    let b = input.c1.norm_sqr();
    let prod = cfg.measurement_angle.cos()
        * cfg.measurement_angle.sin()
        * cfg.channel_angle.cos()
        * cfg.channel_angle.sin();
    let cross = match cfg.scheme {
        Scheme::Epr3 => 128.0 * prod.powi(3),
        Scheme::Ghz2 => 32.0 * prod.powi(2),
    };
    Ok(a * a + b * b + a * b * cross)
}

fn parity_sign(x: usize) -> f64 {
    if x.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Total fidelity evaluated directly as an index sum over the channel
/// coefficients of each wired part, without forming the nine-qubit state.
/// Uses the ideal correction table. The channel must be a product over its
/// wired parts; mixtures over noise placements are not.
pub fn wide_formula_fidelity(
    input: &InputState,
    cfg: &SchemeConfig,
    channel: &ChannelState,
) -> Result<f64> {
    let amp = input.amplitudes();
    let b = cfg.measurement_angle.coefficients();
    let part_states: Vec<DensityOperator> = cfg
        .scheme
        .channel_parts()
        .iter()
        .map(|p| channel.part_state(p))
        .collect::<Result<_>>()?;
    let labels: Vec<Label> = cfg.scheme.channel_parts().concat();
    let product = part_states[1..]
        .iter()
        .fold(part_states[0].clone(), |acc, s| acc.kron(s))
        .rearranged(&labels, &ChannelState::qubit_map())?;
    if max_abs_diff(product.matrix(), channel.rho().matrix()) > STRUCTURE_TOL {
        return Err(Error::InvalidArgument(
            "channel is not a product of its wired parts".to_string(),
        ));
    }
    let parts: Vec<CMatrix> = part_states.into_iter().map(DensityOperator::into_matrix).collect();
    // Element of a part's operator addressed by row bits and column bits.
    let g = |part: &CMatrix, row: &[usize], col: &[usize]| -> C64 {
        let r = row.iter().fold(0, |acc, &x| (acc << 1) | x);
        let c = col.iter().fold(0, |acc, &x| (acc << 1) | x);
        part[(r, c)]
    };
    let mut total = c(0.0, 0.0);
    for k in 0..2usize {
        for m in 0..2usize {
            for n in 0..2usize {
                for l in 0..2usize {
                    let coeff = amp[k] * amp[m].conj() * amp[n].conj() * amp[l];
                    if coeff.norm_sqr() == 0.0 {
                        continue;
                    }
                    let parity = k + m + n + l;
                    let mut sum = c(0.0, 0.0);
                    match cfg.scheme {
                        Scheme::Epr3 => {
                            for o in Outcome::all(Scheme::Epr3) {
                                let mut term = c(1.0, 0.0);
                                let pairs = [(o.mu, o.lambda), (o.nu, o.omega), (o.epsilon, o.tau)];
                                for (part, &(mu, lam)) in parts.iter().zip(pairs.iter()) {
                                    let (mu, lam) = (mu as usize, lam as usize);
                                    term *= parity_sign(mu * parity)
                                        * b[mu ^ k]
                                        * b[mu ^ m]
                                        * g(part, &[k ^ lam, n ^ lam], &[m ^ lam, l ^ lam]);
                                }
                                sum += term;
                            }
                        }
                        Scheme::Ghz2 => {
                            // Outcomes with omega = 1 never contribute.
                            for o in Outcome::all(Scheme::Ghz2).into_iter().filter(|o| o.omega == 0) {
                                let (mu, nu) = (o.mu as usize, o.nu as usize);
                                let (lam, tau, eps) = (o.lambda as usize, o.tau as usize, o.epsilon as usize);
                                let (kp, mp, np, lp) = (k ^ tau, m ^ tau, n ^ tau, l ^ tau);
                                let sign = parity_sign(mu * parity + nu * (kp + mp + np + lp));
                                let a = g(&parts[0], &[kp, kp ^ eps, np], &[mp, mp ^ eps, lp]);
                                let bb = g(
                                    &parts[1],
                                    &[k ^ lam, n ^ lam, n ^ lam],
                                    &[m ^ lam, l ^ lam, l ^ lam],
                                );
                                sum += a * bb * (sign * b[mu ^ k] * b[mu ^ m] * b[nu ^ kp] * b[nu ^ mp]);
                            }
                        }
                    }
                    total += coeff * sum;
                }
            }
        }
    }
    Ok(total.re)
}
