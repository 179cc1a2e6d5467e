//! Single-qubit Kraus channels acting on one channel qubit, and the
//! closed-form channel coefficients they produce.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::channel::{build_channel, channel_ket, ChannelState, Scheme, SchemeConfig, CHANNEL_QUBITS};
use crate::error::{Error, Result};
use crate::linalg::{DensityOperator, Label, LinearOperator, QubitMap, StateVector};

/// Rough upper bound on `p` for the single-error truncation to be meaningful.
pub const WEAK_NOISE_LIMIT: f64 = 2.0 / 7.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoiseKind {
    None,
    BitFlip,
    PhaseFlip,
    Depolarizing,
}

impl NoiseKind {
    pub const NOISY: [NoiseKind; 3] = [NoiseKind::BitFlip, NoiseKind::PhaseFlip, NoiseKind::Depolarizing];

    pub fn name(self) -> &'static str {
        match self {
            NoiseKind::None => "none",
            NoiseKind::BitFlip => "bit-flip",
            NoiseKind::PhaseFlip => "phase-flip",
            NoiseKind::Depolarizing => "depolarizing",
        }
    }
}

impl fmt::Display for NoiseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for NoiseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "none" => Ok(NoiseKind::None),
            "bit-flip" | "bitflip" | "bit" => Ok(NoiseKind::BitFlip),
            "phase-flip" | "phaseflip" | "phase" => Ok(NoiseKind::PhaseFlip),
            "depolarizing" | "depol" => Ok(NoiseKind::Depolarizing),
            other => Err(Error::InvalidArgument(format!("unknown noise kind '{other}'"))),
        }
    }
}

/// Where the single Kraus channel acts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Placement {
    Qubit(Label),
    /// Each of the six channel qubits with weight 1/6.
    UniformAverage,
}

impl Placement {
    pub fn label(self) -> String {
        match self {
            Placement::Qubit(q) => format!("q{q}"),
            Placement::UniformAverage => "uniform".to_string(),
        }
    }

    /// Channel qubits covered by this placement.
    pub fn qubits(self) -> Vec<Label> {
        match self {
            Placement::Qubit(q) => vec![q],
            Placement::UniformAverage => CHANNEL_QUBITS.to_vec(),
        }
    }
}

impl std::str::FromStr for Placement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.to_ascii_lowercase();
        if s == "uniform" || s == "average" {
            return Ok(Placement::UniformAverage);
        }
        let digits = s.strip_prefix('q').unwrap_or(&s);
        let q: Label = digits
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("unknown placement '{s}'")))?;
        check_channel_qubit(q)?;
        Ok(Placement::Qubit(q))
    }
}

fn check_channel_qubit(q: Label) -> Result<Label> {
    if CHANNEL_QUBITS.contains(&q) {
        Ok(q)
    } else {
        Err(Error::NotAChannelQubit(q))
    }
}

fn check_probability(p: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err(Error::ProbabilityOutOfRange(p))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoiseSpec {
    pub kind: NoiseKind,
    pub p: f64,
    pub placement: Placement,
}

impl NoiseSpec {
    pub fn none() -> Self {
        Self {
            kind: NoiseKind::None,
            p: 0.0,
            placement: Placement::UniformAverage,
        }
    }

    pub fn new(kind: NoiseKind, p: f64, placement: Placement) -> Result<Self> {
        check_probability(p)?;
        if let Placement::Qubit(q) = placement {
            check_channel_qubit(q)?;
        }
        Ok(Self { kind, p, placement })
    }

    pub fn uniform(kind: NoiseKind, p: f64) -> Result<Self> {
        Self::new(kind, p, Placement::UniformAverage)
    }

    pub fn at(kind: NoiseKind, p: f64, qubit: Label) -> Result<Self> {
        Self::new(kind, p, Placement::Qubit(qubit))
    }

    pub fn is_noiseless(&self) -> bool {
        self.kind == NoiseKind::None || self.p == 0.0
    }

    /// Whether `p` lies in the regime where at most one error per channel
    /// dominates.
    pub fn is_weak(&self) -> bool {
        self.p < WEAK_NOISE_LIMIT
    }
}

/// Probabilities of zero, one and two errors among the six channel qubits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorBudget {
    pub no_error: f64,
    pub single_error: f64,
    pub double_error: f64,
}

pub fn error_budget(p: f64) -> Result<ErrorBudget> {
    check_probability(p)?;
    let q = 1.0 - p;
    Ok(ErrorBudget {
        no_error: q.powi(6),
        single_error: 6.0 * p * q.powi(5),
        double_error: 15.0 * p * p * q.powi(4),
    })
}

pub fn kraus_set(kind: NoiseKind, p: f64) -> Result<Vec<LinearOperator>> {
    check_probability(p)?;
    let keep = LinearOperator::identity(1).scaled((1.0 - p).sqrt());
    Ok(match kind {
        NoiseKind::None => vec![LinearOperator::identity(1)],
        NoiseKind::BitFlip => vec![keep, LinearOperator::pauli_x().scaled(p.sqrt())],
        NoiseKind::PhaseFlip => vec![keep, LinearOperator::pauli_z().scaled(p.sqrt())],
        NoiseKind::Depolarizing => {
            let s = (p / 3.0).sqrt();
            vec![
                keep,
                LinearOperator::pauli_x().scaled(s),
                LinearOperator::pauli_y().scaled(s),
                LinearOperator::pauli_z().scaled(s),
            ]
        }
    })
}

pub fn apply_noise(
    rho: &DensityOperator,
    qubit: Label,
    kind: NoiseKind,
    p: f64,
    map: &QubitMap,
) -> Result<DensityOperator> {
    map.slot(qubit)?;
    if kind == NoiseKind::None {
        return Ok(rho.clone());
    }
    let ops = kraus_set(kind, p)?
        .iter()
        .map(|a| a.embed(&[qubit], map))
        .collect::<Result<Vec<_>>>()?;
    rho.apply_kraus(&ops)
}

/// Channel after the noise described by `spec`. A uniform placement yields the
/// equal-weight mixture of the six single-qubit placements.
pub fn noisy_channel(ch: &ChannelState, spec: &NoiseSpec) -> Result<ChannelState> {
    if spec.is_noiseless() {
        return Ok(ch.clone());
    }
    let map = ChannelState::qubit_map();
    let states = spec
        .placement
        .qubits()
        .into_iter()
        .map(|q| apply_noise(ch.rho(), q, spec.kind, spec.p, &map))
        .collect::<Result<Vec<_>>>()?;
    Ok(ChannelState::from_parts(ch.scheme(), DensityOperator::average(&states)?))
}

/// Unnormalized kets whose projectors sum to the noisy channel: the Kraus
/// operators applied to the pure channel ket, weighted by `1/sqrt(6)` per
/// placement under a uniform placement.
pub fn noisy_ensemble(cfg: &SchemeConfig, spec: &NoiseSpec) -> Result<Vec<StateVector>> {
    let ket = channel_ket(cfg);
    if spec.is_noiseless() {
        return Ok(vec![ket]);
    }
    let qubits = spec.placement.qubits();
    let weight = (1.0 / qubits.len() as f64).sqrt();
    let map = ChannelState::qubit_map();
    let mut out = Vec::new();
    for q in qubits {
        for a in kraus_set(spec.kind, spec.p)? {
            out.push(a.scaled(weight).embed(&[q], &map)?.apply(&ket)?);
        }
    }
    Ok(out)
}

const COVERED_GAMMA: &str = "epr3 with any noise on qubit 2; ghz2 bit-flip on qubit 6, \
phase-flip on qubit 2, depolarizing on qubit 6; any noise with p = 0";

fn sign(bit: u8) -> f64 {
    if bit == 0 {
        1.0
    } else {
        -1.0
    }
}

fn delta(a: u8, b: u8) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

/// Closed-form coefficient of a wired part when the noise acts on `noisy`
/// (`None` for an unaffected part). `bits` are row bits then column bits.
fn closed_gamma(
    scheme: Scheme,
    kind: NoiseKind,
    noisy: Option<Label>,
    beta: [f64; 2],
    pr: f64,
    bits: &[u8],
) -> f64 {
    let b = |x: u8| beta[x as usize];
    match scheme {
        Scheme::Epr3 => {
            let (k, l, m, n) = (bits[0], bits[1], bits[2], bits[3]);
            let same = delta(k, l) * delta(m, n);
            let flipped = delta(k, l ^ 1) * delta(m, n ^ 1);
            let s = sign(k ^ m);
            match noisy.map(|_| kind) {
                None | Some(NoiseKind::None) => b(k) * b(m) * same,
                Some(NoiseKind::BitFlip) => b(l) * b(n) * ((1.0 - pr) * same + pr * flipped),
                Some(NoiseKind::PhaseFlip) => b(l) * b(n) * same * (1.0 - pr + pr * s),
                Some(NoiseKind::Depolarizing) => {
                    b(l) * b(n)
                        * ((1.0 - pr + pr / 3.0 * s) * same + pr / 3.0 * (1.0 + s) * flipped)
                }
            }
        }
        Scheme::Ghz2 => {
            let (k, l, m, n, p, q) = (bits[0], bits[1], bits[2], bits[3], bits[4], bits[5]);
            let clean = delta(k, l) * delta(l, m) * delta(n, p) * delta(p, q);
            let outer = delta(k, m) * delta(n, q);
            let same = delta(k, l) * delta(n, p);
            let flipped = delta(l, k ^ 1) * delta(p, n ^ 1);
            match noisy.map(|_| kind) {
                None | Some(NoiseKind::None) => b(k) * b(n) * clean,
                Some(NoiseKind::BitFlip) => {
                    b(k) * b(n) * outer * ((1.0 - pr) * same + pr * flipped)
                }
                Some(NoiseKind::PhaseFlip) => b(k) * b(n) * clean * (1.0 - pr + pr * sign(k ^ n)),
                Some(NoiseKind::Depolarizing) => {
                    let s = sign(l ^ p);
                    b(k) * b(n)
                        * outer
                        * ((1.0 - pr + pr / 3.0 * s) * same + pr / 3.0 * (1.0 + s) * flipped)
                }
            }
        }
    }
}

fn gamma_covered(scheme: Scheme, kind: NoiseKind, qubit: Label, p: f64) -> bool {
    if kind == NoiseKind::None || p == 0.0 {
        return true;
    }
    match scheme {
        Scheme::Epr3 => qubit == 2,
        Scheme::Ghz2 => matches!(
            (kind, qubit),
            (NoiseKind::BitFlip, 6) | (NoiseKind::PhaseFlip, 2) | (NoiseKind::Depolarizing, 6)
        ),
    }
}

/// Applies the noise to a freshly built channel and returns the largest
/// deviation of its part coefficients from the closed-form expressions.
pub fn noisy_gamma_check(scheme: Scheme, kind: NoiseKind, qubit: Label, theta: f64, p: f64) -> Result<f64> {
    check_channel_qubit(qubit)?;
    check_probability(p)?;
    if !gamma_covered(scheme, kind, qubit, p) {
        return Err(Error::Uncovered(
            format!("{scheme} {kind} on qubit {qubit}"),
            COVERED_GAMMA,
        ));
    }
    let cfg = SchemeConfig::new(scheme, theta, std::f64::consts::FRAC_PI_4)?;
    let clean = build_channel(&cfg);
    let ch = noisy_channel(&clean, &NoiseSpec::at(kind, p, qubit)?)?;
    let beta = cfg.channel_angle.coefficients();
    let effective = if p == 0.0 { NoiseKind::None } else { kind };
    let mut worst: f64 = 0.0;
    for part in scheme.channel_parts() {
        let reduced = ch.part_state(part)?;
        let k = part.len();
        let noisy = part.contains(&qubit).then_some(qubit);
        for row in 0..1usize << k {
            for col in 0..1usize << k {
                let bits: Vec<u8> = (0..k)
                    .map(|i| (row >> (k - 1 - i)) as u8 & 1)
                    .chain((0..k).map(|i| (col >> (k - 1 - i)) as u8 & 1))
                    .collect();
                let expect = closed_gamma(scheme, effective, noisy, beta, p, &bits);
                let got = reduced.matrix()[(row, col)];
                worst = worst.max((got - crate::linalg::c(expect, 0.0)).norm());
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, max_abs_diff, CMatrix};
    use approx::assert_abs_diff_eq;

    fn completeness(ops: &[LinearOperator]) -> CMatrix {
        ops.iter()
            .map(|a| a.matrix().adjoint() * a.matrix())
            .fold(CMatrix::zeros(2, 2), |acc, m| acc + m)
    }

    #[test]
    fn bit_flip_without_noise_is_identity() {
        let ops = kraus_set(NoiseKind::BitFlip, 0.0).unwrap();
        assert_eq!(ops[0], LinearOperator::identity(1));
        assert_eq!(ops[1].matrix(), &CMatrix::zeros(2, 2));
    }

    #[test]
    fn phase_flip_operator_norms() {
        let ops = kraus_set(NoiseKind::PhaseFlip, 0.25).unwrap();
        assert_abs_diff_eq!(ops[0].matrix().norm() / 2f64.sqrt(), 0.75f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(ops[1].matrix().norm() / 2f64.sqrt(), 0.25f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn kraus_sets_are_complete() {
        for kind in [NoiseKind::None, NoiseKind::BitFlip, NoiseKind::PhaseFlip, NoiseKind::Depolarizing] {
            for p in [0.0, 0.1, 0.6, 1.0] {
                let sum = completeness(&kraus_set(kind, p).unwrap());
                assert!(max_abs_diff(&sum, &CMatrix::identity(2, 2)) < 1e-14, "{kind} {p}");
            }
        }
        assert!(kraus_set(NoiseKind::BitFlip, 1.5).is_err());
        assert!(kraus_set(NoiseKind::Depolarizing, -0.1).is_err());
    }

    #[test]
    fn bit_flip_on_zero() {
        let map = QubitMap::new(&[2]).unwrap();
        let out = apply_noise(&StateVector::basis(1, 0).outer(), 2, NoiseKind::BitFlip, 0.3, &map).unwrap();
        assert_abs_diff_eq!(out.matrix()[(0, 0)].re, 0.7, epsilon = 1e-15);
        assert_abs_diff_eq!(out.matrix()[(1, 1)].re, 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(out.matrix()[(0, 1)].norm(), 0.0);
    }

    #[test]
    fn phase_flip_leaves_diagonal_states() {
        let map = QubitMap::new(&[4, 7]).unwrap();
        let diag = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            c(0.1, 0.0),
            c(0.2, 0.0),
            c(0.3, 0.0),
            c(0.4, 0.0),
        ]));
        let rho = DensityOperator::from_matrix(diag).unwrap();
        let out = apply_noise(&rho, 7, NoiseKind::PhaseFlip, 0.4, &map).unwrap();
        assert!(max_abs_diff(out.matrix(), rho.matrix()) < 1e-15);
    }

    #[test]
    fn depolarizing_bell_pair_against_kraus_expansion() {
        // Depolarizing the first qubit of a Bell pair with p = 3/4 leaves
        // (1 - 4p/3) rho + (4p/3) (I/2 x Tr_1 rho) = I/4.
        let p = 0.75;
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = StateVector::from_real(&[h, 0.0, 0.0, h]).unwrap().outer();
        let map = QubitMap::new(&[1, 2]).unwrap();
        let out = apply_noise(&bell, 1, NoiseKind::Depolarizing, p, &map).unwrap();
        let reduced = bell.partial_trace(&[2], &map).unwrap();
        let half = CMatrix::identity(2, 2) * c(0.5, 0.0);
        let expect = bell.matrix() * c(1.0 - 4.0 * p / 3.0, 0.0)
            + half.kronecker(reduced.matrix()) * c(4.0 * p / 3.0, 0.0);
        assert!(max_abs_diff(out.matrix(), &expect) < 1e-14);
        let quarter = CMatrix::identity(4, 4) * c(0.25, 0.0);
        assert!(max_abs_diff(out.matrix(), &quarter) < 1e-14);
        let r1 = out.partial_trace(&[1], &map).unwrap();
        assert!(max_abs_diff(r1.matrix(), &half) < 1e-14);
    }

    #[test]
    fn apply_noise_rejects_unknown_qubit() {
        let map = QubitMap::new(&[1, 2]).unwrap();
        let rho = StateVector::basis(2, 0).outer();
        assert!(matches!(
            apply_noise(&rho, 5, NoiseKind::BitFlip, 0.1, &map),
            Err(Error::UnknownLabel(5))
        ));
    }

    #[test]
    fn gamma_checks_match_closed_forms() {
        for (scheme, kind, qubit) in [
            (Scheme::Epr3, NoiseKind::BitFlip, 2),
            (Scheme::Epr3, NoiseKind::PhaseFlip, 2),
            (Scheme::Epr3, NoiseKind::Depolarizing, 2),
            (Scheme::Ghz2, NoiseKind::BitFlip, 6),
            (Scheme::Ghz2, NoiseKind::PhaseFlip, 2),
            (Scheme::Ghz2, NoiseKind::Depolarizing, 6),
        ] {
            for theta in [0.3, 0.785, 1.2] {
                for p in [0.0, 0.07, 0.25] {
                    let dev = noisy_gamma_check(scheme, kind, qubit, theta, p).unwrap();
                    assert!(dev < 1e-12, "{scheme} {kind} q{qubit} theta={theta} p={p}: {dev}");
                }
            }
        }
    }

    #[test]
    fn gamma_check_rejects_uncovered_combination() {
        let err = noisy_gamma_check(Scheme::Ghz2, NoiseKind::BitFlip, 2, 0.4, 0.1).unwrap_err();
        assert!(matches!(err, Error::Uncovered(..)));
        assert!(err.to_string().contains("bit-flip on qubit 6"));
        // p = 0 is the noiseless tensor on any qubit.
        assert!(noisy_gamma_check(Scheme::Ghz2, NoiseKind::BitFlip, 2, 0.4, 0.0).unwrap() < 1e-15);
    }

    #[test]
    fn budget_values() {
        let b = error_budget(0.07).unwrap();
        assert_abs_diff_eq!(b.single_error, 0.2918, epsilon = 5e-4);
        assert_abs_diff_eq!(b.double_error, 0.0549, epsilon = 5e-4);
        assert!(NoiseSpec::uniform(NoiseKind::BitFlip, 0.28).unwrap().is_weak());
        assert!(!NoiseSpec::uniform(NoiseKind::BitFlip, 0.3).unwrap().is_weak());
    }

    #[test]
    fn placement_parsing() {
        assert_eq!("q6".parse::<Placement>().unwrap(), Placement::Qubit(6));
        assert_eq!("uniform".parse::<Placement>().unwrap(), Placement::UniformAverage);
        assert!("q3".parse::<Placement>().is_err());
    }

    #[test]
    fn ensemble_reproduces_noisy_channel() {
        for scheme in Scheme::ALL {
            let cfg = SchemeConfig::new(scheme, 0.55, 0.9).unwrap();
            let clean = build_channel(&cfg);
            for spec in [
                NoiseSpec::none(),
                NoiseSpec::at(NoiseKind::BitFlip, 0.2, 7).unwrap(),
                NoiseSpec::uniform(NoiseKind::Depolarizing, 0.15).unwrap(),
            ] {
                let sum = noisy_ensemble(&cfg, &spec)
                    .unwrap()
                    .iter()
                    .fold(CMatrix::zeros(64, 64), |acc, k| acc + k.outer().matrix());
                let rho = noisy_channel(&clean, &spec).unwrap();
                assert!(max_abs_diff(&sum, rho.rho().matrix()) < 1e-14, "{scheme} {spec:?}");
            }
        }
    }

    #[test]
    fn weakly_entangled_noisy_channel_has_finite_spectrum() {
        let cfg = SchemeConfig::new(Scheme::Epr3, 0.085, 0.785).unwrap();
        let spec = NoiseSpec::at(NoiseKind::PhaseFlip, 0.2572, 2).unwrap();
        let rho = noisy_channel(&build_channel(&cfg), &spec).unwrap();
        let low = rho.rho().min_eigenvalue();
        assert!(low.is_finite() && low > -1e-12, "{low}");
    }
}
