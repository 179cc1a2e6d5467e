//! Fidelity averaged over the input manifold, closed-form reference values,
//! and fidelity differences between the two channel layouts.
//!
//! The protocol is linear in the input operator, so the total fidelity of
//! `c0|000> + c1|111>` is a quartic form in `(c0, c1)`. A [`TransferMap`]
//! stores its sixteen coefficients, each obtained from an exact evaluation of
//! all measurement branches; averaging then costs nothing per input state.

use std::f64::consts::{FRAC_PI_2, PI};
use std::num::NonZeroUsize;
use std::sync::{Arc, Mutex, OnceLock};

use gauss_quad::legendre::GaussLegendre;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::channel::{ChannelState, Scheme, SchemeConfig, CHANNEL_QUBITS};
use crate::error::{Error, Result};
use crate::linalg::{c, CMatrix, StateVector, C64};
use crate::noise::{noisy_ensemble, NoiseKind, NoiseSpec, Placement};
use crate::protocol::{corrected_branches, measurement_support, InputState, Outcome};

/// Default Gauss-Legendre order per axis.
pub const DEFAULT_QUADRATURE: usize = 32;
const MIN_QUADRATURE: usize = 8;

/// Total-fidelity coefficients `T[j][k][a][b] = sum_K <aaa| B_K(|jjj><kkk|) |bbb>`,
/// where `B_K` is the corrected receiver map of outcome `K`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMap {
    t: [[[[C64; 2]; 2]; 2]; 2],
}

impl TransferMap {
    /// Builds the map from an ensemble of unnormalized channel kets whose
    /// projectors sum to the channel state.
    pub fn from_ensemble(cfg: &SchemeConfig, kets: &[StateVector]) -> Result<Self> {
        if let Some(k) = kets.iter().find(|k| k.dim() != 64) {
            return Err(Error::DimensionMismatch {
                expected: 64,
                found: k.dim(),
            });
        }
        let rows = correction_rows(cfg);
        let mut t = [[[[c(0.0, 0.0); 2]; 2]; 2]; 2];
        for (o, u) in Outcome::all(cfg.scheme).iter().zip(rows.iter()) {
            let (support, len) = measurement_support(o, cfg.measurement_angle);
            for ket in kets {
                let amps = ket.amplitudes();
                // v[j] = (<Phi_K| (x) 1)(|jjj> (x) |psi>) on qubits 7, 8, 9.
                let mut v = [[c(0.0, 0.0); 8]; 2];
                for &(idx, a) in &support[..len] {
                    let bit = |label: usize| (idx >> (6 - label)) & 1;
                    let j = bit(1);
                    if bit(3) != j || bit(5) != j {
                        continue;
                    }
                    let near = (bit(2) << 2) | (bit(4) << 1) | bit(6);
                    for (d, x) in v[j].iter_mut().enumerate() {
                        *x += amps[(near << 3) | d] * a;
                    }
                }
                // Components <aaa| U v[j] for a = 0, 1.
                let mut w = [[c(0.0, 0.0); 2]; 2];
                for j in 0..2 {
                    for a in 0..2 {
                        w[j][a] = u[a].iter().zip(&v[j]).map(|(x, y)| x * y).sum();
                    }
                }
                for j in 0..2 {
                    for k in 0..2 {
                        for a in 0..2 {
                            for b in 0..2 {
                                t[j][k][a][b] += w[j][a] * w[k][b].conj();
                            }
                        }
                    }
                }
            }
        }
        Ok(Self { t })
    }

    /// Builds the map from a channel density operator by evaluating the
    /// branches of each input coherence `|jjj><kkk|`.
    pub fn from_channel(cfg: &SchemeConfig, channel: &ChannelState) -> Result<Self> {
        let mut t = [[[[c(0.0, 0.0); 2]; 2]; 2]; 2];
        for j in 0..2 {
            for k in 0..2 {
                let mut input = CMatrix::zeros(8, 8);
                input[(7 * j, 7 * k)] = c(1.0, 0.0);
                let total = corrected_branches(&input, channel, cfg)?
                    .into_iter()
                    .fold(CMatrix::zeros(8, 8), |acc, m| acc + m);
                for a in 0..2 {
                    for b in 0..2 {
                        t[j][k][a][b] = total[(7 * a, 7 * b)];
                    }
                }
            }
        }
        Ok(Self { t })
    }

    /// Map for the channel of `cfg` after `noise`.
    pub fn compute(cfg: &SchemeConfig, noise: &NoiseSpec) -> Result<Self> {
        Self::from_ensemble(cfg, &noisy_ensemble(cfg, noise)?)
    }

    pub fn coefficient(&self, j: usize, k: usize, a: usize, b: usize) -> C64 {
        self.t[j][k][a][b]
    }

    /// Total fidelity for one input state.
    pub fn fidelity(&self, input: &InputState) -> f64 {
        let amp = input.amplitudes();
        let mut sum = c(0.0, 0.0);
        for j in 0..2 {
            for k in 0..2 {
                for a in 0..2 {
                    for b in 0..2 {
                        sum += amp[a].conj() * amp[j] * amp[k].conj() * amp[b] * self.t[j][k][a][b];
                    }
                }
            }
        }
        sum.re
    }

    /// Equal-weight mixture of maps.
    pub fn mean(maps: &[TransferMap]) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::InvalidArgument("no maps to average".into()));
        }
        let w = 1.0 / maps.len() as f64;
        let mut t = [[[[c(0.0, 0.0); 2]; 2]; 2]; 2];
        for m in maps {
            for j in 0..2 {
                for k in 0..2 {
                    for a in 0..2 {
                        for b in 0..2 {
                            t[j][k][a][b] += m.t[j][k][a][b] * w;
                        }
                    }
                }
            }
        }
        Ok(Self { t })
    }
}

type CorrectionRows = Arc<Vec<[[C64; 8]; 2]>>;

/// Rows `000` and `111` of every correction in outcome order. They depend only
/// on the scheme and the correction rule, so they are computed once per pair.
fn correction_rows(cfg: &SchemeConfig) -> CorrectionRows {
    static CACHE: OnceLock<Mutex<Vec<((Scheme, usize), CorrectionRows)>>> = OnceLock::new();
    let key = (cfg.scheme, cfg.corrections as usize);
    let cache = CACHE.get_or_init(Default::default);
    if let Some((_, rows)) = cache.lock().expect("cache lock").iter().find(|(k, _)| *k == key) {
        return rows.clone();
    }
    let rows: CorrectionRows = Arc::new(
        Outcome::all(cfg.scheme)
            .iter()
            .map(|o| {
                let u = (cfg.corrections)(o);
                let mut r = [[c(0.0, 0.0); 8]; 2];
                for (a, row) in r.iter_mut().enumerate() {
                    for (d, x) in row.iter_mut().enumerate() {
                        *x = u.matrix()[(7 * a, d)];
                    }
                }
                r
            })
            .collect(),
    );
    cache.lock().expect("cache lock").push((key, rows.clone()));
    rows
}

/// Product-rule nodes as `(weight, input)`, weights including the measure.
fn quadrature_nodes(n: usize) -> Arc<Vec<(f64, InputState)>> {
    static CACHE: OnceLock<Mutex<Vec<(usize, Arc<Vec<(f64, InputState)>>)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some((_, nodes)) = cache.lock().expect("cache lock").iter().find(|(k, _)| *k == n) {
        return nodes.clone();
    }
    let rule = GaussLegendre::new(NonZeroUsize::new(n).expect("validated order"));
    let pairs = rule.as_node_weight_pairs();
    // Map [-1, 1] onto (0, pi/2) and (0, 2 pi).
    let (st, sp) = (FRAC_PI_2 / 2.0, PI);
    let mut nodes = Vec::with_capacity(n * n);
    for &(x, wx) in pairs {
        let t0 = st * (x + 1.0);
        let w_theta = wx * st * t0.sin() * t0.cos() / PI;
        for &(y, wy) in pairs {
            let input = InputState::from_angles(t0, sp * (y + 1.0)).expect("interior node");
            nodes.push((w_theta * wy * sp, input));
        }
    }
    let nodes = Arc::new(nodes);
    cache.lock().expect("cache lock").push((n, nodes.clone()));
    nodes
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AverageMethod {
    /// Product Gauss-Legendre rule with this many nodes per axis.
    Quadrature(usize),
    MonteCarlo { samples: usize, seed: u64 },
}

impl Default for AverageMethod {
    fn default() -> Self {
        AverageMethod::Quadrature(DEFAULT_QUADRATURE)
    }
}

impl AverageMethod {
    fn validate(self) -> Result<Self> {
        match self {
            AverageMethod::Quadrature(n) if n < MIN_QUADRATURE => Err(Error::InvalidMethod(format!(
                "quadrature order {n} is below {MIN_QUADRATURE}"
            ))),
            AverageMethod::MonteCarlo { samples: 0, .. } => {
                Err(Error::InvalidMethod("Monte Carlo needs at least one sample".into()))
            }
            m => Ok(m),
        }
    }
}

/// Mean (and, for Monte Carlo, standard error) of `f` over the input manifold
/// with measure `sin(t) cos(t) dt dphase / pi`.
pub fn average_over_inputs<F>(method: AverageMethod, f: F) -> Result<(f64, Option<f64>)>
where
    F: Fn(&InputState) -> f64,
{
    match method.validate()? {
        AverageMethod::Quadrature(n) => {
            let total = quadrature_nodes(n).iter().map(|(w, input)| w * f(input)).sum();
            Ok((total, None))
        }
        AverageMethod::MonteCarlo { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let values: Vec<f64> = (0..samples).map(|_| f(&InputState::random(&mut rng))).collect();
            let n = samples as f64;
            let mean = values.iter().sum::<f64>() / n;
            let se = if samples > 1 {
                let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
                (var / n).sqrt()
            } else {
                0.0
            };
            Ok((mean, Some(se)))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FidelityReport {
    pub scheme: Scheme,
    pub theta: f64,
    pub phi: f64,
    pub noise: NoiseKind,
    pub p: f64,
    pub placement: Placement,
    pub avg_fidelity_sim: f64,
    /// Monte Carlo standard error.
    pub std_error: Option<f64>,
    pub avg_fidelity_closed: Option<f64>,
    pub abs_deviation: Option<f64>,
    /// `(qubit, fidelity)` for each single placement under a uniform placement.
    pub per_placement: Option<Vec<(u8, f64)>>,
}

/// Average fidelity of `cfg` under `noise`. A uniform placement is the mean of
/// the six single-placement averages.
pub fn average_fidelity(
    cfg: &SchemeConfig,
    noise: &NoiseSpec,
    method: AverageMethod,
) -> Result<FidelityReport> {
    let method = method.validate()?;
    let (sim, std_error, per_placement) = match noise.placement {
        Placement::UniformAverage if !noise.is_noiseless() => {
            let maps = CHANNEL_QUBITS
                .iter()
                .map(|&q| TransferMap::compute(cfg, &NoiseSpec::at(noise.kind, noise.p, q)?))
                .collect::<Result<Vec<_>>>()?;
            let per = maps
                .iter()
                .zip(CHANNEL_QUBITS)
                .map(|(m, q)| Ok((q, average_over_inputs(method, |i| m.fidelity(i))?.0)))
                .collect::<Result<Vec<_>>>()?;
            let mixed = TransferMap::mean(&maps)?;
            let (sim, se) = match method {
                AverageMethod::Quadrature(_) => {
                    (per.iter().map(|(_, f)| f).sum::<f64>() / per.len() as f64, None)
                }
                AverageMethod::MonteCarlo { .. } => average_over_inputs(method, |i| mixed.fidelity(i))?,
            };
            (sim, se, Some(per))
        }
        _ => {
            let map = TransferMap::compute(cfg, noise)?;
            let (sim, se) = average_over_inputs(method, |i| map.fidelity(i))?;
            (sim, se, None)
        }
    };
    let closed = match noise.placement {
        _ if noise.is_noiseless() => Some(closed_form(cfg.scheme, NoiseKind::None, cfg.theta(), cfg.phi(), 0.0)?),
        Placement::UniformAverage => Some(closed_form(cfg.scheme, noise.kind, cfg.theta(), cfg.phi(), noise.p)?),
        Placement::Qubit(q) => {
            closed_form_at_qubit(cfg.scheme, noise.kind, cfg.theta(), cfg.phi(), noise.p, q).ok()
        }
    };
    Ok(FidelityReport {
        scheme: cfg.scheme,
        theta: cfg.theta(),
        phi: cfg.phi(),
        noise: noise.kind,
        p: noise.p,
        placement: noise.placement,
        avg_fidelity_sim: sim,
        std_error,
        avg_fidelity_closed: closed,
        abs_deviation: closed.map(|f| (sim - f).abs()),
        per_placement,
    })
}

fn check_closed_args(theta: f64, phi: f64, p: f64) -> Result<()> {
    crate::angle::EntanglementAngle::named("theta", theta)?;
    crate::angle::EntanglementAngle::named("phi", phi)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ProbabilityOutOfRange(p));
    }
    Ok(())
}

/// `sin(2 theta) sin(2 phi)`.
pub fn entanglement_product(theta: f64, phi: f64) -> f64 {
    (2.0 * theta).sin() * (2.0 * phi).sin()
}

/// Closed-form average fidelity with the noise placement averaged uniformly
/// over the six channel qubits.
pub fn closed_form(scheme: Scheme, kind: NoiseKind, theta: f64, phi: f64, p: f64) -> Result<f64> {
    check_closed_args(theta, phi, p)?;
    let s = entanglement_product(theta, phi);
    Ok(match (scheme, kind) {
        (Scheme::Epr3, NoiseKind::None) => 2.0 / 3.0 + s.powi(3) / 3.0,
        (Scheme::Ghz2, NoiseKind::None) => 2.0 / 3.0 + s.powi(2) / 3.0,
        (Scheme::Epr3, NoiseKind::BitFlip) => (1.0 - p) * (2.0 / 3.0 + s.powi(3) / 3.0),
        (Scheme::Epr3, NoiseKind::PhaseFlip) => 2.0 / 3.0 + (1.0 - 2.0 * p) * s.powi(3) / 3.0,
        (Scheme::Epr3, NoiseKind::Depolarizing) => {
            4.0 * p / 9.0 + (1.0 - 4.0 * p / 3.0) * (2.0 / 3.0 + s.powi(3) / 3.0)
        }
        (Scheme::Ghz2, NoiseKind::BitFlip) => (1.0 - 5.0 * p / 6.0) * (2.0 / 3.0 + s.powi(2) / 3.0),
        (Scheme::Ghz2, NoiseKind::PhaseFlip) => 2.0 / 3.0 + (1.0 - 2.0 * p) * s.powi(2) / 3.0,
        (Scheme::Ghz2, NoiseKind::Depolarizing) => {
            2.0 / 3.0 * (1.0 - 5.0 * p / 9.0) + (1.0 - 4.0 * p / 3.0) * s.powi(2) / 3.0
        }
    })
}

const COVERED_PLACEMENT: &str = "epr3 with noise on any channel qubit; ghz2 bit-flip and \
depolarizing on any channel qubit; ghz2 phase-flip on any channel qubit";

/// Closed-form average fidelity when the noise always hits `qubit`.
pub fn closed_form_at_qubit(
    scheme: Scheme,
    kind: NoiseKind,
    theta: f64,
    phi: f64,
    p: f64,
    qubit: u8,
) -> Result<f64> {
    check_closed_args(theta, phi, p)?;
    if !CHANNEL_QUBITS.contains(&qubit) {
        return Err(Error::Uncovered(format!("{scheme} {kind} on qubit {qubit}"), COVERED_PLACEMENT));
    }
    let s2 = entanglement_product(theta, phi).powi(2);
    Ok(match (scheme, kind) {
        (Scheme::Ghz2, NoiseKind::BitFlip) => {
            let clean = 2.0 / 3.0 + s2 / 3.0;
            if qubit == 6 {
                clean
            } else {
                (1.0 - p) * clean
            }
        }
        (Scheme::Ghz2, NoiseKind::Depolarizing) => {
            let quantum = (1.0 - 4.0 * p / 3.0) * s2 / 3.0;
            if qubit == 6 {
                2.0 / 3.0 + quantum
            } else {
                2.0 / 3.0 * (1.0 - 2.0 * p / 3.0) + quantum
            }
        }
        // Every placement gives the same value here.
        _ => closed_form(scheme, kind, theta, phi, p)?,
    })
}

/// `<F_GHZ> - <F_EPR>` from the closed forms.
pub fn delta_f(theta: f64, phi: f64, kind: NoiseKind, p: f64) -> Result<f64> {
    Ok(closed_form(Scheme::Ghz2, kind, theta, phi, p)? - closed_form(Scheme::Epr3, kind, theta, phi, p)?)
}

/// Maximizes a unimodal `f` on `[a, b]` by golden-section search; returns the
/// argument and value.
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > tol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Location of the largest `delta_f` along the diagonal `theta = phi`, where
/// the product `sin(2 theta) sin(2 phi)` sweeps all of (0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaOptimum {
    pub theta: f64,
    pub product: f64,
    pub delta_f: f64,
}

pub fn delta_f_optimum(kind: NoiseKind, p: f64) -> Result<DeltaOptimum> {
    delta_f(FRAC_PI_2 / 4.0, FRAC_PI_2 / 4.0, kind, p)?;
    let (theta, value) = golden_section_max(
        |t| delta_f(t, t, kind, p).unwrap_or(f64::NEG_INFINITY),
        1e-9,
        FRAC_PI_2 / 2.0,
        1e-12,
    );
    Ok(DeltaOptimum {
        theta,
        product: entanglement_product(theta, theta),
        delta_f: value,
    })
}

/// Analytic maximizer of the bit-flip difference in terms of the product
/// `sin(2 theta) sin(2 phi)`.
pub fn bitflip_optimal_product(p: f64) -> f64 {
    2.0 * (1.0 - 5.0 * p / 6.0) / (3.0 * (1.0 - p))
}

/// Cartesian parameter grid. Rows come out ordered by scheme, noise kind, `p`,
/// `theta`, then `phi` (the last varying fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub schemes: Vec<Scheme>,
    pub kinds: Vec<NoiseKind>,
    pub ps: Vec<f64>,
    pub thetas: Vec<f64>,
    pub phis: Vec<f64>,
    pub placement: Placement,
    pub method: AverageMethod,
}

/// `n` points strictly inside `(0, pi/2)`: `(pi/2) i / (n + 1)`; a single point is `pi/4`.
pub fn open_angle_grid(n: usize) -> Vec<f64> {
    (1..=n).map(|i| FRAC_PI_2 * i as f64 / (n + 1) as f64).collect()
}

impl SweepGrid {
    pub fn len(&self) -> usize {
        self.schemes.len() * self.kinds.len() * self.ps.len() * self.thetas.len() * self.phis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn points(&self) -> Vec<(Scheme, NoiseKind, f64, f64, f64)> {
        let mut out = Vec::with_capacity(self.len());
        for &s in &self.schemes {
            for &k in &self.kinds {
                for &p in &self.ps {
                    for &t in &self.thetas {
                        for &f in &self.phis {
                            out.push((s, k, p, t, f));
                        }
                    }
                }
            }
        }
        out
    }
}

/// One report per grid point, in grid order. Points are evaluated in
/// parallel; each is independent, so results do not depend on thread count.
pub fn grid_sweep(grid: &SweepGrid) -> Result<Vec<FidelityReport>> {
    grid_sweep_with(grid, SchemeConfig::new)
}

/// [`grid_sweep`] with a custom configuration builder, for example one that
/// swaps in a different correction table.
pub fn grid_sweep_with<F>(grid: &SweepGrid, make_cfg: F) -> Result<Vec<FidelityReport>>
where
    F: Fn(Scheme, f64, f64) -> Result<SchemeConfig> + Sync,
{
    if grid.is_empty() {
        return Err(Error::InvalidGrid("every axis needs at least one value".into()));
    }
    grid.points()
        .into_par_iter()
        .map(|(scheme, kind, p, theta, phi)| {
            let cfg = make_cfg(scheme, theta, phi)?;
            let noise = if kind == NoiseKind::None {
                NoiseSpec::none()
            } else {
                NoiseSpec::new(kind, p, grid.placement)?
            };
            average_fidelity(&cfg, &noise, grid.method)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::build_channel;
    use crate::noise::noisy_channel;
    use crate::protocol::teleport;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use std::f64::consts::FRAC_PI_4;

    fn inputs() -> Vec<InputState> {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut v: Vec<InputState> = (0..6).map(|_| InputState::random(&mut rng)).collect();
        v.push(InputState::equal());
        v.push(InputState::from_angles(0.0, 0.0).unwrap());
        v
    }

    #[test]
    fn transfer_map_matches_direct_simulation() {
        for scheme in Scheme::ALL {
            let cfg = SchemeConfig::new(scheme, 0.62, 1.03).unwrap();
            for noise in [
                NoiseSpec::none(),
                NoiseSpec::at(NoiseKind::BitFlip, 0.2, 6).unwrap(),
                NoiseSpec::uniform(NoiseKind::Depolarizing, 0.1).unwrap(),
            ] {
                let fast = TransferMap::compute(&cfg, &noise).unwrap();
                let dense =
                    TransferMap::from_channel(&cfg, &noisy_channel(&build_channel(&cfg), &noise).unwrap())
                        .unwrap();
                for input in inputs() {
                    let direct = teleport(&input, &cfg, &noise).unwrap().total_fidelity;
                    assert_abs_diff_eq!(fast.fidelity(&input), direct, epsilon = 1e-13);
                    assert_abs_diff_eq!(dense.fidelity(&input), direct, epsilon = 1e-13);
                }
            }
        }
    }

    #[test]
    fn input_moments() {
        let (a, _) = average_over_inputs(AverageMethod::default(), |i| {
            i.c0().norm_sqr().powi(2) + i.c1().norm_sqr().powi(2)
        })
        .unwrap();
        let (b, _) =
            average_over_inputs(AverageMethod::default(), |i| i.c0().norm_sqr() * i.c1().norm_sqr()).unwrap();
        assert_abs_diff_eq!(a, 2.0 / 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(b, 1.0 / 6.0, epsilon = 1e-14);
    }

    #[test]
    fn ideal_average_is_one() {
        for scheme in Scheme::ALL {
            let r = average_fidelity(&SchemeConfig::ideal(scheme), &NoiseSpec::none(), AverageMethod::default())
                .unwrap();
            assert_abs_diff_eq!(r.avg_fidelity_sim, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn table_one_values() {
        let t = FRAC_PI_4;
        let p = 0.3;
        let cases = [
            (Scheme::Epr3, NoiseKind::BitFlip, 1.0 - p),
            (Scheme::Ghz2, NoiseKind::BitFlip, 1.0 - 5.0 * p / 6.0),
            (Scheme::Epr3, NoiseKind::PhaseFlip, 1.0 - 2.0 * p / 3.0),
            (Scheme::Ghz2, NoiseKind::PhaseFlip, 1.0 - 2.0 * p / 3.0),
            (Scheme::Epr3, NoiseKind::Depolarizing, 1.0 - 8.0 * p / 9.0),
            (Scheme::Ghz2, NoiseKind::Depolarizing, 1.0 - 22.0 * p / 27.0),
        ];
        for (s, k, want) in cases {
            assert_abs_diff_eq!(closed_form(s, k, t, t, p).unwrap(), want, epsilon = 1e-15);
        }
    }

    #[test]
    fn small_deviation_asymptotics() {
        let d: f64 = 0.01;
        let (t, f) = (FRAC_PI_4 + d, FRAC_PI_4 - d);
        let epr = closed_form(Scheme::Epr3, NoiseKind::None, t, f, 0.0).unwrap();
        let ghz = closed_form(Scheme::Ghz2, NoiseKind::None, t, f, 0.0).unwrap();
        assert_abs_diff_eq!(epr, 1.0 - 2.0 * (2.0 * d * d), epsilon = 1e-5);
        assert_abs_diff_eq!(ghz, 1.0 - 4.0 / 3.0 * (2.0 * d * d), epsilon = 1e-5);
    }

    #[test]
    fn every_placement_matches_its_closed_form() {
        let (theta, phi, p) = (0.5, 0.95, 0.17);
        for scheme in Scheme::ALL {
            let cfg = SchemeConfig::new(scheme, theta, phi).unwrap();
            for kind in NoiseKind::NOISY {
                for q in CHANNEL_QUBITS {
                    let r = average_fidelity(&cfg, &NoiseSpec::at(kind, p, q).unwrap(), AverageMethod::default())
                        .unwrap();
                    let want = closed_form_at_qubit(scheme, kind, theta, phi, p, q).unwrap();
                    assert_abs_diff_eq!(r.avg_fidelity_sim, want, epsilon = 1e-12);
                    assert_eq!(r.avg_fidelity_closed, Some(want));
                }
            }
        }
    }

    #[test]
    fn uniform_average_is_mean_of_placements() {
        let cfg = SchemeConfig::new(Scheme::Ghz2, 0.7, 0.6).unwrap();
        let r = average_fidelity(
            &cfg,
            &NoiseSpec::uniform(NoiseKind::BitFlip, 0.2).unwrap(),
            AverageMethod::default(),
        )
        .unwrap();
        let per = r.per_placement.as_ref().unwrap();
        assert_eq!(per.len(), 6);
        let mean = per.iter().map(|(_, f)| f).sum::<f64>() / 6.0;
        assert_eq!(mean, r.avg_fidelity_sim);
        assert!(r.abs_deviation.unwrap() < 1e-12);
    }

    #[test]
    fn monte_carlo_agrees_with_quadrature() {
        let cfg = SchemeConfig::new(Scheme::Epr3, 0.6, 0.9).unwrap();
        let noise = NoiseSpec::uniform(NoiseKind::PhaseFlip, 0.1).unwrap();
        let quad = average_fidelity(&cfg, &noise, AverageMethod::default()).unwrap();
        let mc = average_fidelity(&cfg, &noise, AverageMethod::MonteCarlo { samples: 10_000, seed: 5 }).unwrap();
        let se = mc.std_error.unwrap();
        assert!(se > 0.0);
        assert!((mc.avg_fidelity_sim - quad.avg_fidelity_sim).abs() < 4.0 * se);
        let again = average_fidelity(&cfg, &noise, AverageMethod::MonteCarlo { samples: 10_000, seed: 5 }).unwrap();
        assert_eq!(mc, again);
    }

    #[test]
    fn invalid_methods() {
        let cfg = SchemeConfig::ideal(Scheme::Epr3);
        assert!(matches!(
            average_fidelity(&cfg, &NoiseSpec::none(), AverageMethod::Quadrature(4)),
            Err(Error::InvalidMethod(_))
        ));
        assert!(matches!(
            average_fidelity(&cfg, &NoiseSpec::none(), AverageMethod::MonteCarlo { samples: 0, seed: 1 }),
            Err(Error::InvalidMethod(_))
        ));
    }

    #[test]
    fn delta_f_examples() {
        assert_abs_diff_eq!(delta_f(FRAC_PI_4, FRAC_PI_4, NoiseKind::None, 0.0).unwrap(), 0.0, epsilon = 1e-15);
        // Product 2/3 on the diagonal.
        let t = 0.5 * (2.0f64 / 3.0).sqrt().asin();
        assert_abs_diff_eq!(delta_f(t, t, NoiseKind::None, 0.0).unwrap(), 4.0 / 81.0, epsilon = 1e-15);
        let opt = delta_f_optimum(NoiseKind::None, 0.0).unwrap();
        assert_abs_diff_eq!(opt.product, 2.0 / 3.0, epsilon = 1e-7);
        assert_abs_diff_eq!(opt.delta_f, 4.0 / 81.0, epsilon = 1e-12);
    }

    #[test]
    fn noiseless_delta_f_is_nonnegative() {
        for &t in &open_angle_grid(201) {
            for &f in &open_angle_grid(201) {
                assert!(delta_f(t, f, NoiseKind::None, 0.0).unwrap() >= 0.0);
            }
        }
    }

    #[test]
    fn noisy_maximum_exceeds_noiseless() {
        let opt = delta_f_optimum(NoiseKind::BitFlip, 0.07).unwrap();
        assert!(opt.delta_f > 4.0 / 81.0);
        assert_abs_diff_eq!(opt.product, bitflip_optimal_product(0.07), epsilon = 1e-6);
    }

    #[test]
    fn sweep_order_and_single_point() {
        let grid = SweepGrid {
            schemes: vec![Scheme::Epr3, Scheme::Ghz2],
            kinds: vec![NoiseKind::PhaseFlip],
            ps: vec![0.0, 0.1],
            thetas: open_angle_grid(2),
            phis: open_angle_grid(3),
            placement: Placement::UniformAverage,
            method: AverageMethod::default(),
        };
        let rows = grid_sweep(&grid).unwrap();
        assert_eq!(rows.len(), 24);
        assert_eq!(rows[0].scheme, Scheme::Epr3);
        assert_eq!(rows[12].scheme, Scheme::Ghz2);
        assert_eq!(rows[6].p, 0.1);
        assert_eq!(rows[1].phi, open_angle_grid(3)[1]);
        assert!(rows.iter().all(|r| r.abs_deviation.unwrap() < 1e-12));

        let single = SweepGrid {
            schemes: vec![Scheme::Ghz2],
            kinds: vec![NoiseKind::None],
            ps: vec![0.0],
            thetas: open_angle_grid(1),
            phis: vec![0.4],
            ..grid.clone()
        };
        let rows = grid_sweep(&single).unwrap();
        let direct = average_fidelity(
            &SchemeConfig::new(Scheme::Ghz2, FRAC_PI_4, 0.4).unwrap(),
            &NoiseSpec::none(),
            AverageMethod::default(),
        )
        .unwrap();
        assert_eq!(rows, vec![direct]);
        assert!(grid_sweep(&SweepGrid { ps: vec![], ..grid }).is_err());
    }
}
