//! Dense complex linear algebra on a small labeled qubit register.
//!
//! Basis-state indices are big-endian: the qubit in tensor slot 0 is the most
//! significant bit. A [`QubitMap`] assigns register labels (the physical qubit
//! names 1..9) to slots, so operators can be addressed by label regardless of
//! how the register is laid out in memory.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
/// Register label of a physical qubit.
pub type Label = u8;

/// Structural tolerance for Hermiticity and normalization checks.
pub const STRUCTURE_TOL: f64 = 1e-12;
/// Smallest eigenvalue still accepted as positive semidefinite.
pub const PSD_TOL: f64 = -1e-10;

pub(crate) const fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn qubits_for_dim(dim: usize) -> Result<usize> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(dim));
    }
    Ok(dim.trailing_zeros() as usize)
}

/// Places the bits of `value` (most significant first) at the given slots of an
/// `n`-qubit index.
#[inline]
pub(crate) fn scatter(value: usize, slots: &[usize], n: usize) -> usize {
    let k = slots.len();
    slots
        .iter()
        .enumerate()
        .fold(0, |acc, (i, &s)| acc | (((value >> (k - 1 - i)) & 1) << (n - 1 - s)))
}

/// Largest entrywise modulus of `a - b`. Panics on shape mismatch.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Bijection between register labels and tensor slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QubitMap {
    labels: Vec<Label>,
}

impl QubitMap {
    /// Slot `i` holds `labels[i]`.
    pub fn new(labels: &[Label]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyKeep);
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(*l));
            }
        }
        Ok(Self {
            labels: labels.to_vec(),
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn contains(&self, label: Label) -> bool {
        self.labels.contains(&label)
    }

    pub fn slot(&self, label: Label) -> Result<usize> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .ok_or(Error::UnknownLabel(label))
    }

    /// Slots of `labels`, rejecting unknown and repeated labels.
    pub fn slots(&self, labels: &[Label]) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(labels.len());
        for (i, &l) in labels.iter().enumerate() {
            if labels[..i].contains(&l) {
                return Err(Error::DuplicateLabel(l));
            }
            out.push(self.slot(l)?);
        }
        Ok(out)
    }

    /// Slots not named in `labels`, in ascending slot order.
    fn complement(&self, slots: &[usize]) -> Vec<usize> {
        (0..self.len()).filter(|s| !slots.contains(s)).collect()
    }
}

/// Ket of `num_qubits` qubits with `2^num_qubits` amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: DVector<C64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        let num_qubits = qubits_for_dim(amplitudes.len())?;
        Ok(Self {
            num_qubits,
            amplitudes: DVector::from_vec(amplitudes),
        })
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&a| c(a, 0.0)).collect())
    }

    /// Computational basis ket `|index>` on `num_qubits` qubits.
    pub fn basis(num_qubits: usize, index: usize) -> Self {
        let mut amplitudes = DVector::zeros(1 << num_qubits);
        amplitudes[index] = c(1.0, 0.0);
        Self {
            num_qubits,
            amplitudes,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= STRUCTURE_TOL
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    pub fn kron(&self, other: &StateVector) -> StateVector {
        StateVector {
            num_qubits: self.num_qubits + other.num_qubits,
            amplitudes: self.amplitudes.kronecker(&other.amplitudes),
        }
    }

    /// Kronecker product in list order.
    pub fn tensor(states: &[StateVector]) -> Result<StateVector> {
        let (first, rest) = states.split_first().ok_or(Error::EmptyTensor)?;
        Ok(rest.iter().fold(first.clone(), |acc, s| acc.kron(s)))
    }

    /// Re-lays the ket out in `map`'s slot order, given that its qubits currently
    /// carry `labels` (slot order). `labels` must be a permutation of `map`'s labels.
    pub fn rearranged(&self, labels: &[Label], map: &QubitMap) -> Result<StateVector> {
        if labels.len() != self.num_qubits || map.len() != self.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.num_qubits,
                found: labels.len().max(map.len()),
            });
        }
        let n = self.num_qubits;
        let targets = map.slots(labels)?;
        let mut out = DVector::zeros(self.dim());
        for (i, a) in self.amplitudes.iter().enumerate() {
            out[scatter(i, &targets, n)] = *a;
        }
        Ok(StateVector {
            num_qubits: n,
            amplitudes: out,
        })
    }

    /// Tensor product of kets living on disjoint label sets, laid out by `map`.
    pub fn arrange(parts: &[(&StateVector, &[Label])], map: &QubitMap) -> Result<StateVector> {
        let kets: Vec<StateVector> = parts.iter().map(|(k, _)| (*k).clone()).collect();
        let labels: Vec<Label> = parts.iter().flat_map(|(_, l)| l.iter().copied()).collect();
        for (k, l) in parts {
            if k.num_qubits != l.len() {
                return Err(Error::ArityMismatch {
                    arity: k.num_qubits,
                    targets: l.len(),
                });
            }
        }
        StateVector::tensor(&kets)?.rearranged(&labels, map)
    }

    /// `|self><self|`.
    pub fn outer(&self) -> DensityOperator {
        DensityOperator {
            num_qubits: self.num_qubits,
            matrix: &self.amplitudes * self.amplitudes.adjoint(),
        }
    }
}

/// Square operator on `arity` qubits. Not assumed unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearOperator {
    arity: usize,
    matrix: CMatrix,
}

impl LinearOperator {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        let arity = qubits_for_dim(matrix.nrows())?;
        Ok(Self { arity, matrix })
    }

    pub fn identity(arity: usize) -> Self {
        Self {
            arity,
            matrix: CMatrix::identity(1 << arity, 1 << arity),
        }
    }

    pub fn pauli_x() -> Self {
        Self::from_2x2([[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]])
    }

    /// `[[0, -i], [i, 0]]`.
    pub fn pauli_y() -> Self {
        Self::from_2x2([[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]])
    }

    pub fn pauli_z() -> Self {
        Self::from_2x2([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]])
    }

    fn from_2x2(m: [[C64; 2]; 2]) -> Self {
        Self {
            arity: 1,
            matrix: CMatrix::from_row_slice(2, 2, &[m[0][0], m[0][1], m[1][0], m[1][1]]),
        }
    }

    /// `|ket><ket|`.
    pub fn projector(ket: &StateVector) -> Self {
        Self {
            arity: ket.num_qubits,
            matrix: &ket.amplitudes * ket.amplitudes.adjoint(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            arity: self.arity,
            matrix: &self.matrix * c(factor, 0.0),
        }
    }

    /// Integer power by repeated multiplication (`pow(0)` is the identity).
    pub fn pow(&self, exponent: u8) -> Self {
        (0..exponent).fold(Self::identity(self.arity), |acc, _| acc.compose(self))
    }

    /// `self * other`: apply `other` first.
    pub fn compose(&self, other: &LinearOperator) -> Self {
        assert_eq!(self.arity, other.arity, "arity mismatch in compose");
        Self {
            arity: self.arity,
            matrix: &self.matrix * &other.matrix,
        }
    }

    pub fn kron(&self, other: &LinearOperator) -> Self {
        Self {
            arity: self.arity + other.arity,
            matrix: self.matrix.kronecker(&other.matrix),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self {
            arity: self.arity,
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn apply(&self, ket: &StateVector) -> Result<StateVector> {
        if ket.dim() != self.matrix.ncols() {
            return Err(Error::DimensionMismatch {
                expected: self.matrix.ncols(),
                found: ket.dim(),
            });
        }
        Ok(StateVector {
            num_qubits: self.arity,
            amplitudes: &self.matrix * &ket.amplitudes,
        })
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        let dim = self.matrix.nrows();
        max_abs_diff(
            &(self.matrix.adjoint() * &self.matrix),
            &CMatrix::identity(dim, dim),
        ) <= tol
    }

    /// Expands the operator to the whole register described by `map`, acting on
    /// `targets` (first target is the most significant bit of the operator's
    /// index) and as the identity elsewhere.
    pub fn embed(&self, targets: &[Label], map: &QubitMap) -> Result<LinearOperator> {
        if targets.len() != self.arity {
            return Err(Error::ArityMismatch {
                arity: self.arity,
                targets: targets.len(),
            });
        }
        let n = map.len();
        let target_slots = map.slots(targets)?;
        let rest = map.complement(&target_slots);
        let sub = 1usize << self.arity;
        let mut out = CMatrix::zeros(1 << n, 1 << n);
        for r in 0..(1usize << rest.len()) {
            let base = scatter(r, &rest, n);
            for i in 0..sub {
                let row = base | scatter(i, &target_slots, n);
                for j in 0..sub {
                    let v = self.matrix[(i, j)];
                    if v != C64::default() {
                        out[(row, base | scatter(j, &target_slots, n))] = v;
                    }
                }
            }
        }
        Ok(LinearOperator { arity: n, matrix: out })
    }
}

/// Density operator, possibly unnormalized (post-measurement branches).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    num_qubits: usize,
    matrix: CMatrix,
}

impl DensityOperator {
    /// Accepts any square power-of-two matrix that is Hermitian within
    /// [`STRUCTURE_TOL`].
    pub fn from_matrix(matrix: CMatrix) -> Result<Self> {
        let op = LinearOperator::new(matrix)?;
        let dev = max_abs_diff(&op.matrix, &op.matrix.adjoint());
        if dev > STRUCTURE_TOL {
            return Err(Error::NotHermitian(dev));
        }
        Ok(Self {
            num_qubits: op.arity,
            matrix: op.matrix,
        })
    }

    pub(crate) fn from_matrix_unchecked(matrix: CMatrix) -> Self {
        let num_qubits = matrix.nrows().trailing_zeros() as usize;
        Self { num_qubits, matrix }
    }

    pub fn pure(ket: &StateVector) -> Self {
        ket.outer()
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    pub fn hermiticity_error(&self) -> f64 {
        max_abs_diff(&self.matrix, &self.matrix.adjoint())
    }

    pub fn min_eigenvalue(&self) -> f64 {
        // Symmetrize so the solver sees an exactly Hermitian input.
        let h = (&self.matrix + self.matrix.adjoint()) * c(0.5, 0.0);
        // The default machine-epsilon threshold can stall into NaN on rank-deficient
        // inputs with tiny entries.
        match SymmetricEigen::try_new(h, 1e-15, 100_000) {
            Some(e) => e.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min),
            None => f64::NAN,
        }
    }

    pub fn is_psd(&self) -> bool {
        self.min_eigenvalue() >= PSD_TOL
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            num_qubits: self.num_qubits,
            matrix: &self.matrix * c(factor, 0.0),
        }
    }

    /// `self / Tr(self)`; `None` when the trace is at most `min_trace`.
    pub fn normalized(&self, min_trace: f64) -> Option<Self> {
        let t = self.trace();
        (t > min_trace).then(|| self.scaled(1.0 / t))
    }

    /// Uniform mixture of equally sized operators.
    pub fn average(states: &[DensityOperator]) -> Result<Self> {
        let (first, rest) = states.split_first().ok_or(Error::EmptyTensor)?;
        let mut sum = first.matrix.clone();
        for s in rest {
            if s.dim() != first.dim() {
                return Err(Error::DimensionMismatch {
                    expected: first.dim(),
                    found: s.dim(),
                });
            }
            sum += &s.matrix;
        }
        Ok(Self {
            num_qubits: first.num_qubits,
            matrix: sum * c(1.0 / states.len() as f64, 0.0),
        })
    }

    pub fn kron(&self, other: &DensityOperator) -> Self {
        Self {
            num_qubits: self.num_qubits + other.num_qubits,
            matrix: self.matrix.kronecker(&other.matrix),
        }
    }

    /// Re-lays the operator out in `map`'s slot order, given that its qubits
    /// currently carry `labels` (slot order).
    pub fn rearranged(&self, labels: &[Label], map: &QubitMap) -> Result<Self> {
        if labels.len() != self.num_qubits || map.len() != self.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.num_qubits,
                found: labels.len().max(map.len()),
            });
        }
        let n = self.num_qubits;
        let targets = map.slots(labels)?;
        let perm: Vec<usize> = (0..self.dim()).map(|i| scatter(i, &targets, n)).collect();
        let mut out = CMatrix::zeros(self.dim(), self.dim());
        for (i, &pi) in perm.iter().enumerate() {
            for (j, &pj) in perm.iter().enumerate() {
                out[(pi, pj)] = self.matrix[(i, j)];
            }
        }
        Ok(Self {
            num_qubits: n,
            matrix: out,
        })
    }

    /// `U rho U^dagger`.
    pub fn evolve(&self, op: &LinearOperator) -> Result<Self> {
        self.check_dim(op.matrix.nrows())?;
        Ok(Self {
            num_qubits: self.num_qubits,
            matrix: &op.matrix * &self.matrix * op.matrix.adjoint(),
        })
    }

    /// `sum_i A_i rho A_i^dagger` for register-sized operators.
    pub fn apply_kraus(&self, ops: &[LinearOperator]) -> Result<Self> {
        let mut sum = CMatrix::zeros(self.dim(), self.dim());
        for a in ops {
            self.check_dim(a.matrix.nrows())?;
            sum += &a.matrix * &self.matrix * a.matrix.adjoint();
        }
        Ok(Self {
            num_qubits: self.num_qubits,
            matrix: sum,
        })
    }

    /// Reduced operator on `keep` (in the given order).
    pub fn partial_trace(&self, keep: &[Label], map: &QubitMap) -> Result<Self> {
        self.check_dim(1 << map.len())?;
        let matrix = partial_trace_raw(&self.matrix, keep, map)?;
        Ok(Self::from_matrix_unchecked(matrix))
    }

    /// `<ket| rho |ket>`, real part.
    pub fn expectation(&self, ket: &StateVector) -> Result<f64> {
        self.check_dim(ket.dim())?;
        let v = ket.amplitudes.dotc(&(&self.matrix * &ket.amplitudes));
        Ok(v.re)
    }

    /// `(<ket| x 1) rho (|ket> x 1)` with `ket` on the labels `on` (in that order),
    /// equal to `Tr_on[(|ket><ket| x 1) rho]`. The result lives on the remaining
    /// labels in slot order.
    pub fn project_out(&self, ket: &StateVector, on: &[Label], map: &QubitMap) -> Result<Self> {
        self.check_dim(1 << map.len())?;
        let matrix = project_out_raw(&self.matrix, ket, on, map)?;
        Ok(Self::from_matrix_unchecked(matrix))
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if dim != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: dim,
            });
        }
        Ok(())
    }
}

pub(crate) fn partial_trace_raw(m: &CMatrix, keep: &[Label], map: &QubitMap) -> Result<CMatrix> {
    if keep.is_empty() {
        return Err(Error::EmptyKeep);
    }
    let n = map.len();
    let keep_slots = map.slots(keep)?;
    let gone = map.complement(&keep_slots);
    let kd = 1usize << keep_slots.len();
    let kept: Vec<usize> = (0..kd).map(|i| scatter(i, &keep_slots, n)).collect();
    let traced: Vec<usize> = (0..(1usize << gone.len()))
        .map(|d| scatter(d, &gone, n))
        .collect();
    let mut out = CMatrix::zeros(kd, kd);
    for (i, &ri) in kept.iter().enumerate() {
        for (j, &cj) in kept.iter().enumerate() {
            out[(i, j)] = traced.iter().map(|&d| m[(ri | d, cj | d)]).sum();
        }
    }
    Ok(out)
}

pub(crate) fn project_out_raw(
    m: &CMatrix,
    ket: &StateVector,
    on: &[Label],
    map: &QubitMap,
) -> Result<CMatrix> {
    if ket.num_qubits != on.len() {
        return Err(Error::ArityMismatch {
            arity: ket.num_qubits,
            targets: on.len(),
        });
    }
    let n = map.len();
    let on_slots = map.slots(on)?;
    let rest = map.complement(&on_slots);
    if rest.is_empty() {
        return Err(Error::EmptyKeep);
    }
    // Only the nonzero amplitudes of the projected ket contribute.
    let support: Vec<(usize, C64)> = ket
        .amplitudes
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm_sqr() > 0.0)
        .map(|(i, a)| (scatter(i, &on_slots, n), *a))
        .collect();
    let rd = 1usize << rest.len();
    let remaining: Vec<usize> = (0..rd).map(|i| scatter(i, &rest, n)).collect();
    let mut out = CMatrix::zeros(rd, rd);
    for &(s, a) in &support {
        let ac = a.conj();
        for &(t, b) in &support {
            let w = ac * b;
            for (i, &ri) in remaining.iter().enumerate() {
                for (j, &cj) in remaining.iter().enumerate() {
                    out[(i, j)] += w * m[(s | ri, t | cj)];
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn ket(a: &[f64]) -> StateVector {
        StateVector::from_real(a).unwrap()
    }

    #[test]
    fn tensor_of_basis_kets() {
        let t = StateVector::tensor(&[ket(&[1.0, 0.0]), ket(&[0.0, 1.0])]).unwrap();
        assert_eq!(t, ket(&[0.0, 1.0, 0.0, 0.0]));
    }

    #[test]
    fn tensor_of_plus_states_is_uniform() {
        let plus = ket(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]);
        let t = StateVector::tensor(&[plus.clone(), plus]).unwrap();
        for a in t.amplitudes().iter() {
            assert_abs_diff_eq!(a.re, 0.5, epsilon = 1e-15);
            assert_abs_diff_eq!(a.im, 0.0);
        }
    }

    #[test]
    fn tensor_expands_rotated_qubit() {
        let th = PI / 6.0;
        let t = StateVector::tensor(&[ket(&[th.cos(), th.sin()]), ket(&[1.0, 0.0])]).unwrap();
        let expect = [3f64.sqrt() / 2.0, 0.0, 0.5, 0.0];
        for (a, e) in t.amplitudes().iter().zip(expect) {
            assert_abs_diff_eq!(a.re, e, epsilon = 1e-15);
        }
    }

    #[test]
    fn tensor_rejects_empty_list() {
        assert!(matches!(StateVector::tensor(&[]), Err(Error::EmptyTensor)));
    }

    #[test]
    fn embed_flips_second_qubit() {
        let map = QubitMap::new(&[1, 2]).unwrap();
        let x2 = LinearOperator::pauli_x().embed(&[2], &map).unwrap();
        let out = x2.apply(&StateVector::basis(2, 0)).unwrap();
        assert_eq!(out, StateVector::basis(2, 1));
    }

    #[test]
    fn embed_identity_is_identity() {
        let map = QubitMap::new(&[4, 1, 9]).unwrap();
        let id = LinearOperator::identity(2).embed(&[9, 4], &map).unwrap();
        assert_eq!(id, LinearOperator::identity(3));
    }

    #[test]
    fn embed_rejects_bad_targets() {
        let map = QubitMap::new(&[1, 2, 3]).unwrap();
        let zx = LinearOperator::pauli_z().kron(&LinearOperator::pauli_x());
        assert!(matches!(zx.embed(&[1, 1], &map), Err(Error::DuplicateLabel(1))));
        assert!(matches!(zx.embed(&[1, 7], &map), Err(Error::UnknownLabel(7))));
        assert!(matches!(
            zx.embed(&[1], &map),
            Err(Error::ArityMismatch { arity: 2, targets: 1 })
        ));
    }

    #[test]
    fn partial_trace_of_bell_pair_is_maximally_mixed() {
        let bell = ket(&[FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2]).outer();
        let map = QubitMap::new(&[1, 2]).unwrap();
        let r = bell.partial_trace(&[1], &map).unwrap();
        let half = CMatrix::identity(2, 2) * c(0.5, 0.0);
        assert!(max_abs_diff(r.matrix(), &half) < 1e-15);
    }

    #[test]
    fn partial_trace_of_product_recovers_factor() {
        let rho_a = DensityOperator::average(&[ket(&[0.6, 0.8]).outer(), ket(&[0.0, 1.0]).outer()])
            .unwrap();
        let rho_b = ket(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]).outer();
        let map = QubitMap::new(&[5, 3]).unwrap();
        let r = rho_a.kron(&rho_b).partial_trace(&[5], &map).unwrap();
        assert!(max_abs_diff(r.matrix(), rho_a.matrix()) < 1e-15);
    }

    #[test]
    fn partial_trace_errors() {
        let rho = StateVector::basis(2, 0).outer();
        let map = QubitMap::new(&[1, 2]).unwrap();
        assert!(matches!(rho.partial_trace(&[], &map), Err(Error::EmptyKeep)));
        assert!(matches!(rho.partial_trace(&[3], &map), Err(Error::UnknownLabel(3))));
        let all = rho.partial_trace(&[1, 2], &map).unwrap();
        assert_eq!(all, rho);
    }

    #[test]
    fn expectation_examples() {
        let zero = StateVector::basis(1, 0);
        let one = StateVector::basis(1, 1);
        let rho0 = zero.outer();
        assert_abs_diff_eq!(rho0.expectation(&zero).unwrap(), 1.0);
        assert_abs_diff_eq!(rho0.expectation(&one).unwrap(), 0.0);
        let mixed = DensityOperator::from_matrix(CMatrix::from_diagonal(&DVector::from_vec(vec![
            c(0.3, 0.0),
            c(0.7, 0.0),
        ])))
        .unwrap();
        let plus = ket(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]);
        assert_abs_diff_eq!(mixed.expectation(&plus).unwrap(), 0.5, epsilon = 1e-15);
        assert!(matches!(
            mixed.expectation(&StateVector::basis(2, 0)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn from_matrix_rejects_non_hermitian() {
        let m = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(DensityOperator::from_matrix(m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn project_out_matches_projector_then_trace() {
        let psi = StateVector::new(
            (0..8)
                .map(|i| c((i as f64 * 0.7).sin(), (i as f64 * 1.3).cos()))
                .collect(),
        )
        .unwrap();
        let rho = psi.outer();
        let map = QubitMap::new(&[1, 2, 3]).unwrap();
        let probe = ket(&[0.6, 0.0, 0.0, 0.8]);
        let fast = rho.project_out(&probe, &[3, 1], &map).unwrap();
        let p = LinearOperator::projector(&probe).embed(&[3, 1], &map).unwrap();
        let slow = DensityOperator::from_matrix_unchecked(p.matrix() * rho.matrix())
            .partial_trace(&[2], &map)
            .unwrap();
        assert!(max_abs_diff(fast.matrix(), slow.matrix()) < 1e-14);
    }

    #[test]
    fn pauli_powers() {
        let x = LinearOperator::pauli_x();
        assert_eq!(x.pow(0), LinearOperator::identity(1));
        assert_eq!(x.pow(2), LinearOperator::identity(1));
        assert!(LinearOperator::pauli_y().is_unitary(1e-15));
    }
}
