//! Generalized entangled measurement bases on `N` qubits.
//!
//! Element `(mu, lambda)` is
//! `sum_j (-1)^(mu j) b_(mu xor j) |j>|j xor lambda_2>...|j xor lambda_N>`
//! with `b_0 = cos(phi)`, `b_1 = sin(phi)`. At `phi = pi/4` this is the Bell
//! basis for `N = 2` and the GHZ basis for `N = 3`.

use serde::Serialize;

use crate::angle::EntanglementAngle;
use crate::error::{Error, Result};
use crate::linalg::{c, StateVector};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BasisLabel {
    mu: u8,
    lambda: Vec<u8>,
    angle: EntanglementAngle,
}

fn check_bit(b: u8) -> Result<u8> {
    if b > 1 {
        Err(Error::NotABit(b))
    } else {
        Ok(b)
    }
}

impl BasisLabel {
    pub fn new(num_qubits: usize, mu: u8, lambda: Vec<u8>, angle: EntanglementAngle) -> Result<Self> {
        if num_qubits < 2 {
            return Err(Error::TooFewQubits(num_qubits));
        }
        if lambda.len() != num_qubits - 1 {
            return Err(Error::LambdaLength {
                expected: num_qubits - 1,
                found: lambda.len(),
            });
        }
        check_bit(mu)?;
        for &b in &lambda {
            check_bit(b)?;
        }
        Ok(Self { mu, lambda, angle })
    }

    /// Label at position `index` of the enumeration order: `mu` is the most
    /// significant bit, followed by `lambda` read as a big-endian counter.
    pub fn from_index(num_qubits: usize, index: usize, angle: EntanglementAngle) -> Result<Self> {
        if num_qubits < 2 {
            return Err(Error::TooFewQubits(num_qubits));
        }
        let n = num_qubits;
        if index >= 1 << n {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range for {n} qubits"
            )));
        }
        let mu = (index >> (n - 1)) as u8 & 1;
        let lambda = (0..n - 1)
            .map(|k| (index >> (n - 2 - k)) as u8 & 1)
            .collect();
        Ok(Self { mu, lambda, angle })
    }

    pub fn index(&self) -> usize {
        self.lambda
            .iter()
            .fold(self.mu as usize, |acc, &b| (acc << 1) | b as usize)
    }

    pub fn num_qubits(&self) -> usize {
        self.lambda.len() + 1
    }

    pub fn mu(&self) -> u8 {
        self.mu
    }

    pub fn lambda(&self) -> &[u8] {
        &self.lambda
    }

    pub fn angle(&self) -> EntanglementAngle {
        self.angle
    }

    fn lambda_bits(&self) -> usize {
        self.lambda.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }
}

pub fn basis_element(label: &BasisLabel) -> StateVector {
    let n = label.num_qubits();
    let b = label.angle.coefficients();
    let low = label.lambda_bits();
    let mut amps = vec![c(0.0, 0.0); 1 << n];
    for j in 0..2usize {
        let sign = if label.mu as usize * j % 2 == 1 { -1.0 } else { 1.0 };
        let coeff = sign * b[(label.mu as usize) ^ j];
        // |j, j^l2, ..., j^lN>: flipping j flips every bit.
        let index = if j == 0 { low } else { ((1 << n) - 1) ^ low };
        amps[index] = c(coeff, 0.0);
    }
    StateVector::new(amps).expect("power-of-two length")
}

pub fn basis_labels(num_qubits: usize, angle: EntanglementAngle) -> Result<Vec<BasisLabel>> {
    (0..1usize << num_qubits.min(usize::BITS as usize - 1))
        .map(|i| BasisLabel::from_index(num_qubits, i, angle))
        .collect()
}

/// All `2^N` elements in enumeration order.
pub fn full_basis(num_qubits: usize, angle: f64) -> Result<Vec<StateVector>> {
    if num_qubits < 2 {
        return Err(Error::TooFewQubits(num_qubits));
    }
    let angle = EntanglementAngle::named("basis angle", angle)?;
    Ok(basis_labels(num_qubits, angle)?
        .iter()
        .map(basis_element)
        .collect())
}

/// Human-readable expansion such as `+0.707106781187|000> -0.707106781187|111>`.
pub fn ket_string(ket: &StateVector) -> String {
    let n = ket.num_qubits();
    ket.amplitudes()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm() > 1e-15)
        .map(|(i, a)| {
            let re = a.re;
            format!("{}{:.12}|{:0width$b}>", if re < 0.0 { '-' } else { '+' }, re.abs(), i, width = n)
        })
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs_diff, CMatrix, QubitMap};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI};

    fn real_amps(s: &StateVector) -> Vec<f64> {
        s.amplitudes().iter().map(|a| a.re).collect()
    }

    fn assert_amps(s: &StateVector, expect: &[(usize, f64)]) {
        let amps = real_amps(s);
        for (i, a) in amps.iter().enumerate() {
            let e = expect.iter().find(|(j, _)| *j == i).map_or(0.0, |(_, v)| *v);
            assert_abs_diff_eq!(*a, e, epsilon = 1e-15);
        }
    }

    #[test]
    fn bell_phi_plus() {
        let l = BasisLabel::new(2, 0, vec![0], EntanglementAngle::MAXIMAL).unwrap();
        assert_amps(&basis_element(&l), &[(0b00, FRAC_1_SQRT_2), (0b11, FRAC_1_SQRT_2)]);
    }

    #[test]
    fn ghz_row_with_mu_one_lambda_eleven() {
        let l = BasisLabel::new(3, 1, vec![1, 1], EntanglementAngle::MAXIMAL).unwrap();
        assert_amps(&basis_element(&l), &[(0b011, FRAC_1_SQRT_2), (0b100, -FRAC_1_SQRT_2)]);
    }

    #[test]
    fn mu_one_puts_sine_on_zero_branch() {
        let phi = PI / 6.0;
        let l = BasisLabel::new(3, 1, vec![0, 0], EntanglementAngle::new(phi).unwrap()).unwrap();
        assert_amps(&basis_element(&l), &[(0b000, phi.sin()), (0b111, -phi.cos())]);
    }

    #[test]
    fn bell_table() {
        let basis = full_basis(2, FRAC_PI_4).unwrap();
        let h = FRAC_1_SQRT_2;
        assert_amps(&basis[0], &[(0, h), (3, h)]);
        assert_amps(&basis[1], &[(1, h), (2, h)]);
        assert_amps(&basis[2], &[(0, h), (3, -h)]);
        assert_amps(&basis[3], &[(1, h), (2, -h)]);
    }

    #[test]
    fn ghz_table() {
        let basis = full_basis(3, FRAC_PI_4).unwrap();
        let h = FRAC_1_SQRT_2;
        for (row, ket) in basis.iter().enumerate() {
            let lam = row & 0b11;
            let sign = if row >= 4 { -1.0 } else { 1.0 };
            assert_amps(ket, &[(lam, h), (0b111 ^ lam, sign * h)]);
        }
    }

    #[test]
    fn four_qubit_basis_is_orthonormal() {
        let basis = full_basis(4, 0.3).unwrap();
        assert_eq!(basis.len(), 16);
        let gram = CMatrix::from_fn(16, 16, |i, j| basis[i].inner(&basis[j]).unwrap());
        assert!(max_abs_diff(&gram, &CMatrix::identity(16, 16)) < 1e-12);
    }

    #[test]
    fn maximal_angle_gives_maximally_mixed_marginals() {
        for n in 2..=4 {
            let map = QubitMap::new(&(1..=n as u8).collect::<Vec<_>>()).unwrap();
            for ket in full_basis(n, FRAC_PI_4).unwrap() {
                let r = ket.outer().partial_trace(&[1], &map).unwrap();
                let half = CMatrix::identity(2, 2) * c(0.5, 0.0);
                assert!(max_abs_diff(r.matrix(), &half) < 1e-12);
            }
        }
    }

    #[test]
    fn label_index_round_trip() {
        let a = EntanglementAngle::new(0.4).unwrap();
        for i in 0..8 {
            assert_eq!(BasisLabel::from_index(3, i, a).unwrap().index(), i);
        }
    }

    #[test]
    fn invalid_inputs() {
        assert!(full_basis(3, 0.0).is_err());
        assert!(full_basis(3, PI / 2.0).is_err());
        assert!(full_basis(1, 0.3).is_err());
        let a = EntanglementAngle::MAXIMAL;
        assert!(matches!(
            BasisLabel::new(3, 0, vec![1], a),
            Err(Error::LambdaLength { expected: 2, found: 1 })
        ));
        assert!(matches!(BasisLabel::new(2, 2, vec![0], a), Err(Error::NotABit(2))));
    }

    #[test]
    fn ket_string_format() {
        let s = ket_string(&full_basis(2, FRAC_PI_4).unwrap()[3]);
        assert_eq!(s, "+0.707106781187|01> -0.707106781187|10>");
    }
}
