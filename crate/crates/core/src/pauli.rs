// SPDX-License-Identifier: Apache-2.0

//! Pauli operators in binary symplectic form.

use std::fmt;

use crate::gf2::BitVector;

/// An n-qubit Pauli operator `i^phase · ⊗_j σ(x_j, z_j)`.
///
/// `σ(1, 0) = X`, `σ(0, 1) = Z` and `σ(1, 1) = Y`, so a Hermitian word
/// has an even phase.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliWord {
    pub x: BitVector,
    pub z: BitVector,
    phase: u8,
}

/// Exponent of `i` picked up when multiplying single-qubit Paulis
/// `σ(x1, z1) · σ(x2, z2)`; the result is in {-1, 0, 1}.
#[inline]
fn product_exponent(x1: bool, z1: bool, x2: bool, z2: bool) -> i32 {
    let (x2, z2) = (x2 as i32, z2 as i32);
    match (x1, z1) {
        (false, false) => 0,
        (true, true) => z2 - x2,
        (true, false) => z2 * (2 * x2 - 1),
        (false, true) => x2 * (1 - 2 * z2),
    }
}

impl PauliWord {
    pub fn identity(n: usize) -> Self {
        Self {
            x: BitVector::zeros(n),
            z: BitVector::zeros(n),
            phase: 0,
        }
    }

    pub fn new(x: BitVector, z: BitVector, phase: u8) -> Self {
        assert_eq!(x.len(), z.len(), "x and z parts differ in length");
        Self {
            x,
            z,
            phase: phase % 4,
        }
    }

    /// `X` on the support of `bits`.
    pub fn x_type(bits: BitVector) -> Self {
        let n = bits.len();
        Self::new(bits, BitVector::zeros(n), 0)
    }

    /// `Z` on the support of `bits`.
    pub fn z_type(bits: BitVector) -> Self {
        let n = bits.len();
        Self::new(BitVector::zeros(n), bits, 0)
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    #[inline]
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn with_phase(mut self, phase: u8) -> Self {
        self.phase = phase % 4;
        self
    }

    /// Multiplies by -1.
    pub fn negated(mut self) -> Self {
        self.phase = (self.phase + 2) % 4;
        self
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase.is_multiple_of(2)
    }

    /// Sign of a Hermitian word: `false` for +1, `true` for -1.
    pub fn is_negative(&self) -> bool {
        debug_assert!(self.is_hermitian());
        self.phase == 2
    }

    pub fn weight(&self) -> usize {
        self.x.weight() + self.z.weight() - self.x.overlap(&self.z)
    }

    /// Symplectic product; `true` iff the words anticommute.
    #[inline]
    pub fn anticommutes(&self, other: &PauliWord) -> bool {
        self.x.dot(&other.z) ^ self.z.dot(&other.x)
    }

    #[inline]
    pub fn commutes(&self, other: &PauliWord) -> bool {
        !self.anticommutes(other)
    }

    /// Operator product `self · other`, with exact phase.
    pub fn mul(&self, other: &PauliWord) -> PauliWord {
        assert_eq!(
            self.num_qubits(),
            other.num_qubits(),
            "qubit count mismatch"
        );
        let mut exponent = self.phase as i32 + other.phase as i32;
        // only qubits where self acts nontrivially contribute
        let mut support = self.x.clone();
        for i in self.z.iter_ones() {
            support.set(i, true);
        }
        for j in support.iter_ones() {
            exponent +=
                product_exponent(self.x.get(j), self.z.get(j), other.x.get(j), other.z.get(j));
        }
        PauliWord {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
            phase: exponent.rem_euclid(4) as u8,
        }
    }

    /// Equal as operators up to a global phase.
    pub fn same_up_to_phase(&self, other: &PauliWord) -> bool {
        self.x == other.x && self.z == other.z
    }
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["+", "+i", "-", "-i"][self.phase as usize])?;
        for j in 0..self.num_qubits() {
            let c = match (self.x.get(j), self.z.get(j)) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => 'Y',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliWord({self})")
    }
}
