// SPDX-License-Identifier: Apache-2.0

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::CodeSpec;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::pauli::PauliWord;
use crate::transversal::TransversalRnPlan;

/// Single-qubit and two-qubit Clifford gates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    H(usize),
    S(usize),
    Sdg(usize),
    X(usize),
    Z(usize),
    Cnot(usize, usize),
}

/// Gates applied to every qubit of a block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransversalGate {
    HAll,
    /// `R_n^k` on `T` and `R_n^{-k}` on `T^c`; only `n <= 2` is Clifford.
    Rn(TransversalRnPlan),
}

/// Outcome of a projective Pauli measurement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Measurement {
    /// `true` for the -1 eigenvalue.
    pub negative: bool,
    pub deterministic: bool,
}

impl Measurement {
    pub fn eigenvalue(&self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }
}

/// Which half of a CSS gauge group is fixed in a prepared codeword.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GaugeBasis {
    /// +1 eigenstate of every Z-type gauge element.
    GZ,
    /// +1 eigenstate of every X-type gauge element.
    GX,
}

/// Logical single-qubit states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Logical {
    Zero,
    One,
    Plus,
    Minus,
}

/// Stabilizer tableau with destabilizers and a private seeded RNG.
///
/// Row `i` of `stabilizers` anticommutes with row `j` of `destabilizers`
/// iff `i == j`. Stabilizer signs are tracked exactly; destabilizer signs
/// are irrelevant and kept at +1.
#[derive(Clone, Debug)]
pub struct Tableau {
    n: usize,
    stabilizers: Vec<PauliWord>,
    destabilizers: Vec<PauliWord>,
    seed: u64,
    rng: ChaCha8Rng,
}

impl Tableau {
    /// `|0…0⟩`.
    pub fn zero_state(n: usize, seed: u64) -> Self {
        let stabilizers = (0..n)
            .map(|i| PauliWord::z_type(BitVector::unit(n, i)))
            .collect();
        let destabilizers = (0..n)
            .map(|i| PauliWord::x_type(BitVector::unit(n, i)))
            .collect();
        Self {
            n,
            stabilizers,
            destabilizers,
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stabilizers(&self) -> &[PauliWord] {
        &self.stabilizers
    }

    pub fn destabilizers(&self) -> &[PauliWord] {
        &self.destabilizers
    }

    /// Violations of the tableau invariants; empty when consistent.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, s) in self.stabilizers.iter().enumerate() {
            if !s.is_hermitian() {
                out.push(format!("stabilizer {i} has imaginary phase"));
            }
            for (j, t) in self.stabilizers.iter().enumerate().skip(i + 1) {
                if s.anticommutes(t) {
                    out.push(format!("stabilizers {i} and {j} anticommute"));
                }
            }
            for (j, d) in self.destabilizers.iter().enumerate() {
                if s.anticommutes(d) != (i == j) {
                    out.push(format!("stabilizer {i} / destabilizer {j} pairing broken"));
                }
            }
        }
        out
    }

    fn debug_check(&self) {
        #[cfg(debug_assertions)]
        {
            let v = self.invariant_violations();
            assert!(v.is_empty(), "tableau invariant broken: {v:?}");
        }
    }

    fn for_each_row(&mut self, mut f: impl FnMut(&mut PauliWord)) {
        for row in self
            .stabilizers
            .iter_mut()
            .chain(self.destabilizers.iter_mut())
        {
            f(row);
        }
    }

    pub fn apply(&mut self, gate: Gate) {
        let n = self.n;
        let check = |q: usize| assert!(q < n, "qubit {q} out of range");
        match gate {
            Gate::H(q) => {
                check(q);
                self.for_each_row(|p| {
                    let (x, z) = (p.x.get(q), p.z.get(q));
                    p.x.set(q, z);
                    p.z.set(q, x);
                    if x && z {
                        negate(p);
                    }
                });
            }
            Gate::S(q) => {
                check(q);
                self.for_each_row(|p| {
                    let (x, z) = (p.x.get(q), p.z.get(q));
                    if x && z {
                        negate(p);
                    }
                    p.z.set(q, x ^ z);
                });
            }
            Gate::Sdg(q) => {
                check(q);
                self.for_each_row(|p| {
                    let (x, z) = (p.x.get(q), p.z.get(q));
                    if x && !z {
                        negate(p);
                    }
                    p.z.set(q, x ^ z);
                });
            }
            Gate::X(q) => {
                check(q);
                self.for_each_row(|p| {
                    if p.z.get(q) {
                        negate(p);
                    }
                });
            }
            Gate::Z(q) => {
                check(q);
                self.for_each_row(|p| {
                    if p.x.get(q) {
                        negate(p);
                    }
                });
            }
            Gate::Cnot(a, b) => {
                check(a);
                check(b);
                assert_ne!(a, b, "CNOT needs distinct qubits");
                self.for_each_row(|p| {
                    let (xa, za, xb, zb) = (p.x.get(a), p.z.get(a), p.x.get(b), p.z.get(b));
                    if xa && zb && (xb == za) {
                        negate(p);
                    }
                    p.x.set(b, xb ^ xa);
                    p.z.set(a, za ^ zb);
                });
            }
        }
        self.normalize_destabilizers();
    }

    fn normalize_destabilizers(&mut self) {
        for d in &mut self.destabilizers {
            if d.phase() != 0 {
                *d = d.clone().with_phase(0);
            }
        }
    }

    /// Applies a Pauli operator as a gate.
    pub fn apply_pauli(&mut self, p: &PauliWord) {
        assert_eq!(p.num_qubits(), self.n, "qubit count mismatch");
        for s in &mut self.stabilizers {
            if s.anticommutes(p) {
                negate(s);
            }
        }
    }

    pub fn apply_transversal(&mut self, gate: &TransversalGate) -> Result<()> {
        match gate {
            TransversalGate::HAll => {
                for q in 0..self.n {
                    self.apply(Gate::H(q));
                }
            }
            TransversalGate::Rn(plan) => {
                if plan.level > 2 {
                    return Err(Error::NonClifford(format!(
                        "R_{} is outside the Clifford group; use the phase oracle",
                        plan.level
                    )));
                }
                if plan.t.num_qubits() != self.n {
                    return Err(Error::Dimension("T does not match the tableau".into()));
                }
                let modulus = plan.modulus();
                for q in 0..self.n {
                    // exponent of R_n on this qubit, in units of 2π/2^n
                    let e = if plan.t.contains(q) {
                        plan.k % modulus
                    } else {
                        (modulus - plan.k % modulus) % modulus
                    };
                    // R_n^e = S^{e · 2^{2-n}}
                    let s_power = (e << (2 - plan.level)) % 4;
                    for _ in 0..s_power {
                        self.apply(Gate::S(q));
                    }
                }
            }
        }
        self.debug_check();
        Ok(())
    }

    /// `self ⊗ other`, reseeded from `self`.
    pub fn tensor(&self, other: &Tableau) -> Tableau {
        let n = self.n + other.n;
        let embed = |p: &PauliWord, offset: usize| {
            let x = BitVector::from_support(n, p.x.iter_ones().map(|i| i + offset));
            let z = BitVector::from_support(n, p.z.iter_ones().map(|i| i + offset));
            PauliWord::new(x, z, p.phase())
        };
        Tableau {
            n,
            stabilizers: self
                .stabilizers
                .iter()
                .map(|p| embed(p, 0))
                .chain(other.stabilizers.iter().map(|p| embed(p, self.n)))
                .collect(),
            destabilizers: self
                .destabilizers
                .iter()
                .map(|p| embed(p, 0))
                .chain(other.destabilizers.iter().map(|p| embed(p, self.n)))
                .collect(),
            seed: self.seed,
            rng: ChaCha8Rng::seed_from_u64(self.seed),
        }
    }

    /// CNOT from qubit `i` to qubit `block + i` for every `i < block`.
    pub fn apply_cnot_pairs(&mut self, block: usize) {
        assert_eq!(self.n, 2 * block, "tableau is not a pair of blocks");
        for i in 0..block {
            self.apply(Gate::Cnot(i, block + i));
        }
        self.debug_check();
    }

    /// `±P` as a product of stabilizer rows, if it lies in the stabilizer group.
    fn stabilizer_product(&self, p: &PauliWord) -> Option<PauliWord> {
        if self.stabilizers.iter().any(|s| s.anticommutes(p)) {
            return None;
        }
        let mut acc = PauliWord::identity(self.n);
        for (s, d) in self.stabilizers.iter().zip(&self.destabilizers) {
            if d.anticommutes(p) {
                acc = acc.mul(s);
            }
        }
        acc.same_up_to_phase(p).then_some(acc)
    }

    /// `Some(false)` if `+P` stabilizes the state, `Some(true)` for `-P`,
    /// `None` when neither does.
    pub fn stabilizer_sign(&self, p: &PauliWord) -> Option<bool> {
        let acc = self.stabilizer_product(p)?;
        match (acc.phase() + 4 - p.phase()) % 4 {
            0 => Some(false),
            2 => Some(true),
            _ => None,
        }
    }

    /// `⟨P⟩` in {-1, 0, +1}.
    pub fn expectation(&self, p: &PauliWord) -> i8 {
        match self.stabilizer_sign(p) {
            Some(false) => 1,
            Some(true) => -1,
            None => 0,
        }
    }

    /// Every generator is in the stabilizer group with sign +1.
    pub fn satisfies<'a>(&self, gens: impl IntoIterator<Item = &'a PauliWord>) -> bool {
        gens.into_iter()
            .all(|g| self.stabilizer_sign(g) == Some(false))
    }

    /// Same stabilizer group, signs included.
    pub fn same_state(&self, other: &Tableau) -> bool {
        self.n == other.n && self.satisfies(other.stabilizers.iter())
    }

    /// Projective measurement of a Hermitian Pauli operator.
    pub fn measure(&mut self, p: &PauliWord) -> Measurement {
        assert_eq!(p.num_qubits(), self.n, "qubit count mismatch");
        assert!(p.is_hermitian(), "measured operator must be Hermitian");
        let Some(pivot) = self.stabilizers.iter().position(|s| s.anticommutes(p)) else {
            let negative = self
                .stabilizer_sign(p)
                .expect("commuting Pauli lies in the group");
            return Measurement {
                negative,
                deterministic: true,
            };
        };
        let pivot_row = self.stabilizers[pivot].clone();
        for i in 0..self.n {
            if i != pivot && self.stabilizers[i].anticommutes(p) {
                self.stabilizers[i] = self.stabilizers[i].mul(&pivot_row);
            }
            if i != pivot && self.destabilizers[i].anticommutes(p) {
                self.destabilizers[i] = self.destabilizers[i].mul(&pivot_row).with_phase(0);
            }
        }
        let negative: bool = self.rng.gen();
        self.destabilizers[pivot] = pivot_row.with_phase(0);
        self.stabilizers[pivot] = if negative {
            p.clone().negated()
        } else {
            p.clone()
        };
        self.debug_check();
        Measurement {
            negative,
            deterministic: false,
        }
    }

    /// Measures `p` and, on a -1 outcome, flips the sign with the partner
    /// destabilizer so that `+P` stabilizes the state. Fails if `-P` is
    /// already a stabilizer.
    pub fn project_positive(&mut self, p: &PauliWord) -> Result<Measurement> {
        let m = self.measure(p);
        if m.negative {
            if m.deterministic {
                return Err(Error::InconsistentGenerators(format!(
                    "-{} already stabilizes the state",
                    &p.to_string()[1..]
                )));
            }
            let pivot = self
                .stabilizers
                .iter()
                .position(|s| s.same_up_to_phase(p))
                .expect("measured row present");
            let flip = self.destabilizers[pivot].clone();
            self.apply_pauli(&flip);
        }
        Ok(m)
    }

    /// The state stabilized by `gens` (commuting, symplectic rank `n`,
    /// possibly redundant).
    ///
    /// Each generator is measured in turn. A -1 outcome is flipped by a
    /// Pauli that anticommutes with it and commutes with every earlier
    /// generator; a redundant generator with the wrong sign is an error.
    pub fn from_generators(n: usize, gens: &[PauliWord], seed: u64) -> Result<Self> {
        let rank = symplectic_rank(n, gens);
        if rank != n {
            return Err(Error::InconsistentGenerators(format!(
                "{} generators of symplectic rank {rank} on {n} qubits",
                gens.len()
            )));
        }
        let mut t = Tableau::zero_state(n, seed);
        // rows (z | x) so that row · (c.x | c.z) is the symplectic product
        let mut constraints: Vec<BitVector> = Vec::with_capacity(gens.len());
        for g in gens {
            let m = t.measure(g);
            let row = BitVector::from_support(
                2 * n,
                g.z.iter_ones().chain(g.x.iter_ones().map(|i| i + n)),
            );
            if m.negative {
                let mut rows = constraints.clone();
                rows.push(row.clone());
                let mut rhs = BitVector::zeros(rows.len());
                rhs.set(rows.len() - 1, true);
                let c = BitMatrix::from_rows(2 * n, rows)?
                    .solve(&rhs)
                    .ok_or_else(|| {
                        Error::InconsistentGenerators(format!(
                            "the sign of generator {g} is fixed by the others"
                        ))
                    })?;
                let flip = PauliWord::new(
                    BitVector::from_support(n, c.iter_ones().filter(|&i| i < n)),
                    BitVector::from_support(n, c.iter_ones().filter(|&i| i >= n).map(|i| i - n)),
                    0,
                );
                t.apply_pauli(&flip);
            }
            constraints.push(row);
        }
        Ok(t)
    }
}

fn negate(p: &mut PauliWord) {
    *p = p.clone().negated();
}

/// Rank of Pauli words as vectors `(x | z)` over GF(2).
pub fn symplectic_rank(n: usize, words: &[PauliWord]) -> usize {
    let rows = words
        .iter()
        .map(|p| {
            BitVector::from_support(2 * n, p.x.iter_ones().chain(p.z.iter_ones().map(|i| i + n)))
        })
        .collect();
    BitMatrix::from_rows(2 * n, rows)
        .expect("widths agree")
        .rank()
}

fn rows_as(m: &BitMatrix, x_type: bool) -> impl Iterator<Item = PauliWord> + '_ {
    m.rows().iter().map(move |r| {
        if x_type {
            PauliWord::x_type(r.clone())
        } else {
            PauliWord::z_type(r.clone())
        }
    })
}

/// Generators of a prepared codeword: the fixed half of the gauge group,
/// the stabilizers of the other type and the signed logical.
pub fn codeword_generators(code: &CodeSpec, basis: GaugeBasis, logical: Logical) -> Vec<PauliWord> {
    let mut gens: Vec<PauliWord> = match basis {
        GaugeBasis::GZ => rows_as(&code.stab_x, true)
            .chain(rows_as(&code.gauge_z, false))
            .collect(),
        GaugeBasis::GX => rows_as(&code.gauge_x, true)
            .chain(rows_as(&code.stab_z, false))
            .collect(),
    };
    gens.push(match logical {
        Logical::Zero => code.logical_z.clone(),
        Logical::One => code.logical_z.clone().negated(),
        Logical::Plus => code.logical_x.clone(),
        Logical::Minus => code.logical_x.clone().negated(),
    });
    gens
}

/// Prepares a codeword of a one-logical-qubit CSS code; see
/// [`Tableau::from_generators`].
pub fn prepare_codeword(
    code: &CodeSpec,
    basis: GaugeBasis,
    logical: Logical,
    seed: u64,
) -> Result<Tableau> {
    let gens = codeword_generators(code, basis, logical);
    Tableau::from_generators(code.n, &gens, seed).map_err(|e| match e {
        Error::InconsistentGenerators(msg) => {
            Error::InconsistentGenerators(format!("{}: {msg}", code.name))
        }
        other => other,
    })
}
