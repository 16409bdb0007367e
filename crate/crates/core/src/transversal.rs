// SPDX-License-Identifier: Apache-2.0

//! Transversal gates: `R_n = diag(1, e^{2πi/2^n})`, `H` and `CNOT`.
//!
//! The candidate implementation of logical `R_n` is
//! `R_n^k` on the qubits of `T` and `R_n^{-k}` on `T^c`. Acting on a
//! computational basis state `|G⟩` it contributes the phase exponent
//! `k (|T ∩ G| - |T^c ∩ G|) mod 2^n`, so everything reduces to exact
//! integer arithmetic over the X-type gauge group.

use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::code::CodeSpec;
use crate::error::{Error, Result};
use crate::gf2::{for_each_span_element, BitMatrix, BitVector};
use crate::pauli::PauliWord;
use crate::report::Verdict;
use crate::simplicial::{Bipartition, ColoredComplex};

/// Largest X-gauge rank whose row space is enumerated element by element.
pub const SPAN_RANK_GUARD: usize = 20;
/// Above this many generator subsets the intersection check samples.
pub const SUBSET_GUARD: u64 = 10_000_000;
const SUBSET_SAMPLE: usize = 1_000_000;
const SUBSET_SEED: u64 = 0x7e5_7a11;

/// `k` and the qubit split for a candidate transversal `R_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalRnPlan {
    pub t: Bipartition,
    pub level: u32,
    pub k: u64,
}

impl TransversalRnPlan {
    /// Solves for the unique admissible `k`.
    pub fn new(t: Bipartition, level: u32) -> Result<Self> {
        let k = solve_k(t.t_size(), t.num_qubits(), level)?;
        Ok(Self { t, level, k })
    }

    /// A plan with a caller-chosen `k` (not necessarily admissible).
    pub fn with_k(t: Bipartition, level: u32, k: u64) -> Self {
        Self { t, level, k }
    }

    pub fn modulus(&self) -> u64 {
        1 << self.level
    }

    /// `|T| - |T^c|`.
    pub fn imbalance(&self) -> i64 {
        2 * self.t.t_size() as i64 - self.t.num_qubits() as i64
    }

    /// True iff `k (|T| - |T^c|) ≡ 1 (mod 2^n)`.
    pub fn is_admissible(&self) -> bool {
        phase_exponent(self.k, self.imbalance(), self.modulus()) == 1
    }
}

/// `k · diff mod modulus`, as a value in `0..modulus`.
#[inline]
pub fn phase_exponent(k: u64, diff: i64, modulus: u64) -> u64 {
    ((k as i128 * diff as i128).rem_euclid(modulus as i128)) as u64
}

/// The unique `k` in `1..2^n` with `k (2|T| - N) ≡ 1 (mod 2^n)`.
pub fn solve_k(t_size: usize, n_qubits: usize, level: u32) -> Result<u64> {
    if n_qubits.is_multiple_of(2) {
        return Err(Error::InvalidParameters(format!(
            "{n_qubits} qubits: |T| - |T^c| is even and has no inverse mod 2^n"
        )));
    }
    if t_size > n_qubits || level == 0 || level > 62 {
        return Err(Error::InvalidParameters(format!(
            "bad arguments |T|={t_size}, N={n_qubits}, n={level}"
        )));
    }
    let modulus = 1i128 << level;
    let diff = (2 * t_size as i128 - n_qubits as i128).rem_euclid(modulus);
    // extended Euclid on (diff, modulus)
    let (mut r0, mut r1) = (modulus, diff);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    Ok(s0.rem_euclid(modulus) as u64)
}

fn t_vector(t: &Bipartition) -> BitVector {
    BitVector::from_bools(t.mask())
}

/// `|T ∩ G| - |T^c ∩ G|`.
#[inline]
fn split_difference(g: &BitVector, t: &BitVector) -> i64 {
    let in_t = g.overlap(t) as i64;
    2 * in_t - g.weight() as i64
}

fn gauge_basis(code: &CodeSpec) -> Result<BitMatrix> {
    let basis_rows: Vec<BitVector> = code
        .gauge_x
        .independent_rows()
        .into_iter()
        .map(|i| code.gauge_x.row(i).clone())
        .collect();
    if basis_rows.len() > SPAN_RANK_GUARD {
        return Err(Error::GuardExceeded(format!(
            "X gauge rank {} exceeds {SPAN_RANK_GUARD}; use the generator-intersection check",
            basis_rows.len()
        )));
    }
    BitMatrix::from_rows(code.n, basis_rows)
}

fn check_t(code: &CodeSpec, t: &Bipartition) -> Result<()> {
    if t.num_qubits() != code.n {
        return Err(Error::Dimension(format!(
            "T covers {} qubits, code has {}",
            t.num_qubits(),
            code.n
        )));
    }
    Ok(())
}

/// `|T ∩ G| ≡ |T^c ∩ G| (mod 2^n)` for every element `X(G)` of the X gauge group.
pub fn check_gauge_balance(code: &CodeSpec, t: &Bipartition, level: u32) -> Result<Verdict> {
    check_t(code, t)?;
    let basis = gauge_basis(code)?;
    let modulus = 1u64 << level;
    let tv = t_vector(t);
    let mut v = Verdict::new(
        "gauge_group_balance",
        &code.name,
        json!({ "n": level, "t_size": t.t_size(), "gauge_rank": basis.num_rows() }),
    );
    let mut elements = 0u64;
    let mut bad = Vec::new();
    for_each_span_element(&basis, |g| {
        elements += 1;
        let diff = split_difference(g, &tv);
        if diff.rem_euclid(modulus as i64) != 0 {
            bad.push(format!("G={g}: |T∩G| - |Tc∩G| = {diff} ≢ 0 mod {modulus}"));
        }
    });
    v.add("elements", elements);
    for w in bad {
        v.fail(w);
    }
    Ok(v)
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Lexicographic successor of an index combination; false when exhausted.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let m = idx.len();
    let Some(pos) = (0..m).rev().find(|&i| idx[i] != i + n - m) else {
        return false;
    };
    idx[pos] += 1;
    for j in pos + 1..m {
        idx[j] = idx[j - 1] + 1;
    }
    true
}

/// Combination with lexicographic rank `rank` among `m`-subsets of `0..n`.
fn unrank_combination(mut rank: u64, n: usize, m: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(m);
    let mut next = 0;
    for slot in 0..m {
        loop {
            let with = binomial((n - next - 1) as u64, (m - slot - 1) as u64);
            if rank < with {
                out.push(next);
                next += 1;
                break;
            }
            rank -= with;
            next += 1;
        }
    }
    out
}

/// Sufficient condition on generator intersections: for `m = 1..n` and every
/// `m`-subset of X gauge generators,
/// `|T ∩ ⋂G_i| ≡ |T^c ∩ ⋂G_i| (mod 2^{n-m+1})`.
pub fn check_generator_intersections(
    code: &CodeSpec,
    t: &Bipartition,
    level: u32,
) -> Result<Verdict> {
    check_t(code, t)?;
    let gens = code.gauge_x.rows();
    let g = gens.len();
    let tv = t_vector(t);
    let total: u64 = (1..=level as u64)
        .map(|m| binomial(g as u64, m))
        .fold(0, u64::saturating_add);
    let sampled = total > SUBSET_GUARD;
    let mut v = Verdict::new(
        "generator_intersections",
        &code.name,
        json!({ "n": level, "t_size": t.t_size(), "generators": g, "sampled": sampled }),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(SUBSET_SEED);
    for m in 1..=(level as usize).min(g) {
        let modulus = 1i64 << (level as usize - m + 1);
        let check = |idx: &[usize], v: &mut Verdict| {
            let mut inter = gens[idx[0]].clone();
            for &i in &idx[1..] {
                inter = inter.and(&gens[i]);
            }
            let diff = split_difference(&inter, &tv);
            v.bump(format!("m={m}"));
            if diff.rem_euclid(modulus) != 0 {
                v.fail(format!(
                    "generators {idx:?}: |T∩I| - |Tc∩I| = {diff} ≢ 0 mod {modulus}"
                ));
            }
        };
        let count = binomial(g as u64, m as u64);
        if sampled && m > 2 && count > SUBSET_SAMPLE as u64 {
            let picks = sample(
                &mut rng,
                count.min(usize::MAX as u64) as usize,
                SUBSET_SAMPLE,
            );
            let mut ranks = picks.into_vec();
            ranks.sort_unstable();
            for r in ranks {
                check(&unrank_combination(r as u64, g, m), &mut v);
            }
            v.note(format!("m={m}: sampled {SUBSET_SAMPLE} of {count} subsets"));
        } else {
            let mut idx: Vec<usize> = (0..m).collect();
            loop {
                check(&idx, &mut v);
                if !next_combination(&mut idx, g) {
                    break;
                }
            }
        }
    }
    Ok(v)
}

/// Exhaustive check that every interior simplex of dimension below `d`
/// carries as many qubits in `T` as in `T^c`.
pub fn verify_balanced_split(lattice: &ColoredComplex, t: &Bipartition) -> Verdict {
    let d = lattice.dim();
    let mut v = Verdict::new(
        "balanced_split",
        format!("lattice(d={d}, qubits={})", lattice.num_qubits()),
        json!({ "t_size": t.t_size() }),
    );
    if t.num_qubits() != lattice.num_qubits() {
        v.fail("T does not cover the lattice qubits");
        return v;
    }
    for k in 0..d {
        for s in lattice.interior_simplices(k).expect("k < d") {
            v.bump(format!("dim{k}"));
            let q = lattice.support(&s);
            let in_t = q.iter().filter(|&&i| t.contains(i)).count();
            if 2 * in_t != q.len() {
                v.fail(format!("{s}: {in_t} of {} qubits in T", q.len()));
            }
        }
    }
    v
}

/// Exact phase bookkeeping of a candidate transversal `R_n` over the
/// X gauge group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseOracle {
    pub level: u32,
    pub k: u64,
    /// exponent (mod 2^n) -> number of gauge elements `X(G)` picking it up
    pub histogram: BTreeMap<u64, u64>,
    /// Exponent acquired by `|1̄⟩` relative to `|0̄⟩`.
    pub logical_exponent: u64,
}

impl PhaseOracle {
    pub fn modulus(&self) -> u64 {
        1 << self.level
    }

    /// Every gauge element is left unchanged.
    pub fn fixes_gauge(&self) -> bool {
        self.histogram.keys().all(|&e| e == 0)
    }

    /// Implements exactly `R̄_n`.
    pub fn pass(&self) -> bool {
        self.fixes_gauge() && self.logical_exponent == 1
    }

    /// Implements `R̄_n` or its inverse.
    pub fn implements_up_to_direction(&self) -> bool {
        self.fixes_gauge()
            && (self.logical_exponent == 1 || self.logical_exponent == self.modulus() - 1)
    }

    pub fn to_verdict(&self, code: &str) -> Verdict {
        let mut v = Verdict::new(
            "transversal_rn_phase",
            code,
            json!({
                "n": self.level,
                "k": self.k,
                "logical_exponent": self.logical_exponent,
                "up_to_direction": self.implements_up_to_direction(),
            }),
        );
        v.histogram = self
            .histogram
            .iter()
            .map(|(e, c)| (e.to_string(), *c))
            .collect();
        v.pass = self.pass();
        if !self.fixes_gauge() {
            v.witnesses
                .push("some gauge element acquires a nonzero phase".into());
        }
        if self.logical_exponent != 1 {
            v.witnesses.push(format!(
                "logical exponent {} (expected 1 mod {})",
                self.logical_exponent,
                self.modulus()
            ));
        }
        v
    }
}

/// Evaluates the phase exponent of every X gauge element and of the
/// logical flip `X(Q)`.
pub fn phase_oracle_rn(code: &CodeSpec, plan: &TransversalRnPlan) -> Result<PhaseOracle> {
    check_t(code, &plan.t)?;
    let basis = gauge_basis(code)?;
    let modulus = plan.modulus();
    let tv = t_vector(&plan.t);
    let mut histogram = BTreeMap::new();
    for_each_span_element(&basis, |g| {
        let e = phase_exponent(plan.k, split_difference(g, &tv), modulus);
        *histogram.entry(e).or_insert(0) += 1;
    });
    Ok(PhaseOracle {
        level: plan.level,
        k: plan.k,
        histogram,
        logical_exponent: phase_exponent(plan.k, plan.imbalance(), modulus),
    })
}

/// `H(Q)` preserves the gauge group and swaps `X̄ ↔ Z̄`.
pub fn check_h_transversal(code: &CodeSpec) -> bool {
    code.is_self_dual() && code.logical_x.x == code.logical_z.z
}

/// Conjugates a 2n-qubit Pauli by CNOTs from qubit `i` to `n + i`.
pub fn conjugate_by_cnot_pairs(p: &PauliWord, n: usize) -> PauliWord {
    let mut x = p.x.clone();
    let mut z = p.z.clone();
    for i in 0..n {
        if p.x.get(i) {
            x.flip(n + i);
        }
        if p.z.get(n + i) {
            z.flip(i);
        }
    }
    PauliWord::new(x, z, p.phase())
}

fn lift(block: &BitVector, offset: usize, total: usize) -> BitVector {
    BitVector::from_support(total, block.iter_ones().map(|i| i + offset))
}

fn halves(v: &BitVector, n: usize) -> (BitVector, BitVector) {
    (
        BitVector::from_support(n, v.iter_ones().filter(|&i| i < n)),
        BitVector::from_support(n, v.iter_ones().filter(|&i| i >= n).map(|i| i - n)),
    )
}

/// Certifies transversal CNOT between two identical copies of a code:
/// every gauge generator of the pair maps into the gauge group of the pair,
/// and `X̄⊗I ↦ X̄⊗X̄`, `I⊗Z̄ ↦ Z̄⊗Z̄`.
pub fn check_cnot_transversal(a: &CodeSpec, b: &CodeSpec) -> Result<Verdict> {
    if a.n != b.n
        || a.qubits != b.qubits
        || a.gauge_x != b.gauge_x
        || a.gauge_z != b.gauge_z
        || a.stab_x != b.stab_x
        || a.stab_z != b.stab_z
    {
        return Err(Error::IncompatibleCodes(format!(
            "{} and {} are not identical copies",
            a.name, b.name
        )));
    }
    let n = a.n;
    let mut v = Verdict::new("transversal_cnot", &a.name, json!({ "n": n }));
    let in_gauge = |p: &PauliWord| {
        let (x1, x2) = halves(&p.x, n);
        let (z1, z2) = halves(&p.z, n);
        [
            (&a.gauge_x, x1),
            (&a.gauge_x, x2),
            (&a.gauge_z, z1),
            (&a.gauge_z, z2),
        ]
        .iter()
        .all(|(m, part)| m.row_space_contains_vector(part))
    };
    for (label, gens, is_x) in [
        ("gauge_x", &a.gauge_x, true),
        ("gauge_z", &a.gauge_z, false),
    ] {
        for (i, row) in gens.rows().iter().enumerate() {
            for block in 0..2 {
                let lifted = lift(row, block * n, 2 * n);
                let p = if is_x {
                    PauliWord::x_type(lifted)
                } else {
                    PauliWord::z_type(lifted)
                };
                let image = conjugate_by_cnot_pairs(&p, n);
                v.bump("generators");
                if !in_gauge(&image) {
                    v.fail(format!(
                        "image of {label}[{i}] on block {block} leaves the gauge group"
                    ));
                }
            }
        }
    }
    let ones = BitVector::ones(n);
    let logical = |x: [bool; 2], z: [bool; 2]| {
        let part = |on: [bool; 2]| {
            let mut v = BitVector::zeros(2 * n);
            for (block, &active) in on.iter().enumerate() {
                if active {
                    v.xor_assign(&lift(&ones, block * n, 2 * n));
                }
            }
            v
        };
        PauliWord::new(part(x), part(z), 0)
    };
    let expectations = [
        (
            "X⊗I",
            logical([true, false], [false, false]),
            logical([true, true], [false, false]),
        ),
        (
            "I⊗X",
            logical([false, true], [false, false]),
            logical([false, true], [false, false]),
        ),
        (
            "Z⊗I",
            logical([false, false], [true, false]),
            logical([false, false], [true, false]),
        ),
        (
            "I⊗Z",
            logical([false, false], [false, true]),
            logical([false, false], [true, true]),
        ),
    ];
    for (label, input, expected) in expectations {
        v.bump("logicals");
        if conjugate_by_cnot_pairs(&input, n) != expected {
            v.fail(format!("logical {label} maps incorrectly"));
        }
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::fifteen;

    /// Reference inverse by exhaustive search.
    fn brute_k(t_size: usize, n_qubits: usize, level: u32) -> Vec<u64> {
        let m = 1u64 << level;
        let diff = 2 * t_size as i64 - n_qubits as i64;
        (1..m)
            .filter(|&k| phase_exponent(k, diff, m) == 1)
            .collect()
    }

    #[test]
    fn solve_k_matches_exhaustive_search() {
        for n_qubits in (1..40).step_by(2) {
            for t_size in 0..=n_qubits {
                for level in 1..=6 {
                    let k = solve_k(t_size, n_qubits, level).unwrap();
                    assert_eq!(brute_k(t_size, n_qubits, level), vec![k]);
                }
            }
        }
        assert_eq!(solve_k(0, 15, 3).unwrap(), 1);
        assert!(solve_k(3, 14, 3).is_err());
    }

    #[test]
    fn two_dimensional_choice_of_k() {
        // k = |T| - |T^c| mod 4 inverts itself
        for n_qubits in (1..30usize).step_by(2) {
            for t_size in 0..=n_qubits {
                let diff = 2 * t_size as i64 - n_qubits as i64;
                let k = diff.rem_euclid(4) as u64;
                assert_eq!(phase_exponent(k, diff, 4), 1);
                assert_eq!(solve_k(t_size, n_qubits, 2).unwrap(), k);
            }
        }
    }

    #[test]
    fn code_a_oracle_and_conditions() {
        let a = fifteen::code_a();
        let t = Bipartition::empty_t(15);
        assert!(check_gauge_balance(&a, &t, 3).unwrap().pass);
        assert!(check_generator_intersections(&a, &t, 3).unwrap().pass);
        let plan = TransversalRnPlan::new(t.clone(), 3).unwrap();
        assert_eq!(plan.k, 1);
        let oracle = phase_oracle_rn(&a, &plan).unwrap();
        assert_eq!(oracle.histogram, BTreeMap::from([(0, 16)]));
        assert_eq!(oracle.logical_exponent, 1);
        assert!(oracle.pass());

        let wrong = phase_oracle_rn(&a, &TransversalRnPlan::with_k(t, 3, 3)).unwrap();
        assert_eq!(wrong.logical_exponent, 3);
        assert!(!wrong.pass());
        assert!(!wrong.implements_up_to_direction());
    }

    #[test]
    fn code_b_fails_the_balance_condition() {
        let b = fifteen::code_b();
        let t = Bipartition::empty_t(15);
        let balance = check_gauge_balance(&b, &t, 3).unwrap();
        assert!(!balance.pass);
        assert_eq!(balance.count("elements"), 1024);
        assert!(!check_generator_intersections(&b, &t, 3).unwrap().pass);
    }

    #[test]
    fn trivial_gauge_group_passes() {
        let c =
            CodeSpec::stabilizer_code("empty", BitMatrix::empty(3), BitMatrix::empty(3)).unwrap();
        let v = check_gauge_balance(&c, &Bipartition::empty_t(3), 2).unwrap();
        assert!(v.pass);
        assert_eq!(v.count("elements"), 1);
    }

    #[test]
    fn rank_guard() {
        let gens: Vec<BitVector> = (0..21).map(|i| BitVector::unit(23, i)).collect();
        let big = BitMatrix::from_rows(23, gens).unwrap();
        let c = CodeSpec::stabilizer_code("wide", big, BitMatrix::empty(23)).unwrap();
        let t = Bipartition::empty_t(23);
        assert!(matches!(
            check_gauge_balance(&c, &t, 2),
            Err(Error::GuardExceeded(_))
        ));
        assert!(check_generator_intersections(&c, &t, 2).is_ok());
    }

    #[test]
    fn unranking_agrees_with_enumeration() {
        let (n, m) = (7, 3);
        let mut idx: Vec<usize> = (0..m).collect();
        let mut rank = 0;
        loop {
            assert_eq!(unrank_combination(rank, n, m), idx);
            rank += 1;
            if !next_combination(&mut idx, n) {
                break;
            }
        }
        assert_eq!(rank, binomial(7, 3));
    }

    #[test]
    fn lattice_codes_admit_transversal_rd() {
        for (d, level) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
            let l = ColoredComplex::build_fractal(d, level).unwrap();
            let c = CodeSpec::color_code(&l, 0, d - 2).unwrap();
            let t = l.bipartition_qubits().unwrap();
            assert!(verify_balanced_split(&l, &t).pass);
            assert!(
                check_generator_intersections(&c, &t, d as u32)
                    .unwrap()
                    .pass
            );
            assert!(check_gauge_balance(&c, &t, d as u32).unwrap().pass);
            let plan = TransversalRnPlan::new(t, d as u32).unwrap();
            assert!(
                phase_oracle_rn(&c, &plan).unwrap().pass(),
                "d={d} level={level}"
            );
        }
    }

    #[test]
    fn perturbed_split_breaks_balance() {
        let l = ColoredComplex::build_fractal(2, 2).unwrap();
        let t = l.bipartition_qubits().unwrap();
        let v = verify_balanced_split(&l, &t.toggled(0));
        assert!(!v.pass);
    }

    #[test]
    fn hadamard_and_cnot() {
        let l3 = ColoredComplex::build_fractal(3, 1).unwrap();
        assert!(check_h_transversal(
            &CodeSpec::color_code(&l3, 0, 0).unwrap()
        ));
        assert!(!check_h_transversal(
            &CodeSpec::color_code(&l3, 0, 1).unwrap()
        ));
        let c2 = CodeSpec::fractal_color_code(2, 1, 0, 0).unwrap();
        assert!(check_h_transversal(&c2));

        assert!(check_cnot_transversal(&c2, &c2).unwrap().pass);
        let b = fifteen::code_b();
        assert!(check_cnot_transversal(&b, &b).unwrap().pass);

        let mut permuted = c2.clone();
        let perm: Vec<usize> = (0..c2.n).map(|i| (i + 1) % c2.n).collect();
        permuted.gauge_x = c2.gauge_x.permute_columns(&perm);
        permuted.stab_x = c2.stab_x.permute_columns(&perm);
        assert!(matches!(
            check_cnot_transversal(&c2, &permuted),
            Err(Error::IncompatibleCodes(_))
        ));
    }
}
