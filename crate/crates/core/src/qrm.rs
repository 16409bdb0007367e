// SPDX-License-Identifier: Apache-2.0

//! The `[[2^m - 1, 1, 3]]` quantum Reed-Muller codes and their
//! identification with level-1 fractal color codes.

use std::collections::HashMap;

use serde_json::json;

use crate::code::{fifteen, CodeSpec, Provenance};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::report::Verdict;
use crate::simplicial::ColoredComplex;

/// `M_1 = (1)`, `M_{i+1} = [[M_i, 0, M_i], [0…0, 1, 1…1]]`.
pub fn build_m(m: usize) -> BitMatrix {
    assert!((1..=20).contains(&m), "m must be in 1..=20");
    let mut current = BitMatrix::from_strs(&["1"]).expect("constant matrix");
    for _ in 1..m {
        let w = current.num_cols();
        let width = 2 * w + 1;
        let mut rows: Vec<BitVector> = current
            .rows()
            .iter()
            .map(|r| {
                BitVector::from_support(
                    width,
                    r.iter_ones().chain(r.iter_ones().map(|c| c + w + 1)),
                )
            })
            .collect();
        rows.push(BitVector::from_support(width, w..width));
        current = BitMatrix::from_rows(width, rows).expect("widths agree");
    }
    current
}

/// `QRM(m)` together with its defining matrices.
#[derive(Clone, Debug)]
pub struct QrmCode {
    pub m: usize,
    /// X-type stabilizer generators.
    pub matrix: BitMatrix,
    /// A basis of `ker M`.
    pub m_perp: BitMatrix,
    pub spec: CodeSpec,
}

/// Builds `QRM(m)` for `m >= 3`.
///
/// `ker M` contains the all-ones vector (every row of `M` has even
/// weight), so `Z(Q)` would be a stabilizer if all of `M^⊥` were used.
/// The Z-type stabilizers are therefore the even-weight part of `ker M`,
/// which keeps `Z(Q)` as the logical operator.
pub fn build_qrm(m: usize) -> Result<QrmCode> {
    if !(3..=12).contains(&m) {
        return Err(Error::InvalidParameters(format!(
            "QRM(m) needs 3 <= m <= 12, got {m}"
        )));
    }
    let matrix = build_m(m);
    let n = matrix.num_cols();
    let m_perp = matrix.kernel_basis();
    let mut with_ones = matrix.clone();
    with_ones.push_row(BitVector::ones(n));
    let stab_z = with_ones.kernel_basis();
    let mut spec = CodeSpec::stabilizer_code(format!("QRM({m})"), matrix.clone(), stab_z)?;
    spec.provenance = Provenance::Explicit;
    Ok(QrmCode {
        m,
        matrix,
        m_perp,
        spec,
    })
}

/// The permutation `p` with column `i` of `a` equal to column `p[i]` of `b`.
///
/// Both matrices must have pairwise distinct columns.
pub fn column_matching(a: &BitMatrix, b: &BitMatrix) -> Result<Vec<usize>> {
    if a.num_rows() != b.num_rows() || a.num_cols() != b.num_cols() {
        return Err(Error::Dimension(format!(
            "{}x{} vs {}x{}",
            a.num_rows(),
            a.num_cols(),
            b.num_rows(),
            b.num_cols()
        )));
    }
    let mut index: HashMap<BitVector, usize> = HashMap::with_capacity(b.num_cols());
    for c in 0..b.num_cols() {
        if index.insert(b.column(c), c).is_some() {
            return Err(Error::InconsistentCode(format!(
                "repeated column {c} in target matrix"
            )));
        }
    }
    (0..a.num_cols())
        .map(|c| {
            let col = a.column(c);
            index.remove(&col).ok_or_else(|| {
                Error::InconsistentCode(format!("column {c} = {col} has no unused match"))
            })
        })
        .collect()
}

/// Outcome of the QRM / color-code identification.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub m: usize,
    /// Color-code qubit `i` is QRM qubit `permutation[i]`.
    pub permutation: Vec<usize>,
    pub verdict: Verdict,
}

fn weight_histogram(m: &BitMatrix) -> Vec<usize> {
    let mut counts = vec![0; m.num_rows() + 1];
    for c in 0..m.num_cols() {
        counts[m.column(c).weight()] += 1;
    }
    counts
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Certifies `QRM(m) = CC_{m-1}(0, m-3)` on the level-1 fractal lattice.
pub fn certify_equivalence(m: usize) -> Result<Certificate> {
    let qrm = build_qrm(m)?;
    let lattice = ColoredComplex::build_fractal(m - 1, 1)?;
    let cc = CodeSpec::color_code(&lattice, 0, m - 3)?;
    let m_prime = &cc.stab_x;
    let permutation = column_matching(m_prime, &qrm.matrix)?;

    let mut v = Verdict::new(
        "qrm_equivalence",
        &cc.name,
        json!({ "m": m, "n": qrm.spec.n, "permutation": permutation }),
    );
    let hist = weight_histogram(m_prime);
    for (k, &count) in hist.iter().enumerate().skip(1) {
        v.add(format!("columns_weight_{k}"), count as u64);
        if count != binomial(m, k) {
            v.fail(format!(
                "{count} columns of weight {k}, expected C({m},{k})"
            ));
        }
    }
    let sx = cc.stab_x.permute_columns(&permutation);
    let sz = cc.stab_z.permute_columns(&permutation);
    if !sx.same_row_space(&qrm.spec.stab_x) {
        v.fail("X stabilizer row spaces differ");
    }
    if !sz.same_row_space(&qrm.spec.stab_z) {
        v.fail("Z stabilizer row spaces differ");
    }
    if !qrm.m_perp.row_space_contains(&sz) {
        v.fail("color-code Z stabilizers leave the dual of M");
    }
    let relabel = |p: &crate::pauli::PauliWord| {
        crate::pauli::PauliWord::new(
            p.x.permuted(&permutation),
            p.z.permuted(&permutation),
            p.phase(),
        )
    };
    if relabel(&cc.logical_x) != qrm.spec.logical_x || relabel(&cc.logical_z) != qrm.spec.logical_z
    {
        v.fail("logical operators differ");
    }
    v.add("rank_m", qrm.matrix.rank() as u64);
    v.add("rank_m_perp", qrm.m_perp.rank() as u64);
    Ok(Certificate {
        m,
        permutation,
        verdict: v,
    })
}

/// Relates the explicit 15-qubit pair to the lattice codes on the
/// level-1 tetrahedral lattice: `C_A` against `QRM(4)` and
/// `CC_3(0,1)`, and the `C_B` gauge group against `CC_3(0,0)`.
pub fn certify_fifteen() -> Result<Verdict> {
    let h1 = fifteen::h1();
    let h2 = fifteen::h2();
    let a = fifteen::code_a();
    let b = fifteen::code_b();
    let qrm = build_qrm(4)?;
    let lattice = ColoredComplex::build_fractal(3, 1)?;
    let c01 = CodeSpec::color_code(&lattice, 0, 1)?;
    let c00 = CodeSpec::color_code(&lattice, 0, 0)?;

    // explicit qubit -> QRM qubit, and lattice qubit -> QRM qubit
    let to_qrm = column_matching(&h1, &qrm.matrix)?;
    let lattice_to_qrm = column_matching(&c01.stab_x, &qrm.matrix)?;
    let mut qrm_to_explicit = [0; 15];
    for (i, &q) in to_qrm.iter().enumerate() {
        qrm_to_explicit[q] = i;
    }
    let lattice_to_explicit: Vec<usize> =
        lattice_to_qrm.iter().map(|&q| qrm_to_explicit[q]).collect();

    let union_rank = h1.stack(&h2).rank();
    let mut v = Verdict::new(
        "fifteen_qubit_pair",
        "C_A/C_B",
        json!({ "lattice_to_explicit": lattice_to_explicit, "rank_h1_h2": union_rank }),
    );
    if union_rank != 10 {
        v.fail(format!("rank(H1 ∪ H2) = {union_rank}, expected 10"));
    }
    if !h1.permute_columns(&to_qrm).same_row_space(&qrm.spec.stab_x)
        || !a
            .stab_z
            .permute_columns(&to_qrm)
            .same_row_space(&qrm.spec.stab_z)
    {
        v.fail("C_A differs from QRM(4)");
    }
    let relabel = |m: &BitMatrix| m.permute_columns(&lattice_to_explicit);
    if !relabel(&c01.stab_x).same_row_space(&a.stab_x)
        || !relabel(&c01.stab_z).same_row_space(&a.stab_z)
    {
        v.fail("CC_3(0,1) stabilizers differ from <H1^X, H1^Z, H2^Z>");
    }
    if !relabel(&c00.gauge_x).same_row_space(&b.gauge_x)
        || !relabel(&c00.gauge_z).same_row_space(&b.gauge_z)
    {
        v.fail("CC_3(0,0) gauge group differs from C_B");
    }
    if !relabel(&c00.stab_x).same_row_space(&b.stab_x)
        || !relabel(&c00.stab_z).same_row_space(&b.stab_z)
    {
        v.fail("CC_3(0,0) stabilizers differ from C_B");
    }
    Ok(v)
}
