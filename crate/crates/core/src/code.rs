// SPDX-License-Identifier: Apache-2.0

//! CSS subsystem codes and the color codes `CC_L(x, z)`.
//!
//! On a lattice of dimension `d` the code `CC_L(x, z)` (with
//! `x + z <= d - 2`) has
//!
//! | group            | supported on            |
//! |------------------|-------------------------|
//! | X stabilizers    | interior `x`-simplices  |
//! | Z stabilizers    | interior `z`-simplices  |
//! | X gauge          | interior `(d-2-z)`-simplices |
//! | Z gauge          | interior `(d-2-x)`-simplices |
//!
//! so the stabilizer group is the center of the gauge group, and raising
//! `x` or `z` shrinks the gauge group. For `x + z = d - 2` gauge and
//! stabilizer groups coincide.

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::pauli::PauliWord;
use crate::report::Verdict;
use crate::simplicial::{ColoredComplex, Simplex};

/// Where a code came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Lattice {
        d: usize,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        level: Option<usize>,
        x: usize,
        z: usize,
    },
    Explicit,
}

/// A CSS subsystem code with one logical qubit and bare logicals `X(Q)`, `Z(Q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    pub name: String,
    pub n: usize,
    /// Maximal simplex carrying each qubit, when built from a lattice.
    pub qubits: Option<Vec<Simplex>>,
    pub gauge_x: BitMatrix,
    pub gauge_z: BitMatrix,
    pub stab_x: BitMatrix,
    pub stab_z: BitMatrix,
    pub logical_x: PauliWord,
    pub logical_z: PauliWord,
    pub provenance: Provenance,
}

/// Counting data for a subsystem code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LogicalCount {
    pub logical: usize,
    pub gauge_qubits: usize,
    pub stabilizer_rank: usize,
    pub gauge_rank: usize,
}

/// Whether a catalog entry is a stabilizer or a proper subsystem code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CodeKind {
    Stabilizer,
    Subsystem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub x: usize,
    pub z: usize,
    pub kind: CodeKind,
    /// Largest `n` for which `R_n` is transversal (stabilizer codes only).
    pub max_rn: Option<usize>,
}

/// Minimum weights of nontrivial logical operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Distance {
    /// Dressed convention: minimum over logical operators times gauge elements.
    pub dressed: Option<usize>,
    /// Bare convention: logical operators commuting with the whole gauge group.
    pub bare: Option<usize>,
}

fn supports(complex: &ColoredComplex, simplices: &[Simplex]) -> BitMatrix {
    let n = complex.num_qubits();
    let rows = simplices
        .iter()
        .map(|s| BitVector::from_support(n, complex.support(s)))
        .collect();
    BitMatrix::from_rows(n, rows).expect("supports have width n")
}

/// All `x + z <= d - 2` color codes on a `d`-dimensional lattice.
pub fn catalog(d: usize) -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    if d < 2 {
        return out;
    }
    for x in 0..=d - 2 {
        for z in 0..=(d - 2 - x) {
            let stabilizer = x + z == d - 2;
            out.push(CatalogEntry {
                x,
                z,
                kind: if stabilizer {
                    CodeKind::Stabilizer
                } else {
                    CodeKind::Subsystem
                },
                max_rn: stabilizer.then_some(d / (x + 1)),
            });
        }
    }
    out
}

impl CodeSpec {
    /// The color code `CC_L(x, z)` on `lattice`.
    pub fn color_code(lattice: &ColoredComplex, x: usize, z: usize) -> Result<Self> {
        Self::color_code_with_level(lattice, x, z, None)
    }

    /// Like [`CodeSpec::color_code`], recording the fractal level in the provenance.
    pub fn color_code_with_level(
        lattice: &ColoredComplex,
        x: usize,
        z: usize,
        level: Option<usize>,
    ) -> Result<Self> {
        let d = lattice.dim();
        if d < 2 || x + z > d - 2 {
            return Err(Error::InvalidParameters(format!(
                "color code needs x + z <= d - 2, got x={x}, z={z}, d={d}"
            )));
        }
        let problems = lattice.check_conditions();
        if let Some(p) = problems.first() {
            return Err(Error::InvalidLattice(p.clone()));
        }
        let on = |k: usize| supports(lattice, &lattice.interior_simplices(k).expect("k <= d"));
        let n = lattice.num_qubits();
        let name = match level {
            Some(l) => format!("CC_{d}({x},{z})@fractal(d={d},level={l})"),
            None => format!("CC_{d}({x},{z})"),
        };
        Ok(Self {
            name,
            n,
            qubits: Some(lattice.maximal().to_vec()),
            gauge_x: on(d - 2 - z),
            gauge_z: on(d - 2 - x),
            stab_x: on(x),
            stab_z: on(z),
            logical_x: PauliWord::x_type(BitVector::ones(n)),
            logical_z: PauliWord::z_type(BitVector::ones(n)),
            provenance: Provenance::Lattice { d, level, x, z },
        })
    }

    /// `CC(x, z)` on the fractal lattice `L_level` of dimension `d`.
    pub fn fractal_color_code(d: usize, level: usize, x: usize, z: usize) -> Result<Self> {
        let lattice = ColoredComplex::build_fractal(d, level)?;
        Self::color_code_with_level(&lattice, x, z, Some(level))
    }

    /// A code given by explicit generator matrices, with logicals `X(Q)`, `Z(Q)`.
    pub fn from_matrices(
        name: impl Into<String>,
        gauge_x: BitMatrix,
        gauge_z: BitMatrix,
        stab_x: BitMatrix,
        stab_z: BitMatrix,
    ) -> Result<Self> {
        let n = gauge_x.num_cols();
        for m in [&gauge_z, &stab_x, &stab_z] {
            if m.num_cols() != n {
                return Err(Error::Dimension(format!(
                    "generator matrices have widths {n} and {}",
                    m.num_cols()
                )));
            }
        }
        Ok(Self {
            name: name.into(),
            n,
            qubits: None,
            gauge_x,
            gauge_z,
            stab_x,
            stab_z,
            logical_x: PauliWord::x_type(BitVector::ones(n)),
            logical_z: PauliWord::z_type(BitVector::ones(n)),
            provenance: Provenance::Explicit,
        })
    }

    /// A stabilizer code (gauge group equal to the stabilizer group).
    pub fn stabilizer_code(
        name: impl Into<String>,
        stab_x: BitMatrix,
        stab_z: BitMatrix,
    ) -> Result<Self> {
        Self::from_matrices(name, stab_x.clone(), stab_z.clone(), stab_x, stab_z)
    }

    pub fn is_stabilizer_code(&self) -> bool {
        self.gauge_x.same_row_space(&self.stab_x) && self.gauge_z.same_row_space(&self.stab_z)
    }

    /// Stabilizer generators as Pauli words (X rows first).
    pub fn stabilizer_words(&self) -> Vec<PauliWord> {
        self.stab_x
            .rows()
            .iter()
            .map(|r| PauliWord::x_type(r.clone()))
            .chain(
                self.stab_z
                    .rows()
                    .iter()
                    .map(|r| PauliWord::z_type(r.clone())),
            )
            .collect()
    }

    fn label(&self) -> String {
        self.name.clone()
    }

    /// Checks that stabilizers commute with each other and with the gauge
    /// generators, that stabilizers lie in the gauge group and that the
    /// logicals commute with the gauge group.
    pub fn verify_commutation(&self) -> Verdict {
        let mut v = Verdict::new("commutation", self.label(), json!({ "n": self.n }));
        let check = |xs: &BitMatrix, xl: &str, zs: &BitMatrix, zl: &str, v: &mut Verdict| {
            for (i, a) in xs.rows().iter().enumerate() {
                for (j, b) in zs.rows().iter().enumerate() {
                    v.bump("pairs");
                    if a.len() != b.len() {
                        v.fail(format!("{xl}[{i}] and {zl}[{j}] have different lengths"));
                    } else if a.dot(b) {
                        v.fail(format!("{xl}[{i}] anticommutes with {zl}[{j}]"));
                    }
                }
            }
        };
        check(&self.stab_x, "stab_x", &self.stab_z, "stab_z", &mut v);
        check(&self.stab_x, "stab_x", &self.gauge_z, "gauge_z", &mut v);
        check(&self.gauge_x, "gauge_x", &self.stab_z, "stab_z", &mut v);

        let widths_ok = [&self.gauge_x, &self.gauge_z, &self.stab_x, &self.stab_z]
            .iter()
            .all(|m| m.num_cols() == self.n);
        if !widths_ok {
            v.fail("generator matrices do not all have width n");
            return v;
        }
        if !self.gauge_x.row_space_contains(&self.stab_x) {
            v.fail("stab_x is not contained in the X gauge group");
        }
        if !self.gauge_z.row_space_contains(&self.stab_z) {
            v.fail("stab_z is not contained in the Z gauge group");
        }
        for (i, g) in self.gauge_z.rows().iter().enumerate() {
            if g.dot(&self.logical_x.x) {
                v.fail(format!("logical X anticommutes with gauge_z[{i}]"));
            }
        }
        for (i, g) in self.gauge_x.rows().iter().enumerate() {
            if g.dot(&self.logical_z.z) {
                v.fail(format!("logical Z anticommutes with gauge_x[{i}]"));
            }
        }
        if !self.logical_x.anticommutes(&self.logical_z) {
            v.fail("logical X and Z commute");
        }
        v
    }

    /// Counts anticommuting X-gauge/Z-gauge generator pairs (allowed in subsystem codes).
    pub fn anticommuting_gauge_pairs(&self) -> usize {
        let m = self.gauge_x.mul_transpose(&self.gauge_z);
        m.rows().iter().map(BitVector::weight).sum()
    }

    /// The center of the gauge group, computed directly from the gauge
    /// generators: `(X part, Z part)`.
    pub fn gauge_center(&self) -> (BitMatrix, BitMatrix) {
        let center = |own: &BitMatrix, other: &BitMatrix| {
            // combinations y of `own` rows with other · (yᵀ own)ᵀ = 0
            let coeffs = other.mul_transpose(own).kernel_basis();
            let rows = coeffs.rows().iter().map(|y| own.combine_rows(y)).collect();
            BitMatrix::from_rows(own.num_cols(), rows).expect("widths agree")
        };
        (
            center(&self.gauge_x, &self.gauge_z),
            center(&self.gauge_z, &self.gauge_x),
        )
    }

    /// Cross-checks the stabilizer generators against the center of the gauge group.
    pub fn verify_stabilizer_is_center(&self) -> Verdict {
        let mut v = Verdict::new(
            "stabilizer_is_gauge_center",
            self.label(),
            json!({ "n": self.n }),
        );
        let (cx, cz) = self.gauge_center();
        v.add("center_rank_x", cx.rank() as u64);
        v.add("center_rank_z", cz.rank() as u64);
        if !cx.same_row_space(&self.stab_x) {
            v.fail(format!(
                "X stabilizers (rank {}) differ from the X center (rank {})",
                self.stab_x.rank(),
                cx.rank()
            ));
        }
        if !cz.same_row_space(&self.stab_z) {
            v.fail(format!(
                "Z stabilizers (rank {}) differ from the Z center (rank {})",
                self.stab_z.rank(),
                cz.rank()
            ));
        }
        v
    }

    /// `k = n - s - r`, with `s` the stabilizer rank and `r = (g - s) / 2`
    /// gauge qubits for gauge rank `g`.
    pub fn logical_qubit_count(&self) -> Result<LogicalCount> {
        let symplectic = |x: &BitMatrix, z: &BitMatrix| {
            let n = self.n;
            let rows = x
                .rows()
                .iter()
                .map(|r| BitVector::from_support(2 * n, r.iter_ones()))
                .chain(
                    z.rows()
                        .iter()
                        .map(|r| BitVector::from_support(2 * n, r.iter_ones().map(|i| i + n))),
                )
                .collect();
            BitMatrix::from_rows(2 * n, rows).expect("width 2n").rank()
        };
        let s = symplectic(&self.stab_x, &self.stab_z);
        let g = symplectic(&self.gauge_x, &self.gauge_z);
        if g < s || (g - s) % 2 != 0 || s + (g - s) / 2 > self.n {
            return Err(Error::InconsistentCode(format!(
                "gauge rank {g} and stabilizer rank {s} are inconsistent"
            )));
        }
        let r = (g - s) / 2;
        Ok(LogicalCount {
            logical: self.n - s - r,
            gauge_qubits: r,
            stabilizer_rank: s,
            gauge_rank: g,
        })
    }

    /// Exhaustive minimum-weight search for nontrivial logical operators of
    /// weight at most `w_max`, X-type and Z-type separately.
    pub fn min_distance_bruteforce(&self, w_max: usize) -> Distance {
        // dressed: commutes with the stabilizers, outside the gauge group
        let dressed_x = min_weight_outside(&self.stab_z, &self.gauge_x, w_max);
        let dressed_z = min_weight_outside(&self.stab_x, &self.gauge_z, w_max);
        // bare: commutes with the whole gauge group, outside the stabilizer group
        let bare_x = min_weight_outside(&self.gauge_z, &self.stab_x, w_max);
        let bare_z = min_weight_outside(&self.gauge_x, &self.stab_z, w_max);
        let min = |a: Option<usize>, b: Option<usize>| match (a, b) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Distance {
            dressed: min(dressed_x, dressed_z),
            bare: min(bare_x, bare_z),
        }
    }

    /// X/Z gauge supports span the same spaces.
    pub fn is_self_dual(&self) -> bool {
        self.gauge_x.same_row_space(&self.gauge_z)
    }

    // ---- bundle I/O ----

    pub fn to_bundle_json(&self) -> String {
        let rows = |m: &BitMatrix| m.rows().iter().map(|r| r.to_string()).collect::<Vec<_>>();
        let bundle = CodeBundle {
            name: self.name.clone(),
            n: self.n,
            provenance: self.provenance.clone(),
            matrices: Matrices {
                gauge_x: rows(&self.gauge_x),
                gauge_z: rows(&self.gauge_z),
                stab_x: rows(&self.stab_x),
                stab_z: rows(&self.stab_z),
            },
            qubits: self
                .qubits
                .as_ref()
                .map(|qs| qs.iter().map(|s| s.vertices().to_vec()).collect()),
        };
        serde_json::to_string_pretty(&bundle).expect("bundle serializes")
    }

    pub fn from_bundle_json(text: &str) -> Result<Self> {
        let b: CodeBundle = serde_json::from_str(text)?;
        let parse = |rows: &[String]| -> Result<BitMatrix> {
            let parsed = rows
                .iter()
                .map(|r| r.parse())
                .collect::<Result<Vec<BitVector>>>()?;
            BitMatrix::from_rows(b.n, parsed)
        };
        let qubits = match b.qubits {
            Some(qs) => Some(
                qs.into_iter()
                    .map(Simplex::new)
                    .collect::<Result<Vec<_>>>()?,
            ),
            None => None,
        };
        Ok(Self {
            name: b.name,
            n: b.n,
            qubits,
            gauge_x: parse(&b.matrices.gauge_x)?,
            gauge_z: parse(&b.matrices.gauge_z)?,
            stab_x: parse(&b.matrices.stab_x)?,
            stab_z: parse(&b.matrices.stab_z)?,
            logical_x: PauliWord::x_type(BitVector::ones(b.n)),
            logical_z: PauliWord::z_type(BitVector::ones(b.n)),
            provenance: b.provenance,
        })
    }
}

/// Smallest weight of a vector in `ker(checks) \ rowspace(trivial)`, up to `w_max`.
fn min_weight_outside(checks: &BitMatrix, trivial: &BitMatrix, w_max: usize) -> Option<usize> {
    let n = checks.num_cols();
    let (reduced, pivots) = trivial.rref();
    let in_trivial = |v: &BitVector| {
        let mut rest = v.clone();
        for (row, &p) in reduced.rows().iter().zip(&pivots) {
            if rest.get(p) {
                rest.xor_assign(row);
            }
        }
        rest.is_zero()
    };
    for w in 1..=w_max.min(n) {
        let mut idx: Vec<usize> = (0..w).collect();
        loop {
            let v = BitVector::from_support(n, idx.iter().copied());
            if checks.rows().iter().all(|c| !c.dot(&v)) && !in_trivial(&v) {
                return Some(w);
            }
            let Some(pos) = (0..w).rev().find(|&i| idx[i] != i + n - w) else {
                break;
            };
            idx[pos] += 1;
            for j in pos + 1..w {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    None
}

/// `a ≺ b`: same logicals and the gauge group of `b` lies inside that of `a`.
///
/// When both codes come from the same lattice the result is cross-checked
/// against `x_a <= x_b && z_a <= z_b`; a disagreement is an error.
pub fn partial_order_leq(a: &CodeSpec, b: &CodeSpec) -> Result<bool> {
    if a.n != b.n || a.qubits != b.qubits {
        return Err(Error::IncompatibleCodes(format!(
            "{} and {} are defined on different qubit sets",
            a.name, b.name
        )));
    }
    let leq = a.logical_x == b.logical_x
        && a.logical_z == b.logical_z
        && a.gauge_x.row_space_contains(&b.gauge_x)
        && a.gauge_z.row_space_contains(&b.gauge_z);
    if let (
        Provenance::Lattice {
            d: da,
            level: la,
            x: xa,
            z: za,
        },
        Provenance::Lattice {
            d: db,
            level: lb,
            x: xb,
            z: zb,
        },
    ) = (&a.provenance, &b.provenance)
    {
        if da == db && la == lb && a.qubits.is_some() {
            let expected = xa <= xb && za <= zb;
            if expected != leq {
                return Err(Error::InconsistentCode(format!(
                    "gauge containment ({leq}) disagrees with parameter order ({expected}) for {} vs {}",
                    a.name, b.name
                )));
            }
        }
    }
    Ok(leq)
}

#[derive(Serialize, Deserialize)]
struct Matrices {
    gauge_x: Vec<String>,
    gauge_z: Vec<String>,
    stab_x: Vec<String>,
    stab_z: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct CodeBundle {
    name: String,
    n: usize,
    provenance: Provenance,
    matrices: Matrices,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    qubits: Option<Vec<Vec<usize>>>,
}

/// The explicit 15-qubit pair: the Reed-Muller stabilizer code `C_A` and
/// the self-dual subsystem code `C_B` built from the same two matrices.
pub mod fifteen {
    use super::*;

    /// Four weight-8 rows.
    pub fn h1() -> BitMatrix {
        BitMatrix::from_strs(&[
            "111111110000000",
            "111100001111000",
            "110011001100110",
            "101010101010101",
        ])
        .expect("constant matrix")
    }

    /// Six weight-4 rows.
    pub fn h2() -> BitMatrix {
        BitMatrix::from_strs(&[
            "111100000000000",
            "110011000000000",
            "101010100000000",
            "110000001100000",
            "101000001010000",
            "100010001000100",
        ])
        .expect("constant matrix")
    }

    /// `S_A = <H1^X, H1^Z, H2^Z>`.
    pub fn code_a() -> CodeSpec {
        CodeSpec::stabilizer_code("C_A", h1(), h1().stack(&h2())).expect("consistent widths")
    }

    /// `S_B = <H1^X, H1^Z>`, `G_B = <H1^X, H2^X, H1^Z, H2^Z>`.
    pub fn code_b() -> CodeSpec {
        let gauge = h1().stack(&h2());
        CodeSpec::from_matrices("C_B", gauge.clone(), gauge, h1(), h1()).expect("consistent widths")
    }
}
