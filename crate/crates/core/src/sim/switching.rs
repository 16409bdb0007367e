// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use crate::code::{partial_order_leq, CodeSpec};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::pauli::PauliWord;

use super::tableau::{Tableau, TransversalGate};

/// Switching from `source` to `target`: the target stabilizers that are
/// not already stabilizers of the source and must be fixed by measurement.
///
/// Switching towards the smaller gauge group needs fix generators;
/// the opposite direction needs none.
#[derive(Clone, Debug)]
pub struct SwitchScript {
    pub source: CodeSpec,
    pub target: CodeSpec,
    /// Z-type rows first, then X-type rows, in target row order.
    pub fix_generators: Vec<PauliWord>,
}

/// One measurement of a fix generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub step: usize,
    pub generator_index: usize,
    pub outcome: i8,
    pub correction_support: Vec<usize>,
}

/// Renders a trace as JSON lines.
pub fn trace_to_jsonl(trace: &[TraceRecord]) -> String {
    trace
        .iter()
        .map(|r| serde_json::to_string(r).expect("trace record serializes") + "\n")
        .collect()
}

/// Rows of `target` that enlarge the span of `source`, chosen greedily.
fn extending_rows(source: &BitMatrix, target: &BitMatrix) -> Vec<BitVector> {
    let mut span = source.clone();
    let mut out = Vec::new();
    for row in target.rows() {
        if !span.row_space_contains_vector(row) {
            span.push_row(row.clone());
            out.push(row.clone());
        }
    }
    out
}

impl SwitchScript {
    pub fn new(source: &CodeSpec, target: &CodeSpec) -> Result<Self> {
        let down = partial_order_leq(source, target)?;
        let up = partial_order_leq(target, source)?;
        if !down && !up {
            return Err(Error::IncompatibleCodes(format!(
                "{} and {} are incomparable",
                source.name, target.name
            )));
        }
        let fix_generators = extending_rows(&source.stab_z, &target.stab_z)
            .into_iter()
            .map(PauliWord::z_type)
            .chain(
                extending_rows(&source.stab_x, &target.stab_x)
                    .into_iter()
                    .map(PauliWord::x_type),
            )
            .collect();
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            fix_generators,
        })
    }

    /// Pauli that anticommutes with fix generator `j` and commutes with the
    /// source stabilizers, the other fix generators and the logical of the
    /// same type, so it acts only on gauge qubits.
    pub fn correction(&self, j: usize) -> Result<PauliWord> {
        let fix = &self.fix_generators[j];
        let z_type = !fix.z.is_zero();
        let n = self.source.n;
        let (source_rows, logical) = if z_type {
            (&self.source.stab_z, &self.source.logical_z.z)
        } else {
            (&self.source.stab_x, &self.source.logical_x.x)
        };
        let mut rows: Vec<BitVector> = source_rows.rows().to_vec();
        let mut rhs = vec![false; rows.len()];
        for (i, g) in self.fix_generators.iter().enumerate() {
            if (!g.z.is_zero()) == z_type {
                rows.push(if z_type { g.z.clone() } else { g.x.clone() });
                rhs.push(i == j);
            }
        }
        rows.push(logical.clone());
        rhs.push(false);
        let system = BitMatrix::from_rows(n, rows)?;
        let support = system.solve(&BitVector::from_bools(&rhs)).ok_or_else(|| {
            Error::NoSolution(format!(
                "no correction for fix generator {j}; inconsistent script"
            ))
        })?;
        Ok(if z_type {
            PauliWord::x_type(support)
        } else {
            PauliWord::z_type(support)
        })
    }
}

/// Measures every fix generator in order and corrects -1 outcomes.
pub fn gauge_fix(t: &mut Tableau, script: &SwitchScript) -> Result<Vec<TraceRecord>> {
    let mut trace = Vec::with_capacity(script.fix_generators.len());
    for (j, g) in script.fix_generators.iter().enumerate() {
        let m = t.measure(g);
        let mut correction_support = Vec::new();
        if m.negative {
            let c = script.correction(j)?;
            t.apply_pauli(&c);
            correction_support = c.x.iter_ones().chain(c.z.iter_ones()).collect();
            correction_support.sort_unstable();
        }
        trace.push(TraceRecord {
            step: j,
            generator_index: j,
            outcome: m.eigenvalue(),
            correction_support,
        });
    }
    debug_assert!(t.satisfies(script.target.stabilizer_words().iter()));
    Ok(trace)
}

/// Logical Hadamard by code switching: `H` on every qubit of a codeword of
/// `c_large` gives a codeword of the self-dual `c_small`, and gauge fixing
/// returns it to `c_large`.
pub fn logical_h_protocol(
    c_small: &CodeSpec,
    c_large: &CodeSpec,
    input: &mut Tableau,
) -> Result<Vec<TraceRecord>> {
    if !c_small.is_self_dual() {
        return Err(Error::InvalidParameters(format!(
            "{} is not self-dual",
            c_small.name
        )));
    }
    if !partial_order_leq(c_small, c_large)? {
        return Err(Error::IncompatibleCodes(format!(
            "{} is not below {} in the partial order",
            c_small.name, c_large.name
        )));
    }
    input.apply_transversal(&TransversalGate::HAll)?;
    let script = SwitchScript::new(c_small, c_large)?;
    gauge_fix(input, &script)
}
