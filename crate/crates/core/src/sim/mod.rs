// SPDX-License-Identifier: Apache-2.0

//! Stabilizer-tableau simulation of codewords, transversal Clifford gates,
//! gauge fixing and code switching.

mod switching;
mod tableau;

pub use switching::{gauge_fix, logical_h_protocol, trace_to_jsonl, SwitchScript, TraceRecord};
pub use tableau::{
    codeword_generators, prepare_codeword, symplectic_rank, Gate, GaugeBasis, Logical, Measurement,
    Tableau, TransversalGate,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{fifteen, CodeSpec};
    use crate::error::Error;
    use crate::pauli::PauliWord;
    use crate::simplicial::ColoredComplex;
    use crate::transversal::TransversalRnPlan;

    fn lattice_pair() -> (CodeSpec, CodeSpec) {
        let l = ColoredComplex::build_fractal(3, 1).unwrap();
        (
            CodeSpec::color_code(&l, 0, 0).unwrap(),
            CodeSpec::color_code(&l, 0, 1).unwrap(),
        )
    }

    fn explicit_pair() -> (CodeSpec, CodeSpec) {
        (fifteen::code_b(), fifteen::code_a())
    }

    fn logical_state(code: &CodeSpec, t: &Tableau) -> (i8, i8) {
        (
            t.expectation(&code.logical_x),
            t.expectation(&code.logical_z),
        )
    }

    #[test]
    fn codewords_satisfy_their_generators() {
        let (small, large) = lattice_pair();
        for code in [&small, &large, &fifteen::code_a(), &fifteen::code_b()] {
            for basis in [GaugeBasis::GZ, GaugeBasis::GX] {
                for logical in [Logical::Zero, Logical::One, Logical::Plus, Logical::Minus] {
                    let t = prepare_codeword(code, basis, logical, 11).unwrap();
                    assert!(t.satisfies(codeword_generators(code, basis, logical).iter()));
                    assert!(t.satisfies(code.stabilizer_words().iter()));
                }
            }
            let one = prepare_codeword(code, GaugeBasis::GZ, Logical::One, 0).unwrap();
            assert_eq!(one.expectation(&code.logical_z), -1);
            assert!(!one.satisfies([&code.logical_z]));
        }
    }

    #[test]
    fn stabilizer_code_frames_coincide() {
        let a = fifteen::code_a();
        let gz = prepare_codeword(&a, GaugeBasis::GZ, Logical::Zero, 1).unwrap();
        let gx = prepare_codeword(&a, GaugeBasis::GX, Logical::Zero, 2).unwrap();
        assert!(gz.same_state(&gx));
        // |0̄⟩|g_Z⟩ of C_B is the C_A codeword
        let b = prepare_codeword(&fifteen::code_b(), GaugeBasis::GZ, Logical::Zero, 3).unwrap();
        assert!(b.same_state(&gz));
    }

    #[test]
    fn gauge_measurements_on_codewords() {
        let b = fifteen::code_b();
        let mut t = prepare_codeword(&b, GaugeBasis::GZ, Logical::Zero, 5).unwrap();
        for row in b.gauge_z.rows() {
            let m = t.measure(&PauliWord::z_type(row.clone()));
            assert!(m.deterministic && !m.negative);
        }
        let mut t = prepare_codeword(&b, GaugeBasis::GX, Logical::Zero, 5).unwrap();
        let h2_row = PauliWord::z_type(fifteen::h2().row(0).clone());
        assert!(!t.measure(&h2_row).deterministic);
    }

    #[test]
    fn hadamard_switches_gauge_frame() {
        let b = fifteen::code_b();
        let mut t = prepare_codeword(&b, GaugeBasis::GZ, Logical::Zero, 0).unwrap();
        t.apply_transversal(&TransversalGate::HAll).unwrap();
        let plus = prepare_codeword(&b, GaugeBasis::GX, Logical::Plus, 0).unwrap();
        assert!(t.same_state(&plus));
    }

    #[test]
    fn logical_hadamard_protocol() {
        for (small, large) in [lattice_pair(), explicit_pair()] {
            let script = SwitchScript::new(&small, &large).unwrap();
            assert_eq!(script.fix_generators.len(), 6, "{}", large.name);
            assert!(SwitchScript::new(&large, &small)
                .unwrap()
                .fix_generators
                .is_empty());

            for (input, expected) in [
                (Logical::Zero, (1, 0)),
                (Logical::Plus, (0, 1)),
                (Logical::One, (-1, 0)),
            ] {
                for seed in 0..8 {
                    let mut t = prepare_codeword(&large, GaugeBasis::GZ, input, seed).unwrap();
                    let trace = logical_h_protocol(&small, &large, &mut t).unwrap();
                    assert_eq!(trace.len(), 6);
                    assert!(t.satisfies(large.stabilizer_words().iter()));
                    assert_eq!(logical_state(&large, &t), expected);
                }
            }

            let start = prepare_codeword(&large, GaugeBasis::GZ, Logical::Zero, 9).unwrap();
            let mut t = start.clone();
            logical_h_protocol(&small, &large, &mut t).unwrap();
            logical_h_protocol(&small, &large, &mut t).unwrap();
            assert!(t.same_state(&start));
        }
    }

    #[test]
    fn protocol_is_seed_reproducible() {
        let (small, large) = lattice_pair();
        let run = |seed| {
            let mut t = prepare_codeword(&large, GaugeBasis::GZ, Logical::Zero, seed).unwrap();
            trace_to_jsonl(&logical_h_protocol(&small, &large, &mut t).unwrap())
        };
        assert_eq!(run(42), run(42));
        let distinct: std::collections::BTreeSet<String> = (0..16).map(run).collect();
        assert!(distinct.len() > 1, "outcomes never vary across seeds");
    }

    #[test]
    fn gauge_fix_is_idempotent() {
        let (small, large) = lattice_pair();
        let script = SwitchScript::new(&small, &large).unwrap();
        let mut t = prepare_codeword(&small, GaugeBasis::GX, Logical::Zero, 4).unwrap();
        gauge_fix(&mut t, &script).unwrap();
        let once = t.clone();
        let trace = gauge_fix(&mut t, &script).unwrap();
        assert!(trace
            .iter()
            .all(|r| r.outcome == 1 && r.correction_support.is_empty()));
        assert!(t.same_state(&once));
        assert_eq!(t.expectation(&large.logical_z), 1);
    }

    #[test]
    fn switching_down_does_nothing() {
        let (small, large) = lattice_pair();
        let script = SwitchScript::new(&large, &small).unwrap();
        let mut t = prepare_codeword(&large, GaugeBasis::GZ, Logical::Plus, 0).unwrap();
        let before = t.clone();
        assert!(gauge_fix(&mut t, &script).unwrap().is_empty());
        assert!(t.same_state(&before));
    }

    #[test]
    fn protocol_preconditions() {
        let (small, large) = lattice_pair();
        let mut t = prepare_codeword(&large, GaugeBasis::GZ, Logical::Zero, 0).unwrap();
        assert!(matches!(
            logical_h_protocol(&large, &small, &mut t),
            Err(Error::InvalidParameters(_))
        ));
        let l = ColoredComplex::build_fractal(3, 1).unwrap();
        let c10 = CodeSpec::color_code(&l, 1, 0).unwrap();
        assert!(matches!(
            SwitchScript::new(&c10, &large),
            Err(Error::IncompatibleCodes(_))
        ));
    }

    #[test]
    fn transversal_s_on_the_triangle_code() {
        let l = ColoredComplex::build_fractal(2, 1).unwrap();
        let c = CodeSpec::color_code(&l, 0, 0).unwrap();
        let plan = TransversalRnPlan::new(l.bipartition_qubits().unwrap(), 2).unwrap();
        let mut t = prepare_codeword(&c, GaugeBasis::GZ, Logical::Plus, 0).unwrap();
        t.apply_transversal(&TransversalGate::Rn(plan.clone()))
            .unwrap();
        // logical Y = i X̄ Z̄
        let y = c
            .logical_x
            .mul(&c.logical_z)
            .with_phase(c.logical_x.mul(&c.logical_z).phase() + 1);
        assert_eq!(t.expectation(&y), 1);
        assert!(t.satisfies(c.stabilizer_words().iter()));

        let rt = TransversalRnPlan::new(l.bipartition_qubits().unwrap(), 3).unwrap();
        assert!(matches!(
            t.apply_transversal(&TransversalGate::Rn(rt)),
            Err(Error::NonClifford(_))
        ));
    }

    #[test]
    fn logical_cnot_on_code_pairs() {
        let (small, _) = lattice_pair();
        let plus = prepare_codeword(&small, GaugeBasis::GZ, Logical::Plus, 0).unwrap();
        let zero = prepare_codeword(&small, GaugeBasis::GZ, Logical::Zero, 0).unwrap();
        let mut pair = plus.tensor(&zero);
        pair.apply_cnot_pairs(small.n);
        let n = small.n;
        let lift = |p: &PauliWord| {
            let mut both = PauliWord::identity(2 * n);
            for i in p.x.iter_ones() {
                both.x.set(i, true);
                both.x.set(n + i, true);
            }
            for i in p.z.iter_ones() {
                both.z.set(i, true);
                both.z.set(n + i, true);
            }
            both
        };
        // logical Bell state: X̄X̄ and Z̄Z̄ both +1
        assert_eq!(pair.expectation(&lift(&small.logical_x)), 1);
        assert_eq!(pair.expectation(&lift(&small.logical_z)), 1);
    }
}
