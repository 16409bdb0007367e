// SPDX-License-Identifier: Apache-2.0

//! Logical Hadamard on the 15-qubit code `CC_3(0,1)` by switching through
//! the self-dual subsystem code `CC_3(0,0)`.

use colorcode::sim::{
    logical_h_protocol, prepare_codeword, trace_to_jsonl, GaugeBasis, Logical, SwitchScript,
};
use colorcode::{CodeSpec, ColoredComplex};

fn main() -> colorcode::Result<()> {
    let seed: u64 = std::env::args()
        .nth(1)
        .map_or(2024, |a| a.parse().expect("seed must be an integer"));
    let l = ColoredComplex::build_fractal(3, 1)?;
    let small = CodeSpec::color_code(&l, 0, 0)?;
    let large = CodeSpec::color_code(&l, 0, 1)?;

    let script = SwitchScript::new(&small, &large)?;
    println!("fix generators:");
    for g in &script.fix_generators {
        println!("  {g}");
    }

    for input in [Logical::Zero, Logical::Plus] {
        let mut t = prepare_codeword(&large, GaugeBasis::GZ, input, seed)?;
        let trace = logical_h_protocol(&small, &large, &mut t)?;
        print!("{}", trace_to_jsonl(&trace));
        println!(
            "{input:?} -> <X(Q)> = {}, <Z(Q)> = {}, stabilizers satisfied: {}",
            t.expectation(&large.logical_x),
            t.expectation(&large.logical_z),
            t.satisfies(large.stabilizer_words().iter())
        );
    }
    Ok(())
}
