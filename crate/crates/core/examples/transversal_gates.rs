// SPDX-License-Identifier: Apache-2.0

//! Certifies transversal `R_d` on `CC_d(0, d-2)` with the exact phase
//! oracle, and checks transversal `H` and `CNOT`.

use colorcode::transversal::{
    check_cnot_transversal, check_generator_intersections, check_h_transversal, phase_oracle_rn,
    TransversalRnPlan,
};
use colorcode::{CodeSpec, ColoredComplex};

fn main() -> colorcode::Result<()> {
    for (d, level) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
        let l = ColoredComplex::build_fractal(d, level)?;
        let code = CodeSpec::color_code_with_level(&l, 0, d - 2, Some(level))?;
        let t = l.bipartition_qubits()?;
        let plan = TransversalRnPlan::new(t.clone(), d as u32)?;
        println!(
            "{}: |T|={} |Tc|={} k={}",
            code.name,
            t.t_size(),
            t.tc().len(),
            plan.k
        );
        println!(
            "  {}",
            check_generator_intersections(&code, &t, d as u32)?.summary()
        );
        let oracle = phase_oracle_rn(&code, &plan)?;
        println!(
            "  phase histogram {:?}, logical exponent {} -> {}",
            oracle.histogram,
            oracle.logical_exponent,
            if oracle.pass() {
                "R_d implemented"
            } else {
                "not implemented"
            }
        );
        println!("  transversal H: {}", check_h_transversal(&code));
        println!("  {}", check_cnot_transversal(&code, &code)?.summary());
    }
    Ok(())
}
