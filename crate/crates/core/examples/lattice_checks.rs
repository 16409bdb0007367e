// SPDX-License-Identifier: Apache-2.0

//! Runs the combinatorial lattice checks on a few fractal lattices and on a
//! deliberately miscolored copy.

use colorcode::transversal::verify_balanced_split;
use colorcode::ColoredComplex;

fn main() -> colorcode::Result<()> {
    for (d, level) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
        let l = ColoredComplex::build_fractal(d, level)?;
        println!("d={d} level={level}");
        for v in l.verify_lattice() {
            println!("  {}", v.summary());
        }
        let t = l.bipartition_qubits()?;
        println!(
            "  {} (|T|={}, |Tc|={})",
            l.verify_bipartition(&t).summary(),
            t.t_size(),
            t.tc().len()
        );
        println!("  {}", verify_balanced_split(&l, &t).summary());
    }

    let l = ColoredComplex::build_fractal(2, 1)?;
    let bad = colorcode::cli::miscolored(&l)?;
    println!("miscolored copy:");
    for v in bad.verify_lattice().iter().take(1) {
        println!("  {}", v.summary());
    }
    Ok(())
}
