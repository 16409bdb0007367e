// SPDX-License-Identifier: Apache-2.0

//! Builds the fractal lattice family and prints its size at each level.
//!
//! `cargo run --example fractal_lattice -- 3 2` prints d=3 up to level 2
//! and the JSON of the last lattice.

use colorcode::ColoredComplex;

fn main() -> colorcode::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>());
    let d = args
        .next()
        .transpose()
        .expect("d must be an integer")
        .unwrap_or(2);
    let max_level = args
        .next()
        .transpose()
        .expect("level must be an integer")
        .unwrap_or(3);

    let mut last = None;
    for level in 1..=max_level {
        let l = ColoredComplex::build_fractal(d, level)?;
        println!(
            "d={d} level={level}: {} vertices ({} interior), {} qubits",
            l.num_vertices(),
            l.interior_vertices().len(),
            l.num_qubits()
        );
        for k in 0..d {
            println!(
                "  interior {k}-simplices: {}",
                l.interior_simplices(k)?.len()
            );
        }
        last = Some(l);
    }
    if let Some(l) = last {
        println!("{}", l.to_json());
    }
    Ok(())
}
