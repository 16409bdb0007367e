// SPDX-License-Identifier: Apache-2.0

//! Lists every color code on a fractal lattice with its parameters and
//! the partial order between them.

use colorcode::code::{catalog, partial_order_leq, CodeKind};
use colorcode::{CodeSpec, ColoredComplex};

fn main() -> colorcode::Result<()> {
    let d: usize = std::env::args()
        .nth(1)
        .map_or(3, |a| a.parse().expect("d must be an integer"));
    let lattice = ColoredComplex::build_fractal(d, 1)?;
    let mut codes = Vec::new();
    for entry in catalog(d) {
        let code = CodeSpec::color_code(&lattice, entry.x, entry.z)?;
        let count = code.logical_qubit_count()?;
        let dist = code.min_distance_bruteforce(4);
        let kind = match entry.kind {
            CodeKind::Stabilizer => "stabilizer",
            CodeKind::Subsystem => "subsystem",
        };
        println!(
            "{}: {kind}, n={} k={} gauge qubits={} dressed distance={:?} max R_n={:?}",
            code.name, code.n, count.logical, count.gauge_qubits, dist.dressed, entry.max_rn
        );
        codes.push(code);
    }
    for a in &codes {
        for b in &codes {
            if a.name != b.name && partial_order_leq(a, b)? {
                println!("{} ≺ {}", a.name, b.name);
            }
        }
    }
    Ok(())
}
