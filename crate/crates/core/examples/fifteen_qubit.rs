// SPDX-License-Identifier: Apache-2.0

//! The explicit 15-qubit pair: intersection numbers of the X generators,
//! code parameters and the `T = ∅` transversal `T`-gate check.

use colorcode::code::{fifteen, partial_order_leq};
use colorcode::transversal::{
    check_gauge_balance, check_generator_intersections, phase_oracle_rn, TransversalRnPlan,
};
use colorcode::Bipartition;

fn main() -> colorcode::Result<()> {
    let h1 = fifteen::h1();
    let rows = h1.rows();
    println!(
        "|G_a|: {:?}",
        rows.iter().map(|r| r.weight()).collect::<Vec<_>>()
    );
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            print!("|G_{i} ∩ G_{j}| = {}  ", rows[i].overlap(&rows[j]));
        }
    }
    println!();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            for k in j + 1..rows.len() {
                print!(
                    "|G_{i}∩G_{j}∩G_{k}| = {}  ",
                    rows[i].and(&rows[j]).overlap(&rows[k])
                );
            }
        }
    }
    println!();

    let a = fifteen::code_a();
    let b = fifteen::code_b();
    for c in [&a, &b] {
        let count = c.logical_qubit_count()?;
        println!(
            "{}: k={} gauge qubits={} distance={:?} self-dual={}",
            c.name,
            count.logical,
            count.gauge_qubits,
            c.min_distance_bruteforce(3).dressed,
            c.is_self_dual()
        );
        let t = Bipartition::empty_t(c.n);
        println!("  {}", check_generator_intersections(c, &t, 3)?.summary());
        println!("  {}", check_gauge_balance(c, &t, 3)?.summary());
    }
    println!("C_B ≺ C_A: {}", partial_order_leq(&b, &a)?);

    let plan = TransversalRnPlan::new(Bipartition::empty_t(15), 3)?;
    let oracle = phase_oracle_rn(&a, &plan)?;
    println!("{}", oracle.to_verdict(&a.name).to_json());
    Ok(())
}
