// SPDX-License-Identifier: Apache-2.0

//! Identifies `QRM(m)` with the level-1 fractal color code in `m - 1`
//! dimensions by an explicit qubit permutation.

use colorcode::qrm::{build_m, build_qrm, certify_equivalence, certify_fifteen};

fn main() -> colorcode::Result<()> {
    println!("M_4 =\n{}", build_m(4).to_text());
    for m in 3..=5 {
        let q = build_qrm(m)?;
        let dist = q.spec.min_distance_bruteforce(3);
        println!(
            "QRM({m}): n={} k={} distance={:?}",
            q.spec.n,
            q.spec.logical_qubit_count()?.logical,
            dist.dressed
        );
        let cert = certify_equivalence(m)?;
        println!("  {}", cert.verdict.summary());
        println!("  permutation {:?}", cert.permutation);
    }
    let v = certify_fifteen()?;
    println!("{}", v.summary());
    println!("{}", v.to_json());
    Ok(())
}
