// SPDX-License-Identifier: Apache-2.0

//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Runs under `cargo test` with its own harness.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use colorcode::code::{catalog, fifteen, partial_order_leq, CodeKind};
use colorcode::qrm::{build_qrm, certify_equivalence, certify_fifteen};
use colorcode::sim::{logical_h_protocol, prepare_codeword, trace_to_jsonl, GaugeBasis, Logical};
use colorcode::transversal::{
    check_generator_intersections, phase_oracle_rn, verify_balanced_split, TransversalRnPlan,
};
use colorcode::{Bipartition, CodeSpec, ColoredComplex, Verdict};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, u64);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T>(r: colorcode::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn fractal_counts() -> Outcome {
    for (level, n) in [(1, 7), (2, 13), (3, 19)] {
        let got = ok(ColoredComplex::build_fractal(2, level))?.num_qubits();
        ensure(got == n, || {
            format!("d=2 level={level}: {got} qubits, expected {n}")
        })?;
    }
    for m in 3..=5 {
        let got = ok(ColoredComplex::build_fractal(m - 1, 1))?.num_qubits();
        ensure(got == (1 << m) - 1, || {
            format!("d={} level=1: {got} qubits", m - 1)
        })?;
    }
    Ok("7/13/19 and 7/15/31 qubits".into())
}

fn intersection_numbers() -> Outcome {
    let rows = fifteen::h1().rows().to_vec();
    ensure(rows.iter().all(|r| r.weight() == 8), || {
        "some |G_a| != 8".into()
    })?;
    for i in 0..4 {
        for j in i + 1..4 {
            let pair = rows[i].and(&rows[j]);
            ensure(pair.weight() == 4, || {
                format!("|G_{i} ∩ G_{j}| = {}", pair.weight())
            })?;
            for k in j + 1..4 {
                let triple = pair.overlap(&rows[k]);
                ensure(triple == 2, || {
                    format!("|G_{i} ∩ G_{j} ∩ G_{k}| = {triple}")
                })?;
            }
        }
    }
    let a = fifteen::code_a();
    let t = Bipartition::empty_t(15);
    let v = ok(check_generator_intersections(&a, &t, 3))?;
    ensure(v.pass, || {
        format!("generator condition fails: {:?}", v.witnesses)
    })?;
    let oracle = ok(phase_oracle_rn(&a, &ok(TransversalRnPlan::new(t, 3))?))?;
    ensure(oracle.histogram == BTreeMap::from([(0, 16)]), || {
        format!("histogram {:?}", oracle.histogram)
    })?;
    ensure(oracle.implements_up_to_direction(), || {
        format!("logical exponent {}", oracle.logical_exponent)
    })?;
    Ok(format!(
        "histogram {{0: 16}}, logical exponent {}",
        oracle.logical_exponent
    ))
}

fn qrm_equivalence() -> Outcome {
    let mut sizes = Vec::new();
    for m in 3..=5 {
        let cert = ok(certify_equivalence(m))?;
        ensure(cert.verdict.pass, || {
            format!("m={m}: {:?}", cert.verdict.witnesses)
        })?;
        let mut sorted = cert.permutation.clone();
        sorted.sort_unstable();
        ensure(sorted == (0..(1 << m) - 1).collect::<Vec<_>>(), || {
            format!("m={m}: not a permutation")
        })?;
        sizes.push(cert.permutation.len());
    }
    let v = ok(certify_fifteen())?;
    ensure(v.pass, || {
        format!("15-qubit identification: {:?}", v.witnesses)
    })?;
    Ok(format!(
        "permutations on {sizes:?} qubits; CC_3(0,1) = <H1^X, H1^Z, H2^Z>"
    ))
}

fn code_parameters() -> Outcome {
    for m in [3, 4] {
        let q = ok(build_qrm(m))?;
        let k = ok(q.spec.logical_qubit_count())?.logical;
        let dist = q.spec.min_distance_bruteforce(3).dressed;
        ensure(k == 1 && dist == Some(3), || {
            format!("QRM({m}): k={k}, d={dist:?}")
        })?;
    }
    let b = ok(fifteen::code_b().logical_qubit_count())?;
    ensure(b.logical == 1 && b.gauge_qubits == 6, || {
        format!("C_B: {b:?}")
    })?;
    Ok("[[7,1,3]], [[15,1,3]], C_B k=1 with 6 gauge qubits".into())
}

fn lattice_suites() -> Outcome {
    let mut checks = 0;
    for (d, level) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
        let l = ok(ColoredComplex::build_fractal(d, level))?;
        let t = ok(l.bipartition_qubits())?;
        let mut verdicts: Vec<Verdict> = l.verify_lattice();
        verdicts.push(l.verify_bipartition(&t));
        verdicts.push(verify_balanced_split(&l, &t));
        for entry in catalog(d) {
            let c = ok(CodeSpec::color_code(&l, entry.x, entry.z))?;
            verdicts.push(c.verify_commutation());
        }
        for v in verdicts {
            checks += 1;
            ensure(v.pass, || format!("d={d} level={level}: {}", v.summary()))?;
        }
    }
    Ok(format!("{checks} exhaustive checks"))
}

fn transversal_rd() -> Outcome {
    for (d, level) in [(2, 1), (2, 2), (2, 3), (3, 1)] {
        let l = ok(ColoredComplex::build_fractal(d, level))?;
        let c = ok(CodeSpec::color_code(&l, 0, d - 2))?;
        let plan = ok(TransversalRnPlan::new(
            ok(l.bipartition_qubits())?,
            d as u32,
        ))?;
        let oracle = ok(phase_oracle_rn(&c, &plan))?;
        ensure(oracle.pass(), || {
            format!("d={d} level={level}: {:?}", oracle)
        })?;
    }
    Ok("CC_2(0,0) levels 1-3 and CC_3(0,1) level 1".into())
}

fn run_protocol(small: &CodeSpec, large: &CodeSpec, seed: u64) -> Result<(), String> {
    let label = |t: &colorcode::sim::Tableau| {
        (
            t.expectation(&large.logical_x),
            t.expectation(&large.logical_z),
        )
    };
    for (input, expected) in [(Logical::Zero, (1, 0)), (Logical::Plus, (0, 1))] {
        let start = ok(prepare_codeword(large, GaugeBasis::GZ, input, seed))?;
        let mut t = start.clone();
        let trace = ok(logical_h_protocol(small, large, &mut t))?;
        ensure(label(&t) == expected, || {
            format!("{}: {input:?} -> {:?}", large.name, label(&t))
        })?;
        ensure(t.satisfies(large.stabilizer_words().iter()), || {
            format!("{}: stabilizer violated", large.name)
        })?;
        ok(logical_h_protocol(small, large, &mut t))?;
        ensure(t.same_state(&start), || {
            format!("{}: protocol twice is not the identity", large.name)
        })?;

        let mut again = start.clone();
        let retrace = ok(logical_h_protocol(small, large, &mut again))?;
        ensure(trace_to_jsonl(&trace) == trace_to_jsonl(&retrace), || {
            "trace not reproducible".into()
        })?;
    }
    Ok(())
}

fn gauge_fixing() -> Outcome {
    let l = ok(ColoredComplex::build_fractal(3, 1))?;
    let small = ok(CodeSpec::color_code(&l, 0, 0))?;
    let large = ok(CodeSpec::color_code(&l, 0, 1))?;
    for seed in [1, 2, 3] {
        run_protocol(&small, &large, seed)?;
        run_protocol(&fifteen::code_b(), &fifteen::code_a(), seed)?;
    }
    Ok("|0>->|+>, |+>->|0>, involution, on lattice and explicit pairs".into())
}

fn partial_order_catalog() -> Outcome {
    let entries = catalog(3);
    let mut stabilizer: Vec<(usize, usize)> = Vec::new();
    let mut subsystem = Vec::new();
    for e in &entries {
        match e.kind {
            CodeKind::Stabilizer => stabilizer.push((e.x, e.z)),
            CodeKind::Subsystem => subsystem.push((e.x, e.z)),
        }
    }
    stabilizer.sort_unstable();
    ensure(stabilizer == vec![(0, 1), (1, 0)], || {
        format!("stabilizer codes {stabilizer:?}")
    })?;
    ensure(subsystem == vec![(0, 0)], || {
        format!("subsystem codes {subsystem:?}")
    })?;
    let max = entries
        .iter()
        .find(|e| (e.x, e.z) == (0, 1))
        .and_then(|e| e.max_rn);
    ensure(max == Some(3), || format!("max R_n for (0,1) = {max:?}"))?;
    let l = ok(ColoredComplex::build_fractal(3, 1))?;
    let c00 = ok(CodeSpec::color_code(&l, 0, 0))?;
    let c01 = ok(CodeSpec::color_code(&l, 0, 1))?;
    ensure(ok(partial_order_leq(&c00, &c01))?, || {
        "CC_3(0,0) ≺ CC_3(0,1) not found".into()
    })?;
    ensure(!ok(partial_order_leq(&c01, &c00))?, || {
        "CC_3(0,1) ≺ CC_3(0,0) reported".into()
    })?;
    Ok("stabilizer {(1,0),(0,1)}, subsystem {(0,0)}, max R_n = 3".into())
}

fn fault_injection() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut lines = Vec::new();
    for (fault, needle) in [
        ("miscolor", "joins two vertices"),
        ("truncate-row", "stab_z[0]"),
        ("perturb-t", "qubits in T"),
    ] {
        let start = Instant::now();
        let out = dir.path().join(fault);
        let args = [
            "colorcode",
            "--quiet",
            "--out",
            out.to_str().unwrap(),
            "verify",
            "--d",
            "2",
            "--level",
            "2",
            "--x",
            "0",
            "--z",
            "0",
            "--n",
            "2",
            "--fault",
            fault,
        ];
        let code = colorcode::cli::run(args);
        ensure(code == 1, || format!("{fault}: exit code {code}"))?;
        let report = std::fs::read_to_string(out.join("report.json")).map_err(|e| e.to_string())?;
        let verdicts: Vec<Verdict> = serde_json::from_str(&report).map_err(|e| e.to_string())?;
        let witnessed = verdicts
            .iter()
            .any(|v| !v.pass && v.witnesses.iter().any(|w| w.contains(needle)));
        ensure(witnessed, || {
            format!("{fault}: no witness containing {needle:?}")
        })?;
        let elapsed = start.elapsed();
        ensure(elapsed < Duration::from_secs(1), || {
            format!("{fault}: took {elapsed:?}")
        })?;
        lines.push(fault);
    }
    Ok(format!("exit 1 with witnesses for {}", lines.join(", ")))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 fractal family counts", fractal_counts, 1),
        (
            "2 intersection numbers and T-gate oracle",
            intersection_numbers,
            1,
        ),
        ("3 QRM equivalence", qrm_equivalence, 5),
        ("4 code parameters", code_parameters, 60),
        ("5 lattice checks and commutation", lattice_suites, 60),
        ("6 transversal R_d", transversal_rd, 10),
        ("7 gauge-fixing protocol", gauge_fixing, 1),
        ("8 partial-order catalog", partial_order_catalog, 1),
        ("9 fault-injection negatives", fault_injection, 3),
    ];
    let mut failures = 0;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = result.and_then(|detail| {
            if elapsed > Duration::from_secs(limit) {
                Err(format!("{detail}; took {elapsed:.2?}, limit {limit}s"))
            } else {
                Ok(detail)
            }
        });
        match result {
            Ok(detail) => println!("PASS criterion {name} ({elapsed:.2?}): {detail}"),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {name} ({elapsed:.2?}): {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", 9 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
