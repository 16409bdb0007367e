// SPDX-License-Identifier: Apache-2.0

//! Batch front end: `build`, `verify` and `simulate`.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage error,
//! 3 internal inconsistency. Outputs go to `--out`, else to
//! `$COLORCODE_OUT`, else to `./colorcode-out`. Identical arguments
//! produce byte-identical files.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::code::{fifteen, CodeSpec};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::qrm;
use crate::report::Verdict;
use crate::sim::{self, GaugeBasis, Logical, Tableau};
use crate::simplicial::{Bipartition, ColoredComplex};
use crate::transversal::{self, TransversalRnPlan};

pub const OUT_ENV: &str = "COLORCODE_OUT";
const DEFAULT_OUT: &str = "colorcode-out";

#[derive(Debug, Parser)]
#[command(name = "colorcode", version, about = "Build and verify color codes")]
pub struct Cli {
    /// Output directory (overrides $COLORCODE_OUT).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Suppress the human summary on stdout.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a lattice, its code bundle and check matrices.
    Build(BuildArgs),
    /// Run verifiers and write a JSON report.
    Verify(VerifyArgs),
    /// Run the logical Hadamard switching protocol.
    Simulate(SimulateArgs),
}

#[derive(Debug, Args)]
pub struct LatticeSource {
    /// Lattice dimension of the fractal family.
    #[arg(long, conflicts_with = "lattice")]
    pub d: Option<usize>,
    /// Fractal level.
    #[arg(long, conflicts_with = "lattice")]
    pub level: Option<usize>,
    /// Lattice JSON file.
    #[arg(long)]
    pub lattice: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub source: LatticeSource,
    #[arg(long)]
    pub x: usize,
    #[arg(long)]
    pub z: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExplicitCode {
    #[value(name = "c-a")]
    CA,
    #[value(name = "c-b")]
    CB,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TChoice {
    /// `T = ∅`.
    Empty,
    /// The lattice bipartition.
    Bipartition,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// Give vertex 0 the color of vertex 1.
    Miscolor,
    /// Drop the last qubit of the first Z stabilizer row.
    TruncateRow,
    /// Move qubit 0 to the other side of `T`.
    PerturbT,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: LatticeSource,
    #[arg(long, requires = "z")]
    pub x: Option<usize>,
    #[arg(long, requires = "x")]
    pub z: Option<usize>,
    /// Code bundle JSON file.
    #[arg(long, conflicts_with_all = ["x", "explicit"])]
    pub bundle: Option<PathBuf>,
    /// Built-in 15-qubit code.
    #[arg(long, value_enum, conflicts_with_all = ["x", "d", "lattice"])]
    pub explicit: Option<ExplicitCode>,
    /// Level of the transversal `R_n` to check.
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long, value_enum, default_value_t = TChoice::Bipartition)]
    pub t: TChoice,
    /// Certify QRM(m) against the level-1 fractal color code.
    #[arg(long)]
    pub qrm_equiv: Option<usize>,
    #[arg(long, value_enum)]
    pub fault: Option<Fault>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Pair {
    /// `CC_d(0,0)` and `CC_d(0,d-2)` on a fractal lattice.
    Lattice,
    /// The explicit 15-qubit `C_B` and `C_A`.
    Explicit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InputState {
    Zero,
    One,
    Plus,
    Minus,
}

impl InputState {
    fn logical(self) -> Logical {
        match self {
            InputState::Zero => Logical::Zero,
            InputState::One => Logical::One,
            InputState::Plus => Logical::Plus,
            InputState::Minus => Logical::Minus,
        }
    }

    fn after_hadamard(self) -> InputState {
        match self {
            InputState::Zero => InputState::Plus,
            InputState::One => InputState::Minus,
            InputState::Plus => InputState::Zero,
            InputState::Minus => InputState::One,
        }
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum, default_value_t = Pair::Lattice)]
    pub pair: Pair,
    #[arg(long, default_value_t = 3)]
    pub d: usize,
    #[arg(long, default_value_t = 1)]
    pub level: usize,
    /// Bundle of the self-dual code with the larger gauge group.
    #[arg(long, requires = "large")]
    pub small: Option<PathBuf>,
    /// Bundle of the code the protocol starts and ends in.
    #[arg(long, requires = "small")]
    pub large: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = InputState::Zero)]
    pub input: InputState,
    /// Measurement seed.
    #[arg(long)]
    pub seed: u64,
    /// Apply the protocol this many times.
    #[arg(long, default_value_t = 1)]
    pub rounds: usize,
}

/// Parses `args` (program name first) and runs; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Exit code for an error that aborted a run.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InconsistentCode(_) | Error::InconsistentGenerators(_) | Error::NoSolution(_) => 3,
        _ => 2,
    }
}

pub fn output_dir(flag: Option<&Path>) -> PathBuf {
    flag.map(Path::to_path_buf)
        .or_else(|| std::env::var_os(OUT_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT))
}

pub fn execute(cli: &Cli) -> Result<i32> {
    let out = output_dir(cli.out.as_deref());
    fs::create_dir_all(&out)?;
    match &cli.command {
        Command::Build(a) => cmd_build(a, &out, cli.quiet),
        Command::Verify(a) => cmd_verify(a, &out, cli.quiet),
        Command::Simulate(a) => cmd_simulate(a, &out, cli.quiet),
    }
}

fn load_lattice(
    source: &LatticeSource,
    unchecked: bool,
) -> Result<Option<(ColoredComplex, Option<usize>)>> {
    if let Some(path) = &source.lattice {
        let text = fs::read_to_string(path)?;
        let l = if unchecked {
            ColoredComplex::from_json_unchecked(&text)?
        } else {
            ColoredComplex::from_json(&text)?
        };
        return Ok(Some((l, None)));
    }
    match (source.d, source.level) {
        (Some(d), Some(level)) => Ok(Some((
            ColoredComplex::build_fractal(d, level)?,
            Some(level),
        ))),
        (None, None) => Ok(None),
        _ => Err(Error::InvalidParameters(
            "--d and --level go together".into(),
        )),
    }
}

fn write(out: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    let path = out.join(name);
    fs::write(&path, contents)?;
    Ok(path)
}

fn cmd_build(a: &BuildArgs, out: &Path, quiet: bool) -> Result<i32> {
    let (lattice, level) = load_lattice(&a.source, false)?
        .ok_or_else(|| Error::InvalidParameters("no lattice source".into()))?;
    let code = CodeSpec::color_code_with_level(&lattice, a.x, a.z, level)?;
    let mut written = vec![
        write(out, "lattice.json", &lattice.to_json())?,
        write(out, "code.json", &code.to_bundle_json())?,
    ];
    for (name, m) in [
        ("gauge_x", &code.gauge_x),
        ("gauge_z", &code.gauge_z),
        ("stab_x", &code.stab_x),
        ("stab_z", &code.stab_z),
    ] {
        written.push(write(out, &format!("{name}.txt"), &m.to_text())?);
    }
    if !quiet {
        println!("{}: {} qubits", code.name, code.n);
        for p in written {
            println!("wrote {}", p.display());
        }
    }
    Ok(0)
}

/// Colors vertex 0 like vertex 1, bypassing validation.
pub fn miscolored(lattice: &ColoredComplex) -> Result<ColoredComplex> {
    let mut colors: Vec<usize> = (0..lattice.num_vertices())
        .map(|v| lattice.color(v))
        .collect();
    colors[0] = colors[1];
    let boundary = (0..lattice.num_vertices())
        .map(|v| lattice.is_boundary_vertex(v))
        .collect();
    ColoredComplex::new_unchecked(lattice.dim(), colors, boundary, lattice.maximal().to_vec())
}

/// Removes the last qubit from the first Z stabilizer row.
pub fn truncate_stab_row(code: &CodeSpec) -> Result<CodeSpec> {
    let mut c = code.clone();
    let mut rows = c.stab_z.rows().to_vec();
    let first = rows
        .first_mut()
        .ok_or_else(|| Error::InvalidParameters("code has no Z stabilizer rows".into()))?;
    if let Some(last) = first.iter_ones().last() {
        first.set(last, false);
    }
    c.stab_z = BitMatrix::from_rows(c.n, rows)?;
    c.name = format!("{} [truncated stab_z[0]]", c.name);
    Ok(c)
}

fn verify_code(code: &CodeSpec, report: &mut Vec<Verdict>) -> Result<()> {
    report.push(code.verify_commutation());
    report.push(code.verify_stabilizer_is_center());
    let mut v = Verdict::new("logical_count", &code.name, json!({ "n": code.n }));
    match code.logical_qubit_count() {
        Ok(count) => {
            v.params =
                json!({ "n": code.n, "k": count.logical, "gauge_qubits": count.gauge_qubits });
            if count.logical != 1 {
                v.fail(format!("{} logical qubits, expected 1", count.logical));
            }
        }
        Err(e) => v.fail(e.to_string()),
    }
    report.push(v);
    Ok(())
}

fn verify_transversal(
    code: &CodeSpec,
    t: &Bipartition,
    level: u32,
    report: &mut Vec<Verdict>,
) -> Result<()> {
    report.push(transversal::check_generator_intersections(code, t, level)?);
    match transversal::check_gauge_balance(code, t, level) {
        Ok(v) => report.push(v),
        Err(Error::GuardExceeded(msg)) => {
            eprintln!("note: gauge-group enumeration skipped: {msg}");
            return Ok(());
        }
        Err(e) => return Err(e),
    }
    let plan = TransversalRnPlan::new(t.clone(), level)?;
    report.push(transversal::phase_oracle_rn(code, &plan)?.to_verdict(&code.name));
    Ok(())
}

fn cmd_verify(a: &VerifyArgs, out: &Path, quiet: bool) -> Result<i32> {
    let mut report: Vec<Verdict> = Vec::new();
    let lattice = load_lattice(&a.source, true)?;
    let mut lattice_ok = true;

    if let Some((l, _)) = &lattice {
        let l = if a.fault == Some(Fault::Miscolor) {
            miscolored(l)?
        } else {
            l.clone()
        };
        let verdicts = l.verify_lattice();
        lattice_ok = verdicts[0].pass;
        report.extend(verdicts);
        if lattice_ok {
            let t = l.bipartition_qubits()?;
            let t = if a.fault == Some(Fault::PerturbT) {
                t.toggled(0)
            } else {
                t
            };
            report.push(l.verify_bipartition(&t));
            report.push(transversal::verify_balanced_split(&l, &t));
        }
    }

    let mut code = match (&a.bundle, a.explicit, a.x.zip(a.z)) {
        (Some(path), _, _) => Some(CodeSpec::from_bundle_json(&fs::read_to_string(path)?)?),
        (None, Some(ExplicitCode::CA), _) => Some(fifteen::code_a()),
        (None, Some(ExplicitCode::CB), _) => Some(fifteen::code_b()),
        (None, None, Some((x, z))) => match &lattice {
            Some((l, level)) if lattice_ok => {
                Some(CodeSpec::color_code_with_level(l, x, z, *level)?)
            }
            Some(_) => {
                let mut v = Verdict::new("code_construction", "lattice", json!({ "x": x, "z": z }));
                v.fail("lattice conditions fail; code not built");
                report.push(v);
                None
            }
            None => {
                return Err(Error::InvalidParameters(
                    "--x/--z need a lattice source".into(),
                ))
            }
        },
        _ => None,
    };
    if a.fault == Some(Fault::TruncateRow) {
        code = code.as_ref().map(truncate_stab_row).transpose()?;
    }

    if let Some(code) = &code {
        verify_code(code, &mut report)?;
        if let Some(level) = a.n {
            let t = match (a.t, &lattice) {
                (TChoice::Bipartition, Some((l, _))) if lattice_ok && l.num_qubits() == code.n => {
                    l.bipartition_qubits()?
                }
                (TChoice::Bipartition, _) => {
                    return Err(Error::InvalidParameters(
                        "bipartition T needs a matching lattice source; pass --t empty otherwise"
                            .into(),
                    ))
                }
                (TChoice::Empty, _) => Bipartition::empty_t(code.n),
            };
            let t = if a.fault == Some(Fault::PerturbT) {
                t.toggled(0)
            } else {
                t
            };
            verify_transversal(code, &t, level, &mut report)?;
        }
    }

    if let Some(m) = a.qrm_equiv {
        let cert = qrm::certify_equivalence(m)?;
        write(
            out,
            &format!("qrm{m}_permutation.json"),
            &serde_json::to_string_pretty(&json!({ "m": m, "permutation": cert.permutation }))?,
        )?;
        report.push(cert.verdict);
        if m == 4 {
            report.push(qrm::certify_fifteen()?);
        }
    }

    if report.is_empty() {
        return Err(Error::InvalidParameters("nothing to verify".into()));
    }
    let path = write(
        out,
        "report.json",
        &(serde_json::to_string_pretty(&report)? + "\n"),
    )?;
    let pass = report.iter().all(|v| v.pass);
    if !quiet {
        for v in &report {
            println!("{}", v.summary());
        }
        println!("wrote {}", path.display());
    }
    Ok(if pass { 0 } else { 1 })
}

fn logical_label(code: &CodeSpec, t: &Tableau) -> &'static str {
    match (
        t.expectation(&code.logical_z),
        t.expectation(&code.logical_x),
    ) {
        (1, _) => "|0>",
        (-1, _) => "|1>",
        (_, 1) => "|+>",
        (_, -1) => "|->",
        _ => "mixed",
    }
}

fn label_of(s: InputState) -> &'static str {
    match s {
        InputState::Zero => "|0>",
        InputState::One => "|1>",
        InputState::Plus => "|+>",
        InputState::Minus => "|->",
    }
}

fn simulation_pair(a: &SimulateArgs) -> Result<(CodeSpec, CodeSpec)> {
    if let (Some(small), Some(large)) = (&a.small, &a.large) {
        return Ok((
            CodeSpec::from_bundle_json(&fs::read_to_string(small)?)?,
            CodeSpec::from_bundle_json(&fs::read_to_string(large)?)?,
        ));
    }
    Ok(match a.pair {
        Pair::Explicit => (fifteen::code_b(), fifteen::code_a()),
        Pair::Lattice => {
            if a.d < 2 {
                return Err(Error::InvalidParameters("--d must be at least 2".into()));
            }
            let l = ColoredComplex::build_fractal(a.d, a.level)?;
            (
                CodeSpec::color_code_with_level(&l, 0, 0, Some(a.level))?,
                CodeSpec::color_code_with_level(&l, 0, a.d - 2, Some(a.level))?,
            )
        }
    })
}

fn cmd_simulate(a: &SimulateArgs, out: &Path, quiet: bool) -> Result<i32> {
    let (small, large) = simulation_pair(a)?;
    let mut t = sim::prepare_codeword(&large, GaugeBasis::GZ, a.input.logical(), a.seed)?;
    let mut trace = Vec::new();
    for _ in 0..a.rounds {
        for mut r in sim::logical_h_protocol(&small, &large, &mut t)? {
            r.step = trace.len();
            trace.push(r);
        }
    }
    let expected = if a.rounds % 2 == 1 {
        a.input.after_hadamard()
    } else {
        a.input
    };
    let mut stabilizers =
        Verdict::new("target_stabilizers", &large.name, json!({ "seed": a.seed }));
    for (i, g) in large.stabilizer_words().iter().enumerate() {
        stabilizers.bump("generators");
        if t.stabilizer_sign(g) != Some(false) {
            stabilizers.fail(format!("stabilizer {i} not at +1"));
        }
    }
    let observed = logical_label(&large, &t);
    let mut logical = Verdict::new(
        "logical_state",
        &large.name,
        json!({ "input": label_of(a.input), "expected": label_of(expected), "observed": observed, "rounds": a.rounds }),
    );
    if observed != label_of(expected) {
        logical.fail(format!(
            "observed {observed}, expected {}",
            label_of(expected)
        ));
    }
    let report = vec![stabilizers, logical];
    write(out, "trace.jsonl", &sim::trace_to_jsonl(&trace))?;
    let path = write(
        out,
        "final_state.json",
        &(serde_json::to_string_pretty(&report)? + "\n"),
    )?;
    let pass = report.iter().all(|v| v.pass);
    if !quiet {
        for v in &report {
            println!("{}", v.summary());
        }
        println!("final logical state {observed}");
        println!("wrote {}", path.display());
    }
    Ok(if pass { 0 } else { 1 })
}
