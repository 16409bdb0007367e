// SPDX-License-Identifier: Apache-2.0

//! Construction and exact verification of d-dimensional color codes.
//!
//! The crate builds (d+1)-colorable simplicial lattices, derives the
//! gauge and stabilizer groups of the color codes `CC_L(x, z)` defined on
//! them, and checks their properties with exact GF(2) and modular integer
//! arithmetic:
//!
//! - [`gf2`]: packed bit vectors and matrices (rank, kernel, solve).
//! - [`simplicial`]: colored complexes, the fractal lattice family and the
//!   combinatorial lattice checks.
//! - [`code`]: CSS subsystem codes, code parameters and the partial order.
//! - [`transversal`]: transversal `R_n`, `H` and `CNOT` certification.
//! - [`sim`]: a stabilizer tableau with gauge fixing and code switching.
//! - [`qrm`]: the quantum Reed-Muller family and its color-code form.
//!
//! No floating point is used anywhere.

pub mod cli;
pub mod code;
pub mod error;
pub mod gf2;
pub mod pauli;
pub mod qrm;
pub mod report;
pub mod sim;
pub mod simplicial;
pub mod transversal;

pub use code::{CodeSpec, Provenance};
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector};
pub use pauli::PauliWord;
pub use report::Verdict;
pub use simplicial::{Bipartition, ColorSet, ColoredComplex, Simplex};
