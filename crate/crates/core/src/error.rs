// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("simplex {0} is not an interior simplex of the lattice")]
    NotInterior(String),

    #[error("qubit adjacency graph is not bipartite: {0}")]
    NotBipartite(String),

    #[error("inconsistent code: {0}")]
    InconsistentCode(String),

    #[error("incompatible codes: {0}")]
    IncompatibleCodes(String),

    #[error("enumeration guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("gate is not Clifford: {0}")]
    NonClifford(String),

    #[error("inconsistent stabilizer generators: {0}")]
    InconsistentGenerators(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
