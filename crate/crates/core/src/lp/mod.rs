//! Linear relaxations and the simplex solver behind them.

pub mod relaxation;
pub mod scalar;
pub mod simplex;
pub mod solution;

use thiserror::Error;

pub use relaxation::{build_relaxation, enumerate_violating_sets, LinearProgram, RelaxationSpec, Row, RowKind};
pub use scalar::Scalar;
pub use solution::{sanitize_solution, solve_lp, solve_lp_exact, ExactSolution, FractionalSolution};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LpError {
    #[error("relaxation is infeasible: no orientation with makespan at most the target exists")]
    Infeasible,
    #[error("numerical failure in the simplex solver: {0}")]
    Numerical(#[from] simplex::SimplexError),
    #[error("{0} Set rows exceed the enumeration guard")]
    TooManySetRows(usize),
    #[error("Set constraints need k = 0 or k >= 2, got {0}")]
    BadSpec(usize),
}
