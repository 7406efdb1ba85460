//! Exact stack numbers through a SAT encoding.

pub mod brute;
pub mod cnf;
pub mod dimacs;
pub mod exact;
pub mod solver;

pub use brute::brute_force_stack_number;
pub use cnf::{encode, encode_with, CnfFormula, EncodeError, EncodeOptions, VarKind};
pub use dimacs::{export_dimacs, import_model, parse_dimacs, write_model, DimacsError};
pub use exact::{
    decode, solve, stack_number, stack_number_fixed_order, verify_at_least, Backend, SolveError,
    SolveResult, SolveStatus, SolverConfig, StackNumber, Verdict,
};
pub use solver::{solve_cnf, SatOutcome};
