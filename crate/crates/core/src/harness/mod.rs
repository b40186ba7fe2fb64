//! Global vector field oracle, verification suites and the hypothesis
//! gate.

mod ring;
pub mod series;
pub mod oracle;
pub mod gate;
pub mod suite;

pub use gate::{hypothesis_gate, GateCheck, GateReport, Theorem};
pub use oracle::{
    certify, oracle_global_fields, solve_degree, CertStatus, Certificate, DegreeSolution, OracleError,
    OracleOutcome, OracleProblem, Stability,
};

pub use suite::{run_suite, RunOptions, Status, SuiteConfig, SuiteError, SuiteReport};
