pub mod coeff;
pub mod counters;
pub mod error;
pub mod geobucket;
pub mod monomial;
pub mod poly;

pub use coeff::{Coefficient, Field};
pub use counters::{measure, CounterScope, OpCounters};
pub use error::{PolyError, Result};
pub use geobucket::{Geobucket, LcStrategy};
pub use monomial::{ExponentVector, MonomialOrder, VariableSet};
pub use poly::{Polynomial, Term};
pub mod heap;
pub mod heapmul;
pub mod verifier;

pub use heapmul::{mul_heap, mul_heap_gb, Direction, GbRoute};
pub use verifier::{combine, verify, verify_naive, Certificate, Verdict, VerifyResult};
pub mod recursive;

pub use recursive::{
    to_distributed, to_recursive, univ_divide, univ_pseudo_divide, MainVar, RecursionMode, RecursivePoly,
};
pub mod textio;

pub use textio::{parse_certificate, parse_poly, print_poly, read_naive, read_sorted, TextError};
pub mod cli;
