//! Shortest-distinguishing-word distances between regular expressions and
//! certificates for them in a quantitative equational proof system.

pub mod automaton;
pub mod derivatives;
pub mod metric;
pub mod oracle;
pub mod proof;
pub mod random;
pub mod scalar;
pub mod syntax;

pub use automaton::{build, QuotientAutomaton, StateId};
pub use derivatives::{member, output, step, Word};
pub use metric::{distance, witness, Config, ExponentValue, MetricTable, ValueTable};
pub use scalar::{Rational, Scalar};
pub use syntax::{canonicalize, Alphabet, CanonicalForm, Regex};

/// General pseudometric table with exact rational values.
pub type RationalTable = ValueTable<Rational>;
/// General pseudometric table with floating-point values.
pub type FloatTable = ValueTable<f64>;
