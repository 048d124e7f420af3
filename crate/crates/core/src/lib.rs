//! Generic nominal subtyping built from a declared subclassing relation.
//!
//! Given a class table (a finite subclassing order with a set of generic
//! classes), this crate constructs the subtyping order between ground
//! parameterized types and the containment order between type arguments,
//! and decides subtyping, containment, type validity, and algebra/coalgebra
//! membership queries over them.
//!
//! The pieces:
//!
//! - [`poset`]: finite posets (elements + covers), order queries, transitive
//!   reduction, order embeddings.
//! - [`operators`]: the three poset constructors — wildcard arguments,
//!   interval arguments, and the partial poset product that pairs generic
//!   classes with arguments.
//! - [`typesys`]: the class-table source format, ground type expressions,
//!   canonical argument form, erasure and free types.
//! - [`construct`]: the iterated construction of depth-bounded subtyping
//!   approximations.
//! - [`judge`]: direct recursive decision procedures and exhaustive
//!   verification of the erasure adjunction.
//!
//! Heavy kernels (order-matrix construction, exhaustive scans) run on rayon
//! when the `parallel` feature is enabled; see [`parallel`].

pub mod construct;
pub mod judge;
pub mod operators;
pub mod parallel;
pub mod poset;
pub mod typesys;

pub use construct::SubtypingApprox;
pub use operators::{ArgPoset, Mode};
pub use poset::{OrderMap, Poset};
pub use typesys::{ClassTable, IntervalArg, TypeExpr};

#[cfg(test)]
pub(crate) mod fixtures {
    use crate::typesys::{parse_class_table, ClassTable};

    pub const H1: &str = "\
class String extends Object
class List<T> extends Object
class LinkedList<T> extends List<T>
";

    pub const H2: &str = "class Enum<T extends Enum<T>> extends Object\n";

    /// A generic class extending a non-generic one.
    pub const H3: &str = "\
class Base extends Object
class Box<T> extends Base
";

    pub fn h1() -> ClassTable {
        parse_class_table(H1).unwrap()
    }

    pub fn h2() -> ClassTable {
        parse_class_table(H2).unwrap()
    }

    pub fn h3() -> ClassTable {
        parse_class_table(H3).unwrap()
    }
}
