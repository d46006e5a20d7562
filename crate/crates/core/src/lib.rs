//! Exact invariants of Milnor open books on negative-definite plumbing graphs.
//!
//! A plumbing graph is a tree of rational curves `E_i` weighted by their
//! self-intersections. After validation (tree shape, negative definite
//! intersection form) it becomes a [`Lattice`] of integral cycles on which
//! the open-book invariants, the fundamental cycle and the canonical contact
//! invariants are computed in exact arithmetic.
//!
//! ```
//! use plumbing::{PlumbingGraph, open_book};
//!
//! let lattice = PlumbingGraph::parse("vertex a -2").unwrap().validate().unwrap();
//! let contact = open_book::contact_invariants(&lattice);
//! assert_eq!((contact.sg, contact.bn, contact.norm), (0, 2, 0));
//! ```

pub mod cone;
pub mod cycle;
pub mod graph;
pub mod lattice;
pub mod linalg;
pub mod open_book;
pub mod verify;

pub use cone::{compute_zmin, enumerate_cone, genus_stratum, is_antinef, ConeEnumeration};
pub use cycle::{Cycle, CycleError, RationalCycle};
pub use graph::{
    Definiteness, FailingMinor, IntersectionMatrix, ParseError, PlumbingGraph, ValidationError,
};
pub use lattice::Lattice;
pub use open_book::{ContactReport, OpenBookReport};
pub use verify::{PropertyRecord, VerificationReport};
