//! Exact bookkeeping for conical resolutions of discriminants: quotient
//! cohomology rings with Chern classes, Borel-Moore homology with Tate
//! twists, bigraded spectral sequences and mixed Hodge polynomials.

pub mod bmspace;
pub mod casebook;
pub mod cohring;
pub mod hodgepoly;
pub mod linalg;
pub mod specseq;
pub mod strata;
pub mod twisted;

pub use twisted::{TwistedDims, TwistedEntry};
