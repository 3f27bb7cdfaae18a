//! Exact-arithmetic toolkit for centrally symmetric polytopes built from the
//! boundary maps of simplicial complexes: homology with torsion, Smith normal
//! form, facet enumeration, Ehrhart/Hilbert data, toric Gröbner bases and the
//! model polytopes of pseudomanifolds.

pub mod circuits;
pub mod complex;
pub mod enumerate;
pub mod equivalence;
pub mod error;
pub mod fixtures;
pub mod groebner;
pub mod hull;
pub mod invariants;
pub mod matrix;
pub mod polytope;
pub mod snf;
pub mod sumset;
pub mod tu;
pub mod util;

pub use error::Error;
