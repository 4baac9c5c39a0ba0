//! Exact computation of the Grothendieck group K₀ of a toric Deligne–Mumford
//! stack from its stacky fan.
//!
//! The pipeline: a [`stackyfan::StackyFan`] is validated, its derived Gale
//! dual is computed, and [`ktheory::k0_structure`] builds the ring
//! presentation, runs a strong Gröbner basis over ℤ and reads off the
//! abelian-group structure. [`simplicial`] checks shellability and the
//! Cohen–Macaulay property of the underlying complex; [`homcomplex`] provides
//! chain complexes, mapping cones and Koszul complexes over finite free
//! ℤ-modules.

pub mod exactlinalg;
pub mod homcomplex;
pub mod ktheory;
pub mod ringpres;
pub mod simplicial;
pub mod stackyfan;
