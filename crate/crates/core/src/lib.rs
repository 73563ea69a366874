//! Computational algebra for finite groupoids over exact fields.
//!
//! The crate provides, on top of exact linear algebra over the rationals or
//! a prime field:
//!
//! - validated table-driven finite groupoids, their morphisms, normal
//!   subgroupoids and quotients ([`groupoid`], [`morphism`]);
//! - groupoid-sets, bisets, translation groupoids, orbits and tensor
//!   products of bisets ([`action`]);
//! - linear representations with invariants, coinvariants, limits and
//!   hom-spaces ([`rep`]);
//! - the restriction, induction and co-induction functors along a morphism,
//!   together with both reciprocity adjunctions and the projection formula
//!   ([`functors`]);
//! - path algebras with enough orthogonal idempotents and a constructive
//!   decision procedure, with certificate, for Frobenius morphisms
//!   ([`frobenius`]);
//! - a textual bundle format and a command-line front end ([`bundle`],
//!   [`cli`]).
//!
//! Everything is exact: identities produced by the library are checked as
//! equalities of tables and matrices, never numerically.
//!
//! The `examples/` directory contains one runnable walkthrough per
//! capability; `cargo run --example frobenius_certificate` is a good entry
//! point.

pub mod action;
pub mod bundle;
pub mod cli;
pub mod exactlin;
pub mod frobenius;
pub mod functors;
pub mod groupoid;
pub mod morphism;
pub mod rep;
mod unionfind;

pub use exactlin::{Field, Matrix, Scalar, Subspace};
pub use groupoid::{ArrowId, FiniteGroupoid, GroupoidError, ObjectId, Side};
pub use morphism::{GroupoidMorphism, MorphismError, NormalSubgroupoid};
