//! Exact-arithmetic analysis of quotients of a product of two elliptic curves
//! by finite groups of sign-and-translation automorphisms.
//!
//! An elliptic curve is modelled by its torsion group `(Q/Z)^2`; an
//! automorphism `x -> ±x + t` is a [`torus::CurveAuto`], and a pair of such
//! maps acting diagonally on the product `D1 x D2` is a
//! [`torus::ProductAuto`].  Everything downstream of that is exact integer
//! and rational arithmetic:
//!
//! * [`group`] — closure of a finite set of product automorphisms;
//! * [`quotient`] — fixed-point census, node detection, Hodge and Euler
//!   invariants, surface-type identification of the quotient;
//! * [`fibration`] — the two induced elliptic pencils, their multiple
//!   fibres, node/fibre incidence and the intersection numbers `f1·f2`,
//!   `A1·A2`;
//! * [`codes`] — GF(2) codes of even node sets and weight enumeration;
//! * [`lattice`] — Gram discriminants, the `2^k = 2^(2 dim) * disc`
//!   relation and Galois-cover invariant formulas;
//! * [`classify`] — normalization up to origin change and factor swap,
//!   matching against the two quotient templates, and the bicanonical
//!   degree arithmetic;
//! * [`census`] — exhaustive enumeration of small actions and their
//!   verdicts.

pub mod census;
pub mod classify;
pub mod codes;
mod error;
pub mod examples;
pub mod fibration;
pub mod group;
pub mod lattice;
pub mod pipeline;
pub mod quotient;
pub mod rat;
pub mod torus;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
