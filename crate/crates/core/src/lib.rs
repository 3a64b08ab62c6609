//! Exact Kummer theory for cyclic extensions of rational function fields.
//!
//! The setting: a finite field `k = GF(r^m)` containing a primitive `p^l`-th
//! root of unity `zeta`, the rational function field `E = k(t)`, and the
//! cyclic degree-`p^l` extension `E / F` with `F = k(t^{p^l})` and Galois
//! group `G` generated by `sigma: t -> zeta * t`.
//!
//! The crate computes, in exact arithmetic:
//!
//! * the group `E^x / E^{xp}` of Kummer classes with coordinates over `F_p`
//!   (factored rational functions plus a unit character), and the nilpotent
//!   operator `x = sigma - 1` acting on it ([`ratfield`]);
//! * finitely generated modules over `F_p[G] ~ F_p[x]/(x^q)`, `q = p^l`:
//!   span closures, Jordan types, cyclic decompositions and twisted duals
//!   ([`fpgmod`]);
//! * the Kummer extension `E_B = E(B^{1/p})` as a formal radical extension,
//!   its Galois group `N_B` with the `G`-action induced by conjugation with
//!   a lift of `sigma`, the Kummer pairing, and an end-to-end verification
//!   that `B/E^{xp}` and `N_B` carry the same `F_p[G]`-module structure
//!   ([`kummer`]).
//!
//! All values are immutable and all operations are pure functions of their
//! inputs; randomized subroutines (polynomial factorization, perturbation
//! checks) take an explicit seed. The crate is `no_std`-compatible with
//! `alloc`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod error;
pub mod ffield;
pub mod fpgmod;
pub mod kummer;
pub mod linalg;
pub mod oracle;
pub mod polyarith;
pub mod ratfield;

pub use error::{Error, Result};
pub use ffield::{FieldElement, FieldSpec};
pub use fpgmod::{ClassModule, GroupAlgebraElement, JordanType, ModulePresentation};
pub use kummer::{
    GaloisAutomorphism, LiftData, RadicalExtension, VerificationReport, verify_relative_kummer,
};
pub use polyarith::{Factorization, Polynomial};
pub use ratfield::{parse_ratfunc, FactoredElement, GaloisContext, KummerClass};
