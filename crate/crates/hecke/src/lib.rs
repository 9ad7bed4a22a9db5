//! Exact symbolic computation in extended affine Hecke algebras built from
//! root data.
//!
//! The crate provides, over the ring `A = Z[v, v^-1]`:
//!
//! - root data with weight-lattice combinatorics ([`root_datum`]),
//! - finite Weyl groups with Bruhat order and double-coset calculus
//!   ([`weyl`]),
//! - the extended affine Weyl group with the Iwahori-Matsumoto length
//!   ([`ext_affine`]),
//! - the extended affine Hecke algebra with standard and Bernstein bases and
//!   the bar involution ([`hecke_alg`]),
//! - Kazhdan-Lusztig polynomials and the bases `C_x`, `C'_x` ([`kl`]),
//! - the parabolic double-coset modules `C_{w_I} H C_{w_J}` with their
//!   standard, Bernstein and Kazhdan-Lusztig bases, the straightening
//!   algorithm, and the `v -> 1` specialization ([`coset_module`]),
//! - an expression grammar and a property-check suite backing the `hecke`
//!   command-line tool ([`expr`], [`verify`]).
//!
//! See the crate examples for runnable demonstrations of each capability.

pub mod error;
pub mod laurent;
pub mod root_datum;
pub mod util;
pub mod weyl;
pub mod ext_affine;
pub mod hecke_alg;
pub mod kl;
pub mod coset_module;
pub mod expr;
pub mod verify;

pub use error::{Error, Result};
pub use coset_module::{c_w_subset, CosetIndex, DoubleCosetModule, HijElt, SignedGroupAlgebraElt};
pub use ext_affine::{enumerate_window, enumerate_window_bounded, gamma_elements, minimal_length_rep, AffLetter, AffineWord, ExtAffElt};
pub use hecke_alg::{BernsteinForm, HeckeAlgebra, HeckeElt, ThetaPastTs};
pub use kl::{c_prime_by_bar_fixed_point, KlTable};
pub use laurent::LaurentPoly;
pub use root_datum::{Coweight, RootDatum, SimpleSubset, Weight};
pub use weyl::{WeylElt, WeylGroup};
