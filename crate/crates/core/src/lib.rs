//! Exact-arithmetic library for the admissible-level sl3 minimal models
//! M(u,v): classification of irreducible positive-energy weight modules,
//! canonical module labels under the automorphism groupoid (Weyl, Dynkin,
//! conjugation, spectral flow), degenerations of the (semi)relaxed families,
//! and, for M(3,2), standard characters, modular S-data and the full
//! Grothendieck fusion ring via a delta-reduced standard Verlinde formula.
//!
//! The fusion ring shipped here is the conjectural one: the standard Verlinde
//! formula is taken as the definition of the Grothendieck multiplicities, and
//! the library's role is to compute it exactly and cross-check it against the
//! closed-form rules.

pub mod admissible;
pub mod degen;
pub mod fusion32;
pub mod modlabel;
pub mod modularchar;
pub mod rootdata;
pub mod torusfourier;
pub mod verify;
pub mod verlinde;
