//! Combinatorial invariants of Legendrian links presented by front diagrams.
//!
//! The crate works entirely over Z2 and never touches smooth data. A front is
//! an event word (left cusps, right cusps, crossings read left to right); from
//! it we compute classical invariants, enumerate normal rulings and the ruling
//! polynomial, build the splashed Chekanov-Eliashberg DGA, enumerate
//! augmentations and their linearized homology, and translate back and forth
//! between rulings, augmentations, and combinatorial Morse movies (the
//! discrete shadow of a generating family), checking the expected equivalences
//! and duality relations on the way.

pub mod augment;
pub mod front;
pub mod movie;
pub mod ruling;
pub mod splash;
pub mod z2;
