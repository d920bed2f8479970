//! Finite rings with unity, projective lines over them, and the combinatorics
//! of their distant graphs: radical lifting, tensor-product clique partitions,
//! and the Grassmannian model with its spreads and parallelisms.
//!
//! The crate is `no_std` (with `alloc`); all IO, serialization, and the
//! command-line front end live in the companion `ringline` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bitset;
pub mod catalog;
pub mod cover;
pub mod graph;
pub mod grassmann;
pub mod oracle;
pub mod pline;
pub mod ring;
