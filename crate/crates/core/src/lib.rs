//! Exact combinatorics for deciding which members of an Arthur packet of a
//! p-adic symplectic or split odd orthogonal group are nonzero.
//!
//! The entry points are [`engine::Engine`] for single decisions and
//! [`packets::enumerate`] for whole packets.

pub mod characters;
pub mod cli;
pub mod engine;
pub mod error;
pub mod halfint;
pub mod io;
pub mod oracle;
pub mod packets;
pub mod reductions;
pub mod segments;
pub mod stack;
pub mod transforms;
pub mod types;

pub use engine::{Engine, Verdict};
pub use error::{Error, Result};
pub use halfint::HalfInt;
pub use packets::{enumerate, packet_size};
pub use types::{
    AdmissibleOrder, GroupKind, JordanBlock, Parameter, Parity, RhoLabel, Sign, SignedData,
};
