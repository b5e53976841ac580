//! Verifiable voting schemes and the security games that break or confirm
//! them.
//!
//! The crate is layered bottom-up: [`group`] arithmetic, exponential
//! [`elgamal`], [`sigma`] protocols, the election-scheme interface in
//! [`scheme`], the concrete schemes [`helios`] and [`mixnet`], the games in
//! [`games`] and the attack strategies in [`adversaries`]. [`board`] handles
//! persistence and offline audit of transcripts.

pub mod codec;
pub mod elgamal;
pub mod group;
mod gmp;
mod mont;
pub mod rng;
pub mod sigma;
pub mod scheme;
pub mod helios;
pub mod mixnet;
pub mod games;
pub mod kind;
pub mod adversaries;
pub mod board;
