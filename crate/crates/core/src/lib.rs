//! Word problem, isomorphism classification and homomorphism synthesis for
//! the one-relator groups
//!
//! ```text
//! G(l,m;k) = < a, t | t^-1 a^-k t a^l t^-1 a^k t = a^m >
//! ```
//!
//! viewed as HNN extensions (stable letter `t`, `b = t^-1 a^k t`) of the
//! Baumslag–Solitar groups `H(l,m) = < a, b | b^-1 a^l b = a^m >`.

pub mod arith;
pub mod baumslag;
pub mod brunner;
pub mod classify;
pub mod cli;
pub mod homsynth;
mod json;
pub mod words;
