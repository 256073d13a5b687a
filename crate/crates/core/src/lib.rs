//! Iteration maps for functions p(z)e^{q(z)}: construction as exact rational
//! maps, fixed and critical point analysis, basin dynamics, and numerical
//! verification of the quantitative behavior of the family z e^{z^n}.
//!
//! The crate is no_std + alloc; everything IO-shaped lives in the companion
//! CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod dynamics;
pub mod fixed;
pub mod maps;
pub mod poly;
pub mod rational;
pub mod roots;
pub mod tol;
pub mod verify;
