//! Self-adjoint extensions of the momentum and kinetic-energy operators on
//! the line, the half-line and a finite box, with the numerics needed to
//! compute their spectra.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod box_spectrum;
pub mod cli;
pub mod error;
pub mod extensions;
pub mod halfline;
pub mod matrix;
pub mod momentum;
pub mod numerics;
pub mod wells;

pub use error::{Error, Result};
