//! Classical and quantum correlation measures, two-mode Gaussian discord, and
//! the work statistics of a sudden quench between coupled oscillators.
//!
//! The guide in `book/` walks through each module with runnable examples.

pub mod cli;
pub mod discord;
pub mod error;
pub mod gaussian;
pub mod io;
pub mod linalg;
pub mod measure;
pub mod optim;
pub mod prob;
pub mod qstate;
pub mod quench;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/entropy.md")]
    pub mod entropy {}
    #[doc = include_str!("../../../book/src/quantum-states.md")]
    pub mod quantum_states {}
    #[doc = include_str!("../../../book/src/measurement.md")]
    pub mod measurement {}
    #[doc = include_str!("../../../book/src/discord.md")]
    pub mod discord {}
    #[doc = include_str!("../../../book/src/gaussian.md")]
    pub mod gaussian {}
    #[doc = include_str!("../../../book/src/quench.md")]
    pub mod quench {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
