//! Exact combinatorics for the homology of the genus-3 Torelli group.
//!
//! The crate is organised bottom-up:
//!
//! * [`lattice`]: the symplectic lattice `Z^6`, Smith/Hermite normal forms,
//!   symplectic subgroups and splittings;
//! * [`surface`]: decomposition graphs of multicurves and the type census;
//! * [`cycles`]: basic 1-cycles, cells `P_M`, the potential `Ψ` and the
//!   ladder complex;
//! * [`relcycles`]: matching supports of relative cycles and splitting labels;
//! * [`specseq`]: truncated `E^1` pages and their differentials;
//! * [`sclasses`]: the s-class module, ν-evaluations and the lantern check;
//! * [`report`]: JSON reports backing the command line tool.

pub mod cycles;
pub mod error;
pub mod lattice;
pub mod relcycles;
pub mod report;
pub mod sclasses;
pub mod specseq;
pub mod surface;

pub use error::{Error, Result};
pub use lattice::{HVector, Splitting, SymplecticSubgroup};
