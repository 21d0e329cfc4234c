//! Vector tableaux for the exceptional group `G₂`: enumeration, the
//! relation spaces cutting out its irreducible representations, weight
//! multiplicities and branching to the `A₂` subgroup.

pub mod action;
pub mod branching;
pub mod config;
pub mod field;
pub mod formal;
pub mod relations;
pub mod reptheory;
pub mod tableau;
pub mod verify;
pub mod weights;
