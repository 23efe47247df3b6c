//! Finite ring analysis: element classes, substructure families, lattices
//! and ring-class predicates in the Smarandache style, over rings small
//! enough to enumerate.

pub mod audit;
pub mod bitset;
pub mod descriptor;
pub mod elements;
pub mod error;
pub mod hyperring;
pub mod lattice;
pub mod ledger;
pub mod notation;
pub mod predicates;
pub mod report;
pub mod ring;
pub mod structure;
pub mod substructures;

pub use bitset::ElementSet;
pub use descriptor::RingDescriptor;
pub use error::{Error, Result};
pub use ring::{Elem, Limits, Ring};
