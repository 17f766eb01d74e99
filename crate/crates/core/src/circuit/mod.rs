//! Circuit representation, builders and dense simulation.

pub mod builders;
pub mod gadgets;
pub mod ir;
pub mod statevector;

pub use builders::{build_decoder, build_encoder, build_full_ec_circuit, BlockKind, EcOptions, RoundOrder};
pub use gadgets::{build_gadget, Code, GadgetName, GadgetSpec};
pub use ir::{Basis, Circuit, Gate, GateKind, GateLabel, Role};
pub use statevector::{simulate, StateVector};
