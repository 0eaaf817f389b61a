//! Finite alphabet iterative decoders (FAIDs) for column-weight-3 LDPC codes
//! on the binary symmetric channel, and the tooling to build decoder
//! diversity sets from a code's trapping-set structure.

pub mod codes;
pub mod diversity;
pub mod errorsets;
pub mod faid;
pub mod harness;
pub mod topology;
