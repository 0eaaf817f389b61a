//! Finite alphabet iterative decoders.
//!
//! Messages are integers `-s..=s`; only their sign and order matter. The
//! check update is sign-product/min-magnitude, the variable update is a
//! lookup table indexed by the two extrinsic check messages.

mod builtin;
mod decoder;
mod rule;

pub use builtin::{builtin, builtin_rules, RULE_FILES};
pub use decoder::{DecodeError, DecodeOutcome, Decoder, DecoderConfig, TieBreak};
pub use rule::{phi_c, validate_rule, ChannelValue, FaidRule, MessageLevel, RuleError, ValidationReport};
