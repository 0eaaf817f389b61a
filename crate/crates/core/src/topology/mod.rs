//! Elementary trapping sets: exhaustive enumeration, cycle inventories,
//! type labels and reduction to symmetry-orbit representatives.

mod cycles;
mod enumerate;
mod reduce;
mod ts;

pub use cycles::{cycle_inventory, type_label, CeilingExceeded, CycleInventory, DEFAULT_CYCLE_CEILING};
pub use enumerate::{
    ab_histogram, classify, connected_sets, enumerate_trapping_sets, EnumConfig, EnumError, DEFAULT_MAX_A_CEILING,
};
pub use reduce::{ab_summary, reduce_by_homomorphism, TsClass};
pub use ts::{ab_parameters, induced_check_degrees, parse_ts_list, write_ts_list, TrappingSet, TsFileError, TsType};
