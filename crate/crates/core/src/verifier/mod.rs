//! Two independent verification engines (group-ring convolution and the
//! character criterion), linking checks, parameter calculators and searches.

mod character;
mod checks;
pub mod groupring;
pub mod params;
mod report;
mod sampled;
mod search;

pub use character::{nontrivial_omegas, regular_by_classes, require_complete};
pub use checks::{
    as_central, check_ds, check_ds_elements, check_ds_in, check_linking, check_pds, check_pds_in, groupring_ds,
    groupring_pds,
};
pub use groupring::{convolve, convolve_ddinv, set_indices, ElementaryAbelian, FiniteGroup, GroupRingVec};
pub use params::{DsParams, LatinSquare, LinkingParams, PdsParams};
pub use report::{
    Engine, EngineOutcome, Method, Params, PdsSummary, VerifyOptions, VerifyReport, Witness, WitnessKind, Witnesses,
    WITNESS_CAP,
};
pub use sampled::{
    cross_validate, cross_validate_exhaustive, sampled_char_check, sampled_regularity, CrossValidation, MAX_CROSS_ORDER,
};
pub use search::{search_central_ds, search_central_pds, SearchMode, SearchOutcome, MAX_BRUTE_CLASSES, MAX_PRUNED_CLASSES};

#[cfg(test)]
mod tests;
