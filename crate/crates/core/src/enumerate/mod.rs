//! Isomorph-free enumeration, canonical forms, graph6 and the census.

mod augment;
mod canon;
mod census;
mod graph6;

pub use augment::{enumerate_spaces, for_each_batch, EnumerateError, SpaceStream, ENUMERATION_BOUND};
pub use canon::{canonical_form, canonical_labeling, CanonicalForm, CanonicalLabeling, Canonizer};
pub use census::{
    census_tally, count_census, count_labeled_rank2_l1, count_labeled_rank2_l1_brute,
    par_fold_spaces, tally_range, verify_table, CensusFilter, CensusTally, CountError, CountsRow,
    Mismatch, Predicate, TableId, TableReport, TableRow, BRUTE_COUNT_LIMIT, MATCHING_COUNT_LIMIT,
};
pub use graph6::{parse_graph6, write_graph6, Graph6Error};
