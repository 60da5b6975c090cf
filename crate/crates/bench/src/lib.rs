//! Shared inputs for the benchmarks.

use corrtest_core::GroupSummary;

/// The temporal-region pair from the laterality example.
pub fn laterality_pair() -> (GroupSummary, GroupSummary) {
    (
        GroupSummary::from_correlation(14, -0.340).unwrap(),
        GroupSummary::from_correlation(14, 0.812).unwrap(),
    )
}

/// Unequal groups with moderately different correlations.
pub fn unbalanced_pair() -> (GroupSummary, GroupSummary) {
    (
        GroupSummary::from_correlation(5, 0.05).unwrap(),
        GroupSummary::from_correlation(25, 0.75).unwrap(),
    )
}
