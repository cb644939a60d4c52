//! Graded Betti numbers of the residue field and Koszulness verdicts.

mod betti;
mod verdict;

pub use betti::{betti_table, graded_basis, lift_table, transfer_check, BettiTable, GradedAlgebraBasis};
pub use verdict::{koszul_verdict, ring_table, BettiMode, KoszulConfig, KoszulStatus, KoszulVerdict};

#[cfg(test)]
mod tests;
