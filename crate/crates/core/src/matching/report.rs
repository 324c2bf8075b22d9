use alloc::string::String;
use alloc::vec::Vec;

/// Outcome of a structural check, with a concrete witness per failure.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CheckReport {
    pub failures: Vec<Failure>,
    pub stats: Vec<LevelStat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub level: usize,
    /// Horn index, or `None` for boundary (and Cartesian face) conditions.
    pub index: Option<usize>,
    pub kind: FailureKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailureKind {
    /// A point of the matching object with no preimage.
    MissingFiller { tuple: Vec<usize>, base: Option<usize> },
    /// A point of the matching object with several preimages.
    NonUniqueFiller { tuple: Vec<usize>, base: Option<usize>, simplices: Vec<usize> },
    /// The matching map is not a cover of the site.
    NotCover { detail: String },
    /// The normalized complex of a simplicial abelian group is nonzero.
    NonzeroNormalized { group: String },
}

/// Size data for one matching map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelStat {
    pub level: usize,
    pub index: Option<usize>,
    pub source: usize,
    pub target: usize,
    pub min_fiber: usize,
    pub max_fiber: usize,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.failures.extend(other.failures);
        self.stats.extend(other.stats);
    }
}
