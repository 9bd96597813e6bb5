use serde::{Deserialize, Serialize};

/// Resource bounds shared by the enumeration paths. Every expensive
/// operation checks the relevant bound up front and fails with
/// [`Error::BoundExceeded`](crate::Error::BoundExceeded) instead of sampling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Bounds {
    /// Largest group whose elements may be iterated.
    pub elements: u64,
    /// Largest single conjugacy class that may be stored explicitly.
    pub class_elements: u64,
    /// Largest class for all-pairs edge enumeration in class graphs.
    pub graph_all_pairs: usize,
    /// Largest class for centralizer-pruned edge enumeration.
    pub graph_pruned: usize,
    /// Largest coset-action index.
    pub coset_index: u64,
    /// Largest `|Ω|` accepted by exact relational-complexity computation.
    pub exhaustive_points: usize,
    /// Node budget for the fixed-set search used by the exhaustive
    /// binariness decision on larger actions.
    pub exhaustive_nodes: u64,
    /// Largest `|Ω|` for that fixed-set search.
    pub exhaustive_index: usize,
    /// Largest group handled by subgroup enumeration.
    pub subgroup_order: u64,
    /// Conjugator transversal cap for the triple search.
    pub triple_transversal: usize,
    /// Element pairs per conjugate pair in the triple search.
    pub triple_pairs: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            elements: 1_000_000,
            class_elements: 100_000,
            graph_all_pairs: 10_000,
            graph_pruned: 100_000,
            coset_index: 10_000,
            exhaustive_points: 12,
            exhaustive_nodes: 500_000,
            exhaustive_index: 2000,
            subgroup_order: 1000,
            triple_transversal: 2000,
            triple_pairs: 1_000_000,
        }
    }
}
