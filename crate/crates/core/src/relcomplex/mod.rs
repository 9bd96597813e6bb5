//! Relational complexity of permutation actions and binariness witnesses.

mod binary;
mod criteria;
mod search;
mod union;
mod witness;

use serde::Serialize;

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::group::Action;

pub use binary::{is_binary, BinaryProof, BinaryVerdict, Strategy, StrategySet};
pub use criteria::{
    component_criterion, fixity_criterion, fixity_hypotheses, rationally_conjugate,
    subset_criterion, transversal, triple_criterion_search, triple_improvable, FixityData,
};
pub use search::{search as separated_pair_search, BadPair, SearchResult};
pub use union::{reduce_union, OrbitType, Removal, UnionReduction};
pub use witness::{verify_tuples, witness_to_tuples, NonBinaryWitness, WitnessKind};

fn check_points(action: &Action, tuple: &[usize]) -> Result<()> {
    for &p in tuple {
        if p >= action.points() {
            return Err(Error::PointOutOfRange {
                point: p + 1,
                degree: action.points(),
            });
        }
    }
    Ok(())
}

/// Whether some element maps `i` to `j` entrywise.
pub fn fully_related(action: &Action, i: &[usize], j: &[usize]) -> Result<bool> {
    if i.len() != j.len() {
        return Err(Error::Precondition(format!(
            "tuple lengths differ: {} vs {}",
            i.len(),
            j.len()
        )));
    }
    check_points(action, i)?;
    check_points(action, j)?;
    Ok(action.image_group().transporter(i, j).is_some())
}

/// Whether every `k` coordinates of `i` can be mapped simultaneously onto
/// the same coordinates of `j`.
pub fn k_related(action: &Action, i: &[usize], j: &[usize], k: usize) -> Result<bool> {
    if i.len() != j.len() {
        return Err(Error::Precondition(format!(
            "tuple lengths differ: {} vs {}",
            i.len(),
            j.len()
        )));
    }
    if k == 0 || k > i.len() {
        return Err(Error::Precondition(format!(
            "need 1 <= k <= {}, got {k}",
            i.len()
        )));
    }
    check_points(action, i)?;
    check_points(action, j)?;
    let n = i.len();
    let image = action.image_group();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let si: Vec<usize> = idx.iter().map(|&x| i[x]).collect();
        let sj: Vec<usize> = idx.iter().map(|&x| j[x]).collect();
        if image.transporter(&si, &sj).is_none() {
            return Ok(false);
        }
        // next k-subset in lexicographic order
        let mut pos = k;
        while pos > 0 && idx[pos - 1] == n - k + pos - 1 {
            pos -= 1;
        }
        if pos == 0 {
            return Ok(true);
        }
        idx[pos - 1] += 1;
        for q in pos..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

/// Tuples `I ~_k J` that are not `(k+1)`-related.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    #[serde(rename = "I")]
    pub i: Vec<usize>,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    pub k: usize,
}

impl Certificate {
    pub fn verify(&self, action: &Action) -> Result<bool> {
        Ok(k_related(action, &self.i, &self.j, self.k)?
            && !k_related(action, &self.i, &self.j, self.k + 1)?)
    }

    /// One-based copy for display.
    pub fn one_based(&self) -> Certificate {
        Certificate {
            i: self.i.iter().map(|x| x + 1).collect(),
            j: self.j.iter().map(|x| x + 1).collect(),
            k: self.k,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RCReport {
    pub action: String,
    pub points: usize,
    pub lower_bound: usize,
    pub upper_bound: usize,
    pub exact: Option<usize>,
    pub certificate: Option<Certificate>,
}

/// Exact relational complexity, for actions on at most
/// `bounds.exhaustive_points` points and searches of at most
/// `bounds.exhaustive_nodes` nodes.
pub fn rc_exact(action: &Action, bounds: &Bounds) -> Result<RCReport> {
    let m = action.points();
    if m > bounds.exhaustive_points {
        return Err(Error::bound(
            "exact relational complexity (|Ω|); use is_binary strategies",
            m as u64,
            bounds.exhaustive_points as u64,
        ));
    }
    let result = search::search(action.image_group(), bounds.exhaustive_nodes, false);
    if !result.complete {
        return Err(Error::bound(
            "exact relational complexity (search nodes)",
            result.nodes,
            bounds.exhaustive_nodes,
        ));
    }
    let (rc, certificate) = match result.best {
        Some(pair) if pair.len() >= 3 => {
            let (i, j) = pair.tuples();
            let k = i.len() - 1;
            (i.len(), Some(Certificate { i, j, k }))
        }
        _ => (2, None),
    };
    Ok(RCReport {
        action: action.describe(),
        points: m,
        lower_bound: rc,
        upper_bound: rc,
        exact: Some(rc),
        certificate,
    })
}
