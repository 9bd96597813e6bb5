//! Orbit decomposition of intransitive actions, dropping orbit types that
//! do not change the relational complexity.

use serde::Serialize;

use super::rc_exact;
use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::group::{subgroups_conjugate, Action, PermGroup};

#[derive(Clone, Debug)]
pub struct OrbitType {
    pub orbit: Vec<usize>,
    pub stabilizer: PermGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum Removal {
    /// A fixed point.
    Trivial { orbit: usize },
    /// Point stabilizers are trivial.
    Free { orbit: usize },
    /// Equivalent to an orbit kept earlier.
    Duplicate { orbit: usize, of: usize },
}

#[derive(Clone, Debug)]
pub struct UnionReduction {
    /// All orbits of the input, ordered by least point.
    pub orbits: Vec<OrbitType>,
    /// Indices into `orbits` that were kept.
    pub kept: Vec<usize>,
    pub removed: Vec<Removal>,
    /// Coset actions on the kept stabilizers.
    pub parts: Vec<Action>,
    /// Their disjoint union; `None` when nothing is left, in which case the
    /// complexity is 2.
    pub reduced: Option<Action>,
    /// Exact complexities of the input and of the reduction, when both are
    /// within the exhaustive bound.
    pub rc_check: Option<(usize, usize)>,
}

pub fn reduce_union(actions: &[Action], bounds: &Bounds) -> Result<UnionReduction> {
    let whole = match actions.len() {
        0 => return Err(Error::Precondition("no actions given".into())),
        1 => actions[0].clone(),
        _ => Action::union(actions.to_vec())?,
    };
    let group = whole.group().clone();
    let mut orbits = Vec::new();
    for orbit in whole.image_group().orbits() {
        let stabilizer = whole.point_stabilizer(orbit[0])?;
        orbits.push(OrbitType { orbit, stabilizer });
    }
    let mut kept: Vec<usize> = Vec::new();
    let mut removed = Vec::new();
    'orbits: for (i, o) in orbits.iter().enumerate() {
        if o.orbit.len() == 1 {
            removed.push(Removal::Trivial { orbit: i });
            continue;
        }
        if o.stabilizer.is_trivial() {
            removed.push(Removal::Free { orbit: i });
            continue;
        }
        for &k in &kept {
            if subgroups_conjugate(&group, &orbits[k].stabilizer, &o.stabilizer, bounds)? {
                removed.push(Removal::Duplicate { orbit: i, of: k });
                continue 'orbits;
            }
        }
        kept.push(i);
    }
    let parts: Vec<Action> = kept
        .iter()
        .map(|&k| Action::coset(&group, &orbits[k].stabilizer, bounds))
        .collect::<Result<_>>()?;
    let reduced = if parts.is_empty() {
        None
    } else if parts.len() == 1 {
        Some(parts[0].clone())
    } else {
        Some(Action::union(parts.clone())?)
    };
    let reduced_points = reduced.as_ref().map_or(0, Action::points);
    let rc_check = if whole.points() <= bounds.exhaustive_points
        && reduced_points <= bounds.exhaustive_points
    {
        let before = rc_exact(&whole, bounds)?.exact.unwrap_or(2);
        let after = match &reduced {
            Some(r) => rc_exact(r, bounds)?.exact.unwrap_or(2),
            None => 2,
        };
        Some((before, after))
    } else {
        None
    };
    Ok(UnionReduction {
        orbits,
        kept,
        removed,
        parts,
        reduced,
        rc_check,
    })
}
