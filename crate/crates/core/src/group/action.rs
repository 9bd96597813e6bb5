//! Group actions: natural, on right cosets, and disjoint unions.

use std::collections::HashMap;
use std::sync::Arc;

use super::{class_infos, conjugacy_class, ClassInfo, ConjugacyClass, PermGroup, StabChain};
use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Action of `G` on the right cosets `Hx`, with `Hx · g = H(xg)`.
#[derive(Clone, Debug)]
pub struct CosetAction {
    group: PermGroup,
    subgroup: PermGroup,
    reps: Vec<Permutation>,
    lookup: HashMap<Permutation, usize>,
    // H with base 0, 1, .., n-1; used for least coset representatives.
    sub_chain: StabChain,
}

impl CosetAction {
    pub fn new(group: &PermGroup, subgroup: &PermGroup, bounds: &Bounds) -> Result<Self> {
        if !group.is_subgroup(subgroup) {
            return Err(Error::NotSubgroup(format!(
                "{subgroup:?} is not contained in {group:?}"
            )));
        }
        let index = group.order() / subgroup.order();
        if index > bounds.coset_index {
            return Err(Error::bound(
                "coset action index",
                index,
                bounds.coset_index,
            ));
        }
        let n = group.degree();
        let all_points: Vec<usize> = (0..n).collect();
        let sub_chain = StabChain::new(n, subgroup.generators(), &all_points);
        let mut action = CosetAction {
            group: group.clone(),
            subgroup: subgroup.clone(),
            reps: Vec::new(),
            lookup: HashMap::new(),
            sub_chain,
        };
        let id = Permutation::identity(n);
        action.lookup.insert(id.clone(), 0);
        action.reps.push(id);
        let mut i = 0;
        while i < action.reps.len() {
            let r = action.reps[i].clone();
            for g in group.generators() {
                let c = action.canonical(&r.mul(g));
                if !action.lookup.contains_key(&c) {
                    action.lookup.insert(c.clone(), action.reps.len());
                    action.reps.push(c);
                }
            }
            i += 1;
        }
        debug_assert_eq!(action.reps.len() as u64, index);
        Ok(action)
    }

    /// Least element of the coset `Hx`.
    pub fn canonical(&self, x: &Permutation) -> Permutation {
        let mut cur = x.clone();
        for (i, level) in self.sub_chain.levels().iter().enumerate() {
            debug_assert_eq!(level.base, i);
            if level.orbit.len() == 1 {
                continue;
            }
            let best = *level.orbit.iter().min_by_key(|&&o| cur.apply(o)).unwrap();
            if best != i {
                cur = level.transversal(best).unwrap().mul(&cur);
            }
        }
        cur
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn subgroup(&self) -> &PermGroup {
        &self.subgroup
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }

    /// Right-coset representatives; index 0 is `H` itself.
    pub fn representatives(&self) -> &[Permutation] {
        &self.reps
    }

    /// Index of the coset `Hx`.
    pub fn coset_of(&self, x: &Permutation) -> usize {
        self.lookup[&self.canonical(x)]
    }

    pub fn image(&self, g: &Permutation) -> Permutation {
        let images = self.reps.iter().map(|r| self.coset_of(&r.mul(g))).collect();
        Permutation::from_images_unchecked(images)
    }

    /// Stabilizer of coset `Hx` is `x⁻¹Hx`.
    pub fn point_stabilizer(&self, point: usize) -> PermGroup {
        self.subgroup.conjugate_by(&self.reps[point])
    }
}

#[derive(Clone, Debug)]
enum Kind {
    Natural,
    Coset(Arc<CosetAction>),
    Union(Vec<(usize, Action)>),
}

/// A homomorphism from a permutation group into `Sym(Ω)`, `Ω = {0..m-1}`.
#[derive(Clone, Debug)]
pub struct Action {
    group: PermGroup,
    kind: Kind,
    image: PermGroup,
    points: usize,
}

impl Action {
    pub fn natural(group: &PermGroup) -> Self {
        Action {
            group: group.clone(),
            kind: Kind::Natural,
            image: group.clone(),
            points: group.degree(),
        }
    }

    pub fn coset(group: &PermGroup, subgroup: &PermGroup, bounds: &Bounds) -> Result<Self> {
        let coset = CosetAction::new(group, subgroup, bounds)?;
        let m = coset.index();
        let gens: Vec<Permutation> = group.generators().iter().map(|g| coset.image(g)).collect();
        let image = PermGroup::generate(m, gens)?;
        Ok(Action {
            group: group.clone(),
            kind: Kind::Coset(Arc::new(coset)),
            image,
            points: m,
        })
    }

    pub fn regular(group: &PermGroup, bounds: &Bounds) -> Result<Self> {
        Action::coset(group, &PermGroup::trivial(group.degree()), bounds)
    }

    /// The one-point action.
    pub fn trivial(group: &PermGroup, bounds: &Bounds) -> Result<Self> {
        Action::coset(group, group, bounds)
    }

    /// Disjoint union; all parts must act by the same group (same generators).
    pub fn union(parts: Vec<Action>) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::Precondition("union of no actions".into()))?;
        let group = first.group.clone();
        for a in &parts {
            if a.group.generators() != group.generators() {
                return Err(Error::Precondition(
                    "union parts must share the acting group".into(),
                ));
            }
        }
        let total: usize = parts.iter().map(|a| a.points).sum();
        let mut with_offsets = Vec::new();
        let mut off = 0;
        for a in parts {
            let m = a.points;
            with_offsets.push((off, a));
            off += m;
        }
        let mut action = Action {
            group: group.clone(),
            kind: Kind::Union(with_offsets),
            image: PermGroup::trivial(total),
            points: total,
        };
        let gens: Vec<Permutation> = group
            .generators()
            .iter()
            .map(|g| action.image_of(g))
            .collect();
        action.image = PermGroup::generate(total, gens)?;
        Ok(action)
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    /// The permutation group induced on `Ω`.
    pub fn image_group(&self) -> &PermGroup {
        &self.image
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn as_coset(&self) -> Option<&CosetAction> {
        match &self.kind {
            Kind::Coset(c) => Some(c),
            _ => None,
        }
    }

    pub fn parts(&self) -> Option<Vec<(usize, &Action)>> {
        match &self.kind {
            Kind::Union(parts) => Some(parts.iter().map(|(o, a)| (*o, a)).collect()),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        match &self.kind {
            Kind::Natural => format!("natural action on {} points", self.points),
            Kind::Coset(c) => format!(
                "action on {} cosets of a subgroup of order {}",
                c.index(),
                c.subgroup().order()
            ),
            Kind::Union(parts) => format!(
                "disjoint union of {} actions on {} points",
                parts.len(),
                self.points
            ),
        }
    }

    /// The permutation of `Ω` induced by `g ∈ G`.
    pub fn image_of(&self, g: &Permutation) -> Permutation {
        match &self.kind {
            Kind::Natural => g.clone(),
            Kind::Coset(c) => c.image(g),
            Kind::Union(parts) => {
                let mut images = Vec::with_capacity(self.points);
                for (off, a) in parts {
                    let img = a.image_of(g);
                    images.extend(img.images().iter().map(|&x| x + off));
                }
                Permutation::from_images_unchecked(images)
            }
        }
    }

    /// Stabilizer in `G` of a point of `Ω`.
    pub fn point_stabilizer(&self, point: usize) -> Result<PermGroup> {
        if point >= self.points {
            return Err(Error::PointOutOfRange {
                point: point + 1,
                degree: self.points,
            });
        }
        Ok(match &self.kind {
            Kind::Natural => self.group.pointwise_stabilizer(&[point]),
            Kind::Coset(c) => c.point_stabilizer(point),
            Kind::Union(parts) => {
                let (off, a) = parts
                    .iter()
                    .rev()
                    .find(|(off, _)| *off <= point)
                    .expect("offsets start at 0");
                a.point_stabilizer(point - off)?
            }
        })
    }

    pub fn is_transitive(&self) -> bool {
        self.image.is_transitive()
    }
}

pub fn fixity(action: &Action, g: &Permutation) -> usize {
    fixed_set(action, g).len()
}

pub fn fixed_set(action: &Action, g: &Permutation) -> Vec<usize> {
    action.image_of(g).fixed_points()
}

/// Common fixed points of the generators of `k`.
pub fn fixed_set_subgroup(action: &Action, k: &PermGroup) -> Vec<usize> {
    let mut fixed = vec![true; action.points()];
    for g in k.generators() {
        let img = action.image_of(g);
        for (p, f) in fixed.iter_mut().enumerate() {
            if img.apply(p) != p {
                *f = false;
            }
        }
    }
    (0..action.points()).filter(|&p| fixed[p]).collect()
}

/// Which elements count for maximal fixity.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum FixityOrder {
    /// Elements of order exactly `p`.
    #[default]
    Exact,
    /// All nontrivial `p`-elements.
    PElements,
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    if n <= 1 {
        return false;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// Whether `a` and `b` are conjugate in `group`.
pub fn subgroups_conjugate(
    group: &PermGroup,
    a: &PermGroup,
    b: &PermGroup,
    bounds: &Bounds,
) -> Result<bool> {
    if a.order() != b.order() {
        return Ok(false);
    }
    // b fixes the coset a·x exactly when b ≤ x⁻¹ a x
    let act = Action::coset(group, a, bounds)?;
    Ok(!fixed_set_subgroup(&act, b).is_empty())
}

/// Class data for the eligible classes, each with its fixity, and the
/// maximum fixity.
pub fn fixity_profile(
    action: &Action,
    p: u64,
    mode: FixityOrder,
    bounds: &Bounds,
) -> Result<(Vec<(ClassInfo, usize)>, usize)> {
    let g = action.group();
    if p < 2 || !g.order().is_multiple_of(p) {
        return Err(Error::Precondition(format!(
            "{p} does not divide |G| = {}",
            g.order()
        )));
    }
    let mut out = Vec::new();
    for info in class_infos(g, bounds)? {
        let ok = match mode {
            FixityOrder::Exact => info.element_order == p,
            FixityOrder::PElements => is_power_of(info.element_order, p),
        };
        if ok {
            let f = fixity(action, &info.representative);
            out.push((info, f));
        }
    }
    let max = out.iter().map(|(_, f)| *f).max().unwrap_or(0);
    Ok((out, max))
}

/// All classes of eligible elements attaining the maximum fixity, sorted by
/// representative.
pub fn max_fixity_classes(
    action: &Action,
    p: u64,
    mode: FixityOrder,
    bounds: &Bounds,
) -> Result<Vec<ConjugacyClass>> {
    let (profile, max) = fixity_profile(action, p, mode, bounds)?;
    let mut out = Vec::new();
    for (info, f) in profile {
        if f == max {
            out.push(conjugacy_class(
                action.group(),
                &info.representative,
                bounds,
            )?);
        }
    }
    out.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(out)
}
