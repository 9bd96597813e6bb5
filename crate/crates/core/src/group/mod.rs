//! Permutation groups backed by stabilizer chains.

mod action;
mod chain;
mod classes;
mod subgroups;

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

pub use action::{
    fixed_set, fixed_set_subgroup, fixity, fixity_profile, max_fixity_classes, subgroups_conjugate,
    Action, CosetAction, FixityOrder,
};
pub use chain::{orbit_of, Level, StabChain};
pub use classes::{
    class_infos, conjugacy_class, conjugacy_classes, conjugacy_classes_generic, conjugator,
    rational_class, splits_in_alternating, ClassInfo, ConjugacyClass,
};
pub use subgroups::{subgroups_up_to_conjugacy, SubgroupTable};

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::perm::{Parity, Permutation};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Symmetric,
    Alternating,
    Generic,
}

#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: Arc<StabChain>,
    family: Family,
}

fn factorial(n: usize) -> Option<u64> {
    (1..=n as u64).try_fold(1u64, |acc, k| acc.checked_mul(k))
}

impl PermGroup {
    pub fn generate(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::EmptyDegree);
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
        let generators: Vec<Permutation> = generators
            .into_iter()
            .filter(|g| !g.is_identity())
            .collect();
        let chain = StabChain::new(degree, &generators, &[]);
        let order = chain.order();
        let family = match factorial(degree) {
            Some(f) if degree >= 3 && order == f => Family::Symmetric,
            Some(f)
                if degree >= 4
                    && order == f / 2
                    && generators.iter().all(|g| g.parity() == Parity::Even) =>
            {
                Family::Alternating
            }
            _ => Family::Generic,
        };
        Ok(PermGroup {
            degree,
            generators,
            chain: Arc::new(chain),
            family,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::generate(degree.max(1), Vec::new()).expect("valid degree")
    }

    pub fn symmetric(n: usize) -> Self {
        let n = n.max(1);
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[vec![0, 1]]).unwrap());
        }
        if n >= 3 {
            gens.push(Permutation::from_cycles(n, &[(0..n).collect()]).unwrap());
        }
        let mut g = PermGroup::generate(n, gens).unwrap();
        g.family = Family::Symmetric;
        g
    }

    pub fn alternating(n: usize) -> Self {
        let n = n.max(1);
        let mut gens = Vec::new();
        if n >= 3 {
            gens.push(Permutation::from_cycles(n, &[vec![0, 1, 2]]).unwrap());
        }
        if n >= 4 {
            let long: Vec<usize> = if n % 2 == 1 {
                (0..n).collect()
            } else {
                (1..n).collect()
            };
            gens.push(Permutation::from_cycles(n, &[long]).unwrap());
        }
        let mut g = PermGroup::generate(n, gens).unwrap();
        g.family = Family::Alternating;
        g
    }

    /// Greedy generating set for a known subset that is closed under
    /// multiplication.
    pub fn from_elements(degree: usize, elements: &[Permutation]) -> Result<Self> {
        let mut gens: Vec<Permutation> = Vec::new();
        let mut chain = StabChain::new(degree, &[], &[]);
        for e in elements {
            if e.degree() != degree {
                return Err(Error::DegreeMismatch(degree, e.degree()));
            }
            if !chain.contains(e) {
                gens.push(e.clone());
                chain = StabChain::new(degree, &gens, &[]);
            }
        }
        PermGroup::generate(degree, gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn order(&self) -> u64 {
        self.chain.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    pub fn check_contains(&self, g: &Permutation) -> Result<()> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch(self.degree, g.degree()));
        }
        if !self.contains(g) {
            return Err(Error::NotInGroup(g.to_string()));
        }
        Ok(())
    }

    /// All elements, refusing groups larger than `limit`.
    pub fn elements_iter(&self, limit: u64) -> Result<chain::ElementIter<'_>> {
        if self.order() > limit {
            return Err(Error::bound("element enumeration", self.order(), limit));
        }
        Ok(self.chain.elements())
    }

    /// All elements in sorted (lexicographic image) order.
    pub fn elements(&self, limit: u64) -> Result<Vec<Permutation>> {
        let mut v: Vec<Permutation> = self.elements_iter(limit)?.collect();
        v.sort_unstable();
        Ok(v)
    }

    pub fn random_element<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        self.chain.random_element(rng)
    }

    /// Chain whose base begins with `prefix`.
    pub fn chain_with_base(&self, prefix: &[usize]) -> StabChain {
        StabChain::new(self.degree, &self.generators, prefix)
    }

    /// Some `g` with `src[i]^g = dst[i]` for every `i`.
    pub fn transporter(&self, src: &[usize], dst: &[usize]) -> Option<Permutation> {
        if src.len() != dst.len() {
            return None;
        }
        // Repeated source points must map consistently; drop repeats.
        let mut s = Vec::new();
        let mut d = Vec::new();
        for (&a, &b) in src.iter().zip(dst) {
            match s.iter().position(|&x| x == a) {
                Some(i) => {
                    if d[i] != b {
                        return None;
                    }
                }
                None => {
                    if d.contains(&b) {
                        return None;
                    }
                    s.push(a);
                    d.push(b);
                }
            }
        }
        if s.is_empty() {
            return Some(Permutation::identity(self.degree));
        }
        self.chain_with_base(&s).transporter(&s, &d)
    }

    /// Pointwise stabilizer of `points`.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> PermGroup {
        let chain = self.chain_with_base(points);
        let mut distinct = points.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let gens = chain.level_generators(distinct.len());
        PermGroup::generate(self.degree, gens).unwrap()
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        orbit_of(self.degree, &self.generators, point)
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if seen[p] {
                continue;
            }
            let mut o = self.orbit(p);
            for &q in &o {
                seen[q] = true;
            }
            o.sort_unstable();
            out.push(o);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    /// `x⁻¹ G x`.
    pub fn conjugate_by(&self, x: &Permutation) -> PermGroup {
        let gens = self.generators.iter().map(|g| g.conj(x)).collect();
        PermGroup::generate(self.degree, gens).unwrap()
    }

    /// Whether every generator of `h` lies in `self`.
    pub fn is_subgroup(&self, h: &PermGroup) -> bool {
        h.degree == self.degree && h.generators.iter().all(|g| self.contains(g))
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup(other)
    }

    /// Smallest subgroup of `self` containing `elems`.
    pub fn subgroup_closure(&self, elems: &[Permutation]) -> Result<PermGroup> {
        for e in elems {
            self.check_contains(e)?;
        }
        PermGroup::generate(self.degree, elems.to_vec())
    }

    pub fn intersection(&self, other: &PermGroup, bounds: &Bounds) -> Result<PermGroup> {
        let (small, large) = if self.order() <= other.order() {
            (self, other)
        } else {
            (other, self)
        };
        let elems: Vec<Permutation> = small
            .elements_iter(bounds.elements)?
            .filter(|g| large.contains(g))
            .collect();
        PermGroup::from_elements(self.degree, &elems)
    }

    /// `C_G(g)` by filtering the elements of `G`.
    pub fn centralizer(&self, g: &Permutation, bounds: &Bounds) -> Result<PermGroup> {
        let elems: Vec<Permutation> = self
            .elements_iter(bounds.elements)?
            .filter(|x| x.commutes_with(g))
            .collect();
        PermGroup::from_elements(self.degree, &elems)
    }

    /// `N_G(S)` by filtering the elements of `G`.
    pub fn normalizer(&self, s: &PermGroup, bounds: &Bounds) -> Result<PermGroup> {
        let elems: Vec<Permutation> = self
            .elements_iter(bounds.elements)?
            .filter(|x| s.generators.iter().all(|h| s.contains(&h.conj(x))))
            .collect();
        PermGroup::from_elements(self.degree, &elems)
    }

    /// Exhaustive closure of the generators; for cross-checks on small groups.
    pub fn closure_size(&self, limit: usize) -> Option<usize> {
        let mut seen: HashSet<Permutation> = HashSet::new();
        let id = Permutation::identity(self.degree);
        seen.insert(id.clone());
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for g in &self.generators {
                let y = x.mul(g);
                if seen.insert(y.clone()) {
                    if seen.len() > limit {
                        return None;
                    }
                    queue.push(y);
                }
            }
        }
        Some(seen.len())
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PermGroup(degree {}, order {}, gens [",
            self.degree,
            self.order()
        )?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "])")
    }
}

/// Generators in a list are separated by `;` or by a comma outside
/// parentheses, so `(1,2,3),(4,5,6)` is two generators.
fn split_generators(body: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in body.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ';' => {
                out.push(&body[start..i]);
                start = i + 1;
            }
            ',' if depth == 0 => {
                out.push(&body[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&body[start..]);
    out.into_iter().filter(|g| !g.trim().is_empty()).collect()
}

/// Parses `A5`, `S7`, or `gens:5:(1,2,3)(4,5);(1,2)`.
pub fn parse_group(spec: &str) -> Result<PermGroup> {
    let s = spec.trim();
    if let Some(rest) = s.strip_prefix("gens:") {
        let (deg, body) = rest
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected gens:<degree>:<gens>, got {spec:?}")))?;
        let degree: usize = deg
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad degree {deg:?}")))?;
        let gens = split_generators(body)
            .into_iter()
            .map(|g| Permutation::parse(degree, g))
            .collect::<Result<Vec<_>>>()?;
        return PermGroup::generate(degree, gens);
    }
    let (kind, n) = s.split_at(1.min(s.len()));
    let n: usize = n
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad group spec {spec:?}")))?;
    if n == 0 {
        return Err(Error::EmptyDegree);
    }
    match kind {
        "A" | "a" => Ok(PermGroup::alternating(n)),
        "S" | "s" => Ok(PermGroup::symmetric(n)),
        _ => Err(Error::Parse(format!("bad group spec {spec:?}"))),
    }
}

/// Parses a subgroup spec (generator syntax; a bare cycle list such as
/// `(1,2)(3,4);(1,3)(2,4)` is read with the parent degree) and checks
/// containment in `parent`.
pub fn parse_subgroup(parent: &PermGroup, spec: &str) -> Result<PermGroup> {
    let s = spec.trim();
    let h = if s.starts_with("gens:") || s.starts_with('A') || s.starts_with('S') {
        parse_group(s)?
    } else {
        let gens = split_generators(s)
            .into_iter()
            .map(|g| Permutation::parse(parent.degree(), g))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::generate(parent.degree(), gens)?
    };
    if h.degree() != parent.degree() {
        return Err(Error::DegreeMismatch(parent.degree(), h.degree()));
    }
    if !parent.is_subgroup(&h) {
        return Err(Error::NotSubgroup(format!(
            "{h:?} is not contained in {parent:?}"
        )));
    }
    Ok(h)
}
