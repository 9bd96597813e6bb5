use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::{Family, PermGroup};
use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::perm::{gcd, Parity, Permutation};

/// Representative data for a class that has not necessarily been enumerated.
#[derive(Clone, Debug, Serialize)]
pub struct ClassInfo {
    pub representative: Permutation,
    pub size: u64,
    pub element_order: u64,
    pub cycle_type: Vec<usize>,
}

/// An explicitly enumerated (ordinary or rational) conjugacy class.
#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub group: PermGroup,
    /// Least element in lexicographic image order.
    pub representative: Permutation,
    /// Sorted.
    pub elements: Vec<Permutation>,
    pub rational: bool,
}

impl ConjugacyClass {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.elements.binary_search(g).ok()
    }

    pub fn element_order(&self) -> u64 {
        self.representative.order()
    }
}

fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=max.min(n)).rev() {
            cur.push(k);
            rec(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

fn permutation_of_type(n: usize, cycle_type: &[usize]) -> Permutation {
    let mut cycles = Vec::new();
    let mut next = 0;
    for &len in cycle_type {
        cycles.push((next..next + len).collect::<Vec<_>>());
        next += len;
    }
    Permutation::from_cycles(n, &cycles).unwrap()
}

fn centralizer_order_in_symmetric(cycle_type: &[usize]) -> u64 {
    let mut counts: HashMap<usize, u64> = HashMap::new();
    for &l in cycle_type {
        *counts.entry(l).or_default() += 1;
    }
    counts
        .iter()
        .map(|(&len, &m)| (1..=m).product::<u64>() * (len as u64).pow(m as u32))
        .product()
}

/// The alternating-group splitting rule: an even class of `S_n` splits in
/// `A_n` iff its cycle lengths (fixed points included) are distinct and odd.
pub fn splits_in_alternating(cycle_type: &[usize]) -> bool {
    let mut seen = HashSet::new();
    cycle_type.iter().all(|&l| l % 2 == 1 && seen.insert(l))
}

/// Class representatives with sizes. Natural symmetric and alternating
/// groups use cycle types and the splitting rule; other groups enumerate.
pub fn class_infos(group: &PermGroup, bounds: &Bounds) -> Result<Vec<ClassInfo>> {
    let n = group.degree();
    let order = group.order();
    match group.family() {
        Family::Symmetric | Family::Alternating => {
            let alt = group.family() == Family::Alternating;
            let mut out = Vec::new();
            for ct in partitions(n) {
                let rep = permutation_of_type(n, &ct);
                if alt && rep.parity() == Parity::Odd {
                    continue;
                }
                let z = centralizer_order_in_symmetric(&ct);
                let sym_size = (order * if alt { 2 } else { 1 }) / z;
                let element_order = rep.order();
                if alt && splits_in_alternating(&ct) && n > 1 {
                    let t = Permutation::from_cycles(n, &[vec![0, 1]]).unwrap();
                    let other = rep.conj(&t);
                    for r in [rep, other] {
                        out.push(ClassInfo {
                            representative: r,
                            size: sym_size / 2,
                            element_order,
                            cycle_type: ct.clone(),
                        });
                    }
                } else {
                    out.push(ClassInfo {
                        representative: rep,
                        size: sym_size,
                        element_order,
                        cycle_type: ct,
                    });
                }
            }
            Ok(out)
        }
        Family::Generic => Ok(conjugacy_classes_generic(group, bounds)?
            .into_iter()
            .map(|c| ClassInfo {
                cycle_type: c.representative.cycle_type(),
                element_order: c.representative.order(),
                size: c.len() as u64,
                representative: c.representative,
            })
            .collect()),
    }
}

fn class_orbit(group: &PermGroup, g: &Permutation, limit: u64) -> Result<Vec<Permutation>> {
    let mut seen: HashSet<Permutation> = HashSet::new();
    seen.insert(g.clone());
    let mut queue = vec![g.clone()];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i].clone();
        for s in group.generators() {
            let y = x.conj(s);
            if seen.insert(y.clone()) {
                if seen.len() as u64 > limit {
                    return Err(Error::bound(
                        "conjugacy class size",
                        seen.len() as u64,
                        limit,
                    ));
                }
                queue.push(y);
            }
        }
        i += 1;
    }
    queue.sort_unstable();
    Ok(queue)
}

/// The conjugacy class of `g` in `group`, by conjugation-orbit search.
pub fn conjugacy_class(
    group: &PermGroup,
    g: &Permutation,
    bounds: &Bounds,
) -> Result<ConjugacyClass> {
    group.check_contains(g)?;
    let elements = class_orbit(group, g, bounds.class_elements)?;
    Ok(ConjugacyClass {
        group: group.clone(),
        representative: elements[0].clone(),
        elements,
        rational: false,
    })
}

pub fn conjugacy_classes(group: &PermGroup, bounds: &Bounds) -> Result<Vec<ConjugacyClass>> {
    if group.order() > bounds.elements {
        return Err(Error::bound(
            "conjugacy classes",
            group.order(),
            bounds.elements,
        ));
    }
    match group.family() {
        Family::Generic => conjugacy_classes_generic(group, bounds),
        _ => {
            let mut out = Vec::new();
            for info in class_infos(group, bounds)? {
                out.push(conjugacy_class(group, &info.representative, bounds)?);
            }
            out.sort_by(|a, b| a.representative.cmp(&b.representative));
            Ok(out)
        }
    }
}

/// Conjugation orbits over an explicit element list.
pub fn conjugacy_classes_generic(
    group: &PermGroup,
    bounds: &Bounds,
) -> Result<Vec<ConjugacyClass>> {
    let elements = group.elements(bounds.elements)?;
    let mut assigned: HashSet<Permutation> = HashSet::new();
    let mut out = Vec::new();
    for g in &elements {
        if assigned.contains(g) {
            continue;
        }
        let class = class_orbit(group, g, bounds.class_elements)?;
        assigned.extend(class.iter().cloned());
        out.push(ConjugacyClass {
            group: group.clone(),
            representative: class[0].clone(),
            elements: class,
            rational: false,
        });
    }
    Ok(out)
}

/// Union of the classes of `g^k` for `k` coprime to the order of `g`.
pub fn rational_class(
    group: &PermGroup,
    g: &Permutation,
    bounds: &Bounds,
) -> Result<ConjugacyClass> {
    group.check_contains(g)?;
    let ord = g.order();
    let mut all: HashSet<Permutation> = HashSet::new();
    for k in 1..=ord.max(1) {
        if gcd(k, ord) != 1 {
            continue;
        }
        let gk = g.power(k as i64);
        if all.contains(&gk) {
            continue;
        }
        all.extend(class_orbit(group, &gk, bounds.class_elements)?);
        if all.len() as u64 > bounds.class_elements {
            return Err(Error::bound(
                "rational class size",
                all.len() as u64,
                bounds.class_elements,
            ));
        }
    }
    let mut elements: Vec<Permutation> = all.into_iter().collect();
    elements.sort_unstable();
    Ok(ConjugacyClass {
        group: group.clone(),
        representative: elements[0].clone(),
        elements,
        rational: true,
    })
}

/// Some `c ∈ group` with `x^c = y`, by conjugation-orbit search from `x`.
pub fn conjugator(
    group: &PermGroup,
    x: &Permutation,
    y: &Permutation,
    bounds: &Bounds,
) -> Result<Option<Permutation>> {
    if x.cycle_type() != y.cycle_type() {
        return Ok(None);
    }
    let n = group.degree();
    let mut seen: HashMap<Permutation, Permutation> = HashMap::new();
    seen.insert(x.clone(), Permutation::identity(n));
    let mut queue = vec![x.clone()];
    let mut i = 0;
    while i < queue.len() {
        let cur = queue[i].clone();
        if &cur == y {
            return Ok(seen.get(&cur).cloned());
        }
        let c = seen[&cur].clone();
        for s in group.generators() {
            let next = cur.conj(s);
            if !seen.contains_key(&next) {
                seen.insert(next.clone(), c.mul(s));
                if seen.len() as u64 > bounds.class_elements {
                    return Err(Error::bound(
                        "conjugator search",
                        seen.len() as u64,
                        bounds.class_elements,
                    ));
                }
                queue.push(next);
            }
        }
        i += 1;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse(n, s).unwrap()
    }

    /// Brute-force oracle: conjugation orbits under every group element.
    fn brute_class_sizes(group: &PermGroup) -> Vec<usize> {
        let elems = group.elements(10_000).unwrap();
        let mut done: HashSet<Permutation> = HashSet::new();
        let mut sizes = Vec::new();
        for g in &elems {
            if done.contains(g) {
                continue;
            }
            let class: HashSet<Permutation> = elems.iter().map(|x| g.conj(x)).collect();
            sizes.push(class.len());
            done.extend(class);
        }
        sizes.sort_unstable();
        sizes
    }

    fn sizes(classes: &[ConjugacyClass]) -> Vec<usize> {
        let mut s: Vec<usize> = classes.iter().map(|c| c.len()).collect();
        s.sort_unstable();
        s
    }

    #[test]
    fn s4_classes() {
        let b = Bounds::default();
        let s4 = PermGroup::symmetric(4);
        let classes = conjugacy_classes(&s4, &b).unwrap();
        assert_eq!(sizes(&classes), vec![1, 3, 6, 6, 8]);
        assert_eq!(sizes(&classes), brute_class_sizes(&s4));
    }

    #[test]
    fn a4_three_cycles_split() {
        let b = Bounds::default();
        let a4 = PermGroup::alternating(4);
        let classes = conjugacy_classes(&a4, &b).unwrap();
        assert_eq!(sizes(&classes), vec![1, 3, 4, 4]);
        assert_eq!(sizes(&classes), brute_class_sizes(&a4));
    }

    #[test]
    fn a5_quads_single_class() {
        let b = Bounds::default();
        let a5 = PermGroup::alternating(5);
        let c = conjugacy_class(&a5, &p(5, "(1,2)(3,4)"), &b).unwrap();
        assert_eq!(c.len(), 15);
        // least in image order
        assert_eq!(c.representative, p(5, "(2,3)(4,5)"));
    }

    #[test]
    fn infos_match_enumeration() {
        let b = Bounds::default();
        for n in 3..=7 {
            for g in [PermGroup::alternating(n), PermGroup::symmetric(n)] {
                let infos = class_infos(&g, &b).unwrap();
                let total: u64 = infos.iter().map(|i| i.size).sum();
                assert_eq!(total, g.order());
                for info in infos.iter().take(6) {
                    let c = conjugacy_class(&g, &info.representative, &b).unwrap();
                    assert_eq!(c.len() as u64, info.size);
                }
            }
        }
    }

    #[test]
    fn rational_classes() {
        let b = Bounds::default();
        let a4 = PermGroup::alternating(4);
        let r = rational_class(&a4, &p(4, "(1,2,3)"), &b).unwrap();
        assert_eq!(r.len(), 8);
        assert!(r.rational);
        let a6 = PermGroup::alternating(6);
        let q = p(6, "(1,2)(3,4)");
        assert_eq!(
            rational_class(&a6, &q, &b).unwrap().elements,
            conjugacy_class(&a6, &q, &b).unwrap().elements
        );
        let s3 = PermGroup::symmetric(3);
        let r3 = rational_class(&s3, &p(3, "(1,2,3)"), &b).unwrap();
        assert_eq!(r3.elements, vec![p(3, "(1,2,3)"), p(3, "(1,3,2)")]);
    }

    #[test]
    fn conjugators() {
        let b = Bounds::default();
        let a5 = PermGroup::alternating(5);
        let x = p(5, "(1,2,3)");
        let y = p(5, "(3,4,5)");
        let c = conjugator(&a5, &x, &y, &b).unwrap().unwrap();
        assert!(a5.contains(&c));
        assert_eq!(x.conj(&c), y);
        // The two 5-cycle classes of A5 are not fused.
        let f = p(5, "(1,2,3,4,5)");
        let f2 = f.power(2);
        assert!(conjugator(&a5, &f, &f2, &b).unwrap().is_none());
        assert!(conjugator(&a5, &f, &f.power(4), &b).unwrap().is_some());
    }
}
