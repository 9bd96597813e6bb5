//! Subgroup enumeration for small groups via an explicit multiplication table.

use std::collections::{HashMap, HashSet};

use super::PermGroup;
use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::perm::Permutation;

type Bits = Vec<u64>;

/// Element table of a small group, with products and conjugation by index.
pub struct SubgroupTable {
    degree: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl SubgroupTable {
    pub fn new(group: &PermGroup, bounds: &Bounds) -> Result<Self> {
        if group.order() > bounds.subgroup_order {
            return Err(Error::bound(
                "subgroup enumeration",
                group.order(),
                bounds.subgroup_order,
            ));
        }
        let elements = group.elements(bounds.subgroup_order)?;
        let index: HashMap<Permutation, usize> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, g)| (g, i))
            .collect();
        let n = elements.len();
        let mut mul = vec![0u32; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                mul[i * n + j] = index[&a.mul(b)] as u32;
            }
        }
        let inv = elements
            .iter()
            .map(|a| index[&a.inverse()] as u32)
            .collect();
        Ok(SubgroupTable {
            degree: group.degree(),
            elements,
            index,
            mul,
            inv,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.len() + b] as usize
    }

    /// Index of `x⁻¹ a x`.
    pub fn conj(&self, a: usize, x: usize) -> usize {
        self.mul(self.mul(self.inv[x] as usize, a), x)
    }

    fn empty_bits(&self) -> Bits {
        vec![0; self.len().div_ceil(64)]
    }

    /// Subgroup generated by the given element indices, as a bitset.
    pub fn closure(&self, gens: &[usize]) -> Bits {
        let mut bits = self.empty_bits();
        let mut members = Vec::new();
        // identity is the least element in image order
        let id = self.index[&Permutation::identity(self.degree)];
        bits[id / 64] |= 1 << (id % 64);
        members.push(id);
        let mut i = 0;
        while i < members.len() {
            let a = members[i];
            for &g in gens {
                let c = self.mul(a, g);
                if bits[c / 64] & (1 << (c % 64)) == 0 {
                    bits[c / 64] |= 1 << (c % 64);
                    members.push(c);
                }
            }
            i += 1;
        }
        bits
    }

    pub fn members(&self, bits: &Bits) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| bits[i / 64] & (1 << (i % 64)) != 0)
            .collect()
    }

    pub fn conjugate_bits(&self, bits: &Bits, x: usize) -> Bits {
        let mut out = self.empty_bits();
        for a in self.members(bits) {
            let c = self.conj(a, x);
            out[c / 64] |= 1 << (c % 64);
        }
        out
    }

    pub fn to_group(&self, bits: &Bits) -> PermGroup {
        let elems: Vec<Permutation> = self
            .members(bits)
            .into_iter()
            .map(|i| self.elements[i].clone())
            .collect();
        PermGroup::from_elements(self.degree, &elems).expect("table elements share degree")
    }
}

/// One representative of each conjugacy class of subgroups, ordered by
/// subgroup order and then by sorted element list.
pub fn subgroups_up_to_conjugacy(group: &PermGroup, bounds: &Bounds) -> Result<Vec<PermGroup>> {
    let table = SubgroupTable::new(group, bounds)?;
    let n = table.len();
    let mut seen: HashSet<Bits> = HashSet::new();
    let mut reps: Vec<(Bits, Vec<usize>)> = Vec::new();

    let mut register = |bits: Bits, gens: Vec<usize>, reps: &mut Vec<(Bits, Vec<usize>)>| {
        if seen.contains(&bits) {
            return;
        }
        for x in 0..n {
            seen.insert(table.conjugate_bits(&bits, x));
        }
        reps.push((bits, gens));
    };

    register(table.closure(&[]), Vec::new(), &mut reps);
    let mut i = 0;
    while i < reps.len() {
        let (bits, gens) = reps[i].clone();
        let mut tried: HashSet<Bits> = HashSet::new();
        for g in 0..n {
            if bits[g / 64] & (1 << (g % 64)) != 0 {
                continue;
            }
            let mut next = gens.clone();
            next.push(g);
            let k = table.closure(&next);
            if tried.insert(k.clone()) {
                register(k, next, &mut reps);
            }
        }
        i += 1;
    }

    let mut keyed: Vec<(usize, Vec<usize>, &Bits)> = reps
        .iter()
        .map(|(b, _)| {
            let m = table.members(b);
            (m.len(), m, b)
        })
        .collect();
    keyed.sort();
    Ok(keyed
        .into_iter()
        .map(|(_, _, b)| table.to_group(b))
        .collect())
}
