//! Search for pairs of tuples that are `(m−1)`-related but not `m`-related.
//!
//! After moving `J` so that it agrees with `I` on its first `m−1` entries,
//! such a pair is `I = (T, a)`, `J = (T, b)` for a set `T` of size `m−1`
//! and points `a, b ∉ T` with `b` in the orbit of `a` under every
//! `G_(T∖{t})` but not under `G_(T)`. Entries of a minimal pair are
//! distinct, so only sets need to be examined, and every `T∖{t}` must have
//! a nontrivial pointwise stabilizer. Those sets form a family closed under
//! taking subsets, which is explored in increasing point order.

use std::collections::HashMap;
use std::sync::Arc;

use crate::group::PermGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadPair {
    pub set: Vec<usize>,
    pub a: usize,
    pub b: usize,
}

impl BadPair {
    /// Length `m` of the separated tuples.
    pub fn len(&self) -> usize {
        self.set.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn tuples(&self) -> (Vec<usize>, Vec<usize>) {
        let mut i = self.set.clone();
        let mut j = self.set.clone();
        i.push(self.a);
        j.push(self.b);
        (i, j)
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    /// The longest pair found (first in search order among the longest).
    pub best: Option<BadPair>,
    /// False when the node budget ran out first.
    pub complete: bool,
    pub nodes: u64,
}

struct Search<'a> {
    group: &'a PermGroup,
    memo: HashMap<Vec<usize>, Arc<PermGroup>>,
    nodes: u64,
    budget: u64,
    first_only: bool,
    best: Option<BadPair>,
    out_of_budget: bool,
}

impl Search<'_> {
    fn stab(&mut self, set: &[usize]) -> Arc<PermGroup> {
        if let Some(g) = self.memo.get(set) {
            return g.clone();
        }
        let g = match set.split_last() {
            None => Arc::new(self.group.clone()),
            Some((&last, rest)) => {
                let parent = self.stab(rest);
                if parent.is_trivial() {
                    parent
                } else {
                    Arc::new(parent.pointwise_stabilizer(&[last]))
                }
            }
        };
        self.memo.insert(set.to_vec(), g.clone());
        g
    }

    fn done(&self) -> bool {
        self.out_of_budget || (self.first_only && self.best.is_some())
    }

    fn dfs(&mut self, set: &mut Vec<usize>, start: usize, end: usize) {
        let n = self.group.degree();
        for p in start..end {
            if self.done() {
                return;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                self.out_of_budget = true;
                return;
            }
            set.push(p);
            let k = self.stab(set);
            let longer = self.best.as_ref().is_none_or(|b| set.len() + 1 > b.len());
            if set.len() >= 2 && longer {
                if let Some(pair) = self.test(set, &k) {
                    self.best = Some(pair);
                }
            }
            if !k.is_trivial() {
                self.dfs(set, p + 1, n);
            }
            set.pop();
        }
    }

    fn test(&mut self, set: &[usize], k: &PermGroup) -> Option<BadPair> {
        let n = self.group.degree();
        let mut faces = Vec::with_capacity(set.len());
        for i in 0..set.len() {
            let face: Vec<usize> = set
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &x)| x)
                .collect();
            let g = self.stab(&face);
            if g.is_trivial() {
                return None;
            }
            faces.push(g);
        }
        let mut in_set = vec![false; n];
        for &t in set {
            in_set[t] = true;
        }
        let mut seen = in_set.clone();
        for a in 0..n {
            if seen[a] {
                continue;
            }
            let own = k.orbit(a);
            for &x in &own {
                seen[x] = true;
            }
            let mut cand = vec![true; n];
            for f in &faces {
                let mut hit = vec![false; n];
                for x in f.orbit(a) {
                    hit[x] = true;
                }
                for (c, h) in cand.iter_mut().zip(&hit) {
                    *c &= *h;
                }
            }
            for &x in &own {
                cand[x] = false;
            }
            if let Some(b) = (0..n).find(|&b| cand[b] && !in_set[b]) {
                return Some(BadPair {
                    set: set.to_vec(),
                    a,
                    b,
                });
            }
        }
        None
    }
}

/// Searches for the longest separated pair, or for any pair of length at
/// least 3 when `first_only` is set.
pub fn search(group: &PermGroup, node_budget: u64, first_only: bool) -> SearchResult {
    let mut s = Search {
        group,
        memo: HashMap::new(),
        nodes: 0,
        budget: node_budget,
        first_only,
        best: None,
        out_of_budget: false,
    };
    let n = group.degree();
    // On a single orbit, any set can be moved to one containing point 0.
    let end = if group.is_transitive() { 1 } else { n };
    let mut set = Vec::new();
    s.dfs(&mut set, 0, end);
    SearchResult {
        complete: !s.out_of_budget,
        best: s.best,
        nodes: s.nodes,
    }
}
