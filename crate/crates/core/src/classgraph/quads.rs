//! Involution classes: the quad description of edges and explicit paths to
//! the standard vertex `(1 2)(3 4)⋯(4k−1 4k)`.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::{edge_in, ClassGraph};
use crate::error::{Error, Result};
use crate::group::ConjugacyClass;
use crate::perm::{exchange_related, Exchange, Permutation, Quad};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeKind {
    SameSupport,
    Exchange,
    Generic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairRelation {
    SameSupport,
    Exchange(Exchange),
}

/// Matched quad decompositions `s = q_1⋯q_k`, `t = q'_1⋯q'_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeWitness {
    pub kind: EdgeKind,
    pub quads_s: Vec<Quad>,
    pub quads_t: Vec<Quad>,
    pub relations: Vec<PairRelation>,
}

fn product(degree: usize, quads: &[Quad]) -> Result<Permutation> {
    let cycles: Vec<Vec<usize>> = quads
        .iter()
        .flat_map(|q| q.pairs.iter().map(|&(a, b)| vec![a, b]))
        .collect();
    Permutation::from_cycles(degree, &cycles)
}

impl EdgeWitness {
    /// Checks that the quads multiply back to `s` and `t` with disjoint
    /// supports and that each pair is related as recorded.
    pub fn check(&self, s: &Permutation, t: &Permutation) -> bool {
        let n = s.degree();
        let ok_products = matches!(product(n, &self.quads_s), Ok(ref x) if x == s)
            && matches!(product(n, &self.quads_t), Ok(ref y) if y == t);
        let ok_pairs = self.quads_s.len() == self.relations.len()
            && self.quads_t.len() == self.relations.len()
            && self
                .quads_s
                .iter()
                .zip(&self.quads_t)
                .zip(&self.relations)
                .all(|((q, r), rel)| match rel {
                    PairRelation::SameSupport => q != r && q.support() == r.support(),
                    PairRelation::Exchange(e) => exchange_related(q, r) == Some(*e),
                });
        ok_products && ok_pairs
    }
}

fn check_involution(g: &Permutation) -> Result<()> {
    if g.order() != 2 {
        return Err(Error::NotInvolution(g.to_string()));
    }
    Ok(())
}

/// The edge predicate of `Γ(C)` evaluated directly.
pub fn definitional_edge(s: &Permutation, t: &Permutation, class: &ConjugacyClass) -> bool {
    edge_in(class, s, t)
}

/// Decides adjacency of two involutions from the orbits of `K = ⟨s, t⟩`:
/// free orbits of size 4 give same-support pairs, and the three kinds of
/// 2-orbits (s fixes, t fixes, both swap) must be equinumerous so they can
/// be matched into exchanges.
pub fn quad_edge_oracle(
    s: &Permutation,
    t: &Permutation,
    class: &ConjugacyClass,
) -> Result<Option<EdgeWitness>> {
    check_involution(s)?;
    check_involution(t)?;
    if s.degree() != t.degree() {
        return Err(Error::DegreeMismatch(s.degree(), t.degree()));
    }
    if !class.contains(s) || !class.contains(t) {
        return Err(Error::Precondition(
            "both involutions must lie in the class".into(),
        ));
    }
    if s == t || !s.commutes_with(t) {
        return Ok(None);
    }
    let n = s.degree();
    let mut seen = vec![false; n];
    let mut free = Vec::new();
    let (mut b, mut c, mut d) = (Vec::new(), Vec::new(), Vec::new());
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let (sx, tx) = (s.apply(x), t.apply(x));
        let stx = t.apply(sx);
        for p in [x, sx, tx, stx] {
            seen[p] = true;
        }
        if sx != x && tx != x && sx != tx {
            free.push((Quad::new(x, sx, tx, stx)?, Quad::new(x, tx, sx, stx)?));
        } else if sx == x && tx != x {
            b.push((x, tx));
        } else if tx == x && sx != x {
            c.push((x, sx));
        } else if sx != x {
            d.push((x, sx));
        }
    }
    if b.len() != c.len() || c.len() != d.len() {
        return Ok(None);
    }
    if !class.contains(&s.mul(t)) {
        return Ok(None);
    }
    let mut quads_s = Vec::new();
    let mut quads_t = Vec::new();
    let mut relations = Vec::new();
    for (q, r) in free {
        quads_s.push(q);
        quads_t.push(r);
        relations.push(PairRelation::SameSupport);
    }
    for ((&(d0, d1), &(c0, c1)), &(b0, b1)) in d.iter().zip(&c).zip(&b) {
        let q = Quad::new(d0, d1, c0, c1)?;
        let r = Quad::new(d0, d1, b0, b1)?;
        let e = exchange_related(&q, &r).expect("disjoint orbits");
        quads_s.push(q);
        quads_t.push(r);
        relations.push(PairRelation::Exchange(e));
    }
    let kind = if relations.iter().all(|r| *r == PairRelation::SameSupport) {
        EdgeKind::SameSupport
    } else if relations
        .iter()
        .all(|r| matches!(r, PairRelation::Exchange(_)))
    {
        EdgeKind::Exchange
    } else {
        EdgeKind::Generic
    };
    Ok(Some(EdgeWitness {
        kind,
        quads_s,
        quads_t,
        relations,
    }))
}

/// Length guard for [`normalize_involution`] paths.
pub fn normalization_bound(degree: usize, quads: usize) -> usize {
    24 * quads + degree
}

type Pair = (usize, usize);

fn pair(a: usize, b: usize) -> Pair {
    (a.min(b), a.max(b))
}

fn transpositions(g: &Permutation) -> Vec<Pair> {
    g.cycles().into_iter().map(|c| pair(c[0], c[1])).collect()
}

// Shortest sequence of quads q = w_0, .., w_m = r on `pool` in which each
// step changes the pairing on the same support or exchanges one
// transposition for one on points of the pool outside the current quad.
fn quad_path(q: Quad, r: Quad, pool: &[usize]) -> Option<Vec<Quad>> {
    let mut prev: HashMap<Quad, Quad> = HashMap::new();
    let mut queue = VecDeque::from([q]);
    prev.insert(q, q);
    while let Some(w) = queue.pop_front() {
        if w == r {
            let mut path = vec![r];
            let mut cur = r;
            while cur != q {
                cur = prev[&cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        let supp = w.support();
        let outside: Vec<usize> = pool.iter().copied().filter(|p| !supp.contains(p)).collect();
        let mut next: Vec<Quad> = w.siblings().to_vec();
        for kept in w.pairs {
            for (i, &u) in outside.iter().enumerate() {
                for &v in &outside[i + 1..] {
                    next.push(Quad::new(kept.0, kept.1, u, v).expect("distinct"));
                }
            }
        }
        for nq in next {
            if let std::collections::hash_map::Entry::Vacant(e) = prev.entry(nq) {
                e.insert(w);
                queue.push_back(nq);
            }
        }
    }
    None
}

fn pair_up(pairs: &[Pair]) -> Vec<Quad> {
    pairs
        .chunks(2)
        .map(|c| Quad::new(c[0].0, c[0].1, c[1].0, c[1].1).expect("disjoint"))
        .collect()
}

fn assemble(degree: usize, q: &Quad, rest: &[Quad]) -> Permutation {
    let mut all = vec![*q];
    all.extend_from_slice(rest);
    product(degree, &all).expect("disjoint quads")
}

/// Path from `s`, excluding `s` itself, to the standard vertex
/// `(1 2)(3 4)⋯(4k−1 4k)`, placing `(1 2)`, `(3 4)`, … in turn. Each change
/// of a single quad is carried out while the remaining quads cycle through
/// the three pairings of their supports, so that every step is an edge.
pub fn normalize_involution(graph: &ClassGraph, s: &Permutation) -> Result<Vec<Permutation>> {
    check_involution(s)?;
    if graph.vertex_id(s).is_none() {
        return Err(Error::NotInGroup(format!(
            "{s} is not a vertex of the class graph"
        )));
    }
    let n = s.degree();
    let t = transpositions(s).len();
    if !t.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "{s} is not a product of quads"
        )));
    }
    let k = t / 2;
    if n == 4 * k + 1 {
        return Err(Error::Precondition(format!(
            "degree {n} = 4k+1: the class graph is disconnected"
        )));
    }
    let target: Vec<Pair> = (0..2 * k).map(|j| (2 * j, 2 * j + 1)).collect();
    let canonical = product(n, &pair_up(&target))?;
    if graph.vertex_id(&canonical).is_none() {
        return Err(Error::Precondition(format!(
            "{canonical} is not in the class"
        )));
    }

    let mut path: Vec<Permutation> = Vec::new();
    let mut cur: Vec<Pair> = transpositions(s);
    for (j, &(x, y)) in target.iter().enumerate() {
        if cur.contains(&(x, y)) {
            continue;
        }
        let locked = &target[..j];
        let partner = |p: usize| cur.iter().copied().find(|&(a, b)| a == p || b == p);
        let (q, r) = match (partner(x), partner(y)) {
            (Some(px), Some(py)) => {
                let a = if px.0 == x { px.1 } else { px.0 };
                let b = if py.0 == y { py.1 } else { py.0 };
                (Quad::new(px.0, px.1, py.0, py.1)?, Quad::new(x, y, a, b)?)
            }
            (Some(pxy), None) | (None, Some(pxy)) => {
                let other = *cur.iter().find(|&&p| p != pxy).expect("k >= 1");
                (
                    Quad::new(pxy.0, pxy.1, other.0, other.1)?,
                    Quad::new(x, y, other.0, other.1)?,
                )
            }
            (None, None) => {
                let free = *cur
                    .iter()
                    .find(|p| !locked.contains(p))
                    .expect("an unplaced transposition remains");
                let other = *cur.iter().find(|&&p| p != free).expect("k >= 1");
                (
                    Quad::new(free.0, free.1, other.0, other.1)?,
                    Quad::new(x, y, other.0, other.1)?,
                )
            }
        };
        let rest_pairs: Vec<Pair> = cur
            .iter()
            .copied()
            .filter(|p| !q.pairs.contains(p))
            .collect();
        let rest = pair_up(&rest_pairs);

        let moved: Vec<bool> = {
            let mut m = vec![false; n];
            for &(a, b) in &cur {
                m[a] = true;
                m[b] = true;
            }
            m
        };
        let mut pool: Vec<usize> = q.support().to_vec();
        for p in [x, y] {
            if !moved[p] && !pool.contains(&p) {
                pool.push(p);
            }
        }
        let fixed_count = moved.iter().filter(|m| !**m).count();
        let want = (4 + fixed_count).min(8);
        for (p, &m) in moved.iter().enumerate() {
            if pool.len() >= want {
                break;
            }
            if !m && !pool.contains(&p) {
                pool.push(p);
            }
        }
        let steps = quad_path(q, r, &pool)
            .ok_or_else(|| Error::Precondition(format!("no single-quad route from {q} to {r}")))?;
        let mut seq: Vec<Quad> = steps[1..].to_vec();
        if !rest.is_empty() {
            let r1 = r.siblings()[0];
            match seq.len() % 3 {
                1 => seq.extend([r1, r]),
                2 => seq.extend([r1, r, r1, r]),
                _ => {}
            }
        }
        // the other quads run through their three pairings in a fixed cycle
        let rotations: [Vec<Quad>; 3] = [
            rest.clone(),
            rest.iter().map(|w| w.siblings()[0]).collect(),
            rest.iter().map(|w| w.siblings()[1]).collect(),
        ];
        for (i, w) in seq.iter().enumerate() {
            path.push(assemble(n, w, &rotations[(i + 1) % 3]));
        }
        cur = r.pairs.to_vec();
        cur.extend(rest_pairs);
        cur.sort_unstable();
    }

    path.dedup();
    let mut prev = graph.vertex_id(s).unwrap();
    for v in &path {
        let id = graph
            .vertex_id(v)
            .ok_or_else(|| Error::Precondition(format!("{v} left the class")))?;
        if !graph.adjacent(prev, id) {
            return Err(Error::Precondition(format!(
                "constructed step to {v} is not an edge"
            )));
        }
        prev = id;
    }
    if prev != graph.vertex_id(&canonical).unwrap() {
        return Err(Error::Precondition(
            "path did not reach the standard vertex".into(),
        ));
    }
    let bound = normalization_bound(n, k);
    if path.len() > bound {
        return Err(Error::bound(
            "normalization path length",
            path.len() as u64,
            bound as u64,
        ));
    }
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::Bounds;
    use crate::classgraph::build_gamma;
    use crate::group::{conjugacy_class, PermGroup};

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse(n, s).unwrap()
    }

    fn class(n: usize, rep: &str) -> ConjugacyClass {
        conjugacy_class(&PermGroup::alternating(n), &p(n, rep), &Bounds::default()).unwrap()
    }

    #[test]
    fn oracle_examples() {
        let c = class(6, "(1,2)(3,4)");
        let s = p(6, "(1,2)(3,4)");
        let w = quad_edge_oracle(&s, &p(6, "(1,4)(2,3)"), &c)
            .unwrap()
            .unwrap();
        assert_eq!(w.kind, EdgeKind::SameSupport);
        let t = p(6, "(1,2)(5,6)");
        let w = quad_edge_oracle(&s, &t, &c).unwrap().unwrap();
        assert_eq!(w.kind, EdgeKind::Exchange);
        assert!(w.check(&s, &t));
        let PairRelation::Exchange(e) = w.relations[0] else {
            panic!("expected exchange")
        };
        assert_eq!((e.kept, e.removed, e.added), ((0, 1), (2, 3), (4, 5)));
        assert!(quad_edge_oracle(&s, &p(6, "(1,3)(2,5)"), &c)
            .unwrap()
            .is_none());
        assert!(matches!(
            quad_edge_oracle(&p(6, "(1,2,3)"), &s, &c),
            Err(Error::NotInvolution(_))
        ));
    }

    #[test]
    fn no_edges_when_support_not_multiple_of_four() {
        // (12)(34)(56) is odd, so its class lives in S_7
        let c = conjugacy_class(
            &PermGroup::symmetric(7),
            &p(7, "(1,2)(3,4)(5,6)"),
            &Bounds::default(),
        )
        .unwrap();
        for s in c.elements.iter().step_by(7) {
            for t in &c.elements {
                assert!(quad_edge_oracle(s, t, &c).unwrap().is_none());
                assert!(!definitional_edge(s, t, &c));
            }
        }
    }

    #[test]
    fn oracle_agrees_on_a6() {
        let c = class(6, "(1,2)(3,4)");
        for s in &c.elements {
            for t in &c.elements {
                let w = quad_edge_oracle(s, t, &c).unwrap();
                assert_eq!(w.is_some(), definitional_edge(s, t, &c));
                if let Some(w) = w {
                    assert!(w.check(s, t));
                }
            }
        }
    }

    #[test]
    fn normalize_small() {
        let b = Bounds::default();
        let c = class(6, "(1,2)(3,4)");
        let g = build_gamma(&c, &b).unwrap();
        assert!(normalize_involution(&g, &p(6, "(1,2)(3,4)"))
            .unwrap()
            .is_empty());
        let path = normalize_involution(&g, &p(6, "(1,5)(2,6)")).unwrap();
        assert_eq!(path.last().unwrap(), &p(6, "(1,2)(3,4)"));
        for s in &c.elements {
            let path = normalize_involution(&g, s).unwrap();
            assert!(path
                .last()
                .map_or(s == &p(6, "(1,2)(3,4)"), |v| *v == p(6, "(1,2)(3,4)")));
        }
        let c5 = class(5, "(1,2)(3,4)");
        let g5 = build_gamma(&c5, &b).unwrap();
        assert!(normalize_involution(&g5, &p(5, "(1,3)(2,4)")).is_err());
    }

    #[test]
    fn normalize_eight_points() {
        let b = Bounds::default();
        let c = class(8, "(1,2)(3,4)(5,6)(7,8)");
        let g = build_gamma(&c, &b).unwrap();
        for s in &c.elements {
            normalize_involution(&g, s).unwrap();
        }
        let c10 = class(10, "(1,2)(3,4)(5,6)(7,8)");
        let g10 = build_gamma(&c10, &b).unwrap();
        for s in c10.elements.iter().step_by(37) {
            normalize_involution(&g10, s).unwrap();
        }
    }
}
