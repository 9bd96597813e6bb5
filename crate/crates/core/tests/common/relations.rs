//! Graph edges and non-binary witnesses against their definitions.

use binact::classgraph::{build_gamma, definitional_edge, quad_edge_oracle};
use binact::group::{conjugacy_class, subgroups_up_to_conjugacy, Action};
use binact::relcomplex::{is_binary, rc_exact, witness_to_tuples, Strategy, StrategySet};
use binact::{Bounds, PermGroup, Permutation};
use rand::seq::SliceRandom;
use rand::Rng;

use super::*;

/// Every pair in every class of products of quads in `A_n`, `4 ≤ n ≤ 8`.
pub fn quad_oracle_exhaustive() -> Outcome {
    let bounds = Bounds::default();
    let mut pairs = 0usize;
    let mut edges = 0usize;
    for n in 4..=8 {
        let an = PermGroup::alternating(n);
        for text in ["(1,2)(3,4)", "(1,2)(3,4)(5,6)(7,8)"] {
            let rep = match Permutation::parse(n, text) {
                Ok(r) => r,
                Err(_) => continue,
            };
            let class = conjugacy_class(&an, &rep, &bounds).unwrap();
            for s in &class.elements {
                for t in &class.elements {
                    pairs += 1;
                    let oracle = quad_edge_oracle(s, t, &class).unwrap().is_some();
                    let def = definitional_edge(s, t, &class);
                    if oracle != def {
                        return Err(format!(
                            "A_{n}: oracle {oracle}, definition {def} for {s}, {t}"
                        ));
                    }
                    edges += def as usize;
                }
            }
        }
    }
    Ok(format!("{pairs} ordered pairs, {edges} adjacent"))
}

fn has_type(g: &Permutation, lengths: &[usize]) -> bool {
    let mut ct: Vec<usize> = g.cycle_type().into_iter().filter(|&l| l > 1).collect();
    ct.sort_unstable();
    ct == lengths
}

/// Edges `(g, h)` of the type `p^k` graph in `A_{pk}` with a `p`-cycle `c`
/// on new points give edges `(gc, hc⁻¹)` of type `p^{k+1}`, checked from
/// cycle types.
pub fn edge_propagation(samples: usize) -> Outcome {
    let bounds = Bounds::default();
    let mut rng = rng(5);
    let mut checked = 0;
    for (p, k) in [(3usize, 2usize), (3, 3)] {
        let m = p * k;
        let n = m + p;
        let an = PermGroup::alternating(m);
        let rep = Permutation::from_cycles(
            m,
            &(0..k)
                .map(|i| (i * p..(i + 1) * p).collect())
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let class = match conjugacy_class(&an, &rep, &bounds) {
            Ok(c) => c,
            Err(_) => continue,
        };
        if class.len() > 5000 {
            continue;
        }
        let graph = build_gamma(&class, &bounds).unwrap();
        let edges: Vec<(usize, usize)> = graph.edges().collect();
        if edges.is_empty() {
            return Err(format!("no edges for type {p}^{k}"));
        }
        let target = vec![p; k + 1];
        run_trials(samples, &mut rng, |_, rng| {
            let &(a, b) = edges.choose(rng).unwrap();
            let g = graph.vertex(a).extend_to(n).unwrap();
            let h = graph.vertex(b).extend_to(n).unwrap();
            let mut tail: Vec<usize> = (m..n).collect();
            tail.shuffle(rng);
            let c = Permutation::from_cycles(n, &[tail])
                .unwrap()
                .power(rng.gen_range(1..p as i64));
            let g2 = mul(&g, &c);
            let h2 = mul(&h, &c.inverse());
            let quotient = mul(&g2, &h2.inverse());
            let ok = g2 != h2
                && g2.commutes_with(&h2)
                && has_type(&g2, &target)
                && has_type(&h2, &target)
                && (has_type(&quotient, &target) || has_type(&quotient.inverse(), &target));
            if !ok {
                return Err(format!("({g}, {h}) with c = {c} does not lift"));
            }
            Ok(())
        })?;
        checked += 1;
    }
    if checked < 2 {
        return Err("too few classes were small enough to sample".into());
    }
    Ok(format!("{samples} edges in each of {checked} classes"))
}

/// `I ~₂ J` and `I ≁ J`, by scanning all elements of the image group.
fn separates(elems: &[Permutation], i: &[usize], j: &[usize]) -> bool {
    let maps = |g: &Permutation, idx: &[usize]| idx.iter().all(|&x| g.apply(i[x]) == j[x]);
    let n = i.len();
    for a in 0..n {
        for b in a + 1..n {
            if !elems.iter().any(|g| maps(g, &[a, b])) {
                return false;
            }
        }
    }
    let all: Vec<usize> = (0..n).collect();
    !elems.iter().any(|g| maps(g, &all))
}

/// Every witness emitted by any engine on a random coset action separates
/// its tuples, and the exact complexity agrees when in reach.
pub fn witness_soundness(trials: usize) -> Outcome {
    let bounds = Bounds::default();
    let groups = [
        PermGroup::symmetric(4),
        PermGroup::alternating(5),
        PermGroup::symmetric(5),
        PermGroup::alternating(6),
    ];
    let classes: Vec<Vec<PermGroup>> = groups
        .iter()
        .map(|g| subgroups_up_to_conjugacy(g, &bounds).unwrap())
        .collect();
    let mut rng = rng(6);
    let mut witnesses = 0usize;
    let mut exact = 0usize;
    run_trials(trials, &mut rng, |_, rng| {
        let gi = rng.gen_range(0..groups.len());
        let g = &groups[gi];
        let h = classes[gi]
            .choose(rng)
            .unwrap()
            .conjugate_by(&g.random_element(rng));
        let action = Action::coset(g, &h, &bounds).unwrap();
        let elems = elements(action.image_group());
        let mut sets: Vec<StrategySet> = Strategy::ALL
            .iter()
            .map(|&s| StrategySet {
                strategies: vec![s],
                intermediate: None,
            })
            .collect();
        sets.push(StrategySet::default());
        let rc = (action.points() <= bounds.exhaustive_points)
            .then(|| rc_exact(&action, &bounds).unwrap().exact);
        for set in &sets {
            let verdict = is_binary(&action, set, &bounds);
            if let Some(w) = verdict.witness() {
                witnesses += 1;
                let (i, j) = witness_to_tuples(w, &action).map_err(|e| e.to_string())?;
                if !w.verified || !separates(&elems, &i, &j) {
                    return Err(format!(
                        "{} witness for order {} subgroup does not separate",
                        w.kind_name(),
                        h.order()
                    ));
                }
                if rc == Some(Some(2)) {
                    return Err(format!(
                        "witness for an action of complexity 2 (order {})",
                        h.order()
                    ));
                }
            }
            if let (Some(b), Some(Some(r))) = (verdict.is_binary(), rc) {
                exact += 1;
                if b != (r == 2) {
                    return Err(format!(
                        "verdict {b} but exact complexity {r} (order {})",
                        h.order()
                    ));
                }
            }
        }
        Ok(())
    })?;
    Ok(format!("{trials} actions, {witnesses} witnesses re-checked, {exact} verdicts compared with exact complexity"))
}
