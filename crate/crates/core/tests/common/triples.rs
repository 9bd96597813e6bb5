//! The three improvability conditions for `h1 h2 h3 = 1`, each computed by
//! brute force over element sets, agree with one another and with
//! `triple_improvable`.

use std::collections::HashSet;

use binact::group::conjugator;
use binact::relcomplex::triple_improvable;
use binact::{Bounds, PermGroup, Permutation};
use rand::Rng;

use super::*;

fn meet(a: &HashSet<Permutation>, b: &HashSet<Permutation>) -> Vec<Permutation> {
    a.intersection(b).cloned().collect()
}

/// `[c1, c2, c3]` for the triple, where condition `i` keeps `h_i` and asks
/// for the other two in the intersections with `H_i`.
fn conditions(h: [&Permutation; 3], sets: [&HashSet<Permutation>; 3]) -> [bool; 3] {
    let [h1, h2, h3] = h;
    let [s1, s2, s3] = sets;
    let c1 = meet(s1, s2).iter().any(|x| {
        let h3p = mul(h1, x).inverse();
        s1.contains(&h3p) && s3.contains(&h3p)
    });
    let c2 = meet(s1, s2).iter().any(|y| {
        let h3p = mul(y, h2).inverse();
        s2.contains(&h3p) && s3.contains(&h3p)
    });
    let c3 = meet(s1, s3).iter().any(|z| {
        let h2p = mul(&z.inverse(), &h3.inverse());
        s2.contains(&h2p) && s3.contains(&h2p)
    });
    [c1, c2, c3]
}

fn small_subgroup<R: Rng>(
    g: &PermGroup,
    extra: Option<&Permutation>,
    rng: &mut R,
) -> Option<PermGroup> {
    let mut gens = vec![g.random_element(rng)];
    if rng.gen_bool(0.5) {
        gens.push(g.random_element(rng));
    }
    gens.extend(extra.cloned());
    let h = PermGroup::generate(g.degree(), gens).unwrap();
    (h.order() <= 360).then_some(h)
}

/// Draws `H1, H2` and `h1, h2`, then an `H3` holding `h3 = (h1 h2)⁻¹`:
/// a conjugate of `H1` when one contains `h3`, otherwise a random
/// subgroup through `h3`.
fn draw<R: Rng>(
    g: &PermGroup,
    bounds: &Bounds,
    rng: &mut R,
) -> Option<([Permutation; 3], [PermGroup; 3])> {
    let h1g = small_subgroup(g, None, rng)?;
    let h2g = if rng.gen_bool(0.6) {
        h1g.conjugate_by(&g.random_element(rng))
    } else {
        small_subgroup(g, None, rng)?
    };
    let h1 = h1g.random_element(rng);
    let h2 = h2g.random_element(rng);
    let h3 = mul(&h1, &h2).inverse();
    let via_conjugate = elements(&h1g)
        .into_iter()
        .filter(|y| y.cycle_type() == h3.cycle_type())
        .find_map(|y| conjugator(g, &y, &h3, bounds).unwrap());
    let h3g = match via_conjugate {
        Some(tau) if rng.gen_bool(0.8) => h1g.conjugate_by(&tau),
        _ => small_subgroup(g, Some(&h3), rng)?,
    };
    Some(([h1, h2, h3], [h1g, h2g, h3g]))
}

pub fn improvability_symmetric(trials: usize) -> Outcome {
    let bounds = Bounds::default();
    let groups = [
        PermGroup::symmetric(4),
        PermGroup::alternating(5),
        PermGroup::symmetric(5),
        PermGroup::alternating(6),
    ];
    let mut rng = rng(4);
    let mut failing = 0;
    run_trials(trials, &mut rng, |_, rng| {
        let g = &groups[rng.gen_range(0..groups.len())];
        let (h, hs) = loop {
            if let Some(d) = draw(g, &bounds, rng) {
                break d;
            }
        };
        for (x, hx) in h.iter().zip(&hs) {
            if !hx.contains(x) {
                return Err(format!("drawn element {x} is not in its subgroup"));
            }
        }
        let sets = [
            element_set(&hs[0]),
            element_set(&hs[1]),
            element_set(&hs[2]),
        ];
        let c = conditions([&h[0], &h[1], &h[2]], [&sets[0], &sets[1], &sets[2]]);
        let lib =
            triple_improvable([&h[0], &h[1], &h[2]], [&hs[0], &hs[1], &hs[2]], &bounds).unwrap();
        if c[0] != c[1] || c[1] != c[2] || c[0] != lib {
            return Err(format!(
                "conditions {c:?}, library {lib} for h = ({}, {}, {})",
                h[0], h[1], h[2]
            ));
        }
        if !lib {
            failing += 1;
        }
        Ok(())
    })?;
    if failing == 0 {
        return Err("every sampled triple was improvable".into());
    }
    Ok(format!("{trials} triples, {failing} not improvable"))
}
