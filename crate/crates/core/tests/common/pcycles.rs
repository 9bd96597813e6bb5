//! Facts about p-cycles: overlapping cycles generate groups of even order,
//! odd-order groups keep their p-cycles apart, and cyclic subgroups
//! generated by p-cycles are conjugate in the alternating group.

use binact::relcomplex::rationally_conjugate;
use binact::{Bounds, PermGroup, Permutation};
use rand::seq::SliceRandom;
use rand::Rng;

use super::*;

const PRIMES: [usize; 3] = [3, 5, 7];

/// Two p-cycles with `S ∩ T`, `S \ T`, `T \ S` all nonempty generate a
/// group of even order; two nonabelian full p-cycles in `A_p` likewise.
pub fn overlapping_cycles_even(trials: usize) -> Outcome {
    let mut rng = rng(1);
    let mut full = 0;
    run_trials(trials, &mut rng, |_, rng| {
        let p = *PRIMES.choose(rng).unwrap();
        let n = rng.gen_range(p + 1..=12);
        let (s, t) = loop {
            let s = random_cycle(n, p, rng);
            let t = random_cycle(n, p, rng);
            let (a, b) = (support_set(&s), support_set(&t));
            if a.intersection(&b).next().is_some()
                && a.difference(&b).next().is_some()
                && b.difference(&a).next().is_some()
            {
                break (s, t);
            }
        };
        let k = PermGroup::generate(n, vec![s.clone(), t.clone()]).unwrap();
        if !k.order().is_multiple_of(2) {
            return Err(format!("<{s}, {t}> has odd order {}", k.order()));
        }
        Ok(())
    })?;
    run_trials(trials, &mut rng, |_, rng| {
        let p = *[5, 7].choose(rng).unwrap();
        let s = random_cycle(p, p, rng);
        let t = random_cycle(p, p, rng);
        if s.commutes_with(&t) {
            return Ok(());
        }
        full += 1;
        let k = PermGroup::generate(p, vec![s.clone(), t.clone()]).unwrap();
        if !k.order().is_multiple_of(2) {
            return Err(format!("nonabelian <{s}, {t}> has odd order {}", k.order()));
        }
        Ok(())
    })?;
    Ok(format!(
        "{trials} overlapping pairs, {full} nonabelian full-support pairs"
    ))
}

fn odd_order_bases() -> Vec<PermGroup> {
    vec![
        group(
            9,
            &["(1,2,3)", "(4,5,6)", "(7,8,9)", "(1,4,7)(2,5,8)(3,6,9)"],
        ),
        group(7, &["(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)"]),
        group(
            11,
            &["(1,2,3,4,5,6,7,8,9,10,11)", "(2,4,10,6,5)(3,7,8,11,9)"],
        ),
        group(11, &["(1,2,3,4,5)", "(6,7,8)", "(9,10,11)"]),
        group(
            12,
            &["(1,2,3)(4,5,6)", "(7,8,9)", "(10,11,12)", "(1,2,3)(7,8,9)"],
        ),
    ]
}

fn prime_cycle_length(g: &Permutation) -> Option<usize> {
    let cycles = g.cycles();
    match cycles.as_slice() {
        [c] if PRIMES.contains(&c.len()) || [11, 13].contains(&c.len()) => Some(c.len()),
        _ => None,
    }
}

/// In an odd-order subgroup any two p-cycles have disjoint supports or
/// generate the same subgroup, and so commute.
pub fn odd_order_cycles_split(trials: usize) -> Outcome {
    let bases = odd_order_bases();
    let mut rng = rng(2);
    let mut overlapping_pairs = 0usize;
    run_trials(trials, &mut rng, |_, rng| {
        let base = bases.choose(rng).unwrap();
        let n = base.degree();
        let sigma = random_perm(n, rng);
        let conj = base.conjugate_by(&sigma);
        let k = if rng.gen_bool(0.5) {
            conj
        } else {
            let x = conj.random_element(rng);
            let y = conj.random_element(rng);
            PermGroup::generate(n, vec![x, y]).unwrap()
        };
        assert!(k.order() % 2 == 1, "base groups have odd order");
        let cycles: Vec<Permutation> = elements(&k)
            .into_iter()
            .filter(|g| prime_cycle_length(g).is_some())
            .collect();
        for (i, s) in cycles.iter().enumerate() {
            for t in &cycles[i + 1..] {
                let disjoint = support_set(s).is_disjoint(&support_set(t));
                if !disjoint {
                    overlapping_pairs += 1;
                    if !powers(s).contains(t) {
                        return Err(format!(
                            "{s} and {t} overlap in an odd-order group of order {}",
                            k.order()
                        ));
                    }
                }
                if !s.commutes_with(t) {
                    return Err(format!("{s} and {t} do not commute"));
                }
            }
        }
        Ok(())
    })?;
    if overlapping_pairs == 0 {
        return Err("no overlapping pair was ever sampled".into());
    }
    Ok(format!(
        "{trials} odd-order subgroups, {overlapping_pairs} same-support pairs"
    ))
}

/// Sends the cycle of `s` onto that of `u` point by point, and the fixed
/// points of `s` in order onto those of `u`.
fn aligning(s: &Permutation, u: &Permutation) -> Permutation {
    let n = s.degree();
    let (cs, cu) = (&s.cycles()[0], &u.cycles()[0]);
    let mut images = vec![0; n];
    for (a, b) in cs.iter().zip(cu) {
        images[*a] = *b;
    }
    for (a, b) in s.fixed_points().into_iter().zip(u.fixed_points()) {
        images[a] = b;
    }
    Permutation::from_images(images).unwrap()
}

/// For p odd, some even permutation carries `<s>` onto `<t>`; found by
/// choosing the power of `t` to align with, as well as through the
/// library's conjugacy test.
pub fn pcycle_subgroups_conjugate(trials: usize) -> Outcome {
    let bounds = Bounds::default();
    let mut rng = rng(3);
    run_trials(trials, &mut rng, |_, rng| {
        let p = *PRIMES.choose(rng).unwrap();
        let n = rng.gen_range(p..=10);
        let s = random_cycle(n, p, rng);
        let t = random_cycle(n, p, rng);
        let found = (1..p as i64).find_map(|k| {
            let u = t.power(k);
            let sigma = aligning(&s, &u);
            (sigma.parity() == binact::perm::Parity::Even).then_some((sigma, u))
        });
        let (sigma, u) =
            found.ok_or_else(|| format!("no even conjugator from <{s}> to <{t}> in A_{n}"))?;
        if s.conjugate(&sigma).unwrap() != u {
            return Err(format!("alignment of {s} onto {u} is wrong"));
        }
        let an = PermGroup::alternating(n);
        if !rationally_conjugate(&an, &s, &t, &bounds).unwrap() {
            return Err(format!(
                "library says <{s}> and <{t}> are not conjugate in A_{n}"
            ));
        }
        Ok(())
    })?;
    Ok(format!("{trials} pairs of p-cycles"))
}
