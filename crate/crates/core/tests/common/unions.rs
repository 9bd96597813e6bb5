//! Relational complexity of disjoint unions of small transitive actions.

use binact::group::{subgroups_up_to_conjugacy, Action};
use binact::relcomplex::{rc_exact, reduce_union};
use binact::{Bounds, PermGroup};
use rand::seq::SliceRandom;
use rand::Rng;

use super::*;

const MAX_POINTS: usize = 20;

fn bounds() -> Bounds {
    Bounds {
        exhaustive_points: MAX_POINTS,
        ..Bounds::default()
    }
}

fn rc(parts: &[&Action]) -> usize {
    let owned: Vec<Action> = parts.iter().map(|a| (*a).clone()).collect();
    let action = if owned.len() == 1 {
        owned[0].clone()
    } else {
        Action::union(owned).unwrap()
    };
    rc_exact(&action, &bounds()).unwrap().exact.unwrap_or(2)
}

struct Pool {
    transitive: Vec<Action>,
    regular: Action,
    point: Action,
}

fn pool(g: &PermGroup) -> Pool {
    let b = bounds();
    let transitive = subgroups_up_to_conjugacy(g, &b)
        .unwrap()
        .iter()
        .filter(|h| g.order() / h.order() <= 12)
        .map(|h| Action::coset(g, h, &b).unwrap())
        .collect();
    Pool {
        transitive,
        regular: Action::regular(g, &b).unwrap(),
        point: Action::trivial(g, &b).unwrap(),
    }
}

/// For random `X`, `Y` built from transitive pieces: a repeated orbit of
/// `Y`, a free orbit or a fixed point leave the complexity unchanged,
/// `RC(Y) ≤ RC(X ⊔ Y)`, and the reduction keeps the complexity.
pub fn union_equalities(trials: usize) -> Outcome {
    let groups = [
        PermGroup::symmetric(3),
        PermGroup::symmetric(4),
        PermGroup::alternating(4),
        group(4, &["(1,2,3,4)", "(1,3)"]),
    ];
    let pools: Vec<Pool> = groups.iter().map(pool).collect();
    let b = bounds();
    let mut rng = rng(7);
    let mut values = std::collections::BTreeSet::new();
    run_trials(trials, &mut rng, |_, rng| {
        let pool = &pools[rng.gen_range(0..pools.len())];
        let (x, y) = loop {
            let x: Vec<&Action> = (0..rng.gen_range(1..=2))
                .map(|_| pool.transitive.choose(rng).unwrap())
                .collect();
            let y = pool.transitive.choose(rng).unwrap();
            let points: usize = x.iter().map(|a| a.points()).sum::<usize>() + 2 * y.points();
            if points <= MAX_POINTS {
                break (x, y);
            }
        };
        let xy: Vec<&Action> = x.iter().copied().chain([y]).collect();
        let xyy: Vec<&Action> = xy.iter().copied().chain([y]).collect();
        let (r_xy, r_xyy, r_y) = (rc(&xy), rc(&xyy), rc(&[y]));
        values.insert(r_xy);
        if r_xy != r_xyy {
            return Err(format!(
                "RC(X+Y) = {r_xy} but RC(X+Y+Y) = {r_xyy} for {}",
                y.describe()
            ));
        }
        if r_y > r_xy {
            return Err(format!("RC(Y) = {r_y} exceeds RC(X+Y) = {r_xy}"));
        }
        if y.points() + pool.regular.points() <= MAX_POINTS {
            let r = rc(&[&pool.regular, y]);
            if r != r_y {
                return Err(format!(
                    "free orbit changes RC({}) from {r_y} to {r}",
                    y.describe()
                ));
            }
        }
        let r = rc(&[&pool.point, y]);
        if r != r_y {
            return Err(format!(
                "fixed point changes RC({}) from {r_y} to {r}",
                y.describe()
            ));
        }
        let owned: Vec<Action> = xyy.iter().map(|a| (*a).clone()).collect();
        let red = reduce_union(&owned, &b).unwrap();
        match red.rc_check {
            Some((before, after)) if before == after && before == r_xyy => Ok(()),
            other => Err(format!("reduction check {other:?}, expected RC {r_xyy}")),
        }
    })?;
    Ok(format!("{trials} unions, complexities seen {values:?}"))
}
