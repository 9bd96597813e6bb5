//! Witness constructions: optimal triples, the subset criterion, fixity pairs
//! and component groups of class graphs.

use std::collections::HashSet;

use super::witness::{NonBinaryWitness, WitnessKind};
use crate::bounds::Bounds;
use crate::classgraph::build_gamma;
use crate::error::{Error, Result};
use crate::group::{
    conjugator, fixed_set, fixity_profile, max_fixity_classes, Action, Family, FixityOrder,
    PermGroup,
};
use crate::perm::{gcd, Permutation};

/// `t[i]` maps point 0 to point `i`. Requires a transitive action.
pub fn transversal(action: &Action) -> Result<Vec<Permutation>> {
    if let Some(c) = action.as_coset() {
        return Ok(c.representatives().to_vec());
    }
    let m = action.points();
    let gens = action.group().generators();
    let images: Vec<Permutation> = gens.iter().map(|g| action.image_of(g)).collect();
    let mut t: Vec<Option<Permutation>> = vec![None; m];
    t[0] = Some(Permutation::identity(action.group().degree()));
    let mut queue = vec![0];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for (g, img) in gens.iter().zip(&images) {
            let y = img.apply(x);
            if t[y].is_none() {
                t[y] = Some(t[x].as_ref().unwrap().mul(g));
                queue.push(y);
            }
        }
        i += 1;
    }
    t.into_iter()
        .map(|x| x.ok_or_else(|| Error::Precondition("action is not transitive".into())))
        .collect()
}

/// Whether `⟨x⟩` and `⟨y⟩` are conjugate in `group`.
pub fn rationally_conjugate(
    group: &PermGroup,
    x: &Permutation,
    y: &Permutation,
    bounds: &Bounds,
) -> Result<bool> {
    let ord = x.order();
    if ord != y.order() || x.cycle_type() != y.cycle_type() {
        return Ok(false);
    }
    if group.family() == Family::Symmetric {
        return Ok(true);
    }
    for k in 1..=ord {
        if gcd(k, ord) == 1 && conjugator(group, &x.power(k as i64), y, bounds)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

fn check_in(group: &PermGroup, g: &Permutation, name: &str) -> Result<()> {
    if !group.contains(g) {
        return Err(Error::NotInGroup(format!("{name} = {g}")));
    }
    Ok(())
}

/// Whether some `h2' ∈ H2 ∩ H1` has `(h1 h2')⁻¹ ∈ H3 ∩ H1`.
pub fn triple_improvable(
    h: [&Permutation; 3],
    groups: [&PermGroup; 3],
    bounds: &Bounds,
) -> Result<bool> {
    let [h1, h2, h3] = h;
    let [g1, g2, g3] = groups;
    if !h1.mul(h2).mul(h3).is_identity() {
        return Err(Error::Precondition(format!(
            "h1 h2 h3 = {} is not the identity",
            h1.mul(h2).mul(h3)
        )));
    }
    check_in(g1, h1, "h1")?;
    check_in(g2, h2, "h2")?;
    check_in(g3, h3, "h3")?;
    let (small, large) = if g1.order() <= g2.order() {
        (g1, g2)
    } else {
        (g2, g1)
    };
    for x in small.elements_iter(bounds.elements)? {
        if !large.contains(&x) {
            continue;
        }
        let h3p = h1.mul(&x).inverse();
        if g3.contains(&h3p) && g1.contains(&h3p) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Searches conjugates `H2 = H^σ`, `H3 = H^τ` of the point stabilizer `H`
/// for a triple that cannot be improved.
pub fn triple_criterion_search(
    action: &Action,
    bounds: &Bounds,
) -> Result<Option<NonBinaryWitness>> {
    let m = action.points();
    if m > bounds.triple_transversal {
        return Err(Error::bound(
            "triple search transversal",
            m as u64,
            bounds.triple_transversal as u64,
        ));
    }
    let t = transversal(action)?;
    let h = action.point_stabilizer(0)?;
    let hsq = h.order().saturating_mul(h.order());
    if hsq > bounds.triple_pairs {
        return Err(Error::bound(
            "triple search element pairs",
            hsq,
            bounds.triple_pairs,
        ));
    }
    let h_elems = h.elements(bounds.elements)?;
    let h_image = PermGroup::generate(
        m,
        h.generators().iter().map(|g| action.image_of(g)).collect(),
    )?;
    // α2 up to the action of H
    let mut reps: Vec<usize> = h_image
        .orbits()
        .into_iter()
        .map(|o| o[0])
        .filter(|&a| a != 0)
        .collect();
    reps.sort_unstable();
    for a2 in reps {
        let h2 = h.conjugate_by(&t[a2]);
        let h12: Vec<&Permutation> = h_elems.iter().filter(|x| h2.contains(x)).collect();
        for a3 in 0..m {
            if a3 == 0 || a3 == a2 {
                continue;
            }
            let tau = &t[a3];
            let h3 = h.conjugate_by(tau);
            let h3_elems: Vec<Permutation> = h_elems.iter().map(|x| x.conj(tau)).collect();
            let h13: Vec<&Permutation> = h_elems.iter().filter(|x| h3.contains(x)).collect();
            let improvable: HashSet<Permutation> = h13
                .iter()
                .flat_map(|x| h12.iter().map(move |y| x.mul(y)))
                .collect();
            for h1 in &h_elems {
                if improvable.contains(h1) {
                    continue;
                }
                let x = h3_elems.iter().find(|x| h2.contains(&x.inverse().mul(h1)));
                if let Some(x) = x {
                    let kind = WitnessKind::TripleCriterion {
                        h1: h1.clone(),
                        h2: h1.inverse().mul(x),
                        h3: x.inverse(),
                        sigma: t[a2].clone(),
                        tau: tau.clone(),
                    };
                    return NonBinaryWitness::new(kind, action).map(Some);
                }
            }
        }
    }
    Ok(None)
}

/// The construction behind the fixity criterion, with its hypotheses
/// checked.
#[derive(Clone, Debug)]
pub struct FixityData {
    pub p: u64,
    pub r: usize,
    pub r_prime: usize,
    pub lambda: Vec<usize>,
    /// `g` on `Fix(gh⁻¹)`, identity elsewhere; as a permutation of `Ω`.
    pub tau: Permutation,
    /// `g` on `Fix(h)`.
    pub eta1: Permutation,
    /// `h` on `Fix(g)`.
    pub eta2: Permutation,
}

fn prime_power_base(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    (m == 1).then_some(p)
}

fn restricted(img: &Permutation, on: &[usize]) -> Permutation {
    let mut images: Vec<usize> = (0..img.degree()).collect();
    for &x in on {
        images[x] = img.apply(x);
    }
    Permutation::from_images(images).expect("restriction to a stable set")
}

/// Checks the hypotheses for `g`, `h` and builds `Λ`, `τ`, `η₁`, `η₂`;
/// the error string names the first failed hypothesis.
pub fn fixity_hypotheses(
    action: &Action,
    g: &Permutation,
    h: &Permutation,
    bounds: &Bounds,
) -> std::result::Result<FixityData, String> {
    let group = action.group();
    for (name, x) in [("g", g), ("h", h)] {
        if x.degree() != group.degree() || !group.contains(x) {
            return Err(format!("{name} = {x} is not in the group"));
        }
    }
    let p = prime_power_base(g.order()).ok_or_else(|| format!("g = {g} is not a p-element"))?;
    if prime_power_base(h.order()) != Some(p) {
        return Err(format!("h = {h} is not a {p}-element"));
    }
    if !g.commutes_with(h) {
        return Err("g and h do not commute".into());
    }
    let d = g.mul(&h.inverse());
    if d.is_identity() {
        return Err("g = h, so Fix(K) = Fix(g)".into());
    }
    let conj =
        |x: &Permutation| rationally_conjugate(group, g, x, bounds).map_err(|e| e.to_string());
    if !conj(h)? {
        return Err("<h> is not conjugate to <g>".into());
    }
    if !conj(&d)? {
        return Err("<gh^-1> is not conjugate to <g>".into());
    }
    let (_, max) =
        fixity_profile(action, p, FixityOrder::Exact, bounds).map_err(|e| e.to_string())?;
    let ig = action.image_of(g);
    let ih = action.image_of(h);
    let a = ig.fixed_points();
    if a.len() != max {
        return Err(format!(
            "g fixes {} points but the maximal {p}-fixity is {max}",
            a.len()
        ));
    }
    let b = ih.fixed_points();
    let c = fixed_set(action, &d);
    let fk: Vec<usize> = a.iter().copied().filter(|x| b.contains(x)).collect();
    let (r, r_prime) = (a.len(), fk.len());
    if r_prime >= r {
        return Err(format!("|Fix(K)| = {r_prime} is not below |Fix(g)| = {r}"));
    }
    if b.len() != r || c.len() != r {
        return Err("fixities of g, h, gh^-1 differ".into());
    }
    let mut lambda: Vec<usize> = a.iter().chain(&b).chain(&c).copied().collect();
    lambda.sort_unstable();
    lambda.dedup();
    if lambda.len() != 3 * (r - r_prime) + r_prime || lambda.len() <= 2 {
        return Err(format!(
            "|Λ| = {} does not match 3(r-r')+r' > 2",
            lambda.len()
        ));
    }
    Ok(FixityData {
        p,
        r,
        r_prime,
        tau: restricted(&ig, &c),
        eta1: restricted(&ig, &b),
        eta2: restricted(&ih, &a),
        lambda,
    })
}

fn induced(action: &Action, lambda: &[usize], pi: &Permutation) -> bool {
    let dst: Vec<usize> = lambda.iter().map(|&x| pi.apply(x)).collect();
    action.image_group().transporter(lambda, &dst).is_some()
}

/// Checks the conditions on `τ` and the `η_i` (given as permutations of
/// `Ω` supported in `Λ`) and returns a witness when `τ ∉ G^Λ`.
pub fn subset_criterion(
    action: &Action,
    lambda: &[usize],
    tau: &Permutation,
    etas: &[Permutation],
) -> Result<Option<NonBinaryWitness>> {
    let m = action.points();
    let mut lambda = lambda.to_vec();
    lambda.sort_unstable();
    lambda.dedup();
    if lambda.len() <= 2 {
        return Err(Error::Precondition(format!(
            "|Λ| = {} is not above 2",
            lambda.len()
        )));
    }
    if let Some(&x) = lambda.iter().find(|&&x| x >= m) {
        return Err(Error::PointOutOfRange {
            point: x + 1,
            degree: m,
        });
    }
    let mut in_lambda = vec![false; m];
    for &x in &lambda {
        in_lambda[x] = true;
    }
    for pi in std::iter::once(tau).chain(etas) {
        if pi.degree() != m {
            return Err(Error::DegreeMismatch(m, pi.degree()));
        }
        if (0..m).any(|x| !in_lambda[x] && pi.apply(x) != x) {
            return Err(Error::Precondition(format!("{pi} moves points outside Λ")));
        }
    }
    let tau_supp = tau.support();
    for (i, eta) in etas.iter().enumerate() {
        if eta.support().iter().any(|x| tau_supp.contains(x)) {
            return Err(Error::Precondition(format!(
                "supports of τ and η{} meet",
                i + 1
            )));
        }
    }
    if let Some(&x) = lambda
        .iter()
        .find(|&&x| etas.iter().all(|e| e.apply(x) != x))
    {
        return Err(Error::Precondition(format!(
            "point {} is fixed by no η",
            x + 1
        )));
    }
    for (i, eta) in etas.iter().enumerate() {
        if !induced(action, &lambda, &tau.mul(eta)) {
            return Err(Error::Precondition(format!(
                "τη{} is not induced by G",
                i + 1
            )));
        }
    }
    if induced(action, &lambda, tau) {
        return Ok(None);
    }
    let kind = WitnessKind::Subset {
        lambda,
        tau: tau.clone(),
        etas: etas.to_vec(),
    };
    NonBinaryWitness::new(kind, action).map(Some)
}

pub fn fixity_criterion(
    action: &Action,
    g: &Permutation,
    h: &Permutation,
    bounds: &Bounds,
) -> Result<Option<NonBinaryWitness>> {
    let data = match fixity_hypotheses(action, g, h, bounds) {
        Ok(d) => d,
        Err(why) => {
            log::debug!("fixity criterion not applicable to ({g}, {h}): {why}");
            return Ok(None);
        }
    };
    let etas = [data.eta1.clone(), data.eta2.clone()];
    match subset_criterion(action, &data.lambda, &data.tau, &etas)? {
        Some(_) => {
            let kind = WitnessKind::Fixity {
                g: g.clone(),
                h: h.clone(),
                p: data.p,
            };
            NonBinaryWitness::new(kind, action).map(Some)
        }
        None => Ok(None),
    }
}

/// Looks for a class of maximal `p`-fixity whose graph joins an element of
/// the point stabilizer `H` to one outside it.
pub fn component_criterion(
    action: &Action,
    p: u64,
    bounds: &Bounds,
) -> Result<Option<NonBinaryWitness>> {
    if !action.is_transitive() {
        return Err(Error::Precondition("action is not transitive".into()));
    }
    let h = action.point_stabilizer(0)?;
    if p < 2 || h.order() % p != 0 {
        return Err(Error::Precondition(format!(
            "{p} does not divide |H| = {}",
            h.order()
        )));
    }
    let in_h = |x: &Permutation| action.image_of(x).apply(0) == 0;
    for class in max_fixity_classes(action, p, FixityOrder::Exact, bounds)? {
        let Some(g) = class.elements.iter().find(|x| in_h(x)).cloned() else {
            continue;
        };
        let graph = build_gamma(&class, bounds)?;
        let start = graph.vertex_id(&g).expect("g is in the class");
        let mut seen = vec![false; graph.vertex_count()];
        seen[start] = true;
        let mut comp = vec![start];
        let mut i = 0;
        while i < comp.len() {
            for &w in graph.neighbors(comp[i]) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    comp.push(w as usize);
                }
            }
            i += 1;
        }
        let inside: Vec<bool> = comp.iter().map(|&v| in_h(graph.vertex(v))).collect();
        if inside.iter().all(|&x| x) {
            continue;
        }
        let elems: Vec<Permutation> = comp.iter().map(|&v| graph.vertex(v).clone()).collect();
        let cg = PermGroup::from_elements(g.degree(), &elems)?;
        for (&u, _) in comp.iter().zip(&inside).filter(|(_, &ins)| ins) {
            for &v in graph.neighbors(u) {
                let (eu, ev) = (graph.vertex(u), graph.vertex(v as usize));
                if in_h(ev) {
                    continue;
                }
                if fixity_criterion(action, eu, ev, bounds)?.is_some() {
                    let kind = WitnessKind::ComponentGroup {
                        class_rep: class.representative.clone(),
                        g: g.clone(),
                        component_generators: cg.generators().to_vec(),
                        component_order: cg.order(),
                        edge_in: eu.clone(),
                        edge_out: ev.clone(),
                        p,
                    };
                    return NonBinaryWitness::new(kind, action).map(Some);
                }
            }
        }
    }
    Ok(None)
}
