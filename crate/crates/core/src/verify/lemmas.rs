use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::json;

use super::{Provenance, VerificationResult};
use crate::bounds::Bounds;
use crate::classgraph::{
    build_gamma, component_group, connected_components, definitional_edge, quad_edge_oracle,
};
use crate::error::{Error, Result};
use crate::group::{conjugacy_class, splits_in_alternating, PermGroup};
use crate::perm::{Parity, Permutation};

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// Product of disjoint cycles of the given lengths on consecutive points.
fn consecutive_cycles(degree: usize, lengths: &[usize]) -> Result<Permutation> {
    let mut cycles = Vec::new();
    let mut next = 0;
    for &l in lengths {
        cycles.push((next..next + l).collect::<Vec<_>>());
        next += l;
    }
    Permutation::from_cycles(degree, &cycles)
}

/// Size of the class of the given cycle type (fixed points included) in
/// `S_n`, or in `A_n` when `alternating` is set.
pub(crate) fn class_size_by_type(cycle_type: &[usize], alternating: bool) -> u64 {
    let n: usize = cycle_type.iter().sum();
    let mut centralizer: u64 = 1;
    let mut lengths = cycle_type.to_vec();
    lengths.sort_unstable();
    let mut i = 0;
    while i < lengths.len() {
        let l = lengths[i];
        let m = lengths[i..].iter().take_while(|&&x| x == l).count();
        centralizer *= (l as u64).pow(m as u32) * (1..=m as u64).product::<u64>();
        i += m;
    }
    let size = (1..=n as u64).product::<u64>() / centralizer;
    if alternating && splits_in_alternating(cycle_type) {
        size / 2
    } else {
        size
    }
}

/// Edge test for a class described by its cycle type, valid when that
/// class does not split in the alternating group.
fn edge_by_type(x: &Permutation, y: &Permutation, cycle_type: &[usize]) -> bool {
    debug_assert!(!splits_in_alternating(cycle_type));
    let in_class = |g: &Permutation| g.parity() == Parity::Even && g.cycle_type() == cycle_type;
    if x == y || !x.commutes_with(y) || !in_class(x) || !in_class(y) {
        return false;
    }
    let d = x.compose(&y.inverse()).expect("same degree");
    in_class(&d) || in_class(&d.inverse())
}

fn power_of(g: &Permutation, c: &Permutation) -> bool {
    (0..c.order() as i64).any(|e| &c.power(e) == g)
}

/// Components of `Γ(C)` for the class of `k` disjoint quads in `A_n`: one
/// when `n = 4k` or `n ≥ 4k+2`, and `n` when `n = 4k+1`, one of which is
/// `C ∩ A_{n-1}`.
pub fn verify_component_counts(n: usize, k: usize, bounds: &Bounds) -> Result<VerificationResult> {
    let start = Instant::now();
    if k == 0 || n < 4 * k {
        return Err(Error::Precondition(format!(
            "need k ≥ 1 and n ≥ 4k, got n={n}, k={k}"
        )));
    }
    let g = PermGroup::alternating(n);
    let rep = consecutive_cycles(n, &vec![2; 2 * k])?;
    let class = conjugacy_class(&g, &rep, bounds)?;
    let graph = build_gamma(&class, bounds)?;
    let comps = connected_components(&graph);
    let name = format!("components-A{n}-2^{}", 2 * k);
    if n == 4 * k + 1 {
        // vertices fixing the last point
        let fixing: Vec<usize> = (0..graph.vertex_count())
            .filter(|&v| graph.vertex(v).apply(n - 1) == n - 1)
            .collect();
        let found = comps.contains(&fixing);
        return Ok(VerificationResult::new(
            name,
            json!({"components": n, "component_equal_to_C_cap_A_n-1": true}),
            json!({"components": comps.len(), "component_equal_to_C_cap_A_n-1": found}),
            Provenance::Paper,
            start,
        ));
    }
    Ok(VerificationResult::new(
        name,
        json!({"components": 1}),
        json!({"components": comps.len()}),
        Provenance::Paper,
        start,
    ))
}

/// `Γ(C)` for `C` the class of `(123)(456)(789)` in `A_9` is connected; the
/// vertex count is compared with the cycle-type formula.
pub fn verify_three_cycle_components(bounds: &Bounds) -> Result<VerificationResult> {
    let start = Instant::now();
    let g = PermGroup::alternating(9);
    let rep = consecutive_cycles(9, &[3, 3, 3])?;
    let class = conjugacy_class(&g, &rep, bounds)?;
    let graph = build_gamma(&class, bounds)?;
    let expected_vertices = class_size_by_type(&[3, 3, 3], true);
    Ok(VerificationResult::new(
        "components-A9-3^3",
        json!({"vertices": expected_vertices, "components": 1}),
        json!({"vertices": graph.vertex_count(), "components": connected_components(&graph).len()}),
        Provenance::Paper,
        start,
    ))
}

/// All `g ∈ S_p` with `h^g` a power of `h`, for a `p`-cycle `h`, found by
/// aligning the cycle of `h` with the cycle of each power.
fn cyclic_normalizer(h: &Permutation) -> Vec<Permutation> {
    let p = h.degree();
    let c = &h.cycles()[0];
    let mut out = Vec::new();
    for j in 1..p as i64 {
        let d = &h.power(j).cycles()[0];
        for shift in 0..p {
            let mut images = vec![0; p];
            for i in 0..p {
                images[c[i]] = d[(i + shift) % p];
            }
            out.push(Permutation::from_images(images).expect("bijection"));
        }
    }
    out
}

fn normalizes_cyclic(g: &Permutation, h: &Permutation) -> bool {
    let hg = h.conjugate(g).expect("same degree");
    power_of(&hg, h)
}

/// `|N₁ ∩ N₂|` for the normalizers in `S_p` of `⟨h₁⟩` and `⟨h₂⟩`, with
/// `h₁ = (0,1,…,p−1)` and `h₂ = h₁^σ`, `σ = (p−3,p−2,p−1)`.
pub fn verify_normalizer_lemma(p: usize, bounds: &Bounds) -> Result<VerificationResult> {
    let start = Instant::now();
    if !is_prime(p as u64) || !(5..=13).contains(&p) {
        return Err(Error::Precondition(format!(
            "need a prime 5 ≤ p ≤ 13, got {p}"
        )));
    }
    let h1 = consecutive_cycles(p, &[p])?;
    let sigma = Permutation::from_cycles(p, &[vec![p - 3, p - 2, p - 1]])?;
    let h2 = h1.conjugate(&sigma)?;
    let n1 = cyclic_normalizer(&h1);
    let both = n1.iter().filter(|g| normalizes_cyclic(g, &h2)).count() as u64;
    let expected = if p == 5 { 4 } else { 1 };
    let mut computed = json!(both);
    let mut note = format!("|N₁| = {}", n1.len());
    if n1.len() != p * (p - 1) {
        computed = json!({"intersection": both, "normalizer_size": n1.len()});
    }
    // cross-check by scanning S_p where that is affordable
    let sp = PermGroup::symmetric(p);
    if sp.order() <= bounds.elements {
        let scan = sp
            .elements_iter(bounds.elements)?
            .filter(|g| normalizes_cyclic(g, &h1) && normalizes_cyclic(g, &h2))
            .count() as u64;
        note.push_str(&format!("; scan of S_{p} gives {scan}"));
        if scan != both {
            computed = json!({"intersection": both, "scan": scan});
        }
    }
    Ok(VerificationResult::new(
        format!("normalizer-p{p:02}"),
        json!(expected),
        computed,
        Provenance::Paper,
        start,
    )
    .with_note(note))
}

/// The two displayed identities for `h₂ = h₁^σ` and `h₁h₂` (1-based), and
/// that `h₃ = (h₁h₂)⁻¹` is a `p`-cycle.
pub fn verify_h_triple(p: usize) -> Result<VerificationResult> {
    let start = Instant::now();
    if !is_prime(p as u64) || p <= 3 {
        return Err(Error::Precondition(format!("need a prime p > 3, got {p}")));
    }
    let one_based = |v: Vec<usize>| -> Result<Permutation> {
        Permutation::from_cycles(p, &[v.into_iter().map(|x| x - 1).collect()])
    };
    let h1 = one_based((1..=p).collect())?;
    let sigma = one_based(vec![p - 2, p - 1, p])?;
    let h2 = h1.conjugate(&sigma)?;
    let mut h2_shown: Vec<usize> = (1..=p - 3).collect();
    h2_shown.extend([p - 1, p, p - 2]);
    let mut prod_shown: Vec<usize> = (2..=p - 3).step_by(2).collect();
    prod_shown.extend((1..=p - 4).step_by(2));
    prod_shown.extend([p - 1, p - 2, p]);
    let prod = h1.compose(&h2)?;
    let h3 = prod.inverse();
    let h3_is_p_cycle = h3.cycle_type() == vec![p];
    let trivial = h1.compose(&h2)?.compose(&h3)?.is_identity();
    Ok(VerificationResult::new(
        format!("h-triple-p{p:02}"),
        json!({"h2": true, "h1h2": true, "h3_p_cycle": true, "h1h2h3=1": true}),
        json!({
            "h2": h2 == one_based(h2_shown)?,
            "h1h2": prod == one_based(prod_shown)?,
            "h3_p_cycle": h3_is_p_cycle,
            "h1h2h3=1": trivial,
        }),
        Provenance::Paper,
        start,
    )
    .with_note(format!("h1h2 = {prod}")))
}

/// Random `g` of cycle type `p^k` on `k·p` of `n` points, as its cycles.
fn random_p_element<R: Rng + ?Sized>(
    p: usize,
    k: usize,
    n: usize,
    rng: &mut R,
) -> Vec<Permutation> {
    let mut points: Vec<usize> = (0..n).collect();
    points.shuffle(rng);
    points
        .chunks(p)
        .take(k)
        .map(|c| Permutation::from_cycles(n, &[c.to_vec()]).expect("disjoint"))
        .collect()
}

fn product(perms: &[Permutation], degree: usize) -> Permutation {
    perms.iter().fold(Permutation::identity(degree), |acc, c| {
        acc.compose(c).expect("same degree")
    })
}

/// For random `g = c₁⋯c_k` of type `p^k` and each `x ∈ {2,…,p−2}`, the
/// element `h = c₁^x c₂⁻¹⋯c_k⁻¹` commutes with `g`, `gh⁻¹` has type `p^k`
/// and `gh` is a power of `c₁`. Counts failures.
pub fn verify_pcycle_edge_trick<R: Rng + ?Sized>(
    p: usize,
    k: usize,
    n: usize,
    trials: usize,
    rng: &mut R,
) -> Result<VerificationResult> {
    let start = Instant::now();
    let name = format!("pcycle-edge-{p}-{k}-{n:02}");
    if !is_prime(p as u64) || p <= 3 || k == 0 || k * p > n {
        return Err(Error::Precondition(format!(
            "need a prime p > 3 and 1 ≤ kp ≤ n, got p={p}, k={k}, n={n}"
        )));
    }
    if k == 1 {
        return Ok(
            VerificationResult::new(name, json!(0), json!(0), Provenance::Trivial, start)
                .with_note("elements are p-cycles; nothing to check"),
        );
    }
    let mut ty = vec![p; k];
    ty.extend(std::iter::repeat_n(1, n - k * p));
    let mut failures = 0u64;
    let mut checked = 0u64;
    for _ in 0..trials {
        let cs = random_p_element(p, k, n, rng);
        let g = product(&cs, n);
        for x in 2..=p as i64 - 2 {
            let mut parts = vec![cs[0].power(x)];
            parts.extend(cs[1..].iter().map(Permutation::inverse));
            let h = product(&parts, n);
            let quotient = g.compose(&h.inverse())?;
            let gh = g.compose(&h)?;
            let ok = g.commutes_with(&h)
                && h.cycle_type() == ty
                && quotient.cycle_type() == ty
                && power_of(&gh, &cs[0])
                && gh == cs[0].power(1 + x);
            checked += 1;
            if !ok {
                failures += 1;
            }
        }
    }
    Ok(
        VerificationResult::new(name, json!(0), json!(failures), Provenance::Paper, start)
            .with_note(format!("{checked} pairs checked")),
    )
}

/// Samples edges `(g, h)` of `Γ(C)`, `C` the class of type `p^k` in
/// `A_{pk}`, and checks that `(gc, hc⁻¹)` is an edge for the class of type
/// `p^{k+1}` in `A_n`, `c` a random `p`-cycle off `{1,…,pk}`.
pub fn verify_parity_propagation<R: Rng + ?Sized>(
    p: usize,
    k: usize,
    n: usize,
    samples: usize,
    rng: &mut R,
    bounds: &Bounds,
) -> Result<VerificationResult> {
    let start = Instant::now();
    if p.is_multiple_of(2) || !is_prime(p as u64) {
        return Err(Error::Precondition(format!(
            "p must be an odd prime, got {p}"
        )));
    }
    if k < 2 || (k + 1) * p > n {
        return Err(Error::Precondition(format!(
            "need k ≥ 2 and (k+1)p ≤ n, got p={p}, k={k}, n={n}"
        )));
    }
    let m = p * k;
    let class = conjugacy_class(
        &PermGroup::alternating(m),
        &consecutive_cycles(m, &vec![p; k])?,
        bounds,
    )?;
    let graph = build_gamma(&class, bounds)?;
    let with_edges: Vec<usize> = (0..graph.vertex_count())
        .filter(|&v| !graph.neighbors(v).is_empty())
        .collect();
    if with_edges.is_empty() {
        return Err(Error::Precondition("Γ(C) has no edges".into()));
    }
    let mut ty = vec![p; k + 1];
    ty.extend(std::iter::repeat_n(1, n - (k + 1) * p));
    let mut failures = 0u64;
    for _ in 0..samples {
        let v = *with_edges.choose(rng).expect("nonempty");
        let w = *graph.neighbors(v).choose(rng).expect("nonempty") as usize;
        let mut rest: Vec<usize> = (m..n).collect();
        rest.shuffle(rng);
        let c = Permutation::from_cycles(n, &[rest[..p].to_vec()])?;
        let g = graph.vertex(v).extend_to(n)?.compose(&c)?;
        let h = graph.vertex(w).extend_to(n)?.compose(&c.inverse())?;
        if !edge_by_type(&g, &h, &ty) {
            failures += 1;
        }
    }
    Ok(VerificationResult::new(
        format!("parity-propagation-{p}-{k}-{n}"),
        json!(0),
        json!(failures),
        Provenance::Paper,
        start,
    )
    .with_note(format!(
        "{samples} edges sampled from {} vertices",
        graph.vertex_count()
    )))
}

/// `(123)(456) ~ (123)(789)` in `Γ(C)` for type `3²` in `A_9`, and the
/// extended pair with `c = (10,11,12)` is an edge for type `3³` in `A_12`.
pub fn verify_parity_pair(bounds: &Bounds) -> Result<VerificationResult> {
    let start = Instant::now();
    let p9 = |s: &str| Permutation::parse(9, s);
    let g = p9("(1,2,3)(4,5,6)")?;
    let h = p9("(1,2,3)(7,8,9)")?;
    let class = conjugacy_class(&PermGroup::alternating(9), &g, bounds)?;
    let base_edge = definitional_edge(&g, &h, &class);
    let c = Permutation::parse(12, "(10,11,12)")?;
    let g2 = g.extend_to(12)?.compose(&c)?;
    let h2 = h.extend_to(12)?.compose(&c.inverse())?;
    let lifted = edge_by_type(&g2, &h2, &[3, 3, 3, 1, 1, 1]);
    Ok(VerificationResult::new(
        "parity-propagation-pair",
        json!({"edge_in_A9": true, "lifted_edge_in_A12": true}),
        json!({"edge_in_A9": base_edge, "lifted_edge_in_A12": lifted}),
        Provenance::Derived,
        start,
    ))
}

/// `(123)(456) ~ (123)(789) ~ (123)(465)` in `Γ(C)` for the class of
/// `(123)(456)` in `A_n`, and `(123)(456)·(123)(465) = (132)`. Not
/// applicable below 9 points.
pub fn verify_three_cycle_lemma(n: usize, bounds: &Bounds) -> Result<VerificationResult> {
    let start = Instant::now();
    let name = format!("three-cycle-n{n:02}");
    if n < 9 {
        return Ok(VerificationResult::new(
            name,
            json!("not-applicable"),
            json!("not-applicable"),
            Provenance::Trivial,
            start,
        )
        .with_note("the path through (123)(789) needs 9 points"));
    }
    let pn = |s: &str| Permutation::parse(n, s);
    let h1 = pn("(1,2,3)(4,5,6)")?;
    let h2 = pn("(1,2,3)(7,8,9)")?;
    let h3 = pn("(1,2,3)(4,6,5)")?;
    let class = conjugacy_class(&PermGroup::alternating(n), &h1, bounds)?;
    Ok(VerificationResult::new(
        name,
        json!({"h1~h2": true, "h2~h3": true, "h1h3=(1,3,2)": true}),
        json!({
            "h1~h2": definitional_edge(&h1, &h2, &class),
            "h2~h3": definitional_edge(&h2, &h3, &class),
            "h1h3=(1,3,2)": h1.compose(&h3)? == pn("(1,3,2)")?,
        }),
        Provenance::Paper,
        start,
    ))
}

/// No edges among involutions with support of size 6: the class of
/// `(12)(34)(56)` in `S_7` (it lies outside `A_7`).
pub fn verify_quad_negative_control(bounds: &Bounds) -> Result<VerificationResult> {
    let start = Instant::now();
    let s = Permutation::parse(7, "(1,2)(3,4)(5,6)")?;
    let class = conjugacy_class(&PermGroup::symmetric(7), &s, bounds)?;
    let mut oracle_edges = 0u64;
    for (i, x) in class.elements.iter().enumerate() {
        for y in &class.elements[i + 1..] {
            if quad_edge_oracle(x, y, &class)?.is_some() {
                oracle_edges += 1;
            }
        }
    }
    let graph = build_gamma(&class, bounds)?;
    Ok(VerificationResult::new(
        "quads-S7-2^3",
        json!({"oracle_edges": 0, "graph_edges": 0, "in_A7": false}),
        json!({
            "oracle_edges": oracle_edges,
            "graph_edges": graph.edge_count(),
            "in_A7": PermGroup::alternating(7).contains(&s),
        }),
        Provenance::Paper,
        start,
    ))
}

/// `Γ(C)` for the quads of `A_5` is five disjoint triangles, each
/// generating a group of order 4.
pub fn verify_triangles_a5(bounds: &Bounds) -> Result<VerificationResult> {
    let start = Instant::now();
    let class = conjugacy_class(
        &PermGroup::alternating(5),
        &Permutation::parse(5, "(1,2)(3,4)")?,
        bounds,
    )?;
    let graph = build_gamma(&class, bounds)?;
    let comps = connected_components(&graph);
    let sizes: Vec<usize> = comps.iter().map(Vec::len).collect();
    let orders = comps
        .iter()
        .map(|c| component_group(&graph, graph.vertex(c[0])).map(|g| g.order()))
        .collect::<Result<Vec<u64>>>()?;
    Ok(VerificationResult::new(
        "triangles-A5",
        json!({"vertices": 15, "sizes": [3, 3, 3, 3, 3], "group_orders": [4, 4, 4, 4, 4]}),
        json!({"vertices": graph.vertex_count(), "sizes": sizes, "group_orders": orders}),
        Provenance::Paper,
        start,
    ))
}
