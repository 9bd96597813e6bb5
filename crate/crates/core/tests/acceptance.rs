//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always print. A criterion
//! whose expected value disagrees with the computation prints FAIL; the run
//! only aborts when a computed fact it relies on does not hold.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use binact::classgraph::{build_gamma, connected_components, graph_summary, quad_edge_oracle};
use binact::group::{conjugacy_class, Action};
use binact::relcomplex::rc_exact;
use binact::verify::{
    enumerate_binary_actions, pairwise_binary_oracle, standard_s5_subgroups, verify_a6_engines,
    verify_enumeration_a6, verify_h_triple, verify_normalizer_lemma, verify_quad_negative_control,
    verify_triangles_a5,
};
use binact::{group::subgroups_conjugate, Bounds, PermGroup};
use common::*;

struct Line {
    pass: bool,
    detail: String,
}

fn line(pass: bool, detail: impl Into<String>) -> Line {
    Line {
        pass,
        detail: detail.into(),
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    if t > limit {
        return Err(format!("took {t:.1?}, limit {limit:?}"));
    }
    Ok(())
}

fn quad_class(n: usize, quads: usize, bounds: &Bounds) -> binact::group::ConjugacyClass {
    let rep: String = (0..2 * quads)
        .map(|i| format!("({},{})", 2 * i + 1, 2 * i + 2))
        .collect();
    conjugacy_class(&PermGroup::alternating(n), &perm(n, &rep), bounds).unwrap()
}

fn criterion_1(bounds: &Bounds) -> Line {
    let start = Instant::now();
    let graph = build_gamma(&quad_class(5, 1, bounds), bounds).unwrap();
    let summary = graph_summary(&graph, "A5");
    let sizes: Vec<usize> = summary.components.iter().map(|c| c.size).collect();
    let orders: Vec<u64> = summary.components.iter().map(|c| c.group_order).collect();
    let triangles = verify_triangles_a5(bounds).unwrap().pass;
    let ok = summary.vertices == 15 && sizes == [3; 5] && orders == [4; 5] && triangles;
    let time = within(Duration::from_secs(1), start);
    line(
        ok && time.is_ok(),
        format!(
            "{} vertices, component sizes {sizes:?}, groups {orders:?} {}",
            summary.vertices,
            time.err().unwrap_or_default()
        ),
    )
}

/// Components of the class of `quads` products of quads in `A_n`, and
/// whether the component of a vertex fixing the last point is exactly the
/// class elements fixing that point.
fn components(n: usize, quads: usize, bounds: &Bounds) -> (usize, Option<bool>) {
    let graph = build_gamma(&quad_class(n, quads, bounds), bounds).unwrap();
    let comps = connected_components(&graph);
    let last = n - 1;
    let fixing: BTreeSet<usize> = (0..graph.vertex_count())
        .filter(|&v| graph.vertex(v).apply(last) == last)
        .collect();
    let same = fixing.iter().next().map(|first| {
        let comp: BTreeSet<usize> = comps
            .iter()
            .find(|c| c.contains(first))
            .unwrap()
            .iter()
            .copied()
            .collect();
        comp == fixing
    });
    (comps.len(), same)
}

fn criterion_2(bounds: &Bounds) -> Line {
    let start = Instant::now();
    let mut parts = Vec::new();
    let mut ok = true;
    for (n, quads, expected) in [
        (6, 1, 1),
        (7, 1, 1),
        (8, 2, 1),
        (9, 1, 1),
        (9, 2, 9),
        (10, 1, 1),
    ] {
        let (count, last_point) = components(n, quads, bounds);
        ok &= count == expected;
        if expected > 1 {
            ok &= last_point == Some(true);
        }
        parts.push(format!("A{n} 2^{}: {count}", 2 * quads));
    }
    let time = within(Duration::from_secs(60), start);
    line(
        ok && time.is_ok(),
        format!(
            "{}; the 9-component clause holds for type 2^4 in A9 (n = 4k+1 with k = 2), one component being C ∩ A8; type 2^2 in A9 is connected {}",
            parts.join(", "),
            time.err().unwrap_or_default()
        ),
    )
}

fn criterion_3(bounds: &Bounds) -> Line {
    let start = Instant::now();
    let a9 = PermGroup::alternating(9);
    let class = conjugacy_class(&a9, &perm(9, "(1,2,3)(4,5,6)(7,8,9)"), bounds).unwrap();
    // 9! / (3^3 · 3!); repeated cycle lengths, so the class does not split in A9
    let by_type = (1..=9u64).product::<u64>() / (27 * 6);
    let graph = build_gamma(&class, bounds).unwrap();
    let comps = connected_components(&graph).len();
    let time = within(Duration::from_secs(300), start);
    line(
        class.len() as u64 == by_type && by_type == 2240 && comps == 1 && time.is_ok(),
        format!(
            "{} vertices (cycle-type count {by_type}), {comps} component {}",
            class.len(),
            time.err().unwrap_or_default()
        ),
    )
}

fn criterion_4(bounds: &Bounds) -> Line {
    let start = Instant::now();
    let mut cases: Vec<(String, Action, usize)> = Vec::new();
    for d in 3..=6 {
        cases.push((
            format!("S{d}"),
            Action::natural(&PermGroup::symmetric(d)),
            2,
        ));
    }
    for d in [4, 5] {
        cases.push((
            format!("A{d}"),
            Action::natural(&PermGroup::alternating(d)),
            d - 1,
        ));
    }
    let d4 = group(4, &["(1,2,3,4)", "(1,3)"]);
    for (name, g) in [
        ("S3", PermGroup::symmetric(3)),
        ("A4", PermGroup::alternating(4)),
        ("D4", d4),
    ] {
        cases.push((
            format!("{name} regular"),
            Action::regular(&g, bounds).unwrap(),
            2,
        ));
    }
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, action, expected) in &cases {
        let report = rc_exact(action, bounds).unwrap();
        let cert = report
            .certificate
            .as_ref()
            .is_none_or(|c| c.verify(action).unwrap());
        ok &= report.exact == Some(*expected) && cert;
        parts.push(format!("{name} {}", report.exact.unwrap()));
    }
    let time = within(Duration::from_secs(120), start);
    line(
        ok && time.is_ok(),
        format!("{} {}", parts.join(", "), time.err().unwrap_or_default()),
    )
}

fn criterion_5(bounds: &Bounds) -> Line {
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for (p, expected) in [(5usize, 4u64), (7, 1), (11, 1)] {
        let r = verify_normalizer_lemma(p, bounds).unwrap();
        ok &= r.pass && r.computed == serde_json::json!(expected);
        parts.push(format!("p={p}: {}", r.computed));
    }
    // the generic normalizer, for the primes where S_p is small enough
    for (p, expected) in [(5usize, 4u64), (7, 1)] {
        let sp = PermGroup::symmetric(p);
        let cycle: Vec<String> = (1..=p).map(|i| i.to_string()).collect();
        let h1 = perm(p, &format!("({})", cycle.join(",")));
        let sigma = perm(p, &format!("({},{},{})", p - 2, p - 1, p));
        let h2 = h1.conjugate(&sigma).unwrap();
        let n1 = sp
            .normalizer(&PermGroup::generate(p, vec![h1]).unwrap(), bounds)
            .unwrap();
        let n2 = sp
            .normalizer(&PermGroup::generate(p, vec![h2]).unwrap(), bounds)
            .unwrap();
        let both = n1.intersection(&n2, bounds).unwrap().order();
        ok &= both == expected;
        parts.push(format!("generic p={p}: {both}"));
    }
    let time = within(Duration::from_secs(10), start);
    line(
        ok && time.is_ok(),
        format!("{} {}", parts.join(", "), time.err().unwrap_or_default()),
    )
}

/// `h1 h2` from plain image arrays, 1-based, applying `h1` first.
fn product_cycle(p: usize) -> Vec<usize> {
    let h1 = |x: usize| if x == p { 1 } else { x + 1 };
    let mut h2_seq: Vec<usize> = (1..=p - 3).collect();
    h2_seq.extend([p - 1, p, p - 2]);
    let h2 = |x: usize| {
        let i = h2_seq.iter().position(|&y| y == x).unwrap();
        h2_seq[(i + 1) % p]
    };
    let mut cycle = vec![2];
    loop {
        let next = h2(h1(*cycle.last().unwrap()));
        if next == 2 {
            return cycle;
        }
        cycle.push(next);
    }
}

fn criterion_6() -> Line {
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for p in [5, 7, 11, 13] {
        let r = verify_h_triple(p).unwrap();
        let mut shown: Vec<usize> = (2..=p - 3).step_by(2).collect();
        shown.extend((1..=p - 4).step_by(2));
        shown.extend([p - 1, p - 2, p]);
        let direct = product_cycle(p) == shown;
        ok &= r.pass && direct;
        parts.push(format!(
            "p={p} {}",
            if r.pass && direct { "holds" } else { "fails" }
        ));
    }
    ok &= verify_h_triple(3).is_err();
    let time = within(Duration::from_secs(1), start);
    line(
        ok && time.is_ok(),
        format!("{} {}", parts.join(", "), time.err().unwrap_or_default()),
    )
}

fn criterion_7(bounds: &Bounds) -> Line {
    let s5 = PermGroup::symmetric(5);
    let rows = enumerate_binary_actions(&s5, bounds).unwrap();
    let standard = standard_s5_subgroups();
    assert!(
        rows.iter().all(|r| r.verdict.is_binary().is_some()),
        "an S5 class was left undecided"
    );
    assert!(
        rows.iter()
            .filter(|r| r.verdict.is_binary() == Some(false))
            .all(|r| r.witness_checked),
        "an S5 witness failed re-verification"
    );
    let binary: Vec<_> = rows
        .iter()
        .filter(|r| r.verdict.is_binary() == Some(true))
        .collect();
    let mut matched = vec![false; standard.len()];
    let mut extra = Vec::new();
    for r in &binary {
        match standard
            .iter()
            .position(|(_, h)| subgroups_conjugate(&s5, h, &r.subgroup, bounds).unwrap())
        {
            Some(i) => matched[i] = true,
            None => extra.push(r),
        }
    }
    assert!(
        matched.iter().all(|&m| m),
        "a standard subgroup is not binary"
    );
    let v4 = group(5, &["(2,3)(4,5)", "(2,4)(3,5)"]);
    assert_eq!(
        extra.len(),
        1,
        "expected one binary class beyond the standard six"
    );
    assert!(subgroups_conjugate(&s5, &v4, &extra[0].subgroup, bounds).unwrap());
    let action = Action::coset(&s5, &v4, bounds).unwrap();
    assert_eq!(
        pairwise_binary_oracle(&action),
        None,
        "pairwise oracle disagrees on the Klein subgroup"
    );
    line(
        extra.is_empty(),
        format!(
            "{} classes, {} binary: the six standard subgroups plus the normal Klein subgroup {} of S4 fixing 5 (index 30), \
             binary by the search engine and by the pairwise oracle; undecided 0, every witness re-verified",
            rows.len(),
            binary.len(),
            "<(2,3)(4,5),(2,4)(3,5)>",
        ),
    )
}

fn criterion_8(bounds: &Bounds) -> Line {
    let start = Instant::now();
    let enumeration = verify_enumeration_a6(bounds).unwrap();
    let engines = verify_a6_engines(bounds).unwrap();
    let time = within(Duration::from_secs(900), start);
    line(
        enumeration.pass && engines.pass && time.is_ok(),
        format!(
            "binary {}; engine failures {} {}",
            enumeration.computed["binary"],
            engines.computed["failing"],
            time.err().unwrap_or_default()
        ),
    )
}

fn criterion_9() -> Line {
    type Suite = Box<dyn Fn() -> Outcome>;
    let suites: Vec<(&str, Suite)> = vec![
        (
            "p-cycles (1)(2)",
            Box::new(|| pcycles::overlapping_cycles_even(500)),
        ),
        (
            "p-cycles (3)",
            Box::new(|| pcycles::odd_order_cycles_split(200)),
        ),
        (
            "p-cycles (4)",
            Box::new(|| pcycles::pcycle_subgroups_conjugate(200)),
        ),
        (
            "triple symmetry",
            Box::new(|| triples::improvability_symmetric(200)),
        ),
        ("quad oracle", Box::new(relations::quad_oracle_exhaustive)),
        (
            "edge propagation",
            Box::new(|| relations::edge_propagation(200)),
        ),
        (
            "disjoint unions",
            Box::new(|| unions::union_equalities(200)),
        ),
        (
            "witness soundness",
            Box::new(|| relations::witness_soundness(200)),
        ),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, run) in suites {
        match run() {
            Ok(s) => parts.push(format!("{name}: {s}")),
            Err(e) => {
                ok = false;
                parts.push(format!("{name}: COUNTEREXAMPLE {e}"));
            }
        }
    }
    line(ok, format!("seed {SEED}; {}", parts.join("; ")))
}

fn criterion_10(bounds: &Bounds) -> Line {
    let s = perm(7, "(1,2)(3,4)(5,6)");
    let class = conjugacy_class(&PermGroup::symmetric(7), &s, bounds).unwrap();
    let mut oracle_edges = 0;
    for (i, x) in class.elements.iter().enumerate() {
        for y in &class.elements[i + 1..] {
            oracle_edges += quad_edge_oracle(x, y, &class).unwrap().is_some() as usize;
        }
    }
    let graph_edges = build_gamma(&class, bounds).unwrap().edge_count();
    let in_a7 = PermGroup::alternating(7).contains(&s);
    let suite = verify_quad_negative_control(bounds).unwrap().pass;
    line(
        oracle_edges == 0 && graph_edges == 0 && !in_a7 && suite,
        format!(
            "{} involutions of support 6: oracle edges {oracle_edges}, graph edges {graph_edges}; the class is taken in S7 since {s} is odd",
            class.len()
        ),
    )
}

fn main() {
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let bounds = Bounds::default();
    let criteria: Vec<(usize, Box<dyn Fn() -> Line>)> = vec![
        (1, Box::new(|| criterion_1(&bounds))),
        (2, Box::new(|| criterion_2(&bounds))),
        (3, Box::new(|| criterion_3(&bounds))),
        (4, Box::new(|| criterion_4(&bounds))),
        (5, Box::new(|| criterion_5(&bounds))),
        (6, Box::new(criterion_6)),
        (7, Box::new(|| criterion_7(&bounds))),
        (8, Box::new(|| criterion_8(&bounds))),
        (9, Box::new(criterion_9)),
        (10, Box::new(|| criterion_10(&bounds))),
    ];
    // fails with the computed facts verified; see criterion_7
    let known_disagreements = [7];
    let mut unexpected = Vec::new();
    for (n, run) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| f == &n.to_string()) {
            continue;
        }
        let start = Instant::now();
        let l = run();
        println!(
            "{} criterion {n:>2} ({:.2?}): {}",
            if l.pass { "PASS" } else { "FAIL" },
            start.elapsed(),
            l.detail.trim_end()
        );
        if !l.pass && !known_disagreements.contains(&n) {
            unexpected.push(n);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
