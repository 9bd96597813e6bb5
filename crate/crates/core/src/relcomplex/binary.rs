use serde::Serialize;

use super::criteria::{component_criterion, fixity_criterion, triple_criterion_search};
use super::search::search;
use super::witness::{verify_tuples, NonBinaryWitness, WitnessKind};
use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::group::{max_fixity_classes, Action, FixityOrder, PermGroup};
use crate::perm::Permutation;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Component,
    Fixity,
    Triple,
    Inheritance,
    Exhaustive,
}

impl Strategy {
    pub const ALL: [Strategy; 5] = [
        Strategy::Component,
        Strategy::Fixity,
        Strategy::Triple,
        Strategy::Inheritance,
        Strategy::Exhaustive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Component => "component",
            Strategy::Fixity => "fixity",
            Strategy::Triple => "triple",
            Strategy::Inheritance => "inheritance",
            Strategy::Exhaustive => "exhaustive",
        }
    }

    pub fn parse(s: &str) -> Result<Strategy> {
        Strategy::ALL
            .into_iter()
            .find(|x| x.name() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown strategy {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct StrategySet {
    /// Tried in this order.
    pub strategies: Vec<Strategy>,
    /// Intermediate subgroup `H < M < G` for inheritance.
    pub intermediate: Option<PermGroup>,
}

impl Default for StrategySet {
    fn default() -> Self {
        StrategySet {
            strategies: Strategy::ALL.to_vec(),
            intermediate: None,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BinaryProof {
    /// At most two points.
    Trivial,
    Semiregular,
    /// No separated pair exists.
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum BinaryVerdict {
    Binary {
        proof: BinaryProof,
    },
    NonBinary {
        witness: Box<NonBinaryWitness>,
    },
    Unknown {
        tried: Vec<String>,
        notes: Vec<String>,
    },
}

impl BinaryVerdict {
    pub fn is_binary(&self) -> Option<bool> {
        match self {
            BinaryVerdict::Binary { .. } => Some(true),
            BinaryVerdict::NonBinary { .. } => Some(false),
            BinaryVerdict::Unknown { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&NonBinaryWitness> {
        match self {
            BinaryVerdict::NonBinary { witness } => Some(witness),
            _ => None,
        }
    }
}

fn primes_dividing(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_semiregular(action: &Action) -> bool {
    let order = action.image_group().order();
    action
        .image_group()
        .orbits()
        .iter()
        .all(|o| o.len() as u64 == order)
}

fn fixity_strategy(action: &Action, bounds: &Bounds) -> Result<Option<NonBinaryWitness>> {
    let h = action.point_stabilizer(0)?;
    let in_h = |x: &Permutation| action.image_of(x).apply(0) == 0;
    for p in primes_dividing(h.order()) {
        for class in max_fixity_classes(action, p, FixityOrder::Exact, bounds)? {
            let Some(g) = class.elements.iter().find(|x| in_h(x)) else {
                continue;
            };
            for x in &class.elements {
                if !in_h(x) && x.commutes_with(g) {
                    if let Some(w) = fixity_criterion(action, g, x, bounds)? {
                        return Ok(Some(w));
                    }
                }
            }
        }
    }
    Ok(None)
}

// Tuples separated for M on its cosets of H lift to cosets of H in G; they
// stay 2-related, and if they are still not fully related the lift is an
// ordinary witness.
fn inheritance_strategy(
    action: &Action,
    m: &PermGroup,
    sets: &StrategySet,
    bounds: &Bounds,
    notes: &mut Vec<String>,
) -> Result<Option<NonBinaryWitness>> {
    let Some(coset) = action.as_coset() else {
        return Err(Error::Precondition(
            "inheritance needs a coset action".into(),
        ));
    };
    let h = coset.subgroup();
    let g = action.group();
    if !g.is_subgroup(m) || !m.is_subgroup(h) || m.order() == g.order() || m.order() == h.order() {
        return Err(Error::Precondition("need H < M < G".into()));
    }
    let inner_action = Action::coset(m, h, bounds)?;
    let inner_sets = StrategySet {
        strategies: sets
            .strategies
            .iter()
            .copied()
            .filter(|s| *s != Strategy::Inheritance)
            .collect(),
        intermediate: None,
    };
    let inner = is_binary(&inner_action, &inner_sets, bounds);
    let Some(w) = inner.witness() else {
        return Ok(None);
    };
    let inner_coset = inner_action.as_coset().expect("coset action");
    let lift = |pts: &[usize]| -> Vec<usize> {
        pts.iter()
            .map(|&x| coset.coset_of(&inner_coset.representatives()[x]))
            .collect()
    };
    let (i, j) = (lift(&w.tuples.i), lift(&w.tuples.j));
    let cite = "non-binary on (M:H) for some H < M < G implies non-binary on (G:H) (cited, not re-derived)";
    if verify_tuples(action, &i, &j)? {
        let mut out = NonBinaryWitness::new(WitnessKind::TupleSearch { i, j }, action)?;
        out.cited = Some(cite.to_string());
        return Ok(Some(out));
    }
    notes.push(format!(
        "M of order {} is not binary on its cosets of H; {cite}, but the lifted tuples do not separate",
        m.order()
    ));
    Ok(None)
}

fn exhaustive(
    action: &Action,
    bounds: &Bounds,
) -> Result<std::result::Result<Option<NonBinaryWitness>, String>> {
    let m = action.points();
    if m > bounds.exhaustive_index {
        return Ok(Err(format!(
            "|Ω| = {m} exceeds the exhaustive bound {}",
            bounds.exhaustive_index
        )));
    }
    let r = search(action.image_group(), bounds.exhaustive_nodes, true);
    match r.best {
        Some(pair) => {
            let (i, j) = pair.tuples();
            NonBinaryWitness::new(WitnessKind::TupleSearch { i, j }, action).map(|w| Ok(Some(w)))
        }
        None if r.complete => Ok(Ok(None)),
        None => Ok(Err(format!(
            "exhaustive search stopped after {} nodes",
            r.nodes
        ))),
    }
}

/// Decides binariness where one of the strategies settles it, and reports
/// `Unknown` otherwise.
pub fn is_binary(action: &Action, sets: &StrategySet, bounds: &Bounds) -> BinaryVerdict {
    if action.points() <= 2 {
        return BinaryVerdict::Binary {
            proof: BinaryProof::Trivial,
        };
    }
    if is_semiregular(action) {
        return BinaryVerdict::Binary {
            proof: BinaryProof::Semiregular,
        };
    }
    let mut tried = Vec::new();
    let mut notes = Vec::new();
    let transitive = action.is_transitive();
    for &s in &sets.strategies {
        let needs_h = matches!(s, Strategy::Component | Strategy::Fixity | Strategy::Triple);
        if needs_h && !transitive {
            notes.push(format!("{}: action is not transitive", s.name()));
            continue;
        }
        tried.push(s.name().to_string());
        let found = match s {
            Strategy::Component => (|| {
                let h = action.point_stabilizer(0)?;
                for p in primes_dividing(h.order()) {
                    if let Some(w) = component_criterion(action, p, bounds)? {
                        return Ok(Some(w));
                    }
                }
                Ok(None)
            })(),
            Strategy::Fixity => fixity_strategy(action, bounds),
            Strategy::Triple => triple_criterion_search(action, bounds),
            Strategy::Inheritance => match &sets.intermediate {
                Some(m) => inheritance_strategy(action, m, sets, bounds, &mut notes),
                None => {
                    tried.pop();
                    continue;
                }
            },
            Strategy::Exhaustive => match exhaustive(action, bounds) {
                Ok(Ok(Some(w))) => Ok(Some(w)),
                Ok(Ok(None)) => {
                    return BinaryVerdict::Binary {
                        proof: BinaryProof::Exhaustive,
                    }
                }
                Ok(Err(why)) => {
                    notes.push(format!("exhaustive: {why}"));
                    Ok(None)
                }
                Err(e) => Err(e),
            },
        };
        match found {
            Ok(Some(w)) => {
                debug_assert!(w.verified);
                return BinaryVerdict::NonBinary {
                    witness: Box::new(w),
                };
            }
            Ok(None) => {}
            Err(e) => notes.push(format!("{}: {e}", s.name())),
        }
    }
    BinaryVerdict::Unknown { tried, notes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relcomplex::witness_to_tuples;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse(n, s).unwrap()
    }

    #[test]
    fn verdict_examples() {
        let b = Bounds::default();
        let a6 = PermGroup::alternating(6);
        let reg = Action::regular(&a6, &b).unwrap();
        assert_eq!(
            is_binary(&reg, &StrategySet::default(), &b),
            BinaryVerdict::Binary {
                proof: BinaryProof::Semiregular
            }
        );
        let one = Action::trivial(&a6, &b).unwrap();
        assert_eq!(
            is_binary(&one, &StrategySet::default(), &b),
            BinaryVerdict::Binary {
                proof: BinaryProof::Trivial
            }
        );
        let h = PermGroup::generate(6, vec![p(6, "(1,2)(3,4)")]).unwrap();
        let act = Action::coset(&a6, &h, &b).unwrap();
        let v = is_binary(&act, &StrategySet::default(), &b);
        let w = v.witness().expect("non-binary");
        assert!(matches!(
            w.kind,
            WitnessKind::ComponentGroup {
                component_order: 360,
                ..
            }
        ));
        witness_to_tuples(w, &act).unwrap();
    }

    #[test]
    fn exhaustive_decides_small_binary_actions() {
        let b = Bounds::default();
        let s5 = PermGroup::symmetric(5);
        let t = PermGroup::generate(5, vec![p(5, "(4,5)")]).unwrap();
        let act = Action::coset(&s5, &t, &b).unwrap();
        let v = is_binary(&act, &StrategySet::default(), &b);
        assert_eq!(
            v,
            BinaryVerdict::Binary {
                proof: BinaryProof::Exhaustive
            }
        );
        let a5 = PermGroup::alternating(5);
        let nat = Action::natural(&a5);
        let only = StrategySet {
            strategies: vec![Strategy::Exhaustive],
            intermediate: None,
        };
        let v = is_binary(&nat, &only, &b);
        let w = v.witness().unwrap();
        assert_eq!(w.tuples.i.len(), 4);
    }

    #[test]
    fn strategy_names() {
        for s in Strategy::ALL {
            assert_eq!(Strategy::parse(s.name()).unwrap(), s);
        }
        assert!(Strategy::parse("guess").is_err());
    }
}
