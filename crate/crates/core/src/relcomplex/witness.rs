use serde::Serialize;

use super::{check_points, fully_related, k_related};
use crate::error::{Error, Result};
use crate::group::Action;
use crate::perm::Permutation;

fn cycles<S: serde::Serializer>(g: &Permutation, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&g.to_string())
}

fn cycles_vec<S: serde::Serializer>(
    v: &[Permutation],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for g in v {
        seq.serialize_element(&g.to_string())?;
    }
    seq.end()
}

fn one_based<S: serde::Serializer>(v: &[usize], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&(x + 1))?;
    }
    seq.end()
}

/// The data behind a non-binariness claim. Points of `Ω` are 0-based in
/// memory and 1-based when serialized.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WitnessKind {
    /// `h1 h2 h3 = 1` with `h_i` fixing `α_i`, not improvable; `α1` is
    /// point 0, `α2 = α1^σ`, `α3 = α1^τ`.
    TripleCriterion {
        #[serde(serialize_with = "cycles")]
        h1: Permutation,
        #[serde(serialize_with = "cycles")]
        h2: Permutation,
        #[serde(serialize_with = "cycles")]
        h3: Permutation,
        #[serde(serialize_with = "cycles")]
        sigma: Permutation,
        #[serde(serialize_with = "cycles")]
        tau: Permutation,
    },
    /// Commuting `g`, `h` satisfying the fixity hypotheses.
    Fixity {
        #[serde(serialize_with = "cycles")]
        g: Permutation,
        #[serde(serialize_with = "cycles")]
        h: Permutation,
        p: u64,
    },
    /// A set `Λ` with a permutation `τ` of it not induced by `G`, and
    /// correcting permutations `η_i`, all given as permutations of `Ω`.
    Subset {
        #[serde(serialize_with = "one_based")]
        lambda: Vec<usize>,
        #[serde(serialize_with = "cycles")]
        tau: Permutation,
        #[serde(serialize_with = "cycles_vec")]
        etas: Vec<Permutation>,
    },
    /// An edge of `Γ(C)` leaving the point stabilizer, with the generators
    /// of the component group of `g`.
    ComponentGroup {
        #[serde(serialize_with = "cycles")]
        class_rep: Permutation,
        #[serde(serialize_with = "cycles")]
        g: Permutation,
        #[serde(serialize_with = "cycles_vec")]
        component_generators: Vec<Permutation>,
        component_order: u64,
        #[serde(serialize_with = "cycles")]
        edge_in: Permutation,
        #[serde(serialize_with = "cycles")]
        edge_out: Permutation,
        p: u64,
    },
    /// Tuples found by direct search.
    TupleSearch {
        #[serde(rename = "I", serialize_with = "one_based")]
        i: Vec<usize>,
        #[serde(rename = "J", serialize_with = "one_based")]
        j: Vec<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TuplePair {
    #[serde(rename = "I", serialize_with = "one_based")]
    pub i: Vec<usize>,
    #[serde(rename = "J", serialize_with = "one_based")]
    pub j: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonBinaryWitness {
    #[serde(flatten)]
    pub kind: WitnessKind,
    pub tuples: TuplePair,
    pub verified: bool,
    /// Set when the claim rests on a cited result rather than on the
    /// tuples alone.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cited: Option<String>,
}

impl NonBinaryWitness {
    /// Derives the tuples of `kind` and checks them; fails if they do not
    /// separate.
    pub fn new(kind: WitnessKind, action: &Action) -> Result<Self> {
        let (i, j) = tuples_of(&kind, action)?;
        if !verify_tuples(action, &i, &j)? {
            return Err(Error::InvalidWitness(format!(
                "tuples {:?} and {:?} do not separate",
                plus_one(&i),
                plus_one(&j)
            )));
        }
        Ok(NonBinaryWitness {
            kind,
            tuples: TuplePair { i, j },
            verified: true,
            cited: None,
        })
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            WitnessKind::TripleCriterion { .. } => "triple-criterion",
            WitnessKind::Fixity { .. } => "fixity",
            WitnessKind::Subset { .. } => "subset",
            WitnessKind::ComponentGroup { .. } => "component-group",
            WitnessKind::TupleSearch { .. } => "tuple-search",
        }
    }
}

fn plus_one(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

/// `I ~₂ J` and no element maps `I` onto `J`.
pub fn verify_tuples(action: &Action, i: &[usize], j: &[usize]) -> Result<bool> {
    if i.len() < 3 {
        return Ok(false);
    }
    Ok(k_related(action, i, j, 2)? && !fully_related(action, i, j)?)
}

/// Points of `Λ` in increasing order, and their images under `τ`.
pub(crate) fn subset_tuples(lambda: &[usize], tau: &Permutation) -> (Vec<usize>, Vec<usize>) {
    let i = lambda.to_vec();
    let j = lambda.iter().map(|&x| tau.apply(x)).collect();
    (i, j)
}

fn tuples_of(kind: &WitnessKind, action: &Action) -> Result<(Vec<usize>, Vec<usize>)> {
    match kind {
        WitnessKind::TripleCriterion { h1, sigma, tau, .. } => {
            let a1 = 0;
            let a2 = action.image_of(sigma).apply(a1);
            let a3 = action.image_of(tau).apply(a1);
            let a4 = action.image_of(h1).apply(a3);
            Ok((vec![a1, a2, a3], vec![a1, a2, a4]))
        }
        WitnessKind::Fixity { g, h, .. } => {
            let data = super::criteria::fixity_hypotheses(action, g, h, &crate::Bounds::default())
                .map_err(Error::InvalidWitness)?;
            Ok(subset_tuples(&data.lambda, &data.tau))
        }
        WitnessKind::Subset { lambda, tau, .. } => {
            check_points(action, lambda)?;
            Ok(subset_tuples(lambda, &action_perm(action, tau)?))
        }
        WitnessKind::ComponentGroup {
            edge_in,
            edge_out,
            p,
            ..
        } => tuples_of(
            &WitnessKind::Fixity {
                g: edge_in.clone(),
                h: edge_out.clone(),
                p: *p,
            },
            action,
        ),
        WitnessKind::TupleSearch { i, j } => Ok((i.clone(), j.clone())),
    }
}

fn action_perm(action: &Action, tau: &Permutation) -> Result<Permutation> {
    if tau.degree() != action.points() {
        return Err(Error::DegreeMismatch(action.points(), tau.degree()));
    }
    Ok(tau.clone())
}

/// Recomputes the tuples of a witness and checks them definitionally.
pub fn witness_to_tuples(
    witness: &NonBinaryWitness,
    action: &Action,
) -> Result<(Vec<usize>, Vec<usize>)> {
    let (i, j) = tuples_of(&witness.kind, action)?;
    if !verify_tuples(action, &i, &j)? {
        return Err(Error::InvalidWitness(format!(
            "{} witness does not separate {:?} from {:?}",
            witness.kind_name(),
            plus_one(&i),
            plus_one(&j)
        )));
    }
    Ok((i, j))
}
