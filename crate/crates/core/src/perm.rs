//! Permutations of `{0, .., n-1}` under the right-action convention.
//!
//! `compose(g, h)` applies `g` first and then `h`, so that
//! `x^(gh) = (x^g)^h`. Points are 0-based in the API and 1-based in the
//! cycle-notation text format (`(1,2,3)(4,5)`, `()` for the identity).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn combine(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from its image table, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n {
                return Err(Error::PointOutOfRange {
                    point: x + 1,
                    degree: n,
                });
            }
            if seen[x] {
                return Err(Error::RepeatedPoint(x + 1));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &p in cycle {
                if p >= degree {
                    return Err(Error::PointOutOfRange {
                        point: p + 1,
                        degree,
                    });
                }
                if used[p] {
                    return Err(Error::RepeatedPoint(p + 1));
                }
                used[p] = true;
            }
            for (i, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses 1-based cycle notation such as `(1,2,3)(4,5)` or `(1 2 3)`.
    pub fn parse(degree: usize, text: &str) -> Result<Self> {
        let cycles = parse_cycles(text)?;
        Permutation::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.mul(other))
    }

    /// Unchecked composition for internal hot loops.
    #[inline]
    pub(crate) fn mul(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    pub fn power(&self, k: i64) -> Permutation {
        let n = self.degree();
        let mut result = Permutation::identity(n);
        if k == 0 {
            return result;
        }
        let mut base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }

    /// `x⁻¹ g x`.
    pub fn conjugate(&self, x: &Permutation) -> Result<Permutation> {
        if self.degree() != x.degree() {
            return Err(Error::DegreeMismatch(self.degree(), x.degree()));
        }
        Ok(self.conj(x))
    }

    #[inline]
    pub(crate) fn conj(&self, x: &Permutation) -> Permutation {
        // (x⁻¹ g x)(x(i)) = x(g(i))
        let mut images = vec![0; self.degree()];
        for (i, &gi) in self.images.iter().enumerate() {
            images[x.images[i]] = x.images[gi];
        }
        Permutation { images }
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images
            .iter()
            .zip(&other.images)
            .all(|(&a, &b)| other.images[a] == self.images[b])
    }

    /// Disjoint cycles of length at least 2, each starting at its least
    /// point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = self.images[p];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths including fixed points, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lengths: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lengths.extend(std::iter::repeat_n(1, self.fixed_points().len()));
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.degree())
            .filter(|&i| self.images[i] != i)
            .collect()
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree())
            .filter(|&i| self.images[i] == i)
            .collect()
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Parity from the cycle count: `n − #cycles (mod 2)`.
    pub fn parity(&self) -> Parity {
        let n = self.degree();
        let moved_cycles = self.cycles();
        let fixed = n - moved_cycles.iter().map(Vec::len).sum::<usize>();
        let total = moved_cycles.len() + fixed;
        if (n - total).is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity() && self.mul(self).is_identity()
    }

    /// The permutation on a larger point set that agrees with `self` and
    /// fixes every new point.
    pub fn extend_to(&self, degree: usize) -> Result<Permutation> {
        if degree < self.degree() {
            return Err(Error::DegreeMismatch(self.degree(), degree));
        }
        let mut images = self.images.clone();
        images.extend(self.degree()..degree);
        Ok(Permutation { images })
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Parses 1-based cycle text into 0-based cycles (no range checks).
pub fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>> {
    let compact: String = text
        .chars()
        .map(|c| if c.is_whitespace() { ' ' } else { c })
        .collect();
    let s = compact.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty permutation text".into()));
    }
    let mut cycles = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        rest = rest.trim_start();
        if rest.is_empty() {
            break;
        }
        if !rest.starts_with('(') {
            return Err(Error::Parse(format!("expected '(' in {text:?}")));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {text:?}")))?;
        let body = &rest[1..close];
        if body.contains('(') {
            return Err(Error::Parse(format!("nested parentheses in {text:?}")));
        }
        let mut cycle = Vec::new();
        for tok in body.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let v: usize = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad point {tok:?} in {text:?}")))?;
            if v == 0 {
                return Err(Error::Parse("points are 1-based".into()));
            }
            cycle.push(v - 1);
        }
        let mut sorted = cycle.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::RepeatedPoint(w[0] + 1));
        }
        if cycle.len() > 1 {
            cycles.push(cycle);
        }
        rest = &rest[close + 1..];
    }
    Ok(cycles)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self, self.degree())
    }
}

/// `"<degree>:<cycles>"`, e.g. `"5:(1,2,3)"`.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (deg, body) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected <degree>:<cycles>, got {s:?}")))?;
        let degree: usize = deg
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad degree {deg:?}")))?;
        Permutation::parse(degree, body)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A product of two disjoint transpositions `(a b)(c d)`.
///
/// Stored normalized: each pair ascending, pairs ordered by first point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Quad {
    pub pairs: [(usize, usize); 2],
}

/// `removed ↔ added`: the transposition of one quad replaced by one on
/// fresh points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exchange {
    pub kept: (usize, usize),
    pub removed: (usize, usize),
    pub added: (usize, usize),
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl Quad {
    pub fn new(a: usize, b: usize, c: usize, d: usize) -> Result<Self> {
        let mut pts = [a, b, c, d];
        pts.sort_unstable();
        if pts.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Precondition(format!(
                "quad points must be distinct: {a} {b} {c} {d}"
            )));
        }
        let mut pairs = [ordered(a, b), ordered(c, d)];
        pairs.sort_unstable();
        Ok(Quad { pairs })
    }

    pub fn support(&self) -> [usize; 4] {
        let mut s = [
            self.pairs[0].0,
            self.pairs[0].1,
            self.pairs[1].0,
            self.pairs[1].1,
        ];
        s.sort_unstable();
        s
    }

    pub fn to_permutation(&self, degree: usize) -> Result<Permutation> {
        let cycles: Vec<Vec<usize>> = self.pairs.iter().map(|&(a, b)| vec![a, b]).collect();
        Permutation::from_cycles(degree, &cycles)
    }

    pub fn from_permutation(g: &Permutation) -> Result<Self> {
        let cycles = g.cycles();
        if cycles.len() != 2 || cycles.iter().any(|c| c.len() != 2) {
            return Err(Error::NotQuad(g.to_string()));
        }
        Quad::new(cycles[0][0], cycles[0][1], cycles[1][0], cycles[1][1])
    }

    /// The other two quads on the same support.
    pub fn siblings(&self) -> [Quad; 2] {
        let [a, b, c, d] = self.support();
        let all = quads_on_support(a, b, c, d).expect("distinct support");
        let mut out = all.iter().filter(|q| *q != self).copied();
        [out.next().unwrap(), out.next().unwrap()]
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [(a, b), (c, d)] = self.pairs;
        write!(f, "({},{})({},{})", a + 1, b + 1, c + 1, d + 1)
    }
}

/// The three quads `(ab)(cd)`, `(ac)(bd)`, `(ad)(bc)` on `{a,b,c,d}`.
pub fn quads_on_support(a: usize, b: usize, c: usize, d: usize) -> Result<[Quad; 3]> {
    let mut out = [
        Quad::new(a, b, c, d)?,
        Quad::new(a, c, b, d)?,
        Quad::new(a, d, b, c)?,
    ];
    out.sort_unstable();
    Ok(out)
}

pub fn is_quad(g: &Permutation) -> bool {
    Quad::from_permutation(g).is_ok()
}

/// When `q = (ab)(cd)` and `q2 = (ab)(c'd')` with `{c,d} ∩ {c',d'} = ∅`,
/// returns the exchange `(cd) ↔ (c'd')`.
pub fn exchange_related(q: &Quad, q2: &Quad) -> Option<Exchange> {
    for i in 0..2 {
        for j in 0..2 {
            if q.pairs[i] == q2.pairs[j] {
                let removed = q.pairs[1 - i];
                let added = q2.pairs[1 - j];
                let disjoint = removed.0 != added.0
                    && removed.0 != added.1
                    && removed.1 != added.0
                    && removed.1 != added.1;
                return disjoint.then_some(Exchange {
                    kept: q.pairs[i],
                    removed,
                    added,
                });
            }
        }
    }
    None
}

/// Permutation-level wrapper around [`exchange_related`].
pub fn exchange_related_perms(g: &Permutation, h: &Permutation) -> Result<Option<Exchange>> {
    let q = Quad::from_permutation(g)?;
    let q2 = Quad::from_permutation(h)?;
    Ok(exchange_related(&q, &q2))
}
