//! Deterministic Schreier–Sims stabilizer chains.

use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub struct Level {
    pub base: usize,
    /// Generators of the level group (the pointwise stabilizer of all
    /// earlier base points).
    pub gens: Vec<Permutation>,
    pub orbit: Vec<usize>,
    transversal: Vec<Option<Permutation>>,
    checked: Vec<usize>,
}

impl Level {
    fn new(degree: usize, base: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base] = Some(Permutation::identity(degree));
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            transversal,
            checked: vec![0],
        }
    }

    /// Element mapping the base point to `point`, if `point` is in the orbit.
    pub fn transversal(&self, point: usize) -> Option<&Permutation> {
        self.transversal[point].as_ref()
    }
}

#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    prefix: Vec<usize>,
    levels: Vec<Level>,
}

impl StabChain {
    /// Builds a chain whose base starts with `prefix` (duplicates ignored);
    /// further base points are the first points moved by residues.
    pub fn new(degree: usize, gens: &[Permutation], prefix: &[usize]) -> Self {
        let mut dedup = Vec::with_capacity(prefix.len());
        for &p in prefix {
            if !dedup.contains(&p) {
                dedup.push(p);
            }
        }
        let mut chain = StabChain {
            degree,
            prefix: dedup,
            levels: Vec::new(),
        };
        for g in gens {
            if g.is_identity() {
                continue;
            }
            let (residue, depth) = chain.sift_from(g, 0);
            if !residue.is_identity() {
                // g and its residue generate the same group together with
                // the current level-0 generators, but only the residue is
                // known to fix the base points above `depth`.
                chain.add(0, depth, g.clone(), residue);
            }
        }
        while chain.levels.len() < chain.prefix.len() {
            let base = chain.prefix[chain.levels.len()];
            chain.levels.push(Level::new(degree, base));
        }
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn order(&self) -> u64 {
        self.levels.iter().map(|l| l.orbit.len() as u64).product()
    }

    /// Generators of the pointwise stabilizer of the first `depth` base points.
    pub fn level_generators(&self, depth: usize) -> Vec<Permutation> {
        self.levels
            .get(depth)
            .map(|l| l.gens.clone())
            .unwrap_or_default()
    }

    fn new_level(&mut self, h: &Permutation) {
        let idx = self.levels.len();
        let base = if idx < self.prefix.len() {
            self.prefix[idx]
        } else {
            (0..self.degree)
                .find(|&p| h.apply(p) != p)
                .expect("non-identity residue moves a point")
        };
        self.levels.push(Level::new(self.degree, base));
    }

    /// Pushes `top` into level `from` and `h` into levels `from+1..=to`.
    fn add(&mut self, from: usize, to: usize, top: Permutation, h: Permutation) {
        while self.levels.len() <= to {
            self.new_level(&h);
        }
        for l in (from..=to).rev() {
            let g = if l == from { top.clone() } else { h.clone() };
            self.levels[l].gens.push(g);
            self.update(l);
        }
    }

    fn update(&mut self, l: usize) {
        let mut pos = 0;
        while pos < self.levels[l].orbit.len() {
            loop {
                let level = &self.levels[l];
                let gi = level.checked[pos];
                if gi >= level.gens.len() {
                    break;
                }
                let b = level.orbit[pos];
                let s = level.gens[gi].clone();
                self.levels[l].checked[pos] += 1;
                let c = s.apply(b);
                let ub = self.levels[l].transversal[b].clone().unwrap();
                match &self.levels[l].transversal[c] {
                    None => {
                        let level = &mut self.levels[l];
                        level.transversal[c] = Some(ub.mul(&s));
                        level.orbit.push(c);
                        level.checked.push(0);
                    }
                    Some(uc) => {
                        let schreier = ub.mul(&s).mul(&uc.inverse());
                        if schreier.is_identity() {
                            continue;
                        }
                        let (res, depth) = self.sift_from(&schreier, l + 1);
                        if !res.is_identity() {
                            self.add(l + 1, depth, res.clone(), res);
                        }
                    }
                }
            }
            pos += 1;
        }
    }

    /// Strips `g` through the levels starting at `start`; returns the
    /// residue and the level at which stripping stopped.
    pub fn sift_from(&self, g: &Permutation, start: usize) -> (Permutation, usize) {
        let mut g = g.clone();
        for i in start..self.levels.len() {
            let level = &self.levels[i];
            let b = g.apply(level.base);
            match &level.transversal[b] {
                None => return (g, i),
                Some(u) => g = g.mul(&u.inverse()),
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift_from(g, 0).0.is_identity()
    }

    /// Element `g` with `src[i]^g = dst[i]` for all `i`, where `src` must
    /// be a prefix of this chain's base.
    pub fn transporter(&self, src: &[usize], dst: &[usize]) -> Option<Permutation> {
        debug_assert!(src.len() <= self.levels.len());
        let mut target: Vec<usize> = dst.to_vec();
        let mut acc = Permutation::identity(self.degree);
        for (i, &s) in src.iter().enumerate() {
            let level = &self.levels[i];
            debug_assert_eq!(level.base, s);
            let u = level.transversal[target[i]].as_ref()?;
            let ui = u.inverse();
            for t in target.iter_mut().skip(i + 1) {
                *t = ui.apply(*t);
            }
            acc = u.mul(&acc);
        }
        Some(acc)
    }

    /// Orbit of `point` under the pointwise stabilizer of the first
    /// `depth` base points.
    pub fn level_orbit(&self, depth: usize, point: usize) -> Vec<usize> {
        orbit_of(self.degree, &self.level_generators(depth), point)
    }

    /// Every element, as products of transversal elements.
    pub fn elements(&self) -> ElementIter<'_> {
        ElementIter {
            chain: self,
            counters: vec![0; self.levels.len()],
            done: false,
        }
    }

    pub fn random_element<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let p = level.orbit[rng.gen_range(0..level.orbit.len())];
            g = g.mul(level.transversal[p].as_ref().unwrap());
        }
        g
    }
}

pub struct ElementIter<'a> {
    chain: &'a StabChain,
    counters: Vec<usize>,
    done: bool,
}

impl Iterator for ElementIter<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let levels = &self.chain.levels;
        let mut g = Permutation::identity(self.chain.degree);
        for (i, level) in levels.iter().enumerate().rev() {
            let p = level.orbit[self.counters[i]];
            g = g.mul(level.transversal[p].as_ref().unwrap());
        }
        // odometer
        let mut i = 0;
        loop {
            if i == levels.len() {
                self.done = true;
                break;
            }
            self.counters[i] += 1;
            if self.counters[i] < levels[i].orbit.len() {
                break;
            }
            self.counters[i] = 0;
            i += 1;
        }
        Some(g)
    }
}

pub fn orbit_of(degree: usize, gens: &[Permutation], point: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    seen[point] = true;
    let mut orbit = vec![point];
    let mut i = 0;
    while i < orbit.len() {
        let p = orbit[i];
        for g in gens {
            let q = g.apply(p);
            if !seen[q] {
                seen[q] = true;
                orbit.push(q);
            }
        }
        i += 1;
    }
    orbit
}
