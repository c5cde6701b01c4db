use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};

/// A finite group given by its Cayley table, a generating set and a normal subgroup Σ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    cayley: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    generators: Vec<usize>,
    sigma: Vec<usize>,
}

/// Full associativity check below this order; sampled above.
const FULL_ASSOCIATIVITY_ORDER: usize = 60;
const ASSOCIATIVITY_SAMPLES: usize = 20_000;

impl FiniteGroup {
    /// Validates a Cayley table (`cayley[a][b] = a·b`) and wraps it, with Σ trivial.
    pub fn from_cayley(name: impl Into<String>, cayley: Vec<Vec<usize>>, generators: Vec<usize>) -> Result<Self> {
        let n = cayley.len();
        if n == 0 {
            return Err(Error::Input("empty Cayley table".into()));
        }
        for (a, row) in cayley.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Input(format!("Cayley row {a} has length {} ≠ {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::Input(format!("Cayley entry {bad} out of range in row {a}")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| cayley[e][x] == x && cayley[x][e] == x))
            .ok_or_else(|| Error::Input("Cayley table has no identity".into()))?;
        let mut inverses = vec![usize::MAX; n];
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| cayley[a][b] == identity && cayley[b][a] == identity)
                .ok_or_else(|| Error::Input(format!("element {a} has no two-sided inverse")))?;
            inverses[a] = inv;
        }
        let assoc = |a: usize, b: usize, c: usize| cayley[cayley[a][b]][c] == cayley[a][cayley[b][c]];
        if n <= FULL_ASSOCIATIVITY_ORDER {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(Error::Input(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                        }
                    }
                }
            }
        } else {
            // Deterministic LCG spot check.
            let mut state = 0x9E37_79B9_7F4A_7C15u64;
            let mut next = || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (state >> 33) as usize % n
            };
            for _ in 0..ASSOCIATIVITY_SAMPLES {
                let (a, b, c) = (next(), next(), next());
                if !assoc(a, b, c) {
                    return Err(Error::Input(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                }
            }
        }
        if let Some(&bad) = generators.iter().find(|&&g| g >= n) {
            return Err(Error::Input(format!("generator {bad} out of range")));
        }
        let gp = Self { name: name.into(), cayley, identity, inverses, generators, sigma: vec![identity] };
        let reached = gp.words().len();
        if reached != n {
            return Err(Error::Input(format!("generators reach only {reached} of {n} elements")));
        }
        Ok(gp)
    }

    /// Sets Σ, checking that it is a subgroup normalized by the generators.
    pub fn with_sigma(mut self, mut sigma: Vec<usize>) -> Result<Self> {
        sigma.sort_unstable();
        sigma.dedup();
        let n = self.order();
        if let Some(&bad) = sigma.iter().find(|&&s| s >= n) {
            return Err(Error::Input(format!("Σ element {bad} out of range")));
        }
        if sigma.binary_search(&self.identity).is_err() {
            return Err(Error::Input("Σ does not contain the identity".into()));
        }
        let inside = |x: usize| sigma.binary_search(&x).is_ok();
        for &a in &sigma {
            if !inside(self.inverses[a]) {
                return Err(Error::Input(format!("Σ not closed under inversion at {a}")));
            }
            for &b in &sigma {
                if !inside(self.cayley[a][b]) {
                    return Err(Error::Input(format!("Σ not closed under multiplication: {a}·{b}")));
                }
            }
            for &g in &self.generators {
                let conj = self.mul(self.mul(g, a), self.inverses[g]);
                if !inside(conj) {
                    return Err(Error::Input(format!(
                        "Σ is not normal: {g}·{a}·{g}⁻¹ = {conj} lies outside Σ"
                    )));
                }
            }
        }
        self.sigma = sigma;
        Ok(self)
    }

    /// The group generated by the given permutations (images of `0..degree`).
    pub fn from_permutations(name: impl Into<String>, gens: &[Vec<usize>]) -> Result<Self> {
        Ok(Self::permutation_group(name, gens)?.0)
    }

    /// As [`FiniteGroup::from_permutations`], also returning the element index of each permutation.
    pub fn permutation_group(
        name: impl Into<String>,
        gens: &[Vec<usize>],
    ) -> Result<(Self, BTreeMap<Vec<usize>, usize>)> {
        let degree = gens.first().map_or(0, Vec::len);
        for (i, g) in gens.iter().enumerate() {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::Input(format!("generator {i} is not a permutation of 0..{degree}")));
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut elements = vec![identity.clone()];
        index.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        // (p·q)(i) = p(q(i)): apply q first.
        let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { q.iter().map(|&i| p[i]).collect() };
        while let Some(i) = queue.pop_front() {
            for gen in gens {
                let prod = compose(&elements[i], gen);
                if !index.contains_key(&prod) {
                    index.insert(prod.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(prod);
                }
            }
        }
        let n = elements.len();
        let cayley: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| index[&compose(&elements[a], &elements[b])]).collect())
            .collect();
        let generators = gens.iter().map(|g| index[g]).collect();
        Ok((Self::from_cayley(name, cayley, generators)?, index))
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Input("cyclic group of order 0".into()));
        }
        let cayley = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let generators = if n == 1 { vec![] } else { vec![1] };
        Self::from_cayley(format!("Z/{n}"), cayley, generators)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1).expect("trivial group").renamed("trivial")
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        if n < 2 {
            return Ok(Self::trivial());
        }
        let transposition: Vec<usize> = (0..n).map(|i| if i < 2 { 1 - i } else { i }).collect();
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        Self::from_permutations(format!("S_{n}"), &[transposition, cycle])
    }

    /// A_5, generated by `(0 1 2)` and `(0 1 2 3 4)`.
    pub fn alternating5() -> Result<Self> {
        Self::from_permutations("A_5", &[vec![1, 2, 0, 3, 4], vec![1, 2, 3, 4, 0]])
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.cayley.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn cayley(&self) -> &[Vec<usize>] {
        &self.cayley
    }

    /// For each element, a word in generator positions reaching it by right
    /// multiplication from the identity (breadth-first, so shortest).
    pub fn words(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut words = BTreeMap::from([(self.identity, Vec::new())]);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (k, &g) in self.generators.iter().enumerate() {
                let y = self.mul(x, g);
                if !words.contains_key(&y) {
                    let mut w = words[&x].clone();
                    w.push(k);
                    words.insert(y, w);
                    queue.push_back(y);
                }
            }
        }
        words
    }

    /// `g h g⁻¹ h⁻¹`.
    pub fn commutator(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(self.mul(g, h), self.inverse(g)), self.inverse(h))
    }

    /// Whether the group equals its commutator subgroup.
    pub fn is_perfect(&self) -> bool {
        let n = self.order();
        let mut sub = vec![false; n];
        sub[self.identity] = true;
        let mut gens = Vec::new();
        for g in 0..n {
            for h in 0..n {
                let c = self.commutator(g, h);
                if !sub[c] {
                    sub[c] = true;
                    gens.push(c);
                }
            }
        }
        let mut queue: VecDeque<usize> = gens.iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            for &c in &gens {
                let y = self.mul(x, c);
                if !sub[y] {
                    sub[y] = true;
                    queue.push_back(y);
                }
            }
        }
        sub.iter().all(|&b| b)
    }
}
