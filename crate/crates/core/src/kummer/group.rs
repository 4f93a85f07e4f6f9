//! Permutation groups on small point sets.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::error::{contract, Error, Result};

/// Groups at most this large keep an explicit element list.
pub const ELEMENT_CACHE_LIMIT: u64 = 100_000;

/// A permutation of `0..n`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n as u8).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        if n > 256 {
            return Err(contract("permutation degree above 256"));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(contract(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Perm(images.into_iter().map(|i| i as u8).collect()))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i as usize).collect()
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// Image of a bitmask of points.
    pub fn apply_mask(&self, mask: u64) -> u64 {
        (0..self.0.len()).filter(|&i| mask >> i & 1 == 1).fold(0, |m, i| m | 1 << self.0[i])
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images().serialize(s)
    }
}

/// Stabilizer chain over the base `0, 1, ..., n-1`.
///
/// Level `k` holds strong generators fixing `0..k` and a transversal
/// `reps[k][j]` sending `k` to `j`.
#[derive(Debug, Clone)]
struct Chain {
    n: usize,
    gens: Vec<Vec<Perm>>,
    reps: Vec<Vec<Option<Perm>>>,
}

impl Chain {
    fn new(n: usize) -> Chain {
        let reps = (0..n)
            .map(|k| {
                let mut r = vec![None; n];
                r[k] = Some(Perm::identity(n));
                r
            })
            .collect();
        Chain { n, gens: vec![Vec::new(); n], reps }
    }

    /// Strips `g` down the chain from level `k`; returns the level where it
    /// fell out and what was left, or `None` if `g` is a member.
    fn sift(&self, mut g: Perm, k: usize) -> Option<(usize, Perm)> {
        for level in k..self.n {
            let j = g.apply(level);
            match &self.reps[level][j] {
                Some(r) => g = g.then(&r.inverse()),
                None => return Some((level, g)),
            }
        }
        if g.is_identity() {
            None
        } else {
            Some((self.n, g))
        }
    }

    fn contains(&self, g: &Perm) -> bool {
        self.sift(g.clone(), 0).is_none()
    }

    /// Adds `g` (which fixes `0..k`) to the group at level `k`.
    fn add(&mut self, k: usize, g: Perm) {
        if k >= self.n || self.sift(g.clone(), k).is_none() {
            return;
        }
        self.gens[k].push(g.clone());
        let reps: Vec<Perm> = self.reps[k].iter().flatten().cloned().collect();
        for r in reps {
            self.extend(k, r.then(&g));
        }
    }

    /// Makes sure the coset of `t` appears at level `k`.
    fn extend(&mut self, k: usize, t: Perm) {
        let j = t.apply(k);
        if let Some(r) = &self.reps[k][j] {
            let residue = t.then(&r.inverse());
            self.add(k + 1, residue);
            return;
        }
        self.reps[k][j] = Some(t.clone());
        let gens = self.gens[k].clone();
        for s in gens {
            self.extend(k, t.then(&s));
        }
    }

    fn order(&self) -> BigUint {
        self.reps
            .iter()
            .map(|r| BigUint::from(r.iter().flatten().count()))
            .product()
    }

    fn elements(&self) -> Vec<Perm> {
        // every element is uniquely r_{n-1} ... r_1 r_0 (applied left to right)
        let mut out = vec![Perm::identity(self.n)];
        for level in (0..self.n).rev() {
            let reps: Vec<&Perm> = self.reps[level].iter().flatten().collect();
            if reps.len() == 1 {
                continue;
            }
            out = out.iter().flat_map(|g| reps.iter().map(move |r| g.then(r))).collect();
        }
        out.sort();
        out
    }
}

#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    chain: Chain,
    elements: Option<Vec<Perm>>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<PermGroup> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(contract(format!("generator of degree {} in a group of degree {degree}", g.degree())));
        }
        let mut chain = Chain::new(degree);
        for g in &generators {
            chain.add(0, g.clone());
        }
        let small = u64::try_from(chain.order()).is_ok_and(|o| o <= ELEMENT_CACHE_LIMIT);
        let elements = small.then(|| chain.elements());
        Ok(PermGroup { degree, generators, chain, elements })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::new(degree, Vec::new()).expect("no generators")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn order(&self) -> BigUint {
        self.chain.order()
    }

    pub fn order_u64(&self) -> Option<u64> {
        u64::try_from(self.order()).ok()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.chain.contains(g)
    }

    /// All elements in sorted order, when the group is small enough.
    pub fn elements(&self) -> Option<&[Perm]> {
        self.elements.as_deref()
    }

    pub fn elements_or_err(&self) -> Result<&[Perm]> {
        self.elements()
            .ok_or_else(|| Error::Resource(format!("group of order {} too large to enumerate", self.order())))
    }

    /// Orbit of `point` under the generators, sorted.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let seeds = vec![vec![point]];
        orbit_of(&self.generators, &seeds[0], |g, t| t.iter().map(|&i| g.apply(i)).collect())
            .into_iter()
            .map(|t| t[0])
            .collect()
    }

    /// Whether the group acts transitively on ordered `k`-tuples of
    /// distinct points.
    pub fn is_k_transitive(&self, k: usize) -> bool {
        if k == 0 || k > self.degree {
            return k == 0;
        }
        let start: Vec<usize> = (0..k).collect();
        let orbit = orbit_of(&self.generators, &start, |g, t| t.iter().map(|&i| g.apply(i)).collect());
        let expected: usize = (self.degree - k + 1..=self.degree).product();
        orbit.len() == expected
    }
}

/// Closure of `start` under the generators for an arbitrary action.
pub fn orbit_of<T, F>(gens: &[Perm], start: &T, act: F) -> BTreeSet<T>
where
    T: Ord + Clone,
    F: Fn(&Perm, &T) -> T,
{
    let mut seen = BTreeSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = act(g, &x);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Partition of `items` into orbits of the action; orbits come out in the
/// order of their smallest members.
pub fn orbits_on<T, F>(gens: &[Perm], items: &[T], act: F) -> Result<Vec<Vec<T>>>
where
    T: Ord + Clone,
    F: Fn(&Perm, &T) -> T,
{
    let universe: BTreeSet<T> = items.iter().cloned().collect();
    let mut left = universe.clone();
    let mut out = Vec::new();
    while let Some(first) = left.iter().next().cloned() {
        let orbit = orbit_of(gens, &first, &act);
        if !orbit.is_subset(&universe) {
            return Err(contract("action does not preserve the given set"));
        }
        for x in &orbit {
            left.remove(x);
        }
        out.push(orbit.into_iter().collect());
    }
    Ok(out)
}

/// Sorted image of a point set.
pub fn act_on_set<const K: usize>(g: &Perm, s: &[usize; K]) -> [usize; K] {
    let mut out = s.map(|i| g.apply(i));
    out.sort_unstable();
    out
}

/// Elements reachable from the identity by breadth-first closure under
/// the generators. Independent of the stabilizer chain; used as a check.
pub fn closure_by_search(degree: usize, gens: &[Perm], limit: usize) -> Result<HashSet<Perm>> {
    let id = Perm::identity(degree);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                if seen.len() > limit {
                    return Err(Error::Resource(format!("closure exceeds {limit} elements")));
                }
                queue.push_back(y);
            }
        }
    }
    Ok(seen)
}
