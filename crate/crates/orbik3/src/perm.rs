//! Permutations in cycle notation and stabilizer chains.
//!
//! Points are stored 0-based and printed 1-based. `p.then(&q)` applies `p`
//! first; `p.compose(&q)` is `p ∘ q`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::GroupError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// 0-based image array.
    pub fn from_images(images: Vec<usize>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(GroupError::NotPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Cycles with 1-based labels.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self, GroupError> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                if a == 0 || a > n || seen[a - 1] {
                    return Err(GroupError::NotPermutation(format!("{cycles:?}")));
                }
                seen[a - 1] = true;
                images[a - 1] = c[(k + 1) % c.len()] - 1;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses `(1,2,3)(4,5)` or `()` as a permutation of degree `n`.
    pub fn parse(n: usize, s: &str) -> Result<Self, GroupError> {
        let bad = || GroupError::NotPermutation(s.to_string());
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if !t.is_empty() && t != "()" {
            if !t.starts_with('(') || !t.ends_with(')') {
                return Err(bad());
            }
            for part in t[1..t.len() - 1].split(")(") {
                let c: Result<Vec<usize>, _> = part.split(',').map(usize::from_str).collect();
                cycles.push(c.map_err(|_| bad())?);
            }
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Self::from_cycles(n, &refs)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of a 0-based point.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// Image of a 1-based label.
    pub fn image_of(&self, label: usize) -> usize {
        self.images[label - 1] + 1
    }

    pub fn then(&self, q: &Self) -> Self {
        Permutation { images: self.images.iter().map(|&i| q.images[i]).collect() }
    }

    pub fn compose(&self, q: &Self) -> Self {
        q.then(self)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, k: u64) -> Self {
        (0..k).fold(Self::identity(self.degree()), |acc, _| acc.then(self))
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Disjoint cycles of length > 1, 1-based, each starting at its least
    /// element, ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = vec![];
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                c.push(i + 1);
                i = self.images[i];
            }
            if c.len() > 1 {
                out.push(c);
            }
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    /// Image of a set of 1-based labels, sorted.
    pub fn image_set(&self, labels: &[usize]) -> Vec<usize> {
        let mut v: Vec<usize> = labels.iter().map(|&l| self.image_of(l)).collect();
        v.sort_unstable();
        v
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs = self.cycles();
        if cs.is_empty() {
            return write!(f, "()");
        }
        for c in cs {
            let s: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", s.join(","))?;
        }
        Ok(())
    }
}

/// A permutation group with a stabilizer chain on the base `0, 1, …, n−1`.
///
/// `table[k][j]`, when present, maps `k` to `j` and fixes `0..k`.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    table: Vec<Vec<Option<Permutation>>>,
    strong: Vec<Vec<Permutation>>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: &[Permutation]) -> Result<Self, GroupError> {
        let id = Permutation::identity(degree);
        let mut table = vec![vec![None; degree]; degree];
        for (k, row) in table.iter_mut().enumerate() {
            row[k] = Some(id.clone());
        }
        let mut g = PermGroup { degree, generators: Vec::new(), table, strong: vec![Vec::new(); degree] };
        for p in generators {
            if p.degree() != degree {
                return Err(GroupError::Degree { expected: degree, found: p.degree() });
            }
            g.generators.push(p.clone());
            g.alter(0, p.clone());
        }
        Ok(g)
    }

    fn sift_from(&self, k: usize, mut p: Permutation) -> Result<(), (usize, Permutation)> {
        for m in k..self.degree {
            let j = p.apply(m);
            match &self.table[m][j] {
                Some(t) => p = p.then(&t.inverse()),
                None => return Err((m, p)),
            }
        }
        Ok(())
    }

    fn alter(&mut self, k: usize, p: Permutation) {
        if k >= self.degree || self.sift_from(k, p.clone()).is_ok() {
            return;
        }
        self.strong[k].push(p.clone());
        let reps: Vec<Permutation> = self.table[k].iter().flatten().cloned().collect();
        for s in reps {
            self.enter(k, s.then(&p));
        }
    }

    fn enter(&mut self, k: usize, p: Permutation) {
        let j = p.apply(k);
        match self.table[k][j].clone() {
            None => {
                self.table[k][j] = Some(p.clone());
                let gens = self.strong[k].clone();
                for t in gens {
                    self.enter(k, p.then(&t));
                }
            }
            Some(t) => self.alter(k + 1, p.then(&t.inverse())),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Sizes of the fundamental orbits along the base.
    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.table.iter().map(|r| r.iter().filter(|x| x.is_some()).count()).collect()
    }

    pub fn order(&self) -> BigInt {
        self.orbit_sizes().into_iter().fold(BigInt::one(), |acc, s| acc * s)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.sift_from(0, p.clone()).is_ok()
    }

    /// Orbit of a 0-based point.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut queue = VecDeque::from([point]);
        seen[point] = true;
        let mut out = vec![];
        while let Some(x) = queue.pop_front() {
            out.push(x);
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// All elements, by breadth-first closure; `None` beyond `cap`.
    pub fn elements(&self, cap: usize) -> Option<Vec<Permutation>> {
        let id = Permutation::identity(self.degree);
        let mut seen = std::collections::HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        let mut out = vec![];
        while let Some(x) = queue.pop_front() {
            out.push(x.clone());
            if out.len() > cap {
                return None;
            }
            for g in &self.generators {
                let y = x.then(g);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        out.sort();
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_notation_round_trip() {
        let p = Permutation::parse(12, "(1,6,5,4,10,9,12,7,11,3,2)").unwrap();
        assert_eq!(p.to_string(), "(1,6,5,4,10,9,12,7,11,3,2)");
        assert_eq!(p.order(), 11);
        assert_eq!(Permutation::identity(5).to_string(), "()");
        assert!(Permutation::parse(4, "(1,1)").is_err());
    }

    #[test]
    fn symmetric_groups() {
        let s = Permutation::parse(5, "(1,2)").unwrap();
        let c = Permutation::parse(5, "(1,2,3,4,5)").unwrap();
        let g = PermGroup::new(5, &[s.clone(), c]).unwrap();
        assert_eq!(g.order(), BigInt::from(120));
        let h = PermGroup::new(5, &[s]).unwrap();
        assert_eq!(h.order(), BigInt::from(2));
        assert!(!h.contains(&Permutation::parse(5, "(1,3)").unwrap()));
    }

    #[test]
    fn composition_order() {
        let p = Permutation::parse(3, "(1,2)").unwrap();
        let q = Permutation::parse(3, "(2,3)").unwrap();
        // apply p then q: 1 -> 2 -> 3
        assert_eq!(p.then(&q).image_of(1), 3);
        assert_eq!(p.compose(&q).image_of(1), 2);
    }
}
