//! Vertex permutations, cyclic segment reversals and the dihedral maps of
//! the cyclic vertex arrangement.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A bijection of `0..n`; `images[i]` is the image of vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Wraps 0-based images, checking that they form a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::invalid(format!(
                    "{} is not a permutation of 1..={n}",
                    one_based(&images)
                )));
            }
        }
        Ok(Permutation { images })
    }

    /// Swaps two 0-based vertices.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a >= n || b >= n {
            return Err(Error::invalid(format!("transposition outside 1..={n}")));
        }
        let mut p = Self::identity(n);
        p.images.swap(a, b);
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::invalid(format!(
                "cannot compose permutations of sizes {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// Every permutation of `0..n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (0..n).permutations(n).map(|images| Permutation { images })
    }
}

fn one_based(images: &[usize]) -> String {
    images.iter().map(|x| (x + 1).to_string()).join(",")
}

/// Comma-separated 1-based images, e.g. `2,1,3,4,5`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&one_based(&self.images))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let images = s
            .split(',')
            .map(|t| match t.trim().parse::<usize>() {
                Ok(x) if x >= 1 => Ok(x - 1),
                _ => Err(Error::invalid(format!("bad permutation entry {t:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_images(images)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A cyclic block `l, l+1, ..., k` (1-based, wrapping past `n` when
/// `l > k`) of the arrangement `v_1, ..., v_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SigmaSpec {
    n: usize,
    l: usize,
    k: usize,
}

impl SigmaSpec {
    pub fn new(n: usize, l: usize, k: usize) -> Result<Self> {
        if n == 0 || !(1..=n).contains(&l) || !(1..=n).contains(&k) {
            return Err(Error::invalid(format!(
                "segment endpoints ({l}, {k}) must lie in 1..={n}"
            )));
        }
        Ok(SigmaSpec { n, l, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn block_length(&self) -> usize {
        if self.l <= self.k {
            self.k - self.l + 1
        } else {
            self.n - self.l + 1 + self.k
        }
    }
}

impl fmt::Display for SigmaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sigma[{},{}] (n={})", self.l, self.k, self.n)
    }
}

/// Reverses the cyclic block described by `spec` in place and fixes
/// every other vertex: `v_i -> v_{k-i+l}` with indices taken mod `n`.
pub fn sigma_lk(spec: SigmaSpec) -> Permutation {
    let n = spec.n;
    let (l, k) = (spec.l - 1, spec.k - 1);
    let mut images: Vec<usize> = (0..n).collect();
    for t in 0..spec.block_length() {
        images[(l + t) % n] = (k + n - t) % n;
    }
    Permutation { images }
}

/// Rotation `v_i -> v_{i+j}`.
pub fn rotation(n: usize, j: usize) -> Permutation {
    Permutation {
        images: (0..n).map(|i| (i + j) % n).collect(),
    }
}

/// Reflection `v_i -> v_{j-i}`.
pub fn reflection(n: usize, j: usize) -> Permutation {
    Permutation {
        images: (0..n).map(|i| (j % n + n - i) % n).collect(),
    }
}

/// The `2n` rotations and reflections of the cyclic arrangement, sorted
/// and deduplicated.
pub fn dihedral(n: usize) -> Result<Vec<Permutation>> {
    if n < 3 {
        return Err(Error::invalid(format!("dihedral family needs n >= 3, got {n}")));
    }
    let set: BTreeSet<_> = (0..n).flat_map(|j| [rotation(n, j), reflection(n, j)]).collect();
    Ok(set.into_iter().collect())
}

/// Every segment reversal whose block length lies in `2..=n-2`, keyed by
/// the first `(l, k)` producing it and sorted by permutation.
pub fn all_sigma_candidates(n: usize) -> Result<Vec<(SigmaSpec, Permutation)>> {
    if n < 5 {
        return Err(Error::invalid(format!("segment reversals need n >= 5, got {n}")));
    }
    let mut out: Vec<(SigmaSpec, Permutation)> = Vec::new();
    let mut seen = BTreeSet::new();
    for l in 1..=n {
        for k in 1..=n {
            let spec = SigmaSpec { n, l, k };
            if !(2..=n - 2).contains(&spec.block_length()) {
                continue;
            }
            let p = sigma_lk(spec);
            if seen.insert(p.clone()) {
                out.push((spec, p));
            }
        }
    }
    out.sort_by(|a, b| a.1.cmp(&b.1));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    /// Reverses the clockwise list of block positions directly.
    fn reversal_oracle(n: usize, l: usize, k: usize) -> Vec<usize> {
        let mut block = vec![l - 1];
        while *block.last().unwrap() != k - 1 {
            block.push((block.last().unwrap() + 1) % n);
        }
        let mut images: Vec<usize> = (0..n).collect();
        for (src, dst) in block.iter().zip(block.iter().rev()) {
            images[*src] = *dst;
        }
        images
    }

    #[test]
    fn sigma_examples() {
        let s = sigma_lk(SigmaSpec::new(7, 2, 4).unwrap());
        assert_eq!(s.to_string(), "1,4,3,2,5,6,7");

        assert!(sigma_lk(SigmaSpec::new(6, 3, 3).unwrap()).is_identity());

        let wrap = SigmaSpec::new(6, 5, 2).unwrap();
        assert_eq!(wrap.block_length(), 4);
        assert_eq!(sigma_lk(wrap).to_string(), "6,5,3,4,2,1");
        assert_eq!(sigma_lk(wrap).images(), reversal_oracle(6, 5, 2).as_slice());
    }

    #[test]
    fn sigma_matches_list_reversal() {
        for n in 1..=10 {
            for l in 1..=n {
                for k in 1..=n {
                    let spec = SigmaSpec::new(n, l, k).unwrap();
                    assert_eq!(sigma_lk(spec).images(), reversal_oracle(n, l, k).as_slice(), "{spec}");
                }
            }
        }
    }

    #[test]
    fn sigma_spec_validation() {
        assert!(SigmaSpec::new(5, 0, 2).is_err());
        assert!(SigmaSpec::new(5, 2, 6).is_err());
        assert_eq!(SigmaSpec::new(5, 3, 3).unwrap().block_length(), 1);
        assert_eq!(SigmaSpec::new(5, 4, 3).unwrap().block_length(), 5);
    }

    #[test]
    fn dihedral_basics() {
        assert!(rotation(5, 0).is_identity());
        assert_eq!(dihedral(6).unwrap().len(), 12);
        assert_eq!(dihedral(3).unwrap().len(), 6);
        assert!(dihedral(2).is_err());
    }

    #[test]
    fn compose_and_inverse() {
        let f = p("3,1,2,5,4");
        let id = Permutation::identity(5);
        assert_eq!(f.compose(&id).unwrap(), f);
        assert_eq!(id.compose(&f).unwrap(), f);
        assert!(f.compose(&f.inverse()).unwrap().is_identity());
        assert_eq!(rotation(5, 1).compose(&rotation(5, 1)).unwrap(), rotation(5, 2));
        assert!(f.compose(&Permutation::identity(4)).is_err());

        // (f∘g)(i) = f(g(i))
        let g = p("2,1,3,4,5");
        assert_eq!(f.compose(&g).unwrap().to_string(), "1,3,2,5,4");

        assert!(id.inverse().is_identity());
        let t = Permutation::transposition(5, 1, 3).unwrap();
        assert_eq!(t.inverse(), t);
        assert_eq!(rotation(6, 1).inverse(), rotation(6, 5));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("2,1,3,4,5"), Permutation::transposition(5, 0, 1).unwrap());
        assert_eq!(p(" 2, 1 ,3").to_string(), "2,1,3");
        assert!("1,1,2".parse::<Permutation>().is_err());
        assert!("0,1".parse::<Permutation>().is_err());
        assert!("1,x".parse::<Permutation>().is_err());
        assert!("1,4,2".parse::<Permutation>().is_err());
    }

    #[test]
    fn candidates() {
        let c6 = all_sigma_candidates(6).unwrap();
        assert_eq!(c6.len(), 6 * 3);
        let swap12 = Permutation::transposition(6, 0, 1).unwrap();
        assert!(c6.iter().any(|(_, q)| *q == swap12));
        let full = sigma_lk(SigmaSpec::new(6, 1, 6).unwrap());
        assert!(c6.iter().all(|(_, q)| *q != full));
        assert!(all_sigma_candidates(4).is_err());

        for n in 5..=10 {
            let d: BTreeSet<_> = dihedral(n).unwrap().into_iter().collect();
            for (spec, q) in all_sigma_candidates(n).unwrap() {
                assert!(!q.is_identity());
                assert!(!d.contains(&q), "{spec} is dihedral");
            }
        }
    }

    #[test]
    fn all_counts() {
        assert_eq!(Permutation::all(4).count(), 24);
        assert_eq!(Permutation::all(0).count(), 1);
    }
}
