//! Permutations in one-line notation.
//!
//! A permutation of `{1..r}` is stored 0-based; composition applies the
//! right factor first, `(p * q)(i) = p(q(i))`, matching the group tables.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a permutation: {0}")]
pub struct PermutationError(pub String);

impl Permutation {
    pub fn identity(r: usize) -> Self {
        Self {
            images: (0..r as u8).collect(),
        }
    }

    /// From 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermutationError> {
        let r = images.len();
        let mut seen = vec![false; r];
        for &x in &images {
            if x >= r || std::mem::replace(&mut seen[x], true) {
                return Err(PermutationError(format!("{images:?} is not a bijection on 0..{r}")));
            }
        }
        Ok(Self {
            images: images.into_iter().map(|x| x as u8).collect(),
        })
    }

    /// From the usual 1-based one-line notation.
    pub fn from_one_line(one_line: &[usize]) -> Result<Self, PermutationError> {
        if one_line.contains(&0) {
            return Err(PermutationError(format!("{one_line:?} uses 0 in 1-based notation")));
        }
        Self::from_images(one_line.iter().map(|&x| x - 1).collect())
    }

    /// Adjacent transposition swapping `j` and `j+1` (1-based `j`).
    pub fn transposition(r: usize, j: usize) -> Self {
        assert!(j >= 1 && j < r, "transposition ({j} {}) outside 1..{r}", j + 1);
        let mut p = Self::identity(r);
        p.images.swap(j - 1, j);
        p
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// 0-based image of a 0-based point.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images().map(|x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images().enumerate().all(|(i, x)| i == x)
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.size(), other.size(), "composing permutations of different sizes");
        Permutation {
            images: other.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.size()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    /// Number of inversions (Coxeter length).
    pub fn length(&self) -> usize {
        let n = self.size();
        (0..n)
            .map(|i| (i + 1..n).filter(|&j| self.images[i] > self.images[j]).count())
            .sum()
    }

    /// Replace the point `k` (0-based) of the domain by a block carrying
    /// `inner`. The result acts on `size + inner.size - 1` points: domain
    /// points of the block map into the block sitting at `self(k)` in the
    /// codomain, permuted by `inner`; every other point keeps its relative
    /// position.
    ///
    /// Read as a "position → slot" list this is operadic substitution of
    /// slot `self(k)`; read as an end-to-start strand map it is the
    /// permutation of a cabled braid.
    pub fn substitute_block(&self, k: usize, inner: &Permutation) -> Permutation {
        let r = self.size();
        let s = inner.size();
        assert!(k < r, "block index {k} outside 0..{r}");
        let target = self.apply(k);
        let shift = |x: usize| if x < target { x } else { x + s - 1 };
        let mut images = Vec::with_capacity(r + s - 1);
        for q in 0..r {
            if q == k {
                images.extend(inner.images().map(|t| target + t));
            } else {
                images.push(shift(self.apply(q)));
            }
        }
        Permutation {
            images: images.into_iter().map(|x| x as u8).collect(),
        }
    }

    /// Operadic composition for permutations read as "position → slot"
    /// lists: substitute `inner` for slot `j` (1-based).
    pub fn operadic_compose(&self, j: usize, inner: &Permutation) -> Permutation {
        let k = self.inverse().apply(j - 1);
        self.substitute_block(k, inner)
    }

    /// All permutations of `r` points in lexicographic order.
    pub fn all(r: usize) -> Vec<Permutation> {
        let mut current: Vec<u8> = (0..r as u8).collect();
        let mut out = vec![Permutation {
            images: current.clone(),
        }];
        while let Some(i) = (1..r).rev().find(|&i| current[i - 1] < current[i]) {
            let j = (i..r).rev().find(|&j| current[j] > current[i - 1]).unwrap();
            current.swap(i - 1, j);
            current[i..].reverse();
            out.push(Permutation {
                images: current.clone(),
            });
        }
        out
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = PermutationError;

    fn try_from(one_line: Vec<usize>) -> Result<Self, Self::Error> {
        Permutation::from_one_line(&one_line)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.one_line()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_line().iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for Permutation {
    type Err = PermutationError;

    /// Accepts `[2,1,3]`, `2,1,3` or `2 1 3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        if body.trim().is_empty() {
            return Ok(Permutation::identity(0));
        }
        let values: Result<Vec<usize>, _> = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect();
        let values = values.map_err(|e| PermutationError(format!("`{s}`: {e}")))?;
        Permutation::from_one_line(&values)
    }
}
