//! Braid words, their projection to permutations, the left-greedy Garside
//! normal form, and strand cabling.
//!
//! A word is read left to right in time order: its first letter acts first.
//! The letter `+j` is the generator crossing strands at positions `j` and
//! `j+1`, `-j` its inverse. The projection sends a word `w₁w₂…wₙ` to
//! `τ_{|w₁|} ∘ τ_{|w₂|} ∘ … ∘ τ_{|wₙ|}`, which is a monoid morphism for the
//! right-factor-first composition of [`Permutation`]. Read as a map it sends
//! an end position to the start position of the strand that arrives there.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("letter {letter} out of range for {strands} strands")]
    LetterOutOfRange { letter: i32, strands: usize },
    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("cabling position {position} outside 1..={strands}")]
    PositionOutOfRange { position: usize, strands: usize },
    #[error("cannot parse braid word `{input}` at token {token}: {reason}")]
    Parse {
        input: String,
        token: usize,
        reason: String,
    },
    #[error("a braid needs at least one strand")]
    NoStrands,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        if let Some(&letter) = letters
            .iter()
            .find(|&&l| l == 0 || l.unsigned_abs() as usize >= strands)
        {
            return Err(BraidError::LetterOutOfRange { letter, strands });
        }
        Ok(Self { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        assert!(strands > 0, "a braid needs at least one strand");
        Self {
            strands,
            letters: Vec::new(),
        }
    }

    pub fn generator(strands: usize, j: usize, positive: bool) -> Self {
        let letter = if positive { j as i32 } else { -(j as i32) };
        Self::new(strands, vec![letter]).expect("generator index in range")
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    pub fn push(&mut self, letter: i32) {
        assert!(
            letter != 0 && (letter.unsigned_abs() as usize) < self.strands,
            "letter {letter} out of range for {} strands",
            self.strands
        );
        self.letters.push(letter);
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    /// Places this braid on strands `offset+1..offset+self.strands` of a
    /// braid with `total` strands.
    pub fn embed(&self, total: usize, offset: usize) -> BraidWord {
        assert!(offset + self.strands <= total, "embedding does not fit");
        BraidWord {
            strands: total,
            letters: self
                .letters
                .iter()
                .map(|&l| l.signum() * (l.abs() + offset as i32))
                .collect(),
        }
    }

    pub fn underlying_permutation(&self) -> Permutation {
        let mut images: Vec<usize> = (0..self.strands).collect();
        // right-multiplying by τ_j swaps the images at positions j-1, j
        for &l in &self.letters {
            let j = l.unsigned_abs() as usize;
            images.swap(j - 1, j);
        }
        Permutation::from_images(images).expect("product of transpositions")
    }

    pub fn is_pure(&self) -> bool {
        self.underlying_permutation().is_identity()
    }

    pub fn garside(&self) -> GarsideForm {
        GarsideForm::of(self)
    }

    /// Canonical representative: `normal_form(u) == normal_form(v)` iff
    /// `u` and `v` are equal in the braid group.
    pub fn normal_form(&self) -> BraidWord {
        self.garside().to_word()
    }

    pub fn equivalent(&self, other: &BraidWord) -> bool {
        self.strands == other.strands && self.garside() == other.garside()
    }

    /// Replace strand `j` (1-based, at the source end) of `self` by
    /// `inner.strands()` parallel strands and run `inner` on them before
    /// `self`.
    pub fn cable_compose(&self, j: usize, inner: &BraidWord) -> Result<BraidWord, BraidError> {
        if j == 0 || j > self.strands {
            return Err(BraidError::PositionOutOfRange {
                position: j,
                strands: self.strands,
            });
        }
        let s = inner.strands as i32;
        let total = self.strands + inner.strands - 1;
        let mut out = inner.embed(total, j - 1);
        let mut cable = j as i32;
        for &l in &self.letters {
            let (sign, k) = (l.signum(), l.abs());
            if k + 1 < cable {
                out.letters.push(l);
            } else if k > cable {
                out.letters.push(sign * (k + s - 1));
            } else if k == cable {
                // the cable moves right past one strand
                out.letters
                    .extend((cable..cable + s).rev().map(|i| sign * i));
                cable += 1;
            } else {
                // one strand moves right past the cable
                out.letters
                    .extend((cable - 1..cable + s - 1).map(|i| sign * i));
                cable -= 1;
            }
        }
        Ok(out)
    }

    /// The crossing of a block of `left` strands starting at position `start`
    /// (1-based) with the `right` strands that follow it: the left block ends
    /// on the right. Either block may be empty.
    pub fn block_crossing(total: usize, start: usize, left: usize, right: usize, positive: bool) -> BraidWord {
        assert!(start >= 1, "positions are 1-based");
        assert!(
            left + right == 0 || start + left + right - 1 <= total,
            "blocks exceed strand count"
        );
        let sign = if positive { 1 } else { -1 };
        let mut letters = Vec::with_capacity(left * right);
        for i in (0..left).rev() {
            for t in 0..right {
                letters.push(sign * (start + i + t) as i32);
            }
        }
        BraidWord {
            strands: total.max(1),
            letters,
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

impl BraidWord {
    /// Parses whitespace-separated signed indices, e.g. `1 2 -1`.
    pub fn parse(strands: usize, text: &str) -> Result<BraidWord, BraidError> {
        let mut letters = Vec::new();
        for (token, part) in text.split_whitespace().enumerate() {
            let l: i32 = part.parse().map_err(|e| BraidError::Parse {
                input: text.to_string(),
                token,
                reason: format!("`{part}`: {e}"),
            })?;
            letters.push(l);
        }
        BraidWord::new(strands, letters)
    }
}

/// A braid word that carries its strand count, as `<r>:<letters>`.
impl FromStr for BraidWord {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (r, rest) = s.split_once(':').ok_or_else(|| BraidError::Parse {
            input: s.to_string(),
            token: 0,
            reason: "expected `<strands>:<letters>`".into(),
        })?;
        let strands = r.trim().parse().map_err(|e| BraidError::Parse {
            input: s.to_string(),
            token: 0,
            reason: format!("strand count: {e}"),
        })?;
        BraidWord::parse(strands, rest)
    }
}

/// Left-greedy normal form `Δ^inf · A₁ ⋯ A_k` with every `Aᵢ` a simple
/// braid strictly between the identity and `Δ`, and each pair
/// `(Aᵢ, Aᵢ₊₁)` left-weighted. Simple braids are stored as permutations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GarsideForm {
    pub strands: usize,
    pub inf: i64,
    pub factors: Vec<Permutation>,
}

fn half_twist(n: usize) -> Permutation {
    Permutation::from_images((0..n).rev().collect()).expect("reversal")
}

/// Right descents: generators `σ_j` that a simple braid can end with.
fn finishing(p: &Permutation, j: usize) -> bool {
    p.apply(j - 1) > p.apply(j)
}

/// Left descents: generators `σ_j` that a simple braid can start with.
fn starting(p_inv: &Permutation, j: usize) -> bool {
    p_inv.apply(j - 1) > p_inv.apply(j)
}

fn flip(delta: &Permutation, p: &Permutation) -> Permutation {
    delta.compose(p).compose(delta)
}

impl GarsideForm {
    pub fn of(word: &BraidWord) -> GarsideForm {
        let n = word.strands;
        let delta = half_twist(n);
        let mut inf: i64 = 0;
        let mut factors: Vec<Permutation> = Vec::new();
        for &l in &word.letters {
            let j = l.unsigned_abs() as usize;
            let t = Permutation::transposition(n, j);
            if l > 0 {
                factors.push(t);
            } else {
                // σ_j⁻¹ = Δ⁻¹ (Δσ_j⁻¹), and X Δ⁻¹ = Δ⁻¹ τ(X)
                for f in factors.iter_mut() {
                    *f = flip(&delta, f);
                }
                inf -= 1;
                factors.push(delta.compose(&t));
            }
        }
        let mut form = GarsideForm {
            strands: n,
            inf,
            factors,
        };
        form.normalize(&delta);
        form
    }

    fn normalize(&mut self, delta: &Permutation) {
        let n = self.strands;
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..self.factors.len().saturating_sub(1) {
                let (a, b) = (&self.factors[i], &self.factors[i + 1]);
                let mut a = a.clone();
                let mut b = b.clone();
                let mut moved = false;
                loop {
                    let b_inv = b.inverse();
                    let Some(j) = (1..n).find(|&j| starting(&b_inv, j) && !finishing(&a, j)) else {
                        break;
                    };
                    let t = Permutation::transposition(n, j);
                    a = a.compose(&t);
                    b = t.compose(&b);
                    moved = true;
                }
                if moved {
                    self.factors[i] = a;
                    self.factors[i + 1] = b;
                    changed = true;
                }
            }
        }
        let leading = self.factors.iter().take_while(|f| *f == delta).count();
        self.factors.drain(..leading);
        self.inf += leading as i64;
        while self.factors.last().is_some_and(Permutation::is_identity) {
            self.factors.pop();
        }
    }

    /// Deterministic letter expansion of the normal form.
    pub fn to_word(&self) -> BraidWord {
        let n = self.strands;
        let delta_word = reduced_word(&half_twist(n));
        let mut letters = Vec::new();
        if self.inf >= 0 {
            for _ in 0..self.inf {
                letters.extend(delta_word.iter().map(|&j| j as i32));
            }
        } else {
            for _ in 0..-self.inf {
                letters.extend(delta_word.iter().rev().map(|&j| -(j as i32)));
            }
        }
        for f in &self.factors {
            letters.extend(reduced_word(f).into_iter().map(|j| j as i32));
        }
        BraidWord { strands: n, letters }
    }

    /// Canonical length `k` (number of non-Δ factors).
    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }
}

impl fmt::Display for GarsideForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D^{}", self.inf)?;
        for p in &self.factors {
            write!(f, " {p}")?;
        }
        Ok(())
    }
}

/// A reduced word (generator indices, 1-based) for a permutation braid,
/// peeling the smallest right descent each time.
fn reduced_word(p: &Permutation) -> Vec<usize> {
    let n = p.size();
    let mut p = p.clone();
    let mut rev = Vec::with_capacity(p.length());
    while let Some(j) = (1..n).find(|&j| finishing(&p, j)) {
        p = p.compose(&Permutation::transposition(n, j));
        rev.push(j);
    }
    rev.reverse();
    rev
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(r: usize, letters: &[i32]) -> BraidWord {
        BraidWord::new(r, letters.to_vec()).unwrap()
    }

    #[test]
    fn projection_examples() {
        assert!(w(3, &[]).underlying_permutation().is_identity());
        assert_eq!(w(2, &[1]).underlying_permutation().one_line(), vec![2, 1]);
        assert_eq!(
            w(3, &[1, 2, 1]).underlying_permutation(),
            w(3, &[2, 1, 2]).underlying_permutation()
        );
        assert_eq!(
            w(3, &[-1]).underlying_permutation(),
            w(3, &[1]).underlying_permutation()
        );
    }

    #[test]
    fn purity() {
        assert!(w(2, &[]).is_pure());
        assert!(!w(2, &[1]).is_pure());
        assert!(w(2, &[1, 1]).is_pure());
    }

    #[test]
    fn normal_form_examples() {
        assert!(w(2, &[1, -1]).normal_form().is_empty());
        assert_eq!(w(3, &[1, 2, 1]).normal_form(), w(3, &[2, 1, 2]).normal_form());
        assert_eq!(w(4, &[1, 3]).normal_form(), w(4, &[3, 1]).normal_form());
        assert_ne!(w(3, &[1, 2]).normal_form(), w(3, &[2, 1]).normal_form());
        assert_ne!(w(2, &[1, 1]).normal_form(), w(2, &[]).normal_form());
    }

    #[test]
    fn full_twist_is_central_power_of_delta() {
        let delta_sq = w(3, &[1, 2, 1, 1, 2, 1]);
        let g = delta_sq.garside();
        assert_eq!(g.inf, 2);
        assert!(g.factors.is_empty());
        let conj = w(3, &[2, 1, 2, 1, 1, 2, 1, -2]);
        assert_eq!(conj.garside(), g);
    }

    #[test]
    fn negative_power_of_delta() {
        let g = w(3, &[-1, -2, -1]).garside();
        assert_eq!(g.inf, -1);
        assert!(g.factors.is_empty());
        assert!(w(3, &[-1, -2, -1, 2, 1, 2]).normal_form().is_empty());
    }

    #[test]
    fn letters_out_of_range() {
        assert!(BraidWord::new(3, vec![3]).is_err());
        assert!(BraidWord::new(3, vec![0]).is_err());
        assert!(BraidWord::new(0, vec![]).is_err());
    }

    #[test]
    fn parse_words() {
        assert_eq!(BraidWord::parse(3, "1 2 -1").unwrap().letters(), &[1, 2, -1]);
        assert!(matches!(
            BraidWord::parse(3, "1 x"),
            Err(BraidError::Parse { token: 1, .. })
        ));
        let b: BraidWord = "4: 3 -1".parse().unwrap();
        assert_eq!(b.strands(), 4);
    }

    #[test]
    fn cabling_units() {
        let u = w(3, &[1, -2, 1]);
        assert_eq!(u.cable_compose(2, &BraidWord::identity(1)).unwrap(), u);
        assert_eq!(BraidWord::identity(1).cable_compose(1, &u).unwrap(), u);
        assert!(u.cable_compose(4, &BraidWord::identity(1)).is_err());
    }

    #[test]
    fn cabled_generator_matches_block_crossing() {
        let gen = w(2, &[1]);
        for m in 1..=3 {
            for n in 1..=3 {
                let cabled = gen
                    .cable_compose(2, &BraidWord::identity(n))
                    .unwrap()
                    .cable_compose(1, &BraidWord::identity(m))
                    .unwrap();
                let block = BraidWord::block_crossing(m + n, 1, m, n, true);
                assert!(cabled.equivalent(&block), "m={m} n={n}");
            }
        }
    }
}
