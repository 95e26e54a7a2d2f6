//! Words over a signed generator alphabet: concatenation, inversion,
//! free/cyclic reduction and the left symmetric-group action.
//!
//! A word is a finite sequence of letters `g^±1`. Generators are split in
//! three kinds: source-external, target-external (both carrying a stable
//! 1-based index) and internal (identified by position in the owning
//! presentation's internal list).

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "index", rename_all = "lowercase")]
pub enum Generator {
    Source(u32),
    Target(u32),
    Internal(u32),
}

impl Generator {
    pub fn index(&self) -> u32 {
        match self {
            Generator::Source(i) | Generator::Target(i) | Generator::Internal(i) => *i,
        }
    }

    pub fn is_internal(&self) -> bool {
        matches!(self, Generator::Internal(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub gen: Generator,
    pub sign: Sign,
}

impl Letter {
    pub fn new(gen: Generator, sign: Sign) -> Self {
        Letter { gen, sign }
    }

    pub fn inverse(self) -> Letter {
        Letter { gen: self.gen, sign: self.sign.flip() }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.sign != other.sign
    }
}

/// The empty word is the unit of concatenation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Word(pub Vec<Letter>);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReduceMode {
    Free,
    FreeCyclic,
}

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letter(gen: Generator, sign: Sign) -> Word {
        Word(vec![Letter::new(gen, sign)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|w|_g`: occurrences of `g` regardless of sign.
    pub fn count(&self, gen: Generator) -> usize {
        self.0.iter().filter(|l| l.gen == gen).count()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Letters reversed, all signs flipped.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Single stack pass cancelling adjacent `g g^-1` / `g^-1 g` pairs;
    /// in cyclic mode also cancels first-against-last letters.
    pub fn reduce(&self, mode: ReduceMode) -> Word {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if stack.last().is_some_and(|top| top.cancels(l)) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        if mode == ReduceMode::FreeCyclic {
            while stack.len() >= 2 && stack[0].cancels(*stack.last().unwrap()) {
                stack.pop();
                stack.remove(0);
            }
        }
        Word(stack)
    }

    pub fn rotate_left(&self, offset: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let off = offset % self.0.len();
        let mut letters = Vec::with_capacity(self.0.len());
        letters.extend_from_slice(&self.0[off..]);
        letters.extend_from_slice(&self.0[..off]);
        Word(letters)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Letter> {
        self.0.iter()
    }
}

/// A bijection of `{1..n}` stored as its image table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if img == 0 || img as usize > n || seen[img as usize - 1] {
                return Err(Error::NotBijective { size: n });
            }
            seen[img as usize - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation { images: (1..=n as u32).collect() }
    }

    pub fn transposition(n: usize, i: usize) -> Permutation {
        assert!(i >= 1 && i < n, "adjacent transposition out of range");
        let mut images: Vec<u32> = (1..=n as u32).collect();
        images.swap(i - 1, i);
        Permutation { images }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// `σ(i)`, 1-based.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| img as usize == i + 1)
    }

    /// `compose(σ', σ)(i) = σ'(σ(i))`.
    pub fn compose(first_applied_after: &Permutation, first_applied: &Permutation) -> Result<Permutation> {
        let (sp, s) = (first_applied_after, first_applied);
        if sp.size() != s.size() {
            return Err(Error::ArityMismatch {
                expected: s.size(),
                got: sp.size(),
                context: "permutation composition".into(),
            });
        }
        let images = (1..=s.size()).map(|i| sp.image(s.image(i)) as u32).collect();
        Ok(Permutation { images })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.size()];
        for i in 1..=self.size() {
            images[self.image(i) - 1] = i as u32;
        }
        Permutation { images }
    }

    /// Direct product: acts as `self` on the first block and `other` on the second.
    pub fn product(&self, other: &Permutation) -> Permutation {
        let n = self.size();
        let mut images: Vec<u32> = self.images.clone();
        images.extend(other.images.iter().map(|&i| i + n as u32));
        Permutation { images }
    }

    /// Decomposition into adjacent transpositions `σ = t_k ∘ ... ∘ t_1`,
    /// fixing the leftmost inversion first. Returned as the 1-based left
    /// positions of the swaps, in application order.
    pub fn adjacent_transpositions(&self) -> Vec<usize> {
        let mut swaps = Vec::new();
        let mut rho = self.clone();
        loop {
            let mut found = None;
            for i in 1..rho.size() {
                if rho.image(i) > rho.image(i + 1) {
                    found = Some(i);
                    break;
                }
            }
            match found {
                None => break,
                Some(i) => {
                    swaps.push(i);
                    rho.images.swap(i - 1, i);
                }
            }
        }
        swaps
    }

    /// All permutations of `{1..n}` in lexicographic order of their image tables.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut images: Vec<u32> = (1..=n as u32).collect();
        loop {
            out.push(Permutation { images: images.clone() });
            // next lexicographic permutation
            let Some(i) = (0..images.len().saturating_sub(1)).rev().find(|&i| images[i] < images[i + 1]) else {
                break;
            };
            let j = (i + 1..images.len()).rev().find(|&j| images[j] > images[i]).unwrap();
            images.swap(i, j);
            images[i + 1..].reverse();
        }
        out
    }
}

/// Standard left action: the letter at position `i` of `w` appears at
/// position `σ(i)` of the result.
pub fn permute_word(sigma: &Permutation, w: &Word) -> Result<Word> {
    if sigma.size() != w.len() {
        return Err(Error::PermutationSize { size: sigma.size(), len: w.len() });
    }
    let mut letters = vec![Letter::new(Generator::Internal(0), Sign::Plus); w.len()];
    for (i, &l) in w.0.iter().enumerate() {
        letters[sigma.image(i + 1) - 1] = l;
    }
    Ok(Word(letters))
}
