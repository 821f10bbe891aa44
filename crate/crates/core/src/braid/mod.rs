//! Braid words on `n` strands and the faithful Artin action on `F_n`.
//!
//! Letters are time-ordered, first letter first; `σᵢ` is the strand at
//! position `i` crossing over the strand at position `i + 1`.

mod combing;
mod strands;

pub use combing::{
    artin_comb, band_generator, kernel_extract, sign_pure, sign_pure_with_ceiling, BandLetter,
    Combing, PureSign,
};
pub use strands::{linking_number, strand_delete, strand_double, strand_insert_left};

use std::fmt;

use crate::error::{Error, Result};
use crate::freegroup::FreeWord;
use crate::letter::{free_reduce_letters, push_reduced, write_signed_list, Letter};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    n: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<Letter>) -> Result<Self> {
        if n == 0 {
            return Err(Error::usage("a braid needs at least one strand"));
        }
        if let Some(l) = letters.iter().find(|l| l.index == 0 || l.index >= n) {
            return Err(Error::usage(format!(
                "generator s{} outside 1..{n}",
                l.index
            )));
        }
        Ok(BraidWord { n, letters })
    }

    /// From signed indices: `[1, 1, -2]` is `σ₁σ₁σ₂⁻¹`.
    pub fn from_signed(n: usize, letters: &[i64]) -> Result<Self> {
        let letters = letters
            .iter()
            .map(|&v| Letter::from_signed(v).ok_or_else(|| Error::usage("generator index 0")))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, letters)
    }

    pub fn identity(n: usize) -> Self {
        BraidWord {
            n: n.max(1),
            letters: Vec::new(),
        }
    }

    pub(crate) fn from_parts_unchecked(n: usize, letters: Vec<Letter>) -> Self {
        BraidWord { n, letters }
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation, cancelling `σᵢσᵢ⁻¹` pairs at the junction.
    pub fn mul(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.n != other.n {
            return Err(Error::usage(format!(
                "strand mismatch: {} vs {}",
                self.n, other.n
            )));
        }
        let mut out = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut out, l);
        }
        Ok(BraidWord {
            n: self.n,
            letters: out,
        })
    }

    pub fn inv(&self) -> BraidWord {
        BraidWord {
            n: self.n,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Cancels adjacent `σᵢ^ε σᵢ^{−ε}` pairs.
    pub fn free_reduce(&self) -> BraidWord {
        BraidWord {
            n: self.n,
            letters: free_reduce_letters(self.letters.iter().copied()),
        }
    }

    /// Permutation induced on the base points.
    pub fn permutation(&self) -> Permutation {
        // strand_at[p] = starting position of the strand now at position p
        let mut strand_at: Vec<usize> = (1..=self.n).collect();
        for l in &self.letters {
            strand_at.swap(l.index - 1, l.index);
        }
        let mut images = vec![0; self.n];
        for (pos, &start) in strand_at.iter().enumerate() {
            images[start - 1] = pos + 1;
        }
        Permutation { images }
    }

    pub fn is_pure(&self) -> bool {
        self.permutation().is_identity()
    }

    /// Images of `x₁,…,x_n` under the Artin action, first letter acting
    /// first: the image of `w` under `b₁b₂` is the `b₂`-image of its
    /// `b₁`-image. With this convention the kernel factor read off by
    /// [`kernel_extract`] is multiplicative.
    pub fn artin_image(&self) -> Vec<FreeWord> {
        (1..=self.n)
            .map(|j| self.act_on(&[Letter::pos(j)]))
            .collect()
    }

    /// Artin image of a single generator `x_j`.
    pub fn artin_image_of(&self, j: usize) -> FreeWord {
        self.act_on(&[Letter::pos(j)])
    }

    fn act_on(&self, word: &[Letter]) -> FreeWord {
        let mut current = word.to_vec();
        for &s in &self.letters {
            current = act_letter(&current, s);
        }
        FreeWord::from_parts_unchecked(self.n, current)
    }

    /// Equality in `B_n`, decided by comparing Artin images.
    pub fn braid_equal(&self, other: &BraidWord) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::usage(format!(
                "strand mismatch: {} vs {}",
                self.n, other.n
            )));
        }
        // a = b iff a·b⁻¹ acts trivially; the quotient usually has shorter images
        Ok(self.mul(&other.inv())?.free_reduce().is_trivial())
    }

    /// Whether the braid is the identity of `B_n`.
    pub fn is_trivial(&self) -> bool {
        (1..=self.n).all(|j| {
            let img = self.artin_image_of(j);
            img.letters() == [Letter::pos(j)]
        })
    }
}

/// Applies the substitution of one Artin letter to a reduced word.
fn act_letter(word: &[Letter], s: Letter) -> Vec<Letter> {
    let i = s.index;
    let image = |k: usize| -> [Option<Letter>; 3] {
        match (s.exp > 0, k) {
            // σᵢ: xᵢ ↦ xᵢx_{i+1}xᵢ⁻¹, x_{i+1} ↦ xᵢ
            (true, k) if k == i => [
                Some(Letter::pos(i)),
                Some(Letter::pos(i + 1)),
                Some(Letter::neg(i)),
            ],
            (true, k) if k == i + 1 => [Some(Letter::pos(i)), None, None],
            // σᵢ⁻¹: xᵢ ↦ x_{i+1}, x_{i+1} ↦ x_{i+1}⁻¹xᵢx_{i+1}
            (false, k) if k == i => [Some(Letter::pos(i + 1)), None, None],
            (false, k) if k == i + 1 => [
                Some(Letter::neg(i + 1)),
                Some(Letter::pos(i)),
                Some(Letter::pos(i + 1)),
            ],
            (_, k) => [Some(Letter::pos(k)), None, None],
        }
    };
    let mut out = Vec::with_capacity(word.len() + word.len() / 2);
    for l in word {
        let img = image(l.index);
        if l.exp > 0 {
            img.iter()
                .flatten()
                .for_each(|&g| push_reduced(&mut out, g));
        } else {
            img.iter()
                .rev()
                .flatten()
                .for_each(|&g| push_reduced(&mut out, g.inverse()));
        }
    }
    out
}

impl fmt::Display for BraidWord {
    /// Canonical text form `-n <strands>` followed by the signed indices.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "-n {}", self.n)?;
        if !self.letters.is_empty() {
            f.write_str(" ")?;
            write_signed_list(f, &self.letters)?;
        }
        Ok(())
    }
}

/// A permutation of `1..=n`; position `p` at the top goes to `images[p-1]`
/// at the bottom.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || std::mem::replace(&mut seen[v - 1], true) {
                return Err(Error::usage(format!(
                    "{images:?} is not a permutation of 1..={n}"
                )));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, p: usize) -> usize {
        self.images[p - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (k, &v) in self.images.iter().enumerate() {
            inv[v - 1] = k + 1;
        }
        Permutation { images: inv }
    }

    /// First `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::usage("permutation size mismatch"));
        }
        Ok(Permutation {
            images: self.images.iter().map(|&v| other.apply(v)).collect(),
        })
    }

    /// The permutation obtained by splitting point `t` into two adjacent
    /// points that travel together.
    pub fn double(&self, t: usize) -> Result<Permutation> {
        let n = self.len();
        if t == 0 || t > n {
            return Err(Error::usage(format!(
                "doubling position {t} outside 1..={n}"
            )));
        }
        let target = self.apply(t);
        let shift = |v: usize| if v > target { v + 1 } else { v };
        let mut images = Vec::with_capacity(n + 1);
        for p in 1..=n {
            if p == t {
                images.push(target);
                images.push(target + 1);
            } else {
                images.push(shift(self.apply(p)));
            }
        }
        Ok(Permutation { images })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, v) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}
