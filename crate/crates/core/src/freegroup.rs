//! Free groups: words, the Magnus expansion and deviation, the Magnus
//! ordering, simple commutators and the strand-doubling homomorphism `θᵢ`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::letter::{free_reduce_letters, push_reduced, write_signed_list, Letter};
use crate::ncseries::{Coefficient, NcSeries};
use crate::Series;

/// Sign of an element with respect to a positive cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of<C: Signed>(c: &C) -> Sign {
        if c.is_positive() {
            Sign::Positive
        } else if c.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Positive
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Negative => "negative",
            Sign::Zero => "zero",
            Sign::Positive => "positive",
        })
    }
}

/// A word in `x₁,…,x_rank` and their inverses. Words are not kept reduced
/// automatically; the group operations below return reduced words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeWord {
    rank: usize,
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn new(rank: usize, letters: Vec<Letter>) -> Result<Self> {
        if let Some(l) = letters.iter().find(|l| l.index == 0 || l.index > rank) {
            return Err(Error::usage(format!(
                "generator x{} outside 1..={rank}",
                l.index
            )));
        }
        Ok(FreeWord { rank, letters })
    }

    /// From signed indices: `[1, -2]` is `x₁x₂⁻¹`.
    pub fn from_signed(rank: usize, letters: &[i64]) -> Result<Self> {
        let letters = letters
            .iter()
            .map(|&v| Letter::from_signed(v).ok_or_else(|| Error::usage("generator index 0")))
            .collect::<Result<Vec<_>>>()?;
        Self::new(rank, letters)
    }

    pub fn identity(rank: usize) -> Self {
        FreeWord {
            rank,
            letters: Vec::new(),
        }
    }

    pub fn generator(rank: usize, i: usize) -> Result<Self> {
        Self::new(rank, vec![Letter::pos(i)])
    }

    pub(crate) fn from_parts_unchecked(rank: usize, letters: Vec<Letter>) -> Self {
        FreeWord { rank, letters }
    }

    pub fn rank(&self) -> usize {
        self.rank
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

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    /// Whether the word represents the identity element.
    pub fn is_identity(&self) -> bool {
        self.reduce().is_empty()
    }

    pub fn reduce(&self) -> FreeWord {
        FreeWord {
            rank: self.rank,
            letters: free_reduce_letters(self.letters.iter().copied()),
        }
    }

    /// The same word viewed in a free group of larger rank.
    pub fn with_rank(&self, rank: usize) -> Result<FreeWord> {
        FreeWord::new(rank, self.letters.clone())
    }

    pub fn mul(&self, other: &FreeWord) -> Result<FreeWord> {
        if self.rank != other.rank {
            return Err(Error::usage(format!(
                "rank mismatch: {} vs {}",
                self.rank, other.rank
            )));
        }
        let mut out = free_reduce_letters(self.letters.iter().copied());
        for &l in &other.letters {
            push_reduced(&mut out, l);
        }
        Ok(FreeWord {
            rank: self.rank,
            letters: out,
        })
    }

    pub fn inv(&self) -> FreeWord {
        FreeWord {
            rank: self.rank,
            letters: free_reduce_letters(self.letters.iter().rev().map(|l| l.inverse())),
        }
    }

    /// `[a, b] = a⁻¹b⁻¹ab`.
    pub fn commutator(a: &FreeWord, b: &FreeWord) -> Result<FreeWord> {
        a.inv().mul(&b.inv())?.mul(a)?.mul(b)
    }

    /// Applies a substitution `xᵢ ↦ image(i)` letterwise and reduces.
    pub fn substitute(&self, rank: usize, image: impl Fn(usize) -> Vec<Letter>) -> FreeWord {
        let mut out = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            let img = image(l.index);
            if l.exp > 0 {
                img.into_iter().for_each(|g| push_reduced(&mut out, g));
            } else {
                img.into_iter()
                    .rev()
                    .for_each(|g| push_reduced(&mut out, g.inverse()));
            }
        }
        FreeWord { rank, letters: out }
    }

    /// The injective homomorphism `θᵢ : F_n → F_{n+1}`:
    /// `x_k ↦ x_k` for `k < i`, `xᵢ ↦ xᵢx_{i+1}`, `x_k ↦ x_{k+1}` for `k > i`.
    pub fn theta_apply(&self, i: usize) -> Result<FreeWord> {
        if i == 0 || i > self.rank {
            return Err(Error::usage(format!(
                "theta index {i} outside 1..={}",
                self.rank
            )));
        }
        Ok(self.substitute(self.rank + 1, |k| {
            use std::cmp::Ordering::*;
            match k.cmp(&i) {
                Less => vec![Letter::pos(k)],
                Equal => vec![Letter::pos(k), Letter::pos(k + 1)],
                Greater => vec![Letter::pos(k + 1)],
            }
        }))
    }

    /// Exponent sum of each generator; index 0 of the result is `x₁`.
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut sums = vec![0i64; self.rank];
        for l in &self.letters {
            sums[l.index - 1] += l.exp as i64;
        }
        sums
    }

    /// Number of maximal blocks `xᵢ^k` in the reduced word.
    pub fn syllables(&self) -> usize {
        let r = self.reduce();
        let mut count = 0;
        let mut prev = None;
        for l in &r.letters {
            if prev != Some(l.index) {
                count += 1;
                prev = Some(l.index);
            }
        }
        count
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signed_list(f, &self.letters)
    }
}

/// The left-nested commutator `[[⋯[x_{i₁}, x_{i₂}], ⋯], x_{i_d}]`, reduced.
pub fn simple_commutator(rank: usize, indices: &[usize]) -> Result<FreeWord> {
    if indices.len() < 2 {
        return Err(Error::usage(
            "a simple commutator needs at least two entries",
        ));
    }
    let mut acc = FreeWord::generator(rank, indices[0])?;
    for &i in &indices[1..] {
        acc = FreeWord::commutator(&acc, &FreeWord::generator(rank, i)?)?;
    }
    Ok(acc)
}

/// Magnus expansion `xᵢ ↦ 1 + Xᵢ`, truncated above degree `cap`.
pub fn magnus_expand<C: Coefficient>(w: &FreeWord, cap: usize) -> Result<NcSeries<C>> {
    if cap == 0 {
        return Err(Error::usage("magnus expansion needs cap >= 1"));
    }
    let mut acc = NcSeries::<C>::one(w.rank, cap);
    for l in &w.letters {
        if l.exp > 0 {
            // s·(1 + Xᵢ)
            acc = &acc + &acc.mul_var_right(l.index);
        } else {
            // s·(1 − Xᵢ + Xᵢ² − ⋯)
            let mut term = acc.clone();
            let mut sum = acc;
            for _ in 0..cap {
                term = term.mul_var_right(l.index).neg();
                if term.is_zero() {
                    break;
                }
                sum = &sum + &term;
            }
            acc = sum;
        }
    }
    Ok(acc)
}

/// Lowest-degree homogeneous part of `φ(w) − 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deviation<C> {
    pub degree: usize,
    /// Homogeneous of degree `degree`, stored with cap `degree`.
    pub form: NcSeries<C>,
}

impl<C: Coefficient> Deviation<C> {
    pub fn leading_sign(&self) -> Sign {
        self.form
            .leading_term()
            .map_or(Sign::Zero, |(_, c)| Sign::of(c))
    }
}

/// Deviation with the default ceiling (the reduced word length). A
/// nontrivial reduced word with `s` syllables has a nonzero degree-`s`
/// coefficient in `φ(w) − 1`, so the default never triggers.
pub fn deviation(w: &FreeWord) -> Option<Deviation<BigInt>> {
    let reduced = w.reduce();
    let ceiling = reduced.len().max(1);
    deviation_with_ceiling(&reduced, ceiling).expect("deviation degree is bounded by word length")
}

/// Deviation with an explicit ceiling on the truncation cap.
///
/// The expansion starts at cap 4 and doubles while `φ(w) − 1` vanishes up to
/// the cap; once the cap reaches `ceiling` without a nonzero term the search
/// stops with [`Error::DeviationCeiling`].
pub fn deviation_with_ceiling<C: Coefficient>(
    w: &FreeWord,
    ceiling: usize,
) -> Result<Option<Deviation<C>>> {
    let w = w.reduce();
    if w.is_empty() {
        return Ok(None);
    }
    // degree one is read off the abelianization
    let sums = w.exponent_sums();
    if sums.iter().any(|&e| e != 0) {
        let form = NcSeries::from_terms(
            w.rank,
            1,
            sums.iter()
                .enumerate()
                .map(|(k, &e)| (crate::Monomial::var(k + 1), coefficient_from_i64::<C>(e))),
        )?;
        return Ok(Some(Deviation { degree: 1, form }));
    }
    let mut cap = ceiling.clamp(1, 4);
    loop {
        let phi: NcSeries<C> = magnus_expand(&w, cap)?;
        let reduced = phi.checked_sub(&NcSeries::one(w.rank, cap))?;
        if let Some(d) = reduced.min_degree() {
            return Ok(Some(Deviation {
                degree: d,
                form: reduced.homogeneous_part(d).with_cap(d),
            }));
        }
        if cap >= ceiling {
            return Err(Error::DeviationCeiling { ceiling });
        }
        cap = (cap * 2).min(ceiling);
    }
}

fn coefficient_from_i64<C: Coefficient>(v: i64) -> C {
    let mut acc = C::zero();
    let unit = if v >= 0 { C::one() } else { -C::one() };
    for _ in 0..v.unsigned_abs() {
        acc = acc + unit.clone();
    }
    acc
}

/// Magnus ordering: positive when the smallest term of `φ(w) − 1` has a
/// positive coefficient.
pub fn sign_free(w: &FreeWord) -> Sign {
    deviation(w).map_or(Sign::Zero, |d| d.leading_sign())
}

pub fn sign_free_with_ceiling(w: &FreeWord, ceiling: Option<usize>) -> Result<Sign> {
    match ceiling {
        None => Ok(sign_free(w)),
        Some(c) => {
            Ok(deviation_with_ceiling::<BigInt>(w, c)?.map_or(Sign::Zero, |d| d.leading_sign()))
        }
    }
}

/// `δ(prev)·X_k − X_k·δ(prev)` in degree `deg(prev) + 1`.
pub fn bracket_with_var(prev: &Series, k: usize) -> Series {
    let cap = prev.cap() + 1;
    let lifted = prev.with_cap(cap);
    let x = Series::var(prev.rank(), cap, k).expect("variable within rank");
    &(&lifted * &x) - &(&x * &lifted)
}

/// Whether `c` is `±1`.
pub fn is_unit_coefficient<C: Coefficient>(c: &C) -> bool {
    c.abs().is_one()
}
