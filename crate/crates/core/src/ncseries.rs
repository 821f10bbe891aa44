//! Truncated power series in noncommuting variables `X₁,…,X_rank`.
//!
//! A series carries its rank and its truncation cap: every stored monomial
//! has degree at most `cap`, and binary operations refuse operands whose
//! rank or cap differ instead of silently re-truncating.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;

use crate::error::{Error, Result};

/// Coefficient ring of a series: any signed integer-like type.
pub trait Coefficient: Clone + Eq + fmt::Debug + fmt::Display + Signed + Send + Sync {}

impl<T> Coefficient for T where T: Clone + Eq + fmt::Debug + fmt::Display + Signed + Send + Sync {}

/// A word `X_{i₁}⋯X_{i_d}` in the variables; the empty word is the unit.
///
/// Ordered first by degree, then lexicographically with `X₁ < X₂ < ⋯`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<usize>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        Monomial(vec![i])
    }

    pub fn new(vars: Vec<usize>) -> Self {
        Monomial(vars)
    }

    pub fn vars(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_var(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Monomial(v)
    }

    /// Number of occurrences of `Xᵢ`.
    pub fn count(&self, i: usize) -> usize {
        self.0.iter().filter(|&&v| v == i).count()
    }

    /// `Xⱼᵈ` for some `j`, with `d ≥ 1`.
    pub fn is_pure_power(&self) -> bool {
        match self.0.first() {
            Some(&first) => self.0.iter().all(|&v| v == first),
            None => false,
        }
    }

    /// All `i`-successors: indices above `i` shift up by one, and every
    /// occurrence of `i` becomes `i` or `i + 1`. There are `2^m` of them,
    /// `m` being the number of occurrences of `Xᵢ`.
    pub fn successors(&self, i: usize) -> Vec<Monomial> {
        let mut out = vec![Vec::with_capacity(self.0.len())];
        for &v in &self.0 {
            if v < i {
                out.iter_mut().for_each(|m| m.push(v));
            } else if v > i {
                out.iter_mut().for_each(|m| m.push(v + 1));
            } else {
                let mut bumped = out.clone();
                out.iter_mut().for_each(|m| m.push(i));
                bumped.iter_mut().for_each(|m| m.push(i + 1));
                out.extend(bumped);
            }
        }
        out.into_iter().map(Monomial).collect()
    }

    /// The unique `i`-successor that avoids `X_{i+1}`.
    pub fn minimal_successor(&self, i: usize) -> Monomial {
        Monomial(
            self.0
                .iter()
                .map(|&v| if v > i { v + 1 } else { v })
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for v in &self.0 {
            write!(f, "X{v}")?;
        }
        Ok(())
    }
}

/// Total order on monomials: degree first, then lexicographic.
pub fn mono_compare(a: &Monomial, b: &Monomial) -> Ordering {
    a.cmp(b)
}

/// A series truncated above degree `cap`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcSeries<C> {
    rank: usize,
    cap: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coefficient> NcSeries<C> {
    pub fn zero(rank: usize, cap: usize) -> Self {
        NcSeries {
            rank,
            cap,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize, cap: usize) -> Self {
        Self::constant(rank, cap, C::one())
    }

    pub fn constant(rank: usize, cap: usize, c: C) -> Self {
        let mut s = Self::zero(rank, cap);
        s.add_term(Monomial::unit(), c);
        s
    }

    /// `Xᵢ` (dropped if `cap == 0`).
    pub fn var(rank: usize, cap: usize, i: usize) -> Result<Self> {
        Self::from_terms(rank, cap, [(Monomial::var(i), C::one())])
    }

    /// Builds a series from `(monomial, coefficient)` pairs, summing repeats,
    /// dropping zeros and anything above the cap.
    pub fn from_terms(
        rank: usize,
        cap: usize,
        terms: impl IntoIterator<Item = (Monomial, C)>,
    ) -> Result<Self> {
        let mut s = Self::zero(rank, cap);
        for (m, c) in terms {
            if m.vars().iter().any(|&v| v == 0 || v > rank) {
                return Err(Error::usage(format!(
                    "monomial {m} has a variable outside 1..={rank}"
                )));
            }
            s.add_term(m, c);
        }
        Ok(s)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if m.degree() > self.cap || c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self, op: &str) -> Result<()> {
        if self.rank != other.rank || self.cap != other.cap {
            return Err(Error::usage(format!(
                "{op}: rank/cap mismatch ({}, {}) vs ({}, {})",
                self.rank, self.cap, other.rank, other.cap
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other, "add")?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other, "sub")?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Noncommutative product, truncated at the common cap.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other, "mul")?;
        let mut out = Self::zero(self.rank, self.cap);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                // terms are degree-sorted, so the rest of the row is too big
                if m1.degree() + m2.degree() > self.cap {
                    break;
                }
                out.add_term(m1.concat(m2), c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    /// Right multiplication by the single variable `Xᵢ` (index not checked
    /// against the rank; callers guarantee it).
    pub(crate) fn mul_var_right(&self, i: usize) -> Self {
        let mut out = Self::zero(self.rank, self.cap);
        for (m, c) in &self.terms {
            if m.degree() < self.cap {
                let mut v = m.vars().to_vec();
                v.push(i);
                out.terms.insert(Monomial(v), c.clone());
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        NcSeries {
            rank: self.rank,
            cap: self.cap,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    /// Same terms with a new cap; lowering the cap drops the excess terms.
    pub fn with_cap(&self, cap: usize) -> Self {
        NcSeries {
            rank: self.rank,
            cap,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= cap)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Same terms viewed in a ring with more variables.
    pub fn with_rank(&self, rank: usize) -> Result<Self> {
        if self.terms.keys().any(|m| m.max_var() > rank) {
            return Err(Error::usage(format!(
                "series uses variables beyond rank {rank}"
            )));
        }
        Ok(NcSeries {
            rank,
            cap: self.cap,
            terms: self.terms.clone(),
        })
    }

    /// The degree-`d` homogeneous part.
    pub fn homogeneous_part(&self, d: usize) -> Self {
        NcSeries {
            rank: self.rank,
            cap: self.cap,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Lowest degree carrying a nonzero term.
    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().next().map(Monomial::degree)
    }

    /// Smallest monomial with its coefficient.
    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            Some(d) => degrees.all(|e| e == d),
            None => true,
        }
    }

    /// The ring homomorphism `ξᵢ` into rank `rank + 1`:
    /// `X_k ↦ X_k` for `k < i`, `Xᵢ ↦ Xᵢ + X_{i+1}`, `X_k ↦ X_{k+1}` for `k > i`.
    pub fn xi_apply(&self, i: usize) -> Result<Self> {
        if i == 0 || i > self.rank {
            return Err(Error::usage(format!(
                "xi index {i} outside 1..={}",
                self.rank
            )));
        }
        let mut out = Self::zero(self.rank + 1, self.cap);
        for (m, c) in &self.terms {
            for succ in m.successors(i) {
                out.add_term(succ, c.clone());
            }
        }
        Ok(out)
    }
}

macro_rules! forward_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        /// Panics on rank or cap mismatch; use the `checked_*` method to get
        /// an error instead.
        impl<C: Coefficient> std::ops::$trait for &NcSeries<C> {
            type Output = NcSeries<C>;
            fn $method(self, rhs: Self) -> NcSeries<C> {
                match self.$checked(rhs) {
                    Ok(s) => s,
                    Err(e) => panic!("{e}"),
                }
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl<C: Coefficient> std::ops::Neg for &NcSeries<C> {
    type Output = NcSeries<C>;
    fn neg(self) -> NcSeries<C> {
        NcSeries::neg(self)
    }
}

/// Terms in increasing order, separated by spaces: the first bare, the
/// rest prefixed by `+` or `−` (U+2212). Unit coefficients are elided on
/// non-constant monomials, others are joined with `·`. The zero series
/// prints as `0`.
impl<C: Coefficient> fmt::Display for NcSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, false) => {}
                (0, true) => f.write_str("\u{2212}")?,
                (_, false) => f.write_str(" +")?,
                (_, true) => f.write_str(" \u{2212}")?,
            }
            let magnitude = c.abs();
            if m.is_unit() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}\u{b7}{m}")?;
            }
        }
        Ok(())
    }
}
