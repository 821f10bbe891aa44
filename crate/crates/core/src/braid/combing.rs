//! Pure-braid generators `A_{i,j}`, the kernel of strand deletion, Artin
//! combing and the resulting bi-order on `P_n`.

use std::fmt;

use crate::error::{Error, Result};
use crate::freegroup::{sign_free_with_ceiling, FreeWord, Sign};
use crate::letter::{free_reduce_letters, Letter};

use super::strands::{strand_delete, strand_insert_left};
use super::BraidWord;

/// `A_{i,j}^exp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BandLetter {
    pub i: usize,
    pub j: usize,
    pub exp: i8,
}

impl BandLetter {
    pub fn new(i: usize, j: usize, exp: i8) -> Self {
        BandLetter { i, j, exp }
    }

    pub fn inverse(self) -> Self {
        BandLetter {
            exp: -self.exp,
            ..self
        }
    }

    fn cancels(self, other: BandLetter) -> bool {
        self.i == other.i && self.j == other.j && self.exp == -other.exp
    }

    /// σ-word of this letter on `n` strands.
    pub fn expand(self, n: usize) -> Result<BraidWord> {
        let a = band_generator(self.i, self.j, n)?;
        Ok(if self.exp > 0 { a } else { a.inv() })
    }
}

impl fmt::Display for BandLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A({},{})^{}", self.i, self.j, self.exp)
    }
}

/// `A_{i,j} = (σ_{j−1}⋯σ_{i+1}) σᵢ² (σ_{i+1}⁻¹⋯σ_{j−1}⁻¹)` on `n` strands.
pub fn band_generator(i: usize, j: usize, n: usize) -> Result<BraidWord> {
    if !(1 <= i && i < j && j <= n) {
        return Err(Error::usage(format!(
            "A({i},{j}) needs 1 <= i < j <= n = {n}"
        )));
    }
    let mut letters: Vec<Letter> = (i + 1..j).rev().map(Letter::pos).collect();
    letters.push(Letter::pos(i));
    letters.push(Letter::pos(i));
    letters.extend((i + 1..j).map(Letter::neg));
    Ok(BraidWord::from_parts_unchecked(n, letters))
}

/// For `b` in the kernel of `η`, the word in `y_j = A_{1,j}` representing
/// it, returned as a rank-`n` free word whose index `j ≥ 2` stands for
/// `y_j`.
///
/// The Artin image of `x₁` is a conjugate `U x₁ U⁻¹`; the answer is `U` with
/// `x₁` killed.
pub fn kernel_extract(b: &BraidWord) -> Result<FreeWord> {
    if !b.is_pure() {
        return Err(Error::domain("kernel_extract needs a pure braid"));
    }
    if b.strands() >= 2 && !strand_delete(b, 1)?.is_trivial() {
        return Err(Error::domain(
            "braid does not lie in the kernel of first-strand deletion",
        ));
    }
    extract_unchecked(b)
}

fn extract_unchecked(b: &BraidWord) -> Result<FreeWord> {
    let n = b.strands();
    let image = b.artin_image_of(1);
    let w = image.letters();
    let half = w.len() / 2;
    let conjugator = &w[..half];
    let expected: Vec<Letter> = conjugator
        .iter()
        .copied()
        .chain(std::iter::once(Letter::pos(1)))
        .chain(conjugator.iter().rev().map(|l| l.inverse()))
        .collect();
    if w.len().is_multiple_of(2) || w != expected.as_slice() {
        return Err(Error::domain(format!(
            "image of x1 is not a conjugate of x1: {image}"
        )));
    }
    let killed = free_reduce_letters(conjugator.iter().copied().filter(|l| l.index != 1));
    FreeWord::new(n, killed)
}

/// `p = f₁f₂⋯f_{n−1}` with `f_k` a reduced word in `A_{n−k,l}`, `l > n−k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Combing {
    n: usize,
    factors: Vec<Vec<BandLetter>>,
}

impl Combing {
    pub fn strands(&self) -> usize {
        self.n
    }

    /// `factors()[k-1]` is `f_k`.
    pub fn factors(&self) -> &[Vec<BandLetter>] {
        &self.factors
    }

    pub fn factor(&self, k: usize) -> &[BandLetter] {
        &self.factors[k - 1]
    }

    /// Index of the first nontrivial factor.
    pub fn first_nontrivial(&self) -> Option<usize> {
        self.factors
            .iter()
            .position(|f| !f.is_empty())
            .map(|k| k + 1)
    }

    /// `f_k` as a word of rank `k`, reading `A_{n−k,l}` as `x_{l−(n−k)}`.
    pub fn factor_word(&self, k: usize) -> FreeWord {
        let base = self.n - k;
        FreeWord::from_parts_unchecked(
            k,
            self.factor(k)
                .iter()
                .map(|a| Letter::new(a.j - base, a.exp))
                .collect(),
        )
    }

    /// Whether every `f_k` only uses letters `A_{n−k,l}` with `l > n−k` and
    /// is freely reduced.
    pub fn is_well_formed(&self) -> bool {
        self.factors.iter().enumerate().all(|(idx, f)| {
            let first = self.n - (idx + 1);
            f.iter()
                .all(|a| a.i == first && a.j > first && a.j <= self.n)
                && f.windows(2).all(|w| !w[0].cancels(w[1]))
        })
    }

    /// σ-word of `f₁f₂⋯f_{n−1}`.
    pub fn expand(&self) -> BraidWord {
        let mut letters = Vec::new();
        for a in self.factors.iter().flatten() {
            let word = a.expand(self.n).expect("combing letters are in range");
            letters.extend_from_slice(word.letters());
        }
        BraidWord::from_parts_unchecked(self.n, letters)
    }
}

impl fmt::Display for Combing {
    /// One line per factor, `f<k>: A(i,j)^±1 …`, with `1` for a trivial one.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, factor) in self.factors.iter().enumerate() {
            if idx > 0 {
                writeln!(f)?;
            }
            write!(f, "f{}:", idx + 1)?;
            if factor.is_empty() {
                f.write_str(" 1")?;
            }
            for a in factor {
                write!(f, " {a}")?;
            }
        }
        Ok(())
    }
}

/// Artin combing of a pure braid.
pub fn artin_comb(p: &BraidWord) -> Result<Combing> {
    if !p.is_pure() {
        return Err(Error::domain("Artin combing needs a pure braid"));
    }
    let n = p.strands();
    let mut factors = vec![Vec::new(); n.saturating_sub(1)];
    let mut current = p.free_reduce();
    // level m peels the kernel factor of P_m, which is f_{m−1} of p
    for m in (2..=n).rev() {
        let q = strand_delete(&current, 1)?;
        let kernel = strand_insert_left(&q).inv().mul(&current)?.free_reduce();
        let shift = n - m;
        let word = extract_unchecked(&kernel)?;
        factors[m - 2] = word
            .letters()
            .iter()
            .map(|l| BandLetter::new(1 + shift, l.index + shift, l.exp))
            .collect();
        current = q.free_reduce();
    }
    Ok(Combing { n, factors })
}

/// Sign of a pure braid together with the deciding factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PureSign {
    pub sign: Sign,
    /// `(k, f_k)` for the first nontrivial factor, if any.
    pub decided_by: Option<(usize, Vec<BandLetter>)>,
}

/// Lexicographic order along the combing, Magnus order in each factor.
pub fn sign_pure(p: &BraidWord) -> Result<Sign> {
    sign_pure_with_ceiling(p, None).map(|s| s.sign)
}

pub fn sign_pure_with_ceiling(p: &BraidWord, ceiling: Option<usize>) -> Result<PureSign> {
    let combing = artin_comb(p)?;
    match combing.first_nontrivial() {
        None => Ok(PureSign {
            sign: Sign::Zero,
            decided_by: None,
        }),
        Some(k) => {
            let sign = sign_free_with_ceiling(&combing.factor_word(k), ceiling)?;
            Ok(PureSign {
                sign,
                decided_by: Some((k, combing.factor(k).to_vec())),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{linking_number, strand_double};
    use proptest::prelude::*;

    fn b(n: usize, v: &[i64]) -> BraidWord {
        BraidWord::from_signed(n, v).unwrap()
    }

    fn a(i: usize, j: usize, exp: i8) -> BandLetter {
        BandLetter::new(i, j, exp)
    }

    fn expand_band_word(n: usize, word: &[BandLetter]) -> BraidWord {
        word.iter().fold(BraidWord::identity(n), |acc, l| {
            acc.mul(&l.expand(n).unwrap()).unwrap()
        })
    }

    pub(crate) fn combing_example() -> BraidWord {
        expand_band_word(
            5,
            &[
                a(3, 5, 1),
                a(2, 3, -1),
                a(1, 3, -1),
                a(1, 2, -1),
                a(1, 3, 1),
            ],
        )
    }

    #[test]
    fn band_generators() {
        assert_eq!(band_generator(1, 2, 2).unwrap(), b(2, &[1, 1]));
        assert_eq!(band_generator(2, 3, 3).unwrap(), b(3, &[2, 2]));
        let a13 = band_generator(1, 3, 3).unwrap();
        assert_eq!(a13, b(3, &[2, 1, 1, -2]));
        assert!(a13.is_pure());
        assert!(band_generator(2, 2, 3).is_err());
        assert!(band_generator(1, 4, 3).is_err());
        for n in 2..=6 {
            for i in 1..n {
                for j in i + 1..=n {
                    let g = band_generator(i, j, n).unwrap();
                    for r in 1..n {
                        for s in r + 1..=n {
                            let expected = i64::from((r, s) == (i, j));
                            assert_eq!(linking_number(&g, r, s).unwrap(), expected);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn kernel_examples() {
        let y = kernel_extract(&b(2, &[1, 1])).unwrap();
        assert_eq!(y.letters(), &[Letter::pos(2)]);
        let y = kernel_extract(&band_generator(1, 3, 3).unwrap()).unwrap();
        assert_eq!(y.letters(), &[Letter::pos(3)]);
        assert!(kernel_extract(&BraidWord::identity(4)).unwrap().is_empty());
        assert!(matches!(
            kernel_extract(&b(3, &[2, 2])),
            Err(Error::Domain(_))
        ));
        assert!(matches!(kernel_extract(&b(3, &[1])), Err(Error::Domain(_))));
    }

    #[test]
    fn kernel_extract_is_multiplicative() {
        let g = |j| band_generator(1, j, 4).unwrap();
        let word = g(3)
            .mul(&g(2).inv())
            .unwrap()
            .mul(&g(4))
            .unwrap()
            .mul(&g(3))
            .unwrap();
        let y = kernel_extract(&word).unwrap();
        assert_eq!(y, FreeWord::from_signed(4, &[3, -2, 4, 3]).unwrap());
    }

    #[test]
    fn five_strand_combing_example() {
        let p = combing_example();
        assert!(p.is_pure());
        let c = artin_comb(&p).unwrap();
        assert_eq!(c.factor(1), &[] as &[BandLetter]);
        assert_eq!(c.factor(2), &[a(3, 5, 1)]);
        assert_eq!(c.factor(3), &[a(2, 3, -1)]);
        assert_eq!(c.factor(4), &[a(1, 3, -1), a(1, 2, -1), a(1, 3, 1)]);
        assert_eq!(c.first_nontrivial(), Some(2));
        let s = sign_pure_with_ceiling(&p, None).unwrap();
        assert_eq!(s.sign, Sign::Positive);
        assert_eq!(s.decided_by, Some((2, vec![a(3, 5, 1)])));
        assert_eq!(sign_pure(&p.inv()).unwrap(), Sign::Negative);
        assert_eq!(
            c.to_string(),
            "f1: 1\nf2: A(3,5)^1\nf3: A(2,3)^-1\nf4: A(1,3)^-1 A(1,2)^-1 A(1,3)^1"
        );
    }

    #[test]
    fn trivial_combings() {
        let c = artin_comb(&BraidWord::identity(4)).unwrap();
        assert!(c.factors().iter().all(Vec::is_empty));
        assert_eq!(sign_pure(&BraidWord::identity(4)).unwrap(), Sign::Zero);
        let c = artin_comb(&b(2, &[1, 1])).unwrap();
        assert_eq!(c.factors(), &[vec![a(1, 2, 1)]]);
        assert!(artin_comb(&BraidWord::identity(1))
            .unwrap()
            .factors()
            .is_empty());
        assert!(matches!(artin_comb(&b(2, &[1])), Err(Error::Domain(_))));
        assert!(matches!(sign_pure(&b(3, &[1, 2])), Err(Error::Domain(_))));
    }

    #[test]
    fn doubling_shifts_or_thetas_the_first_factor() {
        let p = combing_example();
        let c = artin_comb(&p).unwrap();
        // first nontrivial factor f₂ = A(3,5); strands 1..=3 lie at or left of n − j
        for t in 1..=3 {
            let d = artin_comb(&strand_double(&p, t).unwrap()).unwrap();
            assert_eq!(d.first_nontrivial(), Some(2));
            assert_eq!(d.factor(2), &[a(4, 6, 1)]);
        }
        // doubling strand 5 inside the trivial tail: f′₃ = θ-image of f₂
        for t in 4..=5 {
            let d = artin_comb(&strand_double(&p, t).unwrap()).unwrap();
            assert_eq!(d.first_nontrivial(), Some(3));
            let theta = c.factor_word(2).theta_apply(t - 3).unwrap();
            assert_eq!(d.factor_word(3), theta.with_rank(3).unwrap());
        }
    }

    fn arb_pure(n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
        let pairs: Vec<(usize, usize)> = (1..n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .collect();
        prop::collection::vec((prop::sample::select(pairs), prop::bool::ANY), 0..=max_len).prop_map(
            move |v| {
                let word: Vec<BandLetter> = v
                    .into_iter()
                    .map(|((i, j), s)| BandLetter::new(i, j, if s { 1 } else { -1 }))
                    .collect();
                expand_band_word(n, &word)
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn combing_round_trip(p in arb_pure(5, 6)) {
            let c = artin_comb(&p).unwrap();
            prop_assert!(c.is_well_formed());
            prop_assert!(c.expand().braid_equal(&p).unwrap());
        }

        #[test]
        fn pure_sign_is_a_bi_order(p in arb_pure(4, 4), q in arb_pure(4, 4)) {
            let sp = sign_pure(&p).unwrap();
            prop_assert_eq!(sign_pure(&p.inv()).unwrap(), sp.flip());
            prop_assert_eq!(sp == Sign::Zero, p.is_trivial());
            prop_assert_eq!(sign_pure(&q.mul(&p).unwrap().mul(&q.inv()).unwrap()).unwrap(), sp);
            if sp.is_positive() && sign_pure(&q).unwrap().is_positive() {
                prop_assert!(sign_pure(&p.mul(&q).unwrap()).unwrap().is_positive());
            }
        }

        #[test]
        fn doubling_preserves_sign(p in arb_pure(4, 5), t in 1usize..=4) {
            prop_assert_eq!(sign_pure(&p).unwrap(), sign_pure(&strand_double(&p, t).unwrap()).unwrap());
        }
    }
}
