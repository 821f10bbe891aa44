//! Random elements for property tests and the fuzz harness.
//!
//! Every generator draws from a caller-supplied RNG, so a seeded RNG gives a
//! reproducible stream.

use rand::Rng;

use crate::braid::{band_generator, BraidWord};
use crate::braided::BvElement;
use crate::freegroup::{simple_commutator, FreeWord};
use crate::letter::Letter;
use crate::trees::Tree;

fn random_letter<R: Rng + ?Sized>(rng: &mut R, max_index: usize) -> Letter {
    let index = rng.gen_range(1..=max_index);
    if rng.gen_bool(0.5) {
        Letter::pos(index)
    } else {
        Letter::neg(index)
    }
}

/// A binary tree with exactly `leaves` leaves; the split point at each node
/// is uniform.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, leaves: usize) -> Tree {
    if leaves <= 1 {
        return Tree::leaf();
    }
    let left = rng.gen_range(1..leaves);
    Tree::node(random_tree(rng, left), random_tree(rng, leaves - left))
}

/// A braid word of exactly `len` uniform letters.
pub fn random_braid<R: Rng + ?Sized>(rng: &mut R, n: usize, len: usize) -> BraidWord {
    if n < 2 {
        return BraidWord::identity(n);
    }
    let letters = (0..len).map(|_| random_letter(rng, n - 1)).collect();
    BraidWord::from_parts_unchecked(n, letters)
}

/// A pure braid on `n` strands with at most `max_len` letters.
///
/// Half the draws are products of band generators; the rest are a random
/// prefix followed by a bubble-sort suffix that undoes its permutation with
/// crossings of random sign.
pub fn random_pure_braid<R: Rng + ?Sized>(rng: &mut R, n: usize, max_len: usize) -> BraidWord {
    if n < 2 || max_len < 2 {
        return BraidWord::identity(n);
    }
    if rng.gen_bool(0.5) {
        let mut letters: Vec<Letter> = Vec::new();
        for _ in 0..rng.gen_range(0..=max_len / 2) {
            let i = rng.gen_range(1..n);
            let j = rng.gen_range(i + 1..=n);
            let mut a = band_generator(i, j, n).expect("indices in range");
            if rng.gen_bool(0.5) {
                a = a.inv();
            }
            if letters.len() + a.len() > max_len {
                break;
            }
            letters.extend_from_slice(a.letters());
        }
        return BraidWord::from_parts_unchecked(n, letters);
    }
    loop {
        let len = rng.gen_range(0..=max_len);
        let prefix = random_braid(rng, n, len);
        let mut letters = prefix.letters().to_vec();
        let mut strand_at: Vec<usize> = (1..=n).collect();
        for l in &letters {
            strand_at.swap(l.index - 1, l.index);
        }
        let mut sorted = false;
        while !sorted {
            sorted = true;
            for p in 0..n - 1 {
                if strand_at[p] > strand_at[p + 1] {
                    strand_at.swap(p, p + 1);
                    let exp = if rng.gen_bool(0.5) { 1 } else { -1 };
                    letters.push(Letter::new(p + 1, exp));
                    sorted = false;
                }
            }
        }
        if letters.len() <= max_len {
            return BraidWord::from_parts_unchecked(n, letters);
        }
    }
}

/// A free word of exactly `len` letters, not necessarily reduced.
pub fn random_free_word<R: Rng + ?Sized>(rng: &mut R, rank: usize, len: usize) -> FreeWord {
    let letters = (0..len).map(|_| random_letter(rng, rank)).collect();
    FreeWord::from_parts_unchecked(rank, letters)
}

/// A left-nested commutator `[x_{i₁}, …, x_{i_w}]` with uniform indices.
pub fn random_simple_commutator<R: Rng + ?Sized>(
    rng: &mut R,
    rank: usize,
    weight: usize,
) -> FreeWord {
    let indices: Vec<usize> = (0..weight.max(2))
        .map(|_| rng.gen_range(1..=rank))
        .collect();
    simple_commutator(rank, &indices).expect("weight at least two")
}

/// A product of up to `max_factors` simple commutators of weight
/// `2..=max_weight`, each inverted with probability one half.
pub fn random_commutator_product<R: Rng + ?Sized>(
    rng: &mut R,
    rank: usize,
    max_weight: usize,
    max_factors: usize,
) -> FreeWord {
    let mut w = FreeWord::identity(rank);
    for _ in 0..rng.gen_range(1..=max_factors.max(1)) {
        let weight = rng.gen_range(2..=max_weight.max(2));
        let mut c = random_simple_commutator(rng, rank, weight);
        if rng.gen_bool(0.5) {
            c = c.inv();
        }
        w = w.mul(&c).expect("same rank");
    }
    w
}

/// A `BF` element: two random trees with a common leaf count in
/// `1..=max_leaves` and a random pure braid between them.
pub fn random_bf<R: Rng + ?Sized>(rng: &mut R, max_leaves: usize, max_letters: usize) -> BvElement {
    let n = rng.gen_range(1..=max_leaves.max(1));
    let minus = random_tree(rng, n);
    let plus = random_tree(rng, n);
    let braid = random_pure_braid(rng, n, max_letters);
    BvElement::new(minus, braid, plus).expect("leaf counts match")
}

/// A `PBV` element `(T, p, T)`.
pub fn random_pbv<R: Rng + ?Sized>(
    rng: &mut R,
    max_leaves: usize,
    max_letters: usize,
) -> BvElement {
    let n = rng.gen_range(1..=max_leaves.max(1));
    let tree = random_tree(rng, n);
    let braid = random_pure_braid(rng, n, max_letters);
    BvElement::pbv(tree, braid).expect("leaf counts match")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..=6);
            let p = random_pure_braid(&mut rng, n, 24);
            assert!(p.is_pure());
            assert!(p.len() <= 24);
            assert_eq!(p.strands(), n);
            assert_eq!(random_tree(&mut rng, n).leaves(), n);
            let x = random_bf(&mut rng, 8, 16);
            assert!(x.classify().is_bf());
            assert!(x.braid().len() <= 16);
            let c = random_commutator_product(&mut rng, 4, 4, 3);
            assert!(c.exponent_sums().iter().all(|&s| s == 0));
        }
    }

    #[test]
    fn seeded_streams_repeat() {
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..20)
                .map(|_| random_bf(&mut rng, 6, 12).to_line())
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(3), draw(3));
        assert_ne!(draw(3), draw(4));
    }
}
