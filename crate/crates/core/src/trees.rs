//! Finite binary trees as dyadic subdivisions of `[0, 1]`, Thompson's group
//! `F` as tree pairs, and its slope order.
//!
//! A pair `(minus, plus)` maps the subdivision of `minus` (domain) onto the
//! subdivision of `plus` (range), interval by interval in order. Products
//! compose left to right: `p·q` applies `p` first.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::freegroup::Sign;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree {
    Leaf,
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn leaf() -> Tree {
        Tree::Leaf
    }

    pub fn node(left: Tree, right: Tree) -> Tree {
        Tree::Node(Box::new(left), Box::new(right))
    }

    pub fn caret() -> Tree {
        Tree::node(Tree::Leaf, Tree::Leaf)
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Tree::Leaf)
    }

    pub fn leaves(&self) -> usize {
        match self {
            Tree::Leaf => 1,
            Tree::Node(l, r) => l.leaves() + r.leaves(),
        }
    }

    /// Depth of each leaf, left to right.
    pub fn depths(&self) -> Vec<u32> {
        fn walk(t: &Tree, d: u32, out: &mut Vec<u32>) {
            match t {
                Tree::Leaf => out.push(d),
                Tree::Node(l, r) => {
                    walk(l, d + 1, out);
                    walk(r, d + 1, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, 0, &mut out);
        out
    }

    /// Attaches a caret to leaf `i` (1-based).
    pub fn expand(&self, i: usize) -> Result<Tree> {
        let n = self.leaves();
        if i == 0 || i > n {
            return Err(Error::usage(format!("leaf {i} outside 1..={n}")));
        }
        fn walk(t: &Tree, i: usize) -> Tree {
            match t {
                Tree::Leaf => Tree::caret(),
                Tree::Node(l, r) => {
                    let nl = l.leaves();
                    if i <= nl {
                        Tree::Node(Box::new(walk(l, i)), r.clone())
                    } else {
                        Tree::Node(l.clone(), Box::new(walk(r, i - nl)))
                    }
                }
            }
        }
        Ok(walk(self, i))
    }

    /// Whether leaves `i` and `i + 1` hang from a common caret.
    pub fn has_caret_at(&self, i: usize) -> bool {
        match self {
            Tree::Leaf => false,
            Tree::Node(l, r) => {
                if l.is_leaf() && r.is_leaf() {
                    return i == 1;
                }
                let nl = l.leaves();
                if i < nl {
                    l.has_caret_at(i)
                } else if i > nl {
                    r.has_caret_at(i - nl)
                } else {
                    false
                }
            }
        }
    }

    /// Collapses the caret over leaves `i, i + 1` into a leaf.
    fn collapse_caret(&self, i: usize) -> Tree {
        match self {
            Tree::Leaf => Tree::Leaf,
            Tree::Node(l, r) => {
                if l.is_leaf() && r.is_leaf() && i == 1 {
                    return Tree::Leaf;
                }
                let nl = l.leaves();
                if i < nl {
                    Tree::Node(Box::new(l.collapse_caret(i)), r.clone())
                } else {
                    Tree::Node(l.clone(), Box::new(r.collapse_caret(i - nl)))
                }
            }
        }
    }

    /// The subdivision of `[0, 1]` the tree encodes.
    pub fn leaf_intervals(&self) -> Vec<DyadicInterval> {
        let mut start = Dyadic::zero();
        self.depths()
            .into_iter()
            .map(|d| {
                let end = start.add(&Dyadic::pow2_neg(d));
                let iv = DyadicInterval {
                    start: start.clone(),
                    end: end.clone(),
                };
                start = end;
                iv
            })
            .collect()
    }

    /// All trees with `n` leaves.
    pub fn enumerate(n: usize) -> Vec<Tree> {
        match n {
            0 => Vec::new(),
            1 => vec![Tree::Leaf],
            _ => {
                let mut out = Vec::new();
                for k in 1..n {
                    let lefts = Tree::enumerate(k);
                    let rights = Tree::enumerate(n - k);
                    for l in &lefts {
                        for r in &rights {
                            out.push(Tree::node(l.clone(), r.clone()));
                        }
                    }
                }
                out
            }
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf => f.write_str("."),
            Tree::Node(l, r) => write!(f, "({l}{r})"),
        }
    }
}

impl FromStr for Tree {
    type Err = Error;

    /// `tree := "." | "(" tree tree ")"`; whitespace is ignored.
    fn from_str(s: &str) -> Result<Tree> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let tree = parse_tree(&chars, &mut pos)?;
        if pos != chars.len() {
            return Err(Error::parse(format!(
                "trailing input after tree at offset {pos}"
            )));
        }
        Ok(tree)
    }
}

impl FromStr for TreePair {
    type Err = Error;

    /// Two trees, `minus` then `plus`; whitespace is ignored, so `"(..)(..)"`
    /// and `"(..) (..)"` both parse.
    fn from_str(s: &str) -> Result<TreePair> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let minus = parse_tree(&chars, &mut pos)?;
        let plus = parse_tree(&chars, &mut pos)?;
        if pos != chars.len() {
            return Err(Error::parse(format!(
                "trailing input after tree pair at offset {pos}"
            )));
        }
        TreePair::new(minus, plus)
    }
}

fn parse_tree(chars: &[char], pos: &mut usize) -> Result<Tree> {
    match chars.get(*pos) {
        Some('.') => {
            *pos += 1;
            Ok(Tree::Leaf)
        }
        Some('(') => {
            *pos += 1;
            let l = parse_tree(chars, pos)?;
            let r = parse_tree(chars, pos)?;
            if chars.get(*pos) != Some(&')') {
                return Err(Error::parse(format!("expected ')' at offset {pos}")));
            }
            *pos += 1;
            Ok(Tree::node(l, r))
        }
        Some(c) => Err(Error::parse(format!(
            "unexpected '{c}' in tree at offset {pos}"
        ))),
        None => Err(Error::parse("unexpected end of tree")),
    }
}

/// Least common expansion of two trees with the leaf indices to expand,
/// in order, to reach it from each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refinement {
    pub tree: Tree,
    pub steps_first: Vec<usize>,
    pub steps_second: Vec<usize>,
}

pub fn common_refinement(a: &Tree, b: &Tree) -> Refinement {
    fn union(a: &Tree, b: &Tree) -> Tree {
        match (a, b) {
            (Tree::Leaf, t) | (t, Tree::Leaf) => t.clone(),
            (Tree::Node(al, ar), Tree::Node(bl, br)) => Tree::node(union(al, bl), union(ar, br)),
        }
    }
    let tree = union(a, b);
    Refinement {
        steps_first: expansion_steps(a, &tree),
        steps_second: expansion_steps(b, &tree),
        tree,
    }
}

/// Leaf indices that carry `from` to `to` (which must contain it), always
/// expanding the leftmost leaf that is internal in `to`.
fn expansion_steps(from: &Tree, to: &Tree) -> Vec<usize> {
    /// Leftmost leaf of `t` sitting on an internal node of `target`.
    fn first_gap(t: &Tree, target: &Tree, offset: usize) -> Option<usize> {
        match (t, target) {
            (Tree::Leaf, Tree::Leaf) => None,
            (Tree::Leaf, Tree::Node(..)) => Some(offset + 1),
            (Tree::Node(l, r), Tree::Node(tl, tr)) => {
                first_gap(l, tl, offset).or_else(|| first_gap(r, tr, offset + l.leaves()))
            }
            (Tree::Node(..), Tree::Leaf) => unreachable!("target does not contain source"),
        }
    }
    let mut current = from.clone();
    let mut steps = Vec::new();
    while let Some(i) = first_gap(&current, to, 0) {
        current = current.expand(i).expect("gap index is a leaf");
        steps.push(i);
    }
    steps
}

/// A dyadic rational `num / 2^exp`, kept normalized (odd numerator, or zero
/// with exponent 0).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigUint,
    exp: u32,
}

impl Dyadic {
    pub fn new(num: BigUint, exp: u32) -> Dyadic {
        let mut d = Dyadic { num, exp };
        d.normalize();
        d
    }

    pub fn zero() -> Dyadic {
        Dyadic {
            num: BigUint::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Dyadic {
        Dyadic {
            num: BigUint::one(),
            exp: 0,
        }
    }

    /// `2^{-d}`.
    pub fn pow2_neg(d: u32) -> Dyadic {
        Dyadic {
            num: BigUint::one(),
            exp: d,
        }
    }

    pub fn numerator(&self) -> &BigUint {
        &self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.num.trailing_zeros().unwrap_or(0).min(self.exp as u64) as u32;
        self.num >>= tz;
        self.exp -= tz;
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        let exp = self.exp.max(other.exp);
        let a = &self.num << (exp - self.exp);
        let b = &other.num << (exp - other.exp);
        Dyadic::new(a + b, exp)
    }

    /// `self − other`, which must be non-negative.
    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        let exp = self.exp.max(other.exp);
        let a = &self.num << (exp - self.exp);
        let b = &other.num << (exp - other.exp);
        assert!(a >= b, "negative dyadic difference");
        Dyadic::new(a - b, exp)
    }

    /// `log₂` of the value if it is a power of two.
    pub fn log2_exact(&self) -> Option<i64> {
        if self.num.is_one() {
            Some(-(self.exp as i64))
        } else if self.exp == 0 && self.num.count_ones() == 1 {
            Some(self.num.bits() as i64 - 1)
        } else {
            None
        }
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let exp = self.exp.max(other.exp);
        (&self.num << (exp - self.exp)).cmp(&(&other.num << (exp - other.exp)))
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, BigUint::one() << self.exp)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DyadicInterval {
    pub start: Dyadic,
    pub end: Dyadic,
}

impl DyadicInterval {
    pub fn length(&self) -> Dyadic {
        self.end.sub(&self.start)
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.start, self.end)
    }
}

/// An element of Thompson's group `F`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreePair {
    pub minus: Tree,
    pub plus: Tree,
}

/// Where the slope order was decided: the first domain leaf whose slope is
/// not 1, with `log₂` of that slope.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlopeWitness {
    pub leaf: usize,
    pub log2_slope: i64,
}

impl TreePair {
    pub fn new(minus: Tree, plus: Tree) -> Result<TreePair> {
        if minus.leaves() != plus.leaves() {
            return Err(Error::usage(format!(
                "tree pair leaf counts differ: {} vs {}",
                minus.leaves(),
                plus.leaves()
            )));
        }
        Ok(TreePair { minus, plus })
    }

    pub fn identity() -> TreePair {
        TreePair {
            minus: Tree::Leaf,
            plus: Tree::Leaf,
        }
    }

    pub fn leaves(&self) -> usize {
        self.minus.leaves()
    }

    pub fn is_identity(&self) -> bool {
        self.minus == self.plus
    }

    /// Expands both trees at leaf `i`; the same element of `F`.
    pub fn expand(&self, i: usize) -> Result<TreePair> {
        Ok(TreePair {
            minus: self.minus.expand(i)?,
            plus: self.plus.expand(i)?,
        })
    }

    /// Removes matching carets, leftmost first, until none remain.
    pub fn reduce(&self) -> TreePair {
        let mut p = self.clone();
        loop {
            let n = p.leaves();
            match (1..n).find(|&i| p.minus.has_caret_at(i) && p.plus.has_caret_at(i)) {
                Some(i) => {
                    p = TreePair {
                        minus: p.minus.collapse_caret(i),
                        plus: p.plus.collapse_caret(i),
                    };
                }
                None => return p,
            }
        }
    }

    pub fn inv(&self) -> TreePair {
        TreePair {
            minus: self.plus.clone(),
            plus: self.minus.clone(),
        }
    }

    /// `self` first, then `other`; reduced.
    pub fn mul(&self, other: &TreePair) -> TreePair {
        let r = common_refinement(&self.plus, &other.minus);
        let mut a = self.clone();
        for &i in &r.steps_first {
            a = a.expand(i).expect("refinement step in range");
        }
        let mut b = other.clone();
        for &i in &r.steps_second {
            b = b.expand(i).expect("refinement step in range");
        }
        debug_assert_eq!(a.plus, b.minus);
        TreePair {
            minus: a.minus,
            plus: b.plus,
        }
        .reduce()
    }

    /// `log₂` of the slope on each domain interval.
    pub fn log2_slopes(&self) -> Vec<i64> {
        self.minus
            .depths()
            .into_iter()
            .zip(self.plus.depths())
            .map(|(dm, dp)| dm as i64 - dp as i64)
            .collect()
    }

    /// Positive iff the first slope different from 1 exceeds 1.
    pub fn sign(&self) -> (Sign, Option<SlopeWitness>) {
        self.log2_slopes()
            .into_iter()
            .enumerate()
            .find(|&(_, e)| e != 0)
            .map_or((Sign::Zero, None), |(k, e)| {
                let sign = if e > 0 {
                    Sign::Positive
                } else {
                    Sign::Negative
                };
                (
                    sign,
                    Some(SlopeWitness {
                        leaf: k + 1,
                        log2_slope: e,
                    }),
                )
            })
    }
}

impl fmt::Display for TreePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.minus, self.plus)
    }
}

pub fn sign_f(p: &TreePair) -> Sign {
    p.sign().0
}

/// Number of binary trees with `n` leaves, by enumeration.
pub fn catalan_count(n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::usage("trees have at least one leaf"));
    }
    let distinct: std::collections::HashSet<Tree> = Tree::enumerate(n).into_iter().collect();
    Ok(distinct.len())
}

/// `(1/n)·C(2n−2, n−1)`.
pub fn catalan_formula(n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::usage("trees have at least one leaf"));
    }
    let m = n - 1;
    let mut binom = BigUint::one();
    for k in 0..m {
        binom = binom * BigUint::from(2 * m - k) / BigUint::from(k + 1);
    }
    Ok(binom / BigUint::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(s: &str) -> Tree {
        s.parse().unwrap()
    }

    fn d(num: u32, exp: u32) -> Dyadic {
        Dyadic::new(BigUint::from(num), exp)
    }

    #[test]
    fn parsing() {
        assert_eq!(t("."), Tree::Leaf);
        assert_eq!(t("(..)"), Tree::caret());
        assert_eq!(t(" ( . ( . . ) ) ").to_string(), "(.(..))");
        for bad in ["", "(.)", "(...)", "x", "..", "((..)"] {
            assert!(matches!(bad.parse::<Tree>(), Err(Error::Parse(_))), "{bad}");
        }
        let pair: TreePair = "(.(..))((..).)".parse().unwrap();
        assert_eq!(pair.to_string(), "(.(..)) ((..).)");
        assert_eq!(pair, " (.(..)) ((..).) ".parse().unwrap());
        assert!("(..)".parse::<TreePair>().is_err());
        assert!("(..) .".parse::<TreePair>().is_err());
        assert!("(..) (..) .".parse::<TreePair>().is_err());
    }

    #[test]
    fn expansion() {
        assert_eq!(t(".").expand(1).unwrap(), t("(..)"));
        assert_eq!(t("(..)").expand(2).unwrap(), t("(.(..))"));
        assert!(t("(..)").expand(3).is_err());
        assert!(t("(..)").expand(0).is_err());
    }

    #[test]
    fn intervals() {
        let iv = t(".").leaf_intervals();
        assert_eq!(
            iv,
            vec![DyadicInterval {
                start: d(0, 0),
                end: d(1, 0)
            }]
        );
        let ends: Vec<Dyadic> = t("(..)")
            .leaf_intervals()
            .into_iter()
            .map(|i| i.end)
            .collect();
        assert_eq!(ends, vec![d(1, 1), d(1, 0)]);
        let iv = t("(.(..))").leaf_intervals();
        let starts: Vec<Dyadic> = iv.iter().map(|i| i.start.clone()).collect();
        assert_eq!(starts, vec![d(0, 0), d(1, 1), d(3, 2)]);
        assert_eq!(iv[2].length(), d(1, 2));
    }

    #[test]
    fn refinements() {
        let a = t("((..).)");
        let r = common_refinement(&a, &a);
        assert_eq!(
            (r.tree, r.steps_first.len(), r.steps_second.len()),
            (a, 0, 0)
        );
        let r = common_refinement(&t("(..)"), &t("."));
        assert_eq!(r.tree, t("(..)"));
        assert!(r.steps_first.is_empty());
        assert_eq!(r.steps_second, vec![1]);
        let r = common_refinement(&t("(.(..))"), &t("((..).)"));
        assert_eq!(r.tree, t("((..)(..))"));
        assert_eq!(r.steps_first, vec![1]);
        assert_eq!(r.steps_second, vec![3]);
    }

    #[test]
    fn reduction() {
        let p = TreePair::new(t("((..)(..))"), t("((..)(..))")).unwrap();
        assert_eq!(p.reduce(), TreePair::identity());
        let q = TreePair::new(t("((..)(..))"), t("(.(.(..)))")).unwrap();
        assert_eq!(
            q.reduce(),
            TreePair::new(t("((..).)"), t("(.(..))")).unwrap()
        );
        assert_eq!(q.reduce().reduce(), q.reduce());
        assert!(TreePair::new(t("(..)"), t(".")).is_err());
    }

    #[test]
    fn slope_signs() {
        assert_eq!(sign_f(&TreePair::identity()), Sign::Zero);
        let p = TreePair::new(t("(.(..))"), t("((..).)")).unwrap();
        assert_eq!(p.log2_slopes(), vec![-1, 0, 1]);
        assert_eq!(
            p.sign(),
            (
                Sign::Negative,
                Some(SlopeWitness {
                    leaf: 1,
                    log2_slope: -1
                })
            )
        );
        assert_eq!(sign_f(&p.inv()), Sign::Positive);
        assert!(p.mul(&p.inv()).is_identity());
        assert_eq!(p.mul(&p.inv()), TreePair::identity());
    }

    #[test]
    fn catalan() {
        let expected = [1usize, 1, 2, 5, 14, 42, 132, 429, 1430, 4862];
        for (k, &c) in expected.iter().enumerate() {
            let n = k + 1;
            assert_eq!(catalan_count(n).unwrap(), c);
            assert_eq!(catalan_formula(n).unwrap(), BigUint::from(c));
        }
        assert!(catalan_count(0).is_err());
    }

    pub(crate) fn arb_tree(max_leaves: usize) -> impl Strategy<Value = Tree> {
        let leaf = Just(Tree::Leaf);
        leaf.prop_recursive(4, max_leaves as u32, 2, |inner| {
            (inner.clone(), inner).prop_map(|(l, r)| Tree::node(l, r))
        })
    }

    fn arb_pair(max_leaves: usize) -> impl Strategy<Value = TreePair> {
        (1..=max_leaves).prop_flat_map(|n| {
            let trees = Tree::enumerate(n);
            (
                prop::sample::select(trees.clone()),
                prop::sample::select(trees),
            )
                .prop_map(|(a, b)| TreePair::new(a, b).unwrap())
        })
    }

    proptest! {
        #[test]
        fn format_round_trip(tree in arb_tree(12)) {
            prop_assert_eq!(tree.to_string().parse::<Tree>().unwrap(), tree);
        }

        #[test]
        fn intervals_partition_unit(tree in arb_tree(12)) {
            let iv = tree.leaf_intervals();
            prop_assert_eq!(&iv[0].start, &Dyadic::zero());
            prop_assert_eq!(&iv.last().unwrap().end, &Dyadic::one());
            prop_assert!(iv.windows(2).all(|w| w[0].end == w[1].start));
            let total = iv.iter().fold(Dyadic::zero(), |acc, i| acc.add(&i.length()));
            prop_assert_eq!(total, Dyadic::one());
            for (i, depth) in iv.iter().zip(tree.depths()) {
                prop_assert_eq!(i.length().log2_exact(), Some(-(depth as i64)));
            }
        }

        #[test]
        fn refinement_is_union_of_subdivisions(a in arb_tree(8), b in arb_tree(8)) {
            let r = common_refinement(&a, &b);
            let starts = |t: &Tree| t.leaf_intervals().into_iter().map(|i| i.start).collect::<std::collections::BTreeSet<_>>();
            let mut union = starts(&a);
            union.extend(starts(&b));
            prop_assert_eq!(starts(&r.tree), union);
            let replay = |t: &Tree, steps: &[usize]| steps.iter().fold(t.clone(), |acc, &i| acc.expand(i).unwrap());
            prop_assert_eq!(replay(&a, &r.steps_first), r.tree.clone());
            prop_assert_eq!(replay(&b, &r.steps_second), r.tree);
        }

        #[test]
        fn slope_order_matches_interval_lengths(p in arb_pair(7)) {
            let slopes: Vec<i64> = p.minus.leaf_intervals().iter().zip(p.plus.leaf_intervals())
                .map(|(m, q)| q.length().log2_exact().unwrap() - m.length().log2_exact().unwrap())
                .collect();
            prop_assert_eq!(p.log2_slopes(), slopes);
            prop_assert_eq!(sign_f(&p.inv()), sign_f(&p).flip());
            prop_assert_eq!(sign_f(&p) == Sign::Zero, p.is_identity());
        }

        #[test]
        fn f_group_laws(p in arb_pair(6), q in arb_pair(6), r in arb_pair(6)) {
            prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
            prop_assert_eq!(p.mul(&TreePair::identity()), p.reduce());
            prop_assert!(p.mul(&p.inv()).is_identity());
        }

        #[test]
        fn slope_order_is_a_bi_order(p in arb_pair(6), q in arb_pair(6), z in arb_pair(6)) {
            let s = sign_f(&p.inv().mul(&q));
            prop_assert_eq!(sign_f(&z.mul(&p).inv().mul(&z.mul(&q))), s);
            prop_assert_eq!(sign_f(&p.mul(&z).inv().mul(&q.mul(&z))), s);
            if sign_f(&p) == Sign::Positive && sign_f(&q) == Sign::Positive {
                prop_assert_eq!(sign_f(&p.mul(&q)), Sign::Positive);
            }
        }
    }
}
