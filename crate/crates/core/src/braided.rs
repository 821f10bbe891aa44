//! Elements of the braided Thompson group `BV` as triples `(minus, b, plus)`.
//!
//! The braid runs from the leaves of `minus` (top) to the leaves of `plus`
//! (bottom): the strand starting at top position `j` ends at bottom position
//! `perm(j)`. Expanding a triple adds a caret at a leaf of each tree and
//! doubles the strand joining those two leaves.

use std::fmt;

use crate::braid::{strand_double, BraidWord, Permutation};
use crate::error::{Error, Result};
use crate::trees::{common_refinement, Tree, TreePair};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BvElement {
    minus: Tree,
    braid: BraidWord,
    plus: Tree,
}

/// Which subgroup an element lies in; `Pbv ⊂ Bf ⊂ BV`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Class {
    General,
    Bf,
    Pbv,
}

impl Class {
    pub fn is_bf(self) -> bool {
        matches!(self, Class::Bf | Class::Pbv)
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Class::General => "BV",
            Class::Bf => "BF",
            Class::Pbv => "PBV",
        })
    }
}

impl BvElement {
    pub fn new(minus: Tree, braid: BraidWord, plus: Tree) -> Result<BvElement> {
        let (a, b) = (minus.leaves(), plus.leaves());
        if a != braid.strands() || b != braid.strands() {
            return Err(Error::usage(format!(
                "leaf counts {a}, {b} do not match {} strands",
                braid.strands()
            )));
        }
        Ok(BvElement { minus, braid, plus })
    }

    pub fn identity() -> BvElement {
        BvElement {
            minus: Tree::Leaf,
            braid: BraidWord::identity(1),
            plus: Tree::Leaf,
        }
    }

    /// The section `F → BF`, `(T₋, T₊) ↦ (T₋, 1, T₊)`.
    pub fn from_f(pair: &TreePair) -> BvElement {
        BvElement {
            minus: pair.minus.clone(),
            braid: BraidWord::identity(pair.leaves()),
            plus: pair.plus.clone(),
        }
    }

    /// `(T, p, T)`.
    pub fn pbv(tree: Tree, braid: BraidWord) -> Result<BvElement> {
        BvElement::new(tree.clone(), braid, tree)
    }

    pub fn minus(&self) -> &Tree {
        &self.minus
    }

    pub fn plus(&self) -> &Tree {
        &self.plus
    }

    pub fn braid(&self) -> &BraidWord {
        &self.braid
    }

    pub fn strands(&self) -> usize {
        self.braid.strands()
    }

    /// `(minus, plus)` as an element of `F`; the image in `F` for `BF`
    /// elements.
    pub fn f_part(&self) -> TreePair {
        TreePair {
            minus: self.minus.clone(),
            plus: self.plus.clone(),
        }
    }

    /// Adds a caret at bottom leaf `i` and splits the strand ending there.
    pub fn expand(&self, i: usize) -> Result<BvElement> {
        let n = self.strands();
        if i == 0 || i > n {
            return Err(Error::usage(format!("bottom leaf {i} outside 1..={n}")));
        }
        let j = self.braid.permutation().inverse().apply(i);
        self.split(j, i)
    }

    /// Adds a caret at top leaf `j` and splits the strand starting there.
    pub fn expand_top(&self, j: usize) -> Result<BvElement> {
        let n = self.strands();
        if j == 0 || j > n {
            return Err(Error::usage(format!("top leaf {j} outside 1..={n}")));
        }
        let i = self.braid.permutation().apply(j);
        self.split(j, i)
    }

    fn split(&self, top: usize, bottom: usize) -> Result<BvElement> {
        Ok(BvElement {
            minus: self.minus.expand(top)?,
            braid: strand_double(&self.braid, top)?,
            plus: self.plus.expand(bottom)?,
        })
    }

    /// `self` first, then `other`, after refining to matching trees.
    pub fn mul(&self, other: &BvElement) -> BvElement {
        let r = common_refinement(&self.plus, &other.minus);
        let mut a = self.clone();
        for &i in &r.steps_first {
            a = a.expand(i).expect("refinement step in range");
        }
        let mut b = other.clone();
        for &j in &r.steps_second {
            b = b.expand_top(j).expect("refinement step in range");
        }
        debug_assert_eq!(a.plus, b.minus);
        let braid = a
            .braid
            .mul(&b.braid)
            .expect("matching trees give matching strand counts");
        BvElement {
            minus: a.minus,
            braid,
            plus: b.plus,
        }
    }

    pub fn inv(&self) -> BvElement {
        BvElement {
            minus: self.plus.clone(),
            braid: self.braid.inv(),
            plus: self.minus.clone(),
        }
    }

    /// Image in `V`: the braid is replaced by its permutation.
    pub fn rho_image(&self) -> VImage {
        VImage {
            minus: self.minus.clone(),
            perm: self.braid.permutation(),
            plus: self.plus.clone(),
        }
    }

    pub fn classify(&self) -> Class {
        if !self.braid.is_pure() {
            Class::General
        } else if self.f_part().reduce().is_identity() {
            Class::Pbv
        } else {
            Class::Bf
        }
    }

    /// Whether the triple represents the identity of `BV`.
    pub fn is_identity(&self) -> bool {
        self.minus == self.plus && self.braid.free_reduce().is_trivial()
    }

    /// Equality in `BV`, decided through `self · other⁻¹`.
    pub fn equals(&self, other: &BvElement) -> bool {
        self.mul(&other.inv()).is_identity()
    }

    /// `(T, p)` for an element `(T, p, T)` of `PBV`.
    pub fn pbv_representative(&self) -> Result<(Tree, BraidWord)> {
        if self.classify() != Class::Pbv {
            return Err(Error::domain(format!("{} is not in PBV", self.to_line())));
        }
        Ok((self.minus.clone(), self.braid.clone()))
    }

    /// Single-line form `minus | braid | plus`, for diagnostics.
    pub fn to_line(&self) -> String {
        format!("{} | {} | {}", self.minus, self.braid, self.plus)
    }
}

impl fmt::Display for BvElement {
    /// The four-line element document: `n`, `minus`, `braid`, `plus`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n: {}", self.strands())?;
        writeln!(f, "minus: {}", self.minus)?;
        f.write_str("braid:")?;
        for l in self.braid.letters() {
            write!(f, " {l}")?;
        }
        writeln!(f)?;
        write!(f, "plus: {}", self.plus)
    }
}

/// An element of Thompson's group `V` as `(minus, perm, plus)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VImage {
    pub minus: Tree,
    pub perm: Permutation,
    pub plus: Tree,
}

impl VImage {
    pub fn expand(&self, i: usize) -> Result<VImage> {
        let j = self.perm.inverse().apply(i);
        self.split(j, i)
    }

    pub fn expand_top(&self, j: usize) -> Result<VImage> {
        let i = self.perm.apply(j);
        self.split(j, i)
    }

    fn split(&self, top: usize, bottom: usize) -> Result<VImage> {
        Ok(VImage {
            minus: self.minus.expand(top)?,
            perm: self.perm.double(top)?,
            plus: self.plus.expand(bottom)?,
        })
    }

    /// Product in `V`, computed with the same refinement as in `BV`.
    pub fn mul(&self, other: &VImage) -> VImage {
        let r = common_refinement(&self.plus, &other.minus);
        let mut a = self.clone();
        for &i in &r.steps_first {
            a = a.expand(i).expect("refinement step in range");
        }
        let mut b = other.clone();
        for &j in &r.steps_second {
            b = b.expand_top(j).expect("refinement step in range");
        }
        let perm = a.perm.then(&b.perm).expect("matching sizes");
        VImage {
            minus: a.minus,
            perm,
            plus: b.plus,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::band_generator;

    fn t(s: &str) -> Tree {
        s.parse().unwrap()
    }

    fn b(n: usize, v: &[i64]) -> BraidWord {
        BraidWord::from_signed(n, v).unwrap()
    }

    #[test]
    fn expansion() {
        let e = BvElement::identity().expand(1).unwrap();
        assert_eq!(
            e,
            BvElement::new(t("(..)"), BraidWord::identity(2), t("(..)")).unwrap()
        );
        let x = BvElement::pbv(t("(..)"), band_generator(1, 2, 2).unwrap()).unwrap();
        let y = x.expand(2).unwrap();
        assert_eq!(y.braid(), &b(3, &[1, 2, 2, 1]));
        assert_eq!(y.minus(), &t("(.(..))"));
        assert!(x.equals(&y));
        assert!(x.expand(3).is_err());
    }

    #[test]
    fn expansion_follows_the_strand() {
        let x = BvElement::new(t("(..)"), b(2, &[1]), t("(..)")).unwrap();
        // bottom leaf 1 is reached by the strand starting at top leaf 2
        let y = x.expand(1).unwrap();
        assert_eq!(y.minus(), &t("(.(..))"));
        assert_eq!(y.plus(), &t("((..).)"));
        assert_eq!(y.rho_image(), x.rho_image().expand(1).unwrap());
        assert_eq!(x.expand_top(2).unwrap(), y);
    }

    #[test]
    fn products() {
        let x = BvElement::new(t("(.(..))"), b(3, &[1, -2]), t("((..).)")).unwrap();
        assert!(x.mul(&x.inv()).is_identity());
        let tree = t("((..).)");
        let unit = BvElement::pbv(tree.clone(), BraidWord::identity(3)).unwrap();
        let p = BvElement::pbv(tree, band_generator(1, 3, 3).unwrap()).unwrap();
        assert_eq!(unit.mul(&p), p);
        let q = BvElement::pbv(t("(..)"), b(2, &[1, 1])).unwrap();
        assert_eq!(p.mul(&q).classify(), Class::Pbv);
    }

    #[test]
    fn rho_examples() {
        let p = BvElement::pbv(t("(..)"), b(2, &[1, 1])).unwrap();
        assert!(p.rho_image().perm.is_identity());
        let s = BvElement::new(t("(..)"), b(2, &[1]), t("(..)")).unwrap();
        assert_eq!(s.rho_image().perm.images(), &[2, 1]);
        let x = BvElement::new(t("(.(..))"), b(3, &[2, -1]), t("((..).)")).unwrap();
        assert_eq!(s.mul(&x).rho_image(), s.rho_image().mul(&x.rho_image()));
    }

    #[test]
    fn classification() {
        let pure = b(3, &[2, 2]);
        let tree = t("(.(..))");
        assert_eq!(
            BvElement::pbv(tree.clone(), pure.clone())
                .unwrap()
                .classify(),
            Class::Pbv
        );
        assert_eq!(
            BvElement::new(tree, pure, t("((..).)")).unwrap().classify(),
            Class::Bf
        );
        assert_eq!(
            BvElement::new(t("(..)"), b(2, &[1]), t("(..)"))
                .unwrap()
                .classify(),
            Class::General
        );
    }

    #[test]
    fn identity_detection() {
        assert!(BvElement::pbv(t("((..).)"), BraidWord::identity(3))
            .unwrap()
            .is_identity());
        assert!(!BvElement::pbv(t("(..)"), b(2, &[1, 1]))
            .unwrap()
            .is_identity());
        assert!(BvElement::pbv(t("(..)"), b(2, &[1, -1]))
            .unwrap()
            .is_identity());
        assert!(
            !BvElement::from_f(&TreePair::new(t("(.(..))"), t("((..).)")).unwrap()).is_identity()
        );
    }

    #[test]
    fn representatives() {
        let tree = t("(.(..))");
        let p = b(3, &[2, 2, 1, 1]);
        let x = BvElement::pbv(tree.clone(), p.clone()).unwrap();
        assert_eq!(x.pbv_representative().unwrap(), (tree.clone(), p.clone()));
        let y = x.expand(2).unwrap();
        assert_eq!(
            y.pbv_representative().unwrap(),
            (tree.expand(2).unwrap(), strand_double(&p, 2).unwrap())
        );
        let (rt, rb) = BvElement::identity().pbv_representative().unwrap();
        assert!(rt.is_leaf() && rb.is_empty());
        let bf = BvElement::new(t("(.(..))"), BraidWord::identity(3), t("((..).)")).unwrap();
        assert!(matches!(bf.pbv_representative(), Err(Error::Domain(_))));
        assert!(BvElement::new(t("(..)"), BraidWord::identity(3), t("(..)")).is_err());
    }
}
