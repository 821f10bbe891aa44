//! The bi-orders on `PBV` and `BF`.
//!
//! `BF` splits as `F ⋉ PBV`; an element is compared first through its image
//! in `F` (slope order) and, when that image is trivial, through the pure
//! braid of any representative `(T, p, T)` (combing order).

use std::fmt;

use crate::braid::{sign_pure_with_ceiling, BandLetter};
use crate::braided::{BvElement, Class};
use crate::error::{Error, Result};
use crate::freegroup::Sign;
use crate::trees::SlopeWitness;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Less,
    Equal,
    Greater,
}

impl Relation {
    pub fn reverse(self) -> Relation {
        match self {
            Relation::Less => Relation::Greater,
            Relation::Equal => Relation::Equal,
            Relation::Greater => Relation::Less,
        }
    }

    /// `a < b` iff `a⁻¹b` is positive.
    pub fn from_quotient_sign(s: Sign) -> Relation {
        match s {
            Sign::Positive => Relation::Less,
            Sign::Zero => Relation::Equal,
            Sign::Negative => Relation::Greater,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Less => "<",
            Relation::Equal => "=",
            Relation::Greater => ">",
        })
    }
}

/// The layer that decided a sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Identity,
    Slope(SlopeWitness),
    CombingFactor {
        index: usize,
        factor: Vec<BandLetter>,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Identity => f.write_str("identity"),
            Witness::Slope(w) => {
                write!(
                    f,
                    "decided by F slope at leaf {} (slope 2^{})",
                    w.leaf, w.log2_slope
                )
            }
            Witness::CombingFactor { index, factor } => {
                write!(f, "decided by f{index} = ")?;
                write_band_word(f, factor)
            }
        }
    }
}

/// `A(i,j)` for exponent `+1`, `A(i,j)^-1` otherwise, space separated.
pub fn write_band_word(f: &mut impl fmt::Write, word: &[BandLetter]) -> fmt::Result {
    for (k, a) in word.iter().enumerate() {
        if k > 0 {
            f.write_str(" ")?;
        }
        write!(f, "A({},{})", a.i, a.j)?;
        if a.exp < 0 {
            f.write_str("^-1")?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderVerdict {
    pub relation: Relation,
    pub witness: Witness,
}

impl fmt::Display for OrderVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.relation)?;
        if self.witness != Witness::Identity {
            write!(f, " {}", self.witness)?;
        }
        Ok(())
    }
}

/// Sign on `PBV`: the sign of the pure braid of the representative.
pub fn sign_pbv(x: &BvElement) -> Result<Sign> {
    let (_, p) = x.pbv_representative()?;
    Ok(sign_pure_with_ceiling(&p, None)?.sign)
}

/// Sign on `BF`: slope order on the image in `F`, then the `PBV` order.
pub fn sign_bf(x: &BvElement) -> Result<Sign> {
    sign_bf_witness(x, None).map(|(s, _)| s)
}

/// Sign on `BF` with the deciding layer. `ceiling` bounds the adaptive
/// Magnus expansion used for the braid layer.
pub fn sign_bf_witness(x: &BvElement, ceiling: Option<usize>) -> Result<(Sign, Witness)> {
    let class = x.classify();
    if !class.is_bf() {
        return Err(Error::domain(format!(
            "{} has a non-pure braid",
            x.to_line()
        )));
    }
    if let (s, Some(w)) = x.f_part().sign() {
        return Ok((s, Witness::Slope(w)));
    }
    let ps = sign_pure_with_ceiling(x.braid(), ceiling)?;
    Ok(match ps.decided_by {
        None => (Sign::Zero, Witness::Identity),
        Some((index, factor)) => (ps.sign, Witness::CombingFactor { index, factor }),
    })
}

/// Compares two `BF` elements through the sign of `x⁻¹y`.
pub fn bf_compare(x: &BvElement, y: &BvElement) -> Result<OrderVerdict> {
    bf_compare_with_ceiling(x, y, None)
}

pub fn bf_compare_with_ceiling(
    x: &BvElement,
    y: &BvElement,
    ceiling: Option<usize>,
) -> Result<OrderVerdict> {
    for e in [x, y] {
        if e.classify() == Class::General {
            return Err(Error::domain(format!("{} is not in BF", e.to_line())));
        }
    }
    let (sign, witness) = sign_bf_witness(&x.inv().mul(y), ceiling)?;
    Ok(OrderVerdict {
        relation: Relation::from_quotient_sign(sign),
        witness,
    })
}
