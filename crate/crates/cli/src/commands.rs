//! The commands behind the binary. Each returns the text to print; an
//! invariant failure comes back as [`CliError::Violation`].

use bforder::braid::{artin_comb, sign_pure_with_ceiling, strand_delete, strand_double};
use bforder::freegroup::{deviation, deviation_with_ceiling, magnus_expand, Deviation};
use bforder::order::{bf_compare_with_ceiling, sign_bf_witness, Witness};
use bforder::trees::{catalan_count, catalan_formula};
use bforder::{BraidWord, BvElement, Error, FreeWord, OrderVerdict, Relation, Sign};
use num_bigint::BigInt;

use crate::doc::Document;
use crate::{CliError, CliResult};

/// Largest leaf count for which `catalan` enumerates trees rather than
/// evaluating the closed formula alone.
pub const CATALAN_ENUMERATION_LIMIT: usize = 13;

fn describe_deviation(d: &Deviation<BigInt>) -> String {
    let (m, c) = d.form.leading_term().expect("a deviation is nonzero");
    format!("decided by coefficient {c} of {m} in degree {}", d.degree)
}

fn sign_line(sign: Sign, witness: Option<String>) -> String {
    match witness {
        Some(w) if sign != Sign::Zero => format!("{sign}, {w}"),
        _ => sign.to_string(),
    }
}

fn word_sign(w: &FreeWord, ceiling: Option<usize>) -> CliResult<(Sign, Option<String>)> {
    let dev = match ceiling {
        Some(c) => deviation_with_ceiling::<BigInt>(w, c)?,
        None => deviation(w),
    };
    Ok(match dev {
        None => (Sign::Zero, None),
        Some(d) => (d.leading_sign(), Some(describe_deviation(&d))),
    })
}

fn pure_sign(p: &BraidWord, ceiling: Option<usize>) -> CliResult<(Sign, Witness)> {
    let ps = sign_pure_with_ceiling(p, ceiling)?;
    Ok(match ps.decided_by {
        None => (Sign::Zero, Witness::Identity),
        Some((index, factor)) => (ps.sign, Witness::CombingFactor { index, factor }),
    })
}

fn element_of(doc: &Document) -> CliResult<BvElement> {
    match doc {
        Document::Element(x) => Ok(x.clone()),
        Document::Pair(p) => Ok(BvElement::from_f(p)),
        other => Err(Error::Usage(format!(
            "expected an element or a tree pair, got a {}",
            other.kind()
        ))
        .into()),
    }
}

fn common_rank(a: &FreeWord, b: &FreeWord) -> CliResult<(FreeWord, FreeWord)> {
    let r = a.rank().max(b.rank());
    Ok((a.with_rank(r)?, b.with_rank(r)?))
}

/// Sign with the deciding layer.
pub fn sign(doc: &Document, ceiling: Option<usize>) -> CliResult<String> {
    Ok(match doc {
        Document::Word(w) => {
            let (s, witness) = word_sign(w, ceiling)?;
            sign_line(s, witness)
        }
        Document::Braid(b) => {
            let (s, w) = pure_sign(b, ceiling)?;
            sign_line(s, Some(w.to_string()))
        }
        Document::Pair(p) => {
            let (s, w) = p.sign();
            sign_line(s, w.map(|w| Witness::Slope(w).to_string()))
        }
        Document::Element(x) => {
            let (s, w) = sign_bf_witness(x, ceiling)?;
            sign_line(s, Some(w.to_string()))
        }
    })
}

/// `<`, `=` or `>` through the sign of `a⁻¹b`, with its witness. Free words
/// and pure braids compare among themselves; elements and tree pairs
/// compare in `BF`.
pub fn compare(a: &Document, b: &Document, ceiling: Option<usize>) -> CliResult<String> {
    let verdict = match (a, b) {
        (Document::Word(u), Document::Word(v)) => {
            let (u, v) = common_rank(u, v)?;
            let (s, witness) = word_sign(&u.inv().mul(&v)?, ceiling)?;
            let relation = Relation::from_quotient_sign(s);
            return Ok(match witness {
                Some(w) => format!("{relation} {w}"),
                None => relation.to_string(),
            });
        }
        (Document::Braid(p), Document::Braid(q)) => {
            let (s, witness) = pure_sign(&p.inv().mul(q)?, ceiling)?;
            OrderVerdict {
                relation: Relation::from_quotient_sign(s),
                witness,
            }
        }
        _ => bf_compare_with_ceiling(&element_of(a)?, &element_of(b)?, ceiling)?,
    };
    Ok(verdict.to_string())
}

/// Product `a·b`, `a` first.
pub fn mul(a: &Document, b: &Document) -> CliResult<String> {
    Ok(match (a, b) {
        (Document::Word(u), Document::Word(v)) => {
            let (u, v) = common_rank(u, v)?;
            u.mul(&v)?.to_string()
        }
        (Document::Braid(p), Document::Braid(q)) => p.mul(q)?.to_string(),
        (Document::Pair(p), Document::Pair(q)) => p.mul(q).to_string(),
        _ => element_of(a)?.mul(&element_of(b)?).to_string(),
    })
}

pub fn inv(a: &Document) -> String {
    match a {
        Document::Word(w) => w.inv().to_string(),
        Document::Braid(b) => b.inv().to_string(),
        Document::Pair(p) => p.inv().to_string(),
        Document::Element(x) => x.inv().to_string(),
    }
}

/// One line per combing factor; with `verify`, the factors are re-expanded
/// and compared with the input.
pub fn comb(b: &BraidWord, verify: bool) -> CliResult<String> {
    let c = artin_comb(b)?;
    let mut out = c.to_string();
    if verify {
        if c.expand().braid_equal(b)? {
            out.push_str("\nround-trip: ok");
        } else {
            out.push_str("\nround-trip: FAILED");
            return Err(CliError::Violation(out));
        }
    }
    Ok(out)
}

pub fn magnus(w: &FreeWord, cap: usize) -> CliResult<String> {
    Ok(magnus_expand::<BigInt>(w, cap)?.to_string())
}

pub fn double(b: &BraidWord, t: usize) -> CliResult<String> {
    Ok(strand_double(b, t)?.to_string())
}

pub fn delete(b: &BraidWord, k: usize) -> CliResult<String> {
    Ok(strand_delete(b, k)?.to_string())
}

/// Number of binary trees with `n` leaves. Up to the enumeration limit the
/// trees are enumerated and checked against the closed formula.
pub fn catalan(n: usize) -> CliResult<String> {
    let formula = catalan_formula(n)?;
    if n <= CATALAN_ENUMERATION_LIMIT {
        let counted = catalan_count(n)?;
        if BigInt::from(counted) != BigInt::from(formula.clone()) {
            return Err(CliError::Violation(format!(
                "enumeration found {counted} trees with {n} leaves, formula gives {formula}"
            )));
        }
    }
    Ok(formula.to_string())
}
