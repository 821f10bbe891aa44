//! Strand surgery: deletion, insertion on the left, doubling (cabling) and
//! pairwise linking numbers.

use crate::error::{Error, Result};
use crate::letter::Letter;

use super::BraidWord;

/// Removes the strand that starts at position `k`, dropping every crossing
/// it takes part in. For pure braids and `k = 1` this is the map `η`.
pub fn strand_delete(b: &BraidWord, k: usize) -> Result<BraidWord> {
    let n = b.strands();
    if n < 2 {
        return Err(Error::usage("cannot delete the only strand"));
    }
    if k == 0 || k > n {
        return Err(Error::usage(format!("strand {k} outside 1..={n}")));
    }
    let mut pos = k;
    let mut out = Vec::with_capacity(b.len());
    for &l in b.letters() {
        if l.index == pos {
            pos += 1;
        } else if l.index + 1 == pos {
            pos -= 1;
        } else if l.index < pos {
            out.push(l);
        } else {
            out.push(Letter::new(l.index - 1, l.exp));
        }
    }
    Ok(BraidWord::from_parts_unchecked(n - 1, out))
}

/// Adds a straight strand on the left: `σᵢ ↦ σ_{i+1}`. A section of `η`.
pub fn strand_insert_left(b: &BraidWord) -> BraidWord {
    BraidWord::from_parts_unchecked(
        b.strands() + 1,
        b.letters()
            .iter()
            .map(|l| Letter::new(l.index + 1, l.exp))
            .collect(),
    )
}

/// Replaces the strand starting at position `t` by two parallel strands.
///
/// The doubled strand is tracked by its current position, so any braid can
/// be cabled, pure or not. A crossing with the doubled strand becomes two
/// crossings of the same sign.
pub fn strand_double(b: &BraidWord, t: usize) -> Result<BraidWord> {
    let n = b.strands();
    if t == 0 || t > n {
        return Err(Error::usage(format!("strand {t} outside 1..={n}")));
    }
    let mut t = t;
    let mut out = Vec::with_capacity(b.len() * 2);
    for &l in b.letters() {
        let k = l.index;
        if k + 1 < t {
            out.push(l);
        } else if k > t {
            out.push(Letter::new(k + 1, l.exp));
        } else if k + 1 == t {
            out.push(Letter::new(t - 1, l.exp));
            out.push(Letter::new(t, l.exp));
            t -= 1;
        } else {
            out.push(Letter::new(t + 1, l.exp));
            out.push(Letter::new(t, l.exp));
            t += 1;
        }
    }
    Ok(BraidWord::from_parts_unchecked(n + 1, out))
}

/// Half the signed number of crossings between the strands that start at
/// positions `r` and `s`.
pub fn linking_number(b: &BraidWord, r: usize, s: usize) -> Result<i64> {
    let n = b.strands();
    if !(1..=n).contains(&r) || !(1..=n).contains(&s) || r >= s {
        return Err(Error::usage(format!(
            "need 1 <= r < s <= {n}, got r={r}, s={s}"
        )));
    }
    if !b.is_pure() {
        return Err(Error::domain("linking numbers are defined for pure braids"));
    }
    let (mut pr, mut ps) = (r, s);
    let mut total = 0i64;
    for l in b.letters() {
        let (lo, hi) = (l.index, l.index + 1);
        let touches_r = pr == lo || pr == hi;
        let touches_s = ps == lo || ps == hi;
        if touches_r && touches_s {
            total += l.exp as i64;
        }
        for p in [&mut pr, &mut ps] {
            if *p == lo {
                *p = hi;
            } else if *p == hi {
                *p = lo;
            }
        }
    }
    debug_assert!(total % 2 == 0);
    Ok(total / 2)
}
