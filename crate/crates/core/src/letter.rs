use std::fmt;

/// A generator index (1-based) raised to the power `±1`.
///
/// Used both for free-group letters `xᵢ^±1` and for Artin letters `σᵢ^±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: usize,
    pub exp: i8,
}

impl Letter {
    pub fn new(index: usize, exp: i8) -> Self {
        debug_assert!(exp == 1 || exp == -1);
        Letter { index, exp }
    }

    pub fn pos(index: usize) -> Self {
        Letter { index, exp: 1 }
    }

    pub fn neg(index: usize) -> Self {
        Letter { index, exp: -1 }
    }

    pub fn inverse(self) -> Self {
        Letter {
            index: self.index,
            exp: -self.exp,
        }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.index == other.index && self.exp == -other.exp
    }

    /// Signed-integer form: `3` for `x₃`, `-3` for `x₃⁻¹`.
    pub fn signed(self) -> i64 {
        self.index as i64 * self.exp as i64
    }

    pub fn from_signed(v: i64) -> Option<Self> {
        if v == 0 {
            return None;
        }
        Some(Letter {
            index: v.unsigned_abs() as usize,
            exp: if v > 0 { 1 } else { -1 },
        })
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.signed())
    }
}

/// Appends `letter` to a stack-reduced word, cancelling against the top.
pub(crate) fn push_reduced(word: &mut Vec<Letter>, letter: Letter) {
    if word.last().is_some_and(|&top| top.cancels(letter)) {
        word.pop();
    } else {
        word.push(letter);
    }
}

pub(crate) fn free_reduce_letters(letters: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut out = Vec::new();
    for l in letters {
        push_reduced(&mut out, l);
    }
    out
}

pub(crate) fn write_signed_list(f: &mut fmt::Formatter<'_>, letters: &[Letter]) -> fmt::Result {
    for (k, l) in letters.iter().enumerate() {
        if k > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{l}")?;
    }
    Ok(())
}
