//! Element documents: one whitespace-insensitive parser and one printer per
//! kind.
//!
//! ```text
//! braid      := "-n" <strands> <signed index>*        e.g. "-n 3 1 -2 1"
//! free word  := ["-r" <rank>] <signed index>*         e.g. "1 -2 1"
//! tree pair  := <tree> <tree>                         e.g. "(.(..)) ((..).)"
//! tree       := "." | "(" <tree> <tree> ")"
//! element    := "n:" <strands> "minus:" <tree> "braid:" <signed index>* "plus:" <tree>
//! ```
//!
//! Element fields may come in any order, on one line or several. The
//! minus sign `−` (U+2212) is accepted wherever `-` is. A free word without
//! `-r` has the rank of its largest index, and the empty document is the
//! identity of `F₁`.

use std::fmt;
use std::io::Read;
use std::path::Path;

use bforder::{BraidWord, BvElement, Error, FreeWord, Tree, TreePair};

use crate::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Braid(BraidWord),
    Word(FreeWord),
    Pair(TreePair),
    Element(BvElement),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Braid(_) => "braid",
            Document::Word(_) => "free word",
            Document::Pair(_) => "tree pair",
            Document::Element(_) => "element",
        }
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Document::Braid(b) => write!(f, "{b}"),
            Document::Word(w) => write!(f, "{w}"),
            Document::Pair(p) => write!(f, "{p}"),
            Document::Element(x) => write!(f, "{x}"),
        }
    }
}

/// The text of an argument: `-` is standard input, an existing file is read,
/// anything else is taken literally.
pub fn resolve(arg: &str) -> CliResult<String> {
    let io_err = |source| CliError::Io {
        path: arg.to_string(),
        source,
    };
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io_err)?;
        return Ok(s);
    }
    let path = Path::new(arg);
    if path.is_file() {
        return std::fs::read_to_string(path).map_err(io_err);
    }
    Ok(arg.to_string())
}

pub fn parse_document(text: &str) -> bforder::Result<Document> {
    let text = text.replace('\u{2212}', "-");
    let trimmed = text.trim();
    if trimmed.contains(':') {
        parse_element(trimmed).map(Document::Element)
    } else if let Some(rest) = trimmed.strip_prefix("-n") {
        parse_braid_body(rest).map(Document::Braid)
    } else if trimmed.starts_with(['(', '.']) {
        trimmed.parse().map(Document::Pair)
    } else {
        parse_word(trimmed).map(Document::Word)
    }
}

/// Reads the argument and parses it.
pub fn load(arg: &str) -> CliResult<Document> {
    Ok(parse_document(&resolve(arg)?)?)
}

fn parse_indices(s: &str) -> bforder::Result<Vec<i64>> {
    s.split_whitespace()
        .map(|tok| match tok.parse::<i64>() {
            Ok(0) => Err(Error::Parse("generator index 0".into())),
            Ok(v) => Ok(v),
            Err(_) => Err(Error::Parse(format!(
                "expected a signed index, found {tok:?}"
            ))),
        })
        .collect()
}

fn parse_count(tok: Option<&str>, what: &str) -> bforder::Result<usize> {
    tok.and_then(|t| t.parse::<usize>().ok())
        .filter(|&v| v > 0)
        .ok_or_else(|| Error::Parse(format!("expected a positive {what}, found {tok:?}")))
}

fn parse_braid_body(rest: &str) -> bforder::Result<BraidWord> {
    let rest = rest.trim_start();
    let (head, tail) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
    let n = parse_count(Some(head), "strand count")?;
    let letters = parse_indices(tail)?;
    BraidWord::from_signed(n, &letters).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_braid(text: &str) -> bforder::Result<BraidWord> {
    let text = text.replace('\u{2212}', "-");
    match text.trim().strip_prefix("-n") {
        Some(rest) => parse_braid_body(rest),
        None => Err(Error::Parse("a braid starts with \"-n <strands>\"".into())),
    }
}

fn parse_word(s: &str) -> bforder::Result<FreeWord> {
    let (rank, body) = match s.strip_prefix("-r") {
        Some(rest) => {
            let rest = rest.trim_start();
            let (head, tail) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
            (Some(parse_count(Some(head), "rank")?), tail)
        }
        None => (None, s),
    };
    let letters = parse_indices(body)?;
    let needed = letters
        .iter()
        .map(|v| v.unsigned_abs() as usize)
        .max()
        .unwrap_or(1);
    let rank = rank.unwrap_or(needed);
    FreeWord::from_signed(rank, &letters).map_err(|e| Error::Parse(e.to_string()))
}

/// Splits `key: value key: value …` on the colons; keys are alphabetic and
/// values never contain letters, so the key is the alphabetic tail of the
/// text before each colon.
fn parse_element(s: &str) -> bforder::Result<BvElement> {
    let pieces: Vec<&str> = s.split(':').collect();
    let mut fields: Vec<(String, String)> = Vec::new();
    let mut key = pieces[0].trim().to_string();
    for (k, piece) in pieces.iter().enumerate().skip(1) {
        let (value, next) = if k + 1 == pieces.len() {
            (*piece, "")
        } else {
            let cut = piece
                .trim_end()
                .trim_end_matches(|c: char| c.is_ascii_alphabetic())
                .len();
            (&piece[..cut], piece[cut..].trim())
        };
        fields.push((key, value.trim().to_string()));
        key = next.to_string();
    }
    let mut get = |name: &str| -> bforder::Result<String> {
        let hits: Vec<usize> = (0..fields.len()).filter(|&i| fields[i].0 == name).collect();
        match hits.as_slice() {
            [i] => Ok(std::mem::take(&mut fields[*i].1)),
            [] => Err(Error::Parse(format!(
                "element is missing the {name:?} field"
            ))),
            _ => Err(Error::Parse(format!("element repeats the {name:?} field"))),
        }
    };
    let n = parse_count(Some(get("n")?.as_str()), "strand count")?;
    let minus: Tree = get("minus")?.parse()?;
    let braid = BraidWord::from_signed(n, &parse_indices(&get("braid")?)?)
        .map_err(|e| Error::Parse(e.to_string()))?;
    let plus: Tree = get("plus")?.parse()?;
    if let Some((k, _)) = fields
        .iter()
        .find(|(k, _)| !["n", "minus", "braid", "plus"].contains(&k.as_str()))
    {
        return Err(Error::Parse(format!("unknown element field {k:?}")));
    }
    for (name, t) in [("minus", &minus), ("plus", &plus)] {
        if t.leaves() != n {
            return Err(Error::Parse(format!(
                "{name} tree has {} leaves, expected {n}",
                t.leaves()
            )));
        }
    }
    BvElement::new(minus, braid, plus).map_err(|e| Error::Parse(e.to_string()))
}

/// The element document on a single line; parses back to the same element.
pub fn element_inline(x: &BvElement) -> String {
    x.to_string().replace('\n', " ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds_are_detected() {
        assert_eq!(parse_document("-n 3 1 -2").unwrap().kind(), "braid");
        assert_eq!(parse_document("1 -2").unwrap().kind(), "free word");
        assert_eq!(parse_document("").unwrap().kind(), "free word");
        assert_eq!(parse_document("(..) (..)").unwrap().kind(), "tree pair");
        assert_eq!(
            parse_document("n: 1\nminus: .\nbraid:\nplus: .")
                .unwrap()
                .kind(),
            "element"
        );
    }

    #[test]
    fn braid_grammar() {
        let b = parse_braid("-n 3 1 \u{2212}2  1").unwrap();
        assert_eq!(b, BraidWord::from_signed(3, &[1, -2, 1]).unwrap());
        assert_eq!(parse_braid("-n5").unwrap(), BraidWord::identity(5));
        for bad in ["-n", "-n 0", "-n 3 3", "-n 3 0", "-n 3 x", "1 2"] {
            assert!(matches!(parse_braid(bad), Err(Error::Parse(_))), "{bad}");
        }
    }

    #[test]
    fn word_grammar() {
        let Document::Word(w) = parse_document("1 -3").unwrap() else {
            panic!()
        };
        assert_eq!(w.rank(), 3);
        let Document::Word(w) = parse_document("-r 4 1").unwrap() else {
            panic!()
        };
        assert_eq!(w.rank(), 4);
        assert!(parse_document("-r 1 2").is_err());
        assert!(parse_document("1 0").is_err());
    }

    #[test]
    fn element_grammar_round_trips() {
        let text = "n: 3\nminus: (.(..))\nbraid: 1 1\nplus: ((..).)\n";
        let Document::Element(x) = parse_document(text).unwrap() else {
            panic!()
        };
        assert_eq!(format!("{x}\n"), text);
        assert_eq!(
            parse_document(&element_inline(&x)).unwrap(),
            Document::Element(x.clone())
        );
        let shuffled = "plus:((..).) braid:1 1 n:3 minus:(.(..))";
        assert_eq!(parse_document(shuffled).unwrap(), Document::Element(x));
        let empty = parse_document("n: 2 minus: (..) braid: plus: (..)").unwrap();
        assert_eq!(parse_document(&empty.to_string()).unwrap(), empty);
    }

    #[test]
    fn element_errors() {
        for bad in [
            "n: 3 minus: (.(..)) braid: 1 1",
            "n: 2 minus: (..) braid: 1 plus: (..) n: 2",
            "n: 2 minus: (..) braid: plus: (..) colour: 1",
            "n: 3 minus: (..) braid: plus: (..)",
            "n: 2 minus: (..) braid: 2 plus: (..)",
        ] {
            assert!(matches!(parse_document(bad), Err(Error::Parse(_))), "{bad}");
        }
    }
}
