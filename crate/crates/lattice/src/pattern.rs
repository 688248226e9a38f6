//! Subgroup patterns, their literal tables and the derived linear algebra encodings.

use std::fmt;

use serde::Serialize;

use crate::label::Label;
use crate::seq::{class3, ns_slot};
use crate::{LatticeError, Result};

/// One entry of a pattern tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Token {
    /// `G_{α_c}`.
    G(u8),
    /// The trivial group.
    E,
    /// `A^{α_t}_s`: lifts of `A_j`, `j ∈ α_t`, into the standard slot `s`.
    A { t: u8, s: u8 },
    /// `A^{α_t}_m E`: lifts of `α_t` into the first `|α_t|` coordinates of the merged slot `m`.
    AE { t: u8, m: u8 },
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Token::G(c) => write!(f, "G{c}"),
            Token::E => write!(f, "E"),
            Token::A { t, s } => write!(f, "A{t}_{s}"),
            Token::AE { t, m } => write!(f, "A{t}_{m}E"),
        }
    }
}

impl Serialize for Token {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn parse_token(s: &str) -> Result<Token> {
    let bad = || LatticeError::Parse(format!("bad pattern token `{s}`"));
    let digit = |c: Option<char>| c.and_then(|c| c.to_digit(10)).map(|d| d as u8).ok_or_else(bad);
    let mut cs = s.chars();
    match cs.next() {
        Some('E') if s.len() == 1 => Ok(Token::E),
        Some('G') if s.len() == 2 => Ok(Token::G(digit(cs.next())?)),
        Some('A') => {
            let t = digit(cs.next())?;
            if cs.next() != Some('_') {
                return Err(bad());
            }
            let slot = digit(cs.next())?;
            match (cs.next(), cs.next()) {
                (None, _) => Ok(Token::A { t, s: slot }),
                (Some('E'), None) => Ok(Token::AE { t, m: slot }),
                _ => Err(bad()),
            }
        }
        _ => Err(bad()),
    }
}

/// Six slots `α_1..α_6`, or five with classes `m` and `m+1` merged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Shape {
    Six,
    Five(u8),
}

impl Shape {
    pub fn for_label(label: Label) -> Shape {
        match label.block_class() {
            Some(t) if label.is_nonstandard() => Shape::Five(ns_slot(t) as u8),
            _ => Shape::Six,
        }
    }

    /// The classes making up each slot.
    pub fn slots(&self) -> Vec<Vec<usize>> {
        match *self {
            Shape::Six => (1..=6).map(|c| vec![c]).collect(),
            Shape::Five(m) => {
                let m = m as usize;
                let mut out = Vec::new();
                for c in 1..=6 {
                    if c == m {
                        out.push(vec![m, m + 1]);
                    } else if c != m + 1 {
                        out.push(vec![c]);
                    }
                }
                out
            }
        }
    }

    pub fn slot_name(classes: &[usize]) -> String {
        let digits: String = classes.iter().map(|c| c.to_string()).collect();
        format!("α{digits}")
    }
}

/// A pattern tuple with its shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pattern {
    pub shape: Shape,
    pub tokens: Vec<Token>,
}

impl Pattern {
    pub fn parse(label: Label, text: &str) -> Result<Self> {
        let shape = Shape::for_label(label);
        let tokens = text.split_whitespace().map(parse_token).collect::<Result<Vec<_>>>()?;
        if tokens.len() != shape.slots().len() {
            return Err(LatticeError::Parse(format!("pattern `{text}` does not fit the shape of {label}")));
        }
        Ok(Self { shape, tokens })
    }

    /// The linear algebra encoding recorded by the pattern, as a display string.
    pub fn encoding(&self) -> String {
        let mut cols: [(bool, Vec<u8>); 3] = Default::default();
        for tok in &self.tokens {
            match *tok {
                Token::A { t, s } => cols[t as usize - 1].1.push(s),
                Token::AE { t, m } => {
                    cols[t as usize - 1].0 = true;
                    cols[t as usize - 1].1.push(m);
                }
                _ => {}
            }
        }
        let render = |t: usize, (dot, slots): &(bool, Vec<u8>)| {
            let mut slots = slots.clone();
            slots.sort_unstable();
            let bottom: Vec<String> = slots.iter().map(|s| s.to_string()).collect();
            let top = if *dot { format!("{t}\u{307}") } else { t.to_string() };
            (top, bottom.join("/"))
        };
        let present: Vec<(String, String)> = cols
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.1.is_empty())
            .map(|(i, c)| render(i + 1, c))
            .collect();
        let tops: Vec<&str> = present.iter().map(|p| p.0.as_str()).collect();
        let bottoms: Vec<&str> = present.iter().map(|p| p.1.as_str()).collect();
        format!("({} ; {})", tops.join(" "), bottoms.join(" "))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self.tokens.iter().map(Token::to_string).collect();
        write!(f, "({})", toks.join(", "))
    }
}

/// A table row: the pattern and encoding as tabulated.
#[derive(Debug, Clone, Copy)]
pub struct TableRow {
    pub pattern: &'static str,
    pub encoding: &'static str,
    /// Set when the tabulated row is corrected or ambiguous.
    pub note: Option<&'static str>,
}

const fn row(pattern: &'static str, encoding: &'static str) -> TableRow {
    TableRow { pattern, encoding, note: None }
}

const fn noted(pattern: &'static str, encoding: &'static str, note: &'static str) -> TableRow {
    TableRow { pattern, encoding, note: Some(note) }
}

/// Notes tagging rows that deviate from the literal table.
pub const NOTE_ENCODING_ERRATUM: &str = "encoding corrected: the tabulated bottom row (1 2 3/6) contradicts the pattern";
pub const NOTE_AMBIGUOUS: &str =
    "ambiguous row: tabulated as (E, E, A2_3, E, A2_5E); verified against the generator display";
pub const NOTE_SINK_ERRATUM: &str = "sink set corrected to exclude the source class";

/// The tabulated row of a face or edge label. Radial edge groups have derived rows.
pub fn table_row(label: Label) -> Option<TableRow> {
    use Label::*;
    Some(match label {
        G3(1) => row("G1 G2 G3 A1_4 A2_5 A3_6", "(1 2 3 ; 4 5 6)"),
        G3(6) => row("G1 G2 A3_3 A1_4 A2_5 G6", "(1 2 3 ; 4 5 3)"),
        G3(5) => row("G1 A2_2 A3_3 A1_4 G5 G6", "(1 2 3 ; 4 2 3)"),
        G3(2) => row("A1_1 G2 G3 G4 A2_5 A3_6", "(1 2 3 ; 1 5 6)"),
        G3(3) => row("A1_1 A2_2 G3 G4 G5 A3_6", "(1 2 3 ; 1 2 6)"),
        G3(4) => row("A1_1 A2_2 A3_3 G4 G5 G6", "(1 2 3 ; 1 2 3)"),
        AG(1) => noted("G1 G2 A3_3 A1_4 A2_5 A3_6", "(1 2 3 ; 4 5 3/6)", NOTE_ENCODING_ERRATUM),
        AG(6) => row("G1 A2_2 A3_3 A1_4 A2_5 G6", "(1 2 3 ; 4 2/5 3)"),
        AG(2) => row("A1_1 G2 G3 A1_4 A2_5 A3_6", "(1 2 3 ; 1/4 5 6)"),
        AG(3) => row("A1_1 A2_2 G3 G4 A2_5 A3_6", "(1 2 3 ; 1 2/5 6)"),
        AG(4) => row("A1_1 A2_2 A3_3 G4 G5 A3_6", "(1 2 3 ; 1 2 3/6)"),
        AG(5) => row("A1_1 A2_2 A3_3 A1_4 G5 G6", "(1 2 3 ; 1/4 2 3)"),
        L => row("A1_1 A2_2 A3_3 A1_4 A2_5 A3_6", "(1 2 3 ; 1/4 2/5 3/6)"),
        GN(1) => row("G1 A2_2 A3_3 G4 A1_5E", "(1\u{307} 2 3 ; 5 2 3)"),
        GN(2) => row("A1_1 G2 A2_3E G5 A3_6", "(1 2\u{307} 3 ; 1 3 6)"),
        GN(3) => row("A3_1E G3 A1_4 A2_5 G6", "(1 2 3\u{307} ; 4 5 1)"),
        AGN(1) => row("G1 A2_2 A3_3 A1_4 A1_5E", "(1\u{307} 2 3 ; 4/5 2 3)"),
        AGN(4) => noted("A1_1 A2_2 A3_3 G4 A1_5E", "(1\u{307} 2 3 ; 1/5 2 3)", NOTE_SINK_ERRATUM),
        AGN(2) => row("A1_1 G2 A2_3E A2_5 A3_6", "(1 2\u{307} 3 ; 1 3/5 6)"),
        AGN(5) => noted("A1_1 A2_2 A2_3E G5 A3_6", "(1 2\u{307} 3 ; 1 2/3 6)", NOTE_SINK_ERRATUM),
        AGN(3) => row("A3_1E G3 A1_4 A2_5 A3_6", "(1 2 3\u{307} ; 4 5 1/6)"),
        AGN(6) => noted("A3_1E A3_3 A1_4 A2_5 G6", "(1 2 3\u{307} ; 4 5 1/3)", NOTE_SINK_ERRATUM),
        AAN(1) => row("A1_1 E E A1_4 A1_5E", "(1\u{307} ; 1/4/5)"),
        AAN(2) => row("E A2_2 A2_3E A2_5 E", "(2\u{307} ; 2/3/5)"),
        AAN(3) => row("A3_1E A3_3 E E A3_6", "(3\u{307} ; 1/3/6)"),
        EdgeG(1) => row("G1 A2_2 A3_3 A1_4 E E", "(1 2 3 ; 4 2 3)"),
        EdgeG(2) => row("A1_1 G2 E E A2_5 A3_6", "(1 2 3 ; 1 5 6)"),
        EdgeG(3) => row("E E G3 A1_4 A2_5 A3_6", "(1 2 3 ; 4 5 6)"),
        EdgeG(4) => row("A1_1 A2_2 A3_3 G4 E E", "(1 2 3 ; 1 2 3)"),
        EdgeG(5) => row("A1_1 A2_2 E E G5 A3_6", "(1 2 3 ; 1 2 6)"),
        EdgeG(6) => row("E E A3_3 A1_4 A2_5 G6", "(1 2 3 ; 4 5 3)"),
        EdgeGN(1) => row("G1 A2_2 A3_3 E A1_5E", "(1\u{307} 2 3 ; 5 2 3)"),
        EdgeGN(2) => row("A1_1 G2 A2_3E E A3_6", "(1 2\u{307} 3 ; 1 3 6)"),
        EdgeGN(3) => row("A3_1E G3 A1_4 A2_5 E", "(1 2 3\u{307} ; 4 5 1)"),
        EdgeGN(4) => row("E A2_2 A3_3 G4 A1_5E", "(1\u{307} 2 3 ; 5 2 3)"),
        EdgeGN(5) => row("A1_1 E A2_3E G5 A3_6", "(1 2\u{307} 3 ; 1 3 6)"),
        EdgeGN(6) => row("A3_1E E A1_4 A2_5 G6", "(1 2 3\u{307} ; 4 5 1)"),
        EdgeAN(1) => row("A1_1 E E E A1_5E", "(1\u{307} ; 1/5)"),
        EdgeAN(4) => row("E E E A1_4 A1_5E", "(1\u{307} ; 4/5)"),
        EdgeA(1) => row("A1_1 E E A1_4 E E", "(1 ; 1/4)"),
        EdgeAN(2) => row("E A2_2 A2_3E E E", "(2\u{307} ; 2/3)"),
        EdgeAN(5) => noted("E E A2_3E A2_5 E", "(2\u{307} ; 3/5)", NOTE_AMBIGUOUS),
        EdgeA(2) => row("E A2_2 E E A2_5 E", "(2 ; 2/5)"),
        EdgeAN(3) => row("A3_1E A3_3 E E E", "(3\u{307} ; 1/3)"),
        EdgeAN(6) => row("A3_1E E E E A3_6", "(3\u{307} ; 1/6)"),
        EdgeA(3) => row("E E A3_3 E E A3_6", "(3 ; 3/6)"),
        _ => return None,
    })
}

/// Pattern of a radial edge group `G^σ[slots]`.
pub fn radial_pattern(start: u8, slots: [u8; 3]) -> Pattern {
    let src = [start, crate::seq::class6(start as i64 + 1) as u8];
    let tokens = (1..=6u8)
        .map(|c| {
            if src.contains(&c) {
                Token::G(c)
            } else {
                let t = class3(c as i64) as u8;
                if slots[t as usize - 1] == c {
                    Token::A { t, s: c }
                } else {
                    Token::E
                }
            }
        })
        .collect();
    Pattern { shape: Shape::Six, tokens }
}
