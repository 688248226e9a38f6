use std::fmt;
use std::str::FromStr;

use kerphi_abelian::ZVec;
use kerphi_product::{Instance, ProductElement};

use crate::seq::{class3, ns_slot, LabelSequences};
use crate::{LatticeError, Result};

/// Target of the lift of one block class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LaSlot {
    /// Standard slot `t` or `t+3`.
    Std(u8),
    /// The dotted non-standard slot.
    Nonstd,
}

/// An executable `2 × 3` encoding: where each block class is lifted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LaLift {
    slots: [LaSlot; 3],
}

impl LaLift {
    pub fn new(slots: [LaSlot; 3]) -> Result<Self> {
        for (t0, s) in slots.iter().enumerate() {
            if let LaSlot::Std(s) = *s {
                if !(1..=6).contains(&s) || class3(s as i64) != t0 + 1 {
                    return Err(LatticeError::Encoding(format!("class {} cannot be lifted into slot {s}", t0 + 1)));
                }
            }
        }
        Ok(Self { slots })
    }

    /// All classes lifted into `α_1, α_2, α_3` or into `α_4, α_5, α_6`.
    pub fn standard(upper: bool) -> Self {
        let off = if upper { 3 } else { 0 };
        Self {
            slots: [LaSlot::Std(1 + off), LaSlot::Std(2 + off), LaSlot::Std(3 + off)],
        }
    }

    pub fn slots(&self) -> [LaSlot; 3] {
        self.slots
    }

    /// Coordinate receiving block `j`.
    pub fn coord(&self, seq: &LabelSequences, j: usize) -> usize {
        match self.slots[seq.block_class(j) - 1] {
            LaSlot::Std(s) => seq.std_coord(j, s as usize),
            LaSlot::Nonstd => seq.ns_coord(j),
        }
    }

    /// `[v]·(encoding)`: the product of the section lifts of the blocks of `v`.
    pub fn apply(&self, inst: &Instance, seq: &LabelSequences, v: &ZVec) -> Result<ProductElement> {
        let mut g = inst.identity();
        for j in 1..=seq.n() {
            let k = self.coord(seq, j);
            let w = inst.factor(k)?.spec().lift_block_of(j, v)?;
            let mut entry = g.entry(k).clone();
            entry.mul_assign(&w);
            g.set_entry(k, entry);
        }
        Ok(g)
    }
}

impl fmt::Display for LaLift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut top = Vec::new();
        let mut bottom = Vec::new();
        for (t0, s) in self.slots.iter().enumerate() {
            let t = t0 + 1;
            match *s {
                LaSlot::Std(s) => {
                    top.push(t.to_string());
                    bottom.push(s.to_string());
                }
                LaSlot::Nonstd => {
                    top.push(format!("{t}\u{307}"));
                    bottom.push(ns_slot(t).to_string());
                }
            }
        }
        write!(f, "({} ; {})", top.join(" "), bottom.join(" "))
    }
}

impl FromStr for LaLift {
    type Err = LatticeError;

    /// Parses the display form `(1 2 3̇ ; 4 5 1)`. Slashed and single-column
    /// encodings are descriptive only and rejected.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| LatticeError::Encoding(format!("`{s}`: {why}"));
        let body = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| bad("missing parentheses"))?;
        if body.contains('/') {
            return Err(bad("slashed encodings cannot be applied"));
        }
        let (top, bottom) = body.split_once(';').ok_or_else(|| bad("missing `;`"))?;
        let top: Vec<&str> = top.split_whitespace().collect();
        let bottom: Vec<&str> = bottom.split_whitespace().collect();
        if top.len() != 3 || bottom.len() != 3 {
            return Err(bad("expected three columns"));
        }
        let mut slots = [LaSlot::Nonstd; 3];
        for t0 in 0..3 {
            let t = t0 + 1;
            let (head, dotted) = match top[t0].strip_suffix('\u{307}') {
                Some(h) => (h, true),
                None => (top[t0], false),
            };
            if head != t.to_string() {
                return Err(bad("top row must be 1 2 3"));
            }
            let slot: u8 = bottom[t0].parse().map_err(|_| bad("bad slot"))?;
            slots[t0] = if dotted {
                if slot as usize != ns_slot(t) {
                    return Err(bad("dotted column names the wrong slot"));
                }
                LaSlot::Nonstd
            } else {
                LaSlot::Std(slot)
            };
        }
        LaLift::new(slots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_round_trip() {
        for s in ["(1 2 3 ; 4 5 6)", "(1 2 3\u{307} ; 4 5 1)", "(1\u{307} 2 3 ; 5 2 3)"] {
            assert_eq!(s.parse::<LaLift>().unwrap().to_string(), s);
        }
        assert!("(1 2 3 ; 1/4 5 6)".parse::<LaLift>().is_err());
        assert!("(1 2 3 ; 4 6 6)".parse::<LaLift>().is_err());
    }
}
