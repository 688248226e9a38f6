use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::seq::{class3, class6, ns_slot};
use crate::LatticeError;

/// Identifier of a face or edge subgroup.
///
/// Triples and pairs of classes are stored by their cyclic start: `G3(6)` is
/// `G^{612} = G^{126}` and `AG(6)` is `A^2G^{61} = A^2G^{16}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    G3(u8),
    AG(u8),
    L,
    GN(u8),
    AGN(u8),
    AAN(u8),
    EdgeG(u8),
    EdgeGN(u8),
    EdgeAN(u8),
    EdgeA(u8),
    EdgeGG { start: u8, slots: [u8; 3] },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Kind {
    Face,
    Edge,
}

impl Label {
    pub fn faces() -> Vec<Label> {
        let mut out = Vec::with_capacity(25);
        out.extend((1..=6).map(Label::G3));
        out.extend((1..=6).map(Label::AG));
        out.push(Label::L);
        out.extend((1..=3).map(Label::GN));
        out.extend((1..=6).map(Label::AGN));
        out.extend((1..=3).map(Label::AAN));
        out
    }

    pub fn edges() -> Vec<Label> {
        let mut out = Vec::with_capacity(21);
        out.extend((1..=6).map(Label::EdgeG));
        out.extend((1..=6).map(Label::EdgeGN));
        out.extend((1..=6).map(Label::EdgeAN));
        out.extend((1..=3).map(Label::EdgeA));
        out
    }

    /// Radial edge groups `G^σ[slots]` spanning two standard faces.
    pub fn double_edges() -> Vec<Label> {
        let seeds = [
            Label::EdgeGG { start: 1, slots: [4, 5, 6] },
            Label::EdgeGG { start: 1, slots: [4, 5, 3] },
            Label::EdgeGG { start: 2, slots: [4, 5, 6] },
            Label::EdgeGG { start: 2, slots: [1, 5, 6] },
        ];
        let mut out = Vec::new();
        for s in seeds {
            for r in 0..3 {
                let l = s.rotate(r);
                if !out.contains(&l) {
                    out.push(l);
                }
            }
        }
        out
    }

    pub fn kind(&self) -> Kind {
        match self {
            Label::G3(_) | Label::AG(_) | Label::L | Label::GN(_) | Label::AGN(_) | Label::AAN(_) => Kind::Face,
            _ => Kind::Edge,
        }
    }

    /// The block class `t` of `A^t`-type labels and of non-standard groups.
    pub fn block_class(&self) -> Option<usize> {
        match *self {
            Label::AG(c) => Some(class3(c as i64 + 2)),
            Label::GN(t) | Label::AAN(t) | Label::EdgeA(t) => Some(t as usize),
            Label::AGN(k) | Label::EdgeGN(k) | Label::EdgeAN(k) => Some(class3(k as i64)),
            _ => None,
        }
    }

    pub fn is_nonstandard(&self) -> bool {
        matches!(self, Label::GN(_) | Label::AGN(_) | Label::AAN(_) | Label::EdgeGN(_) | Label::EdgeAN(_))
    }

    /// Image under `r` applications of the 3-fold rotation `α_i ↦ α_{i+2}`.
    pub fn rotate(self, r: usize) -> Label {
        let sh = 2 * (r % 3) as i64;
        let c6 = |c: u8| class6(c as i64 + sh) as u8;
        let c3 = |t: u8| class3(t as i64 + sh) as u8;
        match self {
            Label::G3(c) => Label::G3(c6(c)),
            Label::AG(c) => Label::AG(c6(c)),
            Label::L => Label::L,
            Label::GN(t) => Label::GN(c3(t)),
            Label::AGN(k) => Label::AGN(c6(k)),
            Label::AAN(t) => Label::AAN(c3(t)),
            Label::EdgeG(k) => Label::EdgeG(c6(k)),
            Label::EdgeGN(k) => Label::EdgeGN(c6(k)),
            Label::EdgeAN(s) => Label::EdgeAN(c6(s)),
            Label::EdgeA(t) => Label::EdgeA(c3(t)),
            Label::EdgeGG { start, slots } => {
                let mut out = [0u8; 3];
                for s in slots {
                    let ns = c6(s);
                    out[class3(ns as i64) - 1] = ns;
                }
                Label::EdgeGG { start: c6(start), slots: out }
            }
        }
    }
}

fn sorted_digits(classes: &[u8]) -> String {
    let mut v = classes.to_vec();
    v.sort_unstable();
    v.iter().map(|c| c.to_string()).collect()
}

fn cyc(start: u8, len: u8) -> Vec<u8> {
    (0..len).map(|d| class6((start + d) as i64) as u8).collect()
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Label::G3(c) => write!(f, "G{}", sorted_digits(&cyc(c, 3))),
            Label::AG(c) => write!(f, "A{}G{}", self.block_class().unwrap(), sorted_digits(&cyc(c, 2))),
            Label::L => write!(f, "L"),
            Label::GN(t) => write!(f, "G{}{}N", t, t + 3),
            Label::AGN(k) => write!(f, "A{}G{}N", class3(k as i64), k),
            Label::AAN(t) => write!(f, "A{t}{t}N"),
            Label::EdgeG(k) => write!(f, "G{k}"),
            Label::EdgeGN(k) => write!(f, "G{k}N"),
            Label::EdgeAN(s) => {
                let t = class3(s as i64);
                let ns = ns_slot(t) as u8;
                write!(f, "A{t}N({},{})", s.min(ns), s.max(ns))
            }
            Label::EdgeA(t) => write!(f, "A{t}({t},{})", t + 3),
            Label::EdgeGG { start, slots } => write!(
                f,
                "G{}[{}{}{}]",
                sorted_digits(&cyc(start, 2)),
                slots[0],
                slots[1],
                slots[2]
            ),
        }
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for Label {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, LatticeError> {
        Label::faces()
            .into_iter()
            .chain(Label::edges())
            .chain(Label::double_edges())
            .find(|l| l.to_string() == s)
            .ok_or_else(|| LatticeError::UnknownLabel(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names() {
        let faces: Vec<String> = Label::faces().iter().map(Label::to_string).collect();
        assert_eq!(
            faces,
            [
                "G123", "G234", "G345", "G456", "G156", "G126", "A3G12", "A1G23", "A2G34", "A3G45", "A1G56", "A2G16",
                "L", "G14N", "G25N", "G36N", "A1G1N", "A2G2N", "A3G3N", "A1G4N", "A2G5N", "A3G6N", "A11N", "A22N",
                "A33N"
            ]
        );
        let edges: Vec<String> = Label::edges().iter().map(Label::to_string).collect();
        assert_eq!(
            edges,
            [
                "G1", "G2", "G3", "G4", "G5", "G6", "G1N", "G2N", "G3N", "G4N", "G5N", "G6N", "A1N(1,5)", "A2N(2,3)",
                "A3N(1,3)", "A1N(4,5)", "A2N(3,5)", "A3N(1,6)", "A1(1,4)", "A2(2,5)", "A3(3,6)"
            ]
        );
    }

    #[test]
    fn rotation_orbits() {
        assert_eq!(Label::AG(1).rotate(1).to_string(), "A2G34");
        assert_eq!(Label::AG(1).rotate(2).to_string(), "A1G56");
        assert_eq!(Label::GN(1).rotate(1).to_string(), "G36N");
        assert_eq!(Label::EdgeAN(1).rotate(1).to_string(), "A3N(1,3)");
        assert_eq!(Label::EdgeAN(4).rotate(1).to_string(), "A3N(1,6)");
        let gg = Label::EdgeGG { start: 2, slots: [1, 5, 6] };
        assert_eq!(gg.rotate(2).to_string(), "G16[453]");
        for l in Label::faces().into_iter().chain(Label::edges()) {
            assert_eq!(l.rotate(3), l);
            assert!(Label::faces().contains(&l.rotate(1)) || Label::edges().contains(&l.rotate(1)));
        }
        assert_eq!(Label::double_edges().len(), 12);
    }
}
