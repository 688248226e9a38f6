//! The combinatorial triangle: 36 vertices, 60 edges, 25 faces.
//!
//! One third is tabulated; the other two are its images under the rotation
//! `ρ`: letters `a → b → c → a`, classes `α_i → α_{i+2}`.

use std::collections::HashMap;
use std::fmt;

use kerphi_lattice::{class3, class6, LaLift, LaSlot, Label};
use serde::Serialize;

/// Position of a vertex inside one third.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Local {
    Corner,
    Out1,
    Out2,
    Mid,
    In1,
    In2,
    Side,
    InU,
    InR,
    InL,
    HexR,
    HexL,
}

pub const LOCALS: [Local; 12] = [
    Local::Corner,
    Local::Out1,
    Local::Out2,
    Local::Mid,
    Local::In1,
    Local::In2,
    Local::Side,
    Local::InU,
    Local::InR,
    Local::InL,
    Local::HexR,
    Local::HexL,
];

/// Vertex identifier: `12·third + local`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct VertexId(pub usize);

impl VertexId {
    pub fn new(third: usize, local: Local) -> Self {
        let l = LOCALS.iter().position(|&x| x == local).expect("local");
        VertexId(12 * (third % 3) + l)
    }

    pub fn third(self) -> usize {
        self.0 / 12
    }

    pub fn local(self) -> Local {
        LOCALS[self.0 % 12]
    }

    pub fn rotate(self, r: usize) -> Self {
        VertexId::new(self.third() + r, self.local())
    }

    /// Figure name: corners `A, C, B` carry `a, b, c`; hexagon vertices are
    /// `hex0..hex5`.
    pub fn name(self) -> String {
        let r = self.third();
        let l0 = ["A", "C", "B"][r];
        let l1 = ["C", "B", "A"][r];
        let l2 = ["B", "A", "C"][r];
        let hex = |k: i64| format!("hex{}", (k - 2 * r as i64).rem_euclid(6));
        match self.local() {
            Local::Corner => l0.to_string(),
            Local::Out1 => format!("{l0}{l1}1"),
            Local::Out2 => format!("{l0}{l1}2"),
            Local::Mid => format!("{l0}1"),
            Local::In1 => format!("{l0}{l2}1"),
            Local::In2 => format!("{l0}{l2}2"),
            Local::Side => format!("{l0}2"),
            Local::InU => format!("{l0}IU"),
            Local::InR => format!("{l0}IR"),
            Local::InL => format!("{l0}IL"),
            Local::HexR => hex(1),
            Local::HexL => hex(2),
        }
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A vertex value `g·[−Φ(g)]·la`, where `g` takes its `α_k` entries from the
/// triple member `letters[k-1]` (`0, 1, 2` for `a, b, c`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VertexSpec {
    pub letters: [u8; 6],
    pub la: LaLift,
}

impl VertexSpec {
    pub fn rotate(&self, r: usize) -> Self {
        let mut s = *self;
        for _ in 0..r % 3 {
            let mut letters = [0u8; 6];
            for k in 1..=6 {
                letters[class6(k as i64 + 2) - 1] = (s.letters[k - 1] + 1) % 3;
            }
            let mut slots = [LaSlot::Nonstd; 3];
            for (t0, slot) in s.la.slots().iter().enumerate() {
                let t = class3(t0 as i64 + 3);
                slots[t - 1] = match *slot {
                    LaSlot::Std(x) => LaSlot::Std(class6(x as i64 + 2) as u8),
                    LaSlot::Nonstd => LaSlot::Nonstd,
                };
            }
            s = VertexSpec {
                letters,
                la: LaLift::new(slots).expect("rotation preserves slot classes"),
            };
        }
        s
    }
}

/// `Σ d_{α_classes}(x, y)` over triple members.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundTerm {
    pub classes: Vec<u8>,
    pub x: u8,
    pub y: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundExpr(pub Vec<BoundTerm>);

impl BoundExpr {
    pub fn rotate(&self, r: usize) -> Self {
        let sh = 2 * (r % 3) as i64;
        BoundExpr(
            self.0
                .iter()
                .map(|t| BoundTerm {
                    classes: t.classes.iter().map(|&c| class6(c as i64 + sh) as u8).collect(),
                    x: ((t.x as usize + r) % 3) as u8,
                    y: ((t.y as usize + r) % 3) as u8,
                })
                .collect(),
        )
    }
}

impl fmt::Display for BoundExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |x: u8| ["a", "b", "c"][x as usize];
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|t| {
                let cs: String = t.classes.iter().map(|c| c.to_string()).collect();
                format!("d{cs}({},{})", name(t.x), name(t.y))
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Debug, Clone)]
pub struct EdgeInfo {
    pub from: VertexId,
    pub to: VertexId,
    pub label: Label,
    pub bound: BoundExpr,
    /// Position in the third-0 table, `1..=20`.
    pub row: usize,
}

#[derive(Debug, Clone)]
pub struct FaceInfo {
    pub label: Label,
    /// Boundary cycle, starting at its least vertex id.
    pub cycle: Vec<VertexId>,
}

/// The decorated 2-complex with its incidence tables.
#[derive(Debug, Clone)]
pub struct TriangleTemplate {
    pub specs: Vec<VertexSpec>,
    pub edges: Vec<EdgeInfo>,
    pub faces: Vec<FaceInfo>,
    by_pair: HashMap<(VertexId, VertexId), usize>,
}

fn la(s: &str) -> LaLift {
    s.parse().expect("tabulated encoding")
}

fn third0_specs() -> [VertexSpec; 12] {
    let ns = "(1 2 3\u{307} ; 4 5 1)";
    let s = |letters: [u8; 6], enc: &str| VertexSpec { letters, la: la(enc) };
    [
        s([0, 0, 0, 0, 0, 0], ns),
        s([0, 0, 0, 0, 0, 1], ns),
        s([0, 0, 0, 0, 0, 1], "(1 2 3 ; 4 5 6)"),
        s([1, 1, 0, 0, 0, 1], "(1 2 3 ; 4 5 6)"),
        s([0, 0, 2, 0, 0, 0], ns),
        s([0, 0, 2, 0, 0, 0], "(1 2 3 ; 4 5 3)"),
        s([2, 2, 2, 0, 0, 0], "(1 2 3 ; 4 5 3)"),
        s([0, 0, 2, 0, 0, 1], ns),
        s([0, 0, 2, 0, 0, 1], "(1 2 3 ; 4 5 6)"),
        s([0, 0, 2, 0, 0, 1], "(1 2 3 ; 4 5 3)"),
        s([1, 2, 2, 0, 0, 1], "(1 2 3 ; 4 5 6)"),
        s([1, 2, 2, 0, 0, 1], "(1 2 3 ; 4 5 3)"),
    ]
}

fn bound(terms: &[(&[u8], u8, u8)]) -> BoundExpr {
    BoundExpr(
        terms
            .iter()
            .map(|(c, x, y)| BoundTerm {
                classes: c.to_vec(),
                x: *x,
                y: *y,
            })
            .collect(),
    )
}

const A: u8 = 0;
const B: u8 = 1;
const C: u8 = 2;

#[allow(clippy::type_complexity)]
fn third0_edges() -> Vec<((usize, Local), (usize, Local), &'static str, BoundExpr)> {
    use Local::*;
    let ac_ab = || bound(&[(&[3], A, C), (&[6], A, B)]);
    let hex = || bound(&[(&[2, 3], A, C), (&[1, 6], A, B)]);
    vec![
        ((0, Corner), (0, Out1), "G6N", bound(&[(&[6], A, B)])),
        ((0, Out1), (0, Out2), "A3N(1,6)", bound(&[(&[6], A, B)])),
        ((0, Out2), (0, Mid), "G12[456]", bound(&[(&[1, 2], A, B)])),
        ((0, Mid), (1, Side), "A1(1,4)", bound(&[(&[3, 4, 5], A, B)])),
        ((0, Corner), (0, In1), "G3N", bound(&[(&[3], A, C)])),
        ((0, In1), (0, In2), "A3N(1,3)", bound(&[(&[3], A, C)])),
        ((0, In2), (0, Side), "G12[453]", bound(&[(&[1, 2], A, C)])),
        ((0, Out1), (0, InU), "G3N", bound(&[(&[3], A, C)])),
        ((0, In1), (0, InU), "G6N", bound(&[(&[6], A, B)])),
        ((0, InU), (0, InR), "A3N(1,6)", ac_ab()),
        ((0, InU), (0, InL), "A3N(1,3)", ac_ab()),
        ((0, InL), (0, InR), "A3(3,6)", ac_ab()),
        ((0, InR), (0, Out2), "G3", bound(&[(&[3], A, C)])),
        ((0, InL), (0, In2), "G6", bound(&[(&[6], A, B)])),
        ((0, InR), (0, HexR), "G12[456]", bound(&[(&[1], A, B), (&[2], A, C)])),
        ((0, InL), (0, HexL), "G12[453]", bound(&[(&[1], A, B), (&[2], A, C)])),
        ((0, HexR), (0, HexL), "A3(3,6)", hex()),
        ((0, Mid), (0, HexR), "G23[456]", bound(&[(&[3], A, C), (&[2], B, C)])),
        ((1, Side), (1, HexL), "G23[156]", bound(&[(&[2], B, C), (&[3], A, C)])),
        ((1, HexL), (0, HexR), "A1(1,4)", hex()),
    ]
}

fn third0_faces() -> Vec<(&'static str, Vec<(usize, Local)>)> {
    use Local::*;
    vec![
        ("G36N", vec![(0, Corner), (0, Out1), (0, InU), (0, In1)]),
        ("A3G3N", vec![(0, Out1), (0, Out2), (0, InR), (0, InU)]),
        ("A3G6N", vec![(0, In1), (0, InU), (0, InL), (0, In2)]),
        ("A33N", vec![(0, InU), (0, InR), (0, InL)]),
        ("G123", vec![(0, Out2), (0, Mid), (0, HexR), (0, InR)]),
        ("G126", vec![(0, In2), (0, InL), (0, HexL), (0, Side)]),
        ("A3G12", vec![(0, InL), (0, InR), (0, HexR), (0, HexL)]),
        ("A1G23", vec![(0, Mid), (1, Side), (1, HexL), (0, HexR)]),
    ]
}

fn hex_ring() -> Vec<VertexId> {
    (0..6)
        .map(|k| {
            (0..36)
                .map(VertexId)
                .find(|v| v.name() == format!("hex{k}"))
                .expect("hexagon vertex")
        })
        .collect()
}

fn start_at_min(mut cycle: Vec<VertexId>) -> Vec<VertexId> {
    let p = (0..cycle.len()).min_by_key(|&i| cycle[i]).unwrap_or(0);
    cycle.rotate_left(p);
    cycle
}

impl TriangleTemplate {
    pub fn new() -> Self {
        let base = third0_specs();
        let mut specs = Vec::with_capacity(36);
        for r in 0..3 {
            specs.extend(base.iter().map(|s| s.rotate(r)));
        }
        let mut edges = Vec::with_capacity(60);
        let mut faces = Vec::with_capacity(25);
        for r in 0..3 {
            for (row, (f, t, name, b)) in third0_edges().into_iter().enumerate() {
                let label: Label = name.parse().expect("tabulated edge label");
                edges.push(EdgeInfo {
                    from: VertexId::new(f.0 + r, f.1),
                    to: VertexId::new(t.0 + r, t.1),
                    label: label.rotate(r),
                    bound: b.rotate(r),
                    row: row + 1,
                });
            }
            for (name, cyc) in third0_faces() {
                let label: Label = name.parse().expect("tabulated face label");
                faces.push(FaceInfo {
                    label: label.rotate(r),
                    cycle: start_at_min(cyc.iter().map(|&(d, l)| VertexId::new(d + r, l)).collect()),
                });
            }
        }
        faces.push(FaceInfo {
            label: Label::L,
            cycle: start_at_min(hex_ring()),
        });
        let by_pair = edges.iter().enumerate().map(|(i, e)| ((e.from, e.to), i)).collect();
        Self {
            specs,
            edges,
            faces,
            by_pair,
        }
    }

    pub fn spec(&self, v: VertexId) -> &VertexSpec {
        &self.specs[v.0]
    }

    /// The edge joining `u` and `v` and whether it runs `u → v`.
    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<(usize, bool)> {
        if let Some(&i) = self.by_pair.get(&(u, v)) {
            return Some((i, true));
        }
        self.by_pair.get(&(v, u)).map(|&i| (i, false))
    }

    /// Oriented boundary of face `f`.
    pub fn boundary(&self, f: usize) -> Vec<(usize, bool)> {
        let cyc = &self.faces[f].cycle;
        (0..cyc.len())
            .map(|i| {
                self.edge_between(cyc[i], cyc[(i + 1) % cyc.len()])
                    .expect("face cycle runs along edges")
            })
            .collect()
    }

    /// Faces whose boundary contains edge `e`.
    pub fn faces_of_edge(&self, e: usize) -> Vec<usize> {
        (0..self.faces.len())
            .filter(|&f| self.boundary(f).iter().any(|&(x, _)| x == e))
            .collect()
    }

    /// The 21 boundary edges in traversal order `a → b → c → a`, oriented.
    pub fn outer_boundary(&self) -> Vec<(usize, bool)> {
        let mut out = Vec::with_capacity(21);
        for r in 0..3 {
            out.extend(self.side(r));
        }
        out
    }

    /// The 7 edges of side `r` (`a → b` for `r = 0`), oriented.
    pub fn side(&self, r: usize) -> Vec<(usize, bool)> {
        use Local::*;
        let path = [
            VertexId::new(r, Corner),
            VertexId::new(r, Out1),
            VertexId::new(r, Out2),
            VertexId::new(r, Mid),
            VertexId::new(r + 1, Side),
            VertexId::new(r + 1, In2),
            VertexId::new(r + 1, In1),
            VertexId::new(r + 1, Corner),
        ];
        path.windows(2)
            .map(|w| self.edge_between(w[0], w[1]).expect("side runs along edges"))
            .collect()
    }

    /// Vertices of side `r` in path order.
    pub fn side_vertices(&self, r: usize) -> Vec<VertexId> {
        let mut out = vec![VertexId::new(r, Local::Corner)];
        for (e, fwd) in self.side(r) {
            let ed = &self.edges[e];
            out.push(if fwd { ed.to } else { ed.from });
        }
        out
    }
}

impl Default for TriangleTemplate {
    fn default() -> Self {
        Self::new()
    }
}
