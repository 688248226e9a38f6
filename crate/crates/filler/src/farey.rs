use std::collections::{HashMap, VecDeque};

use kerphi_lattice::{GenLetter, Lattice};
use kerphi_product::ProductElement;
use serde::Serialize;

use crate::kloop::KernelLoop;
use crate::{FillerError, Result};

/// Boundary positions are measured in quarter steps so that the two frill
/// layers below unit arcs stay integral.
pub const QUARTER: u64 = 4;

const LETTERS: [char; 3] = ['a', 'b', 'c'];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexLabel {
    /// Quarter-step position on the boundary.
    pub position: u64,
    pub letter: char,
    /// Reflection sequence over `{1, 2, 3}`.
    pub beta: Vec<u8>,
}

impl VertexLabel {
    pub fn depth(&self) -> usize {
        self.beta.len()
    }

    pub fn name(&self) -> String {
        if self.beta.is_empty() {
            format!("{}0", self.letter)
        } else {
            let b: Vec<String> = self.beta.iter().map(|x| x.to_string()).collect();
            format!("{}_{}", self.letter, b.join(","))
        }
    }
}

/// `Δ_β` with its vertices listed in role order `(a, b, c)`.
#[derive(Debug, Clone)]
pub struct FareyTriangle {
    pub beta: Vec<u8>,
    /// Quarter-step positions.
    pub positions: [u64; 3],
    /// Below unit arcs; carries no group elements.
    pub degenerate: bool,
    pub values: Option<[ProductElement; 3]>,
}

impl FareyTriangle {
    pub fn depth(&self) -> usize {
        self.beta.len()
    }

    /// Side `r` runs from role `r` to role `r + 1`.
    pub fn side(&self, r: usize) -> (u64, u64) {
        (self.positions[r], self.positions[(r + 1) % 3])
    }

    pub fn beta_string(&self) -> String {
        if self.beta.is_empty() {
            "0".into()
        } else {
            self.beta.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        }
    }
}

/// The cell between boundary step `step` and the chord over it.
#[derive(Debug, Clone)]
pub struct Bigon {
    pub step: usize,
    /// `None` for a padding stay.
    pub letter: Option<GenLetter>,
    /// Owning non-degenerate triangle and side.
    pub triangle: usize,
    pub side: usize,
    /// Whether the side runs along the step's direction.
    pub forward: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Census {
    pub k: u32,
    /// `3·2^{k+2} − 2`.
    pub closed_form: u64,
    pub enumerated: u64,
    pub nondegenerate: u64,
    pub degenerate: u64,
    /// `3·2^k`.
    pub bigons: u64,
    pub stay_bigons: u64,
}

impl Census {
    pub fn matches(&self) -> bool {
        self.enumerated == self.closed_form && self.nondegenerate + self.degenerate == self.enumerated
    }
}

#[derive(Debug, Clone)]
pub struct FareyDiagram {
    pub k: u32,
    /// Prefix values `p_0, …, p_{N−1}`; empty for a bare layout.
    pub boundary_vertices: Vec<ProductElement>,
    /// Indexed by quarter-step position.
    pub vertex_labels: Vec<VertexLabel>,
    /// `Δ_0` first, then by depth.
    pub triangles: Vec<FareyTriangle>,
    pub bigons: Vec<Bigon>,
}

impl FareyDiagram {
    /// Boundary length `3·2^k`.
    pub fn n(&self) -> usize {
        3 << self.k
    }

    /// The subdivision for `k` without group elements.
    pub fn layout(k: u32) -> Self {
        let n = 3u64 << k;
        let circ = QUARTER * n;
        let mut labels: Vec<Option<VertexLabel>> = vec![None; circ as usize];
        let base = [0, circ / 3, 2 * circ / 3];
        for (r, &p) in base.iter().enumerate() {
            labels[p as usize] = Some(VertexLabel {
                position: p,
                letter: LETTERS[r],
                beta: vec![],
            });
        }
        let mut triangles = vec![FareyTriangle {
            beta: vec![],
            positions: base,
            degenerate: false,
            values: None,
        }];
        let mut queue = VecDeque::from([0usize]);
        while let Some(pi) = queue.pop_front() {
            let parent = triangles[pi].clone();
            if parent.depth() as u32 == k + 2 {
                continue;
            }
            for t in 0..3 {
                if parent.beta.last() == Some(&(t as u8 + 1)) {
                    continue;
                }
                let (pu, pw, pr) = (
                    parent.positions[(t + 1) % 3],
                    parent.positions[(t + 2) % 3],
                    parent.positions[t],
                );
                let fwd = (pw + circ - pu) % circ;
                let (start, len) = if (pr + circ - pu) % circ < fwd {
                    (pw, (pu + circ - pw) % circ)
                } else {
                    (pu, fwd)
                };
                debug_assert!(len >= 2 && len % 2 == 0);
                let mid = (start + len / 2) % circ;
                let mut beta = parent.beta.clone();
                beta.push(t as u8 + 1);
                debug_assert!(labels[mid as usize].is_none());
                labels[mid as usize] = Some(VertexLabel {
                    position: mid,
                    letter: LETTERS[t],
                    beta: beta.clone(),
                });
                let mut positions = parent.positions;
                positions[t] = mid;
                triangles.push(FareyTriangle {
                    degenerate: beta.len() as u32 > k,
                    beta,
                    positions,
                    values: None,
                });
                queue.push_back(triangles.len() - 1);
            }
        }
        let mut owners: HashMap<(u64, u64), (usize, usize, bool)> = HashMap::new();
        for (ti, t) in triangles.iter().enumerate().filter(|(_, t)| !t.degenerate) {
            for r in 0..3 {
                let (x, y) = t.side(r);
                if (y + circ - x) % circ == QUARTER {
                    owners.insert((x, y), (ti, r, true));
                } else if (x + circ - y) % circ == QUARTER {
                    owners.insert((y, x), (ti, r, false));
                }
            }
        }
        let bigons = (0..n)
            .map(|s| {
                let key = (QUARTER * s, (QUARTER * (s + 1)) % circ);
                let (triangle, side, forward) = owners[&key];
                Bigon {
                    step: s as usize,
                    letter: None,
                    triangle,
                    side,
                    forward,
                }
            })
            .collect();
        Self {
            k,
            boundary_vertices: Vec::new(),
            vertex_labels: labels.into_iter().map(Option::unwrap).collect(),
            triangles,
            bigons,
        }
    }

    pub fn census(&self) -> Census {
        let nondegenerate = self.triangles.iter().filter(|t| !t.degenerate).count() as u64;
        Census {
            k: self.k,
            closed_form: 3 * (1u64 << (self.k + 2)) - 2,
            enumerated: self.triangles.len() as u64,
            nondegenerate,
            degenerate: self.triangles.len() as u64 - nondegenerate,
            bigons: self.bigons.len() as u64,
            stay_bigons: self.bigons.iter().filter(|b| b.letter.is_none()).count() as u64,
        }
    }

    /// Violations of the letter and depth rules, at quarter resolution and at
    /// unit resolution.
    pub fn label_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for stride in [1usize, QUARTER as usize] {
            let pts: Vec<&VertexLabel> = self.vertex_labels.iter().step_by(stride).collect();
            let m = pts.len();
            for i in 0..m {
                let (prev, v, next) = (pts[(i + m - 1) % m], pts[i], pts[(i + 1) % m]);
                if prev.letter == v.letter || next.letter == v.letter || prev.letter == next.letter {
                    out.push(format!(
                        "{} has neighbours {} and {}",
                        v.name(),
                        prev.name(),
                        next.name()
                    ));
                }
            }
        }
        for v in &self.vertex_labels {
            if let Some(&t) = v.beta.last() {
                if LETTERS[t as usize - 1] != v.letter {
                    out.push(format!("{} ends its sequence with {t}", v.name()));
                }
            }
        }
        out
    }

    pub fn value(&self, position: u64) -> Option<&ProductElement> {
        if position % QUARTER != 0 {
            return None;
        }
        self.boundary_vertices.get((position / QUARTER) as usize % self.n().max(1))
    }
}

/// The subdivision of a padded loop with prefix values attached.
pub fn tessellate(lat: &Lattice, padded: &KernelLoop) -> Result<FareyDiagram> {
    let len = padded.len();
    if len < 3 || len % 3 != 0 || !(len / 3).is_power_of_two() {
        return Err(FillerError::Loop(format!("length {len} is not of the form 3·2^k")));
    }
    let k = (len / 3).trailing_zeros();
    let mut d = FareyDiagram::layout(k);
    let mut p = padded.prefixes(lat)?;
    p.pop();
    d.boundary_vertices = p;
    for b in d.bigons.iter_mut() {
        b.letter = padded.steps[b.step];
    }
    for i in 0..d.triangles.len() {
        if d.triangles[i].degenerate {
            continue;
        }
        let pos = d.triangles[i].positions;
        let vals = pos.map(|x| d.value(x).cloned().expect("non-degenerate vertex on a step"));
        d.triangles[i].values = Some(vals);
    }
    Ok(d)
}
