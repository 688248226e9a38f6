//! Label sequences, vector generators and the 25 face and 21 edge subgroups of
//! `Ker(Φ)`, with generator-level verification of their tables.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::sync::Arc;

use kerphi_abelian::AbelianError;
use kerphi_factor::FactorError;
use kerphi_product::{Instance, ProductElement, ProductError};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

mod adjacency;
mod gen;
mod la;
mod label;
mod pattern;
mod recipe;
mod seq;
mod verify;

pub use adjacency::adjacency;
pub use gen::{evaluate, GenLetter, Generator};
pub use la::{LaLift, LaSlot};
pub use label::{Kind, Label};
pub use pattern::{table_row, Pattern, Shape, TableRow, Token, NOTE_AMBIGUOUS};
pub use recipe::{det_specs, generators, std_sink_classes, DetSpec};
pub use seq::{class3, class6, ns_slot, LabelSequences};
pub use verify::{express_in, DeterminacyVerdict, SlotVerdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("n = {0} is below 3")]
    InvalidN(usize),
    #[error("generator: {0}")]
    Generator(String),
    #[error("parse: {0}")]
    Parse(String),
    #[error("encoding: {0}")]
    Encoding(String),
    #[error("unknown subgroup label `{0}`")]
    UnknownLabel(String),
    #[error(transparent)]
    Product(#[from] ProductError),
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
}

pub type Result<T> = std::result::Result<T, LatticeError>;

/// A face or edge group: its generating set and tabulated metadata.
#[derive(Debug, Clone)]
pub struct SubgroupDef {
    pub label: Label,
    pub generators: Vec<Generator>,
    pub pattern: Pattern,
    pub encoding: String,
    pub note: Option<&'static str>,
    pub det: Vec<DetSpec>,
}

impl SubgroupDef {
    pub fn build(label: Label, seq: &LabelSequences, inst: &Instance) -> Result<Self> {
        let (pattern, encoding, note) = match (label, table_row(label)) {
            (_, Some(row)) => (Pattern::parse(label, row.pattern)?, row.encoding.to_string(), row.note),
            (Label::EdgeGG { start, slots }, None) => {
                let p = pattern::radial_pattern(start, slots);
                let enc = format!("(1 2 3 ; {} {} {})", slots[0], slots[1], slots[2]);
                (p, enc, None)
            }
            _ => return Err(LatticeError::UnknownLabel(label.to_string())),
        };
        Ok(Self {
            label,
            generators: generators(label, seq, inst),
            pattern,
            encoding,
            note,
            det: det_specs(label, seq),
        })
    }

    pub fn kind(&self) -> Kind {
        self.label.kind()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Census {
    pub y: usize,
    pub y_trivial: usize,
    pub z: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct PatternReport {
    pub shape: Shape,
    pub pattern: String,
    pub slots: Vec<SlotVerdict>,
    pub encoding: String,
    pub encoding_expected: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SubgroupReport {
    pub label: Label,
    pub kind: Kind,
    pub census: Census,
    pub kernel: bool,
    pub kernel_witness: Option<String>,
    pub pattern: PatternReport,
    pub determinacy: Vec<DeterminacyVerdict>,
    pub note: Option<&'static str>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EdgeFaceReport {
    pub edge: Label,
    pub face: Label,
    pub literal: usize,
    pub composite: usize,
    pub pass: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TablesReport {
    pub n: usize,
    pub subgroups: Vec<SubgroupReport>,
    pub edge_face: Vec<EdgeFaceReport>,
    pub pass: bool,
}

impl TablesReport {
    /// One line per subgroup and per containment.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let verdict = |b: bool| if b { "pass" } else { "FAIL" };
        let _ = writeln!(s, "tables n={} verdict={}", self.n, verdict(self.pass));
        for r in &self.subgroups {
            let det: Vec<String> = r
                .determinacy
                .iter()
                .map(|d| {
                    let b = match d.b_pattern {
                        Some(b) => format!(",B={}", verdict(b)),
                        None => String::new(),
                    };
                    format!("A={:?}:{}{}", d.a_set, verdict(d.determinate), b)
                })
                .collect();
            let _ = writeln!(
                s,
                "{:?} {} gens=Y{}(+{}e)/Z{} kernel={} pattern={} {} la={} det=[{}]{}",
                r.kind,
                r.label,
                r.census.y - r.census.y_trivial,
                r.census.y_trivial,
                r.census.z,
                verdict(r.kernel),
                verdict(r.pattern.pass),
                r.pattern.pattern,
                r.pattern.encoding,
                det.join(" "),
                r.note.map(|n| format!(" note=\"{n}\"")).unwrap_or_default()
            );
            for sl in r.pattern.slots.iter().filter(|sl| !sl.pass) {
                let _ = writeln!(s, "  slot {} {}: {}", sl.slot, sl.token, sl.witness.as_deref().unwrap_or(""));
            }
        }
        for e in &self.edge_face {
            let _ = writeln!(
                s,
                "edge {} <= {} literal={} composite={} {}",
                e.edge,
                e.face,
                e.literal,
                e.composite,
                verdict(e.pass)
            );
        }
        s
    }
}

/// All face and edge groups of one instance with their realized generators.
pub struct Lattice {
    inst: Arc<Instance>,
    seq: LabelSequences,
    defs: Vec<SubgroupDef>,
    index: HashMap<Label, usize>,
    sets: Vec<HashSet<Generator>>,
    realized: HashMap<Generator, ProductElement>,
}

impl Lattice {
    pub fn new(inst: Arc<Instance>) -> Result<Self> {
        let seq = LabelSequences::new(inst.n())?;
        let labels: Vec<Label> = Label::faces()
            .into_iter()
            .chain(Label::edges())
            .chain(Label::double_edges())
            .collect();
        let defs = labels
            .iter()
            .map(|&l| SubgroupDef::build(l, &seq, &inst))
            .collect::<Result<Vec<_>>>()?;
        let index = defs.iter().enumerate().map(|(i, d)| (d.label, i)).collect();
        let sets: Vec<HashSet<Generator>> = defs.iter().map(|d| d.generators.iter().copied().collect()).collect();
        let mut realized = HashMap::new();
        for g in sets.iter().flatten() {
            if !realized.contains_key(g) {
                realized.insert(*g, g.realize(&inst)?);
            }
        }
        Ok(Self {
            inst,
            seq,
            defs,
            index,
            sets,
            realized,
        })
    }

    pub fn instance(&self) -> &Arc<Instance> {
        &self.inst
    }

    pub fn sequences(&self) -> &LabelSequences {
        &self.seq
    }

    pub fn defs(&self) -> &[SubgroupDef] {
        &self.defs
    }

    pub fn def(&self, label: Label) -> Result<&SubgroupDef> {
        self.index
            .get(&label)
            .map(|&i| &self.defs[i])
            .ok_or_else(|| LatticeError::UnknownLabel(label.to_string()))
    }

    pub fn generator_set(&self, label: Label) -> Result<&HashSet<Generator>> {
        self.index
            .get(&label)
            .map(|&i| &self.sets[i])
            .ok_or_else(|| LatticeError::UnknownLabel(label.to_string()))
    }

    /// `X̄`: the union of the 25 face generating sets, sorted.
    pub fn xbar(&self) -> Vec<Generator> {
        let mut out: Vec<Generator> = self
            .defs
            .iter()
            .zip(&self.sets)
            .filter(|(d, _)| d.kind() == Kind::Face)
            .flat_map(|(_, s)| s.iter().copied())
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        out.sort();
        out
    }

    /// Whether the letter (or its inverse) is a defining generator of `label`.
    pub fn contains(&self, label: Label, l: GenLetter) -> bool {
        self.generator_set(label).map(|s| s.contains(&l.gen)).unwrap_or(false)
    }

    /// The realization of a generator, cached for defining generators.
    pub fn realize(&self, g: Generator) -> Result<ProductElement> {
        match self.realized.get(&g) {
            Some(p) => Ok(p.clone()),
            None => g.realize(&self.inst),
        }
    }

    pub fn realize_letter(&self, l: GenLetter) -> Result<ProductElement> {
        let g = self.realize(l.gen)?;
        Ok(if l.inv { g.invert() } else { g })
    }

    pub fn evaluate(&self, word: &[GenLetter]) -> Result<ProductElement> {
        let mut acc = self.inst.identity();
        for &l in word {
            acc.mul_assign(&self.realize_letter(l)?);
        }
        Ok(acc)
    }

    /// Rewrites `l` as a word over the generators of `face`.
    pub fn express_in(&self, face: Label, l: GenLetter) -> Result<Option<Vec<GenLetter>>> {
        let set = self.generator_set(face)?;
        Ok(express_in(set, l.gen, self.inst.two_n()).map(|w| {
            if l.inv {
                w.into_iter().rev().map(|x| GenLetter { inv: !x.inv, ..x }).collect()
            } else {
                w
            }
        }))
    }

    fn realized_of(&self, def: &SubgroupDef) -> Vec<(Generator, &ProductElement)> {
        def.generators.iter().map(|g| (*g, &self.realized[g])).collect()
    }

    pub fn verify(&self, label: Label) -> Result<SubgroupReport> {
        let def = self.def(label)?;
        let inst = &*self.inst;
        let realized = self.realized_of(def);
        let mut kernel_witness = None;
        for (g, p) in &realized {
            if !inst.in_kernel(p)? {
                kernel_witness = Some(format!("Φ({g}) ≠ 0"));
                break;
            }
        }
        let slots = verify::verify_pattern(inst, &self.seq, &def.pattern, &realized)?;
        let encoding = def.pattern.encoding();
        let pattern = PatternReport {
            shape: def.pattern.shape,
            pattern: def.pattern.to_string(),
            pass: slots.iter().all(|s| s.pass) && encoding == def.encoding,
            slots,
            encoding,
            encoding_expected: def.encoding.clone(),
        };
        let aan_std: Vec<usize> = match label {
            Label::AAN(t) => self.seq.union(&std_sink_classes(t as usize)),
            _ => Vec::new(),
        };
        let trivial_at = |k: usize| aan_std.contains(&k);
        let mut determinacy = Vec::new();
        for spec in &def.det {
            let witness = verify::verify_determinacy(inst, spec, &realized)?;
            let (b_pattern, b_witness) = if label.kind() == Kind::Face {
                let w = verify::verify_b_pattern(inst, spec, &trivial_at, &realized)?;
                (Some(w.is_none()), w)
            } else {
                (None, None)
            };
            determinacy.push(DeterminacyVerdict {
                a_set: spec.a_set.clone(),
                determinate: witness.is_none(),
                witness,
                b_pattern,
                b_witness,
            });
        }
        let census = Census {
            y: def.generators.iter().filter(|g| matches!(g, Generator::Y { .. })).count(),
            y_trivial: def.generators.iter().filter(|g| g.is_trivial(inst)).count(),
            z: def.generators.iter().filter(|g| matches!(g, Generator::Z { .. })).count(),
        };
        let pass = kernel_witness.is_none()
            && pattern.pass
            && determinacy.iter().all(|d| d.determinate && d.b_pattern != Some(false));
        Ok(SubgroupReport {
            label,
            kind: label.kind(),
            census,
            kernel: kernel_witness.is_none(),
            kernel_witness,
            pattern,
            determinacy,
            note: def.note,
            pass,
        })
    }

    pub fn verify_edge_in_face(&self, edge: Label, face: Label) -> Result<EdgeFaceReport> {
        let def = self.def(edge)?;
        let (mut literal, mut composite) = (0, 0);
        let mut witness = None;
        for &g in &def.generators {
            match self.express_in(face, g.letter(false))? {
                Some(w) if w.len() == 1 && w[0] == g.letter(false) => literal += 1,
                Some(w) => {
                    if self.evaluate(&w)? == self.realized[&g] {
                        composite += 1;
                    } else {
                        witness = Some(format!("{g}: rewrite does not evaluate back"));
                        break;
                    }
                }
                None => {
                    witness = Some(format!("{g} is not a word of length ≤ 2 in {face}"));
                    break;
                }
            }
        }
        Ok(EdgeFaceReport {
            edge,
            face,
            literal,
            composite,
            pass: witness.is_none(),
            witness,
        })
    }

    /// Every table check over all groups, in parallel.
    pub fn verify_all(&self) -> Result<TablesReport> {
        let subgroups = self
            .defs
            .par_iter()
            .map(|d| self.verify(d.label))
            .collect::<Result<Vec<_>>>()?;
        let pairs: Vec<(Label, Label)> = adjacency()
            .into_iter()
            .flat_map(|(e, fs)| fs.into_iter().map(move |f| (e, f)))
            .collect();
        let edge_face = pairs
            .par_iter()
            .map(|&(e, f)| self.verify_edge_in_face(e, f))
            .collect::<Result<Vec<_>>>()?;
        let pass = subgroups.iter().all(|r| r.pass) && edge_face.iter().all(|r| r.pass);
        Ok(TablesReport {
            n: self.inst.n(),
            subgroups,
            edge_face,
            pass,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice(n: usize) -> Lattice {
        Lattice::new(Arc::new(Instance::doubled_free(n).unwrap())).unwrap()
    }

    fn pattern_passes(lat: &Lattice, label: Label, text: &str) -> bool {
        let def = lat.def(label).unwrap();
        let p = Pattern::parse(label, text).unwrap();
        verify::verify_pattern(&lat.inst, &lat.seq, &p, &lat.realized_of(def))
            .unwrap()
            .iter()
            .all(|s| s.pass)
    }

    #[test]
    fn corrupted_patterns_fail() {
        let lat = lattice(4);
        assert!(pattern_passes(&lat, Label::G3(1), "G1 G2 G3 A1_4 A2_5 A3_6"));
        assert!(!pattern_passes(&lat, Label::G3(1), "A1_1 G2 G3 A1_4 A2_5 A3_6"));
        assert!(!pattern_passes(&lat, Label::G3(1), "G1 G2 G3 A1_4 A2_5 E"));
        assert!(!pattern_passes(&lat, Label::G3(1), "G1 G2 G3 E A2_5 A3_6"));
        assert!(!pattern_passes(&lat, Label::L, "A1_1 A2_2 A3_3 A1_4 A2_5 G6"));
        assert!(!pattern_passes(&lat, Label::GN(3), "E G3 A1_4 A2_5 G6"));
        // The literal A2N(3,5) row does not fit.
        assert!(!pattern_passes(&lat, Label::EdgeAN(5), "E E A2_3 E A2_5E"));
    }

    #[test]
    fn wrong_index_sets_fail() {
        let lat = lattice(5);
        let def = lat.def(Label::G3(1)).unwrap();
        let realized = lat.realized_of(def);
        let wrong = DetSpec {
            a_set: lat.seq.union(&[4, 5, 6]),
            b_blocks: lat.seq.union(&[1, 2, 3]).into_iter().map(|k| (k, k)).collect(),
        };
        assert!(verify::verify_determinacy(&lat.inst, &wrong, &realized).unwrap().is_some());
        let def = lat.def(Label::GN(2)).unwrap();
        let g1 = DetSpec::nonstandard(&lat.seq, 1);
        assert!(verify::verify_determinacy(&lat.inst, &g1, &lat.realized_of(def)).unwrap().is_some());
    }
}
