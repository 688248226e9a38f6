//! Generator-level checks of patterns, determinacy, `B`-patterns and containment.

use std::collections::HashSet;

use kerphi_abelian::ZVec;
use kerphi_factor::Word;
use kerphi_product::{Instance, ProductElement};
use serde::Serialize;

use crate::gen::{lift_of, GenLetter, Generator};
use crate::pattern::{Pattern, Shape, Token};
use crate::recipe::DetSpec;
use crate::seq::LabelSequences;
use crate::Result;

#[derive(Debug, Clone, Serialize)]
pub struct SlotVerdict {
    pub slot: String,
    pub token: Token,
    pub pass: bool,
    pub witness: Option<String>,
}

/// Entries of generators that are non-trivial at exactly one coordinate of `coords`.
fn singles(realized: &[(Generator, &ProductElement)], coords: &[usize]) -> HashSet<(usize, Word)> {
    let mut out = HashSet::new();
    for (_, g) in realized {
        let mut nz = coords.iter().filter(|&&i| !g.entry(i).is_identity());
        if let (Some(&i), None) = (nz.next(), nz.next()) {
            out.insert((i, g.entry(i).clone()));
            out.insert((i, g.entry(i).inverse()));
        }
    }
    out
}

fn check_slot(
    inst: &Instance,
    seq: &LabelSequences,
    classes: &[usize],
    token: Token,
    realized: &[(Generator, &ProductElement)],
) -> Result<Option<String>> {
    let coords = seq.union(classes);
    match token {
        Token::E => {
            for (gen, g) in realized {
                if let Some(&i) = coords.iter().find(|&&i| !g.entry(i).is_identity()) {
                    return Ok(Some(format!("{gen} is non-trivial at coordinate {i}")));
                }
            }
            Ok(None)
        }
        Token::G(c) => {
            if classes != [c as usize] {
                return Ok(Some(format!("G{c} placed in slot {}", Shape::slot_name(classes))));
            }
            let have = singles(realized, &coords);
            for &i in &coords {
                let f = inst.factor(i)?;
                for (idx, y) in f.ks().y().iter().enumerate() {
                    if !y.is_identity() && !have.contains(&(i, y.clone())) {
                        return Ok(Some(format!("no generator carries y{} alone at coordinate {i}", idx + 1)));
                    }
                }
                for j in 1..=seq.n() {
                    for (b0, w) in f.spec().section_table()[j - 1].iter().enumerate() {
                        if !have.contains(&(i, w.clone())) {
                            return Ok(Some(format!("no generator carries s^{j}(e{}) alone at coordinate {i}", b0 + 1)));
                        }
                    }
                }
            }
            Ok(None)
        }
        Token::A { t, s } => {
            if classes != [s as usize] || crate::seq::class3(s as i64) != t as usize {
                return Ok(Some(format!("A{t}_{s} placed in slot {}", Shape::slot_name(classes))));
            }
            let lifted: Vec<(usize, usize)> = coords.iter().map(|&i| (i, seq.star(i))).collect();
            check_lifts(inst, &coords, &lifted, realized)
        }
        Token::AE { t, m } => {
            let t = t as usize;
            if classes != [m as usize, m as usize + 1] || crate::seq::ns_slot(t) != m as usize {
                return Ok(Some(format!("A{t}_{m}E placed in slot {}", Shape::slot_name(classes))));
            }
            let lifted: Vec<(usize, usize)> = seq.alpha(t).iter().map(|&j| (seq.ns_coord(j), j)).collect();
            check_lifts(inst, &coords, &lifted, realized)
        }
    }
}

/// Entries at `lifted` coordinates are lifts of the paired block and every basis
/// element occurs alone; all other coordinates of the slot are trivial.
fn check_lifts(
    inst: &Instance,
    coords: &[usize],
    lifted: &[(usize, usize)],
    realized: &[(Generator, &ProductElement)],
) -> Result<Option<String>> {
    for (gen, g) in realized {
        for &i in coords {
            let w = g.entry(i);
            match lifted.iter().find(|&&(c, _)| c == i) {
                Some(&(_, j)) => {
                    if lift_of(inst, i, j, w)?.is_none() {
                        return Ok(Some(format!("{gen} has {w} at coordinate {i}, not a lift of A{j}")));
                    }
                }
                None if !w.is_identity() => {
                    return Ok(Some(format!("{gen} is non-trivial at coordinate {i}")));
                }
                None => {}
            }
        }
    }
    let have = singles(realized, coords);
    for &(i, j) in lifted {
        let f = inst.factor(i)?;
        for (b0, w) in f.spec().section_table()[j - 1].iter().enumerate() {
            if !have.contains(&(i, w.clone())) {
                return Ok(Some(format!("basis element e{} of A{j} never lifted alone into coordinate {i}", b0 + 1)));
            }
        }
    }
    Ok(None)
}

pub fn verify_pattern(
    inst: &Instance,
    seq: &LabelSequences,
    pattern: &Pattern,
    realized: &[(Generator, &ProductElement)],
) -> Result<Vec<SlotVerdict>> {
    pattern
        .shape
        .slots()
        .iter()
        .zip(&pattern.tokens)
        .map(|(classes, &token)| {
            let witness = check_slot(inst, seq, classes, token, realized)?;
            Ok(SlotVerdict {
                slot: Shape::slot_name(classes),
                token,
                pass: witness.is_none(),
                witness,
            })
        })
        .collect()
}

/// `-Σ_{i∈A} φ_i(g_i)`.
fn minus_phi_on(inst: &Instance, g: &ProductElement, a_set: &[usize]) -> Result<ZVec> {
    let mut acc = ZVec::zero(inst.decomposition());
    for &i in a_set {
        acc = acc.add(&inst.factor(i)?.spec().evaluate_phi(g.entry(i))?)?;
    }
    Ok(acc.neg()?)
}

#[derive(Debug, Clone, Serialize)]
pub struct DeterminacyVerdict {
    pub a_set: Vec<usize>,
    pub determinate: bool,
    pub witness: Option<String>,
    /// `None` when not checked.
    pub b_pattern: Option<bool>,
    pub b_witness: Option<String>,
}

/// Checks `g_k = s^{j}_k(pr_j(-Σ_{i∈A} φ_i(g_i)))` for every generator and `k ∈ B`.
pub fn verify_determinacy(
    inst: &Instance,
    spec: &DetSpec,
    realized: &[(Generator, &ProductElement)],
) -> Result<Option<String>> {
    for (gen, g) in realized {
        let v = minus_phi_on(inst, g, &spec.a_set)?;
        for &(k, j) in &spec.b_blocks {
            let want = inst.factor(k)?.spec().lift_block_of(j, &v)?;
            if *g.entry(k) != want {
                return Ok(Some(format!(
                    "{gen}: coordinate {k} holds {} but the A-part prescribes {want}",
                    g.entry(k)
                )));
            }
        }
    }
    Ok(None)
}

/// For `k ∈ B`, the `k`-projections generate the expected block (or are trivial
/// where `trivial_at` says so).
pub fn verify_b_pattern(
    inst: &Instance,
    spec: &DetSpec,
    trivial_at: &dyn Fn(usize) -> bool,
    realized: &[(Generator, &ProductElement)],
) -> Result<Option<String>> {
    for &(k, j) in &spec.b_blocks {
        if trivial_at(k) {
            if let Some((gen, _)) = realized.iter().find(|(_, g)| !g.entry(k).is_identity()) {
                return Ok(Some(format!("{gen} is non-trivial at coordinate {k}, expected E")));
            }
            continue;
        }
        let mut seen: HashSet<Word> = HashSet::new();
        for (gen, g) in realized {
            let w = g.entry(k);
            if w.is_identity() {
                continue;
            }
            if lift_of(inst, k, j, w)?.is_none() {
                return Ok(Some(format!("{gen} has {w} at coordinate {k}, not a lift of A{j}")));
            }
            seen.insert(w.clone());
            seen.insert(w.inverse());
        }
        let f = inst.factor(k)?;
        for (b0, w) in f.spec().section_table()[j - 1].iter().enumerate() {
            if !seen.contains(w) {
                return Ok(Some(format!("e{} of A{j} missing at coordinate {k}", b0 + 1)));
            }
        }
    }
    Ok(None)
}

/// A word in `face` equal to `gen`: the letter itself, its swap, or a two-letter path.
pub fn express_in(face: &HashSet<Generator>, gen: Generator, two_n: usize) -> Option<Vec<GenLetter>> {
    if face.contains(&gen) {
        return Some(vec![gen.letter(false)]);
    }
    let Generator::Z { j, i, k, b } = gen else {
        return None;
    };
    // `step(u, v)`: a letter moving `s^j(e_b)` from `v` to `u`.
    let step = |u: usize, v: usize| -> Option<GenLetter> {
        let fwd = Generator::Z { j, i: u, k: v, b };
        let rev = Generator::Z { j, i: v, k: u, b };
        if face.contains(&fwd) {
            Some(fwd.letter(false))
        } else if face.contains(&rev) {
            Some(rev.letter(true))
        } else {
            None
        }
    };
    if let Some(l) = step(i, k) {
        return Some(vec![l]);
    }
    (1..=two_n)
        .filter(|&x| x != i && x != k)
        .find_map(|x| Some(vec![step(i, x)?, step(x, k)?]))
}
