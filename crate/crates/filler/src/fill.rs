use std::collections::HashMap;

use kerphi_lattice::GenLetter;
use kerphi_triangle::{Actualization, Triangle};
use rayon::prelude::*;
use serde::Serialize;

use crate::dehn::DehnModel;
use crate::farey::{tessellate, Census, FareyDiagram, QUARTER};
use crate::kloop::{pad_loop, KernelLoop};
use crate::{FillerError, Result};

/// Words along chords, keyed by oriented quarter-step endpoints.
type SideWords = HashMap<(u64, u64), Vec<GenLetter>>;

/// Largest admissible bigon perimeter.
pub const BIGON_PERIMETER: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// `100·δ(32n) + Mn`.
    Superadditive,
    /// `(75·log₂(n/3) + 25)·δ̄(24n) + Mn`.
    Log,
}

#[derive(Debug, Clone, Serialize)]
pub struct TriangleArea {
    pub beta: String,
    pub depth: usize,
    /// Boundary steps of the vertices in role order.
    pub steps: [u64; 3],
    pub d: u64,
    pub exact: bool,
    /// `25·δ(24D)`.
    pub bound: u128,
    /// `Σ_regions δ(perimeter)`.
    pub per_region: u128,
    pub max_region_perimeter: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct BigonArea {
    pub step: usize,
    pub letter: Option<String>,
    pub perimeter: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct AreaReport {
    pub model: String,
    pub original_length: usize,
    /// Padded length `3·2^k`.
    pub n: usize,
    pub k: u32,
    pub census: Census,
    pub triangle_count: u64,
    pub bigon_count: u64,
    pub triangles: Vec<TriangleArea>,
    pub bigons: Vec<BigonArea>,
    pub max_bigon_perimeter: usize,
    /// Chords checked from both adjacent triangles.
    pub shared_sides: usize,
    pub m: u128,
    /// `Σ 25·δ(24D_t) + bigon_count·M`.
    pub exact_sum: u128,
    /// Whether every `D_t` is an exact distance.
    pub exact: bool,
    /// `Σ_t Σ_regions δ(perimeter) + bigon_count·M`.
    pub refined_sum: u128,
    pub branch: Branch,
    /// `δ̄(24n)` on the log branch.
    pub closure_value: Option<u128>,
    pub closed_form_bound: u128,
    pub pass: bool,
}

impl AreaReport {
    pub fn to_text(&self) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        let c = &self.census;
        let _ = writeln!(s, "model {}  length {} padded to n = {} (k = {})", self.model, self.original_length, self.n, self.k);
        let _ = writeln!(
            s,
            "census: {} triangles (closed form {}), {} non-degenerate, {} degenerate; {} bigons ({} stays)",
            c.enumerated, c.closed_form, c.nondegenerate, c.degenerate, c.bigons, c.stay_bigons
        );
        for t in &self.triangles {
            let _ = writeln!(
                s,
                "  D_{:<12} steps {:>3} {:>3} {:>3}  D {:>5}{}  25d(24D) {:>14}  regions {:>12}",
                t.beta,
                t.steps[0],
                t.steps[1],
                t.steps[2],
                t.d,
                if t.exact { " " } else { "+" },
                t.bound,
                t.per_region
            );
        }
        let _ = writeln!(s, "max bigon perimeter {} (limit {BIGON_PERIMETER}), shared sides {}", self.max_bigon_perimeter, self.shared_sides);
        let _ = writeln!(s, "M = {}", self.m);
        let _ = writeln!(s, "exact sum   {}{}", self.exact_sum, if self.exact { "" } else { " (upper bound)" });
        let _ = writeln!(s, "refined sum {}", self.refined_sum);
        let branch = match self.branch {
            Branch::Superadditive => "100*d(32n) + Mn".to_string(),
            Branch::Log => format!("(75k + 25)*dbar(24n) + Mn, dbar(24n) = {}", self.closure_value.unwrap_or(0)),
        };
        let _ = writeln!(s, "closed form {}  [{branch}]", self.closed_form_bound);
        let _ = writeln!(s, "verdict {}", if self.pass { "pass" } else { "FAIL" });
        s
    }
}

/// Fills kernel loops by Farey tessellation under one Dehn model.
pub struct Filler<'a> {
    tri: &'a Triangle,
    model: DehnModel,
    m: Option<u128>,
}

impl<'a> Filler<'a> {
    /// `M` defaults to `δ(7)`.
    pub fn new(tri: &'a Triangle, model: DehnModel) -> Self {
        let m = model.eval(BIGON_PERIMETER as u64).ok();
        Self { tri, model, m }
    }

    pub fn with_m(mut self, m: Option<u128>) -> Self {
        self.m = m;
        self
    }

    pub fn model(&self) -> &DehnModel {
        &self.model
    }

    /// `100·δ(32n) + Mn` or `(75k + 25)·δ̄(24n) + Mn` for `n = 3·2^k`.
    pub fn closed_form(&self, k: u32) -> Result<(Branch, Option<u128>, u128)> {
        let m = self.m.ok_or_else(|| FillerError::Config("bigon constant M is unset".into()))?;
        let n = 3u64 << k;
        let mn = m.saturating_mul(n as u128);
        if self.model.superadditive {
            let v = 100u128.saturating_mul(self.model.eval(32 * n)?).saturating_add(mn);
            Ok((Branch::Superadditive, None, v))
        } else {
            let bar = self.model.closure_at(24 * n)?;
            let v = (75 * k as u128 + 25).saturating_mul(bar).saturating_add(mn);
            Ok((Branch::Log, Some(bar), v))
        }
    }

    pub fn fill(&self, l: &KernelLoop) -> Result<AreaReport> {
        let m = self.m.ok_or_else(|| FillerError::Config("bigon constant M is unset".into()))?;
        let lat = self.tri.lattice();
        l.validate(lat)?;
        let (padded, k) = pad_loop(l)?;
        let diagram = tessellate(lat, &padded)?;
        let acts: Vec<Option<Actualization>> = diagram
            .triangles
            .par_iter()
            .map(|t| match &t.values {
                Some([a, b, c]) => self.tri.actualize(a, b, c).map(Some),
                None => Ok(None),
            })
            .collect::<std::result::Result<_, _>>()?;
        let (sides, shared_sides) = self.shared_sides(&diagram, &acts)?;

        let mut triangles = Vec::new();
        let mut exact_sum = 0u128;
        let mut refined_sum = 0u128;
        let mut exact = true;
        for (t, act) in diagram.triangles.iter().zip(&acts) {
            let Some(act) = act else { continue };
            let bound = 25u128.saturating_mul(self.model.eval(24 * act.d.value)?);
            let mut per_region = 0u128;
            for r in &act.regions {
                per_region = per_region.saturating_add(self.model.eval(r.perimeter() as u64)?);
            }
            exact_sum = exact_sum.saturating_add(bound);
            refined_sum = refined_sum.saturating_add(per_region);
            exact &= act.d.exact;
            triangles.push(TriangleArea {
                beta: t.beta_string(),
                depth: t.depth(),
                steps: t.positions.map(|p| p / QUARTER),
                d: act.d.value,
                exact: act.d.exact,
                bound,
                per_region,
                max_region_perimeter: act.regions.iter().map(|r| r.perimeter()).max().unwrap_or(0),
            });
        }

        let mut bigons = Vec::with_capacity(diagram.bigons.len());
        for b in &diagram.bigons {
            let key = (QUARTER * b.step as u64, (QUARTER * (b.step as u64 + 1)) % (QUARTER * diagram.n() as u64));
            let chord = &sides[&key];
            let mut word: Vec<GenLetter> = b.letter.into_iter().collect();
            word.extend(invert(chord));
            if !lat.evaluate(&word)?.is_identity() {
                return Err(FillerError::Consistency {
                    context: format!("bigon at step {}", b.step),
                    witness: "boundary does not close".into(),
                });
            }
            bigons.push(BigonArea {
                step: b.step,
                letter: b.letter.map(|l| l.to_string()),
                perimeter: word.len(),
            });
        }
        let bigon_count = bigons.len() as u64;
        let bigon_area = m.saturating_mul(bigon_count as u128);
        exact_sum = exact_sum.saturating_add(bigon_area);
        refined_sum = refined_sum.saturating_add(bigon_area);
        let max_bigon_perimeter = bigons.iter().map(|b| b.perimeter).max().unwrap_or(0);

        let (branch, closure_value, closed_form_bound) = self.closed_form(k)?;
        let census = diagram.census();
        Ok(AreaReport {
            model: self.model.name(),
            original_length: l.len(),
            n: padded.len(),
            k,
            triangle_count: census.enumerated,
            bigon_count,
            census,
            triangles,
            bigons,
            max_bigon_perimeter,
            shared_sides,
            m,
            exact_sum,
            exact,
            refined_sum,
            branch,
            closure_value,
            closed_form_bound,
            pass: census.matches() && max_bigon_perimeter <= BIGON_PERIMETER && exact_sum <= closed_form_bound,
        })
    }

    /// Side words keyed by oriented endpoint pair; a chord seen from two
    /// triangles must carry the same word.
    fn shared_sides(
        &self,
        diagram: &FareyDiagram,
        acts: &[Option<Actualization>],
    ) -> Result<(SideWords, usize)> {
        let lat = self.tri.lattice();
        let tpl = self.tri.template();
        let mut sides = SideWords::new();
        let mut shared = 0;
        for (t, act) in diagram.triangles.iter().zip(acts) {
            let Some(act) = act else { continue };
            let vals = t.values.as_ref().unwrap();
            for r in 0..3 {
                let (x, y) = t.side(r);
                let word = act.side_word(tpl, r);
                let want = vals[r].invert().multiply(&vals[(r + 1) % 3]);
                if lat.evaluate(&word)? != want {
                    return Err(FillerError::Consistency {
                        context: format!("side {r} of triangle {}", t.beta_string()),
                        witness: "side word does not join its endpoints".into(),
                    });
                }
                let (key, oriented) = if x <= y { ((x, y), word) } else { ((y, x), invert(&word)) };
                if let Some(prev) = sides.get(&key) {
                    if *prev != oriented {
                        return Err(FillerError::Consistency {
                            context: format!("chord {}-{} at triangle {}", key.0 / QUARTER, key.1 / QUARTER, t.beta_string()),
                            witness: "adjacent triangles disagree on the shared side".into(),
                        });
                    }
                    shared += 1;
                } else {
                    sides.insert(key, oriented);
                }
            }
        }
        let rev: Vec<((u64, u64), Vec<GenLetter>)> = sides.iter().map(|(&(x, y), w)| ((y, x), invert(w))).collect();
        sides.extend(rev);
        Ok((sides, shared))
    }
}

fn invert(w: &[GenLetter]) -> Vec<GenLetter> {
    w.iter()
        .rev()
        .map(|l| GenLetter {
            gen: l.gen,
            inv: !l.inv,
        })
        .collect()
}
