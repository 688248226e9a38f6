use std::sync::Arc;

use kerphi_factor::{Distance, Invertible, KsGen};
use kerphi_lattice::{GenLetter, Generator, Label, Lattice};
use kerphi_product::{ProductElement, ProductError};

use crate::formula::FORMULAS;
use crate::template::{BoundExpr, EdgeInfo, TriangleTemplate, VertexId, VertexSpec};
use crate::{fail, Result, TriangleError};

/// A word over one edge group's generators joining two vertex values.
#[derive(Debug, Clone)]
pub struct Segment {
    pub edge: usize,
    pub from: VertexId,
    pub to: VertexId,
    pub label: Label,
    pub word: Vec<GenLetter>,
    pub bound: BoundExpr,
    pub bound_value: Distance,
}

impl Segment {
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn slack(&self) -> i64 {
        self.bound_value.value as i64 - self.word.len() as i64
    }
}

/// `∂Δ(a, b)`: the 7 segments of side `a → b`.
#[derive(Debug, Clone)]
pub struct SpanningPath {
    pub vertices: Vec<VertexId>,
    pub values: Vec<ProductElement>,
    pub segments: Vec<Segment>,
    /// `3d_{α12} + d_{α34} + 2d_{α5} + 3d_{α6}`.
    pub bound6: Distance,
}

impl SpanningPath {
    pub fn len(&self) -> usize {
        self.segments.iter().map(Segment::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All letters in path order.
    pub fn word(&self) -> Vec<GenLetter> {
        self.segments.iter().flat_map(|s| s.word.iter().copied()).collect()
    }
}

/// One face loop, as edge-group letters and rewritten over the face group.
#[derive(Debug, Clone)]
pub struct RegionLoop {
    pub face: usize,
    pub label: Label,
    pub cycle: Vec<VertexId>,
    pub boundary: Vec<(usize, bool)>,
    pub edge_perimeter: usize,
    pub word: Vec<GenLetter>,
}

impl RegionLoop {
    pub fn perimeter(&self) -> usize {
        self.word.len()
    }
}

/// `Δ(a, b, c)` with all checks passed.
#[derive(Debug, Clone)]
pub struct Actualization {
    pub triple: [ProductElement; 3],
    pub values: Vec<ProductElement>,
    /// Indexed like the template edges, in their template direction.
    pub segments: Vec<Segment>,
    pub regions: Vec<RegionLoop>,
    /// `d(a,b) + d(b,c) + d(c,a)`.
    pub d: Distance,
}

impl Actualization {
    pub fn value(&self, v: VertexId) -> &ProductElement {
        &self.values[v.0]
    }

    /// Word of side `r` of the outer boundary.
    pub fn side_word(&self, tpl: &TriangleTemplate, r: usize) -> Vec<GenLetter> {
        tpl.side(r)
            .into_iter()
            .flat_map(|(e, fwd)| oriented(&self.segments[e].word, fwd))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct AreaBound {
    /// `25·δ(24D)`.
    pub total: u128,
    /// `Σ_regions δ(perimeter)`.
    pub per_region: u128,
}

/// Area bounds of an actualization under the Dehn function `delta`.
pub fn area_bound(act: &Actualization, delta: impl Fn(u64) -> u128) -> AreaBound {
    AreaBound {
        total: 25 * delta(24 * act.d.value),
        per_region: act.regions.iter().map(|r| delta(r.perimeter() as u64)).sum(),
    }
}

/// `3d_{α12}(a,b) + d_{α34}(a,b) + 2d_{α5}(a,b) + 3d_{α6}(a,b)`.
pub fn spanning_bound_expression(lat: &Lattice, a: &ProductElement, b: &ProductElement) -> Result<Distance> {
    let mut total = Distance::exact(0);
    for (classes, k) in [(&[1usize, 2][..], 3), (&[3, 4], 1), (&[5], 2), (&[6], 3)] {
        let d = restricted(lat, a, b, classes)?;
        for _ in 0..k {
            total = total.add(d);
        }
    }
    Ok(total)
}

fn restricted(lat: &Lattice, x: &ProductElement, y: &ProductElement, classes: &[usize]) -> Result<Distance> {
    let coords = lat.sequences().union(classes);
    match lat.instance().restricted_distance(x, y, coords) {
        Ok(d) => Ok(d),
        Err(ProductError::DistanceBudgetExceeded { upper_bound }) => Ok(Distance {
            value: upper_bound,
            exact: false,
        }),
        Err(e) => Err(e.into()),
    }
}

fn oriented(word: &[GenLetter], fwd: bool) -> Vec<GenLetter> {
    if fwd {
        word.to_vec()
    } else {
        word.iter().rev().map(|l| l.inverse()).collect()
    }
}

fn show(word: &[GenLetter]) -> String {
    word.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
}

/// `d_{α_c}(x, y)` for every pair of triple members and class `c`.
struct ClassDistances {
    d: [[[Distance; 6]; 3]; 3],
}

impl ClassDistances {
    fn new(lat: &Lattice, triple: [&ProductElement; 3], pairs: &[(usize, usize)]) -> Result<Self> {
        let zero = Distance::exact(0);
        let mut d = [[[zero; 6]; 3]; 3];
        for &(x, y) in pairs {
            for c in 1..=6 {
                let v = restricted(lat, triple[x], triple[y], &[c])?;
                d[x][y][c - 1] = v;
                d[y][x][c - 1] = v;
            }
        }
        Ok(Self { d })
    }

    fn eval(&self, b: &BoundExpr) -> Distance {
        let mut total = Distance::exact(0);
        for t in &b.0 {
            for &c in &t.classes {
                total = total.add(self.d[t.x as usize][t.y as usize][c as usize - 1]);
            }
        }
        total
    }

    fn pair(&self, x: usize, y: usize) -> Distance {
        self.d[x][y].iter().fold(Distance::exact(0), |acc, &v| acc.add(v))
    }
}

/// The triangle bound to one instance.
pub struct Triangle {
    lat: Arc<Lattice>,
    tpl: TriangleTemplate,
}

impl Triangle {
    pub fn new(lat: Arc<Lattice>) -> Self {
        Self {
            lat,
            tpl: TriangleTemplate::new(),
        }
    }

    /// A triangle over a modified template; checks still run against it.
    pub fn with_template(lat: Arc<Lattice>, tpl: TriangleTemplate) -> Self {
        Self { lat, tpl }
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lat
    }

    pub fn template(&self) -> &TriangleTemplate {
        &self.tpl
    }

    fn check_kernel(&self, name: &str, g: &ProductElement) -> Result<()> {
        if self.lat.instance().in_kernel(g)? {
            Ok(())
        } else {
            Err(TriangleError::NotInKernel(format!("{name} = {g}")))
        }
    }

    /// `g`: entries of `α_k` taken from `triple[letters[k-1]]`.
    fn base(&self, spec: &VertexSpec, triple: [&ProductElement; 3]) -> ProductElement {
        let seq = self.lat.sequences();
        let entries = (1..=self.lat.instance().two_n())
            .map(|i| triple[spec.letters[seq.class_of(i) - 1] as usize].entry(i).clone())
            .collect();
        ProductElement::from_entries(entries)
    }

    /// `g · [−Φ(g)] · la`.
    pub fn vertex_value(&self, spec: &VertexSpec, triple: [&ProductElement; 3]) -> Result<ProductElement> {
        let inst = self.lat.instance();
        let g = self.base(spec, triple);
        let v = inst.phi(&g)?.neg()?;
        Ok(g.multiply(&spec.la.apply(inst, self.lat.sequences(), &v)?))
    }

    /// `l` or the inverse of its reversed-pair twin, whichever `label` defines.
    fn orient(&self, label: Label, l: GenLetter) -> Result<GenLetter> {
        if self.lat.contains(label, l) {
            return Ok(l);
        }
        if let Generator::Z { j, i, k, b } = l.gen {
            let twin = Generator::Z { j, i: k, k: i, b }.letter(!l.inv);
            if self.lat.contains(label, twin) {
                return Ok(twin);
            }
        }
        fail(format!("edge group {label}"), format!("letter {l} is not a generator"))
    }

    /// Word of edge `e` from `u` to `v`, built by the conversion or
    /// linear-algebra recipe.
    fn edge_word(
        &self,
        e: &EdgeInfo,
        u: &ProductElement,
        v: &ProductElement,
        triple: [&ProductElement; 3],
    ) -> Result<Vec<GenLetter>> {
        let inst = self.lat.instance();
        let seq = self.lat.sequences();
        let (su, sv) = (self.tpl.spec(e.from), self.tpl.spec(e.to));
        let mut word = Vec::new();
        if su.letters != sv.letters {
            if su.la != sv.la {
                return fail(format!("edge {} → {}", e.from, e.to), "entries and encoding both change");
            }
            for k in 1..=6 {
                if su.letters[k - 1] == sv.letters[k - 1] {
                    continue;
                }
                for &i in seq.alpha(k) {
                    let h = u.entry(i).inverse().mul(v.entry(i));
                    for l in inst.factor(i)?.rewrite_to_ks_basis(&h)?.letters() {
                        let gen = match l.gen {
                            KsGen::Y(idx) => Generator::Y { i, idx },
                            KsGen::Z { block, basis } => Generator::Z {
                                j: block,
                                i,
                                k: su.la.coord(seq, block),
                                b: basis,
                            },
                        };
                        word.push(self.orient(e.label, gen.letter(l.inv))?);
                    }
                }
            }
        } else {
            let lift = inst.phi(&self.base(su, triple))?.neg()?;
            for j in 1..=seq.n() {
                let (from, to) = (su.la.coord(seq, j), sv.la.coord(seq, j));
                if from == to {
                    continue;
                }
                for (b0, &x) in lift.project_block(j)?.coords().iter().enumerate() {
                    let l = Generator::Z { j, i: to, k: from, b: b0 + 1 }.letter(x < 0);
                    let l = self.orient(e.label, l)?;
                    word.extend((0..x.unsigned_abs()).map(|_| l));
                }
            }
        }
        Ok(word)
    }

    fn check_segment(&self, s: &Segment, u: &ProductElement, v: &ProductElement, four_d: Option<u64>) -> Result<()> {
        let ctx = || format!("segment {} → {} ({})", s.from, s.to, s.label);
        for &l in &s.word {
            if !self.lat.contains(s.label, l) {
                return fail(ctx(), format!("letter {l} outside the edge group"));
            }
        }
        if u.multiply(&self.lat.evaluate(&s.word)?) != *v {
            return fail(ctx(), format!("word {} does not join the endpoints", show(&s.word)));
        }
        if s.bound_value.exact && s.len() as u64 > s.bound_value.value {
            return fail(ctx(), format!("length {} exceeds {} = {}", s.len(), s.bound, s.bound_value.value));
        }
        if let Some(limit) = four_d {
            if s.len() as u64 > limit {
                return fail(ctx(), format!("length {} exceeds 4D = {limit}", s.len()));
            }
        }
        Ok(())
    }

    fn check_formulas(&self, values: &[Option<ProductElement>], triple: [&ProductElement; 3]) -> Result<()> {
        for f in FORMULAS {
            let Some(expected) = &values[f.vertex().0] else {
                continue;
            };
            let got = f.evaluate(&self.lat, triple)?;
            if &got != expected {
                return fail(
                    format!("vertex {} ({})", f.vertex(), f.name),
                    format!("explicit product {got} differs from {expected}"),
                );
            }
        }
        Ok(())
    }

    /// The 7-segment path `a → b`, checked against its tabulated bounds.
    pub fn spanning_path(&self, a: &ProductElement, b: &ProductElement) -> Result<SpanningPath> {
        self.check_kernel("a", a)?;
        self.check_kernel("b", b)?;
        let e = self.lat.instance().identity();
        let triple = [a, b, &e];
        let vertices = self.tpl.side_vertices(0);
        let mut slots: Vec<Option<ProductElement>> = vec![None; 36];
        for &v in &vertices {
            slots[v.0] = Some(self.vertex_value(self.tpl.spec(v), triple)?);
        }
        self.check_formulas(&slots, triple)?;
        let dist = ClassDistances::new(&self.lat, triple, &[(0, 1)])?;
        let mut segments = Vec::with_capacity(7);
        for (idx, (ei, fwd)) in self.tpl.side(0).into_iter().enumerate() {
            let ed = &self.tpl.edges[ei];
            let (u, v) = (slots[ed.from.0].as_ref().unwrap(), slots[ed.to.0].as_ref().unwrap());
            let word = self.edge_word(ed, u, v, triple)?;
            let s = Segment {
                edge: ei,
                from: vertices[idx],
                to: vertices[idx + 1],
                label: ed.label,
                word: oriented(&word, fwd),
                bound: ed.bound.clone(),
                bound_value: dist.eval(&ed.bound),
            };
            let (x, y) = (slots[s.from.0].as_ref().unwrap(), slots[s.to.0].as_ref().unwrap());
            self.check_segment(&s, x, y, None)?;
            segments.push(s);
        }
        let values: Vec<ProductElement> = vertices.iter().map(|v| slots[v.0].clone().unwrap()).collect();
        if values[0] != *a || values[7] != *b {
            return fail("spanning path", "endpoints differ from a and b");
        }
        let path = SpanningPath {
            vertices,
            values,
            segments,
            bound6: spanning_bound_expression(&self.lat, a, b)?,
        };
        if path.bound6.exact && path.len() as u64 > path.bound6.value {
            return fail(
                "spanning path",
                format!("length {} exceeds 3d12 + d34 + 2d5 + 3d6 = {}", path.len(), path.bound6.value),
            );
        }
        Ok(path)
    }

    /// `Δ(a, b, c)` with every invariant checked.
    pub fn actualize(&self, a: &ProductElement, b: &ProductElement, c: &ProductElement) -> Result<Actualization> {
        self.check_kernel("a", a)?;
        self.check_kernel("b", b)?;
        self.check_kernel("c", c)?;
        let triple = [a, b, c];
        let mut slots = Vec::with_capacity(36);
        for (i, spec) in self.tpl.specs.iter().enumerate() {
            let v = self.vertex_value(spec, triple)?;
            if !self.lat.instance().in_kernel(&v)? {
                return fail(format!("vertex {}", VertexId(i)), "value outside the kernel");
            }
            slots.push(Some(v));
        }
        self.check_formulas(&slots, triple)?;
        let values: Vec<ProductElement> = slots.into_iter().map(Option::unwrap).collect();
        let dist = ClassDistances::new(&self.lat, triple, &[(0, 1), (1, 2), (2, 0)])?;
        let d = dist.pair(0, 1).add(dist.pair(1, 2)).add(dist.pair(2, 0));
        let four_d = d.exact.then_some(4 * d.value);

        let mut segments = Vec::with_capacity(60);
        for (ei, ed) in self.tpl.edges.iter().enumerate() {
            let (u, v) = (&values[ed.from.0], &values[ed.to.0]);
            let s = Segment {
                edge: ei,
                from: ed.from,
                to: ed.to,
                label: ed.label,
                word: self.edge_word(ed, u, v, triple)?,
                bound: ed.bound.clone(),
                bound_value: dist.eval(&ed.bound),
            };
            self.check_segment(&s, u, v, four_d)?;
            segments.push(s);
        }

        let mut regions = Vec::with_capacity(25);
        for (fi, face) in self.tpl.faces.iter().enumerate() {
            let ctx = || format!("region {}", face.label);
            let boundary = self.tpl.boundary(fi);
            let edge_word: Vec<GenLetter> = boundary
                .iter()
                .flat_map(|&(e, fwd)| oriented(&segments[e].word, fwd))
                .collect();
            let mut word = Vec::with_capacity(edge_word.len());
            for &l in &edge_word {
                match self.lat.express_in(face.label, l)? {
                    Some(w) => word.extend(w),
                    None => return fail(ctx(), format!("edge letter {l} is not expressible in the face group")),
                }
            }
            if let Some(l) = word.iter().find(|l| !self.lat.contains(face.label, **l)) {
                return fail(ctx(), format!("letter {l} outside the face group"));
            }
            if !self.lat.evaluate(&word)?.is_identity() {
                return fail(ctx(), format!("boundary word {} does not close", show(&word)));
            }
            if d.exact && word.len() as u64 > 24 * d.value {
                return fail(ctx(), format!("perimeter {} exceeds 24D = {}", word.len(), 24 * d.value));
            }
            regions.push(RegionLoop {
                face: fi,
                label: face.label,
                cycle: face.cycle.clone(),
                boundary,
                edge_perimeter: edge_word.len(),
                word,
            });
        }

        let act = Actualization {
            triple: [a.clone(), b.clone(), c.clone()],
            values,
            segments,
            regions,
            d,
        };
        let outer: Vec<GenLetter> = (0..3).flat_map(|r| act.side_word(&self.tpl, r)).collect();
        if !self.lat.evaluate(&outer)?.is_identity() {
            return fail("outer boundary", "∂Δ(a,b)·∂Δ(b,c)·∂Δ(c,a) does not close");
        }
        Ok(act)
    }
}
