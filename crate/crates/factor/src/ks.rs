use std::fmt;

use crate::spec::FactorSpec;
use crate::word::{FreeWord, Invertible, Word};
use crate::Result;

/// A kernel-section generator of one factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KsGen {
    /// `y_{idx+1}`, 0-based index into `Y`.
    Y(usize),
    /// `s^block(e_basis)`, both 1-based.
    Z { block: usize, basis: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KsLetter {
    pub gen: KsGen,
    pub inv: bool,
}

impl KsLetter {
    pub fn new(gen: KsGen, inv: bool) -> Self {
        Self { gen, inv }
    }
}

impl Invertible for KsLetter {
    fn inverse(self) -> Self {
        Self {
            gen: self.gen,
            inv: !self.inv,
        }
    }
}

pub type KsWord = FreeWord<KsLetter>;

impl fmt::Display for KsLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.gen {
            KsGen::Y(i) => write!(f, "y{}", i + 1)?,
            KsGen::Z { block, basis } => write!(f, "z{block}.{basis}")?,
        }
        if self.inv {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

/// `Y ⊔ Z^1 ⊔ … ⊔ Z^n` for one factor.
///
/// `y[i]` is `a_i · s^1(pr_1 φ(a_i))^{-1} ⋯ s^n(pr_n φ(a_i))^{-1}`; identity
/// elements are retained and flagged in `trivial`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelSectionGenSet {
    y: Vec<Word>,
    trivial: Vec<bool>,
    z: Vec<Vec<Word>>,
}

pub fn build_kernel_section_gens(spec: &FactorSpec) -> Result<KernelSectionGenSet> {
    spec.validate()?;
    let n = spec.decomposition().n();
    let mut y = Vec::with_capacity(spec.generator_count());
    for g in 0..spec.generator_count() {
        let phi = &spec.phi_images()[g];
        let mut w = Word::gen(g);
        for j in 1..=n {
            w.mul_assign(&spec.lift_block_of(j, phi)?.inverse());
        }
        y.push(w);
    }
    let trivial = y.iter().map(Word::is_identity).collect();
    Ok(KernelSectionGenSet {
        y,
        trivial,
        z: spec.section_table().to_vec(),
    })
}

impl KernelSectionGenSet {
    pub fn y(&self) -> &[Word] {
        &self.y
    }

    pub fn is_trivial(&self, idx: usize) -> bool {
        self.trivial[idx]
    }

    pub fn z(&self) -> &[Vec<Word>] {
        &self.z
    }

    /// All generators in a fixed order: `Y` first, then `Z^1 … Z^n`.
    pub fn generators(&self) -> Vec<KsGen> {
        let mut out: Vec<KsGen> = (0..self.y.len()).map(KsGen::Y).collect();
        for (j0, row) in self.z.iter().enumerate() {
            for b0 in 0..row.len() {
                out.push(KsGen::Z {
                    block: j0 + 1,
                    basis: b0 + 1,
                });
            }
        }
        out
    }

    pub fn element(&self, g: KsGen) -> &Word {
        match g {
            KsGen::Y(i) => &self.y[i],
            KsGen::Z { block, basis } => &self.z[block - 1][basis - 1],
        }
    }

    pub fn evaluate(&self, w: &KsWord) -> Word {
        let mut out = Word::identity();
        for l in w.letters() {
            let e = self.element(l.gen);
            if l.inv {
                out.mul_assign(&e.inverse());
            } else {
                out.mul_assign(e);
            }
        }
        out
    }

    /// `y_g · s^n(pr_n φ(a_g)) ⋯ s^1(pr_1 φ(a_g))`, which evaluates to `a_g`.
    pub fn reconstruction(&self, spec: &FactorSpec, g: usize) -> Result<KsWord> {
        let phi = &spec.phi_images()[g];
        let mut w = KsWord::letter(KsLetter::new(KsGen::Y(g), false));
        for j in (1..=spec.decomposition().n()).rev() {
            let v = phi.project_block(j)?;
            for (b0, &x) in v.coords().iter().enumerate() {
                let l = KsLetter::new(
                    KsGen::Z {
                        block: j,
                        basis: b0 + 1,
                    },
                    x < 0,
                );
                for _ in 0..x.unsigned_abs() {
                    w.push(l);
                }
            }
        }
        Ok(w)
    }
}
