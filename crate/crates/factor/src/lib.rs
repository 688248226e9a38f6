//! Factor groups `G_i` given by free groups with an n-split epimorphism
//! `φ_i : G_i → Z^m`, their kernel-section generating sets and word metrics.

mod ks;
mod oracle;
mod spec;
mod word;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use kerphi_abelian::AbelianError;
use thiserror::Error;

pub use ks::{build_kernel_section_gens, KernelSectionGenSet, KsGen, KsLetter, KsWord};
pub use spec::FactorSpec;
pub use word::{FreeWord, Invertible, Letter, Word};

pub const DEFAULT_BFS_BUDGET: u32 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("section lift of basis element {basis} of block {block} does not project back to it")]
    SpecInvalid { block: usize, basis: usize },
    #[error("section lifts of block {block} do not commute")]
    SectionsNotCommuting { block: usize },
    #[error("generator x{gen} out of range for a factor with {p} generators")]
    GeneratorOutOfRange { gen: usize, p: usize },
    #[error("shape error: {0}")]
    Shape(String),
    #[error("distance exceeds search budget {budget}; best upper bound {upper_bound}")]
    DistanceBudgetExceeded { budget: u32, upper_bound: usize },
    #[error("kernel-section generating set is not a free basis")]
    UnsupportedRewrite,
    #[error(transparent)]
    Abelian(#[from] AbelianError),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, FactorError>;

/// A distance value together with whether it is known to be geodesic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Distance {
    pub value: u64,
    pub exact: bool,
}

impl Distance {
    pub fn exact(value: u64) -> Self {
        Self { value, exact: true }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            exact: self.exact && other.exact,
        }
    }
}

/// A factor spec with its kernel-section generating set and distance oracles.
///
/// The canonical alphabet lists the distinct non-identity kernel-section
/// elements up to inversion; it is a free basis exactly when its size equals
/// the rank of the factor.
#[derive(Debug)]
pub struct Factor {
    spec: FactorSpec,
    ks: KernelSectionGenSet,
    alphabet: Vec<KsGen>,
    canonical: HashMap<KsGen, Option<KsLetter>>,
    free_basis: bool,
    bfs_budget: u32,
    ball: OnceLock<oracle::Ball>,
}

impl Factor {
    pub fn new(spec: FactorSpec) -> Result<Self> {
        Self::with_budget(spec, DEFAULT_BFS_BUDGET)
    }

    pub fn with_budget(spec: FactorSpec, bfs_budget: u32) -> Result<Self> {
        let ks = build_kernel_section_gens(&spec)?;
        let mut gens = ks.generators();
        gens.sort_by_key(|g| matches!(g, KsGen::Y(_)));
        let mut alphabet: Vec<KsGen> = Vec::new();
        let mut canonical = HashMap::new();
        for g in gens {
            let w = ks.element(g);
            if w.is_identity() {
                canonical.insert(g, None);
                continue;
            }
            let winv = w.inverse();
            let hit = alphabet.iter().find_map(|&a| {
                let e = ks.element(a);
                if e == w {
                    Some(KsLetter::new(a, false))
                } else if *e == winv {
                    Some(KsLetter::new(a, true))
                } else {
                    None
                }
            });
            match hit {
                Some(l) => {
                    canonical.insert(g, Some(l));
                }
                None => {
                    alphabet.push(g);
                    canonical.insert(g, Some(KsLetter::new(g, false)));
                }
            }
        }
        let free_basis = alphabet.len() == spec.generator_count();
        Ok(Self {
            spec,
            ks,
            alphabet,
            canonical,
            free_basis,
            bfs_budget,
            ball: OnceLock::new(),
        })
    }

    pub fn doubled_free(dec: &Arc<kerphi_abelian::BlockDecomposition>) -> Result<Self> {
        Self::new(FactorSpec::doubled_free(dec)?)
    }

    pub fn spec(&self) -> &FactorSpec {
        &self.spec
    }

    pub fn ks(&self) -> &KernelSectionGenSet {
        &self.ks
    }

    /// Distinct non-identity kernel-section generators, `Z` before `Y`.
    pub fn alphabet(&self) -> &[KsGen] {
        &self.alphabet
    }

    pub fn is_free_basis(&self) -> bool {
        self.free_basis
    }

    pub fn bfs_budget(&self) -> u32 {
        self.bfs_budget
    }

    /// The alphabet letter representing `g`, or `None` for identity elements.
    pub fn canonical_letter(&self, l: KsLetter) -> Option<KsLetter> {
        self.canonical[&l.gen].map(|c| if l.inv { c.inverse() } else { c })
    }

    /// A word over kernel-section letters equal to `w`, before any geodesic
    /// guarantee: each letter is replaced by its reconstruction.
    pub fn substitute(&self, w: &Word) -> Result<KsWord> {
        let mut out = KsWord::identity();
        for l in w.letters() {
            if l.gen >= self.spec.generator_count() {
                return Err(FactorError::GeneratorOutOfRange {
                    gen: l.gen + 1,
                    p: self.spec.generator_count(),
                });
            }
            let r = self.ks.reconstruction(&self.spec, l.gen)?;
            let r = if l.inv { r.inverse() } else { r };
            for &k in r.letters() {
                if let Some(c) = self.canonical_letter(k) {
                    out.push(c);
                }
            }
        }
        Ok(out)
    }

    /// The unique reduced word over the kernel-section basis equal to `w`;
    /// its length is the geodesic distance from `e` to `w`.
    pub fn rewrite_to_ks_basis(&self, w: &Word) -> Result<KsWord> {
        if !self.free_basis {
            return Err(FactorError::UnsupportedRewrite);
        }
        self.substitute(w)
    }

    /// Word length of `w` with respect to the kernel-section generating set.
    pub fn norm(&self, w: &Word) -> Result<Distance> {
        if self.free_basis {
            return Ok(Distance::exact(self.rewrite_to_ks_basis(w)?.len() as u64));
        }
        self.bfs_norm(w)
    }

    pub fn distance(&self, a: &Word, b: &Word) -> Result<Distance> {
        self.norm(&a.inverse().mul(b))
    }

    /// Meet-in-the-middle breadth-first search bounded by the budget.
    pub fn bfs_norm(&self, w: &Word) -> Result<Distance> {
        let ball = self
            .ball
            .get_or_init(|| oracle::Ball::new(&self.alphabet_words(), self.bfs_budget.div_ceil(2)));
        match ball.search(w, &self.alphabet_words(), self.bfs_budget) {
            Some(d) => Ok(Distance::exact(u64::from(d))),
            None => Err(FactorError::DistanceBudgetExceeded {
                budget: self.bfs_budget,
                upper_bound: self.substitute(w)?.len(),
            }),
        }
    }

    pub fn bfs_distance(&self, a: &Word, b: &Word) -> Result<Distance> {
        self.bfs_norm(&a.inverse().mul(b))
    }

    fn alphabet_words(&self) -> Vec<Word> {
        let mut out = Vec::with_capacity(2 * self.alphabet.len());
        for &g in &self.alphabet {
            let w = self.ks.element(g);
            out.push(w.clone());
            out.push(w.inverse());
        }
        out
    }
}
