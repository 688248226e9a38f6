//! The product `G = G_1 × ⋯ × G_{2n}`, the summed map `Φ : G → Z^m`, padded
//! elements and the ℓ¹ metric.
//!
//! Coordinates are 1-based in every public signature.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use kerphi_abelian::{AbelianError, BlockDecomposition, ZVec};
use kerphi_factor::{Distance, Factor, FactorError, Word};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("expected {expected} factors, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("coordinate {i} out of range 1..={two_n}")]
    Index { i: usize, two_n: usize },
    #[error("factor {i} uses a different block decomposition")]
    DecompositionMismatch { i: usize },
    #[error("distance exceeds search budget; best upper bound {upper_bound}")]
    DistanceBudgetExceeded { upper_bound: u64 },
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
}

pub type Result<T> = std::result::Result<T, ProductError>;

/// `2n` factors sharing one block decomposition with `n` blocks.
#[derive(Debug, Clone)]
pub struct Instance {
    dec: Arc<BlockDecomposition>,
    factors: Vec<Arc<Factor>>,
}

impl Instance {
    pub fn new(dec: Arc<BlockDecomposition>, factors: Vec<Arc<Factor>>) -> Result<Self> {
        let expected = 2 * dec.n();
        if factors.len() != expected {
            return Err(ProductError::Shape {
                expected,
                got: factors.len(),
            });
        }
        for (i0, f) in factors.iter().enumerate() {
            if **f.spec().decomposition() != *dec {
                return Err(ProductError::DecompositionMismatch { i: i0 + 1 });
            }
        }
        Ok(Self { dec, factors })
    }

    /// `n` blocks of rank one with `2n` copies of DF(n).
    pub fn doubled_free(n: usize) -> Result<Self> {
        Self::doubled_free_with_budget(n, kerphi_factor::DEFAULT_BFS_BUDGET)
    }

    pub fn doubled_free_with_budget(n: usize, bfs_budget: u32) -> Result<Self> {
        let dec = Arc::new(BlockDecomposition::uniform(n)?);
        let spec = kerphi_factor::FactorSpec::doubled_free(&dec)?;
        let f = Arc::new(Factor::with_budget(spec, bfs_budget)?);
        Self::new(dec, vec![f; 2 * n])
    }

    pub fn decomposition(&self) -> &Arc<BlockDecomposition> {
        &self.dec
    }

    pub fn n(&self) -> usize {
        self.dec.n()
    }

    pub fn two_n(&self) -> usize {
        2 * self.dec.n()
    }

    pub fn factors(&self) -> &[Arc<Factor>] {
        &self.factors
    }

    pub fn factor(&self, i: usize) -> Result<&Factor> {
        self.check_coord(i)?;
        Ok(&self.factors[i - 1])
    }

    pub fn check_coord(&self, i: usize) -> Result<()> {
        if (1..=self.two_n()).contains(&i) {
            Ok(())
        } else {
            Err(ProductError::Index {
                i,
                two_n: self.two_n(),
            })
        }
    }

    /// A lower index reduced mod `2n` into `1..=2n`.
    pub fn reduce_lower(&self, i: i64) -> usize {
        reduce_mod(i, self.two_n())
    }

    /// An upper index reduced mod `n` into `1..=n`.
    pub fn star(&self, j: i64) -> usize {
        reduce_mod(j, self.n())
    }

    pub fn identity(&self) -> ProductElement {
        ProductElement::identity(self.two_n())
    }

    fn check_shape(&self, g: &ProductElement) -> Result<()> {
        if g.entries.len() == self.two_n() {
            Ok(())
        } else {
            Err(ProductError::Shape {
                expected: self.two_n(),
                got: g.entries.len(),
            })
        }
    }

    /// `Φ(g) = Σ_i φ_i(g_i)`.
    pub fn phi(&self, g: &ProductElement) -> Result<ZVec> {
        self.check_shape(g)?;
        let mut acc = ZVec::zero(&self.dec);
        for (f, w) in self.factors.iter().zip(&g.entries) {
            acc = acc.add(&f.spec().evaluate_phi(w)?)?;
        }
        Ok(acc)
    }

    pub fn in_kernel(&self, g: &ProductElement) -> Result<bool> {
        Ok(self.phi(g)?.is_zero())
    }

    /// `Σ_{i∈α} d_i(g_i, h_i)`.
    pub fn restricted_distance<I>(&self, g: &ProductElement, h: &ProductElement, alpha: I) -> Result<Distance>
    where
        I: IntoIterator<Item = usize>,
    {
        self.check_shape(g)?;
        self.check_shape(h)?;
        let mut total = Distance::exact(0);
        let mut overflowed = false;
        for i in alpha {
            self.check_coord(i)?;
            let f = &self.factors[i - 1];
            match f.distance(&g.entries[i - 1], &h.entries[i - 1]) {
                Ok(d) => total = total.add(d),
                Err(FactorError::DistanceBudgetExceeded { upper_bound, .. }) => {
                    overflowed = true;
                    total = total.add(Distance {
                        value: upper_bound as u64,
                        exact: false,
                    });
                }
                Err(e) => return Err(e.into()),
            }
        }
        if overflowed {
            return Err(ProductError::DistanceBudgetExceeded {
                upper_bound: total.value,
            });
        }
        Ok(total)
    }

    pub fn l1_distance(&self, g: &ProductElement, h: &ProductElement) -> Result<Distance> {
        self.restricted_distance(g, h, 1..=self.two_n())
    }
}

fn reduce_mod(i: i64, modulus: usize) -> usize {
    let r = i.rem_euclid(modulus as i64) as usize;
    if r == 0 {
        modulus
    } else {
        r
    }
}

/// A `2n`-tuple of reduced factor words.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductElement {
    entries: Vec<Word>,
}

impl ProductElement {
    pub fn identity(two_n: usize) -> Self {
        Self {
            entries: vec![Word::identity(); two_n],
        }
    }

    pub fn from_entries(entries: Vec<Word>) -> Self {
        Self { entries }
    }

    /// The element with `w` at coordinate `i` and identity elsewhere.
    pub fn single(two_n: usize, i: usize, w: Word) -> Self {
        let mut g = Self::identity(two_n);
        g.entries[i - 1] = w;
        g
    }

    pub fn entries(&self) -> &[Word] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &Word {
        &self.entries[i - 1]
    }

    pub fn set_entry(&mut self, i: usize, w: Word) {
        self.entries[i - 1] = w;
    }

    pub fn two_n(&self) -> usize {
        self.entries.len()
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().all(Word::is_identity)
    }

    /// Total number of letters over all entries.
    pub fn size(&self) -> usize {
        self.entries.iter().map(Word::len).sum()
    }

    pub fn multiply(&self, other: &Self) -> Self {
        assert_eq!(self.two_n(), other.two_n(), "product elements of different arity");
        Self {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }

    pub fn mul_assign(&mut self, other: &Self) {
        assert_eq!(self.two_n(), other.two_n(), "product elements of different arity");
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            a.mul_assign(b);
        }
    }

    pub fn invert(&self) -> Self {
        Self {
            entries: self.entries.iter().map(Word::inverse).collect(),
        }
    }

    /// `g_A`: entries on `A` kept, identity elsewhere.
    pub fn pad<I: IntoIterator<Item = usize>>(&self, support: I) -> Self {
        let mut out = Self::identity(self.two_n());
        for i in support {
            out.entries[i - 1] = self.entries[i - 1].clone();
        }
        out
    }

    /// `a^{-1}_A b_A`.
    pub fn convert<I: IntoIterator<Item = usize>>(a: &Self, b: &Self, support: I) -> Self {
        let mut out = Self::identity(a.two_n());
        for i in support {
            out.entries[i - 1] = a.entries[i - 1].inverse().mul(&b.entries[i - 1]);
        }
        out
    }

    /// Coordinates with non-identity entries.
    pub fn support(&self) -> BTreeSet<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_identity())
            .map(|(i0, _)| i0 + 1)
            .collect()
    }
}

impl fmt::Display for ProductElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, w) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}

/// A source element together with the coordinates it is padded to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaddedSpec {
    pub source: ProductElement,
    pub support: BTreeSet<usize>,
}

impl PaddedSpec {
    pub fn new<I: IntoIterator<Item = usize>>(source: ProductElement, support: I) -> Self {
        Self {
            source,
            support: support.into_iter().collect(),
        }
    }

    pub fn realize(&self) -> ProductElement {
        self.source.pad(self.support.iter().copied())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_reduction() {
        let inst = Instance::doubled_free(3).unwrap();
        assert_eq!(inst.reduce_lower(7), 1);
        assert_eq!(inst.reduce_lower(0), 6);
        assert_eq!(inst.reduce_lower(-1), 5);
        assert_eq!(inst.star(3), 3);
        assert_eq!(inst.star(4), 1);
        assert_eq!(inst.star(0), 3);
    }

    #[test]
    fn phi_cancels_across_coordinates() {
        let inst = Instance::doubled_free(3).unwrap();
        let mut g = inst.identity();
        g.set_entry(1, Word::gen(0));
        g.set_entry(4, Word::gen(0).inverse());
        assert!(inst.phi(&g).unwrap().is_zero());
        assert!(inst.phi(&inst.identity()).unwrap().is_zero());
    }

    #[test]
    fn pad_keeps_the_support() {
        let g = ProductElement::from_entries((0..6).map(Word::gen).collect());
        let p = g.pad([1, 2]);
        assert_eq!(p.entry(1), &Word::gen(0));
        assert_eq!(p.entry(2), &Word::gen(1));
        assert!((3..=6).all(|i| p.entry(i).is_identity()));
        assert_eq!(g.pad(1..=6), g);
        assert_eq!(PaddedSpec::new(g.clone(), [1, 2]).realize(), p);
    }

    #[test]
    fn l1_distance_of_single_entry() {
        let inst = Instance::doubled_free(3).unwrap();
        let g = ProductElement::single(6, 1, Word::gen(3));
        assert_eq!(inst.l1_distance(&g, &inst.identity()).unwrap(), Distance::exact(2));
        assert_eq!(inst.l1_distance(&g, &g).unwrap(), Distance::exact(0));
        assert_eq!(
            inst.restricted_distance(&g, &inst.identity(), []).unwrap(),
            Distance::exact(0)
        );
    }

    #[test]
    fn wrong_factor_count_is_rejected() {
        let inst = Instance::doubled_free(3).unwrap();
        let err = Instance::new(inst.decomposition().clone(), inst.factors()[..5].to_vec()).unwrap_err();
        assert_eq!(err, ProductError::Shape { expected: 6, got: 5 });
    }
}
