//! Exact integer arithmetic in `Z^m` carrying a fixed decomposition
//! `A_1 ⊕ … ⊕ A_n` into non-trivial free-abelian blocks.
//!
//! Block indices are 1-based at the API boundary. Every block uses the
//! standard coordinate basis, so a basis element of `A_j` is a unit vector
//! inside that block's coordinate range.

use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbelianError {
    #[error("invalid block decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("block index {j} out of range 1..={n}")]
    BlockIndex { j: usize, n: usize },
    #[error("expected {expected} coordinates, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("vectors belong to different block decompositions")]
    DecompositionMismatch,
    #[error("integer overflow in Z^m arithmetic")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, AbelianError>;

/// A decomposition of `Z^m` into `n ≥ 3` consecutive coordinate blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockDecomposition {
    m: usize,
    sizes: Vec<usize>,
    offsets: Vec<usize>,
}

impl BlockDecomposition {
    pub fn new(block_sizes: Vec<usize>) -> Result<Self> {
        let n = block_sizes.len();
        if n < 3 {
            return Err(AbelianError::InvalidDecomposition(format!(
                "need at least 3 blocks, got {n}"
            )));
        }
        if let Some(j) = block_sizes.iter().position(|&s| s == 0) {
            return Err(AbelianError::InvalidDecomposition(format!(
                "block {} is empty",
                j + 1
            )));
        }
        let mut offsets = Vec::with_capacity(n);
        let mut m = 0usize;
        for &s in &block_sizes {
            offsets.push(m);
            m += s;
        }
        Ok(Self {
            m,
            sizes: block_sizes,
            offsets,
        })
    }

    /// `n` blocks of rank one, so `m = n`.
    pub fn uniform(n: usize) -> Result<Self> {
        Self::new(vec![1; n])
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.sizes.len()
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn block_offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn check_block(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.n() {
            Err(AbelianError::BlockIndex { j, n: self.n() })
        } else {
            Ok(())
        }
    }

    pub fn block_size(&self, j: usize) -> Result<usize> {
        self.check_block(j)?;
        Ok(self.sizes[j - 1])
    }

    /// 0-based coordinate range of block `j`.
    pub fn block_range(&self, j: usize) -> Result<Range<usize>> {
        self.check_block(j)?;
        let start = self.offsets[j - 1];
        Ok(start..start + self.sizes[j - 1])
    }

    /// Block containing the 0-based coordinate `c`.
    pub fn block_of_coord(&self, c: usize) -> Option<usize> {
        if c >= self.m {
            return None;
        }
        Some(self.offsets.partition_point(|&o| o <= c))
    }
}

/// An element of `Z^m` tied to its decomposition.
#[derive(Debug, Clone)]
pub struct ZVec {
    coords: Vec<i64>,
    dec: Arc<BlockDecomposition>,
}

impl PartialEq for ZVec {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && same_decomposition(&self.dec, &other.dec)
    }
}

impl Eq for ZVec {}

fn same_decomposition(a: &Arc<BlockDecomposition>, b: &Arc<BlockDecomposition>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl ZVec {
    pub fn zero(dec: &Arc<BlockDecomposition>) -> Self {
        Self {
            coords: vec![0; dec.m()],
            dec: Arc::clone(dec),
        }
    }

    pub fn from_coords(dec: &Arc<BlockDecomposition>, coords: Vec<i64>) -> Result<Self> {
        if coords.len() != dec.m() {
            return Err(AbelianError::LengthMismatch {
                expected: dec.m(),
                got: coords.len(),
            });
        }
        Ok(Self {
            coords,
            dec: Arc::clone(dec),
        })
    }

    /// The unit vector for basis element `b` (1-based) of block `j`.
    pub fn basis(dec: &Arc<BlockDecomposition>, j: usize, b: usize) -> Result<Self> {
        let range = dec.block_range(j)?;
        if b == 0 || b > range.len() {
            return Err(AbelianError::LengthMismatch {
                expected: range.len(),
                got: b,
            });
        }
        let mut v = Self::zero(dec);
        v.coords[range.start + b - 1] = 1;
        Ok(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn decomposition(&self) -> &Arc<BlockDecomposition> {
        &self.dec
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }

    /// ℓ¹ norm of the coordinates.
    pub fn l1_norm(&self) -> Result<u64> {
        self.coords.iter().try_fold(0u64, |acc, &x| {
            acc.checked_add(x.unsigned_abs()).ok_or(AbelianError::Overflow)
        })
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if same_decomposition(&self.dec, &other.dec) {
            Ok(())
        } else {
            Err(AbelianError::DecompositionMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.checked_add(*b).ok_or(AbelianError::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            coords,
            dec: Arc::clone(&self.dec),
        })
    }

    pub fn neg(&self) -> Result<Self> {
        let coords = self
            .coords
            .iter()
            .map(|a| a.checked_neg().ok_or(AbelianError::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            coords,
            dec: Arc::clone(&self.dec),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg()?)
    }

    pub fn scale(&self, k: i64) -> Result<Self> {
        let coords = self
            .coords
            .iter()
            .map(|a| a.checked_mul(k).ok_or(AbelianError::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            coords,
            dec: Arc::clone(&self.dec),
        })
    }

    /// `pr^L_j`: the coordinates of `self` lying in block `j`.
    pub fn project_block(&self, j: usize) -> Result<BlockVec> {
        let range = self.dec.block_range(j)?;
        Ok(BlockVec {
            block: j,
            coords: self.coords[range].to_vec(),
        })
    }

    /// Zero outside block `b.block()`, equal to `b` inside.
    pub fn embed_block(dec: &Arc<BlockDecomposition>, b: &BlockVec) -> Result<Self> {
        let range = dec.block_range(b.block)?;
        if range.len() != b.coords.len() {
            return Err(AbelianError::LengthMismatch {
                expected: range.len(),
                got: b.coords.len(),
            });
        }
        let mut v = Self::zero(dec);
        v.coords[range].copy_from_slice(&b.coords);
        Ok(v)
    }
}

impl fmt::Display for ZVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (idx, x) in self.coords.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// An element of a single block `A_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockVec {
    block: usize,
    coords: Vec<i64>,
}

impl BlockVec {
    pub fn new(dec: &BlockDecomposition, block: usize, coords: Vec<i64>) -> Result<Self> {
        let size = dec.block_size(block)?;
        if size != coords.len() {
            return Err(AbelianError::LengthMismatch {
                expected: size,
                got: coords.len(),
            });
        }
        Ok(Self { block, coords })
    }

    pub fn block(&self) -> usize {
        self.block
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.block != other.block || self.coords.len() != other.coords.len() {
            return Err(AbelianError::DecompositionMismatch);
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.checked_add(*b).ok_or(AbelianError::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            block: self.block,
            coords,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dec(sizes: &[usize]) -> Arc<BlockDecomposition> {
        Arc::new(BlockDecomposition::new(sizes.to_vec()).unwrap())
    }

    #[test]
    fn rejects_fewer_than_three_blocks() {
        assert!(BlockDecomposition::new(vec![1, 1]).is_err());
        assert!(BlockDecomposition::new(vec![2]).is_err());
        assert!(BlockDecomposition::new(vec![1, 0, 1]).is_err());
    }

    #[test]
    fn offsets_are_prefix_sums() {
        let d = BlockDecomposition::new(vec![2, 1, 3]).unwrap();
        assert_eq!(d.m(), 6);
        assert_eq!(d.block_offsets(), &[0, 2, 3]);
        assert_eq!(d.block_range(3).unwrap(), 3..6);
        assert_eq!(d.block_of_coord(0), Some(1));
        assert_eq!(d.block_of_coord(2), Some(2));
        assert_eq!(d.block_of_coord(5), Some(3));
        assert_eq!(d.block_of_coord(6), None);
    }

    #[test]
    fn project_block_examples() {
        let d = dec(&[1, 1, 1]);
        let v = ZVec::from_coords(&d, vec![2, -1, 4]).unwrap();
        assert_eq!(v.project_block(2).unwrap().coords(), &[-1]);
        let d = dec(&[2, 1, 1]);
        let v = ZVec::from_coords(&d, vec![1, 2, 3, 4]).unwrap();
        assert_eq!(v.project_block(1).unwrap().coords(), &[1, 2]);
        assert!(matches!(
            v.project_block(4),
            Err(AbelianError::BlockIndex { j: 4, n: 3 })
        ));
    }

    #[test]
    fn embed_block_examples() {
        let d = dec(&[1, 1, 1]);
        let b = BlockVec::new(&d, 3, vec![5]).unwrap();
        assert_eq!(ZVec::embed_block(&d, &b).unwrap().coords(), &[0, 0, 5]);
        let d = dec(&[2, 1, 1]);
        let b = BlockVec::new(&d, 1, vec![1, -1]).unwrap();
        assert_eq!(ZVec::embed_block(&d, &b).unwrap().coords(), &[1, -1, 0, 0]);
    }

    #[test]
    fn add_and_neg_examples() {
        let d = dec(&[1, 1, 1]);
        let u = ZVec::from_coords(&d, vec![1, 2, 3]).unwrap();
        let v = ZVec::from_coords(&d, vec![0, -2, 1]).unwrap();
        assert_eq!(u.add(&v).unwrap().coords(), &[1, 0, 4]);
        assert!(u.add(&u.neg().unwrap()).unwrap().is_zero());
    }

    #[test]
    fn mismatched_decompositions_are_rejected() {
        let u = ZVec::zero(&dec(&[1, 1, 1]));
        let v = ZVec::zero(&dec(&[1, 1, 1, 1]));
        assert_eq!(u.add(&v), Err(AbelianError::DecompositionMismatch));
    }

    #[test]
    fn overflow_is_an_error() {
        let d = dec(&[1, 1, 1]);
        let u = ZVec::from_coords(&d, vec![i64::MAX, 0, 0]).unwrap();
        let one = ZVec::basis(&d, 1, 1).unwrap();
        assert_eq!(u.add(&one), Err(AbelianError::Overflow));
        let low = ZVec::from_coords(&d, vec![i64::MIN, 0, 0]).unwrap();
        assert_eq!(low.neg(), Err(AbelianError::Overflow));
    }
}
