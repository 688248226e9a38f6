use crate::{LatticeError, Result};

/// The six label sequences `α_1, …, α_6` partitioning `{1, …, 2n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelSequences {
    n: usize,
    alpha: [Vec<usize>; 6],
}

/// `c` reduced into `1..=6`.
pub fn class6(c: i64) -> usize {
    let r = c.rem_euclid(6) as usize;
    if r == 0 {
        6
    } else {
        r
    }
}

/// `t` reduced into `1..=3`.
pub fn class3(t: i64) -> usize {
    let r = t.rem_euclid(3) as usize;
    if r == 0 {
        3
    } else {
        r
    }
}

/// The slot class receiving the non-standard lift of block class `t`.
pub fn ns_slot(t: usize) -> usize {
    class6(7 - 2 * t as i64)
}

impl LabelSequences {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(LatticeError::InvalidN(n));
        }
        let bound = |i: usize| (i * n).div_ceil(3);
        let lower: Vec<Vec<usize>> = (1..=3).map(|i| (bound(i - 1) + 1..=bound(i)).collect()).collect();
        let upper: Vec<Vec<usize>> = lower.iter().map(|a| a.iter().map(|j| j + n).collect()).collect();
        let alpha = [
            lower[0].clone(),
            lower[1].clone(),
            lower[2].clone(),
            upper[0].clone(),
            upper[1].clone(),
            upper[2].clone(),
        ];
        Ok(Self { n, alpha })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self, c: usize) -> &[usize] {
        &self.alpha[class6(c as i64) - 1]
    }

    pub fn len(&self, c: usize) -> usize {
        self.alpha(c).len()
    }

    /// Concatenation of the given classes in the order listed.
    pub fn union(&self, classes: &[usize]) -> Vec<usize> {
        classes.iter().flat_map(|&c| self.alpha(c).iter().copied()).collect()
    }

    /// Coordinates outside the given classes, in increasing order.
    pub fn complement(&self, classes: &[usize]) -> Vec<usize> {
        let inside = self.union(classes);
        (1..=2 * self.n).filter(|c| !inside.contains(c)).collect()
    }

    pub fn class_of(&self, coord: usize) -> usize {
        (1..=6)
            .find(|&c| self.alpha(c).contains(&coord))
            .expect("coordinate out of range")
    }

    /// The class in `1..=3` of block `j`.
    pub fn block_class(&self, j: usize) -> usize {
        self.class_of(j)
    }

    /// `j*`: the block standardly lifted into coordinate `coord`.
    pub fn star(&self, coord: usize) -> usize {
        let r = coord % self.n;
        if r == 0 {
            self.n
        } else {
            r
        }
    }

    /// Coordinate of block `j` in slot class `s ∈ {t, t+3}`.
    pub fn std_coord(&self, j: usize, s: usize) -> usize {
        if s <= 3 {
            j
        } else {
            j + self.n
        }
    }

    /// Coordinates receiving the non-standard lift of class `t`, in block order.
    pub fn ns_coords(&self, t: usize) -> Vec<usize> {
        let s = ns_slot(t);
        let mut merged = self.union(&[s, s + 1]);
        merged.truncate(self.len(t));
        merged
    }

    /// Coordinate receiving the non-standard lift of block `j`.
    pub fn ns_coord(&self, j: usize) -> usize {
        let t = self.block_class(j);
        let k = self.alpha(t).iter().position(|&x| x == j).expect("block in its class");
        self.ns_coords(t)[k]
    }
}
