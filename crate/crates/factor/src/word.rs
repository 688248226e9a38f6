use std::fmt;
use std::str::FromStr;

use crate::FactorError;

/// Letters of a free monoid with formal inverses.
pub trait Invertible: Copy + Eq {
    fn inverse(self) -> Self;
}

/// A freely reduced word: no letter is ever adjacent to its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord<L> {
    letters: Vec<L>,
}

impl<L> Default for FreeWord<L> {
    fn default() -> Self {
        Self {
            letters: Vec::new(),
        }
    }
}

impl<L: Invertible> FreeWord<L> {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_letters<I: IntoIterator<Item = L>>(letters: I) -> Self {
        let mut w = Self::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn letter(l: L) -> Self {
        Self { letters: vec![l] }
    }

    pub fn letters(&self) -> &[L] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Right-multiplies by one letter, cancelling if needed.
    pub fn push(&mut self, l: L) {
        if self.letters.last() == Some(&l.inverse()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut w = self.clone();
        w.mul_assign(other);
        w
    }

    pub fn mul_assign(&mut self, other: &Self) {
        for &l in &other.letters {
            self.push(l);
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = Self::identity();
        for _ in 0..k.unsigned_abs() {
            w.mul_assign(&base);
        }
        w
    }
}

/// A generator of a free factor group, 0-based internally.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: usize, inv: bool) -> Self {
        Self { gen, inv }
    }
}

impl Invertible for Letter {
    fn inverse(self) -> Self {
        Self {
            gen: self.gen,
            inv: !self.inv,
        }
    }
}

pub type Word = FreeWord<Letter>;

impl Word {
    /// The single generator `x_{gen+1}`.
    pub fn gen(gen: usize) -> Self {
        Self::letter(Letter::new(gen, false))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inv {
            write!(f, "x{}^-1", self.gen + 1)
        } else {
            write!(f, "x{}", self.gen + 1)
        }
    }
}

impl<L: Invertible + fmt::Display> fmt::Display for FreeWord<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "e");
        }
        for (idx, l) in self.letters().iter().enumerate() {
            if idx > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Parses whitespace-separated tokens `x3` / `x3^-1`; `e` or blank is the identity.
impl FromStr for Word {
    type Err = FactorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut w = Word::identity();
        for tok in s.split_whitespace() {
            if tok == "e" {
                continue;
            }
            let (body, inv) = match tok.strip_suffix("^-1") {
                Some(b) => (b, true),
                None => (tok, false),
            };
            let idx = body
                .strip_prefix('x')
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|&i| i >= 1)
                .ok_or_else(|| FactorError::Parse(format!("bad letter token `{tok}`")))?;
            w.push(Letter::new(idx - 1, inv));
        }
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_cancels_adjacent_inverses() {
        let w: Word = "x1 x2 x2^-1 x3".parse().unwrap();
        assert_eq!(w.to_string(), "x1 x3");
        assert!(w.mul(&w.inverse()).is_identity());
    }

    #[test]
    fn powers() {
        let w: Word = "x1 x2".parse().unwrap();
        assert_eq!(w.pow(2).to_string(), "x1 x2 x1 x2");
        assert_eq!(w.pow(-1), w.inverse());
        assert!(w.pow(0).is_identity());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("y1".parse::<Word>().is_err());
        assert!("x0".parse::<Word>().is_err());
        assert_eq!("e".parse::<Word>().unwrap(), Word::identity());
    }
}
