use std::fmt;
use std::str::FromStr;

use kerphi_factor::{Invertible, KsGen, Word};
use kerphi_product::{Instance, ProductElement};

use crate::{LatticeError, Result};

/// A vector generator of `Ker(Φ)`. Coordinates and blocks are 1-based; `idx`
/// and `b` index into the factor's `Y` and the block basis, `idx` 0-based and
/// `b` 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// `ȳ` with `y_{idx+1}` of factor `i` in coordinate `i`.
    Y { i: usize, idx: usize },
    /// `z̄ ∈ Z̄^j_{i,k}`: `s^j_i(e_b)` in coordinate `i`, `s^j_k(-e_b)` in `k`.
    Z { j: usize, i: usize, k: usize, b: usize },
}

impl Generator {
    pub fn realize(&self, inst: &Instance) -> Result<ProductElement> {
        let two_n = inst.two_n();
        match *self {
            Generator::Y { i, idx } => {
                let f = inst.factor(i)?;
                let y = f.ks().y().get(idx).ok_or_else(|| {
                    LatticeError::Generator(format!("factor {i} has no kernel generator {}", idx + 1))
                })?;
                Ok(ProductElement::single(two_n, i, y.clone()))
            }
            Generator::Z { j, i, k, b } => {
                if i == k {
                    return Err(LatticeError::Generator(format!("Z({j},{i},{k},{b}) has equal coordinates")));
                }
                let zi = inst.factor(i)?.spec().section(j, b)?.clone();
                let zk = inst.factor(k)?.spec().section(j, b)?.inverse();
                let mut g = ProductElement::single(two_n, i, zi);
                g.set_entry(k, zk);
                Ok(g)
            }
        }
    }

    /// Whether the realization is the identity.
    pub fn is_trivial(&self, inst: &Instance) -> bool {
        match *self {
            Generator::Y { i, idx } => inst
                .factor(i)
                .map(|f| f.ks().is_trivial(idx))
                .unwrap_or(false),
            Generator::Z { .. } => false,
        }
    }

    /// The coordinate of the source entry.
    pub fn source(&self) -> usize {
        match *self {
            Generator::Y { i, .. } | Generator::Z { i, .. } => i,
        }
    }

    /// The factor kernel-section generator carried at the source.
    pub fn source_ks(&self) -> KsGen {
        match *self {
            Generator::Y { idx, .. } => KsGen::Y(idx),
            Generator::Z { j, b, .. } => KsGen::Z { block: j, basis: b },
        }
    }

    pub fn letter(self, inv: bool) -> GenLetter {
        GenLetter { gen: self, inv }
    }
}

/// A signed vector generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenLetter {
    pub gen: Generator,
    pub inv: bool,
}

impl Invertible for GenLetter {
    fn inverse(self) -> Self {
        Self {
            gen: self.gen,
            inv: !self.inv,
        }
    }
}

impl GenLetter {
    pub fn realize(&self, inst: &Instance) -> Result<ProductElement> {
        let g = self.gen.realize(inst)?;
        Ok(if self.inv { g.invert() } else { g })
    }
}

/// Product of a letter sequence.
pub fn evaluate(inst: &Instance, letters: &[GenLetter]) -> Result<ProductElement> {
    let mut acc = inst.identity();
    for l in letters {
        acc.mul_assign(&l.realize(inst)?);
    }
    Ok(acc)
}

impl fmt::Display for GenLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.gen {
            Generator::Y { i, idx } => {
                write!(f, "Y({i},{}", idx + 1)?;
                if self.inv {
                    write!(f, ",-")?;
                }
                write!(f, ")")
            }
            Generator::Z { j, i, k, b } => {
                let sign = if self.inv { '-' } else { '+' };
                write!(f, "Z({j},{i},{k},{b},{sign})")
            }
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter(false))
    }
}

impl FromStr for GenLetter {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || LatticeError::Parse(format!("bad generator token `{s}`"));
        let s = s.trim();
        let (kind, rest) = s.split_at(1.min(s.len()));
        let body = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let parts: Vec<&str> = body.split(',').map(str::trim).collect();
        let num = |p: &str| p.parse::<usize>().ok().filter(|&x| x >= 1).ok_or_else(bad);
        match (kind, parts.as_slice()) {
            ("Y", [i, idx]) => Ok(Generator::Y { i: num(i)?, idx: num(idx)? - 1 }.letter(false)),
            ("Y", [i, idx, "-"]) => Ok(Generator::Y { i: num(i)?, idx: num(idx)? - 1 }.letter(true)),
            ("Z", [j, i, k, b, sign]) => {
                let inv = match *sign {
                    "+" => false,
                    "-" => true,
                    _ => return Err(bad()),
                };
                Ok(Generator::Z {
                    j: num(j)?,
                    i: num(i)?,
                    k: num(k)?,
                    b: num(b)?,
                }
                .letter(inv))
            }
            _ => Err(bad()),
        }
    }
}

/// Entry of `g` at coordinate `i` as a section lift of block `j`, if it is one.
pub(crate) fn lift_of(inst: &Instance, i: usize, j: usize, w: &Word) -> Result<Option<Vec<i64>>> {
    let f = inst.factor(i)?;
    Ok(f.spec().as_section_lift(j, w)?.map(|v| v.coords().to_vec()))
}
