use std::fmt;
use std::str::FromStr;

use kerphi_lattice::{GenLetter, Generator, Lattice};
use kerphi_product::ProductElement;
use kerphi_triangle::Triangle;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{FillerError, Result};

/// A loop in the Cayley graph of the kernel based at the identity. `None`
/// steps are constant-path stays.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct KernelLoop {
    pub steps: Vec<Option<GenLetter>>,
}

impl KernelLoop {
    pub fn new(letters: Vec<GenLetter>) -> Self {
        Self {
            steps: letters.into_iter().map(Some).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The non-stay letters.
    pub fn letters(&self) -> Vec<GenLetter> {
        self.steps.iter().flatten().copied().collect()
    }

    /// Prefix values `p_0 = e, …, p_len`.
    pub fn prefixes(&self, lat: &Lattice) -> Result<Vec<ProductElement>> {
        let mut acc = lat.instance().identity();
        let mut out = Vec::with_capacity(self.len() + 1);
        out.push(acc.clone());
        for s in &self.steps {
            if let Some(l) = s {
                acc.mul_assign(&lat.realize_letter(*l)?);
            }
            out.push(acc.clone());
        }
        Ok(out)
    }

    /// Every letter lies in `X̄` and the loop closes.
    pub fn validate(&self, lat: &Lattice) -> Result<()> {
        let xbar = lat.xbar();
        for (t, l) in self.steps.iter().enumerate() {
            if let Some(l) = l {
                if xbar.binary_search(&l.gen).is_err() {
                    return Err(FillerError::Loop(format!("step {t}: {l} is not in the generating set")));
                }
            }
        }
        let end = lat.evaluate(&self.letters())?;
        if !end.is_identity() {
            return Err(FillerError::Loop(format!("loop does not close: ends at {end}")));
        }
        Ok(())
    }
}

impl fmt::Display for KernelLoop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            match s {
                Some(l) => writeln!(f, "{l}")?,
                None => writeln!(f, "e")?,
            }
        }
        Ok(())
    }
}

/// One token per line; `e` is a stay, `#` starts a comment.
impl FromStr for KernelLoop {
    type Err = FillerError;

    fn from_str(s: &str) -> Result<Self> {
        let mut steps = Vec::new();
        for (no, line) in s.lines().enumerate() {
            let tok = line.split('#').next().unwrap_or("").trim();
            if tok.is_empty() {
                continue;
            }
            if tok == "e" {
                steps.push(None);
            } else {
                let l: GenLetter = tok
                    .parse()
                    .map_err(|e| FillerError::Loop(format!("line {}: {e}", no + 1)))?;
                steps.push(Some(l));
            }
        }
        Ok(Self { steps })
    }
}

/// Smallest `k` with `3·2^k ≥ len`, and the loop padded with stays to `3·2^k`.
pub fn pad_loop(l: &KernelLoop) -> Result<(KernelLoop, u32)> {
    if l.len() < 3 {
        return Err(FillerError::Loop(format!("length {} is below 3", l.len())));
    }
    let mut k = 0u32;
    while 3usize << k < l.len() {
        k += 1;
    }
    let mut padded = l.clone();
    padded.steps.resize(3usize << k, None);
    Ok((padded, k))
}

/// Random word over `X̄` closed by a spanning path back to the identity,
/// of length at most `target` (stays pad it to at least 3).
pub fn random_kernel_loop(tri: &Triangle, target: usize, seed: u64) -> Result<KernelLoop> {
    if target < 3 {
        return Err(FillerError::Loop(format!("target {target} is below 3")));
    }
    let lat = tri.lattice();
    let inst = lat.instance();
    let xbar: Vec<Generator> = lat.xbar().into_iter().filter(|g| !g.is_trivial(inst)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e = inst.identity();
    let mut wlen = (target - 3) / 2;
    let mut out = None;
    for _ in 0..64 {
        let mut w: Vec<GenLetter> = Vec::with_capacity(wlen);
        while w.len() < wlen {
            let l = xbar[rng.gen_range(0..xbar.len())].letter(rng.gen_bool(0.5));
            if w.last().is_some_and(|p| p.gen == l.gen && p.inv != l.inv) {
                continue;
            }
            w.push(l);
        }
        let end = lat.evaluate(&w)?;
        let close = tri.spanning_path(&end, &e)?.word();
        if w.len() + close.len() <= target {
            w.extend(close);
            out = Some(w);
            break;
        }
        wlen = wlen * 3 / 4;
    }
    let mut l = KernelLoop::new(out.unwrap_or_default());
    if l.len() < 3 {
        l.steps.resize(3, None);
    }
    Ok(l)
}
