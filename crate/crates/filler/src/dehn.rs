use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::{FillerError, Result};

/// An isoperimetric model `n ↦ δ(n)`.
#[derive(Clone)]
pub enum DehnKind {
    /// `n²`.
    Quadratic,
    /// `n^d`.
    Polynomial(u32),
    /// `values[i] = δ(i)`; arguments past the end are errors.
    Table(Arc<Vec<u128>>),
    User(Arc<dyn Fn(u64) -> u128 + Send + Sync>),
}

impl fmt::Debug for DehnKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DehnKind::Quadratic => write!(f, "Quadratic"),
            DehnKind::Polynomial(d) => write!(f, "Polynomial({d})"),
            DehnKind::Table(t) => write!(f, "Table(len {})", t.len()),
            DehnKind::User(_) => write!(f, "User"),
        }
    }
}

/// A Dehn model together with the asserted superadditivity of `δ(n)/n`.
#[derive(Debug, Clone)]
pub struct DehnModel {
    pub kind: DehnKind,
    pub superadditive: bool,
}

impl DehnModel {
    pub fn quadratic() -> Self {
        Self {
            kind: DehnKind::Quadratic,
            superadditive: true,
        }
    }

    /// `n^d`; `δ(n)/n = n^{d-1}` is superadditive for `d ≥ 2`.
    pub fn polynomial(d: u32) -> Self {
        Self {
            kind: DehnKind::Polynomial(d),
            superadditive: d >= 2,
        }
    }

    pub fn table(values: Vec<u128>, superadditive: bool) -> Self {
        Self {
            kind: DehnKind::Table(Arc::new(values)),
            superadditive,
        }
    }

    pub fn user(f: impl Fn(u64) -> u128 + Send + Sync + 'static, superadditive: bool) -> Self {
        Self {
            kind: DehnKind::User(Arc::new(f)),
            superadditive,
        }
    }

    pub fn name(&self) -> String {
        match &self.kind {
            DehnKind::Quadratic => "quadratic".into(),
            DehnKind::Polynomial(d) => format!("polynomial({d})"),
            DehnKind::Table(t) => format!("table[0..{}]", t.len()),
            DehnKind::User(_) => "user".into(),
        }
    }

    pub fn eval(&self, n: u64) -> Result<u128> {
        match &self.kind {
            DehnKind::Quadratic => Ok((n as u128).saturating_mul(n as u128)),
            DehnKind::Polynomial(d) => Ok((n as u128).saturating_pow(*d)),
            DehnKind::Table(t) => t
                .get(n as usize)
                .copied()
                .ok_or_else(|| FillerError::Dehn(format!("table has no value at {n} (length {})", t.len()))),
            DehnKind::User(f) => Ok(f(n)),
        }
    }

    /// `δ(0), …, δ(n)`.
    pub fn values(&self, n: u64) -> Result<Vec<u128>> {
        (0..=n).map(|x| self.eval(x)).collect()
    }

    /// `δ̄(n)`, the superadditive closure at `n`.
    pub fn closure_at(&self, n: u64) -> Result<u128> {
        if n == 0 {
            return self.eval(0);
        }
        let f: Vec<u128> = (1..=n).map(|x| self.eval(x)).collect::<Result<_>>()?;
        Ok(*superadditive_closure(&f).last().unwrap())
    }

    /// `δ(n)/n` superadditive on `1..=n_max`, checked exactly by cross-multiplying.
    pub fn check_superadditive_ratio(&self, n_max: u64) -> Result<bool> {
        let v = self.values(n_max)?;
        for a in 1..n_max {
            for b in a..=n_max - a {
                let s = a + b;
                // v[s]/s ≥ v[a]/a + v[b]/b
                let lhs = v[s as usize].saturating_mul((a * b) as u128);
                let rhs = v[a as usize]
                    .saturating_mul((b * s) as u128)
                    .saturating_add(v[b as usize].saturating_mul((a * s) as u128));
                if lhs < rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `f̄` on `1..=N` from `f[i] = f(i+1)`: `f̄(n) = max(f(n), max_{i<n} f̄(i) + f̄(n−i))`.
pub fn superadditive_closure(f: &[u128]) -> Vec<u128> {
    let mut out: Vec<u128> = Vec::with_capacity(f.len());
    for n in 1..=f.len() {
        let mut best = f[n - 1];
        for i in 1..=n / 2 {
            best = best.max(out[i - 1].saturating_add(out[n - i - 1]));
        }
        out.push(best);
    }
    out
}

/// Result of a finite-range domination search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Dominance {
    /// Smallest witnessing constant, if any up to `c_max`.
    pub c: Option<u64>,
    pub c_max: u64,
    pub n_max: u64,
    /// Always true: a finite range cannot establish asymptotic domination.
    pub heuristic: bool,
}

/// Smallest `C ≤ c_max` with `f(n) ≤ C·g(Cn + C) + Cn + C` for all `1 ≤ n ≤ n_max`.
pub fn dominance_check(
    f: impl Fn(u64) -> u128,
    g: impl Fn(u64) -> u128,
    c_max: u64,
    n_max: u64,
) -> Dominance {
    let c = (1..=c_max).find(|&c| {
        (1..=n_max).all(|n| {
            let rhs = (c as u128)
                .saturating_mul(g(c * n + c))
                .saturating_add((c * n + c) as u128);
            f(n) <= rhs
        })
    });
    Dominance {
        c,
        c_max,
        n_max,
        heuristic: true,
    }
}

/// Domination both ways on a finite range.
pub fn equivalence_check(
    f: impl Fn(u64) -> u128 + Copy,
    g: impl Fn(u64) -> u128 + Copy,
    c_max: u64,
    n_max: u64,
) -> (Dominance, Dominance) {
    (dominance_check(f, g, c_max, n_max), dominance_check(g, f, c_max, n_max))
}
