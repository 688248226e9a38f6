use std::sync::Arc;

use kerphi_abelian::{BlockDecomposition, BlockVec, ZVec};

use crate::word::{Letter, Word};
use crate::{FactorError, Result};

/// A free factor group `F_p` with an n-split epimorphism onto `Z^m` and
/// section lifts of every block basis element.
///
/// Invariants: `pr_j(φ(section(j, b))) = e_b` for all `j, b`, and the lifts
/// of one block pairwise commute, so `s^j` is a homomorphism on `A_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSpec {
    p: usize,
    phi_images: Vec<ZVec>,
    dec: Arc<BlockDecomposition>,
    sections: Vec<Vec<Word>>,
}

impl FactorSpec {
    pub fn new(
        dec: &Arc<BlockDecomposition>,
        phi_images: Vec<ZVec>,
        sections: Vec<Vec<Word>>,
    ) -> Result<Self> {
        let p = phi_images.len();
        if p == 0 {
            return Err(FactorError::Shape("factor needs at least one generator".into()));
        }
        for img in &phi_images {
            if **img.decomposition() != **dec {
                return Err(FactorError::Abelian(
                    kerphi_abelian::AbelianError::DecompositionMismatch,
                ));
            }
        }
        if sections.len() != dec.n() {
            return Err(FactorError::Shape(format!(
                "section table has {} blocks, decomposition has {}",
                sections.len(),
                dec.n()
            )));
        }
        for (j0, row) in sections.iter().enumerate() {
            let size = dec.block_size(j0 + 1)?;
            if row.len() != size {
                return Err(FactorError::Shape(format!(
                    "block {} has {} section lifts, expected {}",
                    j0 + 1,
                    row.len(),
                    size
                )));
            }
            for w in row {
                for l in w.letters() {
                    if l.gen >= p {
                        return Err(FactorError::GeneratorOutOfRange { gen: l.gen + 1, p });
                    }
                }
            }
        }
        let spec = Self {
            p,
            phi_images,
            dec: Arc::clone(dec),
            sections,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// The doubled free instance DF(m): `F_{2m}` with `φ(x_t) = φ(x_{m+t}) = e_t`
    /// and `s^j(e_t) = x_t` for every coordinate `t` of block `j`.
    pub fn doubled_free(dec: &Arc<BlockDecomposition>) -> Result<Self> {
        let m = dec.m();
        let mut phi_images = Vec::with_capacity(2 * m);
        for t in 0..2 * m {
            let mut coords = vec![0i64; m];
            coords[t % m] = 1;
            phi_images.push(ZVec::from_coords(dec, coords)?);
        }
        let mut sections = Vec::with_capacity(dec.n());
        for j in 1..=dec.n() {
            let range = dec.block_range(j)?;
            sections.push(range.map(Word::gen).collect());
        }
        Self::new(dec, phi_images, sections)
    }

    /// Re-checks the n-split identity and commutation of same-block lifts.
    pub fn validate(&self) -> Result<()> {
        for j in 1..=self.dec.n() {
            let row = &self.sections[j - 1];
            for (b0, w) in row.iter().enumerate() {
                let img = self.evaluate_phi(w)?.project_block(j)?;
                let ok = img
                    .coords()
                    .iter()
                    .enumerate()
                    .all(|(t, &x)| x == i64::from(t == b0));
                if !ok {
                    return Err(FactorError::SpecInvalid {
                        block: j,
                        basis: b0 + 1,
                    });
                }
            }
            for (i, u) in row.iter().enumerate() {
                for v in &row[i + 1..] {
                    if u.mul(v) != v.mul(u) {
                        return Err(FactorError::SectionsNotCommuting { block: j });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn generator_count(&self) -> usize {
        self.p
    }

    pub fn phi_images(&self) -> &[ZVec] {
        &self.phi_images
    }

    pub fn decomposition(&self) -> &Arc<BlockDecomposition> {
        &self.dec
    }

    pub fn section_table(&self) -> &[Vec<Word>] {
        &self.sections
    }

    /// `s^j(e_b)` for 1-based block `j` and basis index `b`.
    pub fn section(&self, j: usize, b: usize) -> Result<&Word> {
        self.dec.check_block(j)?;
        self.sections[j - 1]
            .get(b.wrapping_sub(1))
            .ok_or(FactorError::Shape(format!("block {j} has no basis element {b}")))
    }

    pub fn evaluate_phi(&self, w: &Word) -> Result<ZVec> {
        let mut acc = vec![0i64; self.dec.m()];
        for &Letter { gen, inv } in w.letters() {
            let img = self
                .phi_images
                .get(gen)
                .ok_or(FactorError::GeneratorOutOfRange { gen: gen + 1, p: self.p })?;
            for (a, &x) in acc.iter_mut().zip(img.coords()) {
                let delta = if inv { x.checked_neg() } else { Some(x) };
                *a = delta
                    .and_then(|d| a.checked_add(d))
                    .ok_or(FactorError::Abelian(kerphi_abelian::AbelianError::Overflow))?;
            }
        }
        Ok(ZVec::from_coords(&self.dec, acc)?)
    }

    /// `s^j(v)` for `v ∈ A_j`.
    pub fn section_lift(&self, v: &BlockVec) -> Result<Word> {
        let j = v.block();
        let mut w = Word::identity();
        for (b0, &x) in v.coords().iter().enumerate() {
            w.mul_assign(&self.section(j, b0 + 1)?.pow(x));
        }
        Ok(w)
    }

    /// `s^j(pr_j v)` for `v ∈ Z^m`.
    pub fn lift_block_of(&self, j: usize, v: &ZVec) -> Result<Word> {
        self.section_lift(&v.project_block(j)?)
    }

    /// Whether `w` is `s^j(v)` for some `v ∈ A_j`, returning that `v`.
    pub fn as_section_lift(&self, j: usize, w: &Word) -> Result<Option<BlockVec>> {
        let v = self.evaluate_phi(w)?.project_block(j)?;
        Ok((self.section_lift(&v)? == *w).then_some(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn df(n: usize) -> FactorSpec {
        let dec = Arc::new(BlockDecomposition::uniform(n).unwrap());
        FactorSpec::doubled_free(&dec).unwrap()
    }

    #[test]
    fn doubled_free_phi() {
        let spec = df(3);
        let w: Word = "x2 x5^-1".parse().unwrap();
        assert!(spec.evaluate_phi(&w).unwrap().is_zero());
        assert!(spec.evaluate_phi(&Word::identity()).unwrap().is_zero());
        let w: Word = "x1 x4 x3^-1".parse().unwrap();
        assert_eq!(spec.evaluate_phi(&w).unwrap().coords(), &[2, 0, -1]);
    }

    #[test]
    fn broken_section_is_rejected_with_location() {
        let dec = Arc::new(BlockDecomposition::uniform(3).unwrap());
        let good = FactorSpec::doubled_free(&dec).unwrap();
        let mut sections = good.section_table().to_vec();
        sections[1][0] = Word::gen(0);
        let err = FactorSpec::new(&dec, good.phi_images().to_vec(), sections).unwrap_err();
        assert_eq!(err, FactorError::SpecInvalid { block: 2, basis: 1 });
    }

    #[test]
    fn wide_blocks_have_no_free_group_sections() {
        let dec = Arc::new(BlockDecomposition::new(vec![2, 1, 1]).unwrap());
        let err = FactorSpec::doubled_free(&dec).unwrap_err();
        assert_eq!(err, FactorError::SectionsNotCommuting { block: 1 });
    }

    #[test]
    fn section_lift_round_trip() {
        let spec = df(4);
        let v = ZVec::from_coords(spec.decomposition(), vec![0, -3, 0, 0]).unwrap();
        let w = spec.lift_block_of(2, &v).unwrap();
        assert_eq!(w.to_string(), "x2^-1 x2^-1 x2^-1");
        assert_eq!(spec.as_section_lift(2, &w).unwrap().unwrap().coords(), &[-3]);
        let not_lift: Word = "x6".parse().unwrap();
        assert!(spec.as_section_lift(2, &not_lift).unwrap().is_none());
    }
}
