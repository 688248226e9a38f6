//! Explicit vertex products, built term by term from padded elements.
//!
//! These are evaluated independently of the rotated [`VertexSpec`] table and
//! compared against it.
//!
//! [`VertexSpec`]: crate::VertexSpec

use kerphi_lattice::{LaLift, Lattice};
use kerphi_product::ProductElement;

use crate::template::{Local, VertexId};
use crate::Result;

/// `Π pad(x, α) · [−Σ Φ(pad(x, α_i)⁻¹ pad(y, α_i))] · la`.
#[derive(Debug, Clone, Copy)]
pub struct Formula {
    pub name: &'static str,
    pub third: usize,
    pub local: Local,
    pub pads: &'static [(u8, &'static [u8])],
    pub phi: &'static [(u8, u8, &'static [u8])],
    pub la: &'static str,
}

const A: u8 = 0;
const B: u8 = 1;
const C: u8 = 2;
const NS3: &str = "(1 2 3\u{307} ; 4 5 1)";
const NS2: &str = "(1 2\u{307} 3 ; 1 3 6)";

const P10_PADS: &[(u8, &[u8])] = &[(A, &[1, 2, 4, 5]), (B, &[6]), (C, &[3])];
const P10_PHI: &[(u8, u8, &[u8])] = &[(A, B, &[6]), (A, C, &[3])];
const HEX_PADS: &[(u8, &[u8])] = &[(A, &[4, 5]), (B, &[1, 6]), (C, &[2, 3])];
const HEX_PHI: &[(u8, u8, &[u8])] = &[(A, B, &[1, 6]), (A, C, &[2, 3])];

pub const FORMULAS: &[Formula] = &[
    Formula { name: "P1", third: 0, local: Local::Corner, pads: &[(A, &[1, 2, 3, 4, 5, 6])], phi: &[], la: "(1 2 3 ; 4 5 6)" },
    Formula { name: "P2", third: 0, local: Local::Out1, pads: &[(A, &[1, 2, 3, 4, 5]), (B, &[6])], phi: &[(A, B, &[6])], la: NS3 },
    Formula { name: "P3", third: 0, local: Local::Out2, pads: &[(A, &[1, 2, 3, 4, 5]), (B, &[6])], phi: &[(A, B, &[6])], la: "(1 2 3 ; 4 5 6)" },
    Formula { name: "P4", third: 0, local: Local::Mid, pads: &[(A, &[3, 4, 5]), (B, &[1, 2, 6])], phi: &[(A, B, &[1, 2, 6])], la: "(1 2 3 ; 4 5 6)" },
    Formula { name: "P4'", third: 0, local: Local::Mid, pads: &[(B, &[1, 2, 6]), (A, &[3, 4, 5])], phi: &[(B, A, &[3, 4, 5])], la: "(1 2 3 ; 4 5 6)" },
    Formula { name: "P5", third: 1, local: Local::Side, pads: &[(B, &[1, 2, 6]), (A, &[3, 4, 5])], phi: &[(B, A, &[3, 4, 5])], la: "(1 2 3 ; 1 5 6)" },
    Formula { name: "P6", third: 1, local: Local::In2, pads: &[(B, &[1, 2, 3, 4, 6]), (A, &[5])], phi: &[(B, A, &[5])], la: "(1 2 3 ; 1 5 6)" },
    Formula { name: "P7", third: 1, local: Local::In1, pads: &[(B, &[1, 2, 3, 4, 6]), (A, &[5])], phi: &[(B, A, &[5])], la: NS2 },
    Formula { name: "P8", third: 1, local: Local::Corner, pads: &[(B, &[1, 2, 3, 4, 5, 6])], phi: &[], la: "(1 2 3 ; 4 5 6)" },
    Formula { name: "P9", third: 0, local: Local::In1, pads: &[(A, &[1, 2, 4, 5, 6]), (C, &[3])], phi: &[(A, C, &[3])], la: NS3 },
    Formula { name: "P10", third: 0, local: Local::InU, pads: P10_PADS, phi: P10_PHI, la: NS3 },
    Formula { name: "P11", third: 0, local: Local::In2, pads: &[(A, &[1, 2, 4, 5, 6]), (C, &[3])], phi: &[(A, C, &[3])], la: "(1 2 3 ; 4 5 3)" },
    Formula { name: "P12", third: 0, local: Local::InL, pads: P10_PADS, phi: P10_PHI, la: "(1 2 3 ; 4 5 3)" },
    Formula { name: "P13", third: 0, local: Local::InR, pads: P10_PADS, phi: P10_PHI, la: "(1 2 3 ; 4 5 6)" },
    Formula { name: "P14", third: 0, local: Local::Side, pads: &[(A, &[4, 5, 6]), (C, &[1, 2, 3])], phi: &[(A, C, &[1, 2, 3])], la: "(1 2 3 ; 4 5 3)" },
    Formula { name: "P15", third: 0, local: Local::HexL, pads: HEX_PADS, phi: HEX_PHI, la: "(1 2 3 ; 4 5 3)" },
    Formula { name: "P16", third: 0, local: Local::HexR, pads: HEX_PADS, phi: HEX_PHI, la: "(1 2 3 ; 4 5 6)" },
    Formula { name: "P17", third: 1, local: Local::HexL, pads: HEX_PADS, phi: HEX_PHI, la: "(1 2 3 ; 1 5 6)" },
    Formula {
        name: "P17'",
        third: 1,
        local: Local::HexL,
        pads: &[(B, &[1, 6]), (C, &[2, 3]), (A, &[4, 5])],
        phi: &[(B, C, &[2, 3]), (B, A, &[4, 5])],
        la: "(1 2 3 ; 1 5 6)",
    },
];

impl Formula {
    pub fn vertex(&self) -> VertexId {
        VertexId::new(self.third, self.local)
    }

    /// Whether the value involves `c`.
    pub fn uses_c(&self) -> bool {
        self.pads.iter().any(|p| p.0 == C && !p.1.is_empty()) || self.phi.iter().any(|t| t.0 == C || t.1 == C)
    }

    pub fn evaluate(&self, lat: &Lattice, triple: [&ProductElement; 3]) -> Result<ProductElement> {
        let inst = lat.instance();
        let seq = lat.sequences();
        let mut g = inst.identity();
        for (x, classes) in self.pads {
            let cs: Vec<usize> = classes.iter().map(|&c| c as usize).collect();
            g.mul_assign(&triple[*x as usize].pad(seq.union(&cs)));
        }
        let dec = inst.decomposition();
        let mut v = kerphi_abelian::ZVec::zero(dec);
        for (x, y, classes) in self.phi {
            for &c in classes.iter() {
                let alpha = seq.alpha(c as usize).to_vec();
                let px = triple[*x as usize].pad(alpha.iter().copied());
                let py = triple[*y as usize].pad(alpha);
                v = v.add(&inst.phi(&px.invert().multiply(&py))?)?;
            }
        }
        let la: LaLift = self.la.parse()?;
        g.mul_assign(&la.apply(inst, seq, &v.neg()?)?);
        Ok(g)
    }
}
