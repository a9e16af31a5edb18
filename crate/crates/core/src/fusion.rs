//! Fusion-tree bases and bipartite sector-Schmidt states.
//!
//! A trivial-charge state of `2n` τ anyons split `n | n` is stored as one
//! coefficient block `C^a` per sector: rows index Alice's fusion paths with
//! total charge `a`, columns index Bob's mirrored paths with the conjugate
//! charge. All diagrammatic `1/d` factors are folded into `C^a`, so the
//! basis kets are orthonormal and `Σ_a tr(C^{a†} C^a) = 1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::anyon::{fuse, sector_dim, Charge, ModelConstants, Sectors, D_TAU};
use crate::linalg::{SectorBlock, SectorOperator, NORMALIZATION_TOL};
use crate::{CMatrix, Error, Result, C64};

/// One left-to-right fusion path of `n` τ anyons.
///
/// `intermediates[k]` is the charge after fusing the first `k + 2` anyons,
/// so the list has `n − 1` entries and its last entry equals `total`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FusionPath {
    pub intermediates: Vec<Charge>,
    pub total: Charge,
}

impl FusionPath {
    pub fn anyons(&self) -> usize {
        self.intermediates.len() + 1
    }

    /// Checks that every step is an admissible `· × τ` fusion.
    pub fn is_admissible(&self) -> bool {
        let mut current = Charge::Tau;
        for &next in &self.intermediates {
            if !fuse(current, Charge::Tau).contains(&next) {
                return false;
            }
            current = next;
        }
        current == self.total
    }
}

impl fmt::Display for FusionPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("tau")?;
        for c in &self.intermediates {
            write!(f, " -> {c}")?;
        }
        Ok(())
    }
}

/// All fusion paths of `n ≥ 1` τ anyons into `total`, in lexicographic order
/// (vacuum before τ at each step).
pub fn enumerate_basis(n: u32, total: Charge) -> Result<Vec<FusionPath>> {
    if n == 0 {
        return Err(Error::Domain(
            "enumerate_basis needs at least one anyon".into(),
        ));
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(n as usize - 1);
    extend_paths(Charge::Tau, n - 1, total, &mut prefix, &mut out);
    Ok(out)
}

fn extend_paths(
    current: Charge,
    remaining: u32,
    total: Charge,
    prefix: &mut Vec<Charge>,
    out: &mut Vec<FusionPath>,
) {
    if remaining == 0 {
        if current == total {
            out.push(FusionPath {
                intermediates: prefix.clone(),
                total,
            });
        }
        return;
    }
    for next in fuse(current, Charge::Tau) {
        prefix.push(next);
        extend_paths(next, remaining - 1, total, prefix, out);
        prefix.pop();
    }
}

/// Sector-Schmidt form of a trivial-charge pure state of `n | n` τ anyons.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteDecomposition {
    n_per_side: u32,
    blocks: Sectors<SectorBlock>,
}

impl BipartiteDecomposition {
    /// Validates block shapes against the fusion dimensions and checks
    /// `Σ_a tr(C^{a†}C^a) = 1`.
    pub fn new(n_per_side: u32, blocks: Sectors<SectorBlock>) -> Result<Self> {
        if n_per_side == 0 {
            return Err(Error::Domain("each side needs at least one anyon".into()));
        }
        for (a, b) in blocks.iter() {
            let d = sector_dim(n_per_side, a);
            let ok = match b {
                SectorBlock::Scaled { dim, .. } => *dim == d,
                SectorBlock::Dense(m) => m.nrows() == d && m.ncols() == d,
            };
            if !ok {
                return Err(Error::ShapeMismatch(format!(
                    "coefficient block {a} must be {d}x{d}"
                )));
            }
        }
        let state = BipartiteDecomposition { n_per_side, blocks };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::Domain(format!(
                "state not normalised: norm² = {norm}"
            )));
        }
        Ok(state)
    }

    pub fn n_per_side(&self) -> u32 {
        self.n_per_side
    }

    pub fn blocks(&self) -> &Sectors<SectorBlock> {
        &self.blocks
    }

    pub fn block(&self, a: Charge) -> &SectorBlock {
        &self.blocks[a]
    }

    /// `Σ_a tr(C^{a†} C^a)`.
    pub fn norm_sqr(&self) -> f64 {
        self.blocks.iter().map(|(_, b)| b.norm_sqr()).sum()
    }

    /// Dimension of the trivial-charge joint space, `Σ_a dim(a)²`.
    pub fn joint_dimension(&self) -> usize {
        self.blocks.iter().map(|(_, b)| b.dim() * b.dim()).sum()
    }
}

/// `|B⟩^⊗n`: `C^1 = d^{−n/2} I_{F(n−1)}`, `C^τ = d^{−(n−1)/2} I_{F(n)}`.
pub fn bell_power_state(n: u32) -> Result<BipartiteDecomposition> {
    if n == 0 {
        return Err(Error::Domain("bell_power_state needs n >= 1".into()));
    }
    let nf = f64::from(n);
    let blocks = Sectors::new(
        SectorBlock::Scaled {
            dim: sector_dim(n, Charge::Vacuum),
            value: C64::new(D_TAU.powf(-nf / 2.0), 0.0),
        },
        SectorBlock::Scaled {
            dim: sector_dim(n, Charge::Tau),
            value: C64::new(D_TAU.powf(-(nf - 1.0) / 2.0), 0.0),
        },
    );
    BipartiteDecomposition::new(n, blocks)
}

/// Six-anyon family `|G(p)⟩`: `C^1 = [√p]`, `C^τ = √((1−p)/2) I_2`.
pub fn gp_state(p: f64) -> Result<BipartiteDecomposition> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("p = {p} outside [0, 1]")));
    }
    let blocks = Sectors::new(
        SectorBlock::Scaled {
            dim: 1,
            value: C64::new(p.sqrt(), 0.0),
        },
        SectorBlock::Scaled {
            dim: 2,
            value: C64::new(((1.0 - p) / 2.0).sqrt(), 0.0),
        },
    );
    BipartiteDecomposition::new(3, blocks)
}

/// Recouples a three-τ amplitude vector from left-fused to right-fused
/// order: `F^τ_{τττ}` in the τ sector, identity in the vacuum sector.
pub fn apply_f_move_3(total: Charge, amplitudes: &[C64]) -> Result<Vec<C64>> {
    let d = sector_dim(3, total);
    if amplitudes.len() != d {
        return Err(Error::ShapeMismatch(format!(
            "three-anyon {total} sector has dimension {d}, got {}",
            amplitudes.len()
        )));
    }
    match total {
        Charge::Vacuum => Ok(amplitudes.to_vec()),
        Charge::Tau => {
            let f = ModelConstants::fibonacci().f_matrix;
            Ok((0..2)
                .map(|i| amplitudes[0] * f[(i, 0)] + amplitudes[1] * f[(i, 1)])
                .collect())
        }
    }
}

/// `⟨ψ|(U†V ⊗ I)|ψ⟩ = Σ_a tr(C^{a†} U^{a†} V^a C^a)`.
pub fn state_overlap(
    state: &BipartiteDecomposition,
    u: &SectorOperator,
    v: &SectorOperator,
) -> Result<C64> {
    let n = state.n_per_side();
    if u.n() != n || v.n() != n {
        return Err(Error::ShapeMismatch(format!(
            "operators act on {} and {} anyons, state has {n} per side",
            u.n(),
            v.n()
        )));
    }
    let mut total = C64::new(0.0, 0.0);
    for (a, cblock) in state.blocks().iter() {
        total += sector_overlap(cblock, u.block(a), v.block(a));
    }
    Ok(total)
}

/// `tr(C† U† V C)` for one sector.
pub(crate) fn sector_overlap(cblock: &SectorBlock, u: &CMatrix, v: &CMatrix) -> C64 {
    match cblock {
        SectorBlock::Scaled { value, .. } => {
            let tr: C64 = u.iter().zip(v.iter()).map(|(x, y)| x.conj() * y).sum();
            tr * value.norm_sqr()
        }
        SectorBlock::Dense(cm) => {
            let uc = u * cm;
            let vc = v * cm;
            uc.iter().zip(vc.iter()).map(|(x, y)| x.conj() * y).sum()
        }
    }
}
