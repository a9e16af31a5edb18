//! Holevo decomposition `χ = Ĩ(ρ̃^{AB}) − Ĩ(σ̃^{AB}) = log₂|𝒰|` for the
//! `G(p)` family, and the capacity sweep over `p`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::anyon::D_TAU;
use crate::dqotp::{max_off_diagonal, overlap_matrix, MessageSet};
use crate::fusion::{gp_state, BipartiteDecomposition};
use crate::linalg::{mutual_information, EIGEN_CLAMP};
use crate::simplex::max_messages;
use crate::{Error, Result};

/// Points where the step function changes value, plus the maximiser of
/// the mutual information.
pub fn breakpoints() -> [f64; 5] {
    [0.2, 0.25, 1.0 / 3.0, 0.5, 1.0 / D_TAU.powi(3)]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub p: f64,
    pub n_messages: usize,
    #[serde(rename = "I_initial")]
    pub mutual_info_initial: f64,
    #[serde(rename = "I_final")]
    pub mutual_info_final: f64,
    #[serde(rename = "chi")]
    pub holevo_chi: f64,
}

/// Entropy of the equiprobable mixture of encoded states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AverageEntropy {
    pub bits: f64,
    pub max_off_diagonal: f64,
    /// Set when the encoded states are not orthogonal within the set's
    /// tolerance; `bits` is then below `log₂|set|`.
    pub degenerate: bool,
}

/// `S̃(σ̃^{AB})` with `σ̃ = (1/N) Σ_α (U_α⊗I)|ψ⟩⟨ψ|(U_α⊗I)†`.
///
/// The nonzero spectrum of `σ̃` is that of `Gram / N`, which is what gets
/// diagonalised here. The joint state has trivial total charge, so no
/// quantum-dimension weights enter.
pub fn average_state_entropy(
    state: &BipartiteDecomposition,
    ms: &MessageSet,
) -> Result<AverageEntropy> {
    let gram = overlap_matrix(state, ms.unitaries())?;
    let n = gram.nrows() as f64;
    let scaled = gram.map(|z| z / n);
    let mut bits = 0.0;
    for lambda in scaled.symmetric_eigenvalues().iter().copied() {
        if lambda < -crate::linalg::NEGATIVE_EIGEN_TOL {
            return Err(Error::InvalidDensity(format!(
                "mixture has negative eigenvalue {lambda:e}"
            )));
        }
        if lambda > EIGEN_CLAMP {
            bits -= lambda * lambda.log2();
        }
    }
    let off = max_off_diagonal(&gram);
    Ok(AverageEntropy {
        bits,
        max_off_diagonal: off,
        degenerate: off > ms.tolerance(),
    })
}

/// `χ = log₂ N_m(|G(p)⟩)`.
pub fn holevo_chi(p: f64) -> Result<f64> {
    Ok((max_messages(p)? as f64).log2())
}

pub fn sweep_row(p: f64) -> Result<SweepRow> {
    let n_messages = max_messages(p)?;
    let initial = mutual_information(&gp_state(p)?);
    let chi = (n_messages as f64).log2();
    Ok(SweepRow {
        p,
        n_messages,
        mutual_info_initial: initial,
        mutual_info_final: initial - chi,
        holevo_chi: chi,
    })
}

/// One row per grid point, ordered by `p`.
pub fn sweep(grid: &[f64]) -> Result<Vec<SweepRow>> {
    let mut rows = grid
        .par_iter()
        .map(|&p| sweep_row(p))
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| a.p.total_cmp(&b.p));
    Ok(rows)
}

/// `points` uniform samples of `[0, 1]` with the breakpoints merged in.
pub fn default_grid(points: usize) -> Vec<f64> {
    let mut grid: Vec<f64> = match points {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..points)
            .map(|i| i as f64 / (points - 1) as f64)
            .collect(),
    };
    grid.extend(breakpoints());
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dqotp::bell_message_set;
    use crate::fusion::bell_power_state;
    use crate::linalg::SectorOperator;
    use crate::simplex::{build_simplex_vectors, vectors_to_unitaries};

    #[test]
    fn single_message_has_zero_entropy() {
        let s = gp_state(0.6).unwrap();
        let ms = MessageSet::new(s.clone(), vec![SectorOperator::identity(3)], 1e-9).unwrap();
        let e = average_state_entropy(&s, &ms).unwrap();
        assert!(e.bits.abs() < 1e-12);
        assert!(!e.degenerate);
    }

    #[test]
    fn five_cell_mixture() {
        let ms = vectors_to_unitaries(0.2, &build_simplex_vectors(0.2).unwrap()).unwrap();
        let e = average_state_entropy(ms.state(), &ms).unwrap();
        assert!((e.bits - 2.321_928_094_9).abs() < 1e-9);
    }

    #[test]
    fn bell_four_mixture() {
        let ms = bell_message_set(4).unwrap();
        let e = average_state_entropy(&bell_power_state(4).unwrap(), &ms).unwrap();
        assert!((e.bits - 2.0).abs() < 1e-9);
    }

    #[test]
    fn non_orthogonal_reuse_is_flagged() {
        // The p = 1/5 encodings are not orthogonal on G(0.3).
        let ms = vectors_to_unitaries(0.2, &build_simplex_vectors(0.2).unwrap()).unwrap();
        let e = average_state_entropy(&gp_state(0.3).unwrap(), &ms).unwrap();
        assert!(e.degenerate);
        assert!(e.bits < 5f64.log2());
    }

    #[test]
    fn chi_examples() {
        assert!((holevo_chi(0.2).unwrap() - 5f64.log2()).abs() < 1e-15);
        assert_eq!(holevo_chi(1.0 / D_TAU.powi(3)).unwrap(), 2.0);
        assert_eq!(holevo_chi(1.0).unwrap(), 0.0);
    }

    #[test]
    fn sweep_rows_are_ordered_and_consistent() {
        let rows = sweep(&[0.9, 0.1, 0.2, 0.5]).unwrap();
        let ps: Vec<f64> = rows.iter().map(|r| r.p).collect();
        assert_eq!(ps, vec![0.1, 0.2, 0.5, 0.9]);
        for r in &rows {
            assert!((r.holevo_chi - (r.mutual_info_initial - r.mutual_info_final)).abs() < 1e-9);
            assert!(r.mutual_info_final >= -1e-12);
        }
        assert!(sweep(&[0.1, 1.5]).is_err());
    }

    #[test]
    fn grid_contains_breakpoints() {
        let g = default_grid(1001);
        for b in breakpoints() {
            assert!(g.contains(&b));
        }
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(g.first(), Some(&0.0));
        assert_eq!(g.last(), Some(&1.0));
    }
}
