//! Deterministic quantum one-time pad: security and orthogonality conditions,
//! clock-and-shift encodings, capacity bounds for `|B⟩^⊗n` and a numerical
//! maximal message-set search.

mod search;

pub use search::{search_max_message_set, SearchOptions, MAX_SEARCH_ANYONS_PER_SIDE};

use serde::{Deserialize, Serialize};

use crate::anyon::{fibonacci, sector_dim, Charge, Sectors};
use crate::fusion::{bell_power_state, state_overlap, BipartiteDecomposition};
use crate::linalg::{reduced_density, AnyonicDensity, SectorOperator, Side};
use crate::{CMatrix, Error, Result, C64};

pub const DEFAULT_ORTHOGONALITY_TOL: f64 = 1e-9;
pub const DEFAULT_SECURITY_TOL: f64 = 1e-12;

/// Largest `n` accepted by [`bell_message_set`]; `F(9)² = 1156` messages.
pub const MAX_BELL_MESSAGE_COPIES: u32 = 10;

/// A set of encodings that are secure and mutually distinguishable on a key
/// state.
#[derive(Debug, Clone)]
pub struct MessageSet {
    unitaries: Vec<SectorOperator>,
    state: BipartiteDecomposition,
    tolerance: f64,
}

impl MessageSet {
    /// Validates unitarity, security (`U ρ̃^A U† = ρ̃^A`) and orthogonality
    /// (`|⟨ψ|U_α† U_β|ψ⟩| ≤ tol` for `α ≠ β`), all at `tolerance`.
    pub fn new(
        state: BipartiteDecomposition,
        unitaries: Vec<SectorOperator>,
        tolerance: f64,
    ) -> Result<Self> {
        if unitaries.is_empty() {
            return Err(Error::InvalidMessageSet("no encodings".into()));
        }
        let rho = reduced_density(&state, Side::A);
        for (i, u) in unitaries.iter().enumerate() {
            let res = u.unitarity_residual();
            if res > tolerance {
                return Err(Error::InvalidMessageSet(format!(
                    "encoding {i} not unitary (residual {res:e})"
                )));
            }
            let sec = security_residual(u, &rho)?;
            if sec > tolerance {
                return Err(Error::InvalidMessageSet(format!(
                    "encoding {i} changes Alice's state (residual {sec:e})"
                )));
            }
        }
        let gram = overlap_matrix(&state, &unitaries)?;
        let off = max_off_diagonal(&gram);
        if off > tolerance {
            return Err(Error::InvalidMessageSet(format!(
                "encoded states not orthogonal (max overlap {off:e})"
            )));
        }
        Ok(MessageSet {
            unitaries,
            state,
            tolerance,
        })
    }

    pub fn len(&self) -> usize {
        self.unitaries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.unitaries.is_empty()
    }

    pub fn unitaries(&self) -> &[SectorOperator] {
        &self.unitaries
    }

    pub fn state(&self) -> &BipartiteDecomposition {
        &self.state
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Largest security residual over all encodings.
    pub fn security_residual(&self) -> f64 {
        let rho = reduced_density(&self.state, Side::A);
        self.unitaries
            .iter()
            .map(|u| security_residual(u, &rho).expect("shapes validated on construction"))
            .fold(0.0, f64::max)
    }

    /// Classical capacity `log₂ |set|` in bits.
    pub fn bits(&self) -> f64 {
        (self.len() as f64).log2()
    }
}

/// Largest entry of `|U ρ U† − ρ|` over all sectors.
pub fn security_residual(u: &SectorOperator, rho: &AnyonicDensity) -> Result<f64> {
    let conj = rho.conjugated_by(u)?;
    conj.max_abs_diff(&rho.to_operator())
}

/// True iff `U ρ U† = ρ` entrywise within `tol` in every sector.
pub fn check_security(u: &SectorOperator, rho: &AnyonicDensity, tol: f64) -> Result<bool> {
    Ok(security_residual(u, rho)? <= tol)
}

/// Entry `(α, β)` is `⟨ψ|U_α† U_β|ψ⟩`.
pub fn gram_matrix(ms: &MessageSet) -> CMatrix {
    overlap_matrix(&ms.state, &ms.unitaries).expect("shapes validated on construction")
}

/// Gram matrix of `{(U_α ⊗ I)|ψ⟩}` for arbitrary encodings.
pub fn overlap_matrix(
    state: &BipartiteDecomposition,
    unitaries: &[SectorOperator],
) -> Result<CMatrix> {
    let k = unitaries.len();
    let mut g = CMatrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let v = state_overlap(state, &unitaries[i], &unitaries[j])?;
            g[(i, j)] = v;
            g[(j, i)] = v.conj();
        }
    }
    Ok(g)
}

pub fn max_off_diagonal(g: &CMatrix) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..g.nrows() {
        for j in 0..g.ncols() {
            if i != j {
                m = m.max(g[(i, j)].norm());
            }
        }
    }
    m
}

/// Generalised Pauli basis `{X^r Z^s : 0 ≤ r, s < d}` in `r`-major order,
/// with `X|k⟩ = |k+1 mod d⟩` and `Z = diag(ω^k)`, `ω = e^{2πi/d}`.
pub fn sector_superdense_set(d: usize) -> Result<Vec<CMatrix>> {
    if d == 0 {
        return Err(Error::Domain("clock-and-shift basis needs d >= 1".into()));
    }
    let omega =
        |k: usize| C64::from_polar(1.0, 2.0 * std::f64::consts::PI * (k % d) as f64 / d as f64);
    let mut out = Vec::with_capacity(d * d);
    for r in 0..d {
        for s in 0..d {
            // (X^r Z^s)|k⟩ = ω^{sk} |k + r⟩
            let mut m = CMatrix::zeros(d, d);
            for k in 0..d {
                m[((k + r) % d, k)] = omega(s * k);
            }
            out.push(m);
        }
    }
    Ok(out)
}

/// Message set on `|B⟩^⊗n` that pairs the `F(n−1)²` vacuum-sector
/// clock-and-shift matrices with the first `F(n−1)²` τ-sector ones.
pub fn bell_message_set(n: u32) -> Result<MessageSet> {
    if n < 2 {
        return Err(Error::Domain("bell_message_set needs n >= 2".into()));
    }
    if n > MAX_BELL_MESSAGE_COPIES {
        return Err(Error::ResourceLimit(format!(
            "bell_message_set supports n <= {MAX_BELL_MESSAGE_COPIES}"
        )));
    }
    let dv = sector_dim(n, Charge::Vacuum);
    let dt = sector_dim(n, Charge::Tau);
    let vac = sector_superdense_set(dv)?;
    let tau = sector_superdense_set(dt)?;
    let unitaries = vac
        .into_iter()
        .zip(tau)
        .map(|(v, t)| SectorOperator::new(n, Sectors::new(v, t)))
        .collect::<Result<Vec<_>>>()?;
    MessageSet::new(bell_power_state(n)?, unitaries, DEFAULT_ORTHOGONALITY_TOL)
}

/// `F(n−1)² ≤ N_m(|B⟩^⊗n) ≤ F(n−1)² + F(n)²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapacityBounds {
    pub n: u32,
    pub lower: u128,
    pub upper: u128,
}

impl CapacityBounds {
    pub fn lower_bits_per_copy(&self) -> f64 {
        (self.lower as f64).log2() / f64::from(self.n)
    }

    pub fn upper_bits_per_copy(&self) -> f64 {
        (self.upper as f64).log2() / f64::from(self.n)
    }
}

pub fn bell_capacity_bounds(n: u32) -> Result<CapacityBounds> {
    if n == 0 {
        return Err(Error::Domain("bell_capacity_bounds needs n >= 1".into()));
    }
    let overflow = || Error::Overflow(format!("capacity bounds for n = {n}"));
    let fm = fibonacci(n - 1)?;
    let f = fibonacci(n)?;
    let lower = fm.checked_mul(fm).ok_or_else(overflow)?;
    let upper = f
        .checked_mul(f)
        .and_then(|x| x.checked_add(lower))
        .ok_or_else(overflow)?;
    Ok(CapacityBounds { n, lower, upper })
}
