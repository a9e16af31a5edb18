//! Sector-blocked operators, quantum trace, anyonic density operators and
//! anyonic entropies.
//!
//! Conventions fixed here and relied on by every other module: a reduced
//! density block carries a `1/d_a` factor, and the quantum trace weights
//! sector `a` by `d_a`, so that `Σ_a d_a tr ρ^a = 1`.

use nalgebra::DMatrix;

use crate::anyon::{quantum_dimension, sector_dim, Charge, Sectors};
use crate::fusion::BipartiteDecomposition;
use crate::{CMatrix, Error, Result, C64};

/// Eigenvalues below this are treated as zero in entropy sums.
pub const EIGEN_CLAMP: f64 = 1e-14;
/// Eigenvalues below `-NEGATIVE_EIGEN_TOL` are rejected.
pub const NEGATIVE_EIGEN_TOL: f64 = 1e-10;
/// Allowed deviation of `Σ_a d_a tr ρ^a` from one.
pub const NORMALIZATION_TOL: f64 = 1e-12;
const HERMITIAN_TOL: f64 = 1e-10;

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Square block that is either a multiple of the identity or a dense matrix.
///
/// States like `|B⟩^⊗n` have identity-proportional blocks whose dimension
/// grows as Fibonacci numbers; keeping them symbolic avoids materialising
/// thousands-wide identities.
#[derive(Debug, Clone, PartialEq)]
pub enum SectorBlock {
    Scaled { dim: usize, value: C64 },
    Dense(CMatrix),
}

impl SectorBlock {
    pub fn zeros(dim: usize) -> Self {
        SectorBlock::Scaled { dim, value: c(0.0) }
    }

    pub fn dim(&self) -> usize {
        match self {
            SectorBlock::Scaled { dim, .. } => *dim,
            SectorBlock::Dense(m) => m.nrows(),
        }
    }

    pub fn to_dense(&self) -> CMatrix {
        match self {
            SectorBlock::Scaled { dim, value } => CMatrix::identity(*dim, *dim) * *value,
            SectorBlock::Dense(m) => m.clone(),
        }
    }

    pub fn trace(&self) -> C64 {
        match self {
            SectorBlock::Scaled { dim, value } => *value * (*dim as f64),
            SectorBlock::Dense(m) => m.trace(),
        }
    }

    /// `tr(C† C)`.
    pub fn norm_sqr(&self) -> f64 {
        match self {
            SectorBlock::Scaled { dim, value } => value.norm_sqr() * (*dim as f64),
            SectorBlock::Dense(m) => m.iter().map(|z| z.norm_sqr()).sum(),
        }
    }

    /// `C C†`.
    pub fn gram_left(&self) -> SectorBlock {
        match self {
            SectorBlock::Scaled { dim, value } => SectorBlock::Scaled {
                dim: *dim,
                value: c(value.norm_sqr()),
            },
            SectorBlock::Dense(m) => SectorBlock::Dense(m * m.adjoint()),
        }
    }

    /// `Cᵀ C̄`, the Bob-side counterpart of [`gram_left`](Self::gram_left).
    pub fn gram_right(&self) -> SectorBlock {
        match self {
            SectorBlock::Scaled { dim, value } => SectorBlock::Scaled {
                dim: *dim,
                value: c(value.norm_sqr()),
            },
            SectorBlock::Dense(m) => SectorBlock::Dense(m.transpose() * m.conjugate()),
        }
    }

    pub fn scale(&self, s: f64) -> SectorBlock {
        match self {
            SectorBlock::Scaled { dim, value } => SectorBlock::Scaled {
                dim: *dim,
                value: *value * s,
            },
            SectorBlock::Dense(m) => SectorBlock::Dense(m * c(s)),
        }
    }

    /// Eigenvalues of a Hermitian block, ascending.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let mut ev = match self {
            SectorBlock::Scaled { dim, value } => vec![value.re; *dim],
            SectorBlock::Dense(m) if m.nrows() == 0 => Vec::new(),
            SectorBlock::Dense(m) => m.clone().symmetric_eigenvalues().iter().copied().collect(),
        };
        ev.sort_by(f64::total_cmp);
        ev
    }

    fn hermiticity_residual(&self) -> f64 {
        match self {
            SectorBlock::Scaled { value, .. } => value.im.abs(),
            SectorBlock::Dense(m) => (m - m.adjoint())
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max),
        }
    }
}

/// Operator on `n` τ anyons respecting superselection: `M = M^1 ⊕ M^τ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorOperator {
    n: u32,
    blocks: Sectors<CMatrix>,
}

impl SectorOperator {
    pub fn new(n: u32, blocks: Sectors<CMatrix>) -> Result<Self> {
        for (charge, m) in blocks.iter() {
            let d = sector_dim(n, charge);
            if m.nrows() != d || m.ncols() != d {
                return Err(Error::ShapeMismatch(format!(
                    "sector {charge} of {n} anyons needs {d}x{d}, got {}x{}",
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        Ok(SectorOperator { n, blocks })
    }

    pub fn identity(n: u32) -> Self {
        let blocks = Sectors::from_fn(|a| {
            let d = sector_dim(n, a);
            CMatrix::identity(d, d)
        });
        SectorOperator { n, blocks }
    }

    /// Diagonal operator with one phase per sector.
    pub fn sector_phases(n: u32, vacuum: f64, tau: f64) -> Self {
        let mut op = Self::identity(n);
        op.blocks.vacuum *= C64::from_polar(1.0, vacuum);
        op.blocks.tau *= C64::from_polar(1.0, tau);
        op
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn blocks(&self) -> &Sectors<CMatrix> {
        &self.blocks
    }

    pub fn block(&self, a: Charge) -> &CMatrix {
        &self.blocks[a]
    }

    pub fn into_blocks(self) -> Sectors<CMatrix> {
        self.blocks
    }

    fn check_compatible(&self, other: &SectorOperator) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ShapeMismatch(format!(
                "operators on {} and {} anyons",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &SectorOperator) -> Result<SectorOperator> {
        self.check_compatible(other)?;
        Ok(SectorOperator {
            n: self.n,
            blocks: Sectors::from_fn(|a| &self.blocks[a] * &other.blocks[a]),
        })
    }

    pub fn adjoint(&self) -> SectorOperator {
        SectorOperator {
            n: self.n,
            blocks: self.blocks.map(|_, m| m.adjoint()),
        }
    }

    /// Largest entry of `|M†M − I|` over all sectors.
    pub fn unitarity_residual(&self) -> f64 {
        self.blocks
            .iter()
            .map(|(_, m)| {
                let d = m.nrows();
                (m.adjoint() * m - CMatrix::identity(d, d))
                    .iter()
                    .map(|z| z.norm())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_residual() <= tol
    }

    /// Largest entrywise difference `|M − N|`.
    pub fn max_abs_diff(&self, other: &SectorOperator) -> Result<f64> {
        self.check_compatible(other)?;
        Ok(Charge::ALL
            .iter()
            .map(|&a| {
                (&self.blocks[a] - &other.blocks[a])
                    .iter()
                    .map(|z| z.norm())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max))
    }
}

/// `Tr̃[M] = tr M^1 + d_τ tr M^τ`.
pub fn quantum_trace(m: &SectorOperator) -> C64 {
    m.blocks()
        .iter()
        .map(|(a, b)| b.trace() * quantum_dimension(a))
        .sum()
}

/// Sector-blocked density operator normalised under the quantum trace.
#[derive(Debug, Clone, PartialEq)]
pub struct AnyonicDensity {
    n: u32,
    blocks: Sectors<SectorBlock>,
}

impl AnyonicDensity {
    /// Validates shape, Hermiticity, positivity and quantum-trace normalisation.
    pub fn new(n: u32, blocks: Sectors<SectorBlock>) -> Result<Self> {
        for (a, b) in blocks.iter() {
            let d = sector_dim(n, a);
            if b.dim() != d {
                return Err(Error::ShapeMismatch(format!(
                    "density block {a} needs dimension {d}, got {}",
                    b.dim()
                )));
            }
            if let SectorBlock::Dense(m) = b {
                if !m.is_square() {
                    return Err(Error::ShapeMismatch(format!(
                        "density block {a} not square"
                    )));
                }
            }
            let h = b.hermiticity_residual();
            if h > HERMITIAN_TOL {
                return Err(Error::InvalidDensity(format!(
                    "block {a} not Hermitian (residual {h:e})"
                )));
            }
            if let Some(&min) = b.hermitian_eigenvalues().first() {
                if min < -NEGATIVE_EIGEN_TOL {
                    return Err(Error::NegativeEigenvalue {
                        sector: a,
                        value: min,
                    });
                }
            }
        }
        let density = AnyonicDensity { n, blocks };
        let tr = density.quantum_trace();
        if (tr - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidDensity(format!("quantum trace {tr} != 1")));
        }
        Ok(density)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn blocks(&self) -> &Sectors<SectorBlock> {
        &self.blocks
    }

    pub fn block(&self, a: Charge) -> &SectorBlock {
        &self.blocks[a]
    }

    pub fn quantum_trace(&self) -> f64 {
        self.blocks
            .iter()
            .map(|(a, b)| quantum_dimension(a) * b.trace().re)
            .sum()
    }

    /// Dense view as a [`SectorOperator`].
    pub fn to_operator(&self) -> SectorOperator {
        SectorOperator {
            n: self.n,
            blocks: self.blocks.map(|_, b| b.to_dense()),
        }
    }

    /// `U ρ U†`.
    pub fn conjugated_by(&self, u: &SectorOperator) -> Result<SectorOperator> {
        let rho = self.to_operator();
        rho.check_compatible(u)?;
        u.mul(&rho)?.mul(&u.adjoint())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// Reduced state of one side of a bipartite trivial-charge pure state.
///
/// Side A gets `(1/d_a) C^a C^{a†}`, side B gets `(1/d_a) C^{aᵀ} C̄^a`.
pub fn reduced_density(state: &BipartiteDecomposition, side: Side) -> AnyonicDensity {
    let blocks = state.blocks().map(|a, cblock| {
        let g = match side {
            Side::A => cblock.gram_left(),
            Side::B => cblock.gram_right(),
        };
        g.scale(1.0 / quantum_dimension(a))
    });
    AnyonicDensity {
        n: state.n_per_side(),
        blocks,
    }
}

/// `S̃(ρ) = −Σ_a d_a Σ_k λ_{a,k} log₂ λ_{a,k}`.
pub fn anyonic_entropy(rho: &AnyonicDensity) -> Result<f64> {
    let mut s = 0.0;
    for (a, b) in rho.blocks().iter() {
        let weight = quantum_dimension(a);
        let mut block_sum = 0.0;
        match b {
            SectorBlock::Scaled { dim, value } => {
                check_eigenvalue(a, value.re)?;
                block_sum += (*dim as f64) * plogp(value.re);
            }
            SectorBlock::Dense(_) => {
                for lambda in b.hermitian_eigenvalues() {
                    check_eigenvalue(a, lambda)?;
                    block_sum += plogp(lambda);
                }
            }
        }
        s -= weight * block_sum;
    }
    Ok(s)
}

fn check_eigenvalue(sector: Charge, value: f64) -> Result<()> {
    if value < -NEGATIVE_EIGEN_TOL {
        Err(Error::NegativeEigenvalue { sector, value })
    } else {
        Ok(())
    }
}

fn plogp(x: f64) -> f64 {
    if x < EIGEN_CLAMP {
        0.0
    } else {
        x * x.log2()
    }
}

/// `Ĩ = S̃(ρ^A) + S̃(ρ^B) − S̃(ρ^{AB})`, with `S̃(ρ^{AB}) = 0` for the pure
/// trivial-charge states represented by [`BipartiteDecomposition`].
pub fn mutual_information(state: &BipartiteDecomposition) -> f64 {
    let sa = anyonic_entropy(&reduced_density(state, Side::A));
    let sb = anyonic_entropy(&reduced_density(state, Side::B));
    sa.expect("C C† is positive semidefinite") + sb.expect("Cᵀ C̄ is positive semidefinite")
}

/// Hermitian eigen-decomposition of a dense block, eigenvalues ascending.
pub(crate) fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let d = m.nrows();
    if d == 0 {
        return (Vec::new(), CMatrix::zeros(0, 0));
    }
    let eig = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(d, d, |r, col| eig.eigenvectors[(r, order[col])]);
    (values, vectors)
}
