//! Numerical lower-bound witness for `N_m`.
//!
//! Encodings that leave `ρ̃^A` invariant are exactly the unitaries that are
//! block-diagonal over the degenerate eigenspaces of each sector of
//! `C^a C^{a†}`. In that eigenframe the overlap of two encoded states is
//! `Σ_b μ_b tr(W_{α,b}† W_{β,b})`, with `μ_b` the eigenvalue of block `b`.
//! The search grows the set one encoding at a time and drives the Gram
//! off-diagonals to zero with Levenberg–Marquardt steps of the form
//! `W ← W exp(i Σ δ_j E_j)`, which stay on the unitary manifold.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::{MessageSet, DEFAULT_ORTHOGONALITY_TOL};
use crate::anyon::{fusion_dim, Charge, Sectors};
use crate::fusion::BipartiteDecomposition;
use crate::linalg::{hermitian_eigen, SectorBlock, SectorOperator};
use crate::{CMatrix, Error, Result, C64};

/// Larger states make the dense search impractically slow.
pub const MAX_SEARCH_ANYONS_PER_SIDE: u32 = 4;

const DEGENERACY_TOL: f64 = 1e-10;
const MAX_LM_ITERATIONS: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    /// Random restarts per target size.
    pub max_trials: usize,
    /// Orthogonality tolerance of the returned set.
    pub tol: f64,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_trials: 24,
            tol: DEFAULT_ORTHOGONALITY_TOL,
            seed: 1,
        }
    }
}

/// Degenerate eigenspace with positive weight.
#[derive(Debug, Clone)]
struct Block {
    sector: Charge,
    offset: usize,
    dim: usize,
    weight: f64,
}

impl Block {
    fn params(&self) -> usize {
        self.dim * self.dim
    }
}

#[derive(Debug)]
struct Frame {
    bases: Sectors<CMatrix>,
    blocks: Vec<Block>,
    params_per_encoding: usize,
}

/// One unitary per block.
type Encoding = Vec<CMatrix>;

impl Frame {
    fn new(state: &BipartiteDecomposition) -> Frame {
        let mut blocks = Vec::new();
        let bases = state.blocks().map(|sector, cblock| {
            let (values, basis) = match cblock {
                SectorBlock::Scaled { dim, value } => {
                    (vec![value.norm_sqr(); *dim], CMatrix::identity(*dim, *dim))
                }
                SectorBlock::Dense(c) => hermitian_eigen(&(c * c.adjoint())),
            };
            let mut start = 0;
            while start < values.len() {
                let mut end = start + 1;
                while end < values.len() && (values[end] - values[start]).abs() <= DEGENERACY_TOL {
                    end += 1;
                }
                let weight = values[start..end].iter().sum::<f64>() / (end - start) as f64;
                if weight > DEGENERACY_TOL {
                    blocks.push(Block {
                        sector,
                        offset: start,
                        dim: end - start,
                        weight,
                    });
                }
                start = end;
            }
            basis
        });
        let params_per_encoding = blocks.iter().map(Block::params).sum();
        Frame {
            bases,
            blocks,
            params_per_encoding,
        }
    }

    /// Dimension of the span reachable by encodings; no larger set can be
    /// orthogonal.
    fn span_dimension(&self) -> usize {
        self.blocks.iter().map(|b| b.dim * b.dim).sum()
    }

    fn overlap(&self, a: &Encoding, b: &Encoding) -> C64 {
        self.blocks
            .iter()
            .zip(a.iter().zip(b))
            .map(|(blk, (wa, wb))| frob_inner(wa, wb) * blk.weight)
            .sum()
    }

    fn identity(&self) -> Encoding {
        self.blocks
            .iter()
            .map(|b| CMatrix::identity(b.dim, b.dim))
            .collect()
    }

    fn random_encoding(&self, rng: &mut ChaCha8Rng) -> Encoding {
        self.blocks
            .iter()
            .map(|b| {
                let params: Vec<f64> = (0..b.params())
                    .map(|_| std::f64::consts::PI * rng.sample::<f64, _>(StandardNormal))
                    .collect();
                exp_i_hermitian(&hermitian_from_params(b.dim, &params))
            })
            .collect()
    }

    fn to_operator(&self, n: u32, enc: &Encoding) -> Result<SectorOperator> {
        let blocks = Sectors::from_fn(|sector| {
            let q = &self.bases[sector];
            let d = q.nrows();
            let mut inner = CMatrix::identity(d, d);
            for (blk, w) in self.blocks.iter().zip(enc) {
                if blk.sector == sector {
                    inner
                        .view_mut((blk.offset, blk.offset), (blk.dim, blk.dim))
                        .copy_from(w);
                }
            }
            q * inner * q.adjoint()
        });
        SectorOperator::new(n, blocks)
    }
}

fn frob_inner(a: &CMatrix, b: &CMatrix) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// Hermitian matrix from `m²` reals: diagonal first, then `(re, im)`-style
/// symmetric/antisymmetric pairs for each `k < l`.
fn hermitian_from_params(m: usize, params: &[f64]) -> CMatrix {
    let mut h = CMatrix::zeros(m, m);
    for k in 0..m {
        h[(k, k)] = C64::new(params[k], 0.0);
    }
    let mut idx = m;
    for k in 0..m {
        for l in (k + 1)..m {
            let (s, a) = (params[idx], params[idx + 1]);
            idx += 2;
            // s (e_kl + e_lk) + a (−i e_kl + i e_lk)
            h[(k, l)] = C64::new(s, -a);
            h[(l, k)] = C64::new(s, a);
        }
    }
    h
}

/// `tr(E_j P)` for every generator `E_j` in the ordering of
/// [`hermitian_from_params`].
fn generator_traces(p: &CMatrix, out: &mut Vec<C64>) {
    let m = p.nrows();
    out.clear();
    for k in 0..m {
        out.push(p[(k, k)]);
    }
    let i = C64::new(0.0, 1.0);
    for k in 0..m {
        for l in (k + 1)..m {
            out.push(p[(l, k)] + p[(k, l)]);
            out.push(i * (p[(k, l)] - p[(l, k)]));
        }
    }
}

fn exp_i_hermitian(h: &CMatrix) -> CMatrix {
    let (values, vectors) = hermitian_eigen(h);
    let phases = DVector::from_iterator(
        values.len(),
        values.iter().map(|&x| C64::from_polar(1.0, x)),
    );
    &vectors * CMatrix::from_diagonal(&phases) * vectors.adjoint()
}

struct Refiner<'a> {
    frame: &'a Frame,
    identity: Encoding,
}

impl Refiner<'_> {
    /// Off-diagonal Gram entries `(α < β)` as interleaved real/imag parts.
    fn residuals(&self, encodings: &[Encoding]) -> DVector<f64> {
        let all: Vec<&Encoding> = std::iter::once(&self.identity).chain(encodings).collect();
        let k = all.len();
        let mut r = Vec::with_capacity(k * (k - 1));
        for a in 0..k {
            for b in (a + 1)..k {
                let g = self.frame.overlap(all[a], all[b]);
                r.push(g.re);
                r.push(g.im);
            }
        }
        DVector::from_vec(r)
    }

    fn jacobian(&self, encodings: &[Encoding]) -> DMatrix<f64> {
        let all: Vec<&Encoding> = std::iter::once(&self.identity).chain(encodings).collect();
        let k = all.len();
        let ppe = self.frame.params_per_encoding;
        let rows = k * (k - 1);
        let mut jac = DMatrix::zeros(rows, ppe * (k - 1));
        let i = C64::new(0.0, 1.0);
        let mut traces = Vec::new();
        let mut row = 0;
        for a in 0..k {
            for b in (a + 1)..k {
                let mut block_offset = 0;
                for (bi, blk) in self.frame.blocks.iter().enumerate() {
                    let p = all[a][bi].adjoint() * &all[b][bi];
                    generator_traces(&p, &mut traces);
                    for (j, t) in traces.iter().enumerate() {
                        let t = *t * blk.weight;
                        // left factor W_a: −i μ tr(E P); right factor W_b: +i μ tr(E P)
                        if a > 0 {
                            let d = -i * t;
                            let col = (a - 1) * ppe + block_offset + j;
                            jac[(row, col)] = d.re;
                            jac[(row + 1, col)] = d.im;
                        }
                        let d = i * t;
                        let col = (b - 1) * ppe + block_offset + j;
                        jac[(row, col)] = d.re;
                        jac[(row + 1, col)] = d.im;
                    }
                    block_offset += blk.params();
                }
                row += 2;
            }
        }
        jac
    }

    fn step(&self, encodings: &[Encoding], delta: &DVector<f64>) -> Vec<Encoding> {
        let ppe = self.frame.params_per_encoding;
        encodings
            .iter()
            .enumerate()
            .map(|(e, enc)| {
                let mut offset = e * ppe;
                self.frame
                    .blocks
                    .iter()
                    .zip(enc)
                    .map(|(blk, w)| {
                        let params = &delta.as_slice()[offset..offset + blk.params()];
                        offset += blk.params();
                        w * exp_i_hermitian(&hermitian_from_params(blk.dim, params))
                    })
                    .collect()
            })
            .collect()
    }

    /// Returns the refined encodings and their largest off-diagonal overlap.
    fn refine(&self, mut encodings: Vec<Encoding>, tol: f64) -> (Vec<Encoding>, f64) {
        let target = tol * 1e-3;
        let mut r = self.residuals(&encodings);
        let mut cost = r.norm_squared();
        let mut lambda = 1e-3;
        for _ in 0..MAX_LM_ITERATIONS {
            if max_pair_magnitude(&r) <= target {
                break;
            }
            let jac = self.jacobian(&encodings);
            let jt = jac.transpose();
            let normal = &jt * &jac;
            let grad = &jt * &r;
            let mut accepted = false;
            while lambda < 1e12 {
                let mut damped = normal.clone();
                for d in 0..damped.nrows() {
                    damped[(d, d)] += lambda * (1.0 + normal[(d, d)]);
                }
                let Some(chol) = damped.cholesky() else {
                    lambda *= 4.0;
                    continue;
                };
                let delta = -chol.solve(&grad);
                let trial = self.step(&encodings, &delta);
                let r_trial = self.residuals(&trial);
                let c_trial = r_trial.norm_squared();
                if c_trial < cost {
                    encodings = trial;
                    r = r_trial;
                    cost = c_trial;
                    lambda = (lambda / 3.0).max(1e-12);
                    accepted = true;
                    break;
                }
                lambda *= 4.0;
            }
            if !accepted {
                break;
            }
        }
        let worst = max_pair_magnitude(&r);
        (encodings, worst)
    }
}

fn max_pair_magnitude(r: &DVector<f64>) -> f64 {
    r.as_slice()
        .chunks(2)
        .map(|c| c[0].hypot(c[1]))
        .fold(0.0, f64::max)
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

fn trial_rng(seed: u64, size: usize, trial: usize) -> ChaCha8Rng {
    let s = splitmix(seed ^ splitmix(size as u64) ^ splitmix(0xA5A5_0000 + trial as u64));
    ChaCha8Rng::seed_from_u64(s)
}

/// Greedy growth with random restarts and local refinement.
///
/// The identity is always the first encoding. For each target size, trials
/// run in parallel; the lowest-index successful trial wins, so results depend
/// only on the seed. The returned set is a lower-bound witness for `N_m`
/// and never exceeds the dimension of the trivial-charge joint space.
pub fn search_max_message_set(
    state: &BipartiteDecomposition,
    options: SearchOptions,
) -> Result<MessageSet> {
    let n = state.n_per_side();
    if n > MAX_SEARCH_ANYONS_PER_SIDE {
        return Err(Error::ResourceLimit(format!(
            "message-set search supports at most {MAX_SEARCH_ANYONS_PER_SIDE} anyons per side"
        )));
    }
    if options.tol.is_nan() || options.tol <= 0.0 {
        return Err(Error::Domain("search tolerance must be positive".into()));
    }
    let frame = Frame::new(state);
    let joint = usize::try_from(fusion_dim(2 * n, Charge::Vacuum)).unwrap_or(usize::MAX);
    let upper = frame.span_dimension().min(joint);
    let refiner = Refiner {
        frame: &frame,
        identity: frame.identity(),
    };

    let mut best: Vec<Encoding> = Vec::new();
    for size in 2..=upper {
        let found = (0..options.max_trials).into_par_iter().find_map_first(|t| {
            let mut rng = trial_rng(options.seed, size, t);
            let start: Vec<Encoding> = if t % 2 == 0 && best.len() + 2 == size {
                let mut s = best.clone();
                s.push(frame.random_encoding(&mut rng));
                s
            } else {
                (1..size).map(|_| frame.random_encoding(&mut rng)).collect()
            };
            let (encodings, worst) = refiner.refine(start, options.tol);
            (worst <= options.tol).then_some(encodings)
        });
        match found {
            Some(encodings) => best = encodings,
            None => break,
        }
    }

    let unitaries = std::iter::once(Ok(SectorOperator::identity(n)))
        .chain(best.iter().map(|enc| frame.to_operator(n, enc)))
        .collect::<Result<Vec<_>>>()?;
    MessageSet::new(state.clone(), unitaries, options.tol)
}
