//! Exact solution of the message-count problem for the six-anyon `G(p)`
//! family.
//!
//! An encoding secure for `ρ̃^A(p)` is a vacuum phase times an SU(2) τ block,
//! written as a unit quaternion `v = (a, b, c, d)`. Orthogonality of two
//! encoded states is the Euclidean condition `v_α · v_β = −p/(1−p)`, so a
//! maximal message set is a regular simplex in `E⁴`. The construction peels
//! off one axis per stage: the remainder of every vector after stage `s` is a
//! unit vector in one dimension less with pairwise product
//! `−p/(1−(s+2)p)`.

use nalgebra::DMatrix;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::anyon::Sectors;
use crate::dqotp::{MessageSet, DEFAULT_ORTHOGONALITY_TOL};
use crate::fusion::gp_state;
use crate::linalg::SectorOperator;
use crate::{CMatrix, Error, Result, C64};

const UNIT_TOL: f64 = 1e-12;
const ANTIPODE_TOL: f64 = 1e-12;
const GRAM_CONSISTENCY_TOL: f64 = 1e-9;
const FEASIBILITY_TOL: f64 = 1e-9;

/// Unit vector in `E⁴` labelling an SU(2) τ-sector encoding.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuaternionVector([f64; 4]);

impl QuaternionVector {
    pub fn new(components: [f64; 4]) -> Result<Self> {
        let norm2: f64 = components.iter().map(|x| x * x).sum();
        if norm2.is_nan() || (norm2 - 1.0).abs() > UNIT_TOL {
            return Err(Error::Domain(format!(
                "quaternion vector has norm² {norm2}"
            )));
        }
        Ok(QuaternionVector(components))
    }

    pub fn components(&self) -> [f64; 4] {
        self.0
    }

    pub fn dot(&self, other: &QuaternionVector) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(x, y)| x * y).sum()
    }

    /// Three-anyon encoding with vacuum entry 1 and τ block
    /// `[[a+ib, c+id], [−c+id, a−ib]]`.
    pub fn to_unitary(&self) -> SectorOperator {
        let [a, b, c, d] = self.0;
        let tau = CMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(a, b),
                C64::new(c, d),
                C64::new(-c, d),
                C64::new(a, -b),
            ],
        );
        SectorOperator::new(3, Sectors::new(CMatrix::identity(1, 1), tau))
            .expect("three-anyon sector shapes")
    }
}

fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Domain(format!("p = {p} outside [0, 1]")))
    }
}

/// Pairwise inner product required at reduction stage `stage`:
/// `−p / (1 − (stage+1) p)`. `None` once the denominator is not positive,
/// where no second vector exists.
pub fn stage_target(p: f64, stage: usize) -> Option<f64> {
    let denom = 1.0 - (stage as f64 + 1.0) * p;
    (denom > 0.0).then(|| -p / denom)
}

/// `−p/(1−p)`, the inner product of any two encoding quaternions.
pub fn required_inner_product(p: f64) -> Result<f64> {
    check_p(p)?;
    if p > 0.5 {
        return Err(Error::Domain(format!(
            "p = {p} > 1/2: no second encoding exists"
        )));
    }
    Ok(-p / (1.0 - p))
}

/// Maximum number of deterministic messages through `|G(p)⟩`.
///
/// Floating inputs are classified by interval membership against the
/// correctly rounded breakpoints `1/5, 1/4, 1/3, 1/2`; nothing is snapped.
pub fn max_messages(p: f64) -> Result<usize> {
    check_p(p)?;
    Ok(if p == 0.2 {
        5
    } else if p <= 0.25 {
        4
    } else if p <= 1.0 / 3.0 {
        3
    } else if p <= 0.5 {
        2
    } else {
        1
    })
}

/// [`max_messages`] for an exact rational `p`.
pub fn max_messages_exact(p: Ratio<i128>) -> Result<usize> {
    let r = |n, d| Ratio::new(n, d);
    if p < r(0, 1) || p > r(1, 1) {
        return Err(Error::Domain(format!("p = {p} outside [0, 1]")));
    }
    Ok(if p == r(1, 5) {
        5
    } else if p <= r(1, 4) {
        4
    } else if p <= r(1, 3) {
        3
    } else if p <= r(1, 2) {
        2
    } else {
        1
    })
}

/// Intermediate unit vectors of the stage-by-stage reduction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionFrames {
    /// Stage targets `−p/(1−kp)` for `k = 1..=4`, where defined.
    pub targets: [Option<f64>; 4],
    /// Remainders in `E³` of vectors `2..`.
    pub w: Vec<[f64; 3]>,
    /// Remainders in `E²` of vectors `3..`.
    pub x: Vec<[f64; 2]>,
    /// Remainders in `E¹` of vectors `4..`.
    pub y: Vec<f64>,
}

struct Reduction {
    p: f64,
    stages: Vec<Vec<Vec<f64>>>,
}

impl Reduction {
    /// `count` unit vectors in `E^dim` with pairwise product equal to the
    /// target of `stage`, first vector `e₀`, new coordinates nonnegative
    /// except for a closing antipode.
    fn simplex(&mut self, dim: usize, stage: usize, count: usize) -> Vec<Vec<f64>> {
        let mut e0 = vec![0.0; dim];
        e0[0] = 1.0;
        let out = if count == 1 {
            vec![e0]
        } else {
            let c = stage_target(self.p, stage).unwrap_or(f64::NEG_INFINITY);
            if count == 2 && (dim == 1 || c <= -1.0 + ANTIPODE_TOL) {
                let anti = e0.iter().map(|x| -x).collect();
                vec![e0, anti]
            } else {
                debug_assert!(c > -1.0, "count exceeds the feasible simplex size");
                let c = c.clamp(-1.0, 0.0);
                let scale = (1.0 - c * c).sqrt();
                let rest = self.simplex(dim - 1, stage + 1, count - 1);
                let mut out = vec![e0];
                out.extend(rest.into_iter().map(|r| {
                    std::iter::once(c)
                        .chain(r.into_iter().map(|x| scale * x))
                        .collect()
                }));
                out
            }
        };
        if self.stages.len() <= stage {
            self.stages.resize(stage + 1, Vec::new());
        }
        self.stages[stage] = out.clone();
        out
    }
}

fn reduce(p: f64) -> Result<Reduction> {
    let count = max_messages(p)?;
    let mut r = Reduction {
        p,
        stages: Vec::new(),
    };
    r.simplex(4, 0, count);
    Ok(r)
}

/// The `max_messages(p)` encoding quaternions, starting at `(1, 0, 0, 0)`.
pub fn build_simplex_vectors(p: f64) -> Result<Vec<QuaternionVector>> {
    let r = reduce(p)?;
    r.stages[0]
        .iter()
        .map(|v| QuaternionVector::new([v[0], v[1], v[2], v[3]]))
        .collect()
}

pub fn reduction_frames(p: f64) -> Result<ReductionFrames> {
    let r = reduce(p)?;
    // Stage s holds the remainders of vectors s+1.. and is recorded only if
    // the reduction reached it.
    let stage = |s: usize| r.stages.get(s).cloned().unwrap_or_default();
    let (w, x, y) = (stage(1), stage(2), stage(3));
    Ok(ReductionFrames {
        targets: [0, 1, 2, 3].map(|s| stage_target(p, s)),
        w: w.iter().map(|v| [v[0], v[1], v[2]]).collect(),
        x: x.iter().map(|v| [v[0], v[1]]).collect(),
        y: y.iter().map(|v| v[0]).collect(),
    })
}

/// Encodes quaternion vectors as three-anyon unitaries and validates them as
/// a message set on `|G(p)⟩`.
pub fn vectors_to_unitaries(p: f64, vectors: &[QuaternionVector]) -> Result<MessageSet> {
    check_p(p)?;
    if vectors.len() > 1 {
        let c = required_inner_product(p).map_err(|e| Error::GramViolation(e.to_string()))?;
        for i in 0..vectors.len() {
            for j in (i + 1)..vectors.len() {
                let dot = vectors[i].dot(&vectors[j]);
                if (dot - c).abs() > GRAM_CONSISTENCY_TOL {
                    return Err(Error::GramViolation(format!("v{i}·v{j} = {dot}, need {c}")));
                }
            }
        }
    }
    let unitaries = vectors.iter().map(QuaternionVector::to_unitary).collect();
    MessageSet::new(gp_state(p)?, unitaries, DEFAULT_ORTHOGONALITY_TOL)
}

/// True iff `count` unit vectors with all pairwise products `c` fit in
/// `E^dim`: `(1−c)I + cJ` must be PSD with rank at most `dim`.
pub fn gram_feasibility(count: usize, c: f64, dim: usize) -> bool {
    if count == 0 {
        return true;
    }
    if !c.is_finite() {
        return false;
    }
    let g = DMatrix::from_fn(count, count, |i, j| if i == j { 1.0 } else { c });
    let eig = g.symmetric_eigenvalues();
    let min = eig.iter().copied().fold(f64::INFINITY, f64::min);
    let rank = eig.iter().filter(|&&x| x > FEASIBILITY_TOL).count();
    min >= -FEASIBILITY_TOL && rank <= dim
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anyon::D_TAU;
    use crate::dqotp::gram_matrix;

    fn assert_vec(v: &QuaternionVector, expect: [f64; 4]) {
        for (a, b) in v.components().iter().zip(expect) {
            assert!(
                (a - b).abs() < 1e-12,
                "{:?} vs {:?}",
                v.components(),
                expect
            );
        }
    }

    #[test]
    fn inner_product_cases() {
        assert!((required_inner_product(0.2).unwrap() + 0.25).abs() < 1e-15);
        assert_eq!(required_inner_product(0.0).unwrap(), 0.0);
        assert_eq!(required_inner_product(0.5).unwrap(), -1.0);
        assert!(required_inner_product(0.6).is_err());
        assert!(required_inner_product(-0.1).is_err());
    }

    #[test]
    fn step_function_examples() {
        assert_eq!(max_messages(0.2).unwrap(), 5);
        assert_eq!(max_messages(1.0 / D_TAU.powi(3)).unwrap(), 4);
        assert_eq!(max_messages(0.9).unwrap(), 1);
        assert_eq!(max_messages(0.0).unwrap(), 4);
        assert_eq!(max_messages(0.25).unwrap(), 4);
        assert_eq!(max_messages(0.3).unwrap(), 3);
        assert_eq!(max_messages(1.0 / 3.0).unwrap(), 3);
        assert_eq!(max_messages(0.5).unwrap(), 2);
        assert_eq!(max_messages(1.0).unwrap(), 1);
        assert!(max_messages(1.01).is_err());
        assert!(max_messages(f64::NAN).is_err());
    }

    #[test]
    fn exact_breakpoints() {
        let r = |n, d| Ratio::new(n, d);
        assert_eq!(max_messages_exact(r(1, 5)).unwrap(), 5);
        assert_eq!(max_messages_exact(r(1, 4)).unwrap(), 4);
        assert_eq!(max_messages_exact(r(1, 3)).unwrap(), 3);
        assert_eq!(max_messages_exact(r(1, 2)).unwrap(), 2);
        // Just above 1/3: a float would round onto the breakpoint.
        let above = r(1, 3) + r(1, 1_000_000_000_000_000_000);
        assert_eq!(max_messages_exact(above).unwrap(), 2);
        assert_eq!(max_messages(1.0 / 3.0 + 1e-18).unwrap(), 3);
        assert!(max_messages_exact(r(3, 2)).is_err());
    }

    #[test]
    fn five_cell_closed_form() {
        let vs = build_simplex_vectors(0.2).unwrap();
        let s15 = 15f64.sqrt();
        let s30 = 30f64.sqrt();
        let s10 = 10f64.sqrt();
        assert_eq!(vs.len(), 5);
        assert_vec(&vs[0], [1.0, 0.0, 0.0, 0.0]);
        assert_vec(&vs[1], [-0.25, s15 / 4.0, 0.0, 0.0]);
        assert_vec(&vs[2], [-0.25, -s15 / 12.0, s30 / 6.0, 0.0]);
        assert_vec(&vs[3], [-0.25, -s15 / 12.0, -s30 / 12.0, s10 / 4.0]);
        assert_vec(&vs[4], [-0.25, -s15 / 12.0, -s30 / 12.0, -s10 / 4.0]);
    }

    #[test]
    fn small_simplices() {
        let half = build_simplex_vectors(0.5).unwrap();
        assert_eq!(half.len(), 2);
        assert_vec(&half[1], [-1.0, 0.0, 0.0, 0.0]);
        let third = build_simplex_vectors(1.0 / 3.0).unwrap();
        assert_eq!(third.len(), 3);
        for i in 0..3 {
            for j in (i + 1)..3 {
                assert!((third[i].dot(&third[j]) + 0.5).abs() < 1e-12);
            }
        }
        assert_eq!(build_simplex_vectors(0.8).unwrap().len(), 1);
    }

    #[test]
    fn reduction_frames_follow_rescaling() {
        let p = 0.2;
        let frames = reduction_frames(p).unwrap();
        let vs = build_simplex_vectors(p).unwrap();
        assert_eq!(frames.w.len(), 4);
        assert_eq!(frames.x.len(), 3);
        assert_eq!(frames.y, vec![1.0, -1.0]);
        let scale = (1.0 - p) / (1.0 - 2.0 * p).sqrt();
        for (w, v) in frames.w.iter().zip(&vs[1..]) {
            let c = v.components();
            for k in 0..3 {
                assert!((w[k] - scale * c[k + 1]).abs() < 1e-12);
            }
        }
        let xs = ((1.0 - p) * (1.0 - 2.0 * p) / (1.0 - 3.0 * p)).sqrt();
        for (x, v) in frames.x.iter().zip(&vs[2..]) {
            let c = v.components();
            assert!((x[0] - xs * c[2]).abs() < 1e-12);
            assert!((x[1] - xs * c[3]).abs() < 1e-12);
        }
        let t = frames.targets;
        assert!((t[0].unwrap() + 0.25).abs() < 1e-15);
        assert!((t[1].unwrap() + 1.0 / 3.0).abs() < 1e-15);
        assert!((t[2].unwrap() + 0.5).abs() < 1e-15);
        assert!((t[3].unwrap() + 1.0).abs() < 1e-12);
        let top = reduction_frames(0.75).unwrap();
        assert!(top.w.is_empty() && top.targets[1].is_none());
    }

    #[test]
    fn quaternion_encodings() {
        let id = QuaternionVector::new([1.0, 0.0, 0.0, 0.0])
            .unwrap()
            .to_unitary();
        assert_eq!(id, SectorOperator::identity(3));
        for v in build_simplex_vectors(0.2).unwrap() {
            let u = v.to_unitary();
            let t = u.block(crate::anyon::Charge::Tau);
            let det = t[(0, 0)] * t[(1, 1)] - t[(0, 1)] * t[(1, 0)];
            assert!((det - C64::new(1.0, 0.0)).norm() < 1e-12);
            assert!(u.unitarity_residual() < 1e-12);
        }
        assert!(QuaternionVector::new([1.0, 1.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn five_cell_message_set() {
        let ms = vectors_to_unitaries(0.2, &build_simplex_vectors(0.2).unwrap()).unwrap();
        let g = gram_matrix(&ms);
        assert!((g - CMatrix::identity(5, 5)).map(|z| z.norm()).max() < 1e-10);
    }

    #[test]
    fn inconsistent_vectors_rejected() {
        let vs = build_simplex_vectors(0.2).unwrap();
        assert!(matches!(
            vectors_to_unitaries(0.3, &vs),
            Err(Error::GramViolation(_))
        ));
        assert!(matches!(
            vectors_to_unitaries(0.7, &vs[..2]),
            Err(Error::GramViolation(_))
        ));
        assert!(vectors_to_unitaries(0.7, &vs[..1]).is_ok());
    }

    #[test]
    fn feasibility_examples() {
        assert!(gram_feasibility(5, -0.25, 4));
        assert!(!gram_feasibility(6, -0.25, 4));
        assert!(gram_feasibility(2, -1.0, 1));
        assert!(!gram_feasibility(5, 0.0, 4));
        assert!(gram_feasibility(4, 0.0, 4));
    }
}
