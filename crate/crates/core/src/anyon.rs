//! Fibonacci anyon model: charges, fusion rules, quantum dimensions, the
//! F and R matrices and the braid generators on three τ anyons.

use std::fmt;
use std::ops::{Index, IndexMut};
use std::str::FromStr;

use nalgebra::{DMatrix, Matrix2};
use serde::{Deserialize, Serialize};

use crate::linalg::SectorOperator;
use crate::{Error, Result, C64};

/// Quantum dimension of τ, the golden ratio.
pub const D_TAU: f64 = 1.618_033_988_749_895;

/// Largest anyon count whose path counts fit in a `u128`.
pub const MAX_FUSION_ANYONS: u32 = 185;

/// Topological charge of the Fibonacci model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Charge {
    Vacuum,
    Tau,
}

impl Charge {
    pub const ALL: [Charge; 2] = [Charge::Vacuum, Charge::Tau];

    /// Self-conjugate: both charges are their own antiparticle.
    pub fn conjugate(self) -> Charge {
        self
    }

    fn index(self) -> usize {
        match self {
            Charge::Vacuum => 0,
            Charge::Tau => 1,
        }
    }
}

impl fmt::Display for Charge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Charge::Vacuum => f.write_str("vacuum"),
            Charge::Tau => f.write_str("tau"),
        }
    }
}

impl FromStr for Charge {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "vacuum" | "1" | "one" | "trivial" => Ok(Charge::Vacuum),
            "tau" | "τ" => Ok(Charge::Tau),
            other => Err(Error::Parse(format!("unknown charge `{other}`"))),
        }
    }
}

/// One value per total-charge sector, indexable by [`Charge`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sectors<T> {
    pub vacuum: T,
    pub tau: T,
}

impl<T> Sectors<T> {
    pub fn new(vacuum: T, tau: T) -> Self {
        Sectors { vacuum, tau }
    }

    pub fn from_fn(mut f: impl FnMut(Charge) -> T) -> Self {
        Sectors {
            vacuum: f(Charge::Vacuum),
            tau: f(Charge::Tau),
        }
    }

    pub fn map<U>(&self, mut f: impl FnMut(Charge, &T) -> U) -> Sectors<U> {
        Sectors {
            vacuum: f(Charge::Vacuum, &self.vacuum),
            tau: f(Charge::Tau, &self.tau),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Charge, &T)> {
        [(Charge::Vacuum, &self.vacuum), (Charge::Tau, &self.tau)].into_iter()
    }
}

impl<T> Index<Charge> for Sectors<T> {
    type Output = T;

    fn index(&self, c: Charge) -> &T {
        match c.index() {
            0 => &self.vacuum,
            _ => &self.tau,
        }
    }
}

impl<T> IndexMut<Charge> for Sectors<T> {
    fn index_mut(&mut self, c: Charge) -> &mut T {
        match c.index() {
            0 => &mut self.vacuum,
            _ => &mut self.tau,
        }
    }
}

/// Admissible outcomes of fusing `a` with `b`, in ascending order.
pub fn fuse(a: Charge, b: Charge) -> Vec<Charge> {
    match (a, b) {
        (Charge::Vacuum, x) | (x, Charge::Vacuum) => vec![x],
        (Charge::Tau, Charge::Tau) => vec![Charge::Vacuum, Charge::Tau],
    }
}

pub fn quantum_dimension(a: Charge) -> f64 {
    match a {
        Charge::Vacuum => 1.0,
        Charge::Tau => D_TAU,
    }
}

/// Numerical data of the Fibonacci model.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelConstants {
    pub d_tau: f64,
    /// `F^τ_{τττ}` in the basis (vacuum, τ) of the intermediate charge.
    pub f_matrix: Matrix2<f64>,
    /// `R_ττ` with rows/columns labelled by the fusion channel (vacuum, τ).
    pub r_matrix: Matrix2<C64>,
}

impl ModelConstants {
    pub fn fibonacci() -> Self {
        let d = (1.0 + 5f64.sqrt()) / 2.0;
        let a = 1.0 / d;
        let b = 1.0 / d.sqrt();
        let f_matrix = Matrix2::new(a, b, b, -a);
        let r1 = C64::from_polar(1.0, 4.0 * std::f64::consts::PI / 5.0);
        let rt = -C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 5.0);
        let r_matrix = Matrix2::new(r1, C64::new(0.0, 0.0), C64::new(0.0, 0.0), rt);
        ModelConstants {
            d_tau: d,
            f_matrix,
            r_matrix,
        }
    }

    /// R eigenvalue for two τ anyons fusing into `channel`.
    pub fn r_phase(&self, channel: Charge) -> C64 {
        match channel {
            Charge::Vacuum => self.r_matrix[(0, 0)],
            Charge::Tau => self.r_matrix[(1, 1)],
        }
    }

    pub fn f_complex(&self) -> Matrix2<C64> {
        self.f_matrix.map(|x| C64::new(x, 0.0))
    }
}

/// Model constants together with the braid generators on three τ anyons.
#[derive(Debug, Clone)]
pub struct ElementarySymbols {
    pub constants: ModelConstants,
    /// Exchange of the first and second τ.
    pub b1: SectorOperator,
    /// Exchange of the second and third τ, `F⁻¹ R F`.
    pub b2: SectorOperator,
}

/// Builds `b1 = R` and `b2 = F⁻¹RF` on the `1 ⊕ 2` dimensional space of
/// three τ anyons.
///
/// In the vacuum sector the only path has intermediate charge τ, so both
/// generators act there as the phase `R_τ`. In the τ sector the left-fused
/// basis is labelled by the first intermediate charge (vacuum, τ), on which
/// `b1` is diagonal.
pub fn elementary_symbols() -> ElementarySymbols {
    let constants = ModelConstants::fibonacci();
    let r = constants.r_matrix;
    let f = constants.f_complex();
    // F is real orthogonal and involutive, so F⁻¹ = F.
    let b2_tau = f * r * f;
    let vac = DMatrix::from_element(1, 1, constants.r_phase(Charge::Tau));
    let b1 = SectorOperator::new(
        3,
        Sectors::new(vac.clone(), DMatrix::from_iterator(2, 2, r.iter().copied())),
    )
    .expect("generator blocks match three-anyon sector dimensions");
    let b2 = SectorOperator::new(
        3,
        Sectors::new(vac, DMatrix::from_iterator(2, 2, b2_tau.iter().copied())),
    )
    .expect("generator blocks match three-anyon sector dimensions");
    ElementarySymbols { constants, b1, b2 }
}

/// Number of left-to-right fusion paths of `n` τ anyons ending at `total`.
///
/// # Panics
/// If `n > MAX_FUSION_ANYONS`.
pub fn fusion_dim(n: u32, total: Charge) -> u128 {
    assert!(
        n <= MAX_FUSION_ANYONS,
        "fusion_dim supports at most {MAX_FUSION_ANYONS} anyons"
    );
    // (paths ending at vacuum, paths ending at τ) after k anyons
    let (mut vac, mut tau): (u128, u128) = (1, 0);
    for _ in 0..n {
        // vacuum × τ = τ ; τ × τ = vacuum + τ
        let next_vac = tau;
        let next_tau = vac + tau;
        vac = next_vac;
        tau = next_tau;
    }
    match total {
        Charge::Vacuum => vac,
        Charge::Tau => tau,
    }
}

/// Sector dimension as `usize`, for matrix shapes.
pub(crate) fn sector_dim(n: u32, total: Charge) -> usize {
    usize::try_from(fusion_dim(n, total)).expect("sector dimension fits in usize")
}

/// Exact Fibonacci number `F(n)` with `F(0) = 0`, `F(1) = 1`.
pub fn fibonacci(n: u32) -> Result<u128> {
    // `b` runs one term ahead and may overflow before `a` does.
    let (mut a, mut b): (u128, Option<u128>) = (0, Some(1));
    for _ in 0..n {
        let next = b.ok_or_else(|| Error::Overflow(format!("F({n})")))?;
        b = a.checked_add(next);
        a = next;
    }
    Ok(a)
}

/// Binet's closed form `(d^n − (−d)^{−n}) / (2d − 1)` rounded to the nearest
/// integer.
///
/// Fails once the floating-point error bound of the evaluation can reach
/// one half, i.e. when rounding could pick the wrong integer.
pub fn binet(n: u32) -> Result<u64> {
    let d = D_TAU;
    let exp = i32::try_from(n).map_err(|_| Error::Overflow(format!("binet({n})")))?;
    let value = (d.powi(exp) - (-d).powi(-exp)) / (2.0 * d - 1.0);
    let err_bound = value.abs() * f64::from(n + 4) * f64::EPSILON;
    if !value.is_finite() || err_bound >= 0.5 || value >= u64::MAX as f64 {
        return Err(Error::Overflow(format!("binet({n})")));
    }
    Ok(value.round() as u64)
}
