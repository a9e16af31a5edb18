//! Braid words on three τ anyons and a meet-in-the-middle compiler for
//! τ-sector gates.
//!
//! The τ block of a word is projected to `SU(2)` and stored as a unit
//! quaternion. The phase-invariant operator-norm distance between two
//! unitaries is then the chordal distance `min(|q_a − q_b|, |q_a + q_b|)`,
//! and left multiplication by a unit quaternion is an isometry. That turns
//! the split `w = u·v` into a nearest-neighbour query per left half.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use nalgebra::{DMatrix, Matrix2};
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::anyon::{elementary_symbols, Charge, Sectors};
use crate::linalg::SectorOperator;
use crate::{Error, Result, C64};

/// Longest word `compile_unitary` accepts.
pub const MAX_COMPILE_LENGTH: usize = 24;
/// Unitarity residual allowed on a compile target.
pub const TARGET_UNITARITY_TOL: f64 = 1e-10;
/// Two words whose distances differ by less than this count as tied.
pub const TIE_TOL: f64 = 1e-12;
/// Extra radius when collecting candidate pairs, covering rounding in the
/// quaternion products.
const CANDIDATE_SLACK: f64 = 1e-9;

type Quat = [f64; 4];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    G1,
    G1Inv,
    G2,
    G2Inv,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::G1, Letter::G1Inv, Letter::G2, Letter::G2Inv];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::G1 => Letter::G1Inv,
            Letter::G1Inv => Letter::G1,
            Letter::G2 => Letter::G2Inv,
            Letter::G2Inv => Letter::G2,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::G1 => "g1",
            Letter::G1Inv => "g1^-1",
            Letter::G2 => "g2",
            Letter::G2Inv => "g2^-1",
        })
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "g1" | "b1" => Ok(Letter::G1),
            "g1^-1" | "g1'" | "g1⁻¹" | "b1^-1" => Ok(Letter::G1Inv),
            "g2" | "b2" => Ok(Letter::G2),
            "g2^-1" | "g2'" | "g2⁻¹" | "b2^-1" => Ok(Letter::G2Inv),
            other => Err(Error::Parse(format!("unknown braid letter {other:?}"))),
        }
    }
}

/// Freely reduced word over `g1, g2` and their inverses.
///
/// Words are ordered shortlex: shorter first, then letter by letter in the
/// order `g1 < g1^-1 < g2 < g2^-1`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BraidWord {
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord { letters: out }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        BraidWord::new(self.letters.iter().chain(other.letters.iter()).copied())
    }
}

impl Ord for BraidWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for BraidWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    /// Letters separated by whitespace or commas; `e` or an empty string is
    /// the identity.
    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty() && *t != "e")
            .map(str::parse)
            .collect::<Result<Vec<Letter>>>()?;
        Ok(BraidWord::new(letters))
    }
}

impl Serialize for BraidWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BraidWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompileResult {
    pub word: BraidWord,
    /// Phase-invariant operator-norm distance in `[0, √2]`.
    pub distance: f64,
    pub target: Matrix2<C64>,
}

struct Generators {
    tau: [Matrix2<C64>; 4],
    vacuum: [C64; 4],
    quats: [Quat; 4],
}

fn generators() -> &'static Generators {
    static GENS: OnceLock<Generators> = OnceLock::new();
    GENS.get_or_init(|| {
        let sym = elementary_symbols();
        let tau_of = |op: &SectorOperator| {
            let m = op.block(Charge::Tau);
            Matrix2::new(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)])
        };
        let (t1, t2) = (tau_of(&sym.b1), tau_of(&sym.b2));
        let tau = [t1, t1.adjoint(), t2, t2.adjoint()];
        let v1 = sym.b1.block(Charge::Vacuum)[(0, 0)];
        let v2 = sym.b2.block(Charge::Vacuum)[(0, 0)];
        let vacuum = [v1, v1.conj(), v2, v2.conj()];
        let quats = tau.map(|m| su2_quaternion(&m));
        Generators { tau, vacuum, quats }
    })
}

/// τ block of a single generator.
pub fn generator_tau_block(l: Letter) -> Matrix2<C64> {
    generators().tau[l.index()]
}

/// τ block of `evaluate_word(w)`, multiplied left to right.
pub fn evaluate_tau(w: &BraidWord) -> Matrix2<C64> {
    let g = generators();
    w.letters
        .iter()
        .fold(Matrix2::identity(), |acc, l| acc * g.tau[l.index()])
}

/// `M(w) = M(l₁)·M(l₂)·…·M(l_k)` for `w = l₁ l₂ … l_k`.
///
/// The product is formed in reading order, so the rightmost letter is the
/// first exchange applied to a state. Both sectors are returned; the vacuum
/// block is a phase.
pub fn evaluate_word(w: &BraidWord) -> SectorOperator {
    let g = generators();
    let tau = evaluate_tau(w);
    let vac = w
        .letters
        .iter()
        .fold(C64::new(1.0, 0.0), |acc, l| acc * g.vacuum[l.index()]);
    SectorOperator::new(
        3,
        Sectors::new(
            DMatrix::from_element(1, 1, vac),
            DMatrix::from_iterator(2, 2, tau.iter().copied()),
        ),
    )
    .expect("three-anyon sector dimensions are 1 and 2")
}

/// Unit quaternion of `m/√det m`, defined up to sign.
///
/// With `E₁ = diag(i, −i)`, `E₂ = [[0, 1], [−1, 0]]`, `E₃ = [[0, i], [i, 0]]`
/// the matrix `q₀I + q₁E₁ + q₂E₂ + q₃E₃` multiplies like the Hamilton
/// quaternion `q₀ + q₁i + q₂j + q₃k`.
pub(crate) fn su2_quaternion(m: &Matrix2<C64>) -> Quat {
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let s = det.sqrt();
    let u = m.map(|z| z / s);
    let a = (u[(0, 0)] + u[(1, 1)].conj()) * 0.5;
    let b = (u[(0, 1)] - u[(1, 0)].conj()) * 0.5;
    let q = [a.re, a.im, b.re, b.im];
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    q.map(|x| x / n)
}

fn qmul(a: &Quat, b: &Quat) -> Quat {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

fn qconj(a: &Quat) -> Quat {
    [a[0], -a[1], -a[2], -a[3]]
}

fn qdist(a: &Quat, b: &Quat) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

fn chordal(a: &Quat, b: &Quat) -> f64 {
    qdist(a, b).min(qdist(a, &b.map(|x| -x)))
}

/// `min_φ ‖A − e^{iφ}B‖₂` for unitary `A`, `B`.
///
/// If `B†A` has eigenphases `±θ` after removing its determinant, the
/// optimum is `2 sin(θ/2)`, which is the chordal quaternion distance.
pub fn phase_invariant_distance(a: &Matrix2<C64>, b: &Matrix2<C64>) -> f64 {
    chordal(&su2_quaternion(a), &su2_quaternion(b))
}

/// Distance from the τ block of `w` to `target`.
pub fn word_distance(w: &BraidWord, target: &Matrix2<C64>) -> f64 {
    phase_invariant_distance(&evaluate_tau(w), target)
}

/// Haar-random element of `U(2)`.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R) -> Matrix2<C64> {
    let mut q: Quat = [0.0; 4];
    for x in &mut q {
        *x = rng.sample(StandardNormal);
    }
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let q = q.map(|x| x / n);
    let a = C64::new(q[0], q[1]);
    let b = C64::new(q[2], q[3]);
    let phase = C64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
    Matrix2::new(a, b, -b.conj(), a.conj()).map(|z| z * phase)
}

/// Largest entry of `|M†M − I|`; NaN if any entry is not finite.
fn unitarity_residual(m: &Matrix2<C64>) -> f64 {
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return f64::NAN;
    }
    (m.adjoint() * m - Matrix2::identity())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Words stored as a prefix tree in shortlex order.
struct WordTree {
    parent: Vec<u32>,
    letter: Vec<Option<Letter>>,
    first: Vec<Option<Letter>>,
    quat: Vec<Quat>,
}

impl WordTree {
    fn build(max_len: usize) -> Self {
        let g = generators();
        let mut t = WordTree {
            parent: vec![0],
            letter: vec![None],
            first: vec![None],
            quat: vec![[1.0, 0.0, 0.0, 0.0]],
        };
        let mut level = 0..1;
        for _ in 0..max_len {
            let start = t.parent.len();
            for i in level.clone() {
                for l in Letter::ALL {
                    if t.letter[i] == Some(l.inverse()) {
                        continue;
                    }
                    t.parent.push(i as u32);
                    t.letter.push(Some(l));
                    t.first.push(t.first[i].or(Some(l)));
                    let q = qmul(&t.quat[i], &g.quats[l.index()]);
                    t.quat.push(q);
                }
            }
            level = start..t.parent.len();
        }
        t
    }

    fn word(&self, mut i: usize) -> Vec<Letter> {
        let mut out = Vec::new();
        while let Some(l) = self.letter[i] {
            out.push(l);
            i = self.parent[i] as usize;
        }
        out.reverse();
        out
    }
}

/// Right halves bucketed by first letter, keyed by `±q` and sorted on the
/// first quaternion coordinate.
struct HalfTable {
    buckets: Vec<Bucket>,
}

#[derive(Default)]
struct Bucket {
    key0: Vec<f64>,
    entries: Vec<(Quat, u32)>,
}

impl Bucket {
    fn nearest(&self, p: &Quat) -> f64 {
        let mut best = f64::INFINITY;
        let start = self.key0.partition_point(|&k| k < p[0]);
        for i in start..self.key0.len() {
            if self.key0[i] - p[0] >= best {
                break;
            }
            best = best.min(qdist(&self.entries[i].0, p));
        }
        for i in (0..start).rev() {
            if p[0] - self.key0[i] >= best {
                break;
            }
            best = best.min(qdist(&self.entries[i].0, p));
        }
        best
    }

    fn within(&self, p: &Quat, radius: f64, out: &mut Vec<u32>) {
        let lo = self.key0.partition_point(|&k| k < p[0] - radius);
        for i in lo..self.key0.len() {
            if self.key0[i] > p[0] + radius {
                break;
            }
            if qdist(&self.entries[i].0, p) <= radius {
                out.push(self.entries[i].1);
            }
        }
    }
}

impl HalfTable {
    /// Bucket index 4 holds the empty word.
    fn build(tree: &WordTree) -> Self {
        let mut buckets: Vec<Bucket> = (0..5).map(|_| Bucket::default()).collect();
        for (i, q) in tree.quat.iter().enumerate() {
            let b = tree.first[i].map_or(4, Letter::index);
            buckets[b].entries.push((*q, i as u32));
            buckets[b].entries.push((q.map(|x| -x), i as u32));
        }
        for b in &mut buckets {
            b.entries
                .sort_by(|x, y| x.0[0].total_cmp(&y.0[0]).then(x.1.cmp(&y.1)));
            b.key0 = b.entries.iter().map(|e| e.0[0]).collect();
        }
        HalfTable { buckets }
    }

    fn allowed(&self, last: Option<Letter>) -> impl Iterator<Item = &Bucket> {
        let banned = last.map(|l| l.inverse().index());
        self.buckets
            .iter()
            .enumerate()
            .filter(move |(i, _)| Some(*i) != banned)
            .map(|(_, b)| b)
    }
}

/// Best braid word of length at most `max_len` for the τ-sector `target`.
///
/// Among words within `TIE_TOL` of the minimum distance the shortlex-first
/// one is returned, so the result does not depend on thread scheduling.
pub fn compile_unitary(target: &Matrix2<C64>, max_len: usize) -> Result<CompileResult> {
    if max_len > MAX_COMPILE_LENGTH {
        return Err(Error::ResourceLimit(format!(
            "max_len {max_len} exceeds {MAX_COMPILE_LENGTH}"
        )));
    }
    let residual = unitarity_residual(target);
    if residual.is_nan() || residual > TARGET_UNITARITY_TOL {
        return Err(Error::NotUnitary(residual));
    }
    let qt = su2_quaternion(target);
    let left = WordTree::build(max_len.div_ceil(2));
    let right_tree = WordTree::build(max_len / 2);
    let table = HalfTable::build(&right_tree);
    let right = &right_tree;
    let probe = |i: usize| qmul(&qconj(&left.quat[i]), &qt);

    let best = (0..left.quat.len())
        .into_par_iter()
        .map(|i| {
            let p = probe(i);
            table
                .allowed(left.letter[i])
                .map(|b| b.nearest(&p))
                .fold(f64::INFINITY, f64::min)
        })
        .reduce(|| f64::INFINITY, f64::min);

    let radius = best + CANDIDATE_SLACK;
    let candidates: BTreeSet<BraidWord> = (0..left.quat.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let p = probe(i);
            let mut hits = Vec::new();
            for b in table.allowed(left.letter[i]) {
                b.within(&p, radius, &mut hits);
            }
            let u = left.word(i);
            hits.into_iter().map(move |j| {
                let mut w = u.clone();
                w.extend(right.word(j as usize));
                BraidWord::new(w)
            })
        })
        .collect();

    let scored: Vec<(BraidWord, f64)> = candidates
        .into_iter()
        .map(|w| {
            let d = word_distance(&w, target);
            (w, d)
        })
        .collect();
    let d_min = scored.iter().map(|x| x.1).fold(f64::INFINITY, f64::min);
    let (word, distance) = scored
        .into_iter()
        .find(|x| x.1 <= d_min + TIE_TOL)
        .expect("the empty word is always a candidate");
    Ok(CompileResult {
        word,
        distance,
        target: *target,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn brute_distance(a: &Matrix2<C64>, b: &Matrix2<C64>) -> f64 {
        // Dense phase scan refined by golden-section search on the best bracket.
        let f = |phi: f64| {
            let d = a - b.map(|z| z * C64::from_polar(1.0, phi));
            let h = d.adjoint() * d;
            let tr = (h[(0, 0)] + h[(1, 1)]).re;
            let det = (h[(0, 0)] * h[(1, 1)] - h[(0, 1)] * h[(1, 0)]).re;
            ((tr + (tr * tr - 4.0 * det).max(0.0).sqrt()) / 2.0).sqrt()
        };
        let n = 4000;
        let step = std::f64::consts::TAU / n as f64;
        let k = (0..n)
            .min_by(|&i, &j| f(i as f64 * step).total_cmp(&f(j as f64 * step)))
            .unwrap();
        let (mut lo, mut hi) = ((k as f64 - 1.0) * step, (k as f64 + 1.0) * step);
        for _ in 0..100 {
            let m1 = lo + (hi - lo) / 3.0;
            let m2 = hi - (hi - lo) / 3.0;
            if f(m1) < f(m2) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        f((lo + hi) / 2.0)
    }

    fn all_words(max_len: usize) -> Vec<BraidWord> {
        let mut out = vec![BraidWord::empty()];
        let mut level = vec![Vec::<Letter>::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &level {
                for l in Letter::ALL {
                    if w.last() == Some(&l.inverse()) {
                        continue;
                    }
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned().map(BraidWord::new));
            level = next;
        }
        out
    }

    #[test]
    fn free_reduction() {
        let w: BraidWord = "g1 g2 g2^-1 g1^-1 g2".parse().unwrap();
        assert_eq!(w.to_string(), "g2");
        assert!("g1 g1^-1".parse::<BraidWord>().unwrap().is_empty());
        assert!("g3".parse::<BraidWord>().is_err());
        let w: BraidWord = "g1, g2^-1".parse().unwrap();
        assert_eq!(w.inverse().to_string(), "g2 g1^-1");
        assert_eq!(w.concat(&w.inverse()), BraidWord::empty());
    }

    #[test]
    fn shortlex_order() {
        let a: BraidWord = "g2".parse().unwrap();
        let b: BraidWord = "g1 g1".parse().unwrap();
        let c: BraidWord = "g1 g2".parse().unwrap();
        assert!(a < b && b < c);
        assert!(BraidWord::empty() < a);
    }

    #[test]
    fn evaluation_examples() {
        let sym = elementary_symbols();
        assert_eq!(
            evaluate_word(&BraidWord::empty()),
            SectorOperator::identity(3)
        );
        let g1 = evaluate_word(&"g1".parse().unwrap());
        assert!(g1.max_abs_diff(&sym.b1).unwrap() < 1e-15);
        let r = sym.constants.r_matrix;
        assert!((g1.block(Charge::Tau)[(0, 0)] - r[(0, 0)]).norm() < 1e-15);
        let g2 = evaluate_word(&"g2".parse().unwrap());
        assert!(g2.max_abs_diff(&sym.b2).unwrap() < 1e-15);
        let ab = evaluate_word(&"g1 g2".parse().unwrap());
        assert!(ab.max_abs_diff(&sym.b1.mul(&sym.b2).unwrap()).unwrap() < 1e-15);
    }

    #[test]
    fn braid_relation_and_unitarity() {
        let x = evaluate_word(&"g1 g2 g1".parse().unwrap());
        let y = evaluate_word(&"g2 g1 g2".parse().unwrap());
        assert!(x.max_abs_diff(&y).unwrap() <= 1e-12);
        for w in all_words(5) {
            assert!(evaluate_word(&w).unitarity_residual() <= 1e-12, "{w}");
        }
    }

    #[test]
    fn quaternion_map_is_a_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let a = haar_unitary(&mut rng);
            let b = haar_unitary(&mut rng);
            let lhs = su2_quaternion(&(a * b));
            let rhs = qmul(&su2_quaternion(&a), &su2_quaternion(&b));
            assert!(chordal(&lhs, &rhs) < 1e-12);
        }
    }

    #[test]
    fn distance_matches_phase_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let a = haar_unitary(&mut rng);
            let b = haar_unitary(&mut rng);
            let d = phase_invariant_distance(&a, &b);
            let bd = brute_distance(&a, &b);
            // At the optimum both singular values coincide, so the scan's
            // closed-form norm only carries about half the digits.
            assert!((d - bd).abs() < 1e-7, "{d} vs {bd}");
            assert!((0.0..=std::f64::consts::SQRT_2 + 1e-12).contains(&d));
        }
    }

    #[test]
    fn distance_is_phase_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = haar_unitary(&mut rng);
        let b = haar_unitary(&mut rng);
        let d = phase_invariant_distance(&a, &b);
        let rot = b.map(|z| z * C64::from_polar(1.0, 1.234));
        assert!((phase_invariant_distance(&a, &rot) - d).abs() < 1e-12);
    }

    #[test]
    fn compiles_generators_exactly() {
        for l in Letter::ALL {
            let r = compile_unitary(&generator_tau_block(l), 4).unwrap();
            assert_eq!(r.word.letters(), &[l]);
            assert!(r.distance <= 1e-12);
        }
        let r = compile_unitary(&Matrix2::identity(), 6).unwrap();
        assert!(r.word.is_empty());
        assert_eq!(r.distance, 0.0);
    }

    #[test]
    fn agrees_with_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let target = haar_unitary(&mut rng);
        for len in 0..=6 {
            let words = all_words(len);
            let scores: Vec<f64> = words.iter().map(|w| word_distance(w, &target)).collect();
            let d_min = scores.iter().copied().fold(f64::INFINITY, f64::min);
            let k = scores.iter().position(|&d| d <= d_min + TIE_TOL).unwrap();
            let r = compile_unitary(&target, len).unwrap();
            assert_eq!(r.word, words[k], "len {len}");
            assert_eq!(r.distance, scores[k]);
        }
    }

    #[test]
    fn guards() {
        assert!(matches!(
            compile_unitary(&Matrix2::identity(), 25),
            Err(Error::ResourceLimit(_))
        ));
        let bad = Matrix2::new(
            C64::new(1.0, 0.0),
            C64::new(0.1, 0.0),
            C64::new(0.0, 0.0),
            C64::new(1.0, 0.0),
        );
        assert!(matches!(
            compile_unitary(&bad, 2),
            Err(Error::NotUnitary(_))
        ));
        let nan = Matrix2::from_element(C64::new(f64::NAN, 0.0));
        assert!(compile_unitary(&nan, 2).is_err());
    }

    #[test]
    fn serde_roundtrip() {
        let w: BraidWord = "g1 g2^-1 g2^-1".parse().unwrap();
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, "\"g1 g2^-1 g2^-1\"");
        assert_eq!(serde_json::from_str::<BraidWord>(&s).unwrap(), w);
    }
}
