//! Oracles shared by the integration and acceptance tests.
#![allow(dead_code)]

use fibpad::braid::{generator_tau_block, phase_invariant_distance, BraidWord, Letter, TIE_TOL};
use fibpad::C64;
use nalgebra::Matrix2;
use num_rational::Ratio;

/// Fibonacci numbers by plain iteration, `F(0) = 0`, `F(1) = 1`.
pub fn fib(n: u32) -> u128 {
    let (mut a, mut b) = (0u128, 1u128);
    for _ in 0..n {
        let c = a + b;
        a = b;
        b = c;
    }
    a
}

/// Largest `N` such that `N` unit vectors in `E⁴` can share the pairwise
/// product `−p/(1−p)`, decided in exact arithmetic.
///
/// The Gram matrix `(1−c)I + cJ` has eigenvalues `1−c` and `1+(N−1)c`, so it
/// is PSD iff `p ≤ 1/N`, and its rank drops to `N−1` only at `p = 1/N`.
pub fn step_oracle(p: Ratio<i128>) -> usize {
    let mut best = 1;
    for n in 2..=5i128 {
        let bound = Ratio::new(1, n);
        let fits = p <= bound;
        let rank = if p == bound { n - 1 } else { n };
        if fits && rank <= 4 {
            best = n as usize;
        }
    }
    best
}

/// Every reduced word up to a length, scored against one target.
///
/// Words of each length are visited in lexicographic order by depth-first
/// search over prefix products, so the distances of length `k` are stored
/// in shortlex order.
pub struct Exhaustive {
    pub dists: Vec<Vec<f64>>,
}

impl Exhaustive {
    pub fn new(target: &Matrix2<C64>, max_len: usize) -> Self {
        let gens: Vec<Matrix2<C64>> = Letter::ALL
            .iter()
            .map(|&l| generator_tau_block(l))
            .collect();
        let mut dists = Vec::with_capacity(max_len + 1);
        for len in 0..=max_len {
            let mut out = Vec::new();
            let mut stack: Vec<Matrix2<C64>> = vec![Matrix2::identity()];
            let mut word: Vec<usize> = Vec::new();
            dfs(len, &gens, target, &mut stack, &mut word, &mut out);
            dists.push(out);
        }
        Exhaustive { dists }
    }

    /// Minimum over words of length `≤ max_len`, then the shortlex-first word
    /// within `TIE_TOL` of it.
    pub fn best(&self, max_len: usize) -> (BraidWord, f64) {
        let d_min = self.dists[..=max_len]
            .iter()
            .flatten()
            .copied()
            .fold(f64::INFINITY, f64::min);
        for (len, ds) in self.dists[..=max_len].iter().enumerate() {
            if let Some(k) = ds.iter().position(|&d| d <= d_min + TIE_TOL) {
                return (decode(len, k), ds[k]);
            }
        }
        unreachable!("the minimum is attained")
    }
}

fn dfs(
    len: usize,
    gens: &[Matrix2<C64>],
    target: &Matrix2<C64>,
    stack: &mut Vec<Matrix2<C64>>,
    word: &mut Vec<usize>,
    out: &mut Vec<f64>,
) {
    if word.len() == len {
        out.push(phase_invariant_distance(stack.last().unwrap(), target));
        return;
    }
    for l in 0..4 {
        if let Some(&prev) = word.last() {
            if Letter::ALL[prev].inverse() == Letter::ALL[l] {
                continue;
            }
        }
        let next = stack.last().unwrap() * gens[l];
        stack.push(next);
        word.push(l);
        dfs(len, gens, target, stack, word, out);
        word.pop();
        stack.pop();
    }
}

/// The `k`-th reduced word of length `len` in lexicographic order.
pub fn decode(len: usize, mut k: usize) -> BraidWord {
    if len == 0 {
        return BraidWord::empty();
    }
    let mut digits = vec![0usize; len];
    for d in digits.iter_mut().skip(1).rev() {
        *d = k % 3;
        k /= 3;
    }
    digits[0] = k;
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    for (i, d) in digits.into_iter().enumerate() {
        let l = if i == 0 {
            Letter::ALL[d]
        } else {
            let banned = letters[i - 1].inverse();
            *Letter::ALL.iter().filter(|&&l| l != banned).nth(d).unwrap()
        };
        letters.push(l);
    }
    BraidWord::new(letters)
}
