mod common;

use common::{decode, Exhaustive};
use fibpad::braid::{compile_unitary, generator_tau_block, haar_unitary, word_distance, BraidWord};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn decode_enumerates_shortlex() {
    let mut prev = BraidWord::empty();
    for len in 1..=5 {
        let count = 4 * 3usize.pow(len as u32 - 1);
        for k in 0..count {
            let w = decode(len, k);
            assert_eq!(w.len(), len);
            assert!(prev < w);
            prev = w;
        }
    }
}

#[test]
fn meet_in_the_middle_matches_enumeration() {
    for seed in [1u64, 2, 3] {
        let target = haar_unitary(&mut ChaCha8Rng::seed_from_u64(seed));
        let oracle = Exhaustive::new(&target, 10);
        for len in 0..=10 {
            let (word, dist) = oracle.best(len);
            let r = compile_unitary(&target, len).unwrap();
            assert_eq!(r.word, word, "seed {seed}, len {len}");
            assert_eq!(r.distance, dist);
            assert_eq!(word_distance(&r.word, &target), r.distance);
        }
    }
}

#[test]
fn products_of_generators_are_found() {
    let w: BraidWord = "g1 g2^-1 g1 g1 g2".parse().unwrap();
    let target = fibpad::braid::evaluate_tau(&w);
    let r = compile_unitary(&target, 6).unwrap();
    assert!(r.distance <= 1e-12);
    assert!(r.word.len() <= w.len());
    let phased = generator_tau_block(fibpad::braid::Letter::G2)
        .map(|z| z * nalgebra::Complex::new(0.0, 1.0));
    let r = compile_unitary(&phased, 3).unwrap();
    assert_eq!(r.word.to_string(), "g2");
}
