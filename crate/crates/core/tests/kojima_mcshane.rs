use ptbundle::bounds::{km_check, wp_translation_lower, SurfaceType};
use ptbundle::mapping_class::{Letter, LrWord, MappingClass};
use ptbundle::solver::{volume_of_word, SolverOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn chain_holds_for_random_bundles() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let torus = SurfaceType::PUNCTURED_TORUS;
    let mut checked = 0;
    while checked < 100 {
        let len = rng.gen_range(2..=12);
        let word = LrWord::new((0..len).map(|_| if rng.gen() { Letter::R } else { Letter::L }).collect());
        if !word.has_both_letters() {
            continue;
        }
        let class = MappingClass::from_word(&word).unwrap();
        let teich = class.teich_translation_length().unwrap();
        let vol = volume_of_word(&word, &SolverOptions::default()).unwrap().volume;
        let km = km_check(vol, teich, torus).unwrap();
        assert!(km.holds, "{word}: vol {vol}, 3π·log λ {}", 3.0 * std::f64::consts::PI * teich);
        assert!(wp_translation_lower(vol, torus).unwrap() > 0.0);
        checked += 1;
    }
}
