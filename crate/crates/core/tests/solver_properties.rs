use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use ptbundle::mapping_class::{psi_n, Letter, LrWord};
use ptbundle::solver::{
    row_angle_sum, row_log_defect, row_unlogged_defect, shape_triple, solve_shapes_with, volume,
    volume_of_word, SolverOptions,
};
use ptbundle::special::{lobachevsky, v3, v8};
use ptbundle::triangulation::{build_layered, GluingSystem};
use ptbundle::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn both_letter_words(max_len: usize) -> Vec<LrWord> {
    (2..=max_len)
        .flat_map(|len| {
            (0u32..1 << len).map(move |bits| {
                LrWord::new((0..len).map(|i| if bits >> i & 1 == 1 { Letter::R } else { Letter::L }).collect())
            })
        })
        .filter(|w| w.has_both_letters())
        .collect()
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> LrWord {
    loop {
        let len = rng.gen_range(2..=max_len);
        let w = LrWord::new((0..len).map(|_| if rng.gen() { Letter::R } else { Letter::L }).collect());
        if w.has_both_letters() {
            return w;
        }
    }
}

fn system(word: &LrWord) -> GluingSystem {
    build_layered(word).unwrap().gluing_equations().unwrap()
}

fn vol(word: &LrWord) -> f64 {
    volume_of_word(word, &SolverOptions::default()).unwrap().volume
}

fn check_word(word: &LrWord) {
    let sys = system(word);
    let result = volume_of_word(word, &SolverOptions::default()).unwrap();
    let shapes = &result.solution.shapes;
    assert!(result.solution.geometric, "{word}");
    assert!(result.solution.residual < 1e-10, "{word}: {}", result.solution.residual);
    for row in &sys.edges {
        assert!(row_unlogged_defect(row, shapes) < 1e-9, "{word}");
        assert!((row_angle_sum(row, shapes) - 2.0 * PI).abs() < 1e-9, "{word}");
    }
    for row in &sys.cusp {
        assert!(row_log_defect(row, shapes).norm() < 1e-8, "{word}");
    }
    let v = result.volume;
    assert!(v >= 2.0 * v3() - 1e-8, "{word}: {v}");
    for other in [word.rotated(1), word.rotated(word.len() / 2), word.reversed(), word.swapped()] {
        assert!((vol(&other) - v).abs() < 1e-9, "{word} vs {other}");
    }
}

#[test]
fn exhaustive_words_to_length_8() {
    for w in both_letter_words(8) {
        check_word(&w);
    }
}

#[test]
fn random_words_to_length_20() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for _ in 0..50 {
        check_word(&random_word(&mut rng, 20));
    }
}

/// Maximizes `Σ Л(θ)` over angle structures (positive angles, `π` per
/// tetrahedron, `2π` per edge). The maximum is the complete structure, so
/// no cusp condition enters.
fn max_volume_angle_structure(sys: &GluingSystem, hint: &[f64]) -> (f64, Vec<f64>) {
    let k = sys.num_tetrahedra;
    let n = 3 * k;
    let mut c = DMatrix::<f64>::zeros(2 * k, n);
    let mut b = DVector::<f64>::zeros(2 * k);
    for i in 0..k {
        for j in 0..3 {
            c[(i, 3 * i + j)] = 1.0;
        }
        b[i] = PI;
    }
    for (r, row) in sys.edges.iter().enumerate() {
        for i in 0..k {
            c[(k + r, 3 * i)] = row.a[i] as f64;
            c[(k + r, 3 * i + 1)] = row.b[i] as f64;
            c[(k + r, 3 * i + 2)] = row.c[i] as f64;
        }
        b[k + r] = 2.0 * PI;
    }
    let svd = c.clone().svd(true, true);
    let gram = (c.transpose() * &c).symmetric_eigen();
    let null: Vec<DVector<f64>> = (0..n)
        .filter(|&j| gram.eigenvalues[j].abs() < 1e-9)
        .map(|j| gram.eigenvectors.column(j).into_owned())
        .collect();
    let basis = DMatrix::from_columns(&null);

    // start from the regular angles pulled onto the constraint set, or the hint
    let x0 = svd.solve(&b, 1e-9).unwrap();
    let regular = DVector::from_element(n, PI / 3.0);
    let mut x = &x0 + &basis * (basis.transpose() * (&regular - &x0));
    if x.iter().any(|&t| t <= 1e-3 || t >= PI - 1e-3) {
        // knock the hint off the optimum inside the feasible set
        let h = DVector::from_column_slice(hint);
        let dir = &basis * DVector::from_fn(basis.ncols(), |i, _| ((i * 7919 % 13) as f64 - 6.0) / 6.0);
        let room = h.iter().map(|&t| t.min(PI - t)).fold(f64::INFINITY, f64::min);
        let scale = 0.5 * room / dir.amax();
        x = &h + dir * scale;
    }
    let objective = |x: &DVector<f64>| x.iter().map(|&t| lobachevsky(t)).sum::<f64>();
    for _ in 0..200 {
        let grad = DVector::from_iterator(n, x.iter().map(|&t| -(2.0 * t.sin()).abs().ln()));
        let hess = DMatrix::from_diagonal(&DVector::from_iterator(n, x.iter().map(|&t| -1.0 / t.tan())));
        let g = basis.transpose() * &grad;
        if g.norm() < 1e-13 {
            break;
        }
        let h = basis.transpose() * hess * &basis;
        let step = &basis * h.lu().solve(&(-&g)).unwrap();
        let mut scale = 1.0;
        let current = objective(&x);
        loop {
            let trial = &x + &step * scale;
            if trial.iter().all(|&t| t > 0.0 && t < PI) && objective(&trial) >= current - 1e-15 {
                x = trial;
                break;
            }
            scale *= 0.5;
            assert!(scale > 1e-12, "line search failed");
        }
    }
    (objective(&x), x.iter().copied().collect())
}

#[test]
fn volumes_agree_with_angle_structure_maximum() {
    let mut words: Vec<LrWord> = ["LR", "LLR", "LLRR", "LRLRR", "LLLRRR", "LRRLLLR"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    words.extend((0..10).map(|_| random_word(&mut rng, 12)));
    for w in &words {
        let sys = system(w);
        let result = volume_of_word(w, &SolverOptions::default()).unwrap();
        // hint: a slightly perturbed copy of the solved angles
        let hint: Vec<f64> = result
            .solution
            .shapes
            .iter()
            .flat_map(|&z| shape_triple(z).map(|s| s.arg()))
            .collect();
        let (max_vol, angles) = max_volume_angle_structure(&sys, &hint);
        assert!((max_vol - result.volume).abs() < 1e-9, "{w}: {max_vol} vs {}", result.volume);
        for (a, h) in angles.iter().zip(&hint) {
            assert!((a - h).abs() < 1e-6, "{w}");
        }
    }
}

#[test]
fn double_twist_family_increases_towards_two_octahedra() {
    let limit = 2.0 * v8();
    let mut last = 0.0;
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for n in 1..=25 {
        let word = psi_n(n).unwrap().lr_decomposition().unwrap().clone();
        let v = vol(&word);
        assert!(v > last, "n={n}");
        assert!(v < limit);
        // re-solve from perturbed regular shapes
        let sys = system(&word);
        let start: Vec<Complex64> = (0..word.len())
            .map(|_| Complex64::from_polar(rng.gen_range(0.8..1.2), PI / 3.0 + rng.gen_range(-0.2..0.2)))
            .collect();
        let sol = solve_shapes_with(&sys, &SolverOptions::default(), Some(&start)).unwrap();
        assert!((volume(&word, &sol).unwrap().volume - v).abs() < 1e-9, "n={n}");
        last = v;
    }
    assert!((vol(&"LR".parse().unwrap()) - 2.0 * v3()).abs() < 1e-12);
    assert!((vol(&"LLRR".parse().unwrap()) - v8()).abs() < 1e-10);
}

#[test]
fn double_twist_deficit_decays_like_inverse_square() {
    // observed: (2V₈ − vol(ψₙ))·n² settles near a constant
    let limit = 2.0 * v8();
    let scaled = |n: u32| {
        let word = psi_n(n).unwrap().lr_decomposition().unwrap().clone();
        (limit - vol(&word)) * (n * n) as f64
    };
    let (a, b) = (scaled(20), scaled(25));
    assert!((a - b).abs() / b < 0.02, "{a} {b}");
}
