use std::f64::consts::PI;

use ptbundle::special::{artin_l2_weeks, weeks_volume};

/// Exponents of `Π(1 − qⁿ) = Σ (−1)^j q^{j(3j−1)/2}` up to `limit`.
fn pentagonal(limit: usize) -> Vec<(usize, i64)> {
    let mut terms = vec![(0, 1)];
    for j in 1.. {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let a = j * (3 * j - 1) / 2;
        let b = j * (3 * j + 1) / 2;
        if a > limit {
            break;
        }
        terms.push((a, sign));
        if b <= limit {
            terms.push((b, sign));
        }
    }
    terms
}

/// `L(2, ρ) = Σ aₙ/n²` with `Σ aₙqⁿ = q·Π(1 − qⁿ)(1 − q²³ⁿ)`, summed
/// directly with Neumaier compensation.
fn eta_product_l2(terms: usize) -> f64 {
    let mut coeffs = vec![0i64; terms + 1];
    let small = pentagonal(terms);
    for &(i, si) in &small {
        for &(j, sj) in &small {
            let m = 1 + i + 23 * j;
            if m > terms {
                break;
            }
            coeffs[m] += si * sj;
        }
    }
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for (n, &a) in coeffs.iter().enumerate().skip(1) {
        if a == 0 {
            continue;
        }
        let term = a as f64 / (n as f64 * n as f64);
        let t = sum + term;
        comp += if sum.abs() >= term.abs() { (sum - t) + term } else { (term - t) + sum };
        sum = t;
    }
    sum + comp
}

#[test]
fn first_coefficients_match_splitting_of_cubic() {
    // aₚ = (number of roots of x³ − x − 1 mod p) − 1 for p ≠ 23
    let mut coeffs = vec![0i64; 200];
    let small = pentagonal(199);
    for &(i, si) in &small {
        for &(j, sj) in &small {
            let m = 1 + i + 23 * j;
            if m < 200 {
                coeffs[m] += si * sj;
            }
        }
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73] {
        let roots = (0..p).filter(|x| (x * x * x + 2 * p - x - 1) % p == 0).count() as i64;
        assert_eq!(coeffs[p as usize], roots - 1, "p={p}");
    }
}

#[test]
fn weeks_volume_matches_direct_eta_summation() {
    let direct = eta_product_l2(4_000_000);
    assert!((direct - artin_l2_weeks()).abs() < 2e-7, "{direct} vs {}", artin_l2_weeks());
    let vol = 3.0 * 23f64.powf(1.5) * (PI * PI / 6.0) * direct / (4.0 * PI.powi(4));
    assert!((vol - weeks_volume()).abs() < 1e-6);
    assert!((weeks_volume() - 0.9427074).abs() < 1e-6);
}
