//! Transcendental constants behind the volume and length estimates.
//!
//! The Lobachevsky function and the Bloch–Wigner dilogarithm are evaluated
//! with double-precision power series after symmetry reductions; both share
//! one table of even zeta values.
//!
//! The Weeks volume comes from the Dedekind zeta function of the cubic field
//! `K` of discriminant `-23` (generated by a root of `x³ − x − 1`). Its
//! Galois closure is the Hilbert class field of `Q(sqrt(-23))`, so
//! `ζ_K(s) = ζ(s)·L(s, ρ)` with `ρ` the two-dimensional representation
//! induced from a cubic class group character. With the reduced forms
//! `Q₁ = x² + xy + 6y²` and `Q₂ = 2x² + xy + 3y²`,
//!
//! ```text
//! L(s, ρ)      = (Z_{Q₁}(s) − Z_{Q₂}(s)) / 2
//! ζ(s)·L(s, χ) = (Z_{Q₁}(s) + 2 Z_{Q₂}(s)) / 2
//! ```
//!
//! where `Z_Q` is the Epstein zeta function and `χ = χ₋₂₃` is the Kronecker
//! symbol `(-23/n)`. The second identity is checked against a direct
//! summation of the `L`-series.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const SERIES_TERMS: usize = 40;

/// Fundamental discriminant of the Weeks manifold's invariant trace field.
pub const WEEKS_DISCRIMINANT: i64 = -23;

/// The named constants that every bound is assembled from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    /// Volume of the regular ideal tetrahedron, `3 Л(π/3)`.
    pub v3: f64,
    /// Volume of the regular ideal octahedron, `8 Л(π/4)`.
    pub v8: f64,
    pub weeks_volume: f64,
    pub pi: f64,
}

impl Constants {
    /// Evaluated once per process.
    pub fn get() -> &'static Constants {
        static CONSTANTS: OnceLock<Constants> = OnceLock::new();
        CONSTANTS.get_or_init(|| Constants {
            v3: 3.0 * lobachevsky(PI / 3.0),
            v8: 8.0 * lobachevsky(PI / 4.0),
            weeks_volume: weeks_volume(),
            pi: PI,
        })
    }
}

pub fn v3() -> f64 {
    Constants::get().v3
}

pub fn v8() -> f64 {
    Constants::get().v8
}

/// `ζ(s)` for an even integer `s >= 2` by Euler–Maclaurin with a cutoff at 32.
fn zeta_even(s: u32) -> f64 {
    if s == 2 {
        return PI * PI / 6.0;
    }
    let sf = s as f64;
    let n = 32.0_f64;
    let head: f64 = (1..32).rev().map(|k| (k as f64).powf(-sf)).sum();
    let tail = n.powf(1.0 - sf) / (sf - 1.0) + 0.5 * n.powf(-sf) + sf * n.powf(-sf - 1.0) / 12.0
        - sf * (sf + 1.0) * (sf + 2.0) * n.powf(-sf - 3.0) / 720.0
        + sf * (sf + 1.0) * (sf + 2.0) * (sf + 3.0) * (sf + 4.0) * n.powf(-sf - 5.0) / 30240.0;
    head + tail
}

struct SeriesTables {
    /// `ζ(2k) / (k (2k+1) (2π)^{2k})`, the Clausen coefficients.
    clausen: [f64; SERIES_TERMS],
    /// `B_{2k} / (2k+1)!`, the dilogarithm coefficients in `u = -log(1-z)`.
    dilog: [f64; SERIES_TERMS],
}

fn tables() -> &'static SeriesTables {
    static TABLES: OnceLock<SeriesTables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut clausen = [0.0; SERIES_TERMS];
        let mut dilog = [0.0; SERIES_TERMS];
        let two_pi_sq = (2.0 * PI) * (2.0 * PI);
        let mut scale = 1.0;
        for k in 1..=SERIES_TERMS {
            scale /= two_pi_sq;
            let z = zeta_even(2 * k as u32);
            let kf = k as f64;
            clausen[k - 1] = z * scale / (kf * (2.0 * kf + 1.0));
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            dilog[k - 1] = sign * 2.0 * z * scale / (2.0 * kf + 1.0);
        }
        SeriesTables { clausen, dilog }
    })
}

/// Clausen function `Cl₂(x) = Σ sin(nx)/n²`.
pub fn clausen2(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    // reduce to (-π, π]
    let mut t = x.rem_euclid(2.0 * PI);
    if t > PI {
        t -= 2.0 * PI;
    }
    if t == 0.0 {
        return 0.0;
    }
    let t2 = t * t;
    let mut power = t * t2;
    let mut acc = 0.0;
    for c in tables().clausen.iter() {
        let term = c * power;
        acc += term;
        if term.abs() < 1e-18 * acc.abs().max(1e-300) {
            break;
        }
        power *= t2;
    }
    t - t * t.abs().ln() + acc
}

/// Lobachevsky function `Л(θ) = ½ Σ sin(2nθ)/n²`. Odd and π-periodic.
pub fn lobachevsky(theta: f64) -> f64 {
    0.5 * clausen2(2.0 * theta)
}

/// `Li₂(z)` for `|z| <= 1`, `Re z <= 1/2`.
fn dilog_reduced(z: Complex64) -> Complex64 {
    let u = -(Complex64::new(1.0, 0.0) - z).ln();
    let u2 = u * u;
    let mut power = u * u2;
    let mut acc = u - 0.25 * u2;
    for b in tables().dilog.iter() {
        let term = power * *b;
        acc += term;
        if term.norm() < 1e-18 {
            break;
        }
        power *= u2;
    }
    acc
}

/// Bloch–Wigner dilogarithm `D(z) = Im Li₂(z) + arg(1−z) log|z|`.
///
/// For `Im z > 0` this is the volume of the ideal tetrahedron with shape `z`.
pub fn bloch_wigner(z: Complex64) -> Result<f64> {
    let one = Complex64::new(1.0, 0.0);
    if !z.re.is_finite() || !z.im.is_finite() || z == Complex64::new(0.0, 0.0) || z == one {
        return Err(Error::Domain(format!("{z}")));
    }
    if z.im == 0.0 {
        return Ok(0.0);
    }
    // the six images under the anharmonic group, with the sign D picks up
    let candidates = [
        (z, 1.0),
        (one - one / z, 1.0),
        (one / (one - z), 1.0),
        (one / z, -1.0),
        (one - z, -1.0),
        (z / (z - one), -1.0),
    ];
    let (w, sign) = candidates
        .iter()
        .copied()
        .find(|(w, _)| w.norm_sqr() <= 1.0 && w.re <= 0.5)
        .unwrap_or_else(|| {
            // boundary round-off; take the one closest to the region
            candidates
                .iter()
                .copied()
                .min_by(|a, b| {
                    let pa = (a.0.norm() - 1.0).max(0.0) + (a.0.re - 0.5).max(0.0);
                    let pb = (b.0.norm() - 1.0).max(0.0) + (b.0.re - 0.5).max(0.0);
                    pa.total_cmp(&pb)
                })
                .expect("six candidates")
        });
    let li2 = dilog_reduced(w);
    Ok(sign * (li2.im + (one - w).arg() * w.norm().ln()))
}

/// Kronecker symbol `(a/n)` for `n >= 1`.
pub fn kronecker_symbol(a: i64, n: u64) -> i8 {
    if n == 0 {
        return if a.abs() == 1 { 1 } else { 0 };
    }
    let mut n = n;
    let mut result: i8 = 1;
    while n % 2 == 0 {
        n /= 2;
        if a % 2 == 0 {
            return 0;
        }
        if matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
    }
    // Jacobi symbol for odd n
    let mut a = a.rem_euclid(n as i64) as u64;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Character values `χ₋₂₃(0..23)`, indexed by residue.
pub fn weeks_character_table() -> [i8; 23] {
    let mut table = [0i8; 23];
    for (r, slot) in table.iter_mut().enumerate() {
        *slot = if r == 0 {
            0
        } else {
            kronecker_symbol(WEEKS_DISCRIMINANT, r as u64)
        };
    }
    table
}

/// Partial sums of `L(2, χ₋₂₃)` with the Abel-summation tail bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LSeriesSum {
    pub value: f64,
    pub terms: u64,
    /// `|L - value| <= tail_bound`.
    pub tail_bound: f64,
}

/// Sums `Σ χ₋₂₃(n)/n²` until the tail bound `23/N²` drops below `tol`.
///
/// Partial character sums of `χ₋₂₃` never exceed 11 in absolute value, so
/// Abel summation bounds the tail after `N` terms by `22/(N+1)² < 23/N²`.
pub fn l_series_weeks(tol: f64) -> LSeriesSum {
    let table = weeks_character_table();
    let n_terms = (23.0 / tol).sqrt().ceil() as u64;
    // Kahan summation from the small end
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for n in (1..=n_terms).rev() {
        let chi = table[(n % 23) as usize];
        if chi == 0 {
            continue;
        }
        let nf = n as f64;
        let term = chi as f64 / (nf * nf) - comp;
        let next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    LSeriesSum {
        value: sum,
        terms: n_terms,
        tail_bound: 23.0 / (n_terms as f64 * n_terms as f64),
    }
}

/// `ζ(2)·L(2, χ₋₂₃)`, the Dedekind zeta value of `Q(sqrt(-23))`.
pub fn dedekind_zeta2_quadratic() -> f64 {
    zeta_even(2) * l_series_weeks(1e-12).value
}

/// Cutoff in the outer variable of the Epstein sum; beyond it the inner sum
/// equals its leading term to within `e^{-2π·100}`.
const EPSTEIN_ROWS: u32 = 1000;

/// `Σ_{(x,y) ≠ 0} (ax² + bxy + cy²)^{-2}` for a positive definite form.
///
/// The inner sum over `x` is evaluated in closed form from
/// `Σ_x 1/((x+u)² + v²) = (π/v)·sinh 2πv / (cosh 2πv − cos 2πu)`.
pub fn epstein_zeta2(a: i64, b: i64, c: i64) -> Result<f64> {
    let disc = 4 * a * c - b * b;
    if a <= 0 || disc <= 0 {
        return Err(Error::Domain(format!("form ({a},{b},{c}) is not positive definite")));
    }
    let (af, bf, root) = (a as f64, b as f64, (disc as f64).sqrt());
    let mut total = 2.0 * zeta_even(4) / (af * af);
    for y in 1..=EPSTEIN_ROWS {
        let yf = y as f64;
        let u = bf * yf / (2.0 * af);
        let v = root * yf / (2.0 * af);
        total += 2.0 * row_sum(u, v) / (af * af);
    }
    // rows past the cutoff: 2·Σ π/(2v³)/a², with Σ_{y>Y} y⁻³ by Euler–Maclaurin
    let y = EPSTEIN_ROWS as f64;
    let tail = 1.0 / (2.0 * y * y) - 1.0 / (2.0 * y.powi(3)) + 1.0 / (4.0 * y.powi(4));
    total += PI * (2.0 * af / root).powi(3) * tail / (af * af);
    Ok(total)
}

/// `Σ_x 1/((x+u)² + v²)²`.
fn row_sum(u: f64, v: f64) -> f64 {
    if v > 8.0 {
        return PI / (2.0 * v.powi(3));
    }
    let ch = (2.0 * PI * v).cosh();
    let sh = (2.0 * PI * v).sinh();
    let c = (2.0 * PI * u).cos();
    let h = sh / (ch - c);
    let dh = 2.0 * PI * (1.0 - c * ch) / ((ch - c) * (ch - c));
    PI * h / (2.0 * v.powi(3)) - PI * dh / (2.0 * v * v)
}

/// `L(2, ρ)` for the two-dimensional Artin representation of discriminant `-23`.
pub fn artin_l2_weeks() -> f64 {
    let z1 = epstein_zeta2(1, 1, 6).expect("positive definite");
    let z2 = epstein_zeta2(2, 1, 3).expect("positive definite");
    (z1 - z2) / 2.0
}

/// `ζ_K(2)` for the cubic field of discriminant `-23`.
pub fn dedekind_zeta2_weeks() -> f64 {
    zeta_even(2) * artin_l2_weeks()
}

/// `vol(W) = 3·23^{3/2}·ζ_K(2) / (4π⁴)`.
pub fn weeks_volume() -> f64 {
    3.0 * 23f64.powf(1.5) * dedekind_zeta2_weeks() / (4.0 * PI.powi(4))
}
