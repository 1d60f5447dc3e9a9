//! Damped Newton solve of the gluing equations in logarithmic shape
//! coordinates, and the volume as a sum of Bloch–Wigner values.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mapping_class::LrWord;
use crate::special::bloch_wigner;
use crate::triangulation::{build_layered, EquationRow, GluingSystem};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    /// Convergence threshold on the max log-equation defect.
    pub tol: f64,
    pub max_iter: usize,
    pub max_halvings: u32,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { tol: 1e-12, max_iter: 200, max_halvings: 30 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShapeSolution {
    pub shapes: Vec<Complex64>,
    /// Max log-equation defect over the imposed rows, principal branches.
    pub residual: f64,
    /// Every `Im zᵢ > 0`, i.e. every dihedral angle in `(0, π)`.
    pub geometric: bool,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VolumeResult {
    pub volume: f64,
    pub word: LrWord,
    pub solution: ShapeSolution,
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// `(z, 1/(1−z), 1 − 1/z)`.
pub fn shape_triple(z: Complex64) -> [Complex64; 3] {
    [z, one() / (one() - z), one() - one() / z]
}

/// Principal-branch logarithmic form of a row minus its `iπ` target.
pub fn row_log_defect(row: &EquationRow, shapes: &[Complex64]) -> Complex64 {
    let mut acc = Complex64::new(0.0, -PI * row.pi_multiple as f64);
    for (i, &z) in shapes.iter().enumerate() {
        let [z0, z1, z2] = shape_triple(z);
        acc += z0.ln() * row.a[i] as f64 + z1.ln() * row.b[i] as f64 + z2.ln() * row.c[i] as f64;
    }
    acc
}

/// `|Π … − 1|` evaluated without logarithms.
pub fn row_unlogged_defect(row: &EquationRow, shapes: &[Complex64]) -> f64 {
    let mut prod = one();
    for (i, &z) in shapes.iter().enumerate() {
        let [z0, z1, z2] = shape_triple(z);
        prod *= z0.powi(row.a[i]) * z1.powi(row.b[i]) * z2.powi(row.c[i]);
    }
    (prod - one()).norm()
}

/// Sum of the dihedral angles (principal arguments) named by a row.
pub fn row_angle_sum(row: &EquationRow, shapes: &[Complex64]) -> f64 {
    shapes
        .iter()
        .enumerate()
        .map(|(i, &z)| {
            let [z0, z1, z2] = shape_triple(z);
            row.a[i] as f64 * z0.arg() + row.b[i] as f64 * z1.arg() + row.c[i] as f64 * z2.arg()
        })
        .sum()
}

/// Residual and Jacobian of the imposed rows in the variables `wᵢ = log zᵢ`.
fn evaluate(rows: &[&EquationRow], w: &[Complex64]) -> (DVector<Complex64>, DMatrix<Complex64>) {
    let n = w.len();
    let z: Vec<Complex64> = w.iter().map(|wi| wi.exp()).collect();
    let log_b: Vec<Complex64> = z.iter().map(|&zi| -(one() - zi).ln()).collect();
    let log_c: Vec<Complex64> = z.iter().map(|&zi| (one() - one() / zi).ln()).collect();
    let d_b: Vec<Complex64> = z.iter().map(|&zi| zi / (one() - zi)).collect();
    let d_c: Vec<Complex64> = z.iter().map(|&zi| one() / (zi - one())).collect();
    let mut f = DVector::zeros(rows.len());
    let mut jac = DMatrix::zeros(rows.len(), n);
    for (r, row) in rows.iter().enumerate() {
        let mut acc = Complex64::new(0.0, -PI * row.pi_multiple as f64);
        for i in 0..n {
            let (a, b, c) = (row.a[i] as f64, row.b[i] as f64, row.c[i] as f64);
            if a == 0.0 && b == 0.0 && c == 0.0 {
                continue;
            }
            acc += w[i] * a + log_b[i] * b + log_c[i] * c;
            jac[(r, i)] = Complex64::new(a, 0.0) + d_b[i] * b + d_c[i] * c;
        }
        f[r] = acc;
    }
    (f, jac)
}

fn max_norm(v: &DVector<Complex64>) -> f64 {
    v.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

pub fn solve_shapes(system: &GluingSystem) -> Result<ShapeSolution> {
    solve_shapes_with(system, &SolverOptions::default(), None)
}

/// Newton from `initial` (default: every shape `e^{iπ/3}`).
pub fn solve_shapes_with(
    system: &GluingSystem,
    opts: &SolverOptions,
    initial: Option<&[Complex64]>,
) -> Result<ShapeSolution> {
    let k = system.num_tetrahedra;
    let rows = system.solver_rows();
    let mut w: Vec<Complex64> = match initial {
        Some(z0) => z0.iter().map(|z| z.ln()).collect(),
        None => vec![Complex64::new(0.0, PI / 3.0); k],
    };
    let (mut f, mut jac) = evaluate(&rows, &w);
    let mut residual = max_norm(&f);
    let mut iterations = 0;
    while residual >= opts.tol {
        if iterations >= opts.max_iter {
            return Err(Error::NonConvergence { iterations, residual });
        }
        iterations += 1;
        let step = jac
            .clone()
            .lu()
            .solve(&(-&f))
            .ok_or(Error::NonConvergence { iterations, residual })?;
        let mut scale = 1.0;
        let mut accepted = false;
        for _ in 0..=opts.max_halvings {
            let trial: Vec<Complex64> = w.iter().zip(step.iter()).map(|(wi, si)| wi + si * scale).collect();
            let (f_trial, jac_trial) = evaluate(&rows, &trial);
            let r_trial = max_norm(&f_trial);
            if r_trial.is_finite() && r_trial < residual {
                w = trial;
                f = f_trial;
                jac = jac_trial;
                residual = r_trial;
                accepted = true;
                break;
            }
            scale *= 0.5;
        }
        if !accepted {
            return Err(Error::NonConvergence { iterations, residual });
        }
    }
    let shapes: Vec<Complex64> = w.iter().map(|wi| wi.exp()).collect();
    let residual = rows
        .iter()
        .map(|row| row_log_defect(row, &shapes).norm())
        .fold(0.0, f64::max);
    let geometric = shapes.iter().all(|z| z.im > 0.0);
    Ok(ShapeSolution { shapes, residual, geometric, iterations })
}

/// Sum of Bloch–Wigner values over the tetrahedra.
pub fn volume(word: &LrWord, solution: &ShapeSolution) -> Result<VolumeResult> {
    if !solution.geometric {
        return Err(Error::NonGeometric);
    }
    let volume = solution
        .shapes
        .iter()
        .map(|&z| bloch_wigner(z))
        .sum::<Result<f64>>()?;
    Ok(VolumeResult { volume, word: word.clone(), solution: solution.clone() })
}

/// Triangulates, solves and integrates. Falls back to continuation from the
/// regular shape when Newton stalls from the default guess.
pub fn volume_of_word(word: &LrWord, opts: &SolverOptions) -> Result<VolumeResult> {
    let system = build_layered(word)?.gluing_equations()?;
    let solution = match solve_shapes_with(&system, opts, None) {
        Ok(s) if s.geometric => s,
        first => continuation_solve(&system, opts).or(first)?,
    };
    volume(word, &solution)
}

/// Homotopy in the angle targets: the imposed rows are scaled from the
/// values they take at the regular shape to their true targets, tracking
/// the solution with Newton at each stage.
pub fn continuation_solve(system: &GluingSystem, opts: &SolverOptions) -> Result<ShapeSolution> {
    let k = system.num_tetrahedra;
    let rows = system.solver_rows();
    let start = vec![Complex64::new(0.0, PI / 3.0); k];
    let (f0, _) = evaluate(&rows, &start);
    let mut w = start;
    let stages = 64;
    for s in 1..=stages {
        let t = s as f64 / stages as f64;
        // target shift: F(w) = (1 - t) F(start)
        let shift: Vec<Complex64> = f0.iter().map(|x| x * (1.0 - t)).collect();
        let mut iter = 0;
        loop {
            let (mut f, jac) = evaluate(&rows, &w);
            for (fi, si) in f.iter_mut().zip(&shift) {
                *fi -= si;
            }
            let r = max_norm(&f);
            if r < opts.tol.max(1e-13) * if s == stages { 1.0 } else { 1e3 } {
                break;
            }
            iter += 1;
            if iter > opts.max_iter {
                return Err(Error::NonConvergence { iterations: iter, residual: r });
            }
            let step = jac.lu().solve(&(-f)).ok_or(Error::NonConvergence { iterations: iter, residual: r })?;
            for (wi, si) in w.iter_mut().zip(step.iter()) {
                *wi += si;
            }
        }
    }
    let z: Vec<Complex64> = w.iter().map(|x| x.exp()).collect();
    solve_shapes_with(system, opts, Some(&z))
}
