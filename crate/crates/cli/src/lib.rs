//! Command-line front end: volumes of punctured torus bundles, the
//! Weil-Petersson bounds built from them, and Farey distance intervals.

pub mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ptbundle::bounds::{
    self, diameter_lower, diameter_lower_per_area, diameter_lower_per_sqrt_area, inradius_interval,
    km_check, systole_bounds, wolpert_pinch_upper, BoundReport, SurfaceType, Tagged,
};
use ptbundle::farey::{farey_edge_upper, farey_geodesic, wp_distance_interval, FareySlope};
use ptbundle::mapping_class::{Letter, LrWord, MappingClass, Matrix2, MAX_WORD_LEN};
use ptbundle::solver::{volume_of_word, SolverOptions, VolumeResult};
use ptbundle::{Constants, Error};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use report::*;

/// Longest words accepted by `volume --word-sweep`.
pub const MAX_SWEEP_LEN: usize = 16;

#[derive(Debug, Parser)]
#[command(name = "ptbundle", version, about = "Volumes of punctured torus bundles and Weil-Petersson bounds")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Largest log-equation residual accepted in a reported solution.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, global = true, default_value_t = 200)]
    pub max_iter: usize,
    /// Seed for random word sweeps (default 0).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hyperbolic volume of the mapping torus.
    Volume(VolumeArgs),
    /// Lower bound on the WP translation length from a volume.
    WpBounds(WpBoundsArgs),
    /// Pants distance and WP interval between two noded punctured tori.
    FareyDistance {
        #[arg(allow_hyphen_values = true)]
        from: FareySlope,
        #[arg(allow_hyphen_values = true)]
        to: FareySlope,
    },
    /// Bounds on the shortest closed WP geodesic in moduli space.
    Systole(SurfaceArgs),
    /// Lower bound on the WP diameter of moduli space.
    Diameter(SurfaceArgs),
    /// Bounds on the WP length of the imaginary axis in the punctured torus moduli space.
    Inradius,
    /// Checks vol ≤ 3π·log λ on one word or a seeded random batch.
    CheckKm(KmArgs),
    /// The constants every bound is assembled from.
    Constants,
}

#[derive(Debug, Args)]
pub struct VolumeArgs {
    #[command(flatten)]
    pub monodromy: VolumeSource,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct VolumeSource {
    /// Word in R = [[1,1],[0,1]] and L = [[1,0],[1,1]].
    #[arg(long)]
    pub word: Option<LrWord>,
    /// Matrix "a,b;c,d" in SL₂(Z).
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: Option<Matrix2>,
    /// The double twist Rⁿ Lⁿ.
    #[arg(long)]
    pub psi_n: Option<u32>,
    /// Every word up to rotation with both letters and at most this length.
    #[arg(long)]
    pub word_sweep: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SurfaceArgs {
    #[arg(long, default_value_t = 1)]
    pub genus: u32,
    #[arg(long, default_value_t = 1)]
    pub punctures: u32,
}

#[derive(Debug, Args)]
pub struct WpBoundsArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,
    /// Volume of the mapping torus, if already known.
    #[arg(long, conflicts_with_all = ["word", "matrix", "psi_n"])]
    pub volume: Option<f64>,
    #[arg(long, conflicts_with_all = ["matrix", "psi_n"])]
    pub word: Option<LrWord>,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "psi_n")]
    pub matrix: Option<Matrix2>,
    #[arg(long)]
    pub psi_n: Option<u32>,
    /// Teichmüller translation length, if the monodromy is not given.
    #[arg(long)]
    pub teich_length: Option<f64>,
    /// Systole of a surface, for Wolpert's pinching bound.
    #[arg(long)]
    pub systole: Option<f64>,
}

#[derive(Debug, Args)]
pub struct KmArgs {
    #[arg(long, conflicts_with_all = ["matrix", "random"])]
    pub word: Option<LrWord>,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "random")]
    pub matrix: Option<Matrix2>,
    /// Number of random words.
    #[arg(long)]
    pub random: Option<usize>,
    #[arg(long, default_value_t = 12)]
    pub max_len: usize,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad input, exit code 2.
    Usage(String),
    /// The computation failed, exit code 1.
    Compute(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NonConvergence { .. } | Error::NonGeometric | Error::Triangulation(_) | Error::Overflow(_) => {
                CliError::Compute(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// Parses `args` (including the program name), runs the subcommand and
/// writes the report. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    return 0;
                }
                _ => write!(err, "{e}"),
            };
            return 2;
        }
    };
    match execute(&cli) {
        Ok(value) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&value).expect("reports serialize"),
                Format::Text => render_text(&value),
            };
            let _ = writeln!(out, "{text}");
            0
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(CliError::Compute(msg)) => {
            let _ = writeln!(err, "computation failed: {msg}");
            1
        }
    }
}

fn to_value<T: Serialize>(report: &T) -> Value {
    serde_json::to_value(report).expect("reports serialize")
}

pub fn execute(cli: &Cli) -> Result<Value, CliError> {
    if !(cli.tol > 0.0) {
        return Err(CliError::Usage(format!("--tol must be positive, got {}", cli.tol)));
    }
    let opts = SolverOptions { max_iter: cli.max_iter, ..SolverOptions::default() };
    match &cli.command {
        Command::Volume(args) => volume_command(&args.monodromy, &opts, cli.tol),
        Command::WpBounds(args) => wp_bounds_command(args, &opts, cli.tol).map(|r| to_value(&r)),
        Command::FareyDistance { from, to } => farey_command(from, to).map(|r| to_value(&r)),
        Command::Systole(s) => {
            let surface = surface(s)?;
            let b = systole_bounds(surface)?;
            Ok(to_value(&SystoleReport {
                genus: s.genus,
                punctures: s.punctures,
                lower: b.lower,
                upper: b.upper,
                theorem: provenance(&[("lower", b.theorem), ("upper", b.theorem)]),
            }))
        }
        Command::Diameter(s) => {
            let surface = surface(s)?;
            Ok(to_value(&DiameterReport {
                genus: s.genus,
                punctures: s.punctures,
                lower: diameter_lower(surface)?,
                per_sqrt_area: diameter_lower_per_sqrt_area(surface)?,
                per_area: diameter_lower_per_area(surface)?,
                theorem: provenance(&[
                    ("lower", bounds::THM_DIAMETER),
                    ("per_sqrt_area", bounds::THM_DIAMETER),
                    ("per_area", bounds::THM_DIAMETER),
                ]),
            }))
        }
        Command::Inradius => {
            let (lower, upper) = inradius_interval();
            Ok(to_value(&InradiusReport {
                lower,
                upper,
                theorem: provenance(&[("lower", bounds::THM_FAREY_EDGE), ("upper", bounds::THM_FAREY_EDGE)]),
            }))
        }
        Command::CheckKm(args) => km_command(args, cli.seed, &opts, cli.tol).map(|r| to_value(&r)),
        Command::Constants => {
            let c = Constants::get();
            Ok(to_value(&ConstantsReport {
                v3: c.v3,
                v8: c.v8,
                weeks_volume: c.weeks_volume,
                pi: c.pi,
                farey_edge_upper: farey_edge_upper(),
                theorem: provenance(&[
                    ("v3", REGULAR),
                    ("v8", REGULAR),
                    ("weeks_volume", WEEKS),
                    ("farey_edge_upper", bounds::THM_FAREY_EDGE),
                ]),
            }))
        }
    }
}

fn surface(s: &SurfaceArgs) -> Result<SurfaceType, CliError> {
    SurfaceType::new(s.genus, s.punctures).map_err(|e| CliError::Usage(e.to_string()))
}

/// Resolves a monodromy to its pseudo-Anosov mapping class, rejecting
/// anything that cannot be solved before any numerics run.
fn monodromy(
    word: Option<&LrWord>,
    matrix: Option<&Matrix2>,
    psi_n: Option<u32>,
) -> Result<MappingClass, CliError> {
    let class = match (word, matrix, psi_n) {
        (Some(w), _, _) => MappingClass::from_word(w)?,
        (_, Some(m), _) => MappingClass::from_sl2(*m)?,
        (_, _, Some(n)) => ptbundle::mapping_class::psi_n(n)?,
        _ => return Err(CliError::Usage("no monodromy given".into())),
    };
    let word = class.lr_decomposition()?;
    if word.len() > MAX_WORD_LEN {
        return Err(Error::WordTooLong { len: word.len(), max: MAX_WORD_LEN }.into());
    }
    Ok(class)
}

fn solve(class: &MappingClass, opts: &SolverOptions, tol: f64) -> Result<VolumeResult, CliError> {
    let word = class.lr_decomposition()?;
    let result = volume_of_word(word, opts)?;
    if result.solution.residual > tol {
        return Err(CliError::Compute(format!(
            "residual {:.3e} exceeds tolerance {tol:.3e}",
            result.solution.residual
        )));
    }
    Ok(result)
}

pub fn volume_report(class: &MappingClass, result: &VolumeResult) -> Result<VolumeReport, CliError> {
    let teich = class.teich_translation_length()?;
    let wp_lower = bounds::wp_translation_lower(result.volume, SurfaceType::PUNCTURED_TORUS)?;
    let trace = i64::try_from(class.trace).map_err(|_| CliError::Compute("trace overflows i64".into()))?;
    Ok(VolumeReport {
        word: result.word.to_string(),
        matrix: class.matrix.to_string(),
        tetrahedra: result.solution.shapes.len(),
        volume: result.volume,
        shapes: result.solution.shapes.iter().map(|z| [z.re, z.im]).collect(),
        residual: result.solution.residual,
        iterations: result.solution.iterations,
        geometric: result.solution.geometric,
        trace,
        dilatation: class.dilatation()?,
        teich_length: teich,
        wp_lower,
        theorem: provenance(&[
            ("volume", SOLVER),
            ("dilatation", DILATATION),
            ("teich_length", DILATATION),
            ("wp_lower", bounds::THM_TRANSLATION),
        ]),
    })
}

fn volume_command(src: &VolumeSource, opts: &SolverOptions, tol: f64) -> Result<Value, CliError> {
    if let Some(max_len) = src.word_sweep {
        if !(2..=MAX_SWEEP_LEN).contains(&max_len) {
            return Err(CliError::Usage(format!("--word-sweep must be in 2..={MAX_SWEEP_LEN}")));
        }
        let words = canonical_words(max_len);
        let results: Vec<VolumeReport> = words
            .par_iter()
            .map(|w| {
                let class = MappingClass::from_word(w)?;
                volume_report(&class, &solve(&class, opts, tol)?)
            })
            .collect::<Result<_, _>>()?;
        return Ok(to_value(&VolumeSweep { max_len, results }));
    }
    let class = monodromy(src.word.as_ref(), src.matrix.as_ref(), src.psi_n)?;
    let result = solve(&class, opts, tol)?;
    Ok(to_value(&volume_report(&class, &result)?))
}

fn wp_bounds_command(args: &WpBoundsArgs, opts: &SolverOptions, tol: f64) -> Result<WpBoundsReport, CliError> {
    let surface = surface(&args.surface)?;
    let has_monodromy = args.word.is_some() || args.matrix.is_some() || args.psi_n.is_some();
    if has_monodromy && surface != SurfaceType::PUNCTURED_TORUS {
        return Err(CliError::Usage("a monodromy determines a punctured torus bundle; use --genus 1 --punctures 1".into()));
    }
    if let Some(s) = args.systole {
        if !(s > 0.0) {
            return Err(CliError::Usage(format!("systole must be positive, got {s}")));
        }
    }
    let (word, volume, teich) = if has_monodromy {
        let class = monodromy(args.word.as_ref(), args.matrix.as_ref(), args.psi_n)?;
        let result = solve(&class, opts, tol)?;
        let teich = args.teich_length.unwrap_or(class.teich_translation_length()?);
        (Some(result.word.to_string()), Some(result.volume), Some(teich))
    } else {
        (None, args.volume, args.teich_length)
    };
    let report = BoundReport::new(surface, volume, teich)?;
    let wolpert_upper = args
        .systole
        .map(|s| wolpert_pinch_upper(s).map(|v| Tagged { value: v, theorem: bounds::THM_WOLPERT.into() }))
        .transpose()?;
    Ok(WpBoundsReport { word, report, wolpert_upper })
}

fn farey_command(from: &FareySlope, to: &FareySlope) -> Result<FareyReport, CliError> {
    let iv = wp_distance_interval(from, to)?;
    Ok(FareyReport {
        from: from.to_string(),
        to: to.to_string(),
        dp: iv.pants_distance,
        lower: iv.lower,
        upper: iv.upper,
        path: farey_geodesic(from, to).iter().map(ToString::to_string).collect(),
        theorem: provenance(&[("dp", "farey-graph"), ("lower", PANTS), ("upper", PANTS)]),
    })
}

fn km_command(args: &KmArgs, seed: Option<u64>, opts: &SolverOptions, tol: f64) -> Result<KmReport, CliError> {
    let (words, seed) = match (&args.word, &args.matrix, args.random) {
        (Some(w), _, _) => (vec![monodromy(Some(w), None, None)?], None),
        (_, Some(m), _) => (vec![monodromy(None, Some(m), None)?], None),
        (_, _, Some(n)) => {
            if !(2..=MAX_WORD_LEN).contains(&args.max_len) {
                return Err(CliError::Usage(format!("--max-len must be in 2..={MAX_WORD_LEN}")));
            }
            let seed = seed.unwrap_or(0);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let words = (0..n)
                .map(|_| MappingClass::from_word(&random_word(&mut rng, args.max_len)))
                .collect::<Result<Vec<_>, _>>()?;
            (words, Some(seed))
        }
        _ => return Err(CliError::Usage("give --word, --matrix or --random".into())),
    };
    let cases: Vec<KmCase> = words
        .par_iter()
        .map(|class| {
            let result = solve(class, opts, tol)?;
            let teich = class.teich_translation_length()?;
            let km = km_check(result.volume, teich, SurfaceType::PUNCTURED_TORUS)?;
            Ok(KmCase {
                word: result.word.to_string(),
                volume: result.volume,
                teich_length: teich,
                bound: km.margin + result.volume,
                margin: km.margin,
                holds: km.holds,
            })
        })
        .collect::<Result<_, CliError>>()?;
    Ok(KmReport {
        seed,
        total: cases.len(),
        holds: cases.iter().filter(|c| c.holds).count(),
        cases,
        theorem: provenance(&[
            ("volume", SOLVER),
            ("teich_length", DILATATION),
            ("bound", bounds::THM_KOJIMA_MCSHANE),
            ("margin", bounds::THM_KOJIMA_MCSHANE),
        ]),
    })
}

/// Uniform length in `2..=max_len`, uniform letters, resampled until both
/// letters occur.
pub fn random_word<R: Rng>(rng: &mut R, max_len: usize) -> LrWord {
    loop {
        let len = rng.gen_range(2..=max_len);
        let w = LrWord::new((0..len).map(|_| if rng.gen() { Letter::R } else { Letter::L }).collect());
        if w.has_both_letters() {
            return w;
        }
    }
}

/// Canonical representatives of the cyclic words with both letters, by
/// length then lexicographically.
pub fn canonical_words(max_len: usize) -> Vec<LrWord> {
    let mut words = Vec::new();
    for len in 2..=max_len {
        for bits in 0u32..1 << len {
            let w = LrWord::new((0..len).rev().map(|i| if bits >> i & 1 == 1 { Letter::R } else { Letter::L }).collect());
            if w.has_both_letters() && w.canonical() == w {
                words.push(w);
            }
        }
    }
    words
}

/// `key: value` lines; nested objects flatten to dotted keys.
pub fn render_text(value: &Value) -> String {
    let mut lines = Vec::new();
    flatten("", value, &mut lines);
    lines.join("\n")
}

fn flatten(prefix: &str, value: &Value, lines: &mut Vec<String>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&join(k), v, lines);
            }
        }
        Value::Array(items) if items.iter().any(|v| v.is_object()) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&join(&i.to_string()), v, lines);
            }
        }
        other => lines.push(format!("{prefix}: {other}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_lists_necklaces() {
        let words: Vec<String> = canonical_words(4).iter().map(ToString::to_string).collect();
        assert_eq!(words, ["LR", "LLR", "LRR", "LLLR", "LLRR", "LRLR", "LRRR"]);
    }

    #[test]
    fn random_words_have_both_letters() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let w = random_word(&mut rng, 12);
            assert!(w.has_both_letters() && (2..=12).contains(&w.len()));
        }
    }

    #[test]
    fn text_rendering_flattens() {
        let v = serde_json::json!({"a": 1, "b": {"c": [1, 2]}, "d": [{"e": true}]});
        assert_eq!(render_text(&v), "a: 1\nb.c: [1,2]\nd.0.e: true");
    }

    #[test]
    fn error_classes() {
        assert!(matches!(CliError::from(Error::NonGeometric), CliError::Compute(_)));
        assert!(matches!(CliError::from(Error::InvalidSurface { g: 0, n: 2 }), CliError::Usage(_)));
    }
}
