//! Mapping classes of the once-punctured torus as elements of `SL₂(Z)`.
//!
//! Hyperbolic classes (`|trace| > 2`) are conjugate in `PSL₂(Z)` to a positive
//! word in `R = [[1,1],[0,1]]` and `L = [[1,0],[1,1]]`, unique up to cyclic
//! rotation. The word is read off from the periodic continued fraction of the
//! attracting fixed point, using exact quadratic-surd arithmetic.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Longest word accepted for triangulation and matrix products.
pub const MAX_WORD_LEN: usize = 80;

/// Cap on words recovered from matrix input, whose entries already fit.
/// Trace `t` can need `t − 1` letters (`L^{t−2}R`).
pub const MAX_DECOMPOSITION_LEN: usize = 4096;

/// An element of `SL₂(Z)`, stored row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix2 {
    pub a: i128,
    pub b: i128,
    pub c: i128,
    pub d: i128,
}

impl Matrix2 {
    pub const IDENTITY: Matrix2 = Matrix2 { a: 1, b: 0, c: 0, d: 1 };
    pub const R: Matrix2 = Matrix2 { a: 1, b: 1, c: 0, d: 1 };
    pub const L: Matrix2 = Matrix2 { a: 1, b: 0, c: 1, d: 1 };

    pub fn new(a: i128, b: i128, c: i128, d: i128) -> Result<Self> {
        let det = a
            .checked_mul(d)
            .zip(b.checked_mul(c))
            .and_then(|(x, y)| x.checked_sub(y))
            .ok_or(Error::Overflow("determinant"))?;
        if det != 1 {
            return Err(Error::InvalidMatrix { a, b, c, d, det });
        }
        Ok(Matrix2 { a, b, c, d })
    }

    pub fn trace(&self) -> i128 {
        self.a + self.d
    }

    pub fn checked_mul(&self, rhs: &Matrix2) -> Result<Matrix2> {
        let dot = |x: i128, y: i128, z: i128, w: i128| {
            x.checked_mul(y)
                .zip(z.checked_mul(w))
                .and_then(|(p, q)| p.checked_add(q))
                .ok_or(Error::Overflow("matrix product"))
        };
        Ok(Matrix2 {
            a: dot(self.a, rhs.a, self.b, rhs.c)?,
            b: dot(self.a, rhs.b, self.b, rhs.d)?,
            c: dot(self.c, rhs.a, self.d, rhs.c)?,
            d: dot(self.c, rhs.b, self.d, rhs.d)?,
        })
    }

    pub fn inverse(&self) -> Matrix2 {
        Matrix2 { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn neg(&self) -> Matrix2 {
        Matrix2 { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }

    pub fn apply(&self, v: (i128, i128)) -> (i128, i128) {
        (self.a * v.0 + self.b * v.1, self.c * v.0 + self.d * v.1)
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{};{},{}", self.a, self.b, self.c, self.d)
    }
}

/// Parses `"a,b;c,d"`.
impl FromStr for Matrix2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected matrix `a,b;c,d`, got `{s}`"));
        let rows: Vec<&str> = s.split(';').collect();
        if rows.len() != 2 {
            return Err(bad());
        }
        let mut entries = Vec::with_capacity(4);
        for row in rows {
            let cols: Vec<&str> = row.split(',').collect();
            if cols.len() != 2 {
                return Err(bad());
            }
            for c in cols {
                entries.push(c.trim().parse::<i128>().map_err(|_| bad())?);
            }
        }
        Matrix2::new(entries[0], entries[1], entries[2], entries[3])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Letter {
    L,
    R,
}

impl Letter {
    pub fn matrix(self) -> Matrix2 {
        match self {
            Letter::L => Matrix2::L,
            Letter::R => Matrix2::R,
        }
    }

    pub fn swapped(self) -> Letter {
        match self {
            Letter::L => Letter::R,
            Letter::R => Letter::L,
        }
    }
}

/// A positive word in `L` and `R`. Equality is literal; use
/// [`LrWord::canonical`] to compare up to rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct LrWord(Vec<Letter>);

impl LrWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        LrWord(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn has_both_letters(&self) -> bool {
        self.0.contains(&Letter::L) && self.0.contains(&Letter::R)
    }

    /// Lexicographically least rotation, with `L < R`.
    pub fn canonical(&self) -> LrWord {
        let n = self.0.len();
        (0..n.max(1))
            .map(|k| self.rotated(k))
            .min()
            .unwrap_or_else(|| self.clone())
    }

    pub fn rotated(&self, k: usize) -> LrWord {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        LrWord(v)
    }

    pub fn reversed(&self) -> LrWord {
        LrWord(self.0.iter().rev().copied().collect())
    }

    pub fn swapped(&self) -> LrWord {
        LrWord(self.0.iter().map(|l| l.swapped()).collect())
    }

    pub fn is_rotation_of(&self, other: &LrWord) -> bool {
        self.len() == other.len() && (0..self.len().max(1)).any(|k| &self.rotated(k) == other)
    }

    /// Product of the letter matrices, left to right.
    pub fn product(&self) -> Result<Matrix2> {
        self.0
            .iter()
            .try_fold(Matrix2::IDENTITY, |acc, l| acc.checked_mul(&l.matrix()))
    }
}

impl fmt::Display for LrWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(match l {
                Letter::L => "L",
                Letter::R => "R",
            })?;
        }
        Ok(())
    }
}

impl FromStr for LrWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::Parse("empty word".into()));
        }
        s.chars()
            .map(|c| match c {
                'L' => Ok(Letter::L),
                'R' => Ok(Letter::R),
                _ => Err(Error::Parse(format!("word `{s}` must match [LR]+"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(LrWord)
    }
}

impl From<LrWord> for String {
    fn from(w: LrWord) -> String {
        w.to_string()
    }
}

impl TryFrom<String> for LrWord {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TraceClass {
    Elliptic,
    Parabolic,
    PseudoAnosov,
}

impl TraceClass {
    pub fn of_trace(trace: i128) -> TraceClass {
        match trace.abs() {
            0 | 1 => TraceClass::Elliptic,
            2 => TraceClass::Parabolic,
            _ => TraceClass::PseudoAnosov,
        }
    }
}

/// A mapping class of `S₁,₁`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MappingClass {
    pub matrix: Matrix2,
    /// Canonical cyclic word; `None` unless pseudo-Anosov.
    pub word: Option<LrWord>,
    pub trace: i128,
    pub class: TraceClass,
    /// Stretch factor; `1` for non-pseudo-Anosov classes.
    pub dilatation: f64,
}

impl MappingClass {
    pub fn from_matrix(a: i128, b: i128, c: i128, d: i128) -> Result<Self> {
        Self::from_sl2(Matrix2::new(a, b, c, d)?)
    }

    pub fn from_sl2(matrix: Matrix2) -> Result<Self> {
        let trace = matrix.trace();
        // ±I has finite order
        let class = if matrix == Matrix2::IDENTITY || matrix == Matrix2::IDENTITY.neg() {
            TraceClass::Elliptic
        } else {
            TraceClass::of_trace(trace)
        };
        let word = match class {
            TraceClass::PseudoAnosov => Some(lr_word_of(&matrix)?),
            _ => None,
        };
        Ok(MappingClass {
            matrix,
            word,
            trace,
            class,
            dilatation: dilatation_of_trace(trace),
        })
    }

    /// Builds the class of a positive word; the word is stored canonicalized.
    pub fn from_word(word: &LrWord) -> Result<Self> {
        if word.len() > MAX_WORD_LEN {
            return Err(Error::WordTooLong { len: word.len(), max: MAX_WORD_LEN });
        }
        let matrix = word.product()?;
        let trace = matrix.trace();
        let class = TraceClass::of_trace(trace);
        let word = (class == TraceClass::PseudoAnosov).then(|| word.canonical());
        Ok(MappingClass {
            matrix,
            word,
            trace,
            class,
            dilatation: dilatation_of_trace(trace),
        })
    }

    pub fn is_pseudo_anosov(&self) -> bool {
        self.class == TraceClass::PseudoAnosov
    }

    pub fn lr_decomposition(&self) -> Result<&LrWord> {
        self.word
            .as_ref()
            .ok_or(Error::NotPseudoAnosov { trace: self.trace })
    }

    pub fn dilatation(&self) -> Result<f64> {
        if !self.is_pseudo_anosov() {
            return Err(Error::NotPseudoAnosov { trace: self.trace });
        }
        Ok(self.dilatation)
    }

    /// Teichmüller translation length `log λ`.
    pub fn teich_translation_length(&self) -> Result<f64> {
        self.dilatation().map(f64::ln)
    }
}

/// `(|t| + sqrt(t² − 4)) / 2`, or `1` when `|t| <= 2`.
pub fn dilatation_of_trace(trace: i128) -> f64 {
    let t = (trace.abs()) as f64;
    if t <= 2.0 {
        return 1.0;
    }
    // (t + sqrt(t²-4))/2 without cancellation for large t
    let s = ((t - 2.0) * (t + 2.0)).sqrt();
    0.5 * (t + s)
}

/// `ψ_n = [[1,n],[0,1]]·[[1,0],[n,1]]`, the word `R^n L^n`.
pub fn psi_n(n: u32) -> Result<MappingClass> {
    if n == 0 {
        return Err(Error::InvalidArgument("psi_n requires n >= 1".into()));
    }
    let n_i = n as i128;
    let twist_a = Matrix2::new(1, n_i, 0, 1)?;
    let twist_b = Matrix2::new(1, 0, n_i, 1)?;
    let matrix = twist_a.checked_mul(&twist_b)?;
    let mut letters = vec![Letter::R; n as usize];
    letters.extend(std::iter::repeat_n(Letter::L, n as usize));
    let word = LrWord(letters).canonical();
    Ok(MappingClass {
        matrix,
        trace: matrix.trace(),
        class: TraceClass::PseudoAnosov,
        dilatation: dilatation_of_trace(matrix.trace()),
        word: Some(word),
    })
}

fn floor_div(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

/// `floor((p + sqrt(disc)) / q)` for non-square `disc > 0`, `q != 0`.
fn surd_floor(p: i128, q: i128, root: i128) -> i128 {
    if q > 0 {
        floor_div(p + root, q)
    } else {
        -(floor_div(p + root, -q) + 1)
    }
}

/// Canonical positive word whose product is conjugate to `±m` in `SL₂(Z)`.
pub fn lr_word_of(m: &Matrix2) -> Result<LrWord> {
    let trace = m.trace();
    if trace.abs() <= 2 {
        return Err(Error::NotPseudoAnosov { trace });
    }
    let m = if trace < 0 { m.neg() } else { *m };
    let trace = m.trace();
    let disc = trace
        .checked_mul(trace)
        .and_then(|t| t.checked_sub(4))
        .ok_or(Error::Overflow("discriminant"))?;
    let root = (disc as u128).isqrt() as i128;

    // attracting fixed point ((a-d) + sqrt(disc)) / (2c), as (p + sqrt D)/q
    let mut p = m.a - m.d;
    let mut q = m.c.checked_mul(2).ok_or(Error::Overflow("fixed point"))?;
    let mut seen: HashMap<(i128, i128), usize> = HashMap::new();
    let mut terms: Vec<i128> = Vec::new();
    let (start, period) = loop {
        if let Some(&first) = seen.get(&(p, q)) {
            break (first, terms.len() - first);
        }
        seen.insert((p, q), terms.len());
        let a = surd_floor(p, q, root);
        terms.push(a);
        let p_next = a
            .checked_mul(q)
            .and_then(|x| x.checked_sub(p))
            .ok_or(Error::Overflow("continued fraction"))?;
        let num = disc
            .checked_sub(p_next.checked_mul(p_next).ok_or(Error::Overflow("continued fraction"))?)
            .ok_or(Error::Overflow("continued fraction"))?;
        debug_assert_eq!(num % q, 0);
        q = num / q;
        p = p_next;
    };

    // the preperiod must have even length so that it acts through SL₂(Z)
    let offset = start % 2;
    let mut block: Vec<i128> = (0..period)
        .map(|i| terms[start + (offset + i) % period])
        .collect();
    if period % 2 == 1 {
        block.extend_from_slice(&block.clone());
    }
    let mut primitive = Vec::new();
    for (i, &a) in block.iter().enumerate() {
        let letter = if i % 2 == 0 { Letter::R } else { Letter::L };
        for _ in 0..a {
            primitive.push(letter);
            if primitive.len() > MAX_DECOMPOSITION_LEN {
                return Err(Error::WordTooLong { len: primitive.len(), max: MAX_DECOMPOSITION_LEN });
            }
        }
    }
    let primitive = LrWord(primitive);
    let base = primitive.product()?;

    // m is conjugate to a positive power of the primitive element
    let mut power = base;
    let mut letters = primitive.0.clone();
    while power.trace() < trace {
        power = power.checked_mul(&base)?;
        letters.extend_from_slice(&primitive.0);
        if letters.len() > MAX_DECOMPOSITION_LEN {
            return Err(Error::WordTooLong { len: letters.len(), max: MAX_DECOMPOSITION_LEN });
        }
    }
    if power.trace() != trace {
        return Err(Error::InvalidArgument(format!(
            "no positive power of {primitive} has trace {trace}"
        )));
    }
    Ok(LrWord(letters).canonical())
}
