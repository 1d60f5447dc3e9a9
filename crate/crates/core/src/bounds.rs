//! Explicit Weil-Petersson estimates: translation lengths from volumes,
//! systoles, diameters and the inradius of the punctured torus moduli space.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::farey::farey_edge_upper;
use crate::special::Constants;

pub const THM_TRANSLATION: &str = "thm:translation-bound";
pub const THM_AREA: &str = "area";
pub const THM_SYSTOLE_CLOSED: &str = "thm:wp-systole-closed";
pub const THM_SYSTOLE_PUNCTURED: &str = "thm:wp-systole-punctured";
pub const THM_DIAMETER: &str = "thm:wp-diameter";
pub const THM_FAREY_EDGE: &str = "thm:farey-edge";
pub const THM_KOJIMA_MCSHANE: &str = "thm:kojima-mcshane";
pub const THM_WOLPERT: &str = "wolpert-pinch";

/// Multiplier of `‖ψ‖_WP` in the sharpened closed-surface bound, which also
/// carries an additive constant with no known value. Nothing here evaluates
/// that bound.
pub fn schlenker_coefficient(g: u32) -> f64 {
    3.0 * (PI * (g as f64 - 1.0)).sqrt()
}

/// Surface of genus `g` with `n` punctures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "(u32, u32)", into = "(u32, u32)")]
pub struct SurfaceType {
    g: u32,
    n: u32,
}

impl SurfaceType {
    pub const PUNCTURED_TORUS: SurfaceType = SurfaceType { g: 1, n: 1 };

    pub fn new(g: u32, n: u32) -> Result<Self> {
        let s = SurfaceType { g, n };
        if s.euler_characteristic() >= 0 {
            return Err(Error::InvalidSurface { g, n });
        }
        Ok(s)
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.g as i64 - self.n as i64
    }

    /// `2g − 2 + n`.
    pub fn complexity(&self) -> u32 {
        2 * self.g + self.n - 2
    }

    /// `3g − 3 + n`, the complex dimension of Teichmüller space.
    pub fn dimension(&self) -> i64 {
        3 * self.g as i64 - 3 + self.n as i64
    }

    pub fn is_closed(&self) -> bool {
        self.n == 0
    }
}

impl TryFrom<(u32, u32)> for SurfaceType {
    type Error = Error;
    fn try_from((g, n): (u32, u32)) -> Result<Self> {
        SurfaceType::new(g, n)
    }
}

impl From<SurfaceType> for (u32, u32) {
    fn from(s: SurfaceType) -> Self {
        (s.g, s.n)
    }
}

impl fmt::Display for SurfaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.g, self.n)
    }
}

impl FromStr for SurfaceType {
    type Err = Error;

    /// Accepts `g,n`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected `g,n`, got {s:?}"));
        let (g, n) = s.split_once(',').ok_or_else(bad)?;
        let g = g.trim().parse().map_err(|_| bad())?;
        let n = n.trim().parse().map_err(|_| bad())?;
        SurfaceType::new(g, n)
    }
}

pub fn area(s: SurfaceType) -> f64 {
    2.0 * PI * s.complexity() as f64
}

fn positive(x: f64, what: &str) -> Result<f64> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(Error::InvalidArgument(format!("{what} must be positive, got {x}")))
    }
}

/// `vol / (3√(π/2 · (2g−2+n)))`, a lower bound for `‖ψ‖_WP`.
pub fn wp_translation_lower(vol: f64, s: SurfaceType) -> Result<f64> {
    positive(vol, "volume")?;
    Ok(vol / translation_denominator(s))
}

fn translation_denominator(s: SurfaceType) -> f64 {
    3.0 * (PI / 2.0 * s.complexity() as f64).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystoleBounds {
    pub lower: f64,
    pub upper: Option<f64>,
    pub theorem: &'static str,
}

/// Lower bound for the shortest WP geodesic in moduli space, and for closed
/// surfaces the upper bound from the minimal-dilatation genus-`g` classes.
pub fn systole_bounds(s: SurfaceType) -> Result<SystoleBounds> {
    let c = Constants::get();
    if s.is_closed() {
        if s.g < 2 {
            return Err(Error::InvalidSurface { g: s.g, n: s.n });
        }
        let root = (s.g as f64 - 1.0).sqrt();
        let golden_sq = (3.0 + 5f64.sqrt()) / 2.0;
        Ok(SystoleBounds {
            lower: c.weeks_volume / (3.0 * c.pi.sqrt() * root),
            upper: Some(2.0 * c.pi.sqrt() * golden_sq.ln() / root),
            theorem: THM_SYSTOLE_CLOSED,
        })
    } else {
        Ok(SystoleBounds {
            lower: 2.0 * c.v3 / translation_denominator(s),
            upper: None,
            theorem: THM_SYSTOLE_PUNCTURED,
        })
    }
}

/// Lower bound for the WP diameter of moduli space. The generic case
/// vanishes when `2g + n = 4`.
pub fn diameter_lower(s: SurfaceType) -> Result<f64> {
    let c = Constants::get();
    let base = (2.0 / c.pi).sqrt() * c.v8;
    match (s.g, s.n) {
        (1, 1) => Ok(base / 6.0),
        (0, 4) => Ok(base / 3.0),
        _ if s.dimension() >= 2 => {
            let m = (2 * s.g + s.n - 4) as f64;
            Ok(c.v8 * m.sqrt() / (3.0 * c.pi.sqrt()))
        }
        _ => Err(Error::UnsupportedSurface { g: s.g, n: s.n }),
    }
}

/// Diameter bound divided by `√area`, the scale-free normalization.
pub fn diameter_lower_per_sqrt_area(s: SurfaceType) -> Result<f64> {
    Ok(diameter_lower(s)? / area(s).sqrt())
}

/// Diameter bound divided by `area`.
pub fn diameter_lower_per_area(s: SurfaceType) -> Result<f64> {
    Ok(diameter_lower(s)? / area(s))
}

/// Bounds on the WP length of the geodesic joining the two noded surfaces
/// at `0` and `∞` in the punctured torus moduli space.
pub fn inradius_interval() -> (f64, f64) {
    let c = Constants::get();
    ((2.0 / c.pi).sqrt() * c.v8 / 3.0, farey_edge_upper())
}

/// `√(2π · sys)`: distance from a surface to the stratum where its
/// shortest curve is pinched.
pub fn wolpert_pinch_upper(systole: f64) -> Result<f64> {
    positive(systole, "systole")?;
    Ok((2.0 * PI * systole).sqrt())
}

pub fn normalized_wp(d: f64, s: SurfaceType) -> Result<f64> {
    if !(d.is_finite() && d >= 0.0) {
        return Err(Error::InvalidArgument(format!("distance must be non-negative, got {d}")));
    }
    Ok(d / area(s).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KmCheck {
    pub holds: bool,
    /// `(3/2)·area·teich_len − vol`.
    pub margin: f64,
}

/// Whether `vol ≤ (3/2)·area(S)·teich_len`.
pub fn km_check(vol: f64, teich_len: f64, s: SurfaceType) -> Result<KmCheck> {
    positive(vol, "volume")?;
    positive(teich_len, "Teichmüller translation length")?;
    let margin = 1.5 * area(s) * teich_len - vol;
    Ok(KmCheck { holds: margin >= 0.0, margin })
}

/// The bounds that follow from one fibered volume. Serializes every value
/// next to the statement it comes from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "TaggedReport", try_from = "TaggedReport")]
pub struct BoundReport {
    pub surface: SurfaceType,
    pub area: f64,
    pub volume_in: Option<f64>,
    pub wp_lower: Option<f64>,
    pub teich_length_in: Option<f64>,
    pub km_inequality_holds: Option<bool>,
    pub margin: Option<f64>,
}

impl BoundReport {
    pub fn new(surface: SurfaceType, volume: Option<f64>, teich_length: Option<f64>) -> Result<Self> {
        let wp_lower = volume.map(|v| wp_translation_lower(v, surface)).transpose()?;
        let km = match (volume, teich_length) {
            (Some(v), Some(t)) => Some(km_check(v, t, surface)?),
            (None, Some(t)) => {
                positive(t, "Teichmüller translation length")?;
                None
            }
            _ => None,
        };
        Ok(BoundReport {
            surface,
            area: area(surface),
            volume_in: volume,
            wp_lower,
            teich_length_in: teich_length,
            km_inequality_holds: km.map(|k| k.holds),
            margin: km.map(|k| k.margin),
        })
    }
}

/// A value with the statement it instantiates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tagged<T> {
    pub value: T,
    pub theorem: String,
}

fn tagged<T>(value: T, theorem: &str) -> Tagged<T> {
    Tagged { value, theorem: theorem.to_string() }
}

fn untag<T>(t: Option<Tagged<T>>, theorem: &str) -> std::result::Result<Option<T>, String> {
    match t {
        Some(t) if t.theorem != theorem => Err(format!("expected tag {theorem}, got {}", t.theorem)),
        t => Ok(t.map(|t| t.value)),
    }
}

#[derive(Serialize, Deserialize)]
struct TaggedReport {
    surface: SurfaceType,
    area: Tagged<f64>,
    volume_in: Option<f64>,
    wp_lower: Option<Tagged<f64>>,
    teich_length_in: Option<f64>,
    km_inequality_holds: Option<Tagged<bool>>,
    margin: Option<Tagged<f64>>,
}

impl From<BoundReport> for TaggedReport {
    fn from(r: BoundReport) -> Self {
        TaggedReport {
            surface: r.surface,
            area: tagged(r.area, THM_AREA),
            volume_in: r.volume_in,
            wp_lower: r.wp_lower.map(|v| tagged(v, THM_TRANSLATION)),
            teich_length_in: r.teich_length_in,
            km_inequality_holds: r.km_inequality_holds.map(|v| tagged(v, THM_KOJIMA_MCSHANE)),
            margin: r.margin.map(|v| tagged(v, THM_KOJIMA_MCSHANE)),
        }
    }
}

impl TryFrom<TaggedReport> for BoundReport {
    type Error = String;
    fn try_from(r: TaggedReport) -> std::result::Result<Self, String> {
        Ok(BoundReport {
            surface: r.surface,
            area: untag(Some(r.area), THM_AREA)?.unwrap_or_default(),
            volume_in: r.volume_in,
            wp_lower: untag(r.wp_lower, THM_TRANSLATION)?,
            teich_length_in: r.teich_length_in,
            km_inequality_holds: untag(r.km_inequality_holds, THM_KOJIMA_MCSHANE)?,
            margin: untag(r.margin, THM_KOJIMA_MCSHANE)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn surf(g: u32, n: u32) -> SurfaceType {
        SurfaceType::new(g, n).unwrap()
    }

    #[test]
    fn areas() {
        assert_abs_diff_eq!(area(surf(1, 1)), 2.0 * PI);
        assert_abs_diff_eq!(area(surf(2, 0)), 4.0 * PI);
        assert_abs_diff_eq!(area(surf(0, 3)), 2.0 * PI);
        for (g, n) in [(0, 0), (0, 1), (0, 2), (1, 0)] {
            assert_eq!(SurfaceType::new(g, n), Err(Error::InvalidSurface { g, n }));
        }
    }

    #[test]
    fn translation_lower() {
        let v = 2.0 * Constants::get().v3;
        let t = surf(1, 1);
        assert_abs_diff_eq!(wp_translation_lower(v, t).unwrap(), 0.539871, epsilon = 1e-5);
        assert_abs_diff_eq!(
            wp_translation_lower(3.0 * v, t).unwrap(),
            3.0 * wp_translation_lower(v, t).unwrap(),
            epsilon = 1e-14
        );
        assert!(wp_translation_lower(0.0, t).is_err());
        assert!(wp_translation_lower(-1.0, t).is_err());
    }

    #[test]
    fn systoles() {
        let closed = systole_bounds(surf(2, 0)).unwrap();
        assert_abs_diff_eq!(closed.lower, 0.177289, epsilon = 1e-5);
        assert_abs_diff_eq!(closed.upper.unwrap(), 3.41173, epsilon = 1e-4);
        let punctured = systole_bounds(surf(1, 1)).unwrap();
        assert_abs_diff_eq!(punctured.lower, 0.539871, epsilon = 1e-5);
        assert_eq!(punctured.upper, None);
        for g in 2..50 {
            let b = systole_bounds(surf(g, 0)).unwrap();
            assert!(b.lower < b.upper.unwrap());
        }
    }

    #[test]
    fn closed_systole_scales_like_inverse_root_genus() {
        let scaled = |g: u32| systole_bounds(surf(g, 0)).unwrap().lower * (g as f64 - 1.0).sqrt();
        let c = scaled(2);
        for g in 3..200 {
            assert!((scaled(g) - c).abs() < 1e-12);
        }
    }

    #[test]
    fn punctured_systole_is_translation_bound_at_minimal_volume() {
        let v = 2.0 * Constants::get().v3;
        for g in 0..6 {
            for n in 1..6 {
                if let Ok(s) = SurfaceType::new(g, n) {
                    assert_eq!(systole_bounds(s).unwrap().lower, wp_translation_lower(v, s).unwrap());
                }
            }
        }
    }

    #[test]
    fn diameters() {
        assert_abs_diff_eq!(diameter_lower(surf(1, 1)).unwrap(), 0.487224, epsilon = 1e-5);
        assert_abs_diff_eq!(diameter_lower(surf(0, 4)).unwrap(), 0.974447, epsilon = 1e-5);
        assert_abs_diff_eq!(diameter_lower(surf(2, 1)).unwrap(), 0.689036, epsilon = 1e-5);
        assert_eq!(diameter_lower(surf(0, 4)).unwrap(), 2.0 * diameter_lower(surf(1, 1)).unwrap());
        assert_eq!(diameter_lower(surf(2, 0)).unwrap(), 0.0);
        assert_eq!(diameter_lower(surf(0, 3)), Err(Error::UnsupportedSurface { g: 0, n: 3 }));
    }

    #[test]
    fn normalized_diameters_positive() {
        for g in 0..8 {
            for n in 0..8 {
                let Ok(s) = SurfaceType::new(g, n) else { continue };
                let Ok(d) = diameter_lower_per_sqrt_area(s) else { continue };
                if 2 * g + n == 4 && (g, n) != (0, 4) {
                    assert_eq!(d, 0.0);
                } else {
                    assert!(d > 0.0, "{s}");
                    assert!(diameter_lower_per_area(s).unwrap() > 0.0);
                }
            }
        }
    }

    #[test]
    fn inradius() {
        let (lo, hi) = inradius_interval();
        assert_abs_diff_eq!(lo, 0.974447, epsilon = 1e-5);
        assert_abs_diff_eq!(hi, 25.850, epsilon = 1e-2);
        assert!(lo < hi);
        assert_eq!(lo, diameter_lower(surf(0, 4)).unwrap());
    }

    #[test]
    fn wolpert() {
        assert_abs_diff_eq!(wolpert_pinch_upper(2.0 * PI).unwrap(), 2.0 * PI, epsilon = 1e-12);
        assert_abs_diff_eq!(wolpert_pinch_upper(1.0).unwrap(), 2.50663, epsilon = 1e-5);
        assert!(wolpert_pinch_upper(0.0).is_err());
    }

    #[test]
    fn kojima_mcshane() {
        let v = 2.0 * Constants::get().v3;
        let t = ((3.0 + 5f64.sqrt()) / 2.0).ln();
        let k = km_check(v, t, SurfaceType::PUNCTURED_TORUS).unwrap();
        assert!(k.holds);
        assert_abs_diff_eq!(k.margin, 7.0407, epsilon = 1e-4);
        let k = km_check(100.0, 1.0, SurfaceType::PUNCTURED_TORUS).unwrap();
        assert!(!k.holds);
        assert!(k.margin < 0.0);
        assert_abs_diff_eq!(
            normalized_wp((2.0 * PI).sqrt(), SurfaceType::PUNCTURED_TORUS).unwrap(),
            1.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn report_serializes_with_tags() {
        let r = BoundReport::new(SurfaceType::PUNCTURED_TORUS, Some(2.0298832), Some(0.9624237)).unwrap();
        let v = serde_json::to_value(r).unwrap();
        assert_eq!(v["wp_lower"]["theorem"], THM_TRANSLATION);
        assert_eq!(v["surface"], serde_json::json!([1, 1]));
        assert_eq!(v["km_inequality_holds"]["value"], true);
        let back: BoundReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
        let empty = BoundReport::new(surf(2, 0), None, None).unwrap();
        assert!(serde_json::to_value(empty).unwrap()["wp_lower"].is_null());
    }

    #[test]
    fn schlenker_coefficient_matches_closed_denominator() {
        for g in 2..10 {
            let s = surf(g, 0);
            assert_abs_diff_eq!(schlenker_coefficient(g), translation_denominator(s), epsilon = 1e-12);
        }
    }

    proptest! {
        #[test]
        fn wolpert_monotone(a in 1e-6f64..100.0, b in 1e-6f64..100.0) {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            prop_assert!(wolpert_pinch_upper(lo).unwrap() <= wolpert_pinch_upper(hi).unwrap());
        }

        #[test]
        fn km_contract(v in 1e-3f64..50.0, t in 1e-3f64..10.0, g in 0u32..4, n in 1u32..4) {
            let Ok(s) = SurfaceType::new(g, n) else { return Ok(()) };
            let k = km_check(v, t, s).unwrap();
            prop_assert_eq!(k.holds, v <= 1.5 * area(s) * t);
        }
    }
}
