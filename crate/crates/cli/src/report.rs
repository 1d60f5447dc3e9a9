//! Report types emitted by the subcommands. Each one round-trips through
//! JSON and carries a `theorem` map naming where every number comes from.

use std::collections::BTreeMap;

use ptbundle::bounds::{BoundReport, Tagged};
use serde::{Deserialize, Serialize};

pub type Provenance = BTreeMap<String, String>;

pub fn provenance(pairs: &[(&str, &str)]) -> Provenance {
    pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

pub const SOLVER: &str = "gluing-equations:bloch-wigner";
pub const DILATATION: &str = "dilatation:trace";
pub const WEEKS: &str = "weeks-volume:zeta";
pub const REGULAR: &str = "regular-ideal-polyhedra";
pub const PANTS: &str = "thm:pants";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VolumeReport {
    pub word: String,
    pub matrix: String,
    pub tetrahedra: usize,
    pub volume: f64,
    /// `[re, im]` per tetrahedron.
    pub shapes: Vec<[f64; 2]>,
    pub residual: f64,
    pub iterations: usize,
    pub geometric: bool,
    pub trace: i64,
    pub dilatation: f64,
    pub teich_length: f64,
    pub wp_lower: f64,
    pub theorem: Provenance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VolumeSweep {
    pub max_len: usize,
    pub results: Vec<VolumeReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FareyReport {
    pub from: String,
    pub to: String,
    pub dp: u32,
    pub lower: f64,
    pub upper: f64,
    pub path: Vec<String>,
    pub theorem: Provenance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystoleReport {
    pub genus: u32,
    pub punctures: u32,
    pub lower: f64,
    pub upper: Option<f64>,
    pub theorem: Provenance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiameterReport {
    pub genus: u32,
    pub punctures: u32,
    pub lower: f64,
    pub per_sqrt_area: f64,
    pub per_area: f64,
    pub theorem: Provenance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InradiusReport {
    pub lower: f64,
    pub upper: f64,
    pub theorem: Provenance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KmCase {
    pub word: String,
    pub volume: f64,
    pub teich_length: f64,
    /// `3π·log λ`, the right-hand side on the punctured torus.
    pub bound: f64,
    pub margin: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KmReport {
    pub seed: Option<u64>,
    pub total: usize,
    pub holds: usize,
    pub cases: Vec<KmCase>,
    pub theorem: Provenance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantsReport {
    pub v3: f64,
    pub v8: f64,
    pub weeks_volume: f64,
    pub pi: f64,
    pub farey_edge_upper: f64,
    pub theorem: Provenance,
}

/// Output of `wp-bounds`: the tagged bound report plus what was solved to
/// obtain its inputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WpBoundsReport {
    pub word: Option<String>,
    pub report: BoundReport,
    pub wolpert_upper: Option<Tagged<f64>>,
}
