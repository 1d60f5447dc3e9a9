//! Farey graph combinatorics on slopes of the one-holed torus.
//!
//! Vertices are reduced fractions `p/q` together with `∞ = 1/0`; two slopes
//! are joined when `|p s − q r| = 1`. On the one-holed torus a pants
//! decomposition is a single slope, so the pants graph is this graph.
//!
//! Distances are computed by continued-fraction navigation. After an
//! `SL₂(Z)` move sending the source to `∞`, every geodesic to the target
//! `y = [b₀; b₁, …, bₙ]` stays inside the ladder of its convergents: `∞` is
//! joined to the integer `c₀ = b₀`, and the `k`-th fan has pivot `c_{k−1}`
//! with its rim running from `c_{k−2}` to `c_k` in `b_k` steps. Collapsing
//! each fan rim to a single weighted edge `min(b_k, 2)` leaves a path-like
//! graph on the convergents whose shortest paths are the Farey geodesics.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mapping_class::Matrix2;
use crate::special::Constants;

/// A reduced slope `p/q`, `q >= 0`; `∞` is `1/0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FareySlope {
    p: i64,
    q: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl FareySlope {
    pub const INFINITY: FareySlope = FareySlope { p: 1, q: 0 };
    pub const ZERO: FareySlope = FareySlope { p: 0, q: 1 };

    /// Reduces `p/q`; `q = 0` gives `∞` regardless of `p != 0`.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p == 0 && q == 0 {
            return Err(Error::InvalidArgument("0/0 is not a slope".into()));
        }
        if q == 0 {
            return Ok(Self::INFINITY);
        }
        let g = gcd(p, q);
        let sign = q.signum();
        Ok(FareySlope { p: sign * p / g, q: sign * q / g })
    }

    pub fn integer(n: i64) -> Self {
        FareySlope { p: n, q: 1 }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn is_infinity(&self) -> bool {
        self.q == 0
    }

    pub fn negated(&self) -> Self {
        if self.is_infinity() {
            *self
        } else {
            FareySlope { p: -self.p, q: self.q }
        }
    }

    /// Image under the Möbius action of an `SL₂(Z)` matrix.
    pub fn transform(&self, m: &Matrix2) -> Self {
        let (p, q) = m.apply((self.p as i128, self.q as i128));
        let (p, q) = if q < 0 || (q == 0 && p < 0) { (-p, -q) } else { (p, q) };
        FareySlope { p: p as i64, q: q as i64 }
    }

    fn cmp_value(&self, other: &Self) -> Ordering {
        (self.p as i128 * other.q as i128).cmp(&(other.p as i128 * self.q as i128))
    }
}

impl fmt::Display for FareySlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.q {
            0 => f.write_str("inf"),
            1 => write!(f, "{}", self.p),
            q => write!(f, "{}/{}", self.p, q),
        }
    }
}

/// Parses `p/q`, an integer, or `inf`.
impl FromStr for FareySlope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if matches!(s, "inf" | "∞" | "1/0") {
            return Ok(Self::INFINITY);
        }
        let bad = || Error::Parse(format!("expected slope `p/q` or `inf`, got `{s}`"));
        match s.split_once('/') {
            Some((p, q)) => {
                let p: i64 = p.trim().parse().map_err(|_| bad())?;
                let q: i64 = q.trim().parse().map_err(|_| bad())?;
                if q <= 0 {
                    return Err(bad());
                }
                FareySlope::new(p, q)
            }
            None => s.parse::<i64>().map(FareySlope::integer).map_err(|_| bad()),
        }
    }
}

/// Regular continued fraction of `|p/q|`: integer part plus terms of the
/// fractional part in `(0, 1]`, last term `>= 2` whenever there are two or
/// more terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuedFraction {
    pub integer_part: i64,
    pub terms: Vec<i64>,
}

pub fn continued_fraction(s: &FareySlope) -> ContinuedFraction {
    if s.is_infinity() || s.p == 0 {
        return ContinuedFraction { integer_part: 0, terms: Vec::new() };
    }
    let (p, q) = (s.p.abs(), s.q);
    // fractional part in (0, 1]
    let mut int_part = p / q;
    let mut num = p % q;
    if num == 0 {
        int_part -= 1;
        num = q;
    }
    let mut terms = Vec::new();
    let (mut a, mut b) = (q, num); // x = num/q, expand q/num
    while b != 0 {
        terms.push(a / b);
        (a, b) = (b, a % b);
    }
    ContinuedFraction { integer_part: int_part, terms }
}

/// Regular continued fraction `[b₀; b₁, …, bₙ]` of an arbitrary finite slope,
/// with `b₀ = floor`, `bᵢ >= 1`, and `bₙ >= 2` when `n >= 1`.
fn floor_expansion(s: &FareySlope) -> Vec<i64> {
    let (mut a, mut b) = (s.p, s.q);
    let mut out = Vec::new();
    while b != 0 {
        let t = a.div_euclid(b);
        out.push(t);
        (a, b) = (b, a.rem_euclid(b));
    }
    out
}

/// Shortest path from `∞` to `y` through its convergent ladder, as the list
/// of vertices visited (starting at `∞`).
fn ladder_geodesic_from_infinity(y: &FareySlope) -> Vec<FareySlope> {
    if y.is_infinity() {
        return vec![FareySlope::INFINITY];
    }
    let b = floor_expansion(y);
    // convergents c_{-1} = ∞, c_0, ..., c_n stored at index k+1
    let mut conv = vec![FareySlope::INFINITY];
    let (mut p_prev, mut q_prev, mut p, mut q) = (1i64, 0i64, b[0], 1i64);
    conv.push(FareySlope { p, q });
    for &t in &b[1..] {
        (p_prev, q_prev, p, q) = (p, q, t * p + p_prev, t * q + q_prev);
        conv.push(FareySlope { p, q });
    }
    // weighted graph on convergent indices; fan k (1..=n) has pivot k, rim k-1 .. k+1
    let m = conv.len();
    let mut adj: Vec<Vec<(usize, u32)>> = vec![Vec::new(); m];
    let mut link = |i: usize, j: usize, w: u32| {
        adj[i].push((j, w));
        adj[j].push((i, w));
    };
    for i in 0..m - 1 {
        link(i, i + 1, 1);
    }
    for k in 1..b.len() {
        link(k - 1, k + 1, b[k].min(2) as u32);
    }
    // weights are 1 or 2: dijkstra over a tiny graph
    let mut dist = vec![u32::MAX; m];
    let mut prev = vec![usize::MAX; m];
    dist[0] = 0;
    let mut done = vec![false; m];
    for _ in 0..m {
        let u = (0..m)
            .filter(|&i| !done[i])
            .min_by_key(|&i| dist[i])
            .expect("unvisited vertex");
        done[u] = true;
        for &(v, w) in &adj[u] {
            if dist[u] + w < dist[v] {
                dist[v] = dist[u] + w;
                prev[v] = u;
            }
        }
    }
    // expand weight-2 rim shortcuts through their pivot
    let mut idx = Vec::new();
    let mut cur = m - 1;
    while cur != usize::MAX {
        idx.push(cur);
        cur = prev[cur];
    }
    idx.reverse();
    let mut path = vec![conv[idx[0]]];
    for pair in idx.windows(2) {
        let (i, j) = (pair[0], pair[1]);
        if i.abs_diff(j) == 2 {
            let pivot = i.min(j) + 1;
            if b[pivot] >= 2 {
                path.push(conv[pivot]);
            }
        }
        path.push(conv[j]);
    }
    path
}

/// An `SL₂(Z)` element sending `s` to `∞`.
fn to_infinity(s: &FareySlope) -> Matrix2 {
    if s.is_infinity() {
        return Matrix2::IDENTITY;
    }
    // find (x, y) with x p + y q = 1, then [[x, y], [-q, p]]
    let (p, q) = (s.p as i128, s.q as i128);
    let (mut r0, mut r1, mut x0, mut x1, mut y0, mut y1) = (p, q, 1i128, 0i128, 0i128, 1i128);
    while r1 != 0 {
        let t = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - t * r1);
        (x0, x1) = (x1, x0 - t * x1);
        (y0, y1) = (y1, y0 - t * y1);
    }
    if r0 < 0 {
        x0 = -x0;
        y0 = -y0;
    }
    Matrix2 { a: x0, b: y0, c: -q, d: p }
}

pub fn is_farey_edge(s: &FareySlope, t: &FareySlope) -> Result<bool> {
    if s == t {
        return Err(Error::InvalidArgument(format!("slopes coincide: {s}")));
    }
    Ok(farey_det(s, t).abs() == 1)
}

fn farey_det(s: &FareySlope, t: &FareySlope) -> i128 {
    s.p as i128 * t.q as i128 - s.q as i128 * t.p as i128
}

/// A shortest Farey path from `s` to `t`, endpoints included. Empty if `s == t`.
pub fn farey_geodesic(s: &FareySlope, t: &FareySlope) -> Vec<FareySlope> {
    if s == t {
        return Vec::new();
    }
    let g = to_infinity(s);
    let g_inv = g.inverse();
    ladder_geodesic_from_infinity(&t.transform(&g))
        .iter()
        .map(|v| v.transform(&g_inv))
        .collect()
}

/// Distance in the Farey graph (the pants graph of `S₁,₁`).
pub fn pants_distance(s: &FareySlope, t: &FareySlope) -> u32 {
    farey_geodesic(s, t).len().saturating_sub(1) as u32
}

/// Distance from `0`.
pub fn farey_depth(s: &FareySlope) -> u32 {
    pants_distance(&FareySlope::ZERO, s)
}

/// Interval for the completed Weil-Petersson distance between the noded
/// surfaces `N(s)` and `N(t)`. Endpoints are bounds, not estimates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistanceInterval {
    pub lower: f64,
    pub upper: f64,
    pub pants_distance: u32,
}

/// Upper bound on the length of a single Farey edge, `2√30 π^{3/4}`.
pub fn farey_edge_upper() -> f64 {
    2.0 * 30f64.sqrt() * Constants::get().pi.powf(0.75)
}

pub fn wp_distance_interval(s: &FareySlope, t: &FareySlope) -> Result<DistanceInterval> {
    if s == t {
        return Err(Error::InvalidArgument(format!("slopes coincide: {s}")));
    }
    let c = Constants::get();
    let dp = pants_distance(s, t);
    let denom = 3.0 * (c.pi / 2.0).sqrt();
    let lower = if dp == 1 { c.v8 / denom } else { c.v3 * dp as f64 / denom };
    Ok(DistanceInterval { lower, upper: farey_edge_upper() * dp as f64, pants_distance: dp })
}

/// Brute-force Farey distance by BFS over the finite subgraph of slopes with
/// denominator at most `max_q` and numerator in `[-max_p, max_p]` (plus `∞`).
/// Exposed for validation; the ladder computation is the production path.
pub fn bfs_distance(s: &FareySlope, t: &FareySlope, max_q: i64, max_p: i64) -> Option<u32> {
    bfs_distances_from(s, max_q, max_p).get(t).copied()
}

/// All BFS distances from `s` within the same bounded subgraph.
pub fn bfs_distances_from(s: &FareySlope, max_q: i64, max_p: i64) -> HashMap<FareySlope, u32> {
    let inside = |v: &FareySlope| v.is_infinity() || (v.q <= max_q && v.p.abs() <= max_p);
    let mut dist = HashMap::new();
    if !inside(s) {
        return dist;
    }
    // neighbors of p/q with bounded denominator: solve p y - q x = ±1
    let neighbors = |v: &FareySlope| -> Vec<FareySlope> {
        if v.is_infinity() {
            return (-max_p..=max_p).map(FareySlope::integer).collect();
        }
        let mut out = Vec::new();
        if v.q == 1 {
            out.push(FareySlope::INFINITY);
        }
        for y in 1..=max_q {
            for sign in [-1i64, 1] {
                let num = v.p * y - sign;
                if num % v.q == 0 {
                    let x = num / v.q;
                    if x.abs() <= max_p {
                        out.push(FareySlope { p: x, q: y });
                    }
                }
            }
        }
        out
    };
    dist.insert(*s, 0);
    let mut queue = VecDeque::from([*s]);
    while let Some(u) = queue.pop_front() {
        let d = dist[&u];
        for v in neighbors(&u) {
            dist.entry(v).or_insert_with(|| {
                queue.push_back(v);
                d + 1
            });
        }
    }
    dist
}

impl PartialOrd for FareySlope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by value with `∞` last.
impl Ord for FareySlope {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinity(), other.is_infinity()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            _ => self.cmp_value(other),
        }
    }
}
