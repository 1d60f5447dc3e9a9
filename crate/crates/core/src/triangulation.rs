//! Layered ideal triangulations of once-punctured torus bundles.
//!
//! Each layer is an ideal triangulation of the punctured torus, modelled in
//! the universal cover: for a basis `(u, w)` of `Z²` the two triangles are the
//! lattice triangles `(0, u, u+w)` and `(0, w, u+w)` up to translation. A
//! letter flips one diagonal (`R`: `w → 2u+w`, `L`: `u → u+2w`), and the
//! flip is filled by a tetrahedron whose four vertices are the corners of the
//! flipped quadrilateral. Faces of consecutive layers are glued by matching
//! lattice triangles up to translation; the last layer is glued to the first
//! through the inverse of the monodromy.
//!
//! Vertices are ordered so that every tetrahedron is positively oriented in
//! `(x, y, height)` coordinates, which makes every face gluing odd.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mapping_class::{Letter, LrWord, Matrix2, MAX_WORD_LEN};

/// `perm[i]` is the image of vertex `i`.
pub type Perm4 = [u8; 4];

/// The six edges of a tetrahedron as vertex pairs.
pub const EDGES: [(u8, u8); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Shape label of each edge: 0 for `z`, 1 for `1/(1−z)`, 2 for `1 − 1/z`.
pub const EDGE_SHAPE: [usize; 6] = [0, 1, 2, 2, 1, 0];

/// The other three vertices in counterclockwise order seen from the vertex.
const LINK_ORDER: [[u8; 3]; 4] = [[1, 2, 3], [0, 3, 2], [3, 0, 1], [2, 1, 0]];

pub fn edge_index(a: u8, b: u8) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    EDGES
        .iter()
        .position(|&e| e == (a, b))
        .expect("distinct vertices")
}

fn invert(p: &Perm4) -> Perm4 {
    let mut inv = [0u8; 4];
    for (i, &pi) in p.iter().enumerate() {
        inv[pi as usize] = i as u8;
    }
    inv
}

pub fn perm_is_odd(p: &Perm4) -> bool {
    let mut inversions = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

type Point = (i128, i128);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tetrahedron {
    /// Tetrahedron glued to face `i` (the face opposite vertex `i`).
    pub neighbors: [usize; 4],
    /// Vertex map realizing the gluing across face `i`.
    pub gluings: [Perm4; 4],
    /// Lattice position of each vertex in the universal cover of its layer.
    pub positions: [Point; 4],
    /// 0 for the endpoints of the flipped-away diagonal, 1 for the new one.
    pub heights: [u8; 4],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Corner {
    pub tet: usize,
    /// Index into [`EDGES`].
    pub edge: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeClass {
    /// Corners in the cyclic order met while walking around the edge.
    pub corners: Vec<Corner>,
}

impl EdgeClass {
    pub fn valence(&self) -> usize {
        self.corners.len()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdealTriangulation {
    pub word: LrWord,
    pub monodromy: Matrix2,
    pub tetrahedra: Vec<Tetrahedron>,
    pub edge_classes: Vec<EdgeClass>,
}

/// One multiplicative equation `Π zᵢ^{aᵢ} (1/(1−zᵢ))^{bᵢ} (1−1/zᵢ)^{cᵢ} = 1`
/// whose logarithmic form (principal branches) sums to `iπ·pi_multiple`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationRow {
    pub a: Vec<i32>,
    pub b: Vec<i32>,
    pub c: Vec<i32>,
    pub pi_multiple: i32,
}

impl EquationRow {
    fn zero(k: usize, pi_multiple: i32) -> Self {
        EquationRow { a: vec![0; k], b: vec![0; k], c: vec![0; k], pi_multiple }
    }

    fn add(&mut self, tet: usize, shape: usize, coeff: i32) {
        match shape {
            0 => self.a[tet] += coeff,
            1 => self.b[tet] += coeff,
            _ => self.c[tet] += coeff,
        }
    }

    pub fn total(&self) -> i32 {
        self.a.iter().chain(&self.b).chain(&self.c).sum()
    }

    /// Linear part after eliminating `log z''` with `log z + log z' + log z'' = iπ`.
    fn reduced(&self) -> Vec<i128> {
        (0..self.a.len())
            .flat_map(|i| [(self.a[i] - self.c[i]) as i128, (self.b[i] - self.c[i]) as i128])
            .collect()
    }
}

/// Edge equations (one per edge class) and two peripheral holonomy rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GluingSystem {
    pub num_tetrahedra: usize,
    pub edges: Vec<EquationRow>,
    /// Holonomy rows of two homologically independent simple closed curves on
    /// the cusp torus; both vanish exactly at the complete structure.
    pub cusp: Vec<EquationRow>,
}

pub fn build_layered(word: &LrWord) -> Result<IdealTriangulation> {
    if !word.has_both_letters() {
        return Err(Error::WordNotPseudoAnosov(word.to_string()));
    }
    if word.len() > MAX_WORD_LEN {
        return Err(Error::WordTooLong { len: word.len(), max: MAX_WORD_LEN });
    }
    let monodromy = word.product()?;
    let k = word.len();
    let mut tets = Vec::with_capacity(k);
    let (mut u, mut w): (Point, Point) = ((1, 0), (0, 1));
    let add = |p: Point, q: Point| (p.0 + q.0, p.1 + q.1);
    for letter in word.letters() {
        let (new_end, old, next) = match letter {
            Letter::R => (add(add(u, u), w), [u, add(u, w)], (u, add(u, w))),
            Letter::L => (add(u, add(w, w)), [w, add(u, w)], (add(u, w), w)),
        };
        let mut positions = [(0, 0), new_end, old[0], old[1]];
        let mut heights = [1u8, 1, 0, 0];
        if orientation(&positions, &heights) < 0 {
            positions.swap(2, 3);
            heights.swap(2, 3);
        }
        tets.push(Tetrahedron { neighbors: [usize::MAX; 4], gluings: [[0; 4]; 4], positions, heights });
        (u, w) = next;
    }

    let inverse = monodromy.inverse();
    for j in 0..k {
        let next = (j + 1) % k;
        let map = if next == 0 { inverse } else { Matrix2::IDENTITY };
        for top in 0..4u8 {
            if tets[j].heights[top as usize] != 0 {
                continue; // top faces are opposite the old-diagonal endpoints
            }
            let pts: Vec<(u8, Point)> = (0..4u8)
                .filter(|&v| v != top)
                .map(|v| (v, map.apply(tets[j].positions[v as usize])))
                .collect();
            let matched = (0..4u8)
                .filter(|&g| tets[next].heights[g as usize] == 1)
                .find_map(|g| match_faces(&pts, &tets[next], g).map(|perm| (g, perm)));
            let (bottom, mut perm) = matched.ok_or_else(|| {
                Error::Triangulation(format!("no face of layer {next} matches top face {top} of layer {j}"))
            })?;
            perm[top as usize] = bottom;
            tets[j].neighbors[top as usize] = next;
            tets[j].gluings[top as usize] = perm;
            tets[next].neighbors[bottom as usize] = j;
            tets[next].gluings[bottom as usize] = invert(&perm);
        }
    }
    if tets.iter().any(|t| t.neighbors.contains(&usize::MAX)) {
        return Err(Error::Triangulation("unglued face".into()));
    }
    let edge_classes = walk_edges(&tets);
    let tri = IdealTriangulation { word: word.clone(), monodromy, tetrahedra: tets, edge_classes };
    tri.validate()?;
    Ok(tri)
}

fn orientation(positions: &[Point; 4], heights: &[u8; 4]) -> i128 {
    let v = |i: usize| {
        [
            positions[i].0 - positions[0].0,
            positions[i].1 - positions[0].1,
            heights[i] as i128 - heights[0] as i128,
        ]
    };
    let (a, b, c) = (v(1), v(2), v(3));
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
}

/// If face `g` of `tet` is a translate of the triangle `pts`, returns the
/// vertex correspondence (with the opposite vertex left unset).
fn match_faces(pts: &[(u8, Point)], tet: &Tetrahedron, g: u8) -> Option<Perm4> {
    let targets: Vec<(u8, Point)> = (0..4u8)
        .filter(|&v| v != g)
        .map(|v| (v, tet.positions[v as usize]))
        .collect();
    for &(_, anchor) in &targets {
        let shift = (anchor.0 - pts[0].1 .0, anchor.1 - pts[0].1 .1);
        let mut perm = [0u8; 4];
        let ok = pts.iter().all(|&(v, p)| {
            let moved = (p.0 + shift.0, p.1 + shift.1);
            match targets.iter().find(|t| t.1 == moved) {
                Some(&(tv, _)) => {
                    perm[v as usize] = tv;
                    true
                }
                None => false,
            }
        });
        if ok {
            return Some(perm);
        }
    }
    None
}

fn walk_edges(tets: &[Tetrahedron]) -> Vec<EdgeClass> {
    let mut seen = vec![[false; 6]; tets.len()];
    let mut classes = Vec::new();
    for t0 in 0..tets.len() {
        for e0 in 0..6 {
            if seen[t0][e0] {
                continue;
            }
            let (a0, b0) = EDGES[e0];
            let rest: Vec<u8> = (0..4).filter(|&v| v != a0 && v != b0).collect();
            let (mut t, mut a, mut b, mut c, mut d) = (t0, a0, b0, rest[0], rest[1]);
            let mut corners = Vec::new();
            loop {
                let e = edge_index(a, b);
                if seen[t][e] {
                    break;
                }
                seen[t][e] = true;
                corners.push(Corner { tet: t, edge: e });
                let perm = tets[t].gluings[c as usize];
                let next = tets[t].neighbors[c as usize];
                (a, b, c, d) = (perm[a as usize], perm[b as usize], perm[d as usize], perm[c as usize]);
                t = next;
            }
            classes.push(EdgeClass { corners });
        }
    }
    classes
}

impl IdealTriangulation {
    pub fn num_tetrahedra(&self) -> usize {
        self.tetrahedra.len()
    }

    pub fn valences(&self) -> Vec<usize> {
        self.edge_classes.iter().map(EdgeClass::valence).collect()
    }

    /// Checks the face pairing is an orientation-reversing involution and the
    /// edge count matches a one-cusped triangulation.
    pub fn validate(&self) -> Result<()> {
        let k = self.tetrahedra.len();
        for (t, tet) in self.tetrahedra.iter().enumerate() {
            for f in 0..4 {
                let perm = tet.gluings[f];
                let other = &self.tetrahedra[tet.neighbors[f]];
                let back = perm[f] as usize;
                if other.neighbors[back] != t || other.gluings[back] != invert(&perm) {
                    return Err(Error::Triangulation(format!("face {f} of tetrahedron {t} is not paired")));
                }
                if !perm_is_odd(&perm) {
                    return Err(Error::Triangulation(format!("gluing of face {f} of tetrahedron {t} preserves orientation")));
                }
            }
        }
        if self.edge_classes.len() != k {
            return Err(Error::Triangulation(format!(
                "{} edge classes for {k} tetrahedra",
                self.edge_classes.len()
            )));
        }
        Ok(())
    }

    pub fn gluing_equations(&self) -> Result<GluingSystem> {
        let k = self.num_tetrahedra();
        let edges: Vec<EquationRow> = self
            .edge_classes
            .iter()
            .map(|class| {
                let mut row = EquationRow::zero(k, 2);
                for corner in &class.corners {
                    row.add(corner.tet, EDGE_SHAPE[corner.edge], 1);
                }
                row
            })
            .collect();
        let cusp = self.peripheral_rows(&edges)?;
        Ok(GluingSystem { num_tetrahedra: k, edges, cusp })
    }

    /// Holonomy rows of two simple dual cycles of the cusp triangulation that
    /// are independent modulo the edge rows.
    fn peripheral_rows(&self, edges: &[EquationRow]) -> Result<Vec<EquationRow>> {
        let k = self.num_tetrahedra();
        let n = 4 * k;
        let node = |t: usize, v: u8| 4 * t + v as usize;
        let cross = |id: usize, f: u8| -> (usize, u8) {
            let (t, v) = (id / 4, (id % 4) as u8);
            let tet = &self.tetrahedra[t];
            let perm = tet.gluings[f as usize];
            (node(tet.neighbors[f as usize], perm[v as usize]), perm[f as usize])
        };

        // spanning tree of the dual graph: parent, exit face in parent, entry face in child
        let mut parent: Vec<Option<(usize, u8, u8)>> = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        depth[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let v = (x % 4) as u8;
            for f in (0..4u8).filter(|&f| f != v) {
                let (y, g) = cross(x, f);
                if depth[y] == usize::MAX {
                    depth[y] = depth[x] + 1;
                    parent[y] = Some((x, f, g));
                    queue.push_back(y);
                }
            }
        }
        if depth.contains(&usize::MAX) {
            return Err(Error::Triangulation("cusp triangulation is disconnected".into()));
        }

        let mut basis: Vec<Vec<i128>> = edges.iter().map(EquationRow::reduced).collect();
        let mut rank = rational_rank(&basis);
        let mut found = Vec::new();
        for x in 0..n {
            let v = (x % 4) as u8;
            for f in (0..4u8).filter(|&f| f != v) {
                let (y, g) = cross(x, f);
                if (y, g) <= (x, f) {
                    continue; // each dual edge once
                }
                if parent[y] == Some((x, f, g)) || parent[x] == Some((y, g, f)) {
                    continue;
                }
                let row = self.cycle_row(&parent, &depth, (x, f), (y, g));
                basis.push(row.reduced());
                let r = rational_rank(&basis);
                if r > rank {
                    rank = r;
                    found.push(row);
                    if found.len() == 2 {
                        return Ok(found);
                    }
                } else {
                    basis.pop();
                }
            }
        }
        Err(Error::Triangulation("could not find two peripheral curves".into()))
    }

    /// Holonomy row of the fundamental cycle closed by the dual edge `x --f/g-- y`.
    fn cycle_row(
        &self,
        parent: &[Option<(usize, u8, u8)>],
        depth: &[usize],
        (x, f): (usize, u8),
        (y, g): (usize, u8),
    ) -> EquationRow {
        // steps are (node, entry face, exit face)
        let mut up_x = vec![x];
        let mut up_y = vec![y];
        let (mut a, mut b) = (x, y);
        while a != b {
            if depth[a] >= depth[b] {
                a = parent[a].expect("non-root").0;
                up_x.push(a);
            } else {
                b = parent[b].expect("non-root").0;
                up_y.push(b);
            }
        }
        // cycle: lca -> ... -> x -> y -> ... -> lca
        let mut nodes: Vec<usize> = up_x.iter().rev().copied().collect();
        nodes.extend(up_y.iter().take(up_y.len() - 1));
        let m = nodes.len();
        // face used to leave nodes[i] towards nodes[i+1], and face entered there
        let mut exits = vec![0u8; m];
        let mut entries = vec![0u8; m];
        for i in 0..m {
            let (from, to) = (nodes[i], nodes[(i + 1) % m]);
            let (out_face, in_face) = if from == x && to == y && i == up_x.len() - 1 {
                (f, g)
            } else if parent[to].map(|p| p.0) == Some(from) && i < up_x.len() - 1 {
                let p = parent[to].expect("tree edge");
                (p.1, p.2)
            } else {
                let p = parent[from].expect("tree edge");
                debug_assert_eq!(p.0, to);
                (p.2, p.1)
            };
            exits[i] = out_face;
            entries[(i + 1) % m] = in_face;
        }
        let k = self.num_tetrahedra();
        let mut row = EquationRow::zero(k, 0);
        for i in 0..m {
            let (t, v) = (nodes[i] / 4, (nodes[i] % 4) as u8);
            let (fin, fout) = (entries[i], exits[i]);
            let corner = (0..4u8)
                .find(|&c| c != v && c != fin && c != fout)
                .expect("three distinct faces");
            let order = LINK_ORDER[v as usize];
            let right = (0..3).any(|r| {
                [order[r], order[(r + 1) % 3], order[(r + 2) % 3]] == [fin, fout, corner]
            });
            row.add(t, EDGE_SHAPE[edge_index(v, corner)], if right { -1 } else { 1 });
        }
        row
    }

    /// JSON-friendly dump of face pairings and edge corner lists.
    pub fn dump(&self) -> TriangulationDump {
        TriangulationDump {
            word: self.word.to_string(),
            tetrahedra: self
                .tetrahedra
                .iter()
                .enumerate()
                .map(|(i, t)| TetrahedronDump {
                    index: i,
                    neighbors: t.neighbors,
                    gluings: t.gluings.map(|p| p.iter().map(|d| char::from(b'0' + d)).collect()),
                })
                .collect(),
            edges: self
                .edge_classes
                .iter()
                .map(|c| c.corners.iter().map(|k| (k.tet, EDGES[k.edge])).collect())
                .collect(),
        }
    }

    /// Whether `other` is combinatorially isomorphic (orientation may reverse).
    pub fn is_isomorphic(&self, other: &IdealTriangulation) -> bool {
        let k = self.num_tetrahedra();
        if k != other.num_tetrahedra() {
            return false;
        }
        let mut sorted_a = self.valences();
        let mut sorted_b = other.valences();
        sorted_a.sort_unstable();
        sorted_b.sort_unstable();
        if sorted_a != sorted_b {
            return false;
        }
        (0..k).any(|target| all_perms().iter().any(|p| self.extend_isomorphism(other, target, *p)))
    }

    fn extend_isomorphism(&self, other: &IdealTriangulation, target: usize, perm: Perm4) -> bool {
        let k = self.num_tetrahedra();
        let mut map: Vec<Option<(usize, Perm4)>> = vec![None; k];
        map[0] = Some((target, perm));
        let mut used = vec![false; k];
        used[target] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(t) = queue.pop_front() {
            let (img, sigma) = map[t].expect("mapped");
            for f in 0..4 {
                let nb = self.tetrahedra[t].neighbors[f];
                let glue = self.tetrahedra[t].gluings[f];
                let img_face = sigma[f] as usize;
                let img_nb = other.tetrahedra[img].neighbors[img_face];
                let img_glue = other.tetrahedra[img].gluings[img_face];
                // sigma_nb ∘ glue = img_glue ∘ sigma
                let mut sigma_nb = [0u8; 4];
                for v in 0..4 {
                    sigma_nb[glue[v] as usize] = img_glue[sigma[v] as usize];
                }
                match map[nb] {
                    Some((mapped, existing)) => {
                        if mapped != img_nb || existing != sigma_nb {
                            return false;
                        }
                    }
                    None => {
                        if used[img_nb] {
                            return false;
                        }
                        used[img_nb] = true;
                        map[nb] = Some((img_nb, sigma_nb));
                        queue.push_back(nb);
                    }
                }
            }
        }
        map.iter().all(Option::is_some)
    }
}

fn all_perms() -> Vec<Perm4> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4u8 {
        for b in 0..4u8 {
            for c in 0..4u8 {
                for d in 0..4u8 {
                    let p = [a, b, c, d];
                    let mut s = p;
                    s.sort_unstable();
                    if s == [0, 1, 2, 3] {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TetrahedronDump {
    pub index: usize,
    pub neighbors: [usize; 4],
    /// Each gluing permutation written as the images of `0123`, e.g. `"1032"`.
    pub gluings: [String; 4],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TriangulationDump {
    pub word: String,
    pub tetrahedra: Vec<TetrahedronDump>,
    /// Per edge class, the `(tetrahedron, (v0, v1))` corners in walking order.
    pub edges: Vec<Vec<(usize, (u8, u8))>>,
}

/// Rank over `Q` of integer row vectors, by fraction-free elimination.
pub(crate) fn rational_rank(rows: &[Vec<i128>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in 0..m.len() {
            if r == rank || m[r][col] == 0 {
                continue;
            }
            let (p, q) = (m[rank][col], m[r][col]);
            for c in 0..cols {
                m[r][c] = m[r][c] * p - m[rank][c] * q;
            }
            let g = m[r].iter().fold(0i128, |g, &x| gcd128(g, x));
            if g > 1 {
                m[r].iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    rank
}

fn gcd128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl GluingSystem {
    /// Rows actually imposed on the solver: all edge rows but the last, and
    /// the first peripheral row.
    pub fn solver_rows(&self) -> Vec<&EquationRow> {
        let mut rows: Vec<&EquationRow> = self.edges[..self.edges.len() - 1].iter().collect();
        rows.push(&self.cusp[0]);
        rows
    }

    /// Column sums of the edge rows per tetrahedron and shape label.
    pub fn column_sums(&self) -> Vec<[i32; 3]> {
        (0..self.num_tetrahedra)
            .map(|i| {
                [
                    self.edges.iter().map(|r| r.a[i]).sum(),
                    self.edges.iter().map(|r| r.b[i]).sum(),
                    self.edges.iter().map(|r| r.c[i]).sum(),
                ]
            })
            .collect()
    }

    /// Distinct edge-class map of a row index to its sorted exponent multiset;
    /// used to compare systems up to tetrahedron relabeling.
    pub fn row_signature(&self) -> Vec<Vec<(i32, i32, i32)>> {
        let mut sig: Vec<Vec<(i32, i32, i32)>> = self
            .edges
            .iter()
            .map(|r| {
                let mut v: Vec<_> = (0..self.num_tetrahedra).map(|i| (r.a[i], r.b[i], r.c[i])).collect();
                v.sort_unstable();
                v
            })
            .collect();
        sig.sort();
        sig
    }

    /// Applies a relabeling `tet i -> perm[i]` of the tetrahedra.
    pub fn relabeled(&self, perm: &[usize]) -> GluingSystem {
        let map_row = |r: &EquationRow| {
            let mut out = EquationRow::zero(self.num_tetrahedra, r.pi_multiple);
            for (i, &j) in perm.iter().enumerate() {
                out.a[j] = r.a[i];
                out.b[j] = r.b[i];
                out.c[j] = r.c[i];
            }
            out
        };
        GluingSystem {
            num_tetrahedra: self.num_tetrahedra,
            edges: self.edges.iter().map(map_row).collect(),
            cusp: self.cusp.iter().map(map_row).collect(),
        }
    }

    /// Rank of the reduced linear parts of the edge rows together with the
    /// peripheral rows.
    pub fn reduced_rank(&self, with_cusp: bool) -> usize {
        let mut rows: Vec<Vec<i128>> = self.edges.iter().map(EquationRow::reduced).collect();
        if with_cusp {
            rows.extend(self.cusp.iter().map(EquationRow::reduced));
        }
        rational_rank(&rows)
    }
}

/// Maps tetrahedron vertex positions for debugging dumps; keyed by the
/// translation class of each face.
pub fn face_classes(tri: &IdealTriangulation) -> HashMap<(usize, u8), usize> {
    let mut out = HashMap::new();
    let mut next = 0;
    for (t, tet) in tri.tetrahedra.iter().enumerate() {
        for f in 0..4u8 {
            if out.contains_key(&(t, f)) {
                continue;
            }
            out.insert((t, f), next);
            out.insert((tet.neighbors[f as usize], tet.gluings[f as usize][f as usize]), next);
            next += 1;
        }
    }
    out
}
