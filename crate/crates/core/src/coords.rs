//! Normal and almost-normal coordinates.
//!
//! Per tetrahedron the coordinates are `t0 t1 t2 t3 q0 q1 q2`, followed by `o0 o1 o2` in
//! almost-normal mode. Triangle `t_v` cuts off vertex `v`. Quadrilateral `q_k` and octagon `o_k`
//! separate the vertex pairs `{0, k+1}` and the complementary pair.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::torus::TorusCurve;
use crate::triangulation::{face_vertices, BoundaryTorus, Triangulation, EDGE_VERTICES};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Normal,
    AlmostNormal,
}

impl Mode {
    pub fn per_tet(self) -> usize {
        match self {
            Mode::Normal => 7,
            Mode::AlmostNormal => 10,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Normal => "normal",
            Mode::AlmostNormal => "almost-normal",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "normal" => Ok(Mode::Normal),
            "almost-normal" => Ok(Mode::AlmostNormal),
            _ => Err(Error::Invalid(format!("unknown coordinate mode `{s}`"))),
        }
    }
}

/// Vertex pairs `(S0, S1)` of quadrilateral / octagon type `k`; `S0` contains vertex 0.
pub const QUAD_PARTITIONS: [[[usize; 2]; 2]; 3] = [[[0, 1], [2, 3]], [[0, 2], [1, 3]], [[0, 3], [1, 2]]];

/// Partner of `v` in partition `k`.
pub fn partner(k: usize, v: usize) -> usize {
    let [a, b] = QUAD_PARTITIONS[k];
    if a[0] == v {
        a[1]
    } else if a[1] == v {
        a[0]
    } else if b[0] == v {
        b[1]
    } else {
        b[0]
    }
}

/// Which side of partition `k` contains `v` (0 for the side with vertex 0).
pub fn side(k: usize, v: usize) -> usize {
    usize::from(!QUAD_PARTITIONS[k][0].contains(&v))
}

/// Quadrilateral type with an arc cutting corner `v` of face `f`: the one pairing `v` with `f`.
pub fn quad_at_corner(f: usize, v: usize) -> usize {
    (0..3).find(|&k| partner(k, v) == f).expect("distinct vertices share one partition")
}

/// Local coordinate positions of the pieces with an arc at corner `v` of face `f`.
pub fn arc_pieces(mode: Mode, f: usize, v: usize) -> Vec<usize> {
    let q = quad_at_corner(f, v);
    let mut out = vec![v, 4 + q];
    if mode == Mode::AlmostNormal {
        out.extend((0..3).filter(|&k| k != q).map(|k| 7 + k));
    }
    out
}

/// Number of times a piece at local position `piece` crosses tetrahedron edge `edge`.
pub fn piece_edge_crossings(piece: usize, edge: usize) -> u64 {
    let (a, b) = EDGE_VERTICES[edge];
    match piece {
        0..=3 => u64::from(piece == a || piece == b),
        4..=6 => u64::from(side(piece - 4, a) != side(piece - 4, b)),
        _ => {
            if partner(piece - 7, a) == b {
                2
            } else {
                1
            }
        }
    }
}

/// Number of sides of the polygon at local position `piece`.
pub fn piece_sides(piece: usize) -> u64 {
    match piece {
        0..=3 => 3,
        4..=6 => 4,
        _ => 8,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalCoords {
    mode: Mode,
    values: Vec<u64>,
}

impl NormalCoords {
    pub fn new(mode: Mode, values: Vec<u64>) -> Result<Self> {
        if values.is_empty() || !values.len().is_multiple_of(mode.per_tet()) {
            return Err(Error::CoordinateLength {
                expected: mode.per_tet() * (values.len() / mode.per_tet()).max(1),
                found: values.len(),
            });
        }
        Ok(NormalCoords { mode, values })
    }

    pub fn zeros(mode: Mode, tets: usize) -> Self {
        NormalCoords { mode, values: vec![0; mode.per_tet() * tets] }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn tet_count(&self) -> usize {
        self.values.len() / self.mode.per_tet()
    }

    /// Coordinate of local piece `piece` in tetrahedron `tet`; octagons read as 0 in normal mode.
    pub fn get(&self, tet: usize, piece: usize) -> u64 {
        if piece >= self.mode.per_tet() {
            return 0;
        }
        self.values[tet * self.mode.per_tet() + piece]
    }

    pub fn set(&mut self, tet: usize, piece: usize, value: u64) {
        let n = self.mode.per_tet();
        self.values[tet * n + piece] = value;
    }

    pub fn tet(&self, tet: usize) -> &[u64] {
        let n = self.mode.per_tet();
        &self.values[tet * n..(tet + 1) * n]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Total number of pieces.
    pub fn total(&self) -> u64 {
        self.values.iter().sum()
    }

    pub fn octagon_count(&self) -> u64 {
        (0..self.tet_count()).map(|t| (7..10).map(|p| self.get(t, p)).sum::<u64>()).sum()
    }

    pub fn add(&self, other: &NormalCoords) -> Result<NormalCoords> {
        if self.mode != other.mode {
            return Err(Error::ModeMismatch);
        }
        if self.values.len() != other.values.len() {
            return Err(Error::CoordinateLength { expected: self.values.len(), found: other.values.len() });
        }
        Ok(NormalCoords {
            mode: self.mode,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scaled(&self, k: u64) -> NormalCoords {
        NormalCoords { mode: self.mode, values: self.values.iter().map(|v| v * k).collect() }
    }

    /// Whether `other ≤ self` coordinatewise.
    pub fn dominates(&self, other: &NormalCoords) -> bool {
        self.values.len() == other.values.len() && self.values.iter().zip(&other.values).all(|(a, b)| a >= b)
    }

    /// Coordinatewise difference, if nonnegative.
    pub fn checked_sub(&self, other: &NormalCoords) -> Option<NormalCoords> {
        if !self.dominates(other) {
            return None;
        }
        Some(NormalCoords {
            mode: self.mode,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        })
    }

    /// The same surface with octagon columns added (all zero).
    pub fn to_almost_normal(&self) -> NormalCoords {
        if self.mode == Mode::AlmostNormal {
            return self.clone();
        }
        let mut values = Vec::with_capacity(self.tet_count() * 10);
        for t in 0..self.tet_count() {
            values.extend_from_slice(self.tet(t));
            values.extend_from_slice(&[0, 0, 0]);
        }
        NormalCoords { mode: Mode::AlmostNormal, values }
    }

    /// Drops octagon columns, failing if any is nonzero.
    pub fn to_normal(&self) -> Result<NormalCoords> {
        if self.mode == Mode::Normal {
            return Ok(self.clone());
        }
        if self.octagon_count() > 0 {
            return Err(Error::ModeMismatch);
        }
        let mut values = Vec::with_capacity(self.tet_count() * 7);
        for t in 0..self.tet_count() {
            values.extend_from_slice(&self.tet(t)[..7]);
        }
        Ok(NormalCoords { mode: Mode::Normal, values })
    }

    /// Coordinates with extra all-zero tetrahedra appended.
    pub fn padded(&self, tets: usize) -> NormalCoords {
        let mut values = self.values.clone();
        values.resize(tets * self.mode.per_tet(), 0);
        NormalCoords { mode: self.mode, values }
    }

    /// Text form: a `coords <mode>` header and one line per tetrahedron.
    pub fn to_text(&self) -> String {
        let mut out = format!("coords {}\n", self.mode.as_str());
        for t in 0..self.tet_count() {
            let line: Vec<String> = self.tet(t).iter().map(u64::to_string).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    pub fn parse(text: &str) -> Result<NormalCoords> {
        let mut mode = None;
        let mut values = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('%') {
                continue;
            }
            if mode.is_none() {
                mode = Some(match line {
                    "coords normal" => Mode::Normal,
                    "coords almost-normal" => Mode::AlmostNormal,
                    _ => {
                        return Err(Error::Parse {
                            line: i + 1,
                            message: "expected `coords normal` or `coords almost-normal`".into(),
                        })
                    }
                });
                continue;
            }
            for tok in line.split_whitespace() {
                values.push(tok.parse::<u64>().map_err(|_| Error::Parse {
                    line: i + 1,
                    message: format!("bad coordinate `{tok}`"),
                })?);
            }
        }
        let mode = mode.ok_or(Error::Parse { line: 1, message: "missing coords header".into() })?;
        NormalCoords::new(mode, values)
    }
}

impl std::fmt::Display for NormalCoords {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = (0..self.tet_count())
            .map(|t| self.tet(t).iter().map(u64::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "{}", parts.join(" | "))
    }
}

impl Serialize for NormalCoords {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.values.serialize(s)
    }
}

/// Number of normal arcs at corner `v` of face `f` of tetrahedron `tet`.
pub fn arc_count(c: &NormalCoords, tet: usize, f: usize, v: usize) -> u64 {
    arc_pieces(c.mode(), f, v).into_iter().map(|p| c.get(tet, p)).sum()
}

/// One row per (interior face, corner): arcs on one side minus arcs on the other.
pub fn matching_matrix(tri: &Triangulation, mode: Mode) -> Vec<Vec<i64>> {
    let n = mode.per_tet();
    let mut rows = Vec::new();
    for (tet, face, g) in tri.glued_pairs() {
        for v in face_vertices(face) {
            let mut row = vec![0i64; n * tri.size()];
            for p in arc_pieces(mode, face, v) {
                row[tet * n + p] += 1;
            }
            for p in arc_pieces(mode, g.face, g.perm.apply(v)) {
                row[g.tet * n + p] -= 1;
            }
            rows.push(row);
        }
    }
    rows
}

fn check_length(tri: &Triangulation, c: &NormalCoords) -> Result<()> {
    let expected = tri.size() * c.mode().per_tet();
    if c.values().len() != expected {
        return Err(Error::CoordinateLength { expected, found: c.values().len() });
    }
    Ok(())
}

pub fn is_matched(tri: &Triangulation, c: &NormalCoords) -> Result<bool> {
    check_length(tri, c)?;
    for (tet, face, g) in tri.glued_pairs() {
        for v in face_vertices(face) {
            if arc_count(c, tet, face, v) != arc_count(c, g.tet, g.face, g.perm.apply(v)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn check_matched(tri: &Triangulation, c: &NormalCoords) -> Result<()> {
    if is_matched(tri, c)? {
        Ok(())
    } else {
        Err(Error::Unmatched)
    }
}

/// Why the coordinates fail the embedding conditions, if they do.
pub fn admissibility_violation(c: &NormalCoords) -> Option<String> {
    let mut octagons = 0;
    for t in 0..c.tet_count() {
        let quads = (4..7).filter(|&p| c.get(t, p) > 0).count();
        if quads > 1 {
            return Some(format!("tetrahedron {t} has {quads} quadrilateral types"));
        }
        let oct: u64 = (7..10).map(|p| c.get(t, p)).sum();
        if oct > 0 && quads > 0 {
            return Some(format!("tetrahedron {t} has both a quadrilateral and an octagon"));
        }
        octagons += oct;
    }
    if octagons > 1 {
        return Some(format!("{octagons} octagons (at most one allowed)"));
    }
    None
}

pub fn is_admissible(tri: &Triangulation, c: &NormalCoords) -> Result<bool> {
    check_matched(tri, c)?;
    Ok(admissibility_violation(c).is_none())
}

/// Two admissible surfaces are compatible when their sum is admissible.
pub fn compatible(tri: &Triangulation, a: &NormalCoords, b: &NormalCoords) -> Result<bool> {
    let sum = a.add(b)?;
    is_admissible(tri, &sum)
}

pub fn edge_crossings(c: &NormalCoords, tet: usize, edge: usize) -> u64 {
    (0..c.mode().per_tet()).map(|p| c.get(tet, p) * piece_edge_crossings(p, edge)).sum()
}

/// Number of intersections with the edges of the triangulation, one representative per class.
pub fn weight(tri: &Triangulation, c: &NormalCoords) -> u64 {
    (0..tri.edge_count())
        .map(|class| {
            let (t, e) = tri.edge_members(class)[0];
            edge_crossings(c, t, e)
        })
        .sum()
}

/// Total number of boundary arcs, which is the length of the boundary curve system.
pub fn boundary_length(tri: &Triangulation, c: &NormalCoords) -> u64 {
    tri.boundary_faces()
        .iter()
        .map(|&(t, f)| face_vertices(f).iter().map(|&v| arc_count(c, t, f, v)).sum::<u64>())
        .sum()
}

/// The boundary curve on a one-vertex boundary torus, in that torus's basis.
pub fn boundary_restriction(tri: &Triangulation, c: &NormalCoords, torus: &BoundaryTorus) -> Result<TorusCurve> {
    check_length(tri, c)?;
    let mut x = [[0u64; 3]; 2];
    for (which, &(tet, face)) in torus.faces().iter().enumerate() {
        for v in face_vertices(face) {
            x[which][torus.corner_label(which, v)] += arc_count(c, tet, face, v);
        }
    }
    if x[0] != x[1] {
        return Err(Error::BoundaryArcs(format!(
            "triangle arc counts {:?} and {:?} differ",
            x[0], x[1]
        )));
    }
    Ok(TorusCurve { x: x[0] })
}

/// Linear Euler characteristic: crossings − arcs + pieces, with interior face arcs counted once.
pub fn euler_characteristic(tri: &Triangulation, c: &NormalCoords) -> i64 {
    let pieces = c.total() as i64;
    let sides: i64 = (0..c.tet_count())
        .map(|t| (0..c.mode().per_tet()).map(|p| (c.get(t, p) * piece_sides(p)) as i64).sum::<i64>())
        .sum();
    let glued: i64 = tri
        .glued_pairs()
        .map(|(t, f, _)| face_vertices(f).iter().map(|&v| arc_count(c, t, f, v) as i64).sum::<i64>())
        .sum();
    let edges = sides - glued;
    weight(tri, c) as i64 - edges + pieces
}
