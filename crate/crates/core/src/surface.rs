//! Reconstruction of the surface described by admissible coordinates: connected components,
//! Euler characteristic, orientability, boundary circles and whether it separates.
//!
//! Parallel copies of a piece type are stacked away from the vertex they cut off (triangles) or
//! away from the side containing vertex 0 (quadrilaterals). Arcs at a corner of a face are
//! numbered from the corner outward, and a face gluing matches arcs with equal numbers.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::Serialize;

use crate::coords::{
    admissibility_violation, arc_count, check_matched, quad_at_corner, side, Mode, NormalCoords, QUAD_PARTITIONS,
};
use crate::dsu::Dsu;
use crate::error::{Error, Result};
use crate::torus::TorusCurve;
use crate::triangulation::{edge_index, face_vertices, BoundaryTorus, Triangulation, EDGE_VERTICES};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceSummary {
    pub coords: NormalCoords,
    pub euler: i64,
    /// Boundary curve on each supplied one-vertex boundary torus.
    pub boundary_curves: Vec<TorusCurve>,
    pub boundary_circles: usize,
    pub boundary_length: u64,
    pub weight: u64,
    pub orientable: bool,
    /// Orientable genus, or the number of crosscaps for a non-orientable surface.
    pub genus: i64,
    pub connected: bool,
    /// Whether the complement is disconnected. `None` for disconnected surfaces or triangulations.
    pub separating: Option<bool>,
}

impl SurfaceSummary {
    pub fn is_closed(&self) -> bool {
        self.boundary_circles == 0
    }

    pub fn is_planar(&self) -> bool {
        self.connected && self.orientable && self.genus == 0
    }

    pub fn is_disk(&self) -> bool {
        self.is_planar() && self.boundary_circles == 1
    }

    pub fn is_annulus(&self) -> bool {
        self.is_planar() && self.boundary_circles == 2
    }

    pub fn is_sphere(&self) -> bool {
        self.is_planar() && self.boundary_circles == 0
    }

    pub fn is_mobius(&self) -> bool {
        self.connected && !self.orientable && self.euler == 0 && self.boundary_circles == 1
    }
}

/// Polygon boundary of a piece as a cycle of edge points: `(u, w, near)` is the point on edge
/// `uw`, and `near` tells which end it is close to for the doubly crossed octagon edges.
fn piece_cycle(piece: usize) -> Vec<(usize, usize, usize)> {
    match piece {
        0..=3 => {
            let v = piece;
            let o: Vec<usize> = (0..4).filter(|&x| x != v).collect();
            o.iter().map(|&x| (v, x, v)).collect()
        }
        4..=6 => {
            let [[a, b], [c, d]] = QUAD_PARTITIONS[piece - 4];
            vec![(a, c, a), (a, d, a), (b, d, b), (b, c, b)]
        }
        _ => {
            let [[a, b], [c, d]] = QUAD_PARTITIONS[piece - 7];
            vec![(a, b, a), (a, c, a), (c, d, c), (b, c, b), (a, b, b), (b, d, b), (c, d, d), (a, d, a)]
        }
    }
}

fn common_vertex(p: (usize, usize, usize), q: (usize, usize, usize)) -> Option<usize> {
    [p.0, p.1].into_iter().find(|&x| x == q.0 || x == q.1)
}

/// `direction[piece][f][v]`: whether the boundary cycle of the piece runs along its arc at
/// corner `v` of face `f` from edge `{v, x}` to edge `{v, y}` with `x < y`.
fn direction_table() -> &'static [[[Option<bool>; 4]; 4]; 10] {
    static TABLE: OnceLock<[[[Option<bool>; 4]; 4]; 10]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = [[[None; 4]; 4]; 10];
        for (piece, entry) in table.iter_mut().enumerate() {
            let cycle = piece_cycle(piece);
            let n = cycle.len();
            for i in 0..n {
                let (p, q) = (cycle[i], cycle[(i + 1) % n]);
                let v = common_vertex(p, q).expect("consecutive points share a corner");
                let mut verts = vec![p.0, p.1, q.0, q.1];
                verts.sort_unstable();
                verts.dedup();
                let f = (0..4).find(|x| !verts.contains(x)).expect("arc lies in a face");
                let other = |e: (usize, usize, usize)| if e.0 == v { e.1 } else { e.0 };
                let (x, y) = (other(p), other(q));
                entry[f][v] = Some(x < y);
            }
        }
        table
    })
}

struct Layout<'a> {
    tri: &'a Triangulation,
    c: &'a NormalCoords,
    per_tet: usize,
    offsets: Vec<usize>,
}

impl<'a> Layout<'a> {
    fn new(tri: &'a Triangulation, c: &'a NormalCoords) -> Self {
        let per_tet = c.mode().per_tet();
        let mut offsets = Vec::with_capacity(c.values().len() + 1);
        let mut acc = 0usize;
        for &v in c.values() {
            offsets.push(acc);
            acc += v as usize;
        }
        offsets.push(acc);
        Layout { tri, c, per_tet, offsets }
    }

    fn piece_total(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    fn piece_id(&self, tet: usize, piece: usize, instance: usize) -> usize {
        self.offsets[tet * self.per_tet + piece] + instance
    }

    /// The piece owning arc number `pos` at corner `v` of face `f`, and its local type.
    fn piece_at(&self, tet: usize, f: usize, v: usize, pos: usize) -> (usize, usize) {
        let t = self.c.get(tet, v) as usize;
        if pos < t {
            return (self.piece_id(tet, v, pos), v);
        }
        let r = pos - t;
        let q = quad_at_corner(f, v);
        let count = self.c.get(tet, 4 + q) as usize;
        if count > 0 {
            let j = if side(q, v) == 0 { r } else { count - 1 - r };
            return (self.piece_id(tet, 4 + q, j), 4 + q);
        }
        let k = (0..3)
            .find(|&k| k != q && self.c.get(tet, 7 + k) > 0)
            .expect("arc is owned by some piece");
        (self.piece_id(tet, 7 + k, r), 7 + k)
    }

    fn pieces(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.c.tet_count()).flat_map(move |tet| {
            (0..self.per_tet).flat_map(move |p| (0..self.c.get(tet, p) as usize).map(move |i| (tet, p, i)))
        })
    }

    /// Point index along the edge `{a, b}` of `tet`, counted from the smaller vertex.
    fn point_key(&self, tet: usize, a: usize, b: usize, from_a: usize, points: &PointIndex) -> usize {
        let e = edge_index(a, b);
        let n = points.count(tet, e);
        let idx = if a < b { from_a } else { n - 1 - from_a };
        points.id(tet, e, idx)
    }
}

struct PointIndex {
    offsets: Vec<usize>,
}

impl PointIndex {
    fn new(c: &NormalCoords) -> Self {
        let mut offsets = Vec::with_capacity(c.tet_count() * 6 + 1);
        let mut acc = 0usize;
        for tet in 0..c.tet_count() {
            for e in 0..6 {
                offsets.push(acc);
                acc += crate::coords::edge_crossings(c, tet, e) as usize;
            }
        }
        offsets.push(acc);
        PointIndex { offsets }
    }

    fn count(&self, tet: usize, e: usize) -> usize {
        self.offsets[tet * 6 + e + 1] - self.offsets[tet * 6 + e]
    }

    fn id(&self, tet: usize, e: usize, idx: usize) -> usize {
        self.offsets[tet * 6 + e] + idx
    }

    fn total(&self) -> usize {
        *self.offsets.last().unwrap()
    }
}

fn validate(tri: &Triangulation, c: &NormalCoords) -> Result<()> {
    check_matched(tri, c)?;
    if let Some(why) = admissibility_violation(c) {
        return Err(Error::NotAdmissible(why));
    }
    Ok(())
}

/// Component label of every piece, numbered by first appearance.
fn piece_components(layout: &Layout) -> (Vec<usize>, usize) {
    let mut dsu = Dsu::new(layout.piece_total());
    for (tet, face, g) in layout.tri.glued_pairs() {
        for v in face_vertices(face) {
            let w = g.perm.apply(v);
            for pos in 0..arc_count(layout.c, tet, face, v) as usize {
                let (a, _) = layout.piece_at(tet, face, v, pos);
                let (b, _) = layout.piece_at(g.tet, g.face, w, pos);
                dsu.union(a, b);
            }
        }
    }
    dsu.labels()
}

/// Splits admissible coordinates into the coordinates of their connected components.
pub fn decompose_components(tri: &Triangulation, c: &NormalCoords) -> Result<Vec<NormalCoords>> {
    validate(tri, c)?;
    let layout = Layout::new(tri, c);
    let (labels, count) = piece_components(&layout);
    let mut out = vec![NormalCoords::zeros(c.mode(), c.tet_count()); count];
    for (id, (tet, p, _)) in layout.pieces().enumerate() {
        let part = &mut out[labels[id]];
        let v = part.get(tet, p);
        part.set(tet, p, v + 1);
    }
    Ok(out)
}

struct ComponentStats {
    pieces: usize,
    arcs: usize,
    points: usize,
    orientable: bool,
    circles: usize,
}

fn component_stats(layout: &Layout) -> (Vec<usize>, Vec<ComponentStats>) {
    let tri = layout.tri;
    let c = layout.c;
    let (labels, count) = piece_components(layout);
    let mut stats: Vec<ComponentStats> = (0..count)
        .map(|_| ComponentStats { pieces: 0, arcs: 0, points: 0, orientable: true, circles: 0 })
        .collect();
    for &l in &labels {
        stats[l].pieces += 1;
    }

    // arcs: one per glued pair, one per boundary arc
    let dirs = direction_table();
    let mut orient = Dsu::new(layout.piece_total());
    for (tet, face, g) in tri.glued_pairs() {
        for v in face_vertices(face) {
            let w = g.perm.apply(v);
            let [x, y] = other_two(face, v);
            let flipped = g.perm.apply(x) > g.perm.apply(y);
            for pos in 0..arc_count(c, tet, face, v) as usize {
                let (a, ka) = layout.piece_at(tet, face, v, pos);
                let (b, kb) = layout.piece_at(g.tet, g.face, w, pos);
                stats[labels[a]].arcs += 1;
                let da = dirs[ka][face][v].expect("piece has this arc");
                let db = dirs[kb][g.face][w].expect("piece has this arc") ^ flipped;
                if orient.union_with_parity(a, b, da == db).is_err() {
                    stats[labels[a]].orientable = false;
                }
            }
        }
    }

    // points on edges, identified across faces
    let points = PointIndex::new(c);
    let mut pdsu = Dsu::new(points.total());
    for (tet, face, g) in tri.glued_pairs() {
        for (i, &a) in face_vertices(face).iter().enumerate() {
            for &b in &face_vertices(face)[i + 1..] {
                let n = points.count(tet, edge_index(a, b));
                let (pa, pb) = (g.perm.apply(a), g.perm.apply(b));
                for k in 0..n {
                    let here = points.id(tet, edge_index(a, b), k);
                    let there = layout.point_key(g.tet, pa, pb, k, &points);
                    pdsu.union(here, there);
                }
            }
        }
    }
    let mut point_owner: Vec<Option<usize>> = vec![None; points.total()];
    for tet in 0..c.tet_count() {
        for (e, &(a, b)) in EDGE_VERTICES.iter().enumerate() {
            let f = (0..4).find(|&x| x != a && x != b).unwrap();
            let na = arc_count(c, tet, f, a) as usize;
            for k in 0..points.count(tet, e) {
                let (piece, _) = if k < na {
                    layout.piece_at(tet, f, a, k)
                } else {
                    layout.piece_at(tet, f, b, points.count(tet, e) - 1 - k)
                };
                let root = pdsu.root(points.id(tet, e, k));
                point_owner[root] = Some(labels[piece]);
            }
        }
    }
    for owner in point_owner.iter().flatten() {
        stats[*owner].points += 1;
    }

    // boundary arcs join boundary points into circles
    let mut circle_roots: HashMap<usize, usize> = HashMap::new();
    let mut bdsu = Dsu::new(points.total());
    let mut boundary_points = Vec::new();
    for &(tet, face) in tri.boundary_faces() {
        for v in face_vertices(face) {
            let [x, y] = other_two(face, v);
            for pos in 0..arc_count(c, tet, face, v) as usize {
                let (piece, _) = layout.piece_at(tet, face, v, pos);
                stats[labels[piece]].arcs += 1;
                let p1 = pdsu.root(layout.point_key(tet, v, x, pos, &points));
                let p2 = pdsu.root(layout.point_key(tet, v, y, pos, &points));
                bdsu.union(p1, p2);
                boundary_points.push((p1, labels[piece]));
            }
        }
    }
    for (p, comp) in boundary_points {
        circle_roots.entry(bdsu.root(p)).or_insert(comp);
    }
    for comp in circle_roots.values() {
        stats[*comp].circles += 1;
    }
    (labels, stats)
}

fn other_two(face: usize, v: usize) -> [usize; 2] {
    let fv = face_vertices(face);
    let mut it = fv.into_iter().filter(|&x| x != v);
    [it.next().unwrap(), it.next().unwrap()]
}

/// Number of connected regions of the complement of the surface.
pub fn complement_regions(tri: &Triangulation, c: &NormalCoords) -> Result<usize> {
    validate(tri, c)?;
    // per tetrahedron: t_v corner regions for each vertex, then the central regions
    let mut offsets = Vec::with_capacity(c.tet_count() + 1);
    let mut acc = 0usize;
    for tet in 0..c.tet_count() {
        offsets.push(acc);
        acc += (0..4).map(|v| c.get(tet, v) as usize).sum::<usize>() + central_count(c, tet);
    }
    offsets.push(acc);
    let corner_region = |tet: usize, v: usize, p: usize| {
        offsets[tet] + (0..v).map(|u| c.get(tet, u) as usize).sum::<usize>() + p
    };
    let central = |tet: usize, idx: usize| {
        offsets[tet] + (0..4).map(|u| c.get(tet, u) as usize).sum::<usize>() + idx
    };
    let central_of = |tet: usize, v: usize| -> usize {
        if let Some(q) = (0..3).find(|&q| c.get(tet, 4 + q) > 0) {
            let count = c.get(tet, 4 + q) as usize;
            central(tet, if side(q, v) == 0 { 0 } else { count })
        } else if let Some(k) = (0..3).find(|&k| c.get(tet, 7 + k) > 0) {
            central(tet, side(k, v))
        } else {
            central(tet, 0)
        }
    };
    let face_region = |tet: usize, f: usize, v: usize, p: usize| -> usize {
        let t = c.get(tet, v) as usize;
        if p < t {
            return corner_region(tet, v, p);
        }
        let r = p - t;
        if r == 0 {
            return central_of(tet, v);
        }
        let q = quad_at_corner(f, v);
        let count = c.get(tet, 4 + q) as usize;
        central(tet, if side(q, v) == 0 { r } else { count - r })
    };
    let face_central = |tet: usize, f: usize| -> usize {
        let v = face_vertices(f)
            .into_iter()
            .find(|&v| arc_count(c, tet, f, v) == c.get(tet, v))
            .expect("some corner carries only triangles");
        central_of(tet, v)
    };
    let mut dsu = Dsu::new(acc);
    for (tet, face, g) in tri.glued_pairs() {
        for v in face_vertices(face) {
            let w = g.perm.apply(v);
            for p in 0..arc_count(c, tet, face, v) as usize {
                dsu.union(face_region(tet, face, v, p), face_region(g.tet, g.face, w, p));
            }
        }
        dsu.union(face_central(tet, face), face_central(g.tet, g.face));
    }
    Ok(dsu.labels().1)
}

fn central_count(c: &NormalCoords, tet: usize) -> usize {
    if let Some(q) = (0..3).find(|&q| c.get(tet, 4 + q) > 0) {
        c.get(tet, 4 + q) as usize + 1
    } else if (7..10).any(|p| c.get(tet, p) > 0) {
        2
    } else {
        1
    }
}

/// Summaries of the connected components, with boundary curves on the default boundary tori.
pub fn summarize(tri: &Triangulation, c: &NormalCoords) -> Result<Vec<SurfaceSummary>> {
    let tori: Vec<BoundaryTorus> = tri.boundary_components().iter().filter_map(|b| b.torus.clone()).collect();
    summarize_with(tri, c, &tori)
}

/// Summaries of the connected components, with boundary curves on the given tori.
pub fn summarize_with(tri: &Triangulation, c: &NormalCoords, tori: &[BoundaryTorus]) -> Result<Vec<SurfaceSummary>> {
    validate(tri, c)?;
    let parts = decompose_components(tri, c)?;
    let layout = Layout::new(tri, c);
    let (_, stats) = component_stats(&layout);
    parts
        .into_iter()
        .zip(stats)
        .map(|(part, s)| build_summary(tri, part, &s, tori, true))
        .collect()
}

/// Summary of the whole surface, whether or not it is connected.
pub fn summarize_surface(tri: &Triangulation, c: &NormalCoords, tori: &[BoundaryTorus]) -> Result<SurfaceSummary> {
    validate(tri, c)?;
    let layout = Layout::new(tri, c);
    let (_, stats) = component_stats(&layout);
    let merged = ComponentStats {
        pieces: stats.iter().map(|s| s.pieces).sum(),
        arcs: stats.iter().map(|s| s.arcs).sum(),
        points: stats.iter().map(|s| s.points).sum(),
        orientable: stats.iter().all(|s| s.orientable),
        circles: stats.iter().map(|s| s.circles).sum(),
    };
    build_summary(tri, c.clone(), &merged, tori, stats.len() == 1)
}

fn build_summary(
    tri: &Triangulation,
    coords: NormalCoords,
    s: &ComponentStats,
    tori: &[BoundaryTorus],
    connected: bool,
) -> Result<SurfaceSummary> {
    let euler = s.points as i64 - s.arcs as i64 + s.pieces as i64;
    let b = s.circles as i64;
    let genus = if s.orientable { (2 - b - euler) / 2 } else { 2 - b - euler };
    let boundary_curves = tori
        .iter()
        .map(|t| crate::coords::boundary_restriction(tri, &coords, t))
        .collect::<Result<Vec<_>>>()?;
    let separating = if connected && tri.is_connected() && !coords.is_zero() {
        Some(complement_regions(tri, &coords)? >= 2)
    } else {
        None
    };
    Ok(SurfaceSummary {
        weight: crate::coords::weight(tri, &coords),
        boundary_length: crate::coords::boundary_length(tri, &coords),
        coords,
        euler,
        boundary_curves,
        boundary_circles: s.circles,
        orientable: s.orientable,
        genus,
        connected,
        separating,
    })
}

/// Whether the surface is two-sided, by tracking a transverse direction through the pieces.
/// In an orientable triangulation this agrees with orientability of the surface.
pub fn two_sided(tri: &Triangulation, c: &NormalCoords) -> Result<bool> {
    validate(tri, c)?;
    let layout = Layout::new(tri, c);
    // per piece: normal points toward the side containing `toward(piece)`
    let toward = |piece: usize, v: usize| -> bool {
        match piece {
            0..=3 => v == piece,
            4..=6 => side(piece - 4, v) == 0,
            _ => side(piece - 7, v) == 0,
        }
    };
    let mut dsu = Dsu::new(layout.piece_total());
    let mut ok = true;
    for (tet, face, g) in tri.glued_pairs() {
        for v in face_vertices(face) {
            let w = g.perm.apply(v);
            for pos in 0..arc_count(c, tet, face, v) as usize {
                let (a, ka) = layout.piece_at(tet, face, v, pos);
                let (b, kb) = layout.piece_at(g.tet, g.face, w, pos);
                // normal direction at the shared arc, measured as "points toward corner v"
                let na = toward(ka, v);
                let nb = toward(kb, w);
                if dsu.union_with_parity(a, b, na != nb).is_err() {
                    ok = false;
                }
            }
        }
    }
    Ok(ok)
}

/// Coordinates of a single piece type in one tetrahedron.
pub fn unit(mode: Mode, tets: usize, tet: usize, piece: usize) -> NormalCoords {
    let mut c = NormalCoords::zeros(mode, tets);
    c.set(tet, piece, 1);
    c
}
