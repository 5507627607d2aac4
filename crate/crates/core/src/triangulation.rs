//! Generalized triangulations: tetrahedra with face gluings, their skeleton and boundary surface.
//!
//! Face `f` of a tetrahedron is the face opposite vertex `f`. A gluing of face `f` of tetrahedron
//! `i` records the target tetrahedron, the target face and the permutation taking the vertices of
//! tetrahedron `i` to those of the target, with `perm(f)` equal to the target face.

use std::fmt::Write as _;

use serde::Serialize;

use crate::dsu::Dsu;
use crate::error::{Error, Result};
use crate::perm::Perm4;

/// The six edges of a tetrahedron, indexed 0..6.
pub const EDGE_VERTICES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub fn edge_index(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("not an edge: {a}{b}"),
    }
}

/// Vertices of face `f` in increasing order.
pub fn face_vertices(f: usize) -> [usize; 3] {
    match f {
        0 => [1, 2, 3],
        1 => [0, 2, 3],
        2 => [0, 1, 3],
        3 => [0, 1, 2],
        _ => panic!("face index out of range: {f}"),
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub tet: usize,
    pub face: usize,
    pub perm: Perm4,
}

/// One side of an edge of the boundary surface: boundary face `(tet, face)` and the tetrahedron
/// vertices `ends` spanning the edge.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundarySlot {
    pub tet: usize,
    pub face: usize,
    pub ends: (usize, usize),
}

impl BoundarySlot {
    /// The vertex of the face that is not on this edge.
    pub fn apex(&self) -> usize {
        face_vertices(self.face)
            .into_iter()
            .find(|&v| v != self.ends.0 && v != self.ends.1)
            .expect("face has three vertices")
    }
}

/// An edge of the boundary surface: two slots, with `a.ends.0` identified to `b.ends.0`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct BoundaryEdge {
    pub a: BoundarySlot,
    pub b: BoundarySlot,
}

/// A connected component of the boundary surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryComponent {
    pub faces: Vec<(usize, usize)>,
    pub vertices: usize,
    pub edges: usize,
    pub euler: i64,
    pub orientable: bool,
    #[serde(skip)]
    pub torus: Option<BoundaryTorus>,
}

impl BoundaryComponent {
    pub fn is_torus(&self) -> bool {
        self.euler == 0 && self.orientable
    }

    pub fn is_one_vertex_torus(&self) -> bool {
        self.torus.is_some()
    }

    /// Orientable genus, or crosscap number when non-orientable.
    pub fn genus(&self) -> i64 {
        if self.orientable {
            (2 - self.euler) / 2
        } else {
            2 - self.euler
        }
    }
}

/// A boundary component that is a one-vertex torus (two triangles, three edges), together with
/// an ordered basis `(e1, e2, e3)` of its edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryTorus {
    faces: [(usize, usize); 2],
    edge_classes: [usize; 3],
    edge_reps: [(usize, usize); 3],
    slots: [BoundaryEdge; 3],
    // label of the edge opposite each corner, indexed [face][tetrahedron vertex]
    corner_label: [[u8; 4]; 2],
}

impl BoundaryTorus {
    pub fn faces(&self) -> [(usize, usize); 2] {
        self.faces
    }

    /// Edge classes of the triangulation, in basis order.
    pub fn edge_classes(&self) -> [usize; 3] {
        self.edge_classes
    }

    /// A `(tetrahedron, edge index)` representative of each basis edge.
    pub fn edge_reps(&self) -> [(usize, usize); 3] {
        self.edge_reps
    }

    /// The two boundary slots of basis edge `label`; `a` lies in `faces()[0]`.
    pub fn edge_slots(&self, label: usize) -> BoundaryEdge {
        self.slots[label]
    }

    /// Basis label (0, 1, 2) of the edge opposite `corner` in boundary face `which` (0 or 1).
    pub fn corner_label(&self, which: usize, corner: usize) -> usize {
        self.corner_label[which][corner] as usize
    }

    /// Basis position of an edge class, if it is a boundary edge.
    pub fn label_of_class(&self, class: usize) -> Option<usize> {
        self.edge_classes.iter().position(|&c| c == class)
    }

    /// The same torus with its basis permuted: new label `k` is old label `order[k]`.
    pub fn reordered(&self, order: [usize; 3]) -> Result<BoundaryTorus> {
        let mut seen = [false; 3];
        for &o in &order {
            if o > 2 || seen[o] {
                return Err(Error::Invalid(format!("not a basis ordering: {order:?}")));
            }
            seen[o] = true;
        }
        let mut inverse = [0u8; 3];
        for (new, &old) in order.iter().enumerate() {
            inverse[old] = new as u8;
        }
        let mut corner_label = self.corner_label;
        for face in corner_label.iter_mut() {
            for label in face.iter_mut() {
                if *label < 3 {
                    *label = inverse[*label as usize];
                }
            }
        }
        Ok(BoundaryTorus {
            faces: self.faces,
            edge_classes: order.map(|o| self.edge_classes[o]),
            edge_reps: order.map(|o| self.edge_reps[o]),
            slots: order.map(|o| self.slots[o]),
            corner_label,
        })
    }

    /// Rebuilds this basis inside another triangulation that contains the same boundary edges,
    /// identified by their tetrahedron-edge representatives.
    pub fn transported(&self, tri: &Triangulation) -> Result<BoundaryTorus> {
        let classes = self.edge_reps.map(|(t, e)| tri.edge_class(t, e));
        tri.torus_with_basis(classes)
    }

    /// The 3 × 6 matching system of normal arcs on the two triangles. Columns `k` and `k + 3` count
    /// arcs missing edge `e_{k+1}` in the first and second triangle; one row per edge.
    pub fn curve_matching_matrix(&self) -> Vec<Vec<i64>> {
        let mut rows = Vec::new();
        for edge in 0..3 {
            let mut row = vec![0i64; 6];
            for which in 0..2 {
                let (_, f) = self.faces[which];
                for corner in face_vertices(f) {
                    let arc = self.corner_label(which, corner);
                    // an arc meets the two edges adjacent to its corner
                    if arc != edge {
                        row[which * 3 + arc] += if which == 0 { 1 } else { -1 };
                    }
                }
            }
            rows.push(row);
        }
        rows
    }
}

#[derive(Clone, Debug)]
pub struct Triangulation {
    gluings: Vec<[Option<Gluing>; 4]>,
    edge_class: Vec<[usize; 6]>,
    edge_members: Vec<Vec<(usize, usize)>>,
    vertex_class: Vec<[usize; 4]>,
    vertex_count: usize,
    tet_component: Vec<usize>,
    component_count: usize,
    orientation: Option<Vec<bool>>,
    boundary_faces: Vec<(usize, usize)>,
    boundary_edges: Vec<BoundaryEdge>,
    boundary: Vec<BoundaryComponent>,
}

impl PartialEq for Triangulation {
    fn eq(&self, other: &Self) -> bool {
        self.gluings == other.gluings
    }
}

impl Eq for Triangulation {}

impl Triangulation {
    /// Validates a gluing table and derives the skeleton.
    pub fn new(gluings: Vec<[Option<Gluing>; 4]>) -> Result<Self> {
        Self::with_lines(gluings, None)
    }

    fn with_lines(gluings: Vec<[Option<Gluing>; 4]>, lines: Option<&[usize]>) -> Result<Self> {
        let line = |tet: usize| lines.map(|l| l[tet]);
        let n = gluings.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        for (tet, faces) in gluings.iter().enumerate() {
            for (face, g) in faces.iter().enumerate() {
                let Some(g) = g else { continue };
                if g.tet >= n {
                    return Err(Error::MissingTetrahedron { tet, face, target: g.tet, line: line(tet) });
                }
                if g.face > 3 || g.perm.apply(face) != g.face {
                    return Err(Error::FaceMismatch { tet, face, target_face: g.face, line: line(tet) });
                }
                if g.tet == tet && g.face == face {
                    return Err(Error::SelfGluedFace { tet, face, line: line(tet) });
                }
                let back = gluings[g.tet][g.face];
                let ok = matches!(back, Some(b) if b.tet == tet && b.face == face && b.perm == g.perm.inverse());
                if !ok {
                    return Err(Error::NonInvolutiveGluing { tet, face, line: line(tet) });
                }
            }
        }
        let mut tri = Triangulation {
            gluings,
            edge_class: Vec::new(),
            edge_members: Vec::new(),
            vertex_class: Vec::new(),
            vertex_count: 0,
            tet_component: Vec::new(),
            component_count: 0,
            orientation: None,
            boundary_faces: Vec::new(),
            boundary_edges: Vec::new(),
            boundary: Vec::new(),
        };
        tri.derive_skeleton()?;
        Ok(tri)
    }

    fn derive_skeleton(&mut self) -> Result<()> {
        let n = self.gluings.len();
        let mut edges = Dsu::new(6 * n);
        let mut verts = Dsu::new(4 * n);
        let mut tets = Dsu::new(n);
        let mut orient = Dsu::new(n);
        let mut orientable = true;
        for (tet, faces) in self.gluings.iter().enumerate() {
            for (face, g) in faces.iter().enumerate() {
                let Some(g) = g else { continue };
                tets.union(tet, g.tet);
                // odd gluing permutations preserve the standard orientation
                if orient.union_with_parity(tet, g.tet, !g.perm.is_odd()).is_err() {
                    orientable = false;
                }
                let fv = face_vertices(face);
                for &v in &fv {
                    verts.union(4 * tet + v, 4 * g.tet + g.perm.apply(v));
                }
                for i in 0..3 {
                    for j in (i + 1)..3 {
                        let (a, b) = (fv[i], fv[j]);
                        let (pa, pb) = (g.perm.apply(a), g.perm.apply(b));
                        let reversed = pa > pb;
                        let src = 6 * tet + edge_index(a, b);
                        let dst = 6 * g.tet + edge_index(pa, pb);
                        if edges.union_with_parity(src, dst, reversed).is_err() {
                            return Err(Error::ReversedEdge { tet, edge: edge_index(a, b) });
                        }
                    }
                }
            }
        }
        let (edge_labels, edge_count) = edges.labels();
        self.edge_class = (0..n)
            .map(|t| std::array::from_fn(|e| edge_labels[6 * t + e]))
            .collect();
        self.edge_members = vec![Vec::new(); edge_count];
        for t in 0..n {
            for e in 0..6 {
                self.edge_members[self.edge_class[t][e]].push((t, e));
            }
        }
        let (vertex_labels, vertex_count) = verts.labels();
        self.vertex_class = (0..n)
            .map(|t| std::array::from_fn(|v| vertex_labels[4 * t + v]))
            .collect();
        self.vertex_count = vertex_count;
        let (components, component_count) = tets.labels();
        self.tet_component = components;
        self.component_count = component_count;
        self.orientation = if orientable {
            Some((0..n).map(|t| !orient.find(t).1).collect())
        } else {
            None
        };
        self.derive_boundary();
        Ok(())
    }

    /// Follows the faces around the edge `(x, y)` of boundary face `(tet, face)` through the
    /// interior until the other boundary face containing that edge is reached.
    fn walk_boundary_edge(&self, start: BoundarySlot) -> BoundarySlot {
        let (mut tet, mut x, mut y) = (start.tet, start.ends.0, start.ends.1);
        let mut from = start.face;
        let mut other = start.apex();
        for _ in 0..(24 * self.gluings.len() + 4) {
            match self.gluings[tet][other] {
                None => {
                    return BoundarySlot { tet, face: other, ends: (x, y) };
                }
                Some(g) => {
                    let p = g.perm;
                    let next_from = p.apply(other);
                    let next_other = p.apply(from);
                    tet = g.tet;
                    x = p.apply(x);
                    y = p.apply(y);
                    from = next_from;
                    other = next_other;
                }
            }
        }
        unreachable!("edge walk from a boundary face always reaches a boundary face")
    }

    fn derive_boundary(&mut self) {
        let mut faces = Vec::new();
        for (tet, gl) in self.gluings.iter().enumerate() {
            for (face, g) in gl.iter().enumerate() {
                if g.is_none() {
                    faces.push((tet, face));
                }
            }
        }
        let index_of = |tet: usize, face: usize, faces: &[(usize, usize)]| {
            faces.binary_search(&(tet, face)).expect("boundary face")
        };
        let nf = faces.len();
        let mut done = vec![[false; 3]; nf];
        let mut edges = Vec::new();
        let mut comp = Dsu::new(nf);
        let mut orient = Dsu::new(nf);
        let mut orient_ok = vec![true; nf];
        let mut corners = Dsu::new(3 * nf);
        let corner_slot = |face: usize, v: usize| face_vertices(face).iter().position(|&w| w == v).unwrap();
        let mut orientation_conflicts = Vec::new();
        for (fi, &(tet, face)) in faces.iter().enumerate() {
            let fv = face_vertices(face);
            for (k, _) in fv.iter().enumerate() {
                if done[fi][k] {
                    continue;
                }
                let ends = match k {
                    0 => (fv[1], fv[2]),
                    1 => (fv[0], fv[2]),
                    _ => (fv[0], fv[1]),
                };
                let a = BoundarySlot { tet, face, ends };
                let b = self.walk_boundary_edge(a);
                let fj = index_of(b.tet, b.face, &faces);
                let kb = corner_slot(b.face, b.apex());
                done[fi][k] = true;
                done[fj][kb] = true;
                edges.push(BoundaryEdge { a, b });
                comp.union(fi, fj);
                corners.union(3 * fi + corner_slot(face, a.ends.0), 3 * fj + corner_slot(b.face, b.ends.0));
                corners.union(3 * fi + corner_slot(face, a.ends.1), 3 * fj + corner_slot(b.face, b.ends.1));
                // each face is oriented by the cyclic order of its sorted vertices; neighbouring
                // faces are coherent when they traverse the shared edge in opposite directions
                let dir_a = cyclic_direction(face, a.ends.0, a.ends.1);
                let dir_b = cyclic_direction(b.face, b.ends.0, b.ends.1);
                if orient.union_with_parity(fi, fj, dir_a == dir_b).is_err() {
                    orientation_conflicts.push(fi);
                }
            }
        }
        for fi in orientation_conflicts {
            let r = comp.root(fi);
            orient_ok[r] = false;
        }
        let (labels, count) = comp.labels();
        let mut components: Vec<BoundaryComponent> = (0..count)
            .map(|_| BoundaryComponent {
                faces: Vec::new(),
                vertices: 0,
                edges: 0,
                euler: 0,
                orientable: true,
                torus: None,
            })
            .collect();
        for (fi, &f) in faces.iter().enumerate() {
            components[labels[fi]].faces.push(f);
            if !orient_ok[comp.root(fi)] {
                components[labels[fi]].orientable = false;
            }
        }
        for e in &edges {
            let fi = index_of(e.a.tet, e.a.face, &faces);
            components[labels[fi]].edges += 1;
        }
        let mut seen_corner_roots = std::collections::HashSet::new();
        for fi in 0..nf {
            for s in 0..3 {
                let r = corners.root(3 * fi + s);
                if seen_corner_roots.insert(r) {
                    components[labels[fi]].vertices += 1;
                }
            }
        }
        for c in components.iter_mut() {
            c.euler = c.vertices as i64 - c.edges as i64 + c.faces.len() as i64;
        }
        self.boundary_faces = faces;
        self.boundary_edges = edges;
        for ci in 0..components.len() {
            let c = &components[ci];
            if c.faces.len() == 2 && c.edges == 3 && c.vertices == 1 && c.orientable {
                let torus = self.build_torus(&c.faces, None);
                components[ci].torus = torus;
            }
        }
        self.boundary = components;
    }

    /// Builds the torus structure on a two-face boundary component. With `basis = None` the
    /// edges are ordered by edge-class index, i.e. by their smallest `(tetrahedron, edge)`.
    fn build_torus(&self, faces: &[(usize, usize)], basis: Option<[usize; 3]>) -> Option<BoundaryTorus> {
        if faces.len() != 2 {
            return None;
        }
        let f0 = faces[0];
        let f1 = faces[1];
        let mut slots: Vec<BoundaryEdge> = self
            .boundary_edges
            .iter()
            .filter_map(|e| {
                if (e.a.tet, e.a.face) == f0 && (e.b.tet, e.b.face) == f1 {
                    Some(*e)
                } else if (e.b.tet, e.b.face) == f0 && (e.a.tet, e.a.face) == f1 {
                    Some(BoundaryEdge { a: e.b, b: e.a })
                } else {
                    None
                }
            })
            .collect();
        if slots.len() != 3 {
            return None;
        }
        let class_of = |s: &BoundarySlot| self.edge_class[s.tet][edge_index(s.ends.0, s.ends.1)];
        match basis {
            None => slots.sort_by_key(|s| (class_of(&s.a), s.a.tet, edge_index(s.a.ends.0, s.a.ends.1))),
            Some(order) => {
                let mut ordered = Vec::with_capacity(3);
                for class in order {
                    let pos = slots.iter().position(|s| class_of(&s.a) == class)?;
                    ordered.push(slots[pos]);
                }
                slots = ordered;
            }
        }
        let slots: [BoundaryEdge; 3] = [slots[0], slots[1], slots[2]];
        let mut corner_label = [[u8::MAX; 4]; 2];
        for (label, s) in slots.iter().enumerate() {
            corner_label[0][s.a.apex()] = label as u8;
            corner_label[1][s.b.apex()] = label as u8;
        }
        let edge_reps = slots.map(|s| (s.a.tet, edge_index(s.a.ends.0, s.a.ends.1)));
        Some(BoundaryTorus {
            faces: [f0, f1],
            edge_classes: slots.map(|s| class_of(&s.a)),
            edge_reps,
            slots,
            corner_label,
        })
    }

    /// The boundary torus containing the given three edge classes, with that basis order.
    pub fn torus_with_basis(&self, classes: [usize; 3]) -> Result<BoundaryTorus> {
        for c in &self.boundary {
            if let Some(t) = &c.torus {
                let mut sorted = classes;
                sorted.sort_unstable();
                let mut have = t.edge_classes;
                have.sort_unstable();
                if sorted == have {
                    return self
                        .build_torus(&c.faces, Some(classes))
                        .ok_or_else(|| Error::NotOneVertexTorus("basis edges not found".into()));
                }
            }
        }
        Err(Error::NotOneVertexTorus(format!("no one-vertex torus with edge classes {classes:?}")))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing `tetrahedra <t>` header".into(),
        })?;
        let mut parts = header.split_whitespace();
        let count = match (parts.next(), parts.next(), parts.next()) {
            (Some("tetrahedra"), Some(n), None) => n.parse::<usize>().map_err(|_| Error::Parse {
                line: hline,
                message: format!("bad tetrahedron count `{n}`"),
            })?,
            _ => {
                return Err(Error::Parse {
                    line: hline,
                    message: "expected `tetrahedra <t>`".into(),
                })
            }
        };
        if count == 0 {
            return Err(Error::Parse { line: hline, message: "tetrahedron count must be positive".into() });
        }
        let mut gluings = Vec::with_capacity(count);
        let mut line_numbers = Vec::with_capacity(count);
        for tet in 0..count {
            let (ln, line) = lines.next().ok_or(Error::Parse {
                line: hline,
                message: format!("expected {count} tetrahedron lines, found {tet}"),
            })?;
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != 4 {
                return Err(Error::Parse {
                    line: ln,
                    message: format!("expected 4 face entries, found {}", tokens.len()),
                });
            }
            let mut row = [None; 4];
            for (face, tok) in tokens.iter().enumerate() {
                row[face] = parse_face_token(tok, face).map_err(|message| Error::Parse { line: ln, message })?;
            }
            gluings.push(row);
            line_numbers.push(ln);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::Parse { line: ln, message: "unexpected trailing content".into() });
        }
        Self::with_lines(gluings, Some(&line_numbers))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("tetrahedra {}\n", self.size());
        for row in &self.gluings {
            let tokens: Vec<String> = row
                .iter()
                .map(|g| match g {
                    None => "bdry".to_string(),
                    Some(g) => format!("{}:{}", g.tet, g.perm),
                })
                .collect();
            let _ = writeln!(out, "{}", tokens.join(" "));
        }
        out
    }

    pub fn size(&self) -> usize {
        self.gluings.len()
    }

    pub fn gluing(&self, tet: usize, face: usize) -> Option<Gluing> {
        self.gluings[tet][face]
    }

    pub fn gluings(&self) -> &[[Option<Gluing>; 4]] {
        &self.gluings
    }

    pub fn edge_class(&self, tet: usize, edge: usize) -> usize {
        self.edge_class[tet][edge]
    }

    pub fn edge_count(&self) -> usize {
        self.edge_members.len()
    }

    /// `(tetrahedron, edge index)` pairs making up an edge class.
    pub fn edge_members(&self, class: usize) -> &[(usize, usize)] {
        &self.edge_members[class]
    }

    pub fn vertex_class(&self, tet: usize, vertex: usize) -> usize {
        self.vertex_class[tet][vertex]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count == 1
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn tet_component(&self, tet: usize) -> usize {
        self.tet_component[tet]
    }

    pub fn is_orientable(&self) -> bool {
        self.orientation.is_some()
    }

    /// Per-tetrahedron orientation signs (true = standard vertex order), when orientable.
    pub fn orientation(&self) -> Option<&[bool]> {
        self.orientation.as_deref()
    }

    pub fn is_closed(&self) -> bool {
        self.boundary_faces.is_empty()
    }

    pub fn boundary_faces(&self) -> &[(usize, usize)] {
        &self.boundary_faces
    }

    pub fn boundary_edges(&self) -> &[BoundaryEdge] {
        &self.boundary_edges
    }

    /// Interior face pairs, each listed once from its smaller `(tet, face)` side.
    pub fn glued_pairs(&self) -> impl Iterator<Item = (usize, usize, Gluing)> + '_ {
        self.gluings.iter().enumerate().flat_map(|(tet, row)| {
            row.iter().enumerate().filter_map(move |(face, g)| match g {
                Some(g) if (tet, face) < (g.tet, g.face) => Some((tet, face, *g)),
                _ => None,
            })
        })
    }

    pub fn boundary_components(&self) -> &[BoundaryComponent] {
        &self.boundary
    }

    /// The boundary torus of a knot-manifold triangulation, in the default edge order.
    pub fn boundary_torus(&self) -> Result<BoundaryTorus> {
        match self.boundary.as_slice() {
            [c] => c.torus.clone().ok_or_else(|| {
                Error::NotOneVertexTorus(format!(
                    "component has χ = {}, {} vertices, {} edges",
                    c.euler, c.vertices, c.edges
                ))
            }),
            [] => Err(Error::NotOneVertexTorus("triangulation is closed".into())),
            many => Err(Error::NotOneVertexTorus(format!("{} boundary components", many.len()))),
        }
    }

    /// Connected, orientable, with exactly one boundary component, which is a torus.
    pub fn is_knot_manifold(&self) -> bool {
        self.is_connected()
            && self.is_orientable()
            && self.boundary.len() == 1
            && self.boundary[0].is_torus()
    }

    /// The boundary torus of a knot-manifold triangulation, in its default basis.
    pub fn require_knot_manifold(&self) -> Result<BoundaryTorus> {
        if !self.is_connected() {
            return Err(Error::NotKnotManifold("disconnected".into()));
        }
        if !self.is_orientable() {
            return Err(Error::NotKnotManifold("non-orientable".into()));
        }
        if self.boundary.len() != 1 || !self.boundary[0].is_torus() {
            return Err(Error::NotKnotManifold("boundary is not a single torus".into()));
        }
        self.boundary_torus()
    }

    /// Renumbers tetrahedra: tetrahedron `i` becomes `order[i]`.
    pub fn relabel(&self, order: &[usize]) -> Result<Triangulation> {
        let n = self.size();
        if order.len() != n {
            return Err(Error::Invalid("relabelling has the wrong length".into()));
        }
        let mut out = vec![[None; 4]; n];
        for (tet, row) in self.gluings.iter().enumerate() {
            for (face, g) in row.iter().enumerate() {
                out[order[tet]][face] = g.map(|g| Gluing { tet: order[g.tet], ..g });
            }
        }
        Triangulation::new(out)
    }

    /// Mirror image: vertices 0 and 1 of every tetrahedron are swapped.
    pub fn mirror(&self) -> Triangulation {
        let s = Perm4::transposition(0, 1);
        let mut out = vec![[None; 4]; self.size()];
        for (tet, row) in self.gluings.iter().enumerate() {
            for (face, g) in row.iter().enumerate() {
                out[tet][s.apply(face)] = g.map(|g| Gluing {
                    tet: g.tet,
                    face: s.apply(g.face),
                    perm: s.compose(g.perm).compose(s),
                });
            }
        }
        Triangulation::new(out).expect("mirror of a valid triangulation is valid")
    }

    pub fn disjoint_union(&self, other: &Triangulation) -> Triangulation {
        let shift = self.size();
        let mut out = self.gluings.clone();
        for row in &other.gluings {
            out.push(row.map(|g| g.map(|g| Gluing { tet: g.tet + shift, ..g })));
        }
        Triangulation::new(out).expect("disjoint union of valid triangulations is valid")
    }

    /// A copy with extra tetrahedra appended and the listed face pairs glued.
    pub(crate) fn extended(&self, extra: usize, glue: &[(usize, usize, usize, usize, Perm4)]) -> Result<Triangulation> {
        let mut out = self.gluings.clone();
        out.extend(std::iter::repeat_n([None; 4], extra));
        for &(t, f, u, g, p) in glue {
            if out[t][f].is_some() || out[u][g].is_some() {
                return Err(Error::Invalid(format!("face ({t},{f}) or ({u},{g}) already glued")));
            }
            out[t][f] = Some(Gluing { tet: u, face: g, perm: p });
            out[u][g] = Some(Gluing { tet: t, face: f, perm: p.inverse() });
        }
        Triangulation::new(out)
    }
}

/// Whether `x -> y` follows the cyclic order of the sorted vertices of face `f`.
fn cyclic_direction(f: usize, x: usize, y: usize) -> bool {
    let fv = face_vertices(f);
    let px = fv.iter().position(|&v| v == x).unwrap();
    let py = fv.iter().position(|&v| v == y).unwrap();
    (px + 1) % 3 == py
}

fn parse_face_token(tok: &str, face: usize) -> std::result::Result<Option<Gluing>, String> {
    if tok == "bdry" {
        return Ok(None);
    }
    let (target, perm) = tok
        .split_once(':')
        .ok_or_else(|| format!("face {face}: expected `bdry` or `<tet>:<perm>`, found `{tok}`"))?;
    let target: usize = target
        .parse()
        .map_err(|_| format!("face {face}: bad tetrahedron index `{target}`"))?;
    let perm: Perm4 = perm
        .parse()
        .map_err(|_| format!("face {face}: bad permutation `{perm}`"))?;
    Ok(Some(Gluing { tet: target, face: perm.apply(face), perm }))
}

/// The one-tetrahedron solid torus: face 3 glued to face 0 by `0→1, 1→2, 2→3, 3→0`.
pub const ONE_TET_SOLID_TORUS: &str = "% one-tetrahedron solid torus\ntetrahedra 1\n0:3012 bdry bdry 0:1230\n";

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn solid_torus() -> Triangulation {
        Triangulation::parse(ONE_TET_SOLID_TORUS).unwrap()
    }

    #[test]
    fn parses_the_solid_torus() {
        let t = solid_torus();
        assert_eq!(t.size(), 1);
        assert_eq!(t.edge_count(), 3);
        assert_eq!(t.vertex_count(), 1);
        assert_eq!(t.boundary_faces().len(), 2);
        assert!(t.is_orientable());
        assert!(t.is_knot_manifold());
        let comps = t.boundary_components();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].euler, 0);
        let torus = comps[0].torus.as_ref().unwrap();
        // classes are numbered by their smallest (tet, edge): {01,12,23}, {02,13}, {03}
        assert_eq!(torus.edge_classes(), [0, 1, 2]);
        assert_eq!(t.edge_members(0), &[(0, 0), (0, 3), (0, 5)]);
        assert_eq!(t.edge_members(1), &[(0, 1), (0, 4)]);
        assert_eq!(t.edge_members(2), &[(0, 2)]);
    }

    #[test]
    fn single_tetrahedron() {
        let t = Triangulation::parse("tetrahedra 1\nbdry bdry bdry bdry\n").unwrap();
        assert_eq!(t.boundary_faces().len(), 4);
        assert_eq!(t.edge_count(), 6);
        assert_eq!(t.vertex_count(), 4);
        let comps = t.boundary_components();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].euler, 2);
        assert!(!t.is_knot_manifold());
    }

    #[test]
    fn non_involutive_gluing_is_rejected_with_line() {
        let err = Triangulation::parse("% c\ntetrahedra 1\nbdry bdry bdry 0:1230\n").unwrap_err();
        assert!(matches!(err, Error::NonInvolutiveGluing { line: Some(3), .. }), "{err}");
        assert!(err.to_string().contains("non-involutive gluing"));
    }

    #[test]
    fn malformed_lines_report_line_numbers() {
        let err = Triangulation::parse("tetrahedra 1\n0:3012 bdry bdry\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = Triangulation::parse("tetrahedra x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = Triangulation::parse("tetrahedra 1\n0:3312 bdry bdry 0:1230\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = Triangulation::parse("tetrahedra 1\nbdry bdry bdry bdry\nbdry\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = Triangulation::parse("tetrahedra 1\n3:0123 bdry bdry bdry\n").unwrap_err();
        assert!(matches!(err, Error::MissingTetrahedron { .. }));
    }

    #[test]
    fn face_glued_to_itself_is_rejected() {
        let err = Triangulation::parse("tetrahedra 1\n0:0132 bdry bdry bdry\n").unwrap_err();
        assert!(matches!(err, Error::SelfGluedFace { .. }), "{err}");
    }

    #[test]
    fn reversed_edge_is_rejected() {
        // face 3 {0,1,2} to face 2 {0,1,3} by 0↔1, 2→3: edge 01 is glued to itself reversed
        let err = Triangulation::parse("tetrahedra 1\nbdry bdry 0:1032 0:1032\n").unwrap_err();
        assert!(matches!(err, Error::ReversedEdge { .. }), "{err}");
    }

    #[test]
    fn closed_triangulation_has_no_boundary() {
        // two tetrahedra glued along all faces by the identity: a 3-sphere
        let t = Triangulation::parse("tetrahedra 2\n1:0123 1:0123 1:0123 1:0123\n0:0123 0:0123 0:0123 0:0123\n").unwrap();
        assert!(t.is_closed());
        assert!(t.boundary_components().is_empty());
        assert!(!t.is_knot_manifold());
    }

    #[test]
    fn disconnected_is_not_a_knot_manifold() {
        let t = solid_torus().disjoint_union(&solid_torus());
        assert_eq!(t.component_count(), 2);
        assert_eq!(t.boundary_components().len(), 2);
        assert!(!t.is_knot_manifold());
    }

    #[test]
    fn mirror_keeps_the_skeleton() {
        let t = solid_torus();
        let m = t.mirror();
        assert!(m.is_knot_manifold());
        assert_eq!(m.edge_count(), 3);
        assert_ne!(m, t);
        assert_eq!(m.mirror(), t);
    }

    #[test]
    fn torus_reorder_and_matching() {
        let t = solid_torus();
        let torus = t.boundary_torus().unwrap();
        let r = torus.reordered([0, 2, 1]).unwrap();
        assert_eq!(r.edge_classes(), [0, 2, 1]);
        for which in 0..2 {
            for v in face_vertices(torus.faces()[which].1) {
                let old = torus.corner_label(which, v);
                let new = r.corner_label(which, v);
                assert_eq!(r.edge_classes()[new], torus.edge_classes()[old]);
            }
        }
        assert!(torus.reordered([0, 0, 1]).is_err());
        let m = torus.curve_matching_matrix();
        assert_eq!(m.len(), 3);
        for row in &m {
            assert_eq!(row.iter().filter(|&&c| c == 1).count(), 2);
            assert_eq!(row.iter().filter(|&&c| c == -1).count(), 2);
        }
    }

    fn two_tet_samples() -> Vec<Triangulation> {
        vec![
            solid_torus(),
            solid_torus().disjoint_union(&solid_torus()),
            Triangulation::parse("tetrahedra 2\n1:0123 bdry bdry bdry\n0:0123 bdry bdry bdry\n").unwrap(),
            Triangulation::parse("tetrahedra 2\n1:0123 1:0123 1:0123 1:0123\n0:0123 0:0123 0:0123 0:0123\n").unwrap(),
        ]
    }

    proptest! {
        #[test]
        fn round_trip_and_face_counts(idx in 0usize..4) {
            let t = &two_tet_samples()[idx];
            let again = Triangulation::parse(&t.to_text()).unwrap();
            prop_assert_eq!(&again, t);
            let pairs = t.glued_pairs().count();
            prop_assert_eq!(t.boundary_faces().len(), 4 * t.size() - 2 * pairs);
            for c in t.boundary_components() {
                if c.orientable {
                    prop_assert_eq!(c.euler, 2 - 2 * c.genus());
                }
            }
        }

        #[test]
        fn edge_classes_survive_relabelling(idx in 0usize..4, swap in any::<bool>()) {
            let t = &two_tet_samples()[idx];
            let order: Vec<usize> = if swap && t.size() == 2 { vec![1, 0] } else { (0..t.size()).collect() };
            let r = t.relabel(&order).unwrap();
            prop_assert_eq!(r.edge_count(), t.edge_count());
            // the relabelling induces a bijection of edge classes
            let mut map = std::collections::HashMap::new();
            for tet in 0..t.size() {
                for e in 0..6 {
                    let a = t.edge_class(tet, e);
                    let b = r.edge_class(order[tet], e);
                    let prev = map.insert(a, b);
                    prop_assert!(prev.is_none() || prev == Some(b));
                }
            }
            let mut images: Vec<_> = map.values().copied().collect();
            images.sort_unstable();
            images.dedup();
            prop_assert_eq!(images.len(), t.edge_count());
        }
    }
}
