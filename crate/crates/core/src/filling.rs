//! Dehn filling: gluing a layered solid torus onto the boundary torus of a knot manifold so that
//! its meridian lands on a chosen slope, and capping surfaces off across the filling.

use crate::coords::{admissibility_violation, boundary_restriction, Mode, NormalCoords};
use crate::error::{Error, Result};
use crate::layered::{build_lst, pad_lst, LayeredTorus};
use crate::perm::Perm4;
use crate::torus::Slope;
use crate::triangulation::{edge_index, face_vertices, BoundaryTorus, Triangulation, EDGE_VERTICES};

#[derive(Clone, Debug)]
pub struct FilledTriangulation {
    base: Triangulation,
    base_torus: BoundaryTorus,
    lst: LayeredTorus,
    mirrored: bool,
    tri: Triangulation,
    alpha: Slope,
    // meridional and vertex-linking disks of the glued-in solid torus, in its own tetrahedra
    disk: NormalCoords,
    vertex_disk: NormalCoords,
}

impl FilledTriangulation {
    pub fn tri(&self) -> &Triangulation {
        &self.tri
    }

    pub fn base(&self) -> &Triangulation {
        &self.base
    }

    pub fn base_torus(&self) -> &BoundaryTorus {
        &self.base_torus
    }

    pub fn lst(&self) -> &LayeredTorus {
        &self.lst
    }

    /// Whether the layered torus was mirrored to make the gluing orientation-consistent.
    pub fn mirrored(&self) -> bool {
        self.mirrored
    }

    pub fn alpha(&self) -> Slope {
        self.alpha
    }

    /// Index of the first tetrahedron of the solid torus.
    pub fn offset(&self) -> usize {
        self.base.size()
    }

    /// Meridional disk, in the filled triangulation's coordinates.
    pub fn meridian_disk(&self) -> NormalCoords {
        self.embed(&self.disk)
    }

    /// Vertex-linking disk of the solid torus, in the filled triangulation's coordinates.
    pub fn vertex_disk(&self) -> NormalCoords {
        self.embed(&self.vertex_disk)
    }

    fn embed(&self, c: &NormalCoords) -> NormalCoords {
        let mut out = NormalCoords::zeros(c.mode(), self.tri.size());
        for t in 0..c.tet_count() {
            for p in 0..c.mode().per_tet() {
                out.set(self.offset() + t, p, c.get(t, p));
            }
        }
        out
    }
}

/// Fills `base` along `alpha`, given in the basis of `torus`, with a layered solid torus of at least
/// `min_lst_tets` tetrahedra.
pub fn fill(base: &Triangulation, torus: &BoundaryTorus, alpha: Slope, min_lst_tets: usize) -> Result<FilledTriangulation> {
    let own = base.require_knot_manifold()?;
    let mut mine = torus.edge_classes();
    let mut theirs = own.edge_classes();
    mine.sort_unstable();
    theirs.sort_unstable();
    if mine != theirs {
        return Err(Error::NotOneVertexTorus("basis does not belong to this triangulation".into()));
    }
    let mut lst = build_lst(alpha)?;
    if min_lst_tets > 1 {
        lst = pad_lst(&lst, min_lst_tets - 1)?;
    }
    for mirrored in [false, true] {
        let (ltri, ltorus, disk) = if mirrored {
            let m = lst.tri().mirror();
            let classes = lst.torus().edge_reps().map(|(t, e)| m.edge_class(t, mirror_edge(e)));
            let mt = m.torus_with_basis(classes)?;
            (m, mt, mirror_coords(lst.meridian_disk()))
        } else {
            (lst.tri().clone(), lst.torus().clone(), lst.meridian_disk().clone())
        };
        debug_assert_eq!(boundary_restriction(&ltri, &disk, &ltorus).ok(), Some(alpha.curve()));
        let union = base.disjoint_union(&ltri);
        let offset = base.size();
        for swap in [false, true] {
            let Some(glue) = label_gluing(torus, &ltorus, offset, swap) else { continue };
            let Ok(tri) = union.extended(0, &glue) else { continue };
            let labels_match = (0..3).all(|k| {
                let (bt, be) = torus.edge_reps()[k];
                let (lt, le) = ltorus.edge_reps()[k];
                tri.edge_class(bt, be) == tri.edge_class(lt + offset, le)
            });
            if tri.is_closed() && tri.is_connected() && tri.is_orientable() && labels_match {
                let vertex_disk = lst.vertex_disk();
                return Ok(FilledTriangulation {
                    base: base.clone(),
                    base_torus: torus.clone(),
                    lst,
                    mirrored,
                    tri,
                    alpha,
                    disk,
                    vertex_disk,
                });
            }
        }
    }
    Err(Error::NoIdentification)
}

type FaceGluing = (usize, usize, usize, usize, Perm4);

/// Face gluings sending each solid-torus boundary triangle to a base triangle so that edge labels
/// agree. With `swap`, the first solid-torus triangle goes to the second base triangle.
fn label_gluing(base: &BoundaryTorus, lst: &BoundaryTorus, offset: usize, swap: bool) -> Option<Vec<FaceGluing>> {
    let mut glue = Vec::new();
    for which in 0..2 {
        let target = if swap { 1 - which } else { which };
        let (lt, lf) = lst.faces()[which];
        let (bt, bf) = base.faces()[target];
        let mut images = [0u8; 4];
        images[lf] = bf as u8;
        for v in face_vertices(lf) {
            let label = lst.corner_label(which, v);
            let w = face_vertices(bf).into_iter().find(|&w| base.corner_label(target, w) == label)?;
            images[v] = w as u8;
        }
        glue.push((lt + offset, lf, bt, bf, Perm4::new(images).ok()?));
    }
    Some(glue)
}

fn mirror_edge(e: usize) -> usize {
    let s = |v: usize| match v {
        0 => 1,
        1 => 0,
        v => v,
    };
    let (a, b) = EDGE_VERTICES[e];
    edge_index(s(a), s(b))
}

/// Coordinates of the same surface after swapping vertices 0 and 1 in every tetrahedron.
pub fn mirror_coords(c: &NormalCoords) -> NormalCoords {
    let mut out = c.clone();
    for t in 0..c.tet_count() {
        out.set(t, 0, c.get(t, 1));
        out.set(t, 1, c.get(t, 0));
        out.set(t, 5, c.get(t, 6));
        out.set(t, 6, c.get(t, 5));
        if c.mode() == Mode::AlmostNormal {
            out.set(t, 8, c.get(t, 9));
            out.set(t, 9, c.get(t, 8));
        }
    }
    out
}

/// Caps the boundary of a surface in the base with meridional disks (one per essential boundary
/// circle) and vertex-linking disks (one per trivial circle) of the filling solid torus.
pub fn cap_surface(f: &FilledTriangulation, s: &NormalCoords) -> Result<NormalCoords> {
    if s.tet_count() != f.base.size() || s.values().len() != f.base.size() * s.mode().per_tet() {
        return Err(Error::CoordinateLength { expected: f.base.size() * s.mode().per_tet(), found: s.values().len() });
    }
    if let Some(why) = admissibility_violation(s) {
        return Err(Error::NotAdmissible(why));
    }
    let curve = boundary_restriction(&f.base, s, &f.base_torus)?;
    let (n, m) = match curve.slope() {
        Some(found) if found != f.alpha => return Err(Error::SlopeMismatch { expected: f.alpha, found }),
        Some(_) => (curve.essential_count(), curve.trivial_count()),
        None => (0, curve.trivial_count()),
    };
    let mut disk = f.meridian_disk();
    let mut vertex = f.vertex_disk();
    if s.mode() == Mode::AlmostNormal {
        disk = disk.to_almost_normal();
        vertex = vertex.to_almost_normal();
    }
    s.padded(f.tri.size()).add(&disk.scaled(n))?.add(&vertex.scaled(m))
}

/// Default filling along the base's first-found boundary basis.
pub fn fill_default(base: &Triangulation, alpha: Slope, min_lst_tets: usize) -> Result<FilledTriangulation> {
    fill(base, &base.require_knot_manifold()?, alpha, min_lst_tets)
}
