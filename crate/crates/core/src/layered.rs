//! Layered triangulations of the solid torus, built outward from the one-tetrahedron core.
//!
//! Layering at boundary edge `e_k` glues a new tetrahedron onto the two boundary faces that meet
//! along `e_k`. New vertices 0 and 1 go to the ends of `e_k`; vertex 2 goes to the apex of the
//! first face and vertex 3 to the apex of the second, so the new boundary edge `e_k'` is the new
//! tetrahedron's edge 23 and keeps label `k`.

use serde::Serialize;

use crate::coords::{admissibility_violation, arc_count, boundary_restriction, quad_at_corner, weight, Mode, NormalCoords};
use crate::enumerate::{scan_solutions, ScanOptions};
use crate::error::{Error, Result};
use crate::perm::Perm4;
use crate::surface::{decompose_components, summarize_with, SurfaceSummary};
use crate::torus::{distance, IntersectionTriple, Slope, TorusCurve};
use crate::triangulation::{edge_index, face_vertices, BoundaryTorus, Triangulation, ONE_TET_SOLID_TORUS};

/// Basis of the core torus in which the meridian is `(2,0,1)`: default edge classes reordered.
const CORE_ORDER: [usize; 3] = [0, 2, 1];

#[derive(Clone, Debug)]
pub struct LayeredTorus {
    tri: Triangulation,
    torus: BoundaryTorus,
    layers: Vec<usize>,
    meridian: Slope,
    meridian_disk: NormalCoords,
    descent: Vec<IntersectionTriple>,
}

/// Machine-readable description written next to a layered triangulation.
#[derive(Clone, Debug, Serialize)]
pub struct LayeredSidecar {
    pub tetrahedra: usize,
    pub layers: Vec<usize>,
    pub basis: [(usize, usize); 3],
    pub meridian: [u64; 3],
    pub meridian_triple: [u64; 3],
    pub meridian_pq: String,
    pub descent: Vec<[u64; 3]>,
    pub meridian_disk: Vec<u64>,
}

impl LayeredTorus {
    /// The one-tetrahedron solid torus, meridian `(2,0,1)`.
    pub fn core() -> LayeredTorus {
        let tri = Triangulation::parse(ONE_TET_SOLID_TORUS).expect("core triangulation parses");
        let torus = tri
            .boundary_torus()
            .and_then(|t| t.reordered(CORE_ORDER))
            .expect("core has a one-vertex torus boundary");
        let meridian = Slope::new(2, 0, 1).expect("valid slope");
        let meridian_disk = NormalCoords::new(Mode::Normal, vec![1, 0, 0, 1, 1, 0, 0]).expect("7 coordinates");
        LayeredTorus { tri, torus, layers: Vec::new(), meridian, meridian_disk, descent: vec![meridian.intersections()] }
    }

    pub fn tri(&self) -> &Triangulation {
        &self.tri
    }

    pub fn torus(&self) -> &BoundaryTorus {
        &self.torus
    }

    /// Labels layered at, in order of attachment.
    pub fn layers(&self) -> &[usize] {
        &self.layers
    }

    pub fn meridian(&self) -> Slope {
        self.meridian
    }

    pub fn meridian_disk(&self) -> &NormalCoords {
        &self.meridian_disk
    }

    /// Vertex-linking disk: one triangle of each type in every tetrahedron.
    pub fn vertex_disk(&self) -> NormalCoords {
        let mut c = NormalCoords::zeros(Mode::Normal, self.tri.size());
        for t in 0..self.tri.size() {
            for v in 0..4 {
                c.set(t, v, 1);
            }
        }
        c
    }

    /// Meridian intersection triples from the outer boundary down to the core.
    pub fn descent(&self) -> &[IntersectionTriple] {
        &self.descent
    }

    pub fn size(&self) -> usize {
        self.tri.size()
    }

    /// Layers once more at boundary edge `label`.
    pub fn layer(&self, label: usize) -> Result<LayeredTorus> {
        let (tri, torus) = layer_once(&self.tri, &self.torus, label)?;
        let y = flip_triple(self.meridian.intersections(), label)?;
        let meridian = Slope::from_intersections(y)?;
        let meridian_disk = extend_surface(&tri, &torus, &self.meridian_disk)?
            .into_iter()
            .find(|c| boundary_restriction(&tri, c, &torus).is_ok_and(|b| b == meridian.curve()))
            .ok_or_else(|| Error::Invalid("meridional disk does not extend across the new layer".into()))?;
        let mut layers = self.layers.clone();
        layers.push(label);
        let mut descent = vec![y];
        descent.extend(self.descent.iter().copied());
        Ok(LayeredTorus { tri, torus, layers, meridian, meridian_disk, descent })
    }

    pub fn sidecar(&self) -> LayeredSidecar {
        LayeredSidecar {
            tetrahedra: self.size(),
            layers: self.layers.clone(),
            basis: self.torus.edge_reps(),
            meridian: self.meridian.coords(),
            meridian_triple: self.meridian.intersections().y,
            meridian_pq: self.meridian.pq_string(),
            descent: self.descent.iter().map(|y| y.y).collect(),
            meridian_disk: self.meridian_disk.values().to_vec(),
        }
    }
}

/// Glues a tetrahedron onto the two boundary faces adjacent to edge `label` of `torus`.
/// Returns the new triangulation and its boundary torus, with the flipped edge under `label`.
pub fn layer_once(tri: &Triangulation, torus: &BoundaryTorus, label: usize) -> Result<(Triangulation, BoundaryTorus)> {
    if label > 2 {
        return Err(Error::NotBoundaryEdge(label));
    }
    let edge = torus.edge_slots(label);
    let new = tri.size();
    let mut last_err = None;
    for (s1, s2) in [(edge.a, edge.b), (edge.b, edge.a)] {
        let p1 = perm([s1.ends.0, s1.ends.1, s1.apex(), s1.face])?;
        let p2 = perm([s2.ends.0, s2.ends.1, s2.face, s2.apex()])?;
        let attempt = tri
            .extended(1, &[(new, 3, s1.tet, s1.face, p1), (new, 2, s2.tet, s2.face, p2)])
            .and_then(|out| {
                if !out.is_orientable() {
                    return Err(Error::Invalid("layering produced a non-orientable triangulation".into()));
                }
                let mut classes = torus.edge_reps().map(|(t, e)| out.edge_class(t, e));
                classes[label] = out.edge_class(new, edge_index(2, 3));
                let t = out.torus_with_basis(classes)?;
                Ok((out, t))
            });
        match attempt {
            Ok(r) => return Ok(r),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.expect("two attempts"))
}

fn perm(images: [usize; 4]) -> Result<Perm4> {
    Perm4::new(images.map(|v| v as u8))
}

/// The diagonal that replaces edge `k` under a flip, as a slope in the current basis.
fn flipped_edge(k: usize) -> Slope {
    let mut y = [1, 1, 1];
    y[k] = 2;
    Slope::from_intersections(IntersectionTriple { y }).expect("flip diagonal is a slope")
}

/// Meridian triple after flipping edge `k`: the `k`-th entry becomes the other of
/// `y_i + y_j` and `|y_i - y_j|`.
pub fn flip_triple(y: IntersectionTriple, k: usize) -> Result<IntersectionTriple> {
    let s = Slope::from_intersections(y)?;
    let mut out = y.y;
    out[k] = distance(s.to_pq(), flipped_edge(k).to_pq());
    Ok(IntersectionTriple { y: out })
}

/// Flips taking `target` down to a permutation of `[1,2,3]`, after `padding` initial flips at the
/// smallest entry. Returns the flip labels and the visited triples (starting with `target`).
pub fn descent(target: IntersectionTriple, padding: usize) -> Result<(Vec<usize>, Vec<IntersectionTriple>)> {
    Slope::from_intersections(target)?;
    let mut y = target;
    let mut flips = Vec::new();
    let mut trace = vec![y];
    for _ in 0..padding {
        let k = argmin(&y.y);
        y = flip_triple(y, k)?;
        flips.push(k);
        trace.push(y);
    }
    loop {
        let l = y.length();
        let mut sorted = y.y;
        sorted.sort_unstable();
        if sorted == [1, 2, 3] {
            break;
        }
        let k = match l {
            l if l > 6 => argmax(&y.y),
            4 => y.y.iter().position(|&v| v == 1).expect("L = 4 triple has a 1"),
            2 => y.y.iter().position(|&v| v == 0).expect("L = 2 triple has a 0"),
            _ => return Err(Error::Invalid(format!("descent stuck at {y}"))),
        };
        let next = flip_triple(y, k)?;
        if l > 6 && next.length() >= l {
            return Err(Error::Invalid(format!("descent did not decrease at {y}")));
        }
        y = next;
        flips.push(k);
        trace.push(y);
    }
    Ok((flips, trace))
}

fn argmax(y: &[u64; 3]) -> usize {
    let m = *y.iter().max().unwrap();
    y.iter().position(|&v| v == m).unwrap()
}

fn argmin(y: &[u64; 3]) -> usize {
    let m = *y.iter().min().unwrap();
    y.iter().position(|&v| v == m).unwrap()
}

/// Layered solid torus whose meridian is `target` in the final boundary basis.
pub fn build_lst(target: Slope) -> Result<LayeredTorus> {
    build_padded(target, 0)
}

fn build_padded(target: Slope, padding: usize) -> Result<LayeredTorus> {
    let (flips, trace) = descent(target.intersections(), padding)?;
    let bottom = *trace.last().expect("trace is nonempty");
    let mut lst = core_with_meridian(bottom)?;
    for &k in flips.iter().rev() {
        lst = lst.layer(k)?;
    }
    if lst.meridian != target {
        return Err(Error::SlopeMismatch { expected: target, found: lst.meridian });
    }
    Ok(lst)
}

/// The core with its basis ordered so the meridian has intersection triple `y`.
fn core_with_meridian(y: IntersectionTriple) -> Result<LayeredTorus> {
    let core = LayeredTorus::core();
    let core_y = core.meridian.intersections().y;
    for order in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
        if order.map(|o| core_y[o]) == y.y {
            let torus = core.torus.reordered(order)?;
            let meridian = Slope::from_intersections(y)?;
            let ok = boundary_restriction(&core.tri, &core.meridian_disk, &torus)? == meridian.curve();
            debug_assert!(ok);
            return Ok(LayeredTorus { torus, meridian, descent: vec![y], ..core });
        }
    }
    Err(Error::Invalid(format!("{y} is not a reordering of the core meridian triple")))
}

/// Rebuilds `lst` with extra initial layers so that it has more than `n_min` tetrahedra.
pub fn pad_lst(lst: &LayeredTorus, n_min: usize) -> Result<LayeredTorus> {
    if lst.size() > n_min {
        return Ok(lst.clone());
    }
    let mut padding = 1;
    loop {
        let (flips, _) = descent(lst.meridian.intersections(), padding)?;
        if flips.len() + 1 > n_min {
            return build_padded(lst.meridian, padding);
        }
        padding += 1;
    }
}

/// All admissible extensions of a surface across the last tetrahedron of `tri`, which must have
/// been layered onto the triangulation `surface` lives in.
pub fn extend_surface(tri: &Triangulation, _torus: &BoundaryTorus, surface: &NormalCoords) -> Result<Vec<NormalCoords>> {
    let new = tri.size() - 1;
    if surface.tet_count() != new {
        return Err(Error::CoordinateLength { expected: new * surface.mode().per_tet(), found: surface.values().len() });
    }
    let base = surface.padded(tri.size());
    // arcs each corner of faces 3 and 2 must carry
    let mut need = [[0u64; 4]; 4];
    for f in [2, 3] {
        let g = tri.gluing(new, f).ok_or_else(|| Error::Invalid("new tetrahedron is not layered".into()))?;
        for v in face_vertices(f) {
            need[f][v] = arc_count(&base, g.tet, g.face, g.perm.apply(v));
        }
    }
    let bound = need.iter().flatten().copied().max().unwrap_or(0);
    let mut out: Vec<NormalCoords> = Vec::new();
    for k in 0..3 {
        for x in 0..=bound {
            let quad = |f: usize, v: usize| if quad_at_corner(f, v) == k { x } else { 0 };
            let mut t = [None::<u64>; 4];
            let mut ok = true;
            for f in [3, 2] {
                for v in face_vertices(f) {
                    let Some(val) = need[f][v].checked_sub(quad(f, v)) else {
                        ok = false;
                        break;
                    };
                    match t[v] {
                        Some(prev) if prev != val => ok = false,
                        _ => t[v] = Some(val),
                    }
                }
            }
            if !ok {
                continue;
            }
            let mut c = base.clone();
            for (v, val) in t.iter().enumerate() {
                c.set(new, v, val.expect("every vertex lies on face 2 or 3"));
            }
            c.set(new, 4 + k, x);
            if admissibility_violation(&c).is_none() && !out.contains(&c) {
                out.push(c);
            }
        }
    }
    Ok(out)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PlanarKind {
    #[serde(rename = "D_mu")]
    DMu,
    #[serde(rename = "D_tau")]
    DTau,
    #[serde(rename = "A_alpha")]
    AAlpha,
    Mobius,
    /// A planar surface outside the three expected types.
    UnexpectedPlanar,
    NonPlanarOther,
}

impl PlanarKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PlanarKind::DMu => "D_mu",
            PlanarKind::DTau => "D_tau",
            PlanarKind::AAlpha => "A_alpha",
            PlanarKind::Mobius => "Mobius",
            PlanarKind::UnexpectedPlanar => "UnexpectedPlanar",
            PlanarKind::NonPlanarOther => "NonPlanarOther",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlanarClass {
    pub kind: PlanarKind,
    pub witness: SurfaceSummary,
}

pub fn classify(s: &SurfaceSummary) -> PlanarKind {
    let curve = s.boundary_curves.first().copied().unwrap_or(TorusCurve::new(0, 0, 0));
    if s.is_disk() {
        if curve.slope().is_some() {
            PlanarKind::DMu
        } else {
            PlanarKind::DTau
        }
    } else if s.is_annulus() && curve.trivial_count() == 0 && curve.essential_count() == 2 {
        PlanarKind::AAlpha
    } else if s.is_mobius() {
        PlanarKind::Mobius
    } else if s.is_planar() {
        PlanarKind::UnexpectedPlanar
    } else {
        PlanarKind::NonPlanarOther
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PlanarAudit {
    pub tetrahedra: usize,
    pub cap: u64,
    pub classes: Vec<PlanarClass>,
    pub closed_surfaces: usize,
    /// Nonzero surfaces missing some tetrahedron.
    pub missing_tetrahedron: usize,
    pub weight_violations: Vec<String>,
}

impl PlanarAudit {
    pub fn count(&self, kind: PlanarKind) -> usize {
        self.classes.iter().filter(|c| c.kind == kind).count()
    }

    pub fn passed(&self) -> bool {
        self.count(PlanarKind::DMu) == 1
            && self.count(PlanarKind::UnexpectedPlanar) == 0
            && self.closed_surfaces == 0
            && self.missing_tetrahedron == 0
            && self.weight_violations.is_empty()
    }
}

/// Connected admissible normal surfaces with at most `cap` pieces (default `8t`), classified.
pub fn classify_planar(lst: &LayeredTorus, cap: Option<u64>, parallel: bool) -> Result<PlanarAudit> {
    let t = lst.size() as u64;
    let cap = cap.unwrap_or(8 * t);
    let tri = &lst.tri;
    let all = scan_solutions(tri, Mode::Normal, &ScanOptions::total(cap).admissible(7).parallel(parallel))?;
    let mut audit = PlanarAudit {
        tetrahedra: lst.size(),
        cap,
        classes: Vec::new(),
        closed_surfaces: 0,
        missing_tetrahedron: 0,
        weight_violations: Vec::new(),
    };
    let tori = [lst.torus.clone()];
    for c in all {
        if (0..tri.size()).any(|tet| c.tet(tet).iter().all(|&x| x == 0)) {
            audit.missing_tetrahedron += 1;
        }
        if crate::coords::boundary_length(tri, &c) == 0 {
            audit.closed_surfaces += 1;
        }
        if decompose_components(tri, &c)?.len() != 1 {
            continue;
        }
        let witness = summarize_with(tri, &c, &tori)?.remove(0);
        let kind = classify(&witness);
        let floor = match kind {
            PlanarKind::DMu => Some(t + 4),
            PlanarKind::DTau => Some(2 * (t + 2)),
            PlanarKind::AAlpha => Some(2 * (t + 1)),
            _ => None,
        };
        if let Some(floor) = floor {
            if witness.weight < floor {
                audit
                    .weight_violations
                    .push(format!("{} {} has weight {} < {floor}", kind.as_str(), c, witness.weight));
            }
        }
        audit.classes.push(PlanarClass { kind, witness });
    }
    Ok(audit)
}

/// Weight of the meridional disk.
pub fn meridian_weight(lst: &LayeredTorus) -> u64 {
    weight(&lst.tri, &lst.meridian_disk)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coords::is_matched;
    use crate::surface::summarize_surface;
    use proptest::prelude::*;

    fn check(lst: &LayeredTorus) {
        let tri = lst.tri();
        assert_eq!(tri.size(), lst.layers().len() + 1);
        assert_eq!(tri.edge_count(), tri.size() + 2);
        assert_eq!(tri.vertex_count(), 1);
        assert!(tri.is_knot_manifold());
        assert!(is_matched(tri, lst.meridian_disk()).unwrap());
        let s = summarize_surface(tri, lst.meridian_disk(), &[lst.torus().clone()]).unwrap();
        assert!(s.is_disk());
        assert_eq!(s.boundary_curves[0], lst.meridian().curve());
    }

    #[test]
    fn core_meridian() {
        let core = LayeredTorus::core();
        check(&core);
        assert_eq!(core.meridian().intersections().y, [1, 3, 2]);
    }

    #[test]
    fn layer_at_second_edge() {
        let t2 = LayeredTorus::core().layer(1).unwrap();
        check(&t2);
        assert_eq!(t2.meridian().intersections().y, [1, 1, 2]);
    }

    #[test]
    fn double_flip_restores_edges() {
        let core = LayeredTorus::core();
        let twice = core.layer(0).unwrap().layer(0).unwrap();
        assert_eq!(twice.meridian(), core.meridian());
        let a = flip_triple(IntersectionTriple::new(3, 4, 7).unwrap(), 2).unwrap();
        assert_eq!(flip_triple(a, 2).unwrap().y, [3, 4, 7]);
    }

    #[test]
    fn bad_label() {
        let core = LayeredTorus::core();
        assert!(matches!(layer_once(core.tri(), core.torus(), 3), Err(Error::NotBoundaryEdge(3))));
    }

    #[test]
    fn edge_slope_takes_three_tetrahedra() {
        let lst = build_lst(Slope::new(1, 0, 0).unwrap()).unwrap();
        assert_eq!(lst.size(), 3);
        let d: Vec<[u64; 3]> = lst.descent().iter().map(|y| y.y).collect();
        assert_eq!(d, vec![[0, 1, 1], [2, 1, 1], [2, 3, 1]]);
        check(&lst);
    }

    #[test]
    fn core_target() {
        let lst = build_lst(Slope::new(2, 0, 1).unwrap()).unwrap();
        assert_eq!(lst.size(), 1);
    }

    #[test]
    fn padding() {
        let lst = build_lst(Slope::new(2, 0, 1).unwrap()).unwrap();
        let padded = pad_lst(&lst, 5).unwrap();
        assert!(padded.size() >= 6);
        assert_eq!(padded.meridian(), lst.meridian());
        check(&padded);
        assert!(meridian_weight(&padded) >= padded.size() as u64 + 4);
        assert_eq!(pad_lst(&padded, 2).unwrap().size(), padded.size());
    }

    #[test]
    fn core_census() {
        let audit = classify_planar(&LayeredTorus::core(), None, false).unwrap();
        assert!(audit.passed(), "{audit:?}");
        assert_eq!(audit.classes.len(), 5);
        assert_eq!(audit.count(PlanarKind::AAlpha), 2);
        assert_eq!(audit.count(PlanarKind::Mobius), 1);
        assert_eq!(audit.count(PlanarKind::DTau), 1);
    }

    proptest! {
        #[test]
        fn descent_round_trips(p in -12i64..=12, q in 0i64..=12) {
            prop_assume!(num_integer::Integer::gcd(&p, &q) == 1);
            let s = Slope::from_pq(p, q).unwrap();
            let lst = build_lst(s).unwrap();
            prop_assert_eq!(lst.meridian(), s);
            let b = boundary_restriction(lst.tri(), lst.meridian_disk(), lst.torus()).unwrap();
            prop_assert_eq!(b.slope(), Some(s));
        }
    }
}
