//! Candidate-slope reports for the filling questions: which slopes could give a reducible filling,
//! a filling containing an incompressible surface, a Haken filling, the 3-sphere or a lens space.
//!
//! The reports only enumerate. Every decision step that needs a recognition algorithm is listed as
//! a caveat instead of being answered.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::coords::{boundary_restriction, Mode};
use crate::enumerate::{ale_constant, enumerate_vertices, EnumOptions};
use crate::error::{Error, Result};
use crate::par;
use crate::surface::{summarize_surface, SurfaceSummary};
use crate::torus::{line_of, Slope};
use crate::triangulation::{BoundaryTorus, Triangulation};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Goal {
    #[serde(rename = "reducible")]
    Reducible,
    #[serde(rename = "incompressible-surface")]
    Surface,
    #[serde(rename = "haken")]
    Haken,
    #[serde(rename = "s3")]
    S3,
    #[serde(rename = "lens")]
    Lens,
}

impl Goal {
    pub fn as_str(self) -> &'static str {
        match self {
            Goal::Reducible => "reducible",
            Goal::Surface => "incompressible-surface",
            Goal::Haken => "haken",
            Goal::S3 => "s3",
            Goal::Lens => "lens",
        }
    }
}

impl FromStr for Goal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Goal> {
        match s {
            "reducible" => Ok(Goal::Reducible),
            "surface" | "incompressible-surface" => Ok(Goal::Surface),
            "haken" => Ok(Goal::Haken),
            "s3" => Ok(Goal::S3),
            "lens" => Ok(Goal::Lens),
            _ => Err(Error::Invalid(format!("unknown goal `{s}`"))),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProvenanceKind {
    /// Boundary slope of an embedded vertex surface.
    VertexSurface,
    /// One of the three boundary edges; the index is the edge label.
    BoundaryEdge,
    /// Boundary slope of a separating vertex annulus.
    AnnulusSlope,
    /// On the line of a compressing disk's slope; the index is the disk's vertex index.
    DiskLine,
}

impl ProvenanceKind {
    fn as_str(self) -> &'static str {
        match self {
            ProvenanceKind::VertexSurface => "vertex-surface",
            ProvenanceKind::BoundaryEdge => "boundary-edge",
            ProvenanceKind::AnnulusSlope => "annulus-slope",
            ProvenanceKind::DiskLine => "disk-line",
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Provenance {
    pub kind: ProvenanceKind,
    pub witness_index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateSlope {
    pub slope: Slope,
    pub provenance: Vec<Provenance>,
}

impl Serialize for CandidateSlope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            triple: [u64; 3],
            pq: String,
            provenance: &'a [Provenance],
        }
        Out { triple: self.slope.coords(), pq: self.slope.pq_string(), provenance: &self.provenance }.serialize(s)
    }
}

/// A vertex surface listed in a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ListEntry {
    pub witness_index: usize,
    pub euler: i64,
    pub orientable: bool,
    pub boundary: [u64; 3],
    pub pq: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateReport {
    pub goal: Goal,
    pub mode: Mode,
    pub slopes: Vec<CandidateSlope>,
    pub lists: BTreeMap<String, Vec<ListEntry>>,
    pub notes: Vec<String>,
    pub caveats: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct ReportOptions {
    pub parallel: bool,
    pub max_rays: usize,
    /// Window for truncating lines of slopes.
    pub line_window: u64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { parallel: par::parallel_available(), max_rays: 500_000, line_window: 3 }
    }
}

/// An embedded vertex surface with its reconstruction; `index` is the position in the
/// embedded-only vertex enumeration.
#[derive(Clone, Debug)]
pub struct VertexSurface {
    pub index: usize,
    pub summary: SurfaceSummary,
}

impl VertexSurface {
    fn slope(&self) -> Option<Slope> {
        self.summary.boundary_curves[0].slope()
    }

    fn entry(&self) -> ListEntry {
        ListEntry {
            witness_index: self.index,
            euler: self.summary.euler,
            orientable: self.summary.orientable,
            boundary: self.summary.boundary_curves[0].x,
            pq: self.slope().map(|s| s.pq_string()),
        }
    }
}

/// Embedded vertex surfaces of a knot-manifold triangulation.
pub fn vertex_surfaces(tri: &Triangulation, torus: &BoundaryTorus, mode: Mode, opts: &ReportOptions) -> Result<Vec<VertexSurface>> {
    let mut eo = EnumOptions::new(mode).embedded_only(true).parallel(opts.parallel);
    eo.max_rays = opts.max_rays;
    let vertices = enumerate_vertices(tri, &eo)?;
    let tori = [torus.clone()];
    let summaries = par::map(&vertices, opts.parallel, |v| summarize_surface(tri, &v.coords, &tori));
    vertices
        .iter()
        .zip(summaries)
        .map(|(v, s)| Ok(VertexSurface { index: v.index, summary: s? }))
        .collect()
}

#[derive(Default)]
struct SlopeBook(BTreeMap<Slope, Vec<Provenance>>);

impl SlopeBook {
    fn add(&mut self, slope: Slope, kind: ProvenanceKind, witness_index: usize) {
        let p = self.0.entry(slope).or_default();
        let prov = Provenance { kind, witness_index };
        if !p.contains(&prov) {
            p.push(prov);
            p.sort();
        }
    }

    fn into_vec(self) -> Vec<CandidateSlope> {
        self.0.into_iter().map(|(slope, provenance)| CandidateSlope { slope, provenance }).collect()
    }
}

const SUBJECT: &str = "subject to the caveats";

pub fn candidates(tri: &Triangulation, goal: Goal, opts: &ReportOptions) -> Result<CandidateReport> {
    let torus = tri.require_knot_manifold()?;
    candidates_with(tri, &torus, goal, opts)
}

/// Report for `goal`, with slopes written in the basis of `torus`.
pub fn candidates_with(tri: &Triangulation, torus: &BoundaryTorus, goal: Goal, opts: &ReportOptions) -> Result<CandidateReport> {
    tri.require_knot_manifold()?;
    match goal {
        Goal::Reducible => reducible(tri, torus, opts),
        Goal::Surface => surface(tri, torus, opts),
        Goal::Haken => haken(tri, torus, opts),
        Goal::S3 => s3(tri, torus, opts),
        Goal::Lens => lens(tri, torus, opts),
    }
}

fn reducible(tri: &Triangulation, torus: &BoundaryTorus, opts: &ReportOptions) -> Result<CandidateReport> {
    let vs = vertex_surfaces(tri, torus, Mode::Normal, opts)?;
    let mut book = SlopeBook::default();
    let mut planar = Vec::new();
    for v in &vs {
        if v.summary.is_planar() && !v.summary.is_closed() {
            if let Some(s) = v.slope() {
                book.add(s, ProvenanceKind::VertexSurface, v.index);
                planar.push(v.entry());
            }
        }
    }
    let mut notes = Vec::new();
    if planar.is_empty() {
        notes.push(format!(
            "no planar vertex surface has essential boundary: X(alpha) is irreducible for every slope alpha, {SUBJECT}"
        ));
    }
    Ok(CandidateReport {
        goal: Goal::Reducible,
        mode: Mode::Normal,
        slopes: book.into_vec(),
        lists: BTreeMap::from([("planar".to_string(), planar)]),
        notes,
        caveats: vec![
            "Algorithm R Step 3: deciding whether X itself is reducible (essential normal 2-spheres, irreducible decomposition) is external".into(),
            "Algorithm R Step 5: deciding whether each capped surface S_i(alpha_i) is essential in X(alpha_i) is external".into(),
        ],
    })
}

fn surface(tri: &Triangulation, torus: &BoundaryTorus, opts: &ReportOptions) -> Result<CandidateReport> {
    let vs = vertex_surfaces(tri, torus, Mode::Normal, opts)?;
    let mut book = SlopeBook::default();
    let mut g = Vec::new();
    let mut b = Vec::new();
    let mut negative = Vec::new();
    for v in &vs {
        let s = &v.summary;
        if s.is_closed() && !s.is_sphere() {
            g.push(v.entry());
        }
        let curve = s.boundary_curves[0];
        if !s.is_closed() && !s.is_planar() && curve.trivial_count() == 0 {
            if let Some(slope) = v.slope() {
                book.add(slope, ProvenanceKind::VertexSurface, v.index);
                b.push(v.entry());
                if s.euler < 0 {
                    negative.push(s.clone());
                }
            }
        }
    }
    let mut notes = Vec::new();
    if g.is_empty() {
        notes.push(format!(
            "G is empty: the boundary compresses and no filling X(alpha) contains a closed incompressible two-sided surface, {SUBJECT}"
        ));
    }
    if let Some(c) = ale_constant(&negative)? {
        notes.push(format!("length ratio constant over B with negative Euler characteristic: C = {c}"));
    }
    Ok(CandidateReport {
        goal: Goal::Surface,
        mode: Mode::Normal,
        slopes: book.into_vec(),
        lists: BTreeMap::from([("B".to_string(), b), ("G".to_string(), g)]),
        notes,
        caveats: vec![
            "Algorithm S Step 5: deciding the slopes at which each closed surface in G compresses (Algorithm I) is external".into(),
            "Algorithm S Step 6: deciding whether B_k(beta_k) compresses in X(beta_k) is external".into(),
            "Algorithm S Step 7: combining the compression sets into a verdict is external".into(),
        ],
    })
}

fn haken(tri: &Triangulation, torus: &BoundaryTorus, opts: &ReportOptions) -> Result<CandidateReport> {
    let r = reducible(tri, torus, opts)?;
    let s = surface(tri, torus, opts)?;
    let mut book = SlopeBook::default();
    for c in r.slopes.iter().chain(&s.slopes) {
        for p in &c.provenance {
            book.add(c.slope, p.kind, p.witness_index);
        }
    }
    let in_r: Vec<Slope> = r.slopes.iter().map(|c| c.slope).collect();
    let both: Vec<ListEntry> = s
        .slopes
        .iter()
        .filter(|c| in_r.contains(&c.slope))
        .map(|c| ListEntry {
            witness_index: c.provenance[0].witness_index,
            euler: 0,
            orientable: true,
            boundary: c.slope.coords(),
            pq: Some(c.slope.pq_string()),
        })
        .collect();
    let mut lists = BTreeMap::new();
    for (k, v) in r.lists {
        lists.insert(format!("reducible/{k}"), v);
    }
    for (k, v) in s.lists {
        lists.insert(format!("surface/{k}"), v);
    }
    lists.insert("intersection".to_string(), both);
    let mut notes = vec![
        "Haken slopes are those from the surface report that are not reducible fillings; the intersection list names slopes candidate for both".to_string(),
    ];
    notes.extend(r.notes);
    notes.extend(s.notes);
    let mut caveats = r.caveats;
    caveats.extend(s.caveats);
    caveats.push("Algorithm H: the final set needs the external decisions of Algorithms R and S".into());
    Ok(CandidateReport { goal: Goal::Haken, mode: Mode::Normal, slopes: book.into_vec(), lists, notes, caveats })
}

fn s3(tri: &Triangulation, torus: &BoundaryTorus, opts: &ReportOptions) -> Result<CandidateReport> {
    let vs = vertex_surfaces(tri, torus, Mode::AlmostNormal, opts)?;
    let mut book = SlopeBook::default();
    let mut disks = Vec::new();
    for v in &vs {
        if let Some(s) = v.slope() {
            book.add(s, ProvenanceKind::VertexSurface, v.index);
            if v.summary.is_disk() && v.summary.coords.octagon_count() == 0 {
                disks.push(v.clone());
            }
        }
    }
    let mut notes = Vec::new();
    let mut lists = BTreeMap::new();
    if let Some(d) = disks.first() {
        let mu = d.slope().expect("disk has essential boundary");
        notes.push(format!(
            "compressible boundary: vertex disk {} has essential boundary {}, so filling along any slope on its line gives the 3-sphere (line truncated to |r|, s <= {})",
            d.index,
            mu.pq_string(),
            opts.line_window
        ));
        for (r, s) in line_of(mu.to_pq(), opts.line_window)? {
            book.add(Slope::from_pq(r, s)?, ProvenanceKind::DiskLine, d.index);
        }
        lists.insert("disks".to_string(), disks.iter().map(|d| d.entry()).collect());
    } else if book.0.is_empty() {
        notes.push(format!("no candidate slopes: no filling yields the 3-sphere, {SUBJECT}"));
    }
    Ok(CandidateReport {
        goal: Goal::S3,
        mode: Mode::AlmostNormal,
        slopes: book.into_vec(),
        lists,
        notes,
        caveats: vec![
            "Algorithm S3 Step 2: deciding whether X is reducible is external".into(),
            "Algorithm S3 Step 4: 3-sphere recognition of each X(alpha_i) (Rubinstein-Thompson) is external".into(),
        ],
    })
}

fn lens(tri: &Triangulation, torus: &BoundaryTorus, opts: &ReportOptions) -> Result<CandidateReport> {
    let vs = vertex_surfaces(tri, torus, Mode::AlmostNormal, opts)?;
    let mut book = SlopeBook::default();
    for k in 0..3 {
        book.add(Slope::edge(k), ProvenanceKind::BoundaryEdge, k);
    }
    let mut annuli = Vec::new();
    let mut disks = Vec::new();
    for v in &vs {
        if let Some(s) = v.slope() {
            book.add(s, ProvenanceKind::VertexSurface, v.index);
            if v.summary.is_annulus() && v.summary.separating == Some(true) {
                book.add(s, ProvenanceKind::AnnulusSlope, v.index);
                annuli.push(v.entry());
            }
            if v.summary.is_disk() && v.summary.coords.octagon_count() == 0 {
                disks.push(v.entry());
            }
        }
    }
    let lists = BTreeMap::from([("disks".to_string(), disks), ("separating-annuli".to_string(), annuli)]);
    Ok(CandidateReport {
        goal: Goal::Lens,
        mode: Mode::AlmostNormal,
        slopes: book.into_vec(),
        lists,
        notes: Vec::new(),
        caveats: vec![
            "Algorithm L Step 2: recognizing the manifold obtained by cutting along a compressing disk and capping as S^3 or a lens space is external".into(),
            "Algorithm L Step 3: deciding whether a separating annulus splits X into two solid tori is external".into(),
            "Algorithm L Step 4: lens space recognition of each X(alpha_i) is external".into(),
        ],
    })
}

/// Checks that every slope in a report is the boundary slope of its witness (vertex surfaces and
/// annuli) or a boundary edge.
pub fn verify_provenance(tri: &Triangulation, torus: &BoundaryTorus, report: &CandidateReport, opts: &ReportOptions) -> Result<bool> {
    let mut eo = EnumOptions::new(report.mode).embedded_only(true).parallel(opts.parallel);
    eo.max_rays = opts.max_rays;
    let vertices = enumerate_vertices(tri, &eo)?;
    for c in &report.slopes {
        if c.provenance.is_empty() {
            return Ok(false);
        }
        for p in &c.provenance {
            let ok = match p.kind {
                ProvenanceKind::VertexSurface | ProvenanceKind::AnnulusSlope => {
                    let v = &vertices[p.witness_index];
                    boundary_restriction(tri, &v.coords, torus)?.slope() == Some(c.slope)
                }
                ProvenanceKind::BoundaryEdge => Slope::edge(p.witness_index) == c.slope,
                ProvenanceKind::DiskLine => {
                    let v = &vertices[p.witness_index];
                    match boundary_restriction(tri, &v.coords, torus)?.slope() {
                        Some(mu) => crate::torus::distance(mu.to_pq(), c.slope.to_pq()) == 1,
                        None => false,
                    }
                }
            };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Format {
    Tsv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "tsv" => Ok(Format::Tsv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Invalid(format!("unknown format `{s}`"))),
        }
    }
}

pub fn emit(report: &CandidateReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Tsv => {
            let mut out = String::from("section\tname\ttriple\tpq\tdetail\n");
            for c in &report.slopes {
                let prov: Vec<String> =
                    c.provenance.iter().map(|p| format!("{}:{}", p.kind.as_str(), p.witness_index)).collect();
                let [a, b, d] = c.slope.coords();
                let _ = writeln!(out, "slope\t{}\t{a},{b},{d}\t{}\t{}", report.goal.as_str(), c.slope.pq_string(), prov.join(";"));
            }
            for (name, entries) in &report.lists {
                for e in entries {
                    let [a, b, d] = e.boundary;
                    let _ = writeln!(
                        out,
                        "list\t{name}\t{a},{b},{d}\t{}\twitness={} chi={} orientable={}",
                        e.pq.as_deref().unwrap_or("-"),
                        e.witness_index,
                        e.euler,
                        e.orientable
                    );
                }
            }
            for n in &report.notes {
                let _ = writeln!(out, "note\t-\t-\t-\t{n}");
            }
            for c in &report.caveats {
                let _ = writeln!(out, "caveat\t-\t-\t-\t{c}");
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layered::{build_lst, LayeredTorus};

    #[test]
    fn solid_torus_reports() {
        let core = LayeredTorus::core();
        let opts = ReportOptions::default();
        let r = candidates_with(core.tri(), core.torus(), Goal::Reducible, &opts).unwrap();
        assert!(r.slopes.iter().any(|c| c.slope.coords() == [2, 0, 1]));
        assert!(verify_provenance(core.tri(), core.torus(), &r, &opts).unwrap());

        let s = candidates_with(core.tri(), core.torus(), Goal::Surface, &opts).unwrap();
        assert!(s.lists["G"].is_empty());
        assert!(s.notes.iter().any(|n| n.starts_with("G is empty")));

        let t = candidates_with(core.tri(), core.torus(), Goal::S3, &opts).unwrap();
        assert!(t.notes.iter().any(|n| n.starts_with("compressible boundary")));
        assert!(verify_provenance(core.tri(), core.torus(), &t, &opts).unwrap());

        let l = candidates_with(core.tri(), core.torus(), Goal::Lens, &opts).unwrap();
        for k in 0..3 {
            assert!(l.slopes.iter().any(|c| c.slope == Slope::edge(k)));
        }
        assert!(verify_provenance(core.tri(), core.torus(), &l, &opts).unwrap());
    }

    #[test]
    fn emit_is_deterministic() {
        let lst = build_lst(Slope::from_pq(1, 3).unwrap()).unwrap();
        let opts = ReportOptions::default();
        let r = candidates_with(lst.tri(), lst.torus(), Goal::Haken, &opts).unwrap();
        assert_eq!(emit(&r, Format::Json), emit(&r, Format::Json));
        assert!(emit(&r, Format::Tsv).starts_with("section\tname\ttriple\tpq\tdetail\n"));
        let v: serde_json::Value = serde_json::from_str(&emit(&r, Format::Json)).unwrap();
        assert!(v["slopes"].is_array());
        assert!(v["caveats"].as_array().unwrap().len() >= 2);
    }

    #[test]
    fn goal_names() {
        for g in ["reducible", "surface", "haken", "s3", "lens"] {
            assert!(g.parse::<Goal>().is_ok());
        }
        assert!("x".parse::<Goal>().is_err());
    }

    #[test]
    fn rejects_closed_input() {
        let core = LayeredTorus::core();
        let f = crate::filling::fill(core.tri(), core.torus(), Slope::new(0, 1, 0).unwrap(), 1).unwrap();
        assert!(matches!(candidates(f.tri(), Goal::Reducible, &ReportOptions::default()), Err(Error::NotKnotManifold(_))));
    }
}
