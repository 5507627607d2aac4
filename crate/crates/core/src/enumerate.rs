//! Vertex solutions, bounded solution scans, fundamental (Hilbert basis) surfaces and slope sets.
//!
//! Everything here is exact: extreme rays are computed with arbitrary-precision integers by the
//! double description method, starting from the nonnegative orthant and intersecting with one
//! matching equation at a time.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::coords::{admissibility_violation, boundary_restriction, compatible, matching_matrix, Mode, NormalCoords};
use crate::error::{Error, Result};
use crate::par;
use crate::surface::SurfaceSummary;
use crate::torus::{slopes_up_to_length, Slope};
use crate::triangulation::{BoundaryTorus, Triangulation};

#[derive(Clone, Debug)]
pub struct EnumOptions {
    pub mode: Mode,
    /// Discard intermediate rays whose support cannot belong to an embedded surface.
    pub embedded_only: bool,
    pub parallel: bool,
    /// Fail once an intermediate ray set grows beyond this.
    pub max_rays: usize,
    /// Refuse triangulations with more coordinate positions than this.
    pub max_coords: usize,
}

impl EnumOptions {
    pub fn new(mode: Mode) -> Self {
        EnumOptions { mode, embedded_only: false, parallel: par::parallel_available(), max_rays: 500_000, max_coords: 400 }
    }

    pub fn embedded_only(mut self, yes: bool) -> Self {
        self.embedded_only = yes;
        self
    }

    pub fn parallel(mut self, yes: bool) -> Self {
        self.parallel = yes;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexSolution {
    pub index: usize,
    pub coords: NormalCoords,
    #[serde(serialize_with = "serialize_rationals")]
    pub projective: Vec<BigRational>,
    pub embedded: bool,
}

fn serialize_rationals<S: serde::Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    let strings: Vec<String> = v.iter().map(|r| r.to_string()).collect();
    strings.serialize(s)
}

/// Support of a ray as a bitset.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
struct Support([u64; SUPPORT_WORDS]);

const SUPPORT_WORDS: usize = 8;
const MAX_DIM: usize = SUPPORT_WORDS * 64;

impl Support {
    fn of(v: &[BigInt]) -> Support {
        let mut words = [0u64; SUPPORT_WORDS];
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        Support(words)
    }

    fn union(&self, other: &Support) -> Support {
        let mut out = self.0;
        for (o, b) in out.iter_mut().zip(&other.0) {
            *o |= b;
        }
        Support(out)
    }

    fn subset_of(&self, other: &Support) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Whether a support could belong to an embedded surface with `per_tet` positions per tetrahedron.
fn admissible_support(s: &Support, per_tet: usize, dim: usize) -> bool {
    let mut octagons = 0;
    for t in 0..dim / per_tet {
        let base = t * per_tet;
        let quads = (4..7).filter(|&p| s.contains(base + p)).count();
        let oct = if per_tet == 10 { (7..10).filter(|&p| s.contains(base + p)).count() } else { 0 };
        if quads > 1 || (quads > 0 && oct > 0) {
            return false;
        }
        octagons += oct;
    }
    octagons <= 1
}

struct Ray {
    coords: Vec<BigInt>,
    support: Support,
}

/// Extreme rays of `{x ≥ 0 : matrix · x = 0}` in `dim` variables, each primitive, sorted.
///
/// With `prune = Some(per_tet)`, only rays whose support is admissible for normal coordinates
/// with that block size are kept throughout.
pub fn extreme_rays(
    matrix: &[Vec<i64>],
    dim: usize,
    prune: Option<usize>,
    parallel: bool,
    max_rays: usize,
) -> Result<Vec<Vec<BigInt>>> {
    let mut rows: Vec<Vec<i64>> = matrix.iter().filter(|r| r.iter().any(|&c| c != 0)).cloned().collect();
    rows.sort_by(|a, b| {
        let za = a.iter().filter(|&&c| c != 0).count();
        let zb = b.iter().filter(|&&c| c != 0).count();
        za.cmp(&zb).then_with(|| a.cmp(b))
    });
    rows.dedup();
    if dim > MAX_DIM {
        return Err(Error::LimitExceeded(format!("{dim} coordinates exceed the supported {MAX_DIM}")));
    }
    let mut processed: Vec<Vec<i64>> = Vec::new();
    let mut rays: Vec<Ray> = (0..dim)
        .map(|i| {
            let mut v = vec![BigInt::zero(); dim];
            v[i] = BigInt::one();
            let support = Support::of(&v);
            Ray { coords: v, support }
        })
        .collect();
    for row in &rows {
        // two rays are adjacent only if their common zeros, with the equations so far, cut the
        // space down to two dimensions
        let max_support = rank(&processed) + 2;
        processed.push(row.clone());
        let dots: Vec<BigInt> = rays
            .iter()
            .map(|r| row.iter().zip(&r.coords).filter(|(c, _)| **c != 0).map(|(c, x)| x * BigInt::from(*c)).sum())
            .collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| dots[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| dots[i].is_negative()).collect();
        let rays_ref = &rays;
        let dots_ref = &dots;
        let neg_ref = &neg;
        let combos: Vec<Ray> = par::flat_map(&pos, parallel, |&p| {
            let mut out = Vec::new();
            for &n in neg_ref {
                let union = rays_ref[p].support.union(&rays_ref[n].support);
                if union.count() > max_support {
                    continue;
                }
                if let Some(per_tet) = prune {
                    if !admissible_support(&union, per_tet, dim) {
                        continue;
                    }
                }
                let adjacent = rays_ref
                    .iter()
                    .enumerate()
                    .all(|(i, r)| i == p || i == n || !r.support.subset_of(&union));
                if !adjacent {
                    continue;
                }
                let a = &dots_ref[p];
                let b = -&dots_ref[n];
                let mut coords: Vec<BigInt> = rays_ref[n]
                    .coords
                    .iter()
                    .zip(&rays_ref[p].coords)
                    .map(|(xn, xp)| xn * a + xp * &b)
                    .collect();
                primitive(&mut coords);
                let support = Support::of(&coords);
                out.push(Ray { coords, support });
            }
            out
        });
        let mut next: Vec<Ray> = Vec::with_capacity(combos.len());
        for (i, r) in rays.into_iter().enumerate() {
            if dots[i].is_zero() {
                next.push(r);
            }
        }
        next.extend(combos);
        if next.len() > max_rays {
            return Err(Error::LimitExceeded(format!(
                "double description produced {} intermediate rays (limit {max_rays})",
                next.len()
            )));
        }
        rays = next;
    }
    let mut out: Vec<Vec<BigInt>> = rays.into_iter().map(|r| r.coords).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

fn primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
}

fn to_u64(v: &[BigInt]) -> Result<Vec<u64>> {
    v.iter()
        .map(|x| x.to_u64().ok_or_else(|| Error::LimitExceeded(format!("coordinate {x} exceeds 64 bits"))))
        .collect()
}

/// All vertex solutions of the matching equations, sorted lexicographically by coordinates.
pub fn enumerate_vertices(tri: &Triangulation, opts: &EnumOptions) -> Result<Vec<VertexSolution>> {
    let dim = tri.size() * opts.mode.per_tet();
    if dim > opts.max_coords {
        return Err(Error::LimitExceeded(format!(
            "{dim} coordinate positions exceed the limit of {}",
            opts.max_coords
        )));
    }
    let matrix = matching_matrix(tri, opts.mode);
    let prune = opts.embedded_only.then(|| opts.mode.per_tet());
    let rays = extreme_rays(&matrix, dim, prune, opts.parallel, opts.max_rays)?;
    let mut out = Vec::with_capacity(rays.len());
    for ray in rays {
        let values = to_u64(&ray)?;
        let coords = NormalCoords::new(opts.mode, values)?;
        let embedded = admissibility_violation(&coords).is_none();
        if opts.embedded_only && !embedded {
            continue;
        }
        let total = BigInt::from(coords.total());
        let projective = ray.iter().map(|x| BigRational::new(x.clone(), total.clone())).collect();
        out.push(VertexSolution { index: out.len(), coords, projective, embedded });
    }
    Ok(out)
}

/// Search limits for [`scan_solutions`].
#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub entry_bound: Option<u64>,
    pub total_cap: Option<u64>,
    /// Prune to admissible (embedded) coordinate lists with this many positions per tetrahedron.
    pub admissible: Option<usize>,
    pub parallel: bool,
    pub max_results: usize,
}

impl ScanOptions {
    pub fn total(cap: u64) -> Self {
        ScanOptions {
            entry_bound: None,
            total_cap: Some(cap),
            admissible: None,
            parallel: par::parallel_available(),
            max_results: 5_000_000,
        }
    }

    pub fn entries(bound: u64) -> Self {
        ScanOptions { entry_bound: Some(bound), total_cap: None, ..ScanOptions::total(0) }
    }

    pub fn admissible(mut self, per_tet: usize) -> Self {
        self.admissible = Some(per_tet);
        self
    }

    pub fn parallel(mut self, yes: bool) -> Self {
        self.parallel = yes;
        self
    }
}

struct Scanner<'a> {
    dim: usize,
    // per variable: (equation, coefficient)
    terms: Vec<Vec<(usize, i64)>>,
    // equations whose last variable is this one
    closing: Vec<Vec<usize>>,
    last_pos: Vec<usize>,
    last_neg: Vec<usize>,
    max_coef: Vec<i64>,
    opts: &'a ScanOptions,
}

#[derive(Clone)]
struct ScanState {
    values: Vec<u64>,
    partial: Vec<i64>,
    total: u64,
    octagons: u64,
}

impl<'a> Scanner<'a> {
    fn new(matrix: &[Vec<i64>], dim: usize, opts: &'a ScanOptions) -> Self {
        let rows: Vec<&Vec<i64>> = matrix.iter().filter(|r| r.iter().any(|&c| c != 0)).collect();
        let mut terms = vec![Vec::new(); dim];
        let mut closing = vec![Vec::new(); dim];
        let mut last_pos = vec![0; rows.len()];
        let mut last_neg = vec![0; rows.len()];
        let mut max_coef = vec![0; rows.len()];
        for (e, row) in rows.iter().enumerate() {
            let mut last = 0;
            for (i, &c) in row.iter().enumerate() {
                if c != 0 {
                    terms[i].push((e, c));
                    last = i;
                    if c > 0 {
                        last_pos[e] = i + 1;
                    } else {
                        last_neg[e] = i + 1;
                    }
                    max_coef[e] = max_coef[e].max(c.abs());
                }
            }
            closing[last].push(e);
        }
        Scanner { dim, terms, closing, last_pos, last_neg, max_coef, opts }
    }

    fn upper(&self, i: usize, st: &ScanState) -> u64 {
        let mut hi = u64::MAX;
        if let Some(b) = self.opts.entry_bound {
            hi = hi.min(b);
        }
        if let Some(cap) = self.opts.total_cap {
            hi = hi.min(cap - st.total);
        }
        if let Some(per_tet) = self.opts.admissible {
            let (tet, p) = (i / per_tet, i % per_tet);
            let base = tet * per_tet;
            let quad_used = (4..7).any(|q| base + q < i && st.values[base + q] > 0);
            let oct_used_here = per_tet == 10 && (7..10).any(|q| base + q < i && st.values[base + q] > 0);
            if (4..7).contains(&p) && (quad_used || oct_used_here) {
                return 0;
            }
            if p >= 7 {
                if quad_used || st.octagons > 0 {
                    return 0;
                }
                hi = hi.min(1);
            }
        }
        hi
    }

    /// Assigns `x_i = v`, returning false if some equation becomes infeasible.
    fn assign(&self, i: usize, v: u64, st: &mut ScanState) -> bool {
        st.values[i] = v;
        st.total += v;
        if let Some(per_tet) = self.opts.admissible {
            if i % per_tet >= 7 {
                st.octagons += v;
            }
        }
        let remaining = self.opts.total_cap.map(|c| c - st.total);
        let mut ok = true;
        for &(e, c) in &self.terms[i] {
            st.partial[e] += c * v as i64;
            let s = st.partial[e];
            if s > 0 && self.last_neg[e] <= i + 1 {
                ok = false;
            }
            if s < 0 && self.last_pos[e] <= i + 1 {
                ok = false;
            }
            if let Some(r) = remaining {
                if s.unsigned_abs() > r * self.max_coef[e] as u64 {
                    ok = false;
                }
            }
        }
        ok
    }

    fn unassign(&self, i: usize, v: u64, st: &mut ScanState) {
        for &(e, c) in &self.terms[i] {
            st.partial[e] -= c * v as i64;
        }
        st.values[i] = 0;
        st.total -= v;
        if let Some(per_tet) = self.opts.admissible {
            if i % per_tet >= 7 {
                st.octagons -= v;
            }
        }
    }

    fn candidates(&self, i: usize, st: &ScanState) -> Vec<u64> {
        let hi = self.upper(i, st);
        if let Some(&e) = self.closing[i].first() {
            let c = self.terms[i].iter().find(|(q, _)| *q == e).unwrap().1;
            let s = st.partial[e];
            if s % c != 0 {
                return Vec::new();
            }
            let v = -s / c;
            if v < 0 || v as u64 > hi {
                return Vec::new();
            }
            return vec![v as u64];
        }
        (0..=hi).collect()
    }

    fn run(&self, i: usize, stop: usize, st: &mut ScanState, frontier: &mut Vec<ScanState>, out: &mut Vec<Vec<u64>>) -> Result<()> {
        if i == stop {
            if stop == self.dim {
                if st.total > 0 {
                    out.push(st.values.clone());
                    if out.len() > self.opts.max_results {
                        return Err(Error::LimitExceeded(format!("more than {} solutions", self.opts.max_results)));
                    }
                }
            } else {
                frontier.push(st.clone());
            }
            return Ok(());
        }
        for v in self.candidates(i, st) {
            if self.assign(i, v, st) {
                self.run(i + 1, stop, st, frontier, out)?;
            }
            self.unassign(i, v, st);
        }
        Ok(())
    }
}

/// All nonzero nonnegative integer solutions of `matrix · x = 0` within the given bounds.
pub fn scan(matrix: &[Vec<i64>], dim: usize, opts: &ScanOptions) -> Result<Vec<Vec<u64>>> {
    if opts.entry_bound.is_none() && opts.total_cap.is_none() {
        return Err(Error::Invalid("a solution scan needs an entry bound or a total cap".into()));
    }
    let scanner = Scanner::new(matrix, dim, opts);
    let rows = scanner.last_pos.len();
    let mut root = ScanState { values: vec![0; dim], partial: vec![0; rows], total: 0, octagons: 0 };
    // expand a frontier of partial assignments to split the search
    let mut depth = 0;
    let mut frontier = vec![root.clone()];
    let mut out = Vec::new();
    while depth < dim && frontier.len() < 256 && opts.parallel {
        let mut next = Vec::new();
        for mut st in frontier {
            scanner.run(depth, depth + 1, &mut st, &mut next, &mut out)?;
        }
        frontier = next;
        depth += 1;
    }
    if depth == 0 {
        let mut f = Vec::new();
        scanner.run(0, dim, &mut root, &mut f, &mut out)?;
    } else if depth == dim {
        for st in frontier {
            if st.total > 0 {
                out.push(st.values);
            }
        }
    } else {
        let results = par::map(&frontier, opts.parallel, |st| {
            let mut st = st.clone();
            let mut local = Vec::new();
            let mut f = Vec::new();
            scanner.run(depth, dim, &mut st, &mut f, &mut local).map(|_| local)
        });
        for r in results {
            out.extend(r?);
            if out.len() > opts.max_results {
                return Err(Error::LimitExceeded(format!("more than {} solutions", opts.max_results)));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Matched coordinate lists of a triangulation within the scan bounds.
pub fn scan_solutions(tri: &Triangulation, mode: Mode, opts: &ScanOptions) -> Result<Vec<NormalCoords>> {
    let dim = tri.size() * mode.per_tet();
    let matrix = matching_matrix(tri, mode);
    scan(&matrix, dim, opts)?
        .into_iter()
        .map(|v| NormalCoords::new(mode, v))
        .collect()
}

/// Extreme rays found by brute force: primitive solutions within the entry bound whose support is
/// minimal among all nonzero solutions found.
pub fn minimal_support_solutions(matrix: &[Vec<i64>], dim: usize, entry_bound: u64, parallel: bool) -> Result<Vec<Vec<u64>>> {
    let all = scan(matrix, dim, &ScanOptions::entries(entry_bound).parallel(parallel))?;
    let supports: Vec<Vec<bool>> = all.iter().map(|v| v.iter().map(|&x| x > 0).collect()).collect();
    let strictly_inside = |a: &[bool], b: &[bool]| a.iter().zip(b).all(|(x, y)| !x || *y) && a != b;
    let mut out: Vec<Vec<u64>> = all
        .iter()
        .enumerate()
        .filter(|(i, v)| {
            let g = v.iter().fold(0u64, |g, &x| g.gcd(&x));
            g == 1 && !supports.iter().any(|s| strictly_inside(s, &supports[*i]))
        })
        .map(|(_, v)| v.clone())
        .collect();
    out.sort();
    Ok(out)
}

/// Rank of an integer matrix.
pub fn rank(matrix: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(rank, pivot);
        let p = m[rank][col].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let factor = &m[r][col] / &p;
                for c in col..cols {
                    let sub = &factor * &m[rank][c];
                    m[r][c] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FundamentalSet {
    pub members: Vec<Vec<u64>>,
    /// True when the search bound is at least the completeness certificate.
    pub complete: bool,
    /// Largest total piece count searched.
    pub searched_total: u64,
    /// Every Hilbert basis element has total at most this.
    pub certificate: u64,
}

/// Hilbert basis of `{x ≥ 0 : matrix · x = 0}`, searched up to total `cap` (default: the
/// certificate bound, the sum of the `d` largest extreme-ray totals for a cone of dimension `d`).
pub fn hilbert_basis(matrix: &[Vec<i64>], dim: usize, cap: Option<u64>, parallel: bool) -> Result<FundamentalSet> {
    let rays = extreme_rays(matrix, dim, None, parallel, 500_000)?;
    let ray_matrix: Vec<Vec<i64>> = rays
        .iter()
        .map(|r| r.iter().map(|x| x.to_i64().unwrap_or(i64::MAX)).collect())
        .collect();
    let d = rank(&ray_matrix);
    let mut totals: Vec<u64> = rays.iter().map(|r| to_u64(r).map(|v| v.iter().sum())).collect::<Result<_>>()?;
    totals.sort_unstable_by(|a, b| b.cmp(a));
    let certificate: u64 = totals.iter().take(d).sum();
    let searched = cap.unwrap_or(certificate);
    let mut all = scan(matrix, dim, &ScanOptions::total(searched).parallel(parallel))?;
    all.sort_by_key(|v| (v.iter().sum::<u64>(), v.clone()));
    let mut members: Vec<Vec<u64>> = Vec::new();
    for v in all {
        let reducible = members
            .iter()
            .any(|h| h != &v && h.iter().zip(&v).all(|(a, b)| a <= b));
        if !reducible {
            members.push(v);
        }
    }
    members.sort();
    Ok(FundamentalSet { members, complete: searched >= certificate, searched_total: searched, certificate })
}

/// Fundamental surfaces of a triangulation.
pub fn enumerate_fundamental(tri: &Triangulation, mode: Mode, cap: Option<u64>, parallel: bool) -> Result<FundamentalSet> {
    let dim = tri.size() * mode.per_tet();
    hilbert_basis(&matching_matrix(tri, mode), dim, cap, parallel)
}

/// Whether `target` is a nonnegative integer combination of `gens`.
pub fn decomposes(target: &[u64], gens: &[Vec<u64>]) -> bool {
    fn go(rest: &mut Vec<u64>, gens: &[Vec<u64>], from: usize) -> bool {
        if rest.iter().all(|&x| x == 0) {
            return true;
        }
        for (i, g) in gens.iter().enumerate().skip(from) {
            if g.iter().all(|&x| x == 0) || !g.iter().zip(rest.iter()).all(|(a, b)| a <= b) {
                continue;
            }
            for (r, a) in rest.iter_mut().zip(g) {
                *r -= a;
            }
            let ok = go(rest, gens, i);
            for (r, a) in rest.iter_mut().zip(g) {
                *r += a;
            }
            if ok {
                return true;
            }
        }
        false
    }
    go(&mut target.to_vec(), gens, 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlopeWitnesses {
    pub slope: Slope,
    pub witnesses: Vec<usize>,
}

/// Distinct boundary slopes of the embedded vertex solutions, with the vertex indices realizing them.
pub fn boundary_slope_set(tri: &Triangulation, vertices: &[VertexSolution], torus: &BoundaryTorus) -> Result<Vec<SlopeWitnesses>> {
    tri.require_knot_manifold()?;
    let mut map: BTreeMap<Slope, Vec<usize>> = BTreeMap::new();
    for v in vertices.iter().filter(|v| v.embedded) {
        if let Some(s) = boundary_restriction(tri, &v.coords, torus)?.slope() {
            map.entry(s).or_default().push(v.index);
        }
    }
    Ok(map.into_iter().map(|(slope, witnesses)| SlopeWitnesses { slope, witnesses }).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum CarrierVerdict {
    /// At most two slopes, complementary when there are two.
    Consistent { slopes: Vec<Slope> },
    /// Two surfaces whose slopes are neither equal nor complementary.
    Counterexample { first: usize, second: usize, slopes: [Slope; 2] },
}

/// Checks that pairwise compatible surfaces have equal or complementary boundary slopes.
pub fn carrier_slopes_check(tri: &Triangulation, surfaces: &[NormalCoords], torus: &BoundaryTorus) -> Result<CarrierVerdict> {
    for i in 0..surfaces.len() {
        for j in (i + 1)..surfaces.len() {
            if !compatible(tri, &surfaces[i], &surfaces[j])? {
                return Err(Error::Incompatible(i, j));
            }
        }
    }
    let mut found: Vec<(usize, Slope)> = Vec::new();
    for (i, s) in surfaces.iter().enumerate() {
        if let Some(slope) = boundary_restriction(tri, s, torus)?.slope() {
            for &(j, other) in &found {
                if other != slope && other.complement() != slope {
                    return Ok(CarrierVerdict::Counterexample { first: j, second: i, slopes: [other, slope] });
                }
            }
            if !found.iter().any(|(_, s)| *s == slope) {
                found.push((i, slope));
            }
        }
    }
    Ok(CarrierVerdict::Consistent { slopes: found.into_iter().map(|(_, s)| s).collect() })
}

/// `max L(∂F) / (−χ(F))` over surfaces with negative Euler characteristic.
pub fn ale_constant(surfaces: &[SurfaceSummary]) -> Result<Option<BigRational>> {
    let mut best: Option<BigRational> = None;
    for s in surfaces {
        if s.euler >= 0 {
            return Err(Error::NonNegativeEuler(s.euler));
        }
        let r = BigRational::new(BigInt::from(s.boundary_length), BigInt::from(-s.euler));
        if best.as_ref().is_none_or(|b| &r > b) {
            best = Some(r);
        }
    }
    Ok(best)
}

/// The slopes whose normal length is at most `c`.
pub fn slopes_within(c: &BigRational) -> Vec<Slope> {
    let bound = c.floor().to_integer().to_u64().unwrap_or(0);
    slopes_up_to_length(bound)
}
