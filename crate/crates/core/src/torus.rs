//! Normal curves on the one-vertex triangulation of a torus.
//!
//! A curve is stored by its reduced coordinates `(x1, x2, x3)`: `x_k` counts the normal arcs
//! disjoint from edge `e_k` in each of the two triangles.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusCurve {
    pub x: [u64; 3],
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum CurveType {
    I,
    II,
    III,
}

impl TorusCurve {
    pub const EMPTY: TorusCurve = TorusCurve { x: [0, 0, 0] };

    pub fn new(x1: u64, x2: u64, x3: u64) -> Self {
        TorusCurve { x: [x1, x2, x3] }
    }

    /// The six arc counts over both triangles.
    pub fn full(&self) -> [u64; 6] {
        let [a, b, c] = self.x;
        [a, b, c, a, b, c]
    }

    pub fn is_empty(&self) -> bool {
        self.x == [0, 0, 0]
    }

    /// Number of vertex-linking components.
    pub fn trivial_count(&self) -> u64 {
        *self.x.iter().min().unwrap()
    }

    pub fn slope(&self) -> Option<Slope> {
        let tau = self.trivial_count();
        Slope::reduce(self.x.map(|v| v - tau))
    }

    /// The slope complementary to this curve's slope.
    pub fn complement(&self) -> Result<Slope> {
        let mu = *self.x.iter().max().unwrap();
        Slope::reduce(self.x.map(|v| mu - v)).ok_or(Error::NoSlope)
    }

    pub fn length(&self) -> u64 {
        2 * self.x.iter().sum::<u64>()
    }

    pub fn to_intersections(&self) -> IntersectionTriple {
        let [a, b, c] = self.x;
        IntersectionTriple { y: [b + c, a + c, a + b] }
    }

    pub fn from_intersections(y: IntersectionTriple) -> Result<Self> {
        let [a, b, c] = y.y;
        IntersectionTriple::new(a, b, c)?;
        Ok(TorusCurve::new((b + c - a) / 2, (a + c - b) / 2, (a + b - c) / 2))
    }

    pub fn curve_types(&self) -> Vec<CurveType> {
        let m = self.trivial_count();
        [CurveType::I, CurveType::II, CurveType::III]
            .into_iter()
            .zip(self.x)
            .filter(|&(_, v)| v == m)
            .map(|(t, _)| t)
            .collect()
    }

    pub fn has_type(&self, t: CurveType) -> bool {
        self.curve_types().contains(&t)
    }

    pub fn shares_type(&self, other: &TorusCurve) -> bool {
        self.curve_types().iter().any(|t| other.has_type(*t))
    }

    pub fn component_count(&self) -> u64 {
        let tau = self.trivial_count();
        let r = self.x.map(|v| v - tau);
        tau + r[0].gcd(&r[1]).gcd(&r[2])
    }

    /// Number of essential (non-vertex-linking) components.
    pub fn essential_count(&self) -> u64 {
        self.component_count() - self.trivial_count()
    }

    pub fn scaled(&self, k: u64) -> TorusCurve {
        TorusCurve { x: self.x.map(|v| v * k) }
    }
}

impl Add for TorusCurve {
    type Output = TorusCurve;

    fn add(self, rhs: TorusCurve) -> TorusCurve {
        TorusCurve { x: [self.x[0] + rhs.x[0], self.x[1] + rhs.x[1], self.x[2] + rhs.x[2]] }
    }
}

impl fmt::Display for TorusCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x[0], self.x[1], self.x[2])
    }
}

impl Serialize for TorusCurve {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.x.serialize(s)
    }
}

/// Numbers of intersections of a curve with the edges `e1, e2, e3`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntersectionTriple {
    pub y: [u64; 3],
}

impl IntersectionTriple {
    pub fn new(y1: u64, y2: u64, y3: u64) -> Result<Self> {
        if !(y1 + y2 + y3).is_multiple_of(2) {
            return Err(Error::IntersectionParity(y1, y2, y3));
        }
        if y1 > y2 + y3 || y2 > y1 + y3 || y3 > y1 + y2 {
            return Err(Error::IntersectionTriangle(y1, y2, y3));
        }
        Ok(IntersectionTriple { y: [y1, y2, y3] })
    }

    pub fn length(&self) -> u64 {
        self.y.iter().sum()
    }
}

impl fmt::Display for IntersectionTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.y[0], self.y[1], self.y[2])
    }
}

/// A slope in reduced form: minimum entry 0 and the other two entries coprime.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    coords: [u64; 3],
}

impl Slope {
    pub fn new(x1: u64, x2: u64, x3: u64) -> Result<Self> {
        let c = [x1, x2, x3];
        match Slope::reduce(c) {
            Some(s) if s.coords == c => Ok(s),
            _ => Err(Error::NotASlope(format!("({x1},{x2},{x3})"))),
        }
    }

    /// Canonical form of a curve with no trivial part: divide by the gcd of the entries.
    fn reduce(r: [u64; 3]) -> Option<Slope> {
        if r.iter().min() != Some(&0) {
            return None;
        }
        let g = r[0].gcd(&r[1]).gcd(&r[2]);
        if g == 0 {
            return None;
        }
        Some(Slope { coords: r.map(|v| v / g) })
    }

    pub fn coords(&self) -> [u64; 3] {
        self.coords
    }

    pub fn curve(&self) -> TorusCurve {
        TorusCurve { x: self.coords }
    }

    pub fn complement(&self) -> Slope {
        self.curve().complement().expect("a slope has a complement")
    }

    pub fn intersections(&self) -> IntersectionTriple {
        self.curve().to_intersections()
    }

    /// The slope of the edge `e_{k+1}`.
    pub fn edge(k: usize) -> Slope {
        let mut c = [0; 3];
        c[k] = 1;
        Slope { coords: c }
    }

    pub fn from_intersections(y: IntersectionTriple) -> Result<Slope> {
        let c = TorusCurve::from_intersections(y)?;
        if c.trivial_count() != 0 {
            return Err(Error::NotASlope(format!("{y} has trivial components")));
        }
        Slope::reduce(c.x)
            .filter(|s| s.coords == c.x)
            .ok_or_else(|| Error::NotASlope(format!("{y} is not connected")))
    }

    /// Slope `p/q`, the class with intersection triple `[|q|, |p+q|, |p|]`.
    pub fn from_pq(p: i64, q: i64) -> Result<Slope> {
        if p.gcd(&q) != 1 {
            return Err(Error::NotASlope(format!("{p}/{q} is not reduced")));
        }
        let y = IntersectionTriple::new(q.unsigned_abs(), (p + q).unsigned_abs(), p.unsigned_abs())?;
        Slope::from_intersections(y)
    }

    /// Inverse of [`Slope::from_pq`], normalized to `q ≥ 0` and `1/0` for the vertical slope.
    pub fn to_pq(&self) -> (i64, i64) {
        let [y1, y2, y3] = self.intersections().y;
        let (q, p) = (y1 as i64, y3 as i64);
        if q == 0 {
            return (1, 0);
        }
        if y2 == y1 + y3 {
            (p, q)
        } else {
            (-p, q)
        }
    }

    pub fn pq_string(&self) -> String {
        let (p, q) = self.to_pq();
        format!("{p}/{q}")
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.coords[0], self.coords[1], self.coords[2])
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.serialize(s)
    }
}

/// Accepts `x1,x2,x3` (a reduced triple) or `p/q`.
impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Slope> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if let Some((p, q)) = s.split_once('/') {
            let p: i64 = p.trim().parse().map_err(|_| Error::NotASlope(s.to_string()))?;
            let q: i64 = q.trim().parse().map_err(|_| Error::NotASlope(s.to_string()))?;
            return Slope::from_pq(p, q);
        }
        let parts: Vec<u64> = s
            .split(',')
            .map(|v| v.trim().parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::NotASlope(s.to_string()))?;
        match parts.as_slice() {
            [a, b, c] => Slope::new(*a, *b, *c),
            _ => Err(Error::NotASlope(s.to_string())),
        }
    }
}

/// `Δ(p/q, r/s) = |ps − qr|`.
pub fn distance(a: (i64, i64), b: (i64, i64)) -> u64 {
    (a.0 * b.1 - a.1 * b.0).unsigned_abs()
}

/// Slopes `r/s` with `|r|, s ≤ window` (and `s ≥ 0`) at distance one from `alpha`.
pub fn line_of(alpha: (i64, i64), window: u64) -> Result<Vec<(i64, i64)>> {
    if window == 0 {
        return Err(Error::EmptyWindow);
    }
    if alpha.0.gcd(&alpha.1) != 1 {
        return Err(Error::NotASlope(format!("{}/{}", alpha.0, alpha.1)));
    }
    let w = window as i64;
    let mut out = Vec::new();
    for s in 0..=w {
        for r in -w..=w {
            if r.gcd(&s) != 1 || (s == 0 && r != 1) {
                continue;
            }
            if distance(alpha, (r, s)) == 1 {
                out.push((r, s));
            }
        }
    }
    Ok(out)
}

/// All slopes whose normal length is at most `bound`.
pub fn slopes_up_to_length(bound: u64) -> Vec<Slope> {
    let half = bound / 2;
    let mut out = Vec::new();
    for a in 0..=half {
        for b in 0..=(half - a) {
            for c in 0..=(half - a - b) {
                if let Ok(s) = Slope::new(a, b, c) {
                    out.push(s);
                }
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn trivial_counts() {
        assert_eq!(TorusCurve::new(1, 1, 1).trivial_count(), 1);
        assert_eq!(TorusCurve::new(2, 0, 1).trivial_count(), 0);
        assert_eq!(TorusCurve::new(5, 3, 7).trivial_count(), 3);
    }

    #[test]
    fn slopes_and_complements() {
        let s = TorusCurve::new(2, 0, 1).slope().unwrap();
        assert_eq!(s.coords(), [2, 0, 1]);
        assert!(TorusCurve::new(1, 1, 1).slope().is_none());
        assert_eq!(TorusCurve::new(4, 0, 2).slope().unwrap().coords(), [2, 0, 1]);
        assert_eq!(TorusCurve::new(2, 0, 1).complement().unwrap().coords(), [0, 2, 1]);
        assert_eq!(TorusCurve::new(1, 0, 0).complement().unwrap().coords(), [0, 1, 1]);
        assert_eq!(TorusCurve::new(0, 2, 0).complement().unwrap().coords(), [1, 0, 1]);
        assert!(TorusCurve::new(2, 2, 2).complement().is_err());
    }

    #[test]
    fn lengths_and_intersections() {
        assert_eq!(TorusCurve::new(2, 0, 1).length(), 6);
        assert_eq!(TorusCurve::EMPTY.length(), 0);
        assert_eq!(TorusCurve::new(1, 1, 1).length(), 6);
        assert_eq!(TorusCurve::new(2, 0, 1).to_intersections().y, [1, 3, 2]);
        assert_eq!(TorusCurve::new(1, 1, 1).to_intersections().y, [2, 2, 2]);
        let y = IntersectionTriple::new(1, 3, 2).unwrap();
        assert_eq!(TorusCurve::from_intersections(y).unwrap().x, [2, 0, 1]);
        let y = IntersectionTriple::new(0, 1, 1).unwrap();
        assert_eq!(TorusCurve::from_intersections(y).unwrap().x, [1, 0, 0]);
        assert!(matches!(IntersectionTriple::new(1, 1, 1), Err(Error::IntersectionParity(..))));
        assert!(matches!(IntersectionTriple::new(4, 1, 1), Err(Error::IntersectionTriangle(..))));
    }

    #[test]
    fn types() {
        use CurveType::*;
        assert_eq!(TorusCurve::new(1, 1, 1).curve_types(), vec![I, II, III]);
        assert_eq!(TorusCurve::new(2, 0, 1).curve_types(), vec![II]);
        assert_eq!(TorusCurve::new(0, 1, 0).curve_types(), vec![I, III]);
    }

    #[test]
    fn components() {
        assert_eq!(TorusCurve::new(2, 0, 1).component_count(), 1);
        assert_eq!(TorusCurve::new(4, 0, 2).component_count(), 2);
        assert_eq!(TorusCurve::new(3, 3, 3).component_count(), 3);
        assert_eq!(TorusCurve::EMPTY.component_count(), 0);
    }

    #[test]
    fn pq_convention() {
        assert_eq!(Slope::from_pq(1, 0).unwrap(), Slope::edge(0));
        assert_eq!(Slope::from_pq(0, 1).unwrap(), Slope::edge(2));
        assert_eq!(Slope::from_pq(-1, 1).unwrap(), Slope::edge(1));
        assert_eq!(Slope::from_pq(-1, 0).unwrap(), Slope::edge(0));
        assert!(Slope::from_pq(2, 4).is_err());
        assert_eq!("3/7".parse::<Slope>().unwrap().to_pq(), (3, 7));
        assert_eq!("-3/7".parse::<Slope>().unwrap().to_pq(), (-3, 7));
        assert_eq!("3/-7".parse::<Slope>().unwrap().to_pq(), (-3, 7));
        assert_eq!("2,0,1".parse::<Slope>().unwrap().coords(), [2, 0, 1]);
        assert!("2,0,2".parse::<Slope>().is_err());
        assert!("1,1,1".parse::<Slope>().is_err());
    }

    #[test]
    fn distances_and_lines() {
        assert_eq!(distance((1, 0), (0, 1)), 1);
        assert_eq!(distance((2, 3), (2, 3)), 0);
        assert_eq!(distance((2, 3), (1, 2)), 1);
        let line = line_of((1, 0), 3).unwrap();
        assert!(line.iter().all(|&(_, s)| s == 1));
        assert_eq!(line.len(), 7);
        let line = line_of((0, 1), 3).unwrap();
        assert!(line.iter().all(|&(r, _)| r.abs() == 1));
        assert!(line_of((1, 0), 0).is_err());
    }

    #[test]
    fn short_slopes() {
        let s = slopes_up_to_length(6);
        // the three edges, their pairwise sums, and (2,0,1)-style triples
        assert!(s.iter().all(|s| s.curve().length() <= 6));
        assert!(s.contains(&Slope::new(2, 0, 1).unwrap()));
        assert_eq!(s.len(), 3 + 3 + 6);
    }

    /// Traces arcs on an explicit square model of the torus: the lower triangle has the bottom
    /// edge `e1`, the right edge `e3` and the diagonal `e2`; the upper one the top, left and diagonal.
    fn traced_components(x: [u64; 3]) -> u64 {
        let [x1, x2, x3] = x.map(|v| v as usize);
        // arcs: (triangle, type, index)
        let mut ids = std::collections::HashMap::new();
        let mut arcs = Vec::new();
        for tri in 0..2 {
            for (k, &n) in [x1, x2, x3].iter().enumerate() {
                for i in 0..n {
                    ids.insert((tri, k, i), arcs.len());
                    arcs.push((tri, k, i));
                }
            }
        }
        let mut parent: Vec<usize> = (0..arcs.len()).collect();
        fn find(p: &mut [usize], mut a: usize) -> usize {
            while p[a] != a {
                p[a] = p[p[a]];
                a = p[a];
            }
            a
        }
        // on each edge, the arc at each point index for each triangle
        let bottom = |i: usize| if i < x3 { (0, 2, i) } else { (0, 1, x2 - 1 - (i - x3)) };
        let top = |i: usize| if i < x2 { (1, 1, i) } else { (1, 2, x3 - 1 - (i - x2)) };
        let right = |i: usize| if i < x2 { (0, 1, i) } else { (0, 0, x1 - 1 - (i - x2)) };
        let left = |i: usize| if i < x1 { (1, 0, i) } else { (1, 1, x2 - 1 - (i - x1)) };
        let diag0 = |i: usize| if i < x3 { (0, 2, i) } else { (0, 0, x1 - 1 - (i - x3)) };
        let diag1 = |i: usize| if i < x1 { (1, 0, i) } else { (1, 2, x3 - 1 - (i - x1)) };
        let join = |a: (usize, usize, usize), b: (usize, usize, usize), parent: &mut Vec<usize>| {
            let (ra, rb) = (find(parent, ids[&a]), find(parent, ids[&b]));
            parent[ra] = rb;
        };
        for i in 0..(x2 + x3) {
            join(bottom(i), top(i), &mut parent);
        }
        for i in 0..(x1 + x2) {
            join(right(i), left(i), &mut parent);
        }
        for i in 0..(x1 + x3) {
            join(diag0(i), diag1(i), &mut parent);
        }
        let mut roots: Vec<usize> = (0..arcs.len()).map(|a| find(&mut parent, a)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len() as u64
    }

    #[test]
    fn component_count_matches_tracing() {
        for a in 0..=8 {
            for b in 0..=8 {
                for c in 0..=8 {
                    let curve = TorusCurve::new(a, b, c);
                    assert_eq!(curve.component_count(), traced_components([a, b, c]), "{curve}");
                }
            }
        }
    }

    fn arb_curve() -> impl Strategy<Value = TorusCurve> {
        (0u64..20, 0u64..20, 0u64..20).prop_map(|(a, b, c)| TorusCurve::new(a, b, c))
    }

    proptest! {
        #[test]
        fn additivity(a in arb_curve(), b in arb_curve()) {
            prop_assert_eq!((a + b).length(), a.length() + b.length());
            let (ya, yb, ys) = (a.to_intersections().y, b.to_intersections().y, (a + b).to_intersections().y);
            prop_assert_eq!(ys, [ya[0] + yb[0], ya[1] + yb[1], ya[2] + yb[2]]);
        }

        #[test]
        fn trivial_count_and_types(a in arb_curve(), b in arb_curve()) {
            let sum = (a + b).trivial_count();
            let parts = a.trivial_count() + b.trivial_count();
            if a.shares_type(&b) {
                prop_assert_eq!(sum, parts);
            } else {
                prop_assert!(sum > parts);
            }
        }

        #[test]
        fn complement_is_an_involution(a in arb_curve()) {
            if let Some(s) = a.slope() {
                prop_assert_eq!(s.complement().complement(), s);
                let both = s.curve() + s.complement().curve();
                prop_assert!(both.slope().is_none());
                prop_assert_eq!(a.complement().unwrap(), s.complement());
            }
        }

        #[test]
        fn slope_ignores_trivial_curves(a in arb_curve(), k in 0u64..5) {
            prop_assert_eq!((a + TorusCurve::new(k, k, k)).slope(), a.slope());
        }

        #[test]
        fn intersections_round_trip(a in arb_curve()) {
            prop_assert_eq!(TorusCurve::from_intersections(a.to_intersections()).unwrap(), a);
        }

        #[test]
        fn pq_round_trip(p in -30i64..30, q in -30i64..30) {
            prop_assume!(p.gcd(&q) == 1);
            let s = Slope::from_pq(p, q).unwrap();
            let (np, nq) = if q < 0 || (q == 0 && p < 0) { (-p, -q) } else { (p, q) };
            prop_assert_eq!(s.to_pq(), (np, nq));
        }

        #[test]
        fn line_membership_is_symmetric(p in -6i64..6, q in 0i64..6, r in -6i64..6, s in 0i64..6) {
            prop_assume!(p.gcd(&q) == 1 && r.gcd(&s) == 1);
            prop_assume!((q > 0 || p == 1) && (s > 0 || r == 1));
            let a_in_b = line_of((r, s), 6).unwrap().contains(&(p, q));
            let b_in_a = line_of((p, q), 6).unwrap().contains(&(r, s));
            prop_assert_eq!(a_in_b, b_in_a);
        }
    }
}
