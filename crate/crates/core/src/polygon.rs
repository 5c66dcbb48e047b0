//! Newton polygons, their primitive inner edge normals and the intersection
//! of two tropicalizations.
//!
//! Everything here is exact integer arithmetic. Orientation tests are done in
//! 128 bits, which cannot overflow for 64-bit exponents.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polynomial::{Direction, ExponentVector, SparsePoly};

/// A primitive integer direction: `gcd(|u|, |v|) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "(i64, i64)", into = "(i64, i64)")]
pub struct Tropism {
    u: i64,
    v: i64,
}

impl Tropism {
    /// Accepts only primitive nonzero vectors.
    pub fn new(u: i64, v: i64) -> Result<Self> {
        if u == 0 && v == 0 {
            return Err(Error::ZeroDirection);
        }
        let g = gcd(u, v);
        if g != 1 {
            return Err(Error::NotPrimitive { u, v, gcd: g });
        }
        Ok(Self { u, v })
    }

    /// Divides out the gcd of a nonzero vector.
    pub fn primitive(u: i64, v: i64) -> Result<Self> {
        if u == 0 && v == 0 {
            return Err(Error::ZeroDirection);
        }
        let g = gcd(u, v);
        Ok(Self { u: u / g, v: v / g })
    }

    pub fn u(self) -> i64 {
        self.u
    }

    pub fn v(self) -> i64 {
        self.v
    }

    pub fn direction(self) -> Direction {
        Direction::new(self.u, self.v).expect("tropisms are nonzero")
    }

    /// Counterclockwise angle order starting at the positive `u` axis.
    pub fn angle_cmp(&self, other: &Self) -> Ordering {
        let half = |t: &Self| u8::from(!(t.v > 0 || (t.v == 0 && t.u > 0)));
        half(self).cmp(&half(other)).then_with(|| {
            let cross = self.u as i128 * other.v as i128 - self.v as i128 * other.u as i128;
            0.cmp(&cross)
        })
    }
}

impl PartialOrd for Tropism {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Tropism {
    fn cmp(&self, other: &Self) -> Ordering {
        self.angle_cmp(other)
    }
}

impl From<Tropism> for Direction {
    fn from(t: Tropism) -> Self {
        t.direction()
    }
}

impl TryFrom<(i64, i64)> for Tropism {
    type Error = Error;

    fn try_from((u, v): (i64, i64)) -> Result<Self> {
        Self::new(u, v)
    }
}

impl From<Tropism> for (i64, i64) {
    fn from(t: Tropism) -> Self {
        (t.u, t.v)
    }
}

impl std::fmt::Display for Tropism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    i64::try_from(a).expect("gcd fits in i64")
}

/// Twice the signed area of `(a, b, c)`; positive for a left turn.
pub fn orientation(a: ExponentVector, b: ExponentVector, c: ExponentVector) -> i128 {
    let (abx, aby) = (b.i as i128 - a.i as i128, b.j as i128 - a.j as i128);
    let (acx, acy) = (c.i as i128 - a.i as i128, c.j as i128 - a.j as i128);
    abx * acy - aby * acx
}

/// Convex hull of a support. Vertices are listed counterclockwise starting
/// from the lexicographically smallest point; segments and points are kept
/// as degenerate polygons with two or one vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPolygon {
    vertices: Vec<ExponentVector>,
}

impl NewtonPolygon {
    pub fn of(p: &SparsePoly) -> Self {
        convex_hull(p.support())
    }

    pub fn vertices(&self) -> &[ExponentVector] {
        &self.vertices
    }

    /// Directed edges `(from, to)` in counterclockwise order. A segment has
    /// two opposite edges, a point none.
    pub fn edges(&self) -> impl Iterator<Item = (ExponentVector, ExponentVector)> + '_ {
        let n = self.vertices.len();
        let count = if n < 2 { 0 } else { n };
        (0..count).map(move |k| (self.vertices[k], self.vertices[(k + 1) % n]))
    }

    pub fn is_point(&self) -> bool {
        self.vertices.len() == 1
    }

    /// True when `e` lies inside or on the boundary.
    pub fn contains(&self, e: ExponentVector) -> bool {
        match self.vertices.as_slice() {
            [p] => *p == e,
            [a, b] => {
                orientation(*a, *b, e) == 0
                    && e.i >= a.i.min(b.i)
                    && e.i <= a.i.max(b.i)
                    && e.j >= a.j.min(b.j)
                    && e.j <= a.j.max(b.j)
            }
            _ => self.edges().all(|(a, b)| orientation(a, b, e) >= 0),
        }
    }
}

/// Monotone chain hull, `O(n log n)`.
pub fn convex_hull(support: &[ExponentVector]) -> NewtonPolygon {
    let mut pts = support.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() <= 1 {
        return NewtonPolygon { vertices: pts };
    }
    let mut lower: Vec<ExponentVector> = Vec::with_capacity(pts.len());
    for &p in &pts {
        while lower.len() >= 2 && orientation(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<ExponentVector> = Vec::with_capacity(pts.len());
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && orientation(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    // All points collinear: the chains meet in the two endpoints only.
    lower.dedup();
    if lower.len() == 2 && lower[0] == lower[1] {
        lower.pop();
    }
    NewtonPolygon { vertices: lower }
}

/// The primitive inner normals of the edges of a Newton polygon, sorted by
/// angle.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tropicalization {
    normals: Vec<Tropism>,
}

impl Tropicalization {
    pub fn of(p: &SparsePoly) -> Self {
        inner_normals(&NewtonPolygon::of(p))
    }

    pub fn normals(&self) -> &[Tropism] {
        &self.normals
    }

    pub fn contains(&self, t: Tropism) -> bool {
        self.normals.binary_search(&t).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }
}

pub fn inner_normals(polygon: &NewtonPolygon) -> Tropicalization {
    let mut normals: Vec<Tropism> = polygon
        .edges()
        .map(|(a, b)| {
            let (dx, dy) = (b.i - a.i, b.j - a.j);
            // counterclockwise boundary: the interior lies to the left
            Tropism::primitive(-dy, dx).expect("hull edges have distinct endpoints")
        })
        .collect();
    normals.sort();
    normals.dedup();
    Tropicalization { normals }
}

/// Sorted merge keeping the normals present in both lists.
pub fn tropism_intersection(tf: &Tropicalization, tg: &Tropicalization) -> Vec<Tropism> {
    let (a, b) = (tf.normals(), tg.normals());
    let (mut x, mut y) = (0, 0);
    let mut out = Vec::new();
    while x < a.len() && y < b.len() {
        match a[x].cmp(&b[y]) {
            Ordering::Less => x += 1,
            Ordering::Greater => y += 1,
            Ordering::Equal => {
                out.push(a[x]);
                x += 1;
                y += 1;
            }
        }
    }
    out
}

/// Number of roots in the torus of the univariate initial form of `p` along
/// `t`; zero when `t` picks out a vertex.
pub fn tentacle_degree(p: &SparsePoly, t: Tropism) -> usize {
    if !Tropicalization::of(p).contains(t) {
        return 0;
    }
    crate::initial_system::univariatize(p, t)
        .map(|form| form.degree())
        .unwrap_or(0)
}
