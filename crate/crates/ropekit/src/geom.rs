//! Geometric foundation: points, closed polygonal curves, multi-component
//! links, resampling, and the circle-radius primitives everything else is
//! built on.
//!
//! Curves are closed polygons stored without a duplicated first/last vertex;
//! edge `i` runs from vertex `i` to vertex `(i + 1) % n`.

use nalgebra::Vector3;
use thiserror::Error;

/// 3-d point / vector in model units.
pub type Vec3 = Vector3<f64>;

/// Scale-invariant collinearity threshold: a triangle with area below
/// `COLLINEAR_AREA_EPS * max_side^2` is treated as flat.
pub const COLLINEAR_AREA_EPS: f64 = 1e-14;

#[derive(Debug, Error, PartialEq)]
pub enum GeomError {
    #[error("component needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("zero-length edge at vertex {0}")]
    ZeroLengthEdge(usize),
    #[error("non-finite coordinate at vertex {0}")]
    NonFinite(usize),
    #[error("link needs at least one component")]
    EmptyLink,
    #[error("coincident points")]
    CoincidentPoints,
    #[error("resample target {target} exceeds component length {length}")]
    ResampleTargetTooLong { target: f64, length: f64 },
    #[error("arclength parameter {param} out of range [0, {length})")]
    ArcPositionOutOfRange { param: f64, length: f64 },
    #[error("component index {0} out of range")]
    BadComponentIndex(usize),
}

/// One simple closed curve of a link, as a closed polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    vertices: Vec<Vec3>,
}

impl Component {
    /// Build a closed polygon. The last vertex connects back to the first;
    /// do not repeat the first vertex at the end.
    pub fn new(vertices: Vec<Vec3>) -> Result<Self, GeomError> {
        if vertices.len() < 3 {
            return Err(GeomError::TooFewVertices(vertices.len()));
        }
        for (i, v) in vertices.iter().enumerate() {
            if !(v.x.is_finite() && v.y.is_finite() && v.z.is_finite()) {
                return Err(GeomError::NonFinite(i));
            }
        }
        let n = vertices.len();
        for i in 0..n {
            if (vertices[(i + 1) % n] - vertices[i]).norm() == 0.0 {
                return Err(GeomError::ZeroLengthEdge(i));
            }
        }
        Ok(Component { vertices })
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertex(&self, i: usize) -> Vec3 {
        self.vertices[i % self.vertices.len()]
    }

    /// Edge `i` as (start, end).
    pub fn edge(&self, i: usize) -> (Vec3, Vec3) {
        let n = self.vertices.len();
        (self.vertices[i % n], self.vertices[(i + 1) % n])
    }

    pub fn edge_vector(&self, i: usize) -> Vec3 {
        let (a, b) = self.edge(i);
        b - a
    }

    pub fn edge_length(&self, i: usize) -> f64 {
        self.edge_vector(i).norm()
    }

    pub fn length(&self) -> f64 {
        (0..self.vertices.len()).map(|i| self.edge_length(i)).sum()
    }

    pub fn max_edge_length(&self) -> f64 {
        (0..self.vertices.len())
            .map(|i| self.edge_length(i))
            .fold(0.0, f64::max)
    }

    /// Unit tangent of edge `i`.
    pub fn edge_dir(&self, i: usize) -> Vec3 {
        let v = self.edge_vector(i);
        v / v.norm()
    }

    /// Unit tangent at vertex `i` (normalized bisector of adjacent edges);
    /// falls back to an edge direction at a reversal.
    pub fn vertex_tangent(&self, i: usize) -> Vec3 {
        let n = self.vertices.len();
        let prev = self.edge_dir((i + n - 1) % n);
        let next = self.edge_dir(i);
        let s = prev + next;
        let norm = s.norm();
        if norm < 1e-12 {
            next
        } else {
            s / norm
        }
    }

    /// Exterior turning angle at vertex `i`, in [0, pi].
    pub fn turning_angle(&self, i: usize) -> f64 {
        let n = self.vertices.len();
        let a = self.edge_dir((i + n - 1) % n);
        let b = self.edge_dir(i);
        angle_between_units(a, b)
    }

    /// Point at the given arclength from vertex 0. The parameter wraps.
    pub fn point_at(&self, arclength: f64) -> Vec3 {
        let total = self.length();
        let mut s = arclength.rem_euclid(total);
        for i in 0..self.vertices.len() {
            let l = self.edge_length(i);
            if s <= l {
                let (a, _) = self.edge(i);
                return a + self.edge_dir(i) * s;
            }
            s -= l;
        }
        self.vertices[0]
    }

    /// Arclength of vertex `i` measured from vertex 0.
    pub fn arclength_of_vertex(&self, i: usize) -> f64 {
        (0..i.min(self.vertices.len())).map(|j| self.edge_length(j)).sum()
    }

    /// Reverse orientation in place (vertex order flipped).
    pub fn reversed(&self) -> Component {
        let mut v = self.vertices.clone();
        v.reverse();
        Component { vertices: v }
    }

    pub fn translated(&self, t: Vec3) -> Component {
        Component {
            vertices: self.vertices.iter().map(|v| v + t).collect(),
        }
    }

    pub fn scaled(&self, s: f64) -> Component {
        Component {
            vertices: self.vertices.iter().map(|v| v * s).collect(),
        }
    }

    pub fn transformed(&self, f: impl Fn(Vec3) -> Vec3) -> Result<Component, GeomError> {
        Component::new(self.vertices.iter().map(|&v| f(v)).collect())
    }

    /// Arclength-uniform closed resampling with `count` vertices, inscribed
    /// in this polygon.
    pub fn resampled(&self, count: usize) -> Result<Component, GeomError> {
        let count = count.max(3);
        let total = self.length();
        let step = total / count as f64;
        let mut out = Vec::with_capacity(count);
        for k in 0..count {
            out.push(self.point_at(k as f64 * step));
        }
        Component::new(out)
    }
}

/// A link: one or more disjoint closed polygonal curves.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyLink {
    components: Vec<Component>,
}

impl PolyLink {
    pub fn new(components: Vec<Component>) -> Result<Self, GeomError> {
        if components.is_empty() {
            return Err(GeomError::EmptyLink);
        }
        Ok(PolyLink { components })
    }

    pub fn single(component: Component) -> Self {
        PolyLink {
            components: vec![component],
        }
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Component {
        &self.components[i]
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn total_vertices(&self) -> usize {
        self.components.iter().map(|c| c.len()).sum()
    }

    pub fn length(&self) -> f64 {
        self.components.iter().map(|c| c.length()).sum()
    }

    pub fn component_length(&self, i: usize) -> Result<f64, GeomError> {
        self.components
            .get(i)
            .map(|c| c.length())
            .ok_or(GeomError::BadComponentIndex(i))
    }

    pub fn max_edge_length(&self) -> f64 {
        self.components
            .iter()
            .map(|c| c.max_edge_length())
            .fold(0.0, f64::max)
    }

    pub fn scaled(&self, s: f64) -> PolyLink {
        PolyLink {
            components: self.components.iter().map(|c| c.scaled(s)).collect(),
        }
    }

    pub fn translated(&self, t: Vec3) -> PolyLink {
        PolyLink {
            components: self.components.iter().map(|c| c.translated(t)).collect(),
        }
    }

    pub fn transformed(&self, f: impl Fn(Vec3) -> Vec3) -> Result<PolyLink, GeomError> {
        let mut comps = Vec::with_capacity(self.components.len());
        for c in &self.components {
            comps.push(c.transformed(&f)?);
        }
        PolyLink::new(comps)
    }

    pub fn reversed_component(&self, i: usize) -> PolyLink {
        let mut comps = self.components.clone();
        comps[i] = comps[i].reversed();
        PolyLink { components: comps }
    }

    pub fn centroid(&self) -> Vec3 {
        let mut sum = Vec3::zeros();
        let mut count = 0usize;
        for c in &self.components {
            for v in c.vertices() {
                sum += v;
                count += 1;
            }
        }
        sum / count as f64
    }

    pub fn bounding_box(&self) -> (Vec3, Vec3) {
        let mut lo = Vec3::repeat(f64::INFINITY);
        let mut hi = Vec3::repeat(f64::NEG_INFINITY);
        for c in &self.components {
            for v in c.vertices() {
                for k in 0..3 {
                    lo[k] = lo[k].min(v[k]);
                    hi[k] = hi[k].max(v[k]);
                }
            }
        }
        (lo, hi)
    }

    pub fn point_at(&self, at: &ArcPosition) -> Result<Vec3, GeomError> {
        let c = self
            .components
            .get(at.component)
            .ok_or(GeomError::BadComponentIndex(at.component))?;
        let len = c.length();
        if at.arclength < 0.0 || at.arclength >= len {
            return Err(GeomError::ArcPositionOutOfRange {
                param: at.arclength,
                length: len,
            });
        }
        Ok(c.point_at(at.arclength))
    }

    /// Minimum distance from a point to the link.
    pub fn distance_to_point(&self, p: Vec3) -> f64 {
        let mut best = f64::INFINITY;
        for c in &self.components {
            for i in 0..c.len() {
                let (a, b) = c.edge(i);
                best = best.min(point_segment_distance(p, a, b));
            }
        }
        best
    }

    /// Resample every component to edges of roughly `target_edge_length`.
    pub fn resample(&self, target_edge_length: f64) -> Result<PolyLink, GeomError> {
        assert!(target_edge_length > 0.0, "target edge length must be positive");
        let mut comps = Vec::with_capacity(self.components.len());
        for c in &self.components {
            let len = c.length();
            if target_edge_length > len {
                return Err(GeomError::ResampleTargetTooLong {
                    target: target_edge_length,
                    length: len,
                });
            }
            let count = (len / target_edge_length).round().max(3.0) as usize;
            comps.push(c.resampled(count)?);
        }
        PolyLink::new(comps)
    }
}

/// Position on a link: component index plus arclength from vertex 0.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ArcPosition {
    pub component: usize,
    pub arclength: f64,
}

/// Radius of the unique circle through three distinct points;
/// `+inf` for collinear triples.
pub fn circumradius(x: Vec3, y: Vec3, z: Vec3) -> Result<f64, GeomError> {
    let ab = y - x;
    let ac = z - x;
    let bc = z - y;
    let la = ab.norm();
    let lb = ac.norm();
    let lc = bc.norm();
    if la == 0.0 || lb == 0.0 || lc == 0.0 {
        return Err(GeomError::CoincidentPoints);
    }
    let cross = ab.cross(&ac);
    let doubled_area = cross.norm();
    let max_side = la.max(lb).max(lc);
    if doubled_area < 2.0 * COLLINEAR_AREA_EPS * max_side * max_side {
        return Ok(f64::INFINITY);
    }
    Ok(la * lb * lc / (2.0 * doubled_area))
}

/// Radius of the circle through `y` tangent at `base` to the line with unit
/// direction `dir`; `+inf` if `y` lies on that line.
pub fn tangent_circle_radius(base: Vec3, dir: Vec3, y: Vec3) -> Result<f64, GeomError> {
    let w = y - base;
    let d2 = w.norm_squared();
    if d2 == 0.0 {
        return Err(GeomError::CoincidentPoints);
    }
    let h = w.cross(&dir).norm();
    if h < COLLINEAR_AREA_EPS * d2.sqrt() {
        return Ok(f64::INFINITY);
    }
    Ok(d2 / (2.0 * h))
}

/// Angle between two unit vectors, computed stably near 0 and pi.
pub fn angle_between_units(a: Vec3, b: Vec3) -> f64 {
    // asin form is accurate near 0; switch at right angles for accuracy near pi
    let d = (a - b).norm() * 0.5;
    if d <= std::f64::consts::FRAC_1_SQRT_2 {
        2.0 * d.clamp(0.0, 1.0).asin()
    } else {
        let s = (a + b).norm() * 0.5;
        std::f64::consts::PI - 2.0 * s.clamp(0.0, 1.0).asin()
    }
}

/// Distance from point `p` to segment `ab`.
pub fn point_segment_distance(p: Vec3, a: Vec3, b: Vec3) -> f64 {
    let ab = b - a;
    let t = ((p - a).dot(&ab) / ab.norm_squared()).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// Closest points of two segments `p0p1` and `q0q1`.
/// Returns (distance, s, t) with closest points `p0 + s*(p1-p0)` and
/// `q0 + t*(q1-q0)`, s and t in [0, 1].
pub fn segment_segment_closest(p0: Vec3, p1: Vec3, q0: Vec3, q1: Vec3) -> (f64, f64, f64) {
    // standard clamped quadratic minimization (Ericson, Real-Time Collision Detection)
    let d1 = p1 - p0;
    let d2 = q1 - q0;
    let r = p0 - q0;
    let a = d1.norm_squared();
    let e = d2.norm_squared();
    let f = d2.dot(&r);
    let (mut s, mut t);
    if a <= 1e-300 && e <= 1e-300 {
        return ((p0 - q0).norm(), 0.0, 0.0);
    }
    if a <= 1e-300 {
        s = 0.0;
        t = (f / e).clamp(0.0, 1.0);
    } else {
        let c = d1.dot(&r);
        if e <= 1e-300 {
            t = 0.0;
            s = (-c / a).clamp(0.0, 1.0);
        } else {
            let b = d1.dot(&d2);
            let denom = a * e - b * b;
            s = if denom != 0.0 {
                ((b * f - c * e) / denom).clamp(0.0, 1.0)
            } else {
                0.0
            };
            t = (b * s + f) / e;
            if t < 0.0 {
                t = 0.0;
                s = (-c / a).clamp(0.0, 1.0);
            } else if t > 1.0 {
                t = 1.0;
                s = ((b - c) / a).clamp(0.0, 1.0);
            }
        }
    }
    let cp = p0 + d1 * s;
    let cq = q0 + d2 * t;
    ((cp - cq).norm(), s, t)
}
