//! Tube thickness and ropelength.
//!
//! The fast path decomposes thickness as
//! `min(minRad, dcsd / 2)`: the infimal polygonal radius of curvature
//! against half the infimal doubly critical self-distance. A brute-force
//! three-point circumradius scan over all vertex triples serves as the
//! independent oracle.

use crate::geom::{
    circumradius, segment_segment_closest, tangent_circle_radius, ArcPosition, PolyLink, Vec3,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ThicknessError {
    #[error("link has coincident vertices; thickness undefined")]
    CoincidentVertices,
    #[error("arc position invalid: {0}")]
    BadPosition(#[from] crate::geom::GeomError),
}

/// Which geometric feature realizes the thickness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Witness {
    /// Curvature governs: the vertex with the smallest inscribed radius.
    MinRadVertex { component: usize, vertex: usize },
    /// Contact governs: a chord perpendicular to the curve at both ends.
    DoublyCriticalChord { a: ArcPosition, b: ArcPosition },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThicknessReport {
    pub thickness: f64,
    pub ropelength: f64,
    pub witness: Witness,
    pub minrad_value: f64,
    pub dcsd_value: f64,
}

/// Polygonal infimal radius of curvature: at each vertex,
/// `min(adjacent edge lengths) / (2 tan(theta/2))` for exterior angle
/// `theta`. Straight vertices contribute infinity.
pub fn min_rad(link: &PolyLink) -> (f64, (usize, usize)) {
    let mut best = f64::INFINITY;
    let mut witness = (0usize, 0usize);
    for (ci, comp) in link.components().iter().enumerate() {
        let n = comp.len();
        for i in 0..n {
            let theta = comp.turning_angle(i);
            if theta <= 0.0 {
                continue;
            }
            let half = (theta * 0.5).tan();
            let e = comp.edge_length((i + n - 1) % n).min(comp.edge_length(i));
            let r = if half.is_infinite() { 0.0 } else { e / (2.0 * half) };
            if r < best {
                best = r;
                witness = (ci, i);
            }
        }
    }
    (best, witness)
}

#[derive(Debug, Clone, Copy)]
struct Seg {
    comp: u32,
    idx: u32,
    a: Vec3,
    b: Vec3,
}

impl Seg {
    fn adjacent(&self, other: &Seg, comp_sizes: &[usize]) -> bool {
        if self.comp != other.comp {
            return false;
        }
        let n = comp_sizes[self.comp as usize] as i64;
        let d = (self.idx as i64 - other.idx as i64).rem_euclid(n);
        d == 0 || d == 1 || d == n - 1
    }
}

fn collect_segments(link: &PolyLink) -> (Vec<Seg>, Vec<usize>) {
    let mut segs = Vec::with_capacity(link.total_vertices());
    let mut sizes = Vec::new();
    for (ci, comp) in link.components().iter().enumerate() {
        sizes.push(comp.len());
        for i in 0..comp.len() {
            let (a, b) = comp.edge(i);
            segs.push(Seg {
                comp: ci as u32,
                idx: i as u32,
                a,
                b,
            });
        }
    }
    (segs, sizes)
}

fn aabb_min_distance(s: &Seg, t: &Seg) -> f64 {
    let mut d2 = 0.0;
    for k in 0..3 {
        let (lo1, hi1) = (s.a[k].min(s.b[k]), s.a[k].max(s.b[k]));
        let (lo2, hi2) = (t.a[k].min(t.b[k]), t.a[k].max(t.b[k]));
        let gap = (lo2 - hi1).max(lo1 - hi2).max(0.0);
        d2 += gap * gap;
    }
    d2.sqrt()
}

/// Uniform spatial hash over segment bounding boxes. Candidate enumeration
/// is exact for pairs closer than the cell size.
struct SegmentGrid {
    cell: f64,
    map: HashMap<(i64, i64, i64), Vec<u32>>,
}

impl SegmentGrid {
    fn build(segs: &[Seg], cell: f64) -> Self {
        let mut map: HashMap<(i64, i64, i64), Vec<u32>> = HashMap::new();
        for (i, s) in segs.iter().enumerate() {
            let lo = s.a.inf(&s.b);
            let hi = s.a.sup(&s.b);
            let c0 = (
                (lo.x / cell).floor() as i64,
                (lo.y / cell).floor() as i64,
                (lo.z / cell).floor() as i64,
            );
            let c1 = (
                (hi.x / cell).floor() as i64,
                (hi.y / cell).floor() as i64,
                (hi.z / cell).floor() as i64,
            );
            for x in c0.0..=c1.0 {
                for y in c0.1..=c1.1 {
                    for z in c0.2..=c1.2 {
                        map.entry((x, y, z)).or_default().push(i as u32);
                    }
                }
            }
        }
        SegmentGrid { cell, map }
    }

    /// Visit each segment pair that could be closer than `cell` (plus some
    /// farther ones); pairs may repeat.
    fn for_near_pairs(&self, mut f: impl FnMut(u32, u32)) {
        let neighbors: Vec<(i64, i64, i64)> = (-1..=1)
            .flat_map(|x| (-1..=1).flat_map(move |y| (-1..=1).map(move |z| (x, y, z))))
            .collect();
        for (&key, ids) in &self.map {
            for (ai, &a) in ids.iter().enumerate() {
                // same cell
                for &b in &ids[ai + 1..] {
                    f(a.min(b), a.max(b));
                }
                // half of the neighbor cells, to visit each cell pair once
                for &(dx, dy, dz) in &neighbors {
                    if (dx, dy, dz) <= (0, 0, 0) {
                        continue;
                    }
                    if let Some(other) =
                        self.map.get(&(key.0 + dx, key.1 + dy, key.2 + dz))
                    {
                        for &b in other {
                            if a != b {
                                f(a.min(b), a.max(b));
                            }
                        }
                    }
                }
            }
        }
    }
}

struct ChordCandidate {
    dist: f64,
    seg_a: usize,
    seg_b: usize,
    s: f64,
    t: f64,
}

fn bbox_diag(segs: &[Seg]) -> f64 {
    let mut lo = Vec3::repeat(f64::INFINITY);
    let mut hi = Vec3::repeat(f64::NEG_INFINITY);
    for s in segs {
        lo = lo.inf(&s.a.inf(&s.b));
        hi = hi.sup(&s.a.sup(&s.b));
    }
    (hi - lo).norm().max(1e-12)
}

/// Visit non-adjacent segment pairs, skipping pairs provably farther than
/// the caller's current bound (`visit` returns the bound to prune with).
/// Exact: every pair closer than the returned bound is visited.
fn scan_pairs(segs: &[Seg], sizes: &[usize], mut visit: impl FnMut(&ChordCandidate) -> f64) {
    let n = segs.len();
    if n < 64 {
        let mut bound = f64::INFINITY;
        for i in 0..n {
            for j in (i + 1)..n {
                let (si, sj) = (&segs[i], &segs[j]);
                if si.adjacent(sj, sizes) {
                    continue;
                }
                if aabb_min_distance(si, sj) >= bound {
                    continue;
                }
                let (d, s, t) = segment_segment_closest(si.a, si.b, sj.a, sj.b);
                bound = visit(&ChordCandidate { dist: d, seg_a: i, seg_b: j, s, t });
            }
        }
        return;
    }
    // spatial hash; the cell doubles until the best answer is provably in
    // range (every pair closer than the cell size is enumerated)
    let diag = bbox_diag(segs);
    let max_edge = segs
        .iter()
        .map(|s| (s.b - s.a).norm())
        .fold(0.0f64, f64::max);
    let mut cell = (diag / (n as f64).cbrt()).max(2.0 * max_edge);
    loop {
        let grid = SegmentGrid::build(segs, cell);
        let mut bound = f64::INFINITY;
        grid.for_near_pairs(|a, b| {
            let (i, j) = (a as usize, b as usize);
            let (si, sj) = (&segs[i], &segs[j]);
            if si.adjacent(sj, sizes) {
                return;
            }
            if aabb_min_distance(si, sj) >= bound.min(cell) {
                return;
            }
            let (d, s, t) = segment_segment_closest(si.a, si.b, sj.a, sj.b);
            bound = visit(&ChordCandidate { dist: d, seg_a: i, seg_b: j, s, t });
        });
        if bound < cell || cell > diag {
            return;
        }
        cell *= 2.0;
    }
}

/// Result of the doubly-critical chord scan.
pub struct DcsdResult {
    pub distance: f64,
    pub witness: Option<(ArcPosition, ArcPosition)>,
}

fn arc_position(link: &PolyLink, seg: &Seg, t: f64) -> ArcPosition {
    let comp = link.component(seg.comp as usize);
    let arclength = comp.arclength_of_vertex(seg.idx as usize)
        + comp.edge_length(seg.idx as usize) * t;
    ArcPosition {
        component: seg.comp as usize,
        arclength: arclength.min(comp.length() * (1.0 - 1e-15)),
    }
}

/// |cos| of the chord against both segment directions (0 = perpendicular).
fn chord_cosines(segs: &[Seg], c: &ChordCandidate) -> (f64, f64) {
    let sa = &segs[c.seg_a];
    let sb = &segs[c.seg_b];
    let p = sa.a + (sa.b - sa.a) * c.s;
    let q = sb.a + (sb.b - sb.a) * c.t;
    let chord = q - p;
    let len = chord.norm();
    if len == 0.0 {
        return (0.0, 0.0);
    }
    let ca = chord.dot(&(sa.b - sa.a)).abs() / (len * (sa.b - sa.a).norm());
    let cb = chord.dot(&(sb.b - sb.a)).abs() / (len * (sb.b - sb.a).norm());
    (ca, cb)
}

fn dcsd_scan(
    segs: &[Seg],
    sizes: &[usize],
    cos_tol: f64,
) -> (f64, Option<(usize, usize, f64, f64)>) {
    let mut best = f64::INFINITY;
    let mut witness = None;
    scan_pairs(segs, sizes, |c| {
        if c.dist < best {
            let (ca, cb) = chord_cosines(segs, c);
            if ca <= cos_tol && cb <= cos_tol {
                best = c.dist;
                witness = Some((c.seg_a, c.seg_b, c.s, c.t));
            }
        }
        best
    });
    (best, witness)
}

/// Minimum doubly critical self-distance over candidate chords: local
/// minima of the segment-pair distance between non-adjacent segments that
/// meet both segments near-perpendicularly.
///
/// Chords whose closest points are interior to both segments lie along the
/// common perpendicular and always qualify. Endpoint chords qualify within
/// an adaptive angle window `delta = arcsin(edge / dcsd_estimate)` (capped
/// at 30 degrees), with the estimate taken from a first capped pass.
pub fn doubly_critical_self_distance(link: &PolyLink) -> DcsdResult {
    let (segs, sizes) = collect_segments(link);
    let max_edge = link.max_edge_length();

    const COS_CAP: f64 = 0.5;
    let (d1, w1) = dcsd_scan(&segs, &sizes, COS_CAP);
    if !d1.is_finite() {
        return DcsdResult { distance: f64::INFINITY, witness: None };
    }
    let tol = (max_edge / d1).min(COS_CAP);
    let (best, witness) = if tol < COS_CAP {
        let (d2, w2) = dcsd_scan(&segs, &sizes, tol);
        if d2.is_finite() { (d2, w2) } else { (d1, w1) }
    } else {
        (d1, w1)
    };

    let witness = witness.map(|(i, j, s, t)| {
        (
            arc_position(link, &segs[i], s),
            arc_position(link, &segs[j], t),
        )
    });
    DcsdResult { distance: best, witness }
}

/// Raw minimum distance between non-adjacent segments (no criticality
/// filter). Zero means the curve self-intersects.
pub fn min_nonadjacent_distance(link: &PolyLink) -> f64 {
    let (segs, sizes) = collect_segments(link);
    let mut best = f64::INFINITY;
    scan_pairs(&segs, &sizes, |c| {
        if c.dist < best {
            best = c.dist;
        }
        best
    });
    best
}

/// Minimum distance between points of different components.
pub fn inter_component_min_distance(link: &PolyLink) -> f64 {
    let mut best = f64::INFINITY;
    let comps = link.components();
    for i in 0..comps.len() {
        for j in (i + 1)..comps.len() {
            for a in 0..comps[i].len() {
                let (p0, p1) = comps[i].edge(a);
                for b in 0..comps[j].len() {
                    let (q0, q1) = comps[j].edge(b);
                    let (d, _, _) = segment_segment_closest(p0, p1, q0, q1);
                    if d < best {
                        best = d;
                    }
                }
            }
        }
    }
    best
}

/// Thickness with witness: `min(minRad, dcsd/2)`.
pub fn thickness(link: &PolyLink) -> ThicknessReport {
    let (mr, mr_witness) = min_rad(link);
    let dc = doubly_critical_self_distance(link);
    let half_dc = dc.distance * 0.5;
    let (tau, witness) = if mr <= half_dc {
        (
            mr,
            Witness::MinRadVertex {
                component: mr_witness.0,
                vertex: mr_witness.1,
            },
        )
    } else {
        let (a, b) = dc.witness.expect("finite dcsd has a witness");
        (half_dc, Witness::DoublyCriticalChord { a, b })
    };
    let len = link.length();
    ThicknessReport {
        thickness: tau,
        ropelength: if tau > 0.0 { len / tau } else { f64::INFINITY },
        witness,
        minrad_value: mr,
        dcsd_value: dc.distance,
    }
}

/// Brute-force thickness oracle: minimum circumradius over all triples of
/// distinct vertices. Intended for modest vertex counts.
pub fn thickness_bruteforce(link: &PolyLink) -> Result<f64, ThicknessError> {
    let pts: Vec<Vec3> = link
        .components()
        .iter()
        .flat_map(|c| c.vertices().iter().copied())
        .collect();
    let n = pts.len();
    let result = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut local = f64::INFINITY;
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    match circumradius(pts[i], pts[j], pts[k]) {
                        Ok(r) => {
                            if r < local {
                                local = r;
                            }
                        }
                        Err(_) => return Err(ThicknessError::CoincidentVertices),
                    }
                }
            }
            Ok(local)
        })
        .try_reduce(|| f64::INFINITY, |a, b| Ok(a.min(b)));
    result
}

/// Local thickness at a point of the link: infimum over distant samples
/// `y` of the radius of the circle through the point tangent to the curve
/// at `y`, combined with the polygonal radius of curvature near the point.
pub fn local_thickness(link: &PolyLink, at: &ArcPosition) -> Result<f64, ThicknessError> {
    let x = link.point_at(at)?;
    let comp = link.component(at.component);
    // which edge the point sits on
    let mut seg = 0usize;
    {
        let mut s = at.arclength;
        for i in 0..comp.len() {
            let l = comp.edge_length(i);
            if s <= l {
                seg = i;
                break;
            }
            s -= l;
        }
    }
    // tangent circles from vertices near the point are dominated by the
    // chord-sagitta error of the polygon; exclude a window around the point
    // and cover it with the polygonal radius of curvature instead
    let n = comp.len();
    let window = 24.min(n as i64 / 3).max(2);
    let near = |i: usize| -> bool {
        let d = (i as i64 - seg as i64).rem_euclid(n as i64);
        d <= window || d >= n as i64 - window
    };
    let mut best = f64::INFINITY;
    for (ci, c) in link.components().iter().enumerate() {
        for i in 0..c.len() {
            if ci == at.component && near(i) {
                continue;
            }
            let y = c.vertex(i);
            if (y - x).norm() < 1e-12 {
                continue;
            }
            if let Ok(r) = tangent_circle_radius(y, c.vertex_tangent(i), x) {
                best = best.min(r);
            }
        }
    }
    // curvature inside the excluded window
    for off in 0..=window as usize {
        for i in [(seg + off) % n, (seg + n - off) % n] {
            let theta = comp.turning_angle(i);
            if theta > 0.0 {
                let e = comp
                    .edge_length((i + n - 1) % n)
                    .min(comp.edge_length(i));
                best = best.min(e / (2.0 * (theta * 0.5).tan()));
            }
        }
    }
    Ok(best)
}
