//! Cones over space curves: cone angle, constructive search for flat
//! (angle exactly 2-pi) cone points outside the thick tube, best-effort
//! search for the maximum cone angle, isometric development into the
//! plane, unfolding, and the inward-parallel length identity.

use crate::geom::{angle_between_units, point_segment_distance, Component, PolyLink, Vec3};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConeError {
    #[error("apex lies on the curve (distance {0:.3e})")]
    ApexOnCurve(f64),
    #[error("flat cone point search failed after {retries} ray retries")]
    SearchFailed { retries: usize },
    #[error("pushoff distance {t} is not below the developed radius of curvature {minrad}")]
    PushoffTooWide { t: f64, minrad: f64 },
    #[error("inward parallel self-intersects")]
    PushoffSelfIntersects,
    #[error("parallel length deficit {got:.6} disagrees with t * cone angle = {expected:.6}")]
    DeficitMismatch { got: f64, expected: f64 },
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ConeReport {
    pub apex: [f64; 3],
    pub cone_angle: f64,
    pub apex_to_curve_distance: f64,
    pub outside_thick_tube: bool,
}

impl ConeReport {
    fn new(k: &Component, apex: Vec3, angle: f64, tau: f64) -> Self {
        let d = distance_to_component(k, apex);
        ConeReport {
            apex: [apex.x, apex.y, apex.z],
            cone_angle: angle,
            apex_to_curve_distance: d,
            outside_thick_tube: d >= tau - 1e-6,
        }
    }
}

pub fn distance_to_component(k: &Component, p: Vec3) -> f64 {
    (0..k.len())
        .map(|i| {
            let (a, b) = k.edge(i);
            point_segment_distance(p, a, b)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Cone angle at `apex`: length of the radial projection of the curve onto
/// the unit sphere around the apex.
pub fn cone_angle(k: &Component, apex: Vec3) -> Result<f64, ConeError> {
    let d = distance_to_component(k, apex);
    if d < 1e-9 {
        return Err(ConeError::ApexOnCurve(d));
    }
    let n = k.len();
    let mut sum = 0.0;
    let first = (k.vertex(0) - apex).normalize();
    let mut prev = first;
    for i in 1..=n {
        let next = if i == n {
            first
        } else {
            (k.vertex(i) - apex).normalize()
        };
        sum += angle_between_units(prev, next);
        prev = next;
    }
    Ok(sum)
}

/// Longest chord between vertices; always doubly critical, used to seed the
/// flat-cone-point search.
pub fn longest_chord(k: &Component) -> (usize, usize, f64) {
    let n = k.len();
    let mut best = (0usize, 0usize, 0.0f64);
    for i in 0..n {
        for j in (i + 1)..n {
            let d = (k.vertex(i) - k.vertex(j)).norm();
            if d > best.2 {
                best = (i, j, d);
            }
        }
    }
    best
}

const FLAT_TOL: f64 = 1e-6;

/// Find an apex with cone angle exactly 2-pi (within 1e-6) at distance at
/// least `tau` from the curve.
///
/// Seeds on the longest chord at distance `tau` from one endpoint (the
/// angle is at least 2-pi anywhere strictly inside a chord), then bisects
/// along a tube-avoiding escape ray toward infinity, where the angle tends
/// to zero.
pub fn find_flat_cone_point(k: &Component, tau: f64) -> Result<ConeReport, ConeError> {
    let (i, j, chord_len) = longest_chord(k);
    let x = k.vertex(i);
    let y = k.vertex(j);
    let dir = (y - x) / chord_len;
    let seed = x + dir * tau.min(chord_len * 0.5);
    let dist_ok = |p: Vec3| distance_to_component(k, p) >= tau * (1.0 - 1e-9) - 1e-12;

    let f_seed = cone_angle(k, seed)? - 2.0 * PI;
    if f_seed.abs() <= FLAT_TOL && dist_ok(seed) {
        return Ok(ConeReport::new(k, seed, f_seed + 2.0 * PI, tau));
    }

    let centroid = k.vertices().iter().sum::<Vec3>() / k.len() as f64;
    let far_vertex = k
        .vertices()
        .iter()
        .copied()
        .max_by(|a, b| (a - seed).norm().partial_cmp(&(b - seed).norm()).unwrap())
        .unwrap();
    let mut ray = seed - centroid;
    if ray.norm() < 1e-12 {
        ray = dir;
    }
    let mut ray = ray.normalize();
    let scale = {
        let (lo, hi) = PolyLink::single(k.clone()).bounding_box();
        (hi - lo).norm().max(tau)
    };

    let retries_max = 32;
    for retry in 0..retries_max {
        // walk outward to a point with angle < 2*pi, keeping tube clearance
        let mut outer = None;
        let mut clear = true;
        for jstep in 0..48 {
            let p = seed + ray * (scale * (1.5f64).powi(jstep));
            if !dist_ok(p) {
                clear = false;
                break;
            }
            if cone_angle(k, p)? - 2.0 * PI < -FLAT_TOL {
                outer = Some(p);
                break;
            }
        }
        if clear {
            if let Some(hi_pt) = outer {
                let mut lo = seed;
                let mut hi = hi_pt;
                let mut violated = false;
                for _ in 0..200 {
                    let mid = (lo + hi) * 0.5;
                    if !dist_ok(mid) {
                        violated = true;
                        break;
                    }
                    let f = cone_angle(k, mid)? - 2.0 * PI;
                    if f.abs() <= FLAT_TOL {
                        return Ok(ConeReport::new(k, mid, f + 2.0 * PI, tau));
                    }
                    if f > 0.0 {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                if !violated {
                    let mid = (lo + hi) * 0.5;
                    let angle = cone_angle(k, mid)?;
                    if (angle - 2.0 * PI).abs() <= FLAT_TOL && dist_ok(mid) {
                        return Ok(ConeReport::new(k, mid, angle, tau));
                    }
                }
            }
        }
        // rotate the ray toward the farthest-point direction and retry
        let target = (far_vertex - seed).normalize();
        let w = (retry + 1) as f64 / retries_max as f64;
        let blended = ray * (1.0 - w) + target * w + Vec3::new(0.013, -0.007, 0.011) * w;
        ray = if blended.norm() < 1e-12 {
            target
        } else {
            blended.normalize()
        };
    }
    Err(ConeError::SearchFailed {
        retries: retries_max,
    })
}

/// Best-effort search for the maximum cone angle over apexes outside the
/// open thick tube: coarse grid plus least-variance-axis seeds, refined by
/// pattern search. The result is a certified lower bound for the maximum.
pub fn max_cone_angle_search(
    k: &Component,
    tau: f64,
    budget: usize,
) -> Result<ConeReport, ConeError> {
    let link = PolyLink::single(k.clone());
    let (lo, hi) = link.bounding_box();
    let center = (lo + hi) * 0.5;
    let half = (hi - lo) * 0.625; // 1.25x expansion
    let diag = (hi - lo).norm().max(1e-9);
    let spacing = diag / 32.0;
    let dist_ok = |p: Vec3| distance_to_component(k, p) >= tau * (1.0 - 1e-9) - 1e-12;
    let mut evals = 0usize;
    let mut eval = |p: Vec3, evals: &mut usize| -> Option<(f64, Vec3)> {
        if !dist_ok(p) {
            return None;
        }
        *evals += 1;
        cone_angle(k, p).ok().map(|a| (a, p))
    };

    let mut candidates: Vec<(f64, Vec3)> = Vec::new();
    let steps = |lo: f64, hi: f64| -> Vec<f64> {
        let n = (((hi - lo) / spacing).ceil() as usize).max(1);
        (0..=n)
            .map(|i| lo + (hi - lo) * i as f64 / n as f64)
            .collect()
    };
    for x in steps(center.x - half.x, center.x + half.x) {
        for y in steps(center.y - half.y, center.y + half.y) {
            for z in steps(center.z - half.z, center.z + half.z) {
                if let Some(c) = eval(Vec3::new(x, y, z), &mut evals) {
                    candidates.push(c);
                }
            }
        }
    }
    // extra seeds along the least-variance axis, where symmetric inputs
    // hide their maximum
    {
        let centroid = k.vertices().iter().sum::<Vec3>() / k.len() as f64;
        let mut cov = nalgebra::Matrix3::<f64>::zeros();
        for v in k.vertices() {
            let d = v - centroid;
            cov += d * d.transpose();
        }
        let eig = nalgebra::SymmetricEigen::new(cov);
        let axis_idx = eig
            .eigenvalues
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .map(|(i, _)| i)
            .unwrap_or(2);
        let axis: Vec3 = eig.eigenvectors.column(axis_idx).into();
        for i in 0..256 {
            let t = (i as f64 / 255.0 - 0.5) * 3.0 * diag;
            if let Some(c) = eval(centroid + axis * t, &mut evals) {
                candidates.push(c);
            }
        }
    }
    candidates.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    candidates.truncate(12);
    if candidates.is_empty() {
        return Err(ConeError::SearchFailed { retries: 0 });
    }

    let mut best = candidates[0];
    for &(start_angle, start) in &candidates {
        let mut here = (start_angle, start);
        let mut step = spacing;
        while step > 1e-9 * diag && evals < budget {
            let mut improved = false;
            for d in [
                Vec3::new(1.0, 0.0, 0.0),
                Vec3::new(-1.0, 0.0, 0.0),
                Vec3::new(0.0, 1.0, 0.0),
                Vec3::new(0.0, -1.0, 0.0),
                Vec3::new(0.0, 0.0, 1.0),
                Vec3::new(0.0, 0.0, -1.0),
            ] {
                if let Some(c) = eval(here.1 + d * step, &mut evals) {
                    if c.0 > here.0 {
                        here = c;
                        improved = true;
                    }
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
        if here.0 > best.0 {
            best = here;
        }
    }
    Ok(ConeReport::new(k, best.1, best.0, tau))
}

/// A curve developed isometrically into the plane by cutting its cone
/// along the starting segment.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DevelopedCurve {
    /// n + 1 points: the last is the re-image of the first, rotated by the
    /// total apex angle. The development closes iff that angle is 2-pi.
    pub plane_vertices: Vec<[f64; 2]>,
    pub source_component: usize,
    pub apex_angle_total: f64,
}

impl DevelopedCurve {
    pub fn closes(&self) -> bool {
        (self.apex_angle_total - 2.0 * PI).abs() <= 1e-6
    }

    pub fn length(&self) -> f64 {
        self.plane_vertices
            .windows(2)
            .map(|w| ((w[1][0] - w[0][0]).powi(2) + (w[1][1] - w[0][1]).powi(2)).sqrt())
            .sum()
    }

    /// Point at the given arclength along the developed polyline; the
    /// development is an isometry, so this matches the source
    /// parametrization.
    pub fn point_at(&self, arclength: f64) -> [f64; 2] {
        let mut s = arclength.rem_euclid(self.length().max(1e-300));
        for w in self.plane_vertices.windows(2) {
            let dx = w[1][0] - w[0][0];
            let dy = w[1][1] - w[0][1];
            let l = (dx * dx + dy * dy).sqrt();
            if s <= l {
                let t = if l > 0.0 { s / l } else { 0.0 };
                return [w[0][0] + dx * t, w[0][1] + dy * t];
            }
            s -= l;
        }
        *self.plane_vertices.last().unwrap()
    }

    /// Signed total turning of the developed closed curve (meaningful when
    /// the development closes).
    pub fn total_turning(&self) -> f64 {
        let n = self.plane_vertices.len() - 1;
        let dir = |i: usize| -> [f64; 2] {
            let a = self.plane_vertices[i % n];
            let b = self.plane_vertices[(i + 1) % n];
            let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
            let l = (dx * dx + dy * dy).sqrt();
            [dx / l, dy / l]
        };
        let mut total = 0.0;
        for i in 0..n {
            let a = dir((i + n - 1) % n);
            let b = dir(i);
            total += (a[0] * b[1] - a[1] * b[0]).atan2(a[0] * b[0] + a[1] * b[1]);
        }
        total
    }
}

/// Develop the cone over `k` from `apex` into the plane: vertex `i` goes to
/// polar coordinates (distance to apex, accumulated apex angle).
pub fn develop(k: &Component, apex: Vec3) -> Result<DevelopedCurve, ConeError> {
    let d = distance_to_component(k, apex);
    if d < 1e-9 {
        return Err(ConeError::ApexOnCurve(d));
    }
    let n = k.len();
    let mut pts = Vec::with_capacity(n + 1);
    let mut phi = 0.0f64;
    let mut prev_u = (k.vertex(0) - apex).normalize();
    pts.push([(k.vertex(0) - apex).norm(), 0.0]);
    for i in 1..=n {
        let v = k.vertex(i % n);
        let u = (v - apex).normalize();
        phi += angle_between_units(prev_u, u);
        let r = (v - apex).norm();
        pts.push([r * phi.cos(), r * phi.sin()]);
        prev_u = u;
    }
    Ok(DevelopedCurve {
        plane_vertices: pts,
        source_component: 0,
        apex_angle_total: phi,
    })
}

/// Unfold a closed space curve into the plane: find a flat cone point and
/// develop. The result has the same arclength parametrization and never
/// shortens a chord.
pub fn unfold(k: &Component) -> Result<(DevelopedCurve, ConeReport), ConeError> {
    let tau = crate::thickness::thickness(&PolyLink::single(k.clone())).thickness;
    let report = find_flat_cone_point(k, tau)?;
    let apex = Vec3::new(report.apex[0], report.apex[1], report.apex[2]);
    let dev = develop(k, apex)?;
    Ok((dev, report))
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PushoffCheck {
    pub curve_length: f64,
    pub parallel_length: f64,
    pub deficit: f64,
    pub cone_angle: f64,
    pub offset: f64,
}

fn rot2(p: [f64; 2], a: f64) -> [f64; 2] {
    let (s, c) = a.sin_cos();
    [c * p[0] - s * p[1], s * p[0] + c * p[1]]
}

/// Length of the inward parallel at distance `t` on the cone over `k` from
/// `apex`, computed in the developed plane. Verifies the first-variation
/// identity `Len(K) - Len(K_t) = t * cone_angle` to 1e-3 relative.
pub fn parallel_pushoff_length_check(
    k: &Component,
    apex: Vec3,
    t: f64,
) -> Result<PushoffCheck, ConeError> {
    let dev = develop(k, apex)?;
    let theta = dev.apex_angle_total;
    let n = dev.plane_vertices.len() - 1;
    let w = &dev.plane_vertices;

    // cyclic neighbors across the cut: the predecessor of vertex 0 is the
    // last interior vertex rotated back by the total angle
    let prev_of = |i: usize| -> [f64; 2] {
        if i == 0 {
            rot2(w[n - 1], -theta)
        } else {
            w[i - 1]
        }
    };
    let next_of = |i: usize| -> [f64; 2] {
        if i == n {
            rot2(w[1], theta)
        } else {
            w[i + 1]
        }
    };

    let mut offset = Vec::with_capacity(n + 1);
    let mut minrad = f64::INFINITY;
    for i in 0..=n {
        let p = prev_of(i);
        let q = w[i];
        let r = next_of(i);
        let din = [q[0] - p[0], q[1] - p[1]];
        let dout = [r[0] - q[0], r[1] - q[1]];
        let lin = (din[0] * din[0] + din[1] * din[1]).sqrt();
        let lout = (dout[0] * dout[0] + dout[1] * dout[1]).sqrt();
        let uin = [din[0] / lin, din[1] / lin];
        let uout = [dout[0] / lout, dout[1] / lout];
        // left normals; the development winds ccw about the apex, so left
        // points inward
        let nin = [-uin[1], uin[0]];
        let nout = [-uout[1], uout[0]];
        let mut m = [nin[0] + nout[0], nin[1] + nout[1]];
        let ml = (m[0] * m[0] + m[1] * m[1]).sqrt();
        if ml < 1e-12 {
            m = nin;
        } else {
            m = [m[0] / ml, m[1] / ml];
        }
        let cos_half = ((1.0 + (uin[0] * uout[0] + uin[1] * uout[1])) / 2.0)
            .max(1e-12)
            .sqrt();
        offset.push([q[0] + t * m[0] / cos_half, q[1] + t * m[1] / cos_half]);
        let turn = (uin[0] * uout[1] - uin[1] * uout[0])
            .atan2(uin[0] * uout[0] + uin[1] * uout[1])
            .abs();
        if turn > 1e-12 {
            minrad = minrad.min(lin.min(lout) / (2.0 * (turn / 2.0).tan()));
        }
    }
    if t >= minrad {
        return Err(ConeError::PushoffTooWide { t, minrad });
    }

    let seglen = |a: [f64; 2], b: [f64; 2]| ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt();
    let parallel_length: f64 = (0..n).map(|i| seglen(offset[i], offset[i + 1])).sum();

    // self-intersection scan over non-adjacent offset edges
    for i in 0..n {
        for j in (i + 2)..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (a, b) = (offset[i], offset[i + 1]);
            let (c, d) = (offset[j], offset[j + 1]);
            let dax = b[0] - a[0];
            let day = b[1] - a[1];
            let dbx = d[0] - c[0];
            let dby = d[1] - c[1];
            let det = dax * dby - day * dbx;
            if det.abs() < 1e-300 {
                continue;
            }
            let rx = c[0] - a[0];
            let ry = c[1] - a[1];
            let s = (rx * dby - ry * dbx) / det;
            let u = (day * rx - dax * ry) / det;
            if (0.0..=1.0).contains(&s) && (0.0..=1.0).contains(&u) {
                return Err(ConeError::PushoffSelfIntersects);
            }
        }
    }

    let curve_length = dev.length();
    let deficit = curve_length - parallel_length;
    let expected = t * theta;
    if (deficit - expected).abs() > (1e-3 * expected).max(1e-9) {
        return Err(ConeError::DeficitMismatch {
            got: deficit,
            expected,
        });
    }
    Ok(PushoffCheck {
        curve_length,
        parallel_length,
        deficit,
        cone_angle: theta,
        offset: t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cone_angle_circle_center() {
        let c = generators::circle(512, 1.0);
        let a = cone_angle(c.component(0), Vec3::zeros()).unwrap();
        assert_relative_eq!(a, 2.0 * PI, epsilon = 1e-12);
    }

    #[test]
    fn cone_angle_circle_axis() {
        // apex on the axis at height h: angle = 2*pi / sqrt(1 + h^2)
        let c = generators::circle(2048, 1.0);
        let h = 3f64.sqrt();
        let a = cone_angle(c.component(0), Vec3::new(0.0, 0.0, h)).unwrap();
        assert_relative_eq!(a, PI, max_relative = 1e-5);
    }

    #[test]
    fn cone_angle_far_apex_vanishes() {
        let c = generators::circle(256, 1.0);
        let a = cone_angle(c.component(0), Vec3::new(2e6, 0.0, 0.0)).unwrap();
        assert!(a < 1e-4);
    }

    #[test]
    fn cone_angle_apex_on_curve_errors() {
        let c = generators::circle(256, 1.0);
        assert!(matches!(
            cone_angle(c.component(0), Vec3::new(1.0, 0.0, 0.0)),
            Err(ConeError::ApexOnCurve(_))
        ));
    }

    #[test]
    fn cone_angle_rigid_and_scale_invariant() {
        let t = generators::trefoil_symmetric(128);
        let apex = Vec3::new(0.3, -0.2, 2.5);
        let base = cone_angle(t.component(0), apex).unwrap();
        for s in [0.5, 3.0] {
            let scaled = t.transformed(|p| apex + (p - apex) * s).unwrap();
            let a = cone_angle(scaled.component(0), apex).unwrap();
            assert_relative_eq!(a, base, epsilon = 1e-12);
        }
        let rot = nalgebra::Rotation3::from_axis_angle(
            &nalgebra::Unit::new_normalize(Vec3::new(1.0, 2.0, -0.5)),
            1.1,
        );
        let shift = Vec3::new(5.0, -1.0, 2.0);
        let moved = t.transformed(|p| rot * p + shift).unwrap();
        let a = cone_angle(moved.component(0), rot * apex + shift).unwrap();
        assert_relative_eq!(a, base, epsilon = 1e-12);
    }

    #[test]
    fn chord_points_have_angle_at_least_two_pi() {
        let corpus = [
            generators::trefoil_symmetric(128),
            generators::circle(128, 1.0),
            generators::ellipse(128, 2.0, 1.0),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for link in &corpus {
            let k = link.component(0);
            for _ in 0..34 {
                let i = rng.gen_range(0..k.len());
                let j = rng.gen_range(0..k.len());
                if i == j || (k.vertex(i) - k.vertex(j)).norm() < 1e-9 {
                    continue;
                }
                let t: f64 = rng.gen_range(0.2..0.8);
                let p = k.vertex(i) * (1.0 - t) + k.vertex(j) * t;
                if distance_to_component(k, p) < 1e-9 {
                    continue;
                }
                let a = cone_angle(k, p).unwrap();
                assert!(a >= 2.0 * PI - 1e-9, "chord apex angle {a}");
            }
        }
    }

    #[test]
    fn flat_cone_point_ellipse() {
        let e = generators::ellipse(512, 2.0, 1.0);
        let tau = crate::thickness::thickness(&e).thickness;
        let rep = find_flat_cone_point(e.component(0), tau).unwrap();
        assert!((rep.cone_angle - 2.0 * PI).abs() <= 1e-6);
        assert!(rep.outside_thick_tube);
        // planar apex inside the hull
        assert!(rep.apex[2].abs() < 1e-9);
        assert!(rep.apex[0].abs() < 2.0 && rep.apex[1].abs() < 1.0);
    }

    #[test]
    fn flat_cone_point_trefoil_and_chain() {
        let t = generators::trefoil_symmetric(512);
        let tau = crate::thickness::thickness(&t).thickness;
        let rep = find_flat_cone_point(t.component(0), tau).unwrap();
        assert!((rep.cone_angle - 2.0 * PI).abs() <= 1e-6);
        assert!(
            rep.outside_thick_tube,
            "distance {}",
            rep.apex_to_curve_distance
        );

        let chain = generators::simple_chain(3, 256).unwrap();
        let rep = find_flat_cone_point(chain.link.component(1), 1.0).unwrap();
        assert!((rep.cone_angle - 2.0 * PI).abs() <= 1e-6);
        assert!(rep.outside_thick_tube);
    }

    #[test]
    fn max_cone_angle_circle_is_two_pi() {
        let c = generators::circle(256, 1.0);
        let rep = max_cone_angle_search(c.component(0), 1.0, 50_000).unwrap();
        assert!(rep.cone_angle <= 2.0 * PI + 1e-9, "got {}", rep.cone_angle);
        assert!(rep.cone_angle > 2.0 * PI - 1e-3);
        let e = generators::ellipse(256, 2.0, 1.0);
        let tau = crate::thickness::thickness(&e).thickness;
        let rep = max_cone_angle_search(e.component(0), tau, 50_000).unwrap();
        assert!(rep.cone_angle <= 2.0 * PI + 1e-9);
    }

    #[test]
    fn develop_preserves_edge_lengths() {
        let t = generators::trefoil_symmetric(200);
        let k = t.component(0);
        let apex = Vec3::new(0.1, 0.2, 3.0);
        let dev = develop(k, apex).unwrap();
        for i in 0..k.len() {
            let src = k.edge_length(i);
            let a = dev.plane_vertices[i];
            let b = dev.plane_vertices[i + 1];
            let got = ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt();
            assert_relative_eq!(got, src, max_relative = 1e-12);
        }
        for (i, p) in dev.plane_vertices.iter().take(k.len()).enumerate() {
            let r = (p[0] * p[0] + p[1] * p[1]).sqrt();
            assert_relative_eq!(r, (k.vertex(i) - apex).norm(), max_relative = 1e-12);
        }
    }

    #[test]
    fn develop_circle_from_center_is_congruent() {
        let c = generators::circle(128, 1.0);
        let dev = develop(c.component(0), Vec3::zeros()).unwrap();
        assert!(dev.closes());
        for p in &dev.plane_vertices {
            assert_relative_eq!((p[0] * p[0] + p[1] * p[1]).sqrt(), 1.0, epsilon = 1e-12);
        }
        let gap = {
            let a = dev.plane_vertices[0];
            let b = dev.plane_vertices.last().unwrap();
            ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt()
        };
        assert!(gap < 1e-9);
    }

    #[test]
    fn unfold_trefoil_expands_chords() {
        let t = generators::trefoil_symmetric(400);
        let k = t.component(0);
        let (dev, rep) = unfold(k).unwrap();
        assert!((rep.cone_angle - 2.0 * PI).abs() <= 1e-6);
        assert_relative_eq!(dev.length(), k.length(), max_relative = 1e-9);
        let total = k.length();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10_000 {
            let s1 = rng.gen_range(0.0..total);
            let s2 = rng.gen_range(0.0..total);
            let space = (k.point_at(s1) - k.point_at(s2)).norm();
            let p1 = dev.point_at(s1);
            let p2 = dev.point_at(s2);
            let plane = ((p2[0] - p1[0]).powi(2) + (p2[1] - p1[1]).powi(2)).sqrt();
            assert!(
                plane >= space - 1e-9,
                "chord contracted: plane {plane} < space {space}"
            );
        }
    }

    #[test]
    fn unfold_planar_curve_is_congruent() {
        let e = generators::ellipse(256, 2.0, 1.0);
        let k = e.component(0);
        let (dev, _) = unfold(k).unwrap();
        let total = k.length();
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..2000 {
            let s1 = rng.gen_range(0.0..total);
            let s2 = rng.gen_range(0.0..total);
            let space = (k.point_at(s1) - k.point_at(s2)).norm();
            let p1 = dev.point_at(s1);
            let p2 = dev.point_at(s2);
            let plane = ((p2[0] - p1[0]).powi(2) + (p2[1] - p1[1]).powi(2)).sqrt();
            assert_relative_eq!(plane, space, epsilon = 1e-9, max_relative = 1e-9);
        }
    }

    #[test]
    fn developed_flat_cone_turning_is_two_pi() {
        // the cone angle equals the total geodesic curvature of the
        // developed curve; both are 2*pi at a flat cone point
        let t = generators::trefoil_symmetric(300);
        let (dev, rep) = unfold(t.component(0)).unwrap();
        assert_relative_eq!(dev.total_turning(), rep.cone_angle, max_relative = 1e-5);
    }

    #[test]
    fn pushoff_circle_from_center() {
        let c = generators::circle(1024, 2.0);
        let chk = parallel_pushoff_length_check(c.component(0), Vec3::zeros(), 0.5).unwrap();
        assert_relative_eq!(chk.parallel_length, 3.0 * PI, max_relative = 1e-4);
        assert_relative_eq!(chk.deficit, PI, max_relative = 1e-3);
        let chk = parallel_pushoff_length_check(c.component(0), Vec3::zeros(), 1e-6).unwrap();
        assert!(chk.deficit < 1e-4);
    }

    #[test]
    fn pushoff_chain_end_circle_from_flat_point() {
        let chain = generators::simple_chain(2, 1024).unwrap();
        let k = chain.link.component(0);
        let rep = find_flat_cone_point(k, 1.0).unwrap();
        let apex = Vec3::new(rep.apex[0], rep.apex[1], rep.apex[2]);
        let chk = parallel_pushoff_length_check(k, apex, 0.5).unwrap();
        assert_relative_eq!(chk.deficit, 0.5 * chk.cone_angle, max_relative = 1e-3);
    }

    #[test]
    fn pushoff_rejects_too_wide() {
        let c = generators::circle(256, 2.0);
        assert!(matches!(
            parallel_pushoff_length_check(c.component(0), Vec3::zeros(), 2.5),
            Err(ConeError::PushoffTooWide { .. })
        ));
    }
}
