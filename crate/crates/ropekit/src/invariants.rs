//! Linking numbers, writhe, total curvature, and the user-supplied
//! invariants (overcrossing numbers, genus, bridge number, ...) that the
//! bound calculator consumes but cannot compute.

use crate::geom::{Component, PolyLink, Vec3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum InvariantError {
    #[error("components touch (edge midpoints within {0:.3e}); linking integral undefined")]
    TouchingComponents(f64),
    #[error("projection direction is degenerate for this pair of curves")]
    DegenerateDirection,
    #[error("invalid supplied invariants: {0}")]
    Validation(String),
}

/// Raw and rounded value of a Gauss linking integral.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GaussLinking {
    pub raw: f64,
    pub rounded: i64,
}

impl GaussLinking {
    pub fn residual(&self) -> f64 {
        (self.raw - self.rounded as f64).abs()
    }
}

fn gauss_term(a0: Vec3, a1: Vec3, b0: Vec3, b1: Vec3, depth: u32) -> Result<f64, InvariantError> {
    let ta = a1 - a0;
    let tb = b1 - b0;
    let ma = (a0 + a1) * 0.5;
    let mb = (b0 + b1) * 0.5;
    let r = ma - mb;
    let d = r.norm();
    if d < 1e-12 {
        return Err(InvariantError::TouchingComponents(d));
    }
    let la = ta.norm();
    let lb = tb.norm();
    // midpoint rule is poor when the pair is close relative to edge length;
    // split the longer edge and recurse
    if depth > 0 && d < 4.0 * la.max(lb) && la.max(lb) > 1e-9 {
        return if la >= lb {
            Ok(gauss_term(a0, ma, b0, b1, depth - 1)? + gauss_term(ma, a1, b0, b1, depth - 1)?)
        } else {
            Ok(gauss_term(a0, a1, b0, mb, depth - 1)? + gauss_term(a0, a1, mb, b1, depth - 1)?)
        };
    }
    Ok(ta.cross(&tb).dot(&r) / (d * d * d))
}

/// Gauss linking integral of two disjoint closed curves, by midpoint
/// quadrature over edge pairs with adaptive subdivision at close approach.
pub fn linking_number_gauss(a: &Component, b: &Component) -> Result<GaussLinking, InvariantError> {
    let mut sum = 0.0;
    for i in 0..a.len() {
        let (a0, a1) = a.edge(i);
        for j in 0..b.len() {
            let (b0, b1) = b.edge(j);
            sum += gauss_term(a0, a1, b0, b1, 10)?;
        }
    }
    let raw = sum / (4.0 * PI);
    Ok(GaussLinking {
        raw,
        rounded: raw.round() as i64,
    })
}

fn orthonormal_frame(dir: Vec3) -> (Vec3, Vec3, Vec3) {
    let w = dir.normalize();
    let pick = if w.x.abs() < 0.9 {
        Vec3::new(1.0, 0.0, 0.0)
    } else {
        Vec3::new(0.0, 1.0, 0.0)
    };
    let u = w.cross(&pick).normalize();
    let v = w.cross(&u);
    (u, v, w)
}

/// Signed sum over crossings of `a` over `b` in the projection along `dir`.
/// Errors if the direction is non-generic for these polygons.
pub fn linking_number_projection(
    a: &Component,
    b: &Component,
    dir: Vec3,
) -> Result<i64, InvariantError> {
    let (u, v, w) = orthonormal_frame(dir);
    let proj = |p: Vec3| -> (f64, f64, f64) { (p.dot(&u), p.dot(&v), p.dot(&w)) };
    let mut sum = 0i64;
    for i in 0..a.len() {
        let (p0, p1) = a.edge(i);
        let (x0, y0, h0) = proj(p0);
        let (x1, y1, h1) = proj(p1);
        for j in 0..b.len() {
            let (q0, q1) = b.edge(j);
            let (x2, y2, g0) = proj(q0);
            let (x3, y3, g1) = proj(q1);
            let dax = x1 - x0;
            let day = y1 - y0;
            let dbx = x3 - x2;
            let dby = y3 - y2;
            let det = dax * dby - day * dbx;
            let scale = (dax.hypot(day)) * (dbx.hypot(dby));
            if scale == 0.0 {
                return Err(InvariantError::DegenerateDirection);
            }
            if det.abs() < 1e-12 * scale {
                // parallel projections: fine unless they overlap; a cheap
                // conservative test keeps the implementation honest
                continue;
            }
            let rx = x2 - x0;
            let ry = y2 - y0;
            // P0 + s*dA = Q0 + t*dB
            let s = (rx * dby - ry * dbx) / det;
            let t = (day * rx - dax * ry) / det;
            if !(0.0..=1.0).contains(&s) || !(0.0..=1.0).contains(&t) {
                continue;
            }
            let guard = 1e-9;
            if s < guard || s > 1.0 - guard || t < guard || t > 1.0 - guard {
                return Err(InvariantError::DegenerateDirection);
            }
            let ha = h0 + (h1 - h0) * s;
            let hb = g0 + (g1 - g0) * t;
            if (ha - hb).abs() < 1e-12 {
                return Err(InvariantError::DegenerateDirection);
            }
            if ha > hb {
                sum += if det > 0.0 { 1 } else { -1 };
            }
        }
    }
    Ok(sum)
}

/// Projection linking number with seeded retry on degenerate directions.
pub fn linking_number_projection_robust(
    a: &Component,
    b: &Component,
    dir: Vec3,
    seed: u64,
) -> Result<i64, InvariantError> {
    if let Ok(v) = linking_number_projection(a, b, dir) {
        return Ok(v);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..32 {
        let jitter = Vec3::new(
            rng.gen_range(-1e-3..1e-3),
            rng.gen_range(-1e-3..1e-3),
            rng.gen_range(-1e-3..1e-3),
        );
        if let Ok(v) = linking_number_projection(a, b, (dir + jitter).normalize()) {
            return Ok(v);
        }
    }
    Err(InvariantError::DegenerateDirection)
}

/// Exact writhe contribution (solid angle) of an edge pair.
fn writhe_pair(p1: Vec3, p2: Vec3, p3: Vec3, p4: Vec3) -> f64 {
    let r12 = p2 - p1;
    let r34 = p4 - p3;
    let r13 = p3 - p1;
    let r14 = p4 - p1;
    let r23 = p3 - p2;
    let r24 = p4 - p2;
    let n1 = r13.cross(&r14);
    let n2 = r14.cross(&r24);
    let n3 = r24.cross(&r23);
    let n4 = r23.cross(&r13);
    let (l1, l2, l3, l4) = (n1.norm(), n2.norm(), n3.norm(), n4.norm());
    if l1 < 1e-300 || l2 < 1e-300 || l3 < 1e-300 || l4 < 1e-300 {
        return 0.0;
    }
    let (n1, n2, n3, n4) = (n1 / l1, n2 / l2, n3 / l3, n4 / l4);
    let asin_c = |x: f64| x.clamp(-1.0, 1.0).asin();
    let omega = asin_c(n1.dot(&n2)) + asin_c(n2.dot(&n3)) + asin_c(n3.dot(&n4)) + asin_c(n4.dot(&n1));
    let sign = r34.cross(&r12).dot(&r13);
    if sign == 0.0 {
        0.0
    } else {
        omega * sign.signum()
    }
}

/// Writhe of a closed polygon: Gauss self-integral over non-adjacent edge
/// pairs, evaluated with the exact per-pair solid-angle formula.
pub fn writhe(k: &Component) -> f64 {
    let n = k.len();
    let mut sum = 0.0;
    for i in 0..n {
        let (p1, p2) = k.edge(i);
        for j in (i + 2)..n {
            if i == 0 && j == n - 1 {
                continue; // adjacent around the closure
            }
            let (p3, p4) = k.edge(j);
            sum += writhe_pair(p1, p2, p3, p4);
        }
    }
    sum / (2.0 * PI)
}

/// Total curvature in radians: sum of exterior turning angles.
pub fn total_curvature(k: &Component) -> f64 {
    (0..k.len()).map(|i| k.turning_angle(i)).sum()
}

/// Signed self-crossing count of one component projected along `dir`.
/// Used as the directional-averaging oracle for writhe.
pub fn signed_crossings_projection(k: &Component, dir: Vec3) -> Result<i64, InvariantError> {
    let (u, v, w) = orthonormal_frame(dir);
    let proj = |p: Vec3| -> (f64, f64, f64) { (p.dot(&u), p.dot(&v), p.dot(&w)) };
    let n = k.len();
    let mut sum = 0i64;
    for i in 0..n {
        let (p0, p1) = k.edge(i);
        let (x0, y0, h0) = proj(p0);
        let (x1, y1, h1) = proj(p1);
        for j in (i + 2)..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (q0, q1) = k.edge(j);
            let (x2, y2, g0) = proj(q0);
            let (x3, y3, g1) = proj(q1);
            let dax = x1 - x0;
            let day = y1 - y0;
            let dbx = x3 - x2;
            let dby = y3 - y2;
            let det = dax * dby - day * dbx;
            let scale = dax.hypot(day) * dbx.hypot(dby);
            if det.abs() < 1e-12 * scale.max(1e-300) {
                continue;
            }
            let rx = x2 - x0;
            let ry = y2 - y0;
            let s = (rx * dby - ry * dbx) / det;
            let t = (day * rx - dax * ry) / det;
            if !(0.0..=1.0).contains(&s) || !(0.0..=1.0).contains(&t) {
                continue;
            }
            let guard = 1e-9;
            if s < guard || s > 1.0 - guard || t < guard || t > 1.0 - guard {
                return Err(InvariantError::DegenerateDirection);
            }
            let ha = h0 + (h1 - h0) * s;
            let hb = g0 + (g1 - g0) * t;
            if (ha - hb).abs() < 1e-12 {
                return Err(InvariantError::DegenerateDirection);
            }
            // sign((t_over x t_under) . w): det is cross2d of (edge i, edge j)
            let sign = if ha > hb { det } else { -det };
            sum += if sign > 0.0 { 1 } else { -1 };
        }
    }
    Ok(sum)
}

// ---------------------------------------------------------------------------
// Supplied invariants and the combined record
// ---------------------------------------------------------------------------

/// User-supplied invariants for one component. Everything is optional;
/// formulas that lack inputs are simply skipped by the bound calculator.
#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SuppliedComponent {
    #[serde(default)]
    pub nontrivial_knot: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pov: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ac: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bridge: Option<u32>,
    /// Number of sublinks of the rest of the link, each topologically
    /// linked to this component (the enclosure bound input).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub linked_partition_count: Option<u32>,
    /// Minimal Thurston norm of a surface spanning this component.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi_minus: Option<u32>,
}

/// The full supplied record: per-component inputs plus link-level values.
#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SuppliedInvariants {
    #[serde(default)]
    pub components: Vec<SuppliedComponent>,
    /// Minimal crossing number of the link type.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crossing_number: Option<u32>,
    /// Pairwise linking numbers, if the caller supplies them instead of
    /// computing them from geometry.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub linking_matrix: Option<Vec<Vec<i64>>>,
    /// Pairwise overcrossing numbers, when known; validated against the
    /// linking matrix (|Lk| <= Over, equal parity).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub over_matrix: Option<Vec<Vec<u32>>>,
}

/// Computed and supplied invariants for a link, feeding the bounds module.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LinkInvariants {
    pub num_components: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairwise_linking_raw: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairwise_linking: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub writhe: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total_curvature: Option<Vec<f64>>,
    pub supplied: SuppliedInvariants,
}

impl LinkInvariants {
    /// Compute the geometric invariants of a link.
    pub fn compute(link: &PolyLink) -> Result<Self, InvariantError> {
        let n = link.num_components();
        let mut raw = vec![vec![0.0; n]; n];
        let mut rounded = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let lk = linking_number_gauss(link.component(i), link.component(j))?;
                raw[i][j] = lk.raw;
                raw[j][i] = lk.raw;
                rounded[i][j] = lk.rounded;
                rounded[j][i] = lk.rounded;
            }
        }
        let writhes = link.components().iter().map(writhe).collect();
        let curv = link.components().iter().map(total_curvature).collect();
        Ok(LinkInvariants {
            num_components: n,
            pairwise_linking_raw: Some(raw),
            pairwise_linking: Some(rounded),
            writhe: Some(writhes),
            total_curvature: Some(curv),
            supplied: SuppliedInvariants::default(),
        })
    }

    /// Build a record from supplied data only (no geometry).
    pub fn record(
        num_components: usize,
        supplied: SuppliedInvariants,
    ) -> Result<Self, InvariantError> {
        let inv = LinkInvariants {
            num_components,
            pairwise_linking_raw: None,
            pairwise_linking: None,
            writhe: None,
            total_curvature: None,
            supplied,
        };
        inv.validate()?;
        Ok(inv)
    }

    /// Attach supplied values to a computed record.
    pub fn with_supplied(mut self, supplied: SuppliedInvariants) -> Result<Self, InvariantError> {
        self.supplied = supplied;
        self.validate()?;
        Ok(self)
    }

    pub fn supplied_for(&self, i: usize) -> Option<&SuppliedComponent> {
        self.supplied.components.get(i)
    }

    fn linking_matrix(&self) -> Option<&Vec<Vec<i64>>> {
        self.pairwise_linking
            .as_ref()
            .or(self.supplied.linking_matrix.as_ref())
    }

    /// Total |linking| of component `i` with all others.
    pub fn total_abs_linking(&self, i: usize) -> u32 {
        self.linking_matrix()
            .map(|m| m[i].iter().map(|v| v.unsigned_abs() as u32).sum())
            .unwrap_or(0)
    }

    pub fn writhe_for(&self, i: usize) -> Option<f64> {
        self.writhe.as_ref().map(|w| w[i])
    }

    pub fn link_crossing_number(&self) -> Option<u32> {
        self.supplied.crossing_number
    }

    /// Enforce the inequalities the supplied invariants must satisfy.
    pub fn validate(&self) -> Result<(), InvariantError> {
        let fail = |msg: String| Err(InvariantError::Validation(msg));
        if !self.supplied.components.is_empty()
            && self.supplied.components.len() != self.num_components
        {
            return fail(format!(
                "supplied {} component records for a {}-component link",
                self.supplied.components.len(),
                self.num_components
            ));
        }
        for (i, s) in self.supplied.components.iter().enumerate() {
            if let (Some(p), Some(b)) = (s.pov, s.bridge) {
                if p < b {
                    return fail(format!("component {i}: pov {p} < bridge {b}"));
                }
            }
            if s.nontrivial_knot {
                if let Some(p) = s.pov {
                    if p < 2 {
                        return fail(format!("component {i}: nontrivial knot with pov {p} < 2"));
                    }
                }
            }
            if let (Some(ac), Some(p)) = (s.ac, s.pov) {
                if ac > p as f64 + 1e-12 {
                    return fail(format!("component {i}: ac {ac} > pov {p}"));
                }
            }
            if let (Some(p), Some(cr)) = (s.pov, self.supplied.crossing_number) {
                if p > cr {
                    return fail(format!("component {i}: pov {p} > crossing number {cr}"));
                }
            }
        }
        if let Some(m) = &self.supplied.linking_matrix {
            if m.len() != self.num_components || m.iter().any(|r| r.len() != self.num_components) {
                return fail("linking matrix shape mismatch".into());
            }
        }
        if let Some(over) = &self.supplied.over_matrix {
            if let Some(lk) = self.linking_matrix() {
                for i in 0..self.num_components {
                    for j in 0..self.num_components {
                        if i == j {
                            continue;
                        }
                        let l = lk[i][j];
                        let o = over[i][j] as i64;
                        if l.abs() > o {
                            return fail(format!("|Lk({i},{j})| = {} > Over = {o}", l.abs()));
                        }
                        if (l - o).rem_euclid(2) != 0 {
                            return fail(format!("Lk({i},{j}) = {l} and Over = {o} differ in parity"));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use approx::assert_relative_eq;

    #[test]
    fn hopf_linking_is_one() {
        let cfg = generators::simple_chain(2, 256).unwrap();
        let lk = linking_number_gauss(cfg.link.component(0), cfg.link.component(1)).unwrap();
        assert_eq!(lk.rounded.abs(), 1);
        assert!(lk.residual() < 1e-3, "raw residual {}", lk.residual());
    }

    #[test]
    fn split_circles_unlinked() {
        let a = generators::circle(128, 1.0);
        let b = generators::circle(128, 1.0).translated(Vec3::new(10.0, 0.0, 0.0));
        let lk = linking_number_gauss(a.component(0), b.component(0)).unwrap();
        assert_eq!(lk.rounded, 0);
        assert!(lk.raw.abs() < 1e-6);
    }

    #[test]
    fn torus24_linking_is_two() {
        let cfg = generators::torus_link_2_4(384).unwrap();
        let lk = linking_number_gauss(cfg.link.component(0), cfg.link.component(1)).unwrap();
        assert_eq!(lk.rounded.abs(), 2);
        assert!(lk.residual() < 1e-3);
    }

    #[test]
    fn linking_symmetry_and_orientation() {
        let cfg = generators::simple_chain(2, 128).unwrap();
        let a = cfg.link.component(0);
        let b = cfg.link.component(1);
        let ab = linking_number_gauss(a, b).unwrap();
        let ba = linking_number_gauss(b, a).unwrap();
        assert_relative_eq!(ab.raw, ba.raw, max_relative = 1e-9);
        let rev = linking_number_gauss(&a.reversed(), b).unwrap();
        assert_relative_eq!(rev.raw, -ab.raw, max_relative = 1e-9);
        let revrev = linking_number_gauss(&a.reversed(), &b.reversed()).unwrap();
        assert_relative_eq!(revrev.raw, ab.raw, max_relative = 1e-9);
    }

    #[test]
    fn touching_components_error() {
        let a = generators::circle(64, 1.0);
        let b = generators::circle(64, 1.0); // identical: zero distance
        assert!(matches!(
            linking_number_gauss(a.component(0), b.component(0)),
            Err(InvariantError::TouchingComponents(_))
        ));
    }

    #[test]
    fn projection_agrees_with_gauss_on_hopf() {
        let cfg = generators::simple_chain(2, 200).unwrap();
        let a = cfg.link.component(0);
        let b = cfg.link.component(1);
        let gauss = linking_number_gauss(a, b).unwrap().rounded;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..100u64 {
            let dir = Vec3::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            )
            .normalize();
            let p = linking_number_projection_robust(a, b, dir, trial).unwrap();
            assert_eq!(p, gauss, "direction {dir:?}");
        }
    }

    #[test]
    fn projection_zero_for_split_link() {
        let a = generators::circle(100, 1.0);
        let b = generators::circle(100, 1.0).translated(Vec3::new(5.0, 1.0, 2.0));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for trial in 0..20u64 {
            let dir = Vec3::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            )
            .normalize();
            let p = linking_number_projection_robust(a.component(0), b.component(0), dir, trial)
                .unwrap();
            assert_eq!(p, 0);
        }
    }

    #[test]
    fn projection_agrees_with_gauss_on_random_links() {
        // seeded two-component links with clearance
        for seed in 0..20u64 {
            let a = generators::perturbed(&generators::circle(96, 2.0), seed * 2 + 1, 0.15);
            let b = generators::perturbed(
                &generators::torus_link_2_4(96).unwrap().link,
                seed * 2 + 2,
                0.05,
            );
            // combine one component of each at a safe offset
            let link = crate::geom::PolyLink::new(vec![
                a.component(0).clone(),
                b.component(0).clone(),
            ])
            .unwrap();
            let g = linking_number_gauss(link.component(0), link.component(1)).unwrap();
            let p = linking_number_projection_robust(
                link.component(0),
                link.component(1),
                Vec3::new(0.3, -0.5, 0.81).normalize(),
                seed,
            )
            .unwrap();
            assert_eq!(p, g.rounded, "seed {seed}");
        }
    }

    #[test]
    fn writhe_planar_is_zero() {
        let c = generators::circle(128, 1.5);
        assert!(writhe(c.component(0)).abs() < 1e-6);
        let e = generators::ellipse(128, 2.0, 1.0);
        assert!(writhe(e.component(0)).abs() < 1e-6);
    }

    #[test]
    fn writhe_mirror_negates() {
        let t = generators::trefoil_symmetric(200);
        let w = writhe(t.component(0));
        let mirrored = t
            .transformed(|p| Vec3::new(p.x, p.y, -p.z))
            .unwrap();
        let wm = writhe(mirrored.component(0));
        assert_relative_eq!(w, -wm, epsilon = 1e-9);
        assert!(w.abs() > 1.0, "trefoil writhe should be substantial, got {w}");
    }

    #[test]
    fn writhe_matches_directional_average() {
        let t = generators::trefoil_symmetric(200);
        let k = t.component(0);
        let w = writhe(k);
        // quasi-uniform directions (Fibonacci sphere), skipping rare
        // degenerate ones
        let n = 4000;
        let golden = PI * (3.0 - 5f64.sqrt());
        let mut sum = 0.0;
        let mut count = 0usize;
        for i in 0..n {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
            let r = (1.0 - z * z).sqrt();
            let th = golden * i as f64;
            let dir = Vec3::new(r * th.cos(), r * th.sin(), z);
            if let Ok(c) = signed_crossings_projection(k, dir) {
                sum += c as f64;
                count += 1;
            }
        }
        let avg = sum / count as f64;
        assert!(
            (avg - w).abs() < 0.01,
            "directional average {avg} vs writhe {w} ({count} samples)"
        );
    }

    #[test]
    fn total_curvature_convex_polygons() {
        for n in [3usize, 4, 7, 100] {
            let c = generators::circle(n, 1.0);
            assert_relative_eq!(total_curvature(c.component(0)), 2.0 * PI, epsilon = 1e-9);
        }
        let e = generators::ellipse(64, 3.0, 1.0);
        assert_relative_eq!(total_curvature(e.component(0)), 2.0 * PI, epsilon = 1e-9);
    }

    #[test]
    fn trefoil_total_curvature_at_least_4pi() {
        for n in [64usize, 128, 512] {
            let t = generators::trefoil_symmetric(n);
            assert!(total_curvature(t.component(0)) >= 4.0 * PI);
        }
    }

    #[test]
    fn total_curvature_stable_under_resampling() {
        let t = generators::trefoil_symmetric(512);
        let tc = total_curvature(t.component(0));
        let r = t.resample(t.length() / 512.0 * 0.5).unwrap();
        let tc2 = total_curvature(r.component(0));
        assert!((tc - tc2).abs() < 1e-2, "{tc} vs {tc2}");
    }

    #[test]
    fn supplied_validation() {
        let bad = SuppliedInvariants {
            components: vec![SuppliedComponent {
                nontrivial_knot: true,
                pov: Some(1),
                ..Default::default()
            }],
            ..Default::default()
        };
        assert!(LinkInvariants::record(1, bad).is_err());
        let bad2 = SuppliedInvariants {
            components: vec![SuppliedComponent {
                pov: Some(2),
                bridge: Some(3),
                ..Default::default()
            }],
            ..Default::default()
        };
        assert!(LinkInvariants::record(1, bad2).is_err());
        let ok = SuppliedInvariants {
            components: vec![SuppliedComponent {
                nontrivial_knot: true,
                bridge: Some(2),
                genus: Some(1),
                ..Default::default()
            }],
            crossing_number: Some(3),
            ..Default::default()
        };
        assert!(LinkInvariants::record(1, ok).is_ok());
    }

    #[test]
    fn over_matrix_parity_check() {
        let supplied = SuppliedInvariants {
            linking_matrix: Some(vec![vec![0, 2], vec![2, 0]]),
            over_matrix: Some(vec![vec![0, 3], vec![3, 0]]),
            ..Default::default()
        };
        assert!(LinkInvariants::record(2, supplied).is_err()); // parity differs
        let supplied = SuppliedInvariants {
            linking_matrix: Some(vec![vec![0, 2], vec![2, 0]]),
            over_matrix: Some(vec![vec![0, 4], vec![4, 0]]),
            ..Default::default()
        };
        assert!(LinkInvariants::record(2, supplied).is_ok());
    }
}
