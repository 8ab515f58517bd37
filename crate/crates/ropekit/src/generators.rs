//! Reference configurations with analytically known ropelength, plus the
//! seeded test corpus (circles, ellipses, a symmetric trefoil, smooth
//! perturbations).
//!
//! The tight families (chains, enclosure-minimal components, the Borromean
//! configuration) are built at unit thickness from radius-2 arcs and
//! straightaways; tests measure them back and compare against the closed
//! forms.

use crate::geom::{Component, GeomError, PolyLink, Vec3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// A generated link together with its claimed (analytic or reference) values.
#[derive(Debug, Clone)]
pub struct GeneratedConfig {
    pub link: PolyLink,
    pub claimed_ropelength: f64,
    pub claimed_thickness: f64,
    /// Which construction and closed form produced the claim.
    pub provenance: String,
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum GenerateError {
    #[error("chain needs at least 2 components, got {0}")]
    ChainTooShort(usize),
    #[error("enclosure component is only constructed for 1..=4 disks, got {0}")]
    PeriOutOfRange(usize),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

// ---------------------------------------------------------------------------
// 2-d piecewise arc/segment paths, sampled uniformly by arclength
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
enum Piece {
    Seg { from: [f64; 2], to: [f64; 2] },
    /// Circular arc; `sweep` is signed (ccw positive).
    Arc { center: [f64; 2], radius: f64, start: f64, sweep: f64 },
}

impl Piece {
    fn length(&self) -> f64 {
        match *self {
            Piece::Seg { from, to } => ((to[0] - from[0]).powi(2) + (to[1] - from[1]).powi(2)).sqrt(),
            Piece::Arc { radius, sweep, .. } => radius * sweep.abs(),
        }
    }

    fn point_at(&self, s: f64) -> [f64; 2] {
        match *self {
            Piece::Seg { from, to } => {
                let t = s / self.length();
                [from[0] + (to[0] - from[0]) * t, from[1] + (to[1] - from[1]) * t]
            }
            Piece::Arc { center, radius, start, sweep } => {
                let ang = start + sweep.signum() * (s / radius);
                [center[0] + radius * ang.cos(), center[1] + radius * ang.sin()]
            }
        }
    }
}

/// Sample a closed piecewise path with `count` vertices, uniform in arclength.
fn sample_closed(pieces: &[Piece], count: usize) -> Vec<[f64; 2]> {
    let lengths: Vec<f64> = pieces.iter().map(|p| p.length()).collect();
    let total: f64 = lengths.iter().sum();
    let step = total / count as f64;
    let mut out = Vec::with_capacity(count);
    let mut piece = 0usize;
    let mut offset = 0.0; // arclength consumed before current piece
    for k in 0..count {
        let target = k as f64 * step;
        while piece + 1 < pieces.len() && target >= offset + lengths[piece] {
            offset += lengths[piece];
            piece += 1;
        }
        out.push(pieces[piece].point_at((target - offset).min(lengths[piece])));
    }
    out
}

fn embed(plane: impl Fn([f64; 2]) -> Vec3, pts: Vec<[f64; 2]>) -> Result<Component, GeomError> {
    Component::new(pts.into_iter().map(plane).collect())
}

/// Outer boundary of the radius-`r` neighborhood of a convex point set
/// given in ccw order (1 or 2 points allowed).
fn rounded_hull(points: &[[f64; 2]], r: f64) -> Vec<Piece> {
    if points.len() == 1 {
        return vec![Piece::Arc { center: points[0], radius: r, start: 0.0, sweep: 2.0 * PI }];
    }
    // treat 2 points as the degenerate polygon p0 -> p1 -> p0
    let cyc: Vec<[f64; 2]> = if points.len() == 2 {
        vec![points[0], points[1]]
    } else {
        points.to_vec()
    };
    let n = cyc.len();
    let mut pieces = Vec::new();
    let normal = |i: usize| -> [f64; 2] {
        let a = cyc[i];
        let b = cyc[(i + 1) % n];
        let d = [b[0] - a[0], b[1] - a[1]];
        let len = (d[0] * d[0] + d[1] * d[1]).sqrt();
        // outward normal for ccw traversal
        [d[1] / len, -d[0] / len]
    };
    for i in 0..n {
        let a = cyc[i];
        let b = cyc[(i + 1) % n];
        let ni = normal(i);
        pieces.push(Piece::Seg {
            from: [a[0] + r * ni[0], a[1] + r * ni[1]],
            to: [b[0] + r * ni[0], b[1] + r * ni[1]],
        });
        let nj = normal((i + 1) % n);
        let start = ni[1].atan2(ni[0]);
        let end = nj[1].atan2(nj[0]);
        let mut sweep = end - start;
        while sweep < 0.0 {
            sweep += 2.0 * PI;
        }
        pieces.push(Piece::Arc { center: b, radius: r, start, sweep });
    }
    pieces
}

// ---------------------------------------------------------------------------
// Corpus curves
// ---------------------------------------------------------------------------

/// Regular `n`-gon inscribed in a circle of the given radius (xy-plane).
pub fn circle(n: usize, radius: f64) -> PolyLink {
    let comp = Component::new(
        (0..n)
            .map(|i| {
                let t = 2.0 * PI * i as f64 / n as f64;
                Vec3::new(radius * t.cos(), radius * t.sin(), 0.0)
            })
            .collect(),
    )
    .expect("regular polygon is valid");
    PolyLink::single(comp)
}

/// Axis-aligned ellipse in the xy-plane (uniform in parameter, not arclength).
pub fn ellipse(n: usize, a: f64, b: f64) -> PolyLink {
    let comp = Component::new(
        (0..n)
            .map(|i| {
                let t = 2.0 * PI * i as f64 / n as f64;
                Vec3::new(a * t.cos(), b * t.sin(), 0.0)
            })
            .collect(),
    )
    .expect("ellipse polygon is valid");
    PolyLink::single(comp)
}

/// Symmetric trefoil with three-fold symmetry about the z-axis.
pub fn trefoil_symmetric(n: usize) -> PolyLink {
    let comp = Component::new(
        (0..n)
            .map(|i| {
                let t = 2.0 * PI * i as f64 / n as f64;
                Vec3::new(
                    t.sin() + 2.0 * (2.0 * t).sin(),
                    t.cos() - 2.0 * (2.0 * t).cos(),
                    -(3.0 * t).sin(),
                )
            })
            .collect(),
    )
    .expect("trefoil polygon is valid")
    ;
    PolyLink::single(comp)
}

/// Smooth seeded perturbation: each component is displaced by a few random
/// low-frequency Fourier modes of the given amplitude. Zero amplitude
/// returns the base link unchanged.
pub fn perturbed(base: &PolyLink, seed: u64, amplitude: f64) -> PolyLink {
    if amplitude == 0.0 {
        return base.clone();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut comps = Vec::with_capacity(base.num_components());
    for comp in base.components() {
        const MODES: usize = 4;
        // coefficients per coordinate and mode, damped at higher frequency
        let mut coef = [[[0.0f64; 2]; MODES]; 3];
        for axis in coef.iter_mut() {
            for (k, m) in axis.iter_mut().enumerate() {
                let damp = 1.0 / (k as f64 + 1.0).powi(2);
                m[0] = rng.gen_range(-1.0..1.0) * damp;
                m[1] = rng.gen_range(-1.0..1.0) * damp;
            }
        }
        let n = comp.len();
        let verts = comp
            .vertices()
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let t = 2.0 * PI * i as f64 / n as f64;
                let mut w = *v;
                for (c, axis) in coef.iter().enumerate() {
                    let mut d = 0.0;
                    for (k, m) in axis.iter().enumerate() {
                        let f = (k as f64 + 1.0) * t;
                        d += m[0] * f.cos() + m[1] * f.sin();
                    }
                    w[c] += amplitude * d;
                }
                w
            })
            .collect();
        comps.push(Component::new(verts).expect("perturbation keeps vertices distinct"));
    }
    PolyLink::new(comps).expect("non-empty")
}

// ---------------------------------------------------------------------------
// Tight families
// ---------------------------------------------------------------------------

/// Simple chain of `k >= 2` rings at unit thickness: radius-2 circles at the
/// ends, stadium curves (straightaway 2, cap radius 2) in the middle,
/// consecutive rings in alternating perpendicular planes. Closed-form
/// ropelength `(4*pi + 4)*k - 8`.
pub fn simple_chain(k: usize, vertices_per_component: usize) -> Result<GeneratedConfig, GenerateError> {
    if k < 2 {
        return Err(GenerateError::ChainTooShort(k));
    }
    let n = vertices_per_component.max(8);
    let mut comps = Vec::with_capacity(k);
    for i in 0..k {
        let pieces = if i == 0 || i == k - 1 {
            let cx = if i == 0 { 0.0 } else { 4.0 * k as f64 - 6.0 };
            vec![Piece::Arc { center: [cx, 0.0], radius: 2.0, start: 0.0, sweep: 2.0 * PI }]
        } else {
            let c1 = 4.0 * i as f64 - 2.0;
            rounded_hull(&[[c1, 0.0], [c1 + 2.0, 0.0]], 2.0)
        };
        let pts = sample_closed(&pieces, n);
        // even components in the xy-plane, odd in the xz-plane
        let comp = if i % 2 == 0 {
            embed(|p| Vec3::new(p[0], p[1], 0.0), pts)?
        } else {
            embed(|p| Vec3::new(p[0], 0.0, p[1]), pts)?
        };
        comps.push(comp);
    }
    let claimed = (4.0 * PI + 4.0) * k as f64 - 8.0;
    Ok(GeneratedConfig {
        link: PolyLink::new(comps)?,
        claimed_ropelength: claimed,
        claimed_thickness: 1.0,
        provenance: format!("simple-chain(k={k}): (4*pi+4)*k - 8"),
    })
}

/// Positions of `n` mutually touching unit-spacing points, scaled by 2
/// (so neighbors are 2 apart): the disk centers the enclosure hugs.
fn enclosure_points(n: usize) -> Result<Vec<[f64; 2]>, GenerateError> {
    Ok(match n {
        1 => vec![[0.0, 0.0]],
        2 => vec![[-1.0, 0.0], [1.0, 0.0]],
        3 => {
            let r = 2.0 / 3f64.sqrt();
            (0..3)
                .map(|i| {
                    let t = PI / 2.0 + 2.0 * PI * i as f64 / 3.0;
                    [r * t.cos(), r * t.sin()]
                })
                .collect()
        }
        4 => vec![[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]],
        other => return Err(GenerateError::PeriOutOfRange(other)),
    })
}

/// Shortest-boundary component enclosing `n` unit-radius tubes at unit
/// thickness: the outer boundary of the radius-2 neighborhood of the
/// `n`-point configuration. Length `2*pi + Peri(n)`.
///
/// `n = 5` is refused along with larger `n`: its minimizers form a
/// two-parameter family with no canonical member.
pub fn peri_component(n: usize, vertices: usize) -> Result<Component, GenerateError> {
    let pts = enclosure_points(n)?;
    let pieces = rounded_hull(&pts, 2.0);
    Ok(embed(|p| Vec3::new(p[0], p[1], 0.0), sample_closed(&pieces, vertices.max(8)))?)
}

/// Full link variant: the enclosure component plus the `n` threaded
/// radius-2 rings it surrounds, in vertical planes. Unit thickness.
pub fn peri_link(n: usize, vertices_per_component: usize) -> Result<GeneratedConfig, GenerateError> {
    let m = vertices_per_component.max(8);
    let boundary = peri_component(n, m)?;
    let pts = enclosure_points(n)?;
    let mut comps = vec![boundary];
    for p in &pts {
        let u = if pts.len() == 1 {
            [1.0, 0.0]
        } else {
            let norm = (p[0] * p[0] + p[1] * p[1]).sqrt();
            if norm < 1e-12 {
                [1.0, 0.0]
            } else {
                [p[0] / norm, p[1] / norm]
            }
        };
        let center = [p[0] + 2.0 * u[0], p[1] + 2.0 * u[1]];
        let ring = Component::new(
            (0..m)
                .map(|i| {
                    let t = 2.0 * PI * i as f64 / m as f64;
                    Vec3::new(
                        center[0] + 2.0 * t.cos() * u[0],
                        center[1] + 2.0 * t.cos() * u[1],
                        2.0 * t.sin(),
                    )
                })
                .collect(),
        )?;
        comps.push(ring);
    }
    let peri_n = crate::bounds::peri(n).expect("n <= 4 here");
    let claimed = 2.0 * PI + peri_n + n as f64 * 4.0 * PI;
    Ok(GeneratedConfig {
        link: PolyLink::new(comps)?,
        claimed_ropelength: claimed,
        claimed_thickness: 1.0,
        provenance: format!("enclosure-link(n={n}): (2*pi + Peri({n})) + {n} rings of 4*pi"),
    })
}

/// Borromean rings at unit thickness: three congruent piecewise-circular
/// plane curves in mutually perpendicular planes. Each consists of arcs of
/// radius-2 circles centered at the vertices of a side-4 rhombus whose
/// major diagonal is 4 longer than its minor diagonal.
pub fn borromean_rings(vertices_per_component: usize) -> Result<GeneratedConfig, GenerateError> {
    let s7 = 7f64.sqrt();
    let a = s7 + 1.0; // major semi-diagonal
    let b = s7 - 1.0; // minor semi-diagonal (= a - 2, so waists sit on cap centers)
    let beta = b.atan2(a); // tangency angle; cos(beta) = a/4, sin(beta) = b/4
    let pieces = vec![
        Piece::Arc { center: [0.0, b], radius: 2.0, start: -beta, sweep: PI + 2.0 * beta },
        Piece::Arc { center: [-a, 0.0], radius: 2.0, start: beta, sweep: -2.0 * beta },
        Piece::Arc { center: [0.0, -b], radius: 2.0, start: PI - beta, sweep: PI + 2.0 * beta },
        Piece::Arc { center: [a, 0.0], radius: 2.0, start: PI + beta, sweep: -2.0 * beta },
    ];
    let n = vertices_per_component.max(12);
    let planes: [Box<dyn Fn([f64; 2]) -> Vec3>; 3] = [
        Box::new(|p: [f64; 2]| Vec3::new(p[0], p[1], 0.0)),
        Box::new(|p: [f64; 2]| Vec3::new(0.0, p[0], p[1])),
        Box::new(|p: [f64; 2]| Vec3::new(p[1], 0.0, p[0])),
    ];
    let mut comps = Vec::with_capacity(3);
    for plane in &planes {
        comps.push(embed(plane, sample_closed(&pieces, n))?);
    }
    let claimed = 3.0 * (4.0 * PI + 16.0 * beta);
    Ok(GeneratedConfig {
        link: PolyLink::new(comps)?,
        claimed_ropelength: claimed,
        claimed_thickness: 1.0,
        provenance: "borromean(rhombus side 4, arcs radius 2): 3*(4*pi + 16*atan2(sqrt(7)-1, sqrt(7)+1))".into(),
    })
}

/// (2,4)-torus link: two unknotted components of linking number two on a
/// standard torus (major radius 2.5, minor radius 1), rescaled so the
/// measured polygonal thickness is 1. The claimed ropelength is a
/// reference upper value for these radii, not a tight figure.
pub fn torus_link_2_4(vertices_per_component: usize) -> Result<GeneratedConfig, GenerateError> {
    const MAJOR: f64 = 2.5;
    const MINOR: f64 = 1.0;
    let n = vertices_per_component.max(16);
    let mut comps = Vec::with_capacity(2);
    for j in 0..2 {
        let phase = PI * j as f64;
        comps.push(Component::new(
            (0..n)
                .map(|i| {
                    let t = 2.0 * PI * i as f64 / n as f64;
                    let w = MAJOR + MINOR * (2.0 * t + phase).cos();
                    Vec3::new(w * t.cos(), w * t.sin(), MINOR * (2.0 * t + phase).sin())
                })
                .collect(),
        )?);
    }
    let link = PolyLink::new(comps)?;
    let report = crate::thickness::thickness(&link);
    let link = link.scaled(1.0 / report.thickness);
    Ok(GeneratedConfig {
        claimed_ropelength: report.ropelength,
        link,
        claimed_thickness: 1.0,
        provenance: "torus-link(2,4) on R=2.5, r=1, rescaled to unit thickness; reference value, not tight".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn chain_lengths_match_formula() {
        for k in 2..=5 {
            let cfg = simple_chain(k, 512).unwrap();
            assert_eq!(cfg.link.num_components(), k);
            let expect = (4.0 * PI + 4.0) * k as f64 - 8.0;
            assert_relative_eq!(cfg.claimed_ropelength, expect, epsilon = 1e-12);
            // inscribed polygon length approaches the smooth value from below
            assert!(cfg.link.length() < expect);
            assert!((cfg.link.length() - expect).abs() / expect < 2e-4);
        }
    }

    #[test]
    fn chain_rejects_k1() {
        assert_eq!(simple_chain(1, 64).unwrap_err(), GenerateError::ChainTooShort(1));
    }

    #[test]
    fn enclosure_component_lengths() {
        for (n, peri) in [(1, 2.0 * PI), (2, 2.0 * PI + 4.0), (3, 2.0 * PI + 6.0), (4, 2.0 * PI + 8.0)] {
            let c = peri_component(n, 1024).unwrap();
            assert_relative_eq!(c.length(), 2.0 * PI + peri, max_relative = 2e-4);
        }
        assert!(matches!(peri_component(5, 64), Err(GenerateError::PeriOutOfRange(5))));
    }

    #[test]
    fn borromean_rhombus_identity() {
        // semi-diagonals satisfy the side-4 rhombus constraint
        let s7 = 7f64.sqrt();
        let (a, b) = (s7 + 1.0, s7 - 1.0);
        assert_relative_eq!(a * a + b * b, 16.0, epsilon = 1e-12);
        // diagonals q and q+4 with q = 2*sqrt(7) - 2 satisfy q^2 + (q+4)^2 = 64
        let q = 2.0 * b;
        assert_relative_eq!(q * q + (q + 4.0) * (q + 4.0), 64.0, epsilon = 1e-12);
        let cfg = borromean_rings(512).unwrap();
        assert!((cfg.claimed_ropelength - 58.05).abs() < 0.05);
        assert!((cfg.link.length() - cfg.claimed_ropelength).abs() / cfg.claimed_ropelength < 1e-3);
    }

    #[test]
    fn borromean_components_are_congruent_and_perpendicular() {
        let cfg = borromean_rings(96).unwrap();
        let comps = cfg.link.components();
        let len0 = comps[0].length();
        for c in comps {
            assert_relative_eq!(c.length(), len0, epsilon = 1e-9);
        }
        // each lies in a coordinate plane
        for (i, zero_axis) in [(0usize, 2usize), (1, 0), (2, 1)] {
            for v in comps[i].vertices() {
                assert!(v[zero_axis].abs() < 1e-12);
            }
        }
    }

    #[test]
    fn perturbed_zero_amplitude_is_identity() {
        let base = circle(64, 1.0);
        let p = perturbed(&base, 7, 0.0);
        assert_eq!(base, p);
        let q = perturbed(&base, 7, 0.1);
        assert_ne!(base, q);
        let q2 = perturbed(&base, 7, 0.1);
        assert_eq!(q, q2); // deterministic given seed
    }

    #[test]
    fn torus_link_has_two_components() {
        let cfg = torus_link_2_4(128).unwrap();
        assert_eq!(cfg.link.num_components(), 2);
        // normalized to unit thickness, so length equals ropelength
        assert!((cfg.link.length() - cfg.claimed_ropelength).abs() / cfg.claimed_ropelength < 1e-6);
        assert!(cfg.claimed_ropelength > 33.34 && cfg.claimed_ropelength < 45.0);
    }
}
