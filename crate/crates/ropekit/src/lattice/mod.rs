//! Cubic-lattice embeddings of link diagrams with certified length bounds,
//! plus corner rounding to a thick curve.

mod embed;
pub mod pd;

pub use embed::embed_lattice;
pub use pd::{braid_to_pd, parse_pd, Diagram, PdError};

use crate::geom::{Component, PolyLink, Vec3};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum LatticeError {
    #[error("no free jog column next to crossing {crossing} slot {slot}")]
    JogUnavailable { crossing: usize, slot: usize },
    #[error("no route for edge {edge_label} at its level")]
    RouteBlocked { edge_label: u32 },
    #[error("edge {edge_label} takes {steps} steps, at or over the 6n budget {budget}")]
    EdgeBudget { edge_label: u32, steps: i64, budget: i64 },
    #[error("internal construction invariant broken: {0}")]
    Internal(&'static str),
}

/// A closed self-avoiding cycle collection in the integer lattice with
/// per-edge level bookkeeping.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeLink {
    /// One closed cycle of lattice points per link component (unit steps,
    /// no repeated final vertex).
    pub cycles: Vec<Vec<[i64; 3]>>,
    /// Diagram edge label -> private z-level of its horizontal run.
    pub edge_levels: Vec<(u32, i64)>,
    /// Diagram edge label -> lattice steps used by its route.
    pub edge_lengths: Vec<(u32, i64)>,
    /// The two z-layers hosting the crossing gadgets.
    pub gadget_layers: [i64; 2],
    pub crossing_count: usize,
}

impl LatticeLink {
    pub fn total_length(&self) -> usize {
        self.cycles.iter().map(|c| c.len()).sum()
    }

    pub fn bounding_span(&self) -> [i64; 3] {
        let mut lo = [i64::MAX; 3];
        let mut hi = [i64::MIN; 3];
        for c in &self.cycles {
            for p in c {
                for k in 0..3 {
                    lo[k] = lo[k].min(p[k]);
                    hi[k] = hi[k].max(p[k]);
                }
            }
        }
        [hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]]
    }

    pub fn translated(&self, d: [i64; 3]) -> LatticeLink {
        let mut out = self.clone();
        for c in out.cycles.iter_mut() {
            for p in c.iter_mut() {
                for k in 0..3 {
                    p[k] += d[k];
                }
            }
        }
        out.gadget_layers = [self.gadget_layers[0] + d[2], self.gadget_layers[1] + d[2]];
        out
    }
}

/// Independent re-verification of a lattice embedding.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeReport {
    pub unit_steps: bool,
    pub closed: bool,
    pub self_avoiding: bool,
    pub bounding_span: [i64; 3],
    pub box_limit: [i64; 3],
    pub within_box: bool,
    pub total_length: usize,
    pub length_under_12n2: bool,
    pub per_edge_under_6n: bool,
    pub level_privacy: bool,
}

impl LatticeReport {
    pub fn pass(&self) -> bool {
        self.unit_steps
            && self.closed
            && self.self_avoiding
            && self.within_box
            && self.length_under_12n2
            && self.per_edge_under_6n
            && self.level_privacy
    }
}

/// Check unit steps, closure, global self-avoidance, the bounding box, the
/// length budgets, and level privacy, all recomputed from the raw cycles.
pub fn verify_lattice(l: &LatticeLink) -> LatticeReport {
    let n = l.crossing_count as i64;
    let mut unit_steps = true;
    let mut closed = true;
    let mut seen: HashSet<[i64; 3]> = HashSet::new();
    let mut self_avoiding = true;
    for cycle in &l.cycles {
        if cycle.len() < 4 {
            closed = false;
        }
        for i in 0..cycle.len() {
            let a = cycle[i];
            let b = cycle[(i + 1) % cycle.len()];
            let d: i64 = (0..3).map(|k| (a[k] - b[k]).abs()).sum();
            if d != 1 {
                unit_steps = false;
            }
            if !seen.insert(a) {
                self_avoiding = false;
            }
        }
    }
    let span = l.bounding_span();
    // the paper-style box presumes n >= 3; tiny diagrams cannot fit two
    // gadgets in a 2x2 footprint, so the x/y limit floors at 4
    let box_limit = [
        (2 * n - 2).max(4),
        (2 * n - 2).max(4),
        (2 * n + 2).max(4),
    ];
    let within_box = (0..3).all(|k| span[k] <= box_limit[k]);
    let total = l.total_length();
    let length_under_12n2 = (total as i64) < 12 * n * n;
    let per_edge_under_6n = l.edge_lengths.iter().all(|&(_, s)| s < 6 * n);

    // level privacy: horizontal steps in any private slab (|z| >= 2 or
    // z <= -1) must form a single connected run (one edge's route)
    let mut by_level: HashMap<i64, Vec<([i64; 3], [i64; 3])>> = HashMap::new();
    for cycle in &l.cycles {
        for i in 0..cycle.len() {
            let a = cycle[i];
            let b = cycle[(i + 1) % cycle.len()];
            if a[2] == b[2] {
                by_level.entry(a[2]).or_default().push((a, b));
            }
        }
    }
    let gadget_layers: HashSet<i64> = l.gadget_layers.iter().copied().collect();
    let mut level_privacy = true;
    for (z, steps) in &by_level {
        if gadget_layers.contains(z) {
            continue;
        }
        // connected components over shared endpoints
        let mut adj: HashMap<[i64; 3], Vec<usize>> = HashMap::new();
        for (i, (a, b)) in steps.iter().enumerate() {
            adj.entry(*a).or_default().push(i);
            adj.entry(*b).or_default().push(i);
        }
        let mut visited = vec![false; steps.len()];
        let mut stack = vec![0usize];
        visited[0] = true;
        while let Some(i) = stack.pop() {
            let (a, b) = steps[i];
            for p in [a, b] {
                for &j in &adj[&p] {
                    if !visited[j] {
                        visited[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
        if visited.iter().any(|v| !v) {
            level_privacy = false;
        }
    }

    LatticeReport {
        unit_steps,
        closed,
        self_avoiding,
        bounding_span: span,
        box_limit,
        within_box,
        total_length: total,
        length_under_12n2,
        per_edge_under_6n,
        level_privacy,
    }
}

/// Certificate accompanying a smoothed lattice curve.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SmoothCertificate {
    pub lattice_length: usize,
    pub smoothed_length: f64,
    pub measured_thickness: f64,
    pub measured_ropelength: f64,
    /// `2 * lattice length`, the certified ropelength bound.
    pub twice_lattice_length: f64,
    /// `24 n^2` when the crossing count is known.
    pub bound_24n2: f64,
}

/// Replace every 90-degree lattice corner with a sampled quarter-circle of
/// radius 1/2, keeping straight runs. The result is a curve of thickness
/// about 1/2 and length strictly below the lattice length.
pub fn smooth_corners(l: &LatticeLink) -> Result<(PolyLink, SmoothCertificate), LatticeError> {
    const ARC_SAMPLES: usize = 32;
    let mut comps = Vec::with_capacity(l.cycles.len());
    for cycle in &l.cycles {
        let n = cycle.len();
        if n < 4 {
            return Err(LatticeError::Internal("cycle too short to smooth"));
        }
        let fp = |p: [i64; 3]| Vec3::new(p[0] as f64, p[1] as f64, p[2] as f64);
        let dir = |i: usize| fp(cycle[(i + 1) % n]) - fp(cycle[i]);
        let mut pts: Vec<Vec3> = Vec::new();
        for i in 0..n {
            let a = dir((i + n - 1) % n);
            let b = dir(i);
            let v = fp(cycle[i]);
            if (a - b).norm() < 1e-9 {
                // straight run: keep the lattice vertex
                pts.push(v);
            } else {
                // corner: quarter circle of radius 1/2 from v - a/2 to v + b/2
                let center = v + (b - a) * 0.5;
                for j in 0..=ARC_SAMPLES {
                    let t = std::f64::consts::FRAC_PI_2 * j as f64 / ARC_SAMPLES as f64;
                    pts.push(center + (-b * t.cos() + a * t.sin()) * 0.5);
                }
            }
        }
        // drop consecutive duplicates (adjacent corners share arc endpoints)
        let mut dedup: Vec<Vec3> = Vec::new();
        for p in pts {
            if dedup.last().map_or(true, |q| (q - p).norm() > 1e-9) {
                dedup.push(p);
            }
        }
        while dedup.len() > 1
            && (dedup[0] - *dedup.last().unwrap()).norm() <= 1e-9
        {
            dedup.pop();
        }
        comps.push(Component::new(dedup).map_err(|_| {
            LatticeError::Internal("smoothing produced a degenerate polygon")
        })?);
    }
    let link = PolyLink::new(comps).map_err(|_| LatticeError::Internal("empty link"))?;
    let rep = crate::thickness::thickness(&link);
    let n = l.crossing_count as f64;
    let cert = SmoothCertificate {
        lattice_length: l.total_length(),
        smoothed_length: link.length(),
        measured_thickness: rep.thickness,
        measured_ropelength: rep.ropelength,
        twice_lattice_length: 2.0 * l.total_length() as f64,
        bound_24n2: 24.0 * n * n,
    };
    Ok((link, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::linking_number_gauss;

    fn compile(text: &str) -> (Diagram, LatticeLink) {
        let d = parse_pd(text).unwrap();
        let l = embed_lattice(&d).unwrap();
        (d, l)
    }

    #[test]
    fn trefoil_embeds_and_verifies() {
        let (_, l) = compile(pd::corpus::TREFOIL);
        let rep = verify_lattice(&l);
        assert!(rep.pass(), "{rep:?}");
        assert!(rep.total_length < 108, "length {}", rep.total_length);
        assert_eq!(l.cycles.len(), 1);
    }

    #[test]
    fn corpus_embeds_and_verifies() {
        for text in [
            pd::corpus::TREFOIL.to_string(),
            pd::corpus::hopf(),
            pd::corpus::figure_eight(),
            pd::corpus::k5_1(),
            pd::corpus::k5_2(),
            pd::corpus::unknot_one_crossing().to_string(),
        ] {
            let (d, l) = compile(&text);
            let rep = verify_lattice(&l);
            assert!(rep.pass(), "pd {text}: {rep:?}");
            let n = d.crossing_count();
            assert!(rep.total_length < 12 * n * n, "pd {text}");
        }
    }

    #[test]
    fn embedding_is_deterministic() {
        let d = parse_pd(pd::corpus::TREFOIL).unwrap();
        let a = embed_lattice(&d).unwrap();
        let b = embed_lattice(&d).unwrap();
        assert_eq!(a.cycles, b.cycles);
    }

    #[test]
    fn verifier_flags_corruption() {
        let (_, l) = compile(pd::corpus::TREFOIL);
        let mut bad = l.clone();
        let dup = bad.cycles[0][0];
        let len = bad.cycles[0].len();
        bad.cycles[0][len / 2] = dup;
        let rep = verify_lattice(&bad);
        assert!(!rep.self_avoiding || !rep.unit_steps);
    }

    #[test]
    fn verifier_accepts_translation() {
        let (_, l) = compile(pd::corpus::TREFOIL);
        let moved = l.translated([7, -3, 11]);
        assert!(verify_lattice(&moved).pass());
    }

    #[test]
    fn hopf_lattice_linking_matches_diagram() {
        let (d, l) = compile(&pd::corpus::hopf());
        assert_eq!(l.cycles.len(), 2);
        let (link, _) = smooth_corners(&l).unwrap();
        let gauss = linking_number_gauss(link.component(0), link.component(1)).unwrap();
        let expected = d.linking_matrix()[0][1];
        assert_eq!(
            gauss.rounded, expected,
            "gauss {} vs diagram {}",
            gauss.raw, expected
        );
        assert_eq!(gauss.rounded.abs(), 1);
    }

    #[test]
    fn smoothing_certificate_on_trefoil() {
        let (_, l) = compile(pd::corpus::TREFOIL);
        let (link, cert) = smooth_corners(&l).unwrap();
        assert!(cert.measured_thickness >= 0.5 - 1e-3, "{}", cert.measured_thickness);
        assert!(cert.smoothed_length < cert.lattice_length as f64);
        assert!(cert.measured_ropelength <= cert.twice_lattice_length);
        assert!(cert.twice_lattice_length <= cert.bound_24n2);
        assert!(cert.measured_ropelength <= 216.0);
        // knotted output: total curvature at least 4*pi
        let tc = crate::invariants::total_curvature(link.component(0));
        assert!(tc >= 4.0 * std::f64::consts::PI, "total curvature {tc}");
    }

    #[test]
    fn smoothing_unit_square() {
        let l = LatticeLink {
            cycles: vec![vec![[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0]]],
            edge_levels: vec![],
            edge_lengths: vec![],
            gadget_layers: [0, 1],
            crossing_count: 1,
        };
        let (link, cert) = smooth_corners(&l).unwrap();
        assert!(cert.smoothed_length < 4.0);
        let rep = crate::thickness::thickness(&link);
        assert!(rep.thickness >= 0.5 - 1e-3, "thickness {}", rep.thickness);
    }

    #[test]
    fn figure_eight_sandwich() {
        let (d, l) = compile(&pd::corpus::figure_eight());
        let n = d.crossing_count();
        assert!(l.total_length() < 12 * n * n);
        let (_, cert) = smooth_corners(&l).unwrap();
        let lower = crate::bounds::bound_crossing_asymptotic(n);
        assert!(cert.measured_ropelength >= lower);
        assert!(cert.measured_ropelength <= 24.0 * (n * n) as f64);
    }
}
