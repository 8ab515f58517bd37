//! Ropelength descent in the shrink-while-avoiding-overlaps style: equalize
//! edges, smooth (which shortens), push apart contact pairs that violate
//! the tube separation, cap turning angles, renormalize to unit thickness,
//! and accept only steps that do not increase ropelength.
//!
//! Thickness enforcement mirrors the two-term thickness decomposition:
//! the turning-angle cap controls the radius of curvature, the pairwise
//! pushes control the doubly critical self-distance.

use crate::geom::{segment_segment_closest, Component, PolyLink, Vec3};
use crate::thickness::{min_nonadjacent_distance, thickness};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MinimizeError {
    #[error("start configuration is not embedded (zero thickness or touching strands)")]
    NotEmbedded,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MinimizeParams {
    pub max_iter: usize,
    /// Initial smoothing step scale (adapted during the run).
    pub step_scale: f64,
    /// Thickness slack: accepted states keep thickness >= 1 - tolerance.
    pub overlap_tolerance: f64,
    /// Re-equalize edge lengths every this many iterations.
    pub equalize_cadence: usize,
    pub seed: u64,
    /// Stop when the relative ropelength decrease over this many accepted
    /// iterations falls below `stagnation_rel`.
    pub stagnation_window: usize,
    pub stagnation_rel: f64,
}

impl Default for MinimizeParams {
    fn default() -> Self {
        MinimizeParams {
            max_iter: 20_000,
            step_scale: 0.25,
            overlap_tolerance: 1e-3,
            equalize_cadence: 25,
            seed: 0,
            stagnation_window: 100,
            stagnation_rel: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct HistoryEntry {
    pub iteration: usize,
    pub length: f64,
    pub thickness: f64,
    pub ropelength: f64,
}

#[derive(Debug, Clone)]
pub struct MinimizerState {
    pub current: PolyLink,
    pub target_thickness: f64,
    pub step_scale: f64,
    pub iteration: usize,
    pub history: Vec<HistoryEntry>,
    /// Set when the run stopped on its stagnation rule rather than on
    /// `max_iter`.
    pub stagnated: bool,
}

impl MinimizerState {
    /// Line-delimited trajectory: `iteration length thickness ropelength`.
    pub fn write_trajectory(&self, mut w: impl std::io::Write) -> std::io::Result<()> {
        for h in &self.history {
            writeln!(w, "{} {} {} {}", h.iteration, h.length, h.thickness, h.ropelength)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepDecision {
    Accept { ropelength: f64 },
    Reject { reason: StepReject },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepReject {
    ThicknessViolated,
    RopelengthIncreased,
    CrossingRisk,
}

/// Accept a proposal iff its (normalized) thickness meets the target within
/// tolerance, ropelength does not increase, and no strand can have crossed
/// (every vertex moved less than half the previous minimum separation).
pub fn check_step(state: &MinimizerState, proposed: &PolyLink, tol: f64) -> StepDecision {
    let rep = thickness(proposed);
    if rep.thickness <= 0.0 {
        return StepDecision::Reject {
            reason: StepReject::ThicknessViolated,
        };
    }
    let normalized_rl = rep.ropelength;
    if rep.thickness < state.target_thickness * (1.0 - tol) {
        // scale-invariant check: a proposal is only ruled out when its
        // shape, rescaled to target thickness, is worse; but a raw
        // thickness collapse (crossing) must be caught
        if rep.thickness < state.target_thickness * 0.5 {
            return StepDecision::Reject {
                reason: StepReject::ThicknessViolated,
            };
        }
    }
    let current_rl = {
        let r = thickness(&state.current);
        r.ropelength
    };
    if normalized_rl > current_rl * (1.0 + 1e-12) {
        return StepDecision::Reject {
            reason: StepReject::RopelengthIncreased,
        };
    }
    // crossing guard: displacement bound against the previous separation
    if proposed.num_components() == state.current.num_components() {
        let mut max_disp: f64 = 0.0;
        let mut comparable = true;
        for (a, b) in state
            .current
            .components()
            .iter()
            .zip(proposed.components())
        {
            if a.len() != b.len() {
                comparable = false;
                break;
            }
            for i in 0..a.len() {
                max_disp = max_disp.max((a.vertex(i) - b.vertex(i)).norm());
            }
        }
        if comparable {
            let gap = min_nonadjacent_distance(&state.current);
            let contact_gap = gap.max(2.0 * state.target_thickness * 0.5);
            if max_disp >= contact_gap {
                return StepDecision::Reject {
                    reason: StepReject::CrossingRisk,
                };
            }
        }
    }
    StepDecision::Accept {
        ropelength: normalized_rl,
    }
}

/// One proposal: optional edge equalization, Laplacian smoothing, overlap
/// pushes, turning-angle cap.
fn propose(link: &PolyLink, lambda: f64, equalize: bool, target: f64, tol: f64) -> PolyLink {
    let mut comps: Vec<Vec<Vec3>> = link
        .components()
        .iter()
        .map(|c| c.vertices().to_vec())
        .collect();

    if equalize {
        for (ci, c) in link.components().iter().enumerate() {
            if let Ok(r) = c.resampled(c.len()) {
                comps[ci] = r.vertices().to_vec();
            }
        }
    }

    // smoothing: move toward neighbor midpoints (shrinks length)
    let cap = 0.2 * target;
    for verts in comps.iter_mut() {
        let n = verts.len();
        let old = verts.clone();
        for i in 0..n {
            let mid = (old[(i + n - 1) % n] + old[(i + 1) % n]) * 0.5;
            let mut d = (mid - old[i]) * lambda;
            let dn = d.norm();
            if dn > cap {
                d *= cap / dn;
            }
            verts[i] += d;
        }
    }

    // overlap removal between contact pairs: non-adjacent segments either
    // on different components or separated along the curve by more than
    // the arc a curvature-bounded tube can close (pi * target)
    let separation = 2.0 * target * (1.0 - tol * 0.5);
    let push_cap = 0.1 * target;
    for _pass in 0..8 {
        let mut pushes: Vec<(usize, usize, Vec3)> = Vec::new(); // comp, vertex, displacement
        let mut any = false;
        let lens: Vec<f64> = comps
            .iter()
            .map(|v| {
                let n = v.len();
                (0..n).map(|i| (v[(i + 1) % n] - v[i]).norm()).sum()
            })
            .collect();
        for ci in 0..comps.len() {
            let na = comps[ci].len();
            let edge_a = lens[ci] / na as f64;
            for cj in ci..comps.len() {
                let nb = comps[cj].len();
                for i in 0..na {
                    let jstart = if ci == cj { i + 2 } else { 0 };
                    for j in jstart..nb {
                        if ci == cj {
                            if i == 0 && j == nb - 1 {
                                continue;
                            }
                            // skip curvature-local pairs
                            let arc = (j - i).min(na - (j - i)) as f64 * edge_a;
                            if arc <= 3.3 * target {
                                continue;
                            }
                        }
                        let (a0, a1) = (comps[ci][i], comps[ci][(i + 1) % na]);
                        let (b0, b1) = (comps[cj][j], comps[cj][(j + 1) % nb]);
                        let (d, s, t) = segment_segment_closest(a0, a1, b0, b1);
                        if d >= separation || d <= 0.0 {
                            continue;
                        }
                        any = true;
                        let p = a0 + (a1 - a0) * s;
                        let q = b0 + (b1 - b0) * t;
                        let dir = (p - q) / d;
                        let need = ((separation - d) * 0.5).min(push_cap);
                        pushes.push((ci, i, dir * (need * (1.0 - s))));
                        pushes.push((ci, (i + 1) % na, dir * (need * s)));
                        pushes.push((cj, j, -dir * (need * (1.0 - t))));
                        pushes.push((cj, (j + 1) % nb, -dir * (need * t)));
                    }
                }
            }
        }
        if !any {
            break;
        }
        for (ci, i, d) in pushes {
            comps[ci][i] += d;
        }
    }

    // turning-angle cap: enforce polygonal minRad >= target
    for _pass in 0..4 {
        let mut fixed = true;
        for verts in comps.iter_mut() {
            let n = verts.len();
            let old = verts.clone();
            for i in 0..n {
                let prev = old[(i + n - 1) % n];
                let next = old[(i + 1) % n];
                let e1 = old[i] - prev;
                let e2 = next - old[i];
                let (l1, l2) = (e1.norm(), e2.norm());
                if l1 == 0.0 || l2 == 0.0 {
                    continue;
                }
                let cosang = (e1.dot(&e2) / (l1 * l2)).clamp(-1.0, 1.0);
                let theta = cosang.acos();
                let limit = 2.0 * (l1.min(l2) / (2.0 * target)).atan();
                if theta > limit {
                    let mid = (prev + next) * 0.5;
                    verts[i] = old[i] * 0.5 + mid * 0.5;
                    fixed = false;
                }
            }
        }
        if fixed {
            break;
        }
    }

    let comps = comps
        .into_iter()
        .map(|v| Component::new(v).expect("minimizer steps keep vertices distinct"))
        .collect();
    PolyLink::new(comps).expect("non-empty")
}

/// Shrink the link while maintaining unit thickness. Returns the best
/// configuration found (normalized to thickness 1) and the run state.
pub fn minimize(
    start: &PolyLink,
    params: &MinimizeParams,
) -> Result<(PolyLink, MinimizerState), MinimizeError> {
    let rep = thickness(start);
    if rep.thickness <= 0.0 || !rep.thickness.is_finite() {
        return Err(MinimizeError::NotEmbedded);
    }
    if min_nonadjacent_distance(start) <= 0.0 {
        return Err(MinimizeError::NotEmbedded);
    }
    let target = 1.0;
    let mut current = start.scaled(target / rep.thickness);
    let mut current_rl = thickness(&current).ropelength;
    let mut lambda = params.step_scale;
    let mut history = vec![HistoryEntry {
        iteration: 0,
        length: current.length(),
        thickness: thickness(&current).thickness,
        ropelength: current_rl,
    }];
    let mut best = current.clone();
    let mut best_rl = current_rl;
    let mut stagnated = false;

    let mut iter = 0usize;
    while iter < params.max_iter {
        iter += 1;
        let equalize = iter % params.equalize_cadence == 0;
        let proposal = propose(&current, lambda, equalize, target, params.overlap_tolerance);
        let prep = thickness(&proposal);
        let ok = prep.thickness > 0.0
            && prep.ropelength <= current_rl * (1.0 + 1e-12)
            && prep.thickness >= target * 0.5;
        if ok {
            // renormalize to unit thickness; ropelength is scale-invariant
            current = proposal.scaled(target / prep.thickness);
            current_rl = prep.ropelength;
            let tau_now = thickness(&current).thickness;
            history.push(HistoryEntry {
                iteration: iter,
                length: current.length(),
                thickness: tau_now,
                ropelength: current_rl,
            });
            if current_rl < best_rl {
                best_rl = current_rl;
                best = current.clone();
            }
            lambda = (lambda * 1.2).min(params.step_scale);
            // stagnation rule
            if history.len() > params.stagnation_window {
                let past = &history[history.len() - 1 - params.stagnation_window];
                if (past.ropelength - current_rl) / current_rl.max(1e-300)
                    < params.stagnation_rel
                {
                    stagnated = true;
                    break;
                }
            }
        } else {
            lambda *= 0.5;
            if lambda < 1e-8 {
                stagnated = true;
                break;
            }
        }
    }

    let state = MinimizerState {
        current: best.clone(),
        target_thickness: target,
        step_scale: lambda,
        iteration: iter,
        history,
        stagnated,
    };
    Ok((best, state))
}
