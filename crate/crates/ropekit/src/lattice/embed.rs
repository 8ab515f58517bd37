//! Diagram-to-lattice compiler.
//!
//! Crossings become plus-shaped gadgets on a doubled grid (understrand a
//! straight 3-point run at z = 0, overstrand crossing it at z = 1),
//! placed row-major with orientations alternating checkerboard-fashion so
//! neighboring gadgets interleave without vertex conflicts. Each of the 2n
//! diagram edges runs on its own private z-level, reached by vertical
//! risers at the gadget ports (with a one-step jog to a free column when a
//! riser would collide with a neighboring gadget). Paths at a level are
//! shortest lattice routes around the riser columns that pierce it.

use super::pd::{Diagram, Occurrence};
use super::{LatticeError, LatticeLink};
use std::collections::{HashMap, HashSet, VecDeque};

type P3 = [i64; 3];
type Col = [i64; 2];

#[derive(Debug, Clone, Copy)]
struct Gadget {
    cx: i64,
    cy: i64,
    rotated: bool,
}

impl Gadget {
    /// Port point for a PD slot (0 = a, 1 = b, 2 = c, 3 = d), arranged
    /// counterclockwise with the understrand entering at `a`.
    fn port(&self, slot: usize) -> P3 {
        let (x, y) = (self.cx, self.cy);
        if !self.rotated {
            match slot {
                0 => [x + 1, y, 0], // under in (east)
                1 => [x, y + 1, 1], // over (north)
                2 => [x - 1, y, 0], // under out (west)
                3 => [x, y - 1, 1], // over (south)
                _ => unreachable!(),
            }
        } else {
            match slot {
                0 => [x, y + 1, 0], // under in (north)
                1 => [x - 1, y, 1], // over (west)
                2 => [x, y - 1, 0], // under out (south)
                3 => [x + 1, y, 1], // over (east)
                _ => unreachable!(),
            }
        }
    }

    fn center(&self, over: bool) -> P3 {
        [self.cx, self.cy, if over { 1 } else { 0 }]
    }

    fn vertices(&self) -> [P3; 6] {
        [
            self.port(0),
            self.port(2),
            self.center(false),
            self.port(1),
            self.port(3),
            self.center(true),
        ]
    }
}

#[derive(Debug, Clone, Copy)]
struct EndPlan {
    port: P3,
    /// Column carrying the riser (port column, or the jog landing).
    riser_col: Col,
    jog: bool,
}

#[derive(Debug, Clone)]
struct EdgePlan {
    label: u32,
    level: i64,
    tail: EndPlan,
    head: EndPlan,
    path: Vec<Col>,
}

fn is_odd_odd(c: Col) -> bool {
    c[0].rem_euclid(2) == 1 && c[1].rem_euclid(2) == 1
}

/// z-interval (inclusive) occupied by an endpoint's vertical run.
fn riser_interval(plan: &EndPlan, level: i64) -> (i64, i64) {
    let z0 = plan.port[2];
    if plan.jog {
        // the jog column carries everything from the landing to the level
        (z0.min(level), z0.max(level))
    } else if level > 0 {
        (z0 + 1, level)
    } else {
        (level, z0 - 1)
    }
}

pub fn embed_lattice(d: &Diagram) -> Result<LatticeLink, LatticeError> {
    let n = d.crossing_count();
    let m0 = (n as f64).sqrt().ceil() as i64;
    let mut last = LatticeError::RouteBlocked { edge_label: 0 };
    for m in m0..=(m0 + 3).max(4) {
        match embed_with(d, m) {
            Ok(l) => return Ok(l),
            Err(e @ LatticeError::RouteBlocked { .. })
            | Err(e @ LatticeError::JogUnavailable { .. }) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

fn embed_with(d: &Diagram, m: i64) -> Result<LatticeLink, LatticeError> {
    let n = d.crossing_count();
    let gadgets: Vec<Gadget> = (0..n as i64)
        .map(|k| {
            let (u, v) = (k % m, k / m);
            Gadget {
                cx: 2 * u,
                cy: 2 * v,
                rotated: (u + v) % 2 == 1,
            }
        })
        .collect();
    let mut gadget_points: HashSet<P3> = HashSet::new();
    for g in &gadgets {
        for p in g.vertices() {
            if !gadget_points.insert(p) {
                return Err(LatticeError::Internal("gadget vertices collide"));
            }
        }
    }

    // routing bounds: gadget arms live in [-1, 2m-1]
    let (lo, hi) = (-1i64, 2 * m - 1);

    // edges in traversal order
    let edge_order: Vec<usize> = d.components.iter().flatten().copied().collect();

    // level assignment: under ends prefer below, over ends above
    let port_of = |occ: Occurrence| gadgets[occ.crossing].port(occ.slot);
    let mut levels: HashMap<usize, i64> = HashMap::new();
    let mut next_up = 2i64;
    let mut next_down = -1i64;
    let mut deferred: Vec<usize> = Vec::new();
    for &ei in &edge_order {
        let e = &d.edges[ei];
        let tz = port_of(e.tail)[2];
        let hz = port_of(e.head)[2];
        match (tz, hz) {
            (0, 0) => {
                levels.insert(ei, next_down);
                next_down -= 1;
            }
            (1, 1) => {
                levels.insert(ei, next_up);
                next_up += 1;
            }
            _ => deferred.push(ei),
        }
    }
    for &ei in &deferred {
        let up_left = (n as i64 + 1) - next_up + 1;
        let down_left = next_down - (-(n as i64)) + 1;
        if down_left >= up_left {
            levels.insert(ei, next_down);
            next_down -= 1;
        } else {
            levels.insert(ei, next_up);
            next_up += 1;
        }
    }

    // riser and jog allocation
    #[derive(Default)]
    struct ColumnUse {
        up: bool,
        down: bool,
        jog: bool,
    }
    let mut columns: HashMap<Col, ColumnUse> = HashMap::new();
    let mut plan_end = |occ: Occurrence,
                        level: i64,
                        columns: &mut HashMap<Col, ColumnUse>,
                        gadget_points: &HashSet<P3>|
     -> Result<EndPlan, LatticeError> {
        let port = port_of(occ);
        let col = [port[0], port[1]];
        let up = level > 0;
        // a direct riser must clear the other gadget layer and an unclaimed side
        let through = if up { [col[0], col[1], 1] } else { [col[0], col[1], 0] };
        let through_clear = port[2] == if up { 1 } else { 0 } || !gadget_points.contains(&through);
        let side_free = {
            let cu = columns.entry(col).or_default();
            !cu.jog && if up { !cu.up } else { !cu.down }
        };
        if through_clear && side_free {
            let cu = columns.get_mut(&col).unwrap();
            if up {
                cu.up = true;
            } else {
                cu.down = true;
            }
            return Ok(EndPlan {
                port,
                riser_col: col,
                jog: false,
            });
        }
        // jog to an adjacent free odd-odd column
        for cand in [
            [col[0] + 1, col[1]],
            [col[0] - 1, col[1]],
            [col[0], col[1] + 1],
            [col[0], col[1] - 1],
        ] {
            if !is_odd_odd(cand) || cand[0] < lo || cand[0] > hi || cand[1] < lo || cand[1] > hi {
                continue;
            }
            let cu = columns.entry(cand).or_default();
            if cu.jog || cu.up || cu.down {
                continue;
            }
            cu.jog = true;
            return Ok(EndPlan {
                port,
                riser_col: cand,
                jog: true,
            });
        }
        Err(LatticeError::JogUnavailable {
            crossing: occ.crossing,
            slot: occ.slot,
        })
    };

    let mut plans: HashMap<usize, EdgePlan> = HashMap::new();
    for &ei in &edge_order {
        let e = &d.edges[ei];
        let level = levels[&ei];
        let tail = plan_end(e.tail, level, &mut columns, &gadget_points)?;
        let head = plan_end(e.head, level, &mut columns, &gadget_points)?;
        plans.insert(
            ei,
            EdgePlan {
                label: e.label,
                level,
                tail,
                head,
                path: Vec::new(),
            },
        );
    }

    // route each edge at its private level, avoiding riser columns that
    // pierce the slab
    let order_snapshot: Vec<usize> = edge_order.clone();
    for &ei in &order_snapshot {
        let (level, start, goal) = {
            let p = &plans[&ei];
            (p.level, p.tail.riser_col, p.head.riser_col)
        };
        let mut blocked: HashSet<Col> = HashSet::new();
        for (&fj, fp) in plans.iter() {
            if fj == ei {
                continue;
            }
            for end in [&fp.tail, &fp.head] {
                let (zlo, zhi) = riser_interval(end, fp.level);
                if zlo <= level && level <= zhi {
                    blocked.insert(end.riser_col);
                }
            }
        }
        blocked.remove(&start);
        blocked.remove(&goal);
        let path = bfs(start, goal, &blocked, lo, hi)
            .ok_or(LatticeError::RouteBlocked { edge_label: plans[&ei].label })?;
        plans.get_mut(&ei).unwrap().path = path;
    }

    // geometry assembly
    let budget = 6 * n as i64;
    let mut edge_levels = Vec::new();
    let mut edge_lengths = Vec::new();
    let mut cycles = Vec::new();
    for comp in &d.components {
        let mut pts: Vec<P3> = Vec::new();
        for &ei in comp {
            let e = &d.edges[ei];
            let p = &plans[&ei];
            let before = pts.len();
            // tail port, optional jog landing
            pts.push(p.tail.port);
            if p.tail.jog {
                pts.push([p.tail.riser_col[0], p.tail.riser_col[1], p.tail.port[2]]);
            }
            // riser up/down to the level
            push_riser(&mut pts, p.tail.riser_col, p.tail.port[2], p.level);
            // path across the slab
            for c in p.path.iter().skip(1) {
                pts.push([c[0], c[1], p.level]);
            }
            // descend to the head
            push_riser(&mut pts, p.head.riser_col, p.level, p.head.port[2]);
            if p.head.jog {
                pts.push(p.head.port);
            }
            // steps from tail port to head port
            let steps = (pts.len() - before) as i64 - 1;
            if steps >= budget {
                return Err(LatticeError::EdgeBudget {
                    edge_label: e.label,
                    steps,
                    budget,
                });
            }
            edge_levels.push((e.label, p.level));
            edge_lengths.push((e.label, steps));
            // through the gadget at the head crossing
            let g = &gadgets[e.head.crossing];
            let over = e.head.slot == 1 || e.head.slot == 3;
            pts.push(g.center(over));
        }
        // dedupe consecutive duplicates and the seam
        let mut cycle: Vec<P3> = Vec::new();
        for p in pts {
            if cycle.last() != Some(&p) {
                cycle.push(p);
            }
        }
        if cycle.last() == Some(&cycle[0]) {
            cycle.pop();
        }
        cycles.push(cycle);
    }

    // translate to nonnegative coordinates
    let mut min = [i64::MAX; 3];
    for c in &cycles {
        for p in c {
            for k in 0..3 {
                min[k] = min[k].min(p[k]);
            }
        }
    }
    for c in cycles.iter_mut() {
        for p in c.iter_mut() {
            for k in 0..3 {
                p[k] -= min[k];
            }
        }
    }

    Ok(LatticeLink {
        cycles,
        edge_levels,
        edge_lengths,
        gadget_layers: [-min[2], 1 - min[2]],
        crossing_count: n,
    })
}

fn push_riser(pts: &mut Vec<P3>, col: Col, from_z: i64, to_z: i64) {
    if from_z == to_z {
        return;
    }
    let step = if to_z > from_z { 1 } else { -1 };
    let mut z = from_z;
    while z != to_z {
        z += step;
        pts.push([col[0], col[1], z]);
    }
}

fn bfs(start: Col, goal: Col, blocked: &HashSet<Col>, lo: i64, hi: i64) -> Option<Vec<Col>> {
    if start == goal {
        return Some(vec![start]);
    }
    let mut prev: HashMap<Col, Col> = HashMap::new();
    let mut seen: HashSet<Col> = HashSet::new();
    let mut q = VecDeque::new();
    seen.insert(start);
    q.push_back(start);
    while let Some(c) = q.pop_front() {
        for d in [[1i64, 0], [-1, 0], [0, 1], [0, -1]] {
            let nb = [c[0] + d[0], c[1] + d[1]];
            if nb[0] < lo || nb[0] > hi || nb[1] < lo || nb[1] > hi {
                continue;
            }
            if blocked.contains(&nb) || seen.contains(&nb) {
                continue;
            }
            seen.insert(nb);
            prev.insert(nb, c);
            if nb == goal {
                let mut path = vec![goal];
                let mut cur = goal;
                while cur != start {
                    cur = prev[&cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            q.push_back(nb);
        }
    }
    None
}
