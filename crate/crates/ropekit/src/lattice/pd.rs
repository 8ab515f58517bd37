//! Planar-diagram (PD) codes: parsing, traversal, and a braid-closure
//! generator for test fixtures.
//!
//! A crossing `X[a,b,c,d]` lists its four arc labels counterclockwise
//! starting from the incoming understrand: the understrand runs `a -> c`,
//! the overstrand occupies `b` and `d` (direction fixed by the traversal).

use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum PdError {
    #[error("empty PD input")]
    Empty,
    #[error("malformed crossing token: {0}")]
    Malformed(String),
    #[error("arc label {label} appears {count} times (must be exactly 2)")]
    BadArcCount { label: u32, count: usize },
    #[error("inconsistent orientation: arc {0} would need two heads")]
    OrientationConflict(u32),
    #[error("traversal did not cover every arc")]
    Disconnected,
}

/// Slot of an arc occurrence inside a crossing: 0 = a, 1 = b, 2 = c, 3 = d.
pub type Slot = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Occurrence {
    pub crossing: usize,
    pub slot: Slot,
}

/// One diagram edge (an arc of the PD code) with a resolved direction.
#[derive(Debug, Clone, Copy)]
pub struct Edge {
    pub label: u32,
    /// Where the arc leaves its crossing.
    pub tail: Occurrence,
    /// Where the arc enters the next crossing.
    pub head: Occurrence,
}

#[derive(Debug, Clone)]
pub struct Diagram {
    pub crossings: Vec<[u32; 4]>,
    pub edges: Vec<Edge>,
    /// Components as cycles of indices into `edges`, in traversal order.
    pub components: Vec<Vec<usize>>,
}

impl Diagram {
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn edge_by_label(&self, label: u32) -> Option<&Edge> {
        self.edges.iter().find(|e| e.label == label)
    }

    /// Component index owning each edge.
    pub fn edge_component(&self, edge_idx: usize) -> usize {
        self.components
            .iter()
            .position(|c| c.contains(&edge_idx))
            .expect("every edge belongs to a component")
    }

    /// Signed crossing sum between distinct components, halved: the
    /// pairwise linking numbers the diagram presents.
    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let ncomp = self.components.len();
        let mut twice = vec![vec![0i64; ncomp]; ncomp];
        let edge_idx_at = |occ: Occurrence| -> usize {
            let label = self.crossings[occ.crossing][occ.slot];
            self.edges.iter().position(|e| e.label == label).unwrap()
        };
        for (ci, _x) in self.crossings.iter().enumerate() {
            let under_edge = edge_idx_at(Occurrence { crossing: ci, slot: 0 });
            // the over strand enters at b or d; its head occurrence tells
            let b_edge = edge_idx_at(Occurrence { crossing: ci, slot: 1 });
            let d_edge = edge_idx_at(Occurrence { crossing: ci, slot: 3 });
            let over_in_b = self.edges[b_edge].head == (Occurrence { crossing: ci, slot: 1 });
            let over_edge = if over_in_b { b_edge } else { d_edge };
            let cu = self.edge_component(under_edge);
            let co = self.edge_component(over_edge);
            if cu == co {
                continue;
            }
            // germs: under runs a -> c (east to west), over runs b -> d
            // (north to south) when it enters at b, else south to north;
            // sign = z-component of (over x under)
            let sign = if over_in_b { 1 } else { -1 };
            twice[cu][co] += sign;
            twice[co][cu] += sign;
        }
        twice
            .into_iter()
            .map(|row| row.into_iter().map(|v| v / 2).collect())
            .collect()
    }
}

/// Parse whitespace-separated `X[a,b,c,d]` tokens.
pub fn parse_pd(text: &str) -> Result<Diagram, PdError> {
    let mut crossings = Vec::new();
    for token in text.split_whitespace() {
        let inner = token
            .strip_prefix("X[")
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| PdError::Malformed(token.to_string()))?;
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 4 {
            return Err(PdError::Malformed(token.to_string()));
        }
        let mut x = [0u32; 4];
        for (i, p) in parts.iter().enumerate() {
            x[i] = p
                .trim()
                .parse()
                .map_err(|_| PdError::Malformed(token.to_string()))?;
        }
        crossings.push(x);
    }
    if crossings.is_empty() {
        return Err(PdError::Empty);
    }
    build_diagram(crossings)
}

fn build_diagram(crossings: Vec<[u32; 4]>) -> Result<Diagram, PdError> {
    // collect occurrences
    let mut occ: HashMap<u32, Vec<Occurrence>> = HashMap::new();
    for (ci, x) in crossings.iter().enumerate() {
        for (slot, &label) in x.iter().enumerate() {
            occ.entry(label).or_default().push(Occurrence { crossing: ci, slot });
        }
    }
    for (&label, v) in &occ {
        if v.len() != 2 {
            return Err(PdError::BadArcCount { label, count: v.len() });
        }
    }

    // resolve orientation: slot a is a head, slot c a tail; b/d slots pair
    // up (one head, one tail per crossing). Propagate constraints.
    #[derive(Clone, Copy, PartialEq)]
    enum Kind {
        Head,
        Tail,
    }
    let mut kind: HashMap<Occurrence, Kind> = HashMap::new();
    let mut queue: Vec<(Occurrence, Kind)> = Vec::new();
    for (ci, _) in crossings.iter().enumerate() {
        queue.push((Occurrence { crossing: ci, slot: 0 }, Kind::Head));
        queue.push((Occurrence { crossing: ci, slot: 2 }, Kind::Tail));
    }
    let other_occ = |o: Occurrence| -> Occurrence {
        let label = crossings[o.crossing][o.slot];
        let v = &occ[&label];
        if v[0] == o {
            v[1]
        } else {
            v[0]
        }
    };
    while let Some((o, k)) = queue.pop() {
        match kind.get(&o) {
            Some(&existing) => {
                if existing != k {
                    return Err(PdError::OrientationConflict(crossings[o.crossing][o.slot]));
                }
                continue;
            }
            None => {
                kind.insert(o, k);
            }
        }
        // the arc's other occurrence has the opposite kind
        let opposite = if k == Kind::Head { Kind::Tail } else { Kind::Head };
        queue.push((other_occ(o), opposite));
        // within a crossing, slots b and d carry one head and one tail
        if o.slot == 1 || o.slot == 3 {
            let partner = Occurrence {
                crossing: o.crossing,
                slot: 4 - o.slot,
            };
            queue.push((partner, opposite));
        }
    }
    // components that never go under leave free b/d pairs; orient them
    // arbitrarily and propagate
    loop {
        let mut free = None;
        'outer: for (ci, _) in crossings.iter().enumerate() {
            for slot in [1usize, 3] {
                let o = Occurrence { crossing: ci, slot };
                if !kind.contains_key(&o) {
                    free = Some(o);
                    break 'outer;
                }
            }
        }
        let Some(start) = free else { break };
        queue.push((start, Kind::Head));
        while let Some((o, k)) = queue.pop() {
            match kind.get(&o) {
                Some(&existing) => {
                    if existing != k {
                        return Err(PdError::OrientationConflict(
                            crossings[o.crossing][o.slot],
                        ));
                    }
                    continue;
                }
                None => {
                    kind.insert(o, k);
                }
            }
            let opposite = if k == Kind::Head { Kind::Tail } else { Kind::Head };
            queue.push((other_occ(o), opposite));
            if o.slot == 1 || o.slot == 3 {
                let partner = Occurrence {
                    crossing: o.crossing,
                    slot: 4 - o.slot,
                };
                queue.push((partner, opposite));
            }
        }
    }

    // build directed edges
    let mut labels: Vec<u32> = occ.keys().copied().collect();
    labels.sort_unstable();
    let mut edges = Vec::with_capacity(labels.len());
    for &label in &labels {
        let v = &occ[&label];
        let (head, tail) = match (kind[&v[0]], kind[&v[1]]) {
            (Kind::Head, Kind::Tail) => (v[0], v[1]),
            (Kind::Tail, Kind::Head) => (v[1], v[0]),
            _ => return Err(PdError::OrientationConflict(label)),
        };
        edges.push(Edge { label, tail, head });
    }
    let index_by_label: HashMap<u32, usize> =
        edges.iter().enumerate().map(|(i, e)| (e.label, i)).collect();

    // traversal: entering a crossing at `head`, exit via the partner slot
    let exit_slot = |slot: Slot| -> Slot {
        match slot {
            0 => 2,
            2 => 0,
            1 => 3,
            3 => 1,
            _ => unreachable!(),
        }
    };
    let mut visited = vec![false; edges.len()];
    let mut components = Vec::new();
    for start in 0..edges.len() {
        if visited[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut cur = start;
        loop {
            visited[cur] = true;
            cycle.push(cur);
            let head = edges[cur].head;
            let out = Occurrence {
                crossing: head.crossing,
                slot: exit_slot(head.slot),
            };
            let next_label = crossings[out.crossing][out.slot];
            let next = index_by_label[&next_label];
            if edges[next].tail != out {
                return Err(PdError::OrientationConflict(next_label));
            }
            if next == start {
                break;
            }
            if visited[next] {
                return Err(PdError::Disconnected);
            }
            cur = next;
        }
        components.push(cycle);
    }

    Ok(Diagram {
        crossings,
        edges,
        components,
    })
}

/// PD code of the closure of a braid word on `strands` strands. Letter
/// `+i` crosses strand at position `i` over position `i+1`; `-i` crosses
/// it under. Positions are 1-based; every strand must be involved.
pub fn braid_to_pd(word: &[i32], strands: usize) -> Result<String, PdError> {
    assert!(strands >= 2);
    let mut next = 1u32;
    let mut fresh = || {
        let v = next;
        next += 1;
        v
    };
    let init: Vec<u32> = (0..strands).map(|_| fresh()).collect();
    let mut current = init.clone();
    let mut crossings: Vec<[u32; 4]> = Vec::new();
    for &letter in word {
        let i = letter.unsigned_abs() as usize;
        assert!(i >= 1 && i < strands, "letter out of range");
        let (left, right) = (current[i - 1], current[i]);
        let n1 = fresh();
        let n2 = fresh();
        if letter > 0 {
            // left strand passes over: under enters from the upper right
            crossings.push([right, left, n1, n2]);
        } else {
            // right strand passes over: under enters from the upper left
            crossings.push([left, n1, n2, right]);
        }
        current[i - 1] = n1;
        current[i] = n2;
    }
    // closure: identify each bottom label with its top label
    for x in crossings.iter_mut() {
        for v in x.iter_mut() {
            for p in 0..strands {
                if *v == current[p] && current[p] != init[p] {
                    *v = init[p];
                }
            }
        }
    }
    let text = crossings
        .iter()
        .map(|x| format!("X[{},{},{},{}]", x[0], x[1], x[2], x[3]))
        .collect::<Vec<_>>()
        .join(" ");
    // validate before handing out
    parse_pd(&text)?;
    Ok(text)
}

/// The PD corpus used across tests and examples.
pub mod corpus {
    use super::braid_to_pd;

    pub const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

    pub fn hopf() -> String {
        braid_to_pd(&[1, 1], 2).expect("valid braid")
    }

    pub fn figure_eight() -> String {
        braid_to_pd(&[1, -2, 1, -2], 3).expect("valid braid")
    }

    pub fn k5_1() -> String {
        braid_to_pd(&[1, 1, 1, 1, 1], 2).expect("valid braid")
    }

    pub fn k5_2() -> String {
        braid_to_pd(&[1, 1, 1, 2, -1, 2], 3).expect("valid braid")
    }

    pub fn unknot_one_crossing() -> &'static str {
        "X[1,2,2,1]"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_trefoil() {
        let d = parse_pd(corpus::TREFOIL).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.edges.len(), 6);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert_eq!(parse_pd(""), Err(PdError::Empty));
        assert!(matches!(
            parse_pd("X[1,2,3]"),
            Err(PdError::Malformed(_))
        ));
        assert!(matches!(
            parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,4]"),
            Err(PdError::BadArcCount { .. })
        ));
    }

    #[test]
    fn corpus_is_valid() {
        for (text, n, comps) in [
            (corpus::hopf(), 2, 2),
            (corpus::figure_eight(), 4, 1),
            (corpus::k5_1(), 5, 1),
            (corpus::k5_2(), 6, 1),
        ] {
            let d = parse_pd(&text).unwrap();
            assert_eq!(d.crossing_count(), n, "{text}");
            assert_eq!(d.component_count(), comps, "{text}");
        }
        let d = parse_pd(corpus::unknot_one_crossing()).unwrap();
        assert_eq!(d.crossing_count(), 1);
        assert_eq!(d.component_count(), 1);
    }

    #[test]
    fn hopf_diagram_linking() {
        let d = parse_pd(&corpus::hopf()).unwrap();
        let lk = d.linking_matrix();
        assert_eq!(lk[0][1].abs(), 1, "matrix {lk:?}");
        assert_eq!(lk[0][1], lk[1][0]);
    }

    #[test]
    fn torus_25_traversal_matches_hand_pattern() {
        // crossing i of the (2,5) torus braid closure joins arcs
        // (2i-1, 2i) under and a shifted over pair
        let d = parse_pd(&corpus::k5_1()).unwrap();
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.edges.len(), 10);
    }
}
