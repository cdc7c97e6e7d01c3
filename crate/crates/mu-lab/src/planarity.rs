//! Left-right planarity test.
//!
//! DFS orientation computes heights, lowpoints and nesting depths; a second
//! DFS in nesting order maintains a stack of conflict pairs of back-edge
//! intervals and merges constraints, failing exactly when two same-side
//! constraints collide. Only the boolean test is implemented, no embedding.
//!
//! The test runs on plain adjacency lists so callers may exceed the bitset
//! graph capacity (the outerplanarity apex construction needs one extra
//! vertex).

use std::collections::HashMap;

type Edge = (usize, usize);

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
struct Interval {
    low: Option<Edge>,
    high: Option<Edge>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn with_right(e: Edge) -> ConflictPair {
        ConflictPair {
            left: Interval::default(),
            right: Interval {
                low: Some(e),
                high: Some(e),
            },
        }
    }

    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct LrState {
    adj: Vec<Vec<usize>>,
    height: Vec<Option<usize>>,
    parent_edge: Vec<Option<Edge>>,
    oriented: HashMap<Edge, bool>, // directed edge -> is tree edge
    lowpt: HashMap<Edge, usize>,
    lowpt2: HashMap<Edge, usize>,
    nesting_depth: HashMap<Edge, usize>,
    ordered_adj: Vec<Vec<usize>>,
    stack: Vec<ConflictPair>,
    stack_bottom: HashMap<Edge, usize>,
    lowpt_edge: HashMap<Edge, Edge>,
    eref: HashMap<Edge, Option<Edge>>,
}

impl LrState {
    fn lowest(&self, p: &ConflictPair) -> usize {
        match (p.left.low, p.right.low) {
            (None, None) => usize::MAX,
            (Some(l), None) => self.lowpt[&l],
            (None, Some(r)) => self.lowpt[&r],
            (Some(l), Some(r)) => self.lowpt[&l].min(self.lowpt[&r]),
        }
    }

    fn conflicting(&self, i: &Interval, b: Edge) -> bool {
        match i.high {
            None => false,
            Some(h) => self.lowpt[&h] > self.lowpt[&b],
        }
    }

    /// Sets nesting depth of (v, w) and folds its lowpoints into e.
    fn finish_edge(&mut self, v: usize, w: usize, e: Option<Edge>) {
        let vw = (v, w);
        let mut nd = 2 * self.lowpt[&vw];
        if self.lowpt2[&vw] < self.height[v].unwrap() {
            nd += 1; // chordal: has a second return below v
        }
        self.nesting_depth.insert(vw, nd);
        if let Some(e) = e {
            let (l, l2) = (self.lowpt[&vw], self.lowpt2[&vw]);
            let (el, el2) = (self.lowpt[&e], self.lowpt2[&e]);
            if l < el {
                self.lowpt2.insert(e, el.min(l2));
                self.lowpt.insert(e, l);
            } else if l > el {
                self.lowpt2.insert(e, el2.min(l));
            } else {
                self.lowpt2.insert(e, el2.min(l2));
            }
        }
    }
}

/// True when the graph given by adjacency lists is planar.
pub fn is_planar_adj(adj: &[Vec<usize>]) -> bool {
    let n = adj.len();
    if n < 5 {
        return true;
    }
    let m: usize = adj.iter().map(|a| a.len()).sum::<usize>() / 2;
    if m > 3 * n - 6 {
        return false;
    }
    let mut st = LrState {
        adj: adj.to_vec(),
        height: vec![None; n],
        parent_edge: vec![None; n],
        oriented: HashMap::new(),
        lowpt: HashMap::new(),
        lowpt2: HashMap::new(),
        nesting_depth: HashMap::new(),
        ordered_adj: vec![Vec::new(); n],
        stack: Vec::new(),
        stack_bottom: HashMap::new(),
        lowpt_edge: HashMap::new(),
        eref: HashMap::new(),
    };
    // Phase 1: orientation.
    for root in 0..n {
        if st.height[root].is_none() {
            st.height[root] = Some(0);
            orient_from(&mut st, root);
        }
    }
    // Sort adjacencies by nesting depth.
    for v in 0..n {
        let mut out: Vec<usize> = st.adj[v]
            .iter()
            .copied()
            .filter(|&w| st.oriented.contains_key(&(v, w)))
            .collect();
        out.sort_by_key(|&w| st.nesting_depth[&(v, w)]);
        st.ordered_adj[v] = out;
    }
    // Phase 2: testing.
    for root in 0..n {
        if st.parent_edge[root].is_none()
            && !st.ordered_adj[root].is_empty()
            && !test_from(&mut st, root)
        {
            return false;
        }
    }
    true
}

/// Recursive DFS orientation (depth is at most the vertex count).
fn orient_from(st: &mut LrState, v: usize) {
    let e = st.parent_edge[v];
    let neighbors = st.adj[v].clone();
    for w in neighbors {
        let vw = (v, w);
        if st.oriented.contains_key(&vw) || st.oriented.contains_key(&(w, v)) {
            continue;
        }
        let hv = st.height[v].unwrap();
        st.lowpt.insert(vw, hv);
        st.lowpt2.insert(vw, hv);
        if st.height[w].is_none() {
            st.oriented.insert(vw, true);
            st.parent_edge[w] = Some(vw);
            st.height[w] = Some(hv + 1);
            orient_from(st, w);
        } else {
            st.oriented.insert(vw, false);
            st.lowpt.insert(vw, st.height[w].unwrap());
        }
        st.finish_edge(v, w, e);
    }
}

/// Recursive testing DFS; returns false on a left-right conflict.
fn test_from(st: &mut LrState, v: usize) -> bool {
    let e = st.parent_edge[v];
    let ordered = st.ordered_adj[v].clone();
    for (k, &w) in ordered.iter().enumerate() {
        let ei = (v, w);
        st.stack_bottom.insert(ei, st.stack.len());
        let is_tree = st.parent_edge[w] == Some(ei);
        if is_tree {
            if !test_from(st, w) {
                return false;
            }
        } else {
            st.lowpt_edge.insert(ei, ei);
            st.stack.push(ConflictPair::with_right(ei));
        }
        if st.lowpt[&ei] < st.height[v].unwrap() {
            // ei has a return edge below v.
            if k == 0 {
                let le = st.lowpt_edge[&ei];
                if let Some(e) = e {
                    st.lowpt_edge.insert(e, le);
                }
            } else if !add_constraints(st, ei, e) {
                return false;
            }
        }
    }
    if let Some(e) = e {
        let u = e.0;
        trim_back_edges(st, u);
        // Record the highest return edge as e's reference.
        if st.lowpt[&e] < st.height[u].unwrap() {
            if let Some(top) = st.stack.last() {
                let hl = top.left.high;
                let hr = top.right.high;
                let pick = match (hl, hr) {
                    (Some(l), Some(r)) => {
                        if st.lowpt[&l] > st.lowpt[&r] {
                            Some(l)
                        } else {
                            Some(r)
                        }
                    }
                    (Some(l), None) => Some(l),
                    (None, r) => r,
                };
                st.eref.insert(e, pick);
            }
        }
    }
    true
}

fn add_constraints(st: &mut LrState, ei: Edge, e: Option<Edge>) -> bool {
    let e = e.expect("constraints are only added below the root");
    let mut p = ConflictPair::default();
    // Merge return edges of ei into p.right.
    while let Some(mut q) = st.stack.pop() {
        if !q.left.is_empty() {
            q.swap();
        }
        if !q.left.is_empty() {
            return false; // two interleaving same-side constraints
        }
        let q_low = q.right.low.expect("popped pair has a right interval");
        if st.lowpt[&q_low] > st.lowpt[&e] {
            // Merge interval.
            if p.right.is_empty() {
                p.right.high = q.right.high;
            } else {
                let pl = p.right.low.unwrap();
                st.eref.insert(pl, q.right.high);
            }
            p.right.low = q.right.low;
        } else {
            // Align lowpoint.
            st.eref.insert(q_low, Some(st.lowpt_edge[&e]));
        }
        if st.stack.len() == st.stack_bottom[&ei] {
            break;
        }
    }
    // Merge conflicting return edges of earlier siblings into p.left.
    while let Some(top) = st.stack.last() {
        if !(st.conflicting(&top.left, ei) || st.conflicting(&top.right, ei)) {
            break;
        }
        let mut q = st.stack.pop().unwrap();
        if st.conflicting(&q.right, ei) {
            q.swap();
        }
        if st.conflicting(&q.right, ei) {
            return false; // conflict on both sides
        }
        // Merge the interval below lowpt(ei) into p.right.
        if let Some(pl) = p.right.low {
            st.eref.insert(pl, q.right.high);
        }
        if q.right.low.is_some() {
            p.right.low = q.right.low;
        }
        if p.left.is_empty() {
            p.left.high = q.left.high;
        } else {
            let pl = p.left.low.unwrap();
            st.eref.insert(pl, q.left.high);
        }
        p.left.low = q.left.low;
    }
    if !(p.left.is_empty() && p.right.is_empty()) {
        st.stack.push(p);
    }
    true
}

fn trim_back_edges(st: &mut LrState, u: usize) {
    let hu = st.height[u].unwrap();
    // Drop entire conflict pairs returning to u.
    while let Some(top) = st.stack.last() {
        if st.lowest(top) == hu {
            st.stack.pop();
        } else {
            break;
        }
    }
    // Trim the top pair's intervals.
    if let Some(mut p) = st.stack.pop() {
        while let Some(h) = p.left.high {
            if h.1 == u {
                p.left.high = st.eref.get(&h).copied().flatten();
            } else {
                break;
            }
        }
        if p.left.high.is_none() {
            if let Some(l) = p.left.low {
                st.eref.insert(l, p.right.low);
                p.left.low = None;
            }
        }
        while let Some(h) = p.right.high {
            if h.1 == u {
                p.right.high = st.eref.get(&h).copied().flatten();
            } else {
                break;
            }
        }
        if p.right.high.is_none() {
            if let Some(l) = p.right.low {
                st.eref.insert(l, p.left.low);
                p.right.low = None;
            }
        }
        st.stack.push(p);
    }
}
