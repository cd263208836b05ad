//! Left-right planarity test.
//!
//! Orientation DFS computes heights and low-points; a second DFS maintains
//! a stack of conflict pairs (intervals of back edges that must embed on
//! opposite sides of the current tree path) and rejects exactly when two
//! return edges are forced onto the same side from both directions. Runs in
//! O(n + m) after an m > 3n − 6 edge-count rejection.

use std::collections::BTreeSet;

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
struct Interval {
    low: u32,
    high: u32,
}

impl Interval {
    fn empty_interval() -> Interval {
        Interval { low: NONE, high: NONE }
    }

    fn is_empty(&self) -> bool {
        self.low == NONE && self.high == NONE
    }
}

#[derive(Clone, Copy, Debug)]
struct ConflictPair {
    l: Interval,
    r: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.l, &mut self.r);
    }
}

/// State shared by both DFS passes. Directed edge ids are `2k` / `2k + 1`
/// for the two orientations of undirected edge `k`; only the orientation
/// chosen by the first pass is ever used.
struct Lr {
    /// Adjacency as (neighbor, undirected edge id) in input order.
    adj: Vec<Vec<(u32, u32)>>,
    target: Vec<u32>,
    oriented: Vec<bool>,
    height: Vec<u32>,
    parent_edge: Vec<u32>,
    lowpt: Vec<u32>,
    lowpt2: Vec<u32>,
    nesting_depth: Vec<u32>,
    /// Out-edges per node in orientation order (directed ids).
    out: Vec<Vec<u32>>,
    // Second pass state.
    stack: Vec<ConflictPair>,
    stack_bottom: Vec<usize>,
    lowpt_edge: Vec<u32>,
    reference: Vec<u32>,
}

impl Lr {
    fn orient(&mut self, root: usize) {
        self.height[root] = 0;
        self.dfs1(root);
    }

    fn dfs1(&mut self, v: usize) {
        let e = self.parent_edge[v];
        for idx in 0..self.adj[v].len() {
            let (w, k) = self.adj[v][idx];
            if self.oriented[k as usize] {
                continue;
            }
            self.oriented[k as usize] = true;
            let ei = 2 * k + if self.target[(2 * k) as usize] == w { 0 } else { 1 };
            self.out[v].push(ei);
            let ei = ei as usize;
            self.lowpt[ei] = self.height[v];
            self.lowpt2[ei] = self.height[v];
            if self.height[w as usize] == NONE {
                self.parent_edge[w as usize] = ei as u32;
                self.height[w as usize] = self.height[v] + 1;
                self.dfs1(w as usize);
            } else {
                self.lowpt[ei] = self.height[w as usize];
            }
            self.nesting_depth[ei] = 2 * self.lowpt[ei]
                + u32::from(self.lowpt2[ei] < self.height[v]);
            if e != NONE {
                let e = e as usize;
                if self.lowpt[ei] < self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[ei]);
                    self.lowpt[e] = self.lowpt[ei];
                } else if self.lowpt[ei] > self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[ei]);
                } else {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[ei]);
                }
            }
        }
    }

    fn conflicting(&self, i: Interval, b: usize) -> bool {
        !i.is_empty() && self.lowpt[i.high as usize] > self.lowpt[b]
    }

    fn lowest(&self, p: &ConflictPair) -> u32 {
        if p.l.is_empty() {
            self.lowpt[p.r.low as usize]
        } else if p.r.is_empty() {
            self.lowpt[p.l.low as usize]
        } else {
            self.lowpt[p.l.low as usize].min(self.lowpt[p.r.low as usize])
        }
    }

    fn dfs2(&mut self, v: usize) -> bool {
        let e = self.parent_edge[v];
        let order = self.out[v].clone();
        for (pos, &ei) in order.iter().enumerate() {
            let eiu = ei as usize;
            self.stack_bottom[eiu] = self.stack.len();
            let w = self.target[eiu] as usize;
            if self.parent_edge[w] == ei {
                if !self.dfs2(w) {
                    return false;
                }
            } else {
                self.lowpt_edge[eiu] = ei;
                self.stack.push(ConflictPair {
                    l: Interval::empty_interval(),
                    r: Interval { low: ei, high: ei },
                });
            }
            if self.lowpt[eiu] < self.height[v] {
                // ei has a return edge below v.
                if pos == 0 {
                    self.lowpt_edge[e as usize] = self.lowpt_edge[eiu];
                } else if !self.add_constraints(eiu, e as usize) {
                    return false;
                }
            }
        }
        if e != NONE {
            let eu = e as usize;
            let u = self.source_of(eu);
            self.trim_back_edges(u);
            if self.lowpt[eu] < self.height[u] {
                // The parent edge's reference is a highest return edge.
                if let Some(top) = self.stack.last() {
                    let hl = top.l.high;
                    let hr = top.r.high;
                    self.reference[eu] = if hl != NONE
                        && (hr == NONE || self.lowpt[hl as usize] > self.lowpt[hr as usize])
                    {
                        hl
                    } else {
                        hr
                    };
                }
            }
        }
        true
    }

    fn source_of(&self, e: usize) -> usize {
        // Directed pair 2k / 2k+1 point at each other's source.
        self.target[e ^ 1] as usize
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair {
            l: Interval::empty_interval(),
            r: Interval::empty_interval(),
        };
        // Merge the return edges of ei into p.r.
        loop {
            let mut q = match self.stack.pop() {
                Some(q) => q,
                None => return false,
            };
            if !q.l.is_empty() {
                q.swap();
            }
            if !q.l.is_empty() {
                return false;
            }
            if self.lowpt[q.r.low as usize] > self.lowpt[e] {
                if p.r.is_empty() {
                    p.r.high = q.r.high;
                } else {
                    self.reference[p.r.low as usize] = q.r.high;
                }
                p.r.low = q.r.low;
            } else {
                self.reference[q.r.low as usize] = self.lowpt_edge[e];
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        // Merge conflicting return edges of earlier siblings into p.l.
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(top.l, ei) || self.conflicting(top.r, ei)) {
                break;
            }
            let mut q = self.stack.pop().expect("just observed a top");
            if self.conflicting(q.r, ei) {
                q.swap();
            }
            if self.conflicting(q.r, ei) {
                return false;
            }
            // The part of q.r below lowpt(ei) joins p.r.
            if p.r.low != NONE {
                self.reference[p.r.low as usize] = q.r.high;
            }
            if q.r.low != NONE {
                p.r.low = q.r.low;
            }
            if p.l.is_empty() {
                p.l.high = q.l.high;
            } else {
                self.reference[p.l.low as usize] = q.l.high;
            }
            p.l.low = q.l.low;
        }
        if !(p.l.is_empty() && p.r.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn trim_back_edges(&mut self, u: usize) {
        let hu = self.height[u];
        // Drop entire conflict pairs returning to u.
        while let Some(top) = self.stack.last() {
            if self.lowest(top) == hu {
                self.stack.pop();
            } else {
                break;
            }
        }
        // Trim the top pair's intervals edge by edge.
        if let Some(mut p) = self.stack.pop() {
            while p.l.high != NONE && self.target[p.l.high as usize] as usize == u {
                p.l.high = self.reference[p.l.high as usize];
            }
            if p.l.high == NONE && p.l.low != NONE {
                self.reference[p.l.low as usize] = p.r.low;
                p.l.low = NONE;
            }
            while p.r.high != NONE && self.target[p.r.high as usize] as usize == u {
                p.r.high = self.reference[p.r.high as usize];
            }
            if p.r.high == NONE && p.r.low != NONE {
                self.reference[p.r.low as usize] = p.l.low;
                p.r.low = NONE;
            }
            self.stack.push(p);
        }
    }
}

/// Whether the undirected graph on nodes `0..n` with the given edges can be
/// drawn in the plane without crossings. Self-loops and parallel edges are
/// ignored; node ids must be below `n`.
pub fn is_planar(n: usize, edges: &[(usize, usize)]) -> bool {
    let dedup: BTreeSet<(usize, usize)> = edges
        .iter()
        .filter(|&&(a, b)| a != b)
        .map(|&(a, b)| (a.min(b), a.max(b)))
        .collect();
    let m = dedup.len();
    if n >= 3 && m > 3 * n - 6 {
        return false;
    }
    let mut adj: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
    let mut target = Vec::with_capacity(2 * m);
    for (k, &(a, b)) in dedup.iter().enumerate() {
        adj[a].push((b as u32, k as u32));
        adj[b].push((a as u32, k as u32));
        target.push(b as u32); // 2k: a -> b
        target.push(a as u32); // 2k + 1: b -> a
    }
    let mut lr = Lr {
        adj,
        target,
        oriented: vec![false; m],
        height: vec![NONE; n],
        parent_edge: vec![NONE; n],
        lowpt: vec![0; 2 * m],
        lowpt2: vec![0; 2 * m],
        nesting_depth: vec![0; 2 * m],
        out: vec![Vec::new(); n],
        stack: Vec::new(),
        stack_bottom: vec![0; 2 * m],
        lowpt_edge: vec![NONE; 2 * m],
        reference: vec![NONE; 2 * m],
    };
    let mut roots = Vec::new();
    for v in 0..n {
        if lr.height[v] == NONE {
            roots.push(v);
            lr.orient(v);
        }
    }
    for v in 0..n {
        let nesting = &lr.nesting_depth;
        lr.out[v].sort_by_key(|&ei| nesting[ei as usize]);
    }
    for root in roots {
        if !lr.dfs2(root) {
            return false;
        }
    }
    true
}
