//! Integer max-flow by shortest augmenting paths (Edmonds-Karp).
//!
//! Arcs are explored in insertion order, so the flow found is deterministic
//! for a fixed construction order.

use std::collections::VecDeque;

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    cap: u64,
    flow: u64,
}

#[derive(Clone, Debug)]
pub struct FlowNetwork {
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork { arcs: Vec::new(), adj: vec![Vec::new(); nodes] }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    /// Adds an arc and its residual twin; returns the arc handle.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: u64) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap, flow: 0 });
        self.arcs.push(Arc { to: from, cap: 0, flow: 0 });
        self.adj[from].push(id);
        self.adj[to].push(id + 1);
        id
    }

    pub fn flow_on(&self, arc: usize) -> u64 {
        self.arcs[arc].flow
    }

    pub fn capacity(&self, arc: usize) -> u64 {
        self.arcs[arc].cap
    }

    fn residual(&self, arc: usize) -> u64 {
        let a = &self.arcs[arc];
        if arc % 2 == 0 {
            a.cap - a.flow
        } else {
            // reverse arc: can cancel the forward flow
            self.arcs[arc - 1].flow
        }
    }

    fn push(&mut self, arc: usize, amount: u64) {
        if arc % 2 == 0 {
            self.arcs[arc].flow += amount;
        } else {
            self.arcs[arc - 1].flow -= amount;
        }
    }

    /// Nodes reachable from `source` in the residual graph.
    pub fn residual_reachable(&self, source: usize) -> Vec<bool> {
        let mut seen = vec![false; self.node_count()];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &arc in &self.adj[u] {
                let v = self.arcs[arc].to;
                if !seen[v] && self.residual(arc) > 0 {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    /// Augments to a maximum flow and returns its value.
    pub fn max_flow(&mut self, source: usize, sink: usize) -> u64 {
        let mut total = 0;
        if source == sink {
            return 0;
        }
        loop {
            let mut parent: Vec<Option<usize>> = vec![None; self.node_count()];
            let mut seen = vec![false; self.node_count()];
            seen[source] = true;
            let mut queue = VecDeque::from([source]);
            'bfs: while let Some(u) = queue.pop_front() {
                for &arc in &self.adj[u] {
                    let v = self.arcs[arc].to;
                    if !seen[v] && self.residual(arc) > 0 {
                        seen[v] = true;
                        parent[v] = Some(arc);
                        if v == sink {
                            break 'bfs;
                        }
                        queue.push_back(v);
                    }
                }
            }
            if !seen[sink] {
                return total;
            }
            let mut bottleneck = u64::MAX;
            let mut v = sink;
            while let Some(arc) = parent[v] {
                bottleneck = bottleneck.min(self.residual(arc));
                v = self.arcs[arc ^ 1].to;
            }
            let mut v = sink;
            while let Some(arc) = parent[v] {
                self.push(arc, bottleneck);
                v = self.arcs[arc ^ 1].to;
            }
            total += bottleneck;
        }
    }
}
