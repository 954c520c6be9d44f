//! Integer maximum flow by blocking flows on level graphs (Dinic).
//!
//! Arcs live in one flat array; arc `a` and its reverse are `a` and `a ^ 1`.
//! Adjacency is compressed into CSR form when the solver is built, so arc
//! order within a node follows insertion order and results are deterministic.

use std::collections::VecDeque;

const UNREACHED: u32 = u32::MAX;

#[derive(Clone, Debug, Default)]
pub struct FlowGraphBuilder {
    nodes: usize,
    tails: Vec<u32>,
    heads: Vec<u32>,
    caps: Vec<u32>,
}

impl FlowGraphBuilder {
    pub fn new(nodes: usize) -> Self {
        assert!(nodes < u32::MAX as usize, "too many flow nodes");
        FlowGraphBuilder {
            nodes,
            ..Default::default()
        }
    }

    /// Adds `from -> to` with `capacity`; returns the arc id.
    pub fn add_arc(&mut self, from: usize, to: usize, capacity: u32) -> usize {
        debug_assert!(from < self.nodes && to < self.nodes);
        let id = self.heads.len();
        self.tails.push(from as u32);
        self.heads.push(to as u32);
        self.caps.push(capacity);
        self.tails.push(to as u32);
        self.heads.push(from as u32);
        self.caps.push(0);
        id
    }

    pub fn build(self) -> MaxFlow {
        let mut offsets = vec![0u32; self.nodes + 1];
        for &t in &self.tails {
            offsets[t as usize + 1] += 1;
        }
        for i in 0..self.nodes {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut adjacency = vec![0u32; self.tails.len()];
        for (arc, &t) in self.tails.iter().enumerate() {
            let slot = &mut fill[t as usize];
            adjacency[*slot as usize] = arc as u32;
            *slot += 1;
        }
        MaxFlow {
            offsets,
            adjacency,
            heads: self.heads,
            residual: self.caps,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MaxFlow {
    offsets: Vec<u32>,
    adjacency: Vec<u32>,
    heads: Vec<u32>,
    residual: Vec<u32>,
}

impl MaxFlow {
    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Flow currently routed through `arc` (an id returned by `add_arc`).
    pub fn flow_on(&self, arc: usize) -> u32 {
        self.residual[arc ^ 1]
    }

    fn arcs_of(&self, u: usize) -> std::ops::Range<usize> {
        self.offsets[u] as usize..self.offsets[u + 1] as usize
    }

    fn levels(&self, source: usize, sink: usize, level: &mut [u32]) -> bool {
        level.fill(UNREACHED);
        level[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for slot in self.arcs_of(u) {
                let arc = self.adjacency[slot] as usize;
                let v = self.heads[arc] as usize;
                if self.residual[arc] > 0 && level[v] == UNREACHED {
                    level[v] = level[u] + 1;
                    if v == sink {
                        return true;
                    }
                    queue.push_back(v);
                }
            }
        }
        level[sink] != UNREACHED
    }

    /// Pushes a blocking flow with an explicit path stack.
    fn blocking_flow(
        &mut self,
        source: usize,
        sink: usize,
        level: &mut [u32],
        next: &mut [u32],
    ) -> u64 {
        for (u, slot) in next.iter_mut().enumerate() {
            *slot = self.offsets[u];
        }
        let mut total = 0u64;
        let mut path: Vec<usize> = Vec::new();
        let mut u = source;
        loop {
            if u == sink {
                let push = path.iter().map(|&a| self.residual[a]).min().unwrap_or(0);
                for &a in &path {
                    self.residual[a] -= push;
                    self.residual[a ^ 1] += push;
                }
                total += u64::from(push);
                // retreat to the tail of the first saturated arc
                let cut = path
                    .iter()
                    .position(|&a| self.residual[a] == 0)
                    .expect("augmentation saturates an arc");
                path.truncate(cut);
                u = match path.last() {
                    Some(&a) => self.heads[a] as usize,
                    None => source,
                };
                continue;
            }
            let mut advanced = false;
            while next[u] < self.offsets[u + 1] {
                let arc = self.adjacency[next[u] as usize] as usize;
                let v = self.heads[arc] as usize;
                if self.residual[arc] > 0 && level[v] == level[u] + 1 {
                    path.push(arc);
                    u = v;
                    advanced = true;
                    break;
                }
                next[u] += 1;
            }
            if advanced {
                continue;
            }
            // dead end: drop u from the level graph
            level[u] = UNREACHED;
            match path.pop() {
                None => return total,
                Some(a) => {
                    u = self.heads[a ^ 1] as usize;
                    next[u] += 1;
                }
            }
        }
    }

    /// Runs to optimality and returns the flow value added by this call.
    pub fn run(&mut self, source: usize, sink: usize) -> u64 {
        if source == sink {
            return 0;
        }
        let n = self.node_count();
        let mut level = vec![UNREACHED; n];
        let mut next = vec![0u32; n];
        let mut total = 0;
        while self.levels(source, sink, &mut level) {
            total += self.blocking_flow(source, sink, &mut level, &mut next);
        }
        total
    }
}
