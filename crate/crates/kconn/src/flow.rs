//! Unit-capacity max-flow by BFS augmenting paths, shared by the
//! connectivity routines. Deterministic: arcs are traversed in insertion
//! order, so the extracted minimum cuts are reproducible.

pub(crate) struct FlowNetwork {
    /// arcs[a] pairs with arcs[a ^ 1] as its reverse.
    to: Vec<u32>,
    cap: Vec<i32>,
    flow: Vec<i32>,
    out_arcs: Vec<Vec<u32>>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> FlowNetwork {
        FlowNetwork {
            to: Vec::new(),
            cap: Vec::new(),
            flow: Vec::new(),
            out_arcs: vec![Vec::new(); nodes],
        }
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: i32) {
        let a = self.to.len() as u32;
        self.to.push(to as u32);
        self.cap.push(cap);
        self.flow.push(0);
        self.out_arcs[from].push(a);
        self.to.push(from as u32);
        self.cap.push(0);
        self.flow.push(0);
        self.out_arcs[to].push(a + 1);
    }

    pub fn reset(&mut self) {
        self.flow.fill(0);
    }

    fn residual(&self, a: usize) -> i32 {
        self.cap[a] - self.flow[a]
    }

    /// Max flow from s to t, augmenting one shortest path at a time.
    pub fn max_flow(&mut self, s: usize, t: usize) -> usize {
        debug_assert_ne!(s, t);
        let n = self.out_arcs.len();
        let mut total = 0usize;
        let mut parent_arc = vec![u32::MAX; n];
        loop {
            parent_arc.fill(u32::MAX);
            let mut queue = std::collections::VecDeque::new();
            queue.push_back(s);
            parent_arc[s] = u32::MAX - 1;
            let mut reached = false;
            'bfs: while let Some(u) = queue.pop_front() {
                for &a in &self.out_arcs[u] {
                    let v = self.to[a as usize] as usize;
                    if parent_arc[v] == u32::MAX && self.residual(a as usize) > 0 {
                        parent_arc[v] = a;
                        if v == t {
                            reached = true;
                            break 'bfs;
                        }
                        queue.push_back(v);
                    }
                }
            }
            if !reached {
                return total;
            }
            // Unit-capacity internal arcs mean the bottleneck is always >= 1;
            // push the true bottleneck anyway.
            let mut bottleneck = i32::MAX;
            let mut v = t;
            while v != s {
                let a = parent_arc[v] as usize;
                bottleneck = bottleneck.min(self.residual(a));
                v = self.to[a ^ 1] as usize;
            }
            let mut v = t;
            while v != s {
                let a = parent_arc[v] as usize;
                self.flow[a] += bottleneck;
                self.flow[a ^ 1] -= bottleneck;
                v = self.to[a ^ 1] as usize;
            }
            total += bottleneck as usize;
        }
    }

    /// Nodes reachable from s in the residual network; the source side of a
    /// minimum cut once max flow has been pushed.
    pub fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let n = self.out_arcs.len();
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut queue = vec![s];
        while let Some(u) = queue.pop() {
            for &a in &self.out_arcs[u] {
                let v = self.to[a as usize] as usize;
                if !seen[v] && self.residual(a as usize) > 0 {
                    seen[v] = true;
                    queue.push(v);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_path_flow() {
        let mut net = FlowNetwork::new(3);
        net.add_arc(0, 1, 1);
        net.add_arc(1, 2, 1);
        assert_eq!(net.max_flow(0, 2), 1);
        let reach = net.residual_reachable(0);
        assert!(reach[0] && !reach[2]);
    }

    #[test]
    fn parallel_paths() {
        let mut net = FlowNetwork::new(4);
        net.add_arc(0, 1, 1);
        net.add_arc(1, 3, 1);
        net.add_arc(0, 2, 1);
        net.add_arc(2, 3, 1);
        assert_eq!(net.max_flow(0, 3), 2);
        net.reset();
        assert_eq!(net.max_flow(0, 3), 2);
    }
}
