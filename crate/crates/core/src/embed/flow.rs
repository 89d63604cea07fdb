//! Small unit-capacity max-flow used as a feasibility filter.

use std::collections::VecDeque;

pub(crate) struct FlowNet {
    first: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<i32>,
    next: Vec<usize>,
}

const END: usize = usize::MAX;

impl FlowNet {
    pub fn new(n: usize) -> FlowNet {
        FlowNet { first: vec![END; n], to: Vec::new(), cap: Vec::new(), next: Vec::new() }
    }

    pub fn add_arc(&mut self, u: usize, v: usize, c: i32) {
        self.push(u, v, c);
        self.push(v, u, 0);
    }

    /// Undirected edge with capacity `c` in both directions.
    pub fn add_edge(&mut self, u: usize, v: usize, c: i32) {
        self.push(u, v, c);
        self.push(v, u, c);
    }

    fn push(&mut self, u: usize, v: usize, c: i32) {
        self.to.push(v);
        self.cap.push(c);
        self.next.push(self.first[u]);
        self.first[u] = self.to.len() - 1;
    }

    /// Max flow from `s` to `t`, stopping once `limit` is reached.
    pub fn max_flow(&mut self, s: usize, t: usize, limit: u32) -> u32 {
        let n = self.first.len();
        let mut flow = 0;
        let mut pred = vec![END; n];
        while flow < limit {
            pred.iter_mut().for_each(|p| *p = END);
            let mut q = VecDeque::from([s]);
            let mut reached = false;
            'bfs: while let Some(u) = q.pop_front() {
                let mut a = self.first[u];
                while a != END {
                    let v = self.to[a];
                    if self.cap[a] > 0 && v != s && pred[v] == END {
                        pred[v] = a;
                        if v == t {
                            reached = true;
                            break 'bfs;
                        }
                        q.push_back(v);
                    }
                    a = self.next[a];
                }
            }
            if !reached {
                break;
            }
            let mut v = t;
            while v != s {
                let a = pred[v];
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                v = self.to[a ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_parallel_paths() {
        // 0-1-3, 0-2-3 plus 1-2
        let mut f = FlowNet::new(4);
        for (u, v) in [(0, 1), (1, 3), (0, 2), (2, 3), (1, 2)] {
            f.add_edge(u, v, 1);
        }
        assert_eq!(f.max_flow(0, 3, 5), 2);
    }
}
