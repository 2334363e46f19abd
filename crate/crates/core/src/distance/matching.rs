//! Maximum cardinality matching on general graphs (Edmonds' blossom algorithm).

use super::cover::adjacency;
use crate::error::Result;

const NONE: usize = usize::MAX;

/// A maximum matching, as pairs `(u, v)` with `u < v`, sorted.
pub fn maximum_matching(
    vertex_count: usize,
    edges: &[(usize, usize)],
) -> Result<Vec<(usize, usize)>> {
    let adj = adjacency(vertex_count, edges)?;
    let mut blossom = Blossom::new(&adj);

    // greedy start; augmenting search fixes the rest
    for v in 0..vertex_count {
        if blossom.mate[v] == NONE {
            if let Some(&u) = adj[v].iter().find(|&&u| blossom.mate[u] == NONE) {
                blossom.mate[u] = v;
                blossom.mate[v] = u;
            }
        }
    }
    for root in 0..vertex_count {
        if blossom.mate[root] == NONE && !adj[root].is_empty() {
            if let Some(end) = blossom.find_path(root) {
                blossom.augment(end);
            }
        }
    }

    let mut pairs: Vec<(usize, usize)> = (0..vertex_count)
        .filter(|&v| blossom.mate[v] != NONE && v < blossom.mate[v])
        .map(|v| (v, blossom.mate[v]))
        .collect();
    pairs.sort_unstable();
    Ok(pairs)
}

struct Blossom<'a> {
    adj: &'a [Vec<usize>],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: Vec<usize>,
}

impl<'a> Blossom<'a> {
    fn new(adj: &'a [Vec<usize>]) -> Self {
        let n = adj.len();
        Blossom {
            adj,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: Vec::new(),
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Breadth-first search for an augmenting path from `root`; returns its free end.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push(root);
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            for idx in 0..self.adj[v].len() {
                let to = self.adj[v][idx];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push(next);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(n: usize, edges: &[(usize, usize)]) -> usize {
        fn go(i: usize, edges: &[(usize, usize)], used: &mut Vec<bool>) -> usize {
            if i == edges.len() {
                return 0;
            }
            let skip = go(i + 1, edges, used);
            let (u, v) = edges[i];
            if used[u] || used[v] {
                return skip;
            }
            used[u] = true;
            used[v] = true;
            let take = 1 + go(i + 1, edges, used);
            used[u] = false;
            used[v] = false;
            skip.max(take)
        }
        go(0, edges, &mut vec![false; n])
    }

    fn check(n: usize, edges: &[(usize, usize)], m: &[(usize, usize)]) {
        let mut used = vec![false; n];
        for &(u, v) in m {
            assert!(edges.contains(&(u, v)) || edges.contains(&(v, u)));
            assert!(!used[u] && !used[v]);
            used[u] = true;
            used[v] = true;
        }
    }

    #[test]
    fn odd_cycles_need_blossoms() {
        // two triangles joined by a path: greedy can get stuck at 2, optimum is 3
        let edges = [
            (0, 1),
            (1, 2),
            (2, 0),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 6),
            (6, 4),
        ];
        let m = maximum_matching(7, &edges).unwrap();
        check(7, &edges, &m);
        assert_eq!(m.len(), 3);
        let c5: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        assert_eq!(maximum_matching(5, &c5).unwrap().len(), 2);
    }

    #[test]
    fn matches_brute_force_on_pseudorandom_graphs() {
        let mut state = 0x2545f4914f6cdd1du64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..300 {
            let n = 2 + (next() % 9) as usize;
            let density = next() % 100;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if next() % 100 < density {
                        edges.push((u, v));
                    }
                }
            }
            let m = maximum_matching(n, &edges).unwrap();
            check(n, &edges, &m);
            assert_eq!(m.len(), brute_force(n, &edges), "edges={edges:?}");
        }
    }
}
