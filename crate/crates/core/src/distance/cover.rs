//! Exact minimum vertex cover by branch and bound.
//!
//! Works on any simple undirected graph. Each connected component is solved
//! independently: degree-0 and degree-1 reductions, branching on a vertex of
//! maximum degree (take it, or take all its neighbours), and pruning with the
//! size of a greedy maximal matching as the lower bound.

use crate::error::{capacity, Error, Result};

/// Most non-isolated vertices accepted by [`minimum_vertex_cover`].
pub const MAX_COVER_VERTICES: u64 = 1 << 12;

/// Search nodes explored before giving up with a capacity error.
pub const MAX_SEARCH_NODES: u64 = 20_000_000;

pub fn minimum_vertex_cover(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Vec<usize>> {
    let adj = adjacency(vertex_count, edges)?;
    let active: Vec<usize> = (0..vertex_count).filter(|&v| !adj[v].is_empty()).collect();
    capacity(
        "non-isolated vertices for exact cover",
        active.len() as u64,
        MAX_COVER_VERTICES,
    )?;

    let mut cover = Vec::new();
    let mut nodes = 0u64;
    for component in components(&adj, &active) {
        let local = local_index(vertex_count, &component);
        let sub: Vec<Vec<usize>> = component
            .iter()
            .map(|&v| adj[v].iter().map(|&u| local[u]).collect())
            .collect();
        let mut search = Search::new(&sub, nodes);
        search.run()?;
        nodes = search.nodes;
        cover.extend(search.best.iter().map(|&i| component[i]));
    }
    cover.sort_unstable();
    Ok(cover)
}

/// True when every edge has an endpoint in `cover`.
pub fn is_vertex_cover(vertex_count: usize, edges: &[(usize, usize)], cover: &[usize]) -> bool {
    let mut mark = vec![false; vertex_count];
    for &v in cover {
        if v < vertex_count {
            mark[v] = true;
        }
    }
    edges.iter().all(|&(u, v)| mark[u] || mark[v])
}

pub(crate) fn adjacency(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Vec<Vec<usize>>> {
    let mut adj = vec![Vec::new(); vertex_count];
    for &(u, v) in edges {
        if u >= vertex_count || v >= vertex_count {
            return Err(Error::Domain(format!(
                "edge ({u}, {v}) references a vertex outside 0..{vertex_count}"
            )));
        }
        if u == v {
            return Err(Error::Domain(format!("self-loop at vertex {u}")));
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    Ok(adj)
}

fn components(adj: &[Vec<usize>], active: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; adj.len()];
    let mut out = Vec::new();
    for &start in active {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut head = 0;
        while head < comp.len() {
            let v = comp[head];
            head += 1;
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    comp.push(u);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn local_index(vertex_count: usize, component: &[usize]) -> Vec<usize> {
    let mut local = vec![usize::MAX; vertex_count];
    for (i, &v) in component.iter().enumerate() {
        local[v] = i;
    }
    local
}

struct Search<'a> {
    adj: &'a [Vec<usize>],
    best: Vec<usize>,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(adj: &'a [Vec<usize>], nodes: u64) -> Self {
        Search {
            adj,
            best: Vec::new(),
            nodes,
        }
    }

    fn degree(&self, alive: &[bool], v: usize) -> usize {
        self.adj[v].iter().filter(|&&u| alive[u]).count()
    }

    fn run(&mut self) -> Result<()> {
        let alive = vec![true; self.adj.len()];
        self.best = self.greedy(&alive);
        self.branch(alive, Vec::new())
    }

    /// Repeatedly takes a vertex of maximum degree; an initial upper bound.
    fn greedy(&self, alive: &[bool]) -> Vec<usize> {
        let mut alive = alive.to_vec();
        let mut cover = Vec::new();
        loop {
            let pick = (0..self.adj.len())
                .filter(|&v| alive[v])
                .map(|v| (self.degree(&alive, v), v))
                .filter(|&(d, _)| d > 0)
                .max_by_key(|&(d, v)| (d, std::cmp::Reverse(v)));
            match pick {
                Some((_, v)) => {
                    alive[v] = false;
                    cover.push(v);
                }
                None => return cover,
            }
        }
    }

    fn matching_bound(&self, alive: &[bool]) -> usize {
        let mut used = vec![false; self.adj.len()];
        let mut size = 0;
        for v in 0..self.adj.len() {
            if !alive[v] || used[v] {
                continue;
            }
            if let Some(&u) = self.adj[v].iter().find(|&&u| alive[u] && !used[u]) {
                used[u] = true;
                used[v] = true;
                size += 1;
            }
        }
        size
    }

    fn branch(&mut self, mut alive: Vec<bool>, mut chosen: Vec<usize>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > MAX_SEARCH_NODES {
            return Err(Error::Capacity {
                what: "vertex cover search nodes",
                size: self.nodes,
                limit: MAX_SEARCH_NODES,
            });
        }

        loop {
            let mut changed = false;
            for v in 0..self.adj.len() {
                if !alive[v] {
                    continue;
                }
                match self.degree(&alive, v) {
                    0 => {
                        alive[v] = false;
                        changed = true;
                    }
                    1 => {
                        let u = *self.adj[v].iter().find(|&&u| alive[u]).unwrap();
                        alive[u] = false;
                        alive[v] = false;
                        chosen.push(u);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if chosen.len() >= self.best.len() {
                return Ok(());
            }
            if !changed {
                break;
            }
        }

        let pivot = (0..self.adj.len())
            .filter(|&v| alive[v])
            .max_by_key(|&v| (self.degree(&alive, v), std::cmp::Reverse(v)));
        let Some(pivot) = pivot else {
            // every alive vertex had degree >= 2, so none alive means no edges left
            self.best = chosen;
            return Ok(());
        };

        if chosen.len() + self.matching_bound(&alive) >= self.best.len() {
            return Ok(());
        }

        let neighbours: Vec<usize> = self.adj[pivot]
            .iter()
            .copied()
            .filter(|&u| alive[u])
            .collect();

        let mut with_pivot = alive.clone();
        with_pivot[pivot] = false;
        let mut chosen_pivot = chosen.clone();
        chosen_pivot.push(pivot);
        self.branch(with_pivot, chosen_pivot)?;

        if chosen.len() + neighbours.len() < self.best.len() {
            alive[pivot] = false;
            for &u in &neighbours {
                alive[u] = false;
            }
            chosen.extend(neighbours);
            self.branch(alive, chosen)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive minimum over all subsets; independent of the search.
    fn brute_force(n: usize, edges: &[(usize, usize)]) -> usize {
        (0u32..1 << n)
            .filter(|mask| {
                edges
                    .iter()
                    .all(|&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1)
            })
            .map(|mask| mask.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn empty_graph() {
        assert!(minimum_vertex_cover(5, &[]).unwrap().is_empty());
    }

    #[test]
    fn perfect_matching() {
        let edges = [(0, 1), (2, 3), (4, 5), (6, 7)];
        let c = minimum_vertex_cover(8, &edges).unwrap();
        assert_eq!(c.len(), 4);
        assert!(is_vertex_cover(8, &edges, &c));
    }

    #[test]
    fn path_takes_center() {
        assert_eq!(minimum_vertex_cover(3, &[(0, 1), (1, 2)]).unwrap(), vec![1]);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(minimum_vertex_cover(2, &[(0, 0)]).is_err());
        assert!(minimum_vertex_cover(2, &[(0, 2)]).is_err());
    }

    #[test]
    fn odd_cycle_and_clique() {
        let c5: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        assert_eq!(minimum_vertex_cover(5, &c5).unwrap().len(), 3);
        let k6: Vec<_> = (0..6)
            .flat_map(|i| (i + 1..6).map(move |j| (i, j)))
            .collect();
        assert_eq!(minimum_vertex_cover(6, &k6).unwrap().len(), 5);
    }

    #[test]
    fn matches_brute_force_on_pseudorandom_graphs() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..300 {
            let n = 2 + (next() % 11) as usize;
            let density = next() % 100;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if next() % 100 < density {
                        edges.push((u, v));
                    }
                }
            }
            let c = minimum_vertex_cover(n, &edges).unwrap();
            assert!(is_vertex_cover(n, &edges, &c));
            assert_eq!(c.len(), brute_force(n, &edges), "n={n} edges={edges:?}");
        }
    }
}
