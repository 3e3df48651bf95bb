//! Cycle, path and block queries on plane graphs.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::plane::{Edge, GraphError, PlaneGraph, Vertex};
use crate::union_find::UnionFind;

/// A 2-connected block (or a bridge) of an edge subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl PlaneGraph {
    /// Shortest cycle whose length lies in `[lo, hi]`, as the lexicographically
    /// least vertex sequence among the shortest ones. Sequences start at their
    /// smallest vertex and continue towards the smaller of its two cycle
    /// neighbours.
    pub fn shortest_cycle_in_range(&self, lo: usize, hi: usize) -> Result<Option<Vec<Vertex>>, GraphError> {
        if lo < 3 || lo > hi {
            return Err(GraphError::InvalidRange(lo, hi));
        }
        let adj = self.sorted_adjacency();
        for len in lo..=hi.min(self.n()) {
            for s in self.vertices() {
                let mut path = vec![s];
                let mut on_path = vec![false; self.n() + 1];
                on_path[s] = true;
                if let Some(c) = first_cycle(&adj, len, &mut path, &mut on_path) {
                    return Ok(Some(c));
                }
            }
        }
        Ok(None)
    }

    /// Every cycle of length at most `max_len`, each once, in canonical form.
    pub fn cycles_up_to(&self, max_len: usize) -> Vec<Vec<Vertex>> {
        let adj = self.sorted_adjacency();
        let mut out = Vec::new();
        for s in self.vertices() {
            let mut path = vec![s];
            let mut on_path = vec![false; self.n() + 1];
            on_path[s] = true;
            all_cycles(&adj, max_len, &mut path, &mut on_path, &mut out);
        }
        out
    }

    /// Whether no cycle has length in `[lo, hi]`.
    pub fn avoids_cycle_lengths(&self, lo: usize, hi: usize) -> bool {
        matches!(self.shortest_cycle_in_range(lo, hi), Ok(None))
    }

    /// BFS distance from `u` to `v` in the graph minus `excluded`.
    pub fn distance_avoiding(&self, u: Vertex, v: Vertex, excluded: &BTreeSet<Vertex>) -> Option<usize> {
        if excluded.contains(&u) || excluded.contains(&v) {
            return None;
        }
        let mut dist = vec![usize::MAX; self.n() + 1];
        dist[u] = 0;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            if x == v {
                return Some(dist[x]);
            }
            for &y in self.rotation(x) {
                if dist[y] == usize::MAX && !excluded.contains(&y) {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// Whether a `u`-`v` path of length at most `len` avoids `excluded`.
    pub fn has_path_at_most(&self, u: Vertex, v: Vertex, len: usize, excluded: &BTreeSet<Vertex>) -> bool {
        self.distance_avoiding(u, v, excluded).is_some_and(|d| d <= len)
    }

    /// Blocks of the subgraph formed by `h`, ordered so that each block meets
    /// the union of the earlier ones in at most one vertex. Components are
    /// taken by smallest vertex; inside a component the blocks are visited
    /// breadth-first through cut vertices, smallest ids first.
    pub fn blocks(&self, h: &[Edge]) -> Result<Vec<Block>, GraphError> {
        let mut adj: BTreeMap<Vertex, BTreeSet<Vertex>> = BTreeMap::new();
        for e in h {
            if !self.has_edge(e.u(), e.v()) {
                return Err(GraphError::NoSuchEdge(e.u(), e.v()));
            }
            adj.entry(e.u()).or_default().insert(e.v());
            adj.entry(e.v()).or_default().insert(e.u());
        }
        let raw = biconnected_components(&adj);
        let mut blocks: Vec<Block> = raw
            .into_iter()
            .map(|mut edges| {
                edges.sort_unstable();
                edges.dedup();
                let vertices: BTreeSet<Vertex> = edges.iter().flat_map(|e| [e.u(), e.v()]).collect();
                Block {
                    vertices: vertices.into_iter().collect(),
                    edges,
                }
            })
            .collect();
        blocks.sort_by(|a, b| (&a.vertices, &a.edges).cmp(&(&b.vertices, &b.edges)));

        let mut by_vertex: BTreeMap<Vertex, Vec<usize>> = BTreeMap::new();
        for (i, b) in blocks.iter().enumerate() {
            for &v in &b.vertices {
                by_vertex.entry(v).or_default().push(i);
            }
        }
        let mut used = vec![false; blocks.len()];
        let mut order = Vec::with_capacity(blocks.len());
        for &start in adj.keys() {
            let Some(&root) = by_vertex[&start].iter().find(|&&i| !used[i]) else {
                continue;
            };
            used[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(b) = queue.pop_front() {
                order.push(b);
                for &v in &blocks[b].vertices {
                    for &other in &by_vertex[&v] {
                        if !used[other] {
                            used[other] = true;
                            queue.push_back(other);
                        }
                    }
                }
            }
        }
        Ok(order.into_iter().map(|i| blocks[i].clone()).collect())
    }

    /// Smallest cut vertex, if any.
    pub fn cut_vertex(&self) -> Option<Vertex> {
        let adj: BTreeMap<Vertex, BTreeSet<Vertex>> = self
            .vertices()
            .map(|v| (v, self.rotation(v).iter().copied().collect()))
            .collect();
        articulation_points(&adj).into_iter().next()
    }

    /// Connected with no cut vertex. Graphs on one or two vertices count when
    /// connected.
    pub fn is_two_connected(&self) -> bool {
        self.is_connected() && self.cut_vertex().is_none()
    }

    /// Edges joining two vertices of `cycle` that are not cycle edges.
    pub fn chords(&self, cycle: &[Vertex]) -> Vec<Edge> {
        let on: BTreeSet<Vertex> = cycle.iter().copied().collect();
        let own = cycle_edges(cycle);
        let mut out: Vec<Edge> = cycle
            .iter()
            .flat_map(|&u| self.rotation(u).iter().map(move |&v| Edge::new(u, v)))
            .filter(|e| on.contains(&e.u()) && on.contains(&e.v()) && !own.contains(e))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Vertices strictly inside `cycle`, inside meaning the side without the
    /// outer face. Faces are merged across every edge not on the cycle; the
    /// faces that do not end up with the outer face form the inside.
    pub fn interior_vertices(&self, cycle: &[Vertex]) -> Vec<Vertex> {
        let Some(outer) = self.outer_face() else {
            return Vec::new();
        };
        let own = cycle_edges(cycle);
        let mut uf = UnionFind::new(self.faces().len());
        for e in self.edges() {
            if own.contains(&e) {
                continue;
            }
            let a = self.face_of_dart(e.u(), e.v()).expect("edge");
            let b = self.face_of_dart(e.v(), e.u()).expect("edge");
            uf.union(a, b);
        }
        let outside = uf.find(outer);
        let on: BTreeSet<Vertex> = cycle.iter().copied().collect();
        let mut inside = BTreeSet::new();
        for (id, f) in self.faces().iter().enumerate() {
            if uf.find(id) != outside {
                inside.extend(f.boundary().iter().filter(|v| !on.contains(v)));
            }
        }
        inside.into_iter().collect()
    }

    /// Whether `cycle` is exactly the boundary of the outer face.
    pub fn bounds_outer_face(&self, cycle: &[Vertex]) -> bool {
        self.outer_face().is_some_and(|o| self.find_face(cycle) == Some(o))
    }

    fn sorted_adjacency(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new()];
        adj.extend(self.vertices().map(|v| self.neighbors_sorted(v)));
        adj
    }
}

/// Edges of a closed vertex sequence.
pub fn cycle_edges(cycle: &[Vertex]) -> BTreeSet<Edge> {
    let n = cycle.len();
    (0..n).map(|i| Edge::new(cycle[i], cycle[(i + 1) % n])).collect()
}

// Depth-first search for a cycle of exactly `len` vertices through path[0],
// using only vertices larger than path[0].
fn first_cycle(adj: &[Vec<Vertex>], len: usize, path: &mut Vec<Vertex>, on_path: &mut [bool]) -> Option<Vec<Vertex>> {
    let s = path[0];
    let last = *path.last().unwrap();
    if path.len() == len {
        if adj[last].binary_search(&s).is_ok() && path[1] < last {
            return Some(path.clone());
        }
        return None;
    }
    for &y in &adj[last] {
        if y <= s || on_path[y] {
            continue;
        }
        if path.len() == 1 && len >= 2 {
            // The second vertex must be the smaller cycle neighbour of s, so
            // some larger neighbour of s has to remain for the closing edge.
            if !adj[s].iter().any(|&z| z > y) {
                continue;
            }
        }
        path.push(y);
        on_path[y] = true;
        let found = first_cycle(adj, len, path, on_path);
        on_path[y] = false;
        path.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

fn all_cycles(
    adj: &[Vec<Vertex>],
    max_len: usize,
    path: &mut Vec<Vertex>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<Vertex>>,
) {
    let s = path[0];
    let last = *path.last().unwrap();
    if path.len() >= 3 && path[1] < last && adj[last].binary_search(&s).is_ok() {
        out.push(path.clone());
    }
    if path.len() == max_len {
        return;
    }
    for &y in &adj[last] {
        if y <= s || on_path[y] {
            continue;
        }
        path.push(y);
        on_path[y] = true;
        all_cycles(adj, max_len, path, on_path, out);
        on_path[y] = false;
        path.pop();
    }
}

fn biconnected_components(adj: &BTreeMap<Vertex, BTreeSet<Vertex>>) -> Vec<Vec<Edge>> {
    struct State<'a> {
        adj: &'a BTreeMap<Vertex, BTreeSet<Vertex>>,
        disc: BTreeMap<Vertex, usize>,
        low: BTreeMap<Vertex, usize>,
        time: usize,
        stack: Vec<Edge>,
        out: Vec<Vec<Edge>>,
    }
    fn dfs(st: &mut State<'_>, u: Vertex, parent: Option<Vertex>) {
        st.time += 1;
        st.disc.insert(u, st.time);
        st.low.insert(u, st.time);
        let nbrs: Vec<Vertex> = st.adj[&u].iter().copied().collect();
        for v in nbrs {
            if Some(v) == parent {
                continue;
            }
            if let Some(&dv) = st.disc.get(&v) {
                if dv < st.disc[&u] {
                    st.stack.push(Edge::new(u, v));
                    let l = st.low[&u].min(dv);
                    st.low.insert(u, l);
                }
            } else {
                st.stack.push(Edge::new(u, v));
                dfs(st, v, Some(u));
                let l = st.low[&u].min(st.low[&v]);
                st.low.insert(u, l);
                if st.low[&v] >= st.disc[&u] {
                    let mut comp = Vec::new();
                    while let Some(e) = st.stack.pop() {
                        comp.push(e);
                        if e == Edge::new(u, v) {
                            break;
                        }
                    }
                    st.out.push(comp);
                }
            }
        }
    }
    let mut st = State {
        adj,
        disc: BTreeMap::new(),
        low: BTreeMap::new(),
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for &v in adj.keys() {
        if !st.disc.contains_key(&v) {
            dfs(&mut st, v, None);
        }
    }
    st.out
}

fn articulation_points(adj: &BTreeMap<Vertex, BTreeSet<Vertex>>) -> BTreeSet<Vertex> {
    // A vertex is a cut vertex when it lies in two or more blocks.
    let mut count: BTreeMap<Vertex, usize> = BTreeMap::new();
    for comp in biconnected_components(adj) {
        let vs: BTreeSet<Vertex> = comp.iter().flat_map(|e| [e.u(), e.v()]).collect();
        for v in vs {
            *count.entry(v).or_default() += 1;
        }
    }
    count.into_iter().filter(|&(_, c)| c >= 2).map(|(v, _)| v).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_triangles() -> PlaneGraph {
        // Triangles 1 2 3 and 1 4 5 sharing vertex 1.
        PlaneGraph::new(vec![vec![2, 3, 4, 5], vec![3, 1], vec![1, 2], vec![5, 1], vec![1, 4]]).unwrap()
    }

    #[test]
    fn short_cycle_queries() {
        let tri = PlaneGraph::cycle(3).unwrap();
        assert_eq!(tri.shortest_cycle_in_range(4, 8).unwrap(), None);
        assert_eq!(tri.shortest_cycle_in_range(3, 3).unwrap(), Some(vec![1, 2, 3]));
        let c5 = PlaneGraph::cycle(5).unwrap();
        assert_eq!(c5.shortest_cycle_in_range(4, 8).unwrap(), Some(vec![1, 2, 3, 4, 5]));
        assert_eq!(two_triangles().shortest_cycle_in_range(4, 8).unwrap(), None);
        assert!(tri.shortest_cycle_in_range(2, 8).is_err());
        assert!(tri.shortest_cycle_in_range(5, 4).is_err());
    }

    #[test]
    fn paths_on_nine_cycle() {
        let c9 = PlaneGraph::cycle(9).unwrap();
        let none = BTreeSet::new();
        assert!(c9.has_path_at_most(1, 2, 1, &none));
        assert!(!c9.has_path_at_most(1, 5, 3, &none));
        assert!(c9.has_path_at_most(1, 5, 4, &none));
        // Cutting both arcs disconnects 1 from 5.
        let cut = BTreeSet::from([3, 7]);
        assert!(!c9.has_path_at_most(1, 5, 100, &cut));
    }

    #[test]
    fn blocks_of_tree_triangle_and_pendant() {
        let p = PlaneGraph::path(4).unwrap();
        assert_eq!(p.blocks(&p.edges()).unwrap().len(), 3);
        let tri = PlaneGraph::cycle(3).unwrap();
        assert_eq!(tri.blocks(&tri.edges()).unwrap().len(), 1);
        // Triangle 1 2 3 with pendant 3-4.
        let g = PlaneGraph::new(vec![vec![2, 3], vec![3, 1], vec![1, 2, 4], vec![3]]).unwrap();
        let blocks = g.blocks(&g.edges()).unwrap();
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[0].vertices, vec![1, 2, 3]);
        assert_eq!(blocks[1].edges, vec![Edge::new(3, 4)]);
    }

    #[test]
    fn blocks_reject_foreign_edges() {
        let tri = PlaneGraph::cycle(3).unwrap();
        assert!(tri.blocks(&[Edge::new(1, 4)]).is_err());
    }

    #[test]
    fn cut_vertex_of_bowtie() {
        assert_eq!(two_triangles().cut_vertex(), Some(1));
        assert!(PlaneGraph::cycle(9).unwrap().is_two_connected());
    }

    #[test]
    fn interior_of_cycles() {
        let g = PlaneGraph::new(vec![vec![2, 4, 3], vec![3, 4, 1], vec![1, 4, 2], vec![1, 2, 3]]).unwrap();
        let t123 = g.find_face(&[1, 2, 3]).unwrap();
        let t124 = g.find_face(&[1, 2, 4]).unwrap();
        let g = g.with_outer_face(t123).unwrap();
        assert!(g.bounds_outer_face(&[1, 2, 3]));
        assert_eq!(g.interior_vertices(&[1, 2, 3]), vec![4]);
        assert!(g.interior_vertices(&[1, 2, 4]).is_empty());
        let g = g.with_outer_face(t124).unwrap();
        assert!(g.interior_vertices(&[1, 2, 3]).is_empty());
    }

    #[test]
    fn chords_of_cycle() {
        let g = PlaneGraph::cycle(9).unwrap();
        let (h, _) = g.insert_path(0, 0, 2, 0).unwrap();
        let c: Vec<Vertex> = (1..=9).collect();
        assert_eq!(h.chords(&c), vec![Edge::new(1, 3)]);
    }
}
