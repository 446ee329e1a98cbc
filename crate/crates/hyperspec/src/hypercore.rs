//! Hypergraph data model and structural analysis: degrees, connectivity,
//! distances, hypercycle detection, and r-cyclicity classification.

use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

use crate::Error;

/// A finite hypergraph on the vertex set `0..n`.
///
/// Edges are vertex sets of size ≥ 2, stored strictly sorted; the edge list
/// itself is kept in lexicographic order and duplicate-free, so structural
/// equality of two `Hypergraph` values is plain `==`. Values are immutable
/// after construction; every operation is a pure function.
///
/// The JSON form is `{"n": <int>, "edges": [[<int>, ...], ...]}`; edges are
/// normalized (sorted, deduplication rejected) on deserialization.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph", into = "RawHypergraph")]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
}

/// Wire form of [`Hypergraph`]; construction invariants are enforced when
/// converting into the validated type.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawHypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl TryFrom<RawHypergraph> for Hypergraph {
    type Error = Error;

    fn try_from(raw: RawHypergraph) -> Result<Self, Error> {
        Hypergraph::new(raw.n, raw.edges)
    }
}

impl From<Hypergraph> for RawHypergraph {
    fn from(h: Hypergraph) -> Self {
        RawHypergraph {
            n: h.n,
            edges: h.edges,
        }
    }
}

impl Hypergraph {
    /// Builds a hypergraph from a vertex count and an edge list.
    ///
    /// Each edge is sorted; the edge list is sorted lexicographically.
    /// Rejects edges with fewer than 2 vertices, repeated vertices, vertices
    /// outside `0..n`, and duplicate edges.
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self, Error> {
        let mut norm: Vec<Vec<usize>> = Vec::with_capacity(edges.len());
        for mut e in edges {
            e.sort_unstable();
            if e.len() < 2 {
                return Err(Error::EdgeTooSmall(e));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::RepeatedVertex(e));
            }
            if let Some(&v) = e.last() {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            norm.push(e);
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].clone()));
        }
        Ok(Hypergraph { n, edges: norm })
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// The sorted edge list.
    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// The edge at `index` (panics if out of bounds, like slice indexing).
    pub fn edge(&self, index: usize) -> &[usize] {
        &self.edges[index]
    }

    /// True if the (sorted or unsorted) vertex set is an edge of this graph.
    pub fn contains_edge(&self, edge: &[usize]) -> bool {
        let mut e = edge.to_vec();
        e.sort_unstable();
        self.edges.binary_search(&e).is_ok()
    }

    /// Number of edges incident with vertex `v`.
    pub fn degree(&self, v: usize) -> Result<usize, Error> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(self.edges.iter().filter(|e| e.binary_search(&v).is_ok()).count())
    }

    /// Degree of every vertex, indexed by vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0usize; self.n];
        for e in &self.edges {
            for &v in e {
                d[v] += 1;
            }
        }
        d
    }

    /// For each vertex, the indices of its incident edges.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v].push(i);
            }
        }
        inc
    }

    /// True if every vertex can reach every other by walking through shared
    /// edges (one component). Isolated vertices make a graph with `n > 0`
    /// disconnected; the empty graph (`n = 0`) counts as connected.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let inc = self.incidence();
        let mut seen_v = vec![false; self.n];
        let mut seen_e = vec![false; self.edges.len()];
        let mut queue = VecDeque::new();
        seen_v[0] = true;
        queue.push_back(0usize);
        while let Some(v) = queue.pop_front() {
            for &ei in &inc[v] {
                if seen_e[ei] {
                    continue;
                }
                seen_e[ei] = true;
                for &u in &self.edges[ei] {
                    if !seen_v[u] {
                        seen_v[u] = true;
                        queue.push_back(u);
                    }
                }
            }
        }
        seen_v.into_iter().all(|s| s)
    }

    /// Returns `Some(k)` if every edge has exactly `k` vertices, `None` if
    /// edge sizes differ. Errors if there are no edges at all.
    pub fn is_k_uniform(&self) -> Result<Option<usize>, Error> {
        let first = self.edges.first().ok_or(Error::NoEdges)?;
        let k = first.len();
        if self.edges.iter().all(|e| e.len() == k) {
            Ok(Some(k))
        } else {
            Ok(None)
        }
    }

    /// The cyclicity `r = (k − 1)·m − (n − 1)` of a connected k-uniform
    /// hypergraph: 0 for supertrees, 1 for unicyclic graphs.
    pub fn cyclicity_r(&self) -> Result<i64, Error> {
        if !self.is_connected() {
            return Err(Error::NotConnected);
        }
        let k = self.is_k_uniform()?.ok_or(Error::NotUniform)?;
        let m = self.edges.len() as i64;
        Ok((k as i64 - 1) * m - (self.n as i64 - 1))
    }

    /// True if some hypercycle exists, found by explicit search: either two
    /// edges sharing two or more vertices, or a cycle in the bipartite
    /// incidence graph (vertex nodes on one side, edge nodes on the other).
    ///
    /// The incidence graph has a cycle exactly when the hypergraph does, so
    /// this is the search-based cross-check for `cyclicity_r == 0`.
    pub fn has_hypercycle(&self) -> bool {
        // A pair of edges sharing ≥ 2 vertices is already a cycle (the
        // shared pair gives two distinct vertex-edge-vertex routes).
        for (i, e) in self.edges.iter().enumerate() {
            for f in &self.edges[i + 1..] {
                if shared_count(e, f) >= 2 {
                    return true;
                }
            }
        }
        // Otherwise look for a back edge in a DFS forest of the incidence
        // graph. Nodes 0..n are vertices, n..n+m are edges.
        let total = self.n + self.edges.len();
        let mut seen = vec![false; total];
        let inc = self.incidence();
        for start in 0..total {
            if seen[start] {
                continue;
            }
            // Iterative DFS carrying the parent node to ignore the tree edge.
            let mut stack = vec![(start, usize::MAX)];
            seen[start] = true;
            while let Some((node, parent)) = stack.pop() {
                let neighbors: &[usize] = if node < self.n {
                    &inc[node]
                } else {
                    &self.edges[node - self.n]
                };
                for &nb in neighbors {
                    // Translate to incidence-graph node ids.
                    let nb_node = if node < self.n { nb + self.n } else { nb };
                    if nb_node == parent {
                        continue;
                    }
                    if seen[nb_node] {
                        return true;
                    }
                    seen[nb_node] = true;
                    stack.push((nb_node, node));
                }
            }
        }
        false
    }

    /// True if this hypergraph is connected, uniform, has cyclicity 1, and
    /// an explicit search finds exactly one hypercycle.
    pub fn is_unicyclic(&self) -> bool {
        match self.cyclicity_r() {
            Ok(1) => self.unique_core_cycle().is_ok(),
            _ => false,
        }
    }

    /// The unique hypercycle of a unicyclic hypergraph, as alternating
    /// anchor vertices `v₁..v_q` and edge indices `e₁..e_q` (edge `eᵢ`
    /// joins `vᵢ` to `vᵢ₊₁`, and `e_q` closes back to `v₁`). For the
    /// two-edge cycle both shared vertices are reported as anchors.
    ///
    /// Orientation is deterministic: the walk starts at the smallest anchor
    /// vertex and leaves it through the smaller incident core edge index.
    pub fn find_unique_cycle(&self) -> Result<Hypercycle, Error> {
        match self.cyclicity_r() {
            Ok(1) => {}
            Ok(r) => {
                return Err(Error::NotUnicyclic(format!("cyclicity is {r}, expected 1")));
            }
            Err(e) => return Err(e),
        }
        let cycle = self.unique_core_cycle()?;
        cycle.validate(self)?;
        Ok(cycle)
    }

    /// Length of the shortest hyperpath between `u` and `v`, counted in
    /// edges; 0 exactly when `u == v`. Errors on a disconnected graph.
    pub fn distance(&self, u: usize, v: usize) -> Result<usize, Error> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if !self.is_connected() {
            return Err(Error::NotConnected);
        }
        if u == v {
            return Ok(0);
        }
        // Breadth-first search where one step moves across a single edge.
        let inc = self.incidence();
        let mut dist = vec![usize::MAX; self.n];
        dist[u] = 0;
        let mut queue = VecDeque::new();
        queue.push_back(u);
        while let Some(w) = queue.pop_front() {
            for &ei in &inc[w] {
                for &x in &self.edges[ei] {
                    if dist[x] == usize::MAX {
                        dist[x] = dist[w] + 1;
                        if x == v {
                            return Ok(dist[x]);
                        }
                        queue.push_back(x);
                    }
                }
            }
        }
        // Unreachable for a connected graph.
        Err(Error::NotConnected)
    }

    /// Returns a new hypergraph with `remove` deleted and `add` inserted,
    /// leaving `self` untouched. Every removed edge must be present; added
    /// edges must be new (checked against the state after removal) and
    /// well-formed within the same vertex set.
    pub fn edit(&self, remove: &[Vec<usize>], add: &[Vec<usize>]) -> Result<Self, Error> {
        let mut kept: Vec<Option<&Vec<usize>>> = self.edges.iter().map(Some).collect();
        for r in remove {
            let mut key = r.clone();
            key.sort_unstable();
            // Find a not-yet-removed occurrence; asking twice for the same
            // edge is a missing-edge error on the second request.
            let slot = kept
                .iter()
                .position(|e| e.map(|e| *e == key).unwrap_or(false))
                .ok_or(Error::MissingEdge(key.clone()))?;
            kept[slot] = None;
        }
        let mut edges: Vec<Vec<usize>> = kept.into_iter().flatten().cloned().collect();
        edges.extend(add.iter().cloned());
        // `new` re-validates everything, including duplicate creation.
        Hypergraph::new(self.n, edges)
    }

    /// Applies a vertex permutation (`perm[v]` is the new name of `v`) and
    /// renormalizes the edge order.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, Error> {
        if perm.len() != self.n {
            return Err(Error::InvalidPermutation(perm.to_vec(), self.n));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || seen[p] {
                return Err(Error::InvalidPermutation(perm.to_vec(), self.n));
            }
            seen[p] = true;
        }
        let edges = self
            .edges
            .iter()
            .map(|e| e.iter().map(|&v| perm[v]).collect())
            .collect();
        Hypergraph::new(self.n, edges)
    }

    /// Strips incidence-graph leaves until only the 2-core remains, then
    /// checks the core is a single cycle and extracts it.
    fn unique_core_cycle(&self) -> Result<Hypercycle, Error> {
        let m = self.edges.len();
        let inc = self.incidence();
        // deg[node] over incidence-graph nodes: 0..n vertices, n..n+m edges.
        let mut deg: Vec<usize> = (0..self.n)
            .map(|v| inc[v].len())
            .chain(self.edges.iter().map(|e| e.len()))
            .collect();
        let mut alive = vec![true; self.n + m];
        let mut queue: VecDeque<usize> =
            (0..self.n + m).filter(|&x| deg[x] <= 1).collect();
        while let Some(x) = queue.pop_front() {
            if !alive[x] {
                continue;
            }
            alive[x] = false;
            let neighbors: Vec<usize> = if x < self.n {
                inc[x].iter().map(|&e| e + self.n).collect()
            } else {
                self.edges[x - self.n].clone()
            };
            for nb in neighbors {
                if alive[nb] {
                    deg[nb] -= 1;
                    if deg[nb] <= 1 {
                        queue.push_back(nb);
                    }
                }
            }
        }
        // In the core every node must have degree exactly 2 and the core
        // must be one closed walk; anything else means zero or several
        // cycles.
        let core: Vec<usize> = (0..self.n + m).filter(|&x| alive[x]).collect();
        if core.is_empty() {
            return Err(Error::NotUnicyclic("no cycle found".into()));
        }
        if core.iter().any(|&x| deg[x] != 2) {
            return Err(Error::Inconsistency(
                "cycle core is not a disjoint union of cycles".into(),
            ));
        }
        let core_neighbors = |x: usize| -> Vec<usize> {
            if x < self.n {
                inc[x]
                    .iter()
                    .map(|&e| e + self.n)
                    .filter(|&nb| alive[nb])
                    .collect()
            } else {
                self.edges[x - self.n]
                    .iter().copied()
                    .filter(|&nb| alive[nb])
                    .collect()
            }
        };
        // Start at the smallest surviving vertex node, leave through the
        // smaller edge index: fixes orientation deterministically.
        let start = *core
            .iter()
            .find(|&&x| x < self.n)
            .ok_or_else(|| Error::Inconsistency("cycle core holds no vertex".into()))?;
        let mut vertices = vec![start];
        let mut edge_indices = Vec::new();
        let mut prev = start;
        let mut cur = *core_neighbors(start).iter().min().unwrap();
        loop {
            edge_indices.push(cur - self.n);
            let next_v = core_neighbors(cur)
                .into_iter()
                .find(|&x| x != prev)
                .ok_or_else(|| Error::Inconsistency("broken cycle walk".into()))?;
            if next_v == start {
                break;
            }
            vertices.push(next_v);
            let next_e = core_neighbors(next_v)
                .into_iter()
                .find(|&x| x != cur)
                .ok_or_else(|| Error::Inconsistency("broken cycle walk".into()))?;
            prev = next_v;
            cur = next_e;
        }
        // A second component in the core would contradict deg == 2 plus a
        // closed walk covering `core` — verify the cover.
        if vertices.len() + edge_indices.len() != core.len() {
            return Err(Error::Inconsistency(
                "more than one cycle found in the core".into(),
            ));
        }
        Ok(Hypercycle {
            vertices,
            edge_indices,
        })
    }
}

/// Number of vertices two sorted edges share.
pub fn shared_count(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// Shared vertices of two sorted edges.
pub fn shared_vertices(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// A loose path: alternating anchor vertices `v₁..v_{q+1}` and edge indices
/// `e₁..e_q` where `eᵢ` joins `vᵢ` to `vᵢ₊₁`, consecutive edges meet in
/// exactly the shared anchor, and non-consecutive edges are disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperpath {
    pub vertices: Vec<usize>,
    pub edge_indices: Vec<usize>,
}

impl Hyperpath {
    /// Path length `L(P)`: the number of edges.
    pub fn len(&self) -> usize {
        self.edge_indices.len()
    }

    /// True for the degenerate zero-length path (a single vertex).
    pub fn is_empty(&self) -> bool {
        self.edge_indices.is_empty()
    }

    /// Checks the loose-path conditions against the parent hypergraph.
    pub fn validate(&self, h: &Hypergraph) -> Result<(), Error> {
        let q = self.edge_indices.len();
        if self.vertices.len() != q + 1 {
            return Err(Error::InvalidParameter(format!(
                "hyperpath needs q+1 vertices for q = {q}, got {}",
                self.vertices.len()
            )));
        }
        validate_distinct(&self.vertices, "hyperpath vertices")?;
        validate_distinct(&self.edge_indices, "hyperpath edges")?;
        for (i, &ei) in self.edge_indices.iter().enumerate() {
            if ei >= h.m() {
                return Err(Error::InvalidParameter(format!("edge index {ei} out of range")));
            }
            let e = h.edge(ei);
            for &v in [self.vertices[i], self.vertices[i + 1]].iter() {
                if e.binary_search(&v).is_err() {
                    return Err(Error::InvalidParameter(format!(
                        "edge {ei} does not contain anchor {v}"
                    )));
                }
            }
        }
        for i in 0..q {
            for j in i + 1..q {
                let e = h.edge(self.edge_indices[i]);
                let f = h.edge(self.edge_indices[j]);
                let shared = shared_vertices(e, f);
                if j == i + 1 {
                    if shared != vec![self.vertices[i + 1]] {
                        return Err(Error::InvalidParameter(format!(
                            "consecutive edges {i},{j} must share exactly the anchor"
                        )));
                    }
                } else if !shared.is_empty() {
                    return Err(Error::InvalidParameter(format!(
                        "non-consecutive edges {i},{j} must be disjoint"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A hypercycle: anchors `v₁..v_q` and edges `e₁..e_q`, with `eᵢ` joining
/// `vᵢ` to `vᵢ₊₁` and `e_q` closing back to `v₁`. For `q = 2` the two edges
/// share exactly the two anchors; for `q ≥ 3` consecutive edges share
/// exactly one anchor and non-adjacent edges are disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypercycle {
    pub vertices: Vec<usize>,
    pub edge_indices: Vec<usize>,
}

impl Hypercycle {
    /// Cycle length `L(C) = q`: the number of edges.
    pub fn q(&self) -> usize {
        self.edge_indices.len()
    }

    /// Checks the hypercycle conditions against the parent hypergraph.
    pub fn validate(&self, h: &Hypergraph) -> Result<(), Error> {
        let q = self.edge_indices.len();
        if q < 2 {
            return Err(Error::InvalidParameter("a hypercycle has at least 2 edges".into()));
        }
        if self.vertices.len() != q {
            return Err(Error::InvalidParameter(format!(
                "hypercycle needs q vertices for q = {q}, got {}",
                self.vertices.len()
            )));
        }
        validate_distinct(&self.vertices, "hypercycle vertices")?;
        validate_distinct(&self.edge_indices, "hypercycle edges")?;
        for &ei in &self.edge_indices {
            if ei >= h.m() {
                return Err(Error::InvalidParameter(format!("edge index {ei} out of range")));
            }
        }
        for i in 0..q {
            let e = h.edge(self.edge_indices[i]);
            for &v in [self.vertices[i], self.vertices[(i + 1) % q]].iter() {
                if e.binary_search(&v).is_err() {
                    return Err(Error::InvalidParameter(format!(
                        "cycle edge {i} does not contain its anchor {v}"
                    )));
                }
            }
        }
        if q == 2 {
            let e = h.edge(self.edge_indices[0]);
            let f = h.edge(self.edge_indices[1]);
            let mut anchors = self.vertices.clone();
            anchors.sort_unstable();
            if shared_vertices(e, f) != anchors {
                return Err(Error::InvalidParameter(
                    "a 2-cycle's edges must share exactly its two anchors".into(),
                ));
            }
            return Ok(());
        }
        for i in 0..q {
            for j in i + 1..q {
                let e = h.edge(self.edge_indices[i]);
                let f = h.edge(self.edge_indices[j]);
                let shared = shared_vertices(e, f);
                let consecutive = j == i + 1 || (i == 0 && j == q - 1);
                if consecutive {
                    let anchor = if j == i + 1 { self.vertices[j] } else { self.vertices[0] };
                    if shared != vec![anchor] {
                        return Err(Error::InvalidParameter(format!(
                            "consecutive cycle edges {i},{j} must share exactly anchor {anchor}"
                        )));
                    }
                } else if !shared.is_empty() {
                    return Err(Error::InvalidParameter(format!(
                        "non-adjacent cycle edges {i},{j} must be disjoint"
                    )));
                }
            }
        }
        Ok(())
    }
}

fn validate_distinct(xs: &[usize], what: &str) -> Result<(), Error> {
    let mut sorted = xs.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidParameter(format!("{what} must be distinct")));
    }
    Ok(())
}
