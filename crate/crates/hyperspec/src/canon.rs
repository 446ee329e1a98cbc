//! Canonical forms, isomorphism tests, automorphism generators, and vertex
//! orbits for hypergraphs.
//!
//! Canonicalization works on the bipartite incidence graph (vertex nodes on
//! one side, edge nodes on the other, edge nodes initially colored by edge
//! size) with iterative color refinement and individualization backtracking.
//! Every discrete refinement yields a candidate relabeling; the canonical
//! form is the lexicographically smallest relabeled-edge-list encoding over
//! all candidates. Two leaves that produce the same encoding differ by an
//! automorphism, which is harvested both as output and to prune the search.

use std::collections::HashMap;

use crate::hypercore::Hypergraph;
use crate::spectra::{adjacency_matrix, ENTRY_TOL};
use crate::Error;

/// Total-order key for a hypergraph: equal keys exactly for isomorphic
/// graphs. `bytes` encodes the relabeled, sorted edge list (exact, not a
/// hash); `relabeling[v]` is the canonical name of vertex `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    pub bytes: Vec<u8>,
    pub relabeling: Vec<usize>,
}

impl CanonicalForm {
    /// The key as lowercase hex, for line-oriented reports and external
    /// deduplication.
    pub fn hex_key(&self) -> String {
        let mut s = String::with_capacity(self.bytes.len() * 2);
        for b in &self.bytes {
            s.push_str(&format!("{b:02x}"));
        }
        s
    }
}

/// Disjoint vertex classes under the automorphism group; a partition of
/// `0..n` with each orbit sorted and orbits ordered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    pub orbits: Vec<Vec<usize>>,
}

impl OrbitPartition {
    /// One representative (the smallest vertex) per orbit.
    pub fn representatives(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o[0]).collect()
    }

    /// The orbit containing `v`, if `v` is covered.
    pub fn orbit_of(&self, v: usize) -> Option<&[usize]> {
        self.orbits
            .iter()
            .find(|o| o.binary_search(&v).is_ok())
            .map(|o| o.as_slice())
    }
}

/// Canonical form of `h`; deterministic across runs and invariant under
/// vertex relabeling.
pub fn canonical_form(h: &Hypergraph) -> CanonicalForm {
    search(h).0
}

/// Exact isomorphism test via canonical keys, with cheap invariant screens
/// first.
pub fn are_isomorphic(h1: &Hypergraph, h2: &Hypergraph) -> bool {
    if h1.n() != h2.n() || h1.m() != h2.m() {
        return false;
    }
    let mut d1 = h1.degrees();
    let mut d2 = h2.degrees();
    d1.sort_unstable();
    d2.sort_unstable();
    if d1 != d2 {
        return false;
    }
    let mut s1: Vec<usize> = h1.edges().iter().map(|e| e.len()).collect();
    let mut s2: Vec<usize> = h2.edges().iter().map(|e| e.len()).collect();
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return false;
    }
    canonical_form(h1).bytes == canonical_form(h2).bytes
}

/// Automorphism generators harvested from the canonicalization search:
/// every returned permutation maps edges onto edges. The returned set
/// generates a group whose vertex orbits equal [`orbit_partition`].
pub fn automorphism_generators(h: &Hypergraph) -> Vec<Vec<usize>> {
    search(h).1
}

/// Vertex orbits of the automorphism group, computed by union-find over
/// the action of the harvested generators.
pub fn orbit_partition(h: &Hypergraph) -> OrbitPartition {
    let gens = automorphism_generators(h);
    let mut uf = UnionFind::new(h.n());
    for g in &gens {
        for (v, &image) in g.iter().enumerate() {
            uf.union(v, image);
        }
    }
    OrbitPartition {
        orbits: uf.into_classes(),
    }
}

/// True exactly when conjugating the adjacency matrix by the permutation
/// leaves it unchanged, i.e. `A[σ(i)][σ(j)] = A[i][j]` for all pairs —
/// which is the matrix formulation of "σ is an automorphism".
pub fn permutation_commutes(h: &Hypergraph, sigma: &[usize]) -> Result<bool, Error> {
    let n = h.n();
    if sigma.len() != n {
        return Err(Error::InvalidPermutation(sigma.to_vec(), n));
    }
    let mut seen = vec![false; n];
    for &s in sigma {
        if s >= n || seen[s] {
            return Err(Error::InvalidPermutation(sigma.to_vec(), n));
        }
        seen[s] = true;
    }
    let a = adjacency_matrix(h);
    // Nonzero entries are bounded away from zero (each is a sum of weights
    // ≥ 1/(|e|−1)), so mapping every stored entry onto an equal entry under
    // the bijection σ pins the whole matrix.
    for &(i, j, w) in a.entries() {
        if (a.get(sigma[i], sigma[j]) - w).abs() > ENTRY_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Search internals
// ---------------------------------------------------------------------------

/// Runs the full individualize-refine search, returning the canonical form
/// and the harvested automorphism generators.
fn search(h: &Hypergraph) -> (CanonicalForm, Vec<Vec<usize>>) {
    let n = h.n();
    let m = h.m();
    // Incidence-graph adjacency: nodes 0..n are vertices, n..n+m edges.
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n + m];
    for (ei, e) in h.edges().iter().enumerate() {
        for &v in e {
            adj[v].push(n + ei);
            adj[n + ei].push(v);
        }
    }
    // Initial colors: all vertices in one cell; edge nodes grouped by size
    // (ranked), kept disjoint from the vertex cell.
    let mut sizes: Vec<usize> = h.edges().iter().map(|e| e.len()).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let mut colors = vec![0usize; n + m];
    for (ei, e) in h.edges().iter().enumerate() {
        let rank = sizes.binary_search(&e.len()).unwrap();
        colors[n + ei] = 1 + rank;
    }
    let mut s = Searcher {
        h,
        n,
        adj,
        best: None,
        leaf_first: HashMap::new(),
        generators: Vec::new(),
    };
    let mut path = Vec::new();
    s.explore(colors, &mut path);
    let (bytes, relabeling) = s.best.expect("search visits at least one leaf");
    (CanonicalForm { bytes, relabeling }, s.generators)
}

struct Searcher<'a> {
    h: &'a Hypergraph,
    n: usize,
    adj: Vec<Vec<usize>>,
    /// Lexicographically smallest encoding seen, with its relabeling.
    best: Option<(Vec<u8>, Vec<usize>)>,
    /// First relabeling found per distinct leaf encoding.
    leaf_first: HashMap<Vec<u8>, Vec<usize>>,
    generators: Vec<Vec<usize>>,
}

impl Searcher<'_> {
    fn explore(&mut self, mut colors: Vec<usize>, path: &mut Vec<usize>) {
        self.refine(&mut colors);
        // Target: the non-singleton vertex cell with the smallest color;
        // its members are tried in ascending vertex order.
        let target = self.smallest_nonsingleton_vertex_cell(&colors);
        let Some(cell) = target else {
            self.record_leaf(&colors);
            return;
        };
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            if self.pruned_by_orbit(v, &tried, path) {
                continue;
            }
            let mut child = colors.clone();
            // Individualize v: split it off its cell, preserving cell order.
            for c in child.iter_mut() {
                *c *= 2;
            }
            child[v] += 1;
            path.push(v);
            self.explore(child, path);
            path.pop();
            tried.push(v);
        }
    }

    /// Orbit pruning: skip candidate `v` when some already-found generator
    /// fixes every vertex individualized so far and connects `v` to an
    /// already-explored candidate — the subtree under `v` is then the
    /// mirror image of an explored one.
    fn pruned_by_orbit(&self, v: usize, tried: &[usize], path: &[usize]) -> bool {
        if tried.is_empty() || self.generators.is_empty() {
            return false;
        }
        let fixing: Vec<&Vec<usize>> = self
            .generators
            .iter()
            .filter(|g| path.iter().all(|&p| g[p] == p))
            .collect();
        if fixing.is_empty() {
            return false;
        }
        // Closure of {v} under the path-fixing generators.
        let mut orbit = vec![v];
        let mut frontier = vec![v];
        while let Some(u) = frontier.pop() {
            for g in &fixing {
                for w in [g[u], g.iter().position(|&x| x == u).unwrap()] {
                    if !orbit.contains(&w) {
                        orbit.push(w);
                        frontier.push(w);
                    }
                }
            }
        }
        orbit.iter().any(|u| tried.contains(u))
    }

    /// Iterative color refinement: re-rank nodes by (color, sorted multiset
    /// of neighbor colors) until the partition stops splitting. Signatures
    /// depend only on colors, never on node indices, so refinement commutes
    /// with relabeling.
    fn refine(&self, colors: &mut Vec<usize>) {
        let total = colors.len();
        loop {
            let mut sigs: Vec<(usize, Vec<usize>, usize)> = Vec::with_capacity(total);
            for node in 0..total {
                let mut nb: Vec<usize> = self.adj[node].iter().map(|&x| colors[x]).collect();
                nb.sort_unstable();
                sigs.push((colors[node], nb, node));
            }
            sigs.sort_unstable();
            let mut new_colors = vec![0usize; total];
            let mut classes = 0usize;
            for i in 0..total {
                if i > 0 && (sigs[i].0, &sigs[i].1) != (sigs[i - 1].0, &sigs[i - 1].1) {
                    classes += 1;
                }
                new_colors[sigs[i].2] = classes;
            }
            let old_classes = {
                let mut c: Vec<usize> = colors.clone();
                c.sort_unstable();
                c.dedup();
                c.len()
            };
            *colors = new_colors;
            if classes + 1 == old_classes {
                // No new splits this round: stable.
                break;
            }
        }
    }

    /// The members of the lowest-color vertex cell with ≥ 2 members, or
    /// `None` when every vertex sits alone (a leaf).
    fn smallest_nonsingleton_vertex_cell(&self, colors: &[usize]) -> Option<Vec<usize>> {
        let mut by_color: HashMap<usize, Vec<usize>> = HashMap::new();
        for (v, &color) in colors.iter().enumerate() {
            by_color.entry(color).or_default().push(v);
        }
        by_color
            .into_iter()
            .filter(|(_, members)| members.len() >= 2)
            .min_by_key(|&(color, _)| color)
            .map(|(_, mut members)| {
                members.sort_unstable();
                members
            })
    }

    fn record_leaf(&mut self, colors: &[usize]) {
        // Rank vertices by color: canonical label of v is the rank of its
        // (now unique) color among vertex nodes.
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_unstable_by_key(|&v| colors[v]);
        let mut perm = vec![0usize; self.n];
        for (rank, &v) in order.iter().enumerate() {
            perm[v] = rank;
        }
        let bytes = encode_relabeled(self.h, &perm);
        if let Some(first) = self.leaf_first.get(&bytes) {
            // Same encoding as an earlier leaf: their relabelings differ by
            // an automorphism σ = first⁻¹ ∘ perm.
            let mut inv_first = vec![0usize; self.n];
            for (v, &c) in first.iter().enumerate() {
                inv_first[c] = v;
            }
            let sigma: Vec<usize> = perm.iter().map(|&c| inv_first[c]).collect();
            if sigma.iter().enumerate().any(|(v, &s)| v != s)
                && !self.generators.contains(&sigma)
            {
                debug_assert!(is_automorphism(self.h, &sigma));
                self.generators.push(sigma);
            }
        } else {
            self.leaf_first.insert(bytes.clone(), perm.clone());
        }
        let better = match &self.best {
            None => true,
            Some((best_bytes, _)) => bytes < *best_bytes,
        };
        if better {
            self.best = Some((bytes, perm));
        }
    }
}

/// Byte encoding of `h` relabeled by `perm`: `n`, `m`, then each sorted
/// edge as (length, vertices), with the edge list itself sorted. Two
/// hypergraphs get equal encodings exactly when the relabelings carry one
/// onto the other.
fn encode_relabeled(h: &Hypergraph, perm: &[usize]) -> Vec<u8> {
    let mut edges: Vec<Vec<usize>> = h
        .edges()
        .iter()
        .map(|e| {
            let mut mapped: Vec<usize> = e.iter().map(|&v| perm[v]).collect();
            mapped.sort_unstable();
            mapped
        })
        .collect();
    edges.sort_unstable();
    let mut bytes = Vec::with_capacity(4 + edges.iter().map(|e| 2 + 2 * e.len()).sum::<usize>());
    let push16 = |bytes: &mut Vec<u8>, x: usize| {
        debug_assert!(x <= u16::MAX as usize);
        bytes.extend_from_slice(&(x as u16).to_le_bytes());
    };
    push16(&mut bytes, h.n());
    push16(&mut bytes, edges.len());
    for e in &edges {
        push16(&mut bytes, e.len());
        for &v in e {
            push16(&mut bytes, v);
        }
    }
    bytes
}

fn is_automorphism(h: &Hypergraph, sigma: &[usize]) -> bool {
    h.relabel(sigma).map(|g| g == *h).unwrap_or(false)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Smaller root wins, keeping representatives minimal.
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }

    fn into_classes(mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut classes: HashMap<usize, Vec<usize>> = HashMap::new();
        for v in 0..n {
            let root = self.find(v);
            classes.entry(root).or_default().push(v);
        }
        let mut out: Vec<Vec<usize>> = classes.into_values().collect();
        for c in out.iter_mut() {
            c.sort_unstable();
        }
        out.sort_unstable_by_key(|c| c[0]);
        out
    }
}
