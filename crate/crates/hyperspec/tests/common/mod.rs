//! Shared test oracles, all deliberately independent of the library's own
//! algorithms: a dense Jacobi eigensolver, an all-pairs distance oracle on
//! the walk graph, a backtracking isomorphism search, and a seeded
//! generator of random valid inputs.

#![allow(dead_code)] // each integration target uses its own subset

use hyperspec::hypercore::Hypergraph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest eigenvalue of a symmetric matrix by the cyclic Jacobi method:
/// rotate away off-diagonal entries until the off-diagonal Frobenius norm
/// dies, then read the diagonal. O(n³) per sweep and numerically boring on
/// purpose — it shares nothing with power iteration.
pub fn jacobi_largest_eigenvalue(dense: &[f64], n: usize) -> f64 {
    assert_eq!(dense.len(), n * n);
    let mut a = dense.to_vec();
    for _sweep in 0..200 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[p * n + q] * a[p * n + q];
            }
        }
        if off.sqrt() < 1e-15 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for i in 0..n {
                    let aip = a[i * n + p];
                    let aiq = a[i * n + q];
                    a[i * n + p] = c * aip - s * aiq;
                    a[i * n + q] = s * aip + c * aiq;
                }
                for i in 0..n {
                    let api = a[p * n + i];
                    let aqi = a[q * n + i];
                    a[p * n + i] = c * api - s * aqi;
                    a[q * n + i] = s * api + c * aqi;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).fold(f64::NEG_INFINITY, f64::max)
}

/// Spectral radius of a hypergraph via the dense Jacobi oracle.
pub fn oracle_spectral_radius(h: &Hypergraph) -> f64 {
    let a = hyperspec::spectra::adjacency_matrix(h);
    jacobi_largest_eigenvalue(&a.to_dense(), h.n())
}

/// All-pairs walk distances by Floyd–Warshall over the vertex co-occurrence
/// relation; `usize::MAX` marks unreachable pairs.
pub fn oracle_distances(h: &Hypergraph) -> Vec<Vec<usize>> {
    let n = h.n();
    const INF: usize = usize::MAX;
    let mut d = vec![vec![INF; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for e in h.edges() {
        for (ai, &u) in e.iter().enumerate() {
            for &v in &e[ai + 1..] {
                d[u][v] = 1;
                d[v][u] = 1;
            }
        }
    }
    for mid in 0..n {
        for i in 0..n {
            if d[i][mid] == INF {
                continue;
            }
            for j in 0..n {
                if d[mid][j] == INF {
                    continue;
                }
                let via = d[i][mid] + d[mid][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// True when `sigma` maps the edge set of `h1` onto the edge set of `h2` —
/// the textbook definition, applied literally.
pub fn is_isomorphism(h1: &Hypergraph, h2: &Hypergraph, sigma: &[usize]) -> bool {
    if h1.n() != h2.n() || h1.m() != h2.m() || sigma.len() != h1.n() {
        return false;
    }
    let mut mapped: Vec<Vec<usize>> = h1
        .edges()
        .iter()
        .map(|e| {
            let mut img: Vec<usize> = e.iter().map(|&v| sigma[v]).collect();
            img.sort_unstable();
            img
        })
        .collect();
    mapped.sort();
    mapped == h2.edges()
}

/// Backtracking isomorphism search with degree pruning: assigns images in
/// vertex order, rejecting any partial map that violates degrees or maps a
/// fully-assigned edge of `h1` off the edge set of `h2`. Independent of the
/// library's canonical labeling.
pub fn oracle_isomorphic(h1: &Hypergraph, h2: &Hypergraph) -> bool {
    if h1.n() != h2.n() || h1.m() != h2.m() {
        return false;
    }
    let n = h1.n();
    let deg1 = h1.degrees();
    let deg2 = h2.degrees();
    let mut sorted1 = deg1.clone();
    let mut sorted2 = deg2.clone();
    sorted1.sort_unstable();
    sorted2.sort_unstable();
    if sorted1 != sorted2 {
        return false;
    }
    // Assign high-degree (rare) vertices first to fail fast.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(deg1[v]));

    let mut sigma = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn consistent(h1: &Hypergraph, h2: &Hypergraph, sigma: &[usize]) -> bool {
        for e in h1.edges() {
            if e.iter().all(|&v| sigma[v] != usize::MAX) {
                let img: Vec<usize> = e.iter().map(|&v| sigma[v]).collect();
                if !h2.contains_edge(&img) {
                    return false;
                }
            }
        }
        true
    }

    #[allow(clippy::too_many_arguments)] // recursive backtracking state
    fn search(
        pos: usize,
        order: &[usize],
        deg1: &[usize],
        deg2: &[usize],
        h1: &Hypergraph,
        h2: &Hypergraph,
        sigma: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        for img in 0..sigma.len() {
            if used[img] || deg1[v] != deg2[img] {
                continue;
            }
            sigma[v] = img;
            used[img] = true;
            if consistent(h1, h2, sigma)
                && search(pos + 1, order, deg1, deg2, h1, h2, sigma, used)
            {
                return true;
            }
            sigma[v] = usize::MAX;
            used[img] = false;
        }
        false
    }

    search(0, &order, &deg1, &deg2, h1, h2, &mut sigma, &mut used)
}

/// A uniformly random permutation of `0..n`.
pub fn random_permutation(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// A random connected k-uniform unicyclic hypergraph: a loose cycle of
/// random length grown by attaching pendant edges at random vertices.
pub fn random_unicyclic(m: usize, k: usize, rng: &mut ChaCha8Rng) -> Hypergraph {
    assert!(k >= 3 && m >= 2);
    let q = rng.gen_range(2..=m);
    let mut g = hyperspec::families::loose_cycle(q, k).unwrap();
    for _ in q..m {
        let v = rng.gen_range(0..g.n());
        g = hyperspec::families::attach_pendants(&g, v, 1, k).unwrap();
    }
    g
}

/// Rejection-samples a valid block exchange on `h`: two distinct edges, a
/// random block size in `1..k`, and random blocks, redrawn until the spec
/// passes validation. Panics if 500 draws all fail, which only happens on
/// graphs that admit no exchange at all (such as the bare 2-cycle at k = 3).
pub fn random_swap_spec(
    h: &Hypergraph,
    rng: &mut ChaCha8Rng,
) -> hyperspec::transforms::SwapSpec {
    let k = h.is_k_uniform().unwrap().expect("uniform graph required");
    for _ in 0..500 {
        let e_index = rng.gen_range(0..h.m());
        let f_index = rng.gen_range(0..h.m());
        if e_index == f_index {
            continue;
        }
        let r = rng.gen_range(1..k);
        let mut e = h.edge(e_index).to_vec();
        let mut f = h.edge(f_index).to_vec();
        e.shuffle(rng);
        f.shuffle(rng);
        let spec = hyperspec::transforms::SwapSpec {
            e_index,
            f_index,
            u1: e[..r].to_vec(),
            v1: f[..r].to_vec(),
        };
        if hyperspec::transforms::edge_swap(h, &spec).is_ok() {
            return spec;
        }
    }
    panic!("no valid block exchange found on a graph with m = {}", h.m());
}

/// A vector of `n` entries drawn uniformly from (−1, 1).
pub fn random_vector(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

/// Seeded RNG for reproducible test corpora.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
