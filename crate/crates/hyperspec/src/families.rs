//! Deterministic constructors for the named unicyclic families, all built
//! from the two-edge 2-cycle by attaching pendant edges at prescribed
//! vertices.
//!
//! Anchor-vertex convention (fixed so tests and checkers can address
//! vertices by role):
//! - `v₁ = 0` and `v₂ = 1` are the two vertices shared by the cycle edges;
//! - the first cycle edge `e₁` has interior vertices `2..k`, the second
//!   `e₂` has interior vertices `k..2k−2`;
//! - `η = k` is the first interior vertex of `e₂`;
//! - every attached pendant edge appends its `k−1` fresh vertices after all
//!   existing ones, in attachment order.

use serde::{Deserialize, Serialize};

use crate::hypercore::Hypergraph;
use crate::Error;

/// Index of the first shared cycle vertex `v₁`.
pub const V1: usize = 0;
/// Index of the second shared cycle vertex `v₂`.
pub const V2: usize = 1;

/// Index of `η`, the first interior vertex of the second cycle edge —
/// the pendant-attachment vertex of the `f1`, `f2`, `f3` families.
pub fn eta(k: usize) -> usize {
    k
}

/// Index of the i-th interior vertex of the first cycle edge, `1 ≤ i ≤ k−2`.
pub fn e1_interior(k: usize, i: usize) -> usize {
    debug_assert!((1..=k - 2).contains(&i));
    1 + i
}

/// Index of the i-th interior vertex of the second cycle edge,
/// `1 ≤ i ≤ k−2`; `i = 1` is `η`.
pub fn e2_interior(k: usize, i: usize) -> usize {
    debug_assert!((1..=k - 2).contains(&i));
    k + i - 1
}

/// The k-uniform 2-cycle: two edges sharing exactly the vertices
/// `{v₁, v₂} = {0, 1}`, on `n = 2(k−1)` vertices.
pub fn two_cycle(k: usize) -> Result<Hypergraph, Error> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!(
            "a 2-cycle needs k ≥ 3 (two distinct k-sets sharing 2 vertices), got k = {k}"
        )));
    }
    let e1: Vec<usize> = [0].into_iter().chain(2..k).chain([1]).collect();
    let e2: Vec<usize> = [0].into_iter().chain(k..2 * k - 2).chain([1]).collect();
    Hypergraph::new(2 * (k - 1), vec![e1, e2])
}

/// The loose cycle of `q` edges: consecutive edges share one anchor vertex,
/// non-adjacent edges are disjoint; `n = q(k−1)`. Anchors are `0..q`; edge
/// `i` runs from anchor `i` to anchor `(i+1) mod q` with fresh interior
/// vertices. `q = 2` is the 2-cycle (k ≥ 3 there).
pub fn loose_cycle(q: usize, k: usize) -> Result<Hypergraph, Error> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!(
            "a cycle needs q ≥ 2 edges, got q = {q}"
        )));
    }
    if q == 2 {
        return two_cycle(k);
    }
    if k < 2 {
        return Err(Error::InvalidParameter(format!("edges need k ≥ 2, got k = {k}")));
    }
    let mut edges = Vec::with_capacity(q);
    for i in 0..q {
        let interior = q + i * (k - 2)..q + (i + 1) * (k - 2);
        let e: Vec<usize> = [i, (i + 1) % q].into_iter().chain(interior).collect();
        edges.push(e);
    }
    Hypergraph::new(q * (k - 1), edges)
}

/// The loose path of `q` edges on `n = q(k−1) + 1` vertices: edge `i`
/// occupies the interval `[i(k−1), (i+1)(k−1)]`, so consecutive edges share
/// exactly the anchor between them.
pub fn loose_path(q: usize, k: usize) -> Result<Hypergraph, Error> {
    if q < 1 {
        return Err(Error::InvalidParameter("a path needs q ≥ 1 edges".into()));
    }
    if k < 2 {
        return Err(Error::InvalidParameter(format!("edges need k ≥ 2, got k = {k}")));
    }
    let edges = (0..q)
        .map(|i| (i * (k - 1)..=(i + 1) * (k - 1)).collect())
        .collect();
    Hypergraph::new(q * (k - 1) + 1, edges)
}

/// Attaches `count` pendant edges at vertex `v`: each new edge is `v` plus
/// `k − 1` fresh vertices appended after the existing ones.
pub fn attach_pendants(
    h: &Hypergraph,
    v: usize,
    count: usize,
    k: usize,
) -> Result<Hypergraph, Error> {
    if v >= h.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: h.n() });
    }
    if k < 2 {
        return Err(Error::InvalidParameter(format!("edges need k ≥ 2, got k = {k}")));
    }
    let mut n = h.n();
    let mut edges: Vec<Vec<usize>> = h.edges().to_vec();
    for _ in 0..count {
        let e: Vec<usize> = [v].into_iter().chain(n..n + k - 1).collect();
        edges.push(e);
        n += k - 1;
    }
    Hypergraph::new(n, edges)
}

fn unicyclic_params(n: usize, k: usize, min_m: usize, what: &str) -> Result<usize, Error> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!("{what} needs k ≥ 3, got k = {k}")));
    }
    if !n.is_multiple_of(k - 1) {
        return Err(Error::InvalidParameter(format!(
            "{what} needs (k−1) | n, got n = {n}, k = {k}"
        )));
    }
    let m = n / (k - 1);
    if m < min_m {
        return Err(Error::InvalidParameter(format!(
            "{what} needs m = n/(k−1) ≥ {min_m}, got m = {m}"
        )));
    }
    Ok(m)
}

/// The maximizer family: the 2-cycle with all `m − 2` pendant edges
/// attached at `v₁`, so `deg(v₁) = m` and `deg(v₂) = 2`.
pub fn u_star(n: usize, k: usize) -> Result<Hypergraph, Error> {
    let m = unicyclic_params(n, k, 2, "u_star")?;
    attach_pendants(&two_cycle(k)?, V1, m - 2, k)
}

/// The second-maximizer family: the 2-cycle with `m − 3` pendant edges at
/// `v₁` and one pendant edge at `v₂`.
pub fn f_graph(n: usize, k: usize) -> Result<Hypergraph, Error> {
    let m = unicyclic_params(n, k, 3, "f")?;
    let g = attach_pendants(&two_cycle(k)?, V1, m - 3, k)?;
    attach_pendants(&g, V2, 1, k)
}

/// All `m − 2` pendant edges at the interior vertex `η` of the second
/// cycle edge.
pub fn f1(n: usize, k: usize) -> Result<Hypergraph, Error> {
    let m = unicyclic_params(n, k, 3, "f1")?;
    attach_pendants(&two_cycle(k)?, eta(k), m - 2, k)
}

/// `m − 3` pendant edges at `η` plus one at `v₁`.
pub fn f2(n: usize, k: usize) -> Result<Hypergraph, Error> {
    let m = unicyclic_params(n, k, 4, "f2")?;
    let g = attach_pendants(&two_cycle(k)?, eta(k), m - 3, k)?;
    attach_pendants(&g, V1, 1, k)
}

/// `m − 3` pendant edges at `v₁` plus one at `η`.
pub fn f3(n: usize, k: usize) -> Result<Hypergraph, Error> {
    let m = unicyclic_params(n, k, 4, "f3")?;
    let g = attach_pendants(&two_cycle(k)?, V1, m - 3, k)?;
    attach_pendants(&g, eta(k), 1, k)
}

/// The general pendant-placement family: `r₁`, `r₂` pendant edges at `v₁`,
/// `v₂`; `sᵢ` at the i-th interior vertex of the first cycle edge; `tᵢ` at
/// the i-th interior vertex of the second. The total pendant budget fixes
/// `m = 2 + r₁ + r₂ + Σs + Σt` and `n = (k−1)m`. `s` and `t` must each
/// list `k − 2` counts.
pub fn f_rst(k: usize, r: [usize; 2], s: &[usize], t: &[usize]) -> Result<Hypergraph, Error> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!("f_rst needs k ≥ 3, got k = {k}")));
    }
    if s.len() != k - 2 || t.len() != k - 2 {
        return Err(Error::InvalidParameter(format!(
            "f_rst needs |S| = |T| = k − 2 = {}, got |S| = {}, |T| = {}",
            k - 2,
            s.len(),
            t.len()
        )));
    }
    let mut g = two_cycle(k)?;
    for (v, &count) in [V1, V2].into_iter().zip(&r) {
        g = attach_pendants(&g, v, count, k)?;
    }
    for (i, &count) in s.iter().enumerate() {
        g = attach_pendants(&g, e1_interior(k, i + 1), count, k)?;
    }
    for (i, &count) in t.iter().enumerate() {
        g = attach_pendants(&g, e2_interior(k, i + 1), count, k)?;
    }
    Ok(g)
}

/// Which named family a [`FamilySpec`] requests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    LoosePath,
    LooseCycle,
    TwoCycle,
    UStar,
    F,
    F1,
    F2,
    F3,
    #[serde(rename = "f_rst")]
    Frst,
}

impl FamilyKind {
    /// The kind's wire name (the `--family` value).
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::LoosePath => "loose_path",
            FamilyKind::LooseCycle => "loose_cycle",
            FamilyKind::TwoCycle => "two_cycle",
            FamilyKind::UStar => "u_star",
            FamilyKind::F => "f",
            FamilyKind::F1 => "f1",
            FamilyKind::F2 => "f2",
            FamilyKind::F3 => "f3",
            FamilyKind::Frst => "f_rst",
        }
    }
}

impl std::str::FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "loose_path" => FamilyKind::LoosePath,
            "loose_cycle" => FamilyKind::LooseCycle,
            "two_cycle" => FamilyKind::TwoCycle,
            "u_star" => FamilyKind::UStar,
            "f" => FamilyKind::F,
            "f1" => FamilyKind::F1,
            "f2" => FamilyKind::F2,
            "f3" => FamilyKind::F3,
            "f_rst" => FamilyKind::Frst,
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown family kind {other:?} (expected loose_path, loose_cycle, \
                     two_cycle, u_star, f, f1, f2, f3, or f_rst)"
                )))
            }
        })
    }
}

/// A named hypergraph: family kind plus parameters. `r`, `s`, `t` are used
/// by `f_rst` only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub n: usize,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Vec<usize>>,
}

impl FamilySpec {
    /// Constructs the named hypergraph, validating the parameters.
    pub fn build(&self) -> Result<Hypergraph, Error> {
        let (n, k) = (self.n, self.k);
        match self.kind {
            FamilyKind::LoosePath => {
                if k < 2 || (n == 0) || (n - 1) % (k - 1) != 0 {
                    return Err(Error::InvalidParameter(format!(
                        "loose_path needs n = q(k−1)+1, got n = {n}, k = {k}"
                    )));
                }
                loose_path((n - 1) / (k - 1), k)
            }
            FamilyKind::LooseCycle => {
                if k < 2 || n % (k - 1) != 0 {
                    return Err(Error::InvalidParameter(format!(
                        "loose_cycle needs n = q(k−1), got n = {n}, k = {k}"
                    )));
                }
                loose_cycle(n / (k - 1), k)
            }
            FamilyKind::TwoCycle => {
                if k < 3 || n != 2 * (k - 1) {
                    return Err(Error::InvalidParameter(format!(
                        "two_cycle needs n = 2(k−1), got n = {n}, k = {k}"
                    )));
                }
                two_cycle(k)
            }
            FamilyKind::UStar => u_star(n, k),
            FamilyKind::F => f_graph(n, k),
            FamilyKind::F1 => f1(n, k),
            FamilyKind::F2 => f2(n, k),
            FamilyKind::F3 => f3(n, k),
            FamilyKind::Frst => {
                let m = unicyclic_params(n, k, 2, "f_rst")?;
                let r = self.r.ok_or_else(|| {
                    Error::InvalidParameter("f_rst needs R = [r1, r2]".into())
                })?;
                let s = self.s.as_deref().ok_or_else(|| {
                    Error::InvalidParameter("f_rst needs S with k−2 entries".into())
                })?;
                let t = self.t.as_deref().ok_or_else(|| {
                    Error::InvalidParameter("f_rst needs T with k−2 entries".into())
                })?;
                let budget: usize =
                    r.iter().sum::<usize>() + s.iter().sum::<usize>() + t.iter().sum::<usize>();
                if budget != m - 2 {
                    return Err(Error::InvalidParameter(format!(
                        "f_rst pendant budget must be m − 2 = {}, got {budget}",
                        m - 2
                    )));
                }
                f_rst(k, r, s, t)
            }
        }
    }
}
