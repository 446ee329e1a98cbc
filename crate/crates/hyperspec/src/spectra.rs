//! Weighted adjacency matrix, dominant eigenpair via power iteration, the
//! Rayleigh quotient, and checkers for the closed-form eigenvector
//! relations that hold at pendant and internal edges.

use crate::canon::OrbitPartition;
use crate::hypercore::{shared_count, Hypergraph};
use crate::Error;

/// Iteration cap for the power method.
pub const MAX_ITERATIONS: usize = 100_000;
/// Convergence: relative change of the Rayleigh quotient between iterations.
pub const RHO_REL_TOL: f64 = 1e-14;
/// Convergence: ∞-norm of `A·x − ρ·x` required to stop iterating.
pub const ITERATION_RESIDUAL_TOL: f64 = 1e-12;
/// Contract on every reported eigenpair: residual below this bound.
pub const RESULT_RESIDUAL_TOL: f64 = 1e-10;
/// Tolerance for the closed-form eigenvector formulas.
pub const FORMULA_TOL: f64 = 1e-9;
/// Tolerance for exact algebraic identities evaluated in floating point.
pub const IDENTITY_TOL: f64 = 1e-12;
/// Entrywise tolerance when comparing adjacency matrices.
pub const ENTRY_TOL: f64 = 1e-12;

/// Symmetric weighted adjacency matrix of a hypergraph: entry `(i, j)` is
/// `Σ 1/(|e| − 1)` over the edges containing both `i` and `j`; the diagonal
/// is zero. Stored as a sorted upper-triangle coordinate list.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjacencyMatrix {
    n: usize,
    /// `(i, j, weight)` with `i < j`, sorted by `(i, j)`.
    entries: Vec<(usize, usize, f64)>,
}

/// Builds the adjacency matrix. Contributions accumulate in a fixed order
/// (edge order, then pair order within an edge) so repeated builds are
/// bit-identical.
pub fn adjacency_matrix(h: &Hypergraph) -> AdjacencyMatrix {
    use std::collections::BTreeMap;
    let mut acc: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for e in h.edges() {
        // Edges always have ≥ 2 vertices, so the weight is well-defined.
        let w = 1.0 / (e.len() as f64 - 1.0);
        for (a, &i) in e.iter().enumerate() {
            for &j in &e[a + 1..] {
                *acc.entry((i, j)).or_insert(0.0) += w;
            }
        }
    }
    AdjacencyMatrix {
        n: h.n(),
        entries: acc.into_iter().map(|((i, j), w)| (i, j, w)).collect(),
    }
}

impl AdjacencyMatrix {
    /// Matrix dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The upper-triangle coordinate list `(i, j, weight)`, `i < j`.
    pub fn entries(&self) -> &[(usize, usize, f64)] {
        &self.entries
    }

    /// Entry `(i, j)`; zero when the pair shares no edge or `i == j`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let key = (i.min(j), i.max(j));
        if key.0 == key.1 {
            return 0.0;
        }
        match self
            .entries
            .binary_search_by(|&(a, b, _)| (a, b).cmp(&key))
        {
            Ok(pos) => self.entries[pos].2,
            Err(_) => 0.0,
        }
    }

    /// Row sums; for a k-uniform hypergraph these equal the vertex degrees.
    pub fn row_sums(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.n];
        for &(i, j, w) in &self.entries {
            sums[i] += w;
            sums[j] += w;
        }
        sums
    }

    /// `out = A·x` exploiting symmetry.
    pub fn matvec(&self, x: &[f64], out: &mut [f64]) {
        out.fill(0.0);
        for &(i, j, w) in &self.entries {
            out[i] += w * x[j];
            out[j] += w * x[i];
        }
    }

    /// The quadratic form `xᵀ·A·x`.
    pub fn quadratic_form(&self, x: &[f64]) -> Result<f64, Error> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        let mut q = 0.0;
        for &(i, j, w) in &self.entries {
            q += 2.0 * w * x[i] * x[j];
        }
        Ok(q)
    }

    /// Dense row-major copy, mostly for external solvers and tests.
    pub fn to_dense(&self) -> Vec<f64> {
        let mut dense = vec![0.0; self.n * self.n];
        for &(i, j, w) in &self.entries {
            dense[i * self.n + j] = w;
            dense[j * self.n + i] = w;
        }
        dense
    }
}

/// Dominant eigenpair of a connected hypergraph's adjacency matrix.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SpectralResult {
    /// Spectral radius: the largest eigenvalue.
    pub rho: f64,
    /// Positive principal eigenvector, normalized to `Σ xᵥ² = 1`.
    pub x: Vec<f64>,
    /// `‖A·x − ρ·x‖∞` at the reported pair.
    pub residual: f64,
    /// Power-iteration steps taken.
    pub iterations: usize,
}

/// Computes the spectral radius and positive unit principal eigenvector by
/// power iteration on `A + I`; the identity shift makes the iteration
/// matrix primitive, so convergence is guaranteed for connected inputs.
pub fn spectral_radius(h: &Hypergraph) -> Result<SpectralResult, Error> {
    if h.m() == 0 {
        return Err(Error::NoEdges);
    }
    if !h.is_connected() {
        return Err(Error::NotConnected);
    }
    let a = adjacency_matrix(h);
    let n = h.n();
    // All-ones start: inside the positive cone, so the Perron component is
    // nonzero from the outset.
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut y = vec![0.0; n];
    let mut prev_rho = f64::NAN;
    for it in 1..=MAX_ITERATIONS {
        a.matvec(&x, &mut y);
        let rho: f64 = x.iter().zip(&y).map(|(xi, yi)| xi * yi).sum();
        let residual = x
            .iter()
            .zip(&y)
            .map(|(xi, yi)| (yi - rho * xi).abs())
            .fold(0.0f64, f64::max);
        let settled = (rho - prev_rho).abs() < RHO_REL_TOL * rho.abs().max(1.0);
        if settled && residual < ITERATION_RESIDUAL_TOL {
            if x.iter().any(|&v| v <= 0.0) {
                return Err(Error::Inconsistency(
                    "principal eigenvector is not strictly positive".into(),
                ));
            }
            return Ok(SpectralResult {
                rho,
                x,
                residual,
                iterations: it,
            });
        }
        prev_rho = rho;
        // Shifted step: x ← (A + I)·x, renormalized.
        let mut norm2 = 0.0;
        for (zi, xi) in y.iter_mut().zip(&x) {
            *zi += xi;
            norm2 += *zi * *zi;
        }
        let inv = 1.0 / norm2.sqrt();
        for (xi, zi) in x.iter_mut().zip(&y) {
            *xi = zi * inv;
        }
    }
    Err(Error::ConvergenceFailure(MAX_ITERATIONS))
}

/// The Rayleigh quotient `yᵀ·A·y / yᵀ·y`; bounded above by the spectral
/// radius for this symmetric matrix.
pub fn rayleigh_quotient(h: &Hypergraph, y: &[f64]) -> Result<f64, Error> {
    let a = adjacency_matrix(h);
    let norm2: f64 = y.iter().map(|v| v * v).sum();
    if norm2 == 0.0 || !norm2.is_finite() {
        return Err(Error::ZeroVector);
    }
    Ok(a.quadratic_form(y)? / norm2)
}

/// One failed closed-form check: which edge and vertex, what the formula
/// predicts, and what the eigenvector actually holds.
#[derive(Debug, Clone)]
pub struct FormulaViolation {
    pub edge_index: usize,
    pub vertex: usize,
    pub expected: f64,
    pub actual: f64,
    pub rule: &'static str,
}

/// Checks the pendant-edge closed form: at every pendant edge attached to a
/// vertex `u` of degree ≥ 2, the k−1 leaves all carry
/// `x_u / ((k−1)ρ − (k−2))`. Returns the (expected empty) violation list.
pub fn check_pendant_formula(
    h: &Hypergraph,
    r: &SpectralResult,
) -> Result<Vec<FormulaViolation>, Error> {
    let k = h.is_k_uniform()?.ok_or(Error::NotUniform)?;
    if !h.is_connected() {
        return Err(Error::NotConnected);
    }
    let deg = h.degrees();
    let denom = (k as f64 - 1.0) * r.rho - (k as f64 - 2.0);
    let mut violations = Vec::new();
    for (ei, e) in h.edges().iter().enumerate() {
        let attach: Vec<usize> = e.iter().copied().filter(|&v| deg[v] >= 2).collect();
        // A pendant edge has exactly one attach vertex; an edge whose
        // vertices all have degree 1 is an isolated component and carries
        // no formula.
        if attach.len() != 1 {
            continue;
        }
        let u = attach[0];
        let expected = r.x[u] / denom;
        for &v in e.iter().filter(|&&v| v != u) {
            if (r.x[v] - expected).abs() > FORMULA_TOL {
                violations.push(FormulaViolation {
                    edge_index: ei,
                    vertex: v,
                    expected,
                    actual: r.x[v],
                    rule: "pendant leaf value",
                });
            }
        }
    }
    Ok(violations)
}

/// Checks the internal-edge closed form: on an edge `{v₁, w₂..w_{k−1}, v_k}`
/// whose interior vertices have degree 1, whose two endpoints have degree
/// ≥ 2, and which meets every other edge in at most one vertex, the
/// interior values equal `(x_{v₁} + x_{v_k}) / ((k−1)ρ − (k−3))` and sit
/// strictly below both endpoint values.
pub fn check_internal_edge_formula(
    h: &Hypergraph,
    r: &SpectralResult,
) -> Result<Vec<FormulaViolation>, Error> {
    let k = h.is_k_uniform()?.ok_or(Error::NotUniform)?;
    if !h.is_connected() {
        return Err(Error::NotConnected);
    }
    let deg = h.degrees();
    let denom = (k as f64 - 1.0) * r.rho - (k as f64 - 3.0);
    let mut violations = Vec::new();
    for (ei, e) in h.edges().iter().enumerate() {
        let endpoints: Vec<usize> = e.iter().copied().filter(|&v| deg[v] >= 2).collect();
        if endpoints.len() != 2 {
            continue;
        }
        // The formula describes an edge in a loose stretch; an edge that
        // shares two vertices with another edge (a 2-cycle half) is not one.
        let loosely_attached = h
            .edges()
            .iter()
            .enumerate()
            .all(|(fi, f)| fi == ei || shared_count(e, f) <= 1);
        if !loosely_attached {
            continue;
        }
        let expected = (r.x[endpoints[0]] + r.x[endpoints[1]]) / denom;
        let endpoint_min = r.x[endpoints[0]].min(r.x[endpoints[1]]);
        for &w in e.iter().filter(|&&v| deg[v] == 1) {
            if (r.x[w] - expected).abs() > FORMULA_TOL {
                violations.push(FormulaViolation {
                    edge_index: ei,
                    vertex: w,
                    expected,
                    actual: r.x[w],
                    rule: "internal interior value",
                });
            }
            if r.x[w] >= endpoint_min {
                violations.push(FormulaViolation {
                    edge_index: ei,
                    vertex: w,
                    expected: endpoint_min,
                    actual: r.x[w],
                    rule: "interior below endpoints",
                });
            }
        }
    }
    Ok(violations)
}

/// Checks the closed form special to the `f1` construction (all pendant
/// edges at the cycle-interior vertex `η`): the second cycle edge holds
/// `v₁`, `v₂`, `η`, and `k − 3` plain interior vertices, and each plain
/// interior carries `(2·x_{v₁} + x_η) / ((k−1)ρ − (k−4))` — the `2·x_{v₁}`
/// uses the `v₁ ↔ v₂` symmetry of `f1`. Vacuous at `k = 3`, where that
/// cycle edge has no plain interiors.
///
/// The input must be the literal `f1(n, k)` construction, anchors and all,
/// since the formula addresses vertices by role.
pub fn check_f1_interior_formula(
    h: &Hypergraph,
    r: &SpectralResult,
) -> Result<Vec<FormulaViolation>, Error> {
    let k = h.is_k_uniform()?.ok_or(Error::NotUniform)?;
    let reference = crate::families::f1(h.n(), k)?;
    if *h != reference {
        return Err(Error::InvalidParameter(
            "the f1 interior formula addresses vertices by role and needs the literal \
             f1(n, k) construction"
                .into(),
        ));
    }
    let eta = crate::families::eta(k);
    let e2: Vec<usize> = [crate::families::V1, crate::families::V2]
        .into_iter()
        .chain(eta..2 * k - 2)
        .collect();
    let edge_index = h
        .edges()
        .iter()
        .position(|e| *e == e2)
        .expect("the reference construction contains its own cycle edge");
    let denom = (k as f64 - 1.0) * r.rho - (k as f64 - 4.0);
    let expected = (2.0 * r.x[crate::families::V1] + r.x[eta]) / denom;
    let mut violations = Vec::new();
    for w in eta + 1..2 * k - 2 {
        if (r.x[w] - expected).abs() > FORMULA_TOL {
            violations.push(FormulaViolation {
                edge_index,
                vertex: w,
                expected,
                actual: r.x[w],
                rule: "f1 plain interior value",
            });
        }
    }
    Ok(violations)
}

/// Largest spread `max xᵥ − min xᵥ` of the principal eigenvector across any
/// automorphism orbit; the eigenvector is constant on orbits, so this is
/// expected to vanish (below `FORMULA_TOL`).
pub fn check_orbit_constancy(
    _h: &Hypergraph,
    r: &SpectralResult,
    orbits: &OrbitPartition,
) -> f64 {
    let mut worst = 0.0f64;
    for orbit in &orbits.orbits {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &v in orbit {
            lo = lo.min(r.x[v]);
            hi = hi.max(r.x[v]);
        }
        if hi.is_finite() {
            worst = worst.max(hi - lo);
        }
    }
    worst
}
