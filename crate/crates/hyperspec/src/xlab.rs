//! The experiment deck: isomorph-free enumeration of connected k-uniform
//! unicyclic hypergraphs, an independent brute-force oracle, ranked
//! spectral-radius reports, and the machine checks for the two extremal
//! theorems and the family-ordering lemmas.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::canon::{canonical_form, orbit_partition};
use crate::families::{
    attach_pendants, f1, f2, f3, f_graph, f_rst, loose_cycle, u_star,
};
use crate::hypercore::Hypergraph;
use crate::spectra::{spectral_radius, SpectralResult, RESULT_RESIDUAL_TOL};
use crate::Error;

/// Largest `n` the enumerator accepts without an explicit override via the
/// `HYPERSPEC_MAX_N` environment variable.
pub const DEFAULT_MAX_N: usize = 12;

/// Hard ceiling on the number of candidate edge-sets the brute-force
/// oracle will walk.
pub const BRUTE_FORCE_CANDIDATE_CAP: u128 = 1_000_000;

/// Two classes whose radii differ by less than this are reported as a tie
/// rather than ranked; the uniqueness claims in the theorems make a tie at
/// the top a loud failure, never a judgment call.
pub const RHO_TIE_TOL: f64 = 1e-12;

/// Minimum separation a strict inequality must exhibit to count as
/// verified.
pub const THEOREM_MARGIN: f64 = 1e-9;

fn max_n_limit() -> usize {
    std::env::var("HYPERSPEC_MAX_N")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_MAX_N)
}

fn unicyclic_problem(n: usize, k: usize) -> Result<usize, Error> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("need k ≥ 2, got k = {k}")));
    }
    if n == 0 || !n.is_multiple_of(k - 1) {
        return Err(Error::InvalidParameter(format!(
            "need (k−1) | n with n > 0, got n = {n}, k = {k}"
        )));
    }
    Ok(n / (k - 1))
}

/// One representative per isomorphism class of connected k-uniform
/// unicyclic hypergraphs on `n` vertices, sorted by canonical key.
///
/// Generation is structured rather than exhaustive: for each admissible
/// cycle length `q`, start from the loose cycle and grow one pendant edge
/// at a time. Every unicyclic graph with more edges than its cycle has a
/// pendant edge (a leaf edge of some attached supertree), so deleting one
/// shows each class at level `m` arises from some class at level `m − 1`;
/// attaching only at automorphism-orbit representatives and deduplicating
/// by canonical key keeps each level isomorph-free without losing any
/// class.
pub fn enumerate_unicyclic(n: usize, k: usize) -> Result<Vec<Hypergraph>, Error> {
    let m = unicyclic_problem(n, k)?;
    let limit = max_n_limit();
    if n > limit {
        return Err(Error::SizeGuard(format!(
            "enumeration at n = {n} exceeds the guard n ≤ {limit}; set HYPERSPEC_MAX_N to override"
        )));
    }
    // Two k-sets can share two vertices only when k ≥ 3, so ordinary
    // graphs (k = 2) have no 2-edge cycle.
    let q_min = if k == 2 { 3 } else { 2 };
    let mut keyed: Vec<(Vec<u8>, Hypergraph)> = Vec::new();
    let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
    for q in q_min..=m {
        let mut level = vec![loose_cycle(q, k)?];
        for _ in q..m {
            let mut next = Vec::new();
            let mut level_keys: BTreeSet<Vec<u8>> = BTreeSet::new();
            for g in &level {
                for v in orbit_partition(g).representatives() {
                    let grown = attach_pendants(g, v, 1, k)?;
                    if level_keys.insert(canonical_form(&grown).bytes) {
                        next.push(grown);
                    }
                }
            }
            level = next;
        }
        for g in level {
            let key = canonical_form(&g).bytes;
            if seen.insert(key.clone()) {
                keyed.push((key, g));
            }
        }
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(keyed.into_iter().map(|(_, g)| g).collect())
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Visits every `r`-element index combination of `0..len` in ascending
/// lexicographic order.
fn for_each_combination(len: usize, r: usize, mut visit: impl FnMut(&[usize])) {
    if r > len {
        return;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        visit(&idx);
        // Advance the rightmost index that still has room.
        let mut i = r;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + len - r {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// The independent oracle: filters every m-subset of the k-subsets of
/// `0..n` for connected unicyclic hypergraphs and deduplicates by
/// canonical key. Exponential by construction — guarded by
/// [`BRUTE_FORCE_CANDIDATE_CAP`] on the candidate count.
pub fn brute_force_unicyclic(n: usize, k: usize) -> Result<Vec<Hypergraph>, Error> {
    let m = unicyclic_problem(n, k)?;
    if k > n {
        return Err(Error::InvalidParameter(format!("need k ≤ n, got k = {k}, n = {n}")));
    }
    let mut ksets: Vec<Vec<usize>> = Vec::new();
    for_each_combination(n, k, |c| ksets.push(c.to_vec()));
    let candidates = binomial(ksets.len() as u128, m as u128);
    if candidates > BRUTE_FORCE_CANDIDATE_CAP {
        return Err(Error::SizeGuard(format!(
            "brute force at (n, k) = ({n}, {k}) means {candidates} candidate edge-sets \
             (cap {BRUTE_FORCE_CANDIDATE_CAP})"
        )));
    }
    let mut keyed: Vec<(Vec<u8>, Hypergraph)> = Vec::new();
    let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
    for_each_combination(ksets.len(), m, |chosen| {
        let edges: Vec<Vec<usize>> = chosen.iter().map(|&i| ksets[i].clone()).collect();
        let h = Hypergraph::new(n, edges).expect("distinct sorted k-sets are a valid graph");
        if h.is_unicyclic() {
            let key = canonical_form(&h).bytes;
            if seen.insert(key.clone()) {
                keyed.push((key, h));
            }
        }
    });
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(keyed.into_iter().map(|(_, g)| g).collect())
}

/// Evaluates the spectral radius of each graph, fanning the work out over
/// `jobs` threads. Results are keyed by input index, so the output is
/// identical for every job count.
pub fn spectra_parallel(
    graphs: &[Hypergraph],
    jobs: usize,
) -> Result<Vec<SpectralResult>, Error> {
    let jobs = jobs.max(1).min(graphs.len().max(1));
    if jobs == 1 {
        return graphs.iter().map(spectral_radius).collect();
    }
    let mut slots: Vec<Option<Result<SpectralResult, Error>>> =
        (0..graphs.len()).map(|_| None).collect();
    let chunk = graphs.len().div_ceil(jobs);
    std::thread::scope(|scope| {
        for (gs, out) in graphs.chunks(chunk).zip(slots.chunks_mut(chunk)) {
            scope.spawn(move || {
                for (g, slot) in gs.iter().zip(out.iter_mut()) {
                    *slot = Some(spectral_radius(g));
                }
            });
        }
    });
    slots
        .into_iter()
        .map(|s| s.expect("every slot visited by exactly one worker"))
        .collect()
}

/// One row of an [`EnumerationReport`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassRecord {
    /// Canonical-form key, lowercase hex; unique per isomorphism class.
    pub canonical_key: String,
    pub rho: f64,
    /// `‖A·x − ρ·x‖∞` reported by the eigensolver.
    pub residual: f64,
    /// Which named family this class is, if any.
    pub family_tag: Option<String>,
}

/// Ranked spectral-radius table over all isomorphism classes at `(n, k)`.
#[derive(Debug, Clone, Serialize)]
pub struct EnumerationReport {
    pub n: usize,
    pub k: usize,
    pub class_count: usize,
    /// Sorted by `rho` descending; ties broken by canonical key so the
    /// report is a pure function of `(n, k)`.
    pub classes: Vec<ClassRecord>,
    /// Canonical key of the largest-radius class.
    pub top1: Option<String>,
    /// Canonical key of the runner-up class.
    pub top2: Option<String>,
    /// Adjacent classes whose radii differ by less than [`RHO_TIE_TOL`].
    pub warnings: Vec<String>,
    /// Measured, not reproducible — excluded from serialized output so
    /// identical runs emit identical bytes.
    #[serde(skip)]
    pub wall_time: Duration,
}

/// Sorts records, picks the top pair, and flags near-ties. Factored out of
/// [`rank_table`] so the tie policy is testable on synthetic rows.
pub fn assemble_report(n: usize, k: usize, mut records: Vec<ClassRecord>) -> EnumerationReport {
    records.sort_by(|a, b| {
        b.rho
            .partial_cmp(&a.rho)
            .expect("radii are finite")
            .then_with(|| a.canonical_key.cmp(&b.canonical_key))
    });
    let mut warnings = Vec::new();
    for pair in records.windows(2) {
        let gap = pair[0].rho - pair[1].rho;
        if gap < RHO_TIE_TOL {
            warnings.push(format!(
                "tie: classes {} and {} have radii within {gap:.3e}",
                &pair[0].canonical_key[..16.min(pair[0].canonical_key.len())],
                &pair[1].canonical_key[..16.min(pair[1].canonical_key.len())],
            ));
        }
    }
    EnumerationReport {
        n,
        k,
        class_count: records.len(),
        top1: records.first().map(|r| r.canonical_key.clone()),
        top2: records.get(1).map(|r| r.canonical_key.clone()),
        classes: records,
        warnings,
        wall_time: Duration::ZERO,
    }
}

type FamilyBuilder = fn(usize, usize) -> Result<Hypergraph, Error>;

/// The canonical keys of the named families at `(n, k)`, in tag priority
/// order. Families that coincide at small `m` keep the first tag.
fn family_key_table(n: usize, k: usize) -> Vec<(String, &'static str)> {
    let builders: [(&'static str, FamilyBuilder); 5] = [
        ("u_star", u_star),
        ("f", f_graph),
        ("f1", f1),
        ("f2", f2),
        ("f3", f3),
    ];
    let mut table: Vec<(String, &'static str)> = Vec::new();
    for (tag, build) in builders {
        if let Ok(g) = build(n, k) {
            let key = canonical_form(&g).hex_key();
            if table.iter().all(|(k2, _)| k2 != &key) {
                table.push((key, tag));
            }
        }
    }
    table
}

/// Enumerates all classes at `(n, k)`, computes each radius (over `jobs`
/// worker threads), tags the named families, and returns the ranked
/// report.
pub fn rank_table(n: usize, k: usize, jobs: usize) -> Result<EnumerationReport, Error> {
    let started = Instant::now();
    let classes = enumerate_unicyclic(n, k)?;
    let spectra = spectra_parallel(&classes, jobs)?;
    let tags = family_key_table(n, k);
    let mut records = Vec::with_capacity(classes.len());
    for (g, s) in classes.iter().zip(&spectra) {
        if s.residual > RESULT_RESIDUAL_TOL {
            return Err(Error::Inconsistency(format!(
                "eigenpair residual {:.3e} exceeds {RESULT_RESIDUAL_TOL:.1e}",
                s.residual
            )));
        }
        let key = canonical_form(g).hex_key();
        let family_tag = tags
            .iter()
            .find(|(k2, _)| k2 == &key)
            .map(|(_, tag)| tag.to_string());
        records.push(ClassRecord {
            canonical_key: key,
            rho: s.rho,
            residual: s.residual,
            family_tag,
        });
    }
    let mut report = assemble_report(n, k, records);
    report.wall_time = started.elapsed();
    Ok(report)
}

/// Outcome of one theorem or lemma check.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremVerdict {
    /// Which claim was checked: `max_radius`, `second_max_radius`, or
    /// `family_ordering`.
    pub claim: String,
    pub n: usize,
    pub k: usize,
    pub pass: bool,
    /// Smallest separation backing a strict inequality, when one exists.
    pub min_margin: Option<f64>,
    /// One line per sub-check, pass or fail.
    pub details: Vec<String>,
}

impl TheoremVerdict {
    fn new(claim: &str, n: usize, k: usize) -> Self {
        TheoremVerdict {
            claim: claim.to_string(),
            n,
            k,
            pass: true,
            min_margin: None,
            details: Vec::new(),
        }
    }

    fn note(&mut self, line: String) {
        self.details.push(line);
    }

    fn fail(&mut self, line: String) {
        self.pass = false;
        self.details.push(line);
    }

    /// Records a strict-inequality margin, failing if it is not above
    /// [`THEOREM_MARGIN`].
    fn require_margin(&mut self, what: &str, margin: f64) {
        self.min_margin = Some(match self.min_margin {
            Some(best) => best.min(margin),
            None => margin,
        });
        if margin > THEOREM_MARGIN {
            self.note(format!("{what}: margin {margin:.6e}"));
        } else {
            self.fail(format!(
                "{what}: margin {margin:.6e} not above {THEOREM_MARGIN:.1e}"
            ));
        }
    }
}

/// Checks that the unique radius maximizer over all classes at `(n, k)` is
/// the all-pendants-at-one-cycle-vertex graph `u_star(n, k)`, with a
/// strict gap to the runner-up.
pub fn verify_theorem_1(n: usize, k: usize) -> Result<TheoremVerdict, Error> {
    let m = unicyclic_problem(n, k)?;
    if k < 3 || m < 2 {
        return Err(Error::InvalidParameter(format!(
            "the maximizer claim needs k ≥ 3 and m ≥ 2, got k = {k}, m = {m}"
        )));
    }
    let report = rank_table(n, k, 1)?;
    let mut verdict = TheoremVerdict::new("max_radius", n, k);
    let expected = canonical_form(&u_star(n, k)?).hex_key();
    let top = &report.classes[0];
    if top.canonical_key == expected {
        verdict.note(format!(
            "argmax over {} classes is u_star(n, k), rho = {:.15}",
            report.class_count, top.rho
        ));
    } else {
        verdict.fail(format!(
            "argmax class {} is not u_star(n, k)",
            &top.canonical_key[..16.min(top.canonical_key.len())]
        ));
    }
    if let Some(runner) = report.classes.get(1) {
        verdict.require_margin("gap to runner-up", top.rho - runner.rho);
    } else {
        verdict.note("single class: maximizer trivially unique".into());
    }
    Ok(verdict)
}

/// Checks that among classes with `m ≥ 4` that are not the maximizer, the
/// unique radius maximizer is `f_graph(n, k)` — the second-maximum claim.
pub fn verify_theorem_2(n: usize, k: usize) -> Result<TheoremVerdict, Error> {
    let m = unicyclic_problem(n, k)?;
    if k < 3 || m < 4 {
        return Err(Error::InvalidParameter(format!(
            "the second-maximizer claim needs k ≥ 3 and m ≥ 4, got k = {k}, m = {m}"
        )));
    }
    let report = rank_table(n, k, 1)?;
    let mut verdict = TheoremVerdict::new("second_max_radius", n, k);
    let u_key = canonical_form(&u_star(n, k)?).hex_key();
    let f_key = canonical_form(&f_graph(n, k)?).hex_key();
    let pool: Vec<&ClassRecord> = report
        .classes
        .iter()
        .filter(|r| r.canonical_key != u_key)
        .collect();
    if pool.len() < 2 {
        return Err(Error::Inconsistency(format!(
            "expected at least two non-maximizer classes at ({n}, {k}), found {}",
            pool.len()
        )));
    }
    let top = pool[0];
    if top.canonical_key == f_key {
        verdict.note(format!(
            "argmax over the {} remaining classes is f(n, k), rho = {:.15}",
            pool.len(),
            top.rho
        ));
    } else {
        verdict.fail(format!(
            "second maximizer {} is not f(n, k)",
            &top.canonical_key[..16.min(top.canonical_key.len())]
        ));
    }
    verdict.require_margin("gap to next class", top.rho - pool[1].rho);
    Ok(verdict)
}

/// Visits every way to write `total` as an ordered sum over `slots`
/// non-negative parts.
fn for_each_composition(total: usize, slots: usize, mut visit: impl FnMut(&[usize])) {
    fn rec(remaining: usize, parts: &mut Vec<usize>, slots: usize, visit: &mut impl FnMut(&[usize])) {
        if parts.len() == slots - 1 {
            parts.push(remaining);
            visit(parts);
            parts.pop();
            return;
        }
        for take in 0..=remaining {
            parts.push(take);
            rec(remaining - take, parts, slots, visit);
            parts.pop();
        }
    }
    if slots == 0 {
        return;
    }
    rec(total, &mut Vec::with_capacity(slots), slots, &mut visit);
}

/// Checks the family-ordering lemmas at `(n, k)`:
/// `ρ(f1), ρ(f2), ρ(f3) < ρ(f) < ρ(u_star)`, and for every pendant
/// placement `(R; S; T)` of the `m − 2` pendant edges other than the two
/// it singles out — the maximizer placement (≅ u_star) and `f`'s own
/// placement — `ρ < ρ(f)`. All strict, margins above [`THEOREM_MARGIN`].
pub fn verify_family_ordering(n: usize, k: usize) -> Result<TheoremVerdict, Error> {
    let m = unicyclic_problem(n, k)?;
    if k < 3 || m < 4 {
        return Err(Error::InvalidParameter(format!(
            "family ordering needs k ≥ 3 and m ≥ 4, got k = {k}, m = {m}"
        )));
    }
    let mut verdict = TheoremVerdict::new("family_ordering", n, k);
    let rho_of = |g: &Hypergraph| -> Result<f64, Error> { Ok(spectral_radius(g)?.rho) };
    let rho_u = rho_of(&u_star(n, k)?)?;
    let rho_f = rho_of(&f_graph(n, k)?)?;
    verdict.require_margin("rho(f) < rho(u_star)", rho_u - rho_f);
    for (name, build) in [("f1", f1 as fn(usize, usize) -> _), ("f2", f2), ("f3", f3)] {
        let rho_i = rho_of(&build(n, k)?)?;
        verdict.require_margin(&format!("rho({name}) < rho(f)"), rho_f - rho_i);
    }

    // Sweep every placement of the m − 2 pendant edges over the cycle
    // vertices, deduplicated up to isomorphism.
    let u_key = canonical_form(&u_star(n, k)?).bytes;
    let f_key = canonical_form(&f_graph(n, k)?).bytes;
    let slots = 2 + 2 * (k - 2);
    let mut reps: Vec<(Vec<u8>, Hypergraph, Vec<usize>)> = Vec::new();
    let mut build_err = None;
    for_each_composition(m - 2, slots, |parts| {
        if build_err.is_some() {
            return;
        }
        let r = [parts[0], parts[1]];
        let s = &parts[2..k];
        let t = &parts[k..];
        match f_rst(k, r, s, t) {
            Ok(g) => {
                let key = canonical_form(&g).bytes;
                if key != u_key && key != f_key && reps.iter().all(|(k2, _, _)| k2 != &key) {
                    reps.push((key, g, parts.to_vec()));
                }
            }
            Err(e) => build_err = Some(e),
        }
    });
    if let Some(e) = build_err {
        return Err(e);
    }
    verdict.note(format!(
        "{} distinct placements beyond u_star and f itself",
        reps.len()
    ));
    for (_, g, parts) in &reps {
        let rho_g = rho_of(g)?;
        verdict.require_margin(&format!("placement {parts:?} below rho(f)"), rho_f - rho_g);
    }
    Ok(verdict)
}
