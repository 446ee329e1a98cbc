//! Eigensolver results against frozen reference values, an independent
//! dense Jacobi oracle, closed-form eigenvector identities, and the
//! monotonicity of the spectral radius under edge attachment.

mod common;

use common::{oracle_spectral_radius, random_unicyclic, rng};
use hyperspec::canon::orbit_partition;
use hyperspec::families::{
    attach_pendants, f1, f2, f3, f_graph, loose_cycle, loose_path, two_cycle, u_star,
};
use hyperspec::hypercore::Hypergraph;
use hyperspec::spectra::{
    check_f1_interior_formula, check_internal_edge_formula, check_orbit_constancy,
    check_pendant_formula, rayleigh_quotient, spectral_radius, FORMULA_TOL,
    RESULT_RESIDUAL_TOL,
};
use rand::Rng;

/// How closely the power iteration must reproduce an independently
/// computed radius.
const CROSS_CHECK_TOL: f64 = 1e-12;

/// Reference radii computed by an independent dense eigensolver, frozen at
/// full precision. Each row: builder result, expected ρ.
fn frozen_radii() -> Vec<(&'static str, Hypergraph, f64)> {
    vec![
        ("two_cycle(3)", two_cycle(3).unwrap(), 1.6180339887498953),
        ("u_star(6,3)", u_star(6, 3).unwrap(), 1.7745782463510962),
        ("u_star(8,3)", u_star(8, 3).unwrap(), 1.9207627088566888),
        ("u_star(9,4)", u_star(9, 4).unwrap(), 1.5790606035059458),
        ("u_star(10,3)", u_star(10, 3).unwrap(), 2.057_549_960_524_62),
        ("u_star(12,3)", u_star(12, 3).unwrap(), 2.186140661634508),
        ("u_star(12,4)", u_star(12, 4).unwrap(), 1.695_093_097_934_577),
        ("f(8,3)", f_graph(8, 3).unwrap(), 1.8892285591291946),
        ("f(10,3)", f_graph(10, 3).unwrap(), 2.0069379825846063),
        ("f(12,3)", f_graph(12, 3).unwrap(), 2.1242190007052706),
        ("f(12,4)", f_graph(12, 4).unwrap(), 1.666_666_666_666_666),
        ("f1(6,3)", f1(6, 3).unwrap(), 1.6897560073509792),
        ("f1(10,3)", f1(10, 3).unwrap(), 1.8864751945035836),
        ("f2(10,3)", f2(10, 3).unwrap(), 1.8864751945035834),
        ("f3(10,3)", f3(10, 3).unwrap(), 1.9549504148514227),
        ("f1(12,3)", f1(12, 3).unwrap(), 1.999_999_999_999_999),
        ("f2(12,3)", f2(12, 3).unwrap(), 1.9658150099389788),
        ("f3(12,3)", f3(12, 3).unwrap(), 2.082_883_358_139_261),
        ("f1(12,4)", f1(12, 4).unwrap(), 1.5807117922855356),
        ("f2(12,4)", f2(12, 4).unwrap(), 1.613551661555974),
        ("f3(12,4)", f3(12, 4).unwrap(), 1.613551661555974),
        ("f1(9,4)", f1(9, 4).unwrap(), 1.5098057213376228),
        ("loose_cycle(3,3)", loose_cycle(3, 3).unwrap(), 1.618_033_988_749_895),
        ("loose_cycle(4,3)", loose_cycle(4, 3).unwrap(), 1.618_033_988_749_895),
        ("loose_cycle(3,4)", loose_cycle(3, 4).unwrap(), 1.457_427_107_756_338),
    ]
}

#[test]
fn frozen_radii_are_reproduced() {
    for (name, g, expected) in frozen_radii() {
        let r = spectral_radius(&g).unwrap();
        assert!(
            (r.rho - expected).abs() < CROSS_CHECK_TOL,
            "{name}: got {:.17}, expected {expected:.17}",
            r.rho
        );
        assert!(r.residual < RESULT_RESIDUAL_TOL, "{name} residual");
        assert!(r.x.iter().all(|&v| v > 0.0), "{name} positivity");
        let norm: f64 = r.x.iter().map(|v| v * v).sum();
        assert!((norm - 1.0).abs() < 1e-12, "{name} normalization");
    }
}

#[test]
fn power_iteration_agrees_with_the_dense_oracle() {
    let mut graphs: Vec<Hypergraph> = frozen_radii().into_iter().map(|(_, g, _)| g).collect();
    graphs.push(loose_path(4, 3).unwrap());
    graphs.push(f1(12, 5).unwrap());
    // A non-uniform graph: the adjacency weights 1/(|e|−1) vary per edge.
    graphs.push(Hypergraph::new(5, vec![vec![0, 1], vec![1, 2, 3, 4], vec![0, 4]]).unwrap());
    for g in graphs {
        let fast = spectral_radius(&g).unwrap().rho;
        let dense = oracle_spectral_radius(&g);
        assert!(
            (fast - dense).abs() < CROSS_CHECK_TOL,
            "n = {}, m = {}: power {fast:.17} vs jacobi {dense:.17}",
            g.n(),
            g.m()
        );
    }
}

#[test]
fn single_edge_radius_is_exactly_one() {
    // One k-edge: the adjacency matrix is 1/(k−1) off the diagonal, whose
    // largest eigenvalue is (k−1)·(1/(k−1)) = 1 for every k.
    for k in 2..=6 {
        let g = Hypergraph::new(k, vec![(0..k).collect()]).unwrap();
        let r = spectral_radius(&g).unwrap();
        assert!((r.rho - 1.0).abs() < 1e-12, "k = {k}: rho = {:.17}", r.rho);
        assert!((oracle_spectral_radius(&g) - 1.0).abs() < 1e-12);
    }
}

#[test]
fn golden_ratio_at_the_two_edge_cycle() {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let r = spectral_radius(&two_cycle(3).unwrap()).unwrap();
    assert!((r.rho - phi).abs() < 1e-10);
    assert!((oracle_spectral_radius(&two_cycle(3).unwrap()) - phi).abs() < 1e-10);
}

#[test]
fn attaching_an_edge_strictly_raises_the_radius() {
    let mut r = rng(41);
    for trial in 0..50 {
        let k = r.gen_range(3..=5);
        let m = r.gen_range(2..=5);
        let g = random_unicyclic(m, k, &mut r);
        let v = r.gen_range(0..g.n());
        let bigger = attach_pendants(&g, v, 1, k).unwrap();
        let before = spectral_radius(&g).unwrap().rho;
        let after = spectral_radius(&bigger).unwrap().rho;
        assert!(
            after > before + 1e-9,
            "trial {trial}: rho fell from {before:.17} to {after:.17}"
        );
    }
}

#[test]
fn pendant_formula_across_families() {
    for g in [
        u_star(10, 3).unwrap(),
        u_star(12, 4).unwrap(),
        f_graph(12, 3).unwrap(),
        f1(9, 4).unwrap(),
        f2(12, 4).unwrap(),
        f3(12, 3).unwrap(),
        loose_path(3, 3).unwrap(),
    ] {
        let r = spectral_radius(&g).unwrap();
        let violations = check_pendant_formula(&g, &r).unwrap();
        assert!(violations.is_empty(), "violations: {violations:?}");
    }
    // Negative control: a perturbed pair is flagged.
    let g = u_star(10, 3).unwrap();
    let mut wrong = spectral_radius(&g).unwrap();
    wrong.rho *= 1.01;
    assert!(!check_pendant_formula(&g, &wrong).unwrap().is_empty());
}

#[test]
fn internal_edge_formula_on_loose_stretches() {
    // The middle edge of a 3-edge loose path is exactly the shape the
    // formula addresses; so are the middle edges of longer cycles.
    for g in [
        loose_path(3, 3).unwrap(),
        loose_path(3, 5).unwrap(),
        loose_cycle(4, 3).unwrap(),
        loose_cycle(3, 4).unwrap(),
    ] {
        let r = spectral_radius(&g).unwrap();
        let violations = check_internal_edge_formula(&g, &r).unwrap();
        assert!(violations.is_empty(), "violations: {violations:?}");
    }
    // Negative control.
    let g = loose_path(3, 3).unwrap();
    let mut wrong = spectral_radius(&g).unwrap();
    wrong.rho *= 1.01;
    assert!(!check_internal_edge_formula(&g, &wrong).unwrap().is_empty());
}

#[test]
fn f1_interior_formula_at_smallest_n_per_k() {
    // Smallest valid n for each k: m = 3, so n = 3(k−1). At k = 3 the
    // formula is vacuous (no plain interior vertices) and must return
    // clean rather than erroring.
    for (n, k) in [(6, 3), (9, 4), (12, 5)] {
        let g = f1(n, k).unwrap();
        let r = spectral_radius(&g).unwrap();
        let violations = check_f1_interior_formula(&g, &r).unwrap();
        assert!(violations.is_empty(), "(n, k) = ({n}, {k}): {violations:?}");
    }
}

#[test]
fn eigenvector_is_constant_on_orbits() {
    for g in [
        u_star(12, 3).unwrap(),
        f_graph(12, 4).unwrap(),
        f1(12, 3).unwrap(),
        loose_cycle(5, 3).unwrap(),
        two_cycle(6).unwrap(),
    ] {
        let r = spectral_radius(&g).unwrap();
        let orbits = orbit_partition(&g);
        let spread = check_orbit_constancy(&g, &r, &orbits);
        assert!(spread < FORMULA_TOL, "spread {spread:.3e}");
    }
}

#[test]
fn rayleigh_quotient_is_bounded_by_the_radius() {
    let g = f_graph(10, 3).unwrap();
    let r = spectral_radius(&g).unwrap();
    // At the principal eigenvector the quotient is the radius itself.
    let at_x = rayleigh_quotient(&g, &r.x).unwrap();
    assert!((at_x - r.rho).abs() < 1e-12);
    // Anywhere else it sits strictly below.
    let mut rnd = rng(3);
    for _ in 0..20 {
        let y: Vec<f64> = (0..g.n()).map(|_| rnd.gen_range(-1.0..1.0)).collect();
        let q = rayleigh_quotient(&g, &y).unwrap();
        assert!(q <= r.rho + 1e-12, "quotient {q} above radius {}", r.rho);
    }
}
