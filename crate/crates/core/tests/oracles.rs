//! Independent oracles: closed forms, brute-force counts and the product formula.

use kellipse::config::FociConfig;
use kellipse::fermat_weber::{sdpa_string, solve_fw, Formulation};
use kellipse::linalg;
use kellipse::pencil::build_planar_pencil;
use kellipse::poly::{det_expand, product_formula_eval, SparsePoly, UniPoly};
use kellipse::rational::{int, ratio};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn ellipse_polynomial_is_classical_conic() {
    // Foci (±3, 0), d = 10: a = 5, b = 4, conic 16x² + 25y² − 400.
    let cfg = FociConfig::planar_int(&[(-3, 0), (3, 0)], 10).unwrap();
    let p = det_expand(&build_planar_pencil(&cfg, false).unwrap()).unwrap();
    let vars = p.vars().to_vec();
    let x = SparsePoly::var(&vars, "x").unwrap();
    let y = SparsePoly::var(&vars, "y").unwrap();
    let conic = &(&(&x * &x).scale(&int(16)) + &(&y * &y).scale(&int(25))) - &SparsePoly::constant(&vars, int(400));
    let lambda = p.leading_term().unwrap().1 / conic.leading_term().unwrap().1;
    assert_eq!(p, conic.scale(&lambda));
}

#[test]
fn circle_polynomial_is_classical() {
    let cfg = FociConfig::planar_int(&[(1, 2)], 3).unwrap();
    let p = det_expand(&build_planar_pencil(&cfg, false).unwrap()).unwrap();
    // det = 9 − (x−1)² − (y−2)².
    assert_eq!(p.to_text(), "-x^2 - y^2 + 2*x + 4*y + 4");
}

#[test]
fn determinant_equals_product_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for k in 1..=5 {
        let cfg = FociConfig::random_planar(k, 6, 100 + k as u64)
            .unwrap()
            .with_radius(ratio(rng.random_range(5..60), 2))
            .unwrap();
        let pf = build_planar_pencil(&cfg, false).unwrap().to_f64();
        for _ in 0..100 {
            let p = [rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0)];
            let det = linalg::det(&pf.eval(&p));
            let prod = product_formula_eval(&cfg, &p);
            assert!((det - prod).abs() <= 1e-6 * (1.0 + det.abs()), "k={k} {det} vs {prod}");
        }
    }
}

#[test]
fn sturm_counts_match_known_factorizations() {
    // (t−1)²(t+2)(t²+1)
    let p = UniPoly::from_i64(&[1, -1])
        .mul(&UniPoly::from_i64(&[1, -1]))
        .mul(&UniPoly::from_i64(&[2, 1]))
        .mul(&UniPoly::from_i64(&[1, 0, 1]));
    assert_eq!(p.count_distinct_real_roots(), 2);
    assert_eq!(p.count_real_roots_with_multiplicity(), 3);
    // Chebyshev T_6 has six simple roots in (−1, 1).
    let t6 = UniPoly::from_i64(&[-1, 0, 18, 0, -48, 0, 32]);
    assert_eq!(t6.count_real_roots_with_multiplicity(), 6);
}

#[test]
fn interpolation_recovers_polynomial() {
    let p = UniPoly::from_i64(&[3, 0, -2, 7, 1]);
    let nodes: Vec<_> = (0..5).map(int).collect();
    let values: Vec<_> = nodes.iter().map(|t| p.eval(t)).collect();
    assert_eq!(UniPoly::interpolate(&nodes, &values), p);
}

struct Sdpa {
    m: usize,
    sizes: Vec<usize>,
    objective: Vec<f64>,
    entries: Vec<(usize, usize, usize, usize, f64)>,
}

fn parse_sdpa(text: &str) -> Sdpa {
    let mut lines = text.lines();
    let m = lines.next().unwrap().trim().parse().unwrap();
    let nb: usize = lines.next().unwrap().trim().parse().unwrap();
    let sizes: Vec<usize> = lines.next().unwrap().split_whitespace().map(|t| t.parse().unwrap()).collect();
    assert_eq!(sizes.len(), nb);
    let objective = lines.next().unwrap().split_whitespace().map(|t| t.parse().unwrap()).collect();
    let entries = lines
        .map(|l| {
            let t: Vec<&str> = l.split_whitespace().collect();
            (t[0].parse().unwrap(), t[1].parse().unwrap(), t[2].parse().unwrap(), t[3].parse().unwrap(), t[4].parse().unwrap())
        })
        .collect();
    Sdpa { m, sizes, objective, entries }
}

/// Smallest eigenvalue over the blocks of `Σ Fᵢxᵢ − F₀` and the objective `cᵀx`.
fn sdpa_eval(s: &Sdpa, x: &[f64]) -> (f64, f64) {
    assert_eq!(x.len(), s.m);
    let mut blocks: Vec<DMatrix<f64>> = s.sizes.iter().map(|&n| DMatrix::zeros(n, n)).collect();
    for &(var, b, i, j, v) in &s.entries {
        assert!(i <= j, "lower-triangle entry");
        let coef = if var == 0 { -1.0 } else { x[var - 1] };
        blocks[b - 1][(i - 1, j - 1)] += coef * v;
        if i != j {
            blocks[b - 1][(j - 1, i - 1)] += coef * v;
        }
    }
    let min = blocks.iter().map(linalg::min_eigenvalue).fold(f64::INFINITY, f64::min);
    (min, s.objective.iter().zip(x).map(|(c, v)| c * v).sum())
}

#[test]
fn sdpa_models_are_tight_at_the_fermat_weber_point() {
    let cfg = FociConfig::planar_int(&[(0, 0), (7, 1), (2, 6), (-3, 4)], 1)
        .unwrap()
        .with_weights(vec![int(1), int(2), int(1), int(3)])
        .unwrap();
    let sol = solve_fw(&cfg).unwrap();
    let (x, y, d) = (sol.point[0], sol.point[1], sol.value);

    let big = parse_sdpa(&sdpa_string(&cfg, Formulation::Big).unwrap());
    let (lam, obj) = sdpa_eval(&big, &[x, y, d]);
    assert!(lam.abs() < 1e-7, "{lam}");
    assert!((obj - d).abs() < 1e-12);
    let (lam, _) = sdpa_eval(&big, &[x, y, d - 0.01]);
    assert!(lam < 0.0);

    let lifted = parse_sdpa(&sdpa_string(&cfg, Formulation::Lifted).unwrap());
    let foci = cfg.foci_f64();
    let mut z = vec![x, y];
    z.extend(foci.iter().map(|u| ((x - u[0]).powi(2) + (y - u[1]).powi(2)).sqrt()));
    let (lam, obj) = sdpa_eval(&lifted, &z);
    assert!(lam.abs() < 1e-9, "{lam}");
    assert!((obj - d).abs() < 1e-9, "{obj} vs {d}");
}

#[test]
fn quadrilateral_fermat_weber_point_is_diagonal_intersection() {
    let q = [(0i64, 0i64), (6, -1), (7, 5), (1, 4)];
    let cfg = FociConfig::planar_int(&q, 1).unwrap();
    let sol = solve_fw(&cfg).unwrap();
    // Diagonals (0,0)–(7,5) and (6,−1)–(1,4): t(7,5) = (6,−1) + s(−5,5).
    let (a, b) = ([0.0, 0.0], [7.0, 5.0]);
    let (c, e) = ([6.0, -1.0], [1.0, 4.0]);
    let den = (b[0] - a[0]) * (e[1] - c[1]) - (b[1] - a[1]) * (e[0] - c[0]);
    let t = ((c[0] - a[0]) * (e[1] - c[1]) - (c[1] - a[1]) * (e[0] - c[0])) / den;
    let p = [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];
    assert!((sol.point[0] - p[0]).abs() < 1e-6 && (sol.point[1] - p[1]).abs() < 1e-6);
}

#[test]
fn certified_root_count_agrees_with_sturm() {
    use kellipse::pencil::assignment;
    use kellipse::poly::restricted_determinant;
    use kellipse::par::Exec;
    let cfg = FociConfig::planar_int(&[(0, 0), (5, 1), (2, 4)], 14).unwrap();
    let pencil = build_planar_pencil(&cfg, false).unwrap();
    let at = assignment(&[("x", ratio(9, 4)), ("y", ratio(3, 2))]);
    for (p, q) in [(1i64, 2i64), (3, 7), (-5, 4), (0, 1)] {
        let n = p * p + q * q;
        let dir = assignment(&[("x", ratio(q * q - p * p, n)), ("y", ratio(2 * p * q, n))]);
        let g = restricted_determinant(&pencil, &at, &dir, 8, Exec::Sequential).unwrap();
        let (m0, m1) = pencil.line_restriction(&at, &dir).unwrap();
        let approx = linalg::definite_pencil_roots(&m0.to_f64(), &m1.to_f64()).unwrap();
        assert_eq!(g.certify_simple_real_roots(&approx), Some(g.count_real_roots_with_multiplicity()));
        assert_eq!(g.count_distinct_real_roots(), 8);
    }
}
