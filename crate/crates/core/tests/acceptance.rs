//! Acceptance run: one PASS/FAIL line per criterion.

use std::time::Instant;

use kellipse::cli;
use kellipse::config::FociConfig;
use kellipse::fermat_weber::{solve_fw, verify_fw_via_pencil, FwStatus};
use kellipse::geometry::{
    self, ellipsoid_vanishing_check, membership_sweep, output, rigidity_check, small_ellipse_lmi_check, Window,
};
use kellipse::linalg;
use kellipse::par::Exec;
use kellipse::pencil::{build_planar_pencil, build_symbolic_planar_pencil};
use kellipse::poly::{self, det_expand, predicted_degree, product_formula_eval, SignVector};
use kellipse::rational::{int, ratio, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = (bool, String);
type Criterion = (&'static str, fn() -> Outcome);

fn random_rational_foci(k: usize, rng: &mut ChaCha8Rng) -> FociConfig {
    let mut foci: Vec<Vec<Rational>> = Vec::new();
    while foci.len() < k {
        let p = vec![
            ratio(rng.random_range(-40..=40), rng.random_range(1..=7)),
            ratio(rng.random_range(-40..=40), rng.random_range(1..=7)),
        ];
        if !foci.contains(&p) {
            foci.push(p);
        }
    }
    FociConfig::new(foci, None, int(1)).unwrap()
}

fn c1_term_count() -> Outcome {
    let p = det_expand(&build_symbolic_planar_pencil(3, None).unwrap()).unwrap();
    (p.term_count() == 2355, format!("{} terms", p.term_count()))
}

fn c2_degree_table() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let expected = [2, 2, 8, 10, 32];
    let got: Vec<usize> = (1..=5)
        .map(|k| poly::degree_by_interpolation(&random_rational_foci(k, &mut rng)).unwrap())
        .collect();
    let p6 = predicted_degree(6, None).unwrap();
    (got == expected && p6 == 44, format!("degrees {got:?}, predicted(6) = {p6}"))
}

fn c3_weighted_degree() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut bad = 0;
    for _ in 0..25 {
        let k = rng.random_range(1..=10usize);
        let w: Vec<i64> = (0..k).map(|_| rng.random_range(1..=10)).collect();
        let brute = (0..1u64 << k)
            .filter(|m| (0..k).map(|i| if m >> i & 1 == 1 { -w[i] } else { w[i] }).sum::<i64>() == 0)
            .count() as u64;
        let weights: Vec<Rational> = w.iter().map(|&v| int(v)).collect();
        if predicted_degree(k, Some(&weights)).unwrap() != (1 << k) - brute {
            bad += 1;
        }
    }
    (bad == 0, format!("{} of 25 weight vectors agree", 25 - bad))
}

fn random_weighted(k: usize, rng: &mut ChaCha8Rng) -> FociConfig {
    let cfg = FociConfig::random_planar(k, 8, rng.random()).unwrap();
    let w: Vec<Rational> = (0..k).map(|_| ratio(rng.random_range(1..=6), rng.random_range(1..=3))).collect();
    let cfg = cfg.with_weights(w).unwrap();
    let d = solve_fw(&cfg).unwrap().value;
    cfg.with_radius_f64(d * rng.random_range(1.05..2.0) + rng.random_range(0.5..3.0)).unwrap()
}

fn c4_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for k in 1..=5 {
        for _ in 0..3 {
            let cfg = random_weighted(k, &mut rng);
            let pf = build_planar_pencil(&cfg, false).unwrap().to_f64();
            for _ in 0..100 {
                let p = [rng.random_range(-15.0..15.0), rng.random_range(-15.0..15.0)];
                let det = linalg::det(&pf.eval(&p));
                let rel = (det - product_formula_eval(&cfg, &p)).abs() / (1.0 + det.abs());
                worst = worst.max(rel);
            }
        }
    }
    (worst <= 1e-6, format!("worst relative gap {worst:.2e} over 1500 points"))
}

fn c5_membership() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut configs: Vec<FociConfig> = (1..=5).map(|k| random_weighted(k, &mut rng)).collect();
    configs.push(
        FociConfig::from_f64(&[vec![0.0, 0.0, 0.0], vec![2.0, 1.0, -1.0], vec![-1.0, 3.0, 2.0]], None, 10.0).unwrap(),
    );
    let mut total = 0;
    let mut disagreements = 0;
    let mut inside = 0;
    for cfg in &configs {
        let reach = 1.25 * cfg.radius_f64() / cfg.weights_f64().iter().sum::<f64>();
        let foci = cfg.foci_f64();
        let pts: Vec<Vec<f64>> = (0..10_000)
            .map(|i| {
                let f = &foci[i % foci.len()];
                f.iter().map(|c| c + rng.random_range(-reach..reach)).collect()
            })
            .collect();
        let s = membership_sweep(cfg, &pts, 1e-8, Exec::default()).unwrap();
        total += s.points;
        inside += s.inside;
        disagreements += s.disagreements;
    }
    (
        disagreements == 0,
        format!("{disagreements} disagreements on {total} points ({inside} inside), 6 configs"),
    )
}

fn c6_rigidity() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for (k, roots) in [(3usize, 8usize), (5, 32)] {
        let cfg = FociConfig::random_planar(k, 10, 60 + k as u64).unwrap();
        let cfg = cfg.with_radius_f64(solve_fw(&cfg).unwrap().value + 10.0).unwrap();
        let reports = rigidity_check(&cfg, 50, 6).unwrap();
        let pass = reports.iter().filter(|r| r.pass && r.real_roots == roots).count();
        ok &= pass == 50;
        parts.push(format!("k={k}: {pass}/50 lines with {roots} real roots"));
    }
    (ok, parts.join(", "))
}

fn c7_fermat_weber() -> Outcome {
    let quad = FociConfig::planar_int(&[(0, 0), (6, -1), (7, 5), (1, 4)], 1).unwrap();
    let q = solve_fw(&quad).unwrap();
    // Diagonals y = 5x/7 and x + y = 5 meet at (35/12, 25/12).
    let quad_err = (q.point[0] - 35.0 / 12.0).hypot(q.point[1] - 25.0 / 12.0);

    let h = 3f64.sqrt() / 2.0;
    let tri = FociConfig::from_f64(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.5, h]], None, 1.0).unwrap();
    let t = solve_fw(&tri).unwrap();
    let tri_err = (t.value - 3f64.sqrt()).abs();

    let obtuse = FociConfig::planar_int(&[(0, 0), (10, 0), (5, 1)], 1).unwrap();
    let o = solve_fw(&obtuse).unwrap();
    let at_focus = o.status == FwStatus::AtFocus(2);
    let ok = quad_err <= 1e-6 && tri_err <= 1e-8 && at_focus && o.certificate <= 1.0 + 1e-9;
    (
        ok,
        format!(
            "quadrilateral error {quad_err:.1e}, equilateral |d*−√3| = {tri_err:.1e}, obtuse {:?} certificate {:.6}",
            o.status, o.certificate
        ),
    )
}

fn c8_fw_pencil() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    let mut grids_ok = true;
    for k in 1..=5 {
        let cfg = random_weighted(k, &mut rng);
        let sol = solve_fw(&cfg).unwrap();
        let v = verify_fw_via_pencil(&cfg, &sol).unwrap();
        worst = worst.max(v.min_eigenvalue.abs());
        grids_ok &= v.feasible_points == 0;
    }
    (
        worst <= 1e-6 && grids_ok,
        format!("max |λ_min| {worst:.1e}; shrunk radius infeasible on every grid: {grids_ok}"),
    )
}

fn c9_small_ellipse() -> Outcome {
    let cfg = FociConfig::planar_int(&[(-2, 1), (3, 2)], 9).unwrap();
    let r = small_ellipse_lmi_check(&cfg, 9).unwrap();
    (
        r.pass && r.ratio_variation <= 1e-8 && r.grid_mismatches == 0,
        format!("ratio variation {:.1e}, {} of {} grid points mismatch", r.ratio_variation, r.grid_mismatches, r.grid_points),
    )
}

fn c10_ellipsoid() -> Outcome {
    let cfg = FociConfig::from_f64(&[vec![0.0, 0.0, 0.0], vec![3.0, 1.0, -2.0]], None, 7.0).unwrap();
    let r = ellipsoid_vanishing_check(&cfg, 50, 10, 1e-6).unwrap();
    (
        r.pass && r.samples.len() == 50,
        format!("max scaled det {:.1e} on {} surface points, min off-surface {:.1e}", r.max_scaled_det, r.samples.len(), r.min_off_surface),
    )
}

fn run_cli(args: &[&str]) -> Vec<u8> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(std::iter::once("kellipse").chain(args.iter().copied()), &mut out, &mut err);
    assert_eq!(code, 0, "{}", String::from_utf8_lossy(&err));
    out
}

fn c11_determinism() -> Outcome {
    let commands: &[&[&str]] = &[
        &["plot", "-k4", "--seed", "11", "--resolution", "250"],
        &["plot", "-k3", "--seed", "11", "--confocal", "30,40,60", "--resolution", "200"],
        &["rigid", "-k3", "--seed", "11", "--lines", "10", "--json"],
        &["member", "-k3", "--seed", "11", "--sample", "2000", "--json"],
        &["build", "-k3", "--seed", "11", "--json"],
        &["fw", "-k5", "--seed", "11", "--json"],
    ];
    let same_cli = commands.iter().all(|c| run_cli(c) == run_cli(c));
    let cfg = FociConfig::random_planar(4, 10, 11).unwrap();
    let cfg = cfg.with_radius_f64(solve_fw(&cfg).unwrap().value + 8.0).unwrap();
    let window = Window::for_branches(&cfg);
    let sigmas: Vec<SignVector> = SignVector::all(4).collect();
    let foci: Vec<[f64; 2]> = cfg.foci_f64().iter().map(|f| [f[0], f[1]]).collect();
    let svg = |exec| {
        let c = geometry::trace_branches_with(&cfg, &window, 200, &sigmas, exec).unwrap();
        output::branches_svg(&c, &window, &foci)
    };
    let same_modes = svg(Exec::Sequential) == svg(Exec::Parallel);
    (
        same_cli && same_modes,
        format!("{} CLI outputs byte-identical: {same_cli}; sequential and parallel SVG identical: {same_modes}", commands.len()),
    )
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("term count", c1_term_count),
        ("degree table", c2_degree_table),
        ("weighted degree", c3_weighted_degree),
        ("oracle equivalence", c4_oracle),
        ("membership consistency", c5_membership),
        ("rigid convexity", c6_rigidity),
        ("Fermat-Weber", c7_fermat_weber),
        ("FW-pencil consistency", c8_fw_pencil),
        ("small ellipse LMI", c9_small_ellipse),
        ("ellipsoid vanishing", c10_ellipsoid),
        ("determinism", c11_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = f();
        let secs = start.elapsed().as_secs_f64();
        if !ok {
            failed += 1;
        }
        println!("criterion {:>2} {} {name}: {detail} [{secs:.2} s]", i + 1, if ok { "PASS" } else { "FAIL" });
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
