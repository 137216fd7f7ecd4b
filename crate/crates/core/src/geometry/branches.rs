//! Marching-squares extraction of the real branches
//! `f_σ(x, y) = d − Σ (−1)^{σᵢ} wᵢ rᵢ(x, y) = 0`.

use std::collections::BTreeMap;

use crate::config::{dist, FociConfig, FociF64};
use crate::error::{Error, Result};
use crate::fermat_weber::solve_fw;
use crate::par::{self, Exec};
use crate::poly::SignVector;

/// Axis-aligned plotting window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl Window {
    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Result<Self> {
        let ok = [xmin, xmax, ymin, ymax].iter().all(|v| v.is_finite()) && xmin < xmax && ymin < ymax;
        if !ok {
            return Err(Error::invalid("window must have finite bounds with min < max"));
        }
        Ok(Window { xmin, xmax, ymin, ymax })
    }

    pub fn centered(cx: f64, cy: f64, half: f64) -> Self {
        Window { xmin: cx - half, xmax: cx + half, ymin: cy - half, ymax: cy + half }
    }

    /// Square window around the foci large enough to hold every bounded
    /// branch: a branch with signed weight sum `S > 0` stays within radius
    /// `(d + Σ wᵢ‖uᵢ − c‖) / S` of the foci centroid `c`.
    pub fn for_branches(cfg: &FociConfig) -> Self {
        let f = FociF64::from(cfg);
        let s_min = SignVector::all(cfg.k().min(20))
            .map(|s| s.signed_sum(&f.weights))
            .filter(|&s| s > 1e-12)
            .fold(f64::INFINITY, f64::min);
        Self::fit(&f, if s_min.is_finite() { s_min } else { 1.0 })
    }

    /// Square window around the convex region itself.
    pub fn for_region(cfg: &FociConfig) -> Self {
        let f = FociF64::from(cfg);
        let total: f64 = f.weights.iter().sum();
        Self::fit(&f, total)
    }

    fn fit(f: &FociF64, s: f64) -> Self {
        let k = f.foci.len() as f64;
        let cx = f.foci.iter().map(|p| p[0]).sum::<f64>() / k;
        let cy = f.foci.iter().map(|p| p[1]).sum::<f64>() / k;
        let spread: f64 = f
            .foci
            .iter()
            .zip(&f.weights)
            .map(|(p, w)| w * dist(p, &[cx, cy]))
            .sum();
        let reach = f.foci.iter().map(|p| dist(p, &[cx, cy])).fold(0.0, f64::max);
        let half = ((f.radius + spread) / s).max(reach) * 1.1 + 1e-3;
        Window::centered(cx, cy, half)
    }
}

/// A curve vertex, refined onto its branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchPoint {
    pub location: [f64; 2],
    pub branch: SignVector,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub points: Vec<BranchPoint>,
    pub closed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BranchCurve {
    pub sigma: SignVector,
    pub polylines: Vec<Polyline>,
}

impl BranchCurve {
    pub fn is_empty(&self) -> bool {
        self.polylines.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = &BranchPoint> {
        self.polylines.iter().flat_map(|p| &p.points)
    }

    pub fn max_residual(&self) -> f64 {
        self.points().map(|p| p.residual).fold(0.0, f64::max)
    }
}

/// Traces every branch `σ ∈ {0,1}^k` on a `resolution × resolution` cell grid.
/// Branches without real points in the window come back empty.
pub fn trace_branches(cfg: &FociConfig, window: &Window, resolution: usize) -> Result<Vec<BranchCurve>> {
    let sigmas: Vec<SignVector> = SignVector::all(cfg.k()).collect();
    trace_branches_with(cfg, window, resolution, &sigmas, Exec::default())
}

pub fn trace_branches_with(
    cfg: &FociConfig,
    window: &Window,
    resolution: usize,
    sigmas: &[SignVector],
    exec: Exec,
) -> Result<Vec<BranchCurve>> {
    if !cfg.is_planar() {
        return Err(Error::invalid("branch tracing needs a planar configuration"));
    }
    if cfg.k() > 16 {
        return Err(Error::Budget(format!("2^{} branches is too many to trace", cfg.k())));
    }
    if resolution < 2 {
        return Err(Error::invalid("resolution must be at least 2"));
    }
    let grid = Grid::new(cfg, window, resolution);
    Ok(par::map_slice(exec, sigmas, |&s| grid.trace(s)))
}

struct Grid {
    foci: FociF64,
    window: Window,
    n: usize,
    /// Weighted distances per node, `k` values per node, row-major by `(j, i)`.
    wr: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Edge {
    /// Between nodes `(i, j)` and `(i+1, j)`.
    H(usize, usize),
    /// Between nodes `(i, j)` and `(i, j+1)`.
    V(usize, usize),
}

impl Grid {
    fn new(cfg: &FociConfig, window: &Window, n: usize) -> Self {
        let foci = FociF64::from(cfg);
        let k = foci.foci.len();
        let mut wr = Vec::with_capacity((n + 1) * (n + 1) * k);
        for j in 0..=n {
            for i in 0..=n {
                let p = Self::node_at(window, n, i, j);
                for (u, w) in foci.foci.iter().zip(&foci.weights) {
                    wr.push(w * dist(&p, u));
                }
            }
        }
        Grid { foci, window: *window, n, wr }
    }

    fn node_at(w: &Window, n: usize, i: usize, j: usize) -> [f64; 2] {
        [
            w.xmin + (w.xmax - w.xmin) * i as f64 / n as f64,
            w.ymin + (w.ymax - w.ymin) * j as f64 / n as f64,
        ]
    }

    fn node_value(&self, s: SignVector, i: usize, j: usize) -> f64 {
        let k = self.foci.foci.len();
        let start = (j * (self.n + 1) + i) * k;
        self.foci.radius - s.signed_sum(&self.wr[start..start + k])
    }

    fn f(&self, s: SignVector, p: [f64; 2]) -> f64 {
        let wr: Vec<f64> = self
            .foci
            .foci
            .iter()
            .zip(&self.foci.weights)
            .map(|(u, w)| w * dist(&p, u))
            .collect();
        self.foci.radius - s.signed_sum(&wr)
    }

    fn edge_ends(&self, e: Edge) -> ((usize, usize), (usize, usize)) {
        match e {
            Edge::H(i, j) => ((i, j), (i + 1, j)),
            Edge::V(i, j) => ((i, j), (i, j + 1)),
        }
    }

    /// Bisection along the edge down to floating-point resolution.
    fn refine(&self, s: SignVector, e: Edge) -> BranchPoint {
        let ((i0, j0), (i1, j1)) = self.edge_ends(e);
        let mut a = Self::node_at(&self.window, self.n, i0, j0);
        let mut b = Self::node_at(&self.window, self.n, i1, j1);
        let mut fa = self.node_value(s, i0, j0);
        for _ in 0..64 {
            let m = [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0];
            if m == a || m == b {
                break;
            }
            let fm = self.f(s, m);
            if (fm >= 0.0) == (fa >= 0.0) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        let (fa, fb) = (self.f(s, a), self.f(s, b));
        let (location, residual) = if fa.abs() <= fb.abs() { (a, fa.abs()) } else { (b, fb.abs()) };
        BranchPoint { location, branch: s, residual }
    }

    fn trace(&self, s: SignVector) -> BranchCurve {
        let n = self.n;
        let pos = |i, j| self.node_value(s, i, j) >= 0.0;
        let mut adjacency: BTreeMap<Edge, Vec<Edge>> = BTreeMap::new();
        let mut link = |a: Edge, b: Edge| {
            adjacency.entry(a).or_default().push(b);
            adjacency.entry(b).or_default().push(a);
        };
        for j in 0..n {
            for i in 0..n {
                let c = [pos(i, j), pos(i + 1, j), pos(i + 1, j + 1), pos(i, j + 1)];
                let bottom = Edge::H(i, j);
                let right = Edge::V(i + 1, j);
                let top = Edge::H(i, j + 1);
                let left = Edge::V(i, j);
                let crossings: Vec<Edge> = [(0, 1, bottom), (1, 2, right), (3, 2, top), (0, 3, left)]
                    .into_iter()
                    .filter(|&(a, b, _)| c[a] != c[b])
                    .map(|(_, _, e)| e)
                    .collect();
                match crossings.len() {
                    2 => link(crossings[0], crossings[1]),
                    4 => {
                        let w = &self.window;
                        let center = [
                            w.xmin + (w.xmax - w.xmin) * (i as f64 + 0.5) / n as f64,
                            w.ymin + (w.ymax - w.ymin) * (j as f64 + 0.5) / n as f64,
                        ];
                        // Corners whose sign differs from the center are cut off.
                        if (self.f(s, center) >= 0.0) == c[0] {
                            link(bottom, right);
                            link(top, left);
                        } else {
                            link(bottom, left);
                            link(top, right);
                        }
                    }
                    _ => {}
                }
            }
        }
        BranchCurve { sigma: s, polylines: self.chain(s, adjacency) }
    }

    fn chain(&self, s: SignVector, adjacency: BTreeMap<Edge, Vec<Edge>>) -> Vec<Polyline> {
        let mut visited: BTreeMap<Edge, bool> = adjacency.keys().map(|&e| (e, false)).collect();
        let mut out = Vec::new();
        let walk = |start: Edge, visited: &mut BTreeMap<Edge, bool>| -> (Vec<Edge>, bool) {
            let mut path = vec![start];
            visited.insert(start, true);
            let mut cur = start;
            loop {
                let next = adjacency[&cur].iter().find(|e| !visited[e]).copied();
                match next {
                    Some(e) => {
                        visited.insert(e, true);
                        path.push(e);
                        cur = e;
                    }
                    None => {
                        let closed = path.len() > 2 && adjacency[&cur].contains(&start);
                        return (path, closed);
                    }
                }
            }
        };
        // Open chains start at window-boundary edges (degree 1).
        let ends: Vec<Edge> = adjacency.iter().filter(|(_, v)| v.len() == 1).map(|(e, _)| *e).collect();
        for e in ends {
            if !visited[&e] {
                let (path, _) = walk(e, &mut visited);
                out.push(self.polyline(s, &path, false));
            }
        }
        let rest: Vec<Edge> = adjacency.keys().copied().collect();
        for e in rest {
            if !visited[&e] {
                let (path, closed) = walk(e, &mut visited);
                out.push(self.polyline(s, &path, closed));
            }
        }
        out
    }

    fn polyline(&self, s: SignVector, path: &[Edge], closed: bool) -> Polyline {
        Polyline { points: path.iter().map(|&e| self.refine(s, e)).collect(), closed }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CurveKind {
    /// Radius below `d*`: the region is empty.
    Empty,
    /// Radius equal to `d*`: the region is the Fermat-Weber point.
    Point([f64; 2]),
    Curve(Vec<Polyline>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfocalCurve {
    pub radius: f64,
    pub kind: CurveKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfocalPlot {
    pub window: Window,
    pub d_star: f64,
    pub fw_point: [f64; 2],
    pub curves: Vec<ConfocalCurve>,
    /// Every sampled point of each curve lies inside all larger ones.
    pub nested: bool,
}

/// Convex k-ellipses (σ = 0) for several radii with fixed foci.
pub fn confocal_pencil(cfg: &FociConfig, radii: &[f64], resolution: usize) -> Result<ConfocalPlot> {
    confocal_pencil_with(cfg, radii, None, resolution, Exec::default())
}

pub fn confocal_pencil_with(
    cfg: &FociConfig,
    radii: &[f64],
    window: Option<Window>,
    resolution: usize,
    exec: Exec,
) -> Result<ConfocalPlot> {
    if radii.is_empty() || radii.iter().any(|r| *r <= 0.0 || !r.is_finite()) {
        return Err(Error::invalid("radii must be positive and finite"));
    }
    if radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("radii must be strictly ascending"));
    }
    let fw = solve_fw(cfg)?;
    let d_star = fw.value;
    let fw_point = [fw.point[0], fw.point[1]];
    let largest = cfg.with_radius_f64(*radii.last().unwrap())?;
    let window = window.unwrap_or_else(|| Window::for_region(&largest));
    let tol = 1e-9 * (1.0 + d_star);
    let zero = SignVector::zeros(cfg.k());
    let mut curves = Vec::with_capacity(radii.len());
    for &r in radii {
        let kind = if r < d_star - tol {
            CurveKind::Empty
        } else if r <= d_star + tol {
            CurveKind::Point(fw_point)
        } else {
            let c = cfg.with_radius_f64(r)?;
            let mut traced = trace_branches_with(&c, &window, resolution, &[zero], exec)?;
            CurveKind::Curve(traced.remove(0).polylines)
        };
        curves.push(ConfocalCurve { radius: r, kind });
    }
    let f = FociF64::from(cfg);
    let nested = curves.windows(2).all(|pair| {
        let outer = pair[1].radius;
        let inner: Vec<[f64; 2]> = match &pair[0].kind {
            CurveKind::Empty => vec![],
            CurveKind::Point(p) => vec![*p],
            CurveKind::Curve(lines) => lines.iter().flat_map(|l| l.points.iter().map(|p| p.location)).collect(),
        };
        inner.iter().all(|p| f.distance_sum(p) <= outer + 1e-9 * (1.0 + outer))
    });
    Ok(ConfocalPlot { window, d_star, fw_point, curves, nested })
}
