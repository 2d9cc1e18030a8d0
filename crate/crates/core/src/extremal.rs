//! Extremal combinatorics of degree-1 persistence: triangle persistence,
//! the TP_1/TP_2 bounds with their corner minima, stable-class certificates
//! for lattice subsets, and the ξ(N) subset search.

use crate::error::{Error, Result};
use crate::filtration::cech_filtration;
use crate::metric::{euclidean, PointCloud};
use crate::persistence::persistent_homology;
use crate::rng::SplitMix64;

/// Circumradius abc/4A of a planar triangle (area by the shoelace formula).
pub fn circumradius(p: &[f64], q: &[f64], r: &[f64]) -> Result<f64> {
    crate::delaunay::circumradius_2d(p, q, r)
}

/// Circumradius for points in any ambient dimension, with the area from
/// Heron's formula.
fn circumradius_any_dim(p: &[f64], q: &[f64], r: &[f64]) -> Result<f64> {
    let a = euclidean(q, r);
    let b = euclidean(p, r);
    let c = euclidean(p, q);
    let s = 0.5 * (a + b + c);
    let area_sq = s * (s - a) * (s - b) * (s - c);
    let scale = a.max(b).max(c);
    if area_sq <= 1e-24 * scale.powi(4) {
        return Err(Error::Degenerate("collinear points have no circumcircle".into()));
    }
    Ok(a * b * c / (4.0 * area_sq.sqrt()))
}

/// The degree-1 interval of a 3-point set, if it has one: an acute triangle
/// is born at half its longest edge and dies at its circumradius; right and
/// obtuse triangles never produce a degree-1 class.
pub fn triangle_persistence(p: &[f64], q: &[f64], r: &[f64]) -> Result<Option<(f64, f64)>> {
    let a2 = sq_dist(q, r);
    let b2 = sq_dist(p, r);
    let c2 = sq_dist(p, q);
    let scale = a2.max(b2).max(c2);
    if a2.min(b2).min(c2) <= 1e-24 * scale.max(1e-300) {
        return Err(Error::Degenerate("duplicate points".into()));
    }
    // strictly acute: every squared edge is shorter than the sum of the
    // other two (right triangles count as non-acute)
    let acute = a2 < b2 + c2 - 1e-12 * scale
        && b2 < a2 + c2 - 1e-12 * scale
        && c2 < a2 + b2 - 1e-12 * scale;
    if !acute {
        return Ok(None);
    }
    let longest = scale.sqrt();
    let radius = circumradius_any_dim(p, q, r)?;
    Ok(Some((longest / 2.0, radius)))
}

fn sq_dist(p: &[f64], q: &[f64]) -> f64 {
    p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum()
}

/// TP_1(x, y_1, y_2) = √((x²+y_1²)(x²+y_2²))/(2x) − (y_1−y_2)/2.
pub fn tp1(x: f64, y1: f64, y2: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::InvalidInput("tp1 requires x > 0".into()));
    }
    Ok(((x * x + y1 * y1) * (x * x + y2 * y2)).sqrt() / (2.0 * x) - (y1 - y2) / 2.0)
}

/// TP_2(x, y_1, y_2) = √((x²+y_1²)(x²+y_2²))/(2x) − √(x²+y_1²)/2.
pub fn tp2(x: f64, y1: f64, y2: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::InvalidInput("tp2 requires x > 0".into()));
    }
    Ok(((x * x + y1 * y1) * (x * x + y2 * y2)).sqrt() / (2.0 * x)
        - (x * x + y1 * y1).sqrt() / 2.0)
}

#[derive(Debug, Clone)]
pub struct TpMinimaReport {
    pub tp1_sampled_min: f64,
    pub tp1_argmin: (f64, f64, f64),
    pub tp1_corner_value: f64,
    pub tp1_corner: (f64, f64, f64),
    pub tp2_sampled_min: f64,
    pub tp2_argmin: (f64, f64, f64),
    pub tp2_corner_value: f64,
    pub tp2_corner: (f64, f64, f64),
    pub pass: bool,
}

/// Sample TP_1 and TP_2 over their constraint boxes and confirm that the
/// sampled minima sit at the claimed corners: TP_1 at (c√N+N, N, −N) and
/// TP_2 at (N, c√N, −c√N).
pub fn verify_tp_minima(n: f64, c: f64, grid_steps: usize) -> Result<TpMinimaReport> {
    if c <= 0.0 || n < c * c {
        return Err(Error::InvalidInput("need c > 0 and N ≥ c²".into()));
    }
    if grid_steps < 8 {
        return Err(Error::InvalidInput("need at least 8 grid steps".into()));
    }
    let root = c * n.sqrt();
    let steps = grid_steps;
    let lerp = |lo: f64, hi: f64, k: usize| lo + (hi - lo) * k as f64 / (steps - 1) as f64;

    // TP_1: y1 ∈ [c√N, N], y2 ∈ [−N, −c√N], x ≥ √(−y1·y2) + c√N
    let mut tp1_min = f64::INFINITY;
    let mut tp1_arg = (0.0, 0.0, 0.0);
    for i in 0..steps {
        let y1 = lerp(root, n, i);
        for j in 0..steps {
            let y2 = lerp(-n, -root, j);
            let x_lo = (-y1 * y2).sqrt() + root;
            for k in 0..steps {
                let x = lerp(x_lo, x_lo + n, k);
                let v = tp1(x, y1, y2)?;
                if v < tp1_min {
                    tp1_min = v;
                    tp1_arg = (x, y1, y2);
                }
            }
        }
    }
    let tp1_corner = (root + n, n, -n);
    let tp1_corner_value = c * c * n / (2.0 * (root + n));

    // TP_2: y1 ∈ [c√N, N], y2 ∈ [−N, −c√N], x ∈ [c√N, N]
    let mut tp2_min = f64::INFINITY;
    let mut tp2_arg = (0.0, 0.0, 0.0);
    for i in 0..steps {
        let y1 = lerp(root, n, i);
        for j in 0..steps {
            let y2 = lerp(-n, -root, j);
            for k in 0..steps {
                let x = lerp(root, n, k);
                let v = tp2(x, y1, y2)?;
                if v < tp2_min {
                    tp2_min = v;
                    tp2_arg = (x, y1, y2);
                }
            }
        }
    }
    let tp2_corner = (n, root, -root);
    let tp2_corner_value = 0.5 * (c * c + n - (n * n + c * c * n).sqrt());

    let cell = |lo: f64, hi: f64| (hi - lo) / (steps - 1) as f64;
    let near = |a: (f64, f64, f64), b: (f64, f64, f64), cells: (f64, f64, f64)| {
        (a.0 - b.0).abs() <= cells.0 + 1e-9
            && (a.1 - b.1).abs() <= cells.1 + 1e-9
            && (a.2 - b.2).abs() <= cells.2 + 1e-9
    };
    let pass = tp1_min >= tp1_corner_value - 1e-9
        && tp2_min >= tp2_corner_value - 1e-9
        && near(tp1_arg, tp1_corner, (cell(0.0, n), cell(root, n), cell(root, n)))
        && near(tp2_arg, tp2_corner, (cell(root, n), cell(root, n), cell(root, n)));
    Ok(TpMinimaReport {
        tp1_sampled_min: tp1_min,
        tp1_argmin: tp1_arg,
        tp1_corner_value,
        tp1_corner,
        tp2_sampled_min: tp2_min,
        tp2_argmin: tp2_arg,
        tp2_corner_value,
        tp2_corner,
        pass,
    })
}

#[derive(Debug, Clone)]
pub struct StableClassCertificate {
    pub lattice_points: Vec<Vec<i64>>,
    /// The witnessing degree-1 interval (birth, death) of the lattice points.
    pub witness: (f64, f64),
    /// (death − birth) − √m: the guaranteed persistence surviving any
    /// one-point-per-unit-cube perturbation.
    pub size: f64,
}

/// Certificate that a lattice subset carries a degree-1 class robust to
/// moving each point anywhere within its own unit cube: if the longest
/// Čech degree-1 interval has length L > √m, any such perturbation keeps a
/// class of persistence at least L − √m. Sufficient condition only.
pub fn stable_class_certificate(
    lattice_points: &[Vec<i64>],
) -> Result<Option<StableClassCertificate>> {
    if lattice_points.len() > 60 {
        return Err(Error::BudgetExceeded { needed: lattice_points.len() as u64, budget: 60 });
    }
    let m = lattice_points.first().map(|p| p.len()).unwrap_or(0);
    if !(2..=3).contains(&m) {
        return Err(Error::InvalidInput("lattice points must live in dimension 2 or 3".into()));
    }
    let pc = PointCloud::new(
        lattice_points.iter().map(|p| p.iter().map(|&c| c as f64).collect()).collect(),
    )?;
    if pc.len() < 3 {
        return Ok(None);
    }
    let f = cech_filtration(&pc, 2, pc.diameter())?;
    let bc = persistent_homology(&f, true, false)?;
    let longest = bc
        .finite_in_degree(1)
        .into_iter()
        .max_by(|a, b| a.length().partial_cmp(&b.length()).unwrap())
        .cloned();
    let Some(iv) = longest else { return Ok(None) };
    let slack = iv.length() - (m as f64).sqrt();
    if slack <= 0.0 {
        return Ok(None);
    }
    Ok(Some(StableClassCertificate {
        lattice_points: lattice_points.to_vec(),
        witness: (iv.birth, iv.death.unwrap()),
        size: slack,
    }))
}

#[derive(Debug, Clone)]
pub struct XiResult {
    pub size: usize,
    /// Lexicographically smallest largest surviving subset.
    pub witness: Vec<(i64, i64)>,
    pub exact: bool,
}

/// Largest subset of the N×N integer grid none of whose point triples forms
/// an acute triangle with persistence above `threshold` (default √m + 1).
///
/// Exhaustive (exact) for N ≤ 4; randomized pruning beyond that. Because
/// the triangle disqualifier is a sufficient condition for a stable class,
/// the result is an upper-bound proxy under that relaxation.
pub fn xi_search(n: u32, m: u32, threshold: Option<f64>) -> Result<XiResult> {
    if n == 0 {
        return Err(Error::InvalidInput("N must be positive".into()));
    }
    if m != 2 {
        return Err(Error::InvalidInput("only m = 2 is implemented".into()));
    }
    let threshold = threshold.unwrap_or((m as f64).sqrt() + 1.0);
    let grid: Vec<(i64, i64)> =
        (1..=n as i64).flat_map(|x| (1..=n as i64).map(move |y| (x, y))).collect();
    let persistence_over = |a: (i64, i64), b: (i64, i64), c: (i64, i64)| -> bool {
        let pa = [a.0 as f64, a.1 as f64];
        let pb = [b.0 as f64, b.1 as f64];
        let pc = [c.0 as f64, c.1 as f64];
        match triangle_persistence(&pa, &pb, &pc) {
            Ok(Some((birth, death))) => death - birth > threshold,
            _ => false,
        }
    };

    if n <= 4 {
        let g = grid.len();
        let mut bad_triples: Vec<u32> = Vec::new();
        for i in 0..g {
            for j in i + 1..g {
                for k in j + 1..g {
                    if persistence_over(grid[i], grid[j], grid[k]) {
                        bad_triples.push(1 << i | 1 << j | 1 << k);
                    }
                }
            }
        }
        let mut best_size = 0;
        let mut best_mask: u32 = 0;
        for mask in 0..(1u64 << g) as u32 {
            let size = mask.count_ones() as usize;
            if size < best_size {
                continue;
            }
            if bad_triples.iter().any(|&t| mask & t == t) {
                continue;
            }
            // ties resolve to the lexicographically smallest witness, which
            // is the lowest mask since the grid is lexicographically ordered
            if size > best_size || (size == best_size && mask < best_mask) {
                best_size = size;
                best_mask = mask;
            }
        }
        let witness =
            (0..g).filter(|&i| best_mask & (1 << i) != 0).map(|i| grid[i]).collect();
        return Ok(XiResult { size: best_size, witness, exact: true });
    }

    // randomized pruning: repeatedly delete a random participant of a
    // violating triple until none remain; keep the best over restarts
    let mut best: Option<Vec<(i64, i64)>> = None;
    for restart in 0..8u64 {
        let mut rng = SplitMix64::stream(restart, "xi_search");
        let mut pts = grid.clone();
        'prune: loop {
            for i in 0..pts.len() {
                for j in i + 1..pts.len() {
                    for k in j + 1..pts.len() {
                        if persistence_over(pts[i], pts[j], pts[k]) {
                            let victims = [i, j, k];
                            let v = victims[rng.next_below(3) as usize];
                            pts.remove(v);
                            continue 'prune;
                        }
                    }
                }
            }
            break;
        }
        if best.as_ref().map(|b| pts.len() > b.len()).unwrap_or(true) {
            best = Some(pts);
        }
    }
    let witness = best.unwrap();
    Ok(XiResult { size: witness.len(), witness, exact: false })
}
