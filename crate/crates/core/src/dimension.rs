//! Interval summary statistics (E_α^i, tail counts, box counts) and the
//! box / PH / MST dimension estimators, plus the tail-exponent pair used to
//! relate sum and count growth rates.

use crate::error::{Error, Result};
use crate::filtration::{alpha_filtration_2d, cech_filtration, rips_filtration, ComplexKind};
use crate::generators::{generate, Generated, GeneratorSpec};
use crate::metric::{distance_matrix, FiniteMetricSpace, PointCloud};
use crate::persistence::{persistent_homology, Barcode};
use std::collections::HashSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Box,
    Ph,
    Mst,
    PhComplexity,
}

#[derive(Debug, Clone)]
pub struct DimensionEstimate {
    pub estimate: f64,
    pub method: Method,
    pub degree: Option<usize>,
    /// Per-point fit data: (scale or α, statistic, derived value).
    pub diagnostics: Vec<(f64, f64, f64)>,
    /// The β-window (or scale window) actually used by the fit.
    pub window: (f64, f64),
    pub degenerate: bool,
}

/// Least-squares slope of ys against xs, with its standard error.
pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> Result<(f64, f64)> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::InvalidInput("need at least 2 points to fit a slope".into()));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx < 1e-300 {
        return Err(Error::Degenerate("all x values coincide".into()));
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 =
        xs.iter().zip(ys).map(|(x, y)| (y - slope * x - intercept).powi(2)).sum();
    let stderr = if xs.len() > 2 {
        (ss_res / (n - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    Ok((slope, stderr))
}

/// The β-window over which the power-law inversion d = α/(1−β) is trusted.
pub const BETA_WINDOW: (f64, f64) = (0.2, 0.8);

/// Average d = α/(1−β(α)) over the α whose β lies in [`BETA_WINDOW`].
/// Falls back to the α with β closest to ½ when the window is empty.
pub fn invert_beta_curve(curve: &[(f64, f64)]) -> (f64, (f64, f64)) {
    let in_window: Vec<f64> = curve
        .iter()
        .filter(|&&(_, b)| b >= BETA_WINDOW.0 && b <= BETA_WINDOW.1)
        .map(|&(a, b)| a / (1.0 - b))
        .collect();
    if !in_window.is_empty() {
        return (in_window.iter().sum::<f64>() / in_window.len() as f64, BETA_WINDOW);
    }
    let best = curve
        .iter()
        .filter(|&&(_, b)| b < 1.0)
        .min_by(|a, b| (a.1 - 0.5).abs().partial_cmp(&(b.1 - 0.5).abs()).unwrap());
    match best {
        Some(&(a, b)) => (a / (1.0 - b), BETA_WINDOW),
        None => (0.0, BETA_WINDOW),
    }
}

/// E_α^i(x) = Σ (d−b)^α over the finite degree-i intervals.
pub fn e_alpha(b: &Barcode, degree: usize, alpha: f64) -> f64 {
    b.finite_in_degree(degree).iter().map(|iv| iv.length().powf(alpha)).sum()
}

/// |I_{i,ε}|: the number of degree-i intervals of length strictly greater
/// than ε (infinite intervals included).
pub fn interval_count_tail(b: &Barcode, degree: usize, eps: f64) -> usize {
    b.count_longer_than(degree, eps)
}

/// Occupied cells of the axis-aligned grid of width δ anchored at the
/// origin. Cells are half-open [kδ, (k+1)δ), so every point lands in
/// exactly one cell.
pub fn box_count_grid(pc: &PointCloud, delta: f64) -> Result<usize> {
    if delta <= 0.0 {
        return Err(Error::InvalidInput("delta must be positive".into()));
    }
    let mut cells: HashSet<Vec<i64>> = HashSet::new();
    for p in pc.points() {
        cells.insert(p.iter().map(|&x| (x / delta).floor() as i64).collect());
    }
    Ok(cells.len())
}

/// Greedy maximal collection of pairwise disjoint closed δ-balls with
/// centers in the space. Balls are subsets of the finite space itself:
/// two balls are disjoint when no point lies within δ of both centers.
pub fn ball_packing_count(fms: &FiniteMetricSpace, delta: f64) -> Result<usize> {
    if delta <= 0.0 {
        return Err(Error::InvalidInput("delta must be positive".into()));
    }
    let n = fms.len();
    let mut covered = vec![false; n];
    let mut count = 0;
    for c in 0..n {
        let ball: Vec<usize> = (0..n).filter(|&w| fms.dist(c, w) <= delta).collect();
        if ball.iter().any(|&w| covered[w]) {
            continue;
        }
        for &w in &ball {
            covered[w] = true;
        }
        count += 1;
    }
    Ok(count)
}

/// Box dimension by regression of log N_δ against log(1/δ) over the given
/// scales (grid counting).
pub fn estimate_box_dimension(pc: &PointCloud, deltas: &[f64]) -> Result<DimensionEstimate> {
    if deltas.len() < 3 {
        return Err(Error::InvalidInput("need at least 3 scales".into()));
    }
    let (lo, hi) = deltas
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), &d| (lo.min(d), hi.max(d)));
    if lo <= 0.0 || hi / lo < 4.0 {
        return Err(Error::InvalidInput("scales must span at least 2 octaves".into()));
    }
    let mut xs = Vec::with_capacity(deltas.len());
    let mut ys = Vec::with_capacity(deltas.len());
    let mut diagnostics = Vec::with_capacity(deltas.len());
    for &d in deltas {
        let c = box_count_grid(pc, d)?;
        xs.push((1.0 / d).ln());
        ys.push((c as f64).ln());
        diagnostics.push((d, c as f64, 0.0));
    }
    let (slope, _) = least_squares_slope(&xs, &ys)?;
    for entry in &mut diagnostics {
        entry.2 = slope;
    }
    Ok(DimensionEstimate {
        estimate: slope,
        method: Method::Box,
        degree: None,
        diagnostics,
        window: (lo, hi),
        degenerate: false,
    })
}

/// PH_i dimension from the growth of E_α^i across sample sizes, with the
/// same β-inversion as the MST estimator.
pub fn estimate_ph_dimension(
    spec: &GeneratorSpec,
    degree: usize,
    kind: ComplexKind,
    sizes: &[usize],
    alpha_grid: &[f64],
) -> Result<DimensionEstimate> {
    if sizes.len() < 4 || sizes.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidInput("need at least 4 strictly increasing sizes".into()));
    }
    let mut barcodes = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let mut s = spec.clone();
        s.n = n;
        let f = match (generate(&s)?, kind) {
            (Generated::Cloud(pc), ComplexKind::Alpha2d) => alpha_filtration_2d(&pc)?,
            (Generated::Cloud(pc), ComplexKind::Cech) => {
                let scale = pc.diameter();
                cech_filtration(&pc, degree + 1, scale)?
            }
            (Generated::Cloud(pc), ComplexKind::Rips) => {
                let fms = distance_matrix(&pc);
                let scale = pc.diameter();
                rips_filtration(&fms, degree + 1, scale)?
            }
            (Generated::Metric(m), ComplexKind::Rips) => {
                let scale = (0..m.len())
                    .flat_map(|i| (i + 1..m.len()).map(move |j| (i, j)))
                    .map(|(i, j)| m.dist(i, j))
                    .fold(0.0f64, f64::max);
                rips_filtration(&m, degree + 1, scale)?
            }
            (Generated::Metric(_), _) => {
                return Err(Error::InvalidInput(
                    "abstract metric spaces only support the rips complex".into(),
                ))
            }
        };
        barcodes.push(persistent_homology(&f, true, false)?);
    }
    if barcodes.iter().all(|b| b.finite_in_degree(degree).is_empty()) {
        return Ok(DimensionEstimate {
            estimate: 0.0,
            method: Method::Ph,
            degree: Some(degree),
            diagnostics: Vec::new(),
            window: BETA_WINDOW,
            degenerate: true,
        });
    }
    let log_n: Vec<f64> = sizes.iter().map(|&n| (n as f64).ln()).collect();
    let mut curve = Vec::new();
    for &alpha in alpha_grid {
        let es: Vec<f64> = barcodes.iter().map(|b| e_alpha(b, degree, alpha)).collect();
        if es.iter().any(|&e| e <= 0.0) {
            continue;
        }
        let log_e: Vec<f64> = es.iter().map(|e| e.ln()).collect();
        let (beta, _) = least_squares_slope(&log_n, &log_e)?;
        curve.push((alpha, beta));
    }
    let (estimate, window) = invert_beta_curve(&curve);
    let diagnostics = curve
        .iter()
        .map(|&(a, b)| (a, b, if b < 1.0 { a / (1.0 - b) } else { 0.0 }))
        .collect();
    Ok(DimensionEstimate {
        estimate,
        method: Method::Ph,
        degree: Some(degree),
        diagnostics,
        window,
        degenerate: false,
    })
}

#[derive(Debug, Clone)]
pub struct ArcsReport {
    /// Per size: (n, |PH_1| count, E_1^1).
    pub per_size: Vec<(usize, usize, f64)>,
    /// Log-log slope of the PH_1 count against n.
    pub count_slope: f64,
    /// max/min ratio of E_1^1 across the sizes (boundedness proxy).
    pub e11_ratio: f64,
}

/// The two-arcs experiment: degree-1 interval counts grow superlinearly in
/// n while E_1^1 stays bounded.
pub fn arcs_experiment(sizes: &[usize]) -> Result<ArcsReport> {
    if sizes.iter().any(|&n| n > 400) {
        return Err(Error::BudgetExceeded {
            needed: *sizes.iter().max().unwrap() as u64,
            budget: 400,
        });
    }
    if sizes.len() < 2 {
        return Err(Error::InvalidInput("need at least 2 sizes".into()));
    }
    let mut per_size = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let pc = crate::generators::gen_arcs(n)?;
        let f = cech_filtration(&pc, 2, pc.diameter())?;
        let bc = persistent_homology(&f, true, false)?;
        let count = bc.finite_in_degree(1).len();
        per_size.push((n, count, e_alpha(&bc, 1, 1.0)));
    }
    let xs: Vec<f64> = per_size.iter().map(|&(n, _, _)| (n as f64).ln()).collect();
    let ys: Vec<f64> = per_size.iter().map(|&(_, c, _)| (c.max(1) as f64).ln()).collect();
    let (count_slope, _) = least_squares_slope(&xs, &ys)?;
    let (e_min, e_max) = per_size
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), &(_, _, e)| (lo.min(e), hi.max(e)));
    Ok(ArcsReport { per_size, count_slope, e11_ratio: e_max / e_min })
}

#[derive(Debug, Clone, Copy)]
pub struct TailExponents {
    pub sum_exponent: f64,
    pub count_exponent: f64,
    pub degenerate: bool,
}

/// Estimate the critical sum exponent inf{α : Σ y^α < ∞} and the count
/// exponent of F(ε) = |{y > ε}| from a finite multiset of positive lengths.
///
/// Both are read off a shared dyadic scale grid. The count exponent is the
/// regression slope of log F(ε) against log(1/ε). The sum exponent is found
/// by bisecting α until the growth of log Σ_{y>ε} y^α matches the growth of
/// a pure logarithm on the same grid — the signature of the critical α,
/// where the partial sums gain a constant per octave.
pub fn tail_exponent_pair(lengths: &[f64]) -> Result<TailExponents> {
    if lengths.iter().any(|&y| !(y > 0.0) || !y.is_finite()) {
        return Err(Error::InvalidInput("lengths must be positive and finite".into()));
    }
    let degenerate = lengths.len() < 10;
    if lengths.is_empty() {
        return Ok(TailExponents { sum_exponent: 0.0, count_exponent: 0.0, degenerate: true });
    }
    let max_y = lengths.iter().cloned().fold(0.0f64, f64::max);
    let min_y = lengths.iter().cloned().fold(f64::INFINITY, f64::min);
    // start one octave below the largest length: the first octave's counts
    // carry the worst finite-size distortion
    let j_lo = (-max_y.log2()).floor() as i32 + 2;
    let j_hi = ((-min_y.log2()).ceil() as i32).max(j_lo + 3);
    let grid: Vec<i32> = (j_lo..=j_hi).collect();
    let xs: Vec<f64> = grid.iter().map(|&j| j as f64 * std::f64::consts::LN_2).collect();

    let counts: Vec<f64> = grid
        .iter()
        .map(|&j| {
            let eps = 2f64.powi(-j);
            lengths.iter().filter(|&&y| y > eps).count() as f64
        })
        .collect();
    let log_counts: Vec<f64> = counts.iter().map(|&c| c.max(1.0).ln()).collect();
    let (count_exponent, _) = least_squares_slope(&xs, &log_counts)?;

    // the log-growth signature: at the critical α the partial sums gain a
    // constant per octave, so they track the octave index j + log2(max)
    let log_steps: Vec<f64> =
        grid.iter().map(|&j| (j as f64 + max_y.log2()).ln()).collect();
    let (tau, _) = least_squares_slope(&xs, &log_steps)?;
    let slope_at = |alpha: f64| -> f64 {
        let ys: Vec<f64> = grid
            .iter()
            .map(|&j| {
                let eps = 2f64.powi(-j);
                lengths.iter().filter(|&&y| y > eps).map(|&y| y.powf(alpha)).sum::<f64>()
            })
            .map(|g| g.max(1e-300).ln())
            .collect();
        least_squares_slope(&xs, &ys).map(|(s, _)| s).unwrap_or(0.0)
    };
    let (mut lo, mut hi) = (0.0f64, 20.0f64);
    if slope_at(lo) - tau <= 0.0 {
        hi = lo;
    } else if slope_at(hi) - tau >= 0.0 {
        lo = hi;
    } else {
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if slope_at(mid) - tau > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    let sum_exponent = 0.5 * (lo + hi);
    Ok(TailExponents { sum_exponent, count_exponent, degenerate })
}

/// Upper bound on the number of i-simplices of a Delaunay triangulation
/// with n vertices: C(n, i+1).
pub fn delaunay_count_bound(n: u64, i: u64, _m: u64) -> Result<u64> {
    binomial(n, i + 1)
}

fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for j in 0..k {
        acc = acc
            .checked_mul(n - j)
            .ok_or(Error::Overflow("binomial coefficient exceeds u64"))?
            / (j + 1);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filtration::ComplexKind;
    use crate::persistence::Interval;

    fn bc_of(lengths: &[f64]) -> Barcode {
        Barcode {
            intervals: lengths
                .iter()
                .map(|&l| Interval { degree: 1, birth: 0.0, death: Some(l) })
                .collect(),
            reduced: true,
            kind: ComplexKind::Rips,
        }
    }

    #[test]
    fn e_alpha_examples() {
        let b = bc_of(&[0.5, 0.25]);
        assert!((e_alpha(&b, 1, 1.0) - 0.75).abs() < 1e-12);
        assert!((e_alpha(&b, 1, 2.0) - 0.3125).abs() < 1e-12);
        assert_eq!(e_alpha(&b, 0, 1.0), 0.0);
    }

    #[test]
    fn tail_count_examples() {
        let b = bc_of(&[0.5, 0.25]);
        assert_eq!(interval_count_tail(&b, 1, 0.3), 1);
        assert_eq!(interval_count_tail(&b, 1, 0.0), 2);
        assert_eq!(interval_count_tail(&bc_of(&[0.5]), 1, 0.5), 0);
    }

    #[test]
    fn dyadic_bucket_sandwich() {
        let lengths = [0.9, 0.6, 0.3, 0.26, 0.12, 0.07, 0.01];
        let b = bc_of(&lengths);
        for &alpha in &[0.5, 1.0, 2.0] {
            let e = e_alpha(&b, 1, alpha);
            let mut lo_sum = 0.0;
            let mut hi_sum = 0.0;
            for k in -2..30 {
                let c = b.dyadic_bucket_count(1, k) as f64;
                lo_sum += c * 2f64.powi(-k - 1).powf(alpha);
                hi_sum += c * 2f64.powi(-k).powf(alpha);
            }
            assert!(lo_sum <= e + 1e-12 && e <= hi_sum + 1e-12);
        }
    }

    #[test]
    fn grid_count_segment() {
        let pts: Vec<Vec<f64>> = (0..1000).map(|i| vec![i as f64 / 999.0]).collect();
        let pc = PointCloud::new(pts).unwrap();
        // the point at exactly 1.0 falls into the 9th half-open cell
        assert_eq!(box_count_grid(&pc, 0.125).unwrap(), 9);
    }

    #[test]
    fn grid_count_single_point() {
        let pc = PointCloud::new(vec![vec![0.3, 0.7]]).unwrap();
        assert_eq!(box_count_grid(&pc, 0.1).unwrap(), 1);
        assert_eq!(box_count_grid(&pc, 10.0).unwrap(), 1);
    }

    #[test]
    fn grid_count_refinement_bounds() {
        let mut rng = crate::rng::SplitMix64::new(88);
        let pts: Vec<Vec<f64>> = (0..500).map(|_| vec![rng.next_f64(), rng.next_f64()]).collect();
        let pc = PointCloud::new(pts).unwrap();
        for &d in &[0.5, 0.25, 0.125] {
            let coarse = box_count_grid(&pc, d).unwrap();
            let fine = box_count_grid(&pc, d / 2.0).unwrap();
            assert!(coarse <= fine);
            assert!(fine <= 4 * coarse);
        }
    }

    #[test]
    fn packing_single_point() {
        let fms = distance_matrix(&PointCloud::new(vec![vec![0.0]]).unwrap());
        assert_eq!(ball_packing_count(&fms, 0.5).unwrap(), 1);
    }

    #[test]
    fn packing_bipartite_union() {
        let fms = crate::generators::gen_bipartite_union(1).unwrap();
        assert_eq!(ball_packing_count(&fms, 0.3).unwrap(), 3);
    }

    #[test]
    fn box_dimension_segment() {
        let pts: Vec<Vec<f64>> = (0..10_000).map(|i| vec![i as f64 / 9999.0, 0.0]).collect();
        let pc = PointCloud::new(pts).unwrap();
        let deltas: Vec<f64> = (3..=7).map(|k| 2f64.powi(-k)).collect();
        let est = estimate_box_dimension(&pc, &deltas).unwrap();
        assert!((est.estimate - 1.0).abs() < 0.05, "estimate {}", est.estimate);
    }

    #[test]
    fn box_dimension_rejects_narrow_window() {
        let pc = PointCloud::new(vec![vec![0.0], vec![1.0], vec![0.5]]).unwrap();
        assert!(estimate_box_dimension(&pc, &[0.5, 0.4, 0.3]).is_err());
    }

    #[test]
    fn ph_dimension_segment_is_degenerate_zero() {
        let spec = GeneratorSpec {
            family: crate::generators::Family::Segment,
            n: 0,
            seed: 3,
            params: Default::default(),
        };
        let est = estimate_ph_dimension(
            &spec,
            1,
            ComplexKind::Rips,
            &[20, 40, 80, 160],
            &[0.5, 1.0],
        )
        .unwrap();
        assert_eq!(est.estimate, 0.0);
        assert!(est.degenerate);
    }

    #[test]
    fn tail_pair_quadratic_family() {
        let mut lengths = Vec::new();
        for k in 0..=10u32 {
            let y = 2f64.powi(-(k as i32));
            for _ in 0..4usize.pow(k) {
                lengths.push(y);
            }
        }
        let t = tail_exponent_pair(&lengths).unwrap();
        assert!((t.count_exponent - 2.0).abs() < 0.05, "count {}", t.count_exponent);
        assert!((t.sum_exponent - 2.0).abs() < 0.05, "sum {}", t.sum_exponent);
        assert!(!t.degenerate);
    }

    #[test]
    fn tail_pair_linear_family() {
        let mut lengths = Vec::new();
        for k in 0..=10u32 {
            let y = 2f64.powi(-(k as i32));
            for _ in 0..2usize.pow(k) {
                lengths.push(y);
            }
        }
        let t = tail_exponent_pair(&lengths).unwrap();
        assert!((t.count_exponent - 1.0).abs() < 0.05, "count {}", t.count_exponent);
        assert!((t.sum_exponent - 1.0).abs() < 0.05, "sum {}", t.sum_exponent);
    }

    #[test]
    fn tail_pair_constant_multiset() {
        let lengths = vec![0.5; 100];
        let t = tail_exponent_pair(&lengths).unwrap();
        assert!(t.count_exponent.abs() < 0.05, "count {}", t.count_exponent);
    }

    #[test]
    fn tail_pair_degenerate_flag() {
        let t = tail_exponent_pair(&[0.5, 0.25, 0.125]).unwrap();
        assert!(t.degenerate);
    }

    #[test]
    fn delaunay_bound_values() {
        assert_eq!(delaunay_count_bound(10, 1, 3).unwrap(), 45);
        assert_eq!(delaunay_count_bound(5, 1, 3).unwrap(), 10);
        assert_eq!(delaunay_count_bound(2, 1, 2).unwrap(), 1);
        assert!(delaunay_count_bound(10_000_000_000, 4, 9).is_err());
    }

    #[test]
    fn arcs_smoke() {
        let report = arcs_experiment(&[4, 8]).unwrap();
        assert_eq!(report.per_size.len(), 2);
        assert!(arcs_experiment(&[500]).is_err());
    }
}
