//! Point clouds, finite metric spaces, Hausdorff distance, and greedy
//! epsilon-nets.

use crate::error::{Error, Result};

/// Absolute tolerance for equality comparisons on distances.
pub const TOL: f64 = 1e-9;

/// A finite list of points in R^m.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    points: Vec<Vec<f64>>,
    ambient_dim: usize,
}

impl PointCloud {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInput("point cloud must be nonempty".into()));
        }
        let ambient_dim = points[0].len();
        if ambient_dim == 0 {
            return Err(Error::InvalidInput("points must have at least one coordinate".into()));
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != ambient_dim {
                return Err(Error::InvalidInput(format!(
                    "point {} has {} coordinates, expected {}",
                    i,
                    p.len(),
                    ambient_dim
                )));
            }
            if p.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidInput(format!("point {} has a non-finite coordinate", i)));
            }
        }
        Ok(PointCloud { points, ambient_dim })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i]
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    /// Largest pairwise distance.
    pub fn diameter(&self) -> f64 {
        let mut d = 0.0f64;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                d = d.max(euclidean(self.point(i), self.point(j)));
            }
        }
        d
    }

    /// Subcloud given by a list of indices.
    pub fn subset(&self, indices: &[usize]) -> Result<PointCloud> {
        PointCloud::new(indices.iter().map(|&i| self.points[i].clone()).collect())
    }
}

pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// A symmetric nonnegative distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    n: usize,
    dist: Vec<f64>, // row-major n*n
    validated: bool,
}

impl FiniteMetricSpace {
    /// Build from a full square matrix. Does not validate; call
    /// [`validate_metric`] for a report.
    pub fn from_matrix(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NonSquareMatrix { rows: n, row: i, cols: r.len() });
            }
        }
        let dist = rows.into_iter().flatten().collect();
        Ok(FiniteMetricSpace { n, dist, validated: false })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    pub fn diameter(&self) -> f64 {
        self.dist.iter().cloned().fold(0.0, f64::max)
    }

    /// Restriction to a subset of the points.
    pub fn restrict(&self, indices: &[usize]) -> FiniteMetricSpace {
        let k = indices.len();
        let mut dist = vec![0.0; k * k];
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                dist[a * k + b] = self.dist(i, j);
            }
        }
        FiniteMetricSpace { n: k, dist, validated: self.validated }
    }

    pub(crate) fn new_unchecked(n: usize, dist: Vec<f64>, validated: bool) -> Self {
        debug_assert_eq!(dist.len(), n * n);
        FiniteMetricSpace { n, dist, validated }
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.dist[i * self.n..(i + 1) * self.n].to_vec()).collect()
    }
}

/// Euclidean distance matrix of a point cloud. The result carries the
/// validated flag: it is a metric by construction.
pub fn distance_matrix(pc: &PointCloud) -> FiniteMetricSpace {
    let n = pc.len();
    let mut dist = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let d = euclidean(pc.point(i), pc.point(j));
            dist[i * n + j] = d;
            dist[j * n + i] = d;
        }
    }
    FiniteMetricSpace::new_unchecked(n, dist, true)
}

/// One invariant violation found by [`validate_metric`].
#[derive(Debug, Clone, PartialEq)]
pub enum MetricViolation {
    NonZeroDiagonal { index: usize, value: f64 },
    Asymmetry { i: usize, j: usize },
    Negative { i: usize, j: usize, value: f64 },
    TriangleInequality { i: usize, j: usize, k: usize },
}

/// Validation report. `warnings` lists zero off-diagonal distances
/// (duplicate points), which do not fail validation.
#[derive(Debug, Clone, Default)]
pub struct MetricReport {
    pub violations: Vec<MetricViolation>,
    pub warnings: Vec<(usize, usize)>,
}

impl MetricReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check the metric axioms, listing every violation with indices. Sets the
/// validated flag on `fms` iff none are found.
pub fn validate_metric(fms: &mut FiniteMetricSpace, check_triangle: bool) -> MetricReport {
    let n = fms.n;
    let mut report = MetricReport::default();
    for i in 0..n {
        if fms.dist(i, i).abs() > TOL {
            report
                .violations
                .push(MetricViolation::NonZeroDiagonal { index: i, value: fms.dist(i, i) });
        }
        for j in i + 1..n {
            let d = fms.dist(i, j);
            if (d - fms.dist(j, i)).abs() > TOL {
                report.violations.push(MetricViolation::Asymmetry { i, j });
            }
            if d < -TOL {
                report.violations.push(MetricViolation::Negative { i, j, value: d });
            }
            if d.abs() <= TOL {
                report.warnings.push((i, j));
            }
        }
    }
    if check_triangle {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if fms.dist(i, k) > fms.dist(i, j) + fms.dist(j, k) + TOL {
                        report.violations.push(MetricViolation::TriangleInequality { i, j, k });
                    }
                }
            }
        }
    }
    fms.validated = report.passed();
    report
}

/// Symmetric max-min (Hausdorff) distance between two point clouds.
pub fn hausdorff_distance(a: &PointCloud, b: &PointCloud) -> Result<f64> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::DimensionMismatch(a.ambient_dim(), b.ambient_dim()));
    }
    let one_sided = |x: &PointCloud, y: &PointCloud| {
        x.points()
            .iter()
            .map(|p| {
                y.points()
                    .iter()
                    .map(|q| euclidean(p, q))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    Ok(one_sided(a, b).max(one_sided(b, a)))
}

/// Greedy maximal packing: a pass in input order keeps a point iff its
/// distance to every previously kept point exceeds eps/2 (disjoint closed
/// eps/4-balls). Every rejected point is within eps/2 of a kept one, so the
/// net is within Hausdorff distance eps/2 of the input.
pub fn epsilon_net(pc: &PointCloud, eps: f64) -> Result<Vec<usize>> {
    if eps <= 0.0 {
        return Err(Error::InvalidInput("epsilon must be positive".into()));
    }
    Ok(epsilon_net_metric(&distance_matrix(pc), eps))
}

/// Same greedy pass on an abstract distance matrix.
pub fn epsilon_net_metric(fms: &FiniteMetricSpace, eps: f64) -> Vec<usize> {
    let mut kept: Vec<usize> = Vec::new();
    for i in 0..fms.len() {
        if kept.iter().all(|&k| fms.dist(i, k) > eps / 2.0) {
            kept.push(i);
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pc(points: &[&[f64]]) -> PointCloud {
        PointCloud::new(points.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    #[test]
    fn distance_matrix_line() {
        let m = distance_matrix(&pc(&[&[0.0], &[1.0], &[3.0]]));
        assert_eq!(m.rows(), vec![vec![0.0, 1.0, 3.0], vec![1.0, 0.0, 2.0], vec![3.0, 2.0, 0.0]]);
        assert!(m.is_validated());
    }

    #[test]
    fn distance_matrix_345() {
        let m = distance_matrix(&pc(&[&[0.0, 0.0], &[3.0, 4.0]]));
        assert!((m.dist(0, 1) - 5.0).abs() < TOL);
    }

    #[test]
    fn distance_matrix_single_point() {
        let m = distance_matrix(&pc(&[&[2.0]]));
        assert_eq!(m.len(), 1);
        assert_eq!(m.dist(0, 0), 0.0);
    }

    #[test]
    fn validate_euclidean_passes() {
        let mut m = distance_matrix(&pc(&[&[0.0, 0.0], &[1.0, 0.0], &[0.3, 2.0]]));
        let report = validate_metric(&mut m, true);
        assert!(report.passed());
        assert!(m.is_validated());
    }

    #[test]
    fn validate_flags_asymmetry() {
        let mut m = FiniteMetricSpace::from_matrix(vec![vec![0.0, 1.0], vec![2.0, 0.0]]).unwrap();
        let report = validate_metric(&mut m, false);
        assert_eq!(report.violations, vec![MetricViolation::Asymmetry { i: 0, j: 1 }]);
        assert!(!m.is_validated());
    }

    #[test]
    fn validate_flags_triangle_violation() {
        let mut m = FiniteMetricSpace::from_matrix(vec![
            vec![0.0, 1.0, 5.0],
            vec![1.0, 0.0, 1.0],
            vec![5.0, 1.0, 0.0],
        ])
        .unwrap();
        let report = validate_metric(&mut m, true);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, MetricViolation::TriangleInequality { .. })));
    }

    #[test]
    fn non_square_rejected() {
        let err = FiniteMetricSpace::from_matrix(vec![vec![0.0, 1.0], vec![1.0]]).unwrap_err();
        assert!(matches!(err, Error::NonSquareMatrix { .. }));
    }

    #[test]
    fn duplicate_points_warn() {
        let mut m = distance_matrix(&pc(&[&[1.0], &[1.0]]));
        let report = validate_metric(&mut m, true);
        assert!(report.passed());
        assert_eq!(report.warnings, vec![(0, 1)]);
    }

    #[test]
    fn hausdorff_examples() {
        let a = pc(&[&[0.0]]);
        let b = pc(&[&[0.0], &[1.0]]);
        assert!((hausdorff_distance(&a, &b).unwrap() - 1.0).abs() < TOL);
        assert_eq!(hausdorff_distance(&a, &a).unwrap(), 0.0);
        let c = pc(&[&[0.0], &[1.0]]);
        let d = pc(&[&[0.1], &[0.9]]);
        assert!((hausdorff_distance(&c, &d).unwrap() - 0.1).abs() < TOL);
    }

    #[test]
    fn hausdorff_dim_mismatch() {
        let a = pc(&[&[0.0]]);
        let b = pc(&[&[0.0, 0.0]]);
        assert!(hausdorff_distance(&a, &b).is_err());
    }

    #[test]
    fn net_greedy_pass() {
        let cloud = pc(&[&[0.0], &[0.1], &[1.0]]);
        assert_eq!(epsilon_net(&cloud, 0.5).unwrap(), vec![0, 2]);
    }

    #[test]
    fn net_small_eps_keeps_everything() {
        let cloud = pc(&[&[0.0], &[1.0], &[2.5]]);
        assert_eq!(epsilon_net(&cloud, 0.5).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn net_single_point() {
        let cloud = pc(&[&[3.0, 4.0]]);
        assert_eq!(epsilon_net(&cloud, 10.0).unwrap(), vec![0]);
    }

    #[test]
    fn net_covers_within_half_eps() {
        let points: Vec<Vec<f64>> = (0..40)
            .map(|i| vec![(i as f64 * 0.37).sin(), (i as f64 * 0.71).cos()])
            .collect();
        let cloud = PointCloud::new(points).unwrap();
        for &eps in &[0.3, 0.7, 1.4] {
            let net = epsilon_net(&cloud, eps).unwrap();
            let net_cloud = cloud.subset(&net).unwrap();
            assert!(hausdorff_distance(&cloud, &net_cloud).unwrap() <= eps / 2.0);
        }
    }
}
