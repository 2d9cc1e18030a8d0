//! Minimal spanning trees, the E_α^0 edge-power sums, the MST dimension
//! estimator, and the MST ↔ degree-0 barcode correspondence check.

use crate::dimension::{invert_beta_curve, least_squares_slope, DimensionEstimate, Method};
use crate::error::{Error, Result};
use crate::filtration::{cech_filtration, rips_filtration, ComplexKind};
use crate::generators::{generate, Generated, GeneratorSpec};
use crate::metric::{distance_matrix, FiniteMetricSpace, PointCloud};
use crate::persistence::persistent_homology;

#[derive(Debug, Clone)]
pub struct SpanningTree {
    /// Edges as (j, k, length) with j < k.
    pub edges: Vec<(usize, usize, f64)>,
    pub n: usize,
}

impl SpanningTree {
    pub fn total_length(&self) -> f64 {
        self.edges.iter().map(|e| e.2).sum()
    }

    pub fn lengths(&self) -> Vec<f64> {
        let mut l: Vec<f64> = self.edges.iter().map(|e| e.2).collect();
        l.sort_by(f64::total_cmp);
        l
    }
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), rank: vec![0; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Kruskal's algorithm. Equal-length edges are taken in lexicographic index
/// order, so the tree is deterministic even with ties.
pub fn minimum_spanning_tree(fms: &FiniteMetricSpace) -> SpanningTree {
    let n = fms.len();
    let mut edges: Vec<(usize, usize, f64)> = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j, fms.dist(i, j)));
        }
    }
    edges.sort_by(|a, b| a.2.partial_cmp(&b.2).unwrap().then(a.0.cmp(&b.0)).then(a.1.cmp(&b.1)));
    let mut uf = UnionFind::new(n);
    let mut tree = Vec::with_capacity(n.saturating_sub(1));
    for (i, j, d) in edges {
        if uf.union(i, j) {
            tree.push((i, j, d));
            if tree.len() == n - 1 {
                break;
            }
        }
    }
    SpanningTree { edges: tree, n }
}

/// E_α^0(y) = ½ Σ_{e ∈ T(y)} |e|^α. The ½ factor is part of the definition.
pub fn e_alpha_mst(t: &SpanningTree, alpha: f64) -> f64 {
    0.5 * t.edges.iter().map(|e| e.2.powf(alpha)).sum::<f64>()
}

#[derive(Debug, Clone)]
pub struct CorrespondenceReport {
    pub kind: ComplexKind,
    pub pass: bool,
    pub max_abs_diff: f64,
    /// Mismatched (interval length, edge length) pairs, if any.
    pub mismatches: Vec<(f64, f64)>,
}

/// Check the bijection between finite reduced degree-0 intervals and MST
/// edges: interval lengths equal edge lengths for Rips and half edge lengths
/// for Čech.
pub fn verify_mst_ph0_correspondence(pc: &PointCloud, kind: ComplexKind) -> Result<CorrespondenceReport> {
    let fms = distance_matrix(pc);
    let tree = minimum_spanning_tree(&fms);
    let scale_limit = pc.diameter() + 1.0;
    let f = match kind {
        ComplexKind::Rips => rips_filtration(&fms, 1, scale_limit)?,
        ComplexKind::Cech => cech_filtration(pc, 1, scale_limit)?,
        ComplexKind::Alpha2d => {
            return Err(Error::InvalidInput(
                "correspondence check supports rips and cech only".into(),
            ))
        }
    };
    let barcode = persistent_homology(&f, true, false)?;
    let mut interval_lengths: Vec<f64> =
        barcode.finite_in_degree(0).iter().map(|iv| iv.length()).collect();
    interval_lengths.sort_by(f64::total_cmp);
    let factor = match kind {
        ComplexKind::Rips => 1.0,
        _ => 0.5,
    };
    let edge_lengths: Vec<f64> = tree.lengths().iter().map(|l| l * factor).collect();

    let mut mismatches = Vec::new();
    let mut max_abs_diff: f64 = 0.0;
    if interval_lengths.len() != edge_lengths.len() {
        mismatches.push((interval_lengths.len() as f64, edge_lengths.len() as f64));
        max_abs_diff = f64::INFINITY;
    } else {
        for (&iv, &e) in interval_lengths.iter().zip(&edge_lengths) {
            let d = (iv - e).abs();
            max_abs_diff = max_abs_diff.max(d);
            if d > 1e-9 {
                mismatches.push((iv, e));
            }
        }
    }
    Ok(CorrespondenceReport { kind, pass: mismatches.is_empty(), max_abs_diff, mismatches })
}

/// Fit dim_MST from the growth of E_α^0 across sample sizes: per α, the
/// slope β(α) of log E_α^0 vs log n, inverted through d = α/(1−β) and
/// averaged over the α whose β lands in [0.2, 0.8].
pub fn estimate_mst_dimension(
    spec: &GeneratorSpec,
    sizes: &[usize],
    alpha_grid: &[f64],
) -> Result<DimensionEstimate> {
    if sizes.len() < 4 || sizes.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidInput("need at least 4 strictly increasing sizes".into()));
    }
    let log_n: Vec<f64> = sizes.iter().map(|&n| (n as f64).ln()).collect();
    // per size: the MST edge lengths, reused across the alpha grid
    let mut trees = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let mut s = spec.clone();
        s.n = n;
        let fms = match generate(&s)? {
            Generated::Cloud(pc) => distance_matrix(&pc),
            Generated::Metric(m) => m,
        };
        trees.push(minimum_spanning_tree(&fms));
    }
    let mut curve = Vec::with_capacity(alpha_grid.len());
    for &alpha in alpha_grid {
        let log_e: Vec<f64> = trees.iter().map(|t| e_alpha_mst(t, alpha).max(1e-300).ln()).collect();
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
        method: Method::Mst,
        degree: Some(0),
        diagnostics,
        window,
        degenerate: false,
    })
}
