//! Rips, Čech, and planar alpha filtrations as explicit sorted simplex lists.

use crate::delaunay::{circumradius_2d, delaunay_2d};
use crate::error::{Error, Result};
use crate::meb::minimal_enclosing_ball_radius;
use crate::metric::{FiniteMetricSpace, PointCloud};

/// Default cap on the number of simplices a single construction may emit.
pub const DEFAULT_SIMPLEX_BUDGET: usize = 50_000_000;

/// Simplices of dimension above this are never built ([`FiltSimplex`] stores
/// at most 4 vertex indices).
pub const MAX_SIMPLEX_DIM: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplexKind {
    Rips,
    Cech,
    Alpha2d,
}

impl std::fmt::Display for ComplexKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ComplexKind::Rips => write!(f, "rips"),
            ComplexKind::Cech => write!(f, "cech"),
            ComplexKind::Alpha2d => write!(f, "alpha2d"),
        }
    }
}

impl std::str::FromStr for ComplexKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rips" => Ok(ComplexKind::Rips),
            "cech" => Ok(ComplexKind::Cech),
            "alpha2d" | "alpha" => Ok(ComplexKind::Alpha2d),
            other => Err(Error::InvalidInput(format!("unknown complex kind `{other}`"))),
        }
    }
}

/// One simplex in a filtration. Vertex indices occupy `verts[..=dim]`,
/// strictly increasing; the remainder is padding. Kept at 32 bytes so large
/// Čech/Rips complexes stay within memory at a few hundred points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiltSimplex {
    pub value: f64,
    pub verts: [u32; 4],
    pub dim: u8,
}

impl FiltSimplex {
    pub fn new(value: f64, vertices: &[u32]) -> Self {
        debug_assert!(!vertices.is_empty() && vertices.len() <= 4);
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        let mut verts = [0u32; 4];
        verts[..vertices.len()].copy_from_slice(vertices);
        FiltSimplex { value, verts, dim: (vertices.len() - 1) as u8 }
    }

    pub fn vertices(&self) -> &[u32] {
        &self.verts[..=self.dim as usize]
    }
}

#[derive(Debug, Clone)]
pub struct Filtration {
    pub simplices: Vec<FiltSimplex>,
    pub max_dim: usize,
    pub kind: ComplexKind,
    pub n_vertices: usize,
}

impl Filtration {
    /// Sort into filtration order: (value, dim, lexicographic vertices).
    /// Ties are fully broken, so downstream reduction is deterministic.
    fn finish(mut self) -> Self {
        self.simplices.sort_unstable_by(|a, b| {
            a.value
                .partial_cmp(&b.value)
                .unwrap()
                .then(a.dim.cmp(&b.dim))
                .then(a.verts.cmp(&b.verts))
        });
        self
    }

    /// Check the monotone-face invariant: every facet of every simplex has a
    /// value no larger than the simplex itself.
    pub fn validate_monotone(&self) -> Result<()> {
        use std::collections::HashMap;
        let mut value_of: HashMap<[u32; 4], f64> = HashMap::with_capacity(self.simplices.len());
        for s in &self.simplices {
            value_of.insert(s.verts, s.value);
        }
        for (idx, s) in self.simplices.iter().enumerate() {
            if s.dim == 0 {
                continue;
            }
            for facet in facets(s) {
                match value_of.get(&facet) {
                    Some(&fv) if fv <= s.value + 1e-12 => {}
                    _ => return Err(Error::NonMonotoneFiltration { index: idx }),
                }
            }
        }
        Ok(())
    }

    /// Debug dump: one simplex per line, `value,dim,v0 v1 ... vk`.
    pub fn dump(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        for s in &self.simplices {
            let verts: Vec<String> = s.vertices().iter().map(|v| v.to_string()).collect();
            writeln!(out, "{},{},{}", s.value, s.dim, verts.join(" ")).unwrap();
        }
        out
    }
}

/// The dim−1 faces of a simplex, as padded vertex arrays.
pub(crate) fn facets(s: &FiltSimplex) -> Vec<[u32; 4]> {
    let d = s.dim as usize;
    let mut out = Vec::with_capacity(d + 1);
    for skip in 0..=d {
        let mut f = [0u32; 4];
        let mut w = 0;
        for (r, &v) in s.vertices().iter().enumerate() {
            if r != skip {
                f[w] = v;
                w += 1;
            }
        }
        out.push(f);
    }
    out
}

pub fn rips_filtration(fms: &FiniteMetricSpace, max_dim: usize, max_scale: f64) -> Result<Filtration> {
    rips_filtration_with_budget(fms, max_dim, max_scale, DEFAULT_SIMPLEX_BUDGET)
}

/// Rips filtration: a simplex enters at its largest pairwise distance.
pub fn rips_filtration_with_budget(
    fms: &FiniteMetricSpace,
    max_dim: usize,
    max_scale: f64,
    budget: usize,
) -> Result<Filtration> {
    if max_scale <= 0.0 {
        return Err(Error::InvalidInput("max_scale must be positive".into()));
    }
    let max_dim = max_dim.min(MAX_SIMPLEX_DIM);
    let n = fms.len();
    let mut f = Filtration { simplices: Vec::new(), max_dim, kind: ComplexKind::Rips, n_vertices: n };
    let charge = |simplices: &Vec<FiltSimplex>| -> Result<()> {
        if simplices.len() > budget {
            Err(Error::BudgetExceeded { needed: simplices.len() as u64, budget: budget as u64 })
        } else {
            Ok(())
        }
    };

    for v in 0..n as u32 {
        f.simplices.push(FiltSimplex::new(0.0, &[v]));
    }
    if max_dim >= 1 {
        for i in 0..n {
            for j in i + 1..n {
                let d = fms.dist(i, j);
                if d <= max_scale {
                    f.simplices.push(FiltSimplex::new(d, &[i as u32, j as u32]));
                }
            }
        }
        charge(&f.simplices)?;
    }
    if max_dim >= 2 {
        for i in 0..n {
            for j in i + 1..n {
                let dij = fms.dist(i, j);
                if dij > max_scale {
                    continue;
                }
                for k in j + 1..n {
                    let v = dij.max(fms.dist(i, k)).max(fms.dist(j, k));
                    if v <= max_scale {
                        f.simplices.push(FiltSimplex::new(v, &[i as u32, j as u32, k as u32]));
                    }
                }
            }
            charge(&f.simplices)?;
        }
    }
    if max_dim >= 3 {
        for i in 0..n {
            for j in i + 1..n {
                let dij = fms.dist(i, j);
                if dij > max_scale {
                    continue;
                }
                for k in j + 1..n {
                    let vijk = dij.max(fms.dist(i, k)).max(fms.dist(j, k));
                    if vijk > max_scale {
                        continue;
                    }
                    for l in k + 1..n {
                        let v = vijk
                            .max(fms.dist(i, l))
                            .max(fms.dist(j, l))
                            .max(fms.dist(k, l));
                        if v <= max_scale {
                            f.simplices.push(FiltSimplex::new(
                                v,
                                &[i as u32, j as u32, k as u32, l as u32],
                            ));
                        }
                    }
                }
            }
            charge(&f.simplices)?;
        }
    }
    Ok(f.finish())
}

pub fn cech_filtration(pc: &PointCloud, max_dim: usize, max_scale: f64) -> Result<Filtration> {
    cech_filtration_with_budget(pc, max_dim, max_scale, DEFAULT_SIMPLEX_BUDGET)
}

/// Čech filtration: a simplex enters at the minimal-enclosing-ball radius of
/// its vertices. Values are clamped against facet values so floating-point
/// noise can never break monotonicity.
pub fn cech_filtration_with_budget(
    pc: &PointCloud,
    max_dim: usize,
    max_scale: f64,
    budget: usize,
) -> Result<Filtration> {
    if max_scale <= 0.0 {
        return Err(Error::InvalidInput("max_scale must be positive".into()));
    }
    let max_dim = max_dim.min(MAX_SIMPLEX_DIM);
    let n = pc.len();
    let mut f = Filtration { simplices: Vec::new(), max_dim, kind: ComplexKind::Cech, n_vertices: n };

    for v in 0..n as u32 {
        f.simplices.push(FiltSimplex::new(0.0, &[v]));
    }
    // edge value = half distance (two-point ball), kept for facet clamping
    let mut edge_value = std::collections::HashMap::new();
    if max_dim >= 1 {
        for i in 0..n {
            for j in i + 1..n {
                let r = crate::metric::euclidean(pc.point(i), pc.point(j)) / 2.0;
                if r <= max_scale {
                    f.simplices.push(FiltSimplex::new(r, &[i as u32, j as u32]));
                }
                edge_value.insert((i as u32, j as u32), r);
            }
        }
        if f.simplices.len() > budget {
            return Err(Error::BudgetExceeded { needed: f.simplices.len() as u64, budget: budget as u64 });
        }
    }
    let ev = |edge_value: &std::collections::HashMap<(u32, u32), f64>, a: u32, b: u32| {
        edge_value[&(a.min(b), a.max(b))]
    };
    let mut tri_value = std::collections::HashMap::new();
    if max_dim >= 2 {
        for i in 0..n as u32 {
            for j in i + 1..n as u32 {
                let eij = ev(&edge_value, i, j);
                if eij > max_scale {
                    continue;
                }
                for k in j + 1..n as u32 {
                    let floor = eij.max(ev(&edge_value, i, k)).max(ev(&edge_value, j, k));
                    if floor > max_scale {
                        continue;
                    }
                    let r = minimal_enclosing_ball_radius(&[
                        pc.point(i as usize),
                        pc.point(j as usize),
                        pc.point(k as usize),
                    ])?;
                    let r = r.max(floor);
                    if r <= max_scale {
                        f.simplices.push(FiltSimplex::new(r, &[i, j, k]));
                        tri_value.insert([i, j, k], r);
                    }
                }
            }
            if f.simplices.len() > budget {
                return Err(Error::BudgetExceeded { needed: f.simplices.len() as u64, budget: budget as u64 });
            }
        }
    }
    if max_dim >= 3 {
        for i in 0..n as u32 {
            for j in i + 1..n as u32 {
                for k in j + 1..n as u32 {
                    let Some(&tijk) = tri_value.get(&[i, j, k]) else { continue };
                    for l in k + 1..n as u32 {
                        let (Some(&a), Some(&b), Some(&c)) = (
                            tri_value.get(&[i, j, l]),
                            tri_value.get(&[i, k, l]),
                            tri_value.get(&[j, k, l]),
                        ) else {
                            continue;
                        };
                        let floor = tijk.max(a).max(b).max(c);
                        if floor > max_scale {
                            continue;
                        }
                        let r = minimal_enclosing_ball_radius(&[
                            pc.point(i as usize),
                            pc.point(j as usize),
                            pc.point(k as usize),
                            pc.point(l as usize),
                        ])?;
                        let r = r.max(floor);
                        if r <= max_scale {
                            f.simplices.push(FiltSimplex::new(r, &[i, j, k, l]));
                        }
                    }
                }
            }
            if f.simplices.len() > budget {
                return Err(Error::BudgetExceeded { needed: f.simplices.len() as u64, budget: budget as u64 });
            }
        }
    }
    Ok(f.finish())
}

/// Alpha filtration on a planar cloud: the Delaunay triangulation filtered by
/// circumradius, with edge values from the Gabriel condition. Carries the
/// same degree-0/1 barcode as the Čech filtration of the same points.
pub fn alpha_filtration_2d(pc: &PointCloud) -> Result<Filtration> {
    let triangles = delaunay_2d(pc)?;
    let n = pc.len();
    let mut f =
        Filtration { simplices: Vec::new(), max_dim: 2, kind: ComplexKind::Alpha2d, n_vertices: n };
    for v in 0..n as u32 {
        f.simplices.push(FiltSimplex::new(0.0, &[v]));
    }

    // triangle values, and the incidence map edge -> triangle values
    let mut incident: std::collections::HashMap<(u32, u32), Vec<f64>> =
        std::collections::HashMap::new();
    let mut tri_values = Vec::with_capacity(triangles.len());
    for t in &triangles {
        let r = circumradius_2d(pc.point(t[0]), pc.point(t[1]), pc.point(t[2]))?;
        tri_values.push(r);
        for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            incident.entry((a as u32, b as u32)).or_default().push(r);
        }
    }

    let mut edge_values = std::collections::HashMap::new();
    for (&(a, b), tris) in &incident {
        let (pa, pb) = (pc.point(a as usize), pc.point(b as usize));
        let half = crate::metric::euclidean(pa, pb) / 2.0;
        let mid = [(pa[0] + pb[0]) / 2.0, (pa[1] + pb[1]) / 2.0];
        // Gabriel: no other point lies in the closed diametral disk
        let gabriel = (0..n).all(|i| {
            i == a as usize
                || i == b as usize
                || crate::metric::euclidean(&mid, pc.point(i)) > half - 1e-12
        });
        let value = if gabriel {
            half
        } else {
            tris.iter().cloned().fold(f64::INFINITY, f64::min).max(half)
        };
        edge_values.insert((a, b), value);
        f.simplices.push(FiltSimplex::new(value, &[a, b]));
    }

    // clamp each triangle against its own edges so monotonicity is exact
    for (t, &r) in triangles.iter().zip(&tri_values) {
        let mut v = r;
        for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            v = v.max(edge_values[&(a as u32, b as u32)]);
        }
        f.simplices.push(FiltSimplex::new(v, &[t[0] as u32, t[1] as u32, t[2] as u32]));
    }
    Ok(f.finish())
}

/// Deterministically jitter a cloud; used to push degenerate inputs into
/// general position before alpha_filtration_2d.
pub fn jitter_cloud(pc: &PointCloud, magnitude: f64, seed: u64) -> PointCloud {
    let mut rng = crate::rng::SplitMix64::stream(seed, "jitter");
    let points = pc
        .points()
        .iter()
        .map(|p| p.iter().map(|&x| x + magnitude * (2.0 * rng.next_f64() - 1.0)).collect())
        .collect();
    PointCloud::new(points).expect("jitter of a valid cloud stays valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_bipartite_space;
    use crate::metric::distance_matrix;

    fn cloud(points: &[&[f64]]) -> PointCloud {
        PointCloud::new(points.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    fn find(f: &Filtration, verts: &[u32]) -> f64 {
        f.simplices
            .iter()
            .find(|s| s.vertices() == verts)
            .unwrap_or_else(|| panic!("missing simplex {verts:?}"))
            .value
    }

    #[test]
    fn rips_equilateral() {
        let pc = cloud(&[&[0.0, 0.0], &[1.0, 0.0], &[0.5, crate::generators::SQRT3_2]]);
        let f = rips_filtration(&distance_matrix(&pc), 2, 2.0).unwrap();
        assert_eq!(f.simplices.len(), 7);
        assert!((find(&f, &[0, 1, 2]) - 1.0).abs() < 1e-9);
        assert!((find(&f, &[0, 1]) - 1.0).abs() < 1e-9);
        f.validate_monotone().unwrap();
    }

    #[test]
    fn rips_bipartite_level1() {
        let fms = gen_bipartite_space(1).unwrap();
        let f = rips_filtration(&fms, 2, 1.0).unwrap();
        let cross: Vec<_> =
            f.simplices.iter().filter(|s| s.dim == 1 && (s.value - 0.25).abs() < 1e-12).collect();
        let within: Vec<_> =
            f.simplices.iter().filter(|s| s.dim == 1 && (s.value - 0.5).abs() < 1e-12).collect();
        assert_eq!(cross.len(), 4);
        assert_eq!(within.len(), 2);
        let tris: Vec<_> = f.simplices.iter().filter(|s| s.dim == 2).collect();
        assert_eq!(tris.len(), 4);
        assert!(tris.iter().all(|s| (s.value - 0.5).abs() < 1e-12));
    }

    #[test]
    fn rips_unit_square() {
        let pc = cloud(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]]);
        let f = rips_filtration(&distance_matrix(&pc), 1, 2.0).unwrap();
        let mut edges: Vec<f64> = f.simplices.iter().filter(|s| s.dim == 1).map(|s| s.value).collect();
        edges.sort_by(f64::total_cmp);
        let sqrt2 = 2f64.sqrt();
        let expect = [1.0, 1.0, 1.0, 1.0, sqrt2, sqrt2];
        for (a, b) in edges.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn rips_max_scale_trims() {
        let pc = cloud(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]]);
        let f = rips_filtration(&distance_matrix(&pc), 2, 1.1).unwrap();
        assert!(f.simplices.iter().all(|s| s.value <= 1.1));
        assert_eq!(f.simplices.iter().filter(|s| s.dim == 1).count(), 4);
        assert_eq!(f.simplices.iter().filter(|s| s.dim == 2).count(), 0);
    }

    #[test]
    fn budget_guard() {
        let pc = cloud(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]]);
        let err = rips_filtration_with_budget(&distance_matrix(&pc), 2, 2.0, 5).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn cech_equilateral() {
        let pc = cloud(&[&[0.0, 0.0], &[1.0, 0.0], &[0.5, crate::generators::SQRT3_2]]);
        let f = cech_filtration(&pc, 2, 1.0).unwrap();
        assert!((find(&f, &[0, 1]) - 0.5).abs() < 1e-9);
        assert!((find(&f, &[0, 1, 2]) - 1.0 / 3f64.sqrt()).abs() < 1e-9);
        f.validate_monotone().unwrap();
    }

    #[test]
    fn cech_unit_square() {
        let pc = cloud(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]]);
        let f = cech_filtration(&pc, 2, 1.0).unwrap();
        let h = 2f64.sqrt() / 2.0;
        assert!((find(&f, &[0, 3]) - h).abs() < 1e-9);
        assert!((find(&f, &[0, 1]) - 0.5).abs() < 1e-9);
        let tris: Vec<_> = f.simplices.iter().filter(|s| s.dim == 2).collect();
        assert_eq!(tris.len(), 4);
        for t in tris {
            assert!((t.value - h).abs() < 1e-9);
        }
    }

    #[test]
    fn cech_edges_are_half_lengths() {
        let mut rng = crate::rng::SplitMix64::new(11);
        let pts: Vec<Vec<f64>> = (0..15).map(|_| vec![rng.next_f64(), rng.next_f64()]).collect();
        let pc = PointCloud::new(pts).unwrap();
        let f = cech_filtration(&pc, 2, 10.0).unwrap();
        for s in f.simplices.iter().filter(|s| s.dim == 1) {
            let [i, j] = [s.verts[0] as usize, s.verts[1] as usize];
            let half = crate::metric::euclidean(pc.point(i), pc.point(j)) / 2.0;
            assert!((s.value - half).abs() < 1e-12);
        }
        f.validate_monotone().unwrap();
    }

    #[test]
    fn alpha_equilateral_matches_cech() {
        let pc = cloud(&[&[0.0, 0.0], &[1.0, 0.0], &[0.5, crate::generators::SQRT3_2]]);
        let f = alpha_filtration_2d(&pc).unwrap();
        assert!((find(&f, &[0, 1]) - 0.5).abs() < 1e-9);
        assert!((find(&f, &[0, 1, 2]) - 1.0 / 3f64.sqrt()).abs() < 1e-9);
        f.validate_monotone().unwrap();
    }

    #[test]
    fn alpha_collinear_errors() {
        let pc = cloud(&[&[0.0, 0.0], &[1.0, 0.0], &[2.0, 0.0]]);
        assert!(alpha_filtration_2d(&pc).is_err());
    }

    #[test]
    fn alpha_is_subcomplex_of_delaunay() {
        let mut rng = crate::rng::SplitMix64::new(5);
        let pts: Vec<Vec<f64>> = (0..30).map(|_| vec![rng.next_f64(), rng.next_f64()]).collect();
        let pc = PointCloud::new(pts).unwrap();
        let f = alpha_filtration_2d(&pc).unwrap();
        f.validate_monotone().unwrap();
        let tris = delaunay_2d(&pc).unwrap();
        let tri_count = f.simplices.iter().filter(|s| s.dim == 2).count();
        assert_eq!(tri_count, tris.len());
        // Euler: V - E + F = 1 for a triangulated disk (without outer face)
        let e = f.simplices.iter().filter(|s| s.dim == 1).count();
        assert_eq!(30 + tri_count, e + 1);
    }

    #[test]
    fn dump_roundtrip_format() {
        let pc = cloud(&[&[0.0, 0.0], &[1.0, 0.0]]);
        let f = cech_filtration(&pc, 1, 1.0).unwrap();
        let dump = f.dump();
        let lines: Vec<&str> = dump.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], "0,0,0");
        assert_eq!(lines[1], "0,0,1");
        assert_eq!(lines[2], "0.5,1,0 1");
    }
}
