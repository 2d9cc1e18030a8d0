//! Deterministic, seeded samplers for the point families under study, plus
//! the abstract bipartite metric family.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{FiniteMetricSpace, PointCloud};
use crate::rng::SplitMix64;

pub const SQRT3_2: f64 = 0.8660254037844386;

/// Sample family selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Sierpinski,
    CantorInterval,
    Arcs,
    UniformCube,
    Segment,
    LatticeSubset,
    Bipartite,
    BipartiteUnion,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "sierpinski" => Family::Sierpinski,
            "cantor_interval" | "cantor-interval" => Family::CantorInterval,
            "arcs" => Family::Arcs,
            "uniform_cube" | "uniform-cube" => Family::UniformCube,
            "segment" => Family::Segment,
            "lattice_subset" | "lattice-subset" => Family::LatticeSubset,
            "bipartite" => Family::Bipartite,
            "bipartite_union" | "bipartite-union" => Family::BipartiteUnion,
            other => return Err(Error::InvalidInput(format!("unknown family `{other}`"))),
        })
    }
}

/// Family-specific parameters. Unused fields are ignored by a family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    /// Ambient dimension for uniform_cube / lattice_subset.
    pub ambient_dim: usize,
    /// Cantor approximation depth.
    pub levels: u32,
    /// Lattice width N for lattice_subset.
    pub lattice_width: u64,
    /// Inclusion probability for lattice_subset.
    pub density: f64,
    /// Level n for bipartite, or the maximum level for bipartite_union.
    pub level: u32,
}

impl Default for FamilyParams {
    fn default() -> Self {
        FamilyParams { ambient_dim: 2, levels: 10, lattice_width: 2, density: 1.0, level: 1 }
    }
}

/// A fully deterministic description of a sample: identical specs produce
/// identical output bit-for-bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
    #[serde(default)]
    pub params: FamilyParams,
}

/// Output of a generator: point families produce clouds, the bipartite
/// families produce abstract metric spaces.
#[derive(Debug, Clone)]
pub enum Generated {
    Cloud(PointCloud),
    Metric(FiniteMetricSpace),
}

pub fn generate(spec: &GeneratorSpec) -> Result<Generated> {
    if spec.n == 0 && !matches!(spec.family, Family::Bipartite | Family::BipartiteUnion) {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    Ok(match spec.family {
        Family::Sierpinski => Generated::Cloud(gen_sierpinski(spec.n, spec.seed)),
        Family::CantorInterval => {
            Generated::Cloud(gen_cantor_interval(spec.n, spec.params.levels, spec.seed))
        }
        Family::Arcs => Generated::Cloud(gen_arcs(spec.n)?),
        Family::UniformCube => {
            Generated::Cloud(gen_uniform_cube(spec.n, spec.params.ambient_dim, spec.seed))
        }
        Family::Segment => Generated::Cloud(gen_segment(spec.n)),
        Family::LatticeSubset => Generated::Cloud(gen_lattice_subset(
            spec.params.lattice_width,
            spec.params.ambient_dim,
            spec.params.density,
            spec.seed,
        )?),
        Family::Bipartite => Generated::Metric(gen_bipartite_space(spec.params.level)?),
        Family::BipartiteUnion => Generated::Metric(gen_bipartite_union(spec.params.level)?),
    })
}

const CHAOS_GAME_BURN_IN: usize = 100;

/// Chaos game on the vertices (0,0), (1,0), (1/2, sqrt(3)/2): each step
/// averages the current point toward a uniformly chosen vertex. The first
/// 100 iterates are discarded.
pub fn gen_sierpinski(n: usize, seed: u64) -> PointCloud {
    let vertices = [[0.0, 0.0], [1.0, 0.0], [0.5, SQRT3_2]];
    let mut rng = SplitMix64::stream(seed, "sierpinski");
    let mut x = 0.5;
    let mut y = SQRT3_2 / 3.0;
    let mut points = Vec::with_capacity(n);
    for i in 0..CHAOS_GAME_BURN_IN + n {
        let v = vertices[rng.next_below(3) as usize];
        x = (x + v[0]) / 2.0;
        y = (y + v[1]) / 2.0;
        if i >= CHAOS_GAME_BURN_IN {
            points.push(vec![x, y]);
        }
    }
    PointCloud::new(points).expect("chaos game points are finite")
}

/// Product of a level-`levels` middle-thirds Cantor approximation with the
/// unit interval. Each x-coordinate is a random ternary address with digits
/// drawn from {0, 2} down to the given depth, plus a uniform offset inside
/// the surviving interval.
pub fn gen_cantor_interval(n: usize, levels: u32, seed: u64) -> PointCloud {
    let levels = levels.max(1);
    let mut rng = SplitMix64::stream(seed, "cantor_interval");
    let mut points = Vec::with_capacity(n);
    let mut scale = 1.0;
    for _ in 0..levels {
        scale /= 3.0;
    }
    for _ in 0..n {
        let mut x = 0.0;
        let mut width = 1.0;
        for _ in 0..levels {
            width /= 3.0;
            if rng.next_below(2) == 1 {
                x += 2.0 * width;
            }
        }
        x += rng.next_f64() * scale;
        let y = rng.next_f64();
        points.push(vec![x, y]);
    }
    PointCloud::new(points).expect("cantor points are finite")
}

/// Two opposing unit-circle arcs in R^3, floor(n/2) uniformly spaced points
/// on each (endpoints included). Deterministic; no seed.
pub fn gen_arcs(n: usize) -> Result<PointCloud> {
    if n < 2 {
        return Err(Error::InvalidInput("arcs family needs n >= 2".into()));
    }
    let per_arc = n / 2;
    let mut points = Vec::with_capacity(2 * per_arc);
    let theta_at = |t: usize| {
        if per_arc == 1 {
            0.0
        } else {
            -std::f64::consts::FRAC_PI_8
                + (t as f64) * (std::f64::consts::FRAC_PI_4 / (per_arc as f64 - 1.0))
        }
    };
    for t in 0..per_arc {
        let theta = theta_at(t);
        points.push(vec![theta.cos(), theta.sin(), 0.0]);
    }
    for t in 0..per_arc {
        let theta = theta_at(t);
        points.push(vec![1.0 - theta.cos(), 0.0, theta.sin()]);
    }
    PointCloud::new(points)
}

/// i.i.d. uniform samples from [0,1)^m.
pub fn gen_uniform_cube(n: usize, m: usize, seed: u64) -> PointCloud {
    let mut rng = SplitMix64::stream(seed, "uniform_cube");
    let points = (0..n)
        .map(|_| (0..m).map(|_| rng.next_f64()).collect())
        .collect();
    PointCloud::new(points).expect("cube points are finite")
}

/// n evenly spaced points on the unit segment, embedded in R^2.
pub fn gen_segment(n: usize) -> PointCloud {
    let points = if n == 1 {
        vec![vec![0.0, 0.0]]
    } else {
        (0..n)
            .map(|i| vec![i as f64 / (n as f64 - 1.0), 0.0])
            .collect()
    };
    PointCloud::new(points).expect("segment points are finite")
}

/// Bernoulli(density) inclusion over the lattice [N]^m = {1,...,N}^m. The
/// lexicographically first lattice point is forced in when the draw would
/// otherwise be empty, so the output is always a valid cloud.
pub fn gen_lattice_subset(n: u64, m: usize, density: f64, seed: u64) -> Result<PointCloud> {
    if n < 1 {
        return Err(Error::InvalidInput("lattice width must be at least 1".into()));
    }
    if !(density > 0.0 && density <= 1.0) {
        return Err(Error::InvalidInput("density must be in (0, 1]".into()));
    }
    let total = (n as u128).checked_pow(m as u32).ok_or(Error::Overflow("lattice size"))?;
    if total > 1 << 24 {
        return Err(Error::BudgetExceeded { needed: total as u64, budget: 1 << 24 });
    }
    let mut rng = SplitMix64::stream(seed, "lattice_subset");
    let mut points = Vec::new();
    let mut coord = vec![1u64; m];
    loop {
        if rng.next_f64() < density {
            points.push(coord.iter().map(|&c| c as f64).collect());
        }
        // odometer over {1..N}^m, last coordinate fastest
        let mut k = m;
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            if coord[k] < n {
                coord[k] += 1;
                break;
            }
            coord[k] = 1;
        }
        if coord.iter().all(|&c| c == 1) {
            break;
        }
    }
    if points.is_empty() {
        points.push(vec![1.0; m]);
    }
    PointCloud::new(points)
}

/// The level-n bipartite space of 2^{n+1} points: cross distances
/// 2^{-n-1} for every pair (complete bipartite), within-side distances
/// 2^{-n}.
pub fn gen_bipartite_space(level: u32) -> Result<FiniteMetricSpace> {
    if level > 12 {
        return Err(Error::BudgetExceeded { needed: 1u64 << (level + 1), budget: 1 << 13 });
    }
    let half = 1usize << level;
    let n = 2 * half;
    let cross = 0.5f64.powi(level as i32 + 1);
    let within = 0.5f64.powi(level as i32);
    let mut dist = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let same_side = (i < half) == (j < half);
            dist[i * n + j] = if same_side { within } else { cross };
        }
    }
    Ok(FiniteMetricSpace::new_unchecked(n, dist, true))
}

/// Disjoint union of the bipartite levels 0..=max_level; points from
/// distinct levels i != j are at distance 2^{-min(i,j)}.
pub fn gen_bipartite_union(max_level: u32) -> Result<FiniteMetricSpace> {
    let total: usize = (0..=max_level).map(|l| 2usize << l).sum();
    if total > 4096 {
        return Err(Error::BudgetExceeded { needed: total as u64, budget: 4096 });
    }
    let mut level_of = Vec::with_capacity(total);
    let mut side_of = Vec::with_capacity(total);
    for l in 0..=max_level {
        let half = 1usize << l;
        for i in 0..2 * half {
            level_of.push(l);
            side_of.push(i < half);
        }
    }
    let mut dist = vec![0.0; total * total];
    for i in 0..total {
        for j in 0..total {
            if i == j {
                continue;
            }
            let (li, lj) = (level_of[i], level_of[j]);
            dist[i * total + j] = if li != lj {
                0.5f64.powi(li.min(lj) as i32)
            } else if side_of[i] == side_of[j] {
                0.5f64.powi(li as i32)
            } else {
                0.5f64.powi(li as i32 + 1)
            };
        }
    }
    Ok(FiniteMetricSpace::new_unchecked(total, dist, true))
}
