//! Shared test helpers: an independent brute-force homology oracle that
//! computes Betti numbers by Gaussian elimination on dense boundary
//! matrices, with none of the machinery of the library's reduction.

use phdim_core::filtration::Filtration;
use phdim_core::metric::PointCloud;
use phdim_core::rng::SplitMix64;

/// GF(2) rank by plain Gaussian elimination; columns are row-index sets.
fn gf2_rank(mut cols: Vec<Vec<usize>>) -> usize {
    let mut rank = 0;
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, column index)
    for c in 0..cols.len() {
        loop {
            let Some(&low) = cols[c].last() else { break };
            match pivots.iter().find(|&&(r, _)| r == low) {
                None => {
                    pivots.push((low, c));
                    rank += 1;
                    break;
                }
                Some(&(_, other)) => {
                    let merged = symm_diff(&cols[c], &cols[other]);
                    cols[c] = merged;
                }
            }
        }
    }
    rank
}

fn symm_diff(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Betti number of the sublevel complex {σ : value(σ) ≤ eps} in the given
/// degree, from scratch. `reduced` subtracts the ambient component in
/// degree 0.
pub fn betti_at(f: &Filtration, degree: usize, eps: f64, reduced: bool) -> usize {
    let present: Vec<_> = f.simplices.iter().filter(|s| s.value <= eps).collect();
    let simplices_of = |d: usize| -> Vec<Vec<u32>> {
        present
            .iter()
            .filter(|s| s.dim as usize == d)
            .map(|s| s.vertices().to_vec())
            .collect()
    };
    let chains_d = simplices_of(degree);
    if chains_d.is_empty() {
        return 0;
    }
    let boundary_rank = |d: usize| -> usize {
        if d == 0 {
            return 0;
        }
        let rows = simplices_of(d - 1);
        let cols_src = simplices_of(d);
        let index_of = |verts: &[u32]| rows.iter().position(|r| r == verts).unwrap();
        let cols: Vec<Vec<usize>> = cols_src
            .iter()
            .map(|s| {
                let mut rows_hit: Vec<usize> = (0..s.len())
                    .map(|skip| {
                        let facet: Vec<u32> = s
                            .iter()
                            .enumerate()
                            .filter(|&(i, _)| i != skip)
                            .map(|(_, &v)| v)
                            .collect();
                        index_of(&facet)
                    })
                    .collect();
                rows_hit.sort_unstable();
                rows_hit
            })
            .collect();
        gf2_rank(cols)
    };
    let beta = chains_d.len() - boundary_rank(degree) - boundary_rank(degree + 1);
    if reduced && degree == 0 {
        beta - 1
    } else {
        beta
    }
}

/// Number of barcode intervals alive at eps in the given degree, reading an
/// interval (b, d) as alive on [b, d).
pub fn alive_at(b: &phdim_core::persistence::Barcode, degree: usize, eps: f64) -> usize {
    b.in_degree(degree)
        .filter(|iv| iv.birth <= eps && iv.death.map(|d| eps < d).unwrap_or(true))
        .count()
}

pub fn random_cloud(n: usize, dim: usize, seed: u64) -> PointCloud {
    let mut rng = SplitMix64::new(seed);
    PointCloud::new((0..n).map(|_| (0..dim).map(|_| rng.next_f64()).collect()).collect()).unwrap()
}
