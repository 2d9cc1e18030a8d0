//! Minimal enclosing balls.
//!
//! Small point sets (the common case in Cech construction) are handled
//! analytically; everything else goes through Welzl's randomized recursion
//! over support sets.

use crate::error::{Error, Result};
use crate::metric::euclidean;
use crate::rng::SplitMix64;

const REL_TOL: f64 = 1e-9;

/// Radius of the smallest closed ball containing all points. Ambient
/// dimension up to 8.
pub fn minimal_enclosing_ball_radius(points: &[&[f64]]) -> Result<f64> {
    Ok(minimal_enclosing_ball(points)?.1)
}

/// Center and radius of the smallest enclosing ball.
pub fn minimal_enclosing_ball(points: &[&[f64]]) -> Result<(Vec<f64>, f64)> {
    if points.is_empty() {
        return Err(Error::InvalidInput("minimal enclosing ball of no points".into()));
    }
    let dim = points[0].len();
    if dim > 8 {
        return Err(Error::InvalidInput(format!("ambient dimension {dim} exceeds 8")));
    }
    match points.len() {
        1 => Ok((points[0].to_vec(), 0.0)),
        2 => Ok(two_point_ball(points[0], points[1])),
        3 => Ok(three_point_ball(points[0], points[1], points[2])),
        _ => {
            // deterministic shuffle keeps the expected-linear behavior
            // without making the result run-to-run dependent
            let mut order: Vec<usize> = (0..points.len()).collect();
            let mut rng = SplitMix64::stream(0x6d65625f77656c7a, "meb_shuffle");
            for i in (1..order.len()).rev() {
                let j = rng.next_below(i as u64 + 1) as usize;
                order.swap(i, j);
            }
            let shuffled: Vec<&[f64]> = order.iter().map(|&i| points[i]).collect();
            let mut support: Vec<&[f64]> = Vec::with_capacity(dim + 1);
            let ball = welzl(&shuffled, &mut support, dim);
            Ok(ball)
        }
    }
}

fn two_point_ball(p: &[f64], q: &[f64]) -> (Vec<f64>, f64) {
    let center: Vec<f64> = p.iter().zip(q).map(|(a, b)| (a + b) / 2.0).collect();
    let r = euclidean(p, q) / 2.0;
    (center, r)
}

/// Exact three-point ball in any ambient dimension: half the longest edge
/// for right/obtuse triangles, circumball otherwise.
fn three_point_ball(p: &[f64], q: &[f64], r: &[f64]) -> (Vec<f64>, f64) {
    let a2 = sq_dist(q, r);
    let b2 = sq_dist(p, r);
    let c2 = sq_dist(p, q);
    // endpoints of the longest edge
    let (u, v, opp2) = if a2 >= b2 && a2 >= c2 {
        (q, r, a2)
    } else if b2 >= c2 {
        (p, r, b2)
    } else {
        (p, q, c2)
    };
    if opp2 >= a2 + b2 + c2 - opp2 {
        // non-acute: diametral ball of the longest edge covers the third point
        return two_point_ball(u, v);
    }
    circumball3(p, q, r).unwrap_or_else(|| two_point_ball(u, v))
}

/// Circumcenter of three affinely independent points, valid in any ambient
/// dimension: solve in the barycentric frame spanned by (q-p, r-p).
fn circumball3(p: &[f64], q: &[f64], r: &[f64]) -> Option<(Vec<f64>, f64)> {
    let u: Vec<f64> = q.iter().zip(p).map(|(a, b)| a - b).collect();
    let v: Vec<f64> = r.iter().zip(p).map(|(a, b)| a - b).collect();
    let uu = dot(&u, &u);
    let vv = dot(&v, &v);
    let uv = dot(&u, &v);
    let det = uu * vv - uv * uv;
    if det.abs() <= 1e-14 * uu.max(vv).powi(2).max(f64::MIN_POSITIVE) {
        return None;
    }
    // center = p + s*u + t*v with |c-p|^2 = |c-q|^2 = |c-r|^2
    let s = 0.5 * vv * (uu - uv) / det;
    let t = 0.5 * uu * (vv - uv) / det;
    let center: Vec<f64> = p
        .iter()
        .enumerate()
        .map(|(i, &pi)| pi + s * u[i] + t * v[i])
        .collect();
    let radius = euclidean(&center, p);
    Some((center, radius))
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn welzl<'a>(points: &[&'a [f64]], support: &mut Vec<&'a [f64]>, dim: usize) -> (Vec<f64>, f64) {
    if points.is_empty() || support.len() == dim + 1 {
        return ball_from_support(support, dim);
    }
    let p = points[0];
    let ball = welzl(&points[1..], support, dim);
    if contains(&ball, p) {
        return ball;
    }
    support.push(p);
    let ball = welzl(&points[1..], support, dim);
    support.pop();
    ball
}

fn contains(ball: &(Vec<f64>, f64), p: &[f64]) -> bool {
    euclidean(&ball.0, p) <= ball.1 * (1.0 + REL_TOL) + 1e-12
}

/// Smallest ball with all support points on its boundary: the circumball of
/// the support within its affine hull.
fn ball_from_support(support: &[&[f64]], dim: usize) -> (Vec<f64>, f64) {
    match support.len() {
        0 => (vec![0.0; dim], -1.0),
        1 => (support[0].to_vec(), 0.0),
        2 => two_point_ball(support[0], support[1]),
        3 => three_point_ball(support[0], support[1], support[2]),
        _ => circumball_general(support).unwrap_or_else(|| {
            // affinely dependent support; fall back to the ball of a facet
            ball_from_support(&support[..support.len() - 1], dim)
        }),
    }
}

/// Circumball of k affinely independent points via the Gram system
/// 2 V V^T lambda = diag(V V^T).
fn circumball_general(support: &[&[f64]]) -> Option<(Vec<f64>, f64)> {
    let p0 = support[0];
    let k = support.len() - 1;
    let vs: Vec<Vec<f64>> = support[1..]
        .iter()
        .map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect())
        .collect();
    // build augmented system
    let mut a = vec![vec![0.0; k + 1]; k];
    for i in 0..k {
        for j in 0..k {
            a[i][j] = 2.0 * dot(&vs[i], &vs[j]);
        }
        a[i][k] = dot(&vs[i], &vs[i]);
    }
    let lambda = solve(&mut a)?;
    let mut center = p0.to_vec();
    for (i, &l) in lambda.iter().enumerate() {
        for (c, &v) in center.iter_mut().zip(&vs[i]) {
            *c += l * v;
        }
    }
    let radius = euclidean(&center, p0);
    Some((center, radius))
}

/// Gaussian elimination with partial pivoting on a k x (k+1) augmented
/// matrix. None when the system is singular to working precision.
fn solve(a: &mut [Vec<f64>]) -> Option<Vec<f64>> {
    let k = a.len();
    for col in 0..k {
        let pivot = (col..k).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, pivot);
        for row in col + 1..k {
            let f = a[row][col] / a[col][col];
            for c in col..=k {
                a[row][c] -= f * a[col][c];
            }
        }
    }
    let mut x = vec![0.0; k];
    for row in (0..k).rev() {
        let mut s = a[row][k];
        for c in row + 1..k {
            s -= a[row][c] * x[c];
        }
        x[row] = s / a[row][row];
    }
    Some(x)
}
