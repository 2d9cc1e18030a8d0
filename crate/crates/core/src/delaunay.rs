//! Planar Delaunay triangulation by Bowyer-Watson incremental insertion.

use crate::error::{Error, Result};
use crate::metric::PointCloud;

/// A triangle as a sorted triple of point indices.
pub type Triangle = [usize; 3];

/// Delaunay triangulation of a planar point cloud. Points are inserted in
/// input order; cocircular ties resolve to the triangulation produced by
/// that order, which is deterministic.
pub fn delaunay_2d(pc: &PointCloud) -> Result<Vec<Triangle>> {
    if pc.ambient_dim() != 2 {
        return Err(Error::DimensionMismatch(pc.ambient_dim(), 2));
    }
    let n = pc.len();
    if n < 3 {
        return Err(Error::Degenerate("Delaunay triangulation needs at least 3 points".into()));
    }
    for i in 0..n {
        for j in i + 1..n {
            if crate::metric::euclidean(pc.point(i), pc.point(j)) < 1e-12 {
                return Err(Error::Degenerate(format!("duplicate points {i} and {j}")));
            }
        }
    }
    if all_collinear(pc) {
        return Err(Error::Degenerate("all points are collinear".into()));
    }

    // working vertex list: input points followed by the three super-triangle
    // vertices at indices n..n+3
    let (min_x, max_x, min_y, max_y) = bounds(pc);
    let span = (max_x - min_x).max(max_y - min_y).max(1.0);
    let cx = (min_x + max_x) / 2.0;
    let cy = (min_y + max_y) / 2.0;
    let mut verts: Vec<[f64; 2]> = pc.points().iter().map(|p| [p[0], p[1]]).collect();
    verts.push([cx - 20.0 * span, cy - 10.0 * span]);
    verts.push([cx + 20.0 * span, cy - 10.0 * span]);
    verts.push([cx, cy + 20.0 * span]);

    let mut triangles: Vec<[usize; 3]> = vec![[n, n + 1, n + 2]];
    for p in 0..n {
        let point = verts[p];
        // cavity: all triangles whose circumcircle contains the new point
        let mut bad = Vec::new();
        for (ti, tri) in triangles.iter().enumerate() {
            if in_circumcircle(&verts, *tri, point) {
                bad.push(ti);
            }
        }
        // boundary of the cavity: edges that belong to exactly one bad triangle
        let mut boundary: Vec<(usize, usize)> = Vec::new();
        for &ti in &bad {
            let [a, b, c] = triangles[ti];
            for edge in [(a, b), (b, c), (c, a)] {
                let key = (edge.0.min(edge.1), edge.0.max(edge.1));
                if let Some(pos) = boundary.iter().position(|&e| e == key) {
                    boundary.swap_remove(pos);
                } else {
                    boundary.push(key);
                }
            }
        }
        for &ti in bad.iter().rev() {
            triangles.swap_remove(ti);
        }
        for (a, b) in boundary {
            triangles.push([a, b, p]);
        }
    }

    let mut out: Vec<Triangle> = triangles
        .into_iter()
        .filter(|t| t.iter().all(|&v| v < n))
        .map(|mut t| {
            t.sort_unstable();
            t
        })
        .collect();
    out.sort_unstable();
    if out.is_empty() {
        return Err(Error::Degenerate("triangulation produced no triangles".into()));
    }
    Ok(out)
}

fn bounds(pc: &PointCloud) -> (f64, f64, f64, f64) {
    let mut min_x = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    for p in pc.points() {
        min_x = min_x.min(p[0]);
        max_x = max_x.max(p[0]);
        min_y = min_y.min(p[1]);
        max_y = max_y.max(p[1]);
    }
    (min_x, max_x, min_y, max_y)
}

fn all_collinear(pc: &PointCloud) -> bool {
    let n = pc.len();
    let a = pc.point(0);
    // first point distinct from a
    let Some(bi) = (1..n).find(|&i| crate::metric::euclidean(a, pc.point(i)) > 1e-12) else {
        return true;
    };
    let b = pc.point(bi);
    let scale = crate::metric::euclidean(a, b);
    !(0..n).any(|i| {
        let p = pc.point(i);
        let cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
        cross.abs() > 1e-12 * scale * scale.max(1.0)
    })
}

/// Strict in-circumcircle test. Cocircular points (determinant within
/// tolerance of zero) count as outside, so the triangulation standing at
/// that moment is kept.
fn in_circumcircle(verts: &[[f64; 2]], tri: [usize; 3], p: [f64; 2]) -> bool {
    let [ia, ib, ic] = tri;
    let (a, b, c) = (verts[ia], verts[ib], verts[ic]);
    let orient = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    let (b, c) = if orient < 0.0 { (c, b) } else { (b, c) };

    let adx = a[0] - p[0];
    let ady = a[1] - p[1];
    let bdx = b[0] - p[0];
    let bdy = b[1] - p[1];
    let cdx = c[0] - p[0];
    let cdy = c[1] - p[1];
    let ad = adx * adx + ady * ady;
    let bd = bdx * bdx + bdy * bdy;
    let cd = cdx * cdx + cdy * cdy;
    let det = adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx)
        + ad * (bdx * cdy - bdy * cdx);
    let scale = (ad + bd + cd).max(1e-300);
    det > 1e-11 * scale * scale.sqrt()
}

/// Circumradius of a planar triangle: abc / 4A with the area from the
/// shoelace formula.
pub fn circumradius_2d(p: &[f64], q: &[f64], r: &[f64]) -> Result<f64> {
    let a = crate::metric::euclidean(q, r);
    let b = crate::metric::euclidean(p, r);
    let c = crate::metric::euclidean(p, q);
    let area2 = ((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])).abs();
    let scale = a.max(b).max(c);
    if area2 <= 1e-12 * scale * scale {
        return Err(Error::Degenerate("collinear points have no circumcircle".into()));
    }
    Ok(a * b * c / (2.0 * area2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::euclidean;
    use crate::rng::SplitMix64;

    fn pc(points: &[[f64; 2]]) -> PointCloud {
        PointCloud::new(points.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    #[test]
    fn single_triangle() {
        let t = delaunay_2d(&pc(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])).unwrap();
        assert_eq!(t, vec![[0, 1, 2]]);
    }

    #[test]
    fn unit_square_two_triangles() {
        let t = delaunay_2d(&pc(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])).unwrap();
        assert_eq!(t.len(), 2);
        // the two triangles must share a diagonal
        let mut edge_count = std::collections::HashMap::new();
        for tri in &t {
            for (i, j) in [(0, 1), (1, 2), (0, 2)] {
                *edge_count.entry((tri[i], tri[j])).or_insert(0) += 1;
            }
        }
        let shared: Vec<_> = edge_count.iter().filter(|(_, &c)| c == 2).collect();
        assert_eq!(shared.len(), 1);
        let diag = *shared[0].0;
        assert!(diag == (0, 3) || diag == (1, 2));
    }

    #[test]
    fn collinear_errors() {
        assert!(delaunay_2d(&pc(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]])).is_err());
    }

    #[test]
    fn duplicates_error() {
        assert!(delaunay_2d(&pc(&[[0.0, 0.0], [0.0, 0.0], [1.0, 1.0]])).is_err());
    }

    #[test]
    fn empty_circumcircle_property() {
        let mut rng = SplitMix64::new(2024);
        let points: Vec<[f64; 2]> = (0..20).map(|_| [rng.next_f64(), rng.next_f64()]).collect();
        let cloud = pc(&points);
        let tris = delaunay_2d(&cloud).unwrap();
        for tri in &tris {
            let (c, r) = circumcenter(&points[tri[0]], &points[tri[1]], &points[tri[2]]);
            for (i, p) in points.iter().enumerate() {
                if tri.contains(&i) {
                    continue;
                }
                let d = euclidean(&c, p);
                assert!(d >= r - 1e-9, "point {i} inside circumcircle of {tri:?}");
            }
        }
    }

    fn circumcenter(a: &[f64; 2], b: &[f64; 2], c: &[f64; 2]) -> (Vec<f64>, f64) {
        let d = 2.0 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]));
        let ux = ((a[0] * a[0] + a[1] * a[1]) * (b[1] - c[1])
            + (b[0] * b[0] + b[1] * b[1]) * (c[1] - a[1])
            + (c[0] * c[0] + c[1] * c[1]) * (a[1] - b[1]))
            / d;
        let uy = ((a[0] * a[0] + a[1] * a[1]) * (c[0] - b[0])
            + (b[0] * b[0] + b[1] * b[1]) * (a[0] - c[0])
            + (c[0] * c[0] + c[1] * c[1]) * (b[0] - a[0]))
            / d;
        let r = euclidean(&[ux, uy], a);
        (vec![ux, uy], r)
    }

    #[test]
    fn circumradius_right_triangle() {
        let r = circumradius_2d(&[0.0, 0.0], &[4.0, 0.0], &[0.0, 3.0]).unwrap();
        assert!((r - 2.5).abs() < 1e-9);
    }

    #[test]
    fn triangulation_covers_all_interior_points() {
        let mut rng = SplitMix64::new(99);
        let points: Vec<[f64; 2]> = (0..60).map(|_| [rng.next_f64(), rng.next_f64()]).collect();
        let tris = delaunay_2d(&pc(&points)).unwrap();
        // Euler check: every input vertex appears
        let mut seen = vec![false; points.len()];
        for t in &tris {
            for &v in t {
                seen[v] = true;
            }
        }
        assert!(seen.iter().all(|&s| s));
    }
}
