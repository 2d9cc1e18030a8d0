//! Barcodes over ℤ/2 by boundary-matrix reduction, bottleneck distance, and
//! the link-filtration degree-0 count.
//!
//! The reduction processes dimensions top-down with the clearing
//! optimization, and only columns that own a pivot are retained, so memory
//! is bounded by the number of simplices one dimension below the one being
//! reduced rather than by the full column count.

use crate::error::{Error, Result};
use crate::filtration::{facets, ComplexKind, FiltSimplex, Filtration};
use crate::metric::FiniteMetricSpace;
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Interval {
    pub degree: usize,
    pub birth: f64,
    /// `None` encodes an infinite interval.
    pub death: Option<f64>,
}

impl Interval {
    pub fn length(&self) -> f64 {
        match self.death {
            Some(d) => d - self.birth,
            None => f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Barcode {
    pub intervals: Vec<Interval>,
    pub reduced: bool,
    pub kind: ComplexKind,
}

impl Barcode {
    pub fn in_degree(&self, degree: usize) -> impl Iterator<Item = &Interval> {
        self.intervals.iter().filter(move |iv| iv.degree == degree)
    }

    /// Finite intervals of positive length in the given degree.
    pub fn finite_in_degree(&self, degree: usize) -> Vec<&Interval> {
        self.in_degree(degree).filter(|iv| iv.death.is_some()).collect()
    }

    pub fn count(&self, degree: usize) -> usize {
        self.in_degree(degree).count()
    }

    /// Number of intervals in `degree` with length strictly greater than eps.
    pub fn count_longer_than(&self, degree: usize, eps: f64) -> usize {
        self.in_degree(degree).filter(|iv| iv.length() > eps).count()
    }

    /// Number of finite intervals in `degree` with length in (2^{−k−1}, 2^{−k}].
    pub fn dyadic_bucket_count(&self, degree: usize, k: i32) -> usize {
        let lo = 2f64.powi(-k - 1);
        let hi = 2f64.powi(-k);
        self.in_degree(degree)
            .filter(|iv| iv.death.is_some())
            .filter(|iv| {
                let l = iv.length();
                l > lo && l <= hi
            })
            .count()
    }
}

/// Compute the barcode of a filtration by column reduction over ℤ/2.
///
/// With `reduced` set, homology is augmented: a formal empty simplex sits
/// below every vertex, so a connected k-point space contributes exactly k−1
/// finite degree-0 intervals and no infinite one. Zero-length intervals are
/// dropped unless `keep_ephemeral` is set. Unpaired creators in degrees
/// strictly below `max_dim` become infinite intervals.
pub fn persistent_homology(f: &Filtration, reduced: bool, keep_ephemeral: bool) -> Result<Barcode> {
    let m = f.simplices.len();
    for w in f.simplices.windows(2) {
        if w[1].value < w[0].value {
            return Err(Error::InvalidInput("filtration is not sorted by value".into()));
        }
    }
    // position of each simplex within its own dimension is not needed; rows
    // are global positions in filtration order, offset by 1 when the empty
    // simplex occupies row 0
    let offset = if reduced { 1u32 } else { 0u32 };
    let values: Vec<f64> = f.simplices.iter().map(|s| s.value).collect();

    let max_present_dim = f.simplices.iter().map(|s| s.dim as usize).max().unwrap_or(0);
    let mut cleared = vec![false; m];
    let mut paired_death: Vec<Option<usize>> = vec![None; m]; // creator pos -> killer pos
    let mut positive = vec![false; m];
    let mut empty_paired = false;

    for d in (0..=max_present_dim).rev() {
        // rows live one dimension below the columns being reduced
        let mut row_of: HashMap<[u32; 4], u32> = HashMap::new();
        if d > 0 {
            for (p, s) in f.simplices.iter().enumerate() {
                if s.dim as usize == d - 1 {
                    row_of.insert(s.verts, p as u32 + offset);
                }
            }
        }
        let mut pivot_owner: HashMap<u32, Vec<u32>> = HashMap::new();
        for (p, s) in f.simplices.iter().enumerate() {
            if s.dim as usize != d || cleared[p] {
                continue;
            }
            let mut col: Vec<u32> = if d == 0 {
                if reduced {
                    vec![0]
                } else {
                    Vec::new()
                }
            } else {
                let mut rows = Vec::with_capacity(d + 1);
                for facet in facets(s) {
                    let Some(&r) = row_of.get(&facet) else {
                        return Err(Error::NonMonotoneFiltration { index: p });
                    };
                    if values[(r - offset) as usize] > s.value + 1e-12 {
                        return Err(Error::NonMonotoneFiltration { index: p });
                    }
                    rows.push(r);
                }
                rows.sort_unstable();
                rows
            };
            while let Some(&low) = col.last() {
                match pivot_owner.get(&low) {
                    Some(owner) => col = symmetric_difference(&col, owner),
                    None => break,
                }
            }
            match col.last() {
                None => positive[p] = true,
                Some(&low) => {
                    if low == 0 && reduced {
                        empty_paired = true;
                    } else {
                        let row_pos = (low - offset) as usize;
                        paired_death[row_pos] = Some(p);
                        cleared[row_pos] = true;
                    }
                    pivot_owner.insert(low, col);
                }
            }
        }
    }
    let _ = empty_paired; // the (-1)-degree interval is never emitted

    let mut intervals = Vec::new();
    for (p, s) in f.simplices.iter().enumerate() {
        let degree = s.dim as usize;
        if let Some(killer) = paired_death[p] {
            let birth = values[p];
            let death = values[killer];
            if death > birth || keep_ephemeral {
                intervals.push(Interval { degree, birth, death: Some(death) });
            }
        } else if positive[p] && degree < f.max_dim {
            intervals.push(Interval { degree, birth: values[p], death: None });
        }
    }
    intervals.sort_by(|a, b| {
        a.degree
            .cmp(&b.degree)
            .then(a.birth.partial_cmp(&b.birth).unwrap())
            .then(
                a.death
                    .unwrap_or(f64::INFINITY)
                    .partial_cmp(&b.death.unwrap_or(f64::INFINITY))
                    .unwrap(),
            )
    });
    Ok(Barcode { intervals, reduced, kind: f.kind })
}

/// Symmetric difference of two sorted index lists (ℤ/2 column addition).
fn symmetric_difference(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
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

/// Number of finite positive-length reduced degree-0 intervals of the link
/// filtration of vertex `v` inside the Rips filtration of `fms`.
///
/// A vertex z enters the link at d(v,z); an edge (z1,z2) enters at
/// max(d(z1,z2), d(v,z1), d(v,z2)) — the first scale at which joining v
/// keeps the simplex in the Rips complex.
pub fn link_ph0_count(fms: &FiniteMetricSpace, v: usize) -> Result<usize> {
    let n = fms.len();
    if v >= n {
        return Err(Error::InvalidInput(format!("vertex {v} out of range for {n} points")));
    }
    let others: Vec<usize> = (0..n).filter(|&z| z != v).collect();
    let mut simplices = Vec::new();
    for (zi, &z) in others.iter().enumerate() {
        simplices.push(FiltSimplex::new(fms.dist(v, z), &[zi as u32]));
    }
    for (ai, &a) in others.iter().enumerate() {
        for (bi, &b) in others.iter().enumerate().skip(ai + 1) {
            let value = fms.dist(a, b).max(fms.dist(v, a)).max(fms.dist(v, b));
            simplices.push(FiltSimplex::new(value, &[ai as u32, bi as u32]));
        }
    }
    simplices.sort_unstable_by(|a, b| {
        a.value.partial_cmp(&b.value).unwrap().then(a.dim.cmp(&b.dim)).then(a.verts.cmp(&b.verts))
    });
    let f = Filtration {
        simplices,
        max_dim: 1,
        kind: ComplexKind::Rips,
        n_vertices: others.len(),
    };
    let barcode = persistent_homology(&f, true, false)?;
    Ok(barcode.finite_in_degree(0).len())
}

/// Bottleneck distance between the degree-`degree` parts of two barcodes.
///
/// Infinite intervals must pair with each other (their matching cost is the
/// birth difference under sorted order); mismatched infinite counts have no
/// finite distance. The finite part is solved exactly: binary search over
/// the candidate cost set with a Hopcroft–Karp feasibility check.
pub fn bottleneck_distance(a: &Barcode, b: &Barcode, degree: usize) -> Result<f64> {
    let a_inf: Vec<f64> =
        a.in_degree(degree).filter(|iv| iv.death.is_none()).map(|iv| iv.birth).collect();
    let b_inf: Vec<f64> =
        b.in_degree(degree).filter(|iv| iv.death.is_none()).map(|iv| iv.birth).collect();
    if a_inf.len() != b_inf.len() {
        return Err(Error::InvalidInput(format!(
            "infinite interval counts differ in degree {degree}: {} vs {}",
            a_inf.len(),
            b_inf.len()
        )));
    }
    let mut a_inf = a_inf;
    let mut b_inf = b_inf;
    a_inf.sort_by(f64::total_cmp);
    b_inf.sort_by(f64::total_cmp);
    let inf_cost =
        a_inf.iter().zip(&b_inf).map(|(x, y)| (x - y).abs()).fold(0.0f64, f64::max);

    let fa: Vec<(f64, f64)> =
        a.in_degree(degree).filter_map(|iv| iv.death.map(|d| (iv.birth, d))).collect();
    let fb: Vec<(f64, f64)> =
        b.in_degree(degree).filter_map(|iv| iv.death.map(|d| (iv.birth, d))).collect();

    let linf = |x: (f64, f64), y: (f64, f64)| (x.0 - y.0).abs().max((x.1 - y.1).abs());
    let half = |x: (f64, f64)| (x.1 - x.0) / 2.0;

    let mut candidates: Vec<f64> = vec![0.0];
    for &x in &fa {
        candidates.push(half(x));
        for &y in &fb {
            candidates.push(linf(x, y));
        }
    }
    for &y in &fb {
        candidates.push(half(y));
    }
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    // smallest candidate t admitting a perfect matching
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    if !feasible(&fa, &fb, candidates[hi]) {
        return Err(Error::InvalidInput("no feasible bottleneck matching".into()));
    }
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(&fa, &fb, candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(candidates[lo].max(inf_cost))
}

/// Perfect-matching feasibility at threshold t: left side is A's intervals
/// plus |B| diagonal slots, right side is B's intervals plus |A| diagonal
/// slots; diagonal slots match each other freely.
fn feasible(fa: &[(f64, f64)], fb: &[(f64, f64)], t: f64) -> bool {
    let t = t + 1e-12;
    let n = fa.len();
    let m = fb.len();
    let left = n + m;
    let right = m + n;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); left];
    for (i, &x) in fa.iter().enumerate() {
        for (j, &y) in fb.iter().enumerate() {
            if (x.0 - y.0).abs().max((x.1 - y.1).abs()) <= t {
                adj[i].push(j);
            }
        }
        if (x.1 - x.0) / 2.0 <= t {
            for j in m..right {
                adj[i].push(j);
            }
        }
    }
    for i in n..left {
        let y = fb[i - n];
        if (y.1 - y.0) / 2.0 <= t {
            adj[i].push(i - n);
        }
        for j in m..right {
            adj[i].push(j);
        }
    }
    hopcroft_karp(&adj, left, right) == left
}

fn hopcroft_karp(adj: &[Vec<usize>], left: usize, right: usize) -> usize {
    const NIL: usize = usize::MAX;
    let mut match_l = vec![NIL; left];
    let mut match_r = vec![NIL; right];
    let mut dist = vec![0usize; left];
    let mut matching = 0;
    loop {
        // BFS layers from free left vertices
        let mut queue = std::collections::VecDeque::new();
        for u in 0..left {
            if match_l[u] == NIL {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                match match_r[v] {
                    NIL => found = true,
                    w if dist[w] == usize::MAX => {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            break;
        }
        fn dfs(
            u: usize,
            adj: &[Vec<usize>],
            match_l: &mut [usize],
            match_r: &mut [usize],
            dist: &mut [usize],
        ) -> bool {
            const NIL: usize = usize::MAX;
            for idx in 0..adj[u].len() {
                let v = adj[u][idx];
                let w = match_r[v];
                if w == NIL || (dist[w] == dist[u] + 1 && dfs(w, adj, match_l, match_r, dist)) {
                    match_l[u] = v;
                    match_r[v] = u;
                    return true;
                }
            }
            dist[u] = usize::MAX;
            false
        }
        for u in 0..left {
            if match_l[u] == NIL && dfs(u, adj, &mut match_l, &mut match_r, &mut dist) {
                matching += 1;
            }
        }
    }
    matching
}
