//! The acceptance gate: one test per criterion, each printing a single
//! PASS/FAIL line (visible with `--nocapture`) and asserting the same
//! condition. Tolerances are pinned here and nowhere else.

mod common;

use common::{alive_at, betti_at, random_cloud};
use phdim_core::dimension::{
    arcs_experiment, estimate_box_dimension, estimate_ph_dimension, tail_exponent_pair,
};
use phdim_core::extremal::{tp1, tp2, verify_tp_minima, xi_search};
use phdim_core::filtration::{cech_filtration, jitter_cloud, rips_filtration, ComplexKind};
use phdim_core::generators::{
    gen_bipartite_space, gen_sierpinski, Family, FamilyParams, GeneratorSpec,
};
use phdim_core::metric::{distance_matrix, hausdorff_distance, PointCloud};
use phdim_core::mst::{estimate_mst_dimension, verify_mst_ph0_correspondence};
use phdim_core::persistence::{bottleneck_distance, link_ph0_count, persistent_homology};

fn report(number: u32, name: &str, pass: bool, detail: &str) {
    use std::io::Write;
    let verdict = if pass { "PASS" } else { "FAIL" };
    // write to the stdout handle directly so the line shows up even without
    // --nocapture; the print macros would be swallowed for passing tests
    let mut out = std::io::stdout().lock();
    writeln!(out, "ACCEPTANCE {number:2} {name}: {verdict} ({detail})").ok();
    out.flush().ok();
    assert!(pass, "criterion {number} ({name}) failed: {detail}");
}

#[test]
fn criterion_01_bipartite_exact_counts() {
    let mut detail = String::new();
    let mut pass = true;
    for level in 1..=4u32 {
        let fms = gen_bipartite_space(level).unwrap();
        let f = rips_filtration(&fms, 2, 1.0).unwrap();
        let bc = persistent_homology(&f, true, false).unwrap();
        let intervals = bc.finite_in_degree(1);
        let expected = (1usize << (2 * level)) - (1 << (level + 1)) + 1;
        let birth = 0.5f64.powi(level as i32 + 1);
        let death = 0.5f64.powi(level as i32);
        let ok = intervals.len() == expected
            && intervals.iter().all(|iv| iv.birth == birth && iv.death == Some(death));
        pass &= ok;
        detail.push_str(&format!("level {level}: {}/{expected}; ", intervals.len()));
    }
    report(1, "bipartite exact counts", pass, detail.trim_end_matches("; "));
}

#[test]
fn criterion_02_equilateral_barcode() {
    let pc = PointCloud::new(vec![
        vec![0.0, 0.0],
        vec![1.0, 0.0],
        vec![0.5, 3f64.sqrt() / 2.0],
    ])
    .unwrap();
    let f = cech_filtration(&pc, 2, 1.0).unwrap();
    let bc = persistent_homology(&f, true, false).unwrap();
    let ph1 = bc.finite_in_degree(1);
    let mut pass = ph1.len() == 1
        && (ph1[0].birth - 0.5).abs() < 1e-9
        && (ph1[0].death.unwrap() - 0.5773503).abs() < 1e-7
        && (ph1[0].death.unwrap() - 1.0 / 3f64.sqrt()).abs() < 1e-9;
    for eps in [0.49, 0.55, 0.6] {
        pass &= alive_at(&bc, 1, eps) == betti_at(&f, 1, eps, true);
    }
    let detail = if ph1.len() == 1 {
        format!("PH_1 = ({:.6}, {:.6})", ph1[0].birth, ph1[0].death.unwrap())
    } else {
        format!("PH_1 count {}", ph1.len())
    };
    report(2, "equilateral Cech barcode", pass, &detail);
}

#[test]
fn criterion_03_mst_ph0_bijection() {
    let mut rng = phdim_core::rng::SplitMix64::new(0x30c0);
    let mut pass = true;
    let mut worst = 0.0f64;
    for i in 0..50 {
        let n = 20 + (rng.next_below(281) as usize);
        let pc = random_cloud(n, 2, 7000 + i);
        for kind in [ComplexKind::Rips, ComplexKind::Cech] {
            let r = verify_mst_ph0_correspondence(&pc, kind).unwrap();
            pass &= r.pass;
            worst = worst.max(r.max_abs_diff);
        }
    }
    report(3, "MST-PH0 bijection", pass, &format!("50 clouds, max |diff| {worst:.2e}"));
}

#[test]
fn criterion_04_stability() {
    let mut rng = phdim_core::rng::SplitMix64::new(0x57ab);
    let mut pass = true;
    let mut worst_margin = f64::INFINITY;
    for i in 0..100 {
        let pc = random_cloud(25, 2, 8000 + i);
        let eta = 0.005 + 0.04 * rng.next_f64();
        let moved = jitter_cloud(&pc, eta, 9000 + i);
        let a = persistent_homology(&cech_filtration(&pc, 2, 2.0).unwrap(), true, false).unwrap();
        let b =
            persistent_homology(&cech_filtration(&moved, 2, 2.0).unwrap(), true, false).unwrap();
        let h = hausdorff_distance(&pc, &moved).unwrap();
        for degree in 0..2 {
            let d = bottleneck_distance(&a, &b, degree).unwrap();
            pass &= d <= h + 1e-9;
            worst_margin = worst_margin.min(h - d);
        }
    }
    report(4, "bottleneck stability", pass, &format!("100 pairs, min(h - d) = {worst_margin:.2e}"));
}

#[test]
fn criterion_05_rips_ph1_linearity() {
    let mut pass = true;
    let mut detail = String::new();
    for (i, &n) in [100usize, 200, 400].iter().enumerate() {
        let pc = random_cloud(n, 2, 600 + i as u64);
        let fms = distance_matrix(&pc);
        let f = rips_filtration(&fms, 2, pc.diameter()).unwrap();
        let bc = persistent_homology(&f, true, false).unwrap();
        let count = bc.count(1);
        pass &= count <= 5 * n;
        let max_link =
            (0..n).map(|v| link_ph0_count(&fms, v).unwrap()).max().unwrap();
        pass &= max_link <= 5;
        detail.push_str(&format!("n={n}: |PH1|={count} (<= {}), max link {max_link}; ", 5 * n));
    }
    report(5, "Rips PH1 linearity", pass, detail.trim_end_matches("; "));
}

#[test]
fn criterion_06_sierpinski_dimensions() {
    let pc = gen_sierpinski(50_000, 20260823);
    let deltas: Vec<f64> = (3..=7).map(|k| 2f64.powi(-k)).collect();
    let box_est = estimate_box_dimension(&pc, &deltas).unwrap().estimate;
    let box_ok = (box_est - 1.585).abs() <= 0.05;

    // single-seed estimates at these sizes scatter by about ±0.1, so both
    // sampling-based estimators are averaged over a fixed seed ensemble;
    // the low-alpha grid keeps the PH inversion in its reliable regime
    let sizes = [500usize, 1000, 2000, 4000];
    let (mut ph_sum, mut mst_sum) = (0.0, 0.0);
    let seeds = 1u64..=6;
    for seed in seeds.clone() {
        let spec = GeneratorSpec {
            family: Family::Sierpinski,
            n: 0,
            seed,
            params: FamilyParams::default(),
        };
        ph_sum += estimate_ph_dimension(&spec, 1, ComplexKind::Alpha2d, &sizes, &[0.4, 0.6, 0.8])
            .unwrap()
            .estimate;
        mst_sum += estimate_mst_dimension(&spec, &sizes, &[0.4, 0.6, 0.8, 1.0, 1.2])
            .unwrap()
            .estimate;
    }
    let count = seeds.count() as f64;
    let ph_est = ph_sum / count;
    let mst_est = mst_sum / count;
    let ph_ok = (1.39..=1.79).contains(&ph_est);
    let mst_ok = (mst_est - 1.585).abs() <= 0.15;

    report(
        6,
        "Sierpinski dimension agreement",
        box_ok && ph_ok && mst_ok,
        &format!("box {box_est:.3}, PH1 {ph_est:.3}, MST {mst_est:.3}"),
    );
}

#[test]
fn criterion_07_arcs_experiment() {
    let r = arcs_experiment(&[50, 100, 200, 400]).unwrap();
    let slope_ok = (1.3..=1.7).contains(&r.count_slope);
    let ratio_ok = r.e11_ratio < 3.0;
    report(
        7,
        "arcs growth and boundedness",
        slope_ok && ratio_ok,
        &format!("count slope {:.3}, E_1^1 max/min {:.3}", r.count_slope, r.e11_ratio),
    );
}

#[test]
fn criterion_08_tp_formulas() {
    let v1 = tp1(130.0, 100.0, -100.0).unwrap();
    let v2 = tp2(100.0, 30.0, -30.0).unwrap();
    let corner1 = 900.0 / 260.0;
    let corner2 = 0.5 * (109.0 - 10900f64.sqrt());
    let mut pass = (v1 - corner1).abs() < 1e-9 && (v2 - corner2).abs() < 1e-9;
    for n in [100.0, 400.0] {
        pass &= verify_tp_minima(n, 3.0, 32).unwrap().pass;
    }
    report(8, "TP corner formulas", pass, &format!("tp1 {v1:.6}, tp2 {v2:.6}"));
}

#[test]
fn criterion_09_tail_exponents() {
    let mut lengths = Vec::new();
    for k in 0..=10u32 {
        let y = 2f64.powi(-(k as i32));
        lengths.extend(std::iter::repeat(y).take(4usize.pow(k)));
    }
    let t = tail_exponent_pair(&lengths).unwrap();
    let pass = (1.95..=2.05).contains(&t.sum_exponent)
        && (1.95..=2.05).contains(&t.count_exponent);
    report(
        9,
        "tail exponent equivalence",
        pass,
        &format!("sum {:.4}, count {:.4}", t.sum_exponent, t.count_exponent),
    );
}

#[test]
fn criterion_10_xi_ground_truth() {
    // independent oracle: no triple in [N]^2 for N <= 3 reaches persistence
    // above sqrt(2) + 1, so nothing can be disqualified
    let threshold = 2f64.sqrt() + 1.0;
    let mut oracle_max: f64 = 0.0;
    for n in [2i64, 3] {
        let grid: Vec<(i64, i64)> =
            (1..=n).flat_map(|x| (1..=n).map(move |y| (x, y))).collect();
        for i in 0..grid.len() {
            for j in i + 1..grid.len() {
                for k in j + 1..grid.len() {
                    if let Some(p) = oracle_triangle_persistence(grid[i], grid[j], grid[k]) {
                        oracle_max = oracle_max.max(p);
                    }
                }
            }
        }
    }
    let r2 = xi_search(2, 2, None).unwrap();
    let r3 = xi_search(3, 2, None).unwrap();
    let pass = oracle_max < threshold
        && (r2.size, r2.exact) == (4, true)
        && (r3.size, r3.exact) == (9, true);
    report(
        10,
        "xi search ground truth",
        pass,
        &format!("xi(2) = {}, xi(3) = {}, oracle max persistence {oracle_max:.4}", r2.size, r3.size),
    );
}

/// From-scratch triangle persistence for the oracle: circumradius by the
/// shoelace formula minus half the longest edge, acute triangles only.
fn oracle_triangle_persistence(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> Option<f64> {
    let d2 = |p: (i64, i64), q: (i64, i64)| ((p.0 - q.0).pow(2) + (p.1 - q.1).pow(2)) as f64;
    let (ab, bc, ca) = (d2(a, b), d2(b, c), d2(c, a));
    let longest = ab.max(bc).max(ca);
    if longest >= ab + bc + ca - longest {
        return None; // right or obtuse
    }
    let area2 = ((b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)).abs() as f64;
    if area2 == 0.0 {
        return None;
    }
    let r = (ab * bc * ca).sqrt() / (2.0 * area2);
    Some(r - longest.sqrt() / 2.0)
}
