//! Built-in desk-scale verification suite: fast, deterministic re-checks of
//! the library's pinned behaviors, printed as a pass/fail table. Exit 0 iff
//! every selected check passes.

use phdim_core::dimension::tail_exponent_pair;
use phdim_core::extremal::{tp1, tp2, verify_tp_minima, xi_search};
use phdim_core::filtration::{cech_filtration, jitter_cloud, rips_filtration, ComplexKind};
use phdim_core::generators::{gen_bipartite_space, gen_segment, Family, FamilyParams, GeneratorSpec};
use phdim_core::metric::{hausdorff_distance, PointCloud};
use phdim_core::mst::{estimate_mst_dimension, verify_mst_ph0_correspondence};
use phdim_core::persistence::{bottleneck_distance, persistent_homology};
use phdim_core::rng::SplitMix64;

type Check = (&'static str, fn() -> Result<(), String>);

const CHECKS: &[Check] = &[
    ("bipartite-exact-counts", check_bipartite),
    ("equilateral-cech-barcode", check_equilateral),
    ("mst-ph0-bijection", check_mst_bijection),
    ("bottleneck-stability", check_stability),
    ("segment-mst-dimension", check_segment_dimension),
    ("tp-corner-formulas", check_tp_corners),
    ("tail-exponent-pair", check_tail_exponents),
    ("xi-ground-truth", check_xi),
];

pub fn run(filter: Option<&str>) -> i32 {
    let selected: Vec<&Check> = CHECKS
        .iter()
        .filter(|(name, _)| filter.map(|f| name.contains(f)).unwrap_or(true))
        .collect();
    if selected.is_empty() {
        eprintln!("no checks match filter");
        return 2;
    }
    let width = selected.iter().map(|(name, _)| name.len()).max().unwrap();
    let mut failures = 0;
    for (name, check) in selected {
        match check() {
            Ok(()) => println!("{name:width$}  pass"),
            Err(reason) => {
                failures += 1;
                println!("{name:width$}  FAIL  {reason}");
            }
        }
    }
    if failures == 0 {
        0
    } else {
        1
    }
}

fn check(cond: bool, reason: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(reason())
    }
}

fn random_cloud(n: usize, seed: u64) -> PointCloud {
    let mut rng = SplitMix64::new(seed);
    PointCloud::new((0..n).map(|_| (0..2).map(|_| rng.next_f64()).collect()).collect())
        .expect("random cloud is well formed")
}

fn check_bipartite() -> Result<(), String> {
    for level in 1..=3u32 {
        let fms = gen_bipartite_space(level).map_err(|e| e.to_string())?;
        let f = rips_filtration(&fms, 2, 1.0).map_err(|e| e.to_string())?;
        let barcode = persistent_homology(&f, true, false).map_err(|e| e.to_string())?;
        let intervals = barcode.finite_in_degree(1);
        let expected = (1usize << (2 * level)) - (1 << (level + 1)) + 1;
        check(intervals.len() == expected, || {
            format!("level {level}: {} intervals, expected {expected}", intervals.len())
        })?;
        let birth = 0.5f64.powi(level as i32 + 1);
        let death = 0.5f64.powi(level as i32);
        check(
            intervals.iter().all(|iv| iv.birth == birth && iv.death == Some(death)),
            || format!("level {level}: interval endpoints off"),
        )?;
    }
    Ok(())
}

fn check_equilateral() -> Result<(), String> {
    let pc = PointCloud::new(vec![
        vec![0.0, 0.0],
        vec![1.0, 0.0],
        vec![0.5, 3f64.sqrt() / 2.0],
    ])
    .map_err(|e| e.to_string())?;
    let f = cech_filtration(&pc, 2, 1.0).map_err(|e| e.to_string())?;
    let barcode = persistent_homology(&f, true, false).map_err(|e| e.to_string())?;
    let ph1 = barcode.finite_in_degree(1);
    check(ph1.len() == 1, || format!("{} degree-1 intervals", ph1.len()))?;
    let (birth, death) = (ph1[0].birth, ph1[0].death.unwrap());
    check(
        (birth - 0.5).abs() < 1e-9 && (death - 1.0 / 3f64.sqrt()).abs() < 1e-9,
        || format!("interval ({birth}, {death})"),
    )
}

fn check_mst_bijection() -> Result<(), String> {
    for seed in 0..5 {
        let pc = random_cloud(60, 100 + seed);
        for kind in [ComplexKind::Rips, ComplexKind::Cech] {
            let report =
                verify_mst_ph0_correspondence(&pc, kind).map_err(|e| e.to_string())?;
            check(report.pass, || {
                format!("seed {seed} {kind}: max diff {:.2e}", report.max_abs_diff)
            })?;
        }
    }
    Ok(())
}

fn check_stability() -> Result<(), String> {
    for seed in 0..10 {
        let pc = random_cloud(20, 200 + seed);
        let moved = jitter_cloud(&pc, 0.02, 300 + seed);
        let a = persistent_homology(
            &cech_filtration(&pc, 2, 2.0).map_err(|e| e.to_string())?,
            true,
            false,
        )
        .map_err(|e| e.to_string())?;
        let b = persistent_homology(
            &cech_filtration(&moved, 2, 2.0).map_err(|e| e.to_string())?,
            true,
            false,
        )
        .map_err(|e| e.to_string())?;
        let h = hausdorff_distance(&pc, &moved).map_err(|e| e.to_string())?;
        for degree in 0..2 {
            let d = bottleneck_distance(&a, &b, degree).map_err(|e| e.to_string())?;
            check(d <= h + 1e-9, || format!("seed {seed} degree {degree}: {d} > {h}"))?;
        }
    }
    Ok(())
}

fn check_segment_dimension() -> Result<(), String> {
    // sanity check before the estimate: the generator itself
    let seg = gen_segment(3);
    check(seg.points()[1] == vec![0.5, 0.0], || "segment spacing off".into())?;
    let spec = GeneratorSpec {
        family: Family::Segment,
        n: 0,
        seed: 0,
        params: FamilyParams::default(),
    };
    let est = estimate_mst_dimension(&spec, &[200, 400, 800, 1600], &[0.5, 1.0, 1.5, 2.0])
        .map_err(|e| e.to_string())?;
    check((est.estimate - 1.0).abs() <= 0.1, || format!("estimate {:.3}", est.estimate))
}

fn check_tp_corners() -> Result<(), String> {
    let v1 = tp1(130.0, 100.0, -100.0).map_err(|e| e.to_string())?;
    let v2 = tp2(100.0, 30.0, -30.0).map_err(|e| e.to_string())?;
    check((v1 - 900.0 / 260.0).abs() < 1e-9, || format!("tp1 corner {v1}"))?;
    check((v2 - 0.5 * (109.0 - 10900f64.sqrt())).abs() < 1e-9, || {
        format!("tp2 corner {v2}")
    })?;
    let report = verify_tp_minima(100.0, 3.0, 24).map_err(|e| e.to_string())?;
    check(report.pass, || "grid minima not at the corner".into())
}

fn check_tail_exponents() -> Result<(), String> {
    let mut lengths = Vec::new();
    for k in 0..=10u32 {
        lengths.extend(std::iter::repeat(2f64.powi(-(k as i32))).take(4usize.pow(k)));
    }
    let t = tail_exponent_pair(&lengths).map_err(|e| e.to_string())?;
    check(
        (1.95..=2.05).contains(&t.sum_exponent) && (1.95..=2.05).contains(&t.count_exponent),
        || format!("sum {:.3} count {:.3}", t.sum_exponent, t.count_exponent),
    )
}

fn check_xi() -> Result<(), String> {
    let r2 = xi_search(2, 2, None).map_err(|e| e.to_string())?;
    let r3 = xi_search(3, 2, None).map_err(|e| e.to_string())?;
    check(r2.size == 4 && r2.exact, || format!("xi(2) = {} exact {}", r2.size, r2.exact))?;
    check(r3.size == 9 && r3.exact, || format!("xi(3) = {} exact {}", r3.size, r3.exact))
}
