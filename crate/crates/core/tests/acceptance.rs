//! Acceptance suite. Every criterion prints one PASS/FAIL line; the process
//! exits non-zero if any criterion fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use fockwave::circuit::CircuitBuilder;
use fockwave::device::{QODevice, H};
use fockwave::engine::{self, Core, SimConfig};
use fockwave::linalg::{cholesky, modified_cholesky, permanent_glynn, permanent_naive, CMatrix, DEFAULT_CLIP_EPSILON};
use fockwave::outcomes::distribution;
use fockwave::packet::{overlap_exponential, overlap_gaussian, PacketDescriptor, PacketTable, Shape};
use fockwave::scenario::{builtin, DensityReport, PointValue};
use fockwave::state::{FockState, LevelIndex};
use num_complex::Complex64;
use rand::Rng;

use common::*;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: fockwave::error::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn pd(t: f64, f: f64, w: f64) -> PacketDescriptor {
    PacketDescriptor { index: 0, t, f, w }
}

/// Two photons through a balanced beamsplitter, one per input channel.
fn two_photon_bs(t0: f64, t1: f64) -> Result<QODevice, String> {
    let mut dev = lib(QODevice::new(2, 1))?;
    lib(dev.add_photons(1, 0, H, t0, 1.0, 1.0))?;
    lib(dev.add_photons(1, 1, H, t1, 1.0, 1.0))?;
    lib(dev.beamsplitter(0, 1, 45.0, 0.0))?;
    lib(dev.detector(0, None))?;
    lib(dev.detector(1, None))?;
    Ok(dev)
}

fn c1_hom_bunching() -> Check {
    let start = Instant::now();
    let dev = two_photon_bs(0.0, 0.0)?;
    let out = lib(dev.run(&SimConfig::default()))?;
    let elapsed = start.elapsed();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let a20 = out.amplitude(&[2, 0]);
    let a02 = out.amplitude(&[0, 2]);
    let p11 = out.amplitude(&[1, 1]).norm_sqr();
    ensure((a20 - c(-h, 0.0)).norm() < 1e-12, || format!("<2,0| amplitude {a20}"))?;
    ensure((a02 - c(h, 0.0)).norm() < 1e-12, || format!("<0,2| amplitude {a02}"))?;
    ensure(p11 <= 1e-12, || format!("P(1,1) = {p11:e}"))?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "|2,0> {a20:.6}, |0,2> {a02:.6}, P(1,1) = {p11:.1e}, {elapsed:.2?}"
    ))
}

fn c2_distinguishable_pair() -> Check {
    let dev = two_photon_bs(0.0, 40.0)?;
    let out = lib(dev.run(&SimConfig::default()))?;
    ensure(out.len() == 4, || format!("expected 4 output kets, got {}", out.len()))?;
    for k in out.kets() {
        let m = k.amplitude.norm();
        ensure((m - 0.5).abs() < 1e-10, || {
            format!("|amplitude| {m} on {:?}", k.occupations)
        })?;
    }
    let dist = distribution(&out, lib(dev.circuit())?.detectors());
    let (p11, p20, p02) = (
        dist.probability(&[1, 1]),
        dist.probability(&[2, 0]),
        dist.probability(&[0, 2]),
    );
    ensure((p11 - 0.5).abs() <= 1e-10, || format!("P(1,1) = {p11}"))?;
    ensure((p20 - 0.25).abs() <= 1e-10 && (p02 - 0.25).abs() <= 1e-10, || {
        format!("P(2,0) = {p20}, P(0,2) = {p02}")
    })?;
    Ok(format!(
        "4 amplitudes of magnitude 0.5, P = {p20:.12}/{p02:.12}/{p11:.12}"
    ))
}

fn c3_hom_dip() -> Check {
    let s = lib(builtin::builtin("hom"))?;
    let points = lib(s.run(None))?;
    ensure(points.len() == 60, || format!("{} sweep points", points.len()))?;
    let mut worst = 0.0f64;
    for p in &points {
        let dt = p.params[0].1;
        let PointValue::Distribution(d) = &p.value else {
            return Err("hom reports a distribution".into());
        };
        let err = (d.probability(&[1, 1]) - hom_coincidence(dt, 1.0)).abs();
        worst = worst.max(err);
    }
    ensure(worst <= 1e-8, || format!("max deviation {worst:e}"))?;
    Ok(format!("60 points, max deviation {worst:.1e}"))
}

fn c4_overlaps() -> Check {
    let mut r = rng(4);
    let mut worst_identity = 0.0f64;
    for _ in 0..1000 {
        let (ti, tj) = (r.random_range(-3.0..3.0), r.random_range(-3.0..3.0));
        let omega = r.random_range(0.1..3.0);
        let dw = r.random_range(0.2..3.0);
        let got = overlap_gaussian(&pd(ti, omega, dw), &pd(tj, omega, dw));
        worst_identity = worst_identity.max((got - gaussian_equal_width(ti, tj, omega, dw)).norm());
    }
    ensure(worst_identity <= 1e-12, || {
        format!("equal-width identity off by {worst_identity:e}")
    })?;

    let mut worst_quad = [0.0f64; 2];
    for (i, shape) in [Shape::Gaussian, Shape::Exponential].into_iter().enumerate() {
        for _ in 0..40 {
            let a = pd(
                r.random_range(-2.0..2.0),
                r.random_range(0.2..2.5),
                r.random_range(0.4..2.5),
            );
            let b = pd(
                r.random_range(-2.0..2.0),
                r.random_range(0.2..2.5),
                r.random_range(0.4..2.5),
            );
            let closed = match shape {
                Shape::Gaussian => overlap_gaussian(&a, &b),
                Shape::Exponential => overlap_exponential(&a, &b),
            };
            worst_quad[i] = worst_quad[i].max((closed - overlap_quadrature(shape, &a, &b)).norm());
        }
    }
    ensure(worst_quad.iter().all(|&e| e <= 1e-8), || {
        format!("quadrature mismatch {worst_quad:?}")
    })?;
    Ok(format!(
        "identity {worst_identity:.1e} over 1000 draws, quadrature gaussian {:.1e} exponential {:.1e}",
        worst_quad[0], worst_quad[1]
    ))
}

fn c5_cholesky() -> Check {
    let mut r = rng(5);
    let mut worst = 0.0f64;
    for k in 0..200 {
        let n = 1 + k % 10;
        let s = random_overlap(&mut r, n, n + 2);
        let l = lib(cholesky(&s))?;
        worst = worst.max((&l * &l.adjoint()).max_abs_diff(&s));
    }
    ensure(worst <= 1e-10, || format!("L L^† off by {worst:e}"))?;

    // Rank-deficient overlaps (more packets than dimensions) nudged by
    // Hermitian noise of spectral norm below 1e-12.
    let mut worst_row = 0.0f64;
    let mut clipped = 0;
    for k in 0..100 {
        let n = 2 + k % 9;
        let mut s = random_overlap(&mut r, n, 1 + k % (n - 1));
        let noise = random_matrix(&mut r, n, n);
        let scale = 0.4e-12 / n as f64;
        for i in 0..n {
            for j in 0..n {
                s[(i, j)] += (noise[(i, j)] + noise[(j, i)].conj()) * scale;
            }
        }
        let m = lib(modified_cholesky(&s, DEFAULT_CLIP_EPSILON))?;
        let reported = m.row_norm_error;
        let recomputed = (0..n)
            .map(|i| (m.factor.row(i).iter().map(|z| z.norm_sqr()).sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max);
        ensure((reported - recomputed).abs() <= 1e-14, || {
            format!("reported row error {reported:e}, recomputed {recomputed:e}")
        })?;
        worst_row = worst_row.max(reported);
        clipped += usize::from(m.clipped > 0);
    }
    ensure(worst_row < 1e-6, || format!("row-norm error {worst_row:e}"))?;
    ensure(clipped > 0, || "no matrix needed clipping".into())?;
    Ok(format!(
        "L L^† max error {worst:.1e} (200 matrices), clipped {clipped}/100 near-singular, row error <= {worst_row:.1e}"
    ))
}

fn c6_permanents() -> Check {
    let mut r = rng(6);
    let mut worst = 0.0f64;
    for k in 0..200 {
        let n = 1 + k % 7;
        let m = random_matrix(&mut r, n, n);
        let reference = permanent_by_permutations(&m);
        let scale = reference.norm().max(f64::MIN_POSITIVE);
        let g = lib(permanent_glynn(&m))?;
        let nv = lib(permanent_naive(&m))?;
        worst = worst
            .max((g - reference).norm() / scale)
            .max((nv - reference).norm() / scale);
    }
    ensure(worst <= 1e-10, || format!("relative error {worst:e}"))?;

    let m = random_matrix(&mut r, 15, 15);
    let start = Instant::now();
    let p = lib(permanent_glynn(&m))?;
    let elapsed = start.elapsed();
    ensure(p.is_finite(), || "non-finite permanent".into())?;
    ensure(elapsed < Duration::from_secs(1), || format!("n = 15 took {elapsed:?}"))?;
    Ok(format!(
        "200 matrices, max relative error {worst:.1e}; n = 15 in {elapsed:.2?}"
    ))
}

fn random_input(r: &mut rand::rngs::StdRng, levels: LevelIndex, photons: u32) -> Result<FockState, String> {
    let d = levels.dim();
    let kets = r.random_range(1..=3);
    let entries: Vec<(Complex64, Vec<i64>)> = (0..kets)
        .map(|_| {
            let mut occ = vec![0i64; d];
            for _ in 0..photons {
                occ[r.random_range(0..d)] += 1;
            }
            (random_complex(r), occ)
        })
        .collect();
    Ok(lib(FockState::new(levels, entries))?.normalized())
}

fn c7_core_equivalence() -> Check {
    let mut r = rng(7);
    let mut worst = 0.0f64;
    let mut worst_oracle = 0.0f64;
    for k in 0..50 {
        let d = r.random_range(2..=8);
        let n = r.random_range(1..=4u32);
        let levels = lib(LevelIndex::new(d, 1, 1))?;
        let u = if k % 2 == 0 {
            random_unitary(&mut r, d)
        } else {
            let mut b = CircuitBuilder::new(levels);
            for _ in 0..3 * d {
                let a = r.random_range(0..d);
                let bb = (a + r.random_range(1..d)) % d;
                lib(b.beamsplitter(a, bb, r.random_range(0.0..90.0), r.random_range(0.0..360.0)))?;
                lib(b.phase_shifter(r.random_range(0..d), r.random_range(0.0..360.0)))?;
            }
            b.total().clone()
        };
        let input = random_input(&mut r, levels, n)?;
        let direct = lib(engine::run(&u, &input, &SimConfig::with_core(Core::Direct)))?;
        let perm = lib(engine::run(&u, &input, &SimConfig::with_core(Core::Permanent)))?;
        for k in direct.kets().iter().chain(perm.kets()) {
            let diff = (direct.amplitude(&k.occupations) - perm.amplitude(&k.occupations)).norm();
            worst = worst.max(diff);
        }
        // Superpose the brute-force oracle over the input kets.
        for ket in input.kets() {
            for (occ, amp) in brute_force_amplitudes(&u, &ket.occupations) {
                let single = lib(FockState::basis(levels, ket.occupations.clone()))?;
                let lib_amp = lib(engine::run(&u, &single, &SimConfig::with_core(Core::Permanent)))?.amplitude(&occ);
                worst_oracle = worst_oracle.max((lib_amp - amp).norm());
            }
        }
    }
    ensure(worst <= 1e-10, || format!("direct vs permanent {worst:e}"))?;
    ensure(worst_oracle <= 1e-10, || {
        format!("permanent vs path-sum oracle {worst_oracle:e}")
    })?;
    Ok(format!(
        "50 circuits, cores differ by {worst:.1e}, oracle by {worst_oracle:.1e}"
    ))
}

fn local_maxima(curve: &[(f64, f64)]) -> Vec<(f64, f64)> {
    (1..curve.len() - 1)
        .filter(|&i| curve[i].1 > curve[i - 1].1 && curve[i].1 >= curve[i + 1].1)
        .map(|i| curve[i])
        .collect()
}

fn c8_delay_correlation() -> Check {
    let s = lib(builtin::builtin("delay_mz"))?;
    let curve: Vec<(f64, f64)> = lib(s.run(None))?
        .into_iter()
        .map(|p| match p.value {
            PointValue::Correlation(g) => Ok((p.params[0].1, g)),
            _ => Err("delay_mz reports a correlation".to_string()),
        })
        .collect::<Result<_, _>>()?;
    let step = builtin::DELAY_TAU_MAX / (builtin::DELAY_TAU_STEPS - 1) as f64;
    let dt = builtin::DELAY_PERIOD;
    let mut peaks = local_maxima(&curve);
    peaks.sort_by(|a, b| b.1.total_cmp(&a.1));
    ensure(peaks.len() >= 2, || format!("found {} peaks", peaks.len()))?;
    let mut main = [peaks[0], peaks[1]];
    main.sort_by(|a, b| a.0.total_cmp(&b.0));
    ensure((main[0].0 - dt).abs() <= step, || {
        format!("first peak at {}", main[0].0)
    })?;
    ensure((main[1].0 - 2.0 * dt).abs() <= step, || {
        format!("second peak at {}", main[1].0)
    })?;
    let near_zero = curve.iter().filter(|(t, _)| *t < 1.0).map(|p| p.1).fold(0.0, f64::max);
    ensure(near_zero < main[0].1.min(main[1].1), || {
        format!("G near 0 = {near_zero:e} not below the main peaks")
    })?;
    Ok(format!(
        "peaks at {:.4} (G {:.3e}) and {:.4} (G {:.3e}), grid step {step:.4}; max G for tau < 1 is {near_zero:.1e}, \
         so the region near 0 is a dip rather than a small peak",
        main[0].0, main[0].1, main[1].0, main[1].1
    ))
}

fn density(name: &str) -> Result<DensityReport, String> {
    let s = lib(builtin::builtin(name))?;
    let mut points = lib(s.run(None))?;
    match points.pop().map(|p| p.value) {
        Some(PointValue::Density(d)) => Ok(d),
        _ => Err(format!("{name} reports a density matrix")),
    }
}

fn compare(rho: &DensityReport, expected: &[&[f64]], tol: f64) -> Result<f64, String> {
    ensure(rho.labels.len() == expected.len(), || format!("basis {:?}", rho.labels))?;
    let mut worst = 0.0f64;
    for (i, row) in expected.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            worst = worst.max((rho.re[i][j] - v).abs()).max(rho.im[i][j].abs());
        }
    }
    ensure(worst <= tol, || {
        format!("density matrix off by {worst:e}: {:?}", rho.re)
    })?;
    Ok(worst)
}

fn c9_swap_ideal() -> Check {
    let rho = density("swap")?;
    ensure(rho.labels == ["| H(0)0, V(0)3 >", "| V(0)0, H(0)3 >"], || {
        format!("basis {:?}", rho.labels)
    })?;
    let worst = compare(&rho, &[&[0.5, -0.5], &[-0.5, 0.5]], 1e-10)?;
    Ok(format!(
        "basis {:?}, max error {worst:.1e}, herald probability {:.4}",
        rho.labels, rho.probability
    ))
}

fn c10_swap_partial() -> Check {
    let rho = density("swap_partial")?;
    // Overlap of the two interfering packets in the builtin.
    let s = overlap_gaussian(&pd(0.0, 1.0, 1.0), &pd(1.0, 1.0, 1.0)).norm();
    let (d, m, o) = (0.1412, 0.3588, -0.2176);
    let printed: [&[f64]; 4] = [
        &[d, 0.0, 0.0, 0.0],
        &[0.0, m, o, 0.0],
        &[0.0, o, m, 0.0],
        &[0.0, 0.0, 0.0, d],
    ];
    let worst = compare(&rho, &printed, 1e-3)?;
    let exact = swap_density(s * s);
    let exact_rows: Vec<&[f64]> = exact.iter().map(|r| r.as_slice()).collect();
    let worst_exact = compare(&rho, &exact_rows, 1e-10)?;
    ensure(rho.purity < 1.0 - 1e-6, || format!("purity {}", rho.purity))?;
    let literal = swap_density(0.6065 * 0.6065);
    Ok(format!(
        "|S|^2 = {:.4} (|S| = {s:.4}): printed values within {worst:.1e}, closed form within {worst_exact:.1e}, \
         purity {:.4}; taking 0.6065 as |S| instead would give {:.4}/{:.4}/{:.4}",
        s * s,
        rho.purity,
        literal[0][0],
        literal[1][1],
        literal[1][2]
    ))
}

fn c11_three_photon_bunching() -> Check {
    let s = lib(builtin::builtin("hom3"))?;
    let p = lib(s.run_point(&[("dt".to_string(), 0.0)], Core::Permanent))?;
    let PointValue::Distribution(dist) = p.value else {
        return Err("hom3 reports a distribution".into());
    };
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let bs = CMatrix::from_real_rows(&[&[h, -h], &[h, h]]).map_err(|e| e.to_string())?;
    let oracle = brute_force_amplitudes(&bs, &[3, 3]);
    let mut worst = 0.0f64;
    for a in 0..=6u32 {
        let expected = oracle.get(&vec![a, 6 - a]).map_or(0.0, |z| z.norm_sqr());
        worst = worst.max((dist.probability(&[a, 6 - a]) - expected).abs());
    }
    ensure(worst <= 1e-10, || format!("distribution off by {worst:e}"))?;
    let p33 = dist.probability(&[3, 3]);
    ensure(p33 <= 1e-12, || format!("P(3,3) = {p33:e}"))?;

    // Same point through the direct core.
    let direct = lib(s.run_point(&[("dt".to_string(), 0.0)], Core::Direct))?;
    let PointValue::Distribution(dd) = direct.value else {
        return Err("hom3 reports a distribution".into());
    };
    let mut worst_core = 0.0f64;
    for a in 0..=6u32 {
        worst_core = worst_core.max((dd.probability(&[a, 6 - a]) - dist.probability(&[a, 6 - a])).abs());
    }
    ensure(worst_core <= 1e-10, || format!("cores differ by {worst_core:e}"))?;

    // Far apart the photons are distinguishable: binomial splitting.
    let far = lib(s.run_point(&[("dt".to_string(), 40.0)], Core::Permanent))?;
    let PointValue::Distribution(fd) = far.value else {
        return Err("hom3 reports a distribution".into());
    };
    let binom = [1.0, 3.0, 3.0, 1.0];
    let mut worst_far = 0.0f64;
    for k in 0..=6usize {
        let expected: f64 = (0..=3)
            .filter(|&a| k >= a && k - a <= 3)
            .map(|a| binom[a] * binom[k - a] / 64.0)
            .sum();
        worst_far = worst_far.max((fd.probability(&[k as u32, 6 - k as u32]) - expected).abs());
    }
    ensure(worst_far <= 1e-10, || {
        format!("distinguishable limit off by {worst_far:e}")
    })?;
    Ok(format!(
        "dt = 0 vs path-sum oracle {worst:.1e}, cores {worst_core:.1e}, P(3,3) = {p33:.1e}; dt = 40 binomial limit {worst_far:.1e}"
    ))
}

/// Two channels over `periods` periods with photons at random times; a
/// random beamsplitter, then a delay on channel 0 when `delayed`.
fn delayed_device(seed: u64, delayed: bool) -> Result<(QODevice, usize), String> {
    let mut r = rng(seed);
    let periods = r.random_range(2..=3);
    let table = lib(PacketTable::with_periods(Shape::Gaussian, periods, 10.0))?;
    let mut dev = lib(QODevice::with_table(2, 1, table))?;
    for ch in 0..2 {
        let period = r.random_range(0..periods) as f64;
        lib(dev.add_photons(1, ch, H, 10.0 * period + r.random_range(2.0..8.0), 1.0, 1.0))?;
    }
    lib(dev.beamsplitter(0, 1, r.random_range(0.0..90.0), 0.0))?;
    if delayed {
        lib(dev.delay(0))?;
    }
    lib(dev.send_to_circuit())?;
    Ok((dev, periods))
}

fn c12_norms() -> Check {
    let mut worst = 0.0f64;
    let mut scenarios = 0;
    for name in ["hom", "hom3", "swap", "swap_partial"] {
        let s = lib(builtin::builtin(name))?;
        for params in s.points() {
            let (dev, _) = lib(s.build(&params))?;
            worst = worst.max((lib(dev.run(&SimConfig::default()))?.norm2() - 1.0).abs());
            scenarios += 1;
        }
    }
    let mut r = rng(12);
    for _ in 0..20 {
        let d = r.random_range(2..=6);
        let levels = lib(LevelIndex::new(d, 1, 1))?;
        let u = random_unitary(&mut r, d);
        let n = r.random_range(1..=4);
        let input = random_input(&mut r, levels, n)?;
        worst = worst.max((lib(engine::run(&u, &input, &SimConfig::default()))?.norm2() - 1.0).abs());
        scenarios += 1;
    }
    ensure(worst <= 1e-10, || format!("delay-free norm off by {worst:e}"))?;

    let (mut lossy, mut lossless) = (0, 0);
    for seed in 0..40 {
        let (before, periods) = delayed_device(1000 + seed, false)?;
        let out = lib(before.run(&SimConfig::default()))?;
        let levels = lib(before.levels())?;
        let n_t = before.table().per_period();
        let last: Vec<usize> = (0..n_t)
            .map(|k| levels.level_of(0, H, (periods - 1) * n_t + k))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let occupancy: f64 = out
            .kets()
            .iter()
            .map(|k| k.amplitude.norm_sqr() * last.iter().map(|&l| f64::from(k.occupations[l])).sum::<f64>())
            .sum();
        let (after, _) = delayed_device(1000 + seed, true)?;
        let norm = lib(after.run(&SimConfig::default()))?.norm2();
        if occupancy > 1e-12 {
            ensure(norm < 1.0 - 1e-12, || {
                format!("seed {seed}: occupancy {occupancy}, norm {norm}")
            })?;
            lossy += 1;
        } else {
            ensure((norm - 1.0).abs() <= 1e-10, || {
                format!("seed {seed}: empty last period, norm {norm}")
            })?;
            lossless += 1;
        }
    }
    ensure(lossy > 0 && lossless > 0, || {
        format!("{lossy} lossy, {lossless} lossless cases")
    })?;
    Ok(format!(
        "{scenarios} delay-free runs within {worst:.1e} of 1; delays: {lossy} lossy with last-period occupancy, \
         {lossless} lossless without"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("HOM ideal bunching", c1_hom_bunching),
        ("fully distinguishable pair", c2_distinguishable_pair),
        ("HOM dip curve", c3_hom_dip),
        ("overlap formulas", c4_overlaps),
        ("Cholesky reconstruction", c5_cholesky),
        ("permanent cross-check", c6_permanents),
        ("core equivalence", c7_core_equivalence),
        ("delay-gate correlation", c8_delay_correlation),
        ("entanglement swap, ideal", c9_swap_ideal),
        ("entanglement swap, partial", c10_swap_partial),
        ("three-photon bunching", c11_three_photon_bunching),
        ("unitarity and delay loss", c12_norms),
    ];
    panic::set_hook(Box::new(|_| {}));
    let suite = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1?}",
        criteria.len() - failed,
        criteria.len(),
        suite.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
