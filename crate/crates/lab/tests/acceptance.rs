//! Acceptance criteria, one line each. Runs without the libtest harness so
//! every criterion reports even when an earlier one fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use canonmap_core::diagonal::{to_jacobi, transform_ratios, DiagonalParams};
use canonmap_core::fiberlab::{
    run_finite_field_suite, run_interiorsum_check, run_sampling_check, run_symbolic_suite, SuiteReport,
};
use canonmap_core::genus9::{cover_psi, Genus9Curve, Point, Q_INDEX};
use canonmap_core::jacobi::{AdditionLawId, JacobiCurve, TorsionLabel};
use canonmap_core::scalars::{Field, Fp, PrimeField, Rational, Tolerance, C64};
use canonmap_core::sections::SectionId;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Verdict = Result<String, String>;
type Criterion<'a> = (&'a str, Box<dyn Fn() -> Verdict + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))?;
    Ok(t)
}

fn check_clean(r: &SuiteReport, name: &str, count: usize) -> Result<f64, String> {
    let c = r.check(name).ok_or_else(|| format!("{name}: missing"))?;
    ensure(c.failed == 0, || format!("{name}: {} of {} failed", c.failed, c.count))?;
    ensure(c.count == count, || format!("{name}: {} checks, expected {count}", c.count))?;
    Ok(c.max_residual)
}

/// Max-modulus normalization: the largest entry becomes 1.
fn normalize(p: &[C64]) -> Vec<C64> {
    let k = (0..p.len()).max_by(|&i, &j| p[i].norm().total_cmp(&p[j].norm())).unwrap();
    let s = p[k].0.inv();
    p.iter().map(|z| C64(z.0 * s)).collect()
}

/// Distance between projective points, both scaled at the pivot of `a`.
fn proj_gap(a: &[C64], b: &[C64]) -> f64 {
    let k = (0..a.len()).max_by(|&i, &j| a[i].norm().total_cmp(&a[j].norm())).unwrap();
    if b[k].norm() < 1e-300 {
        return f64::INFINITY;
    }
    let (sa, sb) = (a[k].0.inv(), b[k].0.inv());
    a.iter().zip(b).map(|(x, y)| (x.0 * sa - y.0 * sb).norm()).fold(0.0, f64::max)
}

fn c64s(v: &Value) -> Vec<C64> {
    v.as_array().unwrap().iter().map(|z| C64::new(z[0].as_f64().unwrap(), z[1].as_f64().unwrap())).collect()
}

fn point(v: &Value) -> Point {
    c64s(v).try_into().unwrap()
}

fn sections(p: &Point, q: &Point) -> Vec<C64> {
    SectionId::ALL.iter().map(|s| s.eval(p, q)).collect()
}

fn canonmap(args: &[&str]) -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_canonmap")).args(args).output().map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || {
        format!("canonmap {args:?} exited {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr))
    })
}

fn gf(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let r = run_symbolic_suite();
    check_clean(&r, "compatibility", 36)?;
    check_clean(&r, "output-on-curve", 8)?;
    let t = within(start, Duration::from_secs(60))?;

    // evaluation at random GF(10007) pairs: every law pair is proportional
    // and every non-vanishing output lies on the curve
    let f = gf(10007);
    let curve = JacobiCurve::new(f.elem(3), f.elem(5)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..200 {
        let p = curve.random_point(&mut rng).unwrap();
        let q = curve.random_point(&mut rng).unwrap();
        let outs: Vec<[Fp; 4]> = AdditionLawId::ALL.iter().map(|&l| curve.apply_law(l, &p, &q)).collect();
        for a in &outs {
            ensure(a.iter().all(|x| x.is_zero()) || curve.contains(a), || format!("output off curve at {p}, {q}"))?;
            for b in &outs {
                for i in 0..4 {
                    for j in 0..4 {
                        ensure(a[i] * b[j] == a[j] * b[i], || format!("minor ({i},{j}) nonzero at {p}, {q}"))?;
                    }
                }
            }
        }
    }
    Ok(format!("36 compatibility and 8 on-curve identities reduce to zero in {t:.2?}"))
}

fn criterion_2() -> Verdict {
    let start = Instant::now();
    let r = run_symbolic_suite();
    check_clean(&r, "lawx-exceptional-graph", 12)?;
    let t = within(start, Duration::from_secs(5))?;
    let f = gf(10007);
    let curve = JacobiCurve::new(f.elem(3), f.elem(5)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let p = curve.random_point(&mut rng).unwrap();
        for g in [TorsionLabel::A, TorsionLabel::B, TorsionLabel::AB] {
            let q = curve.translate_by_torsion(g, &p);
            let out = curve.apply_law(AdditionLawId::LawX, &p, &q);
            ensure(out.iter().all(|x| x.is_zero()), || format!("LawX nonzero at ({p}, {g}.P)"))?;
        }
    }
    Ok(format!("LawX vanishes on Q = g.P for a, b, ab in {t:.2?}"))
}

fn criterion_3() -> Verdict {
    let start = Instant::now();
    let r = run_finite_field_suite(13, 3, 5, 42).map_err(|e| e.to_string())?;
    ensure(r.passed(), || format!("{:?}", r.failures))?;
    let n = r.check("identity").unwrap().count;
    for name in ["identity", "inverse"] {
        check_clean(&r, name, n)?;
    }
    check_clean(&r, "torsion-translation", 4 * n)?;
    for name in ["commutativity", "completeness", "lawx-exceptional-coset"] {
        check_clean(&r, name, n * n)?;
    }
    let triples = if n <= 25 { n * n * n } else { 10_000 };
    check_clean(&r, "associativity", triples)?;
    let t = within(start, Duration::from_secs(10))?;

    let f = gf(13);
    let curve = JacobiCurve::new(f.elem(3), f.elem(5)).unwrap();
    let p = curve.point([1, 1, 2, 3].map(|x| f.elem(x))).map_err(|e| e.to_string())?;
    let twice = curve.complete_add(&p, &p).map_err(|e| e.to_string())?;
    let expected = curve.point([12, 3, 5, 2].map(|x| f.elem(x))).map_err(|e| e.to_string())?;
    ensure(twice == expected, || format!("2.(1,1,2,3) = {twice}"))?;
    Ok(format!("{n} points, {triples} triples, 2.(1,1,2,3) = (12,3,5,2), {t:.2?}"))
}

fn criterion_4() -> Verdict {
    let start = Instant::now();
    let r = run_finite_field_suite(10007, 3, 5, 42).map_err(|e| e.to_string())?;
    ensure(r.passed(), || format!("{:?}", r.failures))?;
    check_clean(&r, "associativity", 10_000)?;
    let c = r.check("completeness").unwrap();
    ensure(c.count >= 1000, || format!("{} completeness pairs", c.count))?;
    let t = within(start, Duration::from_secs(60))?;
    Ok(format!("10000 triples, {} completeness pairs over GF(10007), {t:.2?}", c.count))
}

fn criterion_5() -> Verdict {
    let tol = Tolerance::default();
    let q = |n| Rational::from_int(n);
    let exact = DiagonalParams::new(q(1), q(2), q(3), q(4));
    let r = transform_ratios(&exact, &tol).map_err(|e| e.to_string())?;
    ensure(r.u == Rational::new(3, 2), || format!("u = {:?}", r.u))?;
    ensure(r.v == q(-2), || format!("v = {:?}", r.v))?;
    ensure(r.alpha2 == Rational::new(1, 2), || format!("alpha^2 = {:?}", r.alpha2))?;
    ensure(r.beta2 == q(1), || format!("beta^2 = {:?}", r.beta2))?;

    let c = |x| C64::real(x);
    let params = DiagonalParams::new(c(1.0), c(2.0), c(3.0), c(4.0));
    let data = to_jacobi(&params, &tol).map_err(|e| e.to_string())?;
    let (u, v) = (C64::real(1.5), C64::real(-2.0));
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let e = params.random_point(&mut rng).map_err(|e| e.to_string())?;
        let j = normalize(&data.forward(&e));
        let sq = |z: C64| z.0 * z.0;
        let r1 = u.0 * sq(j[0]) + sq(j[1]) - sq(j[2]);
        let r2 = v.0 * sq(j[0]) + sq(j[2]) - sq(j[3]);
        worst = worst.max(r1.norm()).max(r2.norm());
    }
    ensure(worst < 1e-10, || format!("max residual {worst:.3e}"))?;
    Ok(format!("u = 3/2, v = -2, alpha^2 = 1/2, beta^2 = 1; 100 points, max residual {worst:.3e}"))
}

fn criterion_6() -> Verdict {
    let r = run_interiorsum_check(&Genus9Curve::default(), 50, 42).map_err(|e| e.to_string())?;
    let worst = check_clean(&r, "pseudo-add-agreement", 50)?;
    ensure(worst < 1e-7, || format!("max distance {worst:.3e}"))?;
    ensure(r.passed(), || format!("{:?}", r.failures))?;
    Ok(format!("50 smooth slices, max distance up to sign pattern {worst:.3e}"))
}

fn criterion_7() -> Verdict {
    let curve = Genus9Curve::default();
    let (r, points) = run_sampling_check(&curve, 200, 42).map_err(|e| e.to_string())?;
    ensure(points.len() == 200, || format!("{} points", points.len()))?;
    let coeffs = curve.q().coeffs();
    let q_at =
        |x: &[C64]| coeffs.iter().zip(Q_INDEX).fold(C64::default().0, |acc, (c, (i, j))| acc + c.0 * x[i].0 * x[j].0);
    let (mut curve_res, mut quartic_res) = (0.0f64, 0.0f64);
    for p in &points {
        let n = normalize(p);
        let sq: Vec<C64> = n.iter().map(|z| C64(z.0 * z.0)).collect();
        let sum = sq.iter().fold(C64::default().0, |a, z| a + z.0);
        let quartic = q_at(&sq) - n[0].0 * n[1].0 * n[2].0 * n[3].0;
        curve_res = curve_res.max(sum.norm()).max(quartic.norm());

        let d = normalize(&cover_psi(p));
        let dsum = d.iter().fold(C64::default().0, |a, z| a + z.0);
        let qd = q_at(&d);
        quartic_res = quartic_res.max(dsum.norm()).max((qd * qd - d[0].0 * d[1].0 * d[2].0 * d[3].0).norm());
    }
    ensure(curve_res < 1e-10, || format!("curve residual {curve_res:.3e}"))?;
    ensure(quartic_res < 1e-9, || format!("quartic residual {quartic_res:.3e}"))?;
    let roundtrip = check_clean(&r, "lift-roundtrip", 200)?;
    ensure(roundtrip < 1e-8, || format!("lift roundtrip {roundtrip:.3e}"))?;
    let orbit = check_clean(&r, "lift-single-orbit", 200)?;
    ensure(orbit < 1e-8, || format!("lift orbit {orbit:.3e}"))?;
    Ok(format!(
        "200 points: curve {curve_res:.1e}, quartic {quartic_res:.1e}, roundtrip {roundtrip:.1e}, orbit {orbit:.1e}"
    ))
}

fn criterion_8() -> Verdict {
    let r = run_symbolic_suite();
    check_clean(&r, "section-swap-antisymmetry", 6)?;
    check_clean(&r, "section-diagonal-invariance", 18)?;
    check_clean(&r, "section-parity", 18)?;
    check_clean(&r, "section-ramification-vanishing", 24)?;

    // numeric cross-check on sampled curve points; the table gives the signs
    // under (P, Q) -> (P, g.Q)
    let table: [(TorsionLabel, [f64; 6]); 3] = [
        (TorsionLabel::A, [1.0, 1.0, 1.0, 1.0, -1.0, -1.0]),
        (TorsionLabel::B, [1.0, 1.0, 1.0, -1.0, 1.0, -1.0]),
        (TorsionLabel::AB, [1.0, 1.0, 1.0, -1.0, -1.0, 1.0]),
    ];
    let curve = Genus9Curve::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let pts = curve.sample_curve(20, &mut rng).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for w in pts.windows(2) {
        let (p, q) = (normalize(&w[0]), normalize(&w[1]));
        let (p, q): (Point, Point) = (p.try_into().unwrap(), q.try_into().unwrap());
        let s = sections(&p, &q);
        let swapped = sections(&q, &p);
        for k in 0..6 {
            worst = worst.max((s[k].0 + swapped[k].0).norm());
        }
        for g in TorsionLabel::ALL {
            let diag = sections(&g.apply(&p), &g.apply(&q));
            let one_slot = sections(&p, &g.apply(&q));
            let ram = sections(&p, &g.apply(&p));
            let signs = table.iter().find(|(h, _)| *h == g).map_or([1.0; 6], |(_, s)| *s);
            for k in 0..6 {
                worst = worst
                    .max((diag[k].0 - s[k].0).norm())
                    .max((one_slot[k].0 - s[k].0 * signs[k]).norm())
                    .max(ram[k].norm());
            }
        }
    }
    ensure(worst < 1e-9, || format!("numeric symmetry residual {worst:.3e}"))?;
    Ok(format!("swap, G-invariance, parity table and ramification vanishing exact; numeric {worst:.1e}"))
}

fn criterion_9(dir: &Path) -> Verdict {
    let start = Instant::now();
    let out = dir.join("fibers.json");
    canonmap(&["fibers", "--seed", "42", "--out", out.to_str().unwrap()])?;
    let t = within(start, Duration::from_secs(300))?;
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    ensure(v["status"] == "pass", || format!("status {}", v["status"]))?;
    let trials = v["details"]["trials"].as_array().unwrap();
    let of = |kind: &'static str| trials.iter().filter(move |t| t["kind"] == kind);

    let generic: Vec<_> = of("generic").collect();
    ensure(generic.len() == 100, || format!("{} generic trials", generic.len()))?;
    let generic_min = generic.iter().map(|t| t["min_distance"].as_f64().unwrap()).fold(f64::INFINITY, f64::min);
    ensure(generic_min > 1e-3, || format!("generic min distance {generic_min:.3e}"))?;

    let case2: Vec<_> = of("on_omega45").collect();
    ensure(case2.len() == 20, || format!("{} case-2 trials", case2.len()))?;
    for t in &case2 {
        let close: Vec<_> =
            t["candidates"].as_array().unwrap().iter().filter(|c| c["distance"].as_f64().unwrap() < 1e-6).collect();
        ensure(close.len() == 1, || format!("trial {}: {} colliding candidates", t["index"], close.len()))?;
        let label = close[0]["label"].as_str().unwrap();
        ensure(label.starts_with("serre"), || format!("trial {}: collision with {label}", t["index"]))?;
        let s = normalize(&sections(&point(&t["p"]), &point(&t["q"])));
        ensure(s[3].norm() < 1e-6, || format!("trial {}: |omega45| = {:.3e}", t["index"], s[3].norm()))?;
    }

    let case3: Vec<_> = of("on_omega67_omega89").filter(|t| t["target_met"] == true).collect();
    ensure(case3.len() >= 5, || format!("{} case-3 points", case3.len()))?;
    let mut case3_gap = 0.0f64;
    for t in &case3 {
        let (p, q) = (point(&t["p"]), point(&t["q"]));
        let a = TorsionLabel::A;
        case3_gap = case3_gap.max(proj_gap(&sections(&p, &q), &sections(&a.apply(&p), &a.apply(&q))));
    }
    ensure(case3_gap < 1e-6, || format!("case-3 image gap {case3_gap:.3e}"))?;

    let base: Vec<_> = of("base_point").collect();
    ensure(base.len() == 4, || format!("{} base-point orbits", base.len()))?;
    let summary = &v["details"]["summary"];
    ensure(summary["base_points"] == 16, || format!("{} base points", summary["base_points"]))?;
    let mut base_omega = 0.0f64;
    let mut base_spread = 0.0f64;
    for t in &base {
        let (p, q) = (point(&t["p"]), point(&t["q"]));
        let (p, q): (Point, Point) = (normalize(&p).try_into().unwrap(), normalize(&q).try_into().unwrap());
        let s = sections(&p, &q);
        base_omega = s[3..].iter().map(|z| z.norm()).fold(base_omega, f64::max);
        let eta = s[..3].iter().map(|z| z.norm()).fold(0.0, f64::max);
        ensure(eta > 1e-6, || format!("orbit {}: every section vanishes", t["index"]))?;
        let image = normalize(&s);
        ensure(image.iter().all(|z| z.norm().is_finite()), || format!("orbit {}: image not finite", t["index"]))?;
        for g in TorsionLabel::ALL {
            let other = normalize(&sections(&g.apply(&p), &q));
            base_spread = base_spread.max(proj_gap(&image, &other));
        }
    }
    ensure(base_omega < 1e-9, || format!("base omega {base_omega:.3e}"))?;
    ensure(base_spread < 1e-9, || format!("base image spread {base_spread:.3e}"))?;
    Ok(format!(
        "generic min {generic_min:.2e}; 20 single serre collisions; {} case-3 points (gap {case3_gap:.1e}); 16 base points in 4 orbits; {t:.2?}",
        case3.len()
    ))
}

fn criterion_10(dir: &Path) -> Verdict {
    let runs: [&[&str]; 6] =
        [&["verify-symbolic"], &["grouplaw"], &["fibers"], &["interiorsum"], &["basepoints"], &["sample"]];
    for args in runs {
        let mut outputs = Vec::new();
        for k in 0..2 {
            let json = dir.join(format!("{}-{k}.json", args[0]));
            let mut full = args.to_vec();
            full.extend(["--seed", "42", "--out", json.to_str().unwrap()]);
            canonmap(&full)?;
            let mut bytes = std::fs::read(&json).unwrap();
            if let Ok(csv) = std::fs::read(json.with_extension("csv")) {
                bytes.extend(csv);
            }
            outputs.push(bytes);
        }
        ensure(outputs[0] == outputs[1], || format!("{} differs between runs", args[0]))?;
    }
    Ok("all six suites byte-identical on re-run".into())
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let criteria: Vec<Criterion> = vec![
        ("symbolic completeness certificate", Box::new(criterion_1)),
        ("symbolic exceptional locus", Box::new(criterion_2)),
        ("exhaustive GF(13) suite", Box::new(criterion_3)),
        ("GF(10007) spot suite", Box::new(criterion_4)),
        ("diagonal-model transform", Box::new(criterion_5)),
        ("pseudo-addition agreement", Box::new(criterion_6)),
        ("genus-9 sampling", Box::new(criterion_7)),
        ("section symmetries", Box::new(criterion_8)),
        ("fiber experiment", Box::new(|| criterion_9(dir.path()))),
        ("determinism", Box::new(|| criterion_10(dir.path()))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
