use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{stream, trial_seed, SuiteReport};
use crate::diagonal::{classify, to_jacobi, torsion_distance, Branch, SliceKind};
use crate::error::{Error, Result};
use crate::genus9::{
    canonical_image, elliptic_slice, gauss_line, orbit_distance, BasePointOrbit, Genus9Curve, Point, SurfacePoint,
};
use crate::jacobi::TorsionLabel;
use crate::numeric::{gauss_newton, poly_roots};
use crate::projective::{normalize_array, proj_dist};
use crate::scalars::{Field, C64};
use crate::sections::SectionId;

/// Images closer than this are the same point of `P⁵`.
pub const COLLISION_THRESHOLD: f64 = 1e-6;
/// Images farther apart than this are distinct; anything in between is ambiguous.
pub const SEPARATION_FLOOR: f64 = 1e-3;

/// Newton solutions closer than this to a ramification graph are discarded.
const DEGENERATE_ORBIT: f64 = 1e-4;
const NEWTON_ITERS: usize = 60;
const NEWTON_TOL: f64 = 1e-13;
const BASE_POINT_TOL: f64 = 1e-9;
const AGREEMENT_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FiberConfig {
    pub generic_trials: usize,
    pub case2_trials: usize,
    /// Minimum number of distinct points on `{ω67 = ω89 = 0}` to locate.
    pub case3_target: usize,
    /// Newton starts per constrained search.
    pub starts: usize,
    /// Fresh draws allowed for one trial before giving up.
    pub max_resamples: usize,
}

impl Default for FiberConfig {
    fn default() -> Self {
        FiberConfig { generic_trials: 100, case2_trials: 20, case3_target: 5, starts: 200, max_resamples: 50 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "snake_case"))]
pub enum TrialKind {
    Generic,
    OnOmega45,
    OnOmega67Omega89,
    BasePoint,
}

/// Which case of the fiber classification a trial exhibits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "snake_case"))]
pub enum Outcome {
    NoCollision,
    /// `V = -g.U`.
    NegatedTranslate,
    /// `V = g.U`.
    Translate,
    /// Base points of one orbit.
    BasePointOrbit,
}

impl Outcome {
    /// Case number in the classification, `None` for the generic outcome.
    pub fn case(self) -> Option<u8> {
        match self {
            Outcome::NoCollision => None,
            Outcome::NegatedTranslate => Some(2),
            Outcome::Translate => Some(3),
            Outcome::BasePointOrbit => Some(4),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Candidate {
    pub label: String,
    pub distance: f64,
    /// `|ω45|` of the candidate's max-normalized canonical image.
    pub omega45: f64,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TrialReport {
    pub kind: TrialKind,
    pub index: usize,
    pub seed: u64,
    pub attempts: usize,
    pub p: Point,
    pub q: Point,
    pub slice: SliceKind,
    /// `|ω45|, |ω67|, |ω89|` on the max-normalized canonical image.
    pub omega: [f64; 3],
    pub candidates: Vec<Candidate>,
    pub min_distance: f64,
    pub outcome: Outcome,
    pub collided_with: Option<String>,
    /// Whether the trial realized what its kind asks for.
    pub target_met: bool,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FiberSummary {
    pub generic_trials: usize,
    pub generic_no_collision: usize,
    pub generic_min_distance: f64,
    pub case2_trials: usize,
    pub case2_confirmed: usize,
    pub case2_max_collision: f64,
    pub case2_max_omega45: f64,
    pub case3_found: usize,
    pub case3_from_multistart: usize,
    pub case3_confirmed: usize,
    pub case3_max_distance: f64,
    pub base_points: usize,
    pub base_orbits: usize,
    pub base_confirmed: usize,
    pub base_max_omega: f64,
    pub base_max_spread: f64,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FiberReport {
    pub seed: u64,
    pub config: FiberConfig,
    pub summary: FiberSummary,
    pub checks: SuiteReport,
    pub trials: Vec<TrialReport>,
}

fn rng_for(master: u64, s: u64, index: usize) -> (u64, ChaCha8Rng) {
    let seed = trial_seed(master, s, index as u64);
    (seed, ChaCha8Rng::seed_from_u64(seed))
}

fn omega_mags(image: &[C64; 6]) -> [f64; 3] {
    [image[3].norm(), image[4].norm(), image[5].norm()]
}

/// Collision profile of `U`: distances from its canonical image to those of
/// the three translates and (optionally) the four Serre candidates.
pub struct Assessment {
    pub image: [C64; 6],
    pub slice: SliceKind,
    pub candidates: Vec<Candidate>,
    pub outcome: Outcome,
    pub collided_with: Option<String>,
}

impl Assessment {
    pub fn min_distance(&self) -> f64 {
        self.candidates.iter().map(|c| c.distance).fold(f64::INFINITY, f64::min)
    }

    fn colliding(&self) -> impl Iterator<Item = &Candidate> {
        self.candidates.iter().filter(|c| c.distance < COLLISION_THRESHOLD)
    }

    /// True when some distance falls in the dead zone between the thresholds.
    pub fn ambiguous(&self) -> bool {
        self.candidates.iter().any(|c| c.distance >= COLLISION_THRESHOLD && c.distance <= SEPARATION_FLOOR)
    }
}

pub fn assess(curve: &Genus9Curve, u: &SurfacePoint, with_serre: bool) -> Result<Assessment> {
    let tol = *curve.tolerance();
    let image = canonical_image(u, &tol)?;
    let line = gauss_line(u)?;
    let slice = classify(&line[0], &line[1], &line[2], &tol)?.kind;
    let mut candidates = Vec::with_capacity(7);
    let mut push = |label: String, v: &SurfacePoint| -> Result<()> {
        let img = canonical_image(v, &tol)?;
        candidates.push(Candidate { label, distance: proj_dist(&image, &img)?, omega45: img[3].norm() });
        Ok(())
    };
    for g in TorsionLabel::NONTRIVIAL {
        push(format!("{g}.U"), &u.translate(g)?)?;
    }
    if with_serre {
        for (g, v) in TorsionLabel::ALL.into_iter().zip(curve.serre_candidates(u)?) {
            push(format!("serre[{g}]"), &v)?;
        }
    }
    let first = candidates.iter().find(|c| c.distance < COLLISION_THRESHOLD);
    let outcome = match first {
        None => Outcome::NoCollision,
        Some(c) if c.label.starts_with("serre") => Outcome::NegatedTranslate,
        Some(_) => Outcome::Translate,
    };
    let collided_with = first.map(|c| c.label.clone());
    Ok(Assessment { image, slice, candidates, outcome, collided_with })
}

fn report(
    kind: TrialKind,
    index: usize,
    seed: u64,
    attempts: usize,
    u: &SurfacePoint,
    a: Assessment,
    target_met: bool,
) -> TrialReport {
    TrialReport {
        kind,
        index,
        seed,
        attempts,
        p: u.p,
        q: u.q,
        slice: a.slice,
        omega: omega_mags(&a.image),
        min_distance: a.min_distance(),
        candidates: a.candidates,
        outcome: a.outcome,
        collided_with: a.collided_with,
        target_met,
    }
}

/// Two independent curve points; resampled while any distance is ambiguous.
pub fn generic_trial(curve: &Genus9Curve, config: &FiberConfig, master: u64, index: usize) -> Result<TrialReport> {
    let (seed, mut rng) = rng_for(master, stream::GENERIC, index);
    for attempt in 1..=config.max_resamples {
        let p = curve.sample_point(&mut rng)?;
        let q = curve.sample_point(&mut rng)?;
        let Ok(u) = SurfacePoint::new(p, q) else { continue };
        let Ok(a) = assess(curve, &u, true) else { continue };
        if a.ambiguous() {
            continue;
        }
        let met = a.outcome == Outcome::NoCollision;
        return Ok(report(TrialKind::Generic, index, seed, attempt, &u, a, met));
    }
    Err(Error::SamplerExhausted)
}

fn to_vec(p: &Point) -> Vec<Complex64> {
    p.iter().map(|c| c.0).collect()
}

fn to_point(x: &[Complex64]) -> Point {
    core::array::from_fn(|k| C64(x[k]))
}

/// Newton on `Q` for `ΣQ² = F(Q) = ω45(P, Q) = 0` with `P` fixed.
fn solve_omega45(curve: &Genus9Curve, p: &Point, q0: &Point) -> Result<(Point, f64)> {
    let (x, res) = gauss_newton(to_vec(q0), 4, NEWTON_ITERS, NEWTON_TOL, |x| {
        let q = to_point(x);
        let rows = curve.jacobian(&q);
        let r = curve.residuals(&q).unwrap_or([C64::default(); 2]);
        let w = SectionId::Omega45.eval(p, &q);
        let (_, gw) = SectionId::Omega45.gradient(p, &q);
        let f = alloc::vec![r[0].0, r[1].0, w.0];
        let j = alloc::vec![to_vec(&rows[0]), to_vec(&rows[1]), to_vec(&gw)];
        (f, j)
    })?;
    Ok((normalize_array(&to_point(&x))?, res))
}

/// A point of `{ω45 = 0}`: fix a random `P`, solve for `Q` from random starts.
pub fn case2_trial(curve: &Genus9Curve, config: &FiberConfig, master: u64, index: usize) -> Result<TrialReport> {
    let (seed, mut rng) = rng_for(master, stream::CASE2, index);
    for attempt in 1..=config.max_resamples {
        let p = curve.sample_point(&mut rng)?;
        let mut found = None;
        for _ in 0..config.starts {
            let q0 = curve.sample_point(&mut rng)?;
            let Ok((q, res)) = solve_omega45(curve, &p, &q0) else { continue };
            if res < 1e-12 && curve.contains(&q) && orbit_distance(&p, &q)? > DEGENERATE_ORBIT {
                found = Some(q);
                break;
            }
        }
        let Some(q) = found else { continue };
        let Ok(u) = SurfacePoint::new(p, q) else { continue };
        let Ok(a) = assess(curve, &u, true) else { continue };
        if a.ambiguous() {
            continue;
        }
        let serre: Vec<&Candidate> = a.colliding().filter(|c| c.label.starts_with("serre")).collect();
        let met = a.outcome == Outcome::NegatedTranslate && serre.len() == 1 && serre[0].omega45 < COLLISION_THRESHOLD;
        return Ok(report(TrialKind::OnOmega45, index, seed, attempt, &u, a, met));
    }
    Err(Error::SamplerExhausted)
}

/// Newton on `(P, Q)` for the curve equations in both slots and `ω67 = ω89 = 0`.
fn solve_case3(curve: &Genus9Curve, p0: &Point, q0: &Point) -> Result<(SurfacePoint, f64)> {
    let mut x0 = to_vec(p0);
    x0.extend(to_vec(q0));
    let (x, res) = gauss_newton(x0, 4, NEWTON_ITERS, NEWTON_TOL, |x| {
        let (p, q) = (to_point(&x[..4]), to_point(&x[4..]));
        let zero = alloc::vec![Complex64::new(0.0, 0.0); 4];
        let mut f = Vec::with_capacity(6);
        let mut j = Vec::with_capacity(6);
        for (slot, pt) in [p, q].iter().enumerate() {
            let r = curve.residuals(pt).unwrap_or([C64::default(); 2]);
            for (row, val) in curve.jacobian(pt).iter().zip(r) {
                f.push(val.0);
                j.push(if slot == 0 {
                    [to_vec(row), zero.clone()].concat()
                } else {
                    [zero.clone(), to_vec(row)].concat()
                });
            }
        }
        for s in [SectionId::Omega67, SectionId::Omega89] {
            let (gp, gq) = s.gradient(&p, &q);
            f.push(s.eval(&p, &q).0);
            j.push([to_vec(&gp), to_vec(&gq)].concat());
        }
        (f, j)
    })?;
    let u = SurfacePoint::new(to_point(&x[..4]), to_point(&x[4..]))?;
    Ok((u, res))
}

/// The four points of the quartic on the line `{x + y = 0, z + t = 0}`:
/// there `xyzt = s²r²`, so `q(s, -s, r, -r) = ±sr` splits into two binary
/// quadratics, one per sign.
fn line_seeds(curve: &Genus9Curve) -> Result<[[Point; 2]; 2]> {
    let q = curve.q();
    let eval = |s: f64, r: f64| q.eval(&[C64::real(s), C64::real(-s), C64::real(r), C64::real(-r)]).0;
    let a = eval(1.0, 0.0);
    let c = eval(0.0, 1.0);
    let b = eval(1.0, 1.0) - a - c;
    let mut out = [[[C64::default(); 4]; 2]; 2];
    for (k, sign) in [1.0, -1.0].into_iter().enumerate() {
        // c + (b - sign) λ + a λ² with λ = s / r
        let roots = poly_roots(&[c, b - sign, a])?;
        if roots.len() != 2 {
            return Err(Error::DegenerateContact);
        }
        for (m, l) in roots.iter().enumerate() {
            let d = [C64(*l), C64(-*l), C64::real(1.0), C64::real(-1.0)];
            out[k][m] = normalize_array(&d)?;
        }
    }
    Ok(out)
}

fn is_new(found: &[SurfacePoint], u: &SurfacePoint, curve: &Genus9Curve) -> bool {
    !found.iter().any(|v| v.same_class(u, curve.tolerance()))
}

fn case3_accept(curve: &Genus9Curve, u: &SurfacePoint, res: f64) -> bool {
    let Ok(img) = canonical_image(u, curve.tolerance()) else { return false };
    res < 1e-12
        && curve.contains(&u.p)
        && curve.contains(&u.q)
        && u.ramification_distance() > DEGENERATE_ORBIT
        && img[3].norm() > SEPARATION_FLOOR
}

/// Points of the finite locus `{ω67 = ω89 = 0}` away from the base points.
///
/// Random multi-start Newton runs first; when it yields fewer than the
/// target, the search is reseeded from pairs of points on the line where
/// the locus lives, and those seeds are polished by the same Newton map.
pub fn case3_search(curve: &Genus9Curve, config: &FiberConfig, master: u64) -> Result<Vec<TrialReport>> {
    let (seed, mut rng) = rng_for(master, stream::CASE3, 0);
    let mut found: Vec<(SurfacePoint, bool)> = Vec::new();
    let mut attempts = 0;
    for _ in 0..config.starts {
        attempts += 1;
        let p0 = curve.sample_point(&mut rng)?;
        let q0 = curve.sample_point(&mut rng)?;
        let Ok((u, res)) = solve_case3(curve, &p0, &q0) else { continue };
        let known: Vec<SurfacePoint> = found.iter().map(|f| f.0).collect();
        if case3_accept(curve, &u, res) && is_new(&known, &u, curve) {
            found.push((u, true));
        }
    }
    if found.len() < config.case3_target {
        let seeds = line_seeds(curve)?;
        for branch in seeds {
            let lp = curve.lift_to_curve(&branch[0])?[0];
            let lq = curve.lift_to_curve(&branch[1])?[0];
            for g in TorsionLabel::ALL {
                attempts += 1;
                let Ok((u, res)) = solve_case3(curve, &lp, &g.apply(&lq)) else { continue };
                let known: Vec<SurfacePoint> = found.iter().map(|f| f.0).collect();
                if case3_accept(curve, &u, res) && is_new(&known, &u, curve) {
                    found.push((u, false));
                }
            }
        }
    }
    if found.len() < config.case3_target {
        return Err(Error::SamplerExhausted);
    }
    let mut out = Vec::with_capacity(found.len());
    for (index, (u, newton)) in found.iter().enumerate() {
        let a = match assess(curve, u, true) {
            Ok(a) => a,
            Err(_) => assess(curve, u, false)?,
        };
        let translate = a.candidates.iter().find(|c| c.label == "a.U").map_or(f64::INFINITY, |c| c.distance);
        let met = translate < COLLISION_THRESHOLD;
        let mut r = report(TrialKind::OnOmega67Omega89, index, seed, attempts, u, a, met);
        if !newton {
            r.attempts = 0;
        }
        out.push(r);
    }
    Ok(out)
}

/// One report per bitangent: the orbit members compared with the first.
pub fn run_base_point_trials(curve: &Genus9Curve) -> Result<Vec<TrialReport>> {
    let tol = *curve.tolerance();
    let mut out = Vec::with_capacity(4);
    for orbit in curve.base_points()? {
        let first = &orbit.members[0];
        let image = canonical_image(first, &tol)?;
        let line = gauss_line(first)?;
        let slice = classify(&line[0], &line[1], &line[2], &tol)?.kind;
        let mut candidates = Vec::with_capacity(3);
        let mut omega_max = 0.0f64;
        for (k, m) in orbit.members.iter().enumerate() {
            for s in SectionId::OMEGAS {
                omega_max = omega_max.max(m.section(s).norm());
            }
            if k > 0 {
                let img = canonical_image(m, &tol)?;
                candidates.push(Candidate {
                    label: format!("member[{k}]"),
                    distance: proj_dist(&image, &img)?,
                    omega45: img[3].norm(),
                });
            }
        }
        let spread = candidates.iter().map(|c| c.distance).fold(0.0, f64::max);
        let met = spread < BASE_POINT_TOL && omega_max < BASE_POINT_TOL;
        let outcome = if met { Outcome::BasePointOrbit } else { Outcome::NoCollision };
        out.push(TrialReport {
            kind: TrialKind::BasePoint,
            index: orbit.line,
            seed: 0,
            attempts: 1,
            p: first.p,
            q: first.q,
            slice,
            omega: [omega_max; 3],
            min_distance: candidates.iter().map(|c| c.distance).fold(f64::INFINITY, f64::min),
            candidates,
            outcome,
            collided_with: met.then(|| "orbit".to_string()),
            target_met: met,
        });
    }
    Ok(out)
}

/// The 16 base points with membership, vanishing and shared-image checks.
pub fn run_base_point_check(curve: &Genus9Curve) -> Result<(SuiteReport, Vec<BasePointOrbit>)> {
    let tol = *curve.tolerance();
    let orbits = curve.base_points()?;
    let mut r = SuiteReport::new("basepoints");
    let total: usize = orbits.iter().map(|o| o.members.len()).sum();
    r.record("count", total == 16 && orbits.len() == 4, 0.0, || format!("{total} points in {} orbits", orbits.len()));
    for o in &orbits {
        let first = canonical_image(&o.members[0], &tol)?;
        for (k, m) in o.members.iter().enumerate() {
            let res = curve.residual_norm(&m.p)?.max(curve.residual_norm(&m.q)?);
            r.record("on-curve", res < 1e-10, res, || format!("bitangent {}, member {k}: {res:e}", o.line));
            let w = SectionId::OMEGAS.iter().map(|s| m.section(*s).norm()).fold(0.0, f64::max);
            r.record("omega-vanishing", w < BASE_POINT_TOL, w, || format!("bitangent {}, member {k}: {w:e}", o.line));
            let d = proj_dist(&first, &canonical_image(m, &tol)?)?;
            r.record("orbit-shares-image", d < BASE_POINT_TOL, d, || {
                format!("bitangent {}, member {k}: {d:e}", o.line)
            });
            let line = gauss_line(m)?;
            let kind = classify(&line[0], &line[1], &line[2], &tol)?.kind;
            r.record("double-conic-slice", kind == SliceKind::DoubleConic, 0.0, || {
                format!("bitangent {}, member {k}: {}", o.line, kind.name())
            });
        }
    }
    Ok((r, orbits))
}

/// Tallies and the pass/fail checks over a complete list of trials.
pub fn summarize(config: &FiberConfig, seed: u64, trials: Vec<TrialReport>) -> FiberReport {
    let of = |k: TrialKind| trials.iter().filter(move |t| t.kind == k);
    let mut checks = SuiteReport::new("fibers");
    for t in of(TrialKind::Generic) {
        checks.record("generic-no-collision", t.target_met && t.min_distance > SEPARATION_FLOOR, 0.0, || {
            format!("trial {}: outcome {:?}, min distance {:e}", t.index, t.outcome, t.min_distance)
        });
    }
    let mut case2_max_collision = 0.0f64;
    let mut case2_max_omega45 = 0.0f64;
    for t in of(TrialKind::OnOmega45) {
        let hit = t.candidates.iter().find(|c| Some(&c.label) == t.collided_with.as_ref());
        if let Some(c) = hit {
            case2_max_collision = case2_max_collision.max(c.distance);
            case2_max_omega45 = case2_max_omega45.max(c.omega45);
        }
        checks.record("case2-single-serre-collision", t.target_met, hit.map_or(f64::INFINITY, |c| c.distance), || {
            format!("trial {}: outcome {:?}, collided with {:?}", t.index, t.outcome, t.collided_with)
        });
    }
    let case3: Vec<&TrialReport> = of(TrialKind::OnOmega67Omega89).collect();
    let case3_max_distance = case3
        .iter()
        .filter_map(|t| t.candidates.iter().find(|c| c.label == "a.U").map(|c| c.distance))
        .fold(0.0, f64::max);
    checks.record("case3-points-found", case3.len() >= config.case3_target, 0.0, || {
        format!("{} points found, {} required", case3.len(), config.case3_target)
    });
    for t in &case3 {
        checks.record("case3-translate-collision", t.target_met, 0.0, || {
            format!("point {}: omega {:?}, outcome {:?}", t.index, t.omega, t.outcome)
        });
    }
    let base: Vec<&TrialReport> = of(TrialKind::BasePoint).collect();
    let base_points = base.len() * 4;
    checks.record("base-point-count", base_points == 16 && base.len() == 4, 0.0, || {
        format!("{base_points} base points in {} orbits", base.len())
    });
    let base_max_omega = base.iter().map(|t| t.omega[0]).fold(0.0, f64::max);
    let base_max_spread = base.iter().flat_map(|t| t.candidates.iter().map(|c| c.distance)).fold(0.0, f64::max);
    for t in &base {
        checks.record("base-point-orbit-image", t.target_met, base_max_spread, || {
            format!("bitangent {}: omega {:e}, spread {:e}", t.index, t.omega[0], t.min_distance)
        });
    }
    let summary = FiberSummary {
        generic_trials: of(TrialKind::Generic).count(),
        generic_no_collision: of(TrialKind::Generic).filter(|t| t.outcome == Outcome::NoCollision).count(),
        generic_min_distance: of(TrialKind::Generic).map(|t| t.min_distance).fold(f64::INFINITY, f64::min),
        case2_trials: of(TrialKind::OnOmega45).count(),
        case2_confirmed: of(TrialKind::OnOmega45).filter(|t| t.target_met).count(),
        case2_max_collision,
        case2_max_omega45,
        case3_found: case3.len(),
        case3_from_multistart: case3.iter().filter(|t| t.attempts > 0).count(),
        case3_confirmed: case3.iter().filter(|t| t.target_met).count(),
        case3_max_distance,
        base_points,
        base_orbits: base.len(),
        base_confirmed: base.iter().filter(|t| t.target_met).count(),
        base_max_omega,
        base_max_spread,
    };
    FiberReport { seed, config: *config, summary, checks, trials }
}

/// Every trial, sequentially, in the canonical order: generic, case 2,
/// case 3, base points.
pub fn run_fiber_experiment(curve: &Genus9Curve, config: &FiberConfig, seed: u64) -> Result<FiberReport> {
    let mut trials = Vec::new();
    for i in 0..config.generic_trials {
        trials.push(generic_trial(curve, config, seed, i)?);
    }
    for i in 0..config.case2_trials {
        trials.push(case2_trial(curve, config, seed, i)?);
    }
    trials.extend(case3_search(curve, config, seed)?);
    trials.extend(run_base_point_trials(curve)?);
    Ok(summarize(config, seed, trials))
}

/// Cross-model check of the pseudo-addition on the elliptic slices of
/// random generic points.
pub fn run_interiorsum_check(curve: &Genus9Curve, samples: usize, seed: u64) -> Result<SuiteReport> {
    let tol = *curve.tolerance();
    let mut r = SuiteReport::new("interiorsum");
    for i in 0..samples {
        let (_, mut rng) = rng_for(seed, stream::INTERIORSUM, i);
        let u = loop {
            let p = curve.sample_point(&mut rng)?;
            let q = curve.sample_point(&mut rng)?;
            if let Ok(u) = SurfacePoint::new(p, q) {
                break u;
            }
        };
        let slice = elliptic_slice(&u)?;
        let class = classify(&slice.a, &slice.b, &slice.c, &tol)?;
        if class.kind != SliceKind::Smooth {
            r.skip(i, class.kind.name());
            continue;
        }
        let on = [u.p, u.q]
            .iter()
            .map(|x| slice.residuals(x).iter().map(|c| c.norm()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        r.record("points-on-slice", on < 1e-9, on, || format!("sample {i}: residual {on:e}"));
        let data = to_jacobi(&slice, &tol)?;
        let eta = u.section_values();
        let alpha2 = -(eta[0] * eta[1].inv().ok_or(Error::SingularParameters)?);
        let beta2 = -(eta[0] * (eta[1] + eta[0]).inv().ok_or(Error::SingularParameters)?);
        let rd = (data.ratios.alpha2 - alpha2).norm().max((data.ratios.beta2 - beta2).norm());
        r.record("radicands-from-sections", rd < 1e-9 * (1.0 + alpha2.norm() + beta2.norm()), rd, || {
            format!("sample {i}: radicand mismatch {rd:e}")
        });
        let direct = data.pseudo_add(&u.p, &u.q)?;
        let routed = data.jacobi_route(&u.p, &u.q)?;
        let (dist, g) = torsion_distance(&direct, &routed)?;
        r.record("pseudo-add-agreement", dist < AGREEMENT_TOL, dist, || {
            format!("sample {i}: distance {dist:e} at {g}")
        });
        for (flip, expect) in [
            ((Branch::Negated, Branch::Principal), TorsionLabel::B),
            ((Branch::Principal, Branch::Negated), TorsionLabel::AB),
        ] {
            let flipped = data.with_branches(flip.0, flip.1).pseudo_add(&u.p, &u.q)?;
            let d = proj_dist(&flipped, &expect.apply(&direct))?;
            r.record("branch-flip-sign-pattern", d < AGREEMENT_TOL, d, || {
                format!("sample {i}: flip {flip:?} off by {d:e}")
            });
        }
    }
    Ok(r)
}
