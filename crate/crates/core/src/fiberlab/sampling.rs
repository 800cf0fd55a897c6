use alloc::format;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{stream, trial_seed, SuiteReport};
use crate::error::Result;
use crate::genus9::{cover_psi, orbit_distance, Genus9Curve, Point};
use crate::projective::{normalize_array, proj_dist};

/// Points of the genus-9 curve with residual, image and lift checks.
pub fn run_sampling_check(curve: &Genus9Curve, count: usize, seed: u64) -> Result<(SuiteReport, Vec<Point>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, stream::SAMPLE, 0));
    let points = curve.sample_curve(count, &mut rng)?;
    let mut r = SuiteReport::new("sample");
    for (i, p) in points.iter().enumerate() {
        let res = curve.residual_norm(p)?;
        r.record("curve-residual", res < 1e-10, res, || format!("point {i}: {res:e}"));

        let d = normalize_array(&cover_psi(p))?;
        let img = curve.quartic_residuals(&d)?.iter().map(|c| c.norm()).fold(0.0, f64::max);
        r.record("quartic-residual", img < 1e-9, img, || format!("point {i}: {img:e}"));

        let lifts = curve.lift_to_curve(&d)?;
        let back = lifts.iter().map(|l| proj_dist(&cover_psi(l), &d)).try_fold(0.0f64, |m, x| x.map(|x| m.max(x)))?;
        r.record("lift-roundtrip", back < 1e-8, back, || format!("point {i}: {back:e}"));

        let spread = lifts.iter().map(|l| orbit_distance(&lifts[0], l)).try_fold(0.0f64, |m, x| x.map(|x| m.max(x)))?;
        let own = orbit_distance(&lifts[0], p)?;
        let orbit = spread.max(own);
        r.record("lift-single-orbit", orbit < 1e-8, orbit, || format!("point {i}: {orbit:e}"));
    }
    Ok((r, points))
}
