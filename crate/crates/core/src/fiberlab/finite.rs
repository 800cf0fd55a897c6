use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{stream, trial_seed, SuiteReport};
use crate::error::{Error, Result};
use crate::jacobi::{AdditionLawId, JacobiCurve, JacobiPoint, TorsionLabel, ENUMERATION_LIMIT};
use crate::scalars::{Field, Fp, PrimeField};

/// Random triples checked for associativity when exhaustion is too large.
pub const ASSOCIATIVITY_SAMPLES: usize = 10_000;
/// Point counts up to which associativity runs over all triples.
pub const EXHAUSTIVE_TRIPLE_POINTS: usize = 25;
/// Random pairs per pairwise check in spot mode.
pub const COMPLETENESS_SAMPLES: usize = 1_000;

type Curve = JacobiCurve<Fp>;
type Pt = JacobiPoint<Fp>;

/// Group-law suite over `GF(p)` on `J_{u,v}`: exhaustive for `p` up to the
/// enumeration limit, sampled above it.
pub fn run_finite_field_suite(p: u64, u: i64, v: i64, seed: u64) -> Result<SuiteReport> {
    if p < 3 {
        return Err(Error::InvalidParams);
    }
    let field = PrimeField::new(p).map_err(|_| Error::InvalidParams)?;
    let curve = JacobiCurve::new(field.elem(u), field.elem(v)).map_err(|_| Error::InvalidParams)?;
    let mut r = SuiteReport::new("grouplaw");
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, stream::FINITE, p));
    if p <= ENUMERATION_LIMIT {
        exhaustive(&mut r, &curve, p, &mut rng)?;
    } else {
        spot(&mut r, &curve, &mut rng)?;
    }
    Ok(r)
}

fn add(c: &Curve, p: &Pt, q: &Pt) -> Result<Pt> {
    c.complete_add(p, q)
}

fn exhaustive(r: &mut SuiteReport, c: &Curve, p: u64, rng: &mut ChaCha8Rng) -> Result<()> {
    let pts = c.enumerate_points()?;
    let n = pts.len() as i128;
    let dev = n - p as i128 - 1;
    r.record("hasse-window", dev * dev <= 4 * p as i128, 0.0, || format!("{n} points over GF({p})"));
    for a in &pts {
        unary(r, c, a)?;
    }
    for a in &pts {
        for b in &pts {
            pairwise(r, c, a, b)?;
        }
    }
    if pts.len() <= EXHAUSTIVE_TRIPLE_POINTS {
        for a in &pts {
            for b in &pts {
                for d in &pts {
                    associativity(r, c, a, b, d)?;
                }
            }
        }
    } else {
        for _ in 0..ASSOCIATIVITY_SAMPLES {
            let mut pick = || &pts[rng.gen_range(0..pts.len())];
            let (a, b, d) = (pick(), pick(), pick());
            associativity(r, c, a, b, d)?;
        }
    }
    Ok(())
}

fn spot(r: &mut SuiteReport, c: &Curve, rng: &mut ChaCha8Rng) -> Result<()> {
    let draw = |rng: &mut ChaCha8Rng| c.random_point(rng);
    for _ in 0..COMPLETENESS_SAMPLES {
        let a = draw(rng)?;
        let b = draw(rng)?;
        unary(r, c, &a)?;
        pairwise(r, c, &a, &b)?;
        // exceptional pairs are measure zero; force one per draw
        let g = TorsionLabel::ALL[rng.gen_range(0..4)];
        pairwise(r, c, &a, &c.translate_by_torsion(g, &a))?;
    }
    for _ in 0..ASSOCIATIVITY_SAMPLES {
        let (a, b, d) = (draw(rng)?, draw(rng)?, draw(rng)?);
        associativity(r, c, &a, &b, &d)?;
    }
    Ok(())
}

fn unary(r: &mut SuiteReport, c: &Curve, a: &Pt) -> Result<()> {
    let o = c.identity();
    r.record("identity", add(c, a, &o)? == *a && add(c, &o, a)? == *a, 0.0, || format!("P = {a}"));
    r.record("inverse", add(c, a, &c.negate(a))? == o, 0.0, || format!("P = {a}"));
    for g in TorsionLabel::ALL {
        let sum = add(c, a, &c.torsion_point(g))?;
        r.record("torsion-translation", sum == c.translate_by_torsion(g, a), 0.0, || {
            format!("P = {a}, g = {g}: sum {sum}")
        });
    }
    Ok(())
}

fn pairwise(r: &mut SuiteReport, c: &Curve, a: &Pt, b: &Pt) -> Result<()> {
    let ab = add(c, a, b)?;
    r.record("commutativity", ab == add(c, b, a)?, 0.0, || format!("P = {a}, Q = {b}"));
    r.record("sum-on-curve", c.contains(ab.coords()), 0.0, || format!("P = {a}, Q = {b}: {ab}"));

    let mut firing = Vec::with_capacity(4);
    for law in AdditionLawId::ALL {
        if !c.is_exceptional(law, a, b) {
            firing.push((law, c.point(c.apply_law(law, a, b))?));
        }
    }
    let agree = firing.windows(2).all(|w| w[0].1 == w[1].1);
    r.record("completeness", !firing.is_empty() && agree, 0.0, || {
        format!("P = {a}, Q = {b}: {} laws fire, agree = {agree}", firing.len())
    });

    let coset = TorsionLabel::ALL.iter().any(|&g| c.translate_by_torsion(g, a) == *b);
    let lawx = c.is_exceptional(AdditionLawId::LawX, a, b);
    r.record("lawx-exceptional-coset", lawx == coset, 0.0, || {
        format!("P = {a}, Q = {b}: exceptional = {lawx}, coset = {coset}")
    });

    let diff = add(c, a, &c.negate(b))?;
    for law in AdditionLawId::ALL {
        let exc = c.is_exceptional(law, a, b);
        let on_plane = diff.coords()[law.hyperplane()].is_zero();
        r.record("exceptional-difference-hyperplane", exc == on_plane, 0.0, || {
            format!("{law}, P = {a}, Q = {b}, P - Q = {diff}")
        });
    }
    Ok(())
}

fn associativity(r: &mut SuiteReport, c: &Curve, a: &Pt, b: &Pt, d: &Pt) -> Result<()> {
    let left = add(c, &add(c, a, b)?, d)?;
    let right = add(c, a, &add(c, b, d)?)?;
    r.record("associativity", left == right, 0.0, || format!("P = {a}, Q = {b}, R = {d}"));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf13_exhaustive_passes() {
        let r = run_finite_field_suite(13, 3, 5, 42).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.check("hasse-window").unwrap().count, 1);
        let n = r.check("identity").unwrap().count;
        assert!((13 + 1 - 8..=13 + 1 + 8).contains(&n));
        assert_eq!(r.check("commutativity").unwrap().count, n * n);
        let triples = r.check("associativity").unwrap().count;
        assert_eq!(triples, if n <= EXHAUSTIVE_TRIPLE_POINTS { n * n * n } else { ASSOCIATIVITY_SAMPLES });
    }

    #[test]
    fn singular_parameters_rejected() {
        assert_eq!(run_finite_field_suite(13, 0, 5, 1), Err(Error::InvalidParams));
        assert_eq!(run_finite_field_suite(13, 3, 10, 1), Err(Error::InvalidParams));
        assert_eq!(run_finite_field_suite(15, 3, 5, 1), Err(Error::InvalidParams));
        assert_eq!(run_finite_field_suite(2, 1, 1, 1), Err(Error::InvalidParams));
    }

    #[test]
    fn other_small_primes_pass() {
        for (p, u, v) in [(5, 1, 2), (7, 2, 3), (11, 1, 4), (17, 1, 1), (101, 7, 9)] {
            let r = run_finite_field_suite(p, u, v, 3).unwrap();
            assert!(r.passed(), "p = {p}: {:?}", r.failures);
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let a = run_finite_field_suite(101, 3, 5, 9).unwrap();
        let b = run_finite_field_suite(101, 3, 5, 9).unwrap();
        assert_eq!(a, b);
    }
}
