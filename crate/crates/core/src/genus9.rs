//! The genus-9 curve `C = {ΣX² = 0, q(X², Y², Z², T²) = XYZT}` in P³, its
//! degree-4 cover `ψ` of the plane quartic `D = {Σx = 0, q(x,y,z,t)² = xyzt}`,
//! and the surface of unordered orbit pairs `[(P, Q)]`.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, RngCore};

use crate::diagonal::DiagonalParams;
use crate::error::{Error, Result};
use crate::jacobi::TorsionLabel;
use crate::numeric::{gauss_newton, poly_roots};
use crate::projective::{normalize_array, proj_dist, proj_eq};
use crate::scalars::{Field, Rational, Tolerance, C64};
use crate::sections::{eval_all, SectionId};

/// A point of P³ with complex coordinates.
pub type Point = [C64; 4];

/// Pairs pulled within this projective distance of a graph `Q = g.P` are rejected.
pub const RAMIFICATION_GUARD: f64 = 1e-6;
/// Two roots of a line restriction closer than this count as a tangency.
pub const TANGENCY_THRESHOLD: f64 = 1e-6;

const POLISH_ITERS: usize = 30;

/// Index pairs `(i, j)`, `i <= j`, of the ten coefficients of `q`.
pub const Q_INDEX: [(usize, usize); 10] =
    [(0, 0), (0, 1), (0, 2), (0, 3), (1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)];

/// `q(x) = Σ_{i<=j} c_ij x_i x_j` with coefficients in [`Q_INDEX`] order.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadricQ<F> {
    coeffs: [F; 10],
}

impl<F: Field> QuadricQ<F> {
    pub fn new(coeffs: [F; 10]) -> Result<Self> {
        if coeffs.iter().all(F::is_zero) {
            return Err(Error::AllZeroCoefficients);
        }
        Ok(QuadricQ { coeffs })
    }

    pub fn coeffs(&self) -> &[F; 10] {
        &self.coeffs
    }

    pub fn eval(&self, x: &[F; 4]) -> F {
        let mut acc = x[0].zero();
        for (c, &(i, j)) in self.coeffs.iter().zip(Q_INDEX.iter()) {
            acc = acc + c.clone() * x[i].clone() * x[j].clone();
        }
        acc
    }

    pub fn gradient(&self, x: &[F; 4]) -> [F; 4] {
        let mut g: [F; 4] = core::array::from_fn(|_| x[0].zero());
        for (c, &(i, j)) in self.coeffs.iter().zip(Q_INDEX.iter()) {
            g[i] = g[i].clone() + c.clone() * x[j].clone();
            g[j] = g[j].clone() + c.clone() * x[i].clone();
        }
        g
    }
}

impl QuadricQ<Rational> {
    /// A fixed rational form used when no coefficients are configured.
    pub fn default_form() -> Self {
        let r = Rational::new;
        QuadricQ {
            coeffs: [r(3, 7), r(-2, 5), r(5, 11), r(1, 3), r(-4, 9), r(2, 7), r(-3, 8), r(5, 6), r(-1, 4), r(7, 10)],
        }
    }

    pub fn to_complex(&self) -> QuadricQ<C64> {
        QuadricQ { coeffs: self.coeffs.clone().map(|c| C64::real(c.to_f64())) }
    }
}

impl Default for QuadricQ<C64> {
    fn default() -> Self {
        QuadricQ::default_form().to_complex()
    }
}

/// Squares every coordinate: the cover `C -> D`.
pub fn cover_psi<F: Field>(p: &[F; 4]) -> [F; 4] {
    p.clone().map(|x| x.square())
}

pub fn group_action<F: Field>(g: TorsionLabel, p: &[F; 4]) -> [F; 4] {
    g.apply(p)
}

/// Smallest projective distance from `q` to the orbit `G.p`.
pub fn orbit_distance(p: &Point, q: &Point) -> Result<f64> {
    let mut best = f64::INFINITY;
    for g in TorsionLabel::ALL {
        best = best.min(proj_dist(&g.apply(p), q)?);
    }
    Ok(best)
}

/// The curve `C` and its image quartic `D`, evaluated in floating point.
#[derive(Clone, Debug, PartialEq)]
pub struct Genus9Curve {
    q: QuadricQ<C64>,
    tol: Tolerance,
}

impl Genus9Curve {
    pub fn new(q: QuadricQ<C64>, tol: Tolerance) -> Self {
        Genus9Curve { q, tol }
    }

    pub fn q(&self) -> &QuadricQ<C64> {
        &self.q
    }

    pub fn tolerance(&self) -> &Tolerance {
        &self.tol
    }

    /// `ΣX²` and `q(X², Y², Z², T²) - XYZT` at the max-normalized point.
    pub fn residuals(&self, p: &Point) -> Result<[C64; 2]> {
        let n = normalize_array(p)?;
        Ok(self.raw_residuals(&n))
    }

    fn raw_residuals(&self, p: &Point) -> [C64; 2] {
        let sq = cover_psi(p);
        let sum = sq[0] + sq[1] + sq[2] + sq[3];
        let f = self.q.eval(&sq) - p[0] * p[1] * p[2] * p[3];
        [sum, f]
    }

    pub fn residual_norm(&self, p: &Point) -> Result<f64> {
        Ok(self.residuals(p)?.iter().map(|r| r.norm()).fold(0.0, f64::max))
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.residual_norm(p).is_ok_and(|r| r < self.tol.abs)
    }

    /// Rows: gradients of `ΣX²` and of `F`.
    pub fn jacobian(&self, p: &Point) -> [[C64; 4]; 2] {
        let sq = cover_psi(p);
        let gq = self.q.gradient(&sq);
        let two = C64::real(2.0);
        let g0 = p.map(|x| two * x);
        let prod_except = |k: usize| (0..4).filter(|&i| i != k).fold(C64::real(1.0), |acc, i| acc * p[i]);
        let g1 = core::array::from_fn(|k| two * p[k] * gq[k] - prod_except(k));
        [g0, g1]
    }

    /// Gauss-Newton polish onto `C`.
    pub fn polish(&self, p: &Point) -> Result<Point> {
        let x0: Vec<Complex64> = p.iter().map(|c| c.0).collect();
        let (x, _) = gauss_newton(x0, 4, POLISH_ITERS, 1e-15, |x| {
            let pt = to_point(x);
            let f = self.raw_residuals(&pt).iter().map(|c| c.0).collect();
            let j = self.jacobian(&pt).iter().map(|row| row.iter().map(|c| c.0).collect()).collect();
            (f, j)
        })?;
        normalize_array(&to_point(&x))
    }

    /// Coefficients in `τ` of `F` restricted to the ruling `s = [1, σ]` of
    /// `{ΣX² = 0}` (with `t = [1, τ]`).
    pub fn slice_quartic(&self, sigma: C64) -> [Complex64; 5] {
        let [x, y, z, t] = ruling_coordinates(sigma.0);
        let sq = [mul(&x, &x), mul(&y, &y), mul(&z, &z), mul(&t, &t)];
        let mut f = [Complex64::zero(); 5];
        for (c, &(i, j)) in self.q.coeffs.iter().zip(Q_INDEX.iter()) {
            let prod = mul(&sq[i], &sq[j]);
            for k in 0..5 {
                f[k] += c.0 * prod[k];
            }
        }
        let xyzt = mul(&mul(&x, &y), &mul(&z, &t));
        for k in 0..5 {
            f[k] -= xyzt[k];
        }
        f
    }

    /// The at most four curve points on the ruling `s = [1, σ]`.
    pub fn slice_points(&self, sigma: C64) -> Result<Vec<Point>> {
        let coeffs = self.slice_quartic(sigma);
        let roots = poly_roots(&coeffs)?;
        let mut out = Vec::with_capacity(roots.len());
        for tau in roots {
            let lin = ruling_coordinates(sigma.0);
            let raw: Point = lin.map(|c| C64(c[0] + c[1] * tau));
            out.push(self.polish(&raw)?);
        }
        Ok(out)
    }

    /// `n` points of `C`, each with both residuals below the absolute tolerance.
    pub fn sample_curve<R: RngCore + ?Sized>(&self, n: usize, rng: &mut R) -> Result<Vec<Point>> {
        let mut out = Vec::with_capacity(n);
        let mut attempts = 0;
        while out.len() < n {
            attempts += 1;
            if attempts > 10 * n + 100 {
                return Err(Error::SamplerExhausted);
            }
            let sigma = C64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let Ok(points) = self.slice_points(sigma) else { continue };
            for p in points {
                if out.len() < n && self.contains(&p) {
                    out.push(p);
                }
            }
        }
        Ok(out)
    }

    /// One random curve point.
    pub fn sample_point<R: RngCore + ?Sized>(&self, rng: &mut R) -> Result<Point> {
        let pts = self.sample_curve(1, rng)?;
        Ok(pts[0])
    }

    /// Smallest normalized 2x2 minor of the Jacobian over `n` samples; the
    /// curve counts as smooth when it stays above `1e-6`.
    pub fn smoothness_margin<R: RngCore + ?Sized>(&self, n: usize, rng: &mut R) -> Result<f64> {
        let mut worst = f64::INFINITY;
        for p in self.sample_curve(n, rng)? {
            let [g0, g1] = self.jacobian(&p);
            worst = worst.min(proj_dist(&g0, &g1)?);
        }
        Ok(worst)
    }

    pub fn is_smooth_sampled<R: RngCore + ?Sized>(&self, n: usize, rng: &mut R) -> bool {
        self.smoothness_margin(n, rng).is_ok_and(|m| m > 1e-6)
    }

    /// `Σx` and `q(x)² - xyzt` at the max-normalized point.
    pub fn quartic_residuals(&self, d: &Point) -> Result<[C64; 2]> {
        let n = normalize_array(d)?;
        let s = n[0] + n[1] + n[2] + n[3];
        let qv = self.q.eval(&n);
        Ok([s, qv * qv - n[0] * n[1] * n[2] * n[3]])
    }

    pub fn on_quartic(&self, d: &Point, eps: f64) -> bool {
        self.quartic_residuals(d).is_ok_and(|r| r.iter().all(|c| c.norm() < eps))
    }

    /// The four preimages of `d` under `ψ`, forming one G-orbit.
    pub fn lift_to_curve(&self, d: &Point) -> Result<[Point; 4]> {
        let n = normalize_array(d)?;
        if !self.on_quartic(&n, self.tol.proj) {
            return Err(Error::NotOnQuartic);
        }
        if n.iter().any(|c| c.norm() < RAMIFICATION_GUARD) {
            return Err(Error::RamificationAtZeroCoordinate);
        }
        let mut l = n.map(|c| C64(c.0.sqrt()));
        let qv = self.q.eval(&n);
        let prod = l[0] * l[1] * l[2] * l[3];
        if (qv - prod).norm() > (qv + prod).norm() {
            l[3] = -l[3];
        }
        let l = self.polish(&l)?;
        Ok(TorsionLabel::ALL.map(|g| g.apply(&l)))
    }

    /// Lifts of a point with one zero coordinate: square roots of the rest.
    fn lift_on_coordinate_line(&self, d: &Point) -> Result<[Point; 4]> {
        let l = d.map(|c| C64(c.0.sqrt()));
        let l = normalize_array(&l)?;
        Ok(TorsionLabel::ALL.map(|g| g.apply(&l)))
    }

    /// The line through `ψ(P)` and `ψ(Q)` meets `D` in `ψ(P)`, `ψ(Q)` and two
    /// residual points, returned here.
    pub fn residual_points(&self, u: &SurfacePoint) -> Result<[Point; 2]> {
        let p = normalize_array(&cover_psi(&u.p))?;
        let q = normalize_array(&cover_psi(&u.q))?;
        if proj_dist(&p, &q)? < RAMIFICATION_GUARD {
            return Err(Error::CoincidentProjections);
        }
        // points τp + (1-τ)q = q + τ(p - q)
        let lin: [[Complex64; 2]; 4] = core::array::from_fn(|k| [q[k].0, p[k].0 - q[k].0]);
        let mut qline = [Complex64::zero(); 3];
        for (c, &(i, j)) in self.q.coeffs.iter().zip(Q_INDEX.iter()) {
            let prod = mul(&lin[i], &lin[j]);
            for k in 0..3 {
                qline[k] += c.0 * prod[k];
            }
        }
        let mut g = mul(&qline, &qline).to_vec();
        let xyzt = mul(&mul(&lin[0], &lin[1]), &mul(&lin[2], &lin[3]));
        for k in 0..5 {
            g[k] -= xyzt[k];
        }
        let roots = poly_roots(&g)?;
        if roots.len() != 4 {
            return Err(Error::MatchFailure);
        }
        for i in 0..4 {
            for j in (i + 1)..4 {
                if (roots[i] - roots[j]).norm() < TANGENCY_THRESHOLD {
                    return Err(Error::TangentLine);
                }
            }
        }
        let nearest = |target: f64| {
            (0..4)
                .min_by(|&a, &b| (roots[a] - target).norm().total_cmp(&(roots[b] - target).norm()))
                .expect("four roots")
        };
        let (ip, iq) = (nearest(1.0), nearest(0.0));
        if ip == iq || (roots[ip] - 1.0).norm() > 1e-6 || roots[iq].norm() > 1e-6 {
            return Err(Error::MatchFailure);
        }
        let mut rest = (0..4).filter(|&k| k != ip && k != iq).map(|k| {
            let pt: Point = lin.map(|c| C64(c[0] + c[1] * roots[k]));
            normalize_array(&pt)
        });
        let r = rest.next().expect("two residual roots")?;
        let s = rest.next().expect("two residual roots")?;
        Ok([r, s])
    }

    /// The four classes `[(R, g.S)]` built from lifts of the residual points.
    pub fn serre_candidates(&self, u: &SurfacePoint) -> Result<[SurfacePoint; 4]> {
        let [r, s] = self.residual_points(u)?;
        let lr = self.lift_to_curve(&r)?[0];
        let ls = self.lift_to_curve(&s)?[0];
        let mut out = Vec::with_capacity(4);
        for g in TorsionLabel::ALL {
            out.push(SurfacePoint::new(lr, g.apply(&ls))?);
        }
        out.try_into().map_err(|_| Error::MatchFailure)
    }

    /// Contact points of the bitangent `{x_line = 0}` with `D`.
    pub fn bitangent_contacts(&self, line: usize) -> Result<[Point; 2]> {
        let others: Vec<usize> = (0..4).filter(|&k| k != line).collect();
        let (i, j, k) = (others[0], others[1], others[2]);
        // x_k = -x_i - x_j; q restricted is a binary quadratic in (x_i, x_j)
        let pt = |a: f64, b: f64| {
            let mut p = [C64::default(); 4];
            p[i] = C64::real(a);
            p[j] = C64::real(b);
            p[k] = C64::real(-a - b);
            p
        };
        let a = self.q.eval(&pt(1.0, 0.0)).0;
        let c = self.q.eval(&pt(0.0, 1.0)).0;
        let b = self.q.eval(&pt(1.0, 1.0)).0 - a - c;
        let roots = poly_roots(&[a, b, c])?;
        let make = |lambda: Complex64| {
            // roots of a + bλ + cλ² are ratios x_j / x_i
            let mut p = [C64::default(); 4];
            p[i] = C64::real(1.0);
            p[j] = C64(lambda);
            p[k] = C64(-Complex64::new(1.0, 0.0) - lambda);
            normalize_array(&p)
        };
        let pts: Vec<Point> = match roots.len() {
            2 => vec![make(roots[0])?, make(roots[1])?],
            // degree drop: one contact at x_i = 0
            1 => vec![
                make(roots[0])?,
                normalize_array(&{
                    let mut p = [C64::default(); 4];
                    p[j] = C64::real(1.0);
                    p[k] = C64::real(-1.0);
                    p
                })?,
            ],
            _ => return Err(Error::DegenerateContact),
        };
        if proj_dist(&pts[0], &pts[1])? < TANGENCY_THRESHOLD {
            return Err(Error::DegenerateContact);
        }
        Ok([pts[0], pts[1]])
    }

    /// The 16 base points: for each bitangent `{x_ℓ = 0}`, the orbit `[(L1, g.L2)]`.
    pub fn base_points(&self) -> Result<Vec<BasePointOrbit>> {
        let mut out = Vec::with_capacity(4);
        for line in 0..4 {
            let contacts = self.bitangent_contacts(line)?;
            let l1 = self.lift_on_coordinate_line(&contacts[0])?[0];
            let l2 = self.lift_on_coordinate_line(&contacts[1])?[0];
            let mut members = Vec::with_capacity(4);
            for g in TorsionLabel::ALL {
                members.push(SurfacePoint::new(l1, g.apply(&l2))?);
            }
            let members: [SurfacePoint; 4] = members.try_into().map_err(|_| Error::DegenerateContact)?;
            out.push(BasePointOrbit { line, contacts, members });
        }
        Ok(out)
    }
}

impl Default for Genus9Curve {
    fn default() -> Self {
        Genus9Curve::new(QuadricQ::default(), Tolerance::default())
    }
}

/// The four base points over one bitangent.
#[derive(Clone, Debug, PartialEq)]
pub struct BasePointOrbit {
    /// Index of the vanishing coordinate.
    pub line: usize,
    pub contacts: [Point; 2],
    pub members: [SurfacePoint; 4],
}

/// A class `[(P, Q)]` modulo the diagonal G-action and the slot swap.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurfacePoint {
    pub p: Point,
    pub q: Point,
}

impl SurfacePoint {
    /// Normalizes both slots and applies the ramification guard.
    pub fn new(p: Point, q: Point) -> Result<Self> {
        let p = normalize_array(&p)?;
        let q = normalize_array(&q)?;
        if orbit_distance(&p, &q)? < RAMIFICATION_GUARD {
            return Err(Error::NearRamification);
        }
        Ok(SurfacePoint { p, q })
    }

    pub fn ramification_distance(&self) -> f64 {
        orbit_distance(&self.p, &self.q).unwrap_or(0.0)
    }

    /// The class `g.U = [(P, g.Q)]`.
    pub fn translate(&self, g: TorsionLabel) -> Result<Self> {
        SurfacePoint::new(self.p, g.apply(&self.q))
    }

    pub fn swap(&self) -> Self {
        SurfacePoint { p: self.q, q: self.p }
    }

    fn variants(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        TorsionLabel::ALL.into_iter().flat_map(move |g| {
            let (gp, gq) = (g.apply(&self.p), g.apply(&self.q));
            [(gp, gq), (gq, gp)]
        })
    }

    /// Lexicographically least representative among the eight
    /// `(g.P, g.Q)` and swaps.
    pub fn canonical(&self) -> Self {
        let key = |pair: &(Point, Point)| -> Vec<f64> {
            pair.0.iter().chain(pair.1.iter()).flat_map(|c| [c.re(), c.im()]).collect()
        };
        let best = self
            .variants()
            .map(|(a, b)| (normalize_array(&a).unwrap_or(a), normalize_array(&b).unwrap_or(b)))
            .min_by(|x, y| {
                key(x)
                    .iter()
                    .zip(key(y).iter())
                    .map(|(a, b)| a.total_cmp(b))
                    .find(|o| *o != Ordering::Equal)
                    .unwrap_or(Ordering::Equal)
            })
            .expect("eight variants");
        SurfacePoint { p: best.0, q: best.1 }
    }

    pub fn same_class(&self, other: &Self, tol: &Tolerance) -> bool {
        other
            .variants()
            .any(|(a, b)| proj_eq(&self.p, &a, tol).unwrap_or(false) && proj_eq(&self.q, &b, tol).unwrap_or(false))
    }

    /// Raw section values on the normalized representative.
    pub fn section_values(&self) -> [C64; 6] {
        eval_all(&self.p, &self.q)
    }

    pub fn section(&self, s: SectionId) -> C64 {
        s.eval(&self.p, &self.q)
    }
}

/// The image in P⁵ ordered `(η12, η13, η23, ω45, ω67, ω89)`, max-normalized.
pub fn canonical_image(u: &SurfacePoint, tol: &Tolerance) -> Result<[C64; 6]> {
    let vals = u.section_values();
    if vals.iter().all(|v| v.norm() < tol.abs) {
        return Err(Error::NearRamification);
    }
    normalize_array(&vals)
}

/// `[a, b, c]`: the cross product of the `(x, y, z)` parts of `ψ(P)`, `ψ(Q)`.
pub fn gauss_line(u: &SurfacePoint) -> Result<[C64; 3]> {
    let p = normalize_array(&cover_psi(&u.p))?;
    let q = normalize_array(&cover_psi(&u.q))?;
    if proj_dist(&p, &q)? < RAMIFICATION_GUARD {
        return Err(Error::CoincidentProjections);
    }
    let line = [p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]];
    normalize_array(&line).map_err(|_| Error::CoincidentProjections)
}

/// `ℰ_U = {aX² + bY² + cZ² = 0} ∩ {ΣX² = 0}` with `[a, b, c]` the Gauss line.
pub fn elliptic_slice(u: &SurfacePoint) -> Result<DiagonalParams<C64>> {
    let [a, b, c] = gauss_line(u)?;
    Ok(DiagonalParams::new(a, b, c, C64::default()))
}

fn to_point(x: &[Complex64]) -> Point {
    core::array::from_fn(|k| C64(x[k]))
}

/// Coordinates on `s = [1, σ]`, `t = [1, τ]` as linear polynomials in `τ`:
/// `A = X + iY = 1`, `B = X - iY = στ`, `C = Z + iT = τ`, `D = Z - iT = -σ`.
fn ruling_coordinates(sigma: Complex64) -> [[Complex64; 2]; 4] {
    let half = Complex64::new(0.5, 0.0);
    let inv_2i = Complex64::new(0.0, -0.5);
    [[half, sigma * half], [inv_2i, -sigma * inv_2i], [-sigma * half, half], [sigma * inv_2i, inv_2i]]
}

/// Product of polynomials in `τ` of total degree at most 4.
fn mul<const A: usize, const B: usize>(a: &[Complex64; A], b: &[Complex64; B]) -> [Complex64; 5] {
    let mut out = [Complex64::zero(); 5];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if i + j < 5 {
                out[i + j] += x * y;
            } else {
                debug_assert!((x * y).is_zero());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagonal::{classify, SliceKind};
    use crate::polyform::{SignedSubstitution, SparsePolynomial, Var};
    use crate::sections::{even_omega, odd_omegas};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn curve() -> Genus9Curve {
        Genus9Curve::new(QuadricQ::default(), Tolerance::default())
    }

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn sample_u(c: &Genus9Curve, r: &mut ChaCha8Rng) -> SurfacePoint {
        loop {
            let p = c.sample_point(r).unwrap();
            let q = c.sample_point(r).unwrap();
            if let Ok(u) = SurfacePoint::new(p, q) {
                return u;
            }
        }
    }

    #[test]
    fn group_action_examples() {
        let p = [1.0, 2.0, 3.0, 4.0].map(C64::real);
        assert_eq!(group_action(TorsionLabel::A, &p), [1.0, 2.0, -3.0, -4.0].map(C64::real));
        let bb = group_action(TorsionLabel::B, &group_action(TorsionLabel::B, &p));
        assert_eq!(bb, p);
        let c = curve();
        for p in c.sample_curve(50, &mut rng(1)).unwrap() {
            let base = c.residuals(&p).unwrap();
            for g in TorsionLabel::ALL {
                let r = c.residuals(&g.apply(&p)).unwrap();
                assert!((r[0] - base[0]).norm() < 1e-15 && (r[1] - base[1]).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn defining_equations_are_symbolically_invariant() {
        let q = QuadricQ::default_form();
        let one = Rational::from_int(1);
        let x = |k| SparsePolynomial::var(Var::coord(0, k), &one);
        let sq: [SparsePolynomial<Rational>; 4] = core::array::from_fn(|k| &x(k) * &x(k));
        let mut f = &(&(&x(0) * &x(1)) * &x(2)) * &x(3);
        f = -&f;
        for (c, &(i, j)) in q.coeffs().iter().zip(Q_INDEX.iter()) {
            f = &f + &(&sq[i] * &sq[j]).scale(c);
        }
        let sum = sq.iter().fold(SparsePolynomial::zero(), |acc, s| &acc + s);
        for g in TorsionLabel::ALL {
            let sub = SignedSubstitution::identity().sign_slot(0, g.signs());
            assert_eq!(f.substitute(&sub), f);
            assert_eq!(sum.substitute(&sub), sum);
        }
    }

    #[test]
    fn sampling_meets_residual_bounds_and_is_deterministic() {
        let c = curve();
        let a = c.sample_curve(200, &mut rng(42)).unwrap();
        let b = c.sample_curve(200, &mut rng(42)).unwrap();
        assert_eq!(a, b);
        for p in &a {
            assert!(c.residual_norm(p).unwrap() < 1e-10);
            let d = cover_psi(p);
            assert!(c.quartic_residuals(&d).unwrap().iter().all(|r| r.norm() < 1e-9));
        }
        assert!(c.slice_points(C64::new(0.3, -0.7)).unwrap().len() <= 4);
    }

    #[test]
    fn default_curve_is_smooth() {
        assert!(curve().is_smooth_sampled(100, &mut rng(2)));
    }

    #[test]
    fn psi_examples() {
        let p = [C64::real(1.0), C64::new(0.0, 1.0), C64::real(1.0), C64::new(0.0, 1.0)];
        let d = cover_psi(&p);
        let want = [1.0, -1.0, 1.0, -1.0].map(C64::real);
        assert!(proj_eq(&d, &want, &Tolerance::default()).unwrap());
    }

    #[test]
    fn lifts_roundtrip_as_one_orbit() {
        let c = curve();
        let tol = Tolerance::default();
        for p in c.sample_curve(50, &mut rng(3)).unwrap() {
            let d = cover_psi(&p);
            let lifts = c.lift_to_curve(&d).unwrap();
            for l in &lifts {
                assert!(proj_dist(&cover_psi(l), &d).unwrap() < 1e-8);
                assert!(c.residual_norm(l).unwrap() < 1e-9);
            }
            // the original point is one of the lifts, and all four are distinct
            assert!(lifts.iter().any(|l| proj_eq(l, &p, &tol).unwrap()));
            for i in 0..4 {
                for j in (i + 1)..4 {
                    assert!(proj_dist(&lifts[i], &lifts[j]).unwrap() > 1e-6);
                }
            }
        }
        let zero = [0.0, 1.0, -1.0, 0.0].map(C64::real);
        assert!(c.lift_to_curve(&zero).is_err());
        let off = [1.0, 2.0, 3.0, -1.0].map(C64::real);
        assert_eq!(c.lift_to_curve(&off), Err(Error::NotOnQuartic));
    }

    #[test]
    fn canonical_image_symmetries() {
        let c = curve();
        let tol = Tolerance::default();
        let mut r = rng(4);
        for _ in 0..20 {
            let u = sample_u(&c, &mut r);
            let img = canonical_image(&u, &tol).unwrap();
            assert!(proj_eq(&img, &canonical_image(&u.swap(), &tol).unwrap(), &tol).unwrap());
            for g in TorsionLabel::ALL {
                let diag = SurfacePoint::new(g.apply(&u.p), g.apply(&u.q)).unwrap();
                assert!(proj_eq(&img, &canonical_image(&diag, &tol).unwrap(), &tol).unwrap());
                assert!(u.same_class(&diag, &tol));
            }
            assert!(u.canonical().same_class(&u, &tol));
            assert_eq!(u.canonical(), u.swap().canonical());
        }
    }

    #[test]
    fn ramification_guard() {
        let c = curve();
        let p = c.sample_point(&mut rng(5)).unwrap();
        for g in TorsionLabel::ALL {
            assert_eq!(SurfacePoint::new(p, g.apply(&p)), Err(Error::NearRamification));
        }
    }

    #[test]
    fn gauss_line_examples() {
        let p = [1.0, -1.0, 0.0, 0.0].map(C64::real);
        let q = [0.0, 0.0, 1.0, -1.0].map(C64::real);
        // cover_psi of lifts: use points whose squares are p and q
        let lp = [C64::real(1.0), C64::new(0.0, 1.0), C64::real(0.0), C64::real(0.0)];
        let lq = [C64::real(0.0), C64::real(0.0), C64::real(1.0), C64::new(0.0, 1.0)];
        assert_eq!(cover_psi(&lp), p);
        assert_eq!(cover_psi(&lq), q);
        let u = SurfacePoint::new(lp, lq).unwrap();
        let line = gauss_line(&u).unwrap();
        assert!(proj_eq(&line, &[-1.0, -1.0, 0.0].map(C64::real), &Tolerance::default()).unwrap());

        let c = curve();
        let tol = Tolerance::default();
        let mut r = rng(6);
        for _ in 0..50 {
            let u = sample_u(&c, &mut r);
            let line = gauss_line(&u).unwrap();
            let s = u.section_values();
            let from_sections = [s[2], -s[1], s[0]];
            assert!(proj_eq(&line, &from_sections, &tol).unwrap());
            let d = normalize_array(&cover_psi(&u.p)).unwrap();
            let val = line[0] * d[0] + line[1] * d[1] + line[2] * d[2];
            assert!(val.norm() < 1e-10);
            let slice = elliptic_slice(&u).unwrap();
            assert!(slice.residuals(&u.p).iter().all(|x| x.norm() < 1e-9));
            assert!(slice.residuals(&u.q).iter().all(|x| x.norm() < 1e-9));
            let class = classify(&slice.a, &slice.b, &slice.c, &tol).unwrap();
            assert_eq!(class.kind, SliceKind::Smooth);
            // the class, not the representative, determines the line
            let other = u.translate(TorsionLabel::AB).unwrap();
            assert!(proj_eq(&line, &gauss_line(&other).unwrap(), &tol).unwrap());
        }
    }

    #[test]
    fn residual_points_lie_on_quartic() {
        let c = curve();
        let mut r = rng(7);
        for _ in 0..50 {
            let u = sample_u(&c, &mut r);
            let [p, q] = c.residual_points(&u).unwrap();
            for d in [p, q] {
                assert!(c.quartic_residuals(&d).unwrap().iter().all(|x| x.norm() < 1e-8));
                let line = gauss_line(&u).unwrap();
                assert!((line[0] * d[0] + line[1] * d[1] + line[2] * d[2]).norm() < 1e-8);
            }
            let cands = c.serre_candidates(&u).unwrap();
            let tol = Tolerance::default();
            for i in 0..4 {
                assert!(c.contains(&cands[i].p) && c.contains(&cands[i].q));
                for j in (i + 1)..4 {
                    assert!(!cands[i].same_class(&cands[j], &tol));
                }
            }
        }
    }

    #[test]
    fn base_points() {
        let c = curve();
        let tol = Tolerance::default();
        let orbits = c.base_points().unwrap();
        assert_eq!(orbits.len(), 4);
        assert_eq!(orbits.iter().map(|o| o.members.len()).sum::<usize>(), 16);
        for o in &orbits {
            for d in o.contacts {
                assert!(c.quartic_residuals(&d).unwrap().iter().all(|x| x.norm() < 1e-12));
                assert!(d[o.line].norm() == 0.0);
            }
            let first = canonical_image(&o.members[0], &tol).unwrap();
            for m in &o.members {
                assert!(c.residual_norm(&m.p).unwrap() < 1e-10);
                assert!(c.residual_norm(&m.q).unwrap() < 1e-10);
                for s in SectionId::OMEGAS {
                    assert!(m.section(s).norm() < 1e-9);
                }
                let img = canonical_image(m, &tol).unwrap();
                assert!(proj_dist(&img, &first).unwrap() < 1e-9);
                let slice = elliptic_slice(m).unwrap();
                assert_eq!(classify(&slice.a, &slice.b, &slice.c, &tol).unwrap().kind, SliceKind::DoubleConic);
            }
        }
    }

    #[test]
    fn parity_collision_criterion() {
        let c = curve();
        let tol = Tolerance::default();
        let mut r = rng(8);
        for _ in 0..10 {
            let u = sample_u(&c, &mut r);
            let img = canonical_image(&u, &tol).unwrap();
            for g in TorsionLabel::NONTRIVIAL {
                let moved = canonical_image(&u.translate(g).unwrap(), &tol).unwrap();
                assert!(proj_dist(&img, &moved).unwrap() > 1e-3);
                // values flip exactly on the odd omegas
                let (a, b) = (u.section_values(), u.translate(g).unwrap().section_values());
                for s in SectionId::ALL {
                    let sign = if odd_omegas(g).contains(&s) { -1.0 } else { 1.0 };
                    assert!((b[s as usize] - a[s as usize] * C64::real(sign)).norm() < 1e-12);
                }
                assert!(even_omega(g).is_some());
            }
        }
    }
}
