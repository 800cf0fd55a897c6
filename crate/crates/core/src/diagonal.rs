//! The diagonal model `aX^2 + bY^2 + cZ^2 + dT^2 = 0`, `X^2 + Y^2 + Z^2 + T^2 = 0`,
//! its degenerations, and its transport to the Jacobi model.

use core::fmt;

use rand::RngCore;

use crate::error::{Error, Result};
use crate::jacobi::{JacobiCurve, JacobiParams, JacobiPoint, TorsionLabel};
use crate::projective::{normalize_array, proj_dist, proj_eq};
use crate::scalars::{Field, Tolerance};
use crate::sections::SectionId;

#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalParams<F> {
    pub a: F,
    pub b: F,
    pub c: F,
    pub d: F,
}

impl<F: Field> DiagonalParams<F> {
    pub fn new(a: F, b: F, c: F, d: F) -> Self {
        DiagonalParams { a, b, c, d }
    }

    pub fn coefficients(&self) -> [&F; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn is_smooth(&self, tol: &Tolerance) -> bool {
        let k = self.coefficients();
        (0..4).all(|i| ((i + 1)..4).all(|j| !(k[i].clone() - k[j].clone()).is_negligible(tol)))
    }

    /// Residuals of the diagonal quadric and of the sum of squares.
    pub fn residuals(&self, p: &[F; 4]) -> [F; 2] {
        let sq = p.clone().map(|x| x.square());
        let diag = self.a.clone() * sq[0].clone()
            + self.b.clone() * sq[1].clone()
            + self.c.clone() * sq[2].clone()
            + self.d.clone() * sq[3].clone();
        let sum = sq[0].clone() + sq[1].clone() + sq[2].clone() + sq[3].clone();
        [diag, sum]
    }

    pub fn contains(&self, p: &[F; 4], tol: &Tolerance) -> bool {
        match normalize_array(p) {
            Ok(n) => self.residuals(&n).iter().all(|r| r.is_negligible(tol)),
            Err(_) => false,
        }
    }

    /// Samples `X`, `Y` and solves the two equations linearly for `Z^2`, `T^2`.
    pub fn random_point<R: RngCore + ?Sized>(&self, rng: &mut R) -> Result<[F; 4]> {
        const ATTEMPTS: usize = 10_000;
        let det = self.d.clone() - self.c.clone();
        let det_inv = det.inv().ok_or(Error::NonDistinctCoefficients)?;
        for _ in 0..ATTEMPTS {
            let x = self.a.sample(rng);
            let y = self.a.sample(rng);
            // cZ^2 + dT^2 = -(aX^2 + bY^2), Z^2 + T^2 = -(X^2 + Y^2)
            let r1 = -(self.a.clone() * x.square() + self.b.clone() * y.square());
            let r2 = -(x.square() + y.square());
            let z2 = (self.d.clone() * r2.clone() - r1.clone()) * det_inv.clone();
            let t2 = (r1 - self.c.clone() * r2) * det_inv.clone();
            let (Some(z), Some(t)) = (z2.sqrt(), t2.sqrt()) else {
                continue;
            };
            if let Ok(p) = normalize_array(&[x, y, z, t]) {
                return Ok(p);
            }
        }
        Err(Error::SamplerExhausted)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "snake_case"))]
pub enum SliceKind {
    Smooth,
    ConicPair,
    DoubleConic,
    FourLines,
}

impl SliceKind {
    pub fn name(self) -> &'static str {
        match self {
            SliceKind::Smooth => "smooth",
            SliceKind::ConicPair => "conic_pair",
            SliceKind::DoubleConic => "double_conic",
            SliceKind::FourLines => "four_lines",
        }
    }
}

impl fmt::Display for SliceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Geometric type of `{aX^2 + bY^2 + cZ^2 = 0} ∩ {ΣX^2 = 0}` and the
/// permutation reaching its normal form: position `k` of the normal form
/// holds original coefficient `perm[k]`.
///
/// Normal forms: `ConicPair` and `FourLines` put a zero last,
/// `DoubleConic` puts the lone nonzero coefficient first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SliceClass {
    pub kind: SliceKind,
    pub perm: [usize; 3],
}

/// Type is read off from the coincidences among `{a, b, c, 0}`: no
/// coincidence is smooth, one pair a conic pair, two pairs four lines,
/// a triple a double conic.
pub fn classify<F: Field>(a: &F, b: &F, c: &F, tol: &Tolerance) -> Result<SliceClass> {
    let raw = [a.clone(), b.clone(), c.clone()];
    let k = if F::EXACT {
        if raw.iter().all(F::is_zero) {
            return Err(Error::AllZeroCoefficients);
        }
        raw
    } else {
        normalize_array(&raw).map_err(|_| Error::AllZeroCoefficients)?
    };
    let zero = a.zero();
    let ext = [k[0].clone(), k[1].clone(), k[2].clone(), zero];
    let eq = |i: usize, j: usize| (ext[i].clone() - ext[j].clone()).is_negligible(tol);
    let mut pairs = 0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            if eq(i, j) {
                pairs += 1;
            }
        }
    }
    let zeros: [bool; 3] = core::array::from_fn(|i| eq(i, 3));
    let kind = match pairs {
        0 => SliceKind::Smooth,
        1 => SliceKind::ConicPair,
        2 => SliceKind::FourLines,
        _ => SliceKind::DoubleConic,
    };
    let perm = match kind {
        SliceKind::Smooth => [0, 1, 2],
        SliceKind::ConicPair | SliceKind::FourLines => match zeros.iter().position(|&z| z) {
            Some(z) => last(z),
            // one pair among the nonzero coefficients: a member of the pair last
            None => {
                let (i, _) = (0..3)
                    .flat_map(|i| ((i + 1)..3).map(move |j| (i, j)))
                    .find(|&(i, j)| eq(i, j))
                    .expect("one coincident pair");
                last(i)
            }
        },
        SliceKind::DoubleConic => match zeros.iter().position(|&z| !z) {
            Some(n) if zeros.iter().filter(|&&z| z).count() == 2 => first(n),
            _ => [0, 1, 2],
        },
    };
    Ok(SliceClass { kind, perm })
}

fn last(i: usize) -> [usize; 3] {
    match i {
        0 => [1, 2, 0],
        1 => [0, 2, 1],
        _ => [0, 1, 2],
    }
}

fn first(i: usize) -> [usize; 3] {
    match i {
        0 => [0, 1, 2],
        1 => [1, 0, 2],
        _ => [2, 0, 1],
    }
}

/// Which square root a branch uses: the field's own root or its negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    Principal,
    Negated,
}

impl Branch {
    pub fn flip(self) -> Self {
        match self {
            Branch::Principal => Branch::Negated,
            Branch::Negated => Branch::Principal,
        }
    }

    fn apply<F: Field>(self, x: F) -> F {
        match self {
            Branch::Principal => x,
            Branch::Negated => -x,
        }
    }
}

/// The root-free part of the transform, available in every field.
#[derive(Clone, Debug, PartialEq)]
pub struct TransformRatios<F> {
    pub u: F,
    pub v: F,
    pub alpha2: F,
    pub beta2: F,
}

/// `u = (a-d)/(b-d)`, `v = -(a-c)/(b-c)`, `α² = (c-d)/(b-d)`, `β² = (c-d)/(b-c)`.
pub fn transform_ratios<F: Field>(params: &DiagonalParams<F>, tol: &Tolerance) -> Result<TransformRatios<F>> {
    if !params.is_smooth(tol) {
        return Err(Error::NonDistinctCoefficients);
    }
    let DiagonalParams { a, b, c, d } = params.clone();
    let bd = (b.clone() - d.clone()).inv().ok_or(Error::NonDistinctCoefficients)?;
    let bc = (b - c.clone()).inv().ok_or(Error::NonDistinctCoefficients)?;
    Ok(TransformRatios {
        u: (a.clone() - d.clone()) * bd.clone(),
        v: -((a - c.clone()) * bc.clone()),
        alpha2: (c.clone() - d.clone()) * bd,
        beta2: (c - d) * bc,
    })
}

/// Isomorphism data between a smooth diagonal model and `J_{u,v}`.
///
/// Forward map: `(X, Y, Z, T) -> (X, -αZ, iY, iβT)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransformData<F> {
    pub ratios: TransformRatios<F>,
    pub alpha: F,
    pub beta: F,
    pub i: F,
    pub alpha_branch: Branch,
    pub beta_branch: Branch,
    jacobi: JacobiCurve<F>,
    tol: Tolerance,
}

pub fn to_jacobi<F: Field>(params: &DiagonalParams<F>, tol: &Tolerance) -> Result<TransformData<F>> {
    to_jacobi_with_branches(params, Branch::Principal, Branch::Principal, tol)
}

pub fn to_jacobi_with_branches<F: Field>(
    params: &DiagonalParams<F>,
    alpha_branch: Branch,
    beta_branch: Branch,
    tol: &Tolerance,
) -> Result<TransformData<F>> {
    let ratios = transform_ratios(params, tol)?;
    let alpha = alpha_branch.apply(ratios.alpha2.sqrt().ok_or(Error::SquareRootUnavailable)?);
    let beta = beta_branch.apply(ratios.beta2.sqrt().ok_or(Error::SquareRootUnavailable)?);
    let i = params.a.imag_unit().ok_or(Error::ImaginaryUnitUnavailable)?;
    let jp = JacobiParams::with_tolerance(ratios.u.clone(), ratios.v.clone(), tol)?;
    Ok(TransformData {
        ratios,
        alpha,
        beta,
        i,
        alpha_branch,
        beta_branch,
        jacobi: JacobiCurve::from_params(jp, *tol),
        tol: *tol,
    })
}

impl<F: Field> TransformData<F> {
    pub fn jacobi(&self) -> &JacobiCurve<F> {
        &self.jacobi
    }

    pub fn with_branches(&self, alpha_branch: Branch, beta_branch: Branch) -> Self {
        let mut out = self.clone();
        if alpha_branch != self.alpha_branch {
            out.alpha = -out.alpha;
        }
        if beta_branch != self.beta_branch {
            out.beta = -out.beta;
        }
        out.alpha_branch = alpha_branch;
        out.beta_branch = beta_branch;
        out
    }

    pub fn forward(&self, p: &[F; 4]) -> [F; 4] {
        let [x, y, z, t] = p.clone();
        [x, -(self.alpha.clone() * z), self.i.clone() * y, self.i.clone() * self.beta.clone() * t]
    }

    pub fn back(&self, p: &[F; 4]) -> Result<[F; 4]> {
        let [x, y, z, t] = p.clone();
        let ai = self.alpha.inv().ok_or(Error::SingularParameters)?;
        let bi = self.beta.inv().ok_or(Error::SingularParameters)?;
        let i = self.i.clone();
        Ok([x, -(i.clone() * z), -(y * ai), -(i * t * bi)])
    }

    /// Section form `[η12, iαβ ω45, β ω67, iα ω89]`: the group law followed
    /// by a 2-torsion translation fixed by the branches.
    pub fn pseudo_add(&self, p: &[F; 4], q: &[F; 4]) -> Result<[F; 4]> {
        let (p, q) = (normalize_array(p)?, normalize_array(q)?);
        let (a, b, i) = (self.alpha.clone(), self.beta.clone(), self.i.clone());
        let out = [
            SectionId::Eta12.eval(&p, &q),
            i.clone() * a.clone() * b.clone() * SectionId::Omega45.eval(&p, &q),
            b * SectionId::Omega67.eval(&p, &q),
            i * a * SectionId::Omega89.eval(&p, &q),
        ];
        let vanishes =
            if F::EXACT { out.iter().all(F::is_zero) } else { out.iter().all(|c| c.magnitude() <= self.tol.proj) };
        if vanishes {
            return Err(Error::ExceptionalPair);
        }
        normalize_array(&out)
    }

    /// Transport to `J_{u,v}`, complete addition, transport back.
    pub fn jacobi_route(&self, p: &[F; 4], q: &[F; 4]) -> Result<[F; 4]> {
        let jp = self.to_jacobi_point(p)?;
        let jq = self.to_jacobi_point(q)?;
        let sum = self.jacobi.complete_add(&jp, &jq)?;
        normalize_array(&self.back(sum.coords())?)
    }

    pub fn to_jacobi_point(&self, p: &[F; 4]) -> Result<JacobiPoint<F>> {
        self.jacobi.point(self.forward(&normalize_array(p)?))
    }
}

/// The element `g` with `g.p = q` projectively, if any.
pub fn torsion_offset<F: Field>(p: &[F; 4], q: &[F; 4], tol: &Tolerance) -> Option<TorsionLabel> {
    TorsionLabel::ALL.into_iter().find(|g| proj_eq(&g.apply(p), q, tol).unwrap_or(false))
}

/// Smallest projective distance from `q` to the orbit of `p`, with the minimizer.
pub fn torsion_distance<F: Field>(p: &[F; 4], q: &[F; 4]) -> Result<(f64, TorsionLabel)> {
    let mut best = (f64::INFINITY, TorsionLabel::Id);
    for g in TorsionLabel::ALL {
        let d = proj_dist(&g.apply(p), q)?;
        if d < best.0 {
            best = (d, g);
        }
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl core::ops::Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Sign {
    fn apply<F: Field>(self, x: F) -> F {
        match self {
            Sign::Plus => x,
            Sign::Minus => -x,
        }
    }
}

/// Parametrizes one of the two conics of `{aX^2 + bY^2 = 0} ∩ {ΣX^2 = 0}`:
/// `[s0 s1/k, ε i r s0 s1/k, (i/2)(s0² + s1²), (s0² - s1²)/2]`
/// with `r² = a/b` and `k² = 1 - a/b`.
pub fn conic_pair_param<F: Field>(a: &F, b: &F, eps: Sign, s: &[F; 2], tol: &Tolerance) -> Result<[F; 4]> {
    let zero = a.zero();
    if classify(a, b, &zero, tol)?.kind != SliceKind::ConicPair || a.is_negligible(tol) || b.is_negligible(tol) {
        return Err(Error::WrongClass);
    }
    let ratio = a.div(b).ok_or(Error::WrongClass)?;
    let r = ratio.sqrt().ok_or(Error::SquareRootUnavailable)?;
    let k = (a.one() - ratio).sqrt().ok_or(Error::SquareRootUnavailable)?;
    let k_inv = k.inv().ok_or(Error::WrongClass)?;
    let i = a.imag_unit().ok_or(Error::ImaginaryUnitUnavailable)?;
    let half = a.int(2).inv().ok_or(Error::InvalidParams)?;
    let [s0, s1] = s.clone();
    let prod = s0.clone() * s1.clone() * k_inv;
    Ok([
        prod.clone(),
        eps.apply(i.clone() * r * prod),
        i * half.clone() * (s0.square() + s1.square()),
        half * (s0.square() - s1.square()),
    ])
}

/// `g^{γ,δ}([s0, s1]) = [s0, γ i s0, s1, δ i s1]`.
pub fn four_lines_param<F: Field>(gamma: Sign, delta: Sign, s: &[F; 2]) -> Result<[F; 4]> {
    let [s0, s1] = s.clone();
    let i = s0.imag_unit().ok_or(Error::ImaginaryUnitUnavailable)?;
    Ok([s0.clone(), gamma.apply(i.clone() * s0), s1.clone(), delta.apply(i * s1)])
}
