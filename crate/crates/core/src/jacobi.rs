//! The Jacobi model `uX^2 + Y^2 = Z^2`, `vX^2 + Z^2 = T^2` and its four
//! biquadratic addition laws.

use alloc::vec::Vec;
use core::fmt;

use rand::RngCore;

use crate::error::{Error, Result};
use crate::polyform::{SparsePolynomial, Var};
use crate::projective::{normalize_array, proj_eq};
use crate::scalars::{Field, Fp, Tolerance};

/// Curve parameters. `w = -u - v` is derived, never supplied.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiParams<F> {
    u: F,
    v: F,
    w: F,
}

impl<F: Field> JacobiParams<F> {
    pub fn new(u: F, v: F) -> Result<Self> {
        Self::with_tolerance(u, v, &Tolerance::default())
    }

    pub fn with_tolerance(u: F, v: F, tol: &Tolerance) -> Result<Self> {
        let w = -(u.clone() + v.clone());
        if u.is_negligible(tol) || v.is_negligible(tol) || w.is_negligible(tol) {
            return Err(Error::SingularParameters);
        }
        Ok(JacobiParams { u, v, w })
    }

    pub fn u(&self) -> &F {
        &self.u
    }

    pub fn v(&self) -> &F {
        &self.v
    }

    pub fn w(&self) -> &F {
        &self.w
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AdditionLawId {
    LawX,
    LawY,
    LawZ,
    LawT,
}

impl AdditionLawId {
    pub const ALL: [AdditionLawId; 4] =
        [AdditionLawId::LawX, AdditionLawId::LawY, AdditionLawId::LawZ, AdditionLawId::LawT];

    /// Coordinate index of the hyperplane whose pullback under the
    /// difference map is the exceptional divisor. `LawY` and `LawZ` are
    /// exchanged: at `P = O` they reduce to `Z(Q).Q` and `Y(Q).Q`.
    pub fn hyperplane(self) -> usize {
        match self {
            AdditionLawId::LawX => 0,
            AdditionLawId::LawY => 2,
            AdditionLawId::LawZ => 1,
            AdditionLawId::LawT => 3,
        }
    }

    pub fn name(self) -> &'static str {
        ["LawX", "LawY", "LawZ", "LawT"][self as usize]
    }
}

impl fmt::Display for AdditionLawId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Element of the Klein four-group of 2-torsion points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TorsionLabel {
    Id,
    A,
    B,
    AB,
}

impl TorsionLabel {
    pub const ALL: [TorsionLabel; 4] = [TorsionLabel::Id, TorsionLabel::A, TorsionLabel::B, TorsionLabel::AB];
    pub const NONTRIVIAL: [TorsionLabel; 3] = [TorsionLabel::A, TorsionLabel::B, TorsionLabel::AB];

    fn bits(self) -> u8 {
        self as u8
    }

    fn from_bits(b: u8) -> Self {
        TorsionLabel::ALL[(b & 3) as usize]
    }

    pub fn compose(self, other: Self) -> Self {
        Self::from_bits(self.bits() ^ other.bits())
    }

    /// Coordinate signs of the action on `(X, Y, Z, T)`.
    pub fn signs(self) -> [i8; 4] {
        match self {
            TorsionLabel::Id => [1, 1, 1, 1],
            TorsionLabel::A => [1, 1, -1, -1],
            TorsionLabel::B => [1, -1, 1, -1],
            TorsionLabel::AB => [1, -1, -1, 1],
        }
    }

    pub fn apply<F: Field>(self, p: &[F; 4]) -> [F; 4] {
        let s = self.signs();
        core::array::from_fn(|k| if s[k] < 0 { -p[k].clone() } else { p[k].clone() })
    }

    pub fn name(self) -> &'static str {
        ["id", "a", "b", "ab"][self as usize]
    }

    pub fn parse(s: &str) -> Option<Self> {
        TorsionLabel::ALL.into_iter().find(|g| g.name() == s)
    }
}

impl fmt::Display for TorsionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A normalized point of some Jacobi curve. Exact-field points compare by `==`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JacobiPoint<F> {
    coords: [F; 4],
}

impl<F: Field> JacobiPoint<F> {
    pub fn coords(&self) -> &[F; 4] {
        &self.coords
    }

    pub fn x(&self) -> &F {
        &self.coords[0]
    }
}

impl<F: Field> fmt::Display for JacobiPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z, t] = &self.coords;
        write!(f, "({x}, {y}, {z}, {t})")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct JacobiCurve<F> {
    params: JacobiParams<F>,
    tol: Tolerance,
}

impl<F: Field> JacobiCurve<F> {
    pub fn new(u: F, v: F) -> Result<Self> {
        Ok(JacobiCurve { params: JacobiParams::new(u, v)?, tol: Tolerance::default() })
    }

    pub fn from_params(params: JacobiParams<F>, tol: Tolerance) -> Self {
        JacobiCurve { params, tol }
    }

    pub fn params(&self) -> &JacobiParams<F> {
        &self.params
    }

    pub fn tolerance(&self) -> &Tolerance {
        &self.tol
    }

    /// Residuals of both quadrics at the given coordinates.
    pub fn residuals(&self, p: &[F; 4]) -> [F; 2] {
        let [x, y, z, t] = p;
        let (x2, y2, z2, t2) = (x.square(), y.square(), z.square(), t.square());
        [self.params.u.clone() * x2.clone() + y2 - z2.clone(), self.params.v.clone() * x2 + z2 - t2]
    }

    pub fn contains(&self, p: &[F; 4]) -> bool {
        let Ok(n) = normalize_array(p) else {
            return false;
        };
        self.residuals(&n).iter().all(|r| r.is_negligible(&self.tol))
    }

    pub fn point(&self, coords: [F; 4]) -> Result<JacobiPoint<F>> {
        let coords = normalize_array(&coords)?;
        if !self.residuals(&coords).iter().all(|r| r.is_negligible(&self.tol)) {
            return Err(Error::NotOnCurve);
        }
        Ok(JacobiPoint { coords })
    }

    pub fn identity(&self) -> JacobiPoint<F> {
        self.torsion_point(TorsionLabel::Id)
    }

    pub fn torsion_point(&self, g: TorsionLabel) -> JacobiPoint<F> {
        let one = self.params.u.one();
        let zero = one.zero();
        let base = [zero, one.clone(), one.clone(), one];
        JacobiPoint { coords: normalize_array(&g.apply(&base)).expect("torsion point is nonzero") }
    }

    /// `T_id, T_a, T_b, T_ab` in [`TorsionLabel::ALL`] order.
    pub fn two_torsion(&self) -> [JacobiPoint<F>; 4] {
        TorsionLabel::ALL.map(|g| self.torsion_point(g))
    }

    /// Raw law output; all zero on the exceptional locus of `law`.
    pub fn apply_law(&self, law: AdditionLawId, p: &JacobiPoint<F>, q: &JacobiPoint<F>) -> [F; 4] {
        apply_law_raw(&self.params, law, &p.coords, &q.coords)
    }

    fn law_vanishes(&self, out: &[F; 4]) -> bool {
        if F::EXACT {
            out.iter().all(F::is_zero)
        } else {
            out.iter().all(|c| c.magnitude() <= self.tol.proj)
        }
    }

    pub fn is_exceptional(&self, law: AdditionLawId, p: &JacobiPoint<F>, q: &JacobiPoint<F>) -> bool {
        self.law_vanishes(&self.apply_law(law, p, q))
    }

    /// First law, in X, Y, Z, T order, whose output does not vanish.
    pub fn complete_add(&self, p: &JacobiPoint<F>, q: &JacobiPoint<F>) -> Result<JacobiPoint<F>> {
        self.complete_add_with_law(p, q).map(|(pt, _)| pt)
    }

    pub fn complete_add_with_law(
        &self,
        p: &JacobiPoint<F>,
        q: &JacobiPoint<F>,
    ) -> Result<(JacobiPoint<F>, AdditionLawId)> {
        for law in AdditionLawId::ALL {
            let out = self.apply_law(law, p, q);
            if !self.law_vanishes(&out) {
                return Ok((JacobiPoint { coords: normalize_array(&out)? }, law));
            }
        }
        Err(Error::AllLawsVanish)
    }

    pub fn negate(&self, p: &JacobiPoint<F>) -> JacobiPoint<F> {
        let [x, y, z, t] = p.coords.clone();
        JacobiPoint { coords: normalize_array(&[-x, y, z, t]).expect("nonzero point") }
    }

    pub fn translate_by_torsion(&self, g: TorsionLabel, p: &JacobiPoint<F>) -> JacobiPoint<F> {
        JacobiPoint { coords: normalize_array(&g.apply(&p.coords)).expect("nonzero point") }
    }

    pub fn scalar_mul(&self, n: i64, p: &JacobiPoint<F>) -> Result<JacobiPoint<F>> {
        let mut base = if n < 0 { self.negate(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = self.identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.complete_add(&acc, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.complete_add(&base, &base)?;
            }
        }
        Ok(acc)
    }

    pub fn proj_eq(&self, p: &JacobiPoint<F>, q: &JacobiPoint<F>) -> bool {
        if F::EXACT {
            p == q
        } else {
            proj_eq(&p.coords, &q.coords, &self.tol).unwrap_or(false)
        }
    }

    /// Rejection sampling: random `X`, `Y`, then square roots for `Z`, `T`.
    pub fn random_point<R: RngCore + ?Sized>(&self, rng: &mut R) -> Result<JacobiPoint<F>> {
        const ATTEMPTS: usize = 10_000;
        let u = &self.params.u;
        for _ in 0..ATTEMPTS {
            let x = u.sample(rng);
            let y = u.sample(rng);
            let Some(z) = (u.clone() * x.square() + y.square()).sqrt() else {
                continue;
            };
            let Some(t) = (self.params.v.clone() * x.square() + z.square()).sqrt() else {
                continue;
            };
            if let Ok(p) = self.point([x, y, z, t]) {
                return Ok(p);
            }
        }
        Err(Error::SamplerExhausted)
    }
}

/// Largest prime for which [`JacobiCurve::enumerate_points`] is allowed.
pub const ENUMERATION_LIMIT: u64 = 10_000;

impl JacobiCurve<Fp> {
    /// Every projective point once: the four points with `X = 0`, then
    /// `X = 1` and all `Y`.
    pub fn enumerate_points(&self) -> Result<Vec<JacobiPoint<Fp>>> {
        let p = self.params.u.modulus();
        if p > ENUMERATION_LIMIT {
            return Err(Error::InvalidModulus(p));
        }
        let mut out: Vec<JacobiPoint<Fp>> = self.two_torsion().into();
        let one = self.params.u.one();
        for y in 0..p {
            let y = one.int(y as i64);
            for z in both_roots(&(self.params.u + y.square())) {
                for t in both_roots(&(self.params.v + z.square())) {
                    out.push(JacobiPoint { coords: [one, y, z, t] });
                }
            }
        }
        Ok(out)
    }
}

fn both_roots(x: &Fp) -> Vec<Fp> {
    match x.sqrt() {
        None => Vec::new(),
        Some(r) if r.is_zero() => alloc::vec![r],
        Some(r) => alloc::vec![r, -r],
    }
}

/// Direct evaluation of the four laws on raw coordinates.
pub fn apply_law_raw<F: Field>(params: &JacobiParams<F>, law: AdditionLawId, p: &[F; 4], q: &[F; 4]) -> [F; 4] {
    let (u, v, w) = (params.u.clone(), params.v.clone(), params.w.clone());
    let [x0, y0, z0, t0] = p.clone();
    let [x1, y1, z1, t1] = q.clone();
    let m = |a: &F, b: &F, c: &F, d: &F| a.clone() * b.clone() * c.clone() * d.clone();
    match law {
        AdditionLawId::LawX => [
            m(&x0, &x0, &y1, &y1) - m(&y0, &y0, &x1, &x1),
            m(&x0, &y0, &z1, &t1) - m(&z0, &t0, &x1, &y1),
            m(&x0, &z0, &y1, &t1) - m(&y0, &t0, &x1, &z1),
            m(&x0, &t0, &y1, &z1) - m(&y0, &z0, &x1, &t1),
        ],
        AdditionLawId::LawY => [
            m(&x0, &z0, &y1, &t1) + m(&y0, &t0, &x1, &z1),
            -(u.clone() * m(&x0, &t0, &x1, &t1)) + m(&y0, &z0, &y1, &z1),
            u * v.clone() * m(&x0, &x0, &x1, &x1) + m(&z0, &z0, &z1, &z1),
            v * m(&x0, &y0, &x1, &y1) + m(&z0, &t0, &z1, &t1),
        ],
        AdditionLawId::LawZ => [
            m(&x0, &y0, &z1, &t1) + m(&z0, &t0, &x1, &y1),
            u.clone() * w.clone() * m(&x0, &x0, &x1, &x1) + m(&y0, &y0, &y1, &y1),
            u * m(&x0, &t0, &x1, &t1) + m(&y0, &z0, &y1, &z1),
            -(w * m(&x0, &z0, &x1, &z1)) + m(&y0, &t0, &y1, &t1),
        ],
        AdditionLawId::LawT => [
            u.clone() * (m(&x0, &t0, &y1, &z1) + m(&y0, &z0, &x1, &t1)),
            u.clone() * (w.clone() * m(&x0, &z0, &x1, &z1) + m(&y0, &t0, &y1, &t1)),
            u * (-(v.clone() * m(&x0, &y0, &x1, &y1)) + m(&z0, &t0, &z1, &t1)),
            -(v * m(&y0, &y0, &y1, &y1)) - w * m(&z0, &z0, &z1, &z1),
        ],
    }
}

/// One row of a law table: the four components of one addition law.
pub type LawTable<F> = [SparsePolynomial<F>; 4];

/// The components of `law` with `u`, `v` symbolic and `w = -u - v`.
pub fn law_table<F: Field>(law: AdditionLawId, one: &F) -> LawTable<F> {
    use Var::*;
    let t = |c: i64, vars: &[Var]| SparsePolynomial::term(one.int(c), vars);
    let u = t(1, &[U]);
    let v = t(1, &[V]);
    let w = &(-&u) - &v;
    match law {
        AdditionLawId::LawX => [
            &t(1, &[X0, X0, Y1, Y1]) - &t(1, &[Y0, Y0, X1, X1]),
            &t(1, &[X0, Y0, Z1, T1]) - &t(1, &[Z0, T0, X1, Y1]),
            &t(1, &[X0, Z0, Y1, T1]) - &t(1, &[Y0, T0, X1, Z1]),
            &t(1, &[X0, T0, Y1, Z1]) - &t(1, &[Y0, Z0, X1, T1]),
        ],
        AdditionLawId::LawY => [
            &t(1, &[X0, Z0, Y1, T1]) + &t(1, &[Y0, T0, X1, Z1]),
            &t(-1, &[U, X0, T0, X1, T1]) + &t(1, &[Y0, Z0, Y1, Z1]),
            &t(1, &[U, V, X0, X0, X1, X1]) + &t(1, &[Z0, Z0, Z1, Z1]),
            &t(1, &[V, X0, Y0, X1, Y1]) + &t(1, &[Z0, T0, Z1, T1]),
        ],
        AdditionLawId::LawZ => [
            &t(1, &[X0, Y0, Z1, T1]) + &t(1, &[Z0, T0, X1, Y1]),
            &(&(&u * &w) * &t(1, &[X0, X0, X1, X1])) + &t(1, &[Y0, Y0, Y1, Y1]),
            &t(1, &[U, X0, T0, X1, T1]) + &t(1, &[Y0, Z0, Y1, Z1]),
            &(&(-&w) * &t(1, &[X0, Z0, X1, Z1])) + &t(1, &[Y0, T0, Y1, T1]),
        ],
        AdditionLawId::LawT => [
            &u * &(&t(1, &[X0, T0, Y1, Z1]) + &t(1, &[Y0, Z0, X1, T1])),
            &u * &(&(&w * &t(1, &[X0, Z0, X1, Z1])) + &t(1, &[Y0, T0, Y1, T1])),
            &u * &(&t(-1, &[V, X0, Y0, X1, Y1]) + &t(1, &[Z0, T0, Z1, T1])),
            &t(-1, &[V, Y0, Y0, Y1, Y1]) - &(&w * &t(1, &[Z0, Z0, Z1, Z1])),
        ],
    }
}

/// All four law tables in [`AdditionLawId::ALL`] order.
pub fn all_law_tables<F: Field>(one: &F) -> [LawTable<F>; 4] {
    AdditionLawId::ALL.map(|law| law_table(law, one))
}
