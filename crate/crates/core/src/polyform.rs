//! Sparse polynomials in the ten variables `u, v, X0, Y0, Z0, T0, X1, Y1, Z1, T1`
//! and their normal form modulo the ideal of the Jacobi curve on both factors.
//!
//! The parameters `u`, `v` are variables, so one reduction certifies an
//! identity for the whole family of curves at once.

use alloc::collections::BTreeMap;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::scalars::Field;

/// Number of variables in every monomial.
pub const NVARS: usize = 10;

/// Dense exponent vector, indexed by [`Var`].
pub type Monomial = [u8; NVARS];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    U = 0,
    V = 1,
    X0 = 2,
    Y0 = 3,
    Z0 = 4,
    T0 = 5,
    X1 = 6,
    Y1 = 7,
    Z1 = 8,
    T1 = 9,
}

impl Var {
    pub const ALL: [Var; NVARS] =
        [Var::U, Var::V, Var::X0, Var::Y0, Var::Z0, Var::T0, Var::X1, Var::Y1, Var::Z1, Var::T1];

    /// The `k`-th coordinate (X, Y, Z, T) of point slot `slot` (0 or 1).
    pub fn coord(slot: usize, k: usize) -> Var {
        assert!(slot < 2 && k < 4);
        Var::ALL[2 + 4 * slot + k]
    }

    pub fn name(self) -> &'static str {
        ["u", "v", "X0", "Y0", "Z0", "T0", "X1", "Y1", "Z1", "T1"][self as usize]
    }
}

/// Polynomial with nonzero coefficients in a field `F`.
#[derive(Clone, PartialEq)]
pub struct SparsePolynomial<F> {
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> SparsePolynomial<F> {
    pub fn zero() -> Self {
        SparsePolynomial { terms: BTreeMap::new() }
    }

    pub fn constant(c: F) -> Self {
        let mut p = Self::zero();
        p.add_term([0; NVARS], c);
        p
    }

    pub fn var(v: Var, one: &F) -> Self {
        let mut m = [0; NVARS];
        m[v as usize] = 1;
        Self::monomial(m, one.one())
    }

    pub fn monomial(m: Monomial, c: F) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    /// Product of variables, each listed once per power, times `c`.
    pub fn term(c: F, vars: &[Var]) -> Self {
        let mut m = [0; NVARS];
        for &v in vars {
            m[v as usize] += 1;
        }
        Self::monomial(m, c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(m, sum);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero();
        for (m, a) in &self.terms {
            out.add_term(*m, a.clone() * c.clone());
        }
        out
    }

    /// Normal form modulo the Jacobi ideal on both factors.
    pub fn nf(&self) -> Self {
        JacobiIdealReducer.reduce(self)
    }

    pub fn is_in_ideal(&self) -> bool {
        self.nf().is_zero()
    }

    /// Substitutes parameters and both points. Variables absent from the
    /// polynomial are never touched, so any tuple lengths of 4 suffice.
    pub fn evaluate(&self, u: &F, v: &F, p: &[F], q: &[F]) -> Option<F> {
        if p.len() != 4 || q.len() != 4 {
            return None;
        }
        let mut values: [Option<&F>; NVARS] = [None; NVARS];
        values[0] = Some(u);
        values[1] = Some(v);
        for k in 0..4 {
            values[2 + k] = Some(&p[k]);
            values[6 + k] = Some(&q[k]);
        }
        let one = u.one();
        let mut acc = u.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t = t * values[i].unwrap_or(&one).clone();
                }
            }
            acc = acc + t;
        }
        Some(acc)
    }

    /// Replaces every variable by a signed variable: `map[i] = (j, negate)`
    /// sends variable `i` to `±variable j`.
    pub fn substitute(&self, map: &SignedSubstitution) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut nm = [0u8; NVARS];
            let mut negate = false;
            for (i, &e) in m.iter().enumerate() {
                let (j, neg) = map.0[i];
                nm[j as usize] += e;
                if neg && e % 2 == 1 {
                    negate = !negate;
                }
            }
            out.add_term(nm, if negate { -c.clone() } else { c.clone() });
        }
        out
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().map(|&e| e as u32).sum()).max().unwrap_or(0)
    }
}

impl<F: Field> fmt::Debug for SparsePolynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<F: Field> fmt::Display for SparsePolynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*{}", Var::ALL[i].name())?,
                    _ => write!(f, "*{}^{e}", Var::ALL[i].name())?,
                }
            }
        }
        Ok(())
    }
}

impl<F: Field> Add for &SparsePolynomial<F> {
    type Output = SparsePolynomial<F>;
    fn add(self, rhs: Self) -> SparsePolynomial<F> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<F: Field> Sub for &SparsePolynomial<F> {
    type Output = SparsePolynomial<F>;
    fn sub(self, rhs: Self) -> SparsePolynomial<F> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl<F: Field> Mul for &SparsePolynomial<F> {
    type Output = SparsePolynomial<F>;
    fn mul(self, rhs: Self) -> SparsePolynomial<F> {
        let mut out = SparsePolynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut m = *ma;
                for i in 0..NVARS {
                    m[i] += mb[i];
                }
                out.add_term(m, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<F: Field> Neg for &SparsePolynomial<F> {
    type Output = SparsePolynomial<F>;
    fn neg(self) -> SparsePolynomial<F> {
        let mut out = SparsePolynomial::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<F: Field> $tr for SparsePolynomial<F> {
            type Output = SparsePolynomial<F>;
            fn $method(self, rhs: Self) -> SparsePolynomial<F> {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// `map[i] = (target, negate)`: variable `i` becomes `±target`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignedSubstitution(pub [(Var, bool); NVARS]);

impl SignedSubstitution {
    pub fn identity() -> Self {
        SignedSubstitution(core::array::from_fn(|i| (Var::ALL[i], false)))
    }

    /// Exchanges the two point slots.
    pub fn swap_slots() -> Self {
        let mut s = Self::identity();
        for k in 0..4 {
            s.0[Var::coord(0, k) as usize] = (Var::coord(1, k), false);
            s.0[Var::coord(1, k) as usize] = (Var::coord(0, k), false);
        }
        s
    }

    /// Multiplies the coordinates of `slot` by the given signs.
    pub fn sign_slot(mut self, slot: usize, signs: [i8; 4]) -> Self {
        for (k, &sg) in signs.iter().enumerate() {
            let idx = Var::coord(slot, k) as usize;
            let (target, neg) = self.0[idx];
            self.0[idx] = (target, neg ^ (sg < 0));
        }
        self
    }

    /// Sends the second slot onto the first slot with the given signs,
    /// i.e. substitutes `Q = signs . P`.
    pub fn graph(signs: [i8; 4]) -> Self {
        let mut s = Self::identity();
        for (k, &sg) in signs.iter().enumerate() {
            s.0[Var::coord(1, k) as usize] = (Var::coord(0, k), sg < 0);
        }
        s
    }
}

/// Rewrites `Z_i^2 -> u X_i^2 + Y_i^2` and `T_i^2 -> v X_i^2 + Z_i^2`.
///
/// The leading monomials `Z_i^2`, `T_i^2` are pairwise coprime, so the
/// rewrite system is confluent and the result is the unique normal form.
/// Every step lowers the (T-degree, Z-degree) pair lexicographically.
#[derive(Clone, Copy, Debug, Default)]
pub struct JacobiIdealReducer;

impl JacobiIdealReducer {
    pub fn reduce<F: Field>(&self, f: &SparsePolynomial<F>) -> SparsePolynomial<F> {
        let mut current = f.clone();
        loop {
            let mut next = SparsePolynomial::zero();
            let mut changed = false;
            for (m, c) in &current.terms {
                match rewrite_once(m) {
                    Some(parts) => {
                        changed = true;
                        for nm in parts {
                            next.add_term(nm, c.clone());
                        }
                    }
                    None => next.add_term(*m, c.clone()),
                }
            }
            current = next;
            if !changed {
                return current;
            }
        }
    }
}

/// One rewrite of the first reducible power; returns the two replacement
/// monomials (both with coefficient +1).
fn rewrite_once(m: &Monomial) -> Option<[Monomial; 2]> {
    for slot in 0..2 {
        let (x, y, z, t) = (
            Var::coord(slot, 0) as usize,
            Var::coord(slot, 1) as usize,
            Var::coord(slot, 2) as usize,
            Var::coord(slot, 3) as usize,
        );
        if m[t] >= 2 {
            let mut base = *m;
            base[t] -= 2;
            let mut a = base;
            a[Var::V as usize] += 1;
            a[x] += 2;
            let mut b = base;
            b[z] += 2;
            return Some([a, b]);
        }
        if m[z] >= 2 {
            let mut base = *m;
            base[z] -= 2;
            let mut a = base;
            a[Var::U as usize] += 1;
            a[x] += 2;
            let mut b = base;
            b[y] += 2;
            return Some([a, b]);
        }
    }
    None
}
