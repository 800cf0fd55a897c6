//! The six determinantal forms `M_a(P) M_b(Q) - M_b(P) M_a(Q)` of bidegree (2, 2).

use core::fmt;

use crate::jacobi::TorsionLabel;
use crate::polyform::{SparsePolynomial, Var};
use crate::scalars::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SectionId {
    Eta12,
    Eta13,
    Eta23,
    Omega45,
    Omega67,
    Omega89,
}

/// A quadratic monomial `coord_i * coord_j`.
type Quad = (usize, usize);

impl SectionId {
    pub const ALL: [SectionId; 6] = [
        SectionId::Eta12,
        SectionId::Eta13,
        SectionId::Eta23,
        SectionId::Omega45,
        SectionId::Omega67,
        SectionId::Omega89,
    ];

    pub const OMEGAS: [SectionId; 3] = [SectionId::Omega45, SectionId::Omega67, SectionId::Omega89];

    fn monomials(self) -> (Quad, Quad) {
        match self {
            SectionId::Eta12 => ((0, 0), (1, 1)),
            SectionId::Eta13 => ((0, 0), (2, 2)),
            SectionId::Eta23 => ((1, 1), (2, 2)),
            SectionId::Omega45 => ((0, 1), (2, 3)),
            SectionId::Omega67 => ((0, 2), (1, 3)),
            SectionId::Omega89 => ((0, 3), (1, 2)),
        }
    }

    pub fn name(self) -> &'static str {
        ["eta12", "eta13", "eta23", "omega45", "omega67", "omega89"][self as usize]
    }

    pub fn eval<F: Field>(self, p: &[F; 4], q: &[F; 4]) -> F {
        let ((i, j), (k, l)) = self.monomials();
        let m = |x: &[F; 4], a: usize, b: usize| x[a].clone() * x[b].clone();
        m(p, i, j) * m(q, k, l) - m(p, k, l) * m(q, i, j)
    }

    /// Partial derivatives with respect to the coordinates of `P` and of `Q`.
    pub fn gradient<F: Field>(self, p: &[F; 4], q: &[F; 4]) -> ([F; 4], [F; 4]) {
        let ((i, j), (k, l)) = self.monomials();
        let m = |x: &[F; 4], a: usize, b: usize| x[a].clone() * x[b].clone();
        let dm = |x: &[F; 4], a: usize, b: usize| -> [F; 4] {
            let mut g: [F; 4] = core::array::from_fn(|_| x[0].zero());
            g[a] = g[a].clone() + x[b].clone();
            g[b] = g[b].clone() + x[a].clone();
            g
        };
        let (ma_q, mb_q, ma_p, mb_p) = (m(q, i, j), m(q, k, l), m(p, i, j), m(p, k, l));
        let (da_p, db_p, da_q, db_q) = (dm(p, i, j), dm(p, k, l), dm(q, i, j), dm(q, k, l));
        let gp = core::array::from_fn(|c| da_p[c].clone() * mb_q.clone() - db_p[c].clone() * ma_q.clone());
        let gq = core::array::from_fn(|c| ma_p.clone() * db_q[c].clone() - mb_p.clone() * da_q[c].clone());
        (gp, gq)
    }

    pub fn polynomial<F: Field>(self, one: &F) -> SparsePolynomial<F> {
        let ((i, j), (k, l)) = self.monomials();
        let c = |s: usize, a: usize| Var::coord(s, a);
        let pos = SparsePolynomial::term(one.one(), &[c(0, i), c(0, j), c(1, k), c(1, l)]);
        let neg = SparsePolynomial::term(one.one(), &[c(0, k), c(0, l), c(1, i), c(1, j)]);
        &pos - &neg
    }

    /// Sign acquired under `(P, Q) -> (P, g.Q)`.
    pub fn parity(self, g: TorsionLabel) -> i8 {
        let ((i, j), _) = self.monomials();
        let s = g.signs();
        s[i] * s[j]
    }

    /// Whether the section is invariant under `(P, Q) -> (P, g.Q)`.
    pub fn is_even(self, g: TorsionLabel) -> bool {
        self.parity(g) > 0
    }
}

impl fmt::Display for SectionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// All six values in [`SectionId::ALL`] order.
pub fn eval_all<F: Field>(p: &[F; 4], q: &[F; 4]) -> [F; 6] {
    SectionId::ALL.map(|s| s.eval(p, q))
}

/// Parity vector of the six sections under `(P, Q) -> (P, g.Q)`.
pub fn section_parity(g: TorsionLabel) -> [i8; 6] {
    SectionId::ALL.map(|s| s.parity(g))
}

/// The omega section spanning the character eigenspace that is even
/// under `g` (for `g != id`).
pub fn even_omega(g: TorsionLabel) -> Option<SectionId> {
    match g {
        TorsionLabel::Id => None,
        TorsionLabel::A => Some(SectionId::Omega45),
        TorsionLabel::B => Some(SectionId::Omega67),
        TorsionLabel::AB => Some(SectionId::Omega89),
    }
}

/// The two omega sections that change sign under `g`.
pub fn odd_omegas(g: TorsionLabel) -> [SectionId; 2] {
    match g {
        TorsionLabel::Id | TorsionLabel::A => [SectionId::Omega67, SectionId::Omega89],
        TorsionLabel::B => [SectionId::Omega45, SectionId::Omega89],
        TorsionLabel::AB => [SectionId::Omega45, SectionId::Omega67],
    }
}
