use alloc::format;
use alloc::string::{String, ToString};

use super::SuiteReport;
use crate::genus9::{QuadricQ, Q_INDEX};
use crate::jacobi::{all_law_tables, AdditionLawId, LawTable, TorsionLabel};
use crate::polyform::{SignedSubstitution, SparsePolynomial, Var};
use crate::scalars::Rational;
use crate::sections::SectionId;

type Poly = SparsePolynomial<Rational>;

const WITNESS_CHARS: usize = 240;

/// Every identity of the symbolic suite on the built-in law tables.
pub fn run_symbolic_suite() -> SuiteReport {
    run_symbolic_suite_with(&all_law_tables(&Rational::from_int(1)))
}

/// The symbolic suite on caller-supplied law tables, in X, Y, Z, T order.
pub fn run_symbolic_suite_with(tables: &[LawTable<Rational>; 4]) -> SuiteReport {
    let mut r = SuiteReport::new("verify-symbolic");
    compatibility(&mut r, tables);
    output_on_curve(&mut r, tables);
    lawx_graphs(&mut r, tables);
    section_symmetries(&mut r);
    curve_invariance(&mut r);
    r
}

fn one() -> Rational {
    Rational::from_int(1)
}

fn var(v: Var) -> Poly {
    SparsePolynomial::var(v, &one())
}

fn record_zero(r: &mut SuiteReport, check: &str, f: &Poly, label: impl FnOnce() -> String) {
    r.record(check, f.is_zero(), f.len() as f64, || {
        let mut text = f.to_string();
        if text.len() > WITNESS_CHARS {
            text.truncate(WITNESS_CHARS);
            text.push_str("...");
        }
        format!("{}: {} terms remain: {}", label(), f.len(), text)
    });
}

fn compatibility(r: &mut SuiteReport, tables: &[LawTable<Rational>; 4]) {
    for h in 0..4 {
        for k in (h + 1)..4 {
            for i in 0..4 {
                for j in (i + 1)..4 {
                    let minor = &(&tables[h][i] * &tables[k][j]) - &(&tables[h][j] * &tables[k][i]);
                    let (lh, lk) = (AdditionLawId::ALL[h], AdditionLawId::ALL[k]);
                    record_zero(r, "compatibility", &minor.nf(), || format!("{lh}/{lk} minor {i}^{j}"));
                }
            }
        }
    }
}

fn output_on_curve(r: &mut SuiteReport, tables: &[LawTable<Rational>; 4]) {
    let (u, v) = (var(Var::U), var(Var::V));
    for (law, t) in AdditionLawId::ALL.iter().zip(tables) {
        let sq: [Poly; 4] = core::array::from_fn(|k| &t[k] * &t[k]);
        let first = &(&(&u * &sq[0]) + &sq[1]) - &sq[2];
        let second = &(&(&v * &sq[0]) + &sq[2]) - &sq[3];
        record_zero(r, "output-on-curve", &first.nf(), || format!("{law} first quadric"));
        record_zero(r, "output-on-curve", &second.nf(), || format!("{law} second quadric"));
    }
}

fn lawx_graphs(r: &mut SuiteReport, tables: &[LawTable<Rational>; 4]) {
    for g in TorsionLabel::NONTRIVIAL {
        let sub = SignedSubstitution::graph(g.signs());
        for (k, comp) in tables[0].iter().enumerate() {
            record_zero(r, "lawx-exceptional-graph", &comp.substitute(&sub).nf(), || {
                format!("LawX component {k} on Q = {g}.P")
            });
        }
    }
}

/// Sign `s` with `f` equal to `s * base`, if any.
fn sign_between(f: &Poly, base: &Poly) -> Option<i8> {
    if f == base {
        Some(1)
    } else if *f == -base {
        Some(-1)
    } else {
        None
    }
}

fn section_symmetries(r: &mut SuiteReport) {
    let swap = SignedSubstitution::swap_slots();
    for s in SectionId::ALL {
        let f = s.polynomial(&one());
        let swapped = f.substitute(&swap);
        record_zero(r, "section-swap-antisymmetry", &(&swapped + &f), || format!("{s}"));
    }
    for g in TorsionLabel::NONTRIVIAL {
        let both = SignedSubstitution::identity().sign_slot(0, g.signs()).sign_slot(1, g.signs());
        for s in SectionId::ALL {
            let f = s.polynomial(&one());
            record_zero(r, "section-diagonal-invariance", &(&f.substitute(&both) - &f), || format!("{s} under {g}"));
        }
    }
    let table: [(TorsionLabel, [i8; 6]); 3] = [
        (TorsionLabel::A, [1, 1, 1, 1, -1, -1]),
        (TorsionLabel::B, [1, 1, 1, -1, 1, -1]),
        (TorsionLabel::AB, [1, 1, 1, -1, -1, 1]),
    ];
    for (g, expected) in table {
        let sub = SignedSubstitution::identity().sign_slot(1, g.signs());
        for (s, want) in SectionId::ALL.into_iter().zip(expected) {
            let f = s.polynomial(&one());
            let got = sign_between(&f.substitute(&sub), &f);
            r.record("section-parity", got == Some(want), 0.0, || {
                format!("{s} under (P, {g}.Q): expected sign {want}, found {got:?}")
            });
        }
    }
    for g in TorsionLabel::ALL {
        let sub = SignedSubstitution::graph(g.signs());
        for s in SectionId::ALL {
            let f = s.polynomial(&one()).substitute(&sub);
            record_zero(r, "section-ramification-vanishing", &f.nf(), || format!("{s} on Q = {g}.P"));
        }
    }
}

/// The two equations of the genus-9 curve in the first slot's variables.
fn curve_equations() -> [Poly; 2] {
    let x: [Poly; 4] = core::array::from_fn(|k| var(Var::coord(0, k)));
    let sq: [Poly; 4] = core::array::from_fn(|k| &x[k] * &x[k]);
    let sum = &(&(&sq[0] + &sq[1]) + &sq[2]) + &sq[3];
    let q = QuadricQ::<Rational>::default_form();
    let mut quartic = -&(&(&x[0] * &x[1]) * &(&x[2] * &x[3]));
    for (c, &(i, j)) in q.coeffs().iter().zip(Q_INDEX.iter()) {
        quartic = &quartic + &(&sq[i] * &sq[j]).scale(c);
    }
    [sum, quartic]
}

fn curve_invariance(r: &mut SuiteReport) {
    let eqs = curve_equations();
    for g in TorsionLabel::NONTRIVIAL {
        let sub = SignedSubstitution::identity().sign_slot(0, g.signs());
        for (n, e) in eqs.iter().enumerate() {
            record_zero(r, "curve-invariance", &(&e.substitute(&sub) - e), || format!("equation {n} under {g}"));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_suite_passes_with_expected_counts() {
        let r = run_symbolic_suite();
        assert!(r.passed(), "{:?}", r.failures);
        let count = |n: &str| r.check(n).map(|c| c.count);
        assert_eq!(count("compatibility"), Some(36));
        assert_eq!(count("output-on-curve"), Some(8));
        assert_eq!(count("lawx-exceptional-graph"), Some(12));
        assert_eq!(count("section-swap-antisymmetry"), Some(6));
        assert_eq!(count("section-diagonal-invariance"), Some(18));
        assert_eq!(count("section-parity"), Some(18));
        assert_eq!(count("section-ramification-vanishing"), Some(24));
        assert_eq!(count("curve-invariance"), Some(6));
        assert_eq!(r.max_residual, 0.0);
    }

    #[test]
    fn single_sign_flip_is_caught() {
        let mut tables = all_law_tables(&one());
        tables[1][2] =
            &(&var(Var::U) * &var(Var::V)) * &SparsePolynomial::term(one(), &[Var::X0, Var::X0, Var::X1, Var::X1]);
        tables[1][2] = &tables[1][2] - &SparsePolynomial::term(one(), &[Var::Z0, Var::Z0, Var::Z1, Var::Z1]);
        let r = run_symbolic_suite_with(&tables);
        assert!(!r.passed());
        assert!(!r.failures.is_empty());
        assert!(r.failures.iter().all(|f| !f.witness.is_empty()));
        assert!(r.check("compatibility").unwrap().failed > 0);
    }

    #[test]
    fn lawy_components_do_not_vanish_on_torsion_graphs() {
        // the graphs are exceptional for LawX only
        let tables = all_law_tables(&one());
        let sub = SignedSubstitution::graph(TorsionLabel::A.signs());
        assert!(tables[1].iter().any(|c| !c.substitute(&sub).nf().is_zero()));
    }
}
