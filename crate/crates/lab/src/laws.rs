//! JSON law-table fixtures for the symbolic suite.
//!
//! A fixture maps law names to four components, each a list of
//! `[coefficient, monomial]` terms:
//!
//! ```json
//! { "LawX": [[["1", "X0 X0 Y1 Y1"], ["-1", "Y0 Y0 X1 X1"]], [], [], []] }
//! ```
//!
//! Coefficients are rationals (`"-3/2"`); monomials are space-separated
//! variable names among `u v w X0 Y0 Z0 T0 X1 Y1 Z1 T1`, with `w = -u - v`.
//! Laws missing from the fixture keep their built-in tables.

use std::collections::BTreeMap;
use std::path::Path;

use canonmap_core::jacobi::{all_law_tables, AdditionLawId, LawTable};
use canonmap_core::polyform::{SparsePolynomial, Var};
use canonmap_core::scalars::Rational;

use crate::config::ConfigError;

type Fixture = BTreeMap<String, Vec<Vec<(String, String)>>>;

pub fn load_law_tables(path: &Path) -> Result<[LawTable<Rational>; 4], ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
    parse_law_tables(&text)
}

pub fn parse_law_tables(text: &str) -> Result<[LawTable<Rational>; 4], ConfigError> {
    let fixture: Fixture = serde_json::from_str(text).map_err(|e| ConfigError(format!("law fixture: {e}")))?;
    let mut tables = all_law_tables(&Rational::from_int(1));
    for (name, comps) in fixture {
        let idx = AdditionLawId::ALL
            .iter()
            .position(|l| l.name() == name)
            .ok_or_else(|| ConfigError(format!("unknown law {name:?}")))?;
        if comps.len() != 4 {
            return Err(ConfigError(format!("{name} has {} components, expected 4", comps.len())));
        }
        for (k, terms) in comps.iter().enumerate() {
            let mut poly = SparsePolynomial::zero();
            for (coeff, mono) in terms {
                poly = &poly + &term(coeff, mono)?;
            }
            tables[idx][k] = poly;
        }
    }
    Ok(tables)
}

fn term(coeff: &str, mono: &str) -> Result<SparsePolynomial<Rational>, ConfigError> {
    let one = Rational::from_int(1);
    let c = Rational::parse(coeff).ok_or_else(|| ConfigError(format!("bad coefficient {coeff:?}")))?;
    let mut out = SparsePolynomial::constant(c);
    for tok in mono.split_whitespace() {
        let factor = if tok == "w" {
            -&(&SparsePolynomial::var(Var::U, &one) + &SparsePolynomial::var(Var::V, &one))
        } else {
            let v = Var::ALL
                .iter()
                .find(|v| v.name() == tok)
                .ok_or_else(|| ConfigError(format!("unknown variable {tok:?}")))?;
            SparsePolynomial::var(*v, &one)
        };
        out = &out * &factor;
    }
    Ok(out)
}
