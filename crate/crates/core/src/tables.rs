//! Deterministic tables of the closed-form sequences, indexed by `n`.

use crate::dunkl::EigenvalueTable;
use crate::error::{Error, Result};
use crate::jacobi::{sieved_verblunsky, JacobiParams, SievedFamily};
use crate::realline::{recurrence_u, UFamily};
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    /// `a_n(N)`.
    Verblunsky,
    /// Coefficients of `ψ_n(z;N)`, one row per nonzero coefficient.
    Psi,
    /// `u_n` of a real-line recurrence family.
    RecurrenceU(UFamily),
    /// `λ_n(N)`, `Λ_n(N)` and `Ξ_n(N)`.
    Eigenvalues,
}

impl TableKind {
    pub fn name(self) -> &'static str {
        match self {
            TableKind::Verblunsky => "verblunsky",
            TableKind::Psi => "psi",
            TableKind::RecurrenceU(_) => "recurrence-u",
            TableKind::Eigenvalues => "eigenvalues",
        }
    }
}

impl FromStr for UFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "generalized_ultra" => Ok(UFamily::GeneralizedUltra),
            "sieved_ultra_1" => Ok(UFamily::SievedUltra1),
            "sieved_ultra_2" => Ok(UFamily::SievedUltra2),
            _ => Err(Error::Domain(format!(
                "unknown recurrence family `{s}` (expected generalized_ultra, sieved_ultra_1 or sieved_ultra_2)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
}

impl Cell {
    /// A real cell; `-0.0` is stored as `0.0` so tables never print a signed zero.
    pub fn real(v: f64) -> Cell {
        Cell::Real(v + 0.0)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Int(v) => write!(f, "{v}"),
            // shortest round-trip representation, always with '.' as separator
            Cell::Real(v) => write!(f, "{v:?}"),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            Cell::Int(v) => s.serialize_i64(v),
            Cell::Real(v) => s.serialize_f64(v),
        }
    }
}

/// A rectangular table with named columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub kind: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<Vec<Cell>> {
        let i = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }
}

/// Serializes as `{"kind": …, "rows": [{column: value, …}, …]}`.
impl Serialize for Table {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Row<'a>(&'a [&'static str], &'a [Cell]);
        impl Serialize for Row<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (k, v) in self.0.iter().zip(self.1) {
                    m.serialize_entry(k, v)?;
                }
                m.end()
            }
        }
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("kind", self.kind)?;
        let rows: Vec<Row<'_>> = self.rows.iter().map(|r| Row(&self.columns, r)).collect();
        m.serialize_entry("rows", &rows)?;
        m.end()
    }
}

/// Builds the table of `kind` for `n = 0..=n_max`.
pub fn emit_table(kind: TableKind, p: &JacobiParams, order: usize, n_max: usize) -> Result<Table> {
    if order == 0 {
        return Err(Error::Domain("N must be at least 1".into()));
    }
    let idx = |n: usize| Cell::Int(n as i64);
    let (columns, rows) = match kind {
        TableKind::Verblunsky => {
            let rows = (0..=n_max)
                .map(|n| Ok(vec![idx(n), Cell::real(sieved_verblunsky(p, order, n)?)]))
                .collect::<Result<_>>()?;
            (vec!["n", "a_n"], rows)
        }
        TableKind::Psi => {
            let fam = SievedFamily::new(*p, order, n_max)?;
            let mut rows = Vec::new();
            for n in 0..=n_max {
                for (e, c) in fam.psi(n)?.iter() {
                    rows.push(vec![idx(n), Cell::Int(e as i64), Cell::real(c.re), Cell::real(c.im)]);
                }
            }
            (vec!["n", "exponent", "re", "im"], rows)
        }
        TableKind::RecurrenceU(family) => {
            let rows = (0..=n_max)
                .map(|n| Ok(vec![idx(n), Cell::real(recurrence_u(family, p, order, n)?)]))
                .collect::<Result<_>>()?;
            (vec!["n", "u_n"], rows)
        }
        TableKind::Eigenvalues => {
            p.validate(1)?;
            let t = EigenvalueTable::new(*p, order);
            let rows = (0..=n_max)
                .map(|n| vec![idx(n), Cell::real(t.lambda(n)), Cell::real(t.big_lambda(n)), Cell::real(t.xi(n))])
                .collect();
            (vec!["n", "lambda_n", "Lambda_n", "Xi_n"], rows)
        }
    };
    Ok(Table { kind: kind.name(), columns, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reals(t: &Table, col: &str) -> Vec<f64> {
        t.column(col)
            .unwrap()
            .into_iter()
            .map(|c| match c {
                Cell::Real(v) => v,
                Cell::Int(v) => v as f64,
            })
            .collect()
    }

    #[test]
    fn verblunsky_legendre_like() {
        let t = emit_table(TableKind::Verblunsky, &JacobiParams::new(0.0, 0.0), 1, 5).unwrap();
        let want = [0.0, -1.0 / 3.0, 0.0, -1.0 / 5.0, 0.0, -1.0 / 7.0];
        for (a, b) in reals(&t, "a_n").iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn eigenvalue_column() {
        let t = emit_table(TableKind::Eigenvalues, &JacobiParams::new(0.0, 0.0), 2, 4).unwrap();
        assert_eq!(reals(&t, "lambda_n"), vec![0.0, 3.0, -1.0, 4.0, -2.0]);
    }

    #[test]
    fn recurrence_pattern() {
        let p = JacobiParams::new(0.5, 0.5);
        let t = emit_table(TableKind::RecurrenceU(UFamily::SievedUltra1), &p, 3, 8).unwrap();
        let u = reals(&t, "u_n");
        assert_eq!(u[0], 0.0);
        assert_eq!(u[2], 1.0);
        assert_eq!(u[5], 1.0);
        assert_eq!(u[8], 1.0);
        assert!(u[3] != 1.0 && u[4] != 1.0 && u[6] != 1.0);
    }

    #[test]
    fn cells_print_with_dot() {
        assert_eq!(Cell::Real(1.0).to_string(), "1.0");
        assert_eq!(Cell::Real(-0.25).to_string(), "-0.25");
        assert_eq!(Cell::Int(3).to_string(), "3");
        assert_eq!(Cell::real(-0.0).to_string(), "0.0");
    }
}
