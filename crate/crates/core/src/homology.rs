//! Homology of a quantum-graded complex over `Z`, `Q` or `Z/2`.
//!
//! Each quantum grading `j` is handled separately. Over a field the rank at
//! `(i, j)` is `dim C^(i,j) - rank d^i - rank d^(i-1)`; over the integers
//! the torsion at `(i+1, j)` comes from the invariant factors of `d^i`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::bracket::{bracket_q, jones};
use crate::complex::BigradedComplex;
use crate::diagram::KnotDiagram;
use crate::error::{Error, Result};
use crate::matrix::{rank, SparseMatrix};
use crate::poly::PoincarePoly;
use crate::resolution::check_cap;
use crate::ring::{Coefficients, Field, F2};
use crate::snf::{prime_power_parts, smith_normal_form};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HomologyEntry {
    pub rank: usize,
    /// Prime-power orders of the cyclic torsion summands, ascending.
    pub torsion: Vec<u64>,
}

impl HomologyEntry {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

/// Homology in normalised bigradings; only nonzero groups are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyTable {
    coeff: Coefficients,
    entries: BTreeMap<(i32, i32), HomologyEntry>,
}

impl HomologyTable {
    pub fn new(coeff: Coefficients) -> Self {
        HomologyTable { coeff, entries: BTreeMap::new() }
    }

    pub fn coeff(&self) -> Coefficients {
        self.coeff
    }

    pub fn entries(&self) -> &BTreeMap<(i32, i32), HomologyEntry> {
        &self.entries
    }

    pub fn get(&self, i: i32, j: i32) -> Option<&HomologyEntry> {
        self.entries.get(&(i, j))
    }

    pub fn rank(&self, i: i32, j: i32) -> usize {
        self.get(i, j).map_or(0, |e| e.rank)
    }

    pub fn torsion(&self, i: i32, j: i32) -> &[u64] {
        self.get(i, j).map_or(&[], |e| e.torsion.as_slice())
    }

    pub fn total_rank(&self) -> usize {
        self.entries.values().map(|e| e.rank).sum()
    }

    fn entry(&mut self, i: i32, j: i32) -> &mut HomologyEntry {
        self.entries.entry((i, j)).or_default()
    }

    fn prune(&mut self) {
        self.entries.retain(|_, e| !e.is_zero());
    }

    /// `sum rank(i,j) t^i q^j`.
    pub fn poincare(&self) -> PoincarePoly {
        let mut p = PoincarePoly::new();
        for (&(i, j), e) in &self.entries {
            p.add_term(i, j, e.rank as i64);
        }
        p
    }

    /// The table with `(i, j) -> (-i, -j)`.
    pub fn reflected(&self) -> HomologyTable {
        HomologyTable {
            coeff: self.coeff,
            entries: self.entries.iter().map(|(&(i, j), e)| ((-i, -j), e.clone())).collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|(&(i, j), e)| serde_json::json!({"i": i, "j": j, "rank": e.rank, "torsion": e.torsion}))
            .collect();
        serde_json::json!({
            "coeff": self.coeff.tag(),
            "entries": entries,
            "poincare": self.poincare().to_json(),
        })
    }

    /// `i,j,rank,torsion` with torsion orders separated by `;`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,rank,torsion\n");
        for (&(i, j), e) in &self.entries {
            let t: Vec<String> = e.torsion.iter().map(u64::to_string).collect();
            out.push_str(&format!("{i},{j},{},{}\n", e.rank, t.join(";")));
        }
        out
    }
}

impl fmt::Display for HomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = self.coeff.tag();
        for (&(i, j), e) in &self.entries {
            let mut parts = vec![];
            match e.rank {
                0 => {}
                1 => parts.push(ring.to_string()),
                r => parts.push(format!("{ring}^{r}")),
            }
            parts.extend(e.torsion.iter().map(|t| format!("Z/{t}")));
            writeln!(f, "H^({i},{j}) = {}", parts.join(" + "))?;
        }
        Ok(())
    }
}

fn check_graded<R: crate::ring::Ring>(cx: &BigradedComplex<R>) -> Result<()> {
    cx.check_d_squared()?;
    if !cx.respects_quantum_grading(true) {
        return Err(Error::InvalidInput("the differential does not preserve the quantum grading".into()));
    }
    Ok(())
}

fn field_ranks<F: Field>(cx: &BigradedComplex<i64>, j: i32, lift: impl Fn(i64) -> F) -> Vec<usize> {
    (0..cx.len()).map(|i| rank(&cx.block(i, j).map(|&v| lift(v)))).collect()
}

pub fn homology(cx: &BigradedComplex<i64>, coeff: Coefficients) -> Result<HomologyTable> {
    check_graded(cx)?;
    let shift = cx.shift();
    let mut table = HomologyTable::new(coeff);
    for j in cx.quantum_gradings() {
        let dims: Vec<usize> = (0..cx.len()).map(|i| cx.block_indices(i, j).len()).collect();
        let ranks: Vec<usize> = match coeff {
            Coefficients::Rationals => field_ranks(cx, j, |v| BigRational::from_integer(v.into())),
            Coefficients::F2 => field_ranks(cx, j, F2::new),
            Coefficients::Integers => {
                let mut ranks = vec![];
                for i in 0..cx.len() {
                    let block: SparseMatrix<BigInt> = cx.block(i, j).map(|&v| BigInt::from(v));
                    let snf = smith_normal_form(&block);
                    ranks.push(snf.rank());
                    for d in snf.torsion() {
                        let (ni, nj) = shift.apply((i as i32 + 1, j));
                        table.entry(ni, nj).torsion.extend(prime_power_parts(d));
                    }
                }
                ranks
            }
        };
        for i in 0..cx.len() {
            let below = if i == 0 { 0 } else { ranks[i - 1] };
            let (ni, nj) = shift.apply((i as i32, j));
            table.entry(ni, nj).rank = dims[i] - ranks[i] - below;
        }
    }
    for e in table.entries.values_mut() {
        e.torsion.sort_unstable();
    }
    table.prune();
    Ok(table)
}

/// Khovanov homology of `d`.
pub fn khovanov_homology(d: &KnotDiagram, coeff: Coefficients, cap: usize) -> Result<HomologyTable> {
    check_cap(d, cap)?;
    let cx = crate::complex::build_complex(d, crate::frobenius::FrobeniusAlgebra::Khovanov, cap)?;
    homology(&cx, coeff)
}

/// True iff `cx` is a complex, its graded Euler characteristic is the
/// q-bracket of `d`, and its Poincare polynomial at `t = -1` is `J(d)`.
pub fn euler_check(cx: &BigradedComplex<i64>, d: &KnotDiagram) -> Result<bool> {
    if check_graded(cx).is_err() {
        return Ok(false);
    }
    if cx.euler_polynomial() != bracket_q(d, usize::MAX)? {
        return Ok(false);
    }
    let table = homology(cx, Coefficients::Rationals)?;
    Ok(table.poincare().at_t_minus_one() == jones(d, usize::MAX)?)
}
