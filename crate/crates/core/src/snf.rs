//! Smith normal form over the integers.
//!
//! Unit pivots are eliminated sparsely first; whatever is left is reduced
//! densely with smallest-entry pivoting on arbitrary-precision integers.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::matrix::SparseMatrix;

/// Nonzero invariant factors `d1 | d2 | ...`, all positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub invariants: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> impl Iterator<Item = &BigInt> {
        self.invariants.iter().filter(|d| !d.is_one())
    }
}

pub fn smith_normal_form(m: &SparseMatrix<BigInt>) -> SmithForm {
    let (units, rest) = eliminate_unit_pivots(m);
    let mut invariants = vec![BigInt::one(); units];
    invariants.extend(dense_invariants(rest));
    SmithForm { invariants }
}

/// Remove unit pivots; returns their count and the dense remainder.
fn eliminate_unit_pivots(m: &SparseMatrix<BigInt>) -> (usize, Vec<Vec<BigInt>>) {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); m.rows()];
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols()];
    for (r, c, v) in m.triplets() {
        rows[r].insert(c, v.clone());
        col_rows[c].insert(r);
    }
    let mut row_alive = vec![true; m.rows()];
    let mut count = 0;
    loop {
        // cheapest unit pivot: shortest row, then shortest column
        let mut best: Option<(usize, usize, usize, usize)> = None;
        for (r, row) in rows.iter().enumerate() {
            if !row_alive[r] || best.is_some_and(|b| row.len() > b.0) {
                continue;
            }
            for (&c, v) in row {
                if v.abs().is_one() {
                    let key = (row.len(), col_rows[c].len(), r, c);
                    if best.is_none_or(|b| key < b) {
                        best = Some(key);
                    }
                }
            }
        }
        let Some((_, _, pr, pc)) = best else { break };
        let u = rows[pr][&pc].clone();
        let pivot_row = rows[pr].clone();
        let others: Vec<usize> = col_rows[pc].iter().copied().filter(|&r| r != pr).collect();
        for r in others {
            let f = &rows[r][&pc] * &u;
            for (&c, v) in &pivot_row {
                let entry = rows[r].entry(c).or_insert_with(BigInt::zero);
                *entry -= &f * v;
                if entry.is_zero() {
                    rows[r].remove(&c);
                    col_rows[c].remove(&r);
                } else {
                    col_rows[c].insert(r);
                }
            }
        }
        for &c in pivot_row.keys() {
            col_rows[c].remove(&pr);
        }
        rows[pr].clear();
        row_alive[pr] = false;
        count += 1;
    }
    let live_rows: Vec<usize> = (0..m.rows()).filter(|&r| !rows[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..m.cols()).filter(|&c| !col_rows[c].is_empty()).collect();
    let col_pos: BTreeMap<usize, usize> = live_cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let dense = live_rows
        .iter()
        .map(|&r| {
            let mut row = vec![BigInt::zero(); live_cols.len()];
            for (c, v) in &rows[r] {
                row[col_pos[c]] = v.clone();
            }
            row
        })
        .collect();
    (count, dense)
}

/// Invariant factors of a dense matrix.
pub fn dense_invariants(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut out = vec![];
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, v) in row.iter().enumerate().skip(t) {
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        move_to(&mut a, (bi, bj), t);
        loop {
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let f = a[i][t].div_floor(&p);
                    for j in t..n {
                        let s = &f * &a[t][j];
                        a[i][j] -= s;
                    }
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let f = a[t][j].div_floor(&p);
                    for row in a.iter_mut().skip(t) {
                        let s = &f * &row[t];
                        row[j] -= s;
                    }
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                // a remainder smaller than the pivot is left; promote it
                let mut best = (t, t);
                for i in t + 1..m {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                move_to(&mut a, best, t);
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    for j in t..n {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

fn move_to(a: &mut [Vec<BigInt>], (i, j): (usize, usize), t: usize) {
    a.swap(t, i);
    for row in a.iter_mut() {
        row.swap(t, j);
    }
}

/// Split `n > 1` into prime powers, ascending.
pub fn prime_power_parts(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs().to_u64().expect("torsion coefficient exceeds u64");
    let mut out = vec![];
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut q = 1;
            while n % p == 0 {
                n /= p;
                q *= p;
            }
            out.push(q);
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snf(rows: &[&[i64]]) -> Vec<i64> {
        let dense: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        smith_normal_form(&SparseMatrix::from_dense(&dense))
            .invariants
            .iter()
            .map(|d| d.to_i64().unwrap())
            .collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(snf(&[&[2, 0], &[0, 3]]), vec![1, 6]);
        assert_eq!(snf(&[&[0, 0], &[0, 0]]), Vec::<i64>::new());
        assert_eq!(snf(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), vec![1, 1, 1]);
        assert_eq!(snf(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), vec![2, 6, 12]);
        assert_eq!(snf(&[&[1, 1], &[1, -1]]), vec![1, 2]);
        assert_eq!(snf(&[&[4, 6]]), vec![2]);
    }

    #[test]
    fn divisibility_chain() {
        let f = snf(&[&[6, 0, 0], &[0, 10, 0], &[0, 0, 15]]);
        assert_eq!(f, vec![1, 30, 30]);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power_parts(&BigInt::from(12)), vec![3, 4]);
        assert_eq!(prime_power_parts(&BigInt::from(2)), vec![2]);
        assert_eq!(prime_power_parts(&BigInt::from(360)), vec![5, 8, 9]);
    }
}
